//! Shared CART machinery: one greedy splitter driving classification
//! (Gini), regression (squared error), and second-order (gradient/hessian)
//! trees.
//!
//! Determinism contract: candidate features are scanned in ascending index
//! order and thresholds in ascending value order, and a new best split must
//! strictly beat the incumbent, so gain ties resolve to the lowest feature
//! index, then the lowest threshold. Node rows are sorted by (value, row) so
//! prefix sums never depend on sort stability.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::data::Dataset;

#[derive(Debug, Clone, Copy)]
pub(crate) struct TreeParams {
    pub max_depth: usize,
    pub min_leaf: usize,
}

#[derive(Debug, Clone)]
enum Node {
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        value: f64,
    },
}

/// A fitted binary tree predicting one real value per row.
#[derive(Debug, Clone)]
pub(crate) struct Tree {
    nodes: Vec<Node>,
}

impl Tree {
    pub fn predict_row(&self, row: &[f64]) -> f64 {
        let mut at = 0;
        loop {
            match &self.nodes[at] {
                Node::Leaf { value } => return *value,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if row[*feature] <= *threshold {
                        *left
                    } else {
                        *right
                    };
                }
            }
        }
    }

    #[cfg(test)]
    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    #[cfg(test)]
    pub fn depth(&self) -> usize {
        fn walk(nodes: &[Node], at: usize) -> usize {
            match &nodes[at] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => 1 + walk(nodes, *left).max(walk(nodes, *right)),
            }
        }
        walk(&self.nodes, 0)
    }
}

/// Sufficient statistics and gain rules for one split objective.
pub(crate) trait SplitCriterion {
    type Stats: Copy;

    fn zero(&self) -> Self::Stats;
    fn add_sample(&self, stats: &mut Self::Stats, row: usize);
    fn subtract(&self, total: Self::Stats, part: Self::Stats) -> Self::Stats;
    fn leaf_value(&self, stats: Self::Stats) -> f64;
    fn gain(&self, parent: Self::Stats, left: Self::Stats, right: Self::Stats) -> f64;
    /// Nothing left to learn in this node (e.g. pure class).
    fn is_terminal(&self, stats: Self::Stats) -> bool;
    /// Smallest gain worth splitting on.
    fn min_gain(&self) -> f64;
}

/// Weighted Gini impurity for 0/1 labels. Zero-gain splits are allowed:
/// a node is only closed by purity, depth, or the leaf-size floor, so
/// patterns whose first cut is uninformative (XOR-like) are still learnable
/// at depth >= 2.
pub(crate) struct GiniCriterion<'a> {
    pub labels: &'a [u8],
    pub weights: Option<&'a [f64]>,
}

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct GiniStats {
    weight: f64,
    weight_pos: f64,
}

impl GiniStats {
    fn gini(&self) -> f64 {
        if self.weight <= 0.0 {
            return 0.0;
        }
        let p = self.weight_pos / self.weight;
        2.0 * p * (1.0 - p)
    }
}

impl<'a> SplitCriterion for GiniCriterion<'a> {
    type Stats = GiniStats;

    fn zero(&self) -> GiniStats {
        GiniStats::default()
    }

    fn add_sample(&self, stats: &mut GiniStats, row: usize) {
        let w = self.weights.map_or(1.0, |ws| ws[row]);
        stats.weight += w;
        if self.labels[row] == 1 {
            stats.weight_pos += w;
        }
    }

    fn subtract(&self, total: GiniStats, part: GiniStats) -> GiniStats {
        GiniStats {
            weight: total.weight - part.weight,
            weight_pos: total.weight_pos - part.weight_pos,
        }
    }

    fn leaf_value(&self, stats: GiniStats) -> f64 {
        if stats.weight > 0.0 {
            stats.weight_pos / stats.weight
        } else {
            0.5
        }
    }

    fn gain(&self, parent: GiniStats, left: GiniStats, right: GiniStats) -> f64 {
        parent.gini() - (left.weight * left.gini() + right.weight * right.gini()) / parent.weight
    }

    fn is_terminal(&self, stats: GiniStats) -> bool {
        stats.weight_pos == 0.0 || stats.weight_pos == stats.weight
    }

    fn min_gain(&self) -> f64 {
        f64::NEG_INFINITY
    }
}

/// Squared-error reduction for real-valued targets (boosting residuals).
pub(crate) struct MseCriterion<'a> {
    pub targets: &'a [f64],
}

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct MseStats {
    n: usize,
    sum: f64,
    sum_sq: f64,
}

impl MseStats {
    fn sse(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        self.sum_sq - self.sum * self.sum / self.n as f64
    }
}

impl<'a> SplitCriterion for MseCriterion<'a> {
    type Stats = MseStats;

    fn zero(&self) -> MseStats {
        MseStats::default()
    }

    fn add_sample(&self, stats: &mut MseStats, row: usize) {
        let t = self.targets[row];
        stats.n += 1;
        stats.sum += t;
        stats.sum_sq += t * t;
    }

    fn subtract(&self, total: MseStats, part: MseStats) -> MseStats {
        MseStats {
            n: total.n - part.n,
            sum: total.sum - part.sum,
            sum_sq: total.sum_sq - part.sum_sq,
        }
    }

    fn leaf_value(&self, stats: MseStats) -> f64 {
        if stats.n > 0 {
            stats.sum / stats.n as f64
        } else {
            0.0
        }
    }

    fn gain(&self, parent: MseStats, left: MseStats, right: MseStats) -> f64 {
        parent.sse() - left.sse() - right.sse()
    }

    fn is_terminal(&self, stats: MseStats) -> bool {
        stats.sse() <= 0.0
    }

    fn min_gain(&self) -> f64 {
        f64::NEG_INFINITY
    }
}

/// Second-order split objective: leaf weight -G/(H+lambda), gain
/// (GL^2/(HL+lambda) + GR^2/(HR+lambda) - G^2/(H+lambda)) / 2. Splits must
/// clear a small positive gain.
pub(crate) struct NewtonCriterion<'a> {
    pub grad: &'a [f64],
    pub hess: &'a [f64],
    pub lambda: f64,
}

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct NewtonStats {
    sum_grad: f64,
    sum_hess: f64,
}

impl<'a> NewtonCriterion<'a> {
    fn score(&self, s: NewtonStats) -> f64 {
        s.sum_grad * s.sum_grad / (s.sum_hess + self.lambda)
    }
}

impl<'a> SplitCriterion for NewtonCriterion<'a> {
    type Stats = NewtonStats;

    fn zero(&self) -> NewtonStats {
        NewtonStats::default()
    }

    fn add_sample(&self, stats: &mut NewtonStats, row: usize) {
        stats.sum_grad += self.grad[row];
        stats.sum_hess += self.hess[row];
    }

    fn subtract(&self, total: NewtonStats, part: NewtonStats) -> NewtonStats {
        NewtonStats {
            sum_grad: total.sum_grad - part.sum_grad,
            sum_hess: total.sum_hess - part.sum_hess,
        }
    }

    fn leaf_value(&self, stats: NewtonStats) -> f64 {
        -stats.sum_grad / (stats.sum_hess + self.lambda)
    }

    fn gain(&self, parent: NewtonStats, left: NewtonStats, right: NewtonStats) -> f64 {
        0.5 * (self.score(left) + self.score(right) - self.score(parent))
    }

    fn is_terminal(&self, _stats: NewtonStats) -> bool {
        false
    }

    fn min_gain(&self) -> f64 {
        1e-12
    }
}

struct BestSplit {
    gain: f64,
    feature: usize,
    threshold: f64,
}

struct Builder<'a, C: SplitCriterion> {
    data: &'a Dataset,
    criterion: &'a C,
    params: TreeParams,
    /// Distinct features sampled per split (random forests); None scans all.
    features_per_split: Option<usize>,
    rng: Option<&'a mut ChaCha8Rng>,
    nodes: Vec<Node>,
}

impl<'a, C: SplitCriterion> Builder<'a, C> {
    fn candidate_features(&mut self) -> Vec<usize> {
        let d = self.data.n_features();
        match self.features_per_split {
            None => (0..d).collect(),
            Some(m) if m >= d => (0..d).collect(),
            Some(m) => {
                // Partial Fisher-Yates, then ascending order so the
                // lowest-feature tie-break still applies.
                let rng = self.rng.as_mut().expect("sampling needs an rng");
                let mut pool: Vec<usize> = (0..d).collect();
                for i in 0..m {
                    let j = rng.gen_range(i..d);
                    pool.swap(i, j);
                }
                let mut picked: Vec<usize> = pool[..m].to_vec();
                picked.sort_unstable();
                picked
            }
        }
    }

    fn find_best_split(&mut self, indices: &[usize], parent: C::Stats) -> Option<BestSplit> {
        let min_leaf = self.params.min_leaf;
        let mut best: Option<BestSplit> = None;
        for feature in self.candidate_features() {
            let mut ordered: Vec<(f64, usize)> = indices
                .iter()
                .map(|&i| (self.data.row(i)[feature], i))
                .collect();
            ordered.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite features"));

            let mut left = self.criterion.zero();
            for pos in 0..ordered.len() - 1 {
                self.criterion.add_sample(&mut left, ordered[pos].1);
                let (value, next) = (ordered[pos].0, ordered[pos + 1].0);
                if value == next {
                    continue;
                }
                let left_n = pos + 1;
                let right_n = ordered.len() - left_n;
                if left_n < min_leaf || right_n < min_leaf {
                    continue;
                }
                let right = self.criterion.subtract(parent, left);
                let gain = self.criterion.gain(parent, left, right);
                // Midpoint, nudged back onto the left value if rounding
                // would otherwise send both sides the same way.
                let mut threshold = 0.5 * (value + next);
                if threshold >= next {
                    threshold = value;
                }
                if best.as_ref().is_none_or(|b| gain > b.gain) {
                    best = Some(BestSplit {
                        gain,
                        feature,
                        threshold,
                    });
                }
            }
        }
        best
    }

    fn build(&mut self, indices: Vec<usize>, depth: usize) -> usize {
        let mut stats = self.criterion.zero();
        for &i in &indices {
            self.criterion.add_sample(&mut stats, i);
        }
        let leaf = |nodes: &mut Vec<Node>, value: f64| {
            nodes.push(Node::Leaf { value });
            nodes.len() - 1
        };

        if depth >= self.params.max_depth
            || indices.len() < 2 * self.params.min_leaf
            || self.criterion.is_terminal(stats)
        {
            return leaf(&mut self.nodes, self.criterion.leaf_value(stats));
        }
        let best = match self.find_best_split(&indices, stats) {
            Some(b) if b.gain >= self.criterion.min_gain() => b,
            _ => return leaf(&mut self.nodes, self.criterion.leaf_value(stats)),
        };

        let (mut left_idx, mut right_idx) = (Vec::new(), Vec::new());
        for &i in &indices {
            if self.data.row(i)[best.feature] <= best.threshold {
                left_idx.push(i);
            } else {
                right_idx.push(i);
            }
        }
        debug_assert!(left_idx.len() >= self.params.min_leaf);
        debug_assert!(right_idx.len() >= self.params.min_leaf);

        let at = self.nodes.len();
        self.nodes.push(Node::Split {
            feature: best.feature,
            threshold: best.threshold,
            left: 0,
            right: 0,
        });
        let left = self.build(left_idx, depth + 1);
        let right = self.build(right_idx, depth + 1);
        if let Node::Split {
            left: l, right: r, ..
        } = &mut self.nodes[at]
        {
            *l = left;
            *r = right;
        }
        at
    }
}

/// Grow a tree over the given rows (repeats allowed, e.g. bootstrap draws).
///
/// `features_per_split` with an rng enables per-split feature subsampling.
pub(crate) fn grow_tree<C: SplitCriterion>(
    data: &Dataset,
    indices: Vec<usize>,
    criterion: &C,
    params: TreeParams,
    features_per_split: Option<usize>,
    rng: Option<&mut ChaCha8Rng>,
) -> Tree {
    let mut builder = Builder {
        data,
        criterion,
        params,
        features_per_split,
        rng,
        nodes: Vec::new(),
    };
    builder.build(indices, 0);
    Tree {
        nodes: builder.nodes,
    }
}

/// n bootstrap row draws, in draw order.
pub(crate) fn bootstrap_indices(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..n)).collect()
}
