//! Shared cone arithmetic: interval characteristics, shrink points, new
//! trial points, and sawtooth envelopes.
//!
//! Everything here works on *reduced heights* `z` (see
//! [`crate::index::reduced_value`]): a Lipschitz cone of slope `K` hangs
//! from each evaluated endpoint, and the functions below combine two such
//! cones over one subinterval. Both solvers call these exact functions so
//! that runs which are mathematically identical are also bitwise
//! identical.
//!
//! For an interval `[x_l, x_r]` with endpoint heights `z_l, z_r >= 0` the
//! *characteristic* `R` is a lower bound for the reduced height over the
//! part of the interval that could still matter; an interval with `R > 0`
//! provably contains no feasible point better than the current record and
//! can be discarded. Which formula applies depends on how the endpoint
//! indices compare (equal, rising to the right, or falling).

/// Characteristic when both endpoints have the same index and share one
/// slope `k`: the height of the point where the two cones cross,
/// `(z_l + z_r - k (x_r - x_l)) / 2`.
pub fn equal_characteristic(z_l: f64, z_r: f64, k: f64, len: f64) -> f64 {
    0.5 * (z_l + z_r - k * len)
}

/// Characteristic when the right endpoint has the larger index. The left
/// cone keeps `[x_l, y_minus)` above zero, so the right cone is evaluated
/// at `y_minus`: `z_r - k_r (len - z_l / k_l)`.
pub fn rising_characteristic(z_l: f64, z_r: f64, k_l: f64, k_r: f64, len: f64) -> f64 {
    z_r - k_r * (len - z_l / k_l)
}

/// Mirror image of [`rising_characteristic`]: the left endpoint has the
/// larger index, `z_l - k_l (len - z_r / k_r)`.
pub fn falling_characteristic(z_l: f64, z_r: f64, k_l: f64, k_r: f64, len: f64) -> f64 {
    z_l - k_l * (len - z_r / k_r)
}

/// Leftmost point where the cone hanging from the left endpoint reaches
/// zero: `x_l + z_l / k_l`. Left of it the left endpoint's function is
/// provably positive.
pub fn left_shrink(x_l: f64, z_l: f64, k_l: f64) -> f64 {
    x_l + z_l / k_l
}

/// Rightmost point where the cone hanging from the right endpoint reaches
/// zero: `x_r - z_r / k_r`.
pub fn right_shrink(x_r: f64, z_r: f64, k_r: f64) -> f64 {
    x_r - z_r / k_r
}

/// Minimizer of the two-cone support over `[x_l, x_r]` when both
/// endpoints share slope `k`: `(x_l + x_r - (z_r - z_l) / k) / 2`. This is
/// the classic sawtooth subdivision point.
pub fn crossing_point(x_l: f64, x_r: f64, z_l: f64, z_r: f64, k: f64) -> f64 {
    0.5 * (x_l + x_r - (z_r - z_l) / k)
}

/// Two-cone support at `x` for an equal-index interval.
pub fn equal_support(x: f64, x_l: f64, x_r: f64, z_l: f64, z_r: f64, k: f64) -> f64 {
    (z_l - k * (x - x_l)).max(z_r - k * (x_r - x))
}

/// One-cone support at `x` hanging from the right endpoint (used when the
/// right endpoint has the larger index).
pub fn right_cone_support(x: f64, x_r: f64, z_r: f64, k_r: f64) -> f64 {
    z_r - k_r * (x_r - x).abs()
}

/// One-cone support at `x` hanging from the left endpoint (used when the
/// left endpoint has the larger index).
pub fn left_cone_support(x: f64, x_l: f64, z_l: f64, k_l: f64) -> f64 {
    z_l - k_l * (x - x_l).abs()
}

/// Apex of one Lipschitz cone: the function passed through `(x, value)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Apex {
    pub x: f64,
    pub value: f64,
}

/// Sawtooth envelope `E(x) = max_p (value_p - k |x - x_p|)` over a set of
/// apexes: the tightest function consistent with the evaluations under
/// Lipschitz constant `k`, and therefore a pointwise lower bound for the
/// sampled function whenever `k` dominates its true constant.
///
/// Evaluation is `O(log n)` after an `O(n log n)` build: split the apexes
/// at `x` and use prefix/suffix maxima of the line intercepts.
#[derive(Debug, Clone)]
pub struct Envelope {
    k: f64,
    apexes: Vec<Apex>,
    // up[i]   = max over p <= i of (value_p + k x_p): cones seen from the right.
    // down[i] = max over p >= i of (value_p - k x_p): cones seen from the left.
    up: Vec<f64>,
    down: Vec<f64>,
}

impl Envelope {
    pub fn new(k: f64, mut apexes: Vec<Apex>) -> Envelope {
        apexes.sort_by(|a, b| a.x.total_cmp(&b.x));
        let n = apexes.len();
        let mut up = vec![0.0; n];
        let mut down = vec![0.0; n];
        let mut acc = f64::NEG_INFINITY;
        for i in 0..n {
            acc = acc.max(apexes[i].value + k * apexes[i].x);
            up[i] = acc;
        }
        acc = f64::NEG_INFINITY;
        for i in (0..n).rev() {
            acc = acc.max(apexes[i].value - k * apexes[i].x);
            down[i] = acc;
        }
        Envelope {
            k,
            apexes,
            up,
            down,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.apexes.is_empty()
    }

    /// Envelope height at `x`.
    pub fn value(&self, x: f64) -> f64 {
        let split = self.apexes.partition_point(|a| a.x <= x);
        let mut best = f64::NEG_INFINITY;
        if split > 0 {
            best = self.up[split - 1] - self.k * x;
        }
        if split < self.apexes.len() {
            best = best.max(self.down[split] + self.k * x);
        }
        best
    }

    /// Exact minimum of the envelope over a union of closed segments, or
    /// `None` when there are no apexes or no segments of positive measure.
    ///
    /// A piecewise-linear function with slopes `+-k` attains its minimum
    /// over a union of segments either at a segment endpoint or at a local
    /// valley, and every valley is a crossing of a descending and an
    /// ascending cone at `(x_p + x_q + (value_p - value_q) / k) / 2` for
    /// some apex pair. Evaluating the envelope over that candidate set is
    /// therefore exact.
    pub fn min_over(&self, segments: &[(f64, f64)]) -> Option<f64> {
        if self.apexes.is_empty() {
            return None;
        }
        let mut segs: Vec<(f64, f64)> = segments
            .iter()
            .copied()
            .filter(|(lo, hi)| lo <= hi)
            .collect();
        if segs.is_empty() {
            return None;
        }
        segs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let in_union = |x: f64| -> bool {
            let i = segs.partition_point(|s| s.0 <= x);
            i > 0 && x <= segs[i - 1].1
        };

        let mut best = f64::INFINITY;
        for (lo, hi) in &segs {
            best = best.min(self.value(*lo)).min(self.value(*hi));
        }
        for i in 0..self.apexes.len() {
            for j in i + 1..self.apexes.len() {
                let (p, q) = (self.apexes[i], self.apexes[j]);
                let d = (p.value - q.value) / self.k;
                for c in [0.5 * (p.x + q.x + d), 0.5 * (p.x + q.x - d)] {
                    if in_union(c) {
                        best = best.min(self.value(c));
                    }
                }
            }
        }
        Some(best)
    }
}
