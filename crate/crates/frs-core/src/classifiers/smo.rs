//! Sequential minimal optimization for a linear soft-margin SVM.
//!
//! Pair selection follows the classic two-loop scheme with deterministic
//! fallbacks (ascending index scans instead of random starting points), so
//! training needs no randomness at all. The weight vector is maintained
//! incrementally, which makes error lookups O(d) and replaces the error
//! cache.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoParams {
    /// Unused by the deterministic trainer; kept so every classifier spec
    /// carries a seed.
    pub seed: u64,
    #[serde(default = "default_c")]
    pub c: f64,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

fn default_c() -> f64 {
    1.0
}

fn default_tolerance() -> f64 {
    1e-3
}

impl SmoParams {
    pub fn new(seed: u64) -> Self {
        SmoParams { seed, c: default_c(), tolerance: default_tolerance() }
    }
}

/// One trained maximum-margin separator: `decision(x) = w·x - b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoMachine {
    pub w: Vec<f64>,
    pub b: f64,
    /// Lagrange multiplier per training sample, in training order.
    pub alpha: Vec<f64>,
}

impl SmoMachine {
    pub fn decision(&self, row: &[f64]) -> f64 {
        dot(&self.w, row) - self.b
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Smallest alpha change worth applying.
const ALPHA_EPS: f64 = 1e-12;

struct Trainer<'a> {
    rows: &'a [Vec<f64>],
    y: &'a [f64],
    c: f64,
    tol: f64,
    w: Vec<f64>,
    b: f64,
    alpha: Vec<f64>,
}

impl<'a> Trainer<'a> {
    fn error(&self, i: usize) -> f64 {
        dot(&self.w, &self.rows[i]) - self.b - self.y[i]
    }

    fn non_bound(&self, i: usize) -> bool {
        self.alpha[i] > 0.0 && self.alpha[i] < self.c
    }

    fn take_step(&mut self, i1: usize, i2: usize) -> bool {
        if i1 == i2 {
            return false;
        }
        let (a1_old, a2_old) = (self.alpha[i1], self.alpha[i2]);
        let (y1, y2) = (self.y[i1], self.y[i2]);
        let (e1, e2) = (self.error(i1), self.error(i2));
        let s = y1 * y2;
        let (lo, hi) = if s < 0.0 {
            ((a2_old - a1_old).max(0.0), (self.c + a2_old - a1_old).min(self.c))
        } else {
            ((a1_old + a2_old - self.c).max(0.0), (a1_old + a2_old).min(self.c))
        };
        if lo >= hi {
            return false;
        }
        let k11 = dot(&self.rows[i1], &self.rows[i1]);
        let k12 = dot(&self.rows[i1], &self.rows[i2]);
        let k22 = dot(&self.rows[i2], &self.rows[i2]);
        let eta = k11 + k22 - 2.0 * k12;
        let mut a2 = if eta > 0.0 {
            (a2_old + y2 * (e1 - e2) / eta).clamp(lo, hi)
        } else {
            // flat direction: pick the better interval end
            let f1 = y1 * (e1 + self.b) - a1_old * k11 - s * a2_old * k12;
            let f2 = y2 * (e2 + self.b) - s * a1_old * k12 - a2_old * k22;
            let l1 = a1_old + s * (a2_old - lo);
            let h1 = a1_old + s * (a2_old - hi);
            let lo_obj = l1 * f1 + lo * f2 + 0.5 * l1 * l1 * k11 + 0.5 * lo * lo * k22
                + s * lo * l1 * k12;
            let hi_obj = h1 * f1 + hi * f2 + 0.5 * h1 * h1 * k11 + 0.5 * hi * hi * k22
                + s * hi * h1 * k12;
            if lo_obj < hi_obj - ALPHA_EPS {
                lo
            } else if lo_obj > hi_obj + ALPHA_EPS {
                hi
            } else {
                a2_old
            }
        };
        if a2 < ALPHA_EPS {
            a2 = 0.0;
        } else if a2 > self.c - ALPHA_EPS {
            a2 = self.c;
        }
        if (a2 - a2_old).abs() < ALPHA_EPS * (a2 + a2_old + ALPHA_EPS) {
            return false;
        }
        let a1 = a1_old + s * (a2_old - a2);

        let b1 = e1 + y1 * (a1 - a1_old) * k11 + y2 * (a2 - a2_old) * k12 + self.b;
        let b2 = e2 + y1 * (a1 - a1_old) * k12 + y2 * (a2 - a2_old) * k22 + self.b;
        self.b = if a1 > 0.0 && a1 < self.c {
            b1
        } else if a2 > 0.0 && a2 < self.c {
            b2
        } else {
            (b1 + b2) / 2.0
        };
        for (wv, (x1, x2)) in self.w.iter_mut().zip(self.rows[i1].iter().zip(&self.rows[i2])) {
            *wv += y1 * (a1 - a1_old) * x1 + y2 * (a2 - a2_old) * x2;
        }
        self.alpha[i1] = a1;
        self.alpha[i2] = a2;
        true
    }

    fn examine(&mut self, i2: usize) -> bool {
        let y2 = self.y[i2];
        let a2 = self.alpha[i2];
        let e2 = self.error(i2);
        let r2 = e2 * y2;
        if !((r2 < -self.tol && a2 < self.c) || (r2 > self.tol && a2 > 0.0)) {
            return false;
        }
        // best |E1 - E2| over non-bound alphas, lowest index on ties
        let mut best: Option<(f64, usize)> = None;
        for i1 in 0..self.y.len() {
            if self.non_bound(i1) {
                let gap = (self.error(i1) - e2).abs();
                if best.map_or(true, |(g, _)| gap > g) {
                    best = Some((gap, i1));
                }
            }
        }
        if let Some((_, i1)) = best {
            if self.take_step(i1, i2) {
                return true;
            }
        }
        for i1 in 0..self.y.len() {
            if self.non_bound(i1) && self.take_step(i1, i2) {
                return true;
            }
        }
        for i1 in 0..self.y.len() {
            if self.take_step(i1, i2) {
                return true;
            }
        }
        false
    }
}

/// Train one binary machine on rows with targets in {-1, +1}.
pub fn train_binary(rows: &[Vec<f64>], y: &[f64], params: &SmoParams) -> SmoMachine {
    let d = rows.first().map_or(0, Vec::len);
    let mut t = Trainer {
        rows,
        y,
        c: params.c,
        tol: params.tolerance,
        w: vec![0.0; d],
        b: 0.0,
        alpha: vec![0.0; rows.len()],
    };
    let mut examine_all = true;
    let mut changed = 0usize;
    let mut sweeps = 0usize;
    while (changed > 0 || examine_all) && sweeps < 10_000 {
        changed = 0;
        for i in 0..rows.len() {
            if examine_all || t.non_bound(i) {
                changed += t.examine(i) as usize;
            }
        }
        examine_all = if examine_all { false } else { changed == 0 };
        sweeps += 1;
    }
    SmoMachine { w: t.w, b: t.b, alpha: t.alpha }
}

/// Largest violation of the optimality conditions over the training set:
/// zero alphas need margin at least 1, bound alphas at most 1, free alphas
/// exactly 1, each within tolerance. At convergence this is <= the
/// training tolerance.
pub fn kkt_max_violation(m: &SmoMachine, rows: &[Vec<f64>], y: &[f64], c: f64) -> f64 {
    let mut worst = 0.0f64;
    for ((row, &yi), &a) in rows.iter().zip(y).zip(&m.alpha) {
        let margin = yi * m.decision(row);
        let violation = if a <= 0.0 {
            (1.0 - margin).max(0.0)
        } else if a >= c {
            (margin - 1.0).max(0.0)
        } else {
            (margin - 1.0).abs()
        };
        worst = worst.max(violation);
    }
    worst
}
