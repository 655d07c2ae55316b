//! Single-hidden-layer perceptron trained by per-sample backpropagation
//! with momentum on a squared-error loss. Sigmoid units throughout.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlpParams {
    pub seed: u64,
    /// Hidden units; None means ceil((inputs + classes) / 2).
    #[serde(default)]
    pub hidden: Option<usize>,
    #[serde(default = "default_learning_rate")]
    pub learning_rate: f64,
    #[serde(default = "default_momentum")]
    pub momentum: f64,
    #[serde(default = "default_epochs")]
    pub epochs: usize,
}

fn default_learning_rate() -> f64 {
    0.3
}

fn default_momentum() -> f64 {
    0.2
}

fn default_epochs() -> usize {
    500
}

impl MlpParams {
    pub fn new(seed: u64) -> Self {
        MlpParams {
            seed,
            hidden: None,
            learning_rate: default_learning_rate(),
            momentum: default_momentum(),
            epochs: default_epochs(),
        }
    }
}

/// Network weights. Each row holds one unit's incoming weights with the
/// bias in the last slot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlpWeights {
    pub hidden: Vec<Vec<f64>>,
    pub output: Vec<Vec<f64>>,
}

fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

fn unit_out(weights: &[f64], inputs: &[f64]) -> f64 {
    let mut z = weights[inputs.len()];
    for (w, x) in weights.iter().zip(inputs) {
        z += w * x;
    }
    sigmoid(z)
}

pub(crate) fn forward(w: &MlpWeights, row: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let hidden: Vec<f64> = w.hidden.iter().map(|h| unit_out(h, row)).collect();
    let output: Vec<f64> = w.output.iter().map(|o| unit_out(o, &hidden)).collect();
    (hidden, output)
}

/// Half squared error summed over outputs and samples.
pub fn batch_loss(w: &MlpWeights, rows: &[Vec<f64>], targets: &[Vec<f64>]) -> f64 {
    rows.iter()
        .zip(targets)
        .map(|(row, t)| {
            let (_, out) = forward(w, row);
            out.iter().zip(t).map(|(o, t)| 0.5 * (o - t) * (o - t)).sum::<f64>()
        })
        .sum()
}

/// Analytic gradient of [`batch_loss`], same shape as the weights.
pub fn batch_gradient(w: &MlpWeights, rows: &[Vec<f64>], targets: &[Vec<f64>]) -> MlpWeights {
    let mut grad = MlpWeights {
        hidden: w.hidden.iter().map(|r| vec![0.0; r.len()]).collect(),
        output: w.output.iter().map(|r| vec![0.0; r.len()]).collect(),
    };
    for (row, target) in rows.iter().zip(targets) {
        let (hidden, output) = forward(w, row);
        let delta_out: Vec<f64> = output
            .iter()
            .zip(target)
            .map(|(o, t)| (o - t) * o * (1.0 - o))
            .collect();
        for (c, &d) in delta_out.iter().enumerate() {
            for (j, &h) in hidden.iter().enumerate() {
                grad.output[c][j] += d * h;
            }
            grad.output[c][hidden.len()] += d;
        }
        for (j, &h) in hidden.iter().enumerate() {
            let upstream: f64 = delta_out.iter().zip(&w.output).map(|(d, o)| d * o[j]).sum();
            let d = upstream * h * (1.0 - h);
            for (k, &x) in row.iter().enumerate() {
                grad.hidden[j][k] += d * x;
            }
            grad.hidden[j][row.len()] += d;
        }
    }
    grad
}

/// Train on row-major data with one-hot targets derived from `y`.
/// Initialization and epoch shuffles come from a seeded stream, so equal
/// seeds give bit-identical weights.
pub(crate) fn train(
    rows: &[Vec<f64>],
    y: &[usize],
    n_classes: usize,
    params: &MlpParams,
) -> MlpWeights {
    let d = rows.first().map_or(0, Vec::len);
    let hidden_units = params.hidden.unwrap_or((d + n_classes).div_ceil(2)).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut init = |len: usize| -> Vec<f64> {
        (0..len).map(|_| rng.random_range(-0.5..0.5)).collect()
    };
    let mut w = MlpWeights {
        hidden: (0..hidden_units).map(|_| init(d + 1)).collect(),
        output: (0..n_classes).map(|_| init(hidden_units + 1)).collect(),
    };
    let mut vel = MlpWeights {
        hidden: vec![vec![0.0; d + 1]; hidden_units],
        output: vec![vec![0.0; hidden_units + 1]; n_classes],
    };

    let targets: Vec<Vec<f64>> = y
        .iter()
        .map(|&code| (0..n_classes).map(|c| if c == code { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut order: Vec<usize> = (0..rows.len()).collect();
    for _ in 0..params.epochs {
        for i in (1..order.len()).rev() {
            order.swap(i, rng.random_range(0..=i));
        }
        for &i in &order {
            let g = batch_gradient(&w, &rows[i..i + 1], &targets[i..i + 1]);
            for (layer, (vl, gl)) in [
                (&mut w.hidden, (&mut vel.hidden, &g.hidden)),
                (&mut w.output, (&mut vel.output, &g.output)),
            ] {
                for ((wr, vr), gr) in layer.iter_mut().zip(vl.iter_mut()).zip(gl) {
                    for ((wv, vv), gv) in wr.iter_mut().zip(vr.iter_mut()).zip(gr) {
                        *vv = params.momentum * *vv - params.learning_rate * gv;
                        *wv += *vv;
                    }
                }
            }
        }
    }
    w
}

/// Output class: argmax over outputs, lowest code on ties.
pub(crate) fn predict(w: &MlpWeights, row: &[f64]) -> usize {
    let (_, out) = forward(w, row);
    let mut best = 0;
    for (c, &v) in out.iter().enumerate().skip(1) {
        if v > out[best] {
            best = c;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cluster() -> (Vec<Vec<f64>>, Vec<usize>) {
        let rows = vec![
            vec![0.05, 0.1],
            vec![0.2, 0.15],
            vec![0.1, 0.2],
            vec![0.15, 0.05],
            vec![0.9, 0.85],
            vec![0.8, 0.95],
            vec![0.95, 0.8],
            vec![0.85, 0.9],
        ];
        (rows, vec![0, 0, 0, 0, 1, 1, 1, 1])
    }

    #[test]
    fn fits_two_clusters() {
        let (rows, y) = two_cluster();
        let w = train(&rows, &y, 2, &MlpParams::new(5));
        for (row, &label) in rows.iter().zip(&y) {
            assert_eq!(predict(&w, row), label);
        }
    }

    #[test]
    fn training_is_deterministic_per_seed() {
        let (rows, y) = two_cluster();
        let a = train(&rows, &y, 2, &MlpParams::new(9));
        let b = train(&rows, &y, 2, &MlpParams::new(9));
        assert_eq!(a, b);
    }

    #[test]
    fn constant_inputs_learn_the_majority_class() {
        let rows = vec![vec![0.5, 0.5]; 6];
        let y = vec![1, 1, 1, 1, 0, 0];
        let w = train(&rows, &y, 2, &MlpParams::new(2));
        assert_eq!(predict(&w, &[0.5, 0.5]), 1);
    }

    #[test]
    fn analytic_gradient_matches_central_differences() {
        let rows = vec![
            vec![0.1, 0.9],
            vec![0.4, 0.3],
            vec![0.8, 0.2],
            vec![0.6, 0.7],
            vec![0.25, 0.55],
        ];
        let targets = vec![
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 0.0],
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut init = |len: usize| -> Vec<f64> {
            (0..len).map(|_| rng.random_range(-0.5..0.5)).collect()
        };
        let w = MlpWeights {
            hidden: (0..3).map(|_| init(3)).collect(),
            output: (0..2).map(|_| init(4)).collect(),
        };
        let analytic = batch_gradient(&w, &rows, &targets);
        let h = 1e-6;
        let check = |layer: fn(&mut MlpWeights) -> &mut Vec<Vec<f64>>, grad: &[Vec<f64>]| {
            for r in 0..grad.len() {
                for c in 0..grad[r].len() {
                    let mut plus = w.clone();
                    layer(&mut plus)[r][c] += h;
                    let mut minus = w.clone();
                    layer(&mut minus)[r][c] -= h;
                    let numeric = (batch_loss(&plus, &rows, &targets)
                        - batch_loss(&minus, &rows, &targets))
                        / (2.0 * h);
                    let denom = numeric.abs().max(grad[r][c].abs()).max(1e-8);
                    assert!(
                        (numeric - grad[r][c]).abs() / denom < 1e-5,
                        "weight [{r}][{c}]: analytic {} vs numeric {numeric}",
                        grad[r][c],
                    );
                }
            }
        };
        check(|w| &mut w.hidden, &analytic.hidden);
        check(|w| &mut w.output, &analytic.output);
    }

    #[test]
    fn hidden_default_follows_the_size_rule() {
        let (rows, y) = two_cluster();
        let w = train(&rows, &y, 2, &MlpParams::new(1));
        assert_eq!(w.hidden.len(), 2); // ceil((2 inputs + 2 classes) / 2)
        let w = train(&rows, &y, 2, &MlpParams { hidden: Some(7), ..MlpParams::new(1) });
        assert_eq!(w.hidden.len(), 7);
    }
}
