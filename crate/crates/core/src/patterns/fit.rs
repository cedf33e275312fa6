//! Shape of the sorted intersection-size curve.
//!
//! Ranks are mapped to `x in [0, 1]` and sizes to `y = size / max`. Three
//! families are fitted by least squares and the one with the lowest RMSE in
//! `y` wins:
//!
//! * exponential `y = a·exp(-βx)`, fitted as a line through `(x, ln y)`;
//! * quadratic `y = c0 + c1·x + c2·x²`;
//! * linear `y = c0 + c1·x`.
//!
//! Fits within [`TIE_TOLERANCE`] of the best RMSE count as ties and resolve
//! towards the simpler family (linear, then exponential, then quadratic), so
//! a straight line is never reported as a degenerate parabola.

use serde::Serialize;

/// Decay coefficient above which an exponential curve is "drastic".
pub const DRASTIC_BETA: f64 = 0.8;
pub const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistributionLabel {
    DrasticallyFlattening,
    RapidlyFlattening,
    QuicklyFlattening,
    SteadilyFlattening,
    Constant,
}

impl DistributionLabel {
    /// Adverb used in "then {adverb} flatten down to".
    pub fn adverb(self) -> Option<&'static str> {
        match self {
            DistributionLabel::DrasticallyFlattening => Some("drastically"),
            DistributionLabel::RapidlyFlattening => Some("rapidly"),
            DistributionLabel::QuicklyFlattening => Some("quickly"),
            DistributionLabel::SteadilyFlattening => Some("steadily"),
            DistributionLabel::Constant => None,
        }
    }
}

/// Root-mean-square error of each family; `None` when it was not fitted.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct FitResiduals {
    pub exponential: Option<f64>,
    pub quadratic: Option<f64>,
    pub linear: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistributionShape {
    pub label: DistributionLabel,
    pub beta: Option<f64>,
    pub fit_residuals: FitResiduals,
}

impl DistributionShape {
    fn trivial(label: DistributionLabel) -> Self {
        DistributionShape {
            label,
            beta: None,
            fit_residuals: FitResiduals::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    Linear,
    Exponential,
    Quadratic,
}

/// Classifies the decay of `sizes`. The input is sorted descending first, so
/// callers may pass sizes in any order.
pub fn fit_distribution(sizes: &[f64]) -> DistributionShape {
    let mut y: Vec<f64> = sizes.to_vec();
    y.sort_by(|a, b| b.total_cmp(a));

    let (max, min) = match (y.first(), y.last()) {
        (Some(&max), Some(&min)) => (max, min),
        _ => return DistributionShape::trivial(DistributionLabel::Constant),
    };
    if max == min {
        return DistributionShape::trivial(DistributionLabel::Constant);
    }
    if y.len() < 3 {
        return DistributionShape::trivial(DistributionLabel::SteadilyFlattening);
    }

    let last = (y.len() - 1) as f64;
    let x: Vec<f64> = (0..y.len()).map(|i| i as f64 / last).collect();
    for v in &mut y {
        *v /= max;
    }

    let exponential = fit_exponential(&x, &y);
    let quadratic =
        fit_polynomial(&x, &y, 2).map(|c| rmse(&x, &y, |t| c[0] + c[1] * t + c[2] * t * t));
    let linear = fit_polynomial(&x, &y, 1).map(|c| rmse(&x, &y, |t| c[0] + c[1] * t));

    let residuals = FitResiduals {
        exponential: exponential.map(|(_, r)| r),
        quadratic,
        linear,
    };
    let beta = exponential.map(|(b, _)| b);

    let candidates = [
        (Family::Linear, residuals.linear),
        (Family::Exponential, residuals.exponential),
        (Family::Quadratic, residuals.quadratic),
    ];
    let best = candidates
        .iter()
        .filter_map(|&(_, r)| r)
        .filter(|r| r.is_finite())
        .fold(f64::INFINITY, f64::min);
    let family = candidates
        .iter()
        .find(|(_, r)| matches!(r, Some(r) if *r <= best + TIE_TOLERANCE))
        .map(|&(f, _)| f)
        .unwrap_or(Family::Linear);

    let label = match family {
        Family::Linear => DistributionLabel::SteadilyFlattening,
        Family::Quadratic => DistributionLabel::QuicklyFlattening,
        Family::Exponential => match beta {
            Some(b) if b > DRASTIC_BETA => DistributionLabel::DrasticallyFlattening,
            _ => DistributionLabel::RapidlyFlattening,
        },
    };

    DistributionShape {
        label,
        beta,
        fit_residuals: residuals,
    }
}

fn rmse(x: &[f64], y: &[f64], model: impl Fn(f64) -> f64) -> f64 {
    let sse: f64 = x.iter().zip(y).map(|(&t, &v)| (model(t) - v).powi(2)).sum();
    (sse / x.len() as f64).sqrt()
}

// Returns (beta, rmse). Zero sizes carry no information on a log scale.
fn fit_exponential(x: &[f64], y: &[f64]) -> Option<(f64, f64)> {
    let (lx, ly): (Vec<f64>, Vec<f64>) = x
        .iter()
        .zip(y)
        .filter(|(_, &v)| v > 0.0)
        .map(|(&t, &v)| (t, v.ln()))
        .unzip();
    if lx.len() < 2 {
        return None;
    }
    let c = fit_polynomial(&lx, &ly, 1)?;
    let (scale, beta) = (c[0].exp(), -c[1]);
    Some((beta, rmse(x, y, |t| scale * (-beta * t).exp())))
}

/// Least-squares polynomial coefficients, lowest power first.
fn fit_polynomial(x: &[f64], y: &[f64], degree: usize) -> Option<Vec<f64>> {
    let n = degree + 1;
    if x.len() < n {
        return None;
    }
    // Normal equations, augmented with the right-hand side.
    let mut m = vec![vec![0.0; n + 1]; n];
    for (&t, &v) in x.iter().zip(y) {
        let mut powers = vec![1.0; 2 * n - 1];
        for k in 1..powers.len() {
            powers[k] = powers[k - 1] * t;
        }
        for (r, row) in m.iter_mut().enumerate() {
            for c in 0..n {
                row[c] += powers[r + c];
            }
            row[n] += powers[r] * v;
        }
    }
    solve(m)
}

// Gaussian elimination with partial pivoting on an augmented matrix.
fn solve(mut m: Vec<Vec<f64>>) -> Option<Vec<f64>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[pivot][col].abs() < 1e-12 {
            return None;
        }
        m.swap(col, pivot);
        for row in col + 1..n {
            let factor = m[row][col] / m[col][col];
            let (upper, lower) = m.split_at_mut(row);
            for (x, p) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *x -= factor * p;
            }
        }
    }
    let mut out = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|k| m[row][k] * out[k]).sum();
        out[row] = (m[row][n] - tail) / m[row][row];
    }
    Some(out)
}
