//! The `2g × 2g` characteristic matrix at zero potential.
//!
//! Unknowns are `(A_j, B_j)` for each edge, with `y_j(x) = A_j s(x) + B_j c(x)`,
//! `s(x) = sin(√λ x)/√λ` and `c(x) = cos(√λ x)`. At the start of an edge
//! `y = B`, `y' = A`; at its end `y = A s(l) + B c(l)`,
//! `y' = A s'(l) + B c'(l)`. Edges at pendant vertices point away from the
//! pendant vertex, the rest from the lower to the higher label.

use super::{check_length, phi::sc, SpectralError};
use crate::graphs::Graph;
use nalgebra::DMatrix;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicMatrixSample {
    pub lambda: f64,
    pub entries: DMatrix<f64>,
}

impl CharacteristicMatrixSample {
    /// Determinant by LU with partial pivoting.
    pub fn determinant(&self) -> f64 {
        self.entries.clone().lu().determinant()
    }

    pub fn singular_values(&self) -> Vec<f64> {
        let mut sv: Vec<f64> = self.entries.clone().singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        sv
    }

    /// `σ_min / σ_max`.
    pub fn inverse_condition(&self) -> f64 {
        let sv = self.singular_values();
        match (sv.first(), sv.last()) {
            (Some(&hi), Some(&lo)) if hi > 0.0 => lo / hi,
            _ => 0.0,
        }
    }

    /// Number of singular values below `rel_tol · σ_max`.
    pub fn nullity(&self, rel_tol: f64) -> usize {
        let sv = self.singular_values();
        let top = sv.first().copied().unwrap_or(0.0);
        sv.iter().filter(|&&s| s <= rel_tol * top).count()
    }
}

/// Edge orientation as `(tail, head)` per edge, in `graph.edges()` order.
pub(crate) fn orient(graph: &Graph) -> Vec<(usize, usize)> {
    graph
        .edges()
        .iter()
        .map(|&(u, v)| {
            if graph.is_pendant(v) && !graph.is_pendant(u) {
                (v, u)
            } else {
                (u, v)
            }
        })
        .collect()
}

pub fn characteristic_matrix(
    graph: &Graph,
    lambda: f64,
    l: f64,
) -> Result<CharacteristicMatrixSample, SpectralError> {
    check_length(l)?;
    let g = graph.g();
    let (s, c) = sc(lambda, l);
    let (ds, dc) = if lambda > 0.0 {
        let k = lambda.sqrt();
        ((k * l).cos(), -k * (k * l).sin())
    } else if lambda < 0.0 {
        let k = (-lambda).sqrt();
        ((k * l).cosh(), k * (k * l).sinh())
    } else {
        (1.0, 0.0)
    };
    let oriented = orient(graph);
    let mut m = DMatrix::<f64>::zeros(2 * g, 2 * g);
    let mut row = 0;
    // (value, derivative) coefficient pairs on (A_j, B_j) at an edge end;
    // derivatives are taken in the direction of the edge.
    let value = |head: bool| if head { (s, c) } else { (0.0, 1.0) };
    let deriv = |head: bool| if head { (ds, dc) } else { (1.0, 0.0) };

    for v in 0..graph.p() {
        let ends: Vec<(usize, bool)> = oriented
            .iter()
            .enumerate()
            .filter_map(|(j, &(tail, head))| {
                if tail == v {
                    Some((j, false))
                } else if head == v {
                    Some((j, true))
                } else {
                    None
                }
            })
            .collect();
        if graph.is_pendant(v) {
            let (j, head) = ends[0];
            let (a, b) = value(head);
            m[(row, 2 * j)] = a;
            m[(row, 2 * j + 1)] = b;
            row += 1;
            continue;
        }
        for pair in ends.windows(2) {
            let ((j0, h0), (j1, h1)) = (pair[0], pair[1]);
            let (a0, b0) = value(h0);
            let (a1, b1) = value(h1);
            m[(row, 2 * j0)] += a0;
            m[(row, 2 * j0 + 1)] += b0;
            m[(row, 2 * j1)] -= a1;
            m[(row, 2 * j1 + 1)] -= b1;
            row += 1;
        }
        for &(j, head) in &ends {
            let (a, b) = deriv(head);
            let sign = if head { 1.0 } else { -1.0 };
            m[(row, 2 * j)] += sign * a;
            m[(row, 2 * j + 1)] += sign * b;
        }
        row += 1;
    }
    if row != 2 * g {
        return Err(SpectralError::InternalInconsistency(format!(
            "assembled {row} rows, expected {}",
            2 * g
        )));
    }
    Ok(CharacteristicMatrixSample { lambda, entries: m })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixZero {
    pub lambda: f64,
    pub t: f64,
    /// Numerical kernel dimension of the matrix at the zero.
    pub nullity: usize,
    pub inverse_condition: f64,
}

const ZERO_THRESHOLD: f64 = 1e-9;
const NULLITY_TOL: f64 = 1e-7;

/// Zeros of `det Φ(λ)` on `(0, lambda_max)`, located as the points where
/// `σ_min/σ_max` of the characteristic matrix vanishes. A grid in
/// `t = √λ·l` with spacing `step` brackets local minima, which are then
/// polished by golden-section search. Zeros closer than `step` apart are
/// not resolved.
pub fn characteristic_zeros(
    graph: &Graph,
    l: f64,
    lambda_max: f64,
    step: f64,
) -> Result<Vec<MatrixZero>, SpectralError> {
    check_length(l)?;
    let t_max = lambda_max.sqrt() * l;
    let lambda_of = |t: f64| (t / l).powi(2);
    let f = |t: f64| -> Result<f64, SpectralError> {
        Ok(characteristic_matrix(graph, lambda_of(t), l)?.inverse_condition())
    };
    let n = (t_max / step).floor() as usize;
    let ts: Vec<f64> = (1..=n).map(|i| i as f64 * step).filter(|&t| t < t_max).collect();
    let vals = ts.iter().map(|&t| f(t)).collect::<Result<Vec<_>, _>>()?;
    let mut zeros: Vec<MatrixZero> = Vec::new();
    for i in 0..ts.len() {
        let left = if i == 0 { f64::INFINITY } else { vals[i - 1] };
        let right = vals.get(i + 1).copied().unwrap_or(f64::INFINITY);
        if !(vals[i] <= left && vals[i] <= right) {
            continue;
        }
        let lo = if i == 0 { ts[i] * 0.5 } else { ts[i - 1] };
        let hi = ts.get(i + 1).copied().unwrap_or(t_max);
        let (t, fv) = golden_min(&f, lo, hi)?;
        if fv > ZERO_THRESHOLD || t <= 0.0 || t >= t_max {
            continue;
        }
        if zeros.last().is_some_and(|z| (z.t - t).abs() < 1e-9) {
            continue;
        }
        let sample = characteristic_matrix(graph, lambda_of(t), l)?;
        zeros.push(MatrixZero {
            lambda: lambda_of(t),
            t,
            nullity: sample.nullity(NULLITY_TOL),
            inverse_condition: fv,
        });
    }
    Ok(zeros)
}

fn golden_min(
    f: &impl Fn(f64) -> Result<f64, SpectralError>,
    mut a: f64,
    mut b: f64,
) -> Result<(f64, f64), SpectralError> {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while b - a > 1e-13 * b.max(1.0) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d)?;
        }
    }
    let t = 0.5 * (a + b);
    Ok((t, f(t)?))
}
