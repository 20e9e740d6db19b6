//! Eigenvalues from the roots of `ψ`.
//!
//! Writing `t = √λ·l`, every zero of `φ₀` in `t > 0` comes from one of:
//!
//! * the sine factor: `t = πk`, `k ≥ 1`, order `Δ`;
//! * a root `α ∈ (-1, 1)` of `ψ` with multiplicity `m`:
//!   `t = ±arccos α + 2πk`, order `m` (cosine is regular there);
//! * a root `α = ±1` with multiplicity `m`: `t ≡ 0` or `π (mod 2π)`, order
//!   `2m` because cosine is critical there.
//!
//! Contributions landing on the same `t` are summed. `λ = 0` is included
//! when `ψ(1) = 0`, with multiplicity `m` (its order as a zero in `λ`).

use super::{check_length, Phi0, SpectralError};
use crate::graphs::Graph;
use crate::polyalg::{dyadic_eps, isolate_real_roots, refine_root, IntPolynomial};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use std::collections::BTreeMap;
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Branch {
    /// `t = πk` from `(sin t/√λ)^Δ`.
    Sine { k: u64, order: usize },
    /// `t = sign·arccos(α) + 2πk` for the `root`-th distinct root of `ψ` in
    /// `(-1, 1)`, counted from the smallest.
    PsiRoot {
        root: usize,
        alpha: f64,
        sign: i8,
        k: u64,
        order: usize,
    },
    /// `ψ(±1) = 0`: `t = 2πk` for `α = 1`, `t = π + 2πk` for `α = -1`.
    PsiEndpoint { alpha: i8, k: u64, order: usize },
}

impl Branch {
    pub fn order(&self) -> usize {
        match *self {
            Branch::Sine { order, .. }
            | Branch::PsiRoot { order, .. }
            | Branch::PsiEndpoint { order, .. } => order,
        }
    }

    /// Label of the subsequence this zero belongs to, without the index `k`.
    pub fn family(&self) -> String {
        match *self {
            Branch::Sine { .. } => "sin".to_string(),
            Branch::PsiRoot { root, sign, .. } => {
                format!("psi{root}{}", if sign > 0 { '+' } else { '-' })
            }
            Branch::PsiEndpoint { alpha, .. } => format!("psi@{alpha}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Eigenvalue {
    pub lambda: f64,
    /// `√λ·l`
    pub t: f64,
    pub multiplicity: usize,
    pub branches: Vec<Branch>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub length: f64,
    /// Number of eigenvalues requested, counted with multiplicity.
    pub requested: usize,
    pub delta: usize,
    pub psi: IntPolynomial,
    /// Distinct eigenvalues, ascending. The multiplicities add up to at
    /// least `requested`.
    pub eigenvalues: Vec<Eigenvalue>,
}

impl SpectrumReport {
    /// The `n`-th eigenvalue counted with multiplicity, 1-based.
    pub fn nth(&self, n: usize) -> Option<f64> {
        let mut seen = 0;
        for e in &self.eigenvalues {
            seen += e.multiplicity;
            if seen >= n {
                return Some(e.lambda);
            }
        }
        None
    }

    pub fn counted(&self) -> usize {
        self.eigenvalues.iter().map(|e| e.multiplicity).sum()
    }

    /// Eigenvalues counted with multiplicity, truncated to `requested`.
    pub fn flattened(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.requested);
        for e in &self.eigenvalues {
            for _ in 0..e.multiplicity {
                if out.len() == self.requested {
                    return out;
                }
                out.push(e.lambda);
            }
        }
        out
    }

    /// JSON with `λ` written as decimal strings with `precision` fractional
    /// digits.
    pub fn to_json(&self, precision: usize) -> serde_json::Value {
        let eigen: Vec<_> = self
            .eigenvalues
            .iter()
            .map(|e| {
                serde_json::json!({
                    "lambda": format!("{:.*}", precision, e.lambda),
                    "sqrt_lambda_l": format!("{:.*}", precision, e.t),
                    "multiplicity": e.multiplicity,
                    "labels": e.branches,
                })
            })
            .collect();
        serde_json::json!({
            "length": self.length,
            "requested": self.requested,
            "delta": self.delta,
            "psi": self.psi.to_string(),
            "precision": precision,
            "eigenvalues": eigen,
        })
    }

    pub fn to_csv(&self, precision: usize) -> String {
        crate::write_csv(|w| {
            w.write_record(["index", "lambda", "sqrt_lambda_l", "multiplicity", "labels"])?;
            for (i, e) in self.eigenvalues.iter().enumerate() {
                let labels: Vec<String> = e
                    .branches
                    .iter()
                    .map(|b| match b {
                        Branch::Sine { k, order } => format!("sin(k={k},order={order})"),
                        Branch::PsiRoot {
                            root, sign, k, order, ..
                        } => format!(
                            "psi{root}{}(k={k},order={order})",
                            if *sign > 0 { '+' } else { '-' }
                        ),
                        Branch::PsiEndpoint { alpha, k, order } => {
                            format!("psi@{alpha}(k={k},order={order})")
                        }
                    })
                    .collect();
                w.write_record([
                    (i + 1).to_string(),
                    format!("{:.*}", precision, e.lambda),
                    format!("{:.*}", precision, e.t),
                    e.multiplicity.to_string(),
                    labels.join(";"),
                ])?;
            }
            Ok(())
        })
    }
}

/// Distinct roots of `ψ` in `[-1, 1]` as `(α, multiplicity)`, with the
/// endpoints reported separately.
struct PsiRoots {
    interior: Vec<(f64, usize)>,
    at_plus_one: usize,
    at_minus_one: usize,
}

fn psi_roots(psi: &IntPolynomial) -> Result<PsiRoots, SpectralError> {
    let one = BigRational::one();
    let iso = isolate_real_roots(psi, &-one.clone(), &one)?;
    let deg = psi.degree().unwrap_or(0);
    if iso.total_multiplicity() != deg {
        return Err(SpectralError::InternalInconsistency(format!(
            "psi = {psi} has {} roots in [-1,1] counted with multiplicity, expected {deg}",
            iso.total_multiplicity()
        )));
    }
    let mut out = PsiRoots {
        interior: Vec::new(),
        at_plus_one: 0,
        at_minus_one: 0,
    };
    for iv in &iso.intervals {
        if iv.is_exact() && iv.low == one {
            out.at_plus_one = iv.multiplicity;
        } else if iv.is_exact() && iv.low == -one.clone() {
            out.at_minus_one = iv.multiplicity;
        } else {
            let alpha = refine_root(psi, &iv.low, &iv.high, &dyadic_eps(64))?
                .to_f64()
                .expect("finite");
            out.interior.push((alpha, iv.multiplicity));
        }
    }
    Ok(out)
}

/// The first `count` eigenvalues (with multiplicity) of the zero-potential
/// problem on `graph` with edge length `l`.
pub fn eigenvalues(graph: &Graph, l: f64, count: usize) -> Result<SpectrumReport, SpectralError> {
    check_length(l)?;
    if count == 0 {
        return Err(SpectralError::InvalidCount);
    }
    let phi = Phi0::new(graph)?;
    let roots = psi_roots(&phi.psi)?;
    let per_period = 2 * graph.g();
    let mut periods = (count / per_period + 2) as u64;
    loop {
        let zeros = collect_zeros(&roots, phi.delta, periods);
        let mut out = Vec::new();
        let mut seen = 0;
        if roots.at_plus_one > 0 {
            out.push(Eigenvalue {
                lambda: 0.0,
                t: 0.0,
                multiplicity: roots.at_plus_one,
                branches: vec![Branch::PsiEndpoint {
                    alpha: 1,
                    k: 0,
                    order: roots.at_plus_one,
                }],
            });
            seen += roots.at_plus_one;
        }
        for (t, branches) in zeros {
            if seen >= count {
                break;
            }
            let multiplicity = branches.iter().map(Branch::order).sum();
            seen += multiplicity;
            out.push(Eigenvalue {
                lambda: (t / l).powi(2),
                t,
                multiplicity,
                branches,
            });
        }
        if seen >= count {
            return Ok(SpectrumReport {
                length: l,
                requested: count,
                delta: phi.delta,
                psi: phi.psi,
                eigenvalues: out,
            });
        }
        if out.is_empty() && periods > 1 << 20 {
            return Err(SpectralError::NoRootsInRange);
        }
        periods *= 2;
    }
}

/// Zeros with `0 < t < 2π·periods`, ascending, lattice points `t = jπ`
/// merged exactly.
fn collect_zeros(roots: &PsiRoots, delta: usize, periods: u64) -> Vec<(f64, Vec<Branch>)> {
    let mut lattice: BTreeMap<u64, Vec<Branch>> = BTreeMap::new();
    let mut scattered: Vec<(f64, Branch)> = Vec::new();
    let two_pi = 2.0 * PI;
    for k in 0..periods {
        if delta > 0 {
            for j in [2 * k + 1, 2 * k + 2] {
                lattice
                    .entry(j)
                    .or_default()
                    .push(Branch::Sine { k: j, order: delta });
            }
        }
        if roots.at_minus_one > 0 {
            lattice.entry(2 * k + 1).or_default().push(Branch::PsiEndpoint {
                alpha: -1,
                k,
                order: 2 * roots.at_minus_one,
            });
        }
        if roots.at_plus_one > 0 {
            lattice.entry(2 * k + 2).or_default().push(Branch::PsiEndpoint {
                alpha: 1,
                k: k + 1,
                order: 2 * roots.at_plus_one,
            });
        }
        for (i, &(alpha, m)) in roots.interior.iter().enumerate() {
            let theta = alpha.acos();
            let base = two_pi * k as f64;
            scattered.push((
                base + theta,
                Branch::PsiRoot {
                    root: i,
                    alpha,
                    sign: 1,
                    k,
                    order: m,
                },
            ));
            scattered.push((
                base + two_pi - theta,
                Branch::PsiRoot {
                    root: i,
                    alpha,
                    sign: -1,
                    k: k + 1,
                    order: m,
                },
            ));
        }
    }
    let mut all: Vec<(f64, Vec<Branch>)> = lattice
        .into_iter()
        .map(|(j, b)| (PI * j as f64, b))
        .chain(scattered.into_iter().map(|(t, b)| (t, vec![b])))
        .collect();
    all.sort_by(|a, b| a.0.total_cmp(&b.0));
    all
}

/// `π²/(g²l²)`, the limit of `λ_k/k²`.
pub fn weyl_limit(g: usize, l: f64) -> f64 {
    PI * PI / ((g * g) as f64 * l * l)
}

/// `λ_N / N²` with `N = report.requested`.
pub fn weyl_ratio(report: &SpectrumReport) -> Result<f64, SpectralError> {
    const MIN: usize = 100;
    let n = report.requested;
    if n < MIN || report.counted() < n {
        return Err(SpectralError::TooFewEigenvalues {
            needed: MIN,
            got: n.min(report.counted()),
        });
    }
    let lambda = report.nth(n).expect("counted >= n");
    Ok(lambda / (n * n) as f64)
}
