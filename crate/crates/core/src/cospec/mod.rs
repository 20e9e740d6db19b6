//! Cospectrality detection within `(g, Δ)` classes.
//!
//! Two graphs with equal `Δ` and equal zero sets of `ψ` have the same
//! spectrum; graphs in different classes never do. The comparison is exact:
//! signatures are integer or rational coefficient vectors used as map keys.

mod published;

pub use published::{
    obstruction, published_entries, verify_paper_tables, ClassInventory, PaperDiff, PublishedEntry,
    PublishedTableReport, UnlistedGraph, Verdict,
};

use crate::enumerate::{enumerate_connected, EnumerateError, EnumeratedGraph};
use crate::exec::Exec;
use crate::graphs::{to_graph6, ClassKey, Graph};
use crate::polyalg::{IntPolynomial, PolyError};
use crate::spectral::{charpoly_psi, SpectralError};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CospecError {
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("invalid edge range {0}..={1}")]
    InvalidRange(usize, usize),
    #[error("embedded table data is malformed: {0}")]
    Data(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Compare zero sets: primitive squarefree parts.
    #[default]
    Set,
    /// Compare zero multisets: monic normalizations.
    Multiset,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Set => "set",
            Mode::Multiset => "multiset",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "set" => Ok(Mode::Set),
            "multiset" => Ok(Mode::Multiset),
            _ => Err(format!("unknown mode '{s}', expected set or multiset")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralSignature {
    pub class: ClassKey,
    pub psi: IntPolynomial,
    /// Primitive squarefree part with positive leading coefficient.
    pub sf: IntPolynomial,
    /// `ψ` divided by its leading coefficient, ascending.
    pub monic: Vec<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SignatureKey {
    Set(ClassKey, IntPolynomial),
    Multiset(ClassKey, Vec<BigRational>),
}

impl SpectralSignature {
    pub fn delta(&self) -> usize {
        self.class.delta
    }

    pub fn key(&self, mode: Mode) -> SignatureKey {
        match mode {
            Mode::Set => SignatureKey::Set(self.class, self.sf.clone()),
            Mode::Multiset => SignatureKey::Multiset(self.class, self.monic.clone()),
        }
    }

    pub fn display(&self, mode: Mode) -> String {
        match mode {
            Mode::Set => self.sf.to_string(),
            Mode::Multiset => format_rational_poly(&self.monic),
        }
    }
}

pub fn signature(graph: &Graph) -> Result<SpectralSignature, CospecError> {
    let psi = charpoly_psi(graph)?;
    Ok(SpectralSignature {
        class: graph.class_key(),
        sf: psi.squarefree_part()?,
        monic: psi.monic()?,
        psi,
    })
}

/// Formats ascending rational coefficients like `z^3-7/12z-1/6`.
pub fn format_rational_poly(coeffs: &[BigRational]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mag = c.abs();
        if i == 0 || !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        match i {
            0 => {}
            1 => out.push('z'),
            _ => out.push_str(&format!("z^{i}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassCount {
    pub g: usize,
    pub delta: usize,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CospectralPair {
    pub a: String,
    pub b: String,
    pub g: usize,
    pub delta: usize,
    pub signature: String,
    pub psi_a: String,
    pub psi_b: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CospectralReport {
    pub mode: Mode,
    pub range: [usize; 2],
    pub classes: Vec<ClassCount>,
    pub pairs: Vec<CospectralPair>,
    pub paper_diffs: Vec<PaperDiff>,
}

impl CospectralReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per class count, pair and table diff, tagged by `kind`.
    pub fn to_csv(&self) -> String {
        crate::write_csv(|w| {
            w.write_record([
                "kind", "g", "delta", "a", "b", "count", "signature", "index", "printed",
                "computed", "verdict",
            ])?;
            for c in &self.classes {
                let (g, d, n) = (c.g.to_string(), c.delta.to_string(), c.count.to_string());
                w.write_record(["class", &g, &d, "", "", &n, "", "", "", "", ""])?;
            }
            for p in &self.pairs {
                let (g, d) = (p.g.to_string(), p.delta.to_string());
                w.write_record(["pair", &g, &d, &p.a, &p.b, "", &p.signature, "", "", "", ""])?;
            }
            for x in &self.paper_diffs {
                w.write_record([
                    "diff",
                    &x.class.g.to_string(),
                    &x.class.delta.to_string(),
                    "",
                    "",
                    "",
                    "",
                    &x.index.to_string(),
                    &x.printed,
                    x.computed.as_deref().unwrap_or(""),
                    &x.verdict.to_string(),
                ])?;
            }
            Ok(())
        })
    }
}

/// Enumerated graphs of one edge count with their signatures, in
/// enumeration order.
pub(crate) fn signed_run(
    g: usize,
    exec: &Exec,
) -> Result<Vec<(EnumeratedGraph, SpectralSignature)>, CospecError> {
    let run = enumerate_connected(g, exec)?;
    let sigs = exec.map(&run.graphs, |e| signature(&e.graph));
    run.graphs
        .into_iter()
        .zip(sigs)
        .map(|(e, s)| Ok((e, s?)))
        .collect()
}

/// All cospectral pairs among connected graphs with `g_min..=g_max` edges.
/// Table diffs are included for every printed class whose edge count lies in
/// the range.
pub fn scan(
    g_min: usize,
    g_max: usize,
    mode: Mode,
    exec: &Exec,
) -> Result<CospectralReport, CospecError> {
    if g_min == 0 || g_min > g_max {
        return Err(CospecError::InvalidRange(g_min, g_max));
    }
    let mut classes = Vec::new();
    let mut pairs = Vec::new();
    let mut runs = BTreeMap::new();
    for g in g_min..=g_max {
        let signed = signed_run(g, exec)?;
        let mut counts: BTreeMap<ClassKey, usize> = BTreeMap::new();
        let mut buckets: BTreeMap<SignatureKey, Vec<usize>> = BTreeMap::new();
        for (i, (e, sig)) in signed.iter().enumerate() {
            *counts.entry(e.class).or_insert(0) += 1;
            buckets.entry(sig.key(mode)).or_default().push(i);
        }
        classes.extend(counts.into_iter().map(|(k, count)| ClassCount {
            g: k.g,
            delta: k.delta,
            count,
        }));
        let mut found = Vec::new();
        for members in buckets.values().filter(|m| m.len() > 1) {
            for (x, &i) in members.iter().enumerate() {
                for &j in &members[x + 1..] {
                    let (ei, si) = &signed[i];
                    let (ej, sj) = &signed[j];
                    assert_eq!(ei.class, ej.class, "pairs never cross classes");
                    if mode == Mode::Multiset {
                        assert_eq!(si.sf, sj.sf, "equal multisets imply equal sets");
                    }
                    let (a, b) = (to_graph6(&ei.graph), to_graph6(&ej.graph));
                    let ((a, pa), (b, pb)) = if a <= b {
                        ((a, &si.psi), (b, &sj.psi))
                    } else {
                        ((b, &sj.psi), (a, &si.psi))
                    };
                    found.push(CospectralPair {
                        a,
                        b,
                        g: ei.class.g,
                        delta: ei.class.delta,
                        signature: si.display(mode),
                        psi_a: pa.to_string(),
                        psi_b: pb.to_string(),
                    });
                }
            }
        }
        found.sort_by(|x, y| (x.delta, &x.a, &x.b).cmp(&(y.delta, &y.a, &y.b)));
        pairs.extend(found);
        runs.insert(g, signed);
    }
    let paper_diffs = published::diff_against(&runs)?.diffs;
    Ok(CospectralReport {
        mode,
        range: [g_min, g_max],
        classes,
        pairs,
        paper_diffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::named::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn p5_signature() {
        let s = signature(&path(5)).unwrap();
        assert_eq!(s.delta(), 1);
        assert_eq!(s.sf.to_string(), "2z^3-z");
    }

    #[test]
    fn paw_signature() {
        let s = signature(&paw()).unwrap();
        assert_eq!(s.delta(), 1);
        assert_eq!(s.monic, vec![q(-1, 6), q(-7, 12), q(0, 1), q(1, 1)]);
        assert_eq!(s.display(Mode::Multiset), "z^3-7/12z-1/6");
    }

    #[test]
    fn relabel_invariance() {
        let c4 = cycle(4);
        let r = c4.relabel(&[2, 0, 3, 1]);
        assert_eq!(signature(&c4).unwrap(), signature(&r).unwrap());
    }

    #[test]
    fn small_scans_are_empty() {
        let exec = Exec::sequential();
        assert!(scan(1, 4, Mode::Multiset, &exec).unwrap().pairs.is_empty());
        assert!(scan(1, 5, Mode::Set, &exec).unwrap().pairs.is_empty());
        assert!(scan(3, 2, Mode::Set, &exec).is_err());
    }

    #[test]
    fn mode_parse() {
        assert_eq!("set".parse::<Mode>().unwrap(), Mode::Set);
        assert_eq!("multiset".parse::<Mode>().unwrap(), Mode::Multiset);
        assert!("bag".parse::<Mode>().is_err());
    }
}
