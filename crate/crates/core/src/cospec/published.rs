//! Diff of computed `ψ` against the printed class tables for `g = 4..=7`.
//!
//! Printed entries are kept verbatim in `data/published_tables.json`. Each
//! one is matched inside its class: first by exact coefficient equality,
//! then by a single-term edit (substitution, insertion or deletion of one
//! `±coef z^k` token). Anything else is `unmatched` and comes with the list
//! of enumerated graphs of that class that no printed entry claimed.

use super::{signed_run, CospecError, SpectralSignature};
use crate::enumerate::EnumeratedGraph;
use crate::exec::Exec;
use crate::graphs::{to_graph6, ClassKey};
use crate::polyalg::{isolate_real_roots, real_root_count, IntPolynomial};
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

const TABLES: &str = include_str!("../../data/published_tables.json");

#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
pub struct PublishedEntry {
    pub g: usize,
    pub delta: usize,
    pub index: usize,
    pub symbol: String,
    pub printed: String,
    /// Ascending coefficients where the printed string is well formed.
    pub parsed: Option<Vec<i64>>,
}

impl PublishedEntry {
    pub fn class(&self) -> ClassKey {
        ClassKey {
            g: self.g,
            delta: self.delta,
        }
    }
}

#[derive(Debug, Deserialize)]
struct Tables {
    version: u32,
    entries: Vec<PublishedEntry>,
    stated: Stated,
}

#[derive(Debug, Deserialize)]
struct Stated {
    class_sizes: Vec<StatedCount>,
    totals: Vec<StatedTotal>,
}

#[derive(Debug, Deserialize)]
struct StatedCount {
    g: usize,
    delta: usize,
    count: usize,
}

#[derive(Debug, Deserialize)]
struct StatedTotal {
    g: usize,
    count: usize,
}

fn tables() -> Result<Tables, CospecError> {
    let t: Tables = serde_json::from_str(TABLES).map_err(|e| CospecError::Data(e.to_string()))?;
    if t.version != 1 {
        return Err(CospecError::Data(format!("unsupported version {}", t.version)));
    }
    Ok(t)
}

pub fn published_entries() -> Result<Vec<PublishedEntry>, CospecError> {
    Ok(tables()?.entries)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Exact,
    TypoCorrected,
    Unmatched,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Exact => "exact",
            Verdict::TypoCorrected => "typo-corrected",
            Verdict::Unmatched => "unmatched",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PaperDiff {
    pub class: ClassKey,
    pub index: usize,
    pub printed: String,
    pub computed: Option<String>,
    pub verdict: Verdict,
    /// The enumerated graph whose `ψ` was matched.
    pub graph6: Option<String>,
    /// For `unmatched`: graphs of the class that no entry claimed.
    pub candidates: Vec<String>,
    pub note: Option<String>,
    /// Why the printed polynomial cannot be `ψ` of any graph in its class,
    /// when a necessary condition fails.
    pub obstruction: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassInventory {
    pub g: usize,
    pub delta: usize,
    pub enumerated: usize,
    pub printed: usize,
    pub stated: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TotalInventory {
    pub g: usize,
    pub enumerated: usize,
    pub printed: usize,
    pub stated: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnlistedGraph {
    pub class: ClassKey,
    pub graph6: String,
    pub psi: String,
    /// Whether the class has any printed table at all.
    pub class_printed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PublishedTableReport {
    pub diffs: Vec<PaperDiff>,
    pub classes: Vec<ClassInventory>,
    pub totals: Vec<TotalInventory>,
    /// Enumerated graphs with no printed polynomial, exact or corrected.
    pub unlisted: Vec<UnlistedGraph>,
}

impl PublishedTableReport {
    pub fn count(&self, verdict: Verdict) -> usize {
        self.diffs.iter().filter(|d| d.verdict == verdict).count()
    }

    pub fn exact_fraction(&self) -> f64 {
        if self.diffs.is_empty() {
            return 0.0;
        }
        self.count(Verdict::Exact) as f64 / self.diffs.len() as f64
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        crate::write_csv(|w| {
            w.write_record([
                "g", "delta", "index", "printed", "computed", "verdict", "graph6", "note",
                "obstruction",
            ])?;
            for d in &self.diffs {
                w.write_record([
                    &d.class.g.to_string(),
                    &d.class.delta.to_string(),
                    &d.index.to_string(),
                    &d.printed,
                    d.computed.as_deref().unwrap_or(""),
                    &d.verdict.to_string(),
                    d.graph6.as_deref().unwrap_or(""),
                    d.note.as_deref().unwrap_or(""),
                    d.obstruction.as_deref().unwrap_or(""),
                ])?;
            }
            Ok(())
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for d in &self.diffs {
            out.push_str(&format!(
                "{} #{:<2} {:<15} {}",
                d.class,
                d.index,
                d.verdict.to_string(),
                d.printed
            ));
            if d.verdict != Verdict::Exact {
                if let Some(c) = &d.computed {
                    out.push_str(&format!(" -> {c}"));
                }
            }
            if let Some(n) = &d.note {
                out.push_str(&format!("  ({n})"));
            }
            if let Some(o) = &d.obstruction {
                out.push_str(&format!("  [impossible: {o}]"));
            }
            if !d.candidates.is_empty() {
                out.push_str(&format!("  candidates: {}", d.candidates.join(" ")));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "exact {}/{}, typo-corrected {}, unmatched {}\n",
            self.count(Verdict::Exact),
            self.diffs.len(),
            self.count(Verdict::TypoCorrected),
            self.count(Verdict::Unmatched)
        ));
        for t in &self.totals {
            out.push_str(&format!(
                "g={}: enumerated {}, printed polynomials {}",
                t.g, t.enumerated, t.printed
            ));
            if let Some(s) = t.stated {
                out.push_str(&format!(", stated {s}"));
            }
            out.push('\n');
        }
        for c in &self.classes {
            if c.stated.is_some_and(|s| s != c.enumerated) || (c.printed > 0 && c.printed != c.enumerated) {
                out.push_str(&format!(
                    "({},{}): enumerated {}, printed {}, stated {}\n",
                    c.g,
                    c.delta,
                    c.enumerated,
                    c.printed,
                    c.stated.map_or("-".into(), |s| s.to_string())
                ));
            }
        }
        for u in self.unlisted.iter().filter(|u| u.class_printed) {
            out.push_str(&format!("unlisted {} {} psi={}\n", u.class, u.graph6, u.psi));
        }
        out
    }
}

/// Runs the enumeration for `g = 4..=7` and diffs every printed entry.
pub fn verify_paper_tables(exec: &Exec) -> Result<PublishedTableReport, CospecError> {
    let mut runs = BTreeMap::new();
    for g in 4..=7 {
        runs.insert(g, signed_run(g, exec)?);
    }
    diff_against(&runs)
}

/// Checks necessary conditions on `ψ` for a graph in the entry's class:
/// degree `g - Δ`, leading sign `(-1)^deg`, `(-1)^deg ψ(1) ≥ 0` (a reduced
/// Laplacian determinant) and all roots real in `[-1, 1]`.
pub fn obstruction(entry: &PublishedEntry) -> Option<String> {
    let Ok(psi) = entry.printed.parse::<IntPolynomial>() else {
        return Some("not a well-formed polynomial".into());
    };
    let want = entry.g - entry.delta;
    let deg = psi.degree()?;
    if deg != want {
        return Some(format!("degree {deg}, class requires {want}"));
    }
    let odd = deg % 2 == 1;
    if psi.leading()?.is_negative() != odd {
        return Some(format!("leading coefficient sign must be (-1)^{deg}"));
    }
    let one = BigRational::one();
    let at_one = psi.eval(&one);
    if (if odd { -at_one.clone() } else { at_one.clone() }).is_negative() {
        return Some(format!("(-1)^{deg} psi(1) = {} is negative", if odd { -at_one } else { at_one }));
    }
    let sf = psi.squarefree_part().ok()?;
    let real = real_root_count(&sf).ok()?;
    let inside = isolate_real_roots(&psi, &-one.clone(), &one).ok()?.total_multiplicity();
    if real != sf.degree()? || inside != deg {
        return Some(format!("only {inside} of {deg} roots are real and in [-1,1]"));
    }
    None
}

/// Splits a printed polynomial into signed terms. A `^` binds the following
/// character, so `48z^--32z^2` reads as `48z^-`, `-32z^2`.
pub(crate) fn terms(s: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut cur = String::new();
    let mut prev = ' ';
    for ch in s.chars().filter(|c| !c.is_whitespace()) {
        if (ch == '+' || ch == '-') && !cur.is_empty() && prev != '^' {
            out.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
        prev = ch;
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    for t in out.iter_mut() {
        if let Some(rest) = t.strip_prefix('+') {
            *t = rest.to_string();
        }
    }
    out
}

fn term_distance(a: &[String], b: &[String]) -> usize {
    let mut row: Vec<usize> = (0..=b.len()).collect();
    for (i, x) in a.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i + 1;
        for (j, y) in b.iter().enumerate() {
            let next = (row[j + 1] + 1).min(row[j] + 1).min(diag + usize::from(x != y));
            diag = row[j + 1];
            row[j + 1] = next;
        }
    }
    row[b.len()]
}

/// Describes the one-term edit turning `from` into `to`.
fn describe_edit(from: &[String], to: &[String]) -> String {
    if from.len() == to.len() {
        if let Some(i) = (0..from.len()).find(|&i| from[i] != to[i]) {
            return format!("term '{}' should read '{}'", from[i], to[i]);
        }
    }
    if from.len() + 1 == to.len() {
        if let Some(t) = to.iter().find(|t| !from.contains(t)) {
            return format!("missing term '{t}'");
        }
    }
    if let Some(t) = from.iter().find(|t| !to.contains(t)) {
        return format!("extra term '{t}'");
    }
    "single-term edit".into()
}

struct Computed {
    graph6: String,
    psi: IntPolynomial,
    text: String,
    terms: Vec<String>,
}

pub(crate) fn diff_against(
    runs: &BTreeMap<usize, Vec<(EnumeratedGraph, SpectralSignature)>>,
) -> Result<PublishedTableReport, CospecError> {
    let tables = tables()?;
    let stated: BTreeMap<ClassKey, usize> = tables
        .stated
        .class_sizes
        .iter()
        .map(|s| (ClassKey { g: s.g, delta: s.delta }, s.count))
        .collect();
    let stated_totals: BTreeMap<usize, usize> =
        tables.stated.totals.iter().map(|s| (s.g, s.count)).collect();

    let mut by_class: BTreeMap<ClassKey, Vec<Computed>> = BTreeMap::new();
    for signed in runs.values() {
        for (e, sig) in signed {
            let text = sig.psi.to_string();
            by_class.entry(e.class).or_default().push(Computed {
                graph6: to_graph6(&e.graph),
                psi: sig.psi.clone(),
                terms: terms(&text),
                text,
            });
        }
    }
    let entries: Vec<&PublishedEntry> =
        tables.entries.iter().filter(|e| runs.contains_key(&e.g)).collect();
    let printed_classes: BTreeSet<ClassKey> = entries.iter().map(|e| e.class()).collect();

    let mut diffs: Vec<Option<PaperDiff>> = vec![None; entries.len()];
    let mut claimed: BTreeMap<ClassKey, BTreeSet<usize>> = BTreeMap::new();
    let empty = Vec::new();

    // exact matches first, so corrections cannot steal an exactly printed graph
    for (n, e) in entries.iter().enumerate() {
        let Ok(poly) = e.printed.parse::<IntPolynomial>() else {
            continue;
        };
        let pool = by_class.get(&e.class()).unwrap_or(&empty);
        let taken = claimed.entry(e.class()).or_default();
        let hits: Vec<usize> = (0..pool.len()).filter(|&i| pool[i].psi == poly).collect();
        let Some(&pick) = hits.iter().find(|i| !taken.contains(i)).or(hits.first()) else {
            continue;
        };
        let note = taken.contains(&pick).then(|| "printed twice".to_string());
        taken.insert(pick);
        diffs[n] = Some(PaperDiff {
            class: e.class(),
            index: e.index,
            printed: e.printed.clone(),
            computed: Some(pool[pick].text.clone()),
            verdict: super::Verdict::Exact,
            graph6: Some(pool[pick].graph6.clone()),
            candidates: Vec::new(),
            note,
            obstruction: None,
        });
    }

    for (n, e) in entries.iter().enumerate() {
        if diffs[n].is_some() {
            continue;
        }
        let pool = by_class.get(&e.class()).unwrap_or(&empty);
        let taken = claimed.entry(e.class()).or_default();
        let printed_terms = terms(&e.printed);
        let free: Vec<usize> = (0..pool.len())
            .filter(|i| !taken.contains(i))
            .filter(|&i| term_distance(&printed_terms, &pool[i].terms) == 1)
            .collect();
        diffs[n] = Some(match free.first().copied() {
            Some(pick) => {
                let mut note = describe_edit(&printed_terms, &pool[pick].terms);
                if free.len() > 1 {
                    note.push_str(&format!("; {} unclaimed graphs within one term", free.len()));
                }
                taken.insert(pick);
                PaperDiff {
                    class: e.class(),
                    index: e.index,
                    printed: e.printed.clone(),
                    computed: Some(pool[pick].text.clone()),
                    verdict: Verdict::TypoCorrected,
                    graph6: Some(pool[pick].graph6.clone()),
                    candidates: Vec::new(),
                    note: Some(note),
                    obstruction: obstruction(e),
                }
            }
            None => PaperDiff {
                class: e.class(),
                index: e.index,
                printed: e.printed.clone(),
                computed: None,
                verdict: Verdict::Unmatched,
                graph6: None,
                candidates: Vec::new(),
                note: None,
                obstruction: obstruction(e),
            },
        });
    }

    let mut diffs: Vec<PaperDiff> = diffs.into_iter().flatten().collect();
    for d in diffs.iter_mut().filter(|d| d.verdict == Verdict::Unmatched) {
        let pool = by_class.get(&d.class).unwrap_or(&empty);
        let taken = claimed.get(&d.class).cloned().unwrap_or_default();
        d.candidates = (0..pool.len())
            .filter(|i| !taken.contains(i))
            .map(|i| format!("{} psi={}", pool[i].graph6, pool[i].text))
            .collect();
    }

    let mut unlisted = Vec::new();
    let mut classes = Vec::new();
    for (class, pool) in &by_class {
        let taken = claimed.get(class).cloned().unwrap_or_default();
        for (_, c) in pool.iter().enumerate().filter(|(i, _)| !taken.contains(i)) {
            unlisted.push(UnlistedGraph {
                class: *class,
                graph6: c.graph6.clone(),
                psi: c.text.clone(),
                class_printed: printed_classes.contains(class),
            });
        }
        classes.push(ClassInventory {
            g: class.g,
            delta: class.delta,
            enumerated: pool.len(),
            printed: entries.iter().filter(|e| e.class() == *class).count(),
            stated: stated.get(class).copied(),
        });
    }
    let totals = runs
        .iter()
        .map(|(&g, signed)| TotalInventory {
            g,
            enumerated: signed.len(),
            printed: entries.iter().filter(|e| e.g == g).count(),
            stated: stated_totals.get(&g).copied(),
        })
        .collect();
    Ok(PublishedTableReport {
        diffs,
        classes,
        totals,
        unlisted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenizer() {
        assert_eq!(terms("48z^--32z^2-8z"), ["48z^-", "-32z^2", "-8z"]);
        assert_eq!(terms("-12z^3+7z+2"), ["-12z^3", "7z", "2"]);
        assert_eq!(terms("-16z2^5+144z^3"), ["-16z2^5", "144z^3"]);
    }

    #[test]
    fn distance() {
        let a = terms("-108z^5+994z^3+8z^2-10z");
        let b = terms("-108z^5+94z^3+8z^2-10z");
        assert_eq!(term_distance(&a, &b), 1);
        assert_eq!(term_distance(&a, &a), 0);
        assert_eq!(term_distance(&terms("-24z^3+5"), &terms("-24z^3+5z")), 1);
        assert_eq!(term_distance(&terms("1+z"), &terms("2+3z+z^2")), 3);
    }

    fn entry(g: usize, delta: usize, printed: &str) -> PublishedEntry {
        PublishedEntry {
            g,
            delta,
            index: 1,
            symbol: "psi".into(),
            printed: printed.into(),
            parsed: None,
        }
    }

    #[test]
    fn obstructions() {
        assert_eq!(obstruction(&entry(4, 1, "-8z^3+4z")), None);
        assert_eq!(obstruction(&entry(5, 1, "36z^4-28z^2-8z")), None);
        assert!(obstruction(&entry(5, 1, "24z^4-24z^2-8z")).unwrap().contains("psi(1)"));
        assert!(obstruction(&entry(6, 2, "24z^5-14z^2+1")).unwrap().contains("degree"));
        assert!(obstruction(&entry(6, 2, "48z^--32z^2-8z")).is_some());
        assert!(obstruction(&entry(5, 3, "-8z^2+1")).unwrap().contains("sign"));
        assert!(obstruction(&entry(5, 3, "8z^2+1")).unwrap().contains("roots"));
    }

    #[test]
    fn data_is_consistent() {
        let entries = published_entries().unwrap();
        assert_eq!(entries.len(), 109);
        for e in &entries {
            let parsed = e.printed.parse::<IntPolynomial>().ok();
            let stored = e.parsed.as_ref().map(|c| IntPolynomial::from_i64s(c));
            assert_eq!(parsed, stored, "{}", e.printed);
        }
    }
}
