//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Two criteria cannot pass because the printed tables contain entries that
//! are not `ψ` of any graph in their class. Those are listed in `KNOWN` with
//! the exact outcome they are expected to have; the process fails if any
//! criterion fails for a reason other than its documented one.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use num_bigint::BigInt;
use num_rational::BigRational;
use qgraph_cospec::cospec::{published_entries, signature, verify_paper_tables};
use qgraph_cospec::enumerate::enumerate_connected;
use qgraph_cospec::graphs::{canonical_code, named, parse_graph6, to_graph6, ClassKey, Graph};
use qgraph_cospec::polyalg::{isolate_real_roots, real_root_count, IntPolynomial};
use qgraph_cospec::spectral::{
    characteristic_zeros, charpoly_psi, eigenvalues, weyl_limit, weyl_ratio,
};
use qgraph_cospec::Exec;
use serde_json::Value;
use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::{Duration, Instant};

const MATCH_TOL: f64 = 1e-6;
const WEYL_TOL: f64 = 0.02;
const EXACT_FRACTION: f64 = 0.90;
const ZERO_SCAN_STEP: f64 = 2e-3;

struct Outcome {
    pass: bool,
    detail: String,
    /// When failing, a fingerprint of the failure compared with `KNOWN`.
    fingerprint: String,
}

/// Criteria that fail for documented reasons, with their fingerprints.
const KNOWN: &[(usize, &str)] = &[
    (1, "non-exact=(5,1)#4; all obstructed"),
    (2, "exact=89/109; rest typo-corrected or listed"),
];

fn qgcospec(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qgcospec"))
        .args(args)
        .output()
        .expect("run qgcospec");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 output"),
    )
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn criterion_1() -> Outcome {
    let exec = Exec::sequential();
    let entries: Vec<_> = published_entries()
        .unwrap()
        .into_iter()
        .filter(|e| e.g <= 5)
        .collect();
    let mut psis: BTreeMap<ClassKey, BTreeSet<IntPolynomial>> = BTreeMap::new();
    for g in 4..=5 {
        for e in enumerate_connected(g, &exec).unwrap().graphs {
            psis.entry(e.class).or_default().insert(charpoly_psi(&e.graph).unwrap());
        }
    }
    let mut missing = Vec::new();
    let mut all_obstructed = true;
    for e in &entries {
        let ok = e
            .printed
            .parse::<IntPolynomial>()
            .is_ok_and(|p| psis.get(&e.class()).is_some_and(|s| s.contains(&p)));
        if !ok {
            missing.push(format!("({},{})#{}", e.g, e.delta, e.index));
            all_obstructed &= qgraph_cospec::cospec::obstruction(e).is_some();
        }
    }
    let exact = entries.len() - missing.len();
    Outcome {
        pass: missing.is_empty(),
        detail: format!(
            "{exact}/{} printed g<=5 polynomials matched exactly; not matched: {}{}",
            entries.len(),
            if missing.is_empty() { "none".into() } else { missing.join(" ") },
            if !missing.is_empty() && all_obstructed {
                " (each fails a necessary condition for any psi in its class)"
            } else {
                ""
            }
        ),
        fingerprint: format!(
            "non-exact={}; {}",
            missing.join(","),
            if all_obstructed { "all obstructed" } else { "not all obstructed" }
        ),
    }
}

fn criterion_2() -> Outcome {
    let (code, out) = qgcospec(&["verify-paper", "--format", "json"]);
    let v: Value = serde_json::from_str(&out).expect("verify-paper json");
    let diffs = v["diffs"].as_array().expect("diffs");
    let total = diffs.len();
    let count = |s: &str| diffs.iter().filter(|d| d["verdict"] == s).count();
    let exact = count("exact");
    let typo = count("typo-corrected");
    let unmatched = count("unmatched");
    let corrected_shown = diffs
        .iter()
        .filter(|d| d["verdict"] == "typo-corrected")
        .all(|d| d["computed"].is_string() && d["graph6"].is_string());
    let unmatched_listed = diffs
        .iter()
        .filter(|d| d["verdict"] == "unmatched")
        .all(|d| d["candidates"].as_array().is_some_and(|c| !c.is_empty()));
    let obstructed = diffs.iter().filter(|d| d["obstruction"].is_string()).count();
    let fraction = exact as f64 / total as f64;
    let rest_ok = corrected_shown && unmatched_listed && code == 0;
    for key in ["994z^3", "48z^--32z^2"] {
        let hit = diffs
            .iter()
            .find(|d| d["printed"].as_str().is_some_and(|p| p.contains(key)));
        assert!(
            hit.is_some_and(|d| d["verdict"] == "typo-corrected"),
            "{key} should be a corrected entry"
        );
    }
    Outcome {
        pass: fraction >= EXACT_FRACTION && rest_ok,
        detail: format!(
            "exact {exact}/{total} ({:.1}%, need {:.0}%), typo-corrected {typo}, unmatched {unmatched} \
             (all with candidate listing: {unmatched_listed}); {obstructed} non-exact entries fail a \
             necessary condition for psi",
            100.0 * fraction,
            100.0 * EXACT_FRACTION
        ),
        fingerprint: format!(
            "exact={exact}/{total}; {}",
            if rest_ok { "rest typo-corrected or listed" } else { "rest incomplete" }
        ),
    }
}

fn criterion_3() -> Outcome {
    let mut found = Vec::new();
    for mode in ["set", "multiset"] {
        let (code, out) = qgcospec(&[
            "scan", "--min-edges", "1", "--max-edges", "7", "--mode", mode, "--format", "json",
            "--expect-none",
        ]);
        let v: Value = serde_json::from_str(&out).expect("scan json");
        let pairs = v["pairs"].as_array().map_or(usize::MAX, |p| p.len());
        found.push((mode, pairs, code));
    }
    let pass = found.iter().all(|&(_, n, code)| n == 0 && code == 0);
    let detail = found
        .iter()
        .map(|(m, n, c)| format!("{m}: {n} pairs, exit {c}"))
        .collect::<Vec<_>>()
        .join("; ");
    Outcome {
        pass,
        fingerprint: detail.clone(),
        detail,
    }
}

/// Distinct zeros of det Φ_D in (0, lambda_max).
fn matrix_zeros(graph: &Graph, lambda_max: f64) -> Vec<f64> {
    characteristic_zeros(graph, 1.0, lambda_max, ZERO_SCAN_STEP)
        .unwrap()
        .iter()
        .map(|z| z.lambda)
        .collect()
}

fn criterion_4() -> Outcome {
    let (_, out) = qgcospec(&["scan", "--min-edges", "8", "--max-edges", "8", "--format", "json"]);
    let v: Value = serde_json::from_str(&out).expect("scan json");
    let pairs = v["pairs"].as_array().cloned().unwrap_or_default();
    let mut lines = Vec::new();
    let mut all_confirmed = !pairs.is_empty();
    for p in &pairs {
        let a = parse_graph6(p["a"].as_str().unwrap()).unwrap();
        let b = parse_graph6(p["b"].as_str().unwrap()).unwrap();
        let distinct = canonical_code(&a) != canonical_code(&b);
        let same_class = a.class_key() == b.class_key();
        let same_sf = signature(&a).unwrap().sf == signature(&b).unwrap().sf;
        let (za, zb) = (matrix_zeros(&a, 200.0), matrix_zeros(&b, 200.0));
        let same_zeros = za.len() == zb.len()
            && za.iter().zip(&zb).all(|(x, y)| (x - y).abs() < MATCH_TOL);
        all_confirmed &= distinct && same_class && same_sf && same_zeros;
        lines.push(format!(
            "{} {} delta={} shared {} ({} matrix zeros below 200 agree: {same_zeros})",
            p["a"].as_str().unwrap(),
            p["b"].as_str().unwrap(),
            p["delta"],
            p["signature"].as_str().unwrap(),
            za.len()
        ));
    }
    Outcome {
        pass: all_confirmed,
        detail: format!("{} pairs at g=8: {}", pairs.len(), lines.join("; ")),
        fingerprint: format!("pairs={}", pairs.len()),
    }
}

fn criterion_5() -> Outcome {
    let exec = Exec::parallel(None);
    let expect = [1usize, 1, 3, 5, 12, 30, 79, 227];
    let mut ok = true;
    let mut totals = Vec::new();
    for g in 1..=8 {
        let run = enumerate_connected(g, &exec).unwrap();
        let mut ours: BTreeMap<ClassKey, BTreeSet<String>> = BTreeMap::new();
        for e in &run.graphs {
            ours.entry(e.class).or_default().insert(e.code.to_string());
        }
        ok &= ours == support::brute_force_classes(g);
        ok &= run.len() == expect[g - 1];
        totals.push(run.len().to_string());
    }
    let report = verify_paper_tables(&exec).unwrap();
    let mut notes = Vec::new();
    for t in &report.totals {
        if let Some(s) = t.stated.filter(|&s| s != t.enumerated) {
            notes.push(format!("g={}: {} graphs vs {} in the printed text", t.g, t.enumerated, s));
        }
    }
    for c in &report.classes {
        if let Some(s) = c.stated.filter(|&s| s != c.enumerated) {
            notes.push(format!("({},{}): {} vs {}", c.g, c.delta, c.enumerated, s));
        }
    }
    let unlisted: Vec<String> = report
        .unlisted
        .iter()
        .filter(|u| u.class_printed)
        .map(|u| format!("{}{}", u.class, u.graph6))
        .collect();
    Outcome {
        pass: ok,
        detail: format!(
            "counts g=1..8: {} (brute-force oracle agrees class by class: {ok}); {}; graphs without a printed polynomial: {}",
            totals.join(","),
            notes.join(", "),
            unlisted.join(" ")
        ),
        fingerprint: format!("oracle={ok}"),
    }
}

fn representative_graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("P2", named::path(2)),
        ("P3", named::path(3)),
        ("K1,3", named::star(3)),
        ("C4", named::cycle(4)),
        ("paw", named::paw()),
        ("spider(2,2,1)", named::spider(&[2, 2, 1])),
        ("P5", named::path(5)),
        ("K4", named::complete(4)),
        ("diamond", Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]).unwrap()),
        ("bull", Graph::new(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 4)]).unwrap()),
    ]
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();
    let mut disagreements = 0;
    let mut compared = 0;
    for (name, graph) in representative_graphs() {
        assert!(graph.g() <= 6);
        let rep = eigenvalues(&graph, 1.0, 40 * graph.g()).unwrap();
        assert!(rep.eigenvalues.last().unwrap().lambda > 200.0);
        let from_psi: Vec<_> = rep
            .eigenvalues
            .iter()
            .filter(|e| e.lambda > 0.0 && e.lambda < 200.0)
            .collect();
        let zeros = characteristic_zeros(&graph, 1.0, 200.0, ZERO_SCAN_STEP).unwrap();
        let located = from_psi.len() == zeros.len()
            && from_psi
                .iter()
                .zip(&zeros)
                .all(|(e, z)| (e.lambda - z.lambda).abs() < MATCH_TOL);
        if !located {
            bad.push(format!("{name} ({} vs {})", from_psi.len(), zeros.len()));
        }
        compared += zeros.len();
        disagreements += from_psi
            .iter()
            .zip(&zeros)
            .filter(|(e, z)| e.multiplicity != z.nullity)
            .count();
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "10 graphs, {compared} zeros in (0,200) matched within {MATCH_TOL:e}; mismatches: {}; \
             zero order vs kernel dimension disagreements: {disagreements}",
            if bad.is_empty() { "none".into() } else { bad.join(", ") }
        ),
        fingerprint: bad.join(","),
    }
}

fn criterion_7() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (name, graph) in [("P2", named::path(2)), ("P3", named::path(3)), ("paw", named::paw())] {
        let rep = eigenvalues(&graph, 1.0, 400).unwrap();
        let ratio = weyl_ratio(&rep).unwrap() / weyl_limit(graph.g(), 1.0);
        pass &= (ratio - 1.0).abs() <= WEYL_TOL;
        parts.push(format!("{name} {:+.3}%", 100.0 * (ratio - 1.0)));
    }
    Outcome {
        pass,
        detail: format!("lambda_N/N^2 vs pi^2/(g^2 l^2) at N=400: {}", parts.join(", ")),
        fingerprint: parts.join(","),
    }
}

fn criterion_8() -> Outcome {
    let exec = Exec::parallel(None);
    let mut failures: Vec<String> = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            failures.push(name.to_string());
        }
    };
    let graphs: Vec<Graph> = (1..=7)
        .flat_map(|g| enumerate_connected(g, &exec).unwrap().graphs)
        .map(|e| e.graph)
        .collect();
    let psis: Vec<IntPolynomial> = graphs.iter().map(|g| charpoly_psi(g).unwrap()).collect();

    // polynomial algebra on the psi of every graph with at most 5 edges
    let small: Vec<&IntPolynomial> = psis.iter().take(22).collect();
    let mut algebra = true;
    for a in &small {
        for b in &small {
            let prod = *a * *b;
            algebra &= prod.div_exact(b).as_ref() == Some(*a);
            let g = prod.gcd(&(*a * *a));
            algebra &= prod.pseudo_rem(&g).is_ok_and(|r| r.is_zero());
            let sf = prod.squarefree_part().unwrap();
            algebra &= prod.pseudo_rem(&sf).is_ok_and(|r| r.is_zero());
            algebra &= sf.gcd(&sf.derivative()).degree() == Some(0);
        }
    }
    check("polynomial algebra", algebra);

    let (mut degree, mut real) = (true, true);
    for (graph, psi) in graphs.iter().zip(&psis) {
        let interior = graph.interior_vertices();
        let n = interior.len();
        let prod: BigInt = interior.iter().map(|&v| BigInt::from(graph.degree(v))).product();
        let lead = if n % 2 == 0 { prod } else { -prod };
        degree &= psi.degree() == Some(graph.g() - graph.class_key().delta);
        degree &= psi.leading() == Some(&lead);
        let sf = psi.squarefree_part().unwrap();
        real &= real_root_count(&sf).unwrap() == sf.degree().unwrap();
        real &= isolate_real_roots(psi, &rat(-1), &rat(1)).unwrap().total_multiplicity() == n;
    }
    check("psi degree and leading coefficient", degree);
    check("roots real in [-1,1]", real);

    let mut cheb = true;
    for g in 3..=8 {
        let z = IntPolynomial::monomial(1, 1);
        let two_z = IntPolynomial::monomial(2, 1);
        let (mut t0, mut t1) = (IntPolynomial::constant(1), z);
        for _ in 0..g {
            let next = &(&two_z * &t1) - &t0;
            t0 = t1;
            t1 = next;
        }
        let mut expect = (&t0 - &IntPolynomial::constant(1)).scale(&BigInt::from(2));
        if g % 2 == 1 {
            expect = -expect;
        }
        cheb &= charpoly_psi(&named::cycle(g)).unwrap() == expect;
    }
    check("Chebyshev identity C3..C8", cheb);

    let mut round = true;
    for g in 1..=8 {
        for e in enumerate_connected(g, &exec).unwrap().graphs {
            let back = parse_graph6(&to_graph6(&e.graph)).unwrap();
            round &= canonical_code(&back) == e.code;
        }
    }
    check("graph6 round trips", round);

    let mut canon = true;
    for p in 2..=7 {
        let perms = support::permutations(p);
        let mut code_to_brute: BTreeMap<String, u32> = BTreeMap::new();
        let mut brute_to_code: BTreeMap<u32, String> = BTreeMap::new();
        for g in p - 1..=p * (p - 1) / 2 {
            let mut reps: BTreeMap<String, Graph> = BTreeMap::new();
            support::for_each_labeled_connected(p, g, p == 7, |edges| {
                let graph = Graph::new(p, edges).unwrap();
                reps.entry(canonical_code(&graph).to_string()).or_insert(graph);
            });
            for (code, graph) in reps {
                let brute = support::brute_canonical(&graph, &perms);
                canon &= *code_to_brute.entry(code.clone()).or_insert(brute) == brute;
                canon &= *brute_to_code.entry(brute).or_insert(code.clone()) == code;
            }
        }
        canon &= code_to_brute.len() == [0, 0, 1, 2, 6, 21, 112, 853][p];
    }
    check("canonical form vs brute force, p<=7", canon);

    Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            "algebra round trips, psi degree/leading coefficient (g<=7), Sturm realness, \
             Chebyshev C3..C8, graph6 round trips (g<=8), canonical form vs all p! relabelings (p<=7)"
                .into()
        } else {
            format!("failed: {}", failures.join(", "))
        },
        fingerprint: failures.join(","),
    }
}


fn main() {
    let criteria: [(usize, &str, Duration, fn() -> Outcome); 8] = [
        (1, "printed tables, g<=5", Duration::from_secs(1), criterion_1),
        (2, "printed tables, full", Duration::from_secs(30), criterion_2),
        (3, "no cospectral pairs for g<=7", Duration::from_secs(60), criterion_3),
        (4, "cospectral pair at g=8", Duration::from_secs(600), criterion_4),
        (5, "enumeration oracle", Duration::from_secs(300), criterion_5),
        (6, "characteristic matrix cross-check", Duration::from_secs(60), criterion_6),
        (7, "Weyl asymptotics", Duration::from_secs(10), criterion_7),
        (8, "exact property suites", Duration::from_secs(600), criterion_8),
    ];
    let mut unexpected = Vec::new();
    let mut passed = 0;
    for (n, name, budget, run) in criteria {
        let start = Instant::now();
        let mut outcome = run();
        let took = start.elapsed();
        if took > budget {
            outcome.pass = false;
            outcome.fingerprint = "over budget".into();
        }
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {n} [{status}] {name}: {} ({:.2}s, budget {}s)",
            outcome.detail,
            took.as_secs_f64(),
            budget.as_secs()
        );
        if outcome.pass {
            passed += 1;
        } else {
            let known = KNOWN.iter().any(|&(k, f)| k == n && f == outcome.fingerprint);
            if !known {
                unexpected.push(n);
            }
        }
    }
    println!(
        "acceptance: {passed}/8 pass; {} fail as documented; unexpected failures: {:?}",
        8 - passed - unexpected.len(),
        unexpected
    );
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
}
