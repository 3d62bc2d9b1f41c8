//! Acceptance criteria. Each test writes one `criterion N: PASS|FAIL ...`
//! line to stderr (bypassing the test harness capture) and then asserts.

mod common;

use std::io::Write;

use common::rel_close;
use isdlab::bounds::{check_bound, verify_all, TheoremId};
use isdlab::ensemble::*;
use isdlab::graph::families::*;
use isdlab::indices::{edge_sum, isd};
use isdlab::{Graph, IndexSpec};
use TheoremId::*;

const SEED: u64 = 20_240_501;
/// Statistical agreement band, in standard errors.
const STDERR_BAND: f64 = 3.0;
/// Dense regime threshold on `⟨d⟩`.
const DENSE: f64 = 10.0;
const APPROX_TOLERANCE: f64 = 0.05;
const SPREAD_TOLERANCE: f64 = 0.03;
const EQ6_GAP_TOLERANCE: f64 = 0.02;
const EQUALITY_TOLERANCE: f64 = 1e-9;
const ORACLE_TOLERANCE: f64 = 1e-12;

fn report(criterion: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr().lock();
    writeln!(err, "criterion {criterion}: {verdict} {detail}").unwrap();
}

fn isd_rows(n: usize, p: Vec<f64>, a: Vec<f64>, replicas: usize) -> Vec<SweepRow> {
    let cfg = EnsembleConfig::new(n, p, a, replicas, SEED).unwrap();
    ensemble_average(&cfg, &IndexSpec::isd(1.0).unwrap()).unwrap()
}

fn p_for_degrees(n: usize, degrees: &[f64]) -> Vec<f64> {
    degrees.iter().map(|d| d / (n - 1) as f64).collect()
}

/// Mean ISD_0 equals a quarter of n(n-1)p.
#[test]
fn criterion_1_zero_exponent_identity() {
    let n = 100;
    let rows = isd_rows(n, vec![0.1, 0.5, 0.9], vec![0.0], 10_000);
    let mut worst: f64 = 0.0;
    for r in &rows {
        let exact = (n * (n - 1)) as f64 * r.p / 4.0;
        worst = worst.max((r.mean_isd - exact).abs() / r.stderr_isd);
    }
    let pass = worst <= STDERR_BAND;
    report("1", pass, &format!("max |mean - n(n-1)p/4| = {worst:.3} stderr"));
    assert!(pass);
}

/// Relative error of (n/4)[(n-1)p]^{1-a} against the measured mean.
#[test]
fn criterion_2_dense_approximation() {
    let n = 200;
    let degrees = [10.0, 15.0, 20.0, 30.0, 40.0, 60.0, 80.0, 100.0, 130.0, 160.0, 190.0];
    let exponents = vec![-1.0, 0.0, 0.5, 1.0, 2.0];
    let rows = isd_rows(n, p_for_degrees(n, &degrees), exponents.clone(), 1000);
    let mut pass = true;
    let mut detail = Vec::new();
    for &a in &exponents {
        let (mut worst, mut at) = (0.0f64, 0.0);
        for r in rows.iter().filter(|r| r.a == a && r.expected_degree() >= DENSE - 1e-9) {
            let err = (r.mean_isd - r.approx_isd).abs() / r.approx_isd;
            if err > worst {
                (worst, at) = (err, r.mean_deg);
            }
        }
        pass &= worst < APPROX_TOLERANCE;
        detail.push(format!("a={a}: {:.2}% at <d>={at:.1}", 100.0 * worst));
    }
    report("2", pass, &format!("max relative error {}", detail.join("; ")));
    assert!(pass);
}

/// Curves of <ISD_a>/n collapse across n and follow (1/4)<d>^{1-a}.
#[test]
fn criterion_3_scaling_collapse() {
    let degrees = [10.0, 15.0, 20.0, 30.0, 40.0, 50.0, 60.0];
    let exponents = vec![-1.0, 0.0, 1.0, 2.0];
    let mut rows = Vec::new();
    for n in [125, 250, 500] {
        rows.extend(isd_rows(n, p_for_degrees(n, &degrees), exponents.clone(), 500));
    }
    let collapse = scaling_collapse(&rows).unwrap();
    let mut pass = true;
    let mut detail = Vec::new();
    for e in &collapse.entries {
        pass &= e.max_spread < SPREAD_TOLERANCE && e.max_approx_deviation < APPROX_TOLERANCE;
        detail.push(format!(
            "a={}: spread {:.2}%, deviation {:.2}%",
            e.a,
            100.0 * e.max_spread,
            100.0 * e.max_approx_deviation
        ));
    }
    report("3", pass, &detail.join("; "));
    assert!(pass);
}

fn regime_rows() -> Vec<SweepRow> {
    let n = 100;
    let p: Vec<f64> = (2..=19).map(|k| k as f64 * 0.05).collect();
    isd_rows(n, p, vec![0.8, 1.0, 1.2], 1000)
        .into_iter()
        .filter(|r| r.expected_degree() >= DENSE - 1e-9)
        .collect()
}

fn means(rows: &[SweepRow], a: f64) -> Vec<(f64, f64)> {
    rows.iter()
        .filter(|r| r.a == a)
        .map(|r| (r.mean_isd, r.stderr_isd))
        .collect()
}

/// Growth below the critical exponent, decay above it.
#[test]
fn criterion_4_monotone_regimes() {
    let rows = regime_rows();
    let below = means(&rows, 0.8);
    let above = means(&rows, 1.2);
    let increasing = below.windows(2).all(|w| w[1].0 > w[0].0);
    let decreasing = above.windows(2).all(|w| w[1].0 < w[0].0);
    let pass = increasing && decreasing && below.len() >= 10;
    report(
        "4 (monotone)",
        pass,
        &format!(
            "a=0.8 increasing: {increasing}, a=1.2 decreasing: {decreasing}, {} p values",
            below.len()
        ),
    );
    assert!(pass);
}

/// At the critical exponent the mean neither grows nor decays beyond noise.
#[test]
fn criterion_4_flat_at_critical_exponent() {
    let rows = regime_rows();
    let at = means(&rows, 1.0);
    let mut worst: f64 = 0.0;
    for (i, x) in at.iter().enumerate() {
        for y in &at[i + 1..] {
            let combined = (x.1 * x.1 + y.1 * y.1).sqrt();
            worst = worst.max((x.0 - y.0).abs() / combined);
        }
    }
    let (first, last) = (at[0].0, at[at.len() - 1].0);
    let pass = worst <= STDERR_BAND;
    report(
        "4 (flat)",
        pass,
        &format!(
            "a=1 means {first:.3} .. {last:.3}, max pairwise difference {worst:.1} stderr"
        ),
    );
    assert!(pass);
}

/// No applicable bound is violated on random graphs.
#[test]
fn criterion_5_soundness() {
    let exponents = [-2.0, -1.5, -1.0, -0.5, 0.5, 1.0, 1.5, 2.0];
    let graphs = common::random_graphs(SEED, 1000, 4, 40);
    let (mut checked, mut violations) = (0usize, 0usize);
    for g in &graphs {
        for r in verify_all(g, &exponents).unwrap() {
            if r.applicable {
                checked += 1;
                violations += usize::from(r.violated());
            }
        }
    }
    let pass = violations == 0;
    report("5", pass, &format!("{violations} violations in {checked} applicable reports"));
    assert!(pass);
}

fn attains(value: f64, bound: f64) -> bool {
    (value - bound).abs() <= EQUALITY_TOLERANCE * value.abs().max(1.0)
}

fn side_attained(r: &isdlab::BoundReport, lower: bool) -> bool {
    let side = if lower { r.lower } else { r.upper };
    match (r.value, side) {
        (Some(v), Some(s)) => attains(v, s.bound),
        _ => false,
    }
}

/// Extremal graphs attain the bounds their theorems name.
#[test]
fn criterion_6_equality_characterization() {
    let mut failures = Vec::new();
    let regular: Vec<(String, Graph)> = (3..=10)
        .map(|n| (format!("C{n}"), cycle(n)))
        .chain((3..=6).map(|n| (format!("K{n}"), complete(n))))
        .collect();
    let exponents = [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0];
    let mut checks = 0usize;
    for (name, g) in &regular {
        for &a in &exponents {
            for theorem in [
                P1EdgeBound,
                T2RandicRelation,
                T3NegatedExponent,
                T5GaLower,
                T6AgUpper,
                T8M1SumDeltaRefined,
                T9M1SumDeltaUpper,
                T10M1Product,
            ] {
                let r = check_bound(theorem, g, a).unwrap();
                if !r.applicable {
                    continue;
                }
                for lower in [true, false] {
                    let present = if lower { r.lower.is_some() } else { r.upper.is_some() };
                    if !present {
                        continue;
                    }
                    checks += 1;
                    if !side_attained(&r, lower) {
                        failures.push(format!("{theorem} on {name} at a={a}"));
                    }
                }
            }
        }
    }
    let two_edges = path(2).disjoint_union(&path(2));
    for a in [0.1, 0.5, 1.0, 1.5, 2.0] {
        checks += 1;
        if !side_attained(&check_bound(T7M1Sum, &two_edges, a).unwrap(), true) {
            failures.push(format!("T7 on 2P2 at a={a}"));
        }
    }
    for (name, g) in [("K1,3", star(3)), ("K2,3", complete_bipartite(2, 3))] {
        for &a in &exponents {
            checks += 1;
            if !side_attained(&check_bound(T10M1Product, &g, a).unwrap(), true) {
                failures.push(format!("T10 lower on {name} at a={a}"));
            }
        }
    }
    let pass = failures.is_empty();
    report(
        "6",
        pass,
        &format!("{checks} equality checks, misses: [{}]", failures.join(", ")),
    );
    assert!(pass);
}

/// Exhaustive converse on all connected graphs with at most seven vertices.
#[test]
fn criterion_7_small_graph_converse() {
    let exponents = [-1.0, 0.5, 2.0];
    let (mut graphs, mut mismatches) = (0usize, Vec::new());
    for n in 2..=7 {
        for g in common::connected_graphs(n) {
            graphs += 1;
            let regular = g.degrees().iter().all(|&d| d == g.degree(0));
            let biregular = common::neighbors_share_degree(&g);
            for &a in &exponents {
                let t10 = check_bound(T10M1Product, &g, a).unwrap();
                if side_attained(&t10, true) != biregular {
                    mismatches.push(format!("T10 a={a} {:?}", g.edges()));
                }
                let t4 = check_bound(T4ChiRelation, &g, a).unwrap();
                let lower_is_weak = t4.lower.is_some_and(|s| !s.strict);
                if side_attained(&t4, lower_is_weak) != regular {
                    mismatches.push(format!("T4 a={a} {:?}", g.edges()));
                }
            }
        }
    }
    let pass = mismatches.is_empty();
    let shown: Vec<&String> = mismatches.iter().take(5).collect();
    report(
        "7",
        pass,
        &format!("{graphs} connected graphs, {} mismatches {shown:?}", mismatches.len()),
    );
    assert!(pass);
}

fn stepped(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let count = ((stop - start) / step).round() as usize + 1;
    (0..count)
        .map(|i| ((start + step * i as f64) * 1e9).round() / 1e9)
        .collect()
}

/// Ensemble-averaged inequalities hold within noise; the product bound
/// tightens in the dense limit.
#[test]
fn criterion_8_averaged_inequalities() {
    let n = 100;
    let p = vec![0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9, 0.95];
    let product_grid: Vec<f64> = stepped(-2.0, 2.0, 0.2).into_iter().filter(|&a| a != 0.0).collect();
    let cases = [
        (AveragedInequality::Eq1av, stepped(1.1, 2.0, 0.1)),
        (AveragedInequality::Eq2av, stepped(0.1, 0.9, 0.1)),
        (AveragedInequality::Eq3av, stepped(-2.0, -0.1, 0.1)),
        (AveragedInequality::Eq4av, stepped(0.1, 2.0, 0.1)),
        (AveragedInequality::Eq5av, stepped(-2.0, -0.1, 0.1)),
        (AveragedInequality::Eq6av, product_grid),
    ];
    let mut pass = true;
    let mut detail = Vec::new();
    for (which, a_grid) in cases {
        let cfg = EnsembleConfig::new(n, p.clone(), a_grid, 1000, SEED).unwrap();
        let rows = avg_inequality_check(&cfg, which).unwrap();
        let outside = rows.iter().filter(|r| !r.within_band()).count();
        pass &= outside == 0;
        let mut line = format!("{which}: {outside}/{} outside band", rows.len());
        if which == AveragedInequality::Eq6av {
            let gap = rows
                .iter()
                .filter(|r| r.p == 0.9)
                .map(|r| r.relative_gap())
                .fold(0.0f64, f64::max);
            pass &= gap < EQ6_GAP_TOLERANCE;
            line.push_str(&format!(", max gap at p=0.9 {:.3}%", 100.0 * gap));
        }
        detail.push(line);
    }
    report("8", pass, &detail.join("; "));
    assert!(pass);
}

/// Library sums against adjacency-matrix oracles.
#[test]
fn criterion_9_oracle_equivalence() {
    let graphs = common::random_graphs(SEED ^ 9, 500, 4, 40);
    let f = |x: usize, y: usize| (x as f64).ln_1p() * (y as f64).sqrt() + 1.0 / (x + y) as f64;
    let mut worst: f64 = 0.0;
    let mut pass = true;
    for g in &graphs {
        let fast = edge_sum(g, f).unwrap();
        let naive = common::naive_edge_sum(g, f);
        worst = worst.max((fast - naive).abs() / naive.abs());
        pass &= rel_close(fast, naive, ORACLE_TOLERANCE);
        let isi = common::isi(g);
        let via_isd = isd(g, -1.0);
        worst = worst.max((via_isd - isi).abs() / isi.abs());
        pass &= rel_close(via_isd, isi, ORACLE_TOLERANCE);
    }
    report("9", pass, &format!("max relative difference {worst:.2e} over {} graphs", graphs.len()));
    assert!(pass);
}
