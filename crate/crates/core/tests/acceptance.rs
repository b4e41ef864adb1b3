//! Acceptance suite. Each criterion prints one `criterion N: PASS|FAIL` line;
//! the process exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use ais_core::enumeration::{
    distinct_orbits, generate_normal_forms, generate_primes, reduce_by_inversion,
};
use ais_core::network::{
    degree_points, fit_pure_power_law, fit_truncated_power_law, louvain_communities, verify_clique,
    AisGraph,
};
use ais_core::symmetry::{
    constellation, invert, multiply_m5, orbit, q_rotate, retrograde_normal, star, ColumnOp, RowOp,
};
use ais_core::{vl_distance_sq, Row};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

type Outcome = Result<String, String>;
type RowOp1 = fn(&Row) -> ais_core::Result<Row>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c1_corpus_counts() -> Outcome {
    let normal = generate_normal_forms();
    let reduced = reduce_by_inversion(&normal);
    let primes = generate_primes();
    let oracle = brute_force_normal_forms();
    let detail = format!(
        "normal forms {}, inversion-reduced {}, primes {}, brute force {} (identical: {})",
        normal.len(),
        reduced.len(),
        primes.len(),
        oracle.len(),
        oracle == normal
    );
    check(
        normal.len() == 3856 && reduced.len() == 1928 && primes.len() == 918 && oracle == normal,
        detail,
    )
}

fn c2_catalog_spot_checks() -> Outcome {
    let catalog = &catalog_run().catalog;
    let expected = [
        (
            "12-0P",
            "[0 1 3 7 2 5 11 10 8 4 9 6]",
            "[1 2 4 7 3 6 11 10 8 5 9 6]",
        ),
        (
            "12-25S",
            "[0 1 3 10 2 5 11 8 4 9 7 6]",
            "[1 2 7 4 3 6 9 8 5 10 11 6]",
        ),
        (
            "12-657",
            "[0 3 4 11 5 2 10 8 7 9 1 6]",
            "[3 1 7 6 9 8 10 11 2 4 5 6]",
        ),
        (
            "12-917L",
            "[0 4 3 1 9 2 8 5 7 10 11 6]",
            "[4 11 10 8 5 6 9 2 3 1 7 6]",
        ),
    ];
    let mut mismatches = Vec::new();
    for (label, r, iv) in expected {
        match catalog.lookup(label) {
            Ok(e) if e.label == label && e.row == row(r) && e.intervals.to_string() == iv => {}
            Ok(e) => mismatches.push(format!("{label} -> {} {} {}", e.label, e.row, e.intervals)),
            Err(err) => mismatches.push(format!("{label}: {err}")),
        }
    }
    let last = catalog
        .entries()
        .last()
        .map(|e| e.label.clone())
        .unwrap_or_default();
    if last != "12-917L" {
        mismatches.push(format!("final entry is {last}"));
    }
    check(
        mismatches.is_empty(),
        if mismatches.is_empty() {
            "12-0P, 12-25S, 12-657, 12-917L (final) exact".into()
        } else {
            mismatches.join("; ")
        },
    )
}

fn c3_flag_counts() -> Outcome {
    let f = catalog_run().catalog.flag_counts();
    check(
        f.s == 57 && f.p == 34 && f.l == 121,
        format!(
            "S {} (57), P {} (34), L rows {} (121); hexachord instances over L rows {}",
            f.s, f.p, f.l, f.link_instances
        ),
    )
}

fn c4_star_and_constellation() -> Outcome {
    let p = row("[0 1 3 7 2 5 11 10 8 4 9 6]");
    let s = star(&p).map_err(|e| e.to_string())?;
    let star_expected = [
        ("P", "[0 1 3 7 2 5 11 10 8 4 9 6]"),
        ("I", "[0 11 9 5 10 7 1 2 4 8 3 6]"),
        ("R", "[0 3 10 2 4 5 11 8 1 9 7 6]"),
        ("Q", "[0 11 9 5 10 7 1 2 4 8 3 6]"),
        ("M", "[0 5 3 11 10 1 7 2 4 8 9 6]"),
    ];
    let mut bad = Vec::new();
    for (name, r) in star_expected {
        let got = s.cells().iter().find(|(n, _)| *n == name).map(|(_, r)| *r);
        if got != Some(row(r)) {
            bad.push(format!("star {name}"));
        }
    }
    let table = [
        [
            "[0 1 3 7 2 5 11 10 8 4 9 6]",
            "[0 11 9 5 10 7 1 2 4 8 3 6]",
            "[0 7 9 1 2 11 5 10 8 4 3 6]",
            "[0 5 3 11 10 1 7 2 4 8 9 6]",
        ],
        [
            "[0 3 10 2 4 5 11 8 1 9 7 6]",
            "[0 9 2 10 8 7 1 4 11 3 5 6]",
            "[0 9 10 2 4 11 5 8 7 3 1 6]",
            "[0 3 2 10 8 1 7 4 5 9 11 6]",
        ],
        [
            "[0 9 2 10 8 7 1 4 11 3 5 6]",
            "[0 3 10 2 4 5 11 8 1 9 7 6]",
            "[0 3 2 10 8 1 7 4 5 9 11 6]",
            "[0 9 10 2 4 11 5 8 7 3 1 6]",
        ],
        [
            "[0 11 9 5 10 7 1 2 4 8 3 6]",
            "[0 1 3 7 2 5 11 10 8 4 9 6]",
            "[0 5 3 11 10 1 7 2 4 8 9 6]",
            "[0 7 9 1 2 11 5 10 8 4 3 6]",
        ],
    ];
    let c = constellation(&p).map_err(|e| e.to_string())?;
    for (ri, row_op) in RowOp::ALL.into_iter().enumerate() {
        for (ci, column_op) in ColumnOp::ALL.into_iter().enumerate() {
            if c.cell(row_op, column_op) != row(table[ri][ci]) {
                bad.push(format!("{}.{}", row_op.name(), column_op.name()));
            }
        }
    }
    check(
        bad.is_empty(),
        if bad.is_empty() {
            "5 star cells and 16 constellation cells exact".into()
        } else {
            format!("mismatched cells: {}", bad.join(", "))
        },
    )
}

fn c5_neighbourhood_distances() -> Outcome {
    let catalog = &catalog_run().catalog;
    let idx: Vec<usize> = NEIGHBOURHOOD
        .iter()
        .map(|l| catalog.index_of(l))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let mut wrong = Vec::new();
    for a in 0..6 {
        for b in a + 1..6 {
            let d = vl_distance_sq(
                &catalog.entries()[idx[a]].row,
                &catalog.entries()[idx[b]].row,
            )
            .value();
            if d != NEIGHBOURHOOD_D2[a][b] {
                wrong.push(format!("{}-{} = {d}", NEIGHBOURHOOD[a], NEIGHBOURHOOD[b]));
            }
        }
    }
    let clique = verify_clique(&default_network().graph, &idx);
    check(
        wrong.is_empty() && clique,
        format!(
            "15 pairs {}; clique at 20: {clique}",
            if wrong.is_empty() {
                "exact".to_string()
            } else {
                wrong.join(", ")
            }
        ),
    )
}

fn c6_network_structure() -> Outcome {
    let catalog = &catalog_run().catalog;
    let net = default_network();
    let giant = net.components.first().map_or(0, Vec::len);
    let hermit_labels: BTreeSet<&str> = net
        .hermits
        .iter()
        .map(|&i| catalog.entries()[i].label.as_str())
        .collect();
    let hermits_match = hermit_labels == HERMITS.iter().copied().collect();
    let pairs: Vec<(&str, &str)> = net
        .close_coupled
        .iter()
        .map(|&(a, b)| {
            (
                catalog.entries()[a].label.as_str(),
                catalog.entries()[b].label.as_str(),
            )
        })
        .collect();
    let pairs_match = pairs == CLOSE_COUPLED;
    let max = net.matrix.max().value();
    check(
        giant == 648 && net.hermits.len() == 111 && hermits_match && pairs.len() == 42 && pairs_match && max == 306,
        format!(
            "giant {giant}, isolated {} (labels match: {hermits_match}), d2=2 pairs {} (labels match: {pairs_match}), max d2 {max}",
            net.hermits.len(),
            pairs.len()
        ),
    )
}

fn c7_average_degree() -> Outcome {
    let d = &default_network().degrees;
    let edges = default_network().graph.edge_count();
    check(
        (2.5..=3.5).contains(&d.average),
        format!(
            "average degree {:.4} = 2*{edges}/{} (band [2.5, 3.5])",
            d.average,
            d.degrees.len()
        ),
    )
}

fn c8_modularity() -> Outcome {
    let graph: &AisGraph = &default_network().graph;
    let mut scores = Vec::new();
    let mut deterministic = true;
    for seed in 0..10u64 {
        let a = louvain_communities(graph, seed).map_err(|e| e.to_string())?;
        let b = louvain_communities(graph, seed).map_err(|e| e.to_string())?;
        deterministic &= a == b;
        scores.push(a.modularity);
    }
    let min = scores.iter().copied().fold(f64::INFINITY, f64::min);
    let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    check(
        min >= 0.85 && deterministic,
        format!("modularity over seeds 0..10 in [{min:.4}, {max:.4}]; repeatable per seed: {deterministic}"),
    )
}

fn c9_parity() -> Outcome {
    let primes = catalog_run().catalog.rows();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut odd = 0usize;
    for _ in 0..100_000 {
        let a = &primes[rng.random_range(0..primes.len())];
        let b = &primes[rng.random_range(0..primes.len())];
        odd += usize::from(!vl_distance_sq(a, b).value().is_multiple_of(2));
    }
    let sample: Vec<&Row> = (0..50)
        .map(|_| &primes[rng.random_range(0..primes.len())])
        .collect();
    for (i, a) in sample.iter().enumerate() {
        for b in &sample[i + 1..] {
            odd += usize::from(!vl_distance_sq(a, b).value().is_multiple_of(2));
        }
    }
    check(
        odd == 0,
        format!("{odd} odd values in 100000 random pairs + 1225 pairs of 50 primes"),
    )
}

fn c10_invariance() -> Outcome {
    let primes = catalog_run().catalog.rows();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut i_bad, mut r_bad, mut m_changed) = (0usize, 0usize, 0usize);
    for _ in 0..10_000 {
        let a = &primes[rng.random_range(0..primes.len())];
        let b = &primes[rng.random_range(0..primes.len())];
        let d = vl_distance_sq(a, b);
        let under = |op: RowOp1| vl_distance_sq(&op(a).unwrap(), &op(b).unwrap());
        i_bad += usize::from(under(invert) != d);
        r_bad += usize::from(under(retrograde_normal) != d);
        m_changed += usize::from(under(multiply_m5) != d);
    }
    check(
        i_bad == 0 && r_bad == 0 && m_changed > 0,
        format!("10000 pairs: I changes {i_bad}, R changes {r_bad}, M changes {m_changed}"),
    )
}

fn c11_power_law() -> Outcome {
    let synthetic: Vec<(f64, f64)> = (1..=30)
        .map(|k| {
            let k = k as f64;
            (k, 0.4 * k.powf(-1.5) * (-0.2 * k).exp())
        })
        .collect();
    let fit = fit_truncated_power_law(&synthetic).map_err(|e| e.to_string())?;
    let recovered = (fit.alpha - 1.5).abs() < 1e-6 && (fit.lambda - 0.2).abs() < 1e-6;
    let points = degree_points(&default_network().degrees.histogram);
    let truncated = fit_truncated_power_law(&points).map_err(|e| e.to_string())?;
    let pure = fit_pure_power_law(&points).map_err(|e| e.to_string())?;
    check(
        recovered && truncated.r_squared >= pure.r_squared,
        format!(
            "synthetic alpha {:.8} lambda {:.8}; real data R2 truncated {:.4} (alpha {:.3}, lambda {:.3}) vs pure {:.4}",
            fit.alpha, fit.lambda, truncated.r_squared, truncated.alpha, truncated.lambda, pure.r_squared
        ),
    )
}

fn c12_symmetry_suite() -> Outcome {
    let normal = &catalog_run().corpus.normal_forms;
    let ops: [(&str, RowOp1); 4] = [
        ("I", invert),
        ("R", retrograde_normal),
        ("M", multiply_m5),
        ("Q", q_rotate),
    ];
    let mut failures = Vec::new();
    for r in normal {
        for (name, op) in ops {
            match op(r) {
                Ok(image) if image.is_ais_normal_form() => {
                    if op(&image).ok() != Some(*r) {
                        failures.push(format!("{name}^2 on {r}"));
                    }
                }
                _ => failures.push(format!("{name} leaves normal form on {r}")),
            }
        }
        if let Err(e) = orbit(r) {
            failures.push(e.to_string());
        }
    }
    let orbits = distinct_orbits(normal);
    let mut union = BTreeSet::new();
    let mut total = 0;
    for o in &orbits {
        total += o.len();
        union.extend(o.members().iter().copied());
    }
    let partition = total == normal.len() && union.len() == normal.len();
    check(
        failures.is_empty() && partition,
        format!(
            "{} rows: {} violations; {} orbits, sizes sum {total}, partition: {partition}",
            normal.len(),
            failures.len(),
            orbits.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(u8, fn() -> Outcome); 12] = [
        (1, c1_corpus_counts),
        (2, c2_catalog_spot_checks),
        (3, c3_flag_counts),
        (4, c4_star_and_constellation),
        (5, c5_neighbourhood_distances),
        (6, c6_network_structure),
        (7, c7_average_degree),
        (8, c8_modularity),
        (9, c9_parity),
        (10, c10_invariance),
        (11, c11_power_law),
        (12, c12_symmetry_suite),
    ];
    let mut failed = Vec::new();
    for (n, criterion) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(criterion))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("criterion {n:>2}: PASS  {detail}"),
            Err(detail) => {
                println!("criterion {n:>2}: FAIL  {detail}");
                failed.push(n);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 12 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
