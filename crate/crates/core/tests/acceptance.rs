//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::time::Instant;

use fflv_core::characters::{dim, qchar_verify, DimMethod};
use fflv_core::marked_poset::{abs_verify, fflv_marked_poset, n1_report, random_marked_poset};
use fflv_core::polytope::{ehrhart_counts, ehrhart_extrapolates, minkowski_verify, slice_verify};
use fflv_core::straightening::straightening_sweep;
use fflv_core::{inequalities, DominantWeight, Family, RootLabel as L, Verdict};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn weights(n: usize, max: u32) -> Vec<DominantWeight> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=max).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(DominantWeight::new).collect()
}

fn w(m: &[u32]) -> DominantWeight {
    DominantWeight::new(m.to_vec())
}

/// Rows as (sorted support, bound coefficients of `m_1..m_n`).
fn symbolic_rows(family: Family, n: usize) -> Vec<(Vec<L>, Vec<u64>)> {
    let base = inequalities(family, n, &DominantWeight::zero(n)).unwrap();
    let mut rows: Vec<(Vec<L>, Vec<u64>)> = base
        .rows()
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let coeffs = (1..=n)
                .map(|i| inequalities(family, n, &DominantWeight::fundamental(n, i)).unwrap().rows()[r].bound)
                .collect();
            let mut support = row.support.clone();
            support.sort();
            (support, coeffs)
        })
        .collect();
    rows.sort();
    rows
}

fn normalized(mut rows: Vec<(Vec<L>, Vec<u64>)>) -> Vec<(Vec<L>, Vec<u64>)> {
    rows.iter_mut().for_each(|r| r.0.sort());
    rows.sort();
    rows
}

fn criterion_1() -> Outcome {
    let (p, b) = (L::plain, L::bar);
    let even = normalized(vec![
        (vec![p(1, 1)], vec![1, 0]),
        (vec![b(2, 2)], vec![0, 1]),
        (vec![p(1, 1), b(1, 2), b(1, 1)], vec![1, 1]),
        (vec![p(1, 1), b(1, 2), b(2, 2)], vec![1, 1]),
    ]);
    let odd = normalized(vec![
        (vec![p(1, 1)], vec![1, 0]),
        (vec![p(2, 2)], vec![0, 1]),
        (vec![p(2, 2), b(2, 2)], vec![0, 1]),
        (vec![p(1, 1), p(1, 2), p(2, 2)], vec![1, 1]),
        (vec![p(1, 1), p(1, 2), b(1, 2), b(1, 1)], vec![1, 1]),
        (vec![p(1, 1), p(1, 2), b(1, 2), b(2, 2)], vec![1, 1]),
        (vec![p(1, 1), p(1, 2), p(2, 2), b(2, 2)], vec![1, 1]),
    ]);
    let got_even = symbolic_rows(Family::Even, 2);
    let got_odd = symbolic_rows(Family::Odd, 2);
    if got_even != even {
        return Err(format!("even n=2 rows differ: {got_even:?}"));
    }
    if got_odd != odd {
        return Err(format!("odd n=2 rows differ: {got_odd:?}"));
    }
    Ok("FFLV4 has 4 rows and FFLV5 has 7 rows, matching symbolically in m1, m2".into())
}

fn criterion_2() -> Outcome {
    let mut instances = 0;
    for n in 1..=3 {
        for lam in weights(n, 2) {
            let a = dim(Family::Odd, n, &lam, DimMethod::Polytope).unwrap();
            let b = dim(Family::Odd, n, &lam, DimMethod::Branching).unwrap();
            if a != b {
                return Err(format!("n={n} λ=({lam}): polytope {a} vs branching {b}"));
            }
            instances += 1;
        }
    }
    let spot = |m: &[u32]| dim(Family::Odd, 2, &w(m), DimMethod::Polytope).unwrap();
    let spots = [(spot(&[1, 0]), 5u32), (spot(&[0, 1]), 9), (spot(&[1, 1]), 35)];
    for (got, want) in spots {
        if got != BigUint::from(want) {
            return Err(format!("spot value {got} != {want}"));
        }
    }
    Ok(format!("{instances} weights agree; n=2 spots ω1→5, ω2→9, ω1+ω2→35"))
}

fn criterion_3() -> Outcome {
    let mut instances = 0;
    let mut failures = Vec::new();
    for n in 1..=3 {
        for lam in weights(n, 2) {
            instances += 1;
            if let Verdict::Fail { witness, .. } = qchar_verify(n, &lam).unwrap() {
                failures.push((n, lam, witness));
            }
        }
    }
    match failures.first() {
        None => Ok(format!("{instances} graded characters agree")),
        Some((n, lam, witness)) => Err(format!(
            "{} of {instances} instances differ; first n={n} λ=({lam}): {witness}",
            failures.len()
        )),
    }
}

fn criterion_4() -> Outcome {
    let mut pairs = 0;
    for family in [Family::Even, Family::Odd] {
        for (n, max) in [(1, 2), (2, 2), (3, 1)] {
            let ws = weights(n, max);
            for lam in &ws {
                for mu in &ws {
                    if let Verdict::Fail { reason, witness } = minkowski_verify(family, n, lam, mu).unwrap() {
                        return Err(format!("{family} n={n} λ=({lam}) μ=({mu}): {reason} {witness}"));
                    }
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} pairs satisfy P(λ)+P(μ) = P(λ+μ)"))
}

fn criterion_5() -> Outcome {
    let mut instances = 0;
    for n in 1..=2 {
        for lam in weights(n, 2) {
            if let Verdict::Fail { reason, witness } = slice_verify(n, &lam).unwrap() {
                return Err(format!("n={n} λ=({lam}): {reason} {witness}"));
            }
            instances += 1;
        }
    }
    Ok(format!("{instances} sections coincide"))
}

fn criterion_6() -> Outcome {
    let mut instances = 0;
    for family in [Family::Even, Family::Odd] {
        for n in 1..=3 {
            for lam in weights(n, 2) {
                let p = fflv_marked_poset(family, n, &lam).unwrap();
                if let Verdict::Fail { reason, witness } = abs_verify(&p).unwrap() {
                    return Err(format!("{family} n={n} λ=({lam}): {reason} {witness}"));
                }
                instances += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..100 {
        let p = random_marked_poset(&mut rng, 8, 3);
        if let Verdict::Fail { reason, witness } = abs_verify(&p).unwrap() {
            return Err(format!("random poset #{k} {}: {reason} {witness}", p.to_json()));
        }
    }
    Ok(format!("{instances} FFLV marked posets and 100 random marked posets are bijective"))
}

fn criterion_7() -> Outcome {
    let mut instances = 0;
    for n in 1..=3 {
        for case in straightening_sweep(n, 2).unwrap() {
            if let Verdict::Fail { reason, witness } = &case.verdict {
                return Err(format!("n={n} λ=({}) path {}: {reason} {witness}", case.lambda, case.path));
            }
            instances += 1;
        }
    }
    Ok(format!("{instances} violating exponents have leading monomial f^s"))
}

fn criterion_8() -> Outcome {
    let reports = n1_report(4, 3).unwrap();
    let passing: Vec<&str> = reports
        .iter()
        .filter(|r| r.passed && r.ks == [2, 3, 4])
        .map(|r| r.attachment.as_str())
        .collect();
    if passing.is_empty() {
        return Err(format!("no attachment matches the formula for k ≤ 4 ({} candidates)", reports.len()));
    }
    Ok(format!(
        "passing attachment(s) {} of {} candidates, k = 2..4, m_i ≤ 3",
        passing.join(", "),
        reports.len()
    ))
}

fn criterion_9() -> Outcome {
    let counts = ehrhart_counts(Family::Odd, 1, &w(&[1]), 10).unwrap();
    for (m, &c) in counts.iter().enumerate() {
        let m = m as u64;
        if c != (m + 1) * (m + 2) / 2 {
            return Err(format!("m={m}: count {c}"));
        }
    }
    for start in 0..counts.len() - 3 {
        if ehrhart_extrapolates(&counts[start..], 2) != Some(true) {
            return Err(format!("degree-2 extrapolation fails from t={start}"));
        }
    }
    Ok("(m+1)(m+2)/2 for m ≤ 10; degree-2 interpolation predicts every next count".into())
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut failed = Vec::new();
    for (k, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS criterion {k}: {msg} [{secs:.2}s]"),
            Err(msg) => {
                println!("FAIL criterion {k}: {msg} [{secs:.2}s]");
                failed.push(k);
            }
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
