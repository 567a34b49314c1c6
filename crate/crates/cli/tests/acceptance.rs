//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails.
//!
//! Run with `cargo test -p circulant-cli --test acceptance`.

use std::time::{Duration, Instant};

use circulant_cli::commands::{cmd_table, Status};
use circulant_core::bricks::{class_weight_sum, enumerate_filling_classes, filling_weight, verify_m2p};
use circulant_core::circulant::{
    det_coeff_er, det_coeff_oracle, expand_det, p_count, permanent_terms, sign_epsilon,
    vanishing_terms, PermanentMethod,
};
use circulant_core::exactmath::{prime_power, valuation, ExactInt, ExactRat};
use circulant_core::partitions::{partitions_of, Partition};
use circulant_core::theorem::{class_contributions, dominance_check, eq6_factors, lemma_check};
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const TABLE_D: [u64; 12] = [1, 2, 4, 10, 26, 68, 246, 810, 2704, 7492, 32066, 86500];
const TABLE_P: [u64; 12] = [1, 2, 4, 10, 26, 80, 246, 810, 2704, 9252, 32066, 112720];

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed <= limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:.1?}, limit {limit:?}"))
    }
}

fn table_reproduction() -> Check {
    let start = Instant::now();
    let outcome = cmd_table(12, 8);
    let elapsed = start.elapsed();
    if outcome.status != Status::Ok {
        return Err(format!("exit status {:?}: {:?}", outcome.status, outcome.diagnostics));
    }
    for (i, rec) in outcome.records.iter().enumerate() {
        let (d, p) = (TABLE_D[i].to_string(), TABLE_P[i].to_string());
        let equal = (TABLE_D[i] == TABLE_P[i]).to_string();
        if rec.get("d") != Some(&d) || rec.get("p") != Some(&p) || rec.get("equal") != Some(&equal) {
            return Err(format!("row {} = {:?}", i + 1, rec.fields()));
        }
    }
    if outcome.records.len() != 12 {
        return Err(format!("{} rows", outcome.records.len()));
    }
    within(elapsed, Duration::from_secs(15 * 60))?;
    Ok(format!("12 rows exact in {elapsed:.1?}"))
}

fn four_way_p() -> Check {
    let start = Instant::now();
    for n in 1..=10 {
        let values: Vec<ExactInt> = PermanentMethod::ALL
            .iter()
            .map(|&m| p_count(n, m).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        if values.iter().any(|v| *v != values[0]) {
            return Err(format!("n = {n}: {values:?}"));
        }
        if values[0] != ExactInt::from(TABLE_P[n - 1]) {
            return Err(format!("n = {n}: p = {}", values[0]));
        }
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("n = 1..10 in {:.1?}", start.elapsed()))
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut compared = 0;
    for n in 1..=8 {
        let table = expand_det(n).map_err(|e| e.to_string())?;
        let mut eps: Option<ExactInt> = None;
        for b in permanent_terms(n) {
            let er = det_coeff_er(&b);
            let oracle = table.get(&b);
            if er.abs() != oracle.abs() {
                return Err(format!("n = {n}, b = {b}: er {er} oracle {oracle}"));
            }
            if oracle.is_zero() {
                continue;
            }
            let sign = if er == oracle { ExactInt::from(1) } else { ExactInt::from(-1) };
            match &eps {
                None => eps = Some(sign),
                Some(e) if *e != sign => return Err(format!("n = {n}: sign flips at b = {b}")),
                _ => {}
            }
            compared += 1;
        }
        if eps != Some(ExactInt::from(sign_epsilon(n))) {
            return Err(format!("n = {n}: epsilon mismatch"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for n in [9usize, 10] {
        let terms = permanent_terms(n);
        let eps = ExactInt::from(sign_epsilon(n));
        for b in terms.choose_multiple(&mut rng, 50) {
            let oracle = det_coeff_oracle(b).map_err(|e| e.to_string())?;
            if det_coeff_er(b) != &eps * oracle {
                return Err(format!("n = {n}, b = {b}"));
            }
            compared += 1;
        }
    }
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!("{compared} coefficients, n = 1..8 exhaustive + 100 spot checks in {:.1?}", start.elapsed()))
}

fn er_identity() -> Check {
    let mut checks = 0;
    for q in 1..=7 {
        let report = verify_m2p(q, 5, 1000 + q as u64).map_err(|e| e.to_string())?;
        if let Some(c) = report.counterexample {
            return Err(format!("m{} at {:?}: {} vs {}", c.mu, c.point, c.direct, c.expanded));
        }
        checks += report.checks;
    }
    Ok(format!("{checks} evaluations"))
}

fn proof_certification() -> Check {
    let mut b_count = 0;
    let mut class_count = 0;
    for n in [2usize, 3, 4, 5, 7, 8, 9] {
        let (p, _) = prime_power(n as u64).expect("prime power");
        for b in permanent_terms(n) {
            let classes = class_contributions(&b).map_err(|e| e.to_string())?;
            let total = classes.iter().fold(ExactRat::zero(), |acc, (_, c)| acc + c);
            if total != ExactRat::from_integer(det_coeff_er(&b)) {
                return Err(format!("(a) n = {n}, b = {b}"));
            }
            for (class, _) in &classes {
                if class.lambda().k() == 1 {
                    continue;
                }
                let (first, second) = eq6_factors(class, &b, n).map_err(|e| e.to_string())?;
                if valuation(&first, p).map_err(|e| e.to_string())? < 0 || !first.is_integer() {
                    return Err(format!("(b) n = {n}, b = {b}, first = {first}"));
                }
                if valuation(&second, p).map_err(|e| e.to_string())? < 1 {
                    return Err(format!("(c) n = {n}, b = {b}, second = {second}"));
                }
                class_count += 1;
            }
            let report = dominance_check(&b).map_err(|e| e.to_string())?;
            if !report.passed {
                return Err(format!("(d) n = {n}, b = {b}"));
            }
            b_count += 1;
        }
    }
    Ok(format!("{b_count} exponent vectors, {class_count} non-base classes"))
}

fn cancellation_witness() -> Check {
    let six = vanishing_terms(6).len();
    let ten = vanishing_terms(10).len();
    if (six, ten) != (12, 1760) {
        return Err(format!("n = 6: {six}, n = 10: {ten}"));
    }
    Ok("n = 6: 12, n = 10: 1760".into())
}

fn valuation_lemma() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let p = *[2u64, 3, 5].choose(&mut rng).unwrap();
        let s = rng.gen_range(1..=5u32);
        let m = rng.gen_range(0..p.pow(s));
        let k = rng.gen_range(2..=5usize);
        // random composition of m into k parts
        let mut cuts: Vec<u64> = (0..k - 1).map(|_| rng.gen_range(0..=m)).collect();
        cuts.sort_unstable();
        let mut parts = Vec::with_capacity(k);
        let mut prev = 0;
        for c in cuts {
            parts.push(c - prev);
            prev = c;
        }
        parts.push(m - prev);
        let d = parts[0];
        let part_i = lemma_check(m, p, s, &[d, m - d]).map_err(|e| e.to_string())?;
        let part_ii = lemma_check(m, p, s, &parts).map_err(|e| e.to_string())?;
        if !(part_i && part_ii) {
            return Err(format!("m = {m}, p = {p}, s = {s}, parts = {parts:?}"));
        }
    }
    for m in 0..16u64 {
        for d in 0..=m {
            if !lemma_check(m, 2, 4, &[d, m - d]).map_err(|e| e.to_string())? {
                return Err(format!("exhaustive: m = {m}, d = {d}"));
            }
        }
    }
    Ok("1000 random + 136 exhaustive".into())
}

/// Weight sum over every distinct filling, enumerated brick by brick.
fn enumerate_fillings(rows: &[u32], counts: &mut [u32], weight: u64) -> u64 {
    let Some((&row, rest)) = rows.split_first() else {
        return if counts.iter().all(|&c| c == 0) { weight } else { 0 };
    };
    fn place(row_left: u32, last: u32, rest: &[u32], counts: &mut [u32], weight: u64) -> u64 {
        if row_left == 0 {
            return enumerate_fillings(rest, counts, weight * last as u64);
        }
        let mut total = 0;
        for len in 1..=row_left.min(counts.len() as u32) {
            let slot = len as usize - 1;
            if counts[slot] > 0 {
                counts[slot] -= 1;
                total += place(row_left - len, len, rest, counts, weight);
                counts[slot] += 1;
            }
        }
        total
    }
    place(row, 0, rest, counts, weight)
}

fn brick_oracle() -> Check {
    let mut pairs = 0;
    for q in 1..=7u32 {
        let all = partitions_of(q, None);
        for lambda in &all {
            for mu in &all {
                let brute = enumerate_fillings(lambda.parts(), &mut mu.multiplicities(), 1);
                let fast = filling_weight(lambda, mu).map_err(|e| e.to_string())?;
                if fast != ExactInt::from(brute) {
                    return Err(format!("λ = {lambda}, μ = {mu}: {fast} vs {brute}"));
                }
                pairs += 1;
            }
        }
    }
    for q in 1..=10u32 {
        let all: Vec<Partition> = partitions_of(q, None);
        for lambda in &all {
            for mu in &all {
                let classes = enumerate_filling_classes(lambda, mu).map_err(|e| e.to_string())?;
                let total: ExactInt = classes.iter().map(class_weight_sum).sum();
                if total != filling_weight(lambda, mu).map_err(|e| e.to_string())? {
                    return Err(format!("classes of λ = {lambda}, μ = {mu}"));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} (λ, μ) pairs"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 table reproduction", table_reproduction),
        ("2 four-way p(n) agreement", four_way_p),
        ("3 oracle equivalence", oracle_equivalence),
        ("4 m-to-p identity", er_identity),
        ("5 proof certification", proof_certification),
        ("6 cancellation witness", cancellation_witness),
        ("7 valuation lemma", valuation_lemma),
        ("8 brick oracle equivalence", brick_oracle),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
