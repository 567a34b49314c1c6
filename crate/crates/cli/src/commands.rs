//! The subcommands. Each returns its records plus an exit status; nothing
//! here writes to stdout, so the same functions back the binary and the
//! tests.

use circulant_core::bricks::{m_to_p_expansion, verify_m2p};
use circulant_core::circulant::{
    d_count, det_coeff_er, det_coeff_er_rational, det_coeff_oracle, hall_admissible, p_count,
    permanent_terms, sign_epsilon, DeterminantMethod, ExponentVector, PermanentMethod,
    BRUTE_FORCE_LIMIT,
};
use circulant_core::exactmath::{format_rat, prime_power, ExactInt, ExactRat};
use circulant_core::partitions::partitions_of;
use circulant_core::theorem::dominance_check;
use num_traits::Zero;
use rayon::prelude::*;

use crate::known::known_counts;
use crate::output::Record;

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Usage = 1,
    Inconsistent = 2,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub records: Vec<Record>,
    pub status: Status,
    /// Lines for stderr.
    pub diagnostics: Vec<String>,
}

impl Outcome {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            records: Vec::new(),
            status: Status::Usage,
            diagnostics: vec![message.into()],
        }
    }
}

/// Largest `n` the table and verify commands accept.
pub const TABLE_LIMIT: usize = 12;

/// `d(n)` and `p(n)` for `n = 1..=max_n`, `d` by the brick-filling route
/// and `p` by the divisor-sum formula. For `n <= oracle_max` the row is
/// cross-checked against the permutation sweep and the permanent term
/// enumeration.
pub fn cmd_table(max_n: usize, oracle_max: usize) -> Outcome {
    if !(1..=TABLE_LIMIT).contains(&max_n) {
        return Outcome::usage(format!("--max-n must be in 1..={TABLE_LIMIT}"));
    }
    if oracle_max > BRUTE_FORCE_LIMIT {
        return Outcome::usage(format!("--oracle-max must be at most {BRUTE_FORCE_LIMIT}"));
    }
    let mut records = Vec::new();
    let mut status = Status::Ok;
    let mut diagnostics = Vec::new();
    for n in 1..=max_n {
        let d = d_count(n, DeterminantMethod::Er).expect("n >= 1");
        let p = p_count(n, PermanentMethod::Formula).expect("n >= 1");
        let check = if n <= oracle_max {
            let d_oracle = d_count(n, DeterminantMethod::Oracle).expect("within oracle bound");
            let p_terms = ExactInt::from(permanent_terms(n).len());
            if d_oracle == d && p_terms == p {
                "agree".to_string()
            } else {
                status = Status::Inconsistent;
                diagnostics.push(format!(
                    "n = {n}: d er={d} oracle={d_oracle}; p formula={p} terms={p_terms}"
                ));
                format!("disagree: d_oracle={d_oracle} p_terms={p_terms}")
            }
        } else {
            "unchecked".to_string()
        };
        records.push(
            Record::new()
                .with("n", n)
                .with("d", &d)
                .with("p", &p)
                .with("equal", d == p)
                .with("oracle", check),
        );
    }
    Outcome {
        records,
        status,
        diagnostics,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CoeffMethod {
    Er,
    Oracle,
    Both,
}

/// Parses a comma-separated exponent vector for an `n × n` circulant.
pub fn parse_exponents(n: usize, text: &str) -> Result<ExponentVector, String> {
    let b: Vec<u32> = text
        .split(',')
        .map(|t| t.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| format!("malformed exponent vector {text:?}: expected comma-separated non-negative integers"))?;
    if b.len() != n {
        return Err(format!("exponent vector has {} entries, expected {n}", b.len()));
    }
    ExponentVector::new(b).map_err(|e| e.to_string())
}

/// The coefficient of `x^b` in the determinant, by one or both routes.
pub fn cmd_coeff(n: usize, b: &str, method: CoeffMethod) -> Outcome {
    if n == 0 {
        return Outcome::usage("n must be positive");
    }
    let b = match parse_exponents(n, b) {
        Ok(b) => b,
        Err(e) => return Outcome::usage(e),
    };
    if method != CoeffMethod::Er && n > BRUTE_FORCE_LIMIT {
        return Outcome::usage(format!("oracle limited to n <= {BRUTE_FORCE_LIMIT}"));
    }
    let er = (method != CoeffMethod::Oracle).then(|| det_coeff_er(&b));
    let oracle = (method != CoeffMethod::Er).then(|| det_coeff_oracle(&b).expect("within oracle bound"));
    let mut status = Status::Ok;
    let mut diagnostics = Vec::new();
    let (epsilon, consistent) = match (&er, &oracle) {
        (Some(er), Some(oracle)) => {
            let eps = sign_epsilon(n);
            let ok = *er == ExactInt::from(eps) * oracle;
            if !ok {
                status = Status::Inconsistent;
                diagnostics.push(format!("b = {b}: er = {er}, oracle = {oracle}, epsilon = {eps}"));
            }
            (eps.to_string(), ok.to_string())
        }
        _ => (String::new(), String::new()),
    };
    let text = |x: &Option<ExactInt>| x.as_ref().map(ToString::to_string).unwrap_or_default();
    let record = Record::new()
        .with("n", n)
        .with("b", &b)
        .with("admissible", hall_admissible(&b))
        .with("coeff_er", text(&er))
        .with("coeff_oracle", text(&oracle))
        .with("sign_epsilon", epsilon)
        .with("consistent", consistent);
    Outcome {
        records: vec![record],
        status,
        diagnostics,
    }
}

/// For prime-power `n`, the dominance check on every admissible `b`; for
/// other `n`, the admissible `b` whose coefficient cancels.
pub fn cmd_verify(n: usize) -> Outcome {
    if n < 2 {
        return Outcome::usage("verify needs n >= 2");
    }
    if n > TABLE_LIMIT {
        return Outcome {
            records: vec![Record::new()
                .with("n", n)
                .with("b", "")
                .with("coeff", "")
                .with("status", "skipped")
                .with("q_valuation", "")
                .with("valuations", "")],
            status: Status::Usage,
            diagnostics: vec![format!("skipped: verify is limited to n <= {TABLE_LIMIT}")],
        };
    }
    let terms = permanent_terms(n);
    let p = terms.len();
    let known = known_counts(n);
    match prime_power(n as u64) {
        Some(_) => verify_prime_power(n, &terms, known),
        None => verify_composite(n, &terms, known, p),
    }
}

fn verify_prime_power(n: usize, terms: &[ExponentVector], known: Option<(u64, u64)>) -> Outcome {
    let rows: Vec<(Record, bool, bool, bool)> = terms
        .par_iter()
        .map(|b| {
            let report = dominance_check(b).expect("prime power and admissible");
            let coeff = det_coeff_er_rational(b);
            let sums_match = report.total() == coeff;
            let mut valuations: Vec<i64> = report.class_records.iter().map(|r| r.valuation).collect();
            valuations.sort_unstable();
            let status = if report.passed { "dominant" } else { "not-dominant" };
            let record = Record::new()
                .with("n", n)
                .with("b", b)
                .with("coeff", format_rat(&coeff))
                .with("status", status)
                .with("q_valuation", report.q_class_valuation)
                .with(
                    "valuations",
                    valuations.iter().map(i64::to_string).collect::<Vec<_>>().join(" "),
                );
            (record, report.passed, sums_match, !coeff.is_zero())
        })
        .collect();
    let passes = rows.iter().filter(|r| r.1).count();
    let d = rows.iter().filter(|r| r.3).count();
    let p = terms.len();
    let mut status = Status::Ok;
    let mut diagnostics = vec![format!("{passes}/{p} dominance passes, d={d} p={p}")];
    if passes != p || rows.iter().any(|r| !r.2) {
        status = Status::Inconsistent;
        diagnostics.push("dominance or class-sum check failed".into());
    }
    if let Some((kd, kp)) = known {
        if (kd, kp) != (d as u64, p as u64) {
            status = Status::Inconsistent;
            diagnostics.push(format!("expected d={kd} p={kp}"));
        }
    }
    Outcome {
        records: rows.into_iter().map(|r| r.0).collect(),
        status,
        diagnostics,
    }
}

fn verify_composite(n: usize, terms: &[ExponentVector], known: Option<(u64, u64)>, p: usize) -> Outcome {
    let vanishing: Vec<&ExponentVector> = terms
        .par_iter()
        .filter(|b| det_coeff_er_rational(b).is_zero())
        .collect();
    let d = p - vanishing.len();
    let records = vanishing
        .iter()
        .map(|b| {
            Record::new()
                .with("n", n)
                .with("b", b)
                .with("coeff", 0)
                .with("status", "vanishing")
                .with("q_valuation", "")
                .with("valuations", "")
        })
        .collect();
    let mut status = Status::Ok;
    let mut diagnostics = vec![format!(
        "{} vanishing coefficients, d={d} p={p}",
        vanishing.len()
    )];
    if let Some((kd, kp)) = known {
        if (kd, kp) != (d as u64, p as u64) {
            status = Status::Inconsistent;
            diagnostics.push(format!("expected d={kd} p={kp}"));
        }
    }
    Outcome {
        records,
        status,
        diagnostics,
    }
}

/// The monomial to power-sum transition matrix in degree `q`: one record
/// per `μ`, one column per `λ`, both in increasing lexicographic order.
pub fn cmd_m2p(q: u32) -> Outcome {
    if !(1..=8).contains(&q) {
        return Outcome::usage("m2p degree must be in 1..=8");
    }
    let mut basis = partitions_of(q, None);
    basis.reverse();
    let records = basis
        .iter()
        .map(|mu| {
            let row = m_to_p_expansion(mu);
            basis.iter().fold(Record::new().with("mu", mu), |rec, lambda| {
                let entry = row.get(lambda).cloned().unwrap_or_else(ExactRat::zero);
                rec.with(format!("p{lambda}"), format_rat(&entry))
            })
        })
        .collect();
    let report = verify_m2p(q, 3, u64::from(q)).expect("degree in range");
    let (status, diagnostics) = match report.counterexample {
        None => (Status::Ok, Vec::new()),
        Some(c) => (
            Status::Inconsistent,
            vec![format!("expansion of m{} disagrees at {:?}", c.mu, c.point)],
        ),
    };
    Outcome {
        records,
        status,
        diagnostics,
    }
}
