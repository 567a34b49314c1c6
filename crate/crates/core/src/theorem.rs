//! The `p`-adic argument behind `d(n) = p(n)` for prime powers, checked
//! numerically one exponent vector at a time.
//!
//! The brick-filling sum for a coefficient is regrouped by filling class.
//! The single class of the one-row partition `⟨q⟩` contributes
//! `±n!/(b_1!...b_n!)`; every other class contributes a term of strictly
//! larger valuation, so the sum cannot vanish.

use num_traits::{One, Zero};

use crate::bricks::{enumerate_filling_classes, FillingClass};
use crate::circulant::{hall_admissible, ExponentVector};
use crate::error::{Error, Result};
use crate::exactmath::{factorial, multinomial, prime_power, valuation, valuation_int, ExactInt, ExactRat};
use crate::partitions::{factorial_of_partition, partitions_of, Partition};

fn sign_of(k_mu: usize, k: usize) -> ExactInt {
    if (k_mu + k).is_multiple_of(2) {
        ExactInt::one()
    } else {
        -ExactInt::one()
    }
}

/// Contribution of `λ = ⟨q⟩`: `(-1)^{k(μ)-1} n!/(b_1!...b_n!)`.
pub fn q_class_contribution(b: &ExponentVector) -> Result<ExactRat> {
    let n = b.n();
    let q = b.q();
    if !(q as usize).is_multiple_of(n) {
        return Err(Error::NoContribution { q, n });
    }
    let denom = b
        .b()
        .iter()
        .fold(ExactInt::one(), |acc, &x| acc * factorial(x as u64));
    let value = sign_of(b.mu().k(), 1) * factorial(n as u64);
    Ok(ExactRat::new(value, denom))
}

/// Contribution of one filling class to the coefficient sum:
/// `(-1)^{k(μ)-k} n^k / δ(F)! · Π_j (r_j - 1)! / (α_{1j}! ... α_{nj}!)`.
pub fn class_contribution(class: &FillingClass, n: usize) -> Result<ExactRat> {
    let lambda = class.lambda();
    if !lambda.all_parts_divisible_by(n as u32) {
        return Err(Error::IneligiblePartition(lambda.to_string()));
    }
    let k = lambda.k();
    let mut numer = sign_of(class.mu().k(), k) * ExactInt::from(n).pow(k as u32);
    let mut denom = factorial_of_partition(&class.delta());
    for row in class.rows() {
        numer *= factorial(row.len() as u64 - 1);
        for &c in row.counts() {
            denom *= factorial(c as u64);
        }
    }
    Ok(ExactRat::new(numer, denom))
}

/// The two factors whose product is `|class_contribution / q_class_contribution|`:
///
/// * `first = (1/δ!) · Π_i multinomial(b_i; α_{i1}, ..., α_{ik})`, an integer;
/// * `second = n^{k-1} / ((n-1)...(n-k+1) · multinomial(n-k; r_1-1, ..., r_k-1))`.
pub fn eq6_factors(class: &FillingClass, b: &ExponentVector, n: usize) -> Result<(ExactRat, ExactRat)> {
    let lambda = class.lambda();
    if lambda.k() == 1 {
        return Err(Error::BaseClassRatio);
    }
    if !lambda.all_parts_divisible_by(n as u32) {
        return Err(Error::IneligiblePartition(lambda.to_string()));
    }
    let k = lambda.k();
    let mut first = ExactInt::one();
    for (i, &bi) in b.b().iter().enumerate() {
        let len = i as u32 + 1;
        let split: Vec<u64> = (0..k).map(|j| class.alpha(len, j) as u64).collect();
        first *= multinomial(bi as u64, &split)?;
    }
    let first = ExactRat::new(first, factorial_of_partition(&class.delta()));

    let falling = (1..k).fold(ExactInt::one(), |acc, j| acc * (n - j));
    let r_minus: Vec<u64> = class.r().iter().map(|&r| r as u64 - 1).collect();
    let rest = multinomial((n - k) as u64, &r_minus)?;
    let second = ExactRat::new(ExactInt::from(n).pow(k as u32 - 1), falling * rest);
    Ok((first, second))
}

/// Every filling class of every eligible `λ` (all parts multiples of `n`,
/// `λ ≠ ⟨q⟩` included) together with its contribution.
pub fn class_contributions(b: &ExponentVector) -> Result<Vec<(FillingClass, ExactRat)>> {
    let n = b.n();
    let mu = b.mu();
    let mut out = Vec::new();
    for lambda in partitions_of(b.q(), Some(n as u32)) {
        for class in enumerate_filling_classes(&lambda, &mu)? {
            let c = class_contribution(&class, n)?;
            out.push((class, c));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRecord {
    pub lambda: Partition,
    /// Position of the class among the classes of `lambda`.
    pub class_index: usize,
    pub class: FillingClass,
    pub contribution: ExactRat,
    pub valuation: i64,
}

/// Valuation spectrum of one exponent vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominanceReport {
    pub n: usize,
    pub p: u64,
    pub r: u32,
    pub b: ExponentVector,
    pub q_class_contribution: ExactRat,
    pub q_class_valuation: i64,
    /// Every class other than the one of `⟨q⟩`.
    pub class_records: Vec<ClassRecord>,
    pub passed: bool,
}

impl DominanceReport {
    /// Sum of all contributions, the `⟨q⟩` class included.
    pub fn total(&self) -> ExactRat {
        self.class_records
            .iter()
            .fold(self.q_class_contribution.clone(), |acc, rec| acc + &rec.contribution)
    }

    /// Smallest valuation among the non-base classes.
    pub fn min_other_valuation(&self) -> Option<i64> {
        self.class_records.iter().map(|r| r.valuation).min()
    }
}

/// Checks that the `⟨q⟩` class has strictly smaller `p`-adic valuation
/// than every other class, for `n = p^r`.
pub fn dominance_check(b: &ExponentVector) -> Result<DominanceReport> {
    let n = b.n();
    if n == 1 {
        let one = ExactRat::one();
        return Ok(DominanceReport {
            n,
            p: 1,
            r: 0,
            b: b.clone(),
            q_class_contribution: one,
            q_class_valuation: 0,
            class_records: Vec::new(),
            passed: true,
        });
    }
    let (p, r) = prime_power(n as u64).ok_or(Error::NotPrimePower(n))?;
    if !hall_admissible(b) {
        return Err(Error::NoContribution { q: b.q(), n });
    }
    let base = q_class_contribution(b)?;
    let q_class_valuation = valuation(&base, p)?;
    let mu = b.mu();
    let mut class_records = Vec::new();
    for lambda in partitions_of(b.q(), Some(n as u32)) {
        if lambda.k() == 1 {
            continue;
        }
        for (class_index, class) in enumerate_filling_classes(&lambda, &mu)?.into_iter().enumerate() {
            let contribution = class_contribution(&class, n)?;
            let v = valuation(&contribution, p)?;
            class_records.push(ClassRecord {
                lambda: lambda.clone(),
                class_index,
                class,
                contribution,
                valuation: v,
            });
        }
    }
    let passed = class_records.iter().all(|rec| q_class_valuation < rec.valuation);
    Ok(DominanceReport {
        n,
        p,
        r,
        b: b.clone(),
        q_class_contribution: base,
        q_class_valuation,
        class_records,
        passed,
    })
}

/// Bound on multinomial valuations below a prime power: for `m < p^s`,
/// `v_p(multinomial(m; parts)) < (k - 1)·s` with `k` the number of parts.
/// Two parts give the binomial case.
pub fn lemma_check(m: u64, p: u64, s: u32, parts: &[u64]) -> Result<bool> {
    let bound = p.checked_pow(s).unwrap_or(u64::MAX);
    if m >= bound {
        return Err(Error::LemmaHypothesis { m, bound });
    }
    if parts.len() < 2 {
        return Err(Error::TooFewParts);
    }
    let value = multinomial(m, parts)?;
    if value.is_zero() {
        return Ok(false);
    }
    Ok(valuation_int(&value, p)? < (parts.len() as i64 - 1) * s as i64)
}
