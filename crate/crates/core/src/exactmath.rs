//! Exact integer and rational arithmetic plus the small number-theoretic
//! helpers (valuations, multinomials, totients, divisors) the rest of the
//! crate is built on.
//!
//! Every quantity that can grow is an [`ExactInt`] or [`ExactRat`]; machine
//! integers are only used for sizes and indices that are bounded by `n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type ExactInt = BigInt;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type ExactRat = BigRational;

pub fn int(v: i64) -> ExactInt {
    ExactInt::from(v)
}

pub fn rat(num: i64, den: i64) -> ExactRat {
    ExactRat::new(int(num), int(den))
}

/// `x` as an integer if its denominator is one.
pub fn rat_to_int(x: &ExactRat) -> Option<ExactInt> {
    x.is_integer().then(|| x.to_integer())
}

/// Formats a rational as `num/den`, or just `num` when the denominator is one.
pub fn format_rat(x: &ExactRat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `num/den` or a bare integer.
pub fn parse_rat(s: &str) -> Option<ExactRat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: ExactInt = n.trim().parse().ok()?;
            let d: ExactInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| ExactRat::new(n, d))
        }
        None => s.parse::<ExactInt>().ok().map(ExactRat::from_integer),
    }
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation_int(x: &ExactInt, p: u64) -> Result<i64> {
    if p < 2 {
        return Err(Error::InvalidPrime(p));
    }
    if x.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    let p = ExactInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (quot, rem) = x.div_rem(&p);
        if !rem.is_zero() {
            return Ok(v);
        }
        x = quot;
        v += 1;
    }
}

/// `p`-adic valuation of a nonzero rational: `v(num) - v(den)`.
///
/// `p` is assumed prime; only `p < 2` is rejected.
pub fn valuation(x: &ExactRat, p: u64) -> Result<i64> {
    if p < 2 {
        return Err(Error::InvalidPrime(p));
    }
    if x.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    Ok(valuation_int(x.numer(), p)? - valuation_int(x.denom(), p)?)
}

pub fn factorial(m: u64) -> ExactInt {
    (2..=m).fold(ExactInt::one(), |acc, i| acc * i)
}

pub fn binomial(m: u64, d: u64) -> ExactInt {
    if d > m {
        return ExactInt::zero();
    }
    let d = d.min(m - d);
    let mut acc = ExactInt::one();
    for i in 0..d {
        acc = acc * (m - i) / (i + 1);
    }
    acc
}

/// `m! / (parts[0]! * parts[1]! * ...)`.
pub fn multinomial(m: u64, parts: &[u64]) -> Result<ExactInt> {
    let total = parts
        .iter()
        .try_fold(0u64, |acc, &x| acc.checked_add(x))
        .ok_or(Error::PartsSum)?;
    if total != m {
        return Err(Error::PartsSum);
    }
    // product of binomials keeps every intermediate an integer
    let mut acc = ExactInt::one();
    let mut placed = 0u64;
    for &part in parts {
        placed += part;
        acc *= binomial(placed, part);
    }
    Ok(acc)
}

/// Prime factorisation by trial division, as `(prime, exponent)` pairs in
/// increasing order of prime.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Some((p, r))` when `n = p^r` with `p` prime and `r >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, r)] => Some((*p, *r)),
        _ => None,
    }
}

pub fn euler_phi(n: u64) -> Result<u64> {
    if n < 1 {
        return Err(Error::NonPositive(n as i64));
    }
    Ok(factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1)))
}

pub fn divisors(n: u64) -> Result<Vec<u64>> {
    if n < 1 {
        return Err(Error::NonPositive(n as i64));
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Converts a small exact integer to `i64`, for reporting.
pub fn to_i64(x: &ExactInt) -> Option<i64> {
    x.to_i64()
}
