//! Terms of the permanent and determinant of the generic `n × n` circulant
//! `A = (x_{i+j})`, subscripts taken in `{1, ..., n}`.
//!
//! A monomial `x^b = x_1^{b_1} ... x_n^{b_n}` with `Σ b_i = n` appears in the
//! permanent iff `Σ i·b_i ≡ 0 (mod n)`. Determinant coefficients come from
//! two independent routes: a signed sweep over permutations, and the
//! brick-filling expansion of `m_μ` evaluated at the `n`-th roots of unity,
//! where each `p_λ` collapses to `n^{k(λ)}` or `0`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::bricks::{signed, FillingWeigher};
use crate::error::{Error, Result};
use crate::exactmath::{binomial, divisors, euler_phi, rat_to_int, ExactInt, ExactRat};
use crate::partitions::{partitions_of, z_of, Partition};

/// Largest `n` accepted by the brute-force counting methods and the
/// permutation oracle.
pub const BRUTE_FORCE_LIMIT: usize = 12;

/// Exponents `(b_1, ..., b_n)` of a candidate monomial, with `Σ b_i = n`.
///
/// Ordered lexicographically on `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector {
    b: Vec<u32>,
}

impl ExponentVector {
    pub fn new(b: Vec<u32>) -> Result<Self> {
        if b.is_empty() {
            return Err(Error::InvalidExponentVector("empty".into()));
        }
        let total: u64 = b.iter().map(|&x| x as u64).sum();
        if total != b.len() as u64 {
            return Err(Error::InvalidExponentVector(format!(
                "entries sum to {total}, expected {}",
                b.len()
            )));
        }
        Ok(Self { b })
    }

    /// `x_k^n` as an exponent vector (`k` is 1-based).
    pub fn pure_power(n: usize, k: usize) -> Self {
        let mut b = vec![0; n];
        b[k - 1] = n as u32;
        Self { b }
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn b(&self) -> &[u32] {
        &self.b
    }

    /// `q = Σ i·b_i`.
    pub fn q(&self) -> u32 {
        self.b
            .iter()
            .enumerate()
            .map(|(i, &x)| (i as u32 + 1) * x)
            .sum()
    }

    /// `μ = ⟨1^{b_1} 2^{b_2} ... n^{b_n}⟩`, a partition of `q` with `n` parts.
    pub fn mu(&self) -> Partition {
        Partition::from_multiplicities(&self.b)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.b.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for ExponentVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let b = s
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidExponentVector(format!("{s:?}: {e}")))?;
        Self::new(b)
    }
}

/// An expanded polynomial: exponent vector to nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermTable {
    n: usize,
    entries: BTreeMap<ExponentVector, ExactInt>,
}

impl TermTable {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, b: &ExponentVector) -> ExactInt {
        self.entries.get(b).cloned().unwrap_or_else(ExactInt::zero)
    }

    /// Adds `coeff` to the coefficient of `b`, dropping the entry if it
    /// cancels to zero.
    pub fn add(&mut self, b: ExponentVector, coeff: ExactInt) {
        match self.entries.entry(b) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                if !coeff.is_zero() {
                    slot.insert(coeff);
                }
            }
        }
    }

    /// Coefficient-wise sum; the order of merging does not matter.
    pub fn merge(mut self, other: TermTable) -> TermTable {
        for (b, c) in other.entries {
            self.add(b, c);
        }
        self
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ExponentVector, &ExactInt)> {
        self.entries.iter()
    }
}

/// Whether `x^b` appears in the permanent: `Σ i·b_i ≡ 0 (mod n)`.
pub fn hall_admissible(b: &ExponentVector) -> bool {
    (b.q() as usize).is_multiple_of(b.n())
}

/// Calls `visit` on every weak composition of `total` into `parts` parts,
/// in lexicographic order.
fn for_each_composition(total: u32, parts: usize, visit: &mut impl FnMut(&[u32])) {
    fn go(slot: usize, left: u32, current: &mut Vec<u32>, visit: &mut impl FnMut(&[u32])) {
        if slot + 1 == current.len() {
            current[slot] = left;
            visit(current);
            return;
        }
        for x in 0..=left {
            current[slot] = x;
            go(slot + 1, left - x, current, visit);
        }
    }
    if parts == 0 {
        return;
    }
    let mut current = vec![0; parts];
    go(0, total, &mut current, visit);
}

/// Every exponent vector of the permanent, in lexicographic order.
pub fn permanent_terms(n: usize) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    for_each_composition(n as u32, n, &mut |b| {
        let q: usize = b.iter().enumerate().map(|(i, &x)| (i + 1) * x as usize).sum();
        if q.is_multiple_of(n) {
            out.push(ExponentVector { b: b.to_vec() });
        }
    });
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PermanentMethod {
    /// Divisor sum over totients and central binomials.
    Formula,
    /// Solutions of the congruence system counted one by one.
    Congruence,
    /// Rotation classes of 2n-bead two-colour necklaces with n of each.
    Necklaces,
    /// Lattice points of the simplex with coordinate sum divisible by n.
    Lattice,
}

impl PermanentMethod {
    pub const ALL: [PermanentMethod; 4] = [
        PermanentMethod::Formula,
        PermanentMethod::Congruence,
        PermanentMethod::Necklaces,
        PermanentMethod::Lattice,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PermanentMethod::Formula => "formula",
            PermanentMethod::Congruence => "congruence",
            PermanentMethod::Necklaces => "necklaces",
            PermanentMethod::Lattice => "lattice",
        }
    }
}

/// `p(n)`, the number of terms in the permanent.
pub fn p_count(n: usize, method: PermanentMethod) -> Result<ExactInt> {
    if n == 0 {
        return Err(Error::NonPositive(0));
    }
    if method != PermanentMethod::Formula && n > BRUTE_FORCE_LIMIT {
        return Err(Error::MethodLimit {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    Ok(match method {
        PermanentMethod::Formula => p_formula(n as u64)?,
        PermanentMethod::Congruence => ExactInt::from(count_congruence(n)),
        PermanentMethod::Necklaces => ExactInt::from(count_necklaces(n)),
        PermanentMethod::Lattice => ExactInt::from(count_lattice(n)),
    })
}

fn p_formula(n: u64) -> Result<ExactInt> {
    let mut total = ExactInt::zero();
    for d in divisors(n)? {
        total += ExactInt::from(euler_phi(n / d)?) * binomial(2 * d - 1, d);
    }
    Ok(total / n)
}

fn count_congruence(n: usize) -> u64 {
    let mut count = 0;
    for_each_composition(n as u32, n, &mut |y| {
        let weighted: usize = y.iter().enumerate().map(|(i, &x)| (i + 1) * x as usize).sum();
        if weighted.is_multiple_of(n) {
            count += 1;
        }
    });
    count
}

fn count_necklaces(n: usize) -> u64 {
    let len = 2 * n as u32;
    let full: u64 = (1u64 << len) - 1;
    let rotate = |x: u64, s: u32| ((x >> s) | (x << (len - s))) & full;
    // Gosper's hack over all words with exactly n ones; count words that are
    // the smallest of their rotations
    let mut word: u64 = (1u64 << n) - 1;
    let mut count = 0;
    while word <= full {
        if (1..len).all(|s| rotate(word, s) >= word) {
            count += 1;
        }
        let low = word & word.wrapping_neg();
        let ripple = word + low;
        word = (((ripple ^ word) >> 2) / low) | ripple;
    }
    count
}

fn count_lattice(n: usize) -> u64 {
    fn go(slot: usize, slots: usize, upper: usize, sum_mod: usize, n: usize) -> u64 {
        if slot == slots {
            return u64::from(sum_mod == 0);
        }
        (0..=upper)
            .map(|w| go(slot + 1, slots, w, (sum_mod + w) % n, n))
            .sum()
    }
    go(0, n - 1, n, 0, n)
}

/// Index `t` in `{1, ..., n}` of the entry `x_t` in row `i`, column `j`
/// (both 0-based).
#[inline]
fn entry_index(i: usize, j: usize, n: usize) -> usize {
    (i + j + 1) % n + 1
}

/// Coefficient of `x^b` in `det(A)`, summed directly over the permutations
/// whose product of entries is `x^b`.
///
/// The search assigns rows in order and abandons a partial permutation as
/// soon as it uses some `x_t` more than `b_t` times.
pub fn det_coeff_oracle(b: &ExponentVector) -> Result<ExactInt> {
    let n = b.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::OracleBound {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    fn go(row: usize, n: usize, used: u32, inversions: u32, left: &mut [u32]) -> i64 {
        if row == n {
            return if inversions.is_multiple_of(2) { 1 } else { -1 };
        }
        let mut total = 0;
        for col in 0..n {
            if used & (1 << col) != 0 {
                continue;
            }
            let t = entry_index(row, col, n) - 1;
            if left[t] == 0 {
                continue;
            }
            // earlier rows holding a larger column form an inversion
            let above = (used >> (col + 1)).count_ones();
            left[t] -= 1;
            total += go(row + 1, n, used | (1 << col), inversions + above, left);
            left[t] += 1;
        }
        total
    }
    let mut left = b.b.clone();
    Ok(ExactInt::from(go(0, n, 0, 0, &mut left)))
}

/// Full signed expansion of `det(A)` over all `n!` permutations.
///
/// The permutations are split by the images of the first two rows; each
/// slice is swept with Heap's algorithm, updating the sign and the packed
/// monomial incrementally on every transposition. Partial tables are
/// merged by coefficient addition, so the result does not depend on how
/// the slices are scheduled.
pub fn expand_det(n: usize) -> Result<TermTable> {
    expand_det_sliced(n, 2)
}

/// [`expand_det`] with the permutations split by the images of the first
/// `prefix_len` rows.
pub fn expand_det_sliced(n: usize, prefix_len: usize) -> Result<TermTable> {
    if n == 0 {
        return Err(Error::NonPositive(0));
    }
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::OracleBound {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let base = n as u64 + 1;
    let pow: Vec<u64> = (0..n as u32).map(|t| base.pow(t)).collect();
    let prefix_len = prefix_len.min(n);
    let prefixes: Vec<Vec<usize>> = permutations_prefixes(n, prefix_len);

    let partial: Vec<HashMap<u64, i64>> = prefixes
        .par_iter()
        .map(|prefix| sweep_slice(n, prefix, &pow))
        .collect();

    let mut packed: HashMap<u64, i64> = HashMap::new();
    for part in partial {
        for (key, c) in part {
            *packed.entry(key).or_insert(0) += c;
        }
    }
    let mut table = TermTable::new(n);
    for (key, c) in packed {
        if c == 0 {
            continue;
        }
        let mut b = vec![0u32; n];
        let mut rest = key;
        for slot in b.iter_mut() {
            *slot = (rest % base) as u32;
            rest /= base;
        }
        table.entries.insert(ExponentVector { b }, ExactInt::from(c));
    }
    Ok(table)
}

fn permutations_prefixes(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for prefix in out {
            for c in (0..n).filter(|c| !prefix.contains(c)) {
                let mut longer = prefix.clone();
                longer.push(c);
                next.push(longer);
            }
        }
        out = next;
    }
    out
}

/// Sweeps every permutation whose first rows map to `prefix`.
fn sweep_slice(n: usize, prefix: &[usize], pow: &[u64]) -> HashMap<u64, i64> {
    let mut sigma: Vec<usize> = prefix.to_vec();
    sigma.extend((0..n).filter(|c| !prefix.contains(c)));
    let fixed = prefix.len();

    let inversions: usize = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| sigma[i] > sigma[j])
        .count();
    let mut sign: i64 = if inversions.is_multiple_of(2) { 1 } else { -1 };
    let term = |row: usize, col: usize| pow[entry_index(row, col, n) - 1];
    let mut key: u64 = (0..n).map(|i| term(i, sigma[i])).sum();

    let mut out: HashMap<u64, i64> = HashMap::new();
    *out.entry(key).or_insert(0) += sign;

    // iterative Heap's algorithm over positions fixed..n
    let m = n - fixed;
    let mut counters = vec![0usize; m];
    let mut i = 1;
    while i < m {
        if counters[i] < i {
            let (a, b) = if i % 2 == 0 { (0, i) } else { (counters[i], i) };
            let (ra, rb) = (fixed + a, fixed + b);
            key -= term(ra, sigma[ra]) + term(rb, sigma[rb]);
            sigma.swap(ra, rb);
            key += term(ra, sigma[ra]) + term(rb, sigma[rb]);
            sign = -sign;
            *out.entry(key).or_insert(0) += sign;
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    out
}

/// The brick-filling sum for the coefficient of `x^b` in the product of
/// the eigenvalues `Π_i (Σ_j ξ^{ij} x_j)`, as an exact rational:
/// `Σ_λ (-1)^{k(μ)-k(λ)} w(λ,μ) n^{k(λ)} / z_λ` over `λ ⊢ q` with every part
/// divisible by `n`.
pub fn det_coeff_er_rational(b: &ExponentVector) -> ExactRat {
    let n = b.n();
    let q = b.q();
    if !(q as usize).is_multiple_of(n) {
        return ExactRat::zero();
    }
    let mu = b.mu();
    let mut weigher = FillingWeigher::new(&mu);
    let n_big = ExactInt::from(n);
    let mut total = ExactRat::zero();
    for lambda in partitions_of(q, Some(n as u32)) {
        let w = weigher.weight(&lambda);
        if w.is_zero() {
            continue;
        }
        let numer = w * n_big.pow(lambda.k() as u32);
        total += signed(ExactRat::new(numer, z_of(&lambda)), mu.k(), lambda.k());
    }
    total
}

/// Coefficient of `x^b` via the brick-filling expansion. Agrees with
/// [`det_coeff_oracle`] up to the global sign [`sign_epsilon`]`(n)`.
pub fn det_coeff_er(b: &ExponentVector) -> ExactInt {
    let value = det_coeff_er_rational(b);
    rat_to_int(&value).unwrap_or_else(|| panic!("non-integral coefficient {value} for {b}"))
}

/// `ε(n)` with `det_coeff_er = ε(n) · det_coeff_oracle` for every `b`.
///
/// Measured on `x_n^n`, which comes from the single permutation
/// `i ↦ -i (mod n)` and so is nonzero in both routes for every `n`.
pub fn sign_epsilon(n: usize) -> i32 {
    let b = ExponentVector::pure_power(n, n);
    let er = det_coeff_er(&b);
    let oracle = pure_power_oracle(n);
    if er == oracle {
        1
    } else {
        assert_eq!(er, -oracle, "x_n^n coefficients differ beyond sign");
        -1
    }
}

/// Determinant coefficient of `x_n^n`: the sign of the permutation
/// sending row `i` to the column `j` with `i + j ≡ 0 (mod n)`.
fn pure_power_oracle(n: usize) -> ExactInt {
    let sigma: Vec<usize> = (0..n).map(|i| (2 * n - i - 2) % n).collect();
    let inversions = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| sigma[i] > sigma[j])
        .count();
    if inversions % 2 == 0 {
        ExactInt::one()
    } else {
        -ExactInt::one()
    }
}

/// `(-1)^{(n-1)(n-2)/2}`, the closed form `ε(n)` takes for every `n` the
/// oracle reaches.
pub fn conjectured_epsilon(n: usize) -> i32 {
    if n == 0 {
        return 1;
    }
    if ((n - 1) * (n.saturating_sub(2)) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeterminantMethod {
    /// Brick-filling expansion, one coefficient per permanent term.
    Er,
    /// Full permutation sweep.
    Oracle,
}

/// `d(n)`, the number of terms in the determinant.
pub fn d_count(n: usize, method: DeterminantMethod) -> Result<ExactInt> {
    if n == 0 {
        return Err(Error::NonPositive(0));
    }
    match method {
        DeterminantMethod::Er => Ok(ExactInt::from(
            permanent_terms(n)
                .par_iter()
                .filter(|b| !det_coeff_er_rational(b).is_zero())
                .count(),
        )),
        DeterminantMethod::Oracle => Ok(ExactInt::from(expand_det(n)?.len())),
    }
}

/// Admissible exponent vectors whose determinant coefficient cancels to
/// zero, in lexicographic order.
pub fn vanishing_terms(n: usize) -> Vec<ExponentVector> {
    permanent_terms(n)
        .into_par_iter()
        .filter(|b| det_coeff_er_rational(b).is_zero())
        .collect()
}
