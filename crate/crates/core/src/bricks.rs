//! Brick fillings of Ferrers diagrams, the weights `w(λ, μ)`, their
//! equivalence classes, and the monomial to power-sum change of basis built
//! from them.
//!
//! A filling of `λ` by `μ` tiles every row of the diagram of `λ` with
//! bricks whose lengths are the parts of `μ`. Rows are positionally
//! distinct (two rows of equal length filled with different brick sets give
//! two fillings) while bricks of equal length are interchangeable. The
//! weight of a filling is the product over rows of the length of the
//! rightmost brick in that row.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactmath::{factorial, multinomial, ExactInt, ExactRat};
use crate::partitions::{factorial_of_partition, partitions_of, z_of, Partition};

/// A multiset of brick lengths. `counts()[i - 1]` is the number of bricks of
/// length `i`; trailing zeros are trimmed so equal multisets compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BrickMultiset {
    counts: Vec<u32>,
}

impl BrickMultiset {
    pub fn from_counts(mut counts: Vec<u32>) -> Self {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        Self { counts }
    }

    /// Bricks with the given lengths. Zero lengths are ignored.
    pub fn from_lengths(lengths: &[u32]) -> Self {
        let max = lengths.iter().copied().max().unwrap_or(0) as usize;
        let mut counts = vec![0u32; max];
        for &l in lengths.iter().filter(|&&l| l > 0) {
            counts[l as usize - 1] += 1;
        }
        Self::from_counts(counts)
    }

    pub fn from_partition(mu: &Partition) -> Self {
        Self::from_lengths(mu.parts())
    }

    pub fn to_partition(&self) -> Partition {
        Partition::from_multiplicities(&self.counts)
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Number of bricks of length `len`.
    pub fn count(&self, len: u32) -> u32 {
        if len == 0 {
            return 0;
        }
        self.counts.get(len as usize - 1).copied().unwrap_or(0)
    }

    /// Total number of bricks.
    pub fn len(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Total length of all bricks.
    pub fn mass(&self) -> u32 {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as u32 + 1) * c)
            .sum()
    }

    /// Brick lengths in non-increasing order.
    pub fn lengths(&self) -> Vec<u32> {
        self.to_partition().parts().to_vec()
    }
}

/// Total weight of all distinct arrangements of `bricks` in one row of
/// length `row_length`: `multinomial(r; counts) · row_length / r` where `r`
/// is the number of bricks.
pub fn row_weight_sum(row_length: u32, bricks: &BrickMultiset) -> Result<ExactInt> {
    if row_length == 0 || bricks.mass() != row_length {
        return Err(Error::BricksDoNotFillRow);
    }
    let counts: Vec<u64> = bricks.counts.iter().map(|&c| c as u64).collect();
    let r = bricks.len() as u64;
    Ok(multinomial(r, &counts)? * row_length / r)
}

/// `w(λ, μ)`: the total weight over all distinct fillings of `λ` by `μ`.
pub fn filling_weight(lambda: &Partition, mu: &Partition) -> Result<ExactInt> {
    if lambda.q() != mu.q() {
        return Err(Error::SizesDiffer(lambda.q(), mu.q()));
    }
    Ok(FillingWeigher::new(mu).weight(lambda))
}

/// Arithmetic used by the weight recursion. The kernel runs in `u128`
/// first and reruns in exact integers if any step overflows.
trait Tally: Clone {
    fn nothing() -> Self;
    fn from_exact(x: &ExactInt) -> Option<Self>;
    fn into_exact(self) -> ExactInt;
    fn add(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
}

impl Tally for u128 {
    fn nothing() -> Self {
        0
    }
    fn from_exact(x: &ExactInt) -> Option<Self> {
        num_traits::ToPrimitive::to_u128(x)
    }
    fn into_exact(self) -> ExactInt {
        ExactInt::from(self)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
}

impl Tally for ExactInt {
    fn nothing() -> Self {
        Zero::zero()
    }
    fn from_exact(x: &ExactInt) -> Option<Self> {
        Some(x.clone())
    }
    fn into_exact(self) -> ExactInt {
        self
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
}

/// Sub-multisets of a fixed brick multiset, encoded in mixed radix so that
/// every sub-multiset is a single `u64` key.
#[derive(Debug, Clone)]
struct SubsetSpace {
    /// Distinct brick lengths present.
    lengths: Vec<u32>,
    /// Available count for each entry of `lengths`.
    limits: Vec<u32>,
    strides: Vec<u64>,
    size: u64,
}

impl SubsetSpace {
    fn new(bricks: &BrickMultiset) -> Self {
        let mut lengths = Vec::new();
        let mut limits = Vec::new();
        let mut strides = Vec::new();
        let mut size = 1u64;
        for (i, &c) in bricks.counts().iter().enumerate() {
            if c > 0 {
                lengths.push(i as u32 + 1);
                limits.push(c);
                strides.push(size);
                size = size
                    .checked_mul(c as u64 + 1)
                    .expect("brick multiset too large to index");
            }
        }
        Self {
            lengths,
            limits,
            strides,
            size,
        }
    }

    fn full_key(&self) -> u64 {
        self.size - 1
    }

    fn digits(&self, key: u64) -> Vec<u32> {
        self.limits
            .iter()
            .zip(&self.strides)
            .map(|(&lim, &s)| ((key / s) % (lim as u64 + 1)) as u32)
            .collect()
    }

    fn mass_of(&self, key: u64) -> u32 {
        self.digits(key)
            .iter()
            .zip(&self.lengths)
            .map(|(d, l)| d * l)
            .sum()
    }

    fn to_multiset(&self, key: u64) -> BrickMultiset {
        let digits = self.digits(key);
        let max = self.lengths.last().copied().unwrap_or(0) as usize;
        let mut counts = vec![0u32; max];
        for (d, &l) in digits.iter().zip(&self.lengths) {
            counts[l as usize - 1] = *d;
        }
        BrickMultiset::from_counts(counts)
    }

    /// Calls `visit` with the key of every sub-multiset of `available`
    /// whose mass is exactly `target`.
    fn for_each_with_mass(&self, available: u64, target: u32, visit: &mut impl FnMut(u64)) {
        let avail = self.digits(available);
        self.walk(&avail, self.lengths.len(), target, 0, visit);
    }

    fn walk(&self, avail: &[u32], t: usize, target: u32, key: u64, visit: &mut impl FnMut(u64)) {
        if target == 0 {
            visit(key);
            return;
        }
        if t == 0 {
            return;
        }
        let t = t - 1;
        let len = self.lengths[t];
        let max = avail[t].min(target / len);
        for take in (0..=max).rev() {
            self.walk(
                avail,
                t,
                target - take * len,
                key + take as u64 * self.strides[t],
                visit,
            );
        }
    }
}

/// Computes `w(λ, μ)` for a fixed `μ` and many `λ`, sharing one memo of
/// `(rows still to fill, bricks still unused)` across calls.
#[derive(Debug)]
pub struct FillingWeigher {
    space: SubsetSpace,
    mass: u32,
    fast: Option<Kernel<u128>>,
    exact: Option<Kernel<ExactInt>>,
}

#[derive(Debug)]
struct Kernel<T> {
    row_weights: RowWeights<T>,
    memo: HashMap<Vec<u32>, HashMap<u64, T>>,
}

/// Lazily computed `row_weight_sum` per sub-multiset key: a dense table
/// for small brick multisets, a map otherwise.
#[derive(Debug)]
enum RowWeights<T> {
    Dense(Vec<Option<T>>),
    Sparse(HashMap<u64, T>),
}

const DENSE_LIMIT: u64 = 1 << 20;

impl<T: Tally> RowWeights<T> {
    fn new(space: &SubsetSpace) -> Self {
        if space.size <= DENSE_LIMIT {
            Self::Dense(vec![None; space.size as usize])
        } else {
            Self::Sparse(HashMap::new())
        }
    }

    fn get(&mut self, space: &SubsetSpace, key: u64) -> Option<T> {
        let slot = match self {
            Self::Dense(v) => v[key as usize].as_ref(),
            Self::Sparse(m) => m.get(&key),
        };
        if let Some(w) = slot {
            return Some(w.clone());
        }
        let bricks = space.to_multiset(key);
        let w = T::from_exact(&row_weight_sum(bricks.mass(), &bricks).ok()?)?;
        match self {
            Self::Dense(v) => v[key as usize] = Some(w.clone()),
            Self::Sparse(m) => {
                m.insert(key, w.clone());
            }
        }
        Some(w)
    }
}

impl<T: Tally> Kernel<T> {
    fn new(space: &SubsetSpace) -> Self {
        Self {
            row_weights: RowWeights::new(space),
            memo: HashMap::new(),
        }
    }

    /// Weight of filling `rows` exactly with the bricks in `available`;
    /// `None` on overflow.
    fn fill(&mut self, space: &SubsetSpace, rows: &[u32], available: u64) -> Option<T> {
        match rows {
            [] => return Some(T::nothing()),
            [last] => {
                return if space.mass_of(available) == *last {
                    self.row_weights.get(space, available)
                } else {
                    Some(T::nothing())
                };
            }
            _ => {}
        }
        if let Some(hit) = self.memo.get(rows).and_then(|m| m.get(&available)) {
            return Some(hit.clone());
        }
        let mut choices = Vec::new();
        space.for_each_with_mass(available, rows[0], &mut |key| choices.push(key));
        let mut total = T::nothing();
        for key in choices {
            let rest = self.fill(space, &rows[1..], available - key)?;
            let term = self.row_weights.get(space, key)?.mul(&rest)?;
            total = total.add(&term)?;
        }
        match self.memo.get_mut(rows) {
            Some(inner) => {
                inner.insert(available, total.clone());
            }
            None => {
                self.memo
                    .insert(rows.to_vec(), HashMap::from([(available, total.clone())]));
            }
        }
        Some(total)
    }
}

impl FillingWeigher {
    pub fn new(mu: &Partition) -> Self {
        let space = SubsetSpace::new(&BrickMultiset::from_partition(mu));
        let fast = Some(Kernel::new(&space));
        Self {
            space,
            mass: mu.q(),
            fast,
            exact: None,
        }
    }

    /// `w(λ, μ)`; zero when the sizes differ or no filling exists.
    pub fn weight(&mut self, lambda: &Partition) -> ExactInt {
        if lambda.q() != self.mass {
            return ExactInt::zero();
        }
        if lambda.is_empty() {
            return ExactInt::one();
        }
        let full = self.space.full_key();
        if let Some(fast) = self.fast.as_mut() {
            if let Some(w) = fast.fill(&self.space, lambda.parts(), full) {
                return w.into_exact();
            }
            self.fast = None;
        }
        let space = &self.space;
        let exact = self.exact.get_or_insert_with(|| Kernel::new(space));
        exact
            .fill(&self.space, lambda.parts(), full)
            .expect("exact arithmetic cannot overflow")
    }
}

/// One equivalence class of fillings of `λ` by `μ` under rearranging bricks
/// within rows and swapping the brick sets of equal-length rows.
///
/// Stored canonically: `rows[j]` is the brick multiset of row `j` of `λ`,
/// and within each run of equal-length rows the multisets are sorted in
/// non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FillingClass {
    lambda: Partition,
    mu: Partition,
    rows: Vec<BrickMultiset>,
}

impl FillingClass {
    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn mu(&self) -> &Partition {
        &self.mu
    }

    /// Brick multiset of each row, in row order.
    pub fn rows(&self) -> &[BrickMultiset] {
        &self.rows
    }

    /// Number of bricks of length `len` in row `row`.
    pub fn alpha(&self, len: u32, row: usize) -> u32 {
        self.rows[row].count(len)
    }

    /// Number of bricks in each row.
    pub fn r(&self) -> Vec<u32> {
        self.rows.iter().map(BrickMultiset::len).collect()
    }

    /// Sizes of the groups of identically filled rows among the rows of
    /// length `len`; a partition of the multiplicity of `len` in `λ`.
    pub fn gamma(&self, len: u32) -> Partition {
        let mut sizes = Vec::new();
        let mut prev: Option<&BrickMultiset> = None;
        for (row, bricks) in self.lambda.parts().iter().zip(&self.rows) {
            if *row != len {
                continue;
            }
            match prev {
                Some(p) if p == bricks => *sizes.last_mut().unwrap() += 1,
                _ => sizes.push(1),
            }
            prev = Some(bricks);
        }
        Partition::new(sizes).expect("group sizes are positive")
    }

    /// All `γ` parts gathered into one partition of `k(λ)`.
    pub fn delta(&self) -> Partition {
        let parts = self
            .lambda
            .grouped()
            .into_iter()
            .flat_map(|(len, _)| self.gamma(len).parts().to_vec())
            .collect();
        Partition::new(parts).expect("group sizes are positive")
    }
}

/// All equivalence classes of fillings of `λ` by `μ`, each exactly once.
pub fn enumerate_filling_classes(lambda: &Partition, mu: &Partition) -> Result<Vec<FillingClass>> {
    if lambda.q() != mu.q() {
        return Err(Error::SizesDiffer(lambda.q(), mu.q()));
    }
    let space = SubsetSpace::new(&BrickMultiset::from_partition(mu));
    let mut out = Vec::new();
    let mut chosen: Vec<BrickMultiset> = Vec::with_capacity(lambda.k());
    classes_from(&space, lambda.parts(), 0, space.full_key(), &mut chosen, &mut |rows| {
        out.push(FillingClass {
            lambda: lambda.clone(),
            mu: mu.clone(),
            rows: rows.to_vec(),
        })
    });
    Ok(out)
}

fn classes_from(
    space: &SubsetSpace,
    rows: &[u32],
    row: usize,
    available: u64,
    chosen: &mut Vec<BrickMultiset>,
    emit: &mut impl FnMut(&[BrickMultiset]),
) {
    if row == rows.len() {
        if available == 0 {
            emit(chosen);
        }
        return;
    }
    let mut keys = Vec::new();
    space.for_each_with_mass(available, rows[row], &mut |key| keys.push(key));
    for key in keys {
        let bricks = space.to_multiset(key);
        if row > 0 && rows[row] == rows[row - 1] && bricks > chosen[row - 1] {
            continue;
        }
        chosen.push(bricks);
        classes_from(space, rows, row + 1, available - key, chosen, emit);
        chosen.pop();
    }
}

/// Total weight of the fillings in one class:
/// `Π_i β_i!/γ(F,i)! · Π_j row_weight_sum(λ_j, row j)`.
pub fn class_weight_sum(class: &FillingClass) -> ExactInt {
    let mut total = ExactInt::one();
    for (len, beta) in class.lambda.grouped() {
        total = total * factorial(beta as u64) / factorial_of_partition(&class.gamma(len));
    }
    for (&len, bricks) in class.lambda.parts().iter().zip(&class.rows) {
        total *= row_weight_sum(len, bricks).expect("class rows are filled exactly");
    }
    total
}

/// Coefficients of `m_μ` in the power-sum basis, zero entries omitted:
/// `m_μ = Σ_λ (-1)^{k(μ)-k(λ)} w(λ,μ)/z_λ · p_λ`.
pub fn m_to_p_expansion(mu: &Partition) -> BTreeMap<Partition, ExactRat> {
    let mut weigher = FillingWeigher::new(mu);
    let mut out = BTreeMap::new();
    for lambda in partitions_of(mu.q(), None) {
        let w = weigher.weight(&lambda);
        if w.is_zero() {
            continue;
        }
        let sign = if (mu.k() + lambda.k()).is_multiple_of(2) { w } else { -w };
        out.insert(lambda.clone(), ExactRat::new(sign, z_of(&lambda)));
    }
    out
}

/// `m_μ` evaluated at `point` (all further variables zero), summing over
/// the distinct placements of the parts of `μ` on the coordinates.
pub fn monomial_at(mu: &Partition, point: &[ExactInt]) -> ExactInt {
    if mu.k() > point.len() {
        return ExactInt::zero();
    }
    let mut exponents: Vec<u32> = mu.parts().to_vec();
    exponents.resize(point.len(), 0);
    exponents.sort_unstable();
    let mut total = ExactInt::zero();
    loop {
        total += point
            .iter()
            .zip(&exponents)
            .fold(ExactInt::one(), |acc, (z, &e)| acc * z.pow(e));
        if !next_permutation(&mut exponents) {
            break;
        }
    }
    total
}

/// `p_λ` evaluated at `point`.
pub fn power_sum_at(lambda: &Partition, point: &[ExactInt]) -> ExactInt {
    lambda.parts().iter().fold(ExactInt::one(), |acc, &part| {
        acc * point.iter().map(|z| z.pow(part)).sum::<ExactInt>()
    })
}

/// Lexicographic successor; returns `false` after the last arrangement.
fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    let Some(i) = xs.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = xs.iter().rposition(|x| *x > xs[i]).expect("pivot has a successor");
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

/// A point where the direct and expanded evaluations of some `m_μ` differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct M2pCounterexample {
    pub mu: Partition,
    pub point: Vec<ExactInt>,
    pub direct: ExactInt,
    pub expanded: ExactRat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct M2pReport {
    pub q: u32,
    pub checks: usize,
    pub counterexample: Option<M2pCounterexample>,
}

impl M2pReport {
    pub fn agrees(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks one `μ` at one point: returns the direct value and the value of
/// the power-sum expansion.
pub fn evaluate_both(mu: &Partition, point: &[ExactInt]) -> (ExactInt, ExactRat) {
    let direct = monomial_at(mu, point);
    let expanded = m_to_p_expansion(mu)
        .into_iter()
        .map(|(lambda, c)| c * ExactRat::from_integer(power_sum_at(&lambda, point)))
        .fold(ExactRat::zero(), |acc, x| acc + x);
    (direct, expanded)
}

/// Evaluates every `m_μ`, `μ ⊢ q`, both directly and through its power-sum
/// expansion at `trials` pseudo-random integer points with `q` nonzero
/// coordinates drawn from `[-9, 9]`.
pub fn verify_m2p(q: u32, trials: usize, seed: u64) -> Result<M2pReport> {
    if !(1..=8).contains(&q) {
        return Err(Error::OutOfRange(format!("m2p degree {q} outside 1..=8")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = 0;
    for mu in partitions_of(q, None) {
        let expansion = m_to_p_expansion(&mu);
        for _ in 0..trials {
            let point: Vec<ExactInt> = (0..q).map(|_| ExactInt::from(rng.gen_range(-9i64..=9))).collect();
            let direct = monomial_at(&mu, &point);
            let expanded = expansion
                .iter()
                .map(|(lambda, c)| c * ExactRat::from_integer(power_sum_at(lambda, &point)))
                .fold(ExactRat::zero(), |acc, x| acc + x);
            checks += 1;
            if ExactRat::from_integer(direct.clone()) != expanded {
                return Ok(M2pReport {
                    q,
                    checks,
                    counterexample: Some(M2pCounterexample {
                        mu,
                        point,
                        direct,
                        expanded,
                    }),
                });
            }
        }
    }
    Ok(M2pReport {
        q,
        checks,
        counterexample: None,
    })
}

/// Sign of `(-1)^{a-b}` applied to `x`.
pub(crate) fn signed(x: ExactRat, a: usize, b: usize) -> ExactRat {
    if (a + b).is_multiple_of(2) {
        x
    } else {
        -x
    }
}
