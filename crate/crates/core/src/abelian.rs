//! The abelian factor and its quotient family.
//!
//! The carrier is the free abelian group on generators `a_i`, `b_i`, `c_i`
//! for every index `i`, written additively. A finite stage table assigns
//! some indices a relation `p_i^t a_i = ±q_i^t b_i` (the sign taken from
//! the recorded bit), where `p_i`, `q_i`, `r_i` are the odd primes at
//! positions `3i`, `3i+1`, `3i+2`. The base quotient `R` imposes exactly
//! those relations; five further quotients per index add one relation each:
//!
//! * `V(i)`: `p_i a_i = 0`
//! * `W(i)`: `q_i b_i = 0`
//! * `X(i)`: `r_i c_i = 0`
//! * `Y(i)`: `a_i = c_i`
//! * `Z(i)`: `b_i = c_i`
//!
//! All relations live inside a single 3-generator block, so each quotient's
//! word problem reduces to Hermite-normal-form coset reduction of a tiny
//! integer lattice per block. Coefficients are arbitrary-precision: the
//! relation coefficients grow as `p_i^t` with the stage.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Which of the three generators of a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorKind {
    Alpha,
    Beta,
    Gamma,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 3] = [
        GeneratorKind::Alpha,
        GeneratorKind::Beta,
        GeneratorKind::Gamma,
    ];

    /// Column of this generator inside its block's coefficient vector.
    pub fn column(self) -> usize {
        match self {
            GeneratorKind::Alpha => 0,
            GeneratorKind::Beta => 1,
            GeneratorKind::Gamma => 2,
        }
    }

    /// Letter used by the text grammar (`a`, `b`, `c`).
    pub fn symbol(self) -> char {
        match self {
            GeneratorKind::Alpha => 'a',
            GeneratorKind::Beta => 'b',
            GeneratorKind::Gamma => 'c',
        }
    }
}

/// One generator of the free abelian carrier.
///
/// The total order is by index first, then `Alpha < Beta < Gamma`; this is
/// the order used everywhere a deterministic serialization is needed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorId {
    pub index: u32,
    pub kind: GeneratorKind,
}

impl GeneratorId {
    pub fn alpha(index: u32) -> Self {
        GeneratorId { index, kind: GeneratorKind::Alpha }
    }
    pub fn beta(index: u32) -> Self {
        GeneratorId { index, kind: GeneratorKind::Beta }
    }
    pub fn gamma(index: u32) -> Self {
        GeneratorId { index, kind: GeneratorKind::Gamma }
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.symbol(), self.index)
    }
}

/// A finitely supported integer vector over the generators.
///
/// Invariants: terms are sorted by `GeneratorId` and never hold a zero
/// coefficient, so structural equality is equality of maps and the empty
/// vector is the additive identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbelianElement {
    terms: Vec<(GeneratorId, BigInt)>,
}

impl AbelianElement {
    pub fn zero() -> Self {
        AbelianElement { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Single generator with coefficient one.
    pub fn unit(gen: GeneratorId) -> Self {
        AbelianElement { terms: vec![(gen, BigInt::from(1))] }
    }

    /// Single generator with an arbitrary coefficient.
    pub fn scaled(gen: GeneratorId, coeff: impl Into<BigInt>) -> Self {
        let c: BigInt = coeff.into();
        if c.is_zero() {
            AbelianElement::zero()
        } else {
            AbelianElement { terms: vec![(gen, c)] }
        }
    }

    /// Builds an element from arbitrary (generator, coefficient) pairs,
    /// merging duplicates and pruning zeros.
    pub fn from_terms<I, C>(iter: I) -> Self
    where
        I: IntoIterator<Item = (GeneratorId, C)>,
        C: Into<BigInt>,
    {
        let mut map: BTreeMap<GeneratorId, BigInt> = BTreeMap::new();
        for (g, c) in iter {
            let entry = map.entry(g).or_insert_with(BigInt::zero);
            *entry += c.into();
        }
        AbelianElement {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn coeff(&self, gen: GeneratorId) -> BigInt {
        match self.terms.binary_search_by(|(g, _)| g.cmp(&gen)) {
            Ok(pos) => self.terms[pos].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn terms(&self) -> &[(GeneratorId, BigInt)] {
        &self.terms
    }

    /// Iterates the support grouped into per-index blocks of
    /// `[alpha, beta, gamma]` coefficients, in increasing index order.
    pub fn blocks(&self) -> Vec<(u32, [BigInt; 3])> {
        let mut out: Vec<(u32, [BigInt; 3])> = Vec::new();
        for (g, c) in &self.terms {
            match out.last_mut() {
                Some((idx, block)) if *idx == g.index => {
                    block[g.kind.column()] = c.clone();
                }
                _ => {
                    let mut block = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
                    block[g.kind.column()] = c.clone();
                    out.push((g.index, block));
                }
            }
        }
        out
    }

    /// Rebuilds an element from per-block coefficient vectors.
    pub fn from_blocks<I>(blocks: I) -> Self
    where
        I: IntoIterator<Item = (u32, [BigInt; 3])>,
    {
        let mut terms = Vec::new();
        for (index, block) in blocks {
            for kind in GeneratorKind::ALL {
                let c = &block[kind.column()];
                if !c.is_zero() {
                    terms.push((GeneratorId { index, kind }, c.clone()));
                }
            }
        }
        // Block iteration order is ascending, so terms are already sorted.
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        AbelianElement { terms }
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> AbelianElement {
        let k: BigInt = k.into();
        if k.is_zero() {
            return AbelianElement::zero();
        }
        AbelianElement {
            terms: self.terms.iter().map(|(g, c)| (*g, c * &k)).collect(),
        }
    }

    /// True when the support touches no block other than `index`.
    pub fn supported_on_block(&self, index: u32) -> bool {
        self.terms.iter().all(|(g, _)| g.index == index)
    }
}

impl std::ops::Add for &AbelianElement {
    type Output = AbelianElement;
    fn add(self, rhs: &AbelianElement) -> AbelianElement {
        let mut terms = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            match self.terms[i].0.cmp(&rhs.terms[j].0) {
                std::cmp::Ordering::Less => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    terms.push(rhs.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &self.terms[i].1 + &rhs.terms[j].1;
                    if !c.is_zero() {
                        terms.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&rhs.terms[j..]);
        AbelianElement { terms }
    }
}

impl std::ops::Neg for &AbelianElement {
    type Output = AbelianElement;
    fn neg(self) -> AbelianElement {
        AbelianElement {
            terms: self.terms.iter().map(|(g, c)| (*g, -c)).collect(),
        }
    }
}

impl std::ops::Sub for &AbelianElement {
    type Output = AbelianElement;
    fn sub(self, rhs: &AbelianElement) -> AbelianElement {
        self + &(-rhs)
    }
}

/// Shorthand constructors for the three generator families.
pub fn alpha(i: u32) -> AbelianElement {
    AbelianElement::unit(GeneratorId::alpha(i))
}
pub fn beta(i: u32) -> AbelianElement {
    AbelianElement::unit(GeneratorId::beta(i))
}
pub fn gamma(i: u32) -> AbelianElement {
    AbelianElement::unit(GeneratorId::gamma(i))
}

/// The three odd primes attached to one index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeTriple {
    pub p: u64,
    pub q: u64,
    pub r: u64,
}

/// Odd primes at positions `3i`, `3i+1`, `3i+2` of the odd-prime
/// enumeration `3, 5, 7, 11, ...`. The triples partition an initial
/// segment of the odd primes, so they are distinct across indices.
pub fn primes(i: u32) -> PrimeTriple {
    let base = 3 * i as usize;
    let ps = odd_primes(base + 3);
    PrimeTriple { p: ps[base], q: ps[base + 1], r: ps[base + 2] }
}

fn odd_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n: u64 = 3;
    while out.len() < count {
        if is_prime(n) {
            out.push(n);
        }
        n += 2;
    }
    out
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Convergence bit recorded in the stage table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PsiValue {
    Zero,
    One,
}

impl PsiValue {
    pub fn as_u8(self) -> u8 {
        match self {
            PsiValue::Zero => 0,
            PsiValue::One => 1,
        }
    }

    /// Sign of the `b`-side of the relation `p^t a = ±q^t b`.
    pub fn relation_sign(self) -> i8 {
        match self {
            PsiValue::Zero => 1,
            PsiValue::One => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PsiEntry {
    pub stage: u32,
    pub value: PsiValue,
}

/// Finite record of convergences: at most one `(stage, value)` per index,
/// stages starting at 1. A group snapshots its table at construction;
/// relations never change retroactively within one group value.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PsiTable {
    entries: BTreeMap<u32, PsiEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PsiTableError {
    #[error("duplicate entry for index {0}")]
    DuplicateIndex(u32),
    #[error("stage for index {0} must be at least 1")]
    StageTooSmall(u32),
}

impl PsiTable {
    pub fn empty() -> Self {
        PsiTable::default()
    }

    pub fn from_entries<I>(entries: I) -> Result<Self, PsiTableError>
    where
        I: IntoIterator<Item = (u32, u32, PsiValue)>,
    {
        let mut map = BTreeMap::new();
        for (i, stage, value) in entries {
            if stage == 0 {
                return Err(PsiTableError::StageTooSmall(i));
            }
            if map.insert(i, PsiEntry { stage, value }).is_some() {
                return Err(PsiTableError::DuplicateIndex(i));
            }
        }
        Ok(PsiTable { entries: map })
    }

    pub fn single(i: u32, stage: u32, value: PsiValue) -> Result<Self, PsiTableError> {
        PsiTable::from_entries([(i, stage, value)])
    }

    pub fn entry(&self, i: u32) -> Option<PsiEntry> {
        self.entries.get(&i).copied()
    }

    /// True exactly when the table records convergence of index `i` at
    /// stage `t` (not at any other stage).
    pub fn converged_at(&self, i: u32, t: u32) -> bool {
        self.entry(i).map(|e| e.stage == t).unwrap_or(false)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, PsiEntry)> + '_ {
        self.entries.iter().map(|(i, e)| (*i, *e))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Tag selecting one of the six quotients sharing the abelian carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QuotientSpec {
    R,
    V(u32),
    W(u32),
    X(u32),
    Y(u32),
    Z(u32),
}

impl QuotientSpec {
    /// The extra relation row this quotient contributes to `block`, if any.
    fn extra_row(self, block: u32) -> Option<[BigInt; 3]> {
        let triple = primes(block);
        let row = |a: i64, b: i64, c: i64| {
            [BigInt::from(a), BigInt::from(b), BigInt::from(c)]
        };
        match self {
            QuotientSpec::R => None,
            QuotientSpec::V(j) if j == block => Some(row(triple.p as i64, 0, 0)),
            QuotientSpec::W(j) if j == block => Some(row(0, triple.q as i64, 0)),
            QuotientSpec::X(j) if j == block => Some(row(0, 0, triple.r as i64)),
            QuotientSpec::Y(j) if j == block => Some(row(1, 0, -1)),
            QuotientSpec::Z(j) if j == block => Some(row(0, 1, -1)),
            _ => None,
        }
    }
}

/// Hermite-normal-form basis of the relation lattice of one block.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RelationLattice {
    rows: Vec<[BigInt; 3]>,
}

impl RelationLattice {
    pub fn rows(&self) -> &[[BigInt; 3]] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduces a block coefficient vector to its canonical coset
    /// representative: coordinates at pivot columns land in `[0, pivot)`.
    pub fn reduce(&self, mut v: [BigInt; 3]) -> [BigInt; 3] {
        for row in &self.rows {
            let col = pivot_col(row);
            let q = v[col].div_floor(&row[col]);
            if !q.is_zero() {
                for k in 0..3 {
                    v[k] -= &q * &row[k];
                }
            }
        }
        v
    }
}

fn pivot_col(row: &[BigInt; 3]) -> usize {
    row.iter().position(|c| !c.is_zero()).expect("zero row in lattice basis")
}

/// Row-style Hermite normal form of a small integer matrix: echelon rows
/// with positive pivots and entries above each pivot reduced into
/// `[0, pivot)`.
fn hnf(mut m: Vec<[BigInt; 3]>) -> Vec<[BigInt; 3]> {
    m.retain(|row| row.iter().any(|c| !c.is_zero()));
    let mut pivot_row = 0;
    for col in 0..3 {
        if pivot_row >= m.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..m.len() {
                if !m[r][col].is_zero() {
                    best = match best {
                        None => Some(r),
                        Some(b) if m[r][col].abs() < m[b][col].abs() => Some(r),
                        keep => keep,
                    };
                }
            }
            let Some(b) = best else { break };
            m.swap(pivot_row, b);
            let mut finished = true;
            for r in (pivot_row + 1)..m.len() {
                if !m[r][col].is_zero() {
                    let q = m[r][col].div_floor(&m[pivot_row][col]);
                    for k in 0..3 {
                        let sub = &q * &m[pivot_row][k];
                        m[r][k] -= sub;
                    }
                    if !m[r][col].is_zero() {
                        finished = false;
                    }
                }
            }
            if finished {
                break;
            }
        }
        if !m[pivot_row][col].is_zero() {
            if m[pivot_row][col].is_negative() {
                for k in 0..3 {
                    m[pivot_row][k] = -&m[pivot_row][k];
                }
            }
            for r in 0..pivot_row {
                let q = m[r][col].div_floor(&m[pivot_row][col]);
                if !q.is_zero() {
                    for k in 0..3 {
                        let sub = &q * &m[pivot_row][k];
                        m[r][k] -= sub;
                    }
                }
            }
            pivot_row += 1;
        }
    }
    m.truncate(pivot_row);
    m
}

/// HNF basis of the relations on block `i` under the given quotient tag
/// and stage table.
pub fn relation_lattice(spec: QuotientSpec, i: u32, psi: &PsiTable) -> RelationLattice {
    let mut rows = Vec::with_capacity(2);
    if let Some(entry) = psi.entry(i) {
        let triple = primes(i);
        let p_pow = BigInt::from(triple.p).pow(entry.stage);
        let q_pow = BigInt::from(triple.q).pow(entry.stage);
        // value 0: p^t a - q^t b = 0; value 1: p^t a + q^t b = 0.
        let b_coeff = match entry.value {
            PsiValue::Zero => -q_pow,
            PsiValue::One => q_pow,
        };
        rows.push([p_pow, b_coeff, BigInt::zero()]);
    }
    if let Some(extra) = spec.extra_row(i) {
        rows.push(extra);
    }
    RelationLattice { rows: hnf(rows) }
}

/// The five conjugation-closed target sets of scaled generators.
///
/// Each pattern fixes a base vector on block `i` and the primes that must
/// not divide the scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorPattern {
    /// `n * a_i` with `p_i` not dividing `n`.
    AlphaNotP(u32),
    /// `n * b_i` with `q_i` not dividing `n`.
    BetaNotQ(u32),
    /// `n * c_i` with `r_i` not dividing `n`.
    GammaNotR(u32),
    /// `n * (a_i - c_i)` with neither `p_i` nor `r_i` dividing `n`.
    AlphaMinusGamma(u32),
    /// `n * (b_i - c_i)` with neither `q_i` nor `r_i` dividing `n`.
    BetaMinusGamma(u32),
}

impl GeneratorPattern {
    pub fn index(self) -> u32 {
        match self {
            GeneratorPattern::AlphaNotP(i)
            | GeneratorPattern::BetaNotQ(i)
            | GeneratorPattern::GammaNotR(i)
            | GeneratorPattern::AlphaMinusGamma(i)
            | GeneratorPattern::BetaMinusGamma(i) => i,
        }
    }

    /// Base vector `(a, b, c)` of the pattern within its block.
    fn target(self) -> [i64; 3] {
        match self {
            GeneratorPattern::AlphaNotP(_) => [1, 0, 0],
            GeneratorPattern::BetaNotQ(_) => [0, 1, 0],
            GeneratorPattern::GammaNotR(_) => [0, 0, 1],
            GeneratorPattern::AlphaMinusGamma(_) => [1, 0, -1],
            GeneratorPattern::BetaMinusGamma(_) => [0, 1, -1],
        }
    }

    fn forbidden_primes(self) -> Vec<u64> {
        let triple = primes(self.index());
        match self {
            GeneratorPattern::AlphaNotP(_) => vec![triple.p],
            GeneratorPattern::BetaNotQ(_) => vec![triple.q],
            GeneratorPattern::GammaNotR(_) => vec![triple.r],
            GeneratorPattern::AlphaMinusGamma(_) => vec![triple.p, triple.r],
            GeneratorPattern::BetaMinusGamma(_) => vec![triple.q, triple.r],
        }
    }

    /// Base vector as an element, e.g. `a_i - c_i`.
    pub fn base_element(self) -> AbelianElement {
        let i = self.index();
        let t = self.target();
        AbelianElement::from_terms([
            (GeneratorId::alpha(i), t[0]),
            (GeneratorId::beta(i), t[1]),
            (GeneratorId::gamma(i), t[2]),
        ])
    }
}

/// A group built from a snapshot of a stage table.
///
/// All element operations are pure functions of `(element, spec, table)`;
/// the per-(spec, block) relation lattices are memoized behind a lock that
/// tolerates idempotent concurrent writes.
pub struct Group {
    psi: PsiTable,
    lattices: RwLock<HashMap<(QuotientSpec, u32), Arc<RelationLattice>>>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group").field("psi", &self.psi).finish()
    }
}

impl Group {
    pub fn new(psi: PsiTable) -> Self {
        Group { psi, lattices: RwLock::new(HashMap::new()) }
    }

    pub fn psi(&self) -> &PsiTable {
        &self.psi
    }

    pub fn lattice(&self, spec: QuotientSpec, i: u32) -> Arc<RelationLattice> {
        if let Some(l) = self.lattices.read().unwrap().get(&(spec, i)) {
            return Arc::clone(l);
        }
        let lattice = Arc::new(relation_lattice(spec, i, &self.psi));
        let mut cache = self.lattices.write().unwrap();
        Arc::clone(cache.entry((spec, i)).or_insert(lattice))
    }

    /// Canonical coset representative of `e` in the chosen quotient.
    ///
    /// Idempotent, and `normalize(e) == normalize(f)` exactly when `e - f`
    /// lies in the relation lattice.
    pub fn normalize(&self, e: &AbelianElement, spec: QuotientSpec) -> AbelianElement {
        AbelianElement::from_blocks(
            e.blocks()
                .into_iter()
                .map(|(i, v)| (i, self.lattice(spec, i).reduce(v))),
        )
    }

    /// Decides equality in the chosen quotient.
    pub fn equals(&self, e1: &AbelianElement, e2: &AbelianElement, spec: QuotientSpec) -> bool {
        self.normalize(&(e1 - e2), spec).is_zero()
    }

    /// Image of an element of the base quotient under the quotient map to
    /// `target`; an additive homomorphism.
    pub fn quotient_map(&self, e: &AbelianElement, target: QuotientSpec) -> AbelianElement {
        self.normalize(e, target)
    }

    /// If `e` equals `n * base` in the base quotient for the pattern's base
    /// vector, with none of the pattern's primes dividing `n`, returns `n`.
    ///
    /// Equality is tested modulo the base quotient's relations, so the
    /// answer is stable across representatives of the same coset.
    pub fn is_scaled_generator(
        &self,
        e: &AbelianElement,
        pattern: GeneratorPattern,
    ) -> Option<BigInt> {
        let i = pattern.index();
        if !e.supported_on_block(i) {
            return None;
        }
        let ea = e.coeff(GeneratorId::alpha(i));
        let eb = e.coeff(GeneratorId::beta(i));
        let ec = e.coeff(GeneratorId::gamma(i));
        let [va, vb, vc] = pattern.target();

        let n = match self.psi.entry(i) {
            None => {
                // No relation: e must literally equal n * base.
                let n = solve_exact(&ea, va)
                    .or_else(|| solve_exact(&eb, vb))
                    .or_else(|| solve_exact(&ec, vc))?;
                let matches = ea == &n * va && eb == &n * vb && ec == &n * vc;
                if !matches {
                    return None;
                }
                n
            }
            Some(entry) => {
                let triple = primes(i);
                let p_pow = BigInt::from(triple.p).pow(entry.stage);
                // Relation row is (p^t, w, 0) with w = -sign * q^t.
                let w = BigInt::from(triple.q).pow(entry.stage)
                    * BigInt::from(-entry.value.relation_sign());
                // Solve e - n*target = s * row.
                let (n, s) = if vc != 0 {
                    // gamma untouched by the relation pins n.
                    let n = exact_div(&ec, &BigInt::from(vc))?;
                    let s = exact_div(&(&ea - &n * va), &p_pow)?;
                    (n, s)
                } else if vb == 0 {
                    if !ec.is_zero() {
                        return None;
                    }
                    let s = exact_div(&eb, &w)?;
                    (&ea - &s * &p_pow, s)
                } else {
                    if !ec.is_zero() {
                        return None;
                    }
                    let s = exact_div(&ea, &p_pow)?;
                    (&eb - &s * &w, s)
                };
                // Verify all three coordinates.
                let ok = ea == &n * va + &s * &p_pow
                    && eb == &n * vb + &s * &w
                    && ec == &n * vc;
                if !ok {
                    return None;
                }
                n
            }
        };

        for prime in pattern.forbidden_primes() {
            if (&n % prime).is_zero() {
                return None;
            }
        }
        Some(n)
    }
}

/// `value / v` when `v` is ±1, `None` when `v` is 0 (caller falls through).
fn solve_exact(value: &BigInt, v: i64) -> Option<BigInt> {
    match v {
        0 => None,
        1 => Some(value.clone()),
        -1 => Some(-value),
        _ => unreachable!("pattern targets use only 0 and ±1"),
    }
}

/// Exact integer division, `None` on a remainder.
fn exact_div(num: &BigInt, den: &BigInt) -> Option<BigInt> {
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Some(q)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn primes_partition_initial_segment() {
        assert_eq!(primes(0), PrimeTriple { p: 3, q: 5, r: 7 });
        assert_eq!(primes(1), PrimeTriple { p: 11, q: 13, r: 17 });
        assert_eq!(primes(2), PrimeTriple { p: 19, q: 23, r: 29 });
    }

    #[test]
    fn lattice_rows_match_table() {
        let psi = PsiTable::single(0, 1, PsiValue::Zero).unwrap();
        let l = relation_lattice(QuotientSpec::R, 0, &psi);
        assert_eq!(l.rows(), &[[big(3), big(-5), big(0)]]);

        let empty = relation_lattice(QuotientSpec::R, 0, &PsiTable::empty());
        assert!(empty.is_empty());

        let v0 = relation_lattice(QuotientSpec::V(0), 0, &psi);
        assert_eq!(v0.rows(), &[[big(3), big(0), big(0)], [big(0), big(5), big(0)]]);

        // Specs on other blocks add nothing.
        let other = relation_lattice(QuotientSpec::V(1), 0, &psi);
        assert_eq!(other.rows(), &[[big(3), big(-5), big(0)]]);
    }

    #[test]
    fn normalize_examples() {
        let psi = PsiTable::single(0, 1, PsiValue::Zero).unwrap();
        let g = Group::new(psi);
        let e = &alpha(0).scale(3) - &beta(0).scale(5);
        assert!(g.normalize(&e, QuotientSpec::R).is_zero());
        assert_eq!(g.normalize(&alpha(0), QuotientSpec::R), alpha(0));
        assert!(g.normalize(&beta(0).scale(5), QuotientSpec::V(0)).is_zero());
    }

    #[test]
    fn normalize_is_idempotent_and_decides_cosets() {
        let psi = PsiTable::single(0, 2, PsiValue::One).unwrap();
        let g = Group::new(psi);
        for a in -6..=6i64 {
            for b in -6..=6i64 {
                let e = &alpha(0).scale(a) + &beta(0).scale(b);
                let n = g.normalize(&e, QuotientSpec::R);
                assert_eq!(g.normalize(&n, QuotientSpec::R), n);
                assert!(g.equals(&e, &n, QuotientSpec::R));
            }
        }
    }

    #[test]
    fn equals_matches_divisibility_examples() {
        let psi = PsiTable::single(0, 1, PsiValue::Zero).unwrap();
        let g = Group::new(psi);
        assert!(g.equals(&alpha(0).scale(6), &beta(0).scale(10), QuotientSpec::R));
        assert!(!g.equals(&alpha(0).scale(6), &beta(0).scale(11), QuotientSpec::R));
        assert!(g.equals(&gamma(3), &gamma(3), QuotientSpec::Y(2)));
    }

    #[test]
    fn add_and_neg_are_exact() {
        assert_eq!(&alpha(0) + &alpha(0), alpha(0).scale(2));
        let e = &alpha(0).scale(2) - &beta(1);
        assert_eq!(&e + &beta(1), alpha(0).scale(2));
        assert!((-&AbelianElement::zero()).is_zero());
    }

    #[test]
    fn quotient_map_examples() {
        let g = Group::new(PsiTable::empty());
        assert!(g.quotient_map(&alpha(0).scale(3), QuotientSpec::V(0)).is_zero());
        assert_eq!(g.quotient_map(&gamma(0), QuotientSpec::V(0)), gamma(0));
        let img_a = g.quotient_map(&alpha(0), QuotientSpec::Y(0));
        let img_c = g.quotient_map(&gamma(0), QuotientSpec::Y(0));
        assert!(g.equals(&img_a, &img_c, QuotientSpec::Y(0)));
    }

    #[test]
    fn scaled_generator_examples() {
        let g = Group::new(PsiTable::empty());
        assert_eq!(
            g.is_scaled_generator(&alpha(0).scale(2), GeneratorPattern::AlphaNotP(0)),
            Some(big(2))
        );
        assert_eq!(
            g.is_scaled_generator(&alpha(0).scale(3), GeneratorPattern::AlphaNotP(0)),
            None
        );
        let e = &alpha(0).scale(4) - &gamma(0).scale(4);
        assert_eq!(
            g.is_scaled_generator(&e, GeneratorPattern::AlphaMinusGamma(0)),
            Some(big(4))
        );
        assert_eq!(
            g.is_scaled_generator(&gamma(2).scale(-5), GeneratorPattern::GammaNotR(2)),
            Some(big(-5))
        );
        let e = &beta(1).scale(2) - &gamma(1).scale(2);
        assert_eq!(
            g.is_scaled_generator(&e, GeneratorPattern::BetaMinusGamma(1)),
            Some(big(2))
        );
    }

    #[test]
    fn scaled_generator_under_relation() {
        // With the stage-1 relation 3a = 5b, the canonical form of 4a is
        // a + 5b; the solver must still recover n = 4.
        let psi = PsiTable::single(0, 1, PsiValue::Zero).unwrap();
        let g = Group::new(psi);
        let canon = g.normalize(&alpha(0).scale(4), QuotientSpec::R);
        assert_eq!(canon, &alpha(0) + &beta(0).scale(5));
        assert_eq!(
            g.is_scaled_generator(&canon, GeneratorPattern::AlphaNotP(0)),
            Some(big(4))
        );
        // Zero is a multiple of every prime, hence always rejected.
        assert_eq!(
            g.is_scaled_generator(&AbelianElement::zero(), GeneratorPattern::AlphaNotP(0)),
            None
        );
    }

    #[test]
    fn torsion_witness_in_v_quotient() {
        let g = Group::new(PsiTable::empty());
        assert!(g.normalize(&alpha(0).scale(3), QuotientSpec::V(0)).is_zero());
        assert!(!g.normalize(&alpha(0), QuotientSpec::V(0)).is_zero());
    }

    #[test]
    fn psi_table_rejects_bad_input() {
        assert_eq!(
            PsiTable::from_entries([(0, 1, PsiValue::Zero), (0, 2, PsiValue::One)]),
            Err(PsiTableError::DuplicateIndex(0))
        );
        assert_eq!(
            PsiTable::from_entries([(3, 0, PsiValue::Zero)]),
            Err(PsiTableError::StageTooSmall(3))
        );
    }
}
