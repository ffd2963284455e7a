//! Concrete computable left-orders on the product group.
//!
//! The abelian factor gets a bi-order from per-block sign assignments: a
//! block with a recorded relation `p^t a = ±q^t b` embeds into two
//! lexicographic integer coordinates (the relation forces the `b` sign, so
//! only the `a` and `c` signs are free there); a relation-free block embeds
//! into three. Blocks are compared at the lowest differing index. The free
//! factor gets the classical bi-order from truncated non-commutative power
//! series: each letter maps to `1 + x`, its inverse to the alternating
//! geometric series, and words compare at the first differing coefficient
//! in degree-then-lexicographic monomial order. The product order compares
//! tails first and, on ties, the words twisted by the inverse tail's
//! action; that twist makes the order left-invariant.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::abelian::{AbelianElement, Group, PsiTable, PsiValue};
use crate::freewords::{Letter, ReducedWord, Sign};
use crate::semidirect::GroupElement;

/// Signs for one block's three generators, each `+1` or `-1`.
pub type SignTriple = [i8; 3];

pub const ALL_PLUS: SignTriple = [1, 1, 1];

/// Per-index sign assignments pinning down one left-order, with a default
/// triple for indices not listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderConfig {
    default: SignTriple,
    overrides: BTreeMap<u32, SignTriple>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrderConfigError {
    #[error("sign for {place} must be +1 or -1, got {value}")]
    BadSign { place: String, value: i8 },
}

/// A sign assignment incompatible with a recorded relation: the relation
/// `p^t a = q^t b` forces equal `a`/`b` signs, `p^t a = -q^t b` opposite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignCouplingViolation {
    pub index: u32,
    pub value: PsiValue,
    pub signs: SignTriple,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("sign coupling violated at {}", violation_list(.violations))]
pub struct InadmissibleOrder {
    pub violations: Vec<SignCouplingViolation>,
}

fn violation_list(vs: &[SignCouplingViolation]) -> String {
    vs.iter()
        .map(|v| {
            let need = match v.value {
                PsiValue::Zero => "equal",
                PsiValue::One => "opposite",
            };
            format!(
                "index {} (needs {} a/b signs, got [{}, {}])",
                v.index, need, v.signs[0], v.signs[1]
            )
        })
        .collect::<Vec<_>>()
        .join(", ")
}

impl OrderConfig {
    pub fn all_plus() -> Self {
        OrderConfig { default: ALL_PLUS, overrides: BTreeMap::new() }
    }

    pub fn new(
        default: SignTriple,
        overrides: impl IntoIterator<Item = (u32, SignTriple)>,
    ) -> Result<Self, OrderConfigError> {
        check_triple(default, "default")?;
        let overrides: BTreeMap<u32, SignTriple> = overrides.into_iter().collect();
        for (i, t) in &overrides {
            check_triple(*t, &format!("index {i}"))?;
        }
        Ok(OrderConfig { default, overrides })
    }

    pub fn signs(&self, index: u32) -> SignTriple {
        self.overrides.get(&index).copied().unwrap_or(self.default)
    }

    pub fn default_signs(&self) -> SignTriple {
        self.default
    }

    pub fn overrides(&self) -> &BTreeMap<u32, SignTriple> {
        &self.overrides
    }

    /// Checks the forced sign coupling against every recorded relation,
    /// reporting all violating indices.
    pub fn validate_against(&self, psi: &PsiTable) -> Result<(), InadmissibleOrder> {
        let mut violations = Vec::new();
        for (i, entry) in psi.iter() {
            let s = self.signs(i);
            let coupled = match entry.value {
                PsiValue::Zero => s[0] == s[1],
                PsiValue::One => s[0] == -s[1],
            };
            if !coupled {
                violations.push(SignCouplingViolation {
                    index: i,
                    value: entry.value,
                    signs: s,
                });
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(InadmissibleOrder { violations })
        }
    }
}

fn check_triple(t: SignTriple, place: &str) -> Result<(), OrderConfigError> {
    for v in t {
        if v != 1 && v != -1 {
            return Err(OrderConfigError::BadSign { place: place.to_string(), value: v });
        }
    }
    Ok(())
}

impl Group {
    /// Total bi-order on the base quotient: compare the difference's
    /// lowest-index nonzero block through its sign embedding.
    ///
    /// When a block carries a relation the embedding uses only the `a` and
    /// `c` signs (the `b` sign is forced by the relation), so the
    /// comparison is defined for every configuration; admissibility of the
    /// declared signs is a separate load-time check.
    pub fn cmp_abelian(
        &self,
        e1: &AbelianElement,
        e2: &AbelianElement,
        cfg: &OrderConfig,
    ) -> Ordering {
        let diff = e1 - e2;
        for (index, coords) in diff.blocks() {
            let signs = cfg.signs(index);
            for coord in self.block_embedding(index, coords, signs) {
                match coord.sign() {
                    num_bigint::Sign::Plus => return Ordering::Greater,
                    num_bigint::Sign::Minus => return Ordering::Less,
                    num_bigint::Sign::NoSign => {}
                }
            }
        }
        Ordering::Equal
    }

    /// Embeds one block's coefficients into lexicographic coordinates.
    fn block_embedding(&self, index: u32, coords: [BigInt; 3], signs: SignTriple) -> Vec<BigInt> {
        let [l, m, n] = coords;
        match self.psi().entry(index) {
            Some(entry) => {
                let triple = crate::abelian::primes(index);
                let p_pow = BigInt::from(triple.p).pow(entry.stage);
                let q_pow = BigInt::from(triple.q).pow(entry.stage);
                let eps = BigInt::from(entry.value.relation_sign());
                // a -> s_a * q^t, b -> s_a * eps * p^t, c -> s_c.
                let first = BigInt::from(signs[0]) * (&l * q_pow + &m * eps * p_pow);
                let second = BigInt::from(signs[2]) * n;
                vec![first, second]
            }
            None => vec![
                BigInt::from(signs[0]) * l,
                BigInt::from(signs[1]) * m,
                BigInt::from(signs[2]) * n,
            ],
        }
    }

    /// Left-order on the whole group: tails first, then the twisted words.
    pub fn cmp_group(&self, r: &GroupElement, s: &GroupElement, cfg: &OrderConfig) -> Ordering {
        match self.cmp_abelian(&r.tail, &s.tail, cfg) {
            Ordering::Equal => {
                debug_assert_eq!(r.tail, s.tail, "canonical tails compare equal only when identical");
                let twist = -&r.tail;
                cmp_free(&self.act(&twist, &r.word), &self.act(&twist, &s.word))
            }
            other => other,
        }
    }

    /// Sign of an element under the configured order: -1, 0 or +1.
    pub fn sign_of(&self, r: &GroupElement, cfg: &OrderConfig) -> i8 {
        match self.cmp_group(r, &self.identity(), cfg) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }
}

/// Bi-order on reduced words via truncated power-series expansion.
///
/// Coefficients are compared degree by degree, and within a degree in
/// lexicographic monomial order; distinct reduced words of lengths `la`,
/// `lb` always separate by degree `max(la, lb)`, well inside the
/// truncation `la + lb + 1`.
pub fn cmp_free(a: &ReducedWord, b: &ReducedWord) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let table = letter_table(&[a, b]);
    let ra = ranked(a, &table);
    let rb = ranked(b, &table);
    let max_degree = a.len() + b.len() + 1;
    for degree in 1..=max_degree {
        let ca = homogeneous_part(&ra, degree);
        let cb = homogeneous_part(&rb, degree);
        let mut keys: Vec<&Vec<u16>> = ca.keys().chain(cb.keys()).collect();
        keys.sort();
        keys.dedup();
        for key in keys {
            let zero = BigInt::zero();
            let va = ca.get(key).unwrap_or(&zero);
            let vb = cb.get(key).unwrap_or(&zero);
            match va.cmp(vb) {
                Ordering::Equal => {}
                other => return other,
            }
        }
    }
    debug_assert!(false, "distinct reduced words must differ within the truncation");
    Ordering::Equal
}

/// Truncated non-commutative series of one word: monomials (sequences of
/// letter ranks over the word's own sorted letter table) mapped to integer
/// coefficients, up to the given total degree. The empty monomial always
/// carries coefficient one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnusKey {
    pub degree: usize,
    pub letters: Vec<Letter>,
    pub terms: BTreeMap<Vec<u16>, BigInt>,
}

pub fn magnus_key(w: &ReducedWord, degree: usize) -> MagnusKey {
    let table = letter_table(&[w]);
    let terms = expansion(&ranked(w, &table), degree);
    MagnusKey { degree, letters: table, terms }
}

fn letter_table(words: &[&ReducedWord]) -> Vec<Letter> {
    let mut letters: Vec<Letter> = words
        .iter()
        .flat_map(|w| w.letters().iter().map(|sl| sl.letter.clone()))
        .collect();
    letters.sort();
    letters.dedup();
    letters
}

fn ranked(w: &ReducedWord, table: &[Letter]) -> Vec<(u16, Sign)> {
    w.letters()
        .iter()
        .map(|sl| {
            let rank = table.binary_search(&sl.letter).expect("letter in table") as u16;
            (rank, sl.sign)
        })
        .collect()
}

/// Full expansion truncated at total degree `max_degree`.
fn expansion(word: &[(u16, Sign)], max_degree: usize) -> BTreeMap<Vec<u16>, BigInt> {
    let mut poly: BTreeMap<Vec<u16>, BigInt> = BTreeMap::new();
    poly.insert(Vec::new(), BigInt::one());
    for &(rank, sign) in word {
        let mut next: BTreeMap<Vec<u16>, BigInt> = BTreeMap::new();
        for (mono, coeff) in &poly {
            let room = max_degree - mono.len();
            match sign {
                Sign::Pos => {
                    // 1 + x
                    add_term(&mut next, mono.clone(), coeff.clone());
                    if room >= 1 {
                        let mut m = mono.clone();
                        m.push(rank);
                        add_term(&mut next, m, coeff.clone());
                    }
                }
                Sign::Neg => {
                    // 1 - x + x^2 - ...
                    let mut m = mono.clone();
                    let mut c = coeff.clone();
                    add_term(&mut next, m.clone(), c.clone());
                    for _ in 0..room {
                        m.push(rank);
                        c = -c;
                        add_term(&mut next, m.clone(), c.clone());
                    }
                }
            }
        }
        poly = next;
    }
    poly
}

fn add_term(poly: &mut BTreeMap<Vec<u16>, BigInt>, mono: Vec<u16>, coeff: BigInt) {
    use std::collections::btree_map::Entry;
    match poly.entry(mono) {
        Entry::Vacant(v) => {
            v.insert(coeff);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += coeff;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn homogeneous_part(word: &[(u16, Sign)], degree: usize) -> BTreeMap<Vec<u16>, BigInt> {
    expansion(word, degree)
        .into_iter()
        .filter(|(m, _)| m.len() == degree)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{alpha, beta, gamma, AbelianElement};
    use crate::freewords::{Family, SignedLetter};

    fn plain() -> Group {
        Group::new(PsiTable::empty())
    }

    #[test]
    fn abelian_comparison_examples() {
        let g = plain();
        let cfg = OrderConfig::all_plus();
        assert_eq!(g.cmp_abelian(&alpha(0), &AbelianElement::zero(), &cfg), Ordering::Greater);
        let neg_gamma = -&gamma(2);
        assert_eq!(g.cmp_abelian(&neg_gamma, &AbelianElement::zero(), &cfg), Ordering::Less);

        let rel = Group::new(PsiTable::single(0, 1, PsiValue::Zero).unwrap());
        assert_eq!(
            rel.cmp_abelian(&alpha(0).scale(3), &beta(0).scale(5), &cfg),
            Ordering::Equal
        );
    }

    #[test]
    fn abelian_order_is_bi_invariant_on_samples() {
        let g = Group::new(PsiTable::single(0, 2, PsiValue::One).unwrap());
        let cfg = OrderConfig::new([1, -1, 1], []).unwrap();
        cfg.validate_against(g.psi()).unwrap();
        let pool = [
            AbelianElement::zero(),
            alpha(0),
            &beta(0) - &gamma(1),
            &alpha(0).scale(-4) + &gamma(0),
            &beta(1).scale(2) + &alpha(2),
        ];
        for a in &pool {
            for b in &pool {
                let base = g.cmp_abelian(a, b, &cfg);
                for t in &pool {
                    assert_eq!(g.cmp_abelian(&(a + t), &(b + t), &cfg), base);
                }
            }
        }
    }

    #[test]
    fn magnus_comparison_examples() {
        let g = plain();
        let u0 = ReducedWord::single(SignedLetter::pos(g.u_letter(0)));
        let e = ReducedWord::empty();
        assert_eq!(cmp_free(&u0, &e), Ordering::Greater);
        assert_eq!(cmp_free(&u0.inverse(), &e), Ordering::Less);
        assert_eq!(cmp_free(&u0, &u0), Ordering::Equal);
        let u0u0 = u0.concat(&u0);
        assert_eq!(cmp_free(&u0, &u0u0), Ordering::Less);
    }

    #[test]
    fn magnus_key_has_unit_constant_term() {
        let g = plain();
        let u0 = SignedLetter::pos(g.u_letter(0));
        let u1 = SignedLetter::neg(g.u_letter(1));
        let w = ReducedWord::reduce([u0, u1]);
        let key = magnus_key(&w, 3);
        assert_eq!(key.terms.get(&Vec::new()), Some(&BigInt::one()));
    }

    #[test]
    fn magnus_separates_commutator_like_words() {
        // u0 u1 and u1 u0 agree in degree 1 and differ in degree 2.
        let g = plain();
        let u0 = SignedLetter::pos(g.u_letter(0));
        let u1 = SignedLetter::pos(g.u_letter(1));
        let ab = ReducedWord::reduce([u0.clone(), u1.clone()]);
        let ba = ReducedWord::reduce([u1, u0]);
        assert_ne!(cmp_free(&ab, &ba), Ordering::Equal);
        assert_eq!(cmp_free(&ab, &ba), cmp_free(&ba, &ab).reverse());
    }

    #[test]
    fn group_order_examples() {
        let g = plain();
        let cfg = OrderConfig::all_plus();
        let a0 = g.tail_element(alpha(0));
        assert_eq!(g.cmp_group(&a0, &g.identity(), &cfg), Ordering::Greater);

        let u0 = g.word_element(ReducedWord::single(SignedLetter::pos(g.u_letter(0))));
        let u0u0 = g.mul(&u0, &u0);
        assert_eq!(g.cmp_group(&u0, &u0u0, &cfg), Ordering::Less);
        assert_eq!(g.cmp_group(&u0, &u0, &cfg), Ordering::Equal);
    }

    #[test]
    fn sign_examples_and_forced_coupling() {
        let plain_group = plain();
        let cfg = OrderConfig::all_plus();
        assert_eq!(plain_group.sign_of(&plain_group.tail_element(alpha(0)), &cfg), 1);
        assert_eq!(plain_group.sign_of(&plain_group.identity(), &cfg), 0);

        // With value-1 convergence the relation forces opposite signs.
        let g = Group::new(PsiTable::single(0, 1, PsiValue::One).unwrap());
        let admissible = OrderConfig::new([1, -1, 1], []).unwrap();
        admissible.validate_against(g.psi()).unwrap();
        assert_eq!(g.sign_of(&g.tail_element(alpha(0)), &admissible), 1);
        assert_eq!(g.sign_of(&g.tail_element(beta(0)), &admissible), -1);

        // Value-0 convergence forces equal signs for every admissible config.
        let g0 = Group::new(PsiTable::single(0, 2, PsiValue::Zero).unwrap());
        for sa in [1i8, -1] {
            for sc in [1i8, -1] {
                let cfg = OrderConfig::new([sa, sa, sc], []).unwrap();
                cfg.validate_against(g0.psi()).unwrap();
                assert_eq!(
                    g0.sign_of(&g0.tail_element(alpha(0)), &cfg),
                    g0.sign_of(&g0.tail_element(beta(0)), &cfg)
                );
            }
        }
    }

    #[test]
    fn inadmissible_configs_are_reported_per_index() {
        let psi = PsiTable::from_entries([(0, 1, PsiValue::Zero), (2, 1, PsiValue::One)]).unwrap();
        let cfg = OrderConfig::new([1, -1, 1], [(2, [1, -1, 1])]).unwrap();
        // Index 0 needs equal signs (violated by the default), index 2 is fine.
        let err = cfg.validate_against(&psi).unwrap_err();
        assert_eq!(err.violations.len(), 1);
        assert_eq!(err.violations[0].index, 0);

        let cfg2 = OrderConfig::new([1, -1, 1], [(2, [1, 1, 1])]).unwrap();
        let err2 = cfg2.validate_against(&psi).unwrap_err();
        assert_eq!(err2.violations.iter().map(|v| v.index).collect::<Vec<_>>(), vec![0, 2]);
    }

    #[test]
    fn left_invariance_on_a_small_pool() {
        let g = Group::new(PsiTable::single(0, 1, PsiValue::Zero).unwrap());
        let cfg = OrderConfig::all_plus();
        let v0 = SignedLetter::pos(g.letter(Family::V, 0, AbelianElement::zero()));
        let u0 = SignedLetter::pos(g.u_letter(0));
        let pool = [
            g.identity(),
            g.tail_element(alpha(0)),
            g.tail_element(-&gamma(0)),
            g.word_element(ReducedWord::reduce([u0.clone(), v0.clone()])),
            g.element(ReducedWord::single(v0.inverse()), beta(0)),
            g.word_element(ReducedWord::single(u0)),
        ];
        for r in &pool {
            for s in &pool {
                let base = g.cmp_group(r, s, &cfg);
                assert_eq!(base, g.cmp_group(s, r, &cfg).reverse());
                for t in &pool {
                    assert_eq!(g.cmp_group(&g.mul(t, r), &g.mul(t, s), &cfg), base);
                }
            }
        }
    }
}
