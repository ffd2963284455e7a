//! Arithmetic in the semidirect product of the free factor by the abelian
//! factor, plus the closed-form membership tests for conjugates of the
//! abelian factor and of the five scaled-generator sets.
//!
//! Elements are pairs `(word, tail)` with the word freely reduced and the
//! tail canonical in the base quotient; this normal form is unique, so
//! structural equality is group equality. Multiplication is
//! `(n, g)(m, h) = (n * act(g, m), g + h)`.

use num_bigint::BigInt;

use crate::abelian::{AbelianElement, GeneratorPattern, Group, QuotientSpec};
use crate::freewords::ReducedWord;

/// An element of the product group in unique normal form.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub word: ReducedWord,
    pub tail: AbelianElement,
}

impl GroupElement {
    pub fn is_identity(&self) -> bool {
        self.word.is_empty() && self.tail.is_zero()
    }
}

/// Witness that an element is a conjugate of the abelian factor:
/// conjugating `(empty, core)` by `(conjugator, 0)` reconstructs it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugateCertificate {
    pub conjugator: ReducedWord,
    pub core: AbelianElement,
}

impl Group {
    /// Builds an element, canonicalizing the tail.
    pub fn element(&self, word: ReducedWord, tail: AbelianElement) -> GroupElement {
        GroupElement { word, tail: self.normalize(&tail, QuotientSpec::R) }
    }

    /// The element `(empty, tail)` of the abelian factor.
    pub fn tail_element(&self, tail: AbelianElement) -> GroupElement {
        self.element(ReducedWord::empty(), tail)
    }

    /// The element `(word, 0)` of the free factor.
    pub fn word_element(&self, word: ReducedWord) -> GroupElement {
        GroupElement { word, tail: AbelianElement::zero() }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::default()
    }

    pub fn mul(&self, r: &GroupElement, s: &GroupElement) -> GroupElement {
        GroupElement {
            word: r.word.concat(&self.act(&r.tail, &s.word)),
            tail: self.normalize(&(&r.tail + &s.tail), QuotientSpec::R),
        }
    }

    pub fn inv(&self, r: &GroupElement) -> GroupElement {
        let neg_tail = self.normalize(&-(&r.tail), QuotientSpec::R);
        GroupElement {
            word: self.act(&neg_tail, &r.word.inverse()),
            tail: neg_tail,
        }
    }

    /// Conjugate `t r t^{-1}`.
    pub fn conj(&self, r: &GroupElement, t: &GroupElement) -> GroupElement {
        self.mul(&self.mul(t, r), &self.inv(t))
    }

    /// Exact power by repeated squaring; negative exponents invert first.
    pub fn pow(&self, r: &GroupElement, k: i64) -> GroupElement {
        let mut base = if k < 0 { self.inv(r) } else { r.clone() };
        let mut exp = k.unsigned_abs();
        let mut acc = self.identity();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn commutes(&self, r: &GroupElement, s: &GroupElement) -> bool {
        self.mul(r, s) == self.mul(s, r)
    }

    /// Decides membership in the conjugate closure of the abelian factor
    /// and returns the minimal certificate.
    ///
    /// An element lies in the closure exactly when its word is empty, or
    /// has even length `2k` with the last `k` letters equal to the image of
    /// the inverted first `k` letters under the action of the tail. The
    /// returned conjugator is the first half; minimality holds because a
    /// reduced word of that shape cannot end its first half in a letter
    /// fixed by the tail's action.
    pub fn in_hr_conjugates(&self, r: &GroupElement) -> Option<ConjugateCertificate> {
        let n = r.word.len();
        if n % 2 != 0 {
            return None;
        }
        let half = n / 2;
        let prefix = r.word.slice(0..half);
        let suffix = r.word.slice(half..n);
        if suffix == self.act(&r.tail, &prefix.inverse()) {
            Some(ConjugateCertificate { conjugator: prefix, core: r.tail.clone() })
        } else {
            None
        }
    }

    /// Membership in the conjugate closure of one scaled-generator set:
    /// the certificate shape is as for the abelian factor, and the core
    /// must be the right scaled generator.
    pub fn in_set_conjugates(
        &self,
        r: &GroupElement,
        pattern: GeneratorPattern,
    ) -> Option<(ConjugateCertificate, BigInt)> {
        let cert = self.in_hr_conjugates(r)?;
        let n = self.is_scaled_generator(&cert.core, pattern)?;
        Some((cert, n))
    }

    /// Checks, for this element, the implication "square has empty word
    /// implies word is empty". It holds for every element (the letter
    /// action preserves signs, so a word cannot cancel its own image);
    /// exposed so the exhaustive harness can confirm it.
    pub fn square_root_in_hr(&self, r: &GroupElement) -> bool {
        !self.pow(r, 2).word.is_empty() || r.word.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{alpha, beta, gamma, AbelianElement, PsiTable, PsiValue};
    use crate::freewords::{Family, SignedLetter};

    fn setup() -> Group {
        Group::new(PsiTable::empty())
    }

    #[test]
    fn mul_applies_the_action() {
        let g = setup();
        let v00 = g.word_element(SignedLetter::pos(g.letter(Family::V, 0, AbelianElement::zero())).into());
        let a0 = g.tail_element(alpha(0));

        let left = g.mul(&a0, &v00);
        let expected_word: ReducedWord =
            SignedLetter::pos(g.letter(Family::V, 0, alpha(0))).into();
        assert_eq!(left, g.element(expected_word, alpha(0)));

        let right = g.mul(&v00, &a0);
        assert_eq!(right, g.element(v00.word.clone(), alpha(0)));

        assert_eq!(g.mul(&left, &g.identity()), left);
    }

    #[test]
    fn inv_examples() {
        let g = setup();
        let a0 = g.tail_element(alpha(0));
        assert_eq!(g.inv(&a0), g.tail_element(-&alpha(0)));

        let u0 = SignedLetter::pos(g.u_letter(0));
        let r = g.element(u0.clone().into(), alpha(0));
        let expected = g.element(ReducedWord::single(u0.inverse()), -&alpha(0));
        assert_eq!(g.inv(&r), expected);
        assert!(g.mul(&r, &g.inv(&r)).is_identity());
        assert!(g.mul(&g.inv(&r), &r).is_identity());
    }

    #[test]
    fn distinct_free_generators_do_not_commute() {
        let g = setup();
        let u0 = g.word_element(SignedLetter::pos(g.u_letter(0)).into());
        let u1 = g.word_element(SignedLetter::pos(g.u_letter(1)).into());
        assert!(!g.commutes(&u0, &u1));
        assert!(g.commutes(&u0, &u0));
    }

    #[test]
    fn pow_matches_iterated_mul() {
        let psi = PsiTable::single(0, 1, PsiValue::Zero).unwrap();
        let g = Group::new(psi);
        let v = SignedLetter::pos(g.letter(Family::V, 0, AbelianElement::zero()));
        let r = g.element(v.into(), &alpha(0) + &gamma(1));
        let mut acc = g.identity();
        for k in 0..=5 {
            assert_eq!(g.pow(&r, k), acc);
            assert_eq!(g.pow(&r, -k), g.inv(&acc));
            acc = g.mul(&acc, &r);
        }
    }

    #[test]
    fn hr_membership_examples() {
        let g = setup();

        let pure = g.tail_element(&gamma(2) - &alpha(0));
        let cert = g.in_hr_conjugates(&pure).unwrap();
        assert!(cert.conjugator.is_empty());
        assert_eq!(cert.core, pure.tail);

        // (v_{0,0}, 0) (0, a0) (v_{0,0}, 0)^{-1} has the half-split shape.
        let v00 = g.word_element(SignedLetter::pos(g.letter(Family::V, 0, AbelianElement::zero())).into());
        let r = g.conj(&g.tail_element(alpha(0)), &v00);
        assert_eq!(r.word.len(), 2);
        let cert = g.in_hr_conjugates(&r).unwrap();
        assert_eq!(cert.conjugator, v00.word);
        assert_eq!(cert.core, alpha(0));

        let odd = g.element(SignedLetter::pos(g.u_letter(0)).into(), alpha(0));
        assert!(g.in_hr_conjugates(&odd).is_none());
    }

    #[test]
    fn set_membership_examples() {
        let g = setup();
        let two_alpha = g.tail_element(alpha(0).scale(2));
        let (cert, n) = g
            .in_set_conjugates(&two_alpha, GeneratorPattern::AlphaNotP(0))
            .unwrap();
        assert!(cert.conjugator.is_empty());
        assert_eq!(n, BigInt::from(2));

        // Conjugation preserves membership and the scalar.
        let t = g.element(
            ReducedWord::reduce([
                SignedLetter::pos(g.u_letter(0)),
                SignedLetter::pos(g.letter(Family::V, 0, AbelianElement::zero())),
            ]),
            AbelianElement::zero(),
        );
        let moved = g.conj(&two_alpha, &t);
        let (_, n2) = g
            .in_set_conjugates(&moved, GeneratorPattern::AlphaNotP(0))
            .unwrap();
        assert_eq!(n2, BigInt::from(2));

        let three_alpha = g.tail_element(alpha(0).scale(3));
        assert!(g.in_set_conjugates(&three_alpha, GeneratorPattern::AlphaNotP(0)).is_none());

        let mixed = g.tail_element(&alpha(0) + &beta(0));
        assert!(g.in_set_conjugates(&mixed, GeneratorPattern::AlphaNotP(0)).is_none());
    }

    #[test]
    fn square_examples() {
        let g = setup();
        assert!(g.square_root_in_hr(&g.tail_element(alpha(0))));
        let u0 = g.word_element(SignedLetter::pos(g.u_letter(0)).into());
        assert!(g.square_root_in_hr(&u0));
        let v00 = g.word_element(SignedLetter::pos(g.letter(Family::V, 0, AbelianElement::zero())).into());
        let r = g.conj(&g.tail_element(alpha(0)), &v00);
        assert!(g.square_root_in_hr(&r));
        assert!(!g.pow(&r, 2).word.is_empty());
    }

    #[test]
    fn group_axioms_on_small_sample() {
        let psi = PsiTable::single(0, 1, PsiValue::One).unwrap();
        let g = Group::new(psi);
        let v = SignedLetter::pos(g.letter(Family::V, 0, alpha(0)));
        let u = SignedLetter::pos(g.u_letter(0));
        let els = [
            g.identity(),
            g.tail_element(&alpha(0) + &beta(0).scale(-2)),
            g.element(ReducedWord::reduce([u.clone(), v.clone()]), gamma(0)),
            g.element(ReducedWord::reduce([v.inverse(), u.clone()]), alpha(0).scale(4)),
        ];
        for a in &els {
            assert_eq!(g.mul(a, &g.identity()), *a);
            assert_eq!(g.mul(&g.identity(), a), *a);
            assert!(g.mul(a, &g.inv(a)).is_identity());
            for b in &els {
                for c in &els {
                    assert_eq!(g.mul(&g.mul(a, b), c), g.mul(a, &g.mul(b, c)));
                }
            }
        }
    }
}
