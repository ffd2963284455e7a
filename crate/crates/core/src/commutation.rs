//! Constructive analysis of commuting pairs.
//!
//! Two commuting elements always share a common "root" element up to a
//! common conjugator: `decompose_commuting` produces words `W`, `V`, tails
//! `x`, `y`, `z` and exponents `k`, `l` with
//!
//! ```text
//! r = (W,0) (V,x)^k (e,y) (W,0)^-1
//! s = (W,0) (V,x)^l (e,z) (W,0)^-1
//! ```
//!
//! where the action of `z` fixes `V` whenever `k != 0` and the action of
//! `y` fixes `V` whenever `l != 0`. The case analysis keys on where the
//! two mixed products cancel; the recursive case strips one conjugating
//! letter from both operands, so termination is by word length.
//!
//! On top of it sit the common-conjugator decomposition for pairs of
//! abelian-factor conjugates whose product is again one, the three-witness
//! construction, and the bounded witness search that realizes membership
//! in the conjugate closure of the abelian factor as an existential
//! statement about commutation.

use crate::abelian::{AbelianElement, Group, QuotientSpec};
use crate::freewords::{ReducedWord, SignedLetter};
use crate::semidirect::GroupElement;

/// Common-root form of a commuting pair; see the module docs for the
/// reconstruction formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutingDecomposition {
    pub w: ReducedWord,
    pub v: ReducedWord,
    pub x: AbelianElement,
    pub y: AbelianElement,
    pub z: AbelianElement,
    pub k: i64,
    pub l: i64,
}

/// Common conjugator for two abelian-factor conjugates: conjugating
/// `(e, first)` and `(e, second)` by `(conjugator, 0)` reconstructs the
/// pair, which therefore commutes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonConjugator {
    pub conjugator: ReducedWord,
    pub first: AbelianElement,
    pub second: AbelianElement,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CommutationError {
    #[error("elements do not commute")]
    NotCommuting,
    #[error("{0} is not a conjugate of the abelian factor")]
    PreconditionFailed(&'static str),
    #[error("element is not a conjugate of the abelian factor")]
    NotInHrConjugates,
}

/// Outcome of the bounded witness search for membership in the conjugate
/// closure of the abelian factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MembershipVerdict {
    /// A commutation witness triple was found; membership holds.
    Member,
    /// The closed-form test refutes membership.
    NonMember,
    /// Membership holds per the closed form but no witness triple was
    /// found within the bound. Cannot happen once the bound admits the
    /// certificate-derived witnesses.
    Undetermined,
}

/// Bounds for witness enumeration: candidate words up to `max_word_len`
/// letters, scalar tail coefficients up to `max_coeff` in absolute value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBound {
    pub max_word_len: usize,
    pub max_coeff: i64,
}

impl SearchBound {
    /// Default bound for a membership query: room for the canonical
    /// witnesses derived from the element's own certificate.
    pub fn for_element(r: &GroupElement) -> SearchBound {
        SearchBound { max_word_len: r.word.len() + 2, max_coeff: 3 }
    }
}

impl Group {
    /// Decomposes a commuting pair into common-root form.
    ///
    /// The precondition is checked; the returned decomposition always
    /// reconstructs the operands exactly and satisfies the fixedness side
    /// conditions.
    pub fn decompose_commuting(
        &self,
        r: &GroupElement,
        s: &GroupElement,
    ) -> Result<CommutingDecomposition, CommutationError> {
        if !self.commutes(r, s) {
            return Err(CommutationError::NotCommuting);
        }
        Ok(self.decompose_worker(&r.word, &r.tail, &s.word, &s.tail))
    }

    fn decompose_worker(
        &self,
        a: &ReducedWord,
        g: &AbelianElement,
        b: &ReducedWord,
        h: &AbelianElement,
    ) -> CommutingDecomposition {
        // First operand is a pure tail.
        if a.is_empty() {
            return CommutingDecomposition {
                w: ReducedWord::empty(),
                v: b.clone(),
                x: h.clone(),
                y: g.clone(),
                z: AbelianElement::zero(),
                k: 0,
                l: 1,
            };
        }
        // Second operand is a pure tail.
        if b.is_empty() {
            return CommutingDecomposition {
                w: ReducedWord::empty(),
                v: a.clone(),
                x: g.clone(),
                y: AbelianElement::zero(),
                z: h.clone(),
                k: 1,
                l: 0,
            };
        }

        let a_letters = a.letters();
        let b_letters = b.letters();
        // Commutation gives a * act(g, b) = b * act(h, a); the two sides
        // cancel at their junctions simultaneously, and likewise for the
        // rearranged form b^-1 * a = act(h, a) * act(g, b)^-1.
        let first_of_acted_b = SignedLetter {
            letter: self.act_letter(g, &b_letters[0].letter),
            sign: b_letters[0].sign,
        };
        let straight_cancels = *a_letters.last().unwrap() == first_of_acted_b.inverse();
        if !straight_cancels {
            return self.aligned_case(a, g, b, h);
        }
        let inverse_form_cancels = a_letters[0] == b_letters[0];
        if !inverse_form_cancels {
            // Rearranged form is reduced: transform into the aligned case
            // via a' = b^-1, g' = -h, b' = act(h, a), h' = g.
            let neg_h = self.normalize(&-h, QuotientSpec::R);
            let a2 = b.inverse();
            let b2 = self.act(h, a);
            let inner = self.aligned_case(&a2, &neg_h, &b2, g);
            debug_assert!(inner.w.is_empty());
            let m = inner.k;
            let n = inner.l;
            let f = &inner.x;
            let v = self.act(&neg_h, &inner.v);
            let y = self.normalize(&(g - &f.scale(n)), QuotientSpec::R);
            let z = self.normalize(&(h + &f.scale(m)), QuotientSpec::R);
            return CommutingDecomposition {
                w: ReducedWord::empty(),
                v,
                x: inner.x.clone(),
                y,
                z,
                k: n,
                l: -m,
            };
        }
        if a.len() == 1 {
            return self.single_letter_case(a, g, b, h);
        }
        if b.len() == 1 {
            return swap_operands(self.single_letter_case(b, h, a, g));
        }

        // Both junctions cancel and both words have length at least two:
        // the shared first letter conjugates both operands down.
        let a0 = a_letters[0].clone();
        debug_assert_eq!(
            SignedLetter { letter: self.act_letter(g, &a0.letter), sign: a0.sign },
            a_letters[a.len() - 1].inverse()
        );
        debug_assert_eq!(
            SignedLetter { letter: self.act_letter(h, &a0.letter), sign: a0.sign },
            b_letters[b.len() - 1].inverse()
        );
        let a_inner = a.slice(1..a.len() - 1);
        let b_inner = b.slice(1..b.len() - 1);
        let mut dec = self.decompose_worker(&a_inner, g, &b_inner, h);
        dec.w = ReducedWord::single(a0).concat(&dec.w);
        dec
    }

    /// Both products `a * act(g, b)` and `b * act(h, a)` are reduced, so
    /// they agree as plain letter sequences and the shorter word is a
    /// prefix of the longer. The common root is the length-gcd prefix.
    fn aligned_case(
        &self,
        a: &ReducedWord,
        g: &AbelianElement,
        b: &ReducedWord,
        h: &AbelianElement,
    ) -> CommutingDecomposition {
        if a.len() < b.len() {
            return swap_operands(self.aligned_case(b, h, a, g));
        }
        let m = a.len() as i64;
        let n = b.len() as i64;
        debug_assert!(m >= n && n > 0);
        let d = gcd(m, n);
        let (q, p) = minimal_combination(m, n, d);
        debug_assert_eq!(q * n - p * m, d);
        // Root tail f = q*h - p*g; exponents m/d and n/d.
        let f = self.normalize(&(&h.scale(q) - &g.scale(p)), QuotientSpec::R);
        let m_exp = m / d;
        let n_exp = n / d;
        let root = a.slice(0..d as usize);
        let y = self.normalize(&(g - &f.scale(m_exp)), QuotientSpec::R);
        let z = self.normalize(&(h - &f.scale(n_exp)), QuotientSpec::R);
        CommutingDecomposition {
            w: ReducedWord::empty(),
            v: root,
            x: f,
            y,
            z,
            k: m_exp,
            l: n_exp,
        }
    }

    /// First word is the single letter `a`, both junction cancellations
    /// hold. Then `b` is a backward orbit of its own first letter under
    /// the action of `g`, and `a = act(g, b0)^-1`.
    fn single_letter_case(
        &self,
        a: &ReducedWord,
        g: &AbelianElement,
        b: &ReducedWord,
        h: &AbelianElement,
    ) -> CommutingDecomposition {
        debug_assert_eq!(a.len(), 1);
        let n = b.len() as i64;
        let root = b.slice(0..1);
        let neg_g = self.normalize(&-g, QuotientSpec::R);
        let z = self.normalize(&(h + &g.scale(n)), QuotientSpec::R);
        CommutingDecomposition {
            w: ReducedWord::empty(),
            v: root,
            x: neg_g,
            y: AbelianElement::zero(),
            z,
            k: -1,
            l: n,
        }
    }

    /// Rebuilds the pair described by a decomposition.
    pub fn reconstruct(&self, dec: &CommutingDecomposition) -> (GroupElement, GroupElement) {
        let wrap = self.word_element(dec.w.clone());
        let base = self.element(dec.v.clone(), dec.x.clone());
        let r_inner = self.mul(&self.pow(&base, dec.k), &self.tail_element(dec.y.clone()));
        let s_inner = self.mul(&self.pow(&base, dec.l), &self.tail_element(dec.z.clone()));
        (self.conj(&r_inner, &wrap), self.conj(&s_inner, &wrap))
    }

    /// Checks the fixedness side conditions of a decomposition.
    pub fn side_conditions_hold(&self, dec: &CommutingDecomposition) -> bool {
        (dec.k == 0 || self.act(&dec.z, &dec.v) == dec.v)
            && (dec.l == 0 || self.act(&dec.y, &dec.v) == dec.v)
    }

    /// For two abelian-factor conjugates whose product is again one,
    /// produces a single conjugator exhibiting both (so they commute).
    ///
    /// All three membership preconditions are checked. The construction
    /// strips the common prefix of the two minimal certificates; the
    /// product membership forces one remainder to be empty, and the other
    /// certificate's conjugator then serves for both elements.
    pub fn decompose_hr_commuting(
        &self,
        r: &GroupElement,
        s: &GroupElement,
    ) -> Result<CommonConjugator, CommutationError> {
        let cr = self
            .in_hr_conjugates(r)
            .ok_or(CommutationError::PreconditionFailed("first operand"))?;
        let cs = self
            .in_hr_conjugates(s)
            .ok_or(CommutationError::PreconditionFailed("second operand"))?;
        self.in_hr_conjugates(&self.mul(r, s))
            .ok_or(CommutationError::PreconditionFailed("product"))?;

        let b1 = cr.conjugator.letters();
        let b2 = cs.conjugator.letters();
        let shared = b1
            .iter()
            .zip(b2.iter())
            .take_while(|(x, y)| x == y)
            .count();
        let rest1 = cr.conjugator.slice(shared..b1.len());
        let rest2 = cs.conjugator.slice(shared..b2.len());

        let conjugator = if rest1.is_empty() {
            // act(first core) fixes rest2, so the longer conjugator works
            // for both elements.
            debug_assert_eq!(self.act(&cr.core, &rest2), rest2);
            cs.conjugator.clone()
        } else if rest2.is_empty() {
            debug_assert_eq!(self.act(&cs.core, &rest1), rest1);
            cr.conjugator.clone()
        } else {
            unreachable!("minimal certificates of a member pair share a prefix up to one side");
        };
        Ok(CommonConjugator { conjugator, first: cr.core, second: cs.core })
    }

    /// Three pairwise non-commuting elements that all commute with `r`:
    /// the first three free-factor generators conjugated by `r`'s own
    /// certificate conjugator.
    pub fn three_witnesses(
        &self,
        r: &GroupElement,
    ) -> Result<(GroupElement, GroupElement, GroupElement), CommutationError> {
        let cert = self
            .in_hr_conjugates(r)
            .ok_or(CommutationError::NotInHrConjugates)?;
        let wrap = self.word_element(cert.conjugator);
        let witness = |j: u32| {
            let u = self.word_element(ReducedWord::single(SignedLetter::pos(self.u_letter(j))));
            self.conj(&u, &wrap)
        };
        Ok((witness(0), witness(1), witness(2)))
    }

    /// Membership in the conjugate closure of the abelian factor via the
    /// existential three-witness criterion, bounded.
    ///
    /// A found triple (each commuting with `r`, pairwise non-commuting)
    /// proves membership; the closed-form test refutes it. The enumeration
    /// runs over conjugates of the three base free-factor generators by
    /// words over `r`'s letters plus those generators, shortest first,
    /// trying the certificate-derived triple first when it fits the bound.
    pub fn hr_membership_by_formula(
        &self,
        r: &GroupElement,
        bound: SearchBound,
    ) -> MembershipVerdict {
        let Some(cert) = self.in_hr_conjugates(r) else {
            return MembershipVerdict::NonMember;
        };

        let canonical_fits = 2 * cert.conjugator.len() + 1 <= bound.max_word_len;
        if canonical_fits {
            let wrap = self.word_element(cert.conjugator.clone());
            if self.witness_triple_holds(r, &wrap) {
                return MembershipVerdict::Member;
            }
        }

        let max_conj_len = bound.max_word_len.saturating_sub(1) / 2;
        let mut alphabet: Vec<SignedLetter> = r
            .word
            .letters()
            .iter()
            .map(|sl| SignedLetter::pos(sl.letter.clone()))
            .chain((0..3).map(|j| SignedLetter::pos(self.u_letter(j))))
            .collect();
        alphabet.sort();
        alphabet.dedup();
        let signed: Vec<SignedLetter> = alphabet
            .iter()
            .flat_map(|sl| [sl.clone(), sl.inverse()])
            .collect();

        let mut frontier = vec![ReducedWord::empty()];
        for _ in 0..=max_conj_len {
            for c in &frontier {
                let wrap = self.word_element(c.clone());
                if self.witness_triple_holds(r, &wrap) {
                    return MembershipVerdict::Member;
                }
            }
            let mut next = Vec::new();
            for c in &frontier {
                for sl in &signed {
                    let extended = c.concat(&ReducedWord::single(sl.clone()));
                    if extended.len() == c.len() + 1 {
                        next.push(extended);
                    }
                }
            }
            next.sort();
            next.dedup();
            frontier = next;
        }
        MembershipVerdict::Undetermined
    }

    fn witness_triple_holds(&self, r: &GroupElement, wrap: &GroupElement) -> bool {
        let w: Vec<GroupElement> = (0..3)
            .map(|j| {
                let u = self.word_element(ReducedWord::single(SignedLetter::pos(self.u_letter(j))));
                self.conj(&u, wrap)
            })
            .collect();
        w.iter().all(|s| self.commutes(r, s))
            && !self.commutes(&w[0], &w[1])
            && !self.commutes(&w[0], &w[2])
            && !self.commutes(&w[1], &w[2])
    }
}

fn swap_operands(dec: CommutingDecomposition) -> CommutingDecomposition {
    CommutingDecomposition {
        w: dec.w,
        v: dec.v,
        x: dec.x,
        y: dec.z,
        z: dec.y,
        k: dec.l,
        l: dec.k,
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Smallest `q, p >= 0` with `q*n - p*m = d` for `d = gcd(m, n)`.
fn minimal_combination(m: i64, n: i64, d: i64) -> (i64, i64) {
    // Extended Euclid on (n, m): u*n + v*m = d.
    let (mut old_r, mut r) = (n, m);
    let (mut old_u, mut u) = (1i64, 0i64);
    let (mut old_v, mut v) = (0i64, 1i64);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_u, u) = (u, old_u - quot * u);
        (old_v, v) = (v, old_v - quot * v);
    }
    debug_assert_eq!(old_r, d);
    let (q0, p0) = (old_u, -old_v);
    // Solutions form q = q0 + t*(m/d), p = p0 + t*(n/d); lift both to >= 0.
    let (mstep, nstep) = (m / d, n / d);
    let t_for_q = if q0 >= 0 { 0 } else { (-q0 + mstep - 1) / mstep };
    let t_for_p = if p0 >= 0 { 0 } else { (-p0 + nstep - 1) / nstep };
    let t = t_for_q.max(t_for_p);
    (q0 + t * mstep, p0 + t * nstep)
}
