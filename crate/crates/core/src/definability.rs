//! The two parameter-free sign-comparison statements and their witnesses.
//!
//! For an index `i`, a witness triple `(a, b, c)` certifies the "same
//! signs" statement when seven clauses hold: the four membership clauses
//! (each of `a`, `b`, `c`, `ab` conjugate into the abelian factor), the
//! sign clause (`a > 1` iff `b > 1` under the configured order), the three
//! scaled-generator clauses tying `a`, `b`, `c` to blocks-`i` generators,
//! and the two difference clauses tying `a c^-1` and `b c^-1` to the
//! mixed generator sets. The "different signs" statement inverts the sign
//! clause. The canonical witnesses are the three bare generators of block
//! `i`; truth of either statement in a constructed order coincides with
//! the sign comparison of those generators.

use crate::abelian::{alpha, beta, gamma, AbelianElement, GeneratorPattern, Group, QuotientSpec};
use crate::commutation::SearchBound;
use crate::freewords::{Family, ReducedWord, SignedLetter};
use crate::orders::OrderConfig;
use crate::semidirect::GroupElement;

/// Candidate witnesses for one of the two statements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessTriple {
    pub a: GroupElement,
    pub b: GroupElement,
    pub c: GroupElement,
}

/// Which statement a witness is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    Same,
    Different,
}

impl WitnessKind {
    pub fn label(self) -> &'static str {
        match self {
            WitnessKind::Same => "same",
            WitnessKind::Different => "different",
        }
    }
}

/// Outcome of every clause, in statement order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClauseReport {
    pub clauses: [bool; 7],
}

impl ClauseReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|&c| c)
    }
}

impl Group {
    /// Evaluates all seven clauses of the chosen statement against a triple.
    pub fn check_witness_detailed(
        &self,
        t: &WitnessTriple,
        i: u32,
        kind: WitnessKind,
        cfg: &OrderConfig,
    ) -> ClauseReport {
        let memberships = self.in_hr_conjugates(&t.a).is_some()
            && self.in_hr_conjugates(&t.b).is_some()
            && self.in_hr_conjugates(&t.c).is_some()
            && self.in_hr_conjugates(&self.mul(&t.a, &t.b)).is_some();

        let a_sign = self.sign_of(&t.a, cfg);
        let b_sign = self.sign_of(&t.b, cfg);
        let sign_clause = match kind {
            WitnessKind::Same => (a_sign > 0) == (b_sign > 0),
            WitnessKind::Different => (a_sign > 0) == (b_sign < 0),
        };

        let a_set = self
            .in_set_conjugates(&t.a, GeneratorPattern::AlphaNotP(i))
            .is_some();
        let b_set = self
            .in_set_conjugates(&t.b, GeneratorPattern::BetaNotQ(i))
            .is_some();
        let c_set = self
            .in_set_conjugates(&t.c, GeneratorPattern::GammaNotR(i))
            .is_some();
        let ac = self.mul(&t.a, &self.inv(&t.c));
        let bc = self.mul(&t.b, &self.inv(&t.c));
        let ac_set = self
            .in_set_conjugates(&ac, GeneratorPattern::AlphaMinusGamma(i))
            .is_some();
        let bc_set = self
            .in_set_conjugates(&bc, GeneratorPattern::BetaMinusGamma(i))
            .is_some();

        ClauseReport {
            clauses: [memberships, sign_clause, a_set, b_set, c_set, ac_set, bc_set],
        }
    }

    /// True when the triple witnesses the "same signs" statement for `i`.
    pub fn check_same_witness(&self, t: &WitnessTriple, i: u32, cfg: &OrderConfig) -> bool {
        self.check_witness_detailed(t, i, WitnessKind::Same, cfg).passed()
    }

    /// True when the triple witnesses the "different signs" statement.
    pub fn check_different_witness(&self, t: &WitnessTriple, i: u32, cfg: &OrderConfig) -> bool {
        self.check_witness_detailed(t, i, WitnessKind::Different, cfg)
            .passed()
    }

    /// The canonical witnesses: the three bare generators of block `i`.
    pub fn canonical_witnesses(&self, i: u32) -> WitnessTriple {
        WitnessTriple {
            a: self.tail_element(alpha(i)),
            b: self.tail_element(beta(i)),
            c: self.tail_element(gamma(i)),
        }
    }

    /// Truth of the "same signs" statement in the configured order:
    /// the first two generators of block `i` have equal sign. The
    /// canonical witnesses realize the statement whenever it holds.
    pub fn eval_same(&self, i: u32, cfg: &OrderConfig) -> bool {
        self.sign_of(&self.tail_element(alpha(i)), cfg)
            == self.sign_of(&self.tail_element(beta(i)), cfg)
    }

    pub fn eval_different(&self, i: u32, cfg: &OrderConfig) -> bool {
        !self.eval_same(i, cfg)
    }

    /// Bounded search for a witness triple: conjugated scaled canonical
    /// elements, scalars in increasing magnitude, conjugators in length
    /// then lexicographic order. A returned triple always passes the
    /// checker; exhausting the bound certifies nothing.
    pub fn search_witness(
        &self,
        i: u32,
        kind: WitnessKind,
        cfg: &OrderConfig,
        bound: SearchBound,
    ) -> Option<WitnessTriple> {
        let conjugators = self.witness_conjugators(i, bound.max_word_len / 2);
        for scalar in scalars(bound.max_coeff) {
            for conj_word in &conjugators {
                let wrap = self.word_element(conj_word.clone());
                let triple = WitnessTriple {
                    a: self.conj(&self.tail_element(alpha(i).scale(scalar)), &wrap),
                    b: self.conj(&self.tail_element(beta(i).scale(scalar)), &wrap),
                    c: self.conj(&self.tail_element(gamma(i).scale(scalar)), &wrap),
                };
                if self.check_witness_detailed(&triple, i, kind, cfg).passed() {
                    return Some(triple);
                }
            }
        }
        None
    }

    /// Conjugator candidates: reduced words over the three base
    /// free-factor generators and the zero-labelled `v` letter of block
    /// `i`, by length then lexicographically.
    fn witness_conjugators(&self, i: u32, max_len: usize) -> Vec<ReducedWord> {
        let base: Vec<SignedLetter> = (0..3)
            .map(|j| SignedLetter::pos(self.u_letter(j)))
            .chain([SignedLetter::pos(self.letter(Family::V, i, AbelianElement::zero()))])
            .collect();
        let signed: Vec<SignedLetter> =
            base.iter().flat_map(|sl| [sl.clone(), sl.inverse()]).collect();
        let mut out = vec![ReducedWord::empty()];
        let mut frontier = vec![ReducedWord::empty()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for sl in &signed {
                    let ext = w.concat(&ReducedWord::single(sl.clone()));
                    if ext.len() == w.len() + 1 {
                        next.push(ext);
                    }
                }
            }
            next.sort();
            next.dedup();
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
}

fn scalars(max: i64) -> impl Iterator<Item = i64> {
    (1..=max.max(1)).flat_map(|n| [n, -n])
}
