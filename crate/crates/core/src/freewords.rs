//! Reduced words of the free factor and the abelian action on them.
//!
//! The free factor has one letter family `u` indexed by naturals alone and
//! five families `v, w, x, y, z` indexed by a natural plus a coset label of
//! the matching quotient (`v` with `V(i)`, ..., `z` with `Z(i)`). The
//! alphabet is lazily infinite: letters are built on demand and coset
//! labels are stored pre-normalized so letter equality is structural.
//!
//! An element `g` of the base quotient acts by fixing every `u` letter and
//! shifting every other letter's coset label by the image of `g` in that
//! letter's quotient. The action permutes letters, so it preserves word
//! length and free-reducedness.

use std::cmp::Ordering;
use std::fmt;

use crate::abelian::{AbelianElement, Group, QuotientSpec};

/// The six letter families, ranked `U < V < W < X < Y < Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    U,
    V,
    W,
    X,
    Y,
    Z,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::U,
        Family::V,
        Family::W,
        Family::X,
        Family::Y,
        Family::Z,
    ];

    /// Quotient whose cosets label this family's letters; `U` carries none.
    pub fn quotient_spec(self, index: u32) -> Option<QuotientSpec> {
        match self {
            Family::U => None,
            Family::V => Some(QuotientSpec::V(index)),
            Family::W => Some(QuotientSpec::W(index)),
            Family::X => Some(QuotientSpec::X(index)),
            Family::Y => Some(QuotientSpec::Y(index)),
            Family::Z => Some(QuotientSpec::Z(index)),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Family::U => 'u',
            Family::V => 'v',
            Family::W => 'w',
            Family::X => 'x',
            Family::Y => 'y',
            Family::Z => 'z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Family> {
        Family::ALL.iter().copied().find(|f| f.symbol() == c)
    }
}

/// One generator of the free factor.
///
/// The coset label is always canonical for the family's quotient, so two
/// letters are equal exactly when they are structurally equal. The derived
/// order (family rank, then index, then coset serialization) is the total
/// letter order used by deterministic enumerations and the word ordering.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    family: Family,
    index: u32,
    coset: AbelianElement,
}

impl Letter {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn coset(&self) -> &AbelianElement {
        &self.coset
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.symbol(), self.index)?;
        if self.family != Family::U {
            write!(f, "[..]")?;
        }
        Ok(())
    }
}

/// Total order on letters; deterministic across runs.
pub fn letter_order(a: &Letter, b: &Letter) -> Ordering {
    a.cmp(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

/// A letter or its inverse.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedLetter {
    pub letter: Letter,
    pub sign: Sign,
}

impl SignedLetter {
    pub fn pos(letter: Letter) -> Self {
        SignedLetter { letter, sign: Sign::Pos }
    }

    pub fn neg(letter: Letter) -> Self {
        SignedLetter { letter, sign: Sign::Neg }
    }

    pub fn inverse(&self) -> SignedLetter {
        SignedLetter { letter: self.letter.clone(), sign: self.sign.flip() }
    }

    fn cancels(&self, other: &SignedLetter) -> bool {
        self.letter == other.letter && self.sign != other.sign
    }
}

/// A freely reduced word: no adjacent letter-inverse pair. The empty word
/// is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReducedWord {
    letters: Vec<SignedLetter>,
}

impl ReducedWord {
    pub fn empty() -> Self {
        ReducedWord::default()
    }

    pub fn single(letter: SignedLetter) -> Self {
        ReducedWord { letters: vec![letter] }
    }

    /// Freely reduces an arbitrary letter sequence. Idempotent on already
    /// reduced input, and never increases length.
    pub fn reduce<I>(seq: I) -> Self
    where
        I: IntoIterator<Item = SignedLetter>,
    {
        let mut stack: Vec<SignedLetter> = Vec::new();
        for sl in seq {
            if stack.last().map(|top| top.cancels(&sl)).unwrap_or(false) {
                stack.pop();
            } else {
                stack.push(sl);
            }
        }
        ReducedWord { letters: stack }
    }

    /// Wraps a sequence already known to be reduced.
    pub(crate) fn from_reduced(letters: Vec<SignedLetter>) -> Self {
        debug_assert!(letters.windows(2).all(|w| !w[0].cancels(&w[1])));
        ReducedWord { letters }
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[SignedLetter] {
        &self.letters
    }

    /// Reduced sub-word made of letters `range` of this word.
    pub fn slice(&self, range: std::ops::Range<usize>) -> ReducedWord {
        ReducedWord::from_reduced(self.letters[range].to_vec())
    }

    /// Group multiplication in the free factor.
    pub fn concat(&self, other: &ReducedWord) -> ReducedWord {
        let mut stack = self.letters.clone();
        for sl in &other.letters {
            if stack.last().map(|top| top.cancels(sl)).unwrap_or(false) {
                stack.pop();
            } else {
                stack.push(sl.clone());
            }
        }
        ReducedWord { letters: stack }
    }

    /// Group inverse: reverse the letters and flip every sign.
    pub fn inverse(&self) -> ReducedWord {
        ReducedWord {
            letters: self.letters.iter().rev().map(|sl| sl.inverse()).collect(),
        }
    }
}

impl From<SignedLetter> for ReducedWord {
    fn from(sl: SignedLetter) -> Self {
        ReducedWord::single(sl)
    }
}

impl FromIterator<SignedLetter> for ReducedWord {
    fn from_iter<I: IntoIterator<Item = SignedLetter>>(iter: I) -> Self {
        ReducedWord::reduce(iter)
    }
}

impl Group {
    /// Builds a letter, canonicalizing the coset label in the family's
    /// quotient. `U` letters ignore the label.
    pub fn letter(&self, family: Family, index: u32, coset: AbelianElement) -> Letter {
        let coset = match family.quotient_spec(index) {
            None => AbelianElement::zero(),
            Some(spec) => self.normalize(&coset, spec),
        };
        Letter { family, index, coset }
    }

    pub fn u_letter(&self, index: u32) -> Letter {
        self.letter(Family::U, index, AbelianElement::zero())
    }

    /// Image of a single letter under the action of `g`.
    pub fn act_letter(&self, g: &AbelianElement, letter: &Letter) -> Letter {
        match letter.family.quotient_spec(letter.index) {
            None => letter.clone(),
            Some(spec) => Letter {
                family: letter.family,
                index: letter.index,
                coset: self.normalize(&(&letter.coset + g), spec),
            },
        }
    }

    /// True when the action of `g` fixes the letter.
    pub fn fixes_letter(&self, g: &AbelianElement, letter: &Letter) -> bool {
        match letter.family.quotient_spec(letter.index) {
            None => true,
            Some(spec) => self.normalize(g, spec).is_zero(),
        }
    }

    /// Letterwise action of `g` on a reduced word. The action permutes
    /// letters, so the result has the same length and stays reduced;
    /// `act(0, w) = w` and `act(g + h, w) = act(g, act(h, w))`.
    pub fn act(&self, g: &AbelianElement, w: &ReducedWord) -> ReducedWord {
        ReducedWord::from_reduced(
            w.letters()
                .iter()
                .map(|sl| SignedLetter {
                    letter: self.act_letter(g, &sl.letter),
                    sign: sl.sign,
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{alpha, beta, PsiTable, PsiValue};

    fn setup() -> Group {
        Group::new(PsiTable::empty())
    }

    #[test]
    fn reduce_cancels_adjacent_inverses() {
        let g = setup();
        let u0 = SignedLetter::pos(g.u_letter(0));
        let u1 = SignedLetter::pos(g.u_letter(1));
        assert!(ReducedWord::reduce([u0.clone(), u0.inverse()]).is_empty());
        let w = ReducedWord::reduce([u0.clone(), u1.clone(), u1.inverse(), u0.clone()]);
        assert_eq!(w.letters(), &[u0.clone(), u0.clone()]);
        assert!(ReducedWord::reduce([]).is_empty());
    }

    #[test]
    fn concat_and_inverse() {
        let g = setup();
        let u0 = SignedLetter::pos(g.u_letter(0));
        let v0 = SignedLetter::pos(g.letter(Family::V, 0, AbelianElement::zero()));
        let a = ReducedWord::single(u0.clone());
        assert!(a.concat(&a.inverse()).is_empty());
        let w = ReducedWord::reduce([u0.clone(), v0.clone()]);
        assert_eq!(w.inverse().letters(), &[v0.inverse(), u0.inverse()]);
        assert_eq!(ReducedWord::empty().concat(&w), w);
    }

    #[test]
    fn action_shifts_cosets_and_fixes_u() {
        let g = setup();
        let v00 = g.letter(Family::V, 0, AbelianElement::zero());
        let shifted = g.act_letter(&alpha(0), &v00);
        assert_eq!(shifted, g.letter(Family::V, 0, alpha(0)));

        let u5 = g.u_letter(5);
        assert_eq!(g.act_letter(&(&alpha(0) + &beta(2)), &u5), u5);
    }

    #[test]
    fn action_kills_relation_multiples() {
        let psi = PsiTable::single(0, 1, PsiValue::Zero).unwrap();
        let g = Group::new(psi);
        for label in [AbelianElement::zero(), beta(0), &alpha(0) + &beta(0)] {
            let v = g.letter(Family::V, 0, label);
            assert_eq!(g.act_letter(&alpha(0).scale(3), &v), v);
        }
    }

    #[test]
    fn action_is_an_automorphism_and_length_preserving() {
        let g = setup();
        let u0 = SignedLetter::pos(g.u_letter(0));
        let v = SignedLetter::pos(g.letter(Family::V, 0, AbelianElement::zero()));
        let y = SignedLetter::neg(g.letter(Family::Y, 1, AbelianElement::zero()));
        let a = ReducedWord::reduce([u0.clone(), v.clone()]);
        let b = ReducedWord::reduce([y.clone(), v.inverse()]);
        let shift = &alpha(0) + &beta(1).scale(2);

        let lhs = g.act(&shift, &a.concat(&b));
        let rhs = g.act(&shift, &a).concat(&g.act(&shift, &b));
        assert_eq!(lhs, rhs);
        assert_eq!(g.act(&shift, &a.inverse()), g.act(&shift, &a).inverse());
        assert_eq!(g.act(&shift, &a).len(), a.len());
        assert_eq!(g.act(&AbelianElement::zero(), &b), b);

        let composite = g.act(&shift, &g.act(&alpha(0), &b));
        assert_eq!(composite, g.act(&(&shift + &alpha(0)), &b));
    }

    #[test]
    fn fixed_point_law_is_letterwise() {
        let g = setup();
        let u = SignedLetter::pos(g.u_letter(0));
        let v = SignedLetter::pos(g.letter(Family::V, 0, AbelianElement::zero()));
        let w = ReducedWord::reduce([u, v.clone()]);
        let shift = alpha(0);
        let acted = g.act(&shift, &w);
        assert_ne!(acted, w);
        assert!(!g.fixes_letter(&shift, &v.letter));
        // Any multiple of 3a0 maps to zero in the v-quotient at index 0.
        let fixer = alpha(0).scale(3);
        assert!(g.fixes_letter(&fixer, &v.letter));
        assert_eq!(g.act(&fixer, &w), w);
    }

    #[test]
    fn letter_order_examples() {
        let g = setup();
        let u0 = g.u_letter(0);
        let u1 = g.u_letter(1);
        let v00 = g.letter(Family::V, 0, AbelianElement::zero());
        assert_eq!(letter_order(&u0, &u1), Ordering::Less);
        assert_eq!(letter_order(&u0, &v00), Ordering::Less);
        assert_eq!(letter_order(&v00, &v00), Ordering::Equal);
    }
}
