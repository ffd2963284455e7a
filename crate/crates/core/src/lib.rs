//! Exact arithmetic for a computable left-orderable group built as a
//! semidirect product of a free group by a relation-quotiented free
//! abelian group.
//!
//! The abelian factor's relations are driven by a finite stage table; on
//! top of the group arithmetic the crate provides concrete computable
//! left-orders, decision procedures for membership in conjugation-closed
//! subsets, constructive decompositions of commuting pairs, witness checks
//! and searches for the two sign-comparison formulas, and a stage-based
//! demonstration that any exhibited order is defeated by injecting one
//! more relation.
//!
//! Entry points: [`abelian::Group`] snapshots a [`abelian::PsiTable`] and
//! carries every operation as a method; [`orders::OrderConfig`] pins one
//! left-order; [`grammar`] parses and renders the element syntax;
//! [`verify`] hosts the property and oracle harnesses behind the CLI.

pub mod abelian;
pub mod commutation;
pub mod definability;
pub mod diagonalization;
pub mod freewords;
pub mod grammar;
pub mod orders;
pub mod semidirect;
pub mod verify;

pub use abelian::{
    AbelianElement, GeneratorId, GeneratorKind, GeneratorPattern, Group, PrimeTriple, PsiTable,
    PsiValue, QuotientSpec,
};
pub use freewords::{Family, Letter, ReducedWord, Sign, SignedLetter};
pub use semidirect::{ConjugateCertificate, GroupElement};
