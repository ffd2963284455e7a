//! Stage-based adversary simulation.
//!
//! The demonstration plays the construction against one concrete order of
//! our own making: build the group with no convergence recorded at the
//! chosen index, read off which sign statement the order satisfies there,
//! then record the convergence bit that injects the opposing relation and
//! confirm the rebuilt group's forced signs contradict the original
//! verdict. Every admissible configuration loses this game; that is the
//! desk-scale shadow of the impossibility argument, with the quantifier
//! over all computable ordered presentations replaced by the one order the
//! caller exhibits.

use serde::Serialize;

use crate::abelian::{alpha, beta, primes, Group, PsiTable, PsiValue, QuotientSpec};
use crate::commutation::SearchBound;
use crate::definability::WitnessKind;
use crate::orders::OrderConfig;

/// One recorded convergence together with what triggered it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StageEvent {
    pub i: u32,
    pub stage: u32,
    pub value: PsiValue,
    pub trigger: Trigger,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trigger {
    FoundSame,
    FoundDifferent,
}

impl StageEvent {
    /// Ties the recorded bit to its trigger: a "different" verdict records
    /// value zero, a "same" verdict records value one.
    pub fn from_verdict(i: u32, stage: u32, verdict: WitnessKind) -> StageEvent {
        match verdict {
            WitnessKind::Same => StageEvent {
                i,
                stage,
                value: PsiValue::One,
                trigger: Trigger::FoundSame,
            },
            WitnessKind::Different => StageEvent {
                i,
                stage,
                value: PsiValue::Zero,
                trigger: Trigger::FoundDifferent,
            },
        }
    }
}

/// Outcome of one adversary run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DemoReport {
    pub i: u32,
    pub stage: u32,
    /// Which statement the exhibited order satisfied before injection.
    pub pre_eval: String,
    /// Human-readable rendering of the injected relation.
    pub injected_relation: String,
    /// Signs of the block's first two generators after injection.
    pub post_signs: (i8, i8),
    /// Whether the post-injection signs contradict the pre-injection
    /// verdict, the configuration became inadmissible, and the canonical
    /// witnesses now fail the originally satisfied statement.
    pub contradiction_confirmed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DemoError {
    #[error("stage must be at least 1, got {0}")]
    StageTooSmall(u32),
    #[error("order configuration inadmissible before injection: {0}")]
    Inadmissible(String),
}

/// True exactly when the table records convergence of `i` at stage `t`.
pub fn psi_converged_at(psi: &PsiTable, i: u32, t: u32) -> bool {
    psi.converged_at(i, t)
}

/// Runs the five-step adversary demonstration for one index.
///
/// Steps: build the group over the empty table; evaluate which statement
/// the configured order satisfies at `i` (cross-checked by bounded witness
/// search); record the opposing convergence bit at the given stage;
/// rebuild; verify the injected relation holds and now forces signs
/// contradicting the original verdict.
pub fn run_diagonalization_demo(
    i: u32,
    cfg: &OrderConfig,
    stage: u32,
) -> Result<DemoReport, DemoError> {
    if stage == 0 {
        return Err(DemoError::StageTooSmall(stage));
    }
    let before = Group::new(PsiTable::empty());
    cfg.validate_against(before.psi())
        .map_err(|e| DemoError::Inadmissible(e.to_string()))?;

    // Step 2: the exhibited order's verdict at index i, with a witness
    // search cross-check.
    let verdict = if before.eval_same(i, cfg) {
        WitnessKind::Same
    } else {
        WitnessKind::Different
    };
    let bound = SearchBound { max_word_len: 4, max_coeff: 3 };
    let searched = before.search_witness(i, verdict, cfg, bound);
    assert!(
        searched.is_some(),
        "witness search must realize the evaluated statement"
    );

    // Step 3: record the opposing bit.
    let event = StageEvent::from_verdict(i, stage, verdict);
    let table = PsiTable::single(event.i, event.stage, event.value).expect("stage checked");

    // Step 4: rebuild and confirm the relation entered the presentation.
    let after = Group::new(table);
    let triple = primes(i);
    let p_pow = num_bigint::BigInt::from(triple.p).pow(stage);
    let q_pow = num_bigint::BigInt::from(triple.q).pow(stage);
    let lhs = alpha(i).scale(p_pow.clone());
    let rhs = beta(i).scale(match event.value {
        PsiValue::Zero => q_pow.clone(),
        PsiValue::One => -q_pow.clone(),
    });
    assert!(
        after.equals(&lhs, &rhs, QuotientSpec::R),
        "injected relation must hold in the rebuilt group"
    );
    let injected_relation = format!(
        "{} a{} = {}{} b{}",
        p_pow,
        i,
        if event.value == PsiValue::One { "-" } else { "" },
        q_pow,
        i
    );

    // Step 5: the rebuilt order's forced signs defeat the old verdict.
    let sign_a = after.sign_of(&after.tail_element(alpha(i)), cfg);
    let sign_b = after.sign_of(&after.tail_element(beta(i)), cfg);
    let signs_contradict = match verdict {
        WitnessKind::Same => sign_a != sign_b,
        WitnessKind::Different => sign_a == sign_b,
    };
    let now_inadmissible = cfg.validate_against(after.psi()).is_err();
    let canonical = after.canonical_witnesses(i);
    let witness_now_fails = match verdict {
        WitnessKind::Same => !after.check_same_witness(&canonical, i, cfg),
        WitnessKind::Different => !after.check_different_witness(&canonical, i, cfg),
    };

    Ok(DemoReport {
        i,
        stage,
        pre_eval: verdict.label().to_string(),
        injected_relation,
        post_signs: (sign_a, sign_b),
        contradiction_confirmed: signs_contradict && now_inadmissible && witness_now_fails,
    })
}
