//! Dual-mimicking lifts: transporting a game across a solution-embedding
//! reduction by imaging its move structure, with the auxiliary universe
//! appended to the final move.

use nps_core::{check_se_on_reduced, Cap, Embedding, SeReduction, SubsetMask};
use nps_games::{AdjustableGame, GameError, InterdictionGame, SelectionGame};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LiftError {
    #[error("game base problem `{got}` does not match reduction source `{want}`")]
    SpecMismatch { got: String, want: String },
    #[error("reduction fails the solution-embedding check on this base instance")]
    SePropertyFailed,
    #[error(transparent)]
    Core(#[from] nps_core::CoreError),
    #[error(transparent)]
    Game(#[from] GameError),
}

/// Applies the reduction to a game base, verifying the embedding property on
/// this instance first.
fn reduce_base(
    red: &SeReduction,
    base: &nps_core::InstanceBundle,
    cap: Cap,
) -> Result<(nps_core::InstanceBundle, Embedding), LiftError> {
    if base.spec().name() != red.source().name() {
        return Err(LiftError::SpecMismatch {
            got: base.spec().name().to_string(),
            want: red.source().name().to_string(),
        });
    }
    let reduced = red.apply(base)?;
    let report = check_se_on_reduced(base, &reduced, cap)?;
    if !report.passed() {
        return Err(LiftError::SePropertyFailed);
    }
    Ok((reduced.target, reduced.embedding))
}

/// Lifted selection game: parts are embedded images, the auxiliary universe
/// joins the final move.
pub fn lift_selection(
    red: &SeReduction,
    game: &SelectionGame,
    cap: Cap,
) -> Result<(SelectionGame, Embedding), LiftError> {
    let (target, f) = reduce_base(red, &game.base, cap)?;
    let aux = f.image_mask().complement();
    let k = game.moves();
    let parts: Vec<SubsetMask> = game
        .parts()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let image = f.lift(p)?;
            Ok(if i + 1 == k { image.union(&aux) } else { image })
        })
        .collect::<Result<_, LiftError>>()?;
    Ok((SelectionGame::new(target, parts)?, f))
}

/// Lifted interdiction game: accessible sets are imaged, budgets unchanged;
/// tokens stay inside the embedded universe while the final solution search
/// ranges over the whole target.
pub fn lift_interdiction(
    red: &SeReduction,
    game: &InterdictionGame,
    cap: Cap,
) -> Result<(InterdictionGame, Embedding), LiftError> {
    let (target, f) = reduce_base(red, &game.base, cap)?;
    let nested: Vec<SubsetMask> = game
        .nested()
        .iter()
        .map(|c| f.lift(c))
        .collect::<Result<_, _>>()?;
    let lifted = InterdictionGame::new(
        target,
        nested,
        game.budget_protector,
        game.budget_blocker,
        game.mode,
    )?;
    Ok((lifted, f))
}

/// Lifted adjustable game: stage sets imaged with the auxiliary universe in
/// the last stage, vulnerable set imaged, budget unchanged.
pub fn lift_adjustable(
    red: &SeReduction,
    game: &AdjustableGame,
    cap: Cap,
) -> Result<(AdjustableGame, Embedding), LiftError> {
    let (target, f) = reduce_base(red, &game.base, cap)?;
    let aux = f.image_mask().complement();
    let k = game.stage_count();
    let stages: Vec<SubsetMask> = game
        .stages()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let image = f.lift(s)?;
            Ok(if i + 1 == k { image.union(&aux) } else { image })
        })
        .collect::<Result<_, LiftError>>()?;
    let vulnerable = f.lift(&game.vulnerable)?;
    let lifted = AdjustableGame::new(target, stages, vulnerable, game.budget)?;
    Ok((lifted, f))
}
