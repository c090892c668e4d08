//! Machine checking of the solution-embedding property by exhaustive
//! enumeration on both sides of a reduction.

use crate::{Cap, CoreError, InstanceBundle, ReducedInstance, SeReduction, SubsetMask};

/// Outcome of checking `{f(S) : S ∈ S(I)} = {S' ∩ f(U) : S' ∈ S(g(I))}` on a
/// concrete instance, with witnesses for either direction of failure.
#[derive(Clone, Debug)]
pub struct SeCheckReport {
    /// The two restricted solution sets are equal.
    pub equal: bool,
    /// `S(I) ≠ ∅  ⟺  S(g(I)) ≠ ∅` (the plain many-one property).
    pub yes_iff_yes: bool,
    pub source_solutions: usize,
    pub target_solutions: usize,
    /// `|{f(S)}|`, always equal to `source_solutions`.
    pub lifted: usize,
    /// `|{S' ∩ f(U)}|` after dedup.
    pub restricted: usize,
    /// Lifted source solutions with no matching target restriction (target width).
    pub missing_in_target: Vec<SubsetMask>,
    /// Target restrictions that match no source solution (target width).
    pub unexpected_in_target: Vec<SubsetMask>,
    /// Both solution sets are empty; the set equality holds vacuously.
    pub both_empty: bool,
}

impl SeCheckReport {
    pub fn passed(&self) -> bool {
        self.equal && self.yes_iff_yes
    }
}

/// Applies `red` to `inst` and checks the solution-embedding property by
/// enumerating both solution sets. Both universes must fit under `cap`.
pub fn check_se_property(
    red: &SeReduction,
    inst: &InstanceBundle,
    cap: Cap,
) -> Result<SeCheckReport, CoreError> {
    let reduced = red.apply(inst)?;
    check_se_on_reduced(inst, &reduced, cap)
}

/// Same check for an already-materialized reduction output.
pub fn check_se_on_reduced(
    inst: &InstanceBundle,
    reduced: &ReducedInstance,
    cap: Cap,
) -> Result<SeCheckReport, CoreError> {
    check_se_on_reduced_threaded(inst, reduced, cap, 1)
}

/// Threaded variant; the report is identical to the single-threaded one.
pub fn check_se_on_reduced_threaded(
    inst: &InstanceBundle,
    reduced: &ReducedInstance,
    cap: Cap,
    threads: usize,
) -> Result<SeCheckReport, CoreError> {
    cap.admit(inst.width())?;
    cap.admit(reduced.target.width())?;
    let source = crate::enumerate_solutions_threaded(inst, cap, threads)?;
    let target = crate::enumerate_solutions_threaded(&reduced.target, cap, threads)?;

    let image = reduced.embedding.image_mask();
    let mut lifted: Vec<SubsetMask> = source
        .iter()
        .map(|s| reduced.embedding.lift(s))
        .collect::<Result<_, _>>()?;
    lifted.sort();
    lifted.dedup();

    let mut restricted: Vec<SubsetMask> = target.iter().map(|s| s.intersect(&image)).collect();
    restricted.sort();
    restricted.dedup();

    let missing_in_target: Vec<SubsetMask> = lifted
        .iter()
        .filter(|m| restricted.binary_search(m).is_err())
        .cloned()
        .collect();
    let unexpected_in_target: Vec<SubsetMask> = restricted
        .iter()
        .filter(|m| lifted.binary_search(m).is_err())
        .cloned()
        .collect();

    let equal = missing_in_target.is_empty() && unexpected_in_target.is_empty();
    Ok(SeCheckReport {
        equal,
        yes_iff_yes: source.is_empty() == target.is_empty(),
        source_solutions: source.len(),
        target_solutions: target.len(),
        lifted: lifted.len(),
        restricted: restricted.len(),
        missing_in_target,
        unexpected_in_target,
        both_empty: source.is_empty() && target.is_empty(),
    })
}
