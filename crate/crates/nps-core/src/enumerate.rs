//! Brute-force solution enumeration and the checks built on top of it.

use crate::{CoreError, InstanceBundle, SubsetMask};

/// Enumeration never scans more than `2^HARD_LIMIT` subsets regardless of the
/// configured cap; masks are iterated through a single machine word.
pub const HARD_LIMIT: usize = 60;

/// Budget for exhaustive subset scans, in universe elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cap(usize);

impl Cap {
    pub const DEFAULT: Cap = Cap(24);

    pub fn new(limit: usize) -> Self {
        Cap(limit)
    }

    pub fn limit(&self) -> usize {
        self.0.min(HARD_LIMIT)
    }

    pub fn admit(&self, width: usize) -> Result<(), CoreError> {
        if width > self.limit() {
            Err(CoreError::CapExceeded {
                width,
                cap: self.limit(),
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Cap {
    fn default() -> Self {
        Cap::DEFAULT
    }
}

/// The full solution set of an instance, in ascending canonical mask order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    width: usize,
    masks: Vec<SubsetMask>,
}

impl SolutionSet {
    pub fn from_sorted(width: usize, masks: Vec<SubsetMask>) -> Self {
        debug_assert!(masks.windows(2).all(|w| w[0] < w[1]));
        SolutionSet { width, masks }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn masks(&self) -> &[SubsetMask] {
        &self.masks
    }

    pub fn contains(&self, mask: &SubsetMask) -> bool {
        self.masks.binary_search(mask).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &SubsetMask> {
        self.masks.iter()
    }

    /// Union of all solutions (empty mask when there are none).
    pub fn union_mask(&self) -> SubsetMask {
        let mut acc = SubsetMask::empty(self.width);
        for m in &self.masks {
            acc = acc.union(m);
        }
        acc
    }
}

/// Exhaustively enumerates `{ S : verifier accepts S }` in canonical order.
pub fn enumerate_solutions(inst: &InstanceBundle, cap: Cap) -> Result<SolutionSet, CoreError> {
    enumerate_solutions_threaded(inst, cap, 1)
}

/// Same as [`enumerate_solutions`], scanning the mask range on `threads`
/// worker threads. The result is identical to the single-threaded scan.
pub fn enumerate_solutions_threaded(
    inst: &InstanceBundle,
    cap: Cap,
    threads: usize,
) -> Result<SolutionSet, CoreError> {
    let width = inst.width();
    cap.admit(width)?;
    let total: u64 = 1u64 << width;
    let threads = threads.max(1).min(64);
    if threads == 1 || total < 4096 {
        let mut found = Vec::new();
        SubsetMask::full(width).for_each_subset(|s| {
            if inst.spec().verify(inst.payload(), s) {
                found.push(s.clone());
            }
        });
        // ascending subset order of the full mask is ascending numeric order
        return Ok(SolutionSet::from_sorted(width, found));
    }
    let chunk = total.div_ceil(threads as u64);
    let mut parts: Vec<Vec<SubsetMask>> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for t in 0..threads {
            let lo = chunk * t as u64;
            let hi = (lo + chunk).min(total);
            handles.push(scope.spawn(move || {
                let mut found = Vec::new();
                let mut mask = SubsetMask::empty(width);
                for value in lo..hi {
                    mask.set_word(value);
                    if inst.spec().verify(inst.payload(), &mask) {
                        found.push(mask.clone());
                    }
                }
                found
            }));
        }
        parts = handles.into_iter().map(|h| h.join().unwrap()).collect();
    });
    let mut all = Vec::new();
    for p in parts {
        all.extend(p);
    }
    Ok(SolutionSet::from_sorted(width, all))
}

/// Is `partial` extendable to a full solution using only elements outside
/// `frozen`? Requires `partial ⊆ frozen`.
pub fn is_partial_solution(
    inst: &InstanceBundle,
    partial: &SubsetMask,
    frozen: &SubsetMask,
    cap: Cap,
) -> Result<bool, CoreError> {
    let width = inst.width();
    cap.admit(width)?;
    for mask in [partial, frozen] {
        if mask.width() != width {
            return Err(CoreError::WidthMismatch {
                expected: width,
                got: mask.width(),
            });
        }
    }
    if !partial.is_subset_of(frozen) {
        return Err(CoreError::NotNested);
    }
    let outside = frozen.complement();
    Ok(outside.any_subset(|extra| {
        let candidate = partial.union(extra);
        inst.spec().verify(inst.payload(), &candidate)
    }))
}

/// Whether the union of all solutions covers the whole universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringReport {
    pub covering: bool,
    /// True when the solution set is empty, so `covering` holds vacuously.
    pub vacuous: bool,
    /// Elements that appear in no solution (empty iff covering).
    pub uncovered: SubsetMask,
}

pub fn is_universe_covering(inst: &InstanceBundle, cap: Cap) -> Result<CoveringReport, CoreError> {
    let solutions = enumerate_solutions(inst, cap)?;
    let union = solutions.union_mask();
    let uncovered = union.complement();
    if solutions.is_empty() {
        return Ok(CoveringReport {
            covering: true,
            vacuous: true,
            uncovered,
        });
    }
    Ok(CoveringReport {
        covering: uncovered.is_empty(),
        vacuous: false,
        uncovered,
    })
}
