//! Set cover and hitting set.

use nps_core::{CoreError, Payload, Problem, SubsetMask, UniverseElement};

use crate::payload::{HittingSetInstance, SetCoverInstance};

pub struct SetCover;

impl Problem for SetCover {
    fn name(&self) -> &str {
        "set-cover"
    }

    fn universe(&self, payload: &Payload) -> Result<Vec<UniverseElement>, CoreError> {
        let inst: &SetCoverInstance = nps_core::payload_as(payload, self.name())?;
        inst.validate()?;
        Ok((0..inst.sets.len())
            .map(|i| UniverseElement::new(i, format!("S{}", i + 1)))
            .collect())
    }

    fn universe_size(&self, payload: &Payload) -> Result<usize, CoreError> {
        Ok(
            nps_core::payload_as::<SetCoverInstance>(payload, self.name())?
                .sets
                .len(),
        )
    }

    fn verify(&self, payload: &Payload, subset: &SubsetMask) -> bool {
        let inst: &SetCoverInstance = payload.downcast_ref().expect("payload type");
        if subset.count() > inst.k {
            return false;
        }
        let mut covered = vec![false; inst.num_elements];
        for i in subset.ids() {
            for &e in &inst.sets[i] {
                covered[e - 1] = true;
            }
        }
        covered.into_iter().all(|c| c)
    }
}

pub struct HittingSet;

impl Problem for HittingSet {
    fn name(&self) -> &str {
        "hitting-set"
    }

    fn universe(&self, payload: &Payload) -> Result<Vec<UniverseElement>, CoreError> {
        let inst: &HittingSetInstance = nps_core::payload_as(payload, self.name())?;
        inst.validate()?;
        Ok((0..inst.num_elements)
            .map(|i| UniverseElement::new(i, format!("e{}", i + 1)))
            .collect())
    }

    fn universe_size(&self, payload: &Payload) -> Result<usize, CoreError> {
        Ok(nps_core::payload_as::<HittingSetInstance>(payload, self.name())?.num_elements)
    }

    fn verify(&self, payload: &Payload, subset: &SubsetMask) -> bool {
        let inst: &HittingSetInstance = payload.downcast_ref().expect("payload type");
        subset.count() <= inst.k
            && inst
                .sets
                .iter()
                .all(|s| s.iter().any(|&e| subset.contains(e - 1)))
    }
}
