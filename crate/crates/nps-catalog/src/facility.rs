//! Facility problems: UFL, p-center, p-median. The universe is the facility
//! set; an empty facility choice serves no client, so it is rejected whenever
//! clients exist.

use nps_core::{CoreError, Payload, Problem, SubsetMask, UniverseElement};

use crate::payload::{validate_service, PFacilityInstance, UflInstance};

fn facility_universe(n: usize) -> Vec<UniverseElement> {
    (0..n)
        .map(|i| UniverseElement::new(i, format!("f{}", i + 1)))
        .collect()
}

fn min_service(service: &[Vec<i64>], chosen: &[usize], client: usize) -> i64 {
    chosen
        .iter()
        .map(|&f| service[f][client])
        .min()
        .expect("nonempty")
}

pub struct Ufl;

impl Problem for Ufl {
    fn name(&self) -> &str {
        "ufl"
    }

    fn universe(&self, payload: &Payload) -> Result<Vec<UniverseElement>, CoreError> {
        let inst: &UflInstance = nps_core::payload_as(payload, self.name())?;
        let open_total: i128 = inst.open_costs.iter().map(|&x| (x as i128).abs()).sum();
        if open_total > i64::MAX as i128 / 4 {
            return Err(CoreError::InvalidInstance("open cost sum overflows".into()));
        }
        validate_service(&inst.service, inst.open_costs.len())?;
        Ok(facility_universe(inst.open_costs.len()))
    }

    fn universe_size(&self, payload: &Payload) -> Result<usize, CoreError> {
        Ok(nps_core::payload_as::<UflInstance>(payload, self.name())?
            .open_costs
            .len())
    }

    fn verify(&self, payload: &Payload, subset: &SubsetMask) -> bool {
        let inst: &UflInstance = payload.downcast_ref().expect("payload type");
        let clients = inst.service.first().map(Vec::len).unwrap_or(0);
        let chosen = subset.ids();
        if chosen.is_empty() && clients > 0 {
            return false;
        }
        let mut total: i64 = chosen.iter().map(|&f| inst.open_costs[f]).sum();
        for c in 0..clients {
            total += min_service(&inst.service, &chosen, c);
        }
        total <= inst.threshold
    }
}

pub struct PCenter;

impl Problem for PCenter {
    fn name(&self) -> &str {
        "p-center"
    }

    fn universe(&self, payload: &Payload) -> Result<Vec<UniverseElement>, CoreError> {
        let inst: &PFacilityInstance = nps_core::payload_as(payload, self.name())?;
        validate_service(&inst.service, inst.service.len())?;
        Ok(facility_universe(inst.service.len()))
    }

    fn universe_size(&self, payload: &Payload) -> Result<usize, CoreError> {
        Ok(
            nps_core::payload_as::<PFacilityInstance>(payload, self.name())?
                .service
                .len(),
        )
    }

    fn verify(&self, payload: &Payload, subset: &SubsetMask) -> bool {
        let inst: &PFacilityInstance = payload.downcast_ref().expect("payload type");
        let clients = inst.service.first().map(Vec::len).unwrap_or(0);
        let chosen = subset.ids();
        if chosen.len() > inst.p {
            return false;
        }
        if chosen.is_empty() {
            return clients == 0;
        }
        (0..clients).all(|c| min_service(&inst.service, &chosen, c) <= inst.threshold)
    }
}

pub struct PMedian;

impl Problem for PMedian {
    fn name(&self) -> &str {
        "p-median"
    }

    fn universe(&self, payload: &Payload) -> Result<Vec<UniverseElement>, CoreError> {
        let inst: &PFacilityInstance = nps_core::payload_as(payload, self.name())?;
        validate_service(&inst.service, inst.service.len())?;
        Ok(facility_universe(inst.service.len()))
    }

    fn universe_size(&self, payload: &Payload) -> Result<usize, CoreError> {
        Ok(
            nps_core::payload_as::<PFacilityInstance>(payload, self.name())?
                .service
                .len(),
        )
    }

    fn verify(&self, payload: &Payload, subset: &SubsetMask) -> bool {
        let inst: &PFacilityInstance = payload.downcast_ref().expect("payload type");
        let clients = inst.service.first().map(Vec::len).unwrap_or(0);
        let chosen = subset.ids();
        if chosen.len() > inst.p {
            return false;
        }
        if chosen.is_empty() {
            return clients == 0;
        }
        let total: i64 = (0..clients)
            .map(|c| min_service(&inst.service, &chosen, c))
            .sum();
        total <= inst.threshold
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nps_core::{InstanceBundle, ProblemSpec};
    use std::sync::Arc;

    #[test]
    fn ufl_one_facility_one_client() {
        let inst = InstanceBundle::new(
            ProblemSpec::new(Ufl),
            Arc::new(UflInstance {
                open_costs: vec![0],
                service: vec![vec![0]],
                threshold: 0,
            }),
        )
        .unwrap();
        assert!(inst
            .is_solution(&SubsetMask::from_ids(1, &[0]).unwrap())
            .unwrap());
        assert!(!inst.is_solution(&SubsetMask::empty(1)).unwrap());
    }

    #[test]
    fn p_center_from_cover_shape() {
        // triangle converted to facilities=vertices, clients=edges, costs
        // 0/sentinel; a cover pair serves every edge at cost 0
        let sentinel = 4;
        let edges = [(0usize, 1usize), (0, 2), (1, 2)];
        let service: Vec<Vec<i64>> = (0..3)
            .map(|v| {
                edges
                    .iter()
                    .map(|&(a, b)| if v == a || v == b { 0 } else { sentinel })
                    .collect()
            })
            .collect();
        let inst = InstanceBundle::new(
            ProblemSpec::new(PCenter),
            Arc::new(PFacilityInstance {
                service: service.clone(),
                p: 2,
                threshold: 0,
            }),
        )
        .unwrap();
        assert!(inst
            .is_solution(&SubsetMask::from_ids(3, &[0, 1]).unwrap())
            .unwrap());

        let med = InstanceBundle::new(
            ProblemSpec::new(PMedian),
            Arc::new(PFacilityInstance {
                service,
                p: 2,
                threshold: 0,
            }),
        )
        .unwrap();
        // {v0} is not a cover: edge (1,2) pays the sentinel
        assert!(!med
            .is_solution(&SubsetMask::from_ids(3, &[0]).unwrap())
            .unwrap());
    }
}
