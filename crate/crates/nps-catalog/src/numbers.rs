//! Number problems: subset sum, knapsack, partition (anchored and free), and
//! two-machine makespan scheduling.

use nps_core::{CoreError, Payload, Problem, SubsetMask, UniverseElement};

use crate::payload::{KnapsackInstance, PartitionInstance, SchedulingInstance, SubsetSumInstance};

fn value_universe(values: &[u64], prefix: &str) -> Vec<UniverseElement> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| UniverseElement::new(i, format!("{prefix}{}={v}", i + 1)))
        .collect()
}

fn sum_of(values: &[u64], subset: &SubsetMask) -> u64 {
    subset.ids().into_iter().map(|i| values[i]).sum()
}

pub struct SubsetSum;

impl Problem for SubsetSum {
    fn name(&self) -> &str {
        "subset-sum"
    }

    fn universe(&self, payload: &Payload) -> Result<Vec<UniverseElement>, CoreError> {
        let inst: &SubsetSumInstance = nps_core::payload_as(payload, self.name())?;
        inst.validate()?;
        Ok(value_universe(&inst.values, "a"))
    }

    fn universe_size(&self, payload: &Payload) -> Result<usize, CoreError> {
        Ok(
            nps_core::payload_as::<SubsetSumInstance>(payload, self.name())?
                .values
                .len(),
        )
    }

    fn verify(&self, payload: &Payload, subset: &SubsetMask) -> bool {
        let inst: &SubsetSumInstance = payload.downcast_ref().expect("payload type");
        sum_of(&inst.values, subset) == inst.target
    }
}

pub struct Knapsack;

impl Problem for Knapsack {
    fn name(&self) -> &str {
        "knapsack"
    }

    fn universe(&self, payload: &Payload) -> Result<Vec<UniverseElement>, CoreError> {
        let inst: &KnapsackInstance = nps_core::payload_as(payload, self.name())?;
        inst.validate()?;
        Ok(inst
            .profits
            .iter()
            .zip(&inst.weights)
            .enumerate()
            .map(|(i, (p, w))| UniverseElement::new(i, format!("o{}=p{p}w{w}", i + 1)))
            .collect())
    }

    fn universe_size(&self, payload: &Payload) -> Result<usize, CoreError> {
        Ok(
            nps_core::payload_as::<KnapsackInstance>(payload, self.name())?
                .profits
                .len(),
        )
    }

    fn verify(&self, payload: &Payload, subset: &SubsetMask) -> bool {
        let inst: &KnapsackInstance = payload.downcast_ref().expect("payload type");
        sum_of(&inst.weights, subset) <= inst.weight_cap
            && sum_of(&inst.profits, subset) >= inst.profit_goal
    }
}

/// Partition with the symmetry-breaking anchor: the first element must be in
/// the solution. This is the completeness-relevant variant.
pub struct Partition;

/// Partition without the anchor; kept as a separate problem because its
/// solution set is complement-closed, which makes it universe-covering.
pub struct PartitionFree;

fn partition_balanced(values: &[u64], subset: &SubsetMask) -> bool {
    let total: u64 = values.iter().sum();
    let chosen = sum_of(values, subset);
    total == 2 * chosen
}

impl Problem for Partition {
    fn name(&self) -> &str {
        "partition"
    }

    fn universe(&self, payload: &Payload) -> Result<Vec<UniverseElement>, CoreError> {
        let inst: &PartitionInstance = nps_core::payload_as(payload, self.name())?;
        inst.validate()?;
        Ok(value_universe(&inst.values, "a"))
    }

    fn universe_size(&self, payload: &Payload) -> Result<usize, CoreError> {
        Ok(
            nps_core::payload_as::<PartitionInstance>(payload, self.name())?
                .values
                .len(),
        )
    }

    fn verify(&self, payload: &Payload, subset: &SubsetMask) -> bool {
        let inst: &PartitionInstance = payload.downcast_ref().expect("payload type");
        !inst.values.is_empty() && subset.contains(0) && partition_balanced(&inst.values, subset)
    }
}

impl Problem for PartitionFree {
    fn name(&self) -> &str {
        "partition-1"
    }

    fn universe(&self, payload: &Payload) -> Result<Vec<UniverseElement>, CoreError> {
        let inst: &PartitionInstance = nps_core::payload_as(payload, self.name())?;
        inst.validate()?;
        Ok(value_universe(&inst.values, "a"))
    }

    fn universe_size(&self, payload: &Payload) -> Result<usize, CoreError> {
        Ok(
            nps_core::payload_as::<PartitionInstance>(payload, self.name())?
                .values
                .len(),
        )
    }

    fn verify(&self, payload: &Payload, subset: &SubsetMask) -> bool {
        let inst: &PartitionInstance = payload.downcast_ref().expect("payload type");
        partition_balanced(&inst.values, subset)
    }
}

/// Two machine makespan scheduling: the chosen jobs run on machine one, the
/// rest on machine two, both within the threshold; the first job is anchored
/// to machine one.
pub struct Scheduling;

impl Problem for Scheduling {
    fn name(&self) -> &str {
        "scheduling"
    }

    fn universe(&self, payload: &Payload) -> Result<Vec<UniverseElement>, CoreError> {
        let inst: &SchedulingInstance = nps_core::payload_as(payload, self.name())?;
        inst.validate()?;
        Ok(value_universe(&inst.times, "t"))
    }

    fn universe_size(&self, payload: &Payload) -> Result<usize, CoreError> {
        Ok(
            nps_core::payload_as::<SchedulingInstance>(payload, self.name())?
                .times
                .len(),
        )
    }

    fn verify(&self, payload: &Payload, subset: &SubsetMask) -> bool {
        let inst: &SchedulingInstance = payload.downcast_ref().expect("payload type");
        if inst.times.is_empty() || !subset.contains(0) {
            return false;
        }
        let total: u64 = inst.times.iter().sum();
        let first = sum_of(&inst.times, subset);
        first <= inst.threshold && total - first <= inst.threshold
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nps_core::{enumerate_solutions, Cap, InstanceBundle, ProblemSpec};
    use std::sync::Arc;

    fn mask(width: usize, ids: &[usize]) -> SubsetMask {
        SubsetMask::from_ids(width, ids).unwrap()
    }

    #[test]
    fn subset_sum_example() {
        let inst = InstanceBundle::new(
            ProblemSpec::new(SubsetSum),
            Arc::new(SubsetSumInstance {
                values: vec![1, 2, 3],
                target: 3,
            }),
        )
        .unwrap();
        assert!(inst.is_solution(&mask(3, &[2])).unwrap());
        assert!(inst.is_solution(&mask(3, &[0, 1])).unwrap());
        assert!(!inst.is_solution(&mask(3, &[0])).unwrap());
    }

    #[test]
    fn knapsack_from_subset_sum_encoding() {
        // p = w = a and W = P = M: solutions are exactly the M-sum subsets
        let inst = InstanceBundle::new(
            ProblemSpec::new(Knapsack),
            Arc::new(KnapsackInstance {
                profits: vec![1, 2, 3],
                weights: vec![1, 2, 3],
                weight_cap: 3,
                profit_goal: 3,
            }),
        )
        .unwrap();
        assert!(inst.is_solution(&mask(3, &[2])).unwrap());
        assert!(!inst.is_solution(&mask(3, &[1, 2])).unwrap());
    }

    #[test]
    fn anchored_partition_example() {
        let inst = InstanceBundle::new(
            ProblemSpec::new(Partition),
            Arc::new(PartitionInstance {
                values: vec![4, 4, 1, 2, 3],
            }),
        )
        .unwrap();
        // both sides sum to 7 and the first element is chosen
        assert!(inst.is_solution(&mask(5, &[0, 4])).unwrap());
        // balanced but missing the anchor
        assert!(!inst.is_solution(&mask(5, &[1, 4])).unwrap());
    }

    #[test]
    fn free_partition_is_complement_closed() {
        let inst = InstanceBundle::new(
            ProblemSpec::new(PartitionFree),
            Arc::new(PartitionInstance {
                values: vec![1, 1, 2],
            }),
        )
        .unwrap();
        let sols = enumerate_solutions(&inst, Cap::default()).unwrap();
        assert!(!sols.is_empty());
        for s in sols.iter() {
            assert!(sols.contains(&s.complement()));
        }
    }

    #[test]
    fn scheduling_examples() {
        let inst = InstanceBundle::new(
            ProblemSpec::new(Scheduling),
            Arc::new(SchedulingInstance {
                times: vec![4, 4, 1, 2, 3],
                threshold: 7,
            }),
        )
        .unwrap();
        assert!(inst.is_solution(&mask(5, &[0, 4])).unwrap());
        // machine one overloaded
        assert!(!inst.is_solution(&mask(5, &[0, 1, 4])).unwrap());
        // odd total sum: nothing balances under T = floor(sum/2)
        let odd = InstanceBundle::new(
            ProblemSpec::new(Scheduling),
            Arc::new(SchedulingInstance {
                times: vec![1, 2],
                threshold: 1,
            }),
        )
        .unwrap();
        assert!(enumerate_solutions(&odd, Cap::default())
            .unwrap()
            .is_empty());
    }
}
