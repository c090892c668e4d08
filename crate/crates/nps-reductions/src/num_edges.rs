//! Number-problem reductions: the digit-table construction out of 3-SAT and
//! the chain through knapsack, partition, and scheduling.

use std::sync::Arc;

use nps_catalog::payload::{
    CnfFormula, KnapsackInstance, PartitionInstance, SchedulingInstance, SubsetSumInstance,
};
use nps_core::{CoreError, Embedding, InstanceBundle, ReducedInstance, SeReduction};

use crate::registry::specs;

/// Digit table in base 10: one column per variable (most significant) then
/// one per clause. Each literal number carries its variable digit plus a 1
/// in every clause it appears in; two slack numbers per clause carry a 1
/// each; the target digit is 1 per variable column and 3 per clause column.
pub fn three_sat_l_to_subset_sum() -> SeReduction {
    SeReduction::new(specs::three_sat_l(), specs::subset_sum(), |inst| {
        let cnf: &CnfFormula = inst.payload_as()?;
        let n = cnf.num_vars;
        let m = cnf.clauses.len();
        if n + m > 16 {
            return Err(CoreError::InvalidInstance(
                "digit table would overflow 64-bit values".into(),
            ));
        }
        let var_digit = |i: usize| 10u64.pow((m + n - i) as u32); // i is 1-based
        let clause_digit = |j: usize| 10u64.pow((m - j) as u32); // j is 1-based
        let literal_value = |wanted: i32| {
            let var = wanted.unsigned_abs() as usize;
            let mut v = var_digit(var);
            for (j, clause) in cnf.clauses.iter().enumerate() {
                if clause.contains(&wanted) {
                    v += clause_digit(j + 1);
                }
            }
            v
        };
        let mut values: Vec<u64> = Vec::with_capacity(2 * n + 2 * m);
        for i in 1..=n as i32 {
            values.push(literal_value(i));
        }
        for i in 1..=n as i32 {
            values.push(literal_value(-i));
        }
        for j in 1..=m {
            values.push(clause_digit(j));
            values.push(clause_digit(j));
        }
        let target_sum: u64 =
            (1..=n).map(var_digit).sum::<u64>() + (1..=m).map(|j| 3 * clause_digit(j)).sum::<u64>();
        let width = values.len();
        let target = InstanceBundle::new(
            specs::subset_sum(),
            Arc::new(SubsetSumInstance {
                values,
                target: target_sum,
            }),
        )?;
        Ok(ReducedInstance {
            target,
            embedding: Embedding::prefix(2 * n, width)?,
        })
    })
}

/// `p = w = a` with `W = P = M`; identity embedding.
pub fn subset_sum_to_knapsack() -> SeReduction {
    SeReduction::new(specs::subset_sum(), specs::knapsack(), |inst| {
        let src: &SubsetSumInstance = inst.payload_as()?;
        let n = src.values.len();
        let target = InstanceBundle::new(
            specs::knapsack(),
            Arc::new(KnapsackInstance {
                profits: src.values.clone(),
                weights: src.values.clone(),
                weight_cap: src.target,
                profit_goal: src.target,
            }),
        )?;
        Ok(ReducedInstance {
            target,
            embedding: Embedding::identity(n),
        })
    })
}

/// Two anchor elements prepended: the anchored one completes an M-sum subset
/// to half the new total, the other balances the opposite side. When the
/// target exceeds the total sum, an unbalanceable anchor keeps both solution
/// sets empty.
pub fn subset_sum_to_partition() -> SeReduction {
    SeReduction::new(specs::subset_sum(), specs::partition(), |inst| {
        let src: &SubsetSumInstance = inst.payload_as()?;
        let sum: u64 = src.values.iter().sum();
        let mut values: Vec<u64> = if src.target <= sum {
            vec![sum - src.target + 1, src.target + 1]
        } else {
            vec![4 * sum + 2, 1]
        };
        values.extend_from_slice(&src.values);
        let n = src.values.len();
        let target =
            InstanceBundle::new(specs::partition(), Arc::new(PartitionInstance { values }))?;
        Ok(ReducedInstance {
            target,
            embedding: Embedding::new((2..n + 2).collect(), n + 2)?,
        })
    })
}

/// Jobs are the numbers, threshold half the total; anchors line up.
pub fn partition_to_scheduling() -> SeReduction {
    SeReduction::new(specs::partition(), specs::scheduling(), |inst| {
        let src: &PartitionInstance = inst.payload_as()?;
        let total: u64 = src.values.iter().sum();
        let n = src.values.len();
        let target = InstanceBundle::new(
            specs::scheduling(),
            Arc::new(SchedulingInstance {
                times: src.values.clone(),
                threshold: total / 2,
            }),
        )?;
        Ok(ReducedInstance {
            target,
            embedding: Embedding::identity(n),
        })
    })
}
