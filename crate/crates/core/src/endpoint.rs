//! Instances whose sensors all start at a barrier endpoint.
//!
//! For such instances some optimal deployment keeps every sensor from 0 left
//! of every sensor from 1, and orders each side by a simple key: the maximum
//! reach at `t` for fixed radii, the battery for variable radii. Sensors from
//! 0 are ordered ascending by the key, sensors from 1 descending, so the
//! strongest sensors of both sides meet in the middle.

use std::cmp::Ordering;

use crate::decision::decide;
use crate::error::{Error, Result};
use crate::model::{OrderConstraint, ProblemInstance, RadiusKind, Sensor, Solution};
use crate::scalar::Scalar;
use crate::search::{lifetime_upper_bound, parametric_search, SearchConfig};

/// Partition of the sensors by starting endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndpointSplit {
    pub left_ids: Vec<usize>,
    pub right_ids: Vec<usize>,
    /// Number of sensors starting at 0.
    pub split_index: usize,
}

pub fn split_endpoints<S: Scalar>(inst: &ProblemInstance<S>) -> Result<EndpointSplit> {
    let mut left_ids = Vec::new();
    let mut right_ids = Vec::new();
    for (i, s) in inst.sensors().iter().enumerate() {
        if s.x == S::zero() {
            left_ids.push(i);
        } else if s.x == S::one() {
            right_ids.push(i);
        } else {
            return Err(Error::Unsupported(format!(
                "sensor {} starts at {}, not at a barrier endpoint",
                i + 1,
                s.x
            )));
        }
    }
    Ok(EndpointSplit {
        split_index: left_ids.len(),
        left_ids,
        right_ids,
    })
}

/// Maximum reach of a fixed-radius sensor at lifetime `t`: the farthest point
/// from its origin it can cover, or 0 when it cannot sense for `t` at all.
pub fn reach_value<S: Scalar>(s: &Sensor<S>, t: S, a: S, alpha: S) -> Result<S> {
    let rho = s
        .rho
        .ok_or_else(|| Error::Unsupported("reach value needs a fixed radius".into()))?;
    let need = t * rho.pow_alpha(alpha);
    if need <= s.battery {
        Ok((s.battery - need) / a + rho)
    } else {
        Ok(S::zero())
    }
}

fn bidirectional<S: Scalar>(split: &EndpointSplit, key: impl Fn(usize) -> S) -> Result<OrderConstraint> {
    let cmp = |i: &usize, j: &usize| key(*i).partial_cmp(&key(*j)).unwrap_or(Ordering::Equal);
    let mut left = split.left_ids.clone();
    left.sort_by(|i, j| cmp(i, j).then(i.cmp(j)));
    let mut right = split.right_ids.clone();
    right.sort_by(|i, j| cmp(j, i).then(i.cmp(j)));
    left.extend(right);
    OrderConstraint::new(left)
}

/// Bi-directional reach order at lifetime `t`.
pub fn bidirectional_reach_order<S: Scalar>(inst: &ProblemInstance<S>, t: S) -> Result<OrderConstraint> {
    inst.require_kind(RadiusKind::Fixed)?;
    let split = split_endpoints(inst)?;
    let a = inst.move_cost().positive()?;
    let reaches = inst
        .sensors()
        .iter()
        .map(|s| reach_value(s, t, a, inst.alpha()))
        .collect::<Result<Vec<_>>>()?;
    bidirectional(&split, |i| reaches[i])
}

/// Bi-directional battery order; independent of the lifetime.
pub fn bidirectional_battery_order<S: Scalar>(inst: &ProblemInstance<S>) -> Result<OrderConstraint> {
    let split = split_endpoints(inst)?;
    bidirectional(&split, |i| inst.sensors()[i].battery)
}

/// Optimal lifetime (within epsilon) for endpoint instances, together with
/// the order of the certified deployment.
///
/// Variable radii use one battery order throughout. Fixed radii recompute the
/// reach order at every probed lifetime.
pub fn solve_endpoint<S: Scalar>(
    inst: &ProblemInstance<S>,
    cfg: &SearchConfig<S>,
) -> Result<(Solution<S>, Option<OrderConstraint>)> {
    split_endpoints(inst)?;
    inst.move_cost().positive()?;
    let upper = lifetime_upper_bound(inst);
    let bracket = match inst.kind() {
        RadiusKind::Variable => {
            let order = bidirectional_battery_order(inst)?;
            parametric_search(inst, upper, cfg, |t| Ok((decide(inst, &order, t)?, order.clone())))?
        }
        RadiusKind::Fixed => parametric_search(inst, upper, cfg, |t| {
            let order = bidirectional_reach_order(inst, t)?;
            Ok((decide(inst, &order, t)?, order))
        })?,
    };
    Ok((bracket.solution, bracket.order))
}
