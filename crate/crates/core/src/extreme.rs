//! Solvers for the two extreme movement costs: static sensors (`a = infinity`)
//! and free movement (`a = 0`).

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::model::{max_uncovered_gap, MoveCost, ProblemInstance, RadiusKind, Solution};
use crate::scalar::Scalar;

/// Sensors picked by the greedy, in pick order.
#[derive(Debug, Clone, PartialEq)]
pub struct GreedySelection<S> {
    pub chosen: Vec<usize>,
    /// `b_i / rho_i^alpha` per sensor, infinite for `rho_i = 0`.
    pub individual_lifetimes: Vec<S>,
}

impl<S: Scalar> GreedySelection<S> {
    pub fn lifetime(&self) -> S {
        self.chosen
            .iter()
            .map(|&i| self.individual_lifetimes[i])
            .fold(S::infinity(), S::min)
    }
}

fn individual_lifetimes<S: Scalar>(inst: &ProblemInstance<S>) -> Vec<S> {
    inst.sensors()
        .iter()
        .map(|s| {
            let rho = s.rho.unwrap_or_else(S::zero);
            if rho > S::zero() {
                s.battery / rho.pow_alpha(inst.alpha())
            } else {
                S::infinity()
            }
        })
        .collect()
}

/// Adds sensors with positive radius by descending individual lifetime (ties
/// by index) until `covers` accepts the chosen set.
fn greedy<S: Scalar>(inst: &ProblemInstance<S>, covers: impl Fn(&[usize]) -> bool) -> Option<GreedySelection<S>> {
    let lifetimes = individual_lifetimes(inst);
    let mut candidates: Vec<usize> = (0..inst.len())
        .filter(|&i| inst.sensors()[i].rho.is_some_and(|rho| rho > S::zero()))
        .collect();
    if !covers(&candidates) {
        return None;
    }
    candidates.sort_by(|&i, &j| {
        lifetimes[j]
            .partial_cmp(&lifetimes[i])
            .unwrap_or(Ordering::Equal)
            .then(i.cmp(&j))
    });
    let mut chosen = Vec::new();
    for i in candidates {
        chosen.push(i);
        if covers(&chosen) {
            break;
        }
    }
    Some(GreedySelection {
        chosen,
        individual_lifetimes: lifetimes,
    })
}

/// Whether the stationary intervals `[x_i - rho_i, x_i + rho_i]` of `ids`
/// cover the barrier.
pub(crate) fn static_covers<S: Scalar>(inst: &ProblemInstance<S>, ids: &[usize]) -> bool {
    let intervals = ids
        .iter()
        .map(|&i| {
            let s = &inst.sensors()[i];
            let rho = s.rho.unwrap_or_else(S::zero);
            (s.x - rho, s.x + rho)
        })
        .collect();
    max_uncovered_gap(intervals) <= S::COVER_TOL
}

/// Whether the diameters of `ids` add up to the barrier length.
pub(crate) fn diameters_cover<S: Scalar>(inst: &ProblemInstance<S>, ids: &[usize]) -> bool {
    let total = ids
        .iter()
        .fold(S::zero(), |acc, &i| acc + inst.sensors()[i].rho.unwrap_or_else(S::zero));
    S::lit(2.0) * total >= S::one() - S::COVER_TOL
}

/// Greedy selection for static fixed radii, or `None` when even all sensors
/// together leave a gap.
pub fn static_fixed_selection<S: Scalar>(inst: &ProblemInstance<S>) -> Option<GreedySelection<S>> {
    greedy(inst, |ids| static_covers(inst, ids))
}

/// Greedy selection for free-moving fixed radii.
pub fn dynamic_fixed_selection<S: Scalar>(inst: &ProblemInstance<S>) -> Option<GreedySelection<S>> {
    greedy(inst, |ids| diameters_cover(inst, ids))
}

fn require_cost<S: Scalar>(inst: &ProblemInstance<S>, wanted: MoveCost<S>) -> Result<()> {
    let ok = match wanted {
        MoveCost::Static => inst.move_cost().is_static(),
        MoveCost::Finite(_) => inst.move_cost().is_free(),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Unsupported(match wanted {
            MoveCost::Static => "solver requires a static instance".into(),
            MoveCost::Finite(_) => "solver requires zero movement cost".into(),
        }))
    }
}

/// Static sensors with fixed radii: nobody moves, the longest-lived sensors
/// are switched on until the barrier is covered.
pub fn solve_static_fixed<S: Scalar>(inst: &ProblemInstance<S>) -> Result<Solution<S>> {
    inst.require_kind(RadiusKind::Fixed)?;
    require_cost(inst, MoveCost::Static)?;
    let Some(sel) = static_fixed_selection(inst) else {
        return Ok(Solution::unachievable(inst));
    };
    let mut sol = Solution::unachievable(inst);
    for &i in &sel.chosen {
        sol.r[i] = inst.sensors()[i].rho.unwrap_or_else(S::zero);
    }
    sol.lifetime = sel.lifetime();
    sol.achievable = true;
    Ok(sol)
}

/// Free-moving sensors with fixed radii. Chosen sensors are laid out abutting
/// from 0 in index order; the rest are parked at 0, powered down.
pub fn solve_dynamic_fixed<S: Scalar>(inst: &ProblemInstance<S>) -> Result<Solution<S>> {
    inst.require_kind(RadiusKind::Fixed)?;
    require_cost(inst, MoveCost::Finite(S::zero()))?;
    let Some(sel) = dynamic_fixed_selection(inst) else {
        return Ok(Solution::unachievable(inst));
    };
    let n = inst.len();
    let mut chosen = sel.chosen.clone();
    chosen.sort_unstable();
    let mut y = vec![S::zero(); n];
    let mut r = vec![S::zero(); n];
    let mut edge = S::zero();
    for i in chosen {
        let rho = inst.sensors()[i].rho.unwrap_or_else(S::zero);
        y[i] = edge + rho;
        r[i] = rho;
        edge = edge + rho + rho;
    }
    Ok(Solution {
        y,
        r,
        lifetime: sel.lifetime(),
        achievable: true,
    })
}

/// Free-moving sensors with variable radii.
///
/// The radii `r_i = b_i^(1/alpha) / (2 sum_j b_j^(1/alpha))` give every sensor
/// the same lifetime `(2 sum_j b_j^(1/alpha))^alpha` and tile the barrier
/// exactly; any other feasible assignment enlarges some radius and so
/// shortens that sensor's life.
pub fn solve_dynamic_variable<S: Scalar>(inst: &ProblemInstance<S>) -> Result<Solution<S>> {
    inst.require_kind(RadiusKind::Variable)?;
    require_cost(inst, MoveCost::Finite(S::zero()))?;
    let alpha = inst.alpha();
    let roots: Vec<S> = inst.sensors().iter().map(|s| s.battery.root_alpha(alpha)).collect();
    let total = roots.iter().fold(S::zero(), |acc, &v| acc + v);
    if total <= S::zero() {
        return Ok(Solution::unachievable(inst));
    }
    let two_total = S::lit(2.0) * total;
    let r: Vec<S> = roots.iter().map(|&v| v / two_total).collect();
    let mut y = Vec::with_capacity(r.len());
    let mut edge = S::zero();
    for &ri in &r {
        y.push(edge + ri);
        edge = edge + ri + ri;
    }
    Ok(Solution {
        y,
        r,
        lifetime: two_total.pow_alpha(alpha),
        achievable: true,
    })
}
