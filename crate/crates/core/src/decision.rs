//! Order-constrained decision procedures: given an order and a lifetime `t`,
//! decide whether some deployment respecting the order covers `[0, 1]` for
//! `t` time, and build one if so.
//!
//! Both procedures sweep the sensors in order while maintaining the covered
//! prefix `[0, z]`. A sensor that can extend the prefix is placed where it
//! pushes `z` furthest; one that cannot is parked as far left as the order
//! allows and powered down. Earlier sensors that end up to the right of a
//! newly placed one are pulled back onto it and powered down, since their
//! coverage is contained in the new interval.

use crate::error::{Error, Result};
use crate::model::{OrderConstraint, ProblemInstance, RadiusKind, Solution};
use crate::reach::{attach_position, optimal_travel, sustaining_radius};
use crate::scalar::Scalar;

/// Per-position reachability bounds for an order, indexed by order position.
#[derive(Debug, Clone, PartialEq)]
pub struct ReachProfile<S> {
    /// Leftmost admissible position: prefix max of `x - b/a`, floored at 0.
    pub l: Vec<S>,
    /// Rightmost admissible position: suffix min of `x + b/a`, capped at 1.
    pub u: Vec<S>,
    /// Fixed radii only: leftmost position keeping enough battery for `t`.
    pub s: Option<Vec<S>>,
    /// Fixed radii only: rightmost such position.
    pub e: Option<Vec<S>>,
    /// First order position with `u < l`; no deployment respects the order.
    pub first_violation: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecisionOutcome<S> {
    pub achievable: bool,
    /// Deployment indexed by sensor, present exactly when achievable.
    pub witness: Option<Solution<S>>,
    /// Covered prefix `z` after each processed order position.
    pub covered_prefix_trace: Vec<S>,
}

impl<S> DecisionOutcome<S> {
    fn rejected(trace: Vec<S>) -> Self {
        DecisionOutcome {
            achievable: false,
            witness: None,
            covered_prefix_trace: trace,
        }
    }
}

/// Computes `l` and `u` along `order`. `s`/`e` are left empty; see
/// [`compute_fixed_bounds`].
pub fn compute_bounds<S: Scalar>(inst: &ProblemInstance<S>, order: &OrderConstraint) -> Result<ReachProfile<S>> {
    let a = inst.move_cost().positive()?;
    order.check_len(inst.len())?;
    let sensors = inst.sensors();
    let n = inst.len();
    let mut l = Vec::with_capacity(n);
    let mut acc = S::zero();
    for &i in order.perm() {
        acc = acc.max(sensors[i].x - sensors[i].battery / a);
        l.push(acc);
    }
    let mut u = vec![S::zero(); n];
    let mut acc = S::one();
    for (k, &i) in order.perm().iter().enumerate().rev() {
        acc = acc.min(sensors[i].x + sensors[i].battery / a);
        u[k] = acc;
    }
    let first_violation = (0..n).find(|&k| u[k] < l[k]);
    Ok(ReachProfile {
        l,
        u,
        s: None,
        e: None,
        first_violation,
    })
}

/// [`compute_bounds`] plus the fixed-radius window `[s, e]` for lifetime `t`.
pub fn compute_fixed_bounds<S: Scalar>(
    inst: &ProblemInstance<S>,
    order: &OrderConstraint,
    t: S,
) -> Result<ReachProfile<S>> {
    inst.require_kind(RadiusKind::Fixed)?;
    let mut prof = compute_bounds(inst, order)?;
    let a = inst.move_cost().positive()?;
    let alpha = inst.alpha();
    let (mut s, mut e) = (Vec::with_capacity(inst.len()), Vec::with_capacity(inst.len()));
    for (k, &i) in order.perm().iter().enumerate() {
        let sensor = &inst.sensors()[i];
        let rho = sensor.rho.unwrap_or_else(S::zero);
        let slack = (sensor.battery - t * rho.pow_alpha(alpha)) / a;
        s.push((sensor.x - slack).max(prof.l[k]));
        e.push((sensor.x + slack).min(prof.u[k]));
    }
    prof.s = Some(s);
    prof.e = Some(e);
    Ok(prof)
}

fn check_t<S: Scalar>(t: S) -> Result<()> {
    if t > S::zero() && t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidLifetime(t.as_f64()))
    }
}

/// Deployment under construction, indexed by order position.
struct Sweep<S> {
    y: Vec<S>,
    r: Vec<S>,
    z: S,
    trace: Vec<S>,
}

impl<S: Scalar> Sweep<S> {
    fn new(n: usize) -> Self {
        Sweep {
            y: Vec::with_capacity(n),
            r: Vec::with_capacity(n),
            z: S::zero(),
            trace: Vec::with_capacity(n),
        }
    }

    fn last_y(&self) -> S {
        self.y.last().copied().unwrap_or_else(S::zero)
    }

    fn power_down(&mut self, l: S) {
        let y = l.max(self.last_y());
        self.y.push(y);
        self.r.push(S::zero());
        self.trace.push(self.z);
    }

    fn place(&mut self, y: S, r: S) {
        for k in (0..self.y.len()).rev() {
            if self.y[k] <= y {
                break;
            }
            self.y[k] = y;
            self.r[k] = S::zero();
        }
        self.y.push(y);
        self.r.push(r);
        self.z = y + r;
        self.trace.push(self.z);
    }

    fn finish(self, inst: &ProblemInstance<S>, order: &OrderConstraint, t: S) -> DecisionOutcome<S> {
        if self.z < S::one() - S::COVER_TOL {
            return DecisionOutcome::rejected(self.trace);
        }
        let n = inst.len();
        let mut y = vec![S::zero(); n];
        let mut r = vec![S::zero(); n];
        for (k, &i) in order.perm().iter().enumerate() {
            y[i] = self.y[k];
            r[i] = self.r[k];
        }
        DecisionOutcome {
            achievable: true,
            witness: Some(Solution {
                y,
                r,
                lifetime: t,
                achievable: true,
            }),
            covered_prefix_trace: self.trace,
        }
    }
}

/// Decision procedure for fixed radii.
///
/// Sensor `i` can participate only if `t * rho_i^alpha <= b_i` and `[s(i), e(i)]`
/// is nonempty, in which case it may stand anywhere in that window. It extends the prefix when
/// `z` lies in `[s(i) - rho_i, e(i) + rho_i]`, and is then placed at
/// `min(z + rho_i, e(i))`.
pub fn decide_fixed<S: Scalar>(inst: &ProblemInstance<S>, order: &OrderConstraint, t: S) -> Result<DecisionOutcome<S>> {
    inst.require_kind(RadiusKind::Fixed)?;
    check_t(t)?;
    let prof = compute_fixed_bounds(inst, order, t)?;
    if prof.first_violation.is_some() {
        return Ok(DecisionOutcome::rejected(Vec::new()));
    }
    let (s, e) = (prof.s.as_deref().unwrap_or(&[]), prof.e.as_deref().unwrap_or(&[]));
    let alpha = inst.alpha();
    let mut sweep = Sweep::new(inst.len());
    for (k, &i) in order.perm().iter().enumerate() {
        let sensor = &inst.sensors()[i];
        let rho = sensor.rho.unwrap_or_else(S::zero);
        let z = sweep.z;
        // the order may push the window [s, e] out of the sensor's energy budget
        let alive = rho > S::zero() && t * rho.pow_alpha(alpha) <= sensor.battery && s[k] <= e[k];
        if !alive || z < s[k] - rho - S::COVER_TOL || z > e[k] + rho {
            sweep.power_down(prof.l[k]);
            continue;
        }
        let y = (z + rho).min(e[k]).max(s[k]);
        sweep.place(y, rho);
    }
    Ok(sweep.finish(inst, order, t))
}

/// Decision procedure for variable radii.
///
/// `q_L`/`q_R` are the admissible positions maximizing left/right coverage;
/// the sensor can touch `z` iff `z` lies between their outer edges. It is then
/// placed at `max(min(p(z), u, x + d*), l)` where `p(z)` is the attaching
/// position, which maximizes the new right edge among positions covering `z`.
pub fn decide_variable<S: Scalar>(
    inst: &ProblemInstance<S>,
    order: &OrderConstraint,
    t: S,
) -> Result<DecisionOutcome<S>> {
    inst.require_kind(RadiusKind::Variable)?;
    check_t(t)?;
    let prof = compute_bounds(inst, order)?;
    if prof.first_violation.is_some() {
        return Ok(DecisionOutcome::rejected(Vec::new()));
    }
    let a = inst.move_cost().positive()?;
    let alpha = inst.alpha();
    let mut sweep = Sweep::new(inst.len());
    for (k, &i) in order.perm().iter().enumerate() {
        let sensor = &inst.sensors()[i];
        let (l, u) = (prof.l[k], prof.u[k]);
        let d_star = optimal_travel(sensor, t, a, alpha)?.d_star;
        let q_left = (sensor.x - d_star).max(l).min(u);
        let q_right = (sensor.x + d_star).min(u).max(l);
        let left_edge = q_left - sustaining_radius(sensor, q_left, t, a, alpha)?;
        let right_edge = q_right + sustaining_radius(sensor, q_right, t, a, alpha)?;
        let z = sweep.z;
        if z < left_edge - S::COVER_TOL || z > right_edge {
            sweep.power_down(l);
            continue;
        }
        // within tolerance below the left edge, attach to the edge itself
        let z_attach = z.max(left_edge);
        let reach = sensor.battery / a;
        let window = (sensor.x - reach, sensor.x + reach);
        let mut target = u.min(sensor.x + d_star);
        match attach_position(sensor, z_attach, t, a, alpha, window) {
            Some(at) => target = target.min(at.position),
            // z past every reachable left edge: any placement covers it
            None if z_attach >= window.1 => {}
            // z on the minimum of the left edge, lost to rounding
            None => target = target.min(q_left),
        }
        let y = target.max(l);
        let r = sustaining_radius(sensor, y, t, a, alpha)?;
        sweep.place(y, r);
    }
    Ok(sweep.finish(inst, order, t))
}

/// Dispatches on the instance's radius kind.
pub fn decide<S: Scalar>(inst: &ProblemInstance<S>, order: &OrderConstraint, t: S) -> Result<DecisionOutcome<S>> {
    match inst.kind() {
        RadiusKind::Fixed => decide_fixed(inst, order, t),
        RadiusKind::Variable => decide_variable(inst, order, t),
    }
}
