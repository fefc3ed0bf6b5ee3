//! Problem and solution data model, lifetime semantics and the feasibility
//! verifier.
//!
//! A deployment is a pair `(y, r)`: sensor `i` travels from `x_i` to `y_i`,
//! paying `a * |y_i - x_i|` energy, then senses with radius `r_i`, covering
//! `[y_i - r_i, y_i + r_i]` and draining `r_i^alpha` energy per time unit.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Energy cost of movement per unit distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MoveCost<S> {
    /// Finite cost `a >= 0`. Zero is the fully dynamic case.
    Finite(S),
    /// Movement is forbidden (`a = infinity`).
    Static,
}

impl<S: Scalar> MoveCost<S> {
    pub fn finite(self) -> Option<S> {
        match self {
            MoveCost::Finite(a) => Some(a),
            MoveCost::Static => None,
        }
    }

    pub fn is_static(self) -> bool {
        matches!(self, MoveCost::Static)
    }

    pub fn is_free(self) -> bool {
        matches!(self, MoveCost::Finite(a) if a == S::zero())
    }

    /// Finite and strictly positive cost, as required by the decision procedures.
    pub fn positive(self) -> Result<S> {
        match self {
            MoveCost::Finite(a) if a > S::zero() => Ok(a),
            MoveCost::Finite(_) => Err(Error::Unsupported(
                "zero movement cost; use the fully dynamic solvers".into(),
            )),
            MoveCost::Static => Err(Error::Unsupported(
                "static movement cost; use the static solvers".into(),
            )),
        }
    }

    /// Energy needed to travel `dist >= 0`.
    pub fn travel_energy(self, dist: S) -> S {
        match self {
            MoveCost::Finite(a) => a * dist,
            MoveCost::Static if dist == S::zero() => S::zero(),
            MoveCost::Static => S::infinity(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sensor<S> {
    pub x: S,
    pub battery: S,
    /// Fixed sensing radius; `None` when the radius is a decision variable.
    pub rho: Option<S>,
}

impl<S: Scalar> Sensor<S> {
    pub fn variable(x: S, battery: S) -> Self {
        Sensor { x, battery, rho: None }
    }

    pub fn fixed(x: S, battery: S, rho: S) -> Self {
        Sensor {
            x,
            battery,
            rho: Some(rho),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadiusKind {
    /// Every radius is either zero or the sensor's given `rho`.
    Fixed,
    /// Radii are chosen freely.
    Variable,
}

/// A validated barrier coverage instance.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance<S> {
    alpha: S,
    move_cost: MoveCost<S>,
    sensors: Vec<Sensor<S>>,
}

impl<S: Scalar> ProblemInstance<S> {
    pub fn new(alpha: S, move_cost: MoveCost<S>, sensors: Vec<Sensor<S>>) -> Result<Self> {
        if !alpha.is_finite() || alpha < S::one() {
            return Err(Error::instance("alpha", format!("must be finite and >= 1, got {alpha}")));
        }
        if let MoveCost::Finite(a) = move_cost {
            if !a.is_finite() || a < S::zero() {
                return Err(Error::instance("move_cost", format!("must be finite and >= 0, got {a}")));
            }
        }
        if sensors.is_empty() {
            return Err(Error::instance("sensors", "at least one sensor is required"));
        }
        let fixed = sensors[0].rho.is_some();
        for (i, s) in sensors.iter().enumerate() {
            if !s.x.is_finite() || s.x < S::zero() || s.x > S::one() {
                return Err(Error::instance(format!("sensors[{i}].x"), format!("must lie in [0, 1], got {}", s.x)));
            }
            if !s.battery.is_finite() || s.battery < S::zero() {
                return Err(Error::instance(
                    format!("sensors[{i}].battery"),
                    format!("must be finite and >= 0, got {}", s.battery),
                ));
            }
            match s.rho {
                Some(rho) if !rho.is_finite() || rho < S::zero() => {
                    return Err(Error::instance(format!("sensors[{i}].rho"), format!("must be finite and >= 0, got {rho}")));
                }
                _ => {}
            }
            if s.rho.is_some() != fixed {
                return Err(Error::instance(
                    format!("sensors[{i}].rho"),
                    "radius must be given for every sensor or for none",
                ));
            }
        }
        Ok(ProblemInstance {
            alpha,
            move_cost,
            sensors,
        })
    }

    pub fn alpha(&self) -> S {
        self.alpha
    }

    pub fn move_cost(&self) -> MoveCost<S> {
        self.move_cost
    }

    pub fn sensors(&self) -> &[Sensor<S>] {
        &self.sensors
    }

    pub fn len(&self) -> usize {
        self.sensors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sensors.is_empty()
    }

    pub fn kind(&self) -> RadiusKind {
        if self.sensors[0].rho.is_some() {
            RadiusKind::Fixed
        } else {
            RadiusKind::Variable
        }
    }

    /// True when every sensor starts at one of the barrier endpoints.
    pub fn on_endpoints(&self) -> bool {
        self.sensors.iter().all(|s| s.x == S::zero() || s.x == S::one())
    }

    pub(crate) fn require_kind(&self, kind: RadiusKind) -> Result<()> {
        if self.kind() == kind {
            Ok(())
        } else {
            Err(Error::Unsupported(match kind {
                RadiusKind::Fixed => "operation requires fixed radii".into(),
                RadiusKind::Variable => "operation requires variable radii".into(),
            }))
        }
    }

    /// Same instance with a different movement cost.
    pub fn with_move_cost(&self, move_cost: MoveCost<S>) -> Result<Self> {
        Self::new(self.alpha, move_cost, self.sensors.clone())
    }
}

/// A deployment together with the lifetime it was computed for.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution<S> {
    pub y: Vec<S>,
    pub r: Vec<S>,
    pub lifetime: S,
    pub achievable: bool,
}

impl<S: Scalar> Solution<S> {
    /// The "no coverage" answer: every sensor stays home, powered down.
    pub fn unachievable(inst: &ProblemInstance<S>) -> Self {
        Solution {
            y: inst.sensors().iter().map(|s| s.x).collect(),
            r: vec![S::zero(); inst.len()],
            lifetime: S::zero(),
            achievable: false,
        }
    }
}

/// Output of [`verify_solution`].
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport<S> {
    pub feasible: bool,
    /// Length of the largest uncovered sub-interval of `[0, 1]`.
    pub max_gap: S,
    /// Worst excess of travel energy over battery, clamped at zero.
    pub battery_violation: S,
    /// Minimum lifetime over active sensors; infinite if none is active.
    pub realized_lifetime: S,
    /// Sensors of a fixed-radii instance whose radius is neither 0 nor rho.
    pub radius_mismatches: Vec<usize>,
}

/// Required left-to-right order of the final deployment, as 0-based sensor
/// indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderConstraint {
    perm: Vec<usize>,
}

impl OrderConstraint {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        if n == 0 {
            return Err(Error::InvalidOrder("order is empty".into()));
        }
        let mut seen = vec![false; n];
        for &i in &perm {
            if i >= n {
                return Err(Error::InvalidOrder(format!("index {} out of range 1..={n}", i + 1)));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidOrder(format!("index {} repeated", i + 1)));
            }
        }
        Ok(OrderConstraint { perm })
    }

    /// Parses the 1-based indices used in documents and on the command line.
    pub fn from_one_based(perm: &[usize]) -> Result<Self> {
        let zero_based = perm
            .iter()
            .map(|&i| i.checked_sub(1).ok_or_else(|| Error::InvalidOrder("indices start at 1".into())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(zero_based)
    }

    pub fn identity(n: usize) -> Self {
        OrderConstraint { perm: (0..n).collect() }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.perm.iter().map(|i| i + 1).collect()
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.perm.len() == n {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: n,
                got: self.perm.len(),
            })
        }
    }
}

impl fmt::Display for OrderConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, i) in self.perm.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        Ok(())
    }
}

fn sensor_lifetime<S: Scalar>(inst: &ProblemInstance<S>, i: usize, y: S, r: S) -> S {
    if r == S::zero() {
        return S::infinity();
    }
    let s = &inst.sensors()[i];
    let residual = s.battery - inst.move_cost().travel_energy((y - s.x).abs());
    if residual <= S::zero() {
        S::zero()
    } else {
        residual / r.pow_alpha(inst.alpha())
    }
}

fn check_lengths<S: Scalar>(inst: &ProblemInstance<S>, y: &[S], r: &[S]) -> Result<()> {
    for got in [y.len(), r.len()] {
        if got != inst.len() {
            return Err(Error::LengthMismatch {
                expected: inst.len(),
                got,
            });
        }
    }
    Ok(())
}

/// Barrier lifetime `min_i L_i(y, r)` of a deployment.
///
/// Powered-down sensors (`r_i = 0`) never expire, so the result is infinite
/// when every radius is zero. Coverage is not checked here.
pub fn evaluate_lifetime<S: Scalar>(inst: &ProblemInstance<S>, y: &[S], r: &[S]) -> Result<S> {
    check_lengths(inst, y, r)?;
    if let Some((index, &value)) = r.iter().enumerate().find(|(_, &v)| v < S::zero() || v.is_nan()) {
        return Err(Error::NegativeRadius {
            index,
            value: value.as_f64(),
        });
    }
    Ok((0..inst.len()).fold(S::infinity(), |acc, i| acc.min(sensor_lifetime(inst, i, y[i], r[i]))))
}

/// Largest uncovered gap of `[0, 1]` by the given closed intervals.
pub(crate) fn max_uncovered_gap<S: Scalar>(mut intervals: Vec<(S, S)>) -> S {
    intervals.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap_or(std::cmp::Ordering::Equal));
    let one = S::one();
    let mut covered = S::zero();
    let mut gap = S::zero();
    for (left, right) in intervals {
        if left > covered {
            gap = gap.max(left.min(one) - covered);
        }
        covered = covered.max(right);
        if covered >= one {
            return gap;
        }
    }
    gap.max(one - covered)
}

/// Checks the two feasibility conditions (reachability and coverage) and
/// measures the realized lifetime. Never fails on infeasible input.
pub fn verify_solution<S: Scalar>(inst: &ProblemInstance<S>, sol: &Solution<S>, tol: S) -> CoverageReport<S> {
    let n = inst.len();
    if sol.y.len() != n || sol.r.len() != n {
        return CoverageReport {
            feasible: false,
            max_gap: S::one(),
            battery_violation: S::infinity(),
            realized_lifetime: S::zero(),
            radius_mismatches: Vec::new(),
        };
    }
    let cost = inst.move_cost();
    let mut battery_violation = S::zero();
    let mut intervals = Vec::with_capacity(n);
    let mut radius_mismatches = Vec::new();
    let mut realized = S::infinity();
    for (i, s) in inst.sensors().iter().enumerate() {
        let (y, r) = (sol.y[i], sol.r[i]);
        let excess = cost.travel_energy((y - s.x).abs()) - s.battery;
        if excess > battery_violation || excess.is_nan() {
            battery_violation = if excess.is_nan() { S::infinity() } else { excess };
        }
        if r > S::zero() {
            intervals.push((y - r, y + r));
        }
        if r < S::zero() || r.is_nan() {
            radius_mismatches.push(i);
            continue;
        }
        if let Some(rho) = s.rho {
            if r != S::zero() && r != rho {
                radius_mismatches.push(i);
            }
        }
        realized = realized.min(sensor_lifetime(inst, i, y, r));
    }
    let max_gap = max_uncovered_gap(intervals);
    CoverageReport {
        feasible: max_gap <= tol && battery_violation <= tol && radius_mismatches.is_empty(),
        max_gap,
        battery_violation,
        realized_lifetime: realized,
        radius_mismatches,
    }
}

/// Order induced by a deployment: ascending `y`, ties by sensor index.
pub fn order_of<S: Scalar>(sol: &Solution<S>) -> OrderConstraint {
    let mut perm: Vec<usize> = (0..sol.y.len()).collect();
    perm.sort_by(|&i, &j| {
        sol.y[i]
            .partial_cmp(&sol.y[j])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(i.cmp(&j))
    });
    OrderConstraint { perm }
}
