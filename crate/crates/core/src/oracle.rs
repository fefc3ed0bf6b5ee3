//! Brute-force reference solvers for tests: grid-discretized deployment
//! search and subset enumeration. Exponential by design and deliberately
//! independent of the solver code paths.

use crate::error::{Error, Result};
use crate::model::{OrderConstraint, ProblemInstance, RadiusKind, Sensor};
use crate::scalar::Scalar;

/// Coverage slack used by every oracle check.
const TOL: f64 = 1e-9;

/// Largest instance accepted by the grid search (`2^n` states).
pub const GRID_MAX_N: usize = 10;

/// Largest instance accepted by subset enumeration.
pub const SUBSET_MAX_N: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridConfig {
    /// Grid spacing `h`, in `(0, 0.25]`.
    pub step: f64,
    /// Bisection accuracy on the lifetime.
    pub t_resolution: f64,
}

impl GridConfig {
    pub fn new(step: f64) -> Self {
        GridConfig {
            step,
            t_resolution: 1e-7,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.step <= 0.25) {
            return Err(Error::InvalidParameter(format!("grid step must lie in (0, 0.25], got {}", self.step)));
        }
        if !(self.t_resolution > 0.0) || !self.t_resolution.is_finite() {
            return Err(Error::InvalidParameter("t_resolution must be positive".into()));
        }
        Ok(())
    }
}

/// Grid `{0, h, 2h, ..., 1}` plus the sensors' own starting points, sorted.
fn positions(inst: &ProblemInstance<f64>, step: f64) -> Vec<f64> {
    let k = (1.0 / step).floor() as usize;
    let mut ps: Vec<f64> = (0..=k).map(|i| (i as f64 * step).min(1.0)).collect();
    ps.push(1.0);
    ps.extend(inst.sensors().iter().map(|s| s.x));
    ps.sort_by(f64::total_cmp);
    ps.dedup();
    ps
}

fn energy_left(inst: &ProblemInstance<f64>, s: &Sensor<f64>, y: f64) -> Option<f64> {
    let left = s.battery - inst.move_cost().travel_energy((y - s.x).abs());
    (left >= -TOL).then(|| left.max(0.0))
}

/// Radius sensor `s` can hold at `y` for `t`, or `None` if it cannot move there.
fn radius_at(inst: &ProblemInstance<f64>, s: &Sensor<f64>, y: f64, t: f64) -> Option<f64> {
    let left = energy_left(inst, s, y)?;
    let alpha = inst.alpha();
    Some(match s.rho {
        Some(rho) if left >= t * rho.powf(alpha) * (1.0 - 1e-12) => rho,
        Some(_) => 0.0,
        None => (left / t).powf(1.0 / alpha),
    })
}

/// Stationary-free upper bound on the lifetime, used as the bisection bracket.
fn bracket(inst: &ProblemInstance<f64>) -> f64 {
    let alpha = inst.alpha();
    match inst.kind() {
        RadiusKind::Fixed => inst
            .sensors()
            .iter()
            .filter_map(|s| s.rho.filter(|&r| r > 0.0).map(|r| s.battery / r.powf(alpha)))
            .fold(0.0, f64::max),
        RadiusKind::Variable => {
            let sum: f64 = inst.sensors().iter().map(|s| s.battery.powf(1.0 / alpha)).sum();
            (2.0 * sum).powf(alpha)
        }
    }
}

/// Coverage intervals a sensor can produce at `t`, sorted by left end, with
/// running maxima of the right end.
struct Reachable {
    lo: Vec<f64>,
    best_hi: Vec<f64>,
}

impl Reachable {
    fn new(inst: &ProblemInstance<f64>, s: &Sensor<f64>, ps: &[f64], t: f64) -> Self {
        let mut iv: Vec<(f64, f64)> = ps
            .iter()
            .filter_map(|&y| radius_at(inst, s, y, t).filter(|&r| r > 0.0).map(|r| (y - r, y + r)))
            .collect();
        iv.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut best = f64::NEG_INFINITY;
        let best_hi = iv
            .iter()
            .map(|&(_, hi)| {
                best = best.max(hi);
                best
            })
            .collect();
        Reachable {
            lo: iv.into_iter().map(|(lo, _)| lo).collect(),
            best_hi,
        }
    }

    /// Farthest right end among intervals starting at or before `z`.
    fn extend(&self, z: f64) -> Option<f64> {
        let k = self.lo.partition_point(|&lo| lo <= z + TOL);
        (k > 0).then(|| self.best_hi[k - 1])
    }
}

/// Whether some grid placement covers `[0, 1]` for `t`. Dynamic program over
/// subsets: the longest covered prefix reachable with each set of sensors.
fn grid_covers(inst: &ProblemInstance<f64>, ps: &[f64], t: f64) -> bool {
    let n = inst.len();
    let reach: Vec<Reachable> = inst.sensors().iter().map(|s| Reachable::new(inst, s, ps, t)).collect();
    let mut best = vec![f64::NEG_INFINITY; 1 << n];
    best[0] = 0.0;
    for mask in 0..(1usize << n) {
        let z = best[mask];
        if z == f64::NEG_INFINITY {
            continue;
        }
        if z >= 1.0 - TOL {
            return true;
        }
        for (i, rc) in reach.iter().enumerate() {
            if mask & (1 << i) != 0 {
                continue;
            }
            if let Some(hi) = rc.extend(z) {
                let next = &mut best[mask | (1 << i)];
                *next = next.max(z.max(hi));
            }
        }
    }
    false
}

/// Largest `t` (to `t_resolution`) at which some placement of the sensors on
/// the grid covers the barrier. A lower bound on the optimum; 0 if no
/// placement covers at any probed lifetime.
pub fn grid_best_lifetime(inst: &ProblemInstance<f64>, grid: GridConfig) -> Result<f64> {
    grid.validate()?;
    if inst.len() > GRID_MAX_N {
        return Err(Error::TooLarge {
            n: inst.len(),
            cap: GRID_MAX_N,
        });
    }
    let ps = positions(inst, grid.step);
    let upper = bracket(inst);
    if !(upper > 0.0) || !upper.is_finite() {
        return Ok(0.0);
    }
    if grid_covers(inst, &ps, upper) {
        return Ok(upper);
    }
    let (mut lo, mut hi) = (0.0, upper);
    while hi - lo > grid.t_resolution {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if grid_covers(inst, &ps, mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Longest covered prefix after each of the first `i` sensors of `order`,
/// maximized over grid placements that respect the order, stay in `[0, 1]`,
/// and leave every later sensor able to reach a position at or right of them.
///
/// Stops early at the first order position no placement can accommodate.
pub fn grid_prefix_trace(inst: &ProblemInstance<f64>, order: &OrderConstraint, t: f64, step: f64) -> Result<Vec<f64>> {
    if order.len() != inst.len() {
        return Err(Error::LengthMismatch {
            expected: inst.len(),
            got: order.len(),
        });
    }
    if !(step > 0.0 && step <= 0.25) {
        return Err(Error::InvalidParameter(format!("grid step must lie in (0, 0.25], got {step}")));
    }
    let ps = positions(inst, step);
    let sensors = inst.sensors();
    let perm = order.perm();
    // Rightmost position each later sensor can still reach.
    let mut cap = vec![f64::INFINITY; perm.len() + 1];
    for k in (0..perm.len()).rev() {
        let s = &sensors[perm[k]];
        let far = match inst.move_cost().finite() {
            Some(a) if a > 0.0 => s.x + s.battery / a,
            Some(_) => f64::INFINITY,
            None => s.x,
        };
        cap[k] = cap[k + 1].min(far);
    }
    // prefix[j]: best covered prefix with the last placed sensor at or left of ps[j].
    let mut prefix = vec![0.0; ps.len()];
    let mut trace = Vec::with_capacity(perm.len());
    for (k, &i) in perm.iter().enumerate() {
        let s = &sensors[i];
        let mut row = vec![f64::NEG_INFINITY; ps.len()];
        for (j, &y) in ps.iter().enumerate() {
            let z = prefix[j];
            if z == f64::NEG_INFINITY || y > cap[k] + TOL {
                continue;
            }
            let Some(r) = radius_at(inst, s, y, t) else {
                continue;
            };
            row[j] = if r > 0.0 && y - r <= z + TOL { z.max(y + r) } else { z };
        }
        let best = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if best == f64::NEG_INFINITY {
            break;
        }
        trace.push(best);
        let mut run = f64::NEG_INFINITY;
        for (p, v) in prefix.iter_mut().zip(&row) {
            run = run.max(*v);
            *p = run;
        }
    }
    Ok(trace)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetPredicate {
    /// The stationary intervals `[x - rho, x + rho]` cover the barrier.
    StaticCover,
    /// The diameters sum to at least the barrier length.
    TotalDiameter,
}

fn subset_qualifies(inst: &ProblemInstance<f64>, mask: usize, pred: SubsetPredicate) -> bool {
    let chosen = inst
        .sensors()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, s)| (s.x, s.rho.unwrap_or(0.0)))
        .filter(|&(_, rho)| rho > 0.0);
    match pred {
        SubsetPredicate::TotalDiameter => chosen.map(|(_, rho)| 2.0 * rho).sum::<f64>() >= 1.0 - TOL,
        SubsetPredicate::StaticCover => {
            let mut iv: Vec<(f64, f64)> = chosen.map(|(x, rho)| (x - rho, x + rho)).collect();
            iv.sort_by(|a, b| a.0.total_cmp(&b.0));
            let mut z = 0.0;
            for (lo, hi) in iv {
                if lo > z + TOL {
                    return false;
                }
                z = f64::max(z, hi);
            }
            z >= 1.0 - TOL
        }
    }
}

/// Best over all qualifying subsets of the weakest member's stationary
/// lifetime `b / rho^alpha`; 0 when no subset qualifies.
pub fn best_subset_lifetime(inst: &ProblemInstance<f64>, pred: SubsetPredicate) -> Result<f64> {
    inst.require_kind(RadiusKind::Fixed)?;
    let n = inst.len();
    if n > SUBSET_MAX_N {
        return Err(Error::TooLarge { n, cap: SUBSET_MAX_N });
    }
    let alpha = inst.alpha();
    let life: Vec<f64> = inst
        .sensors()
        .iter()
        .map(|s| {
            let rho = s.rho.unwrap_or(0.0);
            if rho > 0.0 {
                s.battery / rho.pow_alpha(alpha)
            } else {
                f64::INFINITY
            }
        })
        .collect();
    let mut best = 0.0;
    for mask in 1..(1usize << n) {
        let weakest = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| life[i]).fold(f64::INFINITY, f64::min);
        if weakest > best && subset_qualifies(inst, mask, pred) {
            best = weakest;
        }
    }
    Ok(best)
}
