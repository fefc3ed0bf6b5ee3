//! Per-sensor geometry for a target lifetime `t`.
//!
//! A sensor that travels a signed distance `d` and must survive for `t` time
//! can hold the radius `((b - a|d|) / t)^(1/alpha)`. Its right reach
//! `g(d) = d + radius(d)` is unimodal in `d`; the left reach is `h(d) = g(-d)`,
//! i.e. the sensor's left edge after travelling `d` lies at `x - h(d)`.

use crate::error::{Error, Result};
use crate::model::Sensor;
use crate::scalar::Scalar;

/// Travel distance maximizing the right reach.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TravelOptimum<S> {
    /// Optimal rightward travel, in `[0, b/a]`.
    pub d_star: S,
    /// Right reach offset from `x` at `d_star`.
    pub reach: S,
    pub radius_at_star: S,
}

/// Placement whose coverage interval starts exactly at a given point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Attachment<S> {
    pub position: S,
    pub radius: S,
}

fn check_lifetime<S: Scalar>(t: S) -> Result<()> {
    if t > S::zero() && t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidLifetime(t.as_f64()))
    }
}

/// Radius for a known residual battery, clamping tiny negative residuals.
fn radius_for_residual<S: Scalar>(residual: S, t: S, alpha: S) -> S {
    (residual.max(S::zero()) / t).root_alpha(alpha)
}

/// Residual battery after travelling `dist`, or a domain error when the
/// travel costs more than the battery (beyond rounding slack).
fn residual<S: Scalar>(s: &Sensor<S>, dist: S, a: S) -> Result<S> {
    let left = s.battery - a * dist;
    let slack = S::ROOT_TOL * (S::one() + s.battery);
    if left < -slack || left.is_nan() {
        let reach = if a > S::zero() { s.battery / a } else { S::infinity() };
        return Err(Error::OutOfReach {
            position: (s.x + dist).as_f64(),
            lo: (s.x - reach).as_f64(),
            hi: (s.x + reach).as_f64(),
        });
    }
    Ok(left.max(S::zero()))
}

/// Largest radius sensor `s` can sustain for `t` after moving to `p`.
pub fn sustaining_radius<S: Scalar>(s: &Sensor<S>, p: S, t: S, a: S, alpha: S) -> Result<S> {
    check_lifetime(t)?;
    let left = residual(s, (p - s.x).abs(), a)?;
    Ok(radius_for_residual(left, t, alpha))
}

/// Right reach `g(d)` as an offset from `x` after a signed travel `d`.
pub fn right_reach<S: Scalar>(s: &Sensor<S>, d: S, t: S, a: S, alpha: S) -> Result<S> {
    check_lifetime(t)?;
    let left = residual(s, d.abs(), a)?;
    Ok(d + radius_for_residual(left, t, alpha))
}

/// Left reach `h(d) = g(-d)`: the left edge sits at `x - h(d)`.
pub fn left_reach<S: Scalar>(s: &Sensor<S>, d: S, t: S, a: S, alpha: S) -> Result<S> {
    right_reach(s, -d, t, a, alpha)
}

/// Closed-form maximizer of the right reach.
///
/// For `alpha > 1` the unconstrained maximizer is
/// `b/a - (1/alpha) * (a / (alpha t))^(1/(alpha-1))`, clamped into `[0, b/a]`.
/// For `alpha = 1` the reach is piecewise linear: travel all the way when
/// `a < t`, otherwise stay put (this includes the `a = t` plateau).
pub fn optimal_travel<S: Scalar>(s: &Sensor<S>, t: S, a: S, alpha: S) -> Result<TravelOptimum<S>> {
    check_lifetime(t)?;
    if !(a > S::zero()) || !a.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "optimal travel needs a positive finite movement cost, got {a}"
        )));
    }
    let max_travel = s.battery / a;
    let d_star = if alpha == S::one() {
        if a < t {
            max_travel
        } else {
            S::zero()
        }
    } else {
        let k = (a / (alpha * t)).powf((alpha - S::one()).recip());
        let d = max_travel - k / alpha;
        if d.is_nan() {
            S::zero()
        } else {
            d.max(S::zero()).min(max_travel)
        }
    };
    let radius_at_star = radius_for_residual(s.battery - a * d_star, t, alpha);
    Ok(TravelOptimum {
        d_star,
        reach: d_star + radius_at_star,
        radius_at_star,
    })
}

const MAX_BISECTIONS: usize = 200;

/// Root of a monotone `f` on `[lo, hi]` given the sign convention
/// `f(lo) <= 0 <= f(hi)` (increasing) or the reverse (decreasing). Runs down
/// to adjacent floats: near the reach edge one ulp can move `f` by far more
/// than the residual tolerance.
fn bisect<S: Scalar>(f: impl Fn(S) -> S, mut lo: S, mut hi: S, increasing: bool) -> S {
    let below = |v: S| if increasing { v < S::zero() } else { v > S::zero() };
    for _ in 0..MAX_BISECTIONS {
        let mid = lo + (hi - lo) / S::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if below(f(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if f(lo).abs() < f(hi).abs() {
        lo
    } else {
        hi
    }
}

/// Attaching position of `s` to `z`: the position `p` in `window` (and within
/// the sensor's travel range) with `p - r(p) = z` that maximizes `p + r(p)`.
///
/// Returns `None` when no such position exists, or for a non-positive `t` or
/// movement cost. Since `p + r(p) = 2p - z` along the solution set, the
/// maximizer is simply the largest root.
pub fn attach_position<S: Scalar>(
    s: &Sensor<S>,
    z: S,
    t: S,
    a: S,
    alpha: S,
    window: (S, S),
) -> Option<Attachment<S>> {
    let (lo, hi) = attach_domain(s, t, a, window)?;
    let root = if alpha == S::one() {
        linear_attach(s, z, t, a, (lo, hi))
    } else if alpha == S::lit(2.0) {
        quadratic_attach(s, z, t, a, (lo, hi))
    } else {
        bisection_attach(s, z, t, a, alpha, (lo, hi))
    };
    root.map(|position| Attachment {
        position,
        radius: radius_for_residual(s.battery - a * (position - s.x).abs(), t, alpha),
    })
}

/// Same contract as [`attach_position`] but always solves by bisection over
/// the two monotone branches. Exposed for cross-checking the closed forms.
pub fn attach_position_numeric<S: Scalar>(
    s: &Sensor<S>,
    z: S,
    t: S,
    a: S,
    alpha: S,
    window: (S, S),
) -> Option<Attachment<S>> {
    let (lo, hi) = attach_domain(s, t, a, window)?;
    bisection_attach(s, z, t, a, alpha, (lo, hi)).map(|position| Attachment {
        position,
        radius: radius_for_residual(s.battery - a * (position - s.x).abs(), t, alpha),
    })
}

fn attach_domain<S: Scalar>(s: &Sensor<S>, t: S, a: S, window: (S, S)) -> Option<(S, S)> {
    if !(t > S::zero()) || !(a > S::zero()) || !t.is_finite() || !a.is_finite() {
        return None;
    }
    let reach = s.battery / a;
    let lo = window.0.max(s.x - reach);
    let hi = window.1.min(s.x + reach);
    (lo <= hi).then_some((lo, hi))
}

/// Keeps the largest candidate lying in `[lo, hi]` up to rounding slack.
fn best_candidate<S: Scalar>(candidates: impl IntoIterator<Item = S>, lo: S, hi: S) -> Option<S> {
    let slack = S::ROOT_TOL;
    candidates
        .into_iter()
        .filter(|p| p.is_finite() && *p >= lo - slack && *p <= hi + slack)
        .map(|p| p.max(lo).min(hi))
        .fold(None, |best: Option<S>, p| Some(best.map_or(p, |b| b.max(p))))
}

fn linear_attach<S: Scalar>(s: &Sensor<S>, z: S, t: S, a: S, (lo, hi): (S, S)) -> Option<S> {
    let (x, b) = (s.x, s.battery);
    let mut candidates = Vec::with_capacity(2);
    // p >= x: p - (b - a(p - x))/t = z
    let right = (z * t + b + a * x) / (t + a);
    if right >= x - S::ROOT_TOL {
        candidates.push(right);
    }
    // p <= x: p - (b - a(x - p))/t = z
    if a != t {
        let left = (z * t + b - a * x) / (t - a);
        if left <= x + S::ROOT_TOL {
            candidates.push(left);
        }
    } else if (z - (x - b / t)).abs() <= S::ROOT_TOL && lo <= x {
        // flat branch: every p <= x is a root
        candidates.push(hi.min(x));
    }
    best_candidate(candidates, lo, hi)
}

fn quadratic_attach<S: Scalar>(s: &Sensor<S>, z: S, t: S, a: S, (lo, hi): (S, S)) -> Option<S> {
    let (x, b) = (s.x, s.battery);
    let two = S::lit(2.0);
    let four = S::lit(4.0);
    let mut candidates = Vec::with_capacity(3);
    // With p = z + u and u = r(p) >= 0, squaring p - r(p) = z gives a
    // quadratic in u on each side of x.
    // p >= x: t u^2 + a u - c = 0 with c = b - a(z - x)
    let c = b - a * (z - x);
    if c >= S::zero() {
        let u = two * c / (a + (a * a + four * t * c).sqrt());
        let p = z + u;
        if p >= x - S::ROOT_TOL {
            candidates.push(p);
        }
    }
    // p <= x: t u^2 - a u - c = 0 with c = b - a(x - z)
    let c = b - a * (x - z);
    let disc = a * a + four * t * c;
    if disc >= S::zero() {
        let root = disc.sqrt();
        let big = (a + root) / (two * t);
        let small = -two * c / (a + root);
        for u in [big, small] {
            let p = z + u;
            if u >= S::zero() && p <= x + S::ROOT_TOL {
                candidates.push(p);
            }
        }
    }
    best_candidate(candidates, lo, hi)
}

fn bisection_attach<S: Scalar>(s: &Sensor<S>, z: S, t: S, a: S, alpha: S, (lo, hi): (S, S)) -> Option<S> {
    let d_star = optimal_travel(s, t, a, alpha).ok()?.d_star;
    let phi = |p: S| p - radius_for_residual(s.battery - a * (p - s.x).abs(), t, alpha) - z;
    let tol = S::ROOT_TOL;
    // p - r(p) decreases up to x - d_star and increases after it.
    let split = s.x - d_star;
    let (u, v) = (lo.max(split), hi);
    if u <= v {
        let (fu, fv) = (phi(u), phi(v));
        if fv.abs() <= tol {
            return Some(v);
        }
        if fu <= tol && fv >= S::zero() {
            return Some(if fu >= S::zero() { u } else { bisect(phi, u, v, true) });
        }
    }
    let (u, v) = (lo, hi.min(split));
    if u <= v {
        let (fu, fv) = (phi(u), phi(v));
        if fv.abs() <= tol {
            return Some(v);
        }
        if fu >= -tol && fv <= S::zero() {
            return Some(if fu <= S::zero() { u } else { bisect(phi, u, v, false) });
        }
    }
    None
}
