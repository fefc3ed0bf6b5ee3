//! Parametric search over the lifetime and exhaustive order enumeration.

use itertools::Itertools;

use crate::decision::{decide, DecisionOutcome};
use crate::error::{Error, Result};
use crate::model::{OrderConstraint, ProblemInstance, RadiusKind, Solution};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig<S> {
    /// Absolute accuracy on the lifetime.
    pub epsilon: S,
    /// Largest instance handled by exhaustive order enumeration.
    pub max_order_n: usize,
}

impl<S: Scalar> Default for SearchConfig<S> {
    fn default() -> Self {
        SearchConfig {
            epsilon: S::lit(1e-6),
            max_order_n: 8,
        }
    }
}

impl<S: Scalar> SearchConfig<S> {
    pub fn with_epsilon(epsilon: S) -> Self {
        SearchConfig {
            epsilon,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.epsilon > S::zero()) || !self.epsilon.is_finite() {
            return Err(Error::InvalidParameter(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if self.max_order_n == 0 {
            return Err(Error::InvalidParameter("max_order_n must be at least 1".into()));
        }
        Ok(())
    }

    /// Smallest lifetime probed before declaring the instance unachievable.
    pub fn floor(&self) -> S {
        self.epsilon * S::lit(2f64.powi(-20))
    }
}

/// Upper bound on the lifetime: the free-movement optimum.
///
/// Fixed radii: `max_i b_i / rho_i^alpha` over sensors with `rho_i > 0`.
/// Variable radii: `(2 * sum_j b_j^(1/alpha))^alpha`.
pub fn lifetime_upper_bound<S: Scalar>(inst: &ProblemInstance<S>) -> S {
    let alpha = inst.alpha();
    match inst.kind() {
        RadiusKind::Fixed => inst
            .sensors()
            .iter()
            .filter_map(|s| s.rho.filter(|&rho| rho > S::zero()).map(|rho| s.battery / rho.pow_alpha(alpha)))
            .fold(S::zero(), S::max),
        RadiusKind::Variable => {
            let sum = inst
                .sensors()
                .iter()
                .fold(S::zero(), |acc, s| acc + s.battery.root_alpha(alpha));
            (S::lit(2.0) * sum).pow_alpha(alpha)
        }
    }
}

/// Result of a parametric search.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Bracket<S> {
    pub solution: Solution<S>,
    /// Order used by the certified probe, when one was needed.
    pub order: Option<OrderConstraint>,
}

/// Bisection on `t` over `[floor, upper]` driven by a monotone decision.
///
/// Invariant: `lo` is certified by a YES (with its witness kept), `hi` is a
/// NO or the upper bound. Stops when `hi - lo <= epsilon`.
pub(crate) fn parametric_search<S: Scalar>(
    inst: &ProblemInstance<S>,
    upper: S,
    cfg: &SearchConfig<S>,
    mut probe: impl FnMut(S) -> Result<(DecisionOutcome<S>, OrderConstraint)>,
) -> Result<Bracket<S>> {
    cfg.validate()?;
    let unachievable = || Bracket {
        solution: Solution::unachievable(inst),
        order: None,
    };
    let floor = cfg.floor();
    if !(upper > S::zero()) || !upper.is_finite() {
        return Ok(unachievable());
    }
    let certify = |out: DecisionOutcome<S>, order: OrderConstraint, t: S| {
        out.witness.map(|mut w| {
            w.lifetime = t;
            (w, order)
        })
    };
    let (out, ord) = probe(upper)?;
    if let Some((solution, order)) = certify(out, ord, upper) {
        return Ok(Bracket {
            solution,
            order: Some(order),
        });
    }
    let start = floor.min(upper / S::lit(2.0));
    let (out, ord) = probe(start)?;
    let Some(mut best) = certify(out, ord, start) else {
        return Ok(unachievable());
    };
    let (mut lo, mut hi) = (start, upper);
    let two = S::lit(2.0);
    while hi - lo > cfg.epsilon {
        let mid = (lo + hi) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        let (out, ord) = probe(mid)?;
        match certify(out, ord, mid) {
            Some(found) => {
                best = found;
                lo = mid;
            }
            None => hi = mid,
        }
    }
    Ok(Bracket {
        solution: best.0,
        order: Some(best.1),
    })
}

/// Maximum lifetime subject to `order`, within `cfg.epsilon`.
///
/// The returned lifetime is certified: the witness achieves it. An instance
/// that fails even at `epsilon * 2^-20` is reported unachievable with
/// lifetime 0.
pub fn maximize_constrained<S: Scalar>(
    inst: &ProblemInstance<S>,
    order: &OrderConstraint,
    cfg: &SearchConfig<S>,
) -> Result<Solution<S>> {
    order.check_len(inst.len())?;
    inst.move_cost().positive()?;
    let upper = lifetime_upper_bound(inst);
    let bracket = parametric_search(inst, upper, cfg, |t| Ok((decide(inst, order, t)?, order.clone())))?;
    Ok(bracket.solution)
}

/// Exact optimum (within epsilon) by trying every order.
///
/// Orders are visited in lexicographic order. An order that cannot reach the
/// incumbent lifetime is discarded after one decision; otherwise it is
/// searched fully and replaces the incumbent only on strict improvement, so
/// ties resolve to the lexicographically first order.
pub fn maximize_exhaustive<S: Scalar>(
    inst: &ProblemInstance<S>,
    cfg: &SearchConfig<S>,
) -> Result<(Solution<S>, OrderConstraint)> {
    cfg.validate()?;
    let n = inst.len();
    if n > cfg.max_order_n {
        return Err(Error::TooLarge {
            n,
            cap: cfg.max_order_n,
        });
    }
    inst.move_cost().positive()?;
    let mut best: Option<(Solution<S>, OrderConstraint)> = None;
    for perm in (0..n).permutations(n) {
        let order = OrderConstraint::new(perm)?;
        if let Some((incumbent, _)) = best.as_ref().filter(|(s, _)| s.achievable) {
            if !decide(inst, &order, incumbent.lifetime)?.achievable {
                continue;
            }
        }
        let sol = maximize_constrained(inst, &order, cfg)?;
        let better = match &best {
            None => true,
            Some((incumbent, _)) => {
                sol.achievable && (!incumbent.achievable || sol.lifetime > incumbent.lifetime)
            }
        };
        if better {
            best = Some((sol, order));
        }
    }
    best.ok_or_else(|| Error::InvalidParameter("instance has no sensors".into()))
}
