//! Instance generators: the Partition and 3-Partition reduction gadgets used
//! as adversarial fixtures, evenly spaced sensor blocks, and seeded random
//! instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{MoveCost, ProblemInstance, RadiusKind, Sensor, Solution};
use crate::scalar::Scalar;

/// `count` sensors evenly spaced at `z + (2i - 1) * radius`, `i = 1..=count`.
/// Held stationary with radius `radius` they cover `[z, z + 2 * count * radius]`
/// for `battery / radius^alpha` time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Block<S> {
    pub z: S,
    pub count: usize,
    pub battery: S,
    pub radius: S,
}

pub fn gen_block<S: Scalar>(blk: &Block<S>, kind: RadiusKind) -> Vec<Sensor<S>> {
    (1..=blk.count)
        .map(|i| {
            let x = blk.z + S::lit((2 * i - 1) as f64) * blk.radius;
            match kind {
                RadiusKind::Fixed => Sensor::fixed(x, blk.battery, blk.radius),
                RadiusKind::Variable => Sensor::variable(x, blk.battery),
            }
        })
        .collect()
}

/// Fixed-radii instance built from a Partition list; all sensors start at `p`.
///
/// If the list splits into two halves of equal sum, lifetime `move_cost` is
/// achievable; otherwise the maximum lifetime is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionGadget<S> {
    pub values: Vec<u64>,
    /// Sum of `values`.
    pub total: u64,
    pub p: S,
    pub move_cost: S,
    pub alpha: S,
    /// Every radius is a multiple of this length.
    pub quantum: S,
    pub instance: ProblemInstance<S>,
}

fn check_values(values: &[u64]) -> Result<u64> {
    if values.is_empty() || values.contains(&0) {
        return Err(Error::InvalidParameter("values must be a nonempty list of positive integers".into()));
    }
    values
        .iter()
        .try_fold(0u64, |acc, &v| acc.checked_add(v))
        .ok_or_else(|| Error::InvalidParameter("sum of values overflows".into()))
}

/// Partition reduction gadget.
///
/// For `p = 1/2` there are `n + 1` sensors: `rho_i = a_i / (2(B + 1))`, one
/// splitter with `rho = 1 / (2(B + 1))` and no spare battery, and every other
/// sensor gets `a/2` spare energy for travel.
///
/// For other `p` (mirrored to `p < 1/2`) two long sensors of radii
/// `(p - d/2)/2` and `(1 - p - d/2)/2` cover the outer parts, with
/// `d = min(p, 1 - 2p)` scaling the partition sensors, and every sensor but
/// the splitter gets `a` spare energy.
pub fn gen_partition_bcfr<S: Scalar>(values: &[u64], p: S, a: S, alpha: S) -> Result<PartitionGadget<S>> {
    let total = check_values(values)?;
    if !(p > S::zero() && p < S::one()) {
        return Err(Error::InvalidParameter(format!("anchor p must lie in (0, 1), got {p}")));
    }
    if !(a > S::zero()) || !a.is_finite() {
        return Err(Error::InvalidParameter(format!("movement cost must be positive, got {a}")));
    }
    let half = S::lit(0.5);
    let two = S::lit(2.0);
    let denom = two * (S::lit(total as f64) + S::one());
    let energy = |rho: S| a * rho.pow_alpha(alpha);
    let mut sensors = Vec::with_capacity(values.len() + 3);
    let quantum;
    if p == half {
        quantum = denom.recip();
        for &v in values {
            let rho = S::lit(v as f64) / denom;
            sensors.push(Sensor::fixed(p, energy(rho) + a * half, rho));
        }
        sensors.push(Sensor::fixed(p, energy(quantum), quantum));
    } else {
        let q = p.min(S::one() - p);
        let d = q.min(S::one() - two * q);
        quantum = d / denom;
        for &v in values {
            let rho = S::lit(v as f64) * d / denom;
            sensors.push(Sensor::fixed(p, energy(rho) + a, rho));
        }
        sensors.push(Sensor::fixed(p, energy(quantum), quantum));
        let near = (q - d / two) / two;
        let far = (S::one() - q - d / two) / two;
        sensors.push(Sensor::fixed(p, energy(near) + a, near));
        sensors.push(Sensor::fixed(p, energy(far) + a, far));
    }
    let instance = ProblemInstance::new(alpha, MoveCost::Finite(a), sensors)?;
    Ok(PartitionGadget {
        values: values.to_vec(),
        total,
        p,
        move_cost: a,
        alpha,
        quantum,
        instance,
    })
}

/// Lays consecutive fixed-radius sensors end to end starting at `from`.
fn abut<S: Scalar>(inst: &ProblemInstance<S>, ids: &[usize], from: S, y: &mut [S], r: &mut [S]) -> S {
    let mut edge = from;
    for &i in ids {
        let rho = inst.sensors()[i].rho.unwrap_or_else(S::zero);
        y[i] = edge + rho;
        r[i] = rho;
        edge = edge + rho + rho;
    }
    edge
}

impl<S: Scalar> PartitionGadget<S> {
    /// Lifetime achievable exactly when the values admit an equal split.
    pub fn target_lifetime(&self) -> S {
        self.move_cost
    }

    /// Deployment with lifetime [`Self::target_lifetime`] from an equal split;
    /// `left` lists the value indices placed on the left of the splitter.
    pub fn witness(&self, left: &[usize]) -> Result<Solution<S>> {
        let n = self.values.len();
        if left.iter().any(|&i| i >= n) {
            return Err(Error::InvalidParameter("split index out of range".into()));
        }
        let left_sum: u64 = left.iter().map(|&i| self.values[i]).sum();
        if 2 * left_sum != self.total {
            return Err(Error::InvalidParameter("split does not halve the values".into()));
        }
        let right: Vec<usize> = (0..n).filter(|i| !left.contains(i)).collect();
        let inst = &self.instance;
        let m = inst.len();
        let mut y = vec![S::zero(); m];
        let mut r = vec![S::zero(); m];
        let half = S::lit(0.5);
        let two = S::lit(2.0);
        if self.p == half {
            abut(inst, left, S::zero(), &mut y, &mut r);
            abut(inst, &[n], half - self.quantum, &mut y, &mut r);
            abut(inst, &right, half + self.quantum, &mut y, &mut r);
        } else {
            // Lay out for q = min(p, 1 - p) and mirror when p > 1/2.
            let q = self.p.min(S::one() - self.p);
            let d = q.min(S::one() - two * q);
            abut(inst, &[n + 1], S::zero(), &mut y, &mut r);
            abut(inst, left, q - d / two, &mut y, &mut r);
            abut(inst, &[n], q - self.quantum, &mut y, &mut r);
            abut(inst, &right, q + self.quantum, &mut y, &mut r);
            abut(inst, &[n + 2], q + d / two, &mut y, &mut r);
            if self.p > half {
                y.iter_mut().for_each(|v| *v = S::one() - *v);
            }
        }
        Ok(Solution {
            y,
            r,
            lifetime: self.target_lifetime(),
            achievable: true,
        })
    }
}

/// Variable-radii instance built from a 3-Partition instance: `3m` number
/// sensors at 0 and `m - 1` blocks that fence off `m` slots of length `Q delta`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreePartitionGadget<S> {
    pub values: Vec<u64>,
    pub m: usize,
    pub q: u64,
    /// `1 / ((2m - 1) Q)`.
    pub delta: S,
    pub block_radius: S,
    /// `T = 2 a Q [2(2m - 1) Q]^alpha`.
    pub target_lifetime: S,
    pub blocks: Vec<Block<S>>,
    pub instance: ProblemInstance<S>,
}

/// Upper limit on generated sensors; block sizes grow like `Q^(alpha + 1)`.
pub const MAX_GENERATED_SENSORS: usize = 2_000_000;

/// Sensors per block: `ceil(Q delta / (2 rho)) = ceil(2 Q [2(2m - 1) Q]^alpha)`,
/// computed in integers when `alpha` is integral.
fn block_count<S: Scalar>(q: u64, scale: u64, alpha: S) -> Result<usize> {
    let too_large = || Error::TooLarge {
        n: usize::MAX,
        cap: MAX_GENERATED_SENSORS,
    };
    let count = if alpha.fract() == S::zero() {
        let exp = alpha.to_u32().ok_or_else(too_large)?;
        (scale as u128)
            .checked_pow(exp)
            .and_then(|v| v.checked_mul(2 * q as u128))
            .ok_or_else(too_large)?
    } else {
        let v = (2.0 * q as f64 * (scale as f64).powf(alpha.as_f64())).ceil();
        if !v.is_finite() || v > MAX_GENERATED_SENSORS as f64 {
            return Err(too_large());
        }
        v as u128
    };
    usize::try_from(count).map_err(|_| too_large())
}

pub fn gen_3partition_bcvr<S: Scalar>(
    values: &[u64],
    m: usize,
    q: u64,
    a: S,
    alpha: S,
) -> Result<ThreePartitionGadget<S>> {
    check_values(values)?;
    if m == 0 || values.len() != 3 * m {
        return Err(Error::InvalidParameter(format!(
            "expected 3m = {} values, got {}",
            3 * m,
            values.len()
        )));
    }
    if values.iter().sum::<u64>() != m as u64 * q {
        return Err(Error::InvalidParameter(format!("values must sum to m * Q = {}", m as u64 * q)));
    }
    if let Some(v) = values.iter().find(|&&v| 4 * v <= q || 2 * v >= q) {
        return Err(Error::InvalidParameter(format!("value {v} is not strictly between Q/4 and Q/2")));
    }
    if !(a > S::zero()) || !a.is_finite() {
        return Err(Error::InvalidParameter(format!("movement cost must be positive, got {a}")));
    }
    let scale = 2 * (2 * m as u64 - 1) * q;
    let per_block = block_count(q, scale, alpha)?;
    let n_sensors = 3 * m + (m - 1) * per_block;
    if n_sensors > MAX_GENERATED_SENSORS {
        return Err(Error::TooLarge {
            n: n_sensors,
            cap: MAX_GENERATED_SENSORS,
        });
    }
    let qs = S::lit(q as f64);
    let two = S::lit(2.0);
    let delta = (S::lit((2 * m - 1) as f64) * qs).recip();
    let scale_pow = S::lit(scale as f64).pow_alpha(alpha);
    let target = two * a * qs * scale_pow;
    let rho = delta / S::lit(4.0) / scale_pow;
    let mut sensors: Vec<Sensor<S>> = values
        .iter()
        .map(|&v| Sensor::variable(S::zero(), target * (S::lit(v as f64) * delta / two).pow_alpha(alpha) + a))
        .collect();
    let mut blocks = Vec::with_capacity(m.saturating_sub(1));
    for j in 1..m {
        let blk = Block {
            z: S::lit((2 * j - 1) as f64) * qs * delta,
            count: per_block,
            battery: target * rho.pow_alpha(alpha),
            radius: rho,
        };
        sensors.extend(gen_block(&blk, RadiusKind::Variable));
        blocks.push(blk);
    }
    let instance = ProblemInstance::new(alpha, MoveCost::Finite(a), sensors)?;
    Ok(ThreePartitionGadget {
        values: values.to_vec(),
        m,
        q,
        delta,
        block_radius: rho,
        target_lifetime: target,
        blocks,
        instance,
    })
}

impl<S: Scalar> ThreePartitionGadget<S> {
    /// Deployment with lifetime `T` from a 3-partition: triple `j` covers
    /// `[2jQ delta, (2j + 1)Q delta]`, blocks stay put.
    pub fn witness(&self, triples: &[[usize; 3]]) -> Result<Solution<S>> {
        if triples.len() != self.m {
            return Err(Error::InvalidParameter(format!("expected {} triples", self.m)));
        }
        let mut seen = vec![false; self.values.len()];
        for triple in triples {
            let mut sum = 0;
            for &i in triple {
                if i >= self.values.len() || std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidParameter("triples must partition the values".into()));
                }
                sum += self.values[i];
            }
            if sum != self.q {
                return Err(Error::InvalidParameter(format!("triple sums to {sum}, expected {}", self.q)));
            }
        }
        let n = self.instance.len();
        let mut y: Vec<S> = self.instance.sensors().iter().map(|s| s.x).collect();
        let mut r = vec![S::zero(); n];
        let two = S::lit(2.0);
        let slot = S::lit(self.q as f64) * self.delta;
        for (j, triple) in triples.iter().enumerate() {
            let mut edge = S::lit((2 * j) as f64) * slot;
            for &i in triple {
                let ri = S::lit(self.values[i] as f64) * self.delta / two;
                y[i] = edge + ri;
                r[i] = ri;
                edge = edge + ri + ri;
            }
        }
        for ri in r.iter_mut().skip(self.values.len()) {
            *ri = self.block_radius;
        }
        Ok(Solution {
            y,
            r,
            lifetime: self.target_lifetime,
            achievable: true,
        })
    }
}

/// Ranges for [`random_instance`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomParams {
    pub alpha: f64,
    pub move_cost: f64,
    pub battery: (f64, f64),
    /// Fixed-radius range; ignored for variable radii.
    pub radius: (f64, f64),
    /// Place every sensor at 0 or 1.
    pub endpoints_only: bool,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            alpha: 1.0,
            move_cost: 1.0,
            battery: (0.1, 1.0),
            radius: (0.05, 0.4),
            endpoints_only: false,
        }
    }
}

fn check_range(name: &str, (lo, hi): (f64, f64)) -> Result<()> {
    if lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo <= hi {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} range [{lo}, {hi}] is invalid")))
    }
}

/// Deterministic pseudo-random instance for a seed.
pub fn random_instance<S: Scalar>(n: usize, kind: RadiusKind, seed: u64, params: &RandomParams) -> Result<ProblemInstance<S>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    check_range("battery", params.battery)?;
    check_range("radius", params.radius)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |(lo, hi): (f64, f64)| if lo == hi { lo } else { rng.gen_range(lo..=hi) };
    let sensors = (0..n)
        .map(|_| {
            let x = if params.endpoints_only {
                draw((0.0, 1.0)).round()
            } else {
                draw((0.0, 1.0))
            };
            let b = draw(params.battery);
            let x = S::lit(x);
            let b = S::lit(b);
            match kind {
                RadiusKind::Fixed => Sensor::fixed(x, b, S::lit(draw(params.radius))),
                RadiusKind::Variable => Sensor::variable(x, b),
            }
        })
        .collect();
    ProblemInstance::new(S::lit(params.alpha), MoveCost::Finite(S::lit(params.move_cost)), sensors)
}
