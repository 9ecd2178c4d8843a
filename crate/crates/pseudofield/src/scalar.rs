//! Scalar carriers for the algebra: double precision floats and exact
//! rationals.
//!
//! Every carrier operation is routed through this trait so the rest of the
//! crate is agnostic about whether it computes with tolerances or exactly.
//! Floats use a fixed comparison policy (relative tolerance with an absolute
//! floor) and a singularity guard that turns near-zero denominators into
//! undefined results instead of huge values. Rationals compare exactly and
//! only reject exact zeros.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// Relative tolerance for float comparisons.
pub const REL_TOL: f64 = 1e-9;
/// Absolute floor below which float differences are ignored.
pub const ABS_FLOOR: f64 = 1e-12;
/// Float denominators with magnitude below this yield undefined results.
pub const SINGULARITY_GUARD: f64 = 1e-8;
/// Float divisors below this mark a sample as outside general position:
/// defined, but too ill-conditioned for residuals to mean anything.
pub const GENERAL_POSITION_GUARD: f64 = 1e-4;

use std::cell::Cell;

thread_local! {
    static MIN_DIVISOR: Cell<f64> = const { Cell::new(f64::INFINITY) };
    static EVAL_SCALE: Cell<f64> = const { Cell::new(0.0) };
}

/// Reset the per-thread conditioning trackers (smallest divisor magnitude
/// and largest intermediate magnitude) for one sample evaluation.
pub fn reset_eval_trackers() {
    MIN_DIVISOR.with(|m| m.set(f64::INFINITY));
    EVAL_SCALE.with(|m| m.set(0.0));
}

/// Smallest float divisor magnitude seen since the last reset.
pub fn min_divisor() -> f64 {
    MIN_DIVISOR.with(Cell::get)
}

/// Largest float magnitude produced since the last reset. Float rounding
/// errors scale with this amplitude, so residuals are measured against it.
pub fn eval_scale() -> f64 {
    EVAL_SCALE.with(Cell::get)
}

fn record_divisor(d: f64) {
    MIN_DIVISOR.with(|m| {
        if d < m.get() {
            m.set(d);
        }
    });
}

fn record_scale(v: f64) {
    EVAL_SCALE.with(|m| {
        if v.abs() > m.get() {
            m.set(v.abs());
        }
    });
}

/// Denominator floor for the residual metric; chosen so that
/// `residual <= REL_TOL` is equivalent to the policy comparison.
const RESIDUAL_FLOOR: f64 = ABS_FLOOR / REL_TOL;

/// Denominator of the dyadic grid used when sampling rationals. Kept small
/// so products along deep word evaluations stay within a few bigint limbs.
const RAT_GRID_BITS: u32 = 10;

pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// True when comparisons are exact (no tolerance band).
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// `None` when the divisor trips the singularity guard.
    fn div(&self, rhs: &Self) -> Option<Self>;
    fn neg(&self) -> Self;

    /// True when the value would trip the singularity guard as a divisor.
    fn is_guard_zero(&self) -> bool;

    /// Equality under the fixed comparison policy (exact for rationals).
    fn policy_eq(&self, rhs: &Self) -> bool;

    /// Residual between two values: relative difference with a floored
    /// denominator, reported as f64 even in exact mode (0.0 when equal).
    fn residual(&self, rhs: &Self) -> f64;

    /// Exact difference formatted for reports; `None` in float mode.
    fn exact_diff(&self, rhs: &Self) -> Option<String>;

    /// Uniform draw from the box `[center - radius, center + radius]`.
    fn sample_box(rng: &mut ChaCha8Rng, center: &Self, radius: f64) -> Self;

    fn parse(text: &str) -> Result<Self, String>;
    fn to_f64(&self) -> f64;
    fn mode_name() -> &'static str;
}

fn float_residual(a: f64, b: f64) -> f64 {
    let diff = (a - b).abs();
    if diff == 0.0 {
        return 0.0;
    }
    diff / a.abs().max(b.abs()).max(RESIDUAL_FLOOR)
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn add(&self, rhs: &Self) -> Self {
        let v = self + rhs;
        record_scale(v);
        v
    }
    fn sub(&self, rhs: &Self) -> Self {
        let v = self - rhs;
        record_scale(v);
        v
    }
    fn mul(&self, rhs: &Self) -> Self {
        let v = self * rhs;
        record_scale(v);
        v
    }
    fn div(&self, rhs: &Self) -> Option<Self> {
        if rhs.abs() < SINGULARITY_GUARD {
            None
        } else {
            record_divisor(rhs.abs());
            let v = self / rhs;
            record_scale(v);
            Some(v)
        }
    }
    fn neg(&self) -> Self {
        -self
    }

    fn is_guard_zero(&self) -> bool {
        self.abs() < SINGULARITY_GUARD
    }

    fn policy_eq(&self, rhs: &Self) -> bool {
        let diff = (self - rhs).abs();
        diff <= ABS_FLOOR.max(REL_TOL * self.abs().max(rhs.abs()))
    }

    fn residual(&self, rhs: &Self) -> f64 {
        float_residual(*self, *rhs)
    }

    fn exact_diff(&self, _rhs: &Self) -> Option<String> {
        None
    }

    fn sample_box(rng: &mut ChaCha8Rng, center: &Self, radius: f64) -> Self {
        center + rng.random_range(-radius..=radius)
    }

    fn parse(text: &str) -> Result<Self, String> {
        if let Some((num, den)) = text.split_once('/') {
            let n: f64 = num.trim().parse().map_err(|e| format!("{e}: {num:?}"))?;
            let d: f64 = den.trim().parse().map_err(|e| format!("{e}: {den:?}"))?;
            if d == 0.0 {
                return Err(format!("zero denominator in {text:?}"));
            }
            return Ok(n / d);
        }
        text.trim()
            .parse()
            .map_err(|e| format!("{e}: {text:?}"))
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn mode_name() -> &'static str {
        "float"
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self / rhs)
        }
    }
    fn neg(&self) -> Self {
        -self
    }

    fn is_guard_zero(&self) -> bool {
        self.is_zero()
    }

    fn policy_eq(&self, rhs: &Self) -> bool {
        self == rhs
    }

    fn residual(&self, rhs: &Self) -> f64 {
        if self == rhs {
            0.0
        } else {
            float_residual(Scalar::to_f64(self), Scalar::to_f64(rhs)).max(f64::MIN_POSITIVE)
        }
    }

    fn exact_diff(&self, rhs: &Self) -> Option<String> {
        Some((self - rhs).to_string())
    }

    fn sample_box(rng: &mut ChaCha8Rng, center: &Self, radius: f64) -> Self {
        let grid = 1i64 << RAT_GRID_BITS;
        let span = (radius * grid as f64).round() as i64;
        let p = rng.random_range(-span..=span);
        center + BigRational::new(BigInt::from(p), BigInt::from(grid))
    }

    fn parse(text: &str) -> Result<Self, String> {
        let text = text.trim();
        if let Some((num, den)) = text.split_once('/') {
            let n: BigInt = num.trim().parse().map_err(|e| format!("{e}: {num:?}"))?;
            let d: BigInt = den.trim().parse().map_err(|e| format!("{e}: {den:?}"))?;
            if d.is_zero() {
                return Err(format!("zero denominator in {text:?}"));
            }
            return Ok(BigRational::new(n, d));
        }
        if let Some((int_part, frac_part)) = text.split_once('.') {
            let negative = int_part.trim_start().starts_with('-');
            let int_digits = if int_part.is_empty() || int_part == "-" {
                BigInt::from(0)
            } else {
                int_part.parse().map_err(|e| format!("{e}: {text:?}"))?
            };
            if !frac_part.chars().all(|c| c.is_ascii_digit()) {
                return Err(format!("malformed decimal {text:?}"));
            }
            let frac_digits: BigInt = if frac_part.is_empty() {
                BigInt::from(0)
            } else {
                frac_part.parse().map_err(|e| format!("{e}: {text:?}"))?
            };
            let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
            let frac = BigRational::new(frac_digits, scale);
            let int = BigRational::from_integer(int_digits);
            return Ok(if negative { int - frac } else { int + frac });
        }
        let n: BigInt = text.parse().map_err(|e| format!("{e}: {text:?}"))?;
        Ok(BigRational::from_integer(n))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            // Fall back through a reduced convergent when the parts overflow.
            let digits = 18;
            let scale = BigInt::from(10u64.pow(digits));
            let scaled = (self * BigRational::from_integer(scale.clone())).round();
            ToPrimitive::to_f64(&scaled.numer().clone()).unwrap_or(f64::NAN)
                / 10f64.powi(digits as i32)
        })
    }

    fn mode_name() -> &'static str {
        "rational"
    }
}

/// Rational scalar used in exact mode.
pub type Rat = BigRational;

/// Convenience constructor for exact rationals in tests and instances.
pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
