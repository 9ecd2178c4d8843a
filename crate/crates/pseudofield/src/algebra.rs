//! The partial-operation contract of a local n-pseudofield and the
//! operations derived from the primitive ones.
//!
//! A carrier `G` comes with a partially defined multiplication, a partial
//! inverse `E`, involutions `phi_i` for `i = 2..=n`, and distinguished units
//! `e` and `e_i = phi_i(e)`. Everything that can fail returns a [`Partial`];
//! undefinedness propagates and is never silently replaced by a value.

use crate::scalar::Scalar;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use thiserror::Error;

/// Why a partial operation produced no value.
#[derive(Error, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Undefined {
    #[error("out of domain")]
    OutOfDomain,
    #[error("division by zero")]
    DivisionByZero,
    #[error("singular denominator")]
    SingularDenominator,
    #[error("not invertible")]
    NotInvertible,
}

/// Result of a partial operation. `?` propagates the original reason.
pub type Partial<T> = Result<T, Undefined>;

/// A point of the carrier set: a fixed-length coordinate vector.
/// Scalar instances have dimension 1.
#[derive(Clone, PartialEq, Debug)]
pub struct Element<S>(Vec<S>);

impl<S: Scalar> Element<S> {
    pub fn new(coords: Vec<S>) -> Self {
        assert!(!coords.is_empty(), "element needs at least one coordinate");
        Element(coords)
    }

    pub fn scalar(value: S) -> Self {
        Element(vec![value])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Element(coords.iter().map(|&v| S::from_int(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<S> {
        self.0
    }

    /// Sole coordinate of a dimension-1 element.
    pub fn as_scalar(&self) -> &S {
        assert_eq!(self.0.len(), 1, "as_scalar on a non-scalar element");
        &self.0[0]
    }

    pub fn policy_eq(&self, other: &Self) -> bool {
        self.0.len() == other.0.len()
            && self.0.iter().zip(&other.0).all(|(a, b)| a.policy_eq(b))
    }

    /// Max residual over coordinates, relative to the values themselves.
    pub fn residual(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.residual(b))
            .fold(0.0, f64::max)
    }

    /// Max absolute coordinate difference, as f64 (exact scalars are
    /// converted; equal exact values give 0).
    pub fn abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| {
                if a == b {
                    0.0
                } else {
                    (a.to_f64() - b.to_f64()).abs().max(f64::MIN_POSITIVE)
                }
            })
            .fold(0.0, f64::max)
    }

    /// Largest coordinate magnitude, as f64.
    pub fn magnitude(&self) -> f64 {
        self.0
            .iter()
            .map(|a| a.to_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn exact_eq(&self, other: &Self) -> bool {
        self == other
    }

    pub fn sample_box(rng: &mut ChaCha8Rng, center: &Self, radius: f64) -> Self {
        Element(
            center
                .0
                .iter()
                .map(|c| S::sample_box(rng, c, radius))
                .collect(),
        )
    }

    pub fn parse(text: &str, dim: usize) -> Result<Self, String> {
        let coords: Result<Vec<S>, String> = text.split(',').map(|p| S::parse(p)).collect();
        let coords = coords?;
        if coords.len() != dim {
            return Err(format!(
                "expected {dim} coordinate(s), got {} in {text:?}",
                coords.len()
            ));
        }
        Ok(Element(coords))
    }
}

impl<S: Scalar> fmt::Display for Element<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Which of the classical compatibility checks apply to an instance's
/// `phi_2`.
///
/// The subtraction identity is literal `1 - x` arithmetic on the carrier, so
/// it only makes sense where the map is built over ordinary multiplication;
/// the conjugation/involution/quotient/constant conditions are purely
/// group-theoretic and survive a change of variable.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClassicalProfile {
    Skip,
    CohnOnly,
    Full,
}

/// A local n-pseudofield: carrier operations, involutions and units.
///
/// Implementations must keep `phi` involutive where defined, must return
/// `unit(1) = e` and `unit(i) = phi(i, e)`, and must propagate undefinedness
/// instead of fabricating values. `phi` with an index outside `2..=n` is a
/// contract violation and panics.
pub trait Pseudofield<S: Scalar>: Send + Sync {
    fn name(&self) -> &'static str;

    /// Degree n of the structure (number of distinguished units).
    fn degree(&self) -> usize;

    /// Carrier dimension (coordinates per element).
    fn dim(&self) -> usize;

    fn mul(&self, a: &Element<S>, b: &Element<S>) -> Partial<Element<S>>;

    fn inv(&self, a: &Element<S>) -> Partial<Element<S>>;

    fn phi(&self, i: usize, a: &Element<S>) -> Partial<Element<S>>;

    /// Distinguished unit `e_i`, `1 <= i <= n`; total for shipped instances.
    fn unit(&self, i: usize) -> Element<S>;

    /// Closed-form action `x . [ys]` when the instance has one; used as a
    /// cross-check oracle against the word-calculus action.
    fn reference_action(&self, _x: &Element<S>, _ys: &[Element<S>]) -> Option<Partial<Element<S>>> {
        None
    }

    /// Closed-form sharp-transitivity solver `from . Z = to`, returning the
    /// tuple `Z` (row-major entries), when the instance has one.
    fn solve_hook(
        &self,
        _from: &[Element<S>],
        _to: &[Element<S>],
    ) -> Option<Partial<Vec<Element<S>>>> {
        None
    }

    /// Which classical checks the instance's `phi_2` is meant to satisfy.
    fn classical_profile(&self) -> ClassicalProfile {
        ClassicalProfile::Skip
    }
}

pub(crate) fn check_phi_index(i: usize, n: usize) {
    assert!(
        (2..=n).contains(&i),
        "phi index {i} outside 2..={n} is a contract violation"
    );
}

/// Derived multiplication `a *_i b = phi_i(phi_i(a) phi_i(b))`.
///
/// Falls back to the equivalent form `phi_i(a phi_i(b^-1)) b` when the
/// primary route is undefined; the two agree wherever both are defined.
pub fn mul_i<S: Scalar>(
    inst: &dyn Pseudofield<S>,
    i: usize,
    a: &Element<S>,
    b: &Element<S>,
) -> Partial<Element<S>> {
    check_phi_index(i, inst.degree());
    match mul_i_primary(inst, i, a, b) {
        Ok(v) => Ok(v),
        Err(first) => mul_i_alt(inst, i, a, b).map_err(|_| first),
    }
}

/// `phi_i(phi_i(a) phi_i(b))`, the defining route of `*_i`.
pub fn mul_i_primary<S: Scalar>(
    inst: &dyn Pseudofield<S>,
    i: usize,
    a: &Element<S>,
    b: &Element<S>,
) -> Partial<Element<S>> {
    check_phi_index(i, inst.degree());
    let pa = inst.phi(i, a)?;
    let pb = inst.phi(i, b)?;
    inst.phi(i, &inst.mul(&pa, &pb)?)
}

/// `phi_i(a phi_i(b^-1)) b`, the alternate route of `*_i`.
pub fn mul_i_alt<S: Scalar>(
    inst: &dyn Pseudofield<S>,
    i: usize,
    a: &Element<S>,
    b: &Element<S>,
) -> Partial<Element<S>> {
    check_phi_index(i, inst.degree());
    let bi = inst.inv(b)?;
    let pbi = inst.phi(i, &bi)?;
    let left = inst.phi(i, &inst.mul(a, &pbi)?)?;
    inst.mul(&left, b)
}

/// Inverse transported to `G_i`: `E_i = phi_i E phi_i`.
pub fn inv_i<S: Scalar>(
    inst: &dyn Pseudofield<S>,
    i: usize,
    a: &Element<S>,
) -> Partial<Element<S>> {
    check_phi_index(i, inst.degree());
    inst.phi(i, &inst.inv(&inst.phi(i, a)?)?)
}

/// The local automorphism `sigma_ij = phi_j phi_i phi_j` (apply `phi_j`,
/// then `phi_i`, then `phi_j`; the composition is a palindrome).
pub fn sigma<S: Scalar>(
    inst: &dyn Pseudofield<S>,
    i: usize,
    j: usize,
    a: &Element<S>,
) -> Partial<Element<S>> {
    let n = inst.degree();
    check_phi_index(i, n);
    check_phi_index(j, n);
    assert_ne!(i, j, "sigma indices must differ");
    inst.phi(j, &inst.phi(i, &inst.phi(j, a)?)?)
}

/// All distinguished units `(e, e_2, ..., e_n)`.
pub fn units<S: Scalar>(inst: &dyn Pseudofield<S>) -> Vec<Element<S>> {
    (1..=inst.degree()).map(|i| inst.unit(i)).collect()
}
