//! Degree-3 structure on the reals obtained from the affine one by the
//! change of variable `psi(x) = 2x / (x + 1)`.
//!
//! Multiplication becomes `x * y = 2xy / (1 + x + y - xy)` with
//! `phi_2(x) = (1 - x) / (1 + 3x)`, `phi_3(x) = -x` and units `1, 0, -1`.
//! The constructed degree-3 group acts by the fractional-linear closed form
//! kept in `reference_action`.

use crate::algebra::{ClassicalProfile, Element, Partial, Pseudofield, Undefined};
use crate::scalar::Scalar;

pub struct Moebius3;

fn two<S: Scalar>() -> S {
    S::from_int(2)
}

impl Moebius3 {
    fn raw_mul<S: Scalar>(x: &S, y: &S) -> Partial<S> {
        // 2xy / (1 + x + y - xy)
        let num = two::<S>().mul(x).mul(y);
        let den = S::one().add(x).add(y).sub(&x.mul(y));
        num.div(&den).ok_or(Undefined::SingularDenominator)
    }
}

impl<S: Scalar> Pseudofield<S> for Moebius3 {
    fn name(&self) -> &'static str {
        "moebius3"
    }

    fn degree(&self) -> usize {
        3
    }

    fn dim(&self) -> usize {
        1
    }

    fn mul(&self, a: &Element<S>, b: &Element<S>) -> Partial<Element<S>> {
        Ok(Element::scalar(Self::raw_mul(a.as_scalar(), b.as_scalar())?))
    }

    fn inv(&self, a: &Element<S>) -> Partial<Element<S>> {
        let x = a.as_scalar();
        // The candidate (1 + x) / (3x - 1) fails to be a genuine inverse at
        // x = 0 and x = -1, where the product with x is itself undefined.
        if x.is_guard_zero() || x.add(&S::one()).is_guard_zero() {
            return Err(Undefined::NotInvertible);
        }
        let num = S::one().add(x);
        let den = S::from_int(3).mul(x).sub(&S::one());
        let y = num.div(&den).ok_or(Undefined::SingularDenominator)?;
        Ok(Element::scalar(y))
    }

    fn phi(&self, i: usize, a: &Element<S>) -> Partial<Element<S>> {
        crate::algebra::check_phi_index(i, 3);
        let x = a.as_scalar();
        match i {
            2 => {
                let num = S::one().sub(x);
                let den = S::one().add(&S::from_int(3).mul(x));
                let y = num.div(&den).ok_or(Undefined::SingularDenominator)?;
                Ok(Element::scalar(y))
            }
            _ => Ok(Element::scalar(x.neg())),
        }
    }

    fn unit(&self, i: usize) -> Element<S> {
        match i {
            1 => Element::scalar(S::one()),
            2 => Element::scalar(S::zero()),
            3 => Element::scalar(S::one().neg()),
            _ => panic!("unit index {i} out of range for degree 3"),
        }
    }

    fn reference_action(&self, x: &Element<S>, ys: &[Element<S>]) -> Option<Partial<Element<S>>> {
        assert_eq!(ys.len(), 3);
        let x = x.as_scalar();
        let (y1, y2, y3) = (ys[0].as_scalar(), ys[1].as_scalar(), ys[2].as_scalar());
        // (x(2 y1 y3 - y2(y1 + y3)) + y2(y3 - y1)) /
        // (x(y1 - 2 y2 + y3) + y3 - y1)
        let num = {
            let first = two::<S>().mul(y1).mul(y3).sub(&y2.mul(&y1.add(y3)));
            x.mul(&first).add(&y2.mul(&y3.sub(y1)))
        };
        let den = {
            let first = y1.sub(&two::<S>().mul(y2)).add(y3);
            x.mul(&first).add(&y3.sub(y1))
        };
        Some(
            num.div(&den)
                .ok_or(Undefined::SingularDenominator)
                .map(Element::scalar),
        )
    }

    fn classical_profile(&self) -> ClassicalProfile {
        ClassicalProfile::CohnOnly
    }
}

/// The change of variable relating this structure to the affine one.
pub fn psi<S: Scalar>(x: &S) -> Partial<S> {
    two::<S>()
        .mul(x)
        .div(&x.add(&S::one()))
        .ok_or(Undefined::SingularDenominator)
}

/// Inverse change of variable, `x / (2 - x)`.
pub fn psi_inv<S: Scalar>(x: &S) -> Partial<S> {
    x.div(&two::<S>().sub(x))
        .ok_or(Undefined::SingularDenominator)
}
