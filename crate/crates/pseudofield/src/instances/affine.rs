//! Degree-2 structure on the multiplicative reals with `phi_2(x) = 1 - x`.
//!
//! The constructed pair group acts on the carrier by `x(y1 - y2) + y2` and is
//! the affine transformation group of the real line.

use crate::algebra::{ClassicalProfile, Element, Partial, Pseudofield, Undefined};
use crate::scalar::Scalar;

pub struct Affine2;

impl<S: Scalar> Pseudofield<S> for Affine2 {
    fn name(&self) -> &'static str {
        "affine2"
    }

    fn degree(&self) -> usize {
        2
    }

    fn dim(&self) -> usize {
        1
    }

    fn mul(&self, a: &Element<S>, b: &Element<S>) -> Partial<Element<S>> {
        Ok(Element::scalar(a.as_scalar().mul(b.as_scalar())))
    }

    fn inv(&self, a: &Element<S>) -> Partial<Element<S>> {
        let x = a.as_scalar();
        if x.is_guard_zero() {
            return Err(Undefined::NotInvertible);
        }
        Ok(Element::scalar(S::one().div(x).ok_or(Undefined::NotInvertible)?))
    }

    fn phi(&self, i: usize, a: &Element<S>) -> Partial<Element<S>> {
        crate::algebra::check_phi_index(i, 2);
        Ok(Element::scalar(S::one().sub(a.as_scalar())))
    }

    fn unit(&self, i: usize) -> Element<S> {
        match i {
            1 => Element::scalar(S::one()),
            2 => Element::scalar(S::zero()),
            _ => panic!("unit index {i} out of range for degree 2"),
        }
    }

    fn reference_action(&self, x: &Element<S>, ys: &[Element<S>]) -> Option<Partial<Element<S>>> {
        assert_eq!(ys.len(), 2);
        let (x, y1, y2) = (x.as_scalar(), ys[0].as_scalar(), ys[1].as_scalar());
        let value = x.mul(&y1.sub(y2)).add(y2);
        Some(Ok(Element::scalar(value)))
    }

    fn solve_hook(
        &self,
        from: &[Element<S>],
        to: &[Element<S>],
    ) -> Option<Partial<Vec<Element<S>>>> {
        assert_eq!(from.len(), 2);
        assert_eq!(to.len(), 2);
        // x_i (a - b) + b = y_i gives a - b = (y1 - y2) / (x1 - x2).
        let (x1, x2) = (from[0].as_scalar(), from[1].as_scalar());
        let (y1, y2) = (to[0].as_scalar(), to[1].as_scalar());
        let dx = x1.sub(x2);
        let slope = match y1.sub(y2).div(&dx) {
            Some(s) => s,
            None => return Some(Err(Undefined::NotInvertible)),
        };
        let b = y1.sub(&x1.mul(&slope));
        let a = slope.add(&b);
        Some(Ok(vec![Element::scalar(a), Element::scalar(b)]))
    }

    fn classical_profile(&self) -> ClassicalProfile {
        ClassicalProfile::Full
    }
}

/// Negative control: an involution that is *not* compatible with the main
/// equation over real multiplication (`phi_2(x) = 2 - x`). The verification
/// suites must flag it.
pub struct Adversarial2;

impl<S: Scalar> Pseudofield<S> for Adversarial2 {
    fn name(&self) -> &'static str {
        "adversarial2"
    }

    fn degree(&self) -> usize {
        2
    }

    fn dim(&self) -> usize {
        1
    }

    fn mul(&self, a: &Element<S>, b: &Element<S>) -> Partial<Element<S>> {
        Ok(Element::scalar(a.as_scalar().mul(b.as_scalar())))
    }

    fn inv(&self, a: &Element<S>) -> Partial<Element<S>> {
        let x = a.as_scalar();
        if x.is_guard_zero() {
            return Err(Undefined::NotInvertible);
        }
        Ok(Element::scalar(S::one().div(x).ok_or(Undefined::NotInvertible)?))
    }

    fn phi(&self, i: usize, a: &Element<S>) -> Partial<Element<S>> {
        crate::algebra::check_phi_index(i, 2);
        Ok(Element::scalar(S::from_int(2).sub(a.as_scalar())))
    }

    fn unit(&self, i: usize) -> Element<S> {
        match i {
            // phi_2(1) = 1, so both units coincide; part of what makes this
            // instance fail the axioms.
            1 | 2 => Element::scalar(S::one()),
            _ => panic!("unit index {i} out of range for degree 2"),
        }
    }

    fn classical_profile(&self) -> ClassicalProfile {
        ClassicalProfile::Full
    }
}
