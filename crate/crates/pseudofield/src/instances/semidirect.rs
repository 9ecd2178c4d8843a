//! Row groups of degree n on the carrier R^n.
//!
//! `Semidirect` multiplies rows by `(x1 y1, x1 y2 + x2, ..., x1 yn + xn)`
//! with coordinate transpositions for `phi_i`; its constructed group is
//! GL_n acting on row vectors. `Mikhailichenko` keeps the same group and
//! all `phi_i` for `i < n` but replaces `phi_n` with
//! `(1 - x1 - ... - x_{n-1}, x2, ..., xn)`, producing a group that is not
//! the linear one.

use crate::algebra::{Element, Partial, Pseudofield, Undefined};
use crate::linalg::gauss_solve;
use crate::scalar::Scalar;

/// General-position bound on |det| for float-mode solves.
const DET_GUARD: f64 = 1e-6;

fn row_mul<S: Scalar>(a: &Element<S>, b: &Element<S>) -> Element<S> {
    let a = a.coords();
    let b = b.coords();
    let lead = &a[0];
    let coords = (0..a.len())
        .map(|k| {
            let term = lead.mul(&b[k]);
            if k == 0 {
                term
            } else {
                term.add(&a[k])
            }
        })
        .collect();
    Element::new(coords)
}

fn row_inv<S: Scalar>(a: &Element<S>) -> Partial<Element<S>> {
    let coords = a.coords();
    let lead = &coords[0];
    if lead.is_guard_zero() {
        return Err(Undefined::NotInvertible);
    }
    let lead_inv = S::one().div(lead).ok_or(Undefined::NotInvertible)?;
    let out = (0..coords.len())
        .map(|k| {
            if k == 0 {
                lead_inv.clone()
            } else {
                coords[k].mul(&lead_inv).neg()
            }
        })
        .collect();
    Ok(Element::new(out))
}

fn swap_coords<S: Scalar>(a: &Element<S>, i: usize) -> Element<S> {
    let mut coords = a.coords().to_vec();
    coords.swap(0, i - 1);
    Element::new(coords)
}

fn basis_unit<S: Scalar>(n: usize, i: usize) -> Element<S> {
    assert!((1..=n).contains(&i), "unit index {i} out of range");
    let coords = (0..n)
        .map(|k| if k + 1 == i { S::one() } else { S::zero() })
        .collect();
    Element::new(coords)
}

fn rows_to_matrix<S: Scalar>(rows: &[Element<S>]) -> Vec<Vec<S>> {
    rows.iter().map(|r| r.coords().to_vec()).collect()
}

fn matrix_to_rows<S: Scalar>(m: Vec<Vec<S>>) -> Vec<Element<S>> {
    m.into_iter().map(Element::new).collect()
}

fn matrix_solve<S: Scalar>(
    from: &[Element<S>],
    to: &[Element<S>],
) -> Partial<Vec<Element<S>>> {
    let (solution, det) = gauss_solve(rows_to_matrix(from), rows_to_matrix(to))?;
    if !S::EXACT && det.to_f64().abs() <= DET_GUARD {
        return Err(Undefined::NotInvertible);
    }
    Ok(matrix_to_rows(solution))
}

/// Row action `a . M(ys)` of a tuple of rows on a single row.
fn row_action<S: Scalar>(x: &Element<S>, ys: &[Element<S>]) -> Element<S> {
    let n = ys.len();
    let dim = ys[0].dim();
    let coords = (0..dim)
        .map(|k| {
            let mut acc = S::zero();
            for j in 0..n {
                acc = acc.add(&x.coords()[j].mul(&ys[j].coords()[k]));
            }
            acc
        })
        .collect();
    Element::new(coords)
}

pub struct Semidirect {
    n: usize,
}

impl Semidirect {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "degree must be at least 2");
        Semidirect { n }
    }
}

impl<S: Scalar> Pseudofield<S> for Semidirect {
    fn name(&self) -> &'static str {
        "semidirect"
    }

    fn degree(&self) -> usize {
        self.n
    }

    fn dim(&self) -> usize {
        self.n
    }

    fn mul(&self, a: &Element<S>, b: &Element<S>) -> Partial<Element<S>> {
        Ok(row_mul(a, b))
    }

    fn inv(&self, a: &Element<S>) -> Partial<Element<S>> {
        row_inv(a)
    }

    fn phi(&self, i: usize, a: &Element<S>) -> Partial<Element<S>> {
        crate::algebra::check_phi_index(i, self.n);
        Ok(swap_coords(a, i))
    }

    fn unit(&self, i: usize) -> Element<S> {
        basis_unit(self.n, i)
    }

    fn reference_action(&self, x: &Element<S>, ys: &[Element<S>]) -> Option<Partial<Element<S>>> {
        assert_eq!(ys.len(), self.n);
        Some(Ok(row_action(x, ys)))
    }

    fn solve_hook(
        &self,
        from: &[Element<S>],
        to: &[Element<S>],
    ) -> Option<Partial<Vec<Element<S>>>> {
        Some(matrix_solve(from, to))
    }
}

pub struct Mikhailichenko {
    n: usize,
}

impl Mikhailichenko {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "degree must be at least 2");
        Mikhailichenko { n }
    }
}

impl<S: Scalar> Pseudofield<S> for Mikhailichenko {
    fn name(&self) -> &'static str {
        "mikhailichenko"
    }

    fn degree(&self) -> usize {
        self.n
    }

    fn dim(&self) -> usize {
        self.n
    }

    fn mul(&self, a: &Element<S>, b: &Element<S>) -> Partial<Element<S>> {
        Ok(row_mul(a, b))
    }

    fn inv(&self, a: &Element<S>) -> Partial<Element<S>> {
        row_inv(a)
    }

    fn phi(&self, i: usize, a: &Element<S>) -> Partial<Element<S>> {
        crate::algebra::check_phi_index(i, self.n);
        if i < self.n {
            return Ok(swap_coords(a, i));
        }
        // (1 - x1 - ... - x_{n-1}, x2, ..., xn)
        let coords = a.coords();
        let mut head = S::one();
        for c in &coords[..self.n - 1] {
            head = head.sub(c);
        }
        let mut out = coords.to_vec();
        out[0] = head;
        Ok(Element::new(out))
    }

    fn unit(&self, i: usize) -> Element<S> {
        if i == self.n {
            // phi_n(e) = (1 - 1, 0, ..., 0)
            Element::new(vec![S::zero(); self.n])
        } else {
            basis_unit(self.n, i)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn el(coords: &[f64]) -> Element<f64> {
        Element::new(coords.to_vec())
    }

    #[test]
    fn reference_action_is_the_matrix_product() {
        let inst = Semidirect::new(2);
        let p: &dyn Pseudofield<f64> = &inst;
        let ys = [el(&[1.0, 1.0]), el(&[3.0, 4.0])];
        let got = p.reference_action(&el(&[2.0, 0.0]), &ys).unwrap().unwrap();
        assert_eq!(got, el(&[2.0, 2.0]));
    }

    #[test]
    fn solve_hook_examples() {
        let inst = Semidirect::new(2);
        let p: &dyn Pseudofield<f64> = &inst;
        let identity = [el(&[1.0, 0.0]), el(&[0.0, 1.0])];
        let to = [el(&[2.0, 3.0]), el(&[4.0, 5.0])];
        let z = p.solve_hook(&identity, &to).unwrap().unwrap();
        assert_eq!(z, to.to_vec());

        let from = [el(&[2.0, 0.0]), el(&[0.0, 1.0])];
        let z = p.solve_hook(&from, &to).unwrap().unwrap();
        assert_eq!(z, vec![el(&[1.0, 1.5]), el(&[4.0, 5.0])]);

        let degenerate = [el(&[1.0, 1.0]), el(&[1.0, 1.0])];
        assert_eq!(
            p.solve_hook(&degenerate, &to).unwrap(),
            Err(Undefined::NotInvertible)
        );
    }

    #[test]
    fn zero_leading_coordinate_is_not_invertible() {
        let inst = Semidirect::new(3);
        let p: &dyn Pseudofield<f64> = &inst;
        assert_eq!(
            p.inv(&el(&[0.0, 1.0, 2.0])),
            Err(Undefined::NotInvertible)
        );
    }

    #[test]
    fn mikhailichenko_phi_n() {
        let inst = Mikhailichenko::new(3);
        let p: &dyn Pseudofield<f64> = &inst;
        let x = el(&[0.2, 1.0, 5.0]);
        let once = p.phi(3, &x).unwrap();
        assert!(once.policy_eq(&el(&[-0.2, 1.0, 5.0])));
        let twice = p.phi(3, &once).unwrap();
        assert!(twice.policy_eq(&x));
        assert_eq!(p.unit(3), el(&[0.0, 0.0, 0.0]));
    }

    proptest! {
        #[test]
        fn row_inverse_cancels(a in prop::collection::vec(-3.0f64..3.0, 3)) {
            prop_assume!(a[0].abs() > 0.05);
            let inst = Semidirect::new(3);
            let p: &dyn Pseudofield<f64> = &inst;
            let x = Element::new(a);
            let xi = p.inv(&x).unwrap();
            prop_assert!(p.mul(&xi, &x).unwrap().policy_eq(&p.unit(1)));
        }

        #[test]
        fn phi_i_is_an_involution(
            a in prop::collection::vec(-3.0f64..3.0, 4),
            i in 2usize..=4,
        ) {
            let inst = Mikhailichenko::new(4);
            let p: &dyn Pseudofield<f64> = &inst;
            let x = Element::new(a);
            let twice = p.phi(i, &p.phi(i, &x).unwrap()).unwrap();
            prop_assert!(twice.policy_eq(&x));
        }
    }
}
