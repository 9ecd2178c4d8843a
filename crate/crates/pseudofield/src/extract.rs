//! The inverse construction: recover the carrier operations from a sharply
//! n-transitive action.
//!
//! An [`ActionOracle`] exposes an action together with a solver for the
//! unique group element mapping one tuple to another; group elements are
//! identified with tuples (the images of the base points). Given an oracle,
//! [`extract_pseudofield`] rebuilds multiplication from the stabilizer of
//! `e_2..e_n`, the inverse from the solve back to the base, and each
//! involution from the base tuple with entries 1 and i swapped.

use crate::algebra::{Element, Partial, Pseudofield, Undefined};
use crate::group::{gidentity, ginv, gmul, Tuple};
use crate::linalg::gauss_solve;
use crate::scalar::Scalar;
use crate::word::act;

/// A sharply transitive action with a solver and a distinguished base tuple.
pub trait ActionOracle<S: Scalar>: Send + Sync {
    fn degree(&self) -> usize;
    fn dim(&self) -> usize;

    /// The fixed tuple of n distinct points `(e_1, ..., e_n)`.
    fn base(&self) -> &Tuple<S>;

    /// The action `a . g`.
    fn apply(&self, a: &Element<S>, g: &Tuple<S>) -> Partial<Element<S>>;

    /// The unique `g` with `from . g = to`, entrywise.
    fn solve(&self, from: &Tuple<S>, to: &Tuple<S>) -> Partial<Tuple<S>>;
}

/// Oracle wrapping the constructed group of an instance.
///
/// Solving prefers the instance's closed-form hook; otherwise it goes
/// through the group operations as `ginv(from) * to`, which stays exact in
/// rational mode.
pub struct ConstructedOracle<'a, S: Scalar> {
    inst: &'a dyn Pseudofield<S>,
    base: Tuple<S>,
}

impl<'a, S: Scalar> ConstructedOracle<'a, S> {
    pub fn new(inst: &'a dyn Pseudofield<S>) -> Self {
        ConstructedOracle {
            base: gidentity(inst),
            inst,
        }
    }

    pub fn instance(&self) -> &'a dyn Pseudofield<S> {
        self.inst
    }
}

impl<S: Scalar> ActionOracle<S> for ConstructedOracle<'_, S> {
    fn degree(&self) -> usize {
        self.inst.degree()
    }

    fn dim(&self) -> usize {
        self.inst.dim()
    }

    fn base(&self) -> &Tuple<S> {
        &self.base
    }

    fn apply(&self, a: &Element<S>, g: &Tuple<S>) -> Partial<Element<S>> {
        act(self.inst, a, g.entries())
    }

    fn solve(&self, from: &Tuple<S>, to: &Tuple<S>) -> Partial<Tuple<S>> {
        if let Some(result) = self.inst.solve_hook(from.entries(), to.entries()) {
            return result.map(Tuple::new);
        }
        solve_via_group(self.inst, from, to)
    }
}

/// Solve `from . Z = to` through the constructed group: `Z = ginv(from) * to`.
pub fn solve_via_group<S: Scalar>(
    inst: &dyn Pseudofield<S>,
    from: &Tuple<S>,
    to: &Tuple<S>,
) -> Partial<Tuple<S>> {
    gmul(inst, &ginv(inst, from)?, to)
}

/// Solve `from . Z = to` for any oracle, preferring its own solver.
pub fn solve_transitive<S: Scalar>(
    oracle: &dyn ActionOracle<S>,
    from: &Tuple<S>,
    to: &Tuple<S>,
) -> Partial<Tuple<S>> {
    oracle.solve(from, to)
}

/// Newton iteration on the residual `gmul(from, Z) - to`, float mode only.
///
/// Seeded from the neutral tuple (optionally perturbed); the Jacobian is
/// formed by forward differences. Converges when the max-norm residual
/// drops below 1e-12 within 50 iterations, otherwise reports undefined.
pub fn solve_newton(
    inst: &dyn Pseudofield<f64>,
    from: &Tuple<f64>,
    to: &Tuple<f64>,
    perturbation: f64,
    perturbation_seed: u64,
) -> Partial<Tuple<f64>> {
    const MAX_ITER: usize = 50;
    const CONVERGENCE: f64 = 1e-12;
    const DIFF_STEP: f64 = 1e-7;

    let dim = inst.dim();
    let unknowns = inst.degree() * dim;

    let flatten = |t: &Tuple<f64>| -> Vec<f64> {
        t.entries()
            .iter()
            .flat_map(|e| e.coords().iter().copied())
            .collect()
    };
    let unflatten = |v: &[f64]| -> Tuple<f64> {
        Tuple::new(v.chunks(dim).map(|c| Element::new(c.to_vec())).collect())
    };

    let target = flatten(to);
    let residual = |z: &[f64]| -> Partial<Vec<f64>> {
        let product = gmul(inst, from, &unflatten(z))?;
        Ok(flatten(&product)
            .iter()
            .zip(&target)
            .map(|(a, b)| a - b)
            .collect())
    };

    let mut z = flatten(&gidentity(inst));
    if perturbation != 0.0 {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(perturbation_seed);
        for v in &mut z {
            *v += rng.random_range(-perturbation..=perturbation);
        }
    }

    for _ in 0..MAX_ITER {
        let r = residual(&z)?;
        let norm = r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if norm <= CONVERGENCE {
            return Ok(unflatten(&z));
        }
        // Forward-difference Jacobian, one column per unknown.
        let mut jac = vec![vec![0.0; unknowns]; unknowns];
        for col in 0..unknowns {
            let h = DIFF_STEP * (1.0 + z[col].abs());
            let mut zp = z.clone();
            zp[col] += h;
            let rp = residual(&zp)?;
            for row in 0..unknowns {
                jac[row][col] = (rp[row] - r[row]) / h;
            }
        }
        let rhs: Vec<Vec<f64>> = r.iter().map(|v| vec![-v]).collect();
        let (delta, _det) = gauss_solve(jac, rhs)?;
        for (zi, d) in z.iter_mut().zip(&delta) {
            *zi += d[0];
        }
    }
    Err(Undefined::OutOfDomain)
}

/// A pseudofield whose operations are all routed through an action oracle.
pub struct ExtractedPseudofield<'a, S: Scalar> {
    oracle: &'a dyn ActionOracle<S>,
    base: Tuple<S>,
    /// `E_1i` tuples: the base with entries 1 and i swapped, i = 2..=n.
    swaps: Vec<Tuple<S>>,
}

impl<S: Scalar> ExtractedPseudofield<'_, S> {
    /// Tuple `(a, e_2, ..., e_n)`: the stabilizer element for `a`.
    fn stabilizer_tuple(&self, a: &Element<S>) -> Tuple<S> {
        let mut entries = self.base.entries().to_vec();
        entries[0] = a.clone();
        Tuple::new(entries)
    }

    /// The automorphism `eps_ij(x) = x . E_ij` recovered from the action.
    pub fn epsilon(&self, i: usize, j: usize, a: &Element<S>) -> Partial<Element<S>> {
        let n = self.degree();
        crate::algebra::check_phi_index(i, n);
        crate::algebra::check_phi_index(j, n);
        assert_ne!(i, j);
        let mut entries = self.base.entries().to_vec();
        entries.swap(i - 1, j - 1);
        let swapped = Tuple::new(entries);
        let e_ij = self.oracle.solve(&self.base, &swapped)?;
        self.oracle.apply(a, &e_ij)
    }
}

impl<S: Scalar> Pseudofield<S> for ExtractedPseudofield<'_, S> {
    fn name(&self) -> &'static str {
        "extracted"
    }

    fn degree(&self) -> usize {
        self.base.len()
    }

    fn dim(&self) -> usize {
        self.base.entries()[0].dim()
    }

    fn mul(&self, a: &Element<S>, b: &Element<S>) -> Partial<Element<S>> {
        let g_b = self
            .oracle
            .solve(&self.base, &self.stabilizer_tuple(b))?;
        self.oracle.apply(a, &g_b)
    }

    fn inv(&self, a: &Element<S>) -> Partial<Element<S>> {
        let g = self.oracle.solve(&self.stabilizer_tuple(a), &self.base)?;
        self.oracle.apply(&self.base.entries()[0], &g)
    }

    fn phi(&self, i: usize, a: &Element<S>) -> Partial<Element<S>> {
        crate::algebra::check_phi_index(i, self.degree());
        self.oracle.apply(a, &self.swaps[i - 2])
    }

    fn unit(&self, i: usize) -> Element<S> {
        self.base.entries()[i - 1].clone()
    }
}

/// Rebuild a pseudofield from an action oracle.
///
/// The `E_1i` tuples are solved for eagerly; a degenerate solve there makes
/// the whole extraction undefined.
pub fn extract_pseudofield<S: Scalar>(
    oracle: &dyn ActionOracle<S>,
) -> Partial<ExtractedPseudofield<'_, S>> {
    let base = oracle.base().clone();
    let n = base.len();
    let mut swaps = Vec::with_capacity(n - 1);
    for i in 2..=n {
        let mut entries = base.entries().to_vec();
        entries.swap(0, i - 1);
        swaps.push(oracle.solve(&base, &Tuple::new(entries))?);
    }
    Ok(ExtractedPseudofield {
        oracle,
        base,
        swaps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{Affine2, Moebius3, Semidirect};
    use crate::scalar::{rat, Rat};

    #[test]
    fn solve_examples() {
        let inst = Semidirect::new(2);
        let p: &dyn Pseudofield<f64> = &inst;
        let oracle = ConstructedOracle::new(p);
        let identity = oracle.base().clone();
        let to = Tuple::new(vec![
            Element::new(vec![2.0, 3.0]),
            Element::new(vec![4.0, 5.0]),
        ]);
        assert!(oracle.solve(&identity, &to).unwrap().policy_eq(&to));

        let from = Tuple::new(vec![
            Element::new(vec![2.0, 0.0]),
            Element::new(vec![0.0, 1.0]),
        ]);
        let z = oracle.solve(&from, &to).unwrap();
        assert!(z.policy_eq(&Tuple::new(vec![
            Element::new(vec![1.0, 1.5]),
            Element::new(vec![4.0, 5.0]),
        ])));
    }

    #[test]
    fn affine_solve_maps_base_pair() {
        let inst = Affine2;
        let p: &dyn Pseudofield<Rat> = &inst;
        let oracle = ConstructedOracle::new(p);
        let to = Tuple::new(vec![
            Element::scalar(rat(0, 1)),
            Element::scalar(rat(1, 1)),
        ]);
        let z = oracle.solve(oracle.base(), &to).unwrap();
        assert_eq!(z, to);
        // apply(base_i, z) = to_i, the oracle's defining property.
        for (b, t) in oracle.base().entries().iter().zip(to.entries()) {
            assert_eq!(oracle.apply(b, &z).unwrap(), *t);
        }
    }

    #[test]
    fn self_solve_acts_as_identity() {
        let inst = Moebius3;
        let p: &dyn Pseudofield<Rat> = &inst;
        let oracle = ConstructedOracle::new(p);
        let candidates = [
            [rat(7, 4), rat(-1, 3), rat(-5, 4)],
            [rat(3, 2), rat(1, 5), rat(-2, 1)],
            [rat(5, 4), rat(-1, 2), rat(-3, 2)],
        ];
        let mut solved = 0;
        for coords in candidates {
            let x = Tuple::new(coords.map(Element::scalar).to_vec());
            let Ok(g) = oracle.solve(&x, &x) else {
                continue;
            };
            solved += 1;
            for a in [rat(3, 2), rat(-2, 5), rat(9, 7)] {
                let a = Element::scalar(a);
                assert_eq!(oracle.apply(&a, &g).unwrap(), a);
            }
        }
        assert!(solved >= 1, "no candidate tuple had a defined self-solve");
    }

    #[test]
    fn extracted_affine_operations() {
        let inst = Affine2;
        let p: &dyn Pseudofield<Rat> = &inst;
        let oracle = ConstructedOracle::new(p);
        let ex = extract_pseudofield(&oracle).unwrap();
        let x = Element::scalar(rat(1, 4));
        assert_eq!(ex.phi(2, &x).unwrap(), Element::scalar(rat(3, 4)));
        let a = Element::scalar(rat(7, 5));
        assert_eq!(ex.mul(&a, &Element::scalar(rat(1, 1))).unwrap(), a);
        assert_eq!(ex.inv(&a).unwrap(), p.inv(&a).unwrap());
    }

    #[test]
    fn extracted_semidirect_phi_swaps_coordinates() {
        let inst = Semidirect::new(3);
        let p: &dyn Pseudofield<f64> = &inst;
        let oracle = ConstructedOracle::new(p);
        let ex = extract_pseudofield(&oracle).unwrap();
        let a = Element::new(vec![1.5, -2.0, 0.75]);
        let got = ex.phi(2, &a).unwrap();
        assert!(got.policy_eq(&Element::new(vec![-2.0, 1.5, 0.75])));
    }

    #[test]
    fn extracted_moebius_phi3() {
        let inst = Moebius3;
        let p: &dyn Pseudofield<Rat> = &inst;
        let oracle = ConstructedOracle::new(p);
        let ex = extract_pseudofield(&oracle).unwrap();
        for v in [rat(3, 4), rat(-7, 3), rat(12, 5)] {
            let a = Element::scalar(v.clone());
            assert_eq!(ex.phi(3, &a).unwrap(), Element::scalar(-v.clone()));
            assert_eq!(
                ex.phi(2, &a).unwrap(),
                p.phi(2, &a).unwrap(),
                "phi_2 at {v}"
            );
        }
    }

    #[test]
    fn newton_matches_the_linear_hook() {
        let inst = Semidirect::new(2);
        let p: &dyn Pseudofield<f64> = &inst;
        let oracle = ConstructedOracle::new(p);
        let from = Tuple::new(vec![
            Element::new(vec![1.2, 0.3]),
            Element::new(vec![-0.4, 1.1]),
        ]);
        let to = Tuple::new(vec![
            Element::new(vec![0.9, -0.2]),
            Element::new(vec![0.5, 1.4]),
        ]);
        let hook = oracle.solve(&from, &to).unwrap();
        for (pert, seed) in [(0.0, 0), (0.05, 1), (0.05, 2)] {
            let newton = solve_newton(p, &from, &to, pert, seed).unwrap();
            assert!(
                hook.residual(&newton) < 1e-9,
                "residual {}",
                hook.residual(&newton)
            );
        }
    }
}
