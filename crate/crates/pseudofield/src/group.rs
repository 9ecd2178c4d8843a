//! The forward construction: a local group structure on n-tuples of carrier
//! points, acting sharply n-transitively on the carrier.
//!
//! Multiplication applies the right factor's tuple word to each entry of the
//! left factor. The inverse follows the recursive per-component formula: the
//! component for index i conjugates by `phi_i`, reduces to the stage-1 tuple
//! of length n-1, inverts that recursively, and acts on `phi_n` of the
//! inverted last entry. A trailing unit entry short-circuits to the
//! lower-degree inverse, which is also the recursion that makes stabilizer
//! tuples (entries `e_2..e_n`) invertible at all.

use crate::algebra::{Element, Partial, Pseudofield};
use crate::scalar::Scalar;
use crate::word::act;
use std::fmt;

/// An ordered n-tuple of carrier points: one element of the constructed
/// group, identified with the images of the distinguished units.
#[derive(Clone, Debug, PartialEq)]
pub struct Tuple<S> {
    entries: Vec<Element<S>>,
}

impl<S: Scalar> Tuple<S> {
    pub fn new(entries: Vec<Element<S>>) -> Self {
        assert!(!entries.is_empty());
        Tuple { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Element<S>] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Element<S>> {
        self.entries
    }

    pub fn policy_eq(&self, other: &Self) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.policy_eq(b))
    }

    pub fn residual(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.residual(b))
            .fold(0.0, f64::max)
    }

    /// Parse `n * dim` comma-separated coordinates, row-major.
    pub fn parse(text: &str, n: usize, dim: usize) -> Result<Self, String> {
        let coords: Result<Vec<S>, String> = text.split(',').map(|p| S::parse(p)).collect();
        let coords = coords?;
        if coords.len() != n * dim {
            return Err(format!(
                "expected {n} x {dim} = {} coordinates, got {}",
                n * dim,
                coords.len()
            ));
        }
        let entries = coords
            .chunks(dim)
            .map(|c| Element::new(c.to_vec()))
            .collect();
        Ok(Tuple { entries })
    }
}

impl<S: Scalar> fmt::Display for Tuple<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// The left neutral tuple `(e, e_2, ..., e_n)`.
pub fn gidentity<S: Scalar>(inst: &dyn Pseudofield<S>) -> Tuple<S> {
    Tuple::new(crate::algebra::units(inst))
}

/// Product of tuples: entry i is `x_i . [ys]`.
pub fn gmul<S: Scalar>(
    inst: &dyn Pseudofield<S>,
    x: &Tuple<S>,
    y: &Tuple<S>,
) -> Partial<Tuple<S>> {
    assert_eq!(x.len(), inst.degree());
    assert_eq!(y.len(), inst.degree());
    // One word construction shared by all n entries.
    let word = crate::word::tuple_word(inst, y.entries());
    let entries = x
        .entries()
        .iter()
        .map(|xi| crate::word::act_cached(inst, xi, y.entries(), &word))
        .collect::<Partial<Vec<_>>>()?;
    Ok(Tuple::new(entries))
}

/// Left inverse: `gmul(ginv(x), x)` is the neutral tuple where defined.
pub fn ginv<S: Scalar>(inst: &dyn Pseudofield<S>, x: &Tuple<S>) -> Partial<Tuple<S>> {
    assert_eq!(x.len(), inst.degree());
    Ok(Tuple::new(ginv_rec(inst, x.entries())?))
}

fn ginv_rec<S: Scalar>(
    inst: &dyn Pseudofield<S>,
    xs: &[Element<S>],
) -> Partial<Vec<Element<S>>> {
    let m = xs.len();
    if m == 1 {
        return Ok(vec![inst.inv(&xs[0])?]);
    }

    // A trailing unit entry means the tuple lies in the stabilizer of e_m;
    // its inverse stays there.
    if xs[m - 1].policy_eq(&inst.unit(m)) {
        let mut inner = ginv_rec(inst, &xs[..m - 1])?;
        inner.push(inst.unit(m));
        return Ok(inner);
    }

    let mut out = Vec::with_capacity(m);
    for i in 1..=m {
        // Conjugate: swap entries 1 and i, apply phi_i everywhere (identity
        // for i = 1).
        let mut z = xs.to_vec();
        z.swap(0, i - 1);
        let z: Vec<Element<S>> = if i == 1 {
            z
        } else {
            z.iter().map(|e| inst.phi(i, e)).collect::<Partial<_>>()?
        };
        let last_inv = inst.inv(&z[m - 1])?;
        // Stage-1 elements of the conjugated tuple.
        let stage = z[..m - 1]
            .iter()
            .map(|e| inst.phi(m, &inst.mul(e, &last_inv)?))
            .collect::<Partial<Vec<_>>>()?;
        let inner_inv = ginv_rec(inst, &stage)?;
        let prefix = inst.phi(m, &last_inv)?;
        let component = act(inst, &prefix, &inner_inv)?;
        out.push(if i == 1 {
            component
        } else {
            inst.phi(i, &component)?
        });
    }
    Ok(out)
}

/// Embed the carrier into the constructed group as the stabilizer of
/// `e_2, ..., e_n`: `x -> (x, e_2, ..., e_n)`.
pub fn embed_stabilizer<S: Scalar>(inst: &dyn Pseudofield<S>, x: &Element<S>) -> Tuple<S> {
    let mut entries = Vec::with_capacity(inst.degree());
    entries.push(x.clone());
    for i in 2..=inst.degree() {
        entries.push(inst.unit(i));
    }
    Tuple::new(entries)
}
