//! Postfix word calculus: sequences of unary atoms applied left to right,
//! and the recursive tuple words through which n-tuples act on the carrier.
//!
//! A tuple word for `(y_1, ..., y_m)` is built by the recursion
//! `[y_1, ..., y_m] = [phi_m(y_1 y_m^-1), ..., phi_m(y_{m-1} y_m^-1)] phi_m [y_m]`
//! with base case `[y_1]`. The recursion alone is not total: it needs
//! `y_m` invertible at every level. Two additional defining cases keep the
//! word usable on the tuples the constructions actually produce:
//!
//!   * unit reduction: `[y_1, ..., y_{m-1}, e_m] = [y_1, ..., y_{m-1}]`;
//!   * swap conjugation: `[ys] = phi_i [ys with entries 1 and i swapped]`,
//!     tried for each `i` when the direct recursion is undefined.
//!
//! Both rewrites are identities of the acting maps, so every constructed
//! word for the same tuple acts identically wherever defined (this is
//! checked by the verification suites, not assumed).

use crate::algebra::{Element, Partial, Pseudofield};
use crate::scalar::Scalar;

/// One unary step: right multiplication, an involution, the group inverse,
/// or the derived automorphism `sigma_ij`.
#[derive(Clone, Debug, PartialEq)]
pub enum Atom<S> {
    RightMul(Element<S>),
    Phi(usize),
    Inv,
    Sigma(usize, usize),
}

/// An ordered sequence of atoms; the empty word is the identity map.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Word<S> {
    atoms: Vec<Atom<S>>,
}

impl<S: Scalar> Word<S> {
    pub fn new(atoms: Vec<Atom<S>>) -> Self {
        Word { atoms }
    }

    pub fn identity() -> Self {
        Word { atoms: Vec::new() }
    }

    pub fn atoms(&self) -> &[Atom<S>] {
        &self.atoms
    }

    pub fn push(&mut self, atom: Atom<S>) {
        self.atoms.push(atom);
    }

    pub fn concat(mut self, mut tail: Word<S>) -> Word<S> {
        self.atoms.append(&mut tail.atoms);
        self
    }
}

/// Fold the atoms of `w` over `x`, left to right.
pub fn eval_word<S: Scalar>(
    inst: &dyn Pseudofield<S>,
    x: &Element<S>,
    w: &Word<S>,
) -> Partial<Element<S>> {
    let mut acc = x.clone();
    for atom in &w.atoms {
        acc = match atom {
            Atom::RightMul(y) => inst.mul(&acc, y)?,
            Atom::Phi(i) => inst.phi(*i, &acc)?,
            Atom::Inv => inst.inv(&acc)?,
            Atom::Sigma(i, j) => crate::algebra::sigma(inst, *i, *j, &acc)?,
        };
    }
    Ok(acc)
}

/// Build the word through which the tuple `ys` acts on the carrier.
///
/// `ys` may be shorter than the instance degree; a length-m tuple uses
/// `phi_2..phi_m` only, which is what the recursive constructions need.
pub fn tuple_word<S: Scalar>(
    inst: &dyn Pseudofield<S>,
    ys: &[Element<S>],
) -> Partial<Word<S>> {
    assert!(!ys.is_empty(), "tuple word needs at least one element");
    assert!(
        ys.len() <= inst.degree(),
        "tuple length {} exceeds degree {}",
        ys.len(),
        inst.degree()
    );
    tuple_word_impl(inst, ys, true)
}

fn tuple_word_impl<S: Scalar>(
    inst: &dyn Pseudofield<S>,
    ys: &[Element<S>],
    allow_swap: bool,
) -> Partial<Word<S>> {
    let m = ys.len();
    if m == 1 {
        return Ok(Word::new(vec![Atom::RightMul(ys[0].clone())]));
    }

    // Unit reduction: a trailing e_m contributes nothing.
    if ys[m - 1].policy_eq(&inst.unit(m)) {
        return tuple_word_impl(inst, &ys[..m - 1], true);
    }

    // Direct recursion through the stage elements phi_m(y_j y_m^-1).
    let direct = (|| -> Partial<Word<S>> {
        let last_inv = inst.inv(&ys[m - 1])?;
        let mut stage = Vec::with_capacity(m - 1);
        for y in &ys[..m - 1] {
            stage.push(inst.phi(m, &inst.mul(y, &last_inv)?)?);
        }
        let mut word = tuple_word_impl(inst, &stage, true)?;
        word.push(Atom::Phi(m));
        word.push(Atom::RightMul(ys[m - 1].clone()));
        Ok(word)
    })();

    match direct {
        Ok(word) => Ok(word),
        Err(reason) if allow_swap => {
            // [ys] = phi_i [ys with entries 1 and i swapped]; one swap layer
            // per level keeps the search finite.
            for i in 2..=m {
                let mut swapped = ys.to_vec();
                swapped.swap(0, i - 1);
                if let Ok(rest) = tuple_word_impl(inst, &swapped, false) {
                    let mut word = Word::new(vec![Atom::Phi(i)]);
                    word = word.concat(rest);
                    return Ok(word);
                }
            }
            Err(reason)
        }
        Err(reason) => Err(reason),
    }
}

/// Swap entries 1 and i of a tuple and apply `phi_i` to every entry.
fn conjugated_tuple<S: Scalar>(
    inst: &dyn Pseudofield<S>,
    ys: &[Element<S>],
    i: usize,
) -> Partial<Vec<Element<S>>> {
    let mut swapped = ys.to_vec();
    swapped.swap(0, i - 1);
    swapped.iter().map(|y| inst.phi(i, y)).collect()
}

/// Evaluate the action `x . [ys]`.
///
/// Tries the tuple word itself first, then the conjugated branches
/// `x . phi_i [phi_i-image of the swapped tuple] phi_i` in ascending `i`.
/// All defined branches agree on honest instances; branch agreement is one
/// of the verification checks. Returns the first defined value, or the
/// direct branch's reason when every branch fails.
pub fn act<S: Scalar>(
    inst: &dyn Pseudofield<S>,
    x: &Element<S>,
    ys: &[Element<S>],
) -> Partial<Element<S>> {
    act_cached(inst, x, ys, &tuple_word(inst, ys))
}

/// `act` against a prebuilt direct word, so callers applying the same tuple
/// to many points construct it once.
pub(crate) fn act_cached<S: Scalar>(
    inst: &dyn Pseudofield<S>,
    x: &Element<S>,
    ys: &[Element<S>],
    direct_word: &Partial<Word<S>>,
) -> Partial<Element<S>> {
    let direct = match direct_word {
        Ok(w) => eval_word(inst, x, w),
        Err(reason) => Err(*reason),
    };
    if direct.is_ok() {
        return direct;
    }
    for i in 2..=ys.len() {
        if let Ok(v) = act_branch_conjugated(inst, x, ys, i) {
            return Ok(v);
        }
    }
    direct
}

/// The plain branch: evaluate the tuple word at `x`.
pub fn act_branch_direct<S: Scalar>(
    inst: &dyn Pseudofield<S>,
    x: &Element<S>,
    ys: &[Element<S>],
) -> Partial<Element<S>> {
    let word = tuple_word(inst, ys)?;
    eval_word(inst, x, &word)
}

/// The conjugated branch for index `i`.
pub fn act_branch_conjugated<S: Scalar>(
    inst: &dyn Pseudofield<S>,
    x: &Element<S>,
    ys: &[Element<S>],
    i: usize,
) -> Partial<Element<S>> {
    assert!((2..=ys.len()).contains(&i));
    let xi = inst.phi(i, x)?;
    let conj = conjugated_tuple(inst, ys, i)?;
    let word = tuple_word(inst, &conj)?;
    let v = eval_word(inst, &xi, &word)?;
    inst.phi(i, &v)
}

/// Every defined branch value of `act` at `(x, ys)`, for consistency checks.
pub fn act_branches<S: Scalar>(
    inst: &dyn Pseudofield<S>,
    x: &Element<S>,
    ys: &[Element<S>],
) -> Vec<Element<S>> {
    let mut out = Vec::new();
    if let Ok(v) = act_branch_direct(inst, x, ys) {
        out.push(v);
    }
    for i in 2..=ys.len() {
        if let Ok(v) = act_branch_conjugated(inst, x, ys, i) {
            out.push(v);
        }
    }
    out
}
