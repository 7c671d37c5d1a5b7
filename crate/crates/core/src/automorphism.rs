//! Coalgebra automorphisms: linear automorphisms of `W` extended to `S(W)`,
//! truncated exponentials of even coderivations, and their action
//! `d ↦ π ∘ G⁻¹ ∘ d̃ ∘ G` on structures.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::calculus::{cochain_from_values, evaluate_element, lift_element, SymElement};
use crate::cochain::{Cochain, LInfinityStructure};
use crate::error::{Error, Result};
use crate::graded::{GradedSpace, MultiIndex, Parity};
use crate::rational::Rational;

/// An even invertible map `g: W → W`, stored as a square matrix whose column
/// `j` is `g(w_j)`. For the 1|2 space, `(l r; p s)` is the odd block and `q`
/// the even scalar: `g(w₁) = w₁l + w₂p`, `g(w₂) = w₁r + w₂s`, `g(w₃) = w₃q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearAutomorphism {
    space: GradedSpace,
    matrix: Vec<Vec<Rational>>,
}

impl LinearAutomorphism {
    pub fn new(space: GradedSpace, matrix: Vec<Vec<Rational>>) -> Result<LinearAutomorphism> {
        let n = space.dim();
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::AutomorphismShape);
        }
        for i in 0..n {
            for j in 0..n {
                if space.parity_of(i) != space.parity_of(j) && !matrix[i][j].is_zero() {
                    return Err(Error::AutomorphismShape);
                }
            }
        }
        if determinant(&matrix).is_zero() {
            return Err(Error::Singular);
        }
        Ok(LinearAutomorphism { space, matrix })
    }

    pub fn new_1_2(l: Rational, r: Rational, p: Rational, s: Rational, q: Rational) -> Result<LinearAutomorphism> {
        let z = Rational::zero;
        Self::new(
            GradedSpace::one_two(),
            alloc::vec![alloc::vec![l, r, z()], alloc::vec![p, s, z()], alloc::vec![z(), z(), q]],
        )
    }

    pub fn identity(space: GradedSpace) -> LinearAutomorphism {
        let n = space.dim();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        LinearAutomorphism { space, matrix }
    }

    /// Diagonal map `w_g ↦ w_g·scales[g]`.
    pub fn diagonal(space: GradedSpace, scales: &[Rational]) -> Result<LinearAutomorphism> {
        let n = space.dim();
        if scales.len() != n {
            return Err(Error::AutomorphismShape);
        }
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { scales[i].clone() } else { Rational::zero() }).collect())
            .collect();
        Self::new(space, matrix)
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn entry(&self, row: usize, col: usize) -> &Rational {
        &self.matrix[row][col]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.space)
    }

    /// `(self ∘ other)(w) = self(other(w))`.
    pub fn compose(&self, other: &LinearAutomorphism) -> Result<LinearAutomorphism> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        let n = self.space.dim();
        let mut m = alloc::vec![alloc::vec![Rational::zero(); n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                for k in 0..n {
                    *slot += &self.matrix[i][k] * &other.matrix[k][j];
                }
            }
        }
        Ok(LinearAutomorphism { space: self.space, matrix: m })
    }

    pub fn inverse(&self) -> LinearAutomorphism {
        let n = self.space.dim();
        let mut a: Vec<Vec<Rational>> = self.matrix.clone();
        let mut inv = Self::identity(self.space).matrix;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).expect("invertible by construction");
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let f = a[col][col].recip();
            for j in 0..n {
                a[col][j] *= &f;
                inv[col][j] *= &f;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in 0..n {
                        let (x, y) = (&a[col][j] * &f, &inv[col][j] * &f);
                        a[r][j] -= x;
                        inv[r][j] -= y;
                    }
                }
            }
        }
        LinearAutomorphism { space: self.space, matrix: inv }
    }

    pub fn apply_vector(&self, v: &[Rational]) -> Vec<Rational> {
        let n = self.space.dim();
        (0..n).map(|i| (0..n).fold(Rational::zero(), |acc, k| acc + &self.matrix[i][k] * &v[k])).collect()
    }

    /// `g̃(w_J) = g(w_{j₁})⋯g(w_{jₙ})` over the canonical word of `J`.
    pub fn lift_monomial(&self, monomial: &MultiIndex) -> SymElement {
        let n = self.space.dim();
        let mut acc: Option<SymElement> = None;
        for letter in monomial.word() {
            let column: Vec<Rational> = (0..n).map(|i| self.matrix[i][letter].clone()).collect();
            let image = SymElement::from_vector(&self.space, &column);
            acc = Some(match acc {
                None => image,
                Some(a) => a.multiply(&image, &self.space),
            });
        }
        acc.unwrap_or_default()
    }

    pub fn lift(&self, x: &SymElement) -> SymElement {
        let mut out = SymElement::zero();
        for (m, q) in x.terms() {
            out.add_scaled(&self.lift_monomial(m), q);
        }
        out
    }
}

fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        det *= &a[col][col];
        for r in col + 1..n {
            let f = &a[r][col] / &a[col][col];
            for j in col..n {
                let x = &a[col][j] * &f;
                a[r][j] -= x;
            }
        }
    }
    det
}

/// `d̃(x)` for the coderivation determined by all components of `d`.
pub fn lift_structure(d: &LInfinityStructure, x: &SymElement) -> SymElement {
    let mut out = SymElement::zero();
    for (_, c) in d.components() {
        out.add_scaled(&lift_element(c, x), &Rational::one());
    }
    out
}

fn conjugate_with(
    d: &LInfinityStructure,
    forward: impl Fn(&SymElement) -> SymElement,
    backward: impl Fn(&SymElement) -> SymElement,
) -> Result<LInfinityStructure> {
    let space = *d.space();
    let mut out = LInfinityStructure::new(space, d.truncation());
    let Some(lead) = d.leading_degree() else { return Ok(out) };
    for degree in lead..=d.truncation() {
        let c = cochain_from_values(space, degree, |j| {
            let y = lift_structure(d, &forward(&SymElement::monomial(j.clone())));
            backward(&y).to_vector(&space)
        });
        if !c.is_zero() {
            out.set_component(degree, c);
        }
    }
    Ok(out)
}

/// `d' = g⁻¹ ∘ d ∘ g̃`, component by component.
pub fn conjugate_linear(g: &LinearAutomorphism, d: &LInfinityStructure) -> Result<LInfinityStructure> {
    if g.space() != d.space() {
        return Err(Error::SpaceMismatch);
    }
    let gi = g.inverse();
    let space = *d.space();
    let mut out = LInfinityStructure::new(space, d.truncation());
    for (degree, c) in d.components() {
        let image = cochain_from_values(space, degree, |j| {
            gi.apply_vector(&evaluate_element(c, &g.lift_monomial(j)))
        });
        if !image.is_zero() {
            out.set_component(degree, image);
        }
    }
    Ok(out)
}

/// Conjugation of a single homogeneous cochain by a linear automorphism.
pub fn conjugate_cochain(g: &LinearAutomorphism, c: &Cochain) -> Cochain {
    let gi = g.inverse();
    match c.degree() {
        None => c.clone(),
        Some(degree) => cochain_from_values(*c.space(), degree, |j| {
            gi.apply_vector(&evaluate_element(c, &g.lift_monomial(j)))
        }),
    }
}

/// The coalgebra automorphism `exp(η̃) = Σ η̃ᵏ/k!` for an even `η` of degree
/// at least 2. Each application of `η̃` lowers weight, so the series is
/// finite on every element of `S(W)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpAutomorphism {
    eta: Cochain,
    truncation: usize,
}

pub fn exp_automorphism(eta: &Cochain, truncation: usize) -> Result<ExpAutomorphism> {
    match (eta.degree(), eta.parity()) {
        (None, _) => {}
        (_, Some(Parity::Odd)) => return Err(Error::WrongParity { expected: Parity::Even }),
        (Some(1), _) => {
            return Err(Error::Parameter(
                "degree-1 exponentials are represented by linear automorphisms".into(),
            ))
        }
        _ => {}
    }
    Ok(ExpAutomorphism { eta: eta.clone(), truncation })
}

impl ExpAutomorphism {
    pub fn generator(&self) -> &Cochain {
        &self.eta
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn is_identity(&self) -> bool {
        self.eta.is_zero()
    }

    pub fn inverse(&self) -> ExpAutomorphism {
        ExpAutomorphism { eta: self.eta.neg(), truncation: self.truncation }
    }

    pub fn apply(&self, x: &SymElement) -> SymElement {
        let mut out = x.clone();
        let mut term = x.clone();
        let mut k = 1u32;
        loop {
            term = lift_element(&self.eta, &term);
            if term.is_zero() {
                return out;
            }
            term = scale_sym(&term, &Rational::new(1.into(), k.into()));
            out.add_scaled(&term, &Rational::one());
            k += 1;
        }
    }

    /// `π ∘ exp(−η̃) ∘ d̃ ∘ exp(η̃)` in every degree up to the truncation.
    pub fn conjugate(&self, d: &LInfinityStructure) -> Result<LInfinityStructure> {
        if self.eta.space() != d.space() {
            return Err(Error::SpaceMismatch);
        }
        let inv = self.inverse();
        let d = d.truncated(self.truncation);
        conjugate_with(&d, |x| self.apply(x), |y| inv.apply(y))
    }
}

fn scale_sym(x: &SymElement, f: &Rational) -> SymElement {
    let mut out = SymElement::zero();
    out.add_scaled(x, f);
    out
}

/// A finite composite of linear automorphisms and exponentials, applied
/// right to left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Linear(LinearAutomorphism),
    Exp(ExpAutomorphism),
}

impl Factor {
    pub fn apply(&self, x: &SymElement) -> SymElement {
        match self {
            Factor::Linear(g) => g.lift(x),
            Factor::Exp(e) => e.apply(x),
        }
    }

    pub fn inverse(&self) -> Factor {
        match self {
            Factor::Linear(g) => Factor::Linear(g.inverse()),
            Factor::Exp(e) => Factor::Exp(e.inverse()),
        }
    }

    pub fn conjugate(&self, d: &LInfinityStructure) -> Result<LInfinityStructure> {
        match self {
            Factor::Linear(g) => conjugate_linear(g, d),
            Factor::Exp(e) => e.conjugate(d),
        }
    }
}
