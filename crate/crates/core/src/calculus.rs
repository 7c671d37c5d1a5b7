//! Coderivation calculus: evaluation, the coderivation lift, the graded
//! bracket on `L = Hom(S(W), W)` and the square-zero test.
//!
//! The bracket of `α ∈ L_m` and `β ∈ L_n` is
//! `[α,β] = α∘β̃ − (−1)^(αβ) β∘α̃`, evaluated on the canonical word of every
//! monomial of weight `m+n−1`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::cochain::{BasisCochain, Cochain, LInfinityStructure};
use crate::error::{Error, Result};
use crate::graded::{multiply_monomials, sub_monomials, symmetric_basis, GradedSpace, MultiIndex};
use crate::rational::Rational;

/// A rational combination of monomials of `S(W)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymElement {
    terms: BTreeMap<MultiIndex, Rational>,
}

impl SymElement {
    pub fn zero() -> SymElement {
        SymElement::default()
    }

    pub fn monomial(index: MultiIndex) -> SymElement {
        let mut terms = BTreeMap::new();
        terms.insert(index, Rational::from_integer(1.into()));
        SymElement { terms }
    }

    pub fn add_term(&mut self, index: MultiIndex, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(index).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, q| !q.is_zero());
        }
    }

    pub fn add_scaled(&mut self, other: &SymElement, factor: &Rational) {
        for (i, q) in &other.terms {
            self.add_term(i.clone(), q * factor);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, index: &MultiIndex) -> Rational {
        self.terms.get(index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Product in `S(W)`.
    pub fn multiply(&self, other: &SymElement, space: &GradedSpace) -> SymElement {
        let mut out = SymElement::zero();
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                if let Some((sign, c)) = multiply_monomials(space, a, b) {
                    let mut coeff = p * q;
                    if sign < 0 {
                        coeff = -coeff;
                    }
                    out.add_term(c, coeff);
                }
            }
        }
        out
    }

    /// The element `Σ c_g w_g` of `W ⊂ S(W)`.
    pub fn from_vector(space: &GradedSpace, v: &[Rational]) -> SymElement {
        let mut out = SymElement::zero();
        for (g, q) in v.iter().enumerate() {
            out.add_term(MultiIndex::generator(space, g), q.clone());
        }
        out
    }

    /// Weight-one part as a coordinate vector.
    pub fn to_vector(&self, space: &GradedSpace) -> Vec<Rational> {
        space.generators().map(|g| self.coeff(&MultiIndex::generator(space, g))).collect()
    }
}

/// `φ(w_J)` as a coordinate vector in `W`.
pub fn evaluate(phi: &Cochain, monomial: &MultiIndex) -> Result<Vec<Rational>> {
    let space = phi.space();
    if let Some(d) = phi.degree() {
        if d != monomial.weight() {
            return Err(Error::DegreeMismatch { expected: d, got: monomial.weight() });
        }
    }
    let mut out = alloc::vec![Rational::zero(); space.dim()];
    evaluate_into(phi, monomial, &Rational::from_integer(1.into()), &mut out);
    Ok(out)
}

fn evaluate_into(phi: &Cochain, monomial: &MultiIndex, scale: &Rational, out: &mut [Rational]) {
    let mut factorial = None;
    for (b, q) in phi.terms() {
        if b.index == *monomial {
            let f = factorial.get_or_insert_with(|| Rational::from_integer(monomial.factorial()));
            out[b.target] += q * &*f * scale;
        }
    }
}

/// `φ` applied to every weight-`deg φ` monomial of `x`; other weights are ignored.
pub fn evaluate_element(phi: &Cochain, x: &SymElement) -> Vec<Rational> {
    let space = phi.space();
    let mut out = alloc::vec![Rational::zero(); space.dim()];
    let Some(degree) = phi.degree() else { return out };
    for (m, q) in x.terms() {
        if m.weight() == degree {
            evaluate_into(phi, m, q, &mut out);
        }
    }
    out
}

/// The coderivation `φ̃` applied to `w_J`:
/// `Σ_(σ ∈ Sh(k, n−k)) ε(σ) φ(w_σ(1) ⋯ w_σ(k)) w_σ(k+1) ⋯ w_σ(n)`.
///
/// Unshuffles that pick the same letters of the canonical word carry the same
/// sign, so they are summed once with multiplicity `Π binom(j_g, k_g)`.
/// Returns zero when `weight(J) < deg φ`.
pub fn lift(phi: &Cochain, monomial: &MultiIndex) -> SymElement {
    let space = *phi.space();
    let mut out = SymElement::zero();
    let Some(k) = phi.degree() else { return out };
    if monomial.weight() < k {
        return out;
    }
    for (first, multiplicity) in sub_monomials(monomial, k) {
        let rest = monomial.minus(&first);
        let (sign, _) = multiply_monomials(&space, &first, &rest)
            .expect("sub-monomials of a monomial never share an odd letter");
        let mut scale = Rational::from_integer(multiplicity);
        if sign < 0 {
            scale = -scale;
        }
        let mut value = alloc::vec![Rational::zero(); space.dim()];
        evaluate_into(phi, &first, &scale, &mut value);
        for (g, q) in value.into_iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let letter = MultiIndex::generator(&space, g);
            if let Some((s, product)) = multiply_monomials(&space, &letter, &rest) {
                out.add_term(product, if s < 0 { -q } else { q });
            }
        }
    }
    out
}

/// `φ̃` applied to an arbitrary element of `S(W)`.
pub fn lift_element(phi: &Cochain, x: &SymElement) -> SymElement {
    let mut out = SymElement::zero();
    for (m, q) in x.terms() {
        out.add_scaled(&lift(phi, m), q);
    }
    out
}

/// Reads off the cochain of the given degree whose value on each `w_J` is
/// `values(J)`, using `φ^J_g(w_J) = J!·w_g`.
pub(crate) fn cochain_from_values(
    space: GradedSpace,
    degree: usize,
    mut values: impl FnMut(&MultiIndex) -> Vec<Rational>,
) -> Cochain {
    let mut out = Cochain::zero(space);
    for j in symmetric_basis(&space, degree) {
        let v = values(&j);
        let f = Rational::from_integer(j.factorial());
        for (g, q) in v.into_iter().enumerate() {
            if !q.is_zero() {
                out.add_term_unchecked(BasisCochain { index: j.clone(), target: g }, q / &f);
            }
        }
    }
    out
}

/// The graded bracket `[α, β]`.
pub fn bracket(alpha: &Cochain, beta: &Cochain) -> Result<Cochain> {
    if alpha.space() != beta.space() {
        return Err(Error::SpaceMismatch);
    }
    let space = *alpha.space();
    let (Some(m), Some(n)) = (alpha.degree(), beta.degree()) else {
        return Ok(Cochain::zero(space));
    };
    let pa = alpha.parity().expect("nonzero");
    let pb = beta.parity().expect("nonzero");
    let swap_sign = pa.sign(pb);
    Ok(cochain_from_values(space, m + n - 1, |j| {
        let mut v = evaluate_element(alpha, &lift(beta, j));
        let w = evaluate_element(beta, &lift(alpha, j));
        for (x, y) in v.iter_mut().zip(w) {
            if swap_sign > 0 {
                *x -= y;
            } else {
                *x += y;
            }
        }
        v
    }))
}

/// `[d, d]` component by component, for every degree `≤ up_to`.
pub fn self_bracket(d: &LInfinityStructure, up_to: usize) -> Result<BTreeMap<usize, Cochain>> {
    let mut out: BTreeMap<usize, Cochain> = BTreeMap::new();
    let comps: Vec<(usize, &Cochain)> = d.components().collect();
    for &(a, ca) in &comps {
        for &(b, cb) in &comps {
            if b < a || a + b - 1 > up_to {
                continue;
            }
            let mut br = bracket(ca, cb)?;
            if a != b {
                // [d_a, d_b] = [d_b, d_a] for odd entries
                br = br.scale(&Rational::from_integer(2.into()));
            }
            let slot = out.entry(a + b - 1).or_insert_with(|| Cochain::zero(*d.space()));
            *slot = slot.checked_add(&br)?;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Outcome of [`is_codifferential`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SquareZero {
    Yes,
    /// The lowest nonzero component of `[d,d]`.
    No { degree: usize, witness: Cochain },
}

impl SquareZero {
    pub fn holds(&self) -> bool {
        matches!(self, SquareZero::Yes)
    }
}

/// Checks `[d,d] = 0` in every degree fully determined by the truncation.
///
/// Components of `[d,d]` up to degree `truncation + N − 1` only involve
/// components of `d` up to the truncation, so all of them are checked.
pub fn is_codifferential(d: &LInfinityStructure) -> Result<SquareZero> {
    let Some(lead) = d.leading_degree() else { return Ok(SquareZero::Yes) };
    let limit = d.truncation() + lead - 1;
    let sq = self_bracket(d, limit)?;
    Ok(match sq.into_iter().next() {
        None => SquareZero::Yes,
        Some((degree, witness)) => SquareZero::No { degree, witness },
    })
}
