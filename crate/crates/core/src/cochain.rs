//! Cochains `φ^I_j ∈ L_n = Hom(S^n(W), W)` and L∞ structures.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graded::{symmetric_basis, GradedDim, GradedSpace, MultiIndex, Parity};
use crate::rational::Rational;

/// The basis cochain `φ^I_j`, sending `w_I` to `I!·w_j` and every other
/// monomial to zero. `target` is the 0-based generator index `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisCochain {
    pub index: MultiIndex,
    pub target: usize,
}

impl BasisCochain {
    pub fn new(space: &GradedSpace, exponents: Vec<u32>, target: usize) -> Result<BasisCochain> {
        space.check_generator(target)?;
        Ok(BasisCochain { index: MultiIndex::new(space, exponents)?, target })
    }

    pub fn degree(&self) -> usize {
        self.index.weight()
    }

    pub fn parity(&self, space: &GradedSpace) -> Parity {
        self.index.parity(space) + space.parity_of(self.target)
    }
}

impl Ord for BasisCochain {
    fn cmp(&self, other: &Self) -> Ordering {
        self.index.cmp(&other.index).then(self.target.cmp(&other.target))
    }
}

impl PartialOrd for BasisCochain {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Basis of `L_degree` of the given parity, in [`BasisCochain`] order.
pub fn cochain_basis(space: &GradedSpace, degree: usize, parity: Parity) -> Vec<BasisCochain> {
    let mut out = Vec::new();
    for index in symmetric_basis(space, degree) {
        for target in space.generators() {
            let b = BasisCochain { index: index.clone(), target };
            if b.parity(space) == parity {
                out.push(b);
            }
        }
    }
    out
}

/// Graded dimension of `L_degree`.
pub fn cochain_dim(space: &GradedSpace, degree: usize) -> GradedDim {
    GradedDim::new(
        cochain_basis(space, degree, Parity::Even).len(),
        cochain_basis(space, degree, Parity::Odd).len(),
    )
}

/// A homogeneous rational combination of basis cochains.
///
/// Degree and parity are those of the stored terms; the zero cochain has
/// neither and is compatible with everything.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    space: GradedSpace,
    terms: BTreeMap<BasisCochain, Rational>,
}

impl Cochain {
    pub fn zero(space: GradedSpace) -> Cochain {
        Cochain { space, terms: BTreeMap::new() }
    }

    pub fn basis(space: GradedSpace, basis: BasisCochain) -> Cochain {
        Cochain::term(space, basis, Rational::one())
    }

    pub fn term(space: GradedSpace, basis: BasisCochain, coeff: Rational) -> Cochain {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(basis, coeff);
        }
        Cochain { space, terms }
    }

    /// Builds a cochain from `(basis, coefficient)` pairs, merging repeats.
    /// Mixed degrees or parities are rejected.
    pub fn from_terms(
        space: GradedSpace,
        terms: impl IntoIterator<Item = (BasisCochain, Rational)>,
    ) -> Result<Cochain> {
        let mut c = Cochain::zero(space);
        for (b, q) in terms {
            c.add_term(b, q)?;
        }
        Ok(c)
    }

    /// Shorthand for tests and tables: `(exponents, 1-based target, coeff)`.
    pub fn from_exponents(space: GradedSpace, terms: &[(&[u32], usize, Rational)]) -> Result<Cochain> {
        let mut c = Cochain::zero(space);
        for (e, j, q) in terms {
            if *j == 0 {
                return Err(Error::Generator(0));
            }
            c.add_term(BasisCochain::new(&space, e.to_vec(), j - 1)?, q.clone())?;
        }
        Ok(c)
    }

    pub fn add_term(&mut self, basis: BasisCochain, coeff: Rational) -> Result<()> {
        if basis.index.exponents().len() != self.space.dim() {
            return Err(Error::SpaceMismatch);
        }
        if let Some(d) = self.degree() {
            if d != basis.degree() {
                return Err(Error::MixedDegree(d, basis.degree()));
            }
        }
        if let Some(p) = self.parity() {
            let q = basis.parity(&self.space);
            if p != q {
                return Err(Error::MixedParity(p, q));
            }
        }
        self.add_term_unchecked(basis, coeff);
        Ok(())
    }

    pub(crate) fn add_term_unchecked(&mut self, basis: BasisCochain, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(basis);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(BasisCochain::degree)
    }

    pub fn parity(&self) -> Option<Parity> {
        self.terms.keys().next().map(|b| b.parity(&self.space))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisCochain, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, basis: &BasisCochain) -> Rational {
        self.terms.get(basis).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn checked_add(&self, other: &Cochain) -> Result<Cochain> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        let mut out = self.clone();
        for (b, q) in &other.terms {
            out.add_term(b.clone(), q.clone())?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Cochain) -> Result<Cochain> {
        self.checked_add(&other.neg())
    }

    pub fn scale(&self, factor: &Rational) -> Cochain {
        if factor.is_zero() {
            return Cochain::zero(self.space);
        }
        Cochain {
            space: self.space,
            terms: self.terms.iter().map(|(b, q)| (b.clone(), q * factor)).collect(),
        }
    }

    pub fn neg(&self) -> Cochain {
        self.scale(&-Rational::one())
    }

    /// Coordinates in the given basis; terms outside it are ignored.
    pub fn coordinates(&self, basis: &[BasisCochain]) -> Vec<Rational> {
        basis.iter().map(|b| self.coeff(b)).collect()
    }

    pub fn from_coordinates(space: GradedSpace, basis: &[BasisCochain], coords: &[Rational]) -> Cochain {
        let mut c = Cochain::zero(space);
        for (b, q) in basis.iter().zip(coords) {
            c.add_term_unchecked(b.clone(), q.clone());
        }
        c
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::format_cochain(self))
    }
}

/// `d = d_N + d_(N+1) + ⋯`, kept up to `truncation`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LInfinityStructure {
    space: GradedSpace,
    components: BTreeMap<usize, Cochain>,
    truncation: usize,
}

impl LInfinityStructure {
    pub fn new(space: GradedSpace, truncation: usize) -> LInfinityStructure {
        LInfinityStructure { space, components: BTreeMap::new(), truncation }
    }

    /// Collects the given odd cochains (summing those of equal degree).
    pub fn from_cochains(
        space: GradedSpace,
        cochains: impl IntoIterator<Item = Cochain>,
        truncation: usize,
    ) -> Result<LInfinityStructure> {
        let mut d = LInfinityStructure::new(space, truncation);
        for c in cochains {
            d.add(&c)?;
        }
        Ok(d)
    }

    /// Adds an odd homogeneous cochain to the component of its degree.
    pub fn add(&mut self, c: &Cochain) -> Result<()> {
        if c.space != self.space {
            return Err(Error::SpaceMismatch);
        }
        let Some(degree) = c.degree() else { return Ok(()) };
        if c.parity() != Some(Parity::Odd) {
            return Err(Error::WrongParity { expected: Parity::Odd });
        }
        if degree > self.truncation {
            return Err(Error::BeyondTruncation { degree, truncation: self.truncation });
        }
        let sum = match self.components.get(&degree) {
            Some(existing) => existing.checked_add(c)?,
            None => c.clone(),
        };
        self.set_component(degree, sum);
        Ok(())
    }

    pub(crate) fn set_component(&mut self, degree: usize, c: Cochain) {
        if c.is_zero() {
            self.components.remove(&degree);
        } else {
            self.components.insert(degree, c);
        }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Same components, new truncation; components above it are dropped.
    pub fn truncated(&self, truncation: usize) -> LInfinityStructure {
        LInfinityStructure {
            space: self.space,
            components: self
                .components
                .iter()
                .filter(|(d, _)| **d <= truncation)
                .map(|(d, c)| (*d, c.clone()))
                .collect(),
            truncation,
        }
    }

    pub fn component(&self, degree: usize) -> Option<&Cochain> {
        self.components.get(&degree)
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &Cochain)> {
        self.components.iter().map(|(d, c)| (*d, c))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// The degree `N` of the leading term `d_N`.
    pub fn leading_degree(&self) -> Option<usize> {
        self.components.keys().next().copied()
    }

    pub fn leading_term(&self) -> Option<&Cochain> {
        self.components.values().next()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.components.keys().next_back().copied()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.components.len() == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use alloc::vec;

    #[test]
    fn dimensions_of_l_n() {
        let s = GradedSpace::one_two();
        assert_eq!(cochain_dim(&s, 1), GradedDim::new(5, 4));
        for n in 2..8 {
            assert_eq!(cochain_dim(&s, n), GradedDim::new(6, 6));
        }
    }

    #[test]
    fn parity_of_basis_cochains() {
        let s = GradedSpace::one_two();
        assert_eq!(BasisCochain::new(&s, vec![1, 0, 0], 2).unwrap().parity(&s), Parity::Odd);
        assert_eq!(BasisCochain::new(&s, vec![1, 1, 0], 0).unwrap().parity(&s), Parity::Odd);
        assert_eq!(BasisCochain::new(&s, vec![0, 0, 2], 2).unwrap().parity(&s), Parity::Even);
    }

    #[test]
    fn mixing_is_rejected() {
        let s = GradedSpace::one_two();
        let odd = Cochain::from_exponents(s, &[(&[1, 0, 0], 3, int(1))]).unwrap();
        let even = Cochain::from_exponents(s, &[(&[1, 0, 0], 1, int(1))]).unwrap();
        let deg2 = Cochain::from_exponents(s, &[(&[1, 0, 1], 3, int(1))]).unwrap();
        assert!(matches!(odd.checked_add(&even), Err(Error::MixedParity(..))));
        assert!(matches!(odd.checked_add(&deg2), Err(Error::MixedDegree(1, 2))));
        assert!(odd.checked_add(&Cochain::zero(s)).is_ok());
    }

    #[test]
    fn zero_coefficients_are_not_stored() {
        let s = GradedSpace::one_two();
        let a = Cochain::from_exponents(s, &[(&[1, 0, 0], 3, int(2))]).unwrap();
        let z = a.checked_sub(&a).unwrap();
        assert!(z.is_zero());
        assert_eq!(z, Cochain::zero(s));
    }

    #[test]
    fn structure_bookkeeping() {
        let s = GradedSpace::one_two();
        let d3 = Cochain::from_exponents(s, &[(&[0, 1, 2], 3, int(1))]).unwrap();
        let d4 = Cochain::from_exponents(s, &[(&[0, 0, 4], 1, int(1))]).unwrap();
        let d = LInfinityStructure::from_cochains(s, [d4.clone(), d3.clone()], 6).unwrap();
        assert_eq!(d.leading_degree(), Some(3));
        assert_eq!(d.leading_term(), Some(&d3));
        assert!(!d.is_homogeneous());
        let even = Cochain::from_exponents(s, &[(&[0, 0, 1], 3, int(1))]).unwrap();
        assert!(LInfinityStructure::from_cochains(s, [even], 6).is_err());
        assert!(matches!(
            LInfinityStructure::from_cochains(s, [d4], 3),
            Err(Error::BeyondTruncation { .. })
        ));
    }
}
