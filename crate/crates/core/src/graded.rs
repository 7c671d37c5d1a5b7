//! ℤ₂-graded spaces, monomials of the reduced symmetric coalgebra, Koszul
//! signs and unshuffles.
//!
//! Generators are numbered from 0 with the odd generators first, so on the
//! 1|2 space `w1, w2` are odd and `w3` is even. A monomial `w_I` is always
//! represented by its canonical word: every copy of generator 0, then every
//! copy of generator 1, and so on. All signs are relative to that word.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Add;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u32) -> Parity {
        if bit.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn flip(self) -> Parity {
        Parity::from_bit(self.bit() + 1)
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^(self·other)`.
    pub fn sign(self, other: Parity) -> i8 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

impl Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Dimension pair written `even|odd`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct GradedDim {
    pub even: usize,
    pub odd: usize,
}

impl GradedDim {
    pub const ZERO: GradedDim = GradedDim { even: 0, odd: 0 };

    pub fn new(even: usize, odd: usize) -> GradedDim {
        GradedDim { even, odd }
    }

    pub fn get(&self, parity: Parity) -> usize {
        match parity {
            Parity::Even => self.even,
            Parity::Odd => self.odd,
        }
    }

    pub fn set(&mut self, parity: Parity, value: usize) {
        match parity {
            Parity::Even => self.even = value,
            Parity::Odd => self.odd = value,
        }
    }

    /// Swaps the even and odd parts.
    pub fn flipped(self) -> GradedDim {
        GradedDim { even: self.odd, odd: self.even }
    }

    pub fn total(&self) -> usize {
        self.even + self.odd
    }

    pub fn is_zero(&self) -> bool {
        self.total() == 0
    }

    /// Componentwise difference, `None` on underflow.
    pub fn checked_sub(self, other: GradedDim) -> Option<GradedDim> {
        Some(GradedDim {
            even: self.even.checked_sub(other.even)?,
            odd: self.odd.checked_sub(other.odd)?,
        })
    }
}

impl Add for GradedDim {
    type Output = GradedDim;

    fn add(self, rhs: GradedDim) -> GradedDim {
        GradedDim { even: self.even + rhs.even, odd: self.odd + rhs.odd }
    }
}

impl fmt::Display for GradedDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.even, self.odd)
    }
}

/// A ℤ₂-graded space with `odd_dim` odd generators followed by `even_dim`
/// even ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GradedSpace {
    even_dim: usize,
    odd_dim: usize,
}

impl GradedSpace {
    pub fn new(even_dim: usize, odd_dim: usize) -> Result<GradedSpace> {
        if even_dim + odd_dim == 0 {
            return Err(Error::EmptySpace);
        }
        Ok(GradedSpace { even_dim, odd_dim })
    }

    /// One even and two odd generators: `w1, w2` odd, `w3` even.
    pub const fn one_two() -> GradedSpace {
        GradedSpace { even_dim: 1, odd_dim: 2 }
    }

    pub fn even_dim(&self) -> usize {
        self.even_dim
    }

    pub fn odd_dim(&self) -> usize {
        self.odd_dim
    }

    pub fn dim(&self) -> usize {
        self.even_dim + self.odd_dim
    }

    pub fn graded_dim(&self) -> GradedDim {
        GradedDim::new(self.even_dim, self.odd_dim)
    }

    pub fn is_one_two(&self) -> bool {
        *self == GradedSpace::one_two()
    }

    pub fn parity_of(&self, generator: usize) -> Parity {
        if generator < self.odd_dim {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(&self, generator: usize) -> bool {
        generator < self.odd_dim
    }

    pub fn generators(&self) -> core::ops::Range<usize> {
        0..self.dim()
    }

    pub fn check_generator(&self, generator: usize) -> Result<()> {
        if generator < self.dim() {
            Ok(())
        } else {
            Err(Error::Generator(generator))
        }
    }
}

/// Exponent vector of a monomial `w_I` of `S(W)`.
///
/// Ordering is reverse lexicographic on the exponents, so that on the 1|2
/// space in degree 3 the order is `(1,1,1), (1,0,2), (0,1,2), (0,0,3)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    exponents: Vec<u32>,
}

impl MultiIndex {
    pub fn new(space: &GradedSpace, exponents: Vec<u32>) -> Result<MultiIndex> {
        let index = MultiIndex::with_empty(space, exponents)?;
        if index.weight() == 0 {
            return Err(Error::ZeroWeight);
        }
        Ok(index)
    }

    /// Like [`MultiIndex::new`] but allows the empty monomial, which shows up
    /// as the complement of a full split.
    pub(crate) fn with_empty(space: &GradedSpace, exponents: Vec<u32>) -> Result<MultiIndex> {
        if exponents.len() != space.dim() {
            return Err(Error::IndexLength { expected: space.dim(), got: exponents.len() });
        }
        for (generator, &exponent) in exponents.iter().enumerate() {
            if space.is_odd(generator) && exponent > 1 {
                return Err(Error::OddExponent { generator: generator + 1, exponent });
            }
        }
        Ok(MultiIndex { exponents })
    }

    pub(crate) fn from_raw(exponents: Vec<u32>) -> MultiIndex {
        MultiIndex { exponents }
    }

    /// The monomial consisting of the single generator `w_g`.
    pub fn generator(space: &GradedSpace, generator: usize) -> MultiIndex {
        let mut exponents = alloc::vec![0; space.dim()];
        exponents[generator] = 1;
        MultiIndex { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn weight(&self) -> usize {
        self.exponents.iter().map(|&e| e as usize).sum()
    }

    pub fn parity(&self, space: &GradedSpace) -> Parity {
        let odd: u32 = self.exponents.iter().take(space.odd_dim()).sum();
        Parity::from_bit(odd)
    }

    /// `I! = i_1! i_2! ⋯`.
    pub fn factorial(&self) -> num_bigint::BigInt {
        self.exponents.iter().map(|&e| crate::rational::factorial(e)).product()
    }

    /// Canonical word representative, generator indices in increasing order.
    pub fn word(&self) -> Vec<usize> {
        let mut letters = Vec::with_capacity(self.weight());
        for (g, &e) in self.exponents.iter().enumerate() {
            letters.extend(core::iter::repeat_n(g, e as usize));
        }
        letters
    }

    pub(crate) fn minus(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex::from_raw(
            self.exponents.iter().zip(&other.exponents).map(|(a, b)| a - b).collect(),
        )
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        other.exponents.cmp(&self.exponents)
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.exponents.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// An ordered product of generators together with a sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedWord {
    pub letters: Vec<usize>,
    pub sign: i8,
}

impl SignedWord {
    pub fn new(letters: Vec<usize>) -> SignedWord {
        SignedWord { letters, sign: 1 }
    }

    /// Sorts the letters into canonical order by adjacent transpositions,
    /// flipping the sign on every swap of two odd letters. Returns `None`
    /// when an odd generator occurs twice, since then the product vanishes.
    pub fn canonicalize(&self, space: &GradedSpace) -> Option<(i8, MultiIndex)> {
        let mut letters = self.letters.clone();
        let mut sign = self.sign;
        for end in (1..letters.len()).rev() {
            for i in 0..end {
                if letters[i] > letters[i + 1] {
                    if space.is_odd(letters[i]) && space.is_odd(letters[i + 1]) {
                        sign = -sign;
                    }
                    letters.swap(i, i + 1);
                }
            }
        }
        let mut exponents = alloc::vec![0u32; space.dim()];
        for &l in &letters {
            exponents[l] += 1;
        }
        for g in 0..space.odd_dim() {
            if exponents[g] > 1 {
                return None;
            }
        }
        Some((sign, MultiIndex::from_raw(exponents)))
    }
}

/// All monomials of the given weight, in [`MultiIndex`] order.
pub fn symmetric_basis(space: &GradedSpace, degree: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut current = alloc::vec![0u32; space.dim()];
    fill_basis(space, 0, degree, &mut current, &mut out);
    out.sort();
    out
}

fn fill_basis(
    space: &GradedSpace,
    generator: usize,
    remaining: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<MultiIndex>,
) {
    if generator == space.dim() {
        if remaining == 0 {
            out.push(MultiIndex::from_raw(current.clone()));
        }
        return;
    }
    let max = if space.is_odd(generator) { remaining.min(1) } else { remaining };
    for e in 0..=max {
        current[generator] = e as u32;
        fill_basis(space, generator + 1, remaining - e, current, out);
    }
    current[generator] = 0;
}

/// Graded dimension of `S^degree(W)`.
pub fn symmetric_dim(space: &GradedSpace, degree: usize) -> GradedDim {
    let mut dim = GradedDim::ZERO;
    for index in symmetric_basis(space, degree) {
        let p = index.parity(space);
        dim.set(p, dim.get(p) + 1);
    }
    dim
}

/// The sign `ε(σ)` with `w_σ(0) ⋯ w_σ(n-1) = ε(σ) w_0 ⋯ w_(n-1)`, where
/// `word[i]` is the generator at position `i` and `permutation[i] = σ(i)`.
pub fn koszul_sign(space: &GradedSpace, word: &[usize], permutation: &[usize]) -> Result<i8> {
    if word.len() != permutation.len() {
        return Err(Error::SizeMismatch { word: word.len(), perm: permutation.len() });
    }
    let n = word.len();
    let mut seen = alloc::vec![false; n];
    for &p in permutation {
        if p >= n || seen[p] {
            return Err(Error::NotAPermutation(n));
        }
        seen[p] = true;
    }
    for &g in word {
        space.check_generator(g)?;
    }
    let mut positions = permutation.to_vec();
    let mut sign = 1i8;
    for end in (1..n).rev() {
        for i in 0..end {
            if positions[i] > positions[i + 1] {
                if space.is_odd(word[positions[i]]) && space.is_odd(word[positions[i + 1]]) {
                    sign = -sign;
                }
                positions.swap(i, i + 1);
            }
        }
    }
    Ok(sign)
}

/// Unshuffles of type `(k, l)`: each pair holds the increasing first block and
/// the increasing second block of positions `0..k+l`.
pub fn unshuffles(k: usize, l: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = k + l;
    let mut out = Vec::new();
    let mut first = Vec::with_capacity(k);
    choose(n, k, 0, &mut first, &mut |chosen| {
        let second = (0..n).filter(|p| !chosen.contains(p)).collect();
        out.push((chosen.to_vec(), second));
    });
    out
}

fn choose(n: usize, k: usize, start: usize, chosen: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if chosen.len() == k {
        f(chosen);
        return;
    }
    for p in start..n {
        if n - p < k - chosen.len() {
            break;
        }
        chosen.push(p);
        choose(n, k, p + 1, chosen, f);
        chosen.pop();
    }
}

/// Product `w_a · w_b` in `S(W)` as `(sign, w_(a+b))`, or `None` if an odd
/// generator appears in both.
pub fn multiply_monomials(
    space: &GradedSpace,
    a: &MultiIndex,
    b: &MultiIndex,
) -> Option<(i8, MultiIndex)> {
    let mut inversions = 0u32;
    for y in 0..space.odd_dim() {
        if b.exponents[y] == 0 {
            continue;
        }
        if a.exponents[y] != 0 {
            return None;
        }
        inversions += a.exponents[y + 1..space.odd_dim()].iter().sum::<u32>();
    }
    let sum = a.exponents.iter().zip(&b.exponents).map(|(x, y)| x + y).collect();
    Some((if inversions.is_multiple_of(2) { 1 } else { -1 }, MultiIndex::from_raw(sum)))
}

/// Sub-monomials `K ≤ J` of the given weight, each with `Π binom(j_g, k_g)`,
/// the number of position subsets of the canonical word of `J` that carry
/// exactly the letters of `K`.
pub(crate) fn sub_monomials(index: &MultiIndex, weight: usize) -> Vec<(MultiIndex, num_bigint::BigInt)> {
    let mut out = Vec::new();
    let mut current = alloc::vec![0u32; index.exponents.len()];
    sub_fill(index, 0, weight, &mut current, &mut out);
    out
}

fn sub_fill(
    index: &MultiIndex,
    g: usize,
    remaining: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<(MultiIndex, num_bigint::BigInt)>,
) {
    if g == index.exponents.len() {
        if remaining == 0 {
            let mult = current
                .iter()
                .zip(&index.exponents)
                .map(|(&k, &j)| crate::rational::binomial(j, k))
                .product();
            out.push((MultiIndex::from_raw(current.clone()), mult));
        }
        return;
    }
    let max = (index.exponents[g] as usize).min(remaining);
    for e in 0..=max {
        current[g] = e as u32;
        sub_fill(index, g + 1, remaining - e, current, out);
    }
    current[g] = 0;
}
