//! Codifferentials of a single degree on the 1|2 space: the quadratic
//! variety they form, canonical forms with explicit witnesses, linear
//! equivalence and the jump relation between families.
//!
//! An odd element of `L_{m+2}` is written
//! `ψ^{1,0,m+1}_3a₁ + ψ^{0,1,m+1}_3a₂ + ψ^{0,0,m+2}_1a₃ + ψ^{0,0,m+2}_2a₄ + ψ^{1,1,m}_1a₅ + ψ^{1,1,m}_2a₆`;
//! in degree 1 only `a₁…a₄` exist.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::automorphism::LinearAutomorphism;
use crate::calculus::{bracket, is_codifferential, SquareZero};
use crate::cochain::{BasisCochain, Cochain, LInfinityStructure};
use crate::cohomology::{cohomology, DegreeBlockMatrix};
use crate::error::{Error, Result};
use crate::families;
use crate::graded::{GradedSpace, Parity};
use crate::rational::{int, unit_combination, Rational};

fn space() -> GradedSpace {
    GradedSpace::one_two()
}

/// Coordinates `a₁…a₆` (or `a₁…a₄` in degree 1) of an odd element of `L_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeNCoefficients {
    degree: usize,
    a: Vec<Rational>,
}

fn odd_basis(degree: usize) -> Vec<BasisCochain> {
    let s = space();
    let b = |e: [u32; 3], t: usize| BasisCochain::new(&s, e.to_vec(), t).expect("valid");
    if degree == 1 {
        return alloc::vec![b([1, 0, 0], 2), b([0, 1, 0], 2), b([0, 0, 1], 0), b([0, 0, 1], 1)];
    }
    let k = degree as u32;
    alloc::vec![
        b([1, 0, k - 1], 2),
        b([0, 1, k - 1], 2),
        b([0, 0, k], 0),
        b([0, 0, k], 1),
        b([1, 1, k - 2], 0),
        b([1, 1, k - 2], 1),
    ]
}

impl DegreeNCoefficients {
    pub fn new(degree: usize, a: Vec<Rational>) -> Result<DegreeNCoefficients> {
        let expected = match degree {
            0 => return Err(Error::Parameter("degree must be positive".into())),
            1 => 4,
            _ => 6,
        };
        if a.len() != expected {
            return Err(Error::Parameter(alloc::format!("degree {degree} takes {expected} coefficients")));
        }
        Ok(DegreeNCoefficients { degree, a })
    }

    pub fn from_cochain(c: &Cochain) -> Result<DegreeNCoefficients> {
        if !c.space().is_one_two() {
            return Err(Error::UnsupportedSpace);
        }
        let Some(degree) = c.degree() else { return Err(Error::ZeroStructure) };
        if c.parity() != Some(Parity::Odd) {
            return Err(Error::WrongParity { expected: Parity::Odd });
        }
        Ok(DegreeNCoefficients { degree, a: c.coordinates(&odd_basis(degree)) })
    }

    pub fn to_cochain(&self) -> Cochain {
        Cochain::from_coordinates(space(), &odd_basis(self.degree), &self.a)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `m = degree − 2`, which is −1 in degree 1.
    pub fn m(&self) -> i64 {
        self.degree as i64 - 2
    }

    /// `a_i` with 1-based `i`.
    pub fn a(&self, i: usize) -> &Rational {
        &self.a[i - 1]
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.a
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyCheck {
    pub holds: bool,
    /// Values of the defining equations, in the order they are listed.
    pub residuals: Vec<Rational>,
}

/// Evaluates the equations cutting out the codifferentials of one degree.
///
/// Degree 1: `a₁a₃, a₂a₃, a₁a₄, a₂a₄`. Degree `m+2`:
/// `a₂a₆+a₁a₅, a₁a₃+a₂a₄, a₃(a₅+(m+2)a₂), a₄(a₅+(m+2)a₂), a₃(a₆−(m+2)a₁), a₄(a₆−(m+2)a₁)`.
pub fn variety_check(c: &DegreeNCoefficients) -> VarietyCheck {
    let a = |i: usize| c.a(i).clone();
    let residuals = if c.degree == 1 {
        alloc::vec![a(1) * a(3), a(2) * a(3), a(1) * a(4), a(2) * a(4)]
    } else {
        let mm = int(c.m() + 2);
        let u = a(5) + &mm * a(2);
        let v = a(6) - &mm * a(1);
        alloc::vec![
            a(2) * a(6) + a(1) * a(5),
            a(1) * a(3) + a(2) * a(4),
            a(3) * &u,
            a(4) * &u,
            a(3) * &v,
            a(4) * &v,
        ]
    };
    VarietyCheck { holds: residuals.iter().all(|r| r.is_zero()), residuals }
}

/// Equivalence classes of nonzero single-degree codifferentials on the 1|2 space.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyTag {
    Zero,
    /// Degree 1, `ψ^{1,0,0}_3`.
    Deg1D0,
    /// Degree 1, `ψ^{0,0,1}_1`.
    Deg1DStar,
    DInfinity { degree: usize },
    DLambda { degree: usize, lambda: Rational },
    DStar { degree: usize },
    DSharp { degree: usize },
}

impl FamilyTag {
    pub fn degree(&self) -> Option<usize> {
        match self {
            FamilyTag::Zero => None,
            FamilyTag::Deg1D0 | FamilyTag::Deg1DStar => Some(1),
            FamilyTag::DInfinity { degree }
            | FamilyTag::DLambda { degree, .. }
            | FamilyTag::DStar { degree }
            | FamilyTag::DSharp { degree } => Some(*degree),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilyTag::Zero => "zero",
            FamilyTag::Deg1D0 => "deg1_d0",
            FamilyTag::Deg1DStar => "deg1_d_star",
            FamilyTag::DInfinity { .. } => "d_infinity",
            FamilyTag::DLambda { .. } => "d_lambda",
            FamilyTag::DStar { .. } => "d_star",
            FamilyTag::DSharp { .. } => "d_sharp",
        }
    }

    pub fn lambda(&self) -> Option<&Rational> {
        match self {
            FamilyTag::DLambda { lambda, .. } => Some(lambda),
            _ => None,
        }
    }

    /// Builds a tag from its serialized parts; degree-(m+2) families need
    /// `degree ≥ 2`.
    pub fn from_parts(name: &str, degree: Option<usize>, lambda: Option<Rational>) -> Result<FamilyTag> {
        let high = |d: Option<usize>| match d {
            Some(k) if k >= 2 => Ok(k),
            _ => Err(Error::Parameter(alloc::format!("{name} needs a degree of at least 2"))),
        };
        Ok(match name {
            "zero" => FamilyTag::Zero,
            "deg1_d0" => FamilyTag::Deg1D0,
            "deg1_d_star" => FamilyTag::Deg1DStar,
            "d_infinity" => FamilyTag::DInfinity { degree: high(degree)? },
            "d_lambda" => FamilyTag::DLambda {
                degree: high(degree)?,
                lambda: lambda.ok_or_else(|| Error::Parameter("d_lambda needs lambda".into()))?,
            },
            "d_star" => FamilyTag::DStar { degree: high(degree)? },
            "d_sharp" => FamilyTag::DSharp { degree: high(degree)? },
            other => return Err(Error::Parameter(alloc::format!("unknown family {other:?}"))),
        })
    }

    /// The canonical codifferential of the class.
    pub fn representative(&self) -> Cochain {
        let m = |k: usize| k - 2;
        match self {
            FamilyTag::Zero => Cochain::zero(space()),
            FamilyTag::Deg1D0 => families::d0_cochain(),
            FamilyTag::Deg1DStar => families::deg1_star_cochain(),
            FamilyTag::DInfinity { degree } => families::infinity_cochain(m(*degree)),
            FamilyTag::DLambda { degree, lambda } => families::lambda_cochain(m(*degree), lambda),
            FamilyTag::DStar { degree } => families::star_cochain(m(*degree)),
            FamilyTag::DSharp { degree } => families::sharp_cochain(m(*degree)),
        }
    }
}

impl core::fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let mut s = String::from(self.name());
        if let Some(l) = self.lambda() {
            s = alloc::format!("{s}({l})");
        }
        match self.degree() {
            Some(k) => write!(f, "{s} of degree {k}"),
            None => write!(f, "{s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub tag: FamilyTag,
    /// `conjugate_linear(witness, d)` is the tag's representative.
    pub witness: LinearAutomorphism,
}

fn one() -> Rational {
    Rational::one()
}

/// Free parameters for `x·u + y·v = 1`; `None` when both vanish.
fn completion(x: &Rational, y: &Rational) -> (Rational, Rational) {
    unit_combination(x, y).expect("caller checks that one entry is nonzero")
}

/// Canonical form of a single odd cochain that is a codifferential.
pub fn canonical_form_cochain(c: &Cochain) -> Result<CanonicalForm> {
    if !c.space().is_one_two() {
        return Err(Error::UnsupportedSpace);
    }
    if c.is_zero() {
        return Ok(CanonicalForm { tag: FamilyTag::Zero, witness: LinearAutomorphism::identity(space()) });
    }
    let coeffs = DegreeNCoefficients::from_cochain(c)?;
    let check = variety_check(&coeffs);
    if !check.holds || !bracket(c, c)?.is_zero() {
        return Err(Error::NotSquareZero { degree: 2 * coeffs.degree - 1 });
    }
    let a = |i: usize| coeffs.a(i).clone();
    let z = Rational::zero;
    let degree = coeffs.degree;

    let (tag, witness) = if degree == 1 {
        if !a(3).is_zero() || !a(4).is_zero() {
            // g(w₁) = w₁a₃ + w₂a₄, det 1
            let (u, v) = completion(&a(3), &a(4));
            (FamilyTag::Deg1DStar, LinearAutomorphism::new_1_2(a(3), -v, a(4), u, one())?)
        } else {
            // g(w₁) = w₁l + w₂p with a₁l + a₂p = 1, g(w₂) = −a₂w₁ + a₁w₂
            let (l, p) = completion(&a(1), &a(2));
            (FamilyTag::Deg1D0, LinearAutomorphism::new_1_2(l, -a(2), p, a(1), one())?)
        }
    } else if a(3).is_zero() && a(4).is_zero() {
        if a(1).is_zero() && a(2).is_zero() {
            // (a₅ b₁; a₆ b₂) with b₂a₅ − b₁a₆ = 1
            let (u, v) = completion(&a(5), &a(6));
            (FamilyTag::DInfinity { degree }, LinearAutomorphism::new_1_2(a(5), -v, a(6), u, one())?)
        } else {
            // a₅ = ka₂, a₆ = −ka₁; (a₂ b₁; −a₁ b₂) with a₁b₁ + a₂b₂ = 1
            let k = if !a(2).is_zero() { a(5) / a(2) } else { -(a(6) / a(1)) };
            let (b1, b2) = completion(&a(1), &a(2));
            (FamilyTag::DLambda { degree, lambda: k }, LinearAutomorphism::new_1_2(a(2), b1, -a(1), b2, one())?)
        }
    } else {
        // (a₃ b₁; a₄ b₂) with a₃b₂ − a₄b₁ = 1, then k = a₁b₁ + a₂b₂
        let (u, v) = completion(&a(3), &a(4));
        let (b1, b2) = (-v, u);
        let k = a(1) * &b1 + a(2) * &b2;
        let g = LinearAutomorphism::new_1_2(a(3), b1, a(4), b2, one())?;
        if k.is_zero() {
            (FamilyTag::DStar { degree }, g)
        } else {
            let rescale = LinearAutomorphism::new_1_2(one(), z(), z(), k.recip(), one())?;
            (FamilyTag::DSharp { degree }, g.compose(&rescale)?)
        }
    };
    Ok(CanonicalForm { tag, witness })
}

fn homogeneous_part(d: &LInfinityStructure) -> Result<Cochain> {
    if !d.space().is_one_two() {
        return Err(Error::UnsupportedSpace);
    }
    if d.is_zero() {
        return Ok(Cochain::zero(*d.space()));
    }
    if !d.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    Ok(d.leading_term().expect("nonzero").clone())
}

/// Family and witness for a homogeneous codifferential on the 1|2 space.
pub fn canonical_form(d: &LInfinityStructure) -> Result<CanonicalForm> {
    let c = homogeneous_part(d)?;
    if let SquareZero::No { degree, .. } = is_codifferential(d)? {
        return Err(Error::NotSquareZero { degree });
    }
    canonical_form_cochain(&c)
}

/// `Some(g)` with `conjugate_linear(g, d) = d′` when the two are linearly
/// equivalent.
pub fn linearly_equivalent(d: &LInfinityStructure, d2: &LInfinityStructure) -> Result<Option<LinearAutomorphism>> {
    let f1 = canonical_form(d)?;
    let f2 = canonical_form(d2)?;
    if f1.tag != f2.tag {
        return Ok(None);
    }
    Ok(Some(f1.witness.compose(&f2.witness.inverse())?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Neighbor {
    /// The two classes are infinitesimally close: either every small
    /// perturbation along some direction lands in the other class, or the
    /// other class is a limit of this orbit.
    Jump(FamilyTag),
    /// Perturbing along `direction` moves through a continuous family; the
    /// classes met at the sample parameters are listed.
    Family { direction: Cochain, samples: Vec<FamilyTag> },
}

const SAMPLES: [(i64, i64); 3] = [(1, 1), (2, 1), (1, 3)];

/// The classes infinitesimally close to the given class.
///
/// Two sources: each odd cohomology direction `δ` in the same degree,
/// adjusted by a coboundary until `d + tδ` is a codifferential and then
/// classified at several `t` (one fixed class is a jump, a varying class is
/// a family); and the limits of the orbit along diagonal one-parameter
/// subgroups, which is how `d_#` reaches `d_*` and `d_λ(−(m+2))`.
pub fn jump_neighbors(tag: &FamilyTag) -> Result<Vec<Neighbor>> {
    let Some(degree) = tag.degree() else { return Ok(Vec::new()) };
    let rep = tag.representative();
    let d = LInfinityStructure::from_cochains(space(), [rep.clone()], degree)?;
    let report = cohomology(&d, degree..=degree)?;
    let directions: Vec<Cochain> = report.degrees[0]
        .representatives
        .iter()
        .filter(|c| c.parity() == Some(Parity::Odd))
        .cloned()
        .collect();
    // odd coboundaries in this degree
    let boundaries: Vec<Cochain> = DegreeBlockMatrix::new(&d, 1)?
        .images(Parity::Even)
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    let mut out = Vec::new();
    for delta in directions {
        let Some(delta) = integrable_representative(&delta, &boundaries)? else { continue };
        let mut samples = Vec::new();
        for (p, q) in SAMPLES {
            let t = Rational::new(p.into(), q.into());
            let moved = rep.checked_add(&delta.scale(&t))?;
            samples.push(canonical_form_cochain(&moved)?.tag);
        }
        let constant = samples.iter().all(|s| *s == samples[0]);
        let neighbor = if constant && samples[0] != *tag {
            Neighbor::Jump(samples[0].clone())
        } else if !constant {
            Neighbor::Family { direction: delta, samples }
        } else {
            continue;
        };
        if !out.contains(&neighbor) {
            out.push(neighbor);
        }
    }
    for limit in torus_limits(&rep)? {
        let t = canonical_form_cochain(&limit)?.tag;
        let neighbor = Neighbor::Jump(t.clone());
        if t != *tag && !out.contains(&neighbor) {
            out.push(neighbor);
        }
    }
    Ok(out)
}

/// Nonzero limits of `g_t·c` as `t → 0` for `g_t = diag(t^a, t^b, t^c)`
/// with small integer weights: after rescaling, only the terms of least
/// weight survive.
fn torus_limits(c: &Cochain) -> Result<Vec<Cochain>> {
    let weight = |q: &Rational| -> i32 {
        // q is ± a power of two
        let (n, d) = (q.numer().clone(), q.denom().clone());
        let bits = |x: &num_bigint::BigInt| x.magnitude().bits() as i32 - 1;
        bits(&n) - bits(&d)
    };
    let mut out: Vec<Cochain> = Vec::new();
    let two = int(2);
    for a in -2i32..=2 {
        for b in -2i32..=2 {
            for e in -2i32..=2 {
                let scales: Vec<Rational> = [a, b, e].iter().map(|&w| pow(&two, w)).collect();
                let g = LinearAutomorphism::diagonal(space(), &scales)?;
                let moved = crate::automorphism::conjugate_cochain(&g, c);
                let weights: Vec<i32> = c.terms().map(|(basis, q)| weight(&(moved.coeff(basis) / q))).collect();
                let low = *weights.iter().min().expect("nonzero");
                let mut limit = Cochain::zero(space());
                for ((basis, q), w) in c.terms().zip(&weights) {
                    if *w == low {
                        limit.add_term(basis.clone(), q.clone())?;
                    }
                }
                if limit.len() < c.len() && !out.contains(&limit) {
                    out.push(limit);
                }
            }
        }
    }
    Ok(out)
}

fn pow(x: &Rational, e: i32) -> Rational {
    let mut r = Rational::one();
    for _ in 0..e.unsigned_abs() {
        r *= x;
    }
    if e < 0 {
        r.recip()
    } else {
        r
    }
}

/// A cochain `δ + β` with `β` a small integer combination of `boundaries`
/// and `[δ+β, δ+β] = 0`, searched in a fixed order.
fn integrable_representative(delta: &Cochain, boundaries: &[Cochain]) -> Result<Option<Cochain>> {
    let range = [0i64, 1, -1, 2, -2];
    let n = boundaries.len();
    let mut idx = alloc::vec![0usize; n];
    loop {
        let mut candidate = delta.clone();
        for (b, &i) in boundaries.iter().zip(&idx) {
            candidate = candidate.checked_add(&b.scale(&int(range[i])))?;
        }
        if bracket(&candidate, &candidate)?.is_zero() {
            return Ok(Some(candidate));
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(None);
            }
            idx[pos] += 1;
            if idx[pos] < range.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::conjugate_linear;
    use crate::expr::parse_cochain;
    use crate::rational::frac;

    fn c(text: &str) -> Cochain {
        parse_cochain(&space(), text).unwrap()
    }

    fn st(text: &str) -> LInfinityStructure {
        let c = c(text);
        let k = c.degree().unwrap_or(1);
        LInfinityStructure::from_cochains(space(), [c], k).unwrap()
    }

    fn assert_witness(d: &LInfinityStructure, f: &CanonicalForm) {
        let image = conjugate_linear(&f.witness, d).unwrap();
        assert_eq!(image.leading_term().cloned().unwrap_or_else(|| Cochain::zero(space())), f.tag.representative(), "{}", f.tag);
    }

    #[test]
    fn coefficient_round_trip() {
        let d = c("2*psi[1,0,2]_3 - psi[0,1,2]_3 + 1/2*psi[0,0,3]_2 + psi[1,1,1]_2");
        let k = DegreeNCoefficients::from_cochain(&d).unwrap();
        assert_eq!(k.a(1), &int(2));
        assert_eq!(k.a(4), &frac(1, 2));
        assert_eq!(k.a(5), &int(0));
        assert_eq!(k.to_cochain(), d);
        assert_eq!(k.m(), 1);
    }

    #[test]
    fn variety_examples() {
        let z = || int(0);
        for m in 0..3usize {
            let k = m + 2;
            let p = DegreeNCoefficients::new(k, alloc::vec![z(), z(), z(), z(), int(2), int(-5)]).unwrap();
            assert!(variety_check(&p).holds);
            let (a1, a2) = (int(3), int(-1));
            let mm = int(m as i64 + 2);
            let p = DegreeNCoefficients::new(k, alloc::vec![a1.clone(), a2.clone(), int(1), int(3), -&mm * a2, mm * a1]).unwrap();
            assert!(variety_check(&p).holds);
        }
        let p = DegreeNCoefficients::new(1, alloc::vec![int(1), z(), int(1), z()]).unwrap();
        assert!(!variety_check(&p).holds);
    }

    #[test]
    fn explicit_witnesses() {
        let d = st("2*psi[1,1,1]_1 + 3*psi[1,1,1]_2");
        let f = canonical_form(&d).unwrap();
        assert_eq!(f.tag, FamilyTag::DInfinity { degree: 3 });
        assert_eq!(f.witness, LinearAutomorphism::new_1_2(int(2), int(1), int(3), int(2), int(1)).unwrap());
        assert_witness(&d, &f);

        let d = st("psi[0,1,2]_3 + 5/3*psi[1,1,1]_1");
        let f = canonical_form(&d).unwrap();
        assert_eq!(f.tag, FamilyTag::DLambda { degree: 3, lambda: frac(5, 3) });
        assert!(f.witness.is_identity());

        let d = st("psi[0,1,2]_3 + psi[0,0,3]_1 - 3*psi[1,1,1]_1");
        let f = canonical_form(&d).unwrap();
        assert_eq!(f.tag, FamilyTag::DSharp { degree: 3 });
        assert!(f.witness.is_identity());

        let f = canonical_form(&st("psi[0,0,1]_1")).unwrap();
        assert_eq!(f.tag, FamilyTag::Deg1DStar);
        let f = canonical_form(&st("7*psi[1,1,1]_1")).unwrap();
        assert_eq!(f.tag, FamilyTag::DInfinity { degree: 3 });
    }

    #[test]
    fn every_branch_lands_on_its_representative() {
        let samples = [
            "psi[1,0,0]_3",
            "2*psi[1,0,0]_3 - 3*psi[0,1,0]_3",
            "1/2*psi[0,1,0]_3",
            "psi[0,0,1]_1 - 4*psi[0,0,1]_2",
            "3*psi[0,0,1]_2",
            "-psi[1,1,0]_2",
            "2*psi[1,0,1]_3 + 4*psi[1,1,0]_2",
            "2*psi[1,0,1]_3 + 3*psi[0,1,1]_3 + 3*psi[1,1,0]_1 - 2*psi[1,1,0]_2",
            "psi[0,0,2]_2",
            "psi[1,0,1]_3 + psi[0,0,2]_2 + 2*psi[1,1,0]_2",
            "psi[0,0,3]_1 + 2*psi[0,0,3]_2 + 2*psi[1,0,2]_3 - psi[0,1,2]_3 + 3*psi[1,1,1]_1 + 6*psi[1,1,1]_2",
        ];
        for s in samples {
            let d = st(s);
            let f = canonical_form(&d).unwrap();
            assert_witness(&d, &f);
            // idempotent
            let again = canonical_form(&st(&crate::expr::format_cochain(&f.tag.representative()))).unwrap();
            assert_eq!(again.tag, f.tag);
            assert!(again.witness.is_identity(), "{}", f.tag);
        }
    }

    #[test]
    fn rejections() {
        assert_eq!(canonical_form(&LInfinityStructure::new(space(), 3)).unwrap().tag, FamilyTag::Zero);
        assert!(matches!(canonical_form(&st("psi[1,0,0]_3 + psi[0,0,1]_1")), Err(Error::NotSquareZero { .. })));
        let mixed = LInfinityStructure::from_cochains(space(), [c("psi[1,1,0]_1"), c("psi[0,1,2]_3")], 4).unwrap();
        assert_eq!(canonical_form(&mixed), Err(Error::NotHomogeneous));
    }

    #[test]
    fn equivalence() {
        let l2 = st("psi[0,1,2]_3 + 2*psi[1,1,1]_1");
        let l5 = st("psi[0,1,2]_3 + 5*psi[1,1,1]_1");
        assert!(linearly_equivalent(&l2, &l2).unwrap().is_some());
        assert!(linearly_equivalent(&l2, &l5).unwrap().is_none());
        let g = LinearAutomorphism::new_1_2(int(1), int(2), int(-1), int(3), frac(2, 3)).unwrap();
        let moved = conjugate_linear(&g, &l5).unwrap();
        let w = linearly_equivalent(&l5, &moved).unwrap().unwrap();
        assert_eq!(conjugate_linear(&w, &l5).unwrap(), moved);
    }

    #[test]
    fn jumps() {
        let m = 1;
        let sharp = FamilyTag::DSharp { degree: m + 2 };
        let near = jump_neighbors(&sharp).unwrap();
        assert_eq!(near.len(), 2);
        assert!(near.contains(&Neighbor::Jump(FamilyTag::DStar { degree: 3 })));
        assert!(near.contains(&Neighbor::Jump(FamilyTag::DLambda { degree: 3, lambda: int(-3) })));
        assert!(jump_neighbors(&FamilyTag::Zero).unwrap().is_empty());
        let generic = jump_neighbors(&FamilyTag::DLambda { degree: 3, lambda: int(2) }).unwrap();
        assert_eq!(generic.len(), 1);
        assert!(matches!(&generic[0], Neighbor::Family { samples, .. } if samples.iter().all(|t| matches!(t, FamilyTag::DLambda { .. }))));
        assert!(jump_neighbors(&FamilyTag::DStar { degree: 3 }).unwrap().contains(&Neighbor::Jump(sharp.clone())));
        let special = jump_neighbors(&FamilyTag::DLambda { degree: 3, lambda: int(-3) }).unwrap();
        assert!(special.contains(&Neighbor::Jump(sharp)));
    }
}
