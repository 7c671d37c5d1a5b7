//! Extensions `d = d_N + d_{N+1} + ⋯` of a codifferential `d_N`.
//!
//! The degree-`n+N` part of `[d,d] = 0` reads
//! `D(d_{n+1}) = −½ Σ_{k=N+1}^{n} [d_k, d_{n+N+1−k}]` with `D = [·, d_N]`, so
//! extensions are built one degree at a time and each step is a linear
//! problem. Equivalent extensions are related by linear automorphisms and
//! exponentials of even cochains; [`standard_form`] applies such moves to
//! strip removable corrections and records them.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::automorphism::{conjugate_linear, exp_automorphism, LinearAutomorphism};
use crate::calculus::{bracket, self_bracket};
use crate::cochain::{cochain_basis, BasisCochain, Cochain, LInfinityStructure};
use crate::cohomology::DegreeBlockMatrix;
use crate::error::{Error, Result};
use crate::families;
use crate::graded::{GradedSpace, Parity};
use crate::linalg::{self, Echelon, SparseVec};
use crate::rational::{frac, int, pow, rational_root, Rational};

fn single(c: &Cochain) -> Result<LInfinityStructure> {
    let k = c.degree().ok_or(Error::ZeroStructure)?;
    LInfinityStructure::from_cochains(*c.space(), [c.clone()], k)
}

fn to_vec(c: &Cochain, basis: &[BasisCochain]) -> SparseVec {
    linalg::sparse(&c.coordinates(basis))
}

fn from_vec(space: GradedSpace, basis: &[BasisCochain], v: &SparseVec) -> Cochain {
    Cochain::from_coordinates(space, basis, &linalg::dense(v, basis.len()))
}

/// `D_c = [·, c]` from even cochains of the given degree.
fn even_images(c: &Cochain, source_degree: usize) -> Result<(Vec<BasisCochain>, Vec<Cochain>)> {
    let block = DegreeBlockMatrix::new(&single(c)?, source_degree)?;
    Ok((block.source_basis(Parity::Even).to_vec(), block.images(Parity::Even)))
}

/// A partial extension `d_N + ⋯ + d_n` that solves the extension equation in
/// every degree it determines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionProblem {
    d: LInfinityStructure,
    n: usize,
}

impl ExtensionProblem {
    /// `d` holds `d_N…d_n`; the next unknown is `d_{n+1}`.
    pub fn new(d: LInfinityStructure, n: usize) -> Result<ExtensionProblem> {
        let lead = d.leading_degree().ok_or(Error::ZeroStructure)?;
        if n < lead {
            return Err(Error::Parameter(alloc::format!("n = {n} is below the leading degree {lead}")));
        }
        if let Some(top) = d.max_degree() {
            if top > n {
                return Err(Error::BeyondTruncation { degree: top, truncation: n });
            }
        }
        let d = d.truncated(d.truncation().max(n + 1));
        // [d,d] must vanish in degrees below n+N.
        let sq = self_bracket(&d, n + lead - 1)?;
        if let Some((&degree, _)) = sq.iter().next() {
            return Err(Error::InconsistentExtension { degree: degree + 1 - lead });
        }
        Ok(ExtensionProblem { d, n })
    }

    pub fn base(&self) -> &Cochain {
        self.d.leading_term().expect("validated")
    }

    pub fn partial(&self) -> &LInfinityStructure {
        &self.d
    }

    pub fn next_degree(&self) -> usize {
        self.n + 1
    }

    fn lead_degree(&self) -> usize {
        self.d.leading_degree().expect("validated")
    }

    /// Appends `d_{n+1}` after checking that it solves the current step.
    pub fn extend(&self, next: &Cochain) -> Result<ExtensionProblem> {
        let mut d = self.d.truncated(self.d.truncation().max(self.n + 2));
        if !next.is_zero() {
            if next.degree() != Some(self.n + 1) {
                return Err(Error::DegreeMismatch { expected: self.n + 1, got: next.degree().unwrap_or(0) });
            }
            d.add(next)?;
        }
        ExtensionProblem::new(d, self.n + 1)
    }
}

/// `−½ Σ_{k=N+1}^{n} [d_k, d_{n+N+1−k}]`, checked to be a `D`-cocycle.
pub fn obstruction_rhs(p: &ExtensionProblem) -> Result<Cochain> {
    let big_n = p.lead_degree();
    let space = *p.d.space();
    let mut sum = Cochain::zero(space);
    for k in big_n + 1..=p.n {
        let j = p.n + big_n + 1 - k;
        if j <= big_n || j > p.n {
            continue;
        }
        if let (Some(a), Some(b)) = (p.d.component(k), p.d.component(j)) {
            sum = sum.checked_add(&bracket(a, b)?)?;
        }
    }
    let rhs = sum.scale(&frac(-1, 2));
    if !bracket(&rhs, p.base())?.is_zero() {
        return Err(Error::InconsistentExtension { degree: p.n + 1 });
    }
    Ok(rhs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome {
    /// `D(particular) = rhs`; any odd cocycle in `cocycles` may be added,
    /// and `classes` are the ones that are not coboundaries.
    Solved { particular: Cochain, cocycles: Vec<Cochain>, classes: Vec<Cochain> },
    /// The right hand side is not a coboundary; this is its class.
    Obstructed { class: Cochain },
}

pub fn solve_step(p: &ExtensionProblem) -> Result<StepOutcome> {
    let space = *p.d.space();
    let rhs = obstruction_rhs(p)?;
    let base = single(p.base())?;
    let degree = p.n + 1;
    let block = DegreeBlockMatrix::new(&base, degree)?;
    let target = block.target_basis(Parity::Odd).to_vec();
    let source = block.source_basis(Parity::Odd).to_vec();
    let columns: Vec<SparseVec> = block.images(Parity::Odd).iter().map(|c| to_vec(c, &target)).collect();
    let b = to_vec(&rhs, &target);
    let mut e = Echelon::new();
    for c in &columns {
        e.insert(c.clone());
    }
    let Some(x) = e.express(&b) else {
        return Ok(StepOutcome::Obstructed { class: from_vec(space, &target, &e.reduce(&b)) });
    };
    let particular = from_vec(space, &source, &x);
    let cocycles = block.kernel(Parity::Odd);
    let report = crate::cohomology::cohomology(&base, degree..=degree)?;
    let classes = report.degrees[0].representatives.iter().filter(|c| c.parity() == Some(Parity::Odd)).cloned().collect();
    Ok(StepOutcome::Solved { particular, cocycles, classes })
}

/// One equivalence applied during a reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    /// Conjugation by `exp` of this even cochain.
    Exp(Cochain),
    Linear(LinearAutomorphism),
    Truncate(usize),
}

impl Move {
    pub fn apply(&self, d: &LInfinityStructure) -> Result<LInfinityStructure> {
        match self {
            Move::Exp(eta) => exp_automorphism(eta, d.truncation())?.conjugate(d),
            Move::Linear(g) => conjugate_linear(g, d),
            Move::Truncate(k) => Ok(d.truncated(*k)),
        }
    }

    /// The inverse move; truncation has none.
    pub fn inverse(&self) -> Option<Move> {
        match self {
            Move::Exp(eta) => Some(Move::Exp(eta.neg())),
            Move::Linear(g) => Some(Move::Linear(g.inverse())),
            Move::Truncate(_) => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Move::Exp(_) => "exp",
            Move::Linear(_) => "linear",
            Move::Truncate(_) => "truncate",
        }
    }
}

pub fn replay(d: &LInfinityStructure, moves: &[Move]) -> Result<LInfinityStructure> {
    moves.iter().try_fold(d.clone(), |acc, m| m.apply(&acc))
}

/// Undoes `moves` starting from their result.
pub fn unwind(d: &LInfinityStructure, moves: &[Move]) -> Result<LInfinityStructure> {
    moves.iter().rev().try_fold(d.clone(), |acc, m| {
        m.inverse().ok_or(Error::Parameter("a truncation cannot be undone".into()))?.apply(&acc)
    })
}

/// Outcome of rescaling the first correction by a diagonal automorphism that
/// fixes the leading term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalization {
    AlreadyNormal,
    Rescaled,
    /// No diagonal automorphism fixing `d_N` moves this term.
    Fixed,
    /// Normalizing needs `t^exponent = value` with no rational solution.
    AlgebraicClosureOnly { exponent: i64, value: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardForm {
    pub structure: LInfinityStructure,
    pub transcript: Vec<Move>,
    /// Degree and value of the first surviving correction.
    pub secondary: Option<(usize, Cochain)>,
    pub normalization: Normalization,
    /// Later corrections that no move removed.
    pub irremovable: Vec<(usize, Cochain)>,
    /// All statements hold up to this degree.
    pub truncation: usize,
}

/// Characters `x^{I}/x_j` of a diagonal automorphism on a basis cochain, as an
/// exponent vector.
fn character(b: &BasisCochain) -> Vec<i64> {
    let mut e: Vec<i64> = b.index.exponents().iter().map(|&x| x as i64).collect();
    e[b.target] -= 1;
    e
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A one-parameter diagonal subgroup `t ↦ diag(t^{w_i})` fixing every term
/// of `fixed` and acting on `target` by `t^r` with the least `|r| > 0`.
fn torus_weight(fixed: &[BasisCochain], target: &BasisCochain, bound: i64) -> Option<(Vec<i64>, i64)> {
    let dim = target.index.exponents().len();
    let constraints: Vec<Vec<i64>> = fixed.iter().map(character).collect();
    let chi = character(target);
    let mut best: Option<(Vec<i64>, i64)> = None;
    let mut w = alloc::vec![-bound; dim];
    loop {
        if constraints.iter().all(|c| dot(c, &w) == 0) {
            let r = dot(&chi, &w);
            let better = match &best {
                None => r != 0,
                Some((_, br)) => r != 0 && (r.abs() < br.abs() || (r.abs() == br.abs() && r > 0 && *br < 0)),
            };
            if better {
                best = Some((w.clone(), r));
            }
        }
        let mut i = 0;
        loop {
            if i == dim {
                return best;
            }
            w[i] += 1;
            if w[i] <= bound {
                break;
            }
            w[i] = -bound;
            i += 1;
        }
    }
}

/// Diagonal automorphism fixing `lead` that brings the leading coefficient
/// of `term` to 1, if one exists over ℚ.
fn normalizer(lead: &Cochain, term: &Cochain) -> (Normalization, Option<LinearAutomorphism>) {
    let Some((b, c)) = term.terms().next() else { return (Normalization::AlreadyNormal, None) };
    if c.is_one() {
        return (Normalization::AlreadyNormal, None);
    }
    let fixed: Vec<BasisCochain> = lead.terms().map(|(b, _)| b.clone()).collect();
    let bound = term.degree().unwrap_or(1).max(lead.degree().unwrap_or(1)) as i64 + 2;
    let Some((w, r)) = torus_weight(&fixed, b, bound) else { return (Normalization::Fixed, None) };
    // conjugation multiplies the coefficient by t^r
    let target = c.recip();
    let t = if r > 0 { rational_root(&target, r as u32) } else { rational_root(c, (-r) as u32) };
    let Some(t) = t else {
        return (Normalization::AlgebraicClosureOnly { exponent: r, value: target }, None);
    };
    let scales: Vec<Rational> = w.iter().map(|&k| pow(&t, k)).collect();
    let g = LinearAutomorphism::diagonal(*lead.space(), &scales).expect("nonzero scales");
    (Normalization::Rescaled, Some(g))
}

/// `x` with `D(x) = c` for `D = [·, lead]` on even cochains, if any.
fn coboundary_preimage(lead: &Cochain, c: &Cochain) -> Result<Option<Cochain>> {
    let space = *c.space();
    let (k, n_lead) = (c.degree().expect("nonzero"), lead.degree().expect("nonzero"));
    if k < n_lead {
        return Ok(None);
    }
    let (source, images) = even_images(lead, k + 1 - n_lead)?;
    let target = cochain_basis(&space, k, Parity::Odd);
    let columns: Vec<SparseVec> = images.iter().map(|i| to_vec(i, &target)).collect();
    Ok(linalg::solve(&columns, &to_vec(c, &target)).map(|x| from_vec(space, &source, &x)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivextReport {
    /// `D₁(δ) = 0`.
    pub d1_cocycle: bool,
    /// `D₂(δ)` is a `D₁`-coboundary.
    pub d2_image_is_d1_coboundary: bool,
    /// `δ` is a `D₁`-coboundary.
    pub d1_coboundary: bool,
    /// `δ = D₁(ξ) + D₂(η)` with `η` a `D₁`-cocycle, when solvable.
    pub witness: Option<(Cochain, Cochain)>,
    pub removable: bool,
}

/// For `d = d_N + d_l + ⋯` and an odd `δ` of degree above `l`, decides
/// whether `d + δ` can be brought back to `d` in degree `deg δ` by
/// exponentials: `δ ∈ D₁(L) + D₂(Z₁)` with `D₁ = [·, d_N]`, `D₂ = [·, d_l]`.
pub fn equivext_check(d: &LInfinityStructure, delta: &Cochain) -> Result<EquivextReport> {
    let space = *d.space();
    let mut comps = d.components();
    let (_, lead) = comps.next().ok_or(Error::ZeroStructure)?;
    let (l, second) = comps.next().ok_or(Error::Parameter("need a structure with a secondary term".into()))?;
    if delta.is_zero() {
        let z = Cochain::zero(space);
        return Ok(EquivextReport {
            d1_cocycle: true,
            d2_image_is_d1_coboundary: true,
            d1_coboundary: true,
            witness: Some((z.clone(), z)),
            removable: true,
        });
    }
    if delta.parity() != Some(Parity::Odd) {
        return Err(Error::WrongParity { expected: Parity::Odd });
    }
    let k = delta.degree().expect("nonzero");
    if k <= l {
        return Err(Error::Parameter(alloc::format!("correction degree {k} is not above the secondary degree {l}")));
    }
    let n_lead = lead.degree().expect("nonzero");
    let d1_cocycle = bracket(delta, lead)?.is_zero();
    let d2 = bracket(delta, second)?;
    let d2_image_is_d1_coboundary = d2.is_zero() || d2_preimage_exists(lead, &d2)?;
    let d1_coboundary = coboundary_preimage(lead, delta)?.is_some();

    // joint system δ = D₁(ξ) + D₂(η), η ∈ Z₁
    let target = cochain_basis(&space, k, Parity::Odd);
    let (xi_basis, xi_images) = even_images(lead, k + 1 - n_lead)?;
    let eta_degree = k + 1 - l;
    let lead_block = DegreeBlockMatrix::new(&single(lead)?, eta_degree)?;
    let z1 = lead_block.kernel(Parity::Even);
    let mut columns: Vec<SparseVec> = xi_images.iter().map(|c| to_vec(c, &target)).collect();
    for eta in &z1 {
        columns.push(to_vec(&bracket(eta, second)?, &target));
    }
    let witness = linalg::solve(&columns, &to_vec(delta, &target)).map(|x| {
        let nx = xi_basis.len();
        let xi_part: SparseVec = x.iter().filter(|(i, _)| **i < nx).map(|(i, q)| (*i, q.clone())).collect();
        let mut eta = Cochain::zero(space);
        for (i, q) in x.iter().filter(|(i, _)| **i >= nx) {
            eta = eta.checked_add(&z1[i - nx].scale(q)).expect("same degree");
        }
        (from_vec(space, &xi_basis, &xi_part), eta)
    });
    let removable = witness.is_some();
    Ok(EquivextReport { d1_cocycle, d2_image_is_d1_coboundary, d1_coboundary, witness, removable })
}

fn d2_preimage_exists(lead: &Cochain, c: &Cochain) -> Result<bool> {
    if c.parity() == Some(Parity::Odd) {
        return Ok(coboundary_preimage(lead, c)?.is_some());
    }
    // even target: preimages are odd cochains
    let space = *c.space();
    let (k, n_lead) = (c.degree().expect("nonzero"), lead.degree().expect("nonzero"));
    if k < n_lead {
        return Ok(false);
    }
    let block = DegreeBlockMatrix::new(&single(lead)?, k + 1 - n_lead)?;
    let target = cochain_basis(&space, k, Parity::Even);
    let columns: Vec<SparseVec> = block.images(Parity::Odd).iter().map(|i| to_vec(i, &target)).collect();
    Ok(linalg::solve(&columns, &to_vec(c, &target)).is_some())
}

fn apply_move(current: &mut LInfinityStructure, moves: &mut Vec<Move>, m: Move) -> Result<()> {
    *current = m.apply(current)?;
    moves.push(m);
    Ok(())
}

/// Reduces `d` to `d_N + d_l + ⋯` where `d_l` is not a coboundary, removing
/// later corrections whenever exponentials can, up to the truncation of `d`.
pub fn standard_form(d: &LInfinityStructure) -> Result<StandardForm> {
    standard_form_to(d, d.truncation())
}

/// As [`standard_form`], first cutting `d` at `truncation` (recorded as a
/// move when it drops anything).
pub fn standard_form_to(d: &LInfinityStructure, truncation: usize) -> Result<StandardForm> {
    let n_lead = d.leading_degree().ok_or(Error::ZeroStructure)?;
    if let Some((degree, _)) = self_bracket(d, d.truncation() + n_lead - 1)?.into_iter().next() {
        return Err(Error::NotSquareZero { degree });
    }
    if truncation < n_lead {
        return Err(Error::TruncationTooSmall { truncation, needed: n_lead });
    }
    let mut moves = Vec::new();
    let mut current = d.clone();
    if truncation != d.truncation() {
        apply_move(&mut current, &mut moves, Move::Truncate(truncation))?;
    }
    let lead = current.leading_term().expect("nonzero").clone();
    let mut secondary: Option<(usize, Cochain)> = None;
    let mut normalization = Normalization::AlreadyNormal;
    let mut irremovable = Vec::new();

    for j in n_lead + 1..=truncation {
        let Some(c) = current.component(j).cloned() else { continue };
        match &secondary {
            None => {
                if let Some(xi) = coboundary_preimage(&lead, &c)? {
                    apply_move(&mut current, &mut moves, Move::Exp(xi))?;
                    debug_assert!(current.component(j).is_none());
                    continue;
                }
                let (status, g) = normalizer(&lead, &c);
                normalization = status;
                if let Some(g) = g {
                    apply_move(&mut current, &mut moves, Move::Linear(g))?;
                }
                secondary = Some((j, current.component(j).expect("kept").clone()));
            }
            Some(_) => {
                let report = equivext_check(&current, &c)?;
                let Some((_, eta)) = report.witness else {
                    irremovable.push((j, c));
                    continue;
                };
                if !eta.is_zero() {
                    apply_move(&mut current, &mut moves, Move::Exp(eta))?;
                }
                if let Some(rest) = current.component(j).cloned() {
                    let xi = coboundary_preimage(&lead, &rest)?
                        .ok_or(Error::InconsistentExtension { degree: j })?;
                    apply_move(&mut current, &mut moves, Move::Exp(xi))?;
                }
                if current.component(j).is_some() {
                    return Err(Error::InconsistentExtension { degree: j });
                }
            }
        }
    }
    Ok(StandardForm { structure: current, transcript: moves, secondary, normalization, irremovable, truncation })
}

/// Higher terms `x` with `[φ + x, d] = 0` through degree `top + N − 1`,
/// where `x` lives in degrees `deg φ + 1 ..= top`; `None` if `φ` does not
/// extend to a `d`-cocycle that far.
pub fn extend_cocycle(d: &LInfinityStructure, phi: &Cochain, top: usize) -> Result<Option<Cochain>> {
    let space = *d.space();
    let n_lead = d.leading_degree().ok_or(Error::ZeroStructure)?;
    let (Some(k), Some(parity)) = (phi.degree(), phi.parity()) else {
        return Ok(Some(Cochain::zero(space)));
    };
    let limit = top + n_lead - 1;
    let targets: Vec<BasisCochain> = (1..=limit).flat_map(|j| cochain_basis(&space, j, parity.flip())).collect();
    let index: BTreeMap<BasisCochain, usize> = targets.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    let image = |c: &Cochain| -> Result<SparseVec> {
        let mut v = SparseVec::new();
        for (_, part) in crate::cohomology::full_coboundary(d, c)? {
            for (b, q) in part.terms() {
                if let Some(&i) = index.get(b) {
                    v.insert(i, q.clone());
                }
            }
        }
        Ok(v)
    };
    let unknowns: Vec<BasisCochain> = (k + 1..=top).flat_map(|j| cochain_basis(&space, j, parity)).collect();
    let mut columns = Vec::with_capacity(unknowns.len());
    for b in &unknowns {
        columns.push(image(&Cochain::basis(space, b.clone()))?);
    }
    let rhs = linalg::scale(&image(phi)?, &-Rational::one());
    Ok(linalg::solve(&columns, &rhs).map(|x| {
        let mut out = Cochain::zero(space);
        for (i, q) in x {
            out.add_term(unknowns[i].clone(), q).expect("same parity");
        }
        out
    }))
}

/// Whether `ψ^{0,1,k+1}_3` added to `d_{∞,n} = ψ^{1,1,m}_1 + ψ^{0,1,n+1}_3`
/// survives every reduction move (`k > n`).
pub fn infinity_correction_irremovable(m: usize, n: usize, k: usize) -> Result<bool> {
    if k <= n {
        return Err(Error::Parameter(alloc::format!("corrections sit above the secondary term: need k > n, got k = {k}")));
    }
    let base = families::build_d_infty_ext(m, n, &Rational::zero(), k + 2)?;
    let delta = Cochain::from_exponents(*base.space(), &[(&[0, 1, k as u32 + 1], 3, int(1))])?;
    let report = equivext_check(&base, &delta)?;
    if report.removable {
        return Ok(false);
    }
    // A diagonal automorphism fixing d_{∞,n} could still rescale the term
    // to zero only if it moved it at all; none does.
    let fixed: Vec<BasisCochain> =
        base.components().flat_map(|(_, c)| c.terms().map(|(b, _)| b.clone()).collect::<Vec<_>>()).collect();
    let b = delta.terms().next().expect("one term").0;
    Ok(torus_weight(&fixed, b, (k + 4) as i64).is_none())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootCondition {
    /// `q^{m−n} = a` with this rational `q`.
    Rational(Rational),
    AlgebraicClosureOnly,
}

/// Solvability of `q^{m−n} = a`, which makes `ψ^{1,1,m}_1 + aψ^{0,1,n+1}_3`
/// equivalent to `d_{∞,n}` via `diag(1, q^{−m}, q)`.
pub fn root_condition(m: usize, n: usize, a: &Rational) -> Result<RootCondition> {
    if n <= m || a.is_zero() {
        return Err(Error::Parameter(String::from("need n > m and a ≠ 0")));
    }
    // q^{m−n} = a  ⇔  q^{n−m} = 1/a
    Ok(match rational_root(&a.recip(), (n - m) as u32) {
        Some(q) => RootCondition::Rational(q),
        None => RootCondition::AlgebraicClosureOnly,
    })
}

/// The witness `diag(1, q^{−m}, q)` for [`root_condition`].
pub fn root_witness(m: usize, q: &Rational) -> Result<LinearAutomorphism> {
    LinearAutomorphism::diagonal(GradedSpace::one_two(), &[Rational::one(), pow(q, -(m as i64)), q.clone()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::is_codifferential;
    use crate::expr::parse_cochain;

    fn s() -> GradedSpace {
        GradedSpace::one_two()
    }

    fn c(text: &str) -> Cochain {
        parse_cochain(&s(), text).unwrap()
    }

    #[test]
    fn empty_partial_has_zero_rhs() {
        let p = ExtensionProblem::new(families::d_lambda(1, &int(2), 3), 3).unwrap();
        assert!(obstruction_rhs(&p).unwrap().is_zero());
        match solve_step(&p).unwrap() {
            StepOutcome::Solved { particular, .. } => assert!(particular.is_zero()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infinity_n_rhs_vanishes() {
        let (m, n) = (0, 2);
        let d = families::build_d_infty_ext(m, n, &Rational::zero(), n + 2).unwrap();
        let mut p = ExtensionProblem::new(d, n + 2).unwrap();
        for _ in 0..4 {
            assert!(obstruction_rhs(&p).unwrap().is_zero());
            p = p.extend(&Cochain::zero(s())).unwrap();
        }
    }

    #[test]
    fn single_term_rhs() {
        // d_N + d_{N+1}: the next right hand side is −½[d_{N+1}, d_{N+1}]
        let d = LInfinityStructure::from_cochains(s(), [c("psi[1,1,0]_1"), c("psi[0,1,2]_3 + psi[1,1,1]_2")], 3).unwrap();
        let p = ExtensionProblem::new(d.clone(), 3);
        // only valid if the first step holds
        if let Ok(p) = p {
            let d3 = d.component(3).unwrap();
            assert_eq!(obstruction_rhs(&p).unwrap(), bracket(d3, d3).unwrap().scale(&frac(-1, 2)));
        }
    }

    #[test]
    fn iterated_steps_stay_square_zero() {
        let d = families::d_lambda(0, &int(-3), 2);
        let mut p = ExtensionProblem::new(d, 2).unwrap();
        for _ in 0..4 {
            let next = match solve_step(&p).unwrap() {
                StepOutcome::Solved { particular, classes, .. } => {
                    classes.iter().fold(particular, |acc, x| acc.checked_add(x).unwrap())
                }
                StepOutcome::Obstructed { class } => panic!("obstructed by {class}"),
            };
            p = p.extend(&next).unwrap();
            assert!(is_codifferential(&p.partial().truncated(p.next_degree() - 1)).unwrap().holds());
        }
    }

    #[test]
    fn lambda_e_class_appears_in_ambiguity() {
        let (m, n) = (0, 1);
        let lam = -int(n as i64 + 2);
        let mut p = ExtensionProblem::new(families::d_lambda(m, &lam, m + 2), m + 2).unwrap();
        while p.next_degree() < n + 2 {
            p = p.extend(&Cochain::zero(s())).unwrap();
        }
        match solve_step(&p).unwrap() {
            StepOutcome::Solved { classes, .. } => {
                assert!(classes.iter().any(|x| *x == c(&alloc::format!("psi[0,0,{}]_1", n + 2))), "{classes:?}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn standard_form_removes_coboundaries() {
        let m = 1;
        let base = families::d_lambda(m, &int(3), 7);
        let eta = c("phi[0,0,2]_3 + 2*phi[1,0,1]_2");
        let moved = exp_automorphism(&eta, 7).unwrap().conjugate(&base).unwrap();
        assert!(!moved.is_homogeneous());
        let f = standard_form(&moved).unwrap();
        assert_eq!(f.structure, base);
        assert!(f.secondary.is_none());
        assert_eq!(replay(&moved, &f.transcript).unwrap(), f.structure);
        assert_eq!(unwind(&f.structure, &f.transcript).unwrap(), moved);
        let trivial = standard_form(&base).unwrap();
        assert_eq!(trivial.structure, base);
        assert!(trivial.transcript.is_empty());
    }

    #[test]
    fn lambda_e_is_already_standard() {
        let d = families::build_d_lambda_e(0, 1, 6).unwrap();
        let f = standard_form(&d).unwrap();
        assert_eq!(f.structure, d);
        assert_eq!(f.secondary.as_ref().map(|s| s.0), Some(3));
        // scaled secondary term is normalized back
        let scaled = LInfinityStructure::from_cochains(
            s(),
            [families::lambda_cochain(0, &int(-3)), c("5*psi[0,0,3]_1")],
            6,
        )
        .unwrap();
        let f = standard_form(&scaled).unwrap();
        assert_eq!(f.normalization, Normalization::Rescaled);
        assert_eq!(f.structure, d);
        assert_eq!(unwind(&f.structure, &f.transcript).unwrap(), scaled);
    }

    #[test]
    fn infinity_corrections() {
        let (m, n) = (0, 1);
        for k in n + 1..=2 * n - m + 3 {
            assert_eq!(infinity_correction_irremovable(m, n, k).unwrap(), k == 2 * n - m, "k = {k}");
        }
        assert!(infinity_correction_irremovable(m, n, n).is_err());
    }

    #[test]
    fn roots() {
        assert_eq!(root_condition(0, 2, &frac(1, 4)).unwrap(), RootCondition::Rational(int(2)));
        assert_eq!(root_condition(0, 2, &int(2)).unwrap(), RootCondition::AlgebraicClosureOnly);
        let (m, n, a) = (1, 3, frac(1, 9));
        let RootCondition::Rational(q) = root_condition(m, n, &a).unwrap() else { panic!() };
        let d = LInfinityStructure::from_cochains(
            s(),
            [families::infinity_cochain(m), Cochain::from_exponents(s(), &[(&[0, 1, n as u32 + 1], 3, a)]).unwrap()],
            n + 2,
        )
        .unwrap();
        let g = root_witness(m, &q).unwrap();
        assert_eq!(conjugate_linear(&g, &d).unwrap(), families::build_d_infty_ext(m, n, &Rational::zero(), n + 2).unwrap().truncated(n + 2));
    }

    #[test]
    fn lambda_e_kills_family_direction() {
        let (m, n) = (0, 1);
        let psi = families::infinity_cochain(m);
        let d_lambda = families::d_lambda(m, &-int(n as i64 + 2), m + n + 4);
        assert!(extend_cocycle(&d_lambda, &psi, m + n + 4).unwrap().is_some());
        let d = families::build_d_lambda_e(m, n, m + n + 4).unwrap();
        assert!(extend_cocycle(&d, &psi, m + n + 4).unwrap().is_none());
    }

    #[test]
    fn equivext_trivial_cases() {
        let d = families::build_d_lambda_e(0, 1, 6).unwrap();
        assert!(equivext_check(&d, &Cochain::zero(s())).unwrap().removable);
        let delta = bracket(&c("phi[0,0,3]_3"), d.leading_term().unwrap()).unwrap();
        let r = equivext_check(&d, &delta).unwrap();
        assert!(r.d1_coboundary && r.removable && r.d1_cocycle);
    }
}
