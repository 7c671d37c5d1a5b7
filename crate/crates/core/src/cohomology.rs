//! Cohomology of `D(φ) = [φ, d]`.
//!
//! For a homogeneous `d = d_N` the operator maps `L_n → L_{n+N−1}` and is
//! handled one degree block at a time. For a structure with several
//! components `D` is filtered rather than graded; there the cochain space is
//! cut at a working degree past the requested range, cocycles and coboundaries
//! are put in echelon form with coordinates ordered by degree, and each
//! degree reports the classes whose leading term lives there.
//!
//! Dimension bookkeeping per degree `n`:
//! * `z` cocycles, split by parity of the cochain;
//! * `b` the rank of `D` out of `L_n`, split by parity of the image (so for
//!   a homogeneous `d`, `z_n + b_n` with `b` flipped is `dim L_n`);
//! * `h = z − (coboundaries landing in degree n)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use crate::calculus::{bracket, is_codifferential, self_bracket, SquareZero};
use crate::cochain::{cochain_basis, BasisCochain, Cochain, LInfinityStructure};
use crate::error::{Error, Result};
use crate::graded::{GradedDim, GradedSpace, Parity};
use crate::linalg::{self, Echelon, Insert, SparseVec};
use crate::rational::Rational;

/// `D(φ) = [φ, d_N]` for the leading term `d_N` of `d`.
pub fn coboundary(d: &LInfinityStructure, phi: &Cochain) -> Result<Cochain> {
    let lead = d.leading_term().ok_or(Error::ZeroStructure)?;
    bracket(phi, lead)
}

/// `[φ, d]` summed over every component of `d`, keyed by degree.
pub fn full_coboundary(d: &LInfinityStructure, phi: &Cochain) -> Result<BTreeMap<usize, Cochain>> {
    let mut out = BTreeMap::new();
    for (_, c) in d.components() {
        let br = bracket(phi, c)?;
        if let Some(k) = br.degree() {
            out.insert(k, br);
        }
    }
    Ok(out)
}

/// Global coordinates on `L_1 ⊕ ⋯ ⊕ L_top` of one parity, ordered by degree.
#[derive(Debug, Clone)]
struct Coordinates {
    basis: Vec<BasisCochain>,
    index: BTreeMap<BasisCochain, usize>,
}

impl Coordinates {
    fn new(space: &GradedSpace, degrees: RangeInclusive<usize>, parity: Parity) -> Coordinates {
        let basis: Vec<BasisCochain> = degrees.flat_map(|n| cochain_basis(space, n, parity)).collect();
        let index = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        Coordinates { basis, index }
    }

    fn degree_of(&self, coordinate: usize) -> usize {
        self.basis[coordinate].degree()
    }

    /// Coordinates of `c`, dropping terms outside the window.
    fn vector(&self, c: &Cochain) -> SparseVec {
        c.terms().filter_map(|(b, q)| self.index.get(b).map(|&i| (i, q.clone()))).collect()
    }

    /// The components of `v`, keyed by degree.
    fn cochains(&self, space: GradedSpace, v: &SparseVec) -> BTreeMap<usize, Cochain> {
        let mut out: BTreeMap<usize, Cochain> = BTreeMap::new();
        for (&i, q) in v {
            let b = &self.basis[i];
            out.entry(b.degree()).or_insert_with(|| Cochain::zero(space)).add_term_unchecked(b.clone(), q.clone());
        }
        out
    }

    fn leading(&self, space: GradedSpace, v: &SparseVec) -> Cochain {
        self.cochains(space, v).into_values().next().unwrap_or_else(|| Cochain::zero(space))
    }
}

/// `D` restricted to `L_n`, one block per source parity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeBlockMatrix {
    pub source_degree: usize,
    pub target_degree: usize,
    /// Indexed by source parity bit; columns are images of the source basis.
    blocks: [Block; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Block {
    space: GradedSpace,
    source: Vec<BasisCochain>,
    target: Vec<BasisCochain>,
    columns: Vec<SparseVec>,
}

impl DegreeBlockMatrix {
    pub fn new(d: &LInfinityStructure, source_degree: usize) -> Result<DegreeBlockMatrix> {
        let lead = d.leading_term().ok_or(Error::ZeroStructure)?;
        let n_lead = lead.degree().expect("nonzero");
        let space = *d.space();
        let target_degree = source_degree + n_lead - 1;
        let block = |parity: Parity| -> Result<Block> {
            let source = cochain_basis(&space, source_degree, parity);
            let target = cochain_basis(&space, target_degree, parity.flip());
            let columns = source
                .iter()
                .map(|b| Ok(linalg::sparse(&bracket(&Cochain::basis(space, b.clone()), lead)?.coordinates(&target))))
                .collect::<Result<Vec<_>>>()?;
            Ok(Block { space, source, target, columns })
        };
        Ok(DegreeBlockMatrix { source_degree, target_degree, blocks: [block(Parity::Even)?, block(Parity::Odd)?] })
    }

    fn block(&self, parity: Parity) -> &Block {
        &self.blocks[parity.bit() as usize]
    }

    pub fn source_basis(&self, parity: Parity) -> &[BasisCochain] {
        &self.block(parity).source
    }

    pub fn target_basis(&self, parity: Parity) -> &[BasisCochain] {
        &self.block(parity).target
    }

    /// Row-major dense matrix of the block with the given source parity.
    pub fn dense(&self, parity: Parity) -> Vec<Vec<Rational>> {
        let b = self.block(parity);
        let cols: Vec<Vec<Rational>> = b.columns.iter().map(|c| linalg::dense(c, b.target.len())).collect();
        (0..b.target.len()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
    }

    pub fn rank(&self, parity: Parity) -> usize {
        linalg::rank(&self.block(parity).columns)
    }

    /// Rank of `D` out of `L_n`, split by parity of the image.
    pub fn image_dim(&self) -> GradedDim {
        GradedDim::new(self.rank(Parity::Odd), self.rank(Parity::Even))
    }

    pub fn kernel(&self, parity: Parity) -> Vec<Cochain> {
        let b = self.block(parity);
        let space = b.space;
        linalg::kernel(&b.columns)
            .iter()
            .map(|v| Cochain::from_coordinates(space, &b.source, &linalg::dense(v, b.source.len())))
            .collect()
    }

    /// Images of the source basis of the given parity.
    pub fn images(&self, parity: Parity) -> Vec<Cochain> {
        let b = self.block(parity);
        let space = b.space;
        b.columns.iter().map(|v| Cochain::from_coordinates(space, &b.target, &linalg::dense(v, b.target.len()))).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCohomology {
    pub degree: usize,
    pub z: GradedDim,
    pub b: GradedDim,
    pub h: GradedDim,
    /// Classes spanning `H` in this degree, even ones first. For a filtered
    /// computation these are the leading terms of the cocycles.
    pub representatives: Vec<Cochain>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyReport {
    pub leading_degree: usize,
    /// Working degree of a filtered computation; `None` for the graded one.
    pub working_truncation: Option<usize>,
    pub degrees: Vec<DegreeCohomology>,
}

impl CohomologyReport {
    pub fn get(&self, degree: usize) -> Option<&DegreeCohomology> {
        self.degrees.iter().find(|d| d.degree == degree)
    }

    pub fn h(&self, degree: usize) -> GradedDim {
        self.get(degree).map(|d| d.h).unwrap_or(GradedDim::ZERO)
    }

    pub fn total(&self) -> usize {
        self.degrees.iter().map(|d| d.h.total()).sum()
    }

    /// `(degree, h)` for every degree with nonzero cohomology.
    pub fn fingerprint(&self) -> Vec<(usize, GradedDim)> {
        self.degrees.iter().filter(|d| !d.h.is_zero()).map(|d| (d.degree, d.h)).collect()
    }

    /// Replaces the representatives of one parity in one degree by `preferred`
    /// when they are cocycles spanning the same quotient. Returns whether the
    /// replacement happened. Only graded reports are supported.
    pub fn prefer(&mut self, d: &LInfinityStructure, degree: usize, preferred: &[Cochain]) -> Result<bool> {
        if self.working_truncation.is_some() || preferred.is_empty() {
            return Ok(false);
        }
        let Some(parity) = preferred[0].parity() else { return Ok(false) };
        let Some(entry) = self.degrees.iter_mut().find(|e| e.degree == degree) else { return Ok(false) };
        if preferred.len() != entry.h.get(parity) || preferred.iter().any(|c| c.parity() != Some(parity)) {
            return Ok(false);
        }
        if !independent_classes(d, preferred)? {
            return Ok(false);
        }
        let mut reps: Vec<Cochain> = entry.representatives.iter().filter(|c| c.parity() != Some(parity)).cloned().collect();
        reps.extend(preferred.iter().cloned());
        reps.sort_by_key(|c| c.parity().map(|p| p.bit()));
        entry.representatives = reps;
        Ok(true)
    }
}

/// Whether the given homogeneous cochains (same degree) are `D`-cocycles for
/// the leading term of `d` that stay independent modulo coboundaries.
pub fn independent_classes(d: &LInfinityStructure, classes: &[Cochain]) -> Result<bool> {
    let lead = d.leading_term().ok_or(Error::ZeroStructure)?;
    let n_lead = lead.degree().expect("nonzero");
    let Some(first) = classes.iter().find_map(|c| c.degree()) else { return Ok(classes.is_empty()) };
    let degree = first;
    if classes.iter().any(|c| c.degree().is_some_and(|k| k != degree)) {
        return Err(Error::NotHomogeneous);
    }
    let space = *d.space();
    for c in classes {
        if c.is_zero() || !bracket(c, lead)?.is_zero() {
            return Ok(false);
        }
    }
    let mut e = Echelon::new();
    for parity in [Parity::Even, Parity::Odd] {
        if degree + 1 > n_lead {
            let source_degree = degree + 1 - n_lead;
            for b in cochain_basis(&space, source_degree, parity.flip()) {
                e.insert(full_vector(&space, degree, &bracket(&Cochain::basis(space, b), lead)?));
            }
        }
    }
    for c in classes {
        if !matches!(e.insert(full_vector(&space, degree, c)), Insert::Pivot(_)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coordinates of a degree-`n` cochain of either parity: even basis first.
fn full_vector(space: &GradedSpace, degree: usize, c: &Cochain) -> SparseVec {
    let mut basis = cochain_basis(space, degree, Parity::Even);
    basis.extend(cochain_basis(space, degree, Parity::Odd));
    linalg::sparse(&c.coordinates(&basis))
}

fn require_codifferential(d: &LInfinityStructure) -> Result<usize> {
    let n = d.leading_degree().ok_or(Error::ZeroStructure)?;
    match is_codifferential(d)? {
        SquareZero::Yes => Ok(n),
        SquareZero::No { degree, .. } => Err(Error::NotSquareZero { degree }),
    }
}

/// The default range `1..=m+6` for a degree-`m+2` leading term.
pub fn default_range(d: &LInfinityStructure) -> RangeInclusive<usize> {
    let n = d.leading_degree().unwrap_or(1);
    1..=(n + 4).max(2)
}

/// Cohomology of `D = [·, d]` over the given degrees.
pub fn cohomology(d: &LInfinityStructure, degrees: RangeInclusive<usize>) -> Result<CohomologyReport> {
    let n_lead = require_codifferential(d)?;
    if d.is_homogeneous() {
        graded_cohomology(d, n_lead, degrees)
    } else {
        let working = working_degree(d, n_lead, *degrees.end())?;
        filtered_cohomology(d, n_lead, degrees, working)
    }
}

/// Where to cut the cochain space so that degrees up to `top` are unaffected.
fn working_degree(d: &LInfinityStructure, n_lead: usize, top: usize) -> Result<usize> {
    let spread = d.max_degree().expect("nonzero") - n_lead;
    let wanted = top + 2 * spread + 4;
    // Past its truncation d is only trusted if, read as a finite sum, it
    // stays square-zero far enough for D² = 0 on the whole working space.
    let exact = d.truncation() >= wanted
        || self_bracket(&d.truncated(wanted + n_lead - 1), wanted + 2 * n_lead - 2)?.is_empty();
    let working = if exact { wanted } else { (d.truncation() + 1).saturating_sub(n_lead) };
    if working < top {
        return Err(Error::TruncationTooSmall { truncation: d.truncation(), needed: top + n_lead - 1 });
    }
    Ok(working)
}

fn graded_cohomology(
    d: &LInfinityStructure,
    n_lead: usize,
    degrees: RangeInclusive<usize>,
) -> Result<CohomologyReport> {
    let mut blocks: BTreeMap<usize, DegreeBlockMatrix> = BTreeMap::new();
    let mut block = |n: usize| -> Result<DegreeBlockMatrix> {
        if let Some(b) = blocks.get(&n) {
            return Ok(b.clone());
        }
        let b = DegreeBlockMatrix::new(d, n)?;
        blocks.insert(n, b.clone());
        Ok(b)
    };
    let mut out = Vec::new();
    for n in degrees {
        if n == 0 {
            continue;
        }
        let here = block(n)?;
        let incoming = if n + 1 > n_lead { Some(block(n + 1 - n_lead)?) } else { None };
        let mut z = GradedDim::ZERO;
        let mut h = GradedDim::ZERO;
        let mut representatives = Vec::new();
        for parity in [Parity::Even, Parity::Odd] {
            let basis = here.source_basis(parity).to_vec();
            let coords = |c: &Cochain| linalg::sparse(&c.coordinates(&basis));
            let kernel = here.kernel(parity);
            z.set(parity, kernel.len());
            let mut e = Echelon::new();
            if let Some(inc) = &incoming {
                for img in inc.images(parity.flip()) {
                    e.insert(coords(&img));
                }
            }
            let boundaries = e.rank();
            for k in &kernel {
                if let Insert::Pivot(_) = e.insert(coords(k)) {
                    representatives.push(k.clone());
                }
            }
            h.set(parity, kernel.len() - boundaries);
        }
        out.push(DegreeCohomology { degree: n, z, b: here.image_dim(), h, representatives });
    }
    Ok(CohomologyReport { leading_degree: n_lead, working_truncation: None, degrees: out })
}

/// Filtered cohomology with the cochain space cut at `working` (which must
/// exceed the requested range by enough that truncation effects do not reach
/// back into it).
pub fn filtered_cohomology(
    d: &LInfinityStructure,
    n_lead: usize,
    degrees: RangeInclusive<usize>,
    working: usize,
) -> Result<CohomologyReport> {
    let space = *d.space();
    let top = *degrees.end();
    if working < top {
        return Err(Error::TruncationTooSmall { truncation: working, needed: top });
    }
    let target_top = working + n_lead - 1;
    let (coords, columns) = filtered_columns(d, n_lead, working)?;

    let mut per_degree: BTreeMap<usize, DegreeCohomology> = degrees
        .filter(|&n| n > 0)
        .map(|n| {
            let empty = DegreeCohomology {
                degree: n,
                z: GradedDim::ZERO,
                b: GradedDim::ZERO,
                h: GradedDim::ZERO,
                representatives: Vec::new(),
            };
            (n, empty)
        })
        .collect();

    for p in [Parity::Even, Parity::Odd] {
        let here = &coords[p.bit() as usize];
        let cols = &columns[p.bit() as usize];

        // rank of D on cochains with leading degree ≥ n, for decreasing n
        let mut order: Vec<usize> = (0..cols.len()).collect();
        order.sort_by_key(|&j| core::cmp::Reverse(here.degree_of(j)));
        let mut rank_from: BTreeMap<usize, usize> = BTreeMap::new();
        let mut images = Echelon::new();
        for j in order {
            images.insert(cols[j].clone());
            rank_from.insert(here.degree_of(j), images.rank());
        }
        for (n, entry) in per_degree.iter_mut() {
            let above = rank_from.range(n + 1..).next().map(|(_, r)| *r).unwrap_or(0);
            let at = rank_from.get(n).copied().unwrap_or(above);
            entry.b.set(p.flip(), at - above);
        }

        // coboundaries of parity p, by leading degree
        let mut classes = Echelon::new();
        for v in &columns[p.flip().bit() as usize] {
            classes.insert(v.clone());
        }
        let mut landing: BTreeMap<usize, usize> = BTreeMap::new();
        for q in classes.pivots() {
            *landing.entry(here.degree_of(q)).or_default() += 1;
        }

        // cocycles of parity p, by leading degree
        let mut cocycles = Echelon::new();
        for k in linalg::kernel(cols) {
            cocycles.insert(k);
        }
        for q in cocycles.pivots() {
            if let Some(entry) = per_degree.get_mut(&here.degree_of(q)) {
                let z = entry.z.get(p) + 1;
                entry.z.set(p, z);
            }
        }
        for (n, entry) in per_degree.iter_mut() {
            let h = entry.z.get(p).checked_sub(landing.get(n).copied().unwrap_or(0));
            entry.h.set(p, h.ok_or(Error::TruncationTooSmall { truncation: working, needed: target_top })?);
        }

        // each cocycle that is new modulo coboundaries names a class
        let rows: Vec<SparseVec> = cocycles.rows().cloned().collect();
        for row in rows {
            if let Insert::Pivot(q) = classes.insert(row) {
                if let Some(entry) = per_degree.get_mut(&here.degree_of(q)) {
                    entry.representatives.push(here.leading(space, classes.row(q).expect("new pivot")));
                }
            }
        }
    }
    for entry in per_degree.values_mut() {
        entry.representatives.sort_by_key(|c| c.parity().map(|p| p.bit()));
    }
    Ok(CohomologyReport {
        leading_degree: n_lead,
        working_truncation: Some(working),
        degrees: per_degree.into_values().collect(),
    })
}

/// Coordinates on degrees `1..=working+n_lead-1` of each parity and the
/// columns of the full `D` on sources of degree at most `working`.
fn filtered_columns(
    d: &LInfinityStructure,
    n_lead: usize,
    working: usize,
) -> Result<([Coordinates; 2], [Vec<SparseVec>; 2])> {
    let space = *d.space();
    // Conditions in degrees above this involve sources beyond the cut.
    let target_top = working + n_lead - 1;
    let d = d.truncated(d.truncation().max(target_top));
    let coords = [
        Coordinates::new(&space, 1..=target_top, Parity::Even),
        Coordinates::new(&space, 1..=target_top, Parity::Odd),
    ];
    let source_len = |p: Parity| coords[p.bit() as usize].basis.iter().take_while(|b| b.degree() <= working).count();
    let mut columns: [Vec<SparseVec>; 2] = [Vec::new(), Vec::new()];
    for p in [Parity::Even, Parity::Odd] {
        let src = &coords[p.bit() as usize];
        let tgt = &coords[p.flip().bit() as usize];
        columns[p.bit() as usize] = src.basis[..source_len(p)]
            .iter()
            .map(|b| {
                let mut v = SparseVec::new();
                for c in full_coboundary(&d, &Cochain::basis(space, b.clone()))?.values() {
                    v.extend(tgt.vector(c));
                }
                Ok(v)
            })
            .collect::<Result<_>>()?;
    }
    Ok((coords, columns))
}

/// Whether mixed-degree cochains, each given by its homogeneous parts of one
/// parity, are cocycles for the whole of `d` whose leading terms stay
/// independent in the filtered cohomology: no nonzero combination lies in
/// the coboundaries plus the cocycles of higher leading degree. All classes
/// must share their leading degree.
pub fn independent_filtered_classes(d: &LInfinityStructure, classes: &[Vec<Cochain>]) -> Result<bool> {
    let n_lead = require_codifferential(d)?;
    let mut leading = None;
    let mut top = 0;
    for parts in classes {
        let degrees: Vec<usize> = parts.iter().filter_map(|c| c.degree()).collect();
        let Some(&low) = degrees.iter().min() else { return Ok(false) };
        if *leading.get_or_insert(low) != low {
            return Err(Error::NotHomogeneous);
        }
        top = top.max(*degrees.iter().max().expect("nonempty"));
        if !mixed_coboundary(d, parts)?.is_empty() {
            return Ok(false);
        }
    }
    let Some(n) = leading else { return Ok(true) };
    let working = working_degree(d, n_lead, top)?;
    let (coords, columns) = filtered_columns(d, n_lead, working)?;
    for p in [Parity::Even, Parity::Odd] {
        let here = &coords[p.bit() as usize];
        let mine: Vec<&Vec<Cochain>> =
            classes.iter().filter(|parts| parts.iter().any(|c| c.parity() == Some(p))).collect();
        if mine.is_empty() {
            continue;
        }
        let mut e = Echelon::new();
        for v in &columns[p.flip().bit() as usize] {
            e.insert(v.clone());
        }
        let mut cocycles = Echelon::new();
        for k in linalg::kernel(&columns[p.bit() as usize]) {
            cocycles.insert(k);
        }
        for q in cocycles.pivots().filter(|&q| here.degree_of(q) > n) {
            e.insert(cocycles.row(q).expect("pivot").clone());
        }
        for parts in mine {
            let mut v = SparseVec::new();
            for c in parts {
                if c.parity() != Some(p) {
                    return Err(Error::MixedParity(p, p.flip()));
                }
                v.extend(here.vector(c));
            }
            if !matches!(e.insert(v), Insert::Pivot(_)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `D` of a mixed-degree cochain under every component of `d`, with the
/// vanishing degrees left out.
pub fn mixed_coboundary(d: &LInfinityStructure, parts: &[Cochain]) -> Result<BTreeMap<usize, Cochain>> {
    let mut out: BTreeMap<usize, Cochain> = BTreeMap::new();
    for c in parts {
        for (k, b) in full_coboundary(d, c)? {
            let sum = match out.remove(&k) {
                Some(acc) => acc.checked_add(&b)?,
                None => b,
            };
            if !sum.is_zero() {
                out.insert(k, sum);
            }
        }
    }
    Ok(out)
}

/// Odd classes in the given degrees: the directions of the universal
/// infinitesimal deformation.
pub fn deformation_directions(d: &LInfinityStructure, degrees: RangeInclusive<usize>) -> Result<Vec<Cochain>> {
    let report = cohomology(d, degrees)?;
    Ok(report
        .degrees
        .into_iter()
        .flat_map(|e| e.representatives.into_iter().filter(|c| c.parity() == Some(Parity::Odd)))
        .collect())
}
