//! Named codifferentials on the 1|2 space.
//!
//! Degree-`m+2` families (`m ≥ 0`):
//!
//! | name | leading term |
//! |------|--------------|
//! | `d_∞` | `ψ^{1,1,m}_1` |
//! | `d_λ` | `ψ^{0,1,m+1}_3 + λψ^{1,1,m}_1` |
//! | `d_*` | `ψ^{0,0,m+2}_1` |
//! | `d_#` | `ψ^{0,1,m+1}_3 + ψ^{0,0,m+2}_1 − (m+2)ψ^{1,1,m}_1` |
//!
//! plus the two degree-1 classes and the extensions `d_{λ,e}`, `d_{∞,n,e}`.

use crate::calculus::is_codifferential;
use crate::cochain::{Cochain, LInfinityStructure};
use crate::error::{Error, Result};
use crate::graded::GradedSpace;
use crate::rational::{int, Rational};

fn space() -> GradedSpace {
    GradedSpace::one_two()
}

fn e(m: usize) -> u32 {
    m as u32
}

fn single(c: Cochain, truncation: usize) -> LInfinityStructure {
    LInfinityStructure::from_cochains(space(), [c], truncation).expect("family members are odd")
}

pub fn d0_cochain() -> Cochain {
    Cochain::from_exponents(space(), &[(&[1, 0, 0], 3, int(1))]).expect("odd")
}

pub fn deg1_star_cochain() -> Cochain {
    Cochain::from_exponents(space(), &[(&[0, 0, 1], 1, int(1))]).expect("odd")
}

pub fn infinity_cochain(m: usize) -> Cochain {
    Cochain::from_exponents(space(), &[(&[1, 1, e(m)], 1, int(1))]).expect("odd")
}

pub fn lambda_cochain(m: usize, lambda: &Rational) -> Cochain {
    Cochain::from_exponents(space(), &[(&[0, 1, e(m) + 1], 3, int(1)), (&[1, 1, e(m)], 1, lambda.clone())]).expect("odd")
}

pub fn star_cochain(m: usize) -> Cochain {
    Cochain::from_exponents(space(), &[(&[0, 0, e(m) + 2], 1, int(1))]).expect("odd")
}

pub fn sharp_cochain(m: usize) -> Cochain {
    Cochain::from_exponents(
        space(),
        &[
            (&[0, 1, e(m) + 1], 3, int(1)),
            (&[0, 0, e(m) + 2], 1, int(1)),
            (&[1, 1, e(m)], 1, -int(m as i64 + 2)),
        ],
    )
    .expect("odd")
}

pub fn d0(truncation: usize) -> LInfinityStructure {
    single(d0_cochain(), truncation)
}

pub fn deg1_star(truncation: usize) -> LInfinityStructure {
    single(deg1_star_cochain(), truncation)
}

pub fn d_infinity(m: usize, truncation: usize) -> LInfinityStructure {
    single(infinity_cochain(m), truncation)
}

pub fn d_lambda(m: usize, lambda: &Rational, truncation: usize) -> LInfinityStructure {
    single(lambda_cochain(m, lambda), truncation)
}

pub fn d_star(m: usize, truncation: usize) -> LInfinityStructure {
    single(star_cochain(m), truncation)
}

pub fn d_sharp(m: usize, truncation: usize) -> LInfinityStructure {
    single(sharp_cochain(m), truncation)
}

fn check_pair(m: usize, n: usize) -> Result<()> {
    if n <= m {
        return Err(Error::Parameter(alloc::format!("need n > m, got m = {m}, n = {n}")));
    }
    Ok(())
}

fn assert_square_zero(d: LInfinityStructure) -> Result<LInfinityStructure> {
    match is_codifferential(&d)? {
        crate::calculus::SquareZero::Yes => Ok(d),
        crate::calculus::SquareZero::No { degree, .. } => Err(Error::NotSquareZero { degree }),
    }
}

/// `ψ^{0,1,m+1}_3 − (n+2)ψ^{1,1,m}_1 + ψ^{0,0,n+2}_1`, i.e. `d_λ` at
/// `λ = −(n+2)` extended by the class `ψ^{0,0,n+2}_1`.
pub fn build_d_lambda_e(m: usize, n: usize, truncation: usize) -> Result<LInfinityStructure> {
    check_pair(m, n)?;
    let lead = lambda_cochain(m, &-int(n as i64 + 2));
    let tail = Cochain::from_exponents(space(), &[(&[0, 0, e(n) + 2], 1, int(1))])?;
    let truncation = truncation.max(n + 2);
    assert_square_zero(LInfinityStructure::from_cochains(space(), [lead, tail], truncation)?)
}

/// `ψ^{1,1,m}_1 + ψ^{0,1,n+1}_3 + a·ψ^{0,1,2n−m+1}_3`; `a = 0` gives `d_{∞,n}`.
pub fn build_d_infty_ext(m: usize, n: usize, a: &Rational, truncation: usize) -> Result<LInfinityStructure> {
    check_pair(m, n)?;
    let top = 2 * n - m + 2;
    let mut parts = alloc::vec![
        infinity_cochain(m),
        Cochain::from_exponents(space(), &[(&[0, 1, e(n) + 1], 3, int(1))])?,
    ];
    parts.push(Cochain::from_exponents(space(), &[(&[0, 1, e(top) - 1], 3, a.clone())])?);
    let truncation = truncation.max(top);
    assert_square_zero(LInfinityStructure::from_cochains(space(), parts, truncation)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn family_members_are_codifferentials() {
        for m in 0..4 {
            for d in [
                d_infinity(m, m + 6),
                d_lambda(m, &frac(1, 2), m + 6),
                d_lambda(m, &int(-3), m + 6),
                d_star(m, m + 6),
                d_sharp(m, m + 6),
            ] {
                assert!(is_codifferential(&d).unwrap().holds(), "{m}");
                assert_eq!(d.leading_degree(), Some(m + 2));
            }
        }
        assert!(is_codifferential(&d0(4)).unwrap().holds());
        assert!(is_codifferential(&deg1_star(4)).unwrap().holds());
    }

    #[test]
    fn extensions() {
        for m in 0..3 {
            for n in m + 1..=m + 3 {
                let d = build_d_lambda_e(m, n, 0).unwrap();
                assert_eq!(d.components().count(), 2);
                for a in [int(0), int(1), int(2)] {
                    let d = build_d_infty_ext(m, n, &a, 0).unwrap();
                    assert_eq!(d.max_degree(), Some(if a == int(0) { n + 2 } else { 2 * n - m + 2 }));
                }
            }
        }
        assert!(matches!(build_d_lambda_e(2, 2, 8), Err(Error::Parameter(_))));
        assert!(matches!(build_d_infty_ext(3, 1, &int(1), 8), Err(Error::Parameter(_))));
    }
}
