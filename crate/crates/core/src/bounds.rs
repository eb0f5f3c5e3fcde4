//! Exact arithmetic for the approximation-ratio polynomials.
//!
//! The ratio analysis of the matching-finish solver reduces to the
//! nonnegativity of a quadratic-in-`i` expression `g(i, k, ell)` over the
//! integer domain `3 <= ell`, `1 <= k <= ell - 1`, `k <= i <= ell`. This
//! module evaluates the rational per-block coefficient `f`, its integer
//! numerator `g = 4*ell*(ell-1)*(ell-2) * f`, and scans the whole grid with
//! 128-bit checked arithmetic; there is no floating point anywhere here.

use num_rational::Ratio;
use rayon::prelude::*;
use thiserror::Error;

pub type Rat = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("arguments out of domain: need 3 <= ell, 1 <= k <= i <= ell; got i={i}, k={k}, ell={ell}")]
pub struct DomainError {
    pub i: i64,
    pub k: i64,
    pub ell: i64,
}

fn check_domain(i: i64, k: i64, ell: i64) -> Result<(), DomainError> {
    if ell < 3 || k < 1 || k > i || i > ell {
        Err(DomainError { i, k, ell })
    } else {
        Ok(())
    }
}

fn binom2(x: i128) -> i128 {
    x * (x - 1) / 2
}

/// The rational per-block coefficient:
///
/// ```text
/// f(i,k,ell) = ((ell-k)*C(ell-1,2) - k + 1) / (2*C(ell-1,2)) * (i-k)
///            + (C(ell-1,2) + 1) / (2*C(ell-1,2)) * (2i-k)(k-1)/2
///            - (C(ell,2) + 1) / (2*C(ell,2)) * C(i,2)
/// ```
pub fn f_value(i: i64, k: i64, ell: i64) -> Result<Rat, DomainError> {
    check_domain(i, k, ell)?;
    let (i, k, ell) = (i as i128, k as i128, ell as i128);
    let c_prev = binom2(ell - 1);
    let c = binom2(ell);
    let term1 = Ratio::new((ell - k) * c_prev - k + 1, 2 * c_prev) * Ratio::from_integer(i - k);
    let term2 = Ratio::new(c_prev + 1, 2 * c_prev) * Ratio::new((2 * i - k) * (k - 1), 2);
    let term3 = Ratio::new(c + 1, 2 * c) * Ratio::from_integer(binom2(i));
    Ok(term1 + term2 - term3)
}

/// The integer numerator of `f` over the common denominator
/// `4*ell*(ell-1)*(ell-2)`:
///
/// ```text
/// g(i,k,ell) = (-ell^3 + 3ell^2 - 4ell + 4) i^2
///            + (2ell^4 - 7ell^3 + 7ell^2 - 4) i
///            + ell*k*(-2ell^3 + ell^2*k + 7ell^2 - 3ell*k - 7ell + 4k)
/// ```
///
/// Evaluated with checked 128-bit arithmetic; panics on overflow, which
/// cannot happen for `ell` up to ten million.
pub fn g_value(i: i64, k: i64, ell: i64) -> i128 {
    let (i, k, ell) = (i as i128, k as i128, ell as i128);
    let quad = -ell * ell * ell + 3 * ell * ell - 4 * ell + 4;
    let lin = 2 * ell * ell * ell * ell - 7 * ell * ell * ell + 7 * ell * ell - 4;
    let konst = ell
        .checked_mul(k)
        .and_then(|lk| {
            let inner = -2 * ell * ell * ell + ell * ell * k + 7 * ell * ell
                - 3 * ell * k
                - 7 * ell
                + 4 * k;
            lk.checked_mul(inner)
        })
        .expect("constant term overflow");
    quad.checked_mul(i * i)
        .and_then(|a| a.checked_add(lin.checked_mul(i).expect("linear term overflow")))
        .and_then(|a| a.checked_add(konst))
        .expect("g overflow")
}

/// The denominator relating `f` and `g`.
pub fn f_denominator(ell: i64) -> i128 {
    let ell = ell as i128;
    4 * ell * (ell - 1) * (ell - 2)
}

/// Coefficients `(A, B, C)` of `g(ell, k, ell)` as a quadratic in `k`.
pub fn end_quadratic(ell: i64) -> (i128, i128, i128) {
    let l = ell as i128;
    // g(ell, k, ell) = A k^2 + B k + C with
    //   A = ell^3 - 3 ell^2 + 4 ell
    //   B = -2 ell^4 + 7 ell^3 - 7 ell^2
    //   C = ell^5 - 4 ell^4 + 3 ell^3 + 4 ell^2 - 4 ell
    let a = l * l * l - 3 * l * l + 4 * l;
    let b = -2 * l * l * l * l + 7 * l * l * l - 7 * l * l;
    let c = l * l * l * l * l - 4 * l * l * l * l + 3 * l * l * l + 4 * l * l - 4 * l;
    (a, b, c)
}

/// Closed form of the second root of `g(ell, k, ell)` in `k`:
/// `(ell-2)^2 (ell+1) / (ell^2 - 3 ell + 4)`. The first root is `ell - 1`.
pub fn k2_closed_form(ell: i64) -> Rat {
    let l = ell as i128;
    Ratio::new((l - 2) * (l - 2) * (l + 1), l * l - 3 * l + 4)
}

/// The second root recovered from the quadratic itself: the product of the
/// roots is `C / A` and the known root is `ell - 1`.
pub fn k2_from_quadratic(ell: i64) -> Rat {
    let (a, _, c) = end_quadratic(ell);
    Ratio::new(c, a * (ell as i128 - 1))
}

/// Outcome of scanning `g` over the full integer domain up to `ell_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityGridResult {
    pub ell_max: i64,
    /// Domain points with `g < 0`. Empty if the bound analysis is sound.
    pub violations: Vec<(i64, i64, i64)>,
    /// Smallest `g` observed.
    pub min_value: i128,
    /// Number of grid points scanned.
    pub points: usize,
}

type EllScan = (Vec<(i64, i64, i64)>, i128, usize);

/// Exhaustive exact scan of `g(i, k, ell) >= 0` over
/// `3 <= ell <= ell_max`, `1 <= k <= ell - 1`, `k <= i <= ell`.
pub fn verify_inequality_grid(ell_max: i64) -> InequalityGridResult {
    assert!(ell_max >= 3, "ell_max must be at least 3");
    let per_ell: Vec<EllScan> = (3..=ell_max)
        .into_par_iter()
        .map(|ell| {
            let mut violations = Vec::new();
            let mut min_value = i128::MAX;
            let mut points = 0usize;
            for k in 1..ell {
                for i in k..=ell {
                    let v = g_value(i, k, ell);
                    points += 1;
                    if v < min_value {
                        min_value = v;
                    }
                    if v < 0 {
                        violations.push((i, k, ell));
                    }
                }
            }
            (violations, min_value, points)
        })
        .collect();
    let mut violations = Vec::new();
    let mut min_value = i128::MAX;
    let mut points = 0;
    for (v, m, p) in per_ell {
        violations.extend(v);
        min_value = min_value.min(m);
        points += p;
    }
    InequalityGridResult {
        ell_max,
        violations,
        min_value,
        points,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};

    #[test]
    fn domain_checks() {
        assert!(f_value(1, 1, 2).is_err());
        assert!(f_value(2, 3, 4).is_err());
        assert!(f_value(5, 1, 4).is_err());
        assert!(f_value(3, 1, 3).is_ok());
    }

    #[test]
    fn point_values() {
        assert!(f_value(1, 1, 3).unwrap().is_zero());
        assert_eq!(f_value(2, 2, 3).unwrap(), Ratio::new(1, 3));
        assert_eq!(g_value(2, 2, 3), 8);
        assert!(f_value(3, 2, 3).unwrap().is_zero());
        assert_eq!(g_value(3, 2, 3), 0);
    }

    #[test]
    fn g_matches_f_times_denominator() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let ell = rng.random_range(3..=60);
            let k = rng.random_range(1..=ell - 1);
            let i = rng.random_range(k..=ell);
            let f = f_value(i, k, ell).unwrap();
            let scaled = f * Ratio::from_integer(f_denominator(ell));
            assert!(scaled.is_integer(), "denominator mismatch at ({i},{k},{ell})");
            assert_eq!(scaled.to_integer(), g_value(i, k, ell));
        }
    }

    #[test]
    fn diagonal_identity() {
        for ell in 3..=40 {
            for k in 1..=ell {
                assert_eq!(g_value(k, k, ell), 4 * (k as i128) * (k as i128 - 1));
            }
        }
    }

    #[test]
    fn end_quadratic_matches_g() {
        for ell in 3..=40 {
            let (a, b, c) = end_quadratic(ell);
            for k in 1..=ell {
                let k128 = k as i128;
                assert_eq!(g_value(ell, k, ell), a * k128 * k128 + b * k128 + c);
            }
            // ell - 1 is always a root.
            assert_eq!(g_value(ell, ell - 1, ell), 0);
        }
    }

    #[test]
    fn k2_root_forms_agree() {
        for ell in 3..=200 {
            let closed = k2_closed_form(ell);
            assert_eq!(closed, k2_from_quadratic(ell), "k2 mismatch at ell={ell}");
            // Substituting the root into the quadratic gives zero.
            let (a, b, c) = end_quadratic(ell);
            let val = Ratio::from_integer(a) * closed * closed
                + Ratio::from_integer(b) * closed
                + Ratio::from_integer(c);
            assert!(val.is_zero());
        }
        assert_eq!(k2_closed_form(6), Ratio::new(112, 22));
    }

    #[test]
    fn root_ordering_by_ell() {
        for ell in 3..=200 {
            let k1 = Ratio::from_integer(ell as i128 - 1);
            let k2 = k2_closed_form(ell);
            if ell >= 6 {
                assert!(k2 > k1, "expected k2 > k1 at ell={ell}");
            } else {
                assert!(
                    Ratio::from_integer(ell as i128 - 2) <= k2 && k2 < k1,
                    "expected ell-2 <= k2 < k1 at ell={ell}"
                );
            }
        }
    }

    #[test]
    fn leading_coefficient_is_negative() {
        for ell in 3i128..=200 {
            assert!(-ell * ell * ell + 3 * ell * ell - 4 * ell + 4 < 0);
        }
    }

    #[test]
    fn concavity_puts_the_minimum_at_the_endpoints() {
        for ell in 3..=60 {
            for k in 1..ell {
                let endpoints = g_value(k, k, ell).min(g_value(ell, k, ell));
                let grid_min = (k..=ell).map(|i| g_value(i, k, ell)).min().unwrap();
                assert_eq!(grid_min, endpoints, "interior minimum at k={k}, ell={ell}");
            }
        }
    }

    #[test]
    fn small_grid_is_clean() {
        let result = verify_inequality_grid(60);
        assert!(result.violations.is_empty());
        assert_eq!(result.min_value, 0);
        // Points per ell: sum over k of (ell - k + 1) = ell(ell+1)/2 - 1.
        let expected: usize = (3..=60).map(|l: usize| l * (l + 1) / 2 - 1).sum();
        assert_eq!(result.points, expected);
    }
}
