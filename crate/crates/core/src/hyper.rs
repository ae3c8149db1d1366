//! Terminating Gauss hypergeometric evaluation in exact rational-function
//! arithmetic, and the ordinary generating functions built from it. The 2F1
//! parameters here are rational functions of t with poles at t = 0 that
//! cancel only in the reduced sum, so every term is carried as a reduced
//! polynomial quotient and the series expansion happens last.

use num_traits::{One, Zero};

use crate::comb::{binomial, rising_factorial};
use crate::poly::{Poly, RationalFunction};
use crate::rational::{factorial, pow_u, rat, Rat};
use crate::series::TruncatedSeries;
use crate::whitney::WhitneyParams;
use crate::{Error, Result};

/// Rising factorial of a rational function: f (f+1) ... (f+k-1).
pub fn rf_pochhammer(f: &RationalFunction, k: u32) -> RationalFunction {
    let mut acc = RationalFunction::constant(Rat::one());
    for i in 0..k {
        acc = &acc * &(f + &RationalFunction::constant(rat(i as i64)));
    }
    acc
}

/// Terminating 2F1(a, -x; c | z) with rational-function parameters a and c:
/// sum_{k=0}^{x} <a>_k <-x>_k / <c>_k * z^k / k!, as one reduced quotient.
/// Rejects parameters whose retained terms divide by an identically zero
/// Pochhammer product.
pub fn hyp2f1_terminating(
    a: &RationalFunction,
    xdeg: u32,
    c: &RationalFunction,
    z: &Rat,
) -> Result<RationalFunction> {
    let minus_x = rat(-(xdeg as i64));
    let mut acc = RationalFunction::constant(Rat::zero());
    for k in 0..=xdeg {
        let upper_scalar = rising_factorial(&minus_x, k);
        if upper_scalar.is_zero() {
            break;
        }
        let denom = rf_pochhammer(c, k);
        if denom.is_zero() {
            return Err(Error::Domain(format!(
                "lower Pochhammer <c>_{k} is identically zero"
            )));
        }
        let scalar = upper_scalar * pow_u(z, k) / factorial(k);
        let term = &(&rf_pochhammer(a, k) / &denom) * &RationalFunction::constant(scalar);
        acc = &acc + &term;
    }
    Ok(acc)
}

/// Scalar terminating 2F1(a, -x; c | z) with constant parameters.
pub fn hyp2f1_scalar(a: &Rat, xdeg: u32, c: &Rat, z: &Rat) -> Result<Rat> {
    let f = hyp2f1_terminating(
        &RationalFunction::constant(a.clone()),
        xdeg,
        &RationalFunction::constant(c.clone()),
        z,
    )?;
    Ok(f.num().coeff(0) / f.den().coeff(0))
}

/// Pfaff transformation on a terminating instance:
/// (1 - z)^x 2F1(-x, c - a; c | z/(z-1)) = 2F1(a, -x; c | z).
pub fn pfaff_holds(a: &Rat, c: &Rat, xdeg: u32, z: &Rat) -> Result<bool> {
    if z.is_one() {
        return Err(Error::Domain("z = 1 makes the transformed argument singular".into()));
    }
    let rhs = hyp2f1_scalar(a, xdeg, c, z)?;
    let zt = z / (z - Rat::one());
    // the roles swap: -x stays an upper parameter, the other upper is c - a
    let lhs = pow_u(&(Rat::one() - z), xdeg) * hyp2f1_scalar(&(c - a), xdeg, c, &zt)?;
    Ok(lhs == rhs)
}

/// The t-dependent 2F1 parameters of the OGF: a = (rt - 1)/(mt) and
/// c = ((m + r)t - 1)/(mt).
fn ogf_parameters(params: &WhitneyParams) -> (RationalFunction, RationalFunction) {
    let mt = Poly::monomial(params.m().clone(), 1);
    let a = RationalFunction::new(
        &Poly::monomial(params.r().clone(), 1) - &Poly::constant(Rat::one()),
        mt.clone(),
    );
    let c = RationalFunction::new(
        &Poly::monomial(params.m() + params.r(), 1) - &Poly::constant(Rat::one()),
        mt,
    );
    (a, c)
}

/// OGF of the Whitney column k as a rational function of t:
/// 1/(m^k (1 - rt)) * (-1)^k / <((m+r)t - 1)/(mt)>_k, with coefficient n
/// equal to W_{m,r}(n, k).
pub fn whitney_ogf(params: &WhitneyParams, k: u32) -> RationalFunction {
    let (_, c) = ogf_parameters(params);
    let mut sign = Rat::one();
    if k % 2 == 1 {
        sign = -sign;
    }
    let front = RationalFunction::new(
        Poly::constant(sign / pow_u(params.m(), k)),
        &Poly::constant(Rat::one()) - &Poly::monomial(params.r().clone(), 1),
    );
    &front / &rf_pochhammer(&c, k)
}

/// OGF of the bivariate r-Dowling polynomials via the terminating 2F1:
/// 1/(1 - rt) ((m - y)/m)^x 2F1(a, -x; c | y/(y - m)), expanded at t = 0.
/// Requires y != m; the reduced function must be pole-free at 0.
pub fn ogf_hypergeometric(
    params: &WhitneyParams,
    x: u32,
    y: &Rat,
    order: u32,
) -> Result<TruncatedSeries> {
    if y == params.m() {
        return Err(Error::Domain("y = m makes the 2F1 argument singular".into()));
    }
    let (a, c) = ogf_parameters(params);
    let z = y / (y - params.m());
    let f = hyp2f1_terminating(&a, x, &c, &z)?;
    let front = RationalFunction::new(
        Poly::constant(pow_u(&((params.m() - y) / params.m()), x)),
        &Poly::constant(Rat::one()) - &Poly::monomial(params.r().clone(), 1),
    );
    let assembled = &front * &f;
    Ok(TruncatedSeries::new(assembled.series_at_zero(order)?))
}

/// Partial-fraction oracle for the same OGF, straight from the explicit
/// formula: coefficient n is sum_i C(x,i) (y/m)^i (1 - y/m)^(x-i) (mi+r)^n.
/// Valid at y = m too (the sum collapses to the single i = x term).
pub fn ogf_partial_fractions(
    params: &WhitneyParams,
    x: u32,
    y: &Rat,
    order: u32,
) -> TruncatedSeries {
    let w = y / params.m();
    let weights: Vec<(Rat, Rat)> = (0..=x)
        .map(|i| {
            (
                binomial(x, i) * pow_u(&w, i) * pow_u(&(Rat::one() - &w), x - i),
                params.m() * rat(i as i64) + params.r(),
            )
        })
        .collect();
    let coeffs = (0..=order)
        .map(|n| {
            weights
                .iter()
                .map(|(weight, base)| weight * pow_u(base, n))
                .sum()
        })
        .collect();
    TruncatedSeries::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dowling::{dowling_from_table, eval_poly};
    use crate::rational::ratio;
    use crate::whitney::{whitney_explicit, WhitneyTable};

    fn params(m: i64, r: i64) -> WhitneyParams {
        WhitneyParams::new(rat(m), rat(r)).unwrap()
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(
            Poly::new(num.iter().map(|&c| rat(c)).collect()),
            Poly::new(den.iter().map(|&c| rat(c)).collect()),
        )
    }

    #[test]
    fn pochhammer_examples() {
        let one = RationalFunction::constant(rat(1));
        assert!(rf_pochhammer(&one, 3).equals(&RationalFunction::constant(rat(6))));
        let f = rf(&[-1, 1], &[0, 1]); // (t - 1)/t
        assert!(rf_pochhammer(&f, 1).equals(&f));
        // (t-1)/(2t) * (3t-1)/(2t) = (t-1)(3t-1)/(4t^2)
        let g = rf(&[-1, 1], &[0, 2]);
        let expected = rf(&[1, -4, 3], &[0, 0, 4]);
        assert!(rf_pochhammer(&g, 2).equals(&expected));
    }

    #[test]
    fn hyp2f1_examples() {
        let a = rf(&[-1, 1], &[0, 2]);
        let c = rf(&[-1, 3], &[0, 2]);
        // xdeg = 0 keeps only the unit term
        assert!(hyp2f1_terminating(&a, 0, &c, &rat(5))
            .unwrap()
            .equals(&RationalFunction::constant(rat(1))));
        // single k = 1 term: 1 + a/c * <-1>_1 * (-1) = 1 + a/c
        let f = hyp2f1_terminating(&a, 1, &c, &rat(-1)).unwrap();
        let expected = &RationalFunction::constant(rat(1)) + &(&a / &c);
        assert!(f.equals(&expected));
        // scalar sanity: 2F1(2, -1; 4 | 1) = 1 - 2/4
        assert_eq!(hyp2f1_scalar(&rat(2), 1, &rat(4), &rat(1)).unwrap(), ratio(1, 2));
        // identically-zero lower Pochhammer is rejected
        let zero_c = RationalFunction::constant(rat(0));
        assert!(hyp2f1_terminating(&a, 1, &zero_c, &rat(1)).is_err());
    }

    #[test]
    fn whitney_ogf_matches_triangle() {
        for (m, r) in [(1i64, 0i64), (2, 1), (3, 2)] {
            let p = params(m, r);
            for k in 0..=4u32 {
                let series = whitney_ogf(&p, k).series_at_zero(8).unwrap();
                for (n, got) in series.iter().enumerate() {
                    let n = n as u32;
                    let expected = if n < k {
                        Rat::zero()
                    } else {
                        whitney_explicit(&p, n, k)
                    };
                    assert_eq!(got, &expected, "W_{{{m},{r}}} OGF column {k} coeff {n}");
                }
            }
        }
    }

    #[test]
    fn ogf_examples() {
        // closed form (1 - 2t)/((1 - t)(1 - 3t)): coefficients (1 + 3^n)/2
        let s = ogf_hypergeometric(&params(2, 1), 1, &rat(1), 3).unwrap();
        assert_eq!(s.coeffs(), &[rat(1), rat(2), rat(5), rat(14)]);
        let pf = ogf_partial_fractions(&params(2, 1), 1, &rat(1), 3);
        assert_eq!(pf.coeffs(), s.coeffs());
        // x = 0: geometric series of 1/(1 - rt)
        let s = ogf_hypergeometric(&params(2, 3), 0, &rat(1), 3).unwrap();
        assert_eq!(s.coeffs(), &[rat(1), rat(3), rat(9), rat(27)]);
        // corollary case m=1, r=0, x=1: y=1 hits the pole y = m, so the
        // all-ones sequence comes from the partial-fraction route
        let pf = ogf_partial_fractions(&params(1, 0), 1, &rat(1), 3);
        assert_eq!(pf.coeffs(), &[rat(1), rat(1), rat(1), rat(1)]);
        let s = ogf_hypergeometric(&params(1, 0), 1, &ratio(1, 2), 3).unwrap();
        assert_eq!(s.coeffs(), &[rat(1), ratio(1, 2), ratio(1, 2), ratio(1, 2)]);
        // y = m rejected on the 2F1 route, fine on the partial-fraction route
        assert!(ogf_hypergeometric(&params(2, 1), 1, &rat(2), 3).is_err());
        let pf = ogf_partial_fractions(&params(2, 1), 1, &rat(2), 2);
        assert_eq!(pf.coeffs(), &[rat(1), rat(3), rat(9)]);
    }

    #[test]
    fn ogf_routes_agree_with_direct_values() {
        for (m, r) in [(1i64, 0i64), (2, 1), (3, 2)] {
            let p = params(m, r);
            let table = WhitneyTable::build(&p, 6);
            for x in 0..=3u32 {
                for y in [ratio(1, 2), rat(1), rat(3)] {
                    let pf = ogf_partial_fractions(&p, x, &y, 6);
                    for n in 0..=6u32 {
                        let direct =
                            eval_poly(&dowling_from_table(&table, n), &rat(x as i64), &y);
                        assert_eq!(pf.coeff(n), &direct);
                    }
                    if &y != p.m() {
                        let hy = ogf_hypergeometric(&p, x, &y, 6).unwrap();
                        assert_eq!(hy.coeffs(), pf.coeffs());
                    }
                }
            }
        }
    }

    #[test]
    fn pfaff_small_instances() {
        assert!(pfaff_holds(&ratio(1, 2), &ratio(5, 3), 3, &ratio(2, 7)).unwrap());
        assert!(pfaff_holds(&rat(2), &rat(4), 1, &ratio(-1, 2)).unwrap());
        assert!(pfaff_holds(&ratio(-3, 4), &ratio(7, 2), 4, &rat(3)).unwrap());
        assert!(pfaff_holds(&rat(1), &rat(2), 2, &rat(1)).is_err());
    }
}
