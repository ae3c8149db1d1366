//! Univariate polynomials and their quotients over exact rationals. The
//! quotient domain is what makes the t-dependent hypergeometric parameters
//! tractable: individual terms carry poles at t = 0 that only cancel after
//! reduction, so everything is kept as reduced fractions of polynomials and
//! series-expanded at the very end.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::Rat;
use crate::{Error, Result};

/// Dense univariate polynomial over Rat, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Rat::zero());
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::new(vec![])
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// The monomial c * t^d.
    pub fn monomial(c: Rat, d: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); d + 1];
        coeffs[d] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn coeff(&self, d: usize) -> Rat {
        self.coeffs.get(d).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let dlen = divisor.coeffs.len();
        if rem.len() < dlen {
            return (Poly::zero(), self.clone());
        }
        let lead = divisor.coeffs.last().unwrap();
        let mut quot = vec![Rat::zero(); rem.len() - dlen + 1];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dlen - 1] / lead;
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let v = &q * d;
                rem[i + j] -= v;
            }
            quot[i] = q;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic GCD by the Euclidean algorithm.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let lead = a.coeffs.last().unwrap().clone();
            a.scale(&(Rat::one() / lead))
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut coeffs = vec![Rat::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Poly::new(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }
}

/// Quotient of polynomials, kept reduced (numerator and denominator
/// coprime) with the denominator's lowest nonzero coefficient scaled to 1.
#[derive(Debug, Clone)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self {
                num: Poly::zero(),
                den: Poly::constant(Rat::one()),
            };
        }
        let g = num.gcd(&den);
        let (num, _) = num.divrem(&g);
        let (den, _) = den.divrem(&g);
        let low = den
            .coeffs()
            .iter()
            .find(|c| !c.is_zero())
            .expect("nonzero denominator")
            .clone();
        let inv = Rat::one() / low;
        Self {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(Poly::constant(c), Poly::constant(Rat::one()))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(Rat::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Cross-multiplied polynomial identity.
    pub fn equals(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Taylor coefficients at t = 0 through order n, by exact long division.
    /// Requires den(0) != 0; a reduced function still singular at 0 is a
    /// genuine pole and is reported as a domain error.
    pub fn series_at_zero(&self, order: u32) -> Result<Vec<Rat>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::Domain("pole at t = 0 after reduction".into()));
        }
        let mut out = Vec::with_capacity(order as usize + 1);
        for n in 0..=order as usize {
            let mut acc = self.num.coeff(n);
            for j in 1..=n {
                let dj = self.den.coeff(j);
                if !dj.is_zero() {
                    acc -= dj * &out[n - j];
                }
            }
            out.push(acc / &d0);
        }
        Ok(out)
    }

    /// {"num": [...], "den": [...]} with `p/q` string coefficients.
    pub fn to_json(&self) -> serde_json::Value {
        let render = |p: &Poly| {
            p.coeffs()
                .iter()
                .map(crate::rational::format_rat)
                .collect::<Vec<_>>()
        };
        serde_json::json!({"num": render(&self.num), "den": render(&self.den)})
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &RationalFunction::new(-&rhs.num, rhs.den.clone())
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self * &rhs.recip()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn poly(cs: &[i64]) -> Poly {
        Poly::new(cs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn divrem_and_gcd() {
        let a = poly(&[-1, 0, 1]); // t^2 - 1
        let b = poly(&[1, 1]); // t + 1
        let (q, r) = a.divrem(&b);
        assert_eq!(q, poly(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&b), poly(&[1, 1]));
        assert_eq!(poly(&[2, 2]).gcd(&poly(&[0, 4, 4])), poly(&[1, 1]));
    }

    #[test]
    fn reduction_normalizes() {
        // (t^2 - 1)/(2t + 2) reduces to (t - 1)/2 with den lowest coeff 1
        let f = RationalFunction::new(poly(&[-1, 0, 1]), poly(&[2, 2]));
        assert_eq!(f.num(), &poly(&[-1, 1]).scale(&ratio(1, 2)));
        assert_eq!(f.den(), &poly(&[1]));
    }

    #[test]
    fn geometric_series() {
        // 1/(1 - 2t) expands to 1, 2, 4, 8
        let f = RationalFunction::new(poly(&[1]), poly(&[1, -2]));
        assert_eq!(
            f.series_at_zero(3).unwrap(),
            vec![rat(1), rat(2), rat(4), rat(8)]
        );
    }

    #[test]
    fn pole_cancellation() {
        // (t^2 + t)/t is pole-free after reduction
        let f = RationalFunction::new(poly(&[0, 1, 1]), poly(&[0, 1]));
        assert_eq!(f.series_at_zero(2).unwrap(), vec![rat(1), rat(1), rat(0)]);
        // but 1/t is a true pole
        let g = RationalFunction::new(poly(&[1]), poly(&[0, 1]));
        assert!(g.series_at_zero(2).is_err());
    }

    #[test]
    fn arithmetic_and_equality() {
        let f = RationalFunction::new(poly(&[1]), poly(&[1, 1]));
        let g = RationalFunction::new(poly(&[1]), poly(&[1, -1]));
        let sum = &f + &g;
        assert!(sum.equals(&RationalFunction::new(poly(&[2]), poly(&[1, 0, -1]))));
        let prod = &f * &g;
        assert!(prod.equals(&RationalFunction::new(poly(&[1]), poly(&[1, 0, -1]))));
        assert!((&sum - &sum).is_zero());
        assert!(f.pow(2).equals(&(&f * &f)));
    }
}
