//! Truncated formal power series over exact rationals, and the generating
//! function checks built on them: the one-variable EGF of the bivariate
//! r-Dowling polynomials and the two-variable f(u+v) device.

use num_traits::{One, Zero};

use crate::comb::binomial;
use crate::dowling::{dowling_from_table, eval_poly};
use crate::rational::{factorial, format_rat, pow_u, rat, Rat};
use crate::whitney::{WhitneyParams, WhitneyTable};

/// Power series sum a_n t^n + O(t^(N+1)); exactly N+1 stored coefficients.
/// Binary operations truncate to the shorter operand.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rat>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn constant(c: Rat, order: u32) -> Self {
        let mut coeffs = vec![Rat::zero(); order as usize + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    /// Taylor series of e^(ct): coefficients c^n / n!.
    pub fn exp_linear(c: &Rat, order: u32) -> Self {
        let mut coeffs = Vec::with_capacity(order as usize + 1);
        let mut acc = Rat::one();
        coeffs.push(acc.clone());
        for n in 1..=order {
            acc = acc * c / rat(n as i64);
            coeffs.push(acc.clone());
        }
        Self { coeffs }
    }

    pub fn order(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn coeff(&self, n: u32) -> &Rat {
        &self.coeffs[n as usize]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().min(rhs.coeffs.len());
        Self {
            coeffs: (0..len).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().min(rhs.coeffs.len());
        let mut coeffs = vec![Rat::zero(); len];
        for i in 0..len {
            for j in 0..len - i {
                coeffs[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
            }
        }
        Self { coeffs }
    }

    pub fn int_pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(Rat::one(), self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// JSON array of `p/q` strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.coeffs.iter().map(format_rat).collect::<Vec<_>>())
    }
}

/// EGF right-hand side e^(rt) [1 + y(e^(mt) - 1)/m]^x, expanded by the
/// finite binomial theorem (x a nonnegative integer).
pub fn egf_rhs(params: &WhitneyParams, x: u32, y: &Rat, order: u32) -> TruncatedSeries {
    let w = y / params.m();
    // e^(mt) - 1
    let mut em = TruncatedSeries::exp_linear(params.m(), order);
    em = em.add(&TruncatedSeries::constant(-Rat::one(), order));
    let mut acc = TruncatedSeries::constant(Rat::zero(), order);
    let mut empow = TruncatedSeries::constant(Rat::one(), order);
    for k in 0..=x {
        acc = acc.add(&empow.scale(&(binomial(x, k) * pow_u(&w, k))));
        if k < x {
            empow = empow.mul(&em);
        }
    }
    acc.mul(&TruncatedSeries::exp_linear(params.r(), order))
}

/// Checks that coefficient n of the EGF right side equals D(n; x, y) / n!
/// for every n up to the truncation order.
pub fn egf_check(params: &WhitneyParams, x: u32, y: &Rat, order: u32) -> bool {
    let rhs = egf_rhs(params, x, y, order);
    let table = WhitneyTable::build(params, order);
    let xr = rat(x as i64);
    (0..=order).all(|n| {
        let d = eval_poly(&dowling_from_table(&table, n), &xr, y);
        rhs.coeff(n) * factorial(n) == d
    })
}

/// EGF of the single Whitney column k: e^(rt)(e^(mt) - 1)^k / (m^k k!),
/// whose n-th coefficient is W(n, k) / n!.
pub fn whitney_egf_series(params: &WhitneyParams, k: u32, order: u32) -> TruncatedSeries {
    let mut em = TruncatedSeries::exp_linear(params.m(), order);
    em = em.add(&TruncatedSeries::constant(-Rat::one(), order));
    em.int_pow(k)
        .mul(&TruncatedSeries::exp_linear(params.r(), order))
        .scale(&(Rat::one() / (pow_u(params.m(), k) * factorial(k))))
}

/// Two-variable coefficient table for f(u + v): coefficient of u^a v^b.
#[derive(Debug, Clone, PartialEq)]
pub struct BiSeries {
    rows: Vec<Vec<Rat>>,
}

impl BiSeries {
    pub fn coeff(&self, a: u32, b: u32) -> &Rat {
        &self.rows[a as usize][b as usize]
    }
}

/// Substitutes t -> u + v in a one-variable series: the t^n coefficient c_n
/// redistributes as c_n C(n, a) u^a v^(n-a).
pub fn substitute_sum(series: &TruncatedSeries, a_max: u32, b_max: u32) -> BiSeries {
    assert!(series.order() >= a_max + b_max, "series too short");
    let rows = (0..=a_max)
        .map(|a| {
            (0..=b_max)
                .map(|b| series.coeff(a + b) * binomial(a + b, a))
                .collect()
        })
        .collect();
    BiSeries { rows }
}

/// Checks the two-variable expansion of the EGF: coefficient of u^a v^b of
/// e^(r(u+v)) [1 + y(e^(m(u+v)) - 1)/m]^x must be D(a+b; x, y) / (a! b!).
pub fn egf_two_variable_check(
    params: &WhitneyParams,
    x: u32,
    y: &Rat,
    a_max: u32,
    b_max: u32,
) -> bool {
    let one_var = egf_rhs(params, x, y, a_max + b_max);
    let bi = substitute_sum(&one_var, a_max, b_max);
    let table = WhitneyTable::build(params, a_max + b_max);
    let xr = rat(x as i64);
    (0..=a_max).all(|a| {
        (0..=b_max).all(|b| {
            let d = eval_poly(&dowling_from_table(&table, a + b), &xr, y);
            bi.coeff(a, b) * factorial(a) * factorial(b) == d
        })
    })
}
