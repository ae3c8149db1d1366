//! Bivariate r-Dowling polynomials D_{m,r}(n; x, y) = sum_k W(n,k) (x)_k y^k,
//! stored as coefficients on the basis {(x)_k y^k}. Includes the Bell and
//! r-Bell specializations, the terminating explicit-formula evaluator, the
//! r-shift recurrence pair, the convexity check, and the exact x -> infinity
//! limit device.

use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::comb::{binomial, falling_factorial};
use crate::rational::{as_natural, format_rat, pow_u, rat, Rat};
use crate::whitney::{WhitneyParams, WhitneyTable};
use crate::{Error, Result};

/// D_{m,r}(n; x, y) on the falling-factorial-times-power basis. Never
/// expanded to monomials in x: every identity in scope is a statement about
/// these coefficients or about evaluations.
#[derive(Debug, Clone, PartialEq)]
pub struct DowlingPoly {
    params: WhitneyParams,
    coeffs: Vec<Rat>,
}

impl DowlingPoly {
    pub fn params(&self) -> &WhitneyParams {
        &self.params
    }

    pub fn degree(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    /// Coefficient of (x)_k y^k, i.e. W_{m,r}(n, k).
    pub fn coeff(&self, k: u32) -> &Rat {
        &self.coeffs[k as usize]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// {"m": ..., "r": ..., "n": ..., "coeffs": ["p/q", ...]}
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "m": format_rat(self.params.m()),
            "r": format_rat(self.params.r()),
            "n": self.degree(),
            "coeffs": self.coeffs.iter().map(format_rat).collect::<Vec<_>>(),
        })
    }
}

/// Builds D_{m,r}(n; x, y): coefficient k is W_{m,r}(n, k).
pub fn dowling_bivariate(params: &WhitneyParams, n: u32) -> DowlingPoly {
    let table = WhitneyTable::build(params, n);
    DowlingPoly {
        params: params.clone(),
        coeffs: table.row(n).to_vec(),
    }
}

/// Same, but reading the row out of an existing table (for grid drivers).
pub fn dowling_from_table(table: &WhitneyTable, n: u32) -> DowlingPoly {
    DowlingPoly {
        params: table.params().clone(),
        coeffs: table.row(n).to_vec(),
    }
}

/// Evaluates sum_k c_k (x)_k y^k at rational (x, y).
pub fn eval_poly(p: &DowlingPoly, x: &Rat, y: &Rat) -> Rat {
    let mut acc = Rat::zero();
    let mut ypow = Rat::one();
    for (k, c) in p.coeffs.iter().enumerate() {
        acc += c * falling_factorial(x, k as u32) * &ypow;
        ypow *= y;
    }
    acc
}

/// The r-Dowling number: sum_k W_{m,r}(n, k).
pub fn dowling_number(params: &WhitneyParams, n: u32) -> Rat {
    dowling_bivariate(params, n).coeffs.iter().sum()
}

/// Univariate r-Dowling polynomial sum_k W(n,k) x^k.
pub fn dowling_univariate(params: &WhitneyParams, n: u32, x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    let mut xpow = Rat::one();
    for c in dowling_bivariate(params, n).coeffs() {
        acc += c * &xpow;
        xpow *= x;
    }
    acc
}

fn m1(r: &Rat) -> WhitneyParams {
    WhitneyParams::new(Rat::one(), r.clone()).expect("m = 1")
}

/// Bell number B_n.
pub fn bell_number(n: u32) -> Rat {
    dowling_number(&m1(&Rat::zero()), n)
}

/// Bell polynomial B_n(x) = sum_k S(n,k) x^k.
pub fn bell_poly(n: u32, x: &Rat) -> Rat {
    dowling_univariate(&m1(&Rat::zero()), n, x)
}

/// Bivariate Bell polynomial B_n(x, y) = sum_k S(n,k) (x)_k y^k.
pub fn bell_bivariate(n: u32, x: &Rat, y: &Rat) -> Rat {
    eval_poly(&dowling_bivariate(&m1(&Rat::zero()), n), x, y)
}

/// r-Bell number B_{n,r}.
pub fn rbell_number(n: u32, r: &Rat) -> Rat {
    dowling_number(&m1(r), n)
}

/// r-Bell polynomial B_{n,r}(x).
pub fn rbell_poly(n: u32, r: &Rat, x: &Rat) -> Rat {
    dowling_univariate(&m1(r), n, x)
}

/// Bivariate r-Bell polynomial B_{n,r}(x, y).
pub fn rbell_bivariate(n: u32, r: &Rat, x: &Rat, y: &Rat) -> Rat {
    eval_poly(&dowling_bivariate(&m1(r), n), x, y)
}

/// Terminating explicit formula:
/// D(n; x, y) = sum_{i=0}^{x} C(x,i) (mi+r)^n (y/m)^i (1 - y/m)^{x-i}.
/// The sum is finite only for nonnegative integer x.
pub fn explicit_eval(params: &WhitneyParams, n: u32, x: u32, y: &Rat) -> Rat {
    let w = y / params.m();
    let mut acc = Rat::zero();
    for i in 0..=x {
        acc += binomial(x, i)
            * pow_u(&(params.m() * rat(i as i64) + params.r()), n)
            * pow_u(&w, i)
            * pow_u(&(Rat::one() - &w), x - i);
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftDirection {
    Up,
    Down,
}

/// The r-shift recurrence pair:
/// up: D_{m,r+1}(n) = sum_j C(n,j) D_{m,r}(j),
/// down: D_{m,r}(n) = sum_j (-1)^(n-j) C(n,j) D_{m,r+1}(j),
/// each evaluated at (x, y). Up and down are binomial-inversion inverses.
pub fn shift_r(
    params: &WhitneyParams,
    n: u32,
    x: &Rat,
    y: &Rat,
    direction: ShiftDirection,
) -> Rat {
    let src = match direction {
        ShiftDirection::Up => params.clone(),
        ShiftDirection::Down => params.shift_r_up(),
    };
    let table = WhitneyTable::build(&src, n);
    let mut acc = Rat::zero();
    for j in 0..=n {
        let mut term = binomial(n, j) * eval_poly(&dowling_from_table(&table, j), x, y);
        if direction == ShiftDirection::Down && (n - j) % 2 == 1 {
            term = -term;
        }
        acc += term;
    }
    acc
}

/// Exact convexity check: D(n+1; x, y) <= (D(n; x, y) + D(n+2; x, y)) / 2
/// for all n <= nmax - 2. The domain below is where the explicit-formula
/// weights are provably nonnegative; outside it the check refuses.
pub fn convexity_check(params: &WhitneyParams, x: u32, y: &Rat, nmax: u32) -> Result<bool> {
    if params.m().is_negative() || params.r().is_negative() {
        return Err(Error::Domain("need m > 0 and r >= 0".into()));
    }
    if y.is_negative() || y > params.m() {
        return Err(Error::Domain("need 0 <= y <= m".into()));
    }
    if nmax < 2 {
        return Ok(true);
    }
    let table = WhitneyTable::build(params, nmax);
    let x = rat(x as i64);
    let values: Vec<Rat> = (0..=nmax)
        .map(|n| eval_poly(&dowling_from_table(&table, n), &x, y))
        .collect();
    Ok(values
        .windows(3)
        .all(|w| rat(2) * &w[1] <= &w[0] + &w[2]))
}

/// Polynomial in the auxiliary variable u = 1/x, used to read x -> infinity
/// limits off exactly as the constant term.
#[derive(Debug, Clone, PartialEq)]
pub struct UPoly {
    coeffs: Vec<Rat>,
}

impl UPoly {
    fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant_term(&self) -> &Rat {
        &self.coeffs[0]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }
}

/// Substitutes y -> y/x in D(n; x, y) and then x = 1/u, giving
/// sum_k W(n,k) y^k prod_{i=1}^{k-1} (1 - i u). The u^0 coefficient is the
/// x -> infinity limit, i.e. the univariate value sum_k W(n,k) y^k.
pub fn limit_reduction(params: &WhitneyParams, n: u32, y: &Rat) -> UPoly {
    let row = dowling_bivariate(params, n);
    let mut acc = vec![Rat::zero(); n as usize + 1];
    let mut ypow = Rat::one();
    for (k, c) in row.coeffs().iter().enumerate() {
        // prod_{i=1}^{k-1} (1 - i u), built incrementally
        let mut factor = vec![Rat::one()];
        for i in 1..k {
            let mut next = vec![Rat::zero(); factor.len() + 1];
            for (d, f) in factor.iter().enumerate() {
                next[d] += f;
                next[d + 1] -= f * rat(i as i64);
            }
            factor = next;
        }
        let scale = c * &ypow;
        for (d, f) in factor.iter().enumerate() {
            acc[d] += &scale * f;
        }
        ypow *= y;
    }
    UPoly::new(acc)
}

/// Specialization dispatch used by the verification surface: one entry per
/// named family derived from D_{m,r}.
pub fn specialize(variant: &str, args: &SpecializeArgs) -> Result<Rat> {
    let need = |opt: &Option<Rat>, name: &'static str| {
        opt.clone()
            .ok_or_else(|| Error::Domain(format!("variant requires {name}")))
    };
    match variant {
        "bell-number" => Ok(bell_number(args.n)),
        "bell-poly" => Ok(bell_poly(args.n, &need(&args.x, "x")?)),
        "bell-bivariate" => Ok(bell_bivariate(args.n, &need(&args.x, "x")?, &need(&args.y, "y")?)),
        "rbell-number" => Ok(rbell_number(args.n, &need(&args.r, "r")?)),
        "rbell-poly" => Ok(rbell_poly(args.n, &need(&args.r, "r")?, &need(&args.x, "x")?)),
        "rbell-bivariate" => Ok(rbell_bivariate(
            args.n,
            &need(&args.r, "r")?,
            &need(&args.x, "x")?,
            &need(&args.y, "y")?,
        )),
        "dowling-univariate" => {
            let params = WhitneyParams::new(need(&args.m, "m")?, need(&args.r, "r")?)?;
            Ok(dowling_univariate(&params, args.n, &need(&args.x, "x")?))
        }
        other => Err(Error::UnknownIdentity(other.to_string())),
    }
}

#[derive(Debug, Clone, Default)]
pub struct SpecializeArgs {
    pub n: u32,
    pub m: Option<Rat>,
    pub r: Option<Rat>,
    pub x: Option<Rat>,
    pub y: Option<Rat>,
}

/// Checked variant of explicit_eval for callers holding a rational x.
pub fn explicit_eval_rat(params: &WhitneyParams, n: u32, x: &Rat, y: &Rat) -> Result<Rat> {
    Ok(explicit_eval(params, n, as_natural(x, "x")?, y))
}

/// Polynomial-identity equality: compares two (n+1)-coefficient Dowling
/// polynomials both coefficientwise and through evaluation at n+1 distinct
/// rational x points, guarding the basis code with a second route.
pub fn poly_equal(a: &DowlingPoly, b: &DowlingPoly, y: &Rat) -> bool {
    if a.coeffs() != b.coeffs() {
        return false;
    }
    // half-integer points avoid the (x)_k collapse at small integers
    (0..=a.degree() + 1).all(|t| {
        let x = rat(t as i64) + ratio_half();
        eval_poly(a, &x, y) == eval_poly(b, &x, y)
    })
}

fn ratio_half() -> Rat {
    Rat::new(1.into(), 2.into())
}
