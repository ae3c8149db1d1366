//! r-Whitney numbers of the second kind W_{m,r}(n,k), computed by three
//! independent routes (triangular recurrence, explicit alternating sum,
//! forward differences of the horizontal generating function) that must
//! agree entry by entry.

use num_traits::{One, Zero};
use serde_json::json;

use crate::comb::binomial;
use crate::rational::{factorial, format_rat, pow_u, rat, Rat};
use crate::{Error, Result};

/// The parameter pair (m, r) of W_{m,r}. m must be nonzero: it appears in
/// denominators of the explicit formula and of the EGF.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WhitneyParams {
    m: Rat,
    r: Rat,
}

impl WhitneyParams {
    pub fn new(m: Rat, r: Rat) -> Result<Self> {
        if m.is_zero() {
            return Err(Error::ZeroModulus);
        }
        Ok(Self { m, r })
    }

    pub fn m(&self) -> &Rat {
        &self.m
    }

    pub fn r(&self) -> &Rat {
        &self.r
    }

    /// Same m, r shifted by +1 (the vertical recurrence direction).
    pub fn shift_r_up(&self) -> Self {
        Self {
            m: self.m.clone(),
            r: self.r.clone() + Rat::one(),
        }
    }
}

/// Memoized triangle of W_{m,r}(n,k) for 0 <= k <= n <= max_n, built by the
/// recurrence W(n+1, k) = W(n, k-1) + (mk + r) W(n, k) from the seed
/// W(0,0) = 1. Immutable once built.
#[derive(Debug, Clone)]
pub struct WhitneyTable {
    params: WhitneyParams,
    rows: Vec<Vec<Rat>>,
}

impl WhitneyTable {
    pub fn build(params: &WhitneyParams, max_n: u32) -> Self {
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(max_n as usize + 1);
        rows.push(vec![Rat::one()]);
        for n in 0..max_n as usize {
            let prev = &rows[n];
            let mut row = Vec::with_capacity(n + 2);
            for k in 0..=n + 1 {
                let carry = if k > 0 { prev[k - 1].clone() } else { Rat::zero() };
                let stay = if k <= n {
                    (params.m() * rat(k as i64) + params.r()) * &prev[k]
                } else {
                    Rat::zero()
                };
                row.push(carry + stay);
            }
            rows.push(row);
        }
        Self {
            params: params.clone(),
            rows,
        }
    }

    pub fn params(&self) -> &WhitneyParams {
        &self.params
    }

    pub fn max_n(&self) -> u32 {
        self.rows.len() as u32 - 1
    }

    /// W_{m,r}(n, k); zero for k > n, panics past max_n.
    pub fn entry(&self, n: u32, k: u32) -> Rat {
        if k > n {
            return Rat::zero();
        }
        self.rows[n as usize][k as usize].clone()
    }

    pub fn row(&self, n: u32) -> &[Rat] {
        &self.rows[n as usize]
    }

    /// `n,k,value` lines, rationals quoted so CSV cells stay unambiguous.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,value\n");
        for (n, row) in self.rows.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                let cell = format_rat(v);
                if cell.contains('/') {
                    out.push_str(&format!("{},{},\"{}\"\n", n, k, cell));
                } else {
                    out.push_str(&format!("{},{},{}\n", n, k, cell));
                }
            }
        }
        out
    }

    /// One JSON object per entry, one per line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for (n, row) in self.rows.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                out.push_str(
                    &json!({"n": n, "k": k, "value": format_rat(v)}).to_string(),
                );
                out.push('\n');
            }
        }
        out
    }
}

/// Explicit formula: W(n,k) = (1/(m^k k!)) sum_j (-1)^(k-j) C(k,j) (mj+r)^n.
pub fn whitney_explicit(params: &WhitneyParams, n: u32, k: u32) -> Rat {
    let mut acc = Rat::zero();
    for j in 0..=k {
        let mut term = binomial(k, j) * pow_u(&(params.m() * rat(j as i64) + params.r()), n);
        if (k - j) % 2 == 1 {
            term = -term;
        }
        acc += term;
    }
    acc / (pow_u(params.m(), k) * factorial(k))
}

/// Newton route: solve the horizontal generating function
/// (mt+r)^n = sum_k m^k W(n,k) (t)_k for W by taking the k-th forward
/// difference of t -> (mt+r)^n at t = 0, divided by m^k k!.
pub fn whitney_newton(params: &WhitneyParams, n: u32, k: u32) -> Rat {
    let mut diffs: Vec<Rat> = (0..=k)
        .map(|t| pow_u(&(params.m() * rat(t as i64) + params.r()), n))
        .collect();
    for _ in 0..k {
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    diffs[0].clone() / (pow_u(params.m(), k) * factorial(k))
}

/// r-Stirling numbers of the second kind, as W_{1,r}(n,k).
pub fn rstirling2(n: u32, k: u32, r: u32) -> Rat {
    let params = WhitneyParams::new(Rat::one(), rat(r as i64)).expect("m = 1");
    whitney_explicit(&params, n, k)
}

/// Classical Stirling numbers of the second kind, W_{1,0}(n,k).
pub fn stirling2(n: u32, k: u32) -> Rat {
    rstirling2(n, k, 0)
}

/// Parameter families from the literature that coincide with W_{m,r}
/// after a renaming of (m, r).
#[derive(Debug, Clone)]
pub enum AliasKind {
    /// (r, beta)-Stirling numbers: equal W_{beta, r}.
    RBetaStirling { r: Rat, beta: Rat },
    /// Rucinski-Voigt numbers with arithmetic sequence (a, a+r, ...): equal W_{r, a}.
    RucinskiVoigt { a: Rat, r: Rat },
    /// Noncentral Whitney numbers: equal W_{m, -a}.
    NoncentralWhitney { m: Rat, a: Rat },
}

/// Maps an aliased family onto the (m, r) pair of the W it equals.
pub fn alias_params(alias: &AliasKind) -> Result<WhitneyParams> {
    match alias {
        AliasKind::RBetaStirling { r, beta } => WhitneyParams::new(beta.clone(), r.clone()),
        AliasKind::RucinskiVoigt { a, r } => WhitneyParams::new(r.clone(), a.clone()),
        AliasKind::NoncentralWhitney { m, a } => WhitneyParams::new(m.clone(), -a.clone()),
    }
}
