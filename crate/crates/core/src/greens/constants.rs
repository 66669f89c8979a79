use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperbolicity::quasi_constants;
use crate::rational::{self, ceil_u64, Exact, Rational};

/// The search-radius constants for Green's relations, kept exact.
///
/// `K_α` (from the indegree bound) drives `D`; `K_β` with
/// `β = max(α, |A|)` drives `F` and the one-sided search radius.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreensConstants {
    pub a_size: usize,
    pub alpha: u64,
    pub delta: u64,
    pub beta: u64,
    pub k_alpha: Exact,
    pub k_beta: Exact,
    /// Number of words of length at most `2δ`.
    pub w: Exact,
    pub trace: Vec<String>,
}

fn r(v: u64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn greens_constants(a_size: usize, alpha: u64, delta: u64) -> Result<GreensConstants> {
    if alpha == 0 {
        return Err(Error::Invalid("alpha must be at least 1".into()));
    }
    let beta = alpha.max(a_size as u64);
    let ka = quasi_constants(alpha, delta)?;
    let kb = quasi_constants(beta, delta)?;
    let len = 2 * delta + 1;
    let w = if a_size == 1 {
        r(len)
    } else {
        let a = BigInt::from(a_size);
        let exp = usize::try_from(len).map_err(|_| Error::Invalid("delta too large".into()))?;
        let top = num_traits::pow(a.clone(), exp) - BigInt::one();
        Rational::new(top, a - BigInt::one())
    };
    let trace = vec![
        format!("beta = max(alpha, |A|) = max({alpha}, {a_size}) = {beta}"),
        format!("K_alpha = {}", rational::to_string(&ka.k)),
        format!("K_beta = {}", rational::to_string(&kb.k)),
        format!("W = {}", rational::to_string(&w)),
    ];
    Ok(GreensConstants {
        a_size,
        alpha,
        delta,
        beta,
        k_alpha: Exact(ka.k),
        k_beta: Exact(kb.k),
        w: Exact(w),
        trace,
    })
}

/// `c0 + cu·u + cv·v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Affine {
    pub constant: Exact,
    pub u: Exact,
    pub v: Exact,
}

impl Affine {
    pub fn eval(&self, u: u64, v: u64) -> Rational {
        &self.constant.0 + &self.u.0 * r(u) + &self.v.0 * r(v)
    }
}

impl GreensConstants {
    /// `C(s) = δ + s + 1`.
    pub fn c(&self, s: u64) -> Rational {
        r(self.delta + s + 1)
    }

    /// `D(q, s) = K_α(K_α(s + δ + C(s)) + δ + q + s)`.
    pub fn d(&self, q: u64, s: u64) -> Rational {
        let k = &self.k_alpha.0;
        let inner = k * (r(s + self.delta) + self.c(s));
        k * (inner + r(self.delta + q + s))
    }

    /// `E(u, v) = D(u, v) + D(u, 2δ) + C(v) + W·C(2δ)`.
    pub fn e(&self, u: u64, v: u64) -> Rational {
        self.d(u, v) + self.d(u, 2 * self.delta) + self.c(v) + &self.w.0 * self.c(2 * self.delta)
    }

    /// `F(u, v) = (K_β + 1)(u + v + E(u, v))`.
    pub fn f(&self, u: u64, v: u64) -> Rational {
        (&self.k_beta.0 + Rational::one()) * (r(u + v) + self.e(u, v))
    }

    pub fn f_bound(&self, u: u64, v: u64) -> u64 {
        ceil_u64(&self.f(u, v))
    }

    /// `⌈K_β(|w| + |u|)⌉`, the longest multiplier tried for `≤_R` and `≤_L`.
    pub fn one_sided_bound(&self, w: u64, u: u64) -> u64 {
        ceil_u64(&(&self.k_beta.0 * r(w + u)))
    }

    /// `E` as an exact affine function of `(u, v)`.
    pub fn e_affine(&self) -> Affine {
        let k = &self.k_alpha.0;
        let delta = r(self.delta);
        let d0 = k * k * r(2 * self.delta + 1) + k * &delta;
        let ds = r(2) * k * k + k;
        let constant = r(2) * &d0
            + r(2) * &delta * &ds
            + r(self.delta + 1)
            + &self.w.0 * r(3 * self.delta + 1);
        Affine {
            constant: Exact(constant),
            u: Exact(r(2) * k),
            v: Exact(ds + Rational::one()),
        }
    }

    /// `F` as an exact affine function of `(u, v)`; `F` is affine, so this
    /// is also its tightest affine upper bound.
    pub fn f_affine(&self) -> Affine {
        let e = self.e_affine();
        let kb1 = &self.k_beta.0 + Rational::one();
        Affine {
            constant: Exact(&kb1 * &e.constant.0),
            u: Exact(&kb1 * (&e.u.0 + Rational::one())),
            v: Exact(&kb1 * (&e.v.0 + Rational::one())),
        }
    }
}
