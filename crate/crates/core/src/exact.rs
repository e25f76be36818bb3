//! Exact rational scalars and the q-Pochhammer toolkit.
//!
//! Every exact quantity in the crate is a [`Rat`], an arbitrary-precision
//! rational kept in canonical form (positive denominator, reduced). The text
//! form is `num/den` with the denominator omitted when it is one.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// `num/den` as a canonical rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"num/den"`, `"num"` or `"-num/den"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    Rat::from_str(s.trim()).map_err(|e| Error::Parse(format!("invalid rational {s:?}: {e}")))
}

pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite float.
pub fn from_f64(x: f64) -> Result<Rat> {
    Rat::from_float(x).ok_or_else(|| Error::Domain(format!("non-finite float {x}")))
}

/// `q^e` for any signed exponent.
pub fn qpow(q: &Rat, e: i64) -> Result<Rat> {
    let mag = e.unsigned_abs() as usize;
    if e < 0 {
        if q.is_zero() {
            return Err(Error::DivisionByZero(format!("0^{e}")));
        }
        let p = num_traits::pow(q.clone(), mag);
        Ok(p.recip())
    } else {
        Ok(num_traits::pow(q.clone(), mag))
    }
}

/// The q-Pochhammer symbol `(a; q)_n`.
///
/// For `n >= 0` this is `∏_{i<n} (1 - a q^i)`; for `n < 0` it is the
/// reciprocal `1 / ∏_{i=1}^{-n} (1 - a q^{-i})`, which has poles.
pub fn qpoch(a: &Rat, q: &Rat, n: i64) -> Result<Rat> {
    if n >= 0 {
        let mut acc = Rat::one();
        let mut term = a.clone();
        for _ in 0..n {
            acc *= Rat::one() - &term;
            term *= q;
        }
        return Ok(acc);
    }
    if q.is_zero() {
        return Err(Error::DivisionByZero(format!(
            "negative-index Pochhammer ({a}; 0)_{n}"
        )));
    }
    let qinv = q.recip();
    let mut acc = Rat::one();
    let mut term = a * &qinv;
    for _ in 0..n.unsigned_abs() {
        acc *= Rat::one() - &term;
        term *= &qinv;
    }
    if acc.is_zero() {
        return Err(Error::DivisionByZero(format!("({a}; {q})_{n} has a pole")));
    }
    Ok(acc.recip())
}

/// `(a_1, ..., a_r; q)_n`, the product of single Pochhammers.
pub fn qpoch_multi(args: &[Rat], q: &Rat, n: i64) -> Result<Rat> {
    args.iter()
        .try_fold(Rat::one(), |acc, a| Ok(acc * qpoch(a, q, n)?))
}

/// Gaussian binomial `[m choose j]_q`.
pub fn qbinom(m: usize, j: usize, q: &Rat) -> Result<Rat> {
    if j > m {
        return Err(Error::OutOfRange(format!("q-binomial with j={j} > m={m}")));
    }
    let num = qpoch(q, q, m as i64)?;
    let den = qpoch(q, q, j as i64)? * qpoch(q, q, (m - j) as i64)?;
    if den.is_zero() {
        return Err(Error::DivisionByZero(format!(
            "q-binomial [{m} {j}] at q={q}"
        )));
    }
    Ok(num / den)
}

/// Exact `cos(nπ/2)`.
pub fn cos_quarter(n: i64) -> i8 {
    match n.rem_euclid(4) {
        0 => 1,
        2 => -1,
        _ => 0,
    }
}

/// Floating-point `(a; q)_∞`, truncated once the factor update `|a q^m|`
/// falls below `tol`.
pub fn qpoch_inf_float(a: f64, q: f64, tol: f64) -> Result<f64> {
    if q.is_nan() || q.abs() >= 1.0 {
        return Err(Error::Domain(format!(
            "(a; q)_inf needs |q| < 1, got q={q}"
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let mut acc = 1.0;
    let mut term = a;
    while term.abs() >= tol {
        acc *= 1.0 - term;
        if acc == 0.0 || !acc.is_finite() {
            break;
        }
        term *= q;
    }
    Ok(acc)
}

/// `max_i |r_i|` over an iterator of rationals, zero for an empty iterator.
pub(crate) fn max_abs<'a>(it: impl IntoIterator<Item = &'a Rat>) -> Rat {
    it.into_iter()
        .map(|r| r.abs())
        .fold(Rat::zero(), |m, r| if r > m { r } else { m })
}
