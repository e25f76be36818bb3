//! Dense polynomials over [`Rat`], the q-difference operator and the three
//! q-orthogonal polynomial families.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, qpoch, qpow, Rat};
use crate::hankel::Family;

/// Polynomial with exact coefficients; `coeffs[i]` multiplies `x^i`.
///
/// The highest stored coefficient is never zero; the zero polynomial has no
/// coefficients at all.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PolyRat {
    coeffs: Vec<Rat>,
}

impl PolyRat {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyRat { coeffs }
    }

    pub fn zero() -> Self {
        PolyRat { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        PolyRat::new(vec![c])
    }

    /// `c x^n`.
    pub fn monomial(c: Rat, n: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = c;
        PolyRat::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation in floating point from the exact coefficients.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + crate::exact::to_f64(c))
    }

    pub fn scale(&self, s: &Rat) -> PolyRat {
        PolyRat::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `p(s x)`.
    pub fn scale_argument(&self, s: &Rat) -> PolyRat {
        let mut pow = Rat::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pow);
            pow *= s;
        }
        PolyRat::new(out)
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> PolyRat {
        self.scale_argument(&int(-1))
    }

    /// `(D_q p)(x) = (p(x) - p(qx)) / ((1-q) x)`, applied coefficientwise.
    pub fn dq(&self, q: &Rat) -> Result<PolyRat> {
        dq(self, q)
    }
}

impl fmt::Display for PolyRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &PolyRat {
    type Output = PolyRat;
    fn add(self, rhs: &PolyRat) -> PolyRat {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyRat::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &PolyRat {
    type Output = PolyRat;
    fn sub(self, rhs: &PolyRat) -> PolyRat {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyRat::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &PolyRat {
    type Output = PolyRat;
    fn neg(self) -> PolyRat {
        PolyRat::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &PolyRat {
    type Output = PolyRat;
    fn mul(self, rhs: &PolyRat) -> PolyRat {
        if self.is_zero() || rhs.is_zero() {
            return PolyRat::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyRat::new(out)
    }
}

/// The q-difference operator on the monomial basis:
/// `D_q x^n = (1 - q^n)/(1 - q) x^{n-1}`.
pub fn dq(p: &PolyRat, q: &Rat) -> Result<PolyRat> {
    if q.is_one() {
        return Err(Error::Domain("D_q is undefined at q = 1".into()));
    }
    let one_minus_q = Rat::one() - q;
    let mut qn = q.clone();
    let mut out = Vec::with_capacity(p.coeffs.len().saturating_sub(1));
    for c in p.coeffs.iter().skip(1) {
        out.push(c * (Rat::one() - &qn) / &one_minus_q);
        qn *= q;
    }
    Ok(PolyRat::new(out))
}

fn dq_power(p: &PolyRat, q: &Rat, k: usize) -> Result<PolyRat> {
    (0..k).try_fold(p.clone(), |acc, _| dq(&acc, q))
}

/// The coefficient-extraction functional `(1-q)^k / (q;q)_k · [D_q^k p](0)`.
///
/// On the monomial basis this is `δ_{jk}`, so it returns the coefficient of
/// `x^k`; the two computations are checked against each other.
pub fn dq_functional(p: &PolyRat, k: usize, q: &Rat) -> Result<Rat> {
    if q.is_one() {
        return Err(Error::Domain("D_q is undefined at q = 1".into()));
    }
    let norm = qpoch(q, q, k as i64)?;
    if norm.is_zero() {
        return Err(Error::DivisionByZero(format!(
            "(q; q)_{k} vanishes at q={q}"
        )));
    }
    let at_zero = dq_power(p, q, k)?.coeff(0);
    let value = qpow(&(Rat::one() - q), k as i64)? / norm * at_zero;
    debug_assert_eq!(
        value,
        p.coeff(k),
        "coefficient functional disagrees with the monomial coefficient"
    );
    Ok(value)
}

/// Identifies the degree-`n` member of a family's polynomial sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyPolyId {
    pub family: Family,
    pub n: usize,
}

impl FamilyPolyId {
    pub fn new(family: Family, n: usize) -> Self {
        FamilyPolyId { family, n }
    }

    pub fn poly(&self) -> Result<PolyRat> {
        family_poly(&self.family, self.n)
    }
}

fn divide(num: Rat, den: Rat, what: impl FnOnce() -> String) -> Result<Rat> {
    if den.is_zero() {
        return Err(Error::DivisionByZero(what()));
    }
    Ok(num / den)
}

/// Degree-`n` polynomial of the family, from its terminating basic
/// hypergeometric series:
///
/// * little q-Jacobi `p_n(x; a, b | q) = 2φ1(q^-n, abq^{n+1}; aq; q; qx)`,
/// * q-Laguerre `L_n^(α)(x; q)` with the `(-x)^k` sign convention,
/// * discrete q-Hermite II `h̃_n(x; q) = x^n 2φ1(q^-n, q^{-n+1}; 0; q²; -q²/x²)`.
pub fn family_poly(family: &Family, n: usize) -> Result<PolyRat> {
    let ni = n as i64;
    match family {
        Family::Jacobi { a, b, q } => {
            let top1 = qpow(q, -ni)?;
            let top2 = a * b * qpow(q, ni + 1)?;
            let bottom = a * q;
            let mut coeffs = Vec::with_capacity(n + 1);
            for k in 0..=ni {
                let num = qpoch(&top1, q, k)? * qpoch(&top2, q, k)? * qpow(q, k)?;
                let den = qpoch(q, q, k)? * qpoch(&bottom, q, k)?;
                coeffs.push(divide(num, den, || {
                    format!("p_{n} pole at k={k} for {family}")
                })?);
            }
            Ok(PolyRat::new(coeffs))
        }
        Family::Laguerre { t, q } => {
            let pre = divide(qpoch(t, q, ni)?, qpoch(q, q, ni)?, || {
                format!("(q; q)_{n} vanishes for {family}")
            })?;
            let top = qpow(q, -ni)?;
            // q^{(α+n)k} = (t q^{n-1})^k
            let arg = -(t * qpow(q, ni - 1)?);
            let mut coeffs = Vec::with_capacity(n + 1);
            for k in 0..=ni {
                let num = qpoch(&top, q, k)? * qpow(q, k * (k + 1) / 2)? * qpow(&arg, k)?;
                let den = qpoch(q, q, k)? * qpoch(t, q, k)?;
                coeffs
                    .push(&pre * divide(num, den, || format!("L_{n} pole at k={k} for {family}"))?);
            }
            Ok(PolyRat::new(coeffs))
        }
        Family::HermiteII { q } => {
            let q2 = q * q;
            let top1 = qpow(q, -ni)?;
            let top2 = qpow(q, 1 - ni)?;
            let arg = -q2.clone();
            let mut coeffs = vec![Rat::zero(); n + 1];
            // the series terminates at k = floor(n/2); x^n (1/x²)^k = x^{n-2k}
            for k in 0..=ni / 2 {
                let num = qpoch(&top1, &q2, k)? * qpoch(&top2, &q2, k)? * qpow(&arg, k)?;
                let den = qpoch(&q2, &q2, k)?;
                coeffs[n - 2 * k as usize] =
                    divide(num, den, || format!("h_{n} pole at k={k} for {family}"))?;
            }
            Ok(PolyRat::new(coeffs))
        }
    }
}

/// `h̃_n(0; q)`: zero for odd `n`, `(-1)^{n/2} (q; q²)_{n/2} / q^{n(n-1)/2}` for even `n`.
pub fn hermite_at_zero(n: usize, q: &Rat) -> Result<Rat> {
    if q.is_zero() {
        return Err(Error::DivisionByZero("h_n(0; q) at q = 0".into()));
    }
    if n % 2 == 1 {
        return Ok(Rat::zero());
    }
    let ni = n as i64;
    let half = ni / 2;
    let sign = if half % 2 == 0 { int(1) } else { int(-1) };
    Ok(sign * qpoch(q, &(q * q), half)? * qpow(q, -(ni * (ni - 1) / 2))?)
}

/// LHS − RHS of the family's `j`-fold difference relation for the degree-`n`
/// polynomial. Zero when the relation holds.
///
/// * Jacobi: `D_q^j p_n(x;a,b) = q^j (q^-n;q)_j (abq^{n+1};q)_j / ((1-q)^j (aq;q)_j) · p_{n-j}(x; aq^j, bq^j)`
/// * Laguerre: `D_q^j L_n^(α)(x) = q^{jα+j²}/(1-q)^j · L_{n-j}^(α+j)(q^j x)`
/// * Hermite: `D_{1/q}^j h̃_n(x) = (q;q)_n q^{-jn+j(j+1)/2} / ((1-q)^j (q;q)_{n-j}) · h̃_{n-j}(x)`
pub fn difference_relation_residual(family: &Family, n: usize, j: usize) -> Result<PolyRat> {
    if j > n {
        return Err(Error::OutOfRange(format!("relation order j={j} > n={n}")));
    }
    let (ni, ji) = (n as i64, j as i64);
    let one = Rat::one();
    match family {
        Family::Jacobi { a, b, q } => {
            let lhs = dq_power(&family_poly(family, n)?, q, j)?;
            let num = qpow(q, ji)?
                * qpoch(&qpow(q, -ni)?, q, ji)?
                * qpoch(&(a * b * qpow(q, ni + 1)?), q, ji)?;
            let den = qpow(&(&one - q), ji)? * qpoch(&(a * q), q, ji)?;
            let factor = divide(num, den, || format!("(aq; q)_{j} vanishes for {family}"))?;
            let qj = qpow(q, ji)?;
            let shifted = Family::Jacobi {
                a: a * &qj,
                b: b * &qj,
                q: q.clone(),
            };
            let rhs = family_poly(&shifted, n - j)?.scale(&factor);
            Ok(&lhs - &rhs)
        }
        Family::Laguerre { t, q } => {
            let lhs = dq_power(&family_poly(family, n)?, q, j)?;
            // q^{jα + j²} = (t/q)^j q^{j²}
            let factor = qpow(&(t / q), ji)? * qpow(q, ji * ji)? / qpow(&(&one - q), ji)?;
            let qj = qpow(q, ji)?;
            let shifted = Family::Laguerre {
                t: t * &qj,
                q: q.clone(),
            };
            let rhs = family_poly(&shifted, n - j)?
                .scale_argument(&qj)
                .scale(&factor);
            Ok(&lhs - &rhs)
        }
        Family::HermiteII { q } => {
            if q.is_zero() || q.is_one() {
                return Err(Error::Domain(format!(
                    "D_(1/q) needs q not in {{0, 1}}, got q={q}"
                )));
            }
            let lhs = dq_power(&family_poly(family, n)?, &q.recip(), j)?;
            let num = qpoch(q, q, ni)? * qpow(q, -ji * ni + ji * (ji + 1) / 2)?;
            let den = qpow(&(&one - q), ji)? * qpoch(q, q, ni - ji)?;
            let factor = divide(num, den, || format!("(q; q)_{} vanishes", n - j))?;
            let rhs = family_poly(family, n - j)?.scale(&factor);
            Ok(&lhs - &rhs)
        }
    }
}
