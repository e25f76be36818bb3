//! Closed-form determinants and inverses of the three matrix families, the
//! kernel-polynomial route to the inverse, and kernel evaluation.
//!
//! The printed inverse formulas for the Laguerre and discrete q-Hermite II
//! families carry sign errors. [`InverseVariant`] selects between the
//! corrected formulas (which agree with elimination) and the formulas exactly
//! as printed, which are kept so that the discrepancy stays reproducible:
//!
//! * Laguerre: the corrected entry carries an extra `(-1)^{j+k}`.
//! * Hermite: the corrected entry drops the `(-1)^m` in the summand.
//!
//! The Jacobi formula is correct as printed, so both variants coincide there.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{cos_quarter, int, qpoch, qpoch_multi, qpow, Rat};
use crate::hankel::{invertible_params, Family, Mat};
use crate::qpoly::{family_poly, PolyRat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InverseVariant {
    pub corrected: bool,
}

impl InverseVariant {
    pub const CORRECTED: InverseVariant = InverseVariant { corrected: true };
    pub const AS_PRINTED: InverseVariant = InverseVariant { corrected: false };
}

impl Default for InverseVariant {
    fn default() -> Self {
        Self::CORRECTED
    }
}

fn nonzero(r: Rat, what: impl FnOnce() -> String) -> Result<Rat> {
    if r.is_zero() {
        Err(Error::DivisionByZero(what()))
    } else {
        Ok(r)
    }
}

fn sign(e: usize) -> Rat {
    if e.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

/// Exponent `n(n+1)(2n+1)/6`.
fn sum_of_squares(n: i64) -> i64 {
    let num = n * (n + 1) * (2 * n + 1);
    assert_eq!(num % 6, 0);
    num / 6
}

/// Determinant of `build(family, n)` from its product formula.
pub fn closed_det(family: &Family, n: usize) -> Result<Rat> {
    let ni = n as i64;
    match family {
        Family::Jacobi { a, b, q } => {
            let q2 = q * q;
            let ab = a * b;
            let mut acc = qpow(a, ni * (ni + 1) / 2)? * qpow(q, sum_of_squares(ni))?;
            let tops = [q.clone(), a * q, b * q, &ab * q];
            let bottoms = [&ab * q, &ab * &q2, &ab * &q2, &ab * &q2 * q];
            for k in 1..=ni {
                let num = qpoch_multi(&tops, q, k)?;
                let den = nonzero(qpoch_multi(&bottoms, &q2, k)?, || {
                    format!("(abq, abq², abq², abq³; q²)_{k} vanishes for {family}")
                })?;
                acc *= num / den;
            }
            Ok(acc)
        }
        Family::Laguerre { t, q } => {
            let e = ni * (ni + 1) * (4 * ni - 1);
            assert_eq!(e % 6, 0);
            let mut acc = qpow(q, -e / 6)?;
            for k in 1..=ni {
                acc *= qpoch(q, q, k)? * qpoch(t, q, k)?;
            }
            Ok(acc)
        }
        Family::HermiteII { q } => {
            let mut acc = qpow(q, -sum_of_squares(ni))?;
            for k in 0..=ni {
                acc *= qpoch(q, q, k)?;
            }
            Ok(acc)
        }
    }
}

/// `Δ_n / Δ_{n-1}`, the rational part of `1/γ_n²` for the normalized matrix.
pub fn norm_ratio(family: &Family, n: usize) -> Result<Rat> {
    if n == 0 {
        return Err(Error::Parameter("norm ratio needs n >= 1".into()));
    }
    let ni = n as i64;
    match family {
        Family::Jacobi { a, b, q } => {
            let q2 = q * q;
            let ab = a * b;
            let num = qpow(a, ni)?
                * qpow(q, ni * ni)?
                * qpoch_multi(&[q.clone(), a * q, b * q, &ab * q], q, ni)?;
            let den = qpoch_multi(&[&ab * q, &ab * &q2, &ab * &q2, &ab * &q2 * q], &q2, ni)?;
            let den = nonzero(den, || {
                format!("norm ratio denominator vanishes for {family}")
            })?;
            Ok(num / den)
        }
        Family::Laguerre { t, q } => {
            Ok(qpoch(q, q, ni)? * qpoch(t, q, ni)? * qpow(q, -ni * (2 * ni - 1))?)
        }
        Family::HermiteII { q } => Ok(qpoch(q, q, ni)? * qpow(q, -ni * ni)?),
    }
}

fn require_invertible(family: &Family, n: usize) -> Result<()> {
    if !invertible_params(family, n) {
        return Err(Error::Parameter(format!(
            "{family} violates the invertibility conditions at n={n}"
        )));
    }
    Ok(())
}

/// Shared tables: `(q;q)_m` and Gaussian binomials `[m j]_q` for `m ≤ n`.
struct QTables {
    qq: Vec<Rat>,
}

impl QTables {
    fn new(q: &Rat, n: usize) -> Self {
        let mut qq = Vec::with_capacity(n + 1);
        let mut acc = Rat::one();
        let mut qm = q.clone();
        qq.push(acc.clone());
        for _ in 0..n {
            acc *= Rat::one() - &qm;
            qm *= q;
            qq.push(acc.clone());
        }
        QTables { qq }
    }

    fn binom(&self, m: usize, j: usize) -> Rat {
        &self.qq[m] / (&self.qq[j] * &self.qq[m - j])
    }
}

/// Fills a symmetric matrix from its upper triangle.
fn symmetric(n: usize, mut f: impl FnMut(usize, usize) -> Result<Rat>) -> Result<Mat> {
    let mut out = Mat::zeros(n + 1);
    for j in 0..=n {
        for k in j..=n {
            let v = f(j, k)?;
            out[(k, j)] = v.clone();
            out[(j, k)] = v;
        }
    }
    Ok(out)
}

/// Closed-form inverse of `build(family, n)`.
pub fn closed_inverse(family: &Family, n: usize, variant: InverseVariant) -> Result<Mat> {
    require_invertible(family, n)?;
    match family {
        Family::Jacobi { a, b, q } => jacobi_inverse(a, b, q, n),
        Family::Laguerre { t, q } => laguerre_inverse(t, q, n, variant),
        Family::HermiteII { q } => hermite_inverse(q, n, variant),
    }
}

fn jacobi_inverse(a: &Rat, b: &Rat, q: &Rat, n: usize) -> Result<Mat> {
    let tables = QTables::new(q, n);
    let ab = a * b;
    let aq = a * q;
    let one = Rat::one();
    let aq_poch: Vec<Rat> = (0..=n as i64)
        .map(|j| qpoch(&aq, q, j))
        .collect::<Result<_>>()?;
    // summand without the (j, k) dependent pieces:
    // (1 - abq^{2m+1}) (aq, abq; q)_m / ((1 - abq)(q, bq; q)_m (aq)^m)
    let mut weight = Vec::with_capacity(n + 1);
    for m in 0..=n as i64 {
        let num = (&one - &ab * qpow(q, 2 * m + 1)?) * qpoch(&aq, q, m)? * qpoch(&(&ab * q), q, m)?;
        let den = (&one - &ab * q) * qpoch(q, q, m)? * qpoch(&(b * q), q, m)? * qpow(&aq, m)?;
        weight.push(num / den);
    }
    // (abq^{m+1}; q)_j for j ≤ m
    let mut shifted = Vec::with_capacity(n + 1);
    for m in 0..=n as i64 {
        let base = &ab * qpow(q, m + 1)?;
        shifted.push(
            (0..=m)
                .map(|j| qpoch(&base, q, j))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    symmetric(n, |j, k| {
        let mut sum = Rat::zero();
        for m in k.max(j)..=n {
            sum += &weight[m]
                * qpow(q, -(((j + k) * m) as i64))?
                * tables.binom(m, j)
                * tables.binom(m, k)
                * &shifted[m][j]
                * &shifted[m][k];
        }
        let e = ((j * (j + 1) + k * (k + 1)) / 2) as i64;
        Ok(sign(j + k) * qpow(q, e)? / (&aq_poch[j] * &aq_poch[k]) * sum)
    })
}

fn laguerre_inverse(t: &Rat, q: &Rat, n: usize, variant: InverseVariant) -> Result<Mat> {
    let tables = QTables::new(q, n);
    let t_poch: Vec<Rat> = (0..=n as i64)
        .map(|j| qpoch(t, q, j))
        .collect::<Result<_>>()?;
    let weight: Vec<Rat> = (0..=n)
        .map(|m| Ok(&t_poch[m] / &tables.qq[m] * qpow(q, m as i64)?))
        .collect::<Result<_>>()?;
    symmetric(n, |j, k| {
        let sum = (k.max(j)..=n).fold(Rat::zero(), |acc, m| {
            acc + &weight[m] * tables.binom(m, j) * tables.binom(m, k)
        });
        let e = (j * j.saturating_sub(1) + k * k.saturating_sub(1)) as i64;
        let entry = qpow(q, e)? / (&t_poch[j] * &t_poch[k]) * sum;
        Ok(if variant.corrected {
            sign(j + k) * entry
        } else {
            entry
        })
    })
}

fn hermite_inverse(q: &Rat, n: usize, variant: InverseVariant) -> Result<Mat> {
    let tables = QTables::new(q, n);
    let q2 = q * q;
    // (q; q²)_i for i ≤ n/2
    let odd_poch: Vec<Rat> = (0..=(n / 2) as i64)
        .map(|i| qpoch(q, &q2, i))
        .collect::<Result<_>>()?;
    let choose2 = |j: usize| (j * j.saturating_sub(1) / 2) as i64;
    symmetric(n, |j, k| {
        let mut sum = Rat::zero();
        for m in k.max(j)..=n {
            let cj = cos_quarter((m - j) as i64);
            let ck = cos_quarter((m - k) as i64);
            if cj == 0 || ck == 0 {
                continue;
            }
            let mut term = tables.binom(m, j)
                * tables.binom(m, k)
                * &odd_poch[(m - j) / 2]
                * &odd_poch[(m - k) / 2]
                * int((cj * ck) as i64)
                * qpow(q, m as i64 + choose2(j) + choose2(k))?
                / &tables.qq[m];
            if !variant.corrected && m % 2 == 1 {
                term = -term;
            }
            sum += term;
        }
        Ok(sum)
    })
}

/// Degree-`m` polynomial orthogonal with respect to the family's measure.
///
/// Laguerre polynomials are built with the `(-x)^k` convention, which is the
/// reflection `x → -x` of the measure-orthogonal family, so they are reflected
/// back here.
pub fn measure_poly(family: &Family, m: usize) -> Result<PolyRat> {
    let p = family_poly(family, m)?;
    Ok(match family {
        Family::Laguerre { .. } => p.reflect(),
        _ => p,
    })
}

/// Diagonal rescaling `s(j)` between the measure's moment matrix and the
/// normalized matrix: `t^{-j}` for Laguerre, `1` otherwise.
fn moment_scale(family: &Family) -> Result<Rat> {
    match family {
        Family::Laguerre { t, .. } => {
            nonzero(t.clone(), || "t = 0 has no moment rescaling".to_string()).map(|t| t.recip())
        }
        _ => Ok(Rat::one()),
    }
}

/// Degree-`m` polynomial orthogonal under the moment functional of the
/// normalized matrix itself: [`measure_poly`] with `x → s x`.
pub fn matrix_poly(family: &Family, m: usize) -> Result<PolyRat> {
    Ok(measure_poly(family, m)?.scale_argument(&moment_scale(family)?))
}

/// Finite rational part of the squared norm of [`measure_poly`], relative to
/// the total mass of the measure.
pub fn norm_rational_part(family: &Family, m: usize) -> Result<Rat> {
    let mi = m as i64;
    let one = Rat::one();
    match family {
        Family::Jacobi { a, b, q } => {
            let ab = a * b;
            let num =
                (&one - &ab * q) * qpow(&(a * q), mi)? * qpoch_multi(&[q.clone(), b * q], q, mi)?;
            let den = (&one - &ab * qpow(q, 2 * mi + 1)?) * qpoch_multi(&[a * q, &ab * q], q, mi)?;
            let den = nonzero(den, || format!("h_{m} denominator vanishes for {family}"))?;
            Ok(num / den)
        }
        Family::Laguerre { t, q } => {
            let den = nonzero(qpoch(q, q, mi)? * qpow(q, mi)?, || {
                format!("(q; q)_{m} vanishes for {family}")
            })?;
            Ok(qpoch(t, q, mi)? / den)
        }
        Family::HermiteII { q } => Ok(qpoch(q, q, mi)? * qpow(q, -mi * mi)?),
    }
}

/// Inverse assembled from the orthogonal polynomials:
/// `γ_jk = s(j) s(k) Σ_m c_{m,j} c_{m,k} / h_m`, where `c_{m,i}` is the `x^i`
/// coefficient of the degree-`m` measure-orthogonal polynomial.
pub fn inverse_via_kernel(family: &Family, n: usize) -> Result<Mat> {
    require_invertible(family, n)?;
    let polys = (0..=n)
        .map(|m| measure_poly(family, m))
        .collect::<Result<Vec<_>>>()?;
    let norms = (0..=n)
        .map(|m| {
            nonzero(norm_rational_part(family, m)?, || {
                format!("h_{m} vanishes for {family}")
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let s = moment_scale(family)?;
    let s_pow: Vec<Rat> = (0..=n as i64).map(|j| qpow(&s, j)).collect::<Result<_>>()?;
    symmetric(n, |j, k| {
        let sum = (k.max(j)..=n).fold(Rat::zero(), |acc, m| {
            acc + polys[m].coeff(j) * polys[m].coeff(k) / &norms[m]
        });
        Ok(&s_pow[j] * &s_pow[k] * sum)
    })
}

/// Kernel polynomial `k_n(x, y) = Σ_{j,k} γ_jk y^j x^k` from the closed-form inverse.
pub fn kernel_eval(family: &Family, n: usize, x: &Rat, y: &Rat) -> Result<Rat> {
    let gamma = closed_inverse(family, n, InverseVariant::CORRECTED)?;
    Ok(kernel_from_inverse(&gamma, x, y))
}

pub(crate) fn kernel_from_inverse(gamma: &Mat, x: &Rat, y: &Rat) -> Rat {
    let n = gamma.dim();
    let mut total = Rat::zero();
    let mut yj = Rat::one();
    for j in 0..n {
        let mut row = Rat::zero();
        let mut xk = Rat::one();
        for k in 0..n {
            row += &gamma[(j, k)] * &xk;
            xk *= x;
        }
        total += &yj * row;
        yj *= y;
    }
    total
}
