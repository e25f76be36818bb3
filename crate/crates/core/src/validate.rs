//! Floating-point validation of the measure-level identities behind the
//! normalized matrices: orthogonality relations, moment sums (q-binomial
//! theorem and Ramanujan's 1ψ1 sum) and the Hilbert-matrix limit.
//!
//! Sums over the support are truncated at `K` terms (Jacobi) or `-K..=K`
//! (bilateral Laguerre and Hermite sums). Infinite products use
//! [`qpoch_inf_float`]. The lattice scale `c` of the bilateral measures
//! only lives here; the exact modules never see it.

use serde::Serialize;

use crate::closedform::measure_poly;
use crate::error::{Error, Result};
use crate::exact::{from_f64, int, qpoch_inf_float, to_f64, Rat};
use crate::hankel::{entry, Family};

/// Truncation of the infinite products; far below f64 resolution.
const PRODUCT_TOL: f64 = 1e-18;

/// Largest polynomial degree accepted by the float checks.
pub const MAX_DEGREE: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TruncationSpec {
    /// Number of terms (one-sided) or half-width (bilateral).
    #[serde(rename = "K")]
    pub k: usize,
    /// Pass threshold for residuals.
    pub tol: f64,
}

impl TruncationSpec {
    pub fn new(k: usize, tol: f64) -> Result<Self> {
        if k < 1 {
            return Err(Error::Domain("truncation K must be at least 1".into()));
        }
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::Domain(format!(
                "tolerance must be positive, got {tol}"
            )));
        }
        Ok(TruncationSpec { k, tol })
    }
}

fn pinf(a: f64, q: f64) -> f64 {
    qpoch_inf_float(a, q, PRODUCT_TOL).expect("|q| < 1 checked by caller")
}

/// Float parameters of a family, checked against the measure's range.
enum Measure {
    Jacobi { a: f64, b: f64, q: f64 },
    Laguerre { t: f64, q: f64, c: f64 },
    Hermite { q: f64, c: f64 },
}

impl Measure {
    fn new(family: &Family, c: f64) -> Result<Self> {
        let q = to_f64(family.q());
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::Domain(format!("measure needs 0 < q < 1, got q={q}")));
        }
        match family {
            Family::Jacobi { a, b, .. } => {
                let (a, b) = (to_f64(a), to_f64(b));
                if !(a * q > 0.0 && a * q < 1.0 && b * q > 0.0 && b * q < 1.0) {
                    return Err(Error::Domain(format!(
                        "little q-Jacobi measure needs 0 < aq, bq < 1, got a={a}, b={b}"
                    )));
                }
                Ok(Measure::Jacobi { a, b, q })
            }
            Family::Laguerre { t, .. } => {
                let t = to_f64(t);
                // α > -1  ⇔  0 < t < 1 for 0 < q < 1
                if !(t > 0.0 && t < 1.0) {
                    return Err(Error::Domain(format!(
                        "q-Laguerre measure needs 0 < t < 1, got t={t}"
                    )));
                }
                if c.is_nan() || c <= 0.0 {
                    return Err(Error::Domain(format!(
                        "lattice scale c must be positive, got {c}"
                    )));
                }
                Ok(Measure::Laguerre { t, q, c })
            }
            Family::HermiteII { .. } => {
                if c.is_nan() || c <= 0.0 {
                    return Err(Error::Domain(format!(
                        "lattice scale c must be positive, got {c}"
                    )));
                }
                Ok(Measure::Hermite { q, c })
            }
        }
    }

    /// Squared norm `h_n` of the measure-orthogonal polynomial.
    fn norm(&self, n: usize) -> f64 {
        let ni = n as i32;
        match *self {
            Measure::Jacobi { a, b, q } => {
                let ab = a * b;
                let fin = |x: f64| pinf(x, q) / pinf(x * q.powi(ni), q);
                pinf(ab * q * q, q) * (1.0 - ab * q) * (a * q).powi(ni) * fin(q) * fin(b * q)
                    / (pinf(a * q, q) * (1.0 - ab * q.powi(2 * ni + 1)) * fin(a * q) * fin(ab * q))
            }
            Measure::Laguerre { t, q, c } => {
                let fin = |x: f64| pinf(x, q) / pinf(x * q.powi(ni), q);
                pinf(q, q) * pinf(-c * t, q) * pinf(-q / (c * t), q) * fin(t)
                    / (pinf(t, q) * pinf(-c, q) * pinf(-q / c, q) * fin(q) * q.powi(ni))
            }
            Measure::Hermite { q, c } => {
                let q2 = q * q;
                let c2 = c * c;
                let fin = pinf(q, q) / pinf(q.powi(ni + 1), q);
                2.0 * pinf(q2, q2) * pinf(-c2 * q, q2) * pinf(-q / c2, q2) * fin
                    / (pinf(q, q2) * pinf(-c2, q2) * pinf(-q2 / c2, q2) * q.powi(ni * ni))
            }
        }
    }

    /// Calls `f(x, w)` for every support point `x` with mass `w`, skipping
    /// points whose mass underflows to zero.
    fn for_each_point(&self, k_max: usize, mut f: impl FnMut(f64, f64)) {
        let km = k_max as i32;
        match *self {
            Measure::Jacobi { a, b, q } => {
                // w_k = (bq; q)_k (aq)^k / (q; q)_k
                let mut w = 1.0;
                for k in 0..=km {
                    f(q.powi(k), w);
                    w *= (1.0 - b * q.powi(k + 1)) * a * q / (1.0 - q.powi(k + 1));
                }
            }
            Measure::Laguerre { t, q, c } => {
                for k in -km..=km {
                    let x = c * q.powi(k);
                    let w = t.powi(k) / pinf(-x, q);
                    if w != 0.0 && w.is_finite() {
                        f(x, w);
                    }
                }
            }
            Measure::Hermite { q, c } => {
                for k in -km..=km {
                    let x = c * q.powi(k);
                    let w = q.powi(k) / pinf(-x * x, q * q);
                    if w != 0.0 && w.is_finite() {
                        f(x, w);
                        f(-x, w);
                    }
                }
            }
        }
    }
}

fn check_degree(n: usize) -> Result<()> {
    if n > MAX_DEGREE {
        return Err(Error::Domain(format!("degree {n} exceeds {MAX_DEGREE}")));
    }
    Ok(())
}

/// `|Σ w(x) p_m(x) p_n(x) / sqrt(h_m h_n) − δ_mn|` over the truncated support.
///
/// Polynomials are the measure-orthogonal family members (Laguerre reflected),
/// evaluated in float from their exact coefficients. Dividing by the norms
/// keeps the compared quantity O(1).
pub fn orthogonality_residual(
    family: &Family,
    c: f64,
    m: usize,
    n: usize,
    spec: &TruncationSpec,
) -> Result<f64> {
    check_degree(m.max(n))?;
    let measure = Measure::new(family, c)?;
    let pm = measure_poly(family, m)?;
    let pn = measure_poly(family, n)?;
    let mut sum = 0.0;
    // multiply the small weight in first so huge lattice points cannot overflow
    measure.for_each_point(spec.k, |x, w| sum += pm.eval_f64(x) * w * pn.eval_f64(x));
    let normalized = sum / (measure.norm(m) * measure.norm(n)).sqrt();
    let delta = if m == n { 1.0 } else { 0.0 };
    Ok((normalized - delta).abs())
}

/// Pieces of a moment check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentCheck {
    /// Truncated moment sum.
    pub sum: f64,
    /// Closed-form moment from the summation formula.
    pub closed_form: f64,
    /// `sum` with the measure normalization divided out.
    pub normalized: f64,
    /// The exact matrix entry `entry(family, 0, n)` as a float.
    pub entry: f64,
}

impl MomentCheck {
    /// Worst of the two comparisons, each relative once the reference exceeds one.
    pub fn residual(&self) -> f64 {
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1.0);
        rel(self.sum, self.closed_form).max(rel(self.normalized, self.entry))
    }
}

/// Truncated moment `μ_n`, its closed form, and the normalized moment
/// compared with the matrix entry.
pub fn moment_components(
    family: &Family,
    c: f64,
    n: usize,
    spec: &TruncationSpec,
) -> Result<MomentCheck> {
    let measure = Measure::new(family, c)?;
    let ni = n as i32;
    let mut sum = 0.0;
    measure.for_each_point(spec.k, |x, w| sum += w * x.powi(ni));
    let exact_entry = entry(family, 0, n)?;
    let (closed_form, scale) = match measure {
        Measure::Jacobi { a, b, q } => {
            // q-binomial theorem: (abq^{n+2}; q)_∞ / (aq^{n+1}; q)_∞
            let closed = pinf(a * b * q.powi(ni + 2), q) / pinf(a * q.powi(ni + 1), q);
            (closed, pinf(a * b * q * q, q) / pinf(a * q, q))
        }
        Measure::Laguerre { t, q, c } => {
            // 1ψ1 sum: (t;q)_n (q, -ct, -q/(ct); q)_∞ / (q^{nα + n(n+1)/2} (-c, -q/c, t; q)_∞)
            let z = pinf(q, q) * pinf(-c * t, q) * pinf(-q / (c * t), q)
                / (pinf(-c, q) * pinf(-q / c, q) * pinf(t, q));
            let t_poch = pinf(t, q) / pinf(t * q.powi(ni), q);
            // q^{nα + n(n+1)/2} = t^n q^{n(n-1)/2}
            let closed = t_poch * z / (t.powi(ni) * q.powi(ni * (ni - 1) / 2));
            (closed, z / t.powi(ni))
        }
        Measure::Hermite { q, c } => {
            let q2 = q * q;
            let c2 = c * c;
            let z = pinf(q2, q2) * pinf(-q / c2, q2) * pinf(-c2 * q, q2)
                / (pinf(-c2, q2) * pinf(-q2 / c2, q2));
            let closed = if n % 2 == 1 {
                0.0
            } else {
                2.0 * q.powi(-(ni * ni) / 4) * z / pinf(q.powi(ni + 1), q2)
            };
            (closed, 2.0 * z / pinf(q, q2))
        }
    };
    Ok(MomentCheck {
        sum,
        closed_form,
        normalized: sum / scale,
        entry: to_f64(&exact_entry),
    })
}

/// Residual of the moment check; exactly `0.0` for the vanishing odd Hermite moments.
pub fn moment_check(family: &Family, c: f64, n: usize, spec: &TruncationSpec) -> Result<f64> {
    Ok(moment_components(family, c, n, spec)?.residual())
}

/// `max_{j,k ≤ n} |entry(Jacobi a=b=1, q=1-eps) − 1/(j+k+1)|`.
pub fn hilbert_limit(n: usize, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::Domain(format!("need 0 < eps < 1/2, got {eps}")));
    }
    let q = int(1) - from_f64(eps)?;
    let family = Family::jacobi(int(1), int(1), q)?;
    let mut worst: f64 = 0.0;
    for s in 0..=2 * n {
        let e: Rat = entry(&family, 0, s)?;
        let hilbert = Rat::new(1.into(), (s as i64 + 1).into());
        worst = worst.max(to_f64(&(e - hilbert)).abs());
    }
    Ok(worst)
}

/// One line of a validation report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationLine {
    pub identity: String,
    pub family: String,
    pub params: Vec<(String, String)>,
    #[serde(rename = "K")]
    pub k: usize,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub c: f64,
    pub truncation: TruncationSpec,
    pub lines: Vec<ValidationLine>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }
}

/// Orthogonality for `m, n ≤ 6` and moments for `n ≤ 8`, per family.
pub fn run_validation(
    families: &[Family],
    c: f64,
    spec: TruncationSpec,
) -> Result<ValidationReport> {
    let mut lines = Vec::new();
    for family in families {
        let params: Vec<(String, String)> = family
            .params()
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        let mut push = |identity: String, residual: f64| {
            lines.push(ValidationLine {
                identity,
                family: family.tag().to_string(),
                params: params.clone(),
                k: spec.k,
                residual,
                tol: spec.tol,
                pass: residual < spec.tol,
            })
        };
        for m in 0..=6 {
            for n in m..=6 {
                let r = orthogonality_residual(family, c, m, n, &spec)?;
                push(format!("orthogonality(m={m}, n={n})"), r);
            }
        }
        for n in 0..=8 {
            push(format!("moment(n={n})"), moment_check(family, c, n, &spec)?);
        }
    }
    Ok(ValidationReport {
        c,
        truncation: spec,
        lines,
    })
}
