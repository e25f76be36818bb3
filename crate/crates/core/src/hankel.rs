//! The three normalized q-Hankel matrix families and the dense matrix type.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{qpoch, qpow, Rat};

/// Parameter set selecting one of the three matrix families.
///
/// The Laguerre family is parametrized by `t = q^(α+1)`; `α` itself is never
/// needed. Parameters are stored as given; use [`invertible_params`] to check
/// admissibility for a particular size.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Family {
    Jacobi { a: Rat, b: Rat, q: Rat },
    Laguerre { t: Rat, q: Rat },
    HermiteII { q: Rat },
}

impl Family {
    pub fn jacobi(a: Rat, b: Rat, q: Rat) -> Result<Self> {
        nonzero_q(&q)?;
        Ok(Family::Jacobi { a, b, q })
    }

    pub fn laguerre(t: Rat, q: Rat) -> Result<Self> {
        nonzero_q(&q)?;
        Ok(Family::Laguerre { t, q })
    }

    pub fn hermite2(q: Rat) -> Result<Self> {
        nonzero_q(&q)?;
        Ok(Family::HermiteII { q })
    }

    pub fn q(&self) -> &Rat {
        match self {
            Family::Jacobi { q, .. } | Family::Laguerre { q, .. } | Family::HermiteII { q } => q,
        }
    }

    /// Short tag used on the command line and in reports.
    pub fn tag(&self) -> &'static str {
        match self {
            Family::Jacobi { .. } => "jacobi",
            Family::Laguerre { .. } => "laguerre",
            Family::HermiteII { .. } => "hermite2",
        }
    }

    /// Named parameters in a fixed order, as `num/den` strings.
    pub fn params(&self) -> Vec<(&'static str, String)> {
        match self {
            Family::Jacobi { a, b, q } => vec![
                ("a", a.to_string()),
                ("b", b.to_string()),
                ("q", q.to_string()),
            ],
            Family::Laguerre { t, q } => vec![("t", t.to_string()), ("q", q.to_string())],
            Family::HermiteII { q } => vec![("q", q.to_string())],
        }
    }

    /// Position of the family in canonical report order.
    pub fn order(&self) -> u8 {
        match self {
            Family::Jacobi { .. } => 0,
            Family::Laguerre { .. } => 1,
            Family::HermiteII { .. } => 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.tag())?;
        for (i, (k, v)) in self.params().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}={v}")?;
        }
        write!(f, ")")
    }
}

fn nonzero_q(q: &Rat) -> Result<()> {
    if q.is_zero() {
        return Err(Error::Parameter("q must be nonzero".into()));
    }
    Ok(())
}

/// Dense square matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    dim: usize,
    entries: Vec<Rat>,
}

impl Mat {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        Mat {
            dim,
            entries: vec![Rat::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Mat::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        let mut entries = Vec::with_capacity(dim * dim);
        for j in 0..dim {
            for k in 0..dim {
                entries.push(f(j, k));
            }
        }
        Mat { dim, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Dimension("empty matrix".into()));
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != dim) {
            return Err(Error::Dimension(format!(
                "row {bad} has {} entries, expected {dim}",
                rows[bad].len()
            )));
        }
        Ok(Mat {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rat]> {
        self.entries.chunks(self.dim)
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|j| (0..j).all(|k| self[(j, k)] == self[(k, j)]))
    }

    /// True when every entry depends only on `j + k`.
    pub fn is_hankel(&self) -> bool {
        (0..self.dim).all(|j| {
            (0..self.dim).all(|k| {
                let s = j + k;
                let (j0, k0) = if s < self.dim {
                    (0, s)
                } else {
                    (s - self.dim + 1, self.dim - 1)
                };
                self[(j, k)] == self[(j0, k0)]
            })
        })
    }

    /// Leading principal `size × size` block.
    pub fn leading_block(&self, size: usize) -> Mat {
        assert!(size >= 1 && size <= self.dim);
        Mat::from_fn(size, |j, k| self[(j, k)].clone())
    }

    pub fn try_mul(&self, rhs: &Mat) -> Result<Mat> {
        if self.dim != rhs.dim {
            return Err(Error::Dimension(format!(
                "cannot multiply {0}x{0} by {1}x{1}",
                self.dim, rhs.dim
            )));
        }
        let n = self.dim;
        Ok(Mat::from_fn(n, |j, k| {
            (0..n).fold(Rat::zero(), |acc, i| acc + &self[(j, i)] * &rhs[(i, k)])
        }))
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Rat;
    fn index(&self, (j, k): (usize, usize)) -> &Rat {
        &self.entries[j * self.dim + k]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (j, k): (usize, usize)) -> &mut Rat {
        &mut self.entries[j * self.dim + k]
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.try_mul(rhs)
            .expect("dimension mismatch in matrix product")
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (k, x) in row.iter().enumerate() {
                if k > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// The `(j, k)` entry of the normalized matrix of `family`. Depends on `j + k` only.
pub fn entry(family: &Family, j: usize, k: usize) -> Result<Rat> {
    moment(family, j + k)
}

/// The normalized moment `μ_s / μ_0` generating the family's matrix.
pub(crate) fn moment(family: &Family, s: usize) -> Result<Rat> {
    let s_i = s as i64;
    match family {
        Family::Jacobi { a, b, q } => {
            let num = qpoch(&(a * q), q, s_i)?;
            let den = qpoch(&(a * b * q * q), q, s_i)?;
            if den.is_zero() {
                return Err(Error::DivisionByZero(format!(
                    "(abq^2; q)_{s} vanishes for {family}"
                )));
            }
            Ok(num / den)
        }
        Family::Laguerre { t, q } => {
            let e = s_i * (s_i - 1) / 2;
            Ok(qpoch(t, q, s_i)? * qpow(q, -e)?)
        }
        Family::HermiteII { q } => {
            // odd anti-diagonals vanish before the fractional exponent -s²/4 is touched
            if s % 2 == 1 {
                return Ok(Rat::zero());
            }
            let h = (s / 2) as i64;
            Ok(qpow(q, -h * h)? * qpoch(q, &(q * q), h)?)
        }
    }
}

/// `(n+1) × (n+1)` matrix of `family`.
pub fn build(family: &Family, n: usize) -> Result<Mat> {
    let mu = (0..=2 * n)
        .map(|s| moment(family, s))
        .collect::<Result<Vec<_>>>()?;
    hankel_from_moments(&mu, n)
}

/// Hankel matrix `(μ_{j+k})_{j,k=0..n}`.
pub fn hankel_from_moments(mu: &[Rat], n: usize) -> Result<Mat> {
    if mu.len() < 2 * n + 1 {
        return Err(Error::Length(format!(
            "need {} moments for n={n}, got {}",
            2 * n + 1,
            mu.len()
        )));
    }
    Ok(Mat::from_fn(n + 1, |j, k| mu[j + k].clone()))
}

/// Largest `k` for which the invertibility conditions are checked at size `n`.
pub fn invertibility_range(n: usize) -> i64 {
    2 * n as i64 + 3
}

/// Whether the closed-form inverse of size `n` is defined: none of the
/// family's critical quantities equals one for `1 ≤ k ≤ 2n+3`.
pub fn invertible_params(family: &Family, n: usize) -> bool {
    let one = Rat::one();
    let q = family.q();
    if q.is_zero() {
        return false;
    }
    let mut qk = Rat::one();
    for _ in 1..=invertibility_range(n) {
        qk *= q;
        if qk == one {
            return false;
        }
        let hit = match family {
            Family::Jacobi { a, b, .. } => {
                a.is_zero() || a * &qk == one || b * &qk == one || a * b * &qk == one
            }
            // -α ∉ ℕ  ⇔  t q^{k-1} ≠ 1
            Family::Laguerre { t, .. } => t * &qk / q == one,
            Family::HermiteII { .. } => false,
        };
        if hit {
            return false;
        }
    }
    true
}
