//! Independent exact verifiers for the closed forms.
//!
//! Determinants go through fraction-free (Bareiss) elimination on an
//! integer-scaled copy of the matrix; inverses go through Gauss-Jordan over
//! the rationals. Neither shares code with the closed-form module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{max_abs, Rat};
use crate::hankel::Mat;
use crate::qpoly::PolyRat;

/// Integer Bareiss elimination on a square matrix given as rows.
fn bareiss_int(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                // exact by Sylvester's identity
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Exact determinant via fraction-free elimination.
///
/// Each row is scaled by the lcm of its denominators so that elimination runs
/// over the integers; the scales are divided out at the end.
pub fn bareiss_det(m: &Mat) -> Rat {
    let mut scale = BigInt::one();
    let rows = m
        .rows()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect::<Vec<_>>()
        })
        .collect();
    Rat::new(bareiss_int(rows), scale)
}

/// Exact inverse by Gauss-Jordan elimination.
pub fn gauss_inverse(m: &Mat) -> Result<Mat> {
    let n = m.dim();
    let mut a = m.to_rows();
    let mut inv = Mat::identity(n).to_rows();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::SingularMatrix(format!("no nonzero pivot in column {col}")))?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].recip();
        for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
            *x *= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let d = &f * &a[col][c];
                a[r][c] -= d;
                let d = &f * &inv[col][c];
                inv[r][c] -= d;
            }
        }
    }
    Mat::from_rows(inv)
}

fn minor(m: &Mat, rows: &[usize], skip_col: usize) -> Mat {
    let cols: Vec<usize> = (0..m.dim()).filter(|&c| c != skip_col).collect();
    Mat::from_fn(rows.len(), |i, j| m[(rows[i], cols[j])].clone())
}

/// Unnormalized orthogonal polynomial of degree `n` from the moment matrix:
/// the determinant of `M` with its last row replaced by `(1, x, ..., x^n)`,
/// expanded along that row.
pub fn det_orthogonal_poly(m: &Mat, n: usize) -> Result<PolyRat> {
    if n == 0 || m.dim() != n + 1 {
        return Err(Error::Dimension(format!(
            "need an (n+1)x(n+1) matrix with n >= 1, got {0}x{0} for n={n}",
            m.dim()
        )));
    }
    let rows: Vec<usize> = (0..n).collect();
    let coeffs = (0..=n)
        .map(|k| {
            let d = bareiss_det(&minor(m, &rows, k));
            if (n + k).is_multiple_of(2) {
                d
            } else {
                -d
            }
        })
        .collect();
    Ok(PolyRat::new(coeffs))
}

/// Kernel value `-det([[0, W(y)^T], [W(x), M]]) / det M` with `W(x) = (1, x, ..., x^n)`.
pub fn bordered_kernel(m: &Mat, x: &Rat, y: &Rat) -> Result<Rat> {
    let delta = bareiss_det(m);
    if delta.is_zero() {
        return Err(Error::SingularMatrix(
            "bordered kernel of a singular matrix".into(),
        ));
    }
    let n = m.dim();
    let powers = |z: &Rat| {
        let mut v = Vec::with_capacity(n);
        let mut p = Rat::one();
        for _ in 0..n {
            v.push(p.clone());
            p *= z;
        }
        v
    };
    let (wx, wy) = (powers(x), powers(y));
    let bordered = Mat::from_fn(n + 1, |i, j| match (i, j) {
        (0, 0) => Rat::zero(),
        (0, j) => wy[j - 1].clone(),
        (i, 0) => wx[i - 1].clone(),
        (i, j) => m[(i - 1, j - 1)].clone(),
    });
    Ok(-bareiss_det(&bordered) / delta)
}

/// Moment form of the reproducing property for `π(x) = x^r`:
/// `Σ_{j,k} β_jk y^j μ_{k+r} − y^r`, zero when `β` inverts the Hankel matrix of `μ`.
pub fn reproducing_residual(m: &Mat, minv: &Mat, r: usize, y: &Rat, mu_ext: &[Rat]) -> Result<Rat> {
    if m.dim() != minv.dim() {
        return Err(Error::Dimension(format!(
            "matrix is {0}x{0} but inverse is {1}x{1}",
            m.dim(),
            minv.dim()
        )));
    }
    if !m.is_hankel() {
        return Err(Error::Range(
            "reproducing residual needs a Hankel moment matrix".into(),
        ));
    }
    let n = m.dim() - 1;
    if r > n {
        return Err(Error::Range(format!("degree r={r} exceeds n={n}")));
    }
    if mu_ext.len() < n + r + 1 {
        return Err(Error::Range(format!(
            "need moments up to index {}, got {}",
            n + r,
            mu_ext.len()
        )));
    }
    let mut total = Rat::zero();
    let mut yj = Rat::one();
    for j in 0..=n {
        let inner = (0..=n).fold(Rat::zero(), |acc, k| acc + &minv[(j, k)] * &mu_ext[k + r]);
        total += &yj * inner;
        yj *= y;
    }
    Ok(total - num_traits::pow(y.clone(), r))
}

/// `max_{j,k} |(M · Minv − I)_{jk}|`.
pub fn identity_residual(m: &Mat, minv: &Mat) -> Result<Rat> {
    let prod = m.try_mul(minv)?;
    let id = Mat::identity(m.dim());
    let diff: Vec<Rat> = prod
        .entries()
        .iter()
        .zip(id.entries())
        .map(|(a, b)| a - b)
        .collect();
    Ok(max_abs(&diff))
}

/// Cofactor-expansion determinant; exponential, for cross-checking small matrices.
pub fn cofactor_det(m: &Mat) -> Rat {
    fn go(rows: &[Vec<Rat>], cols: &[usize]) -> Rat {
        if cols.is_empty() {
            return Rat::one();
        }
        let row = &rows[rows.len() - cols.len()];
        let mut acc = Rat::zero();
        for (i, &c) in cols.iter().enumerate() {
            if row[c].is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = &row[c] * go(rows, &rest);
            if i % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }
    let rows = m.to_rows();
    let cols: Vec<usize> = (0..m.dim()).collect();
    go(&rows, &cols)
}

/// True when `p · lc(q) == q · lc(p)` coefficientwise with both nonzero.
pub fn proportional(p: &PolyRat, q: &PolyRat) -> bool {
    if p.is_zero() || q.is_zero() {
        return p.is_zero() && q.is_zero();
    }
    p.scale(&q.leading_coeff()) == q.scale(&p.leading_coeff())
}

/// Sign of a nonzero rational, or zero.
pub fn sign(r: &Rat) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::hankel::{build, Family};

    fn mat(rows: &[&[(i64, i64)]]) -> Mat {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(n, d)| rat(n, d)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn jac11() -> Family {
        Family::jacobi(int(1), int(1), rat(1, 2)).unwrap()
    }

    #[test]
    fn bareiss_examples() {
        assert_eq!(bareiss_det(&Mat::identity(3)), int(1));
        assert_eq!(
            bareiss_det(&mat(&[&[(1, 1), (1, 2)], &[(1, 2), (1, 3)]])),
            rat(1, 12)
        );
        let her = Family::hermite2(rat(1, 2)).unwrap();
        assert_eq!(bareiss_det(&build(&her, 2).unwrap()), int(6));
        // needs a row swap
        assert_eq!(
            bareiss_det(&mat(&[&[(0, 1), (1, 1)], &[(1, 1), (0, 1)]])),
            int(-1)
        );
        assert_eq!(
            bareiss_det(&mat(&[&[(1, 1), (1, 1)], &[(1, 1), (1, 1)]])),
            int(0)
        );
    }

    #[test]
    fn gauss_examples() {
        assert_eq!(gauss_inverse(&Mat::identity(3)).unwrap(), Mat::identity(3));
        assert_eq!(
            gauss_inverse(&mat(&[&[(1, 1), (2, 3)], &[(2, 3), (4, 7)]])).unwrap(),
            mat(&[&[(9, 2), (-21, 4)], &[(-21, 4), (63, 8)]])
        );
        assert!(matches!(
            gauss_inverse(&mat(&[&[(1, 1), (1, 1)], &[(1, 1), (1, 1)]])),
            Err(Error::SingularMatrix(_))
        ));
    }

    #[test]
    fn det_orthogonal_poly_examples() {
        assert_eq!(
            det_orthogonal_poly(&Mat::identity(2), 1).unwrap(),
            PolyRat::monomial(int(1), 1)
        );
        let her = Family::hermite2(rat(1, 2)).unwrap();
        assert_eq!(
            det_orthogonal_poly(&build(&her, 2).unwrap(), 2).unwrap(),
            PolyRat::new(vec![int(-1), int(0), int(1)])
        );
        let p = det_orthogonal_poly(&build(&jac11(), 1).unwrap(), 1).unwrap();
        assert_eq!(p, PolyRat::new(vec![rat(-2, 3), int(1)]));
        let fam = crate::qpoly::family_poly(&jac11(), 1).unwrap();
        assert_eq!(p, fam.scale(&rat(-2, 3)));
        assert!(det_orthogonal_poly(&Mat::identity(1), 0).is_err());
        assert!(det_orthogonal_poly(&Mat::identity(3), 1).is_err());
    }

    #[test]
    fn bordered_kernel_examples() {
        assert_eq!(
            bordered_kernel(&Mat::identity(1), &int(5), &int(-3)).unwrap(),
            int(1)
        );
        let her = Family::hermite2(rat(1, 2)).unwrap();
        assert_eq!(
            bordered_kernel(&build(&her, 1).unwrap(), &int(1), &int(1)).unwrap(),
            int(2)
        );
        assert_eq!(
            bordered_kernel(&build(&jac11(), 1).unwrap(), &int(0), &int(0)).unwrap(),
            rat(9, 2)
        );
        let singular = mat(&[&[(1, 1), (1, 1)], &[(1, 1), (1, 1)]]);
        assert!(matches!(
            bordered_kernel(&singular, &int(0), &int(0)),
            Err(Error::SingularMatrix(_))
        ));
    }

    #[test]
    fn reproducing_examples() {
        let m = build(&jac11(), 1).unwrap();
        let minv = gauss_inverse(&m).unwrap();
        let mu = vec![int(1), rat(2, 3), rat(4, 7)];
        assert_eq!(
            reproducing_residual(&m, &minv, 0, &int(7), &mu).unwrap(),
            int(0)
        );
        assert_eq!(
            reproducing_residual(&m, &minv, 1, &int(2), &mu).unwrap(),
            int(0)
        );
        let mut bad = minv.clone();
        bad[(0, 1)] += int(1);
        assert_ne!(
            reproducing_residual(&m, &bad, 1, &int(2), &mu).unwrap(),
            int(0)
        );
        assert!(matches!(
            reproducing_residual(&m, &minv, 2, &int(2), &mu),
            Err(Error::Range(_))
        ));
        assert!(matches!(
            reproducing_residual(&m, &minv, 1, &int(2), &mu[..2]),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn identity_residual_examples() {
        assert_eq!(
            identity_residual(&Mat::identity(2), &Mat::identity(2)).unwrap(),
            int(0)
        );
        let m = build(&jac11(), 1).unwrap();
        assert_eq!(
            identity_residual(&m, &gauss_inverse(&m).unwrap()).unwrap(),
            int(0)
        );
        assert!(identity_residual(&Mat::identity(2), &Mat::identity(3)).is_err());
    }

    #[test]
    fn cofactor_small() {
        let m = mat(&[
            &[(2, 1), (-1, 3), (0, 1)],
            &[(5, 7), (1, 1), (4, 1)],
            &[(1, 2), (0, 1), (-3, 2)],
        ]);
        assert_eq!(cofactor_det(&m), bareiss_det(&m));
    }
}
