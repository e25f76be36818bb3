use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use qhankel::format::{mat_csv, mat_from_csv, mat_from_json, mat_json};
use qhankel::oracle::cofactor_det;
use qhankel::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=12).prop_map(|(p, d)| rat(p, d))
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    small_rat().prop_filter("nonzero", |r| !r.is_zero())
}

fn unit_q() -> impl Strategy<Value = Rat> {
    (1i64..=8, 2i64..=9)
        .prop_filter("0 < q < 1", |(p, d)| p < d)
        .prop_map(|(p, d)| rat(p, d))
}

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![
        (nonzero_rat(), nonzero_rat(), nonzero_rat())
            .prop_map(|(a, b, q)| Family::jacobi(a, b, q).unwrap()),
        (nonzero_rat(), nonzero_rat()).prop_map(|(t, q)| Family::laguerre(t, q).unwrap()),
        nonzero_rat().prop_map(|q| Family::hermite2(q).unwrap()),
    ]
}

fn admissible(n: usize) -> impl Strategy<Value = Family> {
    family().prop_filter("invertible", move |f| invertible_params(f, n))
}

fn poly() -> impl Strategy<Value = PolyRat> {
    prop::collection::vec(small_rat(), 0..7).prop_map(PolyRat::new)
}

fn square(max_dim: usize) -> impl Strategy<Value = Mat> {
    (1..=max_dim).prop_flat_map(|d| {
        prop::collection::vec(small_rat(), d * d)
            .prop_map(move |v| Mat::from_rows(v.chunks(d).map(<[Rat]>::to_vec).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pochhammer_cocycle(a in small_rat(), q in nonzero_rat(), m in -4i64..=4, k in -4i64..=4) {
        let whole = qpoch(&a, &q, m + k);
        let head = qpoch(&a, &q, m);
        let tail = qpow(&q, m).and_then(|qm| qpoch(&(&a * qm), &q, k));
        if let (Ok(w), Ok(h), Ok(t)) = (whole, head, tail) {
            prop_assert_eq!(w, h * t);
        }
    }

    #[test]
    fn qbinom_symmetry_and_pascal(m in 1usize..12, j in 0usize..12, q in nonzero_rat()) {
        let j = j % (m + 1);
        if let (Ok(x), Ok(y)) = (qbinom(m, j, &q), qbinom(m, m - j, &q)) {
            prop_assert_eq!(&x, &y);
            if j >= 1 && j < m {
                let rhs = qbinom(m - 1, j - 1, &q).unwrap()
                    + qpow(&q, j as i64).unwrap() * qbinom(m - 1, j, &q).unwrap();
                prop_assert_eq!(x, rhs);
            }
        }
    }

    #[test]
    fn qbinom_half_denominator(m in 0usize..16, j in 0usize..16) {
        let j = j % (m + 1);
        let v = qbinom(m, j, &rat(1, 2)).unwrap();
        let bound = BigInt::from(2).pow((j * (m - j)) as u32);
        prop_assert!((bound % v.denom()).is_zero());
    }

    #[test]
    fn functional_extracts_coefficients(p in poly(), q in unit_q()) {
        for k in 0..=p.degree().unwrap_or(0) + 1 {
            prop_assert_eq!(dq_functional(&p, k, &q).unwrap(), p.coeff(k));
        }
    }

    #[test]
    fn bareiss_matches_cofactor(m in square(4)) {
        prop_assert_eq!(bareiss_det(&m), cofactor_det(&m));
    }

    #[test]
    fn inverse_determinant_reciprocal(f in admissible(4), n in 0usize..=4) {
        let d = closed_det(&f, n).unwrap();
        let inv = closed_inverse(&f, n, InverseVariant::CORRECTED).unwrap();
        prop_assert!(!d.is_zero());
        prop_assert_eq!(d * bareiss_det(&inv), Rat::one());
    }

    #[test]
    fn hermite_parity(q in nonzero_rat(), n in 0usize..=8, x in small_rat()) {
        prop_assume!(invertible_params(&Family::HermiteII { q: q.clone() }, 0));
        let f = Family::hermite2(q).unwrap();
        let p = family_poly(&f, n).unwrap();
        prop_assert_eq!(p.degree(), Some(n));
        prop_assert!(p.leading_coeff().is_one());
        let sign = if n % 2 == 0 { Rat::one() } else { -Rat::one() };
        prop_assert_eq!(p.eval(&-x.clone()), sign * p.eval(&x));
    }

    #[test]
    fn bordered_kernel_symmetric(f in admissible(3), n in 0usize..=3, x in small_rat(), y in small_rat()) {
        let m = build(&f, n).unwrap();
        prop_assert_eq!(bordered_kernel(&m, &x, &y).unwrap(), bordered_kernel(&m, &y, &x).unwrap());
    }

    #[test]
    fn hankel_structure(f in family(), j in 0usize..6, k in 0usize..6) {
        if let Ok(e) = entry(&f, j, k) {
            prop_assert_eq!(&e, &entry(&f, k, j).unwrap());
            prop_assert_eq!(&e, &entry(&f, 0, j + k).unwrap());
        }
    }

    #[test]
    fn rational_text_round_trip(r in small_rat()) {
        prop_assert_eq!(parse_rat(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn matrix_formats_round_trip(m in square(5)) {
        prop_assert_eq!(mat_from_json(&mat_json(&m)).unwrap(), m.clone());
        prop_assert_eq!(mat_from_csv(&mat_csv(&m)).unwrap(), m);
    }

    #[test]
    fn cos_quarter_period(n in -1000i64..1000) {
        prop_assert_eq!(cos_quarter(n), cos_quarter(n + 4));
        prop_assert_eq!(cos_quarter(n), cos_quarter(-n));
        prop_assert!(cos_quarter(n).abs() <= 1);
    }

    #[test]
    fn orthogonal_poly_annihilates_lower_moments(f in admissible(4), n in 1usize..=4) {
        // the determinant polynomial is orthogonal to x^r, r < n, under the matrix functional
        let mu: Vec<Rat> = (0..2 * n).map(|s| entry(&f, 0, s).unwrap()).collect();
        let p = det_orthogonal_poly(&build(&f, n).unwrap(), n).unwrap();
        for r in 0..n {
            let pair: Rat = (0..=n).map(|k| p.coeff(k) * &mu[k + r]).sum();
            prop_assert!(pair.is_zero());
        }
        prop_assert!(!p.coeff(n).abs().is_zero());
    }
}
