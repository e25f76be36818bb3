//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits non-zero on any FAIL.

use std::process::ExitCode;
use std::time::Instant;

use num_traits::Zero;
use qhankel::bench::run_bench;
use qhankel::verify::{default_grid, filter_family};
use qhankel::*;

const TAGS: [&str; 3] = ["jacobi", "laguerre", "hermite2"];

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn grid(tag: &str, n: usize) -> Vec<Family> {
    filter_family(default_grid(), tag)
        .into_iter()
        .filter(|f| invertible_params(f, n))
        .collect()
}

fn min_points(tag: &str, n: usize) -> std::result::Result<Vec<Family>, String> {
    let pts = grid(tag, n);
    ensure(pts.len() >= 20, || {
        format!("{tag}: only {} admissible points at n={n}", pts.len())
    })?;
    Ok(pts)
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn mat(rows: &[&[(i64, i64)]]) -> Mat {
    Mat::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&(p, d)| rat(p, d)).collect())
            .collect(),
    )
    .unwrap()
}

fn c1_determinants() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for tag in TAGS {
        for f in min_points(tag, 12)? {
            for n in 0..=12 {
                let closed = closed_det(&f, n).map_err(e)?;
                let elim = bareiss_det(&build(&f, n).map_err(e)?);
                ensure(closed == elim, || format!("{f} n={n}: {closed} != {elim}"))?;
                count += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s (limit 60s)"))?;
    Ok(format!("{count} (point, n) pairs, {secs:.1}s"))
}

fn c2_inverses() -> Outcome {
    let pinned = [
        (
            Family::jacobi(int(1), int(1), rat(1, 2)).map_err(e)?,
            1,
            mat(&[&[(9, 2), (-21, 4)], &[(-21, 4), (63, 8)]]),
        ),
        (
            Family::laguerre(rat(1, 4), rat(1, 2)).map_err(e)?,
            1,
            mat(&[&[(7, 4), (-1, 1)], &[(-1, 1), (4, 3)]]),
        ),
        (
            Family::hermite2(rat(1, 2)).map_err(e)?,
            2,
            mat(&[
                &[(7, 6), (0, 1), (-1, 6)],
                &[(0, 1), (1, 1), (0, 1)],
                &[(-1, 6), (0, 1), (1, 6)],
            ]),
        ),
    ];
    for (f, n, want) in &pinned {
        let got = closed_inverse(f, *n, InverseVariant::CORRECTED).map_err(e)?;
        ensure(&got == want, || {
            format!("{f} n={n}: got {got}, want {want}")
        })?;
    }
    let mut count = 0;
    for tag in TAGS {
        for f in min_points(tag, 10)? {
            for n in 0..=10 {
                let m = build(&f, n).map_err(e)?;
                let inv = closed_inverse(&f, n, InverseVariant::CORRECTED).map_err(e)?;
                ensure(&m * &inv == Mat::identity(n + 1), || {
                    format!("{f} n={n}: M·inv != I")
                })?;
                ensure(inv == gauss_inverse(&m).map_err(e)?, || {
                    format!("{f} n={n}: closed != gauss")
                })?;
                ensure(inv == inverse_via_kernel(&f, n).map_err(e)?, || {
                    format!("{f} n={n}: closed != kernel route")
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} (point, n) pairs, 3 pinned values"))
}

fn c3_erratum() -> Outcome {
    let lag = Family::laguerre(rat(1, 4), rat(1, 2)).map_err(e)?;
    let m = build(&lag, 1).map_err(e)?;
    let printed = closed_inverse(&lag, 1, InverseVariant::AS_PRINTED).map_err(e)?;
    let corrected = closed_inverse(&lag, 1, InverseVariant::CORRECTED).map_err(e)?;
    let r_printed = identity_residual(&m, &printed).map_err(e)?;
    let r_corr = identity_residual(&m, &corrected).map_err(e)?;
    ensure(!r_printed.is_zero(), || {
        "printed Laguerre inverse has zero residual".into()
    })?;
    ensure(r_corr.is_zero(), || {
        format!("corrected Laguerre residual {r_corr}")
    })?;

    let her = Family::hermite2(rat(1, 2)).map_err(e)?;
    for n in 1..=6 {
        let m = build(&her, n).map_err(e)?;
        let printed = closed_inverse(&her, n, InverseVariant::AS_PRINTED).map_err(e)?;
        let corrected = closed_inverse(&her, n, InverseVariant::CORRECTED).map_err(e)?;
        ensure(printed[(1, 1)] != corrected[(1, 1)], || {
            format!("n={n}: printed and corrected agree at j=k=1")
        })?;
        let rp = identity_residual(&m, &printed).map_err(e)?;
        let rc = identity_residual(&m, &corrected).map_err(e)?;
        ensure(!rp.is_zero(), || {
            format!("printed Hermite n={n} has zero residual")
        })?;
        ensure(rc.is_zero(), || {
            format!("corrected Hermite n={n} residual {rc}")
        })?;
    }
    Ok(format!(
        "laguerre printed residual {r_printed}; hermite n=1..6 nonzero; corrected 0"
    ))
}

fn c4_kernels() -> Outcome {
    let pairs = [
        (rat(1, 2), rat(1, 3)),
        (int(2), rat(-1, 5)),
        (rat(-3, 4), rat(-3, 4)),
        (int(0), rat(7, 3)),
        (rat(5, 2), int(-1)),
        (rat(-7, 3), rat(9, 4)),
    ];
    let ys = [rat(1, 3), int(-2), rat(5, 4), int(0)];
    let mut evals = 0;
    for tag in TAGS {
        for f in min_points(tag, 8)? {
            for n in 0..=8 {
                let m = build(&f, n).map_err(e)?;
                let inv = closed_inverse(&f, n, InverseVariant::CORRECTED).map_err(e)?;
                if n <= 6 {
                    for (x, y) in &pairs {
                        let b = bordered_kernel(&m, x, y).map_err(e)?;
                        let k = kernel_eval(&f, n, x, y).map_err(e)?;
                        ensure(b == k, || format!("{f} n={n} ({x},{y}): {b} != {k}"))?;
                        evals += 1;
                    }
                }
                let mu: Vec<Rat> = (0..=2 * n)
                    .map(|s| entry(&f, 0, s))
                    .collect::<Result<_>>()
                    .map_err(e)?;
                for r in 0..=n {
                    for y in &ys {
                        let res = reproducing_residual(&m, &inv, r, y, &mu).map_err(e)?;
                        ensure(res.is_zero(), || {
                            format!("{f} n={n} r={r} y={y}: residual {res}")
                        })?;
                        evals += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{evals} exact kernel evaluations"))
}

fn c5_telescoping() -> Outcome {
    let mut count = 0;
    for tag in TAGS {
        for f in min_points(tag, 10)? {
            for n in 1..=10 {
                let lhs = closed_det(&f, n).map_err(e)?;
                let rhs = closed_det(&f, n - 1).map_err(e)? * norm_ratio(&f, n).map_err(e)?;
                ensure(lhs == rhs, || format!("{f} n={n}: {lhs} != {rhs}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} (point, n) pairs"))
}

fn c6_polynomials() -> Outcome {
    let mut count = 0;
    for tag in TAGS {
        for f in min_points(tag, 10)? {
            for n in 0..=10 {
                for j in 0..=n {
                    let r = difference_relation_residual(&f, n, j).map_err(e)?;
                    ensure(r.is_zero(), || format!("{f} n={n} j={j}: residual {r}"))?;
                    count += 1;
                }
            }
            for n in 1..=6 {
                let det_p = det_orthogonal_poly(&build(&f, n).map_err(e)?, n).map_err(e)?;
                let p = matrix_poly(&f, n).map_err(e)?;
                let (ld, lp) = (det_p.coeff(n), p.coeff(n));
                ensure(!ld.is_zero() && !lp.is_zero(), || {
                    format!("{f} n={n}: degree drop")
                })?;
                for k in 0..=n {
                    ensure(det_p.coeff(k) * &lp == p.coeff(k) * &ld, || {
                        format!("{f} n={n}: coefficient {k} not proportional")
                    })?;
                }
                count += 1;
            }
            if let Family::HermiteII { q } = &f {
                for n in 0..=12 {
                    let h0 = hermite_at_zero(n, q).map_err(e)?;
                    let c0 = family_poly(&f, n).map_err(e)?.coeff(0);
                    ensure(h0 == c0, || {
                        format!("{f} n={n}: h(0)={h0}, constant term {c0}")
                    })?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} exact identities"))
}

fn c7_float() -> Outcome {
    let start = Instant::now();
    let q = rat(1, 2);
    let cases = [
        (Family::jacobi(int(1), int(1), q.clone()).map_err(e)?, 200),
        (
            Family::jacobi(rat(1, 2), rat(1, 3), q.clone()).map_err(e)?,
            200,
        ),
        (Family::laguerre(rat(1, 4), q.clone()).map_err(e)?, 60),
        (Family::hermite2(q.clone()).map_err(e)?, 60),
    ];
    let (mut worst_o, mut worst_m) = (0.0f64, 0.0f64);
    for (f, k) in &cases {
        let orth = TruncationSpec::new(*k, 1e-9).map_err(e)?;
        for m in 0..=6 {
            for n in m..=6 {
                let r = orthogonality_residual(f, 1.0, m, n, &orth).map_err(e)?;
                ensure(r < 1e-9, || {
                    format!("{f} K={k} orthogonality ({m},{n}): {r:e}")
                })?;
                worst_o = worst_o.max(r);
            }
        }
        let mom = TruncationSpec::new(*k, 1e-8).map_err(e)?;
        for n in 0..=8 {
            let r = moment_check(f, 1.0, n, &mom).map_err(e)?;
            ensure(r < 1e-8, || format!("{f} K={k} moment n={n}: {r:e}"))?;
            worst_m = worst_m.max(r);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 30.0, || format!("took {secs:.1}s (limit 30s)"))?;
    Ok(format!(
        "max orthogonality {worst_o:.1e}, max moment {worst_m:.1e}, {secs:.2}s"
    ))
}

fn c8_hilbert() -> Outcome {
    let d6 = hilbert_limit(3, 1e-6).map_err(e)?;
    ensure(d6 < 3e-6, || format!("eps=1e-6 deviation {d6:e}"))?;
    let d5 = hilbert_limit(3, 1e-5).map_err(e)?;
    let d4 = hilbert_limit(3, 1e-4).map_err(e)?;
    for (big, small) in [(d4, d5), (d5, d6)] {
        let ratio = big / small;
        ensure((7.0..14.0).contains(&ratio), || {
            format!("deviation ratio {ratio:.2} per decade of eps")
        })?;
    }
    Ok(format!(
        "deviations {d4:.2e}, {d5:.2e}, {d6:.2e} at eps 1e-4..1e-6"
    ))
}

fn c9_bench() -> Outcome {
    let f = Family::hermite2(rat(1, 2)).map_err(e)?;
    let ns = [4, 8, 16, 32];
    let rows = run_bench(&f, &ns, 1).map_err(e)?;
    ensure(rows.len() == ns.len(), || format!("{} rows", rows.len()))?;
    for (row, n) in rows.iter().zip(ns) {
        ensure(row.n == n, || format!("row for n={} in slot {n}", row.n))?;
        ensure(row.closed_ns > 0 && row.elim_ns > 0, || {
            format!("n={n}: zero timing")
        })?;
        ensure(row.ratio.is_finite() && row.det_ratio.is_finite(), || {
            format!("n={n}: non-finite ratio")
        })?;
    }
    let summary: Vec<String> = rows
        .iter()
        .map(|r| format!("n={} ratio={:.3}", r.n, r.ratio))
        .collect();
    Ok(summary.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("determinant equivalence", c1_determinants),
        ("inverse equivalence", c2_inverses),
        ("erratum regression", c3_erratum),
        ("kernel identities", c4_kernels),
        ("telescoping", c5_telescoping),
        ("polynomial layer", c6_polynomials),
        ("float validation", c7_float),
        ("hilbert limit", c8_hilbert),
        ("benchmark table", c9_bench),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
