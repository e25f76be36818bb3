//! Exact verification sweeps: every closed form checked against its oracle
//! over a grid of rational parameter points.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::closedform::{
    closed_det, closed_inverse, inverse_via_kernel, kernel_eval, matrix_poly, norm_ratio,
    InverseVariant,
};
use crate::error::{Error, Result};
use crate::exact::{int, max_abs, rat, Rat};
use crate::hankel::{build, invertible_params, moment, Family, Mat};
use crate::oracle::{
    bareiss_det, bordered_kernel, det_orthogonal_poly, gauss_inverse, identity_residual,
    proportional, reproducing_residual,
};
use crate::qpoly::{difference_relation_residual, family_poly, hermite_at_zero};

/// Every check name a [`VerifyReport`] may contain.
pub const CHECK_NAMES: &[&str] = &[
    "det_equality",
    "telescoping",
    "identity_residual",
    "route_equivalence_gauss",
    "route_equivalence_kernel",
    "reproducing_residual",
    "bordered_kernel",
    "difference_relation",
    "orthogonal_poly_proportional",
    "hermite_at_zero",
    "as_printed_identity",
];

/// What a check is expected to show.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    /// `lhs == rhs`.
    Holds,
    /// `lhs != rhs` (a documented misprint).
    Fails,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    /// Outcome matched `expect`.
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
    pub expect: Expect,
}

impl Check {
    fn new(name: &'static str, lhs: String, rhs: String, expect: Expect) -> Self {
        let holds = lhs == rhs;
        Check {
            name,
            pass: holds == (expect == Expect::Holds),
            lhs,
            rhs,
            expect,
        }
    }

    fn equal(name: &'static str, lhs: &Rat, rhs: &Rat) -> Self {
        Check::new(name, lhs.to_string(), rhs.to_string(), Expect::Holds)
    }

    fn zero(name: &'static str, residual: &Rat) -> Self {
        Check::equal(name, residual, &Rat::zero())
    }

    fn errored(name: &'static str, err: &Error) -> Self {
        Check {
            name,
            pass: false,
            lhs: format!("error: {err}"),
            rhs: String::new(),
            expect: Expect::Holds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub family: &'static str,
    pub params: BTreeMap<&'static str, String>,
    pub n: usize,
    pub checks: Vec<Check>,
    /// Nanoseconds per phase; only collected on request so that reports stay
    /// byte-identical between runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<&'static str, u64>>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub n_max: usize,
    pub jobs: usize,
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n_max: 8,
            jobs: 1,
            timings: false,
        }
    }
}

/// Evaluation points for the kernel identities.
fn kernel_points() -> [(Rat, Rat); 5] {
    [
        (rat(1, 2), rat(1, 3)),
        (int(2), rat(-1, 5)),
        (rat(-3, 4), rat(-3, 4)),
        (int(0), rat(7, 3)),
        (rat(5, 2), int(-1)),
    ]
}

/// Whether the printed inverse is expected to be exact at this point.
pub fn as_printed_expected_exact(family: &Family, n: usize) -> bool {
    matches!(family, Family::Jacobi { .. }) || n == 0
}

struct Timer {
    on: bool,
    phases: BTreeMap<&'static str, u64>,
}

impl Timer {
    fn time<T>(&mut self, phase: &'static str, f: impl FnOnce() -> T) -> T {
        if !self.on {
            return f();
        }
        let start = Instant::now();
        let out = f();
        *self.phases.entry(phase).or_default() += start.elapsed().as_nanos() as u64;
        out
    }
}

fn max_diff(a: &Mat, b: &Mat) -> Result<Rat> {
    if a.dim() != b.dim() {
        return Err(Error::Dimension(format!(
            "{0}x{0} vs {1}x{1}",
            a.dim(),
            b.dim()
        )));
    }
    let d: Vec<Rat> = a
        .entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| x - y)
        .collect();
    Ok(max_abs(&d))
}

/// Run every registered check for one family point and size.
pub fn verify_point(family: &Family, n: usize, timings: bool) -> VerifyReport {
    let mut timer = Timer {
        on: timings,
        phases: BTreeMap::new(),
    };
    let mut checks = Vec::new();
    let mut push = |name: &'static str, r: Result<Check>| {
        checks.push(r.unwrap_or_else(|e| Check::errored(name, &e)));
    };

    let m = timer.time("build", || build(family, n));
    let closed = timer.time("closed_inverse", || {
        closed_inverse(family, n, InverseVariant::CORRECTED)
    });
    let (m, closed) = match (m, closed) {
        (Ok(m), Ok(c)) => (m, c),
        (Err(e), _) | (_, Err(e)) => {
            push("identity_residual", Err(e));
            return finish(family, n, checks, timer);
        }
    };

    push("det_equality", {
        let lhs = timer.time("closed_det", || closed_det(family, n));
        let rhs = timer.time("bareiss_det", || bareiss_det(&m));
        lhs.map(|l| Check::equal("det_equality", &l, &rhs))
    });

    if n >= 1 {
        push(
            "telescoping",
            (|| {
                let lhs = closed_det(family, n)?;
                let rhs = closed_det(family, n - 1)? * norm_ratio(family, n)?;
                Ok(Check::equal("telescoping", &lhs, &rhs))
            })(),
        );
    }

    push(
        "identity_residual",
        identity_residual(&m, &closed).map(|r| Check::zero("identity_residual", &r)),
    );

    push("route_equivalence_gauss", {
        let g = timer.time("gauss_inverse", || gauss_inverse(&m));
        g.and_then(|g| max_diff(&closed, &g))
            .map(|d| Check::zero("route_equivalence_gauss", &d))
    });

    push("route_equivalence_kernel", {
        let k = timer.time("inverse_via_kernel", || inverse_via_kernel(family, n));
        k.and_then(|k| max_diff(&closed, &k))
            .map(|d| Check::zero("route_equivalence_kernel", &d))
    });

    push(
        "reproducing_residual",
        (|| {
            let mu = (0..=2 * n)
                .map(|s| moment(family, s))
                .collect::<Result<Vec<_>>>()?;
            let mut worst = Rat::zero();
            for y in [rat(1, 3), int(-2), rat(5, 4)] {
                for r in 0..=n {
                    let res = reproducing_residual(&m, &closed, r, &y, &mu)?;
                    worst = worst.max(res.abs());
                }
            }
            Ok(Check::zero("reproducing_residual", &worst))
        })(),
    );

    push(
        "bordered_kernel",
        timer.time("kernel", || {
            let mut worst = Rat::zero();
            for (x, y) in kernel_points() {
                let d = bordered_kernel(&m, &x, &y)? - kernel_eval(family, n, &x, &y)?;
                worst = worst.max(d.abs());
            }
            Ok(Check::zero("bordered_kernel", &worst))
        }),
    );

    push(
        "difference_relation",
        (|| {
            let mut worst = Rat::zero();
            for j in 0..=n {
                let res = difference_relation_residual(family, n, j)?;
                worst = worst.max(max_abs(res.coeffs()));
            }
            Ok(Check::zero("difference_relation", &worst))
        })(),
    );

    if n >= 1 {
        push(
            "orthogonal_poly_proportional",
            (|| {
                let det_poly = det_orthogonal_poly(&m, n)?;
                let p = matrix_poly(family, n)?;
                Ok(Check {
                    name: "orthogonal_poly_proportional",
                    pass: proportional(&det_poly, &p),
                    lhs: det_poly.to_string(),
                    rhs: p.to_string(),
                    expect: Expect::Holds,
                })
            })(),
        );
    }

    if let Family::HermiteII { q } = family {
        push(
            "hermite_at_zero",
            (|| {
                let lhs = hermite_at_zero(n, q)?;
                let rhs = family_poly(family, n)?.coeff(0);
                Ok(Check::equal("hermite_at_zero", &lhs, &rhs))
            })(),
        );
    }

    push(
        "as_printed_identity",
        (|| {
            let printed = closed_inverse(family, n, InverseVariant::AS_PRINTED)?;
            let r = identity_residual(&m, &printed)?;
            let expect = if as_printed_expected_exact(family, n) {
                Expect::Holds
            } else {
                Expect::Fails
            };
            Ok(Check::new(
                "as_printed_identity",
                r.to_string(),
                "0".to_string(),
                expect,
            ))
        })(),
    );

    finish(family, n, checks, timer)
}

fn finish(family: &Family, n: usize, checks: Vec<Check>, timer: Timer) -> VerifyReport {
    VerifyReport {
        family: family.tag(),
        params: family.params().into_iter().collect(),
        n,
        checks,
        timings: timer.on.then_some(timer.phases),
    }
}

fn param_values(family: &Family) -> Vec<Rat> {
    match family {
        Family::Jacobi { a, b, q } => vec![a.clone(), b.clone(), q.clone()],
        Family::Laguerre { t, q } => vec![t.clone(), q.clone()],
        Family::HermiteII { q } => vec![q.clone()],
    }
}

/// Run [`verify_point`] for every point and every admissible `n ≤ n_max`.
///
/// Points that are not invertible at some `n` are skipped at that `n`.
/// Output is sorted by family, parameter values and `n`, independent of `jobs`.
pub fn run_sweep(points: &[Family], opts: VerifyOptions) -> Result<Vec<VerifyReport>> {
    if opts.jobs == 0 {
        return Err(Error::Range("jobs must be at least 1".into()));
    }
    let mut tasks: Vec<(&Family, usize)> = points
        .iter()
        .flat_map(|f| (0..=opts.n_max).map(move |n| (f, n)))
        .filter(|(f, n)| invertible_params(f, *n))
        .collect();
    tasks.sort_by(|(f1, n1), (f2, n2)| {
        (f1.order(), param_values(f1), n1).cmp(&(f2.order(), param_values(f2), n2))
    });
    tasks.dedup();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::Range(format!("cannot start worker pool: {e}")))?;
    // indexed parallel map keeps the sorted task order
    Ok(pool.install(|| {
        tasks
            .par_iter()
            .map(|(f, n)| verify_point(f, *n, opts.timings))
            .collect()
    }))
}

fn rats(pairs: &[(i64, i64)]) -> Vec<Rat> {
    pairs.iter().map(|&(p, d)| rat(p, d)).collect()
}

/// Fixed sweep grid: at least 20 admissible points per family.
pub fn default_grid() -> Vec<Family> {
    let qs = rats(&[(1, 2), (1, 3), (2, 5)]);
    let ab = rats(&[(1, 2), (1, 3), (3, 4), (1, 1)]);
    let mut out = Vec::new();
    for q in &qs {
        for a in &ab {
            for b in &ab {
                out.push(Family::Jacobi {
                    a: a.clone(),
                    b: b.clone(),
                    q: q.clone(),
                });
            }
        }
    }
    let ts = rats(&[(1, 2), (1, 3), (3, 4), (1, 4), (2, 3), (3, 2), (7, 3)]);
    for q in &qs {
        for t in &ts {
            out.push(Family::Laguerre {
                t: t.clone(),
                q: q.clone(),
            });
        }
    }
    let hq = rats(&[
        (1, 2),
        (1, 3),
        (2, 5),
        (3, 4),
        (1, 4),
        (2, 3),
        (3, 5),
        (1, 5),
        (4, 5),
        (5, 7),
        (1, 7),
        (7, 8),
        (9, 10),
        (2, 1),
        (3, 1),
        (3, 2),
        (5, 2),
        (-1, 2),
        (-1, 3),
        (-2, 1),
    ]);
    out.extend(hq.into_iter().map(|q| Family::HermiteII { q }));
    out
}

fn random_rat(rng: &mut ChaCha8Rng, allow_negative: bool) -> Rat {
    loop {
        let lo = if allow_negative { -9 } else { 1 };
        let p: i64 = rng.random_range(lo..=9);
        let d: i64 = rng.random_range(1..=9);
        if p != 0 {
            return rat(p, d);
        }
    }
}

/// `count` random admissible points per family (size `n_max`), reproducible from `seed`.
pub fn random_grid(seed: u64, count: usize, n_max: usize) -> Vec<Family> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for tag in 0..3 {
        let mut found = 0;
        while found < count {
            let q = random_rat(&mut rng, true);
            let f = match tag {
                0 => Family::Jacobi {
                    a: random_rat(&mut rng, true),
                    b: random_rat(&mut rng, true),
                    q,
                },
                1 => Family::Laguerre {
                    t: random_rat(&mut rng, true),
                    q,
                },
                _ => Family::HermiteII { q },
            };
            if invertible_params(&f, n_max) && !out.contains(&f) {
                out.push(f);
                found += 1;
            }
        }
    }
    out
}

/// Keep only points of the given family tag.
pub fn filter_family(points: Vec<Family>, tag: &str) -> Vec<Family> {
    points.into_iter().filter(|f| f.tag() == tag).collect()
}
