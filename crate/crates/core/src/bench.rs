//! Wall-clock comparison of closed-form inversion against elimination.

use std::time::Instant;

use serde::Serialize;

use crate::closedform::{closed_det, closed_inverse, InverseVariant};
use crate::error::{Error, Result};
use crate::hankel::{build, Family};
use crate::oracle::{bareiss_det, gauss_inverse};

/// One table row. `closed_ns`/`elim_ns` time the inverse (closed form vs
/// Gauss-Jordan on the prebuilt matrix); the `det_*` columns do the same for
/// the determinant (closed form vs Bareiss). Values are medians over repeats.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub closed_ns: u64,
    pub elim_ns: u64,
    pub ratio: f64,
    pub det_closed_ns: u64,
    pub det_elim_ns: u64,
    pub det_ratio: f64,
}

fn median(mut xs: Vec<u64>) -> u64 {
    xs.sort_unstable();
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2
    }
}

fn time_ns<T>(f: impl FnOnce() -> Result<T>) -> Result<u64> {
    let start = Instant::now();
    std::hint::black_box(f()?);
    Ok(start.elapsed().as_nanos() as u64)
}

fn ratio(closed: u64, elim: u64) -> f64 {
    closed as f64 / elim.max(1) as f64
}

/// Median timings over `repeats` runs for each `n`. Single-threaded.
pub fn run_bench(family: &Family, n_list: &[usize], repeats: usize) -> Result<Vec<BenchRow>> {
    if repeats == 0 {
        return Err(Error::Range("repeats must be at least 1".into()));
    }
    n_list
        .iter()
        .map(|&n| {
            let m = build(family, n)?;
            let mut cols: [Vec<u64>; 4] = Default::default();
            for _ in 0..repeats {
                cols[0].push(time_ns(|| {
                    closed_inverse(family, n, InverseVariant::CORRECTED)
                })?);
                cols[1].push(time_ns(|| gauss_inverse(&m))?);
                cols[2].push(time_ns(|| closed_det(family, n))?);
                cols[3].push(time_ns(|| Ok(bareiss_det(&m)))?);
            }
            let [a, b, c, d] = cols.map(median);
            Ok(BenchRow {
                n,
                closed_ns: a,
                elim_ns: b,
                ratio: ratio(a, b),
                det_closed_ns: c,
                det_elim_ns: d,
                det_ratio: ratio(c, d),
            })
        })
        .collect()
}
