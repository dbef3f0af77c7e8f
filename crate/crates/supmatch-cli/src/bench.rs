//! Operator benchmarks: crossover wall time against problem size, and
//! the fraction of new genetic material the greedy crossover introduces.
//!
//! Timing runs are always sequential so measurements do not contend for
//! cores. The new-gene-ratio sweep is deterministic per master seed and
//! may run its cells in parallel.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use supmatch::error::Result;
use supmatch::generator::bench_instance;
use supmatch::operators::{gsp_crossover, hopcroft_karp_crossover, new_gene_ratio};
use supmatch::rng::{derive_seed, substream};
use supmatch::Matching;

use crate::files::write_file;

const BENCH_TAG: u64 = 0xBE;
/// Preference list length for generated benchmark instances.
const BENCH_K: usize = 5;

/// Growth models fitted to the timing curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveClass {
    Linear,
    Linearithmic,
    NSqrtN,
}

impl CurveClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            CurveClass::Linear => "linear",
            CurveClass::Linearithmic => "linearithmic",
            CurveClass::NSqrtN => "n-sqrt-n",
        }
    }

    fn feature(&self, n: f64) -> f64 {
        match self {
            CurveClass::Linear => n,
            CurveClass::Linearithmic => n * n.ln(),
            CurveClass::NSqrtN => n * n.sqrt(),
        }
    }
}

/// Least-squares fit of `t = a * f(n) + b` for each candidate model;
/// returns the model with the smallest residual sum of squares.
pub fn fit_curve_class(sizes: &[usize], times: &[f64]) -> CurveClass {
    let candidates = [
        CurveClass::Linear,
        CurveClass::Linearithmic,
        CurveClass::NSqrtN,
    ];
    let mut best = CurveClass::Linear;
    let mut best_sse = f64::INFINITY;
    for model in candidates {
        let xs: Vec<f64> = sizes.iter().map(|&n| model.feature(n as f64)).collect();
        let sse = ols_sse(&xs, times);
        if sse < best_sse {
            best_sse = sse;
            best = model;
        }
    }
    best
}

fn ols_sse(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    xs.iter()
        .zip(ys)
        .map(|(x, y)| {
            let e = y - (slope * x + intercept);
            e * e
        })
        .sum()
}

#[derive(Debug, Clone)]
pub struct TimingRow {
    pub operator: &'static str,
    pub n: usize,
    pub m: usize,
    pub mean_seconds: f64,
}

#[derive(Debug, Clone)]
pub struct TimingSweep {
    pub rows: Vec<TimingRow>,
    pub hk_class: CurveClass,
    pub gsp_class: CurveClass,
}

/// Timed measurement rounds per sweep (plus one warm-up round); the
/// per-size minimum across rounds is kept. Rounds interleave the sizes,
/// so a transient load spike inflates one round of several sizes rather
/// than every pass of one size, and the minimum discards it. Without
/// this the curvature the fit must discriminate drowns in scheduler
/// noise.
const TIMING_ROUNDS: usize = 4;

/// Times both crossovers over `trials` random parent pairs per size,
/// with one supervisor per ten students.
pub fn timing_sweep(sizes: &[usize], trials: usize, master_seed: u64) -> TimingSweep {
    struct Cell {
        n: usize,
        m: usize,
        instance: supmatch::ProblemInstance,
        pairs: Vec<(Matching, Matching)>,
        hk_best: f64,
        gsp_best: f64,
    }
    let mut cells: Vec<Cell> = sizes
        .iter()
        .map(|&n| {
            let m = (n as f64 / 10.0).round().max(1.0) as usize;
            let seed = derive_seed(master_seed, &[BENCH_TAG, 1, n as u64]);
            let mut rng = substream(seed, 0);
            let instance = bench_instance(n, m, BENCH_K, &mut rng);
            let pairs = (0..trials)
                .map(|_| {
                    (
                        Matching::random_feasible(&instance, &mut rng),
                        Matching::random_feasible(&instance, &mut rng),
                    )
                })
                .collect();
            Cell {
                n,
                m,
                instance,
                pairs,
                hk_best: f64::INFINITY,
                gsp_best: f64::INFINITY,
            }
        })
        .collect();

    for round in 0..=TIMING_ROUNDS {
        for cell in &mut cells {
            let seed = derive_seed(master_seed, &[BENCH_TAG, 1, cell.n as u64]);
            let mut hk_rng = substream(seed, 1);
            let start = Instant::now();
            for (p1, p2) in &cell.pairs {
                std::hint::black_box(hopcroft_karp_crossover(
                    p1,
                    p2,
                    cell.instance.alpha(),
                    &cell.instance,
                    &mut hk_rng,
                ));
            }
            let hk = start.elapsed().as_secs_f64() / trials as f64;
            let mut gsp_rng = substream(seed, 2);
            let start = Instant::now();
            for (p1, p2) in &cell.pairs {
                std::hint::black_box(gsp_crossover(
                    p1,
                    p2,
                    cell.instance.alpha(),
                    &cell.instance,
                    &mut gsp_rng,
                ));
            }
            let gsp = start.elapsed().as_secs_f64() / trials as f64;
            if round > 0 {
                cell.hk_best = cell.hk_best.min(hk);
                cell.gsp_best = cell.gsp_best.min(gsp);
            }
        }
    }

    let mut rows = Vec::new();
    let mut hk_times = Vec::new();
    let mut gsp_times = Vec::new();
    for cell in &cells {
        rows.push(TimingRow {
            operator: "hopcroft-karp",
            n: cell.n,
            m: cell.m,
            mean_seconds: cell.hk_best,
        });
        rows.push(TimingRow {
            operator: "gsp",
            n: cell.n,
            m: cell.m,
            mean_seconds: cell.gsp_best,
        });
        hk_times.push(cell.hk_best);
        gsp_times.push(cell.gsp_best);
    }
    TimingSweep {
        hk_class: fit_curve_class(sizes, &hk_times),
        gsp_class: fit_curve_class(sizes, &gsp_times),
        rows,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioRow {
    pub n: usize,
    /// Denominator of the supervisor ratio class (m is about n/denom).
    pub denom: usize,
    pub m: usize,
    pub mean_ratio: f64,
}

/// Mean new-gene ratio of the greedy crossover over `trials` random
/// parent pairs, per size and supervisor ratio class.
pub fn ratio_sweep(
    sizes: &[usize],
    denoms: &[usize],
    trials: usize,
    master_seed: u64,
    threads: usize,
) -> Vec<RatioRow> {
    let mut cells = Vec::new();
    for &denom in denoms {
        for &n in sizes {
            cells.push((n, denom));
        }
    }
    let run_cell = |&(n, denom): &(usize, usize)| -> RatioRow {
        let m = ((n as f64 / denom as f64).round() as usize).max(1);
        let seed = derive_seed(master_seed, &[BENCH_TAG, 2, n as u64, denom as u64]);
        let mut rng = substream(seed, 0);
        let instance = bench_instance(n, m, BENCH_K, &mut rng);
        let mut total = 0.0;
        for _ in 0..trials {
            let p1 = Matching::random_feasible(&instance, &mut rng);
            let p2 = Matching::random_feasible(&instance, &mut rng);
            let child = gsp_crossover(&p1, &p2, instance.alpha(), &instance, &mut rng);
            total += new_gene_ratio(&child, &p1, &p2);
        }
        RatioRow {
            n,
            denom,
            m,
            mean_ratio: total / trials as f64,
        }
    };
    if threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        pool.install(|| cells.par_iter().map(run_cell).collect())
    } else {
        cells.iter().map(run_cell).collect()
    }
}

pub struct BenchOutcome {
    pub timing: TimingSweep,
    pub ratios: Vec<RatioRow>,
    pub timing_path: PathBuf,
    pub ratio_path: PathBuf,
}

pub fn run_bench(
    sizes: &[usize],
    trials: usize,
    seed: u64,
    threads: usize,
    out_dir: &Path,
) -> Result<BenchOutcome> {
    std::fs::create_dir_all(out_dir).map_err(|source| supmatch::Error::File {
        path: out_dir.display().to_string(),
        source,
    })?;
    let timing = timing_sweep(sizes, trials, seed);
    let mut time_report = String::from("operator,n,m,mean_seconds,fitted\n");
    for row in &timing.rows {
        let fitted = match row.operator {
            "hopcroft-karp" => timing.hk_class,
            _ => timing.gsp_class,
        };
        time_report.push_str(&format!(
            "{},{},{},{},{}\n",
            row.operator,
            row.n,
            row.m,
            row.mean_seconds,
            fitted.as_str()
        ));
    }
    let timing_path = out_dir.join("bench_time.csv");
    write_file(&timing_path, &time_report)?;

    let ratios = ratio_sweep(sizes, &[8, 10, 12], trials, seed, threads);
    let mut ratio_report = String::from("n,ratio_class,m,mean_ratio\n");
    for row in &ratios {
        ratio_report.push_str(&format!(
            "{},1/{},{},{}\n",
            row.n, row.denom, row.m, row.mean_ratio
        ));
    }
    let ratio_path = out_dir.join("bench_ratio.csv");
    write_file(&ratio_path, &ratio_report)?;

    Ok(BenchOutcome {
        timing,
        ratios,
        timing_path,
        ratio_path,
    })
}
