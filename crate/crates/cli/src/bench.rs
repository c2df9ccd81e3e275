//! Benchmark harness: times the peeling solver against the assignment
//! oracle over a grid of instance shapes and reports whether the two
//! agree on every cell.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::Instant;

use matchdecomp::oracle::oracle_hungarian;
use matchdecomp::{compute_mwm, Weight};

use crate::gen::gen_random;

/// One instance shape to measure.
#[derive(Debug, Clone, Copy)]
pub struct GridCell {
    pub left: usize,
    pub right: usize,
    pub edges: usize,
    pub max_weight: Weight,
}

/// Timings and agreement for one measured cell.
#[derive(Debug, Clone, Copy)]
pub struct CellReport {
    pub cell: GridCell,
    pub peel_ms: f64,
    pub hungarian_ms: f64,
    pub agree: bool,
}

/// The default measurement grid varies the weight range against a fixed
/// sparse topology sized so one full run stays in the seconds range;
/// `quick` shrinks it to a smoke test.
pub fn default_grid(quick: bool) -> Vec<GridCell> {
    let (sides, per_side_edges, weights): (&[usize], usize, &[Weight]) = if quick {
        (&[120], 4, &[2, 8])
    } else {
        (&[400, 800], 5, &[4, 16, 64])
    };
    let mut cells = Vec::new();
    for &side in sides {
        for &max_weight in weights {
            cells.push(GridCell {
                left: side,
                right: side,
                edges: side * per_side_edges,
                max_weight,
            });
        }
    }
    cells
}

/// Worker count: one per available core, further capped by the
/// MATCHDECOMP_THREADS environment variable when set.
fn thread_cap(cells: usize) -> usize {
    let cores = thread::available_parallelism().map(usize::from).unwrap_or(1);
    let cap = std::env::var("MATCHDECOMP_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(cores);
    cores.min(cap).min(cells).max(1)
}

fn median_ms(mut samples: Vec<f64>) -> f64 {
    samples.sort_by(|a, b| a.total_cmp(b));
    samples[samples.len() / 2]
}

fn measure_cell(cell: GridCell, repeat: usize, seed: u64) -> CellReport {
    let g = gen_random(cell.left, cell.right, cell.edges, cell.max_weight, seed)
        .expect("grid cells stay within the pair budget");
    let mut peel_samples = Vec::with_capacity(repeat);
    let mut hungarian_samples = Vec::with_capacity(repeat);
    let mut agree = true;
    for _ in 0..repeat {
        let start = Instant::now();
        let ours = compute_mwm(&g);
        peel_samples.push(start.elapsed().as_secs_f64() * 1e3);

        let start = Instant::now();
        let reference = oracle_hungarian(&g).weight();
        hungarian_samples.push(start.elapsed().as_secs_f64() * 1e3);

        agree &= ours == reference;
    }
    CellReport {
        cell,
        peel_ms: median_ms(peel_samples),
        hungarian_ms: median_ms(hungarian_samples),
        agree,
    }
}

/// Measures every cell `repeat` times and reports medians. Cells run in
/// parallel when more than one worker is allowed; each cell is still
/// timed inside a single thread.
pub fn run_grid(cells: &[GridCell], repeat: usize) -> Vec<CellReport> {
    let repeat = repeat.max(1);
    let workers = thread_cap(cells.len());
    let next = AtomicUsize::new(0);
    let done = Mutex::new(Vec::with_capacity(cells.len()));
    thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let index = next.fetch_add(1, Ordering::Relaxed);
                let Some(&cell) = cells.get(index) else { break };
                let report = measure_cell(cell, repeat, index as u64);
                done.lock().unwrap().push((index, report));
            });
        }
    });
    let mut reports = done.into_inner().unwrap();
    reports.sort_by_key(|&(index, _)| index);
    reports.into_iter().map(|(_, report)| report).collect()
}

/// Plain-text table, one row per cell, ready for external plotting.
pub fn render_table(reports: &[CellReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>6} {:>6} {:>7} {:>5} {:>12} {:>12} {:>8}  agree",
        "left", "right", "edges", "maxw", "peel_ms", "hungarian_ms", "speedup"
    );
    for r in reports {
        let speedup = if r.peel_ms > 0.0 { r.hungarian_ms / r.peel_ms } else { f64::INFINITY };
        let _ = writeln!(
            out,
            "{:>6} {:>6} {:>7} {:>5} {:>12.3} {:>12.3} {:>8.2}  {}",
            r.cell.left,
            r.cell.right,
            r.cell.edges,
            r.cell.max_weight,
            r.peel_ms,
            r.hungarian_ms,
            speedup,
            if r.agree { "yes" } else { "NO" }
        );
    }
    out
}
