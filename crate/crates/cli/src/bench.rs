//! Sewing benchmark: repeated automatic sewings in dimension 4, timing
//! each sew and counting the facets it touches.
//!
//! The interesting column is time (and touched facets) divided by the
//! input facet count: at fixed dimension a sew costs a bounded amount of
//! work per facet, so both ratios should stay roughly flat as the
//! polytope grows. Individual sews are far below timer resolution, so
//! each one is repeated until a few milliseconds have elapsed and the
//! average is reported.

use std::time::Instant;

use polysew::cyclic::cyclic_polytope;
use polysew::sewing::sew_with_stats;
use polysew::tower::find_towers;

use crate::{CliError, CliResult};

#[derive(Clone, Copy, Debug)]
pub struct BenchRow {
    /// Input vertex count for this sew.
    pub n: usize,
    /// Input facet count.
    pub facets: usize,
    /// Average wall time of one sew, in nanoseconds.
    pub nanos_per_sew: f64,
    /// Facets scanned or emitted across all levels of one sew.
    pub facets_touched: u64,
}

impl BenchRow {
    pub fn nanos_per_facet(&self) -> f64 {
        self.nanos_per_sew / self.facets as f64
    }

    pub fn touched_per_facet(&self) -> f64 {
        self.facets_touched as f64 / self.facets as f64
    }
}

/// Sews from `C(start_n, 4)` up to `end_n` vertices, one row per sew.
pub fn run_bench(start_n: usize, end_n: usize) -> CliResult<Vec<BenchRow>> {
    if end_n <= start_n {
        return Err(CliError::Usage(format!(
            "end vertex count {end_n} must exceed start {start_n}"
        )));
    }
    let mut p = cyclic_polytope(start_n, 4).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut rows = Vec::new();
    let mut step = 0;
    while p.vertex_count() < end_n {
        step += 1;
        let tower = find_towers(&p, Some(1))
            .map_err(|e| CliError::Usage(e.to_string()))?
            .pop()
            .ok_or_else(|| {
                CliError::Usage(format!("no tower found at {} vertices", p.vertex_count()))
            })?;
        let label = format!("s{step}");
        let (sewn, stats) =
            sew_with_stats(&p, &tower, &label).map_err(|e| CliError::Usage(e.to_string()))?;

        // Repeat the sew until enough wall time accumulates to trust the
        // average, then keep the best of three rounds so background load
        // cannot inflate a measurement.
        let mut reps: u32 = 1;
        let mut nanos = f64::MAX;
        for _ in 0..3 {
            let round = loop {
                let start = Instant::now();
                for _ in 0..reps {
                    let _ = sew_with_stats(&p, &tower, &label)
                        .map_err(|e| CliError::Usage(e.to_string()))?;
                }
                let elapsed = start.elapsed();
                if elapsed.as_millis() >= 5 || reps >= 1 << 20 {
                    break elapsed.as_nanos() as f64 / reps as f64;
                }
                reps *= 2;
            };
            nanos = nanos.min(round);
        }

        rows.push(BenchRow {
            n: p.vertex_count(),
            facets: p.facet_count(),
            nanos_per_sew: nanos,
            facets_touched: stats.facets_touched,
        });
        p = sewn;
    }
    Ok(rows)
}

pub fn cmd_bench(start_n: usize, end_n: usize) -> CliResult<()> {
    let rows = run_bench(start_n, end_n)?;
    println!(
        "{:>4} {:>8} {:>12} {:>10} {:>9} {:>11}",
        "n", "facets", "time/sew us", "ns/facet", "touched", "touch/facet"
    );
    for row in &rows {
        println!(
            "{:>4} {:>8} {:>12.2} {:>10.1} {:>9} {:>11.3}",
            row.n,
            row.facets,
            row.nanos_per_sew / 1000.0,
            row.nanos_per_facet(),
            row.facets_touched,
            row.touched_per_facet()
        );
    }
    if let (Some(first), Some(last)) = (rows.first(), rows.last()) {
        println!(
            "per-facet time ratio last/first: {:.2}",
            last.nanos_per_facet() / first.nanos_per_facet()
        );
    }
    Ok(())
}
