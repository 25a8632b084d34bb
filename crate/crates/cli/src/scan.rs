//! `bdr scan`: sampled realizability fractions over a grid of bounds.
//!
//! Each cell draws sequences uniformly from the integer box
//! `[ceil(c1·n), min(floor(c2·n), n-1)]^n` and keeps the graphic ones, so
//! the sample is not uniform over graphic sequences. Every cell has its own
//! ChaCha stream derived from the seed and the cell index; output is
//! identical for any thread count.

use std::io::Write;

use anyhow::{bail, Context, Result};
use bdr_core::decider::{self, DecideError};
use bdr_core::ratio::{ceil, floor};
use bdr_core::{
    classify_region, decide_bdr, equal_sum_split_exists, parse_rational, DegreeSequence,
    ParamBounds, Rational, RegionClass, Verdict,
};
use clap::Args;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub const HEADER: &str = "c1,c2,region,frac_split,frac_bipartite,samples";

/// Rejected draws allowed per requested sample before a cell gives up.
const ATTEMPTS_PER_SAMPLE: usize = 1000;

#[derive(Args)]
pub struct ScanArgs {
    /// Grid for c1 as `start:stop:step` (inclusive), or a single value.
    #[arg(long, default_value = "0:1/2:1/10")]
    c1: String,
    /// Grid for c2 as `start:stop:step` (inclusive), or a single value.
    #[arg(long, default_value = "0:1/2:1/10")]
    c2: String,
    /// Sequences sampled per cell.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Sequence length.
    #[arg(long, default_value_t = 12)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Split budget for exact search on undecided samples.
    #[arg(long, default_value_t = decider::DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub c1_grid: Vec<Rational>,
    pub c2_grid: Vec<Rational>,
    pub samples_per_cell: usize,
    pub n: usize,
    pub seed: u64,
    pub budget: usize,
}

impl ScanArgs {
    pub fn config(&self) -> Result<ScanConfig> {
        if self.samples == 0 {
            bail!("--samples must be at least 1");
        }
        if self.n == 0 {
            bail!("--n must be at least 1");
        }
        Ok(ScanConfig {
            c1_grid: parse_grid(&self.c1).context("--c1")?,
            c2_grid: parse_grid(&self.c2).context("--c2")?,
            samples_per_cell: self.samples,
            n: self.n,
            seed: self.seed,
            budget: self.budget,
        })
    }
}

/// Parses `start:stop:step` into the inclusive arithmetic progression.
pub fn parse_grid(text: &str) -> Result<Vec<Rational>> {
    let parts: Vec<Rational> = text
        .split(':')
        .map(|p| parse_rational(p.trim()).with_context(|| format!("bad grid value `{p}`")))
        .collect::<Result<_>>()?;
    let (start, stop, step) = match &parts[..] {
        [x] => return Ok(vec![x.clone()]),
        [a, b, s] => (a, b, s),
        _ => bail!("grid must be `start:stop:step` or a single value"),
    };
    if !step.is_positive() {
        bail!("grid step must be positive");
    }
    let mut grid = Vec::new();
    let mut x = start.clone();
    while &x <= stop {
        grid.push(x.clone());
        x += step;
    }
    Ok(grid)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub c1: Rational,
    pub c2: Rational,
    pub region: RegionClass,
    pub split: usize,
    pub bipartite: usize,
    pub samples: usize,
}

impl Cell {
    fn csv(&self) -> String {
        let frac = |k: usize| {
            if self.samples == 0 {
                String::new()
            } else {
                format!("{:.6}", k as f64 / self.samples as f64)
            }
        };
        format!(
            "{},{},{},{},{},{}",
            self.c1,
            self.c2,
            self.region.name(),
            frac(self.split),
            frac(self.bipartite),
            self.samples
        )
    }
}

/// Cells in grid order: `c1` outer, `c2` inner, skipping `c1 > c2`.
pub fn cells(config: &ScanConfig) -> Vec<ParamBounds> {
    config
        .c1_grid
        .iter()
        .flat_map(|c1| config.c2_grid.iter().map(move |c2| (c1, c2)))
        .filter_map(|(c1, c2)| ParamBounds::new(c1.clone(), c2.clone()).ok())
        .collect()
}

pub fn run_cell(config: &ScanConfig, index: usize, bounds: &ParamBounds) -> Result<Cell> {
    let n = config.n;
    let lo = ceil(&(bounds.c1() * Rational::from_integer(n.into())));
    let hi = floor(&(bounds.c2() * Rational::from_integer(n.into())));
    let lo = lo.to_usize().unwrap_or(usize::MAX);
    let hi = hi.to_usize().unwrap_or(usize::MAX).min(n - 1);
    let mut cell = Cell {
        c1: bounds.c1().clone(),
        c2: bounds.c2().clone(),
        region: classify_region(bounds),
        split: 0,
        bipartite: 0,
        samples: 0,
    };
    if lo > hi {
        return Ok(cell);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index as u64);
    let mut attempts = config.samples_per_cell * ATTEMPTS_PER_SAMPLE;
    while cell.samples < config.samples_per_cell && attempts > 0 {
        attempts -= 1;
        let seq = DegreeSequence::new((0..n).map(|_| rng.gen_range(lo..=hi)).collect());
        if !seq.is_graphic() {
            continue;
        }
        cell.samples += 1;
        cell.split += usize::from(equal_sum_split_exists(&seq));
        let mut verdict = decide_bdr(&seq, bounds)?.verdict;
        if verdict == Verdict::Undecided {
            verdict = match decider::decide_exact(&seq, config.budget) {
                Ok(d) => d.verdict,
                Err(DecideError::BudgetExceeded(b)) => bail!(
                    "exact search exceeded its budget of {b} splits in cell ({}, {}); raise --budget",
                    bounds.c1(),
                    bounds.c2()
                ),
                Err(e) => return Err(e.into()),
            };
        }
        cell.bipartite += usize::from(verdict == Verdict::Bipartite);
    }
    Ok(cell)
}

pub fn run_scan(config: &ScanConfig, out: &mut impl Write) -> Result<()> {
    let rows: Vec<Result<Cell>> = cells(config)
        .par_iter()
        .enumerate()
        .map(|(i, bounds)| run_cell(config, i, bounds))
        .collect();
    writeln!(out, "{HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row?.csv())?;
    }
    Ok(())
}
