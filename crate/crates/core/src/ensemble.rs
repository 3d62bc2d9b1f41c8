//! Erdős–Rényi `G(n, p)` ensembles.
//!
//! Replica `r` of a sweep draws from its own ChaCha8 stream selected by
//! `(seed, r)`, and every pair `(i, j)` consumes one 64-bit draw in
//! lexicographic order. The same replica at two probabilities therefore sees
//! the same uniforms, so graphs are nested across the `p` grid. Results do
//! not depend on the number of worker threads: replicas are evaluated in
//! parallel but folded into the statistics in replica order.
//!
//! Samples with isolated vertices are redrawn (up to [`MAX_ATTEMPTS`] draws
//! per replica) because every index here assumes minimum degree ≥ 1.

use std::fmt;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::indices::{DegreePowers, IndexError, IndexFamily, IndexSpec};
use crate::sum::CompensatedSum;

/// Draws per replica before a cell is declared degenerate.
pub const MAX_ATTEMPTS: usize = 100;

/// Cells whose rejection rate exceeds this are flagged untrusted.
pub const UNTRUSTED_REJECTION_RATE: f64 = 0.01;

/// Average degree above which the dense-regime approximations apply.
pub const DENSE_DEGREE: f64 = 10.0;

/// Largest number of replicas folded per parallel batch.
const BATCH: usize = 256;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnsembleError {
    #[error("invalid ensemble configuration: {0}")]
    InvalidConfig(String),
    #[error("G({n}, {p}) produced isolated vertices in {attempts} consecutive draws")]
    DegenerateSample { n: usize, p: f64, attempts: usize },
    #[error("{which} requires {}, got a = {a}", which.regime())]
    RegimeViolation { which: AveragedInequality, a: f64 },
    #[error("insufficient overlap for a scaling collapse: {0}")]
    InsufficientOverlap(String),
    #[error(transparent)]
    Index(#[from] IndexError),
}

/// Parameters of a `(p, a)` sweep at fixed `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleConfig {
    pub n: usize,
    pub p_grid: Vec<f64>,
    pub a_grid: Vec<f64>,
    pub replicas: usize,
    pub seed: u64,
}

impl EnsembleConfig {
    pub fn new(
        n: usize,
        p_grid: Vec<f64>,
        a_grid: Vec<f64>,
        replicas: usize,
        seed: u64,
    ) -> Result<Self, EnsembleError> {
        let cfg = Self {
            n,
            p_grid,
            a_grid,
            replicas,
            seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), EnsembleError> {
        let bad = |msg: String| Err(EnsembleError::InvalidConfig(msg));
        if self.n < 2 {
            return bad(format!("n must be at least 2, got {}", self.n));
        }
        if self.replicas == 0 {
            return bad("replicas must be positive".into());
        }
        for (name, grid) in [("p", &self.p_grid), ("a", &self.a_grid)] {
            if grid.is_empty() {
                return bad(format!("{name} grid is empty"));
            }
            if grid.iter().any(|x| !x.is_finite()) {
                return bad(format!("{name} grid has a non-finite value"));
            }
            if grid.windows(2).any(|w| w[0] >= w[1]) {
                return bad(format!("{name} grid must be strictly increasing"));
            }
        }
        if let Some(p) = self.p_grid.iter().find(|&&p| p <= 0.0 || p >= 1.0) {
            return bad(format!("p must lie in (0, 1), got {p}"));
        }
        Ok(())
    }

    /// `⌈10⁷ / n⌉`, the customary replica count at order `n`.
    pub fn default_replicas(n: usize) -> usize {
        10_000_000usize.div_ceil(n.max(1))
    }

    /// [`default_replicas`](Self::default_replicas) capped by `budget`.
    pub fn budgeted_replicas(n: usize, budget: Option<usize>) -> usize {
        let default = Self::default_replicas(n);
        budget.map_or(default, |b| default.min(b.max(1)))
    }
}

/// A `G(n, p)` draw without isolated vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ErSample {
    pub graph: Graph,
    /// Draws discarded for containing isolated vertices.
    pub rejections: usize,
}

/// Random stream of replica `replica` under `seed`.
pub fn replica_rng(seed: u64, replica: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replica);
    rng
}

fn inclusion_threshold(p: f64) -> u64 {
    // p < 1, so the product stays below 2^64
    (p * 18_446_744_073_709_551_616.0) as u64
}

/// Draws from `G(n, p)`, redrawing while the sample has isolated vertices.
///
/// Each of the `n(n-1)/2` pairs is included independently with
/// probability `p`.
pub fn er_sample<R: RngCore>(n: usize, p: f64, rng: &mut R) -> Result<ErSample, EnsembleError> {
    if n < 2 {
        return Err(EnsembleError::InvalidConfig(format!(
            "n must be at least 2, got {n}"
        )));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(EnsembleError::InvalidConfig(format!(
            "p must lie in (0, 1), got {p}"
        )));
    }
    let threshold = inclusion_threshold(p);
    let expected = (p * (n * (n - 1)) as f64 / 2.0) as usize;
    let mut degrees = vec![0usize; n];
    for attempt in 0..MAX_ATTEMPTS {
        let mut edges = Vec::with_capacity(expected + expected / 8 + 8);
        degrees.fill(0);
        for u in 0..n {
            for v in u + 1..n {
                if rng.next_u64() < threshold {
                    edges.push((u, v));
                    degrees[u] += 1;
                    degrees[v] += 1;
                }
            }
        }
        if degrees.contains(&0) {
            continue;
        }
        match Graph::from_canonical_edges(n, edges) {
            Ok(graph) => {
                return Ok(ErSample {
                    graph,
                    rejections: attempt,
                })
            }
            Err(GraphError::IsolatedVertex(_)) => continue,
            Err(other) => unreachable!("sampler emits canonical edges: {other}"),
        }
    }
    Err(EnsembleError::DegenerateSample {
        n,
        p,
        attempts: MAX_ATTEMPTS,
    })
}

/// Running mean and unbiased variance (Welford), folded in a fixed order.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunningStats {
    count: usize,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn mean(&self) -> f64 {
        if self.count == 0 {
            f64::NAN
        } else {
            self.mean
        }
    }

    pub fn sample_variance(&self) -> f64 {
        match self.count {
            0 => f64::NAN,
            1 => 0.0,
            c => self.m2 / (c - 1) as f64,
        }
    }

    /// Standard error of the mean.
    pub fn stderr(&self) -> f64 {
        (self.sample_variance() / self.count as f64).sqrt()
    }
}

/// Per-graph quantities at one exponent.
#[derive(Debug, Clone, Copy)]
struct ExponentObservation {
    index: f64,
    /// `ISD_a + M1^{a+1}`
    isd_plus_m1: f64,
    /// `2^{a-1} χ_{-a} − ISD_a`
    chi_gap: f64,
    /// `ISD_a · M1^{a+1} − m²`
    product_gap: f64,
}

#[derive(Debug, Clone, Default)]
struct ExponentStats {
    index: RunningStats,
    isd_plus_m1: RunningStats,
    chi_gap: RunningStats,
    product_gap: RunningStats,
}

#[derive(Debug, Clone)]
struct CellStats {
    p: f64,
    degenerate: bool,
    rejections: usize,
    edges: RunningStats,
    degree: RunningStats,
    edges_squared: RunningStats,
    per_exponent: Vec<ExponentStats>,
}

struct Observer {
    a_grid: Vec<f64>,
    specs: Vec<IndexSpec>,
}

impl Observer {
    fn observe(&self, g: &Graph) -> Result<Vec<ExponentObservation>, IndexError> {
        let n = g.vertex_count();
        let m = g.edge_count() as f64;
        let max_deg = g.max_degree();
        self.a_grid
            .iter()
            .zip(&self.specs)
            .map(|(&a, spec)| {
                let pow = DegreePowers::new(max_deg, a);
                let neg_sum_pow = DegreePowers::new(2 * max_deg, -a);
                let mut isd = CompensatedSum::new();
                let mut chi = CompensatedSum::new();
                for &(u, v) in g.edges() {
                    let (du, dv) = (g.degree(u), g.degree(v));
                    isd.add(1.0 / (pow.get(du) + pow.get(dv)));
                    chi.add(neg_sum_pow.get(du + dv));
                }
                // M1^{a+1} = Σ_u d_u · d_u^a
                let m1: CompensatedSum = (0..n)
                    .map(|u| {
                        let d = g.degree(u);
                        d as f64 * pow.get(d)
                    })
                    .collect();
                let (isd, chi, m1) = (isd.value(), chi.value(), m1.value());
                let index = if spec.family() == IndexFamily::Isd {
                    isd
                } else {
                    spec.evaluate(g)?
                };
                Ok(ExponentObservation {
                    index,
                    isd_plus_m1: isd + m1,
                    chi_gap: 2f64.powf(a - 1.0) * chi - isd,
                    product_gap: isd * m1 - m * m,
                })
            })
            .collect()
    }
}

struct ReplicaOutcome {
    rejections: usize,
    edges: f64,
    degree: f64,
    observations: Vec<ExponentObservation>,
}

fn run_cell(cfg: &EnsembleConfig, p: f64, observer: &Observer) -> Result<CellStats, EnsembleError> {
    let mut cell = CellStats {
        p,
        degenerate: false,
        rejections: 0,
        edges: RunningStats::default(),
        degree: RunningStats::default(),
        edges_squared: RunningStats::default(),
        per_exponent: vec![ExponentStats::default(); cfg.a_grid.len()],
    };
    let n = cfg.n;
    let mut start = 0;
    // Batches grow from a single replica so degenerate cells stop early.
    let mut batch_len = 1;
    while start < cfg.replicas {
        let end = (start + batch_len).min(cfg.replicas);
        batch_len = (2 * batch_len).min(BATCH);
        let batch: Vec<Result<ReplicaOutcome, EnsembleError>> = (start..end)
            .into_par_iter()
            .map(|replica| {
                let mut rng = replica_rng(cfg.seed, replica as u64);
                let sample = er_sample(n, p, &mut rng)?;
                let g = &sample.graph;
                let m = g.edge_count() as f64;
                Ok(ReplicaOutcome {
                    rejections: sample.rejections,
                    edges: m,
                    degree: 2.0 * m / n as f64,
                    observations: observer.observe(g)?,
                })
            })
            .collect();
        for outcome in batch {
            let outcome = match outcome {
                Ok(o) => o,
                Err(EnsembleError::DegenerateSample { .. }) => {
                    cell.degenerate = true;
                    cell.rejections += MAX_ATTEMPTS;
                    return Ok(cell);
                }
                Err(e) => return Err(e),
            };
            cell.rejections += outcome.rejections;
            cell.edges.push(outcome.edges);
            cell.degree.push(outcome.degree);
            cell.edges_squared.push(outcome.edges * outcome.edges);
            for (stats, obs) in cell.per_exponent.iter_mut().zip(&outcome.observations) {
                stats.index.push(obs.index);
                stats.isd_plus_m1.push(obs.isd_plus_m1);
                stats.chi_gap.push(obs.chi_gap);
                stats.product_gap.push(obs.product_gap);
            }
        }
        start = end;
    }
    Ok(cell)
}

/// One `(n, p, a)` cell of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub p: f64,
    pub a: f64,
    /// Accepted samples; zero when the cell is degenerate.
    pub sample_count: usize,
    pub mean_isd: f64,
    pub stderr_isd: f64,
    pub mean_edges: f64,
    /// Measured average degree `⟨d⟩`.
    pub mean_deg: f64,
    /// `(n/4)[(n−1)p]^{1−a}`; NaN for families other than ISD.
    pub approx_isd: f64,
    /// `mean_isd / n`.
    pub scaled_ratio: f64,
    /// `¼ [(n−1)p]^{1−a}`; NaN for families other than ISD.
    pub approx_ratio: f64,
    pub rejections: usize,
}

impl SweepRow {
    pub const CSV_HEADER: [&'static str; 12] = [
        "n",
        "p",
        "a",
        "replicas",
        "mean_isd",
        "stderr_isd",
        "mean_edges",
        "mean_deg",
        "approx_isd",
        "scaled_ratio",
        "approx_ratio",
        "rejections",
    ];

    pub fn is_degenerate(&self) -> bool {
        self.sample_count == 0
    }

    /// Fraction of draws rejected for isolated vertices.
    pub fn rejection_rate(&self) -> f64 {
        let draws = self.rejections + self.sample_count;
        if draws == 0 {
            0.0
        } else {
            self.rejections as f64 / draws as f64
        }
    }

    pub fn untrusted(&self) -> bool {
        self.is_degenerate() || self.rejection_rate() > UNTRUSTED_REJECTION_RATE
    }

    /// `(n−1)p`, the expected average degree.
    pub fn expected_degree(&self) -> f64 {
        (self.n - 1) as f64 * self.p
    }
}

/// Dense-regime approximation `⟨ISD_a⟩ ≈ (n/4)[(n−1)p]^{1−a}`.
pub fn approx_isd(n: usize, p: f64, a: f64) -> f64 {
    n as f64 * approx_ratio((n - 1) as f64 * p, a)
}

/// `⟨ISD_a⟩/n ≈ ¼⟨d⟩^{1−a}`.
pub fn approx_ratio(mean_degree: f64, a: f64) -> f64 {
    let exponent = 1.0 - a;
    let power = if exponent == 0.0 {
        1.0
    } else if exponent == 1.0 {
        mean_degree
    } else {
        mean_degree.powf(exponent)
    };
    power / 4.0
}

/// Averaged forms of the single-graph inequalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AveragedInequality {
    /// `0 ≤ ⟨2^{a−1}χ_{−a} − ISD_a⟩`, `a > 1`.
    Eq1av,
    /// `0 ≤ ⟨ISD_a − 2^{a−1}χ_{−a}⟩`, `0 < a < 1`.
    Eq2av,
    /// `0 ≤ ⟨2^{a−1}χ_{−a} − ISD_a⟩`, `a < 0`.
    Eq3av,
    /// `(5/2)⟨m⟩ ≤ ⟨ISD_a + M1^{a+1}⟩`, `a > 0`.
    Eq4av,
    /// `2⟨m⟩ ≤ ⟨ISD_a + M1^{a+1}⟩`, `a < 0`.
    Eq5av,
    /// `⟨m²⟩ ≤ ⟨ISD_a M1^{a+1}⟩`, `a ≠ 0`.
    Eq6av,
}

impl AveragedInequality {
    pub const ALL: [AveragedInequality; 6] = [
        Self::Eq1av,
        Self::Eq2av,
        Self::Eq3av,
        Self::Eq4av,
        Self::Eq5av,
        Self::Eq6av,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Eq1av => "Eq1av",
            Self::Eq2av => "Eq2av",
            Self::Eq3av => "Eq3av",
            Self::Eq4av => "Eq4av",
            Self::Eq5av => "Eq5av",
            Self::Eq6av => "Eq6av",
        }
    }

    pub fn regime(self) -> &'static str {
        match self {
            Self::Eq1av => "a > 1",
            Self::Eq2av => "0 < a < 1",
            Self::Eq3av | Self::Eq5av => "a < 0",
            Self::Eq4av => "a > 0",
            Self::Eq6av => "a != 0",
        }
    }

    pub fn admits(self, a: f64) -> bool {
        match self {
            Self::Eq1av => a > 1.0,
            Self::Eq2av => a > 0.0 && a < 1.0,
            Self::Eq3av | Self::Eq5av => a < 0.0,
            Self::Eq4av => a > 0.0,
            Self::Eq6av => a != 0.0,
        }
    }

    pub fn check_grid(self, a_grid: &[f64]) -> Result<(), EnsembleError> {
        match a_grid.iter().find(|&&a| !self.admits(a)) {
            Some(&a) => Err(EnsembleError::RegimeViolation { which: self, a }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for AveragedInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AveragedInequality {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|w| w.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown averaged inequality `{}`", s.trim()))
    }
}

/// One `(p, a)` cell of an averaged-inequality check, oriented `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityRow {
    pub p: f64,
    pub a: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`.
    pub margin: f64,
    /// Standard error of the margin.
    pub stderr: f64,
    pub mean_deg: f64,
    pub sample_count: usize,
}

impl InequalityRow {
    pub const CSV_HEADER: [&'static str; 8] =
        ["p", "a", "lhs", "rhs", "margin", "stderr", "mean_deg", "replicas"];

    /// `margin ≥ −3·stderr`. Degenerate cells pass vacuously.
    pub fn within_band(&self) -> bool {
        self.sample_count == 0 || self.margin >= -3.0 * self.stderr
    }

    /// `margin / lhs`.
    pub fn relative_gap(&self) -> f64 {
        self.margin / self.lhs
    }
}

/// Simulated sweep holding per-cell statistics for every `(p, a)`.
#[derive(Debug, Clone)]
pub struct Sweep {
    config: EnsembleConfig,
    family: IndexFamily,
    cells: Vec<CellStats>,
}

impl Sweep {
    /// Simulates every cell of `cfg`, evaluating `family` at each grid
    /// exponent.
    pub fn run(cfg: &EnsembleConfig, family: IndexFamily) -> Result<Self, EnsembleError> {
        cfg.validate()?;
        let template = IndexSpec::new(family, family.takes_exponent().then_some(1.0))?;
        let specs = cfg
            .a_grid
            .iter()
            .map(|&a| template.with_exponent(a))
            .collect::<Result<Vec<_>, _>>()?;
        let observer = Observer {
            a_grid: cfg.a_grid.clone(),
            specs,
        };
        let cells = cfg
            .p_grid
            .iter()
            .map(|&p| run_cell(cfg, p, &observer))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            config: cfg.clone(),
            family,
            cells,
        })
    }

    pub fn config(&self) -> &EnsembleConfig {
        &self.config
    }

    /// One row per `(p, a)`, `p`-major.
    pub fn rows(&self) -> Vec<SweepRow> {
        let n = self.config.n;
        let is_isd = self.family == IndexFamily::Isd;
        let mut rows = Vec::with_capacity(self.cells.len() * self.config.a_grid.len());
        for cell in &self.cells {
            for (&a, stats) in self.config.a_grid.iter().zip(&cell.per_exponent) {
                let sample_count = if cell.degenerate { 0 } else { stats.index.count() };
                let (mean, stderr) = if sample_count == 0 {
                    (f64::NAN, f64::NAN)
                } else {
                    (stats.index.mean(), stats.index.stderr())
                };
                let (approx, approx_r) = if is_isd {
                    let d = (n - 1) as f64 * cell.p;
                    (approx_isd(n, cell.p, a), approx_ratio(d, a))
                } else {
                    (f64::NAN, f64::NAN)
                };
                let valid = |x: f64| if sample_count == 0 { f64::NAN } else { x };
                rows.push(SweepRow {
                    n,
                    p: cell.p,
                    a,
                    sample_count,
                    mean_isd: mean,
                    stderr_isd: stderr,
                    mean_edges: valid(cell.edges.mean()),
                    mean_deg: valid(cell.degree.mean()),
                    approx_isd: approx,
                    scaled_ratio: mean / n as f64,
                    approx_ratio: approx_r,
                    rejections: cell.rejections,
                });
            }
        }
        rows
    }

    /// Averaged inequality `which` on every cell, `p`-major.
    pub fn inequality(&self, which: AveragedInequality) -> Result<Vec<InequalityRow>, EnsembleError> {
        which.check_grid(&self.config.a_grid)?;
        let n = self.config.n as f64;
        let mut rows = Vec::new();
        for cell in &self.cells {
            let theory_edges = n * (n - 1.0) * cell.p / 2.0;
            for (&a, stats) in self.config.a_grid.iter().zip(&cell.per_exponent) {
                let (lhs, rhs, margin, stderr) = match which {
                    AveragedInequality::Eq1av | AveragedInequality::Eq3av => {
                        let gap = &stats.chi_gap;
                        (0.0, gap.mean(), gap.mean(), gap.stderr())
                    }
                    AveragedInequality::Eq2av => {
                        let gap = &stats.chi_gap;
                        (0.0, -gap.mean(), -gap.mean(), gap.stderr())
                    }
                    AveragedInequality::Eq4av | AveragedInequality::Eq5av => {
                        let factor = if which == AveragedInequality::Eq4av { 2.5 } else { 2.0 };
                        let lhs = factor * theory_edges;
                        let sum = &stats.isd_plus_m1;
                        (lhs, sum.mean(), sum.mean() - lhs, sum.stderr())
                    }
                    AveragedInequality::Eq6av => {
                        let lhs = cell.edges_squared.mean();
                        let gap = &stats.product_gap;
                        (lhs, lhs + gap.mean(), gap.mean(), gap.stderr())
                    }
                };
                let sample_count = if cell.degenerate { 0 } else { stats.index.count() };
                rows.push(InequalityRow {
                    p: cell.p,
                    a,
                    lhs,
                    rhs,
                    margin,
                    stderr,
                    mean_deg: cell.degree.mean(),
                    sample_count,
                });
            }
        }
        Ok(rows)
    }
}

/// Mean, standard error and dense-regime approximations of `spec.family()`
/// over `cfg.replicas` samples at every `(p, a)`. The exponent in `spec`
/// is replaced by each value of the `a` grid.
pub fn ensemble_average(cfg: &EnsembleConfig, spec: &IndexSpec) -> Result<Vec<SweepRow>, EnsembleError> {
    Ok(Sweep::run(cfg, spec.family())?.rows())
}

/// Checks the averaged inequality `which` on every cell of `cfg`.
pub fn avg_inequality_check(
    cfg: &EnsembleConfig,
    which: AveragedInequality,
) -> Result<Vec<InequalityRow>, EnsembleError> {
    which.check_grid(&cfg.a_grid)?;
    Sweep::run(cfg, IndexFamily::Isd)?.inequality(which)
}

/// Agreement of `⟨ISD_a⟩/n` curves for several `n` at one exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct CollapseEntry {
    pub a: f64,
    pub sizes: Vec<usize>,
    /// Common `⟨d⟩` interval, restricted to `⟨d⟩ ≥ 10`.
    pub degree_range: (f64, f64),
    pub grid_points: usize,
    /// Largest `(max − min)/mean` of the interpolated ratios across `n`.
    pub max_spread: f64,
    /// Largest relative deviation from `¼⟨d⟩^{1−a}`.
    pub max_approx_deviation: f64,
}

impl CollapseEntry {
    pub const CSV_HEADER: [&'static str; 7] = [
        "a",
        "sizes",
        "d_min",
        "d_max",
        "grid_points",
        "max_spread",
        "max_approx_deviation",
    ];
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollapseReport {
    pub entries: Vec<CollapseEntry>,
}

impl CollapseReport {
    pub fn entry(&self, a: f64) -> Option<&CollapseEntry> {
        self.entries.iter().find(|e| e.a == a)
    }
}

/// Log-log linear interpolation through `points` (sorted by x, positive).
fn interpolate(points: &[(f64, f64)], x: f64) -> f64 {
    let idx = points.partition_point(|&(px, _)| px < x);
    if idx < points.len() && points[idx].0 == x {
        return points[idx].1;
    }
    let (x0, y0) = points[idx - 1];
    let (x1, y1) = points[idx];
    let t = (x.ln() - x0.ln()) / (x1.ln() - x0.ln());
    (y0.ln() + t * (y1.ln() - y0.ln())).exp()
}

/// Compares `scaled_ratio` against measured `⟨d⟩` across graph orders.
///
/// For every exponent, the rows of each `n` with `⟨d⟩ ≥ 10` are
/// interpolated (log-log) onto the union of their `⟨d⟩` values inside the
/// common range; spread across `n` and deviation from `¼⟨d⟩^{1−a}` are
/// reported as maxima over that grid.
pub fn scaling_collapse(rows: &[SweepRow]) -> Result<CollapseReport, EnsembleError> {
    let mut exponents: Vec<f64> = rows.iter().map(|r| r.a).collect();
    exponents.sort_by(f64::total_cmp);
    exponents.dedup();
    if exponents.is_empty() {
        return Err(EnsembleError::InsufficientOverlap("no rows".into()));
    }
    let mut entries = Vec::with_capacity(exponents.len());
    for a in exponents {
        let mut sizes: Vec<usize> = rows.iter().filter(|r| r.a == a).map(|r| r.n).collect();
        sizes.sort_unstable();
        sizes.dedup();
        let curves: Vec<Vec<(f64, f64)>> = sizes
            .iter()
            .map(|&n| {
                let mut pts: Vec<(f64, f64)> = rows
                    .iter()
                    .filter(|r| r.a == a && r.n == n && !r.is_degenerate())
                    .filter(|r| r.mean_deg >= DENSE_DEGREE)
                    .map(|r| (r.mean_deg, r.scaled_ratio))
                    .collect();
                pts.sort_by(|x, y| x.0.total_cmp(&y.0));
                pts.dedup_by(|x, y| x.0 == y.0);
                pts
            })
            .collect();
        if sizes.len() < 2 {
            return Err(EnsembleError::InsufficientOverlap(format!(
                "a = {a}: need at least two graph orders, got {}",
                sizes.len()
            )));
        }
        if let Some(i) = curves.iter().position(Vec::is_empty) {
            return Err(EnsembleError::InsufficientOverlap(format!(
                "a = {a}: n = {} has no rows with <d> >= {DENSE_DEGREE}",
                sizes[i]
            )));
        }
        let lo = curves.iter().map(|c| c[0].0).fold(f64::MIN, f64::max);
        let hi = curves
            .iter()
            .map(|c| c[c.len() - 1].0)
            .fold(f64::MAX, f64::min);
        if lo > hi {
            return Err(EnsembleError::InsufficientOverlap(format!(
                "a = {a}: <d> ranges of the graph orders do not intersect"
            )));
        }
        let mut grid: Vec<f64> = curves
            .iter()
            .flatten()
            .map(|&(d, _)| d)
            .filter(|&d| d >= lo && d <= hi)
            .collect();
        grid.sort_by(f64::total_cmp);
        grid.dedup();

        let mut max_spread = 0.0f64;
        let mut max_dev = 0.0f64;
        for &d in &grid {
            let values: Vec<f64> = curves.iter().map(|c| interpolate(c, d)).collect();
            let max = values.iter().copied().fold(f64::MIN, f64::max);
            let min = values.iter().copied().fold(f64::MAX, f64::min);
            let mean = values.iter().sum::<f64>() / values.len() as f64;
            max_spread = max_spread.max((max - min) / mean);
            let approx = approx_ratio(d, a);
            for v in values {
                max_dev = max_dev.max((v - approx).abs() / approx);
            }
        }
        entries.push(CollapseEntry {
            a,
            sizes,
            degree_range: (lo, hi),
            grid_points: grid.len(),
            max_spread,
            max_approx_deviation: max_dev,
        });
    }
    Ok(CollapseReport { entries })
}
