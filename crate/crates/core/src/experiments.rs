//! Experiment drivers shared by the CLI and the acceptance suite: the
//! family catalogue, the diversity table, out-div curves over `m`, the
//! size-versus-diversity sweep of the search heuristics, and microscope
//! exports.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::distance::{build_listed_oracle, oracle_for, DistanceOracle, ListedShape};
use crate::diversity::{
    distance_matrix_csv, exact_outdiv, popularity, popularity_csv, sample_std, sampled_outdiv, sampled_outdiv_with,
    DiversityReport, TableRow, MAX_POPULARITY_M,
};
use crate::domain::{enumerate_domain, sample_euclidean, sample_sc, DomainSpec};
use crate::error::{Error, Result};
use crate::maxdiverse::{ic_domain, simulated_annealing, threshold_ic, AnnealingParams, SizePoint};
use crate::ranking::{factorial, Ranking};

pub const TABLE2_M: usize = 8;
pub const RANDOM_INSTANCES: usize = 10;
/// `auto` mode evaluates exactly up to this many candidates.
pub const AUTO_EXACT_M: usize = 8;
pub const CURVE_HEADER: &str = "family,m,outdiv,std";

/// Mixes `seed` and a stream tag into an independent seed (splitmix64).
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    VoteRev,
    GsCat,
    GsBal,
    Sp,
    SpDf,
    Spoc,
    Sc,
    Line,
    Square,
    Cube,
}

impl Family {
    /// Table order.
    pub const ALL: [Family; 10] = [
        Family::VoteRev,
        Family::GsCat,
        Family::GsBal,
        Family::Sp,
        Family::SpDf,
        Family::Spoc,
        Family::Sc,
        Family::Line,
        Family::Square,
        Family::Cube,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Family::VoteRev => "Vote+Rev",
            Family::GsCat => "GS/cat",
            Family::GsBal => "GS/bal",
            Family::Sp => "SP",
            Family::SpDf => "SP/DF",
            Family::Spoc => "SPOC",
            Family::Sc => "SC",
            Family::Line => "1D-Int",
            Family::Square => "2D-Square",
            Family::Cube => "3D-Cube",
        }
    }

    /// Command-line name.
    pub fn name(self) -> &'static str {
        match self {
            Family::VoteRev => "vote-rev",
            Family::GsCat => "gs-cat",
            Family::GsBal => "gs-bal",
            Family::Sp => "sp",
            Family::SpDf => "sp-df",
            Family::Spoc => "spoc",
            Family::Sc => "sc",
            Family::Line => "1d",
            Family::Square => "2d",
            Family::Cube => "3d",
        }
    }

    /// Families whose domain depends on the seed.
    pub fn is_random(self) -> bool {
        matches!(self, Family::Sc | Family::Line | Family::Square | Family::Cube)
    }

    pub fn min_m(self) -> usize {
        match self {
            Family::SpDf => 5,
            Family::VoteRev | Family::Line | Family::Square | Family::Cube => 2,
            _ => 1,
        }
    }

    /// The domain of a fixed family without enumerating it; `None` for
    /// random families.
    pub fn fixed_spec(self, m: usize) -> Result<Option<DomainSpec>> {
        if m < self.min_m() {
            return Err(Error::Argument(format!("{} needs m >= {}, got {m}", self.label(), self.min_m())));
        }
        Ok(match self {
            Family::VoteRev => Some(DomainSpec::vote_and_reverse(&Ranking::identity(m))),
            Family::GsCat => Some(DomainSpec::GsCat { m }),
            Family::GsBal => Some(DomainSpec::GsBal { m }),
            Family::Sp => Some(DomainSpec::sp(m)),
            Family::SpDf => Some(DomainSpec::SpDf { m }),
            Family::Spoc => Some(DomainSpec::spoc(m)),
            Family::Sc | Family::Line | Family::Square | Family::Cube => None,
        })
    }

    /// Out-div of the family at `m`. Fixed families are only enumerated in
    /// exact mode; random ones are drawn with `seed`.
    pub fn diversity(self, m: usize, seed: u64, mode: Mode, sampling: Sampling) -> Result<DiversityReport> {
        if let Some(spec) = self.fixed_spec(m)? {
            return if mode.is_exact(m) {
                exact_outdiv(&enumerate_domain(&spec)?)
            } else {
                sampled_outdiv(&spec, sampling.n, sampling.reps, sampling.seed)
            };
        }
        let inst = self.instance(m, seed)?;
        let oracle = inst.oracle()?;
        evaluate(&inst.members, Some(oracle.as_ref()), mode, sampling)
    }

    pub fn instance(self, m: usize, seed: u64) -> Result<Instance> {
        if m < self.min_m() {
            return Err(Error::Argument(format!("{} needs m >= {}, got {m}", self.label(), self.min_m())));
        }
        let euclidean = |d: usize| -> Result<Instance> {
            let dom = sample_euclidean(m, d, seed)?;
            Ok(Instance {
                family: self,
                spec: DomainSpec::Euclidean { points: dom.points },
                members: dom.members,
            })
        };
        let spec = match self {
            Family::Sc => sample_sc(m, seed)?,
            Family::Line => return euclidean(1),
            Family::Square => return euclidean(2),
            Family::Cube => return euclidean(3),
            _ => self.fixed_spec(m)?.expect("fixed family"),
        };
        let members = enumerate_domain(&spec)?;
        Ok(Instance {
            family: self,
            spec,
            members,
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| s.eq_ignore_ascii_case(f.name()) || s.eq_ignore_ascii_case(f.label()))
            .ok_or_else(|| {
                let names: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
                Error::Argument(format!("unknown family {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

/// A generated domain together with its member list.
#[derive(Debug, Clone)]
pub struct Instance {
    pub family: Family,
    pub spec: DomainSpec,
    pub members: Vec<Ranking>,
}

impl Instance {
    /// Fastest oracle, reusing the member list for the listed families.
    pub fn oracle(&self) -> Result<Box<dyn DistanceOracle>> {
        match self.family {
            Family::Sc => Ok(Box::new(build_listed_oracle(&self.members, ListedShape::Path)?)),
            Family::Line | Family::Square | Family::Cube => {
                Ok(Box::new(build_listed_oracle(&self.members, ListedShape::Tree)?))
            }
            _ => oracle_for(&self.spec),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    Exact,
    Sampled,
    Auto,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "sampled" => Ok(Mode::Sampled),
            "auto" => Ok(Mode::Auto),
            _ => Err(Error::Argument(format!("unknown mode {s:?}; expected exact, sampled or auto"))),
        }
    }
}

impl Mode {
    pub fn is_exact(self, m: usize) -> bool {
        match self {
            Mode::Exact => true,
            Mode::Sampled => false,
            Mode::Auto => m <= AUTO_EXACT_M,
        }
    }
}

/// Sampling parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Sampling {
    pub n: usize,
    pub reps: usize,
    pub seed: u64,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            n: crate::diversity::DEFAULT_SAMPLES,
            reps: crate::diversity::DEFAULT_REPS,
            seed: 0,
        }
    }
}

/// Diversity of a member list, exactly or by sampling through `oracle`.
pub fn evaluate(
    members: &[Ranking],
    oracle: Option<&dyn DistanceOracle>,
    mode: Mode,
    sampling: Sampling,
) -> Result<DiversityReport> {
    let Some(first) = members.first() else {
        return Err(Error::Argument("domain is empty".into()));
    };
    let m = first.len();
    if mode.is_exact(m) {
        return exact_outdiv(members);
    }
    let fallback;
    let oracle = match oracle {
        Some(o) => o,
        None => {
            fallback = crate::distance::listed_or_brute(members);
            fallback.as_ref()
        }
    };
    let mut report = sampled_outdiv_with(oracle, sampling.n, sampling.reps, sampling.seed)?;
    report.size = Some(members.len());
    Ok(report)
}

/// Per-instance figures behind a random-family table row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceStats {
    pub seed: u64,
    pub size: usize,
    pub dist1: u64,
    pub exact_outdiv: f64,
    pub sampled: DiversityReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Table2Config {
    pub m: usize,
    pub seed: u64,
    pub instances: usize,
    pub n_samples: usize,
    pub reps: usize,
}

impl Default for Table2Config {
    fn default() -> Self {
        Table2Config {
            m: TABLE2_M,
            seed: 0,
            instances: RANDOM_INSTANCES,
            n_samples: crate::diversity::DEFAULT_SAMPLES,
            reps: crate::diversity::DEFAULT_REPS,
        }
    }
}

fn exact_row(label: &str, members: &[Ranking]) -> Result<TableRow> {
    let r = exact_outdiv(members)?;
    let d1 = r.layers.as_ref().and_then(|l| l.get(1).copied()).unwrap_or(0);
    Ok(TableRow {
        family: label.to_string(),
        m: r.m,
        size: members.len() as f64,
        ansd: r.ansd,
        outdiv: r.out_div,
        dist1: d1 as f64,
        dist1_norm: d1 as f64 / members.len() as f64,
        std: None,
    })
}

/// Table row for one family. Fixed families are computed exactly. Random
/// families average `cfg.instances` sampled domains: their size and direct
/// neighbourhood come from exact layering, ansd and out-div from the
/// sampling estimator, and `std` is the largest per-instance estimator std.
pub fn table2_row(family: Family, cfg: &Table2Config) -> Result<(TableRow, Vec<InstanceStats>)> {
    if !family.is_random() {
        let inst = family.instance(cfg.m, cfg.seed)?;
        return Ok((exact_row(family.label(), &inst.members)?, Vec::new()));
    }
    if cfg.instances == 0 {
        return Err(Error::Argument("need at least one instance".into()));
    }
    let mut stats = Vec::with_capacity(cfg.instances);
    for i in 0..cfg.instances as u64 {
        let seed = cfg.seed.wrapping_add(i);
        let inst = family.instance(cfg.m, seed)?;
        let exact = exact_outdiv(&inst.members)?;
        let oracle = inst.oracle()?;
        let sampling_seed = derive_seed(seed, 1);
        let mut sampled = sampled_outdiv_with(oracle.as_ref(), cfg.n_samples, cfg.reps, sampling_seed)?;
        sampled.size = Some(inst.members.len());
        stats.push(InstanceStats {
            seed,
            size: inst.members.len(),
            dist1: exact.layers.as_ref().and_then(|l| l.get(1).copied()).unwrap_or(0),
            exact_outdiv: exact.out_div,
            sampled,
        });
    }
    let k = stats.len() as f64;
    let mean = |f: &dyn Fn(&InstanceStats) -> f64| stats.iter().map(f).sum::<f64>() / k;
    let row = TableRow {
        family: family.label().to_string(),
        m: cfg.m,
        size: mean(&|s| s.size as f64),
        ansd: mean(&|s| s.sampled.ansd),
        outdiv: mean(&|s| s.sampled.out_div),
        dist1: mean(&|s| s.dist1 as f64),
        dist1_norm: mean(&|s| s.dist1 as f64 / s.size as f64),
        std: Some(
            stats
                .iter()
                .filter_map(|s| s.sampled.samples.as_ref().map(|x| x.std))
                .fold(0.0, f64::max),
        ),
    };
    Ok((row, stats))
}

/// Every table row, plus an `LC` row when that domain is supplied.
pub fn table2(cfg: &Table2Config, lc: Option<&[Ranking]>) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for family in Family::ALL {
        rows.push(table2_row(family, cfg)?.0);
    }
    if let Some(members) = lc {
        rows.push(exact_row("LC", members)?);
    }
    Ok(rows)
}

pub fn table_csv(rows: &[TableRow]) -> String {
    let mut out = format!("{}\n", crate::diversity::TABLE_HEADER);
    for r in rows {
        let _ = writeln!(out, "{}", r.to_csv());
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePoint {
    pub family: String,
    pub m: usize,
    pub outdiv: f64,
    /// Out-div-scale std of the sampling estimator; absent for exact points.
    pub std: Option<f64>,
}

impl CurvePoint {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{:.6},{}",
            self.family,
            self.m,
            self.outdiv,
            self.std.map(|s| format!("{s:.6}")).unwrap_or_default()
        )
    }
}

pub fn curve_csv(points: &[CurvePoint]) -> String {
    let mut out = format!("{CURVE_HEADER}\n");
    for p in points {
        let _ = writeln!(out, "{}", p.to_csv());
    }
    out
}

/// Families skipped at `m >= 20` unless forced, as in the published curves.
pub fn curve_omits(family: Family, m: usize) -> bool {
    m >= 20 && matches!(family, Family::Spoc | Family::Cube)
}

/// Out-div of each family for each `m`. Values of `m` below a family's
/// minimum are skipped.
pub fn outdiv_curve(
    families: &[Family],
    ms: &[usize],
    mode: Mode,
    sampling: Sampling,
    force: bool,
) -> Result<Vec<CurvePoint>> {
    let mut points = Vec::new();
    for &family in families {
        for &m in ms {
            if m < family.min_m() || (!force && curve_omits(family, m)) {
                continue;
            }
            let seed = derive_seed(sampling.seed, m as u64);
            let sampling = Sampling { seed: derive_seed(seed, 1), ..sampling };
            let r = family.diversity(m, seed, mode, sampling)?;
            points.push(CurvePoint {
                family: family.label().to_string(),
                m,
                outdiv: r.out_div,
                std: r.samples.as_ref().map(|s| s.outdiv_std()),
            });
        }
    }
    Ok(points)
}

/// Powers of two up to `min(m!/2, 2^16)`.
pub fn default_sizes(m: usize) -> Vec<usize> {
    let cap = if m < 34 { (factorial(m) / 2).min(1 << 16) as usize } else { 1 << 16 };
    let mut out = vec![1];
    while out.last().unwrap() * 2 <= cap {
        out.push(out.last().unwrap() * 2);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub m: usize,
    pub sizes: Vec<usize>,
    pub thresholds: Vec<usize>,
    pub runs: usize,
    pub seed: u64,
    pub mode: Mode,
    pub sampling: Sampling,
    pub budget: usize,
    /// Add a point for each fixed structured family.
    pub structured: bool,
}

impl SweepConfig {
    pub fn new(m: usize) -> Self {
        SweepConfig {
            m,
            sizes: default_sizes(m),
            thresholds: (5..=25).collect(),
            runs: 10,
            seed: 0,
            mode: Mode::Auto,
            sampling: Sampling::default(),
            budget: crate::maxdiverse::DEFAULT_THRESHOLD_BUDGET,
            structured: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepOutput {
    pub points: Vec<SizePoint>,
    /// A representative domain per point, named for file output.
    pub domains: Vec<(String, Vec<Ranking>)>,
}

fn mean_std(xs: &[f64]) -> (f64, Option<f64>) {
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    (mean, (xs.len() > 1).then(|| sample_std(xs)))
}

/// IC and annealed domains over the size grid (mean over `runs` seeds),
/// threshold-IC over the threshold grid, and optionally the structured
/// families, all scored by out-div.
pub fn maxdiverse_sweep(cfg: &SweepConfig) -> Result<SweepOutput> {
    let m = cfg.m;
    if cfg.runs == 0 {
        return Err(Error::Argument("need at least one run".into()));
    }
    let score = |members: &[Ranking], seed: u64| -> Result<f64> {
        Ok(evaluate(members, None, cfg.mode, Sampling { seed, ..cfg.sampling })?.out_div)
    };
    let mut points = Vec::new();
    let mut domains = Vec::new();
    for &k in &cfg.sizes {
        let (mut ic, mut sa) = (Vec::new(), Vec::new());
        for run in 0..cfg.runs as u64 {
            let seed = derive_seed(cfg.seed, run);
            let eval_seed = derive_seed(seed, 1);
            let a = ic_domain(m, k, seed)?;
            let b = simulated_annealing(m, k, AnnealingParams::with_seed(seed))?;
            ic.push(score(&a, eval_seed)?);
            sa.push(score(&b, eval_seed)?);
            if run == 0 {
                domains.push((format!("ic_k{k}"), a));
                domains.push((format!("anneal_k{k}"), b));
            }
        }
        for (method, xs) in [("ic", &ic), ("anneal", &sa)] {
            let (outdiv, std) = mean_std(xs);
            points.push(SizePoint { method: method.into(), m, size_or_t: k as f64, outdiv, std });
        }
    }
    for &t in &cfg.thresholds {
        let seed = derive_seed(cfg.seed, 1000 + t as u64);
        let kept = threshold_ic(m, t, seed, cfg.budget)?;
        let outdiv = score(&kept, derive_seed(seed, 1))?;
        points.push(SizePoint {
            method: "thres-ic".into(),
            m,
            size_or_t: kept.len() as f64,
            outdiv,
            std: None,
        });
        domains.push((format!("thres-ic_t{t}"), kept));
    }
    if cfg.structured {
        for family in Family::ALL.into_iter().filter(|f| !f.is_random() && m >= f.min_m()) {
            let inst = family.instance(m, cfg.seed)?;
            let oracle = inst.oracle()?;
            let r = evaluate(&inst.members, Some(oracle.as_ref()), cfg.mode, cfg.sampling)?;
            points.push(SizePoint {
                method: family.label().into(),
                m,
                size_or_t: inst.members.len() as f64,
                outdiv: r.out_div,
                std: r.samples.as_ref().map(|s| s.outdiv_std()),
            });
        }
    }
    Ok(SweepOutput { points, domains })
}

/// Pairwise member distances and popularity, for microscope plots.
#[derive(Debug, Clone, PartialEq)]
pub struct Microscope {
    pub matrix_csv: String,
    pub popularity_csv: String,
}

pub fn microscope(members: &[Ranking]) -> Result<Microscope> {
    let Some(first) = members.first() else {
        return Err(Error::Argument("domain is empty".into()));
    };
    if first.len() > MAX_POPULARITY_M {
        return Err(Error::Resource(format!(
            "microscope needs m <= {MAX_POPULARITY_M}, got {}",
            first.len()
        )));
    }
    Ok(Microscope {
        matrix_csv: distance_matrix_csv(members),
        popularity_csv: popularity_csv(&popularity(members)?),
    })
}
