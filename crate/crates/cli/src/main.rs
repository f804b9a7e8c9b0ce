//! `outdiv`: generate preference domains, measure their outer diversity and
//! run the table, curve and most-diverse-domain experiments.
//!
//! Exit codes: 0 success, 2 invalid input, 3 refused by a size guard,
//! 1 for I/O failures.

mod manifest;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use outdiv::distance::{dist_bruteforce, listed_or_brute, oracle_for, DistanceOracle};
use outdiv::diversity::{
    exact_outdiv, layers_csv, neighborhood_profile, popularity, popularity_csv, sampled_outdiv_with, DiversityReport,
};
use outdiv::domain::io::{format_domain, format_spec, parse_spec, read_domain_file};
use outdiv::experiments::{
    curve_csv, maxdiverse_sweep, microscope, outdiv_curve, table2_row, table_csv, Family, Instance, Mode, Sampling,
    SweepConfig, Table2Config,
};
use outdiv::maxdiverse::{sizes_csv, write_kmedian_lp};
use outdiv::{enumerate_domain, DomainSpec, Error, Ranking, Result};

use manifest::Outputs;

#[derive(Parser, Debug)]
#[command(name = "outdiv", version, about = "Outer diversity of ordinal preference domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Which domain to work on: a named family, a spec record, or a domain file.
#[derive(Args, Debug, Clone)]
struct DomainArgs {
    /// Family name: vote-rev, gs-cat, gs-bal, sp, sp-df, spoc, sc, 1d, 2d, 3d
    #[arg(long)]
    family: Option<String>,
    /// Number of candidates
    #[arg(long = "m")]
    m: Option<usize>,
    /// Seed for random families and sampling
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Single-line spec record, e.g. "family=sp-tree m=5 edges=0-1,1-2,1-3,3-4"
    #[arg(long)]
    spec: Option<String>,
    /// Domain file: "# m=<m> family=<tag>" then one ranking per line
    #[arg(long)]
    domain_file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct SamplingArgs {
    #[arg(long, default_value_t = 1000)]
    n_samples: usize,
    #[arg(long, default_value_t = 10)]
    reps: usize,
    /// exact, sampled, or auto (exact for m <= 8)
    #[arg(long, default_value = "auto")]
    mode: String,
}

impl SamplingArgs {
    fn mode(&self) -> Result<Mode> {
        self.mode.parse()
    }

    fn sampling(&self, seed: u64) -> Sampling {
        Sampling {
            n: self.n_samples,
            reps: self.reps,
            seed,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate a domain and write it as a domain file
    Generate {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Distance from rankings to the domain
    Distance {
        #[command(flatten)]
        domain: DomainArgs,
        /// Ranking as space-separated candidates, best first; repeatable
        #[arg(long, required = true)]
        ranking: Vec<String>,
        /// Also compute the brute-force distance and fail on disagreement
        #[arg(long)]
        check: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Outer diversity report as JSON
    Diversity {
        #[command(flatten)]
        domain: DomainArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Direct neighbourhood, with unique/shared counts per member
    Neighborhood {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Popularity of every member (m <= 8)
    Popularity {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Number of rankings at each distance from the domain (m <= 10)
    Histogram {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Diversity table of every family
    Table2 {
        #[arg(long = "m", default_value_t = 8)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        n_samples: usize,
        #[arg(long, default_value_t = 10)]
        reps: usize,
        /// Domains drawn per random family
        #[arg(long, default_value_t = 10)]
        instances: usize,
        /// Domain file for an extra LC row
        #[arg(long)]
        lc_file: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Out-div as a function of m
    Curve {
        /// Comma-separated family names; all families by default
        #[arg(long)]
        families: Option<String>,
        #[arg(long, default_value_t = 2)]
        m_min: usize,
        #[arg(long, default_value_t = 20)]
        m_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        sampling: SamplingArgs,
        /// Include SPOC and 3D-Cube at m >= 20
        #[arg(long)]
        force: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// IC, annealing and threshold-IC domains against size
    Maxdiverse {
        #[arg(long = "m", default_value_t = 8)]
        m: usize,
        /// Comma-separated sizes; powers of two by default
        #[arg(long)]
        sizes: Option<String>,
        /// Comma-separated thresholds or a range like 5-25
        #[arg(long, default_value = "5-25")]
        thresholds: String,
        /// Seeds averaged per size
        #[arg(long, default_value_t = 10)]
        runs: usize,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        sampling: SamplingArgs,
        /// Leave out the structured family points
        #[arg(long)]
        no_structured: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// k-median program over all rankings in LP format (m <= 6)
    ExportLp {
        #[arg(long = "m")]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Distance matrix and popularity of a domain (m <= 8)
    Microscope {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A resolved domain. Fixed families are enumerated only when needed.
struct Domain {
    label: String,
    spec: DomainSpec,
    members: Option<Vec<Ranking>>,
    instance: Option<Instance>,
}

impl Domain {
    fn m(&self) -> usize {
        self.spec.m()
    }

    fn members(&mut self) -> Result<&[Ranking]> {
        if self.members.is_none() {
            self.members = Some(enumerate_domain(&self.spec)?);
        }
        Ok(self.members.as_deref().expect("just filled"))
    }

    fn oracle(&self) -> Result<Box<dyn DistanceOracle>> {
        match (&self.instance, &self.spec) {
            (Some(inst), _) => inst.oracle(),
            (None, DomainSpec::Explicit { members }) => Ok(listed_or_brute(members)),
            (None, spec) => oracle_for(spec),
        }
    }
}

fn resolve(args: &DomainArgs, outputs: &mut Outputs) -> Result<Domain> {
    let given = [args.family.is_some(), args.spec.is_some(), args.domain_file.is_some()];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(Error::Argument("give exactly one of --family, --spec, --domain-file".into()));
    }
    if let Some(path) = &args.domain_file {
        outputs.input(path);
        let file = read_domain_file(path)?;
        let label = file.family.clone();
        let members = file.members.clone();
        return Ok(Domain {
            label,
            spec: file.into_spec(),
            members: Some(members),
            instance: None,
        });
    }
    if let Some(line) = &args.spec {
        let spec = parse_spec(line)?;
        return Ok(Domain {
            label: spec.family_tag().to_string(),
            spec,
            members: None,
            instance: None,
        });
    }
    let family: Family = args.family.as_deref().expect("checked above").parse()?;
    let m = args.m.ok_or_else(|| Error::Argument("--family needs --m".into()))?;
    if let Some(spec) = family.fixed_spec(m)? {
        return Ok(Domain {
            label: family.name().to_string(),
            spec,
            members: None,
            instance: None,
        });
    }
    let inst = family.instance(m, args.seed)?;
    Ok(Domain {
        label: family.name().to_string(),
        spec: inst.spec.clone(),
        members: Some(inst.members.clone()),
        instance: Some(inst),
    })
}

fn parse_list(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let num = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Argument(format!("bad number {s:?} in list {text:?}")))
        };
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b)?);
                if a > b {
                    return Err(Error::Argument(format!("empty range {part:?}")));
                }
                out.extend(a..=b);
            }
            None => out.push(num(part)?),
        }
    }
    if out.is_empty() {
        return Err(Error::Argument(format!("empty list {text:?}")));
    }
    Ok(out)
}

fn report_json(report: &DiversityReport) -> String {
    serde_json::to_string_pretty(report).expect("report is valid JSON") + "\n"
}

fn run(command: Command, argv: &[String]) -> Result<()> {
    let mut outputs = Outputs::default();
    let (name, out) = match command {
        Command::Generate { domain, out } => {
            let mut d = resolve(&domain, &mut outputs)?;
            let (m, label, spec_line) = (d.m(), d.label.clone(), format_spec(&d.spec));
            let text = format_domain(m, &label, d.members()?);
            outputs.file("domain.txt", text);
            if out.is_some() {
                outputs.file("spec.txt", spec_line + "\n");
            }
            ("generate", out)
        }
        Command::Distance {
            domain,
            ranking,
            check,
            out,
        } => {
            let mut d = resolve(&domain, &mut outputs)?;
            let oracle = d.oracle()?;
            let mut csv = String::from("ranking,distance\n");
            for text in &ranking {
                let v: Ranking = text.parse()?;
                let dist = oracle.distance(&v)?;
                if check {
                    let brute = dist_bruteforce(d.members()?, &v)?;
                    if brute != dist {
                        return Err(Error::Validation(format!(
                            "oracle gives {dist} but brute force gives {brute} for {v}"
                        )));
                    }
                }
                csv.push_str(&format!("{v},{dist}\n"));
            }
            outputs.file("distance.csv", csv);
            ("distance", out)
        }
        Command::Diversity { domain, sampling, out } => {
            let mut d = resolve(&domain, &mut outputs)?;
            let report = if sampling.mode()?.is_exact(d.m()) {
                exact_outdiv(d.members()?)?
            } else {
                let oracle = d.oracle()?;
                let mut r = sampled_outdiv_with(oracle.as_ref(), sampling.n_samples, sampling.reps, domain.seed)?;
                r.size = match &d.members {
                    Some(ms) => Some(ms.len()),
                    None => d.spec.predicted_size().and_then(|s| usize::try_from(s).ok()),
                };
                r
            };
            outputs.file("diversity.json", report_json(&report));
            ("diversity", out)
        }
        Command::Neighborhood { domain, out } => {
            let mut d = resolve(&domain, &mut outputs)?;
            let members = d.members()?;
            let profile = neighborhood_profile(members)?;
            let report = exact_outdiv(members)?;
            let dist1 = report.layers.as_ref().and_then(|l| l.get(1).copied()).unwrap_or(0);
            let rows: Vec<_> = members
                .iter()
                .zip(profile.unique.iter().zip(&profile.shared))
                .map(|(r, (u, s))| serde_json::json!({ "ranking": r.to_string(), "unique": u, "shared": s }))
                .collect();
            let doc = serde_json::json!({
                "m": d.m(),
                "size": rows.len(),
                "dist1": dist1,
                "dist1_norm": dist1 as f64 / rows.len() as f64,
                "members": rows,
            });
            outputs.file("neighborhood.json", serde_json::to_string_pretty(&doc).expect("valid JSON") + "\n");
            ("neighborhood", out)
        }
        Command::Popularity { domain, out } => {
            let mut d = resolve(&domain, &mut outputs)?;
            outputs.file("popularity.csv", popularity_csv(&popularity(d.members()?)?));
            ("popularity", out)
        }
        Command::Histogram { domain, out } => {
            let mut d = resolve(&domain, &mut outputs)?;
            let report = exact_outdiv(d.members()?)?;
            outputs.file("histogram.csv", layers_csv(report.layers.as_deref().unwrap_or_default()));
            ("histogram", out)
        }
        Command::Table2 {
            m,
            seed,
            n_samples,
            reps,
            instances,
            lc_file,
            out,
        } => {
            let cfg = Table2Config {
                m,
                seed,
                instances,
                n_samples,
                reps,
            };
            let mut rows = Vec::new();
            let mut details = serde_json::Map::new();
            for family in Family::ALL {
                let (row, stats) = table2_row(family, &cfg)?;
                if !stats.is_empty() {
                    details.insert(family.label().into(), serde_json::to_value(&stats).expect("valid JSON"));
                }
                rows.push(row);
            }
            if let Some(path) = &lc_file {
                outputs.input(path);
                let file = read_domain_file(path)?;
                let r = exact_outdiv(&file.members)?;
                let d1 = r.layers.as_ref().and_then(|l| l.get(1).copied()).unwrap_or(0) as f64;
                rows.push(outdiv::diversity::TableRow {
                    family: "LC".into(),
                    m: r.m,
                    size: file.members.len() as f64,
                    ansd: r.ansd,
                    outdiv: r.out_div,
                    dist1: d1,
                    dist1_norm: d1 / file.members.len() as f64,
                    std: None,
                });
            }
            outputs.file("table2.csv", table_csv(&rows));
            if out.is_some() {
                let text = serde_json::to_string_pretty(&details).expect("valid JSON") + "\n";
                outputs.file("table2_instances.json", text);
            }
            ("table2", out)
        }
        Command::Curve {
            families,
            m_min,
            m_max,
            seed,
            sampling,
            force,
            out,
        } => {
            let families: Vec<Family> = match families {
                Some(list) => list.split(',').map(|f| f.trim().parse()).collect::<Result<_>>()?,
                None => Family::ALL.to_vec(),
            };
            if m_min > m_max {
                return Err(Error::Argument(format!("--m-min {m_min} exceeds --m-max {m_max}")));
            }
            let ms: Vec<usize> = (m_min..=m_max).collect();
            let points = outdiv_curve(&families, &ms, sampling.mode()?, sampling.sampling(seed), force)?;
            outputs.file("curve.csv", curve_csv(&points));
            ("curve", out)
        }
        Command::Maxdiverse {
            m,
            sizes,
            thresholds,
            runs,
            budget,
            seed,
            sampling,
            no_structured,
            out,
        } => {
            let mut cfg = SweepConfig::new(m);
            if let Some(list) = sizes {
                cfg.sizes = parse_list(&list)?;
            }
            cfg.thresholds = parse_list(&thresholds)?;
            cfg.runs = runs;
            cfg.budget = budget;
            cfg.seed = seed;
            cfg.mode = sampling.mode()?;
            cfg.sampling = sampling.sampling(seed);
            cfg.structured = !no_structured;
            let sweep = maxdiverse_sweep(&cfg)?;
            outputs.file("sizes.csv", sizes_csv(&sweep.points));
            if out.is_some() {
                for (name, members) in &sweep.domains {
                    outputs.file(format!("domains/{name}.txt"), format_domain(m, name, members));
                }
            }
            ("maxdiverse", out)
        }
        Command::ExportLp { m, k, out } => {
            let mut buf = Vec::new();
            write_kmedian_lp(m, k, &mut buf)?;
            outputs.file(format!("kmedian_m{m}_k{k}.lp"), buf);
            ("export-lp", out)
        }
        Command::Microscope { domain, out } => {
            let mut d = resolve(&domain, &mut outputs)?;
            let view = microscope(d.members()?)?;
            outputs.file("matrix.csv", view.matrix_csv);
            outputs.file("popularity.csv", view.popularity_csv);
            ("microscope", out)
        }
    };
    outputs.emit(out.as_deref().map(Path::new), name, argv)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource(_) => 3,
        Error::Io(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    match run(cli.command, &argv) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("outdiv: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
