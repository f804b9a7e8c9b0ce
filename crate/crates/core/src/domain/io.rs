//! Text formats: domain files and single-line domain spec records.
//!
//! A domain file starts with `# m=<m> family=<tag>` and lists one ranking per
//! line. A spec record is a line of `key=value` fields, for example
//! `family=euclidean m=4 d=2 points=0.1,0.2;0.3,-0.5;...`.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::path::Path;

use super::{CandidateGraph, CandidatePoints, DomainSpec, GsTree};
use crate::error::{Error, Result};
use crate::ranking::Ranking;

/// Largest `m=` and `d=` a spec record may request. Records can make the
/// parser sample points or allocate graphs of that size.
pub const MAX_SPEC_M: usize = 4096;
pub const MAX_SPEC_D: usize = 64;

/// Contents of a domain file.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainFile {
    pub m: usize,
    pub family: String,
    pub members: Vec<Ranking>,
}

impl DomainFile {
    pub fn into_spec(self) -> DomainSpec {
        DomainSpec::Explicit {
            members: self.members,
        }
    }
}

pub fn format_domain(m: usize, family: &str, members: &[Ranking]) -> String {
    let mut out = format!("# m={m} family={family}\n");
    for r in members {
        let _ = writeln!(out, "{r}");
    }
    out
}

pub fn write_domain_file(path: &Path, m: usize, family: &str, members: &[Ranking]) -> Result<()> {
    std::fs::write(path, format_domain(m, family, members))?;
    Ok(())
}

pub fn read_domain_file(path: &Path) -> Result<DomainFile> {
    parse_domain(&std::fs::read_to_string(path)?)
}

/// Parses a domain file. Blank lines and later `#` comment lines are skipped;
/// duplicates and an empty member list are errors.
pub fn parse_domain(text: &str) -> Result<DomainFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let Some((hline, header)) = lines.next() else {
        return Err(Error::parse(1, "missing header"));
    };
    let Some(fields) = header.strip_prefix('#') else {
        return Err(Error::parse(hline, "header must start with '#'"));
    };
    let fields = parse_fields(fields, hline)?;
    let m: usize = fields
        .get("m")
        .ok_or_else(|| Error::parse(hline, "header lacks m="))?
        .parse()
        .map_err(|_| Error::parse(hline, "m is not an integer"))?;
    if m == 0 {
        return Err(Error::parse(hline, "m must be positive"));
    }
    let family = fields
        .get("family")
        .ok_or_else(|| Error::parse(hline, "header lacks family="))?
        .to_string();
    let mut members = Vec::new();
    let mut seen = HashSet::new();
    for (n, line) in lines {
        if line.starts_with('#') {
            continue;
        }
        let r: Ranking = line.parse().map_err(|e: Error| Error::parse(n, e.to_string()))?;
        if r.len() != m {
            return Err(Error::parse(n, format!("expected {m} candidates, got {}", r.len())));
        }
        if !seen.insert(r.clone()) {
            return Err(Error::parse(n, format!("duplicate ranking {r}")));
        }
        members.push(r);
    }
    if members.is_empty() {
        return Err(Error::parse(hline, "domain file lists no rankings"));
    }
    Ok(DomainFile { m, family, members })
}

fn parse_fields(text: &str, line: usize) -> Result<BTreeMap<&str, &str>> {
    let mut out = BTreeMap::new();
    for tok in text.split_whitespace() {
        let Some((k, v)) = tok.split_once('=') else {
            return Err(Error::parse(line, format!("expected key=value, got '{tok}'")));
        };
        if out.insert(k, v).is_some() {
            return Err(Error::parse(line, format!("key '{k}' given twice")));
        }
    }
    Ok(out)
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn edges_field(g: &CandidateGraph) -> String {
    join(g.edges().into_iter().map(|(a, b)| format!("{a}-{b}")), ",")
}

/// Renders `spec` as a single-line record that [`parse_spec`] reads back.
pub fn format_spec(spec: &DomainSpec) -> String {
    let tag = spec.family_tag();
    let m = spec.m();
    let comma = |r: &Ranking| join(r.as_slice(), ",");
    match spec {
        DomainSpec::SpAxis { axis } => format!("family={tag} axis={}", comma(axis)),
        DomainSpec::Spoc { cycle } => format!("family={tag} cycle={}", comma(cycle)),
        DomainSpec::SpTree { tree } => format!("family={tag} m={m} edges={}", edges_field(tree)),
        DomainSpec::SpGraph { graph } => format!("family={tag} m={m} edges={}", edges_field(graph)),
        DomainSpec::GsTree { tree } => format!("family={tag} tree={tree}"),
        DomainSpec::GsCat { .. } | DomainSpec::GsBal { .. } | DomainSpec::SpDf { .. } => {
            format!("family={tag} m={m}")
        }
        DomainSpec::SingleCrossing { seed, .. } => format!("family={tag} m={m} seed={seed}"),
        DomainSpec::Euclidean { points } => format!(
            "family={tag} m={m} d={} points={}",
            points.dim(),
            join(points.coords().iter().map(|p| join(p.iter().map(|x| format!("{x:?}")), ",")), ";")
        ),
        DomainSpec::Explicit { members } => {
            format!("family={tag} rankings={}", join(members.iter().map(comma), ";"))
        }
        DomainSpec::FourAlignment { base_m } => format!("family={tag} base={base_m}"),
    }
}

/// Parses a record such as `family=sp axis=0,1,2,3` or `family=gs-cat m=8`.
///
/// Families with a default shape accept `m=` alone: `sp` and `spoc` use the
/// identity order. `euclidean` without `points=` samples them from `seed`.
pub fn parse_spec(line: &str) -> Result<DomainSpec> {
    let fields = parse_fields(line.trim(), 1)?;
    let mut used: HashSet<&str> = HashSet::new();
    let mut get = |key: &'static str| {
        used.insert(key);
        fields.get(key).copied()
    };
    let bad = |msg: String| Error::Validation(msg);
    let int = |key: &str, v: Option<&str>| -> Result<Option<u64>> {
        v.map(|s| s.parse::<u64>().map_err(|_| bad(format!("{key} is not an integer: '{s}'"))))
            .transpose()
    };
    let family = get("family").ok_or_else(|| bad("record lacks family=".into()))?;
    let m = int("m", get("m"))?.map(|x| x as usize);
    if m.is_some_and(|m| m > MAX_SPEC_M) {
        return Err(bad(format!("m= exceeds {MAX_SPEC_M}")));
    }
    let need_m = || m.ok_or_else(|| bad(format!("family {family} needs m=")));
    let ranking = |s: &str| -> Result<Ranking> {
        let perm = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad(format!("bad candidate '{t}'"))))
            .collect::<Result<Vec<_>>>()?;
        Ranking::new(perm)
    };
    let graph = |edges: Option<&str>, m: usize| -> Result<CandidateGraph> {
        let mut list = Vec::new();
        for e in edges.unwrap_or("").split(',').filter(|e| !e.is_empty()) {
            let (a, b) = e.split_once('-').ok_or_else(|| bad(format!("bad edge '{e}'")))?;
            let a = a.parse().map_err(|_| bad(format!("bad edge '{e}'")))?;
            let b = b.parse().map_err(|_| bad(format!("bad edge '{e}'")))?;
            list.push((a, b));
        }
        CandidateGraph::from_edges(m, &list)
    };
    let order = |key: &str, v: Option<&str>| -> Result<Ranking> {
        match (v, m) {
            (Some(s), _) => ranking(s),
            (None, Some(m)) if m >= 1 => Ok(Ranking::identity(m)),
            _ => Err(bad(format!("family {family} needs {key}= or m="))),
        }
    };
    let spec = match family {
        "sp" => DomainSpec::SpAxis { axis: order("axis", get("axis"))? },
        "spoc" => DomainSpec::Spoc { cycle: order("cycle", get("cycle"))? },
        "sp-tree" => DomainSpec::SpTree { tree: graph(get("edges"), need_m()?)? },
        "sp-graph" => DomainSpec::SpGraph { graph: graph(get("edges"), need_m()?)? },
        "gs-tree" => DomainSpec::GsTree {
            tree: get("tree").ok_or_else(|| bad("gs-tree needs tree=".into()))?.parse::<GsTree>()?,
        },
        "gs-cat" => DomainSpec::GsCat { m: need_m()? },
        "gs-bal" => DomainSpec::GsBal { m: need_m()? },
        "sp-df" => DomainSpec::SpDf { m: need_m()? },
        "sc" => DomainSpec::SingleCrossing {
            m: need_m()?,
            seed: int("seed", get("seed"))?.unwrap_or(0),
        },
        "euclidean" => {
            let d = int("d", get("d"))?.ok_or_else(|| bad("euclidean needs d=".into()))? as usize;
            if d > MAX_SPEC_D {
                return Err(bad(format!("d= exceeds {MAX_SPEC_D}")));
            }
            let seed = int("seed", get("seed"))?;
            let points = match get("points") {
                Some(text) => {
                    let coords = text
                        .split(';')
                        .map(|p| {
                            p.split(',')
                                .map(|x| x.trim().parse::<f64>().map_err(|_| bad(format!("bad coordinate '{x}'"))))
                                .collect::<Result<Vec<f64>>>()
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let pts = CandidatePoints::new(d, coords)?;
                    if m.is_some_and(|m| m != pts.num_candidates()) {
                        return Err(bad("m= disagrees with the number of points".into()));
                    }
                    pts
                }
                None => super::sample_euclidean(need_m()?, d, seed.unwrap_or(0))?.points,
            };
            DomainSpec::Euclidean { points }
        }
        "explicit" => {
            let text = get("rankings").ok_or_else(|| bad("explicit needs rankings=".into()))?;
            DomainSpec::explicit(text.split(';').map(ranking).collect::<Result<Vec<_>>>()?)?
        }
        "four-alignment" => DomainSpec::FourAlignment {
            base_m: int("base", get("base"))?.ok_or_else(|| bad("four-alignment needs base=".into()))? as usize,
        },
        other => return Err(bad(format!("unknown family '{other}'"))),
    };
    if let Some(extra) = fields.keys().find(|k| !used.contains(*k)) {
        return Err(bad(format!("unexpected key '{extra}' for family {family}")));
    }
    if let Some(m) = m {
        if m != spec.m() {
            return Err(bad(format!("m={m} disagrees with the spec ({} candidates)", spec.m())));
        }
    }
    spec.validate()?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{four_alignment, sample_sc};

    #[test]
    fn domain_file_round_trip() {
        let members: Vec<Ranking> = vec!["0 1 2".parse().unwrap(), "2 1 0".parse().unwrap()];
        let text = format_domain(3, "explicit", &members);
        assert_eq!(text, "# m=3 family=explicit\n0 1 2\n2 1 0\n");
        let parsed = parse_domain(&text).unwrap();
        assert_eq!(parsed.members, members);
        assert_eq!(parsed.family, "explicit");
    }

    #[test]
    fn domain_file_errors() {
        assert!(parse_domain("").is_err());
        assert!(parse_domain("0 1 2\n").is_err());
        assert!(parse_domain("# m=3\n0 1 2\n").is_err());
        assert!(parse_domain("# m=3 family=x\n").is_err());
        assert!(parse_domain("# m=3 family=x\n0 1 2\n0 1 2\n").is_err());
        assert!(parse_domain("# m=3 family=x\n0 1\n").is_err());
        assert!(matches!(
            parse_domain("# m=3 family=x\n0 1 2\n\n0 2 2\n"),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(parse_domain("# m=3 family=x\n\n# note\n1 0 2\n").is_ok());
    }

    #[test]
    fn spec_round_trips() {
        let specs = vec![
            DomainSpec::sp(4),
            DomainSpec::Spoc { cycle: "2 0 1 3".parse().unwrap() },
            DomainSpec::SpTree { tree: crate::domain::build_sp_df(6).unwrap() },
            DomainSpec::SpGraph {
                graph: CandidateGraph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap(),
            },
            DomainSpec::GsTree { tree: "((0,1),2,(3,4))".parse().unwrap() },
            DomainSpec::GsCat { m: 5 },
            DomainSpec::GsBal { m: 6 },
            DomainSpec::SpDf { m: 7 },
            DomainSpec::SingleCrossing { m: 5, seed: 9 },
            DomainSpec::Euclidean { points: super::super::sample_euclidean(4, 2, 7).unwrap().points },
            sample_sc(4, 2).unwrap(),
            four_alignment(2).unwrap(),
        ];
        for spec in specs {
            let line = format_spec(&spec);
            assert_eq!(parse_spec(&line).unwrap(), spec, "{line}");
        }
    }

    #[test]
    fn spec_examples() {
        assert_eq!(parse_spec("family=sp m=3").unwrap(), DomainSpec::sp(3));
        assert_eq!(parse_spec("family=four-alignment base=3").unwrap().m(), 12);
        let e = parse_spec("family=euclidean m=5 d=2 seed=7").unwrap();
        assert_eq!(e.m(), 5);
        assert_eq!(e, parse_spec("family=euclidean m=5 d=2 seed=7").unwrap());
    }

    #[test]
    fn spec_errors() {
        for bad in [
            "",
            "family=nope m=3",
            "family=sp",
            "family=sp m=3 axis=0,1,2,3",
            "family=sp m=x",
            "family=sp m=3 m=4",
            "family=gs-cat m=3 colour=red",
            "family=sp-tree m=3 edges=0-1,1-2,2-0",
            "family=sp-graph m=3 edges=0-1",
            "family=explicit rankings=0,1;0,1",
            "family=euclidean m=2 d=4 points=0;1",
            "family=four-alignment base=9",
            "family=sp-df m=4",
            "family=gs-tree tree=((0,1)",
            "m=3",
            "family=euclidean m=999999999 d=2",
            "family=sp-graph m=99999999999",
            "family=euclidean m=4 d=100000",
        ] {
            assert!(parse_spec(bad).is_err(), "{bad}");
        }
    }
}
