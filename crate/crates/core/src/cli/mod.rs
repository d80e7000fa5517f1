//! Command-line front end.

pub mod cache;
mod selftest;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::complex::{build_complex, compare, edge_foam, BigradedHomology, Cube, HomologyReport};
use crate::diagram::{parse_pd, DiagramJson, LinkDiagram};
use crate::web::{kuperberg_bracket, link_bracket, BracketCache};
use crate::{Error, Result};

pub use cache::{DiskCache, CACHE_ENV};
pub use selftest::run_selftest;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Bracket,
    Webs,
    Homology,
    Invariance,
    Selftest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// sl(3) link homology from planar diagram codes.
#[derive(Clone, Debug, Parser)]
#[command(name = "sl3", version)]
pub struct RunConfig {
    /// Input file: PD text or diagram JSON; in invariance mode a list of
    /// diagram pairs.
    #[arg(conflicts_with = "pd")]
    pub input: Option<PathBuf>,
    /// Inline PD code, e.g. "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)".
    #[arg(long)]
    pub pd: Option<String>,
    #[arg(long, value_enum, default_value_t = Mode::Homology)]
    pub mode: Mode,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Cache directory; defaults to $SL3_CACHE_DIR, then the user cache dir.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Neither read nor write the disk cache.
    #[arg(long)]
    pub no_cache: bool,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, default_value_t = default_threads(), value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: u16,
    /// In webs mode, include every flattening as web JSON.
    #[arg(long)]
    pub dump_webs: bool,
    /// In homology mode, write the foam of every cube edge to this directory.
    #[arg(long)]
    pub dump_foams: Option<PathBuf>,
}

fn default_threads() -> u16 {
    std::thread::available_parallelism().map_or(1, |n| n.get().min(u16::MAX as usize) as u16)
}

/// What a run prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: &Error) -> Self {
        Self {
            code: exit_code(e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_internal() {
        2
    } else {
        1
    }
}

pub fn run(config: &RunConfig) -> Outcome {
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads as usize)
        .build()
    {
        Ok(p) => p,
        Err(e) => return Outcome::error(&Error::Io(std::io::Error::other(e))),
    };
    pool.install(|| {
        let cache = if config.no_cache {
            None
        } else {
            let dir = config.cache_dir.clone().unwrap_or_else(cache::default_dir);
            // an unusable cache directory only costs speed
            DiskCache::open(&dir).ok()
        };
        if let Some(c) = &cache {
            c.load_brackets(BracketCache::global());
        }
        let result = match config.mode {
            Mode::Bracket => bracket_mode(config),
            Mode::Webs => webs_mode(config),
            Mode::Homology => homology_mode(config, cache.as_ref()),
            Mode::Invariance => invariance_mode(config, cache.as_ref()),
            Mode::Selftest => selftest_mode(config),
        };
        if let Some(c) = &cache {
            let _ = c.save_brackets(BracketCache::global());
        }
        result.unwrap_or_else(|e| Outcome::error(&e))
    })
}

fn read_input(config: &RunConfig) -> Result<String> {
    match (&config.pd, &config.input) {
        (Some(pd), _) => Ok(pd.clone()),
        (None, Some(path)) => Ok(std::fs::read_to_string(path)?),
        (None, None) => Err(Error::Parse("no input: pass --pd or an input file".into())),
    }
}

/// PD text or diagram JSON.
pub fn parse_diagram(text: &str) -> Result<LinkDiagram> {
    let d = if text.trim_start().starts_with('{') {
        let j: DiagramJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        LinkDiagram::from_json(&j)?
    } else {
        parse_pd(text)?
    };
    d.validate()?;
    Ok(d)
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn bracket_mode(config: &RunConfig) -> Result<Outcome> {
    let d = parse_diagram(&read_input(config)?)?;
    let b = link_bracket(&d)?;
    let out = match config.format {
        Format::Text => format!("{b}\n"),
        Format::Json => to_json(&json!({ "diagram": d.to_pd_string(), "bracket": b.to_string() }))?,
    };
    Ok(Outcome::ok(out))
}

fn webs_mode(config: &RunConfig) -> Result<Outcome> {
    let d = parse_diagram(&read_input(config)?)?;
    let signs: String = d.crossing_signs().iter().map(|s| s.symbol()).collect();
    let mut rows = Vec::new();
    let mut text = format!("diagram {}\nsigns {signs}\n", d.to_pd_string());
    for mask in 0..1u64 << d.len() {
        let w = d.flatten_mask(mask)?;
        let j: Vec<usize> = (0..d.len()).filter(|c| mask >> c & 1 == 1).collect();
        let b = kuperberg_bracket(&w)?;
        let _ = writeln!(
            text,
            "J={:<12} vertices={:<3} edges={:<3} loops={:<2} bracket {b}",
            format!("{j:?}"),
            w.vertices().len(),
            w.edges().len() - w.loop_count(),
            w.loop_count(),
        );
        if config.dump_webs {
            let _ = writeln!(text, "{}", serde_json::to_string(&w.to_json())?);
        }
        let mut row = json!({
            "J": j,
            "vertices": w.vertices().len(),
            "edges": w.edges().len() - w.loop_count(),
            "loops": w.loop_count(),
            "bracket": b.to_string(),
        });
        if config.dump_webs {
            row["web"] = serde_json::to_value(w.to_json())?;
        }
        rows.push(row);
    }
    let out = match config.format {
        Format::Text => text,
        Format::Json => {
            to_json(&json!({ "diagram": d.to_pd_string(), "signs": signs, "flattenings": rows }))?
        }
    };
    Ok(Outcome::ok(out))
}

fn cache_key(d: &LinkDiagram) -> Result<String> {
    Ok(format!(
        "homology-v1:{}",
        serde_json::to_string(&d.to_json())?
    ))
}

/// Homology of `d`, read from or written to the disk cache when given.
pub fn cached_homology(d: &LinkDiagram, cache: Option<&DiskCache>) -> Result<BigradedHomology> {
    let key = cache_key(d)?;
    if let Some(entries) = cache.and_then(|c| c.get_homology(&key)) {
        return Ok(BigradedHomology::from_entries(&entries));
    }
    let h = build_complex(d)?.homology()?;
    if let Some(c) = cache {
        let _ = c.put_homology(&key, &h.entries());
    }
    Ok(h)
}

fn dump_foams(d: &LinkDiagram, dir: &std::path::Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let cube = Cube::new(d)?;
    let signs = d.crossing_signs();
    for (mask, b) in cube.edges.keys() {
        let from = cube.vertices[*mask as usize].basis.web();
        let to = cube.vertices[(*mask | 1 << b) as usize].basis.web();
        let foam = edge_foam(signs[*b], from, to, *b)?;
        let path = dir.join(format!("edge_{mask:0w$b}_{b}.json", w = d.len().max(1)));
        std::fs::write(path, serde_json::to_string_pretty(&foam.to_json())?)?;
    }
    Ok(())
}

fn homology_mode(config: &RunConfig, cache: Option<&DiskCache>) -> Result<Outcome> {
    let d = parse_diagram(&read_input(config)?)?;
    if let Some(dir) = &config.dump_foams {
        dump_foams(&d, dir)?;
    }
    let h = cached_homology(&d, cache)?;
    let bracket = link_bracket(&d)?;
    let report = HomologyReport {
        diagram: d.to_pd_string(),
        euler_check: h.euler_characteristic() == bracket,
        bracket: bracket.to_string(),
        homology: h.entries(),
    };
    let out = match config.format {
        Format::Text => format!(
            "diagram {}\nbracket {}\neuler characteristic matches bracket: {}\n{h}",
            report.diagram, report.bracket, report.euler_check
        ),
        Format::Json => to_json(&report)?,
    };
    let mut outcome = Outcome::ok(out);
    if !report.euler_check {
        outcome.code = 2;
        outcome.stderr = "error: Euler characteristic differs from the bracket\n".into();
    }
    Ok(outcome)
}

/// A diagram given either as PD text or as a JSON object.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DiagramSource {
    Text(String),
    Json(DiagramJson),
}

impl DiagramSource {
    pub fn diagram(&self) -> Result<LinkDiagram> {
        match self {
            Self::Text(t) => parse_diagram(t),
            Self::Json(j) => {
                let d = LinkDiagram::from_json(j)?;
                d.validate()?;
                Ok(d)
            }
        }
    }
}

impl From<&str> for DiagramSource {
    fn from(s: &str) -> Self {
        Self::Text(s.to_string())
    }
}

/// A pair of diagrams expected to have the same homology.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InvariancePair {
    #[serde(default)]
    pub name: String,
    pub left: DiagramSource,
    pub right: DiagramSource,
}

/// JSON list of pairs, or text lines `name: PD | PD` (name optional,
/// `#` starts a comment).
pub fn parse_pairs(text: &str) -> Result<Vec<InvariancePair>> {
    if text.trim_start().starts_with('[') {
        return serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()));
    }
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (name, body) = match line.split_once(':') {
            Some((a, b)) => (a.trim().to_string(), b),
            None => (format!("pair {}", n + 1), line),
        };
        let (l, r) = body
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("line {}: expected `left | right`", n + 1)))?;
        out.push(InvariancePair {
            name,
            left: l.trim().into(),
            right: r.trim().into(),
        });
    }
    Ok(out)
}

fn invariance_mode(config: &RunConfig, cache: Option<&DiskCache>) -> Result<Outcome> {
    let pairs = parse_pairs(&read_input(config)?)?;
    let mut results = Vec::new();
    let mut text = String::new();
    let mut all = true;
    for p in &pairs {
        let h1 = cached_homology(&p.left.diagram()?, cache)?;
        let h2 = cached_homology(&p.right.diagram()?, cache)?;
        let r = compare(&h1, &h2);
        all &= r.pass;
        let _ = writeln!(text, "{} {}", if r.pass { "PASS" } else { "FAIL" }, p.name);
        for diff in &r.differences {
            let _ = writeln!(
                text,
                "    H^({},{}): {} vs {}",
                diff.i, diff.j, diff.left, diff.right
            );
        }
        results.push(json!({
            "name": p.name,
            "left": p.left,
            "right": p.right,
            "pass": r.pass,
            "differences": r.differences,
        }));
    }
    let _ = writeln!(
        text,
        "{} of {} pairs agree",
        results.iter().filter(|r| r["pass"] == true).count(),
        pairs.len()
    );
    let out = match config.format {
        Format::Text => text,
        Format::Json => to_json(&json!({ "pairs": results, "pass": all }))?,
    };
    let mut outcome = Outcome::ok(out);
    if !all {
        outcome.code = 3;
    }
    Ok(outcome)
}

fn selftest_mode(config: &RunConfig) -> Result<Outcome> {
    let checks = run_selftest()?;
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| !c.holds)
        .map(|c| c.name.as_str())
        .collect();
    let out = match config.format {
        Format::Text => {
            let mut t = String::new();
            for f in &failed {
                let _ = writeln!(t, "FAIL {f}");
            }
            let verdict = if failed.is_empty() { "pass" } else { "FAIL" };
            let _ = writeln!(
                t,
                "selftest {verdict}: {} checks, {} failed",
                checks.len(),
                failed.len()
            );
            t
        }
        Format::Json => to_json(
            &json!({ "checks": checks.len(), "failed": failed, "pass": failed.is_empty() }),
        )?,
    };
    let mut outcome = Outcome::ok(out);
    if !failed.is_empty() {
        outcome.code = 2;
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> RunConfig {
        let mut v = vec!["sl3", "--no-cache"];
        v.extend_from_slice(args);
        RunConfig::try_parse_from(v).unwrap()
    }

    #[test]
    fn bracket_of_unknot() {
        let o = run(&cfg(&["--pd", "X(1,2,2,1)", "--mode", "bracket"]));
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout, "q^-2 + 1 + q^2\n");
    }

    #[test]
    fn empty_link_homology_json() {
        let o = run(&cfg(&[
            "--pd", "", "--mode", "homology", "--format", "json",
        ]));
        assert_eq!(o.code, 0, "{}", o.stderr);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(
            v["homology"],
            json!([{ "i": 0, "j": 0, "rank": 1, "torsion": [] }])
        );
        assert_eq!(v["euler_check"], true);
    }

    #[test]
    fn parse_error_exit_code() {
        let o = run(&cfg(&["--pd", "X(1,2,3)", "--mode", "bracket"]));
        assert_eq!(o.code, 1);
        assert!(o.stderr.contains("expected 4"));
    }

    #[test]
    fn invariance_failure_exit_code() {
        let o = run(&cfg(&["--pd", "kink: O | O O", "--mode", "invariance"]));
        assert_eq!(o.code, 3);
        assert!(o.stdout.starts_with("FAIL kink"));
    }

    #[test]
    fn pairs_text_format() {
        let p = parse_pairs("# header\nr1: O | X(1,2,2,1)\nX(1,1,2,2) | O\n").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p[0].name, "r1");
        assert_eq!(p[1].right, DiagramSource::from("O"));
        assert!(parse_pairs("O O").is_err());
    }

    #[test]
    fn threads_must_be_positive() {
        assert!(RunConfig::try_parse_from(["sl3", "--threads", "0"]).is_err());
    }
}
