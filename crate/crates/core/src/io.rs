//! Interval files, run manifests, and the CSV/JSON outputs of the pipeline.
//!
//! Interval CSV: one `lo,hi` pair per line; blank lines and `#` comments are
//! skipped. Interval JSON: `{"intervals": [[lo, hi], ...], "bounds": [lo |
//! null, hi | null]}` with `bounds` optional. Floats are written in shortest
//! round-trip form so a written file loads back bit-identically.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bayes::{AlphaCutFou, Posterior, SampledFou};
use crate::centroid::CentroidResult;
use crate::error::{Error, Result};
use crate::fou::{
    DroopGeometry, DroopHeights, ExponentChoice, FouCategory, GroupTrace, OverlapResult,
    ReducedSets, SynthesisConfig, SynthesisTrace, TrapezoidSpec,
};
use crate::interval::{Interval, IntervalSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// Format implied by a file extension (`.json` is JSON, anything else CSV).
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?}"))),
        }
    }
}

/// Shortest representation that parses back to the same `f64`.
pub fn fmt_num(x: f64) -> String {
    format!("{x:?}")
}

/// Extended real serialized as a JSON number, or `"inf"` / `"-inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtReal(pub f64);

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0 == f64::INFINITY {
            s.serialize_str("inf")
        } else if self.0 == f64::NEG_INFINITY {
            s.serialize_str("-inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(ExtReal(v)),
            Raw::Text(t) => parse_ext_real(&t).map(ExtReal).map_err(serde::de::Error::custom),
        }
    }
}

/// Parses a real number or `inf`, `+inf`, `-inf`, `infinity`.
pub fn parse_ext_real(text: &str) -> Result<f64> {
    let t = text.trim();
    match t.to_ascii_lowercase().as_str() {
        "inf" | "+inf" | "infinity" | "+infinity" => Ok(f64::INFINITY),
        "-inf" | "-infinity" => Ok(f64::NEG_INFINITY),
        _ => t
            .parse::<f64>()
            .ok()
            .filter(|v| !v.is_nan())
            .ok_or_else(|| Error::InvalidArgument(format!("not a number: {text:?}"))),
    }
}

/// Parses `LO,HI` where either side may be empty or `none` for "unbounded".
pub fn parse_bounds(text: &str) -> Result<(Option<f64>, Option<f64>)> {
    let (lo, hi) = text
        .split_once(',')
        .ok_or_else(|| Error::InvalidArgument(format!("bounds must be LO,HI, got {text:?}")))?;
    let side = |s: &str| -> Result<Option<f64>> {
        let s = s.trim();
        if s.is_empty() || s.eq_ignore_ascii_case("none") || s.eq_ignore_ascii_case("null") {
            return Ok(None);
        }
        let v = parse_ext_real(s)?;
        Ok(v.is_finite().then_some(v))
    };
    Ok((side(lo)?, side(hi)?))
}

fn check_interval(lo: f64, hi: f64) -> std::result::Result<Interval, String> {
    if lo > hi {
        return Err("lo > hi".into());
    }
    Interval::new(lo, hi).map_err(|e| e.to_string())
}

/// 1-based line of a reader position, counted from the byte offset since the
/// reader's own line counter skips blank lines.
fn line_of(text: &str, pos: Option<&csv::Position>) -> u64 {
    pos.map_or(0, |p| {
        let bytes = text.as_bytes();
        let mut end = (p.byte() as usize).min(text.len());
        // the reported offset can sit on blank lines preceding the record
        while end < bytes.len() && matches!(bytes[end], b'\n' | b'\r') {
            end += 1;
        }
        text.as_bytes()[..end].iter().filter(|&&b| b == b'\n').count() as u64 + 1
    })
}

/// Parses interval CSV text.
pub fn parse_intervals_csv(
    text: &str,
    lower_bound: Option<f64>,
    upper_bound: Option<f64>,
) -> Result<IntervalSet> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut intervals = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse {
            line: line_of(text, e.position()),
            message: e.to_string(),
        })?;
        let line = line_of(text, record.position());
        if record.iter().all(str::is_empty) || record[0].starts_with('#') {
            continue;
        }
        if record.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected 2 fields, found {}", record.len()),
            });
        }
        let field = |i: usize| -> Result<f64> {
            record[i].parse::<f64>().map_err(|_| Error::Parse {
                line,
                message: format!("invalid number {:?}", &record[i]),
            })
        };
        let (lo, hi) = (field(0)?, field(1)?);
        let iv = check_interval(lo, hi).map_err(|message| Error::Parse { line, message })?;
        intervals.push(iv);
    }
    IntervalSet::new(intervals, lower_bound, upper_bound)
}

#[derive(Deserialize, Serialize)]
struct IntervalFile {
    intervals: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bounds: Option<[Option<f64>; 2]>,
}

/// Parses interval JSON text. `bounds_override` replaces the file's bounds.
pub fn parse_intervals_json(
    text: &str,
    bounds_override: Option<(Option<f64>, Option<f64>)>,
) -> Result<IntervalSet> {
    let file: IntervalFile = serde_json::from_str(text)?;
    let intervals = file
        .intervals
        .iter()
        .enumerate()
        .map(|(i, [lo, hi])| {
            check_interval(*lo, *hi)
                .map_err(|m| Error::InvalidArgument(format!("interval {i} [{lo}, {hi}]: {m}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let (lo, hi) = bounds_override.unwrap_or_else(|| {
        file.bounds.map_or((None, None), |[l, h]| (l, h))
    });
    IntervalSet::new(intervals, lo, hi)
}

/// Loads an interval file. For CSV the bounds come from `bounds` only; for
/// JSON an explicit `bounds` overrides the file's own.
pub fn load_intervals(
    path: &Path,
    format: Format,
    bounds: Option<(Option<f64>, Option<f64>)>,
) -> Result<IntervalSet> {
    let text = fs::read_to_string(path)?;
    match format {
        Format::Csv => {
            let (lo, hi) = bounds.unwrap_or((None, None));
            parse_intervals_csv(&text, lo, hi)
        }
        Format::Json => parse_intervals_json(&text, bounds),
    }
}

pub fn write_intervals_csv(set: &IntervalSet) -> String {
    let mut out = String::new();
    for iv in set.intervals() {
        let _ = writeln!(out, "{},{}", fmt_num(iv.lo()), fmt_num(iv.hi()));
    }
    out
}

pub fn write_intervals_json(set: &IntervalSet) -> Result<String> {
    let file = IntervalFile {
        intervals: set.intervals().iter().map(|iv| [iv.lo(), iv.hi()]).collect(),
        bounds: (set.lower_bound().is_some() || set.upper_bound().is_some())
            .then_some([set.lower_bound(), set.upper_bound()]),
    };
    Ok(serde_json::to_string_pretty(&file)? + "\n")
}

// ---------------------------------------------------------------------------
// Descriptors and tables

#[derive(Debug, Serialize)]
pub struct GroupDescriptor {
    pub category: FouCategory,
    pub r: ExtReal,
    pub overlap: OverlapResult,
    pub intercept_fractions: [f64; 2],
    pub reduced: ReducedSets,
}

impl From<&GroupTrace> for GroupDescriptor {
    fn from(t: &GroupTrace) -> Self {
        GroupDescriptor {
            category: t.category,
            r: ExtReal(t.r),
            overlap: t.overlap,
            intercept_fractions: [t.intercept_fractions.0, t.intercept_fractions.1],
            reduced: t.reduced.clone(),
        }
    }
}

/// JSON description of one synthesized membership function.
#[derive(Debug, Serialize)]
pub struct MfDescriptor {
    pub name: String,
    pub category: FouCategory,
    pub bounds: [Option<f64>; 2],
    pub umf: TrapezoidSpec,
    pub lmf: TrapezoidSpec,
    pub droop_heights: Option<DroopHeights>,
    pub edges: DroopGeometry,
    pub nonnegative: Option<GroupDescriptor>,
    pub nonpositive: Option<GroupDescriptor>,
}

impl MfDescriptor {
    pub fn new(name: &str, trace: &SynthesisTrace) -> Self {
        let mf = &trace.mf;
        MfDescriptor {
            name: name.to_string(),
            category: mf.category,
            bounds: [mf.lower_bound, mf.upper_bound],
            umf: mf.umf,
            lmf: mf.lmf,
            droop_heights: mf.droop_heights,
            edges: DroopGeometry::of(&mf.umf, &mf.lmf),
            nonnegative: trace.nonnegative.as_ref().map(GroupDescriptor::from),
            nonpositive: trace.nonpositive.as_ref().map(GroupDescriptor::from),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

pub fn curve_csv(samples: impl IntoIterator<Item = (f64, f64, f64)>) -> String {
    let mut out = String::from("x,umf,lmf\n");
    for (x, u, l) in samples {
        let _ = writeln!(out, "{},{},{}", fmt_num(x), fmt_num(u), fmt_num(l));
    }
    out
}

pub fn sampled_csv(s: &SampledFou) -> String {
    curve_csv(
        s.x.iter()
            .zip(&s.upper)
            .zip(&s.lower)
            .map(|((x, u), l)| (*x, *u, *l)),
    )
}

/// Reads an `x,umf,lmf` curve file (header required).
pub fn parse_sampled_csv(text: &str) -> Result<SampledFou> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let (mut x, mut upper, mut lower) = (Vec::new(), Vec::new(), Vec::new());
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse {
            line: line_of(text, e.position()),
            message: e.to_string(),
        })?;
        let line = line_of(text, record.position());
        if record.iter().all(str::is_empty) || record[0].starts_with('#') {
            continue;
        }
        if record.len() != 3 {
            return Err(Error::Parse {
                line,
                message: format!("expected 3 fields, found {}", record.len()),
            });
        }
        let mut vals = [0.0; 3];
        for (i, v) in vals.iter_mut().enumerate() {
            *v = record[i].parse().map_err(|_| Error::Parse {
                line,
                message: format!("invalid number {:?}", &record[i]),
            })?;
        }
        x.push(vals[0]);
        upper.push(vals[1]);
        lower.push(vals[2]);
    }
    SampledFou::new(x, upper, lower)
}

pub fn cuts_csv(cuts: &AlphaCutFou) -> String {
    let mut out = String::from("alpha,umf_lo,umf_hi,lmf_lo,lmf_hi\n");
    for ((a, u), l) in cuts.alphas().iter().zip(cuts.umf_cuts()).zip(cuts.lmf_cuts()) {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt_num(*a),
            fmt_num(u.lo()),
            fmt_num(u.hi()),
            fmt_num(l.lo()),
            fmt_num(l.hi())
        );
    }
    out
}

pub fn posterior_csv(p: &Posterior) -> String {
    let mut out = String::from("alpha,umf_lo,umf_hi,lmf_lo,lmf_hi,umf_adjusted,lmf_adjusted\n");
    let c = &p.cuts;
    for k in 0..c.levels() {
        let (u, l) = (c.umf_cuts()[k], c.lmf_cuts()[k]);
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt_num(c.alphas()[k]),
            fmt_num(u.lo()),
            fmt_num(u.hi()),
            fmt_num(l.lo()),
            fmt_num(l.hi()),
            p.umf_adjusted[k],
            p.lmf_adjusted[k]
        );
    }
    out
}

pub fn centroid_json(c: &CentroidResult) -> Result<String> {
    Ok(serde_json::to_string_pretty(c)? + "\n")
}

// ---------------------------------------------------------------------------
// Manifests

/// One elicited quantity, validated and ready for synthesis.
#[derive(Debug, Clone)]
pub struct QuantitySpec {
    pub name: String,
    pub intervals: IntervalSet,
    pub config: SynthesisConfig,
}

/// Which manifest quantities play the three roles of a Bayes run.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct BayesRoles {
    #[serde(default = "BayesRoles::default_likelihood")]
    pub likelihood: String,
    #[serde(default = "BayesRoles::default_prior")]
    pub prior: String,
    #[serde(default = "BayesRoles::default_evidence")]
    pub evidence: String,
}

impl BayesRoles {
    fn default_likelihood() -> String {
        "likelihood".into()
    }
    fn default_prior() -> String {
        "prior".into()
    }
    fn default_evidence() -> String {
        "evidence".into()
    }
}

impl Default for BayesRoles {
    fn default() -> Self {
        BayesRoles {
            likelihood: Self::default_likelihood(),
            prior: Self::default_prior(),
            evidence: Self::default_evidence(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunManifest {
    pub quantities: Vec<QuantitySpec>,
    pub config: SynthesisConfig,
    pub alpha_levels: usize,
    pub grid_points: usize,
    pub out: Option<PathBuf>,
    pub roles: BayesRoles,
}

impl RunManifest {
    pub fn quantity(&self, name: &str) -> Result<&QuantitySpec> {
        self.quantities
            .iter()
            .find(|q| q.name == name)
            .ok_or_else(|| Error::InvalidArgument(format!("manifest has no quantity named {name:?}")))
    }
}

/// `"auto"` or an extended real.
#[derive(Debug, Clone, Copy)]
struct RawExponent(ExponentChoice);

impl<'de> Deserialize<'de> for RawExponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        let choice = match Raw::deserialize(d)? {
            Raw::Num(v) => ExponentChoice::Fixed(v),
            Raw::Text(t) if t.trim().eq_ignore_ascii_case("auto") => ExponentChoice::Auto,
            Raw::Text(t) => {
                ExponentChoice::Fixed(parse_ext_real(&t).map_err(serde::de::Error::custom)?)
            }
        };
        Ok(RawExponent(choice))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSingleSme {
    min: [f64; 2],
    max: [f64; 2],
    #[serde(default)]
    pairs: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuantity {
    name: String,
    #[serde(default)]
    file: Option<PathBuf>,
    #[serde(default)]
    intervals: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    single_sme: Option<RawSingleSme>,
    #[serde(default)]
    bounds: Option<[Option<f64>; 2]>,
    #[serde(default)]
    r: Option<RawExponent>,
    #[serde(default)]
    r0: Option<ExtReal>,
    #[serde(default)]
    r1: Option<ExtReal>,
    #[serde(default)]
    seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    quantities: Vec<RawQuantity>,
    #[serde(default)]
    r: Option<RawExponent>,
    #[serde(default)]
    r0: Option<ExtReal>,
    #[serde(default)]
    r1: Option<ExtReal>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    single_sme_pairs: Option<usize>,
    #[serde(default)]
    alpha_levels: Option<usize>,
    #[serde(default)]
    grid_points: Option<usize>,
    #[serde(default)]
    out: Option<PathBuf>,
    #[serde(default)]
    bayes: Option<BayesRoles>,
}

fn validate_exponents(cfg: &SynthesisConfig, name: &str) -> Result<()> {
    if let ExponentChoice::Fixed(r) = cfg.r {
        if r.is_nan() || r < 1.0 {
            return Err(Error::InvalidArgument(format!(
                "quantity {name:?}: r must be >= 1, got {r}"
            )));
        }
    }
    Ok(())
}

/// Parses a manifest. Relative `file` entries resolve against `base_dir`.
pub fn parse_manifest(text: &str, base_dir: &Path) -> Result<RunManifest> {
    let raw: RawManifest = serde_json::from_str(text)?;
    let defaults = SynthesisConfig::default();
    let config = SynthesisConfig {
        r: raw.r.map_or(defaults.r, |e| e.0),
        r0: raw.r0.map_or(defaults.r0, |e| e.0),
        r1: raw.r1.map_or(defaults.r1, |e| e.0),
        single_sme_pairs: raw.single_sme_pairs.unwrap_or(defaults.single_sme_pairs),
        seed: raw.seed.unwrap_or(defaults.seed),
    };
    let mut quantities: Vec<QuantitySpec> = Vec::with_capacity(raw.quantities.len());
    for q in raw.quantities {
        if quantities.iter().any(|p| p.name == q.name) {
            return Err(Error::InvalidArgument(format!(
                "duplicate quantity name {:?}",
                q.name
            )));
        }
        let qcfg = SynthesisConfig {
            r: q.r.map_or(config.r, |e| e.0),
            r0: q.r0.map_or(config.r0, |e| e.0),
            r1: q.r1.map_or(config.r1, |e| e.0),
            seed: q.seed.unwrap_or(config.seed),
            ..config
        };
        validate_exponents(&qcfg, &q.name)?;
        let bounds = q.bounds.map(|[l, h]| (l, h));
        let sources = [q.file.is_some(), q.intervals.is_some(), q.single_sme.is_some()];
        if sources.iter().filter(|s| **s).count() != 1 {
            return Err(Error::InvalidArgument(format!(
                "quantity {:?} needs exactly one of file, intervals, single_sme",
                q.name
            )));
        }
        let set = if let Some(file) = q.file {
            let path = base_dir.join(file);
            load_intervals(&path, Format::from_path(&path), bounds)?
        } else if let Some(pairs) = q.intervals {
            let ivs = pairs
                .iter()
                .enumerate()
                .map(|(i, [lo, hi])| {
                    check_interval(*lo, *hi).map_err(|m| {
                        Error::InvalidArgument(format!(
                            "quantity {:?} interval {i} [{lo}, {hi}]: {m}",
                            q.name
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let (lo, hi) = bounds.unwrap_or((None, None));
            IntervalSet::new(ivs, lo, hi)?
        } else {
            let sme = q.single_sme.expect("checked above");
            let expanded = crate::fou::expand_single_sme(
                Interval::try_from(sme.min)?,
                Interval::try_from(sme.max)?,
                sme.pairs.unwrap_or(qcfg.single_sme_pairs),
                qcfg.seed,
            )?;
            let (lo, hi) = bounds.unwrap_or((None, None));
            IntervalSet::new(expanded.intervals().to_vec(), lo, hi)?
        };
        quantities.push(QuantitySpec {
            name: q.name,
            intervals: set,
            config: qcfg,
        });
    }
    Ok(RunManifest {
        quantities,
        config,
        alpha_levels: raw.alpha_levels.unwrap_or(crate::bayes::DEFAULT_ALPHA_LEVELS),
        grid_points: raw.grid_points.unwrap_or(crate::centroid::DEFAULT_GRID_POINTS),
        out: raw.out.map(|o| base_dir.join(o)),
        roles: raw.bayes.unwrap_or_default(),
    })
}

pub fn load_manifest(path: &Path) -> Result<RunManifest> {
    let text = fs::read_to_string(path)?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    parse_manifest(&text, base)
}
