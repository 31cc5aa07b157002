//! Command-line front end. Errors are printed to stderr as one JSON record
//! each; the exit code is 0 on success, 1 for validation failures and 2 for
//! computation failures.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::bayes::{alpha_cuts, fou_from_cuts, posterior_fou, product_fou, BayesInputs};
use crate::centroid::ekm_centroid;
use crate::error::{Error, Result};
use crate::fou::{synthesize_traced, ExponentChoice, SynthesisConfig};
use crate::io::{
    centroid_json, cuts_csv, curve_csv, load_intervals, load_manifest, parse_bounds,
    parse_ext_real, parse_sampled_csv, posterior_csv, sampled_csv, Format, MfDescriptor,
    QuantitySpec, RunManifest,
};

#[derive(Debug, Parser)]
#[command(name = "it2bayes", version, about = "Interval type-2 membership synthesis and Bayes' theorem over alpha-cuts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Synthesize a membership function per interval file or manifest quantity.
    Synth(SynthArgs),
    /// Alpha-cut tables of synthesized membership functions.
    Cuts(CutsArgs),
    /// Posterior footprint from likelihood, prior and evidence interval sets.
    Bayes(BayesArgs),
    /// Centroid interval of a sampled footprint (`x,umf,lmf` CSV).
    Centroid(CentroidArgs),
}

#[derive(Debug, Args)]
struct SynthOpts {
    /// Tail-width exponent (a number >= 1, or `inf`).
    #[arg(long, value_name = "R", conflicts_with = "auto_r")]
    r: Option<String>,
    /// Choose the exponent from the overlap width (the default).
    #[arg(long)]
    auto_r: bool,
    /// Exponent for the lower left droop intercept.
    #[arg(long, value_name = "R0")]
    r0: Option<String>,
    /// Exponent for the lower right droop intercept.
    #[arg(long, value_name = "R1")]
    r1: Option<String>,
    /// Natural bounds `LO,HI`; leave a side empty for unbounded.
    #[arg(long, value_name = "LO,HI", allow_hyphen_values = true)]
    bounds: Option<String>,
    /// Input format; inferred from the extension when omitted.
    #[arg(long, value_name = "csv|json")]
    format: Option<String>,
    /// Seed for single-estimate expansion.
    #[arg(long)]
    seed: Option<u64>,
    /// Run manifest (JSON) listing the quantities.
    #[arg(long, value_name = "FILE")]
    manifest: Option<PathBuf>,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SynthArgs {
    /// Interval files; each file is one quantity named after its stem.
    inputs: Vec<PathBuf>,
    #[command(flatten)]
    opts: SynthOpts,
    /// Samples in each curve file.
    #[arg(long)]
    grid_points: Option<usize>,
}

#[derive(Debug, Args)]
struct CutsArgs {
    inputs: Vec<PathBuf>,
    #[command(flatten)]
    opts: SynthOpts,
    /// Number of alpha levels, evenly spaced on [0, 1].
    #[arg(long)]
    alpha_levels: Option<usize>,
}

#[derive(Debug, Args)]
struct BayesArgs {
    #[arg(long, value_name = "FILE", required_unless_present = "manifest")]
    likelihood: Option<PathBuf>,
    #[arg(long, value_name = "FILE", required_unless_present = "manifest")]
    prior: Option<PathBuf>,
    #[arg(long, value_name = "FILE", required_unless_present = "manifest")]
    evidence: Option<PathBuf>,
    #[command(flatten)]
    opts: SynthOpts,
    #[arg(long)]
    alpha_levels: Option<usize>,
    /// Samples of the posterior curve used for the centroid.
    #[arg(long)]
    grid_points: Option<usize>,
}

#[derive(Debug, Args)]
struct CentroidArgs {
    /// Curve file with header `x,umf,lmf`.
    input: PathBuf,
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    kind: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    quantity: Option<&'a str>,
}

fn report(err: &Error, quantity: Option<&str>) -> i32 {
    let record = serde_json::json!({
        "error": ErrorRecord {
            kind: err.kind(),
            message: err.to_string(),
            quantity,
        }
    });
    eprintln!("{record}");
    exit_code(err)
}

fn exit_code(err: &Error) -> i32 {
    if err.is_validation() {
        1
    } else {
        2
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let message = e.kind().to_string();
            let detail = e.to_string();
            let first = detail.lines().next().unwrap_or(&message).trim_start_matches("error: ");
            return report(&Error::InvalidArgument(first.to_string()), None);
        }
    };
    let outcome = match cli.command {
        Command::Synth(a) => cmd_synth(a),
        Command::Cuts(a) => cmd_cuts(a),
        Command::Bayes(a) => cmd_bayes(a),
        Command::Centroid(a) => cmd_centroid(a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => report(&e, None),
    }
}

fn parse_r(text: &str) -> Result<f64> {
    let r = parse_ext_real(text)?;
    if r < 1.0 {
        return Err(Error::InvalidArgument(format!("r must be >= 1, got {r}")));
    }
    Ok(r)
}

/// Flag values that override whatever a manifest says.
struct Overrides {
    r: Option<ExponentChoice>,
    r0: Option<f64>,
    r1: Option<f64>,
    seed: Option<u64>,
}

impl Overrides {
    fn from_opts(o: &SynthOpts) -> Result<Self> {
        let r = match (&o.r, o.auto_r) {
            (Some(t), _) => Some(ExponentChoice::Fixed(parse_r(t)?)),
            (None, true) => Some(ExponentChoice::Auto),
            (None, false) => None,
        };
        Ok(Overrides {
            r,
            r0: o.r0.as_deref().map(parse_ext_real).transpose()?,
            r1: o.r1.as_deref().map(parse_ext_real).transpose()?,
            seed: o.seed,
        })
    }

    fn apply(&self, cfg: &mut SynthesisConfig) {
        if let Some(r) = self.r {
            cfg.r = r;
        }
        if let Some(r0) = self.r0 {
            cfg.r0 = r0;
        }
        if let Some(r1) = self.r1 {
            cfg.r1 = r1;
        }
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
    }
}

fn input_format(o: &SynthOpts, path: &Path) -> Result<Format> {
    match &o.format {
        Some(f) => f.parse(),
        None => Ok(Format::from_path(path)),
    }
}

fn quantity_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "quantity".into())
}

/// Manifest (if any) with flag overrides applied, or a manifest built from
/// the positional input files.
fn gather(inputs: &[PathBuf], o: &SynthOpts) -> Result<RunManifest> {
    let overrides = Overrides::from_opts(o)?;
    let bounds = o.bounds.as_deref().map(parse_bounds).transpose()?;
    let mut manifest = match &o.manifest {
        Some(path) => {
            if !inputs.is_empty() {
                return Err(Error::InvalidArgument(
                    "give either --manifest or input files, not both".into(),
                ));
            }
            load_manifest(path)?
        }
        None => {
            if inputs.is_empty() {
                return Err(Error::InvalidArgument("no input files given".into()));
            }
            let mut quantities: Vec<QuantitySpec> = Vec::new();
            for path in inputs {
                let name = quantity_name(path);
                if quantities.iter().any(|q| q.name == name) {
                    return Err(Error::InvalidArgument(format!(
                        "two inputs share the quantity name {name:?}"
                    )));
                }
                let set = load_intervals(path, input_format(o, path)?, bounds)?;
                quantities.push(QuantitySpec {
                    name,
                    intervals: set,
                    config: SynthesisConfig::default(),
                });
            }
            RunManifest {
                quantities,
                config: SynthesisConfig::default(),
                alpha_levels: crate::bayes::DEFAULT_ALPHA_LEVELS,
                grid_points: crate::centroid::DEFAULT_GRID_POINTS,
                out: None,
                roles: Default::default(),
            }
        }
    };
    overrides.apply(&mut manifest.config);
    for q in &mut manifest.quantities {
        overrides.apply(&mut q.config);
    }
    if let Some(out) = &o.out {
        manifest.out = Some(out.clone());
    }
    Ok(manifest)
}

fn out_dir(m: &RunManifest) -> Result<PathBuf> {
    let dir = m
        .out
        .clone()
        .ok_or_else(|| Error::InvalidArgument("no output directory (use --out)".into()))?;
    fs::create_dir_all(&dir)?;
    Ok(dir)
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, contents)?;
    println!("{}", path.display());
    Ok(())
}

/// Runs `f` on every quantity, reporting failures per quantity. Returns the
/// exit code of the first failure, or 0.
fn per_quantity(
    m: &RunManifest,
    mut f: impl FnMut(&QuantitySpec) -> Result<()>,
) -> i32 {
    let mut code = 0;
    for q in &m.quantities {
        if let Err(e) = f(q) {
            let c = report(&e, Some(&q.name));
            if code == 0 {
                code = c;
            }
        }
    }
    code
}

fn cmd_synth(a: SynthArgs) -> Result<i32> {
    let mut m = gather(&a.inputs, &a.opts)?;
    if let Some(g) = a.grid_points {
        m.grid_points = g;
    }
    let dir = out_dir(&m)?;
    Ok(per_quantity(&m, |q| {
        let trace = synthesize_traced(&q.intervals, &q.config)?;
        write(&dir, &format!("{}.mf.json", q.name), &MfDescriptor::new(&q.name, &trace).to_json()?)?;
        write(&dir, &format!("{}.curve.csv", q.name), &curve_csv(trace.mf.sample(m.grid_points)))
    }))
}

fn cmd_cuts(a: CutsArgs) -> Result<i32> {
    let mut m = gather(&a.inputs, &a.opts)?;
    if let Some(l) = a.alpha_levels {
        m.alpha_levels = l;
    }
    let dir = out_dir(&m)?;
    Ok(per_quantity(&m, |q| {
        let mf = synthesize_traced(&q.intervals, &q.config)?.mf;
        write(&dir, &format!("{}.cuts.csv", q.name), &cuts_csv(&alpha_cuts(&mf, m.alpha_levels)?))
    }))
}

fn check_probability_bounds(q: &QuantitySpec) -> Result<()> {
    let s = &q.intervals;
    if s.lower_bound() != Some(0.0) || s.upper_bound() != Some(1.0) {
        return Err(Error::InvalidArgument(format!(
            "quantity {:?} must have bounds [0, 1] for a Bayes run",
            q.name
        )));
    }
    Ok(())
}

fn cmd_bayes(a: BayesArgs) -> Result<i32> {
    let mut m = if a.opts.manifest.is_some() {
        if a.likelihood.is_some() || a.prior.is_some() || a.evidence.is_some() {
            return Err(Error::InvalidArgument(
                "give either --manifest or the three input files, not both".into(),
            ));
        }
        gather(&[], &a.opts)?
    } else {
        // probabilities default to bounds [0, 1]
        let mut opts_bounds = a.opts.bounds.clone();
        opts_bounds.get_or_insert_with(|| "0,1".into());
        let opts = SynthOpts {
            bounds: opts_bounds,
            r: a.opts.r.clone(),
            auto_r: a.opts.auto_r,
            r0: a.opts.r0.clone(),
            r1: a.opts.r1.clone(),
            format: a.opts.format.clone(),
            seed: a.opts.seed,
            manifest: None,
            out: a.opts.out.clone(),
        };
        let files = [&a.likelihood, &a.prior, &a.evidence].map(|p| p.clone().expect("required by clap"));
        let mut m = gather(&files, &opts)?;
        for (q, role) in m.quantities.iter_mut().zip(["likelihood", "prior", "evidence"]) {
            q.name = role.to_string();
        }
        m
    };
    if let Some(l) = a.alpha_levels {
        m.alpha_levels = l;
    }
    if let Some(g) = a.grid_points {
        m.grid_points = g;
    }
    let roles = m.roles.clone();
    let mut mfs = Vec::with_capacity(3);
    for (role, name) in [
        ("likelihood", &roles.likelihood),
        ("prior", &roles.prior),
        ("evidence", &roles.evidence),
    ] {
        let q = m.quantity(name)?;
        check_probability_bounds(q)?;
        let trace = synthesize_traced(&q.intervals, &q.config).map_err(|e| {
            let code = report(&e, Some(&q.name));
            (code, e)
        });
        match trace {
            Ok(t) => mfs.push((role, t)),
            Err((code, _)) => return Ok(code),
        }
    }
    let dir = out_dir(&m)?;
    for (role, trace) in &mfs {
        write(&dir, &format!("{role}.mf.json"), &MfDescriptor::new(role, trace).to_json()?)?;
    }
    let inputs = BayesInputs::from_mfs(&mfs[0].1.mf, &mfs[1].1.mf, &mfs[2].1.mf, m.alpha_levels)?;
    let numerator = product_fou(&inputs.likelihood, &inputs.prior)?;
    write(&dir, "numerator_cuts.csv", &cuts_csv(&numerator))?;
    let posterior = posterior_fou(&inputs)?;
    write(&dir, "posterior_cuts.csv", &posterior_csv(&posterior))?;
    let curve = fou_from_cuts(&posterior.cuts, m.grid_points)?;
    write(&dir, "posterior_curve.csv", &sampled_csv(&curve))?;
    let centroid = ekm_centroid(&curve)?;
    write(&dir, "centroid.json", &centroid_json(&centroid)?)?;
    Ok(0)
}

fn cmd_centroid(a: CentroidArgs) -> Result<i32> {
    let curve = parse_sampled_csv(&fs::read_to_string(&a.input)?)?;
    let centroid = ekm_centroid(&curve)?;
    let json = centroid_json(&centroid)?;
    match &a.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            write(dir, "centroid.json", &json)?;
        }
        None => print!("{json}"),
    }
    Ok(0)
}
