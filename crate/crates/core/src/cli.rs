//! The `hwright` command line.
//!
//! Every flag can also come from a `key = value` file given with `--config`;
//! keys are the long flag names (the positional theorem id is `theorem`).
//! Flags on the command line win over the file.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::parser::ValueSource;
use clap::{ArgAction, ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::criteria::{stated_hypothesis, Form, HypothesisReport, OrderParam, TheoremId};
use crate::error::{Error, Result};
use crate::harmonic::{convolve, CoefficientSeq, ConvolutionSpec, ImageCoefficients};
use crate::oracle::SampleGrid;
use crate::render::{write_svg, RenderSpec};
use crate::special_fn::{derivs_at_one, normalized_eval, wright_eval, SeriesControl, WrightParams};
use crate::verify::{class_representative, gate_holds, random_unit_bounded, verify_one, Verdict};

#[derive(Debug, Parser)]
#[command(name = "hwright", version, about = "Wright-kernel harmonic convolutions: evaluation, criteria and geometric checks")]
#[command(args_override_self = true)]
pub struct Cli {
    /// Maximum number of series terms.
    #[arg(long, global = true, value_name = "N", default_value_t = SeriesControl::DEFAULT_MAX_TERMS)]
    pub ctrl_max_terms: usize,
    /// Series tail tolerance.
    #[arg(long, global = true, value_name = "TOL", default_value_t = SeriesControl::DEFAULT_TAIL_TOL)]
    pub ctrl_tol: f64,
    /// `key = value` file supplying any flag.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Seed for random coefficient draws.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print the effective configuration and exit.
    #[arg(long, global = true)]
    pub show_config: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the Wright function and its normalized form at a point.
    Eval {
        #[arg(long, value_name = "A,B,G,D")]
        p: Option<WrightParams>,
        #[arg(long, value_name = "RE,IM", value_parser = parse_complex)]
        z: Option<Complex64>,
    },
    /// W(1), W'(1), W''(1), W'''(1) of the normalized function.
    Derivs {
        #[arg(long, value_name = "A,B,G,D")]
        p: Option<WrightParams>,
    },
    /// Check a theorem hypothesis in its printed and derived forms.
    Check(CheckArgs),
    /// Evaluate a hypothesis over a parameter grid and write CSV.
    Scan {
        #[command(flatten)]
        check: CheckArgs,
        /// `name=start:stop:step` or `name=v1,v2,...`; repeat for more axes.
        #[arg(long, value_name = "SPEC")]
        axis: Vec<String>,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Confront a hypothesis with the geometric oracle on sample functions.
    Verify {
        #[command(flatten)]
        check: CheckArgs,
        #[arg(long, value_enum, default_value_t = Source::Class)]
        source: Source,
        /// Coefficient CSV for `--source file`.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Number of random functions.
        #[arg(long, default_value_t = 50)]
        count: usize,
        /// Truncation degree of generated functions.
        #[arg(long, default_value_t = 50)]
        terms: usize,
        #[arg(long, value_parser = parse_list, default_value = "0.5,0.9,0.99")]
        radii: FloatList,
        #[arg(long, default_value_t = SampleGrid::DEFAULT_THETA_COUNT)]
        thetas: usize,
    },
    /// Write the images of circles |z| = r as SVG.
    Render {
        /// Coefficient CSV of f; the identity when omitted.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Apply the operator with these kernels (f itself is drawn otherwise).
        #[arg(long, value_name = "A,B,G,D")]
        p1: Option<WrightParams>,
        #[arg(long, value_name = "A,B,G,D")]
        p2: Option<WrightParams>,
        #[arg(long, value_name = "RE,IM", value_parser = parse_complex)]
        sigma: Option<Complex64>,
        #[arg(long, value_parser = parse_list, default_value = "0.5,0.9,0.99")]
        radii: FloatList,
        #[arg(long, default_value_t = 1024)]
        thetas: usize,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 800)]
        height: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    /// T3.1 .. T5.4, C1, R1.
    pub theorem: Option<TheoremId>,
    #[arg(long, value_name = "A,B,G,D")]
    pub p1: Option<WrightParams>,
    /// Defaults to `--p1`.
    #[arg(long, value_name = "A,B,G,D")]
    pub p2: Option<WrightParams>,
    #[arg(long, value_name = "RE,IM", value_parser = parse_complex, default_value = "0")]
    pub sigma: Complex64,
    #[arg(long, default_value_t = 0.0)]
    pub order: f64,
    /// |B_1| of f, read by T5.1 and T5.4.
    #[arg(long, default_value_t = 0.0)]
    pub b1: f64,
    /// Which form decides the exit status.
    #[arg(long, value_enum, default_value_t = Gate::Derived)]
    pub gate: Gate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Gate {
    Stated,
    Derived,
}

impl From<Gate> for Form {
    fn from(g: Gate) -> Form {
        match g {
            Gate::Stated => Form::AsStated,
            Gate::Derived => Form::AsDerived,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Random,
    Class,
    File,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FloatList(pub Vec<f64>);

/// `re` or `re,im`.
pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("bad number {t:?}: {e}"));
    match parts[..] {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected re or re,im (got {s:?})")),
    }
}

pub fn parse_list(s: &str) -> std::result::Result<FloatList, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|e| format!("bad number {t:?}: {e}")))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(FloatList)
}

/// Shortest-form decimal with 16 significant digits, switching to
/// exponent notation outside `1e-5 ≤ |x| < 1e16`.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let e = format!("{:.15e}", x);
    let (mant, exp) = e.split_once('e').expect("exponent format");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mant) = mant.strip_prefix('-').map_or(("", mant), |m| ("-", m));
    let digits: String = mant.chars().filter(|c| *c != '.').collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    if !(-5..16).contains(&exp) {
        let (head, tail) = digits.split_at(1);
        let frac = if tail.is_empty() { String::new() } else { format!(".{tail}") };
        return format!("{sign}{head}{frac}e{exp}");
    }
    let out = if exp < 0 {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    } else {
        let point = exp as usize + 1;
        if digits.len() <= point {
            format!("{digits}{}", "0".repeat(point - digits.len()))
        } else {
            format!("{}.{}", &digits[..point], &digits[point..])
        }
    };
    format!("{sign}{out}")
}

fn fmt_complex(z: Complex64) -> String {
    format!("{},{}", fmt_num(z.re), fmt_num(z.im))
}

fn required<T: Clone>(v: &Option<T>, flag: &str) -> Result<T> {
    v.clone().ok_or_else(|| Error::spec(format!("missing required --{flag}")))
}

/// Parsed `key = value` lines, in file order.
pub fn read_config(path: &Path) -> Result<Vec<(String, String)>> {
    let text = std::fs::read_to_string(path)?;
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::spec(format!("{}:{}: expected key = value", path.display(), i + 1)))?;
        entries.push((k.trim().replace('_', "-"), v.trim().to_string()));
    }
    Ok(entries)
}

fn subcommand_args(cmd: &clap::Command, name: &str) -> Vec<clap::Arg> {
    let mut args: Vec<clap::Arg> = cmd.get_arguments().cloned().collect();
    if let Some(sub) = cmd.find_subcommand(name) {
        args.extend(sub.get_arguments().cloned());
    }
    let mut seen = std::collections::HashSet::new();
    args.retain(|a| !matches!(a.get_id().as_str(), "help" | "version" | "config") && seen.insert(a.get_id().clone()));
    args
}

fn config_key(a: &clap::Arg) -> String {
    a.get_long().map(str::to_string).unwrap_or_else(|| a.get_id().to_string())
}

fn from_command_line(m: &ArgMatches, id: &str) -> bool {
    m.try_contains_id(id).is_ok() && matches!(m.value_source(id), Some(ValueSource::CommandLine))
}

/// Appends config entries not overridden on the command line and parses
/// again. Positional and repeated entries are supported.
fn merge_config(argv: Vec<OsString>, matches: &ArgMatches, entries: &[(String, String)]) -> Result<ArgMatches> {
    let mut cmd = Cli::command();
    cmd.build();
    let (name, sub) = matches.subcommand().expect("subcommand is required");
    let args = subcommand_args(&cmd, name);
    let mut extra: Vec<OsString> = Vec::new();
    for (key, value) in entries {
        let arg = args
            .iter()
            .find(|a| config_key(a) == *key)
            .ok_or_else(|| Error::spec(format!("unknown config key {key:?} for `{name}`")))?;
        let id = arg.get_id().as_str();
        if from_command_line(matches, id) || from_command_line(sub, id) {
            continue;
        }
        if arg.is_positional() {
            extra.push(value.into());
        } else if matches!(arg.get_action(), ArgAction::SetTrue) {
            match value.as_str() {
                "true" | "1" | "yes" => extra.push(format!("--{key}").into()),
                "false" | "0" | "no" => {}
                _ => return Err(Error::spec(format!("config key {key:?} expects true or false"))),
            }
        } else {
            extra.push(format!("--{key}").into());
            extra.push(value.into());
        }
    }
    let mut argv = argv;
    argv.extend(extra);
    Cli::command().try_get_matches_from(argv).map_err(|e| Error::spec(e.to_string()))
}

fn show_config(matches: &ArgMatches, out: &mut dyn Write) -> Result<()> {
    let mut cmd = Cli::command();
    cmd.build();
    let (name, sub) = matches.subcommand().expect("subcommand is required");
    writeln!(out, "# hwright {name}")?;
    for arg in subcommand_args(&cmd, name) {
        let id = arg.get_id().as_str();
        if id == "show_config" {
            continue;
        }
        let key = config_key(&arg);
        if matches!(arg.get_action(), ArgAction::SetTrue) {
            let on = [sub, matches].iter().any(|m| m.try_get_one::<bool>(id).ok().flatten().copied().unwrap_or(false));
            writeln!(out, "{key} = {on}")?;
            continue;
        }
        let raw = sub.try_get_raw(id).ok().flatten().or_else(|| matches.try_get_raw(id).ok().flatten());
        for v in raw.into_iter().flatten() {
            writeln!(out, "{key} = {}", v.to_string_lossy())?;
        }
    }
    Ok(())
}

/// Parses `argv` (including the program name), runs the command and
/// returns the exit code. Diagnostics go to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let matches = match Cli::command().try_get_matches_from(&argv) {
        Ok(m) => m,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{rendered}") } else { write!(out, "{rendered}") };
            return code;
        }
    };
    match execute(argv, matches, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(argv: Vec<OsString>, matches: ArgMatches, out: &mut dyn Write) -> Result<u8> {
    let matches = match matches.get_one::<PathBuf>("config") {
        Some(path) => merge_config(argv, &matches, &read_config(path)?)?,
        None => matches,
    };
    let cli = Cli::from_arg_matches(&matches).map_err(|e| Error::spec(e.to_string()))?;
    if cli.show_config {
        show_config(&matches, out)?;
        return Ok(0);
    }
    let ctrl = SeriesControl::new(cli.ctrl_max_terms, cli.ctrl_tol)?;
    let seed = cli.seed;
    match &cli.command {
        Command::Eval { p, z } => cmd_eval(&required(p, "p")?, required(z, "z")?, &ctrl, out),
        Command::Derivs { p } => cmd_derivs(&required(p, "p")?, &ctrl, out),
        Command::Check(args) => cmd_check(args, &ctrl, out),
        Command::Scan { check, axis, out: path } => {
            let rows = cmd_scan(check, axis, &ctrl)?;
            match path {
                Some(path) => write_scan(&rows, File::create(path)?)?,
                None => write_scan(&rows, &mut *out)?,
            }
            Ok(0)
        }
        Command::Verify { check, source, file, count, terms, radii, thetas } => {
            let grid = SampleGrid::new(radii.0.clone(), *thetas)?;
            let opts = VerifyOptions { source: *source, file: file.clone(), count: *count, terms: *terms, seed };
            cmd_verify(check, &opts, &grid, &ctrl, out)
        }
        Command::Render { file, p1, p2, sigma, radii, thetas, width, height, out: path } => {
            let spec = RenderSpec::new(radii.0.clone(), *thetas, *width, *height)?;
            let path = required(path, "out")?;
            let f = match file {
                Some(p) => CoefficientSeq::read_csv(File::open(p)?)?,
                None => CoefficientSeq::identity(),
            };
            let img = match p1 {
                Some(p1) => {
                    let cs = ConvolutionSpec::new(*p1, p2.unwrap_or(*p1), sigma.unwrap_or_default())?;
                    convolve(&f, &cs)
                }
                None => ImageCoefficients::new(f.a_slice().to_vec(), f.b_slice().to_vec()),
            };
            let mut w = BufWriter::new(File::create(&path)?);
            write_svg(&img, &spec, &mut w)?;
            w.flush()?;
            Ok(0)
        }
    }
}

pub fn cmd_eval(p: &WrightParams, z: Complex64, ctrl: &SeriesControl, out: &mut dyn Write) -> Result<u8> {
    let w = wright_eval(p, z, ctrl)?;
    let n = normalized_eval(p, z, ctrl)?;
    writeln!(out, "wright: {}", fmt_complex(w))?;
    writeln!(out, "normalized: {}", fmt_complex(n))?;
    Ok(0)
}

pub fn cmd_derivs(p: &WrightParams, ctrl: &SeriesControl, out: &mut dyn Write) -> Result<u8> {
    let d = derivs_at_one(p, ctrl)?;
    writeln!(out, "w1: {}", fmt_num(d.w1))?;
    writeln!(out, "wp1: {}", fmt_num(d.wp1))?;
    writeln!(out, "wpp1: {}", fmt_num(d.wpp1))?;
    writeln!(out, "wppp1: {}", fmt_num(d.wppp1))?;
    Ok(0)
}

struct Resolved {
    id: TheoremId,
    spec: ConvolutionSpec,
    order: OrderParam,
    b1: f64,
}

fn resolve(args: &CheckArgs) -> Result<Resolved> {
    let id = args.theorem.ok_or_else(|| Error::spec("missing theorem id"))?;
    let p1 = required(&args.p1, "p1")?;
    let spec = ConvolutionSpec::new(p1, args.p2.unwrap_or(p1), args.sigma)?;
    Ok(Resolved { id, spec, order: OrderParam::new(args.order)?, b1: args.b1 })
}

pub fn cmd_check(args: &CheckArgs, ctrl: &SeriesControl, out: &mut dyn Write) -> Result<u8> {
    let r = resolve(args)?;
    let rep = stated_hypothesis(r.id, &r.spec, r.order, r.b1, ctrl)?;
    writeln!(out, "{}", rep.stated)?;
    writeln!(out, "{}", rep.derived)?;
    Ok(if gate_holds(&rep, args.gate.into()) { 0 } else { 1 })
}

pub const SCAN_PARAMS: [&str; 11] =
    ["alpha1", "beta1", "gamma1", "delta1", "alpha2", "beta2", "gamma2", "delta2", "sigma", "order", "b1"];

/// One evaluated grid point: parameter values in [`SCAN_PARAMS`] order and
/// both reports.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub params: [f64; 11],
    pub report: HypothesisReport,
}

fn parse_axis(spec: &str) -> Result<(usize, Vec<f64>)> {
    let bad = |why: &str| Error::spec(format!("bad axis {spec:?}: {why}"));
    let (name, range) = spec.split_once('=').ok_or_else(|| bad("expected name=start:stop:step"))?;
    let name = name.trim();
    let idx = SCAN_PARAMS
        .iter()
        .position(|p| *p == name)
        .ok_or_else(|| bad(&format!("unknown parameter; expected one of {}", SCAN_PARAMS.join(", "))))?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad(&format!("bad number {t:?}")));
    let values = if range.contains(':') {
        let parts: Vec<&str> = range.split(':').collect();
        let [start, stop, step] = parts[..] else { return Err(bad("expected start:stop:step")) };
        let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
        if !(step > 0.0 && step.is_finite()) || !(stop >= start) || !start.is_finite() || !stop.is_finite() {
            return Err(bad("need start <= stop and step > 0"));
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        if count > 1_000_000 {
            return Err(bad("more than 10^6 points"));
        }
        (0..count).map(|k| start + k as f64 * step).collect()
    } else {
        range.split(',').map(num).collect::<Result<Vec<_>>>()?
    };
    if values.is_empty() {
        return Err(bad("no values"));
    }
    Ok((idx, values))
}

/// All grid points of `axes` around `base`, first axis outermost.
fn scan_points(base: [f64; 11], axes: &[(usize, Vec<f64>)]) -> Vec<[f64; 11]> {
    let mut points = vec![base];
    for (idx, values) in axes {
        points = points
            .into_iter()
            .flat_map(|p| {
                values.iter().map(move |&v| {
                    let mut q = p;
                    q[*idx] = v;
                    q
                })
            })
            .collect();
    }
    points
}

pub fn cmd_scan(args: &CheckArgs, axes: &[String], ctrl: &SeriesControl) -> Result<Vec<ScanRow>> {
    if axes.is_empty() {
        return Err(Error::spec("scan needs at least one --axis"));
    }
    let r = resolve(args)?;
    let axes = axes.iter().map(|a| parse_axis(a)).collect::<Result<Vec<_>>>()?;
    let (p1, p2) = (r.spec.p1, r.spec.p2);
    let base = [
        p1.alpha(),
        p1.beta(),
        p1.gamma(),
        p1.delta(),
        p2.alpha(),
        p2.beta(),
        p2.gamma(),
        p2.delta(),
        r.spec.sigma().norm(),
        r.order.value(),
        r.b1,
    ];
    let points = scan_points(base, &axes);
    // validate the whole grid before evaluating anything
    let specs = points
        .iter()
        .map(|v| {
            let p1 = WrightParams::new(v[0], v[1], v[2], v[3])?;
            let p2 = WrightParams::new(v[4], v[5], v[6], v[7])?;
            let spec = ConvolutionSpec::new(p1, p2, Complex64::new(v[8], 0.0))?;
            if v[8] < 0.0 {
                return Err(Error::domain(format!("sigma axis holds |sigma| and must be nonnegative (got {})", v[8])));
            }
            if r.id.uses_b1() && !(v[10].abs() < 1.0) {
                return Err(Error::domain(format!("|B_1| must be below 1 (got {})", v[10])));
            }
            Ok((spec, OrderParam::new(v[9])?))
        })
        .collect::<Result<Vec<_>>>()?;
    points
        .par_iter()
        .zip(specs.par_iter())
        .map(|(v, (spec, order))| {
            let report = stated_hypothesis(r.id, spec, *order, v[10], ctrl)?;
            Ok(ScanRow { params: *v, report })
        })
        .collect()
}

pub fn write_scan<W: Write>(rows: &[ScanRow], w: W) -> Result<()> {
    let mut csv = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
    let mut header: Vec<&str> = SCAN_PARAMS.to_vec();
    header.extend(["lhs_stated", "rhs_stated", "sat_stated", "lhs_derived", "rhs_derived", "sat_derived"]);
    csv.write_record(&header)?;
    let num = |x: f64| format!("{x:.16e}");
    for row in rows {
        let mut rec: Vec<String> = row.params.iter().map(|&x| num(x)).collect();
        for r in [&row.report.stated, &row.report.derived] {
            rec.extend([num(r.lhs), num(r.rhs), r.satisfied.to_string()]);
        }
        csv.write_record(&rec)?;
    }
    csv.flush()?;
    Ok(())
}

pub struct VerifyOptions {
    pub source: Source,
    pub file: Option<PathBuf>,
    pub count: usize,
    pub terms: usize,
    pub seed: u64,
}

pub fn cmd_verify(
    args: &CheckArgs,
    opts: &VerifyOptions,
    grid: &SampleGrid,
    ctrl: &SeriesControl,
    out: &mut dyn Write,
) -> Result<u8> {
    let r = resolve(args)?;
    let samples: Vec<CoefficientSeq> = match opts.source {
        Source::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            (0..opts.count).map(|_| random_unit_bounded(&mut rng, opts.terms)).collect()
        }
        Source::Class => vec![class_representative(r.id, r.order, r.b1, opts.terms)?],
        Source::File => {
            let path = required(&opts.file, "file")?;
            vec![CoefficientSeq::read_csv(File::open(path)?)?]
        }
    };
    if opts.terms < 2 {
        return Err(Error::domain("--terms must be at least 2"));
    }
    let b1 = match opts.source {
        // T5.1 and T5.4 read |B_1| of the function actually tested
        Source::Random | Source::File if r.id.uses_b1() => None,
        _ => Some(r.b1),
    };
    let reports = samples
        .iter()
        .map(|f| stated_hypothesis(r.id, &r.spec, r.order, b1.unwrap_or(f.b(1).norm()), ctrl))
        .collect::<Result<Vec<_>>>()?;
    let gate: Form = args.gate.into();
    let outcomes = samples
        .par_iter()
        .zip(reports.par_iter())
        .map(|(f, rep)| verify_one(r.id, &r.spec, r.order, gate_holds(rep, gate), f, grid))
        .collect::<Result<Vec<_>>>()?;

    if let [rep] = &reports[..] {
        writeln!(out, "{}", rep.stated)?;
        writeln!(out, "{}", rep.derived)?;
    } else if b1.is_some() {
        writeln!(out, "{}", reports[0].stated)?;
        writeln!(out, "{}", reports[0].derived)?;
    }
    let mut tally = [0usize; 3];
    for (k, o) in outcomes.iter().enumerate() {
        tally[o.verdict as usize] += 1;
        match &o.witness {
            Some(w) => writeln!(out, "f#{k}: {} {w}", o.verdict)?,
            None => writeln!(out, "f#{k}: {}", o.verdict)?,
        }
    }
    writeln!(
        out,
        "summary: {} CONSISTENT, {} VACUOUS, {} COUNTEREXAMPLE",
        tally[Verdict::Consistent as usize],
        tally[Verdict::Vacuous as usize],
        tally[Verdict::Counterexample as usize]
    )?;
    Ok(if tally[Verdict::Consistent as usize] == outcomes.len() { 0 } else { 1 })
}
