//! `liecoh`: cohomology tables, structure reports and verification suites from the command line.
//!
//! Exit status: 0 when every check passes, 1 when a check fails or a computation is
//! refused, 2 on usage or input errors.

mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use liecoh::arith::parse_rational;
use liecoh::ce::cohomology;
use liecoh::lie::{standard_rep, LieRep, SubalgebraTag};
use liecoh::padic::{
    cocycle_logchi, cocycle_s, group_mul, logchi_extension_rep, mat_exp, mat_log, s_extension_rep, AlgebraElement,
    GroupElement, PadicConfig, PadicScalar,
};
use liecoh::par::Parallelism;
use liecoh::random;
use liecoh::structure::{irreducible_test, length, unipotent_structure, z_split};
use liecoh::suites::{self, parse_alphas, Check, Report, SuiteParams, DEFAULT_SEED};
use liecoh::Error;

use io::{Failure, Output};

#[derive(Parser)]
#[command(name = "liecoh", version, about = "Exact Lie algebra cohomology for g_d = Q ⋉ Q^d")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology dimensions and cocycle counts of a rep file.
    Dims {
        file: PathBuf,
        #[arg(long, default_value = "full")]
        sub: String,
    },
    /// Run a named verification suite.
    Verify(VerifyArgs),
    /// Length vector, integer/non-integer split, irreducibility and unipotent blocks.
    Classify { file: PathBuf },
    /// Ranks of cup products of delta classes against the expected dimensions.
    CupTable {
        #[arg(long)]
        d: usize,
    },
    /// p-adic exp, log and cocycle evaluation.
    Padic(PadicArgs),
    /// Emit a rep file.
    Rep(RepArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// caL-table, bases, cup, complex, euler, ext, shift, zsplit, clas, padic, extone or relations.
    suite: String,
    #[arg(long)]
    d: Option<usize>,
    /// Comma list: integers, ranges `a..b`, `half`, `sqrt2`, `i`, `golden`, rationals.
    #[arg(long, allow_hyphen_values = true)]
    alphas: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_delimiter = ',', default_values_t = [3u64, 5])]
    p: Vec<u64>,
    #[arg(long, default_value_t = 1)]
    c: u32,
    #[arg(long, default_value_t = 20)]
    prec: u32,
    /// Run trials one at a time.
    #[arg(long)]
    sequential: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum PadicOp {
    Exp,
    Log,
    Cocycle,
}

#[derive(Args)]
struct PadicArgs {
    op: PadicOp,
    #[arg(long)]
    p: u64,
    /// Defaults to 1, or 2 when p = 2.
    #[arg(long)]
    c: Option<u32>,
    #[arg(long, default_value_t = 20)]
    prec: u32,
    /// exp: coefficient of X_0 (valuation at least that of 2p^c).
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// exp: coefficients of X_1..X_d, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    b: Vec<String>,
    /// log, cocycle: the U coordinate of g.
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    /// log, cocycle: the translation part of g.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    z: Vec<String>,
    /// cocycle: a second element h, to check the cocycle laws on (g, h).
    #[arg(long, allow_hyphen_values = true)]
    hu: Option<String>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    hz: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RepKind {
    /// K[X_0]/P(X_0) for each entry of --alphas (direct sum).
    Standard,
    /// The extension of the trivial rep by itself through X_0.
    Logchi,
    /// The extension twisted by X_j (needs --j).
    S,
    /// A seeded random valid rep.
    Random,
}

#[derive(Args)]
struct RepArgs {
    kind: RepKind,
    #[arg(long)]
    d: usize,
    #[arg(long, allow_hyphen_values = true)]
    alphas: Option<String>,
    #[arg(long)]
    j: Option<usize>,
    #[arg(long, default_value_t = 4)]
    dim: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    label: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let result = match &cli.command {
        Command::Dims { file, sub } => dims(&echo, file, sub),
        Command::Verify(a) => verify(&echo, a),
        Command::Classify { file } => classify(&echo, file),
        Command::CupTable { d } => cup_table(&echo, *d),
        Command::Padic(a) => padic(&echo, a),
        Command::Rep(a) => rep(a),
    };
    match result.and_then(|out| out.emit(cli.json, cli.out.as_deref())) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[derive(Serialize)]
struct DimsResult {
    subalgebra: String,
    dims: Vec<usize>,
    cocycles: Vec<usize>,
    euler_characteristic: i64,
}

fn dims(echo: &str, file: &std::path::Path, sub: &str) -> Result<Output, Failure> {
    let rep = io::read_rep(file)?;
    let tag = SubalgebraTag::parse(sub).map_err(Failure::usage)?;
    let report = cohomology(&rep, tag).map_err(Failure::from)?;
    let cocycles: Vec<usize> = report.cocycle_bases.iter().map(Vec::len).collect();
    let chi = report.euler_characteristic();
    let checks = vec![Check::new("Euler characteristic", 0, chi)];
    let text = format!("{}\ncocycles: {}\n", join(&report.dims), join(&cocycles));
    let result = DimsResult { subalgebra: sub.to_string(), dims: report.dims.clone(), cocycles, euler_characteristic: chi };
    Ok(Output::new(Report::new(echo, 0, checks), text).with_result(&result))
}

fn join(v: &[usize]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn verify(echo: &str, a: &VerifyArgs) -> Result<Output, Failure> {
    let alphas = a.alphas.as_deref().map(parse_alphas).transpose().map_err(Failure::usage)?;
    let params = SuiteParams {
        d: a.d,
        alphas: alphas.clone(),
        trials: a.trials,
        seed: a.seed,
        primes: a.p.clone(),
        c: a.c,
        prec: a.prec,
        mode: if a.sequential { Parallelism::Sequential } else { Parallelism::Parallel },
    };
    if !suites::SUITES.contains(&a.suite.as_str()) {
        return Err(Failure::usage(Error::Parse(format!(
            "unknown suite {:?} (expected one of {})",
            a.suite,
            suites::SUITES.join(", ")
        ))));
    }
    if a.suite == "caL-table" {
        let alphas = alphas.unwrap_or_else(suites::default_alphas);
        let ds: Vec<usize> = a.d.map_or_else(|| (1..=4).collect(), |d| vec![d]);
        let tables = suites::cal_tables(&ds, &alphas, params.mode).map_err(Failure::from)?;
        let report = Report::new(echo, a.seed, suites::table_checks(&tables));
        let mut text: String = tables.iter().map(|t| format!("# d = {}\n{}", t.d, t.to_csv())).collect();
        text.push_str(&io::summary(&report));
        return Ok(Output::new(report, text).with_result(&tables));
    }
    let mut report = suites::run_suite(&a.suite, &params).map_err(Failure::from)?;
    report.command = echo.to_string();
    let text = io::summary(&report);
    Ok(Output::new(report, text))
}

#[derive(Serialize)]
struct Factor {
    factor: String,
    multiplicity: usize,
}

#[derive(Serialize)]
struct ClassifyResult {
    dim: usize,
    length: Vec<Factor>,
    z_split: liecoh::structure::BlockSplitSummary,
    irreducible: bool,
    unipotent_blocks: Option<Vec<usize>>,
}

fn classify(echo: &str, file: &std::path::Path) -> Result<Output, Failure> {
    let rep = io::read_rep(file)?;
    let lv = length(&rep).map_err(Failure::from)?;
    let split = z_split(&rep).map_err(Failure::from)?;
    let irr = irreducible_test(&rep).map_err(Failure::from)?;
    let mut checks = vec![
        Check::new("length vector total degree", rep.dim(), lv.total_dim()),
        Check::new("dim z + dim z'", rep.dim(), split.z_part.dim() + split.zprime_part.dim()),
    ];
    let unipotent = match unipotent_structure(&rep) {
        Ok(u) => {
            checks.push(Check::new("unipotent block sizes sum", rep.dim(), u.blocks.iter().sum::<usize>()));
            checks.push(Check::holds("X_j = 0 in the recovered basis", u.geometric_part_vanishes));
            Some(u.blocks)
        }
        Err(Error::NotUnipotent(_)) => None,
        Err(e) => return Err(Failure::from(e)),
    };
    let result = ClassifyResult {
        dim: rep.dim(),
        length: lv.factors.iter().map(|(f, m)| Factor { factor: f.pretty(), multiplicity: *m }).collect(),
        z_split: split.summary(),
        irreducible: irr.irreducible,
        unipotent_blocks: unipotent.clone(),
    };
    let mut text = String::new();
    text.push_str(&format!("dim {}\n", rep.dim()));
    for f in &result.length {
        text.push_str(&format!("factor {} x{}\n", f.factor, f.multiplicity));
    }
    text.push_str(&format!("z-part {} / non-integer part {}\n", result.z_split.z_dim, result.z_split.zprime_dim));
    text.push_str(&format!("irreducible {}\n", irr.irreducible));
    if let Some(b) = &unipotent {
        text.push_str(&format!("unipotent blocks {}\n", join(b)));
    }
    Ok(Output::new(Report::new(echo, 0, checks), text).with_result(&result))
}

fn cup_table(echo: &str, d: usize) -> Result<Output, Failure> {
    if d == 0 {
        return Err(Failure::usage(Error::Parse("d: must be at least 1".into())));
    }
    let checks = suites::cup_checks(&[d]).map_err(Failure::from)?;
    let mut text = String::from("check,expected,computed\n");
    for c in &checks {
        text.push_str(&format!("{},{},{}\n", c.name, c.expected, c.computed));
    }
    let report = Report::new(echo, 0, checks);
    text.push_str(&io::summary(&report));
    Ok(Output::new(report, text))
}

fn scalar(cfg: &PadicConfig, field: &str, s: &str) -> Result<PadicScalar, Failure> {
    let r = parse_rational(s).map_err(|e| Failure::usage(Error::Parse(format!("{field}: {e}"))))?;
    PadicScalar::from_rational(&r, cfg.p, cfg.prec).map_err(|e| Failure::usage(Error::Parse(format!("{field}: {e}"))))
}

fn scalars(cfg: &PadicConfig, field: &str, v: &[String]) -> Result<Vec<PadicScalar>, Failure> {
    v.iter().enumerate().map(|(i, s)| scalar(cfg, &format!("{field}[{i}]"), s)).collect()
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, Failure> {
    v.as_deref().ok_or_else(|| Failure::usage(Error::Parse(format!("--{flag} is required"))))
}

#[derive(Serialize)]
struct Element {
    u: PadicScalar,
    z: Vec<PadicScalar>,
}

#[derive(Serialize)]
struct LieElement {
    a: PadicScalar,
    b: Vec<PadicScalar>,
}

#[derive(Serialize)]
struct CocycleValues {
    log_chi: PadicScalar,
    s: Vec<PadicScalar>,
}

fn padic(echo: &str, a: &PadicArgs) -> Result<Output, Failure> {
    let cfg = if a.p == 2 { PadicConfig::two(a.c, a.prec) } else { PadicConfig::new(a.p, a.c.unwrap_or(1), a.prec) }
        .map_err(Failure::usage)?;
    let group = |u: &Option<String>, z: &[String], f: &str| -> Result<GroupElement, Failure> {
        let u = scalar(&cfg, f, required(u, f)?)?;
        GroupElement::new(&cfg, u, scalars(&cfg, &format!("{f}.z"), z)?).map_err(Failure::usage)
    };
    match a.op {
        PadicOp::Exp => {
            let x = AlgebraElement::new(scalar(&cfg, "a", required(&a.a, "a")?)?, scalars(&cfg, "b", &a.b)?)
                .map_err(Failure::usage)?;
            let g = mat_exp(&cfg, &x).map_err(Failure::usage)?;
            let text = format!("u = {}\n{}", g.u, lines("z", &g.z));
            let checks = vec![Check::holds("log(exp x) = x", mat_log(&g).map_err(Failure::from)?.agrees_with(&x))];
            Ok(Output::new(Report::new(echo, 0, checks), text).with_result(&Element { u: g.u, z: g.z }))
        }
        PadicOp::Log => {
            let g = group(&a.u, &a.z, "u")?;
            let x = mat_log(&g).map_err(Failure::usage)?;
            let text = format!("a = {}\n{}", x.a, lines("b", &x.b));
            let checks = vec![Check::holds("exp(log g) = g", mat_exp(&cfg, &x).map_err(Failure::from)?.agrees_with(&g))];
            Ok(Output::new(Report::new(echo, 0, checks), text).with_result(&LieElement { a: x.a, b: x.b }))
        }
        PadicOp::Cocycle => {
            let g = group(&a.u, &a.z, "u")?;
            let values = |g: &GroupElement| -> Result<CocycleValues, Failure> {
                Ok(CocycleValues {
                    log_chi: cocycle_logchi(g).map_err(Failure::from)?,
                    s: (1..=g.d()).map(|j| cocycle_s(j, g)).collect::<liecoh::Result<_>>().map_err(Failure::from)?,
                })
            };
            let vg = values(&g)?;
            let mut checks = Vec::new();
            if a.hu.is_some() {
                let h = group(&a.hu, &a.hz, "hu")?;
                let gh = group_mul(&g, &h).map_err(Failure::usage)?;
                let (vh, vgh) = (values(&h)?, values(&gh)?);
                checks.push(Check::holds("log chi(gh) = log chi(g) + log chi(h)", vgh.log_chi.agrees_with(&vg.log_chi.add(&vh.log_chi))));
                for j in 0..g.d() {
                    let rhs = vg.s[j].add(&g.u.mul(&vh.s[j]));
                    checks.push(Check::holds(format!("s_{}(gh) = s_{}(g) + chi(g) s_{}(h)", j + 1, j + 1, j + 1), vgh.s[j].agrees_with(&rhs)));
                }
            }
            let report = Report::new(echo, 0, checks);
            let mut text = format!("log chi = {}\n{}", vg.log_chi, lines("s", &vg.s));
            if !report.checks.is_empty() {
                text.push_str(&io::summary(&report));
            }
            Ok(Output::new(report, text).with_result(&vg))
        }
    }
}

fn lines(name: &str, v: &[PadicScalar]) -> String {
    v.iter().enumerate().map(|(j, s)| format!("{name}_{} = {s}\n", j + 1)).collect()
}

fn rep(a: &RepArgs) -> Result<Output, Failure> {
    if a.d == 0 {
        return Err(Failure::usage(Error::Parse("d: must be at least 1".into())));
    }
    let r: LieRep = match a.kind {
        RepKind::Standard => {
            let alphas = parse_alphas(a.alphas.as_deref().unwrap_or("0")).map_err(Failure::usage)?;
            let mut r = LieRep::zero_dim(a.d);
            for p in &alphas {
                r = r.direct_sum(&standard_rep(a.d, p).map_err(Failure::usage)?).map_err(Failure::from)?;
            }
            r
        }
        RepKind::Logchi => logchi_extension_rep(a.d),
        RepKind::S => {
            let j = a.j.filter(|j| (1..=a.d).contains(j)).ok_or_else(|| {
                Failure::usage(Error::Parse(format!("j: need 1 ≤ j ≤ {}", a.d)))
            })?;
            s_extension_rep(a.d, j)
        }
        RepKind::Random => {
            if a.dim == 0 {
                return Err(Failure::usage(Error::Parse("dim: must be at least 1".into())));
            }
            random::random_valid_rep(&mut random::rng(a.seed), a.d, a.dim)
        }
    };
    Ok(Output::rep_file(r.to_file(a.label.clone())))
}
