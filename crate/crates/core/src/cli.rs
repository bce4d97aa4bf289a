//! The `bgd` command line.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{format_combination, Side};
use crate::comodule::check_comodule;
use crate::dual::{check_dual_actions, check_s_maps, left_dual, right_dual, Dual};
use crate::error::{Error, Result};
use crate::fixtures::{preset, PRESETS};
use crate::frobenius::{frobenius_conditions, frobenius_system, quasi_frobenius_check, verify_system, Extension};
use crate::hopf_module::{
    base_regular, build_u_lower_star_hopf_module, check_hopf_module, fundamental_ll, fundamental_rl, r_l_type1, HopfKind, HopfModule,
};
use crate::integral::{describe, integral_invariance_check, left_integrals, separability_check, IntegralSpace};
use crate::io::{load_crossed, load_spec, Presentation, ReportDocument, SpecDocument};
use crate::lie_rinehart::restricted_enveloping;
use crate::matrix::vec_to_strings;
use crate::report::Report;
use crate::LeftBialgebroid;

#[derive(Parser, Debug)]
#[command(name = "bgd", version, about = "Exact checks and computations for finite-dimensional bialgebroids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Source {
    /// JSON presentation to load.
    pub spec: Option<PathBuf>,
    /// Built-in fixture instead of a file.
    #[arg(long, conflicts_with = "spec")]
    pub preset: Option<String>,
    /// Characteristic for presets that take one.
    #[arg(long, default_value_t = 2)]
    pub prime: u32,
    /// Rank for the `abelian-n` and `jet` presets.
    #[arg(long, default_value_t = 1)]
    pub rank: usize,
    /// Lie algebra and σ matrices for the `crossed` preset.
    #[arg(long)]
    pub sigma: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Include wall-clock timings in the output.
    #[arg(long)]
    pub timings: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExtensionArg {
    S,
    T,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Algebra and bialgebroid axioms, plus any comodules and Hopf modules in the file.
    Check {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Left integrals of U, or right integrals of U_*.
    Integrals {
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Separability against normalized integrals.
    Maschke {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Frobenius system for s or t, and the list of equivalent conditions.
    Frobenius {
        #[arg(long, value_enum, default_value_t = ExtensionArg::S)]
        extension: ExtensionArg,
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Projectivity of the left integrals.
    QuasiFrobenius {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Translation map identities, and the translation of one element.
    Translate {
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        /// Coordinates of an element of U, comma separated.
        #[arg(long)]
        element: Option<String>,
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// The dual right bialgebroid U_* (left) or U^* (right).
    Dual {
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Structure theorem for left-left (left) or right-left (right) Hopf modules.
    Fundamental {
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Print a built-in fixture as a JSON presentation.
    Example {
        name: Option<String>,
        /// List the available names.
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = 2)]
        prime: u32,
        #[arg(long, default_value_t = 1)]
        rank: usize,
        #[arg(long)]
        sigma: Option<PathBuf>,
    },
    /// Re-emit a presentation in canonical form.
    Export {
        #[command(flatten)]
        source: Source,
    },
}

/// What a command produced: a report, or a document to print verbatim.
pub enum Outcome {
    Report(ReportDocument),
    Document(String),
}

fn fixture_name(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn named_preset(name: &str, prime: u32, rank: usize, sigma: Option<&Path>) -> Result<LeftBialgebroid> {
    if name == "crossed" {
        let path = sigma.ok_or_else(|| Error::Invalid("the crossed preset needs --sigma FILE".into()))?;
        return restricted_enveloping(&load_crossed(path)?.build()?);
    }
    preset(name, prime, rank)
}

fn bare(b: LeftBialgebroid) -> Presentation {
    let doc = SpecDocument::from_bialgebroid(&b);
    let names = (doc.bialgebroid.base, doc.bialgebroid.total);
    Presentation { bialgebroid: b, names, modules: Default::default(), comodules: Default::default(), hopf_modules: Default::default() }
}

/// Loads the presentation named on the command line, with its fixture id.
pub fn load(source: &Source) -> Result<(String, Presentation)> {
    match (&source.spec, &source.preset) {
        (Some(path), _) => Ok((fixture_name(path), load_spec(path)?.build()?)),
        (None, Some(name)) => Ok((name.clone(), bare(named_preset(name, source.prime, source.rank, source.sigma.as_deref())?))),
        (None, None) => Err(Error::Invalid("give a presentation file or --preset NAME".into())),
    }
}

fn labels(b: &LeftBialgebroid) -> impl Fn(usize) -> String + '_ {
    |i| b.total().labels()[i].clone()
}

fn show(b: &LeftBialgebroid, v: &[crate::Scalar]) -> String {
    format_combination(v, labels(b))
}

/// A lift in `U ⊗ U`, written with `⊗` between labels.
fn show_tensor(b: &LeftBialgebroid, v: &[crate::Scalar]) -> String {
    let n = b.dim();
    let l = b.total().labels();
    format_combination(v, |idx| format!("{} ⊗ {}", l[idx / n], l[idx % n]))
}

fn hopf_status(b: &LeftBialgebroid) -> Value {
    json!({ "left_hopf": b.is_left_hopf(), "right_hopf": b.is_right_hopf() })
}

fn check(p: &Presentation) -> (Report, Value) {
    let b = &p.bialgebroid;
    let mut r = b.check();
    for (name, c) in &p.comodules {
        r.extend_prefixed(&format!("comodules.{name}"), check_comodule(b, c));
    }
    for (name, h) in &p.hopf_modules {
        r.extend_prefixed(&format!("hopf_modules.{name}"), check_hopf_module(b, h));
    }
    let mut data = hopf_status(b);
    data["dim"] = json!(b.dim());
    data["base_dim"] = json!(b.base_dim());
    (r, data)
}

fn integral_data(b: &LeftBialgebroid, ints: &IntegralSpace) -> Value {
    let mut d = describe(ints);
    d["elements"] = json!(ints.basis.iter().map(|v| show(b, v)).collect::<Vec<_>>());
    if let Some(g) = &ints.generator {
        d["generator_element"] = json!(show(b, g));
    }
    d
}

fn integrals(b: &LeftBialgebroid, side: SideArg) -> Result<(Report, Value)> {
    let mut r = Report::new();
    match side {
        SideArg::Left => {
            let ints = left_integrals(b)?;
            r.flag("integrals.actions_agree", "s(a)l = t(a)l for every left integral l", ints.actions_agree());
            if b.is_right_hopf() {
                let mut bad = Vec::new();
                for (k, l) in ints.basis.iter().enumerate() {
                    if let Some(u) = integral_invariance_check(b, l)? {
                        bad.push(json!({ "integral": k, "u": u }));
                    }
                }
                r.record("integrals.invariance", "u l₍₊₎ ⊗ l₍₋₎ = l₍₊₎ ⊗ l₍₋₎ u", (!bad.is_empty()).then(|| json!(bad)));
            } else {
                r.skip("integrals.invariance", "u l₍₊₎ ⊗ l₍₋₎ = l₍₊₎ ⊗ l₍₋₎ u", "not right Hopf");
            }
            Ok((r, integral_data(b, &ints)))
        }
        SideArg::Right => {
            let lower = left_dual(b)?;
            let ints = lower.bialgebroid.right_integrals()?;
            r.flag("integrals.actions_agree", "both base actions agree on the right integrals of U_*", ints.actions_agree());
            let w = lower.bialgebroid.op_coop()?;
            Ok((r, integral_data(&w, &ints)))
        }
    }
}

/// Compares the integrals of the jet algebroid with `λ_1^{p−1}...λ_n^{p−1}`.
fn jet_omega(b: &LeftBialgebroid, prime: u32, rank: usize, r: &mut Report, data: &mut Value) -> Result<()> {
    let l = match rank {
        1 => crate::lie_rinehart::rank_one(prime)?,
        _ => crate::lie_rinehart::rank_two(prime)?,
    };
    let ji = crate::lie_rinehart::jet_integral(&l)?;
    r.flag("integrals.omega", "ω = λ₁^{p−1}...λₙ^{p−1} is a left integral", ji.verified);
    r.flag("integrals.omega_generates", "the left integrals are free of rank one on ω", ji.rank_one);
    data["omega"] = json!(show(b, &ji.omega));
    Ok(())
}

fn maschke(b: &LeftBialgebroid) -> Result<(Report, Value)> {
    let sep = separability_check(b)?;
    let mut r = Report::new();
    r.flag("maschke.equivalence", "separable iff a normalized left integral exists", sep.consistent());
    let mut data = json!({ "separable": sep.separable(), "reason": sep.reason() });
    if let Some(l) = &sep.normalized_integral {
        data["normalized_integral"] = json!(show(b, l));
    }
    Ok((r, data))
}

fn frobenius(b: &LeftBialgebroid, ext: ExtensionArg) -> Result<(Report, Value)> {
    let ext = match ext {
        ExtensionArg::S => Extension::ViaS,
        ExtensionArg::T => Extension::ViaT,
    };
    let mut r = Report::new();
    let sys = frobenius_system(b, ext)?;
    let system = match &sys {
        Some(s) => {
            let c = if ext == Extension::ViaS { b.clone() } else { b.coop() };
            r.extend(verify_system(&c, &s.theta, &s.tensor));
            json!({
                "theta": s.theta.row_vectors().iter().map(|row| vec_to_strings(row)).collect::<Vec<_>>(),
                "tensor": show_tensor(b, &s.tensor),
                "t0": show(b, &s.t0),
                "t0_generates": s.t0_generates,
            })
        }
        None => {
            r.skip("frobenius.system", "a Frobenius system exists", "no Frobenius system exists");
            Value::Null
        }
    };
    let conds = frobenius_conditions(b)?;
    match conds.consistent {
        Some(ok) => {
            r.flag("frobenius.consistent", "the equivalent conditions agree", ok);
        }
        None => r.skip("frobenius.consistent", "the equivalent conditions agree", "needs left and right Hopf"),
    }
    match conds.integral_criterion {
        Some(ok) => {
            r.flag("frobenius.integral_criterion", "t is Frobenius iff ▶∫^ℓ is free of rank one", ok);
        }
        None => r.skip("frobenius.integral_criterion", "t is Frobenius iff ▶∫^ℓ is free of rank one", "not left Hopf"),
    }
    let items: serde_json::Map<String, Value> = conds.items.iter().map(|c| (c.id.clone(), json!(c.holds))).collect();
    Ok((r, json!({ "frobenius": sys.is_some(), "system": system, "conditions": items })))
}

fn quasi_frobenius(b: &LeftBialgebroid) -> Result<(Report, Value)> {
    let q = quasi_frobenius_check(b)?;
    let mut r = Report::new();
    r.flag("quasi_frobenius.free_is_projective", "free of rank one implies projective", !q.free_rank_one || q.projective);
    Ok((r, serde_json::to_value(&q)?))
}

fn parse_element(b: &LeftBialgebroid, text: &str) -> Result<Vec<crate::Scalar>> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != b.dim() {
        return Err(Error::Dimension(format!("--element has {} coordinates where {} are expected", parts.len(), b.dim())));
    }
    parts.iter().map(|s| b.field().parse(s)).collect()
}

fn translate(b: &LeftBialgebroid, side: SideArg, element: Option<&str>) -> Result<(Report, Value)> {
    let (want, prefix) = match side {
        SideArg::Left => ("not left Hopf", "sch"),
        SideArg::Right => ("not right Hopf", "tch"),
    };
    let all = b.verify_translation_identities();
    let mut r = Report::new();
    r.extend(Report { items: all.items.into_iter().filter(|i| i.check_id.starts_with(prefix)).collect() });
    let mut data = hopf_status(b);
    if let Some(text) = element {
        let u = parse_element(b, text)?;
        data["element"] = json!(show(b, &u));
        let lift = match side {
            SideArg::Left => b.translate_left_lift(&u),
            SideArg::Right => b.translate_right_lift(&u),
        };
        match lift {
            Ok(v) => data["translation"] = json!(show_tensor(b, &v)),
            Err(Error::Unsupported(_)) => r.skip("translate.element", "translation of the given element", want),
            Err(e) => return Err(e),
        }
    }
    Ok((r, data))
}

fn dual(b: &LeftBialgebroid, side: SideArg) -> Result<(Report, Value)> {
    let (d, tag): (Dual, &str) = match side {
        SideArg::Left => (left_dual(b)?, "lower"),
        SideArg::Right => (right_dual(b)?, "upper"),
    };
    let mut r = Report::new();
    r.extend_prefixed(tag, d.check());
    r.extend_prefixed(tag, d.biduality_check());
    r.extend(check_s_maps(b)?);
    r.extend(check_dual_actions(b)?);
    let w = d.bialgebroid.op_coop()?;
    let data = json!({
        "dim": d.dim(),
        "base_dim": b.base_dim(),
        "pairing_rank": d.pairing_rank(),
        "op_coop": hopf_status(&w),
    });
    Ok((r, data))
}

fn fundamental(p: &Presentation, side: SideArg) -> Result<(Report, Value)> {
    let b = &p.bialgebroid;
    let mut r = Report::new();
    let mut data = serde_json::Map::new();
    let kind = match side {
        SideArg::Left => HopfKind::LeftLeft,
        SideArg::Right => HopfKind::RightLeft,
    };
    let mut modules: Vec<(String, HopfModule)> = p.hopf_modules.iter().filter(|(_, h)| h.kind == kind).map(|(n, h)| (n.clone(), h.clone())).collect();
    if p.hopf_modules.is_empty() {
        modules.push(("regular".into(), HopfModule::regular(b, kind)?));
        match side {
            SideArg::Left => {
                if b.is_left_hopf() {
                    modules.push(("lower_dual".into(), build_u_lower_star_hopf_module(b)?.1));
                }
            }
            SideArg::Right => modules.push(("induced".into(), r_l_type1(b, &base_regular(b, Side::Left))?.module)),
        }
    }
    for (name, m) in &modules {
        let checks = check_hopf_module(b, m);
        let valid = checks.passed();
        r.extend_prefixed(name, checks);
        if !valid {
            continue;
        }
        let id = format!("{name}.fundamental");
        match side {
            SideArg::Left => {
                let fl = fundamental_ll(b, m)?;
                data.insert(name.clone(), json!({ "coinvariants": fl.coinvariants.dim(), "surjective": fl.surjective, "iso": fl.iso }));
                if b.is_left_hopf() {
                    r.flag(&id, "▶U ⊗ M^cov → M is bijective", fl.iso);
                } else {
                    r.skip(&id, "▶U ⊗ M^cov → M is bijective", "not left Hopf");
                }
            }
            SideArg::Right => match fundamental_rl(b, m) {
                Ok(fr) => {
                    data.insert(name.clone(), json!({ "coinvariants": fr.coinvariants.dim(), "images_coinvariant": fr.images_coinvariant, "iso": fr.verified }));
                    r.flag(&id, "U◁ ⊗ M^cov → M is bijective with the explicit inverse", fr.verified);
                }
                Err(Error::Unsupported(why)) => r.skip(&id, "U◁ ⊗ M^cov → M is bijective with the explicit inverse", why),
                Err(e) => return Err(e),
            },
        }
    }
    Ok((r, Value::Object(data)))
}

fn report(command: &str, source: &Source, run: impl FnOnce(&Presentation) -> Result<(Report, Value)>) -> Result<(ReportDocument, f64)> {
    let start = Instant::now();
    let (fixture, p) = load(source)?;
    let loaded = start.elapsed().as_secs_f64();
    let (r, data) = run(&p)?;
    let mut doc = ReportDocument::new(command, &fixture, r);
    if !data.is_null() {
        doc.data = Some(data);
    }
    doc.timings.insert("load".into(), loaded);
    Ok((doc, start.elapsed().as_secs_f64()))
}

/// Runs one parsed command.
pub fn run(cmd: &Command) -> Result<(Outcome, Option<Output>)> {
    let (doc, total, output) = match cmd {
        Command::Check { source, output } => {
            let (d, t) = report("check", source, |p| Ok(check(p)))?;
            (d, t, output)
        }
        Command::Integrals { side, source, output } => {
            let jet = (source.preset.as_deref() == Some("jet") && *side == SideArg::Left).then_some((source.prime, source.rank));
            let (d, t) = report("integrals", source, |p| {
                let (mut r, mut data) = integrals(&p.bialgebroid, *side)?;
                if let Some((prime, rank)) = jet {
                    jet_omega(&p.bialgebroid, prime, rank, &mut r, &mut data)?;
                }
                Ok((r, data))
            })?;
            (d, t, output)
        }
        Command::Maschke { source, output } => {
            let (d, t) = report("maschke", source, |p| maschke(&p.bialgebroid))?;
            (d, t, output)
        }
        Command::Frobenius { extension, source, output } => {
            let (d, t) = report("frobenius", source, |p| frobenius(&p.bialgebroid, *extension))?;
            (d, t, output)
        }
        Command::QuasiFrobenius { source, output } => {
            let (d, t) = report("quasi-frobenius", source, |p| quasi_frobenius(&p.bialgebroid))?;
            (d, t, output)
        }
        Command::Translate { side, element, source, output } => {
            let (d, t) = report("translate", source, |p| translate(&p.bialgebroid, *side, element.as_deref()))?;
            (d, t, output)
        }
        Command::Dual { side, source, output } => {
            let (d, t) = report("dual", source, |p| dual(&p.bialgebroid, *side))?;
            (d, t, output)
        }
        Command::Fundamental { side, source, output } => {
            let (d, t) = report("fundamental", source, |p| fundamental(p, *side))?;
            (d, t, output)
        }
        Command::Example { name, list, prime, rank, sigma } => {
            if *list {
                let mut names = PRESETS.join("\n");
                names.push_str("\ncrossed\n");
                return Ok((Outcome::Document(names), None));
            }
            let name = name.as_deref().ok_or_else(|| Error::Invalid("give a fixture name or --list".into()))?;
            let b = named_preset(name, *prime, *rank, sigma.as_deref())?;
            return Ok((Outcome::Document(SpecDocument::from_bialgebroid(&b).to_canonical_json()?), None));
        }
        Command::Export { source } => {
            let text = match &source.spec {
                Some(path) => load_spec(path)?.to_canonical_json()?,
                None => SpecDocument::from_bialgebroid(&load(source)?.1.bialgebroid).to_canonical_json()?,
            };
            return Ok((Outcome::Document(text), None));
        }
    };
    let mut doc = doc;
    doc.timings.insert("total".into(), total);
    Ok((Outcome::Report(doc), Some(output.clone())))
}

/// Renders an outcome the way `--format` and `--timings` ask.
pub fn render(outcome: &Outcome, output: Option<&Output>) -> Result<String> {
    match (outcome, output) {
        (Outcome::Document(s), _) => Ok(s.clone()),
        (Outcome::Report(doc), Some(o)) => match (o.format, o.timings) {
            (Format::Json, false) => doc.canonical_json(),
            (Format::Json, true) => doc.json_with_timings(),
            (Format::Text, show_timings) => {
                let mut s = doc.to_text();
                if show_timings {
                    for (k, t) in &doc.timings {
                        s.push_str(&format!("time {k}: {t:.3}s\n"));
                    }
                }
                Ok(s)
            }
        },
        (Outcome::Report(doc), None) => doc.canonical_json(),
    }
}

/// Parses `args`, runs the command and prints the result. Returns the
/// process exit code: 0 when nothing failed, 1 when some check failed,
/// 2 on usage or input errors.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli.command).and_then(|(o, out)| Ok((render(&o, out.as_ref())?, o))) {
        Ok((text, outcome)) => {
            print!("{text}");
            match outcome {
                Outcome::Report(doc) if !doc.passed() => 1,
                _ => 0,
            }
        }
        Err(e) => {
            eprintln!("bgd: {e}");
            2
        }
    }
}
