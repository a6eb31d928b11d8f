//! The `kanforge` command line: file formats, configuration and
//! line-oriented reports over the `kanforge` library.

pub mod error;
pub mod format;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use kanforge::bundles::{
    covering_check, holonomy_subgroup, principal_check, tcp_build, w_truncated, wbar_truncated, FiniteGroup,
    Group, TwistingFunction,
};
use kanforge::chains::{chain_complex_with, cohomology, cohomology_through, cup_product_with, homology, Coeff};
use kanforge::charclass::{characteristic_class, group_cocycle_check, GroupCochain};
use kanforge::homotopy::{fibrant_approx_bounded, kan_report, pi0, pi1_presentation};
use kanforge::simplicial::{product, standard, validate, Cell, SimplicialSet, StandardKind};
use kanforge::smooth::{
    bump_mu, check_degenerating_map, check_extension, check_tame_composite, check_map_f, check_psi2,
    check_retraction, phi, sigma_extension, GridReport, SmoothParams,
};
use kanforge::{BudgetExceeded, Limits};
use num_bigint::BigInt;

use crate::error::CliError;
use crate::format::{AnyTwist, ComplexFile};

#[derive(Debug, Parser)]
#[command(name = "kanforge", version, about = "Finite simplicial sets, bundles and smoothing checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the simplicial identities of a complex file.
    Validate { file: PathBuf },
    /// Integral or mod-N homology.
    Homology {
        file: PathBuf,
        #[arg(long, default_value = "z")]
        coeff: String,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Integral or mod-N cohomology.
    Cohomology {
        file: PathBuf,
        #[arg(long, default_value = "z")]
        coeff: String,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Cup products of cohomology generators in degrees P and Q.
    Cup {
        file: PathBuf,
        #[arg(long, num_args = 2, value_names = ["P", "Q"], required = true)]
        deg: Vec<usize>,
        #[arg(long, default_value = "z")]
        coeff: String,
    },
    /// Edge-path presentation of the fundamental group.
    Pi1 {
        file: PathBuf,
        #[arg(long)]
        basepoint: Option<String>,
    },
    /// Unfillable horns through a dimension.
    Kan {
        file: PathBuf,
        #[arg(long)]
        max_dim: usize,
    },
    /// Attach horn fillers for a bounded number of stages.
    Fibrant {
        file: PathBuf,
        #[arg(long)]
        max_dim: usize,
        #[arg(long)]
        stages: usize,
        /// Write the enlarged complex here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a standard complex as JSON.
    Emit {
        #[command(subcommand)]
        what: Emit,
        /// Write to a file instead of standard output.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    Bundle {
        #[command(subcommand)]
        action: BundleAction,
    },
    Cover {
        #[command(subcommand)]
        action: CoverAction,
    },
    /// Characteristic class of a twisting function.
    Charclass {
        base: PathBuf,
        twist: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Sampled checks of the smoothing maps.
    Smooth {
        which: SmoothCheck,
        #[arg(long, default_value_t = 0.2)]
        eps: f64,
        #[arg(long, default_value_t = 200)]
        grid: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum Emit {
    Delta { p: usize },
    Boundary { p: usize },
    Horn { p: usize, k: usize },
    Circle,
    Cycle { n: usize },
    Torus,
    Klein,
    /// Product of two complex files.
    Product { a: PathBuf, b: PathBuf },
    /// Nerve of a finite group through a dimension.
    Wbar { group: String, max_dim: usize },
    /// Total space of the universal bundle through a dimension.
    W { group: String, max_dim: usize },
}

#[derive(Debug, Subcommand)]
pub enum BundleAction {
    /// Build the twisted cartesian product and check it.
    Check { base: PathBuf, twist: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum CoverAction {
    /// Whether a map is an M-sheeted covering.
    Check {
        map: PathBuf,
        #[arg(long)]
        sheets: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SmoothCheck {
    Mu,
    #[value(name = "F", alias = "f")]
    F,
    R,
    Psi2,
    Tame,
    Extend,
}

/// Standard output text and exit status of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

struct Report {
    lines: Vec<String>,
    ok: bool,
}

impl Report {
    fn new() -> Self {
        Report {
            lines: Vec::new(),
            ok: true,
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn finish(mut self) -> Outcome {
        self.lines.push(if self.ok { "OK" } else { "FAIL" }.into());
        Outcome {
            stdout: self.lines.join("\n") + "\n",
            stderr: String::new(),
            code: if self.ok { 0 } else { 1 },
        }
    }
}

/// Default limits, with `KANFORGE_MAX_DIM` overriding the dimension cap.
pub fn limits_from_env() -> Result<Limits, CliError> {
    let mut l = Limits::default();
    if let Ok(v) = std::env::var("KANFORGE_MAX_DIM") {
        l.max_dim = v
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("KANFORGE_MAX_DIM={v} is not a non-negative integer")))?;
    }
    Ok(l)
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return Outcome {
                stdout: if code == 0 { text.clone() } else { String::new() },
                stderr: if code == 0 { String::new() } else { text },
                code,
            };
        }
    };
    match limits_from_env().and_then(|l| execute(cli.command, &l)) {
        Ok(o) => o,
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        },
    }
}

fn coeff_arg(s: &str) -> Result<Coeff, CliError> {
    format::parse_coeff(s).ok_or_else(|| CliError::Input(format!("--coeff expects z or zN (N ≥ 1), got {s}")))
}

fn load(path: &Path, limits: &Limits) -> Result<(Arc<SimplicialSet>, ComplexFile), CliError> {
    let file = format::parse_complex(path)?;
    let cells: usize = file.presentation.cells.iter().map(Vec::len).sum();
    if cells > limits.max_simplices {
        return Err(BudgetExceeded::new("nondegenerate simplices", cells as u128, limits.max_simplices).into());
    }
    let set = file.presentation.build()?;
    Ok((Arc::new(set), file))
}

fn counts_line(k: &SimplicialSet) -> String {
    let c: Vec<String> = k.counts().iter().map(ToString::to_string).collect();
    format!("cells: {}", c.join(" "))
}

fn dim_cap(d: usize, limits: &Limits) -> Result<(), CliError> {
    if d > limits.max_dim {
        return Err(BudgetExceeded::new("dimension", d as u128, limits.max_dim).into());
    }
    Ok(())
}

fn execute(command: Command, limits: &Limits) -> Result<Outcome, CliError> {
    match command {
        Command::Validate { file } => cmd_validate(&file, limits),
        Command::Homology { file, coeff, max_dim } => cmd_homology(&file, &coeff, max_dim, false, limits),
        Command::Cohomology { file, coeff, max_dim } => cmd_homology(&file, &coeff, max_dim, true, limits),
        Command::Cup { file, deg, coeff } => cmd_cup(&file, deg[0], deg[1], &coeff, limits),
        Command::Pi1 { file, basepoint } => cmd_pi1(&file, basepoint, limits),
        Command::Kan { file, max_dim } => cmd_kan(&file, max_dim, limits),
        Command::Fibrant {
            file,
            max_dim,
            stages,
            out,
        } => cmd_fibrant(&file, max_dim, stages, out, limits),
        Command::Emit { what, out } => cmd_emit(what, out, limits),
        Command::Bundle {
            action: BundleAction::Check { base, twist },
        } => cmd_bundle(&base, &twist, limits),
        Command::Cover {
            action: CoverAction::Check { map, sheets },
        } => {
            let f = format::parse_map(&map)?;
            let r = covering_check(&f, sheets);
            let mut rep = Report::new();
            rep.line(format!("map: {} -> {}", f.source().name(), f.target().name()));
            rep.line(format!("sheets: {sheets}"));
            for d in &r.diagnostics {
                rep.line(d.clone());
            }
            rep.ok = r.ok;
            Ok(rep.finish())
        }
        Command::Charclass { base, twist, cocycle } => cmd_charclass(&base, &twist, &cocycle, limits),
        Command::Smooth { which, eps, grid } => cmd_smooth(which, eps, grid),
    }
}

fn cmd_validate(path: &Path, limits: &Limits) -> Result<Outcome, CliError> {
    let file = format::parse_complex(path)?;
    let cells: usize = file.presentation.cells.iter().map(Vec::len).sum();
    if cells > limits.max_simplices {
        return Err(BudgetExceeded::new("nondegenerate simplices", cells as u128, limits.max_simplices).into());
    }
    let report = validate(&file.presentation);
    let mut rep = Report::new();
    rep.line(format!("name: {}", file.presentation.name));
    if report.is_valid() {
        let k = file.presentation.build()?;
        rep.line(counts_line(&k));
        if let Some(b) = &file.basepoint {
            if k.lookup(b).filter(|c| c.dim == 0).is_none() {
                rep.line(format!("basepoint {b} is not a vertex"));
                rep.ok = false;
            }
        }
    } else {
        for v in &report.violations {
            rep.line(v.to_string());
        }
        rep.ok = false;
    }
    Ok(rep.finish())
}

fn cmd_homology(
    path: &Path,
    coeff: &str,
    max_dim: Option<usize>,
    co: bool,
    limits: &Limits,
) -> Result<Outcome, CliError> {
    let coeff = coeff_arg(coeff)?;
    let (k, _) = load(path, limits)?;
    let top = k.dim().unwrap_or(0);
    let d = max_dim.unwrap_or(top);
    dim_cap(d, limits)?;
    // one extra degree when truncating so that the top group is exact
    let build = if d < top { d + 1 } else { d };
    let c = chain_complex_with::<BigInt>(&k, build, false, limits)?;
    let mut rep = Report::new();
    if co {
        let h = cohomology(&c, coeff)?;
        for n in 0..=d {
            rep.line(format!("H^{n}={}", h.group(n)?));
        }
    } else {
        let h = homology(&c, coeff)?;
        for (n, g) in h.iter().enumerate().take(d + 1) {
            rep.line(format!("H{n}={}", g.group()));
        }
    }
    Ok(rep.finish())
}

fn coords(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn cmd_cup(path: &Path, p: usize, q: usize, coeff: &str, limits: &Limits) -> Result<Outcome, CliError> {
    let coeff = coeff_arg(coeff)?;
    let (k, _) = load(path, limits)?;
    dim_cap(p + q + 1, limits)?;
    let co = cohomology_through::<BigInt>(&k, p + q, coeff, limits)?;
    let mut rep = Report::new();
    for n in [p, q, p + q] {
        rep.line(format!("H^{n}={}", co.group(n)?));
    }
    let (a, b) = (co.generators(p)?, co.generators(q)?);
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let z = cup_product_with(&k, x, y, limits)?;
            rep.line(format!("u{p}_{i} ∪ u{q}_{j} = {}", coords(&z.coords)));
        }
    }
    Ok(rep.finish())
}

fn vertex(k: &SimplicialSet, id: &str) -> Result<Cell, CliError> {
    k.lookup(id)
        .filter(|c| c.dim == 0)
        .ok_or_else(|| CliError::Input(format!("basepoint {id} is not a vertex of {}", k.name())))
}

fn cmd_pi1(path: &Path, basepoint: Option<String>, limits: &Limits) -> Result<Outcome, CliError> {
    let (k, file) = load(path, limits)?;
    if k.num_dims() == 0 {
        return Err(CliError::Input("empty complex has no basepoint".into()));
    }
    let base = match basepoint.or(file.basepoint) {
        Some(b) => vertex(&k, &b)?,
        None => Cell::new(0, 0),
    };
    let p = pi1_presentation(&k, base)?;
    let mut rep = Report::new();
    rep.line(format!("basepoint: {}", k.cell_name(base)));
    rep.line(format!("presentation: {p}"));
    rep.line(format!("simplified: {}", p.simplify()));
    rep.line(format!("abelianization: {}", p.abelianization()));
    rep.line(format!("group: {}", p.recognize()));
    Ok(rep.finish())
}

const WITNESS_LINES: usize = 20;

fn cmd_kan(path: &Path, max_dim: usize, limits: &Limits) -> Result<Outcome, CliError> {
    let (k, _) = load(path, limits)?;
    let r = kan_report(&k, max_dim, limits)?;
    let mut rep = Report::new();
    rep.line(format!("horns checked: {}", r.checked));
    rep.line(format!("unfilled: {}", r.unfilled.len()));
    for h in r.unfilled.iter().take(WITNESS_LINES) {
        rep.line(format!("witness: {}", h.describe(&k)));
    }
    if r.unfilled.len() > WITNESS_LINES {
        rep.line(format!("and {} more", r.unfilled.len() - WITNESS_LINES));
    }
    rep.ok = r.is_kan();
    Ok(rep.finish())
}

fn cmd_fibrant(
    path: &Path,
    max_dim: usize,
    stages: usize,
    out: Option<PathBuf>,
    limits: &Limits,
) -> Result<Outcome, CliError> {
    let (k, _) = load(path, limits)?;
    let f = fibrant_approx_bounded(&k, max_dim, stages, limits)?;
    let mut rep = Report::new();
    rep.line(format!("before: {}", counts_line(&k)));
    for (i, n) in f.attached.iter().enumerate() {
        rep.line(format!("stage {}: attached {n}", i + 1));
    }
    rep.line(format!("after: {}", counts_line(&f.set)));
    rep.line(format!(
        "vertices preserved: {}",
        if f.set.count(0) == k.count(0) { "yes" } else { "no" }
    ));
    rep.line(format!("residual horns: {}", f.residual.len()));
    if let Some(out) = out {
        write_file(&out, &format::complex_to_json(&f.set.to_presentation(), None))?;
        rep.line(format!("wrote {}", out.display()));
    }
    Ok(rep.finish())
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, format!("{text}\n")).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn finite_group_arg(s: &str) -> Result<FiniteGroup, CliError> {
    format::parse_finite_group(s).ok_or_else(|| CliError::Input(format!("unknown finite group {s}")))
}

fn cmd_emit(what: Emit, out: Option<PathBuf>, limits: &Limits) -> Result<Outcome, CliError> {
    let std = |kind| standard(kind).map_err(CliError::from);
    let set: SimplicialSet = match what {
        Emit::Delta { p } => {
            dim_cap(p, limits)?;
            std(StandardKind::Delta { p })?
        }
        Emit::Boundary { p } => {
            dim_cap(p, limits)?;
            std(StandardKind::Boundary { p })?
        }
        Emit::Horn { p, k } => {
            dim_cap(p, limits)?;
            std(StandardKind::Horn { p, k })?
        }
        Emit::Circle => std(StandardKind::Circle)?,
        Emit::Cycle { n } => std(StandardKind::Cycle { n })?,
        Emit::Torus => std(StandardKind::Torus)?,
        Emit::Klein => std(StandardKind::Klein)?,
        Emit::Product { a, b } => {
            let (ka, _) = load(&a, limits)?;
            let (kb, _) = load(&b, limits)?;
            product(&ka, &kb, limits)?.set.as_ref().clone()
        }
        Emit::Wbar { group, max_dim } => wbar_truncated(&finite_group_arg(&group)?, max_dim, limits)?
            .set
            .as_ref()
            .clone(),
        Emit::W { group, max_dim } => w_truncated(&finite_group_arg(&group)?, max_dim, limits)?
            .1
            .total
            .as_ref()
            .clone(),
    };
    let text = format::complex_to_json(&set.to_presentation(), None);
    match out {
        Some(path) => {
            write_file(&path, &text)?;
            let mut rep = Report::new();
            rep.line(format!("wrote {}", path.display()));
            rep.line(counts_line(&set));
            Ok(rep.finish())
        }
        None => Ok(Outcome {
            stdout: text + "\n",
            stderr: String::new(),
            code: 0,
        }),
    }
}

fn cmd_bundle(base: &Path, twist: &Path, limits: &Limits) -> Result<Outcome, CliError> {
    let (k, _) = load(base, limits)?;
    let mut rep = Report::new();
    match format::parse_twist(&k, twist)? {
        AnyTwist::Finite(tau) => {
            let g = tau.group().clone();
            rep.line(format!("group: {} (order {})", g.name(), g.size()));
            let cells = k.total_cells() * g.size();
            if cells > limits.max_simplices {
                return Err(BudgetExceeded::new("total simplices", cells as u128, limits.max_simplices).into());
            }
            let b = tcp_build(&tau)?;
            rep.line(format!("total {}", counts_line(&b.total)));
            let principal = principal_check(&b);
            rep.line(format!("principal: {}", if principal.ok { "yes" } else { "no" }));
            for d in &principal.diagnostics {
                rep.line(format!("  {d}"));
            }
            let cover = covering_check(&b.projection, g.size());
            rep.line(format!(
                "covering: {}",
                if cover.ok { format!("yes ({} sheets)", g.size()) } else { "no".into() }
            ));
            for d in &cover.diagnostics {
                rep.line(format!("  {d}"));
            }
            rep.line(format!("components: {}", pi0(&b.total).count));
            if k.num_dims() > 0 {
                let hol = holonomy_subgroup(&tau, Cell::new(0, 0))?;
                let names: Vec<String> = hol.iter().map(|e| g.format(e)).collect();
                rep.line(format!(
                    "holonomy at {}: {{{}}}",
                    k.cell_name(Cell::new(0, 0)),
                    names.join(", ")
                ));
            }
            rep.ok = principal.ok && cover.ok;
        }
        AnyTwist::Presented(tau) => {
            rep.line(format!("group: {} (infinite)", tau.group().name()));
            rep.line("twisting: cocycle condition holds".to_string());
            let labels: Vec<String> = k
                .cells(1)
                .zip(tau.labels())
                .map(|(e, l)| format!("{}={}", k.cell_name(e), tau.group().format(l)))
                .collect();
            rep.line(format!("labels: {}", labels.join(" ")));
        }
    }
    Ok(rep.finish())
}

fn class_line<G: Group>(
    tau: &TwistingFunction<G>,
    c: &GroupCochain<G>,
    limits: &Limits,
    rep: &mut Report,
) -> Result<(), CliError> {
    let k = c.degree;
    dim_cap(k + 1, limits)?;
    let class = characteristic_class::<G, BigInt>(tau, c, limits)?;
    let co = cohomology_through::<BigInt>(tau.base(), k, c.coeff, limits)?;
    let state = if class.is_zero() { "zero" } else { "nonzero" };
    rep.line(format!("H^{k} class: {state} ({})", co.group(k)?));
    Ok(())
}

fn cmd_charclass(base: &Path, twist: &Path, cocycle: &Path, limits: &Limits) -> Result<Outcome, CliError> {
    let (k, _) = load(base, limits)?;
    let tau = format::parse_twist(&k, twist)?;
    let cf = format::parse_cocycle(cocycle)?;
    let mut rep = Report::new();
    match tau {
        AnyTwist::Finite(tau) => {
            let c = format::finite_cochain(&cf, tau.group())?;
            if !group_cocycle_check(&c)? {
                rep.line(format!("cochain is not a cocycle on {}", tau.group().name()));
                rep.ok = false;
                return Ok(rep.finish());
            }
            class_line(&tau, &c, limits, &mut rep)?;
        }
        AnyTwist::Presented(tau) => {
            let c = format::presented_cochain(&cf, tau.group())?;
            class_line(&tau, &c, limits, &mut rep)?;
        }
    }
    Ok(rep.finish())
}

fn test_path(u: [f64; 2]) -> Vec<f64> {
    vec![u[1], u[1] * u[1], (3.0 * u[0]).sin()]
}

fn test_map(x: [f64; 3]) -> Vec<f64> {
    vec![x[0] + 2.0 * x[2], x[1] * x[2], (x[0] - x[1]).cos()]
}

fn window_reports(name: &str, f: impl Fn(f64) -> f64, window: (f64, f64), rising: bool, n: usize) -> Vec<GridReport<f64>> {
    let ts: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
    let vs: Vec<f64> = ts.iter().map(|&t| f(t)).collect();
    let (lo, hi) = if rising { (0.0, 1.0) } else { (1.0, 0.0) };
    let mono = vs
        .windows(2)
        .map(|w| if rising { w[0] - w[1] } else { w[1] - w[0] }.max(0.0))
        .fold(0.0, f64::max);
    let flat = ts
        .iter()
        .zip(&vs)
        .map(|(&t, &v)| {
            if t <= window.0 {
                (v - lo).abs()
            } else if t >= window.1 {
                (v - hi).abs()
            } else {
                0.0
            }
        })
        .fold(0.0, f64::max);
    let range = vs
        .iter()
        .map(|&v| (-v).max(v - 1.0).max(0.0))
        .fold(0.0, f64::max);
    let report = |what: &str, e: f64| GridReport {
        name: format!("{name} {what}"),
        samples: n + 1,
        max_error: e,
        tolerance: 0.0,
        worst: None,
    };
    vec![
        report("monotone", mono),
        report("constant outside its window", flat),
        report("values in [0, 1]", range),
    ]
}

fn cmd_smooth(which: SmoothCheck, eps: f64, grid: usize) -> Result<Outcome, CliError> {
    let p = SmoothParams {
        eps0: eps,
        grid,
        ..SmoothParams::default()
    };
    p.validate()?;
    let reports: Vec<GridReport<f64>> = match which {
        SmoothCheck::Mu => {
            let n = grid * grid;
            let mut r = window_reports("μ", |t| bump_mu(t, p.mu_window), p.mu_window, true, n);
            r.extend(window_reports("φ", |t| phi(0.5 * t, p.phi_window), (2.0 * p.phi_window.0, 2.0 * p.phi_window.1), false, n));
            r
        }
        SmoothCheck::F => check_map_f(&p)?,
        SmoothCheck::R => check_retraction(&p)?,
        SmoothCheck::Psi2 => check_psi2(&p)?,
        SmoothCheck::Tame => {
            let tag = |prefix: &str, mut r: GridReport<f64>| {
                r.name = format!("{prefix}: {}", r.name);
                r
            };
            let mut r: Vec<_> = check_tame_composite(&p, test_path)?
                .into_iter()
                .map(|r| tag("σ∘s¹∘F", r))
                .collect();
            r.extend(check_degenerating_map(grid, test_path).into_iter().map(|r| tag("σ∘s", r)));
            r
        }
        SmoothCheck::Extend => check_extension(&sigma_extension(test_map, p)?),
    };
    let mut rep = Report::new();
    rep.line(format!("ε₀ = {eps}, grid {grid}"));
    for r in &reports {
        rep.line(r.to_string());
    }
    rep.ok = reports.iter().all(GridReport::passed);
    Ok(rep.finish())
}
