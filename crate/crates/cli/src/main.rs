mod files;
mod manifest;
mod repro;

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use vortexlab::census::{self, BundleKind, BundleSpec, ClassFlag, ModuliDescription};
use vortexlab::dolbeault::{h0, CohomologyReport, DolbeaultProblem, DEFAULT_RANK_TOL};
use vortexlab::elliptic::GENERIC_CLASS;
use vortexlab::kazdan_warner::{solve_kw, CaseTag, KwOperator, KwProblem};
use vortexlab::limiting::{
    default_radii, t_sweep, vanishing_exponent, DEFAULT_BALL_RADIUS, DEFAULT_MASK_SPACINGS,
};
use vortexlab::torus::make_grid;
use vortexlab::vortex::{hk_solve, HolomorphicTriple};
use vortexlab::Error;

use files::{read_json, to_json_bytes, ProblemFile, RealField, TripleFile};
use manifest::Recorder;

const DEFAULT_SEED: u64 = 20_240_611;

#[derive(Debug)]
pub enum Failure {
    /// Bad arguments, unreadable input, or data outside a routine's domain.
    Usage(String),
    /// A solver or check did not deliver.
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Stalled { .. }
            | Error::UnreliableRank { .. }
            | Error::NonQuantizedFlux { .. }
            | Error::TableMismatch(_)
            | Error::InsufficientResolution(_) => Failure::Numerical(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "vortexlab", version, about = "Vortex equations on the flat torus")]
struct Cli {
    /// Write field data as base64 blob envelopes instead of plain arrays.
    #[arg(long, global = true)]
    binary: bool,
    /// Where to write the run manifest (default: next to --out).
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Kazdan-Warner equation Δf + P e^{2f} − Q e^{−2f} = w.
    Kw {
        #[command(subcommand)]
        cmd: KwCmd,
    },
    /// Holomorphic triples and the Hitchin-Kobayashi solve.
    Vortex {
        #[command(subcommand)]
        cmd: VortexCmd,
    },
    /// Lattice Dolbeault cohomology.
    Dolbeault {
        #[command(subcommand)]
        cmd: DolbeaultCmd,
    },
    /// Symbolic moduli census.
    Census(CensusArgs),
    /// Limiting configurations as t → 0.
    Limit {
        #[command(subcommand)]
        cmd: LimitCmd,
    },
    /// Rerun a reproduction check, or all of them.
    Repro {
        #[arg(value_enum)]
        check: ReproTarget,
        /// Summary JSON path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum KwCmd {
    /// Solve a problem file.
    Solve {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the manufactured problem with known solution 0.3cos(2πx)cos(2πy).
    Manufactured {
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VortexCmd {
    /// Build a theta-function triple; with no β zeros, framed data instead.
    Triple {
        #[arg(long, default_value_t = 64)]
        n: usize,
        /// Zeros of α as "x,y;x,y;...".
        #[arg(long)]
        alpha_zeros: String,
        #[arg(long)]
        beta_zeros: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the vortex equations in the complex gauge orbit of a triple.
    Hk {
        #[arg(long)]
        triple: PathBuf,
        #[arg(long)]
        tau: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum DolbeaultCmd {
    /// h⁰ and h¹ of a degree-D line bundle with Jacobian class "x,y".
    H0 {
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        #[arg(long)]
        class: Option<String>,
        #[arg(long, default_value_t = 32)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_RANK_TOL)]
        rank_tol: f64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Split,
    #[value(name = "atiyah_E0")]
    AtiyahE0,
    #[value(name = "stable_generic")]
    StableGeneric,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Generic,
    #[value(name = "two_torsion")]
    TwoTorsion,
    Trivial,
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct CensusArgs {
    #[command(subcommand)]
    table: Option<CensusCmd>,
    #[arg(long)]
    genus: Option<u32>,
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    /// Splitting degree for --kind split.
    #[arg(long, default_value_t = 0)]
    k: i64,
    #[arg(long, value_enum, default_value = "generic")]
    class: ClassArg,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<i64>,
    /// Sign of d − τ.
    #[arg(long, allow_hyphen_values = true, default_value_t = -1)]
    sign: i8,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CensusCmd {
    /// The full g ∈ {1, 2}, |d| ≤ 4 table as CSV.
    Table {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum LimitCmd {
    /// Solve at each t and record the flux captured near every zero.
    Sweep {
        #[arg(long, default_value_t = 1)]
        m: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        d: i64,
        /// Comma-separated, strictly descending.
        #[arg(long, default_value = "1,0.5,0.25,0.125")]
        t: String,
        #[arg(long, default_value_t = 128)]
        n: usize,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        tau: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_BALL_RADIUS)]
        ball_radius: f64,
        /// Override the default zero placement ("x,y;x,y;...").
        #[arg(long)]
        alpha_zeros: Option<String>,
        #[arg(long)]
        beta_zeros: Option<String>,
        /// Worker threads for the t points.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Discriminants are the check ids.
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReproTarget {
    All,
    CensusTable,
    CensusLaws,
    KwManufactured,
    Flux,
    RiemannRoch,
    HitchinKobayashi,
    Limit,
    Moments,
    Fueter,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(m)) => {
            eprintln!("failed: {m}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    let binary = cli.binary;
    let mpath = cli.manifest;
    match cli.cmd {
        Cmd::Kw { cmd } => match cmd {
            KwCmd::Solve { problem, tol, out } => kw_solve(&problem, tol, out.as_deref(), binary, mpath),
            KwCmd::Manufactured { n, out } => kw_manufactured(n, out.as_deref(), binary, mpath),
        },
        Cmd::Vortex { cmd } => match cmd {
            VortexCmd::Triple { n, alpha_zeros, beta_zeros, out } => {
                vortex_triple(n, &alpha_zeros, beta_zeros.as_deref(), out.as_deref(), binary, mpath)
            }
            VortexCmd::Hk { triple, tau, tol, out } => vortex_hk(&triple, tau, tol, out.as_deref(), binary, mpath),
        },
        Cmd::Dolbeault { cmd } => match cmd {
            DolbeaultCmd::H0 { degree, class, n, rank_tol, json, out } => {
                dolbeault_h0(degree, class.as_deref(), n, rank_tol, json, out.as_deref(), mpath)
            }
        },
        Cmd::Census(args) => census_cmd(args, mpath),
        Cmd::Limit { cmd } => match cmd {
            LimitCmd::Sweep { m, d, t, n, tau, tol, ball_radius, alpha_zeros, beta_zeros, jobs, out } => {
                let sw = SweepArgs { m, d, t, n, tau, tol, ball_radius, alpha_zeros, beta_zeros, jobs };
                limit_sweep(sw, out.as_deref(), mpath)
            }
        },
        Cmd::Repro { check, out } => repro_cmd(check, out.as_deref(), mpath),
    }
}

fn seed() -> Result<u64, Failure> {
    match std::env::var("VORTEXLAB_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| Failure::Usage(format!("VORTEXLAB_SEED={s} is not an integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn parse_pair(s: &str) -> Result<[f64; 2], Failure> {
    let bad = || Failure::Usage(format!("expected \"x,y\", got {s:?}"));
    let mut it = s.split(',').map(|p| p.trim().parse::<f64>());
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(x)), Some(Ok(y)), None) if x.is_finite() && y.is_finite() => Ok([x, y]),
        _ => Err(bad()),
    }
}

fn parse_points(s: &str) -> Result<Vec<[f64; 2]>, Failure> {
    s.split(';').filter(|p| !p.trim().is_empty()).map(parse_pair).collect()
}

fn kw_solve(path: &Path, tol: f64, out: Option<&Path>, binary: bool, mpath: Option<PathBuf>) -> Result<(), Failure> {
    #[derive(Serialize)]
    struct SolutionFile {
        n: usize,
        case: CaseTag,
        operator: KwOperator,
        tol: f64,
        f: RealField,
        residual_linf: f64,
        newton_iters: usize,
        damping_events: usize,
        shift: f64,
    }
    let mut rec = Recorder::new("kw solve", mpath, out);
    let pf: ProblemFile = read_json(path)?;
    let grid = make_grid(pf.n)?;
    let (p, q, w) = (pf.p.decode(&grid, "p")?, pf.q.decode(&grid, "q")?, pf.w.decode(&grid, "w")?);
    let pr = match pf.case {
        Some(c) => KwProblem::new(&grid, p, q, w, c)?,
        None => KwProblem::auto(&grid, p, q, w)?,
    }
    .with_operator(pf.operator);
    let s = solve_kw(&pr, tol)?;
    rec.param("problem", path.display().to_string());
    rec.manifest.grid_size = Some(pf.n);
    rec.tol("newton", tol);
    rec.tag(&["f", "residual_linf", "newton_iters", "damping_events", "shift"], "computed");
    let body = SolutionFile {
        n: pf.n,
        case: pr.case(),
        operator: pr.operator(),
        tol,
        f: RealField::encode(&grid, &s.f, binary),
        residual_linf: s.residual_linf,
        newton_iters: s.newton_iters,
        damping_events: s.damping_events,
        shift: s.shift,
    };
    rec.emit(out, &to_json_bytes(&body))?;
    rec.finish()
}

fn kw_manufactured(n: usize, out: Option<&Path>, binary: bool, mpath: Option<PathBuf>) -> Result<(), Failure> {
    let mut rec = Recorder::new("kw manufactured", mpath, out);
    let grid = make_grid(n)?;
    let (mut p, mut w) = (Vec::new(), Vec::new());
    let q = vec![0.5; grid.sites()];
    for k in 0..grid.sites() {
        let (x, y) = grid.coords(k);
        let f = 0.3 * (2.0 * PI * x).cos() * (2.0 * PI * y).cos();
        let pk = 1.0 + 0.5 * (2.0 * PI * x).sin();
        w.push(8.0 * PI * PI * f + pk * (2.0 * f).exp() - 0.5 * (-2.0 * f).exp());
        p.push(pk);
    }
    let body = ProblemFile {
        n,
        case: Some(CaseTag::Lemma),
        operator: KwOperator::Spectral,
        p: RealField::encode(&grid, &p, binary),
        q: RealField::encode(&grid, &q, binary),
        w: RealField::encode(&grid, &w, binary),
    };
    rec.manifest.grid_size = Some(n);
    rec.tag(&["p", "q", "w"], "computed");
    rec.emit(out, &to_json_bytes(&body))?;
    rec.finish()
}

fn vortex_triple(
    n: usize,
    alpha: &str,
    beta: Option<&str>,
    out: Option<&Path>,
    binary: bool,
    mpath: Option<PathBuf>,
) -> Result<(), Failure> {
    let mut rec = Recorder::new("vortex triple", mpath, out);
    let grid = make_grid(n)?;
    let az = parse_points(alpha)?;
    let t = match beta {
        Some(b) => HolomorphicTriple::theta(&grid, az.clone(), parse_points(b)?)?,
        None => HolomorphicTriple::framed(&grid, az.clone())?,
    };
    rec.param("alpha_zeros", &az);
    rec.param("beta_zeros", beta.map(parse_points).transpose()?);
    rec.manifest.grid_size = Some(n);
    rec.tag(&["conn", "background", "alpha", "beta"], "computed");
    rec.emit(out, &to_json_bytes(&TripleFile::encode(&t, binary)))?;
    rec.finish()
}

fn vortex_hk(path: &Path, tau: f64, tol: f64, out: Option<&Path>, binary: bool, mpath: Option<PathBuf>) -> Result<(), Failure> {
    #[derive(Serialize)]
    struct StateFile {
        tau: f64,
        tolerance: f64,
        residuals: [f64; 4],
        floor: [f64; 4],
        within_contract: bool,
        degree_defect: f64,
        kw_iters: usize,
        kw_residual: f64,
        gauge: RealField,
        triple: TripleFile,
    }
    let mut rec = Recorder::new("vortex hk", mpath, out);
    let tf: TripleFile = read_json(path)?;
    let grid = make_grid(tf.n)?;
    let triple = tf.decode(&grid)?;
    let s = hk_solve(&grid, &triple, tau, tol)?;
    rec.param("triple", path.display().to_string());
    rec.param("tau", tau);
    rec.manifest.grid_size = Some(tf.n);
    rec.tol("residual", tol);
    rec.tag(&["residuals", "floor", "degree_defect", "kw_iters", "kw_residual", "gauge", "triple"], "computed");
    let body = StateFile {
        tau,
        tolerance: s.tolerance,
        residuals: s.residuals,
        floor: s.floor,
        within_contract: s.within_contract(),
        degree_defect: s.degree_defect,
        kw_iters: s.kw_iters,
        kw_residual: s.kw_residual,
        gauge: RealField::encode(&grid, &s.gauge, binary),
        triple: TripleFile::encode(&s.triple, binary),
    };
    rec.emit(out, &to_json_bytes(&body))?;
    rec.finish()?;
    if !s.within_contract() {
        return Err(Failure::Numerical(format!("residuals {:?} exceed max(tol, floor {:?})", s.residuals, s.floor)));
    }
    Ok(())
}

fn dolbeault_h0(
    degree: i64,
    class: Option<&str>,
    n: usize,
    rank_tol: f64,
    json: bool,
    out: Option<&Path>,
    mpath: Option<PathBuf>,
) -> Result<(), Failure> {
    let mut rec = Recorder::new("dolbeault h0", mpath, out);
    let class = class.map(parse_pair).transpose()?.unwrap_or(GENERIC_CLASS);
    let grid = make_grid(n)?;
    let r: CohomologyReport = h0(&DolbeaultProblem::single(&grid, degree, class)?, rank_tol)?;
    rec.param("degree", degree);
    rec.param("class", class);
    rec.manifest.grid_size = Some(n);
    rec.tol("rank", rank_tol);
    rec.tag(&["h0", "h1", "singular_values", "gap_ratio"], "computed");
    let bytes = if json {
        to_json_bytes(&r)
    } else {
        format!("h0 = {}\nh1 = {}\ngap ratio = {:.3e}\n", r.h0, r.h1, r.gap_ratio).into_bytes()
    };
    rec.emit(out, &bytes)?;
    rec.finish()
}

fn census_cmd(args: CensusArgs, mpath: Option<PathBuf>) -> Result<(), Failure> {
    if let Some(CensusCmd::Table { out }) = args.table {
        let mut rec = Recorder::new("census table", mpath, out.as_deref());
        rec.tag(&["computed rows"], "computed");
        rec.tag(&["paper-transcribed rows"], "paper-transcribed");
        rec.param("per_row_provenance_column", "provenance");
        rec.emit(out.as_deref(), census::theorem_table_csv()?.as_bytes())?;
        return rec.finish();
    }
    let missing = |f: &str| Failure::Usage(format!("census needs --{f} (or the `table` subcommand)"));
    let genus = args.genus.ok_or_else(|| missing("genus"))?;
    let d = args.d.ok_or_else(|| missing("d"))?;
    let kind = match args.kind.ok_or_else(|| missing("kind"))? {
        KindArg::Split => BundleKind::Split {
            k: args.k,
            class: match args.class {
                ClassArg::Generic => ClassFlag::Generic,
                ClassArg::TwoTorsion => ClassFlag::TwoTorsion,
                ClassArg::Trivial => ClassFlag::Trivial,
            },
        },
        KindArg::AtiyahE0 => BundleKind::AtiyahE0,
        KindArg::StableGeneric => BundleKind::StableGeneric,
    };
    let spec = BundleSpec { genus, kind, d, sign: args.sign };
    let desc = census::classify(&spec)?;
    let mut rec = Recorder::new("census", mpath, args.out.as_deref());
    rec.param("spec", spec);
    let tag = desc.provenance.to_string();
    rec.tag(&["status", "dim_c", "euler", "sw", "compact", "fueter_present"], &tag);
    let bytes = match args.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Record<'a> {
                spec: &'a BundleSpec,
                description: &'a ModuliDescription,
            }
            to_json_bytes(&Record { spec: &spec, description: &desc })
        }
        Format::Csv => format!("{}\n{}\n", census::CSV_HEADER, census::csv_line(None, &spec, &desc)).into_bytes(),
    };
    rec.emit(args.out.as_deref(), &bytes)?;
    rec.finish()
}

struct SweepArgs {
    m: i64,
    d: i64,
    t: String,
    n: usize,
    tau: f64,
    tol: f64,
    ball_radius: f64,
    alpha_zeros: Option<String>,
    beta_zeros: Option<String>,
    jobs: Option<usize>,
}

/// N = 2m points spread along a diagonal, α's zeros first.
fn default_zeros(m: i64, d: i64) -> Result<(Vec<[f64; 2]>, Vec<[f64; 2]>), Failure> {
    if m < 1 || d.abs() >= m {
        return Err(Failure::Usage("default zero placement needs m ≥ 1 and |d| < m".into()));
    }
    let total = 2 * m;
    let pts: Vec<[f64; 2]> = (0..total)
        .map(|k| {
            let x = (0.3 + 0.8 * k as f64 / total as f64).fract();
            [x, (x + 0.1).fract()]
        })
        .collect();
    let na = (m + d) as usize;
    Ok((pts[..na].to_vec(), pts[na..].to_vec()))
}

fn limit_sweep(a: SweepArgs, out: Option<&Path>, mpath: Option<PathBuf>) -> Result<(), Failure> {
    let mut rec = Recorder::new("limit sweep", mpath, out);
    let ts: Vec<f64> = a
        .t
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| Failure::Usage(format!("bad t value {s:?}"))))
        .collect::<Result<_, _>>()?;
    let (az, bz) = match (&a.alpha_zeros, &a.beta_zeros) {
        (Some(x), Some(y)) => (parse_points(x)?, parse_points(y)?),
        (None, None) => default_zeros(a.m, a.d)?,
        _ => return Err(Failure::Usage("give both --alpha-zeros and --beta-zeros or neither".into())),
    };
    let grid = make_grid(a.n)?;
    let triple = HolomorphicTriple::theta(&grid, az.clone(), bz.clone())?;
    if (a.alpha_zeros.is_none()) && (triple.m, triple.d) != (a.m, a.d) {
        return Err(Failure::Usage(format!("built m = {}, d = {}", triple.m, triple.d)));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let (state, recs) = pool.install(|| t_sweep(&grid, &triple, &ts, a.tau, a.ball_radius, a.tol))?;
    let modulus = state.modulus();
    let radii = default_radii(DEFAULT_MASK_SPACINGS * grid.spacing());
    let exponents: Vec<Option<f64>> = state
        .zero_points
        .iter()
        .map(|z| vanishing_exponent(&grid, &modulus, z.position, &radii).ok())
        .collect();

    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Failure::Usage(e.to_string());
    w.write_record(["t", "zero_id", "x", "y", "q", "flux", "exponent", "kw_iters", "residual"]).map_err(csv_err)?;
    let num = |x: f64| format!("{x:?}");
    let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
    let mut stalled = Vec::new();
    for r in &recs {
        if r.stalled {
            stalled.push(r.t);
        }
        for (id, z) in state.zero_points.iter().enumerate() {
            let flux = r.zeros.get(id).map(|zf| zf.flux);
            let (iters, res) = match &r.f_t {
                Some(s) => (s.newton_iters.to_string(), num(s.residual_linf)),
                None => (String::new(), String::new()),
            };
            w.write_record([
                num(r.t),
                id.to_string(),
                num(z.position[0]),
                num(z.position[1]),
                z.weight.to_string(),
                opt(flux),
                opt(exponents[id]),
                iters,
                res,
            ])
            .map_err(csv_err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
    rec.param("m", triple.m);
    rec.param("d", triple.d);
    rec.param("t", &ts);
    rec.param("tau", a.tau);
    rec.param("ball_radius", a.ball_radius);
    rec.param("alpha_zeros", &az);
    rec.param("beta_zeros", &bz);
    rec.param("jobs", a.jobs);
    rec.param("stalled_t", &stalled);
    rec.manifest.grid_size = Some(a.n);
    rec.tol("kw", a.tol);
    rec.tag(&["t", "zero_id", "x", "y", "q", "flux", "exponent", "kw_iters", "residual"], "computed");
    rec.emit(out, &bytes)?;
    rec.finish()
}

fn repro_cmd(target: ReproTarget, out: Option<&Path>, mpath: Option<PathBuf>) -> Result<(), Failure> {
    #[derive(Serialize)]
    struct Summary {
        seed: u64,
        passed: usize,
        total: usize,
        checks: Vec<repro::CheckRecord>,
    }
    let seed = seed()?;
    let ids: Vec<u8> = match target {
        ReproTarget::All => (1..=9).collect(),
        t => vec![t as u8],
    };
    let mut rec = Recorder::new("repro", mpath, out);
    rec.manifest.seed = Some(seed);
    let mut checks = Vec::new();
    for id in ids {
        let c = repro::run(id, seed);
        println!(
            "{} {} {} [{:.2}s] {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            c.seconds,
            c.detail
        );
        checks.push(c);
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
    let total = checks.len();
    rec.param("checks", checks.iter().map(|c| c.name).collect::<Vec<_>>());
    rec.tag(&["checks"], "computed");
    if let Some(p) = out {
        // Timings vary run to run; they are part of the summary, not the
        // manifest, because the summary is a report rather than data.
        rec.emit(Some(p), &to_json_bytes(&Summary { seed, passed, total, checks }))?;
    }
    println!("{passed}/{total} checks passed");
    rec.finish()?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Numerical(format!("failing checks: {}", failed.join(", "))))
    }
}
