//! `rigidity`: command-line front end for rigidity-core.
//!
//! Every command takes its framework either as a JSON file (motif or finite
//! framework format) or as a built-in catalog name. Output is deterministic for
//! fixed flags; floating values carry 17 significant digits.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rigidity_core::deform::{flow_periodic_deform, DeformError, TrapeziumStrip};
use rigidity_core::framework::catalog::{self, CatalogEntry};
use rigidity_core::framework::io::{entry_from_json, entry_to_json};
use rigidity_core::linalg::{analyze, cokernel};
use rigidity_core::sparsity::{self, pebble_game};
use rigidity_core::symbol::{
    build_symbol, inversion_phase_analysis, rum_scan_tol, square_summable_verdict, verify_wave_flex, wave_flex_tol,
};
use rigidity_core::{Error, FiniteFramework, Motif};

#[derive(Parser)]
#[command(name = "rigidity", version, about = "Rigidity operators, symbols and deformations of bar-joint frameworks")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for generated catalog entries (quadgrid).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Relative rank tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for parallel evaluation (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog entries, or print one as JSON.
    Catalog {
        name: Option<String>,
        /// Write the entry's JSON to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Print the symbol matrix, or its value at a phase.
    Symbol {
        source: String,
        #[arg(long, value_delimiter = ',')]
        phase: Option<Vec<f64>>,
    },
    /// Normalized determinant of a square symbol.
    Det {
        source: String,
        /// Print the determinant before normalization as well.
        #[arg(long)]
        raw: bool,
    },
    /// Mode multiplicities on the grid s = k/N as CSV.
    Rumscan {
        source: String,
        #[arg(long, default_value_t = 8)]
        grid: usize,
    },
    /// Wave flexes at one phase, each checked on a finite patch.
    Wavemode {
        source: String,
        #[arg(long, value_delimiter = ',', required = true)]
        phase: Vec<f64>,
        #[arg(long, default_value_t = 3)]
        patch: usize,
    },
    /// Square-summable verdict and inversion structure of a motif.
    Flexcheck { source: String },
    /// (k, l) pebble game on a graph or on a motif's quotient multigraph.
    Pebble {
        source: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        l: usize,
    },
    /// Maxwell degree-of-freedom count.
    Maxwell { source: String },
    /// Periodic counting conditions for a planar motif.
    Ross { source: String },
    /// Flow-periodic deformation of a planar motif as CSV.
    Deform {
        source: String,
        #[arg(long, default_value_t = 0.2)]
        tmax: f64,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        /// Vertex held fixed.
        #[arg(long, default_value_t = 0)]
        pin: usize,
    },
    /// Trapezium strip angle transmission and locking.
    Strip {
        #[arg(long, default_value_t = 2.0)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        #[arg(long, default_value_t = 1.0)]
        spacing: f64,
        #[arg(long, default_value_t = 2)]
        cells: usize,
        /// Tilt of the first bar; prints the angles of all bars.
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
        /// Print the first critical angle and the locking angle.
        #[arg(long)]
        lock: bool,
        /// With --lock: iterate the inverse transmission from this angle.
        #[arg(long)]
        orbit: Option<f64>,
    },
    /// Rank, flexes and stresses of a finite framework (or a motif patch).
    Finite {
        source: String,
        /// For motifs: patch radius.
        #[arg(long, default_value_t = 1)]
        patch: usize,
    },
}

/// A one-line diagnostic; the exit code is 1.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

macro_rules! from_module_error {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure(Error::from(e).to_string())
            }
        }
    )*};
}
from_module_error!(
    rigidity_core::FrameworkError,
    rigidity_core::laurent::LaurentError,
    rigidity_core::symbol::SymbolError,
    rigidity_core::sparsity::SparsityError,
    DeformError
);

fn usage(msg: impl Into<String>) -> Failure {
    Failure(format!("usage: {}", msg.into()))
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn complex(c: Complex64) -> String {
    format!("{:.16e}{:+.16e}i", c.re, c.im)
}

fn load(source: &str, seed: u64) -> Result<CatalogEntry, Failure> {
    let path = Path::new(source);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| Failure(format!("io: cannot read {source}: {e}")))?;
        return Ok(entry_from_json(&text)?);
    }
    if source.ends_with(".json") {
        return Err(Failure(format!("io: file not found: {source}")));
    }
    Ok(catalog::catalog(source, Some(seed))?)
}

fn load_motif(source: &str, seed: u64) -> Result<Motif, Failure> {
    Ok(load(source, seed)?.into_motif(source)?)
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure(format!("io: cannot write {}: {e}", path.display()))),
        None => {
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure(format!("io: {e}"))),
                _ => Ok(()),
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let g = &cli.global;
    if !(g.tol > 0.0 && g.tol < 1.0) {
        return Err(usage(format!("--tol must lie in (0, 1), got {}", g.tol)));
    }
    if let Some(n) = g.threads {
        if n == 0 {
            return Err(usage("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure(format!("threads: {e}")))?;
    }
    let mut out = String::new();
    match &cli.command {
        Command::Catalog { name: None, .. } => {
            for name in catalog::names() {
                let kind = if catalog::motif_names().contains(&name) { "motif" } else { "framework" };
                let _ = writeln!(out, "{name}\t{kind}");
            }
        }
        Command::Catalog { name: Some(name), emit: target } => {
            let json = entry_to_json(&catalog::catalog(name, Some(g.seed))?) + "\n";
            match target {
                Some(path) => fs::write(path, &json).map_err(|e| Failure(format!("io: cannot write {}: {e}", path.display())))?,
                None => out = json,
            }
        }
        Command::Symbol { source, phase } => {
            let sf = build_symbol(&load_motif(source, g.seed)?)?;
            match phase {
                None => out = format!("{}\n", sf.matrix()),
                Some(s) => {
                    let m = sf.evaluate(s)?;
                    let _ = writeln!(out, "symbol {}x{} at s=({})", m.nrows(), m.ncols(), s.iter().map(|x| num(*x)).collect::<Vec<_>>().join(","));
                    for r in 0..m.nrows() {
                        let row: Vec<String> = (0..m.ncols()).map(|c| complex(m[(r, c)])).collect();
                        let _ = writeln!(out, "{}", row.join(" "));
                    }
                }
            }
        }
        Command::Det { source, raw } => {
            let sf = build_symbol(&load_motif(source, g.seed)?)?;
            let det = sf.determinant()?;
            if det.is_zero() {
                out.push_str("det: identically zero\n");
            } else {
                let _ = writeln!(out, "det (normalized): {}", det.normalize()?);
                if *raw {
                    let _ = writeln!(out, "det: {det}");
                }
            }
        }
        Command::Rumscan { source, grid } => {
            let sf = build_symbol(&load_motif(source, g.seed)?)?;
            out = rum_scan_tol(&sf, *grid, g.tol)?.to_csv();
        }
        Command::Wavemode { source, phase, patch } => {
            let m = load_motif(source, g.seed)?;
            let sf = build_symbol(&m)?;
            let info = sf.mode_multiplicity_tol(phase, g.tol)?;
            let _ = writeln!(out, "mu {}", info.mu);
            let _ = writeln!(out, "sigma_min {}", num(info.sigma_min));
            for (k, wf) in wave_flex_tol(&sf, phase, g.tol)?.iter().enumerate() {
                let residual = verify_wave_flex(wf, &m, *patch)?;
                let _ = writeln!(out, "flex {k} patch_residual {}", num(residual));
                let entries: Vec<String> = wf.motif_vector.iter().map(|c| complex(*c)).collect();
                let _ = writeln!(out, "  {}", entries.join(" "));
            }
        }
        Command::Flexcheck { source } => {
            let sf = build_symbol(&load_motif(source, g.seed)?)?;
            let _ = writeln!(out, "symbol {}x{}", sf.rows(), sf.cols());
            let _ = writeln!(out, "verdict {}", square_summable_verdict(&sf)?);
            if sf.is_square() && !sf.matrix().det_is_zero()? {
                let r = inversion_phase_analysis(&sf)?;
                let p: Vec<String> = r.p.iter().map(i32::to_string).collect();
                let _ = writeln!(out, "inversion tau {} p ({}) residual {} certified {}", r.tau, p.join(","), num(r.residual), r.certified());
            }
        }
        Command::Pebble { source, k, l } => {
            let (n, edges) = match load(source, g.seed)? {
                CatalogEntry::Framework(fw) => (fw.vertex_count(), fw.graph().edges().to_vec()),
                CatalogEntry::Motif(m) => (m.vertex_count(), m.quotient_edges()),
            };
            let r = pebble_game(n, &edges, *k, *l)?;
            let list = |v: &[usize]| format!("{{{}}}", v.iter().map(usize::to_string).collect::<Vec<_>>().join(","));
            let _ = writeln!(out, "{}", r.verdict);
            let _ = writeln!(out, "independent {}", list(&r.accepted));
            let _ = writeln!(out, "rejected {}", list(&r.rejected));
            for c in &r.components {
                let _ = writeln!(out, "tight component vertices {} edges {}", list(&c.vertices), list(&c.edges));
            }
        }
        Command::Maxwell { source } => {
            let r = match load(source, g.seed)? {
                CatalogEntry::Framework(fw) => sparsity::maxwell_report_finite(&fw),
                CatalogEntry::Motif(m) => sparsity::maxwell_report_motif(&m),
            };
            let formula = if r.periodic { "d|F_v| - |F_e|" } else { "d|V| - |E| - d(d+1)/2" };
            let _ = writeln!(out, "vertices {} edges {} dimension {}", r.vertices, r.edges, r.dimension);
            let _ = writeln!(out, "balance {} ({formula})", r.balance);
            let _ = writeln!(out, "{}", r.verdict);
        }
        Command::Ross { source } => {
            let r = sparsity::ross_check(&load_motif(source, g.seed)?)?;
            let _ = writeln!(out, "balance {} (2|F_v| - |F_e|, need 2): {}", r.balance, r.global_equality);
            let _ = writeln!(out, "(2,2) game on quotient: {} ({} rejected)", r.pebble.verdict, r.pebble.rejected.len());
            let _ = writeln!(out, "counting conditions hold: {}", r.counting_holds);
            for c in &r.components {
                let _ = writeln!(out, "tight component {:?}: nonzero gain {}", c.component.vertices, c.nonzero_gain);
            }
            let _ = writeln!(out, "gain check partial: {}", r.gains_partial);
        }
        Command::Deform { source, tmax, steps, pin } => {
            let m = load_motif(source, g.seed)?;
            match flow_periodic_deform(&m, *tmax, *steps, *pin) {
                Ok(path) => out = path.to_csv(),
                Err(DeformError::ContinuationStalled { last_t, path }) => {
                    emit(&path.to_csv(), &g.out)?;
                    return Err(Failure(format!("deform: Newton continuation stalled after t = {last_t}; CSV holds the accepted steps")));
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Strip { a, b, spacing, cells, alpha, lock, orbit } => {
            let strip = TrapeziumStrip::new(*a, *b, *spacing, *cells)?;
            if alpha.is_none() && !lock {
                return Err(usage("strip needs --alpha X and/or --lock"));
            }
            if orbit.is_some() && !lock {
                return Err(usage("--orbit needs --lock"));
            }
            if let Some(x) = alpha {
                let chain = strip.chain(*x)?;
                if chain.len() > 2 {
                    let _ = writeln!(out, "gamma {}", num(chain[2]));
                }
                let _ = writeln!(out, "bar_angles {}", chain.iter().map(|t| num(*t)).collect::<Vec<_>>().join(","));
            }
            if *lock {
                let l = strip.locking_angle()?;
                let _ = writeln!(out, "alpha1 {}", num(l.alpha1));
                let _ = writeln!(out, "lambda {}", num(l.lambda));
                if let Some(start) = orbit {
                    let o = strip.backward_iterates(*start, &l, 100_000)?;
                    let _ = writeln!(out, "backward_steps {}", o.steps);
                    let _ = writeln!(out, "backward_last {}", num(*o.iterates.last().expect("orbit starts non-empty")));
                }
            }
        }
        Command::Finite { source, patch } => {
            let fw: FiniteFramework = match load(source, g.seed)? {
                CatalogEntry::Framework(fw) => fw,
                CatalogEntry::Motif(m) => rigidity_core::PatchFramework::new(&m, *patch)?.framework().clone(),
            };
            let r = fw.rigidity_matrix();
            let a = analyze(&r, g.tol);
            let stresses = cokernel(&r, g.tol);
            let _ = writeln!(out, "vertices {} edges {} dimension {}", fw.vertex_count(), fw.edge_count(), fw.dimension());
            let _ = writeln!(out, "rank {}", a.rank);
            let _ = writeln!(out, "flex_dim {}", a.nullity());
            let _ = writeln!(out, "stress_dim {}", stresses.len());
            let _ = writeln!(out, "sigma_min {}", num(a.sigma_min()));
            let _ = writeln!(out, "spans_ambient_space {}", fw.spans_ambient_space());
        }
    }
    emit(&out, &g.out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(msg)) if msg.starts_with("usage: ") => {
            eprintln!("error: {}", &msg["usage: ".len()..]);
            ExitCode::from(2)
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
