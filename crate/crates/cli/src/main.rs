//! `gspline`: spline modules of edge-labeled graphs from the command line.
//!
//! Exit status 1 means the input could not be read or parsed, 2 means a
//! computation's hypothesis failed (for example `hilbert` on inhomogeneous
//! labels). An `undecided` freeness verdict exits 0.

mod report;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gspline::decompose::{decompose, RemovalOrder};
use gspline::graph::EdgeLabeledGraph;
use gspline::graph::{boundary_matrix, cycle_basis, parse_graph, parse_spline, verify_spline, CycleBasisMode};
use gspline::groebner::{free_resolution, minimal_generators, ResolutionTarget, Submodule};
use gspline::spline::{
    decide_freeness, graded_series_report, spline_module_generators, syzygy_module, FreenessOptions,
};
use gspline::{Field, Fp, Rational};
use serde_json::Value;

#[derive(Parser, Debug)]
#[command(name = "gspline", version, about = "Generalized splines on edge-labeled graphs")]
struct RunConfig {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, value_enum, default_value_t = BasisArg::Minimum)]
    basis: BasisArg,
    #[arg(long, global = true, value_enum, default_value_t = OrderArg::Greedy)]
    order: OrderArg,
    /// Vertex name used as the base vertex for spline generators.
    #[arg(long, global = true)]
    base_vertex: Option<String>,
    /// Coefficient field.
    #[arg(long, global = true, value_enum, default_value_t = FieldArg::Qq)]
    field: FieldArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank of every basis cycle.
    Rank { graph: PathBuf },
    /// Cycle basis and boundary matrix.
    Matrix { graph: PathBuf },
    /// Generators of the kernel of the boundary matrix.
    Syzygy { graph: PathBuf },
    /// Reduce the graph to disjoint cycles by edge removals.
    Decompose { graph: PathBuf },
    /// Hilbert series of the syzygy and spline modules.
    Hilbert { graph: PathBuf },
    /// Minimal graded free resolution.
    Resolve {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = ResolveArg::Syzygy)]
        target: ResolveArg,
    },
    /// Decide whether the spline module is free.
    Freeness {
        graph: PathBuf,
        /// Also run the resolution when a structural rule already decided.
        #[arg(long)]
        confirm: bool,
    },
    /// Generators of the spline module.
    SplineBasis { graph: PathBuf },
    /// Check the spline conditions for an assignment of vertex values.
    Verify { graph: PathBuf, spline: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisArg {
    Minimum,
    Fundamental,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    Greedy,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ResolveArg {
    /// The kernel of the boundary matrix.
    Syzygy,
    /// The quotient of the ring by the ideal of all labels.
    LabelIdeal,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FieldArg {
    Qq,
    Gf2,
    Gf3,
    Gf5,
    Gf7,
    Gf101,
    Gf32003,
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<gspline::Error> for Failure {
    fn from(e: gspline::Error) -> Self {
        Failure { code: if e.is_parse_error() { 1 } else { 2 }, msg: e.to_string() }
    }
}

fn usage(msg: String) -> Failure {
    Failure { code: 1, msg }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load<F: Field>(path: &Path) -> Result<EdgeLabeledGraph<F>, Failure> {
    parse_graph(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

impl RunConfig {
    fn basis(&self) -> CycleBasisMode {
        match self.basis {
            BasisArg::Minimum => CycleBasisMode::Minimum,
            BasisArg::Fundamental => CycleBasisMode::Fundamental,
        }
    }

    fn order(&self) -> RemovalOrder {
        match self.order {
            OrderArg::Greedy => RemovalOrder::Greedy,
            OrderArg::Exhaustive => RemovalOrder::Exhaustive,
        }
    }

    fn base_vertex<F: Field>(&self, g: &EdgeLabeledGraph<F>) -> Result<Option<usize>, Failure> {
        match &self.base_vertex {
            None => Ok(None),
            Some(name) => g.vertex_index(name).map(Some).ok_or_else(|| usage(format!("unknown vertex `{name}`"))),
        }
    }
}

fn run<F: Field>(cfg: &RunConfig) -> Result<(String, Value), Failure> {
    let out = match &cfg.command {
        Command::Rank { graph } => {
            let g = load::<F>(graph)?;
            report::ranks(&g, &cycle_basis(&g, cfg.basis()))?
        }
        Command::Matrix { graph } => {
            let g = load::<F>(graph)?;
            let basis = cycle_basis(&g, cfg.basis());
            report::matrix(&g, &basis, &boundary_matrix(&g, &basis))
        }
        Command::Syzygy { graph } => {
            let g = load::<F>(graph)?;
            match syzygy_module(&g, cfg.basis())? {
                None => report::syzygies::<F>(None, false)?,
                Some(b) if b.is_homogeneous() => report::syzygies(Some(&minimal_generators(&b)?), true)?,
                Some(b) => report::syzygies(Some(&b), false)?,
            }
        }
        Command::Decompose { graph } => {
            let g = load::<F>(graph)?;
            let res = decompose(&g, cfg.basis(), cfg.order())?;
            let v = report::decomposition(&res);
            (report::decomposition_text(&g, &res), v)
        }
        Command::Hilbert { graph } => {
            let g = load::<F>(graph)?;
            report::series(&graded_series_report(&g, cfg.order())?)
        }
        Command::Resolve { graph, target } => {
            let g = load::<F>(graph)?;
            let (module, target) = match target {
                ResolveArg::Syzygy => match syzygy_module(&g, cfg.basis())? {
                    Some(b) => (b, ResolutionTarget::Submodule),
                    None => return Err(Failure { code: 2, msg: "graph has no edges".into() }),
                },
                ResolveArg::LabelIdeal => (Submodule::ideal(g.ring(), g.labels())?, ResolutionTarget::Quotient),
            };
            report::resolution(&free_resolution(&module, target)?)
        }
        Command::Freeness { graph, confirm } => {
            let g = load::<F>(graph)?;
            let opts = FreenessOptions { basis: cfg.basis(), order: cfg.order(), confirm_with_pd: *confirm };
            let cert = decide_freeness(&g, opts)?;
            (cert.to_string(), report::certificate(&cert))
        }
        Command::SplineBasis { graph } => {
            let g = load::<F>(graph)?;
            let base = cfg.base_vertex(&g)?;
            report::spline_basis(&g, &spline_module_generators(&g, base)?)
        }
        Command::Verify { graph, spline } => {
            let g = load::<F>(graph)?;
            let f = parse_spline(&read(spline)?, &g).map_err(|e| usage(format!("{}: {e}", spline.display())))?;
            report::verification(&g, &verify_spline(&g, &f)?)
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cfg = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cfg.field {
        FieldArg::Qq => run::<Rational>(&cfg),
        FieldArg::Gf2 => run::<Fp<2>>(&cfg),
        FieldArg::Gf3 => run::<Fp<3>>(&cfg),
        FieldArg::Gf5 => run::<Fp<5>>(&cfg),
        FieldArg::Gf7 => run::<Fp<7>>(&cfg),
        FieldArg::Gf101 => run::<Fp<101>>(&cfg),
        FieldArg::Gf32003 => run::<Fp<32003>>(&cfg),
    };
    match result {
        Ok((text, json)) => {
            let body = if cfg.json { serde_json::to_string_pretty(&json).expect("json") } else { text };
            let _ = writeln!(io::stdout().lock(), "{}", body.trim_end());
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
