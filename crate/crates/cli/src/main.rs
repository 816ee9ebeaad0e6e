//! `tricover`: check, decompose and bound multiple coverings of a square
//! window by translates of a triangle, and search for good lattice coverings.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on usage,
//! parse or I/O errors.

mod io;
mod report;
mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use tricover::audit::audit;
use tricover::bounds::density_chain;
use tricover::lattice::{
    lattice_covers, lattice_instance, lattice_multiplicity, perturb_instance, search_optimal_lattice, Lattice,
    SearchConfig,
};
use tricover::rational::{format_rational, int, parse_rational, Rational};
use tricover::verify::{coverage_certificate, verify_exact_tiling};
use tricover::{decompose, DecompositionResult, Error};

use io::{instance_file, read_instance, read_results, to_json, write_text, LoadedInstance, Metadata, ResultsFile, StoredLattice};
use report::{
    AuditRecord, BoundsRecord, CoveringRecord, DecompositionRecord, OptimizeReport, Report, TilingRecord,
};

#[derive(Parser)]
#[command(name = "tricover", version, about = "Multiple coverings of a square by translates of a triangle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of the summary.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose an instance into cells and check that they tile the window.
    Decompose {
        instance: PathBuf,
        #[command(flatten)]
        output: Output,
        /// Draw the cells as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check the k-fold covering property and the exact tiling by cells.
    Verify {
        instance: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Run every structural check on the decomposition.
    Audit {
        instance: PathBuf,
        #[command(flatten)]
        output: Output,
        /// Discard the cell of this translate before checking.
        #[arg(long, hide = true)]
        drop_cell: Option<usize>,
    },
    /// Evaluate the density bound chain.
    Bounds {
        instance: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Search for a k-fold lattice covering of least density.
    Optimize {
        #[arg(long)]
        k: u32,
        /// Maximum number of multiplicity evaluations.
        #[arg(long, default_value_t = SearchConfig::default().budget)]
        budget: usize,
        /// Denominator of the first seed grid.
        #[arg(long, default_value_t = SearchConfig::default().seed_grid)]
        seed_grid: u32,
        /// Number of finer seed grids.
        #[arg(long, default_value_t = SearchConfig::default().grid_levels)]
        levels: u32,
        /// Number of seeds refined by local descent.
        #[arg(long, default_value_t = SearchConfig::default().starts)]
        starts: usize,
        /// Results file: its lattice for k seeds the search, and the best
        /// lattice found is stored back.
        #[arg(long, alias = "resume")]
        results: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Write the instance induced by a lattice on a window.
    GenLattice {
        #[arg(long)]
        k: u32,
        /// Window side.
        #[arg(long, default_value = "1")]
        l: String,
        /// Hermite basis `a,b,c` of the lattice spanned by (a, 0) and (b, c).
        /// Defaults to the lattice stored for k in `--results`, then to
        /// a = 1, b = c = 1/(2k+1).
        #[arg(long)]
        lattice: Option<String>,
        #[arg(long)]
        results: Option<PathBuf>,
        /// Multiply the lattice by this factor.
        #[arg(long)]
        scale: Option<String>,
        /// Move translates by random offsets of at most this size.
        #[arg(long)]
        perturb: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Proposals per translate when perturbing.
        #[arg(long, default_value_t = 8)]
        retries: usize,
        #[arg(long)]
        name: Option<String>,
        /// Write the instance here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn rational_arg(text: &str, name: &str) -> Result<Rational> {
    parse_rational(text).with_context(|| format!("--{name}: cannot parse {text:?}"))
}

fn emit(report: &Report, output: &Output) -> Result<bool> {
    let json = to_json(report);
    if let Some(path) = &output.out {
        write_text(path, &json)?;
    }
    if output.json {
        print!("{json}");
    } else {
        print!("{}", report.summary());
    }
    Ok(report.passed)
}

fn tiling_record(loaded: &LoadedInstance, res: &DecompositionResult) -> Result<TilingRecord> {
    let inst = &loaded.instance;
    Ok(match res.stairs() {
        Some(stairs) => TilingRecord::new(&verify_exact_tiling(&stairs, inst.k() as usize, inst.l())?),
        None => TilingRecord::skipped(format!("cells {:?} are not stair polygons", res.non_stair())),
    })
}

fn base_report(command: &str, loaded: &LoadedInstance) -> Report {
    let mut report = Report::new(command, loaded);
    report.covering = Some(CoveringRecord::new(&loaded.instance, &coverage_certificate(&loaded.instance)));
    report
}

fn run_decompose(path: &Path, output: &Output, svg_path: Option<&Path>) -> Result<bool> {
    let loaded = read_instance(path)?;
    let res = decompose(&loaded.instance);
    let mut report = base_report("decompose", &loaded);
    report.decomposition = Some(DecompositionRecord::new(&res));
    report.tiling = Some(tiling_record(&loaded, &res)?);
    report.settle();
    if let Some(p) = svg_path {
        write_text(p, &svg::render(&loaded.instance, &res))?;
    }
    emit(&report, output)
}

fn run_verify(path: &Path, output: &Output) -> Result<bool> {
    let loaded = read_instance(path)?;
    let res = decompose(&loaded.instance);
    let mut report = base_report("verify", &loaded);
    report.tiling = Some(tiling_record(&loaded, &res)?);
    report.settle();
    emit(&report, output)
}

fn run_audit(path: &Path, output: &Output, drop_cell: Option<usize>) -> Result<bool> {
    let loaded = read_instance(path)?;
    let mut res = decompose(&loaded.instance);
    if let Some(i) = drop_cell {
        let Some(pos) = res.cells.iter().position(|c| c.index == i) else {
            bail!("--drop-cell: translate {i} has no cell");
        };
        res.cells.remove(pos);
    }
    let mut report = base_report("audit", &loaded);
    report.decomposition = Some(DecompositionRecord::new(&res));
    report.tiling = Some(tiling_record(&loaded, &res)?);
    report.audit = Some(AuditRecord::new(&audit(&loaded.instance, &res)));
    report.settle();
    emit(&report, output)
}

fn run_bounds(path: &Path, output: &Output) -> Result<bool> {
    let loaded = read_instance(path)?;
    let res = decompose(&loaded.instance);
    let mut report = base_report("bounds", &loaded);
    report.bounds = Some(BoundsRecord::new(&density_chain(&loaded.instance, &res)));
    report.settle();
    emit(&report, output)
}

fn load_results_or_empty(path: &Path) -> Result<ResultsFile> {
    if path.exists() {
        read_results(path)
    } else {
        Ok(ResultsFile::default())
    }
}

fn run_optimize(k: u32, config: SearchConfig, results: Option<&Path>, output: &Output) -> Result<bool> {
    let mut config = config;
    let mut stored = match results {
        Some(p) => Some(load_results_or_empty(p)?),
        None => None,
    };
    if let Some(entry) = stored.as_ref().and_then(|r| r.get(k)) {
        config.warm_start = Some(entry.lattice()?);
    }
    let found = match search_optimal_lattice(k, &config) {
        Ok(r) => r,
        Err(e @ (Error::InfeasibleWithinBudget { .. } | Error::OptimalityViolated { .. })) => {
            eprintln!("optimize: {e}");
            return Ok(false);
        }
        Err(e) => return Err(e.into()),
    };
    if let (Some(file), Some(path)) = (stored.as_mut(), results) {
        if file.offer(StoredLattice::from_report(&found))? || !path.exists() {
            write_text(path, &to_json(file))?;
        }
    }
    let report = OptimizeReport::new(&found);
    let json = to_json(&report);
    if let Some(path) = &output.out {
        write_text(path, &json)?;
    }
    if output.json {
        print!("{json}");
    } else {
        print!("{}", report.summary());
    }
    Ok(true)
}

struct GenArgs {
    k: u32,
    l: String,
    lattice: Option<String>,
    results: Option<PathBuf>,
    scale: Option<String>,
    perturb: Option<String>,
    seed: u64,
    retries: usize,
    name: Option<String>,
    out: Option<PathBuf>,
}

fn run_gen_lattice(g: GenArgs) -> Result<bool> {
    if g.k == 0 {
        bail!("--k must be at least 1");
    }
    let l = rational_arg(&g.l, "l")?;
    let mut lat = if let Some(text) = &g.lattice {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        let [a, b, c] = parts.as_slice() else {
            bail!("--lattice: expected `a,b,c`, got {text:?}");
        };
        Lattice::from_hermite(rational_arg(a, "lattice")?, rational_arg(b, "lattice")?, rational_arg(c, "lattice")?)
            .context("--lattice")?
    } else if let Some(path) = &g.results {
        let file = read_results(path)?;
        match file.get(g.k) {
            Some(entry) => entry.lattice()?,
            None => bail!("{} has no lattice for k = {}", path.display(), g.k),
        }
    } else {
        let t = int(1) / int(2 * i64::from(g.k) + 1);
        Lattice::from_hermite(int(1), t.clone(), t)?
    };
    if let Some(f) = &g.scale {
        lat = lat.scaled(&rational_arg(f, "scale")?).context("--scale")?;
    }
    if !lattice_covers(&lat, g.k as usize) {
        eprintln!(
            "gen-lattice: the lattice covers the plane only {}-fold, not {}-fold",
            lattice_multiplicity(&lat),
            g.k
        );
        return Ok(false);
    }
    let mut inst = lattice_instance(&lat, g.k, &l)?;
    let (a, b, c) = lat.hermite();
    let mut provenance = format!(
        "lattice a = {}, b = {}, c = {}",
        format_rational(&a),
        format_rational(&b),
        format_rational(&c)
    );
    let mut seed = None;
    if let Some(m) = &g.perturb {
        let m = rational_arg(m, "perturb")?;
        inst = match perturb_instance(&inst, &m, g.seed, g.retries) {
            Ok(i) => i,
            Err(e @ Error::PerturbationExhausted { .. }) => {
                eprintln!("gen-lattice: {e}");
                return Ok(false);
            }
            Err(e) => return Err(e.into()),
        };
        provenance.push_str(&format!(", perturbed by at most {}", format_rational(&m)));
        seed = Some(g.seed);
    }
    let metadata = Metadata { name: g.name, seed, provenance: Some(provenance) };
    let json = to_json(&instance_file(&inst, Some(metadata)));
    match &g.out {
        Some(path) => {
            write_text(path, &json)?;
            println!("wrote {} translates to {}", inst.len(), path.display());
        }
        None => print!("{json}"),
    }
    Ok(true)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Decompose { instance, output, svg } => run_decompose(&instance, &output, svg.as_deref()),
        Command::Verify { instance, output } => run_verify(&instance, &output),
        Command::Audit { instance, output, drop_cell } => run_audit(&instance, &output, drop_cell),
        Command::Bounds { instance, output } => run_bounds(&instance, &output),
        Command::Optimize { k, budget, seed_grid, levels, starts, results, output } => {
            let config = SearchConfig { budget, seed_grid, grid_levels: levels, starts, ..SearchConfig::default() };
            run_optimize(k, config, results.as_deref(), &output)
        }
        Command::GenLattice { k, l, lattice, results, scale, perturb, seed, retries, name, out } => {
            run_gen_lattice(GenArgs { k, l, lattice, results, scale, perturb, seed, retries, name, out })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
