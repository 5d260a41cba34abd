use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pairdom::constants::{solve_system, DEFAULT_MAX_ITER, DEFAULT_TOL};
use pairdom::gw_sampler::{sample_cayley_uniform, sample_conditioned, Model, OffspringDistribution, SeededRng};
use pairdom::paired_dom::{self, build_fixtures, gamma_from_labels, gamma_pr_bruteforce, label_recursive, phi_from_labels};
use pairdom::sim_stats::{normality_diagnostics, run_simulation, MIN_DIAGNOSTIC_REPS};
use pairdom::tree::RootedTree;

#[derive(Parser)]
#[command(name = "pairdom", version, about = "Paired domination number of trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Binary,
    Plane,
    Labelled,
    Custom,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Binary => Model::Binary,
            ModelArg::Plane => Model::Plane,
            ModelArg::Labelled => Model::Labelled,
            ModelArg::Custom => Model::Custom,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Conditioned Galton-Watson draw.
    Gw,
    /// Uniform Pruefer sequence with a uniform root (labelled model only).
    Pruefer,
}

#[derive(Subcommand)]
enum Command {
    /// Paired domination number, PD-set and pairing of a tree file (`-` for stdin).
    Solve { file: PathBuf },
    /// B/F/R/P label of every vertex.
    Label { file: PathBuf },
    /// Exhaustive paired domination number (at most 18 vertices).
    Oracle { file: PathBuf },
    /// Draw a conditioned Galton-Watson tree and print it.
    Sample {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        stream: u64,
        /// Offspring pmf file with lines `k p_k` (required for `custom`).
        #[arg(long)]
        pmf: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "gw")]
        method: Method,
    },
    /// Solve the root-label fixed-point system and report the limiting mean.
    Constants {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        pmf: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Monte-Carlo summary of the paired domination number.
    Simulate {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        reps: u64,
        #[arg(long)]
        seed: u64,
        /// Worker threads; 0 picks the number of CPUs.
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        pmf: Option<PathBuf>,
        /// Histogram CSV with the summary as a comment header.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Summary scalars as `key=value` lines.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Write the tau0, t1, t2, tau1, tau2 trees for a given d0.
    Fixtures {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        d0: u64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let msg = e.to_string();
            let line: Vec<&str> = msg.lines().map(str::trim).filter(|l| !l.is_empty()).take_while(|l| !l.starts_with("Usage:")).collect();
            eprintln!("{}", line.join(" "));
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

type Result<T> = std::result::Result<T, Box<dyn std::error::Error>>;

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()).into())
    }
}

fn read_tree(path: &Path) -> Result<RootedTree> {
    Ok(RootedTree::parse(&read_input(path)?)?)
}

fn load_distribution(model: ModelArg, pmf: Option<&Path>) -> Result<OffspringDistribution> {
    match (Model::from(model), pmf) {
        (Model::Custom, Some(path)) => Ok(OffspringDistribution::parse_pmf(&read_input(path)?)?),
        (Model::Custom, None) => Err("--model custom requires --pmf".into()),
        (m, None) => Ok(OffspringDistribution::builtin(m).expect("built-in model")),
        (_, Some(_)) => Err("--pmf is only valid with --model custom".into()),
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Fixed `.`-decimal formatting with `digits` significant digits.
fn sig(x: f64, digits: i32) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (digits - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn run(command: Command) -> Result<String> {
    match command {
        Command::Solve { file } => {
            let tree = read_tree(&file)?;
            let r = paired_dom::solve(&tree)?;
            let pairs = r.pairs().into_iter().map(|(a, b)| format!("{a}-{b}"));
            Ok(format!(
                "n={}\ngamma_pr={}\nphi={}\nroot_label={}\nmembers={}\npairs={}\n",
                tree.len(),
                r.gamma_pr(),
                r.phi(),
                r.label(1),
                join(r.members()),
                join(pairs)
            ))
        }
        Command::Label { file } => {
            let tree = read_tree(&file)?;
            let labels = label_recursive(&tree);
            let lg = gamma_from_labels(&labels);
            let mut out = format!("n={}\nlabels={}\nphi={}\n", tree.len(), join(&labels), phi_from_labels(&labels));
            if lg.vacuous {
                out.push_str(&format!("gamma_from_labels={}\nwarning=single vertex; value is vacuous\n", lg.gamma));
            } else {
                out.push_str(&format!("gamma_from_labels={}\n", lg.gamma));
            }
            Ok(out)
        }
        Command::Oracle { file } => {
            let tree = read_tree(&file)?;
            Ok(format!("n={}\ngamma_pr={}\n", tree.len(), gamma_pr_bruteforce(&tree)?))
        }
        Command::Sample { model, n, seed, stream, pmf, method } => {
            let rng = SeededRng::new(seed, stream);
            let tree = match method {
                Method::Gw => sample_conditioned(&load_distribution(model, pmf.as_deref())?, n, rng)?,
                Method::Pruefer => {
                    if !matches!(model, ModelArg::Labelled) {
                        return Err("--method pruefer samples the labelled model only".into());
                    }
                    sample_cayley_uniform(n, rng)?
                }
            };
            Ok(format!("{}\n", tree.serialize()))
        }
        Command::Constants { model, pmf, tol, max_iter, csv } => {
            let dist = load_distribution(model, pmf.as_deref())?;
            let c = solve_system(&dist, tol, max_iter)?;
            let out = format!(
                "model={}\nx_B={}\nx_F={}\nx_R={}\nx_P={}\nmu_pr={}\nresidual={:e}\niterations={}\n",
                dist.name(),
                sig(c.x_b, 10),
                sig(c.x_f, 10),
                sig(c.x_r, 10),
                sig(c.x_p, 10),
                sig(c.mu_pr, 10),
                c.residual,
                c.iterations
            );
            if let Some(path) = csv {
                let body = format!(
                    "model,x_B,x_F,x_R,x_P,mu_pr\n{},{},{},{},{},{}\n",
                    dist.name(),
                    sig(c.x_b, 10),
                    sig(c.x_f, 10),
                    sig(c.x_r, 10),
                    sig(c.x_p, 10),
                    sig(c.mu_pr, 10)
                );
                fs::write(&path, body).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            Ok(out)
        }
        Command::Simulate { model, n, reps, seed, workers, pmf, csv, summary } => {
            let dist = load_distribution(model, pmf.as_deref())?;
            let s = run_simulation(&dist, n, reps, seed, workers)?;
            let mut out = s.to_key_values();
            if s.reps >= MIN_DIAGNOSTIC_REPS {
                let report = normality_diagnostics(&s)?;
                if report.degenerate {
                    out.push_str("normality=degenerate\n");
                } else if let Some(chi) = &report.chi_square {
                    out.push_str(&format!(
                        "chi_square={}\nchi_square_dof={}\nchi_square_p={}\nnormality={}\n",
                        chi.statistic,
                        chi.dof,
                        chi.p_value,
                        if report.passed() { "pass" } else { "fail" }
                    ));
                }
            }
            if let Some(path) = csv {
                fs::write(&path, s.to_csv()).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            if let Some(path) = summary {
                fs::write(&path, s.to_key_values()).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            Ok(out)
        }
        Command::Fixtures { d0, out } => {
            let f = build_fixtures(d0 as usize);
            fs::create_dir_all(&out)?;
            let mut report = format!("d0={d0}\n");
            for (name, tree) in [("tau0", &f.tau0), ("t1", &f.t1), ("t2", &f.t2), ("tau1", &f.tau1), ("tau2", &f.tau2)] {
                let path = out.join(format!("{name}.tree"));
                fs::write(&path, format!("{}\n", tree.serialize())).map_err(|e| format!("{}: {e}", path.display()))?;
                let r = paired_dom::gamma_pr_linear(tree)?;
                report.push_str(&format!(
                    "{name}.path={}\n{name}.n={}\n{name}.gamma_pr={}\n{name}.root_label={}\n",
                    path.display(),
                    tree.len(),
                    r.gamma_pr(),
                    r.label(1)
                ));
            }
            Ok(report)
        }
    }
}
