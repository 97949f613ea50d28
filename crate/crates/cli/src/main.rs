use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use relface::homology::reduced_betti;
use relface::io::{format_complex, parse_complex};
use relface::recognition::{classify_homology, is_normal_pseudomanifold};
use relface::sigma_mu::{mu_vector, sigma_vector};
use relface::stanley_reisner::{artinian_reduction, graded_betti, resolution_oracle, wlp_test, GradedBettiTable};
use relface::verify::{run_check, run_corpus, suite, suite_names, Analysis, CheckId, CheckOptions, Recipe};
use relface::{FieldSpec, RelativeComplex, SimplicialComplex};

#[derive(Parser)]
#[command(name = "relface", version, about = "Face numbers, homology, sigma/mu numbers and theorem checks for relative simplicial complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Input {
    /// Complex file: one facet per line.
    file: PathBuf,
    /// Subcomplex file; the pair (FILE, SUB) is used.
    #[arg(long)]
    sub: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Size, dimension and classification.
    Info { file: PathBuf },
    /// f-, h- and g-vectors.
    Fvec {
        #[command(flatten)]
        input: Input,
    },
    /// Reduced Betti numbers.
    Homology {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "q")]
        field: FieldSpec,
    },
    /// Normalized averages of induced-subcomplex Betti numbers.
    Sigma {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "q")]
        field: FieldSpec,
        #[arg(short, allow_hyphen_values = true)]
        i: Option<i32>,
    },
    /// Vertex sums of link sigma numbers.
    Mu {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "q")]
        field: FieldSpec,
        #[arg(short, allow_hyphen_values = true)]
        i: Option<i32>,
    },
    /// Graded Betti numbers of the Stanley-Reisner module.
    Betti {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "q")]
        field: FieldSpec,
        /// Also compute a free resolution directly and compare (at most 8 vertices).
        #[arg(long)]
        oracle: bool,
    },
    /// Sampled weak Lefschetz test.
    Wlp {
        file: PathBuf,
        #[arg(long, default_value_t = relface::field::DEFAULT_PRIME)]
        prime: u64,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Dimensions of a random Artinian reduction.
    Reduce {
        file: PathBuf,
        #[arg(long, default_value_t = relface::field::DEFAULT_PRIME)]
        prime: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of linear forms: d, or d+1 to include a Lefschetz form.
        #[arg(long)]
        count: Option<usize>,
    },
    /// Run one check on a complex.
    Check {
        id: CheckId,
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "q")]
        field: FieldSpec,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        options: Options,
    },
    /// Generate a complex from a family (or a recipe expression such as `remove_facet(cyclic(4,7))`).
    Gen {
        family: String,
        params: Vec<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Run checks over a named suite.
    Corpus {
        suite: String,
        /// Write the reports as a JSON array.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value = "q")]
        field: FieldSpec,
        /// Comma-separated check ids; all by default.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<CheckId>,
        #[command(flatten)]
        options: Options,
    },
}

#[derive(clap::Args)]
struct Options {
    /// Prime for Artinian reductions and WLP sampling.
    #[arg(long, default_value_t = relface::field::DEFAULT_PRIME)]
    prime: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    trials: usize,
}

impl Options {
    fn check_options(&self) -> CheckOptions {
        CheckOptions { prime: self.prime, seed: self.seed, wlp_trials: self.trials }
    }
}

fn read(path: &Path) -> Result<SimplicialComplex> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_complex(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_sub(delta: &SimplicialComplex, sub: &Option<PathBuf>) -> Result<Option<SimplicialComplex>> {
    sub.as_ref().map(|p| Ok(read(p)?.with_ground(delta.ground_set()))).transpose()
}

fn load_pair(input: &Input) -> Result<RelativeComplex> {
    let delta = read(&input.file)?;
    Ok(match load_sub(&delta, &input.sub)? {
        Some(sub) => RelativeComplex::new(delta, sub)?,
        None => RelativeComplex::absolute(delta),
    })
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn print_table(t: &GradedBettiTable) {
    for (i, j, b) in t.nonzero() {
        println!("beta_{i},{j} = {b}");
    }
    if t.truncated() {
        println!("(truncated at degree {})", t.degree_bound.unwrap_or_default());
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Info { file } => {
            let delta = read(&file)?;
            println!("vertices: {}", delta.ground_set().len());
            println!("facets: {}", delta.facets().len());
            match delta.dim() {
                Some(d) => println!("dimension: {d}"),
                None => println!("dimension: void"),
            }
            println!("pure: {}", delta.is_pure());
            let psi = RelativeComplex::absolute(delta.clone());
            println!("f: {}", join(psi.f_vector()?.0));
            if delta.dim().is_some() {
                let pm = is_normal_pseudomanifold(&delta)?;
                println!("pseudomanifold: {:?}", pm.kind);
                let c = classify_homology(&delta, FieldSpec::Rational)?;
                println!("class over q: {:?}", c.class);
            }
        }
        Command::Fvec { input } => {
            let psi = load_pair(&input)?;
            println!("f: {}", join(psi.f_vector()?.0));
            println!("h: {}", join(psi.h_vector()?.0));
            println!("g: {}", join(psi.g_vector()?.0));
        }
        Command::Homology { input, field } => {
            let psi = load_pair(&input)?;
            println!("reduced betti over {field} (from degree -1): {}", join(reduced_betti(&psi, field)?.entries));
        }
        Command::Sigma { input, field, i } => {
            let v = sigma_vector(&load_pair(&input)?, field)?;
            print_vector("sigma", &v, i);
        }
        Command::Mu { input, field, i } => {
            let v = mu_vector(&load_pair(&input)?, field)?;
            print_vector("mu", &v, i);
        }
        Command::Betti { input, field, oracle } => {
            let psi = load_pair(&input)?;
            let table = graded_betti(&psi, field)?;
            print_table(&table);
            if oracle {
                let n = psi.ground_set().len();
                let o = resolution_oracle(&psi, field, n)?;
                if o.agrees_with(&table) {
                    println!("oracle: agrees");
                } else {
                    println!("oracle: DISAGREES");
                    print_table(&o);
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::Wlp { file, prime, trials, seed } => {
            let out = wlp_test(&read(&file)?, prime, trials, seed)?;
            println!("{}", serde_json::to_string(&out)?);
        }
        Command::Reduce { file, prime, seed, count } => {
            let delta = read(&file)?;
            let d = delta.dimension()? as usize + 1;
            let r = artinian_reduction(&RelativeComplex::absolute(delta), prime, count.unwrap_or(d), seed)?;
            println!("dims: {}", join(r.dims));
        }
        Command::Check { id, input, field, json, options } => {
            let delta = read(&input.file)?;
            let sub = load_sub(&delta, &input.sub)?;
            let mut a = Analysis::new(delta, field, input.file.display().to_string());
            if let Some(sub) = sub {
                a = a.with_sub(sub);
            }
            let r = run_check(id, &a, &options.check_options());
            if json {
                println!("{}", serde_json::to_string_pretty(&r)?);
            } else if let Some(reason) = &r.skipped_reason {
                println!("{id}: skipped ({reason})");
            } else {
                let (l, rr) = (r.lhs.as_ref().unwrap(), r.rhs.as_ref().unwrap());
                let verdict = if r.passed() { "holds" } else { "FAILS" };
                println!("{id}: {} {} {} {verdict}", l.0, r.relation.unwrap(), rr.0);
                if !r.witnesses.is_empty() {
                    println!("  {}", r.witnesses.join(", "));
                }
            }
            if r.failed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Gen { family, params, seed, o } => {
            let recipe = if family.contains('(') {
                if !params.is_empty() {
                    bail!("a recipe expression takes no further parameters");
                }
                family.parse::<Recipe>()?
            } else {
                Recipe::from_family(&family, &params, seed)?
            };
            let text = format!("# {recipe}\n{}", format_complex(&recipe.build()?));
            match o {
                Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
        }
        Command::Corpus { suite: name, json, field, checks, options } => {
            let instances = suite(&name).with_context(|| format!("known suites: {}", suite_names().join(", ")))?;
            let ids = if checks.is_empty() { CheckId::ALL.to_vec() } else { checks };
            let report = run_corpus(&instances, &ids, field, &options.check_options())?;
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&report.reports)?;
                fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
            }
            for r in report.reports.iter().filter(|r| r.failed()) {
                println!("FAIL {} {}: {}", r.check, r.input, r.witnesses.join(", "));
            }
            let s = &report.summary;
            println!("{} reports: {} passed, {} failed, {} skipped", s.total, s.passed, s.failed, s.skipped);
            if report.any_failed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_vector(name: &str, v: &relface::sigma_mu::RationalVector, i: Option<i32>) {
    match i {
        Some(i) => println!("{name}_{i} = {}", v.get(i)),
        None => {
            for (i, x) in v.iter() {
                println!("{name}_{i} = {x}");
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
