//! `gentle`: batch front-end for differential modules over gentle algebras.
//!
//! Exit status: 0 success, 1 validation failure, 2 usage error, 3 internal
//! invariant breach.

use std::fs;
use std::panic;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gentle_core::decompose::{decompose, is_isomorphic, split_projectives, Options};
use gentle_core::diffmod::DifferentialModule;
use gentle_core::field::{FiniteField, F2, F3, F5, F7};
use gentle_core::linalg::{jordan_block, Matrix};
use gentle_core::objects::{band_object, string_object, twist_target};
use gentle_core::par::Exec;
use gentle_core::quiver::GentleAlgebra;
use gentle_core::sigma::{b_band, b_string, g_object, gamma, gamma_b, MaxOrder, OrderedSetY};
use gentle_core::strings::{enumerate_bands, enumerate_strings, HomotopyBand, HomotopyString};
use gentle_core::surface::Surface;
use gentle_core::verify::{run_each, Config};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser, Debug)]
#[command(
    name = "gentle",
    version,
    about = "Differential modules over gentle algebras"
)]
struct Cli {
    /// Characteristic of the coefficient field (2, 3, 5 or 7).
    #[arg(long, global = true, default_value_t = 5)]
    prime: u32,
    /// Seed for every randomized procedure.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// Worker threads for enumeration and the self-test (1 = sequential).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check gentleness and finite global dimension.
    Validate { algebra: PathBuf },
    /// Dimensions, maximal paths and surface invariants.
    Info { algebra: PathBuf },
    /// List canonical homotopy strings or bands up to a length bound.
    Enumerate {
        algebra: PathBuf,
        #[arg(long, conflicts_with = "bands", required_unless_present = "bands")]
        strings: bool,
        #[arg(long)]
        bands: bool,
        #[arg(long)]
        max_letters: usize,
    },
    /// Build the string or band object of a word.
    Object {
        algebra: PathBuf,
        #[command(flatten)]
        word: Word,
        /// Write the module dump to this path (`-` for standard output).
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Split a dumped module into indecomposable summands.
    Decompose {
        algebra: PathBuf,
        /// Module dump to read (`-` for standard input).
        #[arg(long)]
        input: PathBuf,
        /// Also print the dump of every summand.
        #[arg(long)]
        dumps: bool,
    },
    /// Winding number of a band or the grading of a string.
    Grade {
        algebra: PathBuf,
        #[command(flatten)]
        word: Word,
    },
    /// Twist an object by a scalar and identify the result.
    Twist {
        algebra: PathBuf,
        #[command(flatten)]
        word: Word,
        #[arg(long)]
        lambda: String,
    },
    /// Emit the (Y, σ)-matrix G(M) of a dumped module or the matrix B_w of a word.
    Matrixify {
        algebra: PathBuf,
        #[command(flatten)]
        word: OptWord,
        /// Module dump to apply G to.
        #[arg(long, conflicts_with_all = ["string", "band"])]
        input: Option<PathBuf>,
        /// Total order on the maximal paths.
        #[arg(long, value_enum, default_value_t = OrderArg::Lexicographic)]
        order: OrderArg,
    },
    /// Draw the marked surface as SVG.
    Render {
        algebra: PathBuf,
        #[arg(long)]
        svg_out: PathBuf,
    },
    /// Run the acceptance corpus.
    Selftest,
}

#[derive(Args, Debug)]
struct Word {
    /// String literal, e.g. `a,b'^-1`.
    #[arg(long, conflicts_with = "band", required_unless_present = "band")]
    string: Option<String>,
    /// Band literal, e.g. `a,b,ab'^-1,a',b',a'b^-1`.
    #[arg(long, requires = "jordan")]
    band: Option<String>,
    /// Band parameter `λ,n`: the Jordan block of size n at λ.
    #[arg(long)]
    jordan: Option<String>,
}

#[derive(Args, Debug)]
struct OptWord {
    #[arg(long, conflicts_with = "band")]
    string: Option<String>,
    #[arg(long, requires = "jordan")]
    band: Option<String>,
    #[arg(long)]
    jordan: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    Lexicographic,
    Reversed,
}

#[derive(Debug)]
enum Failure {
    Validation(String),
    Usage(String),
    Internal(String),
}

type Outcome = Result<(), Failure>;

fn validation(e: impl std::fmt::Display) -> Failure {
    Failure::Validation(e.to_string())
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn internal(e: impl std::fmt::Display) -> Failure {
    Failure::Internal(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        return std::io::read_to_string(std::io::stdin()).map_err(|e| usage(format!("stdin: {e}")));
    }
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    if path == Path::new("-") {
        print!("{text}");
        return Ok(());
    }
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Arc<GentleAlgebra>, Failure> {
    let text = read(path)?;
    GentleAlgebra::parse(&text)
        .map(Arc::new)
        .map_err(|e| validation(format!("{}: {e}", path.display())))
}

fn scalar<F: FiniteField>(s: &str) -> Result<F, Failure> {
    F::parse(s.trim()).ok_or_else(|| usage(format!("invalid scalar `{s}`")))
}

fn jordan<F: FiniteField>(text: &str) -> Result<Matrix<F>, Failure> {
    let (l, n) = text
        .split_once(',')
        .ok_or_else(|| usage(format!("expected `λ,n`, got `{text}`")))?;
    let lambda = scalar::<F>(l)?;
    let n: usize = n
        .trim()
        .parse()
        .map_err(|_| usage(format!("invalid Jordan size `{n}`")))?;
    if lambda.is_zero() || n == 0 {
        return Err(usage(
            "band parameter must be a nonzero eigenvalue with size ≥ 1",
        ));
    }
    jordan_block(lambda, n).map_err(usage)
}

enum Parsed<F> {
    String(HomotopyString),
    Band(HomotopyBand, Matrix<F>),
}

fn parse_word<F: FiniteField>(
    alg: &GentleAlgebra,
    string: Option<&str>,
    band: Option<&str>,
    j: Option<&str>,
) -> Result<Option<Parsed<F>>, Failure> {
    match (string, band) {
        (Some(s), _) => HomotopyString::parse(alg, s)
            .map(|s| Some(Parsed::String(s)))
            .map_err(validation),
        (None, Some(b)) => {
            let b = HomotopyBand::parse(alg, b).map_err(validation)?;
            let j = jordan(j.ok_or_else(|| usage("--band needs --jordan"))?)?;
            Ok(Some(Parsed::Band(b, j)))
        }
        (None, None) => Ok(None),
    }
}

fn build<F: FiniteField>(
    alg: &Arc<GentleAlgebra>,
    w: &Parsed<F>,
) -> Result<DifferentialModule<F>, Failure> {
    match w {
        Parsed::String(s) => Ok(string_object(alg, s)),
        Parsed::Band(b, j) => band_object(alg, b, j).map_err(validation),
    }
}

fn format_matrix<F: FiniteField>(m: &Matrix<F>) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|r| {
            let row: Vec<String> = m.row(r).iter().map(|x| x.to_string()).collect();
            row.join(" ")
        })
        .collect();
    format!("[{}]", rows.join("; "))
}

struct Session {
    seed: u64,
    exec: Exec,
}

impl Session {
    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn run<F: FiniteField>(&self, command: Command) -> Outcome {
        match command {
            Command::Validate { algebra } => {
                let alg = load(&algebra)?;
                println!("gentle, finite global dimension, dim {}", alg.dimension());
                Ok(())
            }
            Command::Info { algebra } => {
                let alg = load(&algebra)?;
                let inv = Surface::build(&alg).invariants();
                println!(
                    "algebra: {} vertices, {} arrows, {} relations, dim {}",
                    alg.vertex_count(),
                    alg.quiver().arrows().len(),
                    alg.relations().len(),
                    alg.dimension()
                );
                println!(
                    "trivial extension: dim {}",
                    alg.trivial_extension().dimension()
                );
                let names = |ps: &[usize]| -> String {
                    let v: Vec<&str> = ps.iter().map(|&p| alg.path_name(p)).collect();
                    v.join(" ")
                };
                println!("maximal paths: {}", names(alg.maximal_paths_alg()));
                println!("polygons: {}", names(alg.maximal_paths_geo()));
                println!(
                    "surface: genus {}, boundary {}, marked points {}",
                    inv.genus, inv.boundary_components, inv.marked_points
                );
                println!("euler characteristic: {}", inv.euler_characteristic);
                Ok(())
            }
            Command::Enumerate {
                algebra,
                strings,
                max_letters,
                ..
            } => {
                let alg = load(&algebra)?;
                let lines: Vec<String> = if strings {
                    enumerate_strings(&alg, max_letters, self.exec)
                        .iter()
                        .map(|s| s.display(&alg))
                        .collect()
                } else {
                    enumerate_bands(&alg, max_letters, self.exec)
                        .iter()
                        .map(|b| b.display(&alg))
                        .collect()
                };
                for l in &lines {
                    println!("{l}");
                }
                eprintln!(
                    "{} {}",
                    lines.len(),
                    if strings { "strings" } else { "bands" }
                );
                Ok(())
            }
            Command::Object {
                algebra,
                word,
                dump,
            } => {
                let alg = load(&algebra)?;
                let w = parse_word::<F>(
                    &alg,
                    word.string.as_deref(),
                    word.band.as_deref(),
                    word.jordan.as_deref(),
                )?
                .ok_or_else(|| usage("--string or --band required"))?;
                let m = build(&alg, &w)?;
                match dump {
                    Some(p) => write(&p, &m.to_dump()),
                    None => {
                        let dims: Vec<String> = m
                            .multiplicities()
                            .iter()
                            .enumerate()
                            .map(|(v, d)| format!("{}={d}", alg.vertex_name(v)))
                            .collect();
                        println!("multiplicities: {}", dims.join(" "));
                        println!("dimension: {}", m.total_dim());
                        println!("rank of φ: {}", m.rank());
                        Ok(())
                    }
                }
            }
            Command::Decompose {
                algebra,
                input,
                dumps,
            } => {
                let alg = load(&algebra)?;
                let m = DifferentialModule::<F>::from_dump(alg.clone(), &read(&input)?)
                    .map_err(validation)?;
                let (radical, contractible) = split_projectives(&m);
                for (v, &k) in contractible.iter().enumerate() {
                    if k > 0 {
                        println!("contractible: {k} × P_{}⊗A⋉", alg.vertex_name(v));
                    }
                }
                let parts = decompose(&radical, &mut self.rng(), &Options::default())
                    .map_err(validation)?;
                println!("summands: {}", parts.len());
                for (i, p) in parts.iter().enumerate() {
                    println!(
                        "summand {i}: multiplicities {:?}, rank {}",
                        p.multiplicities(),
                        p.rank()
                    );
                    if dumps {
                        print!("{}", p.to_dump());
                    }
                }
                Ok(())
            }
            Command::Grade { algebra, word } => {
                let alg = load(&algebra)?;
                match parse_word::<F>(
                    &alg,
                    word.string.as_deref(),
                    word.band.as_deref(),
                    word.jordan.as_deref(),
                )? {
                    Some(Parsed::String(s)) => {
                        let mu: Vec<String> = s.grading(0).iter().map(i64::to_string).collect();
                        println!("grading: {}", mu.join(" "));
                    }
                    Some(Parsed::Band(b, _)) => {
                        println!("winding: {}", b.winding());
                        println!("gradable: {}", b.grading(0).is_some());
                    }
                    None => return Err(usage("--string or --band required")),
                }
                Ok(())
            }
            Command::Twist {
                algebra,
                word,
                lambda,
            } => {
                let alg = load(&algebra)?;
                let lambda = scalar::<F>(&lambda)?;
                if lambda.is_zero() {
                    return Err(usage("twist scalar must be nonzero"));
                }
                let w = parse_word::<F>(
                    &alg,
                    word.string.as_deref(),
                    word.band.as_deref(),
                    word.jordan.as_deref(),
                )?
                .ok_or_else(|| usage("--string or --band required"))?;
                let m = build(&alg, &w)?;
                let twisted = m.twist(&lambda).map_err(validation)?;
                let (target, label) = match &w {
                    Parsed::String(_) => (m, "the same string object".to_string()),
                    Parsed::Band(b, j) => {
                        let j2 = twist_target(b, j, &lambda);
                        let label = format!("band parameter {}", format_matrix(&j2));
                        (band_object(&alg, b, &j2).map_err(internal)?, label)
                    }
                };
                let iso = is_isomorphic(&twisted, &target, &mut self.rng(), &Options::default())
                    .map_err(internal)?;
                if !iso {
                    return Err(internal("twist does not match its predicted target"));
                }
                println!("twist: {label}");
                Ok(())
            }
            Command::Matrixify {
                algebra,
                word,
                input,
                order,
            } => {
                let alg = load(&algebra)?;
                let order = match order {
                    OrderArg::Lexicographic => MaxOrder::Lexicographic,
                    OrderArg::Reversed => MaxOrder::Reversed,
                };
                let y = OrderedSetY::new(&alg, order);
                let w = parse_word::<F>(
                    &alg,
                    word.string.as_deref(),
                    word.band.as_deref(),
                    word.jordan.as_deref(),
                )?;
                let matrix = match (w, input) {
                    (Some(Parsed::String(s)), _) => b_string(&y, &gamma(&y, &alg, &s)),
                    (Some(Parsed::Band(b, j)), _) => {
                        b_band(&y, &gamma_b(&y, &alg, &b), &j).map_err(validation)?
                    }
                    (None, Some(p)) => {
                        let m = DifferentialModule::<F>::from_dump(alg.clone(), &read(&p)?)
                            .map_err(validation)?;
                        g_object(&y, &m).map_err(validation)?
                    }
                    (None, None) => return Err(usage("--string, --band or --input required")),
                };
                print!("{}", matrix.to_dump(&y));
                Ok(())
            }
            Command::Render { algebra, svg_out } => {
                let text = read(&algebra)?;
                let alg = GentleAlgebra::parse(&text).map_err(validation)?;
                write(&svg_out, &Surface::build(&alg).render_svg(&alg))
            }
            Command::Selftest => {
                let cfg = Config {
                    exec: self.exec,
                    seed: self.seed,
                    ..Config::default()
                };
                let checks = run_each(&cfg, |c| println!("{}", c.line()));
                let passed = checks
                    .iter()
                    .filter(|c| c.passed && c.seconds <= c.budget_seconds)
                    .count();
                println!("selftest: {passed} of {} criteria passed", checks.len());
                if passed == checks.len() {
                    Ok(())
                } else {
                    Err(Failure::Validation("selftest failed".into()))
                }
            }
        }
    }
}

fn dispatch(cli: Cli) -> Outcome {
    let session = Session {
        seed: cli.seed,
        exec: Exec::with_jobs(cli.jobs),
    };
    match cli.prime {
        2 => session.run::<F2>(cli.command),
        3 => session.run::<F3>(cli.command),
        5 => session.run::<F5>(cli.command),
        7 => session.run::<F7>(cli.command),
        p => Err(usage(format!(
            "unsupported prime {p} (expected 2, 3, 5 or 7)"
        ))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = panic::catch_unwind(|| dispatch(cli)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| p.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "panic".into());
        Err(Failure::Internal(msg))
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error (this is a bug): {m}");
            ExitCode::from(3)
        }
    }
}
