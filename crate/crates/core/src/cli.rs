//! The `aaut` command line. [`run`] does all the work and never prints, so
//! the binary only forwards its result.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::conjugacy::{conjugate, conjugate_in_v, ConjugatorSearch, Witness};
use crate::dynamics::{dynamics_report, eh_decompose, is_elliptic, is_hyperbolic};
use crate::element::{make_revealing, Element};
use crate::error::Error;
use crate::format::{parse_element, write_element, write_pair};
use crate::random::seeded_element;
use crate::strand::{basic_diagram, diagram_to_revealing_pair, iso, reduce, star_reduce, StrandDiagram};
use crate::tree::TreeParams;

/// Exit code, the single JSON document for stdout, and diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "aaut", version, about = "Conjugacy and dynamics of tree almost automorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical pair, elliptic/hyperbolic flags and dynamics.
    Show { file: PathBuf },
    /// A revealing pair of the element.
    Revealing { file: PathBuf },
    /// The basic diagram of the canonical pair, or a reduced form.
    Diagram {
        file: PathBuf,
        /// Types I, II, III on the basic diagram of the canonical pair.
        #[arg(long, conflicts_with = "star_reduced")]
        reduced: bool,
        /// Types II, I*, III on the basic diagram of a revealing pair.
        #[arg(long)]
        star_reduced: bool,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Decide conjugacy. Exit 0 when conjugate, 1 when not.
    Conj {
        g: PathBuf,
        h: PathBuf,
        #[arg(long, value_enum, default_value = "AAut")]
        arena: ArenaArg,
        /// Also search for a conjugator with at most this many carets.
        #[arg(long, value_name = "N")]
        witness_bound: Option<usize>,
    },
    /// Split into elliptic and hyperbolic factors.
    Eh {
        file: PathBuf,
        #[arg(long, value_name = "PATH")]
        out_elliptic: PathBuf,
        #[arg(long, value_name = "PATH")]
        out_hyperbolic: PathBuf,
    },
    /// Exhaustive conjugator search. Exit 0 when a witness exists.
    Oracle {
        g: PathBuf,
        h: PathBuf,
        #[arg(long)]
        max_carets: usize,
    },
    /// A seeded random element.
    Random {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        carets: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Diagram to revealing pair and back. Exit 0 when the diagrams agree.
    Roundtrip { file: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ArenaArg {
    #[value(name = "V")]
    V,
    #[value(name = "AAut")]
    AAut,
}

/// Failure of a command, with its exit code.
struct Failure {
    code: i32,
    kind: &'static str,
    error: String,
    position: Option<(usize, usize)>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let position = match &e {
            Error::Format { line, column, .. } => Some((*line, *column)),
            _ => None,
        };
        let (code, kind) = match &e {
            Error::Format { .. } => (EXIT_INPUT, "format"),
            Error::Internal(_) => (EXIT_INTERNAL, "internal"),
            _ => (EXIT_INPUT, "input"),
        };
        Failure {
            code,
            kind,
            error: e.to_string(),
            position,
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_INPUT,
        kind: "io",
        error: format!("{}: {e}", path.display()),
        position: None,
    }
}

fn internal(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INTERNAL,
        kind: "internal",
        error: message.into(),
        position: None,
    }
}

type Outcome = std::result::Result<(i32, Value), Failure>;

/// Runs one command line; `args` includes the program name.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandResult {
                    exit_code: EXIT_YES,
                    stdout: render(&json!({ "help": text })),
                    stderr: String::new(),
                },
                _ => CommandResult {
                    exit_code: EXIT_INPUT,
                    stdout: render(&json!({ "error": { "kind": "usage", "message": text.trim_end() } })),
                    stderr: text,
                },
            };
        }
    };
    let outcome = std::panic::catch_unwind(|| dispatch(cli.command))
        .unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(internal(msg))
        });
    match outcome {
        Ok((code, value)) => CommandResult {
            exit_code: code,
            stdout: render(&value),
            stderr: String::new(),
        },
        Err(f) => {
            let mut err = json!({ "kind": f.kind, "message": f.error });
            if let Some((line, column)) = f.position {
                err["line"] = json!(line);
                err["column"] = json!(column);
            }
            CommandResult {
                exit_code: f.code,
                stdout: render(&json!({ "error": err })),
                stderr: format!("aaut: {}\n", f.error),
            }
        }
    }
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn read_element(path: &Path) -> std::result::Result<Element, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    parse_element(&text).map_err(|e| {
        let mut f = Failure::from(e);
        f.error = format!("{}: {}", path.display(), f.error);
        f
    })
}

fn write_file(path: &Path, contents: &str) -> std::result::Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| io_failure(path, e))
}

fn element_json(g: &Element) -> Value {
    let p = g.params();
    json!({
        "d": p.d,
        "k": p.k,
        "carets": g.caret_count(),
        "map": g.pair().map().iter().map(|(a, b)| json!([a.to_string(), b.to_string()])).collect::<Vec<_>>(),
        "text": write_element(g),
    })
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Show { file } => {
            let g = read_element(&file)?;
            Ok((
                EXIT_YES,
                json!({
                    "element": element_json(&g),
                    "elliptic": is_elliptic(&g)?,
                    "hyperbolic": is_hyperbolic(&g)?,
                    "open_conjugacy_class": crate::conjugacy::has_open_conjugacy_class(&g)?,
                    "dynamics": dynamics_report(&g)?,
                }),
            ))
        }
        Command::Revealing { file } => {
            let g = read_element(&file)?;
            let p = make_revealing(&g)?;
            if !p.is_revealing() || p.canonicalize() != g {
                return Err(internal("revealing pair post-check failed"));
            }
            Ok((
                EXIT_YES,
                json!({
                    "revealing": true,
                    "leaves": p.domain().leaf_count(),
                    "text": write_pair(&p),
                }),
            ))
        }
        Command::Diagram {
            file,
            reduced,
            star_reduced,
            dot,
            json: json_path,
        } => {
            let g = read_element(&file)?;
            let (form, dgm) = if star_reduced {
                ("star-reduced", star_reduce(&basic_diagram(&make_revealing(&g)?)))
            } else if reduced {
                ("reduced", reduce(&basic_diagram(g.pair())))
            } else {
                ("basic", basic_diagram(g.pair()))
            };
            dgm.validate().map_err(internal)?;
            let dj = serde_json::to_value(dgm.to_json()).expect("diagram serializes");
            if let Some(path) = &dot {
                write_file(path, &dgm.to_dot())?;
            }
            if let Some(path) = &json_path {
                write_file(path, &render(&dj))?;
            }
            Ok((EXIT_YES, json!({ "form": form, "diagram": dj })))
        }
        Command::Conj {
            g,
            h,
            arena,
            witness_bound,
        } => {
            let (g, h) = (read_element(&g)?, read_element(&h)?);
            let mut verdict = match arena {
                ArenaArg::V => conjugate_in_v(&g, &h)?,
                ArenaArg::AAut => conjugate(&g, &h)?,
            };
            if let Some(n) = witness_bound {
                if n == 0 {
                    return Err(Failure::from(Error::Invalid("--witness-bound must be at least 1".into())));
                }
                verdict.witness = ConjugatorSearch::new(g.params(), n).find(&g, &h)?;
                if let Some(w) = &verdict.witness {
                    if !w.check(&g, &h) {
                        return Err(internal("witness does not conjugate"));
                    }
                    if !verdict.conjugate {
                        return Err(internal("a witness exists but the decision says no"));
                    }
                }
            }
            let code = if verdict.conjugate { EXIT_YES } else { EXIT_NO };
            Ok((code, serde_json::to_value(&verdict).expect("verdict serializes")))
        }
        Command::Eh {
            file,
            out_elliptic,
            out_hyperbolic,
        } => {
            let g = read_element(&file)?;
            let (e, h) = eh_decompose(&g)?;
            write_file(&out_elliptic, &write_element(&e))?;
            write_file(&out_hyperbolic, &write_element(&h))?;
            Ok((
                EXIT_YES,
                json!({
                    "elliptic": element_json(&e),
                    "hyperbolic": element_json(&h),
                }),
            ))
        }
        Command::Oracle { g, h, max_carets } => {
            let (g, h) = (read_element(&g)?, read_element(&h)?);
            if max_carets == 0 {
                return Err(Failure::from(Error::Invalid("--max-carets must be at least 1".into())));
            }
            g.params().check_same(&h.params())?;
            let search = ConjugatorSearch::new(g.params(), max_carets);
            let found: Option<Witness> = search.find(&g, &h)?;
            let code = if found.is_some() { EXIT_YES } else { EXIT_NO };
            Ok((
                code,
                json!({
                    "found": found.is_some(),
                    "max_carets": max_carets,
                    "candidates": search.candidates().len(),
                    "witness": found.map(|w| element_json(&w.conjugator)),
                }),
            ))
        }
        Command::Random {
            d,
            k,
            carets,
            seed,
            out,
        } => {
            let params = TreeParams::new(d, k)?;
            if carets == 0 {
                return Err(Failure::from(Error::Invalid("--carets must be at least 1".into())));
            }
            let g = seeded_element(params, carets, seed);
            if let Some(path) = &out {
                write_file(path, &write_element(&g))?;
            }
            Ok((
                EXIT_YES,
                json!({
                    "seed": seed,
                    "carets": carets,
                    "prng": "ChaCha8",
                    "element": element_json(&g),
                }),
            ))
        }
        Command::Roundtrip { file } => {
            let g = read_element(&file)?;
            let pair = make_revealing(&g)?;
            let dgm = star_reduce(&basic_diagram(&pair));
            let back = diagram_to_revealing_pair(&dgm, g.params())?;
            let again: StrandDiagram = star_reduce(&basic_diagram(&back));
            let same = iso(&again, &dgm, true).is_some();
            Ok((
                if same { EXIT_YES } else { EXIT_NO },
                json!({
                    "iso": same,
                    "revealing": write_pair(&pair),
                    "reconstructed": write_pair(&back),
                    "reconstructed_is_revealing": back.is_revealing(),
                }),
            ))
        }
    }
}
