use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use posfo_core::classify::{canon_report, classification_table, cross_check_table, render_csv};
use posfo_core::reduce::{gadget, interpret_gadget, GadgetError, RewriteError};
use posfo_core::structure::catalog;
use posfo_core::{
    classify_boolean, classify_digraph, evaluate, parse_formula, parse_structure, reduce_sentence, render_structure,
    run_suite, ClassifyError, Digraph, EvalError, Fragment, ParseError, RewriteRule, Signature, Structure,
    StructureError, Suite, VerifyOptions,
};

#[derive(Parser)]
#[command(
    name = "posfo",
    version,
    about = "Positive equality-free first-order logic on small structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a sentence on a structure; prints true or false.
    Eval {
        /// Structure file, or `catalog:NAME`.
        structure: String,
        #[command(flatten)]
        formula: FormulaSource,
        /// Connectives allowed in the sentence.
        #[arg(long, value_enum, default_value_t = FragmentArg::Positive)]
        fragment: FragmentArg,
    },
    /// Classify a structure and print the verdict with its certificate.
    Classify {
        #[arg(value_enum)]
        kind: Kind,
        /// Structure file, or `catalog:NAME`.
        structure: String,
        #[arg(long)]
        json: bool,
    },
    /// Rewrite a sentence by a reduction rule.
    Reduce {
        /// dual, symclos, doub, tranclos:N, tranclos-printed:N, nae-to-k2 or gadget:NAME.
        #[arg(long)]
        rule: String,
        #[command(flatten)]
        formula: FormulaSource,
    },
    /// Interpret a catalog gadget on a structure and print the defined digraph.
    Define {
        /// Structure file, or `catalog:NAME`.
        structure: String,
        #[arg(long)]
        gadget: String,
    },
    /// Print the forall-canons, exists-canons and good pairs of a digraph.
    Canons {
        /// Structure file, or `catalog:NAME`.
        structure: String,
        #[arg(long)]
        json: bool,
    },
    /// Classify every digraph on a given number of vertices.
    Table {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        up_to_iso: bool,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Run verification suites.
    Verify {
        /// canon-lemma, duality, nae-to-k2, closures, boolean-gadgets, digraph-gadgets,
        /// twins, good-pair, cross-classifier or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct FormulaSource {
    /// The sentence, inline.
    formula: Option<String>,
    /// Read the sentence from a file instead.
    #[arg(long = "formula-file")]
    formula_file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FragmentArg {
    Positive,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Boolean,
    Digraph,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Display) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }

    fn semantic(message: impl Display) -> Self {
        Failure {
            code: 3,
            message: message.to_string(),
        }
    }

    fn verification(message: impl Display) -> Self {
        Failure {
            code: 1,
            message: message.to_string(),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        if e.is_syntax() {
            Failure::parse(e)
        } else {
            Failure::semantic(e)
        }
    }
}

impl From<StructureError> for Failure {
    fn from(e: StructureError) -> Self {
        if e.is_syntax() {
            Failure::parse(e)
        } else {
            Failure::semantic(e)
        }
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        Failure::semantic(e)
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Internal(_) => Failure::verification(e),
            _ => Failure::semantic(e),
        }
    }
}

impl From<GadgetError> for Failure {
    fn from(e: GadgetError) -> Self {
        if e.is_syntax() {
            Failure::parse(e)
        } else {
            Failure::semantic(e)
        }
    }
}

impl From<RewriteError> for Failure {
    fn from(e: RewriteError) -> Self {
        Failure::semantic(e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn load_structure(source: &str) -> Result<Structure, Failure> {
    if let Some(name) = source.strip_prefix("catalog:") {
        return catalog(name).map(|e| e.structure).map_err(Failure::semantic);
    }
    Ok(parse_structure(&read(Path::new(source))?)?)
}

fn formula_text(src: &FormulaSource) -> Result<String, Failure> {
    match (&src.formula, &src.formula_file) {
        (Some(f), None) => Ok(f.clone()),
        (None, Some(p)) => read(p),
        _ => unreachable!("clap enforces exactly one formula source"),
    }
}

fn to_json(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

/// Signature a rule's input sentences are written over.
fn input_signature(rule: &RewriteRule) -> Result<Signature, Failure> {
    let target = match rule {
        RewriteRule::NaeToK2 => "NAE-to-K2",
        RewriteRule::Gadget(name) => name.as_str(),
        _ => return Ok(Signature::digraph()),
    };
    let g = gadget(target)?.gadget;
    let expected = g.expected.as_deref().unwrap_or("K2");
    Ok(catalog(expected)
        .map_err(Failure::semantic)?
        .structure
        .signature()
        .clone())
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Eval {
            structure,
            formula,
            fragment,
        } => {
            let s = load_structure(&structure)?;
            let frag = match fragment {
                FragmentArg::Positive => Fragment::POSITIVE,
                FragmentArg::Full => Fragment::EQUALITY_FREE,
            };
            let f = parse_formula(&formula_text(&formula)?, s.signature(), frag)?;
            Ok(format!("{}\n", evaluate(&s, &f)?))
        }
        Command::Classify { kind, structure, json } => {
            let s = load_structure(&structure)?;
            let cert = match kind {
                Kind::Boolean => classify_boolean(&s)?,
                Kind::Digraph => {
                    let g = Digraph::from_structure(&s).map_err(Failure::semantic)?;
                    classify_digraph(&g)?
                }
            };
            if let Err(e) = cert.check(&s) {
                return Err(Failure::verification(format!("certificate does not check: {e}")));
            }
            if json {
                Ok(to_json(&cert))
            } else {
                Ok(format!("{}\n{}", cert.verdict, cert.to_text()))
            }
        }
        Command::Reduce { rule, formula } => {
            let rule: RewriteRule = rule.parse()?;
            let sig = input_signature(&rule)?;
            let f = parse_formula(&formula_text(&formula)?, &sig, Fragment::EQUALITY_FREE)?;
            Ok(format!("{}\n", reduce_sentence(&rule, &f)?))
        }
        Command::Define {
            structure,
            gadget: name,
        } => {
            let s = load_structure(&structure)?;
            let g = gadget(&name)?.gadget;
            let d = interpret_gadget(&s, &g)?;
            Ok(render_structure(&d.to_structure()))
        }
        Command::Canons { structure, json } => {
            let s = load_structure(&structure)?;
            let g = Digraph::from_structure(&s).map_err(Failure::semantic)?;
            let r = canon_report(&g);
            if json {
                return Ok(to_json(&r));
            }
            let list = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
            let pairs: Vec<String> = r.good_pairs.iter().map(|(x, y)| format!("({x},{y})")).collect();
            Ok(format!(
                "forall-canons: {}\nexists-canons: {}\ngood-pairs: {}\n",
                list(&r.forall_canons),
                list(&r.exists_canons),
                pairs.join(" ")
            ))
        }
        Command::Table {
            size,
            up_to_iso,
            format,
        } => {
            let problems = cross_check_table(size).map_err(Failure::semantic)?;
            if !problems.is_empty() {
                return Err(Failure::verification(problems.join("\n")));
            }
            let rows = classification_table(size, up_to_iso)?;
            Ok(match format {
                TableFormat::Csv => render_csv(&rows),
                TableFormat::Json => to_json(&rows),
            })
        }
        Command::Verify { suite, seed, json } => {
            let suites = Suite::parse_list(&suite).map_err(Failure::semantic)?;
            let opts = VerifyOptions::with_seed(seed);
            let reports: Vec<_> = suites.into_iter().map(|s| run_suite(s, &opts)).collect();
            let out = if json {
                to_json(&reports)
            } else {
                reports.iter().map(|r| r.to_text()).collect()
            };
            if reports.iter().all(|r| r.passed()) {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::verification("verification failed"))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
