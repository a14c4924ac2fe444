//! `amlowl`: batch translation between OWL class expressions and AML
//! concept models.
//!
//! Exit codes: 0 success, 1 syntax or schema error in the input, 2 improper,
//! uncovered or non-round-tripping input, 3 I/O failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use amlowl_core::caex::{read_xml, render_models, write_xml, CaexError, ConceptModelDocument};
use amlowl_core::concept_tree::render_ascii;
use amlowl_core::owl_expr::{check_proper, nnf, parse, print, ClassExpression, ParseError};
use amlowl_core::testkit::{gen_proper_class, gen_proper_document, GenConfig};
use amlowl_core::translator::{
    canonicalize, normalize, trans_b, trans_f, trans_f_with_trees, TranslateError,
};

#[derive(Parser)]
#[command(
    name = "amlowl",
    version,
    about = "Translate between OWL classes and AML concept models"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Class expression file to concept-model XML.
    Forward {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Concept-model XML to a class expression.
    Backward {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Translate forth and back and compare canonical forms.
    Roundtrip {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Report properness violations of a class or a concept-model document.
    Check {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Show a class or document as concept trees, text or XML.
    Render {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long, value_enum, default_value_t = Format::Tree)]
        format: Format,
    },
    /// Round-trip generated classes and documents.
    Fuzz {
        #[arg(long, default_value_t = 1000)]
        cases: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tree,
    Text,
    Xml,
}

enum Failure {
    Syntax(String),
    Improper(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Syntax(_) => 1,
            Failure::Improper(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Syntax(m) | Failure::Improper(m) | Failure::Io(m) => m,
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::UncoveredConstructor { .. } => Failure::Improper(e.to_string()),
            ParseError::Syntax { .. } => Failure::Syntax(e.to_string()),
        }
    }
}

impl From<CaexError> for Failure {
    fn from(e: CaexError) -> Self {
        Failure::Syntax(e.to_string())
    }
}

impl From<TranslateError> for Failure {
    fn from(e: TranslateError) -> Self {
        Failure::Improper(match e {
            TranslateError::ImproperClass(v) => v
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("\n"),
            TranslateError::ImproperModel(r) => r
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join("\n"),
            other => other.to_string(),
        })
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    String::from_utf8(read(path)?).map_err(|e| Failure::Syntax(format!("{}: {e}", path.display())))
}

fn is_xml(bytes: &[u8]) -> bool {
    bytes.iter().find(|b| !b.is_ascii_whitespace()) == Some(&b'<')
}

fn read_class(path: &Path) -> Result<ClassExpression, Failure> {
    Ok(parse(&read_text(path)?)?)
}

fn read_document(path: &Path) -> Result<ConceptModelDocument, Failure> {
    Ok(read_xml(&read(path)?)?)
}

fn stem(path: &Path) -> Option<String> {
    path.file_stem().map(|s| s.to_string_lossy().into_owned())
}

fn xml_string(doc: &ConceptModelDocument) -> Result<String, Failure> {
    let bytes = write_xml(doc)?;
    String::from_utf8(bytes).map_err(|e| Failure::Io(e.to_string()))
}

fn emit(output: Option<&Path>, text: String) -> Outcome {
    match output {
        Some(p) => {
            fs::write(p, &text).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn color() -> bool {
    std::env::var("AMLOWL_COLOR").is_ok_and(|v| v == "1")
}

fn forward(input: &Path, output: Option<&Path>) -> Outcome {
    let ce = read_class(input)?;
    let mut doc = trans_f(&ce)?;
    doc.source_class_name = stem(input);
    emit(output, xml_string(&doc)?)
}

fn backward(input: &Path, output: Option<&Path>) -> Outcome {
    let doc = read_document(input)?;
    let ce = trans_b(&doc)?;
    emit(output, format!("{}\n", print(&ce)))
}

fn roundtrip(input: &Path) -> Outcome {
    let ce = read_class(input)?;
    let back = trans_b(&trans_f(&ce)?)?;
    let (a, b) = (canonicalize(&ce)?, canonicalize(&back)?);
    let report = format!(
        "input:    {}\nreturned: {}\n",
        print(&nnf(&ce).map_err(TranslateError::from)?),
        print(&back)
    );
    if a == b {
        Ok(format!("{report}round trip: ok\n"))
    } else {
        Err(Failure::Improper(format!(
            "{report}round trip: canonical forms differ"
        )))
    }
}

fn check(input: &Path) -> Outcome {
    let bytes = read(input)?;
    if is_xml(&bytes) {
        let doc = read_xml(&bytes)?;
        let mut out = String::new();
        for (i, m) in doc.models.iter().enumerate() {
            out.push_str(&format!("model {i}: {} primary\n", m.primary_count()));
        }
        return if doc.is_proper() {
            Ok(out + "proper\n")
        } else {
            Err(Failure::Improper(
                out + "improper: every model needs exactly one primary element",
            ))
        };
    }
    let text = String::from_utf8(bytes).map_err(|e| Failure::Syntax(e.to_string()))?;
    let ce = nnf(&parse(&text)?).map_err(TranslateError::from)?;
    let violations = check_proper(&ce);
    if violations.is_empty() {
        Ok("proper\n".into())
    } else {
        Err(TranslateError::ImproperClass(violations).into())
    }
}

fn render(input: &Path, format: Format) -> Outcome {
    let bytes = read(input)?;
    if is_xml(&bytes) {
        let doc = read_xml(&bytes)?;
        return match format {
            Format::Tree => Ok(render_models(&doc, color())),
            Format::Text => Ok(format!("{}\n", print(&trans_b(&doc)?))),
            Format::Xml => xml_string(&normalize(&doc)),
        };
    }
    let text = String::from_utf8(bytes).map_err(|e| Failure::Syntax(e.to_string()))?;
    let ce = parse(&text)?;
    match format {
        Format::Text => Ok(format!(
            "{}\n",
            print(&nnf(&ce).map_err(TranslateError::from)?)
        )),
        Format::Tree => {
            let (_, trees) = trans_f_with_trees(&ce)?;
            let mut out = String::new();
            for (i, t) in trees.iter().enumerate() {
                if trees.len() > 1 {
                    out.push_str(&format!("tree {}\n", i + 1));
                }
                out.push_str(&render_ascii(t));
            }
            Ok(out)
        }
        Format::Xml => {
            let mut doc = trans_f(&ce)?;
            doc.source_class_name = stem(input);
            xml_string(&doc)
        }
    }
}

fn fuzz_case(seed: u64) -> Vec<String> {
    let cfg = GenConfig::with_seed(seed);
    let mut problems = Vec::new();
    let ce = gen_proper_class(&cfg);
    let class_trip = trans_f(&ce)
        .and_then(|d| trans_b(&d))
        .and_then(|back| Ok(canonicalize(&back)? == canonicalize(&ce)?));
    match class_trip {
        Ok(true) => {}
        Ok(false) => problems.push(format!(
            "seed {seed}: class round trip differs: {}",
            print(&ce)
        )),
        Err(e) => problems.push(format!("seed {seed}: class {}: {e}", print(&ce))),
    }
    let doc = gen_proper_document(&cfg);
    let doc_trip = trans_b(&doc)
        .and_then(|c| trans_f(&c))
        .and_then(|d| Ok(write_xml(&d)? == write_xml(&normalize(&doc))?));
    match doc_trip {
        Ok(true) => {}
        Ok(false) => problems.push(format!(
            "seed {seed}: document round trip is not byte-identical"
        )),
        Err(e) => problems.push(format!("seed {seed}: document: {e}")),
    }
    problems
}

fn fuzz(cases: u64, seed: u64) -> Outcome {
    let end = seed.saturating_add(cases);
    let results: Vec<Vec<String>> = (seed..end).into_par_iter().map(fuzz_case).collect();
    let failures: Vec<&String> = results.iter().flatten().collect();
    let mut out = String::new();
    for f in &failures {
        out.push_str(f);
        out.push('\n');
    }
    out.push_str(&format!(
        "fuzz: {cases} cases from seed {seed}, {} failures",
        failures.len()
    ));
    if failures.is_empty() {
        Ok(out + "\n")
    } else {
        Err(Failure::Improper(out))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.verb {
        Verb::Forward { input, output } => forward(&input, output.as_deref()),
        Verb::Backward { input, output } => backward(&input, output.as_deref()),
        Verb::Roundtrip { input } => roundtrip(&input),
        Verb::Check { input } => check(&input),
        Verb::Render { input, format } => render(&input, format),
        Verb::Fuzz { cases, seed } => fuzz(cases, seed),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}", f.message());
            ExitCode::from(f.code())
        }
    }
}
