//! `maml`: validate, format, transpile, translate and analyze.
//!
//! Exit status is 0 on success, 1 when the input is rejected and 2 for
//! usage or IO errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use maml_core::parser::parse_document_with;
use maml_core::{
    compare, compile_document, load_document, report_bytes, serialize_document, translate_snapshot, validate_document,
    CompileError, Diagnostic, LayoutSnapshot, LoadedDocument, Mode, ParseError, ParseOptions,
};

#[derive(Parser, Debug)]
#[command(name = "maml", version, about = "MAML toolchain")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Global {
    /// Reject unknown properties (default).
    #[arg(long, global = true, conflicts_with = "lenient")]
    strict: bool,
    /// Drop unknown properties with a warning.
    #[arg(long, global = true)]
    lenient: bool,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
}

impl Global {
    fn options(&self) -> ParseOptions {
        let mut opts = ParseOptions::default();
        if self.lenient {
            opts.mode = Mode::Lenient;
        }
        opts
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check one or more .maml files.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Rewrite a .maml file in canonical form.
    Fmt {
        file: PathBuf,
        /// Report whether the file is canonical without writing.
        #[arg(long)]
        check: bool,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Compile a .maml file to a standalone HTML page.
    Transpile {
        file: PathBuf,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
        /// Also write `<out>.manifest.json` listing referenced media.
        #[arg(long)]
        emit_manifest: bool,
    },
    /// Convert a layout snapshot into a .maml file.
    Translate {
        snapshot: PathBuf,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Compare the complexity of two HTML pages.
    Analyze { original: PathBuf, maml: PathBuf },
}

/// Exit statuses for rejected input; IO failures surface as `Err`.
const OK: u8 = 0;
const REJECTED: u8 = 1;
const IO_FAILURE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("maml: {e:#}");
            ExitCode::from(IO_FAILURE)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let g = cli.global;
    match &cli.command {
        Command::Validate { files } => {
            let mut status = OK;
            let mut report = Vec::new();
            for file in files {
                status = status.max(validate(file, g, &mut report)?);
            }
            if g.json {
                emit(&format!("{}\n", serde_json::Value::Array(report)));
            }
            Ok(status)
        }
        Command::Fmt { file, check, out } => fmt(file, *check, out.as_deref(), g),
        Command::Transpile { file, out, emit_manifest } => {
            let out = out.clone().unwrap_or_else(|| file.with_extension("html"));
            transpile(file, &out, *emit_manifest, g)
        }
        Command::Translate { snapshot, out } => {
            let out = out.clone().unwrap_or_else(|| snapshot.with_extension("maml"));
            translate(snapshot, &out)
        }
        Command::Analyze { original, maml } => analyze(original, maml, g),
    }
}

/// Prints to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Writes through a temporary file in the target directory so a failed
/// run never leaves a truncated artifact.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("cannot create a temporary file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

fn diag_json(file: &Path, line: usize, severity: &str, code: &str, message: &str) -> serde_json::Value {
    serde_json::json!({
        "file": file.display().to_string(),
        "line": line,
        "severity": severity,
        "code": code,
        "message": message,
    })
}

fn parse_error_line(e: &ParseError) -> usize {
    match e {
        ParseError::MalformedHeader { line, .. } | ParseError::MalformedLine { line, .. } => *line,
        _ => 1,
    }
}

fn print_parse_error(file: &Path, e: &ParseError) {
    match e {
        ParseError::Invalid(diags) => {
            for d in diags {
                eprintln!("{}:{}: {d}", file.display(), d.line.unwrap_or(1));
            }
        }
        ParseError::MalformedHeader { cause, .. } | ParseError::MalformedLine { cause, .. } => {
            eprintln!("{}:{}: error: syntax: {cause}", file.display(), parse_error_line(e));
        }
        ParseError::TooLarge { .. } => eprintln!("{}:1: error: too-large: {e}", file.display()),
    }
}

fn print_diagnostics(file: &Path, loaded: &LoadedDocument) {
    for d in &loaded.diagnostics {
        eprintln!("{}:{}: {d}", file.display(), diagnostic_line(loaded, d));
    }
}

fn diagnostic_line(loaded: &LoadedDocument, d: &Diagnostic) -> usize {
    d.line.or_else(|| d.element.and_then(|i| loaded.element_lines.get(i).copied())).unwrap_or(loaded.header_line)
}

/// Loads `file`, printing diagnostics. `None` means a syntax error was
/// already reported.
fn load(file: &Path, g: Global, json: Option<&mut Vec<serde_json::Value>>) -> Result<Option<LoadedDocument>> {
    let source = read_text(file)?;
    match load_document(&source, g.options()) {
        Ok(loaded) => {
            match json {
                Some(out) => out.extend(loaded.diagnostics.iter().map(|d| {
                    let message = d.kind.to_string();
                    diag_json(file, diagnostic_line(&loaded, d), &d.severity.to_string(), d.kind.code(), &message)
                })),
                None => print_diagnostics(file, &loaded),
            }
            Ok(Some(loaded))
        }
        Err(e) => {
            match json {
                Some(out) => out.push(diag_json(file, parse_error_line(&e), "error", "syntax", &e.to_string())),
                None => print_parse_error(file, &e),
            }
            Ok(None)
        }
    }
}

fn validate(file: &Path, g: Global, report: &mut Vec<serde_json::Value>) -> Result<u8> {
    let loaded = load(file, g, g.json.then_some(report))?;
    Ok(match loaded {
        Some(l) if !l.has_errors() => OK,
        _ => REJECTED,
    })
}

fn fmt(file: &Path, check: bool, out: Option<&Path>, g: Global) -> Result<u8> {
    let source = read_text(file)?;
    let canonical = match parse_document_with(&source, g.options()) {
        Ok(doc) => serialize_document(&doc),
        Err(e) => {
            print_parse_error(file, &e);
            return Ok(REJECTED);
        }
    };
    if check {
        if canonical == source {
            return Ok(OK);
        }
        eprintln!("{}: not in canonical form", file.display());
        return Ok(REJECTED);
    }
    let target = out.unwrap_or(file);
    if target != file || canonical != source {
        write_atomic(target, &canonical)?;
    }
    Ok(OK)
}

fn manifest_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.manifest.json"))
}

fn transpile(file: &Path, out: &Path, emit_manifest: bool, g: Global) -> Result<u8> {
    let Some(loaded) = load(file, g, None)? else { return Ok(REJECTED) };
    if loaded.has_errors() {
        return Ok(REJECTED);
    }
    let page = match compile_document(&loaded.document) {
        Ok(page) => page,
        Err(CompileError::Invalid(diags)) => {
            for d in &diags {
                eprintln!("{}:{}: {d}", file.display(), diagnostic_line(&loaded, d));
            }
            return Ok(REJECTED);
        }
    };
    write_atomic(out, &page.text)?;
    if emit_manifest {
        write_atomic(&manifest_path(out), &(page.manifest_json() + "\n"))?;
    }
    Ok(OK)
}

fn translate(snapshot: &Path, out: &Path) -> Result<u8> {
    let text = read_text(snapshot)?;
    let snap = match LayoutSnapshot::from_json(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{}: error: snapshot: {e}", snapshot.display());
            return Ok(REJECTED);
        }
    };
    let t = translate_snapshot(&snap);
    for w in &t.warnings {
        eprintln!("{}: warning: translate: {w}", snapshot.display());
    }
    let errors: Vec<Diagnostic> = validate_document(&t.document).into_iter().filter(Diagnostic::is_error).collect();
    if !errors.is_empty() {
        for d in &errors {
            eprintln!("{}: {d}", snapshot.display());
        }
        return Ok(REJECTED);
    }
    write_atomic(out, &serialize_document(&t.document))?;
    Ok(OK)
}

fn analyze(original: &Path, maml: &Path, g: Global) -> Result<u8> {
    let mut reports = Vec::with_capacity(2);
    for path in [original, maml] {
        let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
        match report_bytes(&bytes) {
            Ok(r) => reports.push(r),
            Err(e) => {
                eprintln!("{}: error: analyze: {e}", path.display());
                return Ok(REJECTED);
            }
        }
    }
    let delta = compare(&reports[0], &reports[1]);
    if g.json {
        emit(&(delta.to_json() + "\n"));
    } else {
        emit(&delta.to_string());
    }
    Ok(OK)
}
