use std::fmt::Write as _;
use std::io::Read;

use abelian::decompose::{
    decompose, verify_decomposition, DecomposeConfig, DecomposeError, Decomposition, DecompositionRecord,
};
use abelian::groups::{AbelianGroup, GroupSpec};
use abelian::hsp::HspError;
use abelian::intlinalg::{snf, IntMatrix};

use crate::OutputFormat;

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;
pub const EXIT_CAPACITY: u8 = 4;
pub const EXIT_INTERNAL: u8 = 1;

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub seed: u64,
    pub margin_c: u64,
    pub capacity: usize,
    pub retries: u32,
    pub format: OutputFormat,
}

/// Failure with its exit code and whatever was printed before it.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub stdout: String,
    pub message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        CliError {
            code,
            stdout: String::new(),
            message: message.into(),
        }
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    let mut s = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::File::open(path).and_then(|mut f| f.read_to_string(&mut s).map(|_| ()))
    };
    res.map_err(|e| CliError::new(EXIT_USAGE, format!("{path}: {e}")))?;
    Ok(s)
}

fn build_group(spec: &str) -> Result<Box<dyn AbelianGroup>, CliError> {
    spec.parse::<GroupSpec>()
        .and_then(|s| s.build())
        .map_err(|e| CliError::new(EXIT_USAGE, e.to_string()))
}

pub fn cmd_snf(path: &str) -> Result<String, CliError> {
    let text = read_input(path)?;
    let a: IntMatrix = text
        .parse()
        .map_err(|e| CliError::new(EXIT_USAGE, format!("{path}: {e}")))?;
    let s = snf(&a);
    let d: Vec<String> = s.d.iter().map(ToString::to_string).collect();
    let mut out = String::new();
    writeln!(out, "rank = {}", s.rank()).unwrap();
    writeln!(out, "d = {}", d.join(" ")).unwrap();
    write!(out, "u =\n{}", s.u).unwrap();
    write!(out, "v =\n{}", s.v).unwrap();
    if s.certifies(&a) {
        writeln!(out, "check: u * A * v == diag(d): ok").unwrap();
        Ok(out)
    } else {
        writeln!(out, "check: u * A * v == diag(d): FAILED").unwrap();
        Err(CliError {
            code: EXIT_VERIFY,
            stdout: out,
            message: "normal form certificate did not verify".into(),
        })
    }
}

fn render_text(group: &dyn AbelianGroup, dec: &Decomposition, verdict: &Result<(), String>) -> String {
    let mut out = String::new();
    writeln!(out, "group: {}", group.descriptor()).unwrap();
    writeln!(out, "order: {}", dec.group_order).unwrap();
    writeln!(out, "summands: {}", dec.summands.len()).unwrap();
    for s in &dec.summands {
        let factor = format!("Z_{}", s.order());
        writeln!(
            out,
            "  {factor:<10} {}^{}  generator {}",
            s.prime,
            s.exponent,
            group.display(&s.generator)
        )
        .unwrap();
    }
    writeln!(
        out,
        "seed: {} (attempt {}), k = {}, c = {}",
        dec.seed, dec.attempts, dec.k, dec.margin_c
    )
    .unwrap();
    match verdict {
        Ok(()) => writeln!(out, "verified: yes").unwrap(),
        Err(e) => writeln!(out, "verified: no ({e})").unwrap(),
    }
    out
}

pub fn cmd_decompose(spec: &str, config: &RunConfig) -> Result<String, CliError> {
    let group = build_group(spec)?;
    let dc = DecomposeConfig {
        seed: config.seed,
        margin_c: config.margin_c,
        capacity: config.capacity,
        retries: config.retries,
        k: None,
    };
    let dec = decompose(group.as_ref(), &dc).map_err(|e| match e {
        DecomposeError::Hsp(HspError::CapacityExceeded { ref size, .. }) => CliError::new(
            EXIT_CAPACITY,
            format!("{e}; subgroup size {size}, raise --capacity"),
        ),
        DecomposeError::GenerationFailed { .. } => CliError::new(EXIT_VERIFY, e.to_string()),
        other => CliError::new(EXIT_INTERNAL, other.to_string()),
    })?;
    let verdict = verify_decomposition(group.as_ref(), &dec).map_err(|r| r.to_string());
    let out = match config.format {
        OutputFormat::Text => render_text(group.as_ref(), &dec, &verdict),
        OutputFormat::Structured => DecompositionRecord::from_decomposition(group.as_ref(), &dec).to_json(),
    };
    match verdict {
        Ok(()) => Ok(out),
        Err(reason) => Err(CliError {
            code: EXIT_VERIFY,
            stdout: out,
            message: format!("verification failed: {reason}"),
        }),
    }
}

pub fn cmd_verify(spec: &str, path: &str) -> Result<String, CliError> {
    let group = build_group(spec)?;
    let text = read_input(path)?;
    let record =
        DecompositionRecord::from_json(&text).map_err(|e| CliError::new(EXIT_USAGE, format!("{path}: {e}")))?;
    let dec = record
        .to_decomposition(group.as_ref())
        .map_err(|e| CliError::new(EXIT_USAGE, format!("{path}: {e}")))?;
    verify_decomposition(group.as_ref(), &dec)
        .map(|()| format!("verified: {} summands, order {}\n", dec.summands.len(), dec.group_order))
        .map_err(|r| CliError::new(EXIT_VERIFY, format!("verification failed: {r}")))
}
