//! Command-line front end for `skewdual`: argument parsing, dispatch and
//! newline-delimited JSON output.

pub mod format;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use format::{CodeRecord, Count, Exists, Header, OracleOut, Params, Summary, Verify, SCHEMA};
use skewdual::codes::{exists_closed_form, Central, CodeParameters, CodeSpace, InseparableContext};
use skewdual::decomposition::SymmetryClass;
use skewdual::{oracle, Elem, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NONEXISTENCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "skewdual",
    version,
    about = "Selfdual skew cyclic codes over finite fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Whether a selfdual code exists.
    Exists(Common),
    /// Exact number of selfdual codes.
    Count(Common),
    /// One uniformly random selfdual code.
    Random(Common),
    /// Every selfdual code, one record per line.
    Enumerate(Common),
    /// Selforthogonality and selfduality of a generator.
    Verify(WithGenerator),
    /// Generator of the dual code.
    Dual(WithGenerator),
    /// Selfdual codes for (Y - 1)^(p^m) as products of twisted factors.
    InseparableEnum(Inseparable),
    /// Brute-force census of all codes.
    Oracle(OracleArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Size of the base field F.
    #[arg(long)]
    pub q: u64,
    /// Degree of K over F.
    #[arg(long)]
    pub r: usize,
    /// Length multiplier: the central modulus is Y^k - 1.
    #[arg(long, default_value_t = 1, conflicts_with = "modulus")]
    pub k: usize,
    /// Coefficients of P(Y), constant term first, as F codes.
    #[arg(long, value_delimiter = ',')]
    pub modulus: Option<Vec<Elem>>,
    /// Modulus of K over F, constant term first.
    #[arg(long, value_delimiter = ',')]
    pub field_modulus: Option<Vec<Elem>>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Stop after this many records.
    #[arg(long)]
    pub limit: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Include the generator matrix in code records.
    #[arg(long)]
    pub matrix: bool,
}

#[derive(Args, Debug)]
pub struct WithGenerator {
    #[command(flatten)]
    pub common: Common,
    /// Generator coefficients over K, constant term first.
    #[arg(long, value_delimiter = ',', required = true)]
    pub generator: Vec<Elem>,
}

#[derive(Args, Debug)]
pub struct Inseparable {
    #[command(flatten)]
    pub common: Common,
    /// Drop repeated generators.
    #[arg(long, value_enum, default_value_t = Switch::On)]
    pub dedup: Switch,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[command(flatten)]
    pub common: Common,
    /// Largest number of subspaces scanned.
    #[arg(long, default_value_t = oracle::DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Switch {
    On,
    Off,
}

impl Common {
    pub fn params(&self) -> CodeParameters {
        let central = match &self.modulus {
            Some(m) => Central::Explicit(m.clone()),
            None => Central::Cyclic(self.k),
        };
        CodeParameters {
            q: self.q,
            r: self.r,
            central,
            field_modulus: self.field_modulus.clone(),
        }
    }
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::Io(e)
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NonExistence => EXIT_NONEXISTENCE,
        Error::InvalidParameter(_)
        | Error::CharacteristicTwo
        | Error::Reducible
        | Error::Inseparable
        | Error::NotPalindromic
        | Error::FieldTooLarge(_) => EXIT_INVALID,
        _ => EXIT_FAILURE,
    }
}

/// Record sink for one command.
struct Out<'a> {
    w: Box<dyn Write + 'a>,
    format: Format,
}

impl Out<'_> {
    fn header(&mut self, command: &str, params: &CodeParameters) -> io::Result<()> {
        if self.format == Format::Json {
            let h = Header {
                schema: SCHEMA,
                command,
                params: Params::from(params),
            };
            self.json(&h)?;
        }
        Ok(())
    }

    fn json<T: Serialize>(&mut self, v: &T) -> io::Result<()> {
        serde_json::to_writer(&mut self.w, v)?;
        self.w.write_all(b"\n")
    }

    /// JSON record or the given text line.
    fn record<T: Serialize>(&mut self, v: &T, text: impl FnOnce() -> String) -> io::Result<()> {
        match self.format {
            Format::Json => self.json(v),
            Format::Text => writeln!(self.w, "{}", text()),
        }
    }

    fn code(&mut self, rec: &CodeRecord) -> io::Result<()> {
        self.record(rec, || join(&rec.generator))
    }
}

fn join(v: &[Elem]) -> String {
    v.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Errors go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_INVALID;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match dispatch(&cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Exists(c) | Command::Count(c) | Command::Random(c) | Command::Enumerate(c) => c,
        Command::Verify(g) | Command::Dual(g) => &g.common,
        Command::InseparableEnum(i) => &i.common,
        Command::Oracle(o) => &o.common,
    }
}

fn dispatch(cmd: &Command, stdout: &mut dyn Write) -> Result<(), Failure> {
    let c = common(cmd);
    let params = c.params();
    let space = CodeSpace::new(&params)?;
    let w: Box<dyn Write + '_> = match &c.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(stdout)),
    };
    let mut out = Out {
        w,
        format: c.format,
    };
    let name = match cmd {
        Command::Exists(_) => "exists",
        Command::Count(_) => "count",
        Command::Random(_) => "random",
        Command::Enumerate(_) => "enumerate",
        Command::Verify(_) => "verify",
        Command::Dual(_) => "dual",
        Command::InseparableEnum(_) => "inseparable-enum",
        Command::Oracle(_) => "oracle",
    };
    out.header(name, &params)?;
    let limit = c.limit.unwrap_or(u64::MAX);
    match cmd {
        Command::Exists(_) => {
            let rec = Exists {
                exists: space.exists_selfdual(),
                separable: space.is_separable(),
                reason: reason(&space),
            };
            out.record(&rec, || rec.exists.to_string())?;
        }
        Command::Count(_) => {
            let rec = Count {
                count: space.count_selfdual()?.to_string(),
            };
            out.record(&rec, || rec.count.clone())?;
        }
        Command::Random(_) => {
            let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
            let code = space.random_selfdual(&mut rng)?;
            out.code(&CodeRecord::new(&space, &code, c.matrix))?;
        }
        Command::Enumerate(_) => {
            for code in space.enumerate_selfdual()?.take(limit as usize) {
                out.code(&CodeRecord::new(&space, &code?, c.matrix))?;
            }
        }
        Command::Verify(g) => {
            let code = space.code(&g.generator)?;
            let rec = Verify {
                generator: code.generator().to_vec(),
                dim: code.dim(),
                selforthogonal: space.is_selforthogonal(&code),
                selfdual: space.is_selfdual(&code),
            };
            out.record(&rec, || {
                format!(
                    "selforthogonal={} selfdual={}",
                    rec.selforthogonal, rec.selfdual
                )
            })?;
        }
        Command::Dual(g) => {
            let code = space.code(&g.generator)?;
            out.code(&CodeRecord::new(&space, &space.dual(&code)?, c.matrix))?;
        }
        Command::InseparableEnum(i) => {
            let ctx = InseparableContext::new(&params)?;
            let mut yielded = 0u64;
            let raw = if i.dedup == Switch::On {
                let mut it = ctx.enumerate_dedup();
                while yielded < limit {
                    let Some(code) = it.next() else { break };
                    out.code(&CodeRecord::new(ctx.space(), &code, c.matrix))?;
                    yielded += 1;
                }
                it.inner().error().cloned().map_or(Ok(()), Err)?;
                it.inner().raw_count()
            } else {
                let mut it = ctx.enumerate();
                while yielded < limit {
                    let Some(code) = it.next() else { break };
                    out.code(&CodeRecord::new(ctx.space(), &code, c.matrix))?;
                    yielded += 1;
                }
                it.error().cloned().map_or(Ok(()), Err)?;
                it.raw_count()
            };
            if c.format == Format::Json {
                out.json(&serde_json::json!({ "summary": Summary { raw, yielded } }))?;
            }
        }
        Command::Oracle(o) => {
            let rep = oracle::brute_codes(&params, o.budget)?;
            let rec = OracleOut {
                scanned: rep.scanned,
                ideals: rep.ideals.len(),
                selforthogonal: rep.selforthogonal.len(),
                selfdual: rep.selfdual.len(),
                witnesses: rep.selfdual.iter().map(format::rref).collect(),
            };
            out.record(&rec, || {
                format!(
                    "ideals={} selforthogonal={} selfdual={}",
                    rec.ideals, rec.selforthogonal, rec.selfdual
                )
            })?;
        }
    }
    out.w.flush()?;
    Ok(())
}

/// Human-readable ground for the existence answer.
fn reason(space: &CodeSpace) -> String {
    let p = space.params();
    if let Central::Cyclic(k) = p.central {
        let (q, r) = (space.base_field().size(), p.r);
        return if exists_closed_form(q, r, k) {
            "r is even, k is odd, r/2 is odd and q = 3 mod 4".into()
        } else if r % 2 == 1 {
            "r is odd".into()
        } else if k % 2 == 0 {
            "k is even".into()
        } else if (r / 2) % 2 == 0 {
            "r/2 is even".into()
        } else {
            "q = 1 mod 4".into()
        };
    }
    let d = space.radical_decomposition();
    for (l, c) in d.components().iter().enumerate() {
        if let Some(sp) = &c.space {
            if !sp.witt_index_is_maximal().unwrap_or(false) {
                let class = if c.class == SymmetryClass::Euclidean {
                    "euclidean"
                } else {
                    "hermitian"
                };
                return format!("component {l} ({class}) has no maximal isotropic subspace");
            }
        }
    }
    "every component has a maximal isotropic subspace".into()
}
