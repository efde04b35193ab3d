//! Command-line front end: argument parsing, rendering and the
//! verification suites. [`run`] does the work; the binary only maps its
//! result to an exit status.

pub mod render;
pub mod suites;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use glo2::glzeta::{
    CachedZeta, GlzetaError, GroupKey, ZetaCache, ZetaEngine, CACHE_ENV, DEFAULT_SUPPORT, Q0,
};
use glo2::oracle::{group_report, Budget, GroupSpecifier, OracleError};
use glo2::polyq::ZetaError;
use glo2::typegen::enumerate_types;

/// Budget used by `--extended` and by interpolation when no explicit
/// limits are given. Large enough for `G_(3,1)` at `q = 9`.
pub const EXTENDED_BUDGET: Budget = Budget {
    max_elements: 500_000,
    max_classes: 6_000,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Latex,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "glo2", version, about = "Representation zeta polynomials of GL_n(O_2)")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Cache file for oracle-derived and interpolated zeta functions.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache: Option<PathBuf>,
    #[arg(long, global = true)]
    pub max_elements: Option<u64>,
    #[arg(long, global = true)]
    pub max_classes: Option<usize>,
    /// Interpolation points for `G_(3,1)`, e.g. `3,4,5,7,8`.
    #[arg(long, global = true, value_delimiter = ',')]
    pub support: Option<Vec<u64>>,
    /// Raise the default budgets for the heavy cases.
    #[arg(long, global = true)]
    pub extended: bool,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_q(s: &str) -> Result<Q0, String> {
    s.strip_prefix("q=").unwrap_or(s).parse().map_err(|e: glo2::ParseError| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zeta function of GL(m[;q^d]), Units(l[;q^d]), Glambda(...) or GLO2(n).
    Zeta {
        group: GroupKey,
        /// `sym` or a prime power.
        #[arg(value_parser = parse_q)]
        q: Q0,
    },
    /// Similarity-class types of M_n(F_q).
    Types {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        invertible_only: bool,
    },
    /// Builds a finite group, e.g. "GL(2,Z/9)" or "Zent(4,F2;x^(3,1))".
    Oracle {
        spec: GroupSpecifier,
        #[arg(long, value_enum, default_value_t = Task::Stats)]
        task: Task,
    },
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Task {
    Stats,
    Degrees,
    Classes,
}

#[derive(Debug, Subcommand)]
pub enum Suite {
    /// Brute-force check of the type tables at one q.
    Tables {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u32,
    },
    /// Degrees of GL_n(Z/p^2) and GL_n(F_p[t]/t^2) against each other and the zeta function.
    MainTheorem {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: u32,
    },
    /// Stabilizer and extension checks for every type realisable over F_q.
    Extension {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u32,
    },
    /// Mass and sum-of-squares identities.
    Identities {
        #[arg(long)]
        n: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum CacheAction {
    List,
    Evict {
        group: GroupKey,
        #[arg(value_parser = parse_q)]
        q: Option<Q0>,
    },
    /// Recomputes every entry from scratch.
    Rebuild,
    Clear,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Zeta(#[from] GlzetaError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl From<ZetaError> for CliError {
    fn from(e: ZetaError) -> Self {
        CliError::Zeta(e.into())
    }
}

/// Rendered output and exit status (0 pass, 1 verification failure).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub status: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, status: 0 }
    }
}

impl Cli {
    pub fn budget(&self) -> Budget {
        let base = if self.extended || self.support.is_some() {
            EXTENDED_BUDGET
        } else {
            Budget::default()
        };
        Budget {
            max_elements: self.max_elements.unwrap_or(base.max_elements),
            max_classes: self.max_classes.unwrap_or(base.max_classes),
        }
    }

    pub fn engine(&self) -> Result<ZetaEngine, CliError> {
        let mut e = ZetaEngine::new(self.budget());
        e.support = self.support.clone();
        if let Some(path) = &self.cache {
            e.cache = ZetaCache::open(path)?;
        }
        Ok(e)
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let f = cli.format;
    match &cli.command {
        Command::Zeta { group, q } => {
            let r = cli.engine()?.report(group, *q)?;
            Ok(Outcome::ok(render::zeta(&r, f)?))
        }
        Command::Types { n, invertible_only } => {
            if *n == 0 {
                return Err(CliError::Usage("n must be positive".into()));
            }
            Ok(Outcome::ok(render::types(&enumerate_types(*n, *invertible_only), f)))
        }
        Command::Oracle { spec, task } => {
            let r = group_report(spec, &cli.budget(), *task == Task::Degrees)?;
            let out = match (task, f) {
                (Task::Classes, Format::Text) => format!("{}\nclasses: {}\n", r.group, r.classes),
                (Task::Classes, Format::Json) => {
                    serde_json::json!({"group": r.group, "classes": r.classes}).to_string()
                }
                _ => render::oracle(&r, f)?,
            };
            Ok(Outcome::ok(out))
        }
        Command::Verify { suite } => {
            let r = match *suite {
                Suite::Tables { n, q } => {
                    let budget = cli.max_elements.unwrap_or(if cli.extended { 1 << 26 } else { 1 << 20 });
                    suites::tables(n, q, budget)?
                }
                Suite::MainTheorem { n, p } => suites::main_theorem(&mut cli.engine()?, n, p)?,
                Suite::Extension { n, q } => suites::extension(&cli.engine()?, n, q)?,
                Suite::Identities { n } => suites::identities(&mut cli.engine()?, n)?,
            };
            Ok(Outcome {
                output: render::suite(&r, f)?,
                status: if r.pass { 0 } else { 1 },
            })
        }
        Command::Cache { action } => {
            if cli.cache.is_none() {
                return Err(CliError::Usage(format!(
                    "no cache file: pass --cache or set {CACHE_ENV}"
                )));
            }
            let mut engine = cli.engine()?;
            match action {
                CacheAction::List => {}
                CacheAction::Evict { group, q } => {
                    engine.cache.evict(group, *q)?;
                }
                CacheAction::Clear => engine.cache.clear()?,
                CacheAction::Rebuild => rebuild(&mut engine)?,
            }
            Ok(Outcome::ok(render::cache(engine.cache.entries(), f)?))
        }
    }
}

/// Empties the cache and recomputes each entry it held: interpolations
/// over their recorded support, oracle degree multisets at their `q`.
fn rebuild(engine: &mut ZetaEngine) -> Result<(), CliError> {
    let old = engine.cache.entries().to_vec();
    engine.cache.clear()?;
    for e in old {
        match (&e.zeta, e.q0) {
            (CachedZeta::Symbolic(_), _) => {
                let support = e.support.clone().unwrap_or_else(|| DEFAULT_SUPPORT.to_vec());
                let bound = e.degree_bound.unwrap_or(engine.degree_bound);
                engine.interpolate_zeta(&e.key, &support, bound)?;
            }
            (CachedZeta::Evaluated(_), Q0::At(q)) => {
                engine.oracle_degrees(&e.key, q)?;
            }
            (CachedZeta::Evaluated(_), Q0::Symbolic) => {
                return Err(CliError::Usage(format!("malformed cache entry for {}", e.key)))
            }
        }
    }
    Ok(())
}
