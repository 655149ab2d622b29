//! `bsegal`: JSON front end to the simplicial, cellular and Segal/Bousfield
//! tooling. Exit status 0 on success, 1 when a checked property fails, 2 on
//! usage or validation errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use bsegal::cellular::{self, CellularCertificate, CertificateReport};
use bsegal::corpus::{self, CorpusEntry, Group};
use bsegal::division::divide_left;
use bsegal::json::{self, BiSSetDoc};
use bsegal::maps::trust_dimension;
use bsegal::segal::{self, Beta2Report, DiscreteSegalSpace, FractionTable};
use bsegal::{core, igroupoid_nerve, make_shape, Error, FinCat, ShapeKind, SSet};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

/// Largest simplex count `inerve` will build in its top dimension.
const INERVE_LIMIT: u128 = 1_000_000;

#[derive(Parser)]
#[command(name = "bsegal", version, about = "Truncated simplicial and bisimplicial combinatorics with Segal/Bousfield diagnostics")]
struct Cli {
    /// Working truncation dimension [default: 3].
    #[arg(short = 'D', global = true, value_name = "NAT")]
    truncation: Option<usize>,

    /// Inline JSON input, used in place of a positional file path.
    #[arg(long, global = true, value_name = "JSON")]
    json: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Realize a named shape as a simplicial set.
    Shape {
        n: usize,
        kind: ShapeKind,
        /// Horn index.
        #[arg(short = 'i')]
        i: Option<usize>,
    },
    /// The conical nerve `IΔⁿ`.
    Inerve { n: usize },
    /// Build a cellular certificate.
    Filtration {
        n: usize,
        #[arg(long, value_enum, default_value_t = Builder::Igroupoid)]
        builder: Builder,
    },
    /// Verify a cellular certificate.
    Certify { file: Option<PathBuf> },
    /// Segal, Bousfield and completeness verdicts for the nerve of a category.
    NerveCheck { file: Option<PathBuf> },
    /// The maximal subgroupoid of a category.
    Core { file: Option<PathBuf> },
    /// The homotopy category; `--bousfield` uses the fraction composition.
    Ho {
        file: Option<PathBuf>,
        #[arg(long)]
        bousfield: bool,
    },
    /// The table of fractions `f/g`.
    FractionTable { file: Option<PathBuf> },
    /// Left division `A\X` by a shape `kind:n[:i]` or an SSet file.
    Divide { shape: String, file: Option<PathBuf> },
    /// Run the corpus property suite.
    Sweep {
        /// Directory of category files replacing the generated corpus.
        #[arg(long, value_name = "DIR")]
        corpus: Option<PathBuf>,
        /// Property groups to run [default: all].
        #[arg(long = "group", value_enum)]
        groups: Vec<GroupArg>,
        /// Top degree of the cofree-core comparison on groupoids.
        #[arg(long, default_value_t = 3)]
        cofree_max: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Builder {
    /// `IΔⁿ` from its monotone part by left horns.
    Igroupoid,
    /// `C_n -> Λ₀ⁿ` by interchange maps.
    HornChain,
    /// `Sp_n -> SpC_n` by pushouts of `sp₂`.
    Spine,
    /// `C_n -> SpC_n` by pushouts of `c₂`.
    Cone,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Equivalences,
    Fractions,
    Core,
    Completeness,
    Cofree,
}

impl From<GroupArg> for Group {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::Equivalences => Group::Equivalences,
            GroupArg::Fractions => Group::Fractions,
            GroupArg::Core => Group::Core,
            GroupArg::Completeness => Group::Completeness,
            GroupArg::Cofree => Group::Cofree,
        }
    }
}

/// A finished command: the rendered document and whether the checked
/// property held.
struct Outcome {
    text: String,
    holds: bool,
}

impl Outcome {
    fn ok(doc: impl Serialize) -> Result<Self, Error> {
        Self::checked(doc, true)
    }

    fn checked(doc: impl Serialize, holds: bool) -> Result<Self, Error> {
        Ok(Outcome { text: serde_json::to_string_pretty(&doc)?, holds })
    }
}

#[derive(Serialize)]
struct CertifyDoc {
    format: &'static str,
    #[serde(flatten)]
    report: CertificateReport,
}

#[derive(Serialize)]
struct NerveCheckDoc {
    format: &'static str,
    truncation: usize,
    segal: bool,
    bousfield: bool,
    complete: bool,
    beta2_counterexample: Option<Vec<String>>,
}

#[derive(Serialize)]
struct FractionDoc {
    format: &'static str,
    truncation: usize,
    /// Rows `[f, g, f/g]`.
    fractions: Vec<[String; 3]>,
}

/// Emitted with status 1 when a construction needs a bijective `β₂`.
#[derive(Serialize)]
struct HypothesisFailure {
    format: &'static str,
    error: String,
    beta2_counterexample: Option<Vec<String>>,
}

struct Context {
    truncation: Option<usize>,
    inline: Option<String>,
}

impl Context {
    fn d(&self) -> usize {
        self.truncation.unwrap_or(3)
    }

    fn input(&self, file: Option<&Path>) -> Result<String, Error> {
        match (file, &self.inline) {
            (Some(_), Some(_)) => Err(Error::Validation("give either a file or --json, not both".into())),
            (Some(p), None) => fs::read_to_string(p).map_err(|e| Error::Validation(format!("{}: {e}", p.display()))),
            (None, Some(text)) => Ok(text.clone()),
            (None, None) => Err(Error::Validation("missing input: pass a file or --json".into())),
        }
    }

    fn category(&self, file: Option<&Path>) -> Result<FinCat, Error> {
        FinCat::from_json(&json::parse::<Value>(&self.input(file)?)?)
    }

    fn space(&self, file: Option<&Path>) -> Result<DiscreteSegalSpace, Error> {
        let d = self.d();
        if d < 2 {
            return Err(Error::OutOfRange(format!("nerve diagnostics need D >= 2, got {d}")));
        }
        Ok(DiscreteSegalSpace::new(self.category(file)?, d))
    }
}

fn sset_doc(x: &SSet, trust: usize) -> json::SSetDoc {
    let mut doc = json::sset_to_doc(x);
    doc.trust_dimension = Some(trust);
    doc
}

fn beta2_failure(x: &DiscreteSegalSpace, e: Error) -> Result<Outcome, Error> {
    let Error::Hypothesis(msg) = e else { return Err(e) };
    let b: Beta2Report = segal::beta2(x)?;
    Outcome::checked(
        HypothesisFailure { format: "bsegal.failure/1", error: msg, beta2_counterexample: b.counterexample },
        false,
    )
}

/// `kind:n` or `kind:n:i`; anything else is read as an SSet file.
fn parse_shape(spec: &str, d: usize) -> Result<Arc<SSet>, Error> {
    let parts: Vec<&str> = spec.split(':').collect();
    if let Ok(kind) = parts[0].parse::<ShapeKind>() {
        let num = |s: &str| s.parse::<usize>().map_err(|_| Error::Validation(format!("bad number `{s}` in shape `{spec}`")));
        return match parts[1..] {
            [n] => Ok(make_shape(kind, num(n)?, None, d)?.realized),
            [n, i] => Ok(make_shape(kind, num(n)?, Some(num(i)?), d)?.realized),
            _ => Err(Error::Validation(format!("shape `{spec}` is not kind:n[:i]"))),
        };
    }
    let text = fs::read_to_string(spec).map_err(|e| Error::Validation(format!("{spec}: {e}")))?;
    Ok(Arc::new(json::sset_from_doc(&json::parse(&text)?)?))
}

fn load_corpus(dir: &Path) -> Result<Vec<CorpusEntry>, Error> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::Validation(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let text = fs::read_to_string(p).map_err(|e| Error::Validation(format!("{}: {e}", p.display())))?;
            let category = FinCat::from_json(&json::parse::<Value>(&text)?)
                .map_err(|e| Error::Validation(format!("{}: {e}", p.display())))?;
            let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok(CorpusEntry { name, category })
        })
        .collect()
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let cx = Context { truncation: cli.truncation, inline: cli.json };
    let d = cx.d();
    match cli.command {
        Command::Shape { n, kind, i } => {
            let x = make_shape(kind, n, i, d)?.realized;
            Outcome::ok(sset_doc(&x, trust_dimension(&x)))
        }
        Command::Inerve { n } => {
            let top = (n as u128 + 1).checked_pow(d as u32 + 1).unwrap_or(u128::MAX);
            if top > INERVE_LIMIT {
                return Err(Error::Resource { bound: top, limit: INERVE_LIMIT });
            }
            let x = igroupoid_nerve(n, d);
            Outcome::ok(sset_doc(&x, trust_dimension(&x)))
        }
        Command::Filtration { n, builder } => {
            let c = match builder {
                Builder::Igroupoid => cellular::build_igroupoid_filtration(n, d)?,
                Builder::HornChain => cellular::cone_to_horn_chain(n, d)?,
                Builder::Spine => cellular::spine_cone_factorization(n, d)?.0,
                Builder::Cone => cellular::spine_cone_factorization(n, d)?.1,
            };
            Outcome::ok(c.to_json())
        }
        Command::Certify { file } => {
            let c = CellularCertificate::from_json(&json::parse::<Value>(&cx.input(file.as_deref())?)?)?;
            let report = cellular::verify_certificate(&c);
            let holds = report.accepted;
            Outcome::checked(CertifyDoc { format: "bsegal.certify/1", report }, holds)
        }
        Command::NerveCheck { file } => {
            let x = cx.space(file.as_deref())?;
            Outcome::ok(NerveCheckDoc {
                format: "bsegal.nerve-check/1",
                truncation: d,
                segal: segal::is_segal_discrete(&x)?,
                bousfield: segal::is_bousfield_discrete(&x)?,
                complete: segal::is_complete_discrete(&x)?,
                beta2_counterexample: segal::beta2(&x)?.counterexample,
            })
        }
        Command::Core { file } => Outcome::ok(core(&cx.category(file.as_deref())?).to_json()),
        Command::Ho { file, bousfield } => {
            let x = cx.space(file.as_deref())?;
            if bousfield {
                match segal::ho_b(&x) {
                    Ok(g) => Outcome::ok(g.to_json()),
                    Err(e) => beta2_failure(&x, e),
                }
            } else {
                Outcome::ok(segal::ho(&x)?.to_json())
            }
        }
        Command::FractionTable { file } => {
            let x = cx.space(file.as_deref())?;
            match FractionTable::new(&x) {
                Ok(t) => Outcome::ok(FractionDoc { format: "bsegal.fractions/1", truncation: d, fractions: t.entries() }),
                Err(e) => beta2_failure(&x, e),
            }
        }
        Command::Divide { shape, file } => {
            let doc: BiSSetDoc = json::parse(&cx.input(file.as_deref())?)?;
            let x = Arc::new(json::bisset_from_doc(&doc)?);
            if let Some(d) = cx.truncation.filter(|&d| d != x.truncation()) {
                return Err(Error::TruncationMismatch { left: d, right: x.truncation() });
            }
            let a = parse_shape(&shape, x.truncation())?;
            let dv = divide_left(&a, &x)?;
            Outcome::ok(sset_doc(&dv.object, dv.trust_dimension))
        }
        Command::Sweep { corpus: dir, groups, cofree_max } => {
            if d < 2 {
                return Err(Error::OutOfRange(format!("the sweep needs D >= 2, got {d}")));
            }
            let entries = match dir {
                Some(dir) => load_corpus(&dir)?,
                None => corpus::corpus(),
            };
            let groups: Vec<Group> =
                if groups.is_empty() { Group::ALL.to_vec() } else { groups.into_iter().map(Group::from).collect() };
            let report = corpus::sweep(&entries, d, &groups, cofree_max);
            let holds = report.passed();
            Outcome::checked(report, holds)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            // a closed pipe is not an error of ours
            let _ = writeln!(std::io::stdout(), "{}", out.text);
            if out.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
