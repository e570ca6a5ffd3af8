//! Command-line front end over JSON instance documents.
//!
//! Player indices are 0-based. Alternatives are referred to by label
//! everywhere in documents and in `core`/`coreplus` output; theorem and
//! search reports carry alternative indices alongside the label list.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{Algebra, Coalition, PlayerSet};
use crate::cores::{core, core_plus};
use crate::error::Error;
use crate::extended::{GroundCollection, WinningFamily};
use crate::games::SimpleGame;
use crate::preferences::{Agenda, AlternativeSet, Preference, Profile};
use crate::verify::{
    check_acyclic_theorem, check_extended_equivalence, check_nakamura_equivalence,
    search_divergence_instance, CheckOptions, ProfileEnumerationMode, DEFAULT_GUARD,
};
use crate::witness::{
    empty_core_linear_witness, empty_core_witness, empty_coreplus_witness_extended, WitnessProfile,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_SCALE: i32 = 3;

/// Ground collection as written in a document: `"all"` or a list of sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroundSpec {
    Keyword(String),
    Sets(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub players: usize,
    /// Partition blocks; absent means every coalition is admissible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ground: Option<GroundSpec>,
    pub winning: Vec<Vec<usize>>,
    pub alternatives: Vec<String>,
    /// Absent means the whole alternative set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agenda: Option<Vec<String>>,
    /// Player index to `[better, worse]` label pairs; missing players hold
    /// the empty relation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<BTreeMap<usize, Vec<[String; 2]>>>,
}

/// A failure reported as `{code, message, path}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliError {
    pub code: String,
    pub message: String,
    pub path: Option<String>,
}

impl CliError {
    fn at(path: &str, err: Error) -> Self {
        Self {
            code: err.code().into(),
            message: err.to_string(),
            path: Some(path.into()),
        }
    }

    fn exit_code(&self) -> i32 {
        match self.code.as_str() {
            "scale" | "precondition" => EXIT_SCALE,
            _ => EXIT_INVALID,
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        Self {
            code: err.code().into(),
            message: err.to_string(),
            path: None,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn set(v: &[usize]) -> Coalition {
    v.iter().copied().collect()
}

/// Parsed and validated document contents.
pub struct Instance {
    pub players: PlayerSet,
    pub algebra: Algebra,
    pub ground: GroundCollection,
    pub sets: Vec<Coalition>,
    pub alternatives: AlternativeSet,
    pub agenda: Agenda,
    pub profile: Option<Profile>,
}

impl Instance {
    pub fn from_document(doc: &InstanceDocument) -> CliResult<Self> {
        let players = PlayerSet::new(doc.players).map_err(|e| CliError::at("players", e))?;
        let algebra = match &doc.algebra {
            None => Algebra::power_set(players),
            Some(blocks) => {
                Algebra::from_partition(players, blocks.iter().map(|b| set(b)).collect())
                    .map_err(|e| CliError::at("algebra", e))?
            }
        };
        let ground = match &doc.ground {
            None => GroundCollection::AllSubsets,
            Some(GroundSpec::Keyword(k)) if k == "all" => GroundCollection::AllSubsets,
            Some(GroundSpec::Keyword(k)) => {
                return Err(CliError::at(
                    "ground",
                    Error::Invalid(format!("expected \"all\" or a list of sets, got {k:?}")),
                ))
            }
            Some(GroundSpec::Sets(list)) => {
                GroundCollection::Explicit(list.iter().map(|s| set(s)).collect())
            }
        };
        let sets: Vec<Coalition> = doc.winning.iter().map(|s| set(s)).collect();
        for (k, s) in sets.iter().enumerate() {
            if !players.covers(s) {
                return Err(CliError::at(
                    &format!("winning.{k}"),
                    Error::Invalid(format!("{s:?} names players outside 0..{}", doc.players)),
                ));
            }
        }
        let alternatives = AlternativeSet::new(doc.alternatives.iter().cloned())
            .map_err(|e| CliError::at("alternatives", e))?;
        let agenda = match &doc.agenda {
            None => Agenda::all(&alternatives),
            Some(labels) => alternatives
                .set_from_labels(labels)
                .and_then(|members| Agenda::new(members, alternatives.len()))
                .map_err(|e| CliError::at("agenda", e))?,
        };
        let profile = match &doc.profile {
            None => None,
            Some(map) => {
                let mut prefs = vec![Preference::empty(alternatives.len()); players.len()];
                for (&i, pairs) in map {
                    let path = format!("profile.{i}");
                    if i >= players.len() {
                        return Err(CliError::at(
                            &path,
                            Error::Invalid(format!("no player {i}")),
                        ));
                    }
                    prefs[i] = Preference::from_label_pairs(&alternatives, pairs)
                        .map_err(|e| CliError::at(&path, e))?;
                }
                let profile =
                    Profile::new(players, prefs).map_err(|e| CliError::at("profile", e))?;
                if !profile.is_measurable(&algebra) {
                    return Err(CliError::at(
                        "profile",
                        Error::Invalid("players in one block hold different preferences".into()),
                    ));
                }
                Some(profile)
            }
        };
        Ok(Self {
            players,
            algebra,
            ground,
            sets,
            alternatives,
            agenda,
            profile,
        })
    }

    pub fn game(&self) -> CliResult<SimpleGame> {
        SimpleGame::new(self.algebra.clone(), self.sets.clone())
            .map_err(|e| CliError::at("winning", e))
    }

    pub fn family(&self) -> CliResult<WinningFamily> {
        WinningFamily::new(self.algebra.clone(), self.ground.clone(), self.sets.clone())
            .map_err(|e| CliError::at("winning", e))
    }

    fn require_profile(&self) -> CliResult<&Profile> {
        self.profile
            .as_ref()
            .ok_or_else(|| CliError::at("profile", Error::Invalid("a profile is required".into())))
    }

    fn labels(&self, s: &crate::preferences::AltSet) -> Vec<String> {
        self.alternatives.labels_of(s)
    }
}

/// Renders a profile in document form, omitting players with no pairs.
pub fn profile_document(
    alternatives: &AlternativeSet,
    profile: &Profile,
) -> BTreeMap<usize, Vec<[String; 2]>> {
    profile
        .preferences()
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.pairs().is_empty())
        .map(|(i, p)| {
            let pairs = p
                .pairs()
                .into_iter()
                .map(|(x, y)| {
                    [
                        alternatives.label(x).to_string(),
                        alternatives.label(y).to_string(),
                    ]
                })
                .collect();
            (i, pairs)
        })
        .collect()
}

pub fn read_document(path: &Path) -> CliResult<InstanceDocument> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError {
        code: "io".into(),
        message: format!("cannot read {}: {e}", path.display()),
        path: None,
    })?;
    parse_document(&text)
}

pub fn parse_document(text: &str) -> CliResult<InstanceDocument> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        CliError {
            code: "json".into(),
            message: e.into_inner().to_string(),
            path: (path != ".").then_some(path),
        }
    })
}

#[derive(Debug, Parser)]
#[command(
    name = "coregames",
    version,
    about = "Cores of simple games with preferences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Core and per-player maximal sets of the document's profile
    Core(InstanceArgs),
    /// Core without majority dissatisfaction and per-player maximal sets
    Coreplus(InstanceArgs),
    /// Nakamura number of the simple game with its witnessing subfamily
    Nakamura(FileArg),
    /// Kappa number, ν' and ν of the induced game for a winning family
    Kappa(FileArg),
    /// Document with an empty-core profile
    Witness(InstanceArgs),
    /// Document with an empty-core profile of linear orders
    WitnessLinear(InstanceArgs),
    /// Document with an empty core-without-majority-dissatisfaction profile
    /// for a winning family
    WitnessExtended(InstanceArgs),
    /// Exhaustive check relating #B, ν and nonemptiness of both cores
    Verify(VerifyArgs),
    /// Exhaustive check relating #B, κ and nonemptiness for a winning family
    VerifyExtended(VerifyArgs),
    /// Search small instances for divergences between the notions
    Search(SearchArgs),
}

#[derive(Debug, Args)]
pub struct FileArg {
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    pub input: PathBuf,
    /// Comma-separated agenda labels, overriding the document's agenda
    #[arg(long)]
    pub agenda: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub agenda: Option<String>,
    /// full, acyclic, linear or maxsets
    #[arg(long, default_value = "full")]
    pub mode: ProfileEnumerationMode,
    /// Most profiles to enumerate before falling back to a witness
    #[arg(long, default_value_t = DEFAULT_GUARD)]
    pub guard: u64,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Check acyclicity of social dominance over acyclic profiles instead
    #[arg(long)]
    pub acyclic_theorem: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 4)]
    pub n_max: usize,
    #[arg(long, default_value_t = 3)]
    pub m_max: usize,
    /// Core computations allowed per category
    #[arg(long, default_value_t = DEFAULT_GUARD)]
    pub guard: u64,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses arguments and runs the command, returning what to print.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INVALID,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok(value) => Outcome {
            code: EXIT_OK,
            stdout: pretty(&value),
            stderr: String::new(),
        },
        Err(err) => Outcome {
            code: err.exit_code(),
            stdout: pretty(&serde_json::to_value(&err).expect("plain struct")),
            stderr: String::new(),
        },
    }
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}

fn load(input: &Path, agenda: Option<&str>) -> CliResult<(InstanceDocument, Instance)> {
    let mut doc = read_document(input)?;
    if let Some(list) = agenda {
        doc.agenda = Some(
            list.split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect(),
        );
    }
    let inst = Instance::from_document(&doc)?;
    Ok((doc, inst))
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

pub fn execute(command: &Command) -> CliResult<Value> {
    match command {
        Command::Core(a) | Command::Coreplus(a) => {
            let (_, inst) = load(&a.input, a.agenda.as_deref())?;
            let w = inst.family()?.winning_sets();
            let profile = inst.require_profile()?;
            let (key, chosen) = if matches!(command, Command::Core(_)) {
                ("core", core(&w, &inst.agenda, profile))
            } else {
                ("core_plus", core_plus(&w, &inst.agenda, profile))
            };
            let maxima: Vec<Vec<String>> = profile
                .maximal_sets(&inst.agenda)
                .iter()
                .map(|s| inst.labels(s))
                .collect();
            Ok(json!({ key: inst.labels(&chosen), "maximal_sets": maxima }))
        }
        Command::Nakamura(a) => {
            let (_, inst) = load(&a.input, None)?;
            let n = inst.game()?.nakamura_number();
            Ok(json!({ "nakamura": to_json(&n.value), "witness": to_json(&n.witness) }))
        }
        Command::Kappa(a) => {
            let (_, inst) = load(&a.input, None)?;
            let f = inst.family()?;
            let kappa = f.kappa_number();
            Ok(json!({
                "kappa": to_json(&kappa.value),
                "nu_prime": to_json(&f.nu_prime().value),
                "nu_induced": to_json(&f.nu_induced().value),
                "witness": to_json(&kappa.witness),
            }))
        }
        Command::Witness(a) | Command::WitnessLinear(a) | Command::WitnessExtended(a) => {
            let (mut doc, inst) = load(&a.input, a.agenda.as_deref())?;
            let witness: WitnessProfile = match command {
                Command::Witness(_) => empty_core_witness(&inst.game()?, &inst.agenda)?,
                Command::WitnessLinear(_) => {
                    empty_core_linear_witness(&inst.game()?, &inst.agenda)?
                }
                _ => empty_coreplus_witness_extended(&inst.family()?, &inst.agenda)?,
            };
            doc.profile = Some(profile_document(&inst.alternatives, &witness.profile));
            Ok(to_json(&doc))
        }
        Command::Verify(a) | Command::VerifyExtended(a) => {
            let (_, inst) = load(&a.input, a.agenda.as_deref())?;
            let options = CheckOptions {
                mode: a.mode,
                guard: a.guard,
                jobs: a.jobs.max(1),
            };
            let report = match command {
                Command::Verify(_) if a.acyclic_theorem => {
                    check_acyclic_theorem(&inst.game()?, &inst.agenda, &options)?
                }
                Command::Verify(_) => {
                    check_nakamura_equivalence(&inst.game()?, &inst.agenda, &options)?
                }
                _ => check_extended_equivalence(&inst.family()?, &inst.agenda, &options)?,
            };
            Ok(json!({ "alternatives": inst.alternatives.labels(), "report": to_json(&report) }))
        }
        Command::Search(a) => Ok(to_json(&search_divergence_instance(
            a.n_max, a.m_max, a.guard,
        )?)),
    }
}
