//! Exhaustive desk-scale checks of the nonemptiness theorems.
//!
//! A profile is measurable for an algebra exactly when players in the same
//! block hold the same preference, so the measurable profiles for an agenda
//! are enumerated as one preference per block. The enumeration is split into
//! shards by the first block's preference; shards are independent and are
//! merged in shard order, so reports do not depend on the number of workers.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, Coalition, PlayerSet};
use crate::bitset::BitSet;
use crate::cores::{core, core_plus, core_plus_from_maxima, dominates, WinningSets};
use crate::error::{Error, Result};
use crate::extended::{GroundCollection, WinningFamily};
use crate::games::{ExtendedCardinal, SimpleGame};
use crate::preferences::{Agenda, AltSet, Preference, Profile};
use crate::witness::{
    empty_core_linear_witness, empty_core_witness, empty_coreplus_witness_extended,
};

/// Largest agenda for which every asymmetric relation is enumerated.
pub const MAX_FULL_AGENDA: usize = 5;
/// Largest agenda for which every linear order is enumerated.
pub const MAX_LINEAR_AGENDA: usize = 8;
/// Largest agenda for which every maximal-set assignment is enumerated.
pub const MAX_MAXSETS_AGENDA: usize = 16;
/// Default cap on the number of profiles a single check may enumerate.
pub const DEFAULT_GUARD: u64 = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileEnumerationMode {
    /// Every asymmetric relation.
    FullAsymmetric,
    /// Acyclic relations only.
    AcyclicOnly,
    /// Linear orders on the agenda.
    LinearOnly,
    /// One canonical relation per nonempty maximal set; sound for the core
    /// without majority dissatisfaction only, which depends on nothing else.
    MaximalSetsOnly,
}

impl FromStr for ProfileEnumerationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Self::FullAsymmetric),
            "acyclic" => Ok(Self::AcyclicOnly),
            "linear" => Ok(Self::LinearOnly),
            "maxsets" => Ok(Self::MaximalSetsOnly),
            other => Err(Error::Invalid(format!(
                "unknown mode {other:?} (expected full, acyclic, linear or maxsets)"
            ))),
        }
    }
}

impl fmt::Display for ProfileEnumerationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::FullAsymmetric => "full",
            Self::AcyclicOnly => "acyclic",
            Self::LinearOnly => "linear",
            Self::MaximalSetsOnly => "maxsets",
        })
    }
}

/// Preferences on the alternatives `0..agenda_size`, each exactly once.
///
/// With `require_maximal`, relations without a maximal element are dropped.
pub fn enumerate_preferences_for(
    agenda_size: usize,
    mode: ProfileEnumerationMode,
    require_maximal: bool,
) -> Result<Vec<Preference>> {
    use ProfileEnumerationMode::*;
    let m = agenda_size;
    let limit = match mode {
        FullAsymmetric | AcyclicOnly => MAX_FULL_AGENDA,
        LinearOnly => MAX_LINEAR_AGENDA,
        MaximalSetsOnly => MAX_MAXSETS_AGENDA,
    };
    if m > limit {
        return Err(Error::Scale(format!(
            "{m} alternatives in {mode} mode (limit {limit})"
        )));
    }
    let all = BitSet::full(m);
    let prefs: Vec<Preference> = match mode {
        FullAsymmetric | AcyclicOnly => {
            let pairs: Vec<(usize, usize)> = (0..m)
                .flat_map(|x| (x + 1..m).map(move |y| (x, y)))
                .collect();
            let total = 3usize.pow(pairs.len() as u32);
            (0..total)
                .map(|mut code| {
                    let mut rel = Vec::with_capacity(pairs.len());
                    for &(x, y) in &pairs {
                        match code % 3 {
                            1 => rel.push((x, y)),
                            2 => rel.push((y, x)),
                            _ => {}
                        }
                        code /= 3;
                    }
                    Preference::from_pairs(m, rel).expect("one direction per pair")
                })
                .filter(|p| mode == FullAsymmetric || p.is_acyclic())
                .collect()
        }
        LinearOnly => permutations(m)
            .into_iter()
            .map(|order| {
                let pairs = (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b)));
                Preference::from_pairs(
                    m,
                    pairs.map(|(a, b)| (order[a], order[b])).collect::<Vec<_>>(),
                )
                .expect("ranked pairs are asymmetric")
            })
            .collect(),
        MaximalSetsOnly => (1u64..1 << m)
            .map(|mask| {
                let top = BitSet::from_mask(mask);
                let head = top.first().expect("nonempty");
                Preference::from_pairs(m, (0..m).filter(|x| !top.contains(*x)).map(|x| (head, x)))
                    .expect("head beats only non-members")
            })
            .collect(),
    };
    let agenda = Agenda::new(all, m.max(1))?;
    Ok(prefs
        .into_iter()
        .filter(|p| !require_maximal || m == 0 || !p.maximal_set(&agenda).is_empty())
        .collect())
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// All set partitions of `{0..n-1}` in restricted-growth order.
pub fn set_partitions(n: usize) -> Vec<Vec<Coalition>> {
    fn rec(i: usize, n: usize, blocks: &mut Vec<Coalition>, out: &mut Vec<Vec<Coalition>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for k in 0..blocks.len() {
            blocks[k].insert(i);
            rec(i + 1, n, blocks, out);
            blocks[k].remove(i);
        }
        blocks.push(BitSet::singleton(i));
        rec(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}

/// Every simple game over `algebra` with at most `max_sets` winning
/// coalitions, in order of the bitmask over the canonically sorted nonempty
/// members.
pub fn all_games(algebra: &Algebra, max_sets: usize) -> Result<Vec<SimpleGame>> {
    let mut members: Vec<Coalition> = algebra.members().filter(|s| !s.is_empty()).collect();
    members.sort();
    if members.len() > 20 {
        return Err(Error::Scale(format!(
            "{} nonempty coalitions to combine",
            members.len()
        )));
    }
    (1u32..1 << members.len())
        .filter(|mask| mask.count_ones() as usize <= max_sets)
        .map(|mask| {
            let winning = members
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, s)| s.clone())
                .collect();
            SimpleGame::new(algebra.clone(), winning)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub mode: ProfileEnumerationMode,
    /// Most profiles one check may enumerate before falling back.
    pub guard: u64,
    /// Worker threads; 1 runs on the calling thread.
    pub jobs: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            mode: ProfileEnumerationMode::FullAsymmetric,
            guard: DEFAULT_GUARD,
            jobs: 1,
        }
    }
}

impl CheckOptions {
    pub fn with_mode(mode: ProfileEnumerationMode) -> Self {
        Self {
            mode,
            ..Self::default()
        }
    }
}

/// How the "for every profile" statements were established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evidence {
    /// Every profile in the space was evaluated.
    Enumeration,
    /// The space was too large; a constructed empty-core profile refutes the
    /// universal statements.
    Witness,
}

/// A profile as per-player lists of `(better, worse)` alternative indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileRecord {
    /// Position in the enumeration order, absent for constructed profiles.
    pub index: Option<u64>,
    pub preferences: Vec<Vec<(usize, usize)>>,
}

impl ProfileRecord {
    pub fn of(profile: &Profile, index: Option<u64>) -> Self {
        Self {
            index,
            preferences: profile
                .preferences()
                .iter()
                .map(Preference::pairs)
                .collect(),
        }
    }

    pub fn to_profile(&self, m: usize) -> Result<Profile> {
        let players = PlayerSet::new(self.preferences.len())?;
        let prefs = self
            .preferences
            .iter()
            .map(|pairs| Preference::from_pairs(m, pairs.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Profile::new(players, prefs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Statements {
    /// `#B` is below the game's number.
    pub i: bool,
    /// Universal nonemptiness of the first core notion, if evaluated.
    pub ii: Option<bool>,
    /// Universal nonemptiness of the second notion, if evaluated.
    pub iii: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: &'static str,
    pub mode: ProfileEnumerationMode,
    pub agenda_size: usize,
    /// Name of the number compared against `#B`.
    pub number_name: &'static str,
    pub number: ExtendedCardinal,
    pub statements: Statements,
    /// The relation the theorem asserts among the evaluated statements.
    pub holds: bool,
    pub evidence: Evidence,
    /// Measurable profiles in the space, when enumeration was used.
    pub profile_space: Option<u64>,
    /// Profiles evaluated; a shard stops once it has refuted everything it
    /// checks.
    pub profiles_enumerated: u64,
    /// Core computations performed.
    pub work_units: u64,
    /// Earliest profile with an empty core.
    pub empty_core_profile: Option<ProfileRecord>,
    /// Earliest profile with an empty core without majority dissatisfaction.
    pub empty_core_plus_profile: Option<ProfileRecord>,
    /// A social dominance cycle and the profile producing it.
    pub dominance_cycle: Option<(Vec<usize>, ProfileRecord)>,
    /// A profile contradicting the theorem; only present when `holds` is
    /// false.
    pub counterexample: Option<ProfileRecord>,
    pub notes: Vec<String>,
}

/// Measurable profiles for an agenda: one preference per block.
struct ProfileSpace {
    players: PlayerSet,
    blocks: Vec<Coalition>,
    prefs: Vec<Preference>,
    maxima: Vec<AltSet>,
}

impl ProfileSpace {
    fn new(algebra: &Algebra, agenda: &Agenda, mode: ProfileEnumerationMode) -> Result<Self> {
        let local = enumerate_preferences_for(agenda.len(), mode, true)?;
        let members: Vec<usize> = agenda.members().iter().collect();
        let m = agenda.universe();
        let prefs: Vec<Preference> = local
            .iter()
            .map(|p| {
                Preference::from_pairs(
                    m,
                    p.pairs().into_iter().map(|(x, y)| (members[x], members[y])),
                )
            })
            .collect::<Result<_>>()?;
        let maxima = prefs.iter().map(|p| p.maximal_set(agenda)).collect();
        Ok(Self {
            players: algebra.players(),
            blocks: algebra.blocks().to_vec(),
            prefs,
            maxima,
        })
    }

    fn size(&self) -> Option<u64> {
        (0..self.blocks.len()).try_fold(1u64, |acc, _| acc.checked_mul(self.prefs.len() as u64))
    }

    fn profile(&self, code: &[usize]) -> Profile {
        let mut prefs = vec![None; self.players.len()];
        for (b, &c) in self.blocks.iter().zip(code) {
            for i in b {
                prefs[i] = Some(self.prefs[c].clone());
            }
        }
        Profile::new(
            self.players,
            prefs
                .into_iter()
                .map(|p| p.expect("blocks cover N"))
                .collect(),
        )
        .expect("one preference per player")
    }

    fn player_maxima(&self, code: &[usize]) -> Vec<AltSet> {
        let mut out = vec![BitSet::new(); self.players.len()];
        for (b, &c) in self.blocks.iter().zip(code) {
            for i in b {
                out[i] = self.maxima[c].clone();
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy)]
struct Evaluate {
    core: bool,
    core_plus: bool,
    cycles: bool,
}

#[derive(Debug, Default)]
struct ScanResult {
    profiles: u64,
    work: u64,
    empty_core: Option<ProfileRecord>,
    empty_plus: Option<ProfileRecord>,
    cycle: Option<(Vec<usize>, ProfileRecord)>,
    /// Empty core with a nonempty core without majority dissatisfaction.
    inclusion_violation: Option<ProfileRecord>,
}

impl ScanResult {
    fn done(&self, eval: Evaluate) -> bool {
        (!eval.core || self.empty_core.is_some())
            && (!eval.core_plus || self.empty_plus.is_some())
            && (!eval.cycles || self.cycle.is_some())
    }

    fn merge(mut self, other: ScanResult) -> Self {
        self.profiles += other.profiles;
        self.work += other.work;
        self.empty_core = self.empty_core.or(other.empty_core);
        self.empty_plus = self.empty_plus.or(other.empty_plus);
        self.cycle = self.cycle.or(other.cycle);
        self.inclusion_violation = self.inclusion_violation.or(other.inclusion_violation);
        self
    }
}

fn scan(
    space: &ProfileSpace,
    w: &WinningSets,
    agenda: &Agenda,
    eval: Evaluate,
    jobs: usize,
) -> Result<ScanResult> {
    let width = space.prefs.len();
    let shards: Vec<usize> = (0..width).collect();
    let results: Vec<ScanResult> = if jobs <= 1 {
        shards
            .iter()
            .map(|&s| scan_shard(space, w, agenda, eval, s))
            .collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Invalid(format!("cannot start workers: {e}")))?;
        pool.install(|| {
            shards
                .par_iter()
                .map(|&s| scan_shard(space, w, agenda, eval, s))
                .collect()
        })
    };
    Ok(results
        .into_iter()
        .fold(ScanResult::default(), ScanResult::merge))
}

fn scan_shard(
    space: &ProfileSpace,
    w: &WinningSets,
    agenda: &Agenda,
    eval: Evaluate,
    first: usize,
) -> ScanResult {
    let width = space.prefs.len();
    let depth = space.blocks.len();
    let mut out = ScanResult::default();
    let mut code = vec![0usize; depth];
    code[0] = first;
    let mut index = first as u64 * (width as u64).pow(depth as u32 - 1);
    loop {
        out.profiles += 1;
        let needs_profile = eval.core || eval.cycles;
        let profile = needs_profile.then(|| space.profile(&code));
        let record = |p: Option<&Profile>| match p {
            Some(p) => ProfileRecord::of(p, Some(index)),
            None => ProfileRecord::of(&space.profile(&code), Some(index)),
        };
        let mut plus_empty = false;
        if eval.core_plus {
            out.work += 1;
            let maxima = space.player_maxima(&code);
            plus_empty = core_plus_from_maxima(w, agenda, &maxima).is_empty();
            if plus_empty && out.empty_plus.is_none() {
                out.empty_plus = Some(record(profile.as_ref()));
            }
        }
        if eval.core {
            out.work += 1;
            let p = profile.as_ref().expect("built above");
            if core(w, agenda, p).is_empty() {
                if out.empty_core.is_none() {
                    out.empty_core = Some(record(Some(p)));
                }
                if eval.core_plus && !plus_empty && out.inclusion_violation.is_none() {
                    out.inclusion_violation = Some(record(Some(p)));
                }
            }
        }
        if eval.cycles && out.cycle.is_none() {
            let p = profile.as_ref().expect("built above");
            if let Some(cycle) = dominance_cycle(w, agenda, p) {
                out.cycle = Some((cycle, record(Some(p))));
            }
        }
        if out.done(eval) {
            break;
        }
        // odometer over blocks 1..depth
        let mut k = depth;
        loop {
            k -= 1;
            if k == 0 {
                return out;
            }
            code[k] += 1;
            if code[k] < width {
                break;
            }
            code[k] = 0;
        }
        index += 1;
    }
    out
}

/// A directed cycle of social dominance among agenda members, if any.
/// Two alternatives dominating each other form a cycle of length two.
pub fn dominance_cycle(w: &WinningSets, agenda: &Agenda, profile: &Profile) -> Option<Vec<usize>> {
    let members: Vec<usize> = agenda.members().iter().collect();
    let succ: Vec<Vec<usize>> = members
        .iter()
        .map(|&x| {
            members
                .iter()
                .copied()
                .filter(|&y| y != x && dominates(w, profile, x, y))
                .collect()
        })
        .collect();
    let index_of = |x: usize| members.iter().position(|&m| m == x).expect("agenda member");
    // 0 unvisited, 1 on stack, 2 finished
    let mut state = vec![0u8; members.len()];
    let mut stack: Vec<usize> = Vec::new();
    fn visit(
        v: usize,
        succ: &[Vec<usize>],
        index_of: &dyn Fn(usize) -> usize,
        state: &mut [u8],
        stack: &mut Vec<usize>,
        members: &[usize],
    ) -> Option<Vec<usize>> {
        state[v] = 1;
        stack.push(v);
        for &y in &succ[v] {
            let u = index_of(y);
            if state[u] == 1 {
                let start = stack.iter().position(|&s| s == u).expect("on stack");
                return Some(stack[start..].iter().map(|&s| members[s]).collect());
            }
            if state[u] == 0 {
                if let Some(c) = visit(u, succ, index_of, state, stack, members) {
                    return Some(c);
                }
            }
        }
        stack.pop();
        state[v] = 2;
        None
    }
    for v in 0..members.len() {
        if state[v] == 0 {
            if let Some(c) = visit(v, &succ, &index_of, &mut state, &mut stack, &members) {
                return Some(c);
            }
        }
    }
    None
}

fn space_for(
    algebra: &Algebra,
    agenda: &Agenda,
    options: &CheckOptions,
) -> Result<(ProfileSpace, Option<u64>)> {
    let space = ProfileSpace::new(algebra, agenda, options.mode)?;
    let size = space.size().filter(|&s| s <= options.guard);
    Ok((space, size))
}

/// Checks that `#B < ν`, universal nonemptiness of the core without majority
/// dissatisfaction, and universal nonemptiness of the core agree over every
/// measurable profile for the agenda.
pub fn check_nakamura_equivalence(
    game: &SimpleGame,
    agenda: &Agenda,
    options: &CheckOptions,
) -> Result<TheoremReport> {
    let nu = game.nakamura_number().value;
    let i = nu.exceeds(agenda.len());
    let w = WinningSets::from(game);
    let mode = options.mode;
    let with_core = mode != ProfileEnumerationMode::MaximalSetsOnly;
    let (space, size) = space_for(game.algebra(), agenda, options)?;
    let mut report = TheoremReport {
        theorem: "nakamura-max",
        mode,
        agenda_size: agenda.len(),
        number_name: "nakamura",
        number: nu,
        statements: Statements {
            i,
            ii: None,
            iii: None,
        },
        holds: false,
        evidence: Evidence::Enumeration,
        profile_space: size,
        profiles_enumerated: 0,
        work_units: 0,
        empty_core_profile: None,
        empty_core_plus_profile: None,
        dominance_cycle: None,
        counterexample: None,
        notes: Vec::new(),
    };
    if size.is_some() {
        let eval = Evaluate {
            core: with_core,
            core_plus: true,
            cycles: false,
        };
        let scan = scan(&space, &w, agenda, eval, options.jobs)?;
        report.profiles_enumerated = scan.profiles;
        report.work_units = scan.work;
        report.statements.ii = Some(scan.empty_plus.is_none());
        if with_core {
            report.statements.iii = Some(scan.empty_core.is_none());
        } else {
            report
                .notes
                .push("maximal-set enumeration does not determine the core".into());
        }
        report.empty_core_profile = scan.empty_core;
        report.empty_core_plus_profile = scan.empty_plus;
        if let Some(v) = scan.inclusion_violation {
            report
                .notes
                .push("core empty while core without majority dissatisfaction is not".into());
            report.counterexample = Some(v);
        }
    } else if !i {
        let witness = if matches!(
            mode,
            ProfileEnumerationMode::LinearOnly | ProfileEnumerationMode::AcyclicOnly
        ) {
            empty_core_linear_witness(game, agenda)?
        } else {
            empty_core_witness(game, agenda)?
        };
        let p = &witness.profile;
        report.evidence = Evidence::Witness;
        report.work_units = 2;
        let empty_c = core(&w, agenda, p).is_empty();
        let empty_plus = core_plus(&w, agenda, p).is_empty();
        if !p.is_profile_for(agenda, game.algebra()) || !empty_plus || (with_core && !empty_c) {
            report
                .notes
                .push("constructed profile failed recomputation".into());
            report.counterexample = Some(ProfileRecord::of(p, None));
        }
        report.statements.ii = Some(!empty_plus);
        if with_core {
            report.statements.iii = Some(!empty_c);
            report.empty_core_profile = Some(ProfileRecord::of(p, None));
        }
        report.empty_core_plus_profile = Some(ProfileRecord::of(p, None));
    } else {
        return Err(Error::Scale(format!(
            "more than {} profiles and no constructive shortcut when #B < {nu}",
            options.guard
        )));
    }
    let s = report.statements;
    let agree = [s.ii, s.iii].iter().flatten().all(|&v| v == i);
    report.holds = agree && report.counterexample.is_none();
    if !agree && report.counterexample.is_none() {
        report.counterexample = if i {
            report
                .empty_core_plus_profile
                .clone()
                .or(report.empty_core_profile.clone())
        } else {
            report
                .notes
                .push("no empty-core profile although #B reaches the number".into());
            None
        };
    }
    Ok(report)
}

/// Over acyclic measurable profiles: `#B < ν` iff the core is always
/// nonempty iff social dominance on the agenda is always acyclic.
pub fn check_acyclic_theorem(
    game: &SimpleGame,
    agenda: &Agenda,
    options: &CheckOptions,
) -> Result<TheoremReport> {
    let nu = game.nakamura_number().value;
    let i = nu.exceeds(agenda.len());
    let w = WinningSets::from(game);
    let options = CheckOptions {
        mode: ProfileEnumerationMode::AcyclicOnly,
        ..*options
    };
    let (space, size) = space_for(game.algebra(), agenda, &options)?;
    let mut report = TheoremReport {
        theorem: "acyclic",
        mode: options.mode,
        agenda_size: agenda.len(),
        number_name: "nakamura",
        number: nu,
        statements: Statements {
            i,
            ii: None,
            iii: None,
        },
        holds: false,
        evidence: Evidence::Enumeration,
        profile_space: size,
        profiles_enumerated: 0,
        work_units: 0,
        empty_core_profile: None,
        empty_core_plus_profile: None,
        dominance_cycle: None,
        counterexample: None,
        notes: vec!["ii: core always nonempty; iii: dominance always acyclic on the agenda".into()],
    };
    if size.is_some() {
        let eval = Evaluate {
            core: true,
            core_plus: false,
            cycles: true,
        };
        let scan = scan(&space, &w, agenda, eval, options.jobs)?;
        report.profiles_enumerated = scan.profiles;
        report.work_units = scan.work;
        report.statements.ii = Some(scan.empty_core.is_none());
        report.statements.iii = Some(scan.cycle.is_none());
        report.empty_core_profile = scan.empty_core;
        report.dominance_cycle = scan.cycle;
    } else if !i {
        let witness = empty_core_linear_witness(game, agenda)?;
        let p = &witness.profile;
        report.evidence = Evidence::Witness;
        report.work_units = 1;
        let empty_c = core(&w, agenda, p).is_empty();
        let cycle = dominance_cycle(&w, agenda, p);
        report.statements.ii = Some(!empty_c);
        report.statements.iii = Some(cycle.is_none());
        report.empty_core_profile = Some(ProfileRecord::of(p, None));
        report.dominance_cycle = cycle.map(|c| (c, ProfileRecord::of(p, None)));
    } else {
        return Err(Error::Scale(format!(
            "more than {} acyclic profiles and no constructive shortcut when #B < {nu}",
            options.guard
        )));
    }
    let s = report.statements;
    report.holds = s.ii == Some(i) && s.iii == Some(i);
    if !report.holds {
        report.counterexample = report
            .empty_core_profile
            .clone()
            .or(report.dominance_cycle.as_ref().map(|(_, p)| p.clone()));
    }
    Ok(report)
}

/// For a winning family: `#B < κ` iff the core without majority
/// dissatisfaction (w.r.t. the family) is always nonempty, and either
/// implies the core is always nonempty. The converse of the last
/// implication is never asserted.
pub fn check_extended_equivalence(
    family: &WinningFamily,
    agenda: &Agenda,
    options: &CheckOptions,
) -> Result<TheoremReport> {
    let kappa = family.kappa_number().value;
    let i = kappa.exceeds(agenda.len());
    let w = family.winning_sets();
    let mode = options.mode;
    let with_core = mode != ProfileEnumerationMode::MaximalSetsOnly;
    let (space, size) = space_for(family.algebra(), agenda, options)?;
    let mut report = TheoremReport {
        theorem: "nakamura-max-extended",
        mode,
        agenda_size: agenda.len(),
        number_name: "kappa",
        number: kappa,
        statements: Statements {
            i,
            ii: None,
            iii: None,
        },
        holds: false,
        evidence: Evidence::Enumeration,
        profile_space: size,
        profiles_enumerated: 0,
        work_units: 0,
        empty_core_profile: None,
        empty_core_plus_profile: None,
        dominance_cycle: None,
        counterexample: None,
        notes: Vec::new(),
    };
    if family.induced_game().is_empty() {
        report.notes.push("induced game empty".into());
    }
    if size.is_some() {
        let eval = Evaluate {
            core: with_core,
            core_plus: true,
            cycles: false,
        };
        let scan = scan(&space, &w, agenda, eval, options.jobs)?;
        report.profiles_enumerated = scan.profiles;
        report.work_units = scan.work;
        report.statements.ii = Some(scan.empty_plus.is_none());
        if with_core {
            report.statements.iii = Some(scan.empty_core.is_none());
        }
        report.empty_core_profile = scan.empty_core;
        report.empty_core_plus_profile = scan.empty_plus;
        if let Some(v) = scan.inclusion_violation {
            report
                .notes
                .push("core empty while core without majority dissatisfaction is not".into());
            report.counterexample = Some(v);
        }
    } else if !i {
        let witness = empty_coreplus_witness_extended(family, agenda)?;
        let p = &witness.profile;
        report.evidence = Evidence::Witness;
        report.work_units = 1;
        let empty_plus = core_plus(&w, agenda, p).is_empty();
        if !p.is_profile_for(agenda, family.algebra()) || !empty_plus {
            report
                .notes
                .push("constructed profile failed recomputation".into());
            report.counterexample = Some(ProfileRecord::of(p, None));
        }
        report.statements.ii = Some(!empty_plus);
        report.empty_core_plus_profile = Some(ProfileRecord::of(p, None));
        report
            .notes
            .push("core nonemptiness not determined by the constructed profile".into());
    } else {
        return Err(Error::Scale(format!(
            "more than {} profiles and no constructive shortcut when #B < {kappa}",
            options.guard
        )));
    }
    let s = report.statements;
    let equivalence = s.ii == Some(i);
    let implication = !(i || s.ii == Some(true)) || s.iii != Some(false);
    report.holds = equivalence && implication && report.counterexample.is_none();
    if !report.holds && report.counterexample.is_none() {
        report.counterexample = report
            .empty_core_plus_profile
            .clone()
            .or(report.empty_core_profile.clone());
    }
    Ok(report)
}

/// Largest number of winning sets per family tried by the divergence search.
pub const SEARCH_MAX_SETS: usize = 4;

/// One instance exhibiting a divergence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FoundInstance {
    pub players: usize,
    pub blocks: Vec<Coalition>,
    pub sets: Vec<Coalition>,
    pub alternatives: Option<usize>,
    pub profile: Option<ProfileRecord>,
    pub nu_prime: Option<ExtendedCardinal>,
    pub kappa: Option<ExtendedCardinal>,
    /// The two sets being compared (indices of alternatives).
    pub left: Option<AltSet>,
    pub right: Option<AltSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "outcome", content = "instance")]
pub enum SearchOutcome {
    Found(Box<FoundInstance>),
    NoneInRange,
    /// The work budget ran out before the range was exhausted.
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivergenceReport {
    pub n_max: usize,
    pub m_max: usize,
    /// ν' < κ
    pub nu_prime_below_kappa: SearchOutcome,
    /// C+ w.r.t. W' differs from C+ w.r.t. W' ∩ B
    pub induced_core_plus_differs: SearchOutcome,
    /// C+ strictly inside C ∩ ⋃ max
    pub strict_core_plus_inclusion: SearchOutcome,
    pub work_units: u64,
}

/// `C+ ⊊ C ∩ ⋃_i max_B ≻_i`.
pub fn strict_core_plus_inclusion(w: &WinningSets, agenda: &Agenda, profile: &Profile) -> bool {
    let plus = core_plus(w, agenda, profile);
    let tops = profile
        .maximal_sets(agenda)
        .iter()
        .fold(BitSet::new(), |acc, s| &acc | s);
    let right = &core(w, agenda, profile) & &tops;
    plus.is_subset(&right) && plus != right
}

fn families(n: usize, max_sets: usize) -> impl Iterator<Item = Vec<Coalition>> {
    let subsets: Vec<Coalition> = {
        let mut v: Vec<Coalition> = (1u64..1 << n).map(BitSet::from_mask).collect();
        v.sort();
        v
    };
    (1..=max_sets).flat_map(move |k| {
        combinations(subsets.len(), k).map({
            let subsets = subsets.clone();
            move |idx| idx.into_iter().map(|i| subsets[i].clone()).collect()
        })
    })
}

fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let next = {
            let mut c = out.clone();
            let mut i = k;
            loop {
                if i == 0 {
                    break None;
                }
                i -= 1;
                if c[i] < n - k + i {
                    c[i] += 1;
                    for j in i + 1..k {
                        c[j] = c[j - 1] + 1;
                    }
                    break Some(c);
                }
            }
        };
        cur = next;
        Some(out)
    })
}

fn found(instance: FoundInstance) -> SearchOutcome {
    SearchOutcome::Found(Box::new(instance))
}

/// Searches small instances for each divergence category, reporting the
/// first hit per category. `budget` caps the core computations spent on each
/// profile-based category.
pub fn search_divergence_instance(
    n_max: usize,
    m_max: usize,
    budget: u64,
) -> Result<DivergenceReport> {
    if n_max > 6 || m_max > 4 {
        return Err(Error::Scale(format!(
            "search range n ≤ {n_max}, m ≤ {m_max} exceeds n ≤ 6, m ≤ 4"
        )));
    }
    if n_max == 0 || m_max < 2 {
        return Err(Error::Invalid(
            "need at least one player and two alternatives".into(),
        ));
    }
    let mut work = 0u64;
    let a = search_nu_prime_below_kappa(n_max)?;
    let (b, wb) = search_induced_core_plus(n_max, m_max, budget)?;
    let (c, wc) = search_strict_inclusion(n_max, m_max, budget)?;
    work += wb + wc;
    Ok(DivergenceReport {
        n_max,
        m_max,
        nu_prime_below_kappa: a,
        induced_core_plus_differs: b,
        strict_core_plus_inclusion: c,
        work_units: work,
    })
}

fn search_nu_prime_below_kappa(n_max: usize) -> Result<SearchOutcome> {
    for n in 1..=n_max {
        let players = PlayerSet::new(n)?;
        for blocks in set_partitions(n) {
            let algebra = Algebra::from_partition(players, blocks.clone())?;
            for sets in families(n, SEARCH_MAX_SETS) {
                let f = WinningFamily::new(algebra.clone(), GroundCollection::AllSubsets, sets)?;
                let nu_prime = f.nu_prime().value;
                let kappa = f.kappa_number().value;
                if nu_prime < kappa {
                    return Ok(found(FoundInstance {
                        players: n,
                        blocks,
                        sets: f.sets().to_vec(),
                        alternatives: None,
                        profile: None,
                        nu_prime: Some(nu_prime),
                        kappa: Some(kappa),
                        left: None,
                        right: None,
                    }));
                }
            }
        }
    }
    Ok(SearchOutcome::NoneInRange)
}

/// Slices `(n, m)` ordered by an estimate of their enumeration cost.
fn slices(n_max: usize, m_max: usize, cost: impl Fn(usize, usize) -> f64) -> Vec<(usize, usize)> {
    let mut v: Vec<(usize, usize)> = (1..=n_max)
        .flat_map(|n| (2..=m_max).map(move |m| (n, m)))
        .collect();
    v.sort_by(|a, b| {
        cost(a.0, a.1)
            .partial_cmp(&cost(b.0, b.1))
            .expect("finite costs")
            .then(a.cmp(b))
    });
    v
}

fn family_count(n: usize) -> f64 {
    let subsets = (1u64 << n) as f64 - 1.0;
    let mut total = 0.0;
    let mut c = 1.0;
    for k in 1..=SEARCH_MAX_SETS {
        c *= (subsets - (k as f64 - 1.0)) / k as f64;
        total += c.max(0.0);
    }
    total
}

fn search_induced_core_plus(
    n_max: usize,
    m_max: usize,
    budget: u64,
) -> Result<(SearchOutcome, u64)> {
    let mut work = 0u64;
    let order = slices(n_max, m_max, |n, m| {
        // C+ depends only on maximal sets; at most n blocks
        family_count(n) * ((1u64 << m) as f64 - 1.0).powi(n as i32)
    });
    for (n, m) in order {
        let players = PlayerSet::new(n)?;
        let agenda = Agenda::prefix(m, m)?;
        for blocks in set_partitions(n) {
            let algebra = Algebra::from_partition(players, blocks.clone())?;
            let space =
                ProfileSpace::new(&algebra, &agenda, ProfileEnumerationMode::MaximalSetsOnly)?;
            let width = space.prefs.len();
            for sets in families(n, SEARCH_MAX_SETS) {
                let f = WinningFamily::new(algebra.clone(), GroundCollection::AllSubsets, sets)?;
                if f.within_algebra() {
                    continue;
                }
                let outer = f.winning_sets();
                let induced = f.induced_game();
                let mut code = vec![0usize; blocks.len()];
                loop {
                    work += 2;
                    if work > budget {
                        return Ok((SearchOutcome::BudgetExhausted, work));
                    }
                    let maxima = space.player_maxima(&code);
                    let left = core_plus_from_maxima(&outer, &agenda, &maxima);
                    let right = core_plus_from_maxima(&induced, &agenda, &maxima);
                    if left != right {
                        let profile = space.profile(&code);
                        return Ok((
                            found(FoundInstance {
                                players: n,
                                blocks,
                                sets: f.sets().to_vec(),
                                alternatives: Some(m),
                                profile: Some(ProfileRecord::of(&profile, None)),
                                nu_prime: None,
                                kappa: None,
                                left: Some(left),
                                right: Some(right),
                            }),
                            work,
                        ));
                    }
                    if !advance(&mut code, width) {
                        break;
                    }
                }
            }
        }
    }
    Ok((SearchOutcome::NoneInRange, work))
}

fn search_strict_inclusion(
    n_max: usize,
    m_max: usize,
    budget: u64,
) -> Result<(SearchOutcome, u64)> {
    let mut work = 0u64;
    let relation_counts: Vec<f64> = (0..=m_max)
        .map(|m| {
            if m < 2 {
                1.0
            } else {
                enumerate_preferences_for(m, ProfileEnumerationMode::FullAsymmetric, true)
                    .map(|v| v.len() as f64)
                    .unwrap_or(f64::INFINITY)
            }
        })
        .collect();
    let order = slices(n_max, m_max, |n, m| {
        family_count(n) * relation_counts[m].powi(n as i32)
    });
    for (n, m) in order {
        let players = PlayerSet::new(n)?;
        let algebra = Algebra::power_set(players);
        let agenda = Agenda::prefix(m, m)?;
        let space = ProfileSpace::new(&algebra, &agenda, ProfileEnumerationMode::FullAsymmetric)?;
        let width = space.prefs.len();
        for sets in families(n, SEARCH_MAX_SETS) {
            let w = WinningSets::new(sets.clone())?;
            let mut code = vec![0usize; n];
            loop {
                work += 2;
                if work > budget {
                    return Ok((SearchOutcome::BudgetExhausted, work));
                }
                let profile = space.profile(&code);
                if strict_core_plus_inclusion(&w, &agenda, &profile) {
                    let tops = profile
                        .maximal_sets(&agenda)
                        .iter()
                        .fold(BitSet::new(), |acc, s| &acc | s);
                    return Ok((
                        found(FoundInstance {
                            players: n,
                            blocks: algebra.blocks().to_vec(),
                            sets: w.members().to_vec(),
                            alternatives: Some(m),
                            profile: Some(ProfileRecord::of(&profile, None)),
                            nu_prime: None,
                            kappa: None,
                            left: Some(core_plus(&w, &agenda, &profile)),
                            right: Some(&core(&w, &agenda, &profile) & &tops),
                        }),
                        work,
                    ));
                }
                if !advance(&mut code, width) {
                    break;
                }
            }
        }
    }
    Ok((SearchOutcome::NoneInRange, work))
}

/// Odometer step; false once every code has been visited.
fn advance(code: &mut [usize], width: usize) -> bool {
    for c in code.iter_mut().rev() {
        *c += 1;
        if *c < width {
            return true;
        }
        *c = 0;
    }
    false
}
