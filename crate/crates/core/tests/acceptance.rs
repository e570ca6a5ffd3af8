//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Run with `cargo test --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use coregames::cores::{core, core_plus, WinningSets};
use coregames::verify::{
    all_games, check_acyclic_theorem, check_extended_equivalence, check_nakamura_equivalence,
    set_partitions, strict_core_plus_inclusion, CheckOptions, Evidence, ProfileEnumerationMode,
};
use coregames::{
    empty_core_linear_witness, empty_core_witness, Agenda, Algebra, BitSet, Coalition,
    ExtendedCardinal, GroundCollection, PlayerSet, SimpleGame, WinningFamily,
};

type Check = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Check);
type NamedSuite = (&'static str, fn() -> Suite);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn labels(inst: &coregames::cli::Instance, s: &BitSet) -> String {
    format!("{{{}}}", inst.alternatives.labels_of(s).join(","))
}

fn examples() -> Check {
    let mut worst = Duration::ZERO;
    let mut timed = |f: &dyn Fn() -> Result<(), String>| -> Result<(), String> {
        let t = Instant::now();
        f()?;
        worst = worst.max(t.elapsed());
        Ok(())
    };
    timed(&|| {
        let e = load("example1.json");
        let w = WinningSets::from(&e.game().unwrap());
        let p = e.profile.as_ref().unwrap();
        let c = labels(&e, &core(&w, &e.agenda, p));
        let plus = labels(&e, &core_plus(&w, &e.agenda, p));
        let tops: Vec<String> = p
            .maximal_sets(&e.agenda)
            .iter()
            .map(|t| labels(&e, t))
            .collect();
        ensure(
            c == "{d,e}" && plus == "{e}" && tops == ["{a,e}", "{b,e}", "{c,e}"],
            || format!("example1: C={c} C+={plus} tops={tops:?}"),
        )
    })?;
    timed(&|| {
        let e = load("example2.json");
        let w = WinningSets::from(&e.game().unwrap());
        let p = e.profile.as_ref().unwrap();
        let c = labels(&e, &core(&w, &e.agenda, p));
        let plus = labels(&e, &core_plus(&w, &e.agenda, p));
        ensure(c == "{d}" && plus == "{}", || {
            format!("example2: C={c} C+={plus}")
        })
    })?;
    timed(&|| {
        let e = load("appendixA3.json");
        let w = WinningSets::from(&e.game().unwrap());
        let p = e.profile.as_ref().unwrap();
        let c = labels(&e, &core(&w, &e.agenda, p));
        let plus = labels(&e, &core_plus(&w, &e.agenda, p));
        let strict = strict_core_plus_inclusion(&w, &e.agenda, p);
        ensure(c == "{d,e}" && plus == "{e}" && strict, || {
            format!("appendixA3: C={c} C+={plus} strict={strict}")
        })
    })?;
    ensure(worst < Duration::from_secs(1), || {
        format!("slowest example took {worst:?}")
    })?;
    Ok(format!(
        "3 instances exact, slowest {:.3} s",
        worst.as_secs_f64()
    ))
}

fn nakamura_bounds() -> Check {
    let maj = SimpleGame::majority(PlayerSet::new(3).unwrap());
    let nu = maj.nakamura_number();
    ensure(nu.value == ExtendedCardinal::Finite(3), || {
        format!("majority of three: {}", nu.value)
    })?;
    let games = games_n3();
    ensure(games.len() == 127, || format!("{} games", games.len()))?;
    let mut weak = 0;
    for g in &games {
        let value = g.nakamura_number().value;
        let oracle = nakamura_oracle(g.winning(), 3);
        ensure(value.finite() == oracle, || {
            format!("{:?}: {value} vs oracle {oracle:?}", g.winning())
        })?;
        let common = g.winning().iter().fold(BitSet::full(3), |acc, s| &acc & s);
        ensure(
            g.is_weak() == !common.is_empty() && g.is_weak() == value.is_infinite(),
            || format!("{:?}: weakness mismatch", g.winning()),
        )?;
        match value {
            ExtendedCardinal::Infinite => weak += 1,
            ExtendedCardinal::Finite(k) => {
                let smallest = g.winning().iter().map(BitSet::len).min().unwrap();
                ensure(2 <= k && k <= smallest + 1 && smallest < 3, || {
                    format!("{:?}: bounds fail for {k}", g.winning())
                })?;
            }
        }
    }
    Ok(format!(
        "nu(maj3)=3, bounds hold on 127 games ({weak} weak)"
    ))
}

fn nakamura_equivalence() -> Check {
    let games = games_n3();
    let mut profiles = 0u64;
    let mut checks = 0;
    let full = CheckOptions::default();
    for k in 1..=3 {
        let agenda = Agenda::prefix(k, k).unwrap();
        for g in &games {
            let r = check_nakamura_equivalence(g, &agenda, &full).map_err(|e| e.to_string())?;
            let i = match nakamura_oracle(g.winning(), 3) {
                Some(nu) => k < nu,
                None => true,
            };
            ensure(
                r.evidence == Evidence::Enumeration
                    && r.holds
                    && r.statements.i == i
                    && r.statements.ii == Some(i)
                    && r.statements.iii == Some(i),
                || format!("{:?} with #B={k}: {:?}", g.winning(), r.statements),
            )?;
            profiles += r.profiles_enumerated;
            checks += 1;
        }
    }
    let maxsets = CheckOptions::with_mode(ProfileEnumerationMode::MaximalSetsOnly);
    for k in 4..=5 {
        let agenda = Agenda::prefix(k, k).unwrap();
        for g in &games {
            let r = check_nakamura_equivalence(g, &agenda, &maxsets).map_err(|e| e.to_string())?;
            let i = nakamura_oracle(g.winning(), 3).is_none_or(|nu| k < nu);
            ensure(
                r.evidence == Evidence::Enumeration && r.holds && r.statements.ii == Some(i),
                || format!("{:?} with #B={k} maxsets: {:?}", g.winning(), r.statements),
            )?;
            profiles += r.profiles_enumerated;
            checks += 1;
        }
    }
    Ok(format!(
        "{checks} (game, agenda) checks, {profiles} profiles evaluated"
    ))
}

fn witness_soundness() -> Check {
    let mut built = 0usize;
    let mut games_seen = 0usize;
    for n in 1..=4 {
        let players = PlayerSet::new(n).unwrap();
        for blocks in set_partitions(n) {
            let algebra = Algebra::from_partition(players, blocks).unwrap();
            for g in all_games(&algebra, usize::MAX).map_err(|e| e.to_string())? {
                games_seen += 1;
                let nu = match g.nakamura_number().value {
                    ExtendedCardinal::Finite(k) => k,
                    ExtendedCardinal::Infinite => continue,
                };
                let w = WinningSets::from(&g);
                for m in nu..=5 {
                    let agenda = Agenda::prefix(m, m).unwrap();
                    let plain = empty_core_witness(&g, &agenda).map_err(|e| e.to_string())?;
                    let p = &plain.profile;
                    ensure(
                        p.is_profile_for(&agenda, &algebra) && core(&w, &agenda, p).is_empty(),
                        || format!("witness fails for {:?} at m={m}", g.winning()),
                    )?;
                    let linear =
                        empty_core_linear_witness(&g, &agenda).map_err(|e| e.to_string())?;
                    let p = &linear.profile;
                    let orders_ok = p.preferences().iter().all(|q| {
                        q.is_linear_on(&BitSet::full(m)) && q.maximal_set(&agenda).len() == 1
                    });
                    ensure(
                        orders_ok
                            && p.is_profile_for(&agenda, &algebra)
                            && core(&w, &agenda, p).is_empty(),
                        || format!("linear witness fails for {:?} at m={m}", g.winning()),
                    )?;
                    built += 2;
                }
            }
        }
    }
    Ok(format!(
        "{built} witnesses over {games_seen} games on n <= 4, all algebras"
    ))
}

fn kappa_correctness() -> Check {
    let mut instances = 0usize;
    for n in 1..=5 {
        let players = PlayerSet::new(n).unwrap();
        let subsets: Vec<Coalition> = (1u64..1 << n).map(BitSet::from_mask).collect();
        let limit = 2;
        for blocks in set_partitions(n) {
            let algebra = Algebra::from_partition(players, blocks).unwrap();
            let mut idx = Vec::new();
            for size in 1..=4usize {
                for_each_combination(subsets.len(), size, &mut idx, &mut |combo| {
                    let sets = combo.iter().map(|&k| subsets[k].clone()).collect();
                    let f = WinningFamily::new(algebra.clone(), GroundCollection::AllSubsets, sets)
                        .map_err(|e| e.to_string())?;
                    let fast = f.kappa_number();
                    let slow = f
                        .kappa_number_bruteforce(limit)
                        .map_err(|e| e.to_string())?;
                    let nu_prime = f.nu_prime().value;
                    let nu = f.nu_induced().value;
                    let witness_ok = match (&fast.value, &fast.witness) {
                        (ExtendedCardinal::Finite(k), Some(wit)) => {
                            wit.is_valid_for(&f) && wit.cost() == *k
                        }
                        (ExtendedCardinal::Infinite, None) => true,
                        _ => false,
                    };
                    let two = ExtendedCardinal::Finite(2);
                    ensure(
                        fast.value == slow.value
                            && witness_ok
                            && two <= nu_prime
                            && nu_prime <= fast.value
                            && fast.value <= nu,
                        || {
                            format!(
                                "{:?} over {:?}: kappa {} oracle {} nu' {nu_prime} nu {nu}",
                                f.sets(),
                                algebra.blocks(),
                                fast.value,
                                slow.value
                            )
                        },
                    )?;
                    instances += 1;
                    Ok(())
                })?;
            }
        }
    }
    for g in games_n3() {
        let f = WinningFamily::new(
            g.algebra().clone(),
            GroundCollection::AllSubsets,
            g.winning().to_vec(),
        )
        .map_err(|e| e.to_string())?;
        ensure(f.kappa_number().value == g.nakamura_number().value, || {
            format!("kappa differs from nu for {:?}", g.winning())
        })?;
    }
    Ok(format!(
        "{instances} families agree with the oracle and satisfy the chain; kappa = nu on 127 games"
    ))
}

fn for_each_combination(
    n: usize,
    k: usize,
    cur: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]) -> Result<(), String>,
) -> Result<(), String> {
    if cur.len() == k {
        return f(cur);
    }
    let start = cur.last().map_or(0, |&l| l + 1);
    for i in start..n {
        if n - i < k - cur.len() {
            break;
        }
        cur.push(i);
        for_each_combination(n, k, cur, f)?;
        cur.pop();
    }
    Ok(())
}

fn extended_equivalence() -> Check {
    let algebra = Algebra::from_partition(
        PlayerSet::new(6).unwrap(),
        vec![set(&[0, 1]), set(&[2, 3]), set(&[4, 5])],
    )
    .unwrap();
    let base = vec![set(&[0, 2]), set(&[3, 5]), set(&[4, 0])];
    let mut with_pair = base.clone();
    with_pair.extend([set(&[0, 2, 4]), set(&[1, 3, 5])]);
    let mut lines = Vec::new();
    for sets in [base, with_pair] {
        let f = WinningFamily::new(algebra.clone(), GroundCollection::AllSubsets, sets)
            .map_err(|e| e.to_string())?;
        let kappa = f.kappa_number().value;
        let nu_prime = f.nu_prime().value;
        ensure(
            kappa == ExtendedCardinal::Finite(3) && nu_prime == ExtendedCardinal::Finite(2),
            || format!("kappa {kappa}, nu' {nu_prime}"),
        )?;
        for k in 2..=3 {
            let r = check_extended_equivalence(
                &f,
                &Agenda::prefix(k, k).unwrap(),
                &CheckOptions::default(),
            )
            .map_err(|e| e.to_string())?;
            let i = k < 3;
            let implication = !(r.statements.i || r.statements.ii == Some(true))
                || r.statements.iii == Some(true);
            ensure(
                r.holds && r.statements.i == i && r.statements.ii == Some(i) && implication,
                || format!("{:?} #B={k}: {:?}", f.sets(), r.statements),
            )?;
            lines.push(format!("#B={k}: {:?}", r.statements));
        }
    }
    Ok(format!(
        "closure instances (kappa=3, nu'=2): {}; converse of the core implication not asserted",
        lines.join("; ")
    ))
}

fn dominance_cycles() -> Check {
    let maj = SimpleGame::majority(PlayerSet::new(3).unwrap());
    let opts = CheckOptions::default();
    let r = check_acyclic_theorem(&maj, &Agenda::prefix(3, 3).unwrap(), &opts)
        .map_err(|e| e.to_string())?;
    let cycle = r.dominance_cycle.as_ref().map(|(c, _)| c.clone());
    ensure(
        r.holds && r.statements.iii == Some(false) && cycle.is_some(),
        || format!("{:?}", r.statements),
    )?;
    for pair in [[0, 1], [0, 2], [1, 2]] {
        let agenda = Agenda::new(set(&pair), 3).unwrap();
        let r = check_acyclic_theorem(&maj, &agenda, &opts).map_err(|e| e.to_string())?;
        ensure(
            r.holds && r.dominance_cycle.is_none() && r.statements.iii == Some(true),
            || format!("agenda {pair:?}: {:?}", r.statements),
        )?;
    }
    Ok(format!(
        "cycle {:?} on three alternatives; none on any pair",
        cycle.unwrap()
    ))
}

fn property_suites() -> Check {
    let suites: [NamedSuite; 5] = [
        ("tops-only", suite_tops_only),
        ("C+ in C", suite_core_plus_in_core),
        ("family inclusions", suite_family_inclusions),
        ("pareto", suite_pareto),
        ("extended dominance", suite_extended_dominance),
    ];
    let mut parts = Vec::new();
    for (name, run) in suites {
        let s = run();
        ensure(s.passed(10_000), || {
            format!(
                "{name}: {} instances, failures {:?}",
                s.instances, s.failures
            )
        })?;
        parts.push(format!("{name} {}", s.instances));
    }
    Ok(parts.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("example reproduction", 3, examples),
        ("nakamura number bounds", 1, nakamura_bounds),
        ("nakamura equivalence, exhaustive", 60, nakamura_equivalence),
        ("witness soundness", 30, witness_soundness),
        ("kappa fast path vs oracle", 120, kappa_correctness),
        (
            "kappa equivalence on closure instances",
            60,
            extended_equivalence,
        ),
        ("dominance cycles", 10, dominance_cycles),
        ("property suites", 60, property_suites),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(*limit);
        let (status, detail) = match (&result, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("over time limit: {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{status} {} {name} [{:.2} s, limit {limit} s] {detail}",
            k + 1,
            took.as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
