use std::fs;
use std::io::{self, Write};
use std::path::Path;

use hunt_core::analytics::{
    self, check_lemma2, default_corpus, even_corpus, lower_bound_known_distance, lower_bound_no_distance,
    random_corpus, AnalyticsError, CorpusEntry, OverheadPolicy, OverheadQuery, OverheadReport, PenaltyWitness,
};
use hunt_core::engine::{run, RunOptions};
use hunt_core::generators::{generate, Family, GenSpec};
use hunt_core::knowledge::{Knowledge, KnowledgeKind};
use hunt_core::oracle::{iso_check, min_cover_walk, MAX_ISO_NODES};
use hunt_core::strategies::{blind_schedule, StrategySpec};
use hunt_core::tree::{from_json, level_counts, to_json, PortMode, PortTree};
use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::args::{
    BoundsArgs, Cli, Command, Corpus, FamilyName, OracleCommand, OverheadArgs, Ports, RunArgs, TreeArgs, VerifyCommand,
    WitnessCommand,
};
use crate::output::Emitter;

/// Keeps port assignments independent of the shape stream.
const PORT_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

/// Names the instance a failure came from.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Diagnostic {
    pub family: String,
    pub param: String,
    pub relabeling: Option<u64>,
    pub d: Option<usize>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{message}")]
    Check {
        message: String,
        instance: Option<Diagnostic>,
    },
    #[error("{message}")]
    Compute {
        message: String,
        instance: Option<Diagnostic>,
    },
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn diagnostic(&self) -> serde_json::Value {
        let (kind, instance) = match self {
            CliError::Usage(_) => ("usage", None),
            CliError::Check { instance, .. } => ("check", instance.as_ref()),
            CliError::Compute { instance, .. } => ("compute", instance.as_ref()),
            CliError::Io(_) => ("io", None),
        };
        serde_json::json!({ "error": kind, "message": self.to_string(), "instance": instance })
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

/// A tree together with the labels every output row carries.
struct Source {
    tree: PortTree,
    family: String,
    param: String,
}

impl Source {
    fn diag(&self, relabeling: Option<u64>, d: Option<usize>) -> Diagnostic {
        Diagnostic {
            family: self.family.clone(),
            param: self.param.clone(),
            relabeling,
            d,
        }
    }

    fn analytics_error(&self, e: AnalyticsError) -> CliError {
        match e {
            AnalyticsError::Engine { instance, source } => CliError::Compute {
                message: source.to_string(),
                instance: Some(self.diag(Some(instance.relabeling), instance.d)),
            },
            AnalyticsError::Parameter(_) | AnalyticsError::Knowledge(_) => usage(e),
            other => CliError::Compute {
                message: other.to_string(),
                instance: Some(self.diag(None, None)),
            },
        }
    }
}

fn need(v: Option<usize>, family: &str, flag: &str) -> Result<usize, CliError> {
    v.ok_or_else(|| usage(format!("--family {family} needs --{flag}")))
}

fn family_of(a: &TreeArgs, name: FamilyName, seed: u64) -> Result<Family, CliError> {
    Ok(match name {
        FamilyName::Star => Family::Star {
            n: need(a.n, "star", "n")?,
        },
        FamilyName::StarPendant => Family::StarPendant {
            n: need(a.n, "star-pendant", "n")?,
        },
        FamilyName::Caterpillar => Family::Caterpillar {
            l: need(a.l, "caterpillar", "l")?,
        },
        FamilyName::FullBinary => Family::FullBinary {
            h: need(a.h, "full-binary", "h")?,
        },
        FamilyName::Path => Family::Path {
            l: need(a.l, "path", "l")?,
        },
        FamilyName::Broom => Family::Broom {
            k: need(a.k, "broom", "k")?,
        },
        FamilyName::EvenRandom => Family::EvenRandom {
            depth: need(a.depth, "even-random", "depth")?,
            branching: need(a.branching, "even-random", "branching")?,
            seed,
        },
        FamilyName::Random => Family::Random {
            nodes: need(a.nodes, "random", "nodes")?,
            max_degree: need(a.max_degree, "random", "max-degree")?,
            seed,
        },
    })
}

fn read_tree(path: &Path) -> Result<PortTree, CliError> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load(a: &TreeArgs, seed: u64) -> Result<Source, CliError> {
    if let Some(path) = &a.tree {
        return Ok(Source {
            tree: read_tree(path)?,
            family: "file".into(),
            param: path.display().to_string(),
        });
    }
    let name = a.family.ok_or_else(|| usage("either --tree or --family is required"))?;
    let family = family_of(a, name, seed)?;
    let ports = match a.ports {
        Ports::Sorted => PortMode::Sorted,
        Ports::Seeded => PortMode::Seeded(seed ^ PORT_SALT),
    };
    let tree = generate(&GenSpec { family, ports }).map_err(usage)?;
    Ok(Source {
        tree,
        family: family.name().into(),
        param: family.param(),
    })
}

pub fn dispatch(cli: &Cli) -> Result<(), CliError> {
    let config = serde_json::to_value(cli).expect("config serializes");
    let open = || Emitter::open(cli.format, cli.out.as_deref(), &config);
    match &cli.command {
        Command::Generate(a) => {
            let src = load(a, cli.seed)?;
            let text = to_json(&src.tree);
            match &cli.out {
                Some(p) => fs::write(p, text + "\n")?,
                None => writeln!(io::stdout().lock(), "{text}")?,
            }
            Ok(())
        }
        Command::Run(a) => run_cmd(cli, a, open()?),
        Command::Overhead(a) => overhead_cmd(cli, a, open()?),
        Command::Bounds(a) => bounds_cmd(cli, a, open()?),
        Command::Witness(w) => witness_cmd(cli, w, open()?),
        Command::Verify(VerifyCommand::Lemma2 { corpus }) => verify_cmd(cli, *corpus, open()?),
        Command::Oracle(o) => oracle_cmd(cli, o, open()?),
    }
}

#[derive(Serialize)]
struct RunRow<'a> {
    family: &'a str,
    param: &'a str,
    strategy: String,
    kind: &'static str,
    distance: Option<usize>,
    level: usize,
    cost: Option<u64>,
    total_moves: u64,
    halted: bool,
}

fn run_cmd(cli: &Cli, a: &RunArgs, mut out: Emitter) -> Result<(), CliError> {
    let src = load(&a.tree, cli.seed)?;
    let knowledge = Knowledge::new(a.kind, &src.tree, a.d).map_err(usage)?;
    let opts = RunOptions {
        fuel: cli.fuel,
        ..RunOptions::default()
    };
    let trace = run(a.strategy.build().as_mut(), &knowledge, &src.tree, &opts).map_err(|e| CliError::Compute {
        message: e.to_string(),
        instance: Some(src.diag(Some(0), a.d)),
    })?;
    for level in 1..=src.tree.depth() {
        let cost = src
            .tree
            .nodes_at_level(level)
            .map(|v| trace.first_visit[v])
            .try_fold(0, |acc, t| t.map(|t| acc.max(t)));
        out.row(&RunRow {
            family: &src.family,
            param: &src.param,
            strategy: a.strategy.to_string(),
            kind: a.kind.name(),
            distance: a.d,
            level,
            cost,
            total_moves: trace.total_moves,
            halted: trace.halted,
        })?;
    }
    out.finish()?;
    Ok(())
}

#[derive(Serialize)]
struct OverheadRow<'a> {
    family: &'a str,
    param: &'a str,
    m: usize,
    strategy: String,
    kind: &'static str,
    value_num: u64,
    value_den: u64,
    exactness: String,
}

impl<'a> OverheadRow<'a> {
    fn new(family: &'a str, param: &'a str, r: &OverheadReport) -> Self {
        Self {
            family,
            param,
            m: r.m,
            strategy: r.strategy.to_string(),
            kind: r.kind.name(),
            value_num: *r.value.numer(),
            value_den: *r.value.denom(),
            exactness: r.exactness.to_string(),
        }
    }
}

fn policy(cli: &Cli, samples: usize) -> OverheadPolicy {
    OverheadPolicy {
        cap: cli.relabel_cap,
        samples,
        seed: cli.seed,
        fuel: cli.fuel,
    }
}

fn overhead_cmd(cli: &Cli, a: &OverheadArgs, mut out: Emitter) -> Result<(), CliError> {
    let src = load(&a.tree, cli.seed)?;
    let p = policy(cli, a.samples);
    let reports = if a.curve {
        if a.d.is_some() {
            return Err(usage("--curve takes every d <= m; drop --d"));
        }
        analytics::overhead_curve(&src.tree, a.strategy, a.kind, a.m, &p)
    } else {
        let q = OverheadQuery {
            strategy: a.strategy,
            kind: a.kind,
            m: a.m,
            distance: a.d,
        };
        analytics::overhead(&src.tree, &q, &p).map(|r| vec![r])
    }
    .map_err(|e| src.analytics_error(e))?;
    for r in &reports {
        out.row(&OverheadRow::new(&src.family, &src.param, r))?;
    }
    out.finish()?;
    Ok(())
}

#[derive(Serialize)]
struct BoundsRow<'a> {
    family: &'a str,
    param: &'a str,
    d: usize,
    level_count: u64,
    cumulative: u64,
    known_distance_bound: u64,
    no_distance_num: u64,
    no_distance_den: u64,
}

fn bounds_cmd(cli: &Cli, a: &BoundsArgs, mut out: Emitter) -> Result<(), CliError> {
    let src = load(&a.tree, cli.seed)?;
    let profile = level_counts(&src.tree);
    let m = a.m.unwrap_or(profile.depth());
    if m < 1 {
        return Err(usage("radius m must be at least 1"));
    }
    for d in 1..=m.min(profile.depth()) {
        let nd = lower_bound_no_distance(&profile, d);
        out.row(&BoundsRow {
            family: &src.family,
            param: &src.param,
            d,
            level_count: profile.count(d),
            cumulative: profile.up_to(d),
            known_distance_bound: lower_bound_known_distance(&profile, d).expect("d within depth"),
            no_distance_num: *nd.numer(),
            no_distance_den: *nd.denom(),
        })?;
    }
    out.finish()?;
    Ok(())
}

#[derive(Serialize)]
struct WitnessRow {
    role: &'static str,
    family: String,
    param: String,
    m: usize,
    strategy: String,
    kind: String,
    value_num: u64,
    value_den: u64,
    exactness: String,
}

impl WitnessRow {
    fn report(role: &'static str, family: &Family, r: &OverheadReport) -> Self {
        Self {
            role,
            family: family.name().into(),
            param: family.param(),
            m: r.m,
            strategy: r.strategy.to_string(),
            kind: r.kind.name().into(),
            value_num: *r.value.numer(),
            value_den: *r.value.denom(),
            exactness: r.exactness.to_string(),
        }
    }

    fn value(role: &'static str, family: &Family, m: usize, v: Ratio<u64>) -> Self {
        Self {
            role,
            family: family.name().into(),
            param: family.param(),
            m,
            strategy: String::new(),
            kind: String::new(),
            value_num: *v.numer(),
            value_den: *v.denom(),
            exactness: "analytic".into(),
        }
    }
}

fn emit_penalty(out: &mut Emitter, w: &PenaltyWitness) -> io::Result<()> {
    out.row(&WitnessRow::report("weaker", &w.family, &w.weaker.overhead))?;
    out.row(&WitnessRow::report("stronger", &w.family, &w.stronger.overhead))?;
    if let Some(f) = w.weaker_floor {
        out.row(&WitnessRow::value("weaker_floor", &w.family, w.m, f))?;
    }
    let mut ratio = WitnessRow::value("ratio", &w.family, w.m, w.ratio);
    ratio.exactness = "witness".into();
    out.row(&ratio)
}

fn witness_error(family: Family, e: AnalyticsError) -> CliError {
    Source {
        tree: PortTree::from_parents(&[None], PortMode::Sorted).expect("single node"),
        family: family.name().into(),
        param: family.param(),
    }
    .analytics_error(e)
}

fn witness_cmd(cli: &Cli, w: &WitnessCommand, mut out: Emitter) -> Result<(), CliError> {
    let failure = match *w {
        WitnessCommand::Star { n } => {
            let family = Family::StarPendant { n };
            let wit = analytics::penalty_witness_star(n).map_err(|e| witness_error(family, e))?;
            emit_penalty(&mut out, &wit)?;
            (wit.ratio != Ratio::from_integer(n as u64)).then(|| format!("ratio {} differs from n = {n}", wit.ratio))
        }
        WitnessCommand::Caterpillar { l, samples } => {
            let family = Family::Caterpillar { l };
            let wit = analytics::penalty_witness_caterpillar(l, &policy(cli, samples))
                .map_err(|e| witness_error(family, e))?;
            emit_penalty(&mut out, &wit)?;
            let floor = wit.weaker_floor.expect("caterpillar witnesses carry a floor");
            if wit.weaker.overhead.value < floor {
                Some(format!("weaker overhead {} below {floor}", wit.weaker.overhead.value))
            } else if wit.stronger.overhead.value > Ratio::from_integer(7) {
                Some(format!("spine overhead {} above 7", wit.stronger.overhead.value))
            } else {
                None
            }
        }
        WitnessCommand::Doubling { k } => {
            let family = Family::FullBinary { h: 1 << (k.min(8) + 1) };
            let wit = analytics::penalty_witness_doubling(k).map_err(|e| witness_error(family, e))?;
            out.row(&WitnessRow::report("doubling", &family, &wit.doubling))?;
            out.row(&WitnessRow::report("incremental", &family, &wit.incremental))?;
            out.row(&WitnessRow::value("absolute_bound", &family, wit.m, wit.absolute_bound))?;
            out.row(&WitnessRow::value("relative_bound", &family, wit.m, wit.relative_bound))?;
            (!wit.holds).then(|| format!("doubling overhead {} below a bound", wit.doubling.value))
        }
    };
    out.finish()?;
    match failure {
        Some(message) => Err(CliError::Check {
            message,
            instance: None,
        }),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct ScheduleBoundRow<'a> {
    family: &'a str,
    param: &'a str,
    d: usize,
    covering_step: usize,
    cost: u64,
    bound: u64,
    slack: i64,
    pull_back: bool,
    pass: bool,
}

fn verify_cmd(cli: &Cli, corpus: Corpus, mut out: Emitter) -> Result<(), CliError> {
    let entries: Vec<CorpusEntry> = match corpus {
        Corpus::Default => default_corpus(cli.seed),
        Corpus::Random => random_corpus(cli.seed, 200),
        Corpus::Even => even_corpus(cli.seed, 50),
    };
    let mut failures = 0usize;
    let mut first: Option<Diagnostic> = None;
    let stderr = io::stderr();
    for e in &entries {
        let (family, param) = (e.family.name(), e.family.param());
        let diag = |d: Option<usize>| Diagnostic {
            family: family.into(),
            param: param.clone(),
            relabeling: None,
            d,
        };
        let knowledge = Knowledge::new(KnowledgeKind::BlindNoDist, &e.tree, None).expect("no distance");
        let opts = RunOptions {
            fuel: cli.fuel,
            ..RunOptions::default()
        };
        let trace =
            run(StrategySpec::Algo1.build().as_mut(), &knowledge, &e.tree, &opts).map_err(|err| CliError::Compute {
                message: err.to_string(),
                instance: Some(diag(None)),
            })?;
        let schedule = blind_schedule(&level_counts(&e.tree));
        for d in 1..=e.tree.depth() {
            let r = check_lemma2(&e.tree, &trace, &schedule, d);
            let pass = r.passed();
            out.row(&ScheduleBoundRow {
                family,
                param: &param,
                d,
                covering_step: r.covering_step,
                cost: r.cost,
                bound: 16 * level_counts(&e.tree).up_to(d),
                slack: r.slack,
                pull_back: r.pull_back_seen,
                pass,
            })?;
            if !pass {
                failures += 1;
                let failed: Vec<_> = r.failures().collect();
                let line = serde_json::json!({ "error": "check", "instance": diag(Some(d)), "failed": failed });
                writeln!(stderr.lock(), "{line}")?;
                first.get_or_insert_with(|| diag(Some(d)));
            }
        }
    }
    out.finish()?;
    if failures > 0 {
        return Err(CliError::Check {
            message: format!("{failures} instance(s) failed"),
            instance: first,
        });
    }
    Ok(())
}

#[derive(Serialize)]
struct CoverRow<'a> {
    family: &'a str,
    param: &'a str,
    level: usize,
    targets: usize,
    cost: u64,
    walk: String,
}

#[derive(Serialize)]
struct IsoRow {
    a: String,
    b: String,
    a_nodes: usize,
    b_nodes: usize,
    isomorphic: bool,
}

fn oracle_cmd(cli: &Cli, o: &OracleCommand, mut out: Emitter) -> Result<(), CliError> {
    match o {
        OracleCommand::Cover { tree, level } => {
            let src = load(tree, cli.seed)?;
            if *level < 1 || *level > src.tree.depth() {
                return Err(usage(format!("level {level} outside [1, {}]", src.tree.depth())));
            }
            let targets: Vec<_> = src.tree.nodes_at_level(*level).collect();
            let w = min_cover_walk(&src.tree, &targets).map_err(usage)?;
            let walk = w.ports.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
            out.row(&CoverRow {
                family: &src.family,
                param: &src.param,
                level: *level,
                targets: targets.len(),
                cost: w.cost,
                walk,
            })?;
        }
        OracleCommand::Iso { a, b } => {
            let (ta, tb) = (read_tree(a)?, read_tree(b)?);
            if ta.len() + tb.len() > MAX_ISO_NODES {
                return Err(usage(format!("iso takes at most {MAX_ISO_NODES} nodes in total")));
            }
            out.row(&IsoRow {
                a: a.display().to_string(),
                b: b.display().to_string(),
                a_nodes: ta.len(),
                b_nodes: tb.len(),
                isomorphic: iso_check(&ta, &tb),
            })?;
        }
    }
    out.finish()?;
    Ok(())
}
