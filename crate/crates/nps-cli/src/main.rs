//! Command-line front end: instance I/O, reduction execution, embedding
//! verification, game solving, and lift verification.
//!
//! Exit codes: 0 success (or first-player win / checks pass), 1 negative
//! verdict or failed check, 2 unknown problem or reduction, 3 decode
//! failure, 4 enumeration cap exceeded, 5 other errors.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nps_core::{Cap, CoreError, InstanceBundle, SubsetMask};
use nps_games::json::GameDoc;
use nps_lifting::LiftedGamePair;
use report::{fnv_digest, RunReport};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "nps",
    version,
    about = "Subset-universe problems, solution-embedding reductions, and multilevel games"
)]
struct Cli {
    /// Brute-force enumeration cap, in universe elements.
    #[arg(long, global = true, default_value_t = 24)]
    cap: usize,
    /// Worker threads for solution enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Emit a machine-readable JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for generated instances (check-se --fuzz).
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List registered problems, reduction edges, and model transforms.
    Catalog,
    /// Apply a reduction chain to an instance and write the target instance
    /// with its embedding table.
    Reduce(ReduceArgs),
    /// Check the solution-embedding property of a chain on an instance, or
    /// on generated instances with --fuzz.
    CheckSe(CheckSeArgs),
    /// Solve a game file exhaustively.
    Solve(SolveArgs),
    /// Lift a game across a reduction chain or through a hardness gadget.
    Lift(LiftArgs),
}

#[derive(Args)]
struct ReduceArgs {
    /// Input instance (JSON document, or DIMACS when --problem names a SAT
    /// variant and the file does not parse as JSON).
    input: PathBuf,
    /// Problem name of the input; required for DIMACS, checked against JSON.
    #[arg(long)]
    problem: Option<String>,
    /// Reduction chain as target problem names, e.g. "3sat-l->vertex-cover"
    /// or "vertex-cover,dominating-set".
    #[arg(long)]
    chain: String,
    /// Output file for the reduced instance document.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CheckSeArgs {
    /// Input instance; omit when fuzzing.
    input: Option<PathBuf>,
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    chain: String,
    /// Generate this many random source instances instead of reading one.
    #[arg(long)]
    fuzz: Option<usize>,
}

#[derive(Args)]
struct SolveArgs {
    /// Game document.
    input: PathBuf,
}

#[derive(Args)]
struct LiftArgs {
    /// Source game document.
    input: PathBuf,
    /// Reduction chain to lift across.
    #[arg(long, conflicts_with = "gadget")]
    chain: Option<String>,
    /// Hardness gadget: "interdiction" or "adjustable" (selection games on
    /// sat-v only).
    #[arg(long)]
    gadget: Option<String>,
    /// Solve both games and verify winner preservation.
    #[arg(long)]
    verify: bool,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug)]
enum CmdError {
    Unknown(String),
    Decode(String),
    CapExceeded(String),
    Other(String),
}

impl CmdError {
    fn exit_code(&self) -> u8 {
        match self {
            CmdError::Unknown(_) => 2,
            CmdError::Decode(_) => 3,
            CmdError::CapExceeded(_) => 4,
            CmdError::Other(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            CmdError::Unknown(m)
            | CmdError::Decode(m)
            | CmdError::CapExceeded(m)
            | CmdError::Other(m) => m,
        }
    }
}

impl From<CoreError> for CmdError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::CapExceeded { .. } => CmdError::CapExceeded(e.to_string()),
            CoreError::InvalidInstance(_) | CoreError::PayloadType { .. } => {
                CmdError::Decode(e.to_string())
            }
            other => CmdError::Other(other.to_string()),
        }
    }
}

impl From<nps_games::GameError> for CmdError {
    fn from(e: nps_games::GameError) -> Self {
        match e {
            nps_games::GameError::Core(c) => c.into(),
            other => CmdError::Decode(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cap = Cap::new(cli.cap);
    let result = match &cli.command {
        Command::Catalog => cmd_catalog(&cli),
        Command::Reduce(args) => cmd_reduce(&cli, args, cap),
        Command::CheckSe(args) => cmd_check_se(&cli, args, cap),
        Command::Solve(args) => cmd_solve(&cli, args, cap),
        Command::Lift(args) => cmd_lift(&cli, args, cap),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}

fn read_file(path: &Path) -> Result<String, CmdError> {
    std::fs::read_to_string(path)
        .map_err(|e| CmdError::Decode(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), CmdError> {
    std::fs::write(path, text)
        .map_err(|e| CmdError::Other(format!("cannot write {}: {e}", path.display())))
}

/// Reads an instance document; falls back to DIMACS for SAT payloads.
fn read_instance(path: &Path, problem: Option<&str>) -> Result<(InstanceBundle, String), CmdError> {
    let text = read_file(path)?;
    if let Ok(doc) = serde_json::from_str::<Value>(&text) {
        let inst = nps_reductions::decode_instance(&doc).map_err(CmdError::from)?;
        if let Some(p) = problem {
            if p != inst.spec().name() {
                return Err(CmdError::Decode(format!(
                    "instance declares problem `{}`, --problem says `{p}`",
                    inst.spec().name()
                )));
            }
        }
        return Ok((inst, text));
    }
    let problem = problem.ok_or_else(|| {
        CmdError::Decode("DIMACS input needs --problem naming a SAT variant".into())
    })?;
    if !matches!(
        nps_reductions::base_name(problem),
        "sat-v" | "sat-l" | "3sat-v" | "3sat-l"
    ) {
        return Err(CmdError::Unknown(format!(
            "DIMACS input is only valid for SAT problems, not `{problem}`"
        )));
    }
    let cnf = nps_catalog::parse_dimacs(&text).map_err(CmdError::from)?;
    let spec = nps_reductions::resolve_problem(problem)
        .map_err(|_| CmdError::Unknown(format!("unknown problem `{problem}`")))?;
    let inst = InstanceBundle::new(spec, std::sync::Arc::new(cnf)).map_err(CmdError::from)?;
    Ok((inst, text))
}

fn parse_chain(chain: &str) -> Vec<String> {
    chain
        .replace("->", ",")
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

fn resolve_chain_from(source: &str, chain: &str) -> Result<nps_core::SeReduction, CmdError> {
    let mut names = parse_chain(chain);
    if names.first().map(String::as_str) == Some(source) {
        names.remove(0);
    }
    nps_reductions::resolve_chain(source, &names).map_err(|e| match e {
        nps_reductions::ChainError::UnknownEdge { .. } | nps_reductions::ChainError::Empty => {
            CmdError::Unknown(e.to_string())
        }
        nps_reductions::ChainError::Core(c) => c.into(),
    })
}

fn emit(cli: &Cli, report: &RunReport, human: String) {
    if cli.json {
        println!("{}", report.to_json());
    } else {
        println!("{human}");
    }
}

fn labels(inst: &InstanceBundle, mask: &SubsetMask) -> Vec<String> {
    inst.labels_of(mask)
}

fn cmd_catalog(cli: &Cli) -> Result<u8, CmdError> {
    let mut report = RunReport::new("catalog");
    let problems: Vec<Value> = nps_catalog::problems()
        .iter()
        .map(|p| json!({ "name": p.name(), "kind": format!("{:?}", p.kind()).to_lowercase() }))
        .collect();
    let edges: Vec<Value> = nps_reductions::edges()
        .iter()
        .map(|e| json!({ "source": e.source().name(), "target": e.target().name() }))
        .collect();
    report.set("problems", json!(problems));
    report.set("edges", json!(edges));
    report.set("transforms", json!(["complement:", "literal:", "dual:"]));
    let mut human = String::from("problems:\n");
    for p in nps_catalog::problems() {
        human.push_str(&format!("  {:<16} ({:?})\n", p.name(), p.kind()));
    }
    human.push_str("reduction edges:\n");
    for e in nps_reductions::edges() {
        human.push_str(&format!(
            "  {} -> {}\n",
            e.source().name(),
            e.target().name()
        ));
    }
    human.push_str("model transforms: complement:<p>  literal:<p>  dual:<p>");
    emit(cli, &report, human);
    Ok(0)
}

fn cmd_reduce(cli: &Cli, args: &ReduceArgs, _cap: Cap) -> Result<u8, CmdError> {
    let (inst, raw) = read_instance(&args.input, args.problem.as_deref())?;
    let chain = resolve_chain_from(inst.spec().name(), &args.chain)?;
    let reduced = chain.apply(&inst).map_err(CmdError::from)?;
    let target_doc = nps_reductions::encode_instance(&reduced.target).map_err(CmdError::from)?;
    let out_doc = json!({
        "instance": target_doc,
        "embedding": reduced.embedding.table(),
        "source_problem": inst.spec().name(),
    });
    let out_text = serde_json::to_string_pretty(&out_doc).expect("serializable");
    if let Some(path) = &args.output {
        write_file(path, &out_text)?;
    }
    let mut report = RunReport::new("reduce");
    report.input_digest(&args.input.display().to_string(), raw.as_bytes());
    report.set("chain", json!(chain.name()));
    report.set("target_problem", json!(reduced.target.spec().name()));
    report.set("target_universe", json!(reduced.target.width()));
    report.set("output_digest", json!(fnv_digest(out_text.as_bytes())));
    let human = format!(
        "{}: |U| = {} -> {}: |U'| = {}{}",
        inst.spec().name(),
        inst.width(),
        reduced.target.spec().name(),
        reduced.target.width(),
        match &args.output {
            Some(p) => format!("\nwrote {}", p.display()),
            None => String::new(),
        }
    );
    emit(cli, &report, human);
    Ok(0)
}

fn se_report_json(
    report: &nps_core::SeCheckReport,
    inst: &InstanceBundle,
    target: &InstanceBundle,
) -> Value {
    json!({
        "equal": report.equal,
        "yes_iff_yes": report.yes_iff_yes,
        "source_solutions": report.source_solutions,
        "target_solutions": report.target_solutions,
        "restricted": report.restricted,
        "missing_in_target": report
            .missing_in_target
            .iter()
            .map(|m| labels(target, m))
            .collect::<Vec<_>>(),
        "unexpected_in_target": report
            .unexpected_in_target
            .iter()
            .map(|m| labels(target, m))
            .collect::<Vec<_>>(),
        "source_universe": inst.width(),
        "target_universe": target.width(),
    })
}

fn cmd_check_se(cli: &Cli, args: &CheckSeArgs, cap: Cap) -> Result<u8, CmdError> {
    let mut report = RunReport::new("check-se");
    if let Some(rounds) = args.fuzz {
        let names = parse_chain(&args.chain);
        if names.len() != 2 {
            return Err(CmdError::Unknown(
                "--fuzz needs a single registered edge, e.g. --chain 3sat-l->vertex-cover".into(),
            ));
        }
        let edge = nps_reductions::find_edge(&names[0], &names[1])
            .ok_or_else(|| CmdError::Unknown(format!("no edge {} -> {}", names[0], names[1])))?;
        let mut rng = nps_reductions::generate::Rng::new(cli.seed);
        let mut failures = 0usize;
        for _ in 0..rounds {
            let inst = nps_reductions::generate::random_source_for_edge(&edge, &mut rng);
            let reduced = edge.apply(&inst).map_err(CmdError::from)?;
            let check = nps_core::check_se_on_reduced_threaded(&inst, &reduced, cap, cli.threads)
                .map_err(CmdError::from)?;
            if !check.passed() {
                failures += 1;
            }
        }
        report.set("edge", json!(edge.name()));
        report.set("rounds", json!(rounds));
        report.set("failures", json!(failures));
        report.set("seed", json!(cli.seed));
        let human = format!(
            "{}: {rounds} random instances, {failures} failures -> {}",
            edge.name(),
            if failures == 0 { "PASS" } else { "FAIL" }
        );
        emit(cli, &report, human);
        return Ok(if failures == 0 { 0 } else { 1 });
    }

    let input = args
        .input
        .as_ref()
        .ok_or_else(|| CmdError::Decode("check-se needs an input instance or --fuzz".into()))?;
    let (inst, raw) = read_instance(input, args.problem.as_deref())?;
    let chain = resolve_chain_from(inst.spec().name(), &args.chain)?;
    let reduced = chain.apply(&inst).map_err(CmdError::from)?;
    let check = nps_core::check_se_on_reduced_threaded(&inst, &reduced, cap, cli.threads)
        .map_err(CmdError::from)?;
    report.input_digest(&input.display().to_string(), raw.as_bytes());
    report.set("chain", json!(chain.name()));
    report.set("result", se_report_json(&check, &inst, &reduced.target));
    let human = format!(
        "{}: embedding property {} ({} solutions per side), yes-iff-yes {}",
        chain.name(),
        if check.equal { "PASS" } else { "FAIL" },
        check.restricted,
        if check.yes_iff_yes { "PASS" } else { "FAIL" },
    );
    emit(cli, &report, human);
    Ok(if check.passed() { 0 } else { 1 })
}

fn solve_doc(doc: &GameDoc, cap: Cap) -> Result<nps_games::GameVerdict, CmdError> {
    let verdict = match doc {
        GameDoc::Selection(g) => g.solve(cap),
        GameDoc::Interdiction(g) => g.solve(cap),
        GameDoc::Adjustable(g) => g.solve(cap),
        GameDoc::TwoStageCost(g) => g.solve(cap),
    };
    verdict.map_err(CmdError::from)
}

fn cmd_solve(cli: &Cli, args: &SolveArgs, cap: Cap) -> Result<u8, CmdError> {
    let text = read_file(&args.input)?;
    let doc: Value =
        serde_json::from_str(&text).map_err(|e| CmdError::Decode(format!("bad JSON: {e}")))?;
    let game = nps_games::json::decode_game(&doc)?;
    let verdict = solve_doc(&game, cap)?;
    let root = verdict.strategy.root_move().map(|m| labels(game.base(), m));
    let mut report = RunReport::new("solve");
    report.input_digest(&args.input.display().to_string(), text.as_bytes());
    report.set("game", json!(game.kind()));
    report.set("first_player_wins", json!(verdict.first_player_wins));
    report.set("nodes_explored", json!(verdict.nodes_explored));
    report.set("strategy_root", json!(root));
    let human = format!(
        "{} game on {}: first player {} ({} nodes){}",
        game.kind(),
        game.base().spec().name(),
        if verdict.first_player_wins {
            "WINS"
        } else {
            "LOSES"
        },
        verdict.nodes_explored,
        match &root {
            Some(ids) => format!("\nopening move: {{{}}}", ids.join(", ")),
            None => String::new(),
        }
    );
    emit(cli, &report, human);
    Ok(if verdict.first_player_wins { 0 } else { 1 })
}

fn cmd_lift(cli: &Cli, args: &LiftArgs, cap: Cap) -> Result<u8, CmdError> {
    let text = read_file(&args.input)?;
    let doc: Value =
        serde_json::from_str(&text).map_err(|e| CmdError::Decode(format!("bad JSON: {e}")))?;
    let game = nps_games::json::decode_game(&doc)?;

    let pair: LiftedGamePair = match (&args.chain, &args.gadget) {
        (Some(chain), None) => {
            let red = resolve_chain_from(game.base().spec().name(), chain)?;
            let lift_err = |e: nps_lifting::LiftError| match e {
                nps_lifting::LiftError::Core(c) => CmdError::from(c),
                nps_lifting::LiftError::Game(g) => CmdError::from(g),
                other => CmdError::Other(other.to_string()),
            };
            match &game {
                GameDoc::Selection(g) => {
                    let (lifted, f) =
                        nps_lifting::lift_selection(&red, g, cap).map_err(lift_err)?;
                    LiftedGamePair {
                        source: game.clone(),
                        target: GameDoc::Selection(lifted),
                        embedding: f,
                        provenance: format!("lift:{}", red.name()),
                    }
                }
                GameDoc::Interdiction(g) => {
                    let (lifted, f) =
                        nps_lifting::lift_interdiction(&red, g, cap).map_err(lift_err)?;
                    LiftedGamePair {
                        source: game.clone(),
                        target: GameDoc::Interdiction(lifted),
                        embedding: f,
                        provenance: format!("lift:{}", red.name()),
                    }
                }
                GameDoc::Adjustable(g) => {
                    let (lifted, f) =
                        nps_lifting::lift_adjustable(&red, g, cap).map_err(lift_err)?;
                    LiftedGamePair {
                        source: game.clone(),
                        target: GameDoc::Adjustable(lifted),
                        embedding: f,
                        provenance: format!("lift:{}", red.name()),
                    }
                }
                GameDoc::TwoStageCost(_) => {
                    return Err(CmdError::Unknown(
                        "two-stage-cost games lift via their adjustable form".into(),
                    ))
                }
            }
        }
        (None, Some(gadget)) => {
            let GameDoc::Selection(selection) = &game else {
                return Err(CmdError::Unknown(
                    "gadgets start from selection games".into(),
                ));
            };
            let gadget_err = |e: nps_lifting::GadgetError| match e {
                nps_lifting::GadgetError::Core(c) => CmdError::from(c),
                nps_lifting::GadgetError::Game(g) => CmdError::from(g),
                other => CmdError::Decode(other.to_string()),
            };
            match gadget.as_str() {
                "interdiction" => {
                    let out = nps_lifting::gadget_selection_to_interdiction(selection)
                        .map_err(gadget_err)?;
                    LiftedGamePair {
                        source: game.clone(),
                        target: GameDoc::Interdiction(out.game),
                        embedding: out.embedding,
                        provenance: "gadget:selection->interdiction".into(),
                    }
                }
                "adjustable" => {
                    let out = nps_lifting::gadget_selection_to_adjustable(selection)
                        .map_err(gadget_err)?;
                    LiftedGamePair {
                        source: game.clone(),
                        target: GameDoc::Adjustable(out.game),
                        embedding: out.embedding,
                        provenance: "gadget:selection->adjustable".into(),
                    }
                }
                other => return Err(CmdError::Unknown(format!("unknown gadget `{other}`"))),
            }
        }
        _ => {
            return Err(CmdError::Unknown(
                "lift needs exactly one of --chain or --gadget".into(),
            ))
        }
    };

    let pair_doc = nps_lifting::encode_pair(&pair).map_err(CmdError::from)?;
    let out_text = serde_json::to_string_pretty(&pair_doc).expect("serializable");
    if let Some(path) = &args.output {
        write_file(path, &out_text)?;
    }
    let mut report = RunReport::new("lift");
    report.input_digest(&args.input.display().to_string(), text.as_bytes());
    report.set("provenance", json!(pair.provenance));
    report.set("target_universe", json!(pair.target.base().width()));
    report.set("output_digest", json!(fnv_digest(out_text.as_bytes())));
    let mut human = format!(
        "{}: target {} with |U'| = {}{}",
        pair.provenance,
        pair.target.kind(),
        pair.target.base().width(),
        match &args.output {
            Some(p) => format!("\nwrote {}", p.display()),
            None => String::new(),
        }
    );
    if args.verify {
        let lift_report = nps_lifting::verify_lift(&pair, cap).map_err(CmdError::from)?;
        report.set(
            "verify",
            json!({
                "source_wins": lift_report.source_wins,
                "target_wins": lift_report.target_wins,
                "verdicts_agree": lift_report.verdicts_agree,
                "mimic_steps": lift_report.mimicking.len(),
                "all_moves_legal": lift_report.all_moves_legal,
            }),
        );
        human.push_str(&format!(
            "\nverify: source {} / target {} -> {}; {} mimicked moves, all legal: {}",
            lift_report.source_wins,
            lift_report.target_wins,
            if lift_report.verdicts_agree {
                "AGREE"
            } else {
                "DISAGREE"
            },
            lift_report.mimicking.len(),
            lift_report.all_moves_legal,
        ));
        emit(cli, &report, human);
        return Ok(
            if lift_report.verdicts_agree && lift_report.all_moves_legal {
                0
            } else {
                1
            },
        );
    }
    emit(cli, &report, human);
    Ok(0)
}
