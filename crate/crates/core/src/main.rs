use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use signet::expr::{and_or_form, parse_expr, polarity_profile, to_dnf, Expr};
use signet::firing::{outcomes, spn_fire, Choice};
use signet::io::{export_dot, read_document, save_net, Graph, IoError};
use signet::state_space::{explore, reach_tree, NodeStatus};
use signet::translate::{assign_initial_tokens, translate_lpn};
use signet::validate::lint_net;
use signet::{
    check_equivalence, positive_projection, validate_net, DualMarking, Marking, Net, NetClass, PlaceId, Verdict,
    DEFAULT_MAX_STATES,
};

// Writes a line to stdout, stopping quietly once the reader has gone away.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if writeln!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(141);
        }
    }};
}

/// Signed, logic and logic signed Petri nets.
#[derive(Parser)]
#[command(name = "signet", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural check; prints every violation.
    Validate { net: PathBuf },
    /// Canonical DNF and polarity profile of an expression.
    Dnf { expr: String },
    /// All outcomes of one transition.
    Fire {
        net: PathBuf,
        #[arg(short = 't', long = "transition")]
        transition: String,
        /// `(1,0)` or `((1,0),(0,1))`; defaults to the document's marking.
        #[arg(short = 'm', long = "marking")]
        marking: Option<String>,
    },
    /// Reachability exploration.
    Reach {
        net: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
        /// Write a Graphviz rendering here.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Print (and draw) the reachability tree instead of the graph.
        #[arg(long)]
        tree: bool,
    },
    /// Translate an LPN into an LSPN.
    Translate {
        lpn: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Decide whether an LPN and an LSPN are equivalent.
    CheckEquiv {
        lpn: PathBuf,
        /// LSPN to compare against; translated from the LPN when absent.
        #[arg(long)]
        translated: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
    },
}

enum Failure {
    /// Exit 1.
    Rejected(String),
    /// Exit 2.
    Usage(String),
    /// Exit 3.
    Bound(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Invalid(_) => Failure::Rejected(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { net } => validate(&net),
        Command::Dnf { expr } => dnf(&expr),
        Command::Fire { net, transition, marking } => fire(&net, &transition, marking.as_deref()),
        Command::Reach { net, max_states, dot, tree } => reach(&net, max_states, dot.as_deref(), tree),
        Command::Translate { lpn, output } => translate(&lpn, &output),
        Command::CheckEquiv { lpn, translated, max_states } => check_equiv(&lpn, translated.as_deref(), max_states),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Rejected(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Bound(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn load(path: &Path) -> Result<(Net, Option<DualMarking>), Failure> {
    Ok(signet::io::load_net(path)?)
}

fn validate(path: &Path) -> Result<ExitCode, Failure> {
    let (net, _) = read_document(path)?.build()?;
    let violations = validate_net(&net);
    for w in lint_net(&net) {
        out!("warning: {w}");
    }
    if violations.is_empty() {
        out!("valid {} net: {} places, {} transitions", net.class(), net.place_count(), net.transitions().len());
        return Ok(ExitCode::SUCCESS);
    }
    for v in &violations {
        out!("violation: {v}");
    }
    Ok(ExitCode::from(1))
}

fn dnf(text: &str) -> Result<ExitCode, Failure> {
    let parsed = parse_expr(text).map_err(|e| Failure::Usage(e.to_string()))?;
    // p2 before p10
    let mut names: Vec<String> = parsed.atoms().into_iter().collect();
    names.sort_by_key(|n| {
        let stem = n.trim_end_matches(|c: char| c.is_ascii_digit());
        (stem.to_string(), n[stem.len()..].parse::<u64>().ok(), n.clone())
    });
    let bound: Expr<PlaceId> = parsed.map_atoms(&|a| PlaceId(names.iter().position(|n| n == a).unwrap()));
    let d = to_dnf(&bound).map_err(|e| Failure::Rejected(e.to_string()))?;
    let name = |p: &PlaceId| names[p.0].clone();
    out!("dnf: {}", d.render(&name));
    let ids: Vec<PlaceId> = (0..names.len()).map(PlaceId).collect();
    for (p, pol) in polarity_profile(&d, &ids).entries() {
        out!("{}: {pol}", name(p));
    }
    match and_or_form(&bound).map_err(|e| Failure::Rejected(e.to_string()))? {
        Some(form) => {
            let list = |v: &[PlaceId]| v.iter().map(name).collect::<Vec<_>>().join(",");
            out!("and-or: forced {{{}}} optional {{{}}}", list(&form.forced), list(&form.optional));
        }
        None => out!("and-or: not representable"),
    }
    Ok(ExitCode::SUCCESS)
}

fn marking_arg(net: &Net, given: Option<&str>, from_file: Option<DualMarking>) -> Result<DualMarking, Failure> {
    let m = match given {
        Some(text) => text.parse::<DualMarking>().map_err(|e| Failure::Usage(e.to_string()))?,
        None => from_file.ok_or_else(|| Failure::Usage("no marking given and none in the document".into()))?,
    };
    if m.len() != net.place_count() {
        return Err(Failure::Usage(format!("marking {m} has {} places, net has {}", m.len(), net.place_count())));
    }
    Ok(m)
}

fn label(net: &Net, m: &DualMarking) -> String {
    if net.class().is_signed() {
        m.to_string()
    } else {
        positive_projection(m).to_string()
    }
}

fn fire(path: &Path, transition: &str, marking: Option<&str>) -> Result<ExitCode, Failure> {
    let (net, doc_marking) = load(path)?;
    let m = marking_arg(&net, marking, doc_marking)?;
    let t = net.transition_id(transition).ok_or_else(|| Failure::Usage(format!("no transition named {transition}")))?;
    let outs = outcomes(&net, t, &m).map_err(|e| Failure::Usage(e.to_string()))?;
    if outs.is_empty() {
        let reason = match net.class() {
            NetClass::Pn | NetClass::Spn => spn_fire(&net, t, &m).err().map(|e| e.to_string()),
            _ => None,
        };
        out!("{transition} cannot fire at {}: {}", label(&net, &m), reason.unwrap_or_else(|| "not enabled".into()));
        return Ok(ExitCode::SUCCESS);
    }
    for o in &outs {
        let choice = match &o.choice {
            Choice::None => String::new(),
            Choice::Subset(s) => {
                format!("  S={{{}}}", s.iter().map(|&p| net.place_name(p)).collect::<Vec<_>>().join(","))
            }
            Choice::Signs(s) => format!(
                "  signs: {}",
                s.iter().map(|&(p, sign)| format!("{}{sign}", net.place_name(p))).collect::<Vec<_>>().join(" ")
            ),
        };
        out!("{transition}/{}: {}{choice}", o.index, label(&net, &o.marking));
    }
    Ok(ExitCode::SUCCESS)
}

fn reach(path: &Path, max_states: usize, dot: Option<&Path>, tree: bool) -> Result<ExitCode, Failure> {
    let (net, doc_marking) = load(path)?;
    let m0 = marking_arg(&net, None, doc_marking)?;
    let lts = explore(&net, &m0, max_states).map_err(|e| Failure::Usage(e.to_string()))?;
    out!(
        "states: {}, edges: {}, complete: {}",
        lts.states().len(),
        lts.edges().len(),
        if lts.is_complete() { "yes" } else { "no" }
    );
    if !lts.is_complete() {
        if let Some(out) = dot {
            write_file(out, &export_dot(&net, Graph::Lts(&lts)))?;
        }
        return Err(Failure::Bound(format!("exploration stopped at {max_states} states")));
    }
    if tree {
        let tree = reach_tree(&lts).map_err(|e| Failure::Bound(e.to_string()))?;
        for (i, n) in tree.nodes().iter().enumerate() {
            let via = match (n.parent, n.label) {
                (Some(p), Some((t, k))) => format!(" <- n{p} via {}/{k}", net.transition_name(t)),
                _ => String::new(),
            };
            let status = match n.status {
                NodeStatus::Interior => "",
                NodeStatus::Old => " [old]",
                NodeStatus::DeadEnd => " [dead-end]",
            };
            out!("n{i} {}{via}{status}", label(&net, &n.marking));
        }
        if let Some(out) = dot {
            write_file(out, &export_dot(&net, Graph::Tree(&tree)))?;
        }
    } else {
        for s in 0..lts.states().len() {
            out!("s{s} {}", lts.state_label(s));
        }
        for e in lts.edges() {
            out!("s{} -> s{} {}/{}", e.source, e.target, net.transition_name(e.transition), e.outcome);
        }
        if let Some(out) = dot {
            write_file(out, &export_dot(&net, Graph::Lts(&lts)))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn plain_initial(net: &Net, m: Option<DualMarking>) -> Result<Marking, Failure> {
    let m = m.unwrap_or_else(|| DualMarking::zeros(net.place_count()));
    if !m.is_plain() {
        return Err(Failure::Usage("an LPN marking has no negative tokens".into()));
    }
    Ok(positive_projection(&m))
}

fn translate(path: &Path, output: &Path) -> Result<ExitCode, Failure> {
    let (lpn, m) = load(path)?;
    let m0 = plain_initial(&lpn, m)?;
    match translate_lpn(&lpn, &m0) {
        Ok(tr) => {
            print!("{}", tr.report);
            out!("initial marking: {}", tr.initial);
            save_net(&tr.lspn, Some(&tr.initial), output)?;
            out!("wrote {}", output.display());
            Ok(ExitCode::SUCCESS)
        }
        Err(rejected) => {
            print!("{}", rejected.0);
            Ok(ExitCode::from(1))
        }
    }
}

fn check_equiv(path: &Path, translated: Option<&Path>, max_states: usize) -> Result<ExitCode, Failure> {
    let (lpn, m) = load(path)?;
    let m0 = plain_initial(&lpn, m)?;
    let (lspn, initial) = match translated {
        Some(p) => {
            let (lspn, m) = load(p)?;
            let initial = m.unwrap_or_else(|| assign_initial_tokens(&m0, &lspn));
            (lspn, initial)
        }
        None => match translate_lpn(&lpn, &m0) {
            Ok(tr) => {
                for w in &tr.report.warnings {
                    out!("warning: {w}");
                }
                (tr.lspn, tr.initial)
            }
            Err(rejected) => {
                print!("{}", rejected.0);
                return Ok(ExitCode::from(1));
            }
        },
    };
    let v = check_equivalence(&lpn, &m0, &lspn, &initial, max_states).map_err(|e| Failure::Usage(e.to_string()))?;
    out!("verdict: {}", v.verdict);
    out!("LPN: {} states, {} edges; LSPN: {} states, {} edges", v.lpn_states, v.lpn_edges, v.lspn_states, v.lspn_edges);
    match v.verdict {
        Verdict::Equivalent => {
            for (m, image) in &v.witness {
                out!("  {m} <-> {image}");
            }
            out!("reverse step preservation: {}", if v.reverse_holds == Some(true) { "holds" } else { "fails" });
            Ok(ExitCode::SUCCESS)
        }
        Verdict::NotEquivalent => {
            if let Some(c) = &v.counterexample {
                out!("counterexample: {c}");
            }
            Ok(ExitCode::from(1))
        }
        Verdict::Unknown => Err(Failure::Bound(format!("exploration stopped at {max_states} states"))),
    }
}
