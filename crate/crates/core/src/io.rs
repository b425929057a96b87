//! Net documents on disk and Graphviz rendering of state spaces.
//!
//! A document is a JSON object with sorted keys:
//!
//! ```json
//! {
//!   "arcs": [{ "from": "p1", "sign": "+", "to": "t", "weight": 1 }],
//!   "capacity": "one",
//!   "class": "LSPN",
//!   "marking": { "negative": [0, 1], "positive": [1, 0] },
//!   "places": ["p1", "p2"],
//!   "transitions": [{ "guard": "p1 | p2", "id": "t", "kind": "logic-input" }],
//!   "version": "1"
//! }
//! ```
//!
//! `capacity`, `marking`, `marking.negative`, `guard` and `weight` may be
//! omitted.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::marking::{positive_projection, DualMarking, MarkingError};
use crate::net::{BuildError, Capacity, Direction, Net, NetClass, Sign, TransitionKind};
use crate::state_space::{Lts, NodeStatus, ReachTree};
use crate::validate::{validate_net, Violation};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetDocument {
    pub arcs: Vec<ArcEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub capacity: Option<Capacity>,
    pub class: NetClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marking: Option<MarkingEntry>,
    pub places: Vec<String>,
    pub transitions: Vec<TransitionEntry>,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcEntry {
    pub from: String,
    pub sign: Sign,
    pub to: String,
    #[serde(default = "unit_weight")]
    pub weight: u32,
}

fn unit_weight() -> u32 {
    1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KindTag {
    Traditional,
    LogicInput,
    LogicOutput,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guard: Option<String>,
    pub id: String,
    pub kind: KindTag,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkingEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub negative: Option<Vec<u32>>,
    pub positive: Vec<u32>,
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unsupported format version \"{0}\" (expected \"1\")")]
    Version(String),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error("invalid net: {}", render_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("marking has {found} entries, net has {expected} places")]
    MarkingLength { expected: usize, found: usize },
    #[error(transparent)]
    Marking(#[from] MarkingError),
}

fn render_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

impl NetDocument {
    pub fn from_net(net: &Net, marking: Option<&DualMarking>) -> Self {
        let arcs = net
            .arcs()
            .iter()
            .map(|a| {
                let place = net.place_name(a.place).to_string();
                let transition = net.transition_name(a.transition).to_string();
                let (from, to) = match a.direction {
                    Direction::Input => (place, transition),
                    Direction::Output => (transition, place),
                };
                ArcEntry { from, sign: a.sign, to, weight: a.weight }
            })
            .collect();
        let transitions = net
            .transitions()
            .iter()
            .map(|t| {
                let kind = match t.kind {
                    TransitionKind::Traditional => KindTag::Traditional,
                    TransitionKind::LogicInput(_) => KindTag::LogicInput,
                    TransitionKind::LogicOutput(_) => KindTag::LogicOutput,
                };
                TransitionEntry { guard: t.kind.guard().map(|g| net.guard_text(g)), id: t.name.clone(), kind }
            })
            .collect();
        let marking = marking.map(|m| MarkingEntry {
            negative: (net.class().is_signed() || !m.is_plain()).then(|| m.neg().to_vec()),
            positive: m.pos().to_vec(),
        });
        NetDocument {
            arcs,
            capacity: Some(net.capacity()),
            class: net.class(),
            marking,
            places: net.places().to_vec(),
            transitions,
            version: FORMAT_VERSION.to_string(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, IoError> {
        serde_json::from_str(text).map_err(|e| IoError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Builds and validates the net, and checks the marking against it.
    pub fn to_net(&self) -> Result<(Net, Option<DualMarking>), IoError> {
        let (net, marking) = self.build()?;
        let violations = validate_net(&net);
        if !violations.is_empty() {
            return Err(IoError::Invalid(violations));
        }
        Ok((net, marking))
    }

    /// Like [`NetDocument::to_net`] without the structural validation.
    pub fn build(&self) -> Result<(Net, Option<DualMarking>), IoError> {
        if self.version != FORMAT_VERSION {
            return Err(IoError::Version(self.version.clone()));
        }
        let mut b = Net::builder(self.class).places(self.places.iter().cloned());
        if let Some(c) = self.capacity {
            b = b.capacity(c);
        }
        for t in &self.transitions {
            let guard = t.guard.as_deref();
            b = match t.kind {
                KindTag::Traditional => b.traditional(&t.id),
                KindTag::LogicInput => b.logic_input(&t.id, guard),
                KindTag::LogicOutput => b.logic_output(&t.id, guard),
            };
        }
        for a in &self.arcs {
            b = b.weighted_arc(&a.from, &a.to, a.sign, a.weight);
        }
        let net = b.build()?;
        let marking = match &self.marking {
            None => None,
            Some(entry) => {
                let neg = entry.negative.clone().unwrap_or_else(|| vec![0; entry.positive.len()]);
                let m = DualMarking::new(entry.positive.clone(), neg)?;
                if m.len() != net.place_count() {
                    return Err(IoError::MarkingLength { expected: net.place_count(), found: m.len() });
                }
                Some(m)
            }
        };
        Ok((net, marking))
    }
}

/// Parses document text. Errors carry the line and column reported by the
/// JSON reader.
pub fn parse_document(text: &str) -> Result<(Net, Option<DualMarking>), IoError> {
    NetDocument::parse(text)?.to_net()
}

/// Canonical text: two-space indentation, sorted keys, trailing newline.
pub fn render_document(net: &Net, marking: Option<&DualMarking>) -> String {
    let mut text =
        serde_json::to_string_pretty(&NetDocument::from_net(net, marking)).expect("documents always serialize");
    text.push('\n');
    text
}

pub fn read_document(path: impl AsRef<Path>) -> Result<NetDocument, IoError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Io { path: path.to_path_buf(), source })?;
    NetDocument::parse(&text)
}

pub fn load_net(path: impl AsRef<Path>) -> Result<(Net, Option<DualMarking>), IoError> {
    read_document(path)?.to_net()
}

pub fn save_net(net: &Net, marking: Option<&DualMarking>, path: impl AsRef<Path>) -> Result<(), IoError> {
    let path = path.as_ref();
    std::fs::write(path, render_document(net, marking))
        .map_err(|source| IoError::Io { path: path.to_path_buf(), source })
}

/// What to draw.
#[derive(Clone, Copy, Debug)]
pub enum Graph<'a> {
    Lts(&'a Lts),
    Tree(&'a ReachTree),
}

/// Graphviz rendering. Nodes are labelled with their marking and edges with
/// `transition/outcome`. In trees, `old` leaves are dashed and dead ends
/// drawn with a double border.
pub fn export_dot(net: &Net, graph: Graph<'_>) -> String {
    let mut out = String::new();
    match graph {
        Graph::Lts(lts) => {
            out.push_str("digraph reachability {\n  node [shape=box];\n");
            for s in 0..lts.states().len() {
                let _ = writeln!(out, "  s{s} [label=\"{}\"];", lts.state_label(s));
            }
            for e in lts.edges() {
                let _ = writeln!(
                    out,
                    "  s{} -> s{} [label=\"{}/{}\"];",
                    e.source,
                    e.target,
                    escape(net.transition_name(e.transition)),
                    e.outcome
                );
            }
        }
        Graph::Tree(tree) => {
            out.push_str("digraph reachability_tree {\n  node [shape=box];\n");
            for (i, n) in tree.nodes().iter().enumerate() {
                let label =
                    if tree.is_dual() { n.marking.to_string() } else { positive_projection(&n.marking).to_string() };
                let style = match n.status {
                    NodeStatus::Interior => "",
                    NodeStatus::Old => ", style=dashed, xlabel=\"old\"",
                    NodeStatus::DeadEnd => ", peripheries=2, xlabel=\"dead-end\"",
                };
                let _ = writeln!(out, "  n{i} [label=\"{label}\"{style}];");
            }
            for (i, n) in tree.nodes().iter().enumerate() {
                if let (Some(parent), Some((t, k))) = (n.parent, n.label) {
                    let _ = writeln!(out, "  n{parent} -> n{i} [label=\"{}/{k}\"];", escape(net.transition_name(t)));
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::state_space::{explore, reach_tree};

    #[test]
    fn logic_input_document_round_trip() {
        let (net, m0) = fixtures::logic_input_lspn();
        let text = render_document(&net, Some(&m0));
        let (back, m) = parse_document(&text).unwrap();
        assert_eq!(back, net);
        assert_eq!(m.unwrap().to_string(), "((1,0,1,0),(0,1,0,0))");
        assert_eq!(render_document(&back, Some(&m0)), text);
    }

    #[test]
    fn keys_are_sorted() {
        let (net, m0) = fixtures::logic_input_lspn();
        let text = render_document(&net, Some(&m0));
        let order =
            ["\"arcs\"", "\"capacity\"", "\"class\"", "\"marking\"", "\"places\"", "\"transitions\"", "\"version\""];
        let positions: Vec<usize> = order.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn plain_marking_omits_negative_part() {
        let (net, m0) = fixtures::logic_input_lpn();
        let text = render_document(&net, Some(&m0));
        assert!(!text.contains("negative"));
        assert_eq!(parse_document(&text).unwrap().1, Some(m0));
    }

    #[test]
    fn unresolved_arc_names_the_arc() {
        let text = r#"{"arcs":[{"from":"p1","sign":"+","to":"t"},{"from":"t","sign":"+","to":"p9"}],
            "class":"PN","places":["p1"],"transitions":[{"id":"t","kind":"traditional"}],"version":"1"}"#;
        let err = parse_document(text).unwrap_err();
        assert!(err.to_string().contains("t -> p9"), "{err}");
    }

    #[test]
    fn parse_errors_have_locations() {
        match parse_document("") {
            Err(IoError::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
        match parse_document("{\n  \"arcs\": [,\n}") {
            Err(IoError::Parse { line, column, .. }) => assert_eq!((line, column), (2, 12)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn version_and_marking_checks() {
        let (net, _) = fixtures::spn_blocked_negative();
        let text = render_document(&net, None);
        assert!(matches!(parse_document(&text.replace("\"1\"", "\"2\"")), Err(IoError::Version(_))));
        let with_short = text.replace("\"version\"", "\"marking\": {\"positive\": [1]},\n  \"version\"");
        assert!(matches!(parse_document(&with_short), Err(IoError::MarkingLength { .. })));
    }

    #[test]
    fn invalid_nets_are_rejected() {
        let text =
            r#"{"arcs":[],"class":"PN","places":["p"],"transitions":[{"id":"t","kind":"traditional"}],"version":"1"}"#;
        assert!(matches!(parse_document(text), Err(IoError::Invalid(_))));
    }

    #[test]
    fn save_and_load() {
        let dir = std::env::temp_dir().join(format!("signet-io-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("net.json");
        let (net, m0) = fixtures::logic_output_lspn();
        save_net(&net, Some(&m0), &path).unwrap();
        let first = std::fs::read(&path).unwrap();
        save_net(&net, Some(&m0), &path).unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), first);
        assert_eq!(load_net(&path).unwrap(), (net.clone(), Some(m0.clone())));
        assert!(matches!(save_net(&net, None, dir.join("missing/x.json")), Err(IoError::Io { .. })));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn dot_for_lts() {
        let (net, m0) = fixtures::logic_output_lspn();
        let lts = explore(&net, &m0, 100).unwrap();
        let dot = export_dot(&net, Graph::Lts(&lts));
        assert_eq!(dot.matches("[label=\"((").count(), 4);
        assert_eq!(dot.matches("-> ").count(), 3);
        assert_eq!(dot.matches("label=\"t/").count(), 3);
        assert_eq!(dot, export_dot(&net, Graph::Lts(&lts)));
    }

    #[test]
    fn dot_for_two_state_lts() {
        let (net, m0) = fixtures::logic_input_lspn();
        let dot = export_dot(&net, Graph::Lts(&explore(&net, &m0, 100).unwrap()));
        assert!(dot.contains("s0 [label=\"((1,0,1,0),(0,1,0,0))\"]"));
        assert!(dot.contains("s0 -> s1 [label=\"t/0\"]"));
    }

    #[test]
    fn dot_for_tree_marks_old_leaves() {
        let net = Net::builder(NetClass::Pn)
            .places(["p"])
            .traditional("t")
            .arc("p", "t", Sign::Pos)
            .arc("t", "p", Sign::Pos)
            .build()
            .unwrap();
        let tree = reach_tree(&explore(&net, &"(1)".parse().unwrap(), 10).unwrap()).unwrap();
        let dot = export_dot(&net, Graph::Tree(&tree));
        assert!(dot.contains("n1 [label=\"(1)\", style=dashed"));
        assert!(dot.contains("n0 -> n1 [label=\"t/0\"]"));
    }
}
