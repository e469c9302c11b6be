//! JSON model files.
//!
//! Every document carries `kind`, the arity `n` and a query table. Each
//! query is one of `tt:<hex>`, `and:[ids]`, `or:[ids]` or
//! `circuit:<file>#<output>`; nodes refer to queries by table index.
//! Circuit queries live in sidecar netlist files next to the document.
//!
//! ```text
//! mdl    {"nodes": [{"q": 0, "c": true}, …]}
//! mdt    {"root": {"q": 0, "c0": {"leaf": false}, "c1": {…}}}
//! namdt  {"order": [0, 1], "labels": "0110"}
//! nmdt1  {"root": {"edges": [{"q": 0, "pol": "neg", "to": {…}}]}}
//! nmdt2  {"root": {"q": 0, "edges": [{"label": true, "to": {…}}]}}
//! rmdt   {"root": {"coin": true, "c0": {…}, "c1": {…}}}
//! wrmdt  {"w": 4, "root": {"qset": [0, 0, 1, 2], "c0": {…}, "c1": {…}}}
//! ```

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::boolfn::TruthTable;
use crate::circuits::{parse_netlist, Circuit};
use crate::error::{Error, Result};
use crate::models::{MdtNode, MonotoneDecisionList, MonotoneDecisionTree, NonAdaptiveMdt, Query};
use crate::stochastic::{
    M1Edge, M1Node, M2Node, NondetMdtM1, NondetMdtM2, QuerySetRmdt, RNode, RandomizedMdt, WNode,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Model {
    Mdl(MonotoneDecisionList),
    Mdt(MonotoneDecisionTree),
    Namdt(NonAdaptiveMdt),
    NmdtM1(NondetMdtM1),
    NmdtM2(NondetMdtM2),
    Rmdt(RandomizedMdt),
    Wrmdt(QuerySetRmdt),
}

impl Model {
    pub fn kind(&self) -> &'static str {
        match self {
            Model::Mdl(_) => "mdl",
            Model::Mdt(_) => "mdt",
            Model::Namdt(_) => "namdt",
            Model::NmdtM1(_) => "nmdt1",
            Model::NmdtM2(_) => "nmdt2",
            Model::Rmdt(_) => "rmdt",
            Model::Wrmdt(_) => "wrmdt",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Model::Mdl(m) => m.arity(),
            Model::Mdt(m) => m.arity(),
            Model::Namdt(m) => m.arity(),
            Model::NmdtM1(m) => m.arity(),
            Model::NmdtM2(m) => m.arity(),
            Model::Rmdt(m) => m.arity(),
            Model::Wrmdt(m) => m.arity(),
        }
    }

    /// The computed function; randomized models use the 1/2 threshold.
    pub fn to_table(&self) -> Result<TruthTable> {
        match self {
            Model::Mdl(m) => m.to_table(),
            Model::Mdt(m) => m.to_table(),
            Model::Namdt(m) => m.to_table(),
            Model::NmdtM1(m) => m.to_table(),
            Model::NmdtM2(m) => m.to_table(),
            Model::Rmdt(m) => m.half_threshold_table(),
            Model::Wrmdt(m) => m.half_threshold_table(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Doc {
    kind: String,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    w: Option<usize>,
    queries: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    nodes: Option<Vec<ListNode>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    root: Option<serde_json::Value>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ListNode {
    q: usize,
    c: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum TreeNode {
    Leaf {
        leaf: bool,
    },
    Query {
        q: usize,
        c0: Box<TreeNode>,
        c1: Box<TreeNode>,
    },
    Coin {
        coin: bool,
        c0: Box<TreeNode>,
        c1: Box<TreeNode>,
    },
    QuerySet {
        qset: Vec<usize>,
        c0: Box<TreeNode>,
        c1: Box<TreeNode>,
    },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct M1EdgeDoc {
    q: usize,
    pol: Polarity,
    to: M1Doc,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Polarity {
    Pos,
    Neg,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum M1Doc {
    Leaf { leaf: bool },
    Branch { edges: Vec<M1EdgeDoc> },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct M2EdgeDoc {
    label: bool,
    to: M2Doc,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum M2Doc {
    Leaf { leaf: bool },
    Node { q: usize, edges: Vec<M2EdgeDoc> },
}

/// A serialized model plus the sidecar netlists it references.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Saved {
    pub json: String,
    pub sidecars: Vec<(String, String)>,
}

struct Interner<'a> {
    stem: &'a str,
    entries: Vec<(Query, String)>,
    circuits: Vec<(Arc<Circuit>, String)>,
}

impl Interner<'_> {
    fn id(&mut self, q: &Query) -> usize {
        if let Some(i) = self.entries.iter().position(|(e, _)| e == q) {
            return i;
        }
        let text = match q {
            Query::Table(t) => format!("tt:{}", t.to_hex()),
            Query::And(v) | Query::Or(v) => {
                let ids: Vec<String> = v.iter().map(|c| self.id(c).to_string()).collect();
                let op = if matches!(q, Query::And(_)) {
                    "and"
                } else {
                    "or"
                };
                format!("{op}:[{}]", ids.join(","))
            }
            Query::Circuit { circuit, output } => {
                let name = match self.circuits.iter().find(|(c, _)| c == circuit) {
                    Some((_, name)) => name.clone(),
                    None => {
                        let name = format!("{}.c{}.net", self.stem, self.circuits.len() + 1);
                        self.circuits.push((circuit.clone(), name.clone()));
                        name
                    }
                };
                format!("circuit:{name}#{output}")
            }
        };
        self.entries.push((q.clone(), text));
        self.entries.len() - 1
    }
}

fn bool_leaf(b: bool) -> TreeNode {
    TreeNode::Leaf { leaf: b }
}

/// Serializes `m`; circuit queries are named `<stem>.c<k>.net`.
pub fn to_json(m: &Model, stem: &str) -> Saved {
    let mut it = Interner {
        stem,
        entries: Vec::new(),
        circuits: Vec::new(),
    };
    let mut doc = Doc {
        kind: m.kind().into(),
        n: m.arity(),
        w: None,
        queries: Vec::new(),
        nodes: None,
        order: None,
        labels: None,
        root: None,
    };
    fn mdt(n: &MdtNode, it: &mut Interner) -> TreeNode {
        match n {
            MdtNode::Leaf(b) => bool_leaf(*b),
            MdtNode::Query { query, zero, one } => TreeNode::Query {
                q: it.id(query),
                c0: Box::new(mdt(zero, it)),
                c1: Box::new(mdt(one, it)),
            },
        }
    }
    fn rmdt(n: &RNode, it: &mut Interner) -> TreeNode {
        match n {
            RNode::Leaf(b) => bool_leaf(*b),
            RNode::Query { query, zero, one } => TreeNode::Query {
                q: it.id(query),
                c0: Box::new(rmdt(zero, it)),
                c1: Box::new(rmdt(one, it)),
            },
            RNode::Coin { zero, one } => TreeNode::Coin {
                coin: true,
                c0: Box::new(rmdt(zero, it)),
                c1: Box::new(rmdt(one, it)),
            },
        }
    }
    fn wrmdt(n: &WNode, it: &mut Interner) -> TreeNode {
        match n {
            WNode::Leaf(b) => bool_leaf(*b),
            WNode::QuerySet { queries, zero, one } => TreeNode::QuerySet {
                qset: queries.iter().map(|q| it.id(q)).collect(),
                c0: Box::new(wrmdt(zero, it)),
                c1: Box::new(wrmdt(one, it)),
            },
        }
    }
    fn m1(n: &M1Node, it: &mut Interner) -> M1Doc {
        match n {
            M1Node::Leaf(b) => M1Doc::Leaf { leaf: *b },
            M1Node::Branch(edges) => M1Doc::Branch {
                edges: edges
                    .iter()
                    .map(|e| M1EdgeDoc {
                        q: it.id(&e.query),
                        pol: if e.positive {
                            Polarity::Pos
                        } else {
                            Polarity::Neg
                        },
                        to: m1(&e.child, it),
                    })
                    .collect(),
            },
        }
    }
    fn m2(n: &M2Node, it: &mut Interner) -> M2Doc {
        match n {
            M2Node::Leaf(b) => M2Doc::Leaf { leaf: *b },
            M2Node::Node { query, edges } => M2Doc::Node {
                q: it.id(query),
                edges: edges
                    .iter()
                    .map(|(l, c)| M2EdgeDoc {
                        label: *l,
                        to: m2(c, it),
                    })
                    .collect(),
            },
        }
    }
    match m {
        Model::Mdl(l) => {
            doc.nodes = Some(
                l.nodes()
                    .iter()
                    .map(|(q, c)| ListNode { q: it.id(q), c: *c })
                    .collect(),
            );
        }
        Model::Mdt(t) => doc.root = Some(value(&mdt(t.root(), &mut it))),
        Model::Namdt(t) => {
            doc.order = Some(t.queries().iter().map(|q| it.id(q)).collect());
            doc.labels = Some(
                t.labels()
                    .iter()
                    .map(|&b| if b { '1' } else { '0' })
                    .collect(),
            );
        }
        Model::NmdtM1(t) => doc.root = Some(value(&m1(t.root(), &mut it))),
        Model::NmdtM2(t) => doc.root = Some(value(&m2(t.root(), &mut it))),
        Model::Rmdt(t) => doc.root = Some(value(&rmdt(t.root(), &mut it))),
        Model::Wrmdt(t) => {
            doc.w = Some(t.set_size());
            doc.root = Some(value(&wrmdt(t.root(), &mut it)));
        }
    }
    doc.queries = it.entries.into_iter().map(|(_, s)| s).collect();
    Saved {
        json: serde_json::to_string_pretty(&doc).expect("documents serialize"),
        sidecars: it
            .circuits
            .into_iter()
            .map(|(c, name)| (name, c.to_netlist()))
            .collect(),
    }
}

fn value<T: Serialize>(t: &T) -> serde_json::Value {
    serde_json::to_value(t).expect("documents serialize")
}

fn fmt_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn resolve_queries(
    doc: &Doc,
    resolve: &mut dyn FnMut(&str) -> Result<String>,
) -> Result<Vec<Query>> {
    let mut out: Vec<Query> = Vec::with_capacity(doc.queries.len());
    let mut circuits: HashMap<String, Arc<Circuit>> = HashMap::new();
    for (i, text) in doc.queries.iter().enumerate() {
        let (tag, body) = text
            .split_once(':')
            .ok_or_else(|| fmt_err(format!("query {i}: missing tag in {text:?}")))?;
        let q = match tag.trim() {
            "tt" => Query::table(TruthTable::from_hex(doc.n, body.trim())?),
            "and" | "or" => {
                let ids = body
                    .trim()
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| fmt_err(format!("query {i}: expected [ids]")))?;
                let mut parts = Vec::new();
                for id in ids.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    let j: usize = id
                        .parse()
                        .map_err(|_| fmt_err(format!("query {i}: bad id {id:?}")))?;
                    let child = out
                        .get(j)
                        .ok_or_else(|| fmt_err(format!("query {i} refers to later query {j}")))?;
                    parts.push(child.clone());
                }
                if tag.trim() == "and" {
                    Query::and(parts)
                } else {
                    Query::or(parts)
                }
            }
            "circuit" => {
                let (file, output) = body
                    .rsplit_once('#')
                    .ok_or_else(|| fmt_err(format!("query {i}: expected <file>#<output>")))?;
                let output: usize = output
                    .trim()
                    .parse()
                    .map_err(|_| fmt_err(format!("query {i}: bad output {output:?}")))?;
                let c = match circuits.get(file) {
                    Some(c) => c.clone(),
                    None => {
                        let c = Arc::new(parse_netlist(&resolve(file)?)?);
                        circuits.insert(file.to_string(), c.clone());
                        c
                    }
                };
                Query::Circuit { circuit: c, output }
            }
            other => return Err(fmt_err(format!("query {i}: unknown kind {other:?}"))),
        };
        q.check_arity(doc.n)?;
        out.push(q);
    }
    Ok(out)
}

fn lookup(qs: &[Query], id: usize) -> Result<Query> {
    qs.get(id)
        .cloned()
        .ok_or_else(|| fmt_err(format!("unknown query id {id}")))
}

fn root_as<T: for<'de> Deserialize<'de>>(doc: &Doc) -> Result<T> {
    let root = doc
        .root
        .clone()
        .ok_or_else(|| fmt_err(format!("{} document needs a root", doc.kind)))?;
    serde_json::from_value(root).map_err(|e| fmt_err(format!("bad {} node: {e}", doc.kind)))
}

/// Parses a model document; `resolve` maps sidecar names to netlist text.
pub fn from_json(text: &str, mut resolve: impl FnMut(&str) -> Result<String>) -> Result<Model> {
    let doc: Doc = serde_json::from_str(text).map_err(|e| fmt_err(e.to_string()))?;
    let qs = resolve_queries(&doc, &mut resolve)?;
    let n = doc.n;
    fn tree(t: TreeNode, qs: &[Query], coins: bool) -> Result<RNode> {
        Ok(match t {
            TreeNode::Leaf { leaf } => RNode::Leaf(leaf),
            TreeNode::Query { q, c0, c1 } => {
                RNode::query(lookup(qs, q)?, tree(*c0, qs, coins)?, tree(*c1, qs, coins)?)
            }
            TreeNode::Coin { c0, c1, .. } if coins => {
                RNode::coin(tree(*c0, qs, coins)?, tree(*c1, qs, coins)?)
            }
            TreeNode::Coin { .. } => return Err(fmt_err("coin node in a deterministic tree")),
            TreeNode::QuerySet { .. } => return Err(fmt_err("qset node outside a wrmdt")),
        })
    }
    fn det(r: RNode) -> MdtNode {
        match r {
            RNode::Leaf(b) => MdtNode::Leaf(b),
            RNode::Query { query, zero, one } => MdtNode::query(query, det(*zero), det(*one)),
            RNode::Coin { .. } => unreachable!("coins rejected while parsing"),
        }
    }
    fn wtree(t: TreeNode, qs: &[Query]) -> Result<WNode> {
        Ok(match t {
            TreeNode::Leaf { leaf } => WNode::Leaf(leaf),
            TreeNode::QuerySet { qset, c0, c1 } => WNode::set(
                qset.into_iter()
                    .map(|q| lookup(qs, q))
                    .collect::<Result<_>>()?,
                wtree(*c0, qs)?,
                wtree(*c1, qs)?,
            ),
            _ => return Err(fmt_err("wrmdt nodes are leaves or query sets")),
        })
    }
    fn m1(d: M1Doc, qs: &[Query]) -> Result<M1Node> {
        Ok(match d {
            M1Doc::Leaf { leaf } => M1Node::Leaf(leaf),
            M1Doc::Branch { edges } => M1Node::Branch(
                edges
                    .into_iter()
                    .map(|e| {
                        Ok(M1Edge {
                            query: lookup(qs, e.q)?,
                            positive: matches!(e.pol, Polarity::Pos),
                            child: m1(e.to, qs)?,
                        })
                    })
                    .collect::<Result<_>>()?,
            ),
        })
    }
    fn m2(d: M2Doc, qs: &[Query]) -> Result<M2Node> {
        Ok(match d {
            M2Doc::Leaf { leaf } => M2Node::Leaf(leaf),
            M2Doc::Node { q, edges } => M2Node::Node {
                query: lookup(qs, q)?,
                edges: edges
                    .into_iter()
                    .map(|e| Ok((e.label, m2(e.to, qs)?)))
                    .collect::<Result<_>>()?,
            },
        })
    }
    match doc.kind.as_str() {
        "mdl" => {
            let nodes = doc
                .nodes
                .as_ref()
                .ok_or_else(|| fmt_err("mdl document needs nodes"))?
                .iter()
                .map(|ln| Ok((lookup(&qs, ln.q)?, ln.c)))
                .collect::<Result<_>>()?;
            Ok(Model::Mdl(MonotoneDecisionList::new(n, nodes)?))
        }
        "mdt" => {
            let r = tree(root_as(&doc)?, &qs, false)?;
            Ok(Model::Mdt(MonotoneDecisionTree::new(n, det(r))?))
        }
        "namdt" => {
            let order = doc
                .order
                .as_ref()
                .ok_or_else(|| fmt_err("namdt document needs an order"))?;
            let labels = doc
                .labels
                .as_ref()
                .ok_or_else(|| fmt_err("namdt document needs labels"))?
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(fmt_err(format!("bad label {c:?}"))),
                })
                .collect::<Result<_>>()?;
            let queries = order
                .iter()
                .map(|&i| lookup(&qs, i))
                .collect::<Result<_>>()?;
            Ok(Model::Namdt(NonAdaptiveMdt::new(n, queries, labels)?))
        }
        "nmdt1" => Ok(Model::NmdtM1(NondetMdtM1::new(
            n,
            m1(root_as(&doc)?, &qs)?,
        )?)),
        "nmdt2" => Ok(Model::NmdtM2(NondetMdtM2::new(
            n,
            m2(root_as(&doc)?, &qs)?,
        )?)),
        "rmdt" => Ok(Model::Rmdt(RandomizedMdt::new(
            n,
            tree(root_as(&doc)?, &qs, true)?,
        )?)),
        "wrmdt" => {
            let w = doc.w.ok_or_else(|| fmt_err("wrmdt document needs w"))?;
            Ok(Model::Wrmdt(QuerySetRmdt::new(
                n,
                w,
                wtree(root_as(&doc)?, &qs)?,
            )?))
        }
        other => Err(fmt_err(format!("unknown model kind {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{family, Family};
    use crate::circuits::mdt_from_circuit;
    use crate::models::{mdl_from_mdt, mdt_build, namdt_build};
    use crate::stochastic::{m1_to_m2, nmdt_build};

    fn no_files(name: &str) -> Result<String> {
        Err(fmt_err(format!("no sidecar {name}")))
    }

    fn round_trip(m: Model) {
        let saved = to_json(&m, "model");
        let files: HashMap<String, String> = saved.sidecars.iter().cloned().collect();
        let back = from_json(&saved.json, |name| {
            files
                .get(name)
                .cloned()
                .ok_or_else(|| fmt_err(name.to_string()))
        })
        .unwrap();
        assert_eq!(back.kind(), m.kind());
        assert_eq!(back.to_table().unwrap(), m.to_table().unwrap());
        let again = to_json(&back, "model");
        assert_eq!(again, saved);
    }

    #[test]
    fn all_kinds_round_trip() {
        let f4 = family(&Family::Candidate, 4).unwrap();
        let t = mdt_build(&f4);
        round_trip(Model::Mdt(t.clone()));
        round_trip(Model::Mdl(mdl_from_mdt(&t)));
        round_trip(Model::Namdt(namdt_build(&f4)));
        let nd = nmdt_build(&f4);
        round_trip(Model::NmdtM2(m1_to_m2(&nd)));
        round_trip(Model::NmdtM1(nd));
        let sub = || RNode::from_mdt_node(t.root());
        round_trip(Model::Rmdt(
            RandomizedMdt::new(4, RNode::coin(sub(), RNode::Leaf(false))).unwrap(),
        ));
        let qs = vec![Query::var(4, 1).unwrap(), Query::one()];
        let w = QuerySetRmdt::new(4, 2, WNode::set(qs, WNode::Leaf(false), WNode::Leaf(true)));
        round_trip(Model::Wrmdt(w.unwrap()));
    }

    #[test]
    fn circuit_sidecars() {
        let c = parse_netlist("g1=NOT(x1); g2=AND(g1,x2); g3=OR(g2,x3)").unwrap();
        let t = mdt_from_circuit(&c).unwrap();
        let saved = to_json(&Model::Mdt(t.clone()), "out");
        assert!(!saved.sidecars.is_empty());
        assert!(saved.sidecars[0].0.starts_with("out.c1"));
        assert!(saved.json.contains("circuit:out.c1.net#0"));
        round_trip(Model::Mdt(t));
        assert!(from_json(&saved.json, no_files).is_err());
    }

    #[test]
    fn format_examples() {
        let doc = r#"{"kind":"mdl","n":2,"queries":["tt:8","tt:e","and:[]"],
            "nodes":[{"q":0,"c":false},{"q":1,"c":true},{"q":2,"c":false}]}"#;
        let Model::Mdl(l) = from_json(doc, no_files).unwrap() else {
            panic!()
        };
        assert_eq!(l.to_table().unwrap().to_hex(), "6");

        let bad = [
            r#"{"kind":"mdt","n":2,"queries":["tt:8"],"root":{"q":3,"c0":{"leaf":false},"c1":{"leaf":true}}}"#,
            r#"{"kind":"mdt","n":2,"queries":["tt:8"],"root":{"coin":true,"c0":{"leaf":false},"c1":{"leaf":true}}}"#,
            r#"{"kind":"mdl","n":2,"queries":["or:[1]","tt:8"],"nodes":[]}"#,
            r#"{"kind":"mdl","n":2,"queries":["tt:8"],"nodes":[{"q":0,"c":true}],"extra":1}"#,
            r#"{"kind":"tree","n":2,"queries":[]}"#,
            r#"{"kind":"mdl","n":2,"queries":["tt:80"],"nodes":[]}"#,
        ];
        for b in bad {
            assert!(from_json(b, no_files).is_err(), "{b}");
        }
    }
}
