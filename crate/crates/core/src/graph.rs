//! Crystal graphs for export as DOT, JSON or plain text.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::combicrystal::{Crystal, Dir, KacElt, Lusztig, OddSet, Weight};
use crate::limitcrystal::{BInfElt, XElt};

#[derive(Clone, Debug, Serialize)]
pub struct GraphNode {
    pub id: usize,
    pub label: String,
    pub weight: Weight,
    pub height: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub i: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrystalGraph {
    pub m: usize,
    pub n: usize,
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

/// Builds the induced f-edge graph on `elts`. Nodes are numbered in the
/// order of `Ord` on the elements.
pub fn build<C: Crystal>(
    c: &C,
    elts: &[C::Elt],
    label: impl Fn(&C::Elt) -> String,
) -> CrystalGraph {
    let mut sorted = elts.to_vec();
    sorted.sort();
    sorted.dedup();
    let index: HashMap<&C::Elt, usize> = sorted.iter().enumerate().map(|(k, b)| (b, k)).collect();
    let mut edges = Vec::new();
    for (k, b) in sorted.iter().enumerate() {
        for i in c.indices() {
            if let Some(&to) = c.op(b, i, Dir::F).as_ref().and_then(|nb| index.get(nb)) {
                edges.push(GraphEdge { from: k, to, i });
            }
        }
    }
    let nodes = sorted
        .iter()
        .enumerate()
        .map(|(id, b)| GraphNode {
            id,
            label: label(b),
            weight: c.weight(b),
            height: c.height(b),
        })
        .collect();
    CrystalGraph {
        m: c.m(),
        n: c.n(),
        nodes,
        edges,
    }
}

/// Elements within `depth` steps of `seed`, moving along e- and f-edges.
pub fn ball<C: Crystal>(c: &C, seed: C::Elt, depth: usize) -> Vec<C::Elt> {
    let mut seen = HashSet::from([seed.clone()]);
    let mut queue = VecDeque::from([(seed, 0)]);
    while let Some((b, d)) = queue.pop_front() {
        if d == depth {
            continue;
        }
        for i in c.indices() {
            for dir in [Dir::F, Dir::E] {
                if let Some(nb) = c.op(&b, i, dir) {
                    if seen.insert(nb.clone()) {
                        queue.push_back((nb, d + 1));
                    }
                }
            }
        }
    }
    let mut v: Vec<_> = seen.into_iter().collect();
    v.sort();
    v
}

const PALETTE: &[&str] = &[
    "#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#17becf", "#bcbd22", "#7f7f7f", "#e377c2",
];

fn edge_color(m: usize, i: usize) -> &'static str {
    if i == m {
        "#d62728"
    } else {
        PALETTE[(i - 1) % PALETTE.len()]
    }
}

impl CrystalGraph {
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph crystal {\n  rankdir=TB;\n  node [shape=box, fontname=\"monospace\", fontsize=10];\n");
        for v in &self.nodes {
            let _ = writeln!(
                s,
                "  n{} [label=\"{}\"];",
                v.id,
                v.label.replace('"', "\\\"")
            );
        }
        for e in &self.edges {
            let style = if e.i == self.m {
                ", style=bold, penwidth=2"
            } else {
                ""
            };
            let _ = writeln!(
                s,
                "  n{} -> n{} [label=\"{}\", color=\"{}\", fontcolor=\"{}\"{}];",
                e.from,
                e.to,
                e.i,
                edge_color(self.m, e.i),
                edge_color(self.m, e.i),
                style
            );
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("graph serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} nodes, {} edges", self.nodes.len(), self.edges.len());
        let mut out: BTreeMap<usize, Vec<&GraphEdge>> = BTreeMap::new();
        for e in &self.edges {
            out.entry(e.from).or_default().push(e);
        }
        for v in &self.nodes {
            let _ = write!(s, "[{}] {}  wt={:?}", v.id, v.label, v.weight);
            for e in out.get(&v.id).into_iter().flatten() {
                let _ = write!(s, "  f{}->[{}]", e.i, e.to);
            }
            s.push('\n');
        }
        s
    }
}

pub fn oddset_label(s: &OddSet) -> String {
    let inner: Vec<String> = s.pairs().iter().map(|(a, b)| format!("{a}{b}")).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn lusztig_label(b: &Lusztig) -> String {
    let inner: Vec<String> = b
        .entries()
        .iter()
        .filter(|(_, &k)| k > 0)
        .map(|((a, c), k)| format!("{a}{c}:{k}"))
        .collect();
    if inner.is_empty() {
        "1".into()
    } else {
        inner.join(",")
    }
}

pub fn binf_label(b: &BInfElt) -> String {
    format!(
        "{} | {} | {}",
        oddset_label(&b.s),
        lusztig_label(&b.plus),
        lusztig_label(&b.minus)
    )
}

pub fn kac_label(b: &KacElt) -> String {
    format!(
        "{} | {} | {}",
        oddset_label(&b.s),
        lusztig_label(&b.plus),
        lusztig_label(&b.minus)
    )
}

pub fn x_label(b: &XElt) -> String {
    format!(
        "{} | {} | {}",
        oddset_label(&b.s),
        lusztig_label(&b.plus),
        lusztig_label(&b.minus)
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combicrystal::{enumerate, OddSetCrystal};

    #[test]
    fn oddset_graph_has_expected_edges() {
        let c = OddSetCrystal { m: 1, n: 1 };
        let all: Vec<OddSet> = OddSet::all(1, 1).collect();
        let g = build(&c, &all, oddset_label);
        assert_eq!(g.nodes.len(), 2);
        assert_eq!(
            g.edges,
            vec![GraphEdge {
                from: 0,
                to: 1,
                i: 1
            }]
        );
        assert!(g.to_dot().contains("style=bold"));
    }

    #[test]
    fn ball_of_depth_zero_is_the_seed() {
        let c = OddSetCrystal { m: 2, n: 2 };
        let e = OddSet::empty(2, 2).unwrap();
        assert_eq!(ball(&c, e, 0), vec![e]);
        let everything = enumerate(&c, vec![e], None, true);
        assert!(ball(&c, e, 8).len() <= everything.len());
    }
}
