//! Hasse diagrams as Graphviz `digraph`s. Edges point from lower to upper.

use std::fmt;

use crate::dual::DualLattice;
use crate::poset::FinitePoset;
use crate::second_dual::{hom_element, BoundedHom};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotGraph {
    pub name: String,
    /// Node labels; node `i` is written as `n{i}`.
    pub nodes: Vec<String>,
    /// Sorted `(lower, upper)` covering pairs.
    pub edges: Vec<(usize, usize)>,
}

fn escape(label: &str) -> String {
    let mut out = String::with_capacity(label.len());
    for c in label.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out
}

impl fmt::Display for DotGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "digraph \"{}\" {{", escape(&self.name))?;
        for (i, label) in self.nodes.iter().enumerate() {
            writeln!(f, "  n{i} [label=\"{}\"];", escape(label))?;
        }
        for (a, b) in &self.edges {
            writeln!(f, "  n{a} -> n{b};")?;
        }
        writeln!(f, "}}")
    }
}

pub fn poset_graph(name: &str, poset: &FinitePoset) -> DotGraph {
    DotGraph {
        name: name.to_owned(),
        nodes: poset.elements().to_vec(),
        edges: poset.transitive_reduction().pairs,
    }
}

/// The dual lattice, nodes labeled by support. With `label_embeddings`,
/// members equal to some `lambda_p` / `upsilon_p` get a second label line
/// such as `λ:a,υ:b`.
pub fn dual_graph(name: &str, lattice: &DualLattice, label_embeddings: bool) -> DotGraph {
    let base = lattice.base();
    let mut nodes: Vec<String> = lattice.members().map(|x| lattice.format(&x)).collect();
    if label_embeddings {
        let mut notes = vec![Vec::new(); lattice.len()];
        for (prefix, image) in [
            ("λ", DualLattice::lambda_of as fn(&DualLattice, usize) -> _),
            ("υ", DualLattice::upsilon_of),
        ] {
            for p in 0..base.len() {
                let x = image(lattice, p).expect("element in range");
                if let Some(i) = lattice.position(x.support()) {
                    notes[i].push(format!("{prefix}:{}", base.name(p)));
                }
            }
        }
        for (label, note) in nodes.iter_mut().zip(notes) {
            if !note.is_empty() {
                label.push('\n');
                label.push_str(&note.join(","));
            }
        }
    }

    let mut edges = Vec::new();
    for (i, x) in lattice.members().enumerate() {
        for cover in lattice.upper_covers(&x).expect("member of this lattice") {
            edges.push((i, lattice.position(cover.support()).expect("member")));
        }
    }
    edges.sort_unstable();
    DotGraph {
        name: name.to_owned(),
        nodes,
        edges,
    }
}

/// Homs of the second dual under the pointwise order, each labeled by the
/// element it evaluates at.
pub fn second_dual_graph(name: &str, lattice: &DualLattice, homs: &[BoundedHom]) -> DotGraph {
    let nodes = homs
        .iter()
        .map(|h| match hom_element(lattice, h) {
            Ok(p) => lattice.base().name(p).to_owned(),
            Err(_) => format!("kernel {}", lattice.format(&h.kernel_top())),
        })
        .collect();
    let below = |i: usize, j: usize| i != j && homs[i].pointwise_leq(&homs[j]);
    let mut edges = Vec::new();
    for i in 0..homs.len() {
        for j in 0..homs.len() {
            if below(i, j) && !(0..homs.len()).any(|k| below(i, k) && below(k, j)) {
                edges.push((i, j));
            }
        }
    }
    DotGraph {
        name: name.to_owned(),
        nodes,
        edges,
    }
}
