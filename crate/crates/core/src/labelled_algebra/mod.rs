//! Labelled spaces `(𝓔, 𝓛, 𝓑)`, their inverse semigroups, and the labelled
//! Leavitt path algebra as a partial skew group ring.
//!
//! Vertex sets are bitmasks, so a labelled graph has at most 64 vertices.
//! The family `𝓑` is finite and stored explicitly.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::report::Report;

mod action;
mod semigroup;

pub use action::{
    ck_images, generator_products, truncated_point_count, verify_ck_relations, CkImages, LNode,
    LabelledAction, LabelledTree,
};
pub use semigroup::{LElem, LabelledSemigroup};

/// A set of vertices.
pub type VSet = u64;

/// A path of labels; the empty path is `ω`.
pub type LabelPath = Vec<usize>;

pub fn set_from<I: IntoIterator<Item = usize>>(vs: I) -> VSet {
    vs.into_iter().fold(0, |m, v| m | (1 << v))
}

pub fn is_subset(a: VSet, b: VSet) -> bool {
    a & !b == 0
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LEdge {
    pub name: String,
    pub src: usize,
    pub dst: usize,
    pub label: usize,
}

/// A finite directed graph with a total labelling of its edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledGraph {
    vertices: Vec<String>,
    edges: Vec<LEdge>,
    alphabet: Vec<String>,
}

impl LabelledGraph {
    /// Edges are `(name, source, range, label)`. The alphabet is the set of
    /// labels in order of first use.
    pub fn new<V, E>(vertices: impl IntoIterator<Item = V>, edges: impl IntoIterator<Item = (E, E, E, E)>) -> Result<Self>
    where
        V: Into<String>,
        E: Into<String>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if vertices.is_empty() {
            return Err(domain("a labelled graph needs a vertex"));
        }
        if vertices.len() > 64 {
            return Err(Error::Unsupported(format!("{} vertices; at most 64 are supported", vertices.len())));
        }
        if vertices.iter().collect::<BTreeSet<_>>().len() != vertices.len() {
            return Err(domain("repeated vertex"));
        }
        let find = |v: &str| {
            vertices
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| domain(format!("unknown vertex `{v}`")))
        };
        let mut alphabet: Vec<String> = Vec::new();
        let mut out = Vec::new();
        for (name, s, r, l) in edges {
            let (name, l): (String, String) = (name.into(), l.into());
            if out.iter().any(|e: &LEdge| e.name == name) {
                return Err(domain(format!("repeated edge `{name}`")));
            }
            let label = match alphabet.iter().position(|a| *a == l) {
                Some(i) => i,
                None => {
                    alphabet.push(l);
                    alphabet.len() - 1
                }
            };
            out.push(LEdge {
                name,
                src: find(&s.into())?,
                dst: find(&r.into())?,
                label,
            });
        }
        // label names have to be usable as free generators
        crate::partial_action::FreeGroup::new(alphabet.iter().cloned())?;
        Ok(LabelledGraph {
            vertices,
            edges: out,
            alphabet,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[LEdge] {
        &self.edges
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|a| a == name)
    }

    pub fn all(&self) -> VSet {
        if self.vertices.len() == 64 {
            u64::MAX
        } else {
            (1 << self.vertices.len()) - 1
        }
    }

    pub fn sinks(&self) -> VSet {
        let emitting = set_from(self.edges.iter().map(|e| e.src));
        self.all() & !emitting
    }

    /// `r(A, a)`.
    pub fn r(&self, a: VSet, label: usize) -> VSet {
        self.edges
            .iter()
            .filter(|e| e.label == label && a & (1 << e.src) != 0)
            .fold(0, |m, e| m | (1 << e.dst))
    }

    /// `r(A, α)`, letter by letter.
    pub fn r_path(&self, a: VSet, alpha: &[usize]) -> VSet {
        alpha.iter().fold(a, |m, &l| self.r(m, l))
    }

    /// `r(α)`, with `r(ω)` taken to be every vertex.
    pub fn range(&self, alpha: &[usize]) -> VSet {
        self.r_path(self.all(), alpha)
    }

    /// `Δ_A`.
    pub fn delta(&self, a: VSet) -> Vec<usize> {
        (0..self.alphabet.len()).filter(|&l| self.r(a, l) != 0).collect()
    }

    /// Label paths of length at most `bound` with nonempty range, `ω`
    /// first, then by length.
    pub fn label_paths(&self, bound: usize) -> Vec<LabelPath> {
        let mut out = alloc::vec![Vec::new()];
        let mut layer: Vec<LabelPath> = alloc::vec![Vec::new()];
        for _ in 0..bound {
            let mut next = Vec::new();
            for p in &layer {
                let r = self.range(p);
                for l in self.delta(r) {
                    let mut q = p.clone();
                    q.push(l);
                    next.push(q);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = alloc::vec![0usize; n];
        for e in &self.edges {
            indeg[e.dst] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for e in self.edges.iter().filter(|e| e.src == v) {
                indeg[e.dst] -= 1;
                if indeg[e.dst] == 0 {
                    stack.push(e.dst);
                }
            }
        }
        seen == n
    }

    pub fn render_set(&self, a: VSet) -> String {
        let names: Vec<&str> = (0..self.vertices.len())
            .filter(|v| a & (1 << v) != 0)
            .map(|v| self.vertices[v].as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    }

    /// Letters joined without a separator when every label is one
    /// character, `ω` for the empty path.
    pub fn render_path(&self, alpha: &[usize]) -> String {
        if alpha.is_empty() {
            return String::from("ω");
        }
        let sep = if self.alphabet.iter().all(|a| a.chars().count() == 1) { "" } else { "." };
        let parts: Vec<&str> = alpha.iter().map(|&l| self.alphabet[l].as_str()).collect();
        parts.join(sep)
    }
}

/// Closes `sets` under unions, intersections, relative complements and
/// relative ranges, and adds `∅` and every `r(a)`.
pub fn close_family(graph: &LabelledGraph, sets: &[VSet]) -> Vec<VSet> {
    let mut fam: BTreeSet<VSet> = sets.iter().copied().collect();
    fam.insert(0);
    for l in 0..graph.alphabet.len() {
        fam.insert(graph.range(&[l]));
    }
    loop {
        let cur: Vec<VSet> = fam.iter().copied().collect();
        let mut grew = false;
        for &a in &cur {
            for l in 0..graph.alphabet.len() {
                grew |= fam.insert(graph.r(a, l));
            }
            for &b in &cur {
                grew |= fam.insert(a | b);
                grew |= fam.insert(a & b);
                grew |= fam.insert(a & !b);
            }
        }
        if !grew {
            return fam.into_iter().collect();
        }
    }
}

/// Checks that `family` is an accommodating family for `graph` and that
/// the space is weakly left-resolving and normal.
pub fn validate_labelled_space(graph: &LabelledGraph, family: &[VSet]) -> Report {
    let fam: BTreeSet<VSet> = family.iter().copied().collect();
    let rs = |a: VSet| graph.render_set(a);
    let lname = |l: usize| graph.alphabet[l].as_str();
    let mut report = Report::new(format!(
        "{} sets over {} vertices and {} labels",
        fam.len(),
        graph.vertices.len(),
        graph.alphabet.len()
    ));
    report.record("empty set", (!fam.contains(&0)).then(|| String::from("∅ missing")));

    let missing_range = (0..graph.alphabet.len())
        .find(|&l| !fam.contains(&graph.range(&[l])))
        .map(|l| format!("r({}) = {} missing", lname(l), rs(graph.range(&[l]))));
    report.record("contains r(a)", missing_range);

    let mut union = None;
    let mut inter = None;
    let mut compl = None;
    let mut wlr = None;
    for &a in &fam {
        for &b in &fam {
            if union.is_none() && !fam.contains(&(a | b)) {
                union = Some(format!("{} ∪ {}", rs(a), rs(b)));
            }
            if inter.is_none() && !fam.contains(&(a & b)) {
                inter = Some(format!("{} ∩ {}", rs(a), rs(b)));
            }
            if compl.is_none() && !fam.contains(&(a & !b)) {
                compl = Some(format!("{} \\ {}", rs(a), rs(b)));
            }
            if wlr.is_none() {
                if let Some(l) = (0..graph.alphabet.len()).find(|&l| graph.r(a & b, l) != graph.r(a, l) & graph.r(b, l)) {
                    wlr = Some(format!("({},{},{})", rs(a), rs(b), lname(l)));
                }
            }
        }
    }
    let ranges = fam.iter().find_map(|&a| {
        (0..graph.alphabet.len())
            .find(|&l| !fam.contains(&graph.r(a, l)))
            .map(|l| format!("r({},{}) = {}", rs(a), lname(l), rs(graph.r(a, l))))
    });
    report.record("unions", union);
    report.record("intersections", inter);
    report.record("relative complements", compl);
    report.record("relative ranges", ranges);
    report.record("weakly left-resolving", wlr);
    report
}

/// A labelled graph with a validated accommodating family.
#[derive(Debug, Clone)]
pub struct LabelledSpace {
    graph: LabelledGraph,
    family: Vec<VSet>,
    atoms: Vec<VSet>,
}

impl LabelledSpace {
    /// Fails with the first failing check of [`validate_labelled_space`].
    pub fn new(graph: LabelledGraph, family: Vec<VSet>) -> Result<Self> {
        let report = validate_labelled_space(&graph, &family);
        if let Some(c) = report.failures().next() {
            return Err(domain(format!(
                "not a labelled space: {} ({})",
                c.name,
                c.witness.clone().unwrap_or_default()
            )));
        }
        let family: Vec<VSet> = family.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let atoms = family
            .iter()
            .copied()
            .filter(|&a| a != 0 && !family.iter().any(|&b| b != 0 && b != a && is_subset(b, a)))
            .collect();
        Ok(LabelledSpace { graph, family, atoms })
    }

    /// Every subset of the vertices. Limited to 10 vertices.
    pub fn powerset(graph: LabelledGraph) -> Result<Self> {
        let n = graph.vertices.len();
        if n > 10 {
            return Err(Error::BoundExceeded { size: n, bound: 10 });
        }
        let family = (0..(1u64 << n)).collect();
        Self::new(graph, family)
    }

    /// The smallest accommodating family containing `sets`.
    pub fn closure(graph: LabelledGraph, sets: &[VSet]) -> Result<Self> {
        let family = close_family(&graph, sets);
        Self::new(graph, family)
    }

    pub fn graph(&self) -> &LabelledGraph {
        &self.graph
    }

    pub fn family(&self) -> &[VSet] {
        &self.family
    }

    pub fn contains(&self, a: VSet) -> bool {
        self.family.binary_search(&a).is_ok()
    }

    /// Minimal nonempty members of `𝓑`.
    pub fn atoms(&self) -> &[VSet] {
        &self.atoms
    }

    /// Atoms below `a`.
    pub fn atoms_in(&self, a: VSet) -> impl Iterator<Item = usize> + '_ {
        (0..self.atoms.len()).filter(move |&i| is_subset(self.atoms[i], a))
    }

    /// `0 < |Δ_A|` and no nonempty member of `𝓑` lies in `A ∩ sinks`.
    pub fn is_regular(&self, a: VSet) -> bool {
        let sinks = a & self.graph.sinks();
        !self.graph.delta(a).is_empty() && !self.family.iter().any(|&b| b != 0 && is_subset(b, sinks))
    }

    /// `𝓑_α`: members of the family inside `r(α)`.
    pub fn family_at(&self, alpha: &[usize]) -> Vec<VSet> {
        let r = self.graph.range(alpha);
        self.family.iter().copied().filter(|&a| is_subset(a, r)).collect()
    }
}
