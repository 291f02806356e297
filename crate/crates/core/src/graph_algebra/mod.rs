//! Directed graphs, their graph inverse semigroups, and the Leavitt path
//! algebra as a partial skew group ring over the boundary path space.
//!
//! Points of the boundary are infinite paths and finite paths ending at a
//! sink. A finite path `p` stands for the cylinder of points through it.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{domain, Result};
use crate::gba::{CutSet, CylinderSpace, Gba, Ideal, Realization, Tree};
use crate::inverse_semigroup::{Graded, InverseSemigroup, SemigroupAction};
use crate::labelled_algebra::{LElem, LabelledGraph, LabelledSemigroup, LabelledSpace};
use crate::partial_action::{FreeGroup, Group, PartialAction, Word};
use crate::report::Report;
use crate::skew_algebra::{Ring, SkewOf, SkewRing};


#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl DirectedGraph {
    /// Edges are `(name, source, range)`. Edge names double as free
    /// generators, so they follow the same rules.
    pub fn new<V, E>(vertices: impl IntoIterator<Item = V>, edges: impl IntoIterator<Item = (E, E, E)>) -> Result<Self>
    where
        V: Into<String>,
        E: Into<String>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if vertices.is_empty() {
            return Err(domain("a graph needs a vertex"));
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
        let mut out = Vec::new();
        for (name, s, r) in edges {
            out.push(Edge {
                name: name.into(),
                src: find(&s.into())?,
                dst: find(&r.into())?,
            });
        }
        FreeGroup::new(out.iter().map(|e| e.name.clone()))?;
        Ok(DirectedGraph { vertices, edges: out })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&e| self.edges[e].src == v)
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.out_edges(v).next().is_none()
    }

    pub fn free_group(&self) -> FreeGroup {
        FreeGroup::new(self.edges.iter().map(|e| e.name.clone())).expect("checked on construction")
    }

    /// The path along `edges`, if they are consecutive.
    pub fn path(&self, edges: &[usize]) -> Option<Path> {
        let (&first, _) = edges.split_first()?;
        let ok = edges.iter().all(|&e| e < self.edges.len())
            && edges.windows(2).all(|w| self.edges[w[0]].dst == self.edges[w[1]].src);
        ok.then(|| Path {
            start: self.edges[first].src,
            edges: edges.to_vec(),
        })
    }

    pub fn is_path(&self, p: &Path) -> bool {
        p.start < self.vertices.len()
            && match p.edges.first() {
                None => true,
                Some(&e) => e < self.edges.len() && self.edges[e].src == p.start && self.path(&p.edges).is_some(),
            }
    }

    /// All paths of length at most `bound`, vertices first.
    pub fn paths_up_to(&self, bound: usize) -> Vec<Path> {
        let mut layer: Vec<Path> = (0..self.vertices.len()).map(Path::vertex).collect();
        let mut out = layer.clone();
        for _ in 0..bound {
            let mut next = Vec::new();
            for p in &layer {
                for e in self.out_edges(p.range(self)) {
                    let mut q = p.clone();
                    q.edges.push(e);
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
            for e in self.out_edges(v) {
                let d = self.edges[e].dst;
                indeg[d] -= 1;
                if indeg[d] == 0 {
                    stack.push(d);
                }
            }
        }
        seen == n
    }

    pub fn render_path(&self, p: &Path) -> String {
        if p.edges.is_empty() {
            return self.vertices[p.start].clone();
        }
        let sep = if self.edges.iter().all(|e| e.name.chars().count() == 1) { "" } else { "." };
        let parts: Vec<&str> = p.edges.iter().map(|&e| self.edges[e].name.as_str()).collect();
        parts.join(sep)
    }

    /// The same graph labelled by its own edges, with every vertex set in
    /// the family. Needs at most 10 vertices.
    pub fn to_labelled(&self) -> Result<LabelledSpace> {
        let lg = LabelledGraph::new(
            self.vertices.iter().cloned(),
            self.edges.iter().map(|e| {
                (
                    e.name.clone(),
                    self.vertices[e.src].clone(),
                    self.vertices[e.dst].clone(),
                    e.name.clone(),
                )
            }),
        )?;
        LabelledSpace::powerset(lg)
    }
}

/// A finite path; no edges means the vertex `start`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub start: usize,
    pub edges: Vec<usize>,
}

impl Path {
    pub fn vertex(v: usize) -> Self {
        Path { start: v, edges: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn range(&self, g: &DirectedGraph) -> usize {
        self.edges.last().map_or(self.start, |&e| g.edges[e].dst)
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.start == other.start && other.edges.starts_with(&self.edges)
    }

    /// `q` with `self = prefix · q`.
    pub fn strip_prefix(&self, prefix: &Path, g: &DirectedGraph) -> Option<Path> {
        prefix.is_prefix_of(self).then(|| Path {
            start: prefix.range(g),
            edges: self.edges[prefix.len()..].to_vec(),
        })
    }

    /// `self · q`, assuming `q` starts at the range of `self`.
    pub fn concat(&self, q: &Path) -> Path {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&q.edges);
        Path { start: self.start, edges }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PathPair {
    Zero,
    /// `(p, q)` with `r(p) = r(q)`.
    Pair(Path, Path),
}

/// The graph inverse semigroup `S_G`, graded by `(p, q) ↦ pq⁻¹`.
#[derive(Debug, Clone)]
pub struct GraphSemigroup {
    graph: DirectedGraph,
    group: FreeGroup,
}

impl GraphSemigroup {
    pub fn new(graph: DirectedGraph) -> Self {
        let group = graph.free_group();
        GraphSemigroup { graph, group }
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    /// `(p, q)`, or `None` unless both are paths with a common range.
    pub fn pair(&self, p: Path, q: Path) -> Option<PathPair> {
        let g = &self.graph;
        (g.is_path(&p) && g.is_path(&q) && p.range(g) == q.range(g)).then_some(PathPair::Pair(p, q))
    }

    /// Reads `(p,q)` where each side is a vertex name or edge names joined
    /// by `.` (or juxtaposed, when every edge name is one character).
    pub fn parse(&self, s: &str) -> Result<PathPair> {
        let s = s.trim();
        if s == "0" {
            return Ok(PathPair::Zero);
        }
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| domain(format!("expected (p,q), got `{s}`")))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| domain(format!("expected (p,q), got `{s}`")))?;
        let (p, q) = (self.parse_path(a)?, self.parse_path(b)?);
        self.pair(p, q).ok_or_else(|| domain(format!("`{s}` has different ranges")))
    }

    pub fn parse_path(&self, s: &str) -> Result<Path> {
        let g = &self.graph;
        let s = s.trim();
        if let Some(v) = g.vertex_index(s) {
            return Ok(Path::vertex(v));
        }
        let names: Vec<String> = if s.contains('.') {
            s.split('.').map(String::from).collect()
        } else if g.edges.iter().all(|e| e.name.chars().count() == 1) {
            s.chars().map(String::from).collect()
        } else {
            alloc::vec![String::from(s)]
        };
        let edges = names
            .iter()
            .map(|n| g.edge_index(n).ok_or_else(|| domain(format!("unknown edge `{n}`"))))
            .collect::<Result<Vec<usize>>>()?;
        g.path(&edges).ok_or_else(|| domain(format!("`{s}` is not a path")))
    }
}

impl InverseSemigroup for GraphSemigroup {
    type Elem = PathPair;

    fn zero(&self) -> PathPair {
        PathPair::Zero
    }

    /// `(a₁,a₂)(b₁,b₂)` is `(a₁b', b₂)` if `b₁ = a₂b'`, `(a₁, b₂a')` if
    /// `a₂ = b₁a'`, and `0` otherwise.
    fn mul(&self, x: &PathPair, y: &PathPair) -> PathPair {
        let (PathPair::Pair(a1, a2), PathPair::Pair(b1, b2)) = (x, y) else {
            return PathPair::Zero;
        };
        let g = &self.graph;
        if let Some(rest) = b1.strip_prefix(a2, g) {
            PathPair::Pair(a1.concat(&rest), b2.clone())
        } else if let Some(rest) = a2.strip_prefix(b1, g) {
            PathPair::Pair(a1.clone(), b2.concat(&rest))
        } else {
            PathPair::Zero
        }
    }

    fn star(&self, x: &PathPair) -> PathPair {
        match x {
            PathPair::Zero => PathPair::Zero,
            PathPair::Pair(p, q) => PathPair::Pair(q.clone(), p.clone()),
        }
    }

    /// Pairs of paths of length at most `bound`; everything when the graph
    /// has no cycles.
    fn enumerate(&self, bound: usize) -> Vec<PathPair> {
        let g = &self.graph;
        let bound = if self.is_finite() { g.vertices.len() } else { bound };
        let paths = g.paths_up_to(bound);
        let mut out = alloc::vec![PathPair::Zero];
        for p in &paths {
            for q in paths.iter().filter(|q| q.range(g) == p.range(g)) {
                out.push(PathPair::Pair(p.clone(), q.clone()));
            }
        }
        out
    }

    fn is_finite(&self) -> bool {
        self.graph.is_acyclic()
    }

    fn render(&self, x: &PathPair) -> String {
        match x {
            PathPair::Zero => String::from("0"),
            PathPair::Pair(p, q) => format!("({},{})", self.graph.render_path(p), self.graph.render_path(q)),
        }
    }
}

impl Graded for GraphSemigroup {
    type Group = FreeGroup;

    fn group(&self) -> &FreeGroup {
        &self.group
    }

    fn grade(&self, x: &PathPair) -> Option<Word> {
        match x {
            PathPair::Zero => None,
            PathPair::Pair(p, q) => Some(Word::quotient(&p.edges, &q.edges)),
        }
    }
}

/// Paths of the graph as a cylinder tree. Paths ending at a sink are
/// points.
#[derive(Debug, Clone)]
pub struct GraphTree {
    graph: DirectedGraph,
}

impl Tree for GraphTree {
    type Node = Path;
    type State = usize;

    fn realization(&self) -> Realization {
        Realization::SymbolicBoundary
    }

    fn roots(&self) -> Vec<Path> {
        (0..self.graph.vertices.len()).map(Path::vertex).collect()
    }

    fn children(&self, p: &Path) -> Vec<Path> {
        self.graph
            .out_edges(p.range(&self.graph))
            .map(|e| {
                let mut q = p.clone();
                q.edges.push(e);
                q
            })
            .collect()
    }

    fn parent(&self, p: &Path) -> Option<Path> {
        let (_, head) = p.edges.split_last()?;
        Some(Path {
            start: p.start,
            edges: head.to_vec(),
        })
    }

    fn depth(&self, p: &Path) -> usize {
        p.len()
    }

    fn state(&self, p: &Path) -> usize {
        p.range(&self.graph)
    }

    fn state_children(&self, v: &usize) -> Vec<usize> {
        self.graph.out_edges(*v).map(|e| self.graph.edges[e].dst).collect()
    }

    fn is_node(&self, p: &Path) -> bool {
        self.graph.is_path(p)
    }

    fn render_node(&self, p: &Path) -> String {
        self.graph.render_path(p)
    }
}

/// The partial action of `𝔽[E¹]` on the compact opens of the boundary
/// path space: for reduced `g = p₁p₂⁻¹` with `r(p₁) = r(p₂)`,
/// `I_g` is the cylinder of `p₁` and `φ_g` swaps the prefix `p₂` for `p₁`.
#[derive(Debug, Clone)]
pub struct GraphAction {
    semigroup: GraphSemigroup,
    space: CylinderSpace<GraphTree>,
}

impl GraphAction {
    pub fn new(graph: DirectedGraph) -> Self {
        let space = CylinderSpace::new(GraphTree { graph: graph.clone() });
        GraphAction {
            semigroup: GraphSemigroup::new(graph),
            space,
        }
    }

    pub fn graph(&self) -> &DirectedGraph {
        self.semigroup.graph()
    }

    /// `g = p₁p₂⁻¹` as paths with a common range. An empty side is the
    /// vertex at the range of the other.
    pub fn decompose(&self, g: &Word) -> Option<(Path, Path)> {
        let (e1, e2) = g.split_quotient()?;
        let gr = self.graph();
        let (p1, p2) = match (gr.path(&e1), gr.path(&e2)) {
            (Some(p1), Some(p2)) => (p1, p2),
            (Some(p1), None) if e2.is_empty() => {
                let v = p1.range(gr);
                (p1, Path::vertex(v))
            }
            (None, Some(p2)) if e1.is_empty() => (Path::vertex(p2.range(gr)), p2),
            _ => return None,
        };
        (p1.range(gr) == p2.range(gr)).then_some((p1, p2))
    }
}

impl PartialAction for GraphAction {
    type Space = CylinderSpace<GraphTree>;
    type Group = FreeGroup;

    fn space(&self) -> &Self::Space {
        &self.space
    }

    fn group(&self) -> &FreeGroup {
        self.semigroup.group()
    }

    fn ideal(&self, g: &Word) -> Ideal<CutSet<Path>> {
        if g.is_empty() {
            return Ideal::Whole;
        }
        match self.decompose(g) {
            Some((p1, _)) => Ideal::Below(self.space.cylinder(&p1)),
            None => Ideal::Below(self.space.bottom()),
        }
    }

    fn act(&self, g: &Word, x: &CutSet<Path>) -> Option<CutSet<Path>> {
        if g.is_empty() || self.space.is_bottom(x) {
            return Some(x.clone());
        }
        let (p1, p2) = self.decompose(g)?;
        if !self.space.le(x, &self.space.cylinder(&p2)) {
            return None;
        }
        let gr = self.graph();
        self.space
            .transport(x, p2.len(), p1.len(), |n| n.strip_prefix(&p2, gr).map(|rest| p1.concat(&rest)))
    }
}

impl SemigroupAction for GraphAction {
    type Semigroup = GraphSemigroup;

    fn semigroup(&self) -> &GraphSemigroup {
        &self.semigroup
    }

    fn v(&self, x: &PathPair) -> CutSet<Path> {
        match x {
            PathPair::Pair(p, q) if p == q => self.space.cylinder(p),
            _ => self.space.bottom(),
        }
    }

    /// `(p, p)` with `p₁` a prefix of `p`.
    fn in_eg(&self, g: &Word, x: &PathPair) -> bool {
        match x {
            PathPair::Zero => true,
            PathPair::Pair(p, q) if p != q => false,
            PathPair::Pair(_, _) if g.is_empty() => true,
            PathPair::Pair(p, _) => self.decompose(g).is_some_and(|(p1, _)| p1.is_prefix_of(p)),
        }
    }

    /// `(p₂p', p₂p') ↦ (p₁p', p₁p')`.
    fn phi(&self, g: &Word, x: &PathPair) -> Option<PathPair> {
        if !self.in_eg(&self.group().inv(g), x) {
            return None;
        }
        match x {
            PathPair::Zero => Some(PathPair::Zero),
            _ if g.is_empty() => Some(x.clone()),
            PathPair::Pair(p, _) => {
                let (p1, p2) = self.decompose(g)?;
                let q = p1.concat(&p.strip_prefix(&p2, self.graph())?);
                Some(PathPair::Pair(q.clone(), q))
            }
        }
    }
}

/// `v ↦ (v,v)δ_1`, `s_e ↦ (e,e)δ_e`, `s_e* ↦ (r(e),r(e))δ_{e⁻¹}`.
pub struct LeavittImages<'s, 'a, R: Ring> {
    skew: &'s SkewRing<'a, GraphAction, R>,
}

impl<'s, 'a, R: Ring> LeavittImages<'s, 'a, R> {
    pub fn new(skew: &'s SkewRing<'a, GraphAction, R>) -> Self {
        LeavittImages { skew }
    }

    fn delta(&self, p: &Path, g: Word) -> SkewOf<GraphAction, R> {
        let u = self.skew.space().cylinder(p);
        self.skew.delta(&u, &g).expect("generator images lie in their ideals")
    }

    pub fn vertex(&self, v: usize) -> SkewOf<GraphAction, R> {
        self.delta(&Path::vertex(v), Word::empty())
    }

    pub fn edge(&self, e: usize) -> SkewOf<GraphAction, R> {
        let p = self.skew.action().graph().path(&[e]).expect("an edge is a path");
        self.delta(&p, Word::positive(&[e]))
    }

    pub fn ghost(&self, e: usize) -> SkewOf<GraphAction, R> {
        let r = self.skew.action().graph().edges()[e].dst;
        self.delta(&Path::vertex(r), Word::quotient(&[], &[e]))
    }
}

/// The Leavitt relations on the images: orthogonal vertex idempotents,
/// source and range, `s_e*s_f = δ_{ef} r(e)` and, at vertices that are not
/// sinks, `v = Σ_{s(e)=v} s_e s_e*`.
pub fn verify_leavitt_relations<R: Ring>(skew: &SkewRing<'_, GraphAction, R>) -> Report {
    let im = LeavittImages::new(skew);
    let g = skew.action().graph();
    let (nv, ne) = (g.vertices().len(), g.edges().len());
    let mut report = Report::new(format!("{nv} vertices, {ne} edges"));
    let vname = |v: usize| g.vertices()[v].clone();
    let ename = |e: usize| g.edges()[e].name.clone();

    let mut vertices = None;
    for v in 0..nv {
        for w in 0..nv {
            let expected = if v == w { im.vertex(v) } else { skew.zero() };
            if vertices.is_none() && skew.mul(&im.vertex(v), &im.vertex(w)) != expected {
                vertices = Some(format!("{} · {}", vname(v), vname(w)));
            }
        }
    }
    let zero = (0..nv).find(|&v| im.vertex(v).is_zero()).map(|v| format!("{} ↦ 0", vname(v)));
    report.record("vertex idempotents", vertices.or(zero));

    let ends = (0..ne)
        .find(|&e| {
            let (s, r) = (im.vertex(g.edges()[e].src), im.vertex(g.edges()[e].dst));
            let (x, y) = (im.edge(e), im.ghost(e));
            skew.mul(&s, &x) != x || skew.mul(&x, &r) != x || skew.mul(&r, &y) != y || skew.mul(&y, &s) != y
        })
        .map(ename);
    report.record("source and range", ends);

    let mut ck1 = None;
    for e in 0..ne {
        for f in 0..ne {
            let expected = if e == f { im.vertex(g.edges()[e].dst) } else { skew.zero() };
            if ck1.is_none() && skew.mul(&im.ghost(e), &im.edge(f)) != expected {
                ck1 = Some(format!("e = {}, f = {}", ename(e), ename(f)));
            }
        }
    }
    report.record("(CK1)", ck1);

    let ck2 = (0..nv)
        .filter(|&v| !g.is_sink(v))
        .find(|&v| {
            let terms: Vec<_> = g.out_edges(v).map(|e| skew.mul(&im.edge(e), &im.ghost(e))).collect();
            skew.sum(terms.iter()) != im.vertex(v)
        })
        .map(vname);
    report.record("(CK2)", ck2);
    report
}

/// Compares `S_G` with the semigroup of the identity-labelled graph under
/// `(p, q) ↦ (p, {r(p)}, q)`: products, involution and degrees, on all
/// pairs of paths of length at most `depth`.
pub fn cross_validate(graph: &DirectedGraph, depth: usize) -> Result<Report> {
    let s = GraphSemigroup::new(graph.clone());
    let l = LabelledSemigroup::new(graph.to_labelled()?);
    let to_l = |x: &PathPair| match x {
        PathPair::Zero => LElem::Zero,
        PathPair::Pair(p, q) => LElem::Triple(p.edges.clone(), 1 << p.range(graph), q.edges.clone()),
    };
    let all: Vec<PathPair> = {
        let paths = graph.paths_up_to(depth);
        let mut out = alloc::vec![PathPair::Zero];
        for p in &paths {
            for q in paths.iter().filter(|q| q.range(graph) == p.range(graph)) {
                out.push(PathPair::Pair(p.clone(), q.clone()));
            }
        }
        out
    };
    let mut report = Report::new(format!("{} elements, paths of length <= {depth}", all.len()));
    let mut products = None;
    for x in &all {
        for y in &all {
            if products.is_none() && to_l(&s.mul(x, y)) != l.mul(&to_l(x), &to_l(y)) {
                products = Some(format!("{} · {}", s.render(x), s.render(y)));
            }
        }
    }
    report.record("products", products);
    let star = all
        .iter()
        .find(|x| to_l(&s.star(x)) != l.star(&to_l(x)))
        .map(|x| s.render(x));
    report.record("involution", star);
    let grading = all
        .iter()
        .find(|x| s.grade(x) != l.grade(&to_l(x)))
        .map(|x| s.render(x));
    report.record("grading", grading);
    Ok(report)
}
