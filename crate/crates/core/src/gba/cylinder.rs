//! Compact open sets of a path space, written as finite cuts of a tree.
//!
//! A node stands for the set of boundary points passing through it. Nodes
//! without children are single points. An element at depth `N` lists nodes
//! that are either at depth `N` or childless and shallower. Elements are kept
//! at the least depth at which they can be written, which makes the
//! representation unique.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Debug;

use super::{Gba, Realization};

/// The cylinder tree of a path space. Children of a node depend only on its
/// state, which is what makes point counting finite. Roots may sit below
/// depth 0; they are exactly the nodes without a parent.
pub trait Tree {
    type Node: Clone + Ord + Debug;
    type State: Clone + Ord + Debug;

    fn realization(&self) -> Realization;
    fn roots(&self) -> Vec<Self::Node>;
    fn children(&self, n: &Self::Node) -> Vec<Self::Node>;
    fn parent(&self, n: &Self::Node) -> Option<Self::Node>;
    fn depth(&self, n: &Self::Node) -> usize;
    fn state(&self, n: &Self::Node) -> Self::State;
    fn state_children(&self, s: &Self::State) -> Vec<Self::State>;
    fn is_node(&self, n: &Self::Node) -> bool;
    fn render_node(&self, n: &Self::Node) -> String;
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CutSet<N: Ord> {
    depth: usize,
    nodes: BTreeSet<N>,
}

impl<N: Ord> CutSet<N> {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn nodes(&self) -> &BTreeSet<N> {
        &self.nodes
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct CylinderSpace<T> {
    tree: T,
}

impl<T: Tree> CylinderSpace<T> {
    pub fn new(tree: T) -> Self {
        CylinderSpace { tree }
    }

    pub fn tree(&self) -> &T {
        &self.tree
    }

    fn is_leaf(&self, n: &T::Node) -> bool {
        self.tree.children(n).is_empty()
    }

    /// All points passing through `n`.
    pub fn cylinder(&self, n: &T::Node) -> CutSet<T::Node> {
        self.from_nodes([n.clone()])
    }

    /// The union of the cylinders of arbitrary nodes.
    pub fn from_nodes<I: IntoIterator<Item = T::Node>>(&self, nodes: I) -> CutSet<T::Node> {
        let nodes: Vec<T::Node> = nodes.into_iter().collect();
        let depth = nodes.iter().map(|n| self.tree.depth(n)).max().unwrap_or(0);
        let mut out = BTreeSet::new();
        for n in &nodes {
            self.expand_node(n, depth, &mut out);
        }
        self.normalize(depth, out)
    }

    fn expand_node(&self, n: &T::Node, depth: usize, out: &mut BTreeSet<T::Node>) {
        let kids = self.tree.children(n);
        if self.tree.depth(n) >= depth || kids.is_empty() {
            out.insert(n.clone());
        } else {
            for k in &kids {
                self.expand_node(k, depth, out);
            }
        }
    }

    /// The nodes of `c` written at depth `depth >= c.depth()`.
    pub fn expand(&self, c: &CutSet<T::Node>, depth: usize) -> BTreeSet<T::Node> {
        let mut out = BTreeSet::new();
        for n in &c.nodes {
            self.expand_node(n, depth.max(c.depth), &mut out);
        }
        out
    }

    fn normalize(&self, mut depth: usize, mut nodes: BTreeSet<T::Node>) -> CutSet<T::Node> {
        while depth > 0 {
            let frontier: Vec<T::Node> = nodes
                .iter()
                .filter(|n| self.tree.depth(n) == depth)
                .cloned()
                .collect();
            let mut groups: BTreeMap<T::Node, BTreeSet<T::Node>> = BTreeMap::new();
            let mut orphan = false;
            for n in &frontier {
                match self.tree.parent(n) {
                    Some(p) => {
                        groups.entry(p).or_default().insert(n.clone());
                    }
                    // a root below depth 0 cannot be written any shallower
                    None => orphan = true,
                }
            }
            if orphan {
                break;
            }
            let complete = groups.iter().all(|(p, kids)| {
                let all: BTreeSet<T::Node> = self.tree.children(p).into_iter().collect();
                all == *kids
            });
            if !complete {
                break;
            }
            for n in &frontier {
                nodes.remove(n);
            }
            nodes.extend(groups.into_keys());
            depth -= 1;
        }
        CutSet { depth, nodes }
    }

    fn combine(
        &self,
        a: &CutSet<T::Node>,
        b: &CutSet<T::Node>,
        op: impl Fn(&BTreeSet<T::Node>, &BTreeSet<T::Node>) -> BTreeSet<T::Node>,
    ) -> CutSet<T::Node> {
        let d = a.depth.max(b.depth);
        let x = self.expand(a, d);
        let y = self.expand(b, d);
        self.normalize(d, op(&x, &y))
    }

    /// Moves every point of `c` along a node map that replaces a prefix of
    /// length `from_len` with one of length `to_len`. `None` when some point
    /// of `c` is outside the domain of `f`.
    pub fn transport(
        &self,
        c: &CutSet<T::Node>,
        from_len: usize,
        to_len: usize,
        f: impl Fn(&T::Node) -> Option<T::Node>,
    ) -> Option<CutSet<T::Node>> {
        if c.nodes.is_empty() {
            return Some(self.bottom());
        }
        let d = c.depth.max(from_len);
        let mut out = BTreeSet::new();
        for n in self.expand(c, d) {
            out.insert(f(&n)?);
        }
        Some(self.normalize(d + to_len - from_len, out))
    }

    /// Number of boundary points through a node of state `s`, if finite.
    pub fn state_points(&self, s: &T::State) -> Option<usize> {
        let reach = self.reachable(s);
        let on_cycle: BTreeSet<T::State> = reach
            .iter()
            .filter(|t| {
                self.tree
                    .state_children(t)
                    .iter()
                    .any(|c| self.reachable(c).contains(*t))
            })
            .cloned()
            .collect();
        // A cycle carries finitely many points only when nothing leaves it.
        if on_cycle
            .iter()
            .any(|t| self.tree.state_children(t).len() != 1)
        {
            return None;
        }
        let mut memo = BTreeMap::new();
        Some(self.count_from(s, &on_cycle, &mut memo))
    }

    fn reachable(&self, s: &T::State) -> BTreeSet<T::State> {
        let mut seen = BTreeSet::new();
        let mut stack = alloc::vec![s.clone()];
        while let Some(t) = stack.pop() {
            if seen.insert(t.clone()) {
                stack.extend(self.tree.state_children(&t));
            }
        }
        seen
    }

    fn count_from(
        &self,
        s: &T::State,
        on_cycle: &BTreeSet<T::State>,
        memo: &mut BTreeMap<T::State, usize>,
    ) -> usize {
        if on_cycle.contains(s) {
            return 1;
        }
        if let Some(&n) = memo.get(s) {
            return n;
        }
        let kids = self.tree.state_children(s);
        let n = if kids.is_empty() {
            1
        } else {
            kids.iter().map(|k| self.count_from(k, on_cycle, memo)).sum()
        };
        memo.insert(s.clone(), n);
        n
    }
}

impl<T: Tree> Gba for CylinderSpace<T> {
    type Elem = CutSet<T::Node>;

    fn realization(&self) -> Realization {
        self.tree.realization()
    }

    fn bottom(&self) -> Self::Elem {
        CutSet {
            depth: 0,
            nodes: BTreeSet::new(),
        }
    }

    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.combine(a, b, |x, y| x.intersection(y).cloned().collect())
    }

    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.combine(a, b, |x, y| x.union(y).cloned().collect())
    }

    fn diff(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.combine(a, b, |x, y| x.difference(y).cloned().collect())
    }

    fn is_bottom(&self, a: &Self::Elem) -> bool {
        a.nodes.is_empty()
    }

    fn owns(&self, a: &Self::Elem) -> bool {
        let shaped = a.nodes.iter().all(|n| {
            self.tree.is_node(n) && {
                let d = self.tree.depth(n);
                d == a.depth || (d < a.depth && self.is_leaf(n))
            }
        });
        shaped && self.normalize(a.depth, a.nodes.clone()) == *a
    }

    fn top(&self) -> Option<Self::Elem> {
        Some(self.from_nodes(self.tree.roots()))
    }

    fn generators(&self) -> Vec<Self::Elem> {
        let mut out = Vec::new();
        let mut layer = self.tree.roots();
        for _ in 0..3 {
            out.extend(layer.iter().map(|n| self.cylinder(n)));
            layer = layer.iter().flat_map(|n| self.tree.children(n)).collect();
            if layer.len() > 64 {
                break;
            }
        }
        out
    }

    fn point_count(&self, a: &Self::Elem) -> Option<usize> {
        a.nodes
            .iter()
            .map(|n| self.state_points(&self.tree.state(n)))
            .sum()
    }

    fn render(&self, a: &Self::Elem) -> String {
        let parts: Vec<String> = a.nodes.iter().map(|n| self.tree.render_node(n)).collect();
        format!("{{{}}}", parts.join(","))
    }
}
