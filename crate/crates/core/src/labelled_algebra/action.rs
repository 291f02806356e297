//! The tight spectrum of a labelled space as a cylinder tree, the partial
//! action of `𝔽[𝒜]` on its compact opens, and the Cuntz–Krieger images.
//!
//! A point is a sequence of atoms of `𝓑` linked by labels: the node
//! `(α, q)` has children `(αa, q')` for `a ∈ Δ_q` and atoms `q' ⊆ r(q, a)`.
//! Weak left-resolution makes the parent of a node unique. When `𝓑` does
//! not cover every source of a label `a`, the atoms of `r(a)` reached only
//! from outside give parentless roots `(a, q)`. Nodes whose atom emits
//! nothing are single points; these are the leftover pieces `W(α, q)` of
//! singular sets.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{is_subset, LElem, LabelPath, LabelledSemigroup, LabelledSpace, VSet};
use crate::error::{Error, Result};
use crate::gba::{CutSet, CylinderSpace, Gba, Ideal, Realization, Tree};
use crate::inverse_semigroup::{Graded, InverseSemigroup, SemigroupAction};
use crate::partial_action::{FreeGroup, Group, PartialAction, Word};
use crate::report::Report;
use crate::skew_algebra::{Ring, SkewOf, SkewRing};
use crate::tight_filters::{Semilattice, TightSpace};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LNode {
    pub alpha: LabelPath,
    /// Index into the atoms of `𝓑`.
    pub atom: usize,
}

#[derive(Debug, Clone)]
pub struct LabelledTree {
    space: LabelledSpace,
}

impl LabelledTree {
    fn next_atoms(&self, q: usize) -> Vec<(usize, usize)> {
        let (sp, g) = (&self.space, self.space.graph());
        let a = sp.atoms()[q];
        let mut out = Vec::new();
        for l in g.delta(a) {
            out.extend(sp.atoms_in(g.r(a, l)).map(|q2| (l, q2)));
        }
        out
    }
}

impl Tree for LabelledTree {
    type Node = LNode;
    type State = usize;

    fn realization(&self) -> Realization {
        Realization::SymbolicLabelled
    }

    fn roots(&self) -> Vec<LNode> {
        let (sp, g) = (&self.space, self.space.graph());
        let mut out: Vec<LNode> = (0..sp.atoms().len())
            .map(|atom| LNode { alpha: Vec::new(), atom })
            .collect();
        let covered = sp.family().iter().fold(0, |m, &a| m | a);
        for l in 0..g.alphabet().len() {
            let reached = g.r(covered, l);
            out.extend(
                sp.atoms_in(g.range(&[l]))
                    .filter(|&q| sp.atoms()[q] & reached == 0)
                    .map(|atom| LNode { alpha: alloc::vec![l], atom }),
            );
        }
        out
    }

    fn children(&self, n: &LNode) -> Vec<LNode> {
        self.next_atoms(n.atom)
            .into_iter()
            .map(|(l, atom)| {
                let mut alpha = n.alpha.clone();
                alpha.push(l);
                LNode { alpha, atom }
            })
            .collect()
    }

    fn parent(&self, n: &LNode) -> Option<LNode> {
        let (&l, head) = n.alpha.split_last()?;
        let (sp, g) = (&self.space, self.space.graph());
        let target = sp.atoms()[n.atom];
        sp.atoms_in(g.range(head))
            .find(|&q| is_subset(target, g.r(sp.atoms()[q], l)))
            .map(|atom| LNode {
                alpha: head.to_vec(),
                atom,
            })
    }

    fn depth(&self, n: &LNode) -> usize {
        n.alpha.len()
    }

    fn state(&self, n: &LNode) -> usize {
        n.atom
    }

    fn state_children(&self, s: &usize) -> Vec<usize> {
        self.next_atoms(*s).into_iter().map(|(_, q)| q).collect()
    }

    fn is_node(&self, n: &LNode) -> bool {
        let g = self.space.graph();
        n.atom < self.space.atoms().len()
            && n.alpha.iter().all(|&l| l < g.alphabet().len())
            && is_subset(self.space.atoms()[n.atom], g.range(&n.alpha))
    }

    fn render_node(&self, n: &LNode) -> String {
        let g = self.space.graph();
        format!("({},{})", g.render_path(&n.alpha), g.render_set(self.space.atoms()[n.atom]))
    }
}

/// The partial action of `𝔽[𝒜]` on the compact opens of the tight
/// spectrum, in closed form: for reduced `g = p₁p₂⁻¹`,
/// `I_g = V(p₁, r(p₁) ∩ r(p₂))` and `φ_g` swaps the prefix `p₂` for `p₁`.
#[derive(Debug, Clone)]
pub struct LabelledAction {
    semigroup: LabelledSemigroup,
    space: CylinderSpace<LabelledTree>,
}

impl LabelledAction {
    pub fn new(space: LabelledSpace) -> Self {
        let tree = LabelledTree { space: space.clone() };
        LabelledAction {
            semigroup: LabelledSemigroup::new(space),
            space: CylinderSpace::new(tree),
        }
    }

    pub fn labelled(&self) -> &LabelledSpace {
        self.semigroup.space()
    }

    /// `V_{(α,A,α)}`: the nodes `(α, q)` over atoms `q ⊆ A ∩ r(α)`.
    pub fn v_set(&self, alpha: &[usize], a: VSet) -> CutSet<LNode> {
        let sp = self.labelled();
        let a = a & sp.graph().range(alpha);
        self.space.from_nodes(sp.atoms_in(a).map(|atom| LNode {
            alpha: alpha.to_vec(),
            atom,
        }))
    }

    /// `W(α, A)`: the points of `V(α, A)` that stop at `α`. Empty exactly
    /// when `A` is regular or empty.
    pub fn leftover(&self, alpha: &[usize], a: VSet) -> CutSet<LNode> {
        let sp = self.labelled();
        let g = sp.graph();
        let a = a & g.range(alpha);
        self.space.from_nodes(
            sp.atoms_in(a)
                .filter(|&q| g.delta(sp.atoms()[q]).is_empty())
                .map(|atom| LNode {
                    alpha: alpha.to_vec(),
                    atom,
                }),
        )
    }

    /// `g = p₁p₂⁻¹` with `r(p₁) ∩ r(p₂)`, or `None` when `g` has another
    /// shape or the ranges do not meet.
    pub fn decompose(&self, g: &Word) -> Option<(LabelPath, LabelPath, VSet)> {
        let (p1, p2) = g.split_quotient()?;
        let gr = self.labelled().graph();
        let c = gr.range(&p1) & gr.range(&p2);
        (c != 0).then_some((p1, p2, c))
    }
}

impl PartialAction for LabelledAction {
    type Space = CylinderSpace<LabelledTree>;
    type Group = FreeGroup;

    fn space(&self) -> &Self::Space {
        &self.space
    }

    fn group(&self) -> &FreeGroup {
        self.semigroup.group()
    }

    fn ideal(&self, g: &Word) -> Ideal<CutSet<LNode>> {
        if g.is_empty() {
            return Ideal::Whole;
        }
        match self.decompose(g) {
            Some((p1, _, c)) => Ideal::Below(self.v_set(&p1, c)),
            None => Ideal::Below(self.space.bottom()),
        }
    }

    fn act(&self, g: &Word, x: &CutSet<LNode>) -> Option<CutSet<LNode>> {
        if g.is_empty() || self.space.is_bottom(x) {
            return Some(x.clone());
        }
        let (p1, p2, c) = self.decompose(g)?;
        if !self.space.le(x, &self.v_set(&p2, c)) {
            return None;
        }
        self.space.transport(x, p2.len(), p1.len(), |n| {
            let rest = n.alpha.strip_prefix(p2.as_slice())?;
            let mut alpha = p1.clone();
            alpha.extend_from_slice(rest);
            Some(LNode { alpha, atom: n.atom })
        })
    }
}

impl SemigroupAction for LabelledAction {
    type Semigroup = LabelledSemigroup;

    fn semigroup(&self) -> &LabelledSemigroup {
        &self.semigroup
    }

    fn v(&self, x: &LElem) -> CutSet<LNode> {
        match x {
            LElem::Triple(alpha, a, beta) if alpha == beta => self.v_set(alpha, *a),
            _ => self.space.bottom(),
        }
    }

    /// `(p₁p, A, p₁p)` with `A ⊆ r(p₂p)`.
    fn in_eg(&self, g: &Word, x: &LElem) -> bool {
        match x {
            LElem::Zero => true,
            LElem::Triple(alpha, _, beta) if alpha != beta => false,
            LElem::Triple(_, _, _) if g.is_empty() => true,
            LElem::Triple(alpha, a, _) => {
                let Some((p1, mut p2)) = g.split_quotient() else {
                    return false;
                };
                let Some(rest) = alpha.strip_prefix(p1.as_slice()) else {
                    return false;
                };
                p2.extend_from_slice(rest);
                is_subset(*a, self.labelled().graph().range(&p2))
            }
        }
    }

    /// `(p₂p, A, p₂p) ↦ (p₁p, A, p₁p)`.
    fn phi(&self, g: &Word, x: &LElem) -> Option<LElem> {
        if !self.in_eg(&self.group().inv(g), x) {
            return None;
        }
        match x {
            LElem::Zero => Some(LElem::Zero),
            _ if g.is_empty() => Some(x.clone()),
            LElem::Triple(alpha, a, _) => {
                let (mut p1, p2) = g.split_quotient()?;
                p1.extend_from_slice(alpha.strip_prefix(p2.as_slice())?);
                Some(LElem::Triple(p1.clone(), *a, p1))
            }
        }
    }
}

/// Images of the Cuntz–Krieger generators:
/// `p_B ↦ (ω,B,ω)δ_1`, `s_a ↦ (a,r(a),a)δ_a`, `s_a* ↦ (ω,r(a),ω)δ_{a⁻¹}`.
pub struct CkImages<'s, 'a, R: Ring> {
    skew: &'s SkewRing<'a, LabelledAction, R>,
}

impl<'s, 'a, R: Ring> CkImages<'s, 'a, R> {
    pub fn new(skew: &'s SkewRing<'a, LabelledAction, R>) -> Self {
        CkImages { skew }
    }

    fn delta(&self, alpha: &[usize], a: VSet, g: Word) -> SkewOf<LabelledAction, R> {
        let u = self.skew.action().v_set(alpha, a);
        self.skew.delta(&u, &g).expect("generator images lie in their ideals")
    }

    pub fn p(&self, b: VSet) -> SkewOf<LabelledAction, R> {
        self.delta(&[], b, Word::empty())
    }

    pub fn s(&self, a: usize) -> SkewOf<LabelledAction, R> {
        let r = self.skew.action().labelled().graph().range(&[a]);
        self.delta(&[a], r, Word::positive(&[a]))
    }

    pub fn s_star(&self, a: usize) -> SkewOf<LabelledAction, R> {
        let r = self.skew.action().labelled().graph().range(&[a]);
        self.delta(&[], r, Word::quotient(&[], &[a]))
    }

    /// `(α, r(α), α)δ_α`.
    pub fn path(&self, alpha: &[usize]) -> SkewOf<LabelledAction, R> {
        let r = self.skew.action().labelled().graph().range(alpha);
        self.delta(alpha, r, Word::positive(alpha))
    }

    /// `(ω, r(α), ω)δ_{α⁻¹}`.
    pub fn ghost(&self, alpha: &[usize]) -> SkewOf<LabelledAction, R> {
        let r = self.skew.action().labelled().graph().range(alpha);
        self.delta(&[], r, Word::quotient(&[], alpha))
    }
}

pub fn ck_images<'s, 'a, R: Ring>(skew: &'s SkewRing<'a, LabelledAction, R>) -> CkImages<'s, 'a, R> {
    CkImages::new(skew)
}

/// Relations (1)–(5) on the images, with (5) over the regular sets.
pub fn verify_ck_relations<R: Ring>(skew: &SkewRing<'_, LabelledAction, R>) -> Report {
    let im = CkImages::new(skew);
    let sp = skew.action().labelled();
    let g = sp.graph();
    let fam = sp.family();
    let letters = 0..g.alphabet().len();
    let rs = |a: VSet| g.render_set(a);
    let ln = |l: usize| g.alphabet()[l].clone();
    let regular: Vec<VSet> = fam.iter().copied().filter(|&a| sp.is_regular(a)).collect();
    let mut report = Report::new(format!(
        "{} sets ({} regular), {} labels",
        fam.len(),
        regular.len(),
        g.alphabet().len()
    ));
    let p: Vec<_> = fam.iter().map(|&a| im.p(a)).collect();
    let pos = |a: VSet| fam.binary_search(&a).expect("family is closed");

    let mut meets = None;
    let mut unions = None;
    for (i, &a) in fam.iter().enumerate() {
        for (j, &b) in fam.iter().enumerate() {
            let prod = skew.mul(&p[i], &p[j]);
            if meets.is_none() && prod != p[pos(a & b)] {
                meets = Some(format!("A = {}, B = {}", rs(a), rs(b)));
            }
            let sum = skew.sub(&skew.add(&p[i], &p[j]), &p[pos(a & b)]);
            if unions.is_none() && sum != p[pos(a | b)] {
                unions = Some(format!("A = {}, B = {}", rs(a), rs(b)));
            }
        }
    }
    report.record("(1) meets", meets);
    report.record("(1) unions", unions);
    report.record("(1) empty", (!im.p(0).is_zero()).then(|| String::from("p_∅ ≠ 0")));
    let nonzero = fam
        .iter()
        .find(|&&a| a != 0 && im.p(a).is_zero())
        .map(|&a| format!("p_{} = 0", rs(a)));
    report.record("p_A nonzero", nonzero);

    let mut two = None;
    for (i, &a) in fam.iter().enumerate() {
        for l in letters.clone() {
            let ra = p[pos(g.r(a, l))].clone();
            let left = skew.mul(&p[i], &im.s(l)) == skew.mul(&im.s(l), &ra);
            let right = skew.mul(&im.s_star(l), &p[i]) == skew.mul(&ra, &im.s_star(l));
            if two.is_none() && !(left && right) {
                two = Some(format!("A = {}, a = {}", rs(a), ln(l)));
            }
        }
    }
    report.record("(2)", two);

    let mut three = None;
    for a in letters.clone() {
        for b in letters.clone() {
            let expected = if a == b { im.p(g.range(&[a])) } else { skew.zero() };
            if three.is_none() && skew.mul(&im.s_star(a), &im.s(b)) != expected {
                three = Some(format!("a = {}, b = {}", ln(a), ln(b)));
            }
        }
    }
    report.record("(3)", three);

    let four = letters
        .clone()
        .find(|&a| {
            let (s, t) = (im.s(a), im.s_star(a));
            skew.mul(&skew.mul(&s, &t), &s) != s || skew.mul(&skew.mul(&t, &s), &t) != t
        })
        .map(|a| format!("a = {}", ln(a)));
    report.record("(4)", four);

    let five = regular
        .iter()
        .find(|&&a| {
            let sum = skew.sum(
                g.delta(a)
                    .into_iter()
                    .map(|l| skew.mul(&skew.mul(&im.s(l), &im.p(g.r(a, l))), &im.s_star(l)))
                    .collect::<Vec<_>>()
                    .iter(),
            );
            sum != im.p(a)
        })
        .map(|&a| format!("A = {}", rs(a)));
    report.record("(5)", five);
    report
}

/// The two product formulas behind surjectivity, for realizable label
/// paths `α, β` with `|α| + |β| ≤ depth`:
/// `ghost(α)·ghost(β) = ghost(βα)` and `path(α)·path(β) = path(αβ)`.
pub fn generator_products<R: Ring>(skew: &SkewRing<'_, LabelledAction, R>, depth: usize) -> Report {
    let im = CkImages::new(skew);
    let g = skew.action().labelled().graph();
    let paths: Vec<LabelPath> = g.label_paths(depth).into_iter().filter(|p| !p.is_empty()).collect();
    let mut report = Report::new(format!("{} label paths, total length <= {depth}", paths.len()));
    let mut ghosts = None;
    let mut forward = None;
    for a in &paths {
        for b in paths.iter().filter(|b| a.len() + b.len() <= depth) {
            let ba: LabelPath = b.iter().chain(a).copied().collect();
            let ab: LabelPath = a.iter().chain(b).copied().collect();
            let pair = || format!("α = {}, β = {}", g.render_path(a), g.render_path(b));
            if ghosts.is_none() && skew.mul(&im.ghost(a), &im.ghost(b)) != im.ghost(&ba) {
                ghosts = Some(pair());
            }
            if forward.is_none() && skew.mul(&im.path(a), &im.path(b)) != im.path(&ab) {
                forward = Some(pair());
            }
        }
    }
    report.record("(1) ghost paths", ghosts);
    report.record("(2) paths", forward);
    report
}

/// The number of tight filters through `x` in the finite semilattice of
/// idempotents `(α, A, α)` with `|α| ≤ depth`. Brute force, for testing the
/// cylinder model: it should match the points of `V_x` cut at `depth`.
pub fn truncated_point_count(s: &LabelledSemigroup, x: &LElem, depth: usize) -> Result<usize> {
    let idem: Vec<LElem> = s
        .enumerate(depth)
        .into_iter()
        .filter(|e| match e {
            LElem::Zero => true,
            LElem::Triple(a, _, b) => a == b && a.len() <= depth,
        })
        .collect();
    let pos = |e: &LElem| idem.iter().position(|f| f == e);
    let at = pos(x).ok_or_else(|| Error::Domain(format!("{} is not an idempotent at depth {depth}", s.render(x))))?;
    let meet = idem
        .iter()
        .map(|a| {
            idem.iter()
                .map(|b| pos(&s.mul(a, b)).ok_or_else(|| Error::Consistency("product leaves the truncation".into())))
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let names = idem.iter().map(|e| s.render(e)).collect();
    let p = Semilattice::new(names, meet)?;
    let tight = TightSpace::with_bound(&p, usize::MAX)?;
    Ok(tight.filters().iter().filter(|f| f.contains(at)).count())
}
