//! Partial actions of groups on generalized Boolean algebras and the checks
//! for the partial-action axioms, orthogonality, semi-saturation and
//! morphisms between actions.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{domain, Result};
use crate::gba::{is_gba_morphism, AtomSet, Gba, Ideal, PowerSpace};
use crate::report::Report;

mod group;

pub use group::{free_hom, FiniteGroup, FreeGroup, Group, Letter, Word};

pub const DEFAULT_WORD_BOUND: usize = 3;

pub type ElemOf<A> = <<A as PartialAction>::Space as Gba>::Elem;
pub type GroupElemOf<A> = <<A as PartialAction>::Group as Group>::Elem;

/// Ideals `I_t` and isomorphisms `φ_t : I_{t⁻¹} → I_t`.
pub trait PartialAction {
    type Space: Gba;
    type Group: Group;

    fn space(&self) -> &Self::Space;
    fn group(&self) -> &Self::Group;
    fn ideal(&self, t: &GroupElemOf<Self>) -> Ideal<ElemOf<Self>>;
    /// `φ_t(x)`, or `None` when `x ∉ I_{t⁻¹}`.
    fn act(&self, t: &GroupElemOf<Self>, x: &ElemOf<Self>) -> Option<ElemOf<Self>>;

    /// Group elements within `bound` whose ideal is nontrivial.
    fn support(&self, bound: usize) -> Vec<GroupElemOf<Self>> {
        self.group()
            .elements_up_to(bound)
            .into_iter()
            .filter(|t| !self.ideal(t).is_trivial(self.space()))
            .collect()
    }
}

/// A finite family of elements of `ideal` used as probes: everything for
/// enumerable spaces, otherwise the bound and its meets and differences
/// with the space's generators.
pub fn ideal_samples<B: Gba>(space: &B, ideal: &Ideal<B::Elem>) -> Vec<B::Elem> {
    if let Some(all) = space.elements() {
        return all.into_iter().filter(|x| ideal.contains(space, x)).collect();
    }
    let gens = space.generators();
    let mut out: BTreeSet<B::Elem> = BTreeSet::new();
    out.insert(space.bottom());
    match ideal.bound(space) {
        Some(m) => {
            for g in &gens {
                out.insert(space.meet(&m, g));
                out.insert(space.diff(&m, g));
            }
            out.insert(m);
        }
        None => out.extend(gens),
    }
    out.into_iter().collect()
}

fn same_ideal<B: Gba>(space: &B, a: &Ideal<B::Elem>, b: &Ideal<B::Elem>) -> bool {
    a.canonical(space) == b.canonical(space)
}

/// The image of the ideal `j ⊆ I_{s⁻¹}` under `φ_s`.
fn image_ideal<A: PartialAction + ?Sized>(
    a: &A,
    s: &GroupElemOf<A>,
    j: &Ideal<ElemOf<A>>,
) -> Option<Ideal<ElemOf<A>>> {
    match j.bound(a.space()) {
        Some(m) => a.act(s, &m).map(Ideal::Below),
        // only the whole algebra lacks a bound, and φ_s maps it onto I_s
        None => Some(a.ideal(s)),
    }
}

/// Axioms (1)-(3) on group elements of length at most `bound`, plus the
/// statement that each `φ_t` is an isomorphism with inverse `φ_{t⁻¹}`.
pub fn verify_partial_action<A: PartialAction + ?Sized>(a: &A, bound: usize) -> Report {
    let sp = a.space();
    let g = a.group();
    let e = g.identity();
    let mut report = Report::new(format!("word length <= {bound}"));

    let whole = ideal_samples(sp, &Ideal::Whole);
    let unit = if !same_ideal(sp, &a.ideal(&e), &Ideal::Whole) {
        Some(format!("I_1 = {} is not the whole algebra", render_ideal(sp, &a.ideal(&e))))
    } else {
        whole
            .iter()
            .find(|x| a.act(&e, x).as_ref() != Some(*x))
            .map(|x| format!("phi_1({}) != {}", sp.render(x), sp.render(x)))
    };
    report.record("unit", unit);

    let support = a.support(bound);
    let all = g.elements_up_to(bound);

    let mut iso = None;
    'outer: for t in &support {
        let ti = g.inv(t);
        let dom = ideal_samples(sp, &a.ideal(&ti));
        let target = a.ideal(t);
        for x in &dom {
            let Some(y) = a.act(t, x) else {
                iso = Some(format!("phi_{} undefined at {}", g.render(t), sp.render(x)));
                break 'outer;
            };
            if !target.contains(sp, &y) || a.act(&ti, &y).as_ref() != Some(x) {
                iso = Some(format!(
                    "phi_{} at {} is not inverted by phi_{}",
                    g.render(t),
                    sp.render(x),
                    g.render(&ti)
                ));
                break 'outer;
            }
        }
        let few = &dom[..dom.len().min(12)];
        for x in few {
            for y in few {
                let f = |z: &ElemOf<A>| a.act(t, z);
                let ok = f(&sp.meet(x, y)) == f(x).zip(f(y)).map(|(p, q)| sp.meet(&p, &q))
                    && f(&sp.join(x, y)) == f(x).zip(f(y)).map(|(p, q)| sp.join(&p, &q))
                    && f(&sp.diff(x, y)) == f(x).zip(f(y)).map(|(p, q)| sp.diff(&p, &q));
                if !ok {
                    iso = Some(format!(
                        "phi_{} does not preserve operations on {}, {}",
                        g.render(t),
                        sp.render(x),
                        sp.render(y)
                    ));
                    break 'outer;
                }
            }
        }
    }
    report.record("isomorphisms", iso);

    let mut compat = None;
    'outer: for s in &support {
        let si = g.inv(s);
        for t in &all {
            let j = a.ideal(&si).intersect(&a.ideal(t), sp);
            let lhs = image_ideal(a, s, &j);
            let rhs = a.ideal(s).intersect(&a.ideal(&g.mul(s, t)), sp);
            if !lhs.is_some_and(|l| same_ideal(sp, &l, &rhs)) {
                compat = Some(format!(
                    "s = {}, t = {}: phi_s(I_s^-1 & I_t) != I_s & I_st = {}",
                    g.render(s),
                    g.render(t),
                    render_ideal(sp, &rhs)
                ));
                break 'outer;
            }
        }
    }
    report.record("compatibility", compat);

    let mut comp = None;
    'outer: for t in &support {
        let ti = g.inv(t);
        for s in &support {
            let st = g.mul(s, t);
            let j = a.ideal(&ti).intersect(&a.ideal(&g.inv(&st)), sp);
            for x in ideal_samples(sp, &j) {
                let lhs = a.act(t, &x).and_then(|y| a.act(s, &y));
                let rhs = a.act(&st, &x);
                if lhs.is_none() || lhs != rhs {
                    comp = Some(format!(
                        "s = {}, t = {}, x = {}",
                        g.render(s),
                        g.render(t),
                        sp.render(&x)
                    ));
                    break 'outer;
                }
            }
        }
    }
    report.record("composition", comp);
    report
}

pub fn render_ideal<B: Gba>(space: &B, i: &Ideal<B::Elem>) -> String {
    match i {
        Ideal::Whole => String::from("whole"),
        Ideal::Below(m) => format!("below {}", space.render(m)),
    }
}

/// `I_a ∩ I_b` trivial for distinct generators `a, b`.
pub fn is_orthogonal<A>(a: &A) -> bool
where
    A: PartialAction<Group = FreeGroup> + ?Sized,
{
    let g = a.group();
    let ideals: Vec<_> = (0..g.rank()).map(|i| a.ideal(&g.letter(i))).collect();
    ideals.iter().enumerate().all(|(i, x)| {
        ideals[i + 1..]
            .iter()
            .all(|y| x.intersect(y, a.space()).is_trivial(a.space()))
    })
}

/// `I_{st} ⊆ I_s` whenever `|st| = |s| + |t| <= bound`.
pub fn is_semi_saturated<A>(a: &A, bound: usize) -> bool
where
    A: PartialAction<Group = FreeGroup> + ?Sized,
{
    semi_saturation_witness(a, bound).is_none()
}

pub fn semi_saturation_witness<A>(a: &A, bound: usize) -> Option<(Word, Word)>
where
    A: PartialAction<Group = FreeGroup> + ?Sized,
{
    let g = a.group();
    let words = g.elements_up_to(bound);
    for s in &words {
        for t in &words {
            if s.len() + t.len() > bound {
                continue;
            }
            let st = g.mul(s, t);
            if st.len() == s.len() + t.len() && !a.ideal(&st).is_subset(&a.ideal(s), a.space()) {
                return Some((s.clone(), t.clone()));
            }
        }
    }
    None
}

/// A morphism of partial actions: a GBA morphism carrying `I_{1,t}` into
/// `I_{2,t}` and intertwining the `φ_t`.
pub fn verify_action_morphism<A1, A2, F>(f: F, a1: &A1, a2: &A2, bound: usize) -> Report
where
    A1: PartialAction,
    A2: PartialAction<Group = A1::Group>,
    F: Fn(&ElemOf<A1>) -> ElemOf<A2>,
{
    let (s1, s2) = (a1.space(), a2.space());
    let g = a1.group();
    let mut report = Report::new(format!("word length <= {bound}"));
    let morphism = (!is_gba_morphism(&f, s1, s2)).then(|| String::from("not a GBA morphism"));
    report.record("gba morphism", morphism);

    let support = a1.support(bound);
    let mut ideals = None;
    'outer: for t in &support {
        let target = a2.ideal(t);
        for x in ideal_samples(s1, &a1.ideal(t)) {
            if !target.contains(s2, &f(&x)) {
                ideals = Some(format!(
                    "t = {}: f({}) not in I_2,t",
                    g.render(t),
                    s1.render(&x)
                ));
                break 'outer;
            }
        }
    }
    report.record("ideals", ideals);

    let mut square = None;
    'outer: for t in &support {
        for x in ideal_samples(s1, &a1.ideal(&g.inv(t))) {
            let lhs = a1.act(t, &x).map(|y| f(&y));
            let rhs = a2.act(t, &f(&x));
            if lhs.is_none() || lhs != rhs {
                square = Some(format!("t = {}, x = {}", g.render(t), s1.render(&x)));
                break 'outer;
            }
        }
    }
    report.record("equivariance", square);
    report
}

#[derive(Debug, Clone)]
struct Entry {
    /// `Y_t`, so that `I_t` is the subsets of `Y_t`.
    range: AtomSet,
    /// Atom bijection `Y_{t⁻¹} → Y_t`.
    map: BTreeMap<usize, usize>,
}

/// A partial action on a finite power algebra given atom by atom.
#[derive(Debug, Clone)]
pub struct TableAction<G: Group> {
    space: PowerSpace,
    group: G,
    entries: BTreeMap<G::Elem, Entry>,
    identity_range: Option<AtomSet>,
}

impl<G: Group> TableAction<G> {
    /// The action where every `I_t` with `t ≠ 1` is trivial.
    pub fn new(space: PowerSpace, group: G) -> Self {
        TableAction {
            space,
            group,
            entries: BTreeMap::new(),
            identity_range: None,
        }
    }

    /// Sets `φ_t` from atom pairs `(x, φ_t(x))` and `φ_{t⁻¹}` as its inverse.
    pub fn insert(&mut self, t: G::Elem, pairs: &[(usize, usize)]) -> Result<()> {
        if self.group.is_identity(&t) {
            return Err(domain("the identity acts trivially"));
        }
        let n = self.space.atom_count();
        let map: BTreeMap<usize, usize> = pairs.iter().copied().collect();
        let inverse: BTreeMap<usize, usize> = pairs.iter().map(|&(x, y)| (y, x)).collect();
        if map.len() != pairs.len() || inverse.len() != pairs.len() {
            return Err(domain("atom map is not a bijection"));
        }
        if pairs.iter().any(|&(x, y)| x >= n || y >= n) {
            return Err(domain("atom out of range"));
        }
        let ti = self.group.inv(&t);
        if ti == t && map != inverse {
            return Err(domain("an involution must act by an involution"));
        }
        self.entries.insert(
            t,
            Entry {
                range: self.space.set(inverse.keys().copied()),
                map: map.clone(),
            },
        );
        self.entries.insert(
            ti,
            Entry {
                range: self.space.set(map.keys().copied()),
                map: inverse,
            },
        );
        Ok(())
    }

    /// Replaces `I_1` by the subsets of `range`. Breaks the unit axiom
    /// unless `range` is everything; meant for negative tests.
    pub fn set_identity_range(&mut self, range: AtomSet) {
        self.identity_range = Some(range);
    }

    /// Restriction of a global action by atom permutations `perm(t)` to
    /// `u`: `I_t` is the subsets of `u ∩ perm(t)(u)`. `elems` lists the group
    /// elements to install.
    pub fn restricted_global<P>(space: PowerSpace, group: G, elems: &[G::Elem], perm: P, u: &AtomSet) -> Result<Self>
    where
        P: Fn(&G::Elem) -> Vec<usize>,
    {
        let mut out = TableAction::new(space, group);
        for t in elems {
            if out.group.is_identity(t) || out.entries.contains_key(t) {
                continue;
            }
            let p = perm(t);
            let pairs: Vec<(usize, usize)> = u
                .ones()
                .filter(|&x| u.contains(p[x]))
                .map(|x| (x, p[x]))
                .collect();
            out.insert(t.clone(), &pairs)?;
        }
        Ok(out)
    }

    pub fn power_space(&self) -> &PowerSpace {
        &self.space
    }
}

impl<G: Group> PartialAction for TableAction<G> {
    type Space = PowerSpace;
    type Group = G;

    fn space(&self) -> &PowerSpace {
        &self.space
    }

    fn group(&self) -> &G {
        &self.group
    }

    fn ideal(&self, t: &G::Elem) -> Ideal<AtomSet> {
        if self.group.is_identity(t) {
            return match &self.identity_range {
                Some(r) => Ideal::Below(r.clone()),
                None => Ideal::Whole,
            };
        }
        match self.entries.get(t) {
            Some(e) => Ideal::Below(e.range.clone()),
            None => Ideal::Below(self.space.bottom()),
        }
    }

    fn act(&self, t: &G::Elem, x: &AtomSet) -> Option<AtomSet> {
        if self.group.is_identity(t) {
            return match &self.identity_range {
                Some(r) if !self.space.le(x, r) => None,
                _ => Some(x.clone()),
            };
        }
        match self.entries.get(t) {
            Some(e) => {
                let image: Option<Vec<usize>> = x.ones().map(|i| e.map.get(&i).copied()).collect();
                image.map(|v| self.space.set(v))
            }
            None => x.is_empty().then(|| x.clone()),
        }
    }

    fn support(&self, bound: usize) -> Vec<G::Elem> {
        let ball: BTreeSet<G::Elem> = self.group.elements_up_to(bound).into_iter().collect();
        let mut out: BTreeSet<G::Elem> = self
            .entries
            .iter()
            .filter(|(t, e)| !e.range.is_empty() && ball.contains(*t))
            .map(|(t, _)| t.clone())
            .collect();
        out.insert(self.group.identity());
        out.into_iter().collect()
    }
}

/// The action in which only the identity has a nontrivial ideal.
#[derive(Debug, Clone)]
pub struct TrivialAction<B, G> {
    space: B,
    group: G,
}

impl<B: Gba, G: Group> TrivialAction<B, G> {
    pub fn new(space: B, group: G) -> Self {
        TrivialAction { space, group }
    }
}

impl<B: Gba, G: Group> PartialAction for TrivialAction<B, G> {
    type Space = B;
    type Group = G;

    fn space(&self) -> &B {
        &self.space
    }

    fn group(&self) -> &G {
        &self.group
    }

    fn ideal(&self, t: &G::Elem) -> Ideal<B::Elem> {
        if self.group.is_identity(t) {
            Ideal::Whole
        } else {
            Ideal::Below(self.space.bottom())
        }
    }

    fn act(&self, t: &G::Elem, x: &B::Elem) -> Option<B::Elem> {
        (self.group.is_identity(t) || self.space.is_bottom(x)).then(|| x.clone())
    }

    fn support(&self, _bound: usize) -> Vec<G::Elem> {
        alloc::vec![self.group.identity()]
    }
}

/// Rotation by `k` on `n` atoms.
pub fn rotation(n: usize, k: usize) -> Vec<usize> {
    (0..n).map(|i| (i + k) % n).collect()
}
