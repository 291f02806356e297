//! Changing the grading group along a homomorphism `f : G → H`.
//!
//! When `σ = f ∘ φ` is still pure, `I^σ_h` is the disjoint join of the `I_g`
//! with `f(g) = h`, and `φ^σ_h` acts on each piece by the matching `φ_g`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::RngCore;

use super::{verify_pure_grading, Graded, InverseSemigroup, SemigroupAction};
use crate::error::{domain, Result};
use crate::gba::{Gba, Ideal};
use crate::partial_action::{ideal_samples, ElemOf, Group, GroupElemOf, PartialAction};
use crate::report::Report;
use crate::skew_algebra::{Ring, SkewOf, SkewRing};

/// `S` with the grading `f ∘ φ`.
pub struct RegradedSemigroup<'a, S, H, F> {
    inner: &'a S,
    target: H,
    f: F,
}

impl<'a, S, H, F> RegradedSemigroup<'a, S, H, F>
where
    S: Graded,
    H: Group,
    F: Fn(&<S::Group as Group>::Elem) -> H::Elem,
{
    pub fn new(inner: &'a S, target: H, f: F) -> Self {
        RegradedSemigroup { inner, target, f }
    }
}

impl<S, H, F> InverseSemigroup for RegradedSemigroup<'_, S, H, F>
where
    S: Graded,
{
    type Elem = S::Elem;

    fn zero(&self) -> S::Elem {
        self.inner.zero()
    }

    fn mul(&self, a: &S::Elem, b: &S::Elem) -> S::Elem {
        self.inner.mul(a, b)
    }

    fn star(&self, a: &S::Elem) -> S::Elem {
        self.inner.star(a)
    }

    fn enumerate(&self, bound: usize) -> Vec<S::Elem> {
        self.inner.enumerate(bound)
    }

    fn is_finite(&self) -> bool {
        self.inner.is_finite()
    }

    fn render(&self, a: &S::Elem) -> String {
        self.inner.render(a)
    }
}

impl<S, H, F> Graded for RegradedSemigroup<'_, S, H, F>
where
    S: Graded,
    H: Group,
    F: Fn(&<S::Group as Group>::Elem) -> H::Elem,
{
    type Group = H;

    fn group(&self) -> &H {
        &self.target
    }

    fn grade(&self, s: &S::Elem) -> Option<H::Elem> {
        self.inner.grade(s).map(|g| (self.f)(&g))
    }
}

/// The partial action of `H` induced by `σ = f ∘ φ`, on the same algebra.
///
/// Fibres `X_h = f⁻¹(h)` are collected from the support of the original
/// action up to twice the word bound, which covers every degree reached by
/// a product of two elements within the bound.
pub struct RegradedAction<'a, A: PartialAction, H: Group, F> {
    inner: &'a A,
    target: H,
    f: F,
    fibres: BTreeMap<H::Elem, Vec<GroupElemOf<A>>>,
    bound: usize,
}

impl<'a, A, H, F> RegradedAction<'a, A, H, F>
where
    A: SemigroupAction,
    H: Group + Clone,
    F: Fn(&GroupElemOf<A>) -> H::Elem + Clone,
{
    /// Fails with the purity witness when `f ∘ φ` is not pure.
    pub fn new(inner: &'a A, target: H, f: F, bound: usize) -> Result<Self> {
        let regraded = RegradedSemigroup::new(inner.semigroup(), target.clone(), f.clone());
        let purity = verify_pure_grading(&regraded, bound);
        if let Some(c) = purity.failures().next() {
            return Err(domain(format!(
                "the regrading is not pure: {} ({})",
                c.name,
                c.witness.clone().unwrap_or_default()
            )));
        }
        let mut fibres: BTreeMap<H::Elem, Vec<GroupElemOf<A>>> = BTreeMap::new();
        for g in inner.support(2 * bound) {
            fibres.entry(f(&g)).or_default().push(g);
        }
        Ok(RegradedAction {
            inner,
            target,
            f,
            fibres,
            bound,
        })
    }
}

impl<A, H, F> RegradedAction<'_, A, H, F>
where
    A: PartialAction,
    H: Group,
    F: Fn(&GroupElemOf<A>) -> H::Elem,
{
    pub fn fibre(&self, h: &H::Elem) -> &[GroupElemOf<A>] {
        self.fibres.get(h).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn map_degree(&self, g: &GroupElemOf<A>) -> H::Elem {
        (self.f)(g)
    }

    /// `Σ f_g δ_g ↦ Σ f_g δ_{f(g)}`.
    pub fn forward<R: Ring>(
        &self,
        target: &SkewRing<'_, Self, R>,
        x: &SkewOf<A, R>,
    ) -> Result<SkewOf<Self, R>> {
        let mut out = target.zero();
        for (g, c) in x.terms() {
            let m = target.monomial(c.clone(), &(self.f)(g))?;
            out = target.add(&out, &m);
        }
        Ok(out)
    }

    /// Splits each `f_h δ_h` over the fibre of `h`.
    pub fn backward<R: Ring>(
        &self,
        source: &SkewRing<'_, A, R>,
        x: &SkewOf<Self, R>,
    ) -> Result<SkewOf<A, R>> {
        let space = self.inner.space();
        let mut out = source.zero();
        for (h, c) in x.terms() {
            for (value, support) in c.terms() {
                let mut rest = support.clone();
                for g in self.fibre(h) {
                    let piece = match self.inner.ideal(g) {
                        Ideal::Whole => rest.clone(),
                        Ideal::Below(m) => space.meet(&rest, &m),
                    };
                    if space.is_bottom(&piece) {
                        continue;
                    }
                    rest = space.diff(&rest, &piece);
                    out = source.add(&out, &source.term(value, &piece, g)?);
                }
                if !space.is_bottom(&rest) {
                    return Err(domain(format!(
                        "{} is not covered by the fibre of {}",
                        space.render(&rest),
                        self.target.render(h)
                    )));
                }
            }
        }
        Ok(out)
    }
}

impl<A, H, F> PartialAction for RegradedAction<'_, A, H, F>
where
    A: PartialAction,
    H: Group,
    F: Fn(&GroupElemOf<A>) -> H::Elem,
{
    type Space = A::Space;
    type Group = H;

    fn space(&self) -> &A::Space {
        self.inner.space()
    }

    fn group(&self) -> &H {
        &self.target
    }

    fn ideal(&self, h: &H::Elem) -> Ideal<ElemOf<A>> {
        let space = self.inner.space();
        let mut bound = space.bottom();
        for g in self.fibre(h) {
            match self.inner.ideal(g) {
                Ideal::Whole => return Ideal::Whole,
                Ideal::Below(m) => bound = space.join(&bound, &m),
            }
        }
        Ideal::Below(bound)
    }

    fn act(&self, h: &H::Elem, x: &ElemOf<A>) -> Option<ElemOf<A>> {
        let space = self.inner.space();
        let grp = self.inner.group();
        let mut rest = x.clone();
        let mut out = space.bottom();
        for g in self.fibre(h) {
            let piece = match self.inner.ideal(&grp.inv(g)) {
                Ideal::Whole => rest.clone(),
                Ideal::Below(m) => space.meet(&rest, &m),
            };
            if space.is_bottom(&piece) {
                continue;
            }
            rest = space.diff(&rest, &piece);
            out = space.join(&out, &self.inner.act(g, &piece)?);
        }
        space.is_bottom(&rest).then_some(out)
    }

    fn support(&self, bound: usize) -> Vec<H::Elem> {
        let ball: BTreeSet<H::Elem> = self.target.elements_up_to(bound).into_iter().collect();
        self.fibres
            .keys()
            .filter(|h| ball.contains(*h) && !self.ideal(h).is_trivial(self.inner.space()))
            .cloned()
            .collect()
    }
}

/// Evidence that the regraded algebra is isomorphic to the original: the
/// fibres are disjoint, `E^σ_h` splits over them, the degree map is a
/// bijection on homogeneous spanning elements within the bound, and it is
/// multiplicative on `pairs` random pairs.
pub fn regrade_report<A, H, F, R>(
    regraded: &RegradedAction<'_, A, H, F>,
    ring: R,
    rng: &mut dyn RngCore,
    pairs: usize,
) -> Report
where
    A: SemigroupAction,
    H: Group,
    F: Fn(&GroupElemOf<A>) -> H::Elem,
    R: Ring + Clone,
{
    let a = regraded.inner;
    let bound = regraded.bound;
    let space = a.space();
    let s = a.semigroup();
    let hg = &regraded.target;
    let mut report = Report::new(format!("word length <= {bound}, {pairs} sampled products"));

    let mut disjoint = None;
    for (h, gs) in &regraded.fibres {
        for (i, g1) in gs.iter().enumerate() {
            for g2 in &gs[i + 1..] {
                let meet = a.ideal(g1).intersect(&a.ideal(g2), space);
                if !meet.is_trivial(space) && disjoint.is_none() {
                    disjoint = Some(format!(
                        "I_{{{}}} and I_{{{}}} over {}",
                        a.group().render(g1),
                        a.group().render(g2),
                        hg.render(h)
                    ));
                }
            }
        }
    }
    report.record("disjoint fibres", disjoint);

    // every degree in a fibre has a minimal witness within twice the bound
    let all = s.enumerate(2 * bound);
    let nonzero: Vec<_> = s.idempotents(bound).into_iter().filter(|x| !s.is_zero(x)).collect();
    let mut split = None;
    for h in regraded.fibres.keys() {
        let ranges: Vec<_> = all
            .iter()
            .filter(|t| s.grade(t).is_some_and(|g| regraded.fibre(h).contains(&g)))
            .map(|t| s.mul(t, &s.star(t)))
            .collect();
        for x in &nonzero {
            let in_sigma = ranges.iter().any(|e| super::natural_order(s, x, e));
            let hits = regraded.fibre(h).iter().filter(|g| a.in_eg(g, x)).count();
            if (hits > 1 || in_sigma != (hits == 1)) && split.is_none() {
                split = Some(format!("{} over {}: {hits} pieces", s.render(x), hg.render(h)));
            }
        }
    }
    report.record("E_h splits over the fibre", split);

    let source = SkewRing::new(a, ring.clone());
    let target = SkewRing::new(regraded, ring.clone());
    let one = ring.one();
    let mut bijection = None;
    for g in a.support(bound) {
        for u in ideal_samples(space, &a.ideal(&g)) {
            if space.is_bottom(&u) || bijection.is_some() {
                continue;
            }
            let x = source.term(&one, &u, &g).expect("sample lies in the ideal");
            let back = regraded
                .forward(&target, &x)
                .and_then(|y| regraded.backward(&source, &y));
            if back.as_ref().ok() != Some(&x) {
                bijection = Some(source.render(&x));
            }
        }
    }
    for h in regraded.support(bound) {
        for w in ideal_samples(space, &regraded.ideal(&h)) {
            if space.is_bottom(&w) || bijection.is_some() {
                continue;
            }
            let y = target.term(&one, &w, &h).expect("sample lies in the ideal");
            let there = regraded
                .backward(&source, &y)
                .and_then(|x| regraded.forward(&target, &x));
            if there.as_ref().ok() != Some(&y) {
                bijection = Some(target.render(&y));
            }
        }
    }
    report.record("spanning bijection", bijection);

    let mut mult = None;
    for _ in 0..pairs {
        let x = source.random_element(rng, bound, 3);
        let y = source.random_element(rng, bound, 3);
        let lhs = regraded.forward(&target, &source.mul(&x, &y));
        let rhs = regraded
            .forward(&target, &x)
            .and_then(|fx| regraded.forward(&target, &y).map(|fy| target.mul(&fx, &fy)));
        let ok = matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l == r);
        if !ok && mult.is_none() {
            mult = Some(format!("x = {}, y = {}", source.render(&x), source.render(&y)));
        }
    }
    report.record("multiplicative", mult);
    report
}
