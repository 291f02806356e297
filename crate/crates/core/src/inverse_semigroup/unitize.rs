//! Adjoining an identity, inclusions `S1 ⊆_c S2`, and the comparison of
//! `L_R(S)` with `L_R(S*)`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{FiniteAction, Graded, InverseSemigroup};
use crate::error::Result;
use crate::gba::{FinCof, FinCofSpace, Gba};
use crate::partial_action::{
    ideal_samples, verify_action_morphism, ElemOf, FiniteGroup, Group, GroupElemOf, PartialAction,
    TrivialAction,
};
use crate::report::Report;
use crate::skew_algebra::{Ring, SkewOf, SkewRing};
use crate::tight_filters::{Inclusion, TcInclusion};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum UElem<E> {
    Inner(E),
    /// The adjoined identity `∗`.
    Unit,
}

/// `S* = S ∪ {∗}` with `∗` an identity of degree `1`.
#[derive(Debug, Clone)]
pub struct Unitized<S> {
    inner: S,
}

impl<S: Graded> Unitized<S> {
    pub fn new(inner: S) -> Self {
        Unitized { inner }
    }

    pub fn inner(&self) -> &S {
        &self.inner
    }
}

impl<S: Graded> InverseSemigroup for Unitized<S> {
    type Elem = UElem<S::Elem>;

    fn zero(&self) -> Self::Elem {
        UElem::Inner(self.inner.zero())
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        match (a, b) {
            (UElem::Unit, x) | (x, UElem::Unit) => x.clone(),
            (UElem::Inner(x), UElem::Inner(y)) => UElem::Inner(self.inner.mul(x, y)),
        }
    }

    fn star(&self, a: &Self::Elem) -> Self::Elem {
        match a {
            UElem::Unit => UElem::Unit,
            UElem::Inner(x) => UElem::Inner(self.inner.star(x)),
        }
    }

    fn enumerate(&self, bound: usize) -> Vec<Self::Elem> {
        let mut out: Vec<Self::Elem> = self.inner.enumerate(bound).into_iter().map(UElem::Inner).collect();
        out.push(UElem::Unit);
        out
    }

    fn is_finite(&self) -> bool {
        self.inner.is_finite()
    }

    fn render(&self, a: &Self::Elem) -> String {
        match a {
            UElem::Unit => String::from("*"),
            UElem::Inner(x) => self.inner.render(x),
        }
    }
}

impl<S: Graded> Graded for Unitized<S> {
    type Group = S::Group;

    fn group(&self) -> &S::Group {
        self.inner.group()
    }

    fn grade(&self, a: &Self::Elem) -> Option<<S::Group as Group>::Elem> {
        match a {
            UElem::Unit => Some(self.inner.group().identity()),
            UElem::Inner(x) => self.inner.grade(x),
        }
    }
}

/// Checks `S1 ⊆_c S2` along `embed`: zero, injectivity, every product, the
/// grading, and preservation of finite covers `E1 ⊆ E2`. On success the
/// induced map `T_c(E1) → T_c(E2)` is returned; it is verified to be a
/// morphism of partial actions, so it induces the graded embedding of
/// algebras `xδ_g ↦ xδ_g`.
pub fn subsemigroup_inclusion<S1, S2, F>(
    a1: &FiniteAction<S1>,
    a2: &FiniteAction<S2>,
    embed: F,
    bound: usize,
) -> (Report, Option<TcInclusion>)
where
    S1: Graded,
    S2: Graded<Group = S1::Group>,
    F: Fn(&S1::Elem) -> S2::Elem,
{
    use super::SemigroupAction;
    let (s1, s2) = (a1.semigroup(), a2.semigroup());
    let all = s1.enumerate(bound);
    let mut report = Report::new(format!("{} elements", all.len()));

    let zero = (embed(&s1.zero()) != s2.zero()).then(|| String::from("zero is not preserved"));
    report.record("zero", zero);

    let mut injective = None;
    let mut mult = None;
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            if embed(a) == embed(b) && injective.is_none() {
                injective = Some(format!("{} and {}", s1.render(a), s1.render(b)));
            }
        }
        for b in &all {
            if embed(&s1.mul(a, b)) != s2.mul(&embed(a), &embed(b)) && mult.is_none() {
                mult = Some(format!("{} · {}", s1.render(a), s1.render(b)));
            }
        }
    }
    report.record("injective", injective);
    report.record("multiplicative", mult);

    let grading = all
        .iter()
        .find(|a| s2.grade(&embed(a)) != s1.grade(a))
        .map(|a| format!("degree of {}", s1.render(a)));
    report.record("grading", grading);

    let e1 = a1.idempotent_list();
    let map: Option<Vec<usize>> = e1.iter().map(|x| a2.idempotent_index(&embed(x))).collect();
    let incl = map.and_then(|m| {
        Inclusion::new(
            a1.tight().semilattice().clone(),
            a2.tight().semilattice().clone(),
            m,
        )
        .ok()
    });
    let covers = match &incl {
        None => Some(String::from("not a meet embedding of idempotents")),
        Some(i) if !i.preserves_finite_covers() => Some(String::from("a finite cover is not preserved")),
        Some(_) => None,
    };
    report.record("preserves finite covers", covers);

    if !report.passed() {
        return (report, None);
    }
    let incl = incl.expect("checked above");
    let tc = match TcInclusion::new(&incl, a1.tight(), a2.tight()) {
        Ok(tc) => tc,
        Err(e) => {
            report.record("action morphism", Some(format!("{e}")));
            return (report, None);
        }
    };
    let morphism = verify_action_morphism(|u| tc.apply(u), a1, a2, bound);
    let failure = morphism
        .failures()
        .next()
        .map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()));
    let ok = failure.is_none();
    report.record("action morphism", failure);
    (report, ok.then_some(tc))
}

/// How `L_R(S)` sits inside `L_R(S*)`, within the scope of the spanning
/// elements tested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InclusionReport {
    pub scope: String,
    pub unital_before: bool,
    pub unital_after: bool,
    pub equal: bool,
    pub ideal: bool,
    pub essential: bool,
}

impl InclusionReport {
    pub fn proper(&self) -> bool {
        !self.equal
    }

    pub fn verdict(&self) -> &'static str {
        match (self.equal, self.ideal, self.essential) {
            (true, _, _) => "equality",
            (false, true, true) => "proper essential ideal",
            (false, true, false) => "proper ideal",
            (false, false, _) => "proper subalgebra",
        }
    }
}

/// Compares the image of `sub` under the coefficient map `embed` with
/// `sup`. `preimage` inverts `embed` where possible. Spanning elements are
/// `Uδ_g` with `U` among the ideal samples and `g` in the support up to
/// `bound`.
pub fn inclusion_report<A1, A2, R, F, P>(
    sub: &SkewRing<'_, A1, R>,
    sup: &SkewRing<'_, A2, R>,
    embed: F,
    preimage: P,
    bound: usize,
) -> InclusionReport
where
    A1: PartialAction,
    A2: PartialAction<Group = A1::Group>,
    R: Ring,
    F: Fn(&ElemOf<A1>) -> ElemOf<A2>,
    P: Fn(&ElemOf<A2>) -> Option<ElemOf<A1>>,
{
    let (a1, a2) = (sub.action(), sup.action());
    let (b1, b2) = (a1.space(), a2.space());
    let grp = a1.group();
    let e = grp.identity();

    let spanning = |a: &dyn Fn(&GroupElemOf<A1>) -> Vec<ElemOf<A2>>, support: Vec<GroupElemOf<A1>>| {
        let mut out = Vec::new();
        for g in support {
            for u in a(&g) {
                if !b2.is_bottom(&u) {
                    out.push((g.clone(), u));
                }
            }
        }
        out
    };
    let sub_span = spanning(
        &|g| ideal_samples(b1, &a1.ideal(g)).iter().map(&embed).collect(),
        a1.support(bound),
    );
    let sup_span = spanning(&|g| ideal_samples(b2, &a2.ideal(g)), a2.support(bound));

    let in_image = |y: &SkewOf<A2, R>| {
        y.terms().iter().all(|(g, c)| {
            c.terms().iter().all(|(_, w)| {
                preimage(w).is_some_and(|u| a1.ideal(g).contains(b1, &u))
            })
        })
    };
    let delta = |u: &ElemOf<A2>, g: &GroupElemOf<A1>| sup.delta(u, g).expect("spanning element");

    let equal = sup_span.iter().all(|(h, w)| in_image(&delta(w, h)));
    let ideal = sub_span.iter().all(|(g, u)| {
        let x = delta(u, g);
        sup_span.iter().all(|(h, w)| {
            let y = delta(w, h);
            in_image(&sup.mul(&x, &y)) && in_image(&sup.mul(&y, &x))
        })
    });
    let units: Vec<SkewOf<A2, R>> = sub_span
        .iter()
        .filter(|(g, _)| *g == e)
        .map(|(g, u)| delta(u, g))
        .collect();
    let essential = sup_span.iter().all(|(h, w)| {
        let y = delta(w, h);
        units
            .iter()
            .any(|x| !sup.mul(x, &y).is_zero() || !sup.mul(&y, x).is_zero())
    });
    InclusionReport {
        scope: format!(
            "{} spanning elements of the subalgebra, {} of the algebra, word length <= {bound}",
            sub_span.len(),
            sup_span.len()
        ),
        unital_before: sub.find_unit().is_some(),
        unital_after: sup.find_unit().is_some(),
        equal,
        ideal,
        essential,
    }
}

/// A finite semigroup, its unitization, and the induced inclusion of
/// tight spectra.
pub struct FiniteUnitization<S: Graded> {
    pub sub: FiniteAction<S>,
    pub sup: FiniteAction<Unitized<S>>,
    pub inclusion: TcInclusion,
    pub report: Report,
}

pub fn unitize_finite<S>(s: S) -> Result<FiniteUnitization<S>>
where
    S: Graded + Clone,
    S::Group: Clone,
{
    let sub = FiniteAction::new(s.clone())?;
    let sup = FiniteAction::new(Unitized::new(s))?;
    let (report, tc) = subsemigroup_inclusion(&sub, &sup, |x| UElem::Inner(x.clone()), 0);
    let inclusion = tc.ok_or_else(|| {
        crate::error::Error::Consistency(format!("S is not tightly included in S*:\n{report}"))
    })?;
    Ok(FiniteUnitization {
        sub,
        sup,
        inclusion,
        report,
    })
}

impl<S> FiniteUnitization<S>
where
    S: Graded,
{
    pub fn compare<R: Ring + Clone>(&self, ring: R, bound: usize) -> InclusionReport {
        let sub = SkewRing::new(&self.sub, ring.clone());
        let sup = SkewRing::new(&self.sup, ring);
        let source = self.sub.tight().space();
        inclusion_report(
            &sub,
            &sup,
            |u| self.inclusion.apply(u),
            |w| self.inclusion.preimage(source, w),
            bound,
        )
    }
}

/// The semilattice `{0} ∪ {e_0, e_1, …}` with `e_i e_j = 0` for `i ≠ j`,
/// graded trivially. Its tight spectrum is the discrete space `ℕ`, so
/// `T_c(E)` is the finite subsets with `V_{e_i} = {i}`. Adding `∗` adds the
/// point at infinity: `T_c(E*)` is the finite sets together with the
/// cofinite ones, and `V_∗` is everything.
pub fn antichain_actions() -> (
    TrivialAction<FinCofSpace, FiniteGroup>,
    TrivialAction<FinCofSpace, FiniteGroup>,
) {
    (
        TrivialAction::new(FinCofSpace::finite_only(), FiniteGroup::trivial()),
        TrivialAction::new(FinCofSpace::with_cofinite(), FiniteGroup::trivial()),
    )
}

pub fn antichain_unitization<R: Ring + Clone>(ring: R, bound: usize) -> InclusionReport {
    let (a1, a2) = antichain_actions();
    let sub = SkewRing::new(&a1, ring.clone());
    let sup = SkewRing::new(&a2, ring);
    inclusion_report(
        &sub,
        &sup,
        |u: &FinCof| u.clone(),
        |w: &FinCof| (!w.is_cofinite()).then(|| w.clone()),
        bound,
    )
}
