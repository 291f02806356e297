//! Inverse semigroups with zero, pure gradings, and the partial action on
//! the tight spectrum that a pure grading induces.
//!
//! For `g` in the grading group, `E_g` is the set of idempotents below some
//! `ss*` with `φ(s) = g`, and `φ_g : E_{g⁻¹} → E_g` sends `x` to `sxs*`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::error::{domain, Result};
use crate::gba::Gba;
use crate::partial_action::{ElemOf, FreeGroup, Group, GroupElemOf, PartialAction};
use crate::report::Report;
use crate::skew_algebra::{Ring, SkewOf, SkewRing};

mod finite;
mod regrade;
mod unitize;

pub use finite::{FiniteAction, FiniteSemigroup};
pub use regrade::{regrade_report, RegradedAction, RegradedSemigroup};
pub use unitize::{
    antichain_actions, antichain_unitization, inclusion_report, subsemigroup_inclusion, unitize_finite, FiniteUnitization,
    InclusionReport, UElem, Unitized,
};

/// Pairs beyond this many elements are checked on a prefix of the
/// enumeration only.
const EXHAUSTIVE_LIMIT: usize = 80;

pub trait InverseSemigroup {
    type Elem: Clone + Eq + Ord + Debug;

    fn zero(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn star(&self, a: &Self::Elem) -> Self::Elem;
    /// Every element of a finite semigroup; otherwise the elements of size
    /// at most `bound`, in a fixed order.
    fn enumerate(&self, bound: usize) -> Vec<Self::Elem>;
    fn is_finite(&self) -> bool;
    fn render(&self, a: &Self::Elem) -> String;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_idempotent(&self, a: &Self::Elem) -> bool {
        self.mul(a, a) == *a
    }

    fn idempotents(&self, bound: usize) -> Vec<Self::Elem> {
        self.enumerate(bound)
            .into_iter()
            .filter(|a| self.is_idempotent(a))
            .collect()
    }
}

/// A grading `φ : S^× → G`.
pub trait Graded: InverseSemigroup {
    type Group: Group;

    fn group(&self) -> &Self::Group;
    /// `φ(s)`; `None` for zero, or where the grading is undefined.
    fn grade(&self, s: &Self::Elem) -> Option<<Self::Group as Group>::Elem>;
}

pub type GradeOf<S> = <<S as Graded>::Group as Group>::Elem;

/// `x ≤ y` in the natural order, decided as `x = (xx*)y`.
pub fn natural_order<S: InverseSemigroup + ?Sized>(s: &S, x: &S::Elem, y: &S::Elem) -> bool {
    *x == s.mul(&s.mul(x, &s.star(x)), y)
}

fn capped<T>(items: &[T]) -> &[T] {
    &items[..items.len().min(EXHAUSTIVE_LIMIT)]
}

/// Associativity, the inverse axioms, commuting idempotents and an absorbing
/// zero on the enumeration at `bound`.
pub fn verify_inverse_semigroup<S: InverseSemigroup + ?Sized>(s: &S, bound: usize) -> Report {
    let all = s.enumerate(bound);
    let scope = if s.is_finite() {
        format!("{} elements", all.len())
    } else {
        format!("{} elements of size <= {bound}", all.len())
    };
    let mut report = Report::new(scope);
    let r = |a: &S::Elem| s.render(a);
    let probe = capped(&all);

    let mut assoc = None;
    'assoc: for a in probe {
        for b in probe {
            let ab = s.mul(a, b);
            for c in probe {
                if s.mul(&ab, c) != s.mul(a, &s.mul(b, c)) {
                    assoc = Some(format!("({}, {}, {})", r(a), r(b), r(c)));
                    break 'assoc;
                }
            }
        }
    }
    report.record("associativity", assoc);

    let mut inverse = None;
    for a in &all {
        let t = s.star(a);
        if s.mul(&s.mul(a, &t), a) != *a || s.mul(&s.mul(&t, a), &t) != t {
            inverse = Some(format!("{}* = {} is not an inverse", r(a), r(&t)));
            break;
        }
        if s.is_finite() {
            let others: Vec<&S::Elem> = all
                .iter()
                .filter(|u| **u != t && s.mul(&s.mul(a, u), a) == *a && s.mul(&s.mul(u, a), u) == **u)
                .collect();
            if let Some(u) = others.first() {
                inverse = Some(format!("{} has inverses {} and {}", r(a), r(&t), r(u)));
                break;
            }
        }
    }
    report.record("unique inverses", inverse);

    let idem: Vec<S::Elem> = all.iter().filter(|a| s.is_idempotent(a)).cloned().collect();
    let mut commute = None;
    'comm: for e in capped(&idem) {
        for f in capped(&idem) {
            if s.mul(e, f) != s.mul(f, e) {
                commute = Some(format!("{} and {}", r(e), r(f)));
                break 'comm;
            }
        }
    }
    report.record("idempotents commute", commute);

    let z = s.zero();
    let absorbing = all
        .iter()
        .find(|a| s.mul(&z, a) != z || s.mul(a, &z) != z)
        .map(|a| format!("0·{0} or {0}·0 is not 0", r(a)));
    report.record("zero", absorbing);
    report
}

/// `φ(ab) = φ(a)φ(b)` when `ab ≠ 0`, and `φ(s) = 1` exactly for nonzero
/// idempotents.
pub fn verify_pure_grading<S: Graded + ?Sized>(s: &S, bound: usize) -> Report {
    let all: Vec<S::Elem> = s.enumerate(bound).into_iter().filter(|a| !s.is_zero(a)).collect();
    let g = s.group();
    let mut report = Report::new(format!("{} nonzero elements", all.len()));
    let r = |a: &S::Elem| s.render(a);

    let undefined = all
        .iter()
        .find(|a| s.grade(a).is_none())
        .map(|a| format!("no degree for {}", r(a)));
    report.record("total", undefined);

    let mut mult = None;
    'm: for a in capped(&all) {
        for b in capped(&all) {
            let ab = s.mul(a, b);
            if s.is_zero(&ab) {
                continue;
            }
            let (Some(x), Some(y), Some(z)) = (s.grade(a), s.grade(b), s.grade(&ab)) else {
                continue;
            };
            if g.mul(&x, &y) != z {
                mult = Some(format!("{} · {}", r(a), r(b)));
                break 'm;
            }
        }
    }
    report.record("multiplicative", mult);

    let fibre = all.iter().find_map(|a| {
        let at_identity = s.grade(a).is_some_and(|d| g.is_identity(&d));
        (at_identity != s.is_idempotent(a)).then(|| match s.grade(a) {
            Some(d) => format!("{} has degree {}", r(a), g.render(&d)),
            None => r(a),
        })
    });
    report.record("identity fibre", fibre);
    report
}

/// `E_g` by brute force over the elements of degree `g` in the enumeration
/// at `bound`. Always contains zero.
pub fn compute_eg<S: Graded + ?Sized>(s: &S, g: &GradeOf<S>, bound: usize) -> Vec<S::Elem> {
    let all = s.enumerate(bound);
    let ranges: Vec<S::Elem> = all
        .iter()
        .filter(|a| s.grade(a).as_ref() == Some(g))
        .map(|a| s.mul(a, &s.star(a)))
        .collect();
    let mut out: BTreeSet<S::Elem> = all
        .iter()
        .filter(|x| s.is_idempotent(x) && ranges.iter().any(|e| natural_order(s, x, e)))
        .cloned()
        .collect();
    out.insert(s.zero());
    out.into_iter().collect()
}

/// The elements `s` of degree `g` with `x ≤ s*s`, in enumeration order.
pub fn admissible<S: Graded + ?Sized>(s: &S, g: &GradeOf<S>, x: &S::Elem, bound: usize) -> Vec<S::Elem> {
    s.enumerate(bound)
        .into_iter()
        .filter(|a| s.grade(a).as_ref() == Some(g) && natural_order(s, x, &s.mul(&s.star(a), a)))
        .collect()
}

/// `φ_g(x) = sxs*` for the first admissible `s`.
pub fn phi_g<S: Graded + ?Sized>(s: &S, g: &GradeOf<S>, x: &S::Elem, bound: usize) -> Result<S::Elem> {
    if s.is_zero(x) {
        return Ok(s.zero());
    }
    if s.group().is_identity(g) && s.is_idempotent(x) {
        return Ok(x.clone());
    }
    let a = admissible(s, g, x, bound)
        .into_iter()
        .next()
        .ok_or_else(|| domain(format!("{} is not in E_{{{}}}⁻¹", s.render(x), s.group().render(g))))?;
    Ok(s.mul(&s.mul(&a, x), &s.star(&a)))
}

pub type SElemOf<A> = <<A as SemigroupAction>::Semigroup as InverseSemigroup>::Elem;

/// A partial action built from a graded inverse semigroup, with the map
/// `x ↦ V_x` from idempotents to the acted-on algebra.
pub trait SemigroupAction: PartialAction {
    type Semigroup: Graded<Group = <Self as PartialAction>::Group>;

    fn semigroup(&self) -> &Self::Semigroup;
    /// `V_x` for an idempotent `x`.
    fn v(&self, x: &SElemOf<Self>) -> ElemOf<Self>;
    fn in_eg(&self, g: &GroupElemOf<Self>, x: &SElemOf<Self>) -> bool;
    /// `φ_g(x)` for `x ∈ E_{g⁻¹}`.
    fn phi(&self, g: &GroupElemOf<Self>, x: &SElemOf<Self>) -> Option<SElemOf<Self>>;

    fn eg(&self, g: &GroupElemOf<Self>, bound: usize) -> Vec<SElemOf<Self>> {
        self.semigroup()
            .idempotents(bound)
            .into_iter()
            .filter(|x| self.in_eg(g, x))
            .collect()
    }

    /// Degrees of the nonzero elements in the enumeration at `bound`.
    fn degrees(&self, bound: usize) -> Vec<GroupElemOf<Self>> {
        let s = self.semigroup();
        let out: BTreeSet<GroupElemOf<Self>> = s.enumerate(bound).iter().filter_map(|a| s.grade(a)).collect();
        out.into_iter().collect()
    }
}

/// `xδ_g = V_x δ_g`.
pub fn xdelta<A, R>(skew: &SkewRing<'_, A, R>, x: &SElemOf<A>, g: &GroupElemOf<A>) -> Result<SkewOf<A, R>>
where
    A: SemigroupAction,
    R: Ring,
{
    let a = skew.action();
    if !a.in_eg(g, x) {
        return Err(domain(format!(
            "{} is not in E_{{{}}}",
            a.semigroup().render(x),
            a.group().render(g)
        )));
    }
    skew.delta(&a.v(x), g)
}

/// Checks that `E_g`, `φ_g` and `V` fit together: `E_e = E`, each `E_g` is
/// downward closed and agrees with the brute-force computation, `φ_g` is a
/// meet isomorphism `E_{g⁻¹} → E_g` inverse to `φ_{g⁻¹}`, and `V` carries
/// it to the action on the algebra.
pub fn verify_semigroup_action<A: SemigroupAction + ?Sized>(a: &A, bound: usize) -> Report {
    let s = a.semigroup();
    let grp = a.group();
    let space = a.space();
    let idem = s.idempotents(bound);
    let degrees = a.degrees(bound);
    let mut report = Report::new(format!(
        "{} idempotents and {} degrees at size <= {bound}",
        idem.len(),
        degrees.len()
    ));
    let r = |x: &SElemOf<A>| s.render(x);
    let rg = |g: &GroupElemOf<A>| grp.render(g);

    let e = grp.identity();
    let unit = idem
        .iter()
        .find(|x| !a.in_eg(&e, x))
        .map(|x| format!("{} is not in E_1", r(x)));
    report.record("E_1 = E", unit);

    let mut brute = None;
    let mut closed = None;
    for g in &degrees {
        let expected: BTreeSet<SElemOf<A>> = compute_eg(s, g, bound).into_iter().collect();
        for x in &idem {
            let member = a.in_eg(g, x);
            if brute.is_none() && member != expected.contains(x) {
                brute = Some(format!("{} in E_{{{}}}", r(x), rg(g)));
            }
            if closed.is_none() && member {
                if let Some(y) = idem.iter().find(|y| natural_order(s, y, x) && !a.in_eg(g, y)) {
                    closed = Some(format!("{} <= {} in E_{{{}}}", r(y), r(x), rg(g)));
                }
            }
        }
    }
    report.record("brute-force E_g", brute);
    report.record("downward closed", closed);

    let mut iso = None;
    let mut compatible = None;
    let mut nonzero = None;
    for g in &degrees {
        let gi = grp.inv(g);
        let domain: Vec<&SElemOf<A>> = idem.iter().filter(|x| a.in_eg(&gi, x)).collect();
        for x in &domain {
            let Some(y) = a.phi(g, x) else {
                iso.get_or_insert_with(|| format!("φ_{{{}}}({}) undefined", rg(g), r(x)));
                continue;
            };
            if !a.in_eg(g, &y) || a.phi(&gi, &y).as_ref() != Some(*x) {
                iso.get_or_insert_with(|| format!("φ_{{{}}} at {}", rg(g), r(x)));
            }
            for z in &domain {
                let lhs = a.phi(g, &s.mul(x, z));
                let rhs = a.phi(g, z).map(|w| s.mul(&y, &w));
                if lhs != rhs {
                    iso.get_or_insert_with(|| format!("φ_{{{}}} on {} ∧ {}", rg(g), r(x), r(z)));
                }
            }
            if a.act(g, &a.v(x)).as_ref() != Some(&a.v(&y)) {
                compatible.get_or_insert_with(|| format!("V at φ_{{{}}}({})", rg(g), r(x)));
            }
            if !a.ideal(&gi).contains(space, &a.v(x)) {
                compatible.get_or_insert_with(|| format!("V_{} not in I_{{{}}}", r(x), rg(&gi)));
            }
            if !s.is_zero(x) && space.is_bottom(&a.v(x)) {
                nonzero.get_or_insert_with(|| format!("V_{} = 0", r(x)));
            }
        }
    }
    report.record("φ_g isomorphisms", iso);
    report.record("V intertwines", compatible);
    report.record("V_x nonzero", nonzero);
    report
}

/// `xδ_g ≠ 0` for nonzero `x ∈ E_g`, and `(xδ_1)(yδ_g) = (xy)δ_g` for
/// idempotents `x` and `y ∈ E_g`.
pub fn verify_idempotent_products<A, R>(skew: &SkewRing<'_, A, R>, bound: usize) -> Report
where
    A: SemigroupAction,
    R: Ring,
{
    let a = skew.action();
    let s = a.semigroup();
    let grp = a.group();
    let idem = s.idempotents(bound);
    let degrees = a.degrees(bound);
    let mut report = Report::new(format!("{} idempotents at size <= {bound}", idem.len()));
    let e = grp.identity();

    let mut nonzero = None;
    let mut product = None;
    for g in &degrees {
        for y in idem.iter().filter(|y| a.in_eg(g, y)) {
            let yd = match xdelta(skew, y, g) {
                Ok(v) => v,
                Err(err) => {
                    nonzero.get_or_insert_with(|| format!("{err}"));
                    continue;
                }
            };
            if !s.is_zero(y) && yd.is_zero() {
                nonzero.get_or_insert_with(|| format!("{}δ_{{{}}} = 0", s.render(y), grp.render(g)));
            }
            for x in capped(&idem) {
                let lhs = xdelta(skew, x, &e).map(|xd| skew.mul(&xd, &yd));
                let rhs = xdelta(skew, &s.mul(x, y), g);
                let ok = matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l == r);
                if !ok {
                    product.get_or_insert_with(|| {
                        format!("x = {}, y = {}, g = {}", s.render(x), s.render(y), grp.render(g))
                    });
                }
            }
        }
    }
    report.record("(11) xδ_g nonzero", nonzero);
    report.record("(5) idempotent product", product);
    report
}

/// Semigroup-level orthogonality and semi-saturation over a free group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrthogonalityRecord {
    /// `E_a ∩ E_b = {0}` for distinct generators.
    pub orthogonal: bool,
    /// `E_{st} ⊆ E_s` whenever `|st| = |s| + |t|`.
    pub semi_saturated: bool,
    pub bound: usize,
}

pub fn semigroup_orthogonality_checks<A>(a: &A, bound: usize) -> OrthogonalityRecord
where
    A: SemigroupAction<Group = FreeGroup> + ?Sized,
{
    let s = a.semigroup();
    let grp = a.group();
    let nonzero: Vec<SElemOf<A>> = s.idempotents(bound).into_iter().filter(|x| !s.is_zero(x)).collect();
    let letters: Vec<_> = (0..grp.rank()).map(|i| grp.letter(i)).collect();
    let orthogonal = letters.iter().enumerate().all(|(i, p)| {
        letters[i + 1..]
            .iter()
            .all(|q| !nonzero.iter().any(|x| a.in_eg(p, x) && a.in_eg(q, x)))
    });
    let words = grp.elements_up_to(bound);
    let semi_saturated = words.iter().all(|u| {
        words.iter().all(|t| {
            let st = grp.mul(u, t);
            u.len() + t.len() > bound
                || st.len() != u.len() + t.len()
                || nonzero.iter().all(|x| !a.in_eg(&st, x) || a.in_eg(u, x))
        })
    });
    OrthogonalityRecord {
        orthogonal,
        semi_saturated,
        bound,
    }
}

#[cfg(test)]
mod tests;
