//! `Lc(R, B)`: finitely valued functions `R ∖ {0} → B` with disjoint
//! fibres, i.e. finite sums `Σ r 1_U` with pairwise disjoint supports.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::ring::Ring;
use crate::error::{domain, Result};
use crate::gba::{Gba, Ideal};

/// Canonical form: one `(value, support)` pair per nonzero value, sorted by
/// value, with nonbottom pairwise disjoint supports.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LcFunction<V, E> {
    terms: Vec<(V, E)>,
}

impl<V: Clone + Ord, E: Clone + Ord + core::fmt::Debug> LcFunction<V, E> {
    pub fn zero() -> Self {
        LcFunction { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(V, E)] {
        &self.terms
    }

    /// `f(r)`, the support of value `r`.
    pub fn fibre<B: Gba<Elem = E>>(&self, space: &B, r: &V) -> E {
        self.terms
            .iter()
            .find(|(v, _)| v == r)
            .map(|(_, u)| u.clone())
            .unwrap_or_else(|| space.bottom())
    }

    pub fn dom<B: Gba<Elem = E>>(&self, space: &B) -> E {
        space.join_all(self.terms.iter().map(|(_, u)| u))
    }

    pub fn supports_in<B: Gba<Elem = E>>(&self, space: &B, ideal: &Ideal<E>) -> bool {
        self.terms.iter().all(|(_, u)| ideal.contains(space, u))
    }

    /// Value at a point, given a membership test for supports.
    pub fn eval<R: Ring<Value = V>>(&self, ring: &R, inside: impl Fn(&E) -> bool) -> V {
        self.terms
            .iter()
            .find(|(_, u)| inside(u))
            .map(|(v, _)| v.clone())
            .unwrap_or_else(|| ring.zero())
    }

    pub fn render<B: Gba<Elem = E>, R: Ring<Value = V>>(&self, space: &B, ring: &R) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(v, u)| format!("{}·[{}]", ring.render(v), space.render(u)))
            .collect();
        parts.join(" + ")
    }
}

/// Refines overlapping supports into disjoint regions, sums values on each
/// region, then merges regions of equal value.
pub fn lc_normalize<B, R>(space: &B, ring: &R, raw: &[(R::Value, B::Elem)]) -> LcFunction<R::Value, B::Elem>
where
    B: Gba,
    R: Ring,
{
    let mut regions: Vec<(B::Elem, R::Value)> = Vec::new();
    for (r, s) in raw {
        if ring.is_zero(r) || space.is_bottom(s) {
            continue;
        }
        let mut next = Vec::with_capacity(regions.len() * 2 + 1);
        let mut rest = s.clone();
        for (u, v) in regions {
            let inside = space.meet(&u, s);
            let outside = space.diff(&u, s);
            if !space.is_bottom(&inside) {
                rest = space.diff(&rest, &inside);
                next.push((inside, ring.add(&v, r)));
            }
            if !space.is_bottom(&outside) {
                next.push((outside, v));
            }
        }
        if !space.is_bottom(&rest) {
            next.push((rest, r.clone()));
        }
        regions = next;
    }
    let mut terms: Vec<(R::Value, B::Elem)> = Vec::new();
    for (u, v) in regions {
        if ring.is_zero(&v) {
            continue;
        }
        match terms.iter_mut().find(|(w, _)| *w == v) {
            Some((_, acc)) => *acc = space.join(acc, &u),
            None => terms.push((v, u)),
        }
    }
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    LcFunction { terms }
}

/// As [`lc_normalize`], rejecting supports outside `ideal`.
pub fn lc_in_ideal<B, R>(
    space: &B,
    ring: &R,
    ideal: &Ideal<B::Elem>,
    raw: &[(R::Value, B::Elem)],
) -> Result<LcFunction<R::Value, B::Elem>>
where
    B: Gba,
    R: Ring,
{
    if let Some((_, u)) = raw.iter().find(|(_, u)| !ideal.contains(space, u)) {
        return Err(domain(format!("support {} is outside the ideal", space.render(u))));
    }
    Ok(lc_normalize(space, ring, raw))
}

pub fn indicator<B: Gba, R: Ring>(space: &B, ring: &R, u: &B::Elem) -> LcFunction<R::Value, B::Elem> {
    lc_normalize(space, ring, &[(ring.one(), u.clone())])
}

pub fn lc_add<B: Gba, R: Ring>(
    space: &B,
    ring: &R,
    f: &LcFunction<R::Value, B::Elem>,
    g: &LcFunction<R::Value, B::Elem>,
) -> LcFunction<R::Value, B::Elem> {
    let raw: Vec<_> = f.terms.iter().chain(&g.terms).cloned().collect();
    lc_normalize(space, ring, &raw)
}

pub fn lc_scale<B: Gba, R: Ring>(
    space: &B,
    ring: &R,
    r: &R::Value,
    f: &LcFunction<R::Value, B::Elem>,
) -> LcFunction<R::Value, B::Elem> {
    let raw: Vec<_> = f.terms.iter().map(|(v, u)| (ring.mul(r, v), u.clone())).collect();
    lc_normalize(space, ring, &raw)
}

/// `(fg)(x) = ⋁_{r1 r2 = x} f(r1) ∧ g(r2)`.
pub fn lc_mul<B: Gba, R: Ring>(
    space: &B,
    ring: &R,
    f: &LcFunction<R::Value, B::Elem>,
    g: &LcFunction<R::Value, B::Elem>,
) -> LcFunction<R::Value, B::Elem> {
    let mut raw = Vec::with_capacity(f.terms.len() * g.terms.len());
    for (a, u) in &f.terms {
        for (b, v) in &g.terms {
            raw.push((ring.mul(a, b), space.meet(u, v)));
        }
    }
    lc_normalize(space, ring, &raw)
}

/// `φ ∘ f` for a map that is injective on the supports, such as a partial
/// action isomorphism; `None` if `φ` is undefined on some support.
pub fn lc_transport<B: Gba, R: Ring>(
    space: &B,
    ring: &R,
    f: &LcFunction<R::Value, B::Elem>,
    phi: impl Fn(&B::Elem) -> Option<B::Elem>,
) -> Option<LcFunction<R::Value, B::Elem>> {
    let raw: Option<Vec<_>> = f
        .terms
        .iter()
        .map(|(v, u)| phi(u).map(|w| (v.clone(), w)))
        .collect();
    raw.map(|r| lc_normalize(space, ring, &r))
}
