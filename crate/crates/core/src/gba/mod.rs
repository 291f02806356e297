//! Generalized Boolean algebras: the capability contract shared by every
//! realization, ideals, covers, generated subalgebras and morphism checks.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Debug;
use core::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, RngCore};

use crate::error::{Error, Result};

pub mod cylinder;
pub mod fincof;
pub mod power;

pub use cylinder::{CutSet, CylinderSpace, Tree};
pub use fincof::{FinCof, FinCofSpace};
pub use power::{AtomSet, PowerSpace};

/// Identity tag for spaces whose elements carry it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpaceId(u64);

impl SpaceId {
    pub fn fresh() -> Self {
        static NEXT: AtomicU64 = AtomicU64::new(1);
        SpaceId(NEXT.fetch_add(1, Ordering::Relaxed))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Realization {
    FinitePower,
    FiniteCofinite,
    SymbolicBoundary,
    SymbolicLabelled,
}

/// A distributive, relatively complemented lattice with bottom.
///
/// Elements are kept in a canonical form by every realization, so `==` on
/// `Elem` is equality in the algebra.
pub trait Gba {
    type Elem: Clone + Eq + Ord + Debug;

    fn realization(&self) -> Realization;
    fn bottom(&self) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn diff(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Whether `a` is a well-formed element of this space.
    fn owns(&self, a: &Self::Elem) -> bool;
    fn top(&self) -> Option<Self::Elem>;
    /// Every element, for small finite realizations.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }
    /// A finite family used to probe non-finite spaces.
    fn generators(&self) -> Vec<Self::Elem>;
    /// Number of points of the Stone dual lying in `a`, if finite.
    fn point_count(&self, a: &Self::Elem) -> Option<usize>;
    fn render(&self, a: &Self::Elem) -> String;

    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem {
        let gens = self.generators();
        let mut x = self.bottom();
        if gens.is_empty() {
            return x;
        }
        for _ in 0..rng.random_range(1..=4) {
            let g = &gens[rng.random_range(0..gens.len())];
            x = match rng.random_range(0..4) {
                0 => self.meet(&x, g),
                1 => self.diff(&x, g),
                _ => self.join(&x, g),
            };
        }
        x
    }

    fn is_bottom(&self, a: &Self::Elem) -> bool {
        *a == self.bottom()
    }

    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.meet(a, b) == *a
    }

    fn disjoint(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_bottom(&self.meet(a, b))
    }

    fn join_all<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.bottom(), |acc, x| self.join(&acc, x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeOp {
    Meet,
    Join,
    Diff,
}

pub fn lattice_op<B: Gba>(space: &B, op: LatticeOp, a: &B::Elem, b: &B::Elem) -> Result<B::Elem> {
    if !space.owns(a) || !space.owns(b) {
        return Err(Error::MixedSpace);
    }
    Ok(match op {
        LatticeOp::Meet => space.meet(a, b),
        LatticeOp::Join => space.join(a, b),
        LatticeOp::Diff => space.diff(a, b),
    })
}

/// An ideal of a GBA. All ideals that arise here are either the whole
/// algebra or principal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ideal<E> {
    Whole,
    Below(E),
}

impl<E: Clone + Eq + Ord + Debug> Ideal<E> {
    pub fn contains<B: Gba<Elem = E>>(&self, space: &B, x: &E) -> bool {
        match self {
            Ideal::Whole => true,
            Ideal::Below(t) => space.le(x, t),
        }
    }

    pub fn is_trivial<B: Gba<Elem = E>>(&self, space: &B) -> bool {
        match self {
            Ideal::Whole => false,
            Ideal::Below(t) => space.is_bottom(t),
        }
    }

    pub fn intersect<B: Gba<Elem = E>>(&self, other: &Self, space: &B) -> Self {
        match (self, other) {
            (Ideal::Whole, x) | (x, Ideal::Whole) => x.clone(),
            (Ideal::Below(a), Ideal::Below(b)) => Ideal::Below(space.meet(a, b)),
        }
    }

    pub fn is_subset<B: Gba<Elem = E>>(&self, other: &Self, space: &B) -> bool {
        match (self, other) {
            (_, Ideal::Whole) => true,
            (Ideal::Below(a), Ideal::Below(b)) => space.le(a, b),
            (Ideal::Whole, Ideal::Below(b)) => space.top().is_some_and(|t| space.le(&t, b)),
        }
    }

    /// The largest element, if there is one.
    pub fn bound<B: Gba<Elem = E>>(&self, space: &B) -> Option<E> {
        match self {
            Ideal::Whole => space.top(),
            Ideal::Below(t) => Some(t.clone()),
        }
    }

    /// Same ideal, written so that equal ideals compare equal.
    pub fn canonical<B: Gba<Elem = E>>(&self, space: &B) -> Self {
        match (self, space.top()) {
            (Ideal::Whole, Some(t)) => Ideal::Below(t),
            _ => self.clone(),
        }
    }
}

/// `{A : A ≤ b1 ∨ … ∨ bk}`.
pub fn ideal_below<B: Gba>(space: &B, bounds: &[B::Elem]) -> Ideal<B::Elem> {
    Ideal::Below(space.join_all(bounds))
}

/// Closed under internal joins and under meets with every element of the
/// space (every generator, for non-finite spaces).
pub fn is_ideal<B: Gba>(space: &B, subset: &[B::Elem]) -> bool {
    let members: BTreeSet<&B::Elem> = subset.iter().collect();
    for a in subset {
        for b in subset {
            if !members.contains(&space.join(a, b)) {
                return false;
            }
        }
    }
    let probes = space.elements().unwrap_or_else(|| space.generators());
    subset
        .iter()
        .all(|a| probes.iter().all(|p| members.contains(&space.meet(a, p))))
}

/// Joins are monotone, so it is enough to compare with the join of the whole
/// family.
pub fn is_cover<B: Gba>(space: &B, family: &[B::Elem], probe: &B::Elem) -> bool {
    space.le(probe, &space.join_all(family))
}

/// Least subset containing `family` and bottom, closed under meet, join and
/// relative complement.
pub fn generated_subalgebra<B: Gba>(space: &B, family: &[B::Elem]) -> Result<BTreeSet<B::Elem>> {
    if space.realization() != Realization::FinitePower {
        return Err(Error::Unsupported(
            "generated subalgebra needs a finite realization".into(),
        ));
    }
    let mut out: BTreeSet<B::Elem> = family.iter().cloned().collect();
    out.insert(space.bottom());
    loop {
        let cur: Vec<B::Elem> = out.iter().cloned().collect();
        let before = out.len();
        for a in &cur {
            for b in &cur {
                out.insert(space.meet(a, b));
                out.insert(space.join(a, b));
                out.insert(space.diff(a, b));
            }
        }
        if out.len() == before {
            return Ok(out);
        }
    }
}

/// Exhaustive on finite sources, generator-probed otherwise.
pub fn is_gba_morphism<S, T, F>(f: F, source: &S, target: &T) -> bool
where
    S: Gba,
    T: Gba,
    F: Fn(&S::Elem) -> T::Elem,
{
    if !target.is_bottom(&f(&source.bottom())) {
        return false;
    }
    let elems = source.elements().unwrap_or_else(|| {
        let mut g = source.generators();
        g.push(source.bottom());
        g
    });
    let images: Vec<T::Elem> = elems.iter().map(&f).collect();
    for (a, fa) in elems.iter().zip(&images) {
        for (b, fb) in elems.iter().zip(&images) {
            if f(&source.meet(a, b)) != target.meet(fa, fb)
                || f(&source.join(a, b)) != target.join(fa, fb)
                || f(&source.diff(a, b)) != target.diff(fa, fb)
            {
                return false;
            }
        }
    }
    true
}
