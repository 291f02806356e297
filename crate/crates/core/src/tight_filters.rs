//! Finite meet semilattices with zero, their filters, the tight spectrum and
//! its algebra of compact opens, and restriction along subsemilattices.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{domain, Error, Result};
use crate::gba::{AtomSet, PowerSpace};

pub const DEFAULT_BOUND: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semilattice {
    names: Vec<String>,
    meet: Vec<Vec<usize>>,
    zero: usize,
}

impl Semilattice {
    /// Validates the meet table and locates the absorbing element.
    pub fn new(names: Vec<String>, meet: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(domain("empty semilattice"));
        }
        if meet.len() != n || meet.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(domain("meet table has the wrong shape"));
        }
        for x in 0..n {
            if meet[x][x] != x {
                return Err(domain(format!("meet is not idempotent at {}", names[x])));
            }
            for y in 0..n {
                if meet[x][y] != meet[y][x] {
                    return Err(domain(format!(
                        "meet is not commutative at ({}, {})",
                        names[x], names[y]
                    )));
                }
                for z in 0..n {
                    if meet[meet[x][y]][z] != meet[x][meet[y][z]] {
                        return Err(domain(format!(
                            "meet is not associative at ({}, {}, {})",
                            names[x], names[y], names[z]
                        )));
                    }
                }
            }
        }
        let zero = (0..n)
            .find(|&z| (0..n).all(|x| meet[z][x] == z))
            .ok_or_else(|| domain("no zero element"))?;
        Ok(Semilattice { names, meet, zero })
    }

    /// The intersection closure of `sets` together with the empty set, which
    /// plays the role of zero. Elements are ordered by size, then content.
    pub fn from_sets<I>(sets: I) -> Self
    where
        I: IntoIterator<Item = BTreeSet<u32>>,
    {
        let mut all: BTreeSet<BTreeSet<u32>> = sets.into_iter().collect();
        all.insert(BTreeSet::new());
        loop {
            let cur: Vec<BTreeSet<u32>> = all.iter().cloned().collect();
            let before = all.len();
            for a in &cur {
                for b in &cur {
                    all.insert(a.intersection(b).copied().collect());
                }
            }
            if all.len() == before {
                break;
            }
        }
        let mut elems: Vec<BTreeSet<u32>> = all.into_iter().collect();
        elems.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let names = elems
            .iter()
            .map(|s| {
                let parts: Vec<String> = s.iter().map(|x| format!("{x}")).collect();
                format!("{{{}}}", parts.join(","))
            })
            .collect();
        let meet = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| {
                        let m: BTreeSet<u32> = a.intersection(b).copied().collect();
                        elems.iter().position(|e| *e == m).unwrap()
                    })
                    .collect()
            })
            .collect();
        Semilattice {
            names,
            meet,
            zero: 0,
        }
    }

    /// All subsets of `{1, …, n}` under intersection.
    pub fn powerset(n: u32) -> Self {
        Self::from_sets((0u32..1 << n).map(|m| (1..=n).filter(|i| m >> (i - 1) & 1 == 1).collect()))
    }

    /// The chain `0 < 1 < … < n`.
    pub fn chain(n: usize) -> Self {
        let names = (0..=n).map(|i| format!("{i}")).collect();
        let meet = (0..=n).map(|i| (0..=n).map(|j| i.min(j)).collect()).collect();
        Semilattice {
            names,
            meet,
            zero: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x][y]
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.meet[x][y] == x
    }

    /// `x^-`, the elements below `x` (including `x` and zero).
    pub fn down(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.le(y, x)).collect()
    }

    /// `x^+`, the elements above `x`.
    pub fn up(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.le(x, y)).collect()
    }

    /// The subsemilattice on `subset`, which must contain zero and be closed
    /// under meets.
    pub fn induced(&self, subset: &[usize]) -> Result<Semilattice> {
        let mut idx: Vec<usize> = subset.to_vec();
        idx.sort_unstable();
        idx.dedup();
        if !idx.contains(&self.zero) {
            return Err(domain("subset does not contain zero"));
        }
        let mut meet = Vec::with_capacity(idx.len());
        for &a in &idx {
            let mut row = Vec::with_capacity(idx.len());
            for &b in &idx {
                let m = self.meet(a, b);
                match idx.iter().position(|&c| c == m) {
                    Some(p) => row.push(p),
                    None => {
                        return Err(domain(format!(
                            "subset is not meet closed: {} ∧ {} = {}",
                            self.names[a], self.names[b], self.names[m]
                        )))
                    }
                }
            }
            meet.push(row);
        }
        let names = idx.iter().map(|&i| self.names[i].clone()).collect();
        let zero = idx.iter().position(|&c| c == self.zero).unwrap();
        Ok(Semilattice { names, meet, zero })
    }

    pub fn is_filter(&self, set: &[usize]) -> bool {
        let members: BTreeSet<usize> = set.iter().copied().collect();
        !members.is_empty()
            && !members.contains(&self.zero)
            && members
                .iter()
                .all(|&x| self.up(x).iter().all(|y| members.contains(y)))
            && members
                .iter()
                .all(|&x| members.iter().all(|&y| members.contains(&self.meet(x, y))))
    }

    pub fn render(&self, set: &[usize]) -> String {
        let parts: Vec<&str> = set.iter().map(|&i| self.names[i].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// A filter, stored as its sorted element indices. Filters are ordered by
/// size and then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Filter(Vec<usize>);

impl Filter {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Filter(members)
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for Filter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Filter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Every filter of a finite semilattice is the up-set of its least element,
/// so the filters are exactly the `x^+` with `x ≠ 0`.
pub fn enumerate_filters(p: &Semilattice, bound: usize) -> Result<Vec<Filter>> {
    if p.len() > bound {
        return Err(Error::BoundExceeded {
            size: p.len(),
            bound,
        });
    }
    let mut out: Vec<Filter> = (0..p.len())
        .filter(|&x| x != p.zero())
        .map(|x| Filter::new(p.up(x)))
        .collect();
    out.sort();
    Ok(out)
}

pub fn is_ultrafilter(p: &Semilattice, f: &Filter) -> bool {
    (0..p.len())
        .filter(|&x| !f.contains(x))
        .all(|x| f.members().iter().any(|&y| p.meet(x, y) == p.zero()))
}

/// Whether `c ⊆ x^-` meets every nonzero element below `x`.
pub fn is_finite_cover(p: &Semilattice, x: usize, c: &[usize]) -> bool {
    if !c.iter().all(|&ci| p.le(ci, x)) {
        return false;
    }
    p.down(x)
        .into_iter()
        .filter(|&y| y != p.zero())
        .all(|y| c.iter().any(|&ci| p.meet(ci, y) != p.zero()))
}

/// A cover of `x` avoiding `f` exists exactly when the largest candidate,
/// `x^- ∖ (f ∪ {0})`, is one.
pub fn is_tight_filter(p: &Semilattice, f: &Filter) -> bool {
    f.members().iter().all(|&x| {
        let candidate: Vec<usize> = p
            .down(x)
            .into_iter()
            .filter(|&y| y != p.zero() && !f.contains(y))
            .collect();
        !is_finite_cover(p, x, &candidate)
    })
}

/// The tight filters of a finite semilattice together with the power algebra
/// of compact opens they span.
#[derive(Debug, Clone)]
pub struct TightSpace {
    semilattice: Semilattice,
    filters: Vec<Filter>,
    space: PowerSpace,
}

impl TightSpace {
    pub fn new(p: &Semilattice) -> Result<Self> {
        Self::with_bound(p, DEFAULT_BOUND)
    }

    /// Fails with a consistency error if the tight filters and ultrafilters
    /// differ: on a finite semilattice the two must coincide.
    pub fn with_bound(p: &Semilattice, bound: usize) -> Result<Self> {
        let all = enumerate_filters(p, bound)?;
        let tight: Vec<Filter> = all.iter().filter(|f| is_tight_filter(p, f)).cloned().collect();
        let ultra: Vec<Filter> = all.iter().filter(|f| is_ultrafilter(p, f)).cloned().collect();
        if tight != ultra {
            return Err(Error::Consistency(format!(
                "{} tight filters but {} ultrafilters",
                tight.len(),
                ultra.len()
            )));
        }
        let space = PowerSpace::new(tight.iter().map(|f| p.render(f.members())));
        let ts = TightSpace {
            semilattice: p.clone(),
            filters: tight,
            space,
        };
        let basis: Vec<AtomSet> = (0..p.len()).map(|x| ts.v(x)).collect();
        if !ts.space.generates(&basis) {
            return Err(Error::Consistency(
                "the sets V_x do not generate the compact opens".into(),
            ));
        }
        Ok(ts)
    }

    pub fn semilattice(&self) -> &Semilattice {
        &self.semilattice
    }

    pub fn filters(&self) -> &[Filter] {
        &self.filters
    }

    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    /// The algebra `T_c(P)`.
    pub fn space(&self) -> &PowerSpace {
        &self.space
    }

    pub fn index_of(&self, f: &Filter) -> Option<usize> {
        self.filters.iter().position(|g| g == f)
    }

    /// `V_(x : excl…)`, the tight filters containing `x` and none of `excl`.
    pub fn basis_set(&self, x: usize, excl: &[usize]) -> AtomSet {
        self.space.set(
            self.filters
                .iter()
                .enumerate()
                .filter(|(_, f)| f.contains(x) && excl.iter().all(|&e| !f.contains(e)))
                .map(|(i, _)| i),
        )
    }

    pub fn v(&self, x: usize) -> AtomSet {
        self.basis_set(x, &[])
    }
}

/// A zero-preserving meet embedding `P1 ⊆ P2`.
#[derive(Debug, Clone)]
pub struct Inclusion {
    sub: Semilattice,
    sup: Semilattice,
    embed: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SufficientConditions {
    pub downward_closed: bool,
    pub lemma_cover_condition: bool,
    pub lemma_tight_condition: bool,
}

impl Inclusion {
    pub fn new(sub: Semilattice, sup: Semilattice, embed: Vec<usize>) -> Result<Self> {
        if embed.len() != sub.len() || embed.iter().any(|&i| i >= sup.len()) {
            return Err(domain("embedding has the wrong shape"));
        }
        let distinct: BTreeSet<usize> = embed.iter().copied().collect();
        if distinct.len() != embed.len() {
            return Err(domain("embedding is not injective"));
        }
        if embed[sub.zero()] != sup.zero() {
            return Err(domain("embedding does not preserve zero"));
        }
        for a in 0..sub.len() {
            for b in 0..sub.len() {
                if embed[sub.meet(a, b)] != sup.meet(embed[a], embed[b]) {
                    return Err(domain(format!(
                        "not meet closed: {} ∧ {}",
                        sub.name(a),
                        sub.name(b)
                    )));
                }
            }
        }
        Ok(Inclusion { sub, sup, embed })
    }

    /// `P1` given as a subset of the elements of `P2`.
    pub fn from_subset(sup: &Semilattice, subset: &[usize]) -> Result<Self> {
        let sub = sup.induced(subset)?;
        let mut idx: Vec<usize> = subset.to_vec();
        idx.sort_unstable();
        idx.dedup();
        Inclusion::new(sub, sup.clone(), idx)
    }

    pub fn sub(&self) -> &Semilattice {
        &self.sub
    }

    pub fn sup(&self) -> &Semilattice {
        &self.sup
    }

    pub fn embed(&self, x: usize) -> usize {
        self.embed[x]
    }

    fn preimage(&self, y: usize) -> Option<usize> {
        self.embed.iter().position(|&e| e == y)
    }

    /// `ξ ∩ P1`, or `None` when empty.
    pub fn restrict_filter(&self, xi: &Filter) -> Option<Filter> {
        let members: Vec<usize> = xi.members().iter().filter_map(|&y| self.preimage(y)).collect();
        (!members.is_empty()).then(|| Filter::new(members))
    }

    /// A cover of `x` in `P1` fails in `P2` exactly when some nonzero
    /// `y ≤ x` of `P2` is disjoint from all its members, and then the set of
    /// all such candidates is itself a `P1` cover.
    pub fn preserves_finite_covers(&self) -> bool {
        let (p1, p2) = (&self.sub, &self.sup);
        (0..p1.len()).all(|x| {
            let ex = self.embed[x];
            p2.down(ex).into_iter().filter(|&y| y != p2.zero()).all(|y| {
                let candidate: Vec<usize> = p1
                    .down(x)
                    .into_iter()
                    .filter(|&c| p2.meet(self.embed[c], y) == p2.zero())
                    .collect();
                !is_finite_cover(p1, x, &candidate)
            })
        })
    }

    pub fn is_downward_closed(&self) -> bool {
        (0..self.sub.len()).all(|x| {
            self.sup
                .down(self.embed[x])
                .into_iter()
                .all(|y| self.preimage(y).is_some())
        })
    }

    /// The two sufficient conditions for preserving covers and for
    /// tightness, decided exhaustively. Both quantify over nonzero `x ∈ P2`.
    pub fn check_sufficient_conditions(&self) -> SufficientConditions {
        let (p1, p2) = (&self.sub, &self.sup);
        let above = |x: usize| -> Vec<usize> {
            (0..p1.len())
                .filter(|&c| p2.le(x, self.embed[c]))
                .collect()
        };
        let nonzero_sup = || (0..p2.len()).filter(move |&x| x != p2.zero());
        let lemma_cover_condition = nonzero_sup().all(|x| {
            above(x).is_empty()
                || (0..p1.len()).filter(|&y| y != p1.zero()).any(|y| {
                    p1.down(y)
                        .into_iter()
                        .filter(|&y2| y2 != p1.zero())
                        .all(|y2| p2.meet(self.embed[y2], x) != p2.zero())
                })
        });
        let lemma_tight_condition = nonzero_sup().all(|x| {
            let ups = above(x);
            ups.is_empty()
                || ups.iter().any(|&y| {
                    let mut family: Vec<usize> = p1
                        .down(y)
                        .into_iter()
                        .filter(|&c| p2.meet(self.embed[c], x) == p2.zero())
                        .map(|c| self.embed[c])
                        .collect();
                    family.push(x);
                    is_finite_cover(p2, self.embed[y], &family)
                })
        });
        SufficientConditions {
            downward_closed: self.is_downward_closed(),
            lemma_cover_condition,
            lemma_tight_condition,
        }
    }
}

/// The injection `re⁻¹ : T_c(P1) → T_c(P2)` for a cover-preserving inclusion.
#[derive(Debug, Clone)]
pub struct TcInclusion {
    target: PowerSpace,
    /// For each tight filter of `P2`, the tight filter `ξ ∩ P1` if defined.
    restriction: Vec<Option<usize>>,
    is_tight: bool,
}

impl TcInclusion {
    pub fn new(incl: &Inclusion, t1: &TightSpace, t2: &TightSpace) -> Result<Self> {
        if !incl.preserves_finite_covers() {
            return Err(domain("the inclusion does not preserve finite covers"));
        }
        let mut restriction = Vec::with_capacity(t2.len());
        for xi in t2.filters() {
            match incl.restrict_filter(xi) {
                None => restriction.push(None),
                Some(r) => match t1.index_of(&r) {
                    Some(i) => restriction.push(Some(i)),
                    None => {
                        return Err(Error::Consistency(format!(
                            "restriction {} is not tight",
                            incl.sub().render(r.members())
                        )))
                    }
                },
            }
        }
        // The image is an ideal exactly when re is injective on its domain.
        let hit: Vec<usize> = restriction.iter().flatten().copied().collect();
        let distinct: BTreeSet<usize> = hit.iter().copied().collect();
        Ok(TcInclusion {
            target: t2.space().clone(),
            is_tight: distinct.len() == hit.len(),
            restriction,
        })
    }

    pub fn apply(&self, u: &AtomSet) -> AtomSet {
        self.target.set(
            self.restriction
                .iter()
                .enumerate()
                .filter(|(_, r)| r.is_some_and(|i| u.contains(i)))
                .map(|(j, _)| j),
        )
    }

    /// The domain of `re`, i.e. the union of the `V_x` with `x ∈ P1`.
    pub fn domain(&self) -> AtomSet {
        self.target.set(
            self.restriction
                .iter()
                .enumerate()
                .filter(|(_, r)| r.is_some())
                .map(|(j, _)| j),
        )
    }

    /// Some element of `T_c(P1)` mapping to `w`, if any.
    pub fn preimage(&self, source: &PowerSpace, w: &AtomSet) -> Option<AtomSet> {
        let u = source.set(
            self.restriction
                .iter()
                .enumerate()
                .filter(|(j, _)| w.contains(*j))
                .filter_map(|(_, r)| *r),
        );
        (self.apply(&u) == *w).then_some(u)
    }

    pub fn is_tight(&self) -> bool {
        self.is_tight
    }

    pub fn target(&self) -> &PowerSpace {
        &self.target
    }
}

/// The tight filters as a list of element-name sets, for reports.
pub fn describe(t: &TightSpace) -> Vec<String> {
    t.filters()
        .iter()
        .map(|f| t.semilattice().render(f.members()))
        .collect()
}

#[cfg(test)]
mod tests;
