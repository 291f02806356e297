//! Finite inverse semigroups given by tables, and the partial action of a
//! finite graded semigroup on the compact opens of its tight spectrum.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{admissible, Graded, GradeOf, InverseSemigroup, SemigroupAction};
use crate::error::{domain, Error, Result};
use crate::gba::{AtomSet, Ideal, PowerSpace};
use crate::partial_action::{Group, PartialAction, TableAction};
use crate::tight_filters::{Filter, Semilattice, TightSpace};

/// A semigroup with zero given by its multiplication table, graded by `G`.
#[derive(Debug, Clone)]
pub struct FiniteSemigroup<G: Group> {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    zero: usize,
    star: Vec<usize>,
    group: G,
    grades: Vec<Option<G::Elem>>,
}

impl<G: Group> FiniteSemigroup<G> {
    /// Checks the shape and locates the zero. Nonzero idempotents get degree
    /// `1` and other elements start ungraded; see [`Self::set_grade`].
    ///
    /// Inverses are not validated here: `star` picks the first candidate and
    /// `verify_inverse_semigroup` reports any failure.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>, group: G) -> Result<Self> {
        let n = names.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(domain("semigroup table has the wrong shape"));
        }
        let zero = (0..n)
            .find(|&z| (0..n).all(|x| table[z][x] == z && table[x][z] == z))
            .ok_or_else(|| domain("semigroup table has no zero"))?;
        let star = (0..n)
            .map(|s| {
                (0..n)
                    .find(|&t| table[table[s][t]][s] == s && table[table[t][s]][t] == t)
                    .unwrap_or(s)
            })
            .collect();
        let grades = (0..n)
            .map(|s| (s != zero && table[s][s] == s).then(|| group.identity()))
            .collect();
        Ok(FiniteSemigroup {
            names,
            table,
            zero,
            star,
            group,
            grades,
        })
    }

    /// A semilattice with zero as a semigroup, every nonzero element in
    /// degree `1`.
    pub fn from_semilattice(p: &Semilattice, group: G) -> Self {
        let n = p.len();
        let table = (0..n).map(|x| (0..n).map(|y| p.meet(x, y)).collect()).collect();
        Self::new(p.names().to_vec(), table, group).expect("a semilattice table is a semigroup table")
    }

    pub fn set_grade(&mut self, s: usize, g: G::Elem) -> Result<()> {
        if s >= self.names.len() {
            return Err(domain("element out of range"));
        }
        if s == self.zero {
            return Err(domain("zero has no degree"));
        }
        self.grades[s] = Some(g);
        Ok(())
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

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl<G: Group> InverseSemigroup for FiniteSemigroup<G> {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.zero
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.table[*a][*b]
    }

    fn star(&self, a: &usize) -> usize {
        self.star[*a]
    }

    fn enumerate(&self, _bound: usize) -> Vec<usize> {
        (0..self.names.len()).collect()
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn render(&self, a: &usize) -> String {
        self.names[*a].clone()
    }
}

impl<G: Group> Graded for FiniteSemigroup<G> {
    type Group = G;

    fn group(&self) -> &G {
        &self.group
    }

    fn grade(&self, s: &usize) -> Option<G::Elem> {
        self.grades[*s].clone()
    }
}

/// The partial action of a finite graded semigroup on `T_c(E)`.
///
/// Tight filters of a finite `E` are principal, so each is determined by
/// its least element `m`. The filter of `m ∈ E_{g⁻¹}` goes to the filter of
/// `φ_g(m)`.
#[derive(Debug, Clone)]
pub struct FiniteAction<S: Graded> {
    semigroup: S,
    idempotents: Vec<S::Elem>,
    tight: TightSpace,
    action: TableAction<S::Group>,
    eg: BTreeMap<GradeOf<S>, BTreeSet<S::Elem>>,
}

impl<S> FiniteAction<S>
where
    S: Graded,
    S::Group: Clone,
{
    pub fn new(semigroup: S) -> Result<Self> {
        if !semigroup.is_finite() {
            return Err(Error::Unsupported("partial action of an infinite semigroup table".into()));
        }
        let idempotents = semigroup.idempotents(0);
        let names: Vec<String> = idempotents.iter().map(|x| semigroup.render(x)).collect();
        let pos = |x: &S::Elem| idempotents.iter().position(|y| y == x);
        let meet = idempotents
            .iter()
            .map(|x| {
                idempotents
                    .iter()
                    .map(|y| {
                        pos(&semigroup.mul(x, y))
                            .ok_or_else(|| domain("a product of idempotents is not idempotent"))
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let semilattice = Semilattice::new(names, meet)?;
        let tight = TightSpace::new(&semilattice)?;

        let grp = semigroup.group();
        let mut degrees: BTreeSet<GradeOf<S>> = BTreeSet::new();
        for s in semigroup.enumerate(0) {
            if let Some(g) = semigroup.grade(&s) {
                degrees.insert(g);
            }
        }
        let mut eg = BTreeMap::new();
        for g in &degrees {
            eg.insert(g.clone(), super::compute_eg(&semigroup, g, 0).into_iter().collect());
        }

        let mut action = TableAction::new(tight.space().clone(), grp.clone());
        let mut done: BTreeSet<GradeOf<S>> = BTreeSet::new();
        for g in &degrees {
            if grp.is_identity(g) || done.contains(g) {
                continue;
            }
            let gi = grp.inv(g);
            let mut pairs = Vec::new();
            for (i, f) in tight.filters().iter().enumerate() {
                let m = least(&semilattice, f);
                let x = &idempotents[m];
                let Some(s) = admissible(&semigroup, g, x, 0).into_iter().next() else {
                    continue;
                };
                let y = semigroup.mul(&semigroup.mul(&s, x), &semigroup.star(&s));
                let j = pos(&y)
                    .map(|k| Filter::new(semilattice.up(k)))
                    .and_then(|h| tight.index_of(&h))
                    .ok_or_else(|| {
                        Error::Consistency(format!(
                            "φ_{{{}}} sends the filter of {} to a non-tight set",
                            grp.render(g),
                            semigroup.render(x)
                        ))
                    })?;
                pairs.push((i, j));
            }
            action.insert(g.clone(), &pairs)?;
            done.insert(g.clone());
            done.insert(gi);
        }
        Ok(FiniteAction {
            semigroup,
            idempotents,
            tight,
            action,
            eg,
        })
    }
}

impl<S: Graded> FiniteAction<S> {
    pub fn tight(&self) -> &TightSpace {
        &self.tight
    }

    pub fn idempotent_list(&self) -> &[S::Elem] {
        &self.idempotents
    }

    /// Position of an idempotent in the semilattice `E`.
    pub fn idempotent_index(&self, x: &S::Elem) -> Option<usize> {
        self.idempotents.iter().position(|y| y == x)
    }
}

fn least(p: &Semilattice, f: &Filter) -> usize {
    let mut members = f.members().iter().copied();
    let first = members.next().expect("filters are nonempty");
    members.fold(first, |m, x| p.meet(m, x))
}

impl<S: Graded> PartialAction for FiniteAction<S> {
    type Space = PowerSpace;
    type Group = S::Group;

    fn space(&self) -> &PowerSpace {
        self.action.space()
    }

    fn group(&self) -> &S::Group {
        self.action.group()
    }

    fn ideal(&self, t: &GradeOf<S>) -> Ideal<AtomSet> {
        self.action.ideal(t)
    }

    fn act(&self, t: &GradeOf<S>, x: &AtomSet) -> Option<AtomSet> {
        self.action.act(t, x)
    }

    fn support(&self, bound: usize) -> Vec<GradeOf<S>> {
        self.action.support(bound)
    }
}

impl<S: Graded> SemigroupAction for FiniteAction<S> {
    type Semigroup = S;

    fn semigroup(&self) -> &S {
        &self.semigroup
    }

    fn v(&self, x: &S::Elem) -> AtomSet {
        match self.idempotent_index(x) {
            Some(i) => self.tight.v(i),
            None => self.tight.space().set([]),
        }
    }

    fn in_eg(&self, g: &GradeOf<S>, x: &S::Elem) -> bool {
        self.semigroup.is_zero(x)
            || (self.semigroup.group().is_identity(g) && self.semigroup.is_idempotent(x))
            || self.eg.get(g).is_some_and(|e| e.contains(x))
    }

    fn phi(&self, g: &GradeOf<S>, x: &S::Elem) -> Option<S::Elem> {
        let gi = self.semigroup.group().inv(g);
        if !self.in_eg(&gi, x) {
            return None;
        }
        super::phi_g(&self.semigroup, g, x, 0).ok()
    }
}
