use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, RngCore};

use super::{Gba, Realization};

/// Subsets of ℕ that are finite or (optionally) cofinite.
///
/// With cofinite members disallowed this is the algebra of finite subsets,
/// which has no top. Allowing them adds the complements and a top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCofSpace {
    cofinite: bool,
}

/// `set` lists the members of a finite element, or the missing points of a
/// cofinite one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinCof {
    cofinite: bool,
    set: BTreeSet<u64>,
}

impl FinCof {
    pub fn is_cofinite(&self) -> bool {
        self.cofinite
    }

    pub fn contains(&self, n: u64) -> bool {
        self.set.contains(&n) != self.cofinite
    }

    /// Members (finite case) or exceptions (cofinite case).
    pub fn listed(&self) -> &BTreeSet<u64> {
        &self.set
    }
}

impl FinCofSpace {
    pub fn finite_only() -> Self {
        FinCofSpace { cofinite: false }
    }

    pub fn with_cofinite() -> Self {
        FinCofSpace { cofinite: true }
    }

    pub fn allows_cofinite(&self) -> bool {
        self.cofinite
    }

    pub fn finite<I: IntoIterator<Item = u64>>(&self, items: I) -> FinCof {
        FinCof {
            cofinite: false,
            set: items.into_iter().collect(),
        }
    }

    /// `None` when this space has no cofinite members.
    pub fn cofinite<I: IntoIterator<Item = u64>>(&self, missing: I) -> Option<FinCof> {
        self.cofinite.then(|| FinCof {
            cofinite: true,
            set: missing.into_iter().collect(),
        })
    }
}

fn fin(set: BTreeSet<u64>) -> FinCof {
    FinCof { cofinite: false, set }
}

fn cof(set: BTreeSet<u64>) -> FinCof {
    FinCof { cofinite: true, set }
}

impl Gba for FinCofSpace {
    type Elem = FinCof;

    fn realization(&self) -> Realization {
        Realization::FiniteCofinite
    }

    fn bottom(&self) -> FinCof {
        fin(BTreeSet::new())
    }

    fn meet(&self, a: &FinCof, b: &FinCof) -> FinCof {
        match (a.cofinite, b.cofinite) {
            (false, false) => fin(a.set.intersection(&b.set).copied().collect()),
            (false, true) => fin(a.set.difference(&b.set).copied().collect()),
            (true, false) => fin(b.set.difference(&a.set).copied().collect()),
            (true, true) => cof(a.set.union(&b.set).copied().collect()),
        }
    }

    fn join(&self, a: &FinCof, b: &FinCof) -> FinCof {
        match (a.cofinite, b.cofinite) {
            (false, false) => fin(a.set.union(&b.set).copied().collect()),
            (false, true) => cof(b.set.difference(&a.set).copied().collect()),
            (true, false) => cof(a.set.difference(&b.set).copied().collect()),
            (true, true) => cof(a.set.intersection(&b.set).copied().collect()),
        }
    }

    fn diff(&self, a: &FinCof, b: &FinCof) -> FinCof {
        match (a.cofinite, b.cofinite) {
            (false, false) => fin(a.set.difference(&b.set).copied().collect()),
            (false, true) => fin(a.set.intersection(&b.set).copied().collect()),
            (true, false) => cof(a.set.union(&b.set).copied().collect()),
            (true, true) => fin(b.set.difference(&a.set).copied().collect()),
        }
    }

    fn owns(&self, a: &FinCof) -> bool {
        self.cofinite || !a.cofinite
    }

    fn top(&self) -> Option<FinCof> {
        self.cofinite(None)
    }

    fn generators(&self) -> Vec<FinCof> {
        let mut out: Vec<FinCof> = (0..6).map(|i| self.finite([i])).collect();
        out.extend(self.top());
        out
    }

    fn point_count(&self, a: &FinCof) -> Option<usize> {
        (!a.cofinite).then_some(a.set.len())
    }

    fn render(&self, a: &FinCof) -> String {
        let parts: Vec<String> = a.set.iter().map(|n| format!("{n}")).collect();
        if a.cofinite {
            format!("N-{{{}}}", parts.join(","))
        } else {
            format!("{{{}}}", parts.join(","))
        }
    }

    fn sample(&self, rng: &mut dyn RngCore) -> FinCof {
        let set: BTreeSet<u64> = (0..8).filter(|_| rng.random_bool(0.3)).collect();
        if self.cofinite && rng.random_bool(0.3) {
            cof(set)
        } else {
            fin(set)
        }
    }
}
