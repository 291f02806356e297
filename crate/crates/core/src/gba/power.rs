use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;
use rand::{Rng, RngCore};

use super::{Gba, Realization, SpaceId};
use crate::error::{domain, Result};

/// Largest atom count for which `elements` enumerates the whole algebra.
const ENUMERATION_LIMIT: usize = 16;

/// The power set of a finite atom list.
#[derive(Debug, Clone)]
pub struct PowerSpace {
    id: SpaceId,
    labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomSet {
    space: SpaceId,
    bits: FixedBitSet,
}

impl AtomSet {
    pub fn space(&self) -> SpaceId {
        self.space
    }

    pub fn contains(&self, atom: usize) -> bool {
        self.bits.contains(atom)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn count(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }
}

impl PowerSpace {
    pub fn new<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        PowerSpace {
            id: SpaceId::fresh(),
            labels: labels.into_iter().map(Into::into).collect(),
        }
    }

    pub fn with_atoms(n: usize) -> Self {
        Self::new((0..n).map(|i| i.to_string()))
    }

    pub fn id(&self) -> SpaceId {
        self.id
    }

    pub fn atom_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Panics if an atom index is out of range.
    pub fn set<I: IntoIterator<Item = usize>>(&self, atoms: I) -> AtomSet {
        let mut bits = FixedBitSet::with_capacity(self.labels.len());
        for a in atoms {
            assert!(a < self.labels.len(), "atom {a} out of range");
            bits.insert(a);
        }
        AtomSet { space: self.id, bits }
    }

    pub fn set_by_labels(&self, labels: &[&str]) -> Result<AtomSet> {
        let mut idx = Vec::with_capacity(labels.len());
        for l in labels {
            match self.labels.iter().position(|x| x == l) {
                Some(i) => idx.push(i),
                None => return Err(domain(format!("unknown atom `{l}`"))),
            }
        }
        Ok(self.set(idx))
    }

    pub fn atom(&self, i: usize) -> AtomSet {
        self.set([i])
    }

    pub fn full(&self) -> AtomSet {
        self.set(0..self.labels.len())
    }

    /// A family generates the whole power algebra exactly when it covers
    /// every atom and separates every pair of atoms.
    pub fn generates(&self, family: &[AtomSet]) -> bool {
        let n = self.labels.len();
        let covered = (0..n).all(|i| family.iter().any(|f| f.contains(i)));
        let separated = (0..n).all(|i| {
            (i + 1..n).all(|j| family.iter().any(|f| f.contains(i) != f.contains(j)))
        });
        covered && separated
    }

    fn binary(&self, a: &AtomSet, b: &AtomSet, op: impl Fn(&mut FixedBitSet, &FixedBitSet)) -> AtomSet {
        debug_assert!(a.space == self.id && b.space == self.id, "mixed spaces");
        let mut bits = a.bits.clone();
        op(&mut bits, &b.bits);
        AtomSet { space: self.id, bits }
    }
}

impl Gba for PowerSpace {
    type Elem = AtomSet;

    fn realization(&self) -> Realization {
        Realization::FinitePower
    }

    fn bottom(&self) -> AtomSet {
        self.set([])
    }

    fn meet(&self, a: &AtomSet, b: &AtomSet) -> AtomSet {
        self.binary(a, b, |x, y| x.intersect_with(y))
    }

    fn join(&self, a: &AtomSet, b: &AtomSet) -> AtomSet {
        self.binary(a, b, |x, y| x.union_with(y))
    }

    fn diff(&self, a: &AtomSet, b: &AtomSet) -> AtomSet {
        self.binary(a, b, |x, y| x.difference_with(y))
    }

    fn owns(&self, a: &AtomSet) -> bool {
        a.space == self.id && a.bits.len() == self.labels.len()
    }

    fn le(&self, a: &AtomSet, b: &AtomSet) -> bool {
        a.bits.is_subset(&b.bits)
    }

    fn is_bottom(&self, a: &AtomSet) -> bool {
        a.bits.is_clear()
    }

    fn top(&self) -> Option<AtomSet> {
        Some(self.full())
    }

    fn elements(&self) -> Option<Vec<AtomSet>> {
        let n = self.labels.len();
        if n > ENUMERATION_LIMIT {
            return None;
        }
        Some(
            (0u32..1 << n)
                .map(|mask| self.set((0..n).filter(|i| mask >> i & 1 == 1)))
                .collect(),
        )
    }

    fn generators(&self) -> Vec<AtomSet> {
        (0..self.labels.len()).map(|i| self.atom(i)).collect()
    }

    fn point_count(&self, a: &AtomSet) -> Option<usize> {
        Some(a.count())
    }

    fn render(&self, a: &AtomSet) -> String {
        let parts: Vec<&str> = a.ones().map(|i| self.labels[i].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }

    fn sample(&self, rng: &mut dyn RngCore) -> AtomSet {
        let density = [0.25, 0.5, 0.75][rng.random_range(0..3)];
        let n = self.labels.len();
        self.set((0..n).filter(|_| rng.random_bool(density)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gba::*;
    use alloc::vec;

    fn ints(lo: i32, hi: i32) -> PowerSpace {
        PowerSpace::new((lo..=hi).map(|i| i.to_string()))
    }

    fn s(space: &PowerSpace, xs: &[&str]) -> AtomSet {
        space.set_by_labels(xs).unwrap()
    }

    #[test]
    fn lattice_ops_on_three_atoms() {
        let p = ints(1, 3);
        let a = s(&p, &["1", "2"]);
        let b = s(&p, &["2", "3"]);
        assert_eq!(lattice_op(&p, LatticeOp::Meet, &a, &b).unwrap(), s(&p, &["2"]));
        assert_eq!(
            lattice_op(&p, LatticeOp::Join, &s(&p, &["1"]), &s(&p, &["2"])).unwrap(),
            a
        );
        assert_eq!(lattice_op(&p, LatticeOp::Diff, &a, &b).unwrap(), s(&p, &["1"]));
        assert_eq!(p.render(&a), "{1,2}");
    }

    #[test]
    fn mixed_spaces_rejected() {
        let p = ints(1, 3);
        let q = ints(1, 3);
        let err = lattice_op(&p, LatticeOp::Meet, &p.full(), &q.full()).unwrap_err();
        assert_eq!(err, crate::Error::MixedSpace);
    }

    #[test]
    fn ideal_examples() {
        let p = ints(1, 2);
        let e = p.bottom();
        let one = s(&p, &["1"]);
        let two = s(&p, &["2"]);
        assert!(is_ideal(&p, &[e.clone(), one.clone()]));
        assert!(!is_ideal(&p, &[e.clone(), one.clone(), two.clone()]));
        assert!(is_ideal(&p, &p.elements().unwrap()));

        let q = ints(1, 3);
        let i = ideal_below(&q, &[s(&q, &["1", "2"])]);
        assert!(i.contains(&q, &s(&q, &["1"])));
        assert!(!i.contains(&q, &s(&q, &["3"])));
        let j = ideal_below(&q, &[s(&q, &["1"]), s(&q, &["2"])]);
        assert!(j.contains(&q, &s(&q, &["1", "2"])));
    }

    #[test]
    fn ideal_below_is_an_ideal() {
        let q = ints(1, 4);
        let i = ideal_below(&q, &[s(&q, &["1", "3"]), s(&q, &["4"])]);
        let members: Vec<AtomSet> = q
            .elements()
            .unwrap()
            .into_iter()
            .filter(|x| i.contains(&q, x))
            .collect();
        assert_eq!(members.len(), 8);
        assert!(is_ideal(&q, &members));
    }

    #[test]
    fn cover_examples() {
        let p = ints(-2, 2);
        let fam = vec![s(&p, &["-2", "2"]), s(&p, &["-1", "1"]), s(&p, &["0"])];
        assert!(is_cover(&p, &fam, &s(&p, &["0", "1", "2"])));
        assert!(!is_cover(&p, &fam[..1], &s(&p, &["0"])));
        assert!(is_cover(&p, &[p.bottom()], &p.bottom()));
    }

    #[test]
    fn generated_subalgebra_examples() {
        let p = ints(-2, 2);
        let fam = vec![s(&p, &["-2", "2"]), s(&p, &["-1", "1"]), s(&p, &["0"])];
        let gen = generated_subalgebra(&p, &fam).unwrap();
        assert!(!gen.contains(&s(&p, &["1"])));
        assert_eq!(gen.len(), 8);
        assert!(!p.generates(&fam));

        let atoms = p.generators();
        assert_eq!(generated_subalgebra(&p, &atoms).unwrap().len(), 32);
        assert!(p.generates(&atoms));
        let empty = generated_subalgebra(&p, &[]).unwrap();
        assert_eq!(empty.into_iter().collect::<Vec<_>>(), vec![p.bottom()]);
    }

    #[test]
    fn morphism_examples() {
        let one = ints(1, 1);
        let two = ints(1, 2);
        let incl = |a: &AtomSet| two.set(a.ones());
        assert!(is_gba_morphism(incl, &one, &two));
        let to_top = |_: &AtomSet| two.full();
        assert!(!is_gba_morphism(to_top, &two, &two));
        let complement = |a: &AtomSet| two.diff(&two.full(), a);
        assert!(!is_gba_morphism(complement, &two, &two));
    }

    #[test]
    fn generates_agrees_with_closure() {
        let p = ints(1, 4);
        let all = p.elements().unwrap();
        // every family of up to three elements
        for i in 0..all.len() {
            for j in i..all.len() {
                for k in j..all.len() {
                    let fam = vec![all[i].clone(), all[j].clone(), all[k].clone()];
                    let closure = generated_subalgebra(&p, &fam).unwrap();
                    assert_eq!(p.generates(&fam), closure.len() == all.len());
                }
            }
        }
    }
}
