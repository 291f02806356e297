use super::*;
use crate::gba::{generated_subalgebra, is_ideal, Gba};
use alloc::vec;
use proptest::prelude::*;

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| String::from(*s)).collect()
}

/// `{0, a, b, t}` with `a, b < t` and `a ∧ b = 0`.
fn diamond() -> Semilattice {
    let m = vec![
        vec![0, 0, 0, 0],
        vec![0, 1, 0, 1],
        vec![0, 0, 2, 2],
        vec![0, 1, 2, 3],
    ];
    Semilattice::new(names(&["0", "a", "b", "t"]), m).unwrap()
}

fn two() -> Semilattice {
    Semilattice::new(names(&["0", "x"]), vec![vec![0, 0], vec![0, 1]]).unwrap()
}

fn set(xs: &[u32]) -> BTreeSet<u32> {
    xs.iter().copied().collect()
}

fn idx(p: &Semilattice, name: &str) -> usize {
    p.index_of(name).unwrap()
}

fn filt(p: &Semilattice, xs: &[&str]) -> Filter {
    Filter::new(xs.iter().map(|x| idx(p, x)).collect())
}

fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (0u32..1 << items.len()).map(|m| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| m >> i & 1 == 1)
            .map(|(_, &x)| x)
            .collect()
    }).collect()
}

fn oracle_filters(p: &Semilattice) -> Vec<Filter> {
    let all: Vec<usize> = (0..p.len()).collect();
    let mut out: Vec<Filter> = subsets(&all)
        .into_iter()
        .filter(|s| p.is_filter(s))
        .map(Filter::new)
        .collect();
    out.sort();
    out
}

/// Tightness straight from the definition: every cover of every member
/// meets the filter.
fn oracle_tight(p: &Semilattice, f: &Filter) -> bool {
    f.members().iter().all(|&x| {
        let below: Vec<usize> = p.down(x).into_iter().filter(|&y| y != p.zero()).collect();
        subsets(&below)
            .into_iter()
            .filter(|c| is_finite_cover(p, x, c))
            .all(|c| c.iter().any(|&ci| f.contains(ci)))
    })
}

fn oracle_preserves(incl: &Inclusion) -> bool {
    let (p1, p2) = (incl.sub(), incl.sup());
    (0..p1.len()).all(|x| {
        subsets(&p1.down(x)).into_iter().all(|c| {
            !is_finite_cover(p1, x, &c) || {
                let image: Vec<usize> = c.iter().map(|&ci| incl.embed(ci)).collect();
                is_finite_cover(p2, incl.embed(x), &image)
            }
        })
    })
}

/// `P2 = 2^{1,2}` and `P1 = {∅, {1}, {1,2}}`.
fn counterexample() -> Inclusion {
    let p2 = Semilattice::powerset(2);
    let sub: Vec<usize> = ["{}", "{1}", "{1,2}"].iter().map(|n| idx(&p2, n)).collect();
    Inclusion::from_subset(&p2, &sub).unwrap()
}

#[test]
fn validation_rejects_bad_tables() {
    let bad = Semilattice::new(names(&["0", "x"]), vec![vec![0, 1], vec![0, 1]]);
    assert!(matches!(bad, Err(Error::Domain(_))));
    let no_zero = Semilattice::new(names(&["x", "y"]), vec![vec![0, 0], vec![0, 1]]).unwrap();
    assert_eq!(no_zero.zero(), 0);
    let shape = Semilattice::new(names(&["0"]), vec![vec![0, 0]]);
    assert!(shape.is_err());
}

#[test]
fn enumerate_examples() {
    let c = Semilattice::chain(2);
    let got: Vec<Vec<usize>> = enumerate_filters(&c, DEFAULT_BOUND)
        .unwrap()
        .iter()
        .map(|f| f.members().to_vec())
        .collect();
    assert_eq!(got, vec![vec![2], vec![1, 2]]);

    let d = diamond();
    let got = enumerate_filters(&d, DEFAULT_BOUND).unwrap();
    assert_eq!(
        got,
        vec![filt(&d, &["t"]), filt(&d, &["a", "t"]), filt(&d, &["b", "t"])]
    );
    assert_eq!(got, oracle_filters(&d));

    assert_eq!(enumerate_filters(&two(), DEFAULT_BOUND).unwrap(), vec![filt(&two(), &["x"])]);
}

#[test]
fn enumerate_respects_bound() {
    let big = Semilattice::chain(25);
    assert_eq!(
        enumerate_filters(&big, DEFAULT_BOUND),
        Err(Error::BoundExceeded { size: 26, bound: 20 })
    );
    assert_eq!(enumerate_filters(&big, 30).unwrap().len(), 25);
}

#[test]
fn ultrafilter_examples() {
    let d = diamond();
    assert!(is_ultrafilter(&d, &filt(&d, &["a", "t"])));
    assert!(!is_ultrafilter(&d, &filt(&d, &["t"])));
    assert!(is_ultrafilter(&two(), &filt(&two(), &["x"])));
}

#[test]
fn finite_cover_examples() {
    let d = diamond();
    let (a, b, t) = (idx(&d, "a"), idx(&d, "b"), idx(&d, "t"));
    assert!(is_finite_cover(&d, t, &[a, b]));
    assert!(!is_finite_cover(&d, t, &[a]));
    assert!(is_finite_cover(&d, a, &[a]));
    // members must lie below x
    assert!(!is_finite_cover(&d, a, &[t]));
}

#[test]
fn tight_filter_examples() {
    let d = diamond();
    assert!(!is_tight_filter(&d, &filt(&d, &["t"])));
    assert!(is_tight_filter(&d, &filt(&d, &["a", "t"])));
    assert!(is_tight_filter(&two(), &filt(&two(), &["x"])));
    for f in enumerate_filters(&d, DEFAULT_BOUND).unwrap() {
        assert_eq!(is_tight_filter(&d, &f), oracle_tight(&d, &f));
    }
}

#[test]
fn tight_space_examples() {
    let d = diamond();
    let t = TightSpace::new(&d).unwrap();
    assert_eq!(t.len(), 2);
    assert_eq!(t.space().atom_count(), 2);

    let c = TightSpace::new(&Semilattice::chain(2)).unwrap();
    assert_eq!(c.filters(), &[Filter::new(vec![1, 2])]);
    assert_eq!(TightSpace::new(&two()).unwrap().len(), 1);

    let basis: Vec<AtomSet> = (0..d.len()).map(|x| t.v(x)).collect();
    let closure = generated_subalgebra(t.space(), &basis).unwrap();
    assert_eq!(closure.len(), 4);
    for x in 0..d.len() {
        for y in 0..d.len() {
            assert_eq!(t.space().meet(&t.v(x), &t.v(y)), t.v(d.meet(x, y)));
        }
    }
}

#[test]
fn basis_set_examples() {
    let d = diamond();
    let t = TightSpace::new(&d).unwrap();
    let (a, b, tt) = (idx(&d, "a"), idx(&d, "b"), idx(&d, "t"));
    assert_eq!(t.v(tt), t.space().full());
    let va = t.v(a);
    assert_eq!(va.count(), 1);
    assert_eq!(t.filters()[va.ones().next().unwrap()], filt(&d, &["a", "t"]));
    assert!(t.basis_set(tt, &[a, b]).is_empty());
    assert_eq!(t.basis_set(tt, &[a]), t.v(b));
}

#[test]
fn restrict_filter_examples() {
    let incl = counterexample();
    let p2 = incl.sup();
    let xi = filt(p2, &["{2}", "{1,2}"]);
    let r = incl.restrict_filter(&xi).unwrap();
    assert_eq!(incl.sub().render(r.members()), "{{1,2}}");
    assert!(!is_tight_filter(incl.sub(), &r));

    let xi = filt(p2, &["{1}", "{1,2}"]);
    let r = incl.restrict_filter(&xi).unwrap();
    assert_eq!(incl.sub().render(r.members()), "{{1},{1,2}}");

    let d = diamond();
    let only_a = Inclusion::from_subset(&d, &[idx(&d, "0"), idx(&d, "a")]).unwrap();
    assert_eq!(only_a.restrict_filter(&filt(&d, &["b", "t"])), None);
}

#[test]
fn inclusion_must_be_meet_closed() {
    let d = diamond();
    let r = Inclusion::from_subset(&d, &[0, idx(&d, "a"), idx(&d, "b")]);
    assert!(r.is_ok());
    let p = Semilattice::from_sets([set(&[1, 2]), set(&[2, 3]), set(&[2])]);
    // {1,2} ∧ {2,3} = {2} is left out
    let sub = [idx(&p, "{}"), idx(&p, "{1,2}"), idx(&p, "{2,3}")];
    assert!(matches!(Inclusion::from_subset(&p, &sub), Err(Error::Domain(_))));
}

#[test]
fn preserves_covers_examples() {
    let ce = counterexample();
    assert!(!ce.preserves_finite_covers());
    assert!(!oracle_preserves(&ce));
    let conds = ce.check_sufficient_conditions();
    assert!(!conds.downward_closed);
    assert!(!conds.lemma_cover_condition);

    let p2 = Semilattice::powerset(2);
    let down = Inclusion::from_subset(&p2, &[idx(&p2, "{}"), idx(&p2, "{1}")]).unwrap();
    assert!(down.preserves_finite_covers());
    let conds = down.check_sufficient_conditions();
    assert_eq!(
        conds,
        SufficientConditions {
            downward_closed: true,
            lemma_cover_condition: true,
            lemma_tight_condition: true
        }
    );

    let all: Vec<usize> = (0..p2.len()).collect();
    let same = Inclusion::from_subset(&p2, &all).unwrap();
    assert!(same.preserves_finite_covers());
    assert_eq!(
        same.check_sufficient_conditions(),
        SufficientConditions {
            downward_closed: true,
            lemma_cover_condition: true,
            lemma_tight_condition: true
        }
    );
}

#[test]
fn tc_inclusion_rejects_non_preserving() {
    let ce = counterexample();
    let t1 = TightSpace::new(ce.sub()).unwrap();
    let t2 = TightSpace::new(ce.sup()).unwrap();
    assert!(matches!(TcInclusion::new(&ce, &t1, &t2), Err(Error::Domain(_))));
}

#[test]
fn tc_inclusion_downward_closed() {
    let p = Semilattice::chain(2);
    let incl = Inclusion::from_subset(&p, &[0, 1]).unwrap();
    let t1 = TightSpace::new(incl.sub()).unwrap();
    let t2 = TightSpace::new(&p).unwrap();
    let map = TcInclusion::new(&incl, &t1, &t2).unwrap();
    assert!(map.is_tight());
    for u in t1.space().elements().unwrap() {
        assert_eq!(map.apply(&u).is_empty(), u.is_empty());
    }
    for x in 0..incl.sub().len() {
        assert_eq!(map.apply(&t1.v(x)), t2.v(incl.embed(x)));
    }
}

#[test]
fn tc_inclusion_not_tight() {
    // {0, t} inside the diamond preserves covers, but the image {∅, V_t} is
    // not closed under meeting with V_a.
    let d = diamond();
    let incl = Inclusion::from_subset(&d, &[0, idx(&d, "t")]).unwrap();
    assert!(incl.preserves_finite_covers());
    let t1 = TightSpace::new(incl.sub()).unwrap();
    let t2 = TightSpace::new(&d).unwrap();
    let map = TcInclusion::new(&incl, &t1, &t2).unwrap();
    assert!(!map.is_tight());
    assert!(!incl.check_sufficient_conditions().lemma_tight_condition);
}

// Random intersection-closed families over {1,..,4}, small enough for the
// brute-force oracles.
fn arb_semilattice() -> impl Strategy<Value = Semilattice> {
    prop::collection::vec(1u32..16, 1..5)
        .prop_map(|masks| {
            Semilattice::from_sets(
                masks
                    .into_iter()
                    .map(|m| (1..=4).filter(|i| m >> (i - 1) & 1 == 1).collect()),
            )
        })
        .prop_filter("at most 8 elements", |p| p.len() <= 8)
}

fn arb_inclusion() -> impl Strategy<Value = Inclusion> {
    (arb_semilattice(), any::<u8>()).prop_map(|(p, mask)| {
        let mut sub: BTreeSet<usize> = (0..p.len()).filter(|i| mask >> i & 1 == 1).collect();
        sub.insert(p.zero());
        loop {
            let cur: Vec<usize> = sub.iter().copied().collect();
            let before = sub.len();
            for &a in &cur {
                for &b in &cur {
                    sub.insert(p.meet(a, b));
                }
            }
            if sub.len() == before {
                break;
            }
        }
        let sub: Vec<usize> = sub.into_iter().collect();
        Inclusion::from_subset(&p, &sub).unwrap()
    })
}

proptest! {
    #[test]
    fn filters_match_subset_oracle(p in arb_semilattice()) {
        prop_assert_eq!(enumerate_filters(&p, DEFAULT_BOUND).unwrap(), oracle_filters(&p));
    }

    #[test]
    fn tight_matches_all_covers_oracle(p in arb_semilattice()) {
        for f in enumerate_filters(&p, DEFAULT_BOUND).unwrap() {
            prop_assert_eq!(is_tight_filter(&p, &f), oracle_tight(&p, &f));
            prop_assert_eq!(is_tight_filter(&p, &f), is_ultrafilter(&p, &f));
        }
        prop_assert!(TightSpace::new(&p).is_ok());
    }

    #[test]
    fn preserves_matches_oracle(incl in arb_inclusion()) {
        prop_assert_eq!(incl.preserves_finite_covers(), oracle_preserves(&incl));
        let c = incl.check_sufficient_conditions();
        if c.downward_closed {
            prop_assert!(c.lemma_cover_condition);
            prop_assert!(c.lemma_tight_condition);
        }
        if c.lemma_cover_condition {
            prop_assert!(incl.preserves_finite_covers());
        }
    }

    #[test]
    fn restriction_is_filter_and_tight(incl in arb_inclusion()) {
        let t2 = TightSpace::new(incl.sup()).unwrap();
        for xi in t2.filters() {
            if let Some(r) = incl.restrict_filter(xi) {
                prop_assert!(incl.sub().is_filter(r.members()));
                if incl.preserves_finite_covers() {
                    prop_assert!(is_tight_filter(incl.sub(), &r));
                }
            }
        }
    }

    #[test]
    fn tc_inclusion_properties(incl in arb_inclusion()) {
        prop_assume!(incl.preserves_finite_covers());
        let t1 = TightSpace::new(incl.sub()).unwrap();
        let t2 = TightSpace::new(incl.sup()).unwrap();
        let map = TcInclusion::new(&incl, &t1, &t2).unwrap();
        let s1 = t1.space();
        let s2 = t2.space();
        let image: Vec<AtomSet> = s1.elements().unwrap().iter().map(|u| map.apply(u)).collect();
        // injective, a morphism, and V_x goes to V_x
        let distinct: BTreeSet<&AtomSet> = image.iter().collect();
        prop_assert_eq!(distinct.len(), image.len());
        prop_assert!(crate::gba::is_gba_morphism(|u| map.apply(u), s1, s2));
        for x in 0..incl.sub().len() {
            prop_assert_eq!(map.apply(&t1.v(x)), t2.v(incl.embed(x)));
        }
        prop_assert_eq!(map.is_tight(), is_ideal(s2, &image));
        if incl.check_sufficient_conditions().lemma_tight_condition {
            prop_assert!(map.is_tight());
        }
        if map.is_tight() {
            // the image is every subset of the domain of re
            let dom = map.domain();
            let below: Vec<AtomSet> = s2.elements().unwrap().into_iter().filter(|w| s2.le(w, &dom)).collect();
            let img: BTreeSet<AtomSet> = image.iter().cloned().collect();
            prop_assert_eq!(img, below.into_iter().collect::<BTreeSet<_>>());
        }
    }

    #[test]
    fn downward_closed_intersection(p in arb_semilattice(), m1 in any::<u8>(), m2 in any::<u8>()) {
        let close = |m: u8| -> Vec<usize> {
            let mut s: BTreeSet<usize> = BTreeSet::new();
            for x in (0..p.len()).filter(|i| m >> i & 1 == 1) {
                s.extend(p.down(x));
            }
            s.insert(p.zero());
            s.into_iter().collect()
        };
        let (a, b) = (close(m1), close(m2));
        let both: Vec<usize> = a.iter().copied().filter(|x| b.contains(x)).collect();
        let t = TightSpace::new(&p).unwrap();
        let image = |sub: &[usize]| -> BTreeSet<AtomSet> {
            let incl = Inclusion::from_subset(&p, sub).unwrap();
            let t1 = TightSpace::new(incl.sub()).unwrap();
            let map = TcInclusion::new(&incl, &t1, &t).unwrap();
            t1.space().elements().unwrap().iter().map(|u| map.apply(u)).collect()
        };
        let ia = image(&a);
        let ib = image(&b);
        let meet: BTreeSet<AtomSet> = ia.intersection(&ib).cloned().collect();
        prop_assert_eq!(meet, image(&both));
    }

    #[test]
    fn nested_preservation(incl in arb_inclusion(), m1 in any::<u8>(), m2 in any::<u8>()) {
        // P'1 ⊆ P'2 ⊆ P2 with P'1 ⊆ P1, all meet closed.
        prop_assume!(incl.preserves_finite_covers());
        let p2 = incl.sup();
        let p1: Vec<usize> = (0..incl.sub().len()).map(|x| incl.embed(x)).collect();
        let close = |seed: Vec<usize>| -> Vec<usize> {
            let mut s: BTreeSet<usize> = seed.into_iter().collect();
            s.insert(p2.zero());
            loop {
                let cur: Vec<usize> = s.iter().copied().collect();
                let n = s.len();
                for &a in &cur { for &b in &cur { s.insert(p2.meet(a, b)); } }
                if s.len() == n { return s.into_iter().collect(); }
            }
        };
        let q1 = close(p1.iter().enumerate().filter(|(i, _)| m1 >> i & 1 == 1).map(|(_, &x)| x).collect());
        let mut q2seed = q1.clone();
        q2seed.extend((0..p2.len()).filter(|i| m2 >> i & 1 == 1));
        let q2 = close(q2seed);
        let q1_in_p2 = Inclusion::from_subset(p2, &q1).unwrap();
        prop_assume!(q1_in_p2.preserves_finite_covers());
        let q2_sl = p2.induced(&q2).unwrap();
        let emb: Vec<usize> = q1.iter().map(|x| q2.iter().position(|y| y == x).unwrap()).collect();
        let q1_in_q2 = Inclusion::new(p2.induced(&q1).unwrap(), q2_sl, emb).unwrap();
        prop_assert!(q1_in_q2.preserves_finite_covers());
    }
}
