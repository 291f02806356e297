use super::*;
use crate::partial_action::{verify_partial_action, FiniteGroup, Word};
use crate::skew_algebra::{Integers, Rationals};
use crate::tight_filters::Semilattice;
use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// The graph semigroup of `v --e--> w`, written as a table.
fn edge_semigroup() -> FiniteSemigroup<FreeGroup> {
    // 0, (v,v), (w,w), (e,e), (e,w), (w,e)
    let t = vec![
        vec![0, 0, 0, 0, 0, 0],
        vec![0, 1, 0, 3, 4, 0],
        vec![0, 0, 2, 0, 0, 5],
        vec![0, 3, 0, 3, 4, 0],
        vec![0, 0, 4, 0, 0, 3],
        vec![0, 5, 0, 5, 2, 0],
    ];
    let n = names(&["0", "(v,v)", "(w,w)", "(e,e)", "(e,w)", "(w,e)"]);
    let g = FreeGroup::new(["e"]).unwrap();
    let mut s = FiniteSemigroup::new(n, t, g.clone()).unwrap();
    s.set_grade(4, g.letter(0)).unwrap();
    s.set_grade(5, g.inv(&g.letter(0))).unwrap();
    s
}

fn idx(s: &FiniteSemigroup<FreeGroup>, name: &str) -> usize {
    s.index_of(name).unwrap()
}

/// `{0} ∪ {(i, x, j)}` for a semilattice `P` and `n` indices, with
/// `(i,x,j)(j,y,l) = (i, x∧y, l)`, graded by `(i,x,j) ↦ a_i a_j⁻¹`.
fn matrix_semigroup(p: &Semilattice, n: usize) -> FiniteSemigroup<FreeGroup> {
    let nz: Vec<usize> = (0..p.len()).filter(|&x| x != p.zero()).collect();
    let mut elems = vec![None];
    for i in 0..n {
        for &x in &nz {
            for j in 0..n {
                elems.push(Some((i, x, j)));
            }
        }
    }
    let pos = |e: Option<(usize, usize, usize)>| elems.iter().position(|f| *f == e).unwrap();
    let table = elems
        .iter()
        .map(|a| {
            elems
                .iter()
                .map(|b| match (a, b) {
                    (Some((i, x, j)), Some((k, y, l))) if j == k && p.meet(*x, *y) != p.zero() => {
                        pos(Some((*i, p.meet(*x, *y), *l)))
                    }
                    _ => 0,
                })
                .collect()
        })
        .collect();
    let labels = elems
        .iter()
        .map(|e| match e {
            None => "0".to_string(),
            Some((i, x, j)) => format!("({i},{},{j})", p.name(*x)),
        })
        .collect();
    let alphabet: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
    let g = FreeGroup::new(alphabet).unwrap();
    let mut s = FiniteSemigroup::new(labels, table, g.clone()).unwrap();
    for (k, e) in elems.iter().enumerate() {
        if let Some((i, _, j)) = e {
            let d = g.mul(&g.letter(*i), &g.inv(&g.letter(*j)));
            s.set_grade(k, d).unwrap();
        }
    }
    s
}

fn diamond() -> Semilattice {
    Semilattice::from_sets([BTreeSet::from([1]), BTreeSet::from([2]), BTreeSet::from([1, 2])])
}

#[test]
fn edge_semigroup_axioms() {
    let s = edge_semigroup();
    assert!(verify_inverse_semigroup(&s, 0).passed());
    assert!(verify_pure_grading(&s, 0).passed());
    let r = verify_inverse_semigroup(&FiniteSemigroup::from_semilattice(&diamond(), FiniteGroup::trivial()), 0);
    assert!(r.passed(), "{r}");
}

#[test]
fn non_unique_inverse_is_reported() {
    // left-zero band {e, f} with a zero
    let t = vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 2, 2]];
    let s = FiniteSemigroup::new(names(&["0", "e", "f"]), t, FiniteGroup::trivial()).unwrap();
    let r = verify_inverse_semigroup(&s, 0);
    let c = r.check("unique inverses").unwrap();
    assert!(!c.passed);
    assert_eq!(c.witness.as_deref(), Some("e has inverses e and f"));
}

#[test]
fn impure_grading_is_reported() {
    let mut s = edge_semigroup();
    let g = s.group().clone();
    s.set_grade(3, g.letter(0)).unwrap();
    let r = verify_pure_grading(&s, 0);
    assert!(!r.passed());
    assert!(!r.check("identity fibre").unwrap().passed);
}

#[test]
fn natural_order_examples() {
    let s = edge_semigroup();
    let (v, w, ee) = (idx(&s, "(v,v)"), idx(&s, "(w,w)"), idx(&s, "(e,e)"));
    assert!(natural_order(&s, &ee, &v));
    assert!(!natural_order(&s, &w, &v));
    for x in 0..s.len() {
        assert!(natural_order(&s, &x, &x));
    }
}

#[test]
fn eg_and_phi_on_the_edge() {
    let s = edge_semigroup();
    let g = s.group().clone();
    let e = g.letter(0);
    let ei = g.inv(&e);
    let render = |xs: Vec<usize>| xs.iter().map(|x| s.render(x)).collect::<Vec<_>>();
    assert_eq!(render(compute_eg(&s, &e, 0)), ["0", "(e,e)"]);
    assert_eq!(render(compute_eg(&s, &ei, 0)), ["0", "(w,w)"]);
    assert_eq!(render(compute_eg(&s, &Word::empty(), 0)), ["0", "(v,v)", "(w,w)", "(e,e)"]);
    let (w, ee) = (idx(&s, "(w,w)"), idx(&s, "(e,e)"));
    assert_eq!(phi_g(&s, &e, &w, 0).unwrap(), ee);
    assert_eq!(phi_g(&s, &ei, &ee, 0).unwrap(), w);
    assert_eq!(phi_g(&s, &Word::empty(), &ee, 0).unwrap(), ee);
    assert!(phi_g(&s, &e, &ee, 0).is_err());
}

#[test]
fn edge_action_and_algebra() {
    let a = FiniteAction::new(edge_semigroup()).unwrap();
    assert_eq!(a.tight().len(), 2);
    assert!(verify_partial_action(&a, 3).passed());
    let r = verify_semigroup_action(&a, 0);
    assert!(r.passed(), "{r}");
    let rec = semigroup_orthogonality_checks(&a, 3);
    assert!(rec.orthogonal && rec.semi_saturated);
    let skew = SkewRing::new(&a, Integers);
    let r = verify_idempotent_products(&skew, 0);
    assert!(r.passed(), "{r}");
    assert!(skew.find_unit().is_some());
    let s = a.semigroup();
    assert!(xdelta(&skew, &idx(s, "(v,v)"), &s.group().letter(0)).is_err());
}

#[test]
fn semilattice_over_trivial_group() {
    let s = FiniteSemigroup::from_semilattice(&diamond(), FiniteGroup::trivial());
    let a = FiniteAction::new(s).unwrap();
    assert!(verify_partial_action(&a, 0).passed());
    assert!(verify_semigroup_action(&a, 0).passed());
    assert_eq!(a.support(0), vec![0]);
}

#[test]
fn single_idempotent_is_vacuously_orthogonal() {
    let p = Semilattice::chain(1);
    let g = FreeGroup::new(["a"]).unwrap();
    let a = FiniteAction::new(FiniteSemigroup::from_semilattice(&p, g)).unwrap();
    let rec = semigroup_orthogonality_checks(&a, 3);
    assert!(rec.orthogonal && rec.semi_saturated);
}

#[test]
fn cover_expansion_for_a_two_element_cover() {
    // In the diamond, {a, b} covers t, so tδ_1 = aδ_1 + bδ_1 - (a∧b)δ_1
    // with a∧b = 0.
    let p = diamond();
    let s = FiniteSemigroup::from_semilattice(&p, FiniteGroup::trivial());
    let a = FiniteAction::new(s).unwrap();
    let skew = SkewRing::new(&a, Integers);
    let d = |name: &str| xdelta(&skew, &p.index_of(name).unwrap(), &0).unwrap();
    let rhs = skew.add(&d("{1}"), &d("{2}"));
    assert_eq!(d("{1,2}"), rhs);
}

#[test]
fn regrade_edge_to_integers() {
    let a = FiniteAction::new(edge_semigroup()).unwrap();
    let z = FreeGroup::new(["z"]).unwrap();
    let zz = z.clone();
    let f = move |w: &Word| {
        let k: i64 = w.letters().iter().map(|l| if l.inv { -1 } else { 1 }).sum();
        let step = if k >= 0 { zz.letter(0) } else { zz.inv(&zz.letter(0)) };
        (0..k.unsigned_abs()).fold(Word::empty(), |acc, _| zz.mul(&acc, &step))
    };
    let r = RegradedAction::new(&a, z, f, 3).unwrap();
    assert!(verify_partial_action(&r, 3).passed());
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let rep = regrade_report(&r, Integers, &mut rng, 50);
    assert!(rep.passed(), "{rep}");
}

#[test]
fn regrade_identity() {
    let p = Semilattice::chain(2);
    let a = FiniteAction::new(matrix_semigroup(&p, 2)).unwrap();
    let g = a.group().clone();
    let r = RegradedAction::new(&a, g, |w: &Word| w.clone(), 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let rep = regrade_report(&r, Integers, &mut rng, 30);
    assert!(rep.passed(), "{rep}");
}

#[test]
fn impure_regrade_is_rejected() {
    let p = Semilattice::chain(1);
    let a = FiniteAction::new(matrix_semigroup(&p, 2)).unwrap();
    let err = RegradedAction::new(&a, FiniteGroup::trivial(), |_: &Word| 0usize, 3)
        .err()
        .unwrap();
    assert!(format!("{err}").contains("not pure"));
}

#[test]
fn finite_chain_unitization_is_an_equality() {
    let s = FiniteSemigroup::from_semilattice(&Semilattice::chain(1), FiniteGroup::trivial());
    let u = unitize_finite(s).unwrap();
    assert!(u.report.passed());
    let r = u.compare(Integers, 3);
    assert!(r.unital_before && r.unital_after);
    assert_eq!(r.verdict(), "equality");
    let unit = SkewRing::new(&u.sup, Integers).find_unit().unwrap();
    assert_eq!(unit, u.sup.v(&UElem::Unit));
}

#[test]
fn antichain_unitization_is_proper_and_essential() {
    let r = antichain_unitization(Rationals, 3);
    assert!(!r.unital_before);
    assert!(r.unital_after);
    assert!(r.proper());
    assert!(r.ideal && r.essential);
    assert_eq!(r.verdict(), "proper essential ideal");
}

#[test]
fn inclusion_rejects_a_non_multiplicative_map() {
    // {0, a, b} with ab = 0 into the chain 0 < a < b, where ab = a.
    let anti = Semilattice::from_sets([BTreeSet::from([1]), BTreeSet::from([2])]);
    let chain = Semilattice::chain(2);
    let a1 = FiniteAction::new(FiniteSemigroup::from_semilattice(&anti, FiniteGroup::trivial())).unwrap();
    let a2 = FiniteAction::new(FiniteSemigroup::from_semilattice(&chain, FiniteGroup::trivial())).unwrap();
    let (r, tc) = subsemigroup_inclusion(&a1, &a2, |x| *x, 0);
    assert!(!r.check("multiplicative").unwrap().passed);
    assert!(tc.is_none());
}

#[test]
fn downward_closed_inclusion_is_accepted() {
    // {0, a} sits downward closed in the diamond.
    let small = Semilattice::chain(1);
    let p = diamond();
    let a1 = FiniteAction::new(FiniteSemigroup::from_semilattice(&small, FiniteGroup::trivial())).unwrap();
    let a2 = FiniteAction::new(FiniteSemigroup::from_semilattice(&p, FiniteGroup::trivial())).unwrap();
    let a = p.index_of("{1}").unwrap();
    let (r, tc) = subsemigroup_inclusion(&a1, &a2, |x| if *x == 0 { 0 } else { a }, 0);
    assert!(r.passed(), "{r}");
    assert!(tc.is_some());
}

fn arb_semilattice() -> impl Strategy<Value = Semilattice> {
    proptest::collection::vec(proptest::collection::btree_set(1u32..4, 1..3), 1..4)
        .prop_map(Semilattice::from_sets)
        .prop_filter("small", |p| p.len() <= 6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn matrix_semigroups_are_graded_inverse_semigroups(p in arb_semilattice(), n in 1usize..3) {
        let s = matrix_semigroup(&p, n);
        prop_assert!(verify_inverse_semigroup(&s, 0).passed());
        prop_assert!(verify_pure_grading(&s, 0).passed());
    }

    #[test]
    fn phi_does_not_depend_on_the_witness(p in arb_semilattice(), n in 1usize..3) {
        let s = matrix_semigroup(&p, n);
        let degrees: BTreeSet<Word> = (0..s.len()).filter_map(|x| s.grade(&x)).collect();
        for g in &degrees {
            for x in s.idempotents(0) {
                let images: BTreeSet<usize> = admissible(&s, g, &x, 0)
                    .iter()
                    .map(|t| s.mul(&s.mul(t, &x), &s.star(t)))
                    .collect();
                prop_assert!(images.len() <= 1);
            }
        }
    }

    #[test]
    fn matrix_actions_satisfy_the_axioms(p in arb_semilattice(), n in 1usize..3) {
        let a = FiniteAction::new(matrix_semigroup(&p, n)).unwrap();
        prop_assert!(verify_partial_action(&a, 2).passed());
        let r = verify_semigroup_action(&a, 0);
        prop_assert!(r.passed(), "{}", r);
        // a_i a_j⁻¹ gradings are not semi-saturated, so only the action is checked
        let skew = SkewRing::new(&a, Integers);
        prop_assert!(verify_idempotent_products(&skew, 0).passed());
    }

    #[test]
    fn unitization_is_an_equality_on_finite_semilattices(p in arb_semilattice()) {
        let s = FiniteSemigroup::from_semilattice(&p, FiniteGroup::trivial());
        let u = unitize_finite(s).unwrap();
        let r = u.compare(Integers, 0);
        prop_assert_eq!(r.verdict(), "equality");
        prop_assert!(r.unital_before && r.unital_after);
    }
}
