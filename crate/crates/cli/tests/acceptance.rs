//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails. All arithmetic is exact.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use skewgba::fixture::TableSemigroup;
use skewgba::{labelled_space, load, Object};
use skewgba_core::gba::{CutSet, Gba, PowerSpace};
use skewgba_core::graph_algebra::{cross_validate, DirectedGraph, GraphAction, LeavittImages, Path};
use skewgba_core::inverse_semigroup::{
    antichain_actions, antichain_unitization, regrade_report, semigroup_orthogonality_checks, unitize_finite,
    verify_idempotent_products, FiniteAction, FiniteSemigroup, InverseSemigroup, RegradedAction, SemigroupAction,
};
use skewgba_core::labelled_algebra::{generator_products, verify_ck_relations, LabelledAction, LabelledSpace};
use skewgba_core::partial_action::{
    free_hom, is_orthogonal, is_semi_saturated, rotation, FiniteGroup, FreeGroup, Group, PartialAction,
    TableAction, Word,
};
use skewgba_core::skew_algebra::{graded_dimensions, Integers, IntegersMod, Rationals, Ring, SkewOf, SkewRing};
use skewgba_core::tight_filters::{
    enumerate_filters, is_finite_cover, is_tight_filter, is_ultrafilter, Filter, Inclusion, Semilattice,
};
use skewgba_core::Report;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixtures(prefix: &str) -> Vec<(String, Object)> {
    let mut names: Vec<PathBuf> = std::fs::read_dir(fixtures_dir())
        .expect("fixtures directory")
        .map(|e| e.expect("directory entry").path())
        .filter(|p| p.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.starts_with(prefix)))
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let fx = load(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            (name, fx.object)
        })
        .collect()
}

fn graphs() -> Vec<(String, DirectedGraph)> {
    fixtures("graph_")
        .into_iter()
        .map(|(n, o)| match o {
            Object::Graph(g) => (n, g),
            _ => panic!("{n} is not a graph fixture"),
        })
        .collect()
}

/// The labelled fixtures that pass validation; the WLR counterexample is
/// deliberately invalid and skipped.
fn labelled() -> Vec<(String, LabelledSpace)> {
    fixtures("labelled_")
        .into_iter()
        .filter_map(|(n, o)| match o {
            Object::Labelled(g, family) => labelled_space(&g, &family).unwrap().1.map(|s| (n, s)),
            _ => panic!("{n} is not a labelled fixture"),
        })
        .collect()
}

fn failed(r: &Report) -> Option<String> {
    r.failures()
        .next()
        .map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn report_ok(what: &str, r: &Report) -> Result<(), String> {
    match failed(r) {
        None => Ok(()),
        Some(f) => Err(format!("{what}: {f}")),
    }
}

fn tight_counterexample() -> Verdict {
    let p2 = Semilattice::powerset(2);
    let idx = |n: &str| p2.index_of(n).unwrap();
    let incl = Inclusion::from_subset(&p2, &[idx("{}"), idx("{1}"), idx("{1,2}")]).map_err(|e| e.to_string())?;
    ensure(!incl.preserves_finite_covers(), || "the inclusion preserves finite covers".into())?;
    let xi = Filter::new(vec![idx("{2}"), idx("{1,2}")]);
    let r = incl.restrict_filter(&xi).ok_or("restriction is empty")?;
    let shown = incl.sub().render(r.members());
    ensure(shown == "{{1,2}}", || format!("restriction is {shown}"))?;
    ensure(!is_tight_filter(incl.sub(), &r), || "the restriction is tight".into())?;
    Ok(format!("restriction {shown} is not tight"))
}

fn subsets(items: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0u32..1 << items.len()).map(|m| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| m >> i & 1 == 1)
            .map(|(_, x)| *x)
            .collect()
    })
}

/// Tight by definition: every finite cover of every member meets the filter.
fn tight_by_all_covers(p: &Semilattice, f: &Filter) -> bool {
    f.members().iter().all(|&x| {
        let below = p.down(x);
        let ok = subsets(&below)
            .filter(|c| is_finite_cover(p, x, c))
            .all(|c| c.iter().any(|&y| f.contains(y)));
        ok
    })
}

fn random_semilattice(rng: &mut ChaCha8Rng) -> Semilattice {
    loop {
        let k = rng.random_range(1..=4);
        let sets = (0..k).map(|_| {
            let m: u32 = rng.random_range(1..32);
            (1..=5).filter(|i| m >> (i - 1) & 1 == 1).collect::<BTreeSet<u32>>()
        });
        let p = Semilattice::from_sets(sets);
        if p.len() <= 8 {
            return p;
        }
    }
}

fn tight_agreement() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut filters = 0;
    let n = 250;
    for _ in 0..n {
        let p = random_semilattice(&mut rng);
        for f in enumerate_filters(&p, 8).map_err(|e| e.to_string())? {
            filters += 1;
            let (t, b, u) = (is_tight_filter(&p, &f), tight_by_all_covers(&p, &f), is_ultrafilter(&p, &f));
            ensure(t == b && b == u, || {
                format!("{} in {:?}: tight {t}, all covers {b}, ultra {u}", p.render(f.members()), p.names())
            })?;
        }
    }
    Ok(format!("{n} semilattices, {filters} filters"))
}

fn diamond() -> Semilattice {
    Semilattice::from_sets([[1u32].into(), [2u32].into(), [1u32, 2].into()])
}

fn matrix_units() -> FiniteSemigroup<FreeGroup> {
    match load(&fixtures_dir().join("semigroup_matrix_units.txt")).unwrap().object {
        Object::Semigroup(TableSemigroup::Free(s)) => s,
        _ => panic!("matrix units fixture"),
    }
}

fn rotation_bundle(n: usize, u: &[usize]) -> TableAction<FiniteGroup> {
    let space = PowerSpace::with_atoms(n);
    let u = space.set(u.iter().copied());
    let g = FiniteGroup::cyclic(n);
    let elems = g.elements_up_to(0);
    TableAction::restricted_global(space, g, &elems, |t| rotation(n, *t), &u).unwrap()
}

fn identities<A: PartialAction, R: Ring>(a: &A, ring: R, trials: usize, bound: usize, seed: u64) -> Result<(), String> {
    let skew = SkewRing::new(a, ring);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    report_ok("identities", &skew.verify_skew_identities(&mut rng, trials, bound))
}

fn nonzero_products<A: SemigroupAction>(a: &A, bound: usize) -> Result<usize, String> {
    let skew = SkewRing::new(a, Integers);
    let r = verify_idempotent_products(&skew, bound);
    report_ok("idempotent products", &r)?;
    Ok(a.semigroup().idempotents(bound).len())
}

fn skew_identities() -> Verdict {
    let mut trials = 0;
    let mut run = |r: Result<(), String>, n: usize| {
        trials += n;
        r
    };
    let d = FiniteAction::new(FiniteSemigroup::from_semilattice(&diamond(), FiniteGroup::trivial())).unwrap();
    run(identities(&d, Integers, 250, 0, 1), 250)?;
    let m = FiniteAction::new(matrix_units()).unwrap();
    run(identities(&m, Rationals, 250, 2, 2), 250)?;
    let r = rotation_bundle(5, &[0, 1, 3]);
    run(identities(&r, IntegersMod::new(6).unwrap(), 250, 0, 3), 250)?;
    let edge = GraphAction::new(graphs().into_iter().find(|(n, _)| n == "graph_edge").unwrap().1);
    run(identities(&edge, Integers, 300, 2, 4), 300)?;
    let cases = nonzero_products(&d, 0)? + nonzero_products(&m, 2)? + nonzero_products(&edge, 3)?;
    Ok(format!("{trials} instances, xδ_g nonzero on {cases} idempotents"))
}

fn local_units() -> Verdict {
    let edge = GraphAction::new(graphs().into_iter().find(|(n, _)| n == "graph_edge").unwrap().1);
    let m = FiniteAction::new(matrix_units()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let r = SkewRing::new(&edge, Integers).verify_local_units(&mut rng, 300, 2);
    report_ok("edge graph", &r)?;
    let r = SkewRing::new(&m, Integers).verify_local_units(&mut rng, 300, 2);
    report_ok("matrix units", &r)?;
    Ok("600 random elements".into())
}

/// `p_v ↦ E11`, `p_w ↦ E22`, `s_e ↦ E12`, `s_e* ↦ E21`, read off the
/// coefficients at the boundary points `e` and `w`.
fn to_matrix(a: &GraphAction, skew: &SkewRing<'_, GraphAction, Integers>, x: &SkewOf<GraphAction, Integers>) -> [[i128; 2]; 2] {
    let sp = a.space();
    let (pe, pw) = (sp.cylinder(&a.graph().path(&[0]).unwrap()), sp.cylinder(&Path::vertex(1)));
    let grp = a.group();
    let at = |g: &Word, pt: &CutSet<Path>| skew.graded_component(x, g).eval(skew.ring(), |u| sp.le(pt, u));
    let (one, e) = (Word::empty(), grp.letter(0));
    let ei = grp.inv(&e);
    [[at(&one, &pe), at(&e, &pe)], [at(&ei, &pw), at(&one, &pw)]]
}

fn matmul(x: [[i128; 2]; 2], y: [[i128; 2]; 2]) -> [[i128; 2]; 2] {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = (0..2).map(|k| x[i][k] * y[k][j]).sum();
        }
    }
    out
}

fn dims<A: PartialAction>(a: &A, bound: usize) -> Vec<(String, Option<usize>)> {
    graded_dimensions(a, bound)
        .into_iter()
        .map(|(g, n)| (a.group().render(&g), n))
        .collect()
}

fn edge_matrices() -> Verdict {
    let (_, g) = graphs().into_iter().find(|(n, _)| n == "graph_edge").unwrap();
    let a = GraphAction::new(g);
    let d = dims(&a, 3);
    let want = vec![("1".to_string(), Some(2)), ("e".into(), Some(1)), ("e^-1".into(), Some(1))];
    ensure(d == want, || format!("dimensions {d:?}"))?;
    let skew = SkewRing::new(&a, Integers);
    let im = LeavittImages::new(&skew);
    let basis = [im.vertex(0), im.edge(0), im.ghost(0), im.vertex(1)];
    let units = [[[1, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 0], [1, 0]], [[0, 0], [0, 1]]];
    for (b, m) in basis.iter().zip(units) {
        ensure(to_matrix(&a, &skew, b) == m, || format!("{} is not {m:?}", skew.render(b)))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut pairs: Vec<(SkewOf<GraphAction, Integers>, SkewOf<GraphAction, Integers>)> = Vec::new();
    for x in &basis {
        for y in &basis {
            pairs.push((x.clone(), y.clone()));
        }
    }
    for _ in 0..100 {
        pairs.push((skew.random_element(&mut rng, 1, 3), skew.random_element(&mut rng, 1, 3)));
    }
    for (x, y) in &pairs {
        let lhs = to_matrix(&a, &skew, &skew.mul(x, y));
        let rhs = matmul(to_matrix(&a, &skew, x), to_matrix(&a, &skew, y));
        ensure(lhs == rhs, || format!("{} * {}", skew.render(x), skew.render(y)))?;
    }
    Ok(format!("dimensions 2+1+1, {} products against 2x2 matrices", pairs.len()))
}

fn loop_laurent() -> Verdict {
    let (_, g) = graphs().into_iter().find(|(n, _)| n == "graph_loop").unwrap();
    let a = GraphAction::new(g);
    let skew = SkewRing::new(&a, Integers);
    let im = LeavittImages::new(&skew);
    let p = im.vertex(0);
    ensure(skew.mul(&im.ghost(0), &im.edge(0)) == p, || "s_e* s_e != p_v".into())?;
    ensure(skew.mul(&im.edge(0), &im.ghost(0)) == p, || "s_e s_e* != p_v".into())?;
    ensure(skew.unit() == Some(p), || "p_v is not the unit".into())?;
    let d = dims(&a, 3);
    let degrees: BTreeSet<String> = d.iter().map(|(g, _)| g.clone()).collect();
    let grp = a.group();
    let e = grp.letter(0);
    let mut want = BTreeSet::new();
    for k in -3i32..=3 {
        let base = if k < 0 { grp.inv(&e) } else { e.clone() };
        let w = (0..k.unsigned_abs()).fold(Word::empty(), |acc, _| grp.mul(&acc, &base));
        want.insert(grp.render(&w));
    }
    ensure(degrees == want, || format!("degrees {degrees:?}"))?;
    ensure(d.iter().all(|(_, n)| *n == Some(1)), || format!("dimensions {d:?}"))?;
    Ok("unit p_v, dimension 1 in degrees -3..3".into())
}

fn labelled_ck() -> Verdict {
    let mut singular = Vec::new();
    let spaces = labelled();
    for (name, space) in &spaces {
        let a = LabelledAction::new(space.clone());
        for ring in 0..2 {
            let (r1, r2) = if ring == 0 {
                let skew = SkewRing::new(&a, Integers);
                (verify_ck_relations(&skew), generator_products(&skew, 3))
            } else {
                let skew = SkewRing::new(&a, IntegersMod::new(2).unwrap());
                (verify_ck_relations(&skew), generator_products(&skew, 3))
            };
            report_ok(&format!("{name} relations"), &r1)?;
            report_ok(&format!("{name} products"), &r2)?;
        }
        if space.family().iter().any(|&s| s != 0 && !space.is_regular(s)) {
            singular.push(name.clone());
        }
    }
    ensure(!singular.is_empty(), || "no fixture has a singular set".into())?;
    Ok(format!("{} labelled fixtures, singular sets in {}", spaces.len(), singular.join(", ")))
}

fn unitization() -> Verdict {
    let rep = antichain_unitization(Integers, 2);
    ensure(!rep.unital_before, || "L(S) is unital".into())?;
    ensure(rep.unital_after, || "L(S*) is not unital".into())?;
    let (_, sup) = antichain_actions();
    let skew = SkewRing::new(&sup, Integers);
    let v_star = skew.delta(&sup.space().top().unwrap(), &0).unwrap();
    ensure(skew.unit() == Some(v_star), || "the unit is not V_* δ_1".into())?;
    ensure(rep.proper() && rep.essential, || rep.verdict().to_string())?;
    let chain = Semilattice::chain(3);
    let fu = unitize_finite(FiniteSemigroup::from_semilattice(&chain, FiniteGroup::trivial())).map_err(|e| e.to_string())?;
    let c = fu.compare(Integers, 2);
    ensure(c.equal, || format!("finite chain: {}", c.verdict()))?;
    Ok(format!("antichain: {}; finite chain: {}", rep.verdict(), c.verdict()))
}

fn cross_validation() -> Verdict {
    let gs = graphs();
    for (name, g) in &gs {
        let r = cross_validate(g, 3).map_err(|e| e.to_string())?;
        report_ok(name, &r)?;
    }
    Ok(format!("{} graph fixtures, paths of length <= 3", gs.len()))
}

fn integer_regrade() -> Verdict {
    let z = FreeGroup::new(["z"]).unwrap();
    let gs = graphs();
    for (name, g) in &gs {
        let a = GraphAction::new(g.clone());
        let f = free_hom(z.clone(), vec![z.letter(0); g.edges().len()]);
        let r = RegradedAction::new(&a, z.clone(), f, 3).map_err(|e| format!("{name}: {e}"))?;
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        report_ok(name, &regrade_report(&r, Integers, &mut rng, 200))?;
    }
    Ok(format!("{} graph fixtures, depth 3, 200 sampled products each", gs.len()))
}

fn free_checks<A: SemigroupAction<Group = FreeGroup>>(name: &str, a: &A) -> Result<(), String> {
    let rec = semigroup_orthogonality_checks(a, 3);
    ensure(rec.orthogonal && rec.semi_saturated, || format!("{name}: {rec:?}"))?;
    ensure(is_orthogonal(a), || format!("{name}: ideals not orthogonal"))?;
    ensure(is_semi_saturated(a, 3), || format!("{name}: not semi-saturated"))
}

fn orthogonality() -> Verdict {
    let (gs, ls) = (graphs(), labelled());
    for (name, g) in &gs {
        free_checks(name, &GraphAction::new(g.clone()))?;
    }
    for (name, s) in &ls {
        free_checks(name, &LabelledAction::new(s.clone()))?;
    }
    Ok(format!("{} graph and {} labelled fixtures at depth 3", gs.len(), ls.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("tight-filter counterexample", tight_counterexample),
        ("tight filters = all-covers oracle = ultrafilters", tight_agreement),
        ("skew product identities", skew_identities),
        ("local units", local_units),
        ("edge graph is 2x2 matrices", edge_matrices),
        ("loop graph is Laurent", loop_laurent),
        ("labelled Cuntz-Krieger relations", labelled_ck),
        ("unitization", unitization),
        ("graph vs labelled cross-validation", cross_validation),
        ("integer regrading", integer_regrade),
        ("orthogonality and semi-saturation", orthogonality),
    ];
    let mut ok = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(note) => println!("PASS {:>2} {name} ({note}; {secs:.2}s)", i + 1),
            Err(why) => {
                ok = false;
                println!("FAIL {:>2} {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
