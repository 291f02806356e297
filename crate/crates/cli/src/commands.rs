use std::fmt::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use skewgba_core::gba::Gba;
use skewgba_core::graph_algebra::{cross_validate, verify_leavitt_relations, GraphAction, GraphSemigroup};
use skewgba_core::inverse_semigroup::{
    antichain_actions, antichain_unitization, semigroup_orthogonality_checks, unitize_finite,
    verify_idempotent_products, verify_inverse_semigroup, verify_pure_grading, verify_semigroup_action,
    FiniteAction, FiniteSemigroup, Graded, InclusionReport, SemigroupAction,
};
use skewgba_core::labelled_algebra::{
    generator_products, validate_labelled_space, verify_ck_relations, LabelledAction, LabelledGraph,
    LabelledSemigroup, LabelledSpace, VSet,
};
use skewgba_core::partial_action::{
    is_orthogonal, semi_saturation_witness, verify_partial_action, FiniteGroup, FreeGroup, Group, PartialAction,
};
use skewgba_core::skew_algebra::{graded_dimensions, Integers, Rationals, Ring, SkewRing};
use skewgba_core::tight_filters::{enumerate_filters, is_tight_filter, is_ultrafilter, Semilattice, TightSpace};
use skewgba_core::{Error, Report};

use crate::fixture::{Family, Fixture, Object, Options, RingSpec, TableSemigroup};
use crate::CliError;

/// Larger labelled graphs are rejected by `family powerset`.
const POWERSET_VERTICES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Validate,
    Tight,
    Algebra,
    Ck,
    Unitize,
    ActionCheck,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

/// Collects report sections; the outcome passes when every section does.
struct Out {
    text: String,
    passed: bool,
}

impl Out {
    fn new(header: String) -> Self {
        Out {
            text: header + "\n",
            passed: true,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn section(&mut self, title: &str, r: &Report) {
        self.passed &= r.passed();
        let _ = write!(self.text, "\n[{title}]\n{r}");
    }

    fn done(self) -> Outcome {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        Outcome {
            text: format!("{}\n{verdict}\n", self.text),
            passed: self.passed,
        }
    }
}

macro_rules! with_ring {
    ($spec:expr, |$r:ident| $body:expr) => {
        match $spec {
            RingSpec::Integers => {
                let $r = Integers;
                $body
            }
            RingSpec::Mod(m) => {
                let $r = m.clone();
                $body
            }
            RingSpec::Rationals => {
                let $r = Rationals;
                $body
            }
        }
    };
}

pub fn run(cmd: Command, fx: &Fixture) -> Result<Outcome, CliError> {
    let o = &fx.options;
    let mut out = Out::new(format!("{} fixture, {}", fx.object.kind(), describe(&fx.object)));
    match cmd {
        Command::Validate => validate(&fx.object, o, &mut out)?,
        Command::Tight => tight(&fx.object, &mut out)?,
        Command::Algebra => algebra(&fx.object, o, &mut out)?,
        Command::Ck => ck(&fx.object, o, &mut out)?,
        Command::Unitize => unitize(&fx.object, o, &mut out)?,
        Command::ActionCheck => action_check(&fx.object, o, &mut out)?,
    }
    Ok(out.done())
}

fn describe(obj: &Object) -> String {
    match obj {
        Object::Semilattice(p) => format!("{} elements", p.len()),
        Object::Semigroup(TableSemigroup::Finite(s)) => format!("{} elements", s.len()),
        Object::Semigroup(TableSemigroup::Free(s)) => format!("{} elements", s.len()),
        Object::Graph(g) => format!("{} vertices, {} edges", g.vertices().len(), g.edges().len()),
        Object::Labelled(g, _) => format!("{} vertices, {} edges", g.vertices().len(), g.edges().len()),
        Object::Antichain => "infinitely many elements".into(),
    }
}

fn unsupported(cmd: &str, obj: &Object) -> CliError {
    CliError::Usage(format!("`{cmd}` does not apply to a {} fixture", obj.kind()))
}

/// The family of a labelled fixture, with its validation report. The space
/// is only built when validation passes.
pub fn labelled_space(g: &LabelledGraph, family: &Family) -> Result<(Report, Option<LabelledSpace>), CliError> {
    let sets: Vec<VSet> = match family {
        Family::Powerset => {
            let n = g.vertices().len();
            if n > POWERSET_VERTICES {
                return Err(Error::BoundExceeded {
                    size: n,
                    bound: POWERSET_VERTICES,
                }
                .into());
            }
            (0..1u64 << n).collect()
        }
        Family::Exact(sets) => sets.clone(),
        Family::Closure(sets) => skewgba_core::labelled_algebra::close_family(g, sets),
    };
    let report = validate_labelled_space(g, &sets);
    let space = if report.passed() {
        Some(LabelledSpace::new(g.clone(), sets)?)
    } else {
        None
    };
    Ok((report, space))
}

/// Builds the labelled space or records the failed validation.
fn labelled_or_fail(g: &LabelledGraph, family: &Family, out: &mut Out) -> Result<Option<LabelledSpace>, CliError> {
    let (report, space) = labelled_space(g, family)?;
    if space.is_none() {
        out.section("labelled space", &report);
    }
    Ok(space)
}

fn semilattice_semigroup(p: &Semilattice) -> FiniteSemigroup<FiniteGroup> {
    FiniteSemigroup::from_semilattice(p, FiniteGroup::trivial())
}

fn structure<S: Graded>(s: &S, depth: usize, out: &mut Out) {
    out.section("inverse semigroup", &verify_inverse_semigroup(s, depth));
    out.section("grading", &verify_pure_grading(s, depth));
}

fn validate(obj: &Object, o: &Options, out: &mut Out) -> Result<(), CliError> {
    let d = o.depth;
    match obj {
        Object::Semilattice(p) => structure(&semilattice_semigroup(p), d, out),
        Object::Semigroup(TableSemigroup::Finite(s)) => structure(s, d, out),
        Object::Semigroup(TableSemigroup::Free(s)) => structure(s, d, out),
        Object::Graph(g) => structure(&GraphSemigroup::new(g.clone()), d, out),
        Object::Labelled(g, family) => {
            let (report, space) = labelled_space(g, family)?;
            out.section("labelled space", &report);
            if let Some(space) = space {
                structure(&LabelledSemigroup::new(space), d, out);
            }
        }
        Object::Antichain => {
            let (a, _) = antichain_actions();
            out.section("partial action", &verify_partial_action(&a, d));
        }
    }
    Ok(())
}

fn tight(obj: &Object, out: &mut Out) -> Result<(), CliError> {
    let Object::Semilattice(p) = obj else {
        return Err(unsupported("tight", obj));
    };
    let filters = enumerate_filters(p, usize::MAX)?;
    let (mut ultra, mut tight) = (0, 0);
    let mut agree = None;
    for f in &filters {
        let (u, t) = (is_ultrafilter(p, f), is_tight_filter(p, f));
        ultra += usize::from(u);
        tight += usize::from(t);
        let marks = match (u, t) {
            (true, true) => " ultra tight",
            (true, false) => " ultra",
            (false, true) => " tight",
            (false, false) => "",
        };
        out.line(format!("filter {}{marks}", p.render(f.members())));
        if u != t && agree.is_none() {
            agree = Some(p.render(f.members()));
        }
    }
    out.line(format!("filters {}, ultra {ultra}, tight {tight}", filters.len()));
    let ts = TightSpace::with_bound(p, usize::MAX)?;
    for x in 0..p.len() {
        out.line(format!("V({}) = {}", p.name(x), ts.space().render(&ts.v(x))));
    }
    let mut r = Report::new("");
    r.record("tight filters are the ultrafilters", agree);
    out.section("tight spectrum", &r);
    Ok(())
}

fn algebra_of<A: PartialAction, R: Ring>(a: &A, ring: R, o: &Options, out: &mut Out) {
    let skew = SkewRing::new(a, ring);
    let (sp, grp) = (a.space(), a.group());
    out.line(format!("ring: {}", skew.ring().name()));
    out.line(format!("graded spanning dimensions, word length <= {}:", o.depth));
    let mut total = Some(0);
    for (g, n) in graded_dimensions(a, o.depth) {
        let shown = n.map_or_else(|| "infinite".to_string(), |n| n.to_string());
        out.line(format!("  {}: {shown}", grp.render(&g)));
        total = total.zip(n).map(|(t, n)| t + n);
    }
    out.line(format!(
        "total: {}",
        total.map_or_else(|| "infinite".to_string(), |t| t.to_string())
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    let x = skew.random_element(&mut rng, o.depth, 3);
    let u = skew.local_unit_for(&x);
    out.line(format!("local unit: {} for x = {}", sp.render(&u), skew.render(&x)));
    match skew.unit() {
        Some(one) => out.line(format!("unit: {}", skew.render(&one))),
        None => out.line("non-unital"),
    }
    let r = skew.verify_skew_identities(&mut rng, o.trials, o.depth);
    out.section("identities", &r);
    out.section("local units", &skew.verify_local_units(&mut rng, o.trials, o.depth));
}

fn algebra(obj: &Object, o: &Options, out: &mut Out) -> Result<(), CliError> {
    with_ring!(&o.ring, |ring| match obj {
        Object::Semilattice(p) => algebra_of(&FiniteAction::new(semilattice_semigroup(p))?, ring, o, out),
        Object::Semigroup(TableSemigroup::Finite(s)) => algebra_of(&FiniteAction::new(s.clone())?, ring, o, out),
        Object::Semigroup(TableSemigroup::Free(s)) => algebra_of(&FiniteAction::new(s.clone())?, ring, o, out),
        Object::Graph(g) => algebra_of(&GraphAction::new(g.clone()), ring, o, out),
        Object::Labelled(g, family) => {
            if let Some(space) = labelled_or_fail(g, family, out)? {
                algebra_of(&LabelledAction::new(space), ring, o, out);
            }
        }
        Object::Antichain => algebra_of(&antichain_actions().0, ring, o, out),
    });
    Ok(())
}

fn ck(obj: &Object, o: &Options, out: &mut Out) -> Result<(), CliError> {
    with_ring!(&o.ring, |ring| match obj {
        Object::Graph(g) => {
            let a = GraphAction::new(g.clone());
            let skew = SkewRing::new(&a, ring);
            out.section("Leavitt relations", &verify_leavitt_relations(&skew));
            out.section("labelled model", &cross_validate(g, o.depth)?);
        }
        Object::Labelled(g, family) => {
            if let Some(space) = labelled_or_fail(g, family, out)? {
                let a = LabelledAction::new(space);
                let skew = SkewRing::new(&a, ring);
                out.section("relations", &verify_ck_relations(&skew));
                out.section("generator products", &generator_products(&skew, o.depth));
            }
        }
        _ => return Err(unsupported("ck", obj)),
    });
    Ok(())
}

fn inclusion(rep: &InclusionReport, unit: Option<String>, out: &mut Out) {
    let yes = |b: bool| if b { "yes" } else { "no" };
    out.line(format!("\nscope: {}", rep.scope));
    out.line(format!("L(S) unital: {}", yes(rep.unital_before)));
    out.line(format!("L(S*) unital: {}", yes(rep.unital_after)));
    if let Some(u) = unit {
        out.line(format!("unit of L(S*): V_* δ_1 = {u}"));
    }
    out.line(format!("inclusion: {}", if rep.equal { "equality" } else { "proper" }));
    out.line(format!("essential: {}", yes(rep.essential)));
    out.line(format!("verdict: {}", rep.verdict()));
    let mut r = Report::new("");
    r.record("L(S*) is unital", (!rep.unital_after).then(|| "no unit found".to_string()));
    r.record("L(S) is an ideal of L(S*)", (!rep.ideal).then(|| "a product leaves L(S)".to_string()));
    out.section("unitization", &r);
}

fn unitize_table<S>(s: S, ring: impl Ring, depth: usize, out: &mut Out) -> Result<(), CliError>
where
    S: Graded + Clone,
    S::Group: Clone,
{
    let fu = unitize_finite(s)?;
    out.section("tight inclusion", &fu.report);
    let rep = fu.compare(ring.clone(), depth);
    let skew = SkewRing::new(&fu.sup, ring);
    inclusion(&rep, skew.unit().map(|u| skew.render(&u)), out);
    Ok(())
}

fn unitize(obj: &Object, o: &Options, out: &mut Out) -> Result<(), CliError> {
    with_ring!(&o.ring, |ring| match obj {
        Object::Antichain => {
            let rep = antichain_unitization(ring, o.depth);
            let (_, sup) = antichain_actions();
            let skew = SkewRing::new(&sup, ring);
            inclusion(&rep, skew.unit().map(|u| skew.render(&u)), out);
        }
        Object::Semilattice(p) => unitize_table(semilattice_semigroup(p), ring, o.depth, out)?,
        Object::Semigroup(TableSemigroup::Finite(s)) => unitize_table(s.clone(), ring, o.depth, out)?,
        Object::Semigroup(TableSemigroup::Free(s)) => unitize_table(s.clone(), ring, o.depth, out)?,
        _ => return Err(unsupported("unitize", obj)),
    });
    Ok(())
}

fn semigroup_action<A: SemigroupAction>(a: &A, depth: usize, out: &mut Out) {
    out.section("partial action", &verify_partial_action(a, depth));
    out.section("semigroup action", &verify_semigroup_action(a, depth));
    let skew = SkewRing::new(a, Integers);
    out.section("idempotent products", &verify_idempotent_products(&skew, depth));
}

fn free_checks<A: SemigroupAction<Group = FreeGroup>>(a: &A, depth: usize, out: &mut Out) {
    semigroup_action(a, depth, out);
    let rec = semigroup_orthogonality_checks(a, depth);
    let mut r = Report::new(format!("word length <= {depth}"));
    let no = |b: bool, what: &str| (!b).then(|| what.to_string());
    r.record("E_a ∩ E_b = 0", no(rec.orthogonal, "two generators share an idempotent"));
    r.record("E_st ⊆ E_s", no(rec.semi_saturated, "a reduced product escapes"));
    r.record("I_a ∩ I_b trivial", no(is_orthogonal(a), "two generator ideals meet"));
    let g = a.group();
    r.record(
        "I_st ⊆ I_s",
        semi_saturation_witness(a, depth).map(|(s, t)| format!("s = {}, t = {}", g.render(&s), g.render(&t))),
    );
    out.section("orthogonality", &r);
}

fn action_check(obj: &Object, o: &Options, out: &mut Out) -> Result<(), CliError> {
    let d = o.depth;
    match obj {
        Object::Semilattice(p) => semigroup_action(&FiniteAction::new(semilattice_semigroup(p))?, d, out),
        Object::Semigroup(TableSemigroup::Finite(s)) => semigroup_action(&FiniteAction::new(s.clone())?, d, out),
        Object::Semigroup(TableSemigroup::Free(s)) => free_checks(&FiniteAction::new(s.clone())?, d, out),
        Object::Graph(g) => free_checks(&GraphAction::new(g.clone()), d, out),
        Object::Labelled(g, family) => {
            if let Some(space) = labelled_or_fail(g, family, out)? {
                free_checks(&LabelledAction::new(space), d, out);
            }
        }
        Object::Antichain => {
            let (a, _) = antichain_actions();
            out.section("partial action", &verify_partial_action(&a, d));
        }
    }
    Ok(())
}
