//! The partial skew group ring `Lc(R, B) ⋊ G` of a partial action, with its
//! grading, local units, unit detection, generating sets and induced maps.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::marker::PhantomData;

use rand::{Rng, RngCore};

use crate::error::{domain, Error, Result};
use crate::gba::{is_cover, Gba, Ideal};
use crate::partial_action::{
    ideal_samples, is_semi_saturated, verify_action_morphism, ElemOf, FreeGroup, Group,
    GroupElemOf, PartialAction, Word,
};
use crate::report::Report;

pub mod lc;
pub mod ring;

pub use lc::{indicator, lc_add, lc_in_ideal, lc_mul, lc_normalize, lc_scale, lc_transport, LcFunction};
pub use ring::{verify_ring_axioms, Integers, IntegersMod, Rationals, Ring};

/// `Σ f_t δ_t`, with zero coefficients absent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SkewElement<G: Ord, V, E> {
    terms: BTreeMap<G, LcFunction<V, E>>,
}

impl<G: Ord + Clone, V: Clone + Ord, E: Clone + Ord + core::fmt::Debug> SkewElement<G, V, E> {
    pub fn zero() -> Self {
        SkewElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<G, LcFunction<V, E>> {
        &self.terms
    }

    pub fn degrees(&self) -> impl Iterator<Item = &G> {
        self.terms.keys()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.len() <= 1
    }

    fn insert(&mut self, g: G, f: LcFunction<V, E>) {
        if f.is_zero() {
            self.terms.remove(&g);
        } else {
            self.terms.insert(g, f);
        }
    }
}

pub type SkewOf<A, R> = SkewElement<GroupElemOf<A>, <R as Ring>::Value, ElemOf<A>>;
pub type CoeffOf<A, R> = LcFunction<<R as Ring>::Value, ElemOf<A>>;

/// Ring operations on [`SkewElement`]s over a fixed action and coefficient
/// ring.
#[derive(Debug)]
pub struct SkewRing<'a, A: PartialAction, R: Ring> {
    action: &'a A,
    ring: R,
}

impl<'a, A: PartialAction, R: Ring> SkewRing<'a, A, R> {
    pub fn new(action: &'a A, ring: R) -> Self {
        SkewRing { action, ring }
    }

    pub fn action(&self) -> &'a A {
        self.action
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn space(&self) -> &A::Space {
        self.action.space()
    }

    pub fn group(&self) -> &A::Group {
        self.action.group()
    }

    pub fn zero(&self) -> SkewOf<A, R> {
        SkewElement::zero()
    }

    /// `Uδ_g`; fails unless `U ∈ I_g`.
    pub fn delta(&self, u: &ElemOf<A>, g: &GroupElemOf<A>) -> Result<SkewOf<A, R>> {
        self.term(&self.ring.one(), u, g)
    }

    /// `r·Uδ_g`.
    pub fn term(&self, r: &R::Value, u: &ElemOf<A>, g: &GroupElemOf<A>) -> Result<SkewOf<A, R>> {
        let f = lc_in_ideal(self.space(), &self.ring, &self.action.ideal(g), &[(r.clone(), u.clone())])
            .map_err(|_| {
                domain(format!(
                    "{} is not in I_{}",
                    self.space().render(u),
                    self.group().render(g)
                ))
            })?;
        let mut x = SkewElement::zero();
        x.insert(g.clone(), f);
        Ok(x)
    }

    /// `f δ_g`; fails unless `f ∈ D_g`.
    pub fn monomial(&self, f: CoeffOf<A, R>, g: &GroupElemOf<A>) -> Result<SkewOf<A, R>> {
        if !f.supports_in(self.space(), &self.action.ideal(g)) {
            return Err(domain(format!("coefficient is not in D_{}", self.group().render(g))));
        }
        let mut x = SkewElement::zero();
        x.insert(g.clone(), f);
        Ok(x)
    }

    pub fn add(&self, x: &SkewOf<A, R>, y: &SkewOf<A, R>) -> SkewOf<A, R> {
        let mut out = x.clone();
        for (g, f) in &y.terms {
            let sum = match out.terms.get(g) {
                Some(h) => lc_add(self.space(), &self.ring, h, f),
                None => f.clone(),
            };
            out.insert(g.clone(), sum);
        }
        out
    }

    pub fn scale(&self, r: &R::Value, x: &SkewOf<A, R>) -> SkewOf<A, R> {
        let mut out = SkewElement::zero();
        for (g, f) in &x.terms {
            out.insert(g.clone(), lc_scale(self.space(), &self.ring, r, f));
        }
        out
    }

    pub fn neg(&self, x: &SkewOf<A, R>) -> SkewOf<A, R> {
        self.scale(&self.ring.neg(&self.ring.one()), x)
    }

    pub fn sub(&self, x: &SkewOf<A, R>, y: &SkewOf<A, R>) -> SkewOf<A, R> {
        self.add(x, &self.neg(y))
    }

    pub fn sum<'b, I>(&self, items: I) -> SkewOf<A, R>
    where
        I: IntoIterator<Item = &'b SkewOf<A, R>>,
        SkewOf<A, R>: 'b,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// `(aδ_s)(bδ_t) = φ̃_s(φ̃_{s⁻¹}(a) b) δ_{st}`, extended bilinearly.
    pub fn mul(&self, x: &SkewOf<A, R>, y: &SkewOf<A, R>) -> SkewOf<A, R> {
        let (sp, g) = (self.space(), self.group());
        let mut out = SkewElement::zero();
        for (s, a) in &x.terms {
            let si = g.inv(s);
            let pulled = lc_transport(sp, &self.ring, a, |u| self.action.act(&si, u))
                .expect("coefficient outside its ideal");
            for (t, b) in &y.terms {
                let prod = lc_mul(sp, &self.ring, &pulled, b);
                let pushed = lc_transport(sp, &self.ring, &prod, |u| self.action.act(s, u))
                    .expect("product outside I_s^-1");
                let st = g.mul(s, t);
                let acc = match out.terms.get(&st) {
                    Some(h) => lc_add(sp, &self.ring, h, &pushed),
                    None => pushed,
                };
                out.insert(st, acc);
            }
        }
        out
    }

    pub fn graded_component(&self, x: &SkewOf<A, R>, g: &GroupElemOf<A>) -> CoeffOf<A, R> {
        x.terms.get(g).cloned().unwrap_or_else(LcFunction::zero)
    }

    /// `U` with `(Uδ_e)x = x = x(Uδ_e)`: the join over the terms `Vδ_g` of
    /// `V ∨ φ_{g⁻¹}(V)`.
    pub fn local_unit_for(&self, x: &SkewOf<A, R>) -> ElemOf<A> {
        let (sp, g) = (self.space(), self.group());
        let mut u = sp.bottom();
        for (t, f) in &x.terms {
            let v = f.dom(sp);
            let back = self
                .action
                .act(&g.inv(t), &v)
                .expect("coefficient outside its ideal");
            u = sp.join(&u, &sp.join(&v, &back));
        }
        u
    }

    /// The top of `B`, which gives the unit `1δ_e` when it exists.
    pub fn find_unit(&self) -> Option<ElemOf<A>> {
        self.space().top()
    }

    pub fn unit(&self) -> Option<SkewOf<A, R>> {
        let e = self.group().identity();
        self.find_unit().map(|t| self.delta(&t, &e).expect("I_e is everything"))
    }

    pub fn render(&self, x: &SkewOf<A, R>) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (g, f) in &x.terms {
            for (v, u) in f.terms() {
                parts.push(format!(
                    "{}·[{}]δ({})",
                    self.ring.render(v),
                    self.space().render(u),
                    self.group().render(g)
                ));
            }
        }
        parts.join(" + ")
    }

    /// A random element of `I_g`.
    pub fn random_in_ideal(&self, rng: &mut dyn RngCore, ideal: &Ideal<ElemOf<A>>) -> ElemOf<A> {
        let sp = self.space();
        let s = sp.sample(rng);
        match ideal.bound(sp) {
            Some(m) if rng.random_range(0..4) == 0 => m,
            Some(m) => sp.meet(&s, &m),
            None => s,
        }
    }

    /// A sum of up to `max_terms` random terms `r·Uδ_g` with `g` in the
    /// support of the action within `bound`.
    pub fn random_element(&self, rng: &mut dyn RngCore, bound: usize, max_terms: usize) -> SkewOf<A, R> {
        let support = self.action.support(bound);
        let mut x = self.zero();
        for _ in 0..rng.random_range(1..=max_terms.max(1)) {
            let g = &support[rng.random_range(0..support.len())];
            let u = self.random_in_ideal(rng, &self.action.ideal(g));
            let r = self.ring.sample(rng);
            let t = self.term(&r, &u, g).expect("sampled inside the ideal");
            x = self.add(&x, &t);
        }
        x
    }

    /// Indicator monomials `Uδ_g` in the subalgebra generated by `gens`,
    /// restricted to degrees within `bound`. Products of monomials are
    /// monomials, and within a degree `U ∨ V` and `U ∖ V` follow by
    /// inclusion-exclusion once `U ∧ V` is present. Returns `None` if more
    /// than `cap` monomials appear.
    pub fn monomial_closure(
        &self,
        gens: &[(ElemOf<A>, GroupElemOf<A>)],
        bound: usize,
        cap: usize,
    ) -> Option<BTreeMap<GroupElemOf<A>, BTreeSet<ElemOf<A>>>> {
        let (sp, g) = (self.space(), self.group());
        let ball: BTreeSet<GroupElemOf<A>> = g.elements_up_to(bound).into_iter().collect();
        let mut found: BTreeMap<GroupElemOf<A>, BTreeSet<ElemOf<A>>> = BTreeMap::new();
        for (u, t) in gens {
            if !sp.is_bottom(u) {
                found.entry(t.clone()).or_default().insert(u.clone());
            }
        }
        loop {
            let before: usize = found.values().map(BTreeSet::len).sum();
            let mono: Vec<(GroupElemOf<A>, ElemOf<A>)> = found
                .iter()
                .flat_map(|(t, us)| us.iter().map(move |u| (t.clone(), u.clone())))
                .collect();
            for (s, u) in &mono {
                let su = self.action.act(&g.inv(s), u).expect("monomial outside its ideal");
                for (t, v) in &mono {
                    let st = g.mul(s, t);
                    if !ball.contains(&st) {
                        continue;
                    }
                    let w = self.action.act(s, &sp.meet(&su, v)).expect("product outside I_s^-1");
                    if !sp.is_bottom(&w) {
                        found.entry(st).or_default().insert(w);
                    }
                }
            }
            for us in found.values_mut() {
                let cur: Vec<ElemOf<A>> = us.iter().cloned().collect();
                for a in &cur {
                    for b in &cur {
                        let m = sp.meet(a, b);
                        if sp.is_bottom(&m) || us.contains(&m) {
                            us.insert(sp.join(a, b));
                            let d = sp.diff(a, b);
                            if !sp.is_bottom(&d) {
                                us.insert(d);
                            }
                        }
                    }
                }
            }
            let after: usize = found.values().map(BTreeSet::len).sum();
            if after > cap {
                return None;
            }
            if after == before {
                return Some(found);
            }
        }
    }

    /// Whether every sampled `Uδ_g` with `|g| <= bound` lies in the
    /// subalgebra generated by `gens`; the witness is the first miss.
    pub fn generates(
        &self,
        gens: &[(ElemOf<A>, GroupElemOf<A>)],
        bound: usize,
        cap: usize,
    ) -> core::result::Result<(), String> {
        let closure = self
            .monomial_closure(gens, bound, cap)
            .ok_or_else(|| format!("closure exceeded {cap} monomials"))?;
        let (sp, g) = (self.space(), self.group());
        for t in self.action.support(bound) {
            let have = closure.get(&t);
            for u in ideal_samples(sp, &self.action.ideal(&t)) {
                if !sp.is_bottom(&u) && !have.is_some_and(|h| h.contains(&u)) {
                    return Err(format!("{}δ({}) not reached", sp.render(&u), g.render(&t)));
                }
            }
        }
        Ok(())
    }

    /// Randomized check of the computation rules for products of
    /// monomials, plus associativity and distributivity.
    pub fn verify_skew_identities(&self, rng: &mut dyn RngCore, trials: usize, bound: usize) -> Report {
        let (sp, g) = (self.space(), self.group());
        let ring = &self.ring;
        let e = g.identity();
        let support = self.action.support(bound);
        let mut report = Report::new(format!("{trials} trials, word length <= {bound}"));
        let mut fails: BTreeMap<&'static str, String> = BTreeMap::new();
        let names = [
            "(2) indicator product",
            "(3) transported indicator",
            "(4) monomial product",
            "(5) left unit action",
            "(6) right unit action",
            "(7) two-sided unit action",
            "(8) conjugation",
            "(9) inverse pair",
            "(10) inclusion-exclusion",
            "associativity",
            "distributivity",
        ];
        let d = |u: &ElemOf<A>, t: &GroupElemOf<A>| self.delta(u, t).expect("in ideal");
        let phi = |t: &GroupElemOf<A>, u: &ElemOf<A>| self.action.act(t, u).expect("in domain");
        for _ in 0..trials {
            let pick = |rng: &mut dyn RngCore| support[rng.random_range(0..support.len())].clone();
            let gg = pick(rng);
            let gi = g.inv(&gg);
            let h = pick(rng);
            let ig = self.action.ideal(&gg);
            let u = self.random_in_ideal(rng, &ig);
            let v = self.random_in_ideal(rng, &self.action.ideal(&h));
            let b1 = sp.sample(rng);
            let b2 = sp.sample(rng);
            let w = self.random_in_ideal(rng, &self.action.ideal(&gi));
            let mut note = |name: &'static str, ok: bool, what: String| {
                if !ok {
                    fails.entry(name).or_insert(what);
                }
            };
            let ctx = || format!("g = {}, U = {}", g.render(&gg), sp.render(&u));

            note(
                names[0],
                lc_mul(sp, ring, &indicator(sp, ring, &b1), &indicator(sp, ring, &b2))
                    == indicator(sp, ring, &sp.meet(&b1, &b2)),
                format!("U = {}, V = {}", sp.render(&b1), sp.render(&b2)),
            );
            note(
                names[1],
                lc_transport(sp, ring, &indicator(sp, ring, &w), |x| self.action.act(&gg, x))
                    == Some(indicator(sp, ring, &phi(&gg, &w))),
                ctx(),
            );
            let lhs = self.mul(&d(&u, &gg), &d(&v, &h));
            let rhs = d(&phi(&gg, &sp.meet(&v, &phi(&gi, &u))), &g.mul(&gg, &h));
            note(names[2], lhs == rhs, format!("{}, h = {}", ctx(), g.render(&h)));
            note(
                names[3],
                self.mul(&d(&b1, &e), &d(&u, &gg)) == d(&sp.meet(&b1, &u), &gg),
                ctx(),
            );
            let right = d(&phi(&gg, &sp.meet(&b1, &phi(&gi, &u))), &gg);
            note(names[4], self.mul(&d(&u, &gg), &d(&b1, &e)) == right, ctx());
            let three = self.mul(&self.mul(&d(&b2, &e), &d(&u, &gg)), &d(&b1, &e));
            let want = d(&sp.meet(&b2, &phi(&gg, &sp.meet(&b1, &phi(&gi, &u)))), &gg);
            note(names[5], three == want, ctx());
            let conj = self.mul(&self.mul(&d(&u, &gg), &d(&b1, &e)), &d(&phi(&gi, &u), &gi));
            let want = d(&phi(&gg, &sp.meet(&b1, &phi(&gi, &u))), &e);
            note(names[6], conj == want, ctx());
            note(
                names[7],
                self.mul(&d(&u, &gg), &d(&phi(&gi, &u), &gi)) == d(&u, &e),
                ctx(),
            );

            let n = rng.random_range(2..=4);
            let parts: Vec<ElemOf<A>> = (0..n).map(|_| self.random_in_ideal(rng, &ig)).collect();
            let whole = sp.join_all(&parts);
            let mut ie = self.zero();
            for mask in 1u32..1 << n {
                let chosen: Vec<&ElemOf<A>> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &parts[i]).collect();
                let m = chosen[1..].iter().fold(chosen[0].clone(), |acc, x| sp.meet(&acc, x));
                let sign = if chosen.len() % 2 == 1 { ring.one() } else { ring.neg(&ring.one()) };
                ie = self.add(&ie, &self.term(&sign, &m, &gg).expect("in ideal"));
            }
            note(names[8], ie == d(&whole, &gg), format!("g = {}, {n} parts", g.render(&gg)));

            let x = self.random_element(rng, bound, 3);
            let y = self.random_element(rng, bound, 3);
            let z = self.random_element(rng, bound, 3);
            note(
                names[9],
                self.mul(&self.mul(&x, &y), &z) == self.mul(&x, &self.mul(&y, &z)),
                self.render(&x),
            );
            note(
                names[10],
                self.mul(&x, &self.add(&y, &z)) == self.add(&self.mul(&x, &y), &self.mul(&x, &z))
                    && self.mul(&self.add(&x, &y), &z) == self.add(&self.mul(&x, &z), &self.mul(&y, &z)),
                self.render(&x),
            );
        }
        for name in names {
            report.record(name, fails.remove(name));
        }
        report
    }

    /// Local units: `local_unit_for(x)` acts as a two-sided unit on random
    /// `x`, and the `Uδ_e` are commuting idempotents closed under meet and
    /// join.
    pub fn verify_local_units(&self, rng: &mut dyn RngCore, trials: usize, bound: usize) -> Report {
        let sp = self.space();
        let e = self.group().identity();
        let mut report = Report::new(format!("{trials} random elements"));
        let mut unit = None;
        let mut lattice = None;
        for _ in 0..trials {
            let x = self.random_element(rng, bound, 4);
            let u = self.delta(&self.local_unit_for(&x), &e).expect("I_e is everything");
            if unit.is_none() && (self.mul(&u, &x) != x || self.mul(&x, &u) != x) {
                unit = Some(self.render(&x));
            }
            let (a, b) = (sp.sample(rng), sp.sample(rng));
            let (da, db) = (self.delta(&a, &e).unwrap(), self.delta(&b, &e).unwrap());
            let meet = self.delta(&sp.meet(&a, &b), &e).unwrap();
            let join = self.delta(&sp.join(&a, &b), &e).unwrap();
            let ok = self.mul(&da, &da) == da
                && self.mul(&da, &db) == meet
                && self.mul(&db, &da) == meet
                && self.sub(&self.add(&da, &db), &meet) == join;
            if lattice.is_none() && !ok {
                lattice = Some(format!("U = {}, V = {}", sp.render(&a), sp.render(&b)));
            }
        }
        report.record("two-sided unit", unit);
        report.record("idempotent lattice", lattice);
        report
    }
}

/// The generators `{Uδ_e}_{U∈C} ∪ {Vδ_a}_{V∈C_a} ∪ {Vδ_{a⁻¹}}_{V∈C_{a⁻¹}}`
/// of a semi-saturated action of a free group. `covers` maps each letter
/// and inverse letter to a cover of its ideal.
pub fn semi_saturated_generators<A>(
    action: &A,
    c: &[ElemOf<A>],
    covers: &BTreeMap<Word, Vec<ElemOf<A>>>,
    bound: usize,
) -> Result<Vec<(ElemOf<A>, Word)>>
where
    A: PartialAction<Group = FreeGroup>,
{
    if !is_semi_saturated(action, bound) {
        return Err(domain("the action is not semi-saturated"));
    }
    let g = action.group();
    let sp = action.space();
    let mut out: Vec<(ElemOf<A>, Word)> = c.iter().map(|u| (u.clone(), g.identity())).collect();
    for i in 0..g.rank() {
        let a = g.letter(i);
        for t in [g.inv(&a), a] {
            let ideal = action.ideal(&t);
            let family = covers.get(&t).cloned().unwrap_or_default();
            if family.iter().any(|v| !ideal.contains(sp, v)) {
                return Err(domain(format!("cover of I_{} leaves the ideal", g.render(&t))));
            }
            let covered = match ideal.bound(sp) {
                Some(m) => is_cover(sp, &family, &m),
                None => false,
            };
            if !covered {
                return Err(domain(format!("family does not cover I_{}", g.render(&t))));
            }
            out.extend(family.into_iter().map(|v| (v, t.clone())));
        }
    }
    Ok(out)
}

/// `aδ_t ↦ (f ∘ a)δ_t` for a verified morphism of partial actions.
pub struct InducedMorphism<A1, A2, F> {
    f: F,
    _actions: PhantomData<fn(&A1) -> A2>,
}

impl<A1, A2, F> InducedMorphism<A1, A2, F>
where
    A1: PartialAction,
    A2: PartialAction<Group = A1::Group>,
    F: Fn(&ElemOf<A1>) -> ElemOf<A2>,
{
    pub fn new(f: F, a1: &A1, a2: &A2, bound: usize) -> Result<Self> {
        let report = verify_action_morphism(&f, a1, a2, bound);
        if !report.passed() {
            let why = report
                .failures()
                .next()
                .map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()))
                .unwrap_or_default();
            return Err(Error::Domain(format!("not a morphism of partial actions ({why})")));
        }
        Ok(InducedMorphism {
            f,
            _actions: PhantomData,
        })
    }

    pub fn apply<R: Ring>(&self, target: &SkewRing<'_, A2, R>, x: &SkewOf<A1, R>) -> SkewOf<A2, R> {
        let mut out = SkewElement::zero();
        for (t, a) in x.terms() {
            let raw: Vec<_> = a.terms().iter().map(|(v, u)| (v.clone(), (self.f)(u))).collect();
            out.insert(t.clone(), lc_normalize(target.space(), target.ring(), &raw));
        }
        out
    }
}


/// The rank of `Lc(R, I_g)` for each `g` in the support up to `bound`: the
/// number of points of `I_g` when it is finite, `None` otherwise.
pub fn graded_dimensions<A: PartialAction>(a: &A, bound: usize) -> Vec<(GroupElemOf<A>, Option<usize>)> {
    let sp = a.space();
    a.support(bound)
        .into_iter()
        .map(|g| {
            let top = match a.ideal(&g) {
                Ideal::Whole => sp.top(),
                Ideal::Below(m) => Some(m),
            };
            let n = top.and_then(|m| sp.point_count(&m));
            (g, n)
        })
        .collect()
}
