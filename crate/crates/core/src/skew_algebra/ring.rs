//! Commutative unital coefficient rings with exact arithmetic.

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt::Debug;

use num_rational::Ratio;
use num_traits::{One, Zero};
use rand::{Rng, RngCore};

use crate::error::{domain, Result};
use crate::report::Report;

pub trait Ring: Clone + Debug {
    /// Values are kept canonical; the `Ord` is only for normal forms.
    type Value: Clone + Eq + Ord + Debug;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Value;
    fn one(&self) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Value;
    fn render(&self, a: &Self::Value) -> String;
    fn parse(&self, s: &str) -> Result<Self::Value>;
    /// A small random value, for randomized checks.
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Value;

    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Value) -> bool {
        *a == self.zero()
    }
}

/// `ℤ`, as `i128`. Overflow panics rather than wrapping.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Value = i128;

    fn name(&self) -> String {
        "integers".into()
    }
    fn zero(&self) -> i128 {
        0
    }
    fn one(&self) -> i128 {
        1
    }
    fn add(&self, a: &i128, b: &i128) -> i128 {
        a.checked_add(*b).expect("integer overflow")
    }
    fn mul(&self, a: &i128, b: &i128) -> i128 {
        a.checked_mul(*b).expect("integer overflow")
    }
    fn neg(&self, a: &i128) -> i128 {
        -a
    }
    fn from_i64(&self, n: i64) -> i128 {
        n.into()
    }
    fn render(&self, a: &i128) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<i128> {
        s.trim()
            .parse()
            .map_err(|_| domain(format!("not an integer: {s}")))
    }
    fn sample(&self, rng: &mut dyn RngCore) -> i128 {
        rng.random_range(-5..=5)
    }
}

/// `ℤ/n` with `n ≥ 2`, values in `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntegersMod {
    n: u64,
}

impl IntegersMod {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(domain("modulus must be at least 2"));
        }
        Ok(IntegersMod { n })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }
}

impl Ring for IntegersMod {
    type Value = u64;

    fn name(&self) -> String {
        format!("mod:{}", self.n)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.n as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.n as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.n - a % self.n) % self.n
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.n as i64) as u64
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let v: i64 = s
            .trim()
            .parse()
            .map_err(|_| domain(format!("not an integer: {s}")))?;
        Ok(self.from_i64(v))
    }
    fn sample(&self, rng: &mut dyn RngCore) -> u64 {
        rng.random_range(0..self.n)
    }
}

/// `ℚ`, as reduced `i128` fractions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Value = Ratio<i128>;

    fn name(&self) -> String {
        "rationals".into()
    }
    fn zero(&self) -> Ratio<i128> {
        Ratio::zero()
    }
    fn one(&self) -> Ratio<i128> {
        Ratio::one()
    }
    fn add(&self, a: &Ratio<i128>, b: &Ratio<i128>) -> Ratio<i128> {
        a + b
    }
    fn mul(&self, a: &Ratio<i128>, b: &Ratio<i128>) -> Ratio<i128> {
        a * b
    }
    fn neg(&self, a: &Ratio<i128>) -> Ratio<i128> {
        -a
    }
    fn from_i64(&self, n: i64) -> Ratio<i128> {
        Ratio::from_integer(n.into())
    }
    fn render(&self, a: &Ratio<i128>) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<Ratio<i128>> {
        let s = s.trim();
        let bad = || domain(format!("not a rational: {s}"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p: i128 = p.trim().parse().map_err(|_| bad())?;
                let q: i128 = q.trim().parse().map_err(|_| bad())?;
                if q == 0 {
                    return Err(bad());
                }
                Ok(Ratio::new(p, q))
            }
            None => Ok(Ratio::from_integer(s.parse().map_err(|_| bad())?)),
        }
    }
    fn sample(&self, rng: &mut dyn RngCore) -> Ratio<i128> {
        Ratio::new(rng.random_range(-5..=5), rng.random_range(1..=4))
    }
}

/// Spot checks of the commutative ring axioms on random triples.
pub fn verify_ring_axioms<R: Ring>(ring: &R, rng: &mut dyn RngCore, trials: usize) -> Report {
    let mut report = Report::new(format!("{} random triples in {}", trials, ring.name()));
    let mut fail = None;
    for _ in 0..trials {
        let (a, b, c) = (ring.sample(rng), ring.sample(rng), ring.sample(rng));
        let ok = ring.add(&a, &b) == ring.add(&b, &a)
            && ring.mul(&a, &b) == ring.mul(&b, &a)
            && ring.add(&ring.add(&a, &b), &c) == ring.add(&a, &ring.add(&b, &c))
            && ring.mul(&ring.mul(&a, &b), &c) == ring.mul(&a, &ring.mul(&b, &c))
            && ring.mul(&a, &ring.add(&b, &c)) == ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c))
            && ring.add(&a, &ring.zero()) == a
            && ring.mul(&a, &ring.one()) == a
            && ring.is_zero(&ring.add(&a, &ring.neg(&a)));
        if !ok {
            fail = Some(format!(
                "({}, {}, {})",
                ring.render(&a),
                ring.render(&b),
                ring.render(&c)
            ));
            break;
        }
    }
    report.record("ring axioms", fail);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn axioms_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        assert!(verify_ring_axioms(&Integers, &mut rng, 200).passed());
        assert!(verify_ring_axioms(&IntegersMod::new(6).unwrap(), &mut rng, 200).passed());
        assert!(verify_ring_axioms(&Rationals, &mut rng, 200).passed());
    }

    #[test]
    fn modular_arithmetic() {
        let r = IntegersMod::new(5).unwrap();
        assert_eq!(r.from_i64(-1), 4);
        assert_eq!(r.neg(&0), 0);
        assert_eq!(r.mul(&3, &4), 2);
        assert_eq!(r.parse("-7").unwrap(), 3);
        assert!(IntegersMod::new(1).is_err());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(Rationals.parse("2/4").unwrap(), Ratio::new(1, 2));
        assert_eq!(Rationals.render(&Ratio::new(-3, 6)), "-1/2");
        assert!(Rationals.parse("1/0").is_err());
        assert_eq!(Integers.parse("-12").unwrap(), -12);
    }
}
