//! Finite groups given by tables, and free groups on a named alphabet.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Debug;

use crate::error::{domain, Error, Result};

pub trait Group {
    type Elem: Clone + Eq + Ord + Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// Elements of word length at most `bound`; every element for finite
    /// groups.
    fn elements_up_to(&self, bound: usize) -> Vec<Self::Elem>;
    fn render(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }
}

/// A group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(domain("group table has the wrong shape"));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| domain("group table has no identity"))?;
        let mut inverse = vec![0; n];
        for x in 0..n {
            inverse[x] = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| domain(format!("{} has no inverse", names[x])))?;
            for y in 0..n {
                for z in 0..n {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        return Err(domain(format!(
                            "group table is not associative at ({}, {}, {})",
                            names[x], names[y], names[z]
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            names,
            table,
            identity,
            inverse,
        })
    }

    /// `ℤ/n`, with elements written `1, g, g^2, …`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::new(names, table).unwrap()
    }

    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }
}

impl Group for FiniteGroup {
    type Elem = usize;

    fn identity(&self) -> usize {
        self.identity
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.table[*a][*b]
    }

    fn inv(&self, a: &usize) -> usize {
        self.inverse[*a]
    }

    fn elements_up_to(&self, _bound: usize) -> Vec<usize> {
        (0..self.order()).collect()
    }

    fn render(&self, a: &usize) -> String {
        self.names[*a].clone()
    }

    fn parse(&self, s: &str) -> Result<usize> {
        let s = s.trim();
        if s == "1" || s == "e" {
            return Ok(self.identity);
        }
        self.names
            .iter()
            .position(|n| n == s)
            .ok_or_else(|| Error::UnknownGenerator(s.to_string()))
    }
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: usize) -> Self {
        Letter { gen, inv: false }
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }
}

/// A freely reduced word. Words are ordered by length, then letter by letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Reduces `letters`.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The word `p` of positive letters, in order.
    pub fn positive(gens: &[usize]) -> Self {
        Word::from_letters(gens.iter().map(|&g| Letter::new(g)))
    }

    /// `p₁p₂⁻¹` with `p₁, p₂` positive words.
    pub fn quotient(p1: &[usize], p2: &[usize]) -> Self {
        let tail = p2.iter().rev().map(|&g| Letter::new(g).inverse());
        Word::from_letters(p1.iter().map(|&g| Letter::new(g)).chain(tail))
    }

    /// Writes the word as `p₁p₂⁻¹` with `p₁, p₂` positive, if it has that
    /// shape. Returns the generators of `p₁` and of `p₂`, both in order.
    pub fn split_quotient(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let k = self.0.iter().position(|l| l.inv).unwrap_or(self.0.len());
        if self.0[k..].iter().any(|l| !l.inv) {
            return None;
        }
        let p1 = self.0[..k].iter().map(|l| l.gen).collect();
        let p2 = self.0[k..].iter().rev().map(|l| l.gen).collect();
        Some((p1, p2))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The homomorphism out of a free group sending generator `i` to
/// `images[i]`.
pub fn free_hom<H>(target: H, images: Vec<H::Elem>) -> impl Fn(&Word) -> H::Elem + Clone
where
    H: Group + Clone,
{
    move |w: &Word| {
        w.letters().iter().fold(target.identity(), |acc, l| {
            let x = &images[l.gen];
            if l.inv {
                target.mul(&acc, &target.inv(x))
            } else {
                target.mul(&acc, x)
            }
        })
    }
}

/// The free group on a finite alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeGroup {
    alphabet: Vec<String>,
}

impl FreeGroup {
    pub fn new<I, S>(alphabet: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let alphabet: Vec<String> = alphabet.into_iter().map(Into::into).collect();
        let distinct: BTreeSet<&String> = alphabet.iter().collect();
        if distinct.len() != alphabet.len() {
            return Err(domain("repeated generator in alphabet"));
        }
        if alphabet
            .iter()
            .any(|a| a.is_empty() || a == "1" || a.contains(|c: char| c.is_whitespace() || c == '^'))
        {
            return Err(domain("generator names must be nonempty words other than 1"));
        }
        Ok(FreeGroup { alphabet })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.alphabet.len()
    }

    pub fn generator(&self, name: &str) -> Result<usize> {
        self.alphabet
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn letter(&self, gen: usize) -> Word {
        Word(vec![Letter::new(gen)])
    }

    /// Reads tokens such as `a` and `a^-1` and reduces the result. `1` is
    /// the empty word.
    pub fn reduce_word(&self, raw: &[&str]) -> Result<Word> {
        let mut letters = Vec::with_capacity(raw.len());
        for tok in raw {
            let tok = tok.trim();
            if tok == "1" || tok.is_empty() {
                continue;
            }
            let (name, inv) = match tok.strip_suffix("^-1") {
                Some(base) => (base, true),
                None => (tok, false),
            };
            letters.push(Letter {
                gen: self.generator(name)?,
                inv,
            });
        }
        Ok(Word::from_letters(letters))
    }
}

impl Group for FreeGroup {
    type Elem = Word;

    fn identity(&self) -> Word {
        Word::empty()
    }

    fn mul(&self, a: &Word, b: &Word) -> Word {
        Word::from_letters(a.0.iter().chain(&b.0).copied())
    }

    fn inv(&self, a: &Word) -> Word {
        Word(a.0.iter().rev().map(|l| l.inverse()).collect())
    }

    fn elements_up_to(&self, bound: usize) -> Vec<Word> {
        let letters: Vec<Letter> = (0..self.rank())
            .flat_map(|g| [Letter::new(g), Letter::new(g).inverse()])
            .collect();
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..bound {
            let mut next = Vec::new();
            for w in &layer {
                for &l in &letters {
                    if w.0.last() != Some(&l.inverse()) {
                        let mut v = w.0.clone();
                        v.push(l);
                        next.push(Word(v));
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out.sort();
        out
    }

    fn render(&self, a: &Word) -> String {
        if a.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = a
            .0
            .iter()
            .map(|l| {
                let n = &self.alphabet[l.gen];
                if l.inv {
                    format!("{n}^-1")
                } else {
                    n.clone()
                }
            })
            .collect();
        parts.join(" ")
    }

    fn parse(&self, s: &str) -> Result<Word> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        self.reduce_word(&toks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn abc() -> FreeGroup {
        FreeGroup::new(["a", "b", "c"]).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let g = abc();
        assert!(g.reduce_word(&["a", "a^-1"]).unwrap().is_empty());
        assert_eq!(
            g.reduce_word(&["a", "b", "b^-1", "c"]).unwrap(),
            g.reduce_word(&["a", "c"]).unwrap()
        );
        assert_eq!(g.reduce_word(&["1", "a"]).unwrap(), g.letter(0));
        assert_eq!(
            g.reduce_word(&["a", "z"]),
            Err(Error::UnknownGenerator("z".into()))
        );
    }

    #[test]
    fn quotient_shape() {
        let g = abc();
        let w = g.parse("a b c^-1").unwrap();
        assert_eq!(w.split_quotient(), Some((vec![0, 1], vec![2])));
        assert_eq!(Word::quotient(&[0, 1], &[2]), w);
        assert_eq!(g.parse("a^-1 b").unwrap().split_quotient(), None);
        assert_eq!(Word::empty().split_quotient(), Some((vec![], vec![])));
        // a b b^-1 reduces to a
        assert_eq!(Word::quotient(&[0, 1], &[1]), g.letter(0));
    }

    #[test]
    fn free_hom_to_integers() {
        let g = abc();
        let z = FreeGroup::new(["z"]).unwrap();
        let f = free_hom(z.clone(), vec![z.letter(0); 3]);
        assert_eq!(z.render(&f(&g.parse("a b c^-1").unwrap())), "z");
        assert_eq!(z.render(&f(&g.parse("a^-1 b^-1").unwrap())), "z^-1 z^-1");
    }

    #[test]
    fn render_and_parse() {
        let g = abc();
        let w = g.parse("a b^-1 c").unwrap();
        assert_eq!(g.render(&w), "a b^-1 c");
        assert_eq!(g.render(&g.identity()), "1");
        assert_eq!(g.render(&g.inv(&w)), "c^-1 b a^-1");
    }

    #[test]
    fn ball_sizes() {
        // 1 + 2k + 2k(2k-1) + 2k(2k-1)^2 for k = 2
        let g = FreeGroup::new(["a", "b"]).unwrap();
        assert_eq!(g.elements_up_to(3).len(), 1 + 4 + 12 + 36);
        let w = g.elements_up_to(3);
        assert!(w.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn finite_tables() {
        let z3 = FiniteGroup::cyclic(3);
        assert_eq!(z3.mul(&1, &2), 0);
        assert_eq!(z3.inv(&1), 2);
        assert_eq!(z3.render(&2), "g^2");
        assert_eq!(z3.parse("1").unwrap(), 0);
        assert_eq!(FiniteGroup::trivial().order(), 1);
        let bad = FiniteGroup::new(
            vec!["1".into(), "x".into()],
            vec![vec![0, 1], vec![1, 1]],
        );
        assert!(bad.is_err());
    }

    fn arb_word() -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec((0usize..3, any::<bool>()).prop_map(|(gen, inv)| Letter { gen, inv }), 0..10)
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent_and_subadditive(u in arb_word(), v in arb_word()) {
            let g = abc();
            let ru = Word::from_letters(u.clone());
            prop_assert_eq!(Word::from_letters(ru.letters().iter().copied()), ru.clone());
            let rv = Word::from_letters(v.clone());
            let uv = Word::from_letters(u.iter().chain(&v).copied());
            prop_assert_eq!(&uv, &g.mul(&ru, &rv));
            prop_assert!(uv.len() <= u.len() + v.len());
            prop_assert!(ru.letters().windows(2).all(|p| p[1] != p[0].inverse()));
        }

        #[test]
        fn free_group_axioms(u in arb_word(), v in arb_word(), w in arb_word()) {
            let g = abc();
            let (u, v, w) = (Word::from_letters(u), Word::from_letters(v), Word::from_letters(w));
            prop_assert_eq!(g.mul(&g.mul(&u, &v), &w), g.mul(&u, &g.mul(&v, &w)));
            prop_assert!(g.mul(&u, &g.inv(&u)).is_empty());
            prop_assert_eq!(g.mul(&g.identity(), &u), u);
        }
    }
}
