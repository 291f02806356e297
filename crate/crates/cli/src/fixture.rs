//! The fixture format: one declaration per line, `#` starts a comment.
//!
//! ```text
//! ring mod:3              # integers | mod:n | rationals
//! depth 2
//! trials 200
//! seed 7
//!
//! elements 0 a b t        # semilattice; the first element is the zero
//! le a t
//! le b t
//!
//! elements 0 e            # semigroup table, rows in element order,
//! row 0 0 0               # optionally led by their own element
//! row e 0 e
//! group free z            # or `group cyclic 2`; trivial by default
//! grade e 1
//!
//! vertex v                # directed graph
//! edge e v w
//!
//! ledge a u w x           # labelled graph: edge `a` from u to w labelled x
//! family powerset         # or `family set {u} {u,w}`, `family closure {u}`
//!
//! antichain               # the infinite antichain semilattice
//! ```

use std::collections::{BTreeMap, BTreeSet};

use skewgba_core::graph_algebra::DirectedGraph;
use skewgba_core::inverse_semigroup::FiniteSemigroup;
use skewgba_core::labelled_algebra::{set_from, LabelledGraph, VSet};
use skewgba_core::partial_action::{FiniteGroup, FreeGroup, Group};
use skewgba_core::skew_algebra::IntegersMod;
use skewgba_core::tight_filters::Semilattice;

use crate::CliError;

#[derive(Debug, Clone)]
pub enum RingSpec {
    Integers,
    Mod(IntegersMod),
    Rationals,
}

impl RingSpec {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s {
            "integers" | "Z" => Ok(RingSpec::Integers),
            "rationals" | "Q" => Ok(RingSpec::Rationals),
            _ => {
                let n = s
                    .strip_prefix("mod:")
                    .and_then(|n| n.parse::<u64>().ok())
                    .ok_or_else(|| format!("unknown ring `{s}`, expected integers, mod:n or rationals"))?;
                IntegersMod::new(n).map(RingSpec::Mod).map_err(|e| e.to_string())
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Options {
    pub ring: RingSpec,
    pub depth: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            ring: RingSpec::Integers,
            depth: 3,
            trials: 500,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Family {
    Powerset,
    Exact(Vec<VSet>),
    Closure(Vec<VSet>),
}

#[derive(Debug, Clone)]
pub enum TableSemigroup {
    Finite(FiniteSemigroup<FiniteGroup>),
    Free(FiniteSemigroup<FreeGroup>),
}

#[derive(Debug, Clone)]
pub enum Object {
    Semilattice(Semilattice),
    Semigroup(TableSemigroup),
    Graph(DirectedGraph),
    Labelled(LabelledGraph, Family),
    Antichain,
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Semilattice(_) => "semilattice",
            Object::Semigroup(_) => "semigroup",
            Object::Graph(_) => "graph",
            Object::Labelled(..) => "labelled space",
            Object::Antichain => "antichain",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub object: Object,
    pub options: Options,
}

#[derive(Default)]
struct Raw {
    kind: Option<(&'static str, usize)>,
    elements: Vec<String>,
    le: Vec<(usize, String, String)>,
    rows: Vec<(usize, Vec<String>)>,
    group: Option<(usize, Vec<String>)>,
    grades: Vec<(usize, String, String)>,
    vertices: Vec<String>,
    edges: Vec<(String, String, String)>,
    ledges: Vec<(String, String, String, String)>,
    family: Option<(usize, String, Vec<Vec<String>>)>,
}

fn err(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse { line, msg: msg.into() }
}

impl Raw {
    /// Every declaration belongs to one kind of object; mixing is an error.
    fn claim(&mut self, kind: &'static str, line: usize) -> Result<(), CliError> {
        match self.kind {
            None => {
                self.kind = Some((kind, line));
                Ok(())
            }
            Some((k, _)) if k == kind => Ok(()),
            // `elements` is shared by semilattices and tables until a row or
            // an order fact decides
            Some(("elements", first)) if kind == "semilattice" || kind == "semigroup" => {
                self.kind = Some((kind, first));
                Ok(())
            }
            Some(("vertex", first)) if kind == "graph" || kind == "labelled" => {
                self.kind = Some((kind, first));
                Ok(())
            }
            Some((k, _)) if (k == "semilattice" || k == "semigroup") && kind == "elements" => Ok(()),
            Some((k, _)) if (k == "graph" || k == "labelled") && kind == "vertex" => Ok(()),
            Some((k, first)) => Err(err(line, format!("`{kind}` declaration in a {k} fixture (begun on line {first})"))),
        }
    }
}

/// Reads `{u,w}` style set tokens, allowing spaces inside the braces.
fn set_tokens(words: &[&str], line: usize) -> Result<Vec<Vec<String>>, CliError> {
    let joined = words.join(" ");
    let mut out = Vec::new();
    let mut rest = joined.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('{')
            .ok_or_else(|| err(line, format!("expected `{{` at `{rest}`")))?;
        let end = body.find('}').ok_or_else(|| err(line, "unclosed `{`"))?;
        let members = body[..end]
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(String::from)
            .collect();
        out.push(members);
        rest = body[end + 1..].trim_start();
    }
    Ok(out)
}

fn number<T: std::str::FromStr>(words: &[&str], line: usize, what: &str) -> Result<T, CliError> {
    match words {
        [n] => n.parse().map_err(|_| err(line, format!("{what} expects a number, got `{n}`"))),
        _ => Err(err(line, format!("{what} expects one number"))),
    }
}

pub fn parse(text: &str) -> Result<Fixture, CliError> {
    let mut raw = Raw::default();
    let mut options = Options::default();
    let mut antichain = None;
    for (i, full) in text.lines().enumerate() {
        let line = i + 1;
        let content = full.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        let (head, args) = (words[0], &words[1..]);
        match head {
            "ring" => match args {
                [r] => options.ring = RingSpec::parse(r).map_err(|m| err(line, m))?,
                _ => return Err(err(line, "ring expects one of integers, mod:n, rationals")),
            },
            "depth" => options.depth = number(args, line, "depth")?,
            "trials" => options.trials = number(args, line, "trials")?,
            "seed" => options.seed = number(args, line, "seed")?,
            "elements" => {
                raw.claim("elements", line)?;
                if !raw.elements.is_empty() {
                    return Err(err(line, "elements declared twice"));
                }
                if args.is_empty() {
                    return Err(err(line, "elements expects at least one name"));
                }
                raw.elements = args.iter().map(|s| s.to_string()).collect();
            }
            "le" => {
                raw.claim("semilattice", line)?;
                match args {
                    [x, y] => raw.le.push((line, x.to_string(), y.to_string())),
                    _ => return Err(err(line, "le expects two elements")),
                }
            }
            "row" => {
                raw.claim("semigroup", line)?;
                raw.rows.push((line, args.iter().map(|s| s.to_string()).collect()));
            }
            "group" => {
                raw.claim("semigroup", line)?;
                if raw.group.is_some() {
                    return Err(err(line, "group declared twice"));
                }
                raw.group = Some((line, args.iter().map(|s| s.to_string()).collect()));
            }
            "grade" => {
                raw.claim("semigroup", line)?;
                match args {
                    [x, rest @ ..] if !rest.is_empty() => raw.grades.push((line, x.to_string(), rest.join(" "))),
                    _ => return Err(err(line, "grade expects an element and a degree")),
                }
            }
            "vertex" => {
                raw.claim("vertex", line)?;
                if args.is_empty() {
                    return Err(err(line, "vertex expects at least one name"));
                }
                raw.vertices.extend(args.iter().map(|s| s.to_string()));
            }
            "edge" => {
                raw.claim("graph", line)?;
                match args {
                    [e, s, d] => raw.edges.push((e.to_string(), s.to_string(), d.to_string())),
                    _ => return Err(err(line, "edge expects a name, a source and a range")),
                }
            }
            "ledge" => {
                raw.claim("labelled", line)?;
                match args {
                    [e, s, d, l] => raw.ledges.push((e.to_string(), s.to_string(), d.to_string(), l.to_string())),
                    _ => return Err(err(line, "ledge expects a name, a source, a range and a label")),
                }
            }
            "family" => {
                raw.claim("labelled", line)?;
                if raw.family.is_some() {
                    return Err(err(line, "family declared twice"));
                }
                match args {
                    ["powerset"] => raw.family = Some((line, "powerset".into(), Vec::new())),
                    [mode @ ("set" | "closure"), sets @ ..] => {
                        raw.family = Some((line, mode.to_string(), set_tokens(sets, line)?));
                    }
                    _ => return Err(err(line, "family expects powerset, set {..} or closure {..}")),
                }
            }
            "antichain" => {
                raw.claim("antichain", line)?;
                if !args.is_empty() {
                    return Err(err(line, "antichain takes no arguments"));
                }
                antichain = Some(line);
            }
            other => return Err(err(line, format!("unknown declaration `{other}`"))),
        }
    }
    let object = build(raw, antichain)?;
    Ok(Fixture { object, options })
}

fn build(raw: Raw, antichain: Option<usize>) -> Result<Object, CliError> {
    let Some((kind, first)) = raw.kind else {
        return Err(err(0, "the fixture declares no object"));
    };
    let fail = |e: skewgba_core::Error| err(first, e.to_string());
    match kind {
        "antichain" if antichain.is_some() => Ok(Object::Antichain),
        "elements" | "semilattice" => semilattice(&raw, first).map(Object::Semilattice),
        "semigroup" => semigroup(&raw, first).map(Object::Semigroup),
        "vertex" | "graph" => DirectedGraph::new(raw.vertices.iter().cloned(), raw.edges.iter().cloned())
            .map(Object::Graph)
            .map_err(fail),
        "labelled" => {
            let g = LabelledGraph::new(raw.vertices.iter().cloned(), raw.ledges.iter().cloned()).map_err(fail)?;
            let family = match &raw.family {
                None => Family::Powerset,
                Some((_, mode, _)) if mode == "powerset" => Family::Powerset,
                Some((line, mode, sets)) => {
                    let mut out = Vec::new();
                    for s in sets {
                        let mut idx = Vec::new();
                        for v in s {
                            idx.push(g.vertex_index(v).ok_or_else(|| err(*line, format!("unknown vertex `{v}`")))?);
                        }
                        out.push(set_from(idx));
                    }
                    if mode == "set" {
                        Family::Exact(out)
                    } else {
                        Family::Closure(out)
                    }
                }
            };
            Ok(Object::Labelled(g, family))
        }
        _ => unreachable!("claimed kinds are listed above"),
    }
}

fn index(names: &[String], name: &str, line: usize) -> Result<usize, CliError> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| err(line, format!("unknown element `{name}`")))
}

/// The meet is the greatest lower bound in the order generated by the `le`
/// facts, with the first element below everything.
fn semilattice(raw: &Raw, first: usize) -> Result<Semilattice, CliError> {
    let names = &raw.elements;
    if names.is_empty() {
        return Err(err(first, "semilattice without elements"));
    }
    let n = names.len();
    if names.iter().collect::<BTreeSet<_>>().len() != n {
        return Err(err(first, "repeated element name"));
    }
    let mut le = vec![vec![false; n]; n];
    for (x, row) in le.iter_mut().enumerate() {
        row[x] = true;
    }
    for row in le[0].iter_mut() {
        *row = true;
    }
    for (line, x, y) in &raw.le {
        let (x, y) = (index(names, x, *line)?, index(names, y, *line)?);
        le[x][y] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if le[i][j] && le[j][i] {
                return Err(err(first, format!("{} and {} are below each other", names[i], names[j])));
            }
        }
    }
    let mut meet = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            let lower: Vec<usize> = (0..n).filter(|&z| le[z][x] && le[z][y]).collect();
            let glb = lower
                .iter()
                .copied()
                .find(|&m| lower.iter().all(|&z| le[z][m]))
                .ok_or_else(|| err(first, format!("{} and {} have no meet", names[x], names[y])))?;
            meet[x][y] = glb;
        }
    }
    Semilattice::new(names.clone(), meet).map_err(|e| err(first, e.to_string()))
}

fn semigroup(raw: &Raw, first: usize) -> Result<TableSemigroup, CliError> {
    let names = &raw.elements;
    if names.is_empty() {
        return Err(err(first, "semigroup table without elements"));
    }
    if raw.rows.len() != names.len() {
        return Err(err(first, format!("{} elements but {} rows", names.len(), raw.rows.len())));
    }
    let mut table = Vec::new();
    for (i, (line, row)) in raw.rows.iter().enumerate() {
        // a row may start with its own element as a label
        let row = match row.split_first() {
            Some((label, rest)) if rest.len() == names.len() => {
                if *label != names[i] {
                    return Err(err(*line, format!("row {} is labelled {label}", names[i])));
                }
                rest
            }
            _ => row.as_slice(),
        };
        if row.len() != names.len() {
            return Err(err(*line, format!("row has {} entries, expected {}", row.len(), names.len())));
        }
        table.push(row.iter().map(|x| index(names, x, *line)).collect::<Result<Vec<_>, _>>()?);
    }
    let mk = |line: usize| move |e: skewgba_core::Error| err(line, e.to_string());
    let mut grades = BTreeMap::new();
    for (l, x, g) in &raw.grades {
        if grades.insert(index(names, x, *l)?, (*l, g.clone())).is_some() {
            return Err(err(*l, format!("{x} graded twice")));
        }
    }
    let group = raw.group.clone().unwrap_or((first, vec!["trivial".into()]));
    let words: Vec<&str> = group.1.iter().map(String::as_str).collect();
    match words.as_slice() {
        ["free", letters @ ..] if !letters.is_empty() => {
            let g = FreeGroup::new(letters.iter().copied()).map_err(mk(group.0))?;
            let mut s = FiniteSemigroup::new(names.clone(), table, g.clone()).map_err(mk(first))?;
            for (x, (l, w)) in grades {
                let toks: Vec<&str> = w.split_whitespace().collect();
                let word = g.reduce_word(&toks).map_err(mk(l))?;
                s.set_grade(x, word).map_err(mk(l))?;
            }
            Ok(TableSemigroup::Free(s))
        }
        ["cyclic", n] => {
            let n: usize = n.parse().ok().filter(|&n| n >= 1).ok_or_else(|| err(group.0, "cyclic expects an order >= 1"))?;
            finite(names, table, FiniteGroup::cyclic(n), grades, first)
        }
        ["trivial"] => finite(names, table, FiniteGroup::trivial(), grades, first),
        _ => Err(err(group.0, "group expects `free <letters>`, `cyclic <n>` or `trivial`")),
    }
}

fn finite(
    names: &[String],
    table: Vec<Vec<usize>>,
    g: FiniteGroup,
    grades: BTreeMap<usize, (usize, String)>,
    first: usize,
) -> Result<TableSemigroup, CliError> {
    let mut s = FiniteSemigroup::new(names.to_vec(), table, g.clone()).map_err(|e| err(first, e.to_string()))?;
    for (x, (l, w)) in grades {
        let d = g.parse(&w).map_err(|e| err(l, e.to_string()))?;
        s.set_grade(x, d).map_err(|e| err(l, e.to_string()))?;
    }
    Ok(TableSemigroup::Finite(s))
}
