//! PBW rewriting for filtered algebras given by generators and commutators
//! of strictly lower filtration degree.
//!
//! Generators are kept in their normal order (filtration degree, then
//! declared index) and referred to by position. A word is normal-ordered
//! when its letters are non-decreasing.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::Budget;
use crate::linalg::{RowEchelon, SparseVec};
use crate::poly::{parse_rational, Coefficient, Monomial, Polynomial, Rational, VariableContext};

pub type Word = Vec<u32>;

/// Linear combination of normal-ordered words.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NcElement {
    terms: BTreeMap<Word, Rational>,
}

impl NcElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(Vec::new(), c);
        e
    }

    pub fn letter(g: u32) -> Self {
        let mut e = Self::zero();
        e.add_term(vec![g], Rational::one());
        e
    }

    /// A single word with coefficient one; the caller guarantees it is normal-ordered.
    pub fn word(w: Word) -> Self {
        let mut e = Self::zero();
        e.add_term(w, Rational::one());
        e
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &[u32]) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&[])
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &NcElement, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> NcElement {
        let mut out = NcElement::zero();
        out.add_scaled(self, c);
        out
    }

    fn from_map(terms: BTreeMap<Word, Rational>) -> Self {
        NcElement {
            terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl std::ops::Add for &NcElement {
    type Output = NcElement;
    fn add(self, rhs: &NcElement) -> NcElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl std::ops::Sub for &NcElement {
    type Output = NcElement;
    fn sub(self, rhs: &NcElement) -> NcElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl std::ops::Neg for &NcElement {
    type Output = NcElement;
    fn neg(self) -> NcElement {
        self.scale(&-Rational::one())
    }
}

impl Coefficient for NcElement {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_coeff(&self, other: &Self) -> Self {
        self + other
    }
    fn scale_coeff(&self, c: &Rational) -> Self {
        self.scale(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NcGenerator {
    pub name: String,
    pub degree: u32,
    /// Name of the commutative variable in the graded image; defaults to `name`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bar: Option<String>,
}

impl NcGenerator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        NcGenerator {
            name: name.into(),
            degree,
            bar: None,
        }
    }

    pub fn with_bar(mut self, bar: impl Into<String>) -> Self {
        self.bar = Some(bar.into());
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteStrategy {
    Leftmost,
    Rightmost,
}

struct Meter {
    used: u64,
    limit: u64,
}

impl Meter {
    fn new(b: Budget) -> Self {
        Meter {
            used: 0,
            limit: b.max_steps,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::NonTerminating { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

/// Generators, their filtration degrees, and the commutator table.
pub struct NcPresentation {
    gens: Vec<NcGenerator>,
    index: HashMap<String, u32>,
    /// `[a, b]` for `a > b`.
    brackets: HashMap<(u32, u32), NcElement>,
    /// Missing pairs commute once the presentation is sealed; before that
    /// a lookup of a missing pair is an error.
    sealed: bool,
    bar: VariableContext,
    cache: Mutex<HashMap<(Word, u32), Arc<NcElement>>>,
}

impl fmt::Debug for NcPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NcPresentation")
            .field("generators", &self.gens)
            .field("brackets", &self.brackets.len())
            .finish()
    }
}

impl Clone for NcPresentation {
    fn clone(&self) -> Self {
        NcPresentation {
            gens: self.gens.clone(),
            index: self.index.clone(),
            brackets: self.brackets.clone(),
            sealed: self.sealed,
            bar: self.bar.clone(),
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl NcPresentation {
    /// An unsealed presentation with no brackets yet; generators are sorted
    /// stably by filtration degree.
    pub fn new(mut gens: Vec<NcGenerator>) -> Result<Self> {
        if gens.iter().any(|g| g.degree == 0) {
            return Err(Error::InvalidPresentation("generator of filtration degree 0".into()));
        }
        gens.sort_by_key(|g| g.degree);
        let mut index = HashMap::new();
        for (i, g) in gens.iter().enumerate() {
            if index.insert(g.name.clone(), i as u32).is_some() {
                return Err(Error::InvalidPresentation(format!("duplicate generator {}", g.name)));
            }
        }
        let bar = VariableContext::new(
            gens.iter()
                .map(|g| g.bar.clone().unwrap_or_else(|| g.name.clone()))
                .collect(),
            gens.iter().map(|g| g.degree).collect(),
        )?;
        Ok(NcPresentation {
            gens,
            index,
            brackets: HashMap::new(),
            sealed: false,
            bar,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// Missing brackets become zero from now on.
    pub fn seal(&mut self) {
        self.sealed = true;
    }

    pub fn is_sealed(&self) -> bool {
        self.sealed
    }

    pub fn generators(&self) -> &[NcGenerator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn name(&self, g: u32) -> &str {
        &self.gens[g as usize].name
    }

    pub fn degree_of(&self, g: u32) -> u32 {
        self.gens[g as usize].degree
    }

    pub fn position(&self, name: &str) -> Result<u32> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn gen(&self, name: &str) -> Result<NcElement> {
        Ok(NcElement::letter(self.position(name)?))
    }

    pub fn letters(&self) -> Vec<NcElement> {
        (0..self.len() as u32).map(NcElement::letter).collect()
    }

    /// Commutative ring of the graded images.
    pub fn bar_context(&self) -> &VariableContext {
        &self.bar
    }

    pub fn word_degree(&self, w: &[u32]) -> u32 {
        w.iter().map(|&g| self.degree_of(g)).sum()
    }

    /// Filtration degree; `None` for zero.
    pub fn degree(&self, a: &NcElement) -> Option<u32> {
        a.terms.keys().map(|w| self.word_degree(w)).max()
    }

    pub fn is_normal(w: &[u32]) -> bool {
        w.windows(2).all(|p| p[0] <= p[1])
    }

    /// Records `[a, b] = expansion`.
    pub fn set_bracket(&mut self, a: u32, b: u32, expansion: NcElement) -> Result<()> {
        let n = self.len() as u32;
        if a >= n || b >= n {
            return Err(Error::InvalidPresentation("generator index out of range".to_string()));
        }
        if let Some(w) = expansion
            .terms
            .keys()
            .find(|w| !Self::is_normal(w) || w.iter().any(|&x| x >= n))
        {
            return Err(Error::InvalidPresentation(format!(
                "expansion word {} is not normal-ordered",
                self.word_string(w)
            )));
        }
        if a == b {
            return if expansion.is_zero() {
                Ok(())
            } else {
                Err(Error::InvalidPresentation(format!(
                    "[{0}, {0}] must vanish",
                    self.name(a)
                )))
            };
        }
        if let Some(d) = self.degree(&expansion) {
            if d >= self.degree_of(a) + self.degree_of(b) {
                return Err(Error::InvalidPresentation(format!(
                    "[{}, {}] has degree {d}, not below {}",
                    self.name(a),
                    self.name(b),
                    self.degree_of(a) + self.degree_of(b)
                )));
            }
        }
        let (key, value) = if a > b {
            ((a, b), expansion)
        } else {
            ((b, a), -&expansion)
        };
        if let Some(old) = self.brackets.get(&key) {
            if *old != value {
                return Err(Error::InvalidPresentation(format!(
                    "conflicting brackets for {} and {}",
                    self.name(key.0),
                    self.name(key.1)
                )));
            }
        }
        self.brackets.insert(key, value);
        Ok(())
    }

    /// `[a, b]` for generators, read from the table.
    pub fn bracket(&self, a: u32, b: u32) -> Result<NcElement> {
        if a == b {
            return Ok(NcElement::zero());
        }
        let (key, sign) = if a > b { ((a, b), 1) } else { ((b, a), -1) };
        match self.brackets.get(&key) {
            Some(e) if sign == 1 => Ok(e.clone()),
            Some(e) => Ok(-e),
            None if self.sealed => Ok(NcElement::zero()),
            None => Err(Error::InvalidPresentation(format!(
                "bracket [{}, {}] not yet defined",
                self.name(key.0),
                self.name(key.1)
            ))),
        }
    }

    pub fn defined_brackets(&self) -> impl Iterator<Item = (&(u32, u32), &NcElement)> {
        self.brackets.iter()
    }

    // --- normal forms -------------------------------------------------

    /// Normal form of `u · x` for a normal-ordered `u`.
    fn insert(&self, u: &[u32], x: u32, meter: &mut Meter) -> Result<Arc<NcElement>> {
        match u.last() {
            None => return Ok(Arc::new(NcElement::letter(x))),
            Some(&y) if y <= x => {
                let mut w = u.to_vec();
                w.push(x);
                let mut e = NcElement::zero();
                e.add_term(w, Rational::one());
                return Ok(Arc::new(e));
            }
            _ => {}
        }
        let key = (u.to_vec(), x);
        if let Some(hit) = self.cache.lock().expect("cache poisoned").get(&key) {
            return Ok(hit.clone());
        }
        meter.tick()?;
        let (&y, head) = u.split_last().expect("nonempty");
        // u' y x = (u' x) y + u' [y, x]
        let first = self.insert(head, x, meter)?;
        let mut out = self.mul_letter(&first, y, meter)?;
        let br = self.bracket(y, x)?;
        if !br.is_zero() {
            let tail = self.mul_word_elem(head, &br, meter)?;
            out.add_scaled(&tail, &Rational::one());
        }
        let out = Arc::new(out);
        self.cache.lock().expect("cache poisoned").insert(key, out.clone());
        Ok(out)
    }

    fn mul_letter(&self, a: &NcElement, x: u32, meter: &mut Meter) -> Result<NcElement> {
        let mut out = NcElement::zero();
        for (w, c) in &a.terms {
            out.add_scaled(&*self.insert(w, x, meter)?, c);
        }
        Ok(out)
    }

    fn mul_word_elem(&self, u: &[u32], b: &NcElement, meter: &mut Meter) -> Result<NcElement> {
        let mut out = NcElement::zero();
        let start = NcElement::from_map(BTreeMap::from([(u.to_vec(), Rational::one())]));
        for (w, c) in &b.terms {
            let mut acc = start.clone();
            for &x in w {
                acc = self.mul_letter(&acc, x, meter)?;
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    fn mul_with(&self, a: &NcElement, b: &NcElement, meter: &mut Meter) -> Result<NcElement> {
        let mut out = NcElement::zero();
        for (w, c) in &b.terms {
            let mut acc = a.clone();
            for &x in w {
                acc = self.mul_letter(&acc, x, meter)?;
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    /// PBW normal form of a raw word.
    pub fn pbw_normal_form(&self, word: &[u32], budget: Budget) -> Result<NcElement> {
        let n = self.len() as u32;
        if let Some(&g) = word.iter().find(|&&g| g >= n) {
            return Err(Error::UnknownGenerator(format!("index {g}")));
        }
        let mut meter = Meter::new(budget);
        let mut acc = NcElement::one();
        for &x in word {
            acc = self.mul_letter(&acc, x, &mut meter)?;
        }
        Ok(acc)
    }

    pub fn pbw_normal_form_named(&self, word: &[&str], budget: Budget) -> Result<NcElement> {
        let w = word.iter().map(|n| self.position(n)).collect::<Result<Vec<_>>>()?;
        self.pbw_normal_form(&w, budget)
    }

    /// Normal form of `a · b`.
    pub fn mul(&self, a: &NcElement, b: &NcElement, budget: Budget) -> Result<NcElement> {
        self.mul_with(a, b, &mut Meter::new(budget))
    }

    /// Left-to-right product of several factors.
    pub fn product(&self, factors: &[NcElement], budget: Budget) -> Result<NcElement> {
        let mut meter = Meter::new(budget);
        let mut acc = NcElement::one();
        for f in factors {
            acc = self.mul_with(&acc, f, &mut meter)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, a: &NcElement, e: u32, budget: Budget) -> Result<NcElement> {
        let mut meter = Meter::new(budget);
        let mut acc = NcElement::one();
        for _ in 0..e {
            acc = self.mul_with(&acc, a, &mut meter)?;
        }
        Ok(acc)
    }

    /// Normal form of `ab - ba`.
    pub fn commutator(&self, a: &NcElement, b: &NcElement, budget: Budget) -> Result<NcElement> {
        let mut meter = Meter::new(budget);
        let ab = self.mul_with(a, b, &mut meter)?;
        let ba = self.mul_with(b, a, &mut meter)?;
        Ok(&ab - &ba)
    }

    /// True iff `z` commutes with every element of `gens`.
    pub fn is_central(&self, z: &NcElement, gens: &[NcElement], budget: Budget) -> Result<bool> {
        for g in gens {
            if !self.commutator(z, g, budget)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Centrality against all generators.
    pub fn is_central_all(&self, z: &NcElement, budget: Budget) -> Result<bool> {
        self.is_central(z, &self.letters(), budget)
    }

    /// Normal form by repeatedly swapping one out-of-order adjacent pair,
    /// using only the bracket table. Independent of [`Self::pbw_normal_form`].
    pub fn naive_normal_form(&self, word: &[u32], strategy: RewriteStrategy, budget: Budget) -> Result<NcElement> {
        let mut meter = Meter::new(budget);
        let mut pending: BTreeMap<Word, Rational> = BTreeMap::from([(word.to_vec(), Rational::one())]);
        let mut done = NcElement::zero();
        while let Some((w, c)) = pending.pop_first() {
            let mut swaps = w.windows(2).enumerate().filter(|(_, p)| p[0] > p[1]).map(|(i, _)| i);
            let pos = match strategy {
                RewriteStrategy::Leftmost => swaps.next(),
                RewriteStrategy::Rightmost => swaps.next_back(),
            };
            let Some(i) = pos else {
                done.add_term(w, c);
                continue;
            };
            meter.tick()?;
            let (a, b) = (w[i], w[i + 1]);
            let mut swapped = w.clone();
            swapped.swap(i, i + 1);
            let mut add = |k: Word, v: Rational| {
                let e = pending.entry(k.clone()).or_insert_with(Rational::zero);
                *e += v;
                if e.is_zero() {
                    pending.remove(&k);
                }
            };
            add(swapped, c.clone());
            for (v, x) in &self.bracket(a, b)?.terms {
                let mut nw = w[..i].to_vec();
                nw.extend_from_slice(v);
                nw.extend_from_slice(&w[i + 2..]);
                add(nw, &c * x);
            }
        }
        Ok(done)
    }

    /// Top filtration-degree part of `a`, as a commutative polynomial.
    pub fn graded_image(&self, a: &NcElement) -> Result<Polynomial> {
        let top = self.degree(a).ok_or(Error::ZeroElement)?;
        let terms = a
            .terms
            .iter()
            .filter(|(w, _)| self.word_degree(w) == top)
            .map(|(w, c)| (self.word_monomial(w), c.clone()));
        Ok(Polynomial::from_terms(&self.bar, terms))
    }

    pub fn word_monomial(&self, w: &[u32]) -> Monomial {
        let mut e = vec![0u32; self.len()];
        for &g in w {
            e[g as usize] += 1;
        }
        Monomial::from_exponents(e)
    }

    /// The normal-ordered word whose letters are the variables of `m`.
    pub fn lift_monomial(&self, m: &Monomial) -> Word {
        let mut w = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            w.extend(std::iter::repeat_n(i as u32, e as usize));
        }
        w
    }

    /// All normal-ordered words of filtration degree at most `max_degree`,
    /// sorted by degree and then lexicographically.
    pub fn pbw_monomials(&self, max_degree: u32) -> Vec<Word> {
        fn go(p: &NcPresentation, start: u32, left: u32, cur: &mut Word, out: &mut Vec<Word>) {
            out.push(cur.clone());
            for g in start..p.len() as u32 {
                let d = p.degree_of(g);
                if d <= left {
                    cur.push(g);
                    go(p, g, left - d, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, 0, max_degree, &mut Vec::new(), &mut out);
        out.sort_by(|a, b| self.word_degree(a).cmp(&self.word_degree(b)).then_with(|| a.cmp(b)));
        out
    }

    /// Whether `1` stays outside the span of `u·g` with `deg u + deg g ≤ cutoff`.
    pub fn left_ideal_truncated_properness(&self, gens: &[NcElement], cutoff: u32, budget: Budget) -> Result<bool> {
        let mut coords: HashMap<Word, usize> = HashMap::new();
        let mut span = RowEchelon::new();
        let mut meter = Meter::new(budget);
        coords.insert(Vec::new(), 0);
        for g in gens {
            let Some(dg) = self.degree(g) else { continue };
            if dg > cutoff {
                continue;
            }
            for u in self.pbw_monomials(cutoff - dg) {
                let ug = self.mul_word_elem(&u, g, &mut meter)?;
                let mut v = SparseVec::new();
                for (w, c) in &ug.terms {
                    let next = coords.len();
                    let i = *coords.entry(w.clone()).or_insert(next);
                    v.insert(i, c.clone());
                }
                span.insert(v);
            }
        }
        Ok(!span.contains(&SparseVec::from([(0, Rational::one())])))
    }

    // --- text -----------------------------------------------------------

    pub fn word_string(&self, w: &[u32]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&g| self.name(g)).collect::<Vec<_>>().join("*")
    }

    /// Terms by decreasing degree, each as `coeff*word`.
    pub fn format(&self, a: &NcElement) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<(&Word, &Rational)> = a.terms.iter().collect();
        terms.sort_by(|x, y| {
            self.word_degree(y.0)
                .cmp(&self.word_degree(x.0))
                .then_with(|| x.0.cmp(y.0))
        });
        let mut s = String::new();
        for (k, (w, c)) in terms.into_iter().enumerate() {
            let neg = *c < Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if w.is_empty() {
                s.push_str(&mag.to_string());
            } else if mag.is_one() {
                s.push_str(&self.word_string(w));
            } else {
                s.push_str(&format!("{mag}*{}", self.word_string(w)));
            }
        }
        s
    }

    /// Parses `c*a*b^2 - d + 3/2` style sums; products are normal-ordered.
    pub fn parse_element(&self, src: &str, budget: Budget) -> Result<NcElement> {
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty element".into()));
        }
        let mut out = NcElement::zero();
        let mut rest = s.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let mut sign = Rational::one();
            if let Some(r) = rest.strip_prefix('-') {
                sign = -sign;
                rest = r;
            } else if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if !first {
                return Err(Error::Parse(format!("expected + or - before `{rest}`")));
            }
            first = false;
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            rest = &rest[end..];
            let mut coeff = sign;
            let mut word = Vec::new();
            for factor in term.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in `{term}`")));
                }
                if factor.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                    coeff *= parse_rational(factor)?;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
                    ),
                    None => (factor, 1),
                };
                let g = self.position(name)?;
                word.extend(std::iter::repeat_n(g, exp));
            }
            let nf = self.pbw_normal_form(&word, budget)?;
            out.add_scaled(&nf, &coeff);
        }
        Ok(out)
    }

    // --- JSON -----------------------------------------------------------

    pub fn element_to_json(&self, a: &NcElement) -> Vec<NcTermJson> {
        a.terms
            .iter()
            .map(|(w, c)| NcTermJson {
                coeff: c.to_string(),
                word: w.iter().map(|&g| self.name(g).to_string()).collect(),
            })
            .collect()
    }

    /// Reads terms whose words may be in any order; they are normal-ordered.
    pub fn element_from_json(&self, terms: &[NcTermJson], budget: Budget) -> Result<NcElement> {
        let mut out = NcElement::zero();
        for t in terms {
            let w = t.word.iter().map(|n| self.position(n)).collect::<Result<Vec<_>>>()?;
            let c = parse_rational(&t.coeff)?;
            out.add_scaled(&self.pbw_normal_form(&w, budget)?, &c);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> NcPresentationJson {
        let mut keys: Vec<&(u32, u32)> = self.brackets.keys().collect();
        keys.sort();
        NcPresentationJson {
            schema: crate::SCHEMA.to_string(),
            generators: self.gens.clone(),
            relations: keys
                .into_iter()
                .filter(|k| !self.brackets[k].is_zero())
                .map(|k| NcRelationJson {
                    pair: [self.name(k.0).to_string(), self.name(k.1).to_string()],
                    expansion: self.element_to_json(&self.brackets[k]),
                })
                .collect(),
        }
    }

    /// Builds a sealed presentation; expansions must be normal-ordered.
    pub fn from_json(j: &NcPresentationJson) -> Result<Self> {
        let mut p = NcPresentation::new(j.generators.clone())?;
        for r in &j.relations {
            let a = p.position(&r.pair[0])?;
            let b = p.position(&r.pair[1])?;
            let mut e = NcElement::zero();
            for t in &r.expansion {
                let w = t.word.iter().map(|n| p.position(n)).collect::<Result<Vec<_>>>()?;
                e.add_term(w, parse_rational(&t.coeff)?);
            }
            p.set_bracket(a, b, e)?;
        }
        p.seal();
        Ok(p)
    }

    /// `U(sl_2)` with order `e < h < f`.
    pub fn sl2() -> Self {
        let mut p = NcPresentation::new(vec![
            NcGenerator::new("e", 1),
            NcGenerator::new("h", 1),
            NcGenerator::new("f", 1),
        ])
        .expect("valid generators");
        let (e, h, f) = (0, 1, 2);
        let two = Rational::from_integer(2.into());
        p.set_bracket(h, e, NcElement::letter(e).scale(&two)).expect("valid");
        p.set_bracket(f, e, -&NcElement::letter(h)).expect("valid");
        p.set_bracket(f, h, NcElement::letter(f).scale(&two)).expect("valid");
        p.seal();
        p
    }

    /// Enveloping algebra of a Lie algebra with basis `names` (all of degree
    /// one) and bracket `[x_a, x_b] = Σ c x_k` given by `structure(a, b)`.
    pub fn enveloping<F>(gens: Vec<NcGenerator>, mut structure: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Vec<(usize, Rational)>,
    {
        let mut p = NcPresentation::new(gens.clone())?;
        let pos: Vec<u32> = gens.iter().map(|g| p.position(&g.name)).collect::<Result<_>>()?;
        for a in 0..gens.len() {
            for b in 0..a {
                let mut e = NcElement::zero();
                for (k, c) in structure(a, b) {
                    e.add_term(vec![pos[k]], c);
                }
                p.set_bracket(pos[a], pos[b], e)?;
            }
        }
        p.seal();
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NcTermJson {
    pub coeff: String,
    pub word: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NcRelationJson {
    pub pair: [String; 2],
    pub expansion: Vec<NcTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NcPresentationJson {
    #[serde(default = "crate::algebra::schema_tag")]
    pub schema: String,
    pub generators: Vec<NcGenerator>,
    #[serde(default)]
    pub relations: Vec<NcRelationJson>,
}
