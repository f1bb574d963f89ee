//! Exact multivariate polynomials over the rationals with weighted gradings.
//!
//! Every [`Polynomial`] is tied to a [`VariableContext`] listing the variable
//! names and their positive integer weights. Terms are kept sorted in the
//! canonical order (weighted degree, then reverse lexicographic), so two
//! polynomials are equal iff their term lists are equal.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Integer as a rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den` as a rational.
pub fn qf(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad rational `{s}`")))
}

#[derive(Debug, PartialEq, Eq)]
struct ContextData {
    names: Vec<String>,
    weights: Vec<u32>,
}

/// Variable names and weights shared by a family of polynomials.
///
/// Cloning is cheap; equality is structural.
#[derive(Clone)]
pub struct VariableContext(Arc<ContextData>);

impl VariableContext {
    pub fn new(names: Vec<String>, weights: Vec<u32>) -> Result<Self> {
        if names.len() != weights.len() {
            return Err(Error::InvalidContext(format!(
                "{} names but {} weights",
                names.len(),
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidContext(format!("variable `{}` has weight 0", names[w])));
        }
        let mut seen = std::collections::HashSet::new();
        for n in &names {
            if n.is_empty() || !seen.insert(n.as_str()) {
                return Err(Error::InvalidContext(format!("duplicate or empty name `{n}`")));
            }
        }
        Ok(VariableContext(Arc::new(ContextData { names, weights })))
    }

    /// Standard-graded context with the given names.
    pub fn standard<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let weights = vec![1; names.len()];
        Self::new(names, weights)
    }

    /// `X1, …, Xn`, all of weight 1.
    pub fn numbered(prefix: &str, n: usize) -> Self {
        let names = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        Self::new(names, vec![1; n]).expect("numbered names are distinct")
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.0.weights
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0.names[i]
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.0.weights[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    /// Context on a subset of the variables, keeping names and weights.
    pub fn subcontext(&self, keep: &[usize]) -> Result<Self> {
        let names = keep.iter().map(|&i| self.0.names[i].clone()).collect();
        let weights = keep.iter().map(|&i| self.0.weights[i]).collect();
        Self::new(names, weights)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self, i)
    }

    pub fn var_named(&self, name: &str) -> Result<Polynomial> {
        let i = self
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.var(i))
    }

    /// All variables, in index order.
    pub fn vars(&self) -> Vec<Polynomial> {
        (0..self.len()).map(|i| self.var(i)).collect()
    }
}

impl PartialEq for VariableContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for VariableContext {}

impl fmt::Debug for VariableContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(
                self.0
                    .names
                    .iter()
                    .zip(&self.0.weights)
                    .map(|(n, w)| format!("{n}:{w}")),
            )
            .finish()
    }
}

/// Exponent vector, one entry per variable of the owning context.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    /// Bitmask of the support (contexts with at most 64 variables).
    pub fn support_mask(&self) -> u64 {
        self.support().fold(0u64, |m, i| m | (1u64 << i))
    }
}

/// Monomial orders understood by the Gröbner engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonomialOrder {
    /// Total degree, ties broken reverse lexicographically.
    #[default]
    Degrevlex,
    Lex,
    /// Weighted degree from the context, ties reverse lexicographic.
    WeightedDegrevlex,
}

impl MonomialOrder {
    pub const ALL: [MonomialOrder; 3] = [
        MonomialOrder::Degrevlex,
        MonomialOrder::Lex,
        MonomialOrder::WeightedDegrevlex,
    ];

    pub fn cmp(&self, a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Degrevlex => a.total_degree().cmp(&b.total_degree()).then_with(|| revlex(a, b)),
            MonomialOrder::WeightedDegrevlex => a
                .weighted_degree(weights)
                .cmp(&b.weighted_degree(weights))
                .then_with(|| revlex(a, b)),
        }
    }

    /// The "sugar" degree used to rank critical pairs under this order.
    pub fn degree(&self, m: &Monomial, weights: &[u32]) -> u32 {
        match self {
            MonomialOrder::WeightedDegrevlex => m.weighted_degree(weights),
            _ => m.total_degree(),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            MonomialOrder::Degrevlex => "degrevlex",
            MonomialOrder::Lex => "lex",
            MonomialOrder::WeightedDegrevlex => "weighted-degrevlex",
        }
    }
}

fn revlex(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.0.iter().zip(&b.0).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "degrevlex" => Ok(MonomialOrder::Degrevlex),
            "lex" => Ok(MonomialOrder::Lex),
            "weighted-degrevlex" => Ok(MonomialOrder::WeightedDegrevlex),
            other => Err(Error::Parse(format!("unknown monomial order `{other}`"))),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

const CANONICAL: MonomialOrder = MonomialOrder::WeightedDegrevlex;

/// Result of [`Polynomial::weighted_degree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Homogeneous(u32),
    Inhomogeneous { max: u32 },
}

impl Degree {
    pub fn max(&self) -> u32 {
        match *self {
            Degree::Homogeneous(d) => d,
            Degree::Inhomogeneous { max } => max,
        }
    }

    pub fn homogeneous(&self) -> Option<u32> {
        match *self {
            Degree::Homogeneous(d) => Some(d),
            Degree::Inhomogeneous { .. } => None,
        }
    }
}

/// Polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ctx: VariableContext,
    /// Nonzero terms, strictly decreasing in the canonical order.
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(ctx: &VariableContext) -> Self {
        Polynomial {
            ctx: ctx.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ctx: &VariableContext) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &VariableContext, c: Rational) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.push((Monomial::one(ctx.len()), c));
        }
        p
    }

    pub fn var(ctx: &VariableContext, i: usize) -> Self {
        let mut e = vec![0; ctx.len()];
        e[i] = 1;
        Self::monomial(ctx, Monomial(e), Rational::one())
    }

    pub fn monomial(ctx: &VariableContext, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), ctx.len(), "monomial arity does not match context");
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Collects arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I>(ctx: &VariableContext, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), ctx.len(), "monomial arity does not match context");
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(ctx, acc)
    }

    fn from_map(ctx: &VariableContext, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let w = ctx.weights();
        terms.sort_by(|a, b| CANONICAL.cmp(&b.0, &a.0, w));
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    pub fn context(&self) -> &VariableContext {
        &self.ctx
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    /// Number of terms; see [`Polynomial::is_zero`] for emptiness.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The constant coefficient.
    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Leading term under `order`.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Rational)> {
        let w = self.ctx.weights();
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0, w))
            .map(|(m, c)| (m, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    /// Weighted degree, or the maximum degree if the polynomial is not homogeneous.
    pub fn weighted_degree(&self) -> Result<Degree> {
        let w = self.ctx.weights();
        let mut degs = self.terms.iter().map(|(m, _)| m.weighted_degree(w));
        let first = degs.next().ok_or(Error::ZeroPolynomial)?;
        let (lo, hi) = degs.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d)));
        Ok(if lo == hi {
            Degree::Homogeneous(hi)
        } else {
            Degree::Inhomogeneous { max: hi }
        })
    }

    /// Largest weighted degree of a term; `None` for zero.
    pub fn max_weighted_degree(&self) -> Option<u32> {
        self.weighted_degree().ok().map(|d| d.max())
    }

    pub fn is_homogeneous(&self) -> bool {
        matches!(self.weighted_degree(), Ok(Degree::Homogeneous(_)) | Err(_))
    }

    pub fn homogeneous_components(&self) -> BTreeMap<u32, Polynomial> {
        let w = self.ctx.weights();
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        // canonical order is degree-first, so each component stays sorted
        for (m, c) in &self.terms {
            out.entry(m.weighted_degree(w))
                .or_insert_with(|| Polynomial::zero(&self.ctx))
                .terms
                .push((m.clone(), c.clone()));
        }
        out
    }

    /// The homogeneous component of top weighted degree.
    pub fn top_component(&self) -> Polynomial {
        self.homogeneous_components()
            .into_iter()
            .next_back()
            .map(|(_, p)| p)
            .unwrap_or_else(|| Polynomial::zero(&self.ctx))
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        // multiplying by a monomial preserves the canonical order
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn check_same(&self, other: &Polynomial) {
        assert!(
            self.ctx == other.ctx,
            "polynomial arithmetic across different contexts: {:?} vs {:?}",
            self.ctx,
            other.ctx
        );
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(self.merge(other, false))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let w = self.ctx.weights();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                CANONICAL.cmp(&a[i].0, &b[j].0, w)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: out,
        }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        Self::from_map(&self.ctx, acc)
    }

    /// Simultaneous substitution `X_i -> assignment[i]`; unassigned variables stay.
    pub fn substitute(&self, assignment: &BTreeMap<usize, Polynomial>) -> Result<Polynomial> {
        for (&i, img) in assignment {
            if i >= self.ctx.len() {
                return Err(Error::UnknownVariable(format!("index {i}")));
            }
            if img.ctx != self.ctx {
                return Err(Error::ContextMismatch);
            }
        }
        let mut acc = Polynomial::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut kept = m.clone();
            let mut term = Polynomial::one(&self.ctx);
            for (&i, img) in assignment {
                let e = m.0[i];
                if e > 0 {
                    kept.0[i] = 0;
                    term = &term * &img.pow(e);
                }
            }
            acc = &acc + &term.mul_monomial(&kept, c);
        }
        Ok(acc)
    }

    /// Substitution by variable names; images live in the same context.
    pub fn substitute_named(&self, assignment: &[(&str, Polynomial)]) -> Result<Polynomial> {
        let mut map = BTreeMap::new();
        for (name, img) in assignment {
            let i = self
                .ctx
                .index_of(name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            map.insert(i, img.clone());
        }
        self.substitute(&map)
    }

    /// Sends every listed variable to zero.
    pub fn kill_variables(&self, vars: &[usize]) -> Result<Polynomial> {
        let zero = Polynomial::zero(&self.ctx);
        let map = vars.iter().map(|&i| (i, zero.clone())).collect();
        self.substitute(&map)
    }

    /// Re-expresses the polynomial in `target`, matching variables by name.
    ///
    /// Fails with `UnknownVariable` if a variable that actually occurs is
    /// missing from `target`.
    pub fn embed_into(&self, target: &VariableContext) -> Result<Polynomial> {
        let map: Vec<Option<usize>> = self.ctx.names().iter().map(|n| target.index_of(n)).collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for i in m.support() {
                let j = map[i].ok_or_else(|| Error::UnknownVariable(self.ctx.name(i).to_string()))?;
                e[j] = m.0[i];
            }
            terms.push((Monomial(e), c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let terms = self.terms.iter().filter(|(m, _)| m.0[i] > 0).map(|(m, c)| {
            let mut e = m.clone();
            e.0[i] -= 1;
            (e, c * q(m.0[i] as i64))
        });
        Polynomial::from_terms(&self.ctx, terms)
    }

    /// Evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ctx.len());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Variables occurring in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut mask = vec![false; self.ctx.len()];
        for (m, _) in &self.terms {
            for i in m.support() {
                mask[i] = true;
            }
        }
        (0..mask.len()).filter(|&i| mask[i]).collect()
    }

    /// Parses expressions like `h^2 + 4*e*f - 3/2*X1*(X2 + 1)^2`.
    pub fn parse(ctx: &VariableContext, src: &str) -> Result<Polynomial> {
        let mut p = Parser {
            ctx,
            chars: src.chars().collect(),
            pos: 0,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(Error::Parse(format!(
                "unexpected `{}` at offset {} in `{src}`",
                p.chars[p.pos], p.pos
            )));
        }
        Ok(out)
    }
}

struct Parser<'a> {
    ctx: &'a VariableContext,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.ctx);
        let mut sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -1
            }
            Some('+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(Error::Parse("division by zero".into()));
                    }
                    acc = acc.scale(&Rational::new(BigInt::one(), d));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| Error::Parse("exponent out of range".into()))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected integer at offset {start}")));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| Error::Parse(format!("bad integer `{s}`")))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse(format!("expected `)` at offset {}", self.pos)));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Polynomial::constant(self.ctx, Rational::from_integer(n)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                self.ctx.var_named(&name)
            }
            other => Err(Error::Parse(format!("unexpected {:?} at offset {}", other, self.pos))),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_same(rhs);
        self.merge(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.check_same(rhs);
        self.merge(rhs, true)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_same(rhs);
        self.product(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                factors.push(a.to_string());
            }
            for i in m.support() {
                let e = m.0[i];
                if e == 1 {
                    factors.push(self.ctx.name(i).to_string());
                } else {
                    factors.push(format!("{}^{}", self.ctx.name(i), e));
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Coefficient rings usable inside a [`UPolynomial`].
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn is_zero_coeff(&self) -> bool;
    fn add_coeff(&self, other: &Self) -> Self;
    fn scale_coeff(&self, c: &Rational) -> Self;
}

impl Coefficient for Polynomial {
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

/// Polynomial in a central variable `u`; `coeffs[k]` multiplies `u^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct UPolynomial<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> UPolynomial<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero_coeff()) {
            coeffs.pop();
        }
        UPolynomial { coeffs }
    }

    /// `c * u^k`.
    pub fn term(c: C, k: usize) -> Self {
        let zero = c.scale_coeff(&Rational::zero());
        let mut v = vec![zero; k];
        v.push(c);
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `u`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Option<&C> {
        self.coeffs.get(k)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => a.add_coeff(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.scale_coeff(c)).collect())
    }

    /// Product, with the coefficient multiplication supplied by the caller
    /// (`a` from `self` always on the left).
    pub fn try_mul<F>(&self, other: &Self, mut mul: F) -> Result<Self>
    where
        F: FnMut(&C, &C) -> Result<C>,
    {
        if self.is_zero() || other.is_zero() {
            return Ok(UPolynomial { coeffs: Vec::new() });
        }
        let mut out: Vec<Option<C>> = vec![None; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_coeff() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero_coeff() {
                    continue;
                }
                let p = mul(a, b)?;
                out[i + j] = Some(match out[i + j].take() {
                    Some(acc) => acc.add_coeff(&p),
                    None => p,
                });
            }
        }
        let zero = self.coeffs[0].scale_coeff(&Rational::zero());
        Ok(Self::new(
            out.into_iter().map(|c| c.unwrap_or_else(|| zero.clone())).collect(),
        ))
    }

    /// `p(u - shift)`, expanded over the rationals.
    pub fn shifted(&self, shift: &Rational) -> Self {
        let Some(zero) = self.coeffs.first().map(|c| c.scale_coeff(&Rational::zero())) else {
            return self.clone();
        };
        let n = self.coeffs.len();
        let mut out = vec![zero; n];
        for (k, a) in self.coeffs.iter().enumerate() {
            // (u - s)^k = sum_i C(k,i) (-s)^(k-i) u^i
            let mut binom = BigInt::one();
            for i in (0..=k).rev() {
                let e = (k - i) as u32;
                let mut f = Rational::from_integer(binom.clone());
                for _ in 0..e {
                    f *= -shift;
                }
                out[i] = out[i].add_coeff(&a.scale_coeff(&f));
                // C(k, i-1) = C(k, i) * i / (k - i + 1)
                if i > 0 {
                    binom = binom * BigInt::from(i) / BigInt::from(k - i + 1);
                }
            }
        }
        Self::new(out)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VarJson {
    pub name: String,
    pub weight: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<u32>,
}

/// Wire format of a polynomial.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolynomialJson {
    pub vars: Vec<VarJson>,
    pub terms: Vec<TermJson>,
}

pub fn context_to_json(ctx: &VariableContext) -> Vec<VarJson> {
    ctx.names()
        .iter()
        .zip(ctx.weights())
        .map(|(n, &w)| VarJson {
            name: n.clone(),
            weight: w,
        })
        .collect()
}

pub fn context_from_json(vars: &[VarJson]) -> Result<VariableContext> {
    VariableContext::new(
        vars.iter().map(|v| v.name.clone()).collect(),
        vars.iter().map(|v| v.weight).collect(),
    )
}

pub fn terms_to_json(p: &Polynomial) -> Vec<TermJson> {
    p.terms
        .iter()
        .map(|(m, c)| TermJson {
            coeff: c.to_string(),
            exps: m.0.clone(),
        })
        .collect()
}

pub fn terms_from_json(ctx: &VariableContext, terms: &[TermJson]) -> Result<Polynomial> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        if t.exps.len() != ctx.len() {
            return Err(Error::Parse(format!(
                "term has {} exponents, context has {} variables",
                t.exps.len(),
                ctx.len()
            )));
        }
        out.push((Monomial(t.exps.clone()), parse_rational(&t.coeff)?));
    }
    Ok(Polynomial::from_terms(ctx, out))
}

impl From<&Polynomial> for PolynomialJson {
    fn from(p: &Polynomial) -> Self {
        PolynomialJson {
            vars: context_to_json(&p.ctx),
            terms: terms_to_json(p),
        }
    }
}

impl TryFrom<PolynomialJson> for Polynomial {
    type Error = Error;
    fn try_from(j: PolynomialJson) -> Result<Self> {
        let ctx = context_from_json(&j.vars)?;
        terms_from_json(&ctx, &j.terms)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolynomialJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PolynomialJson::deserialize(d)?;
        Polynomial::try_from(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx3() -> VariableContext {
        VariableContext::numbered("X", 3)
    }

    #[test]
    fn weighted_degree_examples() {
        let c = VariableContext::standard(&["X1", "X2"]).unwrap();
        let p = Polynomial::parse(&c, "X1*X2").unwrap();
        assert_eq!(p.weighted_degree().unwrap(), Degree::Homogeneous(2));

        let w = VariableContext::new(vec!["X_2".into()], vec![2]).unwrap();
        assert_eq!(w.var(0).weighted_degree().unwrap(), Degree::Homogeneous(2));

        let c1 = VariableContext::numbered("X", 1);
        let p = Polynomial::parse(&c1, "X1 + X1^2").unwrap();
        assert_eq!(p.weighted_degree().unwrap(), Degree::Inhomogeneous { max: 2 });
        assert_eq!(Polynomial::zero(&c1).weighted_degree(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn components() {
        let c1 = VariableContext::numbered("X", 1);
        assert!(Polynomial::zero(&c1).homogeneous_components().is_empty());
        let p = Polynomial::parse(&c1, "X1 + X1^2").unwrap();
        let comps = p.homogeneous_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[&1], c1.var(0));
        assert_eq!(comps[&2], c1.var(0).pow(2));

        let sl2 = VariableContext::standard(&["e", "h", "f"]).unwrap();
        let cas = Polynomial::parse(&sl2, "h^2 + 4*e*f").unwrap();
        let comps = cas.homogeneous_components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[&2], cas);
    }

    #[test]
    fn substitution_examples() {
        let c = ctx3();
        let p = Polynomial::parse(&c, "X1*X2 + X3").unwrap();
        assert_eq!(p.kill_variables(&[0]).unwrap(), c.var(2));
        assert_eq!(p.substitute(&BTreeMap::new()).unwrap(), p);
        let bad = BTreeMap::from([(7usize, c.var(0))]);
        assert!(matches!(p.substitute(&bad), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn embed_by_name() {
        let c = ctx3();
        let sub = c.subcontext(&[1, 2]).unwrap();
        let p = Polynomial::parse(&c, "X2^2 - 3*X3").unwrap();
        let e = p.embed_into(&sub).unwrap();
        assert_eq!(e, Polynomial::parse(&sub, "X2^2 - 3*X3").unwrap());
        assert!(c.var(0).embed_into(&sub).is_err());
    }

    #[test]
    fn derivative_and_eval() {
        let c = ctx3();
        let p = Polynomial::parse(&c, "X1^3*X2 - 2*X2 + 5").unwrap();
        assert_eq!(p.derivative(0), Polynomial::parse(&c, "3*X1^2*X2").unwrap());
        assert_eq!(p.eval(&[q(2), q(1), q(0)]), q(11));
    }

    #[test]
    fn parse_and_display() {
        let c = ctx3();
        let p = Polynomial::parse(&c, "-(X1 - X2)^2 + 3/2*X3").unwrap();
        assert_eq!(p, Polynomial::parse(&c, "-X1^2 + 2*X1*X2 - X2^2 + 3/2*X3").unwrap());
        let shown = p.to_string();
        assert_eq!(Polynomial::parse(&c, &shown).unwrap(), p);
        assert!(Polynomial::parse(&c, "X4").is_err());
        assert!(Polynomial::parse(&c, "X1 +").is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = VariableContext::new(vec!["X11_1".into(), "X11_2".into()], vec![1, 2]).unwrap();
        let p = Polynomial::parse(&c, "3/2*X11_1^2 - X11_2").unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"coeff\":\"3/2\""));
        assert!(s.contains("\"weight\":2"));
        let back: Polynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn context_validation() {
        assert!(VariableContext::new(vec!["a".into()], vec![0]).is_err());
        assert!(VariableContext::new(vec!["a".into(), "a".into()], vec![1, 1]).is_err());
        assert!(VariableContext::new(vec!["a".into()], vec![1, 2]).is_err());
    }

    #[test]
    fn upoly_shift_matches_binomial() {
        let c = VariableContext::numbered("X", 1);
        let x = c.var(0);
        // u^2 + X u  shifted by 1: (u-1)^2 + X(u-1) = u^2 + (X-2)u + (1-X)
        let p = UPolynomial::new(vec![Polynomial::zero(&c), x.clone(), Polynomial::one(&c)]);
        let s = p.shifted(&q(1));
        assert_eq!(s.coeffs()[0], Polynomial::parse(&c, "1 - X1").unwrap());
        assert_eq!(s.coeffs()[1], Polynomial::parse(&c, "X1 - 2").unwrap());
        assert_eq!(s.coeffs()[2], Polynomial::one(&c));
    }

    #[test]
    fn monomial_orders() {
        let w = [1, 1, 1];
        let a = Monomial::from_exponents(vec![1, 0, 1]);
        let b = Monomial::from_exponents(vec![0, 2, 0]);
        // degrevlex: x1*x3 < x2^2 (smaller last exponent wins)
        assert_eq!(MonomialOrder::Degrevlex.cmp(&a, &b, &w), Ordering::Less);
        assert_eq!(MonomialOrder::Lex.cmp(&a, &b, &w), Ordering::Greater);
        let ww = [1, 3, 1];
        assert_eq!(MonomialOrder::WeightedDegrevlex.cmp(&a, &b, &ww), Ordering::Less);
        for o in MonomialOrder::ALL {
            assert_eq!(o.as_str().parse::<MonomialOrder>().unwrap(), o);
        }
    }
}
