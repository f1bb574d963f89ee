//! Buchberger's algorithm with the sugar selection strategy and the
//! Gebauer–Möller installation of both Buchberger criteria.
//!
//! On top of reduced bases this module answers ideal membership, normal
//! forms, properness and Krull dimension (via maximal independent sets of
//! variables against the initial ideal).

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Rational, VariableContext};

/// Default number of elementary reduction steps before giving up.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Step limit for Gröbner computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_steps: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_steps: DEFAULT_BUDGET,
        }
    }
}

impl Budget {
    pub fn new(max_steps: u64) -> Self {
        Budget { max_steps }
    }

    /// Reads `FFK_BUDGET`, falling back to the default.
    pub fn from_env() -> Self {
        std::env::var("FFK_BUDGET")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .filter(|&n| n > 0)
            .map(Budget::new)
            .unwrap_or_default()
    }
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
            return Err(Error::BudgetExceeded { budget: self.limit });
        }
        Ok(())
    }
}

/// Sort key realising a monomial order as lexicographic comparison.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Key(Box<[i64]>);

fn key(order: MonomialOrder, m: &Monomial, w: &[u32]) -> Key {
    let e = m.exponents();
    let mut k = Vec::with_capacity(e.len() + 1);
    match order {
        MonomialOrder::Lex => k.extend(e.iter().map(|&x| x as i64)),
        MonomialOrder::Degrevlex | MonomialOrder::WeightedDegrevlex => {
            k.push(order.degree(m, w) as i64);
            k.extend(e.iter().rev().map(|&x| -(x as i64)));
        }
    }
    Key(k.into_boxed_slice())
}

/// A polynomial with terms sorted decreasingly under a fixed order.
#[derive(Clone, Debug)]
struct OrdPoly {
    terms: Vec<(Monomial, Rational)>,
    sugar: u32,
}

impl OrdPoly {
    fn from_poly(p: &Polynomial, order: MonomialOrder) -> Self {
        let w = p.context().weights();
        let mut terms = p.terms().to_vec();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0, w));
        let sugar = terms.iter().map(|(m, _)| order.degree(m, w)).max().unwrap_or(0);
        OrdPoly { terms, sugar }
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn make_monic(&mut self) {
        if let Some(lc) = self.terms.first().map(|t| t.1.clone()) {
            if !lc.is_one() {
                let inv = lc.recip();
                for t in &mut self.terms {
                    t.1 *= &inv;
                }
            }
        }
    }
}

/// Full reduction of `f` by `basis` (leading and tail terms).
fn reduce(
    f: &[(Monomial, Rational)],
    basis: &[&OrdPoly],
    order: MonomialOrder,
    w: &[u32],
    meter: &mut Meter,
) -> Result<Vec<(Monomial, Rational)>> {
    let mut work: BTreeMap<Key, (Monomial, Rational)> = f
        .iter()
        .map(|(m, c)| (key(order, m, w), (m.clone(), c.clone())))
        .collect();
    let mut rem = Vec::new();
    while let Some((_, (m, c))) = work.pop_last() {
        let divisor = basis.iter().find(|g| g.lm().divides(&m));
        match divisor {
            None => rem.push((m, c)),
            Some(g) => {
                meter.tick()?;
                let shift = g.lm().quotient_of(&m).expect("divisible");
                let factor = &c / &g.terms[0].1;
                for (gm, gc) in &g.terms[1..] {
                    let nm = gm.mul(&shift);
                    let k = key(order, &nm, w);
                    let delta = -(&factor * gc);
                    match work.get_mut(&k) {
                        Some(slot) => {
                            slot.1 += &delta;
                            if slot.1.is_zero() {
                                work.remove(&k);
                            }
                        }
                        None => {
                            work.insert(k, (nm, delta));
                        }
                    }
                }
            }
        }
    }
    Ok(rem)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// A reduced Gröbner basis together with the order it was computed for.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ctx: VariableContext,
    order: MonomialOrder,
    elements: Vec<OrdPoly>,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn context(&self) -> &VariableContext {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The basis as polynomials, sorted by increasing leading monomial.
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.elements
            .iter()
            .map(|g| Polynomial::from_terms(&self.ctx, g.terms.iter().cloned()))
            .collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|g| g.lm().clone()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g.lm().is_one())
    }

    /// True iff `m` is not divisible by any leading monomial.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.elements.iter().any(|g| g.lm().divides(m))
    }

    pub fn normal_form(&self, p: &Polynomial, budget: Budget) -> Result<Polynomial> {
        if p.context() != &self.ctx {
            return Err(Error::ContextMismatch);
        }
        let basis: Vec<&OrdPoly> = self.elements.iter().collect();
        let mut meter = Meter::new(budget);
        let rem = reduce(p.terms(), &basis, self.order, self.ctx.weights(), &mut meter)?;
        Ok(Polynomial::from_terms(&self.ctx, rem))
    }

    pub fn contains(&self, p: &Polynomial, budget: Budget) -> Result<bool> {
        Ok(self.normal_form(p, budget)?.is_zero())
    }

    /// Krull dimension of `k[X]/I` from the initial ideal.
    pub fn dimension(&self) -> DimensionReport {
        if self.is_unit() {
            return DimensionReport {
                krull_dim: -1,
                independent_set_witness: Vec::new(),
            };
        }
        let n = self.ctx.len();
        let masks: Vec<u64> = self.elements.iter().map(|g| g.lm().support_mask()).collect();
        let best = max_independent_set(n, &masks);
        DimensionReport {
            krull_dim: best.len() as i64,
            independent_set_witness: best.iter().map(|&i| self.ctx.name(i).to_string()).collect(),
        }
    }
}

/// Largest set of variables containing the support of no leading monomial.
fn max_independent_set(n: usize, lm_masks: &[u64]) -> Vec<usize> {
    assert!(n <= 63, "dimension search supports at most 63 variables");
    // a set S is independent iff no mask is a subset of S
    let independent = |s: u64| lm_masks.iter().all(|&m| m & !s != 0);
    let mut best: Option<u64> = None;
    // search sizes from the top; within a size, combinations in lexicographic order
    'outer: for size in (0..=n).rev() {
        let mut comb: Vec<usize> = (0..size).collect();
        loop {
            let s = comb.iter().fold(0u64, |m, &i| m | (1 << i));
            if independent(s) {
                best = Some(s);
                break 'outer;
            }
            // next combination
            let mut k = size;
            loop {
                if k == 0 {
                    continue 'outer;
                }
                k -= 1;
                if comb[k] < n - size + k {
                    comb[k] += 1;
                    for t in k + 1..size {
                        comb[t] = comb[t - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    let s = best.unwrap_or(0);
    (0..n).filter(|i| s & (1 << i) != 0).collect()
}

/// Krull dimension with a witnessing independent set of variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    /// `-1` encodes the unit ideal.
    pub krull_dim: i64,
    pub independent_set_witness: Vec<String>,
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis(
    ctx: &VariableContext,
    gens: &[Polynomial],
    order: MonomialOrder,
    budget: Budget,
) -> Result<GroebnerBasis> {
    for g in gens {
        if g.context() != ctx {
            return Err(Error::ContextMismatch);
        }
    }
    let w = ctx.weights();
    let mut meter = Meter::new(budget);
    let mut polys: Vec<OrdPoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut input: Vec<OrdPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| OrdPoly::from_poly(g, order))
        .collect();
    // smaller inputs first keeps intermediate growth down
    input.sort_by(|a, b| order.cmp(a.lm(), b.lm(), w));

    for mut h in input {
        let refs: Vec<&OrdPoly> = active_refs(&polys, &active);
        let sugar = h.sugar;
        h.terms = reduce(&h.terms, &refs, order, w, &mut meter)?;
        if h.terms.is_empty() {
            continue;
        }
        h.make_monic();
        h.sugar = sugar;
        install(&mut polys, &mut active, &mut pairs, h, order, w);
    }

    while !pairs.is_empty() {
        // sugar strategy: smallest sugar, then smallest lcm
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                pairs[a]
                    .sugar
                    .cmp(&pairs[b].sugar)
                    .then_with(|| order.cmp(&pairs[a].lcm, &pairs[b].lcm, w))
            })
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        let s = s_polynomial(&polys[pair.i], &polys[pair.j], &pair.lcm, order, w);
        let refs = active_refs(&polys, &active);
        let terms = reduce(&s, &refs, order, w, &mut meter)?;
        if terms.is_empty() {
            continue;
        }
        let mut h = OrdPoly {
            terms,
            sugar: pair.sugar,
        };
        h.make_monic();
        install(&mut polys, &mut active, &mut pairs, h, order, w);
    }

    // interreduce the minimal basis
    let minimal: Vec<OrdPoly> = polys
        .into_iter()
        .zip(active)
        .filter_map(|(p, a)| a.then_some(p))
        .collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others: Vec<&OrdPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(t, _)| *t != k)
            .map(|(_, p)| p)
            .collect();
        let mut terms = vec![g.terms[0].clone()];
        terms.extend(reduce(&g.terms[1..], &others, order, w, &mut meter)?);
        terms[1..].sort_by(|a, b| order.cmp(&b.0, &a.0, w));
        reduced.push(OrdPoly { terms, sugar: g.sugar });
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm(), w));
    Ok(GroebnerBasis {
        ctx: ctx.clone(),
        order,
        elements: reduced,
    })
}

fn active_refs<'a>(polys: &'a [OrdPoly], active: &[bool]) -> Vec<&'a OrdPoly> {
    polys.iter().zip(active).filter_map(|(p, &a)| a.then_some(p)).collect()
}

fn s_polynomial(
    f: &OrdPoly,
    g: &OrdPoly,
    lcm: &Monomial,
    order: MonomialOrder,
    w: &[u32],
) -> Vec<(Monomial, Rational)> {
    // both are monic
    let uf = f.lm().quotient_of(lcm).expect("lcm");
    let ug = g.lm().quotient_of(lcm).expect("lcm");
    let mut acc: HashMap<Monomial, Rational> = HashMap::new();
    for (m, c) in &f.terms[1..] {
        *acc.entry(m.mul(&uf)).or_insert_with(Rational::zero) += c;
    }
    for (m, c) in &g.terms[1..] {
        *acc.entry(m.mul(&ug)).or_insert_with(Rational::zero) -= c;
    }
    let mut out: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    out.sort_by(|a, b| order.cmp(&b.0, &a.0, w));
    out
}

/// Gebauer–Möller update: adds `h`, prunes pairs by the product and chain
/// criteria, and retires basis elements whose leading monomial `h` divides.
fn install(
    polys: &mut Vec<OrdPoly>,
    active: &mut Vec<bool>,
    pairs: &mut Vec<Pair>,
    h: OrdPoly,
    order: MonomialOrder,
    w: &[u32],
) {
    let hi = polys.len();
    let hlm = h.lm().clone();
    let pair_sugar = |g: &OrdPoly, lcm: &Monomial| {
        let dg = order.degree(lcm, w) - order.degree(g.lm(), w);
        let dh = order.degree(lcm, w) - order.degree(&hlm, w);
        (g.sugar + dg).max(h.sugar + dh)
    };

    let mut candidates: Vec<(usize, Monomial)> = (0..hi)
        .filter(|&g| active[g])
        .map(|g| (g, polys[g].lm().lcm(&hlm)))
        .collect();
    let mut kept: Vec<(usize, Monomial)> = Vec::new();
    while let Some((g, lcm)) = candidates.pop() {
        let coprime = polys[g].lm().is_coprime(&hlm);
        let dominated = candidates
            .iter()
            .chain(kept.iter())
            .any(|(_, other)| other.divides(&lcm));
        if coprime || !dominated {
            kept.push((g, lcm));
        }
    }
    let fresh: Vec<Pair> = kept
        .into_iter()
        .filter(|(g, _)| !polys[*g].lm().is_coprime(&hlm))
        .map(|(g, lcm)| Pair {
            i: g,
            j: hi,
            sugar: pair_sugar(&polys[g], &lcm),
            lcm,
        })
        .collect();

    pairs.retain(|p| !hlm.divides(&p.lcm) || polys[p.i].lm().lcm(&hlm) == p.lcm || polys[p.j].lm().lcm(&hlm) == p.lcm);
    pairs.extend(fresh);

    for g in 0..hi {
        if active[g] && hlm.divides(polys[g].lm()) {
            active[g] = false;
        }
    }
    polys.push(h);
    active.push(true);
}

/// An ideal of a polynomial ring with lazily cached Gröbner bases.
#[derive(Debug)]
pub struct Ideal {
    ctx: VariableContext,
    generators: Vec<Polynomial>,
    cache: Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ctx: self.ctx.clone(),
            generators: self.generators.clone(),
            cache: Mutex::new(self.cache.lock().expect("cache poisoned").clone()),
        }
    }
}

impl Ideal {
    pub fn new(ctx: &VariableContext, generators: Vec<Polynomial>) -> Result<Self> {
        if generators.iter().any(|g| g.context() != ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(Ideal {
            ctx: ctx.clone(),
            generators,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn context(&self) -> &VariableContext {
        &self.ctx
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Ideal generated by these generators followed by `more`.
    pub fn extended(&self, more: &[Polynomial]) -> Result<Ideal> {
        let mut g = self.generators.clone();
        g.extend_from_slice(more);
        Ideal::new(&self.ctx, g)
    }

    pub fn basis(&self, order: MonomialOrder, budget: Budget) -> Result<Arc<GroebnerBasis>> {
        if let Some(b) = self.cache.lock().expect("cache poisoned").get(&order) {
            return Ok(b.clone());
        }
        let b = Arc::new(groebner_basis(&self.ctx, &self.generators, order, budget)?);
        self.cache.lock().expect("cache poisoned").insert(order, b.clone());
        Ok(b)
    }

    pub fn normal_form(&self, p: &Polynomial, budget: Budget) -> Result<Polynomial> {
        self.basis(MonomialOrder::Degrevlex, budget)?.normal_form(p, budget)
    }

    pub fn contains(&self, p: &Polynomial, budget: Budget) -> Result<bool> {
        Ok(self.normal_form(p, budget)?.is_zero())
    }

    pub fn krull_dimension(&self, budget: Budget) -> Result<DimensionReport> {
        self.krull_dimension_with(MonomialOrder::Degrevlex, budget)
    }

    pub fn krull_dimension_with(&self, order: MonomialOrder, budget: Budget) -> Result<DimensionReport> {
        Ok(self.basis(order, budget)?.dimension())
    }

    pub fn is_proper(&self, budget: Budget) -> Result<bool> {
        Ok(!self.basis(MonomialOrder::Degrevlex, budget)?.is_unit())
    }

    /// True iff `p` vanishes on the variety of the ideal (Rabinowitsch trick).
    pub fn radical_contains(&self, p: &Polynomial, budget: Budget) -> Result<bool> {
        let mut names = self.ctx.names().to_vec();
        let mut fresh = "_y".to_string();
        while names.contains(&fresh) {
            fresh.push('_');
        }
        names.push(fresh);
        let mut weights = self.ctx.weights().to_vec();
        weights.push(1);
        let big = VariableContext::new(names, weights)?;
        let y = big.var(big.len() - 1);
        let mut gens: Vec<Polynomial> = self
            .generators
            .iter()
            .map(|g| g.embed_into(&big))
            .collect::<Result<_>>()?;
        let pp = p.embed_into(&big)?;
        gens.push(&Polynomial::one(&big) - &(&y * &pp));
        Ok(groebner_basis(&big, &gens, MonomialOrder::Degrevlex, budget)?.is_unit())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;

    fn p(ctx: &VariableContext, s: &str) -> Polynomial {
        Polynomial::parse(ctx, s).unwrap()
    }

    #[test]
    fn basis_of_variables() {
        let c = VariableContext::numbered("X", 2);
        let gb = groebner_basis(&c, &c.vars(), MonomialOrder::Degrevlex, Budget::default()).unwrap();
        assert_eq!(gb.polynomials(), vec![c.var(1), c.var(0)]);
    }

    #[test]
    fn hand_s_polynomial_example() {
        let c = VariableContext::numbered("X", 2);
        let gens = vec![p(&c, "X1^2 - X2"), p(&c, "X1*X2")];
        let gb = groebner_basis(&c, &gens, MonomialOrder::Degrevlex, Budget::default()).unwrap();
        let polys = gb.polynomials();
        assert!(polys.contains(&p(&c, "X2^2")), "{polys:?}");
        assert_eq!(
            gb.normal_form(&p(&c, "X2^2"), Budget::default()).unwrap(),
            Polynomial::zero(&c)
        );
    }

    #[test]
    fn unit_ideal() {
        let c = VariableContext::numbered("X", 2);
        let gb = groebner_basis(&c, &[Polynomial::one(&c)], MonomialOrder::Lex, Budget::default()).unwrap();
        assert_eq!(gb.polynomials(), vec![Polynomial::one(&c)]);
        assert_eq!(gb.dimension().krull_dim, -1);
    }

    #[test]
    fn normal_form_examples() {
        let c = VariableContext::numbered("X", 2);
        let i = Ideal::new(&c, vec![c.var(0)]).unwrap();
        let b = Budget::default();
        assert!(i.normal_form(&p(&c, "X1*X2"), b).unwrap().is_zero());
        assert_eq!(i.normal_form(&p(&c, "X1 + 1"), b).unwrap(), Polynomial::one(&c));
    }

    #[test]
    fn dimension_examples() {
        let b = Budget::default();
        let c = VariableContext::numbered("X", 4);
        assert_eq!(
            Ideal::new(&c, c.vars()).unwrap().krull_dimension(b).unwrap().krull_dim,
            0
        );
        let c3 = VariableContext::numbered("X", 3);
        let i = Ideal::new(&c3, vec![p(&c3, "X1*X2"), p(&c3, "X1*X3")]).unwrap();
        let d = i.krull_dimension(b).unwrap();
        assert_eq!(d.krull_dim, 2);
        assert_eq!(d.independent_set_witness.len(), 2);
        let zero = Ideal::new(&c3, vec![]).unwrap();
        assert_eq!(zero.krull_dimension(b).unwrap().krull_dim, 3);
    }

    #[test]
    fn properness_examples() {
        let b = Budget::default();
        let c = VariableContext::numbered("X", 1);
        assert!(!Ideal::new(&c, vec![p(&c, "X1 - 1"), c.var(0)])
            .unwrap()
            .is_proper(b)
            .unwrap());
        assert!(Ideal::new(&c, vec![Polynomial::zero(&c)])
            .unwrap()
            .is_proper(b)
            .unwrap());
        let sl2 = VariableContext::standard(&["e", "h", "f"]).unwrap();
        let i = Ideal::new(&sl2, vec![p(&sl2, "h^2 + 4*e*f - 1")]).unwrap();
        assert!(i.is_proper(b).unwrap());
    }

    #[test]
    fn budget_is_reported() {
        let c = VariableContext::numbered("X", 3);
        let gens = vec![
            p(&c, "X1^3 - X2*X3 + 1"),
            p(&c, "X2^3 - X1*X3"),
            p(&c, "X3^3 - X1 - X2"),
        ];
        let err = groebner_basis(&c, &gens, MonomialOrder::Lex, Budget::new(5)).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { budget: 5 });
    }

    #[test]
    fn radical_membership() {
        let c = VariableContext::numbered("X", 2);
        let i = Ideal::new(&c, vec![p(&c, "X1^3"), p(&c, "X2 - X1")]).unwrap();
        let b = Budget::default();
        assert!(!i.contains(&c.var(0), b).unwrap());
        assert!(i.radical_contains(&c.var(0), b).unwrap());
        assert!(i.radical_contains(&c.var(1), b).unwrap());
        assert!(!i.radical_contains(&p(&c, "X1 + 1"), b).unwrap());
    }

    #[test]
    fn independent_set_search() {
        // leading monomials x0*x1, x2: best independent set {x0, x3} style of size 2 in 4 vars
        let masks = [0b0011u64, 0b0100];
        let s = max_independent_set(4, &masks);
        assert_eq!(s.len(), 2);
        assert!(masks
            .iter()
            .all(|m| m & !s.iter().fold(0, |a, &i| a | (1u64 << i)) != 0));
        let _ = q(0);
    }
}
