//! Presentations `Λ = k[X]/J` of graded affine algebras and their graded pieces.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{Budget, GroebnerBasis, Ideal};
use crate::linalg::SparseVec;
use crate::poly::{
    context_from_json, context_to_json, terms_from_json, terms_to_json, Monomial, MonomialOrder, Polynomial, TermJson,
    VarJson, VariableContext,
};

/// `Λ = A/J` with `A` the polynomial ring of `context`.
#[derive(Clone, Debug)]
pub struct AlgebraPresentation {
    context: VariableContext,
    defining_ideal: Ideal,
    is_graded: bool,
    assume_cohen_macaulay: bool,
}

impl AlgebraPresentation {
    /// The polynomial ring itself (`J = 0`).
    pub fn polynomial_ring(ctx: &VariableContext) -> Self {
        AlgebraPresentation {
            context: ctx.clone(),
            defining_ideal: Ideal::new(ctx, Vec::new()).expect("empty ideal"),
            is_graded: true,
            assume_cohen_macaulay: true,
        }
    }

    /// A quotient; `is_graded` is derived from the generators.
    pub fn quotient(ctx: &VariableContext, relations: Vec<Polynomial>, cohen_macaulay: bool) -> Result<Self> {
        let relations: Vec<Polynomial> = relations.into_iter().filter(|r| !r.is_zero()).collect();
        let is_graded = relations.iter().all(|r| r.is_homogeneous());
        Ok(AlgebraPresentation {
            context: ctx.clone(),
            defining_ideal: Ideal::new(ctx, relations)?,
            is_graded,
            assume_cohen_macaulay: cohen_macaulay,
        })
    }

    pub fn context(&self) -> &VariableContext {
        &self.context
    }

    pub fn defining_ideal(&self) -> &Ideal {
        &self.defining_ideal
    }

    pub fn relations(&self) -> &[Polynomial] {
        self.defining_ideal.generators()
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.relations().is_empty()
    }

    pub fn is_graded(&self) -> bool {
        self.is_graded
    }

    pub fn assume_cohen_macaulay(&self) -> bool {
        self.assume_cohen_macaulay
    }

    pub fn with_cohen_macaulay(mut self, flag: bool) -> Self {
        self.assume_cohen_macaulay = flag;
        self
    }

    /// Gröbner basis of `J` under the weighted degree order.
    pub fn relation_basis(&self, budget: Budget) -> Result<Arc<GroebnerBasis>> {
        self.defining_ideal.basis(MonomialOrder::WeightedDegrevlex, budget)
    }

    /// Krull dimension of `Λ`.
    pub fn dimension(&self, budget: Budget) -> Result<i64> {
        Ok(self.defining_ideal.krull_dimension(budget)?.krull_dim)
    }

    /// The ideal `J + (extra)` of `A`.
    pub fn ideal_with(&self, extra: &[Polynomial]) -> Result<Ideal> {
        self.defining_ideal.extended(extra)
    }

    /// Graded pieces of `Λ` up to `cutoff`, with standard-monomial bases.
    pub fn graded(&self, cutoff: u32, budget: Budget) -> Result<GradedPieces> {
        if !self.is_graded {
            return Err(Error::InvalidContext(
                "graded pieces need a homogeneous defining ideal".into(),
            ));
        }
        let basis = self.relation_basis(budget)?;
        let mut pieces = Vec::with_capacity(cutoff as usize + 1);
        for d in 0..=cutoff {
            let monos: Vec<Monomial> = monomials_of_degree(self.context.weights(), d)
                .into_iter()
                .filter(|m| basis.is_standard(m))
                .collect();
            let index = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
            pieces.push(Piece { monos, index });
        }
        Ok(GradedPieces {
            ctx: self.context.clone(),
            basis,
            pieces,
            budget,
        })
    }
}

/// All monomials of weighted degree exactly `d`, in a deterministic order.
pub fn monomials_of_degree(weights: &[u32], d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; weights.len()];
    fill(weights, 0, d, &mut cur, &mut out);
    out.sort_by(|a, b| MonomialOrder::WeightedDegrevlex.cmp(b, a, weights));
    out
}

fn fill(w: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if i == w.len() {
        if left == 0 {
            out.push(Monomial::from_exponents(cur.clone()));
        }
        return;
    }
    let mut e = 0;
    while e * w[i] <= left {
        cur[i] = e;
        fill(w, i + 1, left - e * w[i], cur, out);
        e += 1;
    }
    cur[i] = 0;
}

/// All monomials of weighted degree at most `d`.
pub fn monomials_up_to(weights: &[u32], d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|k| monomials_of_degree(weights, k)).collect()
}

#[derive(Clone, Debug)]
struct Piece {
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

/// Standard-monomial bases of `Λ_0, …, Λ_D` and coordinate maps.
#[derive(Clone, Debug)]
pub struct GradedPieces {
    ctx: VariableContext,
    basis: Arc<GroebnerBasis>,
    pieces: Vec<Piece>,
    budget: Budget,
}

impl GradedPieces {
    pub fn cutoff(&self) -> u32 {
        self.pieces.len() as u32 - 1
    }

    pub fn dim(&self, d: u32) -> usize {
        self.pieces.get(d as usize).map_or(0, |p| p.monos.len())
    }

    pub fn basis(&self, d: u32) -> &[Monomial] {
        self.pieces.get(d as usize).map_or(&[], |p| &p.monos)
    }

    pub fn hilbert_function(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.monos.len()).collect()
    }

    pub fn relation_basis(&self) -> &GroebnerBasis {
        &self.basis
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        self.basis.normal_form(p, self.budget)
    }

    /// Coordinates of a homogeneous element of degree `d` in the basis of `Λ_d`.
    pub fn coordinates(&self, p: &Polynomial, d: u32) -> Result<SparseVec> {
        let nf = self.normal_form(p)?;
        let piece = self
            .pieces
            .get(d as usize)
            .ok_or_else(|| Error::Shape(format!("degree {d} beyond cutoff")))?;
        let mut v = BTreeMap::new();
        for (m, c) in nf.terms() {
            let i = piece
                .index
                .get(m)
                .ok_or_else(|| Error::Internal(format!("term of {nf} is not a standard monomial of degree {d}")))?;
            v.insert(*i, c.clone());
        }
        Ok(v)
    }

    pub fn monomial_poly(&self, m: &Monomial) -> Polynomial {
        Polynomial::monomial(&self.ctx, m.clone(), num_traits::One::one())
    }
}

/// Wire format for an algebra: variables, defining relations and flags.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraJson {
    #[serde(default = "schema_tag")]
    pub schema: String,
    pub vars: Vec<VarJson>,
    #[serde(default)]
    pub relations: Vec<Vec<TermJson>>,
    #[serde(default)]
    pub cohen_macaulay: bool,
}

pub fn schema_tag() -> String {
    crate::SCHEMA.to_string()
}

impl AlgebraJson {
    pub fn from_presentation(a: &AlgebraPresentation) -> Self {
        AlgebraJson {
            schema: schema_tag(),
            vars: context_to_json(&a.context),
            relations: a.relations().iter().map(terms_to_json).collect(),
            cohen_macaulay: a.assume_cohen_macaulay,
        }
    }

    pub fn to_presentation(&self) -> Result<AlgebraPresentation> {
        let ctx = context_from_json(&self.vars)?;
        if self.relations.is_empty() {
            return Ok(AlgebraPresentation::polynomial_ring(&ctx));
        }
        let rels = self
            .relations
            .iter()
            .map(|t| terms_from_json(&ctx, t))
            .collect::<Result<Vec<_>>>()?;
        AlgebraPresentation::quotient(&ctx, rels, self.cohen_macaulay)
    }
}

/// Wire format for a sequence of polynomials over shared variables.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SequenceJson {
    #[serde(default = "schema_tag")]
    pub schema: String,
    pub vars: Vec<VarJson>,
    pub polynomials: Vec<Vec<TermJson>>,
}

impl SequenceJson {
    pub fn from_polys(ctx: &VariableContext, polys: &[Polynomial]) -> Self {
        SequenceJson {
            schema: schema_tag(),
            vars: context_to_json(ctx),
            polynomials: polys.iter().map(terms_to_json).collect(),
        }
    }

    /// Parses the sequence, re-embedding it into `target` by variable name.
    pub fn to_polys(&self, target: &VariableContext) -> Result<Vec<Polynomial>> {
        let ctx = context_from_json(&self.vars)?;
        self.polynomials
            .iter()
            .map(|t| terms_from_json(&ctx, t).and_then(|p| p.embed_into(target)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(&[1, 1, 1], 2).len(), 6);
        assert_eq!(monomials_of_degree(&[1, 2], 4).len(), 3);
        assert_eq!(monomials_of_degree(&[], 0).len(), 1);
        assert_eq!(monomials_of_degree(&[], 1).len(), 0);
        assert_eq!(monomials_up_to(&[1, 1], 3).len(), 10);
    }

    #[test]
    fn quotient_pieces() {
        let c = VariableContext::numbered("X", 1);
        let x3 = Polynomial::parse(&c, "X1^3").unwrap();
        let a = AlgebraPresentation::quotient(&c, vec![x3], false).unwrap();
        let g = a.graded(5, Budget::default()).unwrap();
        assert_eq!(g.hilbert_function(), vec![1, 1, 1, 0, 0, 0]);
        let v = g.coordinates(&Polynomial::parse(&c, "X1^4").unwrap(), 4).unwrap();
        assert!(v.is_empty());
    }

    #[test]
    fn json_round_trip() {
        let c = VariableContext::numbered("X", 2);
        let a = AlgebraPresentation::quotient(&c, vec![Polynomial::parse(&c, "X1*X2").unwrap()], true).unwrap();
        let j = AlgebraJson::from_presentation(&a);
        let s = serde_json::to_string(&j).unwrap();
        let back: AlgebraJson = serde_json::from_str(&s).unwrap();
        let a2 = back.to_presentation().unwrap();
        assert_eq!(a2.relations(), a.relations());
        assert!(a2.assume_cohen_macaulay());
    }
}
