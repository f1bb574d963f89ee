//! Dimension-based certificates for complete intersections and regular
//! sequences, with the substitution reduction, constant base changes, the
//! Jacobian radicality test and checks on shifted sequences `g - μ`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{monomials_up_to, AlgebraPresentation};
use crate::error::{Error, Result};
use crate::groebner::{Budget, Ideal};
use crate::koszul::{self, KoszulVerdict};
use crate::linalg::RowEchelon;
use crate::poly::{Monomial, MonomialOrder, Polynomial, Rational, VariableContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    CI,
    NotCI,
    Indefinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Dimension,
    KoszulOracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CIReport {
    pub verdict: Verdict,
    /// Number of variables of the ambient polynomial ring.
    pub n: usize,
    pub t: usize,
    /// Krull dimension of `Λ`.
    pub ambient_dim: i64,
    /// Krull dimension of `Λ/(g)`; `-1` for the unit ideal, absent if the budget ran out.
    #[serde(rename = "dim")]
    pub dim_found: Option<i64>,
    pub codim: Option<i64>,
    pub proper: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_prefix_dims: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regular: Option<bool>,
    pub method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub koszul_cutoff: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub koszul_verdict: Option<KoszulVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub independent_set: Option<Vec<String>>,
}

impl CIReport {
    fn indefinite(n: usize, t: usize, ambient_dim: i64) -> Self {
        CIReport {
            verdict: Verdict::Indefinite,
            n,
            t,
            ambient_dim,
            dim_found: None,
            codim: None,
            proper: None,
            per_prefix_dims: None,
            regular: None,
            method: Method::Dimension,
            koszul_cutoff: None,
            koszul_verdict: None,
            independent_set: None,
        }
    }

    pub fn is_ci(&self) -> bool {
        self.verdict == Verdict::CI
    }
}

fn check_ambient(seq: &[Polynomial], algebra: &AlgebraPresentation) -> Result<()> {
    if !algebra.is_polynomial_ring() && !algebra.assume_cohen_macaulay() {
        return Err(Error::NonCmWithoutFlag);
    }
    if seq.iter().any(|g| g.context() != algebra.context()) {
        return Err(Error::ContextMismatch);
    }
    Ok(())
}

fn budget_to_none<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::BudgetExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// CI test by dimension: the ideal is proper and `dim Λ/(g) = dim Λ - t`.
pub fn ci_check(seq: &[Polynomial], algebra: &AlgebraPresentation, budget: Budget) -> Result<CIReport> {
    check_ambient(seq, algebra)?;
    let n = algebra.context().len();
    let t = seq.len();
    let Some(ambient_dim) = budget_to_none(algebra.dimension(budget))? else {
        return Ok(CIReport::indefinite(n, t, -1));
    };
    let ideal = algebra.ideal_with(seq)?;
    let Some(report) = budget_to_none(ideal.krull_dimension(budget))? else {
        return Ok(CIReport::indefinite(n, t, ambient_dim));
    };
    let dim = report.krull_dim;
    let proper = dim >= 0;
    let expected = ambient_dim - t as i64;
    if proper && dim < expected {
        // Height theorem: every component of V(g) has dimension ≥ dim Λ - t.
        return Err(if algebra.is_polynomial_ring() {
            Error::Internal(format!("dimension {dim} below the height bound {expected}"))
        } else {
            Error::InvalidContext(format!(
                "dimension {dim} below {expected}; the algebra is not Cohen-Macaulay"
            ))
        });
    }
    let verdict = if t == 0 || (proper && dim == expected) {
        Verdict::CI
    } else {
        Verdict::NotCI
    };
    Ok(CIReport {
        verdict,
        n,
        t,
        ambient_dim,
        dim_found: Some(dim),
        codim: proper.then_some(ambient_dim - dim),
        proper: Some(proper),
        per_prefix_dims: None,
        regular: None,
        method: Method::Dimension,
        koszul_cutoff: None,
        koszul_verdict: None,
        independent_set: Some(report.independent_set_witness),
    })
}

/// Regularity via the dimension of every prefix `(g_1, …, g_i)`.
pub fn regular_check(seq: &[Polynomial], algebra: &AlgebraPresentation, budget: Budget) -> Result<CIReport> {
    let mut full = ci_check(seq, algebra, budget)?;
    let mut dims = Vec::with_capacity(seq.len());
    let mut regular = Some(true);
    for i in 1..=seq.len() {
        let r = ci_check(&seq[..i], algebra, budget)?;
        match (r.verdict, r.dim_found) {
            (Verdict::Indefinite, _) | (_, None) => {
                regular = None;
                break;
            }
            (v, Some(d)) => {
                dims.push(d);
                if v != Verdict::CI {
                    regular = regular.map(|_| false);
                }
            }
        }
    }
    full.per_prefix_dims = Some(dims);
    full.regular = regular;
    Ok(full)
}

/// CI verdict from Koszul homology up to `cutoff`, alongside the dimension data.
pub fn koszul_oracle_check(
    seq: &[Polynomial],
    algebra: &AlgebraPresentation,
    cutoff: u32,
    budget: Budget,
) -> Result<CIReport> {
    let mut report = ci_check(seq, algebra, budget)?;
    let table = match budget_to_none(koszul::homology_table(seq, algebra, cutoff, budget))? {
        Some(t) => t,
        None => {
            report.verdict = Verdict::Indefinite;
            report.method = Method::KoszulOracle;
            return Ok(report);
        }
    };
    let kv = table.verdict();
    report.method = Method::KoszulOracle;
    report.koszul_cutoff = Some(cutoff);
    report.koszul_verdict = Some(kv);
    report.verdict = match kv {
        KoszulVerdict::CiConsistent => Verdict::CI,
        KoszulVerdict::NotCi => Verdict::NotCI,
    };
    Ok(report)
}

/// Sets `kill_vars` to zero and rewrites the result in the remaining variables.
pub fn substitute_zero_reduce(
    seq: &[Polynomial],
    ctx: &VariableContext,
    kill_vars: &[usize],
) -> Result<(VariableContext, Vec<Polynomial>)> {
    let mut seen = BTreeSet::new();
    for &v in kill_vars {
        if v >= ctx.len() {
            return Err(Error::UnknownVariable(format!("index {v}")));
        }
        if !seen.insert(v) {
            return Err(Error::InvalidContext(format!("variable {} listed twice", ctx.name(v))));
        }
    }
    let keep: Vec<usize> = (0..ctx.len()).filter(|i| !seen.contains(i)).collect();
    let sub = ctx.subcontext(&keep)?;
    let reduced = seq
        .iter()
        .map(|g| g.kill_variables(kill_vars)?.embed_into(&sub))
        .collect::<Result<Vec<_>>>()?;
    Ok((sub, reduced))
}

pub fn substitute_zero_reduce_named(
    seq: &[Polynomial],
    ctx: &VariableContext,
    kill: &[&str],
) -> Result<(VariableContext, Vec<Polynomial>)> {
    let idx = kill
        .iter()
        .map(|n| ctx.index_of(n).ok_or_else(|| Error::UnknownVariable(n.to_string())))
        .collect::<Result<Vec<_>>>()?;
    substitute_zero_reduce(seq, ctx, &idx)
}

/// Verdicts of `{X_kill} ∪ seq` in the full ring and of the reduced sequence in the subring.
pub fn substitution_coherence(
    seq: &[Polynomial],
    ctx: &VariableContext,
    kill_vars: &[usize],
    budget: Budget,
) -> Result<(CIReport, CIReport)> {
    let mut big: Vec<Polynomial> = kill_vars.iter().map(|&i| ctx.var(i)).collect();
    big.extend_from_slice(seq);
    let full = ci_check(&big, &AlgebraPresentation::polynomial_ring(ctx), budget)?;
    let (sub, reduced) = substitute_zero_reduce(seq, ctx, kill_vars)?;
    let small = ci_check(&reduced, &AlgebraPresentation::polynomial_ring(&sub), budget)?;
    Ok((full, small))
}

/// Determinant by cofactor expansion along the first column.
pub fn determinant(ctx: &VariableContext, m: &[Vec<Polynomial>]) -> Polynomial {
    fn go(ctx: &VariableContext, m: &[Vec<Polynomial>], rows: &[usize], col: usize) -> Polynomial {
        if rows.is_empty() {
            return Polynomial::one(ctx);
        }
        let mut acc = Polynomial::zero(ctx);
        for (k, &r) in rows.iter().enumerate() {
            if m[r][col].is_zero() {
                continue;
            }
            let rest: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
            let minor = &m[r][col] * &go(ctx, m, &rest, col + 1);
            acc = if k % 2 == 0 { &acc + &minor } else { &acc - &minor };
        }
        acc
    }
    let rows: Vec<usize> = (0..m.len()).collect();
    go(ctx, m, &rows, 0)
}

/// `(h_1, …, h_t) = (g_1, …, g_t) · L`; `det L` must be a nonzero constant.
pub fn gl_transform(seq: &[Polynomial], l: &[Vec<Polynomial>]) -> Result<Vec<Polynomial>> {
    let t = seq.len();
    if l.len() != t || l.iter().any(|r| r.len() != t) {
        return Err(Error::Shape(format!("expected a {t}x{t} matrix")));
    }
    let Some(ctx) = seq.first().map(|g| g.context().clone()) else {
        return Ok(Vec::new());
    };
    if l.iter().flatten().any(|x| x.context() != &ctx) {
        return Err(Error::ContextMismatch);
    }
    let det = determinant(&ctx, l);
    if det.is_zero() || !det.is_constant() {
        return Err(Error::SingularMatrix);
    }
    Ok((0..t)
        .map(|j| (0..t).fold(Polynomial::zero(&ctx), |acc, i| &acc + &(&seq[i] * &l[i][j])))
        .collect())
}

/// `gl_transform` with a rational matrix.
pub fn gl_transform_constant(seq: &[Polynomial], l: &[Vec<Rational>]) -> Result<Vec<Polynomial>> {
    let Some(ctx) = seq.first().map(|g| g.context().clone()) else {
        return if l.is_empty() {
            Ok(Vec::new())
        } else {
            Err(Error::Shape("matrix for empty sequence".into()))
        };
    };
    let lp: Vec<Vec<Polynomial>> = l
        .iter()
        .map(|r| r.iter().map(|c| Polynomial::constant(&ctx, c.clone())).collect())
        .collect();
    gl_transform(seq, &lp)
}

/// `n × t` matrix with entry `(i, j) = ∂g_j/∂X_i`.
pub fn jacobian_matrix(seq: &[Polynomial], ctx: &VariableContext) -> Vec<Vec<Polynomial>> {
    (0..ctx.len())
        .map(|i| seq.iter().map(|g| g.derivative(i)).collect())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RadicalVerdict {
    RadicalCertified,
    NotCertified,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(s: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in s..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// One-sided radicality test for a CI in a polynomial ring: certified when
/// the locus where the Jacobian drops rank has smaller dimension than `V(g)`.
pub fn radical_generic_test(seq: &[Polynomial], ctx: &VariableContext, budget: Budget) -> Result<RadicalVerdict> {
    let ideal = Ideal::new(ctx, seq.to_vec())?;
    let dim = ideal.krull_dimension(budget)?.krull_dim;
    let jac = jacobian_matrix(seq, ctx);
    let t = seq.len();
    let mut minors = Vec::new();
    for rows in subsets(ctx.len(), t) {
        let sub: Vec<Vec<Polynomial>> = rows.iter().map(|&r| jac[r].clone()).collect();
        let d = determinant(ctx, &sub);
        if !d.is_zero() {
            minors.push(d);
        }
    }
    let singular = ideal.extended(&minors)?.krull_dimension(budget)?.krull_dim;
    Ok(if singular < dim {
        RadicalVerdict::RadicalCertified
    } else {
        RadicalVerdict::NotCertified
    })
}

fn sequence_and_shift_degrees(seq: &[Polynomial], mu: &[Polynomial]) -> Result<Vec<u32>> {
    if seq.len() != mu.len() {
        return Err(Error::Shape(format!(
            "{} shifts for {} generators",
            mu.len(),
            seq.len()
        )));
    }
    let degs = koszul::sequence_degrees(seq)?;
    for (index, (m, &d)) in mu.iter().zip(&degs).enumerate() {
        if let Some(md) = m.max_weighted_degree() {
            if md >= d {
                return Err(Error::DegreeViolation {
                    index,
                    shift_degree: md,
                    generator_degree: d,
                });
            }
        }
    }
    Ok(degs)
}

fn shifted(seq: &[Polynomial], mu: &[Polynomial]) -> Vec<Polynomial> {
    seq.iter().zip(mu).map(|(g, m)| g - m).collect()
}

/// Properness and fiber dimensions of `g - μ` for a homogeneous `g` and `deg μ_i < deg g_i`.
pub fn shifted_sequence_check(
    seq: &[Polynomial],
    mu: &[Polynomial],
    algebra: &AlgebraPresentation,
    budget: Budget,
) -> Result<CIReport> {
    sequence_and_shift_degrees(seq, mu)?;
    regular_check(&shifted(seq, mu), algebra, budget)
}

/// Compares `(I_μ + J) ∩ A_{≤d}` with `Σ_i A_{≤d-d_i}(g_i - μ_i) + J_{≤d}`.
pub fn graded_slice_identity(
    seq: &[Polynomial],
    mu: &[Polynomial],
    algebra: &AlgebraPresentation,
    d: u32,
    budget: Budget,
) -> Result<bool> {
    let degs = sequence_and_shift_degrees(seq, mu)?;
    if !algebra.is_graded() {
        return Err(Error::InvalidContext("slice identity needs a graded algebra".into()));
    }
    let ctx = algebra.context();
    let w = ctx.weights();
    let monos = monomials_up_to(w, d);
    let index: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let shifted = shifted(seq, mu);
    let ideal = algebra.ideal_with(&shifted)?;
    let gb = ideal.basis(MonomialOrder::WeightedDegrevlex, budget)?;
    let standard = monos.iter().filter(|m| gb.is_standard(m)).count();
    let lhs = monos.len() - standard;

    let coords = |p: &Polynomial| -> Result<BTreeMap<usize, Rational>> {
        p.terms()
            .iter()
            .map(|(m, c)| {
                index
                    .get(m)
                    .map(|&i| (i, c.clone()))
                    .ok_or_else(|| Error::Internal("product exceeds the slice degree".into()))
            })
            .collect()
    };
    let mut span = RowEchelon::new();
    let mut gens: Vec<(&Polynomial, u32)> = shifted.iter().zip(degs.iter().copied()).collect();
    let rel_degs = koszul::sequence_degrees(algebra.relations())?;
    gens.extend(algebra.relations().iter().zip(rel_degs));
    for (g, dg) in gens {
        if dg > d {
            continue;
        }
        for m in monomials_up_to(w, d - dg) {
            span.insert(coords(&g.mul_monomial(&m, &Rational::one()))?);
        }
    }
    Ok(span.rank() == lhs)
}

/// The unimodular product `U·L` of an upper and a lower unitriangular
/// integer matrix, filled row by row from `upper` and column by column from `lower`.
pub fn unimodular_from_entries(t: usize, upper: &[i64], lower: &[i64]) -> Vec<Vec<Rational>> {
    let mut u = vec![vec![Rational::zero(); t]; t];
    let mut l = vec![vec![Rational::zero(); t]; t];
    let (mut a, mut b) = (0, 0);
    for i in 0..t {
        u[i][i] = Rational::one();
        l[i][i] = Rational::one();
        for j in i + 1..t {
            u[i][j] = Rational::from_integer(upper.get(a).copied().unwrap_or(0).into());
            a += 1;
            l[j][i] = Rational::from_integer(lower.get(b).copied().unwrap_or(0).into());
            b += 1;
        }
    }
    crate::linalg::mat_mul(&u, &l, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;

    fn ring(names: &[&str]) -> (VariableContext, AlgebraPresentation) {
        let c = VariableContext::standard(names).unwrap();
        let a = AlgebraPresentation::polynomial_ring(&c);
        (c, a)
    }

    fn p(c: &VariableContext, s: &str) -> Polynomial {
        Polynomial::parse(c, s).unwrap()
    }

    #[test]
    fn elementary_pair() {
        let (c, a) = ring(&["X1", "X2"]);
        let r = ci_check(&[p(&c, "X1+X2"), p(&c, "X1*X2")], &a, Budget::default()).unwrap();
        assert_eq!(r.verdict, Verdict::CI);
        assert_eq!(r.dim_found, Some(0));
    }

    #[test]
    fn shared_factor_is_not_ci() {
        let (c, a) = ring(&["X1", "X2", "X3"]);
        let r = ci_check(&[p(&c, "X1*X2"), p(&c, "X1*X3")], &a, Budget::default()).unwrap();
        assert_eq!(r.verdict, Verdict::NotCI);
        assert_eq!(r.dim_found, Some(2));
    }

    #[test]
    fn empty_sequence() {
        let (_, a) = ring(&["X1", "X2", "X3"]);
        let r = ci_check(&[], &a, Budget::default()).unwrap();
        assert_eq!(r.verdict, Verdict::CI);
        assert_eq!(r.dim_found, Some(3));
    }

    #[test]
    fn unit_ideal_is_not_ci() {
        let (c, a) = ring(&["X1"]);
        let r = ci_check(&[p(&c, "X1"), p(&c, "X1 - 1")], &a, Budget::default()).unwrap();
        assert_eq!(r.verdict, Verdict::NotCI);
        assert_eq!(r.dim_found, Some(-1));
        assert_eq!(r.proper, Some(false));
    }

    #[test]
    fn quotient_needs_flag() {
        let c = VariableContext::numbered("X", 2);
        let a = AlgebraPresentation::quotient(&c, vec![p(&c, "X1*X2")], false).unwrap();
        assert_eq!(
            ci_check(&[c.var(0)], &a, Budget::default()).unwrap_err(),
            Error::NonCmWithoutFlag
        );
        let a = a.with_cohen_macaulay(true);
        // k[X1,X2]/(X1X2) has dimension 1; X1 + X2 is a parameter
        let r = ci_check(&[p(&c, "X1+X2")], &a, Budget::default()).unwrap();
        assert_eq!(r.ambient_dim, 1);
        assert_eq!(r.verdict, Verdict::CI);
    }

    #[test]
    fn budget_gives_indefinite() {
        let (c, a) = ring(&["X1", "X2", "X3"]);
        let seq = [
            p(&c, "X1^3+X2^3+X3^3"),
            p(&c, "X1*X2*X3 + X1^2*X2"),
            p(&c, "X1^2 - X2*X3"),
        ];
        let r = ci_check(&seq, &a, Budget::new(3)).unwrap();
        assert_eq!(r.verdict, Verdict::Indefinite);
        assert_eq!(r.dim_found, None);
    }

    #[test]
    fn regularity_prefixes() {
        let (c, a) = ring(&["X1", "X2"]);
        let r = regular_check(&c.vars(), &a, Budget::default()).unwrap();
        assert_eq!(r.regular, Some(true));
        assert_eq!(r.per_prefix_dims, Some(vec![1, 0]));
        let r = regular_check(&[p(&c, "X1"), p(&c, "X1*(1+X2)")], &a, Budget::default()).unwrap();
        assert_eq!(r.per_prefix_dims, Some(vec![1, 1]));
        assert_eq!(r.regular, Some(false));
    }

    #[test]
    fn substitution() {
        let (c, _) = ring(&["X1", "X2", "X3"]);
        let (sub, red) = substitute_zero_reduce(&[p(&c, "X1*X2 + X3")], &c, &[0]).unwrap();
        assert_eq!(sub.names(), &["X2".to_string(), "X3".to_string()]);
        assert_eq!(red[0], p(&sub, "X3"));
        let (sub, red) = substitute_zero_reduce(&[p(&c, "X1*X2 + X3")], &c, &[]).unwrap();
        assert_eq!(sub.len(), 3);
        assert_eq!(red[0].to_string(), "X1*X2 + X3");
        assert!(matches!(
            substitute_zero_reduce(&[], &c, &[5]),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn base_change() {
        let (c, a) = ring(&["X1", "X2"]);
        let l = vec![vec![q(1), q(1)], vec![q(0), q(1)]];
        let h = gl_transform_constant(&c.vars(), &l).unwrap();
        assert_eq!(h, vec![p(&c, "X1"), p(&c, "X1+X2")]);
        assert!(ci_check(&h, &a, Budget::default()).unwrap().is_ci());
        let id = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
        assert_eq!(gl_transform_constant(&c.vars(), &id).unwrap(), c.vars());
        let sing = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert_eq!(
            gl_transform_constant(&c.vars(), &sing).unwrap_err(),
            Error::SingularMatrix
        );
    }

    #[test]
    fn jacobian() {
        let (c, _) = ring(&["X1", "X2"]);
        let j = jacobian_matrix(&[p(&c, "X1^2")], &c);
        assert_eq!(j, vec![vec![p(&c, "2*X1")], vec![Polynomial::zero(&c)]]);
        let j = jacobian_matrix(&[p(&c, "X1+X2"), p(&c, "X1*X2")], &c);
        assert_eq!(j, vec![vec![p(&c, "1"), p(&c, "X2")], vec![p(&c, "1"), p(&c, "X1")]]);
        let j = jacobian_matrix(&[p(&c, "1")], &c);
        assert!(j.iter().flatten().all(|x| x.is_zero()));
    }

    #[test]
    fn radicality() {
        let (c, _) = ring(&["X1", "X2"]);
        let b = Budget::default();
        assert_eq!(
            radical_generic_test(&[p(&c, "X1")], &c, b).unwrap(),
            RadicalVerdict::RadicalCertified
        );
        assert_eq!(
            radical_generic_test(&[p(&c, "X1^2")], &c, b).unwrap(),
            RadicalVerdict::NotCertified
        );
        let (c, _) = ring(&["e", "h", "f"]);
        assert_eq!(
            radical_generic_test(&[p(&c, "h^2+4*e*f")], &c, b).unwrap(),
            RadicalVerdict::RadicalCertified
        );
    }

    #[test]
    fn shifted_sequences() {
        let b = Budget::default();
        let (c, a) = ring(&["e", "h", "f"]);
        let r = shifted_sequence_check(&[p(&c, "h^2+4*e*f")], &[p(&c, "1")], &a, b).unwrap();
        assert_eq!(r.proper, Some(true));
        assert_eq!(r.dim_found, Some(2));
        assert_eq!(r.regular, Some(true));
        for d in 0..=6 {
            assert!(graded_slice_identity(&[p(&c, "h^2+4*e*f")], &[p(&c, "1")], &a, d, b).unwrap());
        }
        let (c, a) = ring(&["X1", "X2"]);
        let seq = [p(&c, "X1+X2"), p(&c, "X1*X2")];
        let mu = [Polynomial::zero(&c), p(&c, "1")];
        let r = shifted_sequence_check(&seq, &mu, &a, b).unwrap();
        assert_eq!(r.dim_found, Some(0));
        assert!(r.is_ci());
        let err = shifted_sequence_check(&seq, &[p(&c, "X1"), p(&c, "1")], &a, b).unwrap_err();
        assert_eq!(
            err,
            Error::DegreeViolation {
                index: 0,
                shift_degree: 1,
                generator_degree: 1
            }
        );
        let (c, a) = ring(&["X1"]);
        assert!(graded_slice_identity(&[p(&c, "X1^2")], &[p(&c, "X1")], &a, 3, b).unwrap());
    }

    #[test]
    fn slice_identity_detects_non_regular_shift() {
        // X1*X2 - 1 and X1: the ideal is the unit ideal but no degree ≤ 1
        // combination of the shifted generators produces 1.
        let (c, a) = ring(&["X1", "X2"]);
        let seq = [p(&c, "X1"), p(&c, "X1*X2")];
        let mu = [Polynomial::zero(&c), p(&c, "1")];
        assert!(!graded_slice_identity(&seq, &mu, &a, 1, Budget::default()).unwrap());
    }

    #[test]
    fn unimodular_helper() {
        let l = unimodular_from_entries(3, &[1, -2, 3], &[4, 0, -1]);
        let c = VariableContext::numbered("X", 1);
        let lp: Vec<Vec<Polynomial>> = l
            .iter()
            .map(|r| r.iter().map(|x| Polynomial::constant(&c, x.clone())).collect())
            .collect();
        assert_eq!(determinant(&c, &lp), Polynomial::one(&c));
    }
}
