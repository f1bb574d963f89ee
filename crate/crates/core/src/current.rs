//! Restricted current algebras `g_m(n) = gl_n ⊗ k[x]/(x^m)`: the enveloping
//! algebra, the shifted basis `F_ij^(r)`, the central elements `ξ_k`, the
//! diagonal sequence `γ_k^m` and the induction on `m` for `V(γ) = {0}`.

use std::collections::BTreeMap;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraPresentation;
use crate::ciproof::{ci_check, substitute_zero_reduce, substitution_coherence};
use crate::error::{Error, Result};
use crate::groebner::{Budget, Ideal};
use crate::ncalg::{NcElement, NcGenerator, NcPresentation};
use crate::poly::{Monomial, Polynomial, Rational, VariableContext};
use crate::yangian::{permutations, rename_map, CenterCiReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurrentSpec {
    pub n: usize,
    pub m: usize,
}

impl CurrentSpec {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidPresentation("n and m must be positive".into()));
        }
        if n > 9 {
            return Err(Error::InvalidPresentation(
                "n > 9 is not supported by the generator names".into(),
            ));
        }
        Ok(CurrentSpec { n, m })
    }

    /// Name of `E_ij^(k)`, `0 ≤ k < m`.
    pub fn e_name(i: usize, j: usize, k: usize) -> String {
        format!("E{i}{j}_{k}")
    }

    /// Name of the graded image `F̄_ij^(r)`, `1 ≤ r ≤ m`.
    pub fn f_name(i: usize, j: usize, r: usize) -> String {
        format!("F{i}{j}_{r}")
    }

    fn basis(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for k in 0..self.m {
            for i in 1..=self.n {
                for j in 1..=self.n {
                    out.push((i, j, k));
                }
            }
        }
        out
    }
}

/// `U(g_m(n))` with all generators in filtration degree one, ordered by `(k, i, j)`.
pub fn build_current_presentation(spec: &CurrentSpec) -> Result<NcPresentation> {
    let basis = spec.basis();
    let gens: Vec<NcGenerator> = basis
        .iter()
        .map(|&(i, j, k)| NcGenerator::new(CurrentSpec::e_name(i, j, k), 1).with_bar(CurrentSpec::f_name(i, j, k + 1)))
        .collect();
    let index: BTreeMap<(usize, usize, usize), usize> = basis.iter().enumerate().map(|(x, &b)| (b, x)).collect();
    let m = spec.m;
    NcPresentation::enveloping(gens, |a, b| {
        let (i, j, ka) = basis[a];
        let (k, l, kb) = basis[b];
        let mut out = Vec::new();
        if ka + kb < m {
            if k == j {
                out.push((index[&(i, l, ka + kb)], Rational::one()));
            }
            if i == l {
                out.push((index[&(k, j, ka + kb)], -Rational::one()));
            }
        }
        out
    })
}

/// One entry of the change of basis `F_ij^(r) = E_ij^(r-1) - shift`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FBasisEntry {
    pub i: usize,
    pub j: usize,
    pub r: usize,
    pub e: String,
    pub shift: i64,
}

/// `F_ij^(1) = E_ij^(0) - m(j-1)δ_ij`, `F_ij^(r) = E_ij^(r-1)` for `r > 1`.
pub fn f_basis(spec: &CurrentSpec) -> Vec<FBasisEntry> {
    let mut out = Vec::new();
    for r in 1..=spec.m {
        for i in 1..=spec.n {
            for j in 1..=spec.n {
                let shift = if r == 1 && i == j { (spec.m * (j - 1)) as i64 } else { 0 };
                out.push(FBasisEntry {
                    i,
                    j,
                    r,
                    e: CurrentSpec::e_name(i, j, r - 1),
                    shift,
                });
            }
        }
    }
    out
}

pub fn f_elem(p: &NcPresentation, spec: &CurrentSpec, i: usize, j: usize, r: usize) -> Result<NcElement> {
    if r == 0 || r > spec.m {
        return Err(Error::UnknownGenerator(CurrentSpec::f_name(i, j, r)));
    }
    let e = p.gen(&CurrentSpec::e_name(i, j, r - 1))?;
    if r == 1 && i == j {
        let shift = Rational::from_integer(((spec.m * (j - 1)) as i64).into());
        Ok(&e - &NcElement::constant(shift))
    } else {
        Ok(e)
    }
}

/// `s` with `k = m(s-1) + r`, `1 ≤ r ≤ m`.
pub fn index_s(spec: &CurrentSpec, k: usize) -> usize {
    (k - 1) / spec.m + 1
}

/// Compositions of `k` into `s` parts, each in `1..=m`.
pub fn compositions(k: usize, s: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, parts: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for j in 1..=m.min(left) {
            cur.push(j);
            go(left - j, parts - 1, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, s, m, &mut Vec::new(), &mut out);
    out
}

fn increasing_tuples(n: usize, s: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            go(i + 1, n, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, s, &mut Vec::new(), &mut out);
    out
}

/// `ξ_k` with products taken left to right in the written order.
pub fn xi_element(p: &NcPresentation, spec: &CurrentSpec, k: usize, budget: Budget) -> Result<NcElement> {
    let s = index_s(spec, k);
    let mut out = NcElement::zero();
    for is in increasing_tuples(spec.n, s) {
        for js in compositions(k, s, spec.m) {
            for (sigma, sign) in permutations(s) {
                let factors = (0..s)
                    .map(|a| f_elem(p, spec, is[sigma[a]], is[a], js[a]))
                    .collect::<Result<Vec<_>>>()?;
                let prod = p.product(&factors, budget)?;
                out.add_scaled(&prod, &Rational::from_integer(sign.into()));
            }
        }
    }
    Ok(out)
}

/// `γ_k^m = Σ F̄_{i_1 i_1}^{(j_1)} ⋯ F̄_{i_s i_s}^{(j_s)}` in a ring containing the diagonal variables.
pub fn gamma_formula(ctx: &VariableContext, spec: &CurrentSpec, k: usize) -> Result<Polynomial> {
    let s = index_s(spec, k);
    let mut out = Polynomial::zero(ctx);
    for is in increasing_tuples(spec.n, s) {
        for js in compositions(k, s, spec.m) {
            let mut t = Polynomial::one(ctx);
            for (&i, &j) in is.iter().zip(&js) {
                t = &t * &ctx.var_named(&CurrentSpec::f_name(i, i, j))?;
            }
            out = &out + &t;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct XiFamily {
    pub spec: CurrentSpec,
    pub elements: Vec<NcElement>,
    pub graded_images: Vec<Polynomial>,
    pub gamma: Vec<Polynomial>,
    pub diagonal_context: VariableContext,
}

pub fn off_diagonal_vars(ctx: &VariableContext, spec: &CurrentSpec) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for r in 1..=spec.m {
        for i in 1..=spec.n {
            for j in 1..=spec.n {
                if i != j {
                    let name = CurrentSpec::f_name(i, j, r);
                    out.push(ctx.index_of(&name).ok_or(Error::UnknownVariable(name))?);
                }
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// `γ_1^m, …, γ_mn^m` from the graded images by killing off-diagonal
/// variables, checked against the defining formula.
pub fn gamma_sequence(
    ctx: &VariableContext,
    spec: &CurrentSpec,
    images: &[Polynomial],
) -> Result<(VariableContext, Vec<Polynomial>)> {
    let off = off_diagonal_vars(ctx, spec)?;
    let (sub, gamma) = substitute_zero_reduce(images, ctx, &off)?;
    for (k, g) in gamma.iter().enumerate() {
        if *g != gamma_formula(&sub, spec, k + 1)? {
            return Err(Error::Internal(format!("γ_{} differs from its defining sum", k + 1)));
        }
    }
    Ok((sub, gamma))
}

/// `ξ_1, …, ξ_mn`, each verified central, with graded images and `γ`.
pub fn xi_generators(p: &NcPresentation, spec: &CurrentSpec, budget: Budget) -> Result<XiFamily> {
    let mut elements = Vec::new();
    for k in 1..=spec.n * spec.m {
        let xi = xi_element(p, spec, k, budget)?;
        if !p.is_central_all(&xi, budget)? {
            return Err(Error::CentralityFailure { index: k });
        }
        elements.push(xi);
    }
    let graded_images = elements.iter().map(|x| p.graded_image(x)).collect::<Result<Vec<_>>>()?;
    let (diagonal_context, gamma) = gamma_sequence(p.bar_context(), spec, &graded_images)?;
    Ok(XiFamily {
        spec: *spec,
        elements,
        graded_images,
        gamma,
        diagonal_context,
    })
}

/// Re-expresses `poly` in `to`, sending each variable to the one named by `f`.
pub fn rename(poly: &Polynomial, to: &VariableContext, f: impl Fn(&str) -> String) -> Result<Polynomial> {
    let map = rename_map(poly.context(), to, f)?;
    let terms = poly.terms().iter().map(|(m, c)| {
        let mut e = vec![0u32; to.len()];
        for (i, &x) in m.exponents().iter().enumerate() {
            if x > 0 {
                e[map[&i]] += x;
            }
        }
        (Monomial::from_exponents(e), c.clone())
    });
    Ok(Polynomial::from_terms(to, terms))
}

/// One step of the induction on `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionTrace {
    pub m: usize,
    /// `γ_ms^m = e_s(F̄_11^(m), …, F̄_nn^(m))` for `s = 1..n`.
    pub top_are_elementary: bool,
    /// Each `F̄_ii^(m)` vanishes on `V(γ^m)`.
    pub top_vanish_on_variety: bool,
    /// `γ_k^m` for `k ∉ {m, 2m, …, nm}` with `F̄^(m) = 0`.
    pub substituted: Vec<String>,
    /// `γ_1^{m-1}, …, γ_{(m-1)n}^{m-1}`.
    pub expected: Vec<String>,
    pub replay_matches: bool,
}

fn elementary(ctx: &VariableContext, vars: &[Polynomial], s: usize) -> Polynomial {
    let n = vars.len();
    let mut out = Polynomial::zero(ctx);
    for is in increasing_tuples(n, s) {
        out = &out + &is.iter().fold(Polynomial::one(ctx), |acc, &i| &acc * &vars[i - 1]);
    }
    out
}

pub fn induction_step(
    spec: &CurrentSpec,
    gamma_ctx: &VariableContext,
    gamma: &[Polynomial],
    budget: Budget,
) -> Result<InductionTrace> {
    let (n, m) = (spec.n, spec.m);
    let top: Vec<Polynomial> = (1..=n)
        .map(|i| gamma_ctx.var_named(&CurrentSpec::f_name(i, i, m)))
        .collect::<Result<_>>()?;
    let top_are_elementary = (1..=n).all(|s| gamma[m * s - 1] == elementary(gamma_ctx, &top, s));
    let ideal = Ideal::new(gamma_ctx, gamma.to_vec())?;
    let mut top_vanish_on_variety = true;
    for t in &top {
        top_vanish_on_variety &= ideal.radical_contains(t, budget)?;
    }
    let top_idx: Vec<usize> = (1..=n)
        .map(|i| {
            gamma_ctx
                .index_of(&CurrentSpec::f_name(i, i, m))
                .expect("diagonal variable")
        })
        .collect();
    let keep: Vec<usize> = (0..gamma_ctx.len()).filter(|i| !top_idx.contains(i)).collect();
    let lower_ctx = gamma_ctx.subcontext(&keep)?;
    let mut substituted = Vec::new();
    for (k0, g) in gamma.iter().enumerate() {
        if (k0 + 1) % m != 0 {
            substituted.push(g.kill_variables(&top_idx)?.embed_into(&lower_ctx)?);
        }
    }
    let expected = if m == 1 {
        Vec::new()
    } else {
        let lower = CurrentSpec::new(n, m - 1)?;
        (1..=n * (m - 1))
            .map(|k| gamma_formula(&lower_ctx, &lower, k))
            .collect::<Result<Vec<_>>>()?
    };
    Ok(InductionTrace {
        m,
        top_are_elementary,
        top_vanish_on_variety,
        replay_matches: substituted == expected,
        substituted: substituted.iter().map(|p| p.to_string()).collect(),
        expected: expected.iter().map(|p| p.to_string()).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurrentCiReport {
    #[serde(flatten)]
    pub center: CenterCiReport,
    pub induction: Vec<InductionTrace>,
}

/// `γ` and `ξ̄` CI checks, the substitution coherence, and the induction
/// replayed from `m` down to one.
pub fn verify_center_ci_current(family: &XiFamily, p: &NcPresentation, budget: Budget) -> Result<CurrentCiReport> {
    let ctx = p.bar_context();
    let spec = family.spec;
    let diagonal = ci_check(
        &family.gamma,
        &AlgebraPresentation::polynomial_ring(&family.diagonal_context),
        budget,
    )?;
    let graded = ci_check(
        &family.graded_images,
        &AlgebraPresentation::polynomial_ring(ctx),
        budget,
    )?;
    let off = off_diagonal_vars(ctx, &spec)?;
    let (augmented, reduced) = substitution_coherence(&family.graded_images, ctx, &off, budget)?;
    let mut induction = Vec::new();
    for mm in (1..=spec.m).rev() {
        let s = CurrentSpec::new(spec.n, mm)?;
        // the γ family of level mm lives on the diagonal variables of superscript ≤ mm
        let names: Vec<String> = (1..=mm)
            .flat_map(|r| (1..=spec.n).map(move |i| CurrentSpec::f_name(i, i, r)))
            .collect();
        let ctx_mm = VariableContext::standard(&names)?;
        let gamma = (1..=spec.n * mm)
            .map(|k| gamma_formula(&ctx_mm, &s, k))
            .collect::<Result<Vec<_>>>()?;
        induction.push(induction_step(&s, &ctx_mm, &gamma, budget)?);
    }
    Ok(CurrentCiReport {
        center: CenterCiReport {
            schema: crate::SCHEMA.to_string(),
            n: spec.n,
            level: spec.m,
            substitution_coherent: augmented.verdict == reduced.verdict,
            diagonal,
            graded,
            augmented,
            reduced,
        },
        induction,
    })
}

impl CurrentCiReport {
    pub fn induction_replay_ok(&self) -> bool {
        self.induction.iter().all(|t| t.top_are_elementary && t.replay_matches)
    }
}

/// Whether two sequences generate the same ideal.
pub fn same_ideal(a: &[Polynomial], b: &[Polynomial], budget: Budget) -> Result<bool> {
    let Some(ctx) = a.first().or(b.first()).map(|p| p.context().clone()) else {
        return Ok(true);
    };
    let ia = Ideal::new(&ctx, a.to_vec())?;
    let ib = Ideal::new(&ctx, b.to_vec())?;
    for x in b {
        if !ia.contains(x, budget)? {
            return Ok(false);
        }
    }
    for x in a {
        if !ib.contains(x, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// At `m = 1` the graded images `ξ̄` and the Yangian `d̄` at level one
/// generate the same ideal once `X_ij^(1)` is read as `F̄_ij^(1)`.
pub fn level_one_matches_yangian(n: usize, budget: Budget) -> Result<bool> {
    let cs = CurrentSpec::new(n, 1)?;
    let cp = build_current_presentation(&cs)?;
    let xi = xi_generators(&cp, &cs, budget)?;
    let ys = crate::yangian::YangianSpec::new(n, 1)?;
    let yp = crate::yangian::build_presentation(&ys, budget)?;
    let yf = crate::yangian::center_family(&yp, &ys, budget)?;
    let renamed = yf
        .graded_images
        .iter()
        .map(|d| rename(d, cp.bar_context(), |name| name.replacen('X', "F", 1)))
        .collect::<Result<Vec<_>>>()?;
    same_ideal(&xi.graded_images, &renamed, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn abelian_for_gl1() {
        let s = CurrentSpec::new(1, 2).unwrap();
        let p = build_current_presentation(&s).unwrap();
        let a = p.gen("E11_0").unwrap();
        let c = p.gen("E11_1").unwrap();
        assert!(p.commutator(&a, &c, b()).unwrap().is_zero());
    }

    #[test]
    fn gl2_structure() {
        let s = CurrentSpec::new(2, 1).unwrap();
        let p = build_current_presentation(&s).unwrap();
        let e = |n: &str| p.gen(n).unwrap();
        assert_eq!(
            p.commutator(&e("E12_0"), &e("E21_0"), b()).unwrap(),
            &e("E11_0") - &e("E22_0")
        );
    }

    #[test]
    fn truncation_kills_high_brackets() {
        let s = CurrentSpec::new(2, 2).unwrap();
        let p = build_current_presentation(&s).unwrap();
        let e = |n: &str| p.gen(n).unwrap();
        assert_eq!(
            p.commutator(&e("E12_0"), &e("E21_1"), b()).unwrap(),
            &e("E11_1") - &e("E22_1")
        );
        assert!(p.commutator(&e("E12_1"), &e("E21_1"), b()).unwrap().is_zero());
    }

    #[test]
    fn shifts() {
        let s = CurrentSpec::new(2, 2).unwrap();
        let fb = f_basis(&s);
        let f22 = fb.iter().find(|x| x.i == 2 && x.j == 2 && x.r == 1).unwrap();
        assert_eq!((f22.e.as_str(), f22.shift), ("E22_0", 2));
        assert!(fb.iter().filter(|x| x.r > 1 || x.i != x.j).all(|x| x.shift == 0));
    }

    #[test]
    fn composition_enumeration() {
        assert_eq!(compositions(3, 2, 2), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(compositions(4, 2, 2), vec![vec![2, 2]]);
        assert!(compositions(5, 2, 2).is_empty());
    }

    #[test]
    fn gl1_xi() {
        let s = CurrentSpec::new(1, 3).unwrap();
        let p = build_current_presentation(&s).unwrap();
        let fam = xi_generators(&p, &s, b()).unwrap();
        for k in 1..=3 {
            assert_eq!(fam.elements[k - 1], p.gen(&CurrentSpec::e_name(1, 1, k - 1)).unwrap());
        }
    }

    #[test]
    fn gamma_top_terms() {
        let s = CurrentSpec::new(2, 2).unwrap();
        let names: Vec<String> = ["F11_1", "F22_1", "F11_2", "F22_2"]
            .iter()
            .map(|x| x.to_string())
            .collect();
        let c = VariableContext::standard(&names).unwrap();
        assert_eq!(
            gamma_formula(&c, &s, 4).unwrap(),
            Polynomial::parse(&c, "F11_2*F22_2").unwrap()
        );
        assert_eq!(
            gamma_formula(&c, &s, 3).unwrap(),
            Polynomial::parse(&c, "F11_1*F22_2 + F11_2*F22_1").unwrap()
        );
    }

    #[test]
    fn gl2_level_one_pipeline() {
        let s = CurrentSpec::new(2, 1).unwrap();
        let p = build_current_presentation(&s).unwrap();
        let fam = xi_generators(&p, &s, b()).unwrap();
        assert_eq!(
            fam.elements[1],
            p.parse_element("E11_0*E22_0 - E11_0 - E21_0*E12_0", b()).unwrap()
        );
        let r = verify_center_ci_current(&fam, &p, b()).unwrap();
        assert_eq!(r.center.diagonal.dim_found, Some(0));
        assert_eq!(r.center.graded.dim_found, Some(2));
        assert!(r.induction_replay_ok());
    }

    #[test]
    fn level_one_degeneration() {
        assert!(level_one_matches_yangian(2, b()).unwrap());
        assert!(level_one_matches_yangian(3, b()).unwrap());
    }

    #[test]
    fn gl2_level_two_gamma_is_not_ci() {
        let s = CurrentSpec::new(2, 2).unwrap();
        let p = build_current_presentation(&s).unwrap();
        let fam = xi_generators(&p, &s, b()).unwrap();
        let r = verify_center_ci_current(&fam, &p, b()).unwrap();
        // γ cuts out the line F11_1 = -F22_1, F11_2 = F22_2 = 0
        assert_eq!(r.center.diagonal.dim_found, Some(1));
        assert_eq!(r.center.graded.dim_found, Some(4));
        assert!(r.center.graded.is_ci());
        assert!(r.center.substitution_coherent);
        let top = &r.induction[0];
        assert!(top.top_are_elementary && top.top_vanish_on_variety);
        assert_eq!(top.substituted, vec!["F11_1 + F22_1", "0"]);
        assert!(!r.induction_replay_ok());
    }
}
