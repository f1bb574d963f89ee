//! Restricted Yangians `Y_p(gl_n)`: the PBW presentation, the quantum
//! determinant and its coefficients `d_s`, their graded images and the
//! complete-intersection check on those images.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraPresentation;
use crate::ciproof::{ci_check, substitute_zero_reduce, substitution_coherence, CIReport};
use crate::error::{Error, Result};
use crate::groebner::Budget;
use crate::ncalg::{NcElement, NcGenerator, NcPresentation, NcTermJson};
use crate::poly::{terms_to_json, Polynomial, Rational, TermJson, UPolynomial, VariableContext};

/// Default bound on `np` for the CI pipeline.
pub const DEFAULT_MAX_NP: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YangianSpec {
    pub n: usize,
    pub p: usize,
}

/// All permutations of `0..n` with their signs, in lexicographic order.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, i64)>) {
        if rest.is_empty() {
            let mut inv = 0;
            for i in 0..cur.len() {
                for j in i + 1..cur.len() {
                    if cur[i] > cur[j] {
                        inv += 1;
                    }
                }
            }
            out.push((cur.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for k in 0..rest.len() {
            let x = rest.remove(k);
            cur.push(x);
            go(rest, cur, out);
            cur.pop();
            rest.insert(k, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

impl YangianSpec {
    pub fn new(n: usize, p: usize) -> Result<Self> {
        if n == 0 || p == 0 {
            return Err(Error::InvalidPresentation("n and p must be positive".into()));
        }
        if n > 9 {
            return Err(Error::InvalidPresentation(
                "n > 9 is not supported by the generator names".into(),
            ));
        }
        Ok(YangianSpec { n, p })
    }

    /// Name of `t_ij^(k)`, indices from one.
    pub fn t_name(i: usize, j: usize, k: usize) -> String {
        format!("t{i}{j}_{k}")
    }

    /// Name of the graded image `X_ij^(k)`.
    pub fn x_name(i: usize, j: usize, k: usize) -> String {
        format!("X{i}{j}_{k}")
    }

    /// The generators in declared order `(k, i, j)`.
    pub fn generators(&self) -> Vec<NcGenerator> {
        let mut g = Vec::new();
        for k in 1..=self.p {
            for i in 1..=self.n {
                for j in 1..=self.n {
                    g.push(NcGenerator::new(Self::t_name(i, j, k), k as u32).with_bar(Self::x_name(i, j, k)));
                }
            }
        }
        g
    }
}

/// `t_ij^(r)` with `t^(0) = δ` and `t^(r) = 0` beyond the level.
fn t_elem(p: &NcPresentation, spec: &YangianSpec, i: usize, j: usize, r: usize) -> Result<NcElement> {
    if r == 0 {
        return Ok(if i == j { NcElement::one() } else { NcElement::zero() });
    }
    if r > spec.p {
        return Ok(NcElement::zero());
    }
    p.gen(&YangianSpec::t_name(i, j, r))
}

/// Right-hand side of the defining relation for `[t_ij^(r), t_kl^(s)]`,
/// normal-ordered with the brackets already present in `p`.
pub fn defining_bracket(
    p: &NcPresentation,
    spec: &YangianSpec,
    (i, j, r): (usize, usize, usize),
    (k, l, s): (usize, usize, usize),
    budget: Budget,
) -> Result<NcElement> {
    let mut out = NcElement::zero();
    for a in 1..=r.min(s) {
        let x = p.mul(
            &t_elem(p, spec, k, j, a - 1)?,
            &t_elem(p, spec, i, l, r + s - a)?,
            budget,
        )?;
        let y = p.mul(
            &t_elem(p, spec, k, j, r + s - a)?,
            &t_elem(p, spec, i, l, a - 1)?,
            budget,
        )?;
        out = &out + &(&x - &y);
    }
    Ok(out)
}

/// `Y_p(gl_n)` with generators ordered by `(k, i, j)`.
///
/// Brackets are filled in by increasing `r + s`: the correction terms for a
/// pair of total degree `r + s` only need brackets of total degree `r + s - 1`.
pub fn build_presentation(spec: &YangianSpec, budget: Budget) -> Result<NcPresentation> {
    let mut p = NcPresentation::new(spec.generators())?;
    let n = spec.n;
    let mut letters = Vec::new();
    for k in 1..=spec.p {
        for i in 1..=n {
            for j in 1..=n {
                letters.push((i, j, k));
            }
        }
    }
    for total in 2..=2 * spec.p {
        for (ai, &a) in letters.iter().enumerate() {
            for &b in &letters[..ai] {
                if a.2 + b.2 != total {
                    continue;
                }
                let e = defining_bracket(&p, spec, a, b, budget)?;
                let pa = p.position(&YangianSpec::t_name(a.0, a.1, a.2))?;
                let pb = p.position(&YangianSpec::t_name(b.0, b.1, b.2))?;
                p.set_bracket(pa, pb, e)?;
            }
        }
    }
    p.seal();
    Ok(p)
}

fn t_series(p: &NcPresentation, spec: &YangianSpec, i: usize, j: usize) -> Result<UPolynomial<NcElement>> {
    // coefficient of u^(p-k) is t_ij^(k)
    let mut coeffs = vec![NcElement::zero(); spec.p + 1];
    for k in 0..=spec.p {
        coeffs[spec.p - k] = t_elem(p, spec, i, j, k)?;
    }
    Ok(UPolynomial::new(coeffs))
}

fn qdet_with<F>(p: &NcPresentation, spec: &YangianSpec, budget: Budget, entry: F) -> Result<UPolynomial<NcElement>>
where
    F: Fn(&[usize], usize) -> (usize, usize),
{
    let mut total = UPolynomial::new(Vec::new());
    for (sigma, sign) in permutations(spec.n) {
        let mut acc = UPolynomial::new(vec![NcElement::one()]);
        for a in 0..spec.n {
            let (i, j) = entry(&sigma, a);
            let f = t_series(p, spec, i + 1, j + 1)?.shifted(&Rational::from_integer((a as i64).into()));
            acc = acc.try_mul(&f, |x, y| p.mul(x, y, budget))?;
        }
        total = total.add(&acc.scale(&Rational::from_integer(sign.into())));
    }
    Ok(total)
}

/// `Σ_σ sgn σ · T_{σ(1)1}(u) T_{σ(2)2}(u-1) ⋯ T_{σ(n)n}(u-n+1)`.
pub fn quantum_determinant(p: &NcPresentation, spec: &YangianSpec, budget: Budget) -> Result<UPolynomial<NcElement>> {
    qdet_with(p, spec, budget, |sigma, a| (sigma[a], a))
}

/// The same sum with row and column indices exchanged,
/// `Σ_σ sgn σ · T_{1σ(1)}(u) T_{2σ(2)}(u-1) ⋯`.
pub fn quantum_determinant_row_form(
    p: &NcPresentation,
    spec: &YangianSpec,
    budget: Budget,
) -> Result<UPolynomial<NcElement>> {
    qdet_with(p, spec, budget, |sigma, a| (a, sigma[a]))
}

/// The coefficients `d_s` of `u^(np-s)`, `s = 1..np`.
pub fn qdet_coefficients(qdet: &UPolynomial<NcElement>, spec: &YangianSpec) -> Result<Vec<NcElement>> {
    let np = spec.n * spec.p;
    if qdet.degree() != Some(np) || qdet.leading() != Some(&NcElement::one()) {
        return Err(Error::Internal("quantum determinant is not monic of degree np".into()));
    }
    Ok((1..=np)
        .map(|s| qdet.coeff(np - s).cloned().unwrap_or_default())
        .collect())
}

/// `det X(u)` for the commutative matrix `X_ij(u) = δ_ij u^p + Σ_k X_ij^(k) u^(p-k)`,
/// with row `i` shifted to `u - shifts[i]`.
pub fn commutative_det(
    ctx: &VariableContext,
    spec: &YangianSpec,
    shifts: &[Rational],
    diagonal_only: bool,
) -> Result<UPolynomial<Polynomial>> {
    let entry = |i: usize, j: usize| -> Result<UPolynomial<Polynomial>> {
        let mut coeffs = vec![Polynomial::zero(ctx); spec.p + 1];
        if i == j {
            coeffs[spec.p] = Polynomial::one(ctx);
        }
        if i == j || !diagonal_only {
            for k in 1..=spec.p {
                coeffs[spec.p - k] = ctx.var_named(&YangianSpec::x_name(i + 1, j + 1, k))?;
            }
        }
        Ok(UPolynomial::new(coeffs))
    };
    let mut total = UPolynomial::new(Vec::new());
    for (sigma, sign) in permutations(spec.n) {
        let mut acc = UPolynomial::new(vec![Polynomial::one(ctx)]);
        for (i, &j) in sigma.iter().enumerate() {
            let s = shifts.get(i).cloned().unwrap_or_else(Rational::zero);
            let e = entry(i, j)?.shifted(&s);
            acc = acc.try_mul(&e, |x, y| Ok(x * y))?;
        }
        total = total.add(&acc.scale(&Rational::from_integer(sign.into())));
    }
    Ok(total)
}

fn coefficient_list(det: &UPolynomial<Polynomial>, ctx: &VariableContext, np: usize) -> Vec<Polynomial> {
    (1..=np)
        .map(|s| det.coeff(np - s).cloned().unwrap_or_else(|| Polynomial::zero(ctx)))
        .collect()
}

#[derive(Clone, Debug)]
pub struct CenterFamily {
    pub spec: YangianSpec,
    pub qdet: UPolynomial<NcElement>,
    pub elements: Vec<NcElement>,
    pub graded_images: Vec<Polynomial>,
    pub c_sequence: Vec<Polynomial>,
    /// Variables of the diagonal subring carrying `c_sequence`.
    pub diagonal_context: VariableContext,
}

/// `d_1, …, d_np`, each verified central.
pub fn center_generators(p: &NcPresentation, spec: &YangianSpec, budget: Budget) -> Result<Vec<NcElement>> {
    let qdet = quantum_determinant(p, spec, budget)?;
    let ds = qdet_coefficients(&qdet, spec)?;
    for (s, d) in ds.iter().enumerate() {
        if !p.is_central_all(d, budget)? {
            return Err(Error::CentralityFailure { index: s + 1 });
        }
    }
    Ok(ds)
}

/// Graded images of the `d_s`, checked against the coefficients of `det X(u)`.
pub fn graded_center_images(p: &NcPresentation, spec: &YangianSpec, ds: &[NcElement]) -> Result<Vec<Polynomial>> {
    let ctx = p.bar_context();
    let expected = coefficient_list(&commutative_det(ctx, spec, &[], false)?, ctx, spec.n * spec.p);
    let mut out = Vec::with_capacity(ds.len());
    for (s, (d, e)) in ds.iter().zip(&expected).enumerate() {
        let img = p.graded_image(d)?;
        if &img != e {
            return Err(Error::GradedMismatch { index: s + 1 });
        }
        out.push(img);
    }
    Ok(out)
}

/// Top-degree parts of the coefficients of `det X(u)` with rows shifted by `shifts`
/// agree with the unshifted graded images.
pub fn shift_invariance_check(
    ctx: &VariableContext,
    spec: &YangianSpec,
    shifts: &[Rational],
    images: &[Polynomial],
) -> Result<bool> {
    let det = commutative_det(ctx, spec, shifts, false)?;
    let coeffs = coefficient_list(&det, ctx, spec.n * spec.p);
    Ok(coeffs.iter().zip(images).enumerate().all(|(s, (c, img))| {
        let top = c
            .homogeneous_components()
            .remove(&(s as u32 + 1))
            .unwrap_or_else(|| Polynomial::zero(ctx));
        &top == img
    }))
}

/// Indices (in the graded-image ring) of the off-diagonal variables.
pub fn off_diagonal_vars(ctx: &VariableContext, spec: &YangianSpec) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for k in 1..=spec.p {
        for i in 1..=spec.n {
            for j in 1..=spec.n {
                if i != j {
                    let name = YangianSpec::x_name(i, j, k);
                    out.push(ctx.index_of(&name).ok_or(Error::UnknownVariable(name))?);
                }
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// `c_s`: the graded images with off-diagonal variables set to zero, checked
/// against the coefficients of `Π_i X_ii(u)`.
pub fn c_sequence(
    ctx: &VariableContext,
    spec: &YangianSpec,
    images: &[Polynomial],
) -> Result<(VariableContext, Vec<Polynomial>)> {
    let off = off_diagonal_vars(ctx, spec)?;
    let (sub, cs) = substitute_zero_reduce(images, ctx, &off)?;
    let diag = commutative_det(ctx, spec, &[], true)?;
    let expected = coefficient_list(&diag, ctx, spec.n * spec.p)
        .into_iter()
        .map(|c| c.embed_into(&sub))
        .collect::<Result<Vec<_>>>()?;
    if expected != cs {
        return Err(Error::Internal("c-sequence differs from the diagonal product".into()));
    }
    Ok((sub, cs))
}

pub fn center_family(p: &NcPresentation, spec: &YangianSpec, budget: Budget) -> Result<CenterFamily> {
    let qdet = quantum_determinant(p, spec, budget)?;
    let elements = center_generators(p, spec, budget)?;
    let graded_images = graded_center_images(p, spec, &elements)?;
    let (diagonal_context, c_sequence) = c_sequence(p.bar_context(), spec, &graded_images)?;
    Ok(CenterFamily {
        spec: *spec,
        qdet,
        elements,
        graded_images,
        c_sequence,
        diagonal_context,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterCiReport {
    pub schema: String,
    pub n: usize,
    /// `p` for Yangians, `m` for current algebras.
    pub level: usize,
    /// The diagonal sequence in the diagonal subring.
    pub diagonal: CIReport,
    /// The graded images in the full graded ring.
    pub graded: CIReport,
    /// Off-diagonal variables followed by the graded images, in the full ring.
    pub augmented: CIReport,
    /// The reduced sequence obtained from `augmented` by substitution.
    pub reduced: CIReport,
    pub substitution_coherent: bool,
}

/// CI checks on `c`, on `d̄`, and the substitution coherence between them.
pub fn verify_center_ci(family: &CenterFamily, p: &NcPresentation, budget: Budget) -> Result<CenterCiReport> {
    let ctx = p.bar_context();
    let diagonal = ci_check(
        &family.c_sequence,
        &AlgebraPresentation::polynomial_ring(&family.diagonal_context),
        budget,
    )?;
    let graded = ci_check(
        &family.graded_images,
        &AlgebraPresentation::polynomial_ring(ctx),
        budget,
    )?;
    let off = off_diagonal_vars(ctx, &family.spec)?;
    let (augmented, reduced) = substitution_coherence(&family.graded_images, ctx, &off, budget)?;
    Ok(CenterCiReport {
        schema: crate::SCHEMA.to_string(),
        n: family.spec.n,
        level: family.spec.p,
        substitution_coherent: augmented.verdict == reduced.verdict,
        diagonal,
        graded,
        augmented,
        reduced,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterElementJson {
    pub index: usize,
    pub filtration_degree: Option<u32>,
    pub element: Vec<NcTermJson>,
    pub text: String,
    pub graded_image: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterJson {
    pub schema: String,
    pub family: String,
    pub n: usize,
    pub level: usize,
    pub generators: Vec<NcGenerator>,
    pub center: Vec<CenterElementJson>,
}

pub fn center_json(
    family: &str,
    n: usize,
    level: usize,
    p: &NcPresentation,
    elements: &[NcElement],
    images: &[Polynomial],
) -> CenterJson {
    CenterJson {
        schema: crate::SCHEMA.to_string(),
        family: family.to_string(),
        n,
        level,
        generators: p.generators().to_vec(),
        center: elements
            .iter()
            .zip(images)
            .enumerate()
            .map(|(k, (e, img))| CenterElementJson {
                index: k + 1,
                filtration_degree: p.degree(e),
                element: p.element_to_json(e),
                text: p.format(e),
                graded_image: terms_to_json(img),
            })
            .collect(),
    }
}

/// Maps `X_ij^(k)` names to the corresponding variables of another context.
pub fn rename_map(
    from: &VariableContext,
    to: &VariableContext,
    f: impl Fn(&str) -> String,
) -> Result<BTreeMap<usize, usize>> {
    let mut m = BTreeMap::new();
    for (i, name) in from.names().iter().enumerate() {
        let target = f(name);
        let j = to.index_of(&target).ok_or(Error::UnknownVariable(target))?;
        m.insert(i, j);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;

    fn b() -> Budget {
        Budget::default()
    }

    fn pres(n: usize, p: usize) -> (YangianSpec, NcPresentation) {
        let s = YangianSpec::new(n, p).unwrap();
        let pr = build_presentation(&s, b()).unwrap();
        (s, pr)
    }

    #[test]
    fn signs_of_permutations() {
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms.iter().map(|(_, s)| s).sum::<i64>(), 0);
        assert_eq!(perms[0], (vec![0, 1, 2], 1));
        assert_eq!(perms[1], (vec![0, 2, 1], -1));
    }

    #[test]
    fn gl2_relations() {
        let (_, p) = pres(2, 1);
        let nf = p.pbw_normal_form_named(&["t12_1", "t11_1"], b()).unwrap();
        assert_eq!(p.format(&nf), "t11_1*t12_1 - t12_1");
        let t = |n: &str| p.gen(n).unwrap();
        // [t_ij, t_kl] = δ_kj t_il − δ_il t_kj
        let br = p.commutator(&t("t12_1"), &t("t21_1"), b()).unwrap();
        assert_eq!(br, &t("t11_1") - &t("t22_1"));
        let sum = &t("t11_1") + &t("t22_1");
        assert!(p.commutator(&sum, &t("t12_1"), b()).unwrap().is_zero());
    }

    #[test]
    fn level_two_gl1_commutes() {
        let (_, p) = pres(1, 2);
        let a = p.pbw_normal_form_named(&["t11_2", "t11_1"], b()).unwrap();
        let c = p.pbw_normal_form_named(&["t11_1", "t11_2"], b()).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let (s, p) = pres(2, 2);
        let mut letters = Vec::new();
        for k in 1..=2 {
            for i in 1..=2 {
                for j in 1..=2 {
                    letters.push((i, j, k));
                }
            }
        }
        for &a in &letters {
            for &c in &letters {
                let x = defining_bracket(&p, &s, a, c, b()).unwrap();
                let y = defining_bracket(&p, &s, c, a, b()).unwrap();
                assert_eq!(x, -&y, "{a:?} {c:?}");
            }
        }
    }

    #[test]
    fn gl2_quantum_determinant() {
        let (s, p) = pres(2, 1);
        let qd = quantum_determinant(&p, &s, b()).unwrap();
        assert_eq!(qd.degree(), Some(2));
        let ds = qdet_coefficients(&qd, &s).unwrap();
        assert_eq!(p.format(&ds[0]), "t11_1 + t22_1 - 1");
        assert_eq!(
            ds[1],
            p.parse_element("t11_1*t22_1 - t11_1 - t21_1*t12_1", b()).unwrap()
        );
    }

    #[test]
    fn row_form_is_not_central() {
        let (s, p) = pres(2, 1);
        let qd = quantum_determinant_row_form(&p, &s, b()).unwrap();
        let d2 = qd.coeff(0).unwrap();
        assert_eq!(
            *d2,
            p.parse_element("t11_1*t22_1 - 2*t11_1 + t22_1 - t21_1*t12_1", b())
                .unwrap()
        );
        assert!(!p.is_central_all(d2, b()).unwrap());
    }

    #[test]
    fn gl1_center_is_generators() {
        let (s, p) = pres(1, 3);
        let ds = center_generators(&p, &s, b()).unwrap();
        for (k, d) in ds.iter().enumerate() {
            assert_eq!(*d, p.gen(&YangianSpec::t_name(1, 1, k + 1)).unwrap());
        }
    }

    #[test]
    fn gl2_level_two_family() {
        let (s, p) = pres(2, 2);
        let fam = center_family(&p, &s, b()).unwrap();
        assert_eq!(fam.elements.len(), 4);
        for (k, d) in fam.elements.iter().enumerate() {
            assert_eq!(p.degree(d), Some(k as u32 + 1));
        }
        let dc = &fam.diagonal_context;
        let x = |n: &str| dc.var_named(n).unwrap();
        let (a1, a2, c1, c2) = (x("X11_1"), x("X11_2"), x("X22_1"), x("X22_2"));
        // (u² + a1 u + a2)(u² + c1 u + c2)
        assert_eq!(fam.c_sequence[0], &a1 + &c1);
        assert_eq!(fam.c_sequence[1], &(&a2 + &c2) + &(&a1 * &c1));
        assert_eq!(fam.c_sequence[2], &(&a1 * &c2) + &(&a2 * &c1));
        assert_eq!(fam.c_sequence[3], &a2 * &c2);
        let shifts = [q(3) / q(7), -q(5) / q(2)];
        assert!(shift_invariance_check(p.bar_context(), &s, &shifts, &fam.graded_images).unwrap());
    }

    #[test]
    fn gl2_ci() {
        let (s, p) = pres(2, 1);
        let fam = center_family(&p, &s, b()).unwrap();
        let r = verify_center_ci(&fam, &p, b()).unwrap();
        assert_eq!(r.diagonal.dim_found, Some(0));
        assert_eq!(r.graded.dim_found, Some(2));
        assert!(r.substitution_coherent);
    }
}
