//! Degree-truncated freeness certificates: a graded complement `H` of the
//! ideal `I = (g)`, the Hilbert-series factorization it implies, and the
//! bijectivity of `π: k[g] ⊗ H → Λ, γ ⊗ h ↦ γh` in each degree, plus the
//! lift of the same check to a filtered algebra through PBW coordinates.

use std::collections::HashMap;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::{monomials_of_degree, AlgebraPresentation, GradedPieces};
use crate::ciproof::ci_check;
use crate::error::{Error, Result};
use crate::groebner::Budget;
use crate::koszul::{ideal_slice_dim, sequence_degrees};
use crate::linalg::{RowEchelon, SparseVec};
use crate::ncalg::{NcElement, NcPresentation, Word};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Rational, VariableContext};

/// Standard monomials of `J + (g)` in each degree up to the cutoff.
#[derive(Clone, Debug)]
pub struct GradedComplement {
    ctx: VariableContext,
    ideal: Vec<Polynomial>,
    per_degree: Vec<Vec<Monomial>>,
}

impl GradedComplement {
    pub fn cutoff(&self) -> u32 {
        self.per_degree.len() as u32 - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.per_degree.iter().map(Vec::len).collect()
    }

    pub fn basis(&self, d: u32) -> &[Monomial] {
        self.per_degree.get(d as usize).map_or(&[], Vec::as_slice)
    }

    pub fn basis_polys(&self, d: u32) -> Vec<Polynomial> {
        self.basis(d)
            .iter()
            .map(|m| Polynomial::monomial(&self.ctx, m.clone(), Rational::one()))
            .collect()
    }

    pub fn ideal(&self) -> &[Polynomial] {
        &self.ideal
    }
}

pub fn graded_complement(
    seq: &[Polynomial],
    algebra: &AlgebraPresentation,
    cutoff: u32,
    budget: Budget,
) -> Result<GradedComplement> {
    sequence_degrees(seq)?;
    let ideal = algebra.ideal_with(seq)?;
    let gb = ideal.basis(MonomialOrder::WeightedDegrevlex, budget)?;
    let w = algebra.context().weights();
    let per_degree = (0..=cutoff)
        .map(|d| {
            monomials_of_degree(w, d)
                .into_iter()
                .filter(|m| gb.is_standard(m))
                .collect()
        })
        .collect();
    Ok(GradedComplement {
        ctx: algebra.context().clone(),
        ideal: seq.to_vec(),
        per_degree,
    })
}

/// `dim H_d + dim I_d = dim Λ_d`, with `I_d` spanned directly by products.
pub fn complement_is_exact(
    complement: &GradedComplement,
    algebra: &AlgebraPresentation,
    d: u32,
    budget: Budget,
) -> Result<bool> {
    let lam = algebra.graded(d, budget)?.dim(d);
    let id = ideal_slice_dim(complement.ideal(), algebra, d, budget)?;
    Ok(complement.basis(d).len() + id == lam)
}

/// Coefficients of `Π_i (1 - T^{d_i})^{-1} · Σ_d h_d T^d` up to `T^cutoff`.
pub fn product_series(degrees: &[u32], h: &[usize], cutoff: u32) -> Result<Vec<u64>> {
    if degrees.contains(&0) {
        return Err(Error::Shape("generator of degree 0 in a Hilbert factor".into()));
    }
    let n = cutoff as usize + 1;
    let mut s: Vec<u64> = (0..n).map(|d| h.get(d).copied().unwrap_or(0) as u64).collect();
    for &di in degrees {
        let di = di as usize;
        // multiply by 1/(1 - T^di): running sums with stride di
        for k in di..n {
            s[k] += s[k - di];
        }
    }
    Ok(s)
}

/// `Hilb_Λ ≡ Π (1 - T^{d_i})^{-1} · Hilb_H  mod T^{cutoff+1}`.
pub fn hilbert_check(
    algebra: &AlgebraPresentation,
    degrees: &[u32],
    complement: &GradedComplement,
    cutoff: u32,
    budget: Budget,
) -> Result<bool> {
    Ok(hilbert_first_mismatch(algebra, degrees, complement, cutoff, budget)?.is_none())
}

pub fn hilbert_first_mismatch(
    algebra: &AlgebraPresentation,
    degrees: &[u32],
    complement: &GradedComplement,
    cutoff: u32,
    budget: Budget,
) -> Result<Option<u32>> {
    if complement.cutoff() < cutoff {
        return Err(Error::Shape(format!(
            "complement only computed to degree {}",
            complement.cutoff()
        )));
    }
    let lam = algebra.graded(cutoff, budget)?.hilbert_function();
    let prod = product_series(degrees, &complement.dims(), cutoff)?;
    Ok((0..=cutoff).find(|&d| lam[d as usize] as u64 != prod[d as usize]))
}

fn exponent_vectors(degrees: &[u32], d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; degrees.len()];
    fn go(w: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == w.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut e = 0;
        while e * w[i] <= left {
            cur[i] = e;
            go(w, i + 1, left - e * w[i], cur, out);
            e += 1;
        }
        cur[i] = 0;
    }
    go(degrees, 0, d, &mut cur, &mut out);
    out
}

struct GammaPowers {
    seq: Vec<Polynomial>,
    cache: HashMap<Vec<u32>, Polynomial>,
}

impl GammaPowers {
    fn get(&mut self, e: &[u32]) -> Polynomial {
        if let Some(p) = self.cache.get(e) {
            return p.clone();
        }
        let ctx = self.seq[0].context().clone();
        let p = self
            .seq
            .iter()
            .zip(e)
            .fold(Polynomial::one(&ctx), |acc, (g, &k)| &acc * &g.pow(k));
        self.cache.insert(e.to_vec(), p.clone());
        p
    }
}

/// Whether `{m(g)·h : deg m(g) + deg h = d}` is a basis of `Λ_d`.
pub fn pi_bijectivity(
    seq: &[Polynomial],
    complement: &GradedComplement,
    algebra: &AlgebraPresentation,
    d: u32,
    budget: Budget,
) -> Result<bool> {
    let pieces = algebra.graded(d, budget)?;
    let degrees = sequence_degrees(seq)?;
    let mut powers = GammaPowers {
        seq: seq.to_vec(),
        cache: HashMap::new(),
    };
    pi_in_degree(&pieces, &degrees, &mut powers, complement, d)
}

fn pi_in_degree(
    pieces: &GradedPieces,
    degrees: &[u32],
    powers: &mut GammaPowers,
    complement: &GradedComplement,
    d: u32,
) -> Result<bool> {
    let mut span = RowEchelon::new();
    let mut count = 0usize;
    for hd in 0..=d {
        let hs = complement.basis(hd);
        if hs.is_empty() {
            continue;
        }
        let exps = if degrees.is_empty() {
            if hd == d {
                vec![Vec::new()]
            } else {
                Vec::new()
            }
        } else {
            exponent_vectors(degrees, d - hd)
        };
        for e in exps {
            let gamma = if degrees.is_empty() { None } else { Some(powers.get(&e)) };
            for h in hs {
                let elem = match &gamma {
                    Some(g) => g.mul_monomial(h, &Rational::one()),
                    None => pieces.monomial_poly(h),
                };
                count += 1;
                if !span.insert(pieces.coordinates(&elem, d)?) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(count == pieces.dim(d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateMode {
    Commutative,
    Filtered,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessCertificate {
    pub schema: String,
    pub mode: CertificateMode,
    pub cutoff: u32,
    pub degrees: Vec<u32>,
    pub hilbert_ok: bool,
    /// Largest `d` such that `π` is bijective in every degree `≤ d`; `-1` if it fails in degree 0.
    pub pi_bijective_up_to: i64,
    pub complement_dims: Vec<usize>,
    /// `dim H_d + dim I_d = dim Λ_d` in every degree (commutative mode only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complement_exact: Option<bool>,
    /// Number of new products `m(g)·h` per filtration degree (filtered mode only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtered_dims: Option<Vec<usize>>,
}

impl FreenessCertificate {
    pub fn is_free_up_to_cutoff(&self) -> bool {
        self.hilbert_ok && self.pi_bijective_up_to == self.cutoff as i64
    }
}

/// Complement, Hilbert identity and per-degree bijectivity of `π` for a homogeneous sequence.
pub fn commutative_certificate(
    seq: &[Polynomial],
    algebra: &AlgebraPresentation,
    cutoff: u32,
    budget: Budget,
) -> Result<FreenessCertificate> {
    let degrees = sequence_degrees(seq)?;
    let complement = graded_complement(seq, algebra, cutoff, budget)?;
    let hilbert_ok = hilbert_check(algebra, &degrees, &complement, cutoff, budget)?;
    let pieces = algebra.graded(cutoff, budget)?;
    let mut powers = GammaPowers {
        seq: seq.to_vec(),
        cache: HashMap::new(),
    };
    let mut up_to = -1i64;
    for d in 0..=cutoff {
        if !pi_in_degree(&pieces, &degrees, &mut powers, &complement, d)? {
            break;
        }
        up_to = d as i64;
    }
    let mut exact = true;
    for d in 0..=cutoff {
        exact &= complement_is_exact(&complement, algebra, d, budget)?;
    }
    Ok(FreenessCertificate {
        schema: crate::SCHEMA.to_string(),
        mode: CertificateMode::Commutative,
        cutoff,
        degrees,
        hilbert_ok,
        pi_bijective_up_to: up_to,
        complement_dims: complement.dims(),
        complement_exact: Some(exact),
        filtered_dims: None,
    })
}

/// Lifts the commutative certificate of the graded images to `U` and checks
/// that `{g^e · lift(h)}` is a basis of every `U_{≤d}` in PBW coordinates.
pub fn filtered_freeness_certificate(
    p: &NcPresentation,
    seq: &[NcElement],
    cutoff: u32,
    budget: Budget,
) -> Result<FreenessCertificate> {
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if !p.commutator(&seq[i], &seq[j], budget)?.is_zero() {
                return Err(Error::NotCommuting(i, j));
            }
        }
    }
    let bar = p.bar_context();
    let images = seq.iter().map(|g| p.graded_image(g)).collect::<Result<Vec<_>>>()?;
    let ring = AlgebraPresentation::polynomial_ring(bar);
    if !ci_check(&images, &ring, budget)?.is_ci() {
        return Err(Error::NotCompleteIntersection);
    }
    let graded = commutative_certificate(&images, &ring, cutoff, budget)?;
    let complement = graded_complement(&images, &ring, cutoff, budget)?;
    let degrees = graded.degrees.clone();

    let mut gamma_cache: HashMap<Vec<u32>, NcElement> = HashMap::new();
    let mut gamma = |e: &[u32]| -> Result<NcElement> {
        if let Some(g) = gamma_cache.get(e) {
            return Ok(g.clone());
        }
        let mut factors = Vec::new();
        for (g, &k) in seq.iter().zip(e) {
            factors.extend(std::iter::repeat_n(g.clone(), k as usize));
        }
        let v = p.product(&factors, budget)?;
        gamma_cache.insert(e.to_vec(), v.clone());
        Ok(v)
    };

    let mut coords: HashMap<Word, usize> = HashMap::new();
    let mut span = RowEchelon::new();
    let mut total = 0usize;
    let mut filtered_dims = Vec::new();
    let mut up_to = -1i64;
    let mut failed = false;
    for d in 0..=cutoff {
        let mut new = 0usize;
        for hd in 0..=d {
            let exps = if degrees.is_empty() {
                if hd == d {
                    vec![Vec::new()]
                } else {
                    Vec::new()
                }
            } else {
                exponent_vectors(&degrees, d - hd)
            };
            for h in complement.basis(hd) {
                let lifted = NcElement::word(p.lift_monomial(h));
                for e in &exps {
                    let elem = p.mul(&gamma(e)?, &lifted, budget)?;
                    let mut v = SparseVec::new();
                    for (w, c) in elem.terms() {
                        let next = coords.len();
                        let i = *coords.entry(w.clone()).or_insert(next);
                        v.insert(i, c.clone());
                    }
                    new += 1;
                    if !span.insert(v) {
                        failed = true;
                    }
                }
            }
        }
        total += new;
        filtered_dims.push(new);
        if !failed && total == p.pbw_monomials(d).len() {
            up_to = d as i64;
        } else {
            failed = true;
        }
    }
    Ok(FreenessCertificate {
        schema: crate::SCHEMA.to_string(),
        mode: CertificateMode::Filtered,
        cutoff,
        degrees,
        hilbert_ok: graded.hilbert_ok,
        pi_bijective_up_to: up_to,
        complement_dims: graded.complement_dims,
        complement_exact: None,
        filtered_dims: Some(filtered_dims),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn staircase_complement() {
        let c = VariableContext::numbered("X", 1);
        let a = AlgebraPresentation::polynomial_ring(&c);
        let g = [Polynomial::parse(&c, "X1^2").unwrap()];
        let h = graded_complement(&g, &a, 5, b()).unwrap();
        assert_eq!(h.dims(), vec![1, 1, 0, 0, 0, 0]);
        assert!(hilbert_check(&a, &[2], &h, 5, b()).unwrap());
        let cert = commutative_certificate(&g, &a, 5, b()).unwrap();
        assert!(cert.is_free_up_to_cutoff());
        assert_eq!(cert.complement_exact, Some(true));
    }

    #[test]
    fn variables_leave_constants() {
        let c = VariableContext::numbered("X", 3);
        let a = AlgebraPresentation::polynomial_ring(&c);
        let h = graded_complement(&c.vars(), &a, 4, b()).unwrap();
        assert_eq!(h.dims(), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn casimir_complement() {
        let c = VariableContext::standard(&["e", "h", "f"]).unwrap();
        let a = AlgebraPresentation::polynomial_ring(&c);
        let g = [Polynomial::parse(&c, "h^2 + 4*e*f").unwrap()];
        let h = graded_complement(&g, &a, 10, b()).unwrap();
        assert_eq!(h.dims(), (0..=10).map(|d| 2 * d + 1).collect::<Vec<_>>());
        assert!(pi_bijectivity(&g, &h, &a, 2, b()).unwrap());
        assert!(pi_bijectivity(&g, &h, &a, 0, b()).unwrap());
    }

    #[test]
    fn non_ci_pair_fails_hilbert() {
        let c = VariableContext::numbered("X", 2);
        let a = AlgebraPresentation::polynomial_ring(&c);
        let g = [
            Polynomial::parse(&c, "X1*X2").unwrap(),
            Polynomial::parse(&c, "X1^2").unwrap(),
        ];
        let h = graded_complement(&g, &a, 4, b()).unwrap();
        assert_eq!(hilbert_first_mismatch(&a, &[2, 2], &h, 4, b()).unwrap(), Some(3));
    }

    #[test]
    fn zero_divisor_breaks_pi() {
        let c = VariableContext::numbered("X", 1);
        let a = AlgebraPresentation::quotient(&c, vec![Polynomial::parse(&c, "X1^3").unwrap()], true).unwrap();
        let g = [Polynomial::parse(&c, "X1^2").unwrap()];
        let cert = commutative_certificate(&g, &a, 5, b()).unwrap();
        assert_eq!(cert.pi_bijective_up_to, 2);
    }

    #[test]
    fn series_arithmetic() {
        // 1/(1-T^2) * (1 + T) = 1/(1-T)
        assert_eq!(product_series(&[2], &[1, 1], 5).unwrap(), vec![1; 6]);
        assert!(product_series(&[0], &[1], 2).is_err());
    }

    #[test]
    fn filtered_sl2() {
        let p = NcPresentation::sl2();
        let cas = p.parse_element("h^2 + 4*e*f - 2*h", b()).unwrap();
        let cert = filtered_freeness_certificate(&p, &[cas], 6, b()).unwrap();
        assert_eq!(cert.pi_bijective_up_to, 6);
        assert!(cert.hilbert_ok);
        let fd = cert.filtered_dims.clone().unwrap();
        // new products in degree d: dim U_d/U_{d-1} = C(d+2, 2)
        assert_eq!(fd, (0..=6).map(|d| (d + 1) * (d + 2) / 2).collect::<Vec<_>>());
        let empty = filtered_freeness_certificate(&p, &[], 3, b()).unwrap();
        assert_eq!(empty.pi_bijective_up_to, 3);
        assert_eq!(empty.complement_dims, vec![1, 3, 6, 10]);
    }

    #[test]
    fn filtered_rejects_noncommuting() {
        let p = NcPresentation::sl2();
        let e = p.gen("e").unwrap();
        let h = p.gen("h").unwrap();
        assert_eq!(
            filtered_freeness_certificate(&p, &[e, h], 2, b()).unwrap_err(),
            Error::NotCommuting(0, 1)
        );
    }
}
