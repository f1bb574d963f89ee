//! Graded slices of the Koszul complex `K.(g, Λ)` and their homology.
//!
//! `K_i = Λ ⊗ ∧^i k^t` with
//! `d_i(m ⊗ e_{j_1} ∧ … ∧ e_{j_i}) = Σ_k (-1)^(k-1) m g_{j_k} ⊗ e_{j_1} ∧ … ê_{j_k} … ∧ e_{j_i}`.
//! A basis vector `m ⊗ e_S` sits in degree `deg m + Σ_{j∈S} deg g_j`, which
//! makes every `d_i` degree preserving; each slice is an exact rational
//! matrix between standard-monomial bases.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraPresentation, GradedPieces};
use crate::error::{Error, Result};
use crate::groebner::Budget;
use crate::linalg::{mat_mul, rank, RowEchelon};
use crate::poly::{Monomial, Polynomial, Rational};

/// Basis vector `m ⊗ e_S` of a Koszul module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KoszulBasisElement {
    pub wedge: Vec<usize>,
    pub monomial: Monomial,
}

/// The matrix of `d_i` restricted to degree `d`.
#[derive(Clone, Debug)]
pub struct KoszulSlice {
    pub homological_index: usize,
    pub graded_degree: u32,
    pub domain_basis: Vec<KoszulBasisElement>,
    pub codomain_basis: Vec<KoszulBasisElement>,
    /// `codomain × domain`; column `c` is the image of `domain_basis[c]`.
    pub matrix: Vec<Vec<Rational>>,
}

impl KoszulSlice {
    pub fn rank(&self) -> usize {
        rank(&self.matrix)
    }
}

/// The Koszul complex of a homogeneous sequence, truncated at a degree cutoff.
pub struct KoszulComplex {
    seq: Vec<Polynomial>,
    degrees: Vec<u32>,
    pieces: GradedPieces,
}

fn subsets(t: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, t: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for j in start..t {
            cur.push(j);
            go(j + 1, t, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, t, size, &mut Vec::new(), &mut out);
    out
}

/// Weighted degrees of a homogeneous sequence.
pub fn sequence_degrees(seq: &[Polynomial]) -> Result<Vec<u32>> {
    seq.iter()
        .enumerate()
        .map(|(index, g)| match g.weighted_degree() {
            Ok(d) => d.homogeneous().ok_or(Error::InhomogeneousGenerator { index }),
            Err(_) => Err(Error::InhomogeneousGenerator { index }),
        })
        .collect()
}

/// `2 * max deg g_i + 2`.
pub fn default_cutoff(seq: &[Polynomial]) -> u32 {
    let m = seq.iter().filter_map(|g| g.max_weighted_degree()).max().unwrap_or(0);
    2 * m + 2
}

impl KoszulComplex {
    pub fn new(seq: &[Polynomial], algebra: &AlgebraPresentation, cutoff: u32, budget: Budget) -> Result<Self> {
        if seq.iter().any(|g| g.context() != algebra.context()) {
            return Err(Error::ContextMismatch);
        }
        let degrees = sequence_degrees(seq)?;
        let pieces = algebra.graded(cutoff, budget)?;
        Ok(KoszulComplex {
            seq: seq.to_vec(),
            degrees,
            pieces,
        })
    }

    pub fn cutoff(&self) -> u32 {
        self.pieces.cutoff()
    }

    pub fn length(&self) -> usize {
        self.seq.len()
    }

    fn module_basis(&self, i: usize, d: u32) -> Vec<KoszulBasisElement> {
        let mut out = Vec::new();
        if i > self.seq.len() {
            return out;
        }
        for s in subsets(self.seq.len(), i) {
            let shift: u32 = s.iter().map(|&j| self.degrees[j]).sum();
            if shift > d {
                continue;
            }
            for m in self.pieces.basis(d - shift) {
                out.push(KoszulBasisElement {
                    wedge: s.clone(),
                    monomial: m.clone(),
                });
            }
        }
        out
    }

    /// `dim (K_i)_d`.
    pub fn module_dim(&self, i: usize, d: u32) -> usize {
        self.module_basis(i, d).len()
    }

    pub fn slice(&self, i: usize, d: u32) -> Result<KoszulSlice> {
        if d > self.cutoff() {
            return Err(Error::Shape(format!("degree {d} beyond cutoff {}", self.cutoff())));
        }
        let domain = self.module_basis(i, d);
        let codomain = if i == 0 {
            Vec::new()
        } else {
            self.module_basis(i - 1, d)
        };
        let index: HashMap<&KoszulBasisElement, usize> = codomain.iter().enumerate().map(|(k, b)| (b, k)).collect();
        let mut matrix = vec![vec![Rational::zero(); domain.len()]; codomain.len()];
        let ctx = self.pieces.relation_basis().context().clone();
        for (col, b) in domain.iter().enumerate() {
            if i == 0 {
                break;
            }
            for (k, &j) in b.wedge.iter().enumerate() {
                let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
                let rest: Vec<usize> = b.wedge.iter().copied().filter(|&x| x != j).collect();
                let target_deg = d - rest.iter().map(|&x| self.degrees[x]).sum::<u32>();
                let prod = self.seq[j].mul_monomial(&b.monomial, &sign);
                let nf = self.pieces.normal_form(&prod)?;
                for (m, c) in nf.terms() {
                    let key = KoszulBasisElement {
                        wedge: rest.clone(),
                        monomial: m.clone(),
                    };
                    let row = *index.get(&key).ok_or_else(|| {
                        Error::Internal(format!(
                            "image term {} not in degree {target_deg} basis",
                            Polynomial::monomial(&ctx, m.clone(), Rational::one())
                        ))
                    })?;
                    matrix[row][col] += c;
                }
            }
        }
        Ok(KoszulSlice {
            homological_index: i,
            graded_degree: d,
            domain_basis: domain,
            codomain_basis: codomain,
            matrix,
        })
    }

    /// Checks `d_{i-1} ∘ d_i = 0` on every slice up to the cutoff.
    pub fn d_squared_is_zero(&self) -> Result<bool> {
        for d in 0..=self.cutoff() {
            for i in 2..=self.seq.len() {
                let hi = self.slice(i, d)?;
                let lo = self.slice(i - 1, d)?;
                if hi.matrix.is_empty() || lo.matrix.is_empty() {
                    continue;
                }
                let prod = mat_mul(&lo.matrix, &hi.matrix, hi.domain_basis.len());
                if prod.iter().flatten().any(|x| !x.is_zero()) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn homology_table(&self) -> Result<HomologyTable> {
        let t = self.seq.len();
        let cutoff = self.cutoff();
        let mut entries = BTreeMap::new();
        for d in 0..=cutoff {
            // rank of d_i in degree d, i = 0..=t+1 (d_0 and d_{t+1} vanish)
            let mut ranks = vec![0usize; t + 2];
            for (i, r) in ranks.iter_mut().enumerate().take(t + 1).skip(1) {
                *r = self.slice(i, d)?.rank();
            }
            for i in 0..=t {
                let dim = self.module_dim(i, d) - ranks[i] - ranks[i + 1];
                entries.insert((i, d), dim);
            }
        }
        Ok(HomologyTable {
            cutoff,
            length: t,
            entries,
        })
    }
}

/// `dim H_i(g, Λ)_d` for `0 ≤ i ≤ t`, `0 ≤ d ≤ cutoff`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyTable {
    pub cutoff: u32,
    pub length: usize,
    pub entries: BTreeMap<(usize, u32), usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KoszulVerdict {
    /// `H_i = 0` for `i ≥ 1` and `H_0 ≠ 0`, in every degree up to the cutoff.
    CiConsistent,
    NotCi,
}

impl HomologyTable {
    pub fn dim(&self, i: usize, d: u32) -> usize {
        self.entries.get(&(i, d)).copied().unwrap_or(0)
    }

    pub fn higher_homology_vanishes(&self) -> bool {
        self.entries.iter().all(|(&(i, _), &v)| i == 0 || v == 0)
    }

    pub fn h0_nonzero(&self) -> bool {
        (0..=self.cutoff).any(|d| self.dim(0, d) > 0)
    }

    pub fn verdict(&self) -> KoszulVerdict {
        if self.higher_homology_vanishes() && self.h0_nonzero() {
            KoszulVerdict::CiConsistent
        } else {
            KoszulVerdict::NotCi
        }
    }

    /// First `(i, d)` with `i ≥ 1` and nonzero homology.
    pub fn first_obstruction(&self) -> Option<(usize, u32)> {
        let mut nz: Vec<(u32, usize)> = self
            .entries
            .iter()
            .filter(|(&(i, _), &v)| i > 0 && v > 0)
            .map(|(&(i, d), _)| (d, i))
            .collect();
        nz.sort();
        nz.first().map(|&(d, i)| (i, d))
    }

    pub fn to_json(&self) -> HomologyTableJson {
        HomologyTableJson {
            schema: crate::SCHEMA.to_string(),
            cutoff: self.cutoff,
            entries: self
                .entries
                .iter()
                .map(|(&(i, d), &dim)| HomologyEntry { i, d, dim })
                .collect(),
            verdict: self.verdict(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct HomologyEntry {
    pub i: usize,
    pub d: u32,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct HomologyTableJson {
    pub schema: String,
    pub cutoff: u32,
    pub entries: Vec<HomologyEntry>,
    pub verdict: KoszulVerdict,
}

pub fn koszul_slice(
    seq: &[Polynomial],
    algebra: &AlgebraPresentation,
    i: usize,
    d: u32,
    budget: Budget,
) -> Result<KoszulSlice> {
    KoszulComplex::new(seq, algebra, d, budget)?.slice(i, d)
}

pub fn homology_table(
    seq: &[Polynomial],
    algebra: &AlgebraPresentation,
    cutoff: u32,
    budget: Budget,
) -> Result<HomologyTable> {
    KoszulComplex::new(seq, algebra, cutoff, budget)?.homology_table()
}

/// `dim (Σ_i Λ_{d - deg g_i} g_i)`, computed by spanning products directly.
pub fn ideal_slice_dim(seq: &[Polynomial], algebra: &AlgebraPresentation, d: u32, budget: Budget) -> Result<usize> {
    let degrees = sequence_degrees(seq)?;
    let pieces = algebra.graded(d, budget)?;
    let mut span = RowEchelon::new();
    for (g, &dg) in seq.iter().zip(&degrees) {
        if dg > d {
            continue;
        }
        for m in pieces.basis(d - dg) {
            let prod = g.mul_monomial(m, &Rational::one());
            span.insert(pieces.coordinates(&prod, d)?);
        }
    }
    Ok(span.rank())
}
