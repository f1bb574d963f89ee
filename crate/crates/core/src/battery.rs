//! The acceptance battery: ten criteria, each a deterministic exact
//! computation with a wall-clock limit.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraPresentation;
use crate::ciproof::{
    ci_check, gl_transform_constant, graded_slice_identity, regular_check, shifted_sequence_check,
    substitution_coherence, unimodular_from_entries, Verdict,
};
use crate::current::{build_current_presentation, verify_center_ci_current, xi_generators, CurrentSpec};
use crate::error::{Error, Result};
use crate::freecert::{
    commutative_certificate, filtered_freeness_certificate, graded_complement, hilbert_first_mismatch,
};
use crate::groebner::Budget;
use crate::koszul::{KoszulComplex, KoszulVerdict};
use crate::ncalg::{NcElement, NcPresentation, RewriteStrategy};
use crate::poly::{Polynomial, Rational, VariableContext};
use crate::yangian::{
    build_presentation, c_sequence, center_generators, commutative_det, off_diagonal_vars, YangianSpec,
};

/// A named homogeneous sequence with its known verdict.
#[derive(Clone, Debug)]
pub struct SuiteSequence {
    pub name: &'static str,
    pub vars: &'static [&'static str],
    pub polys: &'static [&'static str],
    pub ci: bool,
}

impl SuiteSequence {
    pub fn build(&self) -> Result<(AlgebraPresentation, Vec<Polynomial>)> {
        let ctx = VariableContext::standard(self.vars)?;
        let seq = self
            .polys
            .iter()
            .map(|s| Polynomial::parse(&ctx, s))
            .collect::<Result<Vec<_>>>()?;
        Ok((AlgebraPresentation::polynomial_ring(&ctx), seq))
    }
}

const XY: &[&str] = &["x", "y"];
const XYZ: &[&str] = &["x", "y", "z"];

/// Homogeneous sequences in at most three variables with degrees at most three.
pub fn sequence_suite() -> Vec<SuiteSequence> {
    let s = |name, vars, polys, ci| SuiteSequence { name, vars, polys, ci };
    vec![
        s("linear", &["x"] as &[&str], &["x"] as &[&str], true),
        s("coordinates", XY, &["x", "y"], true),
        s("squares", XY, &["x^2", "y^2"], true),
        s("sum-of-squares-and-product", XY, &["x^2 + y^2", "x*y"], true),
        s("cubes", XYZ, &["x^3", "y^3", "z^3"], true),
        s("elem-sym-3", XYZ, &["x + y + z", "x*y + y*z + x*z", "x*y*z"], true),
        s("twisted-cubic-pair", XYZ, &["x^2 - y*z", "y^2 - x*z"], true),
        s("product-and-square", XYZ, &["x*y", "z^2"], true),
        s("square-then-mixed", XYZ, &["x^2", "x*y + z^2"], true),
        s("cone", XYZ, &["y^2 - x*z"], true),
        s("fermat-and-product", XYZ, &["x^3 + y^3 + z^3", "x*y*z"], true),
        s("power-sums", XYZ, &["x + y + z", "x^2 + y^2 + z^2", "x*y*z"], true),
        s("square-cube", XYZ, &["x^2", "y^3"], true),
        s("three-quadrics", XYZ, &["x*y - z^2", "x^2", "y^2"], true),
        s("mixed-cubic", XYZ, &["x^2*y", "z^3"], true),
        s("binary-cubics", XY, &["x^3 - y^3", "x^2*y"], true),
        s("shared-factor", XY, &["x*y", "x^2"], false),
        s("line-and-plane", XYZ, &["x*y", "x*z"], false),
        s("overdetermined", XY, &["x^2", "x*y", "y^2"], false),
        s("redundant-power", XY, &["x", "x^2"], false),
        s("coordinate-axes", XYZ, &["x*y", "y*z", "x*z"], false),
        s("common-linear-factor", XYZ, &["x^2 - y^2", "x*z - y*z"], false),
        s("monomial-curve", XYZ, &["x^3", "x^2*y", "z^2"], false),
        s("square-of-linear", XY, &["x + y", "x^2 + 2*x*y + y^2"], false),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub limit_ms: u128,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {:>2} {} ({} ms, limit {} ms): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed_ms,
            self.limit_ms,
            self.detail
        )
    }
}

pub const CRITERION_COUNT: u32 = 10;

pub fn title(id: u32) -> &'static str {
    match id {
        1 => "elementary symmetric CI",
        2 => "Koszul oracle equivalence",
        3 => "Yangian centrality",
        4 => "graded quantum determinant",
        5 => "Yangian center CI",
        6 => "current algebra pipeline",
        7 => "freeness certificates",
        8 => "shifted-sequence regularity",
        9 => "truncated properness",
        10 => "invariance battery",
        _ => "unknown",
    }
}

/// Wall-clock limit of a criterion.
pub fn limit(id: u32) -> Duration {
    Duration::from_secs(match id {
        1 => 15,
        2 => 60,
        3 => 120,
        5 | 6 => 600,
        7 => 300,
        _ => 600,
    })
}

/// Runs one criterion; errors count as failures.
pub fn run(id: u32, budget: Budget) -> CriterionOutcome {
    let start = Instant::now();
    let res = match id {
        1 => elementary_symmetric(budget),
        2 => koszul_equivalence(budget),
        3 => yangian_centrality(budget),
        4 => graded_qdet(budget),
        5 => yangian_center_ci(budget),
        6 => current_pipeline(budget),
        7 => freeness(budget),
        8 => shifted_regularity(budget),
        9 => truncated_properness(budget),
        10 => invariance(budget),
        _ => Err(Error::Internal(format!("no criterion {id}"))),
    };
    let elapsed = start.elapsed();
    let (ok, detail) = match res {
        Ok(x) => x,
        Err(e) => (false, format!("error: {e}")),
    };
    let limit = limit(id);
    let within = elapsed <= limit;
    CriterionOutcome {
        id,
        title: title(id).to_string(),
        passed: ok && within,
        detail: if within {
            detail
        } else {
            format!("{detail}; over time limit")
        },
        elapsed_ms: elapsed.as_millis(),
        limit_ms: limit.as_millis(),
    }
}

pub fn run_all(budget: Budget) -> Vec<CriterionOutcome> {
    (1..=CRITERION_COUNT).map(|i| run(i, budget)).collect()
}

type Check = Result<(bool, String)>;

fn elem_sym(ctx: &VariableContext) -> Vec<Polynomial> {
    let n = ctx.len();
    let vars = ctx.vars();
    // coefficients of Π (1 + x_i T)
    let mut e = vec![Polynomial::one(ctx)];
    for v in &vars {
        let mut next = e.clone();
        next.push(Polynomial::zero(ctx));
        for k in 1..=e.len() {
            next[k] = &next[k] + &(v * &e[k - 1]);
        }
        e = next;
    }
    e.into_iter().skip(1).take(n).collect()
}

/// `e_1, …, e_n` in `n` variables `x1, …, xn`.
pub fn elementary_symmetric_sequence(n: usize) -> (VariableContext, Vec<Polynomial>) {
    let ctx = VariableContext::numbered("x", n);
    let seq = elem_sym(&ctx);
    (ctx, seq)
}

fn elementary_symmetric(budget: Budget) -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 2..=4 {
        let t = Instant::now();
        let (ctx, seq) = elementary_symmetric_sequence(n);
        let r = ci_check(&seq, &AlgebraPresentation::polynomial_ring(&ctx), budget)?;
        let el = t.elapsed();
        let good = r.verdict == Verdict::CI && r.dim_found == Some(0) && el < Duration::from_secs(5);
        ok &= good;
        parts.push(format!(
            "n={n}: {:?} dim {:?} in {} ms",
            r.verdict,
            r.dim_found,
            el.as_millis()
        ));
    }
    Ok((ok, parts.join("; ")))
}

const KOSZUL_CUTOFF: u32 = 8;

fn koszul_equivalence(budget: Budget) -> Check {
    let suite = sequence_suite();
    let mut ok = suite.len() >= 20 && suite.iter().filter(|s| !s.ci).count() >= 5;
    let mut bad = Vec::new();
    for s in &suite {
        let (alg, seq) = s.build()?;
        let r = ci_check(&seq, &alg, budget)?;
        let cx = KoszulComplex::new(&seq, &alg, KOSZUL_CUTOFF, budget)?;
        let table = cx.homology_table()?;
        let dd = cx.d_squared_is_zero()?;
        let agree = (r.verdict == Verdict::CI) == (table.verdict() == KoszulVerdict::CiConsistent);
        let expected = (r.verdict == Verdict::CI) == s.ci;
        if !(agree && dd && expected) {
            ok = false;
            bad.push(format!("{} (agree {agree}, d²=0 {dd}, expected {expected})", s.name));
        }
    }
    let detail = if bad.is_empty() {
        format!("{} sequences agree at D = {KOSZUL_CUTOFF}", suite.len())
    } else {
        format!("disagreement on {}", bad.join(", "))
    };
    Ok((ok, detail))
}

pub const YANGIAN_SIZES: [(usize, usize); 4] = [(1, 1), (1, 2), (2, 1), (2, 2)];

fn yangian_centrality(budget: Budget) -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, p) in YANGIAN_SIZES {
        let t = Instant::now();
        let spec = YangianSpec::new(n, p)?;
        let pres = build_presentation(&spec, budget)?;
        let ds = match center_generators(&pres, &spec, budget) {
            Ok(ds) => ds,
            Err(Error::CentralityFailure { index }) => {
                ok = false;
                parts.push(format!("({n},{p}): d_{index} not central"));
                continue;
            }
            Err(e) => return Err(e),
        };
        // re-check on every letter with the independent naive rewriter
        for d in &ds {
            for x in 0..pres.len() as u32 {
                let mut c = NcElement::zero();
                for (w, coeff) in d.terms() {
                    let right: Vec<u32> = w.iter().copied().chain([x]).collect();
                    let left: Vec<u32> = [x].into_iter().chain(w.iter().copied()).collect();
                    c.add_scaled(
                        &pres.naive_normal_form(&right, RewriteStrategy::Leftmost, budget)?,
                        coeff,
                    );
                    c.add_scaled(
                        &pres.naive_normal_form(&left, RewriteStrategy::Leftmost, budget)?,
                        &-coeff.clone(),
                    );
                }
                ok &= c.is_zero();
            }
        }
        if (n, p) == (2, 1) {
            let d1 = pres.parse_element("t11_1 + t22_1 - 1", budget)?;
            let d2 = pres.parse_element("t11_1*t22_1 - t11_1 - t21_1*t12_1", budget)?;
            ok &= ds == vec![d1, d2];
        }
        let el = t.elapsed();
        if (n, p) == (2, 2) {
            ok &= el < Duration::from_secs(120);
        }
        parts.push(format!("({n},{p}): {} central in {} ms", ds.len(), el.as_millis()));
    }
    Ok((ok, parts.join("; ")))
}

fn graded_qdet(budget: Budget) -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, p) in YANGIAN_SIZES {
        let spec = YangianSpec::new(n, p)?;
        let pres = build_presentation(&spec, budget)?;
        let ds = center_generators(&pres, &spec, budget)?;
        let ctx = pres.bar_context();
        let det = commutative_det(ctx, &spec, &[], false)?;
        let np = n * p;
        let mut agree = 0;
        for (s, d) in ds.iter().enumerate() {
            let want = det
                .coeff(np - (s + 1))
                .cloned()
                .unwrap_or_else(|| Polynomial::zero(ctx));
            if pres.graded_image(d)? == want {
                agree += 1;
            }
        }
        ok &= agree == np;
        parts.push(format!("({n},{p}): {agree}/{np}"));
    }
    Ok((ok, parts.join("; ")))
}

fn yangian_center_ci(budget: Budget) -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, p) in YANGIAN_SIZES {
        let spec = YangianSpec::new(n, p)?;
        let pres = build_presentation(&spec, budget)?;
        let ds = center_generators(&pres, &spec, budget)?;
        let ctx = pres.bar_context().clone();
        let images = ds.iter().map(|d| pres.graded_image(d)).collect::<Result<Vec<_>>>()?;
        let (dctx, cs) = c_sequence(&ctx, &spec, &images)?;
        let c = ci_check(&cs, &AlgebraPresentation::polynomial_ring(&dctx), budget)?;
        let g = ci_check(&images, &AlgebraPresentation::polynomial_ring(&ctx), budget)?;
        let off = off_diagonal_vars(&ctx, &spec)?;
        let (aug, red) = substitution_coherence(&images, &ctx, &off, budget)?;
        let want = (n * n * p - n * p) as i64;
        let good = c.dim_found == Some(0) && g.dim_found == Some(want) && aug.verdict == red.verdict;
        ok &= good;
        parts.push(format!(
            "({n},{p}): c dim {:?}, d̄ dim {:?} (want {want}), coherence {}",
            c.dim_found,
            g.dim_found,
            aug.verdict == red.verdict
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn current_pipeline(budget: Budget) -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, m) in YANGIAN_SIZES {
        let spec = CurrentSpec::new(n, m)?;
        let pres = build_current_presentation(&spec)?;
        let fam = match xi_generators(&pres, &spec, budget) {
            Ok(f) => f,
            Err(Error::CentralityFailure { index }) => {
                ok = false;
                parts.push(format!("({n},{m}): ξ_{index} not central"));
                continue;
            }
            Err(e) => return Err(e),
        };
        let r = verify_center_ci_current(&fam, &pres, budget)?;
        let want = (n * n * m - n * m) as i64;
        let replay = r
            .induction
            .first()
            .map(|t| t.top_are_elementary && t.replay_matches)
            .unwrap_or(true);
        let good = r.center.diagonal.dim_found == Some(0) && r.center.graded.dim_found == Some(want) && replay;
        ok &= good;
        parts.push(format!(
            "({n},{m}): γ dim {:?}, ξ̄ dim {:?} (want {want}), replay {replay}",
            r.center.diagonal.dim_found, r.center.graded.dim_found
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn freeness(budget: Budget) -> Check {
    // (a) the Casimir in k[e,h,f]
    let ctx = VariableContext::standard(&["e", "h", "f"])?;
    let alg = AlgebraPresentation::polynomial_ring(&ctx);
    let g = vec![Polynomial::parse(&ctx, "h^2 + 4*e*f")?];
    let cert = commutative_certificate(&g, &alg, 10, budget)?;
    let odd: Vec<usize> = (0..=10).map(|d| 2 * d + 1).collect();
    let a = cert.complement_dims == odd && cert.hilbert_ok && cert.pi_bijective_up_to >= 8;
    // (b) the center of Y_1(gl_2)
    let spec = YangianSpec::new(2, 1)?;
    let pres = build_presentation(&spec, budget)?;
    let ds = center_generators(&pres, &spec, budget)?;
    let fc = filtered_freeness_certificate(&pres, &ds, 4, budget)?;
    let b = fc.is_free_up_to_cutoff();
    // (c) a pair that is not a complete intersection
    let nctx = VariableContext::standard(&["X1", "X2"])?;
    let nalg = AlgebraPresentation::polynomial_ring(&nctx);
    let bad = vec![Polynomial::parse(&nctx, "X1*X2")?, Polynomial::parse(&nctx, "X1^2")?];
    let comp = graded_complement(&bad, &nalg, 4, budget)?;
    let mismatch = hilbert_first_mismatch(&nalg, &[2, 2], &comp, 4, budget)?;
    let c = matches!(mismatch, Some(d) if d <= 4);
    Ok((
        a && b && c,
        format!(
            "casimir dims {:?}, hilbert {}, π up to {}; Y1(gl2) free {}; non-CI mismatch at {:?}",
            cert.complement_dims, cert.hilbert_ok, cert.pi_bijective_up_to, b, mismatch
        ),
    ))
}

fn shifted_regularity(budget: Budget) -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    let cases: [(&[&str], &[&str], &[i64]); 2] = [
        (&["e", "h", "f"], &["h^2 + 4*e*f"], &[1]),
        (&["x", "y"], &["x + y", "x*y"], &[0, 1]),
    ];
    for (vars, polys, mu) in cases {
        let ctx = VariableContext::standard(vars)?;
        let alg = AlgebraPresentation::polynomial_ring(&ctx);
        let seq = polys
            .iter()
            .map(|s| Polynomial::parse(&ctx, s))
            .collect::<Result<Vec<_>>>()?;
        let mu: Vec<Polynomial> = mu
            .iter()
            .map(|&c| Polynomial::constant(&ctx, Rational::from_integer(c.into())))
            .collect();
        let r = shifted_sequence_check(&seq, &mu, &alg, budget)?;
        let want = (vars.len() - seq.len()) as i64;
        let mut slices = true;
        for d in 0..=6 {
            slices &= graded_slice_identity(&seq, &mu, &alg, d, budget)?;
        }
        let good = r.proper == Some(true) && r.dim_found == Some(want) && slices;
        ok &= good;
        parts.push(format!(
            "{}: proper {:?}, fiber dim {:?}, slices {slices}",
            polys.join(", "),
            r.proper,
            r.dim_found
        ));
    }
    Ok((ok, parts.join("; ")))
}

/// Seed shared by the randomized criteria.
pub const SEED: u64 = 0x5eed_2024;

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = rng.gen_range(-20..=20);
    let den: i64 = rng.gen_range(1..=7);
    Rational::new(num.into(), den.into())
}

fn truncated_properness(budget: Budget) -> Check {
    let spec = YangianSpec::new(2, 1)?;
    let pres = build_presentation(&spec, budget)?;
    let ds = center_generators(&pres, &spec, budget)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut ok = true;
    let mut parts = Vec::new();
    for _ in 0..5 {
        let (c, c2) = (random_rational(&mut rng), random_rational(&mut rng));
        let gens = vec![
            &ds[0] - &NcElement::constant(c.clone()),
            &ds[1] - &NcElement::constant(c2.clone()),
        ];
        let proper = pres.left_ideal_truncated_properness(&gens, 4, budget)?;
        ok &= proper;
        parts.push(format!("({c},{c2}) {proper}"));
    }
    Ok((ok, parts.join("; ")))
}

fn invariance(budget: Budget) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 10);
    let mut ok = true;
    let mut bad = Vec::new();
    let suite = sequence_suite();
    for s in &suite {
        let (alg, seq) = s.build()?;
        let base = ci_check(&seq, &alg, budget)?;
        let t = seq.len();
        let n_off = t * (t - 1) / 2;
        let mut stable = true;
        for _ in 0..10 {
            let upper: Vec<i64> = (0..n_off).map(|_| rng.gen_range(-3..=3)).collect();
            let lower: Vec<i64> = (0..n_off).map(|_| rng.gen_range(-3..=3)).collect();
            let l = unimodular_from_entries(t, &upper, &lower);
            let moved = gl_transform_constant(&seq, &l)?;
            stable &= ci_check(&moved, &alg, budget)?.verdict == base.verdict;
        }
        let reg = regular_check(&seq, &alg, budget)?;
        let regular_agrees = reg.regular == Some(base.verdict == Verdict::CI);
        if !(stable && regular_agrees) {
            ok = false;
            bad.push(format!("{} (gl {stable}, regular {regular_agrees})", s.name));
        }
    }
    let detail = if bad.is_empty() {
        format!("{} sequences × 10 transforms stable; regular_check agrees", suite.len())
    } else {
        format!("failures: {}", bad.join(", "))
    };
    Ok((ok, detail))
}

/// The builtin sl2 presentation with its Casimir; used by the CLI.
pub fn sl2_casimir(budget: Budget) -> Result<(NcPresentation, NcElement)> {
    let p = NcPresentation::sl2();
    let c = p.parse_element("h^2 + 4*e*f - 2*h", budget)?;
    Ok((p, c))
}
