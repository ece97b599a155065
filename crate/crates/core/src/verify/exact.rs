//! Suites on exact rational arithmetic: geometry, commutativity,
//! intertwining, the one-variable left inverse and the Laplacian.

use num_traits::Zero;
use serde_json::json;

use super::sample::{self, Family};
use super::{check, CheckRecord, Ctx, Fault};
use crate::error::Result;
use crate::gamma_ratio::{GammaPoly, GammaRatio};
use crate::intertwine::{
    chi_inverse_one_var, chi_inverse_one_var_numeric, chi_one_var, chi_poly_scaled, FractionalIntegral,
};
use crate::opengine::{
    commutator_unchecked, decomposition_a, decomposition_b, decomposition_general, laplacian_double_application,
    laplacian_expanded, ProjectionDunklOperator,
};
use crate::poly::{monomials_of_degree, monomials_up_to, MPoly};
use crate::rational::{fmt_rational, int, rat, to_f64, Rational};
use crate::rootgeom::{decompose_xi, project, reflect, validate_subsystem, OrthogonalSubsystem, RationalVector};
use crate::testfn::{Exponential, Univariate};

const GEOMETRY_SAMPLES: usize = 50;
const INVERSE_ORDER: usize = 40;

fn kappa_from_set(ctx: &mut Ctx) -> Rational {
    sample::pick(&mut ctx.rng, &ctx.config.kappa_set).clone()
}

/// Subsystem shapes swept by the intertwining suite: A and B type for
/// 2 <= N <= max_dimension, or the single coordinate root when N = 1.
fn shapes(max_dim: usize) -> Vec<(Family, usize)> {
    if max_dim < 2 {
        return vec![(Family::Direct, 1)];
    }
    (2..=max_dim).flat_map(|n| [(Family::A, n), (Family::B, n)]).collect()
}

fn geometry_body(
    family: Family,
    s: &OrthogonalSubsystem,
    x: &RationalVector,
    xi: &RationalVector,
) -> Result<super::Outcome> {
    let fail = |what: &str, evidence: serde_json::Value| Ok(Err((what.to_string(), evidence)));
    if let Err(e) = validate_subsystem(s.roots().to_vec(), s.kappas().to_vec(), s.dim()) {
        return fail("roots are not a valid orthogonal subsystem", json!({ "error": e.to_string() }));
    }
    for (i, a) in s.roots().iter().enumerate() {
        if !sample::root_system_member(family == Family::B, a) {
            return fail("root outside the ambient root system", json!({ "index": i + 1, "root": a }));
        }
        if reflect(a, &reflect(a, x)?)? != *x {
            return fail("reflection is not an involution", json!({ "index": i + 1 }));
        }
        let p = project(a, x)?;
        if !p.dot(a)?.is_zero() || project(a, &p)? != p {
            return fail("projection is not onto the hyperplane", json!({ "index": i + 1, "image": p }));
        }
        for b in &s.roots()[i + 1..] {
            if project(a, &project(b, x)?)? != project(b, &project(a, x)?)? {
                return fail("projections do not commute", json!({ "roots": [a, b] }));
            }
        }
    }
    let split = decompose_xi(xi, s)?;
    let orthogonal = s.roots().iter().all(|a| split.residual.dot(a).map(|d| d.is_zero()).unwrap_or(false));
    if split.reconstruct(s)? != *xi || !orthogonal {
        return fail("xi decomposition does not reconstruct", json!({ "residual": split.residual }));
    }
    Ok(Ok(format!("{} roots", s.rank())))
}

pub(crate) fn geometry(ctx: &mut Ctx) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for _ in 0..ctx.config.samples.min(GEOMETRY_SAMPLES) {
        let (family, s) =
            match sample::random_subsystem(&mut ctx.rng, ctx.config.max_dimension, |r| sample::rational_in(r, 0, 4, 4))
            {
                Ok(v) => v,
                Err(e) => {
                    out.push(check(ctx.suite, "subsystem", json!({}), || Err(e)));
                    continue;
                }
            };
        let s = if ctx.fault(Fault::PerturbRoot) { sample::perturb_root(&s) } else { s };
        let x = sample::vector(&mut ctx.rng, s.dim());
        let xi = sample::vector(&mut ctx.rng, s.dim());
        let inputs = json!({ "family": family.name(), "subsystem": s, "x": x, "xi": xi });
        out.push(check(ctx.suite, "subsystem", inputs, || geometry_body(family, &s, &x, &xi)));
    }
    out
}

pub(crate) fn commutativity(ctx: &mut Ctx) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for _ in 0..ctx.config.samples {
        let drawn =
            sample::random_subsystem(&mut ctx.rng, ctx.config.max_dimension, |r| sample::rational_in(r, 0, 4, 6));
        let (family, s) = match drawn {
            Ok(v) => v,
            Err(e) => {
                out.push(check(ctx.suite, "commutator", json!({}), || Err(e)));
                continue;
            }
        };
        let dim = s.dim();
        let xi = sample::vector(&mut ctx.rng, dim);
        let eta = sample::vector(&mut ctx.rng, dim);
        let degree = ctx.rng_degree();
        let p = MPoly::monomial(sample::monomial(&mut ctx.rng, dim, degree), int(1));
        let s_eta = if ctx.fault(Fault::PerturbKappa) { sample::perturb_kappa(&s) } else { Ok(s.clone()) };

        let mut inputs = json!({
            "check": "commutator",
            "family": family.name(),
            "subsystem": s,
            "xi": xi,
            "eta": eta,
            "degree": degree,
            "poly": p.to_string(),
        });
        if let Ok(se) = &s_eta {
            if *se != s {
                inputs["subsystem_eta"] = json!(se);
            }
        }
        out.push(check(ctx.suite, "commutator", inputs, || {
            let op1 = ProjectionDunklOperator::new(s.clone(), xi.clone())?;
            let op2 = ProjectionDunklOperator::new(s_eta?, eta.clone())?;
            let c = commutator_unchecked(&op1, &op2, &p)?;
            if c.is_zero() {
                Ok(Ok("zero".into()))
            } else {
                Ok(Err(("commutator is nonzero".into(), json!({ "result": "nonzero", "witness": c.to_string() }))))
            }
        }));

        let inputs = json!({ "family": family.name(), "subsystem": s, "xi": xi, "poly": p.to_string() });
        out.push(check(ctx.suite, "decomposition", inputs, || {
            let op = ProjectionDunklOperator::new(s.clone(), xi.clone())?;
            let direct = op.apply_poly(&p)?;
            let general = decomposition_general(&op, &p)?;
            let coordinate = match family {
                Family::A => decomposition_a(&s, &xi, &p)?,
                Family::B => decomposition_b(&s, &xi, &p)?,
                Family::Direct => general.clone(),
            };
            if general == direct && coordinate == direct {
                Ok(Ok("root and coordinate decompositions agree".into()))
            } else {
                Ok(Err((
                    "decomposition differs from the operator".into(),
                    json!({ "direct": direct.to_string(), "general": general.to_string(), "coordinate": coordinate.to_string() }),
                )))
            }
        }));
    }
    out
}

impl Ctx<'_> {
    fn rng_degree(&mut self) -> u32 {
        use rand::Rng;
        self.rng.random_range(0..=self.config.max_degree)
    }
}

pub(crate) fn intertwining(ctx: &mut Ctx) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for (family, dim) in shapes(ctx.config.max_dimension) {
        let kappas: Vec<Rational> = (0..sample::rank(family, dim)).map(|_| kappa_from_set(ctx)).collect();
        let xi = sample::vector(&mut ctx.rng, dim);
        let s = match sample::subsystem(family, dim, kappas) {
            Ok(s) => s,
            Err(e) => {
                out.push(check(ctx.suite, "intertwining", json!({ "family": family.name(), "dim": dim }), || Err(e)));
                continue;
            }
        };
        let s_op = if ctx.fault(Fault::DropProjection) { sample::drop_projection(&s) } else { Ok(s.clone()) };
        for degree in 0..=ctx.config.max_degree {
            let inputs = json!({ "family": family.name(), "subsystem": s, "xi": xi, "degree": degree });
            out.push(check(ctx.suite, "intertwining", inputs, || {
                let op = ProjectionDunklOperator::new(s_op.clone()?, xi.clone())?;
                let monomials = monomials_of_degree(dim, degree);
                for m in &monomials {
                    let p = MPoly::monomial(m.clone(), int(1));
                    let lhs = op.apply_poly(&chi_poly_scaled(&p, &s)?.poly)?;
                    let rhs = chi_poly_scaled(&p.directional_derivative(&xi)?, &s)?.poly;
                    if lhs != rhs {
                        return Ok(Err((
                            "T chi p differs from chi d p".into(),
                            json!({ "poly": p.to_string(), "t_chi": lhs.to_string(), "chi_d": rhs.to_string() }),
                        )));
                    }
                }
                Ok(Ok(format!("{} monomials", monomials.len())))
            }));
        }
    }
    out
}

pub(crate) fn inverse(ctx: &mut Ctx) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let kappas = ctx.config.kappa_set.clone();
    for kappa in kappas {
        let kappa_inv = if ctx.fault(Fault::PerturbKappa) { &kappa + rat(1, 2) } else { kappa.clone() };
        let inputs = json!({
            "kappa": fmt_rational(&kappa),
            "kappa_inverse": fmt_rational(&kappa_inv),
            "max_degree": ctx.config.max_degree,
        });
        out.push(check(ctx.suite, "left_inverse_exact", inputs, || {
            for m in 0..=ctx.config.max_degree {
                let p = GammaPoly::monomial(m, GammaRatio::one());
                let back = chi_inverse_one_var(&chi_one_var(&p, &kappa)?, &kappa_inv)?;
                if back != p {
                    return Ok(Err((
                        "D chi x^m differs from x^m".into(),
                        json!({ "m": m, "result": back.to_string() }),
                    )));
                }
            }
            Ok(Ok(format!("m = 0..={}", ctx.config.max_degree)))
        }));

        if ctx.config.max_degree == 0 {
            continue;
        }
        let xs: Vec<f64> = (0..=8).map(|k| -2.0 + 0.5 * k as f64).collect();
        let (k, k_inv) = (to_f64(&kappa), to_f64(&kappa_inv));
        let inputs = json!({ "kappa": k, "kappa_inverse": k_inv, "function": "exp", "x": xs });
        let tol = ctx.tol().numeric_inverse;
        out.push(check(ctx.suite, "left_inverse_numeric", inputs, || {
            let f = Exponential::real(1.0);
            let chi_f = FractionalIntegral { gamma: 0.0, delta: k, inner: &f, order: INVERSE_ORDER };
            let mut worst: f64 = 0.0;
            for &x in &xs {
                let back = chi_inverse_one_var_numeric(&chi_f, k_inv, x, INVERSE_ORDER)?;
                let err = (back - f.value(x)?).norm();
                if !(err <= tol) {
                    return Ok(Err((
                        format!("|D chi exp - exp| = {err:.3e} at x = {x}"),
                        json!({ "x": x, "error": err }),
                    )));
                }
                worst = worst.max(err);
            }
            Ok(Ok(format!("max error {worst:.3e}")))
        }));
    }
    out
}

/// All of {0, 1/2, 1}^n.
fn laplacian_kappas(n: usize) -> Vec<Vec<Rational>> {
    let choices = [int(0), rat(1, 2), int(1)];
    let mut all = vec![Vec::new()];
    for _ in 0..n {
        all = all
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut v = prefix.clone();
                    v.push(c.clone());
                    v
                })
            })
            .collect();
    }
    all
}

pub(crate) const LAPLACIAN_MAX_DIM: usize = 4;

pub(crate) fn laplacian(ctx: &mut Ctx) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for dim in 1..=ctx.config.max_dimension.min(LAPLACIAN_MAX_DIM) {
        for kappas in laplacian_kappas(dim) {
            let s = sample::subsystem(Family::Direct, dim, kappas.clone());
            let inputs = json!({
                "dim": dim,
                "kappas": kappas.iter().map(fmt_rational).collect::<Vec<_>>(),
                "max_degree": ctx.config.max_degree,
            });
            let drop = ctx.fault(Fault::DropProjection);
            out.push(check(ctx.suite, "laplacian", inputs, || {
                let s = s?;
                let s_double = if drop { sample::drop_projection(&s)? } else { s.clone() };
                let monomials = monomials_up_to(dim, ctx.config.max_degree);
                for m in &monomials {
                    let p = MPoly::monomial(m.clone(), int(1));
                    let double = laplacian_double_application(&s_double, &p)?;
                    let expanded = match laplacian_expanded(&s, &p) {
                        Ok(e) => e,
                        Err(e) => {
                            return Ok(Err((e.to_string(), json!({ "poly": p.to_string() }))));
                        }
                    };
                    if double != expanded {
                        return Ok(Err((
                            "double application differs from the expanded formula".into(),
                            json!({ "poly": p.to_string(), "double": double.to_string(), "expanded": expanded.to_string() }),
                        )));
                    }
                }
                Ok(Ok(format!("{} monomials", monomials.len())))
            }));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_grid_is_complete() {
        let all = laplacian_kappas(3);
        assert_eq!(all.len(), 27);
        assert_eq!(all[0], vec![int(0); 3]);
        assert_eq!(all[26], vec![int(1); 3]);
    }

    #[test]
    fn shapes_cover_both_families() {
        assert_eq!(shapes(1), vec![(Family::Direct, 1)]);
        assert_eq!(shapes(3).len(), 4);
    }
}
