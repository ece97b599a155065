//! Suites on floating-point evaluation: the Kummer functions, the
//! multivariate eigenfunctions and the Kummer transform.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde_json::json;

use super::sample::{self, Family};
use super::{check, CheckRecord, Ctx, Fault};
use crate::intertwine::chi_numeric;
use crate::kummer::{
    bold_m, bound_grid, decay_profile, derivative_bound, generalized_ode_residual, series_integral_agreement,
    KummerEigen, MultivarEigenfunction,
};
use crate::opengine::{one_var_t_numeric, ProjectionDunklOperator};
use crate::precision::Precision;
use crate::rational::{fmt_rational, to_f64, Rational};
use crate::rootgeom::build_subsystem_direct;
use crate::testfn::{
    catalog, gaussian_integral, Bump, Combination, Exponential, Line, SmoothIndicator, TestFunction, Univariate,
    CATALOG,
};
use crate::transform::{
    c0_decay_check, factorization_check, fourier_transform, kummer_transform, l1_norm, TransformRequest, DECAY_LAMBDAS,
    DEFAULT_ORDER,
};

const EIGEN_KAPPAS: [f64; 3] = [0.5, 1.0, 1.5];
const EIGEN_LAMBDAS: [f64; 3] = [1.0, 3.0, 10.0];
const EIGEN_XS: [f64; 6] = [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0];
const BOUND_KAPPAS: [f64; 3] = [0.5, 1.0, 2.0];
const BOUND_POINTS: usize = 1000;
const BOUND_T_MAX: f64 = 50.0;
const CHI_ORDER: usize = 40;
const DECAY_THRESHOLD: f64 = 0.15;
const EIGEN_POINTS: usize = 20;
const EIGEN_MAX_DIM: usize = 5;
const TRANSFORM_KAPPAS: [f64; 4] = [0.0, 0.5, 1.0, 2.0];
const FACTOR_KAPPAS: [f64; 3] = [0.5, 1.0, 2.0];
const BUMP_CATALOG: [&str; 2] = ["bump", "shifted_bump"];

fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).round() as usize;
    (0..=n).map(|k| lo + step * k as f64).collect()
}

pub(crate) fn kummer(ctx: &mut Ctx) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let shift = if ctx.fault(Fault::PerturbKappa) { 0.5 } else { 0.0 };
    let tol = *ctx.tol();
    for kappa in EIGEN_KAPPAS {
        let ku = kappa + shift;
        let inputs = json!({ "kappa": kappa, "kappa_eigenfunction": ku, "lambdas": EIGEN_LAMBDAS, "x": EIGEN_XS });
        out.push(check(ctx.suite, "eigen_residual", inputs.clone(), || {
            let mut worst: f64 = 0.0;
            for lambda in EIGEN_LAMBDAS {
                let u = KummerEigen { kappa: ku, lambda };
                for x in EIGEN_XS {
                    let r = (one_var_t_numeric(kappa, &u, x)? - Complex64::new(0.0, lambda) * u.value(x)?).norm();
                    if !(r < tol.eigen_residual) {
                        return Ok(Err((
                            format!("|T M - i lambda M| = {r:.3e}"),
                            json!({ "lambda": lambda, "x": x, "residual": r }),
                        )));
                    }
                    worst = worst.max(r);
                }
            }
            Ok(Ok(format!("max residual {worst:.3e}")))
        }));
        out.push(check(ctx.suite, "ode_residual", inputs, || {
            let mut worst: f64 = 0.0;
            for lambda in EIGEN_LAMBDAS {
                let u = KummerEigen { kappa: ku, lambda };
                for x in EIGEN_XS {
                    let r = generalized_ode_residual(kappa, lambda, &u, x)?.norm();
                    if !(r < tol.ode_residual) {
                        return Ok(Err((
                            format!("ODE residual {r:.3e}"),
                            json!({ "lambda": lambda, "x": x, "residual": r }),
                        )));
                    }
                    worst = worst.max(r);
                }
            }
            Ok(Ok(format!("max residual {worst:.3e}")))
        }));
    }

    for kappa in BOUND_KAPPAS {
        let inputs = json!({ "kappa": kappa, "points": BOUND_POINTS, "t_max": BOUND_T_MAX });
        out.push(check(ctx.suite, "unit_bound", inputs, || {
            let samples = bound_grid(kappa, BOUND_POINTS, BOUND_T_MAX)?;
            let top = samples.iter().max_by(|a, b| a.abs.total_cmp(&b.abs)).expect("non-empty grid");
            if top.abs <= 1.0 {
                Ok(Ok(format!("max |M| = {:.6}", top.abs)))
            } else {
                Ok(Err((format!("|M(i t)| = {:.12} exceeds 1", top.abs), json!({ "t": top.t, "abs": top.abs }))))
            }
        }));
    }

    let ys = grid(-20.0, 20.0, 0.5);
    for kappa in BOUND_KAPPAS {
        let inputs = json!({ "kappa": kappa, "orders": [1, 2, 3], "z": "i*y", "y": ys });
        out.push(check(ctx.suite, "derivative_bound", inputs, || {
            for n in 1..=3u32 {
                for &y in &ys {
                    let (lhs, rhs) = derivative_bound(kappa, n, Complex64::new(0.0, y))?;
                    if lhs > rhs {
                        return Ok(Err((
                            format!("|M^({n})(i y)| = {lhs:.6e} exceeds |y|^{n} = {rhs:.6e}"),
                            json!({ "n": n, "y": y, "lhs": lhs, "rhs": rhs }),
                        )));
                    }
                }
            }
            Ok(Ok("bound holds on the grid".into()))
        }));
    }

    let precision = Precision::current();
    let ys = grid(-30.0, 30.0, 1.0);
    for kappa in BOUND_KAPPAS {
        let inputs = json!({ "kappa": kappa, "y": ys, "precision": precision.name() });
        out.push(check(ctx.suite, "series_integral", inputs, || {
            let mut worst: f64 = 0.0;
            for &y in &ys {
                let gap = series_integral_agreement(kappa, y, precision)?;
                if !(gap < tol.series_integral) {
                    return Ok(Err((format!("relative gap {gap:.3e}"), json!({ "y": y, "gap": gap }))));
                }
                worst = worst.max(gap);
            }
            Ok(Ok(format!("max relative gap {worst:.3e}")))
        }));
    }

    let inputs = json!({ "kappa": 0.5, "x": 1.0, "lambdas": DECAY_LAMBDAS, "threshold": DECAY_THRESHOLD });
    out.push(check(ctx.suite, "decay", inputs, || {
        let d = decay_profile(0.5, 1.0, &DECAY_LAMBDAS)?;
        let last = d.abs[d.abs.len() - 1];
        if d.monotone && last < DECAY_THRESHOLD {
            Ok(Ok(format!("{:?}", d.abs)))
        } else {
            Ok(Err(("no monotone decay below the threshold".into(), json!({ "abs": d.abs }))))
        }
    }));

    for kappa in BOUND_KAPPAS {
        let inputs = json!({ "kappa": kappa, "lambdas": EIGEN_LAMBDAS, "x": EIGEN_XS, "order": CHI_ORDER });
        out.push(check(ctx.suite, "chi_of_plane_wave", inputs, || {
            let s = build_subsystem_direct(1, vec![Rational::from_float(kappa).expect("finite")])?;
            let mut worst: f64 = 0.0;
            for lambda in EIGEN_LAMBDAS {
                let wave = Line(Exponential::imaginary(lambda));
                for x in EIGEN_XS {
                    let gap = (chi_numeric(&wave, &s, &[x], CHI_ORDER)?
                        - bold_m(kappa, Complex64::new(0.0, lambda * x))?)
                    .norm();
                    if !(gap < tol.chi_plane_wave) {
                        return Ok(Err((
                            format!("chi e^(i lambda .) differs from M by {gap:.3e}"),
                            json!({ "lambda": lambda, "x": x }),
                        )));
                    }
                    worst = worst.max(gap);
                }
            }
            Ok(Ok(format!("max gap {worst:.3e}")))
        }));
    }

    let zs =
        [Complex64::new(1.0, 0.0), Complex64::new(-3.5, 2.0), Complex64::new(0.0, 25.0), Complex64::new(10.0, -7.0)];
    let inputs = json!({ "z": zs });
    out.push(check(ctx.suite, "kappa_zero_exponential", inputs, || {
        for z in zs {
            let gap = (bold_m(0.0, z)? - z.exp()).norm() / z.exp().norm();
            if !(gap < 1e-14) {
                return Ok(Err(("M_0 differs from exp".into(), json!({ "z": z, "gap": gap }))));
            }
        }
        Ok(Ok("M_0 = exp".into()))
    }));
    out
}

fn eigenfunction(
    family: Family,
    kappas: &[f64],
    lambda: Vec<Complex64>,
) -> crate::error::Result<MultivarEigenfunction> {
    match family {
        Family::Direct => MultivarEigenfunction::direct_product(kappas.to_vec(), lambda),
        Family::A => MultivarEigenfunction::a_type(kappas.to_vec(), lambda),
        Family::B => {
            let plus = kappas.iter().step_by(2).copied().collect();
            let minus = kappas.iter().skip(1).step_by(2).copied().collect();
            MultivarEigenfunction::b_type(plus, minus, lambda)
        }
    }
}

pub(crate) fn multivar_eigen(ctx: &mut Ctx) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let max_dim = ctx.config.max_dimension.min(EIGEN_MAX_DIM);
    let mut cases = Vec::new();
    if max_dim < 2 {
        cases.push((Family::Direct, 1));
    }
    for dim in 2..=max_dim {
        cases.extend([(Family::Direct, dim), (Family::A, dim), (Family::B, dim)]);
    }
    let tol = ctx.tol().multivar_residual;
    for (family, dim) in cases {
        let kappas: Vec<Rational> =
            (0..sample::rank(family, dim)).map(|_| sample::pick(&mut ctx.rng, &ctx.config.kappa_set).clone()).collect();
        let lambda: Vec<f64> = (0..dim).map(|_| to_f64(&sample::rational_in(&mut ctx.rng, -2, 2, 4))).collect();
        let xi = sample::vector(&mut ctx.rng, dim);
        let points: Vec<Vec<f64>> =
            (0..EIGEN_POINTS).map(|_| (0..dim).map(|_| ctx.rng.random_range(-2.0..2.0)).collect()).collect();
        let inputs = json!({
            "family": family.name(),
            "dim": dim,
            "kappas": kappas.iter().map(fmt_rational).collect::<Vec<_>>(),
            "lambda": lambda,
            "xi": xi,
            "points": points,
        });
        let perturb = ctx.fault(Fault::PerturbRoot);
        out.push(check(ctx.suite, "eigen_residual", inputs, || {
            let kf: Vec<f64> = kappas.iter().map(to_f64).collect();
            let m = eigenfunction(family, &kf, lambda.iter().map(|l| Complex64::new(*l, 0.0)).collect())?;
            let s = sample::subsystem(family, dim, kappas.clone())?;
            let s = if perturb { sample::perturb_root(&s) } else { s };
            let op = ProjectionDunklOperator::new(s, xi.clone())?;
            let eigenvalue = Complex64::new(0.0, lambda.iter().zip(xi.to_f64()).map(|(l, v)| l * v).sum());

            let origin = m.value(&vec![0.0; dim])?;
            if (origin - 1.0).norm() > 2.0 * f64::EPSILON {
                return Ok(Err(("M(0) is not 1".into(), json!({ "value": origin }))));
            }
            let mut worst: f64 = 0.0;
            for x in &points {
                let r = (op.apply_numeric(&m, x)? - eigenvalue * m.value(x)?).norm();
                if !(r < tol) {
                    return Ok(Err((format!("|T M - i<lambda,xi> M| = {r:.3e}"), json!({ "x": x, "residual": r }))));
                }
                worst = worst.max(r);
            }
            Ok(Ok(format!("max residual {worst:.3e}")))
        }));
    }
    out
}

pub(crate) fn transform(ctx: &mut Ctx) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let tol = *ctx.tol();
    let shift = if ctx.fault(Fault::PerturbKappa) { 0.5 } else { 0.0 };

    out.push(check(
        ctx.suite,
        "reference_indicator",
        json!({ "function": "indicator", "kappa": 0.0, "lambda": PI }),
        || {
            let f = catalog("indicator")?;
            let v = kummer_transform(&TransformRequest::new(0.0, f.as_ref(), vec![PI])?)?[0].norm();
            if v < tol.transform_reference {
                Ok(Ok(format!("|F f(pi)| = {v:.3e}")))
            } else {
                Ok(Err(("2 sin(pi)/pi not reproduced".into(), json!({ "abs": v }))))
            }
        },
    ));

    let gl = [0.0, 0.5, 1.0, 2.0, 3.0];
    out.push(check(
        ctx.suite,
        "reference_gaussian",
        json!({ "function": "gaussian", "kappa": 0.0, "lambdas": gl }),
        || {
            let f = catalog("gaussian")?;
            let values = kummer_transform(&TransformRequest::new(0.0, f.as_ref(), gl.to_vec())?)?;
            for (l, v) in gl.iter().zip(values) {
                let want = gaussian_integral() * (-l * l / 2.0).exp();
                let err = (v - want).norm();
                if !(err < tol.transform_reference) {
                    return Ok(Err((
                        "Gaussian transform off".into(),
                        json!({ "lambda": l, "value": v, "expected": want }),
                    )));
                }
            }
            Ok(Ok("sqrt(2 pi) exp(-lambda^2 / 2)".into()))
        },
    ));

    let mut lambdas = grid(0.0, 5.0, 0.25);
    lambdas.extend(DECAY_LAMBDAS);
    for &name in CATALOG {
        for kappa in TRANSFORM_KAPPAS {
            let inputs =
                json!({ "function": name, "kappa": kappa, "lambdas": lambdas, "slack": tol.transform_bound_slack });
            out.push(check(ctx.suite, "sup_bound", inputs, || {
                let f = catalog(name)?;
                let values = kummer_transform(&TransformRequest::new(kappa, f.as_ref(), lambdas.clone())?)?;
                let l1 = l1_norm(f.as_ref(), DEFAULT_ORDER)?;
                let (at, sup) = lambdas
                    .iter()
                    .zip(&values)
                    .map(|(l, v)| (*l, v.norm()))
                    .max_by(|a, b| a.1.total_cmp(&b.1))
                    .expect("non-empty grid");
                if sup <= l1 + tol.transform_bound_slack {
                    Ok(Ok(format!("sup {sup:.9} <= L1 {l1:.9}")))
                } else {
                    Ok(Err((
                        format!("sup |F f| = {sup:.9} exceeds L1 = {l1:.9}"),
                        json!({ "lambda": at, "abs": sup, "l1": l1 }),
                    )))
                }
            }));
            out.push(check(ctx.suite, "decay", json!({ "function": name, "kappa": kappa }), || {
                let f = catalog(name)?;
                let d = c0_decay_check(kappa, f.as_ref(), DEFAULT_ORDER)?;
                if d.passed {
                    Ok(Ok(format!("ratio {:.3e} at lambda = 1000", d.final_ratio)))
                } else {
                    Ok(Err(("no decay".into(), serde_json::to_value(&d).unwrap_or_default())))
                }
            }));
        }
        let base = grid(0.0, 5.0, 0.25);
        out.push(check(ctx.suite, "specialization", json!({ "function": name, "lambdas": base }), || {
            let f = catalog(name)?;
            let k = kummer_transform(&TransformRequest::new(0.0, f.as_ref(), base.clone())?)?;
            let fo = fourier_transform(f.as_ref(), &base, DEFAULT_ORDER)?;
            if k == fo {
                Ok(Ok("identical".into()))
            } else {
                Ok(Err(("kappa = 0 differs from the Fourier path".into(), json!({ "kummer": k, "fourier": fo }))))
            }
        }));
    }

    let fl = grid(0.0, 5.0, 0.5);
    for name in BUMP_CATALOG {
        for kappa in FACTOR_KAPPAS {
            let inputs = json!({ "function": name, "kappa": kappa, "kappa_dual": kappa + shift, "lambdas": fl });
            out.push(check(ctx.suite, "factorization", inputs, || {
                let f = catalog(name)?;
                let kummer = kummer_transform(&TransformRequest::new(kappa, f.as_ref(), fl.clone())?)?;
                let dual = factorization_check(&TransformRequest::new(kappa + shift, f.as_ref(), fl.clone())?)?;
                let (at, gap) = fl
                    .iter()
                    .zip(kummer.iter().zip(&dual.factored))
                    .map(|(l, (a, b))| (*l, (a - b).norm()))
                    .max_by(|a, b| a.1.total_cmp(&b.1))
                    .expect("non-empty grid");
                if gap < tol.factorization {
                    Ok(Ok(format!("max discrepancy {gap:.3e}")))
                } else {
                    Ok(Err((format!("discrepancy {gap:.3e}"), json!({ "lambda": at, "discrepancy": gap }))))
                }
            }));
        }
    }

    for kappa in [0.5, 1.0] {
        let inputs = json!({ "kappa": kappa, "combination": "2*bump - 3i*smooth_indicator", "lambdas": fl });
        out.push(check(ctx.suite, "linearity", inputs, || {
            let f = Bump::unit();
            let g = SmoothIndicator { a: -1.0, b: 1.0, ramp: 0.5 };
            let (a, b) = (Complex64::new(2.0, 0.0), Complex64::new(0.0, -3.0));
            let h = Combination { terms: vec![(a, &f as &dyn Univariate), (b, &g)] };
            let tf = kummer_transform(&TransformRequest::new(kappa, &f, fl.clone())?)?;
            let tg = kummer_transform(&TransformRequest::new(kappa, &g, fl.clone())?)?;
            let th = kummer_transform(&TransformRequest::new(kappa, &h, fl.clone())?)?;
            for ((l, h), (f, g)) in fl.iter().zip(&th).zip(tf.iter().zip(&tg)) {
                let gap = (h - (a * f + b * g)).norm();
                if !(gap < tol.linearity) {
                    return Ok(Err(("transform is not linear".into(), json!({ "lambda": l, "gap": gap }))));
                }
            }
            Ok(Ok("linear on the grid".into()))
        }));
    }
    out
}
