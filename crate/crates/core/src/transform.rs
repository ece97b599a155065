//! The Kummer transform F_kappa f(lambda) = int f(x) bold M_kappa(i lambda x) dx,
//! its Fourier specialization at kappa = 0, and the factorization through the
//! dual intertwiner, F_kappa f = F(tchi f).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intertwine::dual_chi;
use crate::kummer::{bold_m, bold_m_asymptotic, SWITCH_RADIUS};
use crate::quadrature::legendre;
use crate::testfn::Univariate;

pub const DEFAULT_ORDER: usize = 24;
/// Upper limit on Gauss–Legendre panels per transform value.
pub const MAX_PANELS: usize = 200_000;
/// Halvings towards the origin for the logarithmic singularity of tchi f.
pub const GRADED_LEVELS: usize = 44;
/// Factor of the L1 norm that |F_kappa f| must fall under at the largest
/// lambda of the decay check.
pub const DECAY_FACTOR: f64 = 0.05;
pub const DECAY_LAMBDAS: [f64; 3] = [10.0, 100.0, 1000.0];
/// Relative to the L1 norm, values below this count as fully decayed when
/// judging monotonicity.
pub const DECAY_NOISE_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct TransformRequest<'a> {
    pub kappa: f64,
    pub f: &'a dyn Univariate,
    pub lambdas: Vec<f64>,
    pub order: usize,
}

impl<'a> TransformRequest<'a> {
    pub fn new(kappa: f64, f: &'a dyn Univariate, lambdas: Vec<f64>) -> Result<Self> {
        Self::with_order(kappa, f, lambdas, DEFAULT_ORDER)
    }

    pub fn with_order(kappa: f64, f: &'a dyn Univariate, lambdas: Vec<f64>, order: usize) -> Result<Self> {
        if !(kappa >= 0.0) || !kappa.is_finite() {
            return Err(Error::invalid(format!("kappa must be nonnegative, got {kappa}")));
        }
        if lambdas.is_empty() {
            return Err(Error::invalid("lambda grid is empty"));
        }
        if let Some(l) = lambdas.iter().find(|l| !l.is_finite()) {
            return Err(Error::invalid(format!("lambda {l} is not finite")));
        }
        support_of(f)?;
        Ok(Self { kappa, f, lambdas, order })
    }
}

fn support_of(f: &dyn Univariate) -> Result<(f64, f64)> {
    match f.support() {
        Some((a, b)) if a.is_finite() && b.is_finite() && a <= b => Ok((a, b)),
        _ => Err(Error::invalid(format!("{} needs a finite support bound", f.name()))),
    }
}

fn panel_width(len: f64, lambda: f64) -> f64 {
    (PI / lambda.abs().max(1.0)).min(len / 16.0)
}

/// Quadrature nodes and weights of uniform panels on [a, b].
fn uniform_nodes(a: f64, b: f64, width: f64, order: usize) -> Result<Vec<(f64, f64)>> {
    if b <= a {
        return Ok(Vec::new());
    }
    let panels = ((b - a) / width).ceil().max(1.0);
    if panels > MAX_PANELS as f64 {
        return Err(Error::Quadrature(format!("panel budget {MAX_PANELS} exceeded on [{a}, {b}]")));
    }
    let panels = panels as usize;
    let rule = legendre(order)?;
    let h = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let lo = a + h * p as f64;
        out.extend(rule.nodes().iter().zip(rule.weights()).map(|(u, w)| (lo + h * u, w * h)));
    }
    Ok(out)
}

/// e^z at kappa = 0; otherwise bold M_kappa(z), through its asymptotic
/// expansion once |z| passes the series range.
fn kernel(kappa: f64, z: Complex64) -> Result<Complex64> {
    if kappa == 0.0 {
        return Ok(z.exp());
    }
    if z.norm() > SWITCH_RADIUS {
        if let Ok(v) = bold_m_asymptotic(kappa, z) {
            return Ok(v);
        }
    }
    bold_m(kappa, z)
}

fn transform_at(kappa: f64, f: &dyn Univariate, lambda: f64, order: usize) -> Result<Complex64> {
    let (a, b) = support_of(f)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, w) in uniform_nodes(a, b, panel_width(b - a, lambda), order)? {
        let v = f.value(x)?;
        if v != Complex64::new(0.0, 0.0) {
            acc += v * kernel(kappa, Complex64::new(0.0, lambda * x))? * w;
        }
    }
    Ok(acc)
}

/// F_kappa f on the grid, in grid order. kappa = 0 uses the kernel e^{i lambda x}.
pub fn kummer_transform(req: &TransformRequest) -> Result<Vec<Complex64>> {
    req.lambdas.iter().map(|&l| transform_at(req.kappa, req.f, l, req.order)).collect()
}

/// int f(x) e^{i lambda x} dx on the grid.
pub fn fourier_transform(f: &dyn Univariate, lambdas: &[f64], order: usize) -> Result<Vec<Complex64>> {
    lambdas.iter().map(|&l| transform_at(0.0, f, l, order)).collect()
}

/// int |f| with the same panels as the transform at lambda = 0.
pub fn l1_norm(f: &dyn Univariate, order: usize) -> Result<f64> {
    let (a, b) = support_of(f)?;
    let mut acc = 0.0;
    for (x, w) in uniform_nodes(a, b, panel_width(b - a, 0.0), order)? {
        acc += f.value(x)?.norm() * w;
    }
    Ok(acc)
}

/// Nodes on (0, extent]: geometric panels towards 0, uniform beyond extent / 8.
fn graded_nodes(extent: f64, width: f64, order: usize) -> Result<Vec<(f64, f64)>> {
    if extent <= 0.0 {
        return Ok(Vec::new());
    }
    let rule = legendre(order)?;
    let knee = extent / 8.0;
    let mut out = uniform_nodes(knee, extent, width.min(extent / 16.0), order)?;
    let mut hi = knee;
    for _ in 0..GRADED_LEVELS {
        let lo = hi / 2.0;
        let h = hi - lo;
        out.extend(rule.nodes().iter().zip(rule.weights()).map(|(u, w)| (lo + h * u, w * h)));
        hi = lo;
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorizationReport {
    pub function: String,
    pub kappa: f64,
    pub lambdas: Vec<f64>,
    pub kummer: Vec<Complex64>,
    pub factored: Vec<Complex64>,
    pub max_discrepancy: f64,
    /// At kappa = 0 the dual intertwiner is not defined; both columns are
    /// then the Fourier transform.
    pub skipped: bool,
}

/// F_kappa f against F(tchi f) on the request grid.
///
/// tchi f has a logarithmic singularity at 0, so the outer integral uses
/// panels graded towards the origin on each side. The node layout is shared
/// by all lambdas, so tchi f is evaluated once per node.
pub fn factorization_check(req: &TransformRequest) -> Result<FactorizationReport> {
    let kummer = kummer_transform(req)?;
    if req.kappa == 0.0 {
        let fourier = fourier_transform(req.f, &req.lambdas, req.order)?;
        let max_discrepancy = max_gap(&kummer, &fourier);
        return Ok(FactorizationReport {
            function: req.f.name(),
            kappa: 0.0,
            lambdas: req.lambdas.clone(),
            kummer,
            factored: fourier,
            max_discrepancy,
            skipped: true,
        });
    }
    let (a, b) = support_of(req.f)?;
    let lambda_max = req.lambdas.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    let width = PI / lambda_max.max(1.0);
    let mut samples = Vec::new();
    for (sign, extent) in [(1.0, b.max(0.0)), (-1.0, (-a).max(0.0))] {
        for (x, w) in graded_nodes(extent, width, req.order)? {
            let v = dual_chi(req.f, req.kappa, sign * x, req.order)?;
            samples.push((sign * x, v * w));
        }
    }
    let factored: Vec<Complex64> = req
        .lambdas
        .iter()
        .map(|&l| samples.iter().map(|(x, vw)| vw * Complex64::new(0.0, l * x).exp()).sum())
        .collect();
    let max_discrepancy = max_gap(&kummer, &factored);
    Ok(FactorizationReport {
        function: req.f.name(),
        kappa: req.kappa,
        lambdas: req.lambdas.clone(),
        kummer,
        factored,
        max_discrepancy,
        skipped: false,
    })
}

fn max_gap(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max)
}

#[derive(Debug, Clone, Serialize)]
pub struct DecayReport {
    pub function: String,
    pub kappa: f64,
    pub lambdas: Vec<f64>,
    pub abs: Vec<f64>,
    pub l1: f64,
    pub monotone: bool,
    /// |F_kappa f| at the last lambda over the L1 norm.
    pub final_ratio: f64,
    pub passed: bool,
}

/// |F_kappa f| at lambda = 10, 100, 1000: the values must decrease and the
/// last must fall below DECAY_FACTOR times the L1 norm.
pub fn c0_decay_check(kappa: f64, f: &dyn Univariate, order: usize) -> Result<DecayReport> {
    let req = TransformRequest::with_order(kappa, f, DECAY_LAMBDAS.to_vec(), order)?;
    let abs: Vec<f64> = kummer_transform(&req)?.iter().map(|v| v.norm()).collect();
    let l1 = l1_norm(f, order)?;
    let floor = DECAY_NOISE_FLOOR * l1;
    let monotone = abs.windows(2).all(|w| w[1] < w[0] || w[1].max(w[0]) < floor);
    let final_ratio = abs[abs.len() - 1] / l1;
    Ok(DecayReport {
        function: f.name(),
        kappa,
        lambdas: req.lambdas,
        abs,
        l1,
        monotone,
        final_ratio,
        passed: monotone && final_ratio < DECAY_FACTOR,
    })
}

/// CSV `lambda,re,im,abs`.
pub fn transform_csv(lambdas: &[f64], values: &[Complex64]) -> String {
    let mut out = String::from("lambda,re,im,abs\n");
    for (l, v) in lambdas.iter().zip(values) {
        out.push_str(&format!("{l},{:e},{:e},{:e}\n", v.re, v.im, v.norm()));
    }
    out
}
