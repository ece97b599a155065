//! Gauss–Jacobi rules on [0, 1] for the weight (1 - t)^alpha t^beta.
//!
//! Nodes start from the Golub–Welsch eigenvalues of the Jacobi matrix and are
//! polished by Newton iteration on P_n^{(alpha, beta)}; weights come from the
//! derivative formula, which keeps small weights accurate near the endpoints.
//! Rules are immutable and cached process-wide by (alpha, beta, order).

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use libm::tgamma as gamma;
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::precision::dd_div;
use crate::rational::{fmt_rational, Rational};

pub const MAX_ORDER: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct JacobiRule {
    alpha: f64,
    beta: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl JacobiRule {
    /// Computes the `order`-point rule for (1 - t)^alpha t^beta on [0, 1].
    pub fn new(order: usize, alpha: f64, beta: f64) -> Result<Self> {
        if !(1..=MAX_ORDER).contains(&order) {
            return Err(Error::Quadrature(format!("order {order} outside 1..={MAX_ORDER}")));
        }
        if !(alpha > -1.0 && beta > -1.0) {
            return Err(Error::Quadrature(format!("exponents ({alpha}, {beta}) must exceed -1")));
        }
        // On [-1, 1]: weight (1 - x)^a (1 + x)^b with a = alpha, b = beta.
        let (a, b) = (alpha, beta);
        let n = order;
        let mut jm = DMatrix::<f64>::zeros(n, n);
        for k in 0..n {
            let kf = k as f64;
            let diag = if k == 0 {
                (b - a) / (a + b + 2.0)
            } else {
                let s = 2.0 * kf + a + b;
                (b * b - a * a) / (s * (s + 2.0))
            };
            jm[(k, k)] = diag;
            if k + 1 < n {
                let j = kf + 1.0;
                let s = 2.0 * j + a + b;
                let beta_j = if k == 0 {
                    4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b).powi(2) * (3.0 + a + b))
                } else {
                    4.0 * j * (j + a) * (j + b) * (j + a + b) / (s * s * (s + 1.0) * (s - 1.0))
                };
                jm[(k, k + 1)] = beta_j.sqrt();
                jm[(k + 1, k)] = beta_j.sqrt();
            }
        }
        let mut guesses: Vec<f64> = SymmetricEigen::new(jm).eigenvalues.iter().copied().collect();
        guesses.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));

        let log_scale = gamma_ratio_constant(n, a, b);
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for z0 in guesses {
            let mut z = z0;
            let mut eval = jacobi_eval(n, a, b, z);
            for _ in 0..8 {
                let step = eval.0 / eval.1;
                z -= step;
                eval = jacobi_eval(n, a, b, z);
                if step.abs() <= 1e-16 * z.abs().max(1.0) {
                    break;
                }
            }
            // Two Newton steps in double-double pin the node well below an
            // ulp, so 1 - z^2 in the weight keeps full relative accuracy
            // next to the endpoints.
            let mut zz = TwoFloat::from_f64(z);
            let mut dd = jacobi_eval_dd(n, a, b, zz);
            for _ in 0..2 {
                zz -= dd_div(dd.0, dd.1);
                dd = jacobi_eval_dd(n, a, b, zz);
            }
            let (_, dp, p_prev) = dd;
            let temp = 2.0 * n as f64 + a + b;
            let w = f64::from(dd_div(TwoFloat::from_f64(log_scale * temp * 2f64.powf(a + b)), dp * p_prev));
            // map x in [-1, 1] to t in [0, 1]
            nodes.push(f64::from((TwoFloat::from_f64(1.0) + zz) / 2.0));
            weights.push(w / 2f64.powf(a + b + 1.0));
        }
        Ok(Self { alpha, beta, nodes, weights })
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Approximates int_0^1 (1-t)^alpha t^beta g(t) dt.
    pub fn integrate(&self, mut g: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&t, &w)| w * g(t)).sum()
    }

    pub fn integrate_complex(&self, mut g: impl FnMut(f64) -> Complex64) -> Complex64 {
        self.nodes.iter().zip(&self.weights).map(|(&t, &w)| g(t) * w).sum()
    }

    /// Fallible variant: the first error aborts the sum.
    pub fn try_integrate_complex(&self, mut g: impl FnMut(f64) -> Result<Complex64>) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&t, &w) in self.nodes.iter().zip(&self.weights) {
            acc += g(t)? * w;
        }
        Ok(acc)
    }
}

/// Gamma(a+n) Gamma(b+n) / (Gamma(n+1) Gamma(n+a+b+1)), accumulated as a
/// product from n = 1 to avoid the cancellation of log-gamma differences.
fn gamma_ratio_constant(n: usize, a: f64, b: f64) -> f64 {
    let mut c = gamma(a + 1.0) * gamma(b + 1.0) / gamma(a + b + 2.0);
    for k in 1..n {
        let k = k as f64;
        c *= (a + k) * (b + k) / ((k + 1.0) * (k + a + b + 1.0));
    }
    c
}

/// Double-double version of [`jacobi_eval`].
fn jacobi_eval_dd(n: usize, a: f64, b: f64, z: TwoFloat) -> (TwoFloat, TwoFloat, TwoFloat) {
    let one = TwoFloat::from_f64(1.0);
    let ab = a + b;
    let mut p1 = (TwoFloat::from_f64(a - b) + z * (2.0 + ab)) / 2.0;
    let mut p2 = one;
    for j in 2..=n {
        let jf = j as f64;
        let p3 = p2;
        p2 = p1;
        let temp = TwoFloat::from_f64(2.0 * jf) + ab;
        let an = TwoFloat::from_f64(2.0 * jf) * (TwoFloat::from_f64(jf) + ab) * (temp - 2.0);
        let bn = (temp - 1.0) * (TwoFloat::from_f64(a * a) - b * b + temp * (temp - 2.0) * z);
        let cn = (TwoFloat::from_f64(jf - 1.0) + a) * (TwoFloat::from_f64(jf - 1.0) + b) * temp * 2.0;
        p1 = dd_div(bn * p2 - cn * p3, an);
    }
    let nf = n as f64;
    let temp = TwoFloat::from_f64(2.0 * nf) + ab;
    let dp = dd_div(
        (TwoFloat::from_f64(a - b) - temp * z) * p1 * nf
            + (TwoFloat::from_f64(nf) + a) * (TwoFloat::from_f64(nf) + b) * p2 * 2.0,
        temp * (one - z * z),
    );
    (p1, dp, p2)
}

/// Returns (P_n(z), P_n'(z), P_{n-1}(z)) for the standard Jacobi polynomial.
fn jacobi_eval(n: usize, a: f64, b: f64, z: f64) -> (f64, f64, f64) {
    let ab = a + b;
    let mut p1 = 0.5 * (a - b + (2.0 + ab) * z);
    let mut p2 = 1.0;
    for j in 2..=n {
        let jf = j as f64;
        let p3 = p2;
        p2 = p1;
        let temp = 2.0 * jf + ab;
        let an = 2.0 * jf * (jf + ab) * (temp - 2.0);
        let bn = (temp - 1.0) * (a * a - b * b + temp * (temp - 2.0) * z);
        let cn = 2.0 * (jf - 1.0 + a) * (jf - 1.0 + b) * temp;
        p1 = (bn * p2 - cn * p3) / an;
    }
    let nf = n as f64;
    let temp = 2.0 * nf + ab;
    let dp = (nf * (a - b - temp * z) * p1 + 2.0 * (nf + a) * (nf + b) * p2) / (temp * (1.0 - z * z));
    (p1, dp, p2)
}

type Key = (u64, u64, usize);

static CACHE: LazyLock<RwLock<HashMap<Key, Arc<JacobiRule>>>> = LazyLock::new(|| RwLock::new(HashMap::new()));

/// Shared rule for (1 - t)^alpha t^beta, built once per key.
pub fn jacobi_rule(order: usize, alpha: f64, beta: f64) -> Result<Arc<JacobiRule>> {
    let key = (alpha.to_bits(), beta.to_bits(), order);
    if let Some(rule) = CACHE.read().expect("quadrature cache poisoned").get(&key) {
        return Ok(Arc::clone(rule));
    }
    let rule = Arc::new(JacobiRule::new(order, alpha, beta)?);
    let mut cache = CACHE.write().expect("quadrature cache poisoned");
    Ok(Arc::clone(cache.entry(key).or_insert(rule)))
}

pub fn legendre(order: usize) -> Result<Arc<JacobiRule>> {
    jacobi_rule(order, 0.0, 0.0)
}

/// Gauss–Legendre over [a, b] split into equal panels no wider than `max_width`.
pub fn integrate_panels(
    a: f64,
    b: f64,
    max_width: f64,
    order: usize,
    max_panels: usize,
    mut g: impl FnMut(f64) -> Result<Complex64>,
) -> Result<Complex64> {
    if b <= a {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let panels = ((b - a) / max_width).ceil().max(1.0);
    if !panels.is_finite() || panels as usize > max_panels {
        return Err(Error::Quadrature(format!("panel budget {max_panels} exceeded on [{a}, {b}]")));
    }
    let panels = panels as usize;
    let rule = legendre(order)?;
    let h = (b - a) / panels as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let lo = a + h * p as f64;
        acc += rule.try_integrate_complex(|u| g(lo + h * u))? * h;
    }
    Ok(acc)
}

/// Gauss–Legendre on [0, b] with panels refined geometrically towards 0,
/// for integrands with a logarithmic singularity at the origin.
pub fn integrate_graded(
    b: f64,
    levels: usize,
    order: usize,
    mut g: impl FnMut(f64) -> Result<Complex64>,
) -> Result<Complex64> {
    let rule = legendre(order)?;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut hi = b;
    for _ in 0..levels {
        let lo = hi / 2.0;
        let h = hi - lo;
        acc += rule.try_integrate_complex(|u| g(lo + h * u))? * h;
        hi = lo;
    }
    Ok(acc)
}

/// JSON form of a rule for the weight (1 - t)^(kappa - 1), the measure of
/// the intertwining operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureDump {
    pub kappa: String,
    pub order: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Gauss–Jacobi rule with weight (1 - t)^(kappa - 1) on [0, 1].
#[derive(Debug, Clone)]
pub struct JacobiQuadrature {
    kappa_label: String,
    kappa: f64,
    rule: Arc<JacobiRule>,
}

impl JacobiQuadrature {
    pub fn new(kappa: &Rational, order: usize) -> Result<Self> {
        let k = crate::rational::to_f64(kappa);
        if k <= 0.0 {
            return Err(Error::invalid("kappa must be positive"));
        }
        Ok(Self { kappa_label: fmt_rational(kappa), kappa: k, rule: jacobi_rule(order, k - 1.0, 0.0)? })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn rule(&self) -> &JacobiRule {
        &self.rule
    }

    pub fn dump(&self) -> QuadratureDump {
        QuadratureDump {
            kappa: self.kappa_label.clone(),
            order: self.rule.order(),
            nodes: self.rule.nodes.clone(),
            weights: self.rule.weights.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.dump()).expect("rule serializes")
    }

    /// Loads a dumped rule and seeds the cache with it, so later lookups
    /// reuse the stored nodes bit for bit.
    pub fn from_json(text: &str) -> Result<Self> {
        let dump: QuadratureDump = serde_json::from_str(text).map_err(|e| Error::parse(e.column(), e.to_string()))?;
        if dump.nodes.len() != dump.order || dump.weights.len() != dump.order {
            return Err(Error::invalid("node/weight count does not match order"));
        }
        let kappa_r = crate::rational::parse_rational(&dump.kappa)?;
        let kappa = crate::rational::to_f64(&kappa_r);
        let rule = Arc::new(JacobiRule { alpha: kappa - 1.0, beta: 0.0, nodes: dump.nodes, weights: dump.weights });
        let key = ((kappa - 1.0).to_bits(), 0f64.to_bits(), dump.order);
        CACHE.write().expect("quadrature cache poisoned").insert(key, Arc::clone(&rule));
        Ok(Self { kappa_label: dump.kappa, kappa, rule })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    /// B(k + 1, kappa) = k! / (kappa (kappa + 1) ... (kappa + k)).
    fn beta_moment(k: usize, kappa: f64) -> f64 {
        let mut v = 1.0 / kappa;
        for j in 1..=k {
            v *= j as f64 / (kappa + j as f64);
        }
        v
    }

    #[test]
    fn integrates_moments_exactly() {
        for &kappa in &[0.5, 1.0, 1.5, 2.0, 3.25] {
            for &m in &[1usize, 2, 5, 10, 20, 40] {
                let rule = jacobi_rule(m, kappa - 1.0, 0.0).unwrap();
                for k in 0..2 * m {
                    let approx = rule.integrate(|t| t.powi(k as i32));
                    let exact = beta_moment(k, kappa);
                    let rel = ((approx - exact) / exact).abs();
                    assert!(rel <= 1e-13, "kappa={kappa} m={m} k={k} rel={rel}");
                }
            }
        }
    }

    #[test]
    fn both_endpoint_weights() {
        // int_0^1 (1-t)^{-1/2} t^{1/2} dt = B(3/2, 1/2) = pi/2
        let rule = jacobi_rule(12, -0.5, 0.5).unwrap();
        let v = rule.integrate(|_| 1.0);
        assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
        // int_0^1 t^{1/2} (1-t)^{-1/2} t dt = B(5/2, 1/2) = 3 pi / 8
        let v = rule.integrate(|t| t);
        assert!((v - 3.0 * std::f64::consts::PI / 8.0).abs() < 1e-14);
    }

    #[test]
    fn high_order_rules_are_sane() {
        let rule = jacobi_rule(200, 0.5, 0.0).unwrap();
        assert!(rule.nodes().windows(2).all(|w| w[0] < w[1]));
        assert!(rule.nodes().iter().all(|&t| t > 0.0 && t < 1.0));
        let total = rule.integrate(|_| 1.0);
        assert!((total - 1.0 / 1.5).abs() < 1e-13);
        assert!(jacobi_rule(201, 0.0, 0.0).is_err());
        assert!(jacobi_rule(0, 0.0, 0.0).is_err());
        assert!(jacobi_rule(4, -1.0, 0.0).is_err());
    }

    #[test]
    fn panels_resolve_oscillation() {
        let lam = 200.0;
        let v = integrate_panels(-1.0, 1.0, std::f64::consts::PI / lam, 16, 10_000, |x| {
            Ok(Complex64::new(0.0, lam * x).exp())
        })
        .unwrap();
        let exact = 2.0 * lam.sin() / lam;
        assert!((v.re - exact).abs() < 1e-12 && v.im.abs() < 1e-12);
        assert!(integrate_panels(0.0, 1.0, 1e-9, 4, 100, |_| Ok(Complex64::new(1.0, 0.0))).is_err());
    }

    #[test]
    fn graded_panels_handle_log_singularity() {
        // int_0^1 ln x dx = -1
        let v = integrate_graded(1.0, 60, 20, |x| Ok(Complex64::new(x.ln(), 0.0))).unwrap();
        assert!((v.re + 1.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn dump_round_trip() {
        let q = JacobiQuadrature::new(&rat(3, 2), 64).unwrap();
        let text = q.to_json();
        assert!(text.starts_with(r#"{"kappa":"3/2","order":64,"nodes":["#));
        let back = JacobiQuadrature::from_json(&text).unwrap();
        assert_eq!(back.dump(), q.dump());
        assert!(JacobiQuadrature::from_json(r#"{"kappa":"1","order":2,"nodes":[0.5],"weights":[1.0]}"#).is_err());
    }
}
