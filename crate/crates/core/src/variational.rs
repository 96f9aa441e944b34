//! Variational estimates of the emergence threshold.
//!
//! `q2_closed` is the window part of the quadratic form evaluated on the
//! Euler-equation trial profiles; its sign change gives the upper estimate
//! Λ2 for model A. `lambda1` solves the lower-estimate inequality for Λ1.
//! `model_b_certificate` evaluates the energy of the scaled trial family
//! showing that model B binds for every window size.

use std::f64::consts::{FRAC_2_PI, PI, SQRT_2};

use crate::quadrature::integrate;
use crate::roots::{bisect, golden_section_min};
use crate::{Error, Result};

fn pi2() -> f64 {
    PI * PI
}

/// Rate constants of the trial profiles, per unit `π x/d`.
fn rate_a() -> f64 {
    ((4.0 - PI) / (pi2() + 2.0 * PI - 16.0)).sqrt()
}

fn rate_b() -> f64 {
    (3.0 * (3.0 * PI - 8.0) / (9.0 * pi2() - 18.0 * PI - 32.0)).sqrt()
}

fn rate_c() -> f64 {
    3f64.sqrt() / 2.0
}

fn check_window(delta: f64, d: f64) -> Result<()> {
    if !(d > 0.0 && delta > 0.0 && delta < d) {
        return Err(Error::InvalidArgument(format!(
            "need 0 < delta < d, got delta = {delta}, d = {d}"
        )));
    }
    Ok(())
}

/// Closed-form window functional of the Euler trial profiles. Depends only on
/// `δ/d`.
pub fn q2_closed(delta: f64, d: f64) -> Result<f64> {
    check_window(delta, d)?;
    let t = PI * delta / d;
    let (a, b) = (rate_a(), rate_b());
    let c1 = ((4.0 - PI) * (pi2() + 2.0 * PI - 16.0)).sqrt() / (2.0 * PI);
    let c2 = 8.0 / (3.0 * 3f64.sqrt() * PI);
    let c3 = ((3.0 * PI - 8.0) * (9.0 * pi2() - 18.0 * PI - 32.0)).sqrt() / (6.0 * 3f64.sqrt() * PI);
    Ok(c1 * (t * a).tanh() + c2 / (t * rate_c()).tanh() + c3 / (t * b).tanh() - 4.0 / PI * (t / 2.0).tan())
}

/// Value, first and second derivative of one profile at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    fn scale(self, s: f64) -> Jet {
        Jet {
            v: s * self.v,
            d1: s * self.d1,
            d2: s * self.d2,
        }
    }

    fn plus(self, o: Jet) -> Jet {
        Jet {
            v: self.v + o.v,
            d1: self.d1 + o.d1,
            d2: self.d2 + o.d2,
        }
    }
}

/// The closed-form solutions of the Euler system on `[-δ, δ]`.
#[derive(Debug, Clone, Copy)]
pub struct TrialProfiles {
    delta: f64,
    d: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileJets {
    pub chi: Jet,
    pub phi: Jet,
    pub psi: Jet,
    pub eta: Jet,
}

impl TrialProfiles {
    pub fn new(delta: f64, d: f64) -> Result<Self> {
        check_window(delta, d)?;
        Ok(Self { delta, d })
    }

    fn even_hyp(&self, k: f64, x: f64) -> Jet {
        let den = (k * self.delta).cosh();
        Jet {
            v: (k * x).cosh() / den,
            d1: k * (k * x).sinh() / den,
            d2: k * k * (k * x).cosh() / den,
        }
    }

    fn odd_hyp(&self, k: f64, x: f64) -> Jet {
        let den = (k * self.delta).sinh();
        Jet {
            v: (k * x).sinh() / den,
            d1: k * (k * x).cosh() / den,
            d2: k * k * (k * x).sinh() / den,
        }
    }

    fn even_trig(&self, k: f64, x: f64) -> Jet {
        let den = (k * self.delta).cos();
        Jet {
            v: (k * x).cos() / den,
            d1: -k * (k * x).sin() / den,
            d2: -k * k * (k * x).cos() / den,
        }
    }

    pub fn at(&self, x: f64) -> ProfileJets {
        let s = PI / self.d;
        let ea = self.even_hyp(rate_a() * s, x);
        let ob = self.odd_hyp(rate_b() * s, x);
        let oc = self.odd_hyp(rate_c() * s, x);
        let tc = self.even_trig(s / 2.0, x);
        ProfileJets {
            chi: oc.plus(ob.scale(-1.0)).scale(4.0 / (3.0 * PI)),
            phi: ea.plus(ob.scale(-1.0)).scale(0.5),
            psi: ea.plus(ob).scale(0.5),
            eta: tc.plus(ea.scale(-1.0)).scale(FRAC_2_PI),
        }
    }

    /// Residuals of the four Euler equations at `x`.
    pub fn euler_residuals(&self, x: f64) -> [f64; 4] {
        let d = self.d;
        let ProfileJets { chi, phi, psi, eta } = self.at(x);
        let k = 4.0 / (3.0 * PI);
        let p = PI / d;
        [
            d * phi.d2 + d * FRAC_2_PI * psi.d2 - d * k * chi.d2 + 2.0 * d * FRAC_2_PI * eta.d2
                + p * (psi.v + eta.v + chi.v),
            d * psi.d2 + d * FRAC_2_PI * phi.d2 + d * k * chi.d2 + 2.0 * d * FRAC_2_PI * eta.d2
                + p * (phi.v + eta.v - chi.v),
            d * chi.d2 + d * k * (psi.d2 - phi.d2) - p * (psi.v - phi.v) - 0.75 * PI * p * chi.v,
            2.0 * d * eta.d2 + 2.0 * d * FRAC_2_PI * (psi.d2 + phi.d2) + p * (psi.v + phi.v)
                + 0.5 * PI * p * eta.v,
        ]
    }

    /// Integrand of the window functional at `x`.
    pub fn q2_integrand(&self, x: f64) -> f64 {
        let d = self.d;
        let ProfileJets { chi, phi, psi, eta } = self.at(x);
        let p = PI / d;
        d / 2.0 * (phi.d1.powi(2) + psi.d1.powi(2) + chi.d1.powi(2))
            + d * eta.d1.powi(2)
            + d * FRAC_2_PI * phi.d1 * psi.d1
            + 4.0 * d / (3.0 * PI) * chi.d1 * (psi.d1 - phi.d1)
            + 2.0 * d * FRAC_2_PI * eta.d1 * (phi.d1 + psi.d1)
            + p * chi.v * (psi.v - phi.v)
            + 3.0 * PI * p / 8.0 * chi.v.powi(2)
            - p * phi.v * psi.v
            - PI * p / 4.0 * eta.v.powi(2)
            - p * eta.v * (psi.v + phi.v)
    }
}

/// Window functional by adaptive quadrature of the trial-profile integrand.
pub fn q2_quadrature(delta: f64, d: f64) -> Result<f64> {
    let profiles = TrialProfiles::new(delta, d)?;
    let f = |x: f64| profiles.q2_integrand(x);
    Ok(integrate(f, -delta, 0.0, 5e-11)? + integrate(f, 0.0, delta, 5e-11)?)
}

/// Root of `q2_closed(·, 1)` in `(0.05, 0.95)`.
pub fn lambda2() -> Result<f64> {
    bisect(|l| q2_closed(l, 1.0).unwrap_or(f64::NAN), 0.05, 0.95, 1e-12).map_err(|_| Error::NoBracket {
        what: "window functional",
        lo: 0.05,
        hi: 0.95,
    })
}

/// Upper end of the admissible κ range, `(√129 - 1)/(8√2)`.
pub fn kappa_max() -> f64 {
    (129f64.sqrt() - 1.0) / (8.0 * SQRT_2)
}

/// Right-hand side of the lower-estimate inequality as a function of `κ = λπ`.
pub fn konec2_rhs(kappa: f64) -> Result<f64> {
    if !(kappa > 0.0 && kappa < kappa_max()) {
        return Err(Error::InvalidArgument(format!(
            "kappa must lie in (0, {}), got {kappa}",
            kappa_max()
        )));
    }
    let num = 3.0 * kappa * (2.0 * SQRT_2 * (1.0 + kappa) * kappa + 1.0 - kappa);
    let den = (1.0 - kappa) * (4.0 * SQRT_2 * (1.0 - kappa * kappa) - kappa);
    Ok(num / den)
}

/// `κ0` solving `konec2_rhs(κ0) = 1 - 2/π`.
pub fn kappa0() -> Result<f64> {
    let target = 1.0 - FRAC_2_PI;
    let (lo, hi) = (1e-6, kappa_max() - 1e-6);
    bisect(|k| konec2_rhs(k).unwrap_or(f64::NAN) - target, lo, hi, 1e-14).map_err(|_| Error::NoBracket {
        what: "lower-estimate inequality",
        lo,
        hi,
    })
}

/// Lower estimate `Λ1 = κ0/π`.
pub fn lambda1() -> Result<f64> {
    Ok(kappa0()? / PI)
}

/// Concrete trial family for model B: a plateau `φ` and a bump `j`.
#[derive(Debug, Clone, Copy)]
pub struct CertificateNorms {
    /// `‖φ'‖²`
    pub phi_prime: f64,
    /// `‖j‖²`
    pub j: f64,
    /// `‖j j'‖²`
    pub j_jprime: f64,
    /// `‖j²‖²`
    pub j_squared: f64,
}

/// `exp(-1/(1 - (x/δ)²))` on `(-δ, δ)` and its derivative.
fn bump(x: f64, delta: f64) -> (f64, f64) {
    let u = x / delta;
    let s = 1.0 - u * u;
    if s <= 0.0 {
        return (0.0, 0.0);
    }
    let j = (-1.0 / s).exp();
    if j == 0.0 {
        return (0.0, 0.0);
    }
    (j, j * (-2.0 * u / (delta * s * s)))
}

/// Derivative of the plateau: 1 on `[-b, b]`, Gaussian decay outside.
fn plateau_derivative(x: f64, b: f64) -> f64 {
    let t = x.abs() - b;
    if t <= 0.0 {
        0.0
    } else {
        -2.0 * t * (-t * t).exp() * x.signum()
    }
}

pub fn certificate_norms(delta: f64) -> Result<CertificateNorms> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidArgument(format!("delta must be positive, got {delta}")));
    }
    let b = 2.0 * delta;
    // The Gaussian tail is below 1e-40 beyond 10 units.
    let phi_prime = 2.0 * integrate(|x| plateau_derivative(x, b).powi(2), b, b + 10.0, 1e-13)?;
    let tol = 1e-14 * delta;
    let j = integrate(|x| bump(x, delta).0.powi(2), -delta, delta, tol)?;
    let j_jprime = integrate(
        |x| {
            let (v, dv) = bump(x, delta);
            (v * dv).powi(2)
        },
        -delta,
        delta,
        tol / delta.powi(2),
    )?;
    let j_squared = integrate(|x| bump(x, delta).0.powi(4), -delta, delta, tol)?;
    Ok(CertificateNorms {
        phi_prime,
        j,
        j_jprime,
        j_squared,
    })
}

/// Energy `q[Φ_{σ,ε}]` of the model-B trial function.
pub fn model_b_certificate(delta: f64, d: f64, sigma: f64, epsilon: f64) -> Result<f64> {
    if !(sigma > 0.0 && epsilon >= 0.0 && d > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "need sigma > 0, epsilon >= 0, d > 0; got {sigma}, {epsilon}, {d}"
        )));
    }
    let n = certificate_norms(delta)?;
    Ok(certificate_value(&n, d, sigma, epsilon))
}

pub fn certificate_value(n: &CertificateNorms, d: f64, sigma: f64, epsilon: f64) -> f64 {
    let mu = PI * PI / (4.0 * d * d);
    sigma * n.phi_prime - epsilon * (PI / d) * (2.0 / d).sqrt() * n.j
        + epsilon * epsilon * (4.0 * d * n.j_jprime - d * mu * n.j_squared)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Certificate {
    pub sigma: f64,
    pub epsilon: f64,
    pub value: f64,
}

/// Grid search over `σ ∈ [1e-6, 1]`, `ε ∈ [1e-4, 1]` (log spaced), then a
/// golden-section polish in `log ε`.
pub fn search_certificate(delta: f64, d: f64) -> Result<Certificate> {
    let n = certificate_norms(delta)?;
    let grid = |lo: f64, hi: f64, k: usize| -> Vec<f64> {
        (0..k).map(|i| 10f64.powf(lo + (hi - lo) * i as f64 / (k - 1) as f64)).collect()
    };
    let mut best = Certificate {
        sigma: 1.0,
        epsilon: 1.0,
        value: f64::INFINITY,
    };
    for &sigma in &grid(-6.0, 0.0, 25) {
        for &epsilon in &grid(-4.0, 0.0, 41) {
            let value = certificate_value(&n, d, sigma, epsilon);
            if value < best.value {
                best = Certificate { sigma, epsilon, value };
            }
        }
    }
    let centre = best.epsilon.log10();
    let (le, value) = golden_section_min(
        |le| certificate_value(&n, d, best.sigma, 10f64.powf(le)),
        (centre - 0.1).max(-4.0),
        (centre + 0.1).min(0.0),
        1e-10,
    );
    if value < best.value {
        best.epsilon = 10f64.powf(le);
        best.value = value;
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_limits_and_sign() {
        assert!(q2_closed(1e-4, 1.0).unwrap() > 1e3);
        assert!(q2_closed(1.0 - 1e-6, 1.0).unwrap() < -1e5);
        assert!(q2_closed(0.1, 1.0).unwrap() > 0.0);
        assert!(q2_closed(0.9, 1.0).unwrap() < 0.0);
        let v = q2_closed(0.34, 1.0).unwrap();
        assert!(v < 0.0 && v > -0.01);
        assert!(q2_closed(1.0, 1.0).is_err());
        assert!(q2_closed(0.0, 1.0).is_err());
    }

    #[test]
    fn depends_only_on_ratio() {
        let a = q2_closed(0.3, 1.0).unwrap();
        let b = q2_closed(0.6, 2.0).unwrap();
        assert!((a - b).abs() < 1e-13);
        let q = q2_quadrature(0.6, 2.0).unwrap();
        assert!((q - a).abs() < 1e-8);
    }

    #[test]
    fn profile_boundary_values_and_symmetry() {
        for &delta in &[0.1, 0.34, 0.8] {
            let p = TrialProfiles::new(delta, 1.0).unwrap();
            let (l, r) = (p.at(-delta), p.at(delta));
            assert!((l.phi.v - 1.0).abs() < 1e-10 && r.phi.v.abs() < 1e-10);
            assert!((r.psi.v - 1.0).abs() < 1e-10 && l.psi.v.abs() < 1e-10);
            assert!(l.chi.v.abs() < 1e-10 && r.chi.v.abs() < 1e-10);
            assert!(l.eta.v.abs() < 1e-10 && r.eta.v.abs() < 1e-10);
            for i in 0..=20 {
                let x = delta * (i as f64 / 10.0 - 1.0);
                let (a, b) = (p.at(x), p.at(-x));
                assert!((a.phi.v - b.psi.v).abs() < 1e-12);
                assert!((a.chi.v + b.chi.v).abs() < 1e-12);
                assert!((a.eta.v - b.eta.v).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn analytic_derivatives_match_finite_differences() {
        let p = TrialProfiles::new(0.4, 1.0).unwrap();
        let jets = |x: f64| {
            let j = p.at(x);
            [j.chi, j.phi, j.psi, j.eta]
        };
        for i in 0..=16 {
            let x = -0.39 + 0.78 * i as f64 / 16.0;
            let h = 1e-5;
            let (c, plus, minus) = (jets(x), jets(x + h), jets(x - h));
            // Fourth-order stencil for the second derivative: the fastest
            // profile has rate ≈ 12.3, which swamps a central difference.
            let g = 1e-4;
            let s = [jets(x + 2.0 * g), jets(x + g), jets(x - g), jets(x - 2.0 * g)];
            for k in 0..4 {
                assert!((c[k].d1 - (plus[k].v - minus[k].v) / (2.0 * h)).abs() < 1e-7);
                let fd2 = (-s[0][k].d1 + 8.0 * s[1][k].d1 - 8.0 * s[2][k].d1 + s[3][k].d1) / (12.0 * g);
                assert!((c[k].d2 - fd2).abs() < 1e-7, "profile {k} at {x}");
            }
        }
    }

    #[test]
    fn konec2_values() {
        assert!((konec2_rhs(0.25).unwrap() - 0.32333).abs() < 1e-4);
        assert!((konec2_rhs(0.27).unwrap() - 0.37917).abs() < 1e-4);
        assert!(konec2_rhs(1e-9).unwrap() < 1e-8);
        assert!(konec2_rhs(0.0).is_err());
        assert!(konec2_rhs(0.92).is_err());
        assert!((kappa_max() - 0.9156).abs() < 1e-4);
    }

    #[test]
    fn lambda1_root_contract() {
        let k0 = kappa0().unwrap();
        assert!(k0 > 0.25 && k0 < 0.27);
        assert!((konec2_rhs(k0).unwrap() - (1.0 - FRAC_2_PI)).abs() < 1e-10);
        let l1 = lambda1().unwrap();
        assert!((l1 - 0.084_227_7).abs() < 1e-6);
    }

    #[test]
    fn lambda2_root_contract() {
        let l2 = lambda2().unwrap();
        assert!((l2 - 0.338_998_4).abs() < 1e-6);
        assert!(q2_closed(l2, 1.0).unwrap().abs() < 1e-9);
    }

    #[test]
    fn plateau_norm_is_analytic() {
        let n = certificate_norms(0.3).unwrap();
        assert!((n.phi_prime - (2.0 * PI).sqrt() / 2.0).abs() < 1e-10);
    }

    #[test]
    fn certificate_is_affine_in_sigma() {
        let n = certificate_norms(0.2).unwrap();
        let eps = 0.01;
        let q1 = certificate_value(&n, 1.0, 0.1, eps);
        let q2 = certificate_value(&n, 1.0, 0.3, eps);
        assert!(((q2 - q1) / 0.2 - n.phi_prime).abs() < 1e-10);
        let q0 = model_b_certificate(0.2, 1.0, 0.5, 0.0).unwrap();
        assert!((q0 - 0.5 * n.phi_prime).abs() < 1e-14);
    }
}
