//! Strip geometry, boundary-condition layout and the transverse mode bases.
//!
//! The strip is `Ω = R × (0, d)`. Both models switch boundary conditions at
//! `x = ±δ`, splitting Ω into a left tail (I), a center window (II) and a
//! right tail (III). All spectral work happens in units where `d = 1`.

use std::f64::consts::{PI, SQRT_2};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    /// Dirichlet on the bottom wall for `x < -δ` and on the top wall for
    /// `x > δ`, Neumann elsewhere.
    A,
    /// Dirichlet on the top wall for `|x| > δ`, Neumann elsewhere.
    B,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::A => "A",
            ModelKind::B => "B",
        }
    }

    /// Transverse profile used in a region.
    pub fn profile(self, region: Region) -> ProfileKind {
        match (self, region) {
            (_, Region::II) => ProfileKind::NnCosine,
            (ModelKind::A, Region::I) => ProfileKind::DnSine,
            (ModelKind::A, Region::III) | (ModelKind::B, _) => ProfileKind::NdCosine,
        }
    }

    /// Whether the bottom (`y = 0`) or top (`y = d`) wall is Dirichlet at `x`.
    ///
    /// Switch points themselves count as Neumann.
    pub fn dirichlet_at(self, wall: Wall, x: f64, delta: f64) -> bool {
        match (self, wall) {
            (ModelKind::A, Wall::Bottom) => x < -delta,
            (ModelKind::A, Wall::Top) => x > delta,
            (ModelKind::B, Wall::Bottom) => false,
            (ModelKind::B, Wall::Top) => x.abs() > delta,
        }
    }
}

impl std::str::FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(ModelKind::A),
            "B" | "b" => Ok(ModelKind::B),
            other => Err(Error::InvalidArgument(format!(
                "unknown model '{other}', expected A or B"
            ))),
        }
    }
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wall {
    Bottom,
    Top,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    I,
    II,
    III,
}

impl Region {
    pub fn of(x: f64, delta: f64) -> Region {
        if x < -delta {
            Region::I
        } else if x > delta {
            Region::III
        } else {
            Region::II
        }
    }
}

/// Strip of width `d` whose boundary conditions switch at `x = ±delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    d: f64,
    delta: f64,
}

impl Geometry {
    pub fn new(d: f64, delta: f64) -> Result<Self> {
        if !(d.is_finite() && d > 0.0) {
            return Err(Error::InvalidGeometry(format!("strip width must be positive, got {d}")));
        }
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::InvalidGeometry(format!(
                "half window must be positive, got {delta}"
            )));
        }
        Ok(Self { d, delta })
    }

    /// Unit-width strip with `delta = lambda`.
    pub fn from_lambda(lambda: f64) -> Result<Self> {
        Self::new(1.0, lambda)
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn lambda(&self) -> f64 {
        self.delta / self.d
    }

    /// Bottom of the essential spectrum, `π²/(4d²)`.
    pub fn mu(&self) -> f64 {
        PI * PI / (4.0 * self.d * self.d)
    }

    /// Same shape rescaled to `d = 1`.
    pub fn normalized(&self) -> Geometry {
        Geometry {
            d: 1.0,
            delta: self.lambda(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileKind {
    /// Dirichlet at `y = 0`, Neumann at `y = d`.
    DnSine,
    /// Neumann at `y = 0`, Dirichlet at `y = d`.
    NdCosine,
    /// Neumann on both walls.
    NnCosine,
}

/// One transverse eigenfunction on `(0, d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransverseMode {
    pub region: Region,
    pub kind: ProfileKind,
    pub index: usize,
    pub d: f64,
}

impl TransverseMode {
    pub fn new(region: Region, kind: ProfileKind, index: usize, d: f64) -> Self {
        Self {
            region,
            kind,
            index,
            d,
        }
    }

    pub fn for_model(model: ModelKind, region: Region, index: usize, d: f64) -> Self {
        Self::new(region, model.profile(region), index, d)
    }

    /// `ν_k = k + 1/2` for the mixed families, `m` for the Neumann family.
    pub fn frequency(&self) -> f64 {
        match self.kind {
            ProfileKind::DnSine | ProfileKind::NdCosine => self.index as f64 + 0.5,
            ProfileKind::NnCosine => self.index as f64,
        }
    }

    pub fn eigenvalue(&self) -> f64 {
        let w = self.frequency() * PI / self.d;
        w * w
    }

    pub fn value(&self, y: f64) -> f64 {
        let d = self.d;
        let arg = self.frequency() * PI * y / d;
        match self.kind {
            ProfileKind::DnSine => (2.0 / d).sqrt() * arg.sin(),
            ProfileKind::NdCosine => (2.0 / d).sqrt() * arg.cos(),
            ProfileKind::NnCosine if self.index == 0 => (1.0 / d).sqrt(),
            ProfileKind::NnCosine => (2.0 / d).sqrt() * arg.cos(),
        }
    }

    pub fn derivative(&self, y: f64) -> f64 {
        let d = self.d;
        let w = self.frequency() * PI / d;
        let arg = w * y;
        match self.kind {
            ProfileKind::DnSine => (2.0 / d).sqrt() * w * arg.cos(),
            ProfileKind::NdCosine | ProfileKind::NnCosine => -(2.0 / d).sqrt() * w * arg.sin(),
        }
    }
}

/// Longitudinal decay rate `√(ε − E)` of a mode with transverse eigenvalue ε.
pub fn decay_rate(mode: &TransverseMode, energy: f64) -> Result<f64> {
    let threshold = mode.eigenvalue();
    if !(energy < threshold) {
        return Err(Error::PropagatingMode { energy, threshold });
    }
    Ok((threshold - energy).sqrt())
}

/// `∫₀^d tail(y)·center(y) dy` for a mixed tail mode against a Neumann mode.
pub fn overlap(tail: &TransverseMode, center: &TransverseMode) -> Result<f64> {
    if tail.d != center.d {
        return Err(Error::InvalidArgument(format!(
            "overlap between strips of different width ({} vs {})",
            tail.d, center.d
        )));
    }
    if center.kind != ProfileKind::NnCosine || tail.kind == ProfileKind::NnCosine {
        return Err(Error::InvalidArgument(
            "overlap expects a mixed tail mode and a Neumann center mode".into(),
        ));
    }
    let c = overlap_unit(tail.index, center.index);
    Ok(match tail.kind {
        ProfileKind::NdCosine if (tail.index + center.index) % 2 == 1 => -c,
        _ => c,
    })
}

/// Sine-family overlap `C_km` on the unit strip. The width cancels out.
pub(crate) fn overlap_unit(k: usize, m: usize) -> f64 {
    let nu = k as f64 + 0.5;
    if m == 0 {
        SQRT_2 / (nu * PI)
    } else {
        let m = m as f64;
        (2.0 * nu / PI) / (nu * nu - m * m)
    }
}

/// Dense `n_tail × n_center` overlap table between a tail family and the
/// Neumann family.
pub fn overlap_matrix(kind: ProfileKind, n_tail: usize, n_center: usize) -> Vec<Vec<f64>> {
    (0..n_tail)
        .map(|k| {
            (0..n_center)
                .map(|m| {
                    let c = overlap_unit(k, m);
                    if kind == ProfileKind::NdCosine && (k + m) % 2 == 1 {
                        -c
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate;
    use proptest::prelude::*;

    fn family(kind: ProfileKind, k: usize) -> TransverseMode {
        TransverseMode::new(Region::I, kind, k, 1.0)
    }

    #[test]
    fn mu_and_lambda() {
        let g = Geometry::new(2.0, 0.7).unwrap();
        assert_eq!(g.lambda(), 0.35);
        assert!((g.mu() - PI * PI / 16.0).abs() < 1e-15);
        assert!(Geometry::new(1.0, 0.0).is_err());
        assert!(Geometry::new(-1.0, 0.5).is_err());
    }

    #[test]
    fn region_assignment() {
        assert_eq!(ModelKind::A.profile(Region::I), ProfileKind::DnSine);
        assert_eq!(ModelKind::A.profile(Region::III), ProfileKind::NdCosine);
        assert_eq!(ModelKind::B.profile(Region::I), ProfileKind::NdCosine);
        assert_eq!(ModelKind::B.profile(Region::II), ProfileKind::NnCosine);
    }

    #[test]
    fn decay_rates() {
        let u0 = family(ProfileKind::DnSine, 0);
        assert!((decay_rate(&u0, 0.0).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!(decay_rate(&u0, PI * PI / 4.0).is_err());
        let w1 = family(ProfileKind::NnCosine, 1);
        let g = decay_rate(&w1, 0.5 * PI * PI / 4.0).unwrap();
        assert!((g - 2.938_6).abs() < 1e-4);
    }

    #[test]
    fn orthonormal_families() {
        for kind in [ProfileKind::DnSine, ProfileKind::NdCosine, ProfileKind::NnCosine] {
            for i in 0..8 {
                for j in 0..8 {
                    let (a, b) = (family(kind, i), family(kind, j));
                    let g = integrate(|y| a.value(y) * b.value(y), 0.0, 1.0, 1e-13).unwrap();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((g - want).abs() < 1e-10, "{kind:?} {i} {j}: {g}");
                }
            }
        }
    }

    #[test]
    fn closed_form_overlaps_match_quadrature() {
        for kind in [ProfileKind::DnSine, ProfileKind::NdCosine] {
            for k in 0..10 {
                for m in 0..10 {
                    let t = family(kind, k);
                    let c = TransverseMode::new(Region::II, ProfileKind::NnCosine, m, 1.0);
                    let q = integrate(|y| t.value(y) * c.value(y), 0.0, 1.0, 1e-14).unwrap();
                    assert!((overlap(&t, &c).unwrap() - q).abs() < 1e-12, "{kind:?} {k} {m}");
                }
            }
        }
        let c00 = overlap_unit(0, 0);
        assert!((c00 - 2.0 * SQRT_2 / PI).abs() < 1e-15);
    }

    #[test]
    fn overlap_rejects_mismatched_width() {
        let t = TransverseMode::new(Region::I, ProfileKind::DnSine, 0, 1.0);
        let c = TransverseMode::new(Region::II, ProfileKind::NnCosine, 0, 2.0);
        assert!(overlap(&t, &c).is_err());
    }

    #[test]
    fn parseval_partial_sums() {
        let s1: f64 = (0..=1).map(|m| overlap_unit(0, m).powi(2)).sum();
        assert!((s1 - 0.9907).abs() < 1e-4);
        for k in 0..=4 {
            let mut acc = 0.0;
            for m in 0..=200 {
                let next = acc + overlap_unit(k, m).powi(2);
                assert!(next >= acc);
                acc = next;
            }
            assert!(acc >= 0.999 && acc <= 1.0 + 1e-12, "k={k}: {acc}");
        }
    }

    #[test]
    fn reflection_relation() {
        for k in 0..6 {
            let u = family(ProfileKind::DnSine, k);
            let v = family(ProfileKind::NdCosine, k);
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            for i in 0..=100 {
                let y = i as f64 / 100.0;
                assert!((u.value(1.0 - y) - s * v.value(y)).abs() < 1e-12);
            }
        }
    }

    proptest! {
        #[test]
        fn decay_identity(k in 0usize..50, frac in 0.0f64..0.999) {
            for kind in [ProfileKind::DnSine, ProfileKind::NnCosine] {
                let mode = family(kind, k);
                if kind == ProfileKind::NnCosine && k == 0 { continue; }
                let e = frac * PI * PI / 4.0;
                let kappa = decay_rate(&mode, e).unwrap();
                let lhs = kappa * kappa + e;
                prop_assert!((lhs - mode.eigenvalue()).abs() <= 1e-14 * mode.eigenvalue().max(1.0));
            }
        }

        #[test]
        fn lambda_is_ratio(d in 0.01f64..100.0, delta in 0.01f64..100.0) {
            let g = Geometry::new(d, delta).unwrap();
            prop_assert_eq!(g.lambda(), delta / d);
            prop_assert!((g.mu() * 4.0 * d * d / (PI * PI) - 1.0).abs() < 1e-15);
        }
    }
}
