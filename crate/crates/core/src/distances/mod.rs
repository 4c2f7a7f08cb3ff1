//! The invariant distances and metrics: Carathéodory `c_D`, Lempert `l_D`
//! (the Kobayashi distance on planar domains), the Kobayashi metric, the
//! Bergman kernel, metric and distance, and the Green function.
//!
//! Every distance is reported in the `tanh⁻¹` scale. Near the boundary
//! `tanh⁻¹ m` is evaluated as `log(1 + m) - ½ log(1 - m²)` with `1 - m²` taken
//! from an exact product formula, so values keep relative precision when both
//! points sit within `1e-12` of the boundary.

mod annulus;
mod cn;
mod path;
mod planar;

pub use annulus::{AnnulusBergman, AnnulusCaratheodory, AnnulusModel};
pub use cn::{
    ball_distance, cn_kobayashi_metric, cn_model_distance, convex_interval, hull_lempert, polydisc_distance,
};
pub use path::{shortest_path, PathOptions, PathResult};
pub use planar::{MetricField, MetricKind, ModelOptions, PlanarModel};

use serde::{Deserialize, Serialize};

use crate::domains::{Domain, PlanarDomain};
use crate::{Error, Result, C64};

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    ConformalPullback,
    Covering,
    Series,
    HullUpper,
    ProjectionLower,
    Interval,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    /// The distance itself.
    Atanh,
    /// `m = tanh(distance)`.
    Mobius,
}

/// A distance as an exact value (`lo == hi`) or an enclosure `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifiedValue {
    pub lo: f64,
    pub hi: f64,
    pub method: Method,
    /// Error estimate: numerical for exact modes, `hi - lo` for intervals.
    pub err: f64,
    pub scale: Scale,
}

impl CertifiedValue {
    pub fn exact(value: f64, method: Method, err: f64) -> Self {
        CertifiedValue { lo: value, hi: value, method, err, scale: Scale::Atanh }
    }

    pub fn interval(lo: f64, hi: f64, method: Method) -> Result<Self> {
        if !(lo <= hi) || lo < 0.0 {
            return Err(Error::NonConvergence(format!("empty or negative enclosure [{lo}, {hi}]")));
        }
        Ok(CertifiedValue { lo, hi, method, err: hi - lo, scale: Scale::Atanh })
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// The same enclosure in the `m = tanh` scale.
    pub fn to_mobius(&self) -> Self {
        if self.scale == Scale::Mobius {
            return *self;
        }
        let (lo, hi) = (self.lo.tanh(), self.hi.tanh());
        let slope = 1.0 - self.mid().tanh().powi(2);
        CertifiedValue { lo, hi, method: self.method, err: self.err * slope, scale: Scale::Mobius }
    }
}

/// The three distances a caller can ask for by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceKind {
    Carath,
    Lempert,
    Bergman,
}

impl DistanceKind {
    pub fn tag(&self) -> &'static str {
        match self {
            DistanceKind::Carath => "carath",
            DistanceKind::Lempert => "lempert",
            DistanceKind::Bergman => "bergman",
        }
    }
}

impl std::str::FromStr for DistanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "carath" => Ok(DistanceKind::Carath),
            "lempert" => Ok(DistanceKind::Lempert),
            "bergman" => Ok(DistanceKind::Bergman),
            _ => Err(Error::Parse(format!("unknown distance kind `{s}` (carath, lempert, bergman)"))),
        }
    }
}

/// `m = tanh(d)`, the scale several boundary estimates are stated in.
pub fn m_scale(d: f64) -> f64 {
    d.tanh()
}

/// `tanh⁻¹ m` from `m` and an independently accurate `1 - m²`.
///
/// The product forms of `1 - m²` lose relative precision like `ε/d` when a
/// point sits near the boundary, which swamps small distances between close
/// points there; below `m = ½` the direct `tanh⁻¹ m` is the better of the two.
pub(crate) fn atanh_split(m: f64, one_minus_m2: f64) -> f64 {
    if m < 0.5 {
        return m.atanh();
    }
    m.ln_1p() - 0.5 * one_minus_m2.ln()
}

/// `1 - |z|²` as `(1 - |z|)(1 + |z|)`.
pub(crate) fn one_minus_sq(z: C64) -> f64 {
    let a = z.norm();
    (1.0 - a) * (1.0 + a)
}

/// Pseudo-hyperbolic distance `m` and `1 - m²` on the unit disc.
pub(crate) fn disc_m(z: C64, w: C64) -> (f64, f64) {
    let den = (1.0 - z.conj() * w).norm();
    let m = (z - w).norm() / den;
    (m, one_minus_sq(z) * one_minus_sq(w) / (den * den))
}

/// The same pair on the upper half-plane.
pub(crate) fn upper_m(a: C64, b: C64) -> (f64, f64) {
    let den = (a - b.conj()).norm();
    ((a - b).norm() / den, 4.0 * a.im * b.im / (den * den))
}

/// Poincaré distance `tanh⁻¹ |(z - w)/(1 - conj(z) w)|` on the unit disc.
pub fn poincare_distance(z: C64, w: C64) -> Result<f64> {
    for p in [z, w] {
        if !(p.norm() < 1.0) {
            return Err(Error::DomainViolation(format!("{p} not in the unit disc")));
        }
    }
    let (m, q) = disc_m(z, w);
    Ok(atanh_split(m, q))
}

/// Hyperbolic distance on the upper half-plane in the same normalization.
pub fn half_plane_distance(a: C64, b: C64) -> Result<f64> {
    for p in [a, b] {
        if !(p.im > 0.0) {
            return Err(Error::DomainViolation(format!("{p} not in the upper half-plane")));
        }
    }
    let (m, q) = upper_m(a, b);
    Ok(atanh_split(m, q))
}

fn planar_point(z: &[C64]) -> Result<C64> {
    match z {
        [z] => Ok(*z),
        _ => Err(Error::DomainViolation(format!("planar domain expects one coordinate, got {}", z.len()))),
    }
}

fn planar_model(d: &PlanarDomain) -> Result<PlanarModel> {
    PlanarModel::new(d.clone())
}

/// `c_D(z, w)`.
pub fn caratheodory(d: &Domain, z: &[C64], w: &[C64]) -> Result<CertifiedValue> {
    match d {
        Domain::Planar(p) => planar_model(p)?.caratheodory(planar_point(z)?, planar_point(w)?),
        Domain::Cn(c) => cn::cn_distance(c, z, w, Method::Interval),
    }
}

/// `l_D(z, w)`; on planar domains this is also `k_D`.
pub fn lempert(d: &Domain, z: &[C64], w: &[C64]) -> Result<CertifiedValue> {
    match d {
        Domain::Planar(p) => planar_model(p)?.lempert(planar_point(z)?, planar_point(w)?),
        Domain::Cn(c) => cn::cn_distance(c, z, w, Method::HullUpper),
    }
}

/// `κ_D(z; X)`.
pub fn kobayashi_metric(d: &Domain, z: &[C64], x: &[C64]) -> Result<f64> {
    match d {
        Domain::Planar(p) => planar_model(p)?.kobayashi(planar_point(z)?, planar_point(x)?),
        Domain::Cn(c) => cn_kobayashi_metric(c, z, x),
    }
}

fn planar_only(d: &Domain) -> Result<&PlanarDomain> {
    match d {
        Domain::Planar(p) => Ok(p),
        Domain::Cn(_) => Err(Error::Unsupported("Bergman objects are implemented for planar domains".into())),
    }
}

/// `K_D(z)` on the diagonal.
pub fn bergman_kernel(d: &Domain, z: &[C64]) -> Result<f64> {
    planar_model(planar_only(d)?)?.bergman_kernel(planar_point(z)?)
}

/// `β_D(z; X)`.
pub fn bergman_metric(d: &Domain, z: &[C64], x: &[C64]) -> Result<f64> {
    planar_model(planar_only(d)?)?.bergman_metric(planar_point(z)?, planar_point(x)?)
}

/// `b_D(z, w)`.
pub fn bergman_distance(d: &Domain, z: &[C64], w: &[C64]) -> Result<CertifiedValue> {
    planar_model(planar_only(d)?)?.bergman_distance(planar_point(z)?, planar_point(w)?)
}

/// The distance of the given kind.
pub fn distance(d: &Domain, kind: DistanceKind, z: &[C64], w: &[C64]) -> Result<CertifiedValue> {
    match kind {
        DistanceKind::Carath => caratheodory(d, z, w),
        DistanceKind::Lempert => lempert(d, z, w),
        DistanceKind::Bergman => bergman_distance(d, z, w),
    }
}

/// Green function with pole at `z`, normalized so that
/// `tanh c_D ≤ exp(-2π g_D) ≤ tanh l_D`; it is positive inside the domain.
pub fn green_function(d: &PlanarDomain, z: C64, w: C64) -> Result<f64> {
    planar_model(d)?.green(z, w)
}

/// Carathéodory distance on `A_r` (series mode when its self-test passes).
pub fn annulus_caratheodory(r: f64, z: C64, w: C64) -> Result<CertifiedValue> {
    AnnulusModel::new(r)?.caratheodory(z, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::{mobius_disc_automorphism, ConformalMap};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_disc_point(rng: &mut ChaCha8Rng) -> C64 {
        C64::from_polar(rng.gen::<f64>().sqrt() * 0.999, rng.gen::<f64>() * std::f64::consts::TAU)
    }

    #[test]
    fn poincare_examples() {
        assert!((poincare_distance(c(0.0, 0.0), c(0.5, 0.0)).unwrap() - 0.5f64.atanh()).abs() < 1e-15);
        assert_eq!(poincare_distance(c(0.3, 0.3), c(0.3, 0.3)).unwrap(), 0.0);
        assert!(poincare_distance(c(1.0, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn poincare_mobius_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let m = mobius_disc_automorphism(random_disc_point(&mut rng)).unwrap();
            let (z, w) = (random_disc_point(&mut rng), random_disc_point(&mut rng));
            let d0 = poincare_distance(z, w).unwrap();
            let d1 = poincare_distance(m.eval(z).unwrap(), m.eval(w).unwrap()).unwrap();
            assert!((d0 - d1).abs() < 1e-12 * (1.0 + d0), "{d0} {d1}");
        }
    }

    #[test]
    fn split_formula_keeps_precision_at_the_boundary() {
        // 1 - |w| = 2^-43, exactly representable
        let e = 2f64.powi(-43);
        let d = poincare_distance(c(0.0, 0.0), c(1.0 - e, 0.0)).unwrap();
        let exact = 0.5 * ((2.0 - e) / e).ln();
        assert!((d - exact).abs() < 1e-14 * exact, "{d} {exact}");
        // two points near the circle, 0.1 apart in angle
        let (z, w) = (c(1.0 - e, 0.0), c(0.0, 1.0 - e) * C64::from_polar(1.0, 0.1 - std::f64::consts::FRAC_PI_2));
        assert!(poincare_distance(z, w).unwrap().is_finite());
    }

    #[test]
    fn close_pair_near_the_boundary() {
        // both points about 5.6e-8 from the circle and 1e-11 apart;
        // reference value from 40-digit arithmetic
        let z = c(0.9973350626327011, -0.07295656453666281);
        let w = c(0.9973350626354321, -0.07295656452749016);
        let exact = 8.504736734356668e-5;
        let d = poincare_distance(z, w).unwrap();
        assert!((d - exact).abs() < 1e-9 * exact, "{d} {exact}");
    }

    #[test]
    fn half_plane_matches_cayley() {
        let (a, b) = (c(0.3, 2.0), c(-1.0, 0.01));
        let to_disc = |z: C64| (z - c(0.0, 1.0)) / (z + c(0.0, 1.0));
        let d0 = half_plane_distance(a, b).unwrap();
        let d1 = poincare_distance(to_disc(a), to_disc(b)).unwrap();
        assert!((d0 - d1).abs() < 1e-12);
    }

    #[test]
    fn certified_value_modes() {
        let v = CertifiedValue::exact(0.5, Method::ClosedForm, 0.0);
        assert_eq!(v.width(), 0.0);
        let m = v.to_mobius();
        assert!((m.lo - 0.5f64.tanh()).abs() < 1e-16 && m.scale == Scale::Mobius);
        assert!(CertifiedValue::interval(1.0, 0.5, Method::Interval).is_err());
        let json = serde_json::to_string(&v).unwrap();
        assert!(json.contains("\"method\":\"closed_form\"") && json.contains("\"scale\":\"atanh\""), "{json}");
    }
}
