//! Distances on planar domains.
//!
//! Simply connected domains are pulled back to a model (the unit disc or the
//! upper half-plane): `c_D = l_D` is the model distance of the images, the
//! Kobayashi density is `|φ'|` times the model density, and the Bergman
//! objects transport by `K_D = |φ'|² K_model(φ)`, which gives
//! `β_D = √2 κ_D` and `b_D = √2 c_D`. The annulus has its own model.

use std::sync::Arc;

use crate::conformal::{riemann_map_with, uniformizer, Chain, ConformalMap, RiemannMap, RiemannOptions};
use crate::distances::{
    atanh_split, disc_m, one_minus_sq, upper_m, AnnulusModel, CertifiedValue, DistanceKind, Method,
};
use crate::domains::{JordanCurve, JordanDomain, PlanarDomain};
use crate::quadrature::gl8;
use crate::{Error, Result, C64};

use std::f64::consts::{PI, SQRT_2};

const I: C64 = C64 { re: 0.0, im: 1.0 };

#[derive(Default, Debug, Clone, Copy, PartialEq)]
pub struct ModelOptions {
    pub riemann: RiemannOptions,
    /// Normalization point of a numerical Riemann map.
    pub base: Option<C64>,
}

#[derive(Debug, Clone)]
enum Kind {
    /// Closed-form chain; `upper` rotates a half-plane target onto `Im > 0`.
    Chain { chain: Chain, upper: Option<C64> },
    Riemann(Arc<RiemannMap>),
    Annulus(Box<AnnulusModel>),
}

/// Image of a point in a model domain.
#[derive(Debug, Clone, Copy)]
enum ModelPoint {
    Disc(C64),
    Upper(C64),
}

/// A planar domain with its uniformization built once and shared.
#[derive(Debug, Clone)]
pub struct PlanarModel {
    domain: PlanarDomain,
    kind: Kind,
}

impl PlanarModel {
    pub fn new(domain: PlanarDomain) -> Result<Self> {
        Self::with_options(domain, ModelOptions::default())
    }

    pub fn with_options(domain: PlanarDomain, opts: ModelOptions) -> Result<Self> {
        domain.validate()?;
        let kind = match &domain {
            PlanarDomain::Annulus { r } => Kind::Annulus(Box::new(AnnulusModel::new(*r)?)),
            PlanarDomain::Jordan(j) => {
                let base = opts.base.unwrap_or_else(|| j.curve.interior_point());
                Kind::Riemann(Arc::new(riemann_map_with(j, base, opts.riemann)?))
            }
            PlanarDomain::TwoDiscHull(h) => {
                let j = JordanDomain::new(JordanCurve::Stadium(h.clone()))?;
                let base = opts.base.unwrap_or((h.z + h.w) * 0.5);
                Kind::Riemann(Arc::new(riemann_map_with(&j, base, opts.riemann)?))
            }
            _ => {
                let chain = uniformizer(&domain, None, opts.riemann)?;
                let upper = match chain.target() {
                    PlanarDomain::HalfPlane { normal } => Some(I * normal.conj()),
                    _ => None,
                };
                Kind::Chain { chain, upper }
            }
        };
        Ok(PlanarModel { domain, kind })
    }

    pub fn domain(&self) -> &PlanarDomain {
        &self.domain
    }

    /// Sup-norm accuracy of the uniformizer (0 for closed forms).
    pub fn accuracy(&self) -> f64 {
        match &self.kind {
            Kind::Chain { chain, .. } => chain.accuracy(),
            Kind::Riemann(m) => m.accuracy(),
            Kind::Annulus(_) => 0.0,
        }
    }

    /// The numerical Riemann map, when the domain uses one.
    pub fn riemann_map(&self) -> Option<&RiemannMap> {
        match &self.kind {
            Kind::Riemann(m) => Some(m),
            _ => None,
        }
    }

    pub fn annulus(&self) -> Option<&AnnulusModel> {
        match &self.kind {
            Kind::Annulus(a) => Some(a),
            _ => None,
        }
    }

    fn check(&self, z: C64) -> Result<()> {
        if self.domain.contains(z)? {
            Ok(())
        } else {
            Err(Error::DomainViolation(format!("{z} not in the domain")))
        }
    }

    /// Model image and the derivative of the uniformizer at `z`.
    fn model_point(&self, z: C64) -> Result<(ModelPoint, C64)> {
        self.check(z)?;
        match &self.kind {
            Kind::Chain { chain, upper } => {
                let (u, du) = (chain.eval(z)?, chain.derivative(z)?);
                Ok(match upper {
                    Some(rot) => (ModelPoint::Upper(rot * u), rot * du),
                    None => (ModelPoint::Disc(u), du),
                })
            }
            Kind::Riemann(m) => {
                let (u, du) = m.to_upper_half_plane(z);
                if !(u.im > 0.0) || !u.is_finite() {
                    return Err(Error::NonConvergence(format!("Riemann map left the half-plane at {z}")));
                }
                Ok((ModelPoint::Upper(u), du))
            }
            Kind::Annulus(_) => Err(Error::Unsupported("the annulus has no single-valued uniformizer".into())),
        }
    }

    /// `m` and `1 - m²` for the pulled-back pair.
    fn pair_m(&self, z: C64, w: C64) -> Result<(f64, f64)> {
        match (self.model_point(z)?.0, self.model_point(w)?.0) {
            (ModelPoint::Disc(a), ModelPoint::Disc(b)) => Ok(disc_m(a, b)),
            (ModelPoint::Upper(a), ModelPoint::Upper(b)) => Ok(upper_m(a, b)),
            _ => unreachable!("one model per domain"),
        }
    }

    fn pullback_method(&self) -> Method {
        match self.kind {
            Kind::Chain { .. } => Method::ClosedForm,
            _ => Method::ConformalPullback,
        }
    }

    /// Error estimate: the map's sup-norm error times the disc density at
    /// both images.
    fn pullback_err(&self, z: C64, w: C64) -> Result<f64> {
        match &self.kind {
            Kind::Riemann(m) => {
                let acc = m.accuracy();
                let dz = one_minus_sq(m.eval(z)?);
                let dw = one_minus_sq(m.eval(w)?);
                Ok(acc * (1.0 / dz + 1.0 / dw))
            }
            _ => Ok(0.0),
        }
    }

    /// Hyperbolic distance of a simply connected domain.
    fn pullback(&self, z: C64, w: C64) -> Result<CertifiedValue> {
        let (m, q) = self.pair_m(z, w)?;
        Ok(CertifiedValue::exact(atanh_split(m, q), self.pullback_method(), self.pullback_err(z, w)?))
    }

    pub fn caratheodory(&self, z: C64, w: C64) -> Result<CertifiedValue> {
        match &self.kind {
            Kind::Annulus(a) => a.caratheodory(z, w),
            _ => self.pullback(z, w),
        }
    }

    pub fn lempert(&self, z: C64, w: C64) -> Result<CertifiedValue> {
        match &self.kind {
            Kind::Annulus(a) => a.lempert(z, w),
            _ => self.pullback(z, w),
        }
    }

    /// `κ_D(z; X)`.
    pub fn kobayashi(&self, z: C64, x: C64) -> Result<f64> {
        if let Kind::Annulus(a) = &self.kind {
            return a.kobayashi(z, x);
        }
        let (p, du) = self.model_point(z)?;
        let density = match p {
            ModelPoint::Disc(u) => 1.0 / one_minus_sq(u),
            ModelPoint::Upper(u) => 0.5 / u.im,
        };
        Ok(density * du.norm() * x.norm())
    }

    /// Conformal radius `1/κ_D(z; 1)`: `|ψ'(0)|` for a Riemann map
    /// `ψ: Δ → D` with `ψ(0) = z`.
    pub fn conformal_radius(&self, z: C64) -> Result<f64> {
        if matches!(self.kind, Kind::Annulus(_)) {
            return Err(Error::Unsupported("the annulus is not simply connected".into()));
        }
        Ok(1.0 / self.kobayashi(z, C64::new(1.0, 0.0))?)
    }

    /// `K_D(z)` on the diagonal.
    pub fn bergman_kernel(&self, z: C64) -> Result<f64> {
        if let Kind::Annulus(a) = &self.kind {
            a.check(z)?;
            return Ok(a.bergman.kernel(z));
        }
        let (p, du) = self.model_point(z)?;
        let k = match p {
            ModelPoint::Disc(u) => 1.0 / (PI * one_minus_sq(u).powi(2)),
            ModelPoint::Upper(u) => 1.0 / (4.0 * PI * u.im * u.im),
        };
        Ok(du.norm_sqr() * k)
    }

    /// `β_D(z; X) = |X| sqrt(∂∂̄ log K_D(z))`.
    pub fn bergman_metric(&self, z: C64, x: C64) -> Result<f64> {
        if let Kind::Annulus(a) = &self.kind {
            a.check(z)?;
            return Ok(a.bergman.metric(z, x));
        }
        Ok(SQRT_2 * self.kobayashi(z, x)?)
    }

    /// `b_D(z, w)`: `√2 c_D` on simply connected domains, a shortest path of
    /// `β` on the annulus.
    pub fn bergman_distance(&self, z: C64, w: C64) -> Result<CertifiedValue> {
        if let Kind::Annulus(a) = &self.kind {
            return a.bergman_distance(z, w);
        }
        let v = self.pullback(z, w)?;
        Ok(CertifiedValue::exact(SQRT_2 * v.lo, v.method, SQRT_2 * v.err))
    }

    pub fn distance(&self, kind: DistanceKind, z: C64, w: C64) -> Result<CertifiedValue> {
        match kind {
            DistanceKind::Carath => self.caratheodory(z, w),
            DistanceKind::Lempert => self.lempert(z, w),
            DistanceKind::Bergman => self.bergman_distance(z, w),
        }
    }

    /// `g_D(z, w) = -(1/2π) log tanh c_D(z, w)` on simply connected domains,
    /// where the chain `tanh c ≤ exp(-2πg) ≤ tanh l` collapses.
    pub fn green(&self, z: C64, w: C64) -> Result<f64> {
        if matches!(self.kind, Kind::Annulus(_)) {
            return Err(Error::Unsupported("Green function implemented for simply connected domains".into()));
        }
        if z == w {
            return Err(Error::DegenerateInput("the Green function has its pole at z = w".into()));
        }
        let (m, _) = self.pair_m(z, w)?;
        Ok(-m.ln() / (2.0 * PI))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricKind {
    Kobayashi,
    Bergman,
}

/// A metric `(z, X) ↦ F(z; X)` on a planar domain.
#[derive(Debug, Clone)]
pub struct MetricField {
    pub kind: MetricKind,
    model: Arc<PlanarModel>,
}

impl MetricField {
    pub fn new(kind: MetricKind, model: Arc<PlanarModel>) -> Self {
        MetricField { kind, model }
    }

    pub fn model(&self) -> &PlanarModel {
        &self.model
    }

    pub fn eval(&self, z: C64, x: C64) -> Result<f64> {
        match self.kind {
            MetricKind::Kobayashi => self.model.kobayashi(z, x),
            MetricKind::Bergman => self.model.bergman_metric(z, x),
        }
    }

    /// Length of a polyline, 8-point Gauss–Legendre per segment.
    pub fn length(&self, path: &[C64]) -> Result<f64> {
        let mut total = 0.0;
        for seg in path.windows(2) {
            let (a, b) = (seg[0], seg[1]);
            let d = b - a;
            let mut err = None;
            total += gl8().integrate(0.0, 1.0, |s| match self.eval(a + d * s, d) {
                Ok(v) => v,
                Err(e) => {
                    err.get_or_insert(e);
                    f64::NAN
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
        Ok(total)
    }
}
