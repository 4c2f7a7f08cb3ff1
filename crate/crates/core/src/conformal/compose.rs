use std::sync::Arc;

use crate::conformal::{
    closed_map, riemann_map_with, ClosedKind, ConformalMap, Normalization, RiemannOptions,
};
use crate::domains::{JordanCurve, JordanDomain, PlanarDomain};
use crate::{Error, Result, C64};

/// Composition `maps[k-1] ∘ … ∘ maps[0]`; an empty chain is the identity on
/// `source`.
#[derive(Debug, Clone)]
pub struct Chain {
    maps: Vec<Arc<dyn ConformalMap>>,
    source: PlanarDomain,
}

impl Chain {
    pub fn identity(domain: PlanarDomain) -> Self {
        Chain { maps: Vec::new(), source: domain }
    }

    pub fn new(maps: Vec<Arc<dyn ConformalMap>>) -> Result<Self> {
        let first = maps.first().ok_or_else(|| Error::DegenerateInput("empty chain".into()))?;
        Ok(Chain { source: first.source().clone(), maps })
    }

    pub fn then(mut self, map: Arc<dyn ConformalMap>) -> Self {
        self.maps.push(map);
        self
    }

    pub fn maps(&self) -> &[Arc<dyn ConformalMap>] {
        &self.maps
    }
}

impl ConformalMap for Chain {
    fn eval(&self, z: C64) -> Result<C64> {
        self.maps.iter().try_fold(z, |z, m| m.eval(z))
    }

    fn derivative(&self, z: C64) -> Result<C64> {
        let mut d = C64::new(1.0, 0.0);
        let mut z = z;
        for m in &self.maps {
            d *= m.derivative(z)?;
            z = m.eval(z)?;
        }
        Ok(d)
    }

    fn inverse(&self, w: C64) -> Result<C64> {
        self.maps.iter().rev().try_fold(w, |w, m| m.inverse(w))
    }

    fn source(&self) -> &PlanarDomain {
        &self.source
    }

    fn target(&self) -> &PlanarDomain {
        self.maps.last().map_or(&self.source, |m| m.target())
    }

    fn accuracy(&self) -> f64 {
        self.maps.iter().map(|m| m.accuracy()).fold(0.0, f64::max)
    }

    fn normalization(&self) -> Option<Normalization> {
        let n = self.maps.last()?.normalization()?;
        if self.maps.len() == 1 {
            Some(n)
        } else {
            None
        }
    }
}

/// A map from a simply connected catalog domain onto a model: the unit disc
/// or a half-plane. Jordan domains and two-disc hulls use the numerical
/// Riemann map normalized at `base` (default: the curve's interior point).
pub fn uniformizer(domain: &PlanarDomain, base: Option<C64>, opts: RiemannOptions) -> Result<Chain> {
    let closed = |k: ClosedKind| -> Result<Arc<dyn ConformalMap>> { Ok(Arc::new(closed_map(k)?)) };
    Ok(match domain {
        PlanarDomain::UnitDisc | PlanarDomain::HalfPlane { .. } => Chain::identity(domain.clone()),
        PlanarDomain::Disc { center, radius } => {
            Chain::new(vec![closed(ClosedKind::DiscScale { center: *center, radius: *radius })?])?
        }
        PlanarDomain::Sector { half_angle } => Chain::new(vec![closed(ClosedKind::Sector { theta: *half_angle })?])?,
        PlanarDomain::SlitPlane => Chain::new(vec![closed(ClosedKind::SlitSqrt)?])?,
        PlanarDomain::Lens { rho } => Chain::new(vec![closed(ClosedKind::Lens { rho: *rho })?])?,
        PlanarDomain::TwoDiscHull(h) => {
            let j = JordanDomain::new(JordanCurve::Stadium(h.clone()))?;
            let base = base.unwrap_or((h.z + h.w) * 0.5);
            Chain::new(vec![Arc::new(riemann_map_with(&j, base, opts)?)])?
        }
        PlanarDomain::Jordan(j) => {
            let base = base.unwrap_or_else(|| j.curve.interior_point());
            Chain::new(vec![Arc::new(riemann_map_with(j, base, opts)?)])?
        }
        PlanarDomain::Annulus { .. } => {
            return Err(Error::Unsupported("the annulus is not simply connected; use its cover".into()))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn targets_are_models() {
        let doms = [
            PlanarDomain::UnitDisc,
            PlanarDomain::disc(C64::new(1.0, 0.0), 3.0).unwrap(),
            PlanarDomain::sector(0.3).unwrap(),
            PlanarDomain::SlitPlane,
            PlanarDomain::lens(0.6).unwrap(),
        ];
        for d in doms {
            let u = uniformizer(&d, None, RiemannOptions::default()).unwrap();
            assert!(matches!(u.target(), PlanarDomain::UnitDisc | PlanarDomain::HalfPlane { .. }));
        }
        assert!(uniformizer(&PlanarDomain::annulus(2.0).unwrap(), None, RiemannOptions::default()).is_err());
    }

    #[test]
    fn chain_derivative_is_product() {
        let a: Arc<dyn ConformalMap> = Arc::new(closed_map(ClosedKind::Sector { theta: 0.5 }).unwrap());
        let b: Arc<dyn ConformalMap> = Arc::new(closed_map(ClosedKind::Cayley).unwrap());
        let ch = Chain::new(vec![a.clone(), b.clone()]).unwrap();
        let z = C64::new(0.8, 0.1);
        let d = ch.derivative(z).unwrap();
        let expect = a.derivative(z).unwrap() * b.derivative(a.eval(z).unwrap()).unwrap();
        assert!((d - expect).norm() < 1e-14);
        assert!((ch.inverse(ch.eval(z).unwrap()).unwrap() - z).norm() < 1e-13);
        assert_eq!(*ch.target(), crate::conformal::UNIT_DISC);
    }
}
