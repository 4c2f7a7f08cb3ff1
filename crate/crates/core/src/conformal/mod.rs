//! Conformal maps: closed forms (Möbius, Cayley, sector power, slit square
//! root, disc scaling, lens), a numerical Riemann-mapping engine for Jordan
//! domains, and the universal cover of an annulus by a strip.

mod closed;
mod compose;
mod cover;
mod mobius;
mod zipper;

pub use closed::{closed_map, ClosedKind, ClosedMap};
pub use compose::{uniformizer, Chain};
pub use cover::{annulus_cover, AnnulusCover, DECK_CAP};
pub use mobius::{mobius_disc_automorphism, Mobius};
pub use zipper::{riemann_map, riemann_map_with, RiemannMap, RiemannOptions};

use crate::domains::PlanarDomain;
use crate::{Result, C64};

/// `φ(base) = image` and `φ'(base) = derivative`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalization {
    pub base: C64,
    pub image: C64,
    pub derivative: C64,
}

/// A biholomorphic map between two planar domains.
pub trait ConformalMap: Send + Sync + std::fmt::Debug {
    fn eval(&self, z: C64) -> Result<C64>;
    fn derivative(&self, z: C64) -> Result<C64>;
    fn inverse(&self, w: C64) -> Result<C64>;
    fn source(&self) -> &PlanarDomain;
    fn target(&self) -> &PlanarDomain;

    /// Estimated sup-norm error; zero for closed forms.
    fn accuracy(&self) -> f64 {
        0.0
    }

    fn normalization(&self) -> Option<Normalization> {
        None
    }
}

pub(crate) static UNIT_DISC: PlanarDomain = PlanarDomain::UnitDisc;

/// Upper half-plane `{Im z > 0}`.
pub(crate) const UPPER: PlanarDomain = PlanarDomain::HalfPlane { normal: C64 { re: 0.0, im: 1.0 } };

/// Right half-plane `{Re z > 0}`.
pub(crate) const RIGHT: PlanarDomain = PlanarDomain::HalfPlane { normal: C64 { re: 1.0, im: 0.0 } };

/// Self-test shared by every map: round trip and derivative against a
/// central difference on the given interior points. Returns the worst
/// round-trip error and the worst derivative mismatch.
pub fn self_test(map: &dyn ConformalMap, points: &[C64]) -> Result<(f64, f64)> {
    let mut round = 0.0f64;
    let mut deriv = 0.0f64;
    for &z in points {
        let w = map.eval(z)?;
        round = round.max((map.inverse(w)? - z).norm());
        let h = 1e-5 * (1.0 + z.norm());
        let fd = (map.eval(z + h)? - map.eval(z - h)?) / (2.0 * h);
        let d = map.derivative(z)?;
        deriv = deriv.max((fd - d).norm() / (1.0 + d.norm()));
    }
    Ok((round, deriv))
}
