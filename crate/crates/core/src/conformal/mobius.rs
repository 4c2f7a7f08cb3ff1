use crate::conformal::{ConformalMap, Normalization, UNIT_DISC};
use crate::domains::PlanarDomain;
use crate::{Error, Result, C64};

/// Disc automorphism `z ↦ (z - a) / (1 - conj(a) z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mobius {
    pub a: C64,
}

pub fn mobius_disc_automorphism(a: C64) -> Result<Mobius> {
    if !(a.norm() < 1.0) {
        return Err(Error::DegenerateInput(format!("|a| = {} is not < 1", a.norm())));
    }
    Ok(Mobius { a })
}

impl ConformalMap for Mobius {
    fn eval(&self, z: C64) -> Result<C64> {
        Ok((z - self.a) / (1.0 - self.a.conj() * z))
    }

    fn derivative(&self, z: C64) -> Result<C64> {
        let q = 1.0 - self.a.conj() * z;
        Ok((1.0 - self.a.norm_sqr()) / (q * q))
    }

    fn inverse(&self, w: C64) -> Result<C64> {
        Ok((w + self.a) / (1.0 + self.a.conj() * w))
    }

    fn source(&self) -> &PlanarDomain {
        &UNIT_DISC
    }

    fn target(&self) -> &PlanarDomain {
        &UNIT_DISC
    }

    fn normalization(&self) -> Option<Normalization> {
        Some(Normalization {
            base: self.a,
            image: C64::new(0.0, 0.0),
            derivative: C64::new(1.0 / (1.0 - self.a.norm_sqr()), 0.0),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let id = mobius_disc_automorphism(C64::new(0.0, 0.0)).unwrap();
        let z = C64::new(0.3, -0.2);
        assert_eq!(id.eval(z).unwrap(), z);
        let m = mobius_disc_automorphism(C64::new(0.5, 0.0)).unwrap();
        assert_eq!(m.eval(C64::new(0.5, 0.0)).unwrap(), C64::new(0.0, 0.0));
        assert!((m.eval(C64::new(0.0, 0.0)).unwrap() - C64::new(-0.5, 0.0)).norm() < 1e-16);
        assert!(m.inverse(C64::new(-0.5, 0.0)).unwrap().norm() < 1e-16);
        assert!(mobius_disc_automorphism(C64::new(1.0, 0.0)).is_err());
    }
}
