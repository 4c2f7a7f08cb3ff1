//! Riemann maps of Jordan domains by the geodesic zipper algorithm.
//!
//! With boundary nodes `z_0, …, z_{N-1}`:
//!
//! 1. `ζ = i sqrt((z - z_1)/(z - z_0))` opens the chord `[z_0, z_1]` onto the
//!    upper half-plane `H`; the rest of the boundary becomes a curve in `H`
//!    from 0 to ∞.
//! 2. For each later node with current image `c = x + iy`, the Möbius map
//!    `T = ζ/(1 - aζ)`, `a = x/|c|²`, sends the hyperbolic geodesic from 0 to
//!    `c` onto the segment `[0, is]`, `s = |c|²/y`, and `T sqrt(1 + s²/T²)`
//!    folds that segment down onto the real line.
//! 3. The last arc runs from 0 to the image `e` of `z_0`; `ζ/(1 - ζ/e)`
//!    straightens it onto a ray and `±S²` opens the resulting quadrant.
//! 4. A Möbius map sends `H` to the disc with the base point to 0 and a
//!    positive derivative there.
//!
//! Every step is explicit, so the derivative is the exact chain-rule product
//! and the inverse runs the steps backwards.

use rayon::prelude::*;

use crate::conformal::{ConformalMap, Normalization, UNIT_DISC};
use crate::domains::{JordanCurve, JordanDomain, PlanarDomain};
use crate::{Error, Result, C64};

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Length of the opening chord, as a fraction of the node spacing.
const CHORD: f64 = 1e-3;

/// Cap on the boundary midpoints visited by the self-test.
const SELF_TEST_MIDPOINTS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannOptions {
    /// Initial number of boundary nodes.
    pub n: usize,
    /// Refinement cap; the node count doubles until the self-test meets `target`.
    pub max_n: usize,
    pub target: f64,
}

impl Default for RiemannOptions {
    fn default() -> Self {
        Self { n: 512, max_n: 8192, target: 1e-6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Zip {
    a: f64,
    s: f64,
}

impl Zip {
    fn through(c: C64) -> Self {
        let m = c.norm_sqr();
        Zip { a: c.re / m, s: m / c.im }
    }

    /// Forward fold and its derivative factor.
    fn forward(&self, z: C64) -> (C64, C64) {
        let q = 1.0 - self.a * z;
        let t = z / q;
        let dt = 1.0 / (q * q);
        if t == C64::new(0.0, 0.0) {
            return (C64::new(self.s, 0.0), C64::new(0.0, 0.0));
        }
        let g = t * (1.0 + self.s * self.s / (t * t)).sqrt();
        (g, t * dt / g)
    }

    /// Image of a real point, or of ∞ when `x` is `None`.
    fn forward_real(&self, x: Option<f64>) -> Option<f64> {
        let t = match x {
            None if self.a == 0.0 => return None,
            None => -1.0 / self.a,
            Some(x) => {
                let q = 1.0 - self.a * x;
                if q == 0.0 {
                    return None;
                }
                x / q
            }
        };
        if t == 0.0 {
            return Some(self.s);
        }
        Some(t * (1.0 + self.s * self.s / (t * t)).sqrt())
    }

    fn inverse(&self, w: C64) -> C64 {
        let mut t = if w == C64::new(0.0, 0.0) {
            I * self.s
        } else {
            w * (1.0 - self.s * self.s / (w * w)).sqrt()
        };
        if t.im < 0.0 {
            t = -t;
        }
        t / (1.0 + self.a * t)
    }
}

/// Numerical Riemann map `φ: D → Δ` with `φ(base) = 0`, `φ'(base) > 0`.
#[derive(Debug, Clone)]
pub struct RiemannMap {
    source: PlanarDomain,
    curve: JordanCurve,
    za: C64,
    zb: C64,
    zips: Vec<Zip>,
    end: Option<f64>,
    sign: f64,
    omega: C64,
    rot: C64,
    base: C64,
    n: usize,
    accuracy: f64,
    deriv_at_base: f64,
}

pub fn riemann_map(domain: &JordanDomain, z0: C64) -> Result<RiemannMap> {
    riemann_map_with(domain, z0, RiemannOptions::default())
}

/// Builds the map, doubling the node count until the self-test accuracy
/// meets `opts.target`.
pub fn riemann_map_with(domain: &JordanDomain, z0: C64, opts: RiemannOptions) -> Result<RiemannMap> {
    domain.validate()?;
    if !domain.contains(z0)? {
        return Err(Error::DomainViolation(format!("base point {z0} not in domain")));
    }
    let mut n = opts.n.max(8);
    let mut best: Option<RiemannMap> = None;
    loop {
        match RiemannMap::build(domain, z0, n) {
            Ok(map) => {
                if map.accuracy <= opts.target {
                    return Ok(map);
                }
                if best.as_ref().is_none_or(|b| map.accuracy < b.accuracy) {
                    best = Some(map);
                }
            }
            Err(Error::NonConvergence(_)) => {}
            Err(e) => return Err(e),
        }
        n *= 2;
        if n > opts.max_n {
            let acc = best.map_or(f64::NAN, |b| b.accuracy);
            return Err(Error::NonConvergence(format!(
                "Riemann map accuracy {acc:.3e} above target {:.1e} at {} nodes",
                opts.target, opts.max_n
            )));
        }
    }
}

impl RiemannMap {
    /// One zipper pass with `n` equally spaced parameter nodes.
    pub fn build(domain: &JordanDomain, base: C64, n: usize) -> Result<Self> {
        let curve = domain.curve.clone();
        // a short opening chord keeps the corner it leaves negligible
        let mut nodes = Vec::with_capacity(n + 1);
        nodes.push(curve.point(0.0));
        nodes.push(curve.point(CHORD / n as f64));
        nodes.extend((1..n).map(|k| curve.point(k as f64 / n as f64)));
        let (za, zb) = (nodes[0], nodes[1]);
        let open = |z: C64| I * ((z - zb) / (z - za)).sqrt();
        let mut imgs: Vec<C64> = nodes[2..].iter().map(|&z| open(z)).collect();
        let mut zips = Vec::with_capacity(n - 2);
        let mut end: Option<f64> = None;
        for k in 0..imgs.len() {
            let c = imgs[k];
            if !(c.im > 0.0) || !c.is_finite() {
                return Err(Error::NonConvergence(format!("node {} left the upper half-plane", k + 2)));
            }
            let zip = Zip::through(c);
            for img in &mut imgs[k + 1..] {
                *img = zip.forward(*img).0;
            }
            end = zip.forward_real(end);
            zips.push(zip);
        }
        let mut map = RiemannMap {
            source: PlanarDomain::Jordan(domain.clone()),
            curve,
            za,
            zb,
            zips,
            end,
            sign: 1.0,
            omega: I,
            rot: C64::new(1.0, 0.0),
            base,
            n,
            accuracy: f64::INFINITY,
            deriv_at_base: 0.0,
        };
        let (zeta, _) = map.to_zipped(base);
        let s = map.straighten(zeta).0;
        if !(s.im > 0.0) {
            return Err(Error::NonConvergence("base point not separated from the boundary".into()));
        }
        map.sign = if s.re >= 0.0 { 1.0 } else { -1.0 };
        let (omega, d) = map.to_half_plane(base);
        map.omega = omega;
        let q = d / (omega - omega.conj());
        map.rot = q.conj() / q.norm();
        map.deriv_at_base = q.norm();
        map.accuracy = map.self_test();
        if !map.accuracy.is_finite() {
            return Err(Error::NonConvergence("self-test produced a non-finite value".into()));
        }
        Ok(map)
    }

    /// Steps 1 and 2 with the accumulated derivative.
    fn to_zipped(&self, z: C64) -> (C64, C64) {
        let u = (z - self.zb) / (z - self.za);
        let du = (self.zb - self.za) / ((z - self.za) * (z - self.za));
        let mut zeta = I * u.sqrt();
        let mut d = -du / (2.0 * zeta);
        for zip in &self.zips {
            let (g, dg) = zip.forward(zeta);
            zeta = g;
            d *= dg;
        }
        (zeta, d)
    }

    fn straighten(&self, zeta: C64) -> (C64, C64) {
        match self.end {
            None => (zeta, C64::new(1.0, 0.0)),
            Some(e) => {
                let q = 1.0 - zeta / e;
                (zeta / q, 1.0 / (q * q))
            }
        }
    }

    /// `D → H` with the derivative.
    fn to_half_plane(&self, z: C64) -> (C64, C64) {
        let (zeta, d1) = self.to_zipped(z);
        let (s, d2) = self.straighten(zeta);
        (s * s * self.sign, d1 * d2 * 2.0 * s * self.sign)
    }

    fn pull_back(&self, f: C64) -> C64 {
        let s = if self.sign > 0.0 { f.sqrt() } else { -(-f).sqrt() };
        let mut zeta = match self.end {
            None => s,
            Some(e) => s / (1.0 + s / e),
        };
        for zip in self.zips.iter().rev() {
            zeta = zip.inverse(zeta);
        }
        let u = -(zeta * zeta);
        (self.zb - u * self.za) / (1.0 - u)
    }

    /// Worst of the boundary-modulus defect at node midpoints and the
    /// round-trip error, scaled by `|f'|`, on 128 interior points.
    fn self_test(&self) -> f64 {
        let n = self.n;
        let m = n.min(SELF_TEST_MIDPOINTS);
        let modulus = (0..m)
            .into_par_iter()
            .map(|j| {
                // every interval when n is small, an even stride otherwise
                let k = j * n / m;
                let p = self.curve.point((k as f64 + 0.5) / n as f64);
                let w = self.eval_raw(p).0;
                (w.norm() - 1.0).abs()
            })
            .reduce(|| 0.0, f64::max);
        let round = test_grid(&self.curve)
            .into_par_iter()
            .map(|z| {
                // measured in the disc: near a crowded tip the z-plane
                // error is large while the map itself is fine
                let (w, dw) = self.eval_raw(z);
                (self.inverse_raw(w) - z).norm() * dw.norm()
            })
            .reduce(|| 0.0, f64::max);
        if modulus.is_nan() || round.is_nan() {
            return f64::NAN;
        }
        modulus.max(round)
    }

    fn eval_raw(&self, z: C64) -> (C64, C64) {
        let (f, d) = self.to_half_plane(z);
        let q = f - self.omega.conj();
        let w = self.rot * (f - self.omega) / q;
        let dw = self.rot * (self.omega - self.omega.conj()) / (q * q);
        (w, d * dw)
    }

    fn inverse_raw(&self, w: C64) -> C64 {
        let u = w / self.rot;
        let f = (self.omega - u * self.omega.conj()) / (1.0 - u);
        self.pull_back(f)
    }

    /// The intermediate map onto the upper half-plane, with its derivative.
    /// Distances computed there keep relative precision near the boundary,
    /// where the disc image crowds against the unit circle.
    pub fn to_upper_half_plane(&self, z: C64) -> (C64, C64) {
        self.to_half_plane(z)
    }

    /// Number of boundary nodes used.
    pub fn nodes(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> C64 {
        self.base
    }

    /// `φ'(base)`, a positive real.
    pub fn derivative_at_base(&self) -> f64 {
        self.deriv_at_base
    }

    /// Conformal radius `1/φ'(base)`.
    pub fn conformal_radius(&self) -> f64 {
        1.0 / self.deriv_at_base
    }

    /// Parameter of the boundary node nearest to `t`.
    pub fn node_parameter(&self, t: f64) -> f64 {
        let n = self.n as f64;
        (t.rem_euclid(1.0) * n).round().rem_euclid(n) / n
    }

    /// Continuous extension to the boundary at the node nearest to `t`,
    /// taken as the limit from inside along the inward normal.
    pub fn boundary_value(&self, t: f64) -> Result<C64> {
        let t = self.node_parameter(t);
        let p = self.curve.point(t);
        let scale = 1.0 + p.norm();
        let w = self.eval_raw(p + self.inward(t) * (1e-10 * scale)).0;
        Ok(w / w.norm())
    }

    /// `|φ'(p)|` at the boundary node nearest to `t`, by one-sided
    /// differences of `1 - |φ|` along the inward normal at steps `h` and
    /// `h/2` combined by Richardson extrapolation.
    pub fn boundary_stretch(&self, t: f64, h: f64) -> Result<f64> {
        let t = self.node_parameter(t);
        let p = self.curve.point(t);
        let nrm = self.inward(t);
        let q = |h: f64| (1.0 - self.eval_raw(p + nrm * h).0.norm()) / h;
        Ok(2.0 * q(h / 2.0) - q(h))
    }

    fn inward(&self, t: f64) -> C64 {
        match &self.source {
            PlanarDomain::Jordan(j) => j.inward_normal(t),
            _ => unreachable!("riemann maps are built on Jordan domains"),
        }
    }

    pub fn curve(&self) -> &JordanCurve {
        &self.curve
    }
}

/// 128 interior points: four homothetic copies of the boundary toward the
/// curve's interior point.
fn test_grid(curve: &JordanCurve) -> Vec<C64> {
    let c = curve.interior_point();
    let mut pts = Vec::with_capacity(128);
    for s in [0.2, 0.45, 0.7, 0.85] {
        for k in 0..32 {
            let p = curve.point((k as f64 + 0.25) / 32.0);
            pts.push(c + (p - c) * s);
        }
    }
    pts
}

impl ConformalMap for RiemannMap {
    fn eval(&self, z: C64) -> Result<C64> {
        Ok(self.eval_raw(z).0)
    }

    fn derivative(&self, z: C64) -> Result<C64> {
        Ok(self.eval_raw(z).1)
    }

    fn inverse(&self, w: C64) -> Result<C64> {
        if !(w.norm() < 1.0) {
            return Err(Error::DomainViolation(format!("{w} not in the unit disc")));
        }
        Ok(self.inverse_raw(w))
    }

    fn source(&self) -> &PlanarDomain {
        &self.source
    }

    fn target(&self) -> &PlanarDomain {
        &UNIT_DISC
    }

    fn accuracy(&self) -> f64 {
        self.accuracy
    }

    fn normalization(&self) -> Option<Normalization> {
        Some(Normalization {
            base: self.base,
            image: self.eval_raw(self.base).0,
            derivative: C64::new(self.deriv_at_base, 0.0),
        })
    }
}
