//! The annulus `A_r = {1/r < |z| < r}`.
//!
//! * Kobayashi distance through the strip cover.
//! * Bergman kernel `Σ (z conj w)^n / ‖ζ^n‖²` with the exact terms summed for
//!   `|n| ≤ N` and the two tails summed in closed form, where
//!   `‖ζ^n‖² = π(r^{2n+2} - r^{-2n-2})/(n+1)` is replaced by its leading power
//!   (relative error `r^{-4N}`, below `1e-17`).
//! * Carathéodory distance from the degree-two extremal functions
//!   `f = q B_a B_b / u` on `{q < |u| < 1}`, `u = z/r`, `q = 1/r²`, built from
//!   `P(u) = (1 - u) Π_{k≥1} (1 - q^{2k} u)(1 - q^{2k}/u)`,
//!   `B_a(u) = P(u/a)/P(u conj a)`. `|f| = 1` on both circles when
//!   `|b| = q/|a|`; the argument of `b` is optimized.

use std::f64::consts::{PI, TAU};

use crate::conformal::{annulus_cover, AnnulusCover};
use crate::distances::{atanh_split, shortest_path, CertifiedValue, Method, PathOptions};
use crate::quadrature::integrate_panels;
use crate::{Error, Result, C64};

/// Relative size of the neglected correction `r^{-4N}` in the kernel tails.
const TAIL_REL: f64 = 1e-17;

/// Boundary self-test tolerance for the series mode.
const SERIES_SELF_TEST: f64 = 1e-8;

/// `Σ_{k≥0} k^i q^k` for `i = 0..=3`, given `1 - q` separately.
fn lerch(q: C64, omq: C64) -> [C64; 4] {
    let l0 = 1.0 / omq;
    let l1 = q * l0 * l0;
    let l2 = q * (1.0 + q) * l0 * l0 * l0;
    let l3 = q * (1.0 + 4.0 * q + q * q) * l0 * l0 * l0 * l0;
    [l0, l1, l2, l3]
}

/// `Σ_{n≥a} n^j q^n` for `j = 0..=3`.
fn power_tails(q: C64, omq: C64, a: f64) -> [C64; 4] {
    let l = lerch(q, omq);
    let qa = q.powf(a);
    let binom = [[1.0, 0.0, 0.0, 0.0], [1.0, 1.0, 0.0, 0.0], [1.0, 2.0, 1.0, 0.0], [1.0, 3.0, 3.0, 1.0]];
    let mut out = [C64::new(0.0, 0.0); 4];
    for j in 0..4 {
        let mut s = C64::new(0.0, 0.0);
        for i in 0..=j {
            s += l[i] * binom[j][i] * a.powi((j - i) as i32);
        }
        out[j] = qa * s;
    }
    out
}

/// The Bergman kernel of `A_r` as a Laurent series.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnulusBergman {
    pub r: f64,
    /// Exact terms for `|n| ≤ order`.
    pub order: usize,
    inv_norms: Vec<f64>,
}

impl AnnulusBergman {
    pub fn new(r: f64) -> Result<Self> {
        if !(r > 1.0) {
            return Err(Error::InvalidDomain(format!("annulus needs r > 1, got {r}")));
        }
        let order = (-TAIL_REL.ln() / (4.0 * r.ln())).ceil() as usize + 1;
        if order > 20_000 {
            return Err(Error::Unsupported(format!("r = {r} is too close to 1 for the kernel series")));
        }
        let n0 = order as i64;
        let inv_norms = (-n0..=n0).map(|n| 1.0 / Self::norm_sq_of(r, n)).collect();
        Ok(AnnulusBergman { r, order, inv_norms })
    }

    fn norm_sq_of(r: f64, n: i64) -> f64 {
        if n == -1 {
            4.0 * PI * r.ln()
        } else {
            let e = (2 * n + 2) as f64 * r.ln();
            // π (r^e - r^-e)/(n + 1) = 2π sinh(e)/(n + 1)
            2.0 * PI * e.sinh() / (n + 1) as f64
        }
    }

    /// `‖ζ^n‖²` in `L²(A_r)`.
    pub fn norm_sq(&self, n: i64) -> f64 {
        Self::norm_sq_of(self.r, n)
    }

    /// Relative size of the neglected tail correction.
    pub fn tail_bound(&self) -> f64 {
        self.r.powf(-4.0 * self.order as f64)
    }

    /// `Σ_n n^j T_n t^n` for `j = 0, 1, 2`, where `t = z conj(w)` and
    /// `1 - t/r²`, `1 - 1/(r² t)` are passed in for precision.
    fn moments(&self, t: C64, omq: C64, omp: C64) -> [C64; 3] {
        let n0 = self.order as i64;
        let mut acc = [C64::new(0.0, 0.0); 3];
        let inv_t = 1.0 / t;
        let mut pos = C64::new(1.0, 0.0);
        let mut neg = C64::new(1.0, 0.0);
        for k in 0..=n0 {
            let nf = k as f64;
            let term = pos * self.inv_norms[(k + n0) as usize];
            acc[0] += term;
            acc[1] += term * nf;
            acc[2] += term * nf * nf;
            if k > 0 {
                let term = neg * self.inv_norms[(n0 - k) as usize];
                acc[0] += term;
                acc[1] -= term * nf;
                acc[2] += term * nf * nf;
            }
            pos *= t;
            neg *= inv_t;
        }
        let r2 = self.r * self.r;
        let a = (n0 + 1) as f64;
        // n ≥ a: (n + 1) q^n / (π r²), q = t/r²
        let s = power_tails(t / r2, omq, a);
        let c = 1.0 / (PI * r2);
        acc[0] += (s[1] + s[0]) * c;
        acc[1] += (s[2] + s[1]) * c;
        acc[2] += (s[3] + s[2]) * c;
        // n = -m, m ≥ a: (m - 1) r² p^m / π, p = 1/(r² t)
        let s = power_tails(inv_t / r2, omp, a);
        let c = r2 / PI;
        acc[0] += (s[1] - s[0]) * c;
        acc[1] -= (s[2] - s[1]) * c;
        acc[2] += (s[3] - s[2]) * c;
        acc
    }

    fn diagonal(&self, rho: f64) -> [f64; 3] {
        let r = self.r;
        let omq = (r - rho) * (r + rho) / (r * r);
        let omp = (r * rho - 1.0) * (r * rho + 1.0) / (r * r * rho * rho);
        let m = self.moments(C64::new(rho * rho, 0.0), C64::new(omq, 0.0), C64::new(omp, 0.0));
        [m[0].re, m[1].re, m[2].re]
    }

    /// `K(z) = K(z, z)`.
    pub fn kernel(&self, z: C64) -> f64 {
        self.diagonal(z.norm())[0]
    }

    /// `K(z, w) = Σ z^n conj(w)^n / ‖ζ^n‖²`.
    pub fn kernel_off(&self, z: C64, w: C64) -> C64 {
        let t = z * w.conj();
        let r2 = self.r * self.r;
        self.moments(t, 1.0 - t / r2, 1.0 - 1.0 / (r2 * t))[0]
    }

    /// Bergman density of the strip cover at `x = log|z|`: with
    /// `z = e^ζ`, `β(z; z dζ) = σ(Re ζ) |dζ|` and `σ² = Var(n)` under the
    /// weights `|z|^{2n}/‖ζ^n‖²`.
    pub fn strip_density(&self, x: f64) -> f64 {
        let [m0, m1, m2] = self.diagonal(x.exp());
        let mean = m1 / m0;
        (m2 / m0 - mean * mean).max(0.0).sqrt()
    }

    /// `β(z; X) = |X| sqrt(∂∂̄ log K) = |X| σ(log|z|)/|z|`.
    pub fn metric(&self, z: C64, x: C64) -> f64 {
        self.strip_density(z.norm().ln()) * x.norm() / z.norm()
    }

    /// `|∫_{A_r} ζ^n K(w, ζ) dA(ζ) - w^n|`, by Gauss–Legendre panels in the
    /// radius and the trapezoid rule (exact for trigonometric polynomials)
    /// in the angle.
    pub fn reproducing_residual(&self, n: i32, w: C64) -> f64 {
        let angles = 256;
        let r = self.r;
        let integral = {
            let mut re = 0.0;
            let mut im = 0.0;
            for part in 0..2 {
                let v = integrate_panels(1.0 / r, r, 8, |rho| {
                    let mut s = C64::new(0.0, 0.0);
                    for k in 0..angles {
                        let zeta = C64::from_polar(rho, TAU * k as f64 / angles as f64);
                        s += zeta.powi(n) * self.kernel_off(w, zeta);
                    }
                    let s = s * (TAU / angles as f64) * rho;
                    if part == 0 {
                        s.re
                    } else {
                        s.im
                    }
                });
                if part == 0 {
                    re = v;
                } else {
                    im = v;
                }
            }
            C64::new(re, im)
        };
        (integral - w.powi(n)).norm()
    }
}

/// Carathéodory distance of `A_r` from the product representation.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnulusCaratheodory {
    pub r: f64,
    q: f64,
    /// Powers `q^{2k}`, `k ≥ 1`, down to `1e-18`.
    q2k: Vec<f64>,
    /// Worst boundary defect `||f| - 1|` found by the self-test.
    pub self_test: f64,
}

impl AnnulusCaratheodory {
    pub fn new(r: f64) -> Result<Self> {
        if !(r > 1.0) {
            return Err(Error::InvalidDomain(format!("annulus needs r > 1, got {r}")));
        }
        let q = 1.0 / (r * r);
        let mut q2k = Vec::new();
        let mut p = q * q;
        while p > 1e-18 {
            q2k.push(p);
            p *= q * q;
            if q2k.len() > 100_000 {
                return Err(Error::Unsupported(format!("r = {r} is too close to 1 for the product")));
            }
        }
        let mut c = AnnulusCaratheodory { r, q, q2k, self_test: f64::INFINITY };
        c.self_test = c.run_self_test();
        Ok(c)
    }

    /// Series mode is used only when the boundary self-test passes.
    pub fn series_ok(&self) -> bool {
        self.self_test <= SERIES_SELF_TEST
    }

    fn p(&self, u: C64) -> C64 {
        let inv = 1.0 / u;
        self.q2k.iter().fold(1.0 - u, |acc, &c| acc * (1.0 - c * u) * (1.0 - c * inv))
    }

    fn blaschke(&self, a: C64, u: C64) -> C64 {
        self.p(u / a) / self.p(u * a.conj())
    }

    /// `f(u) = q B_a(u) B_b(u) / u` in the scaled annulus `{q < |u| < 1}`.
    fn extremal(&self, a: C64, b: C64, u: C64) -> C64 {
        self.blaschke(a, u) * self.blaschke(b, u) * self.q / u
    }

    fn second_zero(&self, a: C64, beta: f64) -> C64 {
        C64::from_polar(self.q / a.norm(), beta)
    }

    /// Worst `||f| - 1|` on 64 points of each boundary circle, over a few
    /// zero configurations.
    fn run_self_test(&self) -> f64 {
        let s = self.q.sqrt();
        let mut worst = 0.0f64;
        for (a, beta) in [(C64::from_polar(s, 0.3), 1.1), (C64::from_polar(0.5 * (1.0 + self.q), -2.0), 0.0)] {
            let b = self.second_zero(a, beta);
            for k in 0..64 {
                let th = TAU * (k as f64 + 0.5) / 64.0;
                for rad in [1.0, self.q] {
                    let v = self.extremal(a, b, C64::from_polar(rad, th)).norm();
                    worst = worst.max((v - 1.0).abs());
                }
            }
            // the zeros must sit where they are meant to
            worst = worst.max(self.extremal(a, b, a).norm());
        }
        if worst.is_nan() {
            f64::INFINITY
        } else {
            worst
        }
    }

    /// `m_{A_r}(z, w) = max_β |f_β(w)|` over the argument of the second zero.
    pub fn m(&self, z: C64, w: C64) -> f64 {
        if z == w {
            return 0.0;
        }
        let a = z / self.r;
        let u = w / self.r;
        let val = |beta: f64| self.extremal(a, self.second_zero(a, beta), u).norm();
        let steps = 64;
        let h = TAU / steps as f64;
        let (mut best_b, mut best) = (0.0, -1.0);
        for k in 0..steps {
            let b = k as f64 * h;
            let v = val(b);
            if v > best {
                best = v;
                best_b = b;
            }
        }
        // golden-section refinement on the bracketing cell
        let g = 0.5 * (5f64.sqrt() - 1.0);
        let (mut lo, mut hi) = (best_b - h, best_b + h);
        let mut x1 = hi - g * (hi - lo);
        let mut x2 = lo + g * (hi - lo);
        let (mut f1, mut f2) = (val(x1), val(x2));
        for _ in 0..80 {
            if f1 > f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = val(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = val(x2);
            }
        }
        best.max(f1).max(f2).min(1.0)
    }

    /// Bound on the absolute error of [`m`](Self::m): the boundary defect
    /// plus rounding in the products.
    pub fn m_error(&self) -> f64 {
        self.self_test + 64.0 * f64::EPSILON
    }

    pub fn distance(&self, z: C64, w: C64) -> f64 {
        let m = self.m(z, w);
        if m >= 1.0 {
            return f64::INFINITY;
        }
        atanh_split(m, (1.0 - m) * (1.0 + m))
    }
}

/// Everything the annulus needs, built once.
#[derive(Debug, Clone)]
pub struct AnnulusModel {
    pub r: f64,
    pub cover: AnnulusCover,
    pub bergman: AnnulusBergman,
    pub cara: AnnulusCaratheodory,
    pub path: PathOptions,
}

impl AnnulusModel {
    pub fn new(r: f64) -> Result<Self> {
        Ok(AnnulusModel {
            r,
            cover: annulus_cover(r)?,
            bergman: AnnulusBergman::new(r)?,
            cara: AnnulusCaratheodory::new(r)?,
            path: PathOptions::default(),
        })
    }

    pub(crate) fn check(&self, z: C64) -> Result<()> {
        self.cover.lift(z).map(|_| ())
    }

    /// `k_{A_r}` through the cover.
    pub fn lempert(&self, z: C64, w: C64) -> Result<CertifiedValue> {
        let (d, _) = self.cover.distance(z, w)?;
        Ok(CertifiedValue::exact(d, Method::Covering, 0.0))
    }

    pub fn kobayashi(&self, z: C64, x: C64) -> Result<f64> {
        self.cover.metric(z, x)
    }

    /// `c_{A_r}`: series mode when the extremal functions pass their
    /// self-test, otherwise the enclosure
    /// `[c_{Disc(0, r)}, k_{A_r}]` from `A_r ⊂ Disc(0, r)` and `c ≤ k`.
    pub fn caratheodory(&self, z: C64, w: C64) -> Result<CertifiedValue> {
        self.check(z)?;
        self.check(w)?;
        if self.cara.series_ok() {
            // Near the boundary 1 - m is comparable to the error in m, so
            // the value is widened to what that error allows, and capped
            // above by k since c ≤ k.
            let m = self.cara.m(z, w);
            let delta = self.cara.m_error();
            let lo = match m - delta {
                x if x <= 0.0 => 0.0,
                x => atanh_split(x, (1.0 - m + delta) * (1.0 + x)),
            };
            let k = self.lempert(z, w)?.hi;
            let hi = if m + delta >= 1.0 { k } else { atanh_split(m + delta, (1.0 - m - delta) * (1.0 + m + delta)).min(k) };
            let mut v = CertifiedValue::interval(lo, hi.max(lo), Method::Series)?;
            v.err = v.err.max(self.cara.self_test);
            return Ok(v);
        }
        self.caratheodory_interval(z, w)
    }

    /// The enclosure used when the series is unavailable.
    pub fn caratheodory_interval(&self, z: C64, w: C64) -> Result<CertifiedValue> {
        let (a, b) = (z / self.r, w / self.r);
        let lo = crate::distances::poincare_distance(a, b)?;
        let hi = self.lempert(z, w)?.hi;
        CertifiedValue::interval(lo, hi.max(lo), Method::Interval)
    }

    /// Shortest path of the Bergman metric on the cylinder cover; the
    /// enclosure is the refined value ± the difference between the last two
    /// refinement levels.
    pub fn bergman_distance(&self, z: C64, w: C64) -> Result<CertifiedValue> {
        let a = self.cover.lift(z)?;
        let b = self.cover.lift(w)?;
        if z == w {
            return Ok(CertifiedValue::exact(0.0, Method::Interval, 0.0));
        }
        let res = shortest_path(self.cover.l, &|x| self.bergman.strip_density(x), a, b, &self.path)?;
        CertifiedValue::interval((res.value - res.err).max(0.0), res.value + res.err, Method::Interval)
    }

    /// The Kobayashi distance recomputed as a shortest path of `κ`, for
    /// cross-checking the covering formula.
    pub fn kobayashi_path(&self, z: C64, w: C64) -> Result<CertifiedValue> {
        let a = self.cover.lift(z)?;
        let b = self.cover.lift(w)?;
        let res = shortest_path(self.cover.l, &|x| self.cover.density(C64::new(x, 0.0)), a, b, &self.path)?;
        CertifiedValue::interval((res.value - res.err).max(0.0), res.value + res.err, Method::Interval)
    }
}
