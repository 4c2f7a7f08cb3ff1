//! Gauss–Legendre panels shared by the radial, angular and path integrals.

use std::sync::OnceLock;

use gauss_quad::legendre::GaussLegendre;

fn rule(cell: &'static OnceLock<GaussLegendre>, deg: usize) -> &'static GaussLegendre {
    cell.get_or_init(|| GaussLegendre::new(deg).expect("degree >= 2"))
}

/// 64-node rule used for radial and angular integrals.
pub fn gl64() -> &'static GaussLegendre {
    static CELL: OnceLock<GaussLegendre> = OnceLock::new();
    rule(&CELL, 64)
}

/// 8-node rule used per path segment.
pub fn gl8() -> &'static GaussLegendre {
    static CELL: OnceLock<GaussLegendre> = OnceLock::new();
    rule(&CELL, 8)
}

/// Integrate `f` over `[a, b]` split into `panels` equal pieces, each with the
/// 64-node rule.
pub fn integrate_panels<F: FnMut(f64) -> f64>(a: f64, b: f64, panels: usize, mut f: F) -> f64 {
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|k| {
            let lo = a + k as f64 * h;
            gl64().integrate(lo, lo + h, &mut f)
        })
        .sum()
}
