//! Shortest paths of a conformal metric `σ(Re ζ) |dζ|` on the cylinder
//! `{|Re ζ| < L} / 2πiZ`.
//!
//! A graph pass (8-neighbour grid, midpoint weights, Dijkstra) finds the
//! homotopy class and a starting polyline in the strip; the polyline is then
//! resampled and relaxed at increasing vertex counts. The reported value is
//! the finest level and `err` its difference to the level before.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::{PI, TAU};

use crate::quadrature::gl8;
use crate::{Error, Result, C64};

#[derive(Debug, Clone, PartialEq)]
pub struct PathOptions {
    /// Grid nodes across the strip.
    pub nx: usize,
    /// Grid nodes around the cylinder.
    pub ny: usize,
    /// Vertex counts of the relaxation levels; the last two give `err`.
    pub levels: Vec<usize>,
    pub max_sweeps: usize,
}

impl Default for PathOptions {
    fn default() -> Self {
        PathOptions { nx: 64, ny: 256, levels: vec![8, 16, 32, 64, 128], max_sweeps: 400 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathResult {
    pub value: f64,
    pub coarse: f64,
    pub err: f64,
    /// Length of the graph path before relaxation.
    pub graph: f64,
    /// Final polyline in the strip, from `a` to the chosen translate of `b`.
    pub polyline: Vec<C64>,
}

#[derive(Clone, Copy, PartialEq)]
struct Entry {
    cost: f64,
    node: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on cost, ties by node index for determinism
        other.cost.total_cmp(&self.cost).then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `y` difference wrapped into `(-π, π]`.
fn wrap(dy: f64) -> f64 {
    let w = dy.rem_euclid(TAU);
    if w > PI {
        w - TAU
    } else {
        w
    }
}

struct Grid<'a> {
    l: f64,
    nx: usize,
    ny: usize,
    hx: f64,
    hy: f64,
    density: &'a dyn Fn(f64) -> f64,
}

impl Grid<'_> {
    fn x(&self, i: usize) -> f64 {
        -self.l + (i as f64 + 0.5) * self.hx
    }

    fn y(&self, j: usize) -> f64 {
        j as f64 * self.hy
    }

    fn point(&self, node: usize) -> C64 {
        C64::new(self.x(node / self.ny), self.y(node % self.ny))
    }

    /// Midpoint-rule edge weight between two cover points.
    fn weight(&self, a: C64, dx: f64, dy: f64) -> f64 {
        (self.density)(a.re + 0.5 * dx) * dx.hypot(dy)
    }

    /// Grid nodes within 1.5 cells of `p`, with the wrapped offsets.
    fn near(&self, p: C64) -> Vec<(usize, f64, f64)> {
        let mut out = Vec::new();
        let ci = ((p.re + self.l) / self.hx - 0.5).round() as i64;
        let cj = (p.im.rem_euclid(TAU) / self.hy).round() as i64;
        for di in -2..=2 {
            let i = ci + di;
            if i < 0 || i >= self.nx as i64 {
                continue;
            }
            for dj in -2..=2 {
                let j = (cj + dj).rem_euclid(self.ny as i64) as usize;
                let dx = self.x(i as usize) - p.re;
                let dy = wrap(self.y(j) - p.im);
                if dx.abs() <= 1.5 * self.hx && dy.abs() <= 1.5 * self.hy {
                    out.push((i as usize * self.ny + j, dx, dy));
                }
            }
        }
        out
    }
}

/// Length of the segment `[a, b]` under `σ(Re ζ)|dζ|`.
fn segment(density: &dyn Fn(f64) -> f64, a: C64, b: C64) -> f64 {
    let d = b - a;
    d.norm() * gl8().integrate(0.0, 1.0, |s| density(a.re + d.re * s))
}

fn length(density: &dyn Fn(f64) -> f64, p: &[C64]) -> f64 {
    p.windows(2).map(|s| segment(density, s[0], s[1])).sum()
}

/// `m` segments of equal Euclidean length along `p`.
fn resample(p: &[C64], m: usize) -> Vec<C64> {
    let mut cum = vec![0.0];
    for s in p.windows(2) {
        cum.push(cum.last().unwrap() + (s[1] - s[0]).norm());
    }
    let total = *cum.last().unwrap();
    let mut out = Vec::with_capacity(m + 1);
    let mut seg = 0;
    for k in 0..=m {
        let target = total * k as f64 / m as f64;
        while seg + 2 < cum.len() && cum[seg + 1] < target {
            seg += 1;
        }
        let span = cum[seg + 1] - cum[seg];
        let t = if span > 0.0 { ((target - cum[seg]) / span).clamp(0.0, 1.0) } else { 0.0 };
        out.push(p[seg] + (p[seg + 1] - p[seg]) * t);
    }
    out[0] = p[0];
    out[m] = *p.last().unwrap();
    out
}

/// Gauss–Seidel sweeps moving each interior vertex along the normal of its
/// neighbours' chord by a safeguarded Newton step.
fn relax(density: &dyn Fn(f64) -> f64, l: f64, p: &mut [C64], max_sweeps: usize) {
    let n = p.len();
    for _ in 0..max_sweeps {
        let mut moved = 0.0f64;
        for k in 1..n - 1 {
            let (a, b) = (p[k - 1], p[k + 1]);
            let chord = b - a;
            if chord.norm() == 0.0 {
                continue;
            }
            let nrm = C64::new(-chord.im, chord.re) / chord.norm();
            let v = p[k];
            let e = |t: f64| {
                let q = v + nrm * t;
                if q.re.abs() >= l {
                    f64::INFINITY
                } else {
                    segment(density, a, q) + segment(density, q, b)
                }
            };
            let h = 1e-4 * chord.norm();
            let (em, e0, ep) = (e(-h), e(0.0), e(h));
            let g = (ep - em) / (2.0 * h);
            let c = (ep - 2.0 * e0 + em) / (h * h);
            let mut step = if c > 0.0 { -g / c } else { -g.signum() * h };
            // keep moves local and insist on descent
            step = step.clamp(-0.5 * chord.norm(), 0.5 * chord.norm());
            let mut accepted = 0.0;
            for _ in 0..30 {
                if e(step) < e0 {
                    accepted = step;
                    break;
                }
                step *= 0.5;
            }
            p[k] = v + nrm * accepted;
            moved = moved.max(accepted.abs());
        }
        if moved < 1e-12 {
            break;
        }
    }
}

/// Shortest path from `a` to the nearest-in-length translate of `b`.
pub fn shortest_path(l: f64, density: &dyn Fn(f64) -> f64, a: C64, b: C64, opts: &PathOptions) -> Result<PathResult> {
    if !(a.re.abs() < l && b.re.abs() < l) {
        return Err(Error::DomainViolation("path endpoints must lie in the strip".into()));
    }
    if opts.levels.len() < 2 {
        return Err(Error::DegenerateInput("need at least two relaxation levels".into()));
    }
    let grid = Grid {
        l,
        nx: opts.nx,
        ny: opts.ny,
        hx: 2.0 * l / opts.nx as f64,
        hy: TAU / opts.ny as f64,
        density,
    };
    let nodes = opts.nx * opts.ny;
    let (src, dst) = (nodes, nodes + 1);
    let mut dist = vec![f64::INFINITY; nodes + 2];
    let mut prev = vec![usize::MAX; nodes + 2];
    let targets: Vec<(usize, f64, f64)> = grid.near(b);
    let mut is_target = vec![None; nodes];
    for &(node, dx, dy) in &targets {
        // offset from the node back to b
        is_target[node] = Some((-dx, -dy));
    }
    let mut heap = BinaryHeap::new();
    dist[src] = 0.0;
    for (node, dx, dy) in grid.near(a) {
        let w = grid.weight(a, dx, dy);
        if w < dist[node] {
            dist[node] = w;
            prev[node] = src;
            heap.push(Entry { cost: w, node });
        }
    }
    // endpoints in the same cell neighbourhood: direct edge
    let (ddx, ddy) = (b.re - a.re, wrap(b.im - a.im));
    if ddx.abs() <= 3.0 * grid.hx && ddy.abs() <= 3.0 * grid.hy {
        dist[dst] = grid.weight(a, ddx, ddy);
        prev[dst] = src;
    }
    while let Some(Entry { cost, node }) = heap.pop() {
        if cost > dist[node] || cost >= dist[dst] {
            if cost >= dist[dst] {
                break;
            }
            continue;
        }
        let p = grid.point(node);
        if let Some((dx, dy)) = is_target[node] {
            let c = cost + grid.weight(p, dx, dy);
            if c < dist[dst] {
                dist[dst] = c;
                prev[dst] = node;
            }
        }
        let (i, j) = ((node / grid.ny) as i64, (node % grid.ny) as i64);
        for di in -1..=1i64 {
            let ni = i + di;
            if ni < 0 || ni >= grid.nx as i64 {
                continue;
            }
            for dj in -1..=1i64 {
                if di == 0 && dj == 0 {
                    continue;
                }
                let nj = (j + dj).rem_euclid(grid.ny as i64);
                let next = ni as usize * grid.ny + nj as usize;
                let c = cost + grid.weight(p, di as f64 * grid.hx, dj as f64 * grid.hy);
                if c < dist[next] {
                    dist[next] = c;
                    prev[next] = node;
                    heap.push(Entry { cost: c, node: next });
                }
            }
        }
    }
    if !dist[dst].is_finite() {
        return Err(Error::NonConvergence("graph search found no path".into()));
    }
    // unwrap the predecessor chain into the strip
    let mut chain = vec![dst];
    while let Some(&last) = chain.last() {
        if last == src {
            break;
        }
        chain.push(prev[last]);
    }
    chain.reverse();
    let mut poly = vec![a];
    for &node in &chain[1..] {
        let cur = *poly.last().unwrap();
        let target = if node == dst { b } else { grid.point(node) };
        let dy = wrap(target.im - cur.im);
        poly.push(C64::new(target.re, cur.im + dy));
    }
    let end = *poly.last().unwrap();
    let shift = ((end.im - b.im) / TAU).round();
    *poly.last_mut().unwrap() = C64::new(b.re, b.im + shift * TAU);
    let graph = dist[dst];

    let mut values = Vec::with_capacity(opts.levels.len());
    let mut cur = poly;
    for &m in &opts.levels {
        let mut p = resample(&cur, m.max(1));
        relax(density, l, &mut p, opts.max_sweeps);
        values.push(length(density, &p));
        cur = p;
    }
    let value = values[values.len() - 1];
    let coarse = values[values.len() - 2];
    if !value.is_finite() {
        return Err(Error::NonConvergence("path relaxation produced a non-finite length".into()));
    }
    Ok(PathResult { value, coarse, err: (value - coarse).abs(), graph, polyline: cur })
}
