//! Samplers for model geometries and the JSON space file format.
//!
//! Every generator returns a [`FiniteMetricMeasureSpace`] whose provenance
//! records the model, its parameters, the seed, per-point model coordinates,
//! and an estimated fill radius (max distance from any model point to its
//! nearest sample). Generation is deterministic: the same [`ModelSpec`],
//! including its seed, produces bit-identical output.
//!
//! Models:
//!
//! * `circle`: radius `r`, `N` equispaced points, arc-length metric;
//! * `sphere`: round `S^dim` of radius `r`; a Fibonacci lattice for
//!   `dim = 2`, seeded uniform samples otherwise; intrinsic metric;
//! * `flat_torus`: `[0, a) x [0, b)` with wrapped Euclidean metric, sampled
//!   on the lattice `nx x ny` whose aspect ratio best matches `a / b` among
//!   divisor pairs of `N`;
//! * `interval`: `[0, length]` with `N` equispaced points;
//! * `suspension`: spherical suspension of a base space of diameter at most
//!   `pi`, with `slices` interior latitude bands, two poles, and measure
//!   weighted by `sin^m(t)`.

use std::collections::BTreeMap;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mmspace::{FiniteMetricMeasureSpace, Provenance};

/// Seed used when a caller does not supply one.
pub const DEFAULT_SEED: u64 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Circle,
    Sphere,
    FlatTorus,
    Interval,
    Suspension,
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ModelKind::Circle => "circle",
            ModelKind::Sphere => "sphere",
            ModelKind::FlatTorus => "flat_torus",
            ModelKind::Interval => "interval",
            ModelKind::Suspension => "suspension",
        };
        f.write_str(s)
    }
}

/// A reproducible description of a sampled model space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub model: ModelKind,
    /// Circle / sphere radius (default 1).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    /// Sphere dimension (default 2).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    /// Torus periods.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    /// Interval length (default 1).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<f64>,
    /// Suspension weight exponent (default: 1).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
    /// Suspension latitude band count.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slices: Option<usize>,
    /// Suspension base (default: circle of radius `r` with `sample_count`
    /// points).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Box<ModelSpec>>,
    pub sample_count: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

impl ModelSpec {
    pub fn circle(r: f64, sample_count: usize) -> Self {
        ModelSpec {
            model: ModelKind::Circle,
            r: Some(r),
            dim: None,
            a: None,
            b: None,
            length: None,
            m: None,
            slices: None,
            base: None,
            sample_count,
            seed: DEFAULT_SEED,
        }
    }

    pub fn sphere(dim: usize, r: f64, sample_count: usize, seed: u64) -> Self {
        ModelSpec { dim: Some(dim), seed, ..ModelSpec::circle(r, sample_count).with_model(ModelKind::Sphere) }
    }

    pub fn flat_torus(a: f64, b: f64, sample_count: usize) -> Self {
        ModelSpec {
            a: Some(a),
            b: Some(b),
            r: None,
            ..ModelSpec::circle(1.0, sample_count).with_model(ModelKind::FlatTorus)
        }
    }

    pub fn interval(length: f64, sample_count: usize) -> Self {
        ModelSpec {
            length: Some(length),
            r: None,
            ..ModelSpec::circle(1.0, sample_count).with_model(ModelKind::Interval)
        }
    }

    pub fn suspension(base: ModelSpec, slices: usize, m: f64) -> Self {
        let n = base.sample_count;
        ModelSpec {
            base: Some(Box::new(base)),
            slices: Some(slices),
            m: Some(m),
            r: None,
            ..ModelSpec::circle(1.0, n).with_model(ModelKind::Suspension)
        }
    }

    fn with_model(mut self, model: ModelKind) -> Self {
        self.model = model;
        self
    }

    /// Short human-readable identifier, used in reports.
    pub fn label(&self) -> String {
        match self.model {
            ModelKind::Circle => format!("circle(r={}, N={})", self.r.unwrap_or(1.0), self.sample_count),
            ModelKind::Sphere => format!(
                "sphere(dim={}, r={}, N={})",
                self.dim.unwrap_or(2),
                self.r.unwrap_or(1.0),
                self.sample_count
            ),
            ModelKind::FlatTorus => format!(
                "flat_torus(a={}, b={}, N={})",
                self.a.unwrap_or(1.0),
                self.b.unwrap_or(1.0),
                self.sample_count
            ),
            ModelKind::Interval => {
                format!("interval(length={}, N={})", self.length.unwrap_or(1.0), self.sample_count)
            }
            ModelKind::Suspension => format!(
                "suspension(m={}, slices={}, base={})",
                self.m.unwrap_or(1.0),
                self.slices.unwrap_or(0),
                self.base.as_ref().map(|b| b.label()).unwrap_or_else(|| "?".into())
            ),
        }
    }
}

/// Dispatches a [`ModelSpec`] to the matching generator.
pub fn generate(spec: &ModelSpec) -> Result<FiniteMetricMeasureSpace> {
    const OP: &str = "generators::generate";
    match spec.model {
        ModelKind::Circle => gen_circle(spec.r.unwrap_or(1.0), spec.sample_count),
        ModelKind::Sphere => {
            gen_sphere(spec.dim.unwrap_or(2), spec.r.unwrap_or(1.0), spec.sample_count, spec.seed)
        }
        ModelKind::FlatTorus => {
            let a = spec.a.ok_or_else(|| Error::InvalidArgument {
                op: OP,
                detail: "flat_torus needs period a".into(),
            })?;
            let b = spec.b.ok_or_else(|| Error::InvalidArgument {
                op: OP,
                detail: "flat_torus needs period b".into(),
            })?;
            gen_flat_torus(a, b, spec.sample_count, spec.seed)
        }
        ModelKind::Interval => gen_interval(spec.length.unwrap_or(1.0), spec.sample_count),
        ModelKind::Suspension => {
            let base_spec = spec
                .base
                .clone()
                .map(|b| *b)
                .unwrap_or_else(|| ModelSpec::circle(spec.r.unwrap_or(1.0), spec.sample_count));
            let base = generate(&base_spec)?;
            let slices = spec.slices.ok_or_else(|| Error::InvalidArgument {
                op: OP,
                detail: "suspension needs a slice count".into(),
            })?;
            gen_suspension(&base, slices, spec.m.unwrap_or(1.0))
        }
    }
}

/// `arccos` with the argument clamped into `[-1, 1]`; arguments further than
/// `1e-12` outside that interval are a numerical failure rather than noise.
pub(crate) fn clamped_acos(x: f64, op: &'static str) -> Result<f64> {
    if !(-1.0 - 1e-12..=1.0 + 1e-12).contains(&x) {
        return Err(Error::NumericalFailure {
            op,
            detail: format!("arccos argument {x} outside [-1, 1] beyond tolerance"),
        });
    }
    Ok(x.clamp(-1.0, 1.0).acos())
}

/// Circle of radius `r` with `n` equispaced samples and uniform mass.
pub fn gen_circle(r: f64, n: usize) -> Result<FiniteMetricMeasureSpace> {
    const OP: &str = "generators::gen_circle";
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InvalidArgument { op: OP, detail: format!("radius {r} must be positive") });
    }
    if n < 3 {
        return Err(Error::InvalidArgument { op: OP, detail: format!("need N >= 3, got {n}") });
    }
    let tau = 2.0 * std::f64::consts::PI;
    let mut dist = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let gap = (i as f64 - j as f64).abs() * tau / n as f64;
            dist[i * n + j] = r * gap.min(tau - gap);
        }
    }
    let coords: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let th = tau * i as f64 / n as f64;
            vec![r * th.cos(), r * th.sin()]
        })
        .collect();
    let mut params = BTreeMap::new();
    params.insert("r".to_string(), r);
    params.insert("circumference".to_string(), tau * r);
    let meta = Provenance {
        model: Some("circle".into()),
        params,
        sample_count: Some(n),
        seed: None,
        fill_radius: Some(std::f64::consts::PI * r / n as f64),
        coords: Some(coords),
    };
    FiniteMetricMeasureSpace::new(dist, vec![1.0 / n as f64; n], Some(meta))
}

/// Round sphere `S^dim` of radius `r`: Fibonacci lattice for `dim = 2`,
/// seeded uniform samples otherwise; intrinsic (great-circle) metric.
pub fn gen_sphere(dim: usize, r: f64, n: usize, seed: u64) -> Result<FiniteMetricMeasureSpace> {
    const OP: &str = "generators::gen_sphere";
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InvalidArgument { op: OP, detail: format!("radius {r} must be positive") });
    }
    if dim < 1 {
        return Err(Error::InvalidArgument { op: OP, detail: "dimension must be >= 1".into() });
    }
    if n < 4 {
        return Err(Error::InvalidArgument { op: OP, detail: format!("need N >= 4, got {n}") });
    }
    let ambient = dim + 1;
    let mut unit: Vec<Vec<f64>> = Vec::with_capacity(n);
    if dim == 2 {
        // Fibonacci lattice: near-uniform, deterministic.
        let golden = (1.0 + 5.0f64.sqrt()) / 2.0;
        let step = 2.0 * std::f64::consts::PI / (golden * golden);
        for k in 0..n {
            let z = 1.0 - (2.0 * k as f64 + 1.0) / n as f64;
            let rho = (1.0 - z * z).max(0.0).sqrt();
            let phi = step * k as f64;
            unit.push(vec![rho * phi.cos(), rho * phi.sin(), z]);
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        while unit.len() < n {
            let v: Vec<f64> = (0..ambient).map(|_| normal_sample(&mut rng)).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-9 {
                unit.push(v.iter().map(|x| x / norm).collect());
            }
        }
    }

    let dot = |u: &[f64], v: &[f64]| -> f64 { u.iter().zip(v).map(|(a, b)| a * b).sum() };
    let mut dist = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = r * clamped_acos(dot(&unit[i], &unit[j]), OP)?;
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }
    }

    // Fill radius: probe with a denser independent point set and take the
    // worst probe-to-sample distance (angles compared through dot products).
    let probes: Vec<Vec<f64>> = if dim == 2 {
        let m = 4 * n + 1;
        let golden = (1.0 + 5.0f64.sqrt()) / 2.0;
        let step = 2.0 * std::f64::consts::PI / (golden * golden);
        (0..m)
            .map(|k| {
                let z = 1.0 - (2.0 * k as f64 + 1.0) / m as f64;
                let rho = (1.0 - z * z).max(0.0).sqrt();
                let phi = step * k as f64 + 0.45;
                vec![rho * phi.cos(), rho * phi.sin(), z]
            })
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9E37_79B9_7F4A_7C15);
        (0..4 * n)
            .map(|_| {
                let v: Vec<f64> = (0..ambient).map(|_| normal_sample(&mut rng)).collect();
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-12);
                v.iter().map(|x| x / norm).collect()
            })
            .collect()
    };
    let mut worst_cos = 1.0f64;
    for p in &probes {
        let best = unit.iter().map(|u| dot(p, u)).fold(-1.0f64, f64::max);
        worst_cos = worst_cos.min(best);
    }
    let fill = r * clamped_acos(worst_cos, OP)?;

    let coords: Vec<Vec<f64>> = unit.iter().map(|u| u.iter().map(|x| x * r).collect()).collect();
    let mut params = BTreeMap::new();
    params.insert("dim".to_string(), dim as f64);
    params.insert("r".to_string(), r);
    let meta = Provenance {
        model: Some("sphere".into()),
        params,
        sample_count: Some(n),
        seed: Some(seed),
        fill_radius: Some(fill),
        coords: Some(coords),
    };
    FiniteMetricMeasureSpace::new(dist, vec![1.0 / n as f64; n], Some(meta))
}

fn normal_sample(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller; adequate and dependency-free.
    loop {
        let u: f64 = rng.gen::<f64>();
        let v: f64 = rng.gen::<f64>();
        if u > 1e-300 {
            return (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos();
        }
    }
}

/// Flat torus `[0, a) x [0, b)` with the wrapped Euclidean metric, sampled on
/// the `nx x ny` divisor lattice of `n` whose aspect ratio best matches
/// `a / b`. The lattice is deterministic; the seed is recorded but unused.
pub fn gen_flat_torus(a: f64, b: f64, n: usize, seed: u64) -> Result<FiniteMetricMeasureSpace> {
    const OP: &str = "generators::gen_flat_torus";
    if !(a.is_finite() && a > 0.0 && b.is_finite() && b > 0.0) {
        return Err(Error::InvalidArgument {
            op: OP,
            detail: format!("periods must be positive, got a={a}, b={b}"),
        });
    }
    if n < 4 {
        return Err(Error::InvalidArgument { op: OP, detail: format!("need N >= 4, got {n}") });
    }
    let target = (a / b).ln();
    let mut best: Option<(usize, usize, f64)> = None;
    for nx in 1..=n {
        if n % nx != 0 {
            continue;
        }
        let ny = n / nx;
        let gap = ((nx as f64 / ny as f64).ln() - target).abs();
        if best.map_or(true, |(_, _, g)| gap < g) {
            best = Some((nx, ny, gap));
        }
    }
    let (nx, ny, _) = best.unwrap();

    let wrap = |d: f64, period: f64| -> f64 {
        let m = d.abs() % period;
        m.min(period - m)
    };
    let xs: Vec<f64> = (0..nx).map(|i| a * i as f64 / nx as f64).collect();
    let ys: Vec<f64> = (0..ny).map(|j| b * j as f64 / ny as f64).collect();
    let mut pts = Vec::with_capacity(n);
    for i in 0..nx {
        for j in 0..ny {
            pts.push((xs[i], ys[j]));
        }
    }
    let mut dist = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let dx = wrap(pts[i].0 - pts[j].0, a);
            let dy = wrap(pts[i].1 - pts[j].1, b);
            let d = dx.hypot(dy);
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }
    }

    // Flat 4-D embedding: each factor circle gets radius period / 2 pi. Used
    // only for model-coordinate alignment, not for distances.
    let tau = 2.0 * std::f64::consts::PI;
    let (ra, rb) = (a / tau, b / tau);
    let coords: Vec<Vec<f64>> = pts
        .iter()
        .map(|&(x, y)| {
            vec![
                ra * (tau * x / a).cos(),
                ra * (tau * x / a).sin(),
                rb * (tau * y / b).cos(),
                rb * (tau * y / b).sin(),
            ]
        })
        .collect();
    let mut params = BTreeMap::new();
    params.insert("a".to_string(), a);
    params.insert("b".to_string(), b);
    params.insert("nx".to_string(), nx as f64);
    params.insert("ny".to_string(), ny as f64);
    let meta = Provenance {
        model: Some("flat_torus".into()),
        params,
        sample_count: Some(n),
        seed: Some(seed),
        fill_radius: Some(0.5 * (a / nx as f64).hypot(b / ny as f64)),
        coords: Some(coords),
    };
    FiniteMetricMeasureSpace::new(dist, vec![1.0 / n as f64; n], Some(meta))
}

/// Interval `[0, length]` with `n` equispaced points and uniform mass.
pub fn gen_interval(length: f64, n: usize) -> Result<FiniteMetricMeasureSpace> {
    const OP: &str = "generators::gen_interval";
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::InvalidArgument {
            op: OP,
            detail: format!("length {length} must be positive"),
        });
    }
    if n < 2 {
        return Err(Error::InvalidArgument { op: OP, detail: format!("need N >= 2, got {n}") });
    }
    let xs: Vec<f64> = (0..n).map(|i| length * i as f64 / (n - 1) as f64).collect();
    let mut dist = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            dist[i * n + j] = (xs[i] - xs[j]).abs();
        }
    }
    let mut params = BTreeMap::new();
    params.insert("length".to_string(), length);
    let meta = Provenance {
        model: Some("interval".into()),
        params,
        sample_count: Some(n),
        seed: None,
        fill_radius: Some(length / (2.0 * (n - 1) as f64)),
        coords: Some(xs.iter().map(|&x| vec![x]).collect()),
    };
    FiniteMetricMeasureSpace::new(dist, vec![1.0 / n as f64; n], Some(meta))
}

/// Spherical suspension of a base space of diameter at most `pi`.
///
/// Points are `(t_k, y)` for `t_k` on the interior grid
/// `pi k / (slices + 1)`, `k = 1..=slices`, plus the two poles. Distances
/// follow the law of cosines for suspensions:
/// `d = arccos(cos s cos t + sin s sin t cos d_base(y, z))`. The measure is
/// the product of `sin^m(t) dt` (normalized) with the base measure: each
/// latitude band carries the exact integral of `sin^m` over its cell, and the
/// poles absorb the boundary half-cells, so the total is one by construction.
pub fn gen_suspension(
    base: &FiniteMetricMeasureSpace,
    slices: usize,
    m: f64,
) -> Result<FiniteMetricMeasureSpace> {
    const OP: &str = "generators::gen_suspension";
    if slices < 2 {
        return Err(Error::InvalidArgument { op: OP, detail: format!("need slices >= 2, got {slices}") });
    }
    if !(m.is_finite() && m >= 0.0) {
        return Err(Error::InvalidArgument { op: OP, detail: format!("weight exponent m = {m} must be >= 0") });
    }
    let base_diam = base.diameter()?;
    if base_diam > std::f64::consts::PI + 1e-9 {
        return Err(Error::InvalidBase {
            op: OP,
            detail: format!("base diameter {base_diam} exceeds pi; the suspension law of cosines needs diam <= pi"),
        });
    }
    let nb = base.n();
    let pi = std::f64::consts::PI;
    let delta = pi / (slices + 1) as f64;
    let ts: Vec<f64> = (1..=slices).map(|k| delta * k as f64).collect();

    // Cell integrals of sin^m via composite Simpson on each cell.
    let sinm = |t: f64| -> f64 { t.sin().max(0.0).powf(m) };
    let cell_integral = |lo: f64, hi: f64| -> f64 { simpson(&sinm, lo, hi, 64) };
    let w_pole0 = cell_integral(0.0, 0.5 * delta);
    let w_pole1 = cell_integral(pi - 0.5 * delta, pi);
    let w_cells: Vec<f64> = ts.iter().map(|&t| cell_integral(t - 0.5 * delta, t + 0.5 * delta)).collect();
    let z = w_pole0 + w_pole1 + w_cells.iter().sum::<f64>();

    let n = slices * nb + 2;
    let idx = |k: usize, j: usize| -> usize { k * nb + j };
    let pole0 = slices * nb;
    let pole1 = slices * nb + 1;

    let mut mass = vec![0.0; n];
    for k in 0..slices {
        for j in 0..nb {
            mass[idx(k, j)] = w_cells[k] / z * base.mass()[j];
        }
    }
    mass[pole0] = w_pole0 / z;
    mass[pole1] = w_pole1 / z;
    let total: f64 = mass.iter().sum();
    for v in &mut mass {
        *v /= total;
    }

    let mut dist = vec![0.0; n * n];
    let mut set = |i: usize, j: usize, d: f64| {
        dist[i * n + j] = d;
        dist[j * n + i] = d;
    };
    for k in 0..slices {
        for j in 0..nb {
            let i0 = idx(k, j);
            // Same latitude or deeper: law of cosines against later indices.
            for k2 in k..slices {
                for j2 in 0..nb {
                    let i1 = idx(k2, j2);
                    if i1 <= i0 {
                        continue;
                    }
                    let (s, t) = (ts[k], ts[k2]);
                    let arg = s.cos() * t.cos() + s.sin() * t.sin() * base.dist(j, j2).cos();
                    set(i0, i1, clamped_acos(arg, OP)?);
                }
            }
            set(i0, pole0, ts[k]);
            set(i0, pole1, pi - ts[k]);
        }
    }
    set(pole0, pole1, pi);

    // Coordinates: the latitude t followed by the base point's coordinates
    // (when the base has them), so aligned constructions can be compared.
    let base_coords = base.meta().and_then(|p| p.coords.clone());
    let coord_dim = base_coords.as_ref().map(|c| c.first().map_or(0, |v| v.len())).unwrap_or(0);
    let mut coords = Vec::with_capacity(n);
    for k in 0..slices {
        for j in 0..nb {
            let mut c = vec![ts[k]];
            if let Some(bc) = &base_coords {
                c.extend_from_slice(&bc[j]);
            }
            coords.push(c);
        }
    }
    let mut c0 = vec![0.0];
    c0.extend(std::iter::repeat(0.0).take(coord_dim));
    coords.push(c0);
    let mut c1 = vec![pi];
    c1.extend(std::iter::repeat(0.0).take(coord_dim));
    coords.push(c1);

    let base_fill = base
        .meta()
        .and_then(|p| p.fill_radius)
        .map_or_else(|| base.max_nn_distance().map(|d| 0.5 * d), Ok)?;
    let mut params = BTreeMap::new();
    params.insert("m".to_string(), m);
    params.insert("slices".to_string(), slices as f64);
    params.insert("base_n".to_string(), nb as f64);
    let meta = Provenance {
        model: Some("suspension".into()),
        params,
        sample_count: Some(n),
        seed: None,
        fill_radius: Some((0.5 * delta).hypot(base_fill)),
        coords: Some(coords),
    };
    FiniteMetricMeasureSpace::new(dist, mass, Some(meta))
}

fn simpson(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, intervals: usize) -> f64 {
    let n = intervals.max(2) & !1; // even
    let h = (hi - lo) / n as f64;
    let mut acc = f(lo) + f(hi);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(lo + h * i as f64);
    }
    acc * h / 3.0
}

// ---------------------------------------------------------------------------
// File format
// ---------------------------------------------------------------------------

/// On-disk JSON schema for a space. Either a full row-major `dist` matrix, or
/// `coords` plus a `metric` tag (`euclidean`, `sphere_intrinsic`,
/// `torus_flat`; the latter also needs `periods: [a, b]`). `meta` passes
/// through untouched. Saving always writes the `dist` form, which round-trips
/// bit-exactly.
#[derive(Serialize, Deserialize)]
struct SpaceFile {
    n: usize,
    mass: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dist: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coords: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metric: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    periods: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<Provenance>,
}

/// Serializes a space to JSON at `path`, atomically (temp file + rename).
pub fn save_space(space: &FiniteMetricMeasureSpace, path: &Path) -> Result<()> {
    const OP: &str = "generators::save_space";
    let file = SpaceFile {
        n: space.n(),
        mass: space.mass().to_vec(),
        dist: Some(space.dist_matrix().to_vec()),
        coords: None,
        metric: None,
        periods: None,
        meta: space.meta().cloned(),
    };
    let body = serde_json::to_string(&file).map_err(|e| Error::ParseError {
        op: OP,
        detail: format!("serialization failed: {e}"),
    })?;
    atomic_write(path, body.as_bytes(), OP)
}

/// Writes `bytes` to `path` via a sibling temp file and a rename, so readers
/// never observe a partial file.
pub fn atomic_write(path: &Path, bytes: &[u8], op: &'static str) -> Result<()> {
    let tmp = path.with_extension("tmp-write");
    std::fs::write(&tmp, bytes).map_err(|e| Error::Io { op, source: e })?;
    std::fs::rename(&tmp, path).map_err(|e| Error::Io { op, source: e })
}

/// Loads a space from the JSON schema, validating it as a metric measure
/// space. Distances are either taken verbatim (`dist`) or derived from
/// coordinates under the declared metric tag.
pub fn load_space(path: &Path) -> Result<FiniteMetricMeasureSpace> {
    const OP: &str = "generators::load_space";
    let body = std::fs::read_to_string(path).map_err(|e| Error::Io { op: OP, source: e })?;
    let file: SpaceFile = serde_json::from_str(&body).map_err(|e| Error::ParseError {
        op: OP,
        detail: format!("{}: {e}", path.display()),
    })?;
    let n = file.n;
    if file.mass.len() != n {
        return Err(Error::ValidationError {
            op: OP,
            detail: format!("mass has {} entries, header says n = {n}", file.mass.len()),
        });
    }
    let dist = match (file.dist, file.coords) {
        (Some(d), _) => {
            if d.len() != n * n {
                return Err(Error::ValidationError {
                    op: OP,
                    detail: format!("dist has {} entries, expected {}", d.len(), n * n),
                });
            }
            d
        }
        (None, Some(coords)) => {
            if coords.len() != n {
                return Err(Error::ValidationError {
                    op: OP,
                    detail: format!("coords has {} rows, header says n = {n}", coords.len()),
                });
            }
            let metric = file.metric.as_deref().ok_or_else(|| Error::ParseError {
                op: OP,
                detail: "coords form needs a metric tag".into(),
            })?;
            coords_to_dist(&coords, metric, file.periods.as_deref(), OP)?
        }
        (None, None) => {
            return Err(Error::ParseError {
                op: OP,
                detail: "space file needs either dist or coords".into(),
            })
        }
    };
    FiniteMetricMeasureSpace::new(dist, file.mass, file.meta)
}

fn coords_to_dist(
    coords: &[Vec<f64>],
    metric: &str,
    periods: Option<&[f64]>,
    op: &'static str,
) -> Result<Vec<f64>> {
    let n = coords.len();
    let dim = coords.first().map_or(0, |c| c.len());
    if coords.iter().any(|c| c.len() != dim) || dim == 0 {
        return Err(Error::ValidationError {
            op,
            detail: "coords rows must be nonempty and of equal length".into(),
        });
    }
    let mut dist = vec![0.0; n * n];
    match metric {
        "euclidean" => {
            for i in 0..n {
                for j in (i + 1)..n {
                    let d = coords[i]
                        .iter()
                        .zip(&coords[j])
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum::<f64>()
                        .sqrt();
                    dist[i * n + j] = d;
                    dist[j * n + i] = d;
                }
            }
        }
        "sphere_intrinsic" => {
            let norms: Vec<f64> =
                coords.iter().map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt()).collect();
            let r = norms[0];
            if r <= 0.0 || norms.iter().any(|&x| (x - r).abs() > 1e-9 * r.max(1.0)) {
                return Err(Error::ValidationError {
                    op,
                    detail: "sphere_intrinsic coords must share a common positive norm".into(),
                });
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    let dot: f64 = coords[i].iter().zip(&coords[j]).map(|(a, b)| a * b).sum();
                    let d = r * clamped_acos(dot / (r * r), op)?;
                    dist[i * n + j] = d;
                    dist[j * n + i] = d;
                }
            }
        }
        "torus_flat" => {
            let periods = periods.ok_or_else(|| Error::ParseError {
                op,
                detail: "torus_flat metric needs periods: [a, b]".into(),
            })?;
            if periods.len() != dim || periods.iter().any(|&p| !(p.is_finite() && p > 0.0)) {
                return Err(Error::ValidationError {
                    op,
                    detail: format!("periods must be {dim} positive reals"),
                });
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    let mut acc = 0.0;
                    for (k, &p) in periods.iter().enumerate() {
                        let raw = (coords[i][k] - coords[j][k]).abs() % p;
                        let w = raw.min(p - raw);
                        acc += w * w;
                    }
                    let d = acc.sqrt();
                    dist[i * n + j] = d;
                    dist[j * n + i] = d;
                }
            }
        }
        other => {
            return Err(Error::ParseError { op, detail: format!("unknown metric tag '{other}'") })
        }
    }
    Ok(dist)
}

/// Default connectivity scale for a space: three times the generator's fill
/// radius when provenance carries one, otherwise three times the largest
/// nearest-neighbor distance.
pub fn default_scale(space: &FiniteMetricMeasureSpace) -> Result<f64> {
    if let Some(f) = space.meta().and_then(|p| p.fill_radius) {
        if f > 0.0 {
            return Ok(3.0 * f);
        }
    }
    Ok(3.0 * space.max_nn_distance()?)
}
