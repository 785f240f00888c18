//! Finite metric measure spaces and the scale-local calculus on them.
//!
//! A [`FiniteMetricMeasureSpace`] is a full symmetric distance matrix plus a
//! strictly positive probability mass vector. All derivative notions are
//! discretized at an explicit connectivity scale `h`: the pointwise Lipschitz
//! constant of a field at `x` is the largest difference quotient over the
//! punctured ball `0 < dist(x, y) <= h`, balls of radius `r` are open
//! (`dist < r`), and path quantities run over the graph whose edges are the
//! pairs at distance `<= h`.
//!
//! Conventions that every caller can rely on:
//!
//! * indices are `0..n`, fields are indexed compatibly with the space;
//! * mass sums to one within `1e-12` and every atom is strictly positive;
//! * metric validation uses a relative tolerance of `1e-9 * max(dist)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How the space was produced: model name, numeric parameters, sample count,
/// seed, the generator's fill-radius estimate, and per-point model
/// coordinates (used to align spaces of the same family with each other).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Estimated max distance from any model point to its nearest sample.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fill_radius: Option<f64>,
    /// Per-point coordinates in the model's reference embedding.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<Vec<f64>>>,
}

/// A real-valued function on the points of a space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalarField {
    values: Vec<f64>,
}

impl ScalarField {
    pub fn new(values: Vec<f64>) -> Self {
        ScalarField { values }
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize) -> f64) -> Self {
        ScalarField { values: (0..n).map(f).collect() }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl std::ops::Index<usize> for ScalarField {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

impl From<Vec<f64>> for ScalarField {
    fn from(values: Vec<f64>) -> Self {
        ScalarField { values }
    }
}

/// Finite metric measure space: `n` points, row-major `n x n` distance
/// matrix, strictly positive probability masses.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiniteMetricMeasureSpace {
    n: usize,
    dist: Vec<f64>,
    mass: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<Provenance>,
}

/// Record of which centers, radii, and probe points an estimation run used.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub radii: Vec<f64>,
    pub centers: Vec<usize>,
    pub probe_points: Vec<usize>,
    pub scale: f64,
    /// Radii whose `3r`-neighborhood saturated the whole space (`3r > diam`);
    /// their ratios are reported as-is but are geometrically degenerate.
    pub saturated_radii: Vec<f64>,
}

/// Empirical structure constants of a space: a doubling exponent, a
/// (1,1)-Poincare constant, and a segment-inequality constant, each the max
/// of the defining ratio over the sampled centers, radii, and probe fields.
/// All three are lower bounds for the true constants by construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimatedConstants {
    pub kappa: f64,
    pub tau: f64,
    /// The `(q, p)` pair the Poincare ratio was evaluated for.
    pub poincare_exponents: (f64, f64),
    pub lambda_seg: f64,
    pub sample_spec: SampleSpec,
}

impl FiniteMetricMeasureSpace {
    /// Builds a space from a row-major distance matrix and a mass vector,
    /// validating metric axioms and the probability normalization.
    ///
    /// Symmetry and the triangle inequality are checked with relative
    /// tolerance `1e-9 * max(dist)`. The triangle check is exhaustive up to
    /// 400 points and switches to a seeded sample of triples above that (the
    /// exhaustive check is cubic and would dominate every pipeline).
    pub fn new(dist: Vec<f64>, mass: Vec<f64>, meta: Option<Provenance>) -> Result<Self> {
        const OP: &str = "mmspace::new";
        let n = mass.len();
        if n == 0 {
            return Err(Error::ValidationError { op: OP, detail: "empty mass vector".into() });
        }
        if dist.len() != n * n {
            return Err(Error::ValidationError {
                op: OP,
                detail: format!("distance matrix has {} entries, expected {}", dist.len(), n * n),
            });
        }
        let mut total = 0.0;
        for (i, &m) in mass.iter().enumerate() {
            if !(m.is_finite() && m > 0.0) {
                return Err(Error::ValidationError {
                    op: OP,
                    detail: format!("mass[{i}] = {m} is not strictly positive and finite"),
                });
            }
            total += m;
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::ValidationError {
                op: OP,
                detail: format!("mass sums to {total}, expected 1 within 1e-12"),
            });
        }
        let mut dmax = 0.0f64;
        for (k, &d) in dist.iter().enumerate() {
            if !d.is_finite() || d < 0.0 {
                return Err(Error::ValidationError {
                    op: OP,
                    detail: format!("dist entry {k} = {d} is not finite and nonnegative"),
                });
            }
            dmax = dmax.max(d);
        }
        let tol = 1e-9 * dmax;
        for i in 0..n {
            if dist[i * n + i] != 0.0 {
                return Err(Error::ValidationError {
                    op: OP,
                    detail: format!("dist[{i}][{i}] = {} is not zero", dist[i * n + i]),
                });
            }
            for j in (i + 1)..n {
                let dij = dist[i * n + j];
                let dji = dist[j * n + i];
                if (dij - dji).abs() > tol {
                    return Err(Error::ValidationError {
                        op: OP,
                        detail: format!("asymmetry at ({i},{j}): {dij} vs {dji}"),
                    });
                }
                if dij <= 0.0 {
                    return Err(Error::ValidationError {
                        op: OP,
                        detail: format!("dist[{i}][{j}] = {dij} but distinct points need positive distance"),
                    });
                }
            }
        }
        let space = FiniteMetricMeasureSpace { n, dist, mass, meta };
        space.check_triangle(tol)?;
        Ok(space)
    }

    fn check_triangle(&self, tol: f64) -> Result<()> {
        const OP: &str = "mmspace::new";
        let n = self.n;
        let check = |i: usize, j: usize, k: usize| -> Result<()> {
            let d = self.dist(i, k);
            let via = self.dist(i, j) + self.dist(j, k);
            if d > via + tol {
                return Err(Error::ValidationError {
                    op: OP,
                    detail: format!(
                        "triangle inequality fails: d({i},{k}) = {d} > d({i},{j}) + d({j},{k}) = {via}"
                    ),
                });
            }
            Ok(())
        };
        if n <= 400 {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        check(i, j, k)?;
                    }
                }
            }
        } else {
            // Deterministic sampled check for large spaces.
            let mut state = 0x9e3779b97f4a7c15u64;
            let mut next = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state
            };
            for _ in 0..2_000_000 {
                let i = (next() % n as u64) as usize;
                let j = (next() % n as u64) as usize;
                let k = (next() % n as u64) as usize;
                check(i, j, k)?;
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    /// The raw row-major distance matrix.
    pub fn dist_matrix(&self) -> &[f64] {
        &self.dist
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn meta(&self) -> Option<&Provenance> {
        self.meta.as_ref()
    }

    pub fn set_meta(&mut self, meta: Option<Provenance>) {
        self.meta = meta;
    }

    /// Largest pairwise distance. A single point has no diameter.
    pub fn diameter(&self) -> Result<f64> {
        if self.n < 2 {
            return Err(Error::DegenerateSpace {
                op: "mmspace::diameter",
                detail: format!("need at least 2 points, have {}", self.n),
            });
        }
        let mut d = 0.0f64;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                d = d.max(self.dist(i, j));
            }
        }
        Ok(d)
    }

    /// Mass of the open ball `{ y : dist(center, y) < r }`. Zero radius gives
    /// zero (open balls), and any `r > diam` gives one.
    pub fn ball_mass(&self, center: usize, r: f64) -> Result<f64> {
        const OP: &str = "mmspace::ball_mass";
        if center >= self.n {
            return Err(Error::InvalidArgument {
                op: OP,
                detail: format!("center {center} out of range for {} points", self.n),
            });
        }
        if !r.is_finite() {
            return Err(Error::InvalidArgument { op: OP, detail: format!("radius {r} not finite") });
        }
        let mut m = 0.0;
        for j in 0..self.n {
            if self.dist(center, j) < r {
                m += self.mass[j];
            }
        }
        Ok(m)
    }

    /// Mass of the open `r`-neighborhood of a set of indices.
    pub(crate) fn neighborhood_mass(&self, set: &[bool], r: f64) -> f64 {
        let mut m = 0.0;
        'outer: for j in 0..self.n {
            if set[j] {
                m += self.mass[j];
                continue;
            }
            for i in 0..self.n {
                if set[i] && self.dist(i, j) < r {
                    m += self.mass[j];
                    continue 'outer;
                }
            }
        }
        m
    }

    fn check_field(&self, f: &ScalarField, op: &'static str) -> Result<()> {
        if f.len() != self.n {
            return Err(Error::InvalidArgument {
                op,
                detail: format!("field has {} entries, space has {}", f.len(), self.n),
            });
        }
        if let Some((i, &v)) = f.values().iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidArgument { op, detail: format!("field[{i}] = {v} not finite") });
        }
        Ok(())
    }

    /// Pointwise Lipschitz constant of `f` at scale `h`: at each point the
    /// largest difference quotient `|f(x) - f(y)| / dist(x, y)` over
    /// `0 < dist(x, y) <= h`, and zero where that ball is empty.
    pub fn lip_field(&self, f: &ScalarField, h: f64) -> Result<ScalarField> {
        const OP: &str = "mmspace::lip_field";
        self.check_field(f, OP)?;
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::InvalidArgument { op: OP, detail: format!("scale h = {h} must be positive") });
        }
        let mut out = vec![0.0; self.n];
        for x in 0..self.n {
            let mut best = 0.0f64;
            for y in 0..self.n {
                let d = self.dist(x, y);
                if y != x && d <= h {
                    best = best.max((f[x] - f[y]).abs() / d);
                }
            }
            out[x] = best;
        }
        Ok(ScalarField::new(out))
    }

    /// Global Lipschitz constant: the largest difference quotient over all
    /// pairs of distinct points.
    pub fn global_lip(&self, f: &ScalarField) -> Result<f64> {
        const OP: &str = "mmspace::global_lip";
        self.check_field(f, OP)?;
        if self.n < 2 {
            return Err(Error::DegenerateSpace {
                op: OP,
                detail: "global Lipschitz constant needs at least 2 points".into(),
            });
        }
        let mut best = 0.0f64;
        for x in 0..self.n {
            for y in (x + 1)..self.n {
                best = best.max((f[x] - f[y]).abs() / self.dist(x, y));
            }
        }
        Ok(best)
    }

    /// Adjacency lists of the scale-`h` neighborhood graph: edges are the
    /// pairs at distance `0 < d <= h`, weighted by distance.
    pub(crate) fn neighbor_lists(&self, h: f64) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                let d = self.dist(i, j);
                if j != i && d <= h {
                    adj[i].push((j, d));
                }
            }
        }
        adj
    }

    /// Connected components of the scale-`h` graph, as a component id per
    /// point.
    pub(crate) fn components_at(&self, h: f64) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            stack.push(s);
            while let Some(x) = stack.pop() {
                for y in 0..self.n {
                    if comp[y] == usize::MAX && y != x && self.dist(x, y) <= h {
                        comp[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Largest nearest-neighbor distance; a scale proxy for spaces without
    /// generator provenance.
    pub fn max_nn_distance(&self) -> Result<f64> {
        if self.n < 2 {
            return Err(Error::DegenerateSpace {
                op: "mmspace::max_nn_distance",
                detail: "need at least 2 points".into(),
            });
        }
        let mut worst = 0.0f64;
        for i in 0..self.n {
            let mut nn = f64::INFINITY;
            for j in 0..self.n {
                if j != i {
                    nn = nn.min(self.dist(i, j));
                }
            }
            worst = worst.max(nn);
        }
        Ok(worst)
    }

    /// Discrete segment functional: the minimum, over shortest paths from
    /// `x` to `y` in the scale-`h` graph, of the trapezoidal integral of the
    /// nonnegative field `f` along the path. `x == y` gives zero; pairs in
    /// different components are an error.
    pub fn segment_functional(&self, f: &ScalarField, x: usize, y: usize, h: f64) -> Result<f64> {
        const OP: &str = "mmspace::segment_functional";
        self.check_field(f, OP)?;
        if x >= self.n || y >= self.n {
            return Err(Error::InvalidArgument {
                op: OP,
                detail: format!("endpoints ({x}, {y}) out of range for {} points", self.n),
            });
        }
        if let Some(v) = f.values().iter().find(|v| **v < 0.0) {
            return Err(Error::InvalidArgument {
                op: OP,
                detail: format!("field must be nonnegative, found {v}"),
            });
        }
        if x == y {
            return Ok(0.0);
        }
        let adj = self.neighbor_lists(h);
        let (dist, integral) = shortest_path_min_integral(&adj, f, x);
        if !dist[y].is_finite() {
            return Err(Error::Disconnected {
                op: OP,
                detail: format!("points {x} and {y} are in different components at scale h = {h}"),
            });
        }
        Ok(integral[y])
    }

    /// Estimates the doubling exponent, (1,1)-Poincare constant, and segment
    /// inequality constant by maximizing the defining ratios over
    /// `probe_count` seeded centers, the given radii, and probe fields
    /// (distance fields from `probe_count` seeded points plus any
    /// caller-supplied extras, e.g. cached eigenfunctions). `h` is the scale
    /// for Lipschitz fields and path integrals. Deterministic: the sampling
    /// seed is a fixed constant.
    pub fn estimate_constants(
        &self,
        radii: &[f64],
        probe_count: usize,
        h: f64,
        extra_fields: &[ScalarField],
    ) -> Result<EstimatedConstants> {
        const OP: &str = "mmspace::estimate_constants";
        if radii.is_empty() {
            return Err(Error::InvalidArgument { op: OP, detail: "empty radius list".into() });
        }
        for &r in radii {
            if !(r.is_finite() && r > 0.0) {
                return Err(Error::InvalidArgument {
                    op: OP,
                    detail: format!("radius {r} must be positive and finite"),
                });
            }
        }
        if probe_count == 0 {
            return Err(Error::InvalidArgument { op: OP, detail: "probe_count must be >= 1".into() });
        }
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::InvalidArgument { op: OP, detail: format!("scale h = {h} must be positive") });
        }
        let diam = self.diameter()?;

        // Fixed documented seed: estimation is deterministic by contract.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xC0FFEE);
        let centers: Vec<usize> = (0..probe_count).map(|_| rng.gen_range(0..self.n)).collect();
        let probe_points: Vec<usize> = (0..probe_count).map(|_| rng.gen_range(0..self.n)).collect();

        let mut fields: Vec<ScalarField> = probe_points
            .iter()
            .map(|&y| ScalarField::from_fn(self.n, |i| self.dist(i, y)))
            .collect();
        for f in extra_fields {
            self.check_field(f, OP)?;
            fields.push(f.clone());
        }
        let lips: Vec<ScalarField> =
            fields.iter().map(|f| self.lip_field(f, h)).collect::<Result<_>>()?;
        let adj = self.neighbor_lists(h);

        let mut kappa = 0.0f64;
        let mut tau = 0.0f64;
        let mut lambda_seg = 0.0f64;
        let mut saturated = Vec::new();

        for &r in radii {
            if 3.0 * r > diam && !saturated.contains(&r) {
                saturated.push(r);
            }
            for &x in &centers {
                let m_r = self.ball_mass(x, r)?;
                let m_2r = self.ball_mass(x, 2.0 * r)?;
                if m_r > 0.0 && m_2r > 0.0 {
                    kappa = kappa.max((m_2r / m_r).log2());
                }

                let ball: Vec<usize> = (0..self.n).filter(|&j| self.dist(x, j) < r).collect();
                let ball_mass: f64 = ball.iter().map(|&j| self.mass[j]).sum();
                if ball.is_empty() || ball_mass <= 0.0 {
                    continue;
                }
                for (f, lip) in fields.iter().zip(&lips) {
                    // (1,1)-Poincare ratio on the ball.
                    let avg: f64 = ball.iter().map(|&j| f[j] * self.mass[j]).sum::<f64>() / ball_mass;
                    let lhs: f64 =
                        ball.iter().map(|&j| (f[j] - avg).abs() * self.mass[j]).sum::<f64>() / ball_mass;
                    let rhs: f64 =
                        r * ball.iter().map(|&j| lip[j] * self.mass[j]).sum::<f64>() / ball_mass;
                    if rhs > 1e-300 {
                        tau = tau.max(lhs / rhs);
                    }

                    // Segment-inequality ratio: double integral of the path
                    // functional over the ball against r * mass(B) * integral
                    // of f over the 3r-ball. Fields are shifted to be
                    // nonnegative; pairs separated at scale h are skipped.
                    let fmin = f.values().iter().cloned().fold(f64::INFINITY, f64::min);
                    let shifted = ScalarField::from_fn(self.n, |i| f[i] - fmin);
                    let b3: f64 = (0..self.n)
                        .filter(|&j| self.dist(x, j) < 3.0 * r)
                        .map(|j| shifted[j] * self.mass[j])
                        .sum();
                    let denom = r * ball_mass * b3;
                    if denom <= 1e-300 {
                        continue;
                    }
                    let mut lhs_seg = 0.0;
                    for &ya in &ball {
                        let (d, integral) = shortest_path_min_integral(&adj, &shifted, ya);
                        for &za in &ball {
                            if d[za].is_finite() {
                                lhs_seg += integral[za] * self.mass[ya] * self.mass[za];
                            }
                        }
                    }
                    lambda_seg = lambda_seg.max(lhs_seg / denom);
                }
            }
        }

        Ok(EstimatedConstants {
            kappa,
            tau,
            poincare_exponents: (1.0, 1.0),
            lambda_seg,
            sample_spec: SampleSpec {
                radii: radii.to_vec(),
                centers,
                probe_points,
                scale: h,
                saturated_radii: saturated,
            },
        })
    }
}

/// Dijkstra from `src` over weighted adjacency lists, plus the minimum
/// trapezoidal `f`-integral over all tied shortest paths (dynamic program
/// across the shortest-path DAG in order of increasing distance; ties in path
/// length are resolved by taking the smaller integral, which is
/// order-independent).
fn shortest_path_min_integral(
    adj: &[Vec<(usize, f64)>],
    f: &ScalarField,
    src: usize,
) -> (Vec<f64>, Vec<f64>) {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;

    let n = adj.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut heap: BinaryHeap<Reverse<(ordered::F64, usize)>> = BinaryHeap::new();
    dist[src] = 0.0;
    heap.push(Reverse((ordered::F64(0.0), src)));
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    while let Some(Reverse((ordered::F64(d), x))) = heap.pop() {
        if seen[x] {
            continue;
        }
        seen[x] = true;
        order.push(x);
        for &(y, w) in &adj[x] {
            let nd = d + w;
            if nd < dist[y] {
                dist[y] = nd;
                heap.push(Reverse((ordered::F64(nd), y)));
            }
        }
    }

    let mut integral = vec![f64::INFINITY; n];
    integral[src] = 0.0;
    for &v in &order {
        if v == src {
            continue;
        }
        let tol = 1e-12 * dist[v].max(1.0);
        let mut best = f64::INFINITY;
        for &(u, w) in &adj[v] {
            if dist[u].is_finite() && (dist[u] + w - dist[v]).abs() <= tol {
                let cand = integral[u] + 0.5 * (f[u] + f[v]) * w;
                best = best.min(cand);
            }
        }
        integral[v] = best;
    }
    (dist, integral)
}

/// Total-order wrapper for finite f64 priorities.
mod ordered {
    #[derive(PartialEq, PartialOrd)]
    pub struct F64(pub f64);
    impl Eq for F64 {}
    #[allow(clippy::derive_ord_xor_partial_ord)]
    impl Ord for F64 {
        fn cmp(&self, other: &Self) -> std::cmp::Ordering {
            self.partial_cmp(other).expect("non-finite priority")
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn uniform_space(dist: Vec<f64>, n: usize) -> FiniteMetricMeasureSpace {
        FiniteMetricMeasureSpace::new(dist, vec![1.0 / n as f64; n], None).unwrap()
    }

    /// Circle of radius 1 with n equispaced samples, built directly from the
    /// arc-length metric (independent of the generators module).
    pub(crate) fn circle_space(n: usize) -> FiniteMetricMeasureSpace {
        let tau = 2.0 * std::f64::consts::PI;
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let gap = (i as f64 - j as f64).abs() * tau / n as f64;
                dist[i * n + j] = gap.min(tau - gap);
            }
        }
        uniform_space(dist, n)
    }

    #[test]
    fn new_validates_structure() {
        // Asymmetric.
        let d = vec![0.0, 1.0, 2.0, 0.0];
        assert!(matches!(
            FiniteMetricMeasureSpace::new(d, vec![0.5, 0.5], None),
            Err(Error::ValidationError { .. })
        ));
        // Triangle violation: d(0,2) = 10 > 1 + 1.
        let d = vec![0.0, 1.0, 10.0, 1.0, 0.0, 1.0, 10.0, 1.0, 0.0];
        assert!(matches!(
            FiniteMetricMeasureSpace::new(d, vec![0.25, 0.5, 0.25], None),
            Err(Error::ValidationError { .. })
        ));
        // Mass does not sum to one.
        let d = vec![0.0, 1.0, 1.0, 0.0];
        assert!(FiniteMetricMeasureSpace::new(d.clone(), vec![0.6, 0.6], None).is_err());
        // Nonpositive mass.
        assert!(FiniteMetricMeasureSpace::new(d.clone(), vec![1.0, 0.0], None).is_err());
        // Nonzero diagonal.
        let d = vec![0.1, 1.0, 1.0, 0.0];
        assert!(FiniteMetricMeasureSpace::new(d, vec![0.5, 0.5], None).is_err());
        // Zero off-diagonal distance.
        let d = vec![0.0, 0.0, 0.0, 0.0];
        assert!(FiniteMetricMeasureSpace::new(d, vec![0.5, 0.5], None).is_err());
    }

    #[test]
    fn diameter_basics() {
        let two = uniform_space(vec![0.0, 3.5, 3.5, 0.0], 2);
        assert_eq!(two.diameter().unwrap(), 3.5);
        let one = FiniteMetricMeasureSpace::new(vec![0.0], vec![1.0], None).unwrap();
        assert!(matches!(one.diameter(), Err(Error::DegenerateSpace { .. })));
    }

    #[test]
    fn ball_mass_open_ball_conventions() {
        let two = uniform_space(vec![0.0, 1.0, 1.0, 0.0], 2);
        assert_eq!(two.ball_mass(0, 0.0).unwrap(), 0.0); // open ball at r = 0
        assert_eq!(two.ball_mass(0, 1.0).unwrap(), 0.5); // boundary excluded
        assert_eq!(two.ball_mass(0, 1.0 + 1e-9).unwrap(), 1.0);
        assert_eq!(two.ball_mass(0, 99.0).unwrap(), 1.0); // beyond diam

        let c = circle_space(400);
        let mut prev = 0.0;
        for k in 1..10 {
            let m = c.ball_mass(7, 0.4 * k as f64).unwrap();
            assert!(m >= prev);
            prev = m;
        }
    }

    #[test]
    fn lip_field_matches_cosine_on_circle() {
        let n = 400;
        let c = circle_space(n);
        let f = ScalarField::from_fn(n, |i| (2.0 * std::f64::consts::PI * i as f64 / n as f64).sin());
        let h = 3.0 * 2.0 * std::f64::consts::PI / n as f64;
        let lip = c.lip_field(&f, h).unwrap();
        let max = lip.values().iter().cloned().fold(0.0f64, f64::max);
        assert!((max - 1.0).abs() < 2e-2, "max lip = {max}");
        // Pointwise close to |cos|.
        for i in (0..n).step_by(37) {
            let want = (2.0 * std::f64::consts::PI * i as f64 / n as f64).cos().abs();
            assert!((lip[i] - want).abs() < 0.05, "lip[{i}] = {} vs {want}", lip[i]);
        }
    }

    #[test]
    fn lip_field_isolated_point_is_zero() {
        // Two nearby points and one far away; at small h the far point sees
        // nobody.
        let d = vec![0.0, 1.0, 10.0, 1.0, 0.0, 10.0, 10.0, 10.0, 0.0];
        let s = uniform_space(d, 3);
        let f = ScalarField::new(vec![0.0, 5.0, 7.0]);
        let lip = s.lip_field(&f, 2.0).unwrap();
        assert_eq!(lip[2], 0.0);
        assert_eq!(lip[0], 5.0);
    }

    #[test]
    fn lip_field_monotone_in_h() {
        let c = circle_space(60);
        let f = ScalarField::from_fn(60, |i| ((i * i % 17) as f64).sin());
        let l1 = c.lip_field(&f, 0.2).unwrap();
        let l2 = c.lip_field(&f, 0.8).unwrap();
        for i in 0..60 {
            assert!(l2[i] >= l1[i] - 1e-15);
        }
    }

    #[test]
    fn global_lip_three_point_example() {
        let d = vec![0.0, 1.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0, 0.0];
        let s = uniform_space(d, 3);
        let f = ScalarField::new(vec![0.0, 2.0, 1.0]);
        assert_eq!(s.global_lip(&f).unwrap(), 2.0);
    }

    #[test]
    fn global_lip_dominates_scale_local_lip() {
        let c = circle_space(120);
        let f = ScalarField::from_fn(120, |i| (i as f64 * 0.37).sin() + 0.3 * (i as f64 * 0.11).cos());
        let g = c.global_lip(&f).unwrap();
        for &h in &[0.1, 0.5, 2.0] {
            let lip = c.lip_field(&f, h).unwrap();
            for i in 0..120 {
                assert!(lip[i] <= g + 1e-12);
            }
        }
        // On a well-sampled geodesic space the two agree within O(h).
        let f = ScalarField::from_fn(120, |i| (2.0 * std::f64::consts::PI * i as f64 / 120.0).sin());
        let g = c.global_lip(&f).unwrap();
        let lip = c.lip_field(&f, 3.0 * 2.0 * std::f64::consts::PI / 120.0).unwrap();
        let max = lip.values().iter().cloned().fold(0.0f64, f64::max);
        assert!((g - max).abs() < 0.1);
    }

    #[test]
    fn segment_functional_trapezoid_on_chain() {
        // Three collinear points, spacing 1, f linear: hand integration gives
        // 0.5 + 1.5 = 2.
        let d = vec![0.0, 1.0, 2.0, 1.0, 0.0, 1.0, 2.0, 1.0, 0.0];
        let s = uniform_space(d, 3);
        let f = ScalarField::new(vec![0.0, 1.0, 2.0]);
        let v = s.segment_functional(&f, 0, 2, 1.1).unwrap();
        assert!((v - 2.0).abs() < 1e-12, "integral = {v}");
        assert_eq!(s.segment_functional(&f, 1, 1, 1.1).unwrap(), 0.0);
    }

    #[test]
    fn segment_functional_minimizes_over_tied_paths() {
        // Unit square cycle: two tied shortest paths from 0 to 2; the cheaper
        // integral (via vertex 3) must win.
        let r2 = std::f64::consts::SQRT_2;
        let d = vec![
            0.0, 1.0, r2, 1.0, //
            1.0, 0.0, 1.0, r2, //
            r2, 1.0, 0.0, 1.0, //
            1.0, r2, 1.0, 0.0,
        ];
        let s = uniform_space(d, 4);
        let f = ScalarField::new(vec![0.0, 5.0, 0.0, 1.0]);
        let v = s.segment_functional(&f, 0, 2, 1.0).unwrap();
        assert!((v - 1.0).abs() < 1e-12, "integral = {v}");
    }

    #[test]
    fn segment_functional_errors() {
        let d = vec![0.0, 1.0, 10.0, 1.0, 0.0, 10.0, 10.0, 10.0, 0.0];
        let s = uniform_space(d, 3);
        let f = ScalarField::new(vec![0.0, 1.0, 2.0]);
        assert!(matches!(
            s.segment_functional(&f, 0, 2, 2.0),
            Err(Error::Disconnected { .. })
        ));
        let neg = ScalarField::new(vec![-1.0, 0.0, 0.0]);
        assert!(matches!(
            s.segment_functional(&neg, 0, 1, 2.0),
            Err(Error::InvalidArgument { .. })
        ));
    }

    #[test]
    fn permutation_equivariance() {
        let c = circle_space(24);
        let f = ScalarField::from_fn(24, |i| (i as f64 * 0.7).sin());
        // Rotate labels by 5.
        let n = 24;
        let perm: Vec<usize> = (0..n).map(|i| (i + 5) % n).collect();
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                dist[i * n + j] = c.dist(perm[i], perm[j]);
            }
        }
        let mass: Vec<f64> = (0..n).map(|i| c.mass()[perm[i]]).collect();
        let cp = FiniteMetricMeasureSpace::new(dist, mass, None).unwrap();
        let fp = ScalarField::from_fn(n, |i| f[perm[i]]);

        assert!((c.diameter().unwrap() - cp.diameter().unwrap()).abs() < 1e-12);
        assert!((c.global_lip(&f).unwrap() - cp.global_lip(&fp).unwrap()).abs() < 1e-12);
        let (l, lp) = (c.lip_field(&f, 0.9).unwrap(), cp.lip_field(&fp, 0.9).unwrap());
        for i in 0..n {
            assert!((l[perm[i]] - lp[i]).abs() < 1e-12);
        }
        for i in 0..n {
            let (a, b) = (c.ball_mass(perm[i], 0.77).unwrap(), cp.ball_mass(i, 0.77).unwrap());
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn estimate_constants_doubling_on_circle() {
        let c = circle_space(400);
        let est = c.estimate_constants(&[0.4, 0.8], 3, 0.05, &[]).unwrap();
        assert!((est.kappa - 1.0).abs() < 0.2, "kappa = {}", est.kappa);
        assert!(est.tau.is_finite() && est.tau > 0.0 && est.tau < 50.0, "tau = {}", est.tau);
        assert!(
            est.lambda_seg.is_finite() && est.lambda_seg > 0.0,
            "lambda_seg = {}",
            est.lambda_seg
        );
        assert_eq!(est.sample_spec.centers.len(), 3);
        assert!(est.sample_spec.saturated_radii.is_empty());
    }

    #[test]
    fn estimate_constants_two_point_doubling_is_zero() {
        let s = uniform_space(vec![0.0, 1.0, 1.0, 0.0], 2);
        let est = s.estimate_constants(&[0.5], 2, 1.5, &[]).unwrap();
        assert_eq!(est.kappa, 0.0);
        // 3 * 0.5 > diam = 1, so the radius saturates.
        assert_eq!(est.sample_spec.saturated_radii, vec![0.5]);
    }

    #[test]
    fn estimate_constants_rejects_empty_radii() {
        let s = uniform_space(vec![0.0, 1.0, 1.0, 0.0], 2);
        assert!(matches!(
            s.estimate_constants(&[], 2, 1.0, &[]),
            Err(Error::InvalidArgument { .. })
        ));
    }
}
