//! Cheeger constant machinery: Minkowski boundary quotients at a fixed
//! resolution scale, exact subset enumeration on tiny spaces, and sweep-cut
//! upper bounds driven by scalar fields.
//!
//! The continuum boundary measure is a liminf as the neighborhood radius goes
//! to zero; on a finite space that quotient is identically zero below the
//! minimal point gap. All operations here therefore take an explicit scale
//! `epsilon`, tied by callers to the sampling resolution (the conventional
//! choice is three fill radii, matching the eigensolver's default graph
//! scale). Neighborhoods are open: a point enters `B_eps(A)` only when its
//! distance to `A` is strictly below `epsilon`. Callers deriving `epsilon`
//! from an exact lattice mesh should inflate it by a hair (`1 + 1e-9`) so
//! that points landing exactly on the scale are counted.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{default_scale, DEFAULT_SEED};
use crate::mmspace::{FiniteMetricMeasureSpace, ScalarField};

/// Largest point count for which `exact_cheeger` will enumerate all `2^n`
/// subsets.
pub const EXACT_ENUMERATION_LIMIT: usize = 20;

/// Number of seeded distance fields the dispatcher sweeps in addition to the
/// eigenfunction hint.
pub const SWEEP_PROBE_FIELDS: usize = 8;

/// Slack on the half-mass admissibility constraint `mass(A) <= 1/2`, matching
/// the probability normalization tolerance of the space itself.
const MASS_TOL: f64 = 1e-12;

/// How a cut was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutMethod {
    /// Full subset enumeration.
    BruteForce,
    /// Threshold sweep of a scalar field.
    Sweep,
    /// Caller-supplied subset, evaluated as-is.
    Explicit,
}

/// A subset with its Minkowski boundary estimate at a fixed scale.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutResult {
    /// Sorted point indices of the subset `A`.
    pub subset: Vec<usize>,
    /// Total mass of `A`; always in `(0, 1/2]` up to tolerance.
    pub mass: f64,
    /// `(mass(B_eps(A)) - mass(A)) / epsilon`.
    pub boundary: f64,
    /// `boundary / mass`, the isoperimetric quotient being minimized.
    pub ratio: f64,
    /// The neighborhood scale the boundary was measured at.
    pub epsilon: f64,
    /// How the cut was produced.
    pub method: CutMethod,
}

fn validate_epsilon(epsilon: f64, op: &'static str) -> Result<()> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::InvalidArgument {
            op,
            detail: format!("epsilon = {epsilon} must be positive and finite"),
        });
    }
    Ok(())
}

/// Validates a subset and returns it as a membership mask.
fn subset_mask(space: &FiniteMetricMeasureSpace, subset: &[usize], op: &'static str) -> Result<Vec<bool>> {
    let n = space.n();
    if subset.is_empty() {
        return Err(Error::InvalidCut { op, detail: "subset is empty".into() });
    }
    let mut mask = vec![false; n];
    for &i in subset {
        if i >= n {
            return Err(Error::InvalidCut {
                op,
                detail: format!("index {i} out of range for {n} points"),
            });
        }
        if mask[i] {
            return Err(Error::InvalidCut { op, detail: format!("index {i} appears twice") });
        }
        mask[i] = true;
    }
    if subset.len() == n {
        return Err(Error::InvalidCut { op, detail: "subset is the whole space".into() });
    }
    Ok(mask)
}

/// Minkowski boundary quotient of a subset at scale `r`: mass entering the
/// open `r`-neighborhood of `A`, per unit `r`.
pub fn minkowski_boundary(space: &FiniteMetricMeasureSpace, subset: &[usize], r: f64) -> Result<f64> {
    const OP: &str = "cheeger::minkowski_boundary";
    validate_epsilon(r, OP)?;
    let mask = subset_mask(space, subset, OP)?;
    let a_mass: f64 = subset.iter().map(|&i| space.mass()[i]).sum();
    let b_mass = space.neighborhood_mass(&mask, r);
    Ok((b_mass - a_mass) / r)
}

/// Evaluates a caller-supplied subset as a cut, without any optimization.
pub fn explicit_cut(space: &FiniteMetricMeasureSpace, subset: &[usize], epsilon: f64) -> Result<CutResult> {
    const OP: &str = "cheeger::explicit_cut";
    validate_epsilon(epsilon, OP)?;
    let mask = subset_mask(space, subset, OP)?;
    let a_mass: f64 = subset.iter().map(|&i| space.mass()[i]).sum();
    if a_mass > 0.5 + MASS_TOL {
        return Err(Error::InvalidCut {
            op: OP,
            detail: format!("subset mass {a_mass} exceeds 1/2"),
        });
    }
    let b_mass = space.neighborhood_mass(&mask, epsilon);
    let boundary = (b_mass - a_mass) / epsilon;
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    Ok(CutResult {
        subset: sorted,
        mass: a_mass,
        boundary,
        ratio: boundary / a_mass,
        epsilon,
        method: CutMethod::Explicit,
    })
}

/// A candidate in the enumeration, identified by its membership bitmask.
#[derive(Clone, Copy)]
struct MaskCandidate {
    ratio: f64,
    mask: u32,
}

/// Total order on candidates: ratio, then cardinality, then lexicographic
/// order of the sorted index lists. For equal cardinalities the lexicographic
/// comparison reduces to: whichever set contains the lowest differing index
/// comes first.
fn mask_cmp(a: &MaskCandidate, b: &MaskCandidate) -> std::cmp::Ordering {
    a.ratio
        .total_cmp(&b.ratio)
        .then_with(|| a.mask.count_ones().cmp(&b.mask.count_ones()))
        .then_with(|| {
            let diff = a.mask ^ b.mask;
            if diff == 0 {
                return std::cmp::Ordering::Equal;
            }
            let low = diff & diff.wrapping_neg();
            if a.mask & low != 0 {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        })
}

/// Exact Cheeger constant by enumerating every subset with
/// `0 < mass <= 1/2`. Only feasible on tiny spaces; ties are broken by
/// smaller cardinality, then lexicographically, so the result is unique.
pub fn exact_cheeger(space: &FiniteMetricMeasureSpace, epsilon: f64) -> Result<CutResult> {
    const OP: &str = "cheeger::exact_cheeger";
    validate_epsilon(epsilon, OP)?;
    let n = space.n();
    if n < 2 {
        return Err(Error::DegenerateSpace {
            op: OP,
            detail: format!("need at least 2 points, have {n}"),
        });
    }
    if n > EXACT_ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            op: OP,
            detail: format!("{n} points exceed the enumeration limit of {EXACT_ENUMERATION_LIMIT}"),
        });
    }
    let mass = space.mass();
    // near[x] = bitmask of subset members whose presence pulls x into the
    // open epsilon-neighborhood (always includes x itself).
    let near: Vec<u32> = (0..n)
        .map(|x| {
            let mut m = 0u32;
            for a in 0..n {
                if space.dist(x, a) < epsilon {
                    m |= 1 << a;
                }
            }
            m
        })
        .collect();

    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let best = (1u32..full)
        .into_par_iter()
        .filter_map(|subset| {
            let mut a_mass = 0.0;
            let mut bits = subset;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                a_mass += mass[i];
                bits &= bits - 1;
            }
            if a_mass > 0.5 + MASS_TOL {
                return None;
            }
            let mut b_mass = 0.0;
            for (x, &nx) in near.iter().enumerate() {
                if nx & subset != 0 {
                    b_mass += mass[x];
                }
            }
            let ratio = (b_mass - a_mass) / epsilon / a_mass;
            Some(MaskCandidate { ratio, mask: subset })
        })
        .min_by(mask_cmp)
        .expect("n >= 2 guarantees an admissible subset (some singleton has mass <= 1/2)");

    let subset: Vec<usize> = (0..n).filter(|&i| best.mask & (1 << i) != 0).collect();
    let a_mass: f64 = subset.iter().map(|&i| mass[i]).sum();
    let mask: Vec<bool> = (0..n).map(|i| best.mask & (1 << i) != 0).collect();
    let b_mass = space.neighborhood_mass(&mask, epsilon);
    let boundary = (b_mass - a_mass) / epsilon;
    Ok(CutResult {
        subset,
        mass: a_mass,
        boundary,
        ratio: boundary / a_mass,
        epsilon,
        method: CutMethod::BruteForce,
    })
}

/// Best prefix found by one directional sweep pass: the tracked selection key
/// plus enough information to materialize the subset afterwards.
struct PassBest {
    ratio: f64,
    size: usize,
}

/// Incremental sweep over the prefixes of `order`: after adding each point,
/// if the boundary between this prefix and the rest falls at a genuine level
/// change of `f` and the prefix mass is admissible, score it. Maintaining a
/// per-point count of subset members within `epsilon` makes each addition
/// O(neighbors) instead of O(n^2).
fn sweep_pass(
    space: &FiniteMetricMeasureSpace,
    f: &ScalarField,
    order: &[usize],
    near: &[Vec<u32>],
    epsilon: f64,
) -> Option<PassBest> {
    let n = order.len();
    let mass = space.mass();
    let mut cnt = vec![0u32; n];
    let mut a_mass = 0.0;
    let mut b_mass = 0.0;
    let mut best: Option<PassBest> = None;
    for k in 0..n - 1 {
        let a = order[k];
        a_mass += mass[a];
        for &x in &near[a] {
            let x = x as usize;
            if cnt[x] == 0 {
                b_mass += mass[x];
            }
            cnt[x] += 1;
        }
        // Prefix masses only grow: once inadmissible, every later prefix is.
        if a_mass > 0.5 + MASS_TOL {
            break;
        }
        // A threshold separates this prefix from the rest only at a genuine
        // change of the field value.
        if f[order[k]] == f[order[k + 1]] {
            continue;
        }
        let ratio = (b_mass - a_mass) / epsilon / a_mass;
        let better = match &best {
            None => true,
            // Strictly smaller ratio wins; ties prefer the smaller prefix,
            // and prefix sizes within one pass are distinct, so earlier wins.
            Some(b) => ratio < b.ratio,
        };
        if better {
            best = Some(PassBest { ratio, size: k + 1 });
        }
    }
    best
}

/// Orders candidate cuts: ratio, then cardinality, then lexicographic
/// comparison of the sorted index lists.
fn cut_cmp(a: &CutResult, b: &CutResult) -> std::cmp::Ordering {
    a.ratio
        .total_cmp(&b.ratio)
        .then_with(|| a.subset.len().cmp(&b.subset.len()))
        .then_with(|| a.subset.cmp(&b.subset))
}

/// Sweep-cut upper bound: thresholds at the midpoints between consecutive
/// distinct values of `f`, each yielding the superlevel set or its complement
/// (whichever satisfies the half-mass constraint); returns the best cut.
pub fn sweep_cheeger(
    space: &FiniteMetricMeasureSpace,
    f: &ScalarField,
    epsilon: f64,
) -> Result<CutResult> {
    const OP: &str = "cheeger::sweep_cheeger";
    validate_epsilon(epsilon, OP)?;
    let n = space.n();
    if n < 2 {
        return Err(Error::DegenerateSpace {
            op: OP,
            detail: format!("need at least 2 points, have {n}"),
        });
    }
    if f.len() != n {
        return Err(Error::InvalidArgument {
            op: OP,
            detail: format!("field has {} entries, space has {n}", f.len()),
        });
    }
    if let Some((i, &v)) = f.values().iter().enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(Error::InvalidArgument { op: OP, detail: format!("field[{i}] = {v} not finite") });
    }
    let lo = f.values().iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = f.values().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if lo == hi {
        return Err(Error::DegenerateField {
            op: OP,
            detail: "constant field has no level sets to sweep".into(),
        });
    }

    // Open-neighborhood adjacency (self included, distance 0 < epsilon).
    let near: Vec<Vec<u32>> = (0..n)
        .map(|a| (0..n).filter(|&x| space.dist(a, x) < epsilon).map(|x| x as u32).collect())
        .collect();

    // Ascending prefixes realize the sublevel sides {f <= t}; descending
    // prefixes the superlevel sides {f > t}. Together they visit every
    // admissible side of every threshold.
    let mut asc: Vec<usize> = (0..n).collect();
    asc.sort_by(|&i, &j| f[i].total_cmp(&f[j]).then(i.cmp(&j)));
    let desc: Vec<usize> = asc.iter().rev().cloned().collect();

    let mut candidates: Vec<CutResult> = Vec::new();
    for order in [&desc, &asc] {
        if let Some(b) = sweep_pass(space, f, order, &near, epsilon) {
            let mut subset: Vec<usize> = order[..b.size].to_vec();
            subset.sort_unstable();
            // Re-evaluate canonically so the reported numbers do not depend
            // on the incremental accumulation order.
            let mut cut = explicit_cut(space, &subset, epsilon)?;
            cut.method = CutMethod::Sweep;
            candidates.push(cut);
        }
    }
    candidates
        .into_iter()
        .min_by(|a, b| cut_cmp(a, b))
        .ok_or_else(|| Error::NumericalFailure {
            op: OP,
            detail: "no admissible threshold side found".into(),
        })
}

/// Cheeger constant estimate: exact enumeration when the space is tiny,
/// otherwise the best sweep cut over the eigenfunction hint (default: the
/// quadratic-case eigenfunction at the space's default scale) and
/// [`SWEEP_PROBE_FIELDS`] seeded distance fields.
pub fn cheeger(
    space: &FiniteMetricMeasureSpace,
    epsilon: f64,
    eig_hint: Option<&ScalarField>,
) -> Result<CutResult> {
    const OP: &str = "cheeger::cheeger";
    validate_epsilon(epsilon, OP)?;
    let n = space.n();
    if n <= EXACT_ENUMERATION_LIMIT {
        return exact_cheeger(space, epsilon);
    }

    let mut fields: Vec<ScalarField> = Vec::new();
    match eig_hint {
        Some(f) => fields.push(f.clone()),
        None => match default_scale(space).and_then(|h| crate::eigensolver::solve_p2_exact(space, h)) {
            Ok((_, f)) => fields.push(f),
            Err(e) => {
                log::warn!("{OP}: eigenfunction hint unavailable ({e}); sweeping distance fields only");
            }
        },
    }
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let probes = rand::seq::index::sample(&mut rng, n, SWEEP_PROBE_FIELDS.min(n));
    for y in probes {
        fields.push(ScalarField::from_fn(n, |i| space.dist(i, y)));
    }

    let sweeps: Vec<Result<CutResult>> =
        fields.par_iter().map(|f| sweep_cheeger(space, f, epsilon)).collect();
    let mut best: Option<CutResult> = None;
    let mut last_err: Option<Error> = None;
    for s in sweeps {
        match s {
            Ok(cut) => {
                let take = match &best {
                    None => true,
                    Some(b) => cut_cmp(&cut, b) == std::cmp::Ordering::Less,
                };
                if take {
                    best = Some(cut);
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    match best {
        Some(cut) => Ok(cut),
        None => Err(last_err.unwrap_or(Error::NumericalFailure {
            op: OP,
            detail: "every candidate sweep failed".into(),
        })),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mmspace::tests::{circle_space, uniform_space};
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    /// Four collinear unit-spaced points with uniform mass.
    fn collinear4() -> FiniteMetricMeasureSpace {
        let mut dist = vec![0.0; 16];
        for i in 0..4 {
            for j in 0..4 {
                dist[i * 4 + j] = (i as f64 - j as f64).abs();
            }
        }
        uniform_space(dist, 4)
    }

    /// Seeded random Euclidean space: n points in the unit square with
    /// nonuniform masses.
    fn random_space(n: usize, seed: u64) -> FiniteMetricMeasureSpace {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen::<f64>(), rng.gen::<f64>())).collect();
        let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..1.5)).collect();
        let total: f64 = raw.iter().sum();
        let mass: Vec<f64> = raw.iter().map(|m| m / total).collect();
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let (dx, dy) = (pts[i].0 - pts[j].0, pts[i].1 - pts[j].1);
                dist[i * n + j] = (dx * dx + dy * dy).sqrt();
            }
        }
        FiniteMetricMeasureSpace::new(dist, mass, None).unwrap()
    }

    #[test]
    fn boundary_saturates_beyond_diameter() {
        let s = collinear4();
        // r = 10 > diam = 3: the neighborhood is everything.
        let b = minkowski_boundary(&s, &[0, 1], 10.0).unwrap();
        assert!((b - 0.5 / 10.0).abs() < 1e-15, "b = {b}");
    }

    #[test]
    fn boundary_is_zero_below_the_minimal_gap() {
        let s = collinear4();
        assert_eq!(minkowski_boundary(&s, &[0, 1], 0.5).unwrap(), 0.0);
    }

    #[test]
    fn boundary_half_circle_hand_count() {
        // Circle N=400, A = contiguous half arc. The third lattice shell sits
        // exactly at 3 mesh steps, where the open-ball comparison is decided
        // by 1-ulp rounding order; probing just below and just above the tie
        // pins both counts. Below: 2 shells per side, boundary 2/(3 pi).
        // Above: 3 shells per side, boundary 1/pi, the continuum value.
        let n = 400;
        let c = circle_space(n);
        let arc: Vec<usize> = (0..n / 2).collect();
        let mesh = 2.0 * PI / n as f64;

        let deflated = 3.0 * mesh * (1.0 - 1e-9);
        let b_lo = minkowski_boundary(&c, &arc, deflated).unwrap();
        let want_lo = (4.0 / n as f64) / deflated;
        assert!((b_lo - want_lo).abs() < 1e-9 * want_lo, "b_lo = {b_lo} vs {want_lo}");
        assert!((b_lo - 2.0 / (3.0 * PI)).abs() < 1e-8);

        let inflated = 3.0 * mesh * (1.0 + 1e-9);
        let b = minkowski_boundary(&c, &arc, inflated).unwrap();
        let want = (6.0 / n as f64) / inflated;
        assert!((b - want).abs() < 1e-9 * want, "b = {b} vs {want}");
        let continuum = 1.0 / PI;
        assert!((b - continuum).abs() / continuum < 0.15, "b = {b} vs 1/pi");
    }

    #[test]
    fn boundary_rejects_bad_inputs() {
        let s = collinear4();
        assert!(matches!(minkowski_boundary(&s, &[], 1.0), Err(Error::InvalidCut { .. })));
        assert!(matches!(
            minkowski_boundary(&s, &[0, 1, 2, 3], 1.0),
            Err(Error::InvalidCut { .. })
        ));
        assert!(matches!(minkowski_boundary(&s, &[0, 0], 1.0), Err(Error::InvalidCut { .. })));
        assert!(matches!(minkowski_boundary(&s, &[7], 1.0), Err(Error::InvalidCut { .. })));
        assert!(matches!(minkowski_boundary(&s, &[0], 0.0), Err(Error::InvalidArgument { .. })));
        assert!(matches!(
            minkowski_boundary(&s, &[0], f64::NAN),
            Err(Error::InvalidArgument { .. })
        ));
    }

    #[test]
    fn exact_two_point_enumeration() {
        let s = uniform_space(vec![0.0, 1.0, 1.0, 0.0], 2);
        // Below the gap nothing enters the neighborhood: the quotient is
        // honestly zero at this scale, and the tie-break picks {0}.
        let cut = exact_cheeger(&s, 0.5).unwrap();
        assert_eq!(cut.subset, vec![0]);
        assert_eq!(cut.ratio, 0.0);
        assert_eq!(cut.method, CutMethod::BruteForce);

        // Above the gap the other point enters: boundary (1/2)/eps.
        let cut = exact_cheeger(&s, 1.5).unwrap();
        assert_eq!(cut.subset, vec![0]);
        assert!((cut.boundary - 0.5 / 1.5).abs() < 1e-15);
        assert!((cut.ratio - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn exact_collinear_four_prefers_an_end_pair() {
        // Hand enumeration at eps = 1.5: the end pair {0,1} admits only point
        // 2 into its neighborhood: boundary (1/4)/1.5 = 1/6, ratio 1/3. Every
        // other admissible subset scores 2/3 or worse; {2,3} ties and loses
        // lexicographically.
        let s = collinear4();
        let cut = exact_cheeger(&s, 1.5).unwrap();
        assert_eq!(cut.subset, vec![0, 1]);
        assert!((cut.mass - 0.5).abs() < 1e-15);
        assert!((cut.boundary - 1.0 / 6.0).abs() < 1e-15);
        assert!((cut.ratio - 1.0 / 3.0).abs() < 1e-15, "ratio = {}", cut.ratio);
    }

    #[test]
    fn exact_scaling_law() {
        let s = random_space(10, 41);
        let eps = 0.3;
        let base = exact_cheeger(&s, eps).unwrap();

        let scale = 3.7;
        let n = s.n();
        let dist: Vec<f64> = s.dist_matrix().iter().map(|d| d * scale).collect();
        let scaled = FiniteMetricMeasureSpace::new(dist, s.mass().to_vec(), None).unwrap();
        let cut = exact_cheeger(&scaled, eps * scale).unwrap();
        assert_eq!(cut.subset, base.subset);
        assert!(
            (cut.ratio - base.ratio / scale).abs() <= 1e-12 * base.ratio.max(1.0),
            "scaled ratio {} vs {}",
            cut.ratio,
            base.ratio / scale
        );
        assert!(n >= 2);
    }

    #[test]
    fn exact_circle20_finds_the_half_arc() {
        // 20-point circle at an inflated 3-mesh scale: every contiguous arc
        // admits 3 shells per side, so the ratio (6/20) / (eps * mass) is
        // minimized by the most massive admissible arc, a half circle. All 20
        // rotations tie exactly; the lexicographic rule picks {0..9}.
        let n = 20;
        let c = circle_space(n);
        let eps = 3.0 * (2.0 * PI / n as f64) * (1.0 + 1e-9);
        let cut = exact_cheeger(&c, eps).unwrap();
        assert_eq!(cut.subset, (0..10).collect::<Vec<_>>());
        let want = 2.0 / PI / (1.0 + 1e-9);
        assert!((cut.ratio - want).abs() < 1e-9, "ratio = {}", cut.ratio);
    }

    #[test]
    fn complement_symmetry_at_half_mass() {
        let n = 20;
        let c = circle_space(n);
        let eps = 3.0 * (2.0 * PI / n as f64) * (1.0 + 1e-9);
        let a = explicit_cut(&c, &(0..10).collect::<Vec<_>>(), eps).unwrap();
        let b = explicit_cut(&c, &(10..20).collect::<Vec<_>>(), eps).unwrap();
        assert!((a.ratio - b.ratio).abs() < 1e-12);
        assert_eq!(a.method, CutMethod::Explicit);
    }

    #[test]
    fn exact_rejects_oversized_spaces() {
        let c = circle_space(21);
        assert!(matches!(exact_cheeger(&c, 1.0), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn sweep_of_exact_indicator_recovers_the_exact_cut() {
        let s = random_space(12, 1009);
        let eps = 0.35;
        let exact = exact_cheeger(&s, eps).unwrap();
        let indicator =
            ScalarField::from_fn(s.n(), |i| if exact.subset.contains(&i) { 1.0 } else { 0.0 });
        let sweep = sweep_cheeger(&s, &indicator, eps).unwrap();
        assert_eq!(sweep.subset, exact.subset);
        assert_eq!(sweep.ratio, exact.ratio);
        assert_eq!(sweep.method, CutMethod::Sweep);
    }

    #[test]
    fn sweep_never_beats_exact() {
        let s = random_space(12, 77);
        let eps = 0.35;
        let exact = exact_cheeger(&s, eps).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for k in 0..6 {
            let f = if k < 3 {
                let y = rng.gen_range(0..s.n());
                ScalarField::from_fn(s.n(), |i| s.dist(i, y))
            } else {
                ScalarField::from_fn(s.n(), |_| rng.gen_range(-1.0..1.0))
            };
            let sweep = sweep_cheeger(&s, &f, eps).unwrap();
            assert!(
                sweep.ratio >= exact.ratio - 1e-12,
                "sweep {} undercut exact {}",
                sweep.ratio,
                exact.ratio
            );
        }
    }

    #[test]
    fn sweep_circle_eigenfunction_meets_the_isoperimetric_value() {
        // The quadratic-case eigenfunction on the circle is a single sine
        // wave, so its superlevel sets are arcs and the best admissible one
        // is a half circle: ratio 2/pi at an inflated 3-mesh scale.
        let n = 400;
        let c = circle_space(n);
        let mesh = 2.0 * PI / n as f64;
        let (_, f) = crate::eigensolver::solve_p2_exact(&c, 3.0 * mesh).unwrap();
        let eps = 3.0 * mesh * (1.0 + 1e-9);
        let cut = sweep_cheeger(&c, &f, eps).unwrap();
        let continuum = 2.0 / PI;
        assert!(
            (cut.ratio - continuum).abs() / continuum < 0.02,
            "ratio = {} vs 2/pi = {continuum}",
            cut.ratio
        );
        assert!((cut.mass - 0.5).abs() < 0.01, "mass = {}", cut.mass);
    }

    #[test]
    fn sweep_rejects_degenerate_fields() {
        let s = collinear4();
        let constant = ScalarField::from_fn(4, |_| 2.5);
        assert!(matches!(
            sweep_cheeger(&s, &constant, 1.0),
            Err(Error::DegenerateField { .. })
        ));
        let short = ScalarField::from_fn(3, |i| i as f64);
        assert!(matches!(
            sweep_cheeger(&s, &short, 1.0),
            Err(Error::InvalidArgument { .. })
        ));
    }

    #[test]
    fn dispatcher_uses_enumeration_on_tiny_spaces() {
        let s = random_space(16, 99);
        let eps = 0.35;
        let via_dispatch = cheeger(&s, eps, None).unwrap();
        let via_exact = exact_cheeger(&s, eps).unwrap();
        assert_eq!(via_dispatch.method, CutMethod::BruteForce);
        assert_eq!(via_dispatch.subset, via_exact.subset);
        assert_eq!(via_dispatch.ratio, via_exact.ratio);
    }

    #[test]
    fn dispatcher_circle_estimate_brackets_the_isoperimetric_value() {
        let n = 400;
        let c = circle_space(n);
        let eps = 3.0 * (2.0 * PI / n as f64) * (1.0 + 1e-9);
        let cut = cheeger(&c, eps, None).unwrap();
        assert_eq!(cut.method, CutMethod::Sweep);
        assert!(
            cut.ratio > 0.5 && cut.ratio < 0.8,
            "circle h estimate {} outside [0.5, 0.8]",
            cut.ratio
        );
    }

    #[test]
    fn dispatcher_accepts_an_explicit_hint() {
        let n = 400;
        let c = circle_space(n);
        let eps = 3.0 * (2.0 * PI / n as f64) * (1.0 + 1e-9);
        // A hand-made single wave: good enough to cut a half circle.
        let hint = ScalarField::from_fn(n, |i| (2.0 * PI * i as f64 / n as f64).sin());
        let cut = cheeger(&c, eps, Some(&hint)).unwrap();
        assert!((cut.ratio - 2.0 / PI).abs() / (2.0 / PI) < 0.02, "ratio = {}", cut.ratio);
    }
}
