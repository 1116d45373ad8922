//! Constant-curvature primitives, Poisson process samplers in geodesic
//! balls, Gilbert-graph functionals and the hyperbolic hyperplane chord
//! sampler.
//!
//! Points are stored in embedding coordinates: `ℝ^d` for flat space, the
//! hyperboloid `−x0² + Σ xi² = −1` for negative curvature and the unit
//! sphere for positive curvature, with distances rescaled by `|κ|^{−1/2}`.

use std::collections::HashMap;
use std::io::Write;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::applications::{ball_volume, SmallGraph, SpaceSpec};
use crate::error::{ensure, Error, Result};
use crate::quad::{gk15, integrate_default};
use crate::rng::{stream, Family};
use crate::special::omega;

/// Points of one Poisson sample in a ball of radius `r` around the origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSample {
    pub space: SpaceSpec,
    pub r: f64,
    pub points: Vec<Vec<f64>>,
    pub seed: u64,
}

impl PointSample {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Embedding dimension for a space.
pub fn embedding_dim(space: &SpaceSpec) -> usize {
    if space.kappa == 0.0 {
        space.d
    } else {
        space.d + 1
    }
}

/// The point at distance `s` from the origin in unit direction `u`.
pub fn embed(space: &SpaceSpec, s: f64, u: &[f64]) -> Vec<f64> {
    let k = space.kappa;
    if k == 0.0 {
        return u.iter().map(|c| s * c).collect();
    }
    let x = k.abs().sqrt() * s;
    let (head, tail) = if k < 0.0 { (x.cosh(), x.sinh()) } else { (x.cos(), x.sin()) };
    std::iter::once(head).chain(u.iter().map(|c| tail * c)).collect()
}

/// The origin of the model.
pub fn origin(space: &SpaceSpec) -> Vec<f64> {
    embed(space, 0.0, &vec![0.0; space.d])
}

/// Checks that `x` lies on the model within `1e−9`.
pub fn check_point(space: &SpaceSpec, x: &[f64]) -> Result<()> {
    ensure(x.len() == embedding_dim(space), || {
        format!("point has {} coordinates, expected {}", x.len(), embedding_dim(space))
    })?;
    let sq: f64 = x.iter().skip(1).map(|c| c * c).sum();
    let defect = if space.kappa < 0.0 {
        (x[0] * x[0] - sq - 1.0) / (x[0] * x[0])
    } else if space.kappa > 0.0 {
        x[0] * x[0] + sq - 1.0
    } else {
        0.0
    };
    ensure(defect.abs() <= 1e-9 && (space.kappa >= 0.0 || x[0] > 0.0), || {
        format!("point off the model by {defect}")
    })
}

/// Geodesic distance, via the chord forms `2 asinh(‖x−y‖_M/2)` and
/// `2 asin(‖x−y‖/2)` that stay accurate for nearby points.
pub fn dist(space: &SpaceSpec, x: &[f64], y: &[f64]) -> f64 {
    let k = space.kappa;
    let sq: f64 = x.iter().zip(y).skip(if k < 0.0 { 1 } else { 0 }).map(|(a, b)| (a - b) * (a - b)).sum();
    if k == 0.0 {
        return sq.sqrt();
    }
    if k < 0.0 {
        let dt = x[0] - y[0];
        let m = (sq - dt * dt).max(0.0).sqrt();
        2.0 * (m / 2.0).asinh() / (-k).sqrt()
    } else {
        2.0 * (sq.sqrt() / 2.0).min(1.0).asin() / k.sqrt()
    }
}

/// Distance with validation of both points.
pub fn dist_checked(space: &SpaceSpec, x: &[f64], y: &[f64]) -> Result<f64> {
    check_point(space, x)?;
    check_point(space, y)?;
    Ok(dist(space, x, y))
}

/// Number of knots in an [`InverseCdf`] table.
pub const KNOTS: usize = 1024;

/// Inverse distribution function of a positive density on `[0, r]`, using a
/// table of cumulative masses and bisection to `1e−12` inside each cell.
pub struct InverseCdf<F: Fn(f64) -> f64> {
    density: F,
    r: f64,
    cum: Vec<f64>,
}

impl<F: Fn(f64) -> f64> InverseCdf<F> {
    pub fn new(density: F, r: f64) -> Self {
        let h = r / KNOTS as f64;
        let mut cum = Vec::with_capacity(KNOTS + 1);
        cum.push(0.0);
        for i in 0..KNOTS {
            let (a, b) = (i as f64 * h, (i + 1) as f64 * h);
            let v = integrate_default(&density, a, b);
            cum.push(cum[i] + v);
        }
        Self { density, r, cum }
    }

    pub fn total(&self) -> f64 {
        self.cum[KNOTS]
    }

    /// `s` with `∫₀^s density = u · total`.
    pub fn invert(&self, u: f64) -> f64 {
        let target = u.clamp(0.0, 1.0) * self.total();
        let i = self.cum.partition_point(|c| *c <= target).clamp(1, KNOTS) - 1;
        let h = self.r / KNOTS as f64;
        let a0 = i as f64 * h;
        let (mut lo, mut hi) = (a0, (a0 + h).min(self.r));
        let rest = target - self.cum[i];
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if gk15(&self.density, a0, mid).0 < rest {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-12 * self.r.max(1e-300) {
                break;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Reusable sampler of homogeneous Poisson processes in a geodesic ball.
pub struct BallSampler {
    space: SpaceSpec,
    r: f64,
    mean: f64,
    radial: Option<InverseCdf<Box<dyn Fn(f64) -> f64 + Send + Sync>>>,
}

impl BallSampler {
    pub fn new(space: SpaceSpec, r: f64, gamma: f64) -> Result<Self> {
        ensure(gamma >= 0.0 && gamma.is_finite(), || format!("gamma must be >= 0, got {gamma}"))?;
        let volume = ball_volume(&space, r)?;
        let d = space.d as i32;
        let k = space.kappa;
        let radial = if k == 0.0 {
            None
        } else {
            let c = k.abs().sqrt();
            let f: Box<dyn Fn(f64) -> f64 + Send + Sync> = if k < 0.0 {
                Box::new(move |s: f64| (c * s).sinh().powi(d - 1))
            } else {
                Box::new(move |s: f64| (c * s).sin().powi(d - 1))
            };
            Some(InverseCdf::new(f, r))
        };
        Ok(Self {
            space,
            r,
            mean: gamma * volume,
            radial,
        })
    }

    /// Expected number of points.
    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng, seed: u64) -> PointSample {
        let n = poisson_draw(self.mean, rng);
        let d = self.space.d;
        let points = (0..n)
            .map(|_| {
                let u: f64 = rng.random();
                let s = match &self.radial {
                    None => self.r * u.powf(1.0 / d as f64),
                    Some(inv) => inv.invert(u),
                };
                embed(&self.space, s, &unit_vector(d, rng))
            })
            .collect();
        PointSample {
            space: self.space,
            r: self.r,
            points,
            seed,
        }
    }
}

pub(crate) fn poisson_draw(mean: f64, rng: &mut ChaCha8Rng) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    Poisson::new(mean).map(|p| p.sample(rng) as u64).unwrap_or(0)
}

fn unit_vector(d: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| StandardNormal.sample(rng)).collect();
        let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if n > 1e-12 {
            return v.into_iter().map(|c| c / n).collect();
        }
    }
}

/// One Poisson sample of intensity `γ` in the ball of radius `r`.
pub fn sample_ppp_ball(space: &SpaceSpec, r: f64, gamma: f64, seed: u64) -> Result<PointSample> {
    let sampler = BallSampler::new(*space, r, gamma)?;
    Ok(sampler.sample(&mut stream(seed, Family::Replicate, 0), seed))
}

/// Pairs `(i, j, dist)` with `i < j` and `dist <= ρ`; grid-bucketed in flat
/// space.
pub fn close_pairs(sample: &PointSample, rho: f64) -> Vec<(usize, usize, f64)> {
    if sample.space.kappa == 0.0 && rho > 0.0 && sample.len() > 32 {
        close_pairs_bucketed(sample, rho)
    } else {
        close_pairs_brute(sample, rho)
    }
}

/// Quadratic reference enumeration of close pairs.
pub fn close_pairs_brute(sample: &PointSample, rho: f64) -> Vec<(usize, usize, f64)> {
    let pts = &sample.points;
    let mut out = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = dist(&sample.space, &pts[i], &pts[j]);
            if d <= rho {
                out.push((i, j, d));
            }
        }
    }
    out
}

fn close_pairs_bucketed(sample: &PointSample, rho: f64) -> Vec<(usize, usize, f64)> {
    let pts = &sample.points;
    let d = sample.space.d;
    let cell = |p: &[f64]| -> Vec<i64> { p.iter().map(|c| (c / rho).floor() as i64).collect() };
    let mut grid: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    for (i, p) in pts.iter().enumerate() {
        grid.entry(cell(p)).or_default().push(i);
    }
    let offsets: Vec<Vec<i64>> = (0..3usize.pow(d as u32))
        .map(|mut code| {
            (0..d)
                .map(|_| {
                    let o = (code % 3) as i64 - 1;
                    code /= 3;
                    o
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        let c = cell(p);
        for off in &offsets {
            let key: Vec<i64> = c.iter().zip(off).map(|(a, b)| a + b).collect();
            if let Some(bucket) = grid.get(&key) {
                for &j in bucket {
                    if j > i {
                        let dd = dist(&sample.space, p, &pts[j]);
                        if dd <= rho {
                            out.push((i, j, dd));
                        }
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    out
}

/// Number of edges of the Gilbert graph with connection radius `ρ`.
pub fn edge_count(sample: &PointSample, rho: f64) -> u64 {
    close_pairs(sample, rho).len() as u64
}

/// `(1/2) Σ_{x≠y} dist(x,y)^τ 1{dist <= ρ}`, i.e. the sum over edges.
pub fn power_edge_length(sample: &PointSample, rho: f64, tau: f64) -> f64 {
    close_pairs(sample, rho).iter().map(|&(_, _, d)| if tau == 0.0 { 1.0 } else { d.powf(tau) }).sum()
}

/// Adjacency lists of the Gilbert graph.
pub fn adjacency(sample: &PointSample, rho: f64) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); sample.len()];
    for (i, j, _) in close_pairs(sample, rho) {
        adj[i].push(j);
        adj[j].push(i);
    }
    adj
}

/// Number of subgraphs of the Gilbert graph isomorphic to `h`.
///
/// Connected vertex sets of size `|V(h)|` are listed with the ESU scheme;
/// for each set, injective maps sending edges of `h` to graph edges are
/// counted and divided by `|Aut(h)|`.
pub fn included_subgraph_count(sample: &PointSample, rho: f64, h: SmallGraph) -> u64 {
    let adj = adjacency(sample, rho);
    count_subgraphs(&adj, h)
}

/// [`included_subgraph_count`] on an explicit graph.
pub fn count_subgraphs(adj: &[Vec<usize>], h: SmallGraph) -> u64 {
    let k = h.order();
    let n = adj.len();
    let adj: Vec<Vec<usize>> = adj
        .iter()
        .map(|a| {
            let mut a = a.clone();
            a.sort_unstable();
            a
        })
        .collect();
    if h == SmallGraph::Triangle {
        return count_triangles(&adj);
    }
    // covered[u] counts members of the current set equal or adjacent to u
    let mut covered = vec![0u32; n];
    let mut total = 0u64;
    let mut sub = Vec::with_capacity(k);
    for v in 0..n {
        let ext: Vec<usize> = adj[v].iter().copied().filter(|&w| w > v).collect();
        sub.push(v);
        cover(&adj, &mut covered, v, 1);
        esu_extend(&adj, &mut sub, &mut covered, ext, v, k, &mut |s| total += embeddings(&adj, s, h));
        cover(&adj, &mut covered, v, -1);
        sub.pop();
    }
    total / h.automorphisms() as u64
}

/// Triangles `u < v < w` via sorted neighbour-list intersection.
fn count_triangles(adj: &[Vec<usize>]) -> u64 {
    let mut total = 0u64;
    for (u, nu) in adj.iter().enumerate() {
        for &v in nu.iter().filter(|&&v| v > u) {
            let (mut i, mut j) = (0, 0);
            let nv = &adj[v];
            while i < nu.len() && j < nv.len() {
                match nu[i].cmp(&nv[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        if nu[i] > v {
                            total += 1;
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
    }
    total
}

fn cover(adj: &[Vec<usize>], covered: &mut [u32], w: usize, delta: i32) {
    let apply = |c: &mut u32| *c = c.wrapping_add_signed(delta);
    apply(&mut covered[w]);
    for &u in &adj[w] {
        apply(&mut covered[u]);
    }
}

fn esu_extend(
    adj: &[Vec<usize>],
    sub: &mut Vec<usize>,
    covered: &mut [u32],
    mut ext: Vec<usize>,
    root: usize,
    k: usize,
    visit: &mut dyn FnMut(&[usize]),
) {
    if sub.len() == k {
        visit(sub);
        return;
    }
    while let Some(w) = ext.pop() {
        if sub.len() + 1 == k {
            sub.push(w);
            visit(sub);
            sub.pop();
            continue;
        }
        let mut next = ext.clone();
        // exclusive neighbourhood of w relative to the current set
        next.extend(adj[w].iter().copied().filter(|&u| u > root && covered[u] == 0));
        sub.push(w);
        cover(adj, covered, w, 1);
        esu_extend(adj, sub, covered, next, root, k, visit);
        cover(adj, covered, w, -1);
        sub.pop();
    }
}

fn embeddings(adj: &[Vec<usize>], set: &[usize], h: SmallGraph) -> u64 {
    let k = set.len();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut count = 0;
    let ok = |p: &[usize]| {
        h.edges()
            .iter()
            .all(|&(a, b)| adj[set[p[a]]].binary_search(&set[p[b]]).is_ok())
    };
    loop {
        if ok(&perm) {
            count += 1;
        }
        if !next_permutation(&mut perm) {
            return count;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// `(d−1)`-volume of the intersection of `B_r` with a hyperplane at distance
/// `s` from the centre, in the hyperbolic space of curvature −1:
/// `ω_{d−1} ∫₀^{arccosh(cosh r/cosh s)} sinh^{d−2}`.
pub fn chord_length(d: usize, r: f64, s: f64) -> Result<f64> {
    ensure(d >= 2, || format!("dimension must be >= 2, got {d}"))?;
    if !(0.0..=r).contains(&s) {
        return Err(Error::InvalidArgument(format!("need 0 <= s <= r = {r}, got {s}")));
    }
    let ratio = (r.cosh() / s.cosh()).max(1.0);
    let a = ratio.acosh();
    Ok(match d {
        2 => 2.0 * a,
        3 => omega(2) * (ratio - 1.0),
        _ => omega(d - 1) * integrate_default(|x| x.sinh().powi(d as i32 - 2), 0.0, a),
    })
}

/// Distances to the origin of the hyperplanes of one Poisson sample that
/// hit `B_r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChordSample {
    pub d: usize,
    pub r: f64,
    pub distances: Vec<f64>,
    pub seed: u64,
}

/// Reusable sampler of hyperbolic hyperplanes hitting `B_r`.
pub struct ChordSampler {
    d: usize,
    r: f64,
    mean: f64,
    inv: Option<InverseCdf<Box<dyn Fn(f64) -> f64 + Send + Sync>>>,
}

impl ChordSampler {
    pub fn new(d: usize, r: f64, gamma: f64) -> Result<Self> {
        ensure(d >= 2 && r > 0.0 && gamma >= 0.0, || {
            format!("need d >= 2, r > 0, gamma >= 0; got ({d}, {r}, {gamma})")
        })?;
        let p = d as i32 - 1;
        let mass = 2.0 * integrate_default(|s| s.cosh().powi(p), 0.0, r);
        let inv = (d > 2).then(|| {
            let f: Box<dyn Fn(f64) -> f64 + Send + Sync> = Box::new(move |s: f64| s.cosh().powi(p));
            InverseCdf::new(f, r)
        });
        Ok(Self {
            d,
            r,
            mean: gamma * mass,
            inv,
        })
    }

    pub fn mean_count(&self) -> f64 {
        self.mean
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng, seed: u64) -> ChordSample {
        let n = poisson_draw(self.mean, rng);
        let distances = (0..n)
            .map(|_| {
                let u: f64 = rng.random();
                match &self.inv {
                    None => (u * self.r.sinh()).asinh().min(self.r),
                    Some(inv) => inv.invert(u),
                }
            })
            .collect();
        ChordSample {
            d: self.d,
            r: self.r,
            distances,
            seed,
        }
    }
}

pub fn sample_hyperbolic_chords(d: usize, r: f64, gamma: f64, seed: u64) -> Result<ChordSample> {
    let sampler = ChordSampler::new(d, r, gamma)?;
    Ok(sampler.sample(&mut stream(seed, Family::Replicate, 0), seed))
}

/// Total surface area of the sampled hyperplanes inside `B_r`.
pub fn f1_hyperbolic(chords: &ChordSample) -> f64 {
    chords
        .distances
        .iter()
        .map(|&s| chord_length(chords.d, chords.r, s.min(chords.r)).unwrap_or(0.0))
        .sum()
}

/// Writes samples as CSV with header `replicate,index,x0,…`.
pub fn write_samples_csv<W: Write>(samples: &[PointSample], mut out: W) -> std::io::Result<()> {
    let dim = samples.first().map(|s| embedding_dim(&s.space)).unwrap_or(0);
    let cols: Vec<String> = (0..dim).map(|i| format!("x{i}")).collect();
    writeln!(out, "replicate,index,{}", cols.join(","))?;
    for (rep, s) in samples.iter().enumerate() {
        for (i, p) in s.points.iter().enumerate() {
            let coords: Vec<String> = p.iter().map(|c| format!("{c:.17e}")).collect();
            writeln!(out, "{rep},{i},{}", coords.join(","))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::SeedableRng;

    fn flat(d: usize) -> SpaceSpec {
        SpaceSpec::euclidean(d)
    }

    #[test]
    fn distance_examples() {
        assert_eq!(dist(&flat(2), &[0.0, 0.0], &[3.0, 4.0]), 5.0);
        let h = SpaceSpec::new(-1.0, 2).unwrap();
        let x = embed(&h, 1.0, &[1.0, 0.0]);
        let y = embed(&h, 1.0, &[-1.0, 0.0]);
        assert_relative_eq!(dist(&h, &x, &y), 2.0, max_relative = 1e-14);
        assert_eq!(dist(&h, &x, &x), 0.0);
        assert_relative_eq!(dist(&h, &origin(&h), &x), 1.0, max_relative = 1e-14);
        let s = SpaceSpec::new(4.0, 3).unwrap();
        let x = embed(&s, 0.3, &[0.0, 1.0, 0.0]);
        assert_relative_eq!(dist(&s, &origin(&s), &x), 0.3, max_relative = 1e-14);
        assert!(check_point(&h, &[1.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn inverse_cdf_matches_closed_form() {
        let r = 2.0;
        let inv = InverseCdf::new(|s: f64| s.cosh(), r);
        for u in [0.0, 0.1, 0.37, 0.9, 1.0] {
            assert_relative_eq!(inv.invert(u), (u * r.sinh()).asinh(), epsilon = 1e-11);
        }
    }

    #[test]
    fn samples_stay_in_window() {
        for kappa in [-1.0, 0.0, 1.0] {
            let sp = SpaceSpec::new(kappa, 3).unwrap();
            let s = sample_ppp_ball(&sp, 1.2, 5.0, 7).unwrap();
            let o = origin(&sp);
            for p in &s.points {
                check_point(&sp, p).unwrap();
                assert!(dist(&sp, &o, p) <= 1.2 + 1e-9);
            }
            assert_eq!(s, sample_ppp_ball(&sp, 1.2, 5.0, 7).unwrap());
        }
        assert!(sample_ppp_ball(&flat(2), 1.0, 0.0, 1).unwrap().is_empty());
    }

    #[test]
    fn bucketed_pairs_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for trial in 0..20 {
            let d = 2 + trial % 2;
            let s = BallSampler::new(flat(d), 1.0, 60.0).unwrap().sample(&mut rng, 0);
            for rho in [0.05, 0.2, 0.5] {
                assert_eq!(close_pairs_bucketed(&s, rho), close_pairs_brute(&s, rho));
            }
        }
    }

    #[test]
    fn power_length_examples() {
        let s = PointSample {
            space: flat(2),
            r: 1.0,
            points: vec![vec![0.0, 0.0], vec![0.5, 0.0]],
            seed: 0,
        };
        assert_relative_eq!(power_edge_length(&s, 1.0, 1.0), 0.5);
        assert_eq!(power_edge_length(&s, 1.0, 0.0), 1.0);
        assert_eq!(edge_count(&s, 0.4), 0);
    }

    #[test]
    fn small_subgraph_counts() {
        let tri = vec![vec![1, 2], vec![0, 2], vec![0, 1]];
        assert_eq!(count_subgraphs(&tri, SmallGraph::Triangle), 1);
        assert_eq!(count_subgraphs(&tri, SmallGraph::Path3), 3);
        assert_eq!(count_subgraphs(&tri, SmallGraph::Edge), 3);
        let k4: Vec<Vec<usize>> = (0..4).map(|i| (0..4).filter(|&j| j != i).collect()).collect();
        assert_eq!(count_subgraphs(&k4, SmallGraph::Triangle), 4);
        assert_eq!(count_subgraphs(&k4, SmallGraph::Cycle4), 3);
        assert_eq!(count_subgraphs(&k4, SmallGraph::Star3), 4);
        assert_eq!(count_subgraphs(&k4, SmallGraph::Path3), 12);
        let empty = vec![Vec::new(); 5];
        assert_eq!(count_subgraphs(&empty, SmallGraph::Edge), 0);
    }

    #[test]
    fn chord_examples() {
        assert_relative_eq!(chord_length(2, 1.5, 0.0).unwrap(), 3.0, max_relative = 1e-14);
        assert_eq!(chord_length(2, 1.5, 1.5).unwrap(), 0.0);
        assert!(chord_length(2, 1.5, 1.6).is_err());
        let a = (3f64.cosh() / 1f64.cosh()).acosh();
        assert_relative_eq!(
            chord_length(3, 3.0, 1.0).unwrap(),
            omega(2) * (a.cosh() - 1.0),
            max_relative = 1e-12
        );
        let prev = (0..=30).map(|i| chord_length(4, 3.0, i as f64 * 0.1).unwrap()).collect::<Vec<_>>();
        assert!(prev.windows(2).all(|w| w[1] <= w[0]));
    }
}
