//! Independent oracles shared by the integration tests.
//!
//! Everything here is brute force or a textbook recursion, deliberately
//! unrelated to the library's own algorithms.

#![allow(dead_code)]

/// Calls `f(rgs, blocks)` for every set partition of `{0..n}` given as a
/// restricted growth string.
pub fn for_each_partition(n: usize, f: &mut dyn FnMut(&[usize], usize)) {
    let mut rgs = vec![0usize; n];
    rec(&mut rgs, 0, 0, f);
}

fn rec(rgs: &mut [usize], i: usize, blocks: usize, f: &mut dyn FnMut(&[usize], usize)) {
    if i == rgs.len() {
        f(rgs, blocks);
        return;
    }
    for b in 0..=blocks {
        rgs[i] = b;
        rec(rgs, i + 1, blocks.max(b + 1), f);
    }
}

fn block_sizes(rgs: &[usize], blocks: usize) -> Vec<usize> {
    let mut sizes = vec![0; blocks];
    for &b in rgs {
        sizes[b] += 1;
    }
    sizes
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// `Σ ∏ |J|!` over partitions of `[n]` into `k` blocks.
pub fn faa_di_bruno_brute(n: usize, k: usize) -> u128 {
    let mut total = 0u128;
    for_each_partition(n, &mut |rgs, blocks| {
        if blocks == k {
            total += block_sizes(rgs, blocks).iter().map(|&s| factorial(s)).product::<u128>();
        }
    });
    total
}

/// Stirling numbers of the second kind by counting partitions.
pub fn stirling2_brute(n: usize, k: usize) -> u128 {
    let mut total = 0u128;
    for_each_partition(n, &mut |_, blocks| total += (blocks == k) as u128);
    total
}

/// Histogram over `k` of partitions of `[ℓ]` whose blocks all have size >= 2.
pub fn all_blocks_ge2_brute(ell: usize) -> Vec<u128> {
    let mut hist = vec![0u128; ell + 1];
    for_each_partition(ell, &mut |rgs, blocks| {
        if block_sizes(rgs, blocks).iter().all(|&s| s >= 2) {
            hist[blocks] += 1;
        }
    });
    hist
}

/// Histogram over the completed size `k` of the row-diagram class, found
/// by filtering every partition of the `m·ℓ` nodes (row of node `e` is `e / m`).
pub fn star2_brute(m: usize, ell: usize) -> Vec<u128> {
    let n = m * ell;
    let mut hist = vec![0u128; n + 1];
    for_each_partition(n, &mut |rgs, blocks| {
        let sizes = block_sizes(rgs, blocks);
        let mut rows_hit = vec![false; ell];
        // (block, row) occupancy for the at-most-one-per-row rule
        let mut seen = vec![false; blocks * ell];
        for (e, &b) in rgs.iter().enumerate() {
            if sizes[b] < 2 {
                continue;
            }
            let row = e / m;
            if seen[b * ell + row] {
                return;
            }
            seen[b * ell + row] = true;
            rows_hit[row] = true;
        }
        if rows_hit.iter().all(|&h| h) {
            hist[blocks] += 1;
        }
    });
    hist
}

/// Raw Poisson moments from the cumulant recursion with all cumulants `α`:
/// `μ_n = α Σ_j C(n−1, j) μ_j`.
pub fn poisson_raw_moments_cumulant(alpha: f64, nmax: usize) -> Vec<f64> {
    let mut mu = vec![1.0f64];
    for n in 1..=nmax {
        let mut s = 0.0;
        let mut c = 1.0f64;
        for (j, &m) in mu.iter().enumerate().take(n) {
            s += c * m;
            c = c * (n - 1 - j) as f64 / (j + 1) as f64;
        }
        mu.push(alpha * s);
    }
    mu
}

/// `P(P_α = k)` by the product recursion `p_k = p_{k−1} α / k`, in logs.
pub fn poisson_ln_pmf(alpha: f64, k: u64) -> f64 {
    let mut l = -alpha;
    for i in 1..=k {
        l += (alpha / i as f64).ln();
    }
    l
}

/// `P(P_α >= y)` summed upward from `⌈y⌉` until the terms vanish.
pub fn poisson_upper_tail(alpha: f64, y: f64) -> f64 {
    let k0 = y.ceil().max(0.0) as u64;
    let mut p = poisson_ln_pmf(alpha, k0).exp();
    let mut total = 0.0;
    let mut k = k0;
    loop {
        total += p;
        k += 1;
        p *= alpha / k as f64;
        if p < total * 1e-18 && k as f64 > alpha {
            return total;
        }
    }
}

/// `P(P_α <= y)`.
pub fn poisson_lower_tail(alpha: f64, y: f64) -> f64 {
    if y < 0.0 {
        return 0.0;
    }
    (0..=y.floor() as u64).map(|k| poisson_ln_pmf(alpha, k).exp()).sum()
}

/// Centred moment of `c·(N)_m`, `N ~ Poisson(λ)`, by summing the pmf.
pub fn falling_factorial_centred_moment(lambda: f64, m: usize, c: f64, ell: usize) -> f64 {
    let kmax = (lambda + 40.0 * lambda.sqrt() + 60.0) as u64;
    let val = |k: u64| c * (0..m as u64).map(|i| k.saturating_sub(i) as f64).product::<f64>();
    let pmf: Vec<f64> = (0..=kmax).map(|k| poisson_ln_pmf(lambda, k).exp()).collect();
    let mean: f64 = (0..=kmax).map(|k| pmf[k as usize] * val(k)).sum();
    (0..=kmax).map(|k| pmf[k as usize] * (val(k) - mean).powi(ell as i32)).sum()
}

/// Relative difference with an absolute floor for tiny values.
pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}
