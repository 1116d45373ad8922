//! Subpartitions of row diagrams and Stirling-number machinery.
//!
//! A row diagram with `ell` rows of length `m` has elements `1..=m*ell`;
//! element `(i-1)*m + j` sits in row `i`, column `j` (both 1-based). The
//! class enumerated here contains the subpartitions whose blocks have at
//! least two elements, meet every row at most once, and jointly hit every
//! row. All counts are exact big integers.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of diagram elements for streamed enumeration.
pub const STREAM_CAP: usize = 16;
/// Default cap on `n` for Stirling tables and closed-form counts.
pub const COUNT_CAP: usize = 64;

/// Shape of an `ell`-row diagram with rows of length `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RowDiagram {
    pub m: usize,
    pub ell: usize,
}

impl RowDiagram {
    pub fn new(m: usize, ell: usize) -> Result<Self> {
        if m == 0 || ell == 0 {
            return Err(Error::InvalidArgument(format!(
                "row diagram needs m >= 1 and ell >= 1, got m = {m}, ell = {ell}"
            )));
        }
        Ok(Self { m, ell })
    }

    /// Total number of elements `m * ell`.
    pub fn size(&self) -> usize {
        self.m * self.ell
    }

    /// Element number of node (row `i`, column `j`), both 1-based.
    pub fn element(&self, i: usize, j: usize) -> usize {
        debug_assert!((1..=self.ell).contains(&i) && (1..=self.m).contains(&j));
        (i - 1) * self.m + j
    }

    /// 1-based row of element `e`.
    pub fn row_of(&self, e: usize) -> usize {
        (e - 1) / self.m + 1
    }

    /// 1-based column of element `e`.
    pub fn col_of(&self, e: usize) -> usize {
        (e - 1) % self.m + 1
    }
}

/// The three membership conditions of the enumerated class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassFlags {
    /// Every block has at least two elements.
    pub all_blocks_ge2: bool,
    /// Every block meets every row at most once.
    pub row_meets_block_le1: bool,
    /// Every row contains an element covered by some block.
    pub every_row_hit: bool,
}

impl ClassFlags {
    pub fn all(&self) -> bool {
        self.all_blocks_ge2 && self.row_meets_block_le1 && self.every_row_hit
    }
}

/// A family of disjoint non-empty blocks of diagram elements.
///
/// Blocks are kept in canonical order: each block sorted, blocks ordered by
/// their smallest element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subpartition {
    pub diagram: RowDiagram,
    pub blocks: Vec<Vec<usize>>,
}

impl Subpartition {
    /// Validates disjointness, ranges and non-emptiness, then canonicalises.
    pub fn new(diagram: RowDiagram, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n = diagram.size();
        let mut seen = vec![false; n + 1];
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::InvalidArgument("empty block".into()));
            }
            b.sort_unstable();
            for &e in b.iter() {
                if e == 0 || e > n {
                    return Err(Error::InvalidArgument(format!(
                        "element {e} outside 1..={n}"
                    )));
                }
                if seen[e] {
                    return Err(Error::InvalidArgument(format!(
                        "element {e} appears in two blocks"
                    )));
                }
                seen[e] = true;
            }
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Self { diagram, blocks })
    }

    /// Number of blocks `|σ|`.
    pub fn sigma_size(&self) -> usize {
        self.blocks.len()
    }

    /// Number of covered elements `‖σ‖`.
    pub fn norm(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// `k(σ) = m·ell + |σ| − ‖σ‖`, the number of blocks of the completed partition.
    pub fn k(&self) -> usize {
        self.diagram.size() + self.sigma_size() - self.norm()
    }

    pub fn flags(&self) -> ClassFlags {
        let d = self.diagram;
        let all_blocks_ge2 = self.blocks.iter().all(|b| b.len() >= 2);
        let row_meets_block_le1 = self.blocks.iter().all(|b| {
            let mut rows: Vec<usize> = b.iter().map(|&e| d.row_of(e)).collect();
            rows.dedup();
            rows.len() == b.len()
        });
        let mut hit = vec![false; d.ell + 1];
        for b in &self.blocks {
            for &e in b {
                hit[d.row_of(e)] = true;
            }
        }
        let every_row_hit = hit[1..].iter().all(|&h| h);
        ClassFlags {
            all_blocks_ge2,
            row_meets_block_le1,
            every_row_hit,
        }
    }

    /// `∏_{J ∈ h(σ)} |J|!`; singletons contribute 1.
    pub fn block_factorial_product(&self) -> BigUint {
        self.blocks
            .iter()
            .fold(BigUint::one(), |acc, b| acc * factorial(b.len()))
    }
}

/// A set partition of `{1, …, n}` in canonical block order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::InvalidArgument("empty block".into()));
            }
            b.sort_unstable();
            for &e in b.iter() {
                if e == 0 || e > n || seen[e] {
                    return Err(Error::InvalidArgument(format!(
                        "element {e} repeated or outside 1..={n}"
                    )));
                }
                seen[e] = true;
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::InvalidArgument("partition does not cover 1..=n".into()));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Self { n, blocks })
    }
}

/// Completes a subpartition to a partition by adding every uncovered
/// element as a singleton.
pub fn h_complete(sigma: &Subpartition) -> Partition {
    let n = sigma.diagram.size();
    let mut covered = vec![false; n + 1];
    let mut blocks = sigma.blocks.clone();
    for b in &sigma.blocks {
        for &e in b {
            covered[e] = true;
        }
    }
    blocks.extend((1..=n).filter(|&e| !covered[e]).map(|e| vec![e]));
    blocks.sort_unstable_by_key(|b| b[0]);
    Partition { n, blocks }
}

/// Drops the singletons of a partition of the diagram's elements.
pub fn h_inverse(partition: &Partition, diagram: RowDiagram) -> Result<Subpartition> {
    if partition.n != diagram.size() {
        return Err(Error::InvalidArgument(format!(
            "partition of {} elements does not fit a diagram of {}",
            partition.n,
            diagram.size()
        )));
    }
    let blocks = partition
        .blocks
        .iter()
        .filter(|b| b.len() >= 2)
        .cloned()
        .collect();
    Subpartition::new(diagram, blocks)
}

pub(crate) fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

fn falling(n: usize, k: usize) -> BigUint {
    (0..k as u64).fold(BigUint::one(), |acc, i| acc * (n as u64 - i))
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    falling(n, k) / factorial(k)
}

/// Table of Stirling numbers of the second kind `S(n, k)` for `n <= cap`.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    cap: usize,
    rows: Vec<Vec<BigUint>>,
}

impl StirlingTable {
    pub fn new(cap: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(cap + 1);
        rows.push(vec![BigUint::one()]);
        for n in 1..=cap {
            let prev = &rows[n - 1];
            let mut row = vec![BigUint::zero(); n + 1];
            for k in 1..=n {
                let mut v = BigUint::zero();
                if k < n {
                    v += &prev[k] * k as u64;
                }
                v += &prev[k - 1];
                row[k] = v;
            }
            rows.push(row);
        }
        Self { cap, rows }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn get(&self, n: usize, k: usize) -> Result<&BigUint> {
        if n > self.cap {
            return Err(Error::TableOverflow { n, cap: self.cap });
        }
        if k > n {
            return Err(Error::InvalidArgument(format!("k = {k} exceeds n = {n}")));
        }
        Ok(&self.rows[n][k])
    }
}

fn default_table() -> &'static StirlingTable {
    static TABLE: OnceLock<StirlingTable> = OnceLock::new();
    TABLE.get_or_init(|| StirlingTable::new(COUNT_CAP))
}

/// Stirling number of the second kind `S(n, k)` for `0 <= k <= n <= 64`.
pub fn stirling2(n: usize, k: usize) -> Result<BigUint> {
    default_table().get(n, k).cloned()
}

/// `Σ_{π ∈ Π_n(k)} ∏_{J ∈ π} |J|! = (n−1)!/(k−1)! · C(n, k)`.
pub fn faa_di_bruno_sum(n: usize, k: usize) -> Result<BigUint> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    if n > COUNT_CAP {
        return Err(Error::TableOverflow { n, cap: COUNT_CAP });
    }
    Ok(factorial(n - 1) / factorial(k - 1) * binomial(n, k))
}

fn check_star2_shape(m: usize, ell: usize, cap: usize) -> Result<RowDiagram> {
    let d = RowDiagram::new(m, ell)?;
    if ell < 2 {
        return Err(Error::InvalidArgument(format!("need ell >= 2, got {ell}")));
    }
    if d.size() > cap {
        return Err(Error::TableOverflow {
            n: d.size(),
            cap,
        });
    }
    Ok(d)
}

/// Exact histogram `k ↦ S^m_{≥2}(ell, k)` for `k = 0..=m·ell`.
///
/// Computed row by row with a transfer recursion over
/// (open singleton blocks, blocks of size >= 2, excess), so it does not
/// enumerate. Agrees with [`enumerate_star2`] wherever both run.
pub fn star2_histogram(m: usize, ell: usize) -> Result<Vec<BigUint>> {
    let d = check_star2_shape(m, ell, COUNT_CAP)?;
    let n = d.size();
    // state: (blocks of size 1, blocks of size >= 2, Σ(|B|−1))
    let mut states: HashMap<(usize, usize, usize), BigUint> = HashMap::new();
    states.insert((0, 0, 0), BigUint::one());
    for _row in 0..ell {
        let mut next: HashMap<(usize, usize, usize), BigUint> = HashMap::new();
        for (&(a, b, e), w) in &states {
            for x in 0..=a.min(m) {
                for y in 0..=b.min(m - x) {
                    for z in 0..=(m - x - y) {
                        if x + y + z == 0 {
                            continue;
                        }
                        let ways = factorial(m)
                            / (factorial(x) * factorial(y) * factorial(z) * factorial(m - x - y - z))
                            * falling(a, x)
                            * falling(b, y);
                        let key = (a - x + z, b + x, e + x + y);
                        *next.entry(key).or_insert_with(BigUint::zero) += w * ways;
                    }
                }
            }
        }
        states = next;
    }
    let mut hist = vec![BigUint::zero(); n + 1];
    for ((a, _b, e), w) in states {
        if a == 0 {
            hist[n - e] += w;
        }
    }
    Ok(hist)
}

/// `S^m_{≥2}(ell, k)`: the number of class members with `k(σ) = k`.
///
/// Zero whenever `k < m` or `k > ⌊m·ell − ell/2⌋`.
pub fn count_star2(m: usize, ell: usize, k: usize) -> Result<BigUint> {
    let hist = star2_histogram(m, ell)?;
    Ok(hist.get(k).cloned().unwrap_or_else(BigUint::zero))
}

/// Total number of class members.
pub fn total_star2(m: usize, ell: usize) -> Result<BigUint> {
    Ok(star2_histogram(m, ell)?.into_iter().sum())
}

/// Streams every member of the class for an `m × ell` diagram in
/// deterministic canonical order, with the default 16-element cap.
pub fn enumerate_star2(m: usize, ell: usize) -> Result<Star2Iter> {
    enumerate_star2_with_cap(m, ell, STREAM_CAP)
}

/// As [`enumerate_star2`] with an explicit element cap.
pub fn enumerate_star2_with_cap(m: usize, ell: usize, cap: usize) -> Result<Star2Iter> {
    let d = RowDiagram::new(m, ell)?;
    if ell < 2 {
        return Err(Error::InvalidArgument(format!("need ell >= 2, got {ell}")));
    }
    if d.size() > cap {
        let estimate = if d.size() <= COUNT_CAP {
            total_star2(m, ell)?.to_f64().unwrap_or(f64::INFINITY)
        } else {
            f64::INFINITY
        };
        return Err(Error::EnumerationCap {
            elements: d.size(),
            cap,
            estimate,
        });
    }
    Ok(Star2Iter::new(d))
}

/// Depth-first enumerator over element choices.
///
/// At element `e` the choices are: leave uncovered (0), join existing block
/// `c − 1` (legal only if that block has no element in `e`'s row), or open
/// a new block (`nb + 1`). Branches are pruned at each row end when the row
/// is uncovered and whenever open singletons outnumber remaining elements.
#[derive(Debug, Clone)]
pub struct Star2Iter {
    d: RowDiagram,
    n: usize,
    blocks: Vec<Vec<usize>>,
    applied: Vec<usize>,
    next_try: Vec<usize>,
    row_cover: Vec<usize>,
    singles: usize,
    covered: usize,
    at_leaf: bool,
    done: bool,
}

impl Star2Iter {
    fn new(d: RowDiagram) -> Self {
        let n = d.size();
        Self {
            d,
            n,
            blocks: Vec::new(),
            applied: Vec::with_capacity(n),
            next_try: vec![0; n],
            row_cover: vec![0; d.ell + 1],
            singles: 0,
            covered: 0,
            at_leaf: false,
            done: false,
        }
    }

    pub fn diagram(&self) -> RowDiagram {
        self.d
    }

    fn push(&mut self, e: usize, c: usize) {
        let nb = self.blocks.len();
        if c == nb + 1 {
            self.blocks.push(vec![e]);
            self.singles += 1;
        } else if c >= 1 {
            let b = &mut self.blocks[c - 1];
            if b.len() == 1 {
                self.singles -= 1;
            }
            b.push(e);
        }
        if c >= 1 {
            self.covered += 1;
            self.row_cover[self.d.row_of(e)] += 1;
        }
        self.applied.push(c);
    }

    fn pop(&mut self) {
        let c = self.applied.pop().expect("pop on empty stack");
        let e = self.applied.len() + 1;
        if c == 0 {
            return;
        }
        self.covered -= 1;
        self.row_cover[self.d.row_of(e)] -= 1;
        if c == self.blocks.len() && self.blocks[c - 1] == [e] {
            self.blocks.pop();
            self.singles -= 1;
        } else {
            let b = &mut self.blocks[c - 1];
            b.pop();
            if b.len() == 1 {
                self.singles += 1;
            }
        }
    }

    fn legal(&self, e: usize, c: usize) -> bool {
        let nb = self.blocks.len();
        if c == 0 || c == nb + 1 {
            return true;
        }
        let last = *self.blocks[c - 1].last().expect("non-empty block");
        self.d.row_of(last) < self.d.row_of(e)
    }

    fn viable(&self, e: usize) -> bool {
        if e % self.d.m == 0 && self.row_cover[self.d.row_of(e)] == 0 {
            return false;
        }
        self.singles <= self.n - e
    }

    /// Advances to the next member and reports its `k`, without allocating.
    pub fn next_k(&mut self) -> Option<usize> {
        if self.done {
            return None;
        }
        if self.at_leaf {
            self.at_leaf = false;
            self.pop();
        }
        loop {
            let depth = self.applied.len();
            if depth == self.n {
                if self.singles == 0 {
                    self.at_leaf = true;
                    return Some(self.n + self.blocks.len() - self.covered);
                }
                self.pop();
                continue;
            }
            let e = depth + 1;
            let c = self.next_try[depth];
            if c > self.blocks.len() + 1 {
                self.next_try[depth] = 0;
                if depth == 0 {
                    self.done = true;
                    return None;
                }
                self.pop();
                continue;
            }
            self.next_try[depth] = c + 1;
            if !self.legal(e, c) {
                continue;
            }
            self.push(e, c);
            if !self.viable(e) {
                self.pop();
            }
        }
    }

    /// Counts members by `k` by exhausting the stream.
    pub fn histogram(mut self) -> Vec<BigUint> {
        let mut counts = vec![0u64; self.n + 1];
        while let Some(k) = self.next_k() {
            counts[k] += 1;
        }
        counts.into_iter().map(BigUint::from).collect()
    }
}

impl Iterator for Star2Iter {
    type Item = Subpartition;

    fn next(&mut self) -> Option<Subpartition> {
        self.next_k()?;
        Some(Subpartition {
            diagram: self.d,
            blocks: self.blocks.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn stirling_small_values() {
        assert_eq!(stirling2(4, 2).unwrap(), big(7));
        assert_eq!(stirling2(5, 1).unwrap(), big(1));
        assert_eq!(stirling2(5, 5).unwrap(), big(1));
        assert_eq!(stirling2(0, 0).unwrap(), big(1));
        assert_eq!(stirling2(3, 0).unwrap(), big(0));
    }

    #[test]
    fn stirling_cap_is_enforced() {
        assert_eq!(
            stirling2(65, 3),
            Err(Error::TableOverflow { n: 65, cap: 64 })
        );
        assert!(StirlingTable::new(70).get(70, 3).is_ok());
    }

    #[test]
    fn faa_di_bruno_examples() {
        assert_eq!(faa_di_bruno_sum(4, 2).unwrap(), big(36));
        assert_eq!(faa_di_bruno_sum(5, 5).unwrap(), big(1));
        assert_eq!(faa_di_bruno_sum(5, 1).unwrap(), big(120));
        assert!(faa_di_bruno_sum(3, 0).is_err());
    }

    #[test]
    fn enumerate_small_diagrams() {
        let all: Vec<_> = enumerate_star2(1, 2).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].blocks, vec![vec![1, 2]]);
        assert_eq!(all[0].k(), 1);

        let all: Vec<_> = enumerate_star2(2, 2).unwrap().collect();
        assert_eq!(all.len(), 6);
        let singles: Vec<_> = all.iter().filter(|s| s.sigma_size() == 1).collect();
        assert_eq!(singles.len(), 4);
        assert!(singles.iter().all(|s| s.k() == 3));
        let matchings: Vec<_> = all.iter().filter(|s| s.sigma_size() == 2).collect();
        assert_eq!(matchings.len(), 2);
        assert!(matchings.iter().all(|s| s.k() == 2));

        let all: Vec<_> = enumerate_star2(1, 3).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].blocks, vec![vec![1, 2, 3]]);
    }

    #[test]
    fn enumeration_output_is_canonical_and_in_class() {
        for (m, ell) in [(2, 3), (3, 2), (2, 4)] {
            let mut seen = std::collections::HashSet::new();
            for s in enumerate_star2(m, ell).unwrap() {
                assert!(s.flags().all());
                let canon = Subpartition::new(s.diagram, s.blocks.clone()).unwrap();
                assert_eq!(canon, s);
                assert!(seen.insert(s));
            }
        }
    }

    #[test]
    fn counts_match_examples() {
        assert_eq!(count_star2(1, 4, 2).unwrap(), big(3));
        assert_eq!(count_star2(2, 2, 3).unwrap(), big(4));
        assert_eq!(count_star2(2, 2, 2).unwrap(), big(2));
        assert_eq!(count_star2(2, 2, 5).unwrap(), big(0));
    }

    #[test]
    fn histogram_routes_agree() {
        for m in 1..=4 {
            for ell in 2..=6 {
                if m * ell > 12 {
                    continue;
                }
                let by_stream = enumerate_star2(m, ell).unwrap().histogram();
                assert_eq!(by_stream, star2_histogram(m, ell).unwrap(), "m={m} ell={ell}");
            }
        }
    }

    #[test]
    fn enumeration_cap_reports_estimate() {
        match enumerate_star2(3, 6) {
            Err(Error::EnumerationCap {
                elements,
                cap,
                estimate,
            }) => {
                assert_eq!(elements, 18);
                assert_eq!(cap, 16);
                assert!(estimate > 1.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn h_completion_examples() {
        let d = RowDiagram::new(2, 2).unwrap();
        let s = Subpartition::new(d, vec![vec![1, 3]]).unwrap();
        let h = h_complete(&s);
        assert_eq!(h.blocks, vec![vec![1, 3], vec![2], vec![4]]);
        assert_eq!(h_inverse(&h, d).unwrap(), s);

        let s = Subpartition::new(d, vec![vec![2, 4], vec![1, 3]]).unwrap();
        assert_eq!(h_complete(&s).blocks.len(), 2);
    }

    #[test]
    fn element_encoding() {
        let d = RowDiagram::new(3, 4).unwrap();
        assert_eq!(d.element(2, 1), 4);
        assert_eq!(d.row_of(4), 2);
        assert_eq!(d.col_of(4), 1);
        assert_eq!(d.row_of(12), 4);
    }

    #[test]
    fn invalid_subpartitions_rejected() {
        let d = RowDiagram::new(2, 2).unwrap();
        assert!(Subpartition::new(d, vec![vec![1, 2], vec![2, 3]]).is_err());
        assert!(Subpartition::new(d, vec![vec![5]]).is_err());
        assert!(Subpartition::new(d, vec![vec![]]).is_err());
    }
}
