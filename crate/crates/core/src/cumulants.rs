//! Set partitions, non-crossing partitions and the moment/cumulant recursion
//! over either lattice.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};


use crate::error::{Error, Result};
use crate::jacobi::MomentSeq;
use crate::params::Framework;
use crate::scalar::Scalar;

pub const MAX_SET_PARTITION_SIZE: usize = 12;
pub const MAX_NONCROSSING_SIZE: usize = 14;

/// A partition of `{1, ..., n}` stored as its restricted growth string:
/// `labels[i]` is the block of element `i + 1`, blocks numbered in order of
/// first appearance.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetPartition {
    labels: Vec<u8>,
}

impl SetPartition {
    pub fn from_labels(labels: Vec<u8>) -> Self {
        Self { labels }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn block_count(&self) -> usize {
        self.labels.iter().max().map_or(0, |&m| m as usize + 1)
    }

    /// Blocks as sorted 1-based element lists, in order of smallest element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (i, &l) in self.labels.iter().enumerate() {
            blocks[l as usize].push(i + 1);
        }
        blocks
    }

    /// Block sizes, sorted descending.
    pub fn shape(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.block_count()];
        for &l in &self.labels {
            sizes[l as usize] += 1;
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    /// No `x1 < y1 < x2 < y2` with the x's in one block and the y's in another.
    pub fn is_noncrossing(&self) -> bool {
        let l = &self.labels;
        let n = l.len();
        for a in 0..n {
            for b in a + 1..n {
                if l[b] == l[a] {
                    continue;
                }
                for c in b + 1..n {
                    if l[c] != l[a] {
                        continue;
                    }
                    if (c + 1..n).any(|d| l[d] == l[b]) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Restricted growth strings of length `n` in lexicographic order.
pub struct SetPartitions {
    labels: Vec<u8>,
    maxima: Vec<u8>,
    done: bool,
}

impl SetPartitions {
    pub fn new(n: usize) -> Self {
        Self { labels: vec![0; n], maxima: vec![0; n], done: n == 0 }
    }
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let out = SetPartition { labels: self.labels.clone() };
        // advance: rightmost position that can still grow
        let n = self.labels.len();
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.labels[i] <= self.maxima[i - 1] {
                self.labels[i] += 1;
                self.maxima[i] = self.maxima[i - 1].max(self.labels[i]);
                for j in i + 1..n {
                    self.labels[j] = 0;
                    self.maxima[j] = self.maxima[i];
                }
                break;
            }
        }
        Some(out)
    }
}

fn check_range(n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::PartitionRange { n, max });
    }
    Ok(())
}

pub fn set_partitions(n: usize) -> Result<Vec<SetPartition>> {
    check_range(n, MAX_SET_PARTITION_SIZE)?;
    Ok(SetPartitions::new(n).collect())
}

/// Non-crossing partitions generated directly: element `i` may join an
/// existing block only if no block with an element before that block's last
/// element has reappeared since.
pub fn noncrossing_partitions(n: usize) -> Result<Vec<SetPartition>> {
    check_range(n, MAX_NONCROSSING_SIZE)?;
    let mut out = Vec::new();
    let mut labels = Vec::with_capacity(n);
    extend_noncrossing(n, &mut labels, 0, &mut |p| out.push(p.clone()));
    Ok(out)
}

fn extend_noncrossing(n: usize, labels: &mut Vec<u8>, blocks: u8, emit: &mut impl FnMut(&SetPartition)) {
    if labels.len() == n {
        emit(&SetPartition { labels: labels.clone() });
        return;
    }
    for k in 0..=blocks {
        if k < blocks && !joinable(labels, k) {
            continue;
        }
        labels.push(k);
        extend_noncrossing(n, labels, if k == blocks { blocks + 1 } else { blocks }, emit);
        labels.pop();
    }
}

/// With a non-crossing prefix, appending to block `k` crosses iff some other
/// block has elements on both sides of `k`'s last element.
fn joinable(labels: &[u8], k: u8) -> bool {
    let last = labels.iter().rposition(|&l| l == k).expect("existing block");
    labels[last + 1..]
        .iter()
        .filter(|&&l| l != k)
        .all(|&l| !labels[..last].contains(&l))
}

/// Number of partitions of each shape (sorted block sizes).
pub type ShapeCounts = BTreeMap<Vec<usize>, u64>;

fn compute_shape_counts(fw: Framework, n: usize) -> Result<ShapeCounts> {
    let mut counts = ShapeCounts::new();
    let mut record = |p: &SetPartition| *counts.entry(p.shape()).or_insert(0) += 1;
    match fw {
        Framework::Classical => {
            check_range(n, MAX_SET_PARTITION_SIZE)?;
            SetPartitions::new(n).for_each(|p| record(&p));
        }
        Framework::Free => {
            check_range(n, MAX_NONCROSSING_SIZE)?;
            let mut labels = Vec::with_capacity(n);
            extend_noncrossing(n, &mut labels, 0, &mut record);
        }
    }
    Ok(counts)
}

/// Shape counts of `P_n` (classical) or `NC(n)` (free), cached per process.
pub fn shape_counts(fw: Framework, n: usize) -> Result<Arc<ShapeCounts>> {
    static CACHE: OnceLock<Mutex<HashMap<(Framework, usize), Arc<ShapeCounts>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache poisoned").get(&(fw, n)) {
        return Ok(hit.clone());
    }
    let counts = Arc::new(compute_shape_counts(fw, n)?);
    cache.lock().expect("cache poisoned").insert((fw, n), counts.clone());
    Ok(counts)
}

/// Cumulants `C_1, ..., C_n`; `get(k)` is 1-based.
#[derive(Clone, Debug, PartialEq)]
pub struct CumulantSeq<S>(Vec<S>);

impl<S: Scalar> CumulantSeq<S> {
    /// From `(C_1, C_2, ...)`.
    pub fn new(c: Vec<S>) -> Self {
        Self(c)
    }

    /// `C_k`, zero beyond the stored range.
    pub fn get(&self, k: usize) -> S {
        assert!(k >= 1, "cumulants are indexed from 1");
        self.0.get(k - 1).cloned().unwrap_or_else(S::zero)
    }

    pub fn as_slice(&self) -> &[S] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn shape_product<S: Scalar>(shape: &[usize], count: u64, c: &CumulantSeq<S>) -> S {
    let mut term = S::from_int(count as i64);
    for &size in shape {
        let ck = c.get(size);
        if ck.is_zero() {
            return S::zero();
        }
        term = term * ck;
    }
    term
}

/// Solves `m(k) = sum_{pi} prod_{A in pi} C_{|A|}` for `C_1, ..., C_n`,
/// isolating the single-block term.
pub fn moments_to_cumulants<S: Scalar>(fw: Framework, m: &MomentSeq<S>, n: usize) -> Result<CumulantSeq<S>> {
    if m.order() < n || m.as_slice().is_empty() {
        return Err(Error::InsufficientMoments { needed: n, available: m.order() });
    }
    let mut c = CumulantSeq(Vec::with_capacity(n));
    for k in 1..=n {
        let counts = shape_counts(fw, k)?;
        let rest = counts
            .iter()
            .filter(|(shape, _)| shape.len() > 1)
            .fold(S::zero(), |acc, (shape, &count)| acc + shape_product(shape, count, &c));
        c.0.push(m.get(k).expect("checked").clone() - rest);
    }
    Ok(c)
}

/// Moments `m(0), ..., m(n)` from cumulants; cumulants past the given ones
/// are taken as zero.
pub fn cumulants_to_moments<S: Scalar>(fw: Framework, c: &CumulantSeq<S>, n: usize) -> Result<MomentSeq<S>> {
    let mut m = vec![S::one()];
    for k in 1..=n {
        let counts = shape_counts(fw, k)?;
        m.push(
            counts
                .iter()
                .fold(S::zero(), |acc, (shape, &count)| acc + shape_product(shape, count, c)),
        );
    }
    Ok(MomentSeq::new(m))
}
