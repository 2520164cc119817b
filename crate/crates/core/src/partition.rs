//! Partitions, r-tuples of partitions, boxes, and the canonical box ordering.
//!
//! Boxes use 0-based coordinates `(x, y)` with `x` the column and `y` the row,
//! so the box `(x, y)` lies in the partition `lambda` when `x < lambda[y]`.
//! The content of a box is `x - y`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be positive and weakly decreasing, got {0:?}")]
    InvalidParts(Vec<u32>),
    #[error("cannot parse partition from {0:?}")]
    Parse(String),
    #[error("box ({x},{y}) lies outside the partition")]
    BoxOutside { x: u32, y: u32 },
}

/// A partition: a weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Partition { parts })
        } else {
            Err(PartitionError::InvalidParts(parts))
        }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// Length of row `y` (0 when the row is missing).
    pub fn row(&self, y: usize) -> u32 {
        self.parts.get(y).copied().unwrap_or(0)
    }

    /// Length of column `x`, i.e. the number of rows longer than `x`.
    pub fn col(&self, x: u32) -> u32 {
        self.parts.iter().take_while(|&&p| p > x).count() as u32
    }

    pub fn contains(&self, x: u32, y: u32) -> bool {
        x < self.row(y as usize)
    }

    pub fn transpose(&self) -> Partition {
        let cols = self.row(0);
        let parts = (0..cols).map(|x| self.col(x)).collect();
        Partition { parts }
    }

    /// All boxes `(x, y)` of the diagram, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(y, &len)| (0..len).map(move |x| (x, y as u32)))
    }

    /// Arm length of a box with respect to this partition.
    ///
    /// The box need not lie inside the diagram; missing rows count as 0,
    /// so the result may be negative.
    pub fn arm(&self, x: u32, y: u32) -> i64 {
        self.row(y as usize) as i64 - x as i64 - 1
    }

    /// Leg length of a box with respect to this partition; may be negative.
    pub fn leg(&self, x: u32, y: u32) -> i64 {
        self.col(x) as i64 - y as i64 - 1
    }

    /// Returns `(arm + 1, leg)` for a box inside the diagram, so the caller
    /// can form either the integer hook `a + l + 1` or the equivariant hook
    /// `(a+1) t1 - l t2`.
    pub fn hook(&self, x: u32, y: u32) -> Result<(i64, i64), PartitionError> {
        if !self.contains(x, y) {
            return Err(PartitionError::BoxOutside { x, y });
        }
        Ok((self.arm(x, y) + 1, self.leg(x, y)))
    }

    /// All partitions of `n`, in lexicographically increasing part order
    /// (a linear extension of dominance order).
    pub fn all_of(n: u32) -> Vec<Partition> {
        fn go(rem: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: acc.clone() });
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                acc.push(p);
                go(rem - p, p, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out.sort_by(|a, b| a.cmp_lex(b));
        out
    }

    /// Lexicographic comparison on the part vectors.
    pub fn cmp_lex(&self, other: &Partition) -> Ordering {
        self.parts.cmp(&other.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| PartitionError::Parse(s.to_string()))?;
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts: Result<Vec<u32>, _> = inner.split(',').map(|t| t.trim().parse::<u32>()).collect();
        let parts = parts.map_err(|_| PartitionError::Parse(s.to_string()))?;
        Partition::new(parts)
    }
}

/// Canonical total order on partitions: size first, then lexicographic on parts.
impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

/// An ordered r-tuple of partitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiPartition {
    components: Vec<Partition>,
}

impl MultiPartition {
    pub fn new(components: Vec<Partition>) -> Self {
        assert!(!components.is_empty(), "rank must be at least 1");
        MultiPartition { components }
    }

    pub fn empty(rank: usize) -> Self {
        MultiPartition::new(vec![Partition::empty(); rank])
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    pub fn component(&self, k: usize) -> &Partition {
        &self.components[k]
    }

    pub fn size(&self) -> u32 {
        self.components.iter().map(|p| p.size()).sum()
    }

    /// Reverses the component order (the u-symmetry involution).
    pub fn reverse(&self) -> MultiPartition {
        let mut components = self.components.clone();
        components.reverse();
        MultiPartition { components }
    }

    /// Componentwise transpose (the t-symmetry involution).
    pub fn transpose(&self) -> MultiPartition {
        MultiPartition {
            components: self.components.iter().map(|p| p.transpose()).collect(),
        }
    }

    /// All r-tuples of partitions with `n` boxes total, sorted canonically.
    pub fn all_of(rank: usize, n: u32) -> Vec<MultiPartition> {
        fn go(rank: usize, rem: u32, acc: &mut Vec<Partition>, out: &mut Vec<MultiPartition>) {
            if rank == 0 {
                if rem == 0 {
                    out.push(MultiPartition::new(acc.clone()));
                }
                return;
            }
            for k in 0..=rem {
                for p in Partition::all_of(k) {
                    acc.push(p);
                    go(rank - 1, rem - k, acc, out);
                    acc.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(rank, n, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for MultiPartition {
    type Err = PartitionError;

    /// Parses `"[4,2,1],[],[1]"`; each component is a bracketed partition.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut components = Vec::new();
        let mut rest = s;
        loop {
            let rest_trim = rest.trim_start();
            let close = rest_trim
                .find(']')
                .ok_or_else(|| PartitionError::Parse(s.to_string()))?;
            components.push(rest_trim[..=close].parse::<Partition>()?);
            let after = rest_trim[close + 1..].trim_start();
            if after.is_empty() {
                break;
            }
            rest = after
                .strip_prefix(',')
                .ok_or_else(|| PartitionError::Parse(s.to_string()))?;
        }
        Ok(MultiPartition::new(components))
    }
}

/// Canonical total order: total size, then componentwise.
impl PartialOrd for MultiPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.components.cmp(&other.components))
    }
}

/// A box of a multipartition: component index (0-based) and coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoxPos {
    pub comp: usize,
    pub x: u32,
    pub y: u32,
}

impl BoxPos {
    pub fn content(&self) -> i64 {
        self.x as i64 - self.y as i64
    }
}

/// All boxes of `mp` in canonical order: component ascending, content
/// descending within a component, equal-content ties broken by row
/// index ascending.
///
/// The transition-matrix entries are invariant under permuting equal-content
/// boxes within a component, so the tie-break is a determinism device only.
pub fn boxes(mp: &MultiPartition) -> Vec<BoxPos> {
    let mut out = Vec::with_capacity(mp.size() as usize);
    for (comp, p) in mp.components().iter().enumerate() {
        let mut comp_boxes: Vec<BoxPos> = p.cells().map(|(x, y)| BoxPos { comp, x, y }).collect();
        comp_boxes.sort_by_key(|b| (-b.content(), b.y));
        out.extend(comp_boxes);
    }
    out
}

/// Heights of the diagram: the number of boxes sharing each (component,
/// content) pair. With generic u parameters two boxes have equal rho-value
/// exactly when they share component and content.
pub fn heights(mp: &MultiPartition) -> BTreeMap<(usize, i64), u32> {
    let mut map = BTreeMap::new();
    for b in boxes(mp) {
        *map.entry((b.comp, b.content())).or_insert(0) += 1;
    }
    map
}

/// The symmetry factor: the product of factorials of all heights.
pub fn sym_factor(mp: &MultiPartition) -> u64 {
    heights(mp)
        .values()
        .map(|&h| (1..=h as u64).product::<u64>())
        .product()
}
