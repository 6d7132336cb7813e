use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use super::{binomial, c_mul, Coeff};
use crate::error::{Error, Result};

/// A vector in ℕ^m. Used both as a partition part and as a multidegree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VectorVec(SmallVec<[u32; 4]>);

impl VectorVec {
    pub fn new(coords: impl IntoIterator<Item = u32>) -> Self {
        VectorVec(coords.into_iter().collect())
    }

    pub fn zero(width: usize) -> Self {
        VectorVec(SmallVec::from_elem(0, width))
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Every coordinate is at least 1.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 1)
    }

    pub fn add_assign(&mut self, other: &VectorVec) {
        debug_assert_eq!(self.width(), other.width());
        for (a, b) in self.0.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }
}

impl From<&[u32]> for VectorVec {
    fn from(c: &[u32]) -> Self {
        VectorVec(c.iter().copied().collect())
    }
}

impl<const N: usize> From<[u32; N]> for VectorVec {
    fn from(c: [u32; N]) -> Self {
        VectorVec(c.iter().copied().collect())
    }
}

impl fmt::Display for VectorVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A vector partition: an unordered multiset of nonzero vectors of common
/// width, stored with parts sorted in descending lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorPartition {
    width: usize,
    parts: Vec<VectorVec>,
}

impl VectorPartition {
    /// The empty partition of the given width (indexes the unit `p_∅ = 1`).
    pub fn empty(width: usize) -> Self {
        VectorPartition {
            width,
            parts: Vec::new(),
        }
    }

    /// Builds a partition from parts already known to be nonzero and of
    /// matching width. Sorts them into canonical order.
    pub(crate) fn from_parts_unchecked(width: usize, mut parts: Vec<VectorVec>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        VectorPartition { width, parts }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn parts(&self) -> &[VectorVec] {
        &self.parts
    }

    /// Number of parts, ℓ(Λ).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The multidegree Σ parts.
    pub fn grade(&self) -> VectorVec {
        let mut g = VectorVec::zero(self.width);
        for p in &self.parts {
            g.add_assign(p);
        }
        g
    }

    /// Part multiplicities m_v(Λ).
    pub fn multiplicities(&self) -> BTreeMap<&VectorVec, usize> {
        let mut m = BTreeMap::new();
        for p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// Calls `f(grade, length, ways)` once per sub-multiset Ω ⊆ Λ, where
    /// `ways = C(Λ, Ω)` counts the part positions that select Ω.
    pub(crate) fn for_each_sub_multiset(&self, mut f: impl FnMut(&[u32], usize, Coeff)) {
        // distinct parts with multiplicities; parts are sorted so runs are contiguous
        let mut runs: SmallVec<[(usize, usize); 8]> = SmallVec::new();
        for (i, p) in self.parts.iter().enumerate() {
            match runs.last_mut() {
                Some((start, m)) if self.parts[*start] == *p => *m += 1,
                _ => runs.push((i, 1)),
            }
        }
        let mut choice: SmallVec<[usize; 8]> = SmallVec::from_elem(0, runs.len());
        let mut grade: SmallVec<[u32; 8]> = SmallVec::from_elem(0, self.width);
        loop {
            grade.iter_mut().for_each(|g| *g = 0);
            let (mut len, mut ways) = (0, 1 as Coeff);
            for (&(start, m), &k) in runs.iter().zip(&choice) {
                if k > 0 {
                    for (g, &c) in grade.iter_mut().zip(self.parts[start].coords()) {
                        *g += c * k as u32;
                    }
                    len += k;
                    ways = c_mul(ways, binomial(m as i64, k as i64));
                }
            }
            f(&grade, len, ways);
            let mut i = 0;
            while i < runs.len() && choice[i] == runs[i].1 {
                choice[i] = 0;
                i += 1;
            }
            if i == runs.len() {
                return;
            }
            choice[i] += 1;
        }
    }

    /// Multiset union ΛΩ.
    pub fn concat(&self, other: &VectorPartition) -> VectorPartition {
        debug_assert_eq!(self.width, other.width);
        let mut parts = Vec::with_capacity(self.len() + other.len());
        // merge of two descending sequences stays canonical
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            if self.parts[i] >= other.parts[j] {
                parts.push(self.parts[i].clone());
                i += 1;
            } else {
                parts.push(other.parts[j].clone());
                j += 1;
            }
        }
        parts.extend_from_slice(&self.parts[i..]);
        parts.extend_from_slice(&other.parts[j..]);
        VectorPartition {
            width: self.width,
            parts,
        }
    }

    /// Restriction Λ|_J to the part positions whose bit is set in `mask`,
    /// along with the complementary restriction.
    pub fn split(&self, mask: u64) -> (VectorPartition, VectorPartition) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (i, p) in self.parts.iter().enumerate() {
            if mask >> i & 1 == 1 {
                left.push(p.clone());
            } else {
                right.push(p.clone());
            }
        }
        (
            VectorPartition {
                width: self.width,
                parts: left,
            },
            VectorPartition {
                width: self.width,
                parts: right,
            },
        )
    }

    /// Deletes coordinate `coord` from every part, dropping parts that become
    /// zero, and re-canonicalizes.
    pub fn delete_coordinate(&self, coord: usize) -> VectorPartition {
        let parts: Vec<VectorVec> = self
            .parts
            .iter()
            .map(|p| {
                VectorVec::new(
                    p.coords()
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != coord)
                        .map(|(_, &c)| c),
                )
            })
            .filter(|p| !p.is_zero())
            .collect();
        VectorPartition::from_parts_unchecked(self.width - 1, parts)
    }

    /// Ordering used for canonical text output: grade, then length, then
    /// lexicographic comparison of the canonical part lists.
    pub fn display_cmp(&self, other: &VectorPartition) -> Ordering {
        self.grade()
            .cmp(&other.grade())
            .then(self.len().cmp(&other.len()))
            .then_with(|| self.parts.cmp(&other.parts))
    }

    /// Ordering by length, then canonical lexicographic order. Used for
    /// transition-matrix triangularity.
    pub fn length_lex_cmp(&self, other: &VectorPartition) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for VectorPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VectorPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.width
            .cmp(&other.width)
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl fmt::Display for VectorPartition {
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

/// Canonicalizes an unordered list of parts into a [`VectorPartition`].
///
/// An empty list yields the empty partition; its width is then unknown, so
/// callers that need a specific width should use [`VectorPartition::empty`].
pub fn vp_canonicalize(parts: Vec<VectorVec>) -> Result<VectorPartition> {
    let width = parts.first().map_or(0, VectorVec::width);
    for p in &parts {
        if p.width() != width {
            return Err(Error::WidthMismatch {
                expected: width,
                found: p.width(),
            });
        }
        if p.is_zero() {
            return Err(Error::ZeroPart);
        }
    }
    Ok(VectorPartition::from_parts_unchecked(width, parts))
}

/// Which parts [`vp_enumerate`] may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PartMode {
    /// Parts in ℙ^m (every coordinate ≥ 1). These are the only parts graph
    /// bitypes can have.
    #[default]
    Positive,
    /// Parts in ℕ^m ∖ {0}.
    Nonzero,
}

/// All vector partitions of `target`, each exactly once.
///
/// Partitions are produced in descending lexicographic order of their part
/// lists.
pub fn vp_enumerate(target: &VectorVec, mode: PartMode) -> Result<Vec<VectorPartition>> {
    if target.is_zero() {
        return Err(Error::ZeroTarget);
    }
    let width = target.width();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    enumerate_rec(target.clone(), None, mode, &mut stack, &mut out, width);
    Ok(out)
}

fn enumerate_rec(
    remaining: VectorVec,
    bound: Option<&VectorVec>,
    mode: PartMode,
    stack: &mut Vec<VectorVec>,
    out: &mut Vec<VectorPartition>,
    width: usize,
) {
    if remaining.is_zero() {
        out.push(VectorPartition {
            width,
            parts: stack.clone(),
        });
        return;
    }
    for part in parts_below(&remaining, mode) {
        if bound.is_some_and(|b| &part > b) {
            continue;
        }
        let mut rest = remaining.clone();
        for (r, p) in rest.coords_mut().iter_mut().zip(part.coords()) {
            *r -= *p;
        }
        stack.push(part);
        let part_ref = stack.last().cloned();
        enumerate_rec(rest, part_ref.as_ref(), mode, stack, out, width);
        stack.pop();
    }
}

/// Admissible parts `v ≤ remaining` (coordinatewise), descending lex.
fn parts_below(remaining: &VectorVec, mode: PartMode) -> Vec<VectorVec> {
    let lo = match mode {
        PartMode::Positive => 1,
        PartMode::Nonzero => 0,
    };
    let r = remaining.coords();
    if r.iter().any(|&c| c < lo) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<u32> = r.to_vec();
    // odometer counting down from `remaining` to `lo` in every coordinate
    loop {
        let v = VectorVec::from(cur.as_slice());
        if !v.is_zero() {
            out.push(v);
        }
        let mut i = cur.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] > lo {
                cur[i] -= 1;
                for (c, &top) in cur[i + 1..].iter_mut().zip(&r[i + 1..]) {
                    *c = top;
                }
                break;
            }
        }
    }
}

/// `binom(Λ, Ω) = Π_v binom(m_v(Λ), m_v(Ω))`: the number of ways to pick
/// the parts of Ω as a sub-multiset of the parts of Λ.
pub fn vp_binomial(lambda: &VectorPartition, omega: &VectorPartition) -> Coeff {
    debug_assert_eq!(lambda.width, omega.width);
    let ml = lambda.multiplicities();
    let mut acc: Coeff = 1;
    for (v, mo) in omega.multiplicities() {
        let top = ml.get(v).copied().unwrap_or(0);
        acc = c_mul(acc, binomial(top as i64, mo as i64));
        if acc == 0 {
            break;
        }
    }
    acc
}
