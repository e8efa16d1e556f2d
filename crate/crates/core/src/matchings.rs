//! Perfect matchings on `{0, .., m-1}`.
//!
//! The canonical order pairs the lowest unmatched vertex with each larger
//! unmatched partner in increasing order, recursively. [`rank`] and [`unrank`]
//! index matchings in that order without materialising the list.

use std::fmt;
use std::str::FromStr;

use crate::error::{GameError, Result};
use crate::game::{Edge, GameInstance};

/// A partition of `{0, .., m-1}` into `m/2` pairs, edges sorted by lower endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PerfectMatching {
    edges: Vec<Edge>,
}

impl PerfectMatching {
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Number of vertices covered.
    pub fn m(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    /// Vertex paired with `v`, if `v` is covered.
    pub fn partner(&self, v: usize) -> Option<usize> {
        self.edges.iter().find_map(|e| {
            if e.lo() == v {
                Some(e.hi())
            } else if e.hi() == v {
                Some(e.lo())
            } else {
                None
            }
        })
    }

    /// Position of `e` among the matching's edges (canonical edge order).
    pub fn edge_position(&self, e: &Edge) -> Option<usize> {
        self.edges.iter().position(|f| f == e)
    }
}

pub fn contains_edge(y: &PerfectMatching, e: &Edge) -> bool {
    y.contains_edge(e)
}

impl fmt::Display for PerfectMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, e) in self.edges.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for PerfectMatching {
    type Err = GameError;

    /// Parses the canonical textual form `i-j,k-l,...`. The vertex count is
    /// taken as twice the number of edges; edges must be sorted by lower
    /// endpoint.
    fn from_str(s: &str) -> Result<Self> {
        let edges = s
            .split(',')
            .map(str::parse::<Edge>)
            .collect::<Result<Vec<_>>>()?;
        if edges.windows(2).any(|w| w[0].lo() >= w[1].lo()) {
            return Err(GameError::Shape(format!(
                "matching {s:?} is not in canonical order"
            )));
        }
        let inst = GameInstance::new(2 * edges.len())?;
        let pairs: Vec<(usize, usize)> = edges.iter().map(|e| (e.lo(), e.hi())).collect();
        validate_matching(&pairs, &inst)
    }
}

/// Builds a matching from raw pairs, checking that they partition `{0..m-1}`.
pub fn validate_matching(pairs: &[(usize, usize)], inst: &GameInstance) -> Result<PerfectMatching> {
    let m = inst.m();
    let mut seen = vec![false; m];
    let mut edges = Vec::with_capacity(pairs.len());
    for &(i, j) in pairs {
        let e = Edge::new(i, j)?;
        if e.hi() >= m {
            return Err(GameError::IndexOutOfRange { index: e.hi(), m });
        }
        for v in [e.lo(), e.hi()] {
            if std::mem::replace(&mut seen[v], true) {
                return Err(GameError::Overlap(v));
            }
        }
        edges.push(e);
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(GameError::MissingVertex(v));
    }
    edges.sort();
    Ok(PerfectMatching { edges })
}

/// `(m-1)!!`, the number of perfect matchings on `m` points.
pub fn matching_count(m: usize) -> Result<u64> {
    if m < 2 || !m.is_multiple_of(2) {
        return Err(GameError::InvalidSize(m));
    }
    (1..m as u64)
        .step_by(2)
        .try_fold(1u64, |acc, k| acc.checked_mul(k))
        .ok_or(GameError::TooLarge { m, max: 32 })
}

/// Every perfect matching on `{0..m-1}`, in canonical order.
pub fn enumerate_matchings(inst: &GameInstance) -> Result<Vec<PerfectMatching>> {
    inst.require_table_size()?;
    let mut out = Vec::with_capacity(matching_count(inst.m())? as usize);
    let mut free: Vec<usize> = (0..inst.m()).collect();
    let mut current = Vec::with_capacity(inst.m() / 2);
    extend(&mut free, &mut current, &mut out);
    Ok(out)
}

fn extend(free: &mut Vec<usize>, current: &mut Vec<Edge>, out: &mut Vec<PerfectMatching>) {
    if free.is_empty() {
        let mut edges = current.clone();
        edges.sort();
        out.push(PerfectMatching { edges });
        return;
    }
    let lo = free.remove(0);
    for k in 0..free.len() {
        let hi = free.remove(k);
        current.push(Edge::new(lo, hi).expect("distinct"));
        extend(free, current, out);
        current.pop();
        free.insert(k, hi);
    }
    free.insert(0, lo);
}

/// Position of `y` in the canonical enumeration.
pub fn rank(y: &PerfectMatching) -> usize {
    let m = y.m();
    let mut free: Vec<usize> = (0..m).collect();
    let mut r = 0usize;
    while !free.is_empty() {
        let lo = free.remove(0);
        let hi = y.partner(lo).expect("perfect matching covers every vertex");
        let k = free.iter().position(|&v| v == hi).expect("partner is free");
        free.remove(k);
        r = r * (free.len() + 1) + k;
    }
    r
}

/// Inverse of [`rank`].
pub fn unrank(inst: &GameInstance, mut r: usize) -> Result<PerfectMatching> {
    let total = matching_count(inst.m())? as usize;
    if r >= total {
        return Err(GameError::IndexOutOfRange { index: r, m: inst.m() });
    }
    // Mixed radix with digits (m-1), (m-3), ..., 1 from most to least significant.
    let radices: Vec<usize> = (1..inst.m()).step_by(2).collect();
    let mut digits = vec![0usize; radices.len()];
    for (d, &radix) in digits.iter_mut().zip(&radices) {
        *d = r % radix;
        r /= radix;
    }
    digits.reverse();
    let mut free: Vec<usize> = (0..inst.m()).collect();
    let mut edges = Vec::with_capacity(inst.m() / 2);
    for k in digits {
        let lo = free.remove(0);
        let hi = free.remove(k);
        edges.push(Edge::new(lo, hi)?);
    }
    edges.sort();
    Ok(PerfectMatching { edges })
}
