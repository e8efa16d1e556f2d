//! Graphs with parity labels, and the analysis that rules out classical
//! winning strategies for `m >= 8`.
//!
//! A colouring according to `h` assigns a bit to every vertex so that the
//! endpoints of each edge differ exactly when `h` marks the edge with 1. A
//! graph either has no such colouring or exactly `2^k`, `k` the number of
//! components, so counts are found by parity propagation rather than
//! enumeration.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{GameError, Result};
use crate::game::{ceil_log2, BitString, Edge, GameInstance};
use crate::matchings::{validate_matching, PerfectMatching};
use crate::strategy::{DeterministicStrategy, StrategyTable};

/// Undirected simple graph on `{0, .., vertex_count-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: BTreeSet<Edge>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        if vertex_count == 0 || vertex_count > 64 {
            return Err(GameError::InvalidLength { len: vertex_count });
        }
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        let mut adjacency = vec![Vec::new(); vertex_count];
        for e in &edges {
            if e.hi() >= vertex_count {
                return Err(GameError::IndexOutOfRange {
                    index: e.hi(),
                    m: vertex_count,
                });
            }
            adjacency[e.lo()].push(e.hi());
            adjacency[e.hi()].push(e.lo());
        }
        Ok(Self {
            vertex_count,
            edges,
            adjacency,
        })
    }

    pub fn from_pairs(vertex_count: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let edges = pairs
            .iter()
            .map(|&(i, j)| Edge::new(i, j))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertex_count, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }
}

/// A bit on every edge of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityFunction {
    labels: BTreeMap<Edge, u8>,
}

impl ParityFunction {
    /// Fails unless the labelled edges are exactly the graph's edges.
    pub fn new(g: &Graph, labels: BTreeMap<Edge, u8>) -> Result<Self> {
        if labels.len() != g.edges.len() || !labels.keys().all(|e| g.edges.contains(e)) {
            return Err(GameError::Shape(
                "parity function domain differs from the edge set".into(),
            ));
        }
        if labels.values().any(|&b| b > 1) {
            return Err(GameError::Shape("parity labels must be 0 or 1".into()));
        }
        Ok(Self { labels })
    }

    /// The same bit on every edge.
    pub fn constant(g: &Graph, bit: u8) -> Result<Self> {
        Self::new(g, g.edges.iter().map(|&e| (e, bit)).collect())
    }

    pub fn get(&self, e: &Edge) -> Option<u8> {
        self.labels.get(e).copied()
    }

    pub fn labels(&self) -> &BTreeMap<Edge, u8> {
        &self.labels
    }
}

/// Vertex 2-colouring.
pub type Coloring = Vec<u8>;

/// Union-find where each node stores its parity relative to its parent.
struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<u8>,
    size: Vec<usize>,
}

impl ParityUnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            parity: vec![0; n],
            size: vec![1; n],
        }
    }

    /// Root of `v` and the parity of `v` relative to it.
    fn find(&mut self, v: usize) -> (usize, u8) {
        let p = self.parent[v];
        if p == v {
            return (v, 0);
        }
        let (root, up) = self.find(p);
        self.parity[v] ^= up;
        self.parent[v] = root;
        (root, self.parity[v])
    }

    /// Records `c(u) ^ c(v) = bit`; returns false on contradiction.
    fn union(&mut self, u: usize, v: usize, bit: u8) -> bool {
        let (ru, pu) = self.find(u);
        let (rv, pv) = self.find(v);
        if ru == rv {
            return pu ^ pv == bit;
        }
        let (big, small) = if self.size[ru] >= self.size[rv] {
            (ru, rv)
        } else {
            (rv, ru)
        };
        self.parent[small] = big;
        self.parity[small] = pu ^ pv ^ bit;
        self.size[big] += self.size[small];
        true
    }
}

/// A colouring with every union-find root coloured 0, or `None` when the
/// constraints are contradictory.
fn base_coloring(g: &Graph, h: &ParityFunction) -> Option<Coloring> {
    let mut uf = ParityUnionFind::new(g.vertex_count);
    for (e, &bit) in &h.labels {
        if !uf.union(e.lo(), e.hi(), bit) {
            return None;
        }
    }
    Some((0..g.vertex_count).map(|v| uf.find(v).1).collect())
}

/// Maximal connected vertex sets, each sorted, ordered by smallest vertex.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.vertex_count];
    let mut out = Vec::new();
    for start in 0..g.vertex_count {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Length of a shortest path, or `None` when `u` and `v` are in different
/// components.
pub fn distance(g: &Graph, u: usize, v: usize) -> Result<Option<usize>> {
    for w in [u, v] {
        if w >= g.vertex_count {
            return Err(GameError::IndexOutOfRange {
                index: w,
                m: g.vertex_count,
            });
        }
    }
    let mut dist = vec![usize::MAX; g.vertex_count];
    dist[u] = 0;
    let mut queue = VecDeque::from([u]);
    while let Some(w) = queue.pop_front() {
        if w == v {
            return Ok(Some(dist[w]));
        }
        for &next in g.neighbours(w) {
            if dist[next] == usize::MAX {
                dist[next] = dist[w] + 1;
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

/// Number of colourings of `g` according to `h`: 0 or `2^k`.
pub fn count_colorings(g: &Graph, h: &ParityFunction) -> u128 {
    match base_coloring(g, h) {
        None => 0,
        Some(_) => 1u128 << components(g).len(),
    }
}

/// `h({u, v}) = r_u ^ r_v` on every edge of `g`.
pub fn h_from_representative(r: &BitString, g: &Graph) -> Result<ParityFunction> {
    if r.len() != g.vertex_count {
        return Err(GameError::LengthMismatch {
            left: r.len(),
            right: g.vertex_count,
        });
    }
    ParityFunction::new(
        g,
        g.edges
            .iter()
            .map(|&e| (e, r.bit(e.lo()) ^ r.bit(e.hi())))
            .collect(),
    )
}

/// Every colouring according to `h`, written as `c(0) c(1) .. c(n-1)`.
pub fn strings_from_colorings(g: &Graph, h: &ParityFunction) -> BTreeSet<BitString> {
    let Some(base) = base_coloring(g, h) else {
        return BTreeSet::new();
    };
    let comps = components(g);
    let n = g.vertex_count;
    let to_mask = |vs: &[usize]| vs.iter().fold(0u64, |acc, &v| acc | (1u64 << (n - 1 - v)));
    let base_word = base
        .iter()
        .enumerate()
        .fold(0u64, |acc, (v, &c)| acc | (u64::from(c) << (n - 1 - v)));
    let masks: Vec<u64> = comps.iter().map(|c| to_mask(c)).collect();
    (0u64..1 << masks.len())
        .map(|choice| {
            let flip = masks
                .iter()
                .enumerate()
                .filter(|(k, _)| choice >> k & 1 == 1)
                .fold(0u64, |acc, (_, m)| acc | m);
            BitString::new(base_word ^ flip, n).expect("width matches")
        })
        .collect()
}

/// `G_s`: every edge Bob outputs on some matching.
pub fn build_gs(s: &DeterministicStrategy) -> Graph {
    Graph::new(s.instance().m(), s.bob_table().iter().map(|b| b.edge)).expect("Bob edges lie within 0..m")
}

/// Separate checks of the three necessary conditions satisfied by any
/// classical winning strategy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma2Report {
    /// Alice output whose preimage is the largest class `R`.
    pub output: BitString,
    pub output_class_size: u64,
    /// `2^m / 2^n`.
    pub required_size: u64,
    pub max_component_size: usize,
    /// `m / 2`; the largest component must be strictly larger.
    pub half_m: usize,
    /// Every edge of `G_s` sees one parity value across `R`.
    pub parity_consistent: bool,
}

impl Lemma2Report {
    pub fn class_condition(&self) -> bool {
        self.output_class_size >= self.required_size
    }

    pub fn component_condition(&self) -> bool {
        self.max_component_size > self.half_m
    }

    pub fn all_conditions(&self) -> bool {
        self.class_condition() && self.component_condition() && self.parity_consistent
    }

    /// `key=value` lines.
    pub fn to_lines(&self) -> String {
        format!(
            "output={}\nclass_size={}\nrequired_size={}\nclass_condition={}\n\
             max_component={}\nhalf_m={}\ncomponent_condition={}\nparity_consistent={}\n\
             all_conditions={}\n",
            self.output,
            self.output_class_size,
            self.required_size,
            self.class_condition(),
            self.max_component_size,
            self.half_m,
            self.component_condition(),
            self.parity_consistent,
            self.all_conditions()
        )
    }
}

pub fn audit_lemma2(s: &DeterministicStrategy) -> Lemma2Report {
    let alice = s.alice_table();
    let inst = *s.instance();
    let m = inst.m();

    let mut class_sizes = vec![0u64; inst.output_count() as usize];
    for a in alice {
        class_sizes[a.value() as usize] += 1;
    }
    // Largest class; the smallest output wins ties.
    let (best, &size) = class_sizes
        .iter()
        .enumerate()
        .max_by(|(i, a), (j, b)| a.cmp(b).then(j.cmp(i)))
        .expect("at least one output");
    let output = inst.output(best as u64);

    let gs = build_gs(s);
    let max_component_size = components(&gs).iter().map(Vec::len).max().unwrap_or(0);

    let class: Vec<u64> = (0..inst.input_count())
        .filter(|&x| alice[x as usize] == output)
        .collect();
    let parity_consistent = gs.edges().iter().all(|e| {
        let mask = (1u64 << (m - 1 - e.lo())) | (1u64 << (m - 1 - e.hi()));
        let first = (class[0] & mask).count_ones() & 1;
        class.iter().all(|x| (x & mask).count_ones() & 1 == first)
    });

    Lemma2Report {
        output,
        output_class_size: size,
        required_size: 1u64 << (m - inst.n()),
        max_component_size,
        half_m: m / 2,
        parity_consistent,
    }
}

/// Builds a perfect matching whose every edge joins two different parts of
/// `partition`.
///
/// Parts are taken largest first (ties by smallest vertex). Working from the
/// smallest part upwards, the unmatched vertices of each part are paired with
/// unmatched vertices of the next larger part. Leftover vertices of the
/// largest part are then placed by dissolving the most recent pairs that do
/// not touch it and pairing each of their endpoints with a leftover.
pub fn cross_component_matching(partition: &[Vec<usize>]) -> Result<PerfectMatching> {
    let m: usize = partition.iter().map(Vec::len).sum();
    if m == 0 || !m.is_multiple_of(2) {
        return Err(GameError::Precondition(format!(
            "partition covers {m} vertices; an even positive count is required"
        )));
    }
    let inst = GameInstance::new(m)?;
    let mut seen = vec![false; m];
    for &v in partition.iter().flatten() {
        if v >= m {
            return Err(GameError::IndexOutOfRange { index: v, m });
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(GameError::Overlap(v));
        }
    }
    if let Some(big) = partition.iter().find(|p| p.len() > m / 2) {
        return Err(GameError::Precondition(format!(
            "a part has {} > m/2 = {} vertices",
            big.len(),
            m / 2
        )));
    }

    let mut parts: Vec<Vec<usize>> = partition
        .iter()
        .filter(|p| !p.is_empty())
        .map(|p| {
            let mut p = p.clone();
            p.sort_unstable();
            p
        })
        .collect();
    parts.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));

    // Unmatched vertices per part, consumed from the front.
    let mut free: Vec<VecDeque<usize>> = parts.iter().map(|p| p.iter().copied().collect()).collect();
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(m / 2);

    while let Some(j) = (1..free.len()).rev().find(|&j| !free[j].is_empty()) {
        while let Some(u) = free[j].pop_front() {
            let v = free[j - 1].pop_front().ok_or_else(|| {
                GameError::Precondition("next larger part ran out of vertices".into())
            })?;
            pairs.push((u, v));
        }
    }

    let leftovers: Vec<usize> = free[0].drain(..).collect();
    if !leftovers.is_empty() {
        let largest: BTreeSet<usize> = parts[0].iter().copied().collect();
        let needed = leftovers.len() / 2;
        let removable: Vec<usize> = (0..pairs.len())
            .rev()
            .filter(|&k| !largest.contains(&pairs[k].0) && !largest.contains(&pairs[k].1))
            .take(needed)
            .collect();
        if removable.len() < needed {
            return Err(GameError::Precondition(
                "not enough pairs outside the largest part".into(),
            ));
        }
        let mut removed: Vec<(usize, usize)> = removable.iter().map(|&k| pairs[k]).collect();
        // Reassign in insertion order.
        removed.reverse();
        let gone: BTreeSet<usize> = removable.into_iter().collect();
        pairs = pairs
            .into_iter()
            .enumerate()
            .filter(|(k, _)| !gone.contains(k))
            .map(|(_, p)| p)
            .collect();
        let mut left = leftovers.into_iter();
        for (u, v) in removed {
            pairs.push((u, left.next().expect("two leftovers per removed pair")));
            pairs.push((v, left.next().expect("two leftovers per removed pair")));
        }
    }

    validate_matching(&pairs, &inst)
}

/// Arithmetic behind the non-existence argument for a given `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub m: usize,
    /// Components forced by the colouring count, `m - ceil(log2 m)`.
    pub components_needed: usize,
    /// Components allowed by a part larger than `m/2`, at most `m/2`.
    pub components_possible: usize,
    pub excluded: bool,
}

impl std::fmt::Display for Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "excluded={} needed={} possible={}",
            self.excluded, self.components_needed, self.components_possible
        )
    }
}

/// When `excluded`, no classical deterministic winning strategy exists for `m`.
pub fn theorem2_certificate(m: usize) -> Result<Certificate> {
    if m < 2 || !m.is_multiple_of(2) {
        return Err(GameError::InvalidSize(m));
    }
    let needed = m - ceil_log2(m);
    let possible = m / 2;
    Ok(Certificate {
        m,
        components_needed: needed,
        components_possible: possible,
        excluded: possible < needed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::figures::figure_strategy;
    use crate::strategy::BobOutput;
    use proptest::prelude::*;

    fn graph(n: usize, pairs: &[(usize, usize)]) -> Graph {
        Graph::from_pairs(n, pairs).unwrap()
    }

    fn edge_text(g: &Graph) -> Vec<String> {
        g.edges().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn gs_of_figures() {
        let g4 = build_gs(&figure_strategy(4).unwrap());
        assert_eq!(edge_text(&g4), vec!["0-1", "0-2", "1-2"]);
        let g6 = build_gs(&figure_strategy(6).unwrap());
        assert_eq!(edge_text(&g6), vec!["0-1", "0-2", "0-4", "1-2", "1-4", "2-4"]);
    }

    #[test]
    fn gs_of_edge_through_zero() {
        let m4 = GameInstance::new(4).unwrap();
        let s = DeterministicStrategy::from_fns(
            m4,
            |_| m4.output(0),
            |y| BobOutput {
                edge: *y.edges().iter().find(|e| e.contains(0)).unwrap(),
                b2: m4.output(0),
            },
        )
        .unwrap();
        assert_eq!(edge_text(&build_gs(&s)), vec!["0-1", "0-2", "0-3"]);
    }

    #[test]
    fn component_examples() {
        assert_eq!(components(&graph(4, &[])), vec![vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(
            components(&graph(4, &[(0, 1), (0, 2), (1, 2)])),
            vec![vec![0, 1, 2], vec![3]]
        );
        assert_eq!(components(&graph(4, &[(0, 1), (2, 3)])), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn distance_examples() {
        let path = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(distance(&path, 1, 1).unwrap(), Some(0));
        assert_eq!(distance(&path, 0, 2).unwrap(), Some(2));
        let split = graph(4, &[(0, 1)]);
        assert_eq!(distance(&split, 0, 3).unwrap(), None);
        assert!(distance(&split, 0, 4).is_err());
    }

    #[test]
    fn coloring_counts() {
        let single = graph(2, &[(0, 1)]);
        assert_eq!(count_colorings(&single, &ParityFunction::constant(&single, 1).unwrap()), 2);
        let with_isolated = graph(3, &[(0, 1)]);
        assert_eq!(
            count_colorings(&with_isolated, &ParityFunction::constant(&with_isolated, 1).unwrap()),
            4
        );
        let triangle = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(count_colorings(&triangle, &ParityFunction::constant(&triangle, 1).unwrap()), 0);
        let empty = graph(3, &[]);
        assert_eq!(count_colorings(&empty, &ParityFunction::constant(&empty, 0).unwrap()), 8);
    }

    #[test]
    fn parity_function_domain_is_checked() {
        let g = graph(3, &[(0, 1)]);
        let wrong = BTreeMap::from([(Edge::new(1, 2).unwrap(), 0)]);
        assert!(ParityFunction::new(&g, wrong).is_err());
    }

    #[test]
    fn representative_parities() {
        let g = graph(4, &[(0, 1), (1, 2), (0, 2)]);
        let h0 = h_from_representative(&"0000".parse().unwrap(), &g).unwrap();
        assert!(h0.labels().values().all(|&b| b == 0));
        let h = h_from_representative(&"0110".parse().unwrap(), &g).unwrap();
        let bits: Vec<u8> = h.labels().values().copied().collect();
        // Label order is 0-1, 0-2, 1-2.
        assert_eq!(bits, vec![1, 1, 0]);
        assert_eq!(h.get(&Edge::new(1, 2).unwrap()), Some(0));
        assert!(h_from_representative(&"011".parse().unwrap(), &g).is_err());
    }

    #[test]
    fn coloring_strings() {
        let text = |set: BTreeSet<BitString>| set.iter().map(ToString::to_string).collect::<Vec<_>>();
        let empty = graph(2, &[]);
        assert_eq!(
            text(strings_from_colorings(&empty, &ParityFunction::constant(&empty, 0).unwrap())),
            vec!["00", "01", "10", "11"]
        );
        let edge = graph(2, &[(0, 1)]);
        assert_eq!(
            text(strings_from_colorings(&edge, &ParityFunction::constant(&edge, 0).unwrap())),
            vec!["00", "11"]
        );
        let triangle = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let h = h_from_representative(&"011".parse().unwrap(), &triangle).unwrap();
        assert_eq!(text(strings_from_colorings(&triangle, &h)), vec!["011", "100"]);
    }

    #[test]
    fn figure_audits() {
        let r4 = audit_lemma2(&figure_strategy(4).unwrap());
        assert_eq!(r4.output.to_string(), "00");
        assert_eq!((r4.output_class_size, r4.required_size), (4, 4));
        assert_eq!((r4.max_component_size, r4.half_m), (3, 2));
        assert!(r4.parity_consistent && r4.all_conditions());

        let r6 = audit_lemma2(&figure_strategy(6).unwrap());
        assert_eq!((r6.output_class_size, r6.required_size), (8, 8));
        assert_eq!((r6.max_component_size, r6.half_m), (4, 3));
        assert!(r6.all_conditions());
    }

    #[test]
    fn constant_alice_breaks_parity() {
        let m4 = GameInstance::new(4).unwrap();
        let s = DeterministicStrategy::from_fns(
            m4,
            |_| m4.output(0),
            |y| BobOutput {
                edge: y.edges()[0],
                b2: m4.output(0),
            },
        )
        .unwrap();
        let r = audit_lemma2(&s);
        assert_eq!(r.output_class_size, 16);
        assert!(!r.parity_consistent);
        assert!(r.to_lines().contains("parity_consistent=false\n"));
    }

    #[test]
    fn cross_matching_examples() {
        let y = cross_component_matching(&[vec![0], vec![1]]).unwrap();
        assert_eq!(y.to_string(), "0-1");
        let y = cross_component_matching(&[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(y.to_string(), "0-2,1-3");
        let y = cross_component_matching(&[vec![0, 1, 2, 3], vec![4, 5], vec![6, 7]]).unwrap();
        assert_eq!(y.to_string(), "0-6,1-4,2-7,3-5");
    }

    #[test]
    fn cross_matching_preconditions() {
        assert!(matches!(
            cross_component_matching(&[vec![0, 1, 2], vec![3]]),
            Err(GameError::Precondition(_))
        ));
        assert!(matches!(
            cross_component_matching(&[vec![0, 1], vec![2]]),
            Err(GameError::Precondition(_))
        ));
        assert!(cross_component_matching(&[vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn certificate_values() {
        let c8 = theorem2_certificate(8).unwrap();
        assert_eq!(c8.to_string(), "excluded=true needed=5 possible=4");
        let c6 = theorem2_certificate(6).unwrap();
        assert!(!c6.excluded);
        assert_eq!((c6.components_needed, c6.components_possible), (3, 3));
        let c64 = theorem2_certificate(64).unwrap();
        assert!(c64.excluded);
        assert_eq!((c64.components_needed, c64.components_possible), (58, 32));
        assert!(theorem2_certificate(7).is_err());
        for m in (2..=64).step_by(2) {
            assert_eq!(theorem2_certificate(m).unwrap().excluded, m >= 8);
        }
    }

    fn brute_force_count(g: &Graph, h: &ParityFunction) -> u128 {
        let n = g.vertex_count();
        (0u32..1 << n)
            .filter(|c| {
                h.labels()
                    .iter()
                    .all(|(e, &b)| ((c >> e.lo() ^ c >> e.hi()) & 1) as u8 == b)
            })
            .count() as u128
    }

    fn graph_and_labels() -> impl Strategy<Value = (Graph, ParityFunction)> {
        (1usize..=6)
            .prop_flat_map(|n| {
                let all: Vec<(usize, usize)> = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .collect();
                let k = all.len();
                (Just(n), Just(all), proptest::collection::vec(0u8..3, k))
            })
            .prop_map(|(n, all, picks)| {
                // 0: absent, 1: edge labelled 0, 2: edge labelled 1
                let chosen: Vec<_> = all.iter().zip(&picks).filter(|(_, &p)| p > 0).collect();
                let g = Graph::from_pairs(n, &chosen.iter().map(|(e, _)| **e).collect::<Vec<_>>()).unwrap();
                let labels = chosen
                    .iter()
                    .map(|(&(i, j), &p)| (Edge::new(i, j).unwrap(), p - 1))
                    .collect();
                let h = ParityFunction::new(&g, labels).unwrap();
                (g, h)
            })
    }

    proptest! {
        #[test]
        fn count_matches_brute_force((g, h) in graph_and_labels()) {
            prop_assert_eq!(count_colorings(&g, &h), brute_force_count(&g, &h));
            prop_assert_eq!(strings_from_colorings(&g, &h).len() as u128, count_colorings(&g, &h));
        }

        #[test]
        fn representative_is_a_coloring((g, _h) in graph_and_labels(), r in 0u64..64) {
            let n = g.vertex_count();
            let r = BitString::new(r & ((1 << n) - 1), n).unwrap();
            let h = h_from_representative(&r, &g).unwrap();
            let strings = strings_from_colorings(&g, &h);
            prop_assert!(strings.contains(&r));
            prop_assert_eq!(strings.len() as u128, count_colorings(&g, &h));
            // Closed under flipping any single component.
            for comp in components(&g) {
                let flip = comp.iter().fold(0u64, |acc, &v| acc | 1 << (n - 1 - v));
                let flipped = BitString::new(r.value() ^ flip, n).unwrap();
                prop_assert!(strings.contains(&flipped));
            }
            prop_assert!(strings.contains(&r.complement()));
        }
    }
}
