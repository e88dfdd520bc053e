//! Shift graphs `G_{N,2}`, their intervals `I_0..I_n` and the critical core `W`.
//!
//! Vertices are ordered pairs `(x, y)` with `1 <= x < y <= N`, and `(x, y)` is
//! adjacent to `(y, z)`. Adjacency is never materialized on the parent graph;
//! it is derived from the chaining rule whenever it is needed, so graphs with
//! `N` in the low thousands stay cheap to construct.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest exponent accepted by [`critical_core`]; `|W|` grows roughly like `4^n`.
pub const MAX_CORE_EXPONENT: u32 = 12;

/// An ordered pair `(x, y)` with `x < y`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub x: u32,
    pub y: u32,
}

impl Vertex {
    pub const fn new(x: u32, y: u32) -> Self {
        Vertex { x, y }
    }

    /// True when `self` and `other` chain as `x < y < z` in either direction.
    #[inline]
    pub fn is_adjacent(&self, other: &Vertex) -> bool {
        self.y == other.x || other.y == self.x
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl From<(u32, u32)> for Vertex {
    fn from((x, y): (u32, u32)) -> Self {
        Vertex { x, y }
    }
}

/// The shift graph `G_{N,2}` on the ground interval `[1, N]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ShiftGraph {
    n_points: u32,
}

impl ShiftGraph {
    pub fn new(n_points: u32) -> Result<Self> {
        if n_points < 2 {
            return Err(Error::InvalidParameter(format!(
                "shift graph needs N >= 2, got {n_points}"
            )));
        }
        Ok(ShiftGraph { n_points })
    }

    pub fn n_points(&self) -> u32 {
        self.n_points
    }

    /// `N(N-1)/2`.
    pub fn vertex_count(&self) -> usize {
        let n = self.n_points as usize;
        n * (n - 1) / 2
    }

    /// One edge per chain `x < y < z`, so `C(N, 3)`.
    pub fn edge_count(&self) -> usize {
        let n = self.n_points as usize;
        n * (n - 1) * (n - 2) / 6
    }

    pub fn contains(&self, v: Vertex) -> bool {
        1 <= v.x && v.x < v.y && v.y <= self.n_points
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                n_points: self.n_points,
            })
        }
    }

    /// 0-based position of `v` in lexicographic order.
    pub fn index_of(&self, v: Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        let n = self.n_points as usize;
        let x = v.x as usize;
        let before = (x - 1) * n - (x - 1) * x / 2;
        Ok(before + (v.y as usize - x - 1))
    }

    /// All vertices in lexicographic order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        let n = self.n_points;
        (1..n).flat_map(move |x| (x + 1..=n).map(move |y| Vertex::new(x, y)))
    }

    /// `{(w, x) : w < x} ∪ {(y, z) : z > y}` for `v = (x, y)`, sorted.
    pub fn neighbors(&self, v: Vertex) -> Result<Vec<Vertex>> {
        self.check_vertex(v)?;
        let left = (1..v.x).map(|w| Vertex::new(w, v.x));
        let right = (v.y + 1..=self.n_points).map(|z| Vertex::new(v.y, z));
        Ok(left.chain(right).collect())
    }

    pub fn degree(&self, v: Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        Ok((v.x - 1) as usize + (self.n_points - v.y) as usize)
    }

    /// Edges `((x,y),(y,z))` in lexicographic order of `(x, y, z)`.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let n = self.n_points;
        (1..n).flat_map(move |x| {
            (x + 1..n)
                .flat_map(move |y| (y + 1..=n).map(move |z| (Vertex::new(x, y), Vertex::new(y, z))))
        })
    }

    /// Edge-wise common-neighbor check.
    pub fn is_triangle_free(&self) -> bool {
        self.edges().all(|(u, v)| {
            // both endpoints are valid by construction
            let nu = self.neighbors(u).expect("edge endpoint");
            let nv = self.neighbors(v).expect("edge endpoint");
            !sorted_intersect(&nu, &nv)
        })
    }

    /// The induced subgraph `G[X]`. Duplicates in `vertices` are dropped.
    pub fn induced<I>(&self, vertices: I) -> Result<InducedSubgraph<'_>>
    where
        I: IntoIterator<Item = Vertex>,
    {
        let mut vs: Vec<Vertex> = vertices.into_iter().collect();
        for &v in &vs {
            self.check_vertex(v)?;
        }
        vs.sort_unstable();
        vs.dedup();
        Ok(InducedSubgraph {
            graph: self,
            vertices: vs,
        })
    }

    pub fn full(&self) -> InducedSubgraph<'_> {
        InducedSubgraph {
            graph: self,
            vertices: self.vertices().collect(),
        }
    }
}

fn sorted_intersect(a: &[Vertex], b: &[Vertex]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// A view of `G[X]` for a vertex set `X` of a parent shift graph.
///
/// Local indices `0..len()` follow the sorted vertex order.
#[derive(Debug, Clone)]
pub struct InducedSubgraph<'g> {
    graph: &'g ShiftGraph,
    vertices: Vec<Vertex>,
}

impl<'g> InducedSubgraph<'g> {
    pub fn graph(&self) -> &'g ShiftGraph {
        self.graph
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.position(v).is_some()
    }

    /// Local-index edges `(i, j)` with `vertices[i] = (x,y)`, `vertices[j] = (y,z)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let starts = self.left_endpoint_ranges();
        let mut out = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if let Some(range) = starts.get(v.y as usize).and_then(|r| r.clone()) {
                out.extend(range.map(|j| (i, j)));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Adjacency lists over local indices, each sorted.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.len()];
        for (i, j) in self.edges() {
            adj[i].push(j);
            adj[j].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// The view with `v` removed (no-op when `v` is absent).
    pub fn without(&self, v: Vertex) -> InducedSubgraph<'g> {
        InducedSubgraph {
            graph: self.graph,
            vertices: self.vertices.iter().copied().filter(|&u| u != v).collect(),
        }
    }

    // Vertices are sorted by x, so those sharing a left endpoint are contiguous.
    fn left_endpoint_ranges(&self) -> Vec<Option<std::ops::Range<usize>>> {
        let mut ranges: Vec<Option<std::ops::Range<usize>>> =
            vec![None; self.graph.n_points as usize + 1];
        let mut i = 0;
        while i < self.vertices.len() {
            let x = self.vertices[i].x;
            let mut j = i;
            while j < self.vertices.len() && self.vertices[j].x == x {
                j += 1;
            }
            ranges[x as usize] = Some(i..j);
            i = j;
        }
        ranges
    }

    /// DIMACS `edge` format with 1-based ids in lexicographic vertex order.
    pub fn to_dimacs(&self) -> String {
        use std::fmt::Write;
        let edges = self.edges();
        let mut out = String::new();
        let _ = writeln!(
            out,
            "c induced subgraph of shift graph G_{{{},2}}",
            self.graph.n_points
        );
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "c vertex {} = ({},{})", i + 1, v.x, v.y);
        }
        let _ = writeln!(out, "p edge {} {}", self.len(), edges.len());
        for (i, j) in edges {
            let _ = writeln!(out, "e {} {}", i + 1, j + 1);
        }
        out
    }
}

/// Inclusive integer interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: u32,
    pub hi: u32,
}

impl Interval {
    pub fn new(lo: u32, hi: u32) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidParameter(format!(
                "empty interval [{lo},{hi}]"
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn contains(&self, p: u32) -> bool {
        self.lo <= p && p <= self.hi
    }

    pub fn len(&self) -> u32 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// The vertex set `W` of `G_{2^n+1,2}` with its intervals `I_0..I_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalCore {
    n: u32,
    intervals: Vec<Interval>,
    members: Vec<Vertex>,
}

/// `I_l = [2^l, 2^n - 2^(n-l) + 2]` for `0 <= l <= n`.
pub fn core_interval(n: u32, level: u32) -> Interval {
    debug_assert!(level <= n);
    Interval {
        lo: 1 << level,
        hi: (1u32 << n) - (1u32 << (n - level)) + 2,
    }
}

pub fn critical_core(n: u32) -> Result<CriticalCore> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "critical core needs n >= 2, got {n}"
        )));
    }
    if n > MAX_CORE_EXPONENT {
        return Err(Error::InvalidParameter(format!(
            "critical core supports n <= {MAX_CORE_EXPONENT}, got {n}"
        )));
    }
    let intervals: Vec<Interval> = (0..=n).map(|l| core_interval(n, l)).collect();
    let top = (1u32 << n) + 1;
    // Both ends of the intervals increase with l, so (x, y) lies in some I_l
    // iff y <= hi of the last interval starting at or before x.
    let mut members = Vec::new();
    for x in 1..top {
        let reach = intervals
            .iter()
            .filter(|iv| iv.lo <= x)
            .map(|iv| iv.hi)
            .max()
            .unwrap_or(0);
        members.extend((x + 1..=reach).map(|y| Vertex::new(x, y)));
    }
    Ok(CriticalCore {
        n,
        intervals,
        members,
    })
}

impl CriticalCore {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// `2^n + 1`.
    pub fn n_points(&self) -> u32 {
        (1 << self.n) + 1
    }

    pub fn graph(&self) -> ShiftGraph {
        ShiftGraph {
            n_points: self.n_points(),
        }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    /// Members of `W` in lexicographic order.
    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Least `l` with `{x, y} ⊆ I_l`.
    pub fn witness_level(&self, v: Vertex) -> Option<u32> {
        if v.x >= v.y {
            return None;
        }
        self.intervals
            .iter()
            .position(|iv| iv.contains(v.x) && iv.contains(v.y))
            .map(|l| l as u32)
    }

    /// Vertices of `G_{2^n+1,2}` outside `W`, lexicographic.
    pub fn non_members(&self) -> Vec<Vertex> {
        self.graph()
            .vertices()
            .filter(|v| !self.contains(*v))
            .collect()
    }

    /// Lower-left corner `(2^l, 2^(n-l))` of region `l` in the diagram grid.
    pub fn region_corner(&self, level: u32) -> (u32, u32) {
        let iv = self.intervals[level as usize];
        (iv.lo, self.n_points() + 1 - iv.hi)
    }
}
