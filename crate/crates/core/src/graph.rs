//! Weighted multigraphs with positional edge identity, plus the contraction,
//! deletion and refinement operations the stability machinery is built on.
//!
//! Edges are ordered pairs `(s, t)` of vertex indices; loops and parallel
//! edges are allowed. An edge keeps its index through deletions and
//! refinements, which is what lets edge subsets be plain bitsets.

use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

/// Hard cap on edge count so edge subsets fit in a `u64` bitset.
pub const MAX_EDGES: usize = 64;
/// Hard cap on vertex count for the u32 vertex bitsets.
pub const MAX_VERTICES: usize = 32;
/// Vertex-subset scans are `2^|V|`; guard them at this many vertices.
pub const MAX_SCAN_VERTICES: usize = 16;
/// Brute-force isomorphism search is `|V|!`-ish; guard it here.
pub const MAX_ISO_VERTICES: usize = 8;

/// Subset of edge indices as a bitset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct EdgeSet(pub u64);

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);

    pub fn full(n_edges: usize) -> EdgeSet {
        assert!(n_edges <= MAX_EDGES);
        if n_edges == 64 {
            EdgeSet(u64::MAX)
        } else {
            EdgeSet((1u64 << n_edges) - 1)
        }
    }

    pub fn from_indices(indices: &[usize]) -> EdgeSet {
        let mut bits = 0u64;
        for &i in indices {
            assert!(i < MAX_EDGES);
            bits |= 1 << i;
        }
        EdgeSet(bits)
    }

    pub fn singleton(i: usize) -> EdgeSet {
        assert!(i < MAX_EDGES);
        EdgeSet(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_EDGES && self.0 & (1 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < MAX_EDGES);
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        assert!(i < MAX_EDGES);
        self.0 &= !(1 << i);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 & other.0)
    }

    pub fn difference(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: EdgeSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Ascending iterator over the member indices.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn indices(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, ascending as bit patterns.
    pub fn subsets(self) -> impl Iterator<Item = EdgeSet> {
        let mask = self.0;
        let mut cur = 0u64;
        let mut done = false;
        core::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = EdgeSet(cur);
            if cur == mask {
                done = true;
            } else {
                cur = (cur.wrapping_sub(mask)) & mask;
            }
            Some(out)
        })
    }
}

/// Subset of vertex indices as a bitset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(pub u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> VertexSet {
        assert!(n <= MAX_VERTICES);
        if n == 32 {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << n) - 1)
        }
    }

    pub fn from_indices(indices: &[usize]) -> VertexSet {
        let mut bits = 0u32;
        for &i in indices {
            assert!(i < MAX_VERTICES);
            bits |= 1 << i;
        }
        VertexSet(bits)
    }

    pub fn singleton(i: usize) -> VertexSet {
        assert!(i < MAX_VERTICES);
        VertexSet(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_VERTICES && self.0 & (1 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < MAX_VERTICES);
        self.0 |= 1 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn complement(self, n: usize) -> VertexSet {
        VertexSet(VertexSet::full(n).0 & !self.0)
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn indices(self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Oriented edge between vertex indices; `s == t` is a loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub s: usize,
    pub t: usize,
}

impl Edge {
    pub fn new(s: usize, t: usize) -> Edge {
        Edge { s, t }
    }

    pub fn is_loop(self) -> bool {
        self.s == self.t
    }

    /// The endpoint other than `v`; for a loop returns `v` itself.
    pub fn other(self, v: usize) -> usize {
        if v == self.s {
            self.t
        } else {
            self.s
        }
    }

    pub fn touches(self, v: usize) -> bool {
        self.s == v || self.t == v
    }
}

/// A vertex-weighted multigraph. Weights are nonnegative integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedGraph {
    weights: Vec<u32>,
    edges: Vec<Edge>,
}

/// How one edge of a graph shows up in its refinement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RefinedEdge {
    /// The edge was not split; it appears with the given index.
    Kept(usize),
    /// The edge was split at a new weight-0 vertex `mid`; `s_half` runs
    /// `s(e) -> mid` and `t_half` runs `mid -> t(e)`.
    Split { s_half: usize, t_half: usize, mid: usize },
}

/// The refinement of a graph along an edge subset: every selected edge is
/// subdivided once at a fresh weight-0 vertex.
#[derive(Debug, Clone)]
pub struct Refinement {
    pub graph: WeightedGraph,
    /// Image of each original edge, indexed like the original edge list.
    pub edge_images: Vec<RefinedEdge>,
    /// For each split edge (ascending), the new mid vertex index.
    pub mid_vertices: Vec<(usize, usize)>,
    /// The split set itself.
    pub split: EdgeSet,
}

/// A contraction `source -> target`: the edges in `contracted` collapse,
/// every other edge survives with the same relative order.
#[derive(Debug, Clone)]
pub struct Specialization {
    pub source: WeightedGraph,
    pub target: WeightedGraph,
    pub contracted: EdgeSet,
    /// Target vertex for each source vertex.
    pub vertex_map: Vec<usize>,
    /// Source edge index for each target edge.
    pub edge_map: Vec<usize>,
}

impl Specialization {
    /// Target edge subset corresponding to the surviving part of `es`.
    pub fn push_edge_set(&self, es: EdgeSet) -> EdgeSet {
        let mut out = EdgeSet::EMPTY;
        for (tgt, &src) in self.edge_map.iter().enumerate() {
            if es.contains(src) {
                out.insert(tgt);
            }
        }
        out
    }

    /// Preimage in the source of a target vertex subset.
    pub fn pull_vertex_set(&self, vs: VertexSet) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for (v, &img) in self.vertex_map.iter().enumerate() {
            if vs.contains(img) {
                out.insert(v);
            }
        }
        out
    }
}

/// Rooted spanning forest with each tree edge oriented away from its root.
#[derive(Debug, Clone)]
pub struct SpanningTree {
    pub edges: EdgeSet,
    /// For each tree edge index: `true` if the stored orientation `s -> t`
    /// already points away from the root, `false` if it is reversed.
    pub forward: Vec<(usize, bool)>,
    /// BFS parent of each vertex (`usize::MAX` at roots).
    pub parent: Vec<usize>,
    /// Tree edge used to reach each vertex (`usize::MAX` at roots).
    pub parent_edge: Vec<usize>,
}

impl SpanningTree {
    /// Whether the stored orientation of a tree edge points away from the root.
    pub fn is_forward(&self, edge: usize) -> Option<bool> {
        self.forward.iter().find(|&&(e, _)| e == edge).map(|&(_, fwd)| fwd)
    }
}

/// A graph isomorphism as a vertex bijection plus an edge bijection; an edge
/// may map with reversed orientation, recorded per edge in `flipped`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphIso {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
    pub flipped: Vec<bool>,
}

impl GraphIso {
    pub fn is_orientation_preserving(&self) -> bool {
        self.flipped.iter().all(|&f| !f)
    }
}

impl WeightedGraph {
    pub fn new(weights: Vec<u32>, edges: Vec<Edge>) -> Result<WeightedGraph> {
        if weights.len() > MAX_VERTICES {
            return Err(Error::SizeGuard {
                what: "vertices",
                actual: weights.len(),
                max: MAX_VERTICES,
            });
        }
        if edges.len() > MAX_EDGES {
            return Err(Error::SizeGuard { what: "edges", actual: edges.len(), max: MAX_EDGES });
        }
        for e in &edges {
            for v in [e.s, e.t] {
                if v >= weights.len() {
                    return Err(Error::IndexOutOfRange {
                        what: "edge endpoint",
                        index: v,
                        len: weights.len(),
                    });
                }
            }
        }
        Ok(WeightedGraph { weights, edges })
    }

    pub fn n_vertices(&self) -> usize {
        self.weights.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, v: usize) -> u32 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn edge(&self, i: usize) -> Edge {
        self.edges[i]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.n_edges())
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.n_vertices())
    }

    /// Valence of `v` restricted to the edges in `es`; loops count twice.
    pub fn valence_in(&self, v: usize, es: EdgeSet) -> usize {
        let mut d = 0;
        for i in es.iter() {
            let e = self.edges[i];
            if e.s == v {
                d += 1;
            }
            if e.t == v {
                d += 1;
            }
        }
        d
    }

    pub fn valence(&self, v: usize) -> usize {
        self.valence_in(v, self.all_edges())
    }

    /// Connected-component id per vertex (ids are 0.. in order of least
    /// member), using only the edges in `es`.
    pub fn components_in(&self, es: EdgeSet) -> Vec<usize> {
        let n = self.n_vertices();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = next;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for i in es.iter() {
                    let e = self.edges[i];
                    if e.touches(v) {
                        let u = e.other(v);
                        if comp[u] == usize::MAX {
                            comp[u] = next;
                            stack.push(u);
                        }
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn components(&self) -> Vec<usize> {
        self.components_in(self.all_edges())
    }

    pub fn b0(&self) -> usize {
        self.components().iter().max().map_or(0, |m| m + 1)
    }

    /// First Betti number `|E| - |V| + b0`.
    pub fn b1(&self) -> usize {
        self.n_edges() + self.b0() - self.n_vertices()
    }

    /// Genus: total weight plus first Betti number.
    pub fn genus(&self) -> i64 {
        self.weights.iter().map(|&w| w as i64).sum::<i64>() + self.b1() as i64
    }

    pub fn is_connected(&self) -> bool {
        self.n_vertices() == 0 || self.b0() == 1
    }

    /// Stability of the weighted graph itself: `2w(v) + val(v) >= 3` everywhere.
    pub fn is_stable_graph(&self) -> bool {
        (0..self.n_vertices()).all(|v| 2 * self.weights[v] as usize + self.valence(v) >= 3)
    }

    /// Edges with one endpoint in `v \ w` and the other in `w \ v`.
    pub fn cut_between(&self, v: VertexSet, w: VertexSet) -> EdgeSet {
        let a = v.difference(w);
        let b = w.difference(v);
        let mut out = EdgeSet::EMPTY;
        for (i, e) in self.edges.iter().enumerate() {
            let sm = 1u32 << e.s;
            let tm = 1u32 << e.t;
            if (a.0 & sm != 0 && b.0 & tm != 0) || (a.0 & tm != 0 && b.0 & sm != 0) {
                out.insert(i);
            }
        }
        out
    }

    /// The cut `E(V, V^c)` together with its size.
    pub fn cut_and_delta(&self, v: VertexSet) -> (EdgeSet, usize) {
        let cut = self.cut_between(v, v.complement(self.n_vertices()));
        let delta = cut.len();
        (cut, delta)
    }

    /// Delete the edges in `es`, keeping all vertices and all edge indices'
    /// relative order (indices are compacted; see `Specialization::edge_map`
    /// users for positional bookkeeping — here deletion returns the subgraph
    /// with edges re-indexed ascending).
    pub fn delete(&self, es: EdgeSet) -> WeightedGraph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !es.contains(*i))
            .map(|(_, &e)| e)
            .collect();
        WeightedGraph { weights: self.weights.clone(), edges }
    }

    /// Contract the edges in `es`. Non-loop edges merge their endpoints;
    /// a contracted loop disappears and bumps its vertex weight by one
    /// (likewise any contracted edge that closes a cycle inside the collapsed
    /// subgraph), so genus is preserved. Target vertices are ordered by least
    /// source member; surviving edges keep their relative order and
    /// orientation.
    pub fn contract(&self, es: EdgeSet) -> Specialization {
        let n = self.n_vertices();
        let comp_raw = self.components_in(es);
        // Re-number components by least member so ordering is deterministic.
        let mut index_of = vec![usize::MAX; n];
        let mut m = 0;
        for v in 0..n {
            if (0..v).all(|u| comp_raw[u] != comp_raw[v]) {
                index_of[comp_raw[v]] = m;
                m += 1;
            }
        }
        let comp_of: Vec<usize> = (0..n).map(|v| index_of[comp_raw[v]]).collect();
        let mut weights = vec![0u32; m];
        for v in 0..n {
            weights[comp_of[v]] += self.weights[v];
        }
        // Each contracted edge closing a cycle among the already-merged
        // vertices carries a genus unit into its component's weight.
        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            let mut c = x;
            while uf[c] != c {
                let nxt = uf[c];
                uf[c] = r;
                c = nxt;
            }
            r
        }
        for i in es.iter() {
            let e = self.edges[i];
            let (rs, rt) = (find(&mut uf, e.s), find(&mut uf, e.t));
            if rs == rt {
                weights[comp_of[e.s]] += 1;
            } else {
                uf[rs] = rt;
            }
        }

        let mut edges = Vec::new();
        let mut edge_map = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if !es.contains(i) {
                edges.push(Edge::new(comp_of[e.s], comp_of[e.t]));
                edge_map.push(i);
            }
        }
        let target = WeightedGraph { weights, edges };
        debug_assert_eq!(target.genus(), self.genus());
        Specialization {
            source: self.clone(),
            target,
            contracted: es,
            vertex_map: comp_of,
            edge_map,
        }
    }

    /// Subdivide each edge in `es` once at a fresh weight-0 vertex. New
    /// vertices come after the original ones, in ascending split-edge order.
    /// Edge order of the refinement: original edges ascending, each split
    /// edge replaced by its `s`-half followed by its `t`-half.
    pub fn refine(&self, es: EdgeSet) -> Refinement {
        let n = self.n_vertices();
        let mut weights = self.weights.clone();
        let mut mid_vertices = Vec::new();
        let mut mid_of = vec![usize::MAX; self.n_edges()];
        for (k, i) in es.iter().enumerate() {
            weights.push(0);
            mid_of[i] = n + k;
            mid_vertices.push((i, n + k));
        }
        let mut edges = Vec::new();
        let mut edge_images = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if es.contains(i) {
                let mid = mid_of[i];
                let s_half = edges.len();
                edges.push(Edge::new(e.s, mid));
                let t_half = edges.len();
                edges.push(Edge::new(mid, e.t));
                edge_images.push(RefinedEdge::Split { s_half, t_half, mid });
            } else {
                edge_images.push(RefinedEdge::Kept(edges.len()));
                edges.push(*e);
            }
        }
        let graph = WeightedGraph { weights, edges };
        debug_assert_eq!(graph.genus(), self.genus());
        Refinement { graph, edge_images, mid_vertices, split: es }
    }

    /// Signed fundamental-cycle basis: one vector per non-forest edge, with
    /// entries in {-1, 0, 1} indexed by edge. The defining edge carries +1 and
    /// the forest path closes the cycle. Deterministic: BFS forest by
    /// ascending edge index from each least-index root.
    pub fn cycle_space_basis(&self) -> Vec<Vec<i64>> {
        let tree = self.spanning_forest_from(None);
        let n = self.n_vertices();
        let m = self.n_edges();
        let mut basis = Vec::new();
        // Depth and path-to-root bookkeeping via parent pointers.
        let parent = &tree.parent;
        let parent_edge = &tree.parent_edge;
        let mut depth = vec![0usize; n];
        // Compute depths by following parents (forest is acyclic).
        for v in 0..n {
            let mut d = 0;
            let mut c = v;
            while parent[c] != usize::MAX {
                c = parent[c];
                d += 1;
            }
            depth[v] = d;
        }
        for (i, e) in self.edges.iter().enumerate() {
            if tree.edges.contains(i) {
                continue;
            }
            let mut cyc = vec![0i64; m];
            cyc[i] = 1;
            if e.is_loop() {
                basis.push(cyc);
                continue;
            }
            // Walk t(e) and s(e) up to their common ancestor, closing the
            // cycle in the direction t(e) -> s(e).
            let (mut a, mut b) = (e.t, e.s);
            // a path contributes traversal from t(e) upward; direction of
            // travel along tree edge (s->t stored) decides the sign.
            while a != b {
                if depth[a] >= depth[b] {
                    let pe = parent_edge[a];
                    let te = self.edges[pe];
                    // travel a -> parent(a)
                    cyc[pe] += if te.s == a { 1 } else { -1 };
                    a = parent[a];
                } else {
                    let pe = parent_edge[b];
                    let te = self.edges[pe];
                    // travel parent(b) -> b
                    cyc[pe] += if te.t == b { 1 } else { -1 };
                    b = parent[b];
                }
            }
            basis.push(cyc);
        }
        debug_assert_eq!(basis.len(), self.b1());
        basis
    }

    /// BFS spanning forest. With `root = Some(r)` the component of `r` is
    /// explored first from `r`; remaining components start at their least
    /// vertex. Neighbors are visited in ascending edge order.
    pub fn spanning_forest_from(&self, root: Option<usize>) -> SpanningTree {
        let n = self.n_vertices();
        let mut visited = vec![false; n];
        let mut parent = vec![usize::MAX; n];
        let mut parent_edge = vec![usize::MAX; n];
        let mut edges = EdgeSet::EMPTY;
        let mut forward = Vec::new();
        let mut starts: Vec<usize> = Vec::new();
        if let Some(r) = root {
            starts.push(r);
        }
        starts.extend(0..n);
        for start in starts {
            if visited[start] {
                continue;
            }
            visited[start] = true;
            let mut queue = vec![start];
            let mut qi = 0;
            while qi < queue.len() {
                let v = queue[qi];
                qi += 1;
                for (i, e) in self.edges.iter().enumerate() {
                    if !e.touches(v) || e.is_loop() {
                        continue;
                    }
                    let u = e.other(v);
                    if !visited[u] {
                        visited[u] = true;
                        parent[u] = v;
                        parent_edge[u] = i;
                        edges.insert(i);
                        // away-from-root means v -> u; stored orientation is s -> t.
                        forward.push((i, e.s == v));
                        queue.push(u);
                    }
                }
            }
        }
        SpanningTree { edges, forward, parent, parent_edge }
    }

    /// Spanning tree of a connected graph rooted at `root`.
    pub fn spanning_tree(&self, root: usize) -> Result<SpanningTree> {
        if root >= self.n_vertices() {
            return Err(Error::IndexOutOfRange {
                what: "root vertex",
                index: root,
                len: self.n_vertices(),
            });
        }
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        Ok(self.spanning_forest_from(Some(root)))
    }

    /// All isomorphisms onto `other` respecting weights and incidence of
    /// unordered edges; flips are recorded for non-loop edges mapped with
    /// reversed orientation. Brute force, guarded by `MAX_ISO_VERTICES`.
    pub fn isomorphisms(&self, other: &WeightedGraph) -> Result<Vec<GraphIso>> {
        let n = self.n_vertices();
        if n > MAX_ISO_VERTICES || other.n_vertices() > MAX_ISO_VERTICES {
            return Err(Error::SizeGuard {
                what: "isomorphism vertices",
                actual: n.max(other.n_vertices()),
                max: MAX_ISO_VERTICES,
            });
        }
        let mut out = Vec::new();
        if n != other.n_vertices() || self.n_edges() != other.n_edges() {
            return Ok(out);
        }
        let m = self.n_edges();
        // Group edges by unordered endpoint pair.
        let pair_key = |e: Edge| if e.s <= e.t { (e.s, e.t) } else { (e.t, e.s) };
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 0, &mut |p: &[usize]| {
            // vertex weights must match
            for v in 0..n {
                if self.weights[v] != other.weights[p[v]] {
                    return;
                }
            }
            // multiplicity of each mapped pair must match
            let mut classes: alloc::collections::BTreeMap<(usize, usize), (Vec<usize>, Vec<usize>)> =
                alloc::collections::BTreeMap::new();
            for (i, &e) in self.edges.iter().enumerate() {
                let (a, b) = pair_key(e);
                let key = {
                    let (x, y) = (p[a], p[b]);
                    if x <= y {
                        (x, y)
                    } else {
                        (y, x)
                    }
                };
                classes.entry(key).or_default().0.push(i);
            }
            for (j, &e) in other.edges.iter().enumerate() {
                classes.entry(pair_key(e)).or_default().1.push(j);
            }
            if classes.values().any(|(a, b)| a.len() != b.len()) {
                return;
            }
            // enumerate edge bijections class by class
            let class_list: Vec<(Vec<usize>, Vec<usize>)> = classes.into_values().collect();
            let mut edge_map = vec![usize::MAX; m];
            assign_classes(&class_list, 0, &mut edge_map, &mut |em: &[usize]| {
                let mut flipped = vec![false; m];
                for (i, &j) in em.iter().enumerate() {
                    let e = self.edges[i];
                    let f = other.edges[j];
                    if e.is_loop() {
                        flipped[i] = false;
                    } else {
                        flipped[i] = !(p[e.s] == f.s && p[e.t] == f.t);
                    }
                }
                out.push(GraphIso {
                    vertex_map: p.to_vec(),
                    edge_map: em.to_vec(),
                    flipped,
                });
            });
        });
        Ok(out)
    }

    /// Automorphism group (all self-isomorphisms).
    pub fn automorphisms(&self) -> Result<Vec<GraphIso>> {
        self.isomorphisms(self)
    }
}

fn permute(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, f);
        perm.swap(k, i);
    }
}

fn assign_classes(
    classes: &[(Vec<usize>, Vec<usize>)],
    idx: usize,
    edge_map: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if idx == classes.len() {
        f(edge_map);
        return;
    }
    let (src, dst) = &classes[idx];
    let mut d = dst.clone();
    assign_within(src, &mut d, 0, edge_map, &mut |em| {
        assign_classes(classes, idx + 1, em, f);
    });
}

fn assign_within(
    src: &[usize],
    dst: &mut Vec<usize>,
    k: usize,
    edge_map: &mut Vec<usize>,
    f: &mut impl FnMut(&mut Vec<usize>),
) {
    if k == src.len() {
        f(edge_map);
        return;
    }
    for i in k..dst.len() {
        dst.swap(k, i);
        edge_map[src[k]] = dst[k];
        assign_within(src, dst, k + 1, edge_map, f);
        edge_map[src[k]] = usize::MAX;
        dst.swap(k, i);
    }
}
