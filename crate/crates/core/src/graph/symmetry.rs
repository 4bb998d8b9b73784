//! Brute-force automorphism search for small graphs.
//!
//! Automorphisms are built one vertex at a time; a candidate image must match
//! degree and agree on adjacency and non-adjacency with every vertex already
//! placed. Graphs above `Limits::max_automorphism_vertices` are refused unless
//! their constructor certified the property being asked about.

use super::Graph;
use crate::error::{Error, Result};
use crate::limits::Limits;

struct Dense {
    n: usize,
    adj: Vec<bool>,
}

impl Dense {
    fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut adj = vec![false; n * n];
        for (u, v) in g.edges() {
            adj[u * n + v] = true;
            adj[v * n + u] = true;
        }
        Dense { n, adj }
    }

    #[inline]
    fn edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }
}

/// Placement order: BFS from `roots`, so later vertices usually have a
/// placed neighbor constraining their image.
fn placement_order(g: &Graph, roots: &[usize]) -> Vec<usize> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for r in roots.iter().copied().chain(0..n) {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        order.push(r);
        let mut i = order.len() - 1;
        while i < order.len() {
            let u = order[i];
            i += 1;
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    order.push(v);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    g: &'a Graph,
    dense: Dense,
    order: Vec<usize>,
    image: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, fixed: &[(usize, usize)]) -> Option<Self> {
        let n = g.vertex_count();
        let roots: Vec<usize> = fixed.iter().map(|&(u, _)| u).collect();
        let mut s = Search {
            g,
            dense: Dense::new(g),
            order: placement_order(g, &roots),
            image: vec![None; n],
            used: vec![false; n],
        };
        for &(u, t) in fixed {
            if s.image[u].is_some() || s.used[t] || !s.consistent(u, t) {
                return None;
            }
            s.image[u] = Some(t);
            s.used[t] = true;
        }
        Some(s)
    }

    fn consistent(&self, u: usize, t: usize) -> bool {
        if self.g.degree(u) != self.g.degree(t) {
            return false;
        }
        (0..self.dense.n).all(|w| match self.image[w] {
            Some(tw) => self.dense.edge(u, w) == self.dense.edge(t, tw),
            None => true,
        })
    }

    fn candidates(&self, u: usize) -> Vec<usize> {
        // images of placed neighbors restrict the choice to their neighborhoods
        let anchor = self.g.neighbors(u).iter().find_map(|&w| self.image[w]);
        let pool: Vec<usize> = match anchor {
            Some(t) => self.g.neighbors(t).to_vec(),
            None => (0..self.dense.n).collect(),
        };
        pool.into_iter()
            .filter(|&t| !self.used[t] && self.consistent(u, t))
            .collect()
    }

    /// Depth-first over placements; `emit` returns `false` to stop.
    fn run(&mut self, depth: usize, emit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let Some(pos) = (depth..self.order.len()).find(|&i| self.image[self.order[i]].is_none())
        else {
            let perm: Vec<usize> = self.image.iter().map(|t| t.unwrap()).collect();
            return emit(&perm);
        };
        let u = self.order[pos];
        for t in self.candidates(u) {
            self.image[u] = Some(t);
            self.used[t] = true;
            let go_on = self.run(pos + 1, emit);
            self.image[u] = None;
            self.used[t] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
}

fn check_cap(g: &Graph, limits: &Limits) -> Result<()> {
    if g.vertex_count() > limits.max_automorphism_vertices {
        Err(Error::SizeCap {
            what: "automorphism search vertices",
            requested: g.vertex_count() as u128,
            cap: limits.max_automorphism_vertices as u128,
        })
    } else {
        Ok(())
    }
}

/// True when `perm` is a bijection preserving adjacency and non-adjacency.
pub fn is_automorphism(g: &Graph, perm: &[usize]) -> bool {
    let n = g.vertex_count();
    if perm.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut hit[p], true) {
            return false;
        }
    }
    g.edges().count()
        == g.edges()
            .filter(|&(u, v)| g.has_edge(perm[u], perm[v]))
            .count()
}

/// Some automorphism extending the partial assignment `fixed`, if one exists.
/// Not size capped; callers own the cost.
pub fn find_automorphism(g: &Graph, fixed: &[(usize, usize)]) -> Option<Vec<usize>> {
    for &(u, t) in fixed {
        if u >= g.vertex_count() || t >= g.vertex_count() {
            return None;
        }
    }
    let mut search = Search::new(g, fixed)?;
    let mut found = None;
    search.run(0, &mut |perm| {
        found = Some(perm.to_vec());
        false
    });
    debug_assert!(found.as_ref().is_none_or(|p| is_automorphism(g, p)));
    found
}

/// Every automorphism of `g`, identity first.
pub fn automorphism_group(g: &Graph, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    check_cap(g, limits)?;
    let mut search = Search::new(g, &[]).expect("empty assignment is consistent");
    let mut group = Vec::new();
    let mut overflow = false;
    search.run(0, &mut |perm| {
        if group.len() == limits.max_group_order {
            overflow = true;
            return false;
        }
        group.push(perm.to_vec());
        true
    });
    if overflow {
        return Err(Error::EnumerationCap {
            what: "automorphism group order",
            cap: limits.max_group_order,
        });
    }
    // identity first: the search is lexicographic only within the BFS order
    if let Some(pos) = group
        .iter()
        .position(|p| p.iter().enumerate().all(|(i, &x)| i == x))
    {
        group.swap(0, pos);
    }
    Ok(group)
}

/// Orbit index of every vertex under the automorphism group.
pub fn vertex_orbits(g: &Graph, limits: &Limits) -> Result<Vec<usize>> {
    check_cap(g, limits)?;
    let n = g.vertex_count();
    let mut orbit = vec![usize::MAX; n];
    let mut next = 0;
    for v in 0..n {
        if orbit[v] != usize::MAX {
            continue;
        }
        orbit[v] = next;
        for w in v + 1..n {
            if orbit[w] == usize::MAX && find_automorphism(g, &[(v, w)]).is_some() {
                orbit[w] = next;
            }
        }
        next += 1;
    }
    Ok(orbit)
}

/// Whether the automorphism group is transitive on vertices.
///
/// Constructor-certified graphs answer immediately; otherwise a brute-force
/// search runs, refused above `limits.max_automorphism_vertices`.
pub fn is_vertex_transitive(g: &Graph, limits: &Limits) -> Result<bool> {
    if g.known_symmetry().vertex_transitive {
        return Ok(true);
    }
    check_cap(g, limits)?;
    let n = g.vertex_count();
    if g.regular_degree().is_none() {
        return Ok(false);
    }
    let mut reached = vec![false; n];
    reached[0] = true;
    for w in 1..n {
        if reached[w] {
            continue;
        }
        match find_automorphism(g, &[(0, w)]) {
            Some(perm) => close_orbit(&mut reached, &perm),
            None => return Ok(false),
        }
    }
    Ok(true)
}

fn close_orbit(reached: &mut [bool], perm: &[usize]) {
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..reached.len() {
            if reached[v] && !reached[perm[v]] {
                reached[perm[v]] = true;
                changed = true;
            }
        }
    }
}

/// Whether the automorphism group is transitive on unordered edges.
/// Edgeless graphs are edge-transitive vacuously.
pub fn is_edge_transitive(g: &Graph, limits: &Limits) -> Result<bool> {
    if g.known_symmetry().edge_transitive {
        return Ok(true);
    }
    check_cap(g, limits)?;
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let Some(&(a, b)) = edges.first() else {
        return Ok(true);
    };
    let index = |u: usize, v: usize| {
        let key = (u.min(v), u.max(v));
        edges
            .binary_search(&key)
            .expect("image of an edge is an edge")
    };
    let mut reached = vec![false; edges.len()];
    reached[0] = true;
    for (i, &(u, v)) in edges.iter().enumerate().skip(1) {
        if reached[i] {
            continue;
        }
        let perm = find_automorphism(g, &[(a, u), (b, v)])
            .or_else(|| find_automorphism(g, &[(a, v), (b, u)]));
        let Some(perm) = perm else {
            return Ok(false);
        };
        let mut changed = true;
        while changed {
            changed = false;
            for (j, &(x, y)) in edges.iter().enumerate() {
                if reached[j] {
                    let k = index(perm[x], perm[y]);
                    if !reached[k] {
                        reached[k] = true;
                        changed = true;
                    }
                }
            }
        }
    }
    Ok(true)
}
