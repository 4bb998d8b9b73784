use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// A vertex map `V(G) -> V(H)` sending edges to edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homomorphism {
    map: Vec<usize>,
}

impl Homomorphism {
    /// Wraps `map` after a full edge scan.
    pub fn new(g: &Graph, h: &Graph, map: Vec<usize>) -> Result<Self> {
        let hom = Homomorphism { map };
        if hom.verify(g, h) {
            Ok(hom)
        } else {
            Err(Error::NoHomomorphism {
                from: g.label().to_string(),
                to: h.label().to_string(),
            })
        }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn verify(&self, g: &Graph, h: &Graph) -> bool {
        self.map.len() == g.vertex_count()
            && self.map.iter().all(|&t| t < h.vertex_count())
            && g.edges().all(|(u, v)| h.has_edge(self.map[u], self.map[v]))
    }
}

/// Default node budget for [`find_homomorphism`].
pub const HOMOMORPHISM_NODE_BUDGET: u64 = 10_000_000;

/// Backtracking search with forward checking. `Ok(None)` means no
/// homomorphism exists; an exhausted budget is reported as `Error::Timeout`.
pub fn find_homomorphism(g: &Graph, h: &Graph) -> Result<Option<Homomorphism>> {
    find_homomorphism_with_budget(g, h, HOMOMORPHISM_NODE_BUDGET)
}

pub fn find_homomorphism_with_budget(
    g: &Graph,
    h: &Graph,
    budget: u64,
) -> Result<Option<Homomorphism>> {
    let n = g.vertex_count();
    let m = h.vertex_count();
    // most constrained first: descending degree, ties by index
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&u| (std::cmp::Reverse(g.degree(u)), u));

    let full: Vec<bool> = (0..m)
        .map(|t| g.edge_count() == 0 || h.degree(t) > 0)
        .collect();
    let mut domains: Vec<Vec<bool>> = vec![full; n];
    let mut assignment = vec![usize::MAX; n];
    let mut nodes = 0u64;

    fn rec(
        g: &Graph,
        h: &Graph,
        order: &[usize],
        depth: usize,
        domains: &mut Vec<Vec<bool>>,
        assignment: &mut [usize],
        nodes: &mut u64,
        budget: u64,
    ) -> Result<bool> {
        if depth == order.len() {
            return Ok(true);
        }
        let u = order[depth];
        let choices: Vec<usize> = (0..h.vertex_count()).filter(|&t| domains[u][t]).collect();
        for t in choices {
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::Timeout {
                    what: "homomorphism search",
                    nodes: *nodes,
                });
            }
            assignment[u] = t;
            // forward check: unassigned neighbors must land in N_H(t)
            let mut saved = Vec::new();
            let mut wiped = false;
            for &w in g.neighbors(u) {
                if assignment[w] != usize::MAX {
                    continue;
                }
                let before = domains[w].clone();
                for (x, allowed) in domains[w].iter_mut().enumerate() {
                    if *allowed && !h.has_edge(t, x) {
                        *allowed = false;
                    }
                }
                let empty = !domains[w].iter().any(|&b| b);
                saved.push((w, before));
                if empty {
                    wiped = true;
                    break;
                }
            }
            if !wiped && rec(g, h, order, depth + 1, domains, assignment, nodes, budget)? {
                return Ok(true);
            }
            for (w, before) in saved.into_iter().rev() {
                domains[w] = before;
            }
            assignment[u] = usize::MAX;
        }
        Ok(false)
    }

    if rec(
        g,
        h,
        &order,
        0,
        &mut domains,
        &mut assignment,
        &mut nodes,
        budget,
    )? {
        let hom = Homomorphism { map: assignment };
        debug_assert!(hom.verify(g, h));
        Ok(Some(hom))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_cycle_colorings() {
        let c5 = Graph::cycle(5).unwrap();
        let k3 = Graph::complete(3).unwrap();
        let k2 = Graph::complete(2).unwrap();
        let f = find_homomorphism(&c5, &k3)
            .unwrap()
            .expect("C5 is 3-colorable");
        assert!(f.verify(&c5, &k3));
        assert!(find_homomorphism(&c5, &k2).unwrap().is_none());
    }

    #[test]
    fn even_cycle_alternates() {
        let c4 = Graph::cycle(4).unwrap();
        let k2 = Graph::complete(2).unwrap();
        let f = find_homomorphism(&c4, &k2).unwrap().unwrap();
        let m = f.map();
        assert!(m[0] != m[1] && m[0] == m[2] && m[1] == m[3]);
    }

    #[test]
    fn budget_exhaustion_is_distinct() {
        // K5 -> K4 has no homomorphism but needs more than two nodes to refute
        let k5 = Graph::complete(5).unwrap();
        let k4 = Graph::complete(4).unwrap();
        assert!(matches!(
            find_homomorphism_with_budget(&k5, &k4, 2),
            Err(Error::Timeout { .. })
        ));
        assert!(find_homomorphism(&k5, &k4).unwrap().is_none());
    }

    #[test]
    fn witness_validation() {
        let c4 = Graph::cycle(4).unwrap();
        let k2 = Graph::complete(2).unwrap();
        assert!(Homomorphism::new(&c4, &k2, vec![0, 1, 0, 1]).is_ok());
        assert!(Homomorphism::new(&c4, &k2, vec![0, 0, 1, 1]).is_err());
    }
}
