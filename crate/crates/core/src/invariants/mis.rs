//! Exact maximum independent set by branch and bound.
//!
//! The candidate set is partitioned greedily into cliques of `G`; an
//! independent set meets each clique at most once, so the number of cliques
//! bounds what the branch can still add. Vertices are branched in reverse
//! partition order, as in the MCQ/MCS family of maximum-clique solvers run
//! on the complement.

use serde::{Deserialize, Serialize};

use super::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxIndependentSet {
    pub size: usize,
    /// A maximum independent set, sorted.
    pub witness: Vec<usize>,
    pub nodes: u64,
}

struct Solver {
    nbr: Vec<BitSet>,
    weight: Vec<usize>,
    best: Vec<usize>,
    best_weight: usize,
    current: Vec<usize>,
    current_weight: usize,
    nodes: u64,
    budget: u64,
    /// Orbit labels under automorphisms fixing the root vertex.
    root_orbits: Option<Vec<usize>>,
}

impl Solver {
    fn expand(&mut self, mut candidates: BitSet, at_root: bool) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Timeout {
                what: "independence number",
                nodes: self.nodes,
            });
        }
        let (order, bounds) = self.clique_partition(&candidates);
        let mut branched_orbits = std::collections::HashSet::new();
        for i in (0..order.len()).rev() {
            if self.current_weight + bounds[i] <= self.best_weight {
                return Ok(());
            }
            let v = order[i];
            if at_root {
                if let Some(orbits) = &self.root_orbits {
                    // an image of every set through v was searched already
                    if !branched_orbits.insert(orbits[v]) {
                        candidates.remove(v);
                        continue;
                    }
                }
            }
            self.current.push(v);
            self.current_weight += self.weight[v];
            let mut next = candidates.clone();
            next.difference_with(&self.nbr[v]);
            next.remove(v);
            if next.is_empty() {
                if self.current_weight > self.best_weight {
                    self.best = self.current.clone();
                    self.best_weight = self.current_weight;
                }
            } else {
                self.expand(next, false)?;
            }
            self.current_weight -= self.weight[v];
            self.current.pop();
            candidates.remove(v);
        }
        Ok(())
    }

    /// Vertices in partition order with, for each, the summed heaviest
    /// weights of the cliques up to and including its own.
    fn clique_partition(&self, candidates: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut uncovered = candidates.clone();
        let mut order = Vec::with_capacity(candidates.count());
        let mut bounds = Vec::with_capacity(order.capacity());
        let mut total = 0;
        let mut pool = uncovered.clone();
        while !uncovered.is_empty() {
            let start = order.len();
            let mut heaviest = 0;
            pool.copy_from(&uncovered);
            while let Some(v) = pool.first() {
                uncovered.remove(v);
                pool.remove(v);
                pool.intersect_with(&self.nbr[v]);
                order.push(v);
                heaviest = heaviest.max(self.weight[v]);
            }
            total += heaviest;
            bounds.extend(std::iter::repeat_n(total, order.len() - start));
        }
        (order, bounds)
    }
}

/// Classes of vertices with identical neighborhoods. Such twins are
/// pairwise nonadjacent, so a maximum independent set takes each class
/// whole or not at all.
fn twin_classes(g: &Graph) -> Vec<Vec<usize>> {
    let mut by_neighborhood: std::collections::BTreeMap<&[usize], Vec<usize>> = Default::default();
    for v in 0..g.vertex_count() {
        by_neighborhood.entry(g.neighbors(v)).or_default().push(v);
    }
    let mut classes: Vec<Vec<usize>> = by_neighborhood.into_values().collect();
    classes.sort_unstable();
    classes
}

/// Minimum-degree greedy on the quotient, for an initial incumbent.
fn greedy_independent(nbr: &[BitSet], weight: &[usize]) -> Vec<usize> {
    let n = nbr.len();
    let mut alive = BitSet::full(n);
    let mut out = Vec::new();
    loop {
        let pick = alive.iter().min_by_key(|&v| {
            let mut live = nbr[v].clone();
            live.intersect_with(&alive);
            (live.count() * 64 / weight[v].max(1), v)
        });
        let Some(v) = pick else { break };
        out.push(v);
        alive.difference_with(&nbr[v]);
        alive.remove(v);
    }
    out
}

/// `α(G)` with a witness. Twin classes are merged into weighted vertices
/// first. For constructor-certified vertex-transitive graphs the search is
/// rooted at a fixed vertex, since some maximum independent set contains
/// every vertex.
pub fn independence_number(g: &Graph, limits: &Limits) -> Result<MaxIndependentSet> {
    independence_number_with_orbits(g, limits, None)
}

/// As [`independence_number`] on a vertex-transitive graph, given orbit
/// labels of its vertices under a group of automorphisms fixing vertex 0.
/// Branches at the root that are images of earlier ones are skipped.
pub(crate) fn independence_number_with_orbits(
    g: &Graph,
    limits: &Limits,
    root_orbits: Option<&[usize]>,
) -> Result<MaxIndependentSet> {
    let classes = twin_classes(g);
    let m = classes.len();
    let mut class_of = vec![0; g.vertex_count()];
    for (k, class) in classes.iter().enumerate() {
        for &v in class {
            class_of[v] = k;
        }
    }
    let degree = |k: usize| g.degree(classes[k][0]);
    // branch order: descending degree, ties by smallest member
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&k| (std::cmp::Reverse(degree(k)), k));
    let mut position = vec![0; m];
    for (i, &k) in order.iter().enumerate() {
        position[k] = i;
    }
    let nbr: Vec<BitSet> = order
        .iter()
        .map(|&k| {
            let mut b = BitSet::empty(m);
            for &w in g.neighbors(classes[k][0]) {
                b.insert(position[class_of[w]]);
            }
            b
        })
        .collect();
    let weight: Vec<usize> = order.iter().map(|&k| classes[k].len()).collect();

    let incumbent = greedy_independent(&nbr, &weight);
    let mut solver = Solver {
        best_weight: incumbent.iter().map(|&v| weight[v]).sum(),
        best: incumbent,
        nbr,
        weight,
        current: Vec::new(),
        current_weight: 0,
        nodes: 0,
        budget: limits.search_nodes,
        root_orbits: None,
    };
    let mut root = BitSet::full(m);
    // automorphisms permute twin classes, so the quotient stays transitive
    if g.known_symmetry().vertex_transitive && m > 0 {
        let first = position[class_of[0]];
        solver.current.push(first);
        solver.current_weight = solver.weight[first];
        root.difference_with(&solver.nbr[first]);
        root.remove(first);
        if solver.current_weight > solver.best_weight {
            solver.best = vec![first];
            solver.best_weight = solver.current_weight;
        }
        // a class's label is the least over its members, which the group
        // permutes along with the classes
        solver.root_orbits = root_orbits.map(|labels| {
            order
                .iter()
                .map(|&k| classes[k].iter().map(|&v| labels[v]).min().unwrap_or(0))
                .collect()
        });
    }
    if !root.is_empty() {
        solver.expand(root, solver.root_orbits.is_some())?;
    }
    let mut witness: Vec<usize> = solver
        .best
        .iter()
        .flat_map(|&i| classes[order[i]].iter().copied())
        .collect();
    witness.sort_unstable();
    debug_assert!(g.check_independent(&witness).is_ok());
    Ok(MaxIndependentSet {
        size: witness.len(),
        witness,
        nodes: solver.nodes,
    })
}
