//! Exact combinatorial invariants used as oracles for the rate bounds.

mod bitset;
mod coloring;
mod counting;
mod fractional;
mod greedy;
mod mis;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{
    find_automorphism, is_vertex_transitive, power_graph, Graph, KnownSymmetry, WordCodec,
};
use crate::limits::Limits;

pub use coloring::{chromatic_number, clique_number, optimal_coloring};
pub use counting::{caro_wei, gv_sphere_count, gv_sphere_count_ln, vt_counting_bound};
pub use fractional::{
    fractional_chromatic, fractional_clique_cover, fractional_coloring, maximal_independent_sets,
    FractionalColoring,
};
pub use greedy::{randomized_greedy_code, verify_code, GreedyRun};
pub use mis::{independence_number, MaxIndependentSet};

/// The five classical invariants of a small graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub alpha: usize,
    pub omega: usize,
    pub chi: usize,
    #[serde(with = "rational_string")]
    pub chi_fractional: BigRational,
    #[serde(with = "rational_string")]
    pub theta_star_fractional: BigRational,
}

impl InvariantReport {
    pub fn compute(g: &Graph, limits: &Limits) -> Result<Self> {
        Ok(InvariantReport {
            alpha: independence_number(g, limits)?.size,
            omega: clique_number(g, limits)?,
            chi: chromatic_number(g, limits)?,
            chi_fractional: fractional_chromatic(g, limits)?,
            theta_star_fractional: fractional_clique_cover(g, limits)?,
        })
    }
}

/// `α(G(n, d))` by branch and bound on the materialized power graph.
///
/// When `G` is vertex-transitive (certified, or confirmed by the brute-force
/// predicate within its cap) so is `G(n, d)`, and the search is rooted.
pub fn exact_alpha_power(g: &Graph, n: usize, d: usize, limits: &Limits) -> Result<usize> {
    Ok(exact_alpha_power_witness(g, n, d, limits)?.size)
}

pub fn exact_alpha_power_witness(
    g: &Graph,
    n: usize,
    d: usize,
    limits: &Limits,
) -> Result<MaxIndependentSet> {
    let mut power = power_graph(g, n, d, limits)?;
    let base_vt = g.known_symmetry().vertex_transitive
        || (g.vertex_count() <= limits.max_automorphism_vertices
            && is_vertex_transitive(g, limits)?);
    if !base_vt {
        return independence_number(&power, limits);
    }
    power = power.with_known(KnownSymmetry {
        vertex_transitive: true,
        edge_transitive: false,
    });
    let orbits = if g.vertex_count() <= limits.max_automorphism_vertices {
        Some(root_stabilizer_orbits(g, n)?)
    } else {
        None
    };
    mis::independence_number_with_orbits(&power, limits, orbits.as_deref())
}

/// Orbits of words under coordinate permutations combined with
/// coordinate-wise automorphisms of `g` fixing symbol 0; all of these fix
/// the all-zero word. A word's orbit is determined by the sorted list of
/// its symbols' orbits.
fn root_stabilizer_orbits(g: &Graph, n: usize) -> Result<Vec<usize>> {
    let q = g.vertex_count();
    let mut symbol_orbit: Vec<usize> = (0..q).collect();
    for v in 1..q {
        if let Some(w) = (1..v).find(|&w| find_automorphism(g, &[(0, 0), (w, v)]).is_some()) {
            symbol_orbit[v] = symbol_orbit[w];
        }
    }
    let codec = WordCodec::new(q, n)?;
    let mut ids = std::collections::HashMap::new();
    let mut word = vec![0; n];
    Ok((0..codec.count())
        .map(|index| {
            codec.decode_into(index, &mut word);
            let mut key: Vec<usize> = word.iter().map(|&s| symbol_orbit[s]).collect();
            key.sort_unstable();
            let next = ids.len();
            *ids.entry(key).or_insert(next)
        })
        .collect())
}

pub(crate) mod rational_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
