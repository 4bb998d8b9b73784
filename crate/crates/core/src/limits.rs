/// Resource caps shared by the materializing and exhaustive-search operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Largest explicit graph `power_graph` will build.
    pub max_vertices: usize,
    /// Largest graph the brute-force automorphism predicates accept.
    pub max_automorphism_vertices: usize,
    /// Largest automorphism group `automorphism_group` will enumerate.
    pub max_group_order: usize,
    /// Branch-and-bound node budget for the exact invariant solvers.
    pub search_nodes: u64,
    /// Cap on enumerated maximal independent sets for the fractional LPs.
    pub max_independent_sets: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_vertices: 20_000,
            max_automorphism_vertices: 12,
            max_group_order: 1_000_000,
            search_nodes: 200_000_000,
            max_independent_sets: 200_000,
        }
    }
}

impl Limits {
    /// Environment variable overriding [`Limits::max_vertices`].
    pub const MAX_VERTICES_ENV: &'static str = "GRAPHCAP_MAX_VERTICES";

    /// Defaults, with `GRAPHCAP_MAX_VERTICES` applied when it parses.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(cap) = std::env::var(Self::MAX_VERTICES_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            limits.max_vertices = cap;
        }
        limits
    }
}
