use super::mis::independence_number;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;

/// `ω(G)`, computed as `α` of the complement.
pub fn clique_number(g: &Graph, limits: &Limits) -> Result<usize> {
    Ok(independence_number(&g.complement(), limits)?.size)
}

/// `χ(G)` by iterative deepening: DSATUR backtracking decides
/// `k`-colorability for `k = ω, ω + 1, ...` until it succeeds.
pub fn chromatic_number(g: &Graph, limits: &Limits) -> Result<usize> {
    Ok(optimal_coloring(g, limits)?
        .into_iter()
        .max()
        .map_or(0, |c| c + 1))
}

/// A proper coloring with `χ(G)` colors, as a color index per vertex.
pub fn optimal_coloring(g: &Graph, limits: &Limits) -> Result<Vec<usize>> {
    if g.edge_count() == 0 {
        return Ok(vec![0; g.vertex_count()]);
    }
    let lower = clique_number(g, limits)?;
    let mut nodes = 0u64;
    for k in lower..=g.vertex_count() {
        if let Some(colors) = color_with(g, k, limits.search_nodes, &mut nodes)? {
            debug_assert!(g.edges().all(|(u, v)| colors[u] != colors[v]));
            return Ok(colors);
        }
    }
    unreachable!("n colors always suffice")
}

fn color_with(g: &Graph, k: usize, budget: u64, nodes: &mut u64) -> Result<Option<Vec<usize>>> {
    let n = g.vertex_count();
    let mut color = vec![usize::MAX; n];
    // forbidden[v][c] counts colored neighbors of v with color c
    let mut forbidden = vec![vec![0u32; k]; n];

    fn rec(
        g: &Graph,
        k: usize,
        colored: usize,
        used: usize,
        color: &mut [usize],
        forbidden: &mut [Vec<u32>],
        nodes: &mut u64,
        budget: u64,
    ) -> Result<bool> {
        if colored == g.vertex_count() {
            return Ok(true);
        }
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::Timeout {
                what: "chromatic number",
                nodes: *nodes,
            });
        }
        // DSATUR: most distinct neighbor colors, then degree, then index
        let v = (0..g.vertex_count())
            .filter(|&v| color[v] == usize::MAX)
            .max_by_key(|&v| {
                let sat = forbidden[v].iter().filter(|&&c| c > 0).count();
                (sat, g.degree(v), std::cmp::Reverse(v))
            })
            .expect("an uncolored vertex remains");
        // a fresh color is interchangeable with any other fresh color
        for c in 0..k.min(used + 1) {
            if forbidden[v][c] > 0 {
                continue;
            }
            color[v] = c;
            for &w in g.neighbors(v) {
                forbidden[w][c] += 1;
            }
            let used_now = used.max(c + 1);
            if rec(g, k, colored + 1, used_now, color, forbidden, nodes, budget)? {
                return Ok(true);
            }
            for &w in g.neighbors(v) {
                forbidden[w][c] -= 1;
            }
            color[v] = usize::MAX;
        }
        Ok(false)
    }

    if rec(g, k, 0, 0, &mut color, &mut forbidden, nodes, budget)? {
        Ok(Some(color))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn both(g: &Graph) -> (usize, usize) {
        let l = Limits::default();
        (
            clique_number(g, &l).unwrap(),
            chromatic_number(g, &l).unwrap(),
        )
    }

    #[test]
    fn examples() {
        assert_eq!(both(&Graph::cycle(5).unwrap()), (2, 3));
        assert_eq!(both(&Graph::complete(4).unwrap()), (4, 4));
        assert_eq!(both(&Graph::cycle(4).unwrap()), (2, 2));
        assert_eq!(both(&Graph::kneser(5, 2).unwrap()), (2, 3));
        assert_eq!(both(&Graph::edgeless(3).unwrap()), (1, 1));
    }

    #[test]
    fn mycielski_grotzsch_needs_four_colors() {
        // triangle-free with chromatic number 4
        let edges = [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (5, 1),
            (5, 4),
            (6, 0),
            (6, 2),
            (7, 1),
            (7, 3),
            (8, 2),
            (8, 4),
            (9, 3),
            (9, 0),
            (10, 5),
            (10, 6),
            (10, 7),
            (10, 8),
            (10, 9),
        ];
        let g = Graph::from_edges(11, edges, "grotzsch").unwrap();
        assert_eq!(both(&g), (2, 4));
    }
}
