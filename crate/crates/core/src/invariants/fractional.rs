//! Fractional chromatic and fractional clique-cover numbers as exact
//! rational LP optima over the enumerated maximal independent sets.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;
use crate::simplex::{self, Constraint, LinearProgram, Relation};

/// Maximal independent sets via Bron–Kerbosch with pivoting on the
/// non-adjacency relation. Errors past `limits.max_independent_sets`.
pub fn maximal_independent_sets(g: &Graph, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    let n = g.vertex_count();
    let nonadj: Vec<BitSet> = (0..n)
        .map(|v| {
            let mut b = BitSet::full(n);
            b.remove(v);
            for &w in g.neighbors(v) {
                b.remove(w);
            }
            b
        })
        .collect();

    struct Ctx<'a> {
        nonadj: &'a [BitSet],
        out: Vec<Vec<usize>>,
        cap: usize,
    }

    fn rec(ctx: &mut Ctx<'_>, r: &mut Vec<usize>, mut p: BitSet, mut x: BitSet) -> Result<()> {
        if p.is_empty() {
            if x.is_empty() {
                if ctx.out.len() == ctx.cap {
                    return Err(Error::EnumerationCap {
                        what: "maximal independent sets",
                        cap: ctx.cap,
                    });
                }
                let mut s = r.clone();
                s.sort_unstable();
                ctx.out.push(s);
            }
            return Ok(());
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .max_by_key(|&u| {
                let mut t = p.clone();
                t.intersect_with(&ctx.nonadj[u]);
                t.count()
            })
            .expect("p is nonempty");
        let mut branch = p.clone();
        branch.difference_with(&ctx.nonadj[pivot]);
        for v in branch.iter().collect::<Vec<_>>() {
            let mut np = p.clone();
            np.intersect_with(&ctx.nonadj[v]);
            let mut nx = x.clone();
            nx.intersect_with(&ctx.nonadj[v]);
            r.push(v);
            rec(ctx, r, np, nx)?;
            r.pop();
            p.remove(v);
            x.insert(v);
        }
        Ok(())
    }

    let mut ctx = Ctx {
        nonadj: &nonadj,
        out: Vec::new(),
        cap: limits.max_independent_sets,
    };
    rec(&mut ctx, &mut Vec::new(), BitSet::full(n), BitSet::empty(n))?;
    let mut out = ctx.out;
    out.sort();
    Ok(out)
}

/// Optimal fractional coloring: total weight and one weight per set.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalColoring {
    pub value: BigRational,
    pub sets: Vec<Vec<usize>>,
    pub weights: Vec<BigRational>,
}

/// `χ*(G)`: minimize total weight on independent sets such that every
/// vertex is covered with weight at least 1.
pub fn fractional_chromatic(g: &Graph, limits: &Limits) -> Result<BigRational> {
    Ok(fractional_coloring(g, limits)?.value)
}

/// `θ*(G) = χ*(complement of G)`, the fractional clique-cover number.
pub fn fractional_clique_cover(g: &Graph, limits: &Limits) -> Result<BigRational> {
    fractional_chromatic(&g.complement(), limits)
}

pub fn fractional_coloring(g: &Graph, limits: &Limits) -> Result<FractionalColoring> {
    let sets = maximal_independent_sets(g, limits)?;
    let n = g.vertex_count();
    let one = BigRational::one();
    let zero = BigRational::zero();
    let constraints = (0..n)
        .map(|v| Constraint {
            coefficients: sets
                .iter()
                .map(|s| {
                    if s.binary_search(&v).is_ok() {
                        one.clone()
                    } else {
                        zero.clone()
                    }
                })
                .collect(),
            relation: Relation::Ge,
            rhs: one.clone(),
        })
        .collect();
    let lp = LinearProgram {
        objective: vec![one.clone(); sets.len()],
        constraints,
    };
    let opt = simplex::solve(&lp)?;
    let residual = simplex::optimality_residual(&lp, &opt);
    if !residual.is_zero() {
        return Err(Error::Numeric(format!(
            "exact fractional coloring LP left residual {residual}"
        )));
    }
    Ok(FractionalColoring {
        value: opt.objective,
        sets,
        weights: opt.x,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn chi_star(g: &Graph) -> BigRational {
        fractional_chromatic(g, &Limits::default()).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(chi_star(&Graph::cycle(5).unwrap()), q(5, 2));
        assert_eq!(chi_star(&Graph::complete(4).unwrap()), q(4, 1));
        assert_eq!(chi_star(&Graph::cycle(4).unwrap()), q(2, 1));
        assert_eq!(chi_star(&Graph::path(3).unwrap()), q(2, 1));
        assert_eq!(chi_star(&Graph::kneser(5, 2).unwrap()), q(5, 2));
        assert_eq!(chi_star(&Graph::edgeless(3).unwrap()), q(1, 1));
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(
            fractional_clique_cover(&c4, &Limits::default()).unwrap(),
            q(2, 1)
        );
        let c7 = Graph::cycle(7).unwrap();
        assert_eq!(
            fractional_clique_cover(&c7, &Limits::default()).unwrap(),
            q(7, 2)
        );
    }

    #[test]
    fn maximal_sets_of_c5_and_p3() {
        let c5 = Graph::cycle(5).unwrap();
        let sets = maximal_independent_sets(&c5, &Limits::default()).unwrap();
        assert_eq!(
            sets,
            vec![vec![0, 2], vec![0, 3], vec![1, 3], vec![1, 4], vec![2, 4]]
        );
        let p3 = Graph::path(3).unwrap();
        assert_eq!(
            maximal_independent_sets(&p3, &Limits::default()).unwrap(),
            vec![vec![0, 2], vec![1]]
        );
    }

    #[test]
    fn enumeration_cap() {
        let g = Graph::edgeless(1).unwrap();
        let capped = Limits {
            max_independent_sets: 0,
            ..Limits::default()
        };
        assert!(matches!(
            maximal_independent_sets(&g, &capped),
            Err(Error::EnumerationCap { .. })
        ));
    }
}
