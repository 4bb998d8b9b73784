//! The randomized greedy code construction behind the counting lower bound.
//!
//! Each round draws a random translate `T` of `S^n` under coordinate-wise
//! automorphisms, keeps the words of `T` not yet blocked, and then blocks the
//! closed neighborhood `N[T]` in `G(n, d)`. The kept words form an
//! independent set whose expected size is `|V|^n · |S|^n / |N[S^n]|`.
//! Coordinate permutations fix `S^n`, so only the per-coordinate
//! automorphisms are sampled.
//!
//! Only words in some translate can ever be kept, so the process is complete
//! once all of them are blocked; it stops there or after `max_rounds`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::bitset::BitSet;
use super::counting::gv_sphere_count;
use crate::error::{Error, Result};
use crate::graph::power::for_each_neighbor_word;
use crate::graph::{
    automorphism_group, is_vertex_transitive, raw_seq_distance, ExtendedDistance, Graph,
    SequenceWord, WordCodec,
};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GreedyRun {
    pub seed: u64,
    /// Rounds executed.
    pub iterations: usize,
    pub final_set: Vec<SequenceWord>,
    /// The expected size guaranteed by the construction.
    pub bound_target: f64,
    /// Whether every word reachable by a translate was blocked before
    /// stopping, so that the run equals the unbounded process.
    pub covered_all: bool,
}

pub fn randomized_greedy_code(
    g: &Graph,
    n: usize,
    d: usize,
    s: &[usize],
    seed: u64,
    max_rounds: usize,
    limits: &Limits,
) -> Result<GreedyRun> {
    if s.is_empty() {
        return Err(Error::InvalidParameter(
            "the seed set S must be nonempty".into(),
        ));
    }
    g.check_independent(s)?;
    if n == 0 || d > n {
        return Err(Error::InvalidParameter(format!(
            "need n >= 1 and 0 <= d <= n, got n={n}, d={d}"
        )));
    }
    if !is_vertex_transitive(g, limits)? {
        return Err(Error::HypothesisFailed(format!(
            "{} is not vertex-transitive",
            g.label()
        )));
    }
    let codec = WordCodec::new(g.vertex_count(), n)?;
    if codec.count() > limits.max_vertices {
        return Err(Error::SizeCap {
            what: "greedy code word space",
            requested: codec.count() as u128,
            cap: limits.max_vertices as u128,
        });
    }
    let group = automorphism_group(g, limits)?;
    let bound_target = gv_sphere_count(g, s.len(), n, d)?;

    // a word is reachable when each symbol lies in some image of S
    let mut image = BitSet::empty(g.vertex_count());
    for sigma in &group {
        for &v in s {
            image.insert(sigma[v]);
        }
    }
    let reachable_total = image.count().pow(n as u32);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = codec.count();
    let mut blocked = BitSet::empty(total);
    let mut blocked_reachable = 0usize;
    let mut kept: Vec<usize> = Vec::new();
    let mut rounds = 0usize;
    let mut word = vec![0usize; n];
    let mut translate: Vec<Vec<usize>> = vec![Vec::new(); n];
    // blocks `x`, reporting whether it is a newly blocked reachable word
    let block = |x: usize, blocked: &mut BitSet, scratch: &mut [usize]| -> bool {
        if blocked.contains(x) {
            return false;
        }
        blocked.insert(x);
        codec.decode_into(x, scratch);
        scratch.iter().all(|&v| image.contains(v))
    };

    while rounds < max_rounds && blocked_reachable < reachable_total {
        for coord in translate.iter_mut() {
            let sigma = &group[rng.gen_range(0..group.len())];
            *coord = s.iter().map(|&v| sigma[v]).collect();
        }
        let words = product_indices(&codec, &translate);
        // kept words are checked against the blocks of earlier rounds only
        for &w in &words {
            if !blocked.contains(w) {
                kept.push(w);
            }
        }
        let mut scratch = vec![0usize; n];
        for &w in &words {
            blocked_reachable += usize::from(block(w, &mut blocked, &mut scratch));
            codec.decode_into(w, &mut word);
            for_each_neighbor_word(g, &codec, &word, d, |x| {
                blocked_reachable += usize::from(block(x, &mut blocked, &mut scratch));
            });
        }
        rounds += 1;
    }

    let final_set: Vec<SequenceWord> = kept
        .iter()
        .map(|&w| SequenceWord::new(codec.decode(w), g))
        .collect::<Result<_>>()?;
    verify_code(g, &final_set, d)?;
    Ok(GreedyRun {
        seed,
        iterations: rounds,
        final_set,
        bound_target,
        covered_all: blocked_reachable == reachable_total,
    })
}

fn product_indices(codec: &WordCodec, coords: &[Vec<usize>]) -> Vec<usize> {
    let mut out = vec![0usize];
    for choices in coords {
        out = out
            .iter()
            .flat_map(|&prefix| choices.iter().map(move |&c| prefix * codec.base() + c))
            .collect();
    }
    out
}

/// Errors unless every pair of words is at distance greater than `d`.
pub fn verify_code(g: &Graph, words: &[SequenceWord], d: usize) -> Result<()> {
    for (i, x) in words.iter().enumerate() {
        for y in &words[i + 1..] {
            let dist = raw_seq_distance(g, x.symbols(), y.symbols());
            if dist <= ExtendedDistance::Finite(d as u64) {
                return Err(Error::Numeric(format!(
                    "words {:?} and {:?} are at distance {dist} <= {d}",
                    x.symbols(),
                    y.symbols()
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_zero_keeps_every_word() {
        let k2 = Graph::complete(2).unwrap();
        let run = randomized_greedy_code(&k2, 3, 0, &[0], 7, 10_000, &Limits::default()).unwrap();
        assert_eq!(run.final_set.len(), 8);
        assert!(run.covered_all);
    }

    #[test]
    fn pentagon_runs_are_codes() {
        let c5 = Graph::cycle(5).unwrap();
        for seed in 0..20 {
            let run = randomized_greedy_code(&c5, 2, 2, &[0, 2], seed, 10_000, &Limits::default())
                .unwrap();
            verify_code(&c5, &run.final_set, 2).unwrap();
            assert!(!run.final_set.is_empty());
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let c5 = Graph::cycle(5).unwrap();
        let l = Limits::default();
        assert!(matches!(
            randomized_greedy_code(&c5, 2, 1, &[0, 1], 0, 10, &l),
            Err(Error::NotIndependent(0, 1))
        ));
        let p3 = Graph::path(3).unwrap();
        assert!(matches!(
            randomized_greedy_code(&p3, 2, 1, &[0, 2], 0, 10, &l),
            Err(Error::HypothesisFailed(_))
        ));
    }

    #[test]
    fn mean_size_matches_the_expectation() {
        // each word is kept with probability |S|/|N[S]| = 1/16, so the
        // expected size is exactly 32/16 = 2
        let k2 = Graph::complete(2).unwrap();
        let l = Limits::default();
        let runs = 20_000;
        let sizes: Vec<f64> = (0..runs)
            .map(|seed| {
                let run = randomized_greedy_code(&k2, 5, 2, &[0], seed, 1_000_000, &l).unwrap();
                assert!(run.covered_all);
                run.final_set.len() as f64
            })
            .collect();
        let mean = sizes.iter().sum::<f64>() / runs as f64;
        let var = sizes.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (runs - 1) as f64;
        let stderr = (var / runs as f64).sqrt();
        assert!(
            (mean - 2.0).abs() < 4.0 * stderr,
            "mean {mean} stderr {stderr}"
        );
    }

    #[test]
    fn seeds_are_reproducible() {
        let k2 = Graph::complete(2).unwrap();
        let l = Limits::default();
        let a = randomized_greedy_code(&k2, 5, 2, &[0], 42, 10_000, &l).unwrap();
        let b = randomized_greedy_code(&k2, 5, 2, &[0], 42, 10_000, &l).unwrap();
        assert_eq!(a, b);
    }
}
