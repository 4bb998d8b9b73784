use super::{Graph, KnownSymmetry};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Base-`g` positional encoding of words, coordinate 1 most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordCodec {
    base: usize,
    len: usize,
    count: usize,
}

impl WordCodec {
    pub fn new(base: usize, len: usize) -> Result<Self> {
        let count = word_count(base, len).ok_or(Error::SizeCap {
            what: "word count",
            requested: u128::MAX,
            cap: usize::MAX as u128,
        })?;
        Ok(WordCodec { base, len, count })
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn encode(&self, symbols: &[usize]) -> usize {
        symbols.iter().fold(0, |acc, &s| acc * self.base + s)
    }

    pub fn decode_into(&self, mut index: usize, out: &mut [usize]) {
        for slot in out.iter_mut().rev() {
            *slot = index % self.base;
            index /= self.base;
        }
    }

    pub fn decode(&self, index: usize) -> Vec<usize> {
        let mut out = vec![0; self.len];
        self.decode_into(index, &mut out);
        out
    }
}

/// `base^len`, or `None` on overflow.
pub fn word_count(base: usize, len: usize) -> Option<usize> {
    let mut acc = 1usize;
    for _ in 0..len {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Calls `visit` with the index of every word at semimetric distance
/// `1..=d` from `word` (each exactly once).
pub(crate) fn for_each_neighbor_word(
    base: &Graph,
    codec: &WordCodec,
    word: &[usize],
    d: usize,
    mut visit: impl FnMut(usize),
) {
    // place value of each coordinate
    let mut weights = vec![1usize; word.len()];
    for i in (0..word.len().saturating_sub(1)).rev() {
        weights[i] = weights[i + 1] * codec.base;
    }
    let origin = codec.encode(word);
    fn rec(
        base: &Graph,
        word: &[usize],
        weights: &[usize],
        pos: usize,
        budget: usize,
        index: usize,
        changed: bool,
        visit: &mut dyn FnMut(usize),
    ) {
        if pos == word.len() {
            if changed {
                visit(index);
            }
            return;
        }
        rec(base, word, weights, pos + 1, budget, index, changed, visit);
        if budget == 0 {
            return;
        }
        let s = word[pos];
        for &t in base.neighbors(s) {
            let shifted = index - s * weights[pos] + t * weights[pos];
            rec(
                base,
                word,
                weights,
                pos + 1,
                budget - 1,
                shifted,
                true,
                visit,
            );
        }
    }
    rec(base, word, &weights, 0, d, origin, false, &mut visit);
}

/// The explicit graph `G(n, d)`: words of length `n`, adjacent when their
/// semimetric distance lies in `1..=d`.
pub fn power_graph(g: &Graph, n: usize, d: usize, limits: &Limits) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("power_graph needs n >= 1".into()));
    }
    if d > n {
        return Err(Error::InvalidParameter(format!(
            "power_graph needs 0 <= d <= n, got d={d}, n={n}"
        )));
    }
    let count = match word_count(g.vertex_count(), n) {
        Some(c) if c <= limits.max_vertices => c,
        other => {
            return Err(Error::SizeCap {
                what: "power graph vertices",
                requested: other.map_or_else(
                    || (g.vertex_count() as u128).saturating_pow(n as u32),
                    |c| c as u128,
                ),
                cap: limits.max_vertices as u128,
            })
        }
    };
    let codec = WordCodec::new(g.vertex_count(), n)?;
    let mut word = vec![0; n];
    let mut adjacency = Vec::with_capacity(count);
    for index in 0..count {
        codec.decode_into(index, &mut word);
        let mut row = Vec::new();
        for_each_neighbor_word(g, &codec, &word, d, |j| row.push(j));
        adjacency.push(row);
    }
    let known = KnownSymmetry {
        vertex_transitive: g.known.vertex_transitive,
        edge_transitive: false,
    };
    Ok(Graph::from_adjacency(adjacency, format!("{}({n},{d})", g.label())).with_known(known))
}

/// The strong power `G^r`, i.e. `G(r, r)`.
pub fn strong_power(g: &Graph, r: usize, limits: &Limits) -> Result<Graph> {
    let p = power_graph(g, r, r, limits)?;
    let label = format!("pow:{},{r}", g.label());
    Ok(if r == 1 {
        p.with_known(g.known).with_label(g.label())
    } else {
        p.with_label(label)
    })
}
