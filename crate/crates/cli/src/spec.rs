//! The graph mini-language:
//!
//! ```text
//! K:q            complete graph
//! C:m            cycle
//! kneser:c,a     Kneser graph on the a-subsets of {1..c}
//! sum:NxKm+...   disjoint union of cliques, e.g. sum:1xK1+1xK2
//! pow:SPEC,r     strong power of SPEC
//! file:PATH      edge list
//! ```

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use graphcap::graph::{read_edge_list, strong_power};
use graphcap::{Graph, Limits};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSpec {
    Complete(usize),
    Cycle(usize),
    Kneser(usize, usize),
    Sum(Vec<(usize, usize)>),
    Pow(Box<GraphSpec>, usize),
    File(PathBuf),
}

/// A parse failure at a byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub input: String,
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let column = self.input[..self.position.min(self.input.len())]
            .chars()
            .count();
        write!(
            f,
            "{} at column {}\n  {}\n  {}^",
            self.message,
            column + 1,
            self.input,
            " ".repeat(column)
        )
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    input: &'a str,
}

impl<'a> Parser<'a> {
    fn error(&self, position: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            input: self.input.to_string(),
            position,
            message: message.into(),
        }
    }

    /// Parses `self.input[start..end]` as a whole spec.
    fn spec(&self, start: usize, end: usize) -> Result<GraphSpec, ParseError> {
        let text = &self.input[start..end];
        let Some(colon) = text.find(':') else {
            return Err(self.error(start, "expected one of K:, C:, kneser:, sum:, pow:, file:"));
        };
        let body = start + colon + 1;
        match &text[..colon] {
            "K" => Ok(GraphSpec::Complete(self.number(body, end, 1)?)),
            "C" => Ok(GraphSpec::Cycle(self.number(body, end, 1)?)),
            "kneser" => {
                let comma = self.find(body, end, ',', "expected kneser:c,a")?;
                let c = self.number(body, comma, 1)?;
                let a = self.number(comma + 1, end, 1)?;
                if a > c {
                    return Err(
                        self.error(comma + 1, format!("kneser needs a <= c, got c={c}, a={a}"))
                    );
                }
                Ok(GraphSpec::Kneser(c, a))
            }
            "sum" => self.sum(body, end),
            "pow" => {
                let Some(comma) = self.input[body..end].rfind(',').map(|i| body + i) else {
                    return Err(self.error(end, "expected pow:SPEC,r"));
                };
                let inner = self.spec(body, comma)?;
                let r = self.number(comma + 1, end, 1)?;
                Ok(GraphSpec::Pow(Box::new(inner), r))
            }
            "file" => {
                if body == end {
                    return Err(self.error(body, "expected a path after file:"));
                }
                Ok(GraphSpec::File(PathBuf::from(&self.input[body..end])))
            }
            other => Err(self.error(
                start,
                format!("unknown graph kind `{other}`; expected K, C, kneser, sum, pow or file"),
            )),
        }
    }

    fn sum(&self, start: usize, end: usize) -> Result<GraphSpec, ParseError> {
        let mut terms = Vec::new();
        let mut at = start;
        loop {
            let term_end = self.input[at..end].find('+').map_or(end, |i| at + i);
            let x = self.find(at, term_end, 'x', "expected a term NxKm")?;
            let mult = self.number(at, x, 1)?;
            if !self.input[x + 1..term_end].starts_with('K') {
                return Err(self.error(x + 1, "expected K after the multiplicity"));
            }
            let size = self.number(x + 2, term_end, 1)?;
            terms.push((mult, size));
            if term_end == end {
                return Ok(GraphSpec::Sum(terms));
            }
            at = term_end + 1;
        }
    }

    fn find(&self, start: usize, end: usize, c: char, message: &str) -> Result<usize, ParseError> {
        self.input[start..end]
            .find(c)
            .map(|i| start + i)
            .ok_or_else(|| self.error(start, message))
    }

    fn number(&self, start: usize, end: usize, min: usize) -> Result<usize, ParseError> {
        let text = &self.input[start..end];
        if let Some(bad) = text.find(|c: char| !c.is_ascii_digit()) {
            return Err(self.error(
                start + bad,
                format!("unexpected character in number `{text}`"),
            ));
        }
        if text.is_empty() {
            return Err(self.error(start, "expected a number"));
        }
        let value: usize = text
            .parse()
            .map_err(|_| self.error(start, format!("number `{text}` is too large")))?;
        if value < min {
            return Err(self.error(start, format!("expected a number >= {min}, got {value}")));
        }
        Ok(value)
    }
}

impl FromStr for GraphSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser { input: s }.spec(0, s.len())
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Complete(q) => write!(f, "K:{q}"),
            GraphSpec::Cycle(m) => write!(f, "C:{m}"),
            GraphSpec::Kneser(c, a) => write!(f, "kneser:{c},{a}"),
            GraphSpec::Sum(terms) => {
                let terms: Vec<String> = terms.iter().map(|(m, k)| format!("{m}xK{k}")).collect();
                write!(f, "sum:{}", terms.join("+"))
            }
            GraphSpec::Pow(inner, r) => write!(f, "pow:{inner},{r}"),
            GraphSpec::File(path) => write!(f, "file:{}", path.display()),
        }
    }
}

impl GraphSpec {
    /// Builds the graph, labelled with the canonical spec string.
    pub fn build(&self, limits: &Limits) -> graphcap::Result<Graph> {
        let g = match self {
            GraphSpec::Complete(q) => Graph::complete(*q)?,
            GraphSpec::Cycle(m) => Graph::cycle(*m)?,
            GraphSpec::Kneser(c, a) => Graph::kneser(*c, *a)?,
            GraphSpec::Sum(terms) => Graph::clique_sum(terms)?,
            GraphSpec::Pow(inner, r) => strong_power(&inner.build(limits)?, *r, limits)?,
            GraphSpec::File(path) => read_edge_list(path)?,
        };
        Ok(g.with_label(self.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> GraphSpec {
        s.parse().unwrap()
    }

    fn error_at(s: &str) -> usize {
        s.parse::<GraphSpec>().unwrap_err().position
    }

    #[test]
    fn parses_every_form() {
        assert_eq!(parse("K:3"), GraphSpec::Complete(3));
        assert_eq!(parse("C:5"), GraphSpec::Cycle(5));
        assert_eq!(parse("kneser:5,2"), GraphSpec::Kneser(5, 2));
        assert_eq!(parse("sum:1xK1+1xK2"), GraphSpec::Sum(vec![(1, 1), (1, 2)]));
        assert_eq!(
            parse("pow:C:5,2"),
            GraphSpec::Pow(Box::new(GraphSpec::Cycle(5)), 2)
        );
        assert_eq!(
            parse("pow:kneser:5,2,3"),
            GraphSpec::Pow(Box::new(GraphSpec::Kneser(5, 2)), 3)
        );
        assert_eq!(
            parse("pow:pow:K:2,2,3"),
            GraphSpec::Pow(
                Box::new(GraphSpec::Pow(Box::new(GraphSpec::Complete(2)), 2)),
                3
            )
        );
        assert_eq!(parse("file:a,b.txt"), GraphSpec::File("a,b.txt".into()));
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "K:3",
            "C:5",
            "kneser:7,3",
            "sum:2xK1+3xK4",
            "pow:pow:C:5,2,2",
            "file:x.txt",
        ] {
            assert_eq!(parse(s).to_string(), s);
        }
    }

    #[test]
    fn errors_point_at_the_offending_text() {
        assert_eq!(error_at("Q:3"), 0);
        assert_eq!(error_at("K:x"), 2);
        assert_eq!(error_at("K:0"), 2);
        assert_eq!(error_at("K:"), 2);
        assert_eq!(error_at("C5"), 0);
        assert_eq!(error_at("kneser:5"), 7);
        assert_eq!(error_at("kneser:2,3"), 9);
        assert_eq!(error_at("sum:1xK1+2yK2"), 9);
        assert_eq!(error_at("sum:1xK1+2xL2"), 11);
        assert_eq!(error_at("pow:C:5"), 7);
        assert_eq!(error_at("pow:C:5,0"), 8);
        assert_eq!(error_at("pow:C:x,2"), 6);
        let shown = "kneser:2,3".parse::<GraphSpec>().unwrap_err().to_string();
        assert!(shown.contains("column 10"), "{shown}");
    }

    #[test]
    fn builds_labelled_graphs() {
        let limits = Limits::default();
        let g = parse("pow:C:5,2").build(&limits).unwrap();
        assert_eq!(g.vertex_count(), 25);
        assert_eq!(g.label(), "pow:C:5,2");
        assert_eq!(
            parse("sum:1xK1+1xK2").build(&limits).unwrap().edge_count(),
            1
        );
        assert_eq!(parse("kneser:5,2").build(&limits).unwrap().edge_count(), 15);
    }
}
