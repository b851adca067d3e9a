//! Color patterns along a Hamilton cycle, and lacunar semi-total colorings
//! built from them.
//!
//! A pattern is a whitespace-separated list of `V_E` tokens: the color of a
//! cycle vertex and of the cycle edge leaving it. Parenthesized groups may
//! carry an exponent, as in `(1_2 0_1 2_0)^10`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, Coloring};
use crate::error::{Error, Result};
use crate::graph::{Graph, HamiltonDecomposition};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternString {
    source: String,
    tokens: Vec<(Color, Color)>,
}

impl PatternString {
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Parser {
            chars: text.chars().collect(),
            pos: 0,
        };
        let tokens = p.sequence(0)?;
        if p.pos < p.chars.len() {
            return Err(p.error("unmatched `)`"));
        }
        if tokens.is_empty() {
            return Err(Error::InvalidPattern("pattern is empty".into()));
        }
        Ok(PatternString {
            source: text.trim().to_string(),
            tokens,
        })
    }

    /// Builds a pattern from explicit tokens.
    pub fn from_tokens(tokens: Vec<(Color, Color)>) -> Self {
        let source = tokens
            .iter()
            .map(|(v, e)| format!("{v}_{e}"))
            .collect::<Vec<_>>()
            .join(" ");
        PatternString { source, tokens }
    }

    /// Expanded `(vertex color, edge color)` tokens.
    pub fn tokens(&self) -> &[(Color, Color)] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

impl fmt::Display for PatternString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

impl FromStr for PatternString {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PatternString::parse(s)
    }
}

impl Serialize for PatternString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.source)
    }
}

impl<'de> Deserialize<'de> for PatternString {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        PatternString::parse(&s).map_err(serde::de::Error::custom)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, msg: &str) -> Error {
        Error::InvalidPattern(format!("{msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse()
            .map_err(|_| self.error("number out of range"))
    }

    // Every token, group or exponent must be followed by a delimiter, so
    // run-together text like `0_1^3` or `1_02_1` is rejected.
    fn expect_boundary(&self) -> Result<()> {
        match self.peek() {
            None | Some('(') | Some(')') => Ok(()),
            Some(c) if c.is_whitespace() => Ok(()),
            Some('^') => Ok(()),
            Some(_) => Err(self.error("tokens must be separated by whitespace")),
        }
    }

    fn sequence(&mut self, depth: usize) -> Result<Vec<(Color, Color)>> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None => {
                    if depth > 0 {
                        return Err(self.error("unclosed `(`"));
                    }
                    return Ok(out);
                }
                Some(')') => {
                    if depth == 0 {
                        return Err(self.error("unmatched `)`"));
                    }
                    return Ok(out);
                }
                Some('(') => {
                    self.pos += 1;
                    let inner = self.sequence(depth + 1)?;
                    self.pos += 1; // the `)`
                    let reps = if self.peek() == Some('^') {
                        self.pos += 1;
                        let k = self.number()?;
                        match self.peek() {
                            None | Some(')') | Some('(') => {}
                            Some(c) if c.is_whitespace() => {}
                            Some(_) => {
                                return Err(self.error("exponent must be followed by whitespace"))
                            }
                        }
                        k
                    } else {
                        self.expect_boundary()?;
                        1
                    };
                    if reps == 0 || reps > 1_000_000 {
                        return Err(self.error("exponent out of range"));
                    }
                    for _ in 0..reps {
                        out.extend_from_slice(&inner);
                    }
                }
                Some(c) if c.is_ascii_digit() => {
                    let v = self.number()?;
                    if self.peek() != Some('_') {
                        return Err(self.error("expected `_`"));
                    }
                    self.pos += 1;
                    let e = self.number()?;
                    if self.peek() == Some('^') {
                        return Err(self.error("exponents apply only to parenthesized groups"));
                    }
                    self.expect_boundary()?;
                    let (v, e) = (
                        Color::try_from(v).map_err(|_| self.error("color out of range"))?,
                        Color::try_from(e).map_err(|_| self.error("color out of range"))?,
                    );
                    out.push((v, e));
                }
                Some(_) => return Err(self.error("unexpected character")),
            }
        }
    }
}

/// Colors the cycle from `pattern` (token `i` gives `cycle[i]` and the edge
/// to `cycle[i + 1]`), every chord with `chord_color` (default Δ), and checks
/// the result is a semi-total coloring.
pub fn apply_pattern(
    graph: &Arc<Graph>,
    decomp: &HamiltonDecomposition,
    pattern: &PatternString,
    chord_color: Option<Color>,
) -> Result<Coloring> {
    let n = decomp.cycle.len();
    if pattern.len() != n {
        return Err(Error::PatternLength {
            got: pattern.len(),
            expected: n,
        });
    }
    let chord = chord_color.unwrap_or(graph.max_degree() as Color);
    let mut vc = vec![0; graph.vertex_count()];
    let mut ec = vec![chord; graph.edge_count()];
    for (i, &(v, e)) in pattern.tokens().iter().enumerate() {
        vc[decomp.cycle[i]] = v;
        ec[decomp.cycle_edges[i]] = e;
    }
    let mu = Coloring::new(graph.clone(), vc, ec)?;
    mu.require_stc()?;
    Ok(mu)
}

/// The lacunar coloring that colors the cycle's element sequence
/// `v0, e0, v1, e1, ...` with `i mod 3` and the chords with 3.
///
/// When `2n` is not a multiple of 3 the wrap-around leaves a conflict near
/// position 0. The repair recolors up to four elements closest to that seam,
/// preferring the smallest window and then the smallest color vector.
pub fn default_lacunar_stc(graph: &Arc<Graph>, decomp: &HamiltonDecomposition) -> Result<Coloring> {
    if !graph.is_cubic() {
        return Err(Error::NotCubic);
    }
    let n = decomp.cycle.len();
    let len = 2 * n;
    let mut seq: Vec<Color> = (0..len).map(|i| (i % 3) as Color).collect();
    let build = |seq: &[Color]| -> Coloring {
        let mut vc = vec![0; graph.vertex_count()];
        let mut ec = vec![3; graph.edge_count()];
        for i in 0..n {
            vc[decomp.cycle[i]] = seq[2 * i];
            ec[decomp.cycle_edges[i]] = seq[2 * i + 1];
        }
        Coloring::from_parts_unchecked(graph.clone(), vc, ec)
    };
    if len % 3 == 0 {
        let mu = build(&seq);
        mu.require_stc()?;
        return Ok(mu);
    }
    // Sequence positions ordered by distance from the seam between len-1 and 0.
    let order: Vec<usize> = (0..len / 2)
        .flat_map(|d| [d, len - 1 - d])
        .take(4)
        .collect();
    let original = seq.clone();
    for window in 1..=4usize {
        let slots = &order[..window];
        let mut sorted_slots = slots.to_vec();
        sorted_slots.sort_unstable();
        for code in 0..3usize.pow(window as u32) {
            let mut x = code;
            let mut colors = vec![0; window];
            for c in colors.iter_mut().rev() {
                *c = (x % 3) as Color;
                x /= 3;
            }
            seq.copy_from_slice(&original);
            for (&slot, &c) in sorted_slots.iter().zip(&colors) {
                seq[slot] = c;
            }
            let mu = build(&seq);
            if mu.is_stc() {
                return Ok(mu);
            }
        }
    }
    Err(Error::NoSeamRepair)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_groups_and_exponents() {
        let p = PatternString::parse("((1_2 0_1 2_0)^3)").unwrap();
        assert_eq!(p.len(), 9);
        assert_eq!(p.tokens()[3], (1, 2));
        let q = PatternString::parse("1_0 2_1 0_2 (0_1 2_0 1_2)^3 0_1 0_2").unwrap();
        assert_eq!(q.len(), 14);
        assert_eq!(q.tokens()[13], (0, 2));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "1_", "1_0 (2_1", "1_0)", "1_02_1", "(1_0)^0", "(0_1)^3x", "1_0^2", "a_b"] {
            assert!(PatternString::parse(bad).is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn nested_groups() {
        let p = PatternString::parse("((0_1)^2 1_0)^2").unwrap();
        assert_eq!(p.tokens(), &[(0, 1), (0, 1), (1, 0), (0, 1), (0, 1), (1, 0)]);
    }

    #[test]
    fn display_keeps_source() {
        let p: PatternString = "(0_2 1_0 2_1)^2".parse().unwrap();
        assert_eq!(p.to_string(), "(0_2 1_0 2_1)^2");
        assert_eq!(PatternString::from_tokens(vec![(1, 0), (2, 1)]).to_string(), "1_0 2_1");
    }
}
