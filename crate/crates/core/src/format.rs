//! Line-oriented strategy files.
//!
//! ```text
//! game m=4
//! alice 0000 -> 00
//! bob 0-1,2-3 -> 0-1 00
//! ```
//!
//! Blank lines are ignored; any other unrecognised line is an error.

use std::fmt;

use crate::game::{BitString, Edge, GameInstance};
use crate::matchings::{enumerate_matchings, rank, PerfectMatching};
use crate::strategy::{BobOutput, DeterministicStrategy, PartialStrategy, StrategyTable};

/// Diagnostic with 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based starting columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (line[..byte].chars().count() + 1, tok))
        .collect()
}

/// Parses a file whose Alice table is total; Bob may be missing lines.
pub fn parse_partial_strategy(text: &str) -> Result<PartialStrategy, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, tokens(l)))
        .filter(|(_, t)| !t.is_empty());

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| err(1, 1, "empty file; expected `game m=<m>`"))?;
    let inst = match header.as_slice() {
        [(_, "game"), (col, spec)] => {
            let value = spec
                .strip_prefix("m=")
                .ok_or_else(|| err(header_line, *col, "expected `m=<m>`"))?;
            let m: usize = value
                .parse()
                .map_err(|_| err(header_line, col + 2, format!("invalid size {value:?}")))?;
            let inst = GameInstance::new(m).map_err(|e| err(header_line, col + 2, e.to_string()))?;
            inst.require_table_size()
                .map_err(|e| err(header_line, col + 2, e.to_string()))?;
            inst
        }
        [(col, _), ..] => return Err(err(header_line, *col, "expected header `game m=<m>`")),
        [] => unreachable!("blank lines are filtered"),
    };

    let matchings = enumerate_matchings(&inst).map_err(|e| err(header_line, 1, e.to_string()))?;
    let mut alice: Vec<Option<BitString>> = vec![None; inst.input_count() as usize];
    let mut bob: Vec<Option<BobOutput>> = vec![None; matchings.len()];
    let mut last_line = header_line;

    for (ln, toks) in lines {
        last_line = ln;
        match toks.as_slice() {
            [(_, "alice"), (xc, x), (_, "->"), (vc, a)] => {
                let x = parse_bits(ln, *xc, x, inst.m())?;
                let a = parse_bits(ln, *vc, a, inst.n())?;
                let slot = &mut alice[x.value() as usize];
                if slot.is_some() {
                    return Err(err(ln, *xc, format!("duplicate Alice input {x}")));
                }
                *slot = Some(a);
            }
            [(_, "bob"), (yc, y), (_, "->"), (ec, e), (bc, b2)] => {
                let matching = parse_matching(ln, *yc, y, inst.m())?;
                let edge: Edge = e
                    .parse()
                    .map_err(|_| err(ln, *ec, format!("invalid edge {e:?}; expected `i-j` with i<j")))?;
                if !matching.contains_edge(&edge) {
                    return Err(err(ln, *ec, format!("edge {edge} is not in matching {matching}")));
                }
                let b2 = parse_bits(ln, *bc, b2, inst.n())?;
                let slot = &mut bob[rank(&matching)];
                if slot.is_some() {
                    return Err(err(ln, *yc, format!("duplicate Bob input {matching}")));
                }
                *slot = Some(BobOutput { edge, b2 });
            }
            [(col, "game"), ..] => return Err(err(ln, *col, "repeated header")),
            [(col, kw @ ("alice" | "bob")), ..] => {
                return Err(err(ln, *col, format!("malformed `{kw}` line")))
            }
            [(col, tok), ..] => return Err(err(ln, *col, format!("unknown line starting with {tok:?}"))),
            [] => unreachable!("blank lines are filtered"),
        }
    }

    if let Some(x) = alice.iter().position(Option::is_none) {
        return Err(err(
            last_line + 1,
            1,
            format!("missing Alice line for input {}", inst.input(x as u64)),
        ));
    }
    let alice = alice.into_iter().map(|a| a.expect("checked")).collect();
    PartialStrategy::new(inst, alice, bob).map_err(|e| err(last_line + 1, 1, e.to_string()))
}

/// Parses a file describing a total deterministic strategy.
pub fn parse_strategy(text: &str) -> Result<DeterministicStrategy, ParseError> {
    let partial = parse_partial_strategy(text)?;
    if let Some(&r) = partial.undefined_ranks().first() {
        let inst = *partial.instance();
        let y = crate::matchings::unrank(&inst, r).expect("rank in range");
        let line = text.lines().count() + 1;
        return Err(err(line, 1, format!("missing Bob line for matching {y}")));
    }
    Ok(partial.to_deterministic().expect("Bob table is total"))
}

fn parse_bits(line: usize, col: usize, tok: &str, width: usize) -> Result<BitString, ParseError> {
    let bits: BitString = tok
        .parse()
        .map_err(|_| err(line, col, format!("invalid bit string {tok:?}")))?;
    if bits.len() != width {
        return Err(err(
            line,
            col,
            format!("bit string {tok} has length {}, expected {width}", bits.len()),
        ));
    }
    Ok(bits)
}

fn parse_matching(line: usize, col: usize, tok: &str, m: usize) -> Result<PerfectMatching, ParseError> {
    let y: PerfectMatching = tok
        .parse()
        .map_err(|e| err(line, col, format!("invalid matching {tok:?}: {e}")))?;
    if y.m() != m {
        return Err(err(line, col, format!("matching {y} is not over {m} vertices")));
    }
    Ok(y)
}

/// Serialises Alice lines in input order, then Bob lines in canonical
/// matching order. Undefined Bob entries are omitted.
pub fn write_strategy<S: StrategyTable>(s: &S) -> String {
    let inst = *s.instance();
    let mut out = format!("game m={}\n", inst.m());
    for x in 0..inst.input_count() {
        out.push_str(&format!("alice {} -> {}\n", inst.input(x), s.alice(x)));
    }
    let matchings = enumerate_matchings(&inst).expect("strategy instance is table-sized");
    for (r, y) in matchings.iter().enumerate() {
        if let Some(b) = s.bob(r) {
            out.push_str(&format!("bob {y} -> {} {}\n", b.edge, b.b2));
        }
    }
    out
}
