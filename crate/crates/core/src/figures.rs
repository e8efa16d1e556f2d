//! The published winning tables for `m = 4` and `m = 6`, embedded as data.

use crate::error::{GameError, Result};
use crate::game::{BitString, Edge, GameInstance};
use crate::matchings::{enumerate_matchings, rank, validate_matching, PerfectMatching};
use crate::strategy::{BobOutput, DeterministicStrategy};

type AliceRow = (&'static [&'static str], &'static str);
type BobRow = (&'static [&'static [(usize, usize)]], (usize, usize), &'static str);

const ALICE_4: &[AliceRow] = &[
    (&["0000", "0001", "1110", "1111"], "00"),
    (&["0100", "0101", "1010", "1011"], "01"),
    (&["0010", "0011", "1100", "1101"], "10"),
    (&["1000", "1001", "0110", "0111"], "11"),
];

const BOB_4: &[BobRow] = &[
    (&[&[(0, 1), (2, 3)]], (0, 1), "00"),
    (&[&[(0, 2), (1, 3)]], (0, 2), "00"),
    (&[&[(1, 2), (0, 3)]], (1, 2), "00"),
];

const ALICE_6: &[AliceRow] = &[
    (
        &["000000", "000001", "000100", "000101", "111010", "111011", "111110", "111111"],
        "000",
    ),
    (
        &["000010", "000011", "000110", "000111", "111000", "111001", "111100", "111101"],
        "100",
    ),
    (
        &["001000", "001001", "001100", "001101", "110010", "110011", "110110", "110111"],
        "010",
    ),
    (
        &["001010", "001011", "001110", "001111", "110000", "110001", "110100", "110101"],
        "110",
    ),
    (
        &["010000", "010001", "010100", "010101", "101010", "101011", "101110", "101111"],
        "001",
    ),
    (
        &["010010", "010011", "010110", "010111", "101000", "101001", "101100", "101101"],
        "101",
    ),
    (
        &["011000", "011001", "011100", "011101", "100010", "100011", "100110", "100111"],
        "011",
    ),
    (
        &["011010", "011011", "011110", "011111", "100000", "100001", "100100", "100101"],
        "111",
    ),
];

const BOB_6: &[BobRow] = &[
    (
        &[&[(0, 1), (2, 3), (4, 5)], &[(0, 1), (2, 5), (3, 4)]],
        (0, 1),
        "000",
    ),
    (
        &[&[(0, 2), (1, 3), (4, 5)], &[(0, 2), (1, 5), (3, 4)]],
        (0, 2),
        "000",
    ),
    (
        &[
            &[(0, 4), (1, 2), (3, 5)],
            &[(0, 4), (1, 3), (2, 5)],
            &[(0, 4), (1, 5), (2, 3)],
        ],
        (0, 4),
        "000",
    ),
    (
        &[&[(0, 3), (1, 2), (4, 5)], &[(0, 5), (1, 2), (3, 4)]],
        (1, 2),
        "000",
    ),
    (
        &[
            &[(0, 2), (1, 4), (3, 5)],
            &[(0, 3), (1, 4), (2, 5)],
            &[(0, 5), (1, 4), (2, 3)],
        ],
        (1, 4),
        "000",
    ),
    (
        &[
            &[(0, 1), (2, 4), (3, 5)],
            &[(0, 3), (1, 5), (2, 4)],
            &[(0, 5), (1, 3), (2, 4)],
        ],
        (2, 4),
        "000",
    ),
];

fn build(m: usize, alice_rows: &[AliceRow], bob_rows: &[BobRow]) -> Result<DeterministicStrategy> {
    let inst = GameInstance::new(m)?;
    let mut alice: Vec<Option<BitString>> = vec![None; inst.input_count() as usize];
    for (xs, a) in alice_rows {
        let a: BitString = a.parse()?;
        for x in *xs {
            let x: BitString = x.parse()?;
            alice[x.value() as usize] = Some(a);
        }
    }
    let count = enumerate_matchings(&inst)?.len();
    let mut bob: Vec<Option<BobOutput>> = vec![None; count];
    for (ys, (i, j), b2) in bob_rows {
        let out = BobOutput {
            edge: Edge::new(*i, *j)?,
            b2: b2.parse()?,
        };
        for pairs in *ys {
            bob[rank(&validate_matching(pairs, &inst)?)] = Some(out);
        }
    }
    let incomplete = || GameError::Shape(format!("embedded table for m={m} is incomplete"));
    let alice = alice.into_iter().collect::<Option<Vec<_>>>().ok_or_else(incomplete)?;
    let bob = bob.into_iter().collect::<Option<Vec<_>>>().ok_or_else(incomplete)?;
    DeterministicStrategy::new(inst, alice, bob)
}

fn tables(m: usize) -> Result<(&'static [AliceRow], &'static [BobRow])> {
    match m {
        4 => Ok((ALICE_4, BOB_4)),
        6 => Ok((ALICE_6, BOB_6)),
        _ => Err(GameError::Unsupported(format!(
            "published tables exist only for m=4 and m=6, not m={m}"
        ))),
    }
}

/// Bob's inputs in the order the published table lists them.
pub fn figure_bob_inputs(m: usize) -> Result<Vec<PerfectMatching>> {
    let inst = GameInstance::new(m)?;
    let (_, bob_rows) = tables(m)?;
    bob_rows
        .iter()
        .flat_map(|(ys, _, _)| ys.iter())
        .map(|pairs| validate_matching(pairs, &inst))
        .collect()
}

/// The published classical winning strategy for `m = 4` or `m = 6`.
pub fn figure_strategy(m: usize) -> Result<DeterministicStrategy> {
    let (alice_rows, bob_rows) = tables(m)?;
    build(m, alice_rows, bob_rows)
}
