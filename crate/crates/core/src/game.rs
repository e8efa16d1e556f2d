//! Game instance, bit strings, edges and round adjudication.
//!
//! A round is won when Bob's edge `{i, j}` belongs to his matching and
//! `x_i ^ x_j == (enc(i) ^ enc(j)) . (a ^ b2)`, where `enc` is the big-endian
//! binary form of an index padded to `n = ceil(log2 m)` bits and `.` is the
//! inner product over GF(2).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{GameError, Result};
use crate::matchings::PerfectMatching;

/// Largest `m` for which the table-based operations (strategies, audits,
/// searches) will enumerate all `2^m` Alice inputs.
pub const MAX_TABLE_M: usize = 16;

/// `ceil(log2 m)` for `m >= 1`.
pub fn ceil_log2(m: usize) -> usize {
    m.next_power_of_two().trailing_zeros() as usize
}

/// Fixed-length binary word. Character `k` of the textual form is the
/// `k`-th bit counted from the most significant end.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitString {
    value: u64,
    len: u8,
}

impl BitString {
    pub fn new(value: u64, len: usize) -> Result<Self> {
        if len == 0 || len > 64 {
            return Err(GameError::InvalidLength { len });
        }
        if len < 64 && value >> len != 0 {
            return Err(GameError::InvalidBits(format!(
                "value {value} does not fit in {len} bits"
            )));
        }
        Ok(Self {
            value,
            len: len as u8,
        })
    }

    pub fn zeros(len: usize) -> Result<Self> {
        Self::new(0, len)
    }

    /// Builds a string from individual bits, most significant first.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if bits.is_empty() || bits.len() > 64 {
            return Err(GameError::InvalidLength { len: bits.len() });
        }
        let mut value = 0u64;
        for &b in bits {
            if b > 1 {
                return Err(GameError::InvalidBits(format!("{bits:?}")));
            }
            value = (value << 1) | u64::from(b);
        }
        Self::new(value, bits.len())
    }

    /// Integer whose binary form (width `len`) is this string.
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Bit at character position `k` (0 = most significant).
    pub fn bit(&self, k: usize) -> u8 {
        assert!(k < self.len(), "bit position {k} out of range");
        ((self.value >> (self.len() - 1 - k)) & 1) as u8
    }

    pub fn bits(&self) -> Vec<u8> {
        (0..self.len()).map(|k| self.bit(k)).collect()
    }

    pub fn xor(&self, other: &BitString) -> Result<BitString> {
        self.check_len(other)?;
        Ok(BitString {
            value: self.value ^ other.value,
            len: self.len,
        })
    }

    pub fn complement(&self) -> BitString {
        let mask = if self.len == 64 {
            u64::MAX
        } else {
            (1u64 << self.len) - 1
        };
        BitString {
            value: !self.value & mask,
            len: self.len,
        }
    }

    fn check_len(&self, other: &BitString) -> Result<()> {
        if self.len != other.len {
            return Err(GameError::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }
}

impl Ord for BitString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.value.cmp(&other.value))
    }
}

impl PartialOrd for BitString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.value, width = self.len())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(GameError::InvalidBits(s.to_string())),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::from_bits(&bits)
    }
}

/// GF(2) inner product: XOR over the positionwise ANDs.
pub fn dot(u: &BitString, v: &BitString) -> Result<u8> {
    u.check_len(v)?;
    Ok(parity(u.value & v.value))
}

#[inline]
pub(crate) fn parity(word: u64) -> u8 {
    (word.count_ones() & 1) as u8
}

/// Size of one instance of the game.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GameInstance {
    m: usize,
    n: usize,
}

impl GameInstance {
    pub fn new(m: usize) -> Result<Self> {
        if m < 2 || !m.is_multiple_of(2) || m > 64 {
            return Err(GameError::InvalidSize(m));
        }
        Ok(Self {
            m,
            n: ceil_log2(m),
        })
    }

    /// Number of input bits given to Alice.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Width of `a`, `b2` and of the encoded indices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of distinct Alice inputs, `2^m`.
    pub fn input_count(&self) -> u64 {
        1u64 << self.m
    }

    /// Number of distinct `a` (or `b2`) values, `2^n`.
    pub fn output_count(&self) -> u64 {
        1u64 << self.n
    }

    pub(crate) fn require_table_size(&self) -> Result<()> {
        if self.m > MAX_TABLE_M {
            return Err(GameError::TooLarge {
                m: self.m,
                max: MAX_TABLE_M,
            });
        }
        Ok(())
    }

    pub(crate) fn check_input(&self, x: &BitString) -> Result<()> {
        if x.len() != self.m {
            return Err(GameError::Shape(format!(
                "input {x} has length {} but m={}",
                x.len(),
                self.m
            )));
        }
        Ok(())
    }

    pub(crate) fn check_output(&self, what: &str, v: &BitString) -> Result<()> {
        if v.len() != self.n {
            return Err(GameError::Shape(format!(
                "{what} {v} has length {} but n={}",
                v.len(),
                self.n
            )));
        }
        Ok(())
    }

    /// Alice's input with integer form `value` (bit `x_0` is the most significant).
    pub fn input(&self, value: u64) -> BitString {
        BitString::new(value, self.m).expect("input value within 2^m")
    }

    /// Output string with integer form `value`.
    pub fn output(&self, value: u64) -> BitString {
        BitString::new(value, self.n).expect("output value within 2^n")
    }
}

/// Big-endian binary representation of `i`, zero-padded to `n` bits.
pub fn encode_index(i: usize, inst: &GameInstance) -> Result<BitString> {
    if i >= inst.m() {
        return Err(GameError::IndexOutOfRange {
            index: i,
            m: inst.m(),
        });
    }
    BitString::new(i as u64, inst.n())
}

/// Unordered pair of distinct vertices, stored with `lo < hi`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Edge {
    lo: usize,
    hi: usize,
}

impl Edge {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        match i.cmp(&j) {
            Ordering::Less => Ok(Self { lo: i, hi: j }),
            Ordering::Greater => Ok(Self { lo: j, hi: i }),
            Ordering::Equal => Err(GameError::SelfPair(i)),
        }
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    pub fn contains(&self, v: usize) -> bool {
        self.lo == v || self.hi == v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

impl FromStr for Edge {
    type Err = GameError;

    /// Accepts exactly `i-j` with `i < j`.
    fn from_str(s: &str) -> Result<Self> {
        let malformed = || GameError::MalformedEdge(s.to_string());
        let (l, r) = s.split_once('-').ok_or_else(malformed)?;
        let is_decimal = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        if !is_decimal(l) || !is_decimal(r) {
            return Err(malformed());
        }
        let i: usize = l.parse().map_err(|_| malformed())?;
        let j: usize = r.parse().map_err(|_| malformed())?;
        if i >= j {
            return Err(malformed());
        }
        Ok(Self { lo: i, hi: j })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Question {
    pub x: BitString,
    pub y: PerfectMatching,
}

impl fmt::Display for Question {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x:{} y:{}", self.x, self.y)
    }
}

/// Joint answer: Alice's `a` and Bob's `(edge, b2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Answer {
    pub edge: Edge,
    pub a: BitString,
    pub b2: BitString,
}

/// Decides one round.
pub fn wins_round(inst: &GameInstance, q: &Question, ans: &Answer) -> Result<bool> {
    inst.check_input(&q.x)?;
    if q.y.m() != inst.m() {
        return Err(GameError::Shape(format!(
            "matching {} is over {} vertices but m={}",
            q.y,
            q.y.m(),
            inst.m()
        )));
    }
    inst.check_output("a", &ans.a)?;
    inst.check_output("b2", &ans.b2)?;
    if ans.edge.hi() >= inst.m() {
        return Err(GameError::IndexOutOfRange {
            index: ans.edge.hi(),
            m: inst.m(),
        });
    }
    if !q.y.contains_edge(&ans.edge) {
        return Ok(false);
    }
    Ok(round_holds(inst, q.x.value(), ans.edge, ans.a.value() ^ ans.b2.value()))
}

/// The parity equation alone, on raw integer forms (`x` with `x_0` most
/// significant; `a_xor_b2` is `a ^ b2`). Edge membership is not checked.
#[inline]
pub(crate) fn round_holds(inst: &GameInstance, x: u64, edge: Edge, a_xor_b2: u64) -> bool {
    let lhs = input_bit(inst, x, edge.lo()) ^ input_bit(inst, x, edge.hi());
    let rhs = parity(((edge.lo() ^ edge.hi()) as u64) & a_xor_b2);
    lhs == rhs
}

#[inline]
pub(crate) fn input_bit(inst: &GameInstance, x: u64, i: usize) -> u8 {
    ((x >> (inst.m() - 1 - i)) & 1) as u8
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn m(y: &str) -> PerfectMatching {
        y.parse().unwrap()
    }

    #[test]
    fn encode_index_examples() {
        let m4 = GameInstance::new(4).unwrap();
        let m6 = GameInstance::new(6).unwrap();
        assert_eq!(encode_index(0, &m4).unwrap().to_string(), "00");
        assert_eq!(encode_index(3, &m4).unwrap().to_string(), "11");
        assert_eq!(encode_index(4, &m6).unwrap().to_string(), "100");
        assert_eq!(
            encode_index(4, &m4),
            Err(GameError::IndexOutOfRange { index: 4, m: 4 })
        );
    }

    #[test]
    fn dot_examples() {
        assert_eq!(dot(&bs("00"), &bs("11")).unwrap(), 0);
        assert_eq!(dot(&bs("11"), &bs("10")).unwrap(), 1);
        assert_eq!(dot(&bs("111"), &bs("101")).unwrap(), 0);
        assert!(matches!(
            dot(&bs("11"), &bs("101")),
            Err(GameError::LengthMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn instance_widths() {
        let widths: Vec<usize> = [2, 4, 6, 8, 10, 16, 64]
            .iter()
            .map(|&m| GameInstance::new(m).unwrap().n())
            .collect();
        assert_eq!(widths, vec![1, 2, 3, 3, 4, 4, 6]);
        assert_eq!(GameInstance::new(0), Err(GameError::InvalidSize(0)));
        assert_eq!(GameInstance::new(5), Err(GameError::InvalidSize(5)));
    }

    #[test]
    fn bitstring_text_and_bits() {
        let s = bs("0110");
        assert_eq!(s.value(), 6);
        assert_eq!(s.bits(), vec![0, 1, 1, 0]);
        assert_eq!(s.complement().to_string(), "1001");
        assert!("01a".parse::<BitString>().is_err());
        assert!("".parse::<BitString>().is_err());
        assert_eq!(BitString::new(4, 2), Err(GameError::InvalidBits("value 4 does not fit in 2 bits".into())));
    }

    #[test]
    fn edge_parsing() {
        assert_eq!("0-1".parse::<Edge>().unwrap(), Edge::new(1, 0).unwrap());
        for bad in ["1-0", "1-1", "a-2", "1-", "-1", "1+2", "+1-2"] {
            assert!(bad.parse::<Edge>().is_err(), "{bad}");
        }
        assert_eq!(Edge::new(3, 3), Err(GameError::SelfPair(3)));
    }

    #[test]
    fn wins_round_examples() {
        let inst = GameInstance::new(4).unwrap();
        let q = |x: &str| Question {
            x: bs(x),
            y: m("0-1,2-3"),
        };
        let ans = |e: (usize, usize), a: &str| Answer {
            edge: Edge::new(e.0, e.1).unwrap(),
            a: bs(a),
            b2: bs("00"),
        };
        assert!(wins_round(&inst, &q("0000"), &ans((0, 1), "00")).unwrap());
        assert!(wins_round(&inst, &q("0110"), &ans((0, 1), "11")).unwrap());
        assert!(!wins_round(&inst, &q("0100"), &ans((0, 1), "00")).unwrap());
        assert!(!wins_round(&inst, &q("0000"), &ans((0, 2), "00")).unwrap());
    }

    #[test]
    fn wins_round_rejects_bad_shapes() {
        let inst = GameInstance::new(4).unwrap();
        let q = Question {
            x: bs("000"),
            y: m("0-1,2-3"),
        };
        let ans = Answer {
            edge: Edge::new(0, 1).unwrap(),
            a: bs("00"),
            b2: bs("00"),
        };
        assert!(matches!(wins_round(&inst, &q, &ans), Err(GameError::Shape(_))));
        let q = Question {
            x: bs("0000"),
            y: m("0-1,2-3"),
        };
        let ans = Answer { a: bs("000"), ..ans };
        assert!(matches!(wins_round(&inst, &q, &ans), Err(GameError::Shape(_))));
    }

    fn word(len: usize) -> impl Strategy<Value = BitString> {
        (0u64..(1u64 << len)).prop_map(move |v| BitString::new(v, len).unwrap())
    }

    proptest! {
        #[test]
        fn dot_is_bilinear(u in word(5), v in word(5), w in word(5)) {
            let zero = BitString::zeros(5).unwrap();
            prop_assert_eq!(dot(&u, &zero).unwrap(), 0);
            let lhs = dot(&u, &v.xor(&w).unwrap()).unwrap();
            prop_assert_eq!(lhs, dot(&u, &v).unwrap() ^ dot(&u, &w).unwrap());
        }

        #[test]
        fn round_ignores_edge_orientation_and_pair_flips(
            x in 0u64..64, yi in 0usize..15, ei in 0usize..3, a in 0u64..8, b2 in 0u64..8,
        ) {
            let inst = GameInstance::new(6).unwrap();
            let y = crate::matchings::enumerate_matchings(&inst).unwrap()[yi].clone();
            let e = y.edges()[ei];
            let q = Question { x: inst.input(x), y: y.clone() };
            let ans = Answer { edge: e, a: inst.output(a), b2: inst.output(b2) };
            let swapped = Answer { edge: Edge::new(e.hi(), e.lo()).unwrap(), ..ans };
            let base = wins_round(&inst, &q, &ans).unwrap();
            prop_assert_eq!(base, wins_round(&inst, &q, &swapped).unwrap());

            let flip = (1u64 << (5 - e.lo())) | (1u64 << (5 - e.hi()));
            let flipped = Question { x: inst.input(x ^ flip), y };
            prop_assert_eq!(base, wins_round(&inst, &flipped, &ans).unwrap());
        }
    }
}
