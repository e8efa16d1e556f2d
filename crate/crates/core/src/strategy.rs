//! Deterministic classical strategies and their exact success.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{GameError, Result};
use crate::game::{round_holds, BitString, Edge, GameInstance, Question};
use crate::matchings::{enumerate_matchings, matching_count, unrank, PerfectMatching};

/// Bob's half of an answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BobOutput {
    pub edge: Edge,
    pub b2: BitString,
}

/// Exact fraction of questions won. The denominator is kept unreduced so it
/// always reads `2^m * (m-1)!!`.
#[derive(Clone, Copy, Debug)]
pub struct SuccessRatio {
    wins: u64,
    total: u64,
}

impl SuccessRatio {
    pub fn new(wins: u64, total: u64) -> Result<Self> {
        if total == 0 || wins > total {
            return Err(GameError::Precondition(format!(
                "invalid success ratio {wins}/{total}"
            )));
        }
        Ok(Self { wins, total })
    }

    pub fn wins(&self) -> u64 {
        self.wins
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Reduced rational value.
    pub fn value(&self) -> Ratio<u64> {
        Ratio::new(self.wins, self.total)
    }

    pub fn is_one(&self) -> bool {
        self.wins == self.total
    }
}

impl PartialEq for SuccessRatio {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for SuccessRatio {}

impl Ord for SuccessRatio {
    fn cmp(&self, other: &Self) -> Ordering {
        let l = u128::from(self.wins) * u128::from(other.total);
        let r = u128::from(other.wins) * u128::from(self.total);
        l.cmp(&r)
    }
}

impl PartialOrd for SuccessRatio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SuccessRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.wins, self.total)
    }
}

/// Read access shared by total and partial strategies.
pub trait StrategyTable: Sync {
    fn instance(&self) -> &GameInstance;
    /// Alice's answer on the input with integer form `x`.
    fn alice(&self, x: u64) -> BitString;
    /// Bob's answer on the matching with canonical rank `y`, if defined.
    fn bob(&self, y: usize) -> Option<BobOutput>;
}

/// Total tables `s_A : {0,1}^m -> {0,1}^n` and `s_B : M_m -> edge x {0,1}^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterministicStrategy {
    inst: GameInstance,
    alice: Vec<BitString>,
    bob: Vec<BobOutput>,
}

/// Like [`DeterministicStrategy`] but Bob may be undefined on some matchings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialStrategy {
    inst: GameInstance,
    alice: Vec<BitString>,
    bob: Vec<Option<BobOutput>>,
}

fn check_tables(
    inst: &GameInstance,
    alice: &[BitString],
    bob: &[Option<BobOutput>],
) -> Result<()> {
    inst.require_table_size()?;
    if alice.len() as u64 != inst.input_count() {
        return Err(GameError::Shape(format!(
            "Alice table has {} entries, expected {}",
            alice.len(),
            inst.input_count()
        )));
    }
    for a in alice {
        inst.check_output("a", a)?;
    }
    let matchings = enumerate_matchings(inst)?;
    if bob.len() != matchings.len() {
        return Err(GameError::Shape(format!(
            "Bob table has {} entries, expected {}",
            bob.len(),
            matchings.len()
        )));
    }
    for (y, out) in matchings.iter().zip(bob) {
        if let Some(out) = out {
            inst.check_output("b2", &out.b2)?;
            if !y.contains_edge(&out.edge) {
                return Err(GameError::EdgeNotInMatching {
                    edge: out.edge.to_string(),
                    matching: y.to_string(),
                });
            }
        }
    }
    Ok(())
}

impl DeterministicStrategy {
    /// `alice` is indexed by the integer form of `x`; `bob` by canonical
    /// matching rank.
    pub fn new(inst: GameInstance, alice: Vec<BitString>, bob: Vec<BobOutput>) -> Result<Self> {
        let wrapped: Vec<_> = bob.iter().copied().map(Some).collect();
        check_tables(&inst, &alice, &wrapped)?;
        Ok(Self { inst, alice, bob })
    }

    pub fn from_fns(
        inst: GameInstance,
        alice: impl Fn(&BitString) -> BitString,
        bob: impl Fn(&PerfectMatching) -> BobOutput,
    ) -> Result<Self> {
        inst.require_table_size()?;
        let alice_table = (0..inst.input_count()).map(|x| alice(&inst.input(x))).collect();
        let bob_table = enumerate_matchings(&inst)?.iter().map(bob).collect();
        Self::new(inst, alice_table, bob_table)
    }

    pub fn alice_table(&self) -> &[BitString] {
        &self.alice
    }

    pub fn bob_table(&self) -> &[BobOutput] {
        &self.bob
    }

    pub fn bob_for(&self, y: &PerfectMatching) -> BobOutput {
        self.bob[crate::matchings::rank(y)]
    }

    pub fn to_partial(&self) -> PartialStrategy {
        PartialStrategy {
            inst: self.inst,
            alice: self.alice.clone(),
            bob: self.bob.iter().copied().map(Some).collect(),
        }
    }
}

impl PartialStrategy {
    pub fn new(
        inst: GameInstance,
        alice: Vec<BitString>,
        bob: Vec<Option<BobOutput>>,
    ) -> Result<Self> {
        check_tables(&inst, &alice, &bob)?;
        Ok(Self { inst, alice, bob })
    }

    pub fn alice_table(&self) -> &[BitString] {
        &self.alice
    }

    pub fn bob_table(&self) -> &[Option<BobOutput>] {
        &self.bob
    }

    pub fn undefined_count(&self) -> usize {
        self.bob.iter().filter(|b| b.is_none()).count()
    }

    /// Canonical ranks of the matchings on which Bob is undefined.
    pub fn undefined_ranks(&self) -> Vec<usize> {
        (0..self.bob.len()).filter(|&r| self.bob[r].is_none()).collect()
    }

    /// Fails with [`GameError::PartialStrategy`] unless Bob is total.
    pub fn to_deterministic(&self) -> Result<DeterministicStrategy> {
        let undefined = self.undefined_count();
        if undefined > 0 {
            return Err(GameError::PartialStrategy { undefined });
        }
        Ok(DeterministicStrategy {
            inst: self.inst,
            alice: self.alice.clone(),
            bob: self.bob.iter().map(|b| b.expect("checked total")).collect(),
        })
    }

    /// Fills every undefined Bob entry with `fill(y)`.
    pub fn complete_with(
        &self,
        fill: impl Fn(&PerfectMatching) -> BobOutput,
    ) -> Result<DeterministicStrategy> {
        let bob = self
            .bob
            .iter()
            .enumerate()
            .map(|(r, b)| match b {
                Some(out) => Ok(*out),
                None => unrank(&self.inst, r).map(|y| fill(&y)),
            })
            .collect::<Result<Vec<_>>>()?;
        DeterministicStrategy::new(self.inst, self.alice.clone(), bob)
    }
}

impl StrategyTable for DeterministicStrategy {
    fn instance(&self) -> &GameInstance {
        &self.inst
    }

    fn alice(&self, x: u64) -> BitString {
        self.alice[x as usize]
    }

    fn bob(&self, y: usize) -> Option<BobOutput> {
        Some(self.bob[y])
    }
}

impl StrategyTable for PartialStrategy {
    fn instance(&self) -> &GameInstance {
        &self.inst
    }

    fn alice(&self, x: u64) -> BitString {
        self.alice[x as usize]
    }

    fn bob(&self, y: usize) -> Option<BobOutput> {
        self.bob[y]
    }
}

fn question_count(inst: &GameInstance) -> Result<u64> {
    inst.input_count()
        .checked_mul(matching_count(inst.m())?)
        .ok_or(GameError::TooLarge {
            m: inst.m(),
            max: crate::game::MAX_TABLE_M,
        })
}

/// Exact count of won questions over all of `{0,1}^m x M_m`.
pub fn success(s: &DeterministicStrategy) -> Result<SuccessRatio> {
    let inst = s.inst;
    let total = question_count(&inst)?;
    let wins: u64 = (0..inst.input_count())
        .into_par_iter()
        .map(|x| {
            let a = s.alice[x as usize].value();
            s.bob
                .iter()
                .filter(|out| round_holds(&inst, x, out.edge, a ^ out.b2.value()))
                .count() as u64
        })
        .sum();
    SuccessRatio::new(wins, total)
}

/// First question, in canonical order (x ascending, then matching rank), on
/// which `s` is defined and loses.
pub fn first_counterexample<S: StrategyTable>(s: &S) -> Result<Option<Question>> {
    let inst = *s.instance();
    let ys = matching_count(inst.m())? as usize;
    let found = (0..inst.input_count()).into_par_iter().find_map_first(|x| {
        let a = s.alice(x).value();
        (0..ys).find_map(|y| {
            let out = s.bob(y)?;
            (!round_holds(&inst, x, out.edge, a ^ out.b2.value())).then_some((x, y))
        })
    });
    found
        .map(|(x, y)| {
            Ok(Question {
                x: inst.input(x),
                y: unrank(&inst, y)?,
            })
        })
        .transpose()
}

/// True iff every question on which `s` is defined is won.
pub fn verify_winning<S: StrategyTable>(s: &S) -> bool {
    matches!(first_counterexample(s), Ok(None))
}

/// `{0} ∪ {2^i : i < n}`, ascending.
pub fn w_set(inst: &GameInstance) -> Vec<usize> {
    std::iter::once(0)
        .chain((0..inst.n()).map(|i| 1usize << i))
        .collect()
}

/// Alice's side of the parity strategy: bit position `p` (counted from the
/// least significant end) of `a` is `x_0 ^ x_{2^p}`.
pub fn lemma1_alice(inst: &GameInstance, x: &BitString) -> BitString {
    let value = (0..inst.n()).fold(0u64, |acc, p| {
        let bit = x.bit(0) ^ x.bit(1usize << p);
        acc | (u64::from(bit) << p)
    });
    inst.output(value)
}

/// Bob's side: the first edge of `y` lying inside `W_m`, with `b2 = 0^n`.
pub fn lemma1_bob(inst: &GameInstance, y: &PerfectMatching) -> Option<BobOutput> {
    let w = w_set(inst);
    y.edges()
        .iter()
        .find(|e| w.contains(&e.lo()) && w.contains(&e.hi()))
        .map(|&edge| BobOutput {
            edge,
            b2: inst.output(0),
        })
}

/// The parity strategy that wins whenever Bob's matching pairs two elements
/// of `W_m`; Bob is left undefined on every other matching.
pub fn lemma1_strategy(inst: &GameInstance) -> Result<PartialStrategy> {
    inst.require_table_size()?;
    let alice = (0..inst.input_count())
        .map(|x| lemma1_alice(inst, &inst.input(x)))
        .collect();
    let bob = enumerate_matchings(inst)?
        .iter()
        .map(|y| lemma1_bob(inst, y))
        .collect();
    PartialStrategy::new(*inst, alice, bob)
}

/// Length-`n` string with ones exactly at positions `i` and `j`, where
/// position `k` is the bit of `a` that carries `x_0 ^ x_{2^k}`.
pub fn indicator_string(i: usize, j: usize, inst: &GameInstance) -> Result<BitString> {
    for k in [i, j] {
        if k >= inst.n() {
            return Err(GameError::IndexOutOfRange {
                index: k,
                m: inst.n(),
            });
        }
    }
    BitString::new((1u64 << i) | (1u64 << j), inst.n())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{dot, encode_index, wins_round, Answer};

    fn inst(m: usize) -> GameInstance {
        GameInstance::new(m).unwrap()
    }

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn first_edge(inst: GameInstance) -> impl Fn(&PerfectMatching) -> BobOutput {
        move |y| BobOutput {
            edge: y.edges()[0],
            b2: inst.output(0),
        }
    }

    #[test]
    fn two_point_strategies() {
        let m2 = inst(2);
        let parity = DeterministicStrategy::from_fns(
            m2,
            |x| m2.output(u64::from(x.bit(0) ^ x.bit(1))),
            first_edge(m2),
        )
        .unwrap();
        assert_eq!(success(&parity).unwrap().to_string(), "4/4");
        assert!(verify_winning(&parity));

        let constant = DeterministicStrategy::from_fns(m2, |_| m2.output(0), first_edge(m2)).unwrap();
        let s = success(&constant).unwrap();
        assert_eq!((s.wins(), s.total()), (2, 4));
        assert_eq!(s.value(), Ratio::new(1, 2));
    }

    #[test]
    fn losing_strategy_reports_first_counterexample() {
        let m4 = inst(4);
        let s = DeterministicStrategy::from_fns(m4, |_| m4.output(0), first_edge(m4)).unwrap();
        assert!(!verify_winning(&s));
        let q = first_counterexample(&s).unwrap().unwrap();
        assert_eq!(q.to_string(), "x:0001 y:0-3,1-2");
    }

    #[test]
    fn success_ratio_ordering_is_by_value() {
        let a = SuccessRatio::new(1, 2).unwrap();
        let b = SuccessRatio::new(2, 4).unwrap();
        let c = SuccessRatio::new(3, 4).unwrap();
        assert_eq!(a, b);
        assert!(c > a);
        assert!(SuccessRatio::new(5, 4).is_err());
        assert!(SuccessRatio::new(0, 0).is_err());
    }

    #[test]
    fn bob_edges_must_lie_in_their_matching() {
        let m4 = inst(4);
        let err = DeterministicStrategy::from_fns(m4, |_| m4.output(0), |_| BobOutput {
            edge: Edge::new(0, 1).unwrap(),
            b2: m4.output(0),
        });
        assert!(matches!(err, Err(GameError::EdgeNotInMatching { .. })));
    }

    #[test]
    fn lemma1_alice_examples() {
        assert_eq!(lemma1_alice(&inst(4), &bs("0110")).to_string(), "11");
        assert_eq!(lemma1_alice(&inst(6), &bs("000010")).to_string(), "100");
    }

    #[test]
    fn lemma1_bob_undefined_off_w() {
        let m8 = inst(8);
        assert_eq!(w_set(&m8), vec![0, 1, 2, 4]);
        let y = validate(&m8, &[(0, 3), (1, 5), (2, 6), (4, 7)]);
        assert_eq!(lemma1_bob(&m8, &y), None);
        let s = lemma1_strategy(&m8).unwrap();
        assert!(s.undefined_count() > 0);
        assert!(s.undefined_ranks().contains(&crate::matchings::rank(&y)));
        assert!(matches!(
            s.to_deterministic(),
            Err(GameError::PartialStrategy { .. })
        ));
    }

    fn validate(inst: &GameInstance, pairs: &[(usize, usize)]) -> PerfectMatching {
        crate::matchings::validate_matching(pairs, inst).unwrap()
    }

    #[test]
    fn lemma1_total_and_winning_at_four_and_six() {
        for m in [4, 6] {
            let s = lemma1_strategy(&inst(m)).unwrap();
            assert_eq!(s.undefined_count(), 0);
            assert!(verify_winning(&s));
            assert!(success(&s.to_deterministic().unwrap()).unwrap().is_one());
        }
    }

    #[test]
    fn lemma1_wins_wherever_defined() {
        for m in [2, 4, 6, 8, 10] {
            let inst = inst(m);
            let s = lemma1_strategy(&inst).unwrap();
            // Check through the public round predicate rather than the fast path.
            for (r, y) in enumerate_matchings(&inst).unwrap().iter().enumerate() {
                let Some(out) = s.bob(r) else { continue };
                for x in 0..inst.input_count() {
                    let q = Question { x: inst.input(x), y: y.clone() };
                    let ans = Answer { edge: out.edge, a: s.alice(x), b2: out.b2 };
                    assert!(wins_round(&inst, &q, &ans).unwrap(), "m={m} {q}");
                }
            }
        }
    }

    #[test]
    fn indicator_examples() {
        assert_eq!(indicator_string(0, 0, &inst(4)).unwrap().to_string(), "01");
        assert_eq!(indicator_string(0, 1, &inst(4)).unwrap().to_string(), "11");
        assert_eq!(indicator_string(1, 2, &inst(6)).unwrap().to_string(), "110");
        assert!(indicator_string(2, 0, &inst(4)).is_err());
    }

    /// The four proof cases: `x_0` in {0,1} and `w1 = 0` or `w1 = 2^i`.
    #[test]
    fn lemma1_proof_cases() {
        for m in [4, 6, 8] {
            let inst = inst(m);
            let n = inst.n();
            for x in 0..inst.input_count() {
                let xs = inst.input(x);
                let a = lemma1_alice(&inst, &xs);
                for j in 0..n {
                    // w1 = 0, w2 = 2^j
                    let ind = indicator_string(j, j, &inst).unwrap();
                    let enc = encode_index(0, &inst)
                        .unwrap()
                        .xor(&encode_index(1 << j, &inst).unwrap())
                        .unwrap();
                    assert_eq!(ind, enc);
                    assert_eq!(dot(&ind, &a).unwrap(), xs.bit(0) ^ xs.bit(1 << j));
                    for i in 0..j {
                        // w1 = 2^i, w2 = 2^j
                        let ind = indicator_string(i, j, &inst).unwrap();
                        let enc = encode_index(1 << i, &inst)
                            .unwrap()
                            .xor(&encode_index(1 << j, &inst).unwrap())
                            .unwrap();
                        assert_eq!(ind, enc);
                        assert_eq!(dot(&ind, &a).unwrap(), xs.bit(1 << i) ^ xs.bit(1 << j));
                    }
                }
            }
        }
    }

    /// Mixing deterministic strategies with weights gives the weighted average
    /// of their successes, which never exceeds the best one.
    #[test]
    fn mixtures_are_convex_combinations() {
        use rand::{Rng, SeedableRng};
        let m4 = inst(4);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let matchings = enumerate_matchings(&m4).unwrap();
        for _ in 0..20 {
            let strategies: Vec<DeterministicStrategy> = (0..4)
                .map(|_| {
                    let alice = (0..16).map(|_| m4.output(rng.gen_range(0..4))).collect();
                    let bob = matchings
                        .iter()
                        .map(|y| BobOutput {
                            edge: y.edges()[rng.gen_range(0..2)],
                            b2: m4.output(rng.gen_range(0..4)),
                        })
                        .collect();
                    DeterministicStrategy::new(m4, alice, bob).unwrap()
                })
                .collect();
            let weights: Vec<u64> = (0..4).map(|_| rng.gen_range(1..10)).collect();
            let weight_sum: u64 = weights.iter().sum();

            // Expected wins per question, accumulated question by question.
            let mut weighted_wins = 0u64;
            for x in 0..16 {
                for (r, y) in matchings.iter().enumerate() {
                    for (s, w) in strategies.iter().zip(&weights) {
                        let out = s.bob_table()[r];
                        let q = Question { x: m4.input(x), y: y.clone() };
                        let ans = Answer { edge: out.edge, a: s.alice(x), b2: out.b2 };
                        if wins_round(&m4, &q, &ans).unwrap() {
                            weighted_wins += w;
                        }
                    }
                }
            }
            let mixed = Ratio::new(weighted_wins, 48 * weight_sum);
            let successes: Vec<SuccessRatio> =
                strategies.iter().map(|s| success(s).unwrap()).collect();
            let combination = successes
                .iter()
                .zip(&weights)
                .map(|(s, &w)| Ratio::new(s.wins() * w, 48 * weight_sum))
                .fold(Ratio::new(0, 1), |acc, r| acc + r);
            assert_eq!(mixed, combination);
            let best = successes.iter().max().unwrap().value();
            assert!(mixed <= best);
        }
    }
}
