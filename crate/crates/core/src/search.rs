//! Searching for good deterministic strategies.
//!
//! For a fixed Bob table the best Alice table is found input by input: each
//! `x` independently picks the `a` that wins on the most matchings. Searches
//! therefore range over Bob tables only, with Alice best-responding.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{GameError, Result};
use crate::game::{input_bit, parity, BitString, GameInstance};
use crate::matchings::{enumerate_matchings, matching_count, PerfectMatching};
use crate::strategy::{
    lemma1_strategy, success, BobOutput, DeterministicStrategy, SuccessRatio,
};

/// Default cap on the number of Bob tables [`exact_omega_d`] will enumerate.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Win counts `counts[x][a]` for a Bob table, updated one matching at a time.
struct Evaluator {
    inst: GameInstance,
    outputs: usize,
    counts: Vec<u32>,
    /// Bit `x_i ^ x_j` per input, reused across calls.
    scratch: Vec<u8>,
}

impl Evaluator {
    fn new(inst: GameInstance, bob: &[BobOutput]) -> Self {
        let outputs = inst.output_count() as usize;
        let mut ev = Self {
            inst,
            outputs,
            counts: vec![0; inst.input_count() as usize * outputs],
            scratch: vec![0; inst.input_count() as usize],
        };
        for out in bob {
            ev.apply(out, true);
        }
        ev
    }

    fn apply(&mut self, out: &BobOutput, add: bool) {
        let diff = (out.edge.lo() ^ out.edge.hi()) as u64;
        let rhs: Vec<u8> = (0..self.outputs as u64)
            .map(|a| parity(diff & (a ^ out.b2.value())))
            .collect();
        for (x, lhs) in self.scratch.iter_mut().enumerate() {
            let x = x as u64;
            *lhs = input_bit(&self.inst, x, out.edge.lo()) ^ input_bit(&self.inst, x, out.edge.hi());
        }
        for (row, &lhs) in self.counts.chunks_mut(self.outputs).zip(&self.scratch) {
            for (c, &r) in row.iter_mut().zip(&rhs) {
                if r == lhs {
                    if add {
                        *c += 1;
                    } else {
                        *c -= 1;
                    }
                }
            }
        }
    }

    fn replace(&mut self, old: &BobOutput, new: &BobOutput) {
        self.apply(old, false);
        self.apply(new, true);
    }

    /// Wins of the best Alice response.
    fn best_total(&self) -> u64 {
        self.counts
            .chunks(self.outputs)
            .map(|row| u64::from(*row.iter().max().expect("non-empty")))
            .sum()
    }

    /// Best `a` per input, smallest `a` on ties.
    fn best_alice(&self) -> Vec<BitString> {
        self.counts
            .chunks(self.outputs)
            .map(|row| {
                let best = row.iter().max().expect("non-empty");
                let a = row.iter().position(|c| c == best).expect("max exists");
                self.inst.output(a as u64)
            })
            .collect()
    }
}

fn checked_bob_table(inst: &GameInstance, bob: &[BobOutput]) -> Result<Vec<PerfectMatching>> {
    let matchings = enumerate_matchings(inst)?;
    if matchings.len() != bob.len() {
        return Err(GameError::Shape(format!(
            "Bob table has {} entries, expected {}",
            bob.len(),
            matchings.len()
        )));
    }
    for (y, out) in matchings.iter().zip(bob) {
        inst.check_output("b2", &out.b2)?;
        if !y.contains_edge(&out.edge) {
            return Err(GameError::EdgeNotInMatching {
                edge: out.edge.to_string(),
                matching: y.to_string(),
            });
        }
    }
    Ok(matchings)
}

fn total_questions(inst: &GameInstance) -> Result<u64> {
    Ok(inst.input_count() * matching_count(inst.m())?)
}

/// Best Alice table against a fixed Bob table, and its exact success.
pub fn alice_best_response(
    inst: &GameInstance,
    bob: &[BobOutput],
) -> Result<(Vec<BitString>, SuccessRatio)> {
    inst.require_table_size()?;
    checked_bob_table(inst, bob)?;
    let ev = Evaluator::new(*inst, bob);
    let ratio = SuccessRatio::new(ev.best_total(), total_questions(inst)?)?;
    Ok((ev.best_alice(), ratio))
}

/// All Bob answers for `y`: edges in canonical order, then `b2` ascending.
fn bob_choices(inst: &GameInstance, y: &PerfectMatching) -> Vec<BobOutput> {
    y.edges()
        .iter()
        .flat_map(|&edge| {
            (0..inst.output_count()).map(move |b2| BobOutput {
                edge,
                b2: inst.output(b2),
            })
        })
        .collect()
}

/// `(per-matching choices, number of matchings)`; the Bob-table space is
/// `choices ^ matchings`.
pub fn bob_space(inst: &GameInstance) -> Result<(u64, u64)> {
    Ok((
        (inst.m() as u64 / 2) * inst.output_count(),
        matching_count(inst.m())?,
    ))
}

/// Exact maximum success over all deterministic strategies, with the witness
/// built from the lexicographically smallest optimal Bob table.
pub fn exact_omega_d(inst: &GameInstance, budget: u64) -> Result<(SuccessRatio, DeterministicStrategy)> {
    let (choices, ys) = bob_space(inst)?;
    let space = u32::try_from(ys)
        .ok()
        .and_then(|ys| choices.checked_pow(ys))
        .filter(|&s| s <= budget);
    let Some(_) = space else {
        return Err(GameError::BudgetExceeded {
            space: format!("{choices}^{ys}"),
            budget,
        });
    };
    inst.require_table_size()?;

    let matchings = enumerate_matchings(inst)?;
    let options: Vec<Vec<BobOutput>> = matchings.iter().map(|y| bob_choices(inst, y)).collect();
    let mut digits = vec![0usize; matchings.len()];
    let mut table: Vec<BobOutput> = options.iter().map(|o| o[0]).collect();
    let mut ev = Evaluator::new(*inst, &table);
    let mut best = (ev.best_total(), table.clone());

    // Odometer over Bob tables, last matching varying fastest.
    loop {
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                let total = total_questions(inst)?;
                let (alice, _) = alice_best_response(inst, &best.1)?;
                let witness = DeterministicStrategy::new(*inst, alice, best.1)?;
                return Ok((SuccessRatio::new(best.0, total)?, witness));
            }
            pos -= 1;
            let old = table[pos];
            digits[pos] = (digits[pos] + 1) % options[pos].len();
            table[pos] = options[pos][digits[pos]];
            ev.replace(&old, &table[pos]);
            if digits[pos] != 0 {
                break;
            }
        }
        let wins = ev.best_total();
        if wins > best.0 {
            best = (wins, table.clone());
        }
    }
}

/// How [`complete_lemma1`] fills matchings that contain no pair inside `W_m`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FillRule {
    /// First edge of the matching in canonical order, `b2 = 0^n`.
    #[default]
    FirstEdge,
    /// Last edge of the matching in canonical order, `b2 = 0^n`.
    LastEdge,
}

/// The parity strategy made total by filling Bob's undefined entries.
pub fn complete_lemma1(inst: &GameInstance, rule: FillRule) -> Result<DeterministicStrategy> {
    let zero = inst.output(0);
    lemma1_strategy(inst)?.complete_with(|y| {
        let edge = match rule {
            FillRule::FirstEdge => y.edges()[0],
            FillRule::LastEdge => *y.edges().last().expect("non-empty matching"),
        };
        BobOutput { edge, b2: zero }
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum StartPoint {
    /// Uniformly random Bob table.
    #[default]
    Random,
    /// Bob's half of [`complete_lemma1`] with [`FillRule::FirstEdge`].
    Lemma1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HillClimbConfig {
    pub seed: u64,
    pub iterations: usize,
    pub start: StartPoint,
    /// Restart from a random table after this many iterations without a
    /// strict improvement; `None` never restarts.
    pub patience: Option<usize>,
}

impl HillClimbConfig {
    pub fn new(seed: u64, iterations: usize) -> Self {
        Self {
            seed,
            iterations,
            start: StartPoint::Random,
            patience: Some(100),
        }
    }
}

#[derive(Clone, Debug)]
pub struct HillClimbReport {
    /// Best strategy found, Alice best-responding.
    pub strategy: DeterministicStrategy,
    /// Exact success of `strategy`; a lower bound on the optimum.
    pub success: SuccessRatio,
    /// Number of Bob tables scored.
    pub evaluated: usize,
    /// Highest success among all scored tables.
    pub max_evaluated: SuccessRatio,
    /// Success after each accepted move, one list per restart segment.
    pub segments: Vec<Vec<SuccessRatio>>,
}

/// Local search over Bob tables: each move changes one matching's answer
/// and is kept when the best-response success does not drop. Stops early
/// once a winning strategy is found.
pub fn hill_climb(inst: &GameInstance, config: HillClimbConfig) -> Result<HillClimbReport> {
    inst.require_table_size()?;
    let total = total_questions(inst)?;
    let ratio = |wins| SuccessRatio::new(wins, total);
    let matchings = enumerate_matchings(inst)?;
    let options: Vec<Vec<BobOutput>> = matchings.iter().map(|y| bob_choices(inst, y)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let random_table = |rng: &mut ChaCha8Rng| -> Vec<usize> {
        options.iter().map(|o| rng.gen_range(0..o.len())).collect()
    };

    let mut current: Vec<usize> = match config.start {
        StartPoint::Random => random_table(&mut rng),
        StartPoint::Lemma1 => {
            let start = complete_lemma1(inst, FillRule::FirstEdge)?;
            start
                .bob_table()
                .iter()
                .zip(&options)
                .map(|(out, o)| o.iter().position(|c| c == out).expect("valid choice"))
                .collect()
        }
    };
    let table = |digits: &[usize]| -> Vec<BobOutput> {
        digits.iter().zip(&options).map(|(&d, o)| o[d]).collect()
    };

    let mut ev = Evaluator::new(*inst, &table(&current));
    let mut current_wins = ev.best_total();
    let mut best = (current_wins, current.clone());
    let mut evaluated = 1usize;
    let mut max_evaluated = current_wins;
    let mut segments = vec![vec![ratio(current_wins)?]];
    let mut stale = 0usize;

    for _ in 0..config.iterations {
        if best.0 == total {
            break;
        }
        if config.patience.is_some_and(|p| stale >= p) {
            current = random_table(&mut rng);
            ev = Evaluator::new(*inst, &table(&current));
            current_wins = ev.best_total();
            evaluated += 1;
            max_evaluated = max_evaluated.max(current_wins);
            segments.push(vec![ratio(current_wins)?]);
            stale = 0;
        } else {
            let y = rng.gen_range(0..options.len());
            let n = options[y].len();
            let shift = rng.gen_range(1..n.max(2));
            let next = (current[y] + shift) % n;
            let (old, new) = (options[y][current[y]], options[y][next]);
            ev.replace(&old, &new);
            let wins = ev.best_total();
            evaluated += 1;
            max_evaluated = max_evaluated.max(wins);
            if wins >= current_wins {
                stale = if wins > current_wins { 0 } else { stale + 1 };
                current[y] = next;
                current_wins = wins;
                segments.last_mut().expect("one segment").push(ratio(wins)?);
            } else {
                ev.replace(&new, &old);
                stale += 1;
            }
        }
        if current_wins > best.0 {
            best = (current_wins, current.clone());
        }
    }

    let bob = table(&best.1);
    let (alice, found) = alice_best_response(inst, &bob)?;
    let strategy = DeterministicStrategy::new(*inst, alice, bob)?;
    debug_assert_eq!(success(&strategy)?, found);
    Ok(HillClimbReport {
        strategy,
        success: found,
        evaluated,
        max_evaluated: ratio(max_evaluated)?,
        segments,
    })
}
