//! Statevector simulation of the entangled winning strategy.
//!
//! Alice and Bob share `(1/sqrt m) sum_i |i>|i>`. Alice applies the phase
//! `(-1)^{x_i}` to `|i>`. Bob measures his half in the basis
//! `(|i> +- |j>)/sqrt 2` over the edges `{i, j}` of his matching and reports
//! the edge; from the sign bit `s` he derives a `b2` with
//! `(enc(i) ^ enc(j)) . b2 = s`. Alice applies the Hadamard transform to her
//! `n` qubits and measures `a`. Only `m` that are powers of two are supported.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{GameError, Result};
use crate::game::{round_holds, Answer, BitString, Edge, GameInstance};
use crate::matchings::{enumerate_matchings, PerfectMatching};

/// Probabilities at or below this are treated as impossible outcomes.
pub const SUPPORT_EPS: f64 = 1e-12;

/// Joint state of Alice's and Bob's `m`-dimensional registers; amplitude of
/// `|i>|j>` at index `i * m + j`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    dim: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn amplitude(&self, alice: usize, bob: usize) -> Complex64 {
        self.amps[alice * self.dim + bob]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    fn apply_alice_phase(&mut self, x: &BitString) {
        for i in 0..self.dim {
            if x.bit(i) == 1 {
                for amp in &mut self.amps[i * self.dim..(i + 1) * self.dim] {
                    *amp = -*amp;
                }
            }
        }
    }

    /// Hadamard transform on every qubit of Alice's register.
    fn apply_alice_hadamard(&mut self) {
        let d = self.dim;
        for j in 0..d {
            let mut column: Vec<Complex64> = (0..d).map(|i| self.amps[i * d + j]).collect();
            walsh_hadamard(&mut column);
            for (i, v) in column.into_iter().enumerate() {
                self.amps[i * d + j] = v;
            }
        }
    }
}

fn require_power_of_two(inst: &GameInstance) -> Result<()> {
    if !inst.m().is_power_of_two() {
        return Err(GameError::Unsupported(format!(
            "the entangled strategy is implemented only for m a power of two, not m={}",
            inst.m()
        )));
    }
    Ok(())
}

/// In-place normalised Walsh-Hadamard transform; `v.len()` is a power of two.
fn walsh_hadamard(v: &mut [Complex64]) {
    let mut h = 1;
    while h < v.len() {
        for block in (0..v.len()).step_by(2 * h) {
            for k in block..block + h {
                let (p, q) = (v[k], v[k + h]);
                v[k] = (p + q) * FRAC_1_SQRT_2;
                v[k + h] = (p - q) * FRAC_1_SQRT_2;
            }
        }
        h *= 2;
    }
}

/// Maximally entangled state over `m` levels.
pub fn shared_state(inst: &GameInstance) -> Result<StateVector> {
    require_power_of_two(inst)?;
    let m = inst.m();
    let mut amps = vec![Complex64::new(0.0, 0.0); m * m];
    let amp = Complex64::new(1.0 / (m as f64).sqrt(), 0.0);
    for i in 0..m {
        amps[i * m + i] = amp;
    }
    Ok(StateVector { dim: m, amps })
}

/// Bob's answer string for sign bit `sign` on `edge`: zero for `sign = 0`,
/// otherwise a single one at the lowest-order position where the two
/// encoded endpoints differ.
pub fn bob_b2(inst: &GameInstance, edge: Edge, sign: u8) -> BitString {
    if sign == 0 {
        return inst.output(0);
    }
    let diff = edge.lo() ^ edge.hi();
    inst.output(1u64 << diff.trailing_zeros())
}

/// One element of Bob's measurement basis.
struct BasisVector {
    edge: Edge,
    sign: u8,
    coeffs: Vec<Complex64>,
}

fn matching_basis(m: usize, y: &PerfectMatching) -> Vec<BasisVector> {
    y.edges()
        .iter()
        .flat_map(|&edge| {
            [0u8, 1].map(|sign| {
                let mut coeffs = vec![Complex64::new(0.0, 0.0); m];
                coeffs[edge.lo()] = Complex64::new(FRAC_1_SQRT_2, 0.0);
                coeffs[edge.hi()] = Complex64::new(if sign == 0 { FRAC_1_SQRT_2 } else { -FRAC_1_SQRT_2 }, 0.0);
                BasisVector { edge, sign, coeffs }
            })
        })
        .collect()
}

/// Exact distribution over `(a, edge, b2)` for one question.
#[derive(Clone, Debug, PartialEq)]
pub struct OutcomeDistribution {
    entries: BTreeMap<Answer, f64>,
}

impl OutcomeDistribution {
    /// All outcomes, including those of probability zero.
    pub fn entries(&self) -> &BTreeMap<Answer, f64> {
        &self.entries
    }

    pub fn probability(&self, ans: &Answer) -> f64 {
        self.entries.get(ans).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.entries.values().sum()
    }

    /// Outcomes with probability above [`SUPPORT_EPS`].
    pub fn support(&self) -> impl Iterator<Item = (&Answer, f64)> {
        self.entries
            .iter()
            .filter(|(_, &p)| p > SUPPORT_EPS)
            .map(|(a, &p)| (a, p))
    }

    pub fn edge_probability(&self, edge: &Edge) -> f64 {
        self.entries
            .iter()
            .filter(|(a, _)| a.edge == *edge)
            .map(|(_, p)| p)
            .sum()
    }

    /// Largest absolute difference over the union of outcomes.
    pub fn max_difference(&self, other: &OutcomeDistribution) -> f64 {
        self.entries
            .keys()
            .chain(other.entries.keys())
            .map(|k| (self.probability(k) - other.probability(k)).abs())
            .fold(0.0, f64::max)
    }
}

/// Which party measures first. The parties act on disjoint registers, so
/// both orders must give the same joint distribution.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MeasurementOrder {
    #[default]
    BobFirst,
    AliceFirst,
}

fn check_question(inst: &GameInstance, x: &BitString, y: &PerfectMatching) -> Result<()> {
    require_power_of_two(inst)?;
    inst.check_input(x)?;
    if y.m() != inst.m() {
        return Err(GameError::Shape(format!(
            "matching {y} is over {} vertices but m={}",
            y.m(),
            inst.m()
        )));
    }
    Ok(())
}

pub fn joint_distribution(inst: &GameInstance, x: &BitString, y: &PerfectMatching) -> Result<OutcomeDistribution> {
    joint_distribution_ordered(inst, x, y, MeasurementOrder::BobFirst)
}

pub fn joint_distribution_ordered(
    inst: &GameInstance,
    x: &BitString,
    y: &PerfectMatching,
    order: MeasurementOrder,
) -> Result<OutcomeDistribution> {
    check_question(inst, x, y)?;
    let m = inst.m();
    let mut state = shared_state(inst)?;
    state.apply_alice_phase(x);
    let basis = matching_basis(m, y);
    let mut entries = BTreeMap::new();

    match order {
        MeasurementOrder::BobFirst => {
            for v in &basis {
                // Alice's unnormalised state after Bob sees `v`.
                let mut alice: Vec<Complex64> = (0..m)
                    .map(|i| (0..m).map(|j| v.coeffs[j].conj() * state.amplitude(i, j)).sum())
                    .collect();
                let p_bob: f64 = alice.iter().map(Complex64::norm_sqr).sum();
                if p_bob > SUPPORT_EPS {
                    let scale = 1.0 / p_bob.sqrt();
                    alice.iter_mut().for_each(|c| *c *= scale);
                }
                walsh_hadamard(&mut alice);
                for (a, amp) in alice.iter().enumerate() {
                    let p = if p_bob > SUPPORT_EPS { p_bob * amp.norm_sqr() } else { 0.0 };
                    entries.insert(outcome(inst, a, v), p);
                }
            }
        }
        MeasurementOrder::AliceFirst => {
            state.apply_alice_hadamard();
            for a in 0..m {
                let mut bob: Vec<Complex64> = (0..m).map(|j| state.amplitude(a, j)).collect();
                let p_alice: f64 = bob.iter().map(Complex64::norm_sqr).sum();
                if p_alice > SUPPORT_EPS {
                    let scale = 1.0 / p_alice.sqrt();
                    bob.iter_mut().for_each(|c| *c *= scale);
                }
                for v in &basis {
                    let overlap: Complex64 = v.coeffs.iter().zip(&bob).map(|(c, b)| c.conj() * b).sum();
                    let p = if p_alice > SUPPORT_EPS { p_alice * overlap.norm_sqr() } else { 0.0 };
                    entries.insert(outcome(inst, a, v), p);
                }
            }
        }
    }
    Ok(OutcomeDistribution { entries })
}

fn outcome(inst: &GameInstance, a: usize, v: &BasisVector) -> Answer {
    Answer {
        edge: v.edge,
        a: inst.output(a as u64),
        b2: bob_b2(inst, v.edge, v.sign),
    }
}

/// Draws `rounds` independent answers from one seeded generator.
pub fn sample_rounds(
    inst: &GameInstance,
    x: &BitString,
    y: &PerfectMatching,
    seed: u64,
    rounds: usize,
) -> Result<Vec<Answer>> {
    let dist = joint_distribution(inst, x, y)?;
    let support: Vec<(Answer, f64)> = dist.support().map(|(a, p)| (*a, p)).collect();
    let total: f64 = support.iter().map(|(_, p)| p).sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..rounds)
        .map(|_| {
            let mut u = rng.gen::<f64>() * total;
            for (ans, p) in &support {
                if u < *p {
                    return *ans;
                }
                u -= p;
            }
            support.last().expect("non-empty support").0
        })
        .collect())
}

pub fn sample_round(inst: &GameInstance, x: &BitString, y: &PerfectMatching, seed: u64) -> Result<Answer> {
    Ok(sample_rounds(inst, x, y, seed, 1)?[0])
}

/// Outcome of checking every question exhaustively.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuantumReport {
    pub questions: u64,
    pub all_win: bool,
    /// Largest `|sum p - 1|` over questions.
    pub max_normalisation_error: f64,
    /// Largest elementwise gap between the two measurement orders.
    pub max_order_gap: f64,
}

pub fn verify_report(inst: &GameInstance) -> Result<QuantumReport> {
    require_power_of_two(inst)?;
    inst.require_table_size()?;
    let matchings = enumerate_matchings(inst)?;
    let per_x: Vec<(bool, f64, f64)> = (0..inst.input_count())
        .into_par_iter()
        .map(|xv| {
            let x = inst.input(xv);
            matchings.iter().fold((true, 0.0f64, 0.0f64), |(ok, norm, gap), y| {
                let bob_first = joint_distribution(inst, &x, y).expect("validated question");
                let alice_first = joint_distribution_ordered(inst, &x, y, MeasurementOrder::AliceFirst)
                    .expect("validated question");
                let wins = bob_first.support().all(|(ans, _)| {
                    y.contains_edge(&ans.edge) && round_holds(inst, xv, ans.edge, ans.a.value() ^ ans.b2.value())
                });
                (
                    ok && wins,
                    norm.max((bob_first.total() - 1.0).abs()),
                    gap.max(bob_first.max_difference(&alice_first)),
                )
            })
        })
        .collect();
    Ok(QuantumReport {
        questions: inst.input_count() * matchings.len() as u64,
        all_win: per_x.iter().all(|r| r.0),
        max_normalisation_error: per_x.iter().map(|r| r.1).fold(0.0, f64::max),
        max_order_gap: per_x.iter().map(|r| r.2).fold(0.0, f64::max),
    })
}

/// True iff every outcome of positive probability wins, on every question.
pub fn verify_always_wins(inst: &GameInstance) -> Result<bool> {
    Ok(verify_report(inst)?.all_win)
}
