//! Ulam's liar game on Spencer's state space.
//!
//! Chips `0..m` stand for the candidate symbols. A chip sits in bin `i` once
//! `i` answers have gone against it; a chip pushed past bin `t` is lost. A
//! position is scored by its Spencer weight, the number of answer sequences
//! with at most `t` lies still compatible with some surviving chip.

mod strategy;
mod trace;

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::combinatorics::{sphere_volume, ExactInt};
use crate::error::{Error, Result};

pub use strategy::{
    run_game, Answerer, BalancedQuestioner, MaxWeightAdversary, Questioner, ScriptedAnswerer,
    ScriptedQuestioner, DEFAULT_EXHAUSTIVE_CAP,
};
pub use trace::{parse_script, GameTrace, Outcome, ScriptLine, TraceStep, TRACE_VERSION};

/// The `(m, t, n)` game: `m` symbols, at most `t` lies, `n` questions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GameParams {
    pub m: usize,
    pub t: usize,
    pub n: usize,
}

impl GameParams {
    pub fn new(m: usize, t: usize, n: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParams(
                "the game needs at least one symbol".into(),
            ));
        }
        Ok(GameParams { m, t, n })
    }
}

/// A subset of the chips `0..m`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ChipSet(FixedBitSet);

impl ChipSet {
    pub fn empty(m: usize) -> Self {
        ChipSet(FixedBitSet::with_capacity(m))
    }

    pub fn full(m: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(m);
        bits.insert_range(..);
        ChipSet(bits)
    }

    pub fn from_chips<I: IntoIterator<Item = usize>>(m: usize, chips: I) -> Result<Self> {
        let mut set = ChipSet::empty(m);
        for chip in chips {
            if chip >= m {
                return Err(Error::ChipOutOfRange { chip, m });
            }
            set.0.insert(chip);
        }
        Ok(set)
    }

    /// Size of the chip universe this set lives in.
    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn contains(&self, chip: usize) -> bool {
        self.0.contains(chip)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn union(&self, other: &ChipSet) -> ChipSet {
        ChipSet(&self.0 | &other.0)
    }

    pub fn intersection(&self, other: &ChipSet) -> ChipSet {
        ChipSet(&self.0 & &other.0)
    }

    pub fn difference(&self, other: &ChipSet) -> ChipSet {
        let mut bits = self.0.clone();
        bits.difference_with(&other.0);
        ChipSet(bits)
    }

    pub fn is_disjoint(&self, other: &ChipSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub(crate) fn insert(&mut self, chip: usize) {
        self.0.insert(chip);
    }
}

/// Comma-separated chip indices, or `-` when empty.
impl fmt::Display for ChipSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("-");
        }
        for (k, chip) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{chip}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    pub fn symbol(self) -> char {
        match self {
            Answer::Yes => 'Y',
            Answer::No => 'N',
        }
    }
}

/// "Is the selected symbol in this set?"
///
/// Chips that are already lost may appear in a question; they are ignored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Question {
    chips: ChipSet,
}

impl Question {
    pub fn new<I: IntoIterator<Item = usize>>(m: usize, chips: I) -> Result<Self> {
        Ok(Question {
            chips: ChipSet::from_chips(m, chips)?,
        })
    }

    pub fn from_set(chips: ChipSet) -> Self {
        Question { chips }
    }

    pub fn chips(&self) -> &ChipSet {
        &self.chips
    }

    /// `U_i = V_i ∩ A` for every bin of `state`.
    pub fn partition(&self, state: &SpencerState) -> Vec<ChipSet> {
        state
            .bins
            .iter()
            .map(|bin| bin.intersection(&self.chips))
            .collect()
    }
}

/// Bins `V_0..V_t`, the lost chips and the number of answers received.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SpencerState {
    params: GameParams,
    bins: Vec<ChipSet>,
    lost: ChipSet,
    step: usize,
}

impl SpencerState {
    /// Every chip in bin 0, nothing lost, no answers yet.
    pub fn initial(params: GameParams) -> Self {
        let mut bins = vec![ChipSet::empty(params.m); params.t + 1];
        bins[0] = ChipSet::full(params.m);
        SpencerState {
            params,
            bins,
            lost: ChipSet::empty(params.m),
            step: 0,
        }
    }

    /// Builds a state from explicit bins. Chips not in any bin count as lost.
    pub fn from_bins(params: GameParams, bins: Vec<ChipSet>, step: usize) -> Result<Self> {
        if bins.len() != params.t + 1 {
            return Err(Error::InvalidParams(format!(
                "expected {} bins, got {}",
                params.t + 1,
                bins.len()
            )));
        }
        if step > params.n {
            return Err(Error::BudgetExhausted { step, n: params.n });
        }
        let mut seen = ChipSet::empty(params.m);
        for bin in &bins {
            if bin.universe() != params.m {
                return Err(Error::InvalidParams("bin universe does not match m".into()));
            }
            if !seen.is_disjoint(bin) {
                return Err(Error::InvalidParams("bins overlap".into()));
            }
            seen = seen.union(bin);
        }
        let lost = ChipSet::full(params.m).difference(&seen);
        Ok(SpencerState {
            params,
            bins,
            lost,
            step,
        })
    }

    pub fn params(&self) -> GameParams {
        self.params
    }

    pub fn bins(&self) -> &[ChipSet] {
        &self.bins
    }

    pub fn lost(&self) -> &ChipSet {
        &self.lost
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn questions_left(&self) -> usize {
        self.params.n - self.step
    }

    pub fn bin_counts(&self) -> Vec<usize> {
        self.bins.iter().map(ChipSet::len).collect()
    }

    pub fn survivors(&self) -> ChipSet {
        self.bins
            .iter()
            .fold(ChipSet::empty(self.params.m), |acc, bin| acc.union(bin))
    }

    pub fn survivor_count(&self) -> usize {
        self.bins.iter().map(ChipSet::len).sum()
    }

    pub fn is_conclusive(&self) -> bool {
        self.survivor_count() == 1
    }

    /// Spencer weight with the game's own horizon `n`.
    pub fn weight(&self) -> ExactInt {
        spencer_weight(self, self.params.n)
    }

    /// Applies one answer to `q`.
    ///
    /// `No` moves every asked chip one bin right; `Yes` moves every surviving
    /// chip outside the question one bin right. Chips leaving bin `t` are lost.
    pub fn apply(&self, q: &Question, answer: Answer) -> Result<SpencerState> {
        self.check_question(q)?;
        let t = self.params.t;
        let mut bins = Vec::with_capacity(t + 1);
        let mut shifted = ChipSet::empty(self.params.m);
        for bin in &self.bins {
            let asked = bin.intersection(&q.chips);
            let (stay, moved) = match answer {
                Answer::Yes => (asked.clone(), bin.difference(&asked)),
                Answer::No => (bin.difference(&asked), asked),
            };
            bins.push(stay.union(&shifted));
            shifted = moved;
        }
        Ok(SpencerState {
            params: self.params,
            bins,
            lost: self.lost.union(&shifted),
            step: self.step + 1,
        })
    }

    /// Weights of the `Yes` and `No` children of `q`. They always sum to the
    /// weight of `self`.
    pub fn weight_split(&self, q: &Question) -> Result<(ExactInt, ExactInt)> {
        self.check_question(q)?;
        let asked: Vec<usize> = q.partition(self).iter().map(ChipSet::len).collect();
        Ok(child_weights(
            &self.bin_counts(),
            &asked,
            &self.child_volumes(),
        ))
    }

    /// `V(n - j - 1, t - i)` for each bin `i`, with a trailing zero for the
    /// lost position.
    pub(crate) fn child_volumes(&self) -> Vec<ExactInt> {
        let horizon = (self.params.n - self.step - 1) as u64;
        let t = self.params.t;
        (0..=t)
            .map(|i| sphere_volume(horizon, (t - i) as u64))
            .chain(std::iter::once(ExactInt::from(0)))
            .collect()
    }

    fn check_question(&self, q: &Question) -> Result<()> {
        if self.step >= self.params.n {
            return Err(Error::BudgetExhausted {
                step: self.step,
                n: self.params.n,
            });
        }
        if q.chips.universe() != self.params.m {
            let chip = q
                .chips
                .iter()
                .find(|&c| c >= self.params.m)
                .unwrap_or(q.chips.universe());
            return Err(Error::ChipOutOfRange {
                chip,
                m: self.params.m,
            });
        }
        Ok(())
    }
}

/// `W(v_j) = sum_i |V_i| * V(n - j, t - i)`.
///
/// Panics if `n` is below the state's step.
pub fn spencer_weight(state: &SpencerState, n: usize) -> ExactInt {
    assert!(state.step <= n, "weight horizon precedes the current step");
    let horizon = (n - state.step) as u64;
    let t = state.params.t;
    state
        .bins
        .iter()
        .enumerate()
        .filter(|(_, bin)| !bin.is_empty())
        .map(|(i, bin)| ExactInt::from(bin.len()) * sphere_volume(horizon, (t - i) as u64))
        .sum()
}

/// Child weights from bin counts alone. `asked[i]` chips of bin `i` are in the
/// question; `volumes` comes from [`SpencerState::child_volumes`].
pub(crate) fn child_weights(
    counts: &[usize],
    asked: &[usize],
    volumes: &[ExactInt],
) -> (ExactInt, ExactInt) {
    let mut yes = ExactInt::from(0);
    let mut no = ExactInt::from(0);
    for (i, (&c, &a)) in counts.iter().zip(asked).enumerate() {
        let rest = c - a;
        yes += &volumes[i] * a + &volumes[i + 1] * rest;
        no += &volumes[i] * rest + &volumes[i + 1] * a;
    }
    (yes, no)
}
