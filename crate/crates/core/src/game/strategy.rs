use num_traits::Zero;

use super::trace::{GameTrace, TraceStep};
use super::{child_weights, Answer, ChipSet, GameParams, Question, SpencerState};
use crate::combinatorics::ExactInt;
use crate::error::{Error, Result};

/// Number of surviving chips up to which [`BalancedQuestioner`] searches
/// every question exhaustively.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 20;

/// Chooses the next question. Returning `None` ends the game early.
pub trait Questioner {
    fn ask(&mut self, state: &SpencerState) -> Option<Question>;

    /// Whether the last question came from a heuristic rather than an exact
    /// optimisation.
    fn last_was_heuristic(&self) -> bool {
        false
    }

    /// Fixed number of questions, for scripted players.
    fn script_len(&self) -> Option<usize> {
        None
    }
}

/// Answers a question. Returning `None` ends the game early.
pub trait Answerer {
    fn answer(&mut self, state: &SpencerState, q: &Question) -> Option<Answer>;

    fn script_len(&self) -> Option<usize> {
        None
    }
}

/// Minimises the heavier child weight.
///
/// Weights only depend on how many chips of each bin are asked, so the exact
/// search runs over per-bin counts `(a_0, .., a_t)` and realises the winner
/// with the lowest-indexed chips of each bin. With more than `exhaustive_cap`
/// survivors it switches to a greedy split.
#[derive(Debug, Clone)]
pub struct BalancedQuestioner {
    exhaustive_cap: usize,
    last_heuristic: bool,
}

impl Default for BalancedQuestioner {
    fn default() -> Self {
        Self::new(DEFAULT_EXHAUSTIVE_CAP)
    }
}

impl BalancedQuestioner {
    pub fn new(exhaustive_cap: usize) -> Self {
        BalancedQuestioner {
            exhaustive_cap,
            last_heuristic: false,
        }
    }

    /// Best question for `state` and whether it came from the greedy path.
    /// `state` must have a question left.
    pub fn choose(&self, state: &SpencerState) -> (Question, bool) {
        let counts = state.bin_counts();
        let volumes = state.child_volumes();
        if state.survivor_count() <= self.exhaustive_cap {
            let asked = exact_profile(&counts, &volumes);
            (realise(state, &asked), false)
        } else {
            (greedy(state, &volumes), true)
        }
    }
}

impl Questioner for BalancedQuestioner {
    fn ask(&mut self, state: &SpencerState) -> Option<Question> {
        if state.questions_left() == 0 {
            return None;
        }
        let (q, heuristic) = self.choose(state);
        self.last_heuristic = heuristic;
        Some(q)
    }

    fn last_was_heuristic(&self) -> bool {
        self.last_heuristic
    }
}

/// Lexicographically first count profile minimising `max(w_yes, w_no)`.
fn exact_profile(counts: &[usize], volumes: &[ExactInt]) -> Vec<usize> {
    let mut asked = vec![0; counts.len()];
    let mut best: Option<(ExactInt, Vec<usize>)> = None;
    loop {
        let (y, n) = child_weights(counts, &asked, volumes);
        let worst = y.max(n);
        if best.as_ref().is_none_or(|(b, _)| worst < *b) {
            best = Some((worst, asked.clone()));
        }
        // odometer, last bin fastest
        let mut i = counts.len();
        loop {
            if i == 0 {
                return best.map(|(_, a)| a).unwrap_or_default();
            }
            i -= 1;
            if asked[i] < counts[i] {
                asked[i] += 1;
                break;
            }
            asked[i] = 0;
        }
    }
}

fn realise(state: &SpencerState, asked: &[usize]) -> Question {
    let mut chips = ChipSet::empty(state.params().m);
    for (bin, &a) in state.bins().iter().zip(asked) {
        for chip in bin.iter().take(a) {
            chips.insert(chip);
        }
    }
    Question::from_set(chips)
}

/// Places chips heaviest bin first on whichever side keeps the larger child
/// lighter; ties go outside the question.
fn greedy(state: &SpencerState, volumes: &[ExactInt]) -> Question {
    let mut chips = ChipSet::empty(state.params().m);
    let mut yes = ExactInt::zero();
    let mut no = ExactInt::zero();
    for (i, bin) in state.bins().iter().enumerate() {
        let stay = &volumes[i];
        let shift = &volumes[i + 1];
        for chip in bin.iter() {
            let inside = (&yes + stay).max(&no + shift);
            let outside = (&yes + shift).max(&no + stay);
            if inside < outside {
                yes += stay;
                no += shift;
                chips.insert(chip);
            } else {
                yes += shift;
                no += stay;
            }
        }
    }
    Question::from_set(chips)
}

/// Answers so that the heavier child results; ties answer `No`.
#[derive(Debug, Clone, Copy, Default)]
pub struct MaxWeightAdversary;

impl MaxWeightAdversary {
    pub fn pick(state: &SpencerState, q: &Question) -> Result<Answer> {
        let (yes, no) = state.weight_split(q)?;
        Ok(if yes > no { Answer::Yes } else { Answer::No })
    }
}

impl Answerer for MaxWeightAdversary {
    fn answer(&mut self, state: &SpencerState, q: &Question) -> Option<Answer> {
        Self::pick(state, q).ok()
    }
}

#[derive(Debug, Clone)]
pub struct ScriptedQuestioner {
    questions: Vec<Question>,
    next: usize,
}

impl ScriptedQuestioner {
    pub fn new(questions: Vec<Question>) -> Self {
        ScriptedQuestioner { questions, next: 0 }
    }
}

impl Questioner for ScriptedQuestioner {
    fn ask(&mut self, _state: &SpencerState) -> Option<Question> {
        let q = self.questions.get(self.next).cloned();
        self.next += 1;
        q
    }

    fn script_len(&self) -> Option<usize> {
        Some(self.questions.len())
    }
}

#[derive(Debug, Clone)]
pub struct ScriptedAnswerer {
    answers: Vec<Answer>,
    next: usize,
}

impl ScriptedAnswerer {
    pub fn new(answers: Vec<Answer>) -> Self {
        ScriptedAnswerer { answers, next: 0 }
    }
}

impl Answerer for ScriptedAnswerer {
    fn answer(&mut self, _state: &SpencerState, _q: &Question) -> Option<Answer> {
        let a = self.answers.get(self.next).copied();
        self.next += 1;
        a
    }

    fn script_len(&self) -> Option<usize> {
        Some(self.answers.len())
    }
}

/// Plays until the question budget runs out or either side stops.
pub fn run_game(
    params: GameParams,
    questioner: &mut dyn Questioner,
    answerer: &mut dyn Answerer,
) -> Result<GameTrace> {
    for len in [questioner.script_len(), answerer.script_len()]
        .into_iter()
        .flatten()
    {
        if len > params.n {
            return Err(Error::ScriptTooLong { len, n: params.n });
        }
    }
    let initial = SpencerState::initial(params);
    let mut state = initial.clone();
    let mut steps = Vec::new();
    while state.questions_left() > 0 {
        let Some(question) = questioner.ask(&state) else {
            break;
        };
        let heuristic = questioner.last_was_heuristic();
        let Some(answer) = answerer.answer(&state, &question) else {
            break;
        };
        state = state.apply(&question, answer)?;
        steps.push(TraceStep {
            weight: state.weight(),
            question,
            answer,
            state: state.clone(),
            heuristic,
        });
    }
    Ok(GameTrace::new(initial, steps))
}
