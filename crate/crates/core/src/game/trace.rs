//! Game traces and question scripts, plus their line-oriented text formats.
//!
//! Trace format, version 1:
//!
//! ```text
//! # liarbound trace v1
//! params m=3 t=1 n=5
//! step=0 bins=0,1,2|- lost=- weight=18
//! step=1 A=0,1 answer=Y bins=0,1|2 lost=- weight=11
//! ...
//! outcome=conclusive chip=0
//! ```
//!
//! Chip lists are comma-separated indices, `-` when empty; bins are joined
//! by `|`. Steps produced by a heuristic questioner carry a trailing
//! `heuristic=1`. The final line is `outcome=conclusive chip=<c>` or
//! `outcome=inconclusive survivors=<list>`.
//!
//! Script format: one question per line, `A=<chips> [answer=<Y|N>]`. Blank
//! lines and lines starting with `#` are skipped.

use std::fmt;

use super::{Answer, ChipSet, GameParams, Question, SpencerState};
use crate::combinatorics::ExactInt;
use crate::error::{Error, Result};

pub const TRACE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// Exactly one chip survives.
    Conclusive(usize),
    /// Zero or several chips survive.
    Inconclusive(ChipSet),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub question: Question,
    pub answer: Answer,
    /// Position after the answer.
    pub state: SpencerState,
    /// Spencer weight of `state`.
    pub weight: ExactInt,
    pub heuristic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameTrace {
    initial: SpencerState,
    steps: Vec<TraceStep>,
    outcome: Outcome,
}

impl GameTrace {
    pub(crate) fn new(initial: SpencerState, steps: Vec<TraceStep>) -> Self {
        let last = steps.last().map_or(&initial, |s| &s.state);
        let survivors = last.survivors();
        let outcome = if survivors.len() == 1 {
            Outcome::Conclusive(survivors.iter().next().unwrap())
        } else {
            Outcome::Inconclusive(survivors)
        };
        GameTrace {
            initial,
            steps,
            outcome,
        }
    }

    pub fn params(&self) -> GameParams {
        self.initial.params()
    }

    pub fn initial(&self) -> &SpencerState {
        &self.initial
    }

    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    pub fn final_state(&self) -> &SpencerState {
        self.steps.last().map_or(&self.initial, |s| &s.state)
    }

    pub fn outcome(&self) -> &Outcome {
        &self.outcome
    }

    pub fn is_conclusive(&self) -> bool {
        matches!(self.outcome, Outcome::Conclusive(_))
    }

    /// Any step chosen by the greedy fallback.
    pub fn used_heuristic(&self) -> bool {
        self.steps.iter().any(|s| s.heuristic)
    }

    /// Parses a version-1 trace, replaying every step and rejecting the text
    /// if a recorded position or weight disagrees with the replay.
    pub fn parse(text: &str) -> Result<GameTrace> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());

        let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "empty trace"))?;
        if header != format!("# liarbound trace v{TRACE_VERSION}") {
            return Err(Error::parse(ln, format!("unsupported header {header:?}")));
        }
        let (ln, params_line) = lines
            .next()
            .ok_or_else(|| Error::parse(ln, "missing params"))?;
        let fields = Fields::parse(ln, params_line.strip_prefix("params ").unwrap_or(""))?;
        let params = GameParams::new(
            fields.num(ln, "m")?,
            fields.num(ln, "t")?,
            fields.num(ln, "n")?,
        )
        .map_err(|e| Error::parse(ln, e.to_string()))?;

        let initial = SpencerState::initial(params);
        let mut state = initial.clone();
        let mut steps = Vec::new();
        let mut outcome_line = None;
        let mut seen_initial = false;
        for (ln, line) in lines {
            if outcome_line.is_some() {
                return Err(Error::parse(ln, "content after outcome line"));
            }
            if line.starts_with("outcome=") {
                outcome_line = Some((ln, line));
                continue;
            }
            let f = Fields::parse(ln, line)?;
            let step: usize = f.num(ln, "step")?;
            let expected = if seen_initial { state.step() + 1 } else { 0 };
            if step != expected {
                return Err(Error::parse(
                    ln,
                    format!("expected step {expected}, got {step}"),
                ));
            }
            seen_initial = true;
            if step > 0 {
                let chips = parse_chips(ln, f.get(ln, "A")?)?;
                let question =
                    Question::new(params.m, chips).map_err(|e| Error::parse(ln, e.to_string()))?;
                let answer = parse_answer(ln, f.get(ln, "answer")?)?;
                state = state
                    .apply(&question, answer)
                    .map_err(|e| Error::parse(ln, e.to_string()))?;
                steps.push(TraceStep {
                    question,
                    answer,
                    state: state.clone(),
                    weight: state.weight(),
                    heuristic: f.get(ln, "heuristic").is_ok_and(|v| v == "1"),
                });
            }
            if f.get(ln, "bins")? != format_bins(&state) {
                return Err(Error::parse(ln, "recorded bins disagree with replay"));
            }
            if f.get(ln, "lost")? != state.lost().to_string() {
                return Err(Error::parse(ln, "recorded lost set disagrees with replay"));
            }
            if f.get(ln, "weight")? != state.weight().to_string() {
                return Err(Error::parse(ln, "recorded weight disagrees with replay"));
            }
        }
        let trace = GameTrace::new(initial, steps);
        let (ln, line) = outcome_line.ok_or_else(|| Error::parse(0, "missing outcome line"))?;
        if line != format_outcome(&trace.outcome) {
            return Err(Error::parse(ln, "recorded outcome disagrees with replay"));
        }
        Ok(trace)
    }
}

fn format_bins(state: &SpencerState) -> String {
    state
        .bins()
        .iter()
        .map(ChipSet::to_string)
        .collect::<Vec<_>>()
        .join("|")
}

fn format_outcome(outcome: &Outcome) -> String {
    match outcome {
        Outcome::Conclusive(c) => format!("outcome=conclusive chip={c}"),
        Outcome::Inconclusive(s) => format!("outcome=inconclusive survivors={s}"),
    }
}

impl fmt::Display for GameTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.params();
        writeln!(f, "# liarbound trace v{TRACE_VERSION}")?;
        writeln!(f, "params m={} t={} n={}", p.m, p.t, p.n)?;
        writeln!(
            f,
            "step=0 bins={} lost={} weight={}",
            format_bins(&self.initial),
            self.initial.lost(),
            self.initial.weight()
        )?;
        for s in &self.steps {
            write!(
                f,
                "step={} A={} answer={} bins={} lost={} weight={}",
                s.state.step(),
                s.question.chips(),
                s.answer.symbol(),
                format_bins(&s.state),
                s.state.lost(),
                s.weight
            )?;
            if s.heuristic {
                f.write_str(" heuristic=1")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "{}", format_outcome(&self.outcome))
    }
}

/// One line of a question script.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptLine {
    pub chips: Vec<usize>,
    pub answer: Option<Answer>,
}

pub fn parse_script(text: &str) -> Result<Vec<ScriptLine>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f = Fields::parse(ln, line)?;
        if let Some(key) =
            f.0.iter()
                .map(|(k, _)| *k)
                .find(|k| *k != "A" && *k != "answer")
        {
            return Err(Error::parse(ln, format!("unknown key {key:?}")));
        }
        let chips = parse_chips(ln, f.get(ln, "A")?)?;
        let answer = match f.get(ln, "answer") {
            Ok(a) => Some(parse_answer(ln, a)?),
            Err(_) => None,
        };
        out.push(ScriptLine { chips, answer });
    }
    Ok(out)
}

/// Whitespace-separated `key=value` pairs.
struct Fields<'a>(Vec<(&'a str, &'a str)>);

impl<'a> Fields<'a> {
    fn parse(ln: usize, line: &'a str) -> Result<Self> {
        line.split_whitespace()
            .map(|tok| {
                tok.split_once('=')
                    .ok_or_else(|| Error::parse(ln, format!("expected key=value, got {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Fields)
    }

    fn get(&self, ln: usize, key: &str) -> Result<&'a str> {
        self.0
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| Error::parse(ln, format!("missing {key}=")))
    }

    fn num(&self, ln: usize, key: &str) -> Result<usize> {
        let v = self.get(ln, key)?;
        v.parse()
            .map_err(|_| Error::parse(ln, format!("{key}={v:?} is not a non-negative integer")))
    }
}

fn parse_chips(ln: usize, v: &str) -> Result<Vec<usize>> {
    if v.is_empty() || v == "-" {
        return Ok(Vec::new());
    }
    v.split(',')
        .map(|c| {
            c.parse()
                .map_err(|_| Error::parse(ln, format!("bad chip index {c:?}")))
        })
        .collect()
}

fn parse_answer(ln: usize, v: &str) -> Result<Answer> {
    match v {
        "Y" | "y" => Ok(Answer::Yes),
        "N" | "n" => Ok(Answer::No),
        _ => Err(Error::parse(
            ln,
            format!("answer must be Y or N, got {v:?}"),
        )),
    }
}
