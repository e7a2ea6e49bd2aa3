use std::collections::HashMap;

use super::OracleCaps;
use crate::error::Result;
use crate::game::GameParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Winner {
    /// The answerer keeps two candidates alive to the end.
    Player1,
    /// The questioner can always pin down the symbol.
    Player2,
}

/// Exact solution of the adaptive `(m, t, n)` liar game by game-tree search.
///
/// Chips are interchangeable, so a position is the vector of bin sizes plus
/// the number of questions left, and a question is the number of chips asked
/// from each bin. The answerer must stay consistent with at least one symbol
/// and `t` lies, so it may only move to positions that keep a chip alive.
/// This search shares no code with the weight-based game engine.
pub fn minimax_game(params: GameParams) -> Result<Winner> {
    minimax_game_with(&OracleCaps::default(), params)
}

pub fn minimax_game_with(caps: &OracleCaps, params: GameParams) -> Result<Winner> {
    caps.check_minimax(params)?;
    let mut solver = Solver::default();
    let mut start = vec![0; params.t + 1];
    start[0] = params.m;
    Ok(if solver.questioner_wins(&start, params.n) {
        Winner::Player2
    } else {
        Winner::Player1
    })
}

/// Fewest questions that let the questioner win, searched up to the `n` cap.
pub fn minimax_min_questions(caps: &OracleCaps, m: usize, t: usize) -> Result<Option<usize>> {
    let mut solver = Solver::default();
    let mut start = vec![0; t + 1];
    start[0] = m;
    for n in 0..=caps.max_minimax_n {
        caps.check_minimax(GameParams::new(m, t, n)?)?;
        if solver.questioner_wins(&start, n) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

#[derive(Default)]
struct Solver {
    memo: HashMap<(Vec<usize>, usize), bool>,
}

impl Solver {
    fn questioner_wins(&mut self, bins: &[usize], left: usize) -> bool {
        let alive: usize = bins.iter().sum();
        if alive <= 1 {
            return true;
        }
        if left == 0 {
            return false;
        }
        let key = (bins.to_vec(), left);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let mut asked = vec![0; bins.len()];
        let wins = loop {
            let (yes, no) = answers(bins, &asked);
            let holds = |s: &mut Self, child: &[usize]| {
                child.iter().sum::<usize>() == 0 || s.questioner_wins(child, left - 1)
            };
            if holds(self, &yes) && holds(self, &no) {
                break true;
            }
            if !advance(&mut asked, bins) {
                break false;
            }
        };
        self.memo.insert(key, wins);
        wins
    }
}

/// Bin sizes after `Yes` and after `No` when `asked[i]` chips of bin `i` are
/// in the question. A chip moves right when the answer goes against it.
fn answers(bins: &[usize], asked: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let t1 = bins.len();
    let mut yes = vec![0; t1];
    let mut no = vec![0; t1];
    for i in 0..t1 {
        let out = bins[i] - asked[i];
        yes[i] += asked[i];
        no[i] += out;
        if i + 1 < t1 {
            yes[i + 1] += out;
            no[i + 1] += asked[i];
        }
    }
    (yes, no)
}

fn advance(asked: &mut [usize], bins: &[usize]) -> bool {
    for i in 0..asked.len() {
        if asked[i] < bins[i] {
            asked[i] += 1;
            return true;
        }
        asked[i] = 0;
    }
    false
}
