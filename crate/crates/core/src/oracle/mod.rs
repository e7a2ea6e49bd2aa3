//! Desk-scale ground truth: exhaustive binary-code search and exact solution
//! of small liar games. Neither routine uses the Spencer weight.

mod codes;
mod minimax;

pub use codes::{
    code_exists, code_exists_with, max_code, max_code_size, max_code_with, validate_code,
    BinaryCode, MaxCode, SearchCertificate, Verdict,
};
pub use minimax::{minimax_game, minimax_game_with, minimax_min_questions, Winner};

use crate::error::{Error, Result};
use crate::game::GameParams;

/// Size limits for the exhaustive searches. Exceeding one is an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    pub max_code_length: u32,
    pub max_minimax_m: usize,
    pub max_minimax_t: usize,
    pub max_minimax_n: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            max_code_length: 14,
            max_minimax_m: 6,
            max_minimax_t: 2,
            max_minimax_n: 10,
        }
    }
}

impl OracleCaps {
    fn check_minimax(&self, p: GameParams) -> Result<()> {
        let limits = [
            ("symbols m", p.m, self.max_minimax_m),
            ("lies t", p.t, self.max_minimax_t),
            ("questions n", p.n, self.max_minimax_n),
        ];
        for (what, value, cap) in limits {
            if value > cap {
                return Err(Error::CapExceeded {
                    what,
                    value: value as u64,
                    cap: cap as u64,
                });
            }
        }
        Ok(())
    }
}
