use std::fmt;

use fixedbitset::FixedBitSet;

use super::OracleCaps;
use crate::error::{Error, Result};

/// Distinct `n`-bit words. Bit strings are written most significant bit
/// first, so numeric order and string order agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryCode {
    n: u32,
    words: Vec<u64>,
}

impl BinaryCode {
    /// Checks that every word fits in `n <= 64` bits. Duplicates are accepted
    /// here and reported by [`validate_code`].
    pub fn new(n: u32, words: Vec<u64>) -> Result<Self> {
        if n > 64 {
            return Err(Error::InvalidParams(format!(
                "code length {n} exceeds 64 bits"
            )));
        }
        if let Some(&word) = words.iter().find(|&&w| n < 64 && w >> n != 0) {
            return Err(Error::CodewordTooWide { word, n });
        }
        Ok(BinaryCode { n, words })
    }

    /// Parses words such as `"11100"`; all strings must share one length.
    /// `-` is the zero-length word.
    pub fn from_bit_strings<S: AsRef<str>>(strings: &[S]) -> Result<Self> {
        fn strip(s: &str) -> &str {
            if s == "-" {
                ""
            } else {
                s
            }
        }
        let n = strings.first().map_or(0, |s| strip(s.as_ref()).len());
        let mut words = Vec::with_capacity(strings.len());
        for s in strings {
            let s = strip(s.as_ref());
            if s.is_empty() && n == 0 {
                words.push(0);
                continue;
            }
            if s.len() != n || n > 64 {
                return Err(Error::InvalidParams(format!(
                    "codeword {s:?} must have length {n} <= 64"
                )));
            }
            let word = u64::from_str_radix(s, 2)
                .map_err(|_| Error::InvalidParams(format!("codeword {s:?} is not a bit string")))?;
            words.push(word);
        }
        Self::new(n as u32, words)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Smallest pairwise Hamming distance; `None` with fewer than two words.
    pub fn min_distance(&self) -> Option<u32> {
        let w = &self.words;
        (0..w.len())
            .flat_map(|i| (i + 1..w.len()).map(move |j| (w[i] ^ w[j]).count_ones()))
            .min()
    }

    /// XOR every word with `offset`.
    pub fn translate(&self, offset: u64) -> BinaryCode {
        let mask = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        BinaryCode {
            n: self.n,
            words: self.words.iter().map(|w| (w ^ offset) & mask).collect(),
        }
    }

    /// `-` stands for the zero-length word.
    pub fn bit_string(&self, word: u64) -> String {
        if self.n == 0 {
            return "-".into();
        }
        format!("{word:0width$b}", width = self.n as usize)
    }
}

/// True iff every pair of words is at distance at least `2t + 1`.
pub fn validate_code(code: &BinaryCode, t: u64) -> Result<bool> {
    let mut sorted = code.words.clone();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateCodeword(w[0]));
    }
    let need = 2 * t + 1;
    Ok(code.min_distance().is_none_or(|d| u64::from(d) >= need))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Exists(BinaryCode),
    /// The search space was covered without finding a code.
    Exhausted,
}

/// Outcome of one exhaustive code search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchCertificate {
    pub n: u32,
    pub m: u64,
    pub d: u32,
    pub verdict: Verdict,
    pub nodes_explored: u64,
}

impl SearchCertificate {
    pub fn exists(&self) -> bool {
        matches!(self.verdict, Verdict::Exists(_))
    }

    pub fn witness(&self) -> Option<&BinaryCode> {
        match &self.verdict {
            Verdict::Exists(c) => Some(c),
            Verdict::Exhausted => None,
        }
    }

    /// Reads the format produced by `Display`. A witness is revalidated
    /// against the query.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, query) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty certificate"))?;
        let query = query
            .strip_prefix("query ")
            .ok_or_else(|| Error::parse(ln, "expected query line"))?;
        let (mut n, mut m, mut d) = (None, None, None);
        for tok in query.split_whitespace() {
            match tok.split_once('=') {
                Some(("n", v)) => n = v.parse().ok(),
                Some(("m", v)) => m = v.parse().ok(),
                Some(("d", v)) => d = v.parse().ok(),
                _ => return Err(Error::parse(ln, format!("unexpected token {tok:?}"))),
            }
        }
        let (Some(n), Some(m), Some(d)) = (n, m, d) else {
            return Err(Error::parse(ln, "query needs n=, m= and d="));
        };

        let (ln, verdict) = lines
            .next()
            .ok_or_else(|| Error::parse(ln, "missing verdict"))?;
        let mut kind = None;
        let mut nodes = None;
        for tok in verdict.split_whitespace() {
            match tok.split_once('=') {
                Some(("verdict", v)) => kind = Some(v),
                Some(("nodes", v)) => nodes = v.parse().ok(),
                _ => return Err(Error::parse(ln, format!("unexpected token {tok:?}"))),
            }
        }
        let nodes_explored = nodes.ok_or_else(|| Error::parse(ln, "missing nodes="))?;
        let words: Vec<&str> = lines.map(|(_, l)| l).collect();
        let verdict = match kind {
            Some("exhausted") if words.is_empty() => Verdict::Exhausted,
            Some("exists") => {
                let code = if words.is_empty() {
                    BinaryCode::new(n, Vec::new())
                } else {
                    BinaryCode::from_bit_strings(&words)
                }
                .map_err(|e| Error::parse(ln, e.to_string()))?;
                let ok = code.n() == n
                    && code.len() as u64 == m
                    && code.min_distance().is_none_or(|md| md >= d);
                if !ok || validate_code(&code, 0).is_err() {
                    return Err(Error::parse(ln, "witness does not answer the query"));
                }
                Verdict::Exists(code)
            }
            _ => return Err(Error::parse(ln, "verdict must be exists or exhausted")),
        };
        Ok(SearchCertificate {
            n,
            m,
            d,
            verdict,
            nodes_explored,
        })
    }
}

impl fmt::Display for SearchCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "query n={} m={} d={}", self.n, self.m, self.d)?;
        match &self.verdict {
            Verdict::Exhausted => writeln!(f, "verdict=exhausted nodes={}", self.nodes_explored),
            Verdict::Exists(code) => {
                writeln!(f, "verdict=exists nodes={}", self.nodes_explored)?;
                for &w in code.words() {
                    writeln!(f, "{}", code.bit_string(w))?;
                }
                Ok(())
            }
        }
    }
}

/// Backtracking over codewords in increasing numeric order with the all-zero
/// word fixed first. Hamming distance is translation invariant, so any code
/// can be shifted to contain zero without loss.
///
/// Each node prunes with two upper bounds on how many more words fit: the
/// number of remaining candidates, and the number of classes in a greedy
/// partition of the candidates into sets of pairwise-close words (a code
/// takes at most one word per class).
struct Backtrack {
    d: u32,
    target: usize,
    nodes: u64,
    chosen: Vec<u64>,
}

impl Backtrack {
    fn run(n: u32, d: u32, target: usize) -> (Option<Vec<u64>>, u64) {
        let size = 1usize << n;
        if target > size {
            return (None, 0);
        }
        let mut search = Backtrack {
            d,
            target,
            nodes: 0,
            chosen: vec![0],
        };
        if target <= 1 {
            search.nodes = 1;
            return (Some(vec![0u64; target]), 1);
        }
        let mut cand = FixedBitSet::with_capacity(size);
        for w in 1..size {
            if (w as u64).count_ones() >= d {
                cand.insert(w);
            }
        }
        let found = search.extend(&cand);
        (found.then(|| search.chosen.clone()), search.nodes)
    }

    fn extend(&mut self, cand: &FixedBitSet) -> bool {
        self.nodes += 1;
        let need = self.target - self.chosen.len();
        if need == 0 {
            return true;
        }
        let list: Vec<usize> = cand.ones().collect();
        if list.len() < need || self.class_bound(&list) < need {
            return false;
        }
        for (k, &v) in list.iter().enumerate() {
            if list.len() - k < need {
                break;
            }
            let mut next = FixedBitSet::with_capacity(cand.len());
            for &u in &list[k + 1..] {
                if ((u ^ v) as u64).count_ones() >= self.d {
                    next.insert(u);
                }
            }
            self.chosen.push(v as u64);
            if self.extend(&next) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }

    /// Greedy partition of `list` into classes whose members are pairwise at
    /// distance < d. Stops once the count reaches `need`, where it can no
    /// longer prune.
    fn class_bound(&self, list: &[usize]) -> usize {
        let need = self.target - self.chosen.len();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in list {
            let slot = classes
                .iter_mut()
                .find(|c| c.iter().all(|&u| ((u ^ v) as u64).count_ones() < self.d));
            match slot {
                Some(c) => c.push(v),
                None => {
                    classes.push(vec![v]);
                    if classes.len() >= need {
                        return classes.len();
                    }
                }
            }
        }
        classes.len()
    }
}

/// Whether an `(n, m, d)` binary code exists, by exhaustive search.
pub fn code_exists(n: u32, m: u64, d: u32) -> Result<SearchCertificate> {
    code_exists_with(&OracleCaps::default(), n, m, d)
}

pub fn code_exists_with(caps: &OracleCaps, n: u32, m: u64, d: u32) -> Result<SearchCertificate> {
    if n > caps.max_code_length {
        return Err(Error::CapExceeded {
            what: "code length n",
            value: n.into(),
            cap: caps.max_code_length.into(),
        });
    }
    let target = usize::try_from(m).unwrap_or(usize::MAX);
    let (found, nodes_explored) = Backtrack::run(n, d, target);
    let verdict = match found {
        Some(words) => Verdict::Exists(BinaryCode::new(n, words)?),
        None => Verdict::Exhausted,
    };
    Ok(SearchCertificate {
        n,
        m,
        d,
        verdict,
        nodes_explored,
    })
}

/// Largest code of length `n` and minimum distance `d`, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxCode {
    pub size: u64,
    pub witness: BinaryCode,
    pub nodes_explored: u64,
}

/// Exact `A(n, d)`: a greedy lexicographic code gives a starting size, then
/// exhaustive searches raise it one word at a time until a search fails.
pub fn max_code(n: u32, d: u32) -> Result<MaxCode> {
    max_code_with(&OracleCaps::default(), n, d)
}

pub fn max_code_with(caps: &OracleCaps, n: u32, d: u32) -> Result<MaxCode> {
    if n > caps.max_code_length {
        return Err(Error::CapExceeded {
            what: "code length n",
            value: n.into(),
            cap: caps.max_code_length.into(),
        });
    }
    let mut best: Vec<u64> = Vec::new();
    for w in 0..1u64 << n {
        if best.iter().all(|&b| (b ^ w).count_ones() >= d) {
            best.push(w);
        }
    }
    let mut nodes_explored = 0;
    loop {
        let (found, nodes) = Backtrack::run(n, d, best.len() + 1);
        nodes_explored += nodes;
        match found {
            Some(words) => best = words,
            None => break,
        }
    }
    Ok(MaxCode {
        size: best.len() as u64,
        witness: BinaryCode::new(n, best)?,
        nodes_explored,
    })
}

pub fn max_code_size(n: u32, d: u32) -> Result<u64> {
    max_code(n, d).map(|c| c.size)
}
