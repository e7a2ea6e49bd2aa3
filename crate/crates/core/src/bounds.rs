//! Lower bounds on the length of a binary code with `m` codewords that corrects
//! `t` bit errors.
//!
//! Two bounds are computed:
//!
//! * the sphere-packing (Hamming) bound: the smallest `n` with
//!   `m * V(n, t) <= 2^n`, where `V(n, t)` is the Hamming ball volume;
//! * the liar-game bound: the smallest `n` at or above the sphere-packing value
//!   whose K-sequence stays under `2^(n-i)` at every step.
//!
//! The K-sequence starts at `K_0 = m * V(n, t)`, the Spencer weight of the
//! opening position of the `(m, t, n)` liar game. Each later entry is the least
//! integer that is at least half its predecessor and lies in the residue class
//! of `m * V(n-i, t)` modulo the binomial gcd window `A_{n-i}`. Every reachable
//! game position after `i` answers from a weight-maximising answerer has weight
//! at least `K_i`, so once some `K_i` exceeds `2^(n-i)` the answerer keeps two
//! candidates alive through the last question.

use std::fmt;
use std::ops::RangeInclusive;

use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;

use crate::combinatorics::{gcd_window, pow2, sphere_volume, ExactInt};
use crate::error::{Error, Result};

/// Code size `m >= 1` and correction capability `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeParams {
    m: u64,
    t: u64,
}

impl CodeParams {
    pub fn new(m: u64, t: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParams(
                "code size m must be at least 1".into(),
            ));
        }
        Ok(CodeParams { m, t })
    }

    /// Parameters for minimum distance `d >= 1`, with `t = floor((d - 1) / 2)`.
    pub fn from_distance(m: u64, d: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParams(
                "minimum distance must be at least 1".into(),
            ));
        }
        Self::new(m, (d - 1) / 2)
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    /// Smallest minimum distance giving capability `t`.
    pub fn min_distance(&self) -> u64 {
        2 * self.t + 1
    }
}

/// Hamming volume condition `m * V(n, t) <= 2^n`.
pub fn spb_feasible(n: u64, p: CodeParams) -> bool {
    ExactInt::from(p.m) * sphere_volume(n, p.t) <= pow2(n)
}

/// Smallest `n` satisfying [`spb_feasible`].
pub fn spb_min_length(p: CodeParams) -> u64 {
    // m <= 2^n is necessary, so start at ceil(log2 m).
    let mut n = u64::from(64 - (p.m - 1).leading_zeros());
    while !spb_feasible(n, p) {
        n += 1;
    }
    n
}

/// Modulus and residue `(A_{n-i}, m * V(n-i, t) mod A_{n-i})` for step `i >= 1`.
fn residue_class(n: u64, i: u64, p: CodeParams) -> (ExactInt, ExactInt) {
    let modulus = gcd_window(n - i, p.t, i);
    if modulus.is_one() {
        return (modulus, ExactInt::from(0));
    }
    let target = ExactInt::from(p.m) * sphere_volume(n - i, p.t);
    let residue = target.mod_floor(&modulus);
    (modulus, residue)
}

/// Least integer `>= prev / 2` congruent to the step-`i` residue.
fn next_k(prev: &ExactInt, n: u64, i: u64, p: CodeParams) -> ExactInt {
    let base: ExactInt = (prev + 1u32) >> 1u32;
    let (modulus, residue) = residue_class(n, i, p);
    if modulus.is_one() {
        return base;
    }
    let lift = (residue - &base).mod_floor(&modulus);
    base + lift
}

/// K_0..K_n for a fixed candidate length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KSequence {
    params: CodeParams,
    n: u64,
    values: Vec<ExactInt>,
}

impl KSequence {
    pub fn params(&self) -> CodeParams {
        self.params
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn values(&self) -> &[ExactInt] {
        &self.values
    }

    /// First step at which `K_i > 2^(n-i)`, if any.
    pub fn first_violation(&self) -> Option<Violation> {
        check_indices(self.n).find_map(|i| {
            let limit = pow2(self.n - i);
            let k = &self.values[i as usize];
            (k > &limit).then(|| Violation {
                index: i,
                k: k.clone(),
                limit,
            })
        })
    }

    pub fn is_feasible(&self) -> bool {
        self.first_violation().is_none()
    }
}

impl fmt::Display for KSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

/// A step where the K-sequence exceeds the remaining question capacity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub index: u64,
    pub k: ExactInt,
    pub limit: ExactInt,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = self.index;
        let e = self.limit.bits() - 1;
        write!(f, "i={i} (K_{i}={} > 2^{e}={})", self.k, self.limit)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible,
    Violated(Violation),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible)
    }
}

/// Indices checked against `2^(n-i)`: `1..=n`, or just `0` when `n == 0` so
/// that a zero-length code is only accepted for a single codeword.
fn check_indices(n: u64) -> RangeInclusive<u64> {
    if n == 0 {
        0..=0
    } else {
        1..=n
    }
}

pub fn k_sequence(n: u64, p: CodeParams) -> KSequence {
    let mut values = Vec::with_capacity(n as usize + 1);
    values.push(ExactInt::from(p.m) * sphere_volume(n, p.t));
    for i in 1..=n {
        let next = next_k(&values[i as usize - 1], n, i, p);
        values.push(next);
    }
    KSequence {
        params: p,
        n,
        values,
    }
}

/// Checks `K_i <= 2^(n-i)` step by step, stopping at the first violation.
pub fn k_check(n: u64, p: CodeParams) -> Feasibility {
    let mut k = ExactInt::from(p.m) * sphere_volume(n, p.t);
    if n == 0 {
        return if k.is_one() {
            Feasibility::Feasible
        } else {
            Feasibility::Violated(Violation {
                index: 0,
                k,
                limit: ExactInt::one(),
            })
        };
    }
    for i in 1..=n {
        k = next_k(&k, n, i, p);
        let limit = pow2(n - i);
        if k > limit {
            return Feasibility::Violated(Violation { index: i, k, limit });
        }
    }
    Feasibility::Feasible
}

pub fn k_feasible(n: u64, p: CodeParams) -> bool {
    k_check(n, p).is_feasible()
}

/// Smallest `n >= spb_min_length(p)` passing [`k_check`].
///
/// Candidates are tested one at a time from the sphere-packing start; the
/// search never assumes feasibility is monotone in `n`.
pub fn k_min_length(p: CodeParams) -> Result<u64> {
    let start = spb_min_length(p);
    let limit = 2 * start + 128;
    (start..=limit)
        .find(|&n| k_feasible(n, p))
        .ok_or(Error::SearchLimit {
            m: p.m,
            t: p.t,
            limit,
        })
}

/// Feasibility of every `n` in `range`, warning when a feasible length is
/// followed by an infeasible one.
pub fn feasibility_profile(p: CodeParams, range: RangeInclusive<u64>) -> Vec<(u64, bool)> {
    let profile: Vec<(u64, bool)> = range.map(|n| (n, k_feasible(n, p))).collect();
    let mut seen_feasible = None;
    for &(n, ok) in &profile {
        match (ok, seen_feasible) {
            (true, None) => seen_feasible = Some(n),
            (false, Some(first)) => log::warn!(
                "non-monotone feasibility for m={} t={}: feasible at {first}, infeasible at {n}",
                p.m,
                p.t
            ),
            _ => {}
        }
    }
    profile
}

/// Both bounds for one `(m, t)` cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundResult {
    pub m: u64,
    pub t: u64,
    pub spb_n: u64,
    pub new_n: u64,
    pub improved: bool,
}

pub fn bound_result(p: CodeParams) -> Result<BoundResult> {
    let spb_n = spb_min_length(p);
    let new_n = k_min_length(p)?;
    Ok(BoundResult {
        m: p.m,
        t: p.t,
        spb_n,
        new_n,
        improved: new_n > spb_n,
    })
}

fn sweep_cells(ms: RangeInclusive<u64>, ts: &[u64]) -> Result<Vec<CodeParams>> {
    if *ms.start() == 0 || ms.is_empty() {
        return Err(Error::InvalidParams(format!(
            "sweep needs 1 <= m_min <= m_max, got {}..={}",
            ms.start(),
            ms.end()
        )));
    }
    if ts.is_empty() {
        return Err(Error::InvalidParams("sweep needs at least one t".into()));
    }
    let mut ts = ts.to_vec();
    ts.sort_unstable();
    ts.dedup();
    Ok(ts
        .into_iter()
        .flat_map(|t| ms.clone().map(move |m| CodeParams { m, t }))
        .collect())
}

/// Bounds for every `(m, t)`, ordered by `t` then `m`. Cells are evaluated in
/// parallel; the output is identical to [`sweep_sequential`].
pub fn sweep(ms: RangeInclusive<u64>, ts: &[u64]) -> Result<Vec<BoundResult>> {
    sweep_cells(ms, ts)?
        .into_par_iter()
        .map(bound_result)
        .collect()
}

pub fn sweep_sequential(ms: RangeInclusive<u64>, ts: &[u64]) -> Result<Vec<BoundResult>> {
    sweep_cells(ms, ts)?.into_iter().map(bound_result).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(m: u64, t: u64) -> CodeParams {
        CodeParams::new(m, t).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<ExactInt> {
        v.iter().map(|&x| ExactInt::from(x)).collect()
    }

    /// Least integer k with 2k >= prev and k = residue (mod modulus), by scanning.
    fn least_by_scan(prev: &ExactInt, residue: &ExactInt, modulus: &ExactInt) -> ExactInt {
        let mut k: ExactInt = prev / 2;
        loop {
            if ExactInt::from(2) * &k >= *prev
                && (&k - residue).mod_floor(modulus) == ExactInt::from(0)
            {
                return k;
            }
            k += 1;
        }
    }

    #[test]
    fn code_params_validation() {
        assert!(CodeParams::new(0, 1).is_err());
        assert_eq!(CodeParams::from_distance(3, 3).unwrap().t(), 1);
        assert_eq!(CodeParams::from_distance(3, 4).unwrap().t(), 1);
        assert_eq!(CodeParams::from_distance(3, 9).unwrap().t(), 4);
        assert!(CodeParams::from_distance(3, 0).is_err());
        assert_eq!(p(5, 2).min_distance(), 5);
    }

    #[test]
    fn spb_feasible_examples() {
        assert!(spb_feasible(4, p(3, 1)));
        assert!(!spb_feasible(3, p(3, 1)));
        assert!(spb_feasible(7, p(16, 1)));
        assert_eq!(ExactInt::from(16) * sphere_volume(7, 1), pow2(7));
    }

    #[test]
    fn spb_min_length_examples() {
        assert_eq!(spb_min_length(p(3, 1)), 4);
        assert_eq!(spb_min_length(p(1, 0)), 0);
        assert_eq!(spb_min_length(p(4096, 3)), 23);
        assert_eq!(spb_min_length(p(2, 0)), 1);
        assert_eq!(spb_min_length(p(5, 0)), 3);
    }

    #[test]
    fn k_sequence_examples() {
        let ks = k_sequence(4, p(3, 1));
        assert_eq!(&ks.values()[..2], ints(&[15, 9]).as_slice());
        assert_eq!(
            k_sequence(5, p(3, 1)).values(),
            ints(&[18, 11, 6, 3, 2, 1]).as_slice()
        );
        assert_eq!(
            k_sequence(7, p(16, 1)).values(),
            ints(&[128, 64, 32, 16, 8, 4, 2, 1]).as_slice()
        );
    }

    #[test]
    fn k_check_reports_first_violation() {
        match k_check(4, p(3, 1)) {
            Feasibility::Violated(v) => {
                assert_eq!(v.index, 1);
                assert_eq!(v.k, ExactInt::from(9));
                assert_eq!(v.limit, ExactInt::from(8));
            }
            Feasibility::Feasible => panic!("n=4 must be infeasible"),
        }
        assert!(k_feasible(5, p(3, 1)));
        assert!(k_feasible(7, p(16, 1)));
        assert_eq!(k_sequence(4, p(3, 1)).first_violation().unwrap().index, 1);
    }

    #[test]
    fn zero_length_only_for_one_codeword() {
        assert!(k_feasible(0, p(1, 0)));
        assert!(k_feasible(0, p(1, 3)));
        assert!(!k_feasible(0, p(2, 0)));
    }

    #[test]
    fn k_min_length_examples() {
        assert_eq!(k_min_length(p(3, 1)).unwrap(), 5);
        assert_eq!(k_min_length(p(16, 1)).unwrap(), 7);
        assert_eq!(k_min_length(p(2, 0)).unwrap(), 1);
        assert_eq!(k_min_length(p(1, 0)).unwrap(), 0);
        assert_eq!(k_min_length(p(4096, 3)).unwrap(), 23);
    }

    #[test]
    fn k_sequence_satisfies_its_defining_constraints() {
        for m in 1..=20 {
            for t in 0..=3 {
                for n in 0..=16 {
                    let ks = k_sequence(n, p(m, t));
                    let v = ks.values();
                    assert_eq!(v[0], ExactInt::from(m) * sphere_volume(n, t));
                    for i in 1..=n {
                        let a = gcd_window(n - i, t, i);
                        let r = (ExactInt::from(m) * sphere_volume(n - i, t)).mod_floor(&a);
                        let expect = least_by_scan(&v[i as usize - 1], &r, &a);
                        assert_eq!(v[i as usize], expect, "m={m} t={t} n={n} i={i}");
                        // minimality: the next class member down breaks the halving bound
                        if a > ExactInt::one() {
                            let below: ExactInt = &v[i as usize] - &a;
                            assert!(ExactInt::from(2) * below < v[i as usize - 1]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn k_check_agrees_with_full_sequence() {
        for m in 1..=30 {
            for t in 0..=3 {
                for n in 0..=14 {
                    let ks = k_sequence(n, p(m, t));
                    let expected = match ks.first_violation() {
                        None => Feasibility::Feasible,
                        Some(v) => Feasibility::Violated(v),
                    };
                    assert_eq!(k_check(n, p(m, t)), expected);
                }
            }
        }
    }

    #[test]
    fn infeasible_below_sphere_packing() {
        for m in 1..=32 {
            for t in 0..=2 {
                let start = spb_min_length(p(m, t));
                for n in 0..start {
                    assert!(!k_feasible(n, p(m, t)), "m={m} t={t} n={n}");
                }
            }
        }
    }

    #[test]
    fn sweep_contains_known_rows() {
        let rows = sweep(1..=20, &[1]).unwrap();
        assert_eq!(rows.len(), 20);
        let r3 = rows.iter().find(|r| r.m == 3).unwrap();
        assert_eq!((r3.spb_n, r3.new_n, r3.improved), (4, 5, true));
        let r16 = rows.iter().find(|r| r.m == 16).unwrap();
        assert_eq!((r16.spb_n, r16.new_n, r16.improved), (7, 7, false));
        assert!(rows.iter().all(|r| r.new_n >= r.spb_n));
    }

    #[test]
    fn sweep_orders_by_t_then_m() {
        let rows = sweep(1..=5, &[2, 1, 2]).unwrap();
        let keys: Vec<(u64, u64)> = rows.iter().map(|r| (r.t, r.m)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(keys.len(), 10);
    }

    #[test]
    fn sweep_rejects_bad_ranges() {
        assert!(sweep(0..=5, &[1]).is_err());
        assert!(sweep(1..=5, &[]).is_err());
        #[allow(clippy::reversed_empty_ranges)]
        let empty = 5..=4;
        assert!(sweep(empty, &[1]).is_err());
    }

    #[test]
    fn parallel_and_sequential_sweeps_agree() {
        assert_eq!(
            sweep(1..=300, &[1, 2, 3]).unwrap(),
            sweep_sequential(1..=300, &[1, 2, 3]).unwrap()
        );
    }

    #[test]
    fn feasibility_profile_is_monotone_on_small_grid() {
        for m in 1..=40 {
            for t in 0..=3 {
                let prof = feasibility_profile(p(m, t), 0..=30);
                let first = prof.iter().position(|&(_, ok)| ok).unwrap();
                assert!(prof[first..].iter().all(|&(_, ok)| ok), "m={m} t={t}");
            }
        }
    }

    proptest! {
        #[test]
        fn dominance(m in 1u64..5000, t in 0u64..5) {
            let r = bound_result(p(m, t)).unwrap();
            prop_assert!(r.new_n >= r.spb_n);
            prop_assert_eq!(r.improved, r.new_n > r.spb_n);
        }
    }
}
