//! Acceptance suite. Each test prints one `PASS`/`FAIL` line; run with
//! `cargo test -p liarbound-core --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use liarbound::bounds::{self, k_sequence, spb_min_length, CodeParams};
use liarbound::game::{
    run_game, Answer, ChipSet, GameParams, GameTrace, MaxWeightAdversary, Outcome, Question,
    ScriptedAnswerer, ScriptedQuestioner, SpencerState,
};
use liarbound::oracle::{
    code_exists, max_code_size, minimax_game, validate_code, BinaryCode, Winner,
};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn report(id: u32, name: &str, ok: bool, detail: String) {
    println!(
        "criterion {id} {:<4} {name}: {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {id} ({name}) failed: {detail}");
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn params(m: u64, t: u64) -> CodeParams {
    CodeParams::new(m, t).unwrap()
}

/// Sphere volume from a Pascal row, independent of the library.
fn volume(n: usize, t: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128; row.len() + 1];
        for k in 1..row.len() {
            next[k] = row[k - 1] + row[k];
        }
        row = next;
    }
    row.iter().take(t + 1).sum()
}

/// Spencer weight recomputed from bin counts.
fn weight_oracle(state: &SpencerState) -> BigInt {
    let p = state.params();
    let horizon = p.n - state.step();
    state
        .bins()
        .iter()
        .enumerate()
        .map(|(i, b)| BigInt::from(b.len() as u128 * volume(horizon, p.t - i)))
        .sum()
}

fn random_state(rng: &mut StdRng, p: GameParams) -> SpencerState {
    let step = rng.random_range(0..p.n);
    let mut bins = vec![Vec::new(); p.t + 1];
    for chip in 0..p.m {
        let slot = rng.random_range(0..=p.t + 1);
        if slot <= p.t {
            bins[slot].push(chip);
        }
    }
    let bins = bins
        .into_iter()
        .map(|b| ChipSet::from_chips(p.m, b).unwrap())
        .collect();
    SpencerState::from_bins(p, bins, step).unwrap()
}

fn random_question(rng: &mut StdRng, m: usize) -> Question {
    Question::new(m, (0..m).filter(|_| rng.random_bool(0.5))).unwrap()
}

#[test]
fn c1_small_code_needs_five_bits() {
    let ((spb, new), dt) = timed(|| {
        let p = params(3, 1);
        (spb_min_length(p), bounds::k_min_length(p).unwrap())
    });
    let ok = spb == 4 && new == 5 && dt < Duration::from_millis(1);
    report(
        1,
        "m=3 t=1 bounds",
        ok,
        format!("spb={spb} new={new} in {dt:?}"),
    );
}

#[test]
fn c2_perfect_codes_meet_both_bounds() {
    let (rows, dt) = timed(|| {
        [(16, 1), (4096, 3)].map(|(m, t)| {
            let p = params(m, t);
            (m, t, spb_min_length(p), bounds::k_min_length(p).unwrap())
        })
    });
    let ok = rows == [(16, 1, 7, 7), (4096, 3, 23, 23)] && dt < Duration::from_millis(10);
    report(2, "perfect codes", ok, format!("{rows:?} in {dt:?}"));
}

#[test]
fn c3_full_sweep_dominates() {
    let (rows, dt) = timed(|| bounds::sweep(1..=100_000, &[1, 2, 3, 4]).unwrap());
    let below = rows.iter().filter(|r| r.new_n < r.spb_n).count();
    let improved = rows.iter().filter(|r| r.improved).count();
    let m3 = rows
        .iter()
        .any(|r| r.m == 3 && r.t == 1 && r.new_n > r.spb_n);
    let ok =
        rows.len() == 400_000 && below == 0 && improved >= 1 && m3 && dt < Duration::from_secs(300);
    report(
        3,
        "sweep dominance",
        ok,
        format!(
            "{} rows, {below} below spb, {improved} improved, m=3 t=1 improved={m3}, {dt:?}",
            rows.len()
        ),
    );
}

#[test]
fn c4_weight_is_additive() {
    let mut rng = StdRng::seed_from_u64(4);
    let mut bad = 0;
    for _ in 0..10_000 {
        let p = GameParams::new(
            rng.random_range(1..=12),
            rng.random_range(0..=3),
            rng.random_range(1..=12),
        )
        .unwrap();
        let s = random_state(&mut rng, p);
        let q = random_question(&mut rng, p.m);
        let (y, n) = s.weight_split(&q).unwrap();
        let w = weight_oracle(&s);
        let y_direct = weight_oracle(&s.apply(&q, Answer::Yes).unwrap());
        let n_direct = weight_oracle(&s.apply(&q, Answer::No).unwrap());
        if &y + &n != w || s.weight() != w || y != y_direct || n != n_direct {
            bad += 1;
        }
    }
    report(
        4,
        "weight additivity",
        bad == 0,
        format!("10000 pairs, {bad} mismatches"),
    );
}

/// Random full-length scripts answered by the max-weight adversary.
fn adversary_traces(count: usize) -> Vec<GameTrace> {
    let mut rng = StdRng::seed_from_u64(5);
    (0..count)
        .map(|_| {
            let p = GameParams::new(
                rng.random_range(1..=10),
                rng.random_range(0..=2),
                rng.random_range(0..=10),
            )
            .unwrap();
            let script = (0..p.n).map(|_| random_question(&mut rng, p.m)).collect();
            run_game(
                p,
                &mut ScriptedQuestioner::new(script),
                &mut MaxWeightAdversary,
            )
            .unwrap()
        })
        .collect()
}

#[test]
fn c5_adversary_weight_dominates_k() {
    let traces = adversary_traces(1000);
    let mut checked = 0;
    let mut bad = 0;
    for tr in &traces {
        let p = tr.params();
        let ks = k_sequence(p.n as u64, params(p.m as u64, p.t as u64));
        let weights = std::iter::once(tr.initial().weight())
            .chain(tr.steps().iter().map(|s| s.weight.clone()));
        for (w, k) in weights.zip(ks.values()) {
            checked += 1;
            if &w < k {
                bad += 1;
            }
        }
    }
    report(
        5,
        "adversary weight >= K",
        bad == 0,
        format!(
            "{} scripts, {checked} steps, {bad} violations",
            traces.len()
        ),
    );
}

#[test]
fn c6_final_weight_counts_survivors() {
    let mut traces = adversary_traces(1000);
    for (m, t, n) in [(3, 1, 4), (3, 1, 5), (5, 1, 7), (4, 2, 9)] {
        traces.push(
            run_game(
                GameParams::new(m, t, n).unwrap(),
                &mut liarbound::game::BalancedQuestioner::default(),
                &mut MaxWeightAdversary,
            )
            .unwrap(),
        );
    }
    let mut bad = 0;
    for tr in &traces {
        let last = tr.final_state();
        assert_eq!(last.step(), tr.params().n);
        if last.weight() != BigInt::from(last.survivor_count()) {
            bad += 1;
        }
    }
    report(
        6,
        "endgame weight",
        bad == 0,
        format!("{} traces, {bad} mismatches", traces.len()),
    );
}

#[test]
fn c7_code_oracles() {
    let limit = Duration::from_secs(10);
    let mut notes = Vec::new();
    let mut ok = true;

    let (c4, dt) = timed(|| code_exists(4, 3, 3).unwrap());
    ok &= !c4.exists() && dt < limit;
    notes.push(format!("(4,3,3) exists={} {dt:?}", c4.exists()));

    let (c5, dt) = timed(|| code_exists(5, 3, 3).unwrap());
    let witness_ok = c5
        .witness()
        .is_some_and(|w| w.len() == 3 && validate_code(w, 1).unwrap());
    ok &= witness_ok && dt < limit;
    notes.push(format!("(5,3,3) witness_ok={witness_ok} {dt:?}"));

    let known = BinaryCode::from_bit_strings(&["00000", "11100", "11011"]).unwrap();
    let known_ok = validate_code(&known, 1).unwrap();
    ok &= known_ok;
    notes.push(format!("known code valid={known_ok}"));

    for (n, expect) in [(4, 2), (5, 4), (6, 8), (7, 16)] {
        let (a, dt) = timed(|| max_code_size(n, 3).unwrap());
        ok &= a == expect && dt < limit;
        notes.push(format!("A({n},3)={a} {dt:?}"));
    }
    report(7, "code oracles", ok, notes.join(", "));
}

#[test]
fn c8_minimax() {
    let limit = Duration::from_secs(5);
    let (w4, dt4) = timed(|| minimax_game(GameParams::new(3, 1, 4).unwrap()).unwrap());
    let (w5, dt5) = timed(|| minimax_game(GameParams::new(3, 1, 5).unwrap()).unwrap());
    let ok = w4 == Winner::Player1 && w5 == Winner::Player2 && dt4 < limit && dt5 < limit;
    report(
        8,
        "minimax",
        ok,
        format!("n=4 {w4:?} {dt4:?}, n=5 {w5:?} {dt5:?}"),
    );
}

#[test]
fn c9_golden_trace() {
    use Answer::{No, Yes};
    let p = GameParams::new(3, 1, 5).unwrap();
    let script: [(&[usize], Answer); 5] = [
        (&[0, 1], Yes),
        (&[0, 2], Yes),
        (&[0], No),
        (&[0, 1], Yes),
        (&[0], Yes),
    ];
    let questions = script
        .iter()
        .map(|(a, _)| Question::new(3, a.iter().copied()).unwrap())
        .collect();
    let answers = script.iter().map(|&(_, x)| x).collect();
    let tr = run_game(
        p,
        &mut ScriptedQuestioner::new(questions),
        &mut ScriptedAnswerer::new(answers),
    )
    .unwrap();

    // (bin 0, bin 1, lost, weight) after each step
    type Row = (&'static [usize], &'static [usize], &'static [usize], u32);
    let expected: [Row; 6] = [
        (&[0, 1, 2], &[], &[], 18),
        (&[0, 1], &[2], &[], 11),
        (&[0], &[1, 2], &[], 6),
        (&[], &[0, 1, 2], &[], 3),
        (&[], &[0, 1], &[2], 2),
        (&[], &[0], &[1, 2], 1),
    ];
    let states: Vec<&SpencerState> = std::iter::once(tr.initial())
        .chain(tr.steps().iter().map(|s| &s.state))
        .collect();
    let mut ok = states.len() == expected.len();
    for (s, (v0, v1, lost, w)) in states.iter().zip(expected) {
        let set = |c: &[usize]| ChipSet::from_chips(3, c.iter().copied()).unwrap();
        ok &= s.bins() == [set(v0), set(v1)]
            && *s.lost() == set(lost)
            && s.weight() == BigInt::from(w);
    }
    ok &= tr.steps()[3].state.survivor_count() == 2;
    ok &= *tr.outcome() == Outcome::Conclusive(0);
    ok &= GameTrace::parse(&tr.to_string()).unwrap() == tr;
    let weights: Vec<String> = states.iter().map(|s| s.weight().to_string()).collect();
    report(
        9,
        "golden trace",
        ok,
        format!("weights {}, outcome {:?}", weights.join(","), tr.outcome()),
    );
}
