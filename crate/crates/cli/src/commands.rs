use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use liarbound::bounds::{self, k_sequence, CodeParams};
use liarbound::game::{
    parse_script, run_game, Answer, Answerer, BalancedQuestioner, GameParams, MaxWeightAdversary,
    Question, ScriptedAnswerer, ScriptedQuestioner, DEFAULT_EXHAUSTIVE_CAP,
};
use liarbound::oracle::{self, validate_code, BinaryCode, OracleCaps};
use rayon::prelude::*;

use crate::config::{List, Settings};
use crate::{BoundArgs, GameArgs, Status, SweepArgs, UsageError, VerifyArgs};

fn usage(e: impl std::fmt::Display) -> anyhow::Error {
    UsageError(e.to_string()).into()
}

/// Opens `path` for writing, with `-` (or nothing) meaning `out`.
fn sink<'a>(path: Option<&Path>, out: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>> {
    match path {
        Some(p) if p != Path::new("-") => {
            let f = File::create(p).with_context(|| format!("creating {}", p.display()))?;
            Ok(Box::new(BufWriter::new(f)))
        }
        _ => Ok(Box::new(out)),
    }
}

pub fn bound(a: BoundArgs, out: &mut dyn Write) -> Result<Status> {
    let p = CodeParams::new(a.m, a.t).map_err(usage)?;
    let r = bounds::bound_result(p)?;
    writeln!(
        out,
        "m={} t={} d={} spb={} new={}{}",
        r.m,
        r.t,
        p.min_distance(),
        r.spb_n,
        r.new_n,
        if r.improved { " improved" } else { "" }
    )?;
    let lengths: Vec<u64> = match a.n {
        Some(n) => vec![n],
        None if a.show_k_sequence => (r.spb_n..=r.new_n).collect(),
        None => Vec::new(),
    };
    let mut status = Status::Ok;
    for n in lengths {
        let ks = k_sequence(n, p);
        write!(out, "n={n}")?;
        match ks.first_violation() {
            None => write!(out, " feasible")?,
            Some(v) => {
                write!(out, " infeasible at {v}")?;
                if a.n.is_some() {
                    status = Status::Finding;
                }
            }
        }
        if a.show_k_sequence {
            let ks: Vec<String> = ks.values().iter().map(ToString::to_string).collect();
            write!(out, " K={}", ks.join(","))?;
        }
        writeln!(out)?;
    }
    Ok(status)
}

pub fn sweep(
    a: SweepArgs,
    s: &Settings,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Status> {
    let m_min = s.resolve(a.m_min, "m_min", 1u64)?;
    let m_max = s.resolve(a.m_max, "m_max", 100_000u64)?;
    let List(ts) = s.resolve(a.t, "t", List(vec![1, 2, 3, 4]))?;
    let output: Option<PathBuf> = s.resolve_opt(a.output, "output")?;
    if m_min == 0 || m_min > m_max {
        return Err(usage(format!(
            "need 1 <= m_min <= m_max, got {m_min}..{m_max}"
        )));
    }
    let rows = if a.sequential {
        bounds::sweep_sequential(m_min..=m_max, &ts)
    } else {
        bounds::sweep(m_min..=m_max, &ts)
    }
    .map_err(usage)?;

    let mut w = sink(output.as_deref(), out)?;
    writeln!(w, "m,t,spb_n,new_n,improved")?;
    for r in &rows {
        writeln!(
            w,
            "{},{},{},{},{}",
            r.m,
            r.t,
            r.spb_n,
            r.new_n,
            u8::from(r.improved)
        )?;
    }
    w.flush()?;
    drop(w);

    let improved = rows.iter().filter(|r| r.improved).count();
    writeln!(
        err,
        "{} rows, {} improved over the sphere-packing bound",
        rows.len(),
        improved
    )?;
    if let Some(bad) = rows.iter().find(|r| r.new_n < r.spb_n) {
        writeln!(
            err,
            "inconsistent: new bound below sphere-packing bound at {bad:?}"
        )?;
        return Ok(Status::Inconsistent);
    }
    Ok(Status::Ok)
}

pub fn game(a: GameArgs, s: &Settings, out: &mut dyn Write) -> Result<Status> {
    let params = GameParams::new(a.m, a.t, a.n).map_err(usage)?;
    let cap = s.resolve(a.exhaustive_cap, "exhaustive_cap", DEFAULT_EXHAUSTIVE_CAP)?;
    let mut balanced = BalancedQuestioner::new(cap);
    let mut adversary = MaxWeightAdversary;

    let trace = match &a.script {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading script {}", path.display()))?;
            let lines = parse_script(&text).map_err(usage)?;
            let questions = lines
                .iter()
                .map(|l| Question::new(params.m, l.chips.iter().copied()))
                .collect::<Result<Vec<_>, _>>()
                .map_err(usage)?;
            let answers: Vec<Answer> = lines.iter().filter_map(|l| l.answer).collect();
            let mut scripted_q = ScriptedQuestioner::new(questions);
            let mut scripted_a;
            let answerer: &mut dyn Answerer = if answers.is_empty() {
                &mut adversary
            } else if answers.len() == lines.len() {
                scripted_a = ScriptedAnswerer::new(answers);
                &mut scripted_a
            } else {
                return Err(usage("script must give an answer on every line or on none"));
            };
            run_game(params, &mut scripted_q, answerer).map_err(usage)?
        }
        None => run_game(params, &mut balanced, &mut adversary)?,
    };

    let mut w = sink(a.output.as_deref(), out)?;
    write!(w, "{trace}")?;
    w.flush()?;
    Ok(if trace.is_conclusive() {
        Status::Ok
    } else {
        Status::Finding
    })
}

struct CellReport {
    line: String,
    consistent: bool,
}

fn verify_cell(caps: &OracleCaps, m: usize, t: usize) -> Result<CellReport> {
    let p = CodeParams::new(m as u64, t as u64)?;
    let r = bounds::bound_result(p)?;
    let new = r.new_n as usize;
    let d = 2 * t as u32 + 1;
    let mut problems = Vec::new();
    let mut fields = vec![format!("m={m} t={t} spb={} new={new}", r.spb_n)];

    if r.new_n < r.spb_n {
        problems.push("new below spb".to_string());
    }

    // adaptive game solved exactly
    let game_min = oracle::minimax_min_questions(caps, m, t)?;
    fields.push(format!(
        "game_min={}",
        game_min.map_or(">cap".into(), |k| k.to_string())
    ));
    if game_min.is_some_and(|k| k < new) {
        problems.push("game won below the new bound".into());
    }

    // weight engine one question short of the bound
    if new >= 1 {
        let params = GameParams::new(m, t, new - 1)?;
        let trace = run_game(
            params,
            &mut BalancedQuestioner::default(),
            &mut MaxWeightAdversary,
        )?;
        fields.push(format!(
            "auto_below={}",
            if trace.is_conclusive() {
                "conclusive"
            } else {
                "inconclusive"
            }
        ));
        if trace.is_conclusive() {
            problems.push("weight engine won below the new bound".into());
        }
    }

    // preset codes: appending a bit keeps distances, so n = new - 1 covers all shorter lengths
    if new >= 1 && new - 1 <= caps.max_code_length as usize {
        let below = oracle::code_exists_with(caps, new as u32 - 1, m as u64, d)?;
        fields.push(format!(
            "code_below={}",
            if below.exists() {
                "exists"
            } else {
                "exhausted"
            }
        ));
        if below.exists() {
            problems.push("code shorter than the new bound".into());
        }
    }
    let mut code_min = None;
    for n in new..=caps.max_code_length as usize {
        if oracle::code_exists_with(caps, n as u32, m as u64, d)?.exists() {
            code_min = Some(n);
            break;
        }
    }
    fields.push(format!(
        "code_min={}",
        code_min.map_or(">cap".into(), |n| n.to_string())
    ));
    if let (Some(g), Some(c)) = (game_min, code_min) {
        if c < g {
            problems.push("preset code beats the adaptive game".into());
        }
    }

    let consistent = problems.is_empty();
    if consistent {
        fields.push("ok".into());
    } else {
        fields.push(format!("INCONSISTENT: {}", problems.join("; ")));
    }
    Ok(CellReport {
        line: fields.join(" "),
        consistent,
    })
}

pub fn verify(a: VerifyArgs, s: &Settings, out: &mut dyn Write) -> Result<Status> {
    let defaults = OracleCaps::default();
    let max_m = s.resolve(a.max_m, "max_m", defaults.max_minimax_m)?;
    let max_t = s.resolve(a.max_t, "max_t", defaults.max_minimax_t)?;
    let max_n = s.resolve(a.max_n, "max_n", defaults.max_minimax_n)?;
    let max_code_length = s.resolve(a.max_code_length, "max_code_length", 12u32)?;
    let grid = [
        ("max_m", max_m as u64, defaults.max_minimax_m as u64),
        ("max_t", max_t as u64, defaults.max_minimax_t as u64),
        ("max_n", max_n as u64, defaults.max_minimax_n as u64),
        (
            "max_code_length",
            max_code_length.into(),
            defaults.max_code_length.into(),
        ),
    ];
    if let Some((what, v, cap)) = grid.iter().find(|(_, v, cap)| v > cap) {
        return Err(usage(format!("{what}={v} exceeds the oracle cap {cap}")));
    }
    let caps = OracleCaps {
        max_code_length,
        max_minimax_m: max_m,
        max_minimax_t: max_t,
        max_minimax_n: max_n,
    };

    let cells: Vec<(usize, usize)> = (0..=max_t)
        .flat_map(|t| (1..=max_m).map(move |m| (m, t)))
        .collect();
    let reports = cells
        .par_iter()
        .map(|&(m, t)| verify_cell(&caps, m, t))
        .collect::<Result<Vec<_>>>()?;

    let mut status = Status::Ok;
    for r in &reports {
        writeln!(out, "{}", r.line)?;
        if !r.consistent {
            status = Status::Inconsistent;
        }
    }

    if let Some(path) = &a.check_code {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading code {}", path.display()))?;
        let words: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let code = BinaryCode::from_bit_strings(&words).map_err(usage)?;
        let valid = validate_code(&code, a.check_t).map_err(usage)?;
        let p = CodeParams::new(code.len().max(1) as u64, a.check_t)?;
        let new = bounds::k_min_length(p)?;
        write!(
            out,
            "code n={} m={} min_distance={} t={} {} new={new}",
            code.n(),
            code.len(),
            code.min_distance().map_or("-".into(), |d| d.to_string()),
            a.check_t,
            if valid { "valid" } else { "invalid" },
        )?;
        if !valid {
            writeln!(out)?;
            if status == Status::Ok {
                status = Status::Finding;
            }
        } else if u64::from(code.n()) < new {
            writeln!(out, " INCONSISTENT: valid code shorter than the new bound")?;
            status = Status::Inconsistent;
        } else {
            writeln!(out, " ok")?;
        }
    }

    let bad = reports.iter().filter(|r| !r.consistent).count();
    writeln!(out, "{} cells checked, {} inconsistent", reports.len(), bad)?;
    Ok(status)
}
