//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use p3cn::arrowing::{self, arrows_by_bruteforce, check_certificate, ColoringCertificate, Matching, Target};
use p3cn::fixtures::{self, build_fn_even, build_fn_even_path, build_named, turan_ex, verify_lemma1};
use p3cn::generator::{count, generate, GenSpec};
use p3cn::graph6::{parse_graph6, write_graph6};
use p3cn::search::{compute_r_star, verify_report, SearchError, SearchOptions, SearchReport};
use p3cn::{canonical_form, decide_arrowing_cycle, decide_arrowing_path, Edge, Graph, Mode};
use rand::SeedableRng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn search(n: usize, opts: &SearchOptions) -> Result<SearchReport, String> {
    let report = compute_r_star(n, opts).map_err(|e| format!("n={n}: {e}"))?;
    let issues = verify_report(&report);
    ensure(issues.is_empty(), format!("n={n}: report does not re-verify: {issues:?}"))?;
    Ok(report)
}

fn disagreements(reports: &[&SearchReport]) -> Vec<String> {
    reports.iter().flat_map(|r| r.per_m.iter().flat_map(|s| s.mode_disagreements.iter().cloned())).collect()
}

fn candidates_scanned(reports: &[&SearchReport]) -> u64 {
    reports.iter().flat_map(|r| r.per_m.iter().map(|s| s.candidates)).sum()
}

fn cross_checked() -> SearchOptions {
    SearchOptions { cross_check: true, ..SearchOptions::default() }
}

fn small_values() -> Outcome {
    let mut found = Vec::new();
    for (n, expected) in [(4, 6), (5, 9), (6, 9), (7, 13)] {
        let r = search(n, &SearchOptions::default())?;
        ensure(r.r_star == expected, format!("n={n}: r*={} expected {expected}", r.r_star))?;
        found.push(format!("r*(P3,C{n})={}", r.r_star));
    }
    Ok(found.join(", "))
}

fn seven_vertex_bound(r7: &SearchReport) -> Outcome {
    let m12 = r7.per_m.iter().find(|s| s.m == 12).ok_or("m=12 was not scanned")?;
    ensure(m12.candidates > 0 && m12.arrows == 0, format!("m=12: {} candidates, {} arrow", m12.candidates, m12.arrows))?;
    ensure(r7.r_star == 13, format!("r*={}", r7.r_star))?;
    let f7 = canonical_form(&fixtures::build_f7());
    ensure(r7.witnesses.iter().any(|w| w == f7.as_str()), "F7 is not among the 13-edge witnesses")?;
    Ok(format!(
        "m=12: 0 of {} candidates arrow; m=13: {} witnesses including F7",
        m12.candidates, r7.witness_count
    ))
}

fn core_tier(reports: &[SearchReport]) -> Outcome {
    let mut found = Vec::new();
    for (r, (n, r_star, count)) in reports.iter().zip([(8, 15, 10), (9, 17, 16), (10, 18, 2)]) {
        ensure(
            r.n == n && r.r_star == r_star && r.witness_count == count,
            format!("n={}: r*={} with {} witnesses, expected {r_star}/{count}", r.n, r.r_star, r.witness_count),
        )?;
        found.push(format!("n={n}: {}/{}", r.r_star, r.witness_count));
    }
    Ok(found.join(", "))
}

fn extended_tier() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut found = Vec::new();

    // n = 11: interrupt after a fixed number of chunks, then resume.
    let start = Instant::now();
    let ck = dir.path().join("n11.jsonl");
    let opts = SearchOptions { checkpoint: Some(ck.clone()), ..SearchOptions::default() };
    match compute_r_star(11, &SearchOptions { max_chunks: Some(300), ..opts.clone() }) {
        Err(SearchError::BudgetExhausted { m, done, total }) => found.push(format!("n=11 interrupted at m={m} ({done}/{total} chunks)")),
        other => return Err(format!("n=11 was not interrupted: {other:?}")),
    }
    let r11 = search(11, &opts)?;
    let resumed: usize = r11.per_m.iter().map(|s| s.resumed_chunks).sum();
    ensure(resumed >= 300, format!("only {resumed} chunks resumed"))?;
    ensure(
        r11.r_star == 20 && r11.witness_count == 4,
        format!("n=11: {}/{} expected 20/4", r11.r_star, r11.witness_count),
    )?;
    found.push(format!("resumed {resumed} chunks, n=11: 20/4 in {:.0}s", start.elapsed().as_secs_f64()));

    let start = Instant::now();
    let r12 = search(12, &SearchOptions { checkpoint: Some(dir.path().join("n12.jsonl")), ..SearchOptions::default() })?;
    ensure(
        r12.r_star == 22 && r12.witness_count == 8,
        format!("n=12: {}/{} expected 22/8", r12.r_star, r12.witness_count),
    )?;
    let scanned: u64 = r12.per_m.iter().map(|s| s.candidates).sum();
    found.push(format!("n=12: 22/8 over {scanned} candidates in {:.0}s", start.elapsed().as_secs_f64()));
    Ok(found.join("; "))
}

fn oracle_equivalence() -> Outcome {
    let mut small = 0;
    for n in 4..=7 {
        for g in common::all_candidates(n) {
            let fast = decide_arrowing_cycle(&g, n, Mode::Complete).map_err(|e| e.to_string())?.arrows;
            let slow = arrows_by_bruteforce(&g, n, Target::Cycle).map_err(|e| e.to_string())?;
            ensure(fast == slow, format!("disagree on {}", write_graph6(&g)))?;
            small += 1;
        }
    }
    // Every class on 8 vertices, candidate or not.
    let mut eight = 0;
    let mut eight_candidates = 0;
    for g in common::all_classes(8) {
        let fast = decide_arrowing_cycle(&g, 8, Mode::Complete).map_err(|e| e.to_string())?.arrows;
        let slow = arrows_by_bruteforce(&g, 8, Target::Cycle).map_err(|e| e.to_string())?;
        ensure(fast == slow, format!("disagree on {}", write_graph6(&g)))?;
        eight += 1;
        eight_candidates += usize::from(arrowing::necessary_conditions(&g));
    }
    ensure(eight >= 10_000, format!("only {eight} classes at n=8"))?;
    Ok(format!(
        "{small} candidate classes with n<=7; all {eight} classes with n=8 ({eight_candidates} of them candidates)"
    ))
}

fn window_replication(reports: &[&SearchReport], windowed: &[SearchReport], complete: &[SearchReport]) -> Outcome {
    let bad = disagreements(reports);
    ensure(bad.is_empty(), format!("modes disagree on {bad:?}"))?;
    for (w, c) in windowed.iter().zip(complete) {
        ensure(
            w.r_star == c.r_star && w.witnesses == c.witnesses,
            format!("n={}: window-mode search differs", c.n),
        )?;
    }
    Ok(format!(
        "both modes agree on all {} candidates scanned for n=7..10; window-mode searches match",
        candidates_scanned(reports)
    ))
}

fn turan() -> Outcome {
    let (ex, graphs) = turan_ex(7).map_err(|e| e.to_string())?;
    let drawn: Vec<Graph> = ["G1", "G2", "G3", "G4", "G5"].iter().map(|n| build_named(n).unwrap()).collect();
    ensure(ex == 9 && graphs.len() == 5, format!("ex(7,C4)={ex} with {} classes", graphs.len()))?;
    ensure(fixtures::same_classes(&graphs, &drawn), "extremal classes differ from G1..G5")?;
    Ok("ex(7,C4)=9 with 5 classes isomorphic to G1..G5".into())
}

fn constructions() -> Outcome {
    for n in (12..=20).step_by(2) {
        let g = build_fn_even(n).map_err(|e| e.to_string())?;
        ensure(g.edge_count() == 2 * n - 2, format!("F_{n} has {} edges", g.edge_count()))?;
        let v = decide_arrowing_cycle(&g, n, Mode::Complete).map_err(|e| e.to_string())?;
        ensure(v.arrows, format!("F_{n} does not arrow (P3, C{n})"))?;
        let p = build_fn_even_path(n).map_err(|e| e.to_string())?;
        ensure(p.edge_count() == 2 * n - 3, format!("F_{n}-xu3 has {} edges", p.edge_count()))?;
        let v = decide_arrowing_path(&p, n).map_err(|e| e.to_string())?;
        ensure(v.arrows, format!("F_{n}-xu3 does not arrow (P3, P{n})"))?;
    }
    Ok("F_n (2n-2 edges) arrows C_n and F_n-xu3 (2n-3 edges) arrows P_n for n=12,14,16,18,20".into())
}

fn certificates() -> Outcome {
    let mut checked = 0;
    for g in generate(GenSpec::all(7, 12)) {
        if g.complement().contains_c4() {
            verify_lemma1(&g).map_err(|e| e.to_string())?;
            checked += 1;
        }
    }
    ensure(checked > 0, "no graphs to check")?;
    ensure(verify_lemma1(&Graph::complete(7).unwrap()).is_err(), "K7 passed the precondition")?;
    // 1-based red edges on the complements of G4 and G5.
    for (name, red) in [("G4_bar", &[(2, 7), (3, 5)][..]), ("G5_bar", &[(1, 6), (3, 7), (4, 5)][..])] {
        let g = build_named(name).unwrap();
        let edges: Vec<Edge> = red.iter().map(|&(a, b)| Edge::new(a - 1, b - 1).unwrap()).collect();
        let cert = ColoringCertificate { red: Matching::new(edges).map_err(|e| e.to_string())?, target_n: 7 };
        ensure(check_certificate(&g, &cert) == Ok(true), format!("{name} certificate rejected"))?;
    }
    Ok(format!("independent-set certificate valid on all {checked} eligible graphs; G4_bar and G5_bar certificates valid"))
}

fn infrastructure() -> Outcome {
    let mut round_trips = 0;
    let mut generated: Vec<Graph> = (1..=8).flat_map(common::all_classes).collect();
    generated.extend(common::all_candidates(9));
    for g in &generated {
        let line = write_graph6(g);
        ensure(parse_graph6(line.as_bytes()).as_ref() == Ok(g), format!("round trip failed on {line}"))?;
        round_trips += 1;
    }
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    let pool = common::all_classes(8);
    for i in 0..1000 {
        let g = if i % 2 == 0 { &pool[i * 7 % pool.len()] } else { &generated[i * 13 % generated.len()] };
        let h = common::random_relabel(g, &mut rng);
        ensure(canonical_form(g) == canonical_form(&h), format!("canonical form changed under relabeling of {}", write_graph6(g)))?;
    }
    let mut counts = Vec::new();
    for (n, expected) in [(4, 11), (5, 34), (6, 156)] {
        let generated: usize = (0..=n * (n - 1) / 2).map(|m| count(GenSpec::all(n, m))).sum();
        let oracle = common::brute_force_class_count(n);
        ensure(
            generated == expected && oracle == expected,
            format!("n={n}: generator {generated}, brute force {oracle}, expected {expected}"),
        )?;
        let forms: BTreeSet<_> = common::all_classes(n).iter().map(canonical_form).collect();
        ensure(forms.len() == expected, format!("n={n}: duplicate classes"))?;
        counts.push(expected.to_string());
    }
    Ok(format!(
        "{round_trips} graph6 round trips; 1000 relabelings keep the canonical form; class counts {}",
        counts.join("/")
    ))
}

fn main() -> ExitCode {
    let mut failures = 0;
    let mut line = |id: u32, name: &str, start: Instant, outcome: Outcome| {
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {id} ({name}): {detail} [{secs:.1}s]"),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {id} ({name}): {why} [{secs:.1}s]");
            }
        }
    };

    let t = Instant::now();
    line(1, "small values", t, small_values());

    let t = Instant::now();
    let r7 = search(7, &cross_checked());
    line(2, "seven-vertex lower bound", t, r7.as_ref().map_err(Clone::clone).and_then(seven_vertex_bound));

    let t = Instant::now();
    let core: Result<Vec<SearchReport>, String> = (8..=10).map(|n| search(n, &cross_checked())).collect();
    line(3, "core tier n=8..10", t, core.as_ref().map_err(Clone::clone).and_then(|r| core_tier(r)));

    let t = Instant::now();
    line(4, "extended tier n=11,12", t, extended_tier());

    let t = Instant::now();
    line(5, "brute-force oracle equivalence", t, oracle_equivalence());

    let t = Instant::now();
    let outcome = match (&r7, &core) {
        (Ok(r7), Ok(core)) => {
            let window = SearchOptions { mode: Mode::Window, ..SearchOptions::default() };
            (8..=10)
                .map(|n| search(n, &window))
                .collect::<Result<Vec<_>, _>>()
                .and_then(|w| {
                    let all: Vec<&SearchReport> = std::iter::once(r7).chain(core.iter()).collect();
                    window_replication(&all, &w, core)
                })
        }
        _ => Err("criteria 2-3 searches failed".into()),
    };
    line(6, "window replication", t, outcome);

    let t = Instant::now();
    line(7, "Turán number", t, turan());

    let t = Instant::now();
    line(8, "constructions", t, constructions());

    let t = Instant::now();
    line(9, "certificates", t, certificates());

    let t = Instant::now();
    line(10, "infrastructure", t, infrastructure());

    if failures == 0 {
        println!("acceptance: all 10 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
