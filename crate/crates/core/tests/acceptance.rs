//! Acceptance suite: one PASS/FAIL line per criterion, zero tolerance.
//!
//! Runs without the libtest harness so the lines are always printed. The
//! process fails when the set of failing criteria differs from
//! [`KNOWN_FAILING`], so a regression and an unexpected fix are both loud.

use std::process::ExitCode;
use std::time::Instant;

use xg_core::alternator::{
    depth, enumerate_alternators, find_standard_alternator, is_admissible, switch_along, weakly_admissible_intervals,
    xg_edge_characterization_k2,
};
use xg_core::coloring::{
    chromatic_number, CriticalOptions, CriticalityContext, ExactCheck, SolverConfig, Verdict,
};
use xg_core::coloring::certify::verify_edge_critical_on;
use xg_core::cyclic::{consecutive_pairs, is_interlacing};
use xg_core::graphs::{interlacing_subgraph, kneser_graph, kneser_vertices, schrijver_graph, schrijver_vertices, xg_graph};
use xg_core::mycielski::{homomorphism_f, mycielski_tower, verify_homomorphism};
use xg_core::{CyclicInterval, ElemSet, GroundSet, LabeledGraph, Openness};

const MATRIX: [(u32, u32); 11] = [
    (6, 2),
    (7, 2),
    (8, 2),
    (9, 2),
    (10, 2),
    (8, 3),
    (9, 3),
    (10, 3),
    (11, 3),
    (10, 4),
    (11, 4),
];

/// Every instance with `n ≤ 10` and `k ∈ {2, 3}`.
const SMALL: [(u32, u32); 10] = [(6, 2), (7, 2), (8, 2), (9, 2), (10, 2), (6, 3), (7, 3), (8, 3), (9, 3), (10, 3)];

/// Criteria expected to fail; the lemma suite prints its counterexamples.
const KNOWN_FAILING: &[u32] = &[10];

const SAMPLE_SEED: u64 = 20_240_601;

fn g(n: u32, k: u32) -> GroundSet {
    GroundSet::new(n, k).unwrap()
}

fn chi(graph: &LabeledGraph) -> Option<usize> {
    chromatic_number(graph, SolverConfig::default()).unwrap().chi()
}

fn disjoint_pairs(vs: &[ElemSet]) -> Vec<(ElemSet, ElemSet)> {
    let mut out = Vec::new();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            if a.is_disjoint(b) {
                out.push((a, b));
            }
        }
    }
    out
}

fn closed(d: u32, c: u32, gs: &GroundSet) -> CyclicInterval {
    CyclicInterval::closed(d, c, gs).unwrap()
}

fn count(start: u32, end: u32, openness: Openness, x: ElemSet, gs: &GroundSet) -> u32 {
    CyclicInterval::new(start, end, openness, gs).unwrap().count(x)
}

fn subsets_of_size(set: ElemSet, k: u32) -> Vec<ElemSet> {
    let elems = set.to_vec();
    (0u64..1 << elems.len())
        .filter(|mask| mask.count_ones() == k)
        .map(|mask| elems.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect())
        .collect()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn chromatic_matrix() -> (Outcome, Outcome) {
    let mut xg_bad = Vec::new();
    let mut sandwich_bad = Vec::new();
    for (n, k) in MATRIX {
        let gs = g(n, k);
        let want = Some((n - 2 * k + 2) as usize);
        let (kg, sg, xg) = (chi(&kneser_graph(&gs)), chi(&schrijver_graph(&gs)), chi(&xg_graph(&gs)));
        if xg != want {
            xg_bad.push(format!("XG({n},{k})={xg:?}"));
        }
        if kg != want || sg != want || xg != want {
            sandwich_bad.push(format!("({n},{k}): KG {kg:?} SG {sg:?} XG {xg:?}"));
        }
    }
    let c1 = outcome(
        xg_bad.is_empty(),
        if xg_bad.is_empty() {
            format!("chi(XG) = n-2k+2 on all {} instances", MATRIX.len())
        } else {
            xg_bad.join(", ")
        },
    );
    let c2 = outcome(
        sandwich_bad.is_empty(),
        if sandwich_bad.is_empty() {
            "chi(KG) = chi(SG) = chi(XG) on every instance".to_string()
        } else {
            sandwich_bad.join("; ")
        },
    );
    (c1, c2)
}

fn edge_criticality() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    let (mut edges, mut exact) = (0, 0);
    for (n, k) in MATRIX {
        let check = if [(6, 2), (7, 2), (8, 3)].contains(&(n, k)) {
            ExactCheck::All
        } else {
            ExactCheck::Auto {
                size: 25,
                seed: SAMPLE_SEED,
            }
        };
        let opts = CriticalOptions {
            exact: check,
            ..Default::default()
        };
        let xg = xg_graph(&g(n, k));
        let report = verify_edge_critical_on(&xg, &opts).unwrap();
        edges += report.edge_count;
        exact += report.exact_checked;
        let enough = report.exact_checked >= 25.min(report.edge_count);
        let all = check != ExactCheck::All || report.exact_checked == report.edge_count;
        if report.verdict != Verdict::Pass || !enough || !all {
            pass = false;
            notes.push(format!(
                "({n},{k}) {:?}: {} failed edges, {} violations, {} exact unknown",
                report.verdict, report.failed_edges, report.violations, report.exact_unknown
            ));
        }
    }
    let detail = if pass {
        format!("{edges} edges properly colored, exact chi(XG-AB) = n-2k+1 on {exact} of them (seed {SAMPLE_SEED})")
    } else {
        notes.join("; ")
    };
    outcome(pass, detail)
}

fn interlacing() -> Outcome {
    let cases = [((8, 2), 4), ((9, 3), 3), ((10, 3), 4)];
    let got: Vec<_> = cases
        .iter()
        .map(|&((n, k), want)| (n, k, want, chi(&interlacing_subgraph(&g(n, k)))))
        .collect();
    let pass = got.iter().all(|&(_, _, want, got)| got == Some(want));
    let detail = got
        .iter()
        .map(|(n, k, want, got)| format!("({n},{k}) {got:?}/{want}"))
        .collect::<Vec<_>>()
        .join(", ");
    outcome(pass, detail)
}

fn homomorphism() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (n, k) in [(7, 2), (8, 2), (8, 3), (9, 3), (9, 4)] {
        let inst = homomorphism_f(&g(n, k)).unwrap();
        let report = verify_homomorphism(&inst.source, &inst.target, &inst.map).unwrap();
        checked += report.edges_checked;
        if !report.is_homomorphism() {
            bad.push(format!("({n},{k}): {} violations", report.violations.len()));
        }
    }
    let detail = if bad.is_empty() {
        format!("{checked} Mycielski edges map to edges")
    } else {
        bad.join(", ")
    };
    outcome(bad.is_empty(), detail)
}

fn towers() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for t in 2..=5u32 {
        let len = (t - 2) as usize;
        for code in 0..3usize.pow(len as u32) {
            let radii: Vec<u32> = (0..len).map(|i| (code / 3usize.pow(i as u32) % 3) as u32 + 1).collect();
            let tower = mycielski_tower(t, &radii).unwrap();
            if tower.len() > 200 {
                continue;
            }
            count += 1;
            let got = chi(&tower);
            if got != Some(t as usize) {
                bad.push(format!("t={t} radii={radii:?}: {got:?}"));
            }
        }
    }
    let detail = if bad.is_empty() {
        format!("chi = t for all {count} towers with t <= 5")
    } else {
        bad.join(", ")
    };
    outcome(bad.is_empty(), detail)
}

fn oracle_equivalence() -> Outcome {
    let (mut pairs, mut bad) = (0, 0);
    for (n, k) in [(8, 2), (9, 2), (9, 3), (10, 3)] {
        let gs = g(n, k);
        for (a, b) in disjoint_pairs(&schrijver_vertices(&gs)) {
            pairs += 1;
            let all = enumerate_alternators(a, b, &gs).unwrap();
            let ok = match find_standard_alternator(a, b, &gs).unwrap() {
                Some(alt) => all.contains(&alt) && alt.pairs().iter().all(|p| (a | b).contains(p.d + 1)),
                None => all.is_empty(),
            };
            bad += usize::from(!ok);
        }
    }
    outcome(bad == 0, format!("{pairs} disjoint pairs, {bad} discrepancies"))
}

fn k2_characterization() -> Outcome {
    let (mut pairs, mut bad) = (0, 0);
    for n in 6..=12 {
        let gs = g(n, 2);
        for (a, b) in disjoint_pairs(&schrijver_vertices(&gs)) {
            pairs += 1;
            let general = find_standard_alternator(a, b, &gs).unwrap().is_some();
            bad += usize::from(general != xg_edge_characterization_k2(a, b, &gs).unwrap());
        }
    }
    outcome(bad == 0, format!("{pairs} disjoint pairs, {bad} discrepancies"))
}

fn figure_fixture() -> Outcome {
    let gs = g(16, 4);
    let a = ElemSet::from_elems([4, 9, 12, 15]);
    let b = ElemSet::from_elems([6, 8, 13, 16]);
    let alt = find_standard_alternator(a, b, &gs).unwrap();
    let pairs: Option<Vec<_>> = alt.as_ref().map(|x| x.pairs().iter().map(|p| (p.c, p.d)).collect());
    let mut all: Vec<ElemSet> = enumerate_alternators(a, b, &gs).unwrap().iter().map(|x| x.as_set()).collect();
    all.sort();
    let mut want = vec![ElemSet::from_elems([2, 3, 7, 11]), ElemSet::from_elems([2, 3, 7, 10])];
    want.sort();
    let pass = alt.as_ref().map(|x| x.as_set()) == Some(ElemSet::from_elems([2, 3, 7, 11]))
        && pairs.as_deref() == Some(&[(2, 11), (3, 7)][..])
        && all == want;
    let shown: Vec<String> = all.iter().map(|s| s.to_string()).collect();
    outcome(pass, format!("standard pairs {pairs:?}, all alternators {}", shown.join(" ")))
}

/// Counterexample counts of one lemma.
struct Tally {
    name: &'static str,
    checked: usize,
    failed: usize,
    example: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            checked: 0,
            failed: 0,
            example: None,
        }
    }

    fn check(&mut self, ok: bool, example: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.example.is_none() {
                self.example = Some(example());
            }
        }
    }
}

fn lemma_suites() -> (Outcome, Vec<Tally>) {
    let mut sep = Tally::new("obs:sep");
    let mut intervals = Tally::new("l:intervals");
    let mut admissible = Tally::new("obs:admissible");
    let mut placement = Tally::new("l:placement");
    let mut depth_unique = Tally::new("l:depth");
    let mut disbalance = Tally::new("l:disbalance");
    let mut irregular = Tally::new("p:irregular");
    let mut half = Tally::new("p:half");
    let mut depth_control = Tally::new("l:depth-control");
    let mut depth_indep = Tally::new("l:depth-indep");

    for (n, k) in SMALL {
        let gs = g(n, k);
        let nested = |p: (u32, u32), q: (u32, u32)| closed(p.0, p.1, &gs).mask().is_subset(closed(q.0, q.1, &gs).mask());

        for (a, b) in disjoint_pairs(&kneser_vertices(&gs)) {
            let ivs = weakly_admissible_intervals(a, b, &gs);
            for &(d, c) in &ivs {
                sep.check(c <= k && k < d, || format!("[{d},{c}] for {a} {b}"));
                for &(d2, c2) in &ivs {
                    intervals.check(nested((d, c), (d2, c2)) || nested((d2, c2), (d, c)), || {
                        format!("[{d},{c}] [{d2},{c2}] for {a} {b}")
                    });
                    if nested((d2, c2), (d, c)) && c2 < c {
                        let ab = a | b;
                        let mut ok = CyclicInterval::open_right(d, d2, &gs).unwrap().count(ab) >= 1;
                        if is_admissible(a, b, &closed(d, c, &gs)) {
                            ok &= CyclicInterval::open(d, d2, &gs).unwrap().count(ab) >= 2;
                        }
                        intervals.check(ok, || format!("[{d2},{c2}] in [{d},{c}] for {a} {b}"));
                    }
                }
            }
        }

        let sg_vertices = schrijver_vertices(&gs);
        let xg = xg_graph(&gs);
        for (a, b) in disjoint_pairs(&sg_vertices) {
            let weak = weakly_admissible_intervals(a, b, &gs);
            let adm: Vec<_> = weak
                .iter()
                .map(|&(d, c)| closed(d, c, &gs))
                .filter(|iv| is_admissible(a, b, iv))
                .collect();
            let mut sequences: Vec<Vec<CyclicInterval>> = adm.iter().map(|&iv| vec![iv]).collect();
            sequences.push(adm.clone());
            sequences.push(adm.iter().rev().copied().collect());
            for seq in sequences {
                let (a2, b2) = switch_along(a, b, &seq);
                let ok = gs.is_vertex(a2)
                    && gs.is_vertex(b2)
                    && a2.is_disjoint(b2)
                    && weakly_admissible_intervals(a2, b2, &gs) == weak;
                admissible.check(ok, || format!("{a} {b} -> {a2} {b2}"));
            }

            // l:disbalance: a disbalanced disjoint pair is never an edge
            let adjacent = find_standard_alternator(a, b, &gs).unwrap().is_some();
            for (x, y) in [(a, b), (b, a)] {
                for c in 1..k {
                    for d in (1..=n).filter(|&d| d != c) {
                        for openness in [Openness::Closed, Openness::OpenRight] {
                            let hit = count(d, c, openness, x, &gs) > c && count(d, c, openness, y, &gs) < c;
                            if hit {
                                disbalance.check(!adjacent, || format!("{x} {y} on {d},{c} {openness:?}"));
                            }
                        }
                    }
                }
            }

            if !adjacent || is_interlacing(a, b, &gs) {
                continue;
            }
            let ab = a | b;
            for alt in enumerate_alternators(a, b, &gs).unwrap() {
                for (x, y) in consecutive_pairs(alt.partners().with(k).with(n), &gs).unwrap() {
                    if (x, y) != (n, k) {
                        placement.check(closed(x, y, &gs).count(ab) >= 2, || format!("<{x},{y}> for {a} {b}"));
                    }
                }
                for (x, y) in consecutive_pairs(ab, &gs).unwrap() {
                    let inside = CyclicInterval::open(x, y, &gs).unwrap().count(alt.as_set());
                    placement.check((inside % 2 == 1) == (a.contains(x) == a.contains(y)), || {
                        format!("<{x},{y}> parity for {a} {b}")
                    });
                }
            }
        }

        for &x in &sg_vertices {
            for d in k..=n {
                let hits = (1..k).filter(|&c| !x.contains(c) && closed(d, c, &gs).count(x) == c).count();
                depth_unique.check(hits <= 1 && depth(x, d, &gs).is_ok(), || format!("{x} at {d}"));
            }
        }

        for (ea, eb) in xg.edges() {
            let ctx = CriticalityContext::new(xg.subset(ea).unwrap(), xg.subset(eb).unwrap(), &gs).unwrap();
            let m = ctx.m();
            let w = ctx.w();
            for x in subsets_of_size(w, k) {
                let cls = ctx.classify(x);
                if !cls.regular {
                    let witness = !cls.balanced_pairs.is_empty()
                        || cls.left_closed.iter().chain(&cls.right_closed).any(|s| s.min_heavy || s.max_light);
                    irregular.check(witness, || format!("{x} in context {} {}", ctx.a(), ctx.b()));
                }
                let pair = |i: usize| cls.balanced_pairs.contains(&i);
                let more_than_half = |set: ElemSet| 2 * (x & set).len() > set.len();
                for i in 1..=m {
                    let (c, d) = (ElemSet::from_elems([ctx.c(i)]), ElemSet::from_elems([ctx.d(i)]));
                    let (left, right) = (cls.left_closed[i - 1], cls.right_closed[i - 1]);
                    let (here, next) = (ctx.u(i), ctx.u(i + 1));
                    let what = || format!("{x} at i = {i} in context {} {}", ctx.a(), ctx.b());
                    if left.min_heavy {
                        half.check((i > 1 && pair(i - 1)) || more_than_half(here | d), what);
                    }
                    if right.min_heavy {
                        half.check((i > 1 && pair(i - 1)) || more_than_half(here | c), what);
                    }
                    if left.max_light {
                        half.check((i < m && pair(i + 1)) || more_than_half(next | c), what);
                    }
                    if right.max_light {
                        half.check((i < m && pair(i + 1)) || more_than_half(next | d), what);
                    }
                }
            }

            for (u, v) in xg.edges() {
                let (x, y) = (xg.subset(u).unwrap(), xg.subset(v).unwrap());
                if (u, v) == (ea, eb) || !(x | y).is_subset(w) {
                    continue;
                }
                let controls = xg.alternator(u, v).unwrap().controls();
                for (x, y) in [(x, y), (y, x)] {
                    if let Some(delta) = ctx.vertex_depth(x) {
                        depth_control.check(controls.contains(delta), || {
                            format!(
                                "XG({n},{k}) - {}{}: X = {x}, Y = {y}, depth {delta}, controls {controls}",
                                ctx.a(),
                                ctx.b()
                            )
                        });
                    }
                }
            }

            let with_depth: Vec<(usize, u32)> = (0..xg.len())
                .filter(|&u| xg.subset(u).unwrap().is_subset(w))
                .filter_map(|u| ctx.vertex_depth(xg.subset(u).unwrap()).map(|d| (u, d)))
                .collect();
            for (i, &(u, du)) in with_depth.iter().enumerate() {
                for &(v, dv) in &with_depth[i + 1..] {
                    let (x, y) = (xg.subset(u).unwrap(), xg.subset(v).unwrap());
                    if du == dv && x.is_disjoint(y) {
                        let in_g = xg.has_edge(u, v) && (u.min(v), u.max(v)) != (ea, eb);
                        depth_indep.check(!in_g, || format!("{x} {y} depth {du}"));
                    }
                }
            }
        }
    }

    let tallies = vec![
        sep,
        intervals,
        admissible,
        placement,
        depth_unique,
        disbalance,
        irregular,
        half,
        depth_control,
        depth_indep,
    ];
    let pass = tallies.iter().all(|t| t.failed == 0 && t.checked > 0);
    let summary = tallies
        .iter()
        .map(|t| format!("{} {}/{}", t.name, t.checked - t.failed, t.checked))
        .collect::<Vec<_>>()
        .join(", ");
    (outcome(pass, summary), tallies)
}

fn main() -> ExitCode {
    let mut results: Vec<(u32, &str, Outcome, f64)> = Vec::new();
    let mut run = |id: u32, name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let out = f();
        let secs = start.elapsed().as_secs_f64();
        println!(
            "criterion {id:>2} {}: {name} ({secs:.1}s) -- {}",
            if out.pass { "PASS" } else { "FAIL" },
            out.detail
        );
        results.push((id, name, out, secs));
    };

    let mut sandwich = None;
    run(1, "chromatic number of XG", &mut || {
        let (xg, all) = chromatic_matrix();
        sandwich = Some(all);
        xg
    });
    run(2, "KG, SG and XG agree (timed with 1)", &mut || sandwich.take().unwrap());
    run(3, "edge-criticality", &mut edge_criticality);
    run(4, "interlacing subgraph", &mut interlacing);
    run(5, "Mycielski homomorphism", &mut homomorphism);
    run(6, "Mycielski towers", &mut towers);
    run(7, "finder vs brute-force alternators", &mut oracle_equivalence);
    run(8, "k = 2 characterization", &mut k2_characterization);
    run(9, "figure fixture", &mut figure_fixture);
    let mut tallies = Vec::new();
    run(10, "lemma property suites", &mut || {
        let (out, t) = lemma_suites();
        tallies = t;
        out
    });
    for t in tallies.iter().filter(|t| t.failed > 0) {
        println!(
            "    {}: {} counterexamples, e.g. {}",
            t.name,
            t.failed,
            t.example.as_deref().unwrap_or("?")
        );
    }

    let failing: Vec<u32> = results.iter().filter(|r| !r.2.pass).map(|r| r.0).collect();
    let passed = results.len() - failing.len();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if failing == KNOWN_FAILING {
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing set {failing:?} differs from the expected {KNOWN_FAILING:?}");
        ExitCode::FAILURE
    }
}
