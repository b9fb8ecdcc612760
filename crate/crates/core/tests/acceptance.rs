//! Acceptance suite: one line per criterion, non-zero exit on any failure.
//! Run with `cargo test -p chromatic-core --test acceptance`.

mod common;

use std::time::{Duration, Instant};

use chromatic_core::algebra::{AtomSet, AtomStructure};
use chromatic_core::constructions::{
    chain, construct, pentagon, walecki, walecki_witness, Construction, ConstructionRequest,
};
use chromatic_core::geometry::{
    affine_plane, affine_plane_of_order, drop_points, linear_space_from_colouring, near_pencil,
    Geometry,
};
use chromatic_core::quasigroup::standard_qn;
use chromatic_core::search::{
    certify_cell, default_max_m, enumerate, search, summary_table, SearchOptions, SearchStatus,
};
use chromatic_core::{are_isomorphic, EdgeColouring, Equivalence, Level, Quasigroup, Signature};

use common::{all_type_sets, distinct, oracle_passes};

const C1_MAX_PER_N: Duration = Duration::from_secs(1);
const C2_TOTAL: Duration = Duration::from_secs(60);
const C4_TOTAL: Duration = Duration::from_secs(10);
const C5_TOTAL: Duration = Duration::from_secs(600);
const C9_MIN_COLOURINGS: usize = 1000;
const C9_PER_SHAPE: u64 = 200;
/// Per-cell budget for the table rendered in criterion 10.
const C10_TABLE_NODES: u64 = 2_000_000;

type Check = Result<(), Vec<String>>;
type Criterion = (&'static str, fn() -> Check);

struct Failures(Vec<String>);

impl Failures {
    fn new() -> Self {
        Failures(Vec::new())
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.0.push(what());
        }
    }

    fn finish(self) -> Check {
        if self.0.is_empty() {
            Ok(())
        } else {
            Err(self.0)
        }
    }
}

fn sig(s: &[usize], n: usize) -> Signature {
    Signature::new(s, n).expect("valid signature")
}

fn passes(col: &EdgeColouring, s: &[usize], n: usize, level: Level) -> bool {
    col.verify(sig(s, n), level)
        .map(|r| r.passed)
        .unwrap_or(false)
}

fn criterion_1() -> Check {
    let mut f = Failures::new();
    for n in [3, 5, 7, 9, 11, 13, 15] {
        let start = Instant::now();
        let q = standard_qn(n).expect("odd order");
        for (name, col) in [("lambda1", q.lambda1()), ("lambda2", q.lambda2())] {
            let col = col.expect("valid quasigroup");
            f.check(passes(&col, &[3], n, Level::Qualitative), || {
                format!("{name}(Q_{n}) fails")
            });
            f.check(oracle_passes(&col, &[3], n, Level::Qualitative), || {
                format!("{name}(Q_{n}) rejected by the oracle")
            });
        }
        let elapsed = start.elapsed();
        f.check(elapsed < C1_MAX_PER_N, || format!("n={n} took {elapsed:?}"));
    }
    f.finish()
}

fn criterion_2() -> Check {
    let mut f = Failures::new();
    let start = Instant::now();
    for n in 3..=7 {
        let out = search(sig(&[3], n), Level::Qualitative, &SearchOptions::default())
            .expect("search runs");
        if n % 2 == 1 {
            match &out.status {
                SearchStatus::Found(col) => f
                    .check(oracle_passes(col, &[3], n, Level::Qualitative), || {
                        format!("n={n}: found colouring rejected by the oracle")
                    }),
                other => f.check(false, || format!("n={n}: expected Found, got {other:?}")),
            }
        } else {
            let want = SearchStatus::ExhaustedUpTo(default_max_m(n));
            f.check(out.status == want, || {
                format!("n={n}: expected {want:?}, got {:?}", out.status)
            });
        }
    }
    let elapsed = start.elapsed();
    f.check(elapsed < C2_TOTAL, || format!("took {elapsed:?}"));
    f.finish()
}

fn without(col: &EdgeColouring, v: usize) -> EdgeColouring {
    let keep: Vec<usize> = (0..col.vertex_count()).filter(|&x| x != v).collect();
    col.induced(&keep)
}

fn criterion_3() -> Check {
    let mut f = Failures::new();
    let s = sig(&[3], 5);
    let opts = SearchOptions::default();
    let e5 = enumerate(s, Level::Qualitative, 5, &opts).expect("enumerate m=5");
    let e6 = enumerate(s, Level::Qualitative, 6, &opts).expect("enumerate m=6");
    f.check(!e5.partial && !e6.partial, || {
        "enumeration incomplete".into()
    });
    f.check(!e5.colourings.is_empty(), || {
        "no m=5 representations".into()
    });
    f.check(!e6.colourings.is_empty(), || {
        "no m=6 representations".into()
    });
    for (i, c5) in e5.colourings.iter().enumerate() {
        let extensions = e6
            .colourings
            .iter()
            .filter(|c6| {
                (0..6).any(|v| are_isomorphic(&without(c6, v), c5, Equivalence::VertexAndColour))
            })
            .count();
        f.check(extensions == 1, || {
            format!("m=5 class {i} extends to {extensions} m=6 classes")
        });
    }
    for (i, c6) in e6.colourings.iter().enumerate() {
        match quasigroup_round_trip(c6) {
            Ok(()) => {}
            Err(e) => f.check(false, || format!("m=6 class {i}: {e}")),
        }
    }
    f.finish()
}

fn quasigroup_round_trip(col: &EdgeColouring) -> Result<(), String> {
    let q = Quasigroup::from_colouring(col).map_err(|e| e.to_string())?;
    let report = q.validate();
    if !report.is_valid() {
        return Err("recovered table is not a commutative idempotent quasigroup".into());
    }
    let back = q.lambda2().map_err(|e| e.to_string())?;
    if !are_isomorphic(&back, col, Equivalence::VertexAndColour) {
        return Err("lambda2 of the recovered quasigroup is not isomorphic".into());
    }
    let reread = Quasigroup::from_colouring(&back).map_err(|e| e.to_string())?;
    if !reread.is_isomorphic(&q) {
        return Err("quasigroup read back from lambda2 is not isomorphic".into());
    }
    Ok(())
}

fn criterion_4() -> Check {
    let mut f = Failures::new();
    let start = Instant::now();
    for n in 1..=15 {
        let col = walecki(n);
        f.check(col.vertex_count() == 2 * n, || format!("n={n}: wrong size"));
        f.check(passes(&col, &[2, 3], n, Level::Qualitative), || {
            format!("n={n}: fails qualitative")
        });
        let m = col.vertex_count();
        let mut mono = 0;
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    if distinct(col.colour(i, j), col.colour(j, k), col.colour(i, k)) == 1 {
                        mono += 1;
                    }
                }
            }
        }
        f.check(mono == 0, || {
            format!("n={n}: {mono} monochromatic triangles")
        });
        for i in 1..=n {
            for j in i + 1..=n {
                for k in 1..=n {
                    match walecki_witness(n, i, j, k) {
                        Ok([l, a, b]) => {
                            let (l, a, b) = (l - 1, a - 1, b - 1);
                            let got = [col.colour(l, a), col.colour(l, b), col.colour(a, b)];
                            f.check(got == [i, j, k], || {
                                format!("n={n} ({i},{j},{k}): read back {got:?}")
                            });
                        }
                        Err(e) => f.check(false, || format!("n={n} ({i},{j},{k}): {e}")),
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    f.check(elapsed < C4_TOTAL, || format!("took {elapsed:?}"));
    f.finish()
}

fn criterion_5() -> Check {
    let mut f = Failures::new();
    let start = Instant::now();
    let out =
        search(sig(&[2], 3), Level::Qualitative, &SearchOptions::default()).expect("search runs");
    let elapsed = start.elapsed();
    let want = SearchStatus::ExhaustedUpTo(12);
    f.check(out.status == want, || {
        format!("{{2}} n=3: expected {want:?}, got {:?}", out.status)
    });
    f.check(elapsed < C5_TOTAL, || {
        format!("{{2}} n=3 search took {elapsed:?}")
    });
    let p = pentagon();
    f.check(passes(&p, &[2], 2, Level::Strong), || {
        "pentagon fails strong".into()
    });
    f.check(oracle_passes(&p, &[2], 2, Level::Strong), || {
        "pentagon rejected by the oracle".into()
    });
    for n in 2..=10 {
        let c = chain(n);
        f.check(passes(&c, &[2], n, Level::Feeble), || {
            format!("chain({n}) fails feeble")
        });
        f.check(oracle_passes(&c, &[2], n, Level::Feeble), || {
            format!("chain({n}) rejected by the oracle")
        });
    }
    f.finish()
}

fn geometry_instances() -> Vec<(String, Geometry)> {
    let mut out = Vec::new();
    for p in [3, 5, 7] {
        let plane = affine_plane(p).expect("prime order");
        for k in 1..=p - 2 {
            let dropped: Vec<usize> = (0..k).collect();
            out.push((
                format!("AG(2,{p}) minus {k}"),
                drop_points(&plane, &dropped).expect("drop"),
            ));
        }
        out.push((format!("AG(2,{p})"), plane));
    }
    for q in [4, 8, 9] {
        out.push((
            format!("AG(2,{q})"),
            affine_plane_of_order(q).expect("prime power"),
        ));
    }
    for n in 3..=10 {
        out.push((format!("near pencil {n}"), near_pencil(n).expect("n >= 3")));
    }
    out
}

fn criterion_6() -> Check {
    let mut f = Failures::new();
    for p in [3, 5, 7] {
        let col = affine_plane(p)
            .and_then(|g| g.to_colouring())
            .expect("plane colouring");
        f.check(passes(&col, &[1, 3], p + 1, Level::Strong), || {
            format!("AG(2,{p}) fails strong")
        });
        f.check(oracle_passes(&col, &[1, 3], p + 1, Level::Strong), || {
            format!("AG(2,{p}) rejected by the oracle")
        });
    }
    for q in [3, 5, 7] {
        let plane = affine_plane(q).expect("prime order");
        for k in 0..=q - 2 {
            let dropped: Vec<usize> = (0..k).collect();
            match drop_points(&plane, &dropped) {
                Ok(g) => f.check(g.block_count() == q + k + 1, || {
                    format!("q={q} k={k}: {} blocks", g.block_count())
                }),
                Err(e) => f.check(false, || format!("q={q} k={k}: {e}")),
            }
        }
    }
    for n in 4..=10 {
        match construct(ConstructionRequest {
            sig: sig(&[1, 3], n),
            level: Level::Qualitative,
        }) {
            Construction::Built(col) => {
                f.check(passes(&col, &[1, 3], n, Level::Qualitative), || {
                    format!("n={n}: fails verify")
                });
                f.check(oracle_passes(&col, &[1, 3], n, Level::Qualitative), || {
                    format!("n={n}: rejected by the oracle")
                });
            }
            other => f.check(false, || format!("n={n}: not built: {other:?}")),
        }
    }
    for n in 3..=10 {
        let col = near_pencil(n)
            .and_then(|g| g.to_colouring())
            .expect("near pencil colouring");
        f.check(passes(&col, &[1, 3], n, Level::Feeble), || {
            format!("near pencil {n} fails feeble")
        });
        match col.verify(sig(&[1, 3], n), Level::Qualitative) {
            Ok(r) => {
                let mono_missing = r
                    .missing_required
                    .items
                    .iter()
                    .any(|t| t[0] == t[1] && t[1] == t[2]);
                f.check(!r.passed && mono_missing, || {
                    format!("near pencil {n}: qualitative failure lacks a missing monochromatic multiset")
                });
            }
            Err(e) => f.check(false, || format!("near pencil {n}: {e}")),
        }
    }
    f.finish()
}

fn criterion_7() -> Check {
    let mut f = Failures::new();
    let mut instances = geometry_instances();
    for n in 4..=10 {
        for level in [Level::Qualitative, Level::Strong] {
            if let Construction::Built(col) = construct(ConstructionRequest {
                sig: sig(&[1, 3], n),
                level,
            }) {
                match linear_space_from_colouring(&col) {
                    Ok(g) => instances.push((format!("construct {{1,3}} n={n} {level}"), g)),
                    Err(e) => f.check(false, || format!("{{1,3}} n={n} {level}: {e}")),
                }
            }
        }
    }
    for (name, g) in &instances {
        let back = g
            .to_colouring()
            .and_then(|c| linear_space_from_colouring(&c));
        match back.and_then(|b| b.is_isomorphic(g)) {
            Ok(true) => {}
            Ok(false) => f.check(false, || format!("{name}: round trip not isomorphic")),
            Err(e) => f.check(false, || format!("{name}: {e}")),
        }
    }
    for n in [3, 5, 7, 9] {
        let col = standard_qn(n).and_then(|q| q.lambda2()).expect("lambda2");
        if let Err(e) = quasigroup_round_trip(&col) {
            f.check(false, || format!("Q_{n}: {e}"));
        }
    }
    let e6 = enumerate(
        sig(&[3], 5),
        Level::Qualitative,
        6,
        &SearchOptions::default(),
    )
    .expect("enumerate");
    for (i, col) in e6.colourings.iter().enumerate() {
        if let Err(e) = quasigroup_round_trip(col) {
            f.check(false, || format!("m=6 class {i}: {e}"));
        }
    }
    f.finish()
}

/// `a_i ; a_j` in closed form, per type set.
fn table_composition(s: &[usize], n: usize, i: usize, j: usize) -> Vec<usize> {
    let all: Vec<usize> = (0..=n).collect();
    let diversity: Vec<usize> = (1..=n).collect();
    let not = |x: usize| all.iter().copied().filter(|&a| a != x).collect::<Vec<_>>();
    let same = i == j;
    match s {
        [1, 2, 3] => {
            if same {
                all.clone()
            } else {
                diversity.clone()
            }
        }
        [2, 3] => {
            if same {
                not(i)
            } else {
                diversity.clone()
            }
        }
        [1, 3] | [3] if !same => diversity
            .iter()
            .copied()
            .filter(|&a| a != i && a != j)
            .collect(),
        [1, 3] | [1] if same => vec![0, i],
        [3] | [] if same => vec![0],
        [1, 2] => {
            if same {
                all.clone()
            } else {
                vec![i, j]
            }
        }
        [2] => {
            if same {
                not(i)
            } else {
                vec![i, j]
            }
        }
        [1] | [] => vec![],
        _ => unreachable!("every type set is listed"),
    }
}

fn criterion_8() -> Check {
    let mut f = Failures::new();
    for s in all_type_sets() {
        for n in 1..=8 {
            let atoms = AtomStructure::chromatic(sig(&s, n));
            f.check(atoms.check_na().is_valid(), || {
                format!("S={s:?} n={n}: NA axioms fail")
            });
        }
    }
    for n in 2..=6 {
        let assoc = AtomStructure::chromatic(sig(&[3], n))
            .is_associative()
            .map(|a| a.holds());
        f.check(assoc == Ok(n <= 3), || {
            format!("{{3}} n={n}: associativity {assoc:?}, expected {}", n <= 3)
        });
        let assoc = AtomStructure::chromatic(sig(&[2], n))
            .is_associative()
            .map(|a| a.holds());
        f.check(assoc == Ok(true), || {
            format!("{{2}} n={n}: associativity {assoc:?}, expected true")
        });
    }
    for s in all_type_sets() {
        for n in 1..=6 {
            let atoms = AtomStructure::chromatic(sig(&s, n));
            for i in 1..=n {
                for j in 1..=n {
                    let got = atoms.compose(&atoms.singleton(i), &atoms.singleton(j));
                    let want = AtomSet::from_atoms(n + 1, table_composition(&s, n, i, j));
                    f.check(got == want, || {
                        format!("S={s:?} n={n}: a{i};a{j} = {got:?}, expected {want:?}")
                    });
                }
            }
        }
    }
    f.finish()
}

/// Evenly spaced colourings of `K_m` with colours `1..=n`, indexed in base `n`.
fn sweep(m: usize, n: usize, per_shape: u64) -> Vec<EdgeColouring> {
    let edges = m * (m - 1) / 2;
    let total = (n as u64).checked_pow(edges as u32).unwrap_or(u64::MAX);
    let count = total.min(per_shape);
    (0..count)
        .map(|k| {
            let mut index = (k as u128 * total as u128 / count as u128) as u64;
            let mut colours = Vec::with_capacity(edges);
            for _ in 0..edges {
                colours.push((index % n as u64) as usize + 1);
                index /= n as u64;
            }
            let pairs = (1..m).flat_map(|j| (0..j).map(move |i| (i, j)));
            let edges: Vec<_> = pairs.zip(colours).map(|((i, j), c)| (i, j, c)).collect();
            EdgeColouring::from_edges(m, n, &edges).expect("colours in range")
        })
        .collect()
}

fn criterion_9() -> Check {
    let mut f = Failures::new();
    let sets = all_type_sets();
    let mut checked = 0;
    let mut feeble_passes = 0;
    for n in 1..=3 {
        for m in 2..=6 {
            for col in sweep(m, n, C9_PER_SHAPE) {
                checked += 1;
                let mut feeble_ok = Vec::new();
                for s in &sets {
                    let [fe, qu, st] = Level::ALL.map(|l| passes(&col, s, n, l));
                    for (level, got) in Level::ALL.into_iter().zip([fe, qu, st]) {
                        f.check(got == oracle_passes(&col, s, n, level), || {
                            format!(
                                "S={s:?} n={n} {level}: verify disagrees with the oracle on\n{col}"
                            )
                        });
                    }
                    f.check((!st || qu) && (!qu || fe), || {
                        format!("S={s:?} n={n}: level chain broken on\n{col}")
                    });
                    if fe {
                        feeble_ok.push(s.clone());
                    }
                }
                for s in &feeble_ok {
                    feeble_passes += 1;
                    for t in sets.iter().filter(|t| s.iter().all(|k| t.contains(k))) {
                        f.check(feeble_ok.contains(t), || {
                            format!("feeble for {s:?} but not for superset {t:?} on\n{col}")
                        });
                    }
                }
            }
        }
    }
    f.check(checked >= C9_MIN_COLOURINGS, || {
        format!("only {checked} colourings generated")
    });
    f.check(feeble_passes > 0, || "no feeble pass witnessed".into());
    f.finish()
}

fn criterion_10() -> Check {
    let mut f = Failures::new();
    let s = sig(&[1, 3], 3);
    let opts = SearchOptions::default().with_range(2..=12);
    let out = search(s, Level::Qualitative, &opts).expect("search runs");
    f.check(!matches!(out.status, SearchStatus::Aborted(_)), || {
        format!("search did not complete: {:?}", out.status)
    });
    let table_opts = SearchOptions::default().with_max_nodes(C10_TABLE_NODES);
    let verdict = certify_cell(s, Level::Qualitative, &table_opts).expect("cell");
    let table = summary_table(3, &table_opts).expect("table");
    f.check(
        table.cell(&[1, 3], 3, Level::Qualitative) == Some(&verdict),
        || format!("table cell differs from {verdict}"),
    );
    let rendered = table.render();
    let row = rendered
        .lines()
        .find(|l| l.starts_with("{1,3}") && l.contains("qualitative"));
    f.check(
        row.is_some_and(|r| r.contains(&verdict.to_string())),
        || format!("rendered {{1,3}} qualitative row lacks {verdict}"),
    );
    f.check(
        rendered.contains(&format!(
            "n=3, qualitative decided by exhaustive search: {verdict}"
        )),
        || "rendered table lacks the n=3 note".into(),
    );
    f.finish()
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("quasigroup family", criterion_1),
        ("odd-only trichromatic search", criterion_2),
        ("trichromatic classification", criterion_3),
        ("Walecki colourings", criterion_4),
        ("{2} nonexistence", criterion_5),
        ("Lyndon geometries", criterion_6),
        ("round trips", criterion_7),
        ("algebra layer", criterion_8),
        ("monotonicity sweep", criterion_9),
        ("{1,3} n=3 discrepancy", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("criterion {:>2} {name}: PASS ({secs:.2}s)", i + 1),
            Err(problems) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({secs:.2}s)", i + 1);
                for p in problems.iter().take(10) {
                    println!("    {p}");
                }
                if problems.len() > 10 {
                    println!("    ... {} more", problems.len() - 10);
                }
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
