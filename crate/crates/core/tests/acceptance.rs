//! End-to-end acceptance checks. Each criterion prints one PASS or FAIL line;
//! the test fails if any of them fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;

use h0pres::bench::doubling;
use h0pres::collapse::{collapse_local, vertex_minimize};
use h0pres::dendrogram::{Dendrogram, LinkCutForest, NaiveForest};
use h0pres::fixtures::two_edge_bigon;
use h0pres::gen::{
    bench_graph, random_lattice, random_poset_graph, random_rn_graph, rng, shuffled, GraphParams,
};
use h0pres::minpres::minimal_graph;
use h0pres::multicritical::{check_pi0_equivalence, random_multicritical};
use h0pres::oracle::{
    h0_dimensions, koszul_betti_all, koszul_betti_h1, verify_presentation, GradeGrid, PrimeField,
};
use h0pres::partition::Partition;
use h0pres::{
    betti_r2, minimal_presentation, one_criticalize, Backend, BettiTable, Extended, FilteredGraph,
    Grade,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const FIELDS: [PrimeField; 3] = [PrimeField::F2, PrimeField::F3, PrimeField::F5];

/// The 500 bifiltered graphs: up to 30 vertices and 60 edges on an 8x8 grid.
fn r2_instances() -> Vec<FilteredGraph> {
    let mut r = rng(2024);
    (0..500)
        .map(|_| {
            let vertices = r.random_range(1..=30);
            let edges = r.random_range(0..=60);
            random_rn_graph(&mut r, 2, &GraphParams::small(vertices, edges, 8))
        })
        .collect()
}

fn r3_instances() -> Vec<FilteredGraph> {
    let mut r = rng(3);
    (0..200)
        .map(|_| {
            let vertices = r.random_range(1..=8);
            let edges = r.random_range(0..=14);
            random_rn_graph(&mut r, 3, &GraphParams::small(vertices, edges, 4))
        })
        .collect()
}

fn lattice_instances() -> Vec<FilteredGraph> {
    let mut r = rng(4);
    (0..100)
        .map(|_| {
            let p = Arc::new(random_lattice(&mut r, 20));
            let vertices = r.random_range(1..=10);
            let edges = r.random_range(0..=16);
            random_poset_graph(&mut r, p, vertices, edges)
        })
        .collect()
}

fn grid(g: &FilteredGraph) -> GradeGrid {
    GradeGrid::for_graph(g, GradeGrid::DEFAULT_CAP).expect("desk-scale grid")
}

fn golden_example() -> Outcome {
    let g = two_edge_bigon();
    let start = Instant::now();
    let r = betti_r2(&g, Backend::Fast).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let table = |v: &[(i64, i64)]| {
        BettiTable::from(v.iter().map(|&(x, y)| Grade::xy(x, y)).collect::<Vec<_>>())
    };
    ensure!(
        r.beta0.same_multiset(&table(&[(0, 0), (0, 0)])),
        "beta0 = {:?}",
        r.beta0
    );
    ensure!(
        r.beta1.same_multiset(&table(&[(0, 1), (1, 0)])),
        "beta1 = {:?}",
        r.beta1
    );
    ensure!(
        r.beta2.same_multiset(&table(&[(1, 1)])),
        "beta2 = {:?}",
        r.beta2
    );
    ensure!(
        r.beta0_h1.same_multiset(&table(&[(1, 1)])),
        "beta0(H1) = {:?}",
        r.beta0_h1
    );
    ensure!(elapsed < Duration::from_millis(10), "took {elapsed:?}");
    Ok(format!("{elapsed:?}"))
}

fn oracle_equivalence(instances: &[FilteredGraph]) -> Outcome {
    let start = Instant::now();
    for (i, g) in instances.iter().enumerate() {
        let r = betti_r2(g, Backend::Fast).map_err(|e| e.to_string())?;
        let grid = grid(g);
        for f in [PrimeField::F2, PrimeField::F3] {
            let t = koszul_betti_all(g, &grid, f).map_err(|e| e.to_string())?;
            let h1 = koszul_betti_h1(g, &grid, f).map_err(|e| e.to_string())?;
            for (name, ours, theirs) in [
                ("beta0", &r.beta0, &t[0]),
                ("beta1", &r.beta1, &t[1]),
                ("beta2", &r.beta2, &t[2]),
                ("beta0(H1)", &r.beta0_h1, &h1),
            ] {
                ensure!(
                    ours.same_multiset(theirs),
                    "instance {i} over F{}: {name} {:?} vs oracle {:?}",
                    f.modulus(),
                    ours.sorted(),
                    theirs.sorted()
                );
            }
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!("{} instances in {elapsed:.2?}", instances.len()))
}

fn algorithms_agree(instances: &[FilteredGraph]) -> Outcome {
    for (i, g) in instances.iter().enumerate() {
        let p = minimal_presentation(g);
        let r = betti_r2(g, Backend::Fast).map_err(|e| e.to_string())?;
        ensure!(
            p.rows.same_multiset(&r.beta0),
            "instance {i}: beta0 differs"
        );
        ensure!(
            p.cols.same_multiset(&r.beta1),
            "instance {i}: beta1 differs"
        );
        ensure!(
            p.column_signatures() == r.matrix.column_signatures(),
            "instance {i}: column multisets differ"
        );
        let grid = grid(g);
        for (name, q) in [("minpres", &p), ("betti2d", &r.matrix)] {
            let v = verify_presentation(g, q, &grid);
            ensure!(
                v.passed(),
                "instance {i}: {name} matrix fails verification: {:?}",
                v.failure
            );
        }
    }
    Ok(format!("{} instances", instances.len()))
}

fn generic_posets(r3: &[FilteredGraph], lattices: &[FilteredGraph]) -> Outcome {
    for (i, g) in r3.iter().enumerate() {
        let v = verify_presentation(g, &minimal_presentation(g), &grid(g));
        ensure!(
            v.passed() && v.minimality_checked,
            "R^3 instance {i}: {:?}",
            v.failure
        );
    }
    for (i, g) in lattices.iter().enumerate() {
        let v = verify_presentation(g, &minimal_presentation(g), &grid(g));
        ensure!(v.passed(), "lattice instance {i}: {:?}", v.failure);
    }
    Ok(format!(
        "{} over R^3, {} over lattices",
        r3.len(),
        lattices.len()
    ))
}

fn field_independence(r2: &[FilteredGraph], r3: &[FilteredGraph]) -> Outcome {
    for (i, g) in r2.iter().chain(r3).enumerate() {
        let grid = grid(g);
        let tables: Vec<(Vec<BettiTable>, BettiTable)> = FIELDS
            .iter()
            .map(|&f| {
                (
                    koszul_betti_all(g, &grid, f).expect("R^n"),
                    koszul_betti_h1(g, &grid, f).expect("R^n"),
                )
            })
            .collect();
        for (f, (t, h1)) in FIELDS.iter().zip(&tables).skip(1) {
            let (t2, h2) = &tables[0];
            ensure!(
                t.iter().zip(t2).all(|(a, b)| a.same_multiset(b)) && h1.same_multiset(h2),
                "instance {i}: tables over F{} differ from F2",
                f.modulus()
            );
        }
    }
    Ok(format!("{} instances, fields 2, 3, 5", r2.len() + r3.len()))
}

/// Shortest time at which `v` and `w` are joined by the recorded edges.
fn semantic_time(n: usize, edges: &[(usize, usize, i64)], v: usize, w: usize) -> Extended<i64> {
    if v == w {
        return Extended::NegInf;
    }
    let mut sorted = edges.to_vec();
    sorted.sort_by_key(|e| e.2);
    let mut p = Partition::new(n);
    for (a, b, t) in sorted {
        p.union(a, b);
        if p.same(v, w) {
            return Extended::Finite(t);
        }
    }
    Extended::PosInf
}

fn dendrogram_differential() -> Outcome {
    let mut r = rng(6);
    let mut queries = 0usize;
    for seq in 0..1000 {
        let n = r.random_range(1..=40);
        let ops = r.random_range(1..=1000);
        let mut fast: Dendrogram<i64, LinkCutForest<i64>> = Dendrogram::with_vertices(n);
        let mut slow: Dendrogram<i64, NaiveForest<i64>> = Dendrogram::with_vertices(n);
        let mut edges = Vec::new();
        for op in 0..ops {
            let (v, w) = (r.random_range(0..n), r.random_range(0..n));
            if r.random_bool(0.4) {
                let t = r.random_range(-50..50);
                fast.merge_at_time(v, w, t);
                slow.merge_at_time(v, w, t);
                edges.push((v, w, t));
            } else {
                queries += 1;
                let (a, b, c) = (
                    fast.time_of_merge(v, w),
                    slow.time_of_merge(v, w),
                    semantic_time(n, &edges, v, w),
                );
                ensure!(
                    a == b && b == c,
                    "sequence {seq} op {op}: fast {a:?}, naive {b:?}, union-find {c:?}"
                );
            }
        }
    }
    Ok(format!("1000 sequences, {queries} queries"))
}

fn cycle_ranks(g: &FilteredGraph, grid: &GradeGrid) -> Vec<usize> {
    grid.points()
        .iter()
        .map(|r| g.subgraph_at(r).cycle_rank())
        .collect()
}

fn reductions_preserve_homology(instances: &[FilteredGraph]) -> Outcome {
    for (i, g) in instances.iter().enumerate() {
        let grid = grid(g);
        let h0 = h0_dimensions(g, &grid);
        let cycles = cycle_ranks(g, &grid);
        let local = collapse_local(g).0;
        let minimal = vertex_minimize(g).graph;
        for (name, h) in [
            ("local collapse", &local),
            ("vertex minimization", &minimal),
        ] {
            ensure!(
                h0_dimensions(h, &grid) == h0,
                "instance {i}: H0 changed by {name}"
            );
            ensure!(
                cycle_ranks(h, &grid) == cycles,
                "instance {i}: cycle rank changed by {name}"
            );
        }
        let m = minimal_graph(g).graph;
        ensure!(
            h0_dimensions(&m, &grid) == h0,
            "instance {i}: H0 changed by deletion"
        );
        for e in 0..m.num_edges() {
            ensure!(
                !m.is_collapsible(e),
                "instance {i}: edge {e} still collapsible"
            );
            ensure!(
                !m.is_deletable(e).expect("edge exists"),
                "instance {i}: edge {e} still deletable"
            );
        }
    }
    Ok(format!("{} instances", instances.len()))
}

fn euler_identity(instances: &[FilteredGraph]) -> Outcome {
    let mut points = 0;
    for (i, g) in instances.iter().enumerate() {
        let r = betti_r2(g, Backend::Fast).map_err(|e| e.to_string())?;
        for (pt, c) in h0_dimensions(g, &grid(g)) {
            let p = g.poset();
            let chi = r.beta0.count_below(p, &pt) as i64 - r.beta1.count_below(p, &pt) as i64
                + r.beta2.count_below(p, &pt) as i64;
            ensure!(
                chi == c as i64,
                "instance {i} at {pt:?}: {chi} vs {c} components"
            );
            points += 1;
        }
    }
    Ok(format!("{points} grid points"))
}

fn multicritical() -> Outcome {
    let mut r = rng(9);
    for i in 0..100 {
        let vertices = r.random_range(1..=12);
        let edges = r.random_range(0..=20);
        let m = random_multicritical(&mut r, 2, &GraphParams::small(vertices, edges, 8), 4);
        let (g, prov) = one_criticalize(&m).map_err(|e| format!("instance {i}: {e}"))?;
        ensure!(
            g.validate().is_empty(),
            "instance {i}: output does not validate"
        );
        let grid = GradeGrid::from_grades(m.poset(), m.grades(), GradeGrid::DEFAULT_CAP)
            .map_err(|e| e.to_string())?;
        if let Err(pt) = check_pi0_equivalence(&m, &g, &prov, &grid) {
            return Err(format!("instance {i}: components differ at {pt:?}"));
        }
    }
    Ok("100 instances".into())
}

fn complexity() -> Outcome {
    let sizes: Vec<usize> = (15..=20).map(|k| 1usize << k).collect();
    let d = doubling(
        &sizes,
        7,
        |m| bench_graph(1, m),
        |g| {
            std::hint::black_box(betti_r2(g, Backend::Fast).unwrap());
        },
    );
    let largest = *d.best().last().unwrap();
    let sweep = d.ratios();
    let vertices: Vec<usize> = (10..=12).map(|k| 1usize << k).collect();
    let q = doubling(
        &vertices,
        5,
        |n| bench_graph(2, 4 * n),
        |g| {
            std::hint::black_box(minimal_presentation(g));
        },
    );
    let pres = q.ratios();
    let fmt = |v: &[f64]| {
        v.iter()
            .map(|x| format!("{x:.2}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let summary = format!(
        "betti2d ratios {} (2^20 in {largest:.2}s), minpres ratios {}",
        fmt(&sweep),
        fmt(&pres)
    );
    ensure!(largest < 60.0, "{summary}");
    ensure!(sweep.iter().all(|&x| x <= 2.5), "{summary}");
    ensure!(pres.iter().all(|&x| x <= 4.5), "{summary}");
    Ok(summary)
}

fn permutation_invariance(instances: &[FilteredGraph]) -> Outcome {
    let mut r = rng(11);
    for (i, g) in instances.iter().take(50).enumerate() {
        let base = betti_r2(g, Backend::Fast).map_err(|e| e.to_string())?;
        let pres = minimal_presentation(g);
        for k in 0..10 {
            let h = shuffled(&mut r, g);
            let other = betti_r2(&h, Backend::Fast).map_err(|e| e.to_string())?;
            let other_pres = minimal_presentation(&h);
            ensure!(
                base.beta0.same_multiset(&other.beta0)
                    && base.beta1.same_multiset(&other.beta1)
                    && base.beta2.same_multiset(&other.beta2)
                    && base.beta0_h1.same_multiset(&other.beta0_h1),
                "instance {i}, permutation {k}: betti2d tables differ"
            );
            ensure!(
                pres.rows.same_multiset(&other_pres.rows)
                    && pres.cols.same_multiset(&other_pres.cols),
                "instance {i}, permutation {k}: minpres tables differ"
            );
        }
    }
    Ok("50 instances x 10 permutations".into())
}

#[test]
fn acceptance() {
    let r2 = r2_instances();
    let r3 = r3_instances();
    let lattices = lattice_instances();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("golden example", Box::new(golden_example)),
        (
            "oracle equivalence over R^2",
            Box::new(|| oracle_equivalence(&r2)),
        ),
        (
            "deletion loop agrees with sweep",
            Box::new(|| algorithms_agree(&r2)),
        ),
        (
            "generic posets",
            Box::new(|| generic_posets(&r3, &lattices)),
        ),
        (
            "field independence",
            Box::new(|| field_independence(&r2, &r3)),
        ),
        ("dendrogram differential", Box::new(dendrogram_differential)),
        (
            "reductions preserve homology",
            Box::new(|| reductions_preserve_homology(&r2)),
        ),
        ("euler identity", Box::new(|| euler_identity(&r2))),
        ("multi-critical components", Box::new(multicritical)),
        ("complexity", Box::new(complexity)),
        (
            "permutation invariance",
            Box::new(|| permutation_invariance(&r2)),
        ),
    ];
    let mut failures = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                println!("FAIL {:>2} {name}: {detail} [{secs:.1}s]", i + 1);
                failures.push(i + 1);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
