//! Acceptance suite: one `[PASS]`/`[FAIL]` line per criterion, nonzero exit
//! if any fails.

#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64;

use alphahash::bench::{doubling_ratios, median, run_bench, Algorithm, BenchConfig, Cell, Summary};
use alphahash::bisim::{bisim_partition_naive, bisim_partition_refine, build_graph, fork_closure};
use alphahash::generate::{
    all_closed_up_to, gen_balanced, gen_grown_closed, gen_linear, Family, RandomClosedSampler,
};
use alphahash::{
    globalize, globalize_naive, hash_at, hash_partition, max_visit, parse_term, print_term,
    visit_bound, GTerm, Hash, Hasher, Partition, PureTerm, Term,
};

const SEED: u64 = 20_240_917;

type Outcome = Result<String, String>;

/// Fast-vs-exact partition comparisons gathered from the other criteria.
#[derive(Default)]
struct Audit {
    terms: usize,
    positions: usize,
    collisions: Vec<String>,
}

impl Audit {
    fn record(&mut self, t: &PureTerm, exact: &Partition) {
        let mut h = Hasher::fast();
        let d = Term::from_pure(&mut h, t);
        let fast = hash_partition(&globalize(&mut h, &d).expect("closed"));
        self.terms += 1;
        self.positions += t.size();
        if let Some(v) = exact.first_difference(&fast) {
            if self.collisions.len() < 3 {
                self.collisions.push(format!("node {v} of {t}"));
            }
        }
    }
}

fn exact_partition(t: &PureTerm) -> Partition {
    let mut h = Hasher::exact();
    let d = Term::from_pure(&mut h, t);
    hash_partition(&globalize(&mut h, &d).expect("closed"))
}

fn random_terms(count: usize, max_size: usize, seed: u64) -> Vec<PureTerm> {
    let sampler = RandomClosedSampler::new(max_size).expect("within the uniform limit");
    let mut rng = Pcg64::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(2..=max_size);
            sampler.sample(n, &mut rng).expect("size in range")
        })
        .collect()
}

fn within(start: Instant, limit: Duration, detail: String) -> Outcome {
    let took = start.elapsed();
    if took <= limit {
        Ok(format!("{detail} in {:.2?}", took))
    } else {
        Err(format!(
            "{detail}, but took {:.2?} (limit {:.0?})",
            took, limit
        ))
    }
}

fn hashes_at(mode_exact: bool, src: &str, positions: &[&str]) -> Vec<Hash> {
    let mut h = if mode_exact {
        Hasher::exact()
    } else {
        Hasher::fast()
    };
    let d = Term::from_pure(&mut h, &parse_term(src).unwrap());
    let g = globalize(&mut h, &d).unwrap();
    positions
        .iter()
        .map(|p| hash_at(&g, &p.parse().unwrap()).unwrap())
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    // λt. (λ0) (λz.λf. f t) (λg. g t)
    let ex1 = r"\((\0 \\(0 2)) \(0 1))";
    // λt. (λ0) (λz.λf. f z) (λg. g t)
    let ex3 = r"\((\0 \\(0 1)) \(0 1))";
    // λt. (λx. x t (λy. x t)) (λz. λx. x t (λy. x t))
    let ex5 = r"\(\((0 1) \(1 2)) \\((0 2) \(1 3)))";
    let fork_sites = ["DLDL", "DLDRD", "DRDDL", "DRDDRD"];
    let mut checked = 0;
    for exact in [false, true] {
        let mode = if exact { "exact" } else { "fast" };
        let a = hashes_at(exact, ex1, &["DLRD", "DR"]);
        if a[0] != a[1] {
            return Err(format!("{mode}: first example positions differ"));
        }
        let b = hashes_at(exact, ex3, &["DLRD", "DR"]);
        if b[0] == b[1] {
            return Err(format!("{mode}: third example positions coincide"));
        }
        let c = hashes_at(exact, ex5, &fork_sites);
        if c.iter().any(|h| *h != c[0]) {
            return Err(format!("{mode}: double-fork positions differ: {c:?}"));
        }
        let mut h = if exact {
            Hasher::exact()
        } else {
            Hasher::fast()
        };
        let mut roots = Vec::new();
        for src in [r"\0", r"\\0", r"\\\0"] {
            let d = Term::from_pure(&mut h, &parse_term(src).unwrap());
            roots.push(globalize(&mut h, &d).unwrap().hash());
        }
        if roots[0] == roots[1] || roots[1] == roots[2] || roots[0] == roots[2] {
            return Err(format!("{mode}: λ-ladder roots collide"));
        }
        let inner = hashes_at(exact, r"\\\0", &[".", "D", "DD"]);
        if inner[0] == inner[1] || inner[1] == inner[2] || inner[0] == inner[2] {
            return Err(format!("{mode}: λ-ladder prefixes of λλλ0 collide"));
        }
        checked += 1;
    }
    // The two modes must induce the same verdicts on every site.
    let mut parts = Vec::new();
    for src in [ex1, ex3, ex5, r"\\\0"] {
        let t = parse_term(src).unwrap();
        let mut h = Hasher::fast();
        let d = Term::from_pure(&mut h, &t);
        let fast = hash_partition(&globalize(&mut h, &d).unwrap());
        parts.push((src, fast, exact_partition(&t)));
    }
    if let Some((src, _, _)) = parts.iter().find(|(_, f, e)| f != e) {
        return Err(format!("fast and exact partitions differ on {src}"));
    }
    within(
        start,
        Duration::from_secs(1),
        format!("worked examples hold in {checked} modes"),
    )
}

fn criterion_2() -> Outcome {
    let mut h = Hasher::exact();
    let t = Term::from_pure(&mut h, &parse_term(r"\\(0 1)").unwrap());
    let g = globalize_naive(&mut h, &t).map_err(|e| e.to_string())?;
    // λλ (g(λ 0 g(λλ01))) (g(λλ01))
    let whole = GTerm::lam(GTerm::lam(GTerm::app(GTerm::var(0), GTerm::var(1))));
    let outer = GTerm::gvar(whole);
    let inner = GTerm::gvar(GTerm::lam(GTerm::app(GTerm::var(0), outer.clone())));
    let expected = GTerm::lam(GTerm::lam(GTerm::app(inner, outer)));
    let got = h.gterm_of_exact(g.hash()).map_err(|e| e.to_string())?;
    if got == expected {
        Ok(format!("λλ 0 1 globalizes to {got}"))
    } else {
        Err(format!("got {got}, expected {expected}"))
    }
}

fn criterion_3(audit: &mut Audit) -> Outcome {
    let start = Instant::now();
    let mut corpus = all_closed_up_to(8);
    let exhaustive = corpus.len();
    corpus.extend(random_terms(500, 500, SEED));
    for t in &corpus {
        let exact = exact_partition(t);
        let bisim = bisim_partition_naive(&build_graph(t).unwrap());
        if let Some(v) = bisim.first_difference(&exact) {
            return Err(format!("mismatch at node {v} of {t}"));
        }
        audit.record(t, &exact);
    }
    within(
        start,
        Duration::from_secs(300),
        format!("{exhaustive} exhaustive + 500 random terms agree with bisimulation"),
    )
}

fn criterion_4(audit: &mut Audit) -> Outcome {
    let start = Instant::now();
    let mut corpus = all_closed_up_to(10);
    let exhaustive = corpus.len();
    corpus.extend(random_terms(200, 16, SEED + 4));
    for t in &corpus {
        let fork = fork_closure(t, 16).map_err(|e| e.to_string())?;
        let bisim = bisim_partition_refine(&build_graph(t).unwrap());
        if let Some(v) = bisim.first_difference(&fork) {
            return Err(format!("fork closure differs at node {v} of {t}"));
        }
        audit.record(t, &exact_partition(t));
    }
    within(
        start,
        Duration::from_secs(600),
        format!("{exhaustive} exhaustive + 200 random terms: fork closure = bisimulation"),
    )
}

fn criterion_5(audit: &mut Audit) -> Outcome {
    let start = Instant::now();
    for t in random_terms(1000, 500, SEED + 5) {
        let mut h = Hasher::exact();
        let d = Term::from_pure(&mut h, &t);
        let efficient = hash_partition(&globalize(&mut h, &d).unwrap());
        let naive = hash_partition(&globalize_naive(&mut h, &d).unwrap());
        if let Some(v) = naive.first_difference(&efficient) {
            return Err(format!("naive and efficient differ at node {v} of {t}"));
        }
        audit.record(&t, &efficient);
    }
    within(start, Duration::MAX, "1000 random terms agree".into())
}

fn criterion_6(audit: &mut Audit) -> Outcome {
    let start = Instant::now();
    let mut corpus: Vec<(String, PureTerm)> = Vec::new();
    let mut ns: Vec<usize> = (1..=64).collect();
    ns.extend((7..=16).map(|k| 1 << k));
    ns.push(100_000);
    for n in ns {
        corpus.push((format!("linear {n}"), gen_linear(n)));
    }
    for d in 1..=16 {
        corpus.push((format!("balanced {d}"), gen_balanced(d)));
    }
    let mut rng = Pcg64::seed_from_u64(SEED + 6);
    for k in 0..100 {
        let n = rng.random_range(2..=10_000);
        corpus.push((
            format!("grown #{k} ({n})"),
            gen_grown_closed(n, rng.random()).unwrap(),
        ));
    }
    let mut worst = (0, 0);
    for (name, t) in &corpus {
        let mut h = Hasher::exact();
        let d = Term::from_pure(&mut h, t);
        let g = globalize(&mut h, &d).unwrap();
        let (visits, bound) = (max_visit(&g), visit_bound(t.size()));
        if visits > bound {
            return Err(format!("{name}: {visits} visits exceeds the bound {bound}"));
        }
        worst = worst.max((visits, bound));
        audit.record(t, &hash_partition(&g));
    }
    within(
        start,
        Duration::MAX,
        format!(
            "{} terms within the bound (largest max visit {} of {})",
            corpus.len(),
            worst.0,
            worst.1
        ),
    )
}

fn bench_cells(
    family: Family,
    algorithm: Algorithm,
    trials: usize,
    warmups: usize,
    over_budget: &mut Vec<String>,
) -> Vec<Summary> {
    let config = BenchConfig {
        families: vec![family],
        algorithms: vec![algorithm],
        sizes: (12..=16).map(|k| 1 << k).collect(),
        trials,
        warmups,
        budget: Duration::from_secs(60),
        seed: SEED,
    };
    let mut cell_start = Instant::now();
    run_bench(
        &config,
        |_| {},
        |c| {
            let took = cell_start.elapsed();
            match c {
                Cell::Done(s) if took > config.budget => over_budget.push(format!(
                    "{} {} {} took {took:.1?}",
                    s.family, s.algorithm, s.size
                )),
                Cell::Done(_) => {}
                Cell::Skipped {
                    family,
                    algorithm,
                    size,
                    why,
                } => over_budget.push(format!("{family} {algorithm} {size} skipped: {why:?}")),
            }
            cell_start = Instant::now();
        },
    )
    .expect("bench inputs are closed")
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    let runs = [
        (Family::Linear, Algorithm::Efficient, 5, 9, 3),
        (Family::Linear, Algorithm::Naive, 1, 1, 0),
        (Family::Balanced, Algorithm::Naive, 5, 9, 3),
    ];
    let mut report = Vec::new();
    for (family, algorithm, passes, trials, warmups) in runs {
        // Cheap cells are swept several times so load spikes spread over all sizes.
        let sweeps: Vec<Vec<Summary>> = (0..passes)
            .map(|_| bench_cells(family, algorithm, trials, warmups, &mut problems))
            .collect();
        let s: Vec<Summary> = sweeps[0]
            .iter()
            .enumerate()
            .map(|(i, first)| Summary {
                median_seconds: median(
                    &sweeps
                        .iter()
                        .filter_map(|p| p.get(i))
                        .map(|c| c.median_seconds)
                        .collect::<Vec<_>>(),
                ),
                ..first.clone()
            })
            .collect();
        let ratios = doubling_ratios(&s, family, algorithm);
        if ratios.len() != 4 {
            problems.push(format!(
                "{family} {algorithm}: only {} ratios",
                ratios.len()
            ));
        }
        let fine = |r: f64| match algorithm {
            Algorithm::Naive if family == Family::Linear => r >= 3.0,
            _ => r <= 2.5,
        };
        for &(a, b, r) in &ratios {
            if !fine(r) {
                problems.push(format!("{family} {algorithm} {a}->{b}: ratio {r:.2}"));
            }
        }
        let shown: Vec<String> = ratios.iter().map(|r| format!("{:.2}", r.2)).collect();
        report.push(format!("{family}/{algorithm} [{}]", shown.join(" ")));
    }
    let detail = report.join(", ");
    if !problems.is_empty() {
        return Err(format!("{detail}; {}", problems.join("; ")));
    }
    within(
        start,
        Duration::from_secs(20 * 60),
        format!("doubling ratios {detail}"),
    )
}

fn criterion_8(audit: &mut Audit) -> Outcome {
    let start = Instant::now();
    for t in random_terms(500, 200, SEED + 8) {
        let g = build_graph(&t).unwrap();
        let refined = bisim_partition_refine(&g);
        if let Some(v) = bisim_partition_naive(&g).first_difference(&refined) {
            return Err(format!("refinement differs at node {v} of {t}"));
        }
        audit.record(&t, &refined);
    }
    let agree = start.elapsed();
    let big = gen_linear(1 << 15);
    let started = Instant::now();
    let blocks = bisim_partition_refine(&build_graph(&big).unwrap()).block_count();
    let took = started.elapsed();
    if took > Duration::from_secs(60) {
        return Err(format!("linear 2^15 graph took {took:.1?}"));
    }
    Ok(format!(
        "500 random terms agree in {agree:.2?}; linear 2^15 ({} nodes, {blocks} blocks) in {took:.2?}",
        big.size()
    ))
}

fn criterion_9(audit: &Audit) -> Outcome {
    if audit.collisions.is_empty() {
        Ok(format!(
            "fast = exact on {} terms ({} positions)",
            audit.terms, audit.positions
        ))
    } else {
        Err(format!("collisions: {}", audit.collisions.join("; ")))
    }
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let sampler = RandomClosedSampler::new(200).unwrap();
    let mut rng = Pcg64::seed_from_u64(SEED + 10);
    let mut corpus = Vec::new();
    for k in 0..10_000 {
        let t = if k % 2 == 0 {
            sampler.sample(rng.random_range(2..=200), &mut rng).unwrap()
        } else {
            gen_grown_closed(rng.random_range(2..=2000), rng.random()).unwrap()
        };
        corpus.push(t);
    }
    corpus.push(gen_linear(1_000_000));
    for t in &corpus {
        let text = print_term(t);
        let back = parse_term(&text).map_err(|e| format!("{e} on {text:.60}"))?;
        if &back != t || print_term(&back) != text {
            return Err(format!("round trip changed {text:.60}"));
        }
    }
    within(
        start,
        Duration::MAX,
        format!("{} terms, the last of depth 2·10^6", corpus.len()),
    )
}

fn main() {
    let mut audit = Audit::default();
    let mut failed = 0;
    let mut report = |n: usize, name: &str, outcome: Outcome| match outcome {
        Ok(detail) => println!("[PASS] {n:>2} {name}: {detail}"),
        Err(detail) => {
            failed += 1;
            println!("[FAIL] {n:>2} {name}: {detail}");
        }
    };
    report(1, "example goldens", criterion_1());
    report(2, "naive globalization golden", criterion_2());
    report(3, "hashes match bisimulation", criterion_3(&mut audit));
    report(
        4,
        "fork closure matches bisimulation",
        criterion_4(&mut audit),
    );
    report(5, "naive matches efficient", criterion_5(&mut audit));
    report(6, "visit bound", criterion_6(&mut audit));
    report(7, "scaling trends", criterion_7());
    report(8, "partition refinement baseline", criterion_8(&mut audit));
    report(9, "fast-mode collision audit", criterion_9(&audit));
    report(10, "format round trip", criterion_10());
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
