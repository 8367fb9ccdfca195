use std::collections::{HashMap, HashSet};

use proptest::prelude::*;

use alphahash::bisim::{bisim_partition_naive, bisim_partition_refine, build_graph, Label};
use alphahash::commands::dedup;
use alphahash::generate::{all_terms, gen_grown_closed, gen_random_closed};
use alphahash::term::{
    bound_positions, free_positions, index, is_closed, lift_out, locally_closed, scc_positions,
    shift, subst, subst_list, valid_positions, var_positions, Pure,
};
use alphahash::{
    calc_duplicates, globalize, globalize_naive, hash_at, hash_partition, max_visit,
    parse_position, parse_term, print_position, print_term, set_hash, set_hashes, visit_bound,
    Hash, HashEnv, HashMode, Hasher, Position, PureTerm, Step, Syntax, Term, TermF,
};

#[derive(Debug, Clone)]
enum Raw {
    Var(u8),
    Lam(Box<Raw>),
    App(Box<Raw>, Box<Raw>),
}

fn raw(depth: u32, nodes: u32) -> impl Strategy<Value = Raw> {
    any::<u8>()
        .prop_map(Raw::Var)
        .prop_recursive(depth, nodes, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|b| Raw::Lam(Box::new(b))),
                (inner.clone(), inner).prop_map(|(f, x)| Raw::App(Box::new(f), Box::new(x))),
            ]
        })
}

/// Indices are taken modulo the number of binders in scope plus `free`; a
/// variable with nothing in scope becomes `λ0`.
fn build(r: &Raw, depth: usize, free: usize) -> PureTerm {
    match r {
        Raw::Var(n) => match depth + free {
            0 => PureTerm::lam(PureTerm::var(0)),
            k => PureTerm::var(*n as usize % k),
        },
        Raw::Lam(b) => PureTerm::lam(build(b, depth + 1, free)),
        Raw::App(f, x) => PureTerm::app(build(f, depth, free), build(x, depth, free)),
    }
}

fn closed_term() -> impl Strategy<Value = PureTerm> {
    raw(10, 80).prop_map(|r| build(&r, 0, 0))
}

/// A term whose free indices are all below `free`.
fn open_term(free: usize) -> impl Strategy<Value = PureTerm> {
    raw(8, 48).prop_map(move |r| build(&r, 0, free))
}

fn decorate(h: &mut Hasher, t: &PureTerm) -> Term {
    Term::from_pure(h, t)
}

fn exact_partition(t: &PureTerm) -> alphahash::Partition {
    let mut h = Hasher::exact();
    let d = decorate(&mut h, t);
    hash_partition(&globalize(&mut h, &d).unwrap())
}

fn lams_position(n: usize) -> Position {
    let mut p = Position::root();
    for _ in 0..n {
        p.push(Step::Down);
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn size_is_number_of_positions(t in open_term(3)) {
        let mut h = Hasher::fast();
        let d = decorate(&mut h, &t);
        prop_assert_eq!(valid_positions(&t).count(), t.size());
        prop_assert_eq!(valid_positions(&d).count(), d.size());
        prop_assert_eq!(d.size(), t.size());
    }

    #[test]
    fn case_of_lift_is_identity(t in closed_term()) {
        let mut h = Hasher::exact();
        let d = decorate(&mut h, &t);
        for (u, _) in d.preorder() {
            let rebuilt = Term::lift(&mut h, u.case());
            prop_assert_eq!(rebuilt.hash(), u.hash());
            match (rebuilt.case(), u.case()) {
                (TermF::Lam(a), TermF::Lam(b)) => prop_assert!(a.ptr_eq(&b)),
                (TermF::App(a, x), TermF::App(b, y)) => prop_assert!(a.ptr_eq(&b) && x.ptr_eq(&y)),
                (TermF::Var(i), TermF::Var(j)) => prop_assert_eq!(i, j),
                _ => prop_assert!(false, "shape changed"),
            }
        }
    }

    #[test]
    fn free_and_bound_partition_vars(t in open_term(3)) {
        let vars: HashSet<Position> = var_positions(&t).collect();
        let free: HashSet<Position> = free_positions(&t).collect();
        let bound: HashSet<Position> = bound_positions(&t).collect();
        prop_assert!(free.is_disjoint(&bound));
        let union: HashSet<Position> = free.union(&bound).cloned().collect();
        prop_assert_eq!(union, vars);
        prop_assert_eq!(free.is_empty(), is_closed(&t));
    }

    #[test]
    fn lift_out_of_closed_subterm_is_the_subterm(t in closed_term()) {
        for p in valid_positions(&t).collect::<Vec<_>>() {
            let sub = index(&t, &p).unwrap();
            if is_closed(sub) {
                prop_assert!(locally_closed(&t, &p).unwrap());
                prop_assert_eq!(&lift_out(&mut Pure, &t, &p).unwrap(), sub);
            }
        }
    }

    #[test]
    fn lift_out_undoes_shift_under_binders(u in open_term(3), m in 0usize..4) {
        let t = PureTerm::lams(m, shift(&mut Pure, &u, m));
        let p = lams_position(m);
        prop_assert!(locally_closed(&t, &p).unwrap());
        prop_assert_eq!(lift_out(&mut Pure, &t, &p).unwrap(), u);
    }

    #[test]
    fn subst_list_is_iterated_subst(
        t in open_term(3),
        sigma in proptest::collection::vec(closed_term(), 3),
    ) {
        let at_once = subst_list(&mut Pure, &t, &sigma).unwrap();
        let one_by_one = sigma
            .iter()
            .enumerate()
            .fold(t.clone(), |acc, (i, u)| subst(&mut Pure, &acc, i, u));
        prop_assert!(is_closed(&at_once));
        prop_assert_eq!(at_once, one_by_one);
    }

    #[test]
    fn scc_prefixes_are_open(t in closed_term()) {
        let mut h = Hasher::fast();
        let d = decorate(&mut h, &t);
        for p in scc_positions(&d).unwrap() {
            let mut prefix = Position::root();
            for s in p.steps() {
                prefix.push(*s);
                prop_assert!(!index(&d, &prefix).unwrap().gclosed());
            }
        }
    }

    #[test]
    fn duplicates_are_shared_scc_sizes(t in closed_term()) {
        let mut h = Hasher::fast();
        let d = decorate(&mut h, &t);
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for p in scc_positions(&d).unwrap().iter().filter(|p| !p.is_root()) {
            *counts.entry(index(&d, p).unwrap().size()).or_default() += 1;
        }
        let expected: HashSet<usize> =
            counts.into_iter().filter(|&(_, c)| c >= 2).map(|(s, _)| s).collect();
        prop_assert_eq!(calc_duplicates(&d).unwrap(), expected);
    }

    #[test]
    fn parse_print_round_trip(t in open_term(4)) {
        let text = print_term(&t);
        prop_assert_eq!(&parse_term(&text).unwrap(), &t);
        prop_assert_eq!(print_term(&parse_term(&text).unwrap()), text);
    }

    #[test]
    fn position_round_trip(steps in proptest::collection::vec(0u8..3, 0..40)) {
        let mut p = Position::root();
        for s in steps {
            p.push([Step::Down, Step::Left, Step::Right][s as usize]);
        }
        prop_assert_eq!(parse_position(&print_position(&p)).unwrap(), p);
    }

    #[test]
    fn set_hashes_is_iterated_set_hash(t in open_term(3), labels in proptest::collection::vec(0usize..1000, 3)) {
        let mut h = Hasher::exact();
        let payloads: Vec<Hash> = labels
            .iter()
            .map(|&l| h.lift_hash(TermF::Var(l)).unwrap())
            .collect();
        let env = payloads.iter().rev().fold(HashEnv::new(), |e, &p| e.push(p));
        let d = decorate(&mut h, &t);
        let at_once = set_hashes(&mut h, &env, &d).unwrap();
        let mut one_by_one = d.clone();
        for (i, &p) in payloads.iter().enumerate() {
            one_by_one = set_hash(&mut h, i, p, &one_by_one).unwrap();
        }
        prop_assert!(at_once.gclosed());
        prop_assert_eq!(at_once.hash(), one_by_one.hash());
        prop_assert_eq!(at_once, one_by_one);
    }

    #[test]
    fn globalization_preserves_shape(t in closed_term()) {
        let mut h = Hasher::fast();
        let d = decorate(&mut h, &t);
        prop_assert_eq!(globalize(&mut h, &d).unwrap().to_pure(), t.clone());
        prop_assert_eq!(globalize_naive(&mut h, &d).unwrap().to_pure(), t);
    }

    #[test]
    fn naive_and_efficient_partitions_agree(t in closed_term()) {
        let mut h = Hasher::exact();
        let d = decorate(&mut h, &t);
        let naive = hash_partition(&globalize_naive(&mut h, &d).unwrap());
        let efficient = hash_partition(&globalize(&mut h, &d).unwrap());
        prop_assert_eq!(naive, efficient);
    }

    #[test]
    fn hashes_match_bisimulation(t in closed_term()) {
        let g = build_graph(&t).unwrap();
        let refined = bisim_partition_refine(&g);
        prop_assert_eq!(&bisim_partition_naive(&g), &refined);
        prop_assert_eq!(exact_partition(&t), refined);
    }

    #[test]
    fn visits_stay_within_bound(t in closed_term()) {
        let mut h = Hasher::fast();
        let d = decorate(&mut h, &t);
        let g = globalize(&mut h, &d).unwrap();
        prop_assert!(max_visit(&g) <= visit_bound(t.size()));
    }

    #[test]
    fn closed_subterms_hash_alone(t in closed_term()) {
        let mut h = Hasher::exact();
        let d = decorate(&mut h, &t);
        let g = globalize(&mut h, &d).unwrap();
        for p in valid_positions(&t).collect::<Vec<_>>() {
            let sub = index(&d, &p).unwrap();
            if sub.gclosed() {
                let alone = globalize(&mut h, sub).unwrap();
                prop_assert_eq!(hash_at(&g, &p).unwrap(), alone.hash());
            }
        }
    }

    #[test]
    fn globalization_is_idempotent(t in closed_term()) {
        let mut h = Hasher::exact();
        let d = decorate(&mut h, &t);
        let once = globalize(&mut h, &d).unwrap();
        let twice = globalize(&mut h, &once).unwrap();
        prop_assert_eq!(hash_partition(&twice), hash_partition(&once));
    }

    #[test]
    fn fast_and_exact_partitions_agree(t in closed_term()) {
        let mut h = Hasher::fast();
        let d = decorate(&mut h, &t);
        let fast = hash_partition(&globalize(&mut h, &d).unwrap());
        prop_assert_eq!(fast, exact_partition(&t));
    }

    #[test]
    fn exact_hashes_are_gterms(ts in proptest::collection::vec(closed_term(), 1..4)) {
        let mut h = Hasher::exact();
        let mut seen = Vec::new();
        for t in &ts {
            let d = decorate(&mut h, t);
            let g = globalize(&mut h, &d).unwrap();
            for (u, _) in g.preorder() {
                seen.push((u.hash(), h.gterm_of_exact(u.hash()).unwrap()));
            }
        }
        for (a, ga) in &seen {
            for (b, gb) in &seen {
                prop_assert_eq!(a == b, ga == gb);
            }
        }
    }

    #[test]
    fn hash_env_matches_a_vector(labels in proptest::collection::vec(0usize..50, 0..80), probe in 0usize..100) {
        let mut h = Hasher::fast();
        let mut env = HashEnv::new();
        let mut model: Vec<Hash> = Vec::new();
        let mut snapshots = Vec::new();
        for l in labels {
            let x = h.lift_hash(TermF::Var(l)).unwrap();
            env = env.push(x);
            model.insert(0, x);
            snapshots.push((env.clone(), model.clone()));
            prop_assert_eq!(env.len(), model.len());
            prop_assert_eq!(env.get(probe), model.get(probe).copied());
        }
        for (e, m) in snapshots {
            for (i, x) in m.iter().enumerate() {
                prop_assert_eq!(e.get(i), Some(*x));
            }
            prop_assert_eq!(e.get(m.len()), None);
        }
    }

    #[test]
    fn up_edges_point_at_binders(t in closed_term()) {
        let g = build_graph(&t).unwrap();
        for v in 0..g.len() {
            let p = g.position(v);
            match index(&t, &p).unwrap().node() {
                TermF::Var(i) => {
                    let b = g.succ(v, Label::Up).expect("every variable has a binder");
                    let q = g.position(b);
                    let rest = p.strip_prefix(&q).expect("binder is an ancestor");
                    prop_assert_eq!(rest.steps()[0], Step::Down);
                    prop_assert_eq!(rest.lam_count(), i + 1);
                    prop_assert!(matches!(index(&t, &q).unwrap().node(), TermF::Lam(_)));
                }
                _ => prop_assert_eq!(g.succ(v, Label::Up), None),
            }
        }
    }

    #[test]
    fn bisimilar_nodes_share_skeletons(t in closed_term()) {
        let g = build_graph(&t).unwrap();
        let part = bisim_partition_refine(&g);
        let skeleton = |v: usize| -> Vec<Position> {
            valid_positions(index(&t, &g.position(v)).unwrap()).collect()
        };
        for class in part.classes() {
            let first = skeleton(class[0]);
            for &v in &class[1..] {
                prop_assert_eq!(&skeleton(v), &first);
            }
        }
    }

    #[test]
    fn generators_are_exact_closed_and_deterministic(n in 2usize..120, seed in any::<u64>()) {
        let a = gen_random_closed(n, seed).unwrap();
        prop_assert_eq!(a.size(), n);
        prop_assert!(is_closed(&a));
        prop_assert_eq!(&a, &gen_random_closed(n, seed).unwrap());
        let b = gen_grown_closed(n, seed).unwrap();
        prop_assert_eq!(b.size(), n);
        prop_assert!(is_closed(&b));
        prop_assert_eq!(&b, &gen_grown_closed(n, seed).unwrap());
    }

    #[test]
    fn dedup_never_exceeds_total(ts in proptest::collection::vec(closed_term(), 1..5)) {
        for mode in [HashMode::Fast, HashMode::Exact] {
            let r = dedup(&ts, mode).unwrap();
            prop_assert_eq!(r.total_nodes, ts.iter().map(PureTerm::size).sum::<usize>());
            prop_assert!(r.unique_hashes <= r.total_nodes);
            let expected = 100.0 * (1.0 - r.unique_hashes as f64 / r.total_nodes as f64);
            prop_assert!((r.reduction_percent - expected).abs() < 1e-9);
        }
    }
}

/// Fast hashes of every term of size `n` with free indices below `k`, built
/// layer by layer without materializing the terms.
fn all_hashes(
    h: &mut Hasher,
    n: usize,
    k: usize,
    memo: &mut HashMap<(usize, usize), Vec<Hash>>,
) -> Vec<Hash> {
    if let Some(v) = memo.get(&(n, k)) {
        return v.clone();
    }
    let mut out = Vec::new();
    if n == 1 {
        out.extend((0..k).map(|i| h.lift_hash(TermF::Var(i)).unwrap()));
    } else if n > 1 {
        for b in all_hashes(h, n - 1, k + 1, memo) {
            out.push(h.lift_hash(TermF::Lam(b)).unwrap());
        }
        for i in 1..n - 1 {
            let rights = all_hashes(h, n - 1 - i, k, memo);
            for f in all_hashes(h, i, k, memo) {
                for &x in &rights {
                    out.push(h.lift_hash(TermF::App(f, x)).unwrap());
                }
            }
        }
    }
    memo.insert((n, k), out.clone());
    out
}

/// Over a million distinct small g-terms (every term of size ≤ 10 with free
/// indices below 4, and a global variable labelled by each), the fast
/// combiner produces no collision.
#[test]
fn fast_hashes_do_not_collide() {
    let mut h = Hasher::fast();
    let mut memo = HashMap::new();
    let mut seen: HashSet<Hash> = HashSet::new();
    let mut distinct = 0usize;
    for n in 1..=10 {
        for x in all_hashes(&mut h, n, 4, &mut memo) {
            let g = h.hash_gvar(x).unwrap();
            distinct += 2;
            seen.insert(x);
            seen.insert(g);
        }
    }
    assert!(distinct >= 1_000_000, "only {distinct} g-terms");
    assert_eq!(seen.len(), distinct);
}

#[test]
fn enumerated_hashes_match_decorated_terms() {
    let mut h = Hasher::fast();
    let mut memo = HashMap::new();
    for n in 1..=6 {
        let from_terms: Vec<Hash> = all_terms(n, 2)
            .iter()
            .map(|t| decorate(&mut h, t).hash())
            .collect();
        assert_eq!(all_hashes(&mut h, n, 2, &mut memo), from_terms);
    }
}
