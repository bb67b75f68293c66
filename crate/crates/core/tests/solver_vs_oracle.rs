mod common;

use common::*;
use genfactor::factor::verify_factor;
use genfactor::forest::{solve_forest, ForestInstance};
use genfactor::oracle::count_factors;
use genfactor::{solve, solve_bruteforce, solve_singleton_ones, Budget, FastPath, Instance, SolveOptions};

fn check_against_oracle(inst: &Instance, opts: &SolveOptions) {
    let (d, stats) = solve(inst, opts).unwrap();
    let o = solve_bruteforce(inst, &Budget::default()).unwrap();
    assert_eq!(d.is_yes(), o.is_yes(), "instance:\n{}", genfactor::serialize_instance(inst));
    if let Some(phi) = d.witness() {
        assert_eq!(verify_factor(inst, phi), Ok(None));
    }
    assert!(stats.x_subsets_explored as u128 <= stats.subset_bound());
}

#[test]
fn small_family_matches_oracle() {
    for inst in exhaustive_family(2, 2) {
        check_against_oracle(&inst, &SolveOptions::default());
        check_against_oracle(
            &inst,
            &SolveOptions {
                fast_path: FastPath::Off,
                ..Default::default()
            },
        );
    }
}

#[test]
fn three_by_two_sample_matches_oracle() {
    // every 37th member of the |U| = 3, |V| = 2 shape
    for inst in family_of_shape(3, 2).step_by(37) {
        check_against_oracle(&inst, &SolveOptions::default());
    }
}

#[test]
fn spec_examples() {
    let star = |m: u32, kv: &[u32]| {
        Instance::new(
            vec![genfactor::DegreeList::from([1]); m as usize],
            vec![kv.iter().copied().collect()],
            (1..=m).map(|u| genfactor::Edge::new(u, 1, 1)),
        )
        .unwrap()
    };
    let (d, _) = solve(&star(3, &[0, 3]), &SolveOptions::default()).unwrap();
    assert!((1..=3).all(|u| d.witness().unwrap().get(u, 1) == 1));
    assert!(!solve(&star(2, &[0, 3]), &SolveOptions::default()).unwrap().0.is_yes());
}

#[test]
fn weighted_random_matches_oracle() {
    let mut r = rng(11);
    let shape = Shape {
        max_u: 5,
        max_v: 3,
        max_cap: 3,
        edge_prob: 0.6,
        singleton_u: true,
        max_list: 3,
    };
    for _ in 0..200 {
        check_against_oracle(&random_instance(&mut r, &shape), &SolveOptions::default());
    }
}

#[test]
fn fast_path_agrees_with_general_path() {
    let mut r = rng(12);
    let shape = Shape {
        max_u: 6,
        max_v: 3,
        max_cap: 2,
        edge_prob: 0.6,
        singleton_u: true,
        max_list: 3,
    };
    let mut seen = 0;
    while seen < 200 {
        let mut inst = random_instance(&mut r, &shape);
        for u in 1..=inst.num_u() as u32 {
            inst.set_list(genfactor::Vertex::u(u), genfactor::DegreeList::singleton(1));
        }
        seen += 1;
        let (fast, fs) = solve_singleton_ones(&inst, &SolveOptions::default()).unwrap();
        let (slow, ss) = solve(
            &inst,
            &SolveOptions {
                fast_path: FastPath::Off,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(fast.is_yes(), slow.is_yes());
        if !fs.rejected_early {
            assert!(fs.fast_path);
            assert_eq!(fs.x_subsets_explored, 1);
            assert!(!ss.fast_path);
        }
    }
}

#[test]
fn forests_match_oracle() {
    let mut r = rng(13);
    for _ in 0..500 {
        let inst = random_forest(&mut r, 10, 3);
        let d = solve_forest(&ForestInstance::new(inst.clone()).unwrap());
        let o = solve_bruteforce(&inst, &Budget::default()).unwrap();
        assert_eq!(d.is_yes(), o.is_yes());
        if let Some(phi) = d.witness() {
            assert_eq!(verify_factor(&inst, phi), Ok(None));
        }
    }
}

#[test]
fn oracle_counts_match_naive_enumeration() {
    for inst in exhaustive_family(2, 2).step_by(5) {
        let n = count_factors(&inst, &Budget::default()).unwrap();
        assert_eq!(n as usize, naive_factors(&inst).len());
    }
    let mut r = rng(14);
    let shape = Shape {
        max_u: 3,
        max_v: 2,
        max_cap: 3,
        edge_prob: 0.7,
        singleton_u: false,
        max_list: 3,
    };
    for _ in 0..200 {
        let inst = random_instance(&mut r, &shape);
        let all = genfactor::enumerate_all_factors(&inst, &Budget::default()).unwrap();
        assert_eq!(all, naive_factors(&inst));
    }
}

#[test]
fn parallel_matches_sequential() {
    let mut r = rng(15);
    let shape = Shape {
        max_u: 5,
        max_v: 3,
        max_cap: 3,
        edge_prob: 0.7,
        singleton_u: true,
        max_list: 3,
    };
    for _ in 0..30 {
        let inst = random_instance(&mut r, &shape);
        let seq = solve(&inst, &SolveOptions::default()).unwrap();
        let par = solve(
            &inst,
            &SolveOptions {
                workers: 3,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(seq, par);
    }
}

#[test]
fn count_all_explores_at_least_as_much() {
    let mut r = rng(16);
    let shape = Shape {
        max_u: 4,
        max_v: 2,
        max_cap: 2,
        edge_prob: 0.7,
        singleton_u: true,
        max_list: 3,
    };
    for _ in 0..50 {
        let inst = random_instance(&mut r, &shape);
        let off = SolveOptions {
            fast_path: FastPath::Off,
            ..Default::default()
        };
        let (d1, s1) = solve(&inst, &off).unwrap();
        let (d2, s2) = solve(&inst, &SolveOptions { count_all: true, ..off }).unwrap();
        assert_eq!(d1, d2);
        assert!(s2.x_subsets_explored >= s1.x_subsets_explored);
        assert!(s2.x_subsets_explored as u128 <= s2.subset_bound());
    }
}
