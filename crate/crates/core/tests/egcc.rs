mod common;

use common::*;
use genfactor::egcc::{
    build_value_graph, check_consistency, factor_to_assignment, parse_model, Assignment, Consistency,
};
use genfactor::factor::verify_factor;
use genfactor::{DegreeList, EdgeWeighting, Vertex};

fn pictured_assignment() -> Assignment {
    Assignment(
        [("u", "b"), ("v", "c"), ("w", "d"), ("x", "d"), ("y", "e"), ("z", "b")]
            .into_iter()
            .map(|(x, d)| (x.to_owned(), d.to_owned()))
            .collect(),
    )
}

#[test]
fn pictured_model_value_graph() {
    let m = parse_model(PICTURED_MODEL).unwrap();
    let g = build_value_graph(&m).unwrap();
    assert_eq!((g.instance.num_u(), g.instance.num_v(), g.instance.edges().len()), (6, 5, 12));
    assert!(g.instance.is_unit_capacity());
    assert!(g.instance.u_lists().iter().all(|l| l.as_slice() == [1]));
    // variable u is U vertex 1, values a and b are V vertices 1 and 2
    assert_eq!(g.instance.neighbors(Vertex::u(1)), vec![Vertex::v(1), Vertex::v(2)]);
}

#[test]
fn pictured_model_bold_edges() {
    let m = parse_model(PICTURED_MODEL).unwrap();
    let g = build_value_graph(&m).unwrap();
    let value = |d: &str| g.values.iter().position(|x| x == d).unwrap() as u32 + 1;
    let phi: EdgeWeighting = pictured_assignment()
        .iter()
        .map(|(x, d)| {
            let u = g.variables.iter().position(|y| y == x).unwrap() as u32 + 1;
            ((u, value(d)), 1)
        })
        .collect();
    assert_eq!(verify_factor(&g.instance, &phi), Ok(None));
    assert_eq!(factor_to_assignment(&g, &phi).unwrap(), pictured_assignment());
    assert!(pictured_assignment().satisfies(&m));
}

#[test]
fn pictured_model_consistent() {
    let m = parse_model(PICTURED_MODEL).unwrap();
    let Consistency::Consistent(a) = check_consistency(&m).unwrap() else {
        panic!("the pictured assignment satisfies the model");
    };
    assert!(a.satisfies(&m));
}

#[test]
fn random_models_match_enumeration() {
    let mut r = rng(41);
    let mut consistent = 0;
    for _ in 0..300 {
        let m = random_model(&mut r);
        let expected = enumerate_consistent(&m);
        match check_consistency(&m).unwrap() {
            Consistency::Consistent(a) => {
                assert!(expected);
                assert!(a.satisfies(&m));
                consistent += 1;
            }
            Consistency::Inconsistent => assert!(!expected),
        }
    }
    assert!(consistent > 30 && consistent < 290);
}

#[test]
fn unconstrained_value_default() {
    let m = parse_model(r#"{"variables": {"x": ["a"], "y": ["a", "b"], "z": ["a"]}}"#).unwrap();
    assert_eq!(m.card("a"), DegreeList::range(0, 3));
    assert!(matches!(check_consistency(&m).unwrap(), Consistency::Consistent(_)));
}
