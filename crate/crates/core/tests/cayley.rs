mod common;

use std::sync::Arc;

use cayley_cliques::cayley::{paley_subfield_clique_predicate, CayleyGraph, GraphKind, Strategy};
use cayley_cliques::ff::{build_field, Element};
use cayley_cliques::Error;

fn graph(p: u64, e: u32, kind: GraphKind) -> CayleyGraph {
    CayleyGraph::new(Arc::new(build_field(p, e).unwrap()), kind).unwrap()
}

#[test]
fn undirected_and_translation_invariant() {
    for (p, e, kind) in [
        (3, 4, GraphKind::GeneralizedPeisert { d: 4 }),
        (5, 2, GraphKind::GeneralizedPaley { d: 3 }),
        (
            13,
            1,
            GraphKind::ResidueClass {
                d: 6,
                classes: vec![1, 4],
            },
        ),
    ] {
        let g = graph(p, e, kind);
        let t = g.table();
        let els: Vec<Element> = t.elements().collect();
        for &u in &els {
            for &v in &els {
                if u == v {
                    assert_eq!(g.adjacent(u, v), Err(Error::SelfLoopQuery(u.0)));
                    continue;
                }
                let a = g.adjacent(u, v).unwrap();
                assert_eq!(a, g.adjacent(v, u).unwrap());
                assert_eq!(a, g.in_connection_set(t.sub(u, v)));
                for w in [Element(1), Element(2), *els.last().unwrap()] {
                    assert_eq!(a, g.adjacent(t.add(u, w), t.add(v, w)).unwrap());
                }
            }
        }
        let s = g.connection_set();
        assert!(s.iter().all(|&x| g.in_connection_set(t.neg(x))));
        assert!(!g.in_connection_set(Element::ZERO));
    }
}

#[test]
fn paley_edges_lie_inside_peisert() {
    for (p, e, d) in [(3u64, 4u32, 4u64), (5, 4, 4), (5, 4, 6), (7, 2, 4), (13, 2, 12)] {
        let paley = graph(p, e, GraphKind::GeneralizedPaley { d });
        let peisert = graph(p, e, GraphKind::GeneralizedPeisert { d });
        let s = paley.connection_set();
        assert!(s.iter().all(|&x| peisert.in_connection_set(x)));
        assert_eq!(s.len() as u64 * d / 2, peisert.connection_set().len() as u64);
    }
}

#[test]
fn connection_set_sizes() {
    let g = graph(13, 1, GraphKind::GeneralizedPaley { d: 3 });
    assert_eq!(
        g.connection_set(),
        vec![Element(1), Element(5), Element(8), Element(12)]
    );
    let g = graph(3, 6, GraphKind::GeneralizedPaley { d: 13 });
    assert_eq!(g.connection_set().len(), 728 / 13);
}

#[test]
fn subfield_cliques_follow_divisibility() {
    for (p, e) in [(3u64, 4u32), (3, 6), (5, 4), (7, 2), (5, 6)] {
        let q = p.pow(e);
        let table = Arc::new(build_field(p, e).unwrap());
        for d in (2..q).filter(|d| (q - 1) % (2 * d) == 0) {
            let g = CayleyGraph::new(table.clone(), GraphKind::GeneralizedPaley { d }).unwrap();
            for r in (1..=e).filter(|r| e % r == 0) {
                let sub = table.subfield_elements(r).unwrap();
                let direct = g.is_clique(&sub);
                assert_eq!(
                    direct,
                    paley_subfield_clique_predicate(p, e, r, d),
                    "GF({p}^{e}) d={d} r={r}"
                );
                assert_eq!(direct, g.subfield_is_clique(r).unwrap());
            }
        }
    }
}

#[test]
fn greedy_extension_is_maximal() {
    for (p, e, kind, r) in [
        (3, 4, GraphKind::GeneralizedPeisert { d: 4 }, 1),
        (5, 4, GraphKind::GeneralizedPaley { d: 2 }, 1),
        (7, 4, GraphKind::GeneralizedPaley { d: 4 }, 1),
        (3, 6, GraphKind::GeneralizedPaley { d: 7 }, 1),
    ] {
        let g = graph(p, e, kind);
        let base = g.table().subfield_elements(r).unwrap();
        let greedy = g.extend_to_maximal_clique(&base, Strategy::Greedy, 0).unwrap();
        assert!(base.iter().all(|b| greedy.clique.contains(b)));
        let (maximal, witnesses) = g.is_maximal_clique(&greedy.clique).unwrap();
        assert!(maximal && witnesses.is_empty());
        let exact = g.extend_to_maximal_clique(&base, Strategy::Exact, 5000).unwrap();
        assert!(g.is_maximal_clique(&exact.clique).unwrap().0);
        assert!(exact.clique.len() >= greedy.clique.len());
    }
}

#[test]
fn gf81_peisert_base_field() {
    let g = graph(3, 4, GraphKind::GeneralizedPeisert { d: 4 });
    let base = g.table().subfield_elements(1).unwrap();
    assert!(g.is_clique(&base));
    assert!(g.is_maximal_subfield_clique(1).unwrap());
    let cn = g.common_neighbors(&base);
    assert_eq!(cn.len(), 12);
    let (maximal, witnesses) = g.is_maximal_clique(&base).unwrap();
    assert!(!maximal);
    assert_eq!(witnesses, cn);
    let ext = g.extend_to_maximal_clique(&base, Strategy::Exact, 100).unwrap();
    assert_eq!(ext.clique.len(), 9);
}

#[test]
fn exact_search_respects_budget() {
    let g = graph(3, 4, GraphKind::GeneralizedPeisert { d: 4 });
    let base = g.table().subfield_elements(1).unwrap();
    assert_eq!(
        g.extend_to_maximal_clique(&base, Strategy::Exact, 5).unwrap_err(),
        Error::ExactBudgetExceeded { size: 12, budget: 5 }
    );
    assert_eq!(
        g.extend_to_maximal_clique(&[Element(0), Element(2)], Strategy::Greedy, 0)
            .map(|_| ()),
        if g.adjacent(Element(0), Element(2)).unwrap() {
            Ok(())
        } else {
            Err(Error::NotAClique)
        }
    );
}

#[test]
fn clique_number_matches_exhaustive_search() {
    for (p, e, kind) in [
        (3, 2, GraphKind::GeneralizedPaley { d: 2 }),
        (17, 1, GraphKind::GeneralizedPaley { d: 2 }),
        (17, 1, GraphKind::GeneralizedPeisert { d: 4 }),
        (
            13,
            1,
            GraphKind::ResidueClass {
                d: 6,
                classes: vec![0, 2, 5],
            },
        ),
    ] {
        let g = graph(p, e, kind);
        let n = g.order() as usize;
        let want =
            common::exhaustive_clique_number(n, |i, j| g.adjacent(Element(i as u32), Element(j as u32)).unwrap());
        assert_eq!(g.clique_number(u64::MAX).unwrap(), want);
    }
}

#[test]
fn invalid_graphs_are_rejected() {
    let t = Arc::new(build_field(3, 4).unwrap());
    assert_eq!(
        CayleyGraph::new(t.clone(), GraphKind::GeneralizedPeisert { d: 5 }).unwrap_err(),
        Error::OddD(5)
    );
    assert!(matches!(
        CayleyGraph::new(t.clone(), GraphKind::GeneralizedPaley { d: 3 }),
        Err(Error::DegenerateModulus { .. })
    ));
    assert_eq!(
        CayleyGraph::new(t, GraphKind::ResidueClass { d: 4, classes: vec![] }).unwrap_err(),
        Error::EmptyJ
    );
}

#[test]
fn common_neighbours_of_complete_and_square_paley_graphs() {
    let g = graph(
        7,
        2,
        GraphKind::ResidueClass {
            d: 4,
            classes: vec![0, 1, 2, 3],
        },
    );
    assert_eq!(
        g.common_neighbors(&[Element::ZERO]),
        g.table().elements().skip(1).collect::<Vec<_>>()
    );
    for (p, s) in [(3u64, 1u32), (5, 1), (7, 1), (3, 2)] {
        let g = graph(p, 2 * s, GraphKind::GeneralizedPaley { d: 2 });
        let base = g.table().subfield_elements(s).unwrap();
        assert!(g.common_neighbors(&base).is_empty());
    }
}
