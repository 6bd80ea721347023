use std::collections::BTreeSet;

use proptest::prelude::*;
use shaclds::ds::{flatten, merge_graphs, CombinationOp, CombinationTree, Operand};
use shaclds::{Dataset, Graph, Term, Triple};

const EX: &str = "http://example.org/";

fn name(i: u8) -> Term {
    Term::iri(&format!("{EX}g{i}"))
}

fn triple() -> impl Strategy<Value = Triple> {
    (0..4u8, 0..2u8, 0..4u8).prop_map(|(s, p, o)| {
        Triple::new(Term::iri(&format!("{EX}s{s}")), Term::iri(&format!("{EX}p{p}")), Term::iri(&format!("{EX}o{o}")))
    })
}

fn graph() -> impl Strategy<Value = Graph> {
    prop::collection::vec(triple(), 0..12).prop_map(|ts| {
        let mut g = Graph::new();
        for t in ts {
            g.insert(t);
        }
        g
    })
}

/// Named graphs g0..g3 plus a default graph.
fn dataset() -> impl Strategy<Value = Dataset> {
    (graph(), prop::collection::vec(graph(), 4)).prop_map(|(default, named)| {
        let mut d = Dataset::new();
        *d.default_graph_mut() = default;
        for (i, g) in named.into_iter().enumerate() {
            d.insert_graph(name(i as u8), g);
        }
        d
    })
}

fn operand(depth: u32) -> BoxedStrategy<Operand> {
    // g4 is never present in the dataset.
    let leaf = prop_oneof![8 => (0..5u8).prop_map(|i| Operand::Graph(name(i))), 1 => Just(Operand::All)];
    if depth == 0 {
        leaf.boxed()
    } else {
        prop_oneof![2 => leaf, 1 => tree(depth - 1).prop_map(Operand::Tree)].boxed()
    }
}

fn tree(depth: u32) -> BoxedStrategy<CombinationTree> {
    let op = prop_oneof![Just(CombinationOp::Or), Just(CombinationOp::And), Just(CombinationOp::Minus)];
    (op, prop::collection::vec(operand(depth), 1..4)).prop_map(|(op, operands)| CombinationTree::new(op, operands)).boxed()
}

type TripleSet = BTreeSet<Triple>;

fn set(g: &Graph) -> TripleSet {
    g.iter().cloned().collect()
}

fn oracle_operand(o: &Operand, d: &Dataset) -> TripleSet {
    match o {
        Operand::Graph(n) => d.named_graph(n).map(set).unwrap_or_default(),
        Operand::All => d.quads().map(|q| q.triple()).collect(),
        Operand::Tree(t) => oracle(t, d),
    }
}

fn oracle(t: &CombinationTree, d: &Dataset) -> TripleSet {
    let sets: Vec<TripleSet> = t.operands.iter().map(|o| oracle_operand(o, d)).collect();
    match t.op {
        CombinationOp::Or => sets.into_iter().flatten().collect(),
        CombinationOp::And => {
            let mut it = sets.into_iter();
            let first = it.next().unwrap_or_default();
            it.fold(first, |acc, s| acc.intersection(&s).cloned().collect())
        }
        CombinationOp::Minus => {
            let mut it = sets.into_iter();
            let first = it.next().unwrap_or_default();
            let rest: TripleSet = it.flatten().collect();
            first.difference(&rest).cloned().collect()
        }
    }
}

fn shuffled(t: &CombinationTree, rotate: usize) -> CombinationTree {
    let mut operands: Vec<Operand> = t
        .operands
        .iter()
        .map(|o| match o {
            Operand::Tree(inner) => Operand::Tree(shuffled(inner, rotate)),
            other => other.clone(),
        })
        .collect();
    let n = operands.len();
    match t.op {
        CombinationOp::Minus if n > 1 => operands[1..].rotate_left(rotate % (n - 1)),
        CombinationOp::Minus => {}
        _ => operands.rotate_left(rotate % n),
    }
    CombinationTree::new(t.op, operands)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn materialize_matches_set_oracle(d in dataset(), t in tree(2)) {
        prop_assert_eq!(set(&t.materialize(&d)), oracle(&t, &d));
    }

    #[test]
    fn operand_order_changes_neither_graph_nor_identifier(d in dataset(), t in tree(2), rotate in 0usize..3) {
        let s = shuffled(&t, rotate);
        prop_assert_eq!(s.skolem_id(), t.skolem_id());
        prop_assert_eq!(set(&s.materialize(&d)), set(&t.materialize(&d)));
    }

    #[test]
    fn flatten_equals_union_of_all(d in dataset()) {
        let all = CombinationTree::new(CombinationOp::Or, vec![Operand::All]);
        prop_assert_eq!(set(&flatten(&d)), set(&all.materialize(&d)));
        prop_assert_eq!(set(&flatten(&d)), d.quads().map(|q| q.triple()).collect::<TripleSet>());
    }

    #[test]
    fn merging_named_graphs_is_their_union(d in dataset(), picks in prop::collection::vec(0..5u8, 0..4)) {
        let names: Vec<Term> = picks.iter().map(|i| name(*i)).collect();
        let tree = CombinationTree::new(CombinationOp::Or, names.iter().cloned().map(Operand::Graph).collect());
        prop_assert_eq!(set(&merge_graphs(&d, &names)), oracle(&tree, &d));
    }
}

#[test]
fn distinct_trees_get_distinct_identifiers() {
    let or = CombinationTree::new(CombinationOp::Or, vec![Operand::Graph(name(0)), Operand::Graph(name(1))]);
    let and = CombinationTree::new(CombinationOp::And, vec![Operand::Graph(name(0)), Operand::Graph(name(1))]);
    let minus = CombinationTree::new(CombinationOp::Minus, vec![Operand::Graph(name(0)), Operand::Graph(name(1))]);
    let reversed = CombinationTree::new(CombinationOp::Minus, vec![Operand::Graph(name(1)), Operand::Graph(name(0))]);
    let ids: BTreeSet<Term> = [&or, &and, &minus, &reversed].iter().map(|t| t.skolem_id()).collect();
    assert_eq!(ids.len(), 4);
}
