//! Dataset isomorphism up to blank-node relabelling.
//!
//! Colour refinement narrows candidate pairings, then a backtracking search
//! looks for a bijection. Exponential in the worst case but fine for the
//! document sizes used in round-trip checks.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::hash::{Hash, Hasher};

use super::{Dataset, Graph, Quad, Term};

pub fn graphs_isomorphic(a: &Graph, b: &Graph) -> bool {
    let mut da = Dataset::new();
    *da.default_graph_mut() = a.clone();
    let mut db = Dataset::new();
    *db.default_graph_mut() = b.clone();
    isomorphic(&da, &db)
}

pub fn isomorphic(a: &Dataset, b: &Dataset) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let (ground_a, blank_a): (Vec<Quad>, Vec<Quad>) = a.quads().partition(is_ground);
    let (ground_b, blank_b): (Vec<Quad>, Vec<Quad>) = b.quads().partition(is_ground);
    if ground_a.len() != ground_b.len() {
        return false;
    }
    let set_b: HashSet<&Quad> = ground_b.iter().collect();
    if !ground_a.iter().all(|q| set_b.contains(q)) {
        return false;
    }
    let colours_a = refine(&blank_a);
    let colours_b = refine(&blank_b);
    let mut hist_a: Vec<u64> = colours_a.values().copied().collect();
    let mut hist_b: Vec<u64> = colours_b.values().copied().collect();
    hist_a.sort_unstable();
    hist_b.sort_unstable();
    if hist_a != hist_b {
        return false;
    }
    let mut order: Vec<&Term> = colours_a.keys().collect();
    order.sort_by_key(|t| {
        let c = colours_a[*t];
        (hist_a.iter().filter(|&&x| x == c).count(), (*t).clone())
    });
    let target: HashSet<Quad> = blank_b.into_iter().collect();
    let mut mapping = HashMap::new();
    let mut used = HashSet::new();
    search(&order, 0, &colours_a, &colours_b, &blank_a, &target, &mut mapping, &mut used)
}

fn is_ground(q: &Quad) -> bool {
    !q.subject.is_blank() && !q.object.is_blank()
}

fn refine(quads: &[Quad]) -> BTreeMap<Term, u64> {
    let mut colours: BTreeMap<Term, u64> = BTreeMap::new();
    for q in quads {
        for t in [&q.subject, &q.object] {
            if t.is_blank() {
                colours.insert(t.clone(), 0);
            }
        }
    }
    let mut classes = 1;
    loop {
        let mut next: BTreeMap<Term, Vec<u64>> = colours.keys().map(|k| (k.clone(), Vec::new())).collect();
        for q in quads {
            let sig = |pos: u8, other: &Term| {
                let mut h = DefaultHasher::new();
                pos.hash(&mut h);
                q.predicate.hash(&mut h);
                q.graph.hash(&mut h);
                match colours.get(other) {
                    Some(c) => (1u8, c).hash(&mut h),
                    None => (0u8, other).hash(&mut h),
                }
                h.finish()
            };
            if q.subject.is_blank() {
                let s = sig(0, &q.object);
                next.get_mut(&q.subject).unwrap().push(s);
            }
            if q.object.is_blank() {
                let s = sig(1, &q.subject);
                next.get_mut(&q.object).unwrap().push(s);
            }
        }
        let mut updated = BTreeMap::new();
        for (k, mut sigs) in next {
            sigs.sort_unstable();
            let mut h = DefaultHasher::new();
            colours[&k].hash(&mut h);
            sigs.hash(&mut h);
            updated.insert(k, h.finish());
        }
        let distinct = updated.values().collect::<HashSet<_>>().len();
        colours = updated;
        if distinct == classes {
            return colours;
        }
        classes = distinct;
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    order: &[&Term],
    depth: usize,
    colours_a: &BTreeMap<Term, u64>,
    colours_b: &BTreeMap<Term, u64>,
    quads_a: &[Quad],
    target: &HashSet<Quad>,
    mapping: &mut HashMap<Term, Term>,
    used: &mut HashSet<Term>,
) -> bool {
    if depth == order.len() {
        return quads_a.iter().all(|q| target.contains(&relabel(q, mapping)));
    }
    let node = order[depth];
    let colour = colours_a[node];
    for (candidate, c) in colours_b {
        if *c != colour || used.contains(candidate) {
            continue;
        }
        mapping.insert(node.clone(), candidate.clone());
        used.insert(candidate.clone());
        let consistent = quads_a.iter().all(|q| {
            let fully_mapped = [&q.subject, &q.object].iter().all(|t| !t.is_blank() || mapping.contains_key(*t));
            !fully_mapped || target.contains(&relabel(q, mapping))
        });
        if consistent && search(order, depth + 1, colours_a, colours_b, quads_a, target, mapping, used) {
            return true;
        }
        mapping.remove(node);
        used.remove(candidate);
    }
    false
}

fn relabel(q: &Quad, mapping: &HashMap<Term, Term>) -> Quad {
    let map = |t: &Term| mapping.get(t).cloned().unwrap_or_else(|| t.clone());
    Quad { subject: map(&q.subject), predicate: q.predicate.clone(), object: map(&q.object), graph: q.graph.clone() }
}
