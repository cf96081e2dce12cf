//! Membership tests for the two subgroups a type system carves out of V —
//! the elements preserving every type, and the elements permuting the type
//! classes — together with matched decompositions of clopen sets and
//! constructive conjugator witnesses.

use std::collections::{BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::address::{completing_antichain, Address};
use crate::classify::{classify, Classification, Kind};
use crate::diagram::{class_finiteness, ClassSize, TypeSystem};
use crate::element::PrefixMap;
use crate::semigroup::{stype_equal, StypeCalculator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MembershipError {
    #[error("element does not stabilize the type partition")]
    NotInStab,
    #[error("the two sets have different s-types, so no matched decomposition exists")]
    TypeMismatch,
    #[error("no matched decomposition within {budget} subdivisions")]
    SearchExhausted { budget: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

/// Does the element preserve the type of every address it moves?
///
/// Checking the normalized cone pairs suffices: on a reduced system, two
/// labels that agree on all extensions at any fixed depth are equal, so a
/// type-preserving action on whole cones is exactly pairwise label equality.
pub fn in_fix(t: &TypeSystem, g: &PrefixMap) -> bool {
    let g = g.normalize();
    g.pairs().iter().all(|(d, r)| t.type_of(d) == t.type_of(r))
}

/// Slow auditable variant: compare types pointwise on every address of the
/// given length. `depth` must be at least the element's cone depth.
pub fn in_fix_pointwise(t: &TypeSystem, g: &PrefixMap, depth: usize) -> bool {
    let g = g.normalize();
    assert!(depth >= g.depth());
    Address::root().extensions_to_depth(depth).iter().all(|w| {
        let image = g.partial_apply(w).expect("depth covers all domain cones");
        t.type_of(w) == t.type_of(&image)
    })
}

/// The label-pair relation an element induces on deep addresses: seeded by
/// its cone pairs, closed under taking both children.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabelRelation {
    pairs: BTreeSet<(usize, usize)>,
}

impl LabelRelation {
    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    /// No label relates to two different labels.
    pub fn is_functional(&self) -> bool {
        let mut seen: HashMap<usize, usize> = HashMap::new();
        self.pairs
            .iter()
            .all(|&(p, q)| *seen.entry(p).or_insert(q) == q)
    }

    /// No two labels relate to the same label.
    pub fn is_injective(&self) -> bool {
        let mut seen: HashMap<usize, usize> = HashMap::new();
        self.pairs
            .iter()
            .all(|&(p, q)| *seen.entry(q).or_insert(p) == p)
    }

    pub fn named(&self, t: &TypeSystem) -> Vec<(String, String)> {
        self.pairs
            .iter()
            .map(|&(p, q)| (t.name(p).to_string(), t.name(q).to_string()))
            .collect()
    }
}

/// The child-closure of the element's seed pairs; at most `labels²` entries.
pub fn stab_closure(t: &TypeSystem, g: &PrefixMap) -> LabelRelation {
    let g = g.normalize();
    let mut pairs = BTreeSet::new();
    let mut queue: VecDeque<(usize, usize)> = g
        .pairs()
        .iter()
        .map(|(d, r)| (t.type_of(d), t.type_of(r)))
        .collect();
    while let Some(pair) = queue.pop_front() {
        if !pairs.insert(pair) {
            continue;
        }
        let (p, q) = pair;
        for bit in 0..2u8 {
            queue.push_back((t.child(p, bit), t.child(q, bit)));
        }
    }
    LabelRelation { pairs }
}

/// Does the element permute the type classes? True exactly when the induced
/// label relation is a partial bijection; the relation is returned either
/// way.
pub fn in_stab(t: &TypeSystem, g: &PrefixMap) -> (bool, LabelRelation) {
    let relation = stab_closure(t, g);
    let ok = relation.is_functional() && relation.is_injective();
    (ok, relation)
}

/// The permutation the element induces on labels with infinitely many
/// addresses, as sorted (from, to) label pairs. Labels with finite classes
/// are dropped: only the infinite ones carry the action on the partition.
pub fn induced_class_permutation(
    t: &TypeSystem,
    g: &PrefixMap,
) -> Result<Vec<(usize, usize)>, MembershipError> {
    let (ok, relation) = in_stab(t, g);
    if !ok {
        return Err(MembershipError::NotInStab);
    }
    let sizes = class_finiteness(t);
    Ok(relation
        .pairs()
        .iter()
        .copied()
        .filter(|&(p, _)| sizes[p] == ClassSize::Infinite)
        .collect())
}

/// A pair of subdivisions with a type-preserving pairing between them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatchedDecomposition {
    /// (source leaf, target leaf), equal types componentwise; the first
    /// components partition the source set, the second the target set.
    pub pairs: Vec<(Address, Address)>,
}

type State = Vec<u64>;

struct Side {
    /// levels[d] maps each state first reached with d subdivisions to the
    /// (predecessor state, split label) that reached it first.
    levels: Vec<HashMap<State, Option<(State, usize)>>>,
    first_depth: HashMap<State, usize>,
}

impl Side {
    fn start(state: State) -> Side {
        let mut first_depth = HashMap::new();
        first_depth.insert(state.clone(), 0);
        let mut level0 = HashMap::new();
        level0.insert(state, None);
        Side {
            levels: vec![level0],
            first_depth,
        }
    }

    /// Expands one level; returns the newly reached states, sorted.
    fn expand(&mut self, t: &TypeSystem) -> Vec<State> {
        let depth = self.levels.len();
        let mut frontier: Vec<State> = self.levels[depth - 1].keys().cloned().collect();
        frontier.sort();
        let mut next: HashMap<State, Option<(State, usize)>> = HashMap::new();
        for state in frontier {
            for label in 0..t.len() {
                if state[label] == 0 {
                    continue;
                }
                let mut child = state.clone();
                child[label] -= 1;
                child[t.child(label, 0)] += 1;
                child[t.child(label, 1)] += 1;
                if !self.first_depth.contains_key(&child) && !next.contains_key(&child) {
                    next.insert(child, Some((state.clone(), label)));
                }
            }
        }
        let mut fresh: Vec<State> = next.keys().cloned().collect();
        fresh.sort();
        for s in &fresh {
            self.first_depth.insert(s.clone(), depth);
        }
        self.levels.push(next);
        fresh
    }

    /// The split-label sequence that first reached `state`.
    fn path_to(&self, state: &State) -> Vec<usize> {
        let mut depth = self.first_depth[state];
        let mut cur = state.clone();
        let mut rev = Vec::new();
        while depth > 0 {
            let (prev, label) = self.levels[depth][&cur]
                .clone()
                .expect("non-start states record a predecessor");
            rev.push(label);
            cur = prev;
            depth -= 1;
        }
        rev.reverse();
        rev
    }
}

fn leaf_counts(t: &TypeSystem, cones: &[Address]) -> State {
    let mut counts = vec![0u64; t.len()];
    for a in cones {
        counts[t.type_of(a)] += 1;
    }
    counts
}

/// Applies a split sequence, always subdividing the lexicographically least
/// leaf of the requested type.
fn materialize(t: &TypeSystem, cones: &[Address], splits: &[usize]) -> Vec<Address> {
    let mut leaves: Vec<Address> = cones.to_vec();
    leaves.sort();
    for &label in splits {
        let pos = leaves
            .iter()
            .position(|a| t.type_of(a) == label)
            .expect("the search only requests available splits");
        let leaf = leaves.remove(pos);
        for bit in [0u8, 1] {
            let child = leaf.child(bit);
            let at = leaves.binary_search(&child).unwrap_err();
            leaves.insert(at, child);
        }
    }
    leaves
}

fn check_disjoint(cones: &[Address], side: &str) -> Result<(), MembershipError> {
    if cones.is_empty() {
        return Err(MembershipError::PreconditionViolated(format!(
            "{side} cone set is empty"
        )));
    }
    for (i, a) in cones.iter().enumerate() {
        for b in &cones[i + 1..] {
            if !a.incomparable(b) {
                return Err(MembershipError::PreconditionViolated(format!(
                    "{side} cones {a} and {b} overlap"
                )));
            }
        }
    }
    Ok(())
}

/// Finds subdivisions of the two cone sets whose leaves pair up with equal
/// types, using at most `budget` subdivisions in total.
///
/// The search walks label-count vectors from both ends, one subdivision
/// level at a time, and among all meetings of minimal total cost commits to
/// the lexicographically least meeting vector — so the result is
/// deterministic and the total number of subdivisions is minimal. On
/// nuclear systems, unequal s-types certify non-existence as
/// `TypeMismatch`; otherwise a fruitless search ends in `SearchExhausted`.
pub fn matched_decomposition(
    t: &TypeSystem,
    source: &[Address],
    target: &[Address],
    budget: usize,
) -> Result<MatchedDecomposition, MembershipError> {
    check_disjoint(source, "source")?;
    check_disjoint(target, "target")?;
    let classification = classify(t);
    if classification.kind == Kind::Nuclear {
        let calc = StypeCalculator::new(t, &classification)
            .expect("nuclear systems always admit the calculator");
        if !stype_equal(&calc.stype_of(t, source), &calc.stype_of(t, target)) {
            return Err(MembershipError::TypeMismatch);
        }
    }

    let mut src = Side::start(leaf_counts(t, source));
    let mut tgt = Side::start(leaf_counts(t, target));
    // (total cost, meeting state)
    let mut best: Option<(usize, State)> = None;
    let consider = |state: &State, total: usize, best: &mut Option<(usize, State)>| {
        if total > budget {
            return;
        }
        let better = match best {
            None => true,
            Some((bt, bs)) => total < *bt || (total == *bt && state < bs),
        };
        if better {
            *best = Some((total, state.clone()));
        }
    };
    let start_state: Vec<State> = src.levels[0].keys().cloned().collect();
    if tgt.first_depth.contains_key(&start_state[0]) {
        consider(&start_state[0], 0, &mut best);
    }
    for depth in 1..=budget {
        if let Some((bt, _)) = &best {
            if *bt < depth {
                break;
            }
        }
        for s in src.expand(t) {
            if let Some(&d) = tgt.first_depth.get(&s) {
                consider(&s, depth + d, &mut best);
            }
        }
        for s in tgt.expand(t) {
            if let Some(&d) = src.first_depth.get(&s) {
                consider(&s, depth + d, &mut best);
            }
        }
    }
    let Some((_, meet)) = best else {
        return Err(MembershipError::SearchExhausted { budget });
    };

    let src_leaves = materialize(t, source, &src.path_to(&meet));
    let tgt_leaves = materialize(t, target, &tgt.path_to(&meet));
    let sort_key = |t: &TypeSystem, a: &Address| (t.type_of(a), a.clone());
    let mut src_sorted = src_leaves;
    src_sorted.sort_by_key(|a| sort_key(t, a));
    let mut tgt_sorted = tgt_leaves;
    tgt_sorted.sort_by_key(|a| sort_key(t, a));
    let mut pairs: Vec<(Address, Address)> = src_sorted.into_iter().zip(tgt_sorted).collect();
    debug_assert!(pairs.iter().all(|(a, b)| t.type_of(a) == t.type_of(b)));
    pairs.sort();
    Ok(MatchedDecomposition { pairs })
}

/// Builds a type-preserving element sending cone `alpha` to `alpha_to` and
/// cone `beta` to `beta_to`, completing the rest of the space by a matched
/// decomposition of the two complements.
pub fn witness_conjugator(
    t: &TypeSystem,
    c: &Classification,
    alpha: &Address,
    alpha_to: &Address,
    beta: &Address,
    beta_to: &Address,
    budget: usize,
) -> Result<PrefixMap, MembershipError> {
    let stable = match (c.kind.clone(), c.stable_depth) {
        (Kind::Nuclear | Kind::Multinuclear { .. }, Some(d)) => d,
        (Kind::QuasinuclearAtomic { branching: true }, Some(d)) => d,
        _ => {
            return Err(MembershipError::PreconditionViolated(
                "classification kind admits no stable depth".into(),
            ))
        }
    };
    for (x, side) in [
        (alpha, "source"),
        (beta, "source"),
        (alpha_to, "target"),
        (beta_to, "target"),
    ] {
        if x.len() < stable {
            return Err(MembershipError::PreconditionViolated(format!(
                "{side} address {x} is shallower than the stable depth {stable}"
            )));
        }
    }
    if !alpha.incomparable(beta) || !alpha_to.incomparable(beta_to) {
        return Err(MembershipError::PreconditionViolated(
            "prescribed cones overlap".into(),
        ));
    }
    if t.type_of(alpha) != t.type_of(alpha_to) || t.type_of(beta) != t.type_of(beta_to) {
        return Err(MembershipError::PreconditionViolated(
            "prescribed cones have mismatched types".into(),
        ));
    }
    let rest = |a: &Address, b: &Address| -> Result<Vec<Address>, MembershipError> {
        let completion = completing_antichain(&[a.clone(), b.clone()])
            .expect("incomparable pairs always complete");
        Ok(completion
            .addresses()
            .iter()
            .filter(|x| *x != a && *x != b)
            .cloned()
            .collect())
    };
    let rest_src = rest(alpha, beta)?;
    let rest_tgt = rest(alpha_to, beta_to)?;
    let matched = matched_decomposition(t, &rest_src, &rest_tgt, budget)?;
    let mut pairs = vec![
        (alpha.clone(), alpha_to.clone()),
        (beta.clone(), beta_to.clone()),
    ];
    pairs.extend(matched.pairs);
    let g =
        PrefixMap::new(pairs).expect("matched complements assemble into a bijection of partitions");
    debug_assert!(in_fix(t, &g));
    Ok(g)
}

/// All type-preserving transpositions of two cones at the given depth,
/// ordered by their swapped pair.
pub fn fix_transpositions_at_depth(t: &TypeSystem, depth: usize) -> Vec<PrefixMap> {
    assert!(depth >= 1);
    let words = Address::root().extensions_to_depth(depth);
    let mut out = Vec::new();
    for (i, a) in words.iter().enumerate() {
        for b in &words[i + 1..] {
            if t.type_of(a) == t.type_of(b) {
                out.push(
                    PrefixMap::transposition(a, b)
                        .expect("distinct equal-length addresses are incomparable"),
                );
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems;

    fn addr(s: &str) -> Address {
        s.parse().unwrap()
    }

    fn addrs(xs: &[&str]) -> Vec<Address> {
        xs.iter().map(|s| addr(s)).collect()
    }

    fn map(pairs: &[(&str, &str)]) -> PrefixMap {
        PrefixMap::new(pairs.iter().map(|(d, r)| (addr(d), addr(r))).collect()).unwrap()
    }

    fn swap(a: &str, b: &str) -> PrefixMap {
        PrefixMap::transposition(&addr(a), &addr(b)).unwrap()
    }

    #[test]
    fn fix_membership_on_parity() {
        let t = systems::parity();
        assert!(in_fix(&t, &PrefixMap::identity()));
        assert!(in_fix(&t, &swap("00", "01")));
        assert!(in_fix(&t, &swap("0", "1")));
        assert!(!in_fix(&t, &swap("0", "10")));
        // Odd length change on every cone: moves types, not in the kernel.
        let shift = map(&[("0", "00"), ("10", "01"), ("110", "10"), ("111", "11")]);
        assert!(!in_fix(&t, &shift));
    }

    #[test]
    fn fix_agrees_with_pointwise_checking() {
        let t = systems::two_points();
        let candidates = [
            PrefixMap::identity(),
            swap("00", "01"),
            swap("01", "10"),
            swap("0", "10"),
            map(&[("0", "00"), ("10", "01"), ("110", "10"), ("111", "11")]),
        ];
        for g in &candidates {
            let depth = g.normalize().depth() + 3;
            assert_eq!(in_fix(&t, g), in_fix_pointwise(&t, g, depth), "{g}");
        }
    }

    #[test]
    fn stab_closure_of_the_odd_shift() {
        let t = systems::parity();
        let shift = map(&[("0", "00"), ("10", "01"), ("110", "10"), ("111", "11")]);
        let (ok, relation) = in_stab(&t, &shift);
        // The seed pair (10 -> 01) preserves length parity while the others
        // flip it, so the closure collects all four label pairs and the
        // relation fails to be a bijection.
        assert_eq!(
            relation.named(&t),
            vec![
                ("A".into(), "A".into()),
                ("A".into(), "B".into()),
                ("B".into(), "A".into()),
                ("B".into(), "B".into()),
            ]
        );
        assert!(!ok);
        assert!(!relation.is_functional());
        assert!(!relation.is_injective());
    }

    #[test]
    fn stab_examples() {
        let t = systems::parity();
        assert!(!in_stab(&t, &swap("0", "10")).0);
        for g in [PrefixMap::identity(), swap("00", "01"), swap("0", "1")] {
            assert!(in_fix(&t, &g));
            assert!(in_stab(&t, &g).0, "members of the kernel stabilize");
        }
    }

    #[test]
    fn class_permutation_of_a_nucleus_swap() {
        let t = systems::three_blocks();
        let g = swap("10", "11");
        assert!(!in_fix(&t, &g));
        let (ok, relation) = in_stab(&t, &g);
        assert!(ok);
        assert_eq!(
            relation.named(&t),
            vec![
                ("Q".into(), "Q".into()),
                ("R".into(), "S".into()),
                ("S".into(), "R".into()),
            ]
        );
        let perm = induced_class_permutation(&t, &g).unwrap();
        let named: Vec<(String, String)> = perm
            .iter()
            .map(|&(p, q)| (t.name(p).to_string(), t.name(q).to_string()))
            .collect();
        assert_eq!(
            named,
            vec![
                ("Q".into(), "Q".into()),
                ("R".into(), "S".into()),
                ("S".into(), "R".into()),
            ]
        );
        // A depth-mismatched swap relates R to both Q and R: rejected.
        assert_eq!(
            induced_class_permutation(&t, &swap("0", "100")),
            Err(MembershipError::NotInStab)
        );
    }

    #[test]
    fn fix_elements_induce_identity_permutation() {
        let t = systems::parity();
        let perm = induced_class_permutation(&t, &swap("00", "01")).unwrap();
        assert!(perm.iter().all(|&(p, q)| p == q));
        assert_eq!(perm.len(), 2);
    }

    #[test]
    fn matched_decomposition_examples() {
        let t = systems::parity();
        // Identical sets need no subdivision.
        let d = matched_decomposition(&t, &addrs(&["00", "1"]), &addrs(&["00", "1"]), 8).unwrap();
        assert_eq!(
            d.pairs,
            vec![(addr("00"), addr("00")), (addr("1"), addr("1"))]
        );
        // One subdivision of the deeper side.
        let d = matched_decomposition(&t, &addrs(&["00", "01"]), &addrs(&["0"]), 8).unwrap();
        assert_eq!(
            d.pairs,
            vec![(addr("00"), addr("00")), (addr("01"), addr("01"))]
        );
        // Certified impossible: the cosets differ.
        assert_eq!(
            matched_decomposition(&t, &addrs(&["0"]), &addrs(&["00"]), 8),
            Err(MembershipError::TypeMismatch)
        );
        // Overlapping cones are rejected.
        assert!(matches!(
            matched_decomposition(&t, &addrs(&["0", "00"]), &addrs(&["1"]), 8),
            Err(MembershipError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn matched_decomposition_exhausts_on_impossible_quasinuclear_input() {
        // Splitting A yields A and B, splitting B yields two Bs, so the
        // A-count is invariant under subdivision: every subdivision of
        // {cone e} keeps exactly one A-leaf while subdivisions of the
        // B-cone {01} keep zero. No budget suffices, and the system is not
        // nuclear so no s-type certificate is available — the search must
        // exhaust.
        let t = systems::point_zero();
        assert_eq!(
            matched_decomposition(&t, &addrs(&["e"]), &addrs(&["01"]), 2),
            Err(MembershipError::SearchExhausted { budget: 2 })
        );
    }

    #[test]
    fn decomposition_is_minimal_and_deterministic() {
        let t = systems::two_points();
        let a = addrs(&["0"]);
        let b = addrs(&["00", "01"]);
        let d1 = matched_decomposition(&t, &a, &b, 12).unwrap();
        let d2 = matched_decomposition(&t, &a, &b, 12).unwrap();
        assert_eq!(d1, d2);
        // The source side must split exactly once to mirror the target.
        assert_eq!(d1.pairs.len(), 2);
        for (x, y) in &d1.pairs {
            assert_eq!(t.type_of(x), t.type_of(y));
        }
    }

    #[test]
    fn conjugator_witness_on_parity() {
        let t = systems::parity();
        let c = classify(&t);
        let g = witness_conjugator(
            &t,
            &c,
            &addr("00"),
            &addr("01"),
            &addr("10"),
            &addr("11"),
            24,
        )
        .unwrap();
        assert_eq!(
            g.pairs().to_vec(),
            vec![
                (addr("00"), addr("01")),
                (addr("01"), addr("00")),
                (addr("10"), addr("11")),
                (addr("11"), addr("10")),
            ]
        );
        assert!(in_fix(&t, &g));
        assert_eq!(g.partial_apply(&addr("00")), Some(addr("01")));
        assert_eq!(g.partial_apply(&addr("10")), Some(addr("11")));
    }

    #[test]
    fn conjugator_rejects_bad_prescriptions() {
        let t = systems::parity();
        let c = classify(&t);
        // Mismatched types.
        assert!(matches!(
            witness_conjugator(
                &t,
                &c,
                &addr("00"),
                &addr("010"),
                &addr("10"),
                &addr("11"),
                24
            ),
            Err(MembershipError::PreconditionViolated(_))
        ));
        // Shallower than the stable depth.
        assert!(matches!(
            witness_conjugator(&t, &c, &addr("0"), &addr("1"), &addr("10"), &addr("11"), 24),
            Err(MembershipError::PreconditionViolated(_))
        ));
        // Overlapping cones.
        assert!(matches!(
            witness_conjugator(
                &t,
                &c,
                &addr("00"),
                &addr("01"),
                &addr("000"),
                &addr("11"),
                24
            ),
            Err(MembershipError::PreconditionViolated(_))
        ));
        // No stable depth for non-branching quasinuclear kinds.
        let tq = systems::point_zero();
        let cq = classify(&tq);
        assert!(matches!(
            witness_conjugator(
                &tq,
                &cq,
                &addr("01"),
                &addr("10"),
                &addr("11"),
                &addr("001"),
                24
            ),
            Err(MembershipError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn transpositions_at_depth() {
        let t = systems::parity();
        assert_eq!(fix_transpositions_at_depth(&t, 1), vec![swap("0", "1")]);
        let t = systems::point_zero();
        assert_eq!(
            fix_transpositions_at_depth(&t, 2),
            vec![swap("01", "10"), swap("01", "11"), swap("10", "11")]
        );
        let t = systems::universal();
        assert_eq!(fix_transpositions_at_depth(&t, 1), vec![swap("0", "1")]);
        for g in fix_transpositions_at_depth(&systems::two_points(), 3) {
            assert!(in_fix(&systems::two_points(), &g));
        }
    }

    #[test]
    fn fix_is_normal_in_stab_on_a_nucleus_swap() {
        let t = systems::three_blocks();
        let g = swap("10", "11");
        assert!(in_stab(&t, &g).0);
        for h in fix_transpositions_at_depth(&t, 3) {
            let conj = g.inverse().compose(&h).compose(&g);
            assert!(in_fix(&t, &conj), "conjugate of {h} by the nucleus swap");
        }
    }

    #[test]
    fn every_nontrivial_system_has_a_transposition_outside_stab() {
        // Pool all addresses of length 1..=3 so the swapped cones may have
        // different depths; equal-depth swaps can never leave Stab on
        // systems where the label depends only on the length.
        let mut pool: Vec<Address> = Vec::new();
        for depth in 1..=3 {
            pool.extend(Address::root().extensions_to_depth(depth));
        }
        for (name, t) in systems::gallery() {
            let mut found = false;
            'outer: for (i, a) in pool.iter().enumerate() {
                for b in &pool[i + 1..] {
                    if !a.incomparable(b) {
                        continue;
                    }
                    let g = PrefixMap::transposition(a, b).unwrap();
                    if !in_stab(&t, &g).0 {
                        found = true;
                        break 'outer;
                    }
                }
            }
            assert!(found, "system {name} should have a non-stabilizing swap");
        }
        // The one-label system is fixed by everything.
        let u = systems::universal();
        for g in [
            swap("0", "1"),
            swap("0", "10"),
            map(&[("0", "00"), ("10", "01"), ("110", "10"), ("111", "11")]),
        ] {
            assert!(in_fix(&u, &g));
        }
    }
}
