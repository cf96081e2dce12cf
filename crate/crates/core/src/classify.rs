//! Classification of type systems by the long-run behavior of their labels:
//! which labels persist at all depths, how they organize into child-closed
//! strongly connected cores ("nuclei"), and what invariant data (stability
//! depths, tail points) each shape carries.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::address::Address;
use crate::diagram::TypeSystem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("classification kind does not support this operation")]
    NotApplicable,
    #[error("cycle word through the transient core is a proper power")]
    NonPrimitiveCycle,
}

/// Strongly connected components of a directed graph given by adjacency
/// lists. Components are emitted in reverse topological order of the
/// condensation — every successor component appears before its sources —
/// and each component lists its vertices in ascending order.
pub fn strongly_connected(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut frames: Vec<(usize, usize)> = Vec::new();
    for start in 0..n {
        if index[start] != usize::MAX {
            continue;
        }
        frames.push((start, 0));
        while let Some(&(v, ei)) = frames.last() {
            if ei == 0 {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if ei < adj[v].len() {
                frames.last_mut().unwrap().1 += 1;
                let w = adj[v][ei];
                if index[w] == usize::MAX {
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort();
                    comps.push(comp);
                }
                frames.pop();
                if let Some(&(p, _)) = frames.last() {
                    low[p] = low[p].min(low[v]);
                }
            }
        }
    }
    comps
}

/// The labeled transition graph of a type system (or a child-closed part of
/// one): every vertex has exactly one out-edge per bit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TypeGraph {
    names: Vec<String>,
    adj: Vec<[usize; 2]>,
    root: Option<usize>,
}

impl TypeGraph {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn child(&self, v: usize, bit: u8) -> usize {
        self.adj[v][bit as usize]
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    /// Edge counts: entry `(v, w)` is the number of bits leading `v` to `w`.
    pub fn adjacency_counts(&self) -> Vec<Vec<u64>> {
        let n = self.len();
        let mut counts = vec![vec![0u64; n]; n];
        for v in 0..n {
            for bit in 0..2u8 {
                counts[v][self.child(v, bit)] += 1;
            }
        }
        counts
    }

    /// GraphViz rendering with one edge per bit; node order is stable and
    /// the root, when present, is drawn with a double border.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph types {\n  rankdir=LR;\n");
        for v in 0..self.len() {
            let shape = if Some(v) == self.root {
                "doublecircle"
            } else {
                "circle"
            };
            out.push_str(&format!("  \"{}\" [shape={}];\n", self.names[v], shape));
        }
        for v in 0..self.len() {
            for bit in 0..2u8 {
                out.push_str(&format!(
                    "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                    self.names[v],
                    self.names[self.child(v, bit)],
                    bit
                ));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// The full type graph of a system, with the root marked.
pub fn type_graph(t: &TypeSystem) -> TypeGraph {
    let d = t.diagram();
    TypeGraph {
        names: d.names().to_vec(),
        adj: (0..d.len())
            .map(|v| [d.child(v, 0), d.child(v, 1)])
            .collect(),
        root: Some(d.root()),
    }
}

/// The subgraph induced by a child-closed label set, renumbered in the given
/// order. Errors with `NotApplicable` when the set is not child-closed.
pub fn induced_graph(t: &TypeSystem, labels: &[usize]) -> Result<TypeGraph, ClassifyError> {
    let mut local = HashMap::new();
    for (i, &v) in labels.iter().enumerate() {
        local.insert(v, i);
    }
    let mut adj = Vec::with_capacity(labels.len());
    for &v in labels {
        let mut row = [0usize; 2];
        for bit in 0..2u8 {
            let c = t.child(v, bit);
            match local.get(&c) {
                Some(&i) => row[bit as usize] = i,
                None => return Err(ClassifyError::NotApplicable),
            }
        }
        adj.push(row);
    }
    Ok(TypeGraph {
        names: labels.iter().map(|&v| t.name(v).to_string()).collect(),
        adj,
        root: None,
    })
}

/// The set of labels that occur at all sufficiently large depths, together
/// with the least depth from which every depth's label set stays inside it.
///
/// Computed by iterating the depth-set map until it cycles; the returned set
/// is the union over one full period and is closed under both child maps.
pub fn eventual_label_set(t: &TypeSystem) -> (Vec<usize>, usize) {
    let d = t.diagram();
    assert!(d.len() <= 128, "label sets are tracked in a 128-bit mask");
    let step = |mask: u128| -> u128 {
        let mut next = 0u128;
        for v in 0..d.len() {
            if mask >> v & 1 == 1 {
                next |= 1u128 << d.child(v, 0);
                next |= 1u128 << d.child(v, 1);
            }
        }
        next
    };
    let mut seen: HashMap<u128, usize> = HashMap::new();
    let mut sets: Vec<u128> = Vec::new();
    let mut cur = 1u128 << d.root();
    let (cycle_start, _cycle_len) = loop {
        if let Some(&first) = seen.get(&cur) {
            break (first, sets.len() - first);
        }
        seen.insert(cur, sets.len());
        sets.push(cur);
        cur = step(cur);
    };
    let eventual_mask = sets[cycle_start..].iter().fold(0u128, |a, &m| a | m);
    let mut threshold = cycle_start;
    while threshold > 0 && sets[threshold - 1] & !eventual_mask == 0 {
        threshold -= 1;
    }
    let eventual: Vec<usize> = (0..d.len())
        .filter(|&v| eventual_mask >> v & 1 == 1)
        .collect();
    (eventual, threshold)
}

/// All nonempty child-closed label sets in which every member is reachable
/// from a cycle inside the set. Ordered by size, then by members.
pub fn stable_child_closed_subsets(t: &TypeSystem) -> Vec<Vec<usize>> {
    let d = t.diagram();
    let n = d.len();
    assert!(n <= 20, "subset sweep is exponential in the label count");
    let mut found = Vec::new();
    'subsets: for mask in 1u32..(1u32 << n) {
        let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        for &v in &members {
            for bit in 0..2u8 {
                if mask >> d.child(v, bit) & 1 == 0 {
                    continue 'subsets;
                }
            }
        }
        if subset_is_stable(t, &members) {
            found.push(members);
        }
    }
    found.sort_by_key(|s| (s.len(), s.clone()));
    found
}

fn subset_is_stable(t: &TypeSystem, members: &[usize]) -> bool {
    let local: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); members.len()];
    for (i, &v) in members.iter().enumerate() {
        for bit in 0..2u8 {
            if let Some(&j) = local.get(&t.child(v, bit)) {
                adj[i].push(j);
            }
        }
    }
    let sccs = strongly_connected(&adj);
    let mut on_cycle = vec![false; members.len()];
    for comp in &sccs {
        if comp.len() > 1 || adj[comp[0]].contains(&comp[0]) {
            for &v in comp {
                on_cycle[v] = true;
            }
        }
    }
    // Everything must be reachable from some cycle vertex inside the set.
    let mut reached = on_cycle.clone();
    let mut stack: Vec<usize> = (0..members.len()).filter(|&v| reached[v]).collect();
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !reached[w] {
                reached[w] = true;
                stack.push(w);
            }
        }
    }
    reached.iter().all(|&r| r)
}

/// The shape of a type system's long-run label structure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Kind {
    /// One child-closed strongly connected core holds all deep labels.
    Nuclear,
    /// The deep labels split into this many disjoint child-closed cores.
    Multinuclear { count: usize },
    /// One single-label core plus one transient strongly connected set that
    /// keeps feeding it; `branching` records whether some transient label
    /// keeps both children transient.
    QuasinuclearAtomic { branching: bool },
    /// None of the recognized shapes.
    Unclassified,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Nuclear => write!(f, "nuclear"),
            Kind::Multinuclear { count } => write!(f, "multinuclear({count})"),
            Kind::QuasinuclearAtomic { branching: true } => {
                write!(f, "quasinuclear-atomic(branching)")
            }
            Kind::QuasinuclearAtomic { branching: false } => {
                write!(f, "quasinuclear-atomic(non-branching)")
            }
            Kind::Unclassified => write!(f, "unclassified"),
        }
    }
}

/// The transient part of an atomic quasinuclear system.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuasiParts {
    /// The transient strongly connected labels.
    pub q: Vec<usize>,
    /// The single absorbing label.
    pub r: usize,
    /// Members of `q` whose children both stay in `q`.
    pub q_dagger: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Classification {
    pub kind: Kind,
    /// The child-closed strongly connected components of the eventual set.
    pub nuclei: Vec<Vec<usize>>,
    /// Labels occurring at all sufficiently large depths.
    pub eventual: Vec<usize>,
    /// Least depth from which all depth label sets stay eventual.
    pub threshold: usize,
    /// Depth beyond which cone types determine matched decompositions, when
    /// the kind admits one.
    pub stable_depth: Option<usize>,
    pub quasi: Option<QuasiParts>,
}

/// Classifies a system by the strongly connected structure of its eventual
/// label set.
pub fn classify(t: &TypeSystem) -> Classification {
    let (eventual, threshold) = eventual_label_set(t);
    let local: HashMap<usize, usize> = eventual.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); eventual.len()];
    for (i, &v) in eventual.iter().enumerate() {
        for bit in 0..2u8 {
            // The eventual set is child-closed, so the lookup succeeds.
            adj[i].push(local[&t.child(v, bit)]);
        }
    }
    let sccs = strongly_connected(&adj);
    let comp_closed: Vec<bool> = sccs
        .iter()
        .map(|comp| {
            comp.iter()
                .all(|&v| adj[v].iter().all(|w| comp.binary_search(w).is_ok()))
        })
        .collect();
    let comp_cyclic: Vec<bool> = sccs
        .iter()
        .map(|comp| comp.len() > 1 || adj[comp[0]].contains(&comp[0]))
        .collect();
    let mut nuclei: Vec<Vec<usize>> = sccs
        .iter()
        .zip(&comp_closed)
        .filter(|(_, &closed)| closed)
        .map(|(comp, _)| comp.iter().map(|&v| eventual[v]).collect())
        .collect();
    nuclei.sort();

    let all_closed = comp_closed.iter().all(|&c| c);
    let kind;
    let mut quasi = None;
    if sccs.len() == 1 && all_closed {
        kind = Kind::Nuclear;
    } else if all_closed {
        kind = Kind::Multinuclear { count: sccs.len() };
    } else if let Some(parts) =
        quasinuclear_atomic_parts(t, &eventual, &adj, &sccs, &comp_closed, &comp_cyclic)
    {
        let branching = !parts.q_dagger.is_empty();
        quasi = Some(parts);
        kind = Kind::QuasinuclearAtomic { branching };
    } else {
        kind = Kind::Unclassified;
    }

    let stable_depth = match kind {
        Kind::Nuclear | Kind::Multinuclear { .. } => Some(threshold + 2),
        Kind::QuasinuclearAtomic { branching: true } => Some(branching_stable_depth(
            t,
            threshold,
            &quasi.as_ref().unwrap().q_dagger,
        )),
        _ => None,
    };

    Classification {
        kind,
        nuclei,
        eventual,
        threshold,
        stable_depth,
        quasi,
    }
}

/// Recognizes the atomic quasinuclear shape: exactly two strongly connected
/// components of the eventual set — a single-label child-closed one and a
/// genuinely cyclic transient one that feeds it.
fn quasinuclear_atomic_parts(
    t: &TypeSystem,
    eventual: &[usize],
    adj: &[Vec<usize>],
    sccs: &[Vec<usize>],
    comp_closed: &[bool],
    comp_cyclic: &[bool],
) -> Option<QuasiParts> {
    if sccs.len() != 2 {
        return None;
    }
    let closed_idx = comp_closed.iter().position(|&c| c)?;
    let open_idx = 1 - closed_idx;
    if comp_closed[open_idx] || sccs[closed_idx].len() != 1 || !comp_cyclic[open_idx] {
        return None;
    }
    let r = eventual[sccs[closed_idx][0]];
    let q_local = &sccs[open_idx];
    // Every transient label must reach the absorbing one; with the transient
    // component not child-closed and only two components, some edge leaves
    // it, and strong connectivity carries everyone there.
    let reaches = q_local.iter().any(|&v| {
        adj[v]
            .iter()
            .any(|&w| sccs[closed_idx].binary_search(&w).is_ok())
    });
    if !reaches {
        return None;
    }
    let q: Vec<usize> = q_local.iter().map(|&v| eventual[v]).collect();
    let q_dagger: Vec<usize> = q
        .iter()
        .copied()
        .filter(|&v| (0..2u8).all(|bit| q.binary_search(&t.child(v, bit)).is_ok()))
        .collect();
    Some(QuasiParts { q, r, q_dagger })
}

/// Depth bound for the branching quasinuclear case: one more than the longer
/// of the two shortest incomparable addresses typed in the doubly transient
/// set, or the threshold if that is larger.
fn branching_stable_depth(t: &TypeSystem, threshold: usize, q_dagger: &[usize]) -> usize {
    let limit = threshold + 2 * t.len() + 2;
    let mut candidates: Vec<Address> = Vec::new();
    for depth in 0..=limit {
        let mut level: Vec<Address> = Address::root().extensions_to_depth(depth);
        level.retain(|a| q_dagger.binary_search(&t.type_of(a)).is_ok());
        candidates.extend(level);
        let mut best: Option<(&Address, &Address)> = None;
        for (i, a) in candidates.iter().enumerate() {
            for b in candidates[i + 1..].iter() {
                if a.incomparable(b) {
                    best = match best {
                        None => Some((a, b)),
                        Some(cur) => {
                            let key = |p: (&Address, &Address)| {
                                (p.0.len().max(p.1.len()), p.0.clone(), p.1.clone())
                            };
                            if key((a, b)) < key(cur) {
                                Some((a, b))
                            } else {
                                Some(cur)
                            }
                        }
                    };
                }
            }
        }
        if let Some((a, b)) = best {
            return a.len().max(b.len()).max(threshold) + 1;
        }
    }
    unreachable!("branching transient sets always admit incomparable witnesses")
}

/// Recomputes the stable depth for a classification that admits one.
pub fn stable_depth(t: &TypeSystem, c: &Classification) -> Result<usize, ClassifyError> {
    match c.kind {
        Kind::Nuclear | Kind::Multinuclear { .. } => Ok(c.threshold + 2),
        Kind::QuasinuclearAtomic { branching: true } => Ok(branching_stable_depth(
            t,
            c.threshold,
            &c.quasi.as_ref().unwrap().q_dagger,
        )),
        _ => Err(ClassifyError::NotApplicable),
    }
}

/// The graph on the single nucleus of a nuclear system.
pub fn nucleus_graph(t: &TypeSystem, c: &Classification) -> Result<TypeGraph, ClassifyError> {
    if c.kind != Kind::Nuclear {
        return Err(ClassifyError::NotApplicable);
    }
    induced_graph(t, &c.nuclei[0])
}

/// An eventually periodic point of Cantor space in canonical form: shortest
/// preperiod, primitive period as read from the end of the preperiod.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RationalPoint {
    preperiod: Address,
    period: Address,
}

impl RationalPoint {
    /// Canonicalizes: the period is cut to its primitive root, then the
    /// preperiod is shortened while its last bit matches the period's last
    /// bit (rotating the period alongside).
    pub fn new(preperiod: &Address, period: &Address) -> RationalPoint {
        assert!(!period.is_empty(), "periodic part must be nonempty");
        let mut per: Vec<u8> = period.bits().to_vec();
        let root_len = primitive_root_length(&per);
        per.truncate(root_len);
        let mut pre: Vec<u8> = preperiod.bits().to_vec();
        while let Some(&last) = pre.last() {
            if last == *per.last().unwrap() {
                pre.pop();
                per.rotate_right(1);
            } else {
                break;
            }
        }
        RationalPoint {
            preperiod: Address::from_bits(pre),
            period: Address::from_bits(per),
        }
    }

    pub fn preperiod(&self) -> &Address {
        &self.preperiod
    }

    pub fn period(&self) -> &Address {
        &self.period
    }

    /// The prefix of the point of the given length.
    pub fn prefix(&self, len: usize) -> Address {
        let mut bits = Vec::with_capacity(len);
        bits.extend_from_slice(self.preperiod.bits());
        while bits.len() < len {
            bits.extend_from_slice(self.period.bits());
        }
        bits.truncate(len);
        Address::from_bits(bits)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.preperiod.is_empty() {
            write!(f, "({})*", self.period)
        } else {
            write!(f, "{}({})*", self.preperiod, self.period)
        }
    }
}

fn primitive_root_length(word: &[u8]) -> usize {
    let n = word.len();
    'lens: for d in 1..n {
        if !n.is_multiple_of(d) {
            continue;
        }
        for i in d..n {
            if word[i] != word[i - d] {
                continue 'lens;
            }
        }
        return d;
    }
    n
}

/// The finitely many points whose every neighborhood keeps meeting the
/// transient classes of a non-branching atomic quasinuclear system: one
/// point over each minimal transient-typed address, following the unique
/// transient cycle forever.
pub fn tail_points(
    t: &TypeSystem,
    c: &Classification,
) -> Result<Vec<RationalPoint>, ClassifyError> {
    if c.kind != (Kind::QuasinuclearAtomic { branching: false }) {
        return Err(ClassifyError::NotApplicable);
    }
    let parts = c.quasi.as_ref().unwrap();
    let q = &parts.q;

    // Minimal addresses typed in the transient set: stop at the first hit,
    // prune anything that can no longer reach the set.
    let mut reach_q = vec![false; t.len()];
    for &v in q {
        reach_q[v] = true;
    }
    loop {
        let mut changed = false;
        for v in 0..t.len() {
            if !reach_q[v] && (0..2u8).any(|b| reach_q[t.child(v, b)]) {
                reach_q[v] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut minimal: Vec<Address> = Vec::new();
    let mut stack = vec![Address::root()];
    while let Some(a) = stack.pop() {
        let label = t.type_of(&a);
        if q.binary_search(&label).is_ok() {
            minimal.push(a);
        } else if reach_q[label] {
            stack.push(a.child(1));
            stack.push(a.child(0));
        }
    }
    minimal.sort();

    // The transient set carries a unique cycle: each member has exactly one
    // child inside the set (non-branching), and strong connectivity makes
    // the walk close up through every member.
    let n = q.len();
    let start = t.type_of(&minimal[0]);
    let mut cycle_labels = Vec::with_capacity(n);
    let mut cycle_bits: Vec<u8> = Vec::with_capacity(n);
    let mut cur = start;
    for _ in 0..n {
        cycle_labels.push(cur);
        let bit = (0..2u8)
            .find(|&b| q.binary_search(&t.child(cur, b)).is_ok())
            .expect("transient labels keep one child transient");
        cycle_bits.push(bit);
        cur = t.child(cur, bit);
    }
    debug_assert_eq!(cur, start);
    if primitive_root_length(&cycle_bits) != cycle_bits.len() {
        return Err(ClassifyError::NonPrimitiveCycle);
    }

    let mut points: Vec<RationalPoint> = minimal
        .iter()
        .map(|beta| {
            let k = cycle_labels
                .iter()
                .position(|&l| l == t.type_of(beta))
                .expect("minimal addresses are typed on the cycle");
            // Close the cycle from position k, then repeat it forever.
            let mut pre = beta.bits().to_vec();
            pre.extend_from_slice(&cycle_bits[k..]);
            RationalPoint::new(
                &Address::from_bits(pre),
                &Address::from_bits(cycle_bits.clone()),
            )
        })
        .collect();
    points.sort();
    points.dedup();
    Ok(points)
}
