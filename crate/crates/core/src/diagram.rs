//! Label diagrams and type systems.
//!
//! A label diagram is a finite set of labels, two child maps (one per bit),
//! and a root label; it assigns to every address the label reached from the
//! root along its bits. The induced partition of addresses is coherent by
//! construction, and the diagram presents a *type system* when it is reduced:
//! no two distinct labels have identical child pairs.
//!
//! The textual format (".lts") has `#` comment lines, one `root L` line, and
//! one `L -> L0 L1` line per label.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::address::Address;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("line {line}: unknown label {name:?}")]
    UnknownLabel { line: usize, name: String },
    #[error("no root declaration")]
    NoRoot,
    #[error("labels {p:?} and {q:?} have identical child pairs; diagram is not reduced")]
    ReducednessViolation { p: String, q: String },
    #[error("operation needs at least two labels")]
    TooFewLabels,
}

/// A rooted label diagram; labels are kept as indices with display names.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabelDiagram {
    names: Vec<String>,
    child0: Vec<usize>,
    child1: Vec<usize>,
    root: usize,
}

impl LabelDiagram {
    pub fn from_parts(
        names: Vec<String>,
        child0: Vec<usize>,
        child1: Vec<usize>,
        root: usize,
    ) -> Result<Self, DiagramError> {
        let n = names.len();
        let ok = n > 0
            && child0.len() == n
            && child1.len() == n
            && root < n
            && child0.iter().chain(&child1).all(|&c| c < n);
        if !ok {
            return Err(DiagramError::Syntax {
                line: 0,
                reason: "malformed diagram parts".into(),
            });
        }
        Ok(LabelDiagram {
            names,
            child0,
            child1,
            root,
        })
    }

    /// Convenience builder from `(label, child0, child1)` triples.
    pub fn build(root: &str, rules: &[(&str, &str, &str)]) -> Result<Self, DiagramError> {
        let mut text = format!("root {root}\n");
        for (l, c0, c1) in rules {
            text.push_str(&format!("{l} -> {c0} {c1}\n"));
        }
        let (diagram, pruned) = parse_diagram(&text)?;
        debug_assert!(pruned.is_empty(), "builder rules must all be reachable");
        Ok(diagram)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn name(&self, label: usize) -> &str {
        &self.names[label]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn label_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn child(&self, label: usize, bit: u8) -> usize {
        match bit {
            0 => self.child0[label],
            _ => self.child1[label],
        }
    }

    /// The label reached from the root along the bits of `a`.
    pub fn type_of(&self, a: &Address) -> usize {
        let mut cur = self.root;
        for &b in a.bits() {
            cur = self.child(cur, b);
        }
        cur
    }

    /// Breadth-first discovery order from the root, child 0 before child 1.
    fn bfs_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.len());
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::new();
        queue.push_back(self.root);
        seen[self.root] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for c in [self.child0[v], self.child1[v]] {
                if !seen[c] {
                    seen[c] = true;
                    queue.push_back(c);
                }
            }
        }
        order
    }

    /// Relabels along the breadth-first order, producing the canonical
    /// representative of the rooted isomorphism class. Names follow labels.
    pub fn canonical(&self) -> LabelDiagram {
        let order = self.bfs_order();
        debug_assert_eq!(order.len(), self.len(), "diagram must be reachable");
        let mut new_id = vec![usize::MAX; self.len()];
        for (i, &v) in order.iter().enumerate() {
            new_id[v] = i;
        }
        let mut names = vec![String::new(); self.len()];
        let mut child0 = vec![0; self.len()];
        let mut child1 = vec![0; self.len()];
        for (i, &v) in order.iter().enumerate() {
            names[i] = self.names[v].clone();
            child0[i] = new_id[self.child0[v]];
            child1[i] = new_id[self.child1[v]];
        }
        LabelDiagram {
            names,
            child0,
            child1,
            root: 0,
        }
    }

    /// A compact canonical key: child arrays after canonical relabeling.
    /// Two rooted diagrams are isomorphic iff their keys agree.
    pub fn canonical_key(&self) -> String {
        let c = self.canonical();
        let mut key = format!("{}", c.len());
        for i in 0..c.len() {
            key.push_str(&format!("|{}.{}", c.child0[i], c.child1[i]));
        }
        key
    }

    /// Whether the labels are already numbered in canonical order.
    pub fn is_canonical(&self) -> bool {
        self.root == 0 && self.bfs_order().iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Serializes to the ".lts" format with labels in canonical order.
    pub fn to_lts(&self) -> String {
        let order = self.bfs_order();
        let mut out = format!("root {}\n", self.names[self.root]);
        for v in order {
            out.push_str(&format!(
                "{} -> {} {}\n",
                self.names[v], self.names[self.child0[v]], self.names[self.child1[v]]
            ));
        }
        out
    }

    /// All label permutations commuting with both child maps. The root is
    /// not required to be fixed. The identity comes first; order is
    /// lexicographic on the permutation images.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 0, &mut |p| {
            let ok = (0..n).all(|v| {
                p[self.child0[v]] == self.child0[p[v]] && p[self.child1[v]] == self.child1[p[v]]
            });
            if ok {
                out.push(p.to_vec());
            }
        });
        out.sort();
        out
    }
}

fn permute(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, visit);
        perm.swap(k, i);
    }
    // Restore ascending order for deterministic traversal.
    perm[k..].sort();
}

/// Parses the ".lts" format. Labels unreachable from the root are pruned;
/// their names are returned as warnings.
pub fn parse_diagram(text: &str) -> Result<(LabelDiagram, Vec<String>), DiagramError> {
    struct Raw {
        line: usize,
        c0: String,
        c1: String,
    }
    let mut rules: Vec<(String, Raw)> = Vec::new();
    let mut root: Option<(usize, String)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["root", name] => {
                if root.is_some() {
                    return Err(DiagramError::Syntax {
                        line: line_no,
                        reason: "second root declaration".into(),
                    });
                }
                root = Some((line_no, name.to_string()));
            }
            [label, "->", c0, c1] => {
                if rules.iter().any(|(l, _)| l == label) {
                    return Err(DiagramError::Syntax {
                        line: line_no,
                        reason: format!("label {label:?} defined twice"),
                    });
                }
                rules.push((
                    label.to_string(),
                    Raw {
                        line: line_no,
                        c0: c0.to_string(),
                        c1: c1.to_string(),
                    },
                ));
            }
            _ => {
                return Err(DiagramError::Syntax {
                    line: line_no,
                    reason: format!("expected \"root L\" or \"L -> L0 L1\", found {line:?}"),
                });
            }
        }
    }
    let (root_line, root_name) = root.ok_or(DiagramError::NoRoot)?;
    let index: HashMap<&str, usize> = rules
        .iter()
        .enumerate()
        .map(|(i, (l, _))| (l.as_str(), i))
        .collect();
    let root_id = *index
        .get(root_name.as_str())
        .ok_or_else(|| DiagramError::UnknownLabel {
            line: root_line,
            name: root_name.clone(),
        })?;
    let mut child0 = Vec::with_capacity(rules.len());
    let mut child1 = Vec::with_capacity(rules.len());
    for (_, raw) in &rules {
        for (slot, name) in [(&mut child0, &raw.c0), (&mut child1, &raw.c1)] {
            let id = *index
                .get(name.as_str())
                .ok_or_else(|| DiagramError::UnknownLabel {
                    line: raw.line,
                    name: name.clone(),
                })?;
            slot.push(id);
        }
    }
    let names: Vec<String> = rules.into_iter().map(|(l, _)| l).collect();
    let full = LabelDiagram::from_parts(names, child0, child1, root_id)?;

    // Prune anything the root cannot reach.
    let mut reach = vec![false; full.len()];
    let mut stack = vec![full.root];
    reach[full.root] = true;
    while let Some(v) = stack.pop() {
        for c in [full.child0[v], full.child1[v]] {
            if !reach[c] {
                reach[c] = true;
                stack.push(c);
            }
        }
    }
    let mut pruned: Vec<String> = (0..full.len())
        .filter(|&v| !reach[v])
        .map(|v| full.names[v].clone())
        .collect();
    pruned.sort();
    if pruned.is_empty() {
        return Ok((full, pruned));
    }
    let mut new_id = vec![usize::MAX; full.len()];
    let mut names = Vec::new();
    let mut c0 = Vec::new();
    let mut c1 = Vec::new();
    for v in 0..full.len() {
        if reach[v] {
            new_id[v] = names.len();
            names.push(full.names[v].clone());
        }
    }
    for v in 0..full.len() {
        if reach[v] {
            c0.push(new_id[full.child0[v]]);
            c1.push(new_id[full.child1[v]]);
        }
    }
    let kept = LabelDiagram::from_parts(names, c0, c1, new_id[full.root])?;
    Ok((kept, pruned))
}

/// A label diagram in which distinct labels have distinct child pairs, so
/// that labels are exactly the classes of the induced equivalence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TypeSystem {
    diagram: LabelDiagram,
}

impl TypeSystem {
    pub fn diagram(&self) -> &LabelDiagram {
        &self.diagram
    }

    pub fn len(&self) -> usize {
        self.diagram.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn root(&self) -> usize {
        self.diagram.root()
    }

    pub fn name(&self, label: usize) -> &str {
        self.diagram.name(label)
    }

    pub fn child(&self, label: usize, bit: u8) -> usize {
        self.diagram.child(label, bit)
    }

    pub fn type_of(&self, a: &Address) -> usize {
        self.diagram.type_of(a)
    }

    pub fn type_name_of(&self, a: &Address) -> &str {
        self.diagram.name(self.diagram.type_of(a))
    }
}

/// Checks reducedness, promoting a diagram to a type system.
pub fn validate(diagram: LabelDiagram) -> Result<TypeSystem, DiagramError> {
    for p in 0..diagram.len() {
        for q in (p + 1)..diagram.len() {
            if diagram.child(p, 0) == diagram.child(q, 0)
                && diagram.child(p, 1) == diagram.child(q, 1)
            {
                return Err(DiagramError::ReducednessViolation {
                    p: diagram.name(p).to_string(),
                    q: diagram.name(q).to_string(),
                });
            }
        }
    }
    Ok(TypeSystem { diagram })
}

/// A partition of a diagram's labels, as blocks sorted by least member.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabelPartition {
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl LabelPartition {
    fn from_block_ids(raw: &[usize]) -> LabelPartition {
        // Renumber blocks by their least member so the form is unique.
        let n = raw.len();
        let mut members: HashMap<usize, Vec<usize>> = HashMap::new();
        for (v, &b) in raw.iter().enumerate() {
            members.entry(b).or_default().push(v);
        }
        let mut blocks: Vec<Vec<usize>> = members.into_values().collect();
        for b in &mut blocks {
            b.sort();
        }
        blocks.sort();
        let mut block_of = vec![0; n];
        for (i, b) in blocks.iter().enumerate() {
            for &v in b {
                block_of[v] = i;
            }
        }
        LabelPartition { block_of, blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, label: usize) -> usize {
        self.block_of[label]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    pub fn is_universal(&self) -> bool {
        self.blocks.len() == 1
    }

    /// Block contents by label name, for display.
    pub fn named(&self, d: &LabelDiagram) -> Vec<Vec<String>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&v| d.name(v).to_string()).collect())
            .collect()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r; // path compress
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }
}

/// Builds the quotient diagram of a partition that respects the child maps.
fn quotient_diagram(d: &LabelDiagram, part: &LabelPartition) -> LabelDiagram {
    let names: Vec<String> = part
        .blocks()
        .iter()
        .map(|b| d.name(b[0]).to_string())
        .collect();
    let child0: Vec<usize> = part
        .blocks()
        .iter()
        .map(|b| part.block_of(d.child(b[0], 0)))
        .collect();
    let child1: Vec<usize> = part
        .blocks()
        .iter()
        .map(|b| part.block_of(d.child(b[0], 1)))
        .collect();
    LabelDiagram::from_parts(names, child0, child1, part.block_of(d.root()))
        .expect("quotient of a valid diagram is valid")
}

/// Merges all pairs of labels whose induced address classes agree up to
/// finitely many addresses, returning the reduced system and the partition.
///
/// Two labels merge exactly when, in the graph of off-diagonal label pairs
/// with edges to child pairs, their pair cannot reach a cycle.
pub fn reduce(d: &LabelDiagram) -> (TypeSystem, LabelPartition) {
    let n = d.len();
    // Off-diagonal ordered pairs, indexed p*n+q.
    let pair_id = |p: usize, q: usize| p * n + q;
    let mut reaches_cycle = vec![false; n * n];
    // A pair reaches a cycle iff it can reach a strongly connected component
    // of the off-diagonal pair graph that contains an edge.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n * n];
    for p in 0..n {
        for q in 0..n {
            if p == q {
                continue;
            }
            for bit in 0..2u8 {
                let (pc, qc) = (d.child(p, bit), d.child(q, bit));
                if pc != qc {
                    adj[pair_id(p, q)].push(pair_id(pc, qc));
                }
            }
        }
    }
    let sccs = crate::classify::strongly_connected(&adj);
    let mut comp_of = vec![0usize; n * n];
    for (i, comp) in sccs.iter().enumerate() {
        for &v in comp {
            comp_of[v] = i;
        }
    }
    let mut comp_cyclic: Vec<bool> = sccs
        .iter()
        .map(|comp| comp.len() > 1 || adj[comp[0]].contains(&comp[0]))
        .collect();
    // Propagate over the condensation: components are emitted in reverse
    // topological order, so process forward and pull from successors.
    for (i, comp) in sccs.iter().enumerate() {
        if comp_cyclic[i] {
            continue;
        }
        let feeds_cycle = comp
            .iter()
            .flat_map(|&v| adj[v].iter())
            .any(|&w| comp_cyclic[comp_of[w]]);
        if feeds_cycle {
            comp_cyclic[i] = true;
        }
    }
    for p in 0..n {
        for q in 0..n {
            if p != q {
                reaches_cycle[pair_id(p, q)] = comp_cyclic[comp_of[pair_id(p, q)]];
            }
        }
    }

    let mut uf = UnionFind::new(n);
    for p in 0..n {
        for q in (p + 1)..n {
            if !reaches_cycle[pair_id(p, q)] {
                uf.union(p, q);
            }
        }
    }
    let raw: Vec<usize> = (0..n).map(|v| uf.find(v)).collect();
    let part = LabelPartition::from_block_ids(&raw);
    let q = quotient_diagram(d, &part);
    let system = validate(q).expect("merged diagram is reduced");
    (system, part)
}

/// The finest type-system quotient identifying labels `p` and `q`: closes
/// `{p ~ q}` under the child maps, then reduces the quotient.
///
/// Returns the quotient and the partition of the *original* labels.
pub fn quotient_by_pair(t: &TypeSystem, p: usize, q: usize) -> (TypeSystem, LabelPartition) {
    let d = t.diagram();
    let n = d.len();
    let mut uf = UnionFind::new(n);
    let mut queue = vec![(p, q)];
    while let Some((a, b)) = queue.pop() {
        if uf.union(a, b) {
            queue.push((d.child(a, 0), d.child(b, 0)));
            queue.push((d.child(a, 1), d.child(b, 1)));
        }
    }
    let raw: Vec<usize> = (0..n).map(|v| uf.find(v)).collect();
    let congruence = LabelPartition::from_block_ids(&raw);
    let coherent = quotient_diagram(d, &congruence);
    let (system, merge) = reduce(&coherent);
    // Compose the two partitions back onto the original labels.
    let raw_final: Vec<usize> = (0..n)
        .map(|v| merge.block_of(congruence.block_of(v)))
        .collect();
    (system, LabelPartition::from_block_ids(&raw_final))
}

/// Outcome of the simplicity check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicityCheck {
    pub simple: bool,
    /// A proper nontrivial quotient, when one exists.
    pub witness: Option<SimplicityWitness>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicityWitness {
    pub merged_pair: (String, String),
    pub partition: LabelPartition,
    pub quotient: TypeSystem,
}

/// A system is simple when its only proper quotient is the one-label system.
/// Checked by inspecting the quotient generated by each label pair.
pub fn is_simple(t: &TypeSystem) -> Result<SimplicityCheck, DiagramError> {
    if t.len() < 2 {
        return Err(DiagramError::TooFewLabels);
    }
    for p in 0..t.len() {
        for q in (p + 1)..t.len() {
            let (quot, part) = quotient_by_pair(t, p, q);
            if quot.len() > 1 {
                return Ok(SimplicityCheck {
                    simple: false,
                    witness: Some(SimplicityWitness {
                        merged_pair: (t.name(p).to_string(), t.name(q).to_string()),
                        partition: part,
                        quotient: quot,
                    }),
                });
            }
        }
    }
    Ok(SimplicityCheck {
        simple: true,
        witness: None,
    })
}

/// Independent simplicity oracle: enumerates every partition of the label
/// set and looks for a proper nontrivial one that respects the child maps
/// and has a reduced quotient. Exponential; meant for small label counts.
pub fn is_simple_by_partition_search(t: &TypeSystem) -> Result<bool, DiagramError> {
    if t.len() < 2 {
        return Err(DiagramError::TooFewLabels);
    }
    let d = t.diagram();
    let n = d.len();
    // Restricted growth strings enumerate set partitions exactly once.
    let mut rgs = vec![0usize; n];
    loop {
        let blocks = rgs.iter().max().unwrap() + 1;
        if blocks > 1 && blocks < n {
            let part = LabelPartition::from_block_ids(&rgs);
            let respects = (0..n).all(|v| {
                let w = part.blocks()[part.block_of(v)][0];
                part.block_of(d.child(v, 0)) == part.block_of(d.child(w, 0))
                    && part.block_of(d.child(v, 1)) == part.block_of(d.child(w, 1))
            });
            if respects {
                let q = quotient_diagram(d, &part);
                if validate(q).is_ok() {
                    return Ok(false);
                }
            }
        }
        // Next restricted growth string.
        let mut i = n;
        loop {
            if i == 1 {
                return Ok(true);
            }
            i -= 1;
            let cap = rgs[..i].iter().max().unwrap() + 1;
            if rgs[i] < cap {
                rgs[i] += 1;
                for slot in rgs[i + 1..].iter_mut() {
                    *slot = 0;
                }
                break;
            }
        }
    }
}

/// Whether each label's address class is finite (with its exact size) or
/// infinite. A class is infinite exactly when its label is reachable from a
/// label lying on a cycle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ClassSize {
    Finite(u64),
    Infinite,
}

pub fn class_finiteness(t: &TypeSystem) -> Vec<ClassSize> {
    let d = t.diagram();
    let n = d.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, out) in adj.iter_mut().enumerate() {
        out.push(d.child(v, 0));
        out.push(d.child(v, 1));
    }
    let sccs = crate::classify::strongly_connected(&adj);
    let mut infinite = vec![false; n];
    for comp in &sccs {
        let cyclic = comp.len() > 1 || adj[comp[0]].contains(&comp[0]);
        if cyclic {
            for &v in comp {
                infinite[v] = true;
            }
        }
    }
    // Everything reachable from a cycle inherits infinitely many addresses.
    let mut stack: Vec<usize> = (0..n).filter(|&v| infinite[v]).collect();
    while let Some(v) = stack.pop() {
        for &c in &adj[v] {
            if !infinite[c] {
                infinite[c] = true;
                stack.push(c);
            }
        }
    }
    // Finite labels form a DAG closed under predecessors; count root paths
    // in topological order. Edges are counted with multiplicity, matching
    // one address per root path.
    let mut count = vec![0u64; n];
    if !infinite[d.root()] {
        count[d.root()] = 1;
    }
    let mut indeg = vec![0usize; n];
    for v in 0..n {
        if infinite[v] {
            continue;
        }
        for &c in &adj[v] {
            if !infinite[c] {
                indeg[c] += 1;
            }
        }
    }
    let mut ready: Vec<usize> = (0..n).filter(|&v| !infinite[v] && indeg[v] == 0).collect();
    while let Some(v) = ready.pop() {
        for &c in &adj[v] {
            if !infinite[c] {
                count[c] += count[v];
                indeg[c] -= 1;
                if indeg[c] == 0 {
                    ready.push(c);
                }
            }
        }
    }
    (0..n)
        .map(|v| {
            if infinite[v] {
                ClassSize::Infinite
            } else {
                ClassSize::Finite(count[v])
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems;

    #[test]
    fn parse_serialize_round_trip() {
        let text = "# parity of the address length\nroot A\nA -> B B\nB -> A A\n";
        let (d, pruned) = parse_diagram(text).unwrap();
        assert!(pruned.is_empty());
        assert_eq!(d.len(), 2);
        assert_eq!(d.name(d.root()), "A");
        let (again, _) = parse_diagram(&d.to_lts()).unwrap();
        assert_eq!(again, d);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_diagram("A -> A A\n"), Err(DiagramError::NoRoot));
        assert!(matches!(
            parse_diagram("root A\nA -> A B\n"),
            Err(DiagramError::UnknownLabel { line: 2, ref name }) if name == "B"
        ));
        assert!(matches!(
            parse_diagram("root C\nA -> A A\n"),
            Err(DiagramError::UnknownLabel { line: 1, ref name }) if name == "C"
        ));
        assert!(matches!(
            parse_diagram("root A\nA -> A A\nA -> A A\n"),
            Err(DiagramError::Syntax { line: 3, .. })
        ));
        assert!(matches!(
            parse_diagram("root A\nA => A A\n"),
            Err(DiagramError::Syntax { line: 2, .. })
        ));
    }

    #[test]
    fn unreachable_labels_are_pruned_with_warning() {
        let text = "root A\nA -> A A\nZ -> Z A\n";
        let (d, pruned) = parse_diagram(text).unwrap();
        assert_eq!(pruned, vec!["Z".to_string()]);
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn validate_rejects_duplicate_child_pairs() {
        let (d, _) = parse_diagram("root A\nA -> B C\nB -> B C\nC -> A A\n").unwrap();
        // A and B share the child pair (B, C).
        assert_eq!(
            validate(d).unwrap_err(),
            DiagramError::ReducednessViolation {
                p: "A".into(),
                q: "B".into()
            }
        );
    }

    #[test]
    fn type_of_walks_the_diagram() {
        let t = systems::parity();
        let a = |s: &str| s.parse::<Address>().unwrap();
        assert_eq!(t.type_name_of(&a("e")), "A");
        assert_eq!(t.type_name_of(&a("0")), "B");
        assert_eq!(t.type_name_of(&a("10")), "A");
        assert_eq!(t.type_name_of(&a("0110")), "A");
        assert_eq!(t.type_name_of(&a("01101")), "B");

        let t = systems::point_zero();
        assert_eq!(t.type_name_of(&a("e")), "A");
        assert_eq!(t.type_name_of(&a("00")), "A");
        assert_eq!(t.type_name_of(&a("010")), "B");
        assert_eq!(t.type_name_of(&a("10")), "B");
    }

    #[test]
    fn reduce_merges_twin_labels() {
        let (d, _) = parse_diagram("root C\nA -> C C\nB -> C C\nC -> A B\n").unwrap();
        let (t, part) = reduce(&d);
        assert_eq!(t.len(), 2);
        assert_eq!(part.blocks(), &[vec![0, 1], vec![2]]);
        // The quotient is the two-label alternating system.
        assert_eq!(
            t.diagram().canonical_key(),
            systems::parity().diagram().canonical_key()
        );
    }

    #[test]
    fn reduce_keeps_separated_twins() {
        // A and A2 have child pairs (A, B) and (A2, B): merging them would
        // need the pair (A, A2) itself, which loops, so nothing merges.
        let (d, _) = parse_diagram("root A2\nA -> A B\nB -> B A\nA2 -> A2 B\n").unwrap();
        let (t, part) = reduce(&d);
        assert_eq!(part.len(), 3);
        assert!(part.is_identity());
        assert_eq!(t.len(), 3);
    }

    #[test]
    fn reduce_is_idempotent_on_reduced_systems() {
        for t in [
            systems::parity(),
            systems::simple_z3z3(),
            systems::three_blocks(),
        ] {
            let (r, part) = reduce(t.diagram());
            assert!(part.is_identity());
            assert_eq!(r.diagram(), t.diagram());
        }
    }

    #[test]
    fn quotient_by_pair_examples() {
        let t = systems::parity();
        let (q, part) = quotient_by_pair(&t, 0, 1);
        assert_eq!(q.len(), 1);
        assert!(part.is_universal());

        let t = systems::three_blocks();
        let qi = t.diagram().label_by_name("Q").unwrap();
        let ri = t.diagram().label_by_name("R").unwrap();
        let (q, part) = quotient_by_pair(&t, qi, ri);
        assert_eq!(q.len(), 4);
        let named = part.named(t.diagram());
        assert!(named.contains(&vec!["Q".to_string(), "R".to_string()]));
        assert_eq!(part.len(), 4);
    }

    #[test]
    fn simplicity_verdicts_on_known_systems() {
        assert!(is_simple(&systems::parity()).unwrap().simple);
        assert!(is_simple(&systems::point_zero()).unwrap().simple);
        assert!(is_simple(&systems::simple_z3z3()).unwrap().simple);
        let check = is_simple(&systems::three_blocks()).unwrap();
        assert!(!check.simple);
        let witness = check.witness.unwrap();
        assert!(witness.quotient.len() > 1);
        assert!(witness.quotient.len() < 6);

        let one = validate(LabelDiagram::build("Z", &[("Z", "Z", "Z")]).unwrap()).unwrap();
        assert_eq!(is_simple(&one), Err(DiagramError::TooFewLabels));
    }

    #[test]
    fn simplicity_agrees_with_partition_search() {
        for t in [
            systems::parity(),
            systems::point_zero(),
            systems::three_blocks(),
            systems::two_points(),
            systems::even_runs(),
            systems::simple_z3z3(),
            systems::free_rank_one(),
            systems::higman5(),
        ] {
            assert_eq!(
                is_simple(&t).unwrap().simple,
                is_simple_by_partition_search(&t).unwrap(),
                "system {}",
                t.diagram().canonical_key()
            );
        }
    }

    #[test]
    fn class_sizes() {
        let t = systems::three_blocks();
        let sizes = class_finiteness(&t);
        let by_name: HashMap<&str, &ClassSize> =
            (0..t.len()).map(|v| (t.name(v), &sizes[v])).collect();
        assert_eq!(by_name["A"], &ClassSize::Finite(1));
        assert_eq!(by_name["B"], &ClassSize::Finite(1));
        assert_eq!(by_name["Q"], &ClassSize::Infinite);
        assert_eq!(by_name["R"], &ClassSize::Infinite);
        assert_eq!(by_name["S"], &ClassSize::Infinite);

        for t in [systems::parity(), systems::point_zero()] {
            assert!(class_finiteness(&t)
                .iter()
                .all(|c| c == &ClassSize::Infinite));
        }
    }

    #[test]
    fn automorphism_groups() {
        let parity = systems::parity();
        assert_eq!(
            parity.diagram().automorphisms(),
            vec![vec![0, 1], vec![1, 0]]
        );
        let z33 = systems::simple_z3z3();
        assert_eq!(z33.diagram().automorphisms().len(), 1);
        let three = systems::three_blocks();
        // Swapping the terminal labels R and S would flip B's ordered child
        // pair, so only the identity survives.
        assert_eq!(three.diagram().automorphisms().len(), 1);
    }

    #[test]
    fn canonical_key_identifies_isomorphic_diagrams() {
        let (a, _) = parse_diagram("root X\nX -> Y Y\nY -> X X\n").unwrap();
        let b = systems::parity();
        assert_eq!(a.canonical_key(), b.diagram().canonical_key());
        let (c, _) = parse_diagram("root X\nX -> X Y\nY -> Y Y\n").unwrap();
        assert_ne!(a.canonical_key(), c.canonical_key());
        assert!(c.is_canonical());
    }
}
