//! A lazily-evaluated infinite system of labels P^(0), P^(1), P^(2), …
//! driven by a strictly increasing positive integer sequence (a_n): the
//! 0-child of P^(n) is P^(n−1) (P^(0) is its own 0-child) and the 1-child
//! of P^(n) is P^(n + a_n). Includes the index-collision witness showing
//! any two labels flow together under a common suffix.

use std::fmt::Write as _;

use thiserror::Error;

use crate::address::Address;

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum FamilyError {
    /// The sequence prefix is not strictly increasing and positive, or an
    /// arithmetic tail has step 0.
    #[error("sequence values must be strictly increasing and positive")]
    NotIncreasing,
    /// A label index beyond the finite prefix was reached and no extension
    /// rule is available.
    #[error("sequence has no value at index {index}")]
    SequenceExhausted { index: u64 },
    /// Indices grew beyond the machine range.
    #[error("index arithmetic overflowed")]
    Overflow,
    /// A query violated its stated requirements.
    #[error("invalid query: {0}")]
    InvalidQuery(String),
}

/// How a sequence continues past its explicit prefix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Tail {
    /// No continuation: indexing past the prefix is an error.
    Explicit,
    /// a_n = a_last + step · (n − last) past the prefix.
    Arithmetic { step: u64 },
}

/// A strictly increasing sequence of positive integers, given as a finite
/// prefix plus an optional arithmetic continuation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IncreasingSeq {
    prefix: Vec<u64>,
    tail: Tail,
}

impl IncreasingSeq {
    pub fn new(prefix: Vec<u64>, tail: Tail) -> Result<IncreasingSeq, FamilyError> {
        if prefix.is_empty() || prefix[0] == 0 {
            return Err(FamilyError::NotIncreasing);
        }
        if prefix.windows(2).any(|w| w[0] >= w[1]) {
            return Err(FamilyError::NotIncreasing);
        }
        if tail == (Tail::Arithmetic { step: 0 }) {
            return Err(FamilyError::NotIncreasing);
        }
        Ok(IncreasingSeq { prefix, tail })
    }

    /// The sequence value a_n.
    pub fn get(&self, n: u64) -> Result<u64, FamilyError> {
        if let Ok(i) = usize::try_from(n) {
            if i < self.prefix.len() {
                return Ok(self.prefix[i]);
            }
        }
        match self.tail {
            Tail::Explicit => Err(FamilyError::SequenceExhausted { index: n }),
            Tail::Arithmetic { step } => {
                let last_index = (self.prefix.len() - 1) as u64;
                let last = *self.prefix.last().expect("prefix is nonempty");
                let beyond = n - last_index;
                step.checked_mul(beyond)
                    .and_then(|d| last.checked_add(d))
                    .ok_or(FamilyError::Overflow)
            }
        }
    }
}

/// The label index reached from P^(start) along the bits of `addr`:
/// bit 0 decrements (stopping at 0), bit 1 jumps from n to n + a_n.
pub fn family_type_from(a: &IncreasingSeq, start: u64, addr: &Address) -> Result<u64, FamilyError> {
    let mut cur = start;
    for &bit in addr.bits() {
        cur = if bit == 0 {
            cur.saturating_sub(1)
        } else {
            let step = a.get(cur)?;
            cur.checked_add(step).ok_or(FamilyError::Overflow)?
        };
    }
    Ok(cur)
}

/// The label index at `addr`, starting from P^(0) at the empty address.
pub fn family_type_of(a: &IncreasingSeq, addr: &Address) -> Result<u64, FamilyError> {
    family_type_from(a, 0, addr)
}

/// The common suffix 1^m 0^r that sends P^(i) to P^(0) and P^(j) to P^(k),
/// together with the simulated index trajectories.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdentificationWitness {
    /// Number of leading 1 bits.
    pub m: u64,
    /// Number of trailing 0 bits.
    pub r: u64,
    /// Where the 1-run takes the lower index: i_m.
    pub i_end: u64,
    /// Where the 1-run takes the higher index: j_m.
    pub j_end: u64,
    /// The trajectory pairs (i_n, j_n) for n = 0..=m. The gaps j_n − i_n
    /// are strictly increasing.
    pub trace: Vec<(u64, u64)>,
}

impl IdentificationWitness {
    /// The witnessing address 1^m 0^r.
    pub fn address(&self) -> Address {
        let mut bits = Vec::with_capacity((self.m + self.r) as usize);
        bits.extend(std::iter::repeat_n(1u8, self.m as usize));
        bits.extend(std::iter::repeat_n(0u8, self.r as usize));
        Address::from_bits(bits)
    }
}

/// Finds the least m with j_m − i_m ≥ k for the parallel trajectories
/// i_{n+1} = i_n + a_{i_n}, j_{n+1} = j_n + a_{j_n}, and sets r = j_m − k.
/// Then along 1^m 0^r, P^(i) reaches P^(0) (the 0-run bottoms out) while
/// P^(j) reaches exactly P^(k).
pub fn identification_witness(
    a: &IncreasingSeq,
    i: u64,
    j: u64,
    k: u64,
) -> Result<IdentificationWitness, FamilyError> {
    if i >= j {
        return Err(FamilyError::InvalidQuery(format!(
            "need i < j, got i = {i}, j = {j}"
        )));
    }
    if k == 0 {
        return Err(FamilyError::InvalidQuery("need k >= 1".into()));
    }
    let (mut ci, mut cj) = (i, j);
    let mut trace = vec![(ci, cj)];
    let mut m = 0u64;
    // The gap cj − ci grows by at least one per step, so this terminates
    // (or fails on sequence access) within k iterations.
    while cj - ci < k {
        ci = ci.checked_add(a.get(ci)?).ok_or(FamilyError::Overflow)?;
        cj = cj.checked_add(a.get(cj)?).ok_or(FamilyError::Overflow)?;
        trace.push((ci, cj));
        m += 1;
    }
    Ok(IdentificationWitness {
        m,
        r: cj - k,
        i_end: ci,
        j_end: cj,
        trace,
    })
}

/// The finite top of the family: every label reachable from P^(0) within
/// `depth` steps, with the frontier left unexpanded.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedFamily {
    /// Sorted label indices present.
    pub nodes: Vec<u64>,
    /// Edges (from, bit, to), sorted; only expanded nodes carry edges.
    pub edges: Vec<(u64, u8, u64)>,
    /// Sorted indices first reached at exactly `depth` — shown but not
    /// expanded.
    pub open: Vec<u64>,
}

pub fn truncated_diagram(a: &IncreasingSeq, depth: usize) -> Result<TruncatedFamily, FamilyError> {
    let mut frontier = vec![0u64];
    let mut nodes = vec![0u64];
    let mut edges = Vec::new();
    for _ in 0..depth {
        let mut next = Vec::new();
        for &n in &frontier {
            let lo = n.saturating_sub(1);
            let hi = n.checked_add(a.get(n)?).ok_or(FamilyError::Overflow)?;
            for (bit, child) in [(0u8, lo), (1u8, hi)] {
                edges.push((n, bit, child));
                if !nodes.contains(&child) {
                    nodes.push(child);
                    next.push(child);
                }
            }
        }
        frontier = next;
    }
    nodes.sort_unstable();
    edges.sort_unstable();
    edges.dedup();
    frontier.sort_unstable();
    Ok(TruncatedFamily {
        nodes,
        edges,
        open: frontier,
    })
}

impl TruncatedFamily {
    /// Graphviz rendering; unexpanded frontier nodes are dashed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph family {\n  rankdir=LR;\n  node [shape=circle];\n");
        for &n in &self.nodes {
            let style = if self.open.contains(&n) {
                ", style=dashed"
            } else {
                ""
            };
            writeln!(out, "  P{n} [label=\"P({n})\"{style}];").expect("string write");
        }
        for &(from, bit, to) in &self.edges {
            writeln!(out, "  P{from} -> P{to} [label=\"{bit}\"];").expect("string write");
        }
        out.push_str("}\n");
        out
    }
}
