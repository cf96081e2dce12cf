//! Finite binary words ("addresses"), antichains of incomparable addresses,
//! and complete antichains, which partition Cantor space into cones.
//!
//! An address `a` stands for the cone of all infinite binary sequences that
//! begin with `a`. The empty address is written `e` in the textual format.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

/// Errors arising from address and cone arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CantorError {
    #[error("invalid character {0:?} in address (expected 0, 1, or the single word \"e\")")]
    BadChar(char),
    #[error("empty address literal; the empty word is written \"e\"")]
    EmptyLiteral,
    #[error("addresses {0} and {1} are comparable")]
    ComparablePair(Address, Address),
    #[error("cone set does not cover Cantor space")]
    Incomplete,
    #[error("depth {requested} is smaller than the deepest cone (length {required})")]
    DepthTooSmall { requested: usize, required: usize },
}

/// A finite binary word addressing a cone of Cantor space.
///
/// Ordering is lexicographic with prefixes first, which is a total order and
/// gives antichains a unique sorted form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Address {
    bits: Vec<u8>,
}

impl Address {
    /// The empty word, addressing all of Cantor space.
    pub fn root() -> Self {
        Address { bits: Vec::new() }
    }

    /// Builds an address from bits; every entry must be 0 or 1.
    pub fn from_bits(bits: impl IntoIterator<Item = u8>) -> Self {
        let bits: Vec<u8> = bits.into_iter().collect();
        debug_assert!(bits.iter().all(|&b| b <= 1));
        Address { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn bit(&self, i: usize) -> u8 {
        self.bits[i]
    }

    /// The address one level deeper along `bit`.
    pub fn child(&self, bit: u8) -> Address {
        debug_assert!(bit <= 1);
        let mut bits = self.bits.clone();
        bits.push(bit);
        Address { bits }
    }

    /// Concatenation `self · suffix`.
    pub fn concat(&self, suffix: &Address) -> Address {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&suffix.bits);
        Address { bits }
    }

    pub fn is_prefix_of(&self, other: &Address) -> bool {
        other.bits.len() >= self.bits.len() && other.bits[..self.bits.len()] == self.bits[..]
    }

    pub fn is_proper_prefix_of(&self, other: &Address) -> bool {
        self.bits.len() < other.bits.len() && self.is_prefix_of(other)
    }

    /// Neither address is a prefix of the other.
    pub fn incomparable(&self, other: &Address) -> bool {
        !self.is_prefix_of(other) && !other.is_prefix_of(self)
    }

    /// With `self = prefix · s`, returns `s`; `None` if `prefix` is not a prefix.
    pub fn strip_prefix(&self, prefix: &Address) -> Option<Address> {
        if prefix.is_prefix_of(self) {
            Some(Address::from_bits(
                self.bits[prefix.len()..].iter().copied(),
            ))
        } else {
            None
        }
    }

    /// All `2^(d - len)` extensions of `self` to length exactly `d`.
    ///
    /// Panics if `d < self.len()`; callers check depth first.
    pub fn extensions_to_depth(&self, d: usize) -> Vec<Address> {
        assert!(d >= self.len());
        let extra = d - self.len();
        let mut out = Vec::with_capacity(1usize << extra);
        let mut cur = self.clone();
        extend_rec(&mut cur, extra, &mut out);
        out
    }
}

fn extend_rec(cur: &mut Address, extra: usize, out: &mut Vec<Address>) {
    if extra == 0 {
        out.push(cur.clone());
        return;
    }
    for bit in 0..2u8 {
        cur.bits.push(bit);
        extend_rec(cur, extra - 1, out);
        cur.bits.pop();
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits.is_empty() {
            return f.write_str("e");
        }
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Address {
    type Err = CantorError;

    fn from_str(s: &str) -> Result<Self, CantorError> {
        if s == "e" {
            return Ok(Address::root());
        }
        if s.is_empty() {
            return Err(CantorError::EmptyLiteral);
        }
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                other => return Err(CantorError::BadChar(other)),
            }
        }
        Ok(Address { bits })
    }
}

/// A sorted set of pairwise incomparable addresses: a set of disjoint cones.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ConeAntichain {
    addrs: Vec<Address>,
}

impl ConeAntichain {
    /// Sorts the addresses and checks pairwise incomparability.
    pub fn new(mut addrs: Vec<Address>) -> Result<Self, CantorError> {
        addrs.sort();
        // In sorted order a prefix pair, if any exists, occurs adjacently.
        for w in addrs.windows(2) {
            if w[0].is_prefix_of(&w[1]) {
                return Err(CantorError::ComparablePair(w[0].clone(), w[1].clone()));
            }
        }
        Ok(ConeAntichain { addrs })
    }

    pub fn addresses(&self) -> &[Address] {
        &self.addrs
    }

    pub fn len(&self) -> usize {
        self.addrs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.addrs.is_empty()
    }

    pub fn contains(&self, a: &Address) -> bool {
        self.addrs.binary_search(a).is_ok()
    }

    /// Whether the cones cover all of Cantor space, i.e. the measures
    /// `2^-len` sum to one. Incomparability makes the sum at most one, so
    /// equality decides completeness exactly.
    pub fn is_complete(&self) -> bool {
        if self.addrs.is_empty() {
            return false;
        }
        let max = self.addrs.iter().map(Address::len).max().unwrap();
        let mut sum = BigUint::ZERO;
        for a in &self.addrs {
            sum += BigUint::one() << (max - a.len());
        }
        sum == BigUint::one() << max
    }
}

/// A complete antichain: a partition of Cantor space into finitely many cones.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ConePartition {
    cones: ConeAntichain,
}

impl ConePartition {
    pub fn new(addrs: Vec<Address>) -> Result<Self, CantorError> {
        let cones = ConeAntichain::new(addrs)?;
        if !cones.is_complete() {
            return Err(CantorError::Incomplete);
        }
        Ok(ConePartition { cones })
    }

    pub fn from_antichain(cones: ConeAntichain) -> Result<Self, CantorError> {
        if !cones.is_complete() {
            return Err(CantorError::Incomplete);
        }
        Ok(ConePartition { cones })
    }

    /// The one-cone partition `{e}`.
    pub fn root() -> Self {
        ConePartition {
            cones: ConeAntichain::new(vec![Address::root()]).unwrap(),
        }
    }

    pub fn antichain(&self) -> &ConeAntichain {
        &self.cones
    }

    pub fn addresses(&self) -> &[Address] {
        self.cones.addresses()
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The unique cone containing the cone of `a`, if `a` is at least as deep.
    pub fn cone_containing(&self, a: &Address) -> Option<&Address> {
        self.addresses().iter().find(|c| c.is_prefix_of(a))
    }

    /// Replaces every cone by all its extensions to length exactly `d`.
    pub fn refine_to_depth(&self, d: usize) -> Result<ConePartition, CantorError> {
        let required = self.addresses().iter().map(Address::len).max().unwrap();
        if d < required {
            return Err(CantorError::DepthTooSmall {
                requested: d,
                required,
            });
        }
        let mut out = Vec::new();
        for a in self.addresses() {
            out.extend(a.extensions_to_depth(d));
        }
        Ok(ConePartition::new(out).expect("uniform refinement stays a partition"))
    }

    /// The coarsest partition refining both: from each pair of intersecting
    /// cones, the deeper one survives.
    pub fn common_refinement(&self, other: &ConePartition) -> ConePartition {
        let mut out = Vec::new();
        for a in self.addresses() {
            for b in other.addresses() {
                if b.is_prefix_of(a) {
                    out.push(a.clone());
                } else if a.is_proper_prefix_of(b) {
                    out.push(b.clone());
                }
            }
        }
        ConePartition::new(out).expect("common refinement stays a partition")
    }
}

/// The coarsest partition in which every given address appears as a cone:
/// the tree spanned by the given addresses plus the off-path sibling cones.
///
/// The addresses must be pairwise incomparable.
pub fn completing_antichain(addrs: &[Address]) -> Result<ConePartition, CantorError> {
    let chain = ConeAntichain::new(addrs.to_vec())?;
    let mut out = Vec::new();
    complete_rec(&Address::root(), chain.addresses(), &mut out);
    Ok(ConePartition::new(out).expect("completion covers Cantor space"))
}

fn complete_rec(prefix: &Address, targets: &[Address], out: &mut Vec<Address>) {
    if targets.iter().any(|t| t == prefix) {
        out.push(prefix.clone());
        return;
    }
    if !targets.iter().any(|t| prefix.is_proper_prefix_of(t)) {
        // Off the spanning tree: this whole cone survives unsplit.
        out.push(prefix.clone());
        return;
    }
    complete_rec(&prefix.child(0), targets, out);
    complete_rec(&prefix.child(1), targets, out);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn addr(s: &str) -> Address {
        s.parse().unwrap()
    }

    fn addrs(list: &[&str]) -> Vec<Address> {
        list.iter().map(|s| addr(s)).collect()
    }

    #[test]
    fn parse_and_display_round_trip() {
        assert_eq!(addr("e"), Address::root());
        assert_eq!(addr("e").to_string(), "e");
        assert_eq!(addr("0110").to_string(), "0110");
        assert_eq!(addr("0110").len(), 4);
        assert!(matches!(
            "".parse::<Address>(),
            Err(CantorError::EmptyLiteral)
        ));
        assert!(matches!(
            "01x".parse::<Address>(),
            Err(CantorError::BadChar('x'))
        ));
    }

    #[test]
    fn prefix_and_incomparability() {
        assert!(addr("e").is_prefix_of(&addr("0")));
        assert!(addr("01").is_prefix_of(&addr("011")));
        assert!(!addr("01").is_prefix_of(&addr("001")));
        assert!(addr("01").incomparable(&addr("001")));
        assert!(!addr("01").incomparable(&addr("01")));
        assert!(!addr("e").incomparable(&addr("1")));
        // Same length, distinct: always incomparable.
        assert!(addr("00").incomparable(&addr("10")));
    }

    #[test]
    fn ordering_is_lexicographic_with_prefixes_first() {
        let mut v = addrs(&["1", "00", "010", "01", "e"]);
        v.sort();
        let shown: Vec<String> = v.iter().map(|a| a.to_string()).collect();
        assert_eq!(shown, ["e", "00", "01", "010", "1"]);
    }

    #[test]
    fn antichain_rejects_comparable_pairs() {
        assert!(ConeAntichain::new(addrs(&["0", "00"])).is_err());
        assert!(ConeAntichain::new(addrs(&["0", "0"])).is_err());
        assert!(ConeAntichain::new(addrs(&["00", "01", "1"])).is_ok());
    }

    #[test]
    fn completeness_matches_examples() {
        let complete = ConeAntichain::new(addrs(&["00", "01", "1"])).unwrap();
        assert!(complete.is_complete());
        let incomplete = ConeAntichain::new(addrs(&["0", "10"])).unwrap();
        assert!(!incomplete.is_complete());
        let root = ConeAntichain::new(addrs(&["e"])).unwrap();
        assert!(root.is_complete());
        assert!(!ConeAntichain::new(vec![]).unwrap().is_complete());
    }

    #[test]
    fn completeness_agrees_with_word_enumeration() {
        // Oracle: an antichain is complete iff every word one past the
        // deepest cone extends some member.
        let cases: Vec<Vec<Address>> = vec![
            addrs(&["e"]),
            addrs(&["0", "1"]),
            addrs(&["00", "01", "1"]),
            addrs(&["0", "10", "110", "111"]),
            addrs(&["0", "10"]),
            addrs(&["00", "1"]),
            addrs(&["000", "001", "01", "10", "11"]),
        ];
        for case in cases {
            let chain = ConeAntichain::new(case.clone()).unwrap();
            let depth = case.iter().map(Address::len).max().unwrap() + 1;
            let all_covered = Address::root()
                .extensions_to_depth(depth)
                .iter()
                .all(|w| case.iter().any(|a| a.is_prefix_of(w)));
            assert_eq!(chain.is_complete(), all_covered, "case {case:?}");
        }
    }

    #[test]
    fn refine_to_depth_examples() {
        let p = ConePartition::new(addrs(&["0", "10", "11"])).unwrap();
        let r = p.refine_to_depth(2).unwrap();
        assert_eq!(r.addresses(), addrs(&["00", "01", "10", "11"]).as_slice());
        assert_eq!(
            p.refine_to_depth(1),
            Err(CantorError::DepthTooSmall {
                requested: 1,
                required: 2
            })
        );
        let deeper = p.refine_to_depth(3).unwrap();
        assert_eq!(deeper.len(), 8);
    }

    #[test]
    fn common_refinement_example() {
        let p = ConePartition::new(addrs(&["00", "01", "1"])).unwrap();
        let q = ConePartition::new(addrs(&["0", "10", "11"])).unwrap();
        let r = p.common_refinement(&q);
        assert_eq!(r.addresses(), addrs(&["00", "01", "10", "11"]).as_slice());
        // Refining with itself changes nothing.
        assert_eq!(p.common_refinement(&p), p);
        // Refining with the root partition changes nothing.
        assert_eq!(p.common_refinement(&ConePartition::root()), p);
    }

    #[test]
    fn completing_antichain_examples() {
        let done = completing_antichain(&addrs(&["00", "10"])).unwrap();
        assert_eq!(
            done.addresses(),
            addrs(&["00", "01", "10", "11"]).as_slice()
        );
        let single = completing_antichain(&addrs(&["010"])).unwrap();
        assert_eq!(
            single.addresses(),
            addrs(&["00", "010", "011", "1"]).as_slice()
        );
        let root = completing_antichain(&addrs(&["e"])).unwrap();
        assert_eq!(root.addresses(), addrs(&["e"]).as_slice());
        assert!(completing_antichain(&addrs(&["0", "01"])).is_err());
    }

    #[test]
    fn cone_containing_finds_the_cover() {
        let p = ConePartition::new(addrs(&["00", "01", "1"])).unwrap();
        assert_eq!(p.cone_containing(&addr("0110")), Some(&addr("01")));
        assert_eq!(p.cone_containing(&addr("1")), Some(&addr("1")));
        assert_eq!(p.cone_containing(&addr("0")), None);
    }
}
