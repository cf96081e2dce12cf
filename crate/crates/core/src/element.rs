//! Elements of Thompson's group V as prefix substitution maps: bijections
//! between two partitions of Cantor space into cones, acting by replacing the
//! domain prefix of a sequence with the paired range prefix.
//!
//! The textual format (".vel") has one `DOMAIN -> RANGE` line per cone pair,
//! with addresses written as `{0,1}` words and the empty word as `e`.

use std::fmt;

use thiserror::Error;

use crate::address::{completing_antichain, Address, CantorError, ConePartition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElementError {
    #[error("domain is not a cone partition: {0}")]
    Domain(CantorError),
    #[error("range is not a cone partition: {0}")]
    Range(CantorError),
    #[error("addresses {0} and {1} are not incomparable")]
    NotIncomparable(Address, Address),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// A bijection of Cantor space given by finitely many prefix substitutions.
///
/// Pairs are kept sorted by domain address. Structural equality compares the
/// stored pairs; two maps represent the same group element exactly when their
/// normal forms are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PrefixMap {
    pairs: Vec<(Address, Address)>,
    normalized: bool,
}

impl PrefixMap {
    /// Validates that domains and ranges each form a cone partition.
    pub fn new(mut pairs: Vec<(Address, Address)>) -> Result<Self, ElementError> {
        ConePartition::new(pairs.iter().map(|(d, _)| d.clone()).collect())
            .map_err(ElementError::Domain)?;
        ConePartition::new(pairs.iter().map(|(_, r)| r.clone()).collect())
            .map_err(ElementError::Range)?;
        pairs.sort();
        Ok(PrefixMap {
            pairs,
            normalized: false,
        })
    }

    /// The identity element `{e -> e}`.
    pub fn identity() -> Self {
        PrefixMap {
            pairs: vec![(Address::root(), Address::root())],
            normalized: true,
        }
    }

    pub fn pairs(&self) -> &[(Address, Address)] {
        &self.pairs
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Length of the deepest address on either side.
    pub fn depth(&self) -> usize {
        self.pairs
            .iter()
            .map(|(d, r)| d.len().max(r.len()))
            .max()
            .unwrap_or(0)
    }

    /// Merges sibling pairs `(a0 -> b0, a1 -> b1)` into `(a -> b)` until no
    /// merge applies. The result is the unique minimal representative.
    pub fn normalize(&self) -> PrefixMap {
        // Sorted order puts mergeable siblings adjacently, so one stack pass
        // with cascading merges suffices.
        let mut stack: Vec<(Address, Address)> = Vec::with_capacity(self.pairs.len());
        for pair in self.pairs.iter().cloned() {
            stack.push(pair);
            while stack.len() >= 2 {
                let (d1, r1) = &stack[stack.len() - 2];
                let (d2, r2) = &stack[stack.len() - 1];
                match merge_siblings(d1, r1, d2, r2) {
                    Some(merged) => {
                        stack.pop();
                        stack.pop();
                        stack.push(merged);
                    }
                    None => break,
                }
            }
        }
        PrefixMap {
            pairs: stack,
            normalized: true,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.normalize().pairs == PrefixMap::identity().pairs
    }

    /// Whether two maps represent the same group element.
    pub fn same_element(&self, other: &PrefixMap) -> bool {
        self.normalize().pairs == other.normalize().pairs
    }

    /// The image of the cone of `a`, when `a` is at least as deep as its
    /// covering domain cone; `None` when only a strict prefix of a domain
    /// cone, where the element does not act by prefix substitution.
    pub fn partial_apply(&self, a: &Address) -> Option<Address> {
        for (d, r) in &self.pairs {
            if d.is_prefix_of(a) {
                let tail = a.strip_prefix(d).unwrap();
                return Some(r.concat(&tail));
            }
        }
        None
    }

    /// Applies `self` first and then `g`, tracking cones through both
    /// substitutions and returning the normal form.
    pub fn compose(&self, g: &PrefixMap) -> PrefixMap {
        let mut pairs = Vec::new();
        for (a, b) in &self.pairs {
            for (c, d) in g.pairs() {
                if b.is_prefix_of(c) {
                    // b·s = c: the part of this cone inside c.
                    let s = c.strip_prefix(b).unwrap();
                    pairs.push((a.concat(&s), d.clone()));
                } else if c.is_proper_prefix_of(b) {
                    let s = b.strip_prefix(c).unwrap();
                    pairs.push((a.clone(), d.concat(&s)));
                }
            }
        }
        PrefixMap::new(pairs)
            .expect("composition of bijections stays a bijection")
            .normalize()
    }

    /// The inverse substitution map.
    pub fn inverse(&self) -> PrefixMap {
        let pairs = self
            .pairs
            .iter()
            .map(|(d, r)| (r.clone(), d.clone()))
            .collect();
        PrefixMap::new(pairs)
            .expect("inverse of a bijection stays a bijection")
            .normalize()
    }

    /// The transposition swapping two incomparable cones and fixing the rest.
    pub fn transposition(a: &Address, b: &Address) -> Result<PrefixMap, ElementError> {
        PrefixMap::from_cycles(&[vec![a.clone(), b.clone()]])
    }

    /// The product of disjoint cycles of cones: each listed address maps to
    /// the next one in its cycle, and all other cones are fixed.
    ///
    /// All listed addresses must be pairwise incomparable.
    pub fn from_cycles(cycles: &[Vec<Address>]) -> Result<PrefixMap, ElementError> {
        let all: Vec<Address> = cycles.iter().flatten().cloned().collect();
        let base = completing_antichain(&all).map_err(|e| match e {
            CantorError::ComparablePair(a, b) => ElementError::NotIncomparable(a, b),
            other => ElementError::Domain(other),
        })?;
        let mut pairs: Vec<(Address, Address)> = Vec::with_capacity(base.len());
        'cones: for cone in base.addresses() {
            for cycle in cycles {
                if let Some(i) = cycle.iter().position(|c| c == cone) {
                    let next = cycle[(i + 1) % cycle.len()].clone();
                    pairs.push((cone.clone(), next));
                    continue 'cones;
                }
            }
            pairs.push((cone.clone(), cone.clone()));
        }
        Ok(PrefixMap::new(pairs)
            .expect("cycle assembly permutes one partition")
            .normalize())
    }

    /// Parses the ".vel" format: `DOMAIN -> RANGE` lines, `#` comments.
    pub fn parse(text: &str) -> Result<PrefixMap, ElementError> {
        let mut pairs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let (dom, arrow, rng) = (tokens.next(), tokens.next(), tokens.next());
            let (Some(dom), Some("->"), Some(rng), None) = (dom, arrow, rng, tokens.next()) else {
                return Err(ElementError::Parse {
                    line: line_no,
                    reason: format!("expected \"DOMAIN -> RANGE\", found {line:?}"),
                });
            };
            let parse_addr = |s: &str| -> Result<Address, ElementError> {
                s.parse().map_err(|e| ElementError::Parse {
                    line: line_no,
                    reason: format!("{e}"),
                })
            };
            pairs.push((parse_addr(dom)?, parse_addr(rng)?));
        }
        if pairs.is_empty() {
            return Err(ElementError::Parse {
                line: 0,
                reason: "no cone pairs given".into(),
            });
        }
        PrefixMap::new(pairs)
    }
}

fn merge_siblings(
    d1: &Address,
    r1: &Address,
    d2: &Address,
    r2: &Address,
) -> Option<(Address, Address)> {
    let sibling = |x: &Address, y: &Address| -> Option<Address> {
        // Accept exactly x = p·0, y = p·1 and return p.
        if x.is_empty() || x.len() != y.len() {
            return None;
        }
        let n = x.len() - 1;
        if x.bits()[..n] == y.bits()[..n] && x.bit(n) == 0 && y.bit(n) == 1 {
            Some(Address::from_bits(x.bits()[..n].iter().copied()))
        } else {
            None
        }
    };
    let d = sibling(d1, d2)?;
    let r = sibling(r1, r2)?;
    Some((d, r))
}

impl fmt::Display for PrefixMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, r) in &self.pairs {
            writeln!(f, "{d} -> {r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PrefixMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self
            .pairs
            .iter()
            .map(|(d, r)| format!("{d}->{r}"))
            .collect();
        write!(f, "{{{}}}", shown.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn addr(s: &str) -> Address {
        s.parse().unwrap()
    }

    pub fn map(pairs: &[(&str, &str)]) -> PrefixMap {
        PrefixMap::new(pairs.iter().map(|(d, r)| (addr(d), addr(r))).collect()).unwrap()
    }

    /// Oracle: evaluate a map pointwise on all words of length `depth` and
    /// rebuild the minimal prefix map from scratch.
    fn normal_form_by_pointwise_evaluation(g: &PrefixMap, depth: usize) -> Vec<(Address, Address)> {
        assert!(depth >= g.depth());
        fn build(g: &PrefixMap, prefix: &Address, depth: usize, out: &mut Vec<(Address, Address)>) {
            // The cone acts as a single substitution iff every depth-level
            // word maps by appending its tail to one common image prefix.
            // Infer the candidate image from the all-zeros tail, then check
            // the rest; emitting at the first consistent level top-down
            // yields the coarsest map.
            let m = depth - prefix.len();
            let zeros = Address::from_bits(vec![0; m]);
            let img0 = g
                .partial_apply(&prefix.concat(&zeros))
                .expect("depth-level words are inside domain cones");
            if img0.bits().len() >= m && img0.bits()[img0.len() - m..].iter().all(|&b| b == 0) {
                let img = Address::from_bits(img0.bits()[..img0.len() - m].to_vec());
                let consistent = prefix.extensions_to_depth(depth).iter().all(|w| {
                    let tail = w.strip_prefix(prefix).unwrap();
                    g.partial_apply(w) == Some(img.concat(&tail))
                });
                if consistent {
                    out.push((prefix.clone(), img));
                    return;
                }
            }
            build(g, &prefix.child(0), depth, out);
            build(g, &prefix.child(1), depth, out);
        }
        let mut out = Vec::new();
        build(g, &Address::root(), depth, &mut out);
        out.sort();
        out
    }

    #[test]
    fn normalize_merges_sibling_pairs() {
        let g = map(&[("00", "10"), ("01", "11"), ("1", "0")]);
        let n = g.normalize();
        assert_eq!(n.pairs(), map(&[("0", "1"), ("1", "0")]).pairs());
        // Fully collapsible: a shuffled identity.
        let id = map(&[("00", "00"), ("01", "01"), ("1", "1")]);
        assert!(id.is_identity());
        // Already minimal: stays put.
        let t = map(&[("00", "01"), ("01", "00"), ("1", "1")]);
        assert_eq!(t.normalize().pairs(), t.pairs());
    }

    #[test]
    fn normalize_agrees_with_pointwise_oracle() {
        let cases = [
            map(&[("00", "10"), ("01", "11"), ("1", "0")]),
            map(&[("00", "00"), ("01", "01"), ("1", "1")]),
            map(&[("0", "10"), ("10", "0"), ("11", "11")]),
            map(&[("000", "00"), ("001", "010"), ("01", "011"), ("1", "1")]),
        ];
        for g in cases {
            let depth = g.depth() + 1;
            assert_eq!(
                g.normalize().pairs().to_vec(),
                normal_form_by_pointwise_evaluation(&g, depth),
                "map {g:?}"
            );
        }
    }

    #[test]
    fn partial_apply_examples() {
        let g = map(&[("0", "10"), ("10", "0"), ("11", "11")]);
        assert_eq!(g.partial_apply(&addr("011")), Some(addr("1011")));
        assert_eq!(g.partial_apply(&addr("e")), None);
        assert_eq!(g.partial_apply(&addr("0")), Some(addr("10")));
        assert_eq!(g.partial_apply(&addr("1")), None);
    }

    #[test]
    fn compose_matches_pointwise_oracle() {
        let g = map(&[("00", "01"), ("01", "00"), ("1", "1")]);
        let h = map(&[("00", "00"), ("01", "1"), ("1", "01")]);
        let gh = g.compose(&h);
        // Oracle: track every length-4 word through both maps, then rebuild.
        let depth = 4;
        let mut pointwise = Vec::new();
        for w in Address::root().extensions_to_depth(depth) {
            let mid = g.partial_apply(&w).unwrap();
            let end = h.partial_apply(&mid).unwrap();
            pointwise.push((w, end));
        }
        let oracle = PrefixMap::new(pointwise).unwrap().normalize();
        assert_eq!(gh.pairs(), oracle.pairs());
        assert_eq!(
            gh.pairs(),
            map(&[("00", "1"), ("01", "00"), ("1", "01")]).pairs()
        );
    }

    #[test]
    fn inverse_and_identity_laws() {
        let g = map(&[("00", "1"), ("01", "00"), ("1", "01")]);
        assert!(g.compose(&g.inverse()).is_identity());
        assert!(g.inverse().compose(&g).is_identity());
        assert!(g.compose(&PrefixMap::identity()).same_element(&g));
        assert!(PrefixMap::identity().compose(&g).same_element(&g));
    }

    #[test]
    fn transposition_examples() {
        let t = PrefixMap::transposition(&addr("0"), &addr("10")).unwrap();
        assert_eq!(
            t.pairs(),
            map(&[("0", "10"), ("10", "0"), ("11", "11")]).pairs()
        );
        assert!(t.compose(&t).is_identity());
        assert_eq!(
            PrefixMap::transposition(&addr("0"), &addr("01")),
            Err(ElementError::NotIncomparable(addr("0"), addr("01")))
        );
    }

    #[test]
    fn three_cycle_from_cycles() {
        let c = PrefixMap::from_cycles(&[vec![addr("00"), addr("01"), addr("10")]]).unwrap();
        assert_eq!(c.partial_apply(&addr("00")), Some(addr("01")));
        assert_eq!(c.partial_apply(&addr("01")), Some(addr("10")));
        assert_eq!(c.partial_apply(&addr("10")), Some(addr("00")));
        assert_eq!(c.partial_apply(&addr("11")), Some(addr("11")));
        assert!(c.compose(&c).compose(&c).is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        let bad = PrefixMap::new(vec![(addr("0"), addr("0")), (addr("1"), addr("0"))]);
        assert!(matches!(bad, Err(ElementError::Range(_))));
        let bad = PrefixMap::new(vec![(addr("0"), addr("0"))]);
        assert!(matches!(bad, Err(ElementError::Domain(_))));
    }

    #[test]
    fn vel_round_trip() {
        let text = "# a transposition\n0 -> 10\n\n10 -> 0\n11 -> 11\n";
        let g = PrefixMap::parse(text).unwrap();
        assert_eq!(
            g.pairs(),
            map(&[("0", "10"), ("10", "0"), ("11", "11")]).pairs()
        );
        let again = PrefixMap::parse(&g.to_string()).unwrap();
        assert_eq!(again.pairs(), g.pairs());
        assert!(PrefixMap::parse("0 -> 10\n10 ->\n").is_err());
        assert!(PrefixMap::parse("hello\n").is_err());
        assert!(PrefixMap::parse("# nothing\n").is_err());
    }
}
