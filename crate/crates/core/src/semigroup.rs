//! Group-theoretic invariants attached to a system's nuclei: the cokernel of
//! I − A over a nucleus graph, its invariant factors and free rank, and the
//! derived verdicts about the type-preserving subgroup. Also the s-type of a
//! clopen set — the canonical coset its label counts occupy — which decides
//! whether two clopen sets admit type-matched decompositions.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::address::Address;
use crate::classify::{induced_graph, Classification, ClassifyError, Kind, TypeGraph};
use crate::diagram::TypeSystem;
use crate::matrix::{smith_normal_form, IntMatrix};

/// Edge-count matrix of a type graph: entry (i, j) counts the bits leading
/// vertex i to vertex j.
pub fn adjacency_matrix(g: &TypeGraph) -> IntMatrix {
    let n = g.len();
    let mut m = IntMatrix::zeros(n, n);
    for (i, row) in g.adjacency_counts().iter().enumerate() {
        for (j, &count) in row.iter().enumerate() {
            m.set(i, j, BigInt::from(count));
        }
    }
    m
}

fn identity_minus(a: &IntMatrix) -> IntMatrix {
    let n = a.rows();
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let base = if i == j {
                BigInt::one()
            } else {
                BigInt::zero()
            };
            m.set(i, j, base - a.get(i, j));
        }
    }
    m
}

/// A finitely generated abelian group in invariant-factor form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbelianGroup {
    torsion: Vec<BigInt>,
    free_rank: usize,
}

impl AbelianGroup {
    /// Torsion factors must each exceed 1 and divide their successor.
    pub fn new(torsion: Vec<BigInt>, free_rank: usize) -> AbelianGroup {
        assert!(torsion.iter().all(|d| d > &BigInt::one()));
        for w in torsion.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "factors must form a chain");
        }
        AbelianGroup { torsion, free_rank }
    }

    pub fn trivial() -> AbelianGroup {
        AbelianGroup {
            torsion: Vec::new(),
            free_rank: 0,
        }
    }

    /// Reads the group off a Smith diagonal: entries above 1 become torsion
    /// factors, zeros become free summands.
    pub fn from_diagonal(diag: &[BigInt]) -> AbelianGroup {
        let torsion = diag
            .iter()
            .filter(|d| **d > BigInt::one())
            .cloned()
            .collect();
        let free_rank = diag.iter().filter(|d| d.is_zero()).count();
        AbelianGroup { torsion, free_rank }
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// `None` when the group is infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z{d}")).collect();
        parts.extend(std::iter::repeat_n("Z".to_string(), self.free_rank));
        write!(f, "{}", parts.join(" x "))
    }
}

/// Invariants of one nucleus.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemigroupInfo {
    /// Label names of the nucleus, in label order.
    pub nucleus: Vec<String>,
    /// Smith invariant factors of I − A that exceed 1, in chain order.
    pub invariant_factors: Vec<BigInt>,
    /// Rank of the free part of coker(I − A).
    pub free_rank: usize,
    /// Rank of ker(I − A); always equals `free_rank`.
    pub h1_rank: usize,
    /// Signed determinant of I − A.
    pub det: BigInt,
    /// coker(I − A) in invariant-factor form.
    pub h0: AbelianGroup,
    /// (H0 ⊗ Z2) ⊕ H1 — the abelianization of the type-preserving group.
    pub abelianization: AbelianGroup,
    /// H0 is finite of odd order.
    pub fix_simple: bool,
    /// H0 is finite.
    pub fix_virtually_simple: bool,
}

/// Per-nucleus invariants; defined for the nuclear and multinuclear kinds
/// and `NotApplicable` otherwise. Nuclear systems yield exactly one entry.
pub fn semigroup_info(
    t: &TypeSystem,
    c: &Classification,
) -> Result<Vec<SemigroupInfo>, ClassifyError> {
    match c.kind {
        Kind::Nuclear | Kind::Multinuclear { .. } => {}
        _ => return Err(ClassifyError::NotApplicable),
    }
    let mut out = Vec::with_capacity(c.nuclei.len());
    for nucleus in &c.nuclei {
        let g = induced_graph(t, nucleus)?;
        let m = identity_minus(&adjacency_matrix(&g));
        let det = m.determinant();
        let diag = smith_normal_form(&m).diagonal();
        let h0 = AbelianGroup::from_diagonal(&diag);
        let free_rank = h0.free_rank();
        let even_factors = h0.torsion().iter().filter(|d| (**d).is_even()).count();
        let two = BigInt::from(2);
        let abelianization = AbelianGroup::new(vec![two; even_factors + free_rank], free_rank);
        let fix_simple = free_rank == 0 && h0.torsion().iter().all(|d| d.is_odd());
        out.push(SemigroupInfo {
            nucleus: nucleus.iter().map(|&v| t.name(v).to_string()).collect(),
            invariant_factors: h0.torsion().to_vec(),
            free_rank,
            h1_rank: free_rank,
            det,
            h0: h0.clone(),
            abelianization,
            fix_simple,
            fix_virtually_simple: free_rank == 0,
        });
    }
    Ok(out)
}

/// Canonical coset representative of a clopen set's label counts modulo the
/// subdivision relations. Equal values mean type-matched decompositions of
/// the two sets exist.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SType {
    coords: Vec<BigInt>,
}

impl SType {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }
}

pub fn stype_equal(x: &SType, y: &SType) -> bool {
    x == y
}

/// Precomputed reduction data for the s-types of one nuclear system.
pub struct StypeCalculator {
    index: HashMap<usize, usize>,
    right: IntMatrix,
    diag: Vec<BigInt>,
    threshold: usize,
}

impl StypeCalculator {
    /// Nuclear systems only.
    pub fn new(t: &TypeSystem, c: &Classification) -> Result<StypeCalculator, ClassifyError> {
        if c.kind != Kind::Nuclear {
            return Err(ClassifyError::NotApplicable);
        }
        let nucleus = &c.nuclei[0];
        let g = induced_graph(t, nucleus)?;
        let m = identity_minus(&adjacency_matrix(&g));
        let snf = smith_normal_form(&m);
        let diag = snf.diagonal();
        Ok(StypeCalculator {
            index: nucleus.iter().enumerate().map(|(i, &v)| (v, i)).collect(),
            right: snf.right,
            diag,
            threshold: c.threshold,
        })
    }

    /// The s-type of a union of pairwise disjoint cones.
    ///
    /// Cones shallower than the threshold are refined until every address
    /// carries a nucleus label; the resulting count vector is carried into
    /// the Smith basis and torsion coordinates are reduced into [0, d).
    pub fn stype_of(&self, t: &TypeSystem, cones: &[Address]) -> SType {
        debug_assert!(cones
            .iter()
            .enumerate()
            .all(|(i, a)| cones[i + 1..].iter().all(|b| a.incomparable(b))));
        let k = self.diag.len();
        let mut counts = IntMatrix::zeros(1, k);
        for cone in cones {
            if cone.len() >= self.threshold {
                let i = self.index[&t.type_of(cone)];
                let v = counts.get(0, i) + 1;
                counts.set(0, i, v);
            } else {
                for w in cone.extensions_to_depth(self.threshold) {
                    let i = self.index[&t.type_of(&w)];
                    let v = counts.get(0, i) + 1;
                    counts.set(0, i, v);
                }
            }
        }
        let in_basis = counts.mul(&self.right);
        let coords = (0..k)
            .map(|i| {
                let v = in_basis.get(0, i);
                if self.diag[i].is_zero() {
                    v.clone()
                } else {
                    v.mod_floor(&self.diag[i])
                }
            })
            .collect();
        SType { coords }
    }
}

/// One-shot convenience over [`StypeCalculator`].
pub fn stype_of(
    t: &TypeSystem,
    c: &Classification,
    cones: &[Address],
) -> Result<SType, ClassifyError> {
    Ok(StypeCalculator::new(t, c)?.stype_of(t, cones))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;
    use crate::systems;

    fn addr(s: &str) -> Address {
        s.parse().unwrap()
    }

    fn addrs(xs: &[&str]) -> Vec<Address> {
        xs.iter().map(|s| addr(s)).collect()
    }

    fn single_info(t: &TypeSystem) -> SemigroupInfo {
        let c = classify(t);
        let mut infos = semigroup_info(t, &c).unwrap();
        assert_eq!(infos.len(), 1);
        infos.pop().unwrap()
    }

    #[test]
    fn adjacency_matrices() {
        use crate::classify::type_graph;
        let g = type_graph(&systems::universal());
        assert_eq!(adjacency_matrix(&g), IntMatrix::from_rows(&[vec![2]]));
        let g = type_graph(&systems::parity());
        assert_eq!(
            adjacency_matrix(&g),
            IntMatrix::from_rows(&[vec![0, 2], vec![2, 0]])
        );
        let g = type_graph(&systems::free_rank_one());
        assert_eq!(
            adjacency_matrix(&g),
            IntMatrix::from_rows(&[vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]])
        );
    }

    #[test]
    fn parity_invariants() {
        let info = single_info(&systems::parity());
        assert_eq!(info.nucleus, vec!["A", "B"]);
        assert_eq!(info.invariant_factors, vec![BigInt::from(3)]);
        assert_eq!(info.det, BigInt::from(-3));
        assert_eq!(info.free_rank, 0);
        assert_eq!(info.h1_rank, 0);
        assert!(info.fix_simple);
        assert!(info.fix_virtually_simple);
        assert!(info.abelianization.is_trivial());
        assert_eq!(info.h0.to_string(), "Z3");
        assert_eq!(info.h0.order(), Some(BigInt::from(3)));
    }

    #[test]
    fn higman_style_invariants() {
        let info = single_info(&systems::higman5());
        assert_eq!(info.invariant_factors, vec![BigInt::from(4)]);
        assert_eq!(info.det, BigInt::from(-4));
        assert!(!info.fix_simple);
        assert!(info.fix_virtually_simple);
        assert_eq!(info.abelianization.to_string(), "Z2");
    }

    #[test]
    fn two_torsion_free_summands() {
        let info = single_info(&systems::simple_z3z3());
        assert_eq!(
            info.invariant_factors,
            vec![BigInt::from(3), BigInt::from(3)]
        );
        assert_eq!(info.det, BigInt::from(-9));
        assert!(info.fix_simple);
        assert_eq!(info.h0.to_string(), "Z3 x Z3");

        let info = single_info(&systems::free_rank_one());
        assert!(info.invariant_factors.is_empty());
        assert_eq!(info.free_rank, 1);
        assert_eq!(info.h1_rank, 1);
        assert_eq!(info.det, BigInt::from(0));
        assert_eq!(info.abelianization.to_string(), "Z2 x Z");
        assert!(!info.fix_simple);
        assert!(!info.fix_virtually_simple);
        assert_eq!(info.h0.order(), None);
    }

    #[test]
    fn multinuclear_reports_each_nucleus() {
        let t = systems::three_blocks();
        let c = classify(&t);
        let infos = semigroup_info(&t, &c).unwrap();
        assert_eq!(infos.len(), 3);
        for info in &infos {
            assert_eq!(info.nucleus.len(), 1);
            assert!(info.invariant_factors.is_empty());
            assert_eq!(info.det, BigInt::from(-1));
            assert!(info.h0.is_trivial());
            assert!(info.fix_simple);
        }
    }

    #[test]
    fn quasinuclear_kinds_are_rejected() {
        for t in [systems::point_zero(), systems::even_runs()] {
            let c = classify(&t);
            assert_eq!(semigroup_info(&t, &c), Err(ClassifyError::NotApplicable));
            assert!(StypeCalculator::new(&t, &c).is_err());
        }
    }

    #[test]
    fn stype_respects_subdivision_relations() {
        let t = systems::parity();
        let c = classify(&t);
        let calc = StypeCalculator::new(&t, &c).unwrap();
        // A whole cone equals the union of its refinements.
        let whole = calc.stype_of(&t, &addrs(&["e"]));
        let split = calc.stype_of(&t, &addrs(&["00", "01", "1"]));
        assert!(stype_equal(&whole, &split));
        // Equal labels, equal s-types.
        assert_eq!(
            calc.stype_of(&t, &addrs(&["0"])),
            calc.stype_of(&t, &addrs(&["1"]))
        );
        // The defining relation: a parent equals its two children.
        assert_eq!(
            calc.stype_of(&t, &addrs(&["00", "01"])),
            calc.stype_of(&t, &addrs(&["0"]))
        );
        // Distinct cosets stay distinct: one length-2 cone vs its parent.
        assert_ne!(
            calc.stype_of(&t, &addrs(&["0"])),
            calc.stype_of(&t, &addrs(&["00"]))
        );
        // Triple of one label collapses: 3a = 0 in this cokernel.
        assert_eq!(
            calc.stype_of(&t, &addrs(&["00", "01", "10"])),
            calc.stype_of(&t, &[])
        );
    }

    #[test]
    fn stype_refines_shallow_cones_on_transient_roots() {
        use crate::diagram::{parse_diagram, validate};
        let (d, _) = parse_diagram("root T\nT -> A B\nA -> B B\nB -> A A\n").unwrap();
        let t = validate(d).unwrap();
        let c = classify(&t);
        assert_eq!(c.threshold, 1);
        let calc = StypeCalculator::new(&t, &c).unwrap();
        // The root cone must be refined before its label counts.
        assert_eq!(
            calc.stype_of(&t, &addrs(&["e"])),
            calc.stype_of(&t, &addrs(&["0", "1"]))
        );
    }

    #[test]
    fn complement_stypes_depend_only_on_types() {
        use crate::address::completing_antichain;
        let t = systems::parity();
        let c = classify(&t);
        let calc = StypeCalculator::new(&t, &c).unwrap();
        let complement = |a: &Address, b: &Address| -> Vec<Address> {
            completing_antichain(&[a.clone(), b.clone()])
                .unwrap()
                .addresses()
                .iter()
                .filter(|x| *x != a && *x != b)
                .cloned()
                .collect()
        };
        // All depth-2 addresses share one label, so every incomparable pair
        // of them must give the same complement s-type.
        let depth2 = Address::root().extensions_to_depth(2);
        let mut seen: Option<SType> = None;
        for a in &depth2 {
            for b in &depth2 {
                if !a.incomparable(b) {
                    continue;
                }
                let s = calc.stype_of(&t, &complement(a, b));
                match &seen {
                    None => seen = Some(s),
                    Some(prev) => assert!(stype_equal(prev, &s), "{a} {b}"),
                }
            }
        }
    }
}
