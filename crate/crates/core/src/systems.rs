//! A small gallery of named type systems used throughout the tests and docs.
//!
//! Each constructor returns a validated [`TypeSystem`]; the names describe
//! the partition the system induces on addresses.

use crate::diagram::{validate, LabelDiagram, TypeSystem};

fn system(root: &str, rules: &[(&str, &str, &str)]) -> TypeSystem {
    validate(LabelDiagram::build(root, rules).expect("fixture parses")).expect("fixture is reduced")
}

/// Two labels tracking the parity of the address length: `A` holds the
/// even-length addresses and `B` the odd-length ones.
pub fn parity() -> TypeSystem {
    system("A", &[("A", "B", "B"), ("B", "A", "A")])
}

/// `A` holds exactly the all-zero addresses, i.e. the prefixes of the point
/// `000…`; every other address is `B`. Its stabilizer is the stabilizer of
/// that single point.
pub fn point_zero() -> TypeSystem {
    system("A", &[("A", "A", "B"), ("B", "B", "B")])
}

/// Splits Cantor space into the three clopen blocks below `0`, `10` and
/// `11`: three one-label nuclei `Q`, `R`, `S` under a finite ramp.
pub fn three_blocks() -> TypeSystem {
    system(
        "A",
        &[
            ("A", "Q", "B"),
            ("B", "R", "S"),
            ("Q", "Q", "Q"),
            ("R", "R", "R"),
            ("S", "S", "S"),
        ],
    )
}

/// Stabilizes the two-point orbit `{010101…, 101010…}`: the labels `B` and
/// `C` follow the alternating tails and `R` absorbs everything else.
pub fn two_points() -> TypeSystem {
    system(
        "A",
        &[
            ("A", "B", "C"),
            ("B", "R", "C"),
            ("C", "B", "R"),
            ("R", "R", "R"),
        ],
    )
}

/// Tracks the tail set in which every maximal run of zeros has even length;
/// the transient pair `{A, B}` both branch back into themselves.
pub fn even_runs() -> TypeSystem {
    system("A", &[("A", "B", "A"), ("B", "A", "R"), ("R", "R", "R")])
}

/// The four-label quotient rule of the Higman–Thompson group of arity five:
/// label `i > 1` sends `0` to `1` and `1` to `i - 1`, while label `1` wraps
/// around to `4`.
pub fn higman5() -> TypeSystem {
    system(
        "1",
        &[
            ("1", "4", "1"),
            ("2", "1", "1"),
            ("3", "1", "2"),
            ("4", "1", "3"),
        ],
    )
}

/// A five-label simple system whose type semigroup is the group Z3 x Z3 and
/// whose diagram has no nontrivial symmetry.
pub fn simple_z3z3() -> TypeSystem {
    system(
        "A",
        &[
            ("A", "B", "C"),
            ("B", "D", "C"),
            ("C", "B", "E"),
            ("D", "C", "A"),
            ("E", "A", "B"),
        ],
    )
}

/// A three-label simple system whose type semigroup is infinite cyclic, so
/// the associated invariants have free rank one.
pub fn free_rank_one() -> TypeSystem {
    system("A", &[("A", "A", "B"), ("B", "A", "C"), ("C", "B", "C")])
}

/// The one-label system identifying all addresses.
pub fn universal() -> TypeSystem {
    system("Z", &[("Z", "Z", "Z")])
}

/// All named example systems, for sweep-style tests.
pub fn gallery() -> Vec<(&'static str, TypeSystem)> {
    vec![
        ("parity", parity()),
        ("point_zero", point_zero()),
        ("three_blocks", three_blocks()),
        ("two_points", two_points()),
        ("even_runs", even_runs()),
        ("higman5", higman5()),
        ("simple_z3z3", simple_z3z3()),
        ("free_rank_one", free_rank_one()),
    ]
}
