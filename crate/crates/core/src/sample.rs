//! Seeded random generators for property suites: cone antichains, prefix
//! substitution maps, cone subdivisions, and type-preserving elements.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::address::{Address, ConeAntichain, ConePartition};
use crate::diagram::TypeSystem;
use crate::element::PrefixMap;
use crate::membership::fix_transpositions_at_depth;

/// A fixed-seed generator; the same seed always yields the same stream.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A complete antichain made by `splits` random leaf splits from the root,
/// so it has `splits` + 1 cones.
pub fn random_antichain(rng: &mut ChaCha8Rng, splits: usize) -> ConeAntichain {
    let mut leaves = vec![Address::root()];
    for _ in 0..splits {
        let i = rng.gen_range(0..leaves.len());
        let leaf = leaves.swap_remove(i);
        leaves.push(leaf.child(0));
        leaves.push(leaf.child(1));
    }
    leaves.sort();
    ConeAntichain::new(leaves).expect("leaf splitting keeps cones incomparable")
}

/// A random element: two independent antichains of `splits` + 1 cones with
/// a uniformly random pairing between them.
pub fn random_element(rng: &mut ChaCha8Rng, splits: usize) -> PrefixMap {
    let domain = random_antichain(rng, splits);
    let range = random_antichain(rng, splits);
    let mut images: Vec<Address> = range.addresses().to_vec();
    images.shuffle(rng);
    let pairs = domain.addresses().iter().cloned().zip(images).collect();
    PrefixMap::new(pairs).expect("two complete antichains of equal size")
}

/// A refinement of `start` made by `splits` further random leaf splits.
pub fn random_subdivision(
    rng: &mut ChaCha8Rng,
    start: &ConePartition,
    splits: usize,
) -> ConePartition {
    let mut leaves: Vec<Address> = start.addresses().to_vec();
    for _ in 0..splits {
        let i = rng.gen_range(0..leaves.len());
        let leaf = leaves.swap_remove(i);
        leaves.push(leaf.child(0));
        leaves.push(leaf.child(1));
    }
    leaves.sort();
    ConePartition::new(leaves).expect("leaf splitting keeps the cover complete")
}

/// A product of `factors` random type-preserving cone transpositions drawn
/// at the given depth. Identity when no transposition exists there.
pub fn random_fix_product(
    t: &TypeSystem,
    rng: &mut ChaCha8Rng,
    depth: usize,
    factors: usize,
) -> PrefixMap {
    let pool = fix_transpositions_at_depth(t, depth);
    let mut g = PrefixMap::identity();
    if pool.is_empty() {
        return g;
    }
    for _ in 0..factors {
        let pick = &pool[rng.gen_range(0..pool.len())];
        g = g.compose(pick);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::membership::in_fix;
    use crate::systems;

    #[test]
    fn seeding_is_reproducible() {
        let a = random_element(&mut seeded(42), 5);
        let b = random_element(&mut seeded(42), 5);
        assert_eq!(a, b);
        let c = random_element(&mut seeded(43), 5);
        assert_ne!(a, c);
    }

    #[test]
    fn antichains_are_complete_with_the_requested_size() {
        let mut rng = seeded(7);
        for splits in [0, 1, 5, 12] {
            let ac = random_antichain(&mut rng, splits);
            assert_eq!(ac.len(), splits + 1);
            assert!(ac.is_complete());
        }
    }

    #[test]
    fn elements_are_well_formed() {
        let mut rng = seeded(9);
        for _ in 0..50 {
            let g = random_element(&mut rng, 6);
            let h = g.compose(&g.inverse());
            assert!(h.is_identity());
        }
    }

    #[test]
    fn subdivisions_refine_their_start() {
        let mut rng = seeded(11);
        let start = random_subdivision(&mut rng, &ConePartition::root(), 4);
        let finer = random_subdivision(&mut rng, &start, 5);
        assert_eq!(finer.len(), start.len() + 5);
        for a in finer.addresses() {
            assert!(start.cone_containing(a).is_some(), "{a} has no parent cone");
        }
    }

    #[test]
    fn fix_products_stay_in_fix() {
        let mut rng = seeded(13);
        for t in [
            systems::parity(),
            systems::point_zero(),
            systems::three_blocks(),
        ] {
            for _ in 0..20 {
                let g = random_fix_product(&t, &mut rng, 3, 4);
                assert!(in_fix(&t, &g));
            }
        }
    }

    #[test]
    fn fix_products_degrade_to_identity_without_generators() {
        // At depth 1 the two labels of this system differ, so no cone
        // transposition preserves types.
        let t = systems::point_zero();
        let g = random_fix_product(&t, &mut seeded(17), 1, 10);
        assert!(g.is_identity());
    }
}
