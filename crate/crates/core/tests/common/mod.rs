#![allow(dead_code)]

use std::sync::Arc;

use fuchsian_core::{FuchsianGroup, LorentzVector, NormalFamily, SupportVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn octagon() -> Arc<FuchsianGroup> {
    Arc::new(FuchsianGroup::octagon())
}

pub fn point(dir: [f64; 2], dist: f64) -> LorentzVector {
    LorentzVector::hyperboloid_point(&dir, dist).unwrap()
}

/// Three normals in general position inside the origin's Dirichlet region.
pub fn three_orbit_family() -> NormalFamily {
    NormalFamily::new(octagon(), vec![point([1.0, 0.0], 0.0), point([1.0, 0.35], 0.55), point([-0.3, 1.0], 0.8)])
        .unwrap()
}

pub fn single_orbit_octagon() -> NormalFamily {
    NormalFamily::new(octagon(), vec![LorentzVector::origin(2)]).unwrap()
}

pub fn boost_family(ell: f64) -> NormalFamily {
    NormalFamily::new(Arc::new(FuchsianGroup::boost(ell).unwrap()), vec![LorentzVector::origin(1)]).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Support vector with entries in `[lo, hi]`.
pub fn random_support(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> SupportVector {
    SupportVector::new((0..n).map(|_| rng.random_range(lo..hi)).collect()).unwrap()
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

pub fn class_member(
    class: &fuchsian_core::covolume::SimpleClass,
    base: &SupportVector,
    spread: f64,
    rng: &mut ChaCha8Rng,
) -> SupportVector {
    class.sample_member(base, spread, rng).unwrap()
}

pub fn simple_class() -> (fuchsian_core::covolume::SimpleClass, SupportVector) {
    let base = SupportVector::ones(3);
    let p = fuchsian_core::polyhedra::build(&three_orbit_family(), &base).unwrap();
    (fuchsian_core::covolume::SimpleClass::new(&p).unwrap(), base)
}
