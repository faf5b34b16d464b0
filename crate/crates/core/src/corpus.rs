//! Seeded random complexes for property checks and corpus verification.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{Simplex, SimplicialComplex};
use crate::registry;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random complex on `m` vertices: between 1 and `2m` random facets of size
/// `1..=max_facet`. Ghost vertices can occur.
pub fn random_complex(rng: &mut impl Rng, m: usize, max_facet: usize) -> SimplicialComplex {
    let max_facet = max_facet.clamp(1, m.max(1));
    let count = rng.gen_range(1..=2 * m.max(1));
    let verts: Vec<usize> = (1..=m).collect();
    let facets: Vec<Simplex> = (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=max_facet);
            verts
                .choose_multiple(rng, size.min(m))
                .fold(Simplex::EMPTY, |acc, &v| acc.with(v))
        })
        .collect();
    SimplicialComplex::from_facet_simplices(m, facets).expect("vertices in range")
}

/// A random complex with `4 ≤ m ≤ max_m` vertices, biased toward 2- and
/// 3-dimensional faces so that products and squares have room to be nonzero.
pub fn random_small_complex(rng: &mut impl Rng, max_m: usize) -> SimplicialComplex {
    let m = rng.gen_range(4..=max_m.max(4));
    random_complex(rng, m, 4)
}

/// A random complex that contains P²₆ as the full subcomplex on `1..=6`,
/// with `extra` further vertices.
pub fn with_planted_p26(rng: &mut impl Rng, extra: usize) -> SimplicialComplex {
    let m = 6 + extra;
    let mut facets: Vec<Simplex> = registry::p26().facets().to_vec();
    for v in 7..=m {
        // Cone the new vertex over a few P26 faces and previous new vertices.
        let count = rng.gen_range(1..=4);
        for _ in 0..count {
            let base = *registry::p26().faces(rng.gen_range(0..=1)).choose(rng).expect("nonempty");
            let mut f = base.with(v);
            if v > 7 && rng.gen_bool(0.5) {
                f = f.with(rng.gen_range(7..v));
            }
            facets.push(f);
        }
    }
    SimplicialComplex::from_facet_simplices(m, facets).expect("vertices in range")
}

/// Named connected complexes used for splitting-theorem checks.
pub fn connected_bases() -> Vec<(String, SimplicialComplex)> {
    let mut out: Vec<(String, SimplicialComplex)> =
        (3..=6).map(|n| (format!("cycle:{n}"), registry::cycle(n))).collect();
    out.push(("P26".into(), registry::p26()));
    out.push(("boundary:2".into(), registry::boundary(2)));
    out.push(("boundary:3".into(), registry::boundary(3)));
    out
}

/// Named substituents: points(1..3), cycle(3..5), simplex(0..2).
pub fn substituents() -> Vec<(String, SimplicialComplex)> {
    let mut out: Vec<(String, SimplicialComplex)> =
        (1..=3).map(|k| (format!("points:{k}"), registry::points(k))).collect();
    out.extend((3..=5).map(|n| (format!("cycle:{n}"), registry::cycle(n))));
    out.extend((0..=2).map(|n| (format!("simplex:{n}"), registry::simplex(n))));
    out
}
