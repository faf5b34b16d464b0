//! Property checks shared by the integration and acceptance targets.
#![allow(dead_code)]

use rand::Rng;
use sqtop_core::cohomology::{cup, Cochain, CohomologyBasis};
use sqtop_core::linalg::BitVector;
use sqtop_core::steenrod::{sq1_cochain_special, sq_cochain};
use sqtop_core::SimplicialComplex;

pub fn random_cochain<'a>(rng: &mut impl Rng, k: &'a SimplicialComplex, j: isize) -> Cochain<'a> {
    let bits: Vec<bool> = (0..k.num_faces(j)).map(|_| rng.gen_bool(0.5)).collect();
    Cochain::from_coefficients(k, j, BitVector::from_bits(&bits)).unwrap()
}

/// A random combination of basis representatives plus a random coboundary.
pub fn random_cocycle<'a>(rng: &mut impl Rng, basis: &CohomologyBasis<'a>, j: isize) -> Cochain<'a> {
    let k = basis.complex();
    let mut z = Cochain::zero(k, j);
    for r in basis.representatives(j) {
        if rng.gen_bool(0.5) {
            z = z.add(&r).unwrap();
        }
    }
    if j >= 1 {
        z = z.add(&random_cochain(rng, k, j - 1).coboundary()).unwrap();
    }
    z
}

fn class(basis: &CohomologyBasis<'_>, c: &Cochain<'_>) -> Result<BitVector, String> {
    basis.reduce(c).map_err(|e| format!("reduce failed in degree {}: {e}", c.degree()))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs the Steenrod property suite on one complex and returns the number of checks.
pub fn steenrod_properties(k: &SimplicialComplex, rng: &mut impl Rng) -> Result<usize, String> {
    let basis = CohomologyBasis::new(k, true);
    let dim = k.dimension();
    let mut checks = 0;
    for j in 0..=dim {
        // cochain-level identities on arbitrary cochains
        let c = random_cochain(rng, k, j);
        ensure(sq1_cochain_special(&c) == sq_cochain(&c, 1), || format!("special Sq^1 differs, j={j}"))?;
        ensure(sq_cochain(&c, 0) == c, || format!("Sq^0 is not the identity, j={j}"))?;
        let mask = rng.gen_range(1..=sqtop_core::complex::full_mask(k.num_vertices()));
        let sub = k.full_subcomplex_mask(mask);
        for n in 0..=2 {
            let lhs = sq_cochain(&c, n).restrict(&sub, mask).unwrap();
            let rhs = sq_cochain(&c.restrict(&sub, mask).unwrap(), n);
            ensure(lhs == rhs, || format!("naturality fails, j={j} n={n} J={mask:#b}"))?;
        }
        checks += 4;

        let z = random_cocycle(rng, &basis, j);
        let z2 = z.add(&random_cocycle(rng, &basis, j)).unwrap();
        let b = if j >= 1 { random_cochain(rng, k, j - 1).coboundary() } else { Cochain::zero(k, j) };
        for n in 0..=(dim - j + 1).max(0) as usize {
            let sz = sq_cochain(&z, n);
            ensure(sz.is_cocycle(), || format!("Sq^{n} of a cocycle is not a cocycle, j={j}"))?;
            let shifted = sq_cochain(&z.add(&b).unwrap(), n);
            ensure(class(&basis, &shifted)? == class(&basis, &sz)?, || format!("Sq^{n} not well defined, j={j}"))?;
            // additivity on cohomology
            let sum = sq_cochain(&z.add(&z2).unwrap(), n);
            let parts = sz.add(&sq_cochain(&z2, n)).unwrap();
            ensure(class(&basis, &sum)? == class(&basis, &parts)?, || format!("Sq^{n} not additive, j={j}"))?;
            if n as isize > j {
                ensure(class(&basis, &sz)?.is_zero(), || format!("instability fails, n={n} j={j}"))?;
            }
            checks += 3;
        }
        let sq_j = sq_cochain(&z, j as usize);
        let square = cup(&z, &z).unwrap();
        ensure(class(&basis, &sq_j)? == class(&basis, &square)?, || format!("Sq^j is not the cup square, j={j}"))?;
        let twice = sq_cochain(&sq_cochain(&z, 1), 1);
        ensure(class(&basis, &twice)?.is_zero(), || format!("Sq^1 Sq^1 nonzero, j={j}"))?;
        checks += 2;

        // Cartan formula on classes
        for q in 0..=dim - j {
            let w = random_cocycle(rng, &basis, q);
            let prod = cup(&z, &w).unwrap();
            for n in 0..=(dim - j - q).max(0) as usize {
                let lhs = sq_cochain(&prod, n);
                let mut rhs = Cochain::zero(k, j + q + n as isize);
                for i in 0..=n {
                    rhs = rhs.add(&cup(&sq_cochain(&z, i), &sq_cochain(&w, n - i)).unwrap()).unwrap();
                }
                ensure(class(&basis, &lhs)? == class(&basis, &rhs)?, || format!("Cartan fails, n={n} j={j} q={q}"))?;
                checks += 1;
            }
        }
    }
    Ok(checks)
}
