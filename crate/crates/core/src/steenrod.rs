//! Cochain-level Steenrod squares over GF(2).
//!
//! For `c ∈ C^j(K)` and a `(j+n)`-simplex `s = [z_0, …, z_{j+n}]`,
//!
//! ```text
//! Sq^n(c)(s) = Σ_{(U,V)} c(s ∖ U) · c(s ∖ V)
//! ```
//!
//! where `s ∖ W` deletes the vertices at the 0-based positions in `W`, and the
//! sum runs over disjoint increasing `n`-tuples `U, V ⊆ {0, …, j+n}` such that
//! every `u ∈ U` has 1-based position in `U ∪ V` congruent to `u` mod 2 and
//! every `v ∈ V` has position not congruent to `v`.
//!
//! [`sq_cochain`] evaluates this simplex by simplex. [`sq_cochain_pasting`]
//! evaluates the same operation generator by generator (pairs of duals pasted
//! along a common simplex) and serves as an independent check.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::cohomology::{expand_mask, CohomologyBasis, Cochain};
use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{BitMatrix, BitVector};

/// Position sets `(U, V)` of one summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexPair {
    pub u: Vec<usize>,
    pub v: Vec<usize>,
}

impl IndexPair {
    fn position_masks(&self) -> (u64, u64) {
        let mask = |w: &[usize]| w.iter().fold(0u64, |acc, &i| acc | 1 << i);
        (mask(&self.u), mask(&self.v))
    }
}

/// 1-based position of `a` in the increasing sequence `b`.
pub fn pos(b: &[usize], a: usize) -> Option<usize> {
    b.iter().position(|&x| x == a).map(|i| i + 1)
}

/// All admissible `(U, V)` over the ground set `{0, …, j+n}`.
///
/// The parity condition fixes, for every `2n`-subset `W = U ∪ V`, which
/// elements go to `U`; so the pairs are listed in lexicographic order of `W`.
pub fn admissible_index_pairs(n: usize, j: usize) -> Vec<IndexPair> {
    let ground = j + n + 1;
    let mut out = Vec::new();
    if 2 * n > ground {
        return out;
    }
    let mut w: Vec<usize> = (0..2 * n).collect();
    loop {
        let mut u = Vec::with_capacity(n);
        let mut v = Vec::with_capacity(n);
        for (i, &x) in w.iter().enumerate() {
            if (i + 1) % 2 == x % 2 {
                u.push(x);
            } else {
                v.push(x);
            }
        }
        if u.len() == n {
            out.push(IndexPair { u, v });
        }
        if !next_combination(&mut w, ground) {
            break;
        }
    }
    out
}

/// Advances an increasing k-subset of `0..ground` in lexicographic order.
fn next_combination(w: &mut [usize], ground: usize) -> bool {
    let k = w.len();
    for i in (0..k).rev() {
        if w[i] < ground - k + i {
            w[i] += 1;
            for t in i + 1..k {
                w[t] = w[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// `Sq^n(c)`, evaluated over the `(j+n)`-simplices of the complex.
///
/// Degrees beyond the dimension give the zero cochain. On a degree −1 cochain
/// only `Sq^0` is nonzero.
pub fn sq_cochain<'a>(c: &Cochain<'a>, n: usize) -> Cochain<'a> {
    sq_cochain_with(c, n, Execution::Sequential)
}

pub fn sq_cochain_with<'a>(c: &Cochain<'a>, n: usize, exec: Execution) -> Cochain<'a> {
    let k = c.complex();
    let j = c.degree();
    let target = j + n as isize;
    if j < 0 {
        return if n == 0 { c.clone() } else { Cochain::zero(k, target) };
    }
    let pairs: Vec<(u64, u64)> = admissible_index_pairs(n, j as usize)
        .iter()
        .map(IndexPair::position_masks)
        .collect();
    let faces = k.faces(target);
    let coeffs = c.coefficients();
    let value = |s: u64, positions: u64| -> bool {
        let face = Simplex::from_mask(s ^ expand_mask(positions, s));
        k.face_index(face).is_some_and(|i| coeffs.get(i))
    };
    let eval = |s: &Simplex| -> bool {
        let s = s.mask();
        pairs
            .iter()
            .fold(false, |acc, &(u, v)| acc ^ (value(s, u) && value(s, v)))
    };
    let bits = if exec.is_parallel() && faces.len() > 256 {
        exec.map(faces, eval)
    } else {
        faces.iter().map(eval).collect()
    };
    let out = BitVector::from_bits(&bits);
    Cochain::from_coefficients(k, target, out).expect("length matches face count")
}

/// `Sq^n(c)` as the sum of pasting functions `f_{U,V}(x, y)` over ordered pairs
/// of generators `x, y` in the support of `c`. A pasted simplex that is not a
/// face of the complex contributes nothing.
pub fn sq_cochain_pasting<'a>(c: &Cochain<'a>, n: usize) -> Cochain<'a> {
    let k = c.complex();
    let j = c.degree();
    let target = j + n as isize;
    if j < 0 {
        return if n == 0 { c.clone() } else { Cochain::zero(k, target) };
    }
    let admissible: HashSet<(u64, u64)> = admissible_index_pairs(n, j as usize)
        .iter()
        .map(IndexPair::position_masks)
        .collect();
    let support = c.support();
    let mut out = Cochain::zero(k, target);
    let mut coeffs = out.coefficients().clone();
    let want = (j as usize) + n + 1;
    for x in &support {
        for y in &support {
            let s = x.union(*y);
            if s.len() != want {
                continue;
            }
            let Some(idx) = k.face_index(s) else { continue };
            let v = crate::complex::compress_mask(s.mask() & !x.mask(), s.mask());
            let u = crate::complex::compress_mask(s.mask() & !y.mask(), s.mask());
            if admissible.contains(&(u, v)) {
                coeffs.flip(idx);
            }
        }
    }
    out = Cochain::from_coefficients(k, target, coeffs).expect("length matches face count");
    out
}

/// `Sq^1(c)(s) = Σ_{0 ≤ u < v ≤ j+1, u+v even} c(∂_u s) · c(∂_v s)`.
pub fn sq1_cochain_special<'a>(c: &Cochain<'a>) -> Cochain<'a> {
    let k = c.complex();
    let j = c.degree();
    if j < 0 {
        return Cochain::zero(k, j + 1);
    }
    let faces = k.faces(j + 1);
    let top = (j + 1) as usize;
    let mut out = BitVector::zeros(faces.len());
    for (r, s) in faces.iter().enumerate() {
        let mut acc = false;
        for u in 0..=top {
            for v in (u + 2..=top).step_by(2) {
                acc ^= c.value(s.delete_positions(&[u])) && c.value(s.delete_positions(&[v]));
            }
        }
        if acc {
            out.set(r, true);
        }
    }
    Cochain::from_coefficients(k, j + 1, out).expect("length matches face count")
}

/// Matrix of `Sq^n: H^j → H^{j+n}` in the bases of a [`CohomologyBasis`];
/// column `i` is the image of representative `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteenrodMatrix {
    pub n: usize,
    pub source_degree: isize,
    pub matrix: BitMatrix,
}

impl SteenrodMatrix {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn target_degree(&self) -> isize {
        self.source_degree + self.n as isize
    }
}

pub fn sq_matrix(basis: &CohomologyBasis<'_>, n: usize, j: isize) -> Result<SteenrodMatrix> {
    let reps = basis.representatives(j);
    let target = j + n as isize;
    let rows = basis.dim(target);
    let mut columns = Vec::with_capacity(reps.len());
    for rep in &reps {
        let image = sq_cochain(rep, n);
        if !image.is_cocycle() {
            return Err(Error::ImageNotCocycle { n, degree: j });
        }
        let coords = match basis.reduce(&image) {
            Ok(c) => c,
            Err(Error::NotACocycle(_)) => return Err(Error::ImageNotCocycle { n, degree: j }),
            Err(e) => return Err(e),
        };
        columns.push(if coords.len() == rows { coords } else { BitVector::zeros(rows) });
    }
    Ok(SteenrodMatrix { n, source_degree: j, matrix: BitMatrix::from_columns(rows, &columns)? })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ProfileEntry {
    pub n: usize,
    pub degree: isize,
    pub rank: usize,
}

/// Nonzero `Sq^n` on cohomology, keyed by `(n, source degree)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SteenrodProfile {
    ranks: BTreeMap<(usize, isize), usize>,
}

impl SteenrodProfile {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `rank` at `(n, degree)`; ranks of direct summands add up.
    pub fn add(&mut self, n: usize, degree: isize, rank: usize) {
        if rank > 0 {
            *self.ranks.entry((n, degree)).or_insert(0) += rank;
        }
    }

    pub fn merge(&mut self, other: &SteenrodProfile) {
        for e in other.entries() {
            self.add(e.n, e.degree, e.rank);
        }
    }

    pub fn shifted(&self, by: isize) -> SteenrodProfile {
        SteenrodProfile { ranks: self.ranks.iter().map(|(&(n, d), &r)| ((n, d + by), r)).collect() }
    }

    pub fn entries(&self) -> Vec<ProfileEntry> {
        self.ranks.iter().map(|(&(n, degree), &rank)| ProfileEntry { n, degree, rank }).collect()
    }

    pub fn rank(&self, n: usize, degree: isize) -> usize {
        self.ranks.get(&(n, degree)).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn has_operation(&self, n: usize) -> bool {
        self.ranks.keys().any(|&(m, _)| m == n)
    }

    /// Every `(n, degree)` of `other` is present here with at least its rank.
    pub fn dominates(&self, other: &SteenrodProfile) -> bool {
        other.ranks.iter().all(|(key, &r)| self.ranks.get(key).is_some_and(|&s| s >= r))
    }

    pub fn from_entries(entries: impl IntoIterator<Item = ProfileEntry>) -> Self {
        let mut p = Self::new();
        for e in entries {
            p.add(e.n, e.degree, e.rank);
        }
        p
    }
}

/// All nonzero `Sq^n: H^j → H^{j+n}` with `1 ≤ n ≤ j`.
pub fn sq_profile(k: &SimplicialComplex) -> Result<SteenrodProfile> {
    sq_profile_ops(k, |_| true)
}

/// As [`sq_profile`], restricted to operations selected by `keep`.
pub fn sq_profile_ops(k: &SimplicialComplex, keep: impl Fn(usize) -> bool) -> Result<SteenrodProfile> {
    let basis = CohomologyBasis::new(k, true);
    profile_from_basis(&basis, keep)
}

pub(crate) fn profile_from_basis(basis: &CohomologyBasis<'_>, keep: impl Fn(usize) -> bool) -> Result<SteenrodProfile> {
    let dim = basis.complex().dimension();
    let mut profile = SteenrodProfile::new();
    for j in 1..=dim {
        if basis.dim(j) == 0 {
            continue;
        }
        for n in 1..=j as usize {
            let target = j + n as isize;
            if target > dim || basis.dim(target) == 0 || !keep(n) {
                continue;
            }
            profile.add(n, j, sq_matrix(basis, n, j)?.rank());
        }
    }
    Ok(profile)
}

/// Matrices of every `Sq^n: H̃^j → H̃^{j+n}` for `j ≥ −1`, `n ≥ 0`, keyed by `(n, j)`.
/// Used to assemble the action on joins.
pub(crate) fn all_sq_matrices(basis: &CohomologyBasis<'_>) -> Result<BTreeMap<(usize, isize), BitMatrix>> {
    let dim = basis.complex().dimension();
    let mut out = BTreeMap::new();
    for j in -1..=dim {
        for target in j..=dim {
            let n = (target - j) as usize;
            let m = if j < 0 || n as isize > j {
                // Sq^0 is the identity; Sq^n vanishes above the degree.
                if n == 0 {
                    BitMatrix::identity(basis.dim(j))
                } else {
                    BitMatrix::zeros(basis.dim(target), basis.dim(j))
                }
            } else {
                sq_matrix(basis, n, j)?.matrix
            };
            out.insert((n, j), m);
        }
    }
    Ok(out)
}
