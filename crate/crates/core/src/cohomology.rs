//! Simplicial cochains over GF(2), Betti numbers, explicit cohomology bases
//! and the Alexander–Whitney cup product.
//!
//! Reduced cohomology uses the augmented cochain complex: degree −1 is the
//! one-dimensional dual of the empty face, and `δ^{-1}` sends it to the sum
//! of all vertex duals. This makes `H̃^{-1}({∅}) = F_2` fall out of the same
//! rank computation as every other degree.

use std::collections::BTreeMap;
use std::fmt;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{quotient_basis, solve_in_span, BitMatrix, BitVector, QuotientBasis};

/// Degree → dimension, nonzero entries only.
pub type BettiMap = BTreeMap<isize, usize>;

/// A GF(2) cochain: coefficients indexed by `K.faces(degree)` in canonical order.
#[derive(Clone)]
pub struct Cochain<'a> {
    complex: &'a SimplicialComplex,
    degree: isize,
    coeffs: BitVector,
}

fn same_complex(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    std::ptr::eq(a, b) || a == b
}

impl<'a> Cochain<'a> {
    pub fn zero(complex: &'a SimplicialComplex, degree: isize) -> Self {
        let len = complex.num_faces(degree);
        Cochain { complex, degree, coeffs: BitVector::zeros(len) }
    }

    pub fn from_coefficients(complex: &'a SimplicialComplex, degree: isize, coeffs: BitVector) -> Result<Self> {
        let expected = complex.num_faces(degree);
        if coeffs.len() != expected {
            return Err(Error::LengthMismatch { expected, got: coeffs.len() });
        }
        Ok(Cochain { complex, degree, coeffs })
    }

    /// The dual `[σ]*` of a face.
    pub fn dual(complex: &'a SimplicialComplex, s: Simplex) -> Result<Self> {
        Self::from_simplices(complex, s.dim(), &[s])
    }

    /// Sum of duals; repeated simplices cancel. Every simplex must be a face of
    /// dimension `degree`.
    pub fn from_simplices(complex: &'a SimplicialComplex, degree: isize, simplices: &[Simplex]) -> Result<Self> {
        let mut c = Self::zero(complex, degree);
        for &s in simplices {
            if s.dim() != degree {
                return Err(Error::MixedDegrees(degree, s.dim()));
            }
            let i = complex.face_index(s).ok_or(Error::NotAFace(s))?;
            c.coeffs.flip(i);
        }
        Ok(c)
    }

    /// Sum of duals of vertex lists, inferring the degree from the first entry.
    pub fn from_vertex_lists<V: AsRef<[usize]>>(complex: &'a SimplicialComplex, lists: &[V]) -> Result<Self> {
        let simplices = lists
            .iter()
            .map(|l| Simplex::from_vertices(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let degree = simplices.first().map_or(0, |s| s.dim());
        Self::from_simplices(complex, degree, &simplices)
    }

    pub fn complex(&self) -> &'a SimplicialComplex {
        self.complex
    }

    pub fn degree(&self) -> isize {
        self.degree
    }

    pub fn coefficients(&self) -> &BitVector {
        &self.coeffs
    }

    pub fn into_coefficients(self) -> BitVector {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// Coefficient on a simplex (zero for non-faces and other degrees).
    pub fn value(&self, s: Simplex) -> bool {
        s.dim() == self.degree && self.complex.face_index(s).is_some_and(|i| self.coeffs.get(i))
    }

    /// Simplices with coefficient one, in canonical order.
    pub fn support(&self) -> Vec<Simplex> {
        let faces = self.complex.faces(self.degree);
        self.coeffs.ones().map(|i| faces[i]).collect()
    }

    pub fn add(&self, other: &Cochain<'_>) -> Result<Cochain<'a>> {
        if !same_complex(self.complex, other.complex) {
            return Err(Error::ComplexMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::MixedDegrees(self.degree, other.degree));
        }
        Ok(Cochain { complex: self.complex, degree: self.degree, coeffs: self.coeffs.xor(&other.coeffs) })
    }

    /// `δc`; for degree −1 this is the augmentation.
    pub fn coboundary(&self) -> Cochain<'a> {
        let k = self.complex;
        let up = k.faces(self.degree + 1);
        let mut out = BitVector::zeros(up.len());
        for (r, s) in up.iter().enumerate() {
            let mut parity = false;
            for v in s.vertices() {
                if let Some(i) = k.face_index(s.without(v)) {
                    parity ^= self.coeffs.get(i);
                }
            }
            if parity {
                out.set(r, true);
            }
        }
        Cochain { complex: k, degree: self.degree + 1, coeffs: out }
    }

    pub fn is_cocycle(&self) -> bool {
        self.coboundary().is_zero()
    }

    /// Membership in the image of `δ` (augmented complex in degree 0).
    pub fn is_coboundary(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        if self.degree < 0 {
            return false;
        }
        let images = coboundary_images(self.complex, self.degree - 1);
        matches!(solve_in_span(&images, &self.coeffs), Ok(Some(_)))
    }

    /// Restriction to the full subcomplex on `subset`. `sub` must be
    /// `self.complex().full_subcomplex_mask(subset)`.
    pub fn restrict<'b>(&self, sub: &'b SimplicialComplex, subset: u64) -> Result<Cochain<'b>> {
        if sub.num_vertices() != subset.count_ones() as usize {
            return Err(Error::ComplexMismatch);
        }
        let mut out = Cochain::zero(sub, self.degree);
        for (i, s) in sub.faces(self.degree).iter().enumerate() {
            let lifted = Simplex::from_mask(expand_mask(s.mask(), subset));
            match self.complex.face_index(lifted) {
                Some(idx) => {
                    if self.coeffs.get(idx) {
                        out.coeffs.set(i, true);
                    }
                }
                None => return Err(Error::ComplexMismatch),
            }
        }
        Ok(out)
    }
}

impl PartialEq for Cochain<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.coeffs == other.coeffs && same_complex(self.complex, other.complex)
    }
}

impl Eq for Cochain<'_> {}

impl fmt::Display for Cochain<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let support = self.support();
        if support.is_empty() {
            return f.write_str("0");
        }
        for (i, s) in support.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{s}*")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cochain<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain(deg {}: {})", self.degree, self)
    }
}

/// Inverse of [`compress_mask`](crate::complex::compress_mask): spreads the low
/// bits of `compact` over the set bits of `support`.
pub fn expand_mask(compact: u64, support: u64) -> u64 {
    let mut out = 0u64;
    let mut rest = support;
    let mut k = 0;
    while rest != 0 {
        let bit = rest & rest.wrapping_neg();
        if compact >> k & 1 == 1 {
            out |= bit;
        }
        rest ^= bit;
        k += 1;
    }
    out
}

/// Matrix of `δ: C^j → C^{j+1}`: rows are `(j+1)`-faces, columns `j`-faces.
/// In reduced mode `j = −1` gives the all-ones augmentation column; in
/// unreduced mode `C^{-1} = 0`.
pub fn coboundary_matrix(k: &SimplicialComplex, j: isize, reduced: bool) -> BitMatrix {
    if j < -1 || (j == -1 && !reduced) {
        return BitMatrix::zeros(k.num_faces(j + 1), 0);
    }
    let cols = k.num_faces(j);
    let rows = k
        .faces(j + 1)
        .iter()
        .map(|s| {
            BitVector::from_indices(cols, s.vertices().filter_map(|v| k.face_index(s.without(v))))
        })
        .collect();
    BitMatrix::from_rows(cols, rows).expect("row lengths match")
}

/// `δ[t]*` for every `j`-face `t`, as vectors over the `(j+1)`-faces.
pub fn coboundary_images(k: &SimplicialComplex, j: isize) -> Vec<BitVector> {
    if j < -1 {
        return Vec::new();
    }
    coboundary_matrix(k, j, true).transpose().rows().to_vec()
}

fn coboundary_ranks(k: &SimplicialComplex, reduced: bool) -> BTreeMap<isize, usize> {
    let lo = if reduced { -1 } else { 0 };
    (lo..=k.dimension())
        .map(|j| (j, coboundary_matrix(k, j, reduced).rank()))
        .collect()
}

/// Betti numbers over GF(2) (reduced or not), nonzero entries only.
pub fn betti(k: &SimplicialComplex, reduced: bool) -> BettiMap {
    let ranks = coboundary_ranks(k, reduced);
    let lo = if reduced { -1 } else { 0 };
    let mut out = BettiMap::new();
    for j in lo..=k.dimension() {
        let dim = k.num_faces(j) - ranks[&j] - ranks.get(&(j - 1)).copied().unwrap_or(0);
        if dim > 0 {
            out.insert(j, dim);
        }
    }
    out
}

/// Per-degree cocycle representatives with a class-reduction map.
#[derive(Clone, Debug)]
pub struct CohomologyBasis<'a> {
    complex: &'a SimplicialComplex,
    reduced: bool,
    lowest: isize,
    degrees: Vec<QuotientBasis>,
}

impl<'a> CohomologyBasis<'a> {
    pub fn new(complex: &'a SimplicialComplex, reduced: bool) -> Self {
        let lowest = if reduced { -1 } else { 0 };
        let degrees = (lowest..=complex.dimension())
            .map(|j| {
                let cocycles = coboundary_matrix(complex, j, reduced).kernel_basis();
                let boundaries = if j > lowest { coboundary_images(complex, j - 1) } else { Vec::new() };
                quotient_basis(&cocycles, &boundaries, complex.num_faces(j)).expect("δδ = 0")
            })
            .collect();
        CohomologyBasis { complex, reduced, lowest, degrees }
    }

    pub fn complex(&self) -> &'a SimplicialComplex {
        self.complex
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    fn degree(&self, j: isize) -> Option<&QuotientBasis> {
        if j < self.lowest {
            return None;
        }
        self.degrees.get((j - self.lowest) as usize)
    }

    pub fn dim(&self, j: isize) -> usize {
        self.degree(j).map_or(0, QuotientBasis::dim)
    }

    pub fn representatives(&self, j: isize) -> Vec<Cochain<'a>> {
        self.degree(j).map_or_else(Vec::new, |q| {
            q.representatives()
                .iter()
                .map(|v| Cochain { complex: self.complex, degree: j, coeffs: v.clone() })
                .collect()
        })
    }

    /// Class coordinates of a cocycle in the representative basis.
    pub fn reduce(&self, c: &Cochain<'_>) -> Result<BitVector> {
        if !same_complex(self.complex, c.complex) {
            return Err(Error::ComplexMismatch);
        }
        match self.degree(c.degree) {
            Some(q) => q.reduce(&c.coeffs)?.ok_or(Error::NotACocycle(c.degree)),
            // Degrees above the dimension: only the zero cochain exists.
            None if c.degree > self.complex.dimension() => Ok(BitVector::zeros(0)),
            None => Err(Error::InvalidDegree(format!("degree {} below the complex", c.degree))),
        }
    }

    pub fn betti(&self) -> BettiMap {
        (self.lowest..=self.complex.dimension())
            .map(|j| (j, self.dim(j)))
            .filter(|&(_, d)| d > 0)
            .collect()
    }
}

pub fn cohomology_basis(k: &SimplicialComplex, reduced: bool) -> CohomologyBasis<'_> {
    CohomologyBasis::new(k, reduced)
}

/// Alexander–Whitney cup product: `(a⌣b)[v_0..v_{p+q}] = a[v_0..v_p]·b[v_p..v_{p+q}]`.
pub fn cup<'a>(a: &Cochain<'a>, b: &Cochain<'_>) -> Result<Cochain<'a>> {
    if !same_complex(a.complex, b.complex) {
        return Err(Error::ComplexMismatch);
    }
    let (p, q) = (a.degree, b.degree);
    if p < 0 || q < 0 {
        return Err(Error::InvalidDegree(format!("cup needs degrees >= 0, got {p} and {q}")));
    }
    let k = a.complex;
    let faces = k.faces(p + q);
    let mut out = BitVector::zeros(faces.len());
    let mut verts = Vec::with_capacity((p + q + 1) as usize);
    for (r, s) in faces.iter().enumerate() {
        verts.clear();
        verts.extend(s.vertices());
        let front = verts[..=p as usize].iter().fold(Simplex::EMPTY, |acc, &v| acc.with(v));
        let back = verts[p as usize..].iter().fold(Simplex::EMPTY, |acc, &v| acc.with(v));
        if a.value(front) && b.value(back) {
            out.set(r, true);
        }
    }
    Ok(Cochain { complex: k, degree: p + q, coeffs: out })
}
