//! The Stanley–Reisner face ring `F_2[K] = F_2[x_1, …, x_m] / I_K` with the
//! Steenrod action determined by `Sq(x_i) = x_i + x_i^2`.
//!
//! Generators have topological degree `d ∈ {1, 2}`; every degree in this
//! module's interface is topological, i.e. `d` times the polynomial degree.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::BitMatrix;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    pub fn one(m: usize) -> Self {
        Monomial { exponents: vec![0; m] }
    }

    /// `x_i`, 1-based.
    pub fn var(m: usize, i: usize) -> Self {
        let mut e = vec![0; m];
        e[i - 1] = 1;
        Monomial { exponents: e }
    }

    /// `x^σ = Π_{i∈σ} x_i`.
    pub fn squarefree(m: usize, s: Simplex) -> Self {
        let mut e = vec![0; m];
        for v in s.vertices() {
            e[v - 1] = 1;
        }
        Monomial { exponents: e }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    /// Polynomial degree.
    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn support(&self) -> Simplex {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(Simplex::EMPTY, |acc, (i, _)| acc.with(i + 1))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect() }
    }
}

/// Lexicographic with `x_1 > x_2 > …`; sorting ascending lists larger
/// monomials first (`x_1^2, x_1 x_2, x_2^2`).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.exponents.cmp(&self.exponents)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A homogeneous element of the polynomial ring (a set of monomials over F_2).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SRElement {
    generator_degree: u32,
    terms: BTreeSet<Monomial>,
}

impl SRElement {
    pub fn zero(generator_degree: u32) -> Self {
        SRElement { generator_degree, terms: BTreeSet::new() }
    }

    pub fn from_monomials(generator_degree: u32, monomials: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let mut e = Self::zero(generator_degree);
        for mono in monomials {
            e.toggle(mono);
        }
        let mut degrees = e.terms.iter().map(Monomial::degree);
        if let Some(first) = degrees.next() {
            if let Some(other) = degrees.find(|&d| d != first) {
                return Err(Error::MixedDegrees(first as isize, other as isize));
            }
        }
        Ok(e)
    }

    fn toggle(&mut self, mono: Monomial) {
        if !self.terms.remove(&mono) {
            self.terms.insert(mono);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn generator_degree(&self) -> u32 {
        self.generator_degree
    }

    pub fn add(&self, other: &SRElement) -> SRElement {
        let mut out = self.clone();
        for m in &other.terms {
            out.toggle(m.clone());
        }
        out
    }

    /// `Sq^n` of the element, not yet reduced modulo `I_K`.
    pub fn sq(&self, n: usize) -> SRElement {
        let mut out = SRElement::zero(self.generator_degree);
        for mono in &self.terms {
            if let Some(terms) = sq_total_monomial(mono, self.generator_degree).remove(&n) {
                for t in terms {
                    out.toggle(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for SRElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Drops monomials whose support is not a face.
pub fn sr_reduce(k: &SimplicialComplex, e: &SRElement) -> SRElement {
    SRElement {
        generator_degree: e.generator_degree,
        terms: e.terms.iter().filter(|m| k.contains(m.support())).cloned().collect(),
    }
}

/// All exponent vectors in `m` variables with entry sum `degree`, lexicographically descending.
pub fn all_monomials(m: usize, degree: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if m == 0 {
        return if degree == 0 { vec![Monomial::one(0)] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(0, degree, &mut vec![0; m], &mut out);
    out
}

/// Basis of `F_2[K]` in polynomial degree `k`: monomials whose support is a face.
pub fn monomial_basis(k: &SimplicialComplex, poly_degree: u32) -> Vec<Monomial> {
    let m = k.num_vertices();
    let mut out = Vec::new();
    for face in k.all_faces() {
        let verts: Vec<usize> = face.to_vec();
        if verts.len() as u32 > poly_degree || (verts.is_empty() && poly_degree > 0) {
            continue;
        }
        // exponents >= 1 on the face: compositions of the remaining degree
        let extra = poly_degree - verts.len() as u32;
        for comp in all_monomials(verts.len(), extra) {
            let mut e = vec![0u32; m];
            for (slot, &v) in verts.iter().enumerate() {
                e[v - 1] = 1 + comp.exponents()[slot];
            }
            out.push(Monomial::new(e));
        }
    }
    out.sort();
    out
}

/// `dim F_2[K]_k = Σ_{σ ≠ ∅} C(k−1, |σ|−1)` for `k ≥ 1`.
pub fn hilbert_function(k: &SimplicialComplex, poly_degree: u32) -> u128 {
    if poly_degree == 0 {
        return 1;
    }
    k.all_faces()
        .filter(|s| !s.is_empty())
        .map(|s| binomial(poly_degree as u64 - 1, s.len() as u64 - 1))
        .sum()
}

fn binomial(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Expansion of `Π_i (x_i + x_i^2)^{e_i}` grouped by operation index.
///
/// The term with extra exponent vector `t` has coefficient `Π C(e_i, t_i)`,
/// which is odd exactly when `t_i ⊆ e_i` bitwise (Lucas); it belongs to
/// `Sq^n` with `n = d · Σ t_i`.
pub fn sq_total_monomial(mono: &Monomial, generator_degree: u32) -> BTreeMap<usize, Vec<Monomial>> {
    let mut out: BTreeMap<usize, Vec<Monomial>> = BTreeMap::new();
    let e = mono.exponents();
    let mut t = vec![0u32; e.len()];
    loop {
        let extra: u32 = t.iter().sum();
        let image = Monomial::new(e.iter().zip(&t).map(|(a, b)| a + b).collect());
        out.entry((generator_degree * extra) as usize).or_default().push(image);
        // next t with t_i a bitwise submask of e_i
        let mut i = 0;
        loop {
            if i == e.len() {
                for terms in out.values_mut() {
                    terms.sort();
                }
                return out;
            }
            if t[i] == e[i] {
                t[i] = 0;
                i += 1;
                continue;
            }
            t[i] = (t[i].wrapping_sub(e[i])) & e[i];
            break;
        }
    }
}

fn check_generator_degree(d: u32) -> Result<()> {
    if d == 1 || d == 2 {
        Ok(())
    } else {
        Err(Error::InvalidDegree(format!("generator degree must be 1 or 2, got {d}")))
    }
}

/// Matrix of `Sq^n` from topological degree `D` to `D + n` in the monomial
/// bases; rows index the target basis. A target degree not divisible by `d`
/// has the zero space as its basis.
pub fn sq_graded_matrix(k: &SimplicialComplex, n: usize, degree: u32, d: u32) -> Result<BitMatrix> {
    check_generator_degree(d)?;
    if !degree.is_multiple_of(d) {
        return Err(Error::InvalidDegree(format!("degree {degree} is not a multiple of {d}")));
    }
    let source = monomial_basis(k, degree / d);
    let target_degree = degree + n as u32;
    let target = if target_degree.is_multiple_of(d) { monomial_basis(k, target_degree / d) } else { Vec::new() };
    let index: HashMap<&Monomial, usize> = target.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut matrix = BitMatrix::zeros(target.len(), source.len());
    for (col, mono) in source.iter().enumerate() {
        if let Some(terms) = sq_total_monomial(mono, d).get(&n) {
            for t in terms {
                if let Some(&row) = index.get(t) {
                    let cur = matrix.get(row, col);
                    matrix.set(row, col, !cur);
                }
            }
        }
    }
    Ok(matrix)
}

/// Graded dimensions of `F_2[K]` up to a topological degree.
pub fn graded_dimensions(k: &SimplicialComplex, max_degree: u32, d: u32) -> Result<BTreeMap<u32, usize>> {
    check_generator_degree(d)?;
    Ok((0..=max_degree / d).map(|p| (p * d, monomial_basis(k, p).len())).collect())
}

/// Minimal non-faces: the generators of `I_K`.
pub fn minimal_non_faces(k: &SimplicialComplex) -> Vec<Simplex> {
    let mut out = BTreeSet::new();
    for f in k.all_faces() {
        for v in 1..=k.num_vertices() {
            if f.contains(v) {
                continue;
            }
            let cand = f.with(v);
            if !k.contains(cand) && cand.vertices().all(|w| k.contains(cand.without(w))) {
                out.insert(cand);
            }
        }
    }
    out.into_iter().collect()
}

/// A monomial of `I_K` whose total square has a summand outside `I_K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AIdealCounterexample {
    pub monomial: Monomial,
    pub n: usize,
    pub image: Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AIdealReport {
    pub checked: usize,
    pub counterexample: Option<AIdealCounterexample>,
}

impl AIdealReport {
    pub fn is_ok(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks `Sq(I_K) ⊆ I_K` on every multiple of a minimal non-face up to the
/// given topological degree.
pub fn verify_a_ideal(k: &SimplicialComplex, d: u32, max_degree: u32) -> Result<AIdealReport> {
    check_generator_degree(d)?;
    let m = k.num_vertices();
    let max_poly = max_degree / d;
    let mut checked = 0;
    for gen in minimal_non_faces(k) {
        let base = Monomial::squarefree(m, gen);
        let base_degree = base.degree();
        for extra in 0..=max_poly.saturating_sub(base_degree) {
            if base_degree + extra > max_poly {
                break;
            }
            for a in all_monomials(m, extra) {
                let mono = base.mul(&a);
                checked += 1;
                for (n, terms) in sq_total_monomial(&mono, d) {
                    if let Some(bad) = terms.into_iter().find(|t| k.contains(t.support())) {
                        return Ok(AIdealReport {
                            checked,
                            counterexample: Some(AIdealCounterexample { monomial: mono, n, image: bad }),
                        });
                    }
                }
            }
        }
    }
    Ok(AIdealReport { checked, counterexample: None })
}
