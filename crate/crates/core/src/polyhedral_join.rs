//! Polyhedral joins `(K, L)^{*K}` of simplicial pairs and their special cases:
//! substitution complexes `K⟨K_1, …, K_m⟩` (every `L_i = {∅}`) and simplicial
//! compositions `K(L_1, …, L_m)` (every `K_i` a full simplex).

use std::collections::{BTreeMap, HashSet};

use crate::cohomology::{betti, BettiMap, Cochain, CohomologyBasis};
use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result, VerificationFailure};
use crate::linalg::{BitMatrix, BitVector};
use crate::registry;
use crate::steenrod::{all_sq_matrices, sq_profile, SteenrodProfile};

/// Pairs `(K_i, L_i)` with `L_i ⊆ K_i` on the same vertex set.
#[derive(Clone, Debug)]
pub struct PairSpec {
    pairs: Vec<(SimplicialComplex, SimplicialComplex)>,
}

impl PairSpec {
    pub fn new(pairs: Vec<(SimplicialComplex, SimplicialComplex)>) -> Result<Self> {
        for (i, (k, l)) in pairs.iter().enumerate() {
            if k.num_vertices() == 0 {
                return Err(Error::Unsupported(format!("pair {}: complex without vertices", i + 1)));
            }
            if l.num_vertices() != k.num_vertices() {
                return Err(Error::ArityMismatch { expected: k.num_vertices(), got: l.num_vertices() });
            }
            if !l.is_subcomplex_of(k) {
                return Err(Error::NotASubcomplex(i + 1));
            }
        }
        Ok(PairSpec { pairs })
    }

    /// `(K_i, {∅})` for every complex.
    pub fn substitution(complexes: &[SimplicialComplex]) -> Result<Self> {
        Self::new(complexes.iter().map(|k| (k.clone(), SimplicialComplex::empty(k.num_vertices()))).collect())
    }

    /// `(Δ^{n_i − 1}, L_i)` for every link.
    pub fn composition(links: &[SimplicialComplex]) -> Result<Self> {
        Self::new(links.iter().map(|l| (full_simplex(l.num_vertices()), l.clone())).collect())
    }

    pub fn pairs(&self) -> &[(SimplicialComplex, SimplicialComplex)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.pairs.iter().map(|(k, _)| k.num_vertices()).collect()
    }
}

fn full_simplex(n: usize) -> SimplicialComplex {
    registry::simplex(n - 1)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LabelingMode {
    /// `v_{i,1} ↦ i`, remaining copies `m+1, m+2, …` in `(i, j)` order.
    #[default]
    Paper,
    /// Consecutive blocks: `K_1` gets `1..=n_1`, `K_2` the next `n_2`, and so on.
    Block,
}

/// Vertex `j` of factor `i` (both 1-based) ↦ vertex of the join.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinLabeling {
    pub mode: LabelingMode,
    map: Vec<Vec<usize>>,
}

impl JoinLabeling {
    pub fn new(mode: LabelingMode, sizes: &[usize]) -> Self {
        let m = sizes.len();
        let map = match mode {
            LabelingMode::Paper => {
                let mut next = m + 1;
                sizes
                    .iter()
                    .enumerate()
                    .map(|(i, &n)| {
                        let mut row = vec![i + 1];
                        for _ in 1..n {
                            row.push(next);
                            next += 1;
                        }
                        row
                    })
                    .collect()
            }
            LabelingMode::Block => {
                let mut next = 1;
                sizes
                    .iter()
                    .map(|&n| {
                        let row: Vec<usize> = (next..next + n).collect();
                        next += n;
                        row
                    })
                    .collect()
            }
        };
        JoinLabeling { mode, map }
    }

    pub fn label(&self, i: usize, j: usize) -> usize {
        self.map[i - 1][j - 1]
    }

    /// Labels of the `i`-th block in factor order.
    pub fn block(&self, i: usize) -> &[usize] {
        &self.map[i - 1]
    }

    pub fn num_vertices(&self) -> usize {
        self.map.iter().map(Vec::len).sum()
    }

    fn relabel(&self, i: usize, s: Simplex) -> Simplex {
        s.vertices().fold(Simplex::EMPTY, |acc, v| acc.with(self.label(i, v)))
    }
}

/// Faces are `⊔ σ_i` with `σ_i ∈ K_i` and `{i : σ_i ∉ L_i} ∈ K`.
pub fn polyhedral_join(k: &SimplicialComplex, spec: &PairSpec, mode: LabelingMode) -> Result<SimplicialComplex> {
    let m = k.num_vertices();
    if spec.len() != m {
        return Err(Error::ArityMismatch { expected: m, got: spec.len() });
    }
    let labeling = JoinLabeling::new(mode, &spec.sizes());
    let total = labeling.num_vertices();
    if total > crate::complex::MAX_VERTICES {
        return Err(Error::TooManyVertices { m: total, max: crate::complex::MAX_VERTICES });
    }
    let relabeled: Vec<(Vec<Simplex>, Vec<Simplex>)> = spec
        .pairs()
        .iter()
        .enumerate()
        .map(|(i, (ki, li))| {
            let f = |c: &SimplicialComplex| c.facets().iter().map(|&s| labeling.relabel(i + 1, s)).collect();
            (f(ki), f(li))
        })
        .collect();
    // Every face lies in a product over a facet τ of K of K_i-facets (i ∈ τ)
    // and L_i-facets (i ∉ τ); maximality filtering happens in the constructor.
    let mut candidates: HashSet<Simplex> = HashSet::new();
    for &tau in k.facets() {
        let mut partial = vec![Simplex::EMPTY];
        for (i, (kf, lf)) in relabeled.iter().enumerate() {
            let choices = if tau.contains(i + 1) { kf } else { lf };
            partial = partial.iter().flat_map(|p| choices.iter().map(move |c| p.union(*c))).collect();
            partial.sort();
            partial.dedup();
        }
        candidates.extend(partial);
    }
    SimplicialComplex::from_facet_simplices(total, candidates)
}

/// `K⟨K_1, …, K_m⟩`: faces are joins `τ_{i_1} ∗ ⋯ ∗ τ_{i_k}` with `{i_1, …, i_k} ∈ K`.
pub fn substitution(k: &SimplicialComplex, complexes: &[SimplicialComplex], mode: LabelingMode) -> Result<SimplicialComplex> {
    polyhedral_join(k, &PairSpec::substitution(complexes)?, mode)
}

/// `K(L_1, …, L_m) = (Δ, L)^{*K}`.
pub fn composition(k: &SimplicialComplex, links: &[SimplicialComplex], mode: LabelingMode) -> Result<SimplicialComplex> {
    polyhedral_join(k, &PairSpec::composition(links)?, mode)
}

/// `[K^0, K^1, …, K^m]` where `K^i` substitutes `K_i` into vertex `i` of `K^{i−1}`.
pub fn substitution_sequence(k: &SimplicialComplex, complexes: &[SimplicialComplex]) -> Result<Vec<SimplicialComplex>> {
    let m = k.num_vertices();
    if complexes.len() != m {
        return Err(Error::ArityMismatch { expected: m, got: complexes.len() });
    }
    let mut out = vec![k.clone()];
    for (i, ki) in complexes.iter().enumerate() {
        let prev = out.last().expect("nonempty");
        let mut args: Vec<SimplicialComplex> = (0..prev.num_vertices()).map(|_| registry::points(1)).collect();
        args[i] = ki.clone();
        out.push(substitution(prev, &args, LabelingMode::Paper)?);
    }
    Ok(out)
}

/// `b̃^q(A ∗ B) = Σ_{a+b=q−1} b̃^a(A) b̃^b(B)`, degree −1 included.
pub fn join_betti(a: &BettiMap, b: &BettiMap) -> BettiMap {
    let mut out = BettiMap::new();
    for (&p, &x) in a {
        for (&q, &y) in b {
            *out.entry(p + q + 1).or_insert(0) += x * y;
        }
    }
    out.retain(|_, v| *v > 0);
    out
}

fn add_betti(acc: &mut BettiMap, other: &BettiMap) {
    for (&d, &v) in other {
        *acc.entry(d).or_insert(0) += v;
    }
    acc.retain(|_, v| *v > 0);
}

fn check_splitting_inputs(k: &SimplicialComplex, complexes: &[SimplicialComplex]) -> Result<()> {
    if complexes.len() != k.num_vertices() {
        return Err(Error::ArityMismatch { expected: k.num_vertices(), got: complexes.len() });
    }
    if !k.is_connected() {
        return Err(Error::Disconnected);
    }
    if !k.ghost_vertices().is_empty() {
        return Err(Error::Unsupported("base complex has ghost vertices".into()));
    }
    if complexes.iter().any(|c| c.num_vertices() == 0 || !c.ghost_vertices().is_empty()) {
        return Err(Error::Unsupported("substituted complexes must not have ghost vertices".into()));
    }
    Ok(())
}

/// Reduced Betti numbers of `K ∨ ⋁_i link_{K^{i−1}}(v_i) ∗ K_i`.
pub fn predicted_betti_substitution(k: &SimplicialComplex, complexes: &[SimplicialComplex]) -> Result<BettiMap> {
    check_splitting_inputs(k, complexes)?;
    let seq = substitution_sequence(k, complexes)?;
    let mut out = betti(k, true);
    for (i, ki) in complexes.iter().enumerate() {
        let link = seq[i].link(i + 1)?;
        add_betti(&mut out, &join_betti(&betti(&link, true), &betti(ki, true)));
    }
    Ok(out)
}

/// Reduced Betti numbers of `Σ^m H̃*(K) ⊗ H̃*(L_1) ⊗ ⋯ ⊗ H̃*(L_m)`.
pub fn predicted_betti_composition(k: &SimplicialComplex, links: &[SimplicialComplex]) -> Result<BettiMap> {
    if links.len() != k.num_vertices() {
        return Err(Error::ArityMismatch { expected: k.num_vertices(), got: links.len() });
    }
    let mut acc = betti(k, true);
    for l in links {
        let b = betti(l, true);
        let mut next = BettiMap::new();
        for (&p, &x) in &acc {
            for (&q, &y) in &b {
                *next.entry(p + q + 1).or_insert(0) += x * y;
            }
        }
        acc = next;
    }
    acc.retain(|_, v| *v > 0);
    Ok(acc)
}

/// Steenrod profile of `A ∗ B` assembled from the factors' matrices:
/// `Sq^n` on `H̃^a(A) ⊗ H̃^b(B)` is `Σ_{p+r=n} Sq^p ⊗ Sq^r`.
pub fn join_sq_profile(a: &SimplicialComplex, b: &SimplicialComplex) -> Result<SteenrodProfile> {
    let ba = CohomologyBasis::new(a, true);
    let bb = CohomologyBasis::new(b, true);
    let ma = all_sq_matrices(&ba)?;
    let mb = all_sq_matrices(&bb)?;
    let (da, db) = (a.dimension(), b.dimension());
    let dim = da + db + 1;
    // H̃^q(A ∗ B) = ⊕_{a} H̃^a(A) ⊗ H̃^{q−1−a}(B); block offsets per `a`.
    let blocks = |q: isize| -> Vec<(isize, isize, usize)> {
        let mut out = Vec::new();
        let mut offset = 0;
        for x in -1..=da {
            let y = q - 1 - x;
            if y < -1 || y > db {
                continue;
            }
            let size = ba.dim(x) * bb.dim(y);
            if size > 0 {
                out.push((x, y, offset));
                offset += size;
            }
        }
        out
    };
    let total = |bl: &[(isize, isize, usize)]| bl.last().map_or(0, |&(x, y, o)| o + ba.dim(x) * bb.dim(y));
    let mut profile = SteenrodProfile::new();
    for q in 1..=dim {
        let src = blocks(q);
        if src.is_empty() {
            continue;
        }
        for n in 1..=q as usize {
            let t = q + n as isize;
            if t > dim {
                break;
            }
            let dst = blocks(t);
            if dst.is_empty() {
                continue;
            }
            let mut mat = BitMatrix::zeros(total(&dst), total(&src));
            for &(x, y, so) in &src {
                for &(x2, y2, to) in &dst {
                    let (p, r) = (x2 - x, y2 - y);
                    if p < 0 || r < 0 {
                        continue;
                    }
                    let (Some(sa), Some(sb)) = (ma.get(&(p as usize, x)), mb.get(&(r as usize, y))) else {
                        continue;
                    };
                    let block = sa.kron(sb);
                    for row in 0..block.num_rows() {
                        for col in block.row(row).ones() {
                            mat.set(to + row, so + col, true);
                        }
                    }
                }
            }
            profile.add(n, q, mat.rank());
        }
    }
    Ok(profile)
}

/// Profile of `K ∨ ⋁_i link_{K^{i−1}}(v_i) ∗ K_i`; ranks of wedge summands add.
pub fn predicted_sq_profile_substitution(k: &SimplicialComplex, complexes: &[SimplicialComplex]) -> Result<SteenrodProfile> {
    check_splitting_inputs(k, complexes)?;
    let seq = substitution_sequence(k, complexes)?;
    let mut out = sq_profile(k)?;
    for (i, ki) in complexes.iter().enumerate() {
        let link = seq[i].link(i + 1)?;
        out.merge(&join_sq_profile(&link, ki)?);
    }
    Ok(out)
}

/// Replaces every vertex `v_{i,1}` of each simplex in `x` by each copy
/// `v_{i,j}` independently, then verifies the result is a cocycle whose class
/// is nonzero whenever `[x]` is.
///
/// `subst` must be `substitution(k, complexes, mode)`.
pub fn extend_cocycle_substitution<'b>(
    subst: &'b SimplicialComplex,
    complexes: &[SimplicialComplex],
    x: &Cochain<'_>,
    mode: LabelingMode,
) -> Result<Cochain<'b>> {
    let k = x.complex();
    if complexes.len() != k.num_vertices() {
        return Err(Error::ArityMismatch { expected: k.num_vertices(), got: complexes.len() });
    }
    if !x.is_cocycle() {
        return Err(Error::NotACocycle(x.degree()));
    }
    let sizes: Vec<usize> = complexes.iter().map(SimplicialComplex::num_vertices).collect();
    let labeling = JoinLabeling::new(mode, &sizes);
    if labeling.num_vertices() != subst.num_vertices() {
        return Err(Error::ArityMismatch { expected: labeling.num_vertices(), got: subst.num_vertices() });
    }
    let mut coeffs = BitVector::zeros(subst.num_faces(x.degree()));
    for sigma in x.support() {
        let mut partial = vec![Simplex::EMPTY];
        for v in sigma.vertices() {
            partial = partial
                .iter()
                .flat_map(|p| labeling.block(v).iter().map(move |&c| p.with(c)))
                .collect();
        }
        for s in partial {
            if let Some(idx) = subst.face_index(s) {
                coeffs.flip(idx);
            }
        }
    }
    let y = Cochain::from_coefficients(subst, x.degree(), coeffs)?;
    if !y.is_cocycle() {
        return Err(Error::VerificationFailed(VerificationFailure::NotACocycle));
    }
    if !x.is_coboundary() && y.is_coboundary() {
        return Err(Error::VerificationFailed(VerificationFailure::ClassIsZero));
    }
    Ok(y)
}

/// Vertex subsets of `K⟨K_1, …⟩` carrying copies of `K` and of each `K_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullSubcomplexCopies {
    /// `{v_{1,k_1}, …, v_{m,k_m}}`, listed in the order of `K`'s vertices.
    pub base: Vec<usize>,
    /// `{v_{i,1}, …, v_{i,n_i}}` in `K_i`'s vertex order.
    pub blocks: Vec<Vec<usize>>,
}

/// True when the full subcomplex of `big` on `map`'s image equals `small`
/// with vertex `v` sent to `map[v − 1]`.
pub fn is_full_copy(big: &SimplicialComplex, small: &SimplicialComplex, map: &[usize]) -> bool {
    if map.len() != small.num_vertices() {
        return false;
    }
    let image: u64 = map.iter().fold(0, |acc, &v| acc | Simplex::EMPTY.with(v).mask());
    if image.count_ones() as usize != map.len() {
        return false;
    }
    let mapped: HashSet<u64> = small
        .all_faces()
        .map(|s| s.vertices().fold(Simplex::EMPTY, |acc, v| acc.with(map[v - 1])).mask())
        .collect();
    let inside: HashSet<u64> = big.all_faces().map(Simplex::mask).filter(|s| s & !image == 0).collect();
    mapped == inside
}

/// Locates and verifies the copies of `K` (choosing `v_{i, choice[i]}`) and of each `K_i`.
pub fn locate_full_subcomplexes(
    k: &SimplicialComplex,
    complexes: &[SimplicialComplex],
    choice: &[usize],
    mode: LabelingMode,
) -> Result<FullSubcomplexCopies> {
    let subst = substitution(k, complexes, mode)?;
    if choice.len() != complexes.len() {
        return Err(Error::ArityMismatch { expected: complexes.len(), got: choice.len() });
    }
    let sizes: Vec<usize> = complexes.iter().map(SimplicialComplex::num_vertices).collect();
    let labeling = JoinLabeling::new(mode, &sizes);
    let mut base = Vec::with_capacity(choice.len());
    for (i, &c) in choice.iter().enumerate() {
        if c == 0 || c > sizes[i] {
            return Err(Error::VertexOutOfRange { vertex: c, m: sizes[i] });
        }
        base.push(labeling.label(i + 1, c));
    }
    let not_iso = Error::VerificationFailed(VerificationFailure::NotIsomorphic);
    if !is_full_copy(&subst, k, &base) {
        return Err(not_iso);
    }
    let mut blocks = Vec::with_capacity(complexes.len());
    for (i, ki) in complexes.iter().enumerate() {
        let block = labeling.block(i + 1).to_vec();
        if !is_full_copy(&subst, ki, &block) {
            return Err(Error::VerificationFailed(VerificationFailure::NotIsomorphic));
        }
        blocks.push(block);
    }
    Ok(FullSubcomplexCopies { base, blocks })
}

/// Reduced Betti numbers of a wedge, for callers comparing predictions.
pub fn wedge_betti<'a>(parts: impl IntoIterator<Item = &'a BettiMap>) -> BettiMap {
    let mut out = BTreeMap::new();
    for p in parts {
        add_betti(&mut out, p);
    }
    out
}
