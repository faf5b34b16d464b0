//! Finite abstract simplicial complexes on a vertex set `[m] = {1, …, m}`.
//!
//! Faces are bit masks (vertex `v` is bit `v - 1`), so a complex has at most
//! [`MAX_VERTICES`] vertices. Vertices of `[m]` that lie in no face are ghost
//! vertices. The empty complex `{∅}` always contains the empty face; there is
//! no void complex.
//!
//! Faces are materialized eagerly per dimension in canonical order: by
//! dimension, then lexicographically on the increasing vertex tuple. Every
//! basis downstream (cochains, cohomology, Steenrod matrices) follows this
//! order.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// A face, stored as a vertex bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Simplex(u64);

impl Simplex {
    pub const EMPTY: Simplex = Simplex(0);

    pub const fn from_mask(mask: u64) -> Self {
        Simplex(mask)
    }

    pub fn from_vertices(vertices: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &v in vertices {
            if v == 0 || v > MAX_VERTICES {
                return Err(Error::VertexOutOfRange { vertex: v, m: MAX_VERTICES });
            }
            let bit = 1u64 << (v - 1);
            if mask & bit != 0 {
                return Err(Error::RepeatedVertex(v));
            }
            mask |= bit;
        }
        Ok(Simplex(mask))
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn dim(self) -> isize {
        self.len() as isize - 1
    }

    /// Vertices in increasing order.
    pub fn vertices(self) -> Vertices {
        Vertices(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.vertices().collect()
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 >> (v - 1) & 1 == 1
    }

    pub fn is_subset_of(self, other: Simplex) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Simplex) -> Simplex {
        Simplex(self.0 | other.0)
    }

    pub fn without(self, v: usize) -> Simplex {
        Simplex(self.0 & !(1u64 << (v - 1)))
    }

    pub fn with(self, v: usize) -> Simplex {
        Simplex(self.0 | 1u64 << (v - 1))
    }

    pub fn max_vertex(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Drops the vertices at the given 0-based positions of the increasing
    /// vertex tuple. Positions refer to the original tuple, so this equals the
    /// composite face map applied from the highest index down.
    pub fn delete_positions(self, positions: &[usize]) -> Simplex {
        let mut out = self.0;
        let mut rest = self.0;
        let mut pos = 0;
        let mut p = positions.iter().peekable();
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest ^= bit;
            if p.peek() == Some(&&pos) {
                out ^= bit;
                p.next();
            }
            pos += 1;
        }
        Simplex(out)
    }

    fn lex_key(self) -> u64 {
        self.0.reverse_bits()
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| other.lex_key().cmp(&self.lex_key()))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Debug)]
pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Vertices {}

/// Mask of `[m]`.
pub fn full_mask(m: usize) -> u64 {
    if m >= 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// Order-preserving relabeling of the bits of `mask` that lie in `support`
/// onto `1..=|support|`.
pub fn compress_mask(mask: u64, support: u64) -> u64 {
    let mut out = 0u64;
    let mut rest = support;
    let mut k = 0;
    while rest != 0 {
        let bit = rest & rest.wrapping_neg();
        if mask & bit != 0 {
            out |= 1 << k;
        }
        rest ^= bit;
        k += 1;
    }
    out
}

#[derive(Clone)]
pub struct SimplicialComplex {
    m: usize,
    facets: Vec<Simplex>,
    /// `faces[j + 1]` holds the `j`-faces in canonical order.
    faces: Vec<Vec<Simplex>>,
    index: Vec<HashMap<u64, u32>>,
    /// Original vertex labels (metadata carried through restrictions).
    labels: Vec<usize>,
}

impl SimplicialComplex {
    /// Builds a complex from facet vertex lists. Non-maximal faces are dropped.
    pub fn from_facets<V: AsRef<[usize]>>(m: usize, facets: &[V]) -> Result<Self> {
        check_m(m)?;
        let mut simplices = Vec::with_capacity(facets.len());
        for f in facets {
            let f = f.as_ref();
            for &v in f {
                if v == 0 || v > m {
                    return Err(Error::VertexOutOfRange { vertex: v, m });
                }
            }
            simplices.push(Simplex::from_vertices(f)?);
        }
        Ok(Self::from_simplices(m, simplices))
    }

    /// As [`from_facets`](Self::from_facets) for masks already known to lie in `[m]`.
    pub(crate) fn from_simplices(m: usize, candidates: impl IntoIterator<Item = Simplex>) -> Self {
        debug_assert!(m <= MAX_VERTICES);
        let facets = maximal(candidates);
        let faces = closure(&facets);
        Self::assemble(m, facets, faces, (1..=m).collect())
    }

    /// Builds a complex from facet simplices, checking the vertex range.
    pub fn from_facet_simplices(
        m: usize,
        candidates: impl IntoIterator<Item = Simplex>,
    ) -> Result<Self> {
        check_m(m)?;
        let allowed = full_mask(m);
        let candidates: Vec<Simplex> = candidates.into_iter().collect();
        for s in &candidates {
            if s.mask() & !allowed != 0 {
                return Err(Error::VertexOutOfRange { vertex: s.max_vertex(), m });
            }
        }
        Ok(Self::from_simplices(m, candidates))
    }

    /// Builds a complex from an arbitrary downward-closed face family.
    pub(crate) fn from_downward_closed(m: usize, mut faces: Vec<Vec<Simplex>>) -> Self {
        if faces.is_empty() {
            faces.push(vec![Simplex::EMPTY]);
        }
        while faces.len() > 1 && faces.last().is_some_and(|l| l.is_empty()) {
            faces.pop();
        }
        for level in faces.iter_mut() {
            level.sort();
        }
        let facets = facets_of(&faces);
        Self::assemble(m, facets, faces, (1..=m).collect())
    }

    fn assemble(m: usize, facets: Vec<Simplex>, faces: Vec<Vec<Simplex>>, labels: Vec<usize>) -> Self {
        let index = faces
            .iter()
            .map(|level| {
                level
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (s.mask(), i as u32))
                    .collect()
            })
            .collect();
        SimplicialComplex { m, facets, faces, index, labels }
    }

    /// The empty complex `{∅}` on `m` (ghost) vertices.
    pub fn empty(m: usize) -> Self {
        Self::from_simplices(m, [])
    }

    pub fn num_vertices(&self) -> usize {
        self.m
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    /// The `j`-faces in canonical order; empty for out-of-range `j`.
    pub fn faces(&self, j: isize) -> &[Simplex] {
        if j < -1 {
            return &[];
        }
        self.faces.get((j + 1) as usize).map_or(&[], |v| v.as_slice())
    }

    pub fn num_faces(&self, j: isize) -> usize {
        self.faces(j).len()
    }

    pub fn face_index(&self, s: Simplex) -> Option<usize> {
        let level = s.len();
        self.index.get(level)?.get(&s.mask()).map(|&i| i as usize)
    }

    pub fn contains(&self, s: Simplex) -> bool {
        self.face_index(s).is_some()
    }

    /// All faces, empty face first, in canonical order.
    pub fn all_faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        self.faces.iter().flatten().copied()
    }

    pub fn dimension(&self) -> isize {
        self.faces.len() as isize - 2
    }

    /// Face counts for dimensions `0..=dim` (the empty face is not included).
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces[1..].iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &f)| if d % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.euler_characteristic() - 1
    }

    /// Mask of the vertices that appear in some face.
    pub fn vertex_mask(&self) -> u64 {
        self.faces(0).iter().fold(0, |acc, s| acc | s.mask())
    }

    pub fn ghost_vertices(&self) -> Vec<usize> {
        let used = self.vertex_mask();
        (1..=self.m).filter(|v| used >> (v - 1) & 1 == 0).collect()
    }

    /// Whether the realization is nonempty and connected. Ghost vertices are ignored.
    pub fn is_connected(&self) -> bool {
        let verts = self.vertex_mask();
        if verts == 0 {
            return false;
        }
        let start = verts & verts.wrapping_neg();
        let mut reached = start;
        loop {
            let mut grown = reached;
            for e in self.faces(1) {
                if e.mask() & reached != 0 {
                    grown |= e.mask();
                }
            }
            if grown == reached {
                break;
            }
            reached = grown;
        }
        reached == verts
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn original_label(&self, v: usize) -> usize {
        self.labels[v - 1]
    }

    /// Maps a face to the original labels carried as metadata.
    pub fn to_original(&self, s: Simplex) -> Vec<usize> {
        s.vertices().map(|v| self.labels[v - 1]).collect()
    }

    pub(crate) fn with_labels(mut self, labels: Vec<usize>) -> Self {
        debug_assert_eq!(labels.len(), self.m);
        self.labels = labels;
        self
    }

    /// Full subcomplex on the vertex list `subset`, relabeled `1..=|subset|`
    /// in increasing order.
    pub fn full_subcomplex(&self, subset: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &v in subset {
            if v == 0 || v > self.m {
                return Err(Error::VertexOutOfRange { vertex: v, m: self.m });
            }
            mask |= 1 << (v - 1);
        }
        Ok(self.full_subcomplex_mask(mask))
    }

    pub fn full_subcomplex_mask(&self, subset: u64) -> Self {
        let subset = subset & full_mask(self.m);
        let mut faces: Vec<Vec<Simplex>> = Vec::with_capacity(self.faces.len());
        for level in &self.faces {
            let kept: Vec<Simplex> = level
                .iter()
                .filter(|s| s.mask() & !subset == 0)
                .map(|s| Simplex(compress_mask(s.mask(), subset)))
                .collect();
            if kept.is_empty() {
                break;
            }
            faces.push(kept);
        }
        // Order-preserving relabeling keeps each level sorted.
        let facets = facets_of(&faces);
        let labels = Simplex(subset).vertices().map(|v| self.labels[v - 1]).collect();
        Self::assemble(subset.count_ones() as usize, facets, faces, labels)
    }

    /// `link(v) = {τ : v ∉ τ, τ ∪ {v} ∈ K}`, on the same vertex set (v becomes a ghost).
    pub fn link(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        let facets = self
            .facets
            .iter()
            .filter(|s| s.contains(v))
            .map(|s| s.without(v));
        Ok(Self::from_simplices(self.m, facets.collect::<Vec<_>>()).with_labels(self.labels.clone()))
    }

    /// `star(v) = {τ : τ ∪ {v} ∈ K}`, on the same vertex set.
    pub fn star(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        let facets: Vec<Simplex> = self.facets.iter().filter(|s| s.contains(v)).copied().collect();
        Ok(Self::from_simplices(self.m, facets).with_labels(self.labels.clone()))
    }

    /// Join with `other`, whose vertices are shifted by `self.num_vertices()`.
    pub fn join(&self, other: &SimplicialComplex) -> Result<Self> {
        let m = self.m + other.m;
        check_m(m)?;
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for a in &self.facets {
            for b in &other.facets {
                facets.push(Simplex(a.mask() | b.mask() << self.m));
            }
        }
        Ok(Self::from_simplices(m, facets))
    }

    /// Cone with apex `m + 1`.
    pub fn cone(&self) -> Result<Self> {
        self.join(&SimplicialComplex::from_simplices(1, [Simplex(1)]))
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.m <= other.m && self.facets.iter().all(|s| other.contains(*s))
    }

    /// Faces of `self` as a set of masks, for face-set comparisons.
    pub fn face_set(&self) -> HashSet<u64> {
        self.all_faces().map(Simplex::mask).collect()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.m {
            Err(Error::VertexOutOfRange { vertex: v, m: self.m })
        } else {
            Ok(())
        }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl std::hash::Hash for SimplicialComplex {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.m.hash(state);
        self.facets.hash(state);
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex(m={}, facets={:?})", self.m, self.facets)
    }
}

fn check_m(m: usize) -> Result<()> {
    if m > MAX_VERTICES {
        Err(Error::TooManyVertices { m, max: MAX_VERTICES })
    } else {
        Ok(())
    }
}

/// Keeps the inclusion-maximal members, sorted canonically.
fn maximal(candidates: impl IntoIterator<Item = Simplex>) -> Vec<Simplex> {
    let mut all: Vec<Simplex> = candidates.into_iter().collect();
    all.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    all.dedup();
    let mut kept: Vec<Simplex> = Vec::new();
    for s in all {
        if !kept.iter().any(|k| s.is_subset_of(*k)) {
            kept.push(s);
        }
    }
    if kept.is_empty() {
        kept.push(Simplex::EMPTY);
    }
    kept.sort();
    kept
}

/// Downward closure, one level at a time from the top.
fn closure(facets: &[Simplex]) -> Vec<Vec<Simplex>> {
    let top = facets.iter().map(|s| s.len()).max().unwrap_or(0);
    let mut levels: Vec<Vec<Simplex>> = vec![Vec::new(); top + 1];
    let mut current: HashSet<u64> = HashSet::new();
    for size in (0..=top).rev() {
        let mut next: HashSet<u64> = facets
            .iter()
            .filter(|s| s.len() == size)
            .map(|s| s.mask())
            .collect();
        for &mask in &current {
            let mut rest = mask;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                next.insert(mask ^ bit);
                rest ^= bit;
            }
        }
        let mut level: Vec<Simplex> = next.iter().map(|&m| Simplex(m)).collect();
        level.sort();
        levels[size] = level;
        current = next;
    }
    levels
}

/// Faces not contained in any face one dimension up.
fn facets_of(faces: &[Vec<Simplex>]) -> Vec<Simplex> {
    let mut out = Vec::new();
    for (k, level) in faces.iter().enumerate() {
        let covered: HashSet<u64> = match faces.get(k + 1) {
            Some(up) => up
                .iter()
                .flat_map(|s| {
                    let mask = s.mask();
                    Simplex(mask).vertices().map(move |v| mask & !(1u64 << (v - 1)))
                })
                .collect(),
            None => HashSet::new(),
        };
        out.extend(level.iter().filter(|s| !covered.contains(&s.mask())));
    }
    out.sort();
    out
}
