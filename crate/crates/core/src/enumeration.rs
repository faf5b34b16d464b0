//! Exhaustive enumeration of labeled simplicial complexes on `[n]`, `n ≤ 6`,
//! and the scan for nontrivial `Sq^1`.
//!
//! A complex is stored as a *family*: bit `i` of a `u64` says whether the `i`-th
//! subset of `[n]` (subsets ordered by size, then mask) is a face. Families are
//! generated by extending over subsets in that order, adding a subset only when
//! all of its codimension-one faces are already present. Ghost vertices are
//! allowed, so complexes on fewer vertices appear as well.

use serde::Serialize;

use crate::cohomology::BettiMap;
use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::steenrod::{sq_profile_ops, ProfileEntry};

/// Largest `n` enumerated without the long-running opt-in.
pub const DEFAULT_MAX_VERTICES: usize = 5;
pub const MAX_VERTICES: usize = 6;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumOptions {
    pub exec: Execution,
    /// Permits `n = 6` (about 7.8 million complexes).
    pub allow_long: bool,
    /// Scan every `Sq^n`, not only `Sq^1`.
    pub full_sq: bool,
}

/// Subsets of `[n]` in rank order and the inverse lookup.
struct Layout {
    n: usize,
    subsets: Vec<u64>,
    position: Vec<usize>,
    /// `level_start[k]` is the position of the first `k`-subset.
    level_start: Vec<usize>,
}

impl Layout {
    fn new(n: usize) -> Self {
        let mut subsets: Vec<u64> = (0..1u64 << n).collect();
        subsets.sort_by_key(|&s| (s.count_ones(), s));
        let mut position = vec![0; 1 << n];
        for (i, &s) in subsets.iter().enumerate() {
            position[s as usize] = i;
        }
        let level_start: Vec<usize> =
            (0..=n + 1).map(|k| subsets.iter().take_while(|s| (s.count_ones() as usize) < k).count()).collect();
        Layout { n, subsets, position, level_start }
    }

    fn includable(&self, family: u64, s: u64) -> bool {
        let mut rest = s;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest ^= bit;
            if family >> self.position[(s ^ bit) as usize] & 1 == 0 {
                return false;
            }
        }
        true
    }

    /// Visits every completion of `family` over positions `pos..`.
    fn dfs(&self, pos: usize, family: u64, visit: &mut impl FnMut(u64)) {
        if pos == self.subsets.len() {
            visit(family);
            return;
        }
        let s = self.subsets[pos];
        self.dfs(pos + 1, family, visit);
        if self.includable(family, s) {
            self.dfs(pos + 1, family | 1 << pos, visit);
        }
    }

    /// The subtree whose vertex set (singletons present) is `singletons`.
    fn subtree(&self, singletons: u64, visit: &mut impl FnMut(u64)) {
        let mut family = 1u64;
        for v in 0..self.n {
            if singletons >> v & 1 == 1 {
                family |= 1 << self.position[1 << v];
            }
        }
        self.dfs(self.n + 1, family, visit);
    }

    fn faces(&self, family: u64, k: usize) -> impl Iterator<Item = u64> + '_ {
        (self.level_start[k]..self.level_start[k + 1])
            .filter(move |&i| family >> i & 1 == 1)
            .map(move |i| self.subsets[i])
    }

    fn complex(&self, family: u64) -> SimplicialComplex {
        let levels: Vec<Vec<Simplex>> =
            (0..=self.n).map(|k| self.faces(family, k).map(Simplex::from_mask).collect()).collect();
        SimplicialComplex::from_downward_closed(self.n, levels)
    }

    /// Reduced Betti numbers with `u64`-row elimination; at most 20 faces per level.
    fn betti(&self, family: u64) -> BettiMap {
        let levels: Vec<Vec<u64>> = (0..=self.n).map(|k| self.faces(family, k).collect()).collect();
        // ranks[k] = rank of δ from (k−1)-faces (size k) to size k+1
        let mut ranks = vec![0usize; self.n + 2];
        for k in 0..self.n {
            let (lower, upper) = (&levels[k], &levels[k + 1]);
            if upper.is_empty() {
                break;
            }
            let mut basis = [0u64; 64];
            let mut rank = 0;
            for &t in upper {
                let mut row = 0u64;
                let mut rest = t;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    rest ^= bit;
                    let idx = lower.binary_search_by_key(&(t ^ bit), |&x| x).expect("downward closed");
                    row |= 1 << idx;
                }
                while row != 0 {
                    let top = 63 - row.leading_zeros() as usize;
                    if basis[top] == 0 {
                        basis[top] = row;
                        rank += 1;
                        break;
                    }
                    row ^= basis[top];
                }
            }
            ranks[k + 1] = rank;
        }
        let mut out = BettiMap::new();
        for k in 0..=self.n {
            let b = levels[k].len() - ranks[k + 1] - ranks[k];
            if b > 0 {
                out.insert(k as isize - 1, b);
            }
        }
        out
    }
}

fn check_range(n: usize, allow_long: bool) -> Result<()> {
    let max = if allow_long { MAX_VERTICES } else { DEFAULT_MAX_VERTICES };
    if n == 0 || n > max {
        return Err(Error::EnumerationRange { n, max });
    }
    Ok(())
}

/// Every downward-closed family of subsets of `[n]` containing `∅`, in a fixed order.
pub fn enumerate_families(n: usize, opts: &EnumOptions) -> Result<Vec<u64>> {
    check_range(n, opts.allow_long)?;
    let layout = Layout::new(n);
    let parts = opts.exec.map_range(1 << n, |s| {
        let mut out = Vec::new();
        layout.subtree(s as u64, &mut |f| out.push(f));
        out
    });
    Ok(parts.concat())
}

/// The complex on `[n]` described by a family.
pub fn family_to_complex(n: usize, family: u64) -> SimplicialComplex {
    Layout::new(n).complex(family)
}

pub fn enumerate_complexes(n: usize, opts: &EnumOptions) -> Result<impl Iterator<Item = SimplicialComplex>> {
    let families = enumerate_families(n, opts)?;
    let layout = Layout::new(n);
    Ok(families.into_iter().map(move |f| layout.complex(f)))
}

pub fn count_complexes(n: usize, opts: &EnumOptions) -> Result<u64> {
    check_range(n, opts.allow_long)?;
    let layout = Layout::new(n);
    let parts = opts.exec.map_range(1 << n, |s| {
        let mut count = 0u64;
        layout.subtree(s as u64, &mut |_| count += 1);
        count
    });
    Ok(parts.into_iter().sum())
}

/// Whether the Betti numbers leave room for `Sq^k: H^j → H^{j+k}` with
/// `1 ≤ k ≤ j` (only `k = 1` unless `full_sq`). Complexes failing this are
/// skipped without any Steenrod computation.
pub fn may_carry_operation(betti: &BettiMap, full_sq: bool) -> bool {
    betti.iter().any(|(&j, _)| {
        j >= 1
            && if full_sq {
                (1..=j).any(|k| betti.contains_key(&(j + k)))
            } else {
                betti.contains_key(&(j + 1))
            }
    })
}

/// Reduced Betti numbers of a family, computed without building the complex.
pub fn family_betti(n: usize, family: u64) -> BettiMap {
    Layout::new(n).betti(family)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanHit {
    pub vertices: usize,
    pub facets: Vec<Vec<usize>>,
    pub entries: Vec<ProfileEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub max_vertices: usize,
    pub complexes: u64,
    /// Complexes that passed the Betti prefilter.
    pub candidates: u64,
    pub hits: Vec<ScanHit>,
}

/// All complexes on `[n]` with a nontrivial `Sq^1` (every `Sq^k` with `full_sq`).
pub fn scan_sq1(n: usize, opts: &EnumOptions) -> Result<ScanReport> {
    check_range(n, opts.allow_long)?;
    let layout = Layout::new(n);
    let full = opts.full_sq;
    let parts = opts.exec.map_range(1 << n, |s| -> Result<(u64, u64, Vec<ScanHit>)> {
        let mut count = 0;
        let mut candidates = Vec::new();
        layout.subtree(s as u64, &mut |f| {
            count += 1;
            if may_carry_operation(&layout.betti(f), full) {
                candidates.push(f);
            }
        });
        let mut hits = Vec::new();
        for &f in &candidates {
            let k = layout.complex(f);
            let profile = sq_profile_ops(&k, |op| full || op == 1)?;
            if !profile.is_empty() {
                hits.push(ScanHit {
                    vertices: n,
                    facets: k.facets().iter().map(|s| s.to_vec()).collect(),
                    entries: profile.entries(),
                });
            }
        }
        Ok((count, candidates.len() as u64, hits))
    });
    let mut report = ScanReport { max_vertices: n, complexes: 0, candidates: 0, hits: Vec::new() };
    for p in parts {
        let (count, cands, hits) = p?;
        report.complexes += count;
        report.candidates += cands;
        report.hits.extend(hits);
    }
    report.hits.sort_by(|a, b| (a.facets.len(), &a.facets).cmp(&(b.facets.len(), &b.facets)));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::betti;
    use crate::steenrod::sq_profile;
    use rand::seq::SliceRandom;
    use std::collections::HashSet;

    fn opts() -> EnumOptions {
        EnumOptions::default()
    }

    /// Oracle: every family of subsets of `[n]`, kept when it contains `∅` and is downward closed.
    fn brute_count(n: usize) -> usize {
        let subsets: Vec<u64> = (0..1u64 << n).collect();
        let mut count = 0;
        for fam in 0u64..1 << (1 << n) {
            let has = |s: u64| fam >> s & 1 == 1;
            if !has(0) {
                continue;
            }
            let closed = subsets.iter().filter(|&&s| has(s)).all(|&s| (0..n).all(|v| s >> v & 1 == 0 || has(s & !(1 << v))));
            if closed {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn counts_match_brute_force_and_dedekind() {
        for n in 1..=4 {
            assert_eq!(count_complexes(n, &opts()).unwrap() as usize, brute_count(n), "n={n}");
        }
        let expected = [2u64, 5, 19, 167, 7580];
        for (n, &c) in (1..=5).zip(&expected) {
            assert_eq!(count_complexes(n, &opts()).unwrap(), c);
        }
    }

    #[test]
    fn families_are_distinct_and_closed() {
        for n in 1..=4 {
            let fams = enumerate_families(n, &opts()).unwrap();
            let complexes: Vec<_> = enumerate_complexes(n, &opts()).unwrap().collect();
            let set: HashSet<_> = complexes.iter().map(|k| k.face_set().into_iter().collect::<std::collections::BTreeSet<_>>()).collect();
            assert_eq!(set.len(), fams.len());
            for k in &complexes {
                assert!(k.contains(Simplex::EMPTY));
                for s in k.all_faces() {
                    for v in s.vertices() {
                        assert!(k.contains(s.without(v)));
                    }
                }
            }
        }
        let two: Vec<_> = enumerate_complexes(2, &opts()).unwrap().collect();
        assert!(two.contains(&SimplicialComplex::empty(2)));
        assert!(two.contains(&crate::registry::simplex(1)));
    }

    #[test]
    fn parallel_order_matches_sequential() {
        let par = EnumOptions { exec: Execution::Parallel { jobs: 3 }, ..opts() };
        assert_eq!(enumerate_families(4, &par).unwrap(), enumerate_families(4, &opts()).unwrap());
    }

    #[test]
    fn range_guard() {
        assert!(matches!(count_complexes(0, &opts()), Err(Error::EnumerationRange { .. })));
        assert!(matches!(count_complexes(6, &opts()), Err(Error::EnumerationRange { n: 6, max: 5 })));
        let long = EnumOptions { allow_long: true, ..opts() };
        assert!(matches!(scan_sq1(7, &long), Err(Error::EnumerationRange { n: 7, max: 6 })));
    }

    #[test]
    fn fast_betti_matches_general() {
        for n in 1..=4 {
            for f in enumerate_families(n, &opts()).unwrap() {
                let k = family_to_complex(n, f);
                assert_eq!(family_betti(n, f), betti(&k, true));
            }
        }
    }

    #[test]
    fn prune_is_sound() {
        let mut fams = enumerate_families(5, &opts()).unwrap();
        fams.shuffle(&mut crate::corpus::rng(1));
        for &f in fams.iter().take(1000) {
            let k = family_to_complex(5, f);
            let b = betti(&k, true);
            assert_eq!(family_betti(5, f), b);
            if !may_carry_operation(&b, true) {
                assert!(sq_profile(&k).unwrap().is_empty());
            }
            if !may_carry_operation(&b, false) {
                assert!(!sq_profile(&k).unwrap().has_operation(1));
            }
        }
    }

    #[test]
    fn small_scans_are_empty() {
        for n in 1..=4 {
            let r = scan_sq1(n, &opts()).unwrap();
            assert!(r.hits.is_empty());
        }
        let full = EnumOptions { full_sq: true, ..opts() };
        assert!(scan_sq1(4, &full).unwrap().hits.is_empty());
    }
}
