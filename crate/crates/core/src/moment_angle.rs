//! Cohomology and Steenrod action of the moment-angle complex `Z_K` through the
//! splitting `H̃*(Z_K) ≅ ⊕_{J ∉ K} Σ^{|J|+1} H̃*(K_J)`, which respects the
//! Steenrod action summand by summand.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cohomology::{betti, BettiMap, CohomologyBasis};
use crate::complex::{full_mask, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::steenrod::{profile_from_basis, sq_matrix, ProfileEntry, SteenrodMatrix, SteenrodProfile};

pub const DEFAULT_VERTEX_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZkOptions {
    pub vertex_cap: usize,
    pub exec: Execution,
}

impl Default for ZkOptions {
    fn default() -> Self {
        ZkOptions { vertex_cap: DEFAULT_VERTEX_CAP, exec: Execution::Sequential }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HochsterEntry {
    pub subset: Simplex,
    /// Reduced Betti numbers of `K_J`, degree −1 included.
    pub betti: BettiMap,
}

/// One entry per non-face `J`, ordered by `(|J|, bitmask)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HochsterTable {
    pub entries: Vec<HochsterEntry>,
}

impl HochsterTable {
    /// `dim H^n(Z_K) = [n = 0] + Σ_J b̃^{n−|J|−1}(K_J)`.
    pub fn za_betti(&self) -> BettiMap {
        let mut out = BettiMap::from([(0, 1)]);
        for e in &self.entries {
            let shift = e.subset.len() as isize + 1;
            for (&d, &b) in &e.betti {
                *out.entry(d + shift).or_insert(0) += b;
            }
        }
        out
    }
}

fn check_cap(k: &SimplicialComplex, cap: usize) -> Result<()> {
    if k.num_vertices() > cap {
        Err(Error::VertexCapExceeded { m: k.num_vertices(), cap })
    } else {
        Ok(())
    }
}

/// Non-faces of `K` as vertex masks ordered by `(|J|, mask)`.
pub fn non_faces(k: &SimplicialComplex) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=full_mask(k.num_vertices()))
        .filter(|&j| !k.contains(Simplex::from_mask(j)))
        .collect();
    out.sort_by_key(|&j| (j.count_ones(), j));
    out
}

pub fn hochster_table(k: &SimplicialComplex, opts: &ZkOptions) -> Result<HochsterTable> {
    check_cap(k, opts.vertex_cap)?;
    let subsets = non_faces(k);
    let entries = opts.exec.map(&subsets, |&j| HochsterEntry {
        subset: Simplex::from_mask(j),
        betti: betti(&k.full_subcomplex_mask(j), true),
    });
    Ok(HochsterTable { entries })
}

pub fn za_betti(k: &SimplicialComplex, opts: &ZkOptions) -> Result<BettiMap> {
    Ok(hochster_table(k, opts)?.za_betti())
}

/// Nonzero Steenrod matrices of one summand `K_J`, in `K_J`'s own degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZkBlock {
    pub subset: Simplex,
    pub matrices: Vec<SteenrodMatrix>,
}

impl ZkBlock {
    pub fn shift(&self) -> isize {
        self.subset.len() as isize + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZkSqProfile {
    pub blocks: Vec<ZkBlock>,
    /// Ranks summed over `J`, keyed by `(n, Z_K` source degree`)`.
    pub aggregate: SteenrodProfile,
}

impl ZkSqProfile {
    /// Entries with `n > ⌊dim K / 2⌋`.
    pub fn dim_bound_violations(&self, dim: isize) -> Vec<ProfileEntry> {
        let bound = (dim.max(0) / 2) as usize;
        self.aggregate.entries().into_iter().filter(|e| e.n > bound).collect()
    }

    /// `Sq^1` entries on classes of degree at most 7.
    pub fn low_degree_sq1_violations(&self) -> Vec<ProfileEntry> {
        self.aggregate.entries().into_iter().filter(|e| e.n == 1 && e.degree <= 7).collect()
    }
}

pub fn za_sq_profile(k: &SimplicialComplex, opts: &ZkOptions) -> Result<ZkSqProfile> {
    za_sq_profile_ops(k, opts, |_| true)
}

/// As [`za_sq_profile`] restricted to the operations selected by `keep`.
pub fn za_sq_profile_ops(
    k: &SimplicialComplex,
    opts: &ZkOptions,
    keep: impl Fn(usize) -> bool + Sync + Send,
) -> Result<ZkSqProfile> {
    check_cap(k, opts.vertex_cap)?;
    // Only summands with cohomology in two degrees ≥ 1 can carry an operation.
    let subsets: Vec<u64> = non_faces(k).into_iter().filter(|&j| j.count_ones() >= 4).collect();
    let results = opts.exec.map(&subsets, |&j| -> Result<Option<ZkBlock>> {
        let sub = k.full_subcomplex_mask(j);
        if sub.dimension() < 2 {
            return Ok(None);
        }
        let basis = CohomologyBasis::new(&sub, true);
        let profile = profile_from_basis(&basis, &keep)?;
        if profile.is_empty() {
            return Ok(None);
        }
        let matrices = profile
            .entries()
            .iter()
            .map(|e| sq_matrix(&basis, e.n, e.degree))
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(ZkBlock { subset: Simplex::from_mask(j), matrices }))
    });
    let mut blocks = Vec::new();
    let mut aggregate = SteenrodProfile::new();
    for r in results {
        if let Some(block) = r? {
            for m in &block.matrices {
                aggregate.add(m.n, m.source_degree + block.shift(), m.rank());
            }
            blocks.push(block);
        }
    }
    Ok(ZkSqProfile { blocks, aggregate })
}

/// Outcome of an invariant check; `violations` should always be empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantCheck {
    pub violations: Vec<ProfileEntry>,
}

impl InvariantCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `Sq^n = 0` on `H*(Z_K)` for `n > ⌊dim K / 2⌋`.
pub fn sq_dim_bound_check(k: &SimplicialComplex, opts: &ZkOptions) -> Result<InvariantCheck> {
    let p = za_sq_profile(k, opts)?;
    Ok(InvariantCheck { violations: p.dim_bound_violations(k.dimension()) })
}

/// `Sq^1` vanishes on `H^{≤7}(Z_K)`.
pub fn low_degree_sq1_check(k: &SimplicialComplex, opts: &ZkOptions) -> Result<InvariantCheck> {
    let p = za_sq_profile_ops(k, opts, |n| n == 1)?;
    Ok(InvariantCheck { violations: p.low_degree_sq1_violations() })
}

/// Per-size histogram of Hochster entries, for reports.
pub fn entries_by_size(table: &HochsterTable) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for e in &table.entries {
        *out.entry(e.subset.len()).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral_join::{substitution, LabelingMode};
    use crate::steenrod::sq_profile;
    use crate::{corpus, registry};

    fn opts() -> ZkOptions {
        ZkOptions::default()
    }

    #[test]
    fn hochster_examples() {
        let t = hochster_table(&registry::points(2), &opts()).unwrap();
        assert_eq!(t.entries, vec![HochsterEntry { subset: Simplex::from_mask(0b11), betti: BettiMap::from([(0, 1)]) }]);

        let t = hochster_table(&registry::p26(), &opts()).unwrap();
        assert_eq!(entries_by_size(&t), BTreeMap::from([(3, 10), (4, 15), (5, 6), (6, 1)]));
        for e in &t.entries {
            let want = if e.subset.len() == 6 { BettiMap::from([(1, 1), (2, 1)]) } else { BettiMap::from([(1, 1)]) };
            assert_eq!(e.betti, want, "{}", e.subset);
        }

        let t = hochster_table(&registry::point_with_ghost(), &opts()).unwrap();
        assert_eq!(
            t.entries,
            vec![
                HochsterEntry { subset: Simplex::from_mask(0b10), betti: BettiMap::from([(-1, 1)]) },
                HochsterEntry { subset: Simplex::from_mask(0b11), betti: BettiMap::new() },
            ]
        );
    }

    #[test]
    fn betti_examples() {
        let b = |k: &SimplicialComplex| za_betti(k, &opts()).unwrap();
        assert_eq!(b(&registry::p26()), BettiMap::from([(0, 1), (5, 10), (6, 15), (7, 6), (8, 1), (9, 1)]));
        assert_eq!(b(&registry::points(2)), BettiMap::from([(0, 1), (3, 1)]));
        for n in 1..=3 {
            assert_eq!(b(&registry::boundary(n)), BettiMap::from([(0, 1), (2 * n as isize + 1, 1)]));
        }
        assert_eq!(b(&registry::point_with_ghost()), BettiMap::from([(0, 1), (1, 1)]));
        assert_eq!(b(&registry::simplex(3)), BettiMap::from([(0, 1)]));
    }

    #[test]
    fn additivity() {
        let mut rng = corpus::rng(17);
        for _ in 0..10 {
            let k = corpus::random_small_complex(&mut rng, 7);
            let t = hochster_table(&k, &opts()).unwrap();
            let total: usize = za_betti(&k, &opts()).unwrap().values().sum();
            let summed: usize = t.entries.iter().flat_map(|e| e.betti.values()).sum();
            assert_eq!(total, 1 + summed);
        }
    }

    #[test]
    fn profiles() {
        let p = za_sq_profile(&registry::p26(), &opts()).unwrap();
        assert_eq!(p.aggregate.entries(), vec![ProfileEntry { n: 1, degree: 8, rank: 1 }]);
        assert_eq!(p.blocks.len(), 1);
        assert_eq!(p.blocks[0].subset, Simplex::from_mask(0b111111));
        for k in [registry::cycle(6), registry::boundary(3), registry::path(5)] {
            assert!(za_sq_profile(&k, &opts()).unwrap().aggregate.is_empty());
        }
    }

    #[test]
    fn block_aggregation_is_consistent() {
        let mut rng = corpus::rng(8);
        for _ in 0..3 {
            let k = corpus::with_planted_p26(&mut rng, 2);
            let p = za_sq_profile(&k, &opts()).unwrap();
            let mut rebuilt = SteenrodProfile::new();
            for b in &p.blocks {
                let direct = sq_profile(&k.full_subcomplex_mask(b.subset.mask())).unwrap();
                rebuilt.merge(&direct.shifted(b.shift()));
            }
            assert_eq!(rebuilt, p.aggregate);
            assert!(p.aggregate.has_operation(1));
        }
    }

    #[test]
    fn corollaries() {
        for k in [registry::p26(), registry::cycle(6), registry::boundary(4), registry::points(2)] {
            assert!(sq_dim_bound_check(&k, &opts()).unwrap().passed());
            assert!(low_degree_sq1_check(&k, &opts()).unwrap().passed());
        }
        let mut rng = corpus::rng(2);
        for _ in 0..20 {
            let k = corpus::random_complex(&mut rng, 6, 4);
            assert!(low_degree_sq1_check(&k, &opts()).unwrap().passed());
        }
    }

    #[test]
    fn substitution_keeps_summand_operations() {
        let args = [registry::p26(), registry::points(1)];
        let sub = substitution(&registry::simplex(1), &args, LabelingMode::Paper).unwrap();
        assert!(sq_profile(&sub).unwrap().is_empty());
        let p = za_sq_profile(&sub, &opts()).unwrap();
        assert!(p.aggregate.has_operation(1));
    }

    #[test]
    fn cap_and_parallel() {
        let big = registry::points(17);
        assert!(matches!(hochster_table(&big, &opts()), Err(Error::VertexCapExceeded { m: 17, cap: 16 })));
        let par = ZkOptions { exec: Execution::Parallel { jobs: 2 }, ..opts() };
        let k = registry::p26();
        assert_eq!(hochster_table(&k, &par).unwrap(), hochster_table(&k, &opts()).unwrap());
        assert_eq!(za_sq_profile(&k, &par).unwrap(), za_sq_profile(&k, &opts()).unwrap());
    }
}
