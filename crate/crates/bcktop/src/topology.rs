//! The coset topology induced on a finite module by a decreasing chain of
//! submodules, plus the finite-space notions (openness, continuity,
//! homeomorphism) needed to check its properties mechanically.
//!
//! A set `V` is open iff every `v` in `V` has some coset `v + M_n` inside
//! `V`; the cosets `x + M_n` form a base. Open families are materialized by
//! exhaustive subset enumeration for carriers up to [`carrier_cap`] elements;
//! larger spaces (products) answer openness queries through the base alone.

use crate::module::{BckModule, ModuleError, QuotientModule, Submodule, SubmoduleEmbedding};
use crate::set::{PointSet, MAX_POINTS};
use thiserror::Error;

pub const DEFAULT_MAX_CARRIER: usize = 16;

/// Enumeration cap on carrier size; `BCKTOP_MAX_CARRIER` overrides the
/// default of 16.
pub fn carrier_cap() -> usize {
    std::env::var("BCKTOP_MAX_CARRIER")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_CARRIER)
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TopologyError {
    #[error("carrier of size {size} exceeds the enumeration cap {cap}")]
    CarrierTooLarge { size: usize, cap: usize },
    #[error("chain of submodules is empty")]
    EmptyChain,
    #[error("chain entry {0} is not contained in its predecessor")]
    NotDecreasing(usize),
    #[error("open-set family is not materialized for this space")]
    NotMaterialized,
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// A decreasing chain of submodules `M_1 ⊇ M_2 ⊇ …`, stored by its
/// stabilizing prefix: indices past the end reuse the last entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dss {
    chain: Vec<Submodule>,
}

impl Dss {
    pub fn new(module: &BckModule, chain: Vec<Submodule>) -> Result<Dss, TopologyError> {
        if chain.is_empty() {
            return Err(TopologyError::EmptyChain);
        }
        for (i, s) in chain.iter().enumerate() {
            Submodule::new(module, s.elements())?;
            if i > 0 && !s.elements().is_subset(chain[i - 1].elements()) {
                return Err(TopologyError::NotDecreasing(i + 1));
            }
        }
        Ok(Dss { chain })
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        false // validated nonempty
    }

    pub fn chain(&self) -> &[Submodule] {
        &self.chain
    }

    /// 1-based entry `M_n`; beyond the stored prefix the chain has stabilized.
    pub fn entry(&self, n: usize) -> &Submodule {
        assert!(n >= 1);
        &self.chain[(n - 1).min(self.chain.len() - 1)]
    }

    /// The smallest (final) submodule of the chain.
    pub fn tail(&self) -> &Submodule {
        self.chain.last().unwrap()
    }
}

/// A finite topological space on carrier `{0, .., size-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTopology {
    size: usize,
    base: Vec<PointSet>,
    opens: Option<Vec<PointSet>>,
}

impl FiniteTopology {
    fn materialize_from_base(size: usize, base: &[PointSet]) -> Vec<PointSet> {
        (0u128..1 << size)
            .map(PointSet::from_mask)
            .filter(|&v| base_open(base, v))
            .collect()
    }

    pub fn from_base(size: usize, mut base: Vec<PointSet>) -> FiniteTopology {
        base.sort_unstable();
        base.dedup();
        let opens = if size <= carrier_cap() {
            Some(FiniteTopology::materialize_from_base(size, &base))
        } else {
            None
        };
        FiniteTopology { size, base, opens }
    }

    pub fn discrete(n: usize) -> FiniteTopology {
        FiniteTopology::from_base(n, (0..n).map(PointSet::singleton).collect())
    }

    pub fn indiscrete(n: usize) -> FiniteTopology {
        FiniteTopology::from_base(n, vec![PointSet::full(n)])
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn base(&self) -> &[PointSet] {
        &self.base
    }

    /// The full open family, ascending in mask order; errors when the
    /// carrier was too large to enumerate.
    pub fn opens(&self) -> Result<&[PointSet], TopologyError> {
        self.opens.as_deref().ok_or(TopologyError::NotMaterialized)
    }

    pub fn is_open(&self, v: PointSet) -> bool {
        match &self.opens {
            Some(opens) => opens.binary_search(&v).is_ok(),
            None => base_open(&self.base, v),
        }
    }

    pub fn is_closed(&self, v: PointSet) -> bool {
        self.is_open(v.complement(self.size))
    }

    pub fn is_clopen(&self, v: PointSet) -> bool {
        self.is_open(v) && self.is_closed(v)
    }

    /// Connected iff the only clopen sets are the empty set and the carrier.
    pub fn is_connected(&self) -> Result<bool, TopologyError> {
        let full = PointSet::full(self.size);
        Ok(self
            .opens()?
            .iter()
            .all(|&v| !self.is_closed(v) || v.is_empty() || v == full))
    }
}

/// Base criterion for openness: every point has a basic neighborhood inside.
fn base_open(base: &[PointSet], v: PointSet) -> bool {
    v.iter()
        .all(|p| base.iter().any(|&b| b.contains(p) && b.is_subset(v)))
}

/// The coset topology on a module induced by a decreasing chain.
#[derive(Clone, Debug)]
pub struct BaigTopology {
    module: BckModule,
    dss: Dss,
    space: FiniteTopology,
}

impl BaigTopology {
    /// Enumerate all open sets by the membership criterion and cross-check
    /// them against the unions of the coset base.
    pub fn build(module: &BckModule, dss: &Dss) -> Result<BaigTopology, TopologyError> {
        let dss = Dss::new(module, dss.chain().to_vec())?;
        let n = module.size();
        let cap = carrier_cap();
        if n > cap {
            return Err(TopologyError::CarrierTooLarge { size: n, cap });
        }
        let horizon = dss.len();
        let open_by_criterion = |v: PointSet| {
            v.iter().all(|p| {
                (1..=horizon).any(|i| dss.entry(i).coset(module, p).is_subset(v))
            })
        };
        let opens: Vec<PointSet> = (0u128..1 << n)
            .map(PointSet::from_mask)
            .filter(|&v| open_by_criterion(v))
            .collect();
        let dss_ref = &dss;
        let mut base: Vec<PointSet> = (0..n)
            .flat_map(|x| (1..=horizon).map(move |i| dss_ref.entry(i).coset(module, x)))
            .collect();
        base.sort_unstable();
        base.dedup();
        // second route: the same family must arise as unions of base cosets
        let from_base = FiniteTopology::materialize_from_base(n, &base);
        assert_eq!(
            opens, from_base,
            "membership criterion and base closure disagree"
        );
        Ok(BaigTopology {
            module: module.clone(),
            dss,
            space: FiniteTopology {
                size: n,
                base,
                opens: Some(opens),
            },
        })
    }

    pub fn module(&self) -> &BckModule {
        &self.module
    }

    pub fn dss(&self) -> &Dss {
        &self.dss
    }

    pub fn space(&self) -> &FiniteTopology {
        &self.space
    }

    pub fn opens(&self) -> &[PointSet] {
        self.space.opens.as_deref().expect("always materialized")
    }

    pub fn is_open(&self, v: PointSet) -> bool {
        self.space.is_open(v)
    }

    pub fn is_closed(&self, v: PointSet) -> bool {
        self.space.is_closed(v)
    }

    pub fn is_clopen(&self, v: PointSet) -> bool {
        self.space.is_clopen(v)
    }

    pub fn is_connected(&self) -> bool {
        self.space.is_connected().expect("always materialized")
    }

    /// `m ↦ -m`.
    pub fn negation_map(&self) -> FiniteMap {
        FiniteMap {
            domain: self.space.clone(),
            codomain: self.space.clone(),
            map: (0..self.module.size()).map(|m| self.module.neg(m)).collect(),
        }
    }

    /// `m ↦ a + m`.
    pub fn translation_map(&self, a: usize) -> FiniteMap {
        FiniteMap {
            domain: self.space.clone(),
            codomain: self.space.clone(),
            map: (0..self.module.size()).map(|m| self.module.add(a, m)).collect(),
        }
    }

    /// `m ↦ x·m`.
    pub fn scalar_map(&self, x: usize) -> FiniteMap {
        FiniteMap {
            domain: self.space.clone(),
            codomain: self.space.clone(),
            map: (0..self.module.size()).map(|m| self.module.act(x, m)).collect(),
        }
    }

    /// Indicator of a submodule into the discrete 2-point space.
    pub fn characteristic_map(&self, n: &Submodule) -> FiniteMap {
        FiniteMap {
            domain: self.space.clone(),
            codomain: FiniteTopology::discrete(2),
            map: (0..self.module.size())
                .map(|m| usize::from(n.contains(m)))
                .collect(),
        }
    }

    /// `(m, m') ↦ m + m'` with the product topology on the domain.
    pub fn addition_map(&self) -> Result<FiniteMap, TopologyError> {
        let product = product_topology(&self.space, &self.space)?;
        let s = self.module.size();
        let map = (0..s * s).map(|p| self.module.add(p / s, p % s)).collect();
        Ok(FiniteMap {
            domain: product,
            codomain: self.space.clone(),
            map,
        })
    }
}

/// Product space; point `(i, j)` is index `i * |T2| + j`. The open family
/// is materialized only for small products, but openness queries through
/// the rectangle base work at any size up to the bitmask limit.
pub fn product_topology(
    t1: &FiniteTopology,
    t2: &FiniteTopology,
) -> Result<FiniteTopology, TopologyError> {
    let size = t1.size * t2.size;
    if size > MAX_POINTS {
        return Err(TopologyError::CarrierTooLarge {
            size,
            cap: MAX_POINTS,
        });
    }
    let base = t1
        .base
        .iter()
        .flat_map(|&b1| t2.base.iter().map(move |&b2| (b1, b2)))
        .map(|(b1, b2)| {
            b1.iter()
                .flat_map(|i| b2.iter().map(move |j| i * t2.size + j))
                .collect()
        })
        .collect();
    Ok(FiniteTopology::from_base(size, base))
}

/// A submodule with the topology built from the intersected chain
/// `K ∩ M_n`, on the re-indexed carrier of `K`.
#[derive(Clone, Debug)]
pub struct InducedTopology {
    pub embedding: SubmoduleEmbedding,
    pub dss: Dss,
    pub topology: BaigTopology,
}

pub fn induced_topology(t: &BaigTopology, k: &Submodule) -> Result<InducedTopology, TopologyError> {
    let k = Submodule::new(t.module(), k.elements())?;
    let embedding = SubmoduleEmbedding::new(t.module(), &k);
    let chain = t
        .dss()
        .chain()
        .iter()
        .map(|mn| {
            let inter = k.elements().intersection(mn.elements());
            Submodule::new(&embedding.module, embedding.pull_set(inter))
                .expect("intersection of submodules is a submodule")
        })
        .collect();
    let dss = Dss::new(&embedding.module, chain)?;
    let topology = BaigTopology::build(&embedding.module, &dss)?;
    Ok(InducedTopology {
        embedding,
        dss,
        topology,
    })
}

/// The subspace opens `{O ∩ K}` of `t` on the re-indexed carrier of `K`,
/// for comparison with the induced construction.
pub fn relative_opens(t: &BaigTopology, k: &Submodule) -> Result<Vec<PointSet>, TopologyError> {
    let k = Submodule::new(t.module(), k.elements())?;
    let embedding = SubmoduleEmbedding::new(t.module(), &k);
    let mut opens: Vec<PointSet> = t
        .opens()
        .iter()
        .map(|&o| embedding.pull_set(o.intersection(k.elements())))
        .collect();
    opens.sort_unstable();
    opens.dedup();
    Ok(opens)
}

/// The factor module `M/K` with the topology built from `(M_n + K)/K`.
#[derive(Clone, Debug)]
pub struct FactorTopology {
    pub quotient: QuotientModule,
    pub dss: Dss,
    pub topology: BaigTopology,
}

pub fn factor_topology(t: &BaigTopology, k: &Submodule) -> Result<FactorTopology, TopologyError> {
    let quotient = QuotientModule::new(t.module(), k)?;
    let chain = t
        .dss()
        .chain()
        .iter()
        .map(|mn| {
            Submodule::new(quotient.module(), quotient.project_set(mn.elements()))
                .expect("projection of a submodule is a submodule")
        })
        .collect();
    let dss = Dss::new(quotient.module(), chain)?;
    let topology = BaigTopology::build(quotient.module(), &dss)?;
    Ok(FactorTopology {
        quotient,
        dss,
        topology,
    })
}

/// A total map between two finite spaces.
#[derive(Clone, Debug)]
pub struct FiniteMap {
    domain: FiniteTopology,
    codomain: FiniteTopology,
    map: Vec<usize>,
}

impl FiniteMap {
    pub fn new(domain: FiniteTopology, codomain: FiniteTopology, map: Vec<usize>) -> FiniteMap {
        assert_eq!(map.len(), domain.size);
        assert!(map.iter().all(|&v| v < codomain.size));
        FiniteMap {
            domain,
            codomain,
            map,
        }
    }

    pub fn domain(&self) -> &FiniteTopology {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteTopology {
        &self.codomain
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, m: usize) -> usize {
        self.map[m]
    }

    pub fn image_of_set(&self, s: PointSet) -> PointSet {
        s.iter().map(|m| self.map[m]).collect()
    }

    pub fn preimage_of_set(&self, s: PointSet) -> PointSet {
        (0..self.domain.size)
            .filter(|&m| s.contains(self.map[m]))
            .collect()
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = PointSet::EMPTY;
        for &v in &self.map {
            seen.insert(v);
        }
        self.domain.size == self.codomain.size && seen.len() == self.codomain.size
    }

    /// Preimages of basic opens are open; preimage commutes with unions, so
    /// this is continuity.
    pub fn is_continuous(&self) -> bool {
        self.codomain
            .base
            .iter()
            .all(|&b| self.domain.is_open(self.preimage_of_set(b)))
    }

    /// Every basic neighborhood of `f(m)` pulls back to some basic
    /// neighborhood of `m` mapping into it.
    pub fn is_continuous_at(&self, m: usize) -> bool {
        let fm = self.map[m];
        self.codomain
            .base
            .iter()
            .filter(|b| b.contains(fm))
            .all(|&b| {
                self.domain
                    .base
                    .iter()
                    .any(|&v| v.contains(m) && self.image_of_set(v).is_subset(b))
            })
    }

    /// Images of basic opens are open; image commutes with unions.
    pub fn is_open_map(&self) -> bool {
        self.domain
            .base
            .iter()
            .all(|&b| self.codomain.is_open(self.image_of_set(b)))
    }

    pub fn is_homeomorphism(&self) -> bool {
        // for a bijection, continuity of the inverse is openness of the map
        self.is_bijective() && self.is_continuous() && self.is_open_map()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::AbelianGroup;

    fn m4() -> BckModule {
        BckModule::scalar_over_c2(AbelianGroup::cyclic(4))
    }

    fn m2() -> BckModule {
        BckModule::scalar_over_c2(AbelianGroup::cyclic(2))
    }

    fn sub(m: &BckModule, elems: &[usize]) -> Submodule {
        Submodule::new(m, elems.iter().copied().collect()).unwrap()
    }

    fn dss(m: &BckModule, chains: &[&[usize]]) -> Dss {
        Dss::new(m, chains.iter().map(|c| sub(m, c)).collect()).unwrap()
    }

    fn opens_strings(t: &BaigTopology) -> Vec<String> {
        t.opens().iter().map(|o| o.to_string()).collect()
    }

    #[test]
    fn z4_mod_even_chain_gives_four_opens() {
        let m = m4();
        let t = BaigTopology::build(&m, &dss(&m, &[&[0, 1, 2, 3], &[0, 2]])).unwrap();
        assert_eq!(opens_strings(&t), vec!["{}", "{0,2}", "{1,3}", "{0,1,2,3}"]);
    }

    #[test]
    fn constant_full_chain_is_indiscrete() {
        let m = m4();
        let t = BaigTopology::build(&m, &dss(&m, &[&[0, 1, 2, 3]])).unwrap();
        assert_eq!(opens_strings(&t), vec!["{}", "{0,1,2,3}"]);
        assert!(t.is_connected());
    }

    #[test]
    fn chain_reaching_zero_is_discrete() {
        let m = m4();
        let t = BaigTopology::build(&m, &dss(&m, &[&[0, 1, 2, 3], &[0, 2], &[0]])).unwrap();
        assert_eq!(t.opens().len(), 16);
        assert!(!t.is_connected());
    }

    #[test]
    fn clopen_and_connectedness_queries() {
        let m = m4();
        let t = BaigTopology::build(&m, &dss(&m, &[&[0, 1, 2, 3], &[0, 2]])).unwrap();
        assert!(t.is_clopen([0, 2].into_iter().collect()));
        assert!(t.is_clopen(PointSet::EMPTY));
        assert!(!t.is_open(PointSet::singleton(0)));
        assert!(!t.is_connected());
    }

    #[test]
    fn dss_must_be_decreasing_and_nonempty() {
        let m = m4();
        assert_eq!(Dss::new(&m, vec![]).unwrap_err(), TopologyError::EmptyChain);
        let increasing = vec![sub(&m, &[0]), sub(&m, &[0, 2])];
        assert_eq!(
            Dss::new(&m, increasing).unwrap_err(),
            TopologyError::NotDecreasing(2)
        );
    }

    #[test]
    fn carrier_cap_is_enforced() {
        let m = BckModule::scalar_over_c2(AbelianGroup::product(
            &AbelianGroup::cyclic(8),
            &AbelianGroup::cyclic(4),
        ));
        let d = Dss::new(&m, vec![Submodule::full(&m)]).unwrap();
        assert!(matches!(
            BaigTopology::build(&m, &d),
            Err(TopologyError::CarrierTooLarge { size: 32, .. })
        ));
    }

    #[test]
    fn negation_translation_tables() {
        let m = m4();
        let t = BaigTopology::build(&m, &dss(&m, &[&[0, 1, 2, 3], &[0, 2]])).unwrap();
        assert_eq!(t.negation_map().map(), &[0, 3, 2, 1]);
        assert_eq!(t.translation_map(2).map(), &[2, 3, 0, 1]);
        assert_eq!(t.scalar_map(0).map(), &[0, 0, 0, 0]);
        assert!(t.negation_map().is_homeomorphism());
        for a in 0..4 {
            assert!(t.translation_map(a).is_homeomorphism());
        }
        for x in 0..2 {
            assert!(t.scalar_map(x).is_continuous());
        }
    }

    #[test]
    fn characteristic_map_continuous_iff_submodule_clopen() {
        let m = m4();
        let t = BaigTopology::build(&m, &dss(&m, &[&[0, 1, 2, 3], &[0, 2]])).unwrap();
        for s in m.submodules() {
            assert_eq!(
                t.characteristic_map(&s).is_continuous(),
                t.is_clopen(s.elements())
            );
        }
        // {0} does not contain a chain entry, so it is not clopen and its
        // characteristic map is discontinuous here
        assert!(!t.characteristic_map(&sub(&m, &[0])).is_continuous());
        assert!(t.characteristic_map(&sub(&m, &[0, 2])).is_continuous());
    }

    #[test]
    fn mod2_projection_is_continuous() {
        let m_src = m4();
        let m_dst = m2();
        let t_src = BaigTopology::build(&m_src, &dss(&m_src, &[&[0, 1, 2, 3], &[0, 2]])).unwrap();
        let t_dst = BaigTopology::build(&m_dst, &dss(&m_dst, &[&[0, 1], &[0]])).unwrap();
        let f = FiniteMap::new(t_src.space().clone(), t_dst.space().clone(), vec![0, 1, 0, 1]);
        assert!(f.is_continuous());
        assert!(f.is_continuous_at(0));
    }

    #[test]
    fn constant_map_from_discrete_is_continuous_but_not_open() {
        let m = m4();
        let coarse = BaigTopology::build(&m, &dss(&m, &[&[0, 1, 2, 3], &[0, 2]])).unwrap();
        let f = FiniteMap::new(FiniteTopology::discrete(4), coarse.space().clone(), vec![0; 4]);
        assert!(f.is_continuous());
        assert!(!f.is_open_map());
    }

    #[test]
    fn product_of_indiscrete_and_discrete() {
        let ind = product_topology(&FiniteTopology::indiscrete(4), &FiniteTopology::indiscrete(4))
            .unwrap();
        assert_eq!(ind.opens().unwrap().len(), 2);
        let disc =
            product_topology(&FiniteTopology::discrete(2), &FiniteTopology::discrete(2)).unwrap();
        assert_eq!(disc.opens().unwrap().len(), 16);
    }

    #[test]
    fn product_opens_closed_under_union_and_intersection() {
        let m = m4();
        let t = BaigTopology::build(&m, &dss(&m, &[&[0, 1, 2, 3], &[0, 2]])).unwrap();
        let p = product_topology(t.space(), t.space()).unwrap();
        assert_eq!(p.size(), 16);
        assert_eq!(p.base().len(), 9);
        let opens = p.opens().unwrap().to_vec();
        for &a in &opens {
            for &b in &opens {
                assert!(p.is_open(a.union(b)));
                assert!(p.is_open(a.intersection(b)));
            }
        }
    }

    #[test]
    fn addition_is_continuous_for_product_topology() {
        let m = m4();
        let t = BaigTopology::build(&m, &dss(&m, &[&[0, 1, 2, 3], &[0, 2]])).unwrap();
        let add = t.addition_map().unwrap();
        // the pair (1, 2) at index 1*4+2 sums to 3
        assert_eq!(add.apply(6), 3);
        assert!(add.is_continuous());
    }

    #[test]
    fn induced_topology_examples() {
        let m = m4();
        let t = BaigTopology::build(&m, &dss(&m, &[&[0, 1, 2, 3], &[0, 2]])).unwrap();

        let ind = induced_topology(&t, &sub(&m, &[0, 2])).unwrap();
        let pushed: Vec<String> = ind
            .topology
            .opens()
            .iter()
            .map(|&o| ind.embedding.push_set(o).to_string())
            .collect();
        assert_eq!(pushed, vec!["{}", "{0,2}"]);

        let point = induced_topology(&t, &sub(&m, &[0])).unwrap();
        assert_eq!(point.topology.opens().len(), 2);

        let full = induced_topology(&t, &Submodule::full(&m)).unwrap();
        assert_eq!(full.topology.opens(), t.opens());
    }

    #[test]
    fn induced_equals_relative_opens() {
        let m = m4();
        let t = BaigTopology::build(&m, &dss(&m, &[&[0, 1, 2, 3], &[0, 2]])).unwrap();
        for k in m.submodules() {
            let ind = induced_topology(&t, &k).unwrap();
            let rel = relative_opens(&t, &k).unwrap();
            assert_eq!(ind.topology.opens(), rel.as_slice());
        }
    }

    #[test]
    fn factor_topology_examples() {
        let m = m4();
        let t = BaigTopology::build(&m, &dss(&m, &[&[0, 1, 2, 3], &[0, 2]])).unwrap();

        let f = factor_topology(&t, &sub(&m, &[0, 2])).unwrap();
        assert_eq!(f.quotient.size(), 2);
        assert_eq!(f.topology.opens().len(), 4); // discrete on 2 points

        let triv = factor_topology(&t, &sub(&m, &[0])).unwrap();
        assert_eq!(triv.topology.opens(), t.opens());

        let whole = factor_topology(&t, &Submodule::full(&m)).unwrap();
        assert_eq!(whole.quotient.size(), 1);
    }
}
