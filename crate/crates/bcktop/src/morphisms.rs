//! Homomorphisms between modules carrying coset topologies: compatibility
//! and strictness with respect to the two chains, the induced maps on
//! quotients, and the checkable form of every claim about them.

use crate::module::{BckModule, ModuleError, ModuleHom, QuotientModule, Submodule, SubmoduleEmbedding};
use crate::set::PointSet;
use crate::topology::{factor_topology, induced_topology, BaigTopology, Dss, FiniteMap, TopologyError};
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MorphismError {
    #[error("homomorphism is not compatible with the chains")]
    NotCompatible,
    #[error("chain is over a different module than the homomorphism end")]
    ChainModuleMismatch,
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

/// An X-homomorphism together with a chain on each end and the topologies
/// those chains induce.
#[derive(Clone, Debug)]
pub struct TopologizedHom {
    hom: ModuleHom,
    source_dss: Dss,
    target_dss: Dss,
    source_topology: BaigTopology,
    target_topology: BaigTopology,
}

impl TopologizedHom {
    pub fn new(hom: ModuleHom, source_dss: Dss, target_dss: Dss) -> Result<TopologizedHom, MorphismError> {
        let source_topology = BaigTopology::build(hom.source(), &source_dss)?;
        let target_topology = BaigTopology::build(hom.target(), &target_dss)?;
        Ok(TopologizedHom {
            hom,
            source_dss,
            target_dss,
            source_topology,
            target_topology,
        })
    }

    /// Reuse already-built topologies; they must match the chains.
    pub fn from_prebuilt(
        hom: ModuleHom,
        source_topology: &BaigTopology,
        target_topology: &BaigTopology,
    ) -> Result<TopologizedHom, MorphismError> {
        if source_topology.module() != hom.source() || target_topology.module() != hom.target() {
            return Err(MorphismError::ChainModuleMismatch);
        }
        Ok(TopologizedHom {
            hom,
            source_dss: source_topology.dss().clone(),
            target_dss: target_topology.dss().clone(),
            source_topology: source_topology.clone(),
            target_topology: target_topology.clone(),
        })
    }

    pub fn hom(&self) -> &ModuleHom {
        &self.hom
    }

    pub fn source_dss(&self) -> &Dss {
        &self.source_dss
    }

    pub fn target_dss(&self) -> &Dss {
        &self.target_dss
    }

    pub fn source_topology(&self) -> &BaigTopology {
        &self.source_topology
    }

    pub fn target_topology(&self) -> &BaigTopology {
        &self.target_topology
    }

    /// Index past which both chains have stabilized; set equalities repeat
    /// verbatim beyond it, so it bounds every "for all n" check.
    pub fn horizon(&self) -> usize {
        self.source_dss.len().max(self.target_dss.len())
    }

    /// `f(M_n) ⊆ M'_n` for every n.
    pub fn is_compatible(&self) -> bool {
        self.compatibility_witness().is_none()
    }

    pub fn compatibility_witness(&self) -> Option<(usize, PointSet, PointSet)> {
        (1..=self.horizon()).find_map(|n| {
            let fmn = self.hom.image_of_set(self.source_dss.entry(n).elements());
            let tn = self.target_dss.entry(n).elements();
            (!fmn.is_subset(tn)).then_some((n, fmn, tn))
        })
    }

    /// `f(M_n) = f(M) ∩ M'_n` for every n.
    pub fn is_strict(&self) -> bool {
        self.strictness_witness().is_none()
    }

    pub fn strictness_witness(&self) -> Option<(usize, PointSet, PointSet)> {
        let image = self.hom.image().elements();
        (1..=self.horizon()).find_map(|n| {
            let fmn = self.hom.image_of_set(self.source_dss.entry(n).elements());
            let rhs = image.intersection(self.target_dss.entry(n).elements());
            (fmn != rhs).then_some((n, fmn, rhs))
        })
    }

    /// The underlying map between the two finite spaces.
    pub fn finite_map(&self) -> FiniteMap {
        FiniteMap::new(
            self.source_topology.space().clone(),
            self.target_topology.space().clone(),
            self.hom.map().to_vec(),
        )
    }

    /// The map `f_n : M/M_n -> M'/M'_n` induced by a compatible `f`,
    /// together with the two quotients and their projections.
    pub fn induced_quotient_map(&self, n: usize) -> Result<InducedQuotient, MorphismError> {
        if !self.is_compatible() {
            return Err(MorphismError::NotCompatible);
        }
        let source = QuotientModule::new(self.hom.source(), self.source_dss.entry(n))?;
        let target = QuotientModule::new(self.hom.target(), self.target_dss.entry(n))?;
        let table: Vec<usize> = (0..source.size())
            .map(|c| target.coset_index(self.hom.apply(source.representative(c))))
            .collect();
        // representative independence
        for m in 0..self.hom.source().size() {
            if table[source.coset_index(m)] != target.coset_index(self.hom.apply(m)) {
                return Err(MorphismError::NotCompatible);
            }
        }
        let map = ModuleHom::new(source.module().clone(), target.module().clone(), table)?;
        Ok(InducedQuotient { source, target, map })
    }

    /// The restriction `α_n : Ker f -> Ker f_n` of the source projection.
    pub fn alpha(&self, n: usize) -> Result<AlphaMap, MorphismError> {
        let iq = self.induced_quotient_map(n)?;
        let kernel = self.hom.kernel();
        let domain = SubmoduleEmbedding::new(self.hom.source(), &kernel);
        let kernel_n = iq.map.kernel();
        let codomain = SubmoduleEmbedding::new(iq.source.module(), &kernel_n);
        let table: Vec<usize> = domain
            .embed
            .iter()
            .map(|&k| {
                codomain
                    .position(iq.source.coset_index(k))
                    .expect("projection of Ker f lands in Ker f_n")
            })
            .collect();
        let map = ModuleHom::new(domain.module.clone(), codomain.module.clone(), table)?;
        Ok(AlphaMap {
            quotients: iq,
            domain,
            codomain,
            map,
        })
    }

    /// Theorem: a compatible map is strict iff every `α_n` is surjective.
    pub fn is_alpha_epi_all_n(&self) -> Result<bool, MorphismError> {
        for n in 1..=self.horizon() {
            if !self.alpha(n)?.map.is_surjective() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `φ'_n ∘ f == f_n ∘ φ_n` as element tables.
    pub fn diagram_commutes(&self, n: usize) -> Result<bool, MorphismError> {
        let iq = self.induced_quotient_map(n)?;
        let phi = iq.source.projection(self.hom.source());
        let phi_prime = iq.target.projection(self.hom.target());
        Ok(self.hom.compose(&phi_prime).map() == phi.compose(&iq.map).map())
    }

    /// Images of source opens are open in the subspace topology of `Im f`.
    ///
    /// This is what strictness buys: `f(m + M_n) = f(M) ∩ (M'_n + f(m))`,
    /// which is relatively open in the image but need not be open in the
    /// whole target when `Im f` itself is not open.
    pub fn is_open_onto_image(&self) -> bool {
        let image = self.hom.image().elements();
        let target_base = self.target_topology.space().base();
        self.source_topology.space().base().iter().all(|&b| {
            let fb = self.hom.image_of_set(b);
            fb.iter().all(|v| {
                target_base
                    .iter()
                    .any(|&tb| tb.contains(v) && tb.intersection(image).is_subset(fb))
            })
        })
    }
}

/// A compatible homomorphism pushed down to quotients by the n-th chain
/// entries on both sides.
#[derive(Clone, Debug)]
pub struct InducedQuotient {
    pub source: QuotientModule,
    pub target: QuotientModule,
    pub map: ModuleHom,
}

/// `α_n` with its kernel carriers spelled out as modules.
#[derive(Clone, Debug)]
pub struct AlphaMap {
    pub quotients: InducedQuotient,
    pub domain: SubmoduleEmbedding,
    pub codomain: SubmoduleEmbedding,
    pub map: ModuleHom,
}

/// Outcome of one claim checked on one instance.
#[derive(Clone, Debug)]
pub struct VerdictReport {
    pub claim: String,
    pub instance: String,
    pub holds: bool,
    pub witness: Option<String>,
    pub elapsed: Duration,
}

impl VerdictReport {
    fn check(claim: &str, instance: &str, body: impl FnOnce() -> Option<String>) -> VerdictReport {
        let start = Instant::now();
        let witness = body();
        VerdictReport {
            claim: claim.to_string(),
            instance: instance.to_string(),
            holds: witness.is_none(),
            witness,
            elapsed: start.elapsed(),
        }
    }
}

/// Claims checked per topologized homomorphism. Implications report
/// vacuous cases as holding with no witness.
pub fn check_hom_claims(instance: &str, th: &TopologizedHom) -> Vec<VerdictReport> {
    let fmap = th.finite_map();
    let strict = th.is_strict();
    let compatible = th.is_compatible();
    let mut out = vec![
        VerdictReport::check("st-cp", instance, || {
            (strict && !compatible).then(|| "strict map fails compatibility".into())
        }),
        VerdictReport::check("st-op", instance, || {
            (strict && !th.is_open_onto_image())
                .then(|| "strict map is not open onto its image".into())
        }),
        VerdictReport::check("cp-cnt", instance, || {
            (compatible && !fmap.is_continuous()).then(|| "compatible map not continuous".into())
        }),
        VerdictReport::check("st-cnt", instance, || {
            (strict && !fmap.is_continuous()).then(|| "strict map not continuous".into())
        }),
        VerdictReport::check("stb-hom", instance, || {
            (strict && fmap.is_bijective() && !fmap.is_homeomorphism())
                .then(|| "strict bijection is not a homeomorphism".into())
        }),
        VerdictReport::check("prp0", instance, || {
            let everywhere = fmap.is_continuous();
            let at_zero = fmap.is_continuous_at(0);
            (everywhere != at_zero).then(|| {
                format!("continuous={everywhere} but continuous_at(0)={at_zero}")
            })
        }),
    ];
    if compatible {
        out.push(VerdictReport::check("thm1", instance, || {
            (1..=th.horizon()).find_map(|n| {
                match th.diagram_commutes(n) {
                    Ok(true) => None,
                    Ok(false) => Some(format!("diagram fails at n={n}")),
                    Err(e) => Some(format!("n={n}: {e}")),
                }
            })
        }));
        out.push(VerdictReport::check("thm2", instance, || {
            match th.is_alpha_epi_all_n() {
                Ok(epi) if epi == strict => None,
                Ok(epi) => Some(format!("strict={strict} but alpha epi for all n={epi}")),
                Err(e) => Some(e.to_string()),
            }
        }));
        out.push(VerdictReport::check("final-cor", instance, || {
            match th.is_alpha_epi_all_n() {
                Ok(true) if !(fmap.is_continuous() && th.is_open_onto_image()) => {
                    Some("alpha epi but map not continuous and open onto image".into())
                }
                Err(e) => Some(e.to_string()),
                _ => None,
            }
        }));
    } else {
        for claim in ["thm1", "thm2", "final-cor"] {
            out.push(VerdictReport::check(claim, instance, || None));
        }
    }
    out
}

/// Run every per-homomorphism claim over a corpus; reports come back sorted
/// by (claim, instance).
pub fn run_theorem_suite(instances: &[(String, TopologizedHom)]) -> Vec<VerdictReport> {
    let mut out: Vec<VerdictReport> = instances
        .iter()
        .flat_map(|(id, th)| check_hom_claims(id, th))
        .collect();
    out.sort_by(|a, b| (&a.claim, &a.instance).cmp(&(&b.claim, &b.instance)));
    out
}

/// Instances witnessing that compatibility does not already imply
/// strictness.
pub fn compatible_not_strict(instances: &[(String, TopologizedHom)]) -> Vec<String> {
    instances
        .iter()
        .filter(|(_, th)| th.is_compatible() && !th.is_strict())
        .map(|(id, _)| id.clone())
        .collect()
}

/// The exact sequence `K -> M -> M/K`: image/kernel agreement, strictness
/// and openness of both the inclusion and the projection, with `M` carrying
/// the topology of the chain `[M, K]` and `K`, `M/K` their induced and
/// factor topologies.
pub fn exact_pair_check(
    module: &BckModule,
    k: &Submodule,
    instance: &str,
) -> Result<VerdictReport, MorphismError> {
    let start = Instant::now();
    let dss = Dss::new(module, vec![Submodule::full(module), *k])?;
    let base_topology = BaigTopology::build(module, &dss)?;
    let induced = induced_topology(&base_topology, k)?;
    let factor = factor_topology(&base_topology, k)?;
    let inclusion = induced.embedding.inclusion(module);
    let projection = factor.quotient.projection(module);

    let mut witness = None;
    let im_i = inclusion.image().elements();
    let ker_f = projection.kernel().elements();
    if im_i != ker_f {
        witness = Some(format!("Im i = {im_i} but Ker f = {ker_f}"));
    }
    if witness.is_none() {
        let th_i = TopologizedHom::from_prebuilt(inclusion, &induced.topology, &base_topology)?;
        if let Some((n, lhs, rhs)) = th_i.strictness_witness() {
            witness = Some(format!("i not strict at n={n}: i(K_{n})={lhs} vs i(K)∩M_{n}={rhs}"));
        } else if !th_i.finite_map().is_open_map() {
            witness = Some("inclusion is not an open map".into());
        }
    }
    if witness.is_none() {
        let th_f = TopologizedHom::from_prebuilt(projection, &base_topology, &factor.topology)?;
        if let Some((n, lhs, rhs)) = th_f.strictness_witness() {
            witness = Some(format!(
                "f not strict at n={n}: f(M_{n})={lhs} vs f(M)∩(M_{n}+K)/K={rhs}"
            ));
        } else if !th_f.finite_map().is_open_map() {
            witness = Some("projection is not an open map".into());
        }
    }
    Ok(VerdictReport {
        claim: "exact-pair".to_string(),
        instance: instance.to_string(),
        holds: witness.is_none(),
        witness,
        elapsed: start.elapsed(),
    })
}

/// Space-level claims for one (module, chain) pair.
pub fn check_space_claims(
    instance: &str,
    topology: &BaigTopology,
) -> Result<Vec<VerdictReport>, MorphismError> {
    let module = topology.module().clone();
    let submodules = module.submodules();
    let carrier = module.carrier();
    let mut out = Vec::new();

    out.push(VerdictReport::check("topology-axioms", instance, || {
        let opens = topology.opens();
        if !topology.is_open(PointSet::EMPTY) || !topology.is_open(carrier) {
            return Some("empty set or carrier not open".into());
        }
        for &a in opens {
            for &b in opens {
                if !topology.is_open(a.union(b)) {
                    return Some(format!("union {a} ∪ {b} not open"));
                }
                if !topology.is_open(a.intersection(b)) {
                    return Some(format!("intersection {a} ∩ {b} not open"));
                }
            }
        }
        None
    }));

    out.push(VerdictReport::check("base-soundness", instance, || {
        for &b in topology.space().base() {
            if !topology.is_open(b) {
                return Some(format!("base coset {b} not open"));
            }
        }
        for &o in topology.opens() {
            let covered = o.iter().all(|p| {
                topology
                    .space()
                    .base()
                    .iter()
                    .any(|&b| b.contains(p) && b.is_subset(o))
            });
            if !covered {
                return Some(format!("open {o} is not a union of base cosets"));
            }
        }
        None
    }));

    // A submodule is open (equivalently clopen) exactly when it absorbs
    // some chain entry; in particular every chain entry is clopen. The
    // characteristic map into the discrete 2-point space is continuous
    // for exactly the same submodules.
    let absorbs_entry = |s: &Submodule| {
        topology
            .dss()
            .chain()
            .iter()
            .any(|mn| mn.elements().is_subset(s.elements()))
    };
    out.push(VerdictReport::check("submodule-clopen", instance, || {
        submodules
            .iter()
            .find(|s| topology.is_clopen(s.elements()) != absorbs_entry(s))
            .map(|s| {
                format!(
                    "submodule {}: clopen={} but contains a chain entry={}",
                    s.elements(),
                    topology.is_clopen(s.elements()),
                    absorbs_entry(s)
                )
            })
    }));

    out.push(VerdictReport::check("chi-continuous", instance, || {
        submodules
            .iter()
            .find(|s| topology.characteristic_map(s).is_continuous() != absorbs_entry(s))
            .map(|s| {
                format!(
                    "characteristic map of {}: continuity disagrees with clopenness",
                    s.elements()
                )
            })
    }));

    out.push(VerdictReport::check("disconnected", instance, || {
        let proper_nontrivial = topology.dss().chain().iter().any(|s| {
            s.elements() != carrier && s.len() > 1
        });
        (proper_nontrivial && topology.is_connected())
            .then(|| "chain has a proper nontrivial entry but space is connected".into())
    }));

    out.push(VerdictReport::check("nu-tau-homeo", instance, || {
        if !topology.negation_map().is_homeomorphism() {
            return Some("negation is not a homeomorphism".into());
        }
        (0..module.size())
            .find(|&a| !topology.translation_map(a).is_homeomorphism())
            .map(|a| format!("translation by {a} is not a homeomorphism"))
    }));

    let addition = topology.addition_map()?;
    out.push(VerdictReport::check("addition-continuous", instance, || {
        (!addition.is_continuous()).then(|| "addition not continuous in the product".into())
    }));

    out.push(VerdictReport::check("mu-continuous", instance, || {
        (0..module.algebra().size())
            .find(|&x| !topology.scalar_map(x).is_continuous())
            .map(|x| format!("scalar action of {x} not continuous"))
    }));

    let mut induced_witness = None;
    for k in &submodules {
        let ind = induced_topology(topology, k)?;
        let rel = relative(topology, k)?;
        if ind.topology.opens() != rel.as_slice() {
            induced_witness = Some(format!("induced != relative on {}", k.elements()));
            break;
        }
    }
    out.push(VerdictReport::check("induced-relative", instance, || {
        induced_witness
    }));

    for k in &submodules {
        let id = format!("{instance} K={}", k.elements());
        out.push(exact_pair_check(&module, k, &id)?);
    }
    Ok(out)
}

fn relative(t: &BaigTopology, k: &Submodule) -> Result<Vec<PointSet>, TopologyError> {
    crate::topology::relative_opens(t, k)
}
