//! The desk-scale instance corpus: small cyclic and Klein modules over the
//! 2-chain, every decreasing chain of bounded length from each submodule
//! lattice, and every homomorphism between the modules.

use crate::algebra::BckAlgebra;
use crate::group::AbelianGroup;
use crate::module::{enumerate_homs, BckModule, Submodule};
use crate::morphisms::{MorphismError, TopologizedHom};
use crate::topology::{BaigTopology, Dss, TopologyError};

pub struct CorpusModule {
    pub name: &'static str,
    pub module: BckModule,
    pub submodules: Vec<Submodule>,
    pub dss_list: Vec<Dss>,
    pub topologies: Vec<BaigTopology>,
}

pub struct Corpus {
    pub modules: Vec<CorpusModule>,
}

/// Every weakly decreasing sequence of submodules of length `1..=max_len`.
pub fn all_chains(module: &BckModule, max_len: usize) -> Vec<Dss> {
    let subs = module.submodules();
    let mut out = Vec::new();
    let mut prefix: Vec<Submodule> = Vec::new();
    fn extend(
        module: &BckModule,
        subs: &[Submodule],
        prefix: &mut Vec<Submodule>,
        max_len: usize,
        out: &mut Vec<Dss>,
    ) {
        if !prefix.is_empty() {
            out.push(Dss::new(module, prefix.clone()).expect("prefix is decreasing"));
        }
        if prefix.len() == max_len {
            return;
        }
        for s in subs {
            if prefix
                .last()
                .is_none_or(|last| s.elements().is_subset(last.elements()))
            {
                prefix.push(*s);
                extend(module, subs, prefix, max_len, out);
                prefix.pop();
            }
        }
    }
    extend(module, &subs, &mut prefix, max_len, &mut out);
    out.sort_by_key(|d| {
        (
            d.len(),
            d.chain().iter().map(|s| s.elements()).collect::<Vec<_>>(),
        )
    });
    out
}

impl Corpus {
    /// Modules Z1, Z2, Z4, Z2xZ2 (optionally Z8) over the 2-chain, plus the
    /// 2-chain acting on itself, with all chains of length <= 3.
    pub fn standard(include_z8: bool) -> Result<Corpus, TopologyError> {
        let mut named: Vec<(&'static str, BckModule)> = vec![
            ("Z1", BckModule::scalar_over_c2(AbelianGroup::cyclic(1))),
            ("Z2", BckModule::scalar_over_c2(AbelianGroup::cyclic(2))),
            ("Z4", BckModule::scalar_over_c2(AbelianGroup::cyclic(4))),
            ("K4", BckModule::scalar_over_c2(AbelianGroup::klein())),
            (
                "SelfC2",
                BckModule::self_module(&BckAlgebra::chain(2))
                    .expect("2-chain is bounded implicative"),
            ),
        ];
        if include_z8 {
            named.push(("Z8", BckModule::scalar_over_c2(AbelianGroup::cyclic(8))));
        }
        let mut modules = Vec::new();
        for (name, module) in named {
            let submodules = module.submodules();
            let dss_list = all_chains(&module, 3);
            let topologies = dss_list
                .iter()
                .map(|d| BaigTopology::build(&module, d))
                .collect::<Result<Vec<_>, _>>()?;
            modules.push(CorpusModule {
                name,
                module,
                submodules,
                dss_list,
                topologies,
            });
        }
        Ok(Corpus { modules })
    }

    /// Visit every homomorphism between corpus modules under every pair of
    /// chains. Instances are built on the fly; ids are deterministic.
    pub fn for_each_topologized_hom(
        &self,
        mut visit: impl FnMut(&str, &TopologizedHom),
    ) -> Result<(), MorphismError> {
        for src in &self.modules {
            for dst in &self.modules {
                if src.module.algebra() != dst.module.algebra() {
                    continue;
                }
                let homs = enumerate_homs(&src.module, &dst.module)?;
                for (hi, hom) in homs.iter().enumerate() {
                    for (si, st) in src.topologies.iter().enumerate() {
                        for (ti, tt) in dst.topologies.iter().enumerate() {
                            let th = TopologizedHom::from_prebuilt(hom.clone(), st, tt)?;
                            let id = format!(
                                "{}->{} hom#{hi} sdss#{si} tdss#{ti}",
                                src.name, dst.name
                            );
                            visit(&id, &th);
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
