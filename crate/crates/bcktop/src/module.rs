//! BCK-modules: abelian groups with a scalar action of a BCK-algebra.
//!
//! Everything here is finite and exhaustively validated at construction.
//! Submodules, homomorphisms, kernels, images and quotients all carry their
//! defining closure properties as checked invariants rather than trusted ones.

use crate::algebra::BckAlgebra;
use crate::group::{AbelianGroup, GroupError};
use crate::set::PointSet;
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ModuleError {
    #[error("malformed action table: {0}")]
    MalformedTable(String),
    #[error("module axiom {axiom} fails at {witness:?}")]
    AxiomViolation {
        axiom: &'static str,
        witness: (usize, usize, usize),
    },
    #[error("algebra is not bounded implicative")]
    NotBoundedImplicative,
    #[error("construction failed validation: {0}")]
    ConstructionFailed(String),
    #[error("{0} is not a submodule")]
    NotASubmodule(PointSet),
    #[error("map is not an X-homomorphism at element {0}")]
    NotAHomomorphism(usize),
    #[error("source and target are modules over different algebras")]
    AlgebraMismatch,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A finite module over a BCK-algebra: abelian group `M` plus an action
/// table `action[a][m] = a·m` satisfying M1-M4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BckModule {
    algebra: BckAlgebra,
    group: AbelianGroup,
    action: Vec<Vec<usize>>,
}

impl BckModule {
    pub fn from_tables(
        algebra: BckAlgebra,
        group: AbelianGroup,
        action: Vec<Vec<usize>>,
    ) -> Result<BckModule, ModuleError> {
        let nx = algebra.size();
        let nm = group.size();
        if action.len() != nx || action.iter().any(|r| r.len() != nm) {
            return Err(ModuleError::MalformedTable(format!(
                "expected a {nx}x{nm} action table"
            )));
        }
        if action.iter().flatten().any(|&e| e >= nm) {
            return Err(ModuleError::MalformedTable("entry out of range".into()));
        }
        let act = |a: usize, m: usize| action[a][m];
        // M1: (a ∧ b)m = a(bm)
        for a in 0..nx {
            for b in 0..nx {
                for m in 0..nm {
                    if act(algebra.meet(a, b), m) != act(a, act(b, m)) {
                        return Err(ModuleError::AxiomViolation {
                            axiom: "M1",
                            witness: (a, b, m),
                        });
                    }
                }
            }
        }
        // M2: a(m1 + m2) = am1 + am2
        for a in 0..nx {
            for m1 in 0..nm {
                for m2 in 0..nm {
                    if act(a, group.add(m1, m2)) != group.add(act(a, m1), act(a, m2)) {
                        return Err(ModuleError::AxiomViolation {
                            axiom: "M2",
                            witness: (a, m1, m2),
                        });
                    }
                }
            }
        }
        // M3: 0m = 0
        for m in 0..nm {
            if act(0, m) != 0 {
                return Err(ModuleError::AxiomViolation {
                    axiom: "M3",
                    witness: (0, m, 0),
                });
            }
        }
        // M4: 1m = m, when the algebra is bounded
        if let Some(u) = algebra.one() {
            for m in 0..nm {
                if act(u, m) != m {
                    return Err(ModuleError::AxiomViolation {
                        axiom: "M4",
                        witness: (u, m, 0),
                    });
                }
            }
        }
        Ok(BckModule {
            algebra,
            group,
            action,
        })
    }

    /// Any abelian group as a module over the 2-chain: `0·m = 0`, `1·m = m`.
    pub fn scalar_over_c2(group: AbelianGroup) -> BckModule {
        let action = vec![vec![0; group.size()], (0..group.size()).collect()];
        BckModule::from_tables(BckAlgebra::chain(2), group, action)
            .expect("scalar action over the 2-chain always satisfies M1-M4")
    }

    /// A bounded implicative BCK-algebra as a module over itself:
    /// `a + b = (a*b) ∨ (b*a)` with `u ∨ v = 1*((1*u) ∧ (1*v))`, `a·m = a ∧ m`.
    pub fn self_module(alg: &BckAlgebra) -> Result<BckModule, ModuleError> {
        if !(alg.is_bounded() && alg.is_implicative()) {
            return Err(ModuleError::NotBoundedImplicative);
        }
        let n = alg.size();
        let one = alg
            .one()
            .or_else(|| (0..n).find(|&u| (0..n).all(|a| alg.leq(a, u))))
            .expect("bounded algebra has a greatest element");
        let join = |u: usize, v: usize| alg.star(one, alg.meet(alg.star(one, u), alg.star(one, v)));
        let add: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| join(alg.star(a, b), alg.star(b, a))).collect())
            .collect();
        let group = AbelianGroup::from_table(n, add)
            .map_err(|e| ModuleError::ConstructionFailed(format!("addition table: {e}")))?;
        let action = (0..n)
            .map(|a| (0..n).map(|m| alg.meet(a, m)).collect())
            .collect();
        BckModule::from_tables(alg.clone(), group, action)
            .map_err(|e| ModuleError::ConstructionFailed(format!("module axioms: {e}")))
    }

    pub fn algebra(&self) -> &BckAlgebra {
        &self.algebra
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.group.size()
    }

    pub fn add(&self, m1: usize, m2: usize) -> usize {
        self.group.add(m1, m2)
    }

    pub fn neg(&self, m: usize) -> usize {
        self.group.neg(m)
    }

    pub fn act(&self, a: usize, m: usize) -> usize {
        self.action[a][m]
    }

    pub fn carrier(&self) -> PointSet {
        PointSet::full(self.size())
    }

    /// `S + m` as a set.
    pub fn translate(&self, s: PointSet, m: usize) -> PointSet {
        s.iter().map(|e| self.add(e, m)).collect()
    }

    /// `S + T` elementwise.
    pub fn sum_sets(&self, s: PointSet, t: PointSet) -> PointSet {
        s.iter()
            .flat_map(|a| t.iter().map(move |b| (a, b)))
            .map(|(a, b)| self.add(a, b))
            .collect()
    }

    fn is_closed_subset(&self, s: PointSet) -> bool {
        if !s.contains(0) {
            return false;
        }
        for a in s.iter() {
            if !s.contains(self.neg(a)) {
                return false;
            }
            for b in s.iter() {
                if !s.contains(self.add(a, b)) {
                    return false;
                }
            }
            for x in 0..self.algebra.size() {
                if !s.contains(self.act(x, a)) {
                    return false;
                }
            }
        }
        true
    }

    /// All submodules, in canonical (mask) order; always includes `{0}` and `M`.
    pub fn submodules(&self) -> Vec<Submodule> {
        let n = self.size();
        assert!(n <= 20, "submodule enumeration is exhaustive over subsets");
        (0u128..1 << n)
            .map(PointSet::from_mask)
            .filter(|&s| self.is_closed_subset(s))
            .map(|elements| Submodule { elements })
            .collect()
    }
}

/// A validated submodule, stored as its element set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Submodule {
    elements: PointSet,
}

impl Submodule {
    pub fn new(module: &BckModule, elements: PointSet) -> Result<Submodule, ModuleError> {
        if elements.is_subset(module.carrier()) && module.is_closed_subset(elements) {
            Ok(Submodule { elements })
        } else {
            Err(ModuleError::NotASubmodule(elements))
        }
    }

    pub fn zero(_module: &BckModule) -> Submodule {
        Submodule {
            elements: PointSet::singleton(0),
        }
    }

    pub fn full(module: &BckModule) -> Submodule {
        Submodule {
            elements: module.carrier(),
        }
    }

    pub fn elements(&self) -> PointSet {
        self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a submodule always contains 0
    }

    pub fn contains(&self, m: usize) -> bool {
        self.elements.contains(m)
    }

    pub fn coset(&self, module: &BckModule, m: usize) -> PointSet {
        module.translate(self.elements, m)
    }
}

/// The carrier of a submodule repackaged as a module of its own, with the
/// embedding back into the parent.
#[derive(Clone, Debug)]
pub struct SubmoduleEmbedding {
    pub module: BckModule,
    /// index in the small module -> element of the parent
    pub embed: Vec<usize>,
}

impl SubmoduleEmbedding {
    pub fn new(parent: &BckModule, sub: &Submodule) -> SubmoduleEmbedding {
        let embed: Vec<usize> = sub.elements().iter().collect();
        let pos = |e: usize| embed.iter().position(|&p| p == e).unwrap();
        let add = embed
            .iter()
            .map(|&a| embed.iter().map(|&b| pos(parent.add(a, b))).collect())
            .collect();
        let group = AbelianGroup::from_table(embed.len(), add)
            .expect("submodule closure gives a subgroup");
        let action = (0..parent.algebra().size())
            .map(|x| embed.iter().map(|&m| pos(parent.act(x, m))).collect())
            .collect();
        let module = BckModule::from_tables(parent.algebra().clone(), group, action)
            .expect("submodule closure gives a module");
        SubmoduleEmbedding { module, embed }
    }

    pub fn position(&self, parent_elem: usize) -> Option<usize> {
        self.embed.iter().position(|&p| p == parent_elem)
    }

    /// Re-index a subset of the parent that lies inside the submodule.
    pub fn pull_set(&self, s: PointSet) -> PointSet {
        s.iter().map(|e| self.position(e).expect("set inside submodule")).collect()
    }

    /// Push a subset of the small module out to the parent.
    pub fn push_set(&self, s: PointSet) -> PointSet {
        s.iter().map(|i| self.embed[i]).collect()
    }

    /// The inclusion as an X-homomorphism into the parent.
    pub fn inclusion(&self, parent: &BckModule) -> ModuleHom {
        ModuleHom::new(self.module.clone(), parent.clone(), self.embed.clone())
            .expect("inclusion is an X-homomorphism")
    }
}

/// An X-homomorphism between modules over the same algebra, stored as an
/// element table and validated exhaustively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleHom {
    source: BckModule,
    target: BckModule,
    map: Vec<usize>,
}

impl ModuleHom {
    pub fn new(
        source: BckModule,
        target: BckModule,
        map: Vec<usize>,
    ) -> Result<ModuleHom, ModuleError> {
        if source.algebra() != target.algebra() {
            return Err(ModuleError::AlgebraMismatch);
        }
        if map.len() != source.size() {
            return Err(ModuleError::MalformedTable(format!(
                "map has {} entries, expected {}",
                map.len(),
                source.size()
            )));
        }
        if map.iter().any(|&v| v >= target.size()) {
            return Err(ModuleError::MalformedTable("map entry out of range".into()));
        }
        for m1 in 0..source.size() {
            for m2 in 0..source.size() {
                if map[source.add(m1, m2)] != target.add(map[m1], map[m2]) {
                    return Err(ModuleError::NotAHomomorphism(source.add(m1, m2)));
                }
            }
            for x in 0..source.algebra().size() {
                if map[source.act(x, m1)] != target.act(x, map[m1]) {
                    return Err(ModuleError::NotAHomomorphism(m1));
                }
            }
        }
        Ok(ModuleHom {
            source,
            target,
            map,
        })
    }

    pub fn identity(module: &BckModule) -> ModuleHom {
        ModuleHom::new(module.clone(), module.clone(), (0..module.size()).collect())
            .expect("identity is an X-homomorphism")
    }

    pub fn source(&self) -> &BckModule {
        &self.source
    }

    pub fn target(&self) -> &BckModule {
        &self.target
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
        (0..self.source.size()).filter(|&m| s.contains(self.map[m])).collect()
    }

    pub fn kernel(&self) -> Submodule {
        let ker = self.preimage_of_set(PointSet::singleton(0));
        Submodule::new(&self.source, ker).expect("kernel is a submodule")
    }

    pub fn image(&self) -> Submodule {
        let im = self.image_of_set(self.source.carrier());
        Submodule::new(&self.target, im).expect("image is a submodule")
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.size()
    }

    /// `f(K + m)`, checked against `f(K) + f(m)`.
    pub fn coset_image(&self, k: &Submodule, m: usize) -> Result<PointSet, ModuleError> {
        let k = Submodule::new(&self.source, k.elements())?;
        let lhs = self.image_of_set(k.coset(&self.source, m));
        let rhs = self.target.translate(self.image_of_set(k.elements()), self.map[m]);
        assert_eq!(lhs, rhs, "f(K+m) must equal f(K)+f(m)");
        Ok(lhs)
    }

    pub fn compose(&self, then: &ModuleHom) -> ModuleHom {
        assert_eq!(self.target.size(), then.source.size());
        let map = self.map.iter().map(|&m| then.map[m]).collect();
        ModuleHom::new(self.source.clone(), then.target.clone(), map)
            .expect("composite of X-homomorphisms")
    }
}

/// All X-homomorphisms `src -> dst`, in lexicographic order of their tables.
///
/// Backtracking over element images with incremental law checks; for each
/// element only the constraints it completes are tested, so the full table
/// is verified exactly once by the time the leaf is reached.
pub fn enumerate_homs(src: &BckModule, dst: &BckModule) -> Result<Vec<ModuleHom>, ModuleError> {
    if src.algebra() != dst.algebra() {
        return Err(ModuleError::AlgebraMismatch);
    }
    let n = src.size();
    let mut out = Vec::new();
    let mut map = vec![0usize; n];
    fn consistent(src: &BckModule, dst: &BckModule, map: &[usize], e: usize) -> bool {
        for a in 0..=e {
            for b in 0..=e {
                let s = src.add(a, b);
                if s <= e && s.max(a).max(b) == e && map[s] != dst.add(map[a], map[b]) {
                    return false;
                }
            }
            for x in 0..src.algebra().size() {
                let s = src.act(x, a);
                if s <= e && s.max(a) == e && map[s] != dst.act(x, map[a]) {
                    return false;
                }
            }
        }
        true
    }
    fn rec(
        src: &BckModule,
        dst: &BckModule,
        map: &mut Vec<usize>,
        e: usize,
        out: &mut Vec<ModuleHom>,
    ) {
        if e == src.size() {
            out.push(
                ModuleHom::new(src.clone(), dst.clone(), map.clone())
                    .expect("search invariant: fully checked table"),
            );
            return;
        }
        let choices = if e == 0 { 1 } else { dst.size() };
        for v in 0..choices {
            map[e] = v;
            if consistent(src, dst, map, e) {
                rec(src, dst, map, e + 1, out);
            }
        }
        map[e] = 0;
    }
    rec(src, dst, &mut map, 0, &mut out);
    Ok(out)
}

/// A quotient `M / N` with canonical (minimum-element) coset representatives.
#[derive(Clone, Debug)]
pub struct QuotientModule {
    module: BckModule,
    divisor: Submodule,
    /// parent element -> coset index
    coset_of: Vec<usize>,
    /// coset index -> canonical representative, ascending
    reps: Vec<usize>,
}

impl QuotientModule {
    pub fn new(base: &BckModule, divisor: &Submodule) -> Result<QuotientModule, ModuleError> {
        let divisor = Submodule::new(base, divisor.elements())?;
        let n = base.size();
        let mut rep_of = vec![usize::MAX; n];
        for (m, rep) in rep_of.iter_mut().enumerate() {
            let coset = divisor.coset(base, m);
            *rep = coset.iter().next().expect("coset nonempty");
        }
        let mut reps: Vec<usize> = (0..n).filter(|&m| rep_of[m] == m).collect();
        reps.sort_unstable();
        let coset_of: Vec<usize> = (0..n)
            .map(|m| reps.iter().position(|&r| r == rep_of[m]).unwrap())
            .collect();
        let q = reps.len();
        let add: Vec<Vec<usize>> = (0..q)
            .map(|i| (0..q).map(|j| coset_of[base.add(reps[i], reps[j])]).collect())
            .collect();
        let action: Vec<Vec<usize>> = (0..base.algebra().size())
            .map(|x| (0..q).map(|i| coset_of[base.act(x, reps[i])]).collect())
            .collect();
        // well-definedness on every representative, not just the canonical one
        for m1 in 0..n {
            for m2 in 0..n {
                if coset_of[base.add(m1, m2)] != add[coset_of[m1]][coset_of[m2]] {
                    return Err(ModuleError::ConstructionFailed(format!(
                        "addition not well-defined on cosets at ({m1},{m2})"
                    )));
                }
            }
            for x in 0..base.algebra().size() {
                if coset_of[base.act(x, m1)] != action[x][coset_of[m1]] {
                    return Err(ModuleError::ConstructionFailed(format!(
                        "action not well-defined on cosets at ({x},{m1})"
                    )));
                }
            }
        }
        let group = AbelianGroup::from_table(q, add)?;
        let module = BckModule::from_tables(base.algebra().clone(), group, action)?;
        Ok(QuotientModule {
            module,
            divisor,
            coset_of,
            reps,
        })
    }

    pub fn module(&self) -> &BckModule {
        &self.module
    }

    pub fn divisor(&self) -> &Submodule {
        &self.divisor
    }

    pub fn coset_index(&self, parent_elem: usize) -> usize {
        self.coset_of[parent_elem]
    }

    pub fn representative(&self, coset: usize) -> usize {
        self.reps[coset]
    }

    pub fn size(&self) -> usize {
        self.reps.len()
    }

    /// Project a subset of the parent to the set of cosets it meets.
    pub fn project_set(&self, s: PointSet) -> PointSet {
        s.iter().map(|m| self.coset_of[m]).collect()
    }

    /// The natural projection as an X-homomorphism.
    pub fn projection(&self, base: &BckModule) -> ModuleHom {
        ModuleHom::new(base.clone(), self.module.clone(), self.coset_of.clone())
            .expect("natural projection is an X-homomorphism")
    }
}
