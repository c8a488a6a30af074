//! Finite BCK-algebras as operation tables, with exhaustive axiom checking.

use thiserror::Error;

/// Axiom labels reported by the validator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BckAxiom {
    /// ((a*b)*(a*c))*(c*b) = 0
    Bck1,
    /// (a*(a*b))*b = 0
    Bck2,
    /// a*a = 0
    Bck3,
    /// 0*a = 0
    Bck4,
    /// a*b = 0 and b*a = 0 imply a = b
    Bck5,
    /// a*1 = 0 for the declared greatest element
    Bound,
}

impl std::fmt::Display for BckAxiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            BckAxiom::Bck1 => "BCK1",
            BckAxiom::Bck2 => "BCK2",
            BckAxiom::Bck3 => "BCK3",
            BckAxiom::Bck4 => "BCK4",
            BckAxiom::Bck5 => "BCK5",
            BckAxiom::Bound => "BOUND",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("malformed star table: {0}")]
    MalformedTable(String),
    #[error("axiom {axiom} fails at (a,b,c)=({},{},{})", witness.0, witness.1, witness.2)]
    AxiomViolation {
        axiom: BckAxiom,
        witness: (usize, usize, usize),
    },
}

/// A finite BCK-algebra `(X, *, 0)`; elements are the indices `0..size`,
/// zero is pinned to index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BckAlgebra {
    size: usize,
    star: Vec<Vec<usize>>,
    one: Option<usize>,
}

impl BckAlgebra {
    /// Validate a star table against BCK1-BCK5 (plus the bound condition when
    /// `one` is given). Axioms are scanned in numeric order and witnesses are
    /// lexicographically first, so failures are deterministic.
    pub fn from_table(
        size: usize,
        star: Vec<Vec<usize>>,
        one: Option<usize>,
    ) -> Result<BckAlgebra, AlgebraError> {
        if size == 0 {
            return Err(AlgebraError::MalformedTable("size must be positive".into()));
        }
        if star.len() != size {
            return Err(AlgebraError::MalformedTable(format!(
                "expected {size} rows, got {}",
                star.len()
            )));
        }
        for (i, row) in star.iter().enumerate() {
            if row.len() != size {
                return Err(AlgebraError::MalformedTable(format!(
                    "row {i} has {} entries, expected {size}",
                    row.len()
                )));
            }
            if let Some(&e) = row.iter().find(|&&e| e >= size) {
                return Err(AlgebraError::MalformedTable(format!(
                    "row {i} contains out-of-range entry {e}"
                )));
            }
        }
        if let Some(u) = one {
            if u >= size {
                return Err(AlgebraError::MalformedTable(format!(
                    "greatest element {u} out of range"
                )));
            }
        }

        let s = |a: usize, b: usize| star[a][b];
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    if s(s(s(a, b), s(a, c)), s(c, b)) != 0 {
                        return Err(AlgebraError::AxiomViolation {
                            axiom: BckAxiom::Bck1,
                            witness: (a, b, c),
                        });
                    }
                }
            }
        }
        for a in 0..size {
            for b in 0..size {
                if s(s(a, s(a, b)), b) != 0 {
                    return Err(AlgebraError::AxiomViolation {
                        axiom: BckAxiom::Bck2,
                        witness: (a, b, 0),
                    });
                }
            }
        }
        for a in 0..size {
            if s(a, a) != 0 {
                return Err(AlgebraError::AxiomViolation {
                    axiom: BckAxiom::Bck3,
                    witness: (a, 0, 0),
                });
            }
        }
        for a in 0..size {
            if s(0, a) != 0 {
                return Err(AlgebraError::AxiomViolation {
                    axiom: BckAxiom::Bck4,
                    witness: (0, a, 0),
                });
            }
        }
        for a in 0..size {
            for b in 0..size {
                if a != b && s(a, b) == 0 && s(b, a) == 0 {
                    return Err(AlgebraError::AxiomViolation {
                        axiom: BckAxiom::Bck5,
                        witness: (a, b, 0),
                    });
                }
            }
        }
        if let Some(u) = one {
            for a in 0..size {
                if s(a, u) != 0 {
                    return Err(AlgebraError::AxiomViolation {
                        axiom: BckAxiom::Bound,
                        witness: (a, u, 0),
                    });
                }
            }
        }
        Ok(BckAlgebra { size, star, one })
    }

    /// The n-element chain with truncated subtraction `a*b = max(a-b, 0)`;
    /// bounded with greatest element `n-1`.
    pub fn chain(n: usize) -> BckAlgebra {
        assert!(n >= 1, "chain algebra needs at least one element");
        let star = (0..n)
            .map(|a| (0..n).map(|b| a.saturating_sub(b)).collect())
            .collect();
        BckAlgebra::from_table(n, star, Some(n - 1)).expect("chain table satisfies the axioms")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn one(&self) -> Option<usize> {
        self.one
    }

    pub fn star(&self, a: usize, b: usize) -> usize {
        self.star[a][b]
    }

    /// `a ∧ b = b*(b*a)`.
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.star(b, self.star(b, a))
    }

    /// The BCK order: `a ≤ b` iff `a*b = 0`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.star(a, b) == 0
    }

    /// Some element sits above every other element.
    pub fn is_bounded(&self) -> bool {
        (0..self.size).any(|u| (0..self.size).all(|a| self.leq(a, u)))
    }

    /// The derived meet is symmetric.
    pub fn is_commutative(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.meet(a, b) == self.meet(b, a)))
    }

    /// `a*(b*a) = a` for all a, b.
    pub fn is_implicative(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.star(a, self.star(b, a)) == a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_algebra_is_valid() {
        let a = BckAlgebra::from_table(1, vec![vec![0]], None).unwrap();
        assert_eq!(a.size(), 1);
        assert!(a.is_bounded() && a.is_commutative() && a.is_implicative());
    }

    #[test]
    fn two_chain_table_is_valid_and_bounded() {
        let a = BckAlgebra::from_table(2, vec![vec![0, 0], vec![1, 0]], Some(1)).unwrap();
        assert!(a.is_bounded());
        assert!(a.is_commutative());
        assert!(a.is_implicative());
        assert_eq!(a.star, BckAlgebra::chain(2).star);
    }

    #[test]
    fn xor_table_fails_bck4_first() {
        let err = BckAlgebra::from_table(2, vec![vec![0, 1], vec![1, 0]], None).unwrap_err();
        assert_eq!(
            err,
            AlgebraError::AxiomViolation {
                axiom: BckAxiom::Bck4,
                witness: (0, 1, 0),
            }
        );
    }

    #[test]
    fn chain_algebras_validate_up_to_eight() {
        for n in 1..=8 {
            let c = BckAlgebra::chain(n);
            assert!(BckAlgebra::from_table(n, c.star.clone(), c.one).is_ok());
        }
    }

    #[test]
    fn chain_meet_and_order() {
        let c = BckAlgebra::chain(4);
        assert_eq!(c.meet(2, 3), 2);
        assert_eq!(c.meet(0, 3), 0);
        assert!(c.leq(1, 2));
        assert!(!c.leq(2, 1));
        for a in 0..4 {
            assert!(c.leq(a, a));
        }
    }

    #[test]
    fn chain4_is_not_implicative() {
        let c = BckAlgebra::chain(4);
        assert!(c.is_bounded());
        assert!(c.is_commutative());
        assert!(!c.is_implicative());
        // the classifying witness
        assert_ne!(c.star(1, c.star(2, 1)), 1);
    }

    #[test]
    fn order_is_antisymmetric() {
        for n in 1..=6 {
            let c = BckAlgebra::chain(n);
            for a in 0..n {
                for b in 0..n {
                    if c.leq(a, b) && c.leq(b, a) {
                        assert_eq!(a, b);
                    }
                }
            }
        }
    }

    #[test]
    fn meet_is_a_lower_bound_on_bounded_commutative_chains() {
        for n in 1..=6 {
            let c = BckAlgebra::chain(n);
            for a in 0..n {
                for b in 0..n {
                    let m = c.meet(a, b);
                    assert_eq!(m, c.meet(b, a));
                    assert!(c.leq(m, a) && c.leq(m, b));
                }
            }
        }
    }

    /// Independent oracle: re-state the axioms naively and count the valid
    /// tables among all candidate star tables of a given size.
    fn oracle_is_bck(size: usize, star: &[Vec<usize>]) -> bool {
        let s = |a: usize, b: usize| star[a][b];
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    if s(s(s(a, b), s(a, c)), s(c, b)) != 0 {
                        return false;
                    }
                    if s(s(a, s(a, b)), b) != 0 {
                        return false;
                    }
                }
                if a != b && s(a, b) == 0 && s(b, a) == 0 {
                    return false;
                }
            }
            if s(a, a) != 0 || s(0, a) != 0 {
                return false;
            }
        }
        true
    }

    fn all_tables(size: usize) -> impl Iterator<Item = Vec<Vec<usize>>> {
        let cells = size * size;
        let total = (size as u64).pow(cells as u32);
        (0..total).map(move |mut code| {
            let mut t = vec![vec![0; size]; size];
            for row in t.iter_mut() {
                for cell in row.iter_mut() {
                    *cell = (code % size as u64) as usize;
                    code /= size as u64;
                }
            }
            t
        })
    }

    #[test]
    fn checker_is_total_and_matches_oracle_on_all_small_tables() {
        for size in [2usize, 3] {
            let mut checker_valid = 0u64;
            let mut oracle_valid = 0u64;
            for t in all_tables(size) {
                if BckAlgebra::from_table(size, t.clone(), None).is_ok() {
                    checker_valid += 1;
                }
                if oracle_is_bck(size, &t) {
                    oracle_valid += 1;
                }
            }
            assert_eq!(checker_valid, oracle_valid, "size {size}");
            if size == 2 {
                // only the 2-chain survives: 1*0 = 0 would collapse 0 and 1
                assert_eq!(checker_valid, 1);
            }
        }
    }
}
