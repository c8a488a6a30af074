//! Finite abelian groups as Cayley tables; identity is pinned to index 0.

use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("malformed addition table: {0}")]
    MalformedTable(String),
    #[error("group law {law} fails at ({}, {})", witness.0, witness.1)]
    LawViolation {
        law: &'static str,
        witness: (usize, usize),
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    size: usize,
    add: Vec<Vec<usize>>,
    neg: Vec<usize>,
}

impl AbelianGroup {
    pub fn from_table(size: usize, add: Vec<Vec<usize>>) -> Result<AbelianGroup, GroupError> {
        if size == 0 {
            return Err(GroupError::MalformedTable("size must be positive".into()));
        }
        if add.len() != size || add.iter().any(|r| r.len() != size) {
            return Err(GroupError::MalformedTable(format!(
                "expected a {size}x{size} table"
            )));
        }
        if add.iter().flatten().any(|&e| e >= size) {
            return Err(GroupError::MalformedTable("entry out of range".into()));
        }
        for a in 0..size {
            if add[0][a] != a {
                return Err(GroupError::LawViolation {
                    law: "identity",
                    witness: (0, a),
                });
            }
            for b in 0..size {
                if add[a][b] != add[b][a] {
                    return Err(GroupError::LawViolation {
                        law: "commutativity",
                        witness: (a, b),
                    });
                }
                for c in 0..size {
                    if add[add[a][b]][c] != add[a][add[b][c]] {
                        return Err(GroupError::LawViolation {
                            law: "associativity",
                            witness: (a, b),
                        });
                    }
                }
            }
        }
        let mut neg = vec![0; size];
        for a in 0..size {
            match (0..size).find(|&b| add[a][b] == 0) {
                Some(b) => neg[a] = b,
                None => {
                    return Err(GroupError::LawViolation {
                        law: "inverses",
                        witness: (a, 0),
                    })
                }
            }
        }
        Ok(AbelianGroup { size, add, neg })
    }

    /// Z_n with addition mod n.
    pub fn cyclic(n: usize) -> AbelianGroup {
        let add = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        AbelianGroup::from_table(n, add).expect("cyclic table is a group")
    }

    /// Direct product; element `(a, b)` is index `a * |G2| + b`.
    pub fn product(g1: &AbelianGroup, g2: &AbelianGroup) -> AbelianGroup {
        let n1 = g1.size;
        let n2 = g2.size;
        let idx = |a: usize, b: usize| a * n2 + b;
        let mut add = vec![vec![0; n1 * n2]; n1 * n2];
        for a1 in 0..n1 {
            for b1 in 0..n2 {
                for a2 in 0..n1 {
                    for b2 in 0..n2 {
                        add[idx(a1, b1)][idx(a2, b2)] = idx(g1.add(a1, a2), g2.add(b1, b2));
                    }
                }
            }
        }
        AbelianGroup::from_table(n1 * n2, add).expect("product of groups is a group")
    }

    /// Z_2 x Z_2.
    pub fn klein() -> AbelianGroup {
        AbelianGroup::product(&AbelianGroup::cyclic(2), &AbelianGroup::cyclic(2))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add[a][self.neg[b]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups_validate() {
        for n in 1..=8 {
            let g = AbelianGroup::cyclic(n);
            assert_eq!(g.size(), n);
            for a in 0..n {
                assert_eq!(g.add(a, g.neg(a)), 0);
            }
        }
    }

    #[test]
    fn klein_is_elementary_abelian() {
        let g = AbelianGroup::klein();
        assert_eq!(g.size(), 4);
        for a in 0..4 {
            assert_eq!(g.add(a, a), 0);
            assert_eq!(g.neg(a), a);
        }
    }

    #[test]
    fn identity_must_be_index_zero() {
        // Z2 table with the identity at index 1
        let err = AbelianGroup::from_table(2, vec![vec![1, 0], vec![0, 1]]).unwrap_err();
        assert_eq!(
            err,
            GroupError::LawViolation {
                law: "identity",
                witness: (0, 0),
            }
        );
    }

    #[test]
    fn non_associative_table_rejected() {
        // a+b = max(a,b) on 2 elements: identity fine, commutative, no inverse for 1
        let err = AbelianGroup::from_table(2, vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(
            err,
            GroupError::LawViolation {
                law: "inverses",
                witness: (1, 0),
            }
        );
    }
}
