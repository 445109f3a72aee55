use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of an element inside a [`Group`] table. The identity is always `0`.
pub type Elem = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("table is empty")]
    Empty,
    #[error("table is not square: row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("entry {value} at ({row}, {col}) is out of range for order {order}")]
    OutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("element 0 is not a two-sided identity (fails at element {0})")]
    NoIdentityAtZero(usize),
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("associativity fails at ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
}

/// Raw multiplication table as read from a group file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

/// A finite group given by its Cayley table, identity at index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    table: Vec<Vec<Elem>>,
    inverses: Vec<Elem>,
    orders: Vec<usize>,
}

impl Group {
    /// Validates a raw table. Associativity is checked on all `order³` triples.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::Empty);
        }
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != order {
                return Err(GroupError::NotSquare { row, len: entries.len(), order });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= order {
                    return Err(GroupError::OutOfRange { row, col, value, order });
                }
            }
        }
        for x in 0..order {
            if table[0][x] != x || table[x][0] != x {
                return Err(GroupError::NoIdentityAtZero(x));
            }
        }
        let mut inverses = Vec::with_capacity(order);
        for x in 0..order {
            let inv = (0..order).find(|&y| table[x][y] == 0 && table[y][x] == 0);
            inverses.push(inv.ok_or(GroupError::NoInverse(x))?);
        }
        for x in 0..order {
            for y in 0..order {
                let xy = table[x][y];
                for z in 0..order {
                    if table[xy][z] != table[x][table[y][z]] {
                        return Err(GroupError::NonAssociative(x, y, z));
                    }
                }
            }
        }
        let orders = (0..order)
            .map(|x| {
                let mut acc = x;
                let mut n = 1;
                while acc != 0 {
                    acc = table[acc][x];
                    n += 1;
                }
                n
            })
            .collect();
        Ok(Group { table, inverses, orders })
    }

    pub fn from_file(file: GroupFile) -> Result<Self, GroupError> {
        if file.order != file.table.len() {
            return Err(GroupError::NotSquare {
                row: file.table.len(),
                len: file.table.len(),
                order: file.order,
            });
        }
        Self::from_table(file.table)
    }

    pub fn to_file(&self) -> GroupFile {
        GroupFile { order: self.order(), table: self.table.clone() }
    }

    /// Cyclic group of order `n`, element `i` standing for the `i`-th power of a generator.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group needs positive order");
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::from_table(table).expect("cyclic table is a group")
    }

    /// Symmetric group on three letters.
    ///
    /// Elements are permutations of `{0,1,2}` in the order
    /// `id, (012), (021), (01), (02), (12)`; the product `xy` applies `y` first.
    pub fn symmetric3() -> Self {
        const PERMS: [[usize; 3]; 6] =
            [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [2, 1, 0], [0, 2, 1]];
        let index = |p: [usize; 3]| PERMS.iter().position(|q| *q == p).unwrap();
        let table = (0..6)
            .map(|x| {
                (0..6)
                    .map(|y| index([PERMS[x][PERMS[y][0]], PERMS[x][PERMS[y][1]], PERMS[x][PERMS[y][2]]]))
                    .collect()
            })
            .collect();
        Self::from_table(table).expect("S3 table is a group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.table[x][y]
    }

    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        self.inverses[x]
    }

    pub fn element_order(&self, x: Elem) -> usize {
        self.orders[x]
    }

    pub fn element_orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn has_involution(&self) -> bool {
        self.orders.iter().any(|&o| o == 2)
    }

    pub fn is_involution_free(&self) -> bool {
        !self.has_involution()
    }

    /// Smallest order of a nonidentity element, `None` for the trivial group.
    pub fn min_nonidentity_order(&self) -> Option<usize> {
        self.orders[1..].iter().copied().min()
    }

    pub fn are_conjugate(&self, x: Elem, y: Elem) -> bool {
        (0..self.order()).any(|z| self.mul(self.mul(z, x), self.inv(z)) == y)
    }

    pub fn pow(&self, x: Elem, n: i64) -> Elem {
        let base = if n < 0 { self.inv(x) } else { x };
        let reps = n.unsigned_abs() % self.orders[x] as u64;
        (0..reps).fold(0, |acc, _| self.mul(acc, base))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_has_involution() {
        let g = Group::from_table(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert!(g.has_involution());
        assert_eq!(g.min_nonidentity_order(), Some(2));
    }

    #[test]
    fn z3_is_involution_free() {
        let g = Group::cyclic(3);
        assert!(g.is_involution_free());
        assert_eq!(g.element_orders(), &[1, 3, 3]);
    }

    #[test]
    fn missing_inverse_rejected() {
        let err = Group::from_table(vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, GroupError::NoInverse(1));
    }

    #[test]
    fn bad_identity_rejected() {
        let err = Group::from_table(vec![vec![1, 0], vec![0, 1]]).unwrap_err();
        assert_eq!(err, GroupError::NoIdentityAtZero(0));
    }

    #[test]
    fn non_associative_rejected() {
        // Latin square with identity 0 and inverses, but not a group.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(Group::from_table(t), Err(GroupError::NonAssociative(..))));
    }

    #[test]
    fn s3_shape() {
        let g = Group::symmetric3();
        assert_eq!(g.element_orders(), &[1, 3, 3, 2, 2, 2]);
        assert!(g.are_conjugate(3, 4));
        assert!(!g.are_conjugate(1, 3));
        // nonabelian
        assert_ne!(g.mul(1, 3), g.mul(3, 1));
    }

    #[test]
    fn pow_handles_negative_exponents() {
        let g = Group::cyclic(5);
        assert_eq!(g.pow(2, -1), 3);
        assert_eq!(g.pow(2, 7), 4);
    }
}
