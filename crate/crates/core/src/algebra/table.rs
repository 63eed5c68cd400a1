//! Abstract finite groups given by their multiplication table.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{AlgebraError, Exponent, Permutation, Word};

/// `product[x][y]` is the product `xy`; in an action `y` acts first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
    elements: Vec<String>,
    product: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
}

impl GroupTable {
    /// Builds a table from its multiplication alone: the neutral element and
    /// inverses are recovered from the products, and all axioms are checked
    /// exhaustively.
    pub fn from_product(elements: Vec<String>, product: Vec<Vec<usize>>) -> Result<Self, AlgebraError> {
        let n = elements.len();
        if n == 0 {
            return Err(AlgebraError::InvalidTable("empty element set".into()));
        }
        if product.len() != n || product.iter().any(|row| row.len() != n || row.iter().any(|&z| z >= n)) {
            return Err(AlgebraError::InvalidTable("product table is not n×n over the elements".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| product[e][x] == x && product[x][e] == x))
            .ok_or_else(|| AlgebraError::InvalidTable("no neutral element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| product[x][y] == identity && product[y][x] == identity)
                .ok_or_else(|| AlgebraError::InvalidTable(format!("{} has no inverse", elements[x])))?;
            inverse.push(inv);
        }
        let table = GroupTable {
            elements,
            product,
            inverse,
            identity,
        };
        if let Some((x, y, z)) = table.associativity_counterexample() {
            return Err(AlgebraError::InvalidTable(format!(
                "({x}{y}){z} != {x}({y}{z})",
                x = table.elements[x],
                y = table.elements[y],
                z = table.elements[z]
            )));
        }
        Ok(table)
    }

    /// The cyclic group of order `n`, elements labelled `0..n`. For `n = 3`
    /// the labels are the triangle rotations `·`, `↷`, `↶`.
    pub fn cyclic(n: usize) -> Result<Self, AlgebraError> {
        let elements: Vec<String> = if n == 3 {
            vec!["·".into(), "↷".into(), "↶".into()]
        } else {
            (0..n).map(|i| i.to_string()).collect()
        };
        let product = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
        Self::from_product(elements, product)
    }

    /// The regular (Cayley) group of a set of permutations closed under composition.
    pub fn from_permutations(labels: Vec<String>, perms: &[Permutation]) -> Result<Self, AlgebraError> {
        let n = perms.len();
        let mut product = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                let xy = perms[x].compose(&perms[y])?;
                product[x][y] = perms
                    .iter()
                    .position(|p| *p == xy)
                    .ok_or_else(|| AlgebraError::InvalidTable("set not closed under composition".into()))?;
            }
        }
        Self::from_product(labels, product)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self, x: usize) -> &str {
        &self.elements[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == label)
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.product[x][y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn product_table(&self) -> &[Vec<usize>] {
        &self.product
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|x| (0..n).all(|y| self.product[x][y] == self.product[y][x]))
    }

    pub fn associativity_counterexample(&self) -> Option<(usize, usize, usize)> {
        let n = self.order();
        for x in 0..n {
            for y in 0..n {
                let xy = self.product[x][y];
                for z in 0..n {
                    if self.product[xy][z] != self.product[x][self.product[y][z]] {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Evaluates a word whose labels are element names. The first letter
    /// acts first, so the result is the written product `s_n ⋯ s_1`.
    pub fn evaluate_word(&self, word: &Word) -> Result<usize, AlgebraError> {
        let mut acc = self.identity;
        for l in word.letters() {
            let x = self
                .index_of(&l.label)
                .ok_or_else(|| AlgebraError::UnknownLabel(l.label.clone()))?;
            let x = match l.exponent {
                Exponent::Plus => x,
                Exponent::Minus => self.inverse[x],
            };
            acc = self.product[x][acc];
        }
        Ok(acc)
    }

    /// Left multiplication by `x` as a permutation of the elements.
    pub fn left_regular(&self, x: usize) -> Permutation {
        Permutation::from_images((0..self.order()).map(|y| self.product[x][y]))
            .expect("rows of a group table are permutations")
    }
}

impl fmt::Display for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.elements.iter().map(|e| e.chars().count()).max().unwrap_or(1);
        write!(f, "{:w$} |", "")?;
        for e in &self.elements {
            write!(f, " {e:w$}")?;
        }
        writeln!(f)?;
        for (x, row) in self.product.iter().enumerate() {
            write!(f, "{:w$} |", self.elements[x])?;
            for &z in row {
                write!(f, " {:w$}", self.elements[z])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_table_of_the_triangle() {
        let t = GroupTable::cyclic(3).unwrap();
        let dot = t.index_of("·").unwrap();
        let cw = t.index_of("↷").unwrap();
        let ccw = t.index_of("↶").unwrap();
        let expected = [[dot, cw, ccw], [cw, ccw, dot], [ccw, dot, cw]];
        for (x, row) in expected.iter().enumerate() {
            for (y, &z) in row.iter().enumerate() {
                assert_eq!(t.mul(x, y), z);
            }
        }
        assert_eq!(t.inv(dot), dot);
        assert_eq!(t.inv(cw), ccw);
        assert_eq!(t.inv(ccw), cw);
        assert_eq!(t.identity(), dot);
        assert_eq!(t.evaluate_word(&Word::from_labels(["↷", "↷"])).unwrap(), ccw);
        assert_eq!(t.evaluate_word(&Word::empty()).unwrap(), dot);
    }

    #[test]
    fn word_times_inverse_is_identity() {
        let t = GroupTable::cyclic(7).unwrap();
        let w = Word::from_labels(["3", "5", "1", "6"]);
        assert_eq!(t.evaluate_word(&w.then(&w.inverse())).unwrap(), t.identity());
        assert!(matches!(
            t.evaluate_word(&Word::from_labels(["9"])),
            Err(AlgebraError::UnknownLabel(_))
        ));
    }

    #[test]
    fn rejects_non_groups() {
        // x*y = x is associative but has no two-sided neutral element.
        let bad = GroupTable::from_product(
            vec!["a".into(), "b".into()],
            vec![vec![0, 0], vec![1, 1]],
        );
        assert!(bad.is_err());
        // Subtraction mod 3 is not associative.
        let sub = GroupTable::from_product(
            vec!["0".into(), "1".into(), "2".into()],
            (0..3).map(|x| (0..3).map(|y| (x + 3 - y) % 3).collect()).collect(),
        );
        assert!(sub.is_err());
    }

    #[test]
    fn cyclic_tables_satisfy_axioms() {
        for n in 1..=12 {
            let t = GroupTable::cyclic(n).unwrap();
            assert!(t.associativity_counterexample().is_none());
            for x in 0..n {
                assert_eq!(t.mul(x, t.inv(x)), t.identity());
                assert_eq!(t.mul(x, t.identity()), x);
            }
        }
    }

    #[test]
    fn cayley_table_of_s3_is_non_commutative() {
        let mut perms = Vec::new();
        let mut labels = Vec::new();
        for v in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            labels.push(format!("{v:?}"));
            perms.push(Permutation::from_images(v).unwrap());
        }
        let t = GroupTable::from_permutations(labels, &perms).unwrap();
        assert_eq!(t.order(), 6);
        assert!(!t.is_commutative());
        assert!(t.left_regular(1).compose(&t.left_regular(1)).unwrap().is_identity());
    }
}
