use crate::bijection::ProdBij;
use crate::error::{Error, Result};

/// Multiplication table of a finite group on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    product: Vec<Vec<usize>>,
    identity: usize,
}

impl CayleyTable {
    /// Validates closure, associativity, identity and inverses.
    pub fn new(product: Vec<Vec<usize>>) -> Result<Self> {
        let n = product.len();
        if n == 0 {
            return Err(Error::InvalidTable("a group is not empty".into()));
        }
        if product.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidTable(format!("table must be {n}×{n} over 0..{n}")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| product[e][x] == x && product[x][e] == x))
            .ok_or_else(|| Error::InvalidTable("no identity element".into()))?;
        for x in 0..n {
            if !(0..n).any(|y| product[x][y] == identity && product[y][x] == identity) {
                return Err(Error::InvalidTable(format!("{x} has no inverse")));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if product[product[x][y]][z] != product[x][product[y][z]] {
                        return Err(Error::InvalidTable(format!(
                            "not associative at ({x}, {y}, {z})"
                        )));
                    }
                }
            }
        }
        Ok(CayleyTable { product, identity })
    }

    /// `Z_n` under addition.
    pub fn cyclic(n: usize) -> Result<Self> {
        CayleyTable::new((0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect())
    }

    /// `Z_2 × Z_2`, written as xor on `0..4`.
    pub fn klein() -> Self {
        CayleyTable::new((0..4).map(|x| (0..4).map(|y| x ^ y).collect()).collect())
            .expect("xor table is a group")
    }

    /// Whitespace-separated rows of integers, one row per line; `#` starts
    /// a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::parse(i + 1, format!("bad entry `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        CayleyTable::new(rows)
    }

    pub fn order(&self) -> usize {
        self.product.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.product[x][y]
    }
}

/// The regular representation `A = B = C = G`, `f(x, y) = (xy, y)`.
pub fn regular_rep(t: &CayleyTable) -> ProdBij {
    let n = t.order();
    let table = (0..n)
        .flat_map(|y| (0..n).map(move |x| (t.mul(x, y), y)))
        .collect();
    ProdBij::new(n, n, n, table).expect("group multiplication gives a bijection")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn rows(f: &ProdBij) -> Vec<Vec<usize>> {
        (0..f.n_c()).map(|c| f.row(c).unwrap()).collect()
    }

    #[test]
    fn z2_is_the_xor_table() {
        let f = regular_rep(&CayleyTable::cyclic(2).unwrap());
        let e1 = ProdBij::new(2, 2, 2, vec![(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        assert_eq!(f, e1);
    }

    #[test]
    fn z3_and_klein_tables() {
        // entries 1..n written 0-based
        let z3 = regular_rep(&CayleyTable::cyclic(3).unwrap());
        assert_eq!(rows(&z3), vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]);
        let k4 = regular_rep(&CayleyTable::klein());
        assert_eq!(
            rows(&k4),
            vec![
                vec![0, 1, 2, 3],
                vec![1, 0, 3, 2],
                vec![2, 3, 0, 1],
                vec![3, 2, 1, 0]
            ]
        );
        assert!(z3.is_parallel() && k4.is_parallel());
    }

    #[test]
    fn rows_are_right_multiplications() {
        let t = CayleyTable::cyclic(5).unwrap();
        let f = regular_rep(&t);
        for c in 0..5 {
            let expected: Vec<usize> = (0..5).map(|x| t.mul(x, c)).collect();
            assert_eq!(f.row(c).unwrap(), expected);
            assert!(Perm::from_images(expected).is_ok());
        }
    }

    #[test]
    fn invalid_tables() {
        assert!(CayleyTable::new(vec![]).is_err());
        assert!(CayleyTable::new(vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(CayleyTable::parse("0 1\n1 x\n").is_err());
        // a latin square that is not associative
        let quasi = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(CayleyTable::new(quasi), Err(Error::InvalidTable(_))));
        assert_eq!(
            CayleyTable::parse("# z2\n0 1\n1 0\n").unwrap(),
            CayleyTable::cyclic(2).unwrap()
        );
    }
}
