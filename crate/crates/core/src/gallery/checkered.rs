//! Checkered Cartesian product.
//!
//! For each cycle `(c_0, ..., c_{l-1})` of a fixed-point-free `σ` there is a
//! block `p(j̄, c_m) = ((j + m) mod l, c_m)` from barred to unbarred indices,
//! and `P = p ∪ p⁻¹` is an involution. Elements are tuples with one barred or
//! unbarred coordinate per cycle; `A` holds the tuples with an even number
//! of unbarred coordinates and `B` the odd ones. At `c` in cycle `i`, `f`
//! applies `P` to coordinate `i`, which flips the parity.
//!
//! Labels write the coordinate of the last cycle first (`0̄1` is barred `0`
//! for the last cycle, unbarred `1` for the first). Elements are ordered
//! lexicographically by label, with barred before unbarred in each
//! coordinate.

use crate::bijection::{EqdFile, Labels, ProdBij};
use crate::equivariance::SymTriple;
use crate::error::{Error, Result};
use crate::perm::Perm;

use super::barred;

#[derive(Clone, Debug)]
pub struct Checkered {
    pub file: EqdFile,
    /// One rotation per cycle, then (with more than one cycle) their product.
    pub symmetries: Vec<SymTriple>,
}

/// A coordinate value `(unbarred, j)`.
type Coord = (bool, usize);

pub fn checkered_product(sigma: &Perm, c_labels: &[String]) -> Result<Checkered> {
    let n_c = sigma.degree();
    if c_labels.len() != n_c {
        return Err(Error::DegreeMismatch {
            expected: n_c,
            found: c_labels.len(),
        });
    }
    if n_c == 0 || !sigma.fixed_points().is_empty() {
        return Err(Error::Precondition(format!(
            "checkered product needs a permutation without fixed points, got {}",
            sigma.to_cycle_string(Some(c_labels))
        )));
    }
    let cycles = sigma.cycles();
    let lens: Vec<usize> = cycles.iter().map(Vec::len).collect();
    // (cycle, position) of every point of C
    let mut place = vec![(0, 0); n_c];
    for (i, cyc) in cycles.iter().enumerate() {
        for (m, &c) in cyc.iter().enumerate() {
            place[c] = (i, m);
        }
    }

    let tuples = all_tuples(&lens);
    let parity = |t: &[Coord]| t.iter().filter(|x| x.0).count() % 2;
    let a_elems: Vec<&Vec<Coord>> = tuples.iter().filter(|t| parity(t) == 0).collect();
    let b_elems: Vec<&Vec<Coord>> = tuples.iter().filter(|t| parity(t) == 1).collect();
    let index_of = |set: &[&Vec<Coord>], t: &Vec<Coord>| -> usize {
        set.binary_search_by(|x| key(x).cmp(&key(t)))
            .expect("tuple lies in the parity class")
    };

    let flip = |t: &[Coord], c: usize| -> Vec<Coord> {
        let (i, m) = place[c];
        let l = lens[i];
        let mut out = t.to_vec();
        out[i] = match t[i] {
            (false, j) => (true, (j + m) % l),
            (true, k) => (false, (k + l - m % l) % l),
        };
        out
    };

    let n = a_elems.len();
    let mut table = Vec::with_capacity(n * n_c);
    for c in 0..n_c {
        for t in &a_elems {
            table.push((index_of(&b_elems, &flip(t, c)), c));
        }
    }
    let bij = ProdBij::new(n, b_elems.len(), n_c, table)?;

    let sep = if lens.iter().any(|&l| l > 10) { "." } else { "" };
    let label = |t: &Vec<Coord>| -> String {
        t.iter()
            .rev()
            .map(|&(u, j)| if u { j.to_string() } else { barred(j) })
            .collect::<Vec<_>>()
            .join(sep)
    };
    let labels = Labels {
        a: Some(a_elems.iter().map(|t| label(t)).collect()),
        b: Some(b_elems.iter().map(|t| label(t)).collect()),
        c: Some(c_labels.to_vec()),
    };

    // Rotation on cycle i: C rotates along the cycle, unbarred coordinate i
    // shifts by one, barred coordinates stay.
    let shift = |set: &[&Vec<Coord>], i: usize| -> Perm {
        let images = set
            .iter()
            .map(|t| {
                let mut s = (*t).clone();
                if let (true, k) = s[i] {
                    s[i] = (true, (k + 1) % lens[i]);
                }
                index_of(set, &s)
            })
            .collect();
        Perm::from_images_unchecked(images)
    };
    let mut symmetries: Vec<SymTriple> = cycles
        .iter()
        .enumerate()
        .map(|(i, cyc)| {
            SymTriple::new(
                shift(&a_elems, i),
                shift(&b_elems, i),
                Perm::from_cycles(n_c, &[cyc]).expect("cycle of sigma"),
            )
        })
        .collect();
    if symmetries.len() > 1 {
        let product = symmetries[1..]
            .iter()
            .fold(symmetries[0].clone(), |acc, t| acc.then(t));
        symmetries.push(product);
    }

    Ok(Checkered {
        file: EqdFile { bij, labels },
        symmetries,
    })
}

/// Sort key: last coordinate most significant, barred before unbarred.
fn key(t: &[Coord]) -> Vec<Coord> {
    t.iter().rev().copied().collect()
}

fn all_tuples(lens: &[usize]) -> Vec<Vec<Coord>> {
    let mut out: Vec<Vec<Coord>> = vec![Vec::new()];
    for &l in lens {
        let coords: Vec<Coord> = (0..l)
            .map(|j| (false, j))
            .chain((0..l).map(|j| (true, j)))
            .collect();
        out = out
            .into_iter()
            .flat_map(|t| {
                coords.iter().map(move |&x| {
                    let mut s = t.clone();
                    s.push(x);
                    s
                })
            })
            .collect();
    }
    out.sort_by_key(|t| key(t));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivariance::is_symmetry;
    use crate::perm::labels_in_order;

    fn build(spec: &str) -> Checkered {
        let labels = labels_in_order(spec).unwrap();
        let sigma = Perm::parse_cycles(spec, &labels).unwrap();
        checkered_product(&sigma, &labels).unwrap()
    }

    fn rows_labeled(ch: &Checkered) -> Vec<Vec<String>> {
        let f = &ch.file.bij;
        let lb = ch.file.labels.b.as_ref().unwrap();
        (0..f.n_c())
            .map(|c| f.row(c).unwrap().into_iter().map(|b| lb[b].clone()).collect())
            .collect()
    }

    #[test]
    fn two_cycle_block() {
        let ch = build("(d,e)");
        assert_eq!(rows_labeled(&ch), vec![vec!["0", "1"], vec!["1", "0"]]);
        assert_eq!(ch.file.labels.a.as_ref().unwrap(), &[barred(0), barred(1)]);
        assert_eq!(ch.symmetries.len(), 1);
    }

    #[test]
    fn three_cycle_block() {
        let ch = build("(a,b,c)");
        assert_eq!(
            rows_labeled(&ch),
            vec![vec!["0", "1", "2"], vec!["1", "2", "0"], vec!["2", "0", "1"]]
        );
        let inv = ch.file.bij.inverse();
        let la = ch.file.labels.a.as_ref().unwrap();
        let inv_rows: Vec<Vec<String>> = (0..3)
            .map(|c| inv.row(c).unwrap().into_iter().map(|a| la[a].clone()).collect())
            .collect();
        assert_eq!(
            inv_rows,
            vec![
                vec![barred(0), barred(1), barred(2)],
                vec![barred(2), barred(0), barred(1)],
                vec![barred(1), barred(2), barred(0)],
            ]
        );
    }

    #[test]
    fn symmetries_hold() {
        for spec in ["(a,b)", "(a,b,c)(d,e)", "(a,b)(c,d)", "(a,b,c,d)(e,f)(g,h,i)"] {
            let ch = build(spec);
            for t in &ch.symmetries {
                assert!(is_symmetry(&ch.file.bij, t).unwrap(), "{spec}: {t:?}");
            }
            assert!(ch.file.bij.is_parallel());
        }
    }

    #[test]
    fn rejects_fixed_points() {
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let sigma = Perm::parse_cycles("(a,b)", &labels).unwrap();
        assert!(matches!(
            checkered_product(&sigma, &labels),
            Err(Error::Precondition(_))
        ));
    }
}
