//! Basepoint division and its parallelization.
//!
//! With a basepoint `⋆ ∈ C`, let `p = f⟨⋆⟩` and `q = f⁻¹⟨⋆⟩`. Every point on
//! a cycle of the functional graph of `p ▷ q` is matched by `p`; those pairs
//! are subtracted from `f` and the process repeats on what is left.

use crate::bijection::{PartialMap, ProdBij};
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Divides `f` by `C` using basepoint `star`, returning `h: A → B`.
pub fn fp_divide(f: &ProdBij, star: usize) -> Result<Perm> {
    if star >= f.n_c() {
        return Err(Error::IndexOutOfRange {
            what: "basepoint",
            index: star,
            size: f.n_c(),
        });
    }
    let n = f.n_a();
    let mut quotient = vec![usize::MAX; n];
    let mut cur = f.clone();
    // current index -> original index
    let mut a_orig: Vec<usize> = (0..n).collect();
    let mut b_orig: Vec<usize> = (0..n).collect();

    while cur.n_a() > 0 {
        let p = cur.row(star)?;
        let q = cur.inverse().row(star)?;
        let pq: Vec<usize> = p.iter().map(|&b| q[b]).collect();
        let core = cycle_core(&pq);

        let mut used_b = vec![false; cur.n_a()];
        let mut pairs = Vec::with_capacity(core.len());
        for &x in &core {
            let b = p[x];
            assert!(
                !used_b[b],
                "basepoint row is not injective on the cycle core (point {x})"
            );
            used_b[b] = true;
            pairs.push((x, b));
            quotient[a_orig[x]] = b_orig[b];
        }

        let sub = cur.subtract(&PartialMap::new(pairs)?)?;
        a_orig = sub.a_map.iter().map(|&i| a_orig[i]).collect();
        b_orig = sub.b_map.iter().map(|&i| b_orig[i]).collect();
        cur = sub.bij;
    }
    Perm::from_images(quotient)
}

/// Points lying on a cycle of the functional graph of `g: 0..n → 0..n`,
/// in increasing order.
fn cycle_core(g: &[usize]) -> Vec<usize> {
    const NEW: u8 = 0;
    const ACTIVE: u8 = 1;
    const DONE: u8 = 2;
    let n = g.len();
    let mut state = vec![NEW; n];
    let mut on_cycle = vec![false; n];
    let mut path = Vec::new();
    for start in 0..n {
        if state[start] != NEW {
            continue;
        }
        let mut x = start;
        while state[x] == NEW {
            state[x] = ACTIVE;
            path.push(x);
            x = g[x];
        }
        if state[x] == ACTIVE {
            // x closes a new cycle within the current path
            let mut y = x;
            loop {
                on_cycle[y] = true;
                y = g[y];
                if y == x {
                    break;
                }
            }
        }
        for y in path.drain(..) {
            state[y] = DONE;
        }
    }
    (0..n).filter(|&x| on_cycle[x]).collect()
}

/// `f̄(a, c) = (FP(f, c)(a), c)`: divides at every basepoint at once.
pub fn parallelize(f: &ProdBij) -> Result<ProdBij> {
    let rows = (0..f.n_c())
        .map(|c| fp_divide(f, c))
        .collect::<Result<Vec<_>>>()?;
    ProdBij::from_parallel_rows(f.n_a(), &rows)
}
