//! Brute-force oracles written against the definitions only.

#![allow(dead_code)]

use equidiv::ProdBij;

pub type Images = Vec<usize>;

/// All permutations of `0..n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Images> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Images>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Closure of `gens` under composition, identity included.
pub fn closure(n: usize, gens: &[Images]) -> Vec<Images> {
    let mut seen: Vec<Images> = vec![(0..n).collect()];
    let mut i = 0;
    while i < seen.len() {
        let x = seen[i].clone();
        for g in gens {
            let y: Images = x.iter().map(|&p| g[p]).collect();
            if !seen.contains(&y) {
                seen.push(y);
            }
        }
        i += 1;
    }
    seen.sort();
    seen
}

/// `f(α a, γ c) = (β b, γ c')` whenever `f(a, c) = (b, c')`.
pub fn is_sym(f: &ProdBij, alpha: &[usize], beta: &[usize], gamma: &[usize]) -> bool {
    (0..f.n_c()).all(|c| {
        (0..f.n_a()).all(|a| {
            let (b, c2) = f.get(a, c);
            f.get(alpha[a], gamma[c]) == (beta[b], gamma[c2])
        })
    })
}

pub fn stabilizer(f: &ProdBij, gammas: &[Images]) -> Vec<(Images, Images, Images)> {
    let pa = all_perms(f.n_a());
    let pb = all_perms(f.n_b());
    let mut out = Vec::new();
    for g in gammas {
        for a in &pa {
            for b in &pb {
                if is_sym(f, a, b, g) {
                    out.push((a.clone(), b.clone(), g.clone()));
                }
            }
        }
    }
    out
}

/// Every `h` with `h(α x) = β(h(x))` for all listed symmetries.
pub fn quotients(f: &ProdBij, gammas: &[Images]) -> Vec<Images> {
    let stab = stabilizer(f, gammas);
    all_perms(f.n_a())
        .into_iter()
        .filter(|h| {
            stab.iter()
                .all(|(a, b, _)| (0..h.len()).all(|x| h[a[x]] == b[h[x]]))
        })
        .collect()
}

pub fn full(n: usize) -> Vec<Images> {
    all_perms(n)
}

pub fn trivial(n: usize) -> Vec<Images> {
    vec![(0..n).collect()]
}

/// All bijections `A × C → B × C` with `|A| = n_a`, in cell order.
pub fn all_bijections(n_a: usize, n_c: usize) -> Vec<ProdBij> {
    all_perms(n_a * n_c)
        .into_iter()
        .map(|cells| {
            let table = cells.iter().map(|&k| (k % n_a, k / n_a)).collect();
            ProdBij::new(n_a, n_a, n_c, table).unwrap()
        })
        .collect()
}
