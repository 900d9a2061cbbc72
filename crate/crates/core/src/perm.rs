//! Permutations of `0..n` and small permutation groups.
//!
//! Points are plain indices. Labels only appear when parsing or printing
//! cycle notation such as `(a,b,c)(d,e)`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Default refusal threshold for group enumeration (the order of `A_8`).
pub const DEFAULT_GROUP_CAP: usize = 20160;

/// A permutation of `0..n`, stored as its image sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm { images }
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation of degree `n` from disjoint cycles of points.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= n {
                    return Err(Error::IndexOutOfRange {
                        what: "point",
                        index: x,
                        size: n,
                    });
                }
                if used[x] {
                    return Err(Error::NotAPermutation(format!(
                        "point {x} appears in more than one cycle"
                    )));
                }
                used[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn into_images(self) -> Vec<usize> {
        self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self ▷ other`: first `self`, then `other`.
    ///
    /// Panics on a degree mismatch; see [`Perm::checked_then`].
    pub fn then(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in then");
        Perm {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn checked_then(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Cycles in order of their least point; each cycle starts at its least
    /// point. Fixed points appear as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycles of length at least two.
    pub fn nontrivial_cycles(&self) -> Vec<Vec<usize>> {
        self.cycles().into_iter().filter(|c| c.len() > 1).collect()
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&x| self.images[x] == x).collect()
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| acc.lcm(&c.len()))
    }

    pub fn pow(&self, k: usize) -> Perm {
        let mut images = vec![0; self.degree()];
        for cycle in self.cycles() {
            let len = cycle.len();
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + k) % len];
            }
        }
        Perm { images }
    }

    /// True iff the permutation is not the identity and every cycle has the
    /// same length (so in particular there are no fixed points).
    pub fn is_semiregular(&self) -> bool {
        let cycles = self.cycles();
        match cycles.first() {
            None => false,
            Some(first) => first.len() > 1 && cycles.iter().all(|c| c.len() == first.len()),
        }
    }

    /// `γ^(m/p)` for `m` the order of `γ` and `p` the least prime dividing `m`.
    /// Every nontrivial cycle of the result has length `p`.
    pub fn semiregular_power(&self) -> Result<Perm> {
        if self.is_identity() {
            return Err(Error::Precondition(
                "semiregular_power of the identity".into(),
            ));
        }
        let m = self.order();
        let p = least_prime_factor(m);
        Ok(self.pow(m / p))
    }

    /// Parses cycle notation such as `(a,b,c)(d,e)` against a label list.
    /// The identity is written `()`; 1-cycles are accepted.
    pub fn parse_cycles<S: AsRef<str>>(text: &str, labels: &[S]) -> Result<Perm> {
        let n = labels.len();
        let cycles = split_cycles(text)?;
        let mut point_cycles = Vec::with_capacity(cycles.len());
        for cycle in &cycles {
            let mut pts = Vec::with_capacity(cycle.len());
            for tok in cycle {
                let idx = labels
                    .iter()
                    .position(|l| l.as_ref() == tok)
                    .ok_or_else(|| Error::parse(0, format!("unknown label `{tok}` in `{text}`")))?;
                pts.push(idx);
            }
            point_cycles.push(pts);
        }
        let refs: Vec<&[usize]> = point_cycles.iter().map(|c| c.as_slice()).collect();
        Perm::from_cycles(n, &refs)
    }

    /// Writes the permutation in cycle notation, omitting fixed points.
    /// Without labels, points are printed as indices.
    pub fn to_cycle_string<S: AsRef<str>>(&self, labels: Option<&[S]>) -> String {
        let cycles = self.nontrivial_cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut out = String::new();
        for c in cycles {
            out.push('(');
            for (i, &x) in c.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                match labels {
                    Some(l) => out.push_str(l[x].as_ref()),
                    None => out.push_str(&x.to_string()),
                }
            }
            out.push(')');
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string::<&str>(None))
    }
}

/// `p ▷ q`, checking degrees.
pub fn compose(p: &Perm, q: &Perm) -> Result<Perm> {
    p.checked_then(q)
}

/// Parses one cycle string whose labels come from several disjoint sets,
/// returning one permutation per set. A cycle may not mix sets.
pub fn parse_mixed_cycles<S: AsRef<str>>(text: &str, sets: &[&[S]]) -> Result<Vec<Perm>> {
    let all: Vec<&str> = sets.iter().flat_map(|s| s.iter().map(AsRef::as_ref)).collect();
    let p = Perm::parse_cycles(text, &all)?;
    let mut out = Vec::with_capacity(sets.len());
    let mut start = 0;
    for set in sets {
        let end = start + set.len();
        let images: Vec<usize> = (start..end).map(|x| p.apply(x)).collect();
        if images.iter().any(|&y| y < start || y >= end) {
            return Err(Error::parse(0, format!("a cycle of `{text}` mixes label sets")));
        }
        out.push(Perm::from_images_unchecked(
            images.into_iter().map(|y| y - start).collect(),
        ));
        start = end;
    }
    Ok(out)
}

/// Labels in order of first appearance in a cycle string.
pub fn labels_in_order(text: &str) -> Result<Vec<String>> {
    let mut out: Vec<String> = Vec::new();
    for cycle in split_cycles(text)? {
        for tok in cycle {
            if !out.contains(&tok) {
                out.push(tok);
            }
        }
    }
    Ok(out)
}

fn split_cycles(text: &str) -> Result<Vec<Vec<String>>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::parse(0, "empty permutation"));
    }
    let mut cycles = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let body_start = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::parse(0, format!("expected `(` in `{text}`")))?;
        let close = body_start
            .find(')')
            .ok_or_else(|| Error::parse(0, format!("unclosed cycle in `{text}`")))?;
        let body = body_start[..close].trim();
        if !body.is_empty() {
            let toks: Vec<String> = body.split(',').map(|t| t.trim().to_string()).collect();
            if toks.iter().any(|t| t.is_empty() || t.contains('(')) {
                return Err(Error::parse(0, format!("malformed cycle in `{text}`")));
            }
            cycles.push(toks);
        }
        rest = body_start[close + 1..].trim_start();
    }
    Ok(cycles)
}

fn least_prime_factor(m: usize) -> usize {
    (2..=m).find(|&d| m.is_multiple_of(d)).unwrap_or(m)
}

/// A permutation group given by generators. Elements are enumerated on
/// demand by breadth-first closure.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: OnceLock<Vec<Perm>>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            elements: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            elements: OnceLock::new(),
        }
    }

    /// The full symmetric group, generated by `(0,1)` and `(0,1,...,n-1)`.
    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Perm::from_cycles(degree, &[&[0, 1]]).unwrap());
        }
        if degree >= 3 {
            let cyc: Vec<usize> = (0..degree).collect();
            gens.push(Perm::from_cycles(degree, &[&cyc]).unwrap());
        }
        PermGroup {
            degree,
            generators: gens,
            elements: OnceLock::new(),
        }
    }

    pub fn cyclic(generator: Perm) -> Self {
        PermGroup {
            degree: generator.degree(),
            generators: vec![generator],
            elements: OnceLock::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// All elements sorted by image sequence, or an error if the order
    /// exceeds `cap`.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<Perm>> {
        if let Some(els) = self.elements.get() {
            if els.len() > cap {
                return Err(Error::GroupTooLarge(cap));
            }
            return Ok(els.clone());
        }
        let els = closure(self.degree, &self.generators, cap)?;
        let _ = self.elements.set(els.clone());
        Ok(els)
    }

    /// Elements with the default cap, cached after the first call.
    pub fn elements(&self) -> Result<&[Perm]> {
        if self.elements.get().is_none() {
            let els = closure(self.degree, &self.generators, DEFAULT_GROUP_CAP)?;
            let _ = self.elements.set(els);
        }
        Ok(self.elements.get().expect("populated above"))
    }

    /// Points fixed by every element. A point fixed by all generators is
    /// fixed by the whole group, so no enumeration is needed.
    pub fn global_fixed_points(&self) -> Vec<usize> {
        (0..self.degree)
            .filter(|&x| self.generators.iter().all(|g| g.apply(x) == x))
            .collect()
    }

    pub fn contains(&self, p: &Perm) -> Result<bool> {
        Ok(self.elements()?.binary_search(p).is_ok())
    }
}

fn closure(degree: usize, generators: &[Perm], cap: usize) -> Result<Vec<Perm>> {
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::GroupTooLarge(cap));
                }
                queue.push_back(y);
            }
        }
    }
    let mut els: Vec<Perm> = seen.into_iter().collect();
    els.sort();
    Ok(els)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[usize]) -> Perm {
        Perm::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(compose(&p(&[1, 0]), &p(&[1, 0])).unwrap(), p(&[0, 1]));
        assert_eq!(compose(&p(&[1, 2, 0]), &p(&[1, 2, 0])).unwrap(), p(&[2, 0, 1]));
        assert_eq!(compose(&p(&[0, 1, 2]), &p(&[2, 1, 0])).unwrap(), p(&[2, 1, 0]));
        assert!(matches!(
            compose(&p(&[0, 1]), &p(&[0, 1, 2])),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn then_is_first_things_first() {
        // (p ▷ q)(x) = q(p(x))
        let a = p(&[1, 2, 0]);
        let b = p(&[0, 2, 1]);
        let ab = a.then(&b);
        for x in 0..3 {
            assert_eq!(ab.apply(x), b.apply(a.apply(x)));
        }
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Perm::from_images(vec![0, 0]).is_err());
        assert!(Perm::from_images(vec![2, 0]).is_err());
        assert!(Perm::from_images(vec![]).is_ok());
    }

    #[test]
    fn cycle_examples() {
        assert_eq!(p(&[1, 2, 0, 4, 3]).cycles(), vec![vec![0, 1, 2], vec![3, 4]]);
        assert_eq!(Perm::identity(3).cycles(), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(p(&[1, 0]).cycles(), vec![vec![0, 1]]);
    }

    #[test]
    fn semiregular_examples() {
        assert!(p(&[1, 0, 3, 2]).is_semiregular());
        assert!(!p(&[1, 2, 0, 4, 3]).is_semiregular());
        assert!(!Perm::identity(4).is_semiregular());
        assert!(!Perm::identity(0).is_semiregular());
    }

    #[test]
    fn semiregular_power_examples() {
        assert_eq!(
            p(&[1, 2, 0, 4, 3]).semiregular_power().unwrap(),
            p(&[0, 1, 2, 4, 3])
        );
        assert_eq!(p(&[1, 0]).semiregular_power().unwrap(), p(&[1, 0]));
        assert_eq!(p(&[1, 2, 3, 0]).semiregular_power().unwrap(), p(&[2, 3, 0, 1]));
        assert!(Perm::identity(3).semiregular_power().is_err());
    }

    fn all_perms(n: usize) -> Vec<Perm> {
        if n == 0 {
            return vec![Perm::identity(0)];
        }
        let mut out = Vec::new();
        for q in all_perms(n - 1) {
            for pos in 0..n {
                let mut v: Vec<usize> = q.images().to_vec();
                v.insert(pos, n - 1);
                out.push(p(&v));
            }
        }
        out
    }

    #[test]
    fn semiregular_power_is_semiregular_on_its_support_exhaustive() {
        // Every nontrivial cycle of the power has the same prime length.
        for n in 1..=8 {
            for g in all_perms(n) {
                if g.is_identity() {
                    continue;
                }
                let s = g.semiregular_power().unwrap();
                assert!(!s.is_identity(), "{g:?}");
                let moved: Vec<usize> = (0..n).filter(|&x| s.apply(x) != x).collect();
                let lens: HashSet<usize> = s.nontrivial_cycles().iter().map(|c| c.len()).collect();
                assert_eq!(lens.len(), 1, "{g:?} -> {s:?}");
                // restricted to its moved points it is semiregular
                let labels: Vec<usize> = moved.clone();
                let restricted: Vec<usize> = labels
                    .iter()
                    .map(|&x| labels.iter().position(|&y| y == s.apply(x)).unwrap())
                    .collect();
                assert!(p(&restricted).is_semiregular());
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        let g = PermGroup::new(2, vec![p(&[1, 0])]).unwrap();
        assert_eq!(g.enumerate(10).unwrap().len(), 2);
        let s3 = PermGroup::new(3, vec![p(&[1, 0, 2]), p(&[1, 2, 0])]).unwrap();
        assert_eq!(s3.enumerate(10).unwrap().len(), 6);
        let labels = ["a", "b", "c", "d", "e", "f"];
        let klein_like = PermGroup::new(
            6,
            vec![
                Perm::parse_cycles("(a,b)(c,d)", &labels).unwrap(),
                Perm::parse_cycles("(a,b)(e,f)", &labels).unwrap(),
            ],
        )
        .unwrap();
        let els = klein_like.enumerate(100).unwrap();
        let mut expected = vec![
            Perm::identity(6),
            p(&[1, 0, 3, 2, 4, 5]),
            p(&[1, 0, 2, 3, 5, 4]),
            p(&[0, 1, 3, 2, 5, 4]),
        ];
        expected.sort();
        assert_eq!(els, expected);
        assert_eq!(
            PermGroup::symmetric(5).enumerate(120),
            Ok(PermGroup::symmetric(5).enumerate(200).unwrap())
        );
        assert_eq!(
            PermGroup::symmetric(5).enumerate(119),
            Err(Error::GroupTooLarge(119))
        );
    }

    #[test]
    fn mixed_cycles_split_by_set() {
        let c = ["a", "b"];
        let s = ["K", "Q", "J"];
        let ps = parse_mixed_cycles("(a,b)(K,Q)", &[&c[..], &s[..]]).unwrap();
        assert_eq!(ps[0], p(&[1, 0]));
        assert_eq!(ps[1], p(&[1, 0, 2]));
        assert!(parse_mixed_cycles("(a,K)", &[&c[..], &s[..]]).is_err());
    }

    #[test]
    fn global_fixed_point_examples() {
        let g = PermGroup::new(3, vec![p(&[1, 0, 2])]).unwrap();
        assert_eq!(g.global_fixed_points(), vec![2]);
        let labels = ["a", "b", "c", "d", "e", "f"];
        let klein_like = PermGroup::new(
            6,
            vec![
                Perm::parse_cycles("(a,b)(c,d)", &labels).unwrap(),
                Perm::parse_cycles("(a,b)(e,f)", &labels).unwrap(),
            ],
        )
        .unwrap();
        assert!(klein_like.global_fixed_points().is_empty());
        assert_eq!(PermGroup::trivial(3).global_fixed_points(), vec![0, 1, 2]);
    }

    #[test]
    fn cycle_notation_round_trip() {
        let labels = ["a", "b", "c", "d", "e"];
        let g = Perm::parse_cycles("(a,b,c)(d,e)", &labels).unwrap();
        assert_eq!(g, p(&[1, 2, 0, 4, 3]));
        assert_eq!(g.to_cycle_string(Some(&labels[..])), "(a,b,c)(d,e)");
        assert_eq!(Perm::parse_cycles("()", &labels).unwrap(), Perm::identity(5));
        assert_eq!(Perm::parse_cycles("(a,b)(c)", &labels).unwrap(), p(&[1, 0, 2, 3, 4]));
        assert!(Perm::parse_cycles("(a,z)", &labels).is_err());
        assert!(Perm::parse_cycles("(a,b)(b,c)", &labels).is_err());
        assert!(Perm::parse_cycles("a,b", &labels).is_err());
        assert_eq!(
            labels_in_order("(a,b,c)(d)(e)").unwrap(),
            vec!["a", "b", "c", "d", "e"]
        );
    }

    fn arb_perm(max: usize) -> impl Strategy<Value = Perm> {
        (0..=max)
            .prop_flat_map(|n| Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
            .prop_map(|v| Perm::from_images(v).unwrap())
    }

    fn arb_triple(max: usize) -> impl Strategy<Value = (Perm, Perm, Perm)> {
        (0..=max).prop_flat_map(|n| {
            let v: Vec<usize> = (0..n).collect();
            (
                Just(v.clone()).prop_shuffle(),
                Just(v.clone()).prop_shuffle(),
                Just(v).prop_shuffle(),
            )
                .prop_map(|(a, b, c)| (p(&a), p(&b), p(&c)))
        })
    }

    proptest! {
        #[test]
        fn composition_laws((a, b, c) in arb_triple(10)) {
            prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
            let id = Perm::identity(a.degree());
            prop_assert_eq!(id.then(&a), a.clone());
            prop_assert_eq!(a.then(&id), a.clone());
            prop_assert!(a.then(&a.inverse()).is_identity());
        }

        #[test]
        fn cycles_reassemble(g in arb_perm(10)) {
            let cycles = g.cycles();
            let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
            prop_assert_eq!(Perm::from_cycles(g.degree(), &refs).unwrap(), g.clone());
            let total: usize = cycles.iter().map(|c| c.len()).sum();
            prop_assert_eq!(total, g.degree());
        }

        #[test]
        fn enumerated_group_is_closed((a, b, _c) in arb_triple(6)) {
            let g = PermGroup::new(a.degree(), vec![a, b]).unwrap();
            let els = g.enumerate(DEFAULT_GROUP_CAP).unwrap();
            prop_assert!(els.windows(2).all(|w| w[0] < w[1]));
            for x in &els {
                prop_assert!(els.binary_search(&x.inverse()).is_ok());
                for y in &els {
                    prop_assert!(els.binary_search(&x.then(y)).is_ok());
                }
            }
        }
    }
}
