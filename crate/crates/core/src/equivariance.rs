//! Symmetries of a bijection and the existence of equivariant quotients.
//!
//! A triple `(α, β, γ)` is a symmetry of `f` when `f_{α,β,γ} = f`. A
//! quotient `h: A → B` is Γ-equivariant when `h_{α,β} = α⁻¹ ▷ h ▷ β = h` for
//! every symmetry with `γ ∈ Γ`. Equivalently the graph of `h` is a union of
//! orbits of the pair group `{(α, β)}` acting on `A × B`, so the solver looks
//! for a set of orbits, each meeting every row and column at most once, whose
//! union is a perfect matching.

use std::fmt::Write as _;

use crate::bijection::{Labels, ProdBij};
use crate::error::{Error, Result};
use crate::perm::{Perm, PermGroup, DEFAULT_GROUP_CAP};

/// A candidate symmetry `(α, β, γ) ∈ S(A) × S(B) × S(C)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymTriple {
    pub alpha: Perm,
    pub beta: Perm,
    pub gamma: Perm,
}

impl SymTriple {
    pub fn new(alpha: Perm, beta: Perm, gamma: Perm) -> Self {
        SymTriple { alpha, beta, gamma }
    }

    pub fn identity(n_a: usize, n_c: usize) -> Self {
        SymTriple::new(Perm::identity(n_a), Perm::identity(n_a), Perm::identity(n_c))
    }

    /// Componentwise `self ▷ other`.
    pub fn then(&self, other: &SymTriple) -> SymTriple {
        SymTriple::new(
            self.alpha.then(&other.alpha),
            self.beta.then(&other.beta),
            self.gamma.then(&other.gamma),
        )
    }

    pub fn inverse(&self) -> SymTriple {
        SymTriple::new(self.alpha.inverse(), self.beta.inverse(), self.gamma.inverse())
    }

    /// Exactly one of `α`, `β` is the identity.
    pub fn is_half_fixed(&self) -> bool {
        self.alpha.is_identity() != self.beta.is_identity()
    }

    pub fn to_labeled_string(&self, labels: &Labels) -> String {
        let (na, nc) = (self.alpha.degree(), self.gamma.degree());
        format!(
            "alpha {} beta {} gamma {}",
            self.alpha.to_cycle_string(Some(&labels.a_or_index(na))),
            self.beta.to_cycle_string(Some(&labels.b_or_index(na))),
            self.gamma.to_cycle_string(Some(&labels.c_or_index(nc))),
        )
    }
}

/// Search limits for stabilizer and quotient computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Backtracking nodes allowed per search.
    pub node_limit: u64,
    /// Largest group order enumerated.
    pub group_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            node_limit: 10_000_000,
            group_cap: DEFAULT_GROUP_CAP,
        }
    }
}

/// True iff `f_{α,β,γ} = f`, checked pointwise as
/// `f(α(a), γ(c)) = (β × γ)(f(a, c))`.
pub fn is_symmetry(f: &ProdBij, t: &SymTriple) -> Result<bool> {
    f.check_degrees(&t.alpha, &t.beta, &t.gamma)?;
    for c in 0..f.n_c() {
        for a in 0..f.n_a() {
            let (b, c2) = f.get(a, c);
            if f.get(t.alpha.apply(a), t.gamma.apply(c)) != (t.beta.apply(b), t.gamma.apply(c2)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `h_{α,β} = h`, i.e. `h(α(x)) = β(h(x))` for all `x`.
pub fn is_invariant(h: &Perm, t: &SymTriple) -> bool {
    (0..h.degree()).all(|x| h.apply(t.alpha.apply(x)) == t.beta.apply(h.apply(x)))
}

pub fn stabilizer(f: &ProdBij, group: &PermGroup) -> Result<Vec<SymTriple>> {
    stabilizer_with(f, group, &Limits::default())
}

/// Every `(α, β, γ)` with `γ ∈ group` and `f_{α,β,γ} = f`, sorted.
///
/// For each `γ`, `α` is found by backtracking. Fixing `α(a)` forces `β` on
/// every `b` in the column of `a`, and fixing `β(b)` forces `α` on every `a`
/// reaching `b`; assignments propagate until a contradiction or a fixpoint.
pub fn stabilizer_with(f: &ProdBij, group: &PermGroup, limits: &Limits) -> Result<Vec<SymTriple>> {
    if group.degree() != f.n_c() {
        return Err(Error::DegreeMismatch {
            expected: f.n_c(),
            found: group.degree(),
        });
    }
    let gammas = group.enumerate(limits.group_cap)?;
    let finv = f.inverse();
    let mut search = StabSearch {
        f,
        finv: &finv,
        nodes: 0,
        limit: limits.node_limit,
        out: Vec::new(),
    };
    for gamma in &gammas {
        search.for_gamma(gamma)?;
    }
    let mut out = search.out;
    out.sort();
    Ok(out)
}

struct StabSearch<'a> {
    f: &'a ProdBij,
    finv: &'a ProdBij,
    nodes: u64,
    limit: u64,
    out: Vec<SymTriple>,
}

#[derive(Clone)]
struct Partial {
    alpha: Vec<Option<usize>>,
    alpha_used: Vec<bool>,
    beta: Vec<Option<usize>>,
    beta_used: Vec<bool>,
}

enum Pending {
    Alpha(usize),
    Beta(usize),
}

impl StabSearch<'_> {
    fn for_gamma(&mut self, gamma: &Perm) -> Result<()> {
        let n = self.f.n_a();
        let st = Partial {
            alpha: vec![None; n],
            alpha_used: vec![false; n],
            beta: vec![None; n],
            beta_used: vec![false; n],
        };
        self.branch(st, gamma)
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::BudgetExceeded(self.limit));
        }
        Ok(())
    }

    fn branch(&mut self, st: Partial, gamma: &Perm) -> Result<()> {
        self.tick()?;
        let Some(a) = st.alpha.iter().position(Option::is_none) else {
            let alpha = Perm::from_images_unchecked(st.alpha.iter().map(|x| x.unwrap()).collect());
            let beta = Perm::from_images_unchecked(st.beta.iter().map(|x| x.unwrap()).collect());
            let t = SymTriple::new(alpha, beta, gamma.clone());
            debug_assert!(is_symmetry(self.f, &t).unwrap());
            self.out.push(t);
            return Ok(());
        };
        for target in 0..st.alpha.len() {
            if st.alpha_used[target] {
                continue;
            }
            let mut next = st.clone();
            if self.propagate(&mut next, gamma, a, target) {
                self.branch(next, gamma)?;
            }
        }
        Ok(())
    }

    fn propagate(&self, st: &mut Partial, gamma: &Perm, a0: usize, t0: usize) -> bool {
        let (f, finv) = (self.f, self.finv);
        let mut queue = Vec::new();
        if !assign(&mut st.alpha, &mut st.alpha_used, a0, t0) {
            return false;
        }
        queue.push(Pending::Alpha(a0));
        while let Some(item) = queue.pop() {
            match item {
                Pending::Alpha(a) => {
                    let aa = st.alpha[a].unwrap();
                    for c in 0..f.n_c() {
                        let (b, c2) = f.get(a, c);
                        let (bb, cc) = f.get(aa, gamma.apply(c));
                        if cc != gamma.apply(c2) {
                            return false;
                        }
                        match st.beta[b] {
                            Some(x) if x == bb => {}
                            Some(_) => return false,
                            None => {
                                if !assign(&mut st.beta, &mut st.beta_used, b, bb) {
                                    return false;
                                }
                                queue.push(Pending::Beta(b));
                            }
                        }
                    }
                }
                Pending::Beta(b) => {
                    let bb = st.beta[b].unwrap();
                    for c2 in 0..f.n_c() {
                        let (a, c) = finv.get(b, c2);
                        let (aa, cc) = finv.get(bb, gamma.apply(c2));
                        if cc != gamma.apply(c) {
                            return false;
                        }
                        match st.alpha[a] {
                            Some(x) if x == aa => {}
                            Some(_) => return false,
                            None => {
                                if !assign(&mut st.alpha, &mut st.alpha_used, a, aa) {
                                    return false;
                                }
                                queue.push(Pending::Alpha(a));
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

fn assign(map: &mut [Option<usize>], used: &mut [bool], x: usize, y: usize) -> bool {
    match map[x] {
        Some(z) => z == y,
        None if used[y] => false,
        None => {
            map[x] = Some(y);
            used[y] = true;
            true
        }
    }
}

/// An orbit of the pair group on `A × B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Sorted cells `(a, b)`.
    pub cells: Vec<(usize, usize)>,
    /// No two cells share a row or a column.
    pub matchable: bool,
}

/// Orbits of the group generated by `pairs`, acting by
/// `(a, b) ↦ (α(a), β(b))`, ordered by least cell.
pub fn pair_orbits(pairs: &[(Perm, Perm)], n_a: usize, n_b: usize) -> Vec<Orbit> {
    let mut parent: Vec<usize> = (0..n_a * n_b).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (alpha, beta) in pairs {
        for a in 0..n_a {
            for b in 0..n_b {
                let u = find(&mut parent, a * n_b + b);
                let v = find(&mut parent, alpha.apply(a) * n_b + beta.apply(b));
                if u != v {
                    let (lo, hi) = if u < v { (u, v) } else { (v, u) };
                    parent[hi] = lo;
                }
            }
        }
    }
    let mut groups: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n_a * n_b];
    for k in 0..n_a * n_b {
        let r = find(&mut parent, k);
        groups[r].push((k / n_b, k % n_b));
    }
    // roots are least cells, so iterating by root index orders orbits by least cell
    groups
        .into_iter()
        .filter(|g| !g.is_empty())
        .map(|cells| {
            let mut rows: Vec<usize> = cells.iter().map(|c| c.0).collect();
            let mut cols: Vec<usize> = cells.iter().map(|c| c.1).collect();
            rows.sort_unstable();
            cols.sort_unstable();
            let matchable = rows.windows(2).all(|w| w[0] != w[1])
                && cols.windows(2).all(|w| w[0] != w[1]);
            Orbit { cells, matchable }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Exists,
    NotExists,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reason {
    MatchingFound,
    HalfFixedWitness,
    OrbitExhaustion,
}

impl Reason {
    pub fn as_str(&self) -> &'static str {
        match self {
            Reason::MatchingFound => "matching-found",
            Reason::HalfFixedWitness => "half-fixed-witness",
            Reason::OrbitExhaustion => "orbit-exhaustion",
        }
    }
}

/// Evidence for or against the existence of an equivariant quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub verdict: Verdict,
    pub quotient: Option<Perm>,
    pub verified_against: Vec<SymTriple>,
    pub reason: Reason,
    pub witness: Option<SymTriple>,
    pub orbits: Option<Vec<Orbit>>,
}

/// The first symmetry with exactly one of `α`, `β` trivial. Such a triple
/// rules out every quotient: `h = h ▷ β` fails for a bijection `h` once `β`
/// moves anything, and symmetrically for `α`.
pub fn nonexistence_by_halffixed(symmetries: &[SymTriple]) -> Option<SymTriple> {
    symmetries.iter().find(|t| t.is_half_fixed()).cloned()
}

pub fn equivariant_quotient(f: &ProdBij, group: &PermGroup) -> Result<Certificate> {
    equivariant_quotient_with(f, group, &Limits::default())
}

/// Decides whether `f` has a Γ-equivariant quotient. When one exists the
/// lexicographically least is returned.
pub fn equivariant_quotient_with(
    f: &ProdBij,
    group: &PermGroup,
    limits: &Limits,
) -> Result<Certificate> {
    let stab = stabilizer_with(f, group, limits)?;
    let cert = decide(f, stab, limits)?;
    if let Some(h) = &cert.quotient {
        assert!(
            cert.verified_against.iter().all(|t| is_invariant(h, t)),
            "solver returned a quotient that is not invariant"
        );
    }
    Ok(cert)
}

/// Nonexistence from a user-supplied subset of the symmetries. Invariance
/// under a subgroup is necessary, so `Some` is a sound proof; `None` means
/// the subset alone does not decide the question.
pub fn nonexistence_from_symmetries(
    f: &ProdBij,
    symmetries: &[SymTriple],
    limits: &Limits,
) -> Result<Option<Certificate>> {
    for t in symmetries {
        if !is_symmetry(f, t)? {
            return Err(Error::Precondition(format!(
                "supplied triple {t:?} is not a symmetry"
            )));
        }
    }
    let cert = decide(f, symmetries.to_vec(), limits)?;
    Ok((cert.verdict == Verdict::NotExists).then_some(cert))
}

fn decide(f: &ProdBij, symmetries: Vec<SymTriple>, limits: &Limits) -> Result<Certificate> {
    if let Some(w) = nonexistence_by_halffixed(&symmetries) {
        return Ok(Certificate {
            verdict: Verdict::NotExists,
            quotient: None,
            verified_against: symmetries,
            reason: Reason::HalfFixedWitness,
            witness: Some(w),
            orbits: None,
        });
    }
    let pairs: Vec<(Perm, Perm)> = symmetries
        .iter()
        .map(|t| (t.alpha.clone(), t.beta.clone()))
        .collect();
    let orbits = pair_orbits(&pairs, f.n_a(), f.n_b());
    match orbit_matching(&orbits, f.n_a(), limits.node_limit)? {
        Some(h) => Ok(Certificate {
            verdict: Verdict::Exists,
            quotient: Some(h),
            verified_against: symmetries,
            reason: Reason::MatchingFound,
            witness: None,
            orbits: None,
        }),
        None => Ok(Certificate {
            verdict: Verdict::NotExists,
            quotient: None,
            verified_against: symmetries,
            reason: Reason::OrbitExhaustion,
            witness: None,
            orbits: Some(orbits),
        }),
    }
}

/// Exact cover of rows and columns by matchable orbits. Rows are covered in
/// increasing order and candidates tried by column, so the first solution
/// is the lexicographically least `h`.
fn orbit_matching(orbits: &[Orbit], n: usize, limit: u64) -> Result<Option<Perm>> {
    let mut by_row: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, o) in orbits.iter().enumerate() {
        if o.matchable {
            for &(a, b) in &o.cells {
                by_row[a].push((b, i));
            }
        }
    }
    for r in &mut by_row {
        r.sort_unstable();
    }
    let mut h = vec![usize::MAX; n];
    let mut col_used = vec![false; n];
    let mut nodes = 0u64;
    if cover(orbits, &by_row, &mut h, &mut col_used, &mut nodes, limit)? {
        Ok(Some(Perm::from_images_unchecked(h)))
    } else {
        Ok(None)
    }
}

fn cover(
    orbits: &[Orbit],
    by_row: &[Vec<(usize, usize)>],
    h: &mut [usize],
    col_used: &mut [bool],
    nodes: &mut u64,
    limit: u64,
) -> Result<bool> {
    *nodes += 1;
    if *nodes > limit {
        return Err(Error::BudgetExceeded(limit));
    }
    let Some(a) = h.iter().position(|&x| x == usize::MAX) else {
        return Ok(true);
    };
    for &(_, oi) in &by_row[a] {
        let cells = &orbits[oi].cells;
        if cells
            .iter()
            .any(|&(r, c)| h[r] != usize::MAX || col_used[c])
        {
            continue;
        }
        for &(r, c) in cells {
            h[r] = c;
            col_used[c] = true;
        }
        if cover(orbits, by_row, h, col_used, nodes, limit)? {
            return Ok(true);
        }
        for &(r, c) in cells {
            h[r] = usize::MAX;
            col_used[c] = false;
        }
    }
    Ok(false)
}

/// True iff `h` is invariant under every symmetry of `f` with `γ ∈ group`.
pub fn check_quotient(f: &ProdBij, group: &PermGroup, h: &Perm) -> Result<bool> {
    if h.degree() != f.n_a() {
        return Err(Error::DegreeMismatch {
            expected: f.n_a(),
            found: h.degree(),
        });
    }
    Ok(stabilizer(f, group)?.iter().all(|t| is_invariant(h, t)))
}

/// Re-checks a certificate from scratch against `f` and `group`.
pub fn verify_certificate(f: &ProdBij, group: &PermGroup, cert: &Certificate) -> Result<bool> {
    let gammas = group.enumerate(DEFAULT_GROUP_CAP)?;
    let in_group = |t: &SymTriple| gammas.binary_search(&t.gamma).is_ok();
    for t in &cert.verified_against {
        if !is_symmetry(f, t)? || !in_group(t) {
            return Ok(false);
        }
    }
    match (cert.verdict, cert.reason) {
        (Verdict::Exists, Reason::MatchingFound) => {
            let Some(h) = &cert.quotient else {
                return Ok(false);
            };
            Ok(h.degree() == f.n_a()
                && stabilizer(f, group)? == cert.verified_against
                && cert.verified_against.iter().all(|t| is_invariant(h, t)))
        }
        (Verdict::NotExists, Reason::HalfFixedWitness) => Ok(cert
            .witness
            .as_ref()
            .is_some_and(|w| w.is_half_fixed() && in_group(w) && is_symmetry(f, w).unwrap_or(false))),
        (Verdict::NotExists, Reason::OrbitExhaustion) => {
            let pairs: Vec<(Perm, Perm)> = cert
                .verified_against
                .iter()
                .map(|t| (t.alpha.clone(), t.beta.clone()))
                .collect();
            let orbits = pair_orbits(&pairs, f.n_a(), f.n_b());
            Ok(orbit_matching(&orbits, f.n_a(), u64::MAX)?.is_none())
        }
        _ => Ok(false),
    }
}

/// One `alpha`/`beta`/`gamma` line triple per symmetry.
pub fn serialize_symmetries(symmetries: &[SymTriple], labels: &Labels) -> String {
    let mut out = String::new();
    for t in symmetries {
        let (na, nc) = (t.alpha.degree(), t.gamma.degree());
        let _ = writeln!(out, "alpha {}", t.alpha.to_cycle_string(Some(&labels.a_or_index(na))));
        let _ = writeln!(out, "beta {}", t.beta.to_cycle_string(Some(&labels.b_or_index(na))));
        let _ = writeln!(out, "gamma {}", t.gamma.to_cycle_string(Some(&labels.c_or_index(nc))));
    }
    out
}

/// Parses a symmetry file: `alpha`, `beta`, `gamma` lines, in that order,
/// once per triple. Blank lines and `#` comments are ignored.
pub fn parse_symmetries(text: &str, labels: &Labels, n_a: usize, n_c: usize) -> Result<Vec<SymTriple>> {
    let (la, lb, lc) = (labels.a_or_index(n_a), labels.b_or_index(n_a), labels.c_or_index(n_c));
    let mut out = Vec::new();
    let mut pending: Vec<Perm> = Vec::with_capacity(3);
    const KEYS: [&str; 3] = ["alpha", "beta", "gamma"];
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::parse(i + 1, format!("malformed line `{line}`")))?;
        let want = KEYS[pending.len()];
        if key != want {
            return Err(Error::parse(i + 1, format!("expected `{want}`, found `{key}`")));
        }
        let universe = [&la, &lb, &lc][pending.len()];
        let p = Perm::parse_cycles(rest.trim(), universe).map_err(|e| match e {
            Error::Parse { msg, .. } => Error::parse(i + 1, msg),
            other => other,
        })?;
        pending.push(p);
        if pending.len() == 3 {
            let g = pending.pop().unwrap();
            let b = pending.pop().unwrap();
            let a = pending.pop().unwrap();
            out.push(SymTriple::new(a, b, g));
        }
    }
    if !pending.is_empty() {
        return Err(Error::parse(0, "incomplete symmetry triple at end of input"));
    }
    Ok(out)
}

/// Certificate file text.
pub fn serialize_certificate(cert: &Certificate, labels: &Labels, n_a: usize) -> String {
    let mut out = String::new();
    let verdict = match cert.verdict {
        Verdict::Exists => "exists",
        Verdict::NotExists => "not-exists",
    };
    let _ = writeln!(out, "verdict {verdict}");
    let _ = writeln!(out, "reason: {}", cert.reason.as_str());
    if let Some(h) = &cert.quotient {
        let imgs: Vec<String> = h.images().iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "quotient: {}", imgs.join(" "));
    }
    if let Some(w) = &cert.witness {
        let _ = writeln!(out, "witness: {}", w.to_labeled_string(labels));
    }
    if let Some(orbits) = &cert.orbits {
        let (la, lb) = (labels.a_or_index(n_a), labels.b_or_index(n_a));
        let _ = writeln!(out, "orbits {}", orbits.len());
        for o in orbits {
            let cells: Vec<String> = o
                .cells
                .iter()
                .map(|&(a, b)| format!("({},{})", la[a], lb[b]))
                .collect();
            let tag = if o.matchable { "matchable" } else { "unmatchable" };
            let _ = writeln!(out, "orbit {tag} {}", cells.join(" "));
        }
    }
    let _ = writeln!(out, "symmetries {}", cert.verified_against.len());
    out.push_str(&serialize_symmetries(&cert.verified_against, labels));
    out
}
