//! Finite bijections `f: A × C → B × C`.
//!
//! A [`ProdBij`] stores `f(a, c) = (b, c')` densely, row-major by `c` then
//! `a`. Because `|A|·|C| = |B|·|C|` for finite sets, `|A| = |B|` always.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::perm::Perm;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProdBij {
    n_a: usize,
    n_c: usize,
    table: Vec<(usize, usize)>,
}

impl ProdBij {
    /// Validates the table and builds the bijection. `table[c * n_a + a]`
    /// is `f(a, c)`.
    pub fn new(n_a: usize, n_b: usize, n_c: usize, table: Vec<(usize, usize)>) -> Result<Self> {
        if n_a != n_b {
            return Err(Error::NotABijection(format!(
                "|A| = {n_a} differs from |B| = {n_b}"
            )));
        }
        if table.len() != n_a * n_c {
            return Err(Error::NotABijection(format!(
                "table has {} entries, expected {}",
                table.len(),
                n_a * n_c
            )));
        }
        let mut hit = vec![false; n_a * n_c];
        for &(b, c) in &table {
            if b >= n_b {
                return Err(Error::IndexOutOfRange {
                    what: "B",
                    index: b,
                    size: n_b,
                });
            }
            if c >= n_c {
                return Err(Error::IndexOutOfRange {
                    what: "C",
                    index: c,
                    size: n_c,
                });
            }
            let k = c * n_b + b;
            if hit[k] {
                return Err(Error::NotABijection(format!("({b}, {c}) is hit twice")));
            }
            hit[k] = true;
        }
        Ok(ProdBij { n_a, n_c, table })
    }

    fn from_table_unchecked(n_a: usize, n_c: usize, table: Vec<(usize, usize)>) -> Self {
        debug_assert!(ProdBij::new(n_a, n_a, n_c, table.clone()).is_ok());
        ProdBij { n_a, n_c, table }
    }

    pub fn identity(n_a: usize, n_c: usize) -> Self {
        let table = (0..n_c)
            .flat_map(|c| (0..n_a).map(move |a| (a, c)))
            .collect();
        ProdBij { n_a, n_c, table }
    }

    /// The parallel bijection whose row `c` is `rows[c]`.
    pub fn from_parallel_rows(n_a: usize, rows: &[Perm]) -> Result<Self> {
        let mut table = Vec::with_capacity(n_a * rows.len());
        for (c, r) in rows.iter().enumerate() {
            if r.degree() != n_a {
                return Err(Error::DegreeMismatch {
                    expected: n_a,
                    found: r.degree(),
                });
            }
            table.extend(r.images().iter().map(|&b| (b, c)));
        }
        Ok(ProdBij {
            n_a,
            n_c: rows.len(),
            table,
        })
    }

    /// A uniformly random bijection.
    pub fn random<R: Rng + ?Sized>(n_a: usize, n_c: usize, rng: &mut R) -> Self {
        let mut cells: Vec<usize> = (0..n_a * n_c).collect();
        cells.shuffle(rng);
        let table = cells.into_iter().map(|k| (k % n_a.max(1), k / n_a.max(1))).collect();
        ProdBij { n_a, n_c, table }
    }

    /// Decodes the `rank`-th cell permutation: cell `k = c * n_a + b` of
    /// `B × C` is written as a single index.
    pub(crate) fn from_cell_perm(n_a: usize, n_c: usize, cells: &[usize]) -> Self {
        let table = cells.iter().map(|&k| (k % n_a, k / n_a)).collect();
        ProdBij { n_a, n_c, table }
    }

    pub fn n_a(&self) -> usize {
        self.n_a
    }

    pub fn n_b(&self) -> usize {
        self.n_a
    }

    pub fn n_c(&self) -> usize {
        self.n_c
    }

    pub fn table(&self) -> &[(usize, usize)] {
        &self.table
    }

    #[inline]
    pub fn get(&self, a: usize, c: usize) -> (usize, usize) {
        self.table[c * self.n_a + a]
    }

    /// `f⟨c⟩: A → B`, the first component of `f(·, c)`. Not injective in
    /// general.
    pub fn row(&self, c: usize) -> Result<Vec<usize>> {
        if c >= self.n_c {
            return Err(Error::IndexOutOfRange {
                what: "C",
                index: c,
                size: self.n_c,
            });
        }
        Ok(self.table[c * self.n_a..(c + 1) * self.n_a]
            .iter()
            .map(|&(b, _)| b)
            .collect())
    }

    pub fn is_parallel(&self) -> bool {
        self.table
            .iter()
            .enumerate()
            .all(|(k, &(_, c))| c == k / self.n_a.max(1))
    }

    pub fn inverse(&self) -> ProdBij {
        let mut table = vec![(0, 0); self.table.len()];
        for c in 0..self.n_c {
            for a in 0..self.n_a {
                let (b, c2) = self.get(a, c);
                table[c2 * self.n_a + b] = (a, c);
            }
        }
        ProdBij {
            n_a: self.n_a,
            n_c: self.n_c,
            table,
        }
    }

    /// `f_{α,β,γ} = (α⁻¹ × γ⁻¹) ▷ f ▷ (β × γ)`, i.e.
    /// `result(a, c) = (β × γ)(f(α⁻¹(a), γ⁻¹(c)))`.
    pub fn transform(&self, alpha: &Perm, beta: &Perm, gamma: &Perm) -> Result<ProdBij> {
        self.check_degrees(alpha, beta, gamma)?;
        let ai = alpha.inverse();
        let gi = gamma.inverse();
        let mut table = Vec::with_capacity(self.table.len());
        for c in 0..self.n_c {
            for a in 0..self.n_a {
                let (b, c2) = self.get(ai.apply(a), gi.apply(c));
                table.push((beta.apply(b), gamma.apply(c2)));
            }
        }
        Ok(ProdBij::from_table_unchecked(self.n_a, self.n_c, table))
    }

    pub(crate) fn check_degrees(&self, alpha: &Perm, beta: &Perm, gamma: &Perm) -> Result<()> {
        for (p, n) in [(alpha, self.n_a), (beta, self.n_a), (gamma, self.n_c)] {
            if p.degree() != n {
                return Err(Error::DegreeMismatch {
                    expected: n,
                    found: p.degree(),
                });
            }
        }
        Ok(())
    }

    /// Removes `j × id_C` from `f`: every point of `(A − X) × C` follows `f`,
    /// jumping back through `j⁻¹ × id_C` whenever it lands in `Y × C`, until
    /// it escapes to `(B − Y) × C`. Indices of the result are compacted; the
    /// returned maps send new indices to old ones.
    pub fn subtract(&self, j: &PartialMap) -> Result<Subtraction> {
        let n = self.n_a;
        let mut inv_j: Vec<Option<usize>> = vec![None; n];
        let mut in_x = vec![false; n];
        for &(a, b) in j.pairs() {
            if a >= n || b >= n {
                return Err(Error::IndexOutOfRange {
                    what: "partial map",
                    index: a.max(b),
                    size: n,
                });
            }
            in_x[a] = true;
            inv_j[b] = Some(a);
        }
        let a_map: Vec<usize> = (0..n).filter(|&a| !in_x[a]).collect();
        let b_map: Vec<usize> = (0..n).filter(|&b| inv_j[b].is_none()).collect();
        let mut b_new = vec![usize::MAX; n];
        for (i, &b) in b_map.iter().enumerate() {
            b_new[b] = i;
        }
        let m = a_map.len();
        let mut table = Vec::with_capacity(m * self.n_c);
        for c in 0..self.n_c {
            for &a in &a_map {
                let (mut b, mut c2) = self.get(a, c);
                // Each jump visits a fresh point of X × C, so at most |X|·|C| jumps.
                let mut steps = 0usize;
                while let Some(x) = inv_j[b] {
                    (b, c2) = self.get(x, c2);
                    steps += 1;
                    assert!(steps <= n * self.n_c, "subtraction chain did not escape");
                }
                table.push((b_new[b], c2));
            }
        }
        let bij = ProdBij::new(m, b_map.len(), self.n_c, table)?;
        Ok(Subtraction { bij, a_map, b_map })
    }
}

/// Result of [`ProdBij::subtract`].
#[derive(Clone, Debug)]
pub struct Subtraction {
    pub bij: ProdBij,
    /// `a_map[new] = old`
    pub a_map: Vec<usize>,
    /// `b_map[new] = old`
    pub b_map: Vec<usize>,
}

/// A partial bijection `X → Y` with `X ⊆ A`, `Y ⊆ B`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialMap {
    pairs: Vec<(usize, usize)>,
}

impl PartialMap {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        let mut xs: Vec<usize> = pairs.iter().map(|p| p.0).collect();
        let mut ys: Vec<usize> = pairs.iter().map(|p| p.1).collect();
        xs.sort_unstable();
        ys.sort_unstable();
        if xs.windows(2).any(|w| w[0] == w[1]) || ys.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotABijection(format!(
                "partial map {pairs:?} is not injective"
            )));
        }
        Ok(PartialMap { pairs })
    }

    pub fn empty() -> Self {
        PartialMap::default()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Optional human-readable labels for `A`, `B` and `C`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Labels {
    pub a: Option<Vec<String>>,
    pub b: Option<Vec<String>>,
    pub c: Option<Vec<String>>,
}

impl Labels {
    pub fn a_or_index(&self, n: usize) -> Vec<String> {
        or_index(&self.a, n)
    }

    pub fn b_or_index(&self, n: usize) -> Vec<String> {
        or_index(&self.b, n)
    }

    pub fn c_or_index(&self, n: usize) -> Vec<String> {
        or_index(&self.c, n)
    }
}

fn or_index(l: &Option<Vec<String>>, n: usize) -> Vec<String> {
    l.clone()
        .unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect())
}

/// A bijection together with its labels, as stored in an EQUIDIV file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqdFile {
    pub bij: ProdBij,
    pub labels: Labels,
}

impl EqdFile {
    pub fn unlabeled(bij: ProdBij) -> Self {
        EqdFile {
            bij,
            labels: Labels::default(),
        }
    }
}

/// Parses the line-oriented EQUIDIV format:
///
/// ```text
/// EQUIDIV 1
/// bij nA 2 nB 2 nC 2
/// labels C: a b
/// row 0: 0:0 1:0
/// row 1: 1:1 0:1
/// ```
pub fn parse_bijection(text: &str) -> Result<EqdFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (ln, magic) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    if magic.split_whitespace().collect::<Vec<_>>() != ["EQUIDIV", "1"] {
        return Err(Error::parse(ln, "expected header `EQUIDIV 1`"));
    }
    let (ln, dims) = lines
        .next()
        .ok_or_else(|| Error::parse(ln, "missing `bij` line"))?;
    let toks: Vec<&str> = dims.split_whitespace().collect();
    if toks.len() != 7 || toks[0] != "bij" || toks[1] != "nA" || toks[3] != "nB" || toks[5] != "nC"
    {
        return Err(Error::parse(ln, "expected `bij nA <int> nB <int> nC <int>`"));
    }
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::parse(ln, format!("bad integer `{s}`")))
    };
    let (n_a, n_b, n_c) = (num(toks[2])?, num(toks[4])?, num(toks[6])?);

    let mut labels = Labels::default();
    let mut rows: Vec<Option<Vec<(usize, usize)>>> = vec![None; n_c];
    for (ln, line) in lines {
        if let Some(rest) = line.strip_prefix("labels ") {
            let (which, toks) = rest
                .split_once(':')
                .ok_or_else(|| Error::parse(ln, "expected `labels X: ...`"))?;
            let toks: Vec<String> = toks.split_whitespace().map(String::from).collect();
            let (slot, n) = match which.trim() {
                "A" => (&mut labels.a, n_a),
                "B" => (&mut labels.b, n_b),
                "C" => (&mut labels.c, n_c),
                other => return Err(Error::parse(ln, format!("unknown label set `{other}`"))),
            };
            if toks.len() != n {
                return Err(Error::parse(
                    ln,
                    format!("expected {n} labels, found {}", toks.len()),
                ));
            }
            if slot.replace(toks).is_some() {
                return Err(Error::parse(ln, "duplicate labels line"));
            }
        } else if let Some(rest) = line.strip_prefix("row ") {
            let (idx, entries) = rest
                .split_once(':')
                .ok_or_else(|| Error::parse(ln, "expected `row <c>: ...`"))?;
            let c: usize = idx
                .trim()
                .parse()
                .map_err(|_| Error::parse(ln, format!("bad row index `{idx}`")))?;
            if c >= n_c {
                return Err(Error::IndexOutOfRange {
                    what: "C",
                    index: c,
                    size: n_c,
                });
            }
            let mut row = Vec::with_capacity(n_a);
            for e in entries.split_whitespace() {
                let (b, c2) = e
                    .split_once(':')
                    .ok_or_else(|| Error::parse(ln, format!("bad entry `{e}`")))?;
                let b = b
                    .parse()
                    .map_err(|_| Error::parse(ln, format!("bad entry `{e}`")))?;
                let c2 = c2
                    .parse()
                    .map_err(|_| Error::parse(ln, format!("bad entry `{e}`")))?;
                row.push((b, c2));
            }
            if row.len() != n_a {
                return Err(Error::parse(
                    ln,
                    format!("row {c} has {} entries, expected {n_a}", row.len()),
                ));
            }
            if rows[c].replace(row).is_some() {
                return Err(Error::parse(ln, format!("row {c} given twice")));
            }
        } else {
            return Err(Error::parse(ln, format!("unexpected line `{line}`")));
        }
    }
    let mut table = Vec::with_capacity(n_a * n_c);
    for (c, r) in rows.into_iter().enumerate() {
        table.extend(r.ok_or_else(|| Error::parse(0, format!("missing row {c}")))?);
    }
    let bij = ProdBij::new(n_a, n_b, n_c, table)?;
    Ok(EqdFile { bij, labels })
}

/// Canonical EQUIDIV text: no comments, single spaces, rows in increasing `c`.
pub fn serialize_bijection(file: &EqdFile) -> String {
    let f = &file.bij;
    let mut out = String::new();
    out.push_str("EQUIDIV 1\n");
    let _ = writeln!(out, "bij nA {} nB {} nC {}", f.n_a(), f.n_b(), f.n_c());
    for (name, l) in [("A", &file.labels.a), ("B", &file.labels.b), ("C", &file.labels.c)] {
        if let Some(l) = l {
            let _ = writeln!(out, "labels {name}: {}", l.join(" "));
        }
    }
    for c in 0..f.n_c() {
        let _ = write!(out, "row {c}:");
        for a in 0..f.n_a() {
            let (b, c2) = f.get(a, c);
            let _ = write!(out, " {b}:{c2}");
        }
        out.push('\n');
    }
    out
}
