//! Bijections `ℕ⁺ × C → (S ∪ ℕ⁺) × C` with a finite description.
//!
//! Columns `1..=w` form an explicit header block. Beyond the header every
//! row follows an arithmetic tail `j ↦ (j − offset, out)`. Because tails are
//! affine, bijectivity and symmetry can be decided exactly by finite case
//! analysis: the header is checked entry by entry and tails are compared by
//! their offsets and output rows.

use std::fmt::Write as _;

use crate::bijection::{EqdFile, Labels, ProdBij};
use crate::equivariance::SymTriple;
use crate::error::{Error, Result};
use crate::perm::Perm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Symbol(usize),
    Int(u64),
}

/// Tail rule for columns past the header: `j ↦ (j − offset, out)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tail {
    pub offset: u64,
    pub out: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LazyBij {
    c_labels: Vec<String>,
    symbols: Vec<String>,
    width: usize,
    /// `header[c][j - 1]`
    header: Vec<Vec<(Value, usize)>>,
    tails: Vec<Tail>,
}

const SYMBOL_NAMES: [&str; 8] = ["K", "Q", "J", "X", "Y", "Z", "W", "V"];

pub(crate) fn symbol_name(i: usize) -> String {
    SYMBOL_NAMES
        .get(i)
        .map(|s| s.to_string())
        .unwrap_or_else(|| format!("S{i}"))
}

impl LazyBij {
    /// Builds and checks structural bijectivity:
    /// - every `(symbol, c')` appears exactly once in the header;
    /// - each row label is the output of exactly one tail, and the header
    ///   integers with that label are exactly `1..=width - offset`, once each.
    pub fn new(
        c_labels: Vec<String>,
        symbols: Vec<String>,
        header: Vec<Vec<(Value, usize)>>,
        tails: Vec<Tail>,
    ) -> Result<Self> {
        let n_c = c_labels.len();
        if header.len() != n_c || tails.len() != n_c {
            return Err(Error::Precondition("one header row and tail per row".into()));
        }
        let width = header.first().map_or(0, Vec::len);
        if header.iter().any(|r| r.len() != width) {
            return Err(Error::Precondition("ragged header".into()));
        }
        let mut sym_hits = vec![0u32; symbols.len() * n_c];
        let mut int_hits: Vec<Vec<u64>> = vec![Vec::new(); n_c];
        for row in &header {
            for &(v, c2) in row {
                if c2 >= n_c {
                    return Err(Error::IndexOutOfRange {
                        what: "C",
                        index: c2,
                        size: n_c,
                    });
                }
                match v {
                    Value::Symbol(s) if s < symbols.len() => sym_hits[s * n_c + c2] += 1,
                    Value::Symbol(s) => {
                        return Err(Error::IndexOutOfRange {
                            what: "symbol",
                            index: s,
                            size: symbols.len(),
                        })
                    }
                    Value::Int(0) => return Err(Error::NotABijection("integer 0 in header".into())),
                    Value::Int(k) => int_hits[c2].push(k),
                }
            }
        }
        if let Some(k) = sym_hits.iter().position(|&h| h != 1) {
            return Err(Error::NotABijection(format!(
                "({}, {}) is hit {} times by the header",
                symbols[k / n_c],
                c_labels[k % n_c],
                sym_hits[k]
            )));
        }
        let mut tail_of = vec![None; n_c];
        for (r, t) in tails.iter().enumerate() {
            if t.out >= n_c || t.offset > width as u64 {
                return Err(Error::NotABijection(format!("bad tail on row {r}")));
            }
            if tail_of[t.out].replace(r).is_some() {
                return Err(Error::NotABijection(format!(
                    "two tails land in row {}",
                    c_labels[t.out]
                )));
            }
        }
        for (u, hits) in int_hits.iter_mut().enumerate() {
            // every row label is some tail's output, since tails are n_c many and distinct
            let r = tail_of[u].expect("tail outputs are a permutation");
            let first_tail_value = width as u64 + 1 - tails[r].offset;
            hits.sort_unstable();
            let expected: Vec<u64> = (1..first_tail_value).collect();
            if *hits != expected {
                return Err(Error::NotABijection(format!(
                    "integers in row {} not covered exactly once",
                    c_labels[u]
                )));
            }
        }
        Ok(LazyBij {
            c_labels,
            symbols,
            width,
            header,
            tails,
        })
    }

    pub fn c_labels(&self) -> &[String] {
        &self.c_labels
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn tails(&self) -> &[Tail] {
        &self.tails
    }

    /// The entry at column `a ≥ 1`, row `c`.
    pub fn eval(&self, a: u64, c: usize) -> Result<(Value, usize)> {
        if a == 0 {
            return Err(Error::IndexOutOfRange {
                what: "column",
                index: 0,
                size: 0,
            });
        }
        if c >= self.c_labels.len() {
            return Err(Error::IndexOutOfRange {
                what: "C",
                index: c,
                size: self.c_labels.len(),
            });
        }
        if a as usize <= self.width {
            Ok(self.header[c][a as usize - 1])
        } else {
            let t = self.tails[c];
            Ok((Value::Int(a - t.offset), t.out))
        }
    }

    /// `K`-style rendering of one entry, e.g. `Ka` or `3c`.
    pub fn entry_string(&self, (v, c): (Value, usize)) -> String {
        match v {
            Value::Symbol(s) => format!("{}{}", self.symbols[s], self.c_labels[c]),
            Value::Int(k) => format!("{k}{}", self.c_labels[c]),
        }
    }

    /// The first `window` columns, one line per row: `a: Ka Kb Kc 1a ...`.
    pub fn render(&self, window: usize) -> String {
        let mut out = String::new();
        for c in 0..self.c_labels.len() {
            let _ = write!(out, "{}:", self.c_labels[c]);
            for a in 1..=window as u64 {
                let e = self.eval(a, c).expect("in range");
                let _ = write!(out, " {}", self.entry_string(e));
            }
            out.push('\n');
        }
        out
    }

    /// Exact check that `transform(self, id, β, γ) = target`, where `β`
    /// permutes symbols and fixes every integer.
    pub fn transform_equals(&self, beta: &Perm, gamma: &Perm, target: &LazyBij) -> bool {
        let n_c = self.c_labels.len();
        if beta.degree() != self.symbols.len()
            || gamma.degree() != n_c
            || target.c_labels.len() != n_c
            || target.symbols.len() != self.symbols.len()
            || target.width != self.width
        {
            return false;
        }
        let gi = gamma.inverse();
        let act = |(v, c2): (Value, usize)| -> (Value, usize) {
            let v = match v {
                Value::Symbol(s) => Value::Symbol(beta.apply(s)),
                int => int,
            };
            (v, gamma.apply(c2))
        };
        // result(a, c) = (β × γ)(self(a, γ⁻¹(c)))
        (0..n_c).all(|c| {
            let src = gi.apply(c);
            let header_ok = (0..self.width)
                .all(|j| act(self.header[src][j]) == target.header[c][j]);
            let t = self.tails[src];
            let u = target.tails[c];
            header_ok && t.offset == u.offset && gamma.apply(t.out) == u.out
        })
    }

    /// `(id, β, γ)` is a symmetry.
    pub fn check_symmetry(&self, beta: &Perm, gamma: &Perm) -> bool {
        self.transform_equals(beta, gamma, self)
    }

    /// The header as a finite bijection (columns → symbols), when every
    /// header entry is a symbol. This is the case when no row is fixed.
    pub fn header_block(&self) -> Result<EqdFile> {
        let n_c = self.c_labels.len();
        if self.symbols.len() != self.width {
            return Err(Error::Precondition("header is not square in symbols".into()));
        }
        let mut table = Vec::with_capacity(self.width * n_c);
        for row in &self.header {
            for &(v, c2) in row {
                match v {
                    Value::Symbol(s) => table.push((s, c2)),
                    Value::Int(_) => {
                        return Err(Error::Precondition("header contains integers".into()))
                    }
                }
            }
        }
        let bij = ProdBij::new(self.width, self.symbols.len(), n_c, table)?;
        Ok(EqdFile {
            bij,
            labels: Labels {
                a: Some((1..=self.width).map(|j| j.to_string()).collect()),
                b: Some(self.symbols.clone()),
                c: Some(self.c_labels.clone()),
            },
        })
    }
}

/// The generalized counterexample for `γ` whose nontrivial cycles share one
/// length. Moved row `x = γ^i(x_0)`, with `x_0` the start of its cycle, reads
/// `(sym(x), γ^i(c_j))` in header column `j`, then `j ↦ (j − |C|, x)`.
/// Fixed rows read `j ↦ (j, row)` throughout. Returns the bijection with its
/// built-in symmetry `(id, β, γ)`, `β: sym(x) ↦ sym(γ(x))`.
pub fn thm4_counterexample(gamma: &Perm, c_labels: &[String]) -> Result<(LazyBij, SymTriple)> {
    let n_c = gamma.degree();
    if c_labels.len() != n_c {
        return Err(Error::DegreeMismatch {
            expected: n_c,
            found: c_labels.len(),
        });
    }
    let cycles = gamma.nontrivial_cycles();
    let Some(first) = cycles.first() else {
        return Err(Error::Precondition("gamma is the identity".into()));
    };
    if cycles.iter().any(|c| c.len() != first.len()) {
        return Err(Error::Precondition(format!(
            "nontrivial cycles of {} have different lengths; reduce with semiregular_power",
            gamma.to_cycle_string(Some(c_labels))
        )));
    }
    let moved: Vec<usize> = (0..n_c).filter(|&x| gamma.apply(x) != x).collect();
    let sym_of = |x: usize| moved.iter().position(|&y| y == x).expect("moved point");
    let mut position = vec![0usize; n_c];
    for cyc in &cycles {
        for (i, &x) in cyc.iter().enumerate() {
            position[x] = i;
        }
    }
    let w = n_c;
    let mut header = Vec::with_capacity(n_c);
    let mut tails = Vec::with_capacity(n_c);
    for x in 0..n_c {
        if gamma.apply(x) == x {
            header.push((1..=w as u64).map(|j| (Value::Int(j), x)).collect());
            tails.push(Tail { offset: 0, out: x });
        } else {
            let g = gamma.pow(position[x]);
            header.push((0..w).map(|j| (Value::Symbol(sym_of(x)), g.apply(j))).collect());
            tails.push(Tail {
                offset: w as u64,
                out: x,
            });
        }
    }
    let symbols = (0..moved.len()).map(symbol_name).collect();
    let lazy = LazyBij::new(c_labels.to_vec(), symbols, header, tails)?;
    let beta = Perm::from_images_unchecked(moved.iter().map(|&x| sym_of(gamma.apply(x))).collect());
    let sym = SymTriple::new(Perm::identity(w), beta, gamma.clone());
    debug_assert!(lazy.check_symmetry(&sym.beta, &sym.gamma));
    Ok((lazy, sym))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::labels_in_order;

    fn build(spec: &str) -> (LazyBij, SymTriple) {
        let labels = labels_in_order(spec).unwrap();
        let g = Perm::parse_cycles(spec, &labels).unwrap();
        thm4_counterexample(&g, &labels).unwrap()
    }

    #[test]
    fn ab_c_rows() {
        let (l, sym) = build("(a,b)(c)");
        assert_eq!(
            l.render(7),
            "a: Ka Kb Kc 1a 2a 3a 4a\nb: Qb Qa Qc 1b 2b 3b 4b\nc: 1c 2c 3c 4c 5c 6c 7c\n"
        );
        assert_eq!(sym.beta, Perm::from_images(vec![1, 0]).unwrap());
    }

    #[test]
    fn eval_examples() {
        let (l, _) = build("(a,b)(c)");
        let a = 0;
        let c = 2;
        assert_eq!(l.eval(1, a).unwrap(), (Value::Symbol(0), a));
        assert_eq!(l.eval(4, a).unwrap(), (Value::Int(1), a));
        assert_eq!(l.eval(6, c).unwrap(), (Value::Int(6), c));
        assert!(l.eval(0, a).is_err());
    }

    #[test]
    fn symmetry_checks() {
        let (l, sym) = build("(a,b)(c)");
        assert!(l.check_symmetry(&sym.beta, &sym.gamma));
        assert!(!l.check_symmetry(&Perm::identity(2), &sym.gamma));
        assert!(l.check_symmetry(&Perm::identity(2), &Perm::identity(3)));
        // swapping symbols alone is not a symmetry either
        assert!(!l.check_symmetry(&sym.beta, &Perm::identity(3)));
    }

    #[test]
    fn preconditions() {
        let labels = labels_in_order("(a,b,c)(d,e)").unwrap();
        let g = Perm::parse_cycles("(a,b,c)(d,e)", &labels).unwrap();
        assert!(thm4_counterexample(&g, &labels).is_err());
        assert!(thm4_counterexample(&g.semiregular_power().unwrap(), &labels).is_ok());
        assert!(thm4_counterexample(&Perm::identity(5), &labels).is_err());
    }

    #[test]
    fn structural_checks_reject_bad_tables() {
        let (l, _) = build("(a,b)(c)");
        let mut tails = l.tails.clone();
        tails[2].offset = 1;
        assert!(LazyBij::new(l.c_labels.clone(), l.symbols.clone(), l.header.clone(), tails).is_err());
        let mut header = l.header.clone();
        header[0][1] = (Value::Symbol(0), 0);
        assert!(LazyBij::new(l.c_labels.clone(), l.symbols.clone(), header, l.tails.clone()).is_err());
        let mut tails = l.tails.clone();
        tails[0].out = 1;
        assert!(LazyBij::new(l.c_labels.clone(), l.symbols.clone(), l.header.clone(), tails).is_err());
    }

    #[test]
    fn generalized_instances_verify() {
        for spec in [
            "(a,b)",
            "(a,b,c)(d)(e)",
            "(a,b)(c,d)(e)(f)",
            "(a,b,c)(d,e,f)(g)",
            "(a,c)(b)(d,e)",
            "(a,b,c,d,e)(f)",
        ] {
            let (l, sym) = build(spec);
            assert!(l.check_symmetry(&sym.beta, &sym.gamma), "{spec}");
            assert!(!sym.beta.is_identity());
            assert!(sym.is_half_fixed());
        }
    }

    #[test]
    fn header_block_of_fixed_point_free() {
        let (l, _) = build("(a,b)");
        let block = l.header_block().unwrap();
        // row a = K K, row b = Q Q
        assert_eq!(block.bij.row(0).unwrap(), vec![0, 0]);
        assert_eq!(block.bij.row(1).unwrap(), vec![1, 1]);
        assert!(build("(a,b)(c)").0.header_block().is_err());
    }
}
