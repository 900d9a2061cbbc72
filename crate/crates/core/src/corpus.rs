//! Built-in reference corpus.
//!
//! Each item rebuilds a reference table or identity with the library and
//! compares it against a transcription kept here as plain text. Barred
//! labels are transcribed as `\br0` and converted to `0̄`.

use std::fmt::Write as _;

use crate::bijection::{parse_bijection, ProdBij};
use crate::equivariance::{
    equivariant_quotient, is_invariant, is_symmetry, nonexistence_by_halffixed,
    nonexistence_from_symmetries, stabilizer, verify_certificate, Limits, Reason, SymTriple,
    Verdict,
};
use crate::error::Error;
use crate::fp::{fp_divide, parallelize};
use crate::gallery::{
    checkered_product, gadget_f_xy, gadget_f_xyz, regular_rep, thm4_counterexample, CayleyTable,
};
use crate::perm::{labels_in_order, parse_mixed_cycles, Perm, PermGroup};
use crate::search::{extract_basepoint, gcd_filter, nth_permutation, probe_cancelling, Mode, ProbeParams};

/// The 2×2 table `f(a, c) = (a ⊕ c, c)` with labels `A = {x, y}`, `B = {1, 2}`, `C = {a, b}`.
pub const E1_TEXT: &str = "EQUIDIV 1\nbij nA 2 nB 2 nC 2\nlabels A: x y\nlabels B: 1 2\nlabels C: a b\nrow 0: 0:0 1:0\nrow 1: 1:1 0:1\n";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Item {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

struct Fail(String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(e.to_string())
    }
}

type Check = Result<String, Fail>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), Fail> {
    if cond {
        Ok(())
    } else {
        Err(Fail(msg.into()))
    }
}

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// `\br0` → `0̄`.
fn tex(s: &str) -> String {
    let mut out = String::new();
    let mut rest = s;
    while let Some(i) = rest.find("\\br") {
        out.push_str(&rest[..i]);
        let after = &rest[i + 3..];
        let mut chars = after.chars();
        if let Some(d) = chars.next() {
            out.push(d);
            out.push('\u{304}');
        }
        rest = chars.as_str();
    }
    out.push_str(rest);
    out
}

/// One line per row: `c: b b b`, entries by B label.
fn rows_text(f: &ProdBij, b: &[String], c: &[String]) -> String {
    let mut out = String::new();
    for (ci, cl) in c.iter().enumerate() {
        let row: Vec<&str> = (0..f.n_a()).map(|a| b[f.get(a, ci).0].as_str()).collect();
        let _ = writeln!(out, "{cl}: {}", row.join(" "));
    }
    out
}

fn one_based(n: usize) -> Vec<String> {
    (1..=n).map(|j| j.to_string()).collect()
}

/// A symmetry of a parallel table written as `(C cycles)(B cycles)`, with `α = id`.
fn parallel_symmetry(line: &str, c: &[String], b: &[String]) -> Result<SymTriple, Fail> {
    let ps = parse_mixed_cycles(line, &[c, b])?;
    Ok(SymTriple::new(Perm::identity(b.len()), ps[1].clone(), ps[0].clone()))
}

/// `S(C)` restricted to permutations fixing `p`.
fn point_stabilizer(n: usize, p: usize) -> PermGroup {
    let others: Vec<usize> = (0..n).filter(|&x| x != p).collect();
    let gens = others
        .windows(2)
        .map(|w| Perm::from_cycles(n, &[&[w[0], w[1]]]).expect("transposition"))
        .collect();
    PermGroup::new(n, gens).expect("generators share the degree")
}

fn all_perms(n: usize) -> impl Iterator<Item = Perm> {
    let total: u128 = (1..=n as u128).product();
    (0..total).map(move |k| Perm::from_images(nth_permutation(n, k)).expect("unranked"))
}

// ---- the 2×2 counterexample and basepoint division ----

fn xor_full(_: usize) -> Check {
    let file = parse_bijection(E1_TEXT)?;
    let g = PermGroup::symmetric(2);
    let cert = equivariant_quotient(&file.bij, &g)?;
    ensure(cert.verdict == Verdict::NotExists, "expected not-exists")?;
    ensure(cert.reason == Reason::HalfFixedWitness, "expected a half-fixed witness")?;
    let w = cert.witness.as_ref().expect("half-fixed certificates carry a witness");
    let text = w.to_labeled_string(&file.labels);
    ensure(text == "alpha () beta (1,2) gamma (a,b)", format!("witness {text}"))?;
    ensure(verify_certificate(&file.bij, &g, &cert)?, "certificate does not verify")?;
    Ok(format!("not-exists, witness {text}"))
}

fn xor_trivial(_: usize) -> Check {
    let file = parse_bijection(E1_TEXT)?;
    let g = PermGroup::trivial(2);
    let cert = equivariant_quotient(&file.bij, &g)?;
    ensure(cert.verdict == Verdict::Exists, "expected exists")?;
    ensure(verify_certificate(&file.bij, &g, &cert)?, "certificate does not verify")?;
    Ok(format!("exists, quotient {:?}", cert.quotient.expect("exists")))
}

fn xor_reference(_: usize) -> Check {
    let file = parse_bijection(E1_TEXT)?;
    let (b, c) = (strings(&["1", "2"]), strings(&["a", "b"]));
    ensure(rows_text(&file.bij, &b, &c) == "a: 1 2\nb: 2 1\n", "table differs")?;
    let t = parallel_symmetry("(a,b)(1,2)", &c, &b)?;
    ensure(is_symmetry(&file.bij, &t)?, "(a,b)(1,2) is not a symmetry")?;
    ensure(is_symmetry(&file.bij.transform(&t.alpha, &t.beta, &t.gamma)?, &t)?, "transform")?;
    Ok("table and symmetry (a,b)(1,2)".into())
}

fn fp_examples(_: usize) -> Check {
    let e1 = parse_bijection(E1_TEXT)?.bij;
    let f1 = ProdBij::new(2, 2, 2, vec![(0, 0), (0, 1), (1, 1), (1, 0)])?;
    ensure(fp_divide(&e1, 0)?.images() == [0, 1], "E1 at a")?;
    ensure(fp_divide(&e1, 1)?.images() == [1, 0], "E1 at b")?;
    ensure(fp_divide(&f1, 0)?.images() == [0, 1], "F1 at a")?;
    let p = parallelize(&f1)?;
    ensure(p.row(0)? == [0, 1] && p.row(1)? == [1, 0], "parallelize F1")?;
    ensure(parallelize(&p)? == p, "parallelize is not idempotent on F1")?;
    Ok("E1 at a: 0 1, at b: 1 0; F1 at a: 0 1; parallelize(F1) rows 0 1 / 1 0".into())
}

// ---- regular representations ----

fn regular_table(t: &CayleyTable, reference: &str, syms: &[&str]) -> Check {
    let f = regular_rep(t);
    let n = t.order();
    let c: Vec<String> = ["a", "b", "c", "d", "e"][..n].iter().map(|s| s.to_string()).collect();
    let b = one_based(n);
    ensure(rows_text(&f, &b, &c) == reference, format!("table differs:\n{}", rows_text(&f, &b, &c)))?;
    for line in syms {
        let s = parallel_symmetry(line, &c, &b)?;
        ensure(is_symmetry(&f, &s)?, format!("{line} is not a symmetry"))?;
        ensure(nonexistence_by_halffixed(&[s]).is_some(), format!("{line} is not half-fixed"))?;
    }
    Ok(format!("{n}×{n} table and {} symmetry line(s)", syms.len()))
}

fn regular_z2(_: usize) -> Check {
    regular_table(&CayleyTable::cyclic(2)?, "a: 1 2\nb: 2 1\n", &["(a,b)(1,2)"])
}

fn regular_z3(_: usize) -> Check {
    regular_table(&CayleyTable::cyclic(3)?, "a: 1 2 3\nb: 2 3 1\nc: 3 1 2\n", &["(a,b,c)(1,2,3)"])
}

fn regular_klein(_: usize) -> Check {
    regular_table(
        &CayleyTable::klein(),
        "a: 1 2 3 4\nb: 2 1 4 3\nc: 3 4 1 2\nd: 4 3 2 1\n",
        &["(a,b)(c,d)(1,2)(3,4)", "(a,c)(b,d)(1,3)(2,4)"],
    )
}

fn regular_duplicated(_: usize) -> Check {
    let swap = Perm::from_images(vec![1, 0])?;
    let id = Perm::identity(2);
    let f = ProdBij::from_parallel_rows(2, &[id.clone(), swap.clone(), id, swap])?;
    let (b, c) = (strings(&["1", "2"]), strings(&["a", "b", "c", "d"]));
    ensure(rows_text(&f, &b, &c) == "a: 1 2\nb: 2 1\nc: 1 2\nd: 2 1\n", "table differs")?;
    let s = parallel_symmetry("(a,b)(c,d)(1,2)", &c, &b)?;
    ensure(is_symmetry(&f, &s)?, "(a,b)(c,d)(1,2) is not a symmetry")?;
    let g = PermGroup::cyclic(s.gamma.clone());
    let cert = equivariant_quotient(&f, &g)?;
    ensure(cert.verdict == Verdict::NotExists, "expected not-exists")?;
    Ok("not-exists under <(a,b)(c,d)>".into())
}

fn forcing_groups() -> Result<Vec<(&'static str, CayleyTable)>, Fail> {
    Ok(vec![
        ("Z2", CayleyTable::cyclic(2)?),
        ("Z3", CayleyTable::cyclic(3)?),
        ("Z4", CayleyTable::cyclic(4)?),
        ("Klein", CayleyTable::klein()),
        ("Z5", CayleyTable::cyclic(5)?),
    ])
}

/// Every quotient equivariant for the permutations fixing the identity
/// element is a row of `f`, checked over all `|G|!` candidates.
pub fn regular_forcing(t: &CayleyTable) -> Result<(usize, usize), Error> {
    let f = regular_rep(t);
    let n = t.order();
    let stab = stabilizer(&f, &point_stabilizer(n, t.identity()))?;
    let rows: Vec<Vec<usize>> = (0..n).map(|c| f.row(c)).collect::<Result<_, _>>()?;
    let mut equivariant = 0;
    let mut rows_hit = 0;
    for h in all_perms(n) {
        if stab.iter().all(|s| is_invariant(&h, s)) {
            equivariant += 1;
            if rows.iter().any(|r| r == h.images()) {
                rows_hit += 1;
            }
        }
    }
    Ok((equivariant, rows_hit))
}

fn forcing(_: usize) -> Check {
    let mut parts = Vec::new();
    for (name, t) in forcing_groups()? {
        let (eq, rows) = regular_forcing(&t)?;
        ensure(eq > 0 && eq == rows, format!("{name}: {eq} equivariant, {rows} rows"))?;
        parts.push(format!("{name} {eq}"));
    }
    Ok(format!("equivariant quotients, all rows: {}", parts.join(", ")))
}

/// `Γ = ⟨c ↦ cg⟩` for every `g ≠ 1` has no equivariant quotient.
pub fn right_translation_all_fail(t: &CayleyTable) -> Result<bool, Error> {
    let f = regular_rep(t);
    let n = t.order();
    for g in (0..n).filter(|&g| g != t.identity()) {
        let gamma = Perm::from_images((0..n).map(|c| t.mul(c, g)).collect())?;
        let cert = equivariant_quotient(&f, &PermGroup::cyclic(gamma))?;
        if cert.verdict != Verdict::NotExists {
            return Ok(false);
        }
    }
    Ok(true)
}

fn right_translation(_: usize) -> Check {
    let mut names = Vec::new();
    for (name, t) in forcing_groups()? {
        ensure(right_translation_all_fail(&t)?, format!("{name}: a translation admits a quotient"))?;
        names.push(name);
    }
    Ok(format!("not-exists for every g ≠ 1 in {}", names.join(", ")))
}

// ---- checkered product ----

fn checkered_blocks(_: usize) -> Check {
    for (sigma, reference, inverse, sym) in [
        (
            "(a,b,c)",
            "a: 0 1 2\nb: 1 2 0\nc: 2 0 1\n",
            "a: \\br0 \\br1 \\br2\nb: \\br2 \\br0 \\br1\nc: \\br1 \\br2 \\br0\n",
            "(\\br0,\\br1,\\br2)(0,1,2)",
        ),
        (
            "(d,e)",
            "d: 0 1\ne: 1 0\n",
            "d: \\br0 \\br1\ne: \\br1 \\br0\n",
            "(\\br0,\\br1)(0,1)",
        ),
    ] {
        let c = labels_in_order(sigma)?;
        let ch = checkered_product(&Perm::parse_cycles(sigma, &c)?, &c)?;
        let f = &ch.file.bij;
        let (la, lb) = (ch.file.labels.a.clone().unwrap(), ch.file.labels.b.clone().unwrap());
        ensure(rows_text(f, &lb, &c) == reference, format!("{sigma} block differs"))?;
        ensure(rows_text(&f.inverse(), &la, &c) == tex(inverse), format!("{sigma} inverse differs"))?;
        let ps = parse_mixed_cycles(&tex(sym), &[&c[..], &la[..], &lb[..]])?;
        let t = SymTriple::new(ps[1].clone(), ps[2].clone(), ps[0].clone());
        ensure(is_symmetry(f, &t)?, format!("{sym} is not a symmetry"))?;
    }
    Ok("blocks p, q, their inverses and symmetries".into())
}

const CHECKERED_HEADER: &str = "\\br0\\br0 \\br0\\br1 \\br0\\br2 \\br1\\br0 \\br1\\br1 \\br1\\br2 00 01 02 10 11 12";

const CHECKERED_ROWS: &str = "\
a: \\br00 \\br01 \\br02 \\br10 \\br11 \\br12 0\\br0 0\\br1 0\\br2 1\\br0 1\\br1 1\\br2
b: \\br01 \\br02 \\br00 \\br11 \\br12 \\br10 0\\br2 0\\br0 0\\br1 1\\br2 1\\br0 1\\br1
c: \\br02 \\br00 \\br01 \\br12 \\br10 \\br11 0\\br1 0\\br2 0\\br0 1\\br1 1\\br2 1\\br0
d: 0\\br0 0\\br1 0\\br2 1\\br0 1\\br1 1\\br2 \\br00 \\br01 \\br02 \\br10 \\br11 \\br12
e: 1\\br0 1\\br1 1\\br2 0\\br0 0\\br1 0\\br2 \\br10 \\br11 \\br12 \\br00 \\br01 \\br02
";

/// The first line carries a stray comma between two of its cycles.
const CHECKERED_SYMMETRIES: [&str; 3] = [
    "(a,b,c)(\\br00,\\br01,\\br02)(\\br10,\\br11,\\br12)(00,01,02),(10,11,12)",
    "(d,e)(0\\br0,1\\br0)(0\\br1,1\\br1)(0\\br2,1\\br2)(00,10)(01,11)(02,12)",
    "(a,b,c)(d,e)(\\br00,\\br01,\\br02)(\\br10,\\br11,\\br12)(0\\br0,1\\br0)(0\\br1,1\\br1)(0\\br2,1\\br2)(00,11,02,10,01,12)",
];

struct CheckeredCase {
    f: ProdBij,
    reference: Vec<SymTriple>,
    built: Vec<SymTriple>,
    a: Vec<String>,
    b: Vec<String>,
    c: Vec<String>,
}

fn checkered_case() -> Result<CheckeredCase, Fail> {
    let c = strings(&["a", "b", "c", "d", "e"]);
    let ch = checkered_product(&Perm::parse_cycles("(a,b,c)(d,e)", &c)?, &c)?;
    let (a, b) = (ch.file.labels.a.clone().unwrap(), ch.file.labels.b.clone().unwrap());
    let reference = CHECKERED_SYMMETRIES
        .iter()
        .map(|line| {
            let line = tex(line).replace("),(", ")(");
            let ps = parse_mixed_cycles(&line, &[&c[..], &a[..], &b[..]])?;
            Ok(SymTriple::new(ps[1].clone(), ps[2].clone(), ps[0].clone()))
        })
        .collect::<Result<Vec<_>, Fail>>()?;
    Ok(CheckeredCase {
        f: ch.file.bij,
        reference,
        built: ch.symmetries,
        a,
        b,
        c,
    })
}

fn checkered_table(_: usize) -> Check {
    let k = checkered_case()?;
    let header: Vec<String> = tex(CHECKERED_HEADER).split(' ').map(String::from).collect();
    ensure(k.a == header, format!("column labels differ: {:?}", k.a))?;
    let got = rows_text(&k.f, &k.b, &k.c);
    ensure(got == tex(CHECKERED_ROWS), format!("table differs:\n{got}"))?;
    ensure(k.f.is_parallel(), "table is not parallel")?;
    Ok(format!("{} columns × {} rows bit-exact", k.a.len(), k.c.len()))
}

fn checkered_symmetries(_: usize) -> Check {
    let k = checkered_case()?;
    for (line, t) in CHECKERED_SYMMETRIES.iter().zip(&k.reference) {
        ensure(is_symmetry(&k.f, t)?, format!("{line} is not a symmetry"))?;
    }
    ensure(k.reference == k.built, "reference lines differ from the constructed symmetries")?;
    Ok("3 reference symmetry lines hold".into())
}

fn checkered_subset(_: usize) -> Check {
    let k = checkered_case()?;
    let cert = nonexistence_from_symmetries(&k.f, &k.reference, &Limits::default())?
        .ok_or_else(|| Fail("reference symmetries do not rule out a quotient".into()))?;
    ensure(cert.reason == Reason::OrbitExhaustion, "expected orbit exhaustion")?;
    let orbits = cert.orbits.as_ref().expect("orbit certificates list orbits");
    let bad = orbits.iter().filter(|o| !o.matchable).count();
    Ok(format!(
        "not-exists for <(a,b,c)(d,e)> by orbit exhaustion ({} orbits, {bad} unmatchable)",
        orbits.len()
    ))
}

// ---- lazy tables ----

struct LazyCase {
    gamma: &'static str,
    columns: usize,
    reference: &'static str,
    symmetry: &'static str,
}

const LAZY_CASES: [LazyCase; 7] = [
    LazyCase {
        gamma: "(a,b)",
        columns: 2,
        reference: "a: Ka Kb\nb: Qb Qa\n",
        symmetry: "(a,b)(K,Q)",
    },
    LazyCase {
        gamma: "(a,b,c)",
        columns: 3,
        reference: "a: Ka Kb Kc\nb: Qb Qc Qa\nc: Jc Ja Jb\n",
        symmetry: "(a,b,c)(K,Q,J)",
    },
    LazyCase {
        gamma: "(a,b)(c,d)",
        columns: 4,
        reference: "a: Ka Kb Kc Kd\nb: Qb Qa Qd Qc\nc: Ja Jb Jc Jd\nd: Xb Xa Xd Xc\n",
        symmetry: "(a,b)(c,d)(K,Q)(J,X)",
    },
    LazyCase {
        gamma: "(a,b)(c)",
        columns: 6,
        reference: "a: Ka Kb Kc 1a 2a 3a\nb: Qb Qa Qc 1b 2b 3b\nc: 1c 2c 3c 4c 5c 6c\n",
        symmetry: "(a,b)(K,Q)",
    },
    LazyCase {
        gamma: "(a,b,c)(d)",
        columns: 8,
        reference: "a: Ka Kb Kc Kd 1a 2a 3a 4a\nb: Qb Qc Qa Qd 1b 2b 3b 4b\n\
                  c: Jc Ja Jb Jd 1c 2c 3c 4c\nd: 1d 2d 3d 4d 5d 6d 7d 8d\n",
        symmetry: "(a,b,c)(K,Q,J)",
    },
    LazyCase {
        gamma: "(a,b,c)(d)(e)",
        columns: 9,
        reference: "a: Ka Kb Kc Kd Ke 1a 2a 3a 4a\nb: Qb Qc Qa Qd Qe 1b 2b 3b 4b\n\
                  c: Jc Ja Jb Jd Je 1c 2c 3c 4c\nd: 1d 2d 3d 4d 5d 6d 7d 8d 9d\n\
                  e: 1e 2e 3e 4e 5e 6e 7e 8e 9e\n",
        symmetry: "(a,b,c)(K,Q,J)",
    },
    LazyCase {
        gamma: "(a,b)(c,d)(e)",
        columns: 9,
        reference: "a: Ka Kb Kc Kd Ke 1a 2a 3a 4a\nb: Qb Qa Qd Qc Qe 1b 2b 3b 4b\n\
                  c: Ja Jb Jc Jd Je 1c 2c 3c 4c\nd: Xb Xa Xd Xc Xe 1d 2d 3d 4d\n\
                  e: 1e 2e 3e 4e 5e 6e 7e 8e 9e\n",
        symmetry: "(a,b)(c,d)(K,Q)(J,X)",
    },
];

fn lazy_case(case: &LazyCase) -> Check {
    let c = labels_in_order(case.gamma)?;
    let gamma = Perm::parse_cycles(case.gamma, &c)?;
    let (lazy, sym) = thm4_counterexample(&gamma, &c)?;
    let got = lazy.render(case.columns);
    ensure(got == case.reference, format!("rendering differs:\n{got}"))?;
    let ps = parse_mixed_cycles(case.symmetry, &[lazy.c_labels(), lazy.symbols()])?;
    let (g, beta) = (&ps[0], &ps[1]);
    ensure(lazy.check_symmetry(beta, g), format!("{} fails", case.symmetry))?;
    ensure(*g == sym.gamma && *beta == sym.beta, "reference symmetry differs from the built-in one")?;
    ensure(
        !lazy.check_symmetry(&Perm::identity(beta.degree()), g),
        "symmetry holds without permuting symbols",
    )?;
    ensure(nonexistence_by_halffixed(std::slice::from_ref(&sym)).is_some(), "not half-fixed")?;
    let mut detail = format!("{} columns, symmetry {} exact", case.columns, case.symmetry);
    if lazy.width() == lazy.symbols().len() {
        let f = lazy.header_block()?.bij;
        ensure(is_symmetry(&f, &sym)?, "finite table misses the symmetry")?;
        let cert = equivariant_quotient(&f, &PermGroup::cyclic(gamma))?;
        ensure(cert.verdict == Verdict::NotExists, "finite table admits a quotient")?;
        detail.push_str(", finite solver agrees");
    }
    Ok(detail)
}

fn lazy_0(_: usize) -> Check {
    lazy_case(&LAZY_CASES[0])
}
fn lazy_1(_: usize) -> Check {
    lazy_case(&LAZY_CASES[1])
}
fn lazy_2(_: usize) -> Check {
    lazy_case(&LAZY_CASES[2])
}
fn lazy_3(_: usize) -> Check {
    lazy_case(&LAZY_CASES[3])
}
fn lazy_4(_: usize) -> Check {
    lazy_case(&LAZY_CASES[4])
}
fn lazy_5(_: usize) -> Check {
    lazy_case(&LAZY_CASES[5])
}
fn lazy_6(_: usize) -> Check {
    lazy_case(&LAZY_CASES[6])
}

// ---- division-by-three gadgets ----

const ORDERS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn abc() -> Vec<String> {
    strings(&["a", "b", "c"])
}

fn gadget_table(_: usize) -> Check {
    let c = abc();
    for order in ORDERS {
        let file = gadget_f_xyz(order, &c)?;
        let (la, lb) = (file.labels.a.clone().unwrap(), file.labels.b.clone().unwrap());
        ensure(la == tex("\\br0 \\br1 \\br2").split(' ').map(String::from).collect::<Vec<_>>(), "A labels")?;
        let shifts = ["0 1 2", "1 2 0", "2 0 1"];
        for (k, &row) in order.iter().enumerate() {
            let r: Vec<&str> = file.bij.row(row)?.iter().map(|&b| lb[b].as_str()).collect();
            ensure(r.join(" ") == shifts[k], format!("guise {order:?} row {}", c[row]))?;
        }
        let ps = parse_mixed_cycles(&tex("(\\br0,\\br1,\\br2)(0,1,2)"), &[&la[..], &lb[..]])?;
        let t = SymTriple::new(ps[0].clone(), ps[1].clone(), Perm::identity(3));
        ensure(is_symmetry(&file.bij, &t)?, "rotation symmetry fails")?;
    }
    Ok("six guises, rows and rotation symmetry".into())
}

fn gadget_guises(_: usize) -> Check {
    let c = abc();
    let id = Perm::identity(3);
    for order in ORDERS {
        let [x, y, z] = order;
        let file = gadget_f_xyz(order, &c)?;
        let (la, lb) = (file.labels.a.clone().unwrap(), file.labels.b.clone().unwrap());
        let rot = Perm::parse_cycles("(0,1,2)", &lb)?;
        let got = file.bij.transform(&id, &rot, &id)?;
        ensure(got == gadget_f_xyz([z, x, y], &c)?.bij, format!("rotation guise {order:?}"))?;
        let ta = Perm::parse_cycles(&tex("(\\br1,\\br2)"), &la)?;
        let tb = Perm::parse_cycles("(1,2)", &lb)?;
        let got = file.bij.transform(&ta, &tb, &id)?;
        ensure(got == gadget_f_xyz([x, z, y], &c)?.bij, format!("transposition guise {order:?}"))?;
    }
    Ok("f[x,y,z] under (0,1,2) is f[z,x,y]; under (1̄,2̄)(1,2) is f[x,z,y]".into())
}

fn gadget_lazy(_: usize) -> Check {
    let c = abc();
    let ab = gadget_f_xy(0, 1, &c)?;
    let ba = gadget_f_xy(1, 0, &c)?;
    ensure(
        ab.render(6) == "a: Ka Kb Kc 1a 2a 3a\nb: Qb Qa Qc 1b 2b 3b\nc: 1c 2c 3c 4c 5c 6c\n",
        "f[a,b] differs",
    )?;
    ensure(
        ba.render(6) == "a: Qa Qb Qc 1a 2a 3a\nb: Kb Ka Kc 1b 2b 3b\nc: 1c 2c 3c 4c 5c 6c\n",
        "f[b,a] differs",
    )?;
    let kq = Perm::parse_cycles("(K,Q)", ab.symbols())?;
    ensure(ab.transform_equals(&kq, &Perm::identity(3), &ba), "f[a,b] under (K,Q) is not f[b,a]")?;
    ensure(ba.transform_equals(&kq, &Perm::identity(3), &ab), "f[b,a] under (K,Q) is not f[a,b]")?;
    Ok("f[a,b], f[b,a] and the (K,Q) guise".into())
}

fn gadget_extract(_: usize) -> Check {
    let c = abc();
    for star in 0..3 {
        let got = extract_basepoint(|f| fp_divide(f, star), &c)?;
        ensure(got == star, format!("basepoint {} recovered as {}", c[star], c[got]))?;
    }
    Ok("basepoints a, b, c recovered from all six guises".into())
}

// ---- probes ----

fn probe_gcd(_: usize) -> Check {
    ensure(!gcd_filter(2, 2), "(2,2)")?;
    ensure(gcd_filter(2, 3), "(2,3)")?;
    ensure(gcd_filter(8, 11), "(8,11)")?;
    Ok("(2,2) false, (2,3) true, (8,11) true".into())
}

fn probe_2x2(jobs: usize) -> Check {
    let mut p = ProbeParams::new(2, 2, PermGroup::symmetric(2), "full", Mode::All);
    p.jobs = jobs;
    let r = probe_cancelling(&p)?;
    let e1 = parse_bijection(E1_TEXT)?.bij;
    ensure(!r.counterexamples.is_empty(), "no counterexample")?;
    ensure(r.counterexamples.iter().any(|c| c.bij == e1), "E1 not found")?;
    let g = PermGroup::symmetric(2);
    for ce in &r.counterexamples {
        ensure(verify_certificate(&ce.bij, &g, &ce.certificate)?, "certificate fails")?;
    }
    let mut q = p.clone();
    q.mode = Mode::Parallel;
    let rp = probe_cancelling(&q)?;
    ensure(!rp.counterexamples.is_empty(), "parallel mode disagrees")?;
    Ok(format!(
        "{} of {} bijections and {} of {} parallel tuples have no quotient",
        r.counterexamples.len(),
        r.scanned,
        rp.counterexamples.len(),
        rp.scanned
    ))
}

fn probe_2x3(jobs: usize) -> Check {
    let mut p = ProbeParams::new(2, 3, PermGroup::symmetric(3), "full", Mode::All);
    p.jobs = jobs;
    let r = probe_cancelling(&p)?;
    ensure(r.scanned == 720, format!("scanned {}", r.scanned))?;
    ensure(r.counterexamples.is_empty() && r.undecided == 0, "found a counterexample")?;
    Ok("720 bijections, no counterexample with |A|=2".into())
}

type CheckFn = fn(usize) -> Check;

const ITEMS: [(&str, CheckFn); 28] = [
    ("xor-2x2/full-group", xor_full),
    ("xor-2x2/trivial-group", xor_trivial),
    ("xor-2x2/reference-table", xor_reference),
    ("fp/examples", fp_examples),
    ("regular/z2", regular_z2),
    ("regular/z3", regular_z3),
    ("regular/klein", regular_klein),
    ("regular/duplicated-z2", regular_duplicated),
    ("regular/forcing", forcing),
    ("regular/right-translation", right_translation),
    ("checkered/blocks", checkered_blocks),
    ("checkered/table", checkered_table),
    ("checkered/symmetries", checkered_symmetries),
    ("checkered/subset-nonexistence", checkered_subset),
    ("lazy/(a,b)", lazy_0),
    ("lazy/(a,b,c)", lazy_1),
    ("lazy/(a,b)(c,d)", lazy_2),
    ("lazy/(a,b)(c)", lazy_3),
    ("lazy/(a,b,c)(d)", lazy_4),
    ("lazy/(a,b,c)(d)(e)", lazy_5),
    ("lazy/(a,b)(c,d)(e)", lazy_6),
    ("gadget/f-xyz", gadget_table),
    ("gadget/guises", gadget_guises),
    ("gadget/f-xy", gadget_lazy),
    ("gadget/extract-basepoint", gadget_extract),
    ("probe/gcd", probe_gcd),
    ("probe/2x2-full", probe_2x2),
    ("probe/2x3-full", probe_2x3),
];

/// Runs every item; `jobs` only affects the probes, never their output.
pub fn run(jobs: usize) -> Vec<Item> {
    ITEMS
        .iter()
        .map(|&(name, check)| match check(jobs) {
            Ok(detail) => Item {
                name,
                passed: true,
                detail,
            },
            Err(Fail(detail)) => Item {
                name,
                passed: false,
                detail,
            },
        })
        .collect()
}

pub fn report(items: &[Item]) -> String {
    let mut out = String::new();
    for it in items {
        let tag = if it.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{tag} {}: {}", it.name, it.detail);
    }
    let passed = items.iter().filter(|i| i.passed).count();
    let _ = writeln!(out, "corpus {} items, {passed} passed", items.len());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tex_conversion() {
        assert_eq!(tex("\\br0\\br1"), "0\u{304}1\u{304}");
        assert_eq!(tex("0\\br2 11"), "02\u{304} 11");
    }

    #[test]
    fn every_item_passes() {
        let items = run(2);
        let failed: Vec<&Item> = items.iter().filter(|i| !i.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }

    #[test]
    fn names_are_unique() {
        let mut names: Vec<&str> = ITEMS.iter().map(|i| i.0).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), ITEMS.len());
    }
}
