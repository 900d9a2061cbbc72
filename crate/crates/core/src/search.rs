//! Probes of cancellation at small sizes.
//!
//! Candidates are indexed canonically (lexicographic unranking), evaluated
//! on a worker pool and merged back in index order, so the number of
//! workers never changes a report.

use std::fmt::Write as _;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bijection::{serialize_bijection, EqdFile, ProdBij};
use crate::equivariance::{equivariant_quotient_with, is_invariant, Certificate, Limits, SymTriple, Verdict};
use crate::error::{Error, Result};
use crate::fp::parallelize;
use crate::gallery::gadget_f_xyz;
use crate::perm::{Perm, PermGroup};

/// Most bijections enumerated in all-mode (`10!`).
pub const ALL_MODE_BUDGET: u128 = 3_628_800;
/// Most row tuples enumerated in parallel-mode.
pub const PARALLEL_MODE_BUDGET: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Tuples of `|C|` permutations of `A`; enough by the parallelization
    /// reduction.
    Parallel,
    /// Every bijection `A × C → B × C`.
    All,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Parallel => "parallel",
            Mode::All => "all",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ProbeParams {
    pub n_a: usize,
    pub n_c: usize,
    pub group: PermGroup,
    /// How the group was specified, echoed in the report.
    pub group_name: String,
    pub mode: Mode,
    /// `(count, seed)` for sampling instead of exhaustive enumeration.
    pub sample: Option<(usize, u64)>,
    pub jobs: usize,
    pub limits: Limits,
}

impl ProbeParams {
    pub fn new(n_a: usize, n_c: usize, group: PermGroup, group_name: &str, mode: Mode) -> Self {
        ProbeParams {
            n_a,
            n_c,
            group,
            group_name: group_name.to_string(),
            mode,
            sample: None,
            jobs: 1,
            limits: Limits::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub index: u64,
    pub bij: ProdBij,
    pub certificate: Certificate,
}

impl Counterexample {
    pub fn certificate_name(&self) -> String {
        format!("cert-{:07}.txt", self.index)
    }
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub params: ProbeParams,
    pub exhaustive: bool,
    pub scanned: u64,
    pub exists: u64,
    pub undecided: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl ProbeReport {
    pub fn to_text(&self) -> String {
        let p = &self.params;
        let mut out = String::new();
        let coverage = match p.sample {
            None => "exhaustive".to_string(),
            Some((n, seed)) => format!("sampled {n} seed {seed}"),
        };
        let _ = writeln!(
            out,
            "probe nA={} nC={} group={} mode={} coverage={}",
            p.n_a,
            p.n_c,
            p.group_name,
            p.mode.as_str(),
            coverage
        );
        for ce in &self.counterexamples {
            let _ = writeln!(
                out,
                "counterexample {} cert={} reason={} table={}",
                ce.index,
                ce.certificate_name(),
                ce.certificate.reason.as_str(),
                compact_table(&ce.bij)
            );
        }
        let _ = writeln!(
            out,
            "summary scanned={} exists={} not-exists={} undecided={}",
            self.scanned,
            self.exists,
            self.counterexamples.len(),
            self.undecided
        );
        let verdict = if !self.counterexamples.is_empty() {
            format!("counterexample found with |A|={}", p.n_a)
        } else if self.undecided > 0 {
            format!("no counterexample decided with |A|={} ({} undecided)", p.n_a, self.undecided)
        } else if self.exhaustive {
            format!("no counterexample with |A|={}", p.n_a)
        } else {
            format!("no counterexample among sampled instances with |A|={}", p.n_a)
        };
        let _ = writeln!(out, "result {verdict}");
        out
    }
}

/// Rows separated by `|`, entries `b:c'`.
pub fn compact_table(f: &ProdBij) -> String {
    (0..f.n_c())
        .map(|c| {
            (0..f.n_a())
                .map(|a| {
                    let (b, c2) = f.get(a, c);
                    format!("{b}:{c2}")
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join(" | ")
}

enum Outcome {
    Exists,
    NotExists(Box<Certificate>),
    Undecided,
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// The `k`-th permutation of `0..n` in lexicographic order.
pub fn nth_permutation(n: usize, mut k: u128) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f = factorial(i);
        let idx = (k / f) as usize;
        k %= f;
        out.push(pool.remove(idx));
    }
    out
}

fn candidate_count(n_a: usize, n_c: usize, mode: Mode) -> Option<u128> {
    match mode {
        Mode::All => {
            let n = n_a * n_c;
            (n <= 30).then(|| factorial(n))
        }
        Mode::Parallel => {
            let per_row = factorial(n_a);
            (0..n_c).try_fold(1u128, |acc, _| acc.checked_mul(per_row))
        }
    }
}

fn nth_candidate(n_a: usize, n_c: usize, mode: Mode, k: u128) -> ProdBij {
    match mode {
        Mode::All => ProdBij::from_cell_perm(n_a, n_c, &nth_permutation(n_a * n_c, k)),
        Mode::Parallel => {
            let base = factorial(n_a);
            let mut digits = vec![0u128; n_c];
            let mut k = k;
            // row 0 most significant
            for d in digits.iter_mut().rev() {
                *d = k % base;
                k /= base;
            }
            let rows: Vec<Perm> = digits
                .iter()
                .map(|&d| Perm::from_images_unchecked(nth_permutation(n_a, d)))
                .collect();
            ProdBij::from_parallel_rows(n_a, &rows).expect("rows share the degree")
        }
    }
}

fn sampled_candidates(n_a: usize, n_c: usize, mode: Mode, count: usize, seed: u64) -> Vec<ProdBij> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| match mode {
            Mode::All => ProdBij::random(n_a, n_c, &mut rng),
            Mode::Parallel => {
                let rows: Vec<Perm> = (0..n_c)
                    .map(|_| {
                        let mut v: Vec<usize> = (0..n_a).collect();
                        v.shuffle(&mut rng);
                        Perm::from_images_unchecked(v)
                    })
                    .collect();
                ProdBij::from_parallel_rows(n_a, &rows).expect("rows share the degree")
            }
        })
        .collect()
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("cannot start worker pool: {e}")))
}

fn evaluate(f: &ProdBij, group: &PermGroup, limits: &Limits) -> Result<Outcome> {
    match equivariant_quotient_with(f, group, limits) {
        Ok(c) if c.verdict == Verdict::Exists => Ok(Outcome::Exists),
        Ok(c) => Ok(Outcome::NotExists(Box::new(c))),
        Err(Error::BudgetExceeded(_)) => Ok(Outcome::Undecided),
        Err(e) => Err(e),
    }
}

/// Runs the quotient solver over every candidate (or a seeded sample).
pub fn probe_cancelling(params: &ProbeParams) -> Result<ProbeReport> {
    let (n_a, n_c, mode) = (params.n_a, params.n_c, params.mode);
    if params.group.degree() != n_c {
        return Err(Error::DegreeMismatch {
            expected: n_c,
            found: params.group.degree(),
        });
    }
    // enumerate once up front so workers share the cached elements
    params.group.enumerate(params.limits.group_cap)?;
    let pool = pool(params.jobs)?;

    let results: Vec<(u64, ProdBij, Outcome)> = match params.sample {
        None => {
            let budget = match mode {
                Mode::All => ALL_MODE_BUDGET,
                Mode::Parallel => PARALLEL_MODE_BUDGET,
            };
            let total = candidate_count(n_a, n_c, mode)
                .filter(|&t| t <= budget)
                .ok_or(Error::BudgetExceeded(budget as u64))?;
            pool.install(|| {
                (0..total as u64)
                    .into_par_iter()
                    .map(|k| {
                        let f = nth_candidate(n_a, n_c, mode, k as u128);
                        let o = evaluate(&f, &params.group, &params.limits)?;
                        Ok((k, f, o))
                    })
                    .collect::<Result<Vec<_>>>()
            })?
        }
        Some((count, seed)) => {
            let cands = sampled_candidates(n_a, n_c, mode, count, seed);
            pool.install(|| {
                cands
                    .into_par_iter()
                    .enumerate()
                    .map(|(k, f)| {
                        let o = evaluate(&f, &params.group, &params.limits)?;
                        Ok((k as u64, f, o))
                    })
                    .collect::<Result<Vec<_>>>()
            })?
        }
    };

    let mut report = ProbeReport {
        params: params.clone(),
        exhaustive: params.sample.is_none(),
        scanned: results.len() as u64,
        exists: 0,
        undecided: 0,
        counterexamples: Vec::new(),
    };
    for (index, bij, outcome) in results {
        match outcome {
            Outcome::Exists => report.exists += 1,
            Outcome::Undecided => report.undecided += 1,
            Outcome::NotExists(certificate) => report.counterexamples.push(Counterexample {
                index,
                bij,
                certificate: *certificate,
            }),
        }
    }
    Ok(report)
}

/// `gcd(k, n!) = 1`, i.e. `k` has no prime factor `≤ n`.
pub fn gcd_filter(n: u64, k: u64) -> bool {
    (2..=n).all(|i| k.gcd(&i) == 1)
}

#[derive(Clone, Debug)]
pub struct GapReport {
    pub n_a: usize,
    pub n_c: usize,
    pub group_name: String,
    pub scanned: u64,
    /// Instances whose own quotient exists.
    pub with_quotient: u64,
    pub undecided: u64,
    /// `f` has a quotient but its parallelization does not.
    pub witnesses: Vec<(u64, ProdBij)>,
}

impl GapReport {
    pub fn gap_found(&self) -> bool {
        !self.witnesses.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "gap-search nA={} nC={} group={} coverage=exhaustive",
            self.n_a, self.n_c, self.group_name
        );
        for (k, f) in &self.witnesses {
            let _ = writeln!(out, "gap-witness {k} table={}", compact_table(f));
        }
        let _ = writeln!(
            out,
            "summary scanned={} with-quotient={} undecided={} witnesses={}",
            self.scanned,
            self.with_quotient,
            self.undecided,
            self.witnesses.len()
        );
        if self.witnesses.is_empty() {
            let _ = writeln!(out, "result none found at this size");
        } else {
            let _ = writeln!(out, "result gap witnesses found at this size");
        }
        out
    }
}

/// Looks for `f` that has a Γ-equivariant quotient while its
/// parallelization does not. Exhaustive over all bijections of the size.
pub fn parallelization_gap_search(
    n_a: usize,
    n_c: usize,
    group: &PermGroup,
    group_name: &str,
    limits: &Limits,
    jobs: usize,
) -> Result<GapReport> {
    let total = candidate_count(n_a, n_c, Mode::All)
        .filter(|&t| t <= ALL_MODE_BUDGET)
        .ok_or(Error::BudgetExceeded(ALL_MODE_BUDGET as u64))?;
    group.enumerate(limits.group_cap)?;
    let pool = pool(jobs)?;
    // (index, f, f has quotient, gap, undecided)
    let rows: Vec<(u64, ProdBij, bool, bool, bool)> = pool.install(|| {
        (0..total as u64)
            .into_par_iter()
            .map(|k| {
                let f = nth_candidate(n_a, n_c, Mode::All, k as u128);
                let own = evaluate(&f, group, limits)?;
                let (has, gap, undecided) = match own {
                    Outcome::Exists => match evaluate(&parallelize(&f)?, group, limits)? {
                        Outcome::Exists => (true, false, false),
                        Outcome::NotExists(_) => (true, true, false),
                        Outcome::Undecided => (true, false, true),
                    },
                    Outcome::NotExists(_) => (false, false, false),
                    Outcome::Undecided => (false, false, true),
                };
                Ok((k, f, has, gap, undecided))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mut report = GapReport {
        n_a,
        n_c,
        group_name: group_name.to_string(),
        scanned: rows.len() as u64,
        with_quotient: 0,
        undecided: 0,
        witnesses: Vec::new(),
    };
    for (k, f, has, gap, undecided) in rows {
        report.with_quotient += has as u64;
        report.undecided += undecided as u64;
        if gap {
            report.witnesses.push((k, f));
        }
    }
    Ok(report)
}

/// Recovers the point of `C` a division method distinguishes, by dividing
/// all six guises `f[x,y,z]`. Each quotient must be one of the rows and
/// commute with the rotation symmetry, and all six must name the same
/// point; otherwise the divider is not natural.
pub fn extract_basepoint<D>(divider: D, c_labels: &[String]) -> Result<usize>
where
    D: Fn(&ProdBij) -> Result<Perm>,
{
    let orders = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let rot = Perm::from_images_unchecked(vec![1, 2, 0]);
    let rotation = SymTriple::new(rot.clone(), rot, Perm::identity(3));
    let mut found: Option<usize> = None;
    for order in orders {
        let EqdFile { bij: f, .. } = gadget_f_xyz(order, c_labels)?;
        let h = divider(&f)?;
        if !is_invariant(&h, &rotation) {
            return Err(Error::NotNatural(format!(
                "quotient {h:?} of guise {order:?} breaks the rotation symmetry"
            )));
        }
        let row = (0..3)
            .find(|&c| f.row(c).map(|r| r == h.images()).unwrap_or(false))
            .ok_or_else(|| Error::NotNatural(format!("quotient {h:?} is not a row")))?;
        match found {
            None => found = Some(row),
            Some(prev) if prev == row => {}
            Some(prev) => {
                return Err(Error::NotNatural(format!(
                    "guises disagree: {} vs {}",
                    c_labels[prev], c_labels[row]
                )))
            }
        }
    }
    Ok(found.expect("six guises checked"))
}

/// Writes each counterexample's certificate next to its bijection.
pub fn certificate_files(report: &ProbeReport) -> Vec<(String, String)> {
    report
        .counterexamples
        .iter()
        .map(|ce| {
            let file = EqdFile::unlabeled(ce.bij.clone());
            let labels = file.labels.clone();
            let mut text = String::new();
            text.push_str(&crate::equivariance::serialize_certificate(
                &ce.certificate,
                &labels,
                ce.bij.n_a(),
            ));
            text.push_str("bijection\n");
            text.push_str(&serialize_bijection(&file));
            (ce.certificate_name(), text)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::fp_divide;

    fn abc() -> Vec<String> {
        ["a", "b", "c"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn unranking_is_lexicographic() {
        let all: Vec<Vec<usize>> = (0..24).map(|k| nth_permutation(4, k)).collect();
        assert_eq!(all[0], vec![0, 1, 2, 3]);
        assert_eq!(all[23], vec![3, 2, 1, 0]);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn gcd_examples() {
        assert!(gcd_filter(2, 3));
        assert!(!gcd_filter(2, 2));
        assert!(gcd_filter(8, 11));
        assert!(!gcd_filter(4, 9));
        assert!(gcd_filter(1, 6));
    }

    #[test]
    fn probe_2x2_full_finds_xor_table() {
        let p = ProbeParams::new(2, 2, PermGroup::symmetric(2), "full", Mode::All);
        let r = probe_cancelling(&p).unwrap();
        assert_eq!(r.scanned, 24);
        let e1 = ProdBij::new(2, 2, 2, vec![(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        assert!(r.counterexamples.iter().any(|c| c.bij == e1));
    }

    #[test]
    fn probe_fixed_point_group_parallel_is_clean() {
        let labels = abc();
        let g = PermGroup::cyclic(Perm::parse_cycles("(a,b)", &labels).unwrap());
        let p = ProbeParams::new(2, 3, g, "gens (a,b)", Mode::Parallel);
        let r = probe_cancelling(&p).unwrap();
        assert_eq!(r.scanned, 8);
        assert!(r.counterexamples.is_empty());
        assert!(r.to_text().contains("result no counterexample with |A|=2"));
    }

    #[test]
    fn probe_budget() {
        let p = ProbeParams::new(4, 3, PermGroup::symmetric(3), "full", Mode::All);
        assert!(matches!(probe_cancelling(&p), Err(Error::BudgetExceeded(_))));
        let mut p = p;
        p.sample = Some((20, 1));
        let r = probe_cancelling(&p).unwrap();
        assert_eq!(r.scanned, 20);
        assert!(!r.exhaustive);
    }

    #[test]
    fn jobs_do_not_change_reports() {
        let mut p = ProbeParams::new(2, 2, PermGroup::symmetric(2), "full", Mode::All);
        let one = probe_cancelling(&p).unwrap().to_text();
        p.jobs = 4;
        assert_eq!(probe_cancelling(&p).unwrap().to_text(), one);
    }

    #[test]
    fn identity_is_not_a_gap_witness() {
        let r = parallelization_gap_search(2, 2, &PermGroup::symmetric(2), "full", &Limits::default(), 1)
            .unwrap();
        let id = ProdBij::identity(2, 2);
        assert!(r.witnesses.iter().all(|(_, f)| *f != id));
    }

    #[test]
    fn basepoints_from_fp() {
        for star in 0..3 {
            let got = extract_basepoint(|f| fp_divide(f, star), &abc()).unwrap();
            assert_eq!(got, star);
        }
    }

    #[test]
    fn non_natural_divider_is_caught() {
        // always answers the identity, which is not a row in every guise
        let err = extract_basepoint(|_| Ok(Perm::identity(3)), &abc()).unwrap_err();
        assert!(matches!(err, Error::NotNatural(_)));
        // picks a row by a label-dependent rule
        let err = extract_basepoint(
            |f| Ok(Perm::from_images(f.row(0).unwrap()).unwrap()),
            &abc(),
        );
        assert!(err.is_ok(), "row 0 is natural under relabelings of A and B");
    }
}
