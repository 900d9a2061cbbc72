mod common;

use equidiv::equivariance::verify_certificate;
use equidiv::fp::parallelize;
use equidiv::search::{
    certificate_files, parallelization_gap_search, probe_cancelling, Mode, ProbeParams,
};
use equidiv::{Limits, PermGroup, ProdBij};

#[test]
fn gap_search_matches_straight_line_scan() {
    let g = PermGroup::symmetric(2);
    let report = parallelization_gap_search(2, 2, &g, "full", &Limits::default(), 2).unwrap();

    let mut expected: Vec<ProdBij> = Vec::new();
    let mut with_quotient = 0;
    for f in common::all_bijections(2, 2) {
        if common::quotients(&f, &common::full(2)).is_empty() {
            continue;
        }
        with_quotient += 1;
        if common::quotients(&parallelize(&f).unwrap(), &common::full(2)).is_empty() {
            expected.push(f);
        }
    }
    let found: Vec<ProdBij> = report.witnesses.iter().map(|(_, f)| f.clone()).collect();
    assert_eq!(report.scanned, 24);
    assert_eq!(report.with_quotient, with_quotient);
    assert_eq!(found, expected);
    assert_eq!(report.gap_found(), !expected.is_empty());
    if expected.is_empty() {
        assert!(report.to_text().contains("result none found at this size"));
    }
}

#[test]
fn probe_counterexamples_match_oracle() {
    let p = ProbeParams::new(2, 2, PermGroup::symmetric(2), "full", Mode::All);
    let r = probe_cancelling(&p).unwrap();
    let expected: Vec<ProdBij> = common::all_bijections(2, 2)
        .into_iter()
        .filter(|f| common::quotients(f, &common::full(2)).is_empty())
        .collect();
    let found: Vec<ProdBij> = r.counterexamples.iter().map(|c| c.bij.clone()).collect();
    assert_eq!(found, expected);
    assert_eq!(r.exists as usize + found.len(), 24);
    let g = PermGroup::symmetric(2);
    for ce in &r.counterexamples {
        assert!(verify_certificate(&ce.bij, &g, &ce.certificate).unwrap());
    }
}

#[test]
fn parallel_mode_agrees_with_all_mode() {
    for n_c in 1..=3 {
        let all = probe_cancelling(&ProbeParams::new(2, n_c, PermGroup::symmetric(n_c), "full", Mode::All))
            .unwrap();
        let par = probe_cancelling(&ProbeParams::new(
            2,
            n_c,
            PermGroup::symmetric(n_c),
            "full",
            Mode::Parallel,
        ))
        .unwrap();
        assert_eq!(all.counterexamples.is_empty(), par.counterexamples.is_empty(), "nC={n_c}");
    }
}

#[test]
fn reports_ignore_worker_count() {
    for mode in [Mode::All, Mode::Parallel] {
        let mut p = ProbeParams::new(2, 3, PermGroup::symmetric(3), "full", mode);
        let base = probe_cancelling(&p).unwrap().to_text();
        for jobs in [2, 3, 8] {
            p.jobs = jobs;
            assert_eq!(probe_cancelling(&p).unwrap().to_text(), base);
        }
    }
    let mut p = ProbeParams::new(3, 3, PermGroup::symmetric(3), "full", Mode::All);
    p.sample = Some((200, 7));
    let one = probe_cancelling(&p).unwrap().to_text();
    p.jobs = 4;
    assert_eq!(probe_cancelling(&p).unwrap().to_text(), one);
    p.sample = Some((200, 8));
    assert_ne!(probe_cancelling(&p).unwrap().to_text(), one);
}

#[test]
fn certificate_files_are_named_in_the_report() {
    let p = ProbeParams::new(2, 2, PermGroup::symmetric(2), "full", Mode::All);
    let r = probe_cancelling(&p).unwrap();
    let text = r.to_text();
    let files = certificate_files(&r);
    assert_eq!(files.len(), r.counterexamples.len());
    for (name, body) in files {
        assert!(text.contains(&name));
        assert!(body.starts_with("verdict not-exists\n"));
        assert!(body.contains("EQUIDIV 1\n"));
    }
}

#[test]
fn gap_witness_at_three_confirmed_by_oracle() {
    // first witness reported by `gap --nA 3 --nC 3 --group full`
    let f = ProdBij::new(
        3,
        3,
        3,
        vec![(0, 0), (1, 0), (2, 0), (1, 1), (2, 1), (0, 2), (2, 2), (0, 1), (1, 2)],
    )
    .unwrap();
    let fbar = parallelize(&f).unwrap();
    let full = common::full(3);
    assert!(!common::quotients(&f, &full).is_empty());
    assert!(common::quotients(&fbar, &full).is_empty());
    // parallelization keeps every symmetry of f
    for (a, b, g) in common::stabilizer(&f, &full) {
        assert!(common::is_sym(&fbar, &a, &b, &g));
    }
}
