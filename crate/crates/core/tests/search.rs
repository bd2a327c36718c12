mod common;

use std::io::Cursor;

use spex_core::canonical::is_isomorphic;
use spex_core::constructions::*;
use spex_core::graph6::parse_graph6;
use spex_core::patterns::{is_free, join_is_free};
use spex_core::planarity::is_planar;
use spex_core::search::*;
use spex_core::spectral::{rho, RhoOrdering};
use spex_core::{ForbiddenPattern, PathPartition};

fn opts() -> SearchOptions {
    SearchOptions {
        top_k: usize::MAX,
        ..SearchOptions::default()
    }
}

#[test]
fn family_candidate_counts_follow_part_bounds() {
    for n in [10usize, 17, 24, 31] {
        let t = n - 2;
        let r = family_search(&ForbiddenPattern::Cll(4), n, &opts()).unwrap();
        assert_eq!(r.passed, t / 2 + 1, "cll:4 n={n}");
        let r = family_search(&ForbiddenPattern::Theta(7), n, &opts()).unwrap();
        assert_eq!(r.passed, t / 2 + 2, "theta:7 n={n}");
        let r = family_search(&ForbiddenPattern::Theta(5), n, &opts()).unwrap();
        assert_eq!(r.passed, 1, "theta:5 n={n}");
    }
}

#[test]
fn family_candidates_reverify() {
    for (pat, n) in [
        (ForbiddenPattern::Cll(5), 16),
        (ForbiddenPattern::Theta(8), 18),
        (ForbiddenPattern::Cll(3), 12),
    ] {
        let r = family_search(&pat, n, &opts()).unwrap();
        assert_eq!(r.ranked.len(), r.passed);
        for c in &r.ranked {
            let p = c.partition.as_ref().unwrap();
            let g = join_k2(&realize_partition(p)).unwrap();
            assert_eq!(g.n(), n);
            assert!(is_free(&g, &pat).unwrap());
            assert!(is_planar(&g));
            assert!((rho(&g).unwrap() - c.rho).abs() <= 1e-9);
        }
        for w in r.ranked.windows(2) {
            assert!(w[0].rho >= w[1].rho - 1e-9);
        }
    }
}

#[test]
fn family_top_matches_extremal_construction() {
    let r = family_search(&ForbiddenPattern::Theta(5), 20, &opts()).unwrap();
    assert_eq!(
        r.top().unwrap().partition,
        Some(h_partition(20, 1, 1).unwrap())
    );
    assert_eq!(r.matches_theorem_extremal, Some(true));

    let r = family_search(&ForbiddenPattern::Cll(3), 15, &opts()).unwrap();
    assert_eq!(r.passed, 1);
    assert_eq!(
        r.top().unwrap().partition,
        Some(PathPartition::new(vec![1; 13]).unwrap())
    );

    for (pat, n) in [
        (ForbiddenPattern::Cll(4), 26),
        (ForbiddenPattern::Cll(6), 30),
        (ForbiddenPattern::Theta(9), 28),
    ] {
        let r = family_search(&pat, n, &opts()).unwrap();
        assert_eq!(r.matches_theorem_extremal, Some(true), "{pat} n={n}");
    }
}

#[test]
fn family_rejects_unsupported_patterns() {
    assert!(family_search(&ForbiddenPattern::Theta(4), 10, &opts()).is_err());
    assert!(family_search(&ForbiddenPattern::Cll(2), 10, &opts()).is_err());
}

#[test]
fn searches_are_independent_of_worker_count() {
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            let f = family_search(&ForbiddenPattern::Cll(5), 24, &opts())
                .unwrap()
                .without_timing();
            let e = exhaustive_search(
                6,
                &ForbiddenPattern::Theta(4),
                CandidateSource::Internal,
                &opts(),
            )
            .unwrap()
            .without_timing();
            (f, e)
        })
    };
    let one = run(1);
    assert_eq!(one, run(3));
    assert_eq!(one, run(8));
}

#[test]
fn exhaustive_candidates_reverify() {
    let pat = ForbiddenPattern::Cll(3);
    let r = exhaustive_search(6, &pat, CandidateSource::Internal, &opts()).unwrap();
    assert_eq!(r.ranked.len(), r.passed);
    for c in &r.ranked {
        let g = parse_graph6(c.graph6.as_bytes()).unwrap();
        assert!(g.is_connected().unwrap() && is_planar(&g) && is_free(&g, &pat).unwrap());
        assert!((common::dense_rho(&g) - c.rho).abs() <= 1e-9);
    }
}

#[test]
fn exhaustive_prism_beats_bipartite_for_four_cycles_with_chord() {
    let r = exhaustive_search(
        6,
        &ForbiddenPattern::Theta(4),
        CandidateSource::Internal,
        &opts(),
    )
    .unwrap();
    let top = parse_graph6(r.top().unwrap().graph6.as_bytes()).unwrap();
    let mut prism = cycle(3).unwrap().disjoint_union(&cycle(3).unwrap());
    for i in 0..3 {
        prism.add_edge(i, i + 3).unwrap();
    }
    assert!(is_isomorphic(&top, &prism));
    assert_eq!(r.matches_theorem_extremal, Some(false));
    let second = parse_graph6(r.ranked[1].graph6.as_bytes()).unwrap();
    assert!(is_isomorphic(&second, &k2_bipartite(6).unwrap()));
}

#[test]
fn stream_mode_matches_internal() {
    let text: String = connected_graph6(6)
        .unwrap()
        .iter()
        .map(|s| format!("{s}\n"))
        .collect();
    let mut cur = Cursor::new(text.into_bytes());
    let s = exhaustive_search(
        6,
        &ForbiddenPattern::Cll(3),
        CandidateSource::Stream(&mut cur),
        &opts(),
    )
    .unwrap();
    let i = exhaustive_search(
        6,
        &ForbiddenPattern::Cll(3),
        CandidateSource::Internal,
        &opts(),
    )
    .unwrap();
    assert_eq!(s.passed, i.passed);
    assert_eq!(s.ranked, i.ranked);
}

#[test]
fn stream_reports_bad_lines() {
    let mut cur = Cursor::new(b"E?~w\n:Fa@x^\nDK{\nE`]w\n".to_vec());
    let r = exhaustive_search(
        6,
        &ForbiddenPattern::Cll(3),
        CandidateSource::Stream(&mut cur),
        &opts(),
    )
    .unwrap();
    assert_eq!(
        r.skipped.iter().map(|s| s.line).collect::<Vec<_>>(),
        vec![2, 3]
    );
    let mut cur = Cursor::new(b"E?~w\nDK{\n".to_vec());
    let strict = SearchOptions {
        strict_stream: true,
        ..opts()
    };
    assert!(exhaustive_search(
        6,
        &ForbiddenPattern::Cll(3),
        CandidateSource::Stream(&mut cur),
        &strict
    )
    .is_err());
}

#[test]
fn internal_enumeration_limited() {
    assert!(exhaustive_search(
        9,
        &ForbiddenPattern::Cll(3),
        CandidateSource::Internal,
        &opts()
    )
    .is_err());
}

#[test]
fn ascent_from_near_extremal_partition() {
    let base = PathPartition::new([vec![2], vec![1; 26]].concat()).unwrap();
    let r = verify_transformation_ascent(&base, &ForbiddenPattern::Cll(4), 30, 1e-9).unwrap();
    let m = r.moves.iter().find(|m| (m.s1, m.s2) == (1, 1)).unwrap();
    assert!(m.increased);
    assert_eq!(m.ordering, RhoOrdering::Greater);
    assert!(!r.is_local_max);

    let ext = h_partition(30, 2, 2).unwrap();
    let r = verify_transformation_ascent(&ext, &ForbiddenPattern::Cll(4), 30, 1e-9).unwrap();
    assert!(r.is_local_max && r.is_theorem_extremal);
}

#[test]
fn ascent_moves_keep_freeness() {
    let base = PathPartition::new(vec![3, 3, 2, 1, 1, 1, 1]).unwrap();
    let pat = ForbiddenPattern::Cll(5);
    let r = verify_transformation_ascent(&base, &pat, 14, 1e-9).unwrap();
    for m in &r.moves {
        assert!(join_is_free(&m.result, &pat).unwrap());
        assert_eq!(m.result.total(), 12);
    }
    assert!(verify_transformation_ascent(&base, &pat, 15, 1e-9).is_err());
}
