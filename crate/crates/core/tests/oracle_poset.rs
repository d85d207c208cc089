//! Brute-force oracle checks for the poset layer: Dilworth covers, the
//! trivial/series-parallel characterizations, and the copy search.

mod common;

use common::{all_posets, max_antichain, naive_copy_exists, random_coloring, random_poset};
use poset_ramsey::catalog::parse_and_build;
use poset_ramsey::embed::{find_copy, CopyMode, Host};
use poset_ramsey::lattice::layered_coloring;
use poset_ramsey::poset::{Classification, Poset};
use poset_ramsey::Color;

fn plain(src: &str) -> Poset {
    parse_and_build(src).unwrap().expect_plain()
}

fn check_dilworth(p: &Poset) {
    let width = p.width();
    assert_eq!(width, max_antichain(p), "width vs brute force on {p:?}");
    let cover = p.chain_cover();
    assert_eq!(cover.len(), width, "cover size vs width on {p:?}");
    let mut seen = 0u16;
    for chain in &cover {
        for w in chain.windows(2) {
            assert!(p.lt(w[0], w[1]));
        }
        for &v in chain {
            assert_eq!(seen >> v & 1, 0, "chains must partition");
            seen |= 1 << v;
        }
    }
    assert_eq!(seen, ((1u32 << p.len()) - 1) as u16);
}

#[test]
fn dilworth_exhaustive_to_five() {
    for n in 1..=5 {
        let posets = all_posets(n);
        for p in &posets {
            check_dilworth(p);
        }
    }
}

#[test]
fn dilworth_catalog_and_random_to_eight() {
    for src in ["CC(4,4,1)", "Q(3)", "D(5)", "SE(4)", "S(2,5,1)", "SD(3,3)", "CC(2,2,2,2)"] {
        check_dilworth(&plain(src));
    }
    for seed in 0..300u64 {
        for n in 6..=8 {
            check_dilworth(&random_poset(seed * 31 + n as u64, n));
        }
    }
}

#[test]
fn classify_matches_naive_search_small() {
    let lam = plain("LAM");
    let vee = plain("VEE");
    let mut checked = 0usize;
    for n in 1..=5 {
        for p in all_posets(n) {
            let has_lam = n >= 3
                && naive_copy_exists(&lam, None, CopyMode::Induced, &Host::Poset(&p), None);
            let has_vee = n >= 3
                && naive_copy_exists(&vee, None, CopyMode::Induced, &Host::Poset(&p), None);
            match p.classify() {
                Classification::Trivial(lens) => {
                    assert!(!has_lam && !has_vee, "{p:?} misclassified as trivial");
                    assert_eq!(lens.iter().sum::<usize>(), n);
                    let mut sorted = lens.clone();
                    sorted.sort_unstable_by(|a, b| b.cmp(a));
                    assert_eq!(lens, sorted, "descending chain lengths");
                }
                Classification::Nontrivial(_) => {
                    assert!(has_lam || has_vee, "{p:?} misclassified as nontrivial");
                }
            }
            checked += 1;
        }
    }
    assert!(checked > 4000, "enumeration should cover all small posets");
}

#[test]
fn classify_random_six_and_seven() {
    let lam = plain("LAM");
    let vee = plain("VEE");
    for seed in 0..200u64 {
        for n in 6..=7 {
            let p = random_poset(seed * 977 + n as u64, n);
            let has = naive_copy_exists(&lam, None, CopyMode::Induced, &Host::Poset(&p), None)
                || naive_copy_exists(&vee, None, CopyMode::Induced, &Host::Poset(&p), None);
            assert_eq!(
                matches!(p.classify(), Classification::Nontrivial(_)),
                has,
                "classify mismatch on {p:?}"
            );
        }
    }
}

#[test]
fn series_parallel_iff_n_free() {
    let npat = plain("NPOSET");
    for n in 1..=5 {
        for p in all_posets(n) {
            let n_free =
                !naive_copy_exists(&npat, None, CopyMode::Induced, &Host::Poset(&p), None);
            assert_eq!(p.is_series_parallel(), n_free, "{p:?}");
        }
    }
    for seed in 0..200u64 {
        for n in 6..=7 {
            let p = random_poset(seed * 1231 + n as u64, n);
            let n_free =
                !naive_copy_exists(&npat, None, CopyMode::Induced, &Host::Poset(&p), None);
            assert_eq!(p.is_series_parallel(), n_free, "{p:?}");
        }
    }
}

#[test]
fn find_copy_agrees_with_naive_oracle() {
    let patterns = ["C(2)", "C(3)", "A(3)", "VEE", "LAM", "NPOSET", "Q(2)", "CC(2,1)", "HOOK"];
    let mut hosts = vec![
        layered_coloring(3, &[0, 2]).unwrap(),
        layered_coloring(4, &[1, 2]).unwrap(),
        layered_coloring(3, &[1, 3]).unwrap(),
    ];
    for seed in 0..6u64 {
        hosts.push(random_coloring(seed, 3));
        hosts.push(random_coloring(seed + 100, 4));
    }
    for pat in patterns {
        let p = plain(pat);
        for host_c in &hosts {
            for mode in [CopyMode::Induced, CopyMode::Weak] {
                for filter in [None, Some(Color::Blue), Some(Color::Red)] {
                    let host = Host::ColoredLattice(host_c);
                    let fast = find_copy(&p, None, mode, &host, filter).unwrap();
                    let slow = naive_copy_exists(&p, None, mode, &host, filter);
                    assert_eq!(
                        fast.is_some(),
                        slow,
                        "{pat} {mode:?} {filter:?} dim={}",
                        host_c.dim()
                    );
                }
            }
        }
    }
    // Poset hosts up to 8 vertices.
    for pat in ["C(2)", "VEE", "NPOSET", "A(3)"] {
        let p = plain(pat);
        for seed in 0..40u64 {
            let host_p = random_poset(seed * 7919, 8);
            let host = Host::Poset(&host_p);
            for mode in [CopyMode::Induced, CopyMode::Weak] {
                let fast = find_copy(&p, None, mode, &host, None).unwrap();
                let slow = naive_copy_exists(&p, None, mode, &host, None);
                assert_eq!(fast.is_some(), slow, "{pat} {mode:?} seed={seed}");
            }
        }
    }
}

#[test]
fn colored_copies_agree_with_naive_oracle() {
    let patterns = ["ALT(\"rbr\",3)", "colored(Q(2),\"brbb\")", "colored(VEE,\"rbb\")"];
    for pat in patterns {
        let cp = parse_and_build(pat).unwrap().expect_colored();
        for seed in 0..8u64 {
            let host_c = random_coloring(seed * 13 + 5, 3);
            let host = Host::ColoredLattice(&host_c);
            let fast =
                find_copy(&cp.poset, Some(&cp.colors), CopyMode::Colored, &host, None).unwrap();
            let slow =
                naive_copy_exists(&cp.poset, Some(&cp.colors), CopyMode::Colored, &host, None);
            assert_eq!(fast.is_some(), slow, "{pat} seed={seed}");
        }
    }
}

#[test]
fn compose_laws_on_random_pairs() {
    for seed in 0..120u64 {
        let p1 = random_poset(seed * 3 + 1, 1 + (seed % 4) as usize + 1);
        let p2 = random_poset(seed * 5 + 2, 1 + (seed % 3) as usize + 1);
        let par = p1.parallel(&p2);
        let ser = p1.series(&p2);
        assert_eq!(par.len(), p1.len() + p2.len());
        assert_eq!(ser.len(), p1.len() + p2.len());
        assert_eq!(par.height(), p1.height().max(p2.height()));
        assert_eq!(ser.height(), p1.height() + p2.height());
        assert_eq!(par.width(), p1.width() + p2.width());
        assert!(par.validate() && ser.validate());
        if let Ok(glued) = p1.glue(&p2) {
            assert_eq!(glued.len(), p1.len() + p2.len() - 1);
            assert!(glued.validate());
        }
    }
}

/// Direct triple-loop oracle for an induced Λ₂ or V₂ (independent of the
/// library's witness search).
fn has_lam_or_vee(p: &Poset) -> bool {
    let n = p.len();
    for a in 0..n {
        for b in 0..n {
            for c in (b + 1)..n {
                if a == b || a == c || p.comparable(b, c) {
                    continue;
                }
                if (p.lt(b, a) && p.lt(c, a)) || (p.lt(a, b) && p.lt(a, c)) {
                    return true;
                }
            }
        }
    }
    false
}

/// Direct quadruple-loop oracle for an induced N-shaped subposet.
fn has_induced_n(p: &Poset) -> bool {
    let n = p.len();
    // w < y, x < y, x < z, with w∦x, w∦z, y∦z.
    for w in 0..n {
        for x in 0..n {
            if x == w || p.comparable(w, x) {
                continue;
            }
            for y in 0..n {
                if y == w || y == x || !p.lt(w, y) || !p.lt(x, y) {
                    continue;
                }
                for z in 0..n {
                    if z == w || z == x || z == y {
                        continue;
                    }
                    if p.lt(x, z) && !p.comparable(w, z) && !p.comparable(y, z) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

#[test]
fn exhaustive_six_vertex_invariants() {
    // One pass over all 130023 labeled posets on 6 vertices: Dilworth cover
    // size vs brute-force width, the trivial characterization, and the
    // series-parallel/N-free equivalence.
    let posets = all_posets(6);
    assert_eq!(posets.len(), 130_023);
    for p in &posets {
        let width = p.width();
        assert_eq!(width, max_antichain(p));
        assert_eq!(p.chain_cover().len(), width);
        assert_eq!(
            matches!(p.classify(), Classification::Nontrivial(_)),
            has_lam_or_vee(p)
        );
        assert_eq!(p.is_series_parallel(), !has_induced_n(p));
    }
}

#[test]
fn sampled_seven_vertex_invariants() {
    for seed in 0..400u64 {
        let p = random_poset(seed * 6151 + 7, 7);
        assert_eq!(
            matches!(p.classify(), Classification::Nontrivial(_)),
            has_lam_or_vee(&p)
        );
        assert_eq!(p.is_series_parallel(), !has_induced_n(&p));
        assert_eq!(p.width(), max_antichain(&p));
    }
}
