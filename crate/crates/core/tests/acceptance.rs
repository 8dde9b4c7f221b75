//! Acceptance gate: one line per criterion.
//!
//! A criterion prints `PASS` when its statement holds on every checked
//! instance. It prints `FAIL` when the statement is false as written; in that
//! case the run still asserts that every failure is the known deviation
//! (recorded in the detail text), so any other breakage aborts the binary.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use ambrel::capacity::{capacities_antitone, capacity_of};
use ambrel::cli;
use ambrel::crisp::{preimage, Partition};
use ambrel::fuzzy::{union_counterexample, FuzzyError};
use ambrel::generators::{
    projection_rep, random_capacity_with, random_fuzzy_rep, random_rep, trial_rng, GridWindow,
};
use ambrel::hyperencoding::{encode, encode_via_sup, family_sup};
use ambrel::json::{parse_document, Document};
use ambrel::oracle;
use ambrel::{
    CrispAmbRep, FiniteLattice, FiniteSpace, LCapacity, LFuzzyAmbRep, SetFamily, Subset, TNorm,
    TripleSet,
};
use rand::Rng;

enum Status {
    Pass(String),
    Fail(String),
}

fn density(i: usize) -> f64 {
    [0.1, 0.2, 0.35, 0.5][i % 4]
}

fn space(prefix: &str, n: usize) -> FiniteSpace {
    FiniteSpace::numbered(prefix, n)
}

/// Sizes `(i mod 3) + 1` and `(i / 3 mod 3) + 1`.
fn small_pair(i: usize) -> (FiniteSpace, FiniteSpace) {
    (space("x", i % 3 + 1), space("y", i / 3 % 3 + 1))
}

fn lattices() -> Vec<(&'static str, FiniteLattice)> {
    vec![
        ("chain(3)", FiniteLattice::chain(3)),
        ("Boolean square", FiniteLattice::boolean_square()),
    ]
}

/// `(lattice name, t-norm name, lattice, t-norm)` for meet on both lattices
/// and Łukasiewicz on chain(3).
fn tnorm_settings() -> Vec<(&'static str, &'static str, FiniteLattice, TNorm)> {
    let chain = FiniteLattice::chain(3);
    let luk = TNorm::lukasiewicz(&chain).expect("chains carry Łukasiewicz");
    assert!(!luk.is_meet_of(&chain));
    lattices()
        .into_iter()
        .map(|(n, l)| (n, "meet", l.clone(), TNorm::meet(&l)))
        .chain([("chain(3)", "Łukasiewicz", chain, luk)])
        .collect()
}

/// What double inversion is expected to produce: `R` with the full-source
/// row replaced by `{Y}`.
fn crisp_double_expected(r: &CrispAmbRep) -> Vec<SetFamily> {
    let (x, y) = (r.source(), r.target());
    x.subsets()
        .map(|a| {
            if a == x.full() {
                SetFamily::from_subsets([y.full()])
            } else {
                r.admissible(a)
            }
        })
        .collect()
}

fn crisp_rows(r: &CrispAmbRep) -> Vec<SetFamily> {
    r.source().subsets().map(|a| r.admissible(a)).collect()
}

fn full_row_trivial(r: &CrispAmbRep) -> bool {
    r.admissible(r.source().full()) == SetFamily::from_subsets([r.target().full()])
}

fn fuzzy_full_row_trivial(r: &LFuzzyAmbRep) -> bool {
    let (x, y, l) = (r.source(), r.target(), r.lattice());
    y.subsets().all(|b| b == y.full() || r.grade(x.full(), b) == l.bottom())
}

fn fuzzy_double_matches_expected(r: &LFuzzyAmbRep) -> bool {
    let (x, y, l) = (r.source(), r.target(), r.lattice());
    let twice = r.sms().sms();
    r.cells().all(|(a, b)| {
        let expected = if a != x.full() {
            r.grade(a, b)
        } else if b == y.full() {
            l.top()
        } else {
            l.bottom()
        };
        twice.grade(a, b) == expected
    })
}

fn criterion_1() -> Status {
    let (x, y) = (space("x", 2), space("y", 2));
    let all = CrispAmbRep::enumerate_all(&x, &y);
    assert_eq!(all.len(), 25);
    let mut exhaustive_ok = 0;
    for r in &all {
        let twice = r.sms().sms();
        assert_eq!(crisp_rows(&twice), crisp_double_expected(r));
        let holds = twice == *r;
        assert_eq!(holds, full_row_trivial(r));
        exhaustive_ok += holds as usize;
    }
    let (x3, y3) = (space("x", 3), space("y", 3));
    let mut random_ok = 0;
    let mut pinv_ok = 0;
    for i in 0..1000 {
        let r = random_rep(&x3, &y3, i as u64, density(i));
        let twice = r.sms().sms();
        assert_eq!(crisp_rows(&twice), crisp_double_expected(&r));
        let holds = twice == r;
        assert_eq!(holds, full_row_trivial(&r));
        random_ok += holds as usize;
        pinv_ok += (twice.sms().sms() == twice) as usize;
    }
    assert_eq!(pinv_ok, 1000);
    let detail = format!(
        "sms∘sms = id on {exhaustive_ok}/25 exhaustive 2×2 reps and {random_ok}/1000 random 3×3 reps; \
         every failure is a rep with XR ≠ {{Y}}, where sms∘sms resets XR to {{Y}} and keeps all other rows; \
         on the 1000 projected reps sms∘sms(R) the identity holds 1000/1000"
    );
    if exhaustive_ok == 25 && random_ok == 1000 {
        Status::Pass(detail)
    } else {
        Status::Fail(detail)
    }
}

fn criterion_2() -> Status {
    let mut parts = Vec::new();
    let mut all_hold = true;
    for (name, l) in lattices() {
        let mut ok = 0;
        for i in 0..500 {
            let (x, y) = small_pair(i);
            let r = random_fuzzy_rep(&x, &y, &l, i as u64, density(i));
            assert!(fuzzy_double_matches_expected(&r));
            let twice = r.sms().sms();
            let holds = twice == r;
            assert_eq!(holds, fuzzy_full_row_trivial(&r));
            assert_eq!(twice.sms().sms(), twice);
            ok += holds as usize;
        }
        all_hold &= ok == 500;
        parts.push(format!("{name}: {ok}/500"));
    }
    let detail = format!(
        "sms∘sms = id on {}; every failure has v(X, B) ≠ 0 for some B ≠ Y, and sms∘sms resets exactly that row; \
         the projected reps sms∘sms(R) satisfy the identity in all cases",
        parts.join(", ")
    );
    if all_hold {
        Status::Pass(detail)
    } else {
        Status::Fail(detail)
    }
}

fn criterion_3() -> Status {
    let (x, y, z) = (space("x", 3), space("y", 3), space("z", 3));
    let mut crisp_contra = 0;
    let mut crisp_contra_pinv = 0;
    for i in 0..500 {
        let seed = 3 * i as u64;
        let r = random_rep(&x, &y, seed, density(i));
        let s = random_rep(&y, &z, seed + 1, density(i + 1));
        let t = random_rep(&z, &x, seed + 2, density(i + 2));
        let rs = r.compose(&s).unwrap();
        assert_eq!(rs.compose(&t).unwrap(), r.compose(&s.compose(&t).unwrap()).unwrap());
        assert_eq!(CrispAmbRep::identity(&x).compose(&r).unwrap(), r);
        assert_eq!(r.compose(&CrispAmbRep::identity(&y)).unwrap(), r);
        let rhs = s.sms().compose(&r.sms()).unwrap();
        if rs.sms() == rhs {
            crisp_contra += 1;
        } else {
            assert!(!(r.is_pseudo_invertible() && s.is_pseudo_invertible()));
            assert!(rhs.is_subrelation_of(&rs.sms()));
        }
        let (rp, sp) = (r.sms().sms(), s.sms().sms());
        let lhs = rp.compose(&sp).unwrap().sms();
        crisp_contra_pinv += (lhs == sp.sms().compose(&rp.sms()).unwrap()) as usize;
    }
    assert_eq!(crisp_contra_pinv, 500);
    let mut fuzzy_parts = Vec::new();
    let mut fuzzy_contra_all = true;
    for (lname, tname, l, t) in tnorm_settings() {
        let mut contra = 0;
        for i in 0..500 {
            let seed = 3 * i as u64;
            let (xs, ys) = small_pair(i);
            let zs = space("z", i / 9 % 3 + 1);
            let r = random_fuzzy_rep(&xs, &ys, &l, seed, density(i));
            let s = random_fuzzy_rep(&ys, &zs, &l, seed + 1, density(i + 1));
            let u = random_fuzzy_rep(&zs, &xs, &l, seed + 2, density(i + 2));
            let rs = r.compose(&s, &t).unwrap();
            assert_eq!(rs.compose(&u, &t).unwrap(), r.compose(&s.compose(&u, &t).unwrap(), &t).unwrap());
            assert_eq!(LFuzzyAmbRep::identity(&xs, &l).compose(&r, &t).unwrap(), r);
            assert_eq!(r.compose(&LFuzzyAmbRep::identity(&ys, &l), &t).unwrap(), r);
            let rhs = s.sms().compose(&r.sms(), &t).unwrap();
            if rs.sms() == rhs {
                contra += 1;
            } else {
                assert!(!(r.is_pseudo_invertible() && s.is_pseudo_invertible()));
                assert!(rhs.is_below(&rs.sms()));
            }
            let (rp, sp) = (r.sms().sms(), s.sms().sms());
            assert_eq!(
                rp.compose(&sp, &t).unwrap().sms(),
                sp.sms().compose(&rp.sms(), &t).unwrap()
            );
        }
        fuzzy_contra_all &= contra == 500;
        fuzzy_parts.push(format!("{lname}/{tname} {contra}/500"));
    }
    let detail = format!(
        "associativity and identity laws hold on 500/500 crisp triples and on 500/500 triples for each of \
         ∗ = meet on chain(3), meet on the Boolean square, Łukasiewicz on chain(3); \
         contravariance holds on {crisp_contra}/500 raw crisp pairs (3×3×3) and on {} raw fuzzy pairs; \
         on pseudo-invertible pairs it holds 500/500 in every setting; raw failures all involve a rep with \
         nontrivial full-source row, and sms(S)⊚sms(R) ⊆ sms(R⊚S) still holds there",
        fuzzy_parts.join(", ")
    );
    if crisp_contra == 500 && fuzzy_contra_all {
        Status::Pass(detail)
    } else {
        Status::Fail(detail)
    }
}

fn criterion_4() -> Status {
    let (x, y) = (space("x", 3), space("y", 3));
    for i in 0..500 {
        let r = random_rep(&x, &y, 2 * i as u64, density(i));
        let s = random_rep(&x, &y, 2 * i as u64 + 1, density(i + 2));
        assert_eq!(r.join(&s).unwrap().sms(), r.sms().join(&s.sms()).unwrap());
        assert_eq!(r.meet(&s).unwrap().sms(), r.sms().meet(&s.sms()).unwrap());
    }
    for (_, l) in lattices() {
        for i in 0..500 {
            let (xs, ys) = small_pair(i);
            let r = random_fuzzy_rep(&xs, &ys, &l, 2 * i as u64, density(i));
            let s = random_fuzzy_rep(&xs, &ys, &l, 2 * i as u64 + 1, density(i + 2));
            assert_eq!(r.join(&s).unwrap().sms(), r.sms().join(&s.sms()).unwrap());
            assert_eq!(r.meet(&s).unwrap().sms(), r.sms().meet(&s.sms()).unwrap());
        }
    }
    Status::Pass(
        "(R∨S)^⊥ = R^⊥∨S^⊥ and (R∧S)^⊥ = R^⊥∧S^⊥ on 500/500 crisp 3×3 pairs and 500/500 fuzzy pairs \
         on each of chain(3) and the Boolean square"
            .into(),
    )
}

/// Every bounded lattice on `n ≤ 6` labelled elements with `0` least and
/// `n − 1` greatest that the library accepts.
fn small_lattices(max: usize) -> Vec<FiniteLattice> {
    let mut out = Vec::new();
    for n in 1..=max {
        let mid: Vec<usize> = (1..n.saturating_sub(1)).collect();
        let pairs: Vec<(usize, usize)> = mid
            .iter()
            .flat_map(|&i| mid.iter().map(move |&j| (i, j)))
            .filter(|(i, j)| i != j)
            .collect();
        for bits in 0u32..1 << pairs.len() {
            let mut leq = vec![vec![false; n]; n];
            for (i, row) in leq.iter_mut().enumerate() {
                row[i] = true;
                row[n - 1] = true;
            }
            leq[0].iter_mut().for_each(|c| *c = true);
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if bits >> k & 1 == 1 {
                    leq[i][j] = true;
                }
            }
            let antisymmetric = (0..n).all(|i| (0..n).all(|j| i == j || !(leq[i][j] && leq[j][i])));
            let transitive =
                (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(leq[i][j] && leq[j][k]) || leq[i][k])));
            if !antisymmetric || !transitive {
                continue;
            }
            let labels = (0..n).map(|i| format!("e{i}")).collect();
            if let Ok(l) = FiniteLattice::validate(labels, leq) {
                out.push(l);
            }
        }
    }
    out
}

fn criterion_5() -> Status {
    let mut sms_checked = 0;
    for (x, y) in [(2, 2), (1, 3), (3, 2), (2, 3)] {
        let (xs, ys) = (space("x", x), space("y", y));
        for r in CrispAmbRep::enumerate_all(&xs, &ys) {
            assert_eq!(r.sms(), oracle::sms_definitional(&r));
            sms_checked += 1;
        }
    }
    for i in 0..1000 {
        let (x, y) = small_pair(i);
        let r = random_rep(&x, &y, i as u64, density(i));
        assert_eq!(r.sms(), oracle::sms_definitional(&r));
        sms_checked += 1;
    }
    let mut compose_checked = 0;
    for (_, _, l, t) in tnorm_settings() {
        for i in 0..500 {
            let (x, y) = small_pair(i);
            let z = space("z", i / 9 % 3 + 1);
            let r = random_fuzzy_rep(&x, &y, &l, 2 * i as u64, density(i));
            let s = random_fuzzy_rep(&y, &z, &l, 2 * i as u64 + 1, density(i + 1));
            assert_eq!(r.compose(&s, &t).unwrap(), oracle::compose_subgraph(&r, &s, &t));
            compose_checked += 1;
        }
    }
    let mut families = 0;
    let mut exceptions = Vec::new();
    for n in 1..=3 {
        let x = space("x", n);
        for bits in 0..1u64 << x.mask_count() {
            if bits & 1 == 1 {
                continue;
            }
            let f = SetFamily(bits);
            families += 1;
            let fast = x.traversal(x.traversal(f).family()).family();
            assert_eq!(fast, oracle::double_traversal(&x, f));
            if fast != oracle::upward_closure(&x, f) {
                assert_eq!(f, SetFamily::EMPTY);
                assert_eq!(fast, SetFamily::from_subsets([x.full()]));
                exceptions.push(n);
            }
        }
    }
    let lattices = small_lattices(oracle::MAX_DIRECTED_LATTICE);
    let mut cells = 0;
    for l in &lattices {
        for a in l.elements() {
            for b in l.elements() {
                assert_eq!(oracle::way_below_definitional(l, a, b).unwrap(), l.way_below(a, b));
                assert_eq!(l.way_below(a, b), l.leq(a, b));
                cells += 1;
            }
        }
    }
    let detail = format!(
        "crisp sms = definitional sms on {sms_checked} reps; fuzzy compose = subgraph compose on {compose_checked} pairs; \
         way-below = ≤ on all {} accepted labelled lattices with |L| ≤ 6 ({cells} cells); \
         double traversal = upward closure on {} of {families} families over |X| ≤ 3, \
         the exceptions being the empty family for |X| = {:?}, whose double traversal is {{X}}",
        lattices.len(),
        families - exceptions.len(),
        exceptions
    );
    if exceptions.is_empty() {
        Status::Pass(detail)
    } else {
        Status::Fail(detail)
    }
}

fn criterion_6() -> Status {
    let mut maps = 0;
    for n in 1..=3 {
        for m in 1..=3 {
            let (x, y) = (space("x", n), space("y", m));
            for code in 0..m.pow(n as u32) {
                let f: Vec<usize> = (0..n).map(|i| code / m.pow(i as u32) % m).collect();
                let inv = CrispAmbRep::mapping_rep(&x, &y, &f).unwrap().sms();
                for b in y.subsets() {
                    let expected = SetFamily::from_subsets(
                        x.subsets().filter(|a| preimage(&f, b).is_subset_of(*a)),
                    );
                    assert_eq!(inv.admissible(b), expected);
                }
                maps += 1;
            }
        }
    }
    let mut partitions = 0;
    for n in 1..=4 {
        let x = space("x", n);
        for p in Partition::all(&x) {
            let r = CrispAmbRep::rough_rep(&p);
            let upper = |a: Subset| -> Subset {
                Subset::from_points((0..n).filter(|&q| p.class_of(q).points().any(|s| a.contains(s))))
            };
            let lower = |c: Subset| -> Subset {
                Subset::from_points((0..n).filter(|&q| p.class_of(q).is_subset_of(c)))
            };
            for a in x.subsets() {
                for c in x.subsets() {
                    let expected = !upper(a).intersection(lower(c)).is_empty();
                    assert_eq!(oracle::is_unavoidable(&r, a, c), expected);
                    assert_eq!(r.unavoidable(a).contains(c), expected);
                }
            }
            partitions += 1;
        }
    }
    for n in 1..=4 {
        let id = CrispAmbRep::identity(&space("x", n));
        assert_eq!(id.sms(), id);
    }
    let mut grids = 0;
    for (w, h) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        for ox in 0..w {
            for oy in 0..h {
                for iw in 1..=w - ox {
                    for ih in 1..=h - oy {
                        let g = GridWindow::new(w, h, (ox, oy), (iw, ih)).unwrap();
                        let (x, y) = (g.source(), g.target());
                        let inv = oracle::sms_definitional(&projection_rep(&g));
                        for bb in y.subsets() {
                            for ab in x.subsets() {
                                let shade = g.source_columns(x.complement(ab))
                                    & !g.target_columns(y.complement(bb))
                                    == 0;
                                assert_eq!(inv.contains(bb, ab), shade);
                            }
                        }
                        grids += 1;
                    }
                }
            }
        }
    }
    Status::Pass(format!(
        "B R_f^⊥ = {{A ⊇ f⁻¹(B)}} for all {maps} maps with |X|, |Y| ≤ 3; rough unavoidability ⇔ \
         upper(A) ∩ lower(C) ≠ ∅ on all {partitions} partitions with |X| ≤ 4; identity^⊥ = identity for |X| ≤ 4; \
         projection shade formula on all {grids} windows in grids up to 2×2"
    ))
}

fn criterion_7() -> Status {
    let (x, y, z) = (space("x", 3), space("y", 2), space("z", 3));
    for (_, _, l, t) in tnorm_settings() {
        for i in 0..300 {
            let r = random_rep(&x, &y, 2 * i as u64, density(i));
            let s = random_rep(&y, &z, 2 * i as u64 + 1, density(i + 1));
            let lhs = LFuzzyAmbRep::embed_crisp(&r.compose(&s).unwrap(), &l);
            let rhs = LFuzzyAmbRep::embed_crisp(&r, &l)
                .compose(&LFuzzyAmbRep::embed_crisp(&s, &l), &t)
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
    Status::Pass(
        "(R⊚S)_L = R_L ⊚∗ S_L on 300/300 pairs for meet on chain(3), meet on the Boolean square and \
         Łukasiewicz on chain(3)"
            .into(),
    )
}

fn run_search(law: &str, dir: &std::path::Path) -> (String, usize, Duration) {
    let out = dir.join(format!("{law}.json"));
    let start = Instant::now();
    let o = cli::run([
        "ambrel",
        "search",
        "--law",
        law,
        "--sizes",
        "2,2,2",
        "--exhaustive",
        "--out",
        out.to_str().unwrap(),
    ]);
    let elapsed = start.elapsed();
    let file: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let stdout: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(file, stdout);
    let verdict = file["verdict"].as_str().unwrap().to_string();
    match verdict.as_str() {
        "counterexample" => {
            assert_eq!(o.code, cli::EXIT_VIOLATION);
            let reps: Vec<CrispAmbRep> = file["witness"]["inputs"]
                .as_array()
                .unwrap()
                .iter()
                .map(|v| match parse_document(&v.to_string()).unwrap() {
                    Document::Crisp(r) => r,
                    _ => panic!("witness inputs are crisp"),
                })
                .collect();
            assert!(!law_holds(law, &reps), "witness does not refute the law");
        }
        "exhausted" => assert_eq!(o.code, cli::EXIT_OK),
        other => panic!("unexpected verdict {other}"),
    }
    (verdict, file["checked"].as_u64().unwrap() as usize, elapsed)
}

/// Independent restatement of the searched laws.
fn law_holds(law: &str, r: &[CrispAmbRep]) -> bool {
    let c = oracle::compose_definitional;
    match law {
        "modular" => {
            let (f, g, h) = (&r[0], &r[1], &r[2]);
            let lhs = c(f, g).meet(h).unwrap();
            let rhs = c(f, &g.meet(&c(&oracle::sms_definitional(f), h)).unwrap());
            lhs.is_subrelation_of(&rhs)
        }
        _ => {
            c(&r[0].meet(&r[1]).unwrap(), &r[2]) == c(&r[0], &r[2]).meet(&c(&r[1], &r[2])).unwrap()
                && c(&r[0], &r[2].meet(&r[3]).unwrap()) == c(&r[0], &r[2]).meet(&c(&r[0], &r[3])).unwrap()
        }
    }
}

fn criterion_8() -> Status {
    let l = FiniteLattice::boolean_square();
    let (x, y) = (space("x", 2), space("y", 2));
    let w = union_counterexample(&x, &y, &l).unwrap();
    assert!(w.verify());
    assert!(LFuzzyAmbRep::from_subgraph(x.clone(), y.clone(), l.clone(), &w.union()).is_err());
    for n in 1..=5 {
        assert!(matches!(
            union_counterexample(&x, &y, &FiniteLattice::chain(n)),
            Err(FuzzyError::LatticeIsChain)
        ));
    }
    let dir = tempfile::tempdir().unwrap();
    let (mv, mc, mt) = run_search("modular", dir.path());
    let (dv, dc, dt) = run_search("meet-distributivity", dir.path());
    let limit = Duration::from_secs(600);
    assert!(mt < limit && dt < limit);
    Status::Pass(format!(
        "union counterexample verified on the Boolean square, impossibility reported on chains 1..5; \
         modular search: {mv} after {mc} inputs in {:.1}s; meet-distributivity search: {dv} after {dc} inputs \
         in {:.1}s; witnesses re-checked with the definitional composition",
        mt.as_secs_f64(),
        dt.as_secs_f64()
    ))
}

fn random_triples<R: Rng>(rng: &mut R, x: &FiniteSpace, y: &FiniteSpace, l: &FiniteLattice) -> TripleSet {
    let fam_bits = (1u64 << x.mask_count()) - 2;
    let count = rng.gen_range(0..6);
    let elems: Vec<_> = l.elements().collect();
    let subsets: Vec<_> = y.subsets().collect();
    let triples: Vec<_> = (0..count)
        .map(|_| {
            let f = loop {
                let f = rng.gen::<u64>() & fam_bits & rng.gen::<u64>();
                if f != 0 {
                    break SetFamily(f);
                }
            };
            (f, subsets[rng.gen_range(0..subsets.len())], elems[rng.gen_range(0..elems.len())])
        })
        .collect();
    TripleSet::from_triples(x, y, l, triples).unwrap()
}

fn criterion_9() -> Status {
    let settings = [
        FiniteLattice::chain(2),
        FiniteLattice::chain(3),
        FiniteLattice::chain(4),
        FiniteLattice::boolean_square(),
    ];
    let mut rng = trial_rng(9, 0);
    let mut closures = 0;
    for i in 0..200 {
        let l = &settings[i % settings.len()];
        let (x, y) = small_pair(i / 4);
        let t = random_triples(&mut rng, &x, &y, l);
        for op in [TripleSet::subset_saturate, TripleSet::sup_saturate, TripleSet::plus] {
            let once = op(&t);
            assert!(t.is_subset_of(&once));
            assert_eq!(op(&once), once);
        }
        closures += 1;
    }
    let mut injective = 0;
    for (li, l) in settings.iter().enumerate() {
        let (x, y) = (space("x", 3), space("y", 2));
        let reps: Vec<LFuzzyAmbRep> = (0..50)
            .map(|i| random_fuzzy_rep(&x, &y, l, (li * 50 + i) as u64, density(i)))
            .collect();
        let codes: Vec<TripleSet> = reps.iter().map(|r| encode(r).unwrap()).collect();
        for (r, t) in reps.iter().zip(&codes) {
            assert_eq!(t.decode().unwrap(), *r);
            assert_eq!(encode_via_sup(r).unwrap(), *t);
            assert!(t.is_encoded());
        }
        for i in 0..reps.len() {
            for j in 0..reps.len() {
                assert_eq!(codes[i] == codes[j], reps[i] == reps[j]);
            }
        }
        injective += reps.len();
    }
    let mut sups = 0;
    for i in 0..200 {
        let l = &settings[i % settings.len()];
        let (x, y) = small_pair(i / 4);
        let members: Vec<LFuzzyAmbRep> = (0..i % 4)
            .map(|k| random_fuzzy_rep(&x, &y, l, (1000 + 4 * i + k) as u64, density(i + k)))
            .collect();
        let pointwise = LFuzzyAmbRep::sup_family(&x, &y, l, &members).unwrap();
        assert_eq!(family_sup(&x, &y, l, &members).unwrap(), pointwise);
        sups += 1;
    }
    Status::Pass(format!(
        "^⊂, ^sup and ^+ extensive and idempotent on {closures} sampled triple sets; encode injective and \
         decodable on {injective} sampled reps (equal to the sup-route encoding); encoded family sup = \
         pointwise sup on {sups} sampled families; |X| ≤ 3, |L| ≤ 4"
    ))
}

fn criterion_10() -> Status {
    let mut reps = 0;
    for (_, l) in lattices() {
        for i in 0..150 {
            let (x, y) = small_pair(i);
            let r = random_fuzzy_rep(&x, &y, &l, i as u64, density(i));
            for a in x.subsets() {
                let c = capacity_of(&r, a);
                LCapacity::validate(y.clone(), l.clone(), c.values().to_vec()).unwrap();
                for b in y.subsets() {
                    assert_eq!(c.value(b), r.grade(a, b));
                }
            }
            assert!(capacities_antitone(&r));
            for a in x.subsets() {
                for a2 in x.subsets().filter(|a2| a.is_subset_of(*a2)) {
                    assert!(capacity_of(&r, a).dominates(&capacity_of(&r, a2)));
                }
            }
            reps += 1;
        }
    }
    let mut caps = 0;
    let mut rng = trial_rng(10, 0);
    for (_, l) in lattices() {
        for i in 0..150 {
            let y = space("y", i % 3 + 1);
            let c = random_capacity_with(&mut rng, &y, &l, density(i));
            let back = LCapacity::from_subgraph(y.clone(), l.clone(), &c.subgraph()).unwrap();
            assert_eq!(back, c);
            caps += 1;
        }
    }
    Status::Pass(format!(
        "capacity_of validates and A ↦ c_{{AR}} is antitone on {reps} random fuzzy reps; \
         subgraph round trip exact on {caps} random capacities"
    ))
}

fn main() {
    type Criterion = (&'static str, fn() -> Status, Option<u64>);
    let criteria: [Criterion; 10] = [
        ("crisp involution", criterion_1, Some(60)),
        ("fuzzy involution", criterion_2, Some(300)),
        ("category laws", criterion_3, None),
        ("lattice laws", criterion_4, None),
        ("duality oracle", criterion_5, None),
        ("worked examples", criterion_6, None),
        ("embedding functoriality", criterion_7, None),
        ("counterexample machinery", criterion_8, Some(600)),
        ("hyperencoding", criterion_9, Some(300)),
        ("capacities", criterion_10, None),
    ];
    let mut seen = HashSet::new();
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        assert!(seen.insert(name));
        let start = Instant::now();
        let status = run();
        let secs = start.elapsed().as_secs_f64();
        if let Some(limit) = limit {
            assert!(secs < *limit as f64, "criterion {} exceeded {limit}s", i + 1);
        }
        let (tag, detail) = match status {
            Status::Pass(d) => ("PASS", d),
            Status::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name} ({secs:.1}s): {detail}", i + 1);
    }
    println!("acceptance: {} of 10 criteria pass as stated, {failed} fail with the deviation asserted", 10 - failed);
}
