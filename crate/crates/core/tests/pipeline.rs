//! The criteria checkers against the polygon pipeline on concrete inputs.

use sextic_index::engstrom::{index_valuation, IndexValue};
use sextic_index::ore::{analyze_prime, splitting_type};
use sextic_index::quadrinomial::{
    all_verdicts, check_cor15, check_th12, check_th13, check_th14, irreducibility, QuadrinomialInput,
};
use sextic_index::zpoly::{IntPoly, Prime};

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

fn index_at(f: &IntPoly, p: u64) -> IndexValue {
    let la = analyze_prime(f, prime(p)).unwrap();
    let pairs = la.splitting().unwrap().pairs();
    index_valuation(&pairs, prime(p), la.squarefree_reduction()).unwrap()
}

fn q(a: i64, b: i64, c: i64, m: u32) -> QuadrinomialInput {
    QuadrinomialInput::new(a, b, c, m).unwrap()
}

#[test]
fn slope_examples_agree_with_pipeline() {
    let cases = [
        (q(7, 8, 128, 2), 2, vec![(1, 1), (1, 1), (1, 1), (1, 1), (2, 1)], 4),
        (q(15, 8, 128, 2), 2, vec![(1, 1), (1, 1), (1, 2), (2, 1)], 1),
        (q(7, 16, 64, 4), 2, vec![(1, 1), (1, 1), (1, 1), (3, 1)], 2),
        (q(8, 9, 243, 2), 3, vec![(1, 1), (1, 1), (1, 1), (1, 1), (1, 2)], 1),
        (q(10, 27, 243, 3), 3, vec![(1, 1), (1, 1), (2, 1), (2, 1)], 1),
        (q(8, 9, 27, 4), 3, vec![(1, 1), (1, 1), (1, 1), (3, 1)], 1),
    ];
    for (qi, p, split, v) in cases {
        let f = qi.to_poly();
        assert!(irreducibility(&f).is_irreducible(), "{f}");
        assert_eq!(splitting_type(&f, prime(p)).unwrap().pairs(), split, "{f}");
        assert_eq!(index_at(&f, p).known(), Some(v), "{f}");
        let verdict = if p == 2 { check_th13(&qi) } else { check_th14(&qi) }.unwrap();
        assert_eq!(verdict.claim(p), Some(v), "{f}");
    }
}

#[test]
fn divisibility_examples_agree_with_pipeline() {
    // the headline instances x⁶+8x²+8x+7 and x⁶+9x²+9x+8 are reducible;
    // these keep the congruences with d₂ ≠ 0
    for (qi, p, v) in [
        (q(8, 16, 23, 2), 2, 2),
        (q(9, 18, 26, 2), 3, 1),
        (q(72, 72, 215, 5), 2, 2),
    ] {
        let f = qi.to_poly();
        assert!(irreducibility(&f).is_irreducible(), "{f}");
        assert_eq!(index_at(&f, p).known(), Some(v));
        assert_eq!(check_th12(&qi).unwrap().claim(p), Some(v));
    }
    for s in ["x^6+8x^2+8x+7", "x^6+9x^2+9x+8"] {
        let f: IntPoly = s.parse().unwrap();
        assert!(!irreducibility(&f).is_irreducible(), "{s}");
    }
}

#[test]
fn coprime_slope_example() {
    let qi = q(9, 32, 256, 3);
    let f = qi.to_poly();
    assert_eq!(index_at(&f, 2).known(), Some(1));
    assert_eq!(check_cor15(&qi).unwrap().claimed, vec![(2, 1)]);
}

#[test]
fn every_applicable_claim_matches_on_a_grid() {
    // small exhaustive grid: whenever a checker applies to an irreducible
    // input, the pipeline agrees
    let mut hits = 0;
    for m in 2..=4u32 {
        for a in -5..=5 {
            for b in [8i64, -16, 32, 9, -27, 216] {
                for c in [64i64, -256, 243, 7776, 71] {
                    let qi = q(a, b, c, m);
                    let f = qi.to_poly();
                    if !irreducibility(&f).is_irreducible() {
                        continue;
                    }
                    for v in all_verdicts(&qi).into_iter().filter(|v| v.applies) {
                        for &(p, k) in &v.claimed {
                            hits += 1;
                            assert_eq!(index_at(&f, p).known(), Some(k), "{f}: {:?}", v);
                        }
                    }
                }
            }
        }
    }
    assert!(hits >= 40, "only {hits} claims exercised");
}
