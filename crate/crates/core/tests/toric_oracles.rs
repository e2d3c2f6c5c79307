use conic_core::toric::{binomial, hirzebruch_h0, BiClass, SplitBundleSpace};
use num_bigint::BigUint;
use num_traits::Zero;

/// Counts `x0^u0 x1^u1 y0^v0 y1^v1` with `v0 + v1 = a`, `u0 + u1 + e v1 = b`
/// by walking the whole exponent box.
fn enumerate_fe(e: i64, a: i64, b: i64) -> u64 {
    if a < 0 || b < 0 {
        return 0;
    }
    let mut count = 0;
    for v0 in 0..=a {
        for v1 in 0..=a {
            for u0 in 0..=b {
                for u1 in 0..=b {
                    if v0 + v1 == a && u0 + u1 + e * v1 == b {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// Counts Cox monomials of degree `(alpha, beta)` by walking a box of
/// exponents: each `x_i` up to `x_max`, each `y_j` up to `y_max`.
fn enumerate_split(space: SplitBundleSpace, c: BiClass, x_max: u32, y_max: u32) -> u64 {
    let n = space.n() as usize;
    let mut count = 0;
    let mut x = vec![0u32; n];
    loop {
        for v0 in 0..=y_max {
            for v1 in 0..=y_max {
                for v2 in 0..=y_max {
                    if space.grading_of_monomial(&x, [v0, v1, v2]) == c {
                        count += 1;
                    }
                }
            }
        }
        let mut k = 0;
        while k < n {
            x[k] += 1;
            if x[k] <= x_max {
                break;
            }
            x[k] = 0;
            k += 1;
        }
        if k == n {
            return count;
        }
    }
}

#[test]
fn hirzebruch_formula_matches_enumeration() {
    for e in 0..=6 {
        for a in 0..=8 {
            for b in 0..=12 {
                assert_eq!(hirzebruch_h0(e, a, b), enumerate_fe(e as i64, a, b), "e={e} a={a} b={b}");
            }
        }
    }
    assert_eq!(enumerate_fe(2, 2, 4), 9);
}

#[test]
fn split_count_matches_enumeration() {
    for (n, a) in [(2, [1, 0, 0]), (2, [2, 1, 0]), (3, [2, 1, 0]), (3, [1, 1, 1])] {
        let space = SplitBundleSpace::new(n, a).unwrap();
        for beta in 0..=2 {
            for alpha in -4..=3 {
                let c = BiClass::new(alpha, beta);
                let got = space.h0(c);
                // x-degree is alpha + sum a_j v_j <= alpha + a0 beta
                let x_max = (alpha + a[0] as i64 * beta).max(0) as u32;
                let count = enumerate_split(space, c, x_max, beta as u32);
                assert_eq!(got, BigUint::from(count), "n={n} a={a:?} c={c}");
            }
        }
    }
}

#[test]
fn split_family_coefficient_count() {
    // number of coefficient monomials of the (0, 2) class for (a, 2, 0)
    for n in 2..6u64 {
        for a in 2..6u64 {
            let space = SplitBundleSpace::new(n as u32, [a as u32, 2, 0]).unwrap();
            let k = n - 1;
            let expect = binomial(2 * a + k, k)
                + binomial(a + 2 + k, k)
                + binomial(a + k, k)
                + binomial(4 + k, k)
                + binomial(2 + k, k)
                + BigUint::from(1u32);
            assert_eq!(space.h0(BiClass::new(0, 2)), expect);
        }
    }
}

#[test]
fn non_effective_classes_have_no_sections() {
    for a in [[3, 2, 0], [4, 4, 1], [2, 0, 0]] {
        let space = SplitBundleSpace::new(3, a).unwrap();
        for alpha in -12..6 {
            for beta in -2..4 {
                let c = BiClass::new(alpha, beta);
                let cones = space.cone_tests(c);
                if !cones.effective {
                    assert!(space.h0(c).is_zero(), "{c} on {a:?}");
                } else {
                    assert!(!space.h0(c).is_zero(), "{c} on {a:?}");
                }
                assert!(!cones.nef || cones.effective);
            }
        }
    }
}

#[test]
fn split_count_monotone_in_alpha() {
    let space = SplitBundleSpace::new(4, [3, 1, 0]).unwrap();
    for beta in 0..4 {
        let mut prev = BigUint::zero();
        for alpha in -10..10 {
            let cur = space.h0(BiClass::new(alpha, beta));
            assert!(cur >= prev);
            prev = cur;
        }
    }
}

#[test]
fn nef_examples() {
    for a in [[3, 2, 0], [5, 5, 5], [1, 0, 0]] {
        let space = SplitBundleSpace::new(3, a).unwrap();
        let c = space.cone_tests(BiClass::new(0, 2));
        assert!(c.nef && c.effective);
        let y0 = space.cone_tests(BiClass::new(-(a[0] as i64), 1));
        assert!(y0.effective);
        assert_eq!(y0.nef, a[0] == a[2]);
        assert!(!space.cone_tests(BiClass::new(-(a[0] as i64) - 1, 1)).effective);
    }
}
