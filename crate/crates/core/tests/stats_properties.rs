use metricide::stats::{
    icc_all, spearman, wilcoxon_signed_rank_with, williams_test, IccModel, WilcoxonMethod, ZeroMethod,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn brute_ranks(v: &[f64]) -> Vec<f64> {
    v.iter()
        .map(|&x| {
            let below = v.iter().filter(|&&y| y < x).count() as f64;
            let equal = v.iter().filter(|&&y| y == x).count() as f64;
            below + (equal + 1.0) / 2.0
        })
        .collect()
}

fn brute_pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    sxy / (sxx * syy).sqrt()
}

/// Values drawn from a small pool so ties are frequent.
fn tied_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let pool: Vec<f64> = (0..rng.gen_range(2..=n)).map(|_| rng.gen_range(-5.0..5.0)).collect();
    (0..n).map(|_| pool[rng.gen_range(0..pool.len())]).collect()
}

#[test]
fn spearman_is_pearson_of_ranks() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(3..40);
        let x = tied_vector(&mut rng, n);
        let y = tied_vector(&mut rng, n);
        let want = brute_pearson(&brute_ranks(&x), &brute_ranks(&y));
        match spearman(&x, &y) {
            Ok(r) => {
                assert!((r.rho - want).abs() < 1e-12, "x={x:?} y={y:?}: {} vs {want}", r.rho);
                checked += 1;
            }
            Err(_) => assert!(!want.is_finite(), "rejected a defined case: x={x:?} y={y:?}"),
        }
    }
    assert!(checked > 900);
}

#[test]
fn spearman_ignores_monotone_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let n = rng.gen_range(5..60);
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let y = tied_vector(&mut rng, n);
        let (a, b, c) = (
            rng.gen_range(0.1..3.0),
            rng.gen_range(0.1..3.0),
            rng.gen_range(-1.0..1.0),
        );
        let fx: Vec<f64> = x.iter().map(|v| a * v * v * v + b * v + c + (v / 2.0).exp()).collect();
        let r0 = spearman(&x, &y).unwrap().rho;
        let r1 = spearman(&fx, &y).unwrap().rho;
        assert!((r0 - r1).abs() < 1e-12);
    }
}

#[test]
fn williams_reference_case_and_antisymmetry() {
    let w = williams_test(0.5_f64, 0.3, 0.6, 100).unwrap();
    assert!((w.t - 2.530).abs() < 1e-3, "t = {}", w.t);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let (r12, r13, r23): (f64, f64, f64) = (
            rng.gen_range(-0.9..0.9),
            rng.gen_range(-0.9..0.9),
            rng.gen_range(-0.9..0.9),
        );
        let n = rng.gen_range(10..500);
        let (Ok(a), Ok(b)) = (williams_test(r12, r13, r23, n), williams_test(r13, r12, r23, n)) else {
            continue;
        };
        assert!((a.t + b.t).abs() < 1e-12 * a.t.abs().max(1.0));
        assert!((a.p_value - b.p_value).abs() < 1e-12);
    }
}

/// Shrout–Fleiss coefficients from explicit sums of squares.
fn icc_direct(m: &[[f64; 3]]) -> [f64; 3] {
    let n = m.len() as f64;
    let k = 3.0;
    let grand: f64 = m.iter().flatten().sum::<f64>() / (n * k);
    let mut bms = 0.0;
    for row in m {
        let rm = row.iter().sum::<f64>() / k;
        bms += k * (rm - grand).powi(2);
    }
    let mut jms = 0.0;
    for j in 0..3 {
        let cm = m.iter().map(|r| r[j]).sum::<f64>() / n;
        jms += n * (cm - grand).powi(2);
    }
    let mut wss = 0.0;
    for row in m {
        let rm = row.iter().sum::<f64>() / k;
        wss += row.iter().map(|v| (v - rm).powi(2)).sum::<f64>();
    }
    let ess = wss - jms;
    let bms = bms / (n - 1.0);
    let wms = wss / (n * (k - 1.0));
    let ems = ess / ((n - 1.0) * (k - 1.0));
    let jms = jms / (k - 1.0);
    [
        (bms - wms) / (bms + (k - 1.0) * wms),
        (bms - ems) / (bms + (k - 1.0) * ems + k * (jms - ems) / n),
        (bms - ems) / (bms + (jms - ems) / n),
    ]
}

#[test]
fn icc_matches_direct_sums_of_squares() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut done = 0;
    while done < 20 {
        let m: Vec<[f64; 3]> = (0..5)
            .map(|_| {
                let base = rng.gen_range(1..=6) as f64;
                [0; 3].map(|_| (base + rng.gen_range(-1..=1) as f64).clamp(1.0, 6.0))
            })
            .collect();
        let want = icc_direct(&m);
        if want.iter().any(|v| !v.is_finite()) {
            continue;
        }
        let got = icc_all::<f64, _>(&m).unwrap();
        for (g, w) in got.iter().zip(want) {
            assert!((g.icc - w).abs() < 1e-10, "{:?}: {} vs {w} on {m:?}", g.model, g.icc);
        }
        done += 1;
    }
}

#[test]
fn icc_of_agreeing_raters_is_one() {
    let m = [
        [1.0, 1.0, 1.0],
        [3.0, 3.0, 3.0],
        [6.0, 6.0, 6.0],
        [2.0, 2.0, 2.0],
        [5.0, 5.0, 5.0],
    ];
    for r in icc_all::<f64, _>(&m).unwrap() {
        assert!((r.icc - 1.0).abs() < 1e-12, "{}", r.model.name());
    }
    assert_eq!(IccModel::ALL.len(), 3);
}

#[test]
fn wilcoxon_exact_and_normal_agree_in_the_tail() {
    // 12 distinct differences; compare both methods wherever the exact p is small
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let zeros = vec![0.0; 12];
    let mut compared = 0;
    for _ in 0..2000 {
        let d: Vec<f64> = (1..=12)
            .map(|r| if rng.gen_bool(0.2) { -(r as f64) } else { r as f64 })
            .collect();
        let exact = wilcoxon_signed_rank_with(&d, &zeros, ZeroMethod::Wilcox, WilcoxonMethod::Exact).unwrap();
        let normal = wilcoxon_signed_rank_with(&d, &zeros, ZeroMethod::Wilcox, WilcoxonMethod::Normal).unwrap();
        assert_eq!(exact.w, normal.w);
        if (0.01..0.1).contains(&exact.p_value) {
            assert!(
                (exact.p_value - normal.p_value).abs() < 0.01,
                "w={}: {} vs {}",
                exact.w,
                exact.p_value,
                normal.p_value
            );
            compared += 1;
        }
    }
    assert!(compared > 50);
}
