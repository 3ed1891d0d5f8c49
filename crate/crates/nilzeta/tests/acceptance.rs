//! End-to-end acceptance checks, one per criterion, each printing a single
//! pass/fail line with its own wall time.  The target runs with its own main
//! instead of the default harness so the lines show up in a plain test run,
//! and criteria run one at a time so the timing budgets measure a single run
//! while the enumeration oracles keep their internal parallelism.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nilzeta::analysis::{
    abscissa, adjacent_equality_check, dominance_check, f_d, grid_argmax_check, growth_bounds_check,
    square_check, verify_funeq, verify_funeq_summand,
};
use nilzeta::laurent::{CycloFactor, FactoredRat, LaurentPoly};
use nilzeta::lieoracle::{
    count_ideals_direct, count_ideals_pairs, phi_type_law_check, stratified_counts,
};
use nilzeta::qseries::{hall_alpha, hall_alpha_brute, Partition};
use nilzeta::zetacore::{enumerate_pairs, local_zeta, ZetaParams};
use nilzeta::{BigInt, BigRational};

fn main() -> ExitCode {
    let criteria: &[(u32, &str, fn())] = &[
        (1, "criterion_01_heisenberg_closed_form", criterion_01_heisenberg_closed_form),
        (2, "criterion_02_direct_oracle_agreement", criterion_02_direct_oracle_agreement),
        (3, "criterion_03_pair_oracle_agreement", criterion_03_pair_oracle_agreement),
        (4, "criterion_04_functional_equation", criterion_04_functional_equation),
        (5, "criterion_05_abscissa_table", criterion_05_abscissa_table),
        (6, "criterion_06_growth_bounds", criterion_06_growth_bounds),
        (7, "criterion_07_pole_dominance", criterion_07_pole_dominance),
        (8, "criterion_08_grid_maximum_line_rule", criterion_08_grid_maximum_line_rule),
        (9, "criterion_09_square_scan", criterion_09_square_scan),
        (10, "criterion_10_subgroup_count_agreement", criterion_10_subgroup_count_agreement),
        (11, "criterion_11_image_type_law", criterion_11_image_type_law),
        (12, "criterion_12_stratified_consistency", criterion_12_stratified_consistency),
    ];
    let filters: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();

    // Failures surface as one FAIL line each, so the hook stays quiet.
    panic::set_hook(Box::new(|_| {}));
    let mut ran = 0u32;
    let mut failed = 0u32;
    for &(num, name, f) in criteria {
        if !selected(name, &filters) {
            continue;
        }
        ran += 1;
        if let Err(e) = panic::catch_unwind(AssertUnwindSafe(f)) {
            failed += 1;
            println!("criterion {num}: FAIL -- {}", panic_message(&*e));
        }
    }
    let _ = panic::take_hook();

    if failed == 0 {
        println!("acceptance: {ran} criteria run, all PASS");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {ran} criteria run, {failed} FAILED");
        ExitCode::FAILURE
    }
}

fn selected(name: &str, filters: &[String]) -> bool {
    let squash = |s: &str| -> String {
        s.chars()
            .filter(char::is_ascii_alphanumeric)
            .collect::<String>()
            .to_ascii_lowercase()
    };
    filters.is_empty() || filters.iter().any(|f| squash(name).contains(&squash(f)))
}

fn panic_message(e: &(dyn std::any::Any + Send)) -> &str {
    if let Some(s) = e.downcast_ref::<&str>() {
        s
    } else if let Some(s) = e.downcast_ref::<String>() {
        s
    } else {
        "panic without message"
    }
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn partitions_of(n: u32) -> Vec<Vec<u32>> {
    fn rec(left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(left)).rev() {
            cur.push(part);
            rec(left - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

fn criterion_01_heisenberg_closed_form() {
    let start = Instant::now();
    let params = ZetaParams::new(2).unwrap();
    let w = local_zeta(&params);
    let expected = FactoredRat::new(
        LaurentPoly::one(),
        vec![
            CycloFactor::new(0, 1, 1),
            CycloFactor::new(1, 1, 1),
            CycloFactor::new(2, 3, 1),
        ],
    );
    assert!(w.equivalent(&expected), "closed form mismatch at d = 2");
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(1),
        "criterion 1 over budget: {elapsed:?}"
    );
    println!(
        "criterion 1: PASS -- d = 2 equals 1/((1-T)(1-PT)(1-P^2T^3)) ({} ms)",
        elapsed.as_millis()
    );
}

fn criterion_02_direct_oracle_agreement() {
    let start = Instant::now();
    let params = ZetaParams::new(2).unwrap();
    let w = local_zeta(&params);
    for p in [2u64, 3] {
        let table = count_ideals_direct(2, p, 6).unwrap();
        let series = w.series_at(&BigInt::from(p), 6).unwrap();
        assert_eq!(
            table.counts(),
            &series[..],
            "direct enumeration disagrees with the series at p = {p}"
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(30),
        "criterion 2 over budget: {elapsed:?}"
    );
    println!(
        "criterion 2: PASS -- direct ideal counts match the d = 2 series at p = 2, 3 up to index 6 ({} ms)",
        elapsed.as_millis()
    );
}

fn criterion_03_pair_oracle_agreement() {
    let start = Instant::now();
    for (d, primes, n) in [(2u32, &[2u64, 3, 5][..], 10u32), (3, &[2, 3][..], 6)] {
        let params = ZetaParams::new(d).unwrap();
        let w = local_zeta(&params);
        for &p in primes {
            let table = count_ideals_pairs(d, p, n).unwrap();
            let series = w.series_at(&BigInt::from(p), n as usize).unwrap();
            assert_eq!(
                table.counts(),
                &series[..],
                "pair enumeration disagrees with the series at d = {d}, p = {p}"
            );
        }
    }
    let direct = count_ideals_direct(3, 2, 3).unwrap();
    let pairs = count_ideals_pairs(3, 2, 3).unwrap();
    assert_eq!(
        direct.counts(),
        pairs.counts(),
        "direct and pair oracles disagree at d = 3, p = 2"
    );
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(300),
        "criterion 3 over budget: {elapsed:?}"
    );
    println!(
        "criterion 3: PASS -- pair counts match the series for d = 2 (p = 2, 3, 5, N = 10) and d = 3 (p = 2, 3, N = 6), plus a direct cross-check ({:.1} s)",
        elapsed.as_secs_f64()
    );
}

fn criterion_04_functional_equation() {
    let mut slowest = Duration::ZERO;
    for d in 2u32..=5 {
        let start = Instant::now();
        let cert = verify_funeq(d).unwrap();
        assert!(cert.verdict, "functional equation fails at d = {d}");
        let h = i64::from(d + d * (d - 1) / 2);
        let expected_sign = if h % 2 == 0 { 1i64 } else { -1 };
        assert_eq!(i64::from(cert.sign), expected_sign, "sign at d = {d}");
        assert_eq!(cert.p_power, h * (h - 1) / 2, "P power at d = {d}");
        assert_eq!(cert.t_power, h + i64::from(d), "T power at d = {d}");
        let params = ZetaParams::new(d).unwrap();
        for pair in enumerate_pairs(&params) {
            assert!(
                verify_funeq_summand(&pair, &params),
                "summand symmetry fails at d = {d}, pair {}",
                pair.label()
            );
        }
        let elapsed = start.elapsed();
        assert!(
            elapsed < Duration::from_secs(60),
            "criterion 4 over budget at d = {d}: {elapsed:?}"
        );
        slowest = slowest.max(elapsed);
    }
    println!(
        "criterion 4: PASS -- functional equation with factors (-1)^h P^(h(h-1)/2) T^(h+d) and per-summand symmetry for d = 2..5 (slowest d: {} ms)",
        slowest.as_millis()
    );
}

fn criterion_05_abscissa_table() {
    let start = Instant::now();
    for (d, num, den) in [(2u32, 2i64, 1i64), (3, 3, 1), (4, 4, 1), (5, 51, 10), (6, 99, 13)] {
        let a = abscissa(d).unwrap();
        assert_eq!(a.alpha, rational(num, den), "abscissa value at d = {d}");
        assert!(a.unique, "maximizer not unique at d = {d}");
    }
    assert!(
        !abscissa(5).unwrap().alpha.is_integer(),
        "the d = 5 abscissa must not be an integer"
    );
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(1),
        "criterion 5 over budget: {elapsed:?}"
    );
    println!(
        "criterion 5: PASS -- abscissas 2, 3, 4, 51/10, 99/13 for d = 2..6, each with a unique maximizer, first non-integer at d = 5 ({} ms)",
        elapsed.as_millis()
    );
}

fn criterion_06_growth_bounds() {
    let start = Instant::now();
    for d in 2u32..=100 {
        assert!(
            growth_bounds_check(d).unwrap(),
            "abscissa escapes the sandwich bounds at d = {d}"
        );
    }
    println!(
        "criterion 6: PASS -- abscissa stays within [(d^3-d^2+2)/4d, max(d, (d-1)(d+1)/2)] for d = 2..100 ({} ms)",
        start.elapsed().as_millis()
    );
}

fn criterion_07_pole_dominance() {
    let start = Instant::now();
    for d in 2u32..=5 {
        let report = dominance_check(d).unwrap();
        assert!(
            report.matches_abscissa,
            "largest denominator ratio differs from the abscissa at d = {d}"
        );
        assert!(
            report.attained_in_empty_pair,
            "largest denominator ratio is not attained in the empty-pair block at d = {d}"
        );
        assert!(
            report.strictly_dominant,
            "a numerator ratio ties or beats the denominator maximum at d = {d}"
        );
        assert_eq!(report.max_den_ratio, abscissa(d).unwrap().alpha);
    }
    println!(
        "criterion 7: PASS -- dominant pole ratio equals the abscissa, sits in the empty-pair block, and strictly beats every numerator ratio for d = 2..5 ({} ms)",
        start.elapsed().as_millis()
    );
}

fn criterion_08_grid_maximum_line_rule() {
    let start = Instant::now();
    // The i = 0 rule genuinely fails at d = 3: the grid maximum is
    // f_3(1, 2) = 2, strictly above the line best 9/5 but still below the
    // abscissa 3, so nothing downstream changes.  The rule holds for every
    // larger d in range.
    assert!(
        !grid_argmax_check(3).unwrap(),
        "expected the d = 3 exception"
    );
    let one = BigRational::from_integer(BigInt::from(1));
    let two = BigRational::from_integer(BigInt::from(2));
    assert_eq!(f_d(&one, &two, 3).unwrap(), two, "d = 3 off-line maximum");
    let zero = BigRational::from_integer(BigInt::from(0));
    let line_best = (1..=2)
        .map(|j| f_d(&zero, &BigRational::from_integer(BigInt::from(j)), 3).unwrap())
        .max()
        .unwrap();
    assert_eq!(line_best, rational(9, 5), "d = 3 line best");
    assert!(
        two < abscissa(3).unwrap().alpha,
        "the d = 3 excess must stay below the abscissa"
    );
    for d in 4u32..=50 {
        assert!(
            grid_argmax_check(d).unwrap(),
            "grid maximum leaves the i = 0 line at d = {d}"
        );
    }
    println!(
        "criterion 8: PASS -- grid maximum sits on the i = 0 line for d = 4..50; d = 3 is a genuine exception (max 2 at (1, 2) vs line best 9/5, below the abscissa 3) ({} ms)",
        start.elapsed().as_millis()
    );
}

fn criterion_09_square_scan() {
    let start = Instant::now();
    let hits = square_check(1_000_000);
    assert!(
        hits.is_empty(),
        "2d^3 + 6d^2 - 3 is a perfect square at d = {hits:?}"
    );
    for d in 2u32..=1000 {
        assert!(
            adjacent_equality_check(d).unwrap(),
            "adjacent candidate pole ratios collide at d = {d}"
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(10),
        "criterion 9 over budget: {elapsed:?}"
    );
    println!(
        "criterion 9: PASS -- 2d^3 + 6d^2 - 3 is never an odd square for d <= 10^6, and adjacent ratios never collide for d <= 1000 ({} ms)",
        elapsed.as_millis()
    );
}

fn criterion_10_subgroup_count_agreement() {
    let start = Instant::now();
    let mut cases = 0u32;
    for n in 0u32..=6 {
        for parts in partitions_of(n) {
            let lambda = Partition::new(parts);
            for mu in lambda.subpartitions() {
                let poly = hall_alpha(&lambda, &mu).unwrap();
                for p in [2u32, 3] {
                    let direct = hall_alpha_brute(&lambda, &mu, p).unwrap();
                    assert_eq!(
                        poly.eval_p(&BigInt::from(p)).unwrap(),
                        BigInt::from(direct),
                        "subgroup count mismatch at lambda = {:?}, mu = {:?}, p = {p}",
                        lambda.parts(),
                        mu.parts()
                    );
                    cases += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(120),
        "criterion 10 over budget: {elapsed:?}"
    );
    println!(
        "criterion 10: PASS -- closed-form subgroup counts match enumeration in {cases} cases over |lambda| <= 6, p = 2, 3 ({} ms)",
        elapsed.as_millis()
    );
}

fn criterion_11_image_type_law() {
    let start = Instant::now();
    for (d, seed) in [(3u32, 0x0003_5eed_u64), (4, 0x0004_5eed)] {
        assert!(
            phi_type_law_check(d, 100, seed).unwrap(),
            "commutator image type law failed at d = {d}"
        );
    }
    println!(
        "criterion 11: PASS -- commutator image types match the predicted jump relocation in 100 random trials at d = 3 and d = 4 ({} ms)",
        start.elapsed().as_millis()
    );
}

fn criterion_12_stratified_consistency() {
    let start = Instant::now();
    let n = 5u32;
    for (d, p) in [(2u32, 2u64), (2, 3), (3, 2)] {
        let params = ZetaParams::new(d).unwrap();
        let strata = stratified_counts(d, p, n).unwrap();
        let pairs = count_ideals_pairs(d, p, n).unwrap();
        let period = params.hirsch as usize;
        let weight_exp = params.d * params.d_prime;
        for m in 0..=n as usize {
            let mut total = BigInt::from(0);
            let mut k = 0usize;
            while k * period <= m {
                let w = BigInt::from(p).pow(weight_exp * k as u32);
                for table in strata.values() {
                    total += w.clone() * &table.counts()[m - k * period];
                }
                k += 1;
            }
            assert_eq!(
                total,
                pairs.counts()[m],
                "stratified totals disagree at d = {d}, p = {p}, index {m}"
            );
        }
    }
    println!(
        "criterion 12: PASS -- stratum counts convolved with the homothety weight reproduce the pair totals for d <= 3, N = 5 ({} ms)",
        start.elapsed().as_millis()
    );
}
