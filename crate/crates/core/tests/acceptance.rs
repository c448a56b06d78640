//! Acceptance gate. Each criterion prints one PASS/FAIL line with its
//! runtime; the process fails if any criterion fails or overruns its budget.

use std::collections::BTreeSet;
use std::net::TcpListener;
use std::time::{Duration, Instant};

use wangsun::affine::{self, AffineMap};
use wangsun::arith;
use wangsun::cli::oeis::{Fixtures, OeisClient};
use wangsun::cli::{self, Environment};
use wangsun::cyclotomic::{CycloField, Rational};
use wangsun::wangsun::{
    classical_sum, common_sign, dsum, numeric, qsum, qsum_closed_form, qsum_combinatorial,
    quasipolarity_summand, SumKind, SumOptions, SumResult,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn q(s: &str) -> Rational {
    s.parse().expect("canonical rational literal")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn serial() -> SumOptions {
    SumOptions::default().with_jobs(1)
}

fn c1_odd_qsum_vanishes() -> Outcome {
    for k in [1, 3, 5, 7, 9, 11, 13, 15] {
        let v = qsum(k, &serial()).map_err(|e| e.to_string())?.value;
        ensure(v.is_zero(), || format!("qsum({k}) = {v}"))?;
    }
    Ok("qsum(k) = 0 for k = 1, 3, ..., 15".into())
}

fn c2_table_one() -> Outcome {
    let want = [0, 4, 0, 8, 0, 8, 0, 12, 0, 16];
    for (k, w) in (3..=12).zip(want) {
        let v = qsum(k, &serial()).map_err(|e| e.to_string())?.value;
        ensure(v == Rational::from(w), || {
            format!("qsum({k}) = {v}, expected {w}")
        })?;
    }
    Ok(format!("k = 3..12: {want:?}"))
}

fn c3_qsum_closed_form() -> Outcome {
    for k in 1..=24u64 {
        let v = qsum(k, &serial()).map_err(|e| e.to_string())?.value;
        let closed = if k % 2 == 0 {
            arith::unitary_sigma(2 * k) - arith::unitary_sigma(k)
        } else {
            0
        };
        let even = arith::even_unitary_divisor_sum(k);
        let comb = qsum_combinatorial(k).map_err(|e| e.to_string())?;
        let lib_closed = qsum_closed_form(k);
        for (label, x) in [
            ("closed form", closed),
            ("library closed form", lib_closed),
            ("even unitary divisors", even),
            ("tritone-free count", comb),
        ] {
            ensure(v == Rational::from(x as i64), || {
                format!("k={k}: qsum {v} vs {label} {x}")
            })?;
        }
    }
    let v18 = qsum(18, &serial()).map_err(|e| e.to_string())?.value;
    ensure(v18 == Rational::from(20), || format!("qsum(18) = {v18}"))?;
    Ok("four routes agree for k <= 24; qsum(18) = 20".into())
}

fn c4_table_two() -> Outcome {
    let want = [
        "1456/27",
        "-2300",
        "762256/5",
        "-10643506432/729",
        "13444304416/7",
        "-332995177452",
        "1450048309488389824/19683",
    ];
    let start = Instant::now();
    let single: Vec<SumResult> = (3..=9)
        .map(|k| dsum(k, &serial()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let single_time = start.elapsed();
    ensure(single_time < Duration::from_secs(60), || {
        format!("single-threaded run took {single_time:?}")
    })?;
    for (r, w) in single.iter().zip(want) {
        ensure(r.value == q(w), || {
            format!("dsum({}) = {}, expected {w}", r.param, r.value)
        })?;
    }
    for jobs in [0, 2, 4] {
        let opts = SumOptions::default().with_jobs(jobs);
        for r in &single {
            let p = dsum(r.param, &opts).map_err(|e| e.to_string())?;
            ensure(p.value == r.value, || {
                format!(
                    "dsum({}) with jobs={jobs}: {} vs {}",
                    r.param, p.value, r.value
                )
            })?;
        }
    }
    Ok(format!(
        "2k = 6..18 exact; single-threaded {:.2} s; jobs 0/2/4 identical",
        single_time.as_secs_f64()
    ))
}

fn classical_expected(n: u64) -> Rational {
    let df = arith::double_factorial(n - 2);
    let sign: i64 = if ((n - 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    };
    let num = num_bigint::BigInt::from(df.clone() * df) * sign;
    Rational::from(num_rational::BigRational::new(num, (n as i64).into()))
}

fn c5_classical() -> Outcome {
    let opts = SumOptions::default().with_jobs(0);
    let start = Instant::now();
    for n in [3, 5, 7, 9] {
        let r = classical_sum(n, &opts).map_err(|e| e.to_string())?;
        ensure(r.value == classical_expected(n), || {
            format!("n={n}: {} vs {}", r.value, classical_expected(n))
        })?;
    }
    let small = start.elapsed();
    ensure(small < Duration::from_secs(10), || {
        format!("n <= 9 took {small:?}")
    })?;
    let r = classical_sum(11, &opts).map_err(|e| e.to_string())?;
    ensure(r.summand_count == 1_334_961, || {
        format!("n=11 summed {} derangements", r.summand_count)
    })?;
    ensure(r.value == classical_expected(11), || {
        format!("n=11: {} vs {}", r.value, classical_expected(11))
    })?;
    ensure(r.elapsed < Duration::from_secs(300), || {
        format!("n=11 took {:?}", r.elapsed)
    })?;
    Ok(format!(
        "n = 3..9 in {:.2} s; n = 11: {} over 1334961 derangements in {:.1} s",
        small.as_secs_f64(),
        r.value,
        r.elapsed.as_secs_f64()
    ))
}

fn c6_census() -> Outcome {
    for k in 1..=60u64 {
        let count = affine::enumerate_quasipolarities_bruteforce(k)
            .map_err(|e| e.to_string())?
            .count() as u64;
        let s = arith::unitary_sigma(k);
        ensure(count == s, || format!("k={k}: |Q_k| = {count}, s1* = {s}"))?;
    }
    for k in 1..=24u64 {
        let brute: BTreeSet<AffineMap> = affine::enumerate_quasipolarities_bruteforce(k)
            .map_err(|e| e.to_string())?
            .collect();
        let generated = affine::characterization_candidates(k).map_err(|e| e.to_string())?;
        let gen_set: BTreeSet<AffineMap> = generated.iter().copied().collect();
        ensure(gen_set == brute && generated.len() == brute.len(), || {
            format!(
                "k={k}: characterization gives {} maps, brute force {}",
                gen_set.len(),
                brute.len()
            )
        })?;
    }
    Ok("|Q_k| = s1*(k) for k <= 60; characterization = brute force for k <= 24".into())
}

fn c7_galois() -> Outcome {
    let mut roots = 0;
    for k in [2, 3, 4, 6] {
        let base_q = qsum(k, &serial()).map_err(|e| e.to_string())?.value;
        let base_d = dsum(k, &serial()).map_err(|e| e.to_string())?.value;
        for a in arith::units(2 * k).expect("2k >= 2") {
            let o = serial().with_root(a as i64);
            let qa = qsum(k, &o).map_err(|e| e.to_string())?.value;
            let da = dsum(k, &o).map_err(|e| e.to_string())?.value;
            ensure(qa == base_q && da == base_d, || {
                format!("k={k} a={a}: qsum {qa} vs {base_q}, dsum {da} vs {base_d}")
            })?;
            roots += 1;
        }
    }
    Ok(format!("{roots} (k, a) pairs agree"))
}

fn c8_structure() -> Outcome {
    let mut checked = 0;
    for k in 1..=24u64 {
        let field = CycloField::new(2 * k, 1).map_err(|e| e.to_string())?;
        for f in affine::enumerate_quasipolarities_bruteforce(k).map_err(|e| e.to_string())? {
            let s = quasipolarity_summand(&field, &f).map_err(|e| e.to_string())?;
            ensure(s.is_zero() || s.is_one(), || {
                format!("{f} (k={k}): summand {s}")
            })?;
            let (_, tau) =
                affine::sigma_tau(f.linear() as i64, 2 * k as i64).map_err(|e| e.to_string())?;
            let by_divisor = k % 2 == 0 && (tau / 2) % 2 == 0;
            ensure(
                s.is_one() == !f.hits_tritone() && s.is_one() == by_divisor,
                || {
                    format!(
                        "{f} (k={k}): summand {s}, hits tritone {}, divisor test {by_divisor}",
                        f.hits_tritone()
                    )
                },
            )?;
            checked += 1;
        }
        common_sign(k).map_err(|e| format!("k={k}: {e}"))?;
    }
    Ok(format!(
        "{checked} quasipolarities checked; common sign constant for k <= 24"
    ))
}

fn c9_exactness() -> Outcome {
    let mut results = Vec::new();
    for k in 1..=24 {
        results.push(qsum(k, &serial()).map_err(|e| e.to_string())?);
    }
    for k in 1..=9 {
        results.push(dsum(k, &serial()).map_err(|e| e.to_string())?);
    }
    for n in [3, 5, 7, 9] {
        results.push(classical_sum(n, &serial()).map_err(|e| e.to_string())?);
    }
    // every call above already rejects a non-rational total; recheck the
    // embedding against a double-precision evaluation
    let mut worst: f64 = 0.0;
    for r in &results {
        let approx = numeric::shadow_sum(r.kind, r.param, r.root_exponent);
        ensure(numeric::agrees(&r.value, approx, 1e-9), || {
            format!(
                "{} {}: exact {} vs float {approx}",
                r.kind, r.param, r.value
            )
        })?;
        let exact = r.value.to_f64();
        worst = worst
            .max((approx - num_complex::Complex64::new(exact, 0.0)).norm() / exact.abs().max(1.0));
    }
    let kinds: BTreeSet<SumKind> = results.iter().map(|r| r.kind).collect();
    Ok(format!(
        "{} sums rational over {} kinds; worst relative float error {worst:.1e}",
        results.len(),
        kinds.len()
    ))
}

fn c10_oeis_offline() -> Outcome {
    let hits = OeisClient::offline(Fixtures::bundled())
        .search(&[4, 8, 8, 12])
        .map_err(|e| e.to_string())?;
    let first = hits.first().ok_or("no matches")?;
    ensure(first.sequence_id == "A054785", || {
        format!("first match {}", first.sequence_id)
    })?;

    // A listener stands in for the OEIS; offline runs must never connect to it.
    let listener = TcpListener::bind("127.0.0.1:0").map_err(|e| e.to_string())?;
    listener.set_nonblocking(true).map_err(|e| e.to_string())?;
    let env = Environment {
        cache_path: std::env::temp_dir().join("unused-wangsun-cache.jsonl"),
        oeis_url: format!(
            "http://{}/search",
            listener.local_addr().map_err(|e| e.to_string())?
        ),
        offline: true,
    };
    let mut out = Vec::new();
    let mut err = Vec::new();
    let args = [
        "wangsun",
        "--no-cache",
        "sequence",
        "--kind",
        "qsum",
        "--k-min",
        "3",
        "--k-max",
        "10",
        "--oeis",
    ];
    let code = cli::run(args, &env, &mut out, &mut err);
    let out = String::from_utf8_lossy(&out);
    ensure(code == 0 && out.contains("A054785"), || {
        format!("exit {code}: {out}")
    })?;
    let mut err2 = Vec::new();
    let args = [
        "wangsun",
        "--no-cache",
        "sequence",
        "--kind",
        "qsum",
        "--k-min",
        "3",
        "--k-max",
        "14",
        "--oeis",
    ];
    let code = cli::run(args, &env, &mut Vec::new(), &mut err2);
    ensure(code == cli::EXIT_ENV, || {
        format!("uncached offline query exited {code}")
    })?;
    match listener.accept() {
        Err(e) if e.kind() == std::io::ErrorKind::WouldBlock => {}
        Ok((_, peer)) => {
            return Err(format!(
                "offline mode connected to the endpoint from {peer}"
            ))
        }
        Err(e) => return Err(e.to_string()),
    }
    Ok(format!(
        "first match {}: {}; no connection attempted",
        first.sequence_id, first.name
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "qsum vanishes for odd k",
            c1_odd_qsum_vanishes,
            Duration::from_secs(1),
        ),
        (
            "qsum table, k = 3..12",
            c2_table_one,
            Duration::from_secs(1),
        ),
        (
            "qsum closed form, k <= 24",
            c3_qsum_closed_form,
            Duration::from_secs(5),
        ),
        (
            "dsum table, 2k = 6..18",
            c4_table_two,
            Duration::from_secs(120),
        ),
        (
            "classical derangement identity",
            c5_classical,
            Duration::from_secs(310),
        ),
        ("quasipolarity census", c6_census, Duration::from_secs(60)),
        ("Galois invariance", c7_galois, Duration::from_secs(60)),
        (
            "summand structure and sign",
            c8_structure,
            Duration::from_secs(60),
        ),
        (
            "exactness and float shadow",
            c9_exactness,
            Duration::from_secs(60),
        ),
        (
            "OEIS offline fixture",
            c10_oeis_offline,
            Duration::from_secs(30),
        ),
    ];
    let mut failed = 0;
    for (i, (title, check, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|d| {
            if elapsed <= budget {
                Ok(d)
            } else {
                Err(format!("{d} (over the {budget:?} budget)"))
            }
        });
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        failed += outcome.is_err() as usize;
        println!(
            "{tag} criterion {:>2} {title:<32} {:>8.2} s  {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
