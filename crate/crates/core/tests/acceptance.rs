//! Reproduction suite. Prints one PASS/FAIL line per criterion. Exits
//! nonzero on any failure not listed in `KNOWN_RED`, and on any listed
//! criterion that starts passing.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use pary::automata::{build_nu2_automaton, build_yp_automaton, kernel_probe, verify_functional_equations, Direction};
use pary::congruence::{
    binom_congruence, check_binom_grid, check_mainthm, check_modp_lemma, check_parycor2, churchhouse_congruences,
    conjecture_checks, odd_primes_up_to, speccong_search, ConjectureGrid, ConjectureSelector, CheckReport,
};
use pary::partitions::{colored_count_oracle_prefix, ptm_signs, s_km, s_km_fast};
use pary::valuation::{gap_statistics, nu2_c_closed_form, nu_p, y_sum_check, y_z_sequences};
use pary::ExtNat;

type Outcome = Result<(), String>;

fn from_report(r: &CheckReport) -> Outcome {
    if r.passed() {
        Ok(())
    } else {
        Err(format!("{} counterexamples, first: {:?}", r.counterexample_count, r.counterexamples.first()))
    }
}

fn oracle_equivalence() -> Outcome {
    for k in 2..=5u64 {
        for m in 1..=3u64 {
            let oracle = colored_count_oracle_prefix(k, m, 200);
            let series = s_km(k, m as i64, 200).map_err(|e| e.to_string())?;
            let fast = s_km_fast(k, m as i64, 200).map_err(|e| e.to_string())?;
            if series.values != oracle || fast.values != oracle {
                let n = (0..=200).find(|&n| series.values[n] != oracle[n] || fast.values[n] != oracle[n]).unwrap();
                return Err(format!("k={k} m={m} n={n}: series {} oracle {}", series.values[n], oracle[n]));
            }
        }
    }
    Ok(())
}

fn mainthm() -> Outcome {
    let ms: Vec<i64> = (-20..=20).filter(|&m| m != 0 && m != -1).collect();
    from_report(&check_mainthm(&ms, 5000).map_err(|e| e.to_string())?)
}

fn parycor2() -> Outcome {
    let ms: Vec<i64> = (-12..=12).filter(|&m| m != 0).collect();
    from_report(&check_parycor2(&[3, 5, 7], &ms, 3000).map_err(|e| e.to_string())?)
}

fn speccong_pairs() -> Outcome {
    let primes = odd_primes_up_to(29);
    let ms: Vec<i64> = (2..=100).collect();
    let k5 = speccong_search(&primes, &ms, 5, 1000).map_err(|e| e.to_string())?;
    let expected5: Vec<(u64, i64)> = vec![
        (3, 26), (3, 27), (3, 53), (3, 54), (3, 80), (3, 81),
        (5, 24), (5, 25), (5, 49), (5, 50), (5, 74), (5, 75), (5, 99), (5, 100),
        (7, 48), (7, 49), (7, 97), (7, 98),
    ];
    if k5 != expected5 {
        return Err(format!("k=5 gave {k5:?}"));
    }
    let k6 = speccong_search(&primes, &ms, 6, 1000).map_err(|e| e.to_string())?;
    if k6 != vec![(3, 80), (3, 81)] {
        return Err(format!("k=6 gave {k6:?}"));
    }
    Ok(())
}

fn table1() -> Outcome {
    let ms = [3, 15, 23, 27, 35, 39, 47, 59, 63, 67, 79, 87, 91, 95, 99];
    let big_m = [2, 4, 3, 2, 2, 3, 4, 2, 6, 2, 4, 3, 2, 5, 2];
    let big_l = [2, 3, 3, 2, 2, 3, 3, 2, 4, 2, 3, 3, 2, 3, 2];
    let mut wrong = Vec::new();
    for (i, &m) in ms.iter().enumerate() {
        let g = gap_statistics(m, 100_000, 2).map_err(|e| e.to_string())?;
        if g.max != ExtNat::Finite(big_m[i]) || g.distinct != big_l[i] {
            wrong.push(format!("m={m}: got ({}, {})", g.max, g.distinct));
        }
    }
    if wrong.is_empty() { Ok(()) } else { Err(wrong.join("; ")) }
}

fn churchhouse() -> Outcome {
    from_report(&churchhouse_congruences(3, 100).map_err(|e| e.to_string())?)?;
    let c = s_km_fast(2, 1, 8).map_err(|e| e.to_string())?;
    let diff = &c[8] - &c[2];
    let v = nu_p(&diff, 2).map_err(|e| e.to_string())?;
    if diff != BigInt::from(32) || v != 5 {
        return Err(format!("c_1(8) - c_1(2) = {diff}, valuation {v}"));
    }
    Ok(())
}

fn binom() -> Outcome {
    from_report(&check_binom_grid(&[3, 5, 7, 11], 60).map_err(|e| e.to_string())?)?;
    let w = binom_congruence(5, 2, 1).map_err(|e| e.to_string())?;
    if w.difference != BigInt::from(250) || w.exponent != 3 || !w.passed {
        return Err(format!("witness: {w:?}"));
    }
    Ok(())
}

fn modp_lemma() -> Outcome {
    for p in [3, 5, 7] {
        for m in 1..=10 {
            from_report(&check_modp_lemma(p, m, 300).map_err(|e| e.to_string())?)
                .map_err(|e| format!("p={p} m={m}: {e}"))?;
        }
    }
    Ok(())
}

fn automata_agreement() -> Outcome {
    const TOP: usize = 100_000;
    let ptm = ptm_signs(TOP);
    let ms = (1..=19).step_by(2).flat_map(|m| [m, -m]).filter(|&m| m != -1);
    for m in ms {
        let lsb = build_nu2_automaton(m, Direction::LsbFirst).map_err(|e| e.to_string())?;
        let msb = build_nu2_automaton(m, Direction::MsbFirst).map_err(|e| e.to_string())?;
        let mut closed = Vec::with_capacity(TOP);
        for n in 1..=TOP {
            let want = nu2_c_closed_form(m, n, &ptm).map_err(|e| e.to_string())?;
            for a in [&lsb, &msb] {
                let got = a.eval(n as u64).map_err(|e| e.to_string())?.map(|v| ExtNat::Finite(v as u64));
                if got != Some(want) {
                    return Err(format!("m={m} n={n} {:?}: automaton {got:?}, closed form {want}", a.direction()));
                }
            }
            closed.push(want);
        }
        let probe = kernel_probe(&closed, 2, 8).map_err(|e| e.to_string())?;
        if !probe.saturated {
            return Err(format!("m={m}: 2-kernel not saturated: {:?}", probe.counts_by_depth));
        }
    }
    for (p, depth) in [(3u64, 6u32), (5, 4), (7, 3)] {
        let (y, _) = y_z_sequences(p, TOP).map_err(|e| e.to_string())?;
        for dir in [Direction::LsbFirst, Direction::MsbFirst] {
            let a = build_yp_automaton(p, dir).map_err(|e| e.to_string())?;
            for n in 1..=TOP {
                let got = a.eval(n as u64).map_err(|e| e.to_string())?.map(BigInt::from);
                if got.as_ref() != Some(&y[n]) {
                    return Err(format!("p={p} n={n} {dir:?}: automaton {got:?}, y = {}", y[n]));
                }
            }
        }
        let probe = kernel_probe(&y.values[1..], p as usize, depth).map_err(|e| e.to_string())?;
        if !probe.saturated {
            return Err(format!("p={p}: kernel not saturated: {:?}", probe.counts_by_depth));
        }
    }
    Ok(())
}

fn functional_equations() -> Outcome {
    for p in [3, 5, 7] {
        from_report(&verify_functional_equations(p, 2000).map_err(|e| e.to_string())?)
            .map_err(|e| format!("p={p}: {e}"))?;
        let (y, z) = y_z_sequences(p, 2000).map_err(|e| e.to_string())?;
        if let Some(n) = (1..=2000).find(|&n| &y[n] + &z[n] != BigInt::from(p)) {
            return Err(format!("p={p}: y + z != p at n={n}"));
        }
    }
    for (p, top) in [(3u64, 6u32), (5, 4), (7, 3)] {
        for n in 1..=top {
            if !y_sum_check(p, n).map_err(|e| e.to_string())? {
                return Err(format!("y-sum fails at p={p} n={n}"));
            }
        }
    }
    Ok(())
}

fn conjectures() -> Outcome {
    let mut conj1 = ConjectureGrid::standard(ConjectureSelector::Conj1);
    conj1.k_max = 5;
    conj1.n_max = 500;
    let mut conj2 = ConjectureGrid::standard(ConjectureSelector::Conj2);
    conj2.primes = vec![3, 5];
    conj2.m_max = 12;
    conj2.n_max = 300;
    let mut runs = vec![(ConjectureSelector::Conj1, conj1), (ConjectureSelector::Conj2, conj2)];
    for sel in [
        ConjectureSelector::Phi4A,
        ConjectureSelector::Phi4B,
        ConjectureSelector::Phi4Pow2,
        ConjectureSelector::Phi4Shift,
    ] {
        let mut g = ConjectureGrid::standard(sel);
        g.s_max = 4;
        g.n_max = 2000;
        runs.push((sel, g));
    }
    let mut failed = Vec::new();
    for (sel, grid) in runs {
        let r = conjecture_checks(sel, &grid).map_err(|e| e.to_string())?;
        println!("    {}", r.summary());
        for note in &r.notes {
            println!("      note: {note}");
        }
        if !r.passed() {
            failed.push(format!("{sel}: {:?}", r.counterexamples.first()));
        }
    }
    if failed.is_empty() { Ok(()) } else { Err(failed.join("; ")) }
}

/// Criteria that fail for a documented mathematical reason. They still print
/// FAIL.
const KNOWN_RED: [(&str, &str); 1] = [(
    "11",
    "CONJ2 equality clause at m ≡ -1 (mod p): no n <= 300 attains the bound at p=3, m=8 (smallest excess 1, \
     also none up to n = 1000); the stated bound looks one short whenever p^2 | m+1",
)];

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 11] = [
        ("1 oracle equivalence", oracle_equivalence, Duration::from_secs(60)),
        ("2 valuation of c_m closed form", mainthm, Duration::from_secs(300)),
        ("3 valuation and residue of d_m", parycor2, Duration::from_secs(600)),
        ("4 high-power congruence pairs", speccong_pairs, Duration::from_secs(900)),
        ("5 digit gap table", table1, Duration::from_secs(1800)),
        ("6 Churchhouse congruences", churchhouse, Duration::from_secs(120)),
        ("7 binomial congruence", binom, Duration::from_secs(120)),
        ("8 mod p lemma and closed difference", modp_lemma, Duration::from_secs(300)),
        ("9 automata agreement", automata_agreement, Duration::from_secs(300)),
        ("10 functional equations", functional_equations, Duration::from_secs(60)),
        ("11 conjecture suites [CONJECTURE]", conjectures, Duration::from_secs(600)),
    ];
    let only: Option<String> = std::env::args().nth(1).filter(|a| !a.starts_with('-'));
    let mut all_ok = true;
    for (name, run, budget) in criteria {
        if only.as_ref().is_some_and(|o| !name.starts_with(o.as_str())) {
            continue;
        }
        let t = Instant::now();
        let outcome = run();
        let took = t.elapsed();
        let slow = took > budget;
        let known = KNOWN_RED.iter().find(|(id, _)| name.split(' ').next() == Some(*id));
        match (&outcome, slow) {
            (Ok(()), false) => println!("PASS {name} ({:.1}s)", took.as_secs_f64()),
            (Ok(()), true) => println!("FAIL {name}: over budget ({:.1}s > {}s)", took.as_secs_f64(), budget.as_secs()),
            (Err(e), _) => println!("FAIL {name} ({:.1}s): {e}", took.as_secs_f64()),
        }
        let passed = outcome.is_ok() && !slow;
        match known {
            Some((_, why)) if !passed => println!("    known red: {why}"),
            Some(_) => {
                println!("    listed as known red but passed; update KNOWN_RED");
                all_ok = false;
            }
            None => all_ok &= passed,
        }
    }
    if all_ok { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
