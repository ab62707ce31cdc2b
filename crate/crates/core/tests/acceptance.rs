//! Acceptance criteria. Run with `cargo test --test acceptance -- --nocapture`
//! to see one PASS/FAIL line per criterion.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use gessel::exact_arith::{binomial, catalan, central_binomial};
use gessel::lattice_oracle::{
    first_touch_distribution, gessel_oracle, last_touch_distribution, q_oracle,
};
use gessel::{GesselIndex, Mutation, Nat, NatGessel};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ix(n: u32, r: u32) -> GesselIndex {
    GesselIndex::new(n, r).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, started: Instant) -> Result<String, String> {
    let took = started.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(format!("{} ms", took.as_millis()))
}

/// Closed form for P equals the DP count, 0 <= n <= 12, 1 <= r <= 12, under 5 s.
fn ac1_oracle_equivalence_p() -> Outcome {
    let started = Instant::now();
    let g = NatGessel::new();
    for n in 0..=12 {
        for r in 1..=12 {
            let (f, o) = (
                g.closed(ix(n, r)).map_err(|e| e.to_string())?,
                gessel_oracle::<Nat>(n, r).unwrap(),
            );
            ensure(f == o, || format!("P({n},{r}): closed {f} vs oracle {o}"))?;
        }
    }
    within(Duration::from_secs(5), started)
}

/// Closed form for Q equals the DP count over the same range, under 5 s.
fn ac2_oracle_equivalence_q() -> Outcome {
    let started = Instant::now();
    let g = NatGessel::new();
    for n in 0..=12 {
        for r in 1..=12 {
            let (f, o) = (
                g.q_closed(ix(n, r)).map_err(|e| e.to_string())?,
                q_oracle::<Nat>(n, r).unwrap(),
            );
            ensure(f == o, || format!("Q({n},{r}): closed {f} vs oracle {o}"))?;
        }
    }
    within(Duration::from_secs(5), started)
}

/// Closed form, Catalan sum, recurrence chain and forward substitution agree
/// for P; the Catalan sum agrees for Q.
fn ac3_method_agreement() -> Outcome {
    let g = NatGessel::new();
    let mut cells = 0;
    for n in 0..=12 {
        for r in 1..=12 {
            let idx = ix(n, r);
            let closed = g.closed(idx).unwrap();
            let routes = [
                ("sum", g.via_catalan_sum(idx)),
                ("recurrence", g.via_recurrence(idx)),
                ("eq12", g.from_eq12(idx)),
            ];
            for (name, v) in routes {
                let v = v.map_err(|e| format!("P({n},{r}) {name}: {e}"))?;
                ensure(v == closed, || {
                    format!("P({n},{r}) {name}: {v} vs {closed}")
                })?;
            }
            let (qs, qc) = (g.q_via_catalan_sum(idx).unwrap(), g.q_closed(idx).unwrap());
            ensure(qs == qc, || format!("Q({n},{r}) sum {qs} vs closed {qc}"))?;
            cells += 1;
        }
    }
    Ok(format!("{cells} cells"))
}

/// Last-touch and first-touch splits match the decomposition terms for n + r <= 14.
fn ac4_decomposition_fidelity() -> Outcome {
    let mut cells = 0;
    for n in 0..=13u32 {
        for r in 1..=(14 - n) {
            let last = last_touch_distribution::<Nat>(n, r).unwrap();
            ensure(last.len() == r as usize, || {
                format!("last touch ({n},{r}) keys {:?}", last.keys())
            })?;
            for (&k, v) in &last {
                let term =
                    central_binomial::<Nat>(k).unwrap() * catalan::<Nat>(n + r - k - 1).unwrap();
                ensure(*v == term, || {
                    format!("last touch ({n},{r}) k={k}: {v} vs {term}")
                })?;
            }
            if n >= 1 {
                let first = first_touch_distribution::<Nat>(n, r).unwrap();
                ensure(first.len() == n as usize, || {
                    format!("first touch ({n},{r}) keys")
                })?;
                for (&k, v) in &first {
                    let term = if k == 0 {
                        catalan::<Nat>(n + r - 1).unwrap()
                    } else {
                        // 2 C_{r+k-1} first-return paths times C(2(n-k), n-k) / 2 tails.
                        let returns = catalan::<Nat>(r + k - 1).unwrap() * 2u32;
                        let tails = binomial::<Nat>(2 * (n - k), i64::from(n - k)).unwrap() / 2u32;
                        returns * tails
                    };
                    ensure(*v == term, || {
                        format!("first touch ({n},{r}) k={k}: {v} vs {term}")
                    })?;
                }
            }
            cells += 1;
        }
    }
    Ok(format!("{cells} cells"))
}

/// P(n, r) = Q(r, n) on closed forms and on both oracles, 1 <= n, r <= 12.
fn ac5_symmetry() -> Outcome {
    let g = NatGessel::new();
    for n in 1..=12 {
        for r in 1..=12 {
            let values = [
                g.closed(ix(n, r)).unwrap(),
                g.q_closed(ix(r, n)).unwrap(),
                gessel_oracle::<Nat>(n, r).unwrap(),
                q_oracle::<Nat>(r, n).unwrap(),
            ];
            ensure(values.iter().all(|v| *v == values[0]), || {
                format!("({n},{r}): {values:?}")
            })?;
        }
    }
    Ok("144 cells, four routes".into())
}

/// The tail-touch, range-touch and dual convolution identities for
/// 1 <= n, r <= 12, and the convolution identity for 0 <= n <= 12.
fn ac6_concluding_identities() -> Outcome {
    let g = NatGessel::new();
    for n in 0..=12u32 {
        for r in 1..=12u32 {
            let idx = ix(n, r);
            let top = central_binomial::<Nat>(n + r).unwrap() / 2u32;
            let conv = g.eq12_lhs(idx).unwrap();
            ensure(conv == top, || {
                format!("convolution ({n},{r}): {conv} vs {top}")
            })?;
            if n == 0 {
                continue;
            }
            let tail = g.eq10_rhs(idx).unwrap();
            ensure(&top - g.closed(idx).unwrap() == tail, || {
                format!("tail sum ({n},{r})")
            })?;
            let range = g.eq11_rhs(idx).unwrap();
            ensure(&top - g.q_closed(idx).unwrap() == range, || {
                format!("range sum ({n},{r})")
            })?;
            let dual = g.eq13_lhs(idx).unwrap();
            let rhs = &top
                - central_binomial::<Nat>(n).unwrap() * central_binomial::<Nat>(r).unwrap() / 2u32;
            ensure(dual == rhs, || {
                format!("dual convolution ({n},{r}): {dual} vs {rhs}")
            })?;
        }
    }
    Ok("all four identities".into())
}

/// Every checked division (closed forms, the central binomial step, Catalan)
/// succeeds for indices up to 64.
fn ac7_divisibility() -> Outcome {
    let g = NatGessel::new();
    for m in 0..=64 {
        central_binomial::<Nat>(m).map_err(|e| format!("central {m}: {e}"))?;
        catalan::<Nat>(m).map_err(|e| format!("catalan {m}: {e}"))?;
        g.tables()
            .catalan(m)
            .map_err(|e| format!("catalan table {m}: {e}"))?;
    }
    for n in 0..=64 {
        for r in 1..=64 {
            g.closed(ix(n, r)).map_err(|e| format!("P({n},{r}): {e}"))?;
            g.q_closed(ix(n, r))
                .map_err(|e| format!("Q({n},{r}): {e}"))?;
        }
    }
    Ok("65 x 64 cells".into())
}

/// For r = 1..6 every proper divisor of K_r has a witness n <= 200 and K_r
/// itself is integral for all n <= 200, under 10 s.
fn ac8_kr_minimality() -> Outcome {
    let started = Instant::now();
    let g = NatGessel::new();
    for r in 1..=6 {
        let report = g.k_r_minimality_check(r, 200).map_err(|e| e.to_string())?;
        let expected = central_binomial::<Nat>(r).unwrap() * r / 2u32;
        ensure(report.k_r == expected, || {
            format!("K_{r} = {} vs {expected}", report.k_r)
        })?;
        ensure(report.k_r_integral(), || {
            format!("K_{r} fails at n = {:?}", report.k_r_failure)
        })?;
        ensure(report.all_refuted(), || {
            format!("K_{r}: divisor {:?} unrefuted", report.first_unrefuted())
        })?;
    }
    within(Duration::from_secs(10), started)
}

/// First-return count equals 2 C_{m-1} for 1 <= m <= 10 by exhaustive enumeration.
fn ac9_first_return() -> Outcome {
    for m in 1..=10 {
        let listed = Nat::from(common::first_return_by_enumeration(m));
        let expected = catalan::<Nat>(m - 1).unwrap() * 2u32;
        ensure(listed == expected, || {
            format!("m={m}: {listed} vs {expected}")
        })?;
        let dp = gessel::lattice_oracle::first_return_count::<Nat>(m).unwrap();
        ensure(dp == expected, || format!("m={m}: dp {dp} vs {expected}"))?;
    }
    Ok("m = 1..10".into())
}

/// `verify --all --n-max 10 --r-max 10` exits 0, and exits 1 with any single
/// formula constant corrupted.
fn ac10_cli_contract() -> Outcome {
    let verify = |fault: Option<Mutation>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_gessel"));
        cmd.args(["verify", "--all", "--n-max", "10", "--r-max", "10"]);
        if let Some(m) = fault {
            cmd.args(["--inject-fault", m.name()]);
        }
        cmd.output().expect("binary runs").status.code()
    };
    let clean = verify(None);
    ensure(clean == Some(0), || format!("clean run exited {clean:?}"))?;
    for m in Mutation::ALL {
        let code = verify(Some(m));
        ensure(code == Some(1), || format!("fault {m} exited {code:?}"))?;
    }
    Ok(format!(
        "clean exit 0, {} faults exit 1",
        Mutation::ALL.len()
    ))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        ("AC1 oracle equivalence for P", ac1_oracle_equivalence_p),
        ("AC2 oracle equivalence for Q", ac2_oracle_equivalence_q),
        ("AC3 method agreement", ac3_method_agreement),
        ("AC4 decomposition fidelity", ac4_decomposition_fidelity),
        ("AC5 symmetry P(n,r) = Q(r,n)", ac5_symmetry),
        ("AC6 concluding identities", ac6_concluding_identities),
        ("AC7 checked divisions to 64", ac7_divisibility),
        ("AC8 K_r minimality evidence", ac8_kr_minimality),
        ("AC9 first-return lemma", ac9_first_return),
        (
            "AC10 CLI contract and mutation smoke test",
            ac10_cli_contract,
        ),
    ];
    let mut failures = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name} ({detail})"),
            Err(why) => {
                println!("FAIL  {name}: {why}");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
