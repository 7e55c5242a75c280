//! Identity suites: every exact statement the pipeline relies on, runnable
//! as one gate. Each suite returns a machine-readable outcome naming the
//! first offending identity on failure; the CLI turns any failure into a
//! nonzero exit.

use crate::charpoly::{
    berkowitz_family, charpoly_closed_form, charpoly_family, closed_form_from_h,
    find_too_good_counterexample, lehmer_check, too_good_check,
    verify_principal_minor_coefficients,
};
use crate::error::Result;
use crate::matrix::{verify_lemma22, ExactMatrix, Family};
use crate::newton::{h_from_j, j_from_h, verify_d2, ExactSeq};
use crate::seq::{sigma11_mod_691, PrimeTable, TauPrimeSeq, TauTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::ops::Pow;
use rug::{Complete, Integer, Rational};
use serde::{Deserialize, Serialize};

/// Outcome of one identity suite.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub name: String,
    pub passed: bool,
    /// Number of individual identities checked.
    pub cases: usize,
    pub first_failure: Option<String>,
}

impl SuiteOutcome {
    fn new(name: &str) -> Self {
        SuiteOutcome {
            name: name.to_string(),
            passed: true,
            cases: 0,
            first_failure: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.passed {
            self.passed = false;
            self.first_failure = Some(describe());
        }
    }
}

/// Combined report of every suite in one run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub suites: Vec<SuiteOutcome>,
}

impl VerifyReport {
    pub fn from_suites(suites: Vec<SuiteOutcome>) -> Self {
        VerifyReport {
            passed: suites.iter().all(|s| s.passed),
            suites,
        }
    }
}

fn random_integer_tail(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rational> {
    (0..len)
        .map(|_| Rational::from(rng.gen_range(-100i64..=100)))
        .collect()
}

/// τ-table internal consistency: the 691 congruence, multiplicativity,
/// τ(p²) = τ(p)² − p¹¹, the Deligne bound at primes, and τ(1) = 1.
pub fn run_tau_suite(tau: &TauTable, primes: &PrimeTable) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("tau_table");
    let nmax = tau.nmax;
    out.check(*tau.tau(1) == 1, || "tau(1) != 1".into());
    for n in 1..=nmax {
        let got = u64::from(tau.tau(n).mod_u(691));
        out.check(got == sigma11_mod_691(n), || {
            format!("tau({n}) != sigma11({n}) mod 691")
        });
    }
    for a in 2..=nmax {
        for b in (a + 1)..=nmax / a {
            if Integer::from(a).gcd(&Integer::from(b)) == 1 {
                let prod = (tau.tau(a) * tau.tau(b)).complete();
                out.check(prod == *tau.tau(a * b), || {
                    format!("tau({a})tau({b}) != tau({})", a * b)
                });
            }
        }
    }
    for &p in &primes.primes {
        if p > nmax {
            break;
        }
        let p11 = Integer::from(p).pow(11u32);
        if p * p <= nmax {
            let expect = tau.tau(p).square_ref().complete() - &p11;
            out.check(*tau.tau(p * p) == expect, || {
                format!("tau({p}^2) != tau({p})^2 - {p}^11")
            });
        }
        let bound_ok = tau.tau(p).square_ref().complete() < 4u32 * p11;
        out.check(bound_ok, || format!("Deligne bound fails at p={p}"));
    }
    out
}

/// Both directions of the convolution on random integer data: round trip,
/// the generating-function identity, j₁ = h₁, and integrality of the
/// forward solve.
pub fn run_d_suite(trials: usize, nmax: usize, seed: u64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("d_relation");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let j = ExactSeq::new_j(random_integer_tail(&mut rng, nmax));
        let h = h_from_j(&j, nmax)?;
        let j2 = j_from_h(&h, nmax)?;
        let round = (1..=nmax).all(|n| j.get(n) == j2.get(n));
        out.check(round, || format!("trial {t}: round trip j->h->j broke"));
        out.check(verify_d2(&h, &j, nmax)?, || {
            format!("trial {t}: t*H' = H*J fails on the derived pair")
        });
        out.check(h.get(1) == j.get(1), || format!("trial {t}: h1 != j1"));

        let hi = ExactSeq::new_h(random_integer_tail(&mut rng, nmax));
        let ji = j_from_h(&hi, nmax)?;
        out.check(ji.is_integral(), || {
            format!("trial {t}: integer h gave non-integer j")
        });
        out.check(verify_d2(&hi, &ji, nmax)?, || {
            format!("trial {t}: t*H' = H*J fails on the forward pair")
        });
    }
    Ok(out)
}

/// Determinant identities for random integer sequences with h₀ = 1:
/// n!·h_n = |J_n(j̄)| and j_n = (−1)^{n+1}|H_n(h̄)| for every n ≤ nmax.
pub fn run_lemma22_random(trials: usize, nmax: usize, seed: u64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("lemma22_random");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let h = ExactSeq::new_h(random_integer_tail(&mut rng, nmax));
        let report = verify_lemma22(&h, nmax)?;
        out.check(report.all_ok, || {
            format!(
                "trial {t}: determinant identity fails first at n={:?}",
                report.first_failure
            )
        });
    }
    Ok(out)
}

/// Determinant identities along τ_p.
pub fn run_lemma22_tau(tp: &TauPrimeSeq, nmax: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("lemma22_tau_p");
    let h = ExactSeq::h_from_tau_p(tp);
    let report = verify_lemma22(&h, nmax)?;
    out.check(report.all_ok, || {
        format!(
            "tau_p determinant identity fails first at n={:?}",
            report.first_failure
        )
    });
    out.cases = nmax;
    Ok(out)
}

/// Three-way characteristic-polynomial agreement along τ_p: Hessenberg
/// recurrence vs Berkowitz vs the closed coefficient formula
/// a_{n,n−k} = (−1)^k·k!·C(n,k)·τ_p(k), all n ≤ nmax, coefficient-exact.
pub fn run_three_way_tau(tp: &TauPrimeSeq, nmax: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("three_way_tau_p");
    let h = ExactSeq::h_from_tau_p(tp);
    let j = j_from_h(&h, nmax)?;
    let recurrence = charpoly_family(Family::J, &j, None, nmax)?;
    let top = crate::matrix::build(&crate::matrix::MatrixSpec::new(
        Family::J,
        nmax,
        None,
        &j,
    ))?;
    let berkowitz = berkowitz_family(&top);
    for n in 1..=nmax {
        out.check(recurrence[n - 1] == berkowitz[n - 1], || {
            format!("recurrence != berkowitz at n={n}")
        });
        let closed = match charpoly_closed_form(n, tp) {
            Ok(p) => p,
            Err(e) => {
                out.check(false, || format!("closed form unavailable at n={n}: {e}"));
                continue;
            }
        };
        out.check(recurrence[n - 1] == closed, || {
            format!("recurrence != closed form at n={n}")
        });
    }
    Ok(out)
}

/// The closed form for arbitrary integer sequences (h₀ = 1), random trials.
pub fn run_closed_form_random(trials: usize, nmax: usize, seed: u64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("closed_form_random");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let h = ExactSeq::new_h(random_integer_tail(&mut rng, nmax));
        let j = j_from_h(&h, nmax)?;
        let fam = charpoly_family(Family::J, &j, None, nmax)?;
        for n in 1..=nmax {
            let closed = closed_form_from_h(&h, n)?;
            out.check(fam[n - 1] == closed, || {
                format!("trial {t}: closed form disagrees at n={n}")
            });
        }
    }
    Ok(out)
}

/// Coefficients vs signed principal-minor sums for random dense matrices.
pub fn run_minor_sum_random(
    trials: usize,
    max_order: usize,
    seed: u64,
) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("principal_minor_sums");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let n = rng.gen_range(1..=max_order);
        let mut m = ExactMatrix::zero(n);
        for i in 1..=n {
            for k in 1..=n {
                m.set(i, k, Rational::from(rng.gen_range(-50i64..=50)));
            }
        }
        let ok = verify_principal_minor_coefficients(&m, max_order)?;
        out.check(ok, || {
            format!("trial {t}: coefficient != signed minor sum at order {n}")
        });
    }
    Ok(out)
}

/// The per-subset hypothesis must fail somewhere small while the subset-sum
/// identity holds everywhere scanned.
pub fn run_too_good(tp: &TauPrimeSeq, nmax: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("too_good_to_be_true");
    for n in 1..=nmax {
        for k in 0..=n {
            let r = too_good_check(n, k, tp, nmax)?;
            out.check(r.sum_matches, || {
                format!("subset-sum identity fails at n={n}, k={k}")
            });
        }
    }
    let counterexample = find_too_good_counterexample(tp, nmax)?;
    out.check(counterexample.is_some(), || {
        format!("no per-subset counterexample found up to n={nmax}")
    });
    Ok(out)
}

/// No zero among τ_p values, and the constant-term identity
/// Π_n(0) = (−1)ⁿ·n!·τ_p(n) from the matrix recurrence.
pub fn run_lehmer(tp: &TauPrimeSeq, poly_nmax: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("lehmer_scan");
    let report = lehmer_check(tp, poly_nmax)?;
    out.check(report.zeros_found.is_empty(), || {
        format!("tau_p zero found at n={:?} !", report.zeros_found)
    });
    out.check(report.all_constant_terms_ok, || {
        "constant term != (-1)^n n! tau_p(n) somewhere".to_string()
    });
    out.cases = report.rows.len() + report.poly_nmax;
    Ok(out)
}

/// Parameters for one full verification run.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct VerifyParams {
    pub nmax: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            nmax: 25,
            trials: 50,
            seed: 0x5eed,
        }
    }
}

/// Run every suite at the given size.
pub fn run_all(params: &VerifyParams) -> Result<VerifyReport> {
    let nmax = params.nmax.max(6);
    let tp = crate::seq::tau_p(nmax as u64)?;
    let primes = crate::seq::primes_first(nmax)?;
    let tau = crate::seq::tau_series(primes.nth(nmax).unwrap())?;
    let suites = vec![
        run_tau_suite(&tau, &primes),
        run_d_suite(params.trials.min(50), nmax, params.seed)?,
        run_lemma22_random(params.trials, nmax.min(25), params.seed ^ 1)?,
        run_lemma22_tau(&tp, nmax)?,
        run_three_way_tau(&tp, nmax)?,
        run_closed_form_random(20, nmax.min(15), params.seed ^ 2)?,
        run_minor_sum_random(params.trials.min(25), 8, params.seed ^ 3)?,
        run_too_good(&tp, 6)?,
        run_lehmer(&tp, nmax)?,
    ];
    Ok(VerifyReport::from_suites(suites))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::tau_p;

    #[test]
    fn default_verification_passes() {
        let params = VerifyParams {
            nmax: 12,
            trials: 8,
            seed: 42,
        };
        let report = run_all(&params).unwrap();
        for s in &report.suites {
            assert!(s.passed, "{}: {:?}", s.name, s.first_failure);
        }
        assert!(report.passed);
    }

    #[test]
    fn corrupted_tau_table_names_the_identity() {
        let primes = crate::seq::primes_first(10).unwrap();
        let mut tau = crate::seq::tau_series(primes.nth(10).unwrap()).unwrap();
        // Break tau(6) = tau(2)tau(3).
        tau.values.insert(6, Integer::from(1));
        let out = run_tau_suite(&tau, &primes);
        assert!(!out.passed);
        let msg = out.first_failure.unwrap();
        assert!(msg.contains("691") || msg.contains("tau(2)tau(3)"), "{msg}");
    }

    #[test]
    fn too_good_finds_the_counterexample() {
        let tp = tau_p(6).unwrap();
        let out = run_too_good(&tp, 6).unwrap();
        assert!(out.passed, "{:?}", out.first_failure);
    }
}
