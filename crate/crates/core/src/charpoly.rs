//! Exact characteristic polynomials of the (deformed) matrix families by
//! three independent routes, plus the coefficient/principal-minor analysis.
//!
//! Convention throughout: χ(M)(x) = |xI − M|, monic of degree n.
//!
//! The primary route is a leading-principal recurrence that exploits the
//! lower-Hessenberg layout: the order-m member of a family is the top-left
//! m×m block of every larger member, so one pass over the source sequence
//! yields the whole family without constructing any matrix. Berkowitz's
//! division-free algorithm is kept as an independent referee, and for the
//! undeformed J family the closed form
//!
//!   χ(J_n(j̄))(x) = Σ_{r=0}^{n} C(n,r)·r!·h_r·(−1)^r·x^{n−r}
//!
//! gives a third route from the h-sequence alone.

use crate::error::{Error, Result};
use crate::matrix::{build, det_exact, effective_entries, ExactMatrix, Family, MatrixSpec};
use crate::newton::{j_from_h, ExactSeq, SeqRole};
use crate::scalar::{binomial, factorial, rat_from_string, rat_to_string};
use crate::seq::TauPrimeSeq;
use rug::{Complete, Integer, Rational};
use serde::{Deserialize, Serialize};

/// Monic polynomial with exact rational coefficients, ascending by power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactPoly {
    coeffs: Vec<Rational>,
}

impl ExactPoly {
    /// Wrap ascending coefficients; the leading one must be 1.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "polynomial needs at least one coefficient");
        assert_eq!(
            *coeffs.last().unwrap(),
            1,
            "characteristic polynomials are monic"
        );
        ExactPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of x^i.
    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }
}

/// Serialization record: coefficients as "num/den" strings, ascending, with
/// degree and family metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyRecord {
    pub degree: usize,
    pub family: Option<Family>,
    pub deform: Option<String>,
    pub coeffs: Vec<String>,
}

impl PolyRecord {
    pub fn new(p: &ExactPoly, family: Option<Family>, deform: Option<&Rational>) -> Self {
        PolyRecord {
            degree: p.degree(),
            family,
            deform: deform.map(rat_to_string),
            coeffs: p.coeffs().iter().map(rat_to_string).collect(),
        }
    }

    pub fn to_poly(&self) -> Result<ExactPoly> {
        if self.coeffs.len() != self.degree + 1 {
            return Err(Error::Malformed(format!(
                "degree {} disagrees with {} coefficients",
                self.degree,
                self.coeffs.len()
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|s| rat_from_string(s))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.last().map(|c| *c != 1).unwrap_or(true) {
            return Err(Error::Malformed("stored polynomial is not monic".into()));
        }
        Ok(ExactPoly::from_coeffs(coeffs))
    }
}

/// Characteristic polynomials of every order m ≤ nmax of one family, by the
/// leading-principal Hessenberg recurrence:
///
///   p_m(x) = (x − a_{m,m})·p_{m−1}(x) − Σ_{k=1}^{m−1} a_{m,k}·(β_k···β_{m−1})·p_{k−1}(x)
///
/// where β_i is the superdiagonal entry (−i for J, 1 for H) and a_{m,k} the
/// layout entry. No matrix is constructed.
pub fn charpoly_family(
    family: Family,
    source: &ExactSeq,
    deform: Option<&Rational>,
    nmax: usize,
) -> Result<Vec<ExactPoly>> {
    if source.role() != family.source_role() {
        return Err(Error::RoleMismatch(format!(
            "{family:?}-family polynomials are built from {:?}-role sequences",
            family.source_role()
        )));
    }
    let s = effective_entries(source, deform, nmax)?;
    // s_i, 1-based.
    let at = |i: usize| &s[i - 1];
    let entry = |m: usize, k: usize| -> Rational {
        match family {
            Family::J => at(m - k + 1).clone(),
            Family::H => {
                if k == 1 {
                    Rational::from(m as u64) * at(m)
                } else {
                    at(m - k + 1).clone()
                }
            }
        }
    };
    let beta = |i: usize| -> Rational {
        match family {
            Family::J => Rational::from(-(i as i64)),
            Family::H => Rational::from(1),
        }
    };

    let mut table: Vec<Vec<Rational>> = vec![vec![Rational::from(1)]];
    for m in 1..=nmax {
        let mut res = vec![Rational::new(); m + 1];
        // (x − a_{m,m})·p_{m−1}
        let a_mm = entry(m, m);
        for i in 0..m {
            let prev = &table[m - 1][i];
            res[i + 1] += prev;
            res[i] -= (&a_mm * prev).complete();
        }
        // − Σ_k a_{m,k}·(β_k···β_{m−1})·p_{k−1}
        let mut tail = Rational::from(1);
        for k in (1..m).rev() {
            tail *= beta(k);
            let factor = entry(m, k) * &tail;
            if factor == 0 {
                continue;
            }
            for (i, c) in table[k - 1].iter().enumerate() {
                res[i] -= (&factor * c).complete();
            }
        }
        table.push(res);
    }
    Ok(table.into_iter().skip(1).map(ExactPoly::from_coeffs).collect())
}

/// Characteristic polynomials of every leading principal block of an
/// arbitrary square matrix, by Berkowitz's division-free algorithm.
pub fn berkowitz_family(m: &ExactMatrix) -> Vec<ExactPoly> {
    let n = m.order();
    let mut out = Vec::with_capacity(n);
    // Coefficients in descending order: prev[i] is the coefficient of
    // x^{r−i} in χ of the order-r leading block.
    let mut prev: Vec<Rational> = vec![Rational::from(1)];
    for r in 1..=n {
        // Toeplitz column: 1, −a_rr, −R·C, −R·M·C, …, −R·M^{r−2}·C.
        let mut toeplitz = Vec::with_capacity(r + 1);
        toeplitz.push(Rational::from(1));
        toeplitz.push(-m.entry(r, r).clone());
        if r > 1 {
            let mut krylov: Vec<Rational> =
                (1..r).map(|i| m.entry(i, r).clone()).collect();
            for step in 0..r - 1 {
                let mut dot = Rational::new();
                for (k, w) in krylov.iter().enumerate() {
                    dot += (m.entry(r, k + 1) * w).complete();
                }
                toeplitz.push(-dot);
                if step + 1 < r - 1 {
                    let next: Vec<Rational> = (1..r)
                        .map(|i| {
                            let mut acc = Rational::new();
                            for (k, w) in krylov.iter().enumerate() {
                                acc += (m.entry(i, k + 1) * w).complete();
                            }
                            acc
                        })
                        .collect();
                    krylov = next;
                }
            }
        }
        let mut next = vec![Rational::new(); r + 1];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, p) in prev.iter().enumerate() {
                if i >= j && i - j <= r {
                    *slot += (&toeplitz[i - j] * p).complete();
                }
            }
        }
        let mut ascending = next.clone();
        ascending.reverse();
        out.push(ExactPoly::from_coeffs(ascending));
        prev = next;
    }
    out
}

/// Characteristic polynomial of one matrix by the Berkowitz route.
pub fn charpoly_berkowitz(m: &ExactMatrix) -> ExactPoly {
    berkowitz_family(m)
        .pop()
        .expect("berkowitz on order >= 1 matrix")
}

/// Closed form for the undeformed J family attached to an H-role sequence:
/// χ(J_n(j̄))(x) = Σ_{r=0}^{n} C(n,r)·r!·h_r·(−1)^r·x^{n−r}, with j̄ the
/// forward solve of h̄.
pub fn closed_form_from_h(h: &ExactSeq, n: usize) -> Result<ExactPoly> {
    if h.role() != SeqRole::H {
        return Err(Error::RoleMismatch("closed form needs an H-role input".into()));
    }
    if h.max_index() < n {
        return Err(Error::IncompleteInput(format!(
            "h defined through index {}, need {n}",
            h.max_index()
        )));
    }
    let mut coeffs = vec![Rational::new(); n + 1];
    for r in 0..=n {
        let weight = binomial(n, r) * factorial(r);
        let mut term = Rational::from(weight) * h.get(r);
        if r % 2 == 1 {
            term = -term;
        }
        coeffs[n - r] = term;
    }
    Ok(ExactPoly::from_coeffs(coeffs))
}

/// The τ_p specialization of the closed form:
/// Π_n(x) = Σ_{k=0}^{n} (−1)^k·k!·C(n,k)·τ_p(k)·x^{n−k}, τ_p(0) := 1.
pub fn charpoly_closed_form(n: usize, tp: &TauPrimeSeq) -> Result<ExactPoly> {
    if (tp.nmax as usize) < n {
        return Err(Error::IncompleteInput(format!(
            "tau_p defined through {}, need {n}",
            tp.nmax
        )));
    }
    closed_form_from_h(&ExactSeq::h_from_tau_p(tp), n)
}

/// Default refusal bound for exhaustive subset enumeration.
pub const DEFAULT_MINOR_BOUND: usize = 12;

/// Σ over all S ⊆ {1..n} with #S = k of |M[S,S]|, by exhaustive enumeration.
///
/// Refuses orders above `bound` (C(n,k) determinants get out of hand).
pub fn principal_minor_sum_bounded(
    m: &ExactMatrix,
    k: usize,
    bound: usize,
) -> Result<Rational> {
    let n = m.order();
    if n > bound {
        return Err(Error::TooLarge { order: n, bound });
    }
    if k > n {
        return Err(Error::EmptyDomain(format!("no size-{k} subsets of {{1..{n}}}")));
    }
    let mut acc = Rational::new();
    for_each_subset(n, k, |support| {
        acc += det_exact(&m.principal_submatrix(support));
    });
    Ok(acc)
}

/// `principal_minor_sum_bounded` at the default bound.
pub fn principal_minor_sum(m: &ExactMatrix, k: usize) -> Result<Rational> {
    principal_minor_sum_bounded(m, k, DEFAULT_MINOR_BOUND)
}

/// Check a_{n−k} = (−1)^k Σ_{#S=k} |M[S,S]| for every k, with χ computed by
/// the Berkowitz route.
pub fn verify_principal_minor_coefficients(m: &ExactMatrix, bound: usize) -> Result<bool> {
    let n = m.order();
    let chi = charpoly_berkowitz(m);
    for k in 0..=n {
        let mut expect = principal_minor_sum_bounded(m, k, bound)?;
        if k % 2 == 1 {
            expect = -expect;
        }
        if *chi.coeff(n - k) != expect {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Ascending-index subsets of {1..n} of size k, visited in lexicographic
/// order.
fn for_each_subset<F: FnMut(&[usize])>(n: usize, k: usize, mut visit: F) {
    let mut support: Vec<usize> = (1..=k).collect();
    if k == 0 {
        visit(&support);
        return;
    }
    if k > n {
        return;
    }
    loop {
        visit(&support);
        // Advance to the next combination.
        let mut i = k;
        while i > 0 && support[i - 1] == n - (k - i) {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        support[i - 1] += 1;
        for j in i..k {
            support[j] = support[j - 1] + 1;
        }
    }
}

/// Per-subset value of one exhaustive minor scan.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubsetMinor {
    pub support: Vec<usize>,
    pub value: String,
    pub matches_unsigned: bool,
    pub matches_signed: bool,
}

/// Exhaustive test of the per-subset hypothesis
/// |J_n(j̄_{τ_p})[S,S]| = (−1)^k k! τ_p(k) for #S = k, against both sign
/// conventions, together with the subset-sum identity that actually holds.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TooGoodReport {
    pub n: usize,
    pub k: usize,
    /// k!·τ_p(k)
    pub target_unsigned: String,
    /// (−1)^k·k!·τ_p(k)
    pub target_signed: String,
    pub subsets: Vec<SubsetMinor>,
    pub all_match_unsigned: bool,
    pub all_match_signed: bool,
    /// Σ_S |M[S,S]|
    pub sum: String,
    /// k!·C(n,k)·τ_p(k)
    pub sum_expected: String,
    pub sum_matches: bool,
}

/// Run the per-subset scan for J_n(j̄_{τ_p}) at one (n, k).
pub fn too_good_check(
    n: usize,
    k: usize,
    tp: &TauPrimeSeq,
    bound: usize,
) -> Result<TooGoodReport> {
    if n > bound {
        return Err(Error::TooLarge { order: n, bound });
    }
    let h = ExactSeq::h_from_tau_p(tp);
    if h.max_index() < n {
        return Err(Error::IncompleteInput(format!(
            "tau_p defined through {}, need {n}",
            h.max_index()
        )));
    }
    let j = j_from_h(&h, n)?;
    let m = build(&MatrixSpec::new(Family::J, n, None, &j))?;
    let tau_k = h.get(k); // τ_p(k), with τ_p(0) = 1
    let unsigned = Rational::from(&factorial(k)) * tau_k;
    let signed = if k % 2 == 1 { -unsigned.clone() } else { unsigned.clone() };
    let mut subsets = Vec::new();
    let mut sum = Rational::new();
    for_each_subset(n, k, |support| {
        let value = det_exact(&m.principal_submatrix(support));
        sum += &value;
        subsets.push(SubsetMinor {
            support: support.to_vec(),
            matches_unsigned: value == unsigned,
            matches_signed: value == signed,
            value: rat_to_string(&value),
        });
    });
    let sum_expected = Rational::from(factorial(k) * binomial(n, k)) * tau_k;
    Ok(TooGoodReport {
        n,
        k,
        target_unsigned: rat_to_string(&unsigned),
        target_signed: rat_to_string(&signed),
        all_match_unsigned: subsets.iter().all(|s| s.matches_unsigned),
        all_match_signed: subsets.iter().all(|s| s.matches_signed),
        subsets,
        sum_matches: sum == sum_expected,
        sum: rat_to_string(&sum),
        sum_expected: rat_to_string(&sum_expected),
    })
}

/// Scan (n, k) pairs in lexicographic order for the first per-subset
/// mismatch against BOTH sign conventions.
pub fn find_too_good_counterexample(
    tp: &TauPrimeSeq,
    nmax: usize,
) -> Result<Option<TooGoodReport>> {
    for n in 1..=nmax {
        for k in 0..=n {
            let report = too_good_check(n, k, tp, nmax)?;
            if !report.all_match_unsigned && !report.all_match_signed {
                return Ok(Some(report));
            }
        }
    }
    Ok(None)
}

/// One row of the Lehmer scan.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LehmerRow {
    pub n: usize,
    pub tau_p_nonzero: bool,
    /// Π_n(0) = (−1)ⁿ n! τ_p(n), constant term from the matrix recurrence.
    pub constant_term_ok: Option<bool>,
}

/// Outcome of the zero-eigenvalue scan along τ_p.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LehmerReport {
    pub nmax: usize,
    pub poly_nmax: usize,
    pub zeros_found: Vec<usize>,
    pub all_constant_terms_ok: bool,
    pub rows: Vec<LehmerRow>,
}

impl LehmerReport {
    pub fn passed(&self) -> bool {
        self.zeros_found.is_empty() && self.all_constant_terms_ok
    }
}

/// For each n ≤ tp.nmax assert τ_p(n) ≠ 0, and for n ≤ poly_nmax check
/// Π_n(0) = (−1)ⁿ n! τ_p(n) exactly with Π_n computed from the matrix
/// recurrence (not the closed form).
pub fn lehmer_check(tp: &TauPrimeSeq, poly_nmax: usize) -> Result<LehmerReport> {
    let nmax = tp.nmax as usize;
    let poly_nmax = poly_nmax.min(nmax);
    let h = ExactSeq::h_from_tau_p(tp);
    let j = j_from_h(&h, poly_nmax)?;
    let polys = charpoly_family(Family::J, &j, None, poly_nmax)?;
    let mut rows = Vec::with_capacity(nmax);
    let mut zeros = Vec::new();
    let mut all_ct = true;
    for n in 1..=nmax {
        let nonzero = *tp.value(n as u64) != 0;
        if !nonzero {
            zeros.push(n);
        }
        let ct_ok = if n <= poly_nmax {
            let mut expect = Rational::from(factorial(n)) * h.get(n);
            if n % 2 == 1 {
                expect = -expect;
            }
            let ok = *polys[n - 1].constant_term() == expect;
            all_ct &= ok;
            Some(ok)
        } else {
            None
        };
        rows.push(LehmerRow {
            n,
            tau_p_nonzero: nonzero,
            constant_term_ok: ct_ok,
        });
    }
    Ok(LehmerReport {
        nmax,
        poly_nmax,
        zeros_found: zeros,
        all_constant_terms_ok: all_ct,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::tau_p;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    /// Test-only oracle: expand |xI − M| by Laplace over polynomial entries.
    fn charpoly_naive(m: &ExactMatrix) -> Vec<Rational> {
        fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
            let mut out = vec![Rational::new(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += (x * y).complete();
                }
            }
            out
        }
        fn det_poly(m: &Vec<Vec<Vec<Rational>>>) -> Vec<Rational> {
            let n = m.len();
            if n == 1 {
                return m[0][0].clone();
            }
            let mut acc = vec![Rational::new()];
            for k in 0..n {
                let sub: Vec<Vec<Vec<Rational>>> = (1..n)
                    .map(|i| {
                        (0..n)
                            .filter(|&c| c != k)
                            .map(|c| m[i][c].clone())
                            .collect()
                    })
                    .collect();
                let term = poly_mul(&m[0][k], &det_poly(&sub));
                if acc.len() < term.len() {
                    acc.resize(term.len(), Rational::new());
                }
                for (i, c) in term.into_iter().enumerate() {
                    if k % 2 == 0 {
                        acc[i] += c;
                    } else {
                        acc[i] -= c;
                    }
                }
            }
            acc
        }
        let n = m.order();
        let entries: Vec<Vec<Vec<Rational>>> = (1..=n)
            .map(|i| {
                (1..=n)
                    .map(|k| {
                        // Entry of xI − M as an ascending polynomial in x.
                        let c0 = -m.entry(i, k).clone();
                        if i == k {
                            vec![c0, Rational::from(1)]
                        } else {
                            vec![c0]
                        }
                    })
                    .collect()
            })
            .collect();
        det_poly(&entries)
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zero(n);
        for i in 1..=n {
            for k in 1..=n {
                m.set(i, k, Rational::from(rng.gen_range(-9i64..=9)));
            }
        }
        m
    }

    #[test]
    fn quadratic_examples() {
        let j = ExactSeq::new_j(ints(&[-24, -72]));
        let fam = charpoly_family(Family::J, &j, None, 2).unwrap();
        // x² + 48x + 504 = (x+24)² − 72
        assert_eq!(fam[1].coeffs(), &ints(&[504, 48, 1])[..]);
        // Order 1: x − entry(1,1).
        assert_eq!(fam[0].coeffs(), &ints(&[24, 1])[..]);

        let deformed = charpoly_family(Family::J, &j, Some(&Rational::from(1)), 2).unwrap();
        // x² − 2x − 23 = (x−1)² − 24
        assert_eq!(deformed[1].coeffs(), &ints(&[-23, -2, 1])[..]);
    }

    #[test]
    fn berkowitz_small_cases() {
        let id2 = ExactMatrix::from_rows(vec![ints(&[1, 0]), ints(&[0, 1])]);
        let p = charpoly_berkowitz(&id2);
        assert_eq!(p.coeffs(), &ints(&[1, -2, 1])[..]);

        let m = ExactMatrix::from_rows(vec![ints(&[-24, -1]), ints(&[-72, -24])]);
        let p = charpoly_berkowitz(&m);
        assert_eq!(p.coeffs(), &ints(&[504, 48, 1])[..]);
    }

    #[test]
    fn berkowitz_matches_naive_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let n = rng.gen_range(1..=5usize);
            let m = random_matrix(&mut rng, n);
            let p = charpoly_berkowitz(&m);
            assert_eq!(p.coeffs(), &charpoly_naive(&m)[..]);
        }
    }

    #[test]
    fn family_recurrence_matches_berkowitz_on_built_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for family in [Family::J, Family::H] {
            for deform in [None, Some(Rational::from(1)), Some(Rational::from((3, 2)))] {
                let seq: Vec<Rational> = (0..10)
                    .map(|_| Rational::from((rng.gen_range(-20i64..=20), rng.gen_range(1i64..=3))))
                    .collect();
                let source = match family {
                    Family::J => ExactSeq::new_j(seq),
                    Family::H => ExactSeq::new_h(seq),
                };
                let fam =
                    charpoly_family(family, &source, deform.as_ref(), 8).unwrap();
                for m in 1..=8usize {
                    let mat = build(&MatrixSpec::new(family, m, deform.clone(), &source)).unwrap();
                    let by_berkowitz = charpoly_berkowitz(&mat);
                    assert_eq!(fam[m - 1], by_berkowitz, "{family:?} c={deform:?} m={m}");
                }
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        let tp = tau_p(6).unwrap();
        let p1 = charpoly_closed_form(1, &tp).unwrap();
        assert_eq!(p1.coeffs(), &ints(&[24, 1])[..]);
        let p2 = charpoly_closed_form(2, &tp).unwrap();
        assert_eq!(p2.coeffs(), &ints(&[504, 48, 1])[..]);
        for n in 1..=6 {
            assert_eq!(charpoly_closed_form(n, &tp).unwrap().coeff(n), &1);
        }
    }

    #[test]
    fn three_routes_agree_small() {
        let tp = tau_p(10).unwrap();
        let h = ExactSeq::h_from_tau_p(&tp);
        let j = j_from_h(&h, 10).unwrap();
        let fam = charpoly_family(Family::J, &j, None, 10).unwrap();
        for n in 1..=10usize {
            let mat = build(&MatrixSpec::new(Family::J, n, None, &j)).unwrap();
            assert_eq!(fam[n - 1], charpoly_berkowitz(&mat));
            assert_eq!(fam[n - 1], charpoly_closed_form(n, &tp).unwrap());
        }
    }

    #[test]
    fn theorem_holds_for_random_integer_sequences() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..5 {
            let tail: Vec<Rational> =
                (0..8).map(|_| Rational::from(rng.gen_range(-50i64..=50))).collect();
            let h = ExactSeq::new_h(tail);
            let j = j_from_h(&h, 8).unwrap();
            let fam = charpoly_family(Family::J, &j, None, 8).unwrap();
            for n in 1..=8 {
                assert_eq!(fam[n - 1], closed_form_from_h(&h, n).unwrap());
            }
        }
    }

    #[test]
    fn principal_minor_trace_and_full_cases() {
        let m = ExactMatrix::from_rows(vec![ints(&[3, 7]), ints(&[2, 5])]);
        // k=1: trace.
        assert_eq!(principal_minor_sum(&m, 1).unwrap(), 8);
        // k=n: the determinant itself.
        assert_eq!(principal_minor_sum(&m, 2).unwrap(), det_exact(&m));
        // k=0: the empty minor is 1.
        assert_eq!(principal_minor_sum(&m, 0).unwrap(), 1);
        // Coefficient of x¹ is −trace.
        let chi = charpoly_berkowitz(&m);
        assert_eq!(*chi.coeff(1), -Rational::from(8));
    }

    #[test]
    fn principal_minor_refusal_bound() {
        let m = ExactMatrix::zero(13);
        assert!(matches!(
            principal_minor_sum(&m, 2),
            Err(Error::TooLarge { order: 13, bound: 12 })
        ));
    }

    #[test]
    fn coefficients_equal_signed_minor_sums() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..8 {
            let n = rng.gen_range(1..=6usize);
            let m = random_matrix(&mut rng, n);
            assert!(verify_principal_minor_coefficients(&m, 8).unwrap());
        }
    }

    #[test]
    fn too_good_small_cases() {
        let tp = tau_p(6).unwrap();
        // k=0: the single empty minor matches τ_p(0) = 1.
        let r = too_good_check(4, 0, &tp, 12).unwrap();
        assert!(r.all_match_unsigned && r.all_match_signed && r.sum_matches);
        // n=2, k=1: both diagonal minors are −24; sum −48 = 1!·C(2,1)·τ_p(1).
        let r = too_good_check(2, 1, &tp, 12).unwrap();
        assert_eq!(r.subsets.len(), 2);
        assert!(r.subsets.iter().all(|s| s.value == "-24/1"));
        assert!(r.all_match_unsigned);
        assert!(!r.all_match_signed);
        assert!(r.sum_matches);
        assert_eq!(r.sum, "-48/1");
    }

    #[test]
    fn too_good_counterexample_at_n3_k2() {
        let tp = tau_p(6).unwrap();
        let found = find_too_good_counterexample(&tp, 6).unwrap().unwrap();
        assert_eq!((found.n, found.k), (3, 2));
        // Frozen fixture: minors 504, 576, 432 against target 504; the sum
        // 1512 = 2!·C(3,2)·τ_p(2) still holds.
        let values: Vec<&str> = found.subsets.iter().map(|s| s.value.as_str()).collect();
        assert_eq!(values, vec!["504/1", "576/1", "432/1"]);
        assert_eq!(found.target_unsigned, "504/1");
        assert!(found.sum_matches);
        assert_eq!(found.sum, "1512/1");
    }

    #[test]
    fn lehmer_scan_small() {
        let tp = tau_p(12).unwrap();
        let report = lehmer_check(&tp, 12).unwrap();
        assert!(report.passed());
        assert!(report.zeros_found.is_empty());
        // Π₂(0) = 504 = (+1)·2!·252 and Π₁(0) = 24 = (−1)·1!·(−24) were
        // checked exactly.
        assert_eq!(report.rows[0].constant_term_ok, Some(true));
        assert_eq!(report.rows[1].constant_term_ok, Some(true));
    }

    #[test]
    fn constant_term_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let seq: Vec<Rational> = (0..6).map(|_| Rational::from(rng.gen_range(-9i64..=9))).collect();
        let j = ExactSeq::new_j(seq);
        let fam = charpoly_family(Family::J, &j, None, 6).unwrap();
        for n in 1..=6usize {
            let mat = build(&MatrixSpec::new(Family::J, n, None, &j)).unwrap();
            let mut det = det_exact(&mat);
            if n % 2 == 1 {
                det = -det;
            }
            assert_eq!(*fam[n - 1].constant_term(), det);
        }
    }

    #[test]
    fn poly_record_round_trip() {
        let j = ExactSeq::new_j(ints(&[-24, -72]));
        let fam = charpoly_family(Family::J, &j, None, 2).unwrap();
        let rec = PolyRecord::new(&fam[1], Some(Family::J), None);
        let json = serde_json::to_string(&rec).unwrap();
        let back: PolyRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_poly().unwrap(), fam[1]);

        let mut broken = rec.clone();
        broken.coeffs[2] = "2/1".into();
        assert!(broken.to_poly().is_err());
    }
}
