//! The two lower-Hessenberg matrix families attached to a sequence pair,
//! their c-deformations, and exact determinants.
//!
//! Layouts (1-based indices, order n):
//!
//!   J-family: entry(i,k) = s_{i−k+1} for k ≤ i, entry(i,i+1) = −i, else 0
//!   H-family: entry(i,1) = i·s_i, entry(i,k) = s_{i−k+1} for 2 ≤ k ≤ i,
//!             entry(i,i+1) = 1, else 0
//!
//! A deformation by c consumes the shifted sequence (c, s₁, s₂, …) in place
//! of (s₁, s₂, …). Determinants reduce the rational matrix to an integer
//! matrix over a common denominator and run fraction-free (Bareiss)
//! elimination there, which avoids rational blow-up mid-elimination.

use crate::error::{Error, Result};
use crate::newton::{j_from_h, ExactSeq, SeqRole};
use crate::scalar::{factorial, rat_to_string};
use rug::{Complete, Integer, Rational};
use serde::{Deserialize, Serialize};

/// Which of the two families a matrix belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    J,
    H,
}

impl Family {
    /// Sequence role this family is built from.
    pub fn source_role(self) -> SeqRole {
        match self {
            Family::J => SeqRole::J,
            Family::H => SeqRole::H,
        }
    }
}

/// Descriptor of one family member: family, order, optional deformation, and
/// the source sequence.
#[derive(Debug, Clone)]
pub struct MatrixSpec<'a> {
    pub family: Family,
    pub order: usize,
    pub deform: Option<Rational>,
    pub source: &'a ExactSeq,
}

impl<'a> MatrixSpec<'a> {
    pub fn new(family: Family, order: usize, deform: Option<Rational>, source: &'a ExactSeq) -> Self {
        MatrixSpec {
            family,
            order,
            deform,
            source,
        }
    }

    /// Realize the descriptor as a dense matrix.
    pub fn build(&self) -> Result<ExactMatrix> {
        build(self)
    }
}

/// Dense n×n grid of exact rationals, row-major, 1-based accessors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zero(n: usize) -> Self {
        ExactMatrix {
            n,
            data: vec![Rational::new(); n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        ExactMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Entry at row i, column k (both 1-based).
    pub fn entry(&self, i: usize, k: usize) -> &Rational {
        &self.data[(i - 1) * self.n + (k - 1)]
    }

    pub fn set(&mut self, i: usize, k: usize, value: Rational) {
        self.data[(i - 1) * self.n + (k - 1)] = value;
    }

    /// Principal submatrix with rows and columns indexed by `support`
    /// (ascending 1-based indices).
    pub fn principal_submatrix(&self, support: &[usize]) -> ExactMatrix {
        let k = support.len();
        let mut data = Vec::with_capacity(k * k);
        for &i in support {
            for &j in support {
                data.push(self.entry(i, j).clone());
            }
        }
        ExactMatrix {
            n: k,
            data,
        }
    }

    /// True when every entry strictly above the first superdiagonal is zero.
    pub fn is_lower_hessenberg(&self) -> bool {
        for i in 1..=self.n {
            for k in (i + 2)..=self.n {
                if *self.entry(i, k) != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Debug dump as a JSON grid of "num/den" strings.
    pub fn to_json_grid(&self) -> Vec<Vec<String>> {
        (1..=self.n)
            .map(|i| (1..=self.n).map(|k| rat_to_string(self.entry(i, k))).collect())
            .collect()
    }
}

/// The sequence actually consumed by a builder: (c, s₁, …) when deformed,
/// (s₁, s₂, …) otherwise, returned as entries s₁..s_n of the effective
/// sequence.
pub(crate) fn effective_entries(
    source: &ExactSeq,
    deform: Option<&Rational>,
    n: usize,
) -> Result<Vec<Rational>> {
    let needed = if deform.is_some() { n.saturating_sub(1) } else { n };
    if source.max_index() < needed {
        return Err(Error::IncompleteInput(format!(
            "source defined through index {}, need {needed} for order {n}",
            source.max_index()
        )));
    }
    let mut s = Vec::with_capacity(n);
    if let Some(c) = deform {
        s.push(c.clone());
        for i in 1..n {
            s.push(source.get(i).clone());
        }
    } else {
        for i in 1..=n {
            s.push(source.get(i).clone());
        }
    }
    Ok(s)
}

/// Build the dense realization of a family member.
pub fn build(spec: &MatrixSpec) -> Result<ExactMatrix> {
    if spec.order < 1 {
        return Err(Error::EmptyDomain("matrix order must be >= 1".into()));
    }
    if spec.source.role() != spec.family.source_role() {
        return Err(Error::RoleMismatch(format!(
            "{:?}-family matrices are built from {:?}-role sequences",
            spec.family,
            spec.family.source_role()
        )));
    }
    let n = spec.order;
    let s = effective_entries(spec.source, spec.deform.as_ref(), n)?;
    let at = |i: usize| &s[i - 1]; // s_i, 1-based
    let mut m = ExactMatrix::zero(n);
    match spec.family {
        Family::J => {
            for i in 1..=n {
                for k in 1..=i {
                    m.set(i, k, at(i - k + 1).clone());
                }
                if i < n {
                    m.set(i, i + 1, Rational::from(-(i as i64)));
                }
            }
        }
        Family::H => {
            for i in 1..=n {
                m.set(i, 1, Rational::from(i as u64) * at(i));
                for k in 2..=i {
                    m.set(i, k, at(i - k + 1).clone());
                }
                if i < n {
                    m.set(i, i + 1, Rational::from(1));
                }
            }
        }
    }
    Ok(m)
}

/// Exact determinant of an integer matrix by fraction-free (Bareiss)
/// elimination with row pivoting.
pub fn det_bareiss_int(mut m: Vec<Vec<Integer>>) -> Integer {
    let n = m.len();
    if n == 0 {
        return Integer::from(1);
    }
    let mut sign = 1i32;
    let mut prev = Integer::from(1);
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Integer::ZERO,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let mut t = (&m[k][k] * &m[i][j]).complete();
                t -= (&m[i][k] * &m[k][j]).complete();
                debug_assert!(t.is_divisible(&prev));
                t.div_exact_mut(&prev);
                m[i][j] = t;
            }
            m[i][k] = Integer::ZERO;
        }
        prev = m[k][k].clone();
    }
    let mut det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det = -det;
    }
    det
}

/// Exact determinant of a rational matrix.
///
/// Clears denominators row by row (det scales by the product of the row
/// multipliers) and runs integer Bareiss elimination.
pub fn det_exact(m: &ExactMatrix) -> Rational {
    let n = m.order();
    if n == 0 {
        return Rational::from(1);
    }
    let mut scale = Integer::from(1);
    let mut rows: Vec<Vec<Integer>> = Vec::with_capacity(n);
    for i in 1..=n {
        let mut lcm = Integer::from(1);
        for k in 1..=n {
            lcm.lcm_mut(m.entry(i, k).denom());
        }
        let row = (1..=n)
            .map(|k| {
                let e = m.entry(i, k);
                let mut t = (e.numer() * &lcm).complete();
                t.div_exact_mut(e.denom());
                t
            })
            .collect();
        rows.push(row);
        scale *= lcm;
    }
    Rational::from((det_bareiss_int(rows), scale))
}

/// One row of a Lemma-2.2 style identity check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub n: usize,
    /// n!·h_n = |J_n(j̄)| held exactly.
    pub j_side_ok: bool,
    /// j_n = (−1)^{n+1}|H_n(h̄)| held exactly.
    pub h_side_ok: bool,
    pub lhs_j: String,
    pub rhs_j: String,
    pub lhs_h: String,
    pub rhs_h: String,
}

/// Outcome of the determinant identity suite for one sequence.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Lemma22Report {
    pub nmax: usize,
    pub all_ok: bool,
    /// First order where either identity failed, if any.
    pub first_failure: Option<usize>,
    pub checks: Vec<IdentityCheck>,
}

/// Verify, for every 1 ≤ n ≤ nmax:  n!·h_n = |J_n(j̄)|  and
/// j_n = (−1)^{n+1}|H_n(h̄)|,  with j̄ derived from h̄ by the forward solver.
pub fn verify_lemma22(h: &ExactSeq, nmax: usize) -> Result<Lemma22Report> {
    if h.role() != SeqRole::H {
        return Err(Error::RoleMismatch("verify_lemma22 needs an H-role input".into()));
    }
    let j = j_from_h(h, nmax)?;
    let mut checks = Vec::with_capacity(nmax);
    let mut first_failure = None;
    for n in 1..=nmax {
        let jn_mat = build(&MatrixSpec::new(Family::J, n, None, &j))?;
        let hn_mat = build(&MatrixSpec::new(Family::H, n, None, h))?;
        let det_j = det_exact(&jn_mat);
        let det_h = det_exact(&hn_mat);
        let lhs_j = Rational::from(&factorial(n)) * h.get(n);
        let rhs_h = if n % 2 == 0 { -det_h.clone() } else { det_h.clone() };
        let check = IdentityCheck {
            n,
            j_side_ok: lhs_j == det_j,
            h_side_ok: *j.get(n) == rhs_h,
            lhs_j: rat_to_string(&lhs_j),
            rhs_j: rat_to_string(&det_j),
            lhs_h: rat_to_string(j.get(n)),
            rhs_h: rat_to_string(&rhs_h),
        };
        if !(check.j_side_ok && check.h_side_ok) && first_failure.is_none() {
            first_failure = Some(n);
        }
        checks.push(check);
    }
    Ok(Lemma22Report {
        nmax,
        all_ok: first_failure.is_none(),
        first_failure,
        checks,
    })
}
