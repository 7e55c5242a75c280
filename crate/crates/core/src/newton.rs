//! The convolution linking a sequence h̄ (with h₀ = 1) to its companion j̄:
//!
//!   n·h_n = Σ_{r=1}^{n} j_r · h_{n−r}        (n ≥ 1)
//!
//! solved exactly in both directions, plus the equivalent truncated
//! generating-function identity t·H′(t) = H(t)·J(t) verified coefficient by
//! coefficient. All arithmetic is exact rational; the recurrences are
//! inherently sequential in n.

use crate::error::{Error, Result};
use crate::scalar::{rat_from_string, rat_to_string};
use crate::seq::TauPrimeSeq;
use rug::{Complete, Rational};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

/// Index convention of an exact sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeqRole {
    /// Has an index-0 entry fixed to 1; indices 0..=len.
    H,
    /// Starts at index 1; indices 1..=len.
    J,
}

/// An indexed sequence of exact rationals (integral entries are rationals
/// with denominator 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSeq {
    role: SeqRole,
    /// Entries from `first_index()` upward.
    entries: Vec<Rational>,
}

impl ExactSeq {
    /// H-role sequence from its tail h₁, h₂, …; h₀ = 1 is implied.
    pub fn new_h(tail: Vec<Rational>) -> Self {
        let mut entries = Vec::with_capacity(tail.len() + 1);
        entries.push(Rational::from(1));
        entries.extend(tail);
        ExactSeq {
            role: SeqRole::H,
            entries,
        }
    }

    /// J-role sequence j₁, j₂, ….
    pub fn new_j(entries: Vec<Rational>) -> Self {
        ExactSeq {
            role: SeqRole::J,
            entries,
        }
    }

    /// τ_p in the h role: h₀ = 1, h_n = τ(p_n).
    pub fn h_from_tau_p(tp: &TauPrimeSeq) -> Self {
        Self::new_h(
            (1..=tp.nmax)
                .map(|n| Rational::from(tp.value(n)))
                .collect(),
        )
    }

    /// τ_p in the j role: j_n = τ(p_n).
    pub fn j_from_tau_p(tp: &TauPrimeSeq) -> Self {
        Self::new_j(
            (1..=tp.nmax)
                .map(|n| Rational::from(tp.value(n)))
                .collect(),
        )
    }

    pub fn role(&self) -> SeqRole {
        self.role
    }

    /// Smallest valid index (0 for H, 1 for J).
    pub fn first_index(&self) -> usize {
        match self.role {
            SeqRole::H => 0,
            SeqRole::J => 1,
        }
    }

    /// Largest valid index.
    pub fn max_index(&self) -> usize {
        match self.role {
            SeqRole::H => self.entries.len() - 1,
            SeqRole::J => self.entries.len(),
        }
    }

    /// Entry at index `i`. Panics outside `first_index()..=max_index()`.
    pub fn get(&self, i: usize) -> &Rational {
        &self.entries[i - self.first_index()]
    }

    /// True when every entry has denominator 1.
    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|r| *r.denom() == 1)
    }

    fn require(&self, nmax: usize, what: &str) -> Result<()> {
        if self.max_index() < nmax {
            return Err(Error::IncompleteInput(format!(
                "{what} defined through index {}, need {nmax}",
                self.max_index()
            )));
        }
        Ok(())
    }
}

/// Solve the convolution forward: j_n = n·h_n − Σ_{r=1}^{n−1} j_r·h_{n−r}.
///
/// Maps integer sequences to integer sequences.
pub fn j_from_h(h: &ExactSeq, nmax: usize) -> Result<ExactSeq> {
    if h.role() != SeqRole::H {
        return Err(Error::RoleMismatch("j_from_h needs an H-role input".into()));
    }
    h.require(nmax, "h")?;
    let mut j: Vec<Rational> = Vec::with_capacity(nmax);
    for n in 1..=nmax {
        let mut acc = Rational::from((n as u64, 1u64)) * h.get(n);
        for r in 1..n {
            acc -= (&j[r - 1] * h.get(n - r)).complete();
        }
        j.push(acc);
    }
    Ok(ExactSeq::new_j(j))
}

/// Solve the convolution backward: h₀ = 1, h_n = (1/n) Σ_{r=1}^{n} j_r·h_{n−r}.
///
/// Rational in general even for integer input.
pub fn h_from_j(j: &ExactSeq, nmax: usize) -> Result<ExactSeq> {
    if j.role() != SeqRole::J {
        return Err(Error::RoleMismatch("h_from_j needs a J-role input".into()));
    }
    j.require(nmax, "j")?;
    let mut h: Vec<Rational> = vec![Rational::from(1)];
    for n in 1..=nmax {
        let mut acc = Rational::new();
        for r in 1..=n {
            acc += (j.get(r) * &h[n - r]).complete();
        }
        acc /= Rational::from((n as u64, 1u64));
        h.push(acc);
    }
    h.remove(0);
    Ok(ExactSeq::new_h(h))
}

/// Check t·H′(t) = H(t)·J(t) through degree N by exact truncated convolution.
///
/// The coefficient of tⁿ on the left is n·h_n; on the right it is the full
/// Cauchy product Σ_{r} j_r·h_{n−r}, computed independently of either solver.
pub fn verify_d2(h: &ExactSeq, j: &ExactSeq, upto: usize) -> Result<bool> {
    if h.role() != SeqRole::H || j.role() != SeqRole::J {
        return Err(Error::RoleMismatch(
            "verify_d2 needs (H-role, J-role) inputs".into(),
        ));
    }
    h.require(upto, "h")?;
    j.require(upto, "j")?;
    for n in 0..=upto {
        let lhs = Rational::from((n as u64, 1u64)) * h.get(n);
        let mut rhs = Rational::new();
        for r in 1..=n {
            rhs += (j.get(r) * h.get(n - r)).complete();
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

impl Serialize for ExactSeq {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut map = BTreeMap::new();
        for i in self.first_index()..=self.max_index() {
            map.insert(i.to_string(), rat_to_string(self.get(i)));
        }
        let mut s = ser.serialize_struct("ExactSeq", 2)?;
        s.serialize_field("role", &self.role)?;
        s.serialize_field("entries", &map)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for ExactSeq {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            role: SeqRole,
            entries: BTreeMap<String, String>,
        }
        let raw = Raw::deserialize(de)?;
        let mut indexed = BTreeMap::new();
        for (k, v) in &raw.entries {
            let i: usize = k.parse().map_err(D::Error::custom)?;
            indexed.insert(i, rat_from_string(v).map_err(D::Error::custom)?);
        }
        let first = match raw.role {
            SeqRole::H => 0,
            SeqRole::J => 1,
        };
        let mut entries = Vec::with_capacity(indexed.len());
        for (expect, (i, v)) in (first..).zip(indexed) {
            if i != expect {
                return Err(D::Error::custom(format!(
                    "non-contiguous sequence: expected index {expect}, found {i}"
                )));
            }
            entries.push(v);
        }
        if entries.is_empty() {
            return Err(D::Error::custom("empty sequence"));
        }
        if raw.role == SeqRole::H && entries[0] != 1 {
            return Err(D::Error::custom("H-role sequence must have entry 1 at index 0"));
        }
        Ok(ExactSeq {
            role: raw.role,
            entries,
        })
    }
}
