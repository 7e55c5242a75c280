//! Primes, exact Ramanujan τ values, and the composed sequence
//! τ_p(n) = τ(p_n).
//!
//! τ is computed from the power-series expansion of Δ = q·∏(1−qⁿ)²⁴ using
//! Jacobi's sparse series for the cube of the Euler product,
//! ∏(1−qⁿ)³ = Σ_{k≥0} (−1)^k (2k+1) q^{k(k+1)/2},
//! followed by three exact series squarings. Everything is exact integer
//! arithmetic; τ values are stored as arbitrary-precision integers because
//! downstream determinants do not fit any fixed width.

use crate::error::{Error, Result};
use crate::scalar::{int_from_string, int_to_string};
use rug::{Complete, Integer};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

/// Ascending table of all primes up to a limit, with 1-based lookup
/// (`nth(1)` = 2).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeTable {
    pub limit: u64,
    pub primes: Vec<u64>,
}

impl PrimeTable {
    /// The n-th prime, 1-based. `None` when the table is too short.
    pub fn nth(&self, n: usize) -> Option<u64> {
        if n == 0 {
            return None;
        }
        self.primes.get(n - 1).copied()
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

/// Sieve of Eratosthenes up to `limit` inclusive.
pub fn primes_upto(limit: u64) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(Error::EmptyDomain(format!(
            "no primes at or below {limit}"
        )));
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += p;
            }
        }
    }
    Ok(PrimeTable {
        limit,
        primes,
    })
}

/// A prime table guaranteed to contain at least `count` primes.
pub fn primes_first(count: usize) -> Result<PrimeTable> {
    if count == 0 {
        return Err(Error::EmptyDomain("zero primes requested".into()));
    }
    // p_n < n(ln n + ln ln n) for n >= 6; pad the small cases.
    let n = count.max(6) as f64;
    let mut limit = (n * (n.ln() + n.ln().ln())).ceil() as u64 + 16;
    loop {
        let table = primes_upto(limit)?;
        if table.len() >= count {
            return Ok(table);
        }
        limit *= 2;
    }
}

/// Exact τ(n) for 1 ≤ n ≤ nmax.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauTable {
    pub nmax: u64,
    pub values: BTreeMap<u64, Integer>,
}

impl TauTable {
    /// τ(n); panics when n is outside the table.
    pub fn tau(&self, n: u64) -> &Integer {
        &self.values[&n]
    }

    pub fn get(&self, n: u64) -> Option<&Integer> {
        self.values.get(&n)
    }
}

/// The composed sequence n ↦ τ(p_n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauPrimeSeq {
    pub nmax: u64,
    pub values: BTreeMap<u64, Integer>,
}

impl TauPrimeSeq {
    /// τ(p_n); panics when n is outside the table.
    pub fn value(&self, n: u64) -> &Integer {
        &self.values[&n]
    }

    pub fn get(&self, n: u64) -> Option<&Integer> {
        self.values.get(&n)
    }
}

/// Coefficients of ∏_{n≥1}(1−qⁿ)³ through degree `trunc`, via Jacobi's
/// sparse series.
fn euler_cubed(trunc: usize) -> Vec<Integer> {
    let mut c = vec![Integer::ZERO; trunc + 1];
    let mut k = 0u64;
    loop {
        let e = k * (k + 1) / 2;
        if e as usize > trunc {
            break;
        }
        let term = Integer::from(2 * k + 1);
        c[e as usize] = if k % 2 == 0 { term } else { -term };
        k += 1;
    }
    c
}

/// Exact truncated squaring of a dense series.
fn square_series(a: &[Integer], trunc: usize) -> Vec<Integer> {
    let mut out = vec![Integer::ZERO; trunc + 1];
    let top = a.len().min(trunc + 1);
    for i in 0..top {
        if a[i] == 0 {
            continue;
        }
        // Diagonal term a_i^2 contributes to degree 2i.
        if 2 * i <= trunc {
            out[2 * i] += a[i].square_ref().complete();
        }
        // Off-diagonal pairs counted twice.
        for j in (i + 1)..top.min(trunc + 1 - i) {
            if a[j] == 0 {
                continue;
            }
            let mut prod = (&a[i] * &a[j]).complete();
            prod <<= 1;
            out[i + j] += prod;
        }
    }
    out
}

/// Exact τ(n) for 1 ≤ n ≤ nmax by power-series expansion of q·∏(1−qⁿ)²⁴.
pub fn tau_series(nmax: u64) -> Result<TauTable> {
    if nmax < 1 {
        return Err(Error::EmptyDomain("tau table needs nmax >= 1".into()));
    }
    // τ(n) is the coefficient of q^(n-1) in ∏(1−qⁿ)²⁴.
    let trunc = (nmax - 1) as usize;
    let f3 = euler_cubed(trunc);
    let f6 = square_series(&f3, trunc);
    let f12 = square_series(&f6, trunc);
    let f24 = square_series(&f12, trunc);
    let values = f24
        .into_iter()
        .enumerate()
        .map(|(i, c)| (i as u64 + 1, c))
        .collect();
    Ok(TauTable {
        nmax,
        values,
    })
}

/// τ_p(n) = τ(p_n) for 1 ≤ n ≤ nmax. Computes τ through p_nmax.
pub fn tau_p(nmax: u64) -> Result<TauPrimeSeq> {
    if nmax < 1 {
        return Err(Error::EmptyDomain("tau_p needs nmax >= 1".into()));
    }
    let primes = primes_first(nmax as usize)?;
    tau_p_from_parts(nmax, &primes, &tau_series(primes.nth(nmax as usize).unwrap())?)
}

/// Assemble τ_p from precomputed tables (they must cover p_nmax).
pub fn tau_p_from_parts(
    nmax: u64,
    primes: &PrimeTable,
    tau: &TauTable,
) -> Result<TauPrimeSeq> {
    let mut values = BTreeMap::new();
    for n in 1..=nmax {
        let p = primes.nth(n as usize).ok_or_else(|| {
            Error::IncompleteInput(format!("prime table lacks p_{n}"))
        })?;
        let t = tau.get(p).ok_or_else(|| {
            Error::IncompleteInput(format!("tau table lacks tau({p}) = tau(p_{n})"))
        })?;
        values.insert(n, t.clone());
    }
    Ok(TauPrimeSeq {
        nmax,
        values,
    })
}

/// σ₁₁(n) mod 691, by divisor enumeration.
pub fn sigma11_mod_691(n: u64) -> u64 {
    const M: u64 = 691;
    let mut acc = 0u64;
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            acc = (acc + pow_mod(d % M, 11, M)) % M;
            let e = n / d;
            if e != d {
                acc = (acc + pow_mod(e % M, 11, M)) % M;
            }
        }
        d += 1;
    }
    acc
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn serialize_int_map<S: Serializer>(
    map: &BTreeMap<u64, Integer>,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = ser.serialize_map(Some(map.len()))?;
    for (k, v) in map {
        m.serialize_entry(&k.to_string(), &int_to_string(v))?;
    }
    m.end()
}

fn deserialize_int_map<'de, D: Deserializer<'de>>(
    de: D,
) -> std::result::Result<BTreeMap<u64, Integer>, D::Error> {
    let raw: BTreeMap<String, String> = BTreeMap::deserialize(de)?;
    let mut out = BTreeMap::new();
    for (k, v) in raw {
        let idx: u64 = k.parse().map_err(D::Error::custom)?;
        let val = int_from_string(&v).map_err(D::Error::custom)?;
        out.insert(idx, val);
    }
    Ok(out)
}

macro_rules! int_map_serde {
    ($ty:ident) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
                use serde::ser::SerializeStruct;
                let mut s = ser.serialize_struct(stringify!($ty), 2)?;
                s.serialize_field("nmax", &self.nmax)?;
                s.serialize_field("values", &IntMap(&self.values))?;
                s.end()
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
                #[derive(Deserialize)]
                struct Raw {
                    nmax: u64,
                    #[serde(deserialize_with = "deserialize_int_map")]
                    values: BTreeMap<u64, Integer>,
                }
                let raw = Raw::deserialize(de)?;
                Ok($ty {
                    nmax: raw.nmax,
                    values: raw.values,
                })
            }
        }
    };
}

struct IntMap<'a>(&'a BTreeMap<u64, Integer>);

impl Serialize for IntMap<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_int_map(self.0, ser)
    }
}

int_map_serde!(TauTable);
int_map_serde!(TauPrimeSeq);

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;

    /// Independent oracle: τ by direct term-by-term expansion of the
    /// 24-fold product ∏(1−qⁿ)²⁴, one factor at a time.
    fn tau_oracle(nmax: u64) -> Vec<Integer> {
        let trunc = (nmax - 1) as usize;
        let mut p = vec![Integer::ZERO; trunc + 1];
        p[0] = Integer::from(1);
        for n in 1..=trunc.max(1) {
            for _ in 0..24 {
                for i in (n..=trunc).rev() {
                    let (lo, hi) = p.split_at_mut(i);
                    hi[0] -= &lo[i - n];
                }
            }
        }
        p.into_iter().collect()
    }

    fn is_prime_trial(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn sieve_small() {
        let t = primes_upto(10).unwrap();
        assert_eq!(t.primes, vec![2, 3, 5, 7]);
        assert_eq!(t.nth(1), Some(2));
        assert_eq!(t.nth(3), Some(5));
        assert_eq!(t.nth(5), None);
        assert!(primes_upto(1).is_err());
    }

    #[test]
    fn sieve_matches_trial_division() {
        let t = primes_upto(1000).unwrap();
        let brute: Vec<u64> = (2..=1000).filter(|&n| is_prime_trial(n)).collect();
        assert_eq!(t.primes, brute);
        // p_25 from the brute-force list.
        assert_eq!(brute[24], 97);
        assert_eq!(t.nth(25), Some(97));
    }

    #[test]
    fn nth_prime_lookup() {
        let t = primes_first(400).unwrap();
        assert!(t.len() >= 400);
        assert_eq!(t.nth(400), Some(2741));
    }

    #[test]
    fn tau_first_values_against_oracle() {
        let table = tau_series(30).unwrap();
        let oracle = tau_oracle(30);
        for n in 1..=30u64 {
            assert_eq!(table.tau(n), &oracle[(n - 1) as usize], "tau({n})");
        }
        assert_eq!(table.tau(1), &1);
        assert_eq!(table.tau(2), &-24);
        assert_eq!(table.tau(3), &252);
        assert_eq!(table.tau(5), &4830);
        assert_eq!(table.tau(6), &-6048);
        // Multiplicativity spot check: τ(6) = τ(2)τ(3).
        assert_eq!(
            (table.tau(2) * table.tau(3)).complete(),
            *table.tau(6)
        );
    }

    #[test]
    fn tau_congruence_and_hecke_relations() {
        let nmax = 300u64;
        let table = tau_series(nmax).unwrap();
        for n in 1..=nmax {
            let lhs = table.tau(n).mod_u(691);
            assert_eq!(u64::from(lhs), sigma11_mod_691(n), "691 congruence at {n}");
        }
        // Multiplicativity on coprime pairs.
        for a in 2..=nmax {
            for b in (a + 1)..=nmax / a {
                if Integer::from(a).gcd(&Integer::from(b)) == 1 {
                    assert_eq!(
                        (table.tau(a) * table.tau(b)).complete(),
                        *table.tau(a * b),
                        "tau({a})tau({b}) != tau({})",
                        a * b
                    );
                }
            }
        }
        // τ(p²) = τ(p)² − p¹¹ and the Deligne bound τ(p)² < 4p¹¹.
        let primes = primes_upto(nmax).unwrap();
        for &p in &primes.primes {
            let p11 = Integer::from(p).pow(11);
            if p * p <= nmax {
                let expect = table.tau(p).square_ref().complete() - &p11;
                assert_eq!(*table.tau(p * p), expect, "Hecke relation at p={p}");
            }
            assert!(
                table.tau(p).square_ref().complete() < 4u32 * p11,
                "Deligne bound fails at p={p}"
            );
        }
    }

    #[test]
    fn tau_p_composition() {
        let tp = tau_p(5).unwrap();
        assert_eq!(tp.value(1), &-24); // τ(2)
        assert_eq!(tp.value(2), &252); // τ(3)
        assert_eq!(tp.value(3), &4830); // τ(5)
        assert_eq!(tp.value(4), &-16744); // τ(7)
        let oracle = tau_oracle(12);
        assert_eq!(tp.value(5), &oracle[10]); // τ(11)
    }

    #[test]
    fn tau_table_json_round_trip() {
        let table = tau_series(40).unwrap();
        let json = serde_json::to_string(&table).unwrap();
        let back: TauTable = serde_json::from_str(&json).unwrap();
        assert_eq!(table, back);
    }
}
