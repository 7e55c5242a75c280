//! All complex roots of exact polynomials at configurable multiprecision,
//! and the minimum-modulus series extracted from them.
//!
//! The finder is simultaneous (Aberth–Ehrlich) iteration on MPFR complex
//! arithmetic: exact coefficients are rounded once at working precision,
//! initial guesses sit on a circle sized by the Fujiwara bound with a fixed
//! angular offset to break symmetry, and Gauss–Seidel sweeps run until the
//! largest relative step drops below 2^(−prec/2) and every scaled residual
//! passes. Accuracy is certified by agreement across a precision doubling
//! rather than a-priori bounds, so each series entry escalates precision
//! until two consecutive levels agree to the target digit count.

use crate::charpoly::ExactPoly;
use crate::complex::{float_from_hex, float_to_hex, MpComplex};
use rayon::prelude::*;
use rug::float::Round;
use rug::ops::Pow;
use rug::Float;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// All roots of one polynomial at one working precision.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<MpComplex>,
    /// Relative residual |p(z)| / Σ|cᵢ||z|ⁱ per root (informational; the
    /// convergence decision is made in multiprecision).
    pub residuals: Vec<f64>,
    pub precision_bits: u32,
    pub converged: bool,
    pub iterations: u32,
}

/// Minimum modulus among the roots of one polynomial.
#[derive(Debug, Clone)]
pub struct MinModResult {
    /// Matrix order = polynomial degree.
    pub n: usize,
    pub value: Float,
    /// log₁₀ of the value; absent when the value is exactly zero.
    pub log10_value: Option<Float>,
    pub precision_bits: u32,
    /// Two consecutive precision levels agreed to the target digits.
    pub stable: bool,
}

/// Precision escalation policy for a series run.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PrecisionProfile {
    /// Relative agreement required across a precision doubling, in decimal
    /// digits.
    pub target_digits: u32,
    pub start_bits: u32,
    pub cap_bits: u32,
}

impl Default for PrecisionProfile {
    fn default() -> Self {
        PrecisionProfile {
            target_digits: 30,
            start_bits: 384,
            cap_bits: 6144,
        }
    }
}

impl PrecisionProfile {
    /// The long-run profile: 100 decimal digits, matching the full-depth
    /// series runs.
    pub fn full() -> Self {
        PrecisionProfile {
            target_digits: 100,
            start_bits: 768,
            cap_bits: 24576,
        }
    }

    /// A profile whose digit target is `digits`, with a start precision
    /// comfortably above it.
    pub fn with_digits(digits: u32) -> Self {
        let needed = (digits as f64 * 3.33).ceil() as u32 + 96;
        let start = needed.div_ceil(64) * 64;
        PrecisionProfile {
            target_digits: digits,
            start_bits: start.max(384),
            cap_bits: start.max(384) * 16,
        }
    }
}

/// Evaluate p and p′ at z by Horner's rule. Coefficients ascending.
fn horner_with_derivative(coeffs: &[MpComplex], z: &MpComplex) -> (MpComplex, MpComplex) {
    let prec = z.prec();
    let mut p = MpComplex::zero(prec);
    let mut dp = MpComplex::zero(prec);
    for c in coeffs.iter().rev() {
        dp = &dp.mul_ref(z) + &p;
        p = &p.mul_ref(z) + c;
    }
    (p, dp)
}

/// Σ |cᵢ|·|z|ⁱ, the natural magnitude scale for residuals at z.
fn residual_scale(abs_coeffs: &[Float], abs_z: &Float, prec: u32) -> Float {
    let mut acc = Float::with_val(prec, 0);
    for c in abs_coeffs.iter().rev() {
        acc *= abs_z;
        acc += c;
    }
    acc
}

/// Fujiwara-style inclusion radius for a monic polynomial:
/// 2·max_k |c_{n−k}|^{1/k}.
fn root_radius(abs_coeffs: &[Float], prec: u32) -> Float {
    let n = abs_coeffs.len() - 1;
    let mut best = Float::with_val(prec, 0);
    for k in 1..=n {
        let mag = &abs_coeffs[n - k];
        if mag.is_zero() {
            continue;
        }
        let root = Float::with_val(prec, mag.clone().root(k as u32));
        if root > best {
            best = root;
        }
    }
    if best.is_zero() {
        // All lower coefficients vanish: xⁿ, every root at the origin.
        Float::with_val(prec, 1e-3)
    } else {
        best << 1
    }
}

fn exact_to_floats(p: &ExactPoly, prec: u32) -> Vec<MpComplex> {
    p.coeffs()
        .iter()
        .map(|c| MpComplex::real(Float::with_val(prec, c)))
        .collect()
}

/// Find all roots (with multiplicity) of a monic exact polynomial at the
/// given working precision. Non-convergence within the iteration cap is
/// reported through `converged = false` with the best iterate kept; callers
/// escalate precision.
pub fn roots_all(p: &ExactPoly, precision_bits: u32) -> RootSet {
    roots_all_seeded(p, precision_bits, None)
}

/// `roots_all` with warm-start guesses (typically the converged roots from a
/// lower precision level).
pub fn roots_all_seeded(
    p: &ExactPoly,
    precision_bits: u32,
    warm_start: Option<&[MpComplex]>,
) -> RootSet {
    let degree = p.degree();
    assert!(degree >= 1, "root finding needs degree >= 1");
    let prec = precision_bits;

    // Roots at the origin are exact: factor out x^k first.
    let origin_roots = p.coeffs().iter().take_while(|c| **c == 0).count();
    if origin_roots > 0 {
        let mut rs = if origin_roots == degree {
            RootSet {
                roots: Vec::new(),
                residuals: Vec::new(),
                precision_bits: prec,
                converged: true,
                iterations: 0,
            }
        } else {
            let quotient = ExactPoly::from_coeffs(p.coeffs()[origin_roots..].to_vec());
            roots_all_seeded(&quotient, prec, None)
        };
        rs.roots
            .extend(std::iter::repeat_with(|| MpComplex::zero(prec)).take(origin_roots));
        rs.residuals.extend(std::iter::repeat(0.0).take(origin_roots));
        return rs;
    }

    let coeffs = exact_to_floats(p, prec);
    let abs_coeffs: Vec<Float> = coeffs.iter().map(|c| c.re.clone().abs()).collect();

    if degree == 1 {
        // x + c₀: exact single root.
        let root = MpComplex::real(Float::with_val(prec, -&coeffs[0].re));
        let one = residual_of(&coeffs, &abs_coeffs, &root, prec);
        return RootSet {
            roots: vec![root],
            residuals: vec![one],
            precision_bits: prec,
            converged: true,
            iterations: 0,
        };
    }

    let mut z: Vec<MpComplex> = match warm_start {
        Some(seed) if seed.len() == degree => {
            seed.iter().map(|w| w.at_prec(prec)).collect()
        }
        _ => {
            let radius = root_radius(&abs_coeffs, prec);
            let two_pi = Float::with_val(prec, rug::float::Constant::Pi) * 2u32;
            (0..degree)
                .map(|k| {
                    // Fixed angular offset breaks coefficient symmetries.
                    let theta =
                        Float::with_val(prec, &two_pi * k as u32) / degree as u32
                            + Float::with_val(prec, 0.45312);
                    let (sin, cos) = theta.sin_cos(Float::new(prec));
                    MpComplex::from_parts(
                        Float::with_val(prec, &radius * &cos),
                        Float::with_val(prec, &radius * &sin),
                    )
                })
                .collect()
        }
    };

    let eps_step = Float::with_val(prec, Float::i_exp(1, -((prec / 2) as i32)));
    let tiny = Float::with_val(prec, Float::i_exp(1, -(prec as i32) * 2));
    let max_iterations: u32 = 200;
    let mut converged = false;
    let mut iterations = 0;

    for iter in 1..=max_iterations {
        iterations = iter;
        let mut all_settled = true;
        for j in 0..degree {
            let (pv, dv) = horner_with_derivative(&coeffs, &z[j]);
            if pv.is_zero() {
                continue;
            }
            // Settled once the residual reaches evaluation rounding level;
            // a relative-step test alone stalls on roots near the origin.
            let scale = residual_scale(&abs_coeffs, &z[j].abs(), prec);
            let bound = Float::with_val(prec, &scale * &eps_step);
            if pv.abs() <= bound {
                continue;
            }
            let newton = if dv.is_zero() {
                // Derivative vanished at the iterate; nudge off the
                // stationary point instead of dividing by zero.
                MpComplex::from_f64(prec, 1e-3, 1e-3)
            } else {
                pv.div_ref(&dv)
            };
            let mut repulsion = MpComplex::zero(prec);
            for k in 0..degree {
                if k != j {
                    let diff = &z[j] - &z[k];
                    if !diff.is_zero() {
                        repulsion += &diff.recip();
                    }
                }
            }
            let mut denom = MpComplex::real(Float::with_val(prec, 1));
            denom -= &newton.mul_ref(&repulsion);
            let delta = if denom.is_zero() {
                newton
            } else {
                newton.div_ref(&denom)
            };
            let next = &z[j] - &delta;
            let mut rel = delta.abs();
            let mag = next.abs();
            if mag > tiny {
                rel /= mag;
            }
            if rel >= eps_step {
                all_settled = false;
            }
            z[j] = next;
        }
        if all_settled {
            converged = true;
            break;
        }
    }

    let residuals: Vec<f64> = z
        .iter()
        .map(|root| residual_of(&coeffs, &abs_coeffs, root, prec))
        .collect();
    if converged {
        // Residual gate: every scaled residual must sit at rounding level.
        let gate = 2f64.powi(-((prec / 2) as i32));
        converged = residuals.iter().all(|&r| r <= gate);
    }
    RootSet {
        roots: z,
        residuals,
        precision_bits: prec,
        converged,
        iterations,
    }
}

fn residual_of(
    coeffs: &[MpComplex],
    abs_coeffs: &[Float],
    z: &MpComplex,
    prec: u32,
) -> f64 {
    let (pv, _) = horner_with_derivative(coeffs, z);
    let scale = residual_scale(abs_coeffs, &z.abs(), prec);
    if scale.is_zero() {
        return 0.0;
    }
    let rel = pv.abs() / scale;
    rel.to_f64()
}

/// Minimum |z| over a root set (no stability certification; series runs add
/// that by precision doubling).
pub fn min_modulus(rs: &RootSet) -> MinModResult {
    let value = rs
        .roots
        .iter()
        .map(|z| z.abs())
        .min_by(|a, b| a.partial_cmp(b).expect("finite moduli"))
        .expect("root set is non-empty");
    MinModResult {
        n: rs.roots.len(),
        log10_value: if value.is_zero() {
            None
        } else {
            Some(value.clone().log10())
        },
        value,
        precision_bits: rs.precision_bits,
        stable: false,
    }
}

/// Storage hooks for per-(degree, precision) root sets; the series runner
/// consults the cache before every solve and offers every fresh solve back.
pub trait RootCache: Sync {
    fn load(&self, n: usize, precision_bits: u32) -> Option<RootSet>;
    fn store(&self, n: usize, precision_bits: u32, rs: &RootSet);
}

/// No-op cache.
pub struct NoCache;

impl RootCache for NoCache {
    fn load(&self, _n: usize, _precision_bits: u32) -> Option<RootSet> {
        None
    }
    fn store(&self, _n: usize, _precision_bits: u32, _rs: &RootSet) {}
}

fn load_or_compute(
    p: &ExactPoly,
    prec: u32,
    warm: Option<&[MpComplex]>,
    cache: &dyn RootCache,
) -> RootSet {
    let n = p.degree();
    if let Some(rs) = cache.load(n, prec) {
        if rs.roots.len() == n && rs.precision_bits == prec {
            return rs;
        }
    }
    let rs = roots_all_seeded(p, prec, warm);
    cache.store(n, prec, &rs);
    rs
}

/// Certified minimum modulus of one polynomial: escalate precision by
/// doubling until two consecutive converged levels agree to
/// `target_digits` relative, or the cap is hit (`stable = false` then).
pub fn min_modulus_certified(
    p: &ExactPoly,
    profile: &PrecisionProfile,
    cache: &dyn RootCache,
) -> MinModResult {
    let tol = Float::with_val(64, 10).pow(-(profile.target_digits as i32));
    let mut prec = profile.start_bits;
    let mut cur = load_or_compute(p, prec, None, cache);
    loop {
        let next_prec = prec * 2;
        if next_prec > profile.cap_bits {
            return min_modulus(&cur);
        }
        let warm = if cur.converged { Some(&cur.roots[..]) } else { None };
        let next = load_or_compute(p, next_prec, warm, cache);
        if cur.converged && next.converged {
            let lo = min_modulus(&cur);
            let hi = min_modulus(&next);
            let denom = if hi.value.is_zero() {
                Float::with_val(next_prec, 1)
            } else {
                hi.value.clone()
            };
            let diff = Float::with_val(next_prec, &lo.value - &hi.value).abs() / denom;
            if diff <= tol {
                return MinModResult {
                    stable: true,
                    ..hi
                };
            }
        }
        cur = next;
        prec = next_prec;
    }
}

/// Certified minimum moduli for a whole family; entries are independent and
/// run on the worker pool, failures are recorded per entry
/// (`stable = false`) and the series continues.
pub fn min_modulus_series(
    polys: &[ExactPoly],
    profile: &PrecisionProfile,
    cache: &dyn RootCache,
) -> Vec<MinModResult> {
    polys
        .par_iter()
        .map(|p| min_modulus_certified(p, profile, cache))
        .collect()
}

/// Relative Vieta residuals of a root set against its exact polynomial:
/// (sum vs −a_{n−1}, product vs (−1)ⁿ·a₀).
pub fn vieta_residuals(p: &ExactPoly, rs: &RootSet) -> (Float, Float) {
    let prec = rs.precision_bits;
    let n = p.degree();
    let mut sum = MpComplex::zero(prec);
    let mut prod = MpComplex::real(Float::with_val(prec, 1));
    for z in &rs.roots {
        sum += z;
        prod = prod.mul_ref(z);
    }
    let a_top = Float::with_val(prec, p.coeff(n - 1));
    let a_zero = Float::with_val(prec, p.coeff(0));
    let expect_sum = MpComplex::real(Float::with_val(prec, -&a_top));
    let expect_prod = if n % 2 == 0 {
        MpComplex::real(a_zero.clone())
    } else {
        MpComplex::real(Float::with_val(prec, -&a_zero))
    };
    let scale_sum = Float::with_val(prec, a_top.clone().abs()).max(&Float::with_val(prec, 1));
    let scale_prod = Float::with_val(prec, a_zero.clone().abs()).max(&Float::with_val(prec, 1));
    let sum_res = (&sum - &expect_sum).abs() / scale_sum;
    let prod_res = (&prod - &expect_prod).abs() / scale_prod;
    (sum_res, prod_res)
}

/// Decimal rendering with a fixed number of significant digits (MPFR
/// formatting, deterministic).
pub fn format_significant(f: &Float, digits: usize) -> String {
    f.to_string_radix_round(10, Some(digits), Round::Nearest)
}

fn serialize_roots<S: Serializer>(
    roots: &[MpComplex],
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    let pairs: Vec<(String, String)> = roots.iter().map(|z| z.to_hex()).collect();
    pairs.serialize(ser)
}

impl Serialize for RootSet {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = ser.serialize_struct("RootSet", 5)?;
        s.serialize_field("precision_bits", &self.precision_bits)?;
        s.serialize_field("converged", &self.converged)?;
        s.serialize_field("iterations", &self.iterations)?;
        s.serialize_field("roots", &HexRoots(&self.roots))?;
        s.serialize_field("residuals", &self.residuals)?;
        s.end()
    }
}

struct HexRoots<'a>(&'a [MpComplex]);

impl Serialize for HexRoots<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_roots(self.0, ser)
    }
}

impl<'de> Deserialize<'de> for RootSet {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            precision_bits: u32,
            converged: bool,
            iterations: u32,
            roots: Vec<(String, String)>,
            residuals: Vec<f64>,
        }
        let raw = Raw::deserialize(de)?;
        if raw.residuals.len() != raw.roots.len() {
            return Err(D::Error::custom("residual/root count mismatch"));
        }
        let roots = raw
            .roots
            .iter()
            .map(|(re, im)| MpComplex::from_hex(re, im, raw.precision_bits))
            .collect::<crate::error::Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(RootSet {
            roots,
            residuals: raw.residuals,
            precision_bits: raw.precision_bits,
            converged: raw.converged,
            iterations: raw.iterations,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Integer;

    fn poly(coeffs: &[i64]) -> ExactPoly {
        ExactPoly::from_coeffs(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    fn sorted_moduli(rs: &RootSet) -> Vec<Float> {
        let mut m: Vec<Float> = rs.roots.iter().map(|z| z.abs()).collect();
        m.sort_by(|a, b| a.partial_cmp(b).unwrap());
        m
    }

    #[test]
    fn unit_roots() {
        // x² − 1.
        let rs = roots_all(&poly(&[-1, 0, 1]), 128);
        assert!(rs.converged);
        let m = sorted_moduli(&rs);
        assert!(Float::with_val(128, &m[0] - 1u32).abs() < 1e-35);
        assert!(Float::with_val(128, &m[1] - 1u32).abs() < 1e-35);
        let mm = min_modulus(&rs);
        assert!(Float::with_val(128, &mm.value - 1u32).abs() < 1e-35);
        assert!(mm.log10_value.unwrap().abs() < 1e-35);
    }

    #[test]
    fn quadratic_examples_match_the_quadratic_formula() {
        // x² + 48x + 504 has roots −24 ± √72.
        let prec = 384;
        let rs = roots_all(&poly(&[504, 48, 1]), prec);
        assert!(rs.converged);
        let sqrt72 = Float::with_val(prec, 72).sqrt();
        let lo = Float::with_val(prec, 24 - &sqrt72);
        let hi = Float::with_val(prec, 24 + &sqrt72);
        let m = sorted_moduli(&rs);
        assert!(Float::with_val(prec, &m[0] - &lo).abs() < 1e-100);
        assert!(Float::with_val(prec, &m[1] - &hi).abs() < 1e-100);

        // x² − 2x − 23 has roots 1 ± √24; min modulus √24 − 1.
        let rs = roots_all(&poly(&[-23, -2, 1]), prec);
        let expect = Float::with_val(prec, 24).sqrt() - 1u32;
        let mm = min_modulus(&rs);
        assert!(Float::with_val(prec, &mm.value - &expect).abs() < 1e-100);
    }

    #[test]
    fn degree_one_is_exact() {
        let rs = roots_all(&poly(&[-7, 1]), 128);
        assert!(rs.converged);
        assert_eq!(rs.roots[0].re, 7);
        let mm = min_modulus(&rs);
        assert_eq!(mm.value, 7);
        assert_eq!(mm.n, 1);
    }

    #[test]
    fn conjugate_symmetry_and_vieta() {
        // A polynomial with a genuinely complex root set:
        // (x²+x+7)(x²−3x+11)(x−2), expanded.
        // x⁵ − 4x⁴ + 19x³ − 19x² + 36x − 154
        let p = poly(&[-154, 36, -19, 19, -4, 1]);
        let rs = roots_all(&p, 256);
        assert!(rs.converged);
        let (s, q) = vieta_residuals(&p, &rs);
        assert!(s < 1e-60, "sum residual {s}");
        assert!(q < 1e-60, "product residual {q}");
        // Every root's conjugate is also a root.
        for z in &rs.roots {
            let c = z.conj();
            let closest = rs
                .roots
                .iter()
                .map(|w| (w - &c).abs())
                .min_by(|a, b| a.partial_cmp(b).unwrap())
                .unwrap();
            assert!(closest < 1e-60, "conjugate missing: {closest}");
        }
    }

    #[test]
    fn repeated_roots_still_come_out() {
        // (x−1)³(x+2)² = x⁵ + x⁴ − 5x³ + x² + 8x − 4... expand:
        // (x³−3x²+3x−1)(x²+4x+4)
        //   = x⁵ + x⁴ − 5x³ − x² + 8x − 4
        let p = poly(&[-4, 8, -1, -5, 1, 1]);
        let rs = roots_all(&p, 192);
        // Multiple roots converge slowly; accept either outcome but demand
        // the cluster means are right when converged.
        let near_one = rs
            .roots
            .iter()
            .filter(|z| Float::with_val(192, &z.re - 1u32).abs() < 1e-3 && z.im.clone().abs() < 1e-3)
            .count();
        let near_minus_two = rs
            .roots
            .iter()
            .filter(|z| Float::with_val(192, &z.re + 2u32).abs() < 1e-3 && z.im.clone().abs() < 1e-3)
            .count();
        assert_eq!(near_one, 3);
        assert_eq!(near_minus_two, 2);
    }

    #[test]
    fn certification_and_series() {
        let polys = vec![poly(&[-7, 1]), poly(&[-23, -2, 1]), poly(&[504, 48, 1])];
        let profile = PrecisionProfile::default();
        let out = min_modulus_series(&polys, &profile, &NoCache);
        assert_eq!(out.len(), 3);
        assert!(out.iter().all(|r| r.stable));
        assert_eq!(out[0].n, 1);
        let expect = Float::with_val(768, 24).sqrt() - 1u32;
        assert!(Float::with_val(768, &out[1].value - &expect).abs() < 1e-30);
        // Vieta product sanity: for x²+48x+504 the two moduli multiply to 504.
        let rs = roots_all(&polys[2], 384);
        let m = sorted_moduli(&rs);
        let prod = Float::with_val(384, &m[0] * &m[1]);
        assert!(Float::with_val(384, &prod - 504u32).abs() < 1e-80);
    }

    #[test]
    fn huge_coefficients_do_not_overflow() {
        // x² − 10^400: roots ±10^200, far outside f64 range.
        let big = Integer::from(10).pow(400u32);
        let p = ExactPoly::from_coeffs(vec![
            Rational::from(-big),
            Rational::new(),
            Rational::from(1),
        ]);
        let rs = roots_all(&p, 256);
        assert!(rs.converged);
        let mm = min_modulus(&rs);
        let expect = Float::with_val(256, Integer::from(10).pow(200u32));
        let rel = Float::with_val(256, &mm.value - &expect).abs() / expect;
        assert!(rel < 1e-60);
        assert!(
            (mm.log10_value.unwrap() - Float::with_val(256, 200)).abs() < 1e-50
        );
    }

    #[test]
    fn rootset_json_round_trip_is_bit_exact() {
        let rs = roots_all(&poly(&[-23, -2, 1]), 384);
        let json = serde_json::to_string(&rs).unwrap();
        let back: RootSet = serde_json::from_str(&json).unwrap();
        assert_eq!(rs, back);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }

    #[test]
    fn zero_constant_term_keeps_a_zero_root() {
        // x·(x²+2x+5) = x³+2x²+5x: one root exactly at the origin.
        let p = poly(&[0, 5, 2, 1]);
        let rs = roots_all(&p, 192);
        assert!(rs.converged);
        assert_eq!(rs.roots.len(), 3);
        let mm = min_modulus(&rs);
        assert!(mm.value.is_zero());
        assert!(mm.log10_value.is_none());
        // The origin root is exact, so certification is immediate.
        let out = min_modulus_certified(&p, &PrecisionProfile::default(), &NoCache);
        assert!(out.stable);
        assert!(out.value.is_zero());
    }
}
