//! Lower-envelope extraction from min-modulus series and the residue-mod-m
//! tables and block-length summaries built on top of it.
//!
//! An abscissa n is an envelope point when its value is a strict local
//! minimum within a ±w window; ties break toward the smaller n and
//! endpoints qualify against the neighbors that exist. The window and the
//! modulus are configurable so alternative envelope definitions can be
//! searched.

use serde::{Deserialize, Serialize};

/// Envelope abscissas plus the entries that had to be skipped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopePoints {
    pub window: usize,
    pub abscissas: Vec<u64>,
    /// (n, reason) for NaN/unstable entries excluded from consideration.
    pub excluded: Vec<(u64, String)>,
    /// Abscissas that won a tie against an equal-valued later neighbor.
    pub ties: Vec<u64>,
}

/// Residues of the envelope abscissas modulo m, with run-length blocks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeReport {
    /// Identifier of the series the envelope came from.
    pub source: String,
    pub window: usize,
    pub modulus: u32,
    pub abscissas: Vec<u64>,
    pub residues: Vec<u32>,
    /// Run-length encoding of `residues`: (residue, length).
    pub blocks: Vec<(u32, usize)>,
    pub excluded: Vec<(u64, String)>,
}

/// Run-length blocks plus the order in which residues appear.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockSummary {
    pub blocks: Vec<(u32, usize)>,
    /// First-appearance order of the block residues.
    pub cycle: Vec<u32>,
}

/// Strict local minima of a series within a ±`window` index range.
///
/// `series` must be ascending in n; non-finite values are excluded and
/// reported rather than compared.
pub fn lower_envelope(series: &[(u64, f64)], window: usize) -> EnvelopePoints {
    let window = window.max(1);
    let mut clean: Vec<(u64, f64)> = Vec::with_capacity(series.len());
    let mut excluded = Vec::new();
    for &(n, v) in series {
        if v.is_finite() {
            clean.push((n, v));
        } else {
            excluded.push((n, "non-finite value".to_string()));
        }
    }
    let mut abscissas = Vec::new();
    let mut ties = Vec::new();
    for (i, &(n, v)) in clean.iter().enumerate() {
        let lo = i.saturating_sub(window);
        let hi = (i + window).min(clean.len() - 1);
        let mut is_min = true;
        let mut tied = false;
        for (k, &(_, w)) in clean.iter().enumerate().take(hi + 1).skip(lo) {
            if k == i {
                continue;
            }
            if k < i {
                // Earlier neighbors must be strictly larger.
                if w <= v {
                    is_min = false;
                    break;
                }
            } else {
                // Ties with later neighbors break toward the smaller n.
                if w < v {
                    is_min = false;
                    break;
                }
                if w == v {
                    tied = true;
                }
            }
        }
        if is_min {
            abscissas.push(n);
            if tied {
                ties.push(n);
            }
        }
    }
    EnvelopePoints {
        window,
        abscissas,
        excluded,
        ties,
    }
}

/// Run-length encode a residue list.
fn run_lengths(residues: &[u32]) -> Vec<(u32, usize)> {
    let mut blocks: Vec<(u32, usize)> = Vec::new();
    for &r in residues {
        match blocks.last_mut() {
            Some((value, len)) if *value == r => *len += 1,
            _ => blocks.push((r, 1)),
        }
    }
    blocks
}

/// Replace abscissas by their residues modulo m and encode the blocks.
pub fn residue_table(points: &EnvelopePoints, modulus: u32) -> EnvelopeReport {
    assert!(modulus >= 2, "residues need a modulus of at least 2");
    let residues: Vec<u32> = points
        .abscissas
        .iter()
        .map(|&n| (n % modulus as u64) as u32)
        .collect();
    EnvelopeReport {
        source: String::new(),
        window: points.window,
        modulus,
        abscissas: points.abscissas.clone(),
        blocks: run_lengths(&residues),
        residues,
        excluded: points.excluded.clone(),
    }
}

/// Run-length blocks of a report plus the residue cycle order.
pub fn block_summary(report: &EnvelopeReport) -> BlockSummary {
    let blocks = report.blocks.clone();
    let mut cycle = Vec::new();
    for &(r, _) in &blocks {
        if !cycle.contains(&r) {
            cycle.push(r);
        }
    }
    BlockSummary { blocks, cycle }
}

/// Envelope abscissas for every window in 1..=max_window; the spec-level
/// tool for hunting alternative envelope definitions.
pub fn window_sweep(series: &[(u64, f64)], max_window: usize) -> Vec<EnvelopePoints> {
    (1..=max_window.max(1))
        .map(|w| lower_envelope(series, w))
        .collect()
}
