//! Straightforward exact-arithmetic transcription of the split and dataset
//! measures, written without reference to the library's code paths.
//!
//! Inputs are raw count matrices and fold index vectors. Everything except
//! entropy is computed over `BigRational` and only converted to `f64` at the
//! end.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

fn q(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn to_f64(v: &BigRational) -> f64 {
    v.to_f64().expect("finite rational")
}

fn exact(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite float")
}

/// Pixels of class `c` over the samples in fold `k`.
fn fold_pixels(counts: &[Vec<u64>], fold_of: &[usize], k: usize, c: usize) -> u64 {
    counts
        .iter()
        .zip(fold_of)
        .filter(|(_, &f)| f == k)
        .map(|(row, _)| row[c])
        .sum()
}

fn class_total(counts: &[Vec<u64>], c: usize) -> u64 {
    counts.iter().map(|row| row[c]).sum()
}

pub fn sd(fold_of: &[usize], proportions: &[f64]) -> f64 {
    let n = q(fold_of.len() as u64);
    let k = proportions.len();
    let mut total = BigRational::zero();
    for (fold, &r) in proportions.iter().enumerate() {
        let size = q(fold_of.iter().filter(|&&f| f == fold).count() as u64);
        total += (size - exact(r) * &n).abs();
    }
    to_f64(&(total / q(k as u64)))
}

/// `None` when no class qualifies.
pub fn pld(counts: &[Vec<u64>], fold_of: &[usize], k: usize) -> Option<f64> {
    let c_count = counts[0].len();
    let p: u64 = counts.iter().flatten().sum();
    let mut class_terms = Vec::new();
    for c in 0..c_count {
        let pc = class_total(counts, c);
        if pc == 0 || pc == p {
            continue;
        }
        let global = q(pc) / q(p - pc);
        let mut acc = BigRational::zero();
        for fold in 0..k {
            let inside = fold_pixels(counts, fold_of, fold, c);
            let outside = if pc == inside { 1 } else { pc - inside };
            acc += (q(inside) / q(outside) - &global).abs();
        }
        class_terms.push(acc / q(k as u64));
    }
    if class_terms.is_empty() {
        return None;
    }
    let n = q(class_terms.len() as u64);
    let sum = class_terms.into_iter().fold(BigRational::zero(), |a, b| a + b);
    Some(to_f64(&(sum / n)))
}

pub fn lwd(counts: &[Vec<u64>], fold_of: &[usize], k: usize) -> Option<f64> {
    let c_count = counts[0].len();
    let p: u64 = counts.iter().flatten().sum();
    let mut total = BigRational::zero();
    for fold in 0..k {
        let fold_total: u64 = (0..c_count).map(|c| fold_pixels(counts, fold_of, fold, c)).sum();
        if fold_total == 0 {
            return None;
        }
        let mut f_global = BigRational::zero();
        let mut f_fold = BigRational::zero();
        for c in 0..c_count {
            f_global += q(class_total(counts, c)) / q(p);
            f_fold += q(fold_pixels(counts, fold_of, fold, c)) / q(fold_total);
            total += (&f_global - &f_fold).abs();
        }
    }
    Some(to_f64(&(total / q(k as u64))))
}

pub fn cc(counts: &[Vec<u64>]) -> f64 {
    let present: u64 = counts
        .iter()
        .map(|row| row.iter().filter(|&&v| v > 0).count() as u64)
        .sum();
    to_f64(&(q(present) / q(counts.len() as u64)))
}

pub fn cu(counts: &[Vec<u64>]) -> f64 {
    let c_count = counts[0].len();
    let total: u64 = (0..c_count)
        .map(|c| counts.iter().filter(|row| row[c] > 0).count() as u64)
        .sum();
    to_f64(&(q(total) / q(c_count as u64)))
}

pub fn air(counts: &[Vec<u64>]) -> f64 {
    let totals: Vec<u64> = (0..counts[0].len()).map(|c| class_total(counts, c)).collect();
    let max = *totals.iter().max().unwrap();
    let present: Vec<u64> = totals.into_iter().filter(|&t| t > 0).collect();
    let sum = present
        .iter()
        .fold(BigRational::zero(), |acc, &t| acc + q(max) / q(t));
    to_f64(&(sum / q(present.len() as u64)))
}

/// `ln P - (1/P) * sum_c P_c ln P_c`, algebraically equal to `-sum p_c ln p_c`.
pub fn entropy(counts: &[Vec<u64>]) -> f64 {
    let totals: Vec<f64> = (0..counts[0].len())
        .map(|c| class_total(counts, c) as f64)
        .collect();
    let p: f64 = totals.iter().sum();
    let weighted: f64 = totals.iter().filter(|&&t| t > 0.0).map(|t| t * t.ln()).sum();
    p.ln() - weighted / p
}

/// Minimum LWD over every K = 2 assignment with fold sizes `sizes`, by
/// enumerating all 2^N bitmasks.
pub fn brute_force_min_lwd_two_folds(counts: &[Vec<u64>], sizes: [usize; 2]) -> (f64, u64) {
    let n = counts.len();
    let mut best: Option<BigRational> = None;
    let mut feasible = 0u64;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != sizes[1] {
            continue;
        }
        feasible += 1;
        let fold_of: Vec<usize> = (0..n).map(|i| ((mask >> i) & 1) as usize).collect();
        let v = lwd_exact(counts, &fold_of, 2);
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
    }
    (to_f64(&best.unwrap()), feasible)
}

fn lwd_exact(counts: &[Vec<u64>], fold_of: &[usize], k: usize) -> BigRational {
    let c_count = counts[0].len();
    let p: u64 = counts.iter().flatten().sum();
    let mut total = BigRational::zero();
    for fold in 0..k {
        let fold_total: u64 = (0..c_count).map(|c| fold_pixels(counts, fold_of, fold, c)).sum();
        let mut f_global = BigRational::zero();
        let mut f_fold = BigRational::zero();
        for c in 0..c_count {
            f_global += q(class_total(counts, c)) / q(p);
            f_fold += q(fold_pixels(counts, fold_of, fold, c)) / q(fold_total);
            total += (&f_global - &f_fold).abs();
        }
    }
    total / q(k as u64)
}
