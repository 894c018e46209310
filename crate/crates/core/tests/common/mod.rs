//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `(1/n) * sum |O_ij - E_ij|` with `E_ij = row_i * col_j / n`, all rational.
pub fn rq_rxc_rational(cells: &[Vec<u64>]) -> BigRational {
    let rows: Vec<BigRational> = cells
        .iter()
        .map(|r| r.iter().fold(rat(0), |acc, &c| acc + rat(c as i64)))
        .collect();
    let cols: Vec<BigRational> = (0..cells[0].len())
        .map(|j| cells.iter().fold(rat(0), |acc, r| acc + rat(r[j] as i64)))
        .collect();
    let n = rows.iter().fold(rat(0), |acc, r| acc + r);
    let mut sum = rat(0);
    for (i, row) in cells.iter().enumerate() {
        for (j, &obs) in row.iter().enumerate() {
            let expected = &rows[i] * &cols[j] / &n;
            sum += (rat(obs as i64) - expected).abs();
        }
    }
    sum / n
}

/// `4|ad - bc| / n^2`, rational.
pub fn rq_2x2_rational(a: u64, b: u64, c: u64, d: u64) -> BigRational {
    let n = (a + b + c + d) as i64;
    let diff = (a * d) as i64 - (b * c) as i64;
    rat(4 * diff.abs()) / rat(n * n)
}

/// Exact eta squared `SS_b / (SS_b + SS_w)` on the exact binary values of
/// the observations.
pub fn eta_sq_rational(groups: &[Vec<f64>]) -> BigRational {
    let exact: Vec<Vec<BigRational>> = groups
        .iter()
        .map(|g| {
            g.iter()
                .map(|&v| BigRational::from_float(v).unwrap())
                .collect()
        })
        .collect();
    let count = |g: &[BigRational]| rat(g.len() as i64);
    let total_n = exact.iter().fold(rat(0), |acc, g| acc + count(g));
    let grand = exact.iter().flatten().fold(rat(0), |acc, v| acc + v) / &total_n;
    let mut ss_b = rat(0);
    let mut ss_w = rat(0);
    for g in &exact {
        let mean = g.iter().fold(rat(0), |acc, v| acc + v) / count(g);
        let dev = &mean - &grand;
        ss_b += count(g) * &dev * &dev;
        for v in g {
            let d = v - &mean;
            ss_w += &d * &d;
        }
    }
    let total = &ss_b + &ss_w;
    if total.is_zero() {
        return rat(0);
    }
    ss_b / total
}

pub fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap()
}

/// Distance in units in the last place between two finite doubles of the
/// same sign.
pub fn ulps(a: f64, b: f64) -> u64 {
    if a == b {
        return 0;
    }
    assert!(a.signum() == b.signum() || a == 0.0 || b == 0.0);
    (a.abs().to_bits() as i64 - b.abs().to_bits() as i64).unsigned_abs()
}

fn ln_factorial(k: u64) -> f64 {
    (1..=k).map(|i| (i as f64).ln()).sum()
}

/// Every fourfold table with total `n` and its multinomial probability.
pub fn multinomial_outcomes(probs: [f64; 4], n: u64) -> Vec<([u64; 4], f64)> {
    let mut out = Vec::new();
    for a in 0..=n {
        for b in 0..=n - a {
            for c in 0..=n - a - b {
                let d = n - a - b - c;
                let counts = [a, b, c, d];
                let mut log_p = ln_factorial(n);
                let mut impossible = false;
                for (&k, &p) in counts.iter().zip(&probs) {
                    log_p -= ln_factorial(k);
                    if k > 0 {
                        if p == 0.0 {
                            impossible = true;
                        } else {
                            log_p += k as f64 * p.ln();
                        }
                    }
                }
                out.push((counts, if impossible { 0.0 } else { log_p.exp() }));
            }
        }
    }
    out
}

/// `|ad - bc| / (|ad - bc| + n^2/4)` from integer cells.
pub fn nb_from_counts(c: [u64; 4]) -> f64 {
    let n = (c[0] + c[1] + c[2] + c[3]) as f64;
    let diff = ((c[0] * c[3]) as f64 - (c[1] * c[2]) as f64).abs();
    diff / (diff + n * n / 4.0)
}

/// Exact expectation of the plug-in nb under multinomial(n, probs).
pub fn exact_mean_nb(probs: [f64; 4], n: u64) -> f64 {
    multinomial_outcomes(probs, n)
        .into_iter()
        .map(|(c, p)| p * nb_from_counts(c))
        .sum()
}

/// Upper chi-square quantile by the Wilson-Hilferty approximation; `z` is
/// the matching standard normal quantile.
pub fn chi_square_upper(df: f64, z: f64) -> f64 {
    let k = 2.0 / (9.0 * df);
    df * (1.0 - k + z * k.sqrt()).powi(3)
}

/// Pearson goodness-of-fit statistic and degrees of freedom, pooling cells
/// with expected count below 5.
pub fn chi_square_gof(observed: &[u64], probs: &[f64], draws: u64) -> (f64, usize) {
    let mut stat = 0.0;
    let mut bins = 0;
    let (mut pooled_obs, mut pooled_exp) = (0.0, 0.0);
    for (&o, &p) in observed.iter().zip(probs) {
        let e = p * draws as f64;
        if e < 5.0 {
            pooled_obs += o as f64;
            pooled_exp += e;
        } else {
            stat += (o as f64 - e).powi(2) / e;
            bins += 1;
        }
    }
    if pooled_exp > 0.0 {
        stat += (pooled_obs - pooled_exp).powi(2) / pooled_exp;
        bins += 1;
    }
    (stat, bins - 1)
}
