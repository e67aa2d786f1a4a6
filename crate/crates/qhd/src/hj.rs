//! Hirzebruch–Jung continued fractions and Riemenschneider duality.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HjError {
    #[error("invalid fraction {n}/{m}: need n > m >= 1 and gcd(n, m) = 1")]
    InvalidFraction { n: u64, m: u64 },
    #[error("invalid expansion: {0}")]
    InvalidExpansion(String),
    #[error("value of the expansion does not fit in 64 bits")]
    Overflow,
}

/// `[a1, ..., al]` with every `ai >= 2`, standing for `a1 - 1/(a2 - 1/(...))`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HJExpansion(Vec<u64>);

impl HJExpansion {
    pub fn new(coefficients: Vec<u64>) -> Result<Self, HjError> {
        if coefficients.is_empty() {
            return Err(HjError::InvalidExpansion("empty expansion".into()));
        }
        if let Some(a) = coefficients.iter().find(|&&a| a < 2) {
            return Err(HjError::InvalidExpansion(format!("coefficient {a} < 2")));
        }
        Ok(HJExpansion(coefficients))
    }

    /// Leg framings are the negated coefficients.
    pub fn from_framings(framings: &[i64]) -> Result<Self, HjError> {
        let coeffs = framings
            .iter()
            .map(|&f| {
                if f <= -2 {
                    Ok((-f) as u64)
                } else {
                    Err(HjError::InvalidExpansion(format!("framing {f} > -2")))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(coeffs)
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_framings(&self) -> Vec<i64> {
        self.0.iter().map(|&a| -(a as i64)).collect()
    }

    /// Dual expansion read off the Riemenschneider point diagram: row i holds
    /// `a_i - 1` points, each row starting under the last point of the previous
    /// one; column j of the diagram has `b_j - 1` points.
    pub fn dual(&self) -> HJExpansion {
        let width: u64 = self.0.iter().map(|a| a - 2).sum::<u64>() + 1;
        let mut columns = vec![0u64; width as usize];
        // the first point of each row sits under the last point of the row above
        let mut col = 0usize;
        for &a in &self.0 {
            for step in 0..(a - 1) as usize {
                if step > 0 {
                    col += 1;
                }
                columns[col] += 1;
            }
        }
        HJExpansion(columns.into_iter().map(|c| c + 1).collect())
    }
}

impl fmt::Display for HJExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

fn check_fraction(n: u64, m: u64) -> Result<(), HjError> {
    if m >= 1 && n > m && n.gcd(&m) == 1 {
        Ok(())
    } else {
        Err(HjError::InvalidFraction { n, m })
    }
}

/// Ceiling-division recursion: `a = ceil(n/m)`, then `(n, m) <- (m, a*m - n)`.
pub fn hj_expand(n: u64, m: u64) -> Result<HJExpansion, HjError> {
    check_fraction(n, m)?;
    let (mut n, mut m) = (n as u128, m as u128);
    let mut coeffs = Vec::new();
    while m > 0 {
        let a = n.div_ceil(m);
        coeffs.push(a as u64);
        let next = a * m - n;
        n = m;
        m = next;
    }
    Ok(HJExpansion(coeffs))
}

/// Exact value `n/m` of the expansion, in lowest terms.
pub fn hj_evaluate(e: &HJExpansion) -> Result<(u64, u64), HjError> {
    // Evaluate from the tail: the last coefficient alone is a/1.
    let mut n: u64 = *e.0.last().expect("nonempty expansion");
    let mut m: u64 = 1;
    for &a in e.0.iter().rev().skip(1) {
        let next = a.checked_mul(n).and_then(|v| v.checked_sub(m)).ok_or(HjError::Overflow)?;
        m = n;
        n = next;
    }
    Ok((n, m))
}

/// Expansion of `n/(n-m)`.
pub fn dual_expansion(n: u64, m: u64) -> Result<HJExpansion, HjError> {
    check_fraction(n, m)?;
    hj_expand(n, n - m)
}

/// Expansion of `p^2/(pq-1)`; its negation is a chain of the class G.
pub fn g_chain(p: u64, q: u64) -> Result<HJExpansion, HjError> {
    if !(0 < q && q < p && p.gcd(&q) == 1) {
        return Err(HjError::InvalidFraction { n: p, m: q });
    }
    let n = p.checked_mul(p).ok_or(HjError::Overflow)?;
    hj_expand(n, p * q - 1)
}
