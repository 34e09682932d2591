//! Tangency sequences and the exact combinatorics built on them.
//!
//! A tangency sequence is a finitely supported sequence of nonnegative
//! integers; entry `i` (1-based) counts contact points of order `i` with the
//! fixed line. Sequences are stored without trailing zeros so that equality
//! and hashing agree with the mathematical object.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use parking_lot::RwLock;

use crate::error::{Error, Result};

/// A finitely supported sequence of nonnegative integers in canonical form.
///
/// Ordering is lexicographic on the stored entries, so the zero sequence is
/// the smallest element and `(1) < (1,1) < (2)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TangencySeq(Vec<u32>);

impl TangencySeq {
    /// The zero sequence.
    pub fn zero() -> Self {
        TangencySeq(Vec::new())
    }

    /// Builds a sequence from raw entries, trimming trailing zeros.
    pub fn new(entries: impl Into<Vec<u32>>) -> Self {
        let mut v = entries.into();
        while v.last() == Some(&0) {
            v.pop();
        }
        TangencySeq(v)
    }

    /// `e_k`: zero except for a single 1 at (1-based) index `k`.
    pub fn unit(k: usize) -> Self {
        assert!(k >= 1, "unit sequence index is 1-based");
        let mut v = vec![0; k];
        v[k - 1] = 1;
        TangencySeq(v)
    }

    /// `n · e_1`, the sequence imposing no condition on a degree `n` curve.
    pub fn ones(n: u32) -> Self {
        TangencySeq::new(vec![n])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// Entry at 1-based index `i`; zero beyond the stored support.
    pub fn get(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of stored entries (index of the last nonzero entry).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|a|`, the sum of the entries.
    pub fn size(&self) -> u64 {
        self.0.iter().map(|&x| u64::from(x)).sum()
    }

    /// `Ia = Σ i·a_i`.
    pub fn weight(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &x)| (i as u64 + 1) * u64::from(x))
            .sum()
    }

    /// `I^a = Π i^{a_i}`.
    pub fn ipow(&self) -> BigUint {
        let mut acc = BigUint::one();
        for (i, &x) in self.0.iter().enumerate() {
            if x > 0 && i > 0 {
                acc *= BigUint::from(i as u64 + 1).pow(x);
            }
        }
        acc
    }

    /// lcm of the indices carrying a nonzero entry; 1 for the zero sequence.
    pub fn lcm_support(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > 0)
            .fold(1u64, |acc, (i, _)| acc.lcm(&(i as u64 + 1)))
    }

    /// Componentwise `self ≤ other`.
    pub fn leq(&self, other: &TangencySeq) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &TangencySeq) -> TangencySeq {
        let n = self.0.len().max(other.0.len());
        let v: Vec<u32> = (1..=n).map(|i| self.get(i) + other.get(i)).collect();
        TangencySeq::new(v)
    }

    /// Componentwise difference; fails unless `other ≤ self`.
    pub fn sub(&self, other: &TangencySeq) -> Result<TangencySeq> {
        if !other.leq(self) {
            return Err(Error::Domain(format!(
                "cannot subtract {other} from {self}: not componentwise smaller"
            )));
        }
        let v: Vec<u32> = (1..=self.0.len())
            .map(|i| self.get(i) - other.get(i))
            .collect();
        Ok(TangencySeq::new(v))
    }

    /// `(a choose b) = Π C(a_i, b_i)`; zero unless `b ≤ a`.
    pub fn binom(&self, b: &TangencySeq) -> BigUint {
        if !b.leq(self) {
            return BigUint::default();
        }
        let mut acc = BigUint::one();
        for (i, &x) in self.0.iter().enumerate() {
            let y = b.get(i + 1);
            if y > 0 && y < x {
                acc *= binomial(u64::from(x), u64::from(y));
            }
        }
        acc
    }

    /// Every `b ≤ self`, each exactly once, in lexicographic order of entries.
    pub fn enumerate_leq(&self) -> LeqIter {
        LeqIter {
            bound: self.0.clone(),
            current: Some(vec![0; self.0.len()]),
        }
    }

    /// Every sequence of weight `n`, each exactly once.
    ///
    /// Order: descending by the multiplicity of part 1, then of part 2, and so
    /// on; i.e. reverse lexicographic on entries, starting from `(n)`.
    pub fn enumerate_weight(n: u64) -> Vec<TangencySeq> {
        fn rec(rest: u64, part: u64, cur: &mut Vec<u32>, out: &mut Vec<TangencySeq>) {
            if rest == 0 {
                out.push(TangencySeq::new(cur.clone()));
                return;
            }
            if part > rest {
                return;
            }
            for m in (0..=rest / part).rev() {
                cur.push(m as u32);
                rec(rest - m * part, part + 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, 1, &mut Vec::new(), &mut out);
        out
    }
}

/// Iterator over all sequences componentwise below a bound.
pub struct LeqIter {
    bound: Vec<u32>,
    current: Option<Vec<u32>>,
}

impl Iterator for LeqIter {
    type Item = TangencySeq;

    fn next(&mut self) -> Option<TangencySeq> {
        let cur = self.current.take()?;
        let out = TangencySeq::new(cur.clone());
        // Odometer with the last index varying fastest gives lexicographic order.
        let mut next = cur;
        let mut i = next.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if next[i] < self.bound[i] {
                next[i] += 1;
                for x in &mut next[i + 1..] {
                    *x = 0;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

impl fmt::Display for TangencySeq {
    /// Comma-separated canonical entries; the zero sequence renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for TangencySeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(TangencySeq::zero());
        }
        let entries = s
            .split(',')
            .map(|part| {
                let part = part.trim();
                part.parse::<u32>().map_err(|_| {
                    Error::Parse(format!(
                        "invalid sequence entry {part:?} in {s:?}: expected a nonnegative integer"
                    ))
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        Ok(TangencySeq::new(entries))
    }
}

impl From<Vec<u32>> for TangencySeq {
    fn from(v: Vec<u32>) -> Self {
        TangencySeq::new(v)
    }
}

static FACTORIALS: OnceLock<RwLock<Vec<BigUint>>> = OnceLock::new();

/// `n!`, served from a table that grows to the largest `n` requested.
pub fn factorial(n: u64) -> BigUint {
    let table = FACTORIALS.get_or_init(|| RwLock::new(vec![BigUint::one()]));
    let n = n as usize;
    if let Some(v) = table.read().get(n) {
        return v.clone();
    }
    let mut t = table.write();
    while t.len() <= n {
        let next = t.last().unwrap() * BigUint::from(t.len());
        t.push(next);
    }
    t[n].clone()
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `n! / (a_1! ⋯ a_k! (n - Σa)!)`, remainder slot included.
pub fn multinomial(n: u64, parts: &[u64]) -> Result<BigUint> {
    let total: u64 = parts.iter().sum();
    if total > n {
        return Err(Error::Domain(format!(
            "multinomial parts sum to {total}, exceeding {n}"
        )));
    }
    let denom = parts
        .iter()
        .fold(factorial(n - total), |acc, &p| acc * factorial(p));
    Ok(factorial(n) / denom)
}

/// `Π_i multinomial(a_i, [p_i for p in parts])`; zero when `Σ parts ≰ a`.
pub fn multinomial_seq(a: &TangencySeq, parts: &[TangencySeq]) -> BigUint {
    let len = parts
        .iter()
        .map(TangencySeq::len)
        .max()
        .unwrap_or(0)
        .max(a.len());
    let mut acc = BigUint::one();
    for i in 1..=len {
        let row: Vec<u64> = parts.iter().map(|p| u64::from(p.get(i))).collect();
        match multinomial(u64::from(a.get(i)), &row) {
            Ok(m) => acc *= m,
            Err(_) => return BigUint::default(),
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> TangencySeq {
        TangencySeq::new(v.to_vec())
    }

    #[test]
    fn size_weight_ipow() {
        assert_eq!(s(&[]).size(), 0);
        assert_eq!(s(&[4]).size(), 4);
        assert_eq!(s(&[1, 2]).size(), 3);
        assert_eq!(s(&[]).weight(), 0);
        assert_eq!(s(&[1, 2]).weight(), 5);
        assert_eq!(s(&[0, 0, 1]).weight(), 3);
        assert_eq!(s(&[]).ipow(), BigUint::from(1u32));
        assert_eq!(s(&[0, 1]).ipow(), BigUint::from(2u32));
        assert_eq!(s(&[1, 1, 1]).ipow(), BigUint::from(6u32));
    }

    #[test]
    fn binom_and_lcm() {
        assert_eq!(s(&[4]).binom(&s(&[3])), BigUint::from(4u32));
        assert_eq!(s(&[2, 1]).binom(&s(&[1, 1])), BigUint::from(2u32));
        assert_eq!(s(&[1]).binom(&s(&[2])), BigUint::from(0u32));
        assert_eq!(s(&[]).lcm_support(), 1);
        assert_eq!(s(&[0, 1]).lcm_support(), 2);
        assert_eq!(s(&[1, 1, 0, 1]).lcm_support(), 4);
        assert_eq!(s(&[0, 2, 3]).lcm_support(), 6);
    }

    #[test]
    fn arithmetic() {
        assert_eq!(s(&[1]).add(&s(&[0, 1])), s(&[1, 1]));
        assert_eq!(s(&[2, 1]).sub(&s(&[1])).unwrap(), s(&[1, 1]));
        assert_eq!(s(&[0, 1]).sub(&s(&[0, 1])).unwrap(), s(&[]));
        assert!(s(&[1]).sub(&s(&[0, 1])).is_err());
        assert_eq!(TangencySeq::unit(3), s(&[0, 0, 1]));
        assert!(s(&[1, 0, 0]).leq(&s(&[1])));
    }

    #[test]
    fn canonical_form() {
        assert_eq!(s(&[1, 0, 0]).entries(), &[1]);
        assert_eq!(s(&[0, 0]), TangencySeq::zero());
    }

    #[test]
    fn enumerations() {
        let v: Vec<_> = s(&[2]).enumerate_leq().collect();
        assert_eq!(v, vec![s(&[]), s(&[1]), s(&[2])]);
        assert_eq!(s(&[]).enumerate_leq().collect::<Vec<_>>(), vec![s(&[])]);
        assert_eq!(s(&[1, 1]).enumerate_leq().count(), 4);

        assert_eq!(TangencySeq::enumerate_weight(0), vec![s(&[])]);
        assert_eq!(
            TangencySeq::enumerate_weight(3),
            vec![s(&[3]), s(&[1, 1]), s(&[0, 0, 1])]
        );
        assert_eq!(TangencySeq::enumerate_weight(5).len(), 7);
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(4, &[2, 2]).unwrap(), BigUint::from(6u32));
        assert_eq!(multinomial(5, &[2, 2]).unwrap(), BigUint::from(30u32));
        assert_eq!(multinomial(7, &[]).unwrap(), BigUint::from(1u32));
        assert!(multinomial(3, &[2, 2]).is_err());
        assert_eq!(
            multinomial_seq(&s(&[2]), &[s(&[1]), s(&[1])]),
            BigUint::from(2u32)
        );
        assert_eq!(multinomial_seq(&s(&[3]), &[s(&[1])]), BigUint::from(3u32));
        assert_eq!(multinomial_seq(&s(&[3, 1]), &[]), BigUint::from(1u32));
        assert_eq!(
            multinomial_seq(&s(&[1]), &[s(&[1]), s(&[1])]),
            BigUint::from(0u32)
        );
    }

    #[test]
    fn render_and_parse() {
        assert_eq!(s(&[1, 0, 2]).to_string(), "1,0,2");
        assert_eq!(s(&[]).to_string(), "0");
        assert_eq!("1,0,2,0,0".parse::<TangencySeq>().unwrap(), s(&[1, 0, 2]));
        assert_eq!("0".parse::<TangencySeq>().unwrap(), s(&[]));
        assert_eq!("".parse::<TangencySeq>().unwrap(), s(&[]));
        assert!("1,-2".parse::<TangencySeq>().is_err());
        assert!("a".parse::<TangencySeq>().is_err());
        assert!("1,,2".parse::<TangencySeq>().is_err());
    }
}
