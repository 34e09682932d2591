//! The main recursion for degrees of generalized Severi varieties.
//!
//! Intersecting `V^{d,δ}(α,β)` with the hyperplane of curves through a
//! general point `p` of the line `L` breaks it into two families of
//! components:
//!
//! * **contact** terms, where one free contact of order `k` moves to `p`
//!   (multiplicity `k`);
//! * **degenerate** terms, where the curve acquires `L` as a component and the
//!   residual curve of degree `d - 1` keeps a subset of the assigned contacts
//!   and gains new free ones.
//!
//! [`expand`] lists these terms with their branch data and [`degree`] sums
//! them recursively down to lines.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::memo::{Kind, MemoStore};
use crate::seq::TangencySeq;

/// Why a `(d, δ, α, β)` tuple does not index a Severi variety.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum KeyError {
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("weights must satisfy Iα + Iβ = d, got {alpha} + {beta} != {d}")]
    WeightMismatch { d: u32, alpha: u64, beta: u64 },
    #[error("δ = {delta} exceeds the maximum {max} nodes of a reduced degree {d} curve")]
    TooManyNodes { d: u32, delta: u32, max: u64 },
}

/// Index `(d, δ, α, β)` of a generalized Severi variety.
///
/// Ordered lexicographically by `(d, δ, α, β)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeveriKey {
    pub d: u32,
    pub delta: u32,
    pub alpha: TangencySeq,
    pub beta: TangencySeq,
}

/// `(d-1)(d-2)/2 - δ`; negative for curves with more nodes than an
/// irreducible curve can carry.
pub fn genus(d: u32, delta: u32) -> i64 {
    let d = i64::from(d);
    (d - 1) * (d - 2) / 2 - i64::from(delta)
}

/// Most nodes a reduced curve of degree `d` can have (`d` general lines).
pub fn max_nodes(d: u32) -> u64 {
    let d = u64::from(d);
    d * d.saturating_sub(1) / 2
}

impl SeveriKey {
    pub fn new(d: u32, delta: u32, alpha: TangencySeq, beta: TangencySeq) -> Self {
        SeveriKey {
            d,
            delta,
            alpha,
            beta,
        }
    }

    /// `V^{d,δ}(0, d·e_1)`: plane curves of degree `d` with `δ` nodes.
    pub fn classical(d: u32, delta: u32) -> Self {
        SeveriKey::new(d, delta, TangencySeq::zero(), TangencySeq::ones(d))
    }

    pub fn validate(&self) -> Result<(), KeyError> {
        if self.d == 0 {
            return Err(KeyError::ZeroDegree);
        }
        let (wa, wb) = (self.alpha.weight(), self.beta.weight());
        if wa + wb != u64::from(self.d) {
            return Err(KeyError::WeightMismatch {
                d: self.d,
                alpha: wa,
                beta: wb,
            });
        }
        let max = max_nodes(self.d);
        if u64::from(self.delta) > max {
            return Err(KeyError::TooManyNodes {
                d: self.d,
                delta: self.delta,
                max,
            });
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn genus(&self) -> i64 {
        genus(self.d, self.delta)
    }

    /// `2d + g - 1 + |β|` evaluated without checking the key.
    pub fn raw_dimension(&self) -> i64 {
        2 * i64::from(self.d) + self.genus() - 1 + self.beta.size() as i64
    }

    /// Dimension of the variety; every component has this dimension.
    pub fn dimension(&self) -> Result<u64> {
        self.validate()?;
        // Nonnegative for valid keys: at least d.
        Ok(self.raw_dimension() as u64)
    }
}

impl fmt::Display for SeveriKey {
    /// `(d,δ,α,β)`, with multi-entry sequences parenthesized: `(3,1,0,(1,1))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn seq(s: &TangencySeq) -> String {
            if s.len() > 1 {
                format!("({s})")
            } else {
                s.to_string()
            }
        }
        write!(
            f,
            "({},{},{},{})",
            self.d,
            self.delta,
            seq(&self.alpha),
            seq(&self.beta)
        )
    }
}

/// One component of the hyperplane section of a Severi variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecursionTerm {
    /// A free contact of order `k` becomes the assigned contact at `p`.
    Contact { k: usize, child: SeveriKey },
    /// The curve degenerates to `L` plus a curve of degree `d - 1`.
    Degenerate {
        child: SeveriKey,
        /// Ways to choose which assigned points the residual curve keeps.
        omega_choices: BigUint,
        /// Intersection multiplicity along one such choice, all branches.
        per_choice_multiplicity: BigUint,
        branch_count: BigUint,
        branch_multiplicity: u64,
    },
}

impl RecursionTerm {
    pub fn child(&self) -> &SeveriKey {
        match self {
            RecursionTerm::Contact { child, .. } | RecursionTerm::Degenerate { child, .. } => child,
        }
    }

    /// Total multiplicity the child contributes with.
    pub fn coefficient(&self) -> BigUint {
        match self {
            RecursionTerm::Contact { k, .. } => BigUint::from(*k),
            RecursionTerm::Degenerate {
                omega_choices,
                per_choice_multiplicity,
                ..
            } => omega_choices * per_choice_multiplicity,
        }
    }

    pub fn branch_count(&self) -> BigUint {
        match self {
            RecursionTerm::Contact { .. } => BigUint::from(1u32),
            RecursionTerm::Degenerate { branch_count, .. } => branch_count.clone(),
        }
    }

    pub fn branch_multiplicity(&self) -> u64 {
        match self {
            RecursionTerm::Contact { k, .. } => *k as u64,
            RecursionTerm::Degenerate {
                branch_multiplicity,
                ..
            } => *branch_multiplicity,
        }
    }

    pub fn is_contact(&self) -> bool {
        matches!(self, RecursionTerm::Contact { .. })
    }
}

/// Number of local branches along a degenerate component and the
/// intersection multiplicity of each with the hyperplane.
pub fn branch_profile(beta: &TangencySeq, beta_prime: &TangencySeq) -> Result<(BigUint, u64)> {
    let diff = beta_prime.sub(beta)?;
    let lcm = diff.lcm_support();
    let total = beta_prime.binom(beta) * diff.ipow();
    let lcm_big = BigUint::from(lcm);
    if &total % &lcm_big != BigUint::default() {
        return Err(Error::Integrity(format!(
            "branch count for {beta} -> {beta_prime} is not integral"
        )));
    }
    Ok((total / lcm_big, lcm))
}

/// All components of the hyperplane section of `V^{d,δ}(α,β)`.
///
/// Contact terms come first, ascending in `k`. Degenerate terms follow,
/// ordered by child node count descending, then `α'` descending, then `β'`
/// ascending (both lexicographic).
pub fn expand(key: &SeveriKey) -> Result<Vec<RecursionTerm>> {
    key.validate()?;
    if key.d < 2 {
        return Err(Error::Domain(
            "lines are the base case and do not expand".into(),
        ));
    }
    Ok(expand_terms(key, false))
}

/// `(k, (d, δ, α + e_k, β - e_k))` for each `k` with `β_k > 0`.
pub(crate) fn expand_contacts(key: &SeveriKey) -> Vec<(usize, SeveriKey)> {
    key.beta
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, &b)| b > 0)
        .map(|(i, _)| {
            let e = TangencySeq::unit(i + 1);
            let child = SeveriKey::new(
                key.d,
                key.delta,
                key.alpha.add(&e),
                key.beta.sub(&e).expect("β_k > 0"),
            );
            (i + 1, child)
        })
        .collect()
}

fn expand_terms(key: &SeveriKey, prune: bool) -> Vec<RecursionTerm> {
    let mut terms: Vec<RecursionTerm> = expand_contacts(key)
        .into_iter()
        .map(|(k, child)| RecursionTerm::Contact { k, child })
        .collect();

    let d1 = i64::from(key.d) - 1;
    let child_max = max_nodes(key.d - 1) as i64;
    let mut degenerate = Vec::new();
    for alpha_p in key.alpha.enumerate_leq() {
        let rest = d1 - alpha_p.weight() as i64 - key.beta.weight() as i64;
        if rest < 0 {
            continue;
        }
        let omega = key.alpha.binom(&alpha_p);
        for gained in TangencySeq::enumerate_weight(rest as u64) {
            let delta_p = i64::from(key.delta) - d1 + gained.size() as i64;
            if delta_p < 0 || (prune && delta_p > child_max) {
                continue;
            }
            let beta_p = key.beta.add(&gained);
            let (branch_count, branch_multiplicity) =
                branch_profile(&key.beta, &beta_p).expect("β ≤ β' by construction");
            let per_choice = &branch_count * BigUint::from(branch_multiplicity);
            degenerate.push(RecursionTerm::Degenerate {
                child: SeveriKey::new(key.d - 1, delta_p as u32, alpha_p.clone(), beta_p),
                omega_choices: omega.clone(),
                per_choice_multiplicity: per_choice,
                branch_count,
                branch_multiplicity,
            });
        }
    }
    degenerate.sort_by(|a, b| degenerate_order(a.child(), b.child()));
    terms.extend(degenerate);
    terms
}

fn degenerate_order(a: &SeveriKey, b: &SeveriKey) -> Ordering {
    b.delta
        .cmp(&a.delta)
        .then_with(|| b.alpha.cmp(&a.alpha))
        .then_with(|| a.beta.cmp(&b.beta))
}

/// Evaluation switches. None of them changes any result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    /// Consult and fill the memo store.
    pub memoize: bool,
    /// Evaluate degenerate subtrees on the rayon pool.
    pub parallel: bool,
    /// Skip degenerate terms whose child has more nodes than its degree allows.
    pub prune: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            memoize: true,
            parallel: false,
            prune: true,
        }
    }
}

impl EvalOptions {
    pub fn parallel() -> Self {
        EvalOptions {
            parallel: true,
            ..Self::default()
        }
    }
}

/// `N^{d,δ}(α,β)`; zero for keys that fail validation.
pub fn degree(key: &SeveriKey, memo: &MemoStore) -> BigUint {
    degree_with(key, memo, EvalOptions::default())
}

pub fn degree_with(key: &SeveriKey, memo: &MemoStore, opts: EvalOptions) -> BigUint {
    if !key.is_valid() {
        return BigUint::default();
    }
    if key.d == 1 {
        return BigUint::from(u32::from(key.delta == 0));
    }
    if opts.memoize {
        if let Some(v) = memo.lookup(Kind::Total, key) {
            return v;
        }
    }

    let terms = expand_terms(key, opts.prune);
    let contribution = |t: &RecursionTerm| -> BigUint {
        let child = degree_with(t.child(), memo, opts);
        if child == BigUint::default() {
            child
        } else {
            t.coefficient() * child
        }
    };
    let value: BigUint = if opts.parallel {
        terms.par_iter().map(contribution).sum()
    } else {
        terms.iter().map(contribution).sum()
    };

    if opts.memoize {
        memo.insert(Kind::Total, key.clone(), value.clone())
            .expect("recursion values are deterministic");
    }
    value
}

/// One row of a classical Severi degree table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub delta: u32,
    pub genus: i64,
    pub degree: BigUint,
}

/// Degrees of `V^{d,δ}` for every possible `δ`.
pub fn table(d: u32, memo: &MemoStore, opts: EvalOptions) -> Vec<TableRow> {
    (0..=max_nodes(d) as u32)
        .map(|delta| TableRow {
            delta,
            genus: genus(d, delta),
            degree: degree_with(&SeveriKey::classical(d, delta), memo, opts),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> TangencySeq {
        TangencySeq::new(v.to_vec())
    }

    fn key(d: u32, delta: u32, a: &[u32], b: &[u32]) -> SeveriKey {
        SeveriKey::new(d, delta, s(a), s(b))
    }

    #[test]
    fn genus_values() {
        assert_eq!(genus(4, 3), 0);
        assert_eq!(genus(5, 6), 0);
        assert_eq!(genus(6, 15), -5);
    }

    #[test]
    fn validation() {
        assert!(key(4, 3, &[], &[4]).is_valid());
        assert!(matches!(
            key(4, 3, &[1], &[4]).validate(),
            Err(KeyError::WeightMismatch { .. })
        ));
        assert!(matches!(
            key(1, 1, &[], &[1]).validate(),
            Err(KeyError::TooManyNodes { .. })
        ));
        assert_eq!(key(0, 0, &[], &[]).validate(), Err(KeyError::ZeroDegree));
    }

    #[test]
    fn dimensions() {
        assert_eq!(key(4, 3, &[], &[4]).dimension().unwrap(), 11);
        assert_eq!(key(1, 0, &[1], &[]).dimension().unwrap(), 1);
        assert_eq!(key(5, 6, &[], &[5]).dimension().unwrap(), 14);
        assert!(key(4, 3, &[1], &[4]).dimension().is_err());
    }

    #[test]
    fn branch_profiles() {
        let one = BigUint::from(1u32);
        assert_eq!(
            branch_profile(&s(&[]), &s(&[0, 0, 1])).unwrap(),
            (one.clone(), 3)
        );
        assert_eq!(
            branch_profile(&s(&[2, 1]), &s(&[2, 1])).unwrap(),
            (one.clone(), 1)
        );
        assert_eq!(branch_profile(&s(&[1]), &s(&[1, 1])).unwrap(), (one, 2));
        assert!(branch_profile(&s(&[0, 1]), &s(&[1])).is_err());
    }

    #[test]
    fn expand_worked_example_step() {
        let terms = expand(&key(4, 3, &[2], &[2])).unwrap();
        let got: Vec<(String, BigUint)> = terms
            .iter()
            .map(|t| (t.child().to_string(), t.coefficient()))
            .collect();
        let want: Vec<(String, BigUint)> = vec![
            ("(4,3,3,1)".into(), 1u32.into()),
            ("(3,1,0,3)".into(), 3u32.into()),
            ("(3,0,1,2)".into(), 2u32.into()),
        ];
        assert_eq!(got, want);
        assert!(terms[0].is_contact());
    }

    #[test]
    fn expand_all_assigned() {
        // Final step of the quartic example: seven degenerate components.
        let terms = expand(&key(4, 3, &[4], &[])).unwrap();
        let children: Vec<String> = terms.iter().map(|t| t.child().to_string()).collect();
        assert_eq!(
            children,
            [
                "(3,3,0,3)",
                "(3,2,1,2)",
                "(3,2,0,(1,1))",
                "(3,1,2,1)",
                "(3,1,1,(0,1))",
                "(3,1,0,(0,0,1))",
                "(3,0,3,0)"
            ]
        );
        let coeffs: Vec<BigUint> = terms.iter().map(RecursionTerm::coefficient).collect();
        let want: Vec<BigUint> = [1u32, 4, 2, 6, 8, 3, 4]
            .into_iter()
            .map(Into::into)
            .collect();
        assert_eq!(coeffs, want);
    }

    #[test]
    fn expand_conic() {
        let terms = expand(&key(2, 0, &[], &[2])).unwrap();
        assert_eq!(
            terms[0],
            RecursionTerm::Contact {
                k: 1,
                child: key(2, 0, &[1], &[1])
            }
        );
        assert!(terms[1..]
            .iter()
            .all(|t| !t.is_contact() && t.child().d == 1));
        assert!(expand(&key(1, 0, &[1], &[])).is_err());
        assert!(expand(&key(2, 0, &[1], &[2])).is_err());
    }

    #[test]
    fn base_cases_and_small_degrees() {
        let m = MemoStore::new();
        assert_eq!(degree(&key(1, 0, &[1], &[]), &m), 1u32.into());
        assert_eq!(degree(&key(1, 0, &[], &[1]), &m), 1u32.into());
        assert_eq!(degree(&key(3, 1, &[], &[3]), &m), 12u32.into());
        assert_eq!(degree(&key(4, 3, &[], &[4]), &m), 675u32.into());
    }

    #[test]
    fn invalid_keys_vanish() {
        let m = MemoStore::new();
        assert_eq!(degree(&key(3, 4, &[], &[3]), &m), 0u32.into());
        assert_eq!(degree(&key(3, 1, &[1], &[3]), &m), 0u32.into());
        assert_eq!(degree(&key(0, 0, &[], &[]), &m), 0u32.into());
        assert!(m.is_empty());
    }

    #[test]
    fn table_of_lines() {
        let m = MemoStore::new();
        let t = table(1, &m, EvalOptions::default());
        assert_eq!(
            t,
            vec![TableRow {
                delta: 0,
                genus: 0,
                degree: 1u32.into()
            }]
        );
    }
}
