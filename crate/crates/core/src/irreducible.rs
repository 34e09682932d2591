//! Degrees of the irreducible parts `V_{d,δ}(α,β)` of Severi varieties.
//!
//! The contact terms are the same as for the full variety. A degenerate
//! component now splits the residual curve into irreducible pieces
//! `X_1, …, X_k` with `Σ d_j = d - 1`, each meeting `L` in new free points
//! `γ^j` (at least one, since the limit of irreducible curves is connected).

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::memo::{Kind, MemoStore};
use crate::seq::{binomial, factorial, multinomial, multinomial_seq, TangencySeq};
use crate::severi::{expand_contacts, genus, max_nodes, EvalOptions, SeveriKey};

/// One irreducible piece `(d_j, δ_j, α^j, β^j, γ^j)` of a degenerate curve.
///
/// `β^j` are the piece's share of the parent's free contacts, `γ^j` its new
/// ones; the piece itself is counted by `N_{d_j,δ_j}(α^j, β^j + γ^j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentTuple {
    pub d: u32,
    pub delta: u32,
    pub alpha: TangencySeq,
    pub beta: TangencySeq,
    pub gamma: TangencySeq,
}

impl ComponentTuple {
    pub fn child(&self) -> SeveriKey {
        SeveriKey::new(
            self.d,
            self.delta,
            self.alpha.clone(),
            self.beta.add(&self.gamma),
        )
    }

    pub fn genus(&self) -> i64 {
        genus(self.d, self.delta)
    }
}

impl fmt::Display for ComponentTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{};{};{};{};{}]",
            self.d, self.delta, self.alpha, self.beta, self.gamma
        )
    }
}

/// A splitting of the residual curve, as a sorted list of pieces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentMultiset(Vec<ComponentTuple>);

impl ComponentMultiset {
    /// Sorts the pieces into canonical order.
    pub fn new(mut tuples: Vec<ComponentTuple>) -> Self {
        tuples.sort();
        ComponentMultiset(tuples)
    }

    pub fn tuples(&self) -> &[ComponentTuple] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Product of the factorials of the multiplicities of identical pieces.
    pub fn sigma(&self) -> BigUint {
        let mut acc = BigUint::one();
        let mut run = 0u64;
        for (i, t) in self.0.iter().enumerate() {
            run = if i > 0 && self.0[i - 1] == *t {
                run + 1
            } else {
                1
            };
            let next_differs = self.0.get(i + 1) != Some(t);
            if next_differs {
                acc *= factorial(run);
            }
        }
        acc
    }

    /// Checks every constraint a splitting of `key` must satisfy.
    pub fn is_splitting_of(&self, key: &SeveriKey) -> bool {
        let tuples = &self.0;
        if tuples.is_empty() || !tuples.windows(2).all(|w| w[0] <= w[1]) {
            return false;
        }
        let per_piece_ok = tuples.iter().all(|t| {
            t.d >= 1
                && t.gamma.size() > 0
                && t.alpha.weight() + t.beta.weight() + t.gamma.weight() == u64::from(t.d)
                && u64::from(t.delta) <= max_nodes(t.d)
        });
        if !per_piece_ok {
            return false;
        }
        let sum_d: u64 = tuples.iter().map(|t| u64::from(t.d)).sum();
        let sum_alpha = tuples
            .iter()
            .fold(TangencySeq::zero(), |acc, t| acc.add(&t.alpha));
        let sum_beta = tuples
            .iter()
            .fold(TangencySeq::zero(), |acc, t| acc.add(&t.beta));
        let sum_delta: i64 = tuples.iter().map(|t| i64::from(t.delta)).sum();
        sum_d + 1 == u64::from(key.d)
            && sum_alpha.leq(&key.alpha)
            && sum_beta == key.beta
            && sum_delta == forced_node_total(key, tuples.iter().map(|t| (t.d, &t.gamma)))
    }
}

/// `δ + Σ|γ^j| - Σ_{i<j} d_i d_j - d + 1`.
fn forced_node_total<'a>(
    key: &SeveriKey,
    pieces: impl Iterator<Item = (u32, &'a TangencySeq)>,
) -> i64 {
    let mut gamma_total = 0i64;
    let mut degree_sum = 0i64;
    let mut cross = 0i64;
    for (d, gamma) in pieces {
        let d = i64::from(d);
        cross += degree_sum * d;
        degree_sum += d;
        gamma_total += gamma.size() as i64;
    }
    i64::from(key.delta) + gamma_total - cross - i64::from(key.d) + 1
}

/// A piece without its node count.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Shape {
    d: u32,
    alpha: TangencySeq,
    beta: TangencySeq,
    gamma: TangencySeq,
}

/// Every canonical splitting of the residual degree `d - 1` curve.
///
/// Piece shapes `(d_j, α^j, β^j, γ^j)` are chosen first as a nondecreasing
/// list; the forced node total is then distributed over the pieces, with
/// node counts nondecreasing among identical shapes.
pub fn enumerate_splittings(key: &SeveriKey) -> Result<Vec<ComponentMultiset>> {
    key.validate()?;
    if key.d < 2 {
        return Ok(Vec::new());
    }
    Ok(splittings(key, true))
}

pub(crate) fn splittings(key: &SeveriKey, bound_nodes: bool) -> Vec<ComponentMultiset> {
    let residual = key.d - 1;
    let mut shapes = Vec::new();
    for d in 1..=residual {
        for alpha in key.alpha.enumerate_leq() {
            for beta in key.beta.enumerate_leq() {
                let used = alpha.weight() + beta.weight();
                if used >= u64::from(d) {
                    continue;
                }
                for gamma in TangencySeq::enumerate_weight(u64::from(d) - used) {
                    shapes.push(Shape {
                        d,
                        alpha: alpha.clone(),
                        beta: beta.clone(),
                        gamma,
                    });
                }
            }
        }
    }
    shapes.sort();

    let mut out = Vec::new();
    let mut chosen = Vec::new();
    choose_shapes(
        &shapes,
        0,
        residual,
        &key.alpha,
        &key.beta,
        &mut chosen,
        &mut |picked: &[&Shape]| {
            let total = forced_node_total(key, picked.iter().map(|s| (s.d, &s.gamma)));
            if total < 0 {
                return;
            }
            distribute_nodes(picked, total as u64, bound_nodes, &mut out);
        },
    );
    out.sort();
    out
}

fn choose_shapes<'s>(
    shapes: &'s [Shape],
    start: usize,
    degree_left: u32,
    alpha_left: &TangencySeq,
    beta_left: &TangencySeq,
    chosen: &mut Vec<&'s Shape>,
    emit: &mut dyn FnMut(&[&Shape]),
) {
    if degree_left == 0 {
        if beta_left.is_zero() {
            emit(chosen);
        }
        return;
    }
    for (i, shape) in shapes.iter().enumerate().skip(start) {
        if shape.d > degree_left {
            // Shapes are sorted by degree first.
            break;
        }
        let (Ok(alpha_rest), Ok(beta_rest)) =
            (alpha_left.sub(&shape.alpha), beta_left.sub(&shape.beta))
        else {
            continue;
        };
        chosen.push(shape);
        choose_shapes(
            shapes,
            i,
            degree_left - shape.d,
            &alpha_rest,
            &beta_rest,
            chosen,
            emit,
        );
        chosen.pop();
    }
}

fn distribute_nodes(
    picked: &[&Shape],
    total: u64,
    bound_nodes: bool,
    out: &mut Vec<ComponentMultiset>,
) {
    fn rec(
        picked: &[&Shape],
        idx: usize,
        left: u64,
        bound_nodes: bool,
        nodes: &mut Vec<u64>,
        out: &mut Vec<ComponentMultiset>,
    ) {
        if idx == picked.len() {
            if left == 0 {
                let tuples = picked
                    .iter()
                    .zip(nodes.iter())
                    .map(|(s, &delta)| ComponentTuple {
                        d: s.d,
                        delta: delta as u32,
                        alpha: s.alpha.clone(),
                        beta: s.beta.clone(),
                        gamma: s.gamma.clone(),
                    })
                    .collect();
                out.push(ComponentMultiset::new(tuples));
            }
            return;
        }
        let cap = if bound_nodes {
            max_nodes(picked[idx].d).min(left)
        } else {
            left
        };
        // Identical shapes take nondecreasing node counts.
        let floor = if idx > 0 && picked[idx - 1] == picked[idx] {
            nodes[idx - 1]
        } else {
            0
        };
        for delta in floor..=cap {
            nodes.push(delta);
            rec(picked, idx + 1, left - delta, bound_nodes, nodes, out);
            nodes.pop();
        }
    }
    rec(picked, 0, total, bound_nodes, &mut Vec::new(), out);
}

/// `N_{d,δ}(α,β)`; zero for keys that fail validation.
pub fn irr_degree(key: &SeveriKey, memo: &MemoStore) -> Result<BigUint> {
    irr_degree_with(key, memo, EvalOptions::default())
}

pub fn irr_degree_with(key: &SeveriKey, memo: &MemoStore, opts: EvalOptions) -> Result<BigUint> {
    if !key.is_valid() {
        return Ok(BigUint::zero());
    }
    if key.d == 1 {
        return Ok(BigUint::from(u32::from(key.delta == 0)));
    }
    if opts.memoize {
        if let Some(v) = memo.lookup(Kind::Irreducible, key) {
            return Ok(v);
        }
    }

    let mut value = BigUint::zero();
    for (k, child) in expand_contacts(key) {
        value += BigUint::from(k) * irr_degree_with(&child, memo, opts)?;
    }

    let splits = splittings(key, opts.prune);
    let degenerate: BigUint = if opts.parallel {
        splits
            .par_iter()
            .map(|ms| splitting_contribution(key, ms, memo, opts))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .sum()
    } else {
        splits
            .iter()
            .map(|ms| splitting_contribution(key, ms, memo, opts))
            .sum::<Result<BigUint>>()?
    };
    value += degenerate;

    if opts.memoize {
        memo.insert(Kind::Irreducible, key.clone(), value.clone())?;
    }
    Ok(value)
}

fn splitting_contribution(
    key: &SeveriKey,
    ms: &ComponentMultiset,
    memo: &MemoStore,
    opts: EvalOptions,
) -> Result<BigUint> {
    let mut product = BigUint::one();
    for t in ms.tuples() {
        let child = irr_degree_with(&t.child(), memo, opts)?;
        if child.is_zero() {
            return Ok(child);
        }
        product *= child;
    }

    // The hyperplane section is the image of the product of the pieces'
    // varieties, so its dimension splits as the sum of theirs.
    let total_dim = 2 * i64::from(key.d) + key.genus() - 2 + key.beta.size() as i64;
    let piece_dims: Vec<i64> = ms
        .tuples()
        .iter()
        .map(|t| t.child().raw_dimension())
        .collect();
    if total_dim < 0
        || piece_dims.iter().any(|&a| a < 0)
        || piece_dims.iter().sum::<i64>() != total_dim
    {
        return Err(Error::Integrity(format!(
            "piece dimensions {piece_dims:?} do not add up to {total_dim} in splitting of {key} into {}",
            render(ms)
        )));
    }
    let piece_dims: Vec<u64> = piece_dims.into_iter().map(|a| a as u64).collect();
    product *= multinomial(total_dim as u64, &piece_dims)
        .map_err(|e| Error::Integrity(format!("splitting of {key} into {}: {e}", render(ms))))?;

    let alphas: Vec<TangencySeq> = ms.tuples().iter().map(|t| t.alpha.clone()).collect();
    product *= multinomial_seq(&key.alpha, &alphas);
    for t in ms.tuples() {
        product *= t.beta.add(&t.gamma).binom(&t.beta);
        product *= t.gamma.ipow();
    }

    let sigma = ms.sigma();
    if !(&product % &sigma).is_zero() {
        return Err(Error::Integrity(format!(
            "symmetry factor {sigma} does not divide the contribution {product} of {}",
            render(ms)
        )));
    }
    Ok(product / sigma)
}

fn render(ms: &ComponentMultiset) -> String {
    ms.tuples()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Irreducible rational curves of degree `d` through `3d - 1` general points,
/// computed by the associativity recursion from the single seed `N_1 = 1`.
pub fn kontsevich_genus0(d: u32) -> BigUint {
    let mut n: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    for deg in 2..=u64::from(d) {
        let mut acc = BigInt::zero();
        for d1 in 1..deg {
            let d2 = deg - d1;
            let a = BigInt::from(d2) * BigInt::from(binomial(3 * deg - 4, 3 * d1 - 2));
            let b = BigInt::from(d1) * BigInt::from(binomial(3 * deg - 4, 3 * d1 - 1));
            acc += &n[d1 as usize] * &n[d2 as usize] * BigInt::from(d1 * d1 * d2) * (a - b);
        }
        n.push(acc);
    }
    let value = &n[d as usize];
    assert!(!value.is_negative());
    value.to_biguint().expect("nonnegative")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> TangencySeq {
        TangencySeq::new(v.to_vec())
    }

    fn piece(d: u32, delta: u32, a: &[u32], b: &[u32], g: &[u32]) -> ComponentTuple {
        ComponentTuple {
            d,
            delta,
            alpha: s(a),
            beta: s(b),
            gamma: s(g),
        }
    }

    #[test]
    fn sigma_counts_identical_pieces() {
        let a = piece(1, 0, &[], &[], &[1]);
        let b = piece(1, 0, &[1], &[], &[]);
        let c = piece(2, 0, &[], &[], &[2]);
        assert_eq!(
            ComponentMultiset::new(vec![a.clone(), b.clone(), c]).sigma(),
            1u32.into()
        );
        assert_eq!(
            ComponentMultiset::new(vec![a.clone(), b, a.clone()]).sigma(),
            2u32.into()
        );
        assert_eq!(
            ComponentMultiset::new(vec![a.clone(), a.clone(), a]).sigma(),
            6u32.into()
        );
    }

    #[test]
    fn conic_splittings() {
        // All free contacts must be shared out, and one line cannot take two.
        assert!(enumerate_splittings(&SeveriKey::classical(2, 0))
            .unwrap()
            .is_empty());
        // A nodal conic would need a nodal line.
        let key = SeveriKey::new(2, 1, s(&[2]), s(&[]));
        assert!(enumerate_splittings(&key).unwrap().is_empty());

        let key = SeveriKey::new(2, 0, s(&[2]), s(&[]));
        let all = enumerate_splittings(&key).unwrap();
        assert_eq!(
            all,
            vec![ComponentMultiset::new(vec![piece(1, 0, &[], &[], &[1])])]
        );
        assert!(all[0].is_splitting_of(&key));
    }

    #[test]
    fn lines_have_no_splittings() {
        let key = SeveriKey::new(1, 0, s(&[1]), s(&[]));
        assert!(enumerate_splittings(&key).unwrap().is_empty());
    }

    #[test]
    fn small_irreducible_degrees() {
        let m = MemoStore::new();
        assert_eq!(
            irr_degree(&SeveriKey::classical(2, 0), &m).unwrap(),
            1u32.into()
        );
        assert_eq!(
            irr_degree(&SeveriKey::classical(2, 1), &m).unwrap(),
            0u32.into()
        );
        assert_eq!(
            irr_degree(&SeveriKey::classical(3, 1), &m).unwrap(),
            12u32.into()
        );
        assert_eq!(
            irr_degree(&SeveriKey::classical(4, 3), &m).unwrap(),
            620u32.into()
        );
    }

    #[test]
    fn genus_zero_oracle() {
        let v: Vec<BigUint> = (1..=5).map(kontsevich_genus0).collect();
        let want: Vec<BigUint> = [1u32, 1, 12, 620, 87304]
            .into_iter()
            .map(Into::into)
            .collect();
        assert_eq!(v, want);
    }
}
