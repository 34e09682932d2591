//! Exact degrees of generalized Severi varieties.
//!
//! A generalized Severi variety `V^{d,δ}(α,β)` parametrizes plane curves of
//! degree `d` with `δ` nodes having `α_k` contacts of order `k` with a fixed
//! line at prescribed points and `β_k` such contacts at free points. This
//! crate evaluates the degrees of these varieties, and of their irreducible
//! parts, by recursively intersecting with hyperplanes of curves through a
//! point of the line.
//!
//! ```
//! use severi::{degree, MemoStore, SeveriKey, TangencySeq};
//!
//! let memo = MemoStore::new();
//! let key = SeveriKey::new(4, 3, TangencySeq::zero(), TangencySeq::ones(4));
//! assert_eq!(degree(&key, &memo).to_string(), "675");
//! ```

pub mod cache;
pub mod error;
pub mod gold;
pub mod irreducible;
pub mod memo;
pub mod seq;
pub mod severi;

pub use error::{Error, Result};
pub use irreducible::{irr_degree, kontsevich_genus0, ComponentMultiset, ComponentTuple};
pub use memo::{Kind, MemoStore};
pub use seq::TangencySeq;
pub use severi::{degree, expand, table, EvalOptions, RecursionTerm, SeveriKey, TableRow};
