//! Hashing every position of a closed λ-term modulo context-sensitive
//! α-equivalence.
//!
//! Two positions of closed de Bruijn terms get the same hash exactly when
//! their term nodes are bisimilar: same subterm shape, and every variable
//! points at an equivalent binder. [`globalize`] computes such hashes in
//! `O(n log n)` by turning bound variables into global variables that carry
//! a hash of their binding context.
//!
//! ```
//! use alphahash::{globalize, hash_at, parse_term, Hasher, Term};
//!
//! // λt. (λ0) (λz.λf. f t) (λg. g t)
//! let pure = parse_term(r"\((\0 \\(0 2)) \(0 1))").unwrap();
//! let mut hasher = Hasher::fast();
//! let t = Term::from_pure(&mut hasher, &pure);
//! let g = globalize(&mut hasher, &t).unwrap();
//! let a = hash_at(&g, &"DLRD".parse().unwrap()).unwrap();
//! let b = hash_at(&g, &"DR".parse().unwrap()).unwrap();
//! assert_eq!(a, b);
//! ```

pub mod bench;
pub mod bisim;
pub mod check;
pub mod commands;
pub mod error;
pub mod generate;
pub mod globalize;
pub mod hash;
pub mod partition;
pub mod syntax;
pub mod term;

pub use error::{Error, Result};
pub use globalize::{
    calc_duplicates, globalize, globalize_naive, hash_at, hash_partition, max_visit, reset_visits,
    set_hash, set_hashes, visit_bound, HashEnv,
};
pub use hash::{GTerm, Hash, HashMode, Hasher};
pub use partition::Partition;
pub use syntax::{parse_corpus, parse_position, parse_term, print_position, print_term};
pub use term::{Position, PureTerm, Step, Syntax, Term, TermF};
