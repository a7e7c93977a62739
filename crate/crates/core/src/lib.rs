//! Exact local Euler obstructions `e_{y,w}` for the Schubert stratification
//! of the Lagrangian Grassmannian `LG(n, 2n)`.
//!
//! Schubert cells are indexed by words in `{α, β}` (written `a`/`b`). Three
//! independent routes compute the same numbers:
//!
//! * [`obstruction::euler_recursion`], a positive recursion on word pairs;
//! * [`labeling::count_labelings`], the number of admissible labelings of
//!   the decorated tree [`treebuild::decorate`];
//! * [`symmat::symmetric_euler_formula`], a closed formula for the pairs
//!   coming from symmetric matrices of given ranks.
//!
//! [`vanishing::vanishes`] decides `e_{y,w} = 0` directly from the words.
//!
//! Counting routines are generic over the [`Count`] scalar; the non-suffixed
//! entry points return [`ObstructionValue`].
//!
//! ```
//! use lgeuler::{euler, Method, Word};
//!
//! let y: Word = "aaab".parse().unwrap();
//! let w: Word = "bbab".parse().unwrap();
//! assert_eq!(euler(&y, &w, Method::Both).unwrap(), 3u32.into());
//! ```

pub mod check;
pub mod count;
pub mod error;
pub mod labeling;
pub mod obstruction;
pub mod symmat;
pub mod treebuild;
pub mod vanishing;
pub mod word;

pub use count::Count;
pub use error::{Error, Result};
pub use labeling::{count_labelings, enumerate_labelings, is_admissible, Labeling};
pub use obstruction::{euler, euler_recursion, explain, Method, RecursionTrace, SharedCache};
pub use symmat::{symmetric_euler_formula, symmetric_to_words, RankPair};
pub use treebuild::{build_tree, decorate, standard_form, DecoratedTree, StandardForm, Tree};
pub use vanishing::{split_at_last_touch, vanishes, vanishes_strict};
pub use word::{bruhat_leq, parse_word, Letter, LatticePath, SymmetricPartition, Word};

/// Exact obstruction values and labeling counts.
pub type ObstructionValue = num_bigint::BigUint;

/// Fixed-width count, for bulk checks where values are known to be small.
pub type SmallCount = u64;
