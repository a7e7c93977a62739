//! Exhaustive cross-checks between the independent methods.

use std::fmt;

use rayon::prelude::*;

use crate::count::Count;
use crate::labeling::{count_labelings_as, enumerate_labelings};
use crate::obstruction::euler_recursion_as;
use crate::symmat::{symmetric_euler_formula_as, symmetric_to_words, RankPair};
use crate::treebuild::decorate;
use crate::vanishing::vanishes;
use crate::word::Word;
use crate::SmallCount;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub check: &'static str,
    pub y: Word,
    pub w: Word,
    pub detail: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: y={} w={}: {}", self.check, self.y, self.w, self.detail)
    }
}

impl std::error::Error for Counterexample {}

pub type CheckResult = std::result::Result<usize, Counterexample>;

/// All pairs of words of length `n`, `y` major, in word order.
pub fn all_pairs(n: usize) -> Vec<(Word, Word)> {
    let words: Vec<Word> = Word::all(n).collect();
    words
        .iter()
        .flat_map(|y| words.iter().map(move |w| (y.clone(), w.clone())))
        .collect()
}

fn first_failure<F>(pairs: &[(Word, Word)], f: F) -> CheckResult
where
    F: Fn(&Word, &Word) -> Option<Counterexample> + Sync,
{
    let failure = pairs
        .par_iter()
        .enumerate()
        .filter_map(|(idx, (y, w))| f(y, w).map(|c| (idx, c)))
        .min_by_key(|(idx, _)| *idx);
    match failure {
        Some((_, c)) => Err(c),
        None => Ok(pairs.len()),
    }
}

/// Recursion equals labeling count, and zero values are exactly the
/// pairs flagged by the vanishing criterion. Returns the pair count.
pub fn recursion_count_vanishing(max_n: usize) -> CheckResult {
    let mut total = 0;
    for n in 0..=max_n {
        total += first_failure(&all_pairs(n), |y, w| {
            let rec: SmallCount = euler_recursion_as(y, w).ok()?;
            let cnt: SmallCount = count_labelings_as(&decorate(y, w).ok()?);
            if rec != cnt {
                return Some(Counterexample {
                    check: "recursion = count",
                    y: y.clone(),
                    w: w.clone(),
                    detail: format!("recursion {rec}, count {cnt}"),
                });
            }
            let zero = vanishes(y, w).ok()?;
            (zero != (rec == 0)).then(|| Counterexample {
                check: "vanishing criterion",
                y: y.clone(),
                w: w.clone(),
                detail: format!("value {rec}, criterion says vanishes={zero}"),
            })
        })?;
    }
    Ok(total)
}

/// Brute-force enumeration agrees with the dynamic-programming count.
pub fn enumeration_count(max_n: usize, max_states: Option<u64>) -> CheckResult {
    let mut total = 0;
    for n in 0..=max_n {
        total += first_failure(&all_pairs(n), |y, w| {
            let t = decorate(y, w).ok()?;
            let cnt: SmallCount = count_labelings_as(&t);
            let listed = match enumerate_labelings(&t, max_states) {
                Ok(all) => all.len() as SmallCount,
                Err(e) => {
                    return Some(Counterexample {
                        check: "enumeration = count",
                        y: y.clone(),
                        w: w.clone(),
                        detail: e.to_string(),
                    })
                }
            };
            (listed != cnt).then(|| Counterexample {
                check: "enumeration = count",
                y: y.clone(),
                w: w.clone(),
                detail: format!("enumerated {listed}, counted {cnt}"),
            })
        })?;
    }
    Ok(total)
}

/// The closed symmetric-matrix formula matches both word-level methods.
pub fn symmetric_embedding(max_n: usize) -> CheckResult {
    let mut pairs = 0;
    for n in 1..=max_n {
        for i in 0..=n {
            for j in i..=n {
                let p = RankPair::new(n, i, j).expect("bounds hold");
                let (y, w) = symmetric_to_words(p).expect("i <= j");
                let formula: crate::ObstructionValue = symmetric_euler_formula_as(p);
                let rec: crate::ObstructionValue =
                    euler_recursion_as(&y, &w).expect("equal lengths");
                let cnt: crate::ObstructionValue = count_labelings_as(&decorate(&y, &w).expect("equal lengths"));
                if formula != rec || formula != cnt {
                    return Err(Counterexample {
                        check: "symmetric formula",
                        y,
                        w,
                        detail: format!("n={n} i={i} j={j}: formula {formula}, recursion {rec}, count {cnt}"),
                    });
                }
                pairs += 1;
            }
        }
    }
    Ok(pairs)
}

/// Values known from hand computation.
pub fn worked_examples<C: Count>() -> CheckResult {
    let cases: [(&str, &str, u64); 5] = [
        ("aaab", "bbab", 3),
        ("aaab", "bbaa", 1),
        ("aaaa", "bbba", 0),
        ("abaaaaaabaaaaab", "bbabaaabaababba", 124),
        ("aabababbaaaaababbaaa", "babbaaabbaababbaaaba", 32),
    ];
    for (ys, ws, expected) in cases {
        let y: Word = ys.parse().expect("literal word");
        let w: Word = ws.parse().expect("literal word");
        let rec: C = euler_recursion_as(&y, &w).expect("equal lengths");
        let cnt: C = count_labelings_as(&decorate(&y, &w).expect("equal lengths"));
        let expected = C::from_count(expected);
        if rec != expected || cnt != expected {
            return Err(Counterexample {
                check: "worked example",
                y,
                w,
                detail: format!("expected {expected}, recursion {rec}, count {cnt}"),
            });
        }
    }
    Ok(cases.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_pass() {
        assert_eq!(recursion_count_vanishing(3), Ok(1 + 4 + 16 + 64));
        assert_eq!(enumeration_count(3, None), Ok(1 + 4 + 16 + 64));
        assert!(symmetric_embedding(5).is_ok());
        assert_eq!(worked_examples::<u64>(), Ok(5));
    }

    #[test]
    fn zero_is_trivial() {
        assert_eq!(recursion_count_vanishing(0), Ok(1));
    }
}
