//! Deciding `e_{y,w} = 0` from the words alone, without counting.
//!
//! Split `y = y'y''`, `w = w'w''` at the last point where the two paths
//! meet. The suffix paths then meet only at their start, and `e_{y,w}`
//! vanishes exactly when `e_{y'',w''}` does. For such a strictly-below
//! pair the obstruction vanishes iff, in the standard form of `w''`,
//! `r` is odd, the `α`-count gap is odd and every even-indexed `z_{2i}`
//! is empty.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::treebuild::standard_form;
use crate::word::{check_lengths, leq_unchecked, path_of, strictly_below, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TouchSplit {
    /// Index of the last common point of the two paths.
    pub k: usize,
    pub y_prefix: Word,
    pub w_prefix: Word,
    pub y_suffix: Word,
    pub w_suffix: Word,
}

pub fn split_at_last_touch(y: &Word, w: &Word) -> Result<TouchSplit> {
    check_lengths(y, w)?;
    if !leq_unchecked(y, w) {
        return Err(Error::NotBelow {
            y: y.to_string(),
            w: w.to_string(),
        });
    }
    let (py, pw) = (path_of(y), path_of(w));
    let k = (0..=y.len())
        .rev()
        .find(|&i| py.height(i) == pw.height(i))
        .expect("paths share the origin");
    Ok(TouchSplit {
        k,
        y_prefix: y.prefix(k),
        w_prefix: w.prefix(k),
        y_suffix: y.suffix(k),
        w_suffix: w.suffix(k),
    })
}

/// Facts behind the verdict for a strictly-below pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrictFacts {
    pub r: usize,
    /// `|y|_α − |w|_α`, the capacity of a terminal `E_1`.
    pub alpha_gap: i64,
    /// `(i, z_{2i} is empty)` for every `2i ≤ r`.
    pub even_parts_empty: Vec<(usize, bool)>,
}

impl StrictFacts {
    pub fn vanishes(&self) -> bool {
        self.r % 2 == 1
            && self.alpha_gap.rem_euclid(2) == 1
            && self.even_parts_empty.iter().all(|&(_, empty)| empty)
    }
}

fn strict_facts(y: &Word, w: &Word) -> StrictFacts {
    let sf = standard_form(w);
    let r = sf.r();
    StrictFacts {
        r,
        alpha_gap: y.alpha_count() as i64 - w.alpha_count() as i64,
        even_parts_empty: (0..=r / 2).map(|i| (i, sf.z(2 * i).is_empty())).collect(),
    }
}

/// Requires `y` strictly below `w`.
pub fn vanishes_strict(y: &Word, w: &Word) -> Result<bool> {
    if !strictly_below(y, w)? {
        return Err(Error::NotStrictlyBelow {
            y: y.to_string(),
            w: w.to_string(),
        });
    }
    Ok(strict_facts(y, w).vanishes())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum VanishingCertificate {
    /// `y ≰ w`.
    NotBelow,
    /// The paths end together; the suffix pair is empty.
    EndsTogether { split: TouchSplit },
    /// Decided on the strictly-below suffix pair.
    Suffix { split: TouchSplit, facts: StrictFacts },
}

impl VanishingCertificate {
    pub fn vanishes(&self) -> bool {
        match self {
            VanishingCertificate::NotBelow => true,
            VanishingCertificate::EndsTogether { .. } => false,
            VanishingCertificate::Suffix { facts, .. } => facts.vanishes(),
        }
    }
}

impl fmt::Display for VanishingCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VanishingCertificate::NotBelow => write!(f, "y not ≤ w"),
            VanishingCertificate::EndsTogether { split } => {
                write!(f, "last touch k={} is the endpoint, suffix empty", split.k)
            }
            VanishingCertificate::Suffix { split, facts } => {
                let parity = |odd: bool| if odd { "odd" } else { "even" };
                write!(
                    f,
                    "last touch k={}, suffix ({}, {}): r={} {}",
                    split.k,
                    split.y_suffix,
                    split.w_suffix,
                    facts.r,
                    parity(facts.r % 2 == 1),
                )?;
                if facts.r > 0 {
                    let gap = facts.alpha_gap;
                    write!(f, ", cap(E1)={gap} {}", parity(gap.rem_euclid(2) == 1))?;
                }
                for &(i, empty) in &facts.even_parts_empty {
                    write!(
                        f,
                        ", z{} {}",
                        2 * i,
                        if empty { "empty" } else { "nonempty" }
                    )?;
                }
                Ok(())
            }
        }
    }
}

pub fn vanishing_certificate(y: &Word, w: &Word) -> Result<VanishingCertificate> {
    check_lengths(y, w)?;
    if !leq_unchecked(y, w) {
        return Ok(VanishingCertificate::NotBelow);
    }
    let split = split_at_last_touch(y, w)?;
    if split.k == y.len() {
        return Ok(VanishingCertificate::EndsTogether { split });
    }
    let facts = strict_facts(&split.y_suffix, &split.w_suffix);
    Ok(VanishingCertificate::Suffix { split, facts })
}

pub fn vanishes(y: &Word, w: &Word) -> Result<bool> {
    Ok(vanishing_certificate(y, w)?.vanishes())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn ex42() -> (Word, Word) {
        (w("aabababbaaaaababbaaa"), w("babbaaabbaababbaaaba"))
    }

    fn ex42_flipped() -> Word {
        w("aabababbaaaaababbaab")
    }

    #[test]
    fn split_example() {
        let (y, x) = ex42();
        let s = split_at_last_touch(&y, &x).unwrap();
        assert_eq!(s.k, 8);
        assert_eq!(s.y_prefix, w("aabababb"));
        assert_eq!(s.w_prefix, w("babbaaab"));
        assert_eq!(s.y_prefix.alpha_count(), 4);
        assert_eq!(s.w_prefix.alpha_count(), 4);
        assert!(strictly_below(&s.y_suffix, &s.w_suffix).unwrap());
    }

    #[test]
    fn split_edge_cases() {
        let s = split_at_last_touch(&w("aaaa"), &w("bbba")).unwrap();
        assert_eq!(s.k, 0);
        assert!(s.y_prefix.is_empty());
        let x = w("abba");
        let s = split_at_last_touch(&x, &x).unwrap();
        assert_eq!(s.k, 4);
        assert!(s.y_suffix.is_empty() && s.w_suffix.is_empty());
        assert!(split_at_last_touch(&w("ba"), &w("ab")).is_err());
    }

    #[test]
    fn strict_examples() {
        assert!(vanishes_strict(&w("aaaa"), &w("bbba")).unwrap());
        assert!(!vanishes_strict(&w("aaab"), &w("bbab")).unwrap());
        let (y, x) = ex42();
        let (ys, xs) = (y.suffix(8), x.suffix(8));
        assert!(!vanishes_strict(&ys, &xs).unwrap());
        let flipped = ex42_flipped().suffix(8);
        assert!(vanishes_strict(&flipped, &xs).unwrap());
        assert!(matches!(
            vanishes_strict(&y, &x),
            Err(Error::NotStrictlyBelow { .. })
        ));
    }

    #[test]
    fn full_examples() {
        assert!(vanishes(&w("ba"), &w("ab")).unwrap());
        let (y, x) = ex42();
        assert!(!vanishes(&y, &x).unwrap());
        assert!(vanishes(&ex42_flipped(), &x).unwrap());
        assert!(!vanishes(&w("ab"), &w("ba")).unwrap());
        assert!(vanishes(&w("ab"), &w("aba")).is_err());
    }

    #[test]
    fn certificate_text() {
        let c = vanishing_certificate(&w("aaaa"), &w("bbba")).unwrap();
        assert!(c.vanishes());
        assert_eq!(
            c.to_string(),
            "last touch k=0, suffix (aaaa, bbba): r=1 odd, cap(E1)=3 odd, z0 empty"
        );
        let c = vanishing_certificate(&w("ba"), &w("ab")).unwrap();
        assert_eq!(c.to_string(), "y not ≤ w");
    }
}
