//! Words over {α, β}, their lattice paths, the Bruhat order and the
//! bijection with symmetric partitions in an `n × n` box.
//!
//! An α is a down-step and a β an up-step. Words are written with the ASCII
//! aliases `a`/`b`; the Greek letters are accepted on input.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Alpha,
    Beta,
}

impl Letter {
    pub fn flipped(self) -> Letter {
        match self {
            Letter::Alpha => Letter::Beta,
            Letter::Beta => Letter::Alpha,
        }
    }

    pub fn step(self) -> i64 {
        match self {
            Letter::Alpha => -1,
            Letter::Beta => 1,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::Alpha => 'a',
            Letter::Beta => 'b',
        }
    }
}

/// A finite word in the letters α, β. Ordered lexicographically with α < β.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// `Alpha` repeated `n` times.
    pub fn alphas(n: usize) -> Self {
        Word(vec![Letter::Alpha; n])
    }

    pub fn betas(n: usize) -> Self {
        Word(vec![Letter::Beta; n])
    }

    /// All words of length `n`, in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Word> {
        assert!(n < 64, "word enumeration is limited to n < 64");
        (0u64..1 << n).map(move |bits| {
            Word(
                (0..n)
                    .map(|k| {
                        if bits >> (n - 1 - k) & 1 == 1 {
                            Letter::Beta
                        } else {
                            Letter::Alpha
                        }
                    })
                    .collect(),
            )
        })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn alpha_count(&self) -> usize {
        self.0.iter().filter(|&&l| l == Letter::Alpha).count()
    }

    pub fn beta_count(&self) -> usize {
        self.len() - self.alpha_count()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn prefix(&self, k: usize) -> Word {
        Word(self.0[..k].to_vec())
    }

    pub fn suffix(&self, k: usize) -> Word {
        Word(self.0[k..].to_vec())
    }

    pub fn path(&self) -> LatticePath {
        path_of(self)
    }

    /// 0-based index of the leftmost `αβ` factor.
    pub fn find_alpha_beta(&self) -> Option<usize> {
        self.0
            .windows(2)
            .position(|p| p == [Letter::Alpha, Letter::Beta])
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{}\")", self)
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_word(&s).map_err(serde::de::Error::custom)
    }
}

/// Parses `a`/`b` or `α`/`β`, mixed freely. Positions in errors are
/// 0-based character offsets.
pub fn parse_word(text: &str) -> Result<Word> {
    text.chars()
        .enumerate()
        .map(|(position, c)| match c {
            'a' | 'α' => Ok(Letter::Alpha),
            'b' | 'β' => Ok(Letter::Beta),
            found => Err(Error::Parse { position, found }),
        })
        .collect()
}

/// Heights `h_0 = 0, h_1, …, h_n` of the path of a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePath {
    heights: Vec<i64>,
}

impl LatticePath {
    pub fn heights(&self) -> &[i64] {
        &self.heights
    }

    pub fn height(&self, k: usize) -> i64 {
        self.heights[k]
    }

    pub fn end(&self) -> i64 {
        *self.heights.last().expect("path always has h_0")
    }
}

pub fn path_of(w: &Word) -> LatticePath {
    let mut heights = Vec::with_capacity(w.len() + 1);
    let mut h = 0;
    heights.push(h);
    for l in w.letters() {
        h += l.step();
        heights.push(h);
    }
    LatticePath { heights }
}

pub(crate) fn check_lengths(y: &Word, w: &Word) -> Result<()> {
    if y.len() != w.len() {
        return Err(Error::LengthMismatch {
            left: y.len(),
            right: w.len(),
        });
    }
    Ok(())
}

/// `y ≤ w`: no point of the path of `y` lies strictly above the path of `w`.
pub fn bruhat_leq(y: &Word, w: &Word) -> Result<bool> {
    check_lengths(y, w)?;
    Ok(leq_unchecked(y, w))
}

pub(crate) fn leq_unchecked(y: &Word, w: &Word) -> bool {
    let (mut hy, mut hw) = (0i64, 0i64);
    for (a, b) in y.letters().iter().zip(w.letters()) {
        hy += a.step();
        hw += b.step();
        if hy > hw {
            return false;
        }
    }
    true
}

/// The two paths share only the origin.
pub fn strictly_below(y: &Word, w: &Word) -> Result<bool> {
    check_lengths(y, w)?;
    let (py, pw) = (path_of(y), path_of(w));
    Ok(py.heights()[1..]
        .iter()
        .zip(&pw.heights()[1..])
        .all(|(a, b)| a < b))
}

/// Right action of the simple reflection `s_i`, `1 ≤ i ≤ n`.
pub fn apply_reflection(w: &Word, i: usize) -> Result<Word> {
    let n = w.len();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, len: n });
    }
    let mut letters = w.letters().to_vec();
    if i < n {
        letters.swap(i - 1, i);
    } else {
        letters[n - 1] = letters[n - 1].flipped();
    }
    Ok(Word(letters))
}

/// `|y'|_α − |w'|_α` for the length-`i` prefixes; half the vertical gap
/// between the two paths over the line `x = i`.
pub fn capacity_at_line(y: &Word, w: &Word, i: usize) -> Result<i64> {
    check_lengths(y, w)?;
    if i == 0 || i > w.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: w.len(),
        });
    }
    Ok(prefix_alpha_gap(y, w, i))
}

pub(crate) fn prefix_alpha_gap(y: &Word, w: &Word, i: usize) -> i64 {
    y.prefix(i).alpha_count() as i64 - w.prefix(i).alpha_count() as i64
}

/// A self-conjugate partition inside an `n × n` box. Parts are stored padded
/// with zeros to exactly `n` entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymmetricPartition {
    parts: Vec<usize>,
    box_size: usize,
}

impl SymmetricPartition {
    pub fn new(mut parts: Vec<usize>, box_size: usize) -> Result<Self> {
        if parts.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::InvalidPartition(
                "parts must be weakly decreasing".into(),
            ));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.len() > box_size || parts.first().is_some_and(|&p| p > box_size) {
            return Err(Error::InvalidPartition(format!(
                "does not fit in a {box_size}x{box_size} box"
            )));
        }
        if conjugate(&parts) != parts {
            return Err(Error::InvalidPartition("not self-conjugate".into()));
        }
        parts.resize(box_size, 0);
        Ok(SymmetricPartition { parts, box_size })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn box_size(&self) -> usize {
        self.box_size
    }

    /// Size of the Durfee square.
    pub fn durfee(&self) -> usize {
        self.parts
            .iter()
            .enumerate()
            .take_while(|&(i, &p)| p > i)
            .count()
    }
}

impl fmt::Display for SymmetricPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nonzero: Vec<String> = self
            .parts
            .iter()
            .filter(|&&p| p > 0)
            .map(|p| p.to_string())
            .collect();
        write!(f, "{}", nonzero.join(","))
    }
}

/// Parses comma-separated parts, e.g. `7,6,6,3,3,3,1`. An empty string is
/// the zero partition.
pub fn parse_partition(text: &str, box_size: usize) -> Result<SymmetricPartition> {
    let text = text.trim();
    let parts = if text.is_empty() {
        Vec::new()
    } else {
        text.split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?
    };
    SymmetricPartition::new(parts, box_size)
}

/// Conjugate partition, trailing zeros dropped.
pub fn conjugate(parts: &[usize]) -> Vec<usize> {
    let largest = parts.iter().copied().max().unwrap_or(0);
    (1..=largest)
        .map(|j| parts.iter().filter(|&&p| p >= j).count())
        .collect()
}

/// β's sit at positions `n + 1 − μ_i`, where `μ_i = λ_i − i + 1` runs over
/// the rows of the Durfee square.
pub fn word_from_partition(p: &SymmetricPartition) -> Word {
    let n = p.box_size();
    let mut letters = vec![Letter::Alpha; n];
    for (i, &part) in p.parts().iter().take(p.durfee()).enumerate() {
        let mu = part - i;
        letters[n - mu] = Letter::Beta;
    }
    Word(letters)
}

pub fn partition_from_word(w: &Word) -> SymmetricPartition {
    let n = w.len();
    // β positions in increasing order give μ in decreasing order
    let mu: Vec<usize> = w
        .letters()
        .iter()
        .enumerate()
        .filter(|(_, &l)| l == Letter::Beta)
        .map(|(k, _)| n - k)
        .collect();
    let d = mu.len();
    let mut parts: Vec<usize> = mu.iter().enumerate().map(|(i, m)| m + i).collect();
    for row in d + 1..=n {
        parts.push(parts[..d].iter().filter(|&&p| p >= row).count());
    }
    parts.truncate(n);
    SymmetricPartition::new(parts, n).expect("construction yields a symmetric partition")
}
