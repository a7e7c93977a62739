//! Positive recursion for the obstructions `e_{y,w}`.
//!
//! Rules, for `|y| = |w|`:
//!
//! 1. `e_{w,w} = 1`, and `e_{y,w} = 0` when `y ≰ w`;
//! 2. `e_{y'α, w'β} = e_{y'β, w'β}`;
//! 3. `e_{y'αβy'', w'στw''} = e_{y'βαy'', w}` for `στ ∈ {αα, βα, ββ}`;
//! 4. `e_{y'αβy'', w'αβw''} = e_{y'βαy'', w} + e_{y'y'', w'w''}`;
//! 5. `e_{y'αα, w'βα} = e_{y'ββ, w}`;
//! 6. `e_{y'αα, w'αα} = e_{y'ββ, w} + e_{y', w'}`.
//!
//! Rules 3 and 4 are applied at the leftmost `αβ` of `y`; only when `y` has
//! the shape `β^a α^b` are rules 2, 5 and 6 used.

use std::collections::HashMap;
use std::fmt;
use std::num::NonZeroUsize;

use lru::LruCache;
use num_bigint::BigUint;
use parking_lot::Mutex;
use serde::Serialize;

use crate::count::Count;
use crate::error::{Error, Result};
use crate::labeling::count_labelings_as;
use crate::treebuild::decorate;
use crate::word::{check_lengths, leq_unchecked, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "u8")]
pub enum Rule {
    Base,
    TrailingAlpha,
    Swap,
    SwapAndRemove,
    TrailingPair,
    TrailingPairAndRemove,
}

impl Rule {
    pub fn number(self) -> u8 {
        match self {
            Rule::Base => 1,
            Rule::TrailingAlpha => 2,
            Rule::Swap => 3,
            Rule::SwapAndRemove => 4,
            Rule::TrailingPair => 5,
            Rule::TrailingPairAndRemove => 6,
        }
    }

    fn arity(self) -> usize {
        match self {
            Rule::Base => 0,
            Rule::SwapAndRemove | Rule::TrailingPairAndRemove => 2,
            _ => 1,
        }
    }
}

impl From<Rule> for u8 {
    fn from(r: Rule) -> u8 {
        r.number()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Recursion,
    Count,
    Both,
}

enum Reduction {
    Base(bool),
    /// Rule, touched 0-based positions, resulting pairs.
    Terms(Rule, usize, usize, Vec<(Word, Word)>),
}

fn replace_pair(y: &Word, at: usize, pair: [Letter; 2]) -> Word {
    let mut letters = y.letters().to_vec();
    letters[at] = pair[0];
    letters[at + 1] = pair[1];
    Word::new(letters)
}

fn remove_pair(y: &Word, at: usize) -> Word {
    let mut letters = y.letters().to_vec();
    letters.drain(at..at + 2);
    Word::new(letters)
}

/// Positions `p` with `y[p..p+2] = αβ`.
fn alpha_beta_sites(y: &Word) -> Vec<usize> {
    y.letters()
        .windows(2)
        .enumerate()
        .filter(|(_, p)| *p == [Letter::Alpha, Letter::Beta])
        .map(|(k, _)| k)
        .collect()
}

/// One rewriting step; `site` overrides the leftmost `αβ` choice.
fn reduce(y: &Word, w: &Word, site: Option<usize>) -> Reduction {
    use Letter::{Alpha, Beta};
    if y == w {
        return Reduction::Base(true);
    }
    if !leq_unchecked(y, w) {
        return Reduction::Base(false);
    }
    if let Some(p) = site.or_else(|| y.find_alpha_beta()) {
        let swapped = replace_pair(y, p, [Beta, Alpha]);
        let wl = w.letters();
        return if wl[p] == Alpha && wl[p + 1] == Beta {
            Reduction::Terms(
                Rule::SwapAndRemove,
                p,
                p + 1,
                vec![(swapped, w.clone()), (remove_pair(y, p), remove_pair(w, p))],
            )
        } else {
            Reduction::Terms(Rule::Swap, p, p + 1, vec![(swapped, w.clone())])
        };
    }
    // y = β^a α^b with b ≥ 1
    let n = y.len();
    let mut up = y.letters().to_vec();
    if w.last() == Some(Beta) {
        up[n - 1] = Beta;
        return Reduction::Terms(Rule::TrailingAlpha, n - 1, n - 1, vec![(Word::new(up), w.clone())]);
    }
    debug_assert!(n >= 2 && y.letters()[n - 2] == Alpha, "y < w forces y to end in αα");
    up[n - 2] = Beta;
    up[n - 1] = Beta;
    let raised = (Word::new(up), w.clone());
    if w.letters()[n - 2] == Alpha {
        Reduction::Terms(
            Rule::TrailingPairAndRemove,
            n - 2,
            n - 1,
            vec![raised, (y.prefix(n - 2), w.prefix(n - 2))],
        )
    } else {
        Reduction::Terms(Rule::TrailingPair, n - 2, n - 1, vec![raised])
    }
}

/// Bounded, thread-safe memo shared across top-level evaluations.
/// Inserts are idempotent: a pair always maps to the same value.
pub struct SharedCache<C> {
    inner: Mutex<LruCache<(Word, Word), C>>,
}

impl<C: Count> SharedCache<C> {
    pub fn new(capacity: usize) -> Self {
        let cap = NonZeroUsize::new(capacity.max(1)).unwrap();
        SharedCache {
            inner: Mutex::new(LruCache::new(cap)),
        }
    }

    pub fn get(&self, y: &Word, w: &Word) -> Option<C> {
        self.inner.lock().get(&(y.clone(), w.clone())).cloned()
    }

    pub fn insert(&self, y: Word, w: Word, value: C) {
        self.inner.lock().put((y, w), value);
    }

    pub fn len(&self) -> usize {
        self.inner.lock().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

struct Evaluator<'s, C, S> {
    memo: HashMap<(Word, Word), C>,
    shared: Option<&'s SharedCache<C>>,
    choose: S,
    depth_bound: usize,
}

impl<C: Count, S: FnMut(&[usize]) -> usize> Evaluator<'_, C, S> {
    fn eval(&mut self, y: &Word, w: &Word, depth: usize) -> C {
        debug_assert!(
            depth <= self.depth_bound,
            "recursion depth {depth} exceeds bound {}",
            self.depth_bound
        );
        let key = (y.clone(), w.clone());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        if let Some(v) = self.shared.and_then(|s| s.get(y, w)) {
            self.memo.insert(key, v.clone());
            return v;
        }
        let sites = alpha_beta_sites(y);
        let site = if sites.len() > 1 {
            let pick = (self.choose)(&sites);
            Some(sites[pick % sites.len()])
        } else {
            None
        };
        let value = match reduce(y, w, site) {
            Reduction::Base(true) => C::one(),
            Reduction::Base(false) => C::zero(),
            Reduction::Terms(_, _, _, terms) => terms.iter().fold(C::zero(), |acc, (ty, tw)| {
                acc.add_exact(&self.eval(ty, tw, depth + 1))
            }),
        };
        if let Some(s) = self.shared {
            s.insert(y.clone(), w.clone(), value.clone());
        }
        self.memo.insert(key, value.clone());
        value
    }
}

fn depth_bound(n: usize) -> usize {
    2 * (n + 1) * (n + 1)
}

pub fn euler_recursion(y: &Word, w: &Word) -> Result<BigUint> {
    euler_recursion_as(y, w)
}

pub fn euler_recursion_as<C: Count>(y: &Word, w: &Word) -> Result<C> {
    run(y, w, None, |_: &[usize]| 0)
}

/// As [`euler_recursion_as`], consulting and filling `cache`.
pub fn euler_recursion_cached<C: Count>(y: &Word, w: &Word, cache: &SharedCache<C>) -> Result<C> {
    run(y, w, Some(cache), |_: &[usize]| 0)
}

/// Recursion where `choose` picks which `αβ` of `y` rules 3/4 act on; it
/// receives the candidate positions and returns an index into them.
pub fn euler_recursion_with_strategy<C: Count>(
    y: &Word,
    w: &Word,
    choose: impl FnMut(&[usize]) -> usize,
) -> Result<C> {
    run(y, w, None, choose)
}

fn run<C: Count>(
    y: &Word,
    w: &Word,
    shared: Option<&SharedCache<C>>,
    choose: impl FnMut(&[usize]) -> usize,
) -> Result<C> {
    check_lengths(y, w)?;
    let mut ev = Evaluator {
        memo: HashMap::new(),
        shared,
        choose,
        depth_bound: depth_bound(y.len()),
    };
    Ok(ev.eval(y, w, 0))
}

pub fn euler(y: &Word, w: &Word, method: Method) -> Result<BigUint> {
    euler_as(y, w, method)
}

pub fn euler_as<C: Count>(y: &Word, w: &Word, method: Method) -> Result<C> {
    check_lengths(y, w)?;
    match method {
        Method::Recursion => euler_recursion_as(y, w),
        Method::Count => Ok(count_labelings_as(&decorate(y, w)?)),
        Method::Both => {
            let rec: C = euler_recursion_as(y, w)?;
            let cnt: C = count_labelings_as(&decorate(y, w)?);
            agree(y, w, rec, cnt)
        }
    }
}

/// `Method::Both` with the recursion side served from `cache`.
pub fn euler_both_cached<C: Count>(y: &Word, w: &Word, cache: &SharedCache<C>) -> Result<C> {
    let rec = euler_recursion_cached(y, w, cache)?;
    let cnt: C = count_labelings_as(&decorate(y, w)?);
    agree(y, w, rec, cnt)
}

fn agree<C: Count>(y: &Word, w: &Word, rec: C, cnt: C) -> Result<C> {
    if rec != cnt {
        return Err(Error::MethodDisagreement {
            y: y.to_string(),
            w: w.to_string(),
            recursion: rec.to_string(),
            count: cnt.to_string(),
        });
    }
    Ok(rec)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub rule: Rule,
    pub y: Word,
    pub w: Word,
    pub depth: usize,
    /// 0-based positions of the letters the rule inspects.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub span: Option<(usize, usize)>,
}

impl TraceStep {
    fn bracketed(word: &Word, span: Option<(usize, usize)>) -> String {
        let mut out = String::new();
        for (k, l) in word.letters().iter().enumerate() {
            if span.is_some_and(|(a, _)| a == k) {
                out.push('[');
            }
            out.push(l.as_char());
            if span.is_some_and(|(_, b)| b == k) {
                out.push(']');
            }
        }
        out
    }
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:indent$}({}) ({}, {})",
            "",
            self.rule.number(),
            Self::bracketed(&self.y, self.span),
            Self::bracketed(&self.w, self.span),
            indent = 2 * self.depth
        )?;
        if self.rule == Rule::Base {
            write!(f, " = {}", u8::from(self.y == self.w))?;
        }
        Ok(())
    }
}

/// The full rule-application tree of the recursion, flattened depth-first
/// (a step is followed by the traces of its terms, in order).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecursionTrace {
    pub steps: Vec<TraceStep>,
    #[serde(serialize_with = "decimal")]
    pub value: BigUint,
}

fn decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl RecursionTrace {
    /// Re-evaluates the trace from its steps alone.
    pub fn replay(&self) -> Option<BigUint> {
        fn walk(steps: &[TraceStep], pos: &mut usize) -> Option<BigUint> {
            let step = steps.get(*pos)?;
            *pos += 1;
            if step.rule == Rule::Base {
                return Some(BigUint::from(u8::from(step.y == step.w)));
            }
            let mut total = BigUint::from(0u8);
            for _ in 0..step.rule.arity() {
                total += walk(steps, pos)?;
            }
            Some(total)
        }
        let mut pos = 0;
        let v = walk(&self.steps, &mut pos)?;
        (pos == self.steps.len()).then_some(v)
    }

    pub fn rules(&self) -> Vec<u8> {
        self.steps.iter().map(|s| s.rule.number()).collect()
    }
}

impl fmt::Display for RecursionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        write!(f, "value = {}", self.value)
    }
}

/// Unmemoized; the trace size grows with the value.
pub fn explain(y: &Word, w: &Word) -> Result<RecursionTrace> {
    check_lengths(y, w)?;
    fn go(y: &Word, w: &Word, depth: usize, steps: &mut Vec<TraceStep>) -> BigUint {
        match reduce(y, w, None) {
            Reduction::Base(holds) => {
                steps.push(TraceStep {
                    rule: Rule::Base,
                    y: y.clone(),
                    w: w.clone(),
                    depth,
                    span: None,
                });
                BigUint::from(u8::from(holds))
            }
            Reduction::Terms(rule, a, b, terms) => {
                steps.push(TraceStep {
                    rule,
                    y: y.clone(),
                    w: w.clone(),
                    depth,
                    span: Some((a, b)),
                });
                terms
                    .iter()
                    .map(|(ty, tw)| go(ty, tw, depth + 1, steps))
                    .sum()
            }
        }
    }
    let mut steps = Vec::new();
    let value = go(y, w, 0, &mut steps);
    Ok(RecursionTrace { steps, value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn e(y: &str, x: &str) -> u64 {
        euler_recursion_as(&w(y), &w(x)).unwrap()
    }

    #[test]
    fn worked_triple() {
        assert_eq!(e("aaab", "bbab"), 3);
        assert_eq!(e("aaab", "bbaa"), 1);
        assert_eq!(e("aaaa", "bbba"), 0);
    }

    #[test]
    fn base_cases() {
        assert_eq!(e("", ""), 1);
        assert_eq!(e("abba", "abba"), 1);
        assert_eq!(e("ba", "ab"), 0);
        assert!(euler_recursion(&w("a"), &w("ab")).is_err());
    }

    #[test]
    fn methods() {
        for m in [Method::Recursion, Method::Count, Method::Both] {
            assert_eq!(euler(&w("abab"), &w("abab"), m).unwrap(), BigUint::from(1u8));
            assert_eq!(euler(&w("ba"), &w("ab"), m).unwrap(), BigUint::from(0u8));
        }
        let y = w("abaaaaaabaaaaab");
        let x = w("bbabaaabaababba");
        assert_eq!(euler(&y, &x, Method::Both).unwrap(), BigUint::from(124u8));
    }

    /// Collapses runs of consecutive rule-3 steps, as in hand derivations
    /// that apply several swaps at once.
    fn collapsed(rules: &[u8]) -> Vec<u8> {
        let mut out: Vec<u8> = Vec::new();
        for &r in rules {
            if !(r == 3 && out.last() == Some(&3)) {
                out.push(r);
            }
        }
        out
    }

    #[test]
    fn trace_second_display() {
        let t = explain(&w("aaab"), &w("bbaa")).unwrap();
        assert_eq!(collapsed(&t.rules()), vec![3, 6, 1, 2, 1]);
        assert_eq!(t.value, BigUint::from(1u8));
        assert_eq!(t.replay(), Some(t.value.clone()));
        let states: Vec<(String, String)> = t
            .steps
            .iter()
            .map(|s| (s.y.to_string(), s.w.to_string()))
            .collect();
        for shown in [("baaa", "bbaa"), ("babb", "bbaa"), ("ba", "bb"), ("bb", "bb")] {
            assert!(states.contains(&(shown.0.into(), shown.1.into())), "{shown:?}");
        }
    }

    #[test]
    fn trace_third_display() {
        let t = explain(&w("aaaa"), &w("bbba")).unwrap();
        assert_eq!(collapsed(&t.rules()), vec![5, 3, 5, 1]);
        let states: Vec<String> = t.steps.iter().map(|s| s.y.to_string()).collect();
        for shown in ["aabb", "bbaa", "bbbb"] {
            assert!(states.contains(&shown.to_string()));
        }
        assert_eq!(t.replay(), Some(BigUint::from(0u8)));
    }

    #[test]
    fn trace_diagonal() {
        let t = explain(&w("abab"), &w("abab")).unwrap();
        assert_eq!(t.rules(), vec![1]);
        assert_eq!(t.value, BigUint::from(1u8));
    }

    #[test]
    fn trace_first_display() {
        let t = explain(&w("aaab"), &w("bbab")).unwrap();
        assert_eq!(t.rules()[0], 4);
        assert_eq!(t.value, BigUint::from(3u8));
        assert_eq!(t.replay(), Some(t.value.clone()));
        let text = t.steps[0].to_string();
        assert_eq!(text, "(4) (aa[ab], bb[ab])");
    }

    #[test]
    fn shared_cache_is_transparent() {
        let cache = SharedCache::<u64>::new(16);
        let y = w("abaaaaaabaaaaab");
        let x = w("bbabaaabaababba");
        let first = euler_recursion_cached(&y, &x, &cache).unwrap();
        assert!(cache.len() <= 16 && !cache.is_empty());
        let second = euler_recursion_cached(&y, &x, &cache).unwrap();
        assert_eq!(first, 124);
        assert_eq!(second, 124);
        assert_eq!(euler_both_cached(&y, &x, &cache).unwrap(), 124);
    }

    #[test]
    fn rule_numbers_serialize() {
        assert_eq!(serde_json::to_string(&Rule::SwapAndRemove).unwrap(), "4");
    }
}
