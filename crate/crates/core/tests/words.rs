use lgeuler::word::{
    apply_reflection, bruhat_leq, capacity_at_line, conjugate, partition_from_word, path_of,
    strictly_below, word_from_partition, SymmetricPartition,
};
use lgeuler::{Letter, Word};
use proptest::prelude::*;

/// Every partition inside the `n × n` box, by recursion on the largest part.
fn box_partitions(rows: usize, max_part: usize) -> Vec<Vec<usize>> {
    if rows == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..=max_part {
        for rest in box_partitions(rows - 1, first) {
            let mut p = vec![first];
            p.extend(rest);
            out.push(p);
        }
    }
    out
}

#[test]
fn partition_bijection_exhaustive() {
    for n in 0..=8 {
        let symmetric: Vec<SymmetricPartition> = box_partitions(n, n)
            .into_iter()
            .filter(|p| {
                let trimmed: Vec<usize> = p.iter().copied().filter(|&x| x > 0).collect();
                conjugate(&trimmed) == trimmed
            })
            .map(|p| SymmetricPartition::new(p, n).unwrap())
            .collect();
        // one symmetric partition per word
        assert_eq!(symmetric.len(), 1 << n);
        let mut images: Vec<Word> = symmetric.iter().map(word_from_partition).collect();
        for (p, x) in symmetric.iter().zip(&images) {
            assert_eq!(&partition_from_word(x), p);
        }
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 1 << n);
        for x in Word::all(n) {
            assert_eq!(word_from_partition(&partition_from_word(&x)), x);
        }
    }
}

fn word_of_len(n: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::bool::ANY, n)
        .prop_map(|bits| bits.into_iter().map(|b| if b { Letter::Beta } else { Letter::Alpha }).collect())
}

fn pair(max: usize) -> impl Strategy<Value = (Word, Word)> {
    (0..=max).prop_flat_map(|n| (word_of_len(n), word_of_len(n)))
}

proptest! {
    #[test]
    fn concatenation_respects_order((y1, w1) in pair(10), (y2, w2) in pair(10)) {
        if bruhat_leq(&y1, &w1).unwrap() && bruhat_leq(&y2, &w2).unwrap() {
            prop_assert!(bruhat_leq(&y1.concat(&y2), &w1.concat(&w2)).unwrap());
        }
    }

    #[test]
    fn reflection_is_involution(x in (1usize..16).prop_flat_map(word_of_len), k in 0usize..64) {
        let i = 1 + k % x.len();
        let once = apply_reflection(&x, i).unwrap();
        prop_assert_eq!(apply_reflection(&once, i).unwrap(), x);
    }

    #[test]
    fn capacity_is_half_height_gap((y, x) in pair(16)) {
        let (py, pw) = (path_of(&y), path_of(&x));
        for i in 1..=y.len() {
            let gap = pw.height(i) - py.height(i);
            prop_assert_eq!(gap % 2, 0);
            prop_assert_eq!(capacity_at_line(&y, &x, i).unwrap(), gap / 2);
            if bruhat_leq(&y, &x).unwrap() {
                prop_assert!(gap >= 0);
            }
        }
    }

    #[test]
    fn path_steps_and_counts(x in (0usize..20).prop_flat_map(word_of_len)) {
        let p = path_of(&x);
        prop_assert_eq!(p.heights().len(), x.len() + 1);
        prop_assert!(p.heights().windows(2).all(|h| (h[0] - h[1]).abs() == 1));
        prop_assert_eq!(p.end(), x.beta_count() as i64 - x.alpha_count() as i64);
    }

    #[test]
    fn strictly_below_implies_below((y, x) in pair(12)) {
        if strictly_below(&y, &x).unwrap() {
            prop_assert!(bruhat_leq(&y, &x).unwrap());
            prop_assert!(y.is_empty() || y != x);
        }
    }
}
