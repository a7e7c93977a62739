use lgeuler::labeling::{count_labelings_as, enumerate_labelings, is_admissible};
use lgeuler::treebuild::{decorate, DecoratedTree, EdgeKind};
use lgeuler::word::path_of;
use lgeuler::{Letter, SmallCount, Word};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_word(rng: &mut StdRng, n: usize) -> Word {
    (0..n)
        .map(|_| if rng.gen_bool(0.5) { Letter::Beta } else { Letter::Alpha })
        .collect()
}

fn word_from_heights(h: &[i64]) -> Word {
    h.windows(2)
        .map(|s| if s[1] > s[0] { Letter::Beta } else { Letter::Alpha })
        .collect()
}

/// Pointwise min and max of two paths are again paths, ordered.
fn ordered_pair(a: &Word, b: &Word) -> (Word, Word) {
    let (pa, pb) = (path_of(a), path_of(b));
    let lo: Vec<i64> = pa.heights().iter().zip(pb.heights()).map(|(x, y)| *x.min(y)).collect();
    let hi: Vec<i64> = pa.heights().iter().zip(pb.heights()).map(|(x, y)| *x.max(y)).collect();
    (word_from_heights(&lo), word_from_heights(&hi))
}

#[test]
fn enumeration_matches_count_on_random_pairs() {
    let mut rng = StdRng::seed_from_u64(7);
    for round in 0..1000 {
        let n = rng.gen_range(0..=12);
        let (a, b) = (random_word(&mut rng, n), random_word(&mut rng, n));
        let (y, x) = if round % 4 == 0 { (a, b) } else { ordered_pair(&a, &b) };
        let t = decorate(&y, &x).unwrap();
        let listed = enumerate_labelings(&t, Some(50_000_000)).unwrap();
        let counted: SmallCount = count_labelings_as(&t);
        assert_eq!(listed.len() as SmallCount, counted, "A({x}/{y})");
        for l in &listed {
            assert!(is_admissible(&t, l).unwrap());
        }
        assert!(listed.windows(2).all(|p| p[0] < p[1]), "enumeration order");
    }
}

fn with_capacity(t: &DecoratedTree, e: usize, cap: i64) -> DecoratedTree {
    let mut caps = t.capacities().to_vec();
    caps[e] = Some(cap);
    DecoratedTree::new(t.tree().clone(), caps)
}

fn word_of_len(n: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::bool::ANY, n)
        .prop_map(|bits| bits.into_iter().map(|b| if b { Letter::Beta } else { Letter::Alpha }).collect())
}

fn below_pair(max: usize) -> impl Strategy<Value = (Word, Word)> {
    (0..=max)
        .prop_flat_map(|n| (word_of_len(n), word_of_len(n)))
        .prop_map(|(a, b)| ordered_pair(&a, &b))
}

proptest! {
    #[test]
    fn raising_a_regular_capacity_never_lowers_the_count((y, x) in below_pair(14)) {
        let t = decorate(&y, &x).unwrap();
        let base: SmallCount = count_labelings_as(&t);
        for e in t.tree().terminal_edges() {
            if t.tree().edge(e).kind == EdgeKind::Regular {
                let raised = with_capacity(&t, e, t.capacity(e).unwrap() + 1);
                prop_assert!(count_labelings_as::<SmallCount>(&raised) >= base);
            }
        }
    }

    #[test]
    fn negative_capacity_means_zero((y, x) in below_pair(14), pick in 0usize..32, drop in 1i64..4) {
        let t = decorate(&y, &x).unwrap();
        let terminals: Vec<usize> = t.tree().terminal_edges().collect();
        if !terminals.is_empty() {
            let e = terminals[pick % terminals.len()];
            let broken = with_capacity(&t, e, -drop);
            prop_assert_eq!(count_labelings_as::<SmallCount>(&broken), 0);
        }
    }

    /// Swapping αβ in `y` opposite a non-trough of `w` keeps the count.
    #[test]
    fn swap_identity((y, x) in below_pair(14)) {
        let base: SmallCount = count_labelings_as(&decorate(&y, &x).unwrap());
        for p in 0..y.len().saturating_sub(1) {
            let (yl, wl) = (y.letters(), x.letters());
            if yl[p] == Letter::Alpha && yl[p + 1] == Letter::Beta
                && !(wl[p] == Letter::Alpha && wl[p + 1] == Letter::Beta)
            {
                let mut s = yl.to_vec();
                s.swap(p, p + 1);
                let swapped: SmallCount = count_labelings_as(&decorate(&Word::new(s), &x).unwrap());
                prop_assert_eq!(swapped, base);
            }
        }
    }

    #[test]
    fn sibling_order_is_irrelevant((y, x) in below_pair(16), seed in any::<u64>()) {
        let t = decorate(&y, &x).unwrap();
        let base: SmallCount = count_labelings_as(&t);
        let mut rng = StdRng::seed_from_u64(seed);
        let mut shuffled = t.clone();
        for node in 0..t.tree().nodes().len() {
            let k = t.tree().node(node).children.len();
            let mut perm: Vec<usize> = (0..k).collect();
            for i in (1..k).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            shuffled = shuffled.with_child_order(node, &perm).unwrap();
        }
        prop_assert_eq!(count_labelings_as::<SmallCount>(&shuffled), base);
    }

    #[test]
    fn fixed_width_and_bigint_agree((y, x) in below_pair(20)) {
        let t = decorate(&y, &x).unwrap();
        let small: u128 = count_labelings_as(&t);
        let big: lgeuler::ObstructionValue = count_labelings_as(&t);
        prop_assert_eq!(big.to_string(), small.to_string());
    }
}
