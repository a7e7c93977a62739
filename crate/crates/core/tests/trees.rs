use std::collections::BTreeSet;

use lgeuler::treebuild::{build_tree, decorate, is_z_tilde_word, is_z_word, standard_form};
use lgeuler::{Letter, Word};
use proptest::prelude::*;

const MAX_LEN: usize = 10;

/// Closure of `{∅}` under `z ↦ αzβ` and concatenation, up to `MAX_LEN`.
fn generated_z() -> BTreeSet<Word> {
    let mut set: BTreeSet<Word> = [Word::empty()].into();
    loop {
        let current: Vec<Word> = set.iter().cloned().collect();
        let mut grown = set.clone();
        for a in &current {
            if a.len() + 2 <= MAX_LEN {
                let mut wrapped = Word::alphas(1).concat(a);
                wrapped.push(Letter::Beta);
                grown.insert(wrapped);
            }
            for b in &current {
                if a.len() + b.len() <= MAX_LEN {
                    grown.insert(a.concat(b));
                }
            }
        }
        if grown.len() == set.len() {
            return set;
        }
        set = grown;
    }
}

/// Concatenations of `Z`-words and `β`'s, up to `MAX_LEN`.
fn generated_z_tilde(z: &BTreeSet<Word>) -> BTreeSet<Word> {
    let mut set: BTreeSet<Word> = z.clone();
    set.insert(Word::betas(1));
    loop {
        let current: Vec<Word> = set.iter().cloned().collect();
        let mut grown = set.clone();
        for a in &current {
            for b in &current {
                if a.len() + b.len() <= MAX_LEN {
                    grown.insert(a.concat(b));
                }
            }
        }
        if grown.len() == set.len() {
            return set;
        }
        set = grown;
    }
}

#[test]
fn membership_matches_generative_definitions() {
    let z = generated_z();
    let zt = generated_z_tilde(&z);
    for n in 0..=MAX_LEN {
        for x in Word::all(n) {
            assert_eq!(is_z_word(&x), z.contains(&x), "Z membership of {x}");
            assert_eq!(is_z_tilde_word(&x), zt.contains(&x), "Z~ membership of {x}");
        }
    }
}

#[test]
fn standard_form_is_the_unique_decomposition() {
    let z = generated_z();
    let zt = generated_z_tilde(&z);
    for n in 0..=8 {
        for x in Word::all(n) {
            let alphas: Vec<usize> = (0..n).filter(|&k| x.letters()[k] == Letter::Alpha).collect();
            let mut found = Vec::new();
            for mask in 0u32..1 << alphas.len() {
                let cuts: Vec<usize> = (0..alphas.len())
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| alphas[b])
                    .collect();
                let mut parts = Vec::new();
                let mut start = 0;
                for &c in &cuts {
                    parts.push(Word::new(x.letters()[start..c].to_vec()));
                    start = c + 1;
                }
                parts.push(x.suffix(start));
                let ok = zt.contains(&parts[0]) && parts[1..].iter().all(|p| z.contains(p));
                if ok {
                    found.push(parts);
                }
            }
            assert_eq!(found.len(), 1, "decompositions of {x}");
            let sf = standard_form(&x);
            assert_eq!(sf.parts(), found[0].as_slice(), "standard form of {x}");
        }
    }
}

#[test]
fn tree_statistics_exhaustive() {
    for n in 0..=MAX_LEN {
        for x in Word::all(n) {
            let t = build_tree(&x);
            assert_eq!(t.edge_count(), x.alpha_count());
            assert_eq!(t.r(), standard_form(&x).r());
            for k in 2..=t.r() {
                assert!(!t.is_terminal(t.distinguished_edge(k)));
                // chain E_r ≤ … ≤ E_1
                assert!(t.is_ancestor_or_equal(t.distinguished_edge(k), t.distinguished_edge(k - 1)));
            }
            if t.r() > 0 {
                assert_eq!(t.edge(t.distinguished_edge(t.r())).parent, t.root());
            }
        }
    }
}

fn word_strategy(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::bool::ANY, 0..=max)
        .prop_map(|bits| bits.into_iter().map(|b| if b { Letter::Beta } else { Letter::Alpha }).collect())
}

fn pair_strategy(max: usize) -> impl Strategy<Value = (Word, Word)> {
    (0..=max).prop_flat_map(|n| {
        let side = prop::collection::vec(prop::bool::ANY, n)
            .prop_map(|bits| bits.into_iter().map(|b| if b { Letter::Beta } else { Letter::Alpha }).collect::<Word>());
        (side.clone(), side)
    })
}

proptest! {
    #[test]
    fn standard_form_reassembles(x in word_strategy(24)) {
        let sf = standard_form(&x);
        prop_assert_eq!(sf.reassemble(), x.clone());
        prop_assert!(is_z_tilde_word(sf.z(sf.r())));
        for i in 0..sf.r() {
            prop_assert!(is_z_word(sf.z(i)));
        }
    }

    /// Swapping αβ → βα in `y` opposite a non-trough of `w` keeps `A(w/y)`.
    #[test]
    fn capacity_insensitive_to_non_trough_swaps((y, x) in pair_strategy(14)) {
        let n = y.len();
        for p in 0..n.saturating_sub(1) {
            let yl = y.letters();
            let wl = x.letters();
            if yl[p] == Letter::Alpha && yl[p + 1] == Letter::Beta
                && !(wl[p] == Letter::Alpha && wl[p + 1] == Letter::Beta)
            {
                let mut swapped = yl.to_vec();
                swapped.swap(p, p + 1);
                prop_assert_eq!(decorate(&y, &x).unwrap(), decorate(&Word::new(swapped), &x).unwrap());
            }
        }
    }
}
