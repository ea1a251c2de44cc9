//! Randomized checks beyond the exhaustive sizes.

use proptest::prelude::*;

use fatdelta::faces::{eval_letters, step, valid_letters};
use fatdelta::factorize::{factor_full, ternary_factor};
use fatdelta::fatcat::compose;
use fatdelta::literal::{parse_morphism, parse_object, parse_word, print_fibres, print_morphism, print_word};
use fatdelta::rewrite::{normalize_word, words_equal, Word};
use fatdelta::{FatObject, Letter};

fn object(max_m: usize) -> impl Strategy<Value = FatObject> {
    (0..=max_m, any::<u32>()).prop_map(|(m, bits)| {
        let edges: String = (0..m).map(|e| if bits >> e & 1 == 1 { '=' } else { '-' }).collect();
        FatObject::from_edge_string(&edges).unwrap()
    })
}

/// A well-typed word: each choice picks one of the letters valid at that point.
fn word(max_m: usize, max_len: usize) -> impl Strategy<Value = Word> {
    (object(max_m), prop::collection::vec(any::<u16>(), 0..=max_len)).prop_map(|(anchor, choices)| {
        let mut here = anchor.clone();
        let mut letters: Vec<Letter> = Vec::new();
        for c in choices {
            let options = valid_letters(&here);
            let l = options[c as usize % options.len()];
            here = step(&here, l).unwrap().cod().clone();
            letters.push(l);
        }
        Word::new(anchor, letters)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn object_literals_round_trip(o in object(12)) {
        prop_assert_eq!(parse_object(&o.to_string()).unwrap(), o.clone());
        prop_assert_eq!(parse_object(&print_fibres(&o)).unwrap(), o);
    }

    #[test]
    fn word_literals_round_trip(w in word(5, 8)) {
        let text = print_word(&w.anchor, &w.letters);
        prop_assert_eq!(parse_word(&text).unwrap(), (w.anchor.clone(), w.letters.clone()));
    }

    #[test]
    fn morphism_literals_round_trip(w in word(5, 8)) {
        let f = eval_letters(&w.anchor, &w.letters).unwrap();
        prop_assert_eq!(parse_morphism(&print_morphism(&f)).unwrap(), f);
    }

    #[test]
    fn rewriting_agrees_with_factoring(w in word(5, 7)) {
        let f = eval_letters(&w.anchor, &w.letters).unwrap();
        let nf = normalize_word(&w).unwrap();
        prop_assert_eq!(&nf, &factor_full(&f).unwrap());
        nf.check_invariants().unwrap();
        prop_assert_eq!(nf.eval().unwrap(), f);
    }

    #[test]
    fn evaluation_is_a_functor(w in word(4, 8), cut in any::<prop::sample::Index>()) {
        let k = cut.index(w.letters.len() + 1);
        let f = eval_letters(&w.anchor, &w.letters[..k]).unwrap();
        let g = eval_letters(f.cod(), &w.letters[k..]).unwrap();
        prop_assert_eq!(compose(&g, &f).unwrap(), eval_letters(&w.anchor, &w.letters).unwrap());
    }

    #[test]
    fn equality_is_decided_by_value(a in word(3, 5), choices in prop::collection::vec(any::<u16>(), 0..=5)) {
        // a second word from the same anchor
        let mut here = a.anchor.clone();
        let mut letters = Vec::new();
        for c in choices {
            let options = valid_letters(&here);
            let l = options[c as usize % options.len()];
            here = step(&here, l).unwrap().cod().clone();
            letters.push(l);
        }
        let b = Word::new(a.anchor.clone(), letters);
        let same = eval_letters(&a.anchor, &a.letters).unwrap() == eval_letters(&b.anchor, &b.letters).unwrap();
        prop_assert_eq!(words_equal(&a, &b).unwrap(), same);
        prop_assert!(words_equal(&a, &a).unwrap());
    }

    #[test]
    fn ternary_parts_recompose(w in word(5, 7)) {
        let f = eval_letters(&w.anchor, &w.letters).unwrap();
        let (d, v, h) = ternary_factor(&f).unwrap();
        prop_assert!(d.class_of().diagonal && v.class_of().vertical && h.class_of().cartesian);
        prop_assert_eq!(compose(&h, &compose(&v, &d).unwrap()).unwrap(), f);
    }
}
