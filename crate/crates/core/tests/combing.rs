use hbraid::combing::{comb_horizontal, comb_pgn_horizontal, comb_pgn_vertical, comb_vertical, recompose_matches};
use hbraid::conjrules::{PureLetter, PureWord};
use proptest::prelude::*;

fn pure_word(max_m: u32, max_len: usize) -> impl Strategy<Value = PureWord> {
    (2..=max_m).prop_flat_map(move |m| {
        let letter = (1..m).prop_flat_map(move |i| (Just(i), (i + 1)..=m, prop::bool::ANY))
            .prop_map(|(i, j, pos)| PureLetter::new(i, j, if pos { 1 } else { -1 }));
        prop::collection::vec(letter, 0..=max_len).prop_map(move |ls| PureWord::new(m, ls).unwrap())
    })
}

fn pgn_word(max_g: u32, max_n: u32, max_len: usize) -> impl Strategy<Value = (u32, u32, PureWord)> {
    (1..=max_g, 1..=max_n).prop_flat_map(move |(g, n)| {
        let m = g + n;
        let letter = ((g + 1)..=m)
            .prop_flat_map(|j| (1..j, Just(j), prop::bool::ANY))
            .prop_map(|(i, j, pos)| PureLetter::new(i, j, if pos { 1 } else { -1 }));
        prop::collection::vec(letter, 0..=max_len).prop_map(move |ls| (g, n, PureWord::new(m, ls).unwrap()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn vertical_round_trip(w in pure_word(6, 12)) {
        let f = comb_vertical(&w).unwrap();
        prop_assert!(f.alphabets_ok());
        prop_assert!(recompose_matches(&w, &f.recompose()).unwrap());
    }

    #[test]
    fn horizontal_round_trip(w in pure_word(6, 12)) {
        let f = comb_horizontal(&w).unwrap();
        prop_assert!(f.alphabets_ok());
        prop_assert!(recompose_matches(&w, &f.recompose()).unwrap());
    }

    #[test]
    fn pgn_forms((g, n, w) in pgn_word(3, 3, 10)) {
        let v = comb_pgn_vertical(&w, g, n).unwrap();
        prop_assert!((2..=g).all(|j| v.column(j).is_empty()));
        prop_assert!(recompose_matches(&w, &v.recompose()).unwrap());
        let h = comb_pgn_horizontal(&w, g, n).unwrap();
        prop_assert!(h.certify().ok());
        prop_assert!(recompose_matches(&w, &h.recompose()).unwrap());
    }

    #[test]
    fn combing_is_a_function_of_the_element(w in pure_word(5, 8)) {
        // inserting a cancelling pair does not change the forms
        let m = w.strands();
        let mut padded = w.letters().to_vec();
        let mid = padded.len() / 2;
        padded.insert(mid, PureLetter::new(1, m, 1));
        padded.insert(mid + 1, PureLetter::new(1, m, -1));
        let padded = PureWord::new(m, padded).unwrap();
        prop_assert_eq!(comb_vertical(&w).unwrap(), comb_vertical(&padded).unwrap());
        prop_assert_eq!(comb_horizontal(&w).unwrap(), comb_horizontal(&padded).unwrap());
    }
}
