use iwahori::group::IwahoriWeyl;
use proptest::prelude::*;

const SPECS: [&str; 6] = ["A1", "A2", "C2", "G2", "2A2", "2A3"];

fn setup() -> Vec<IwahoriWeyl> {
    SPECS.iter().map(|s| s.parse().unwrap()).collect()
}

fn word_strategy() -> impl Strategy<Value = (usize, Vec<usize>, Vec<usize>)> {
    (0..SPECS.len(), prop::collection::vec(0usize..8, 0..10), prop::collection::vec(0usize..8, 0..10))
}

fn element(g: &IwahoriWeyl, raw: &[usize]) -> (Vec<usize>, iwahori::extended_weyl::ExtendedElement) {
    let n = g.system().walls().len();
    let word: Vec<usize> = raw.iter().map(|i| i % n).collect();
    let w = g.from_word(&word).unwrap();
    (word, w)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn length_bounded_by_word_with_same_parity((k, a, _) in word_strategy()) {
        let g = &setup()[k];
        let (word, w) = element(g, &a);
        let l = g.length(&w);
        prop_assert!(l <= word.len());
        prop_assert_eq!(l % 2, word.len() % 2);
        prop_assert_eq!(g.reduced_word(&w).len(), l);
        prop_assert!(g.length_nr(&w) >= l);
    }

    #[test]
    fn format_parse_round_trip((k, a, b) in word_strategy(), class in 0usize..4) {
        let g = &setup()[k];
        let (_, w) = element(g, &a);
        let (_, v) = element(g, &b);
        let classes: Vec<_> = g.omega().classes().cloned().collect();
        let o = g.omega_element(&classes[class % classes.len()]).unwrap();
        let x = g.multiply(&g.multiply(&w, &o).unwrap(), &v).unwrap();
        let text = g.format_element(&x);
        prop_assert_eq!(g.parse_element(&text).unwrap(), x);
    }

    #[test]
    fn kottwitz_is_a_homomorphism((k, a, b) in word_strategy(), c1 in 0usize..4, c2 in 0usize..4) {
        let g = &setup()[k];
        let classes: Vec<_> = g.omega().classes().cloned().collect();
        let w = g.multiply(&g.omega_element(&classes[c1 % classes.len()]).unwrap(), &element(g, &a).1).unwrap();
        let v = g.multiply(&element(g, &b).1, &g.omega_element(&classes[c2 % classes.len()]).unwrap()).unwrap();
        let wv = g.multiply(&w, &v).unwrap();
        prop_assert_eq!(g.kottwitz(&wv), g.omega().add(&g.kottwitz(&w), &g.kottwitz(&v)));
        let inv = g.inverse(&w).unwrap();
        prop_assert!(g.kottwitz(&g.multiply(&w, &inv).unwrap()).is_zero());
        prop_assert_eq!(g.length(&inv), g.length(&w));
    }

    #[test]
    fn bruhat_is_antisymmetric_and_respects_length((k, a, b) in word_strategy()) {
        let g = &setup()[k];
        let (_, w) = element(g, &a);
        let (_, v) = element(g, &b);
        let up = g.bruhat_leq(&w, &v);
        if up {
            prop_assert!(g.length(&w) <= g.length(&v));
            prop_assert!(g.length_nr(&w) <= g.length_nr(&v));
        }
        if up && g.bruhat_leq(&v, &w) {
            prop_assert_eq!(w.clone(), v.clone());
        }
        prop_assert!(g.bruhat_leq(&g.identity(), &w));
        prop_assert!(g.bruhat_leq(&w, &w));
    }
}
