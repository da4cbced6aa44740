use std::collections::BTreeMap;

use proptest::prelude::*;

use khoval_core::jones::euler_matches;
use khoval_core::{
    braid_to_pd, build_complex, canonical_genus, classify, jones_from_kh, jones_oracle, kh, resolve, seifert,
    seifert_state_index, Case, Diagram, HomologyTable, PositivityClass, Sign,
};

fn braid() -> impl Strategy<Value = (Vec<i32>, u32)> {
    (2u32..=4).prop_flat_map(|strands| {
        let g = strands as i32 - 1;
        let letter = (1..=g, any::<bool>()).prop_map(|(x, neg)| if neg { -x } else { x });
        (proptest::collection::vec(letter, 1..=9), Just(strands))
    })
}

/// Braids with at most one negative letter, so the formulas usually apply.
fn almost_positive_braid() -> impl Strategy<Value = (Vec<i32>, u32)> {
    (braid(), any::<prop::sample::Index>()).prop_map(|((word, strands), k)| {
        let neg = k.index(word.len());
        let w = word.iter().enumerate().map(|(i, &x)| if i == neg { -x.abs() } else { x.abs() }).collect();
        (w, strands)
    })
}

fn table(t: &HomologyTable) -> BTreeMap<(i32, i32), usize> {
    t.entries().map(|(i, j, d)| ((i, j), d)).collect()
}

fn diagram((word, strands): &(Vec<i32>, u32)) -> Diagram {
    braid_to_pd(word, *strands).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn signs_follow_braid_letters(b in braid()) {
        let d = diagram(&b);
        prop_assert_eq!(d.n_plus() + d.n_minus(), d.crossing_count());
        prop_assert_eq!(d.n_minus(), b.0.iter().filter(|&&x| x < 0).count());
        let m = d.mirror().unwrap();
        for (x, y) in d.crossings().iter().zip(m.crossings()) {
            prop_assert_eq!(y.sign, x.sign.flipped());
        }
    }

    #[test]
    fn seifert_state_reproduces_seifert_circles(b in braid()) {
        let d = diagram(&b);
        let sd = seifert(&d);
        prop_assert_eq!(resolve(&d, seifert_state_index(&d)).circle_count, sd.circle_count);
        prop_assert!(sd.circle_count >= d.component_count());
        // Closed braids: one Seifert circle per strand.
        prop_assert_eq!(sd.circle_count, b.1 as usize);
        if d.component_count() == 1 && d.is_connected() {
            prop_assert!(canonical_genus(&d).unwrap().is_integer());
        }
    }

    #[test]
    fn classification_matches_brute_force(b in almost_positive_braid()) {
        let d = diagram(&b);
        let sd = seifert(&d);
        let negatives: Vec<usize> = (0..d.crossing_count()).filter(|&i| d.crossings()[i].sign == Sign::Negative).collect();
        prop_assert_eq!(negatives.len(), 1);
        let p = negatives[0];
        let norm = |(a, b): (u32, u32)| (a.min(b), a.max(b));
        let shared = (0..d.crossing_count()).any(|i| i != p && norm(sd.crossing_pairs[i]) == norm(sd.crossing_pairs[p]));
        let expected = if shared { Case::Case2 } else { Case::Case1 };
        prop_assert_eq!(classify(&d, &sd), PositivityClass::AlmostPositiveDiagram { negative_index: p, case: expected });
    }

    #[test]
    fn case1_circle_counts(b in almost_positive_braid()) {
        let d = diagram(&b);
        let sd = seifert(&d);
        let PositivityClass::AlmostPositiveDiagram { negative_index, case: Case::Case1 } = classify(&d, &sd) else {
            return Ok(());
        };
        let d = d.with_crossing_first(negative_index).unwrap();
        let s = sd.circle_count;
        prop_assert_eq!(resolve(&d, 1).circle_count, s);
        for j in 1..d.crossing_count() {
            prop_assert_eq!(resolve(&d, 1 << j).circle_count, s - 2, "position {}", j);
        }
    }

    #[test]
    fn homology_matches_state_sum(b in braid()) {
        let d = diagram(&b);
        let t = kh(&d, 18).unwrap();
        let v = jones_oracle(&d, 20).unwrap();
        prop_assert!(euler_matches(&t, &v));
        prop_assert_eq!(jones_from_kh(&t, d.component_count()).unwrap(), v);
    }

    #[test]
    fn homology_is_a_diagram_invariant(b in braid(), shift in 1u32..5, arc in 1u32..4) {
        let d = diagram(&b);
        let base = table(&kh(&d, 18).unwrap());
        let n = d.crossing_count();
        let order: Vec<usize> = (0..n).rev().collect();
        prop_assert_eq!(&table(&kh(&d.with_crossing_order(&order).unwrap(), 18).unwrap()), &base);
        // Renumbering arcs permutes the circle order inside every state.
        prop_assert_eq!(&table(&kh(&d.with_rotated_component(0, shift).unwrap(), 18).unwrap()), &base);
        let arc = arc.min(d.arc_count());
        for sign in [Sign::Positive, Sign::Negative] {
            prop_assert_eq!(&table(&kh(&d.with_kink(arc, sign).unwrap(), 18).unwrap()), &base);
        }
    }

    #[test]
    fn complex_is_a_complex(b in braid()) {
        let c = build_complex(&diagram(&b), 18).unwrap();
        prop_assert!(c.check_d_squared());
        prop_assert!(c.check_grading());
    }
}
