//! Random self-avoiding walks: lattice constraints on the contact map and
//! soundness of the split search.

use proptest::prelude::*;
use stacklab::contactmap::{contacts, decompose_heuristic, verify_decomposition, LatticeWalk, Move};

/// Grows a walk move by move, skipping moves that would revisit a site.
fn walk(choices: Vec<u8>) -> LatticeWalk {
    let all = [Move::U, Move::D, Move::L, Move::R];
    let mut moves: Vec<Move> = Vec::new();
    for c in choices {
        let mv = all[(c % 4) as usize];
        let mut trial = moves.clone();
        trial.push(mv);
        if LatticeWalk::new(trial.clone()).is_ok() {
            moves = trial;
        }
    }
    LatticeWalk::new(moves).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn contacts_respect_the_square_lattice(choices in prop::collection::vec(any::<u8>(), 0..40)) {
        let w = walk(choices);
        let d = contacts(&w);
        prop_assert_eq!(d.n(), w.n());
        let coords = w.coords();
        for &(i, j) in d.arcs() {
            // Bipartite lattice: contacts join vertices of opposite parity,
            // at least three steps apart along the chain.
            prop_assert!(j - i >= 3 && (j - i) % 2 == 1);
            let (a, b) = (coords[i - 1], coords[j - 1]);
            prop_assert_eq!((a.0 - b.0).abs() + (a.1 - b.1).abs(), 1);
        }
        let p = d.degrees();
        for v in 2..d.n() {
            prop_assert!(p.deg(v) <= 2);
        }
        if let Some(parts) = decompose_heuristic(&d) {
            prop_assert!(verify_decomposition(&d, &parts).unwrap());
        }
    }
}
