use groupreps::artifact::{Artifact, BlockLength, BuildOptions, RepKind};
use groupreps::block::BlockRep;
use groupreps::cube::greedy_cube_sequence;
use groupreps::fm::CycleStructure;
use groupreps::group::{make_cyclic, make_dihedral, make_direct, make_semidirect, SemidirectSpec};
use groupreps::serial::{Reader, Writer};
use groupreps::special::ForwardBackwardMap;
use groupreps::verify::{verify, VerifyMode};
use groupreps::{ElementId, Group, GroupTable};
use proptest::prelude::*;

fn permutation() -> impl Strategy<Value = Vec<u32>> {
    (1usize..200).prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
}

fn small_group() -> impl Strategy<Value = GroupTable> {
    prop_oneof![
        (1usize..40).prop_map(|n| make_cyclic(n).unwrap()),
        (3usize..20).prop_map(|n| make_dihedral(n).unwrap()),
        (1usize..8, 1usize..8)
            .prop_map(|(a, b)| make_direct(&make_cyclic(a).unwrap(), &make_cyclic(b).unwrap()).unwrap()),
        Just(make_semidirect(&SemidirectSpec::cyclic_by_cyclic(13, 3, 3).unwrap()).unwrap()),
    ]
}

proptest! {
    #[test]
    fn cycle_power_matches_iteration(perm in permutation(), g_seed in any::<u32>(), d in 0u64..5000) {
        let n = perm.len() as u32;
        let g = g_seed % n + 1;
        let cs = CycleStructure::build(&perm).unwrap();
        let want = (0..d).fold(g, |x, _| perm[x as usize - 1]);
        prop_assert_eq!(cs.apply_power(g, d).unwrap(), want);
    }

    #[test]
    fn forward_backward_round_trip(sizes in prop::collection::vec(1u64..50, 1..4), picks in prop::collection::vec(any::<u64>(), 1..30)) {
        let coords: Vec<Vec<u32>> = picks
            .iter()
            .map(|p| sizes.iter().enumerate().map(|(i, &s)| ((p >> (8 * i)) % s) as u32).collect())
            .collect();
        let mut seen = std::collections::HashSet::new();
        let coords: Vec<Vec<u32>> = coords.into_iter().filter(|c| seen.insert(c.clone())).collect();
        let map = ForwardBackwardMap::new(sizes.clone(), &coords).unwrap();
        for (i, c) in coords.iter().enumerate() {
            prop_assert_eq!(&map.coordinates(ElementId::from_index(i)), c);
        }
        let mut w = Writer::new();
        map.write(&mut w);
        let bytes = w.into_bytes();
        let mut r = Reader::new(&bytes);
        prop_assert_eq!(ForwardBackwardMap::read(&mut r).unwrap(), map);
    }

    #[test]
    fn block_rep_agrees_for_every_length(g in small_group()) {
        let (seq, _) = greedy_cube_sequence(&g);
        for l in 1..=seq.k().max(1) {
            let rep = BlockRep::build(&g, &seq, l).unwrap();
            prop_assert!(verify(&rep, &g, VerifyMode::Exhaustive, 0).unwrap().passed());
        }
    }

    #[test]
    fn artifacts_round_trip(g in small_group(), l in 1usize..4) {
        let opts = BuildOptions { block: BlockLength::Exact(l.min(greedy_cube_sequence(&g).0.k().max(1))), ..BuildOptions::default() };
        for kind in RepKind::ALL {
            if let Ok(art) = Artifact::build(kind, &g, &opts) {
                let back = Artifact::from_bytes(&art.to_bytes()).unwrap();
                prop_assert_eq!(&back, &art);
                prop_assert!(verify(back.rep(), &g, VerifyMode::Random(500), 1).unwrap().passed());
            }
        }
    }

    #[test]
    fn truncated_artifacts_are_rejected(g in small_group(), cut in any::<prop::sample::Index>()) {
        let opts = BuildOptions { block: BlockLength::Exact(1), ..BuildOptions::default() };
        let art = Artifact::build(RepKind::Block, &g, &opts).unwrap();
        let bytes = art.to_bytes();
        let at = cut.index(bytes.len());
        prop_assert!(Artifact::from_bytes(&bytes[..at]).is_err());
    }
}

#[test]
fn group_order_matches_table() {
    let g = make_dihedral(7).unwrap();
    assert_eq!(Group::order(&g), 14);
}
