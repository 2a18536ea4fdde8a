use proptest::prelude::*;
use skolemgen::oracle::{oracle_enumerate, oracle_validate};
use skolemgen::sts::pair_counts;
use skolemgen::{base_blocks, develop_sts, enumerate_skolem, validate_skolem, TripleSystem};

/// Direct pair scan, independent of `verify_sts`'s counter table.
fn covers_each_pair_once(sys: &TripleSystem) -> bool {
    (0..sys.v).all(|a| {
        (a + 1..sys.v).all(|b| {
            sys.blocks
                .iter()
                .filter(|blk| blk.contains(&a) && blk.contains(&b))
                .count()
                == 1
        })
    })
}

#[test]
fn oracle_contains_known_examples() {
    let four = oracle_enumerate(4).unwrap();
    assert_eq!(four.len(), 6);
    for text in ["3,4,2,3,2,4,1,1", "4,2,3,2,4,3,1,1"] {
        assert!(four.contains(&text.parse().unwrap()), "{text}");
    }
    for n in 1..=6 {
        let set = oracle_enumerate(n).unwrap();
        assert!(set.iter().all(|w| set.contains(&w.reverse())));
    }
}

#[test]
fn fano_plane_by_direct_scan() {
    let sys = develop_sts(&[[0, 1, 3]], 1);
    assert!(covers_each_pair_once(&sys));
    assert!(skolemgen::verify_sts(&sys));
}

#[test]
fn every_small_sequence_builds_an_sts() {
    for n in [1usize, 4, 5] {
        for w in enumerate_skolem(n, true).unwrap() {
            let base = base_blocks(&w, 0).unwrap();
            assert_eq!(base.len(), n);
            let sys = develop_sts(&base, n);
            assert!(skolemgen::verify_sts(&sys), "{w}");
            let v = sys.v as usize;
            let covered: u32 = pair_counts(&sys).unwrap().iter().sum();
            assert_eq!(covered as usize, 3 * sys.blocks.len());
            assert_eq!(covered as usize, v * (v - 1) / 2);
        }
    }
}

#[test]
fn offsets_give_systems_too() {
    let w = "3,4,2,3,2,4,1,1".parse().unwrap();
    for x in [0, 1, 12, 24] {
        let sys = develop_sts(&base_blocks(&w, x).unwrap(), 4);
        assert!(covers_each_pair_once(&sys), "x={x}");
    }
}

fn to_wide(values: &[u32]) -> Vec<i64> {
    values.iter().map(|&v| v.into()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn recognizers_agree_on_random_input(values in prop::collection::vec(-1i64..7, 0..11)) {
        prop_assert_eq!(validate_skolem(&values), oracle_validate(&values));
    }
}

proptest! {
    #[test]
    fn recognizers_agree_near_valid_sequences(
        pick in 0usize..16,
        pos in 0usize..10,
        delta in -2i64..3,
        swap in 0usize..10,
    ) {
        let mut pool: Vec<Vec<u32>> = Vec::new();
        for n in [1usize, 4, 5] {
            pool.extend(oracle_enumerate(n).unwrap().into_iter().map(|w| w.into_values()));
        }
        let mut values = to_wide(&pool[pick % pool.len()]);
        let len = values.len();
        values[pos % len] += delta;
        values.swap(swap % len, (swap + 1) % len);
        prop_assert_eq!(validate_skolem(&values), oracle_validate(&values));
    }
}
