//! Brick weights checked against explicit enumeration of every filling.

use circulant_core::bricks::{
    class_weight_sum, enumerate_filling_classes, filling_weight, row_weight_sum, BrickMultiset,
};
use circulant_core::exactmath::ExactInt;
use circulant_core::partitions::{partitions_of, Partition};
use proptest::prelude::*;

/// Sum of weights over every distinct filling, built row by row and brick
/// by brick. Picking a brick *length* (not a brick) at each step makes
/// fillings that differ only by swapping equal bricks coincide.
fn brute_weight(rows: &[u32], counts: &mut Vec<u32>) -> u64 {
    fn fill_row(
        rows: &[u32],
        space_left: u32,
        last: u32,
        weight: u64,
        counts: &mut Vec<u32>,
    ) -> u64 {
        if space_left == 0 {
            return brute_weight_inner(&rows[1..], counts, weight * last as u64);
        }
        let mut total = 0;
        for len in 1..=space_left.min(counts.len() as u32) {
            let slot = len as usize - 1;
            if counts[slot] == 0 {
                continue;
            }
            counts[slot] -= 1;
            total += fill_row(rows, space_left - len, len, weight, counts);
            counts[slot] += 1;
        }
        total
    }
    fn brute_weight_inner(rows: &[u32], counts: &mut Vec<u32>, weight: u64) -> u64 {
        match rows.first() {
            None => {
                if counts.iter().all(|&c| c == 0) {
                    weight
                } else {
                    0
                }
            }
            Some(&len) => fill_row(rows, len, 0, weight, counts),
        }
    }
    brute_weight_inner(rows, counts, 1)
}

fn brute_filling_weight(lambda: &Partition, mu: &Partition) -> ExactInt {
    let mut counts = mu.multiplicities();
    ExactInt::from(brute_weight(lambda.parts(), &mut counts))
}

#[test]
fn worked_example_has_four_fillings() {
    // weights 4, 2, 2, 2
    let lambda = Partition::new(vec![4, 2]).unwrap();
    let mu = Partition::new(vec![2, 2, 1, 1]).unwrap();
    assert_eq!(brute_filling_weight(&lambda, &mu), ExactInt::from(10));
    assert_eq!(filling_weight(&lambda, &mu).unwrap(), ExactInt::from(10));
}

#[test]
fn memoized_weight_matches_enumeration() {
    for q in 1..=7 {
        let all = partitions_of(q, None);
        for lambda in &all {
            for mu in &all {
                assert_eq!(
                    filling_weight(lambda, mu).unwrap(),
                    brute_filling_weight(lambda, mu),
                    "λ={lambda} μ={mu}"
                );
            }
        }
    }
}

#[test]
fn class_sums_match_weight_up_to_ten() {
    for q in 1..=10 {
        let all = partitions_of(q, None);
        for mu in &all {
            for lambda in &all {
                let total: ExactInt = enumerate_filling_classes(lambda, mu)
                    .unwrap()
                    .iter()
                    .map(class_weight_sum)
                    .sum();
                assert_eq!(total, filling_weight(lambda, mu).unwrap(), "λ={lambda} μ={mu}");
            }
        }
    }
}

#[test]
fn class_weight_matches_enumeration_per_class() {
    // brute force restricted to one class: fix each row's brick multiset
    for q in 2..=7 {
        let all = partitions_of(q, None);
        for lambda in &all {
            for mu in &all {
                for class in enumerate_filling_classes(lambda, mu).unwrap() {
                    // distinct row orders of the class's row assignments
                    let mut assignments = vec![class.rows().to_vec()];
                    let mut seen = std::collections::HashSet::new();
                    let mut brute = ExactInt::from(0);
                    while let Some(rows) = assignments.pop() {
                        if !seen.insert(rows.clone()) {
                            continue;
                        }
                        let mut w = ExactInt::from(1);
                        for (len, bricks) in lambda.parts().iter().zip(&rows) {
                            let mut counts = bricks.to_partition().multiplicities();
                            w *= brute_weight(&[*len], &mut counts);
                        }
                        brute += w;
                        for i in 0..rows.len() {
                            for j in i + 1..rows.len() {
                                if lambda.parts()[i] == lambda.parts()[j] && rows[i] != rows[j] {
                                    let mut swapped = rows.clone();
                                    swapped.swap(i, j);
                                    assignments.push(swapped);
                                }
                            }
                        }
                    }
                    assert_eq!(class_weight_sum(&class), brute, "{class:?}");
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn row_formula_matches_arrangements(lengths in prop::collection::vec(1u32..5, 1..7)) {
        let bricks = BrickMultiset::from_lengths(&lengths);
        let mass = bricks.mass();
        let mut counts = bricks.to_partition().multiplicities();
        let brute = brute_weight(&[mass], &mut counts);
        prop_assert_eq!(row_weight_sum(mass, &bricks).unwrap(), ExactInt::from(brute));
    }
}
