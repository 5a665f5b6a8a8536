mod common;

use std::collections::HashMap;

use common::*;
use gwpeel::sampler::{sample_conditioned_with_budget, DEFAULT_UNCONDITIONED_CAP};
use gwpeel::{
    sample_conditioned, sample_kesten, sample_unconditioned, solve_qs, Family,
    OffspringDistribution, RandomStream, SamplerError,
};
use rayon::prelude::*;

fn shape_frequencies(
    d: &OffspringDistribution,
    n: usize,
    draws: usize,
    seed: u64,
) -> HashMap<Vec<u32>, f64> {
    let mut counts: HashMap<Vec<u32>, f64> = HashMap::new();
    let mut rng = RandomStream::new(seed, 0);
    for _ in 0..draws {
        let t = sample_conditioned(d, n, &mut rng).unwrap();
        *counts.entry(t.into_degrees()).or_default() += 1.0 / draws as f64;
    }
    counts
}

/// Exact conditioned law over all trees of size `n`.
fn exact_shapes(pmf: &[f64], n: usize) -> HashMap<Vec<u32>, f64> {
    let allowed: Vec<u32> = (0..pmf.len() as u32)
        .filter(|&d| pmf[d as usize] > 0.0)
        .collect();
    let trees: Vec<Vec<u32>> = all_trees(n, &allowed)
        .into_iter()
        .filter(|t| t.len() == n)
        .collect();
    let z: f64 = trees.iter().map(|t| tree_probability(t, pmf)).sum();
    trees
        .into_iter()
        .map(|t| {
            let w = tree_probability(&t, pmf) / z;
            (t, w)
        })
        .collect()
}

fn total_variation(a: &HashMap<Vec<u32>, f64>, b: &HashMap<Vec<u32>, f64>) -> f64 {
    let mut keys: Vec<&Vec<u32>> = a.keys().chain(b.keys()).collect();
    keys.sort();
    keys.dedup();
    0.5 * keys
        .into_iter()
        .map(|k| (a.get(k).copied().unwrap_or(0.0) - b.get(k).copied().unwrap_or(0.0)).abs())
        .sum::<f64>()
}

#[test]
fn unconditioned_size_frequencies() {
    let d = OffspringDistribution::binary();
    let draws = 1_000_000u64;
    let sizes: Vec<Option<usize>> = (0..draws)
        .into_par_iter()
        .map(|i| {
            let mut rng = RandomStream::new(17, i);
            sample_unconditioned(&d, &mut rng, 10_000)
                .ok()
                .map(|t| t.len())
        })
        .collect();
    let freq = |n: usize| sizes.iter().filter(|s| **s == Some(n)).count() as f64 / draws as f64;
    assert!((freq(1) - 0.5).abs() < 0.002);
    assert!((freq(3) - 0.125).abs() < 0.002);
    assert_eq!(freq(2), 0.0);
}

#[test]
fn two_full_binary_shapes_of_five() {
    let freq = shape_frequencies(&OffspringDistribution::binary(), 5, 100_000, 1);
    assert_eq!(freq.len(), 2);
    for f in freq.values() {
        assert!((f - 0.5).abs() < 0.01, "{f}");
    }
}

#[test]
fn geometric_is_uniform_on_plane_trees() {
    let d = OffspringDistribution::geometric();
    let freq = shape_frequencies(&d, 4, 100_000, 2);
    let uniform: HashMap<Vec<u32>, f64> = all_trees(4, &[0, 1, 2, 3])
        .into_iter()
        .filter(|t| t.len() == 4)
        .map(|t| (t, 0.2))
        .collect();
    assert_eq!(uniform.len(), 5);
    assert!(total_variation(&freq, &uniform) < 0.02);
}

#[test]
fn conditioned_law_matches_exact_weights() {
    let poisson = OffspringDistribution::cayley();
    let truncated: Vec<f64> = (0..8).map(|i| poisson.pmf(i)).collect();
    for (d, pmf, n) in [
        (OffspringDistribution::binomial(3).unwrap(), None, 5),
        (OffspringDistribution::motzkin(), None, 6),
        (
            OffspringDistribution::new(Family::FiniteSupport(vec![0.4, 0.3, 0.2, 0.1])).unwrap(),
            None,
            5,
        ),
        (poisson.clone(), Some(truncated), 5),
    ] {
        let pmf = pmf.unwrap_or_else(|| d.table().to_vec());
        let exact = exact_shapes(&pmf, n);
        let freq = shape_frequencies(&d, n, 100_000, 3);
        let tv = total_variation(&freq, &exact);
        assert!(tv < 0.02, "{} n={n}: tv {tv}", d.label());
    }
}

#[test]
fn cycle_lemma_sampler_matches_plain_rejection() {
    // literal scheme: redraw the whole i.i.d. sequence until its sum fits
    let d = OffspringDistribution::catalan();
    let n = 6;
    let draws = 50_000;
    let mut rng = RandomStream::new(9, 0);
    let mut naive: HashMap<Vec<u32>, f64> = HashMap::new();
    let mut accepted = 0;
    while accepted < draws {
        let seq: Vec<u32> = (0..n).map(|_| d.sample(&mut rng)).collect();
        if seq.iter().sum::<u32>() as usize != n - 1 {
            continue;
        }
        accepted += 1;
        *naive.entry(rotate_by_search(&seq)).or_default() += 1.0 / draws as f64;
    }
    let fast = shape_frequencies(&d, n, draws, 10);
    assert!(total_variation(&fast, &naive) < 0.03);
}

#[test]
fn acceptance_rate_falls_with_size() {
    let d = OffspringDistribution::binary();
    let mean_attempts = |n: usize| {
        let mut rng = RandomStream::new(4, n as u64);
        let total: u64 = (0..400)
            .map(|_| {
                sample_conditioned_with_budget(&d, n, &mut rng, 1_000_000)
                    .unwrap()
                    .1
            })
            .sum();
        total as f64 / 400.0
    };
    let a = mean_attempts(101);
    let b = mean_attempts(10_001);
    assert!(b > a, "{a} {b}");
}

#[test]
fn conditioned_sizes_and_validity() {
    let mut rng = RandomStream::new(21, 0);
    for (_, d) in OffspringDistribution::table_families() {
        for n in [1, 2, 10, 333, 5000] {
            let n = d.nearest_attainable_size(n) as usize;
            let t = sample_conditioned(&d, n, &mut rng).unwrap();
            assert_eq!(t.len(), n);
            assert_eq!(
                t.degrees().iter().map(|&x| x as usize).sum::<usize>(),
                n - 1
            );
        }
    }
    assert_eq!(
        sample_conditioned(&OffspringDistribution::tary(3).unwrap(), 5, &mut rng).unwrap_err(),
        SamplerError::UnattainableSize { n: 5, attempts: 0 }
    );
}

#[test]
fn kesten_spine_degrees() {
    let d = OffspringDistribution::cayley();
    let mut rng = RandomStream::new(8, 0);
    let mut total = 0u64;
    let mut count = 0u64;
    while count < 100_000 {
        let k = sample_kesten(&d, 9, 10_000, &mut rng).unwrap();
        for &u in &k.spine {
            total += k.tree.degree(u) as u64;
            count += 1;
        }
    }
    let mean = total as f64 / count as f64;
    assert!((mean - 2.0).abs() < 0.02, "{mean}");

    let k = sample_kesten(&OffspringDistribution::binary(), 0, 100, &mut rng).unwrap();
    assert_eq!(k.spine, vec![0]);
    assert_eq!(k.tree.degree(0), 2);
}

#[test]
fn spine_child_position_is_uniform() {
    let d = OffspringDistribution::tary(3).unwrap();
    let mut rng = RandomStream::new(12, 0);
    let mut slots = [0usize; 3];
    for _ in 0..30_000 {
        let k = sample_kesten(&d, 1, 1_000, &mut rng).unwrap();
        let child = k.spine[1];
        let pos = k.tree.children(0).position(|c| c == child).unwrap();
        slots[pos] += 1;
    }
    for s in slots {
        assert!((s as f64 / 30_000.0 - 1.0 / 3.0).abs() < 0.015, "{slots:?}");
    }
}

#[test]
fn cover_fraction_matches_root_marking() {
    // P{root marked} on unconditioned trees is the fixed point q_s
    let d = OffspringDistribution::binary();
    let s = 3;
    let draws = 100_000u64;
    let marks: Vec<Option<bool>> = (0..draws)
        .into_par_iter()
        .map(|i| {
            let mut rng = RandomStream::new(33, i);
            sample_unconditioned(&d, &mut rng, DEFAULT_UNCONDITIONED_CAP)
                .ok()
                .map(|t| t.mark_spvc(s).marked[0])
        })
        .collect();
    let done: Vec<bool> = marks.into_iter().flatten().collect();
    let p = done.iter().filter(|&&m| m).count() as f64 / done.len() as f64;
    let se = (p * (1.0 - p) / done.len() as f64).sqrt();
    let q3 = solve_qs(&d, s).unwrap().value;
    assert!((p - q3).abs() < 3.0 * se, "{p} vs {q3} (se {se})");
}

#[test]
fn streams_reproduce_trees() {
    let d = OffspringDistribution::motzkin();
    let a = sample_conditioned(&d, 1000, &mut RandomStream::new(5, 77)).unwrap();
    let b = sample_conditioned(&d, 1000, &mut RandomStream::new(5, 77)).unwrap();
    let c = sample_conditioned(&d, 1000, &mut RandomStream::new(5, 78)).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
}
