//! Prints how quickly (or whether) the randomized falsifiers find witnesses
//! on a selection of cones. This is the tool used to pick the pinned seeds
//! and budgets in the test matrices: a cone earns a slot only if its verdict
//! pattern is stable across probe seeds with a wide margin.
//!
//! Run with: cargo run --release -p conelab --example falsification_rates

use std::time::Instant;

use conelab::cone::{ConeDescriptor, Direction, Tolerance};
use conelab::sample::random_generated_cone;
use conelab::{check_duality, check_invariance, check_isotone, check_subadditive, dual, Verdict};

fn tag(v: Verdict, witness_index: Option<u64>) -> String {
    match (v, witness_index) {
        (Verdict::Falsified, Some(i)) => format!("falsified@{i}"),
        (Verdict::Falsified, None) => "falsified".into(),
        (Verdict::Unfalsified, _) => "unfalsified".into(),
    }
}

fn direction_for(dim: usize) -> Direction {
    if dim.is_multiple_of(2) {
        Direction::Nondecreasing
    } else {
        Direction::Nonincreasing
    }
}

/// The duality matrix proposed for the acceptance suite.
fn matrix() -> Vec<(String, ConeDescriptor)> {
    let mut cones: Vec<(String, ConeDescriptor)> = Vec::new();
    for dim in 2..=6 {
        cones.push((format!("orthant{dim}"), ConeDescriptor::Orthant { dim }));
    }
    for dim in 3..=5 {
        cones.push((format!("lorentz{dim}"), ConeDescriptor::Lorentz { dim }));
    }
    for dim in 3..=8 {
        cones.push((
            format!("monotone{dim}"),
            ConeDescriptor::Monotone { dim, direction: direction_for(dim) },
        ));
    }
    for dim in 3..=8 {
        cones.push((
            format!("mnn{dim}"),
            ConeDescriptor::MonotoneNonneg { dim, direction: direction_for(dim) },
        ));
    }
    for seed in [101u64, 102, 103, 104, 105] {
        let dim = if seed % 2 == 1 { 2 } else { 3 };
        cones.push((format!("gen-s{seed}-d{dim}"), random_generated_cone(seed, dim, dim + 1)));
    }
    cones
}

fn main() {
    let tol = Tolerance::default();
    let samples: u64 = 10_000;

    println!("== duality sub-verdicts at {samples} samples (subadditive gets 4x) ==");
    let mut cones = matrix();
    cones.push((
        "acute-wedge".into(),
        ConeDescriptor::FinitelyGenerated {
            dim: 2,
            generators: vec![vec![1.0, 0.0], vec![1.0, 1.0]],
        },
    ));
    cones.push((
        "obtuse-wedge".into(),
        ConeDescriptor::FinitelyGenerated {
            dim: 2,
            generators: vec![vec![1.0, 0.0], vec![-1.0, 2.0]],
        },
    ));
    for seed in [106u64, 107, 108] {
        let dim = if seed % 2 == 1 { 2 } else { 3 };
        cones.push((format!("gen-s{seed}-d{dim}"), random_generated_cone(seed, dim, dim + 1)));
    }

    let t0 = Instant::now();
    for (name, k) in &cones {
        let l = dual(k);
        print!("{name:16}");
        for probe in [1u64, 2, 3, 7] {
            let iso = check_isotone(k, k, samples, probe, &tol).unwrap();
            let sub = check_subadditive(&l, &l, 4 * samples, probe, &tol).unwrap();
            let agree = iso.verdict == sub.verdict;
            print!(
                "  s{probe}: iso {:<13} sub {:<13}{}",
                tag(iso.verdict, iso.witness.as_ref().map(|w| w.sample_index)),
                tag(sub.verdict, sub.witness.as_ref().map(|w| w.sample_index)),
                if agree { "" } else { "  DISAGREE" }
            );
        }
        println!();
    }
    println!("[duality sweep took {:.1}s]", t0.elapsed().as_secs_f64());

    println!();
    println!("== invariance vs isotone at equal budget 2000 (diagonal of the matrix) ==");
    let mut pairs: Vec<(String, ConeDescriptor, ConeDescriptor)> = cones
        .iter()
        .map(|(name, k)| (format!("{name}/same"), k.clone(), k.clone()))
        .collect();
    pairs.push((
        "orthant3/monotone3".into(),
        ConeDescriptor::Orthant { dim: 3 },
        ConeDescriptor::Monotone { dim: 3, direction: Direction::Nonincreasing },
    ));
    pairs.push((
        "monotone4/orthant4".into(),
        ConeDescriptor::Monotone { dim: 4, direction: Direction::Nonincreasing },
        ConeDescriptor::Orthant { dim: 4 },
    ));

    let t1 = Instant::now();
    for (name, c, k) in &pairs {
        print!("{name:20}");
        for probe in [1u64, 2, 3, 11] {
            let inv = check_invariance(c, k, 2_000, probe, &tol).unwrap();
            let iso = check_isotone(c, k, 2_000, probe, &tol).unwrap();
            print!(
                "  s{probe}: inv {:<13} iso {:<13}{}",
                tag(inv.verdict, inv.witness.as_ref().map(|w| w.sample_index)),
                tag(iso.verdict, iso.witness.as_ref().map(|w| w.sample_index)),
                if inv.verdict == iso.verdict { "" } else { "  DISAGREE" }
            );
        }
        println!();
    }
    println!("[invariance sweep took {:.1}s]", t1.elapsed().as_secs_f64());

    println!();
    println!("== full duality report on the shipped catalog at 10^4 ==");
    for k in conelab::catalog() {
        let rep = check_duality(&k, samples, 7, &tol).unwrap();
        let subs = rep.sub_reports.as_ref().unwrap();
        println!(
            "{:60} duality {:<12} (iso {:<12} sub {:<12})",
            format!("{k:?}"),
            tag(rep.verdict, None),
            tag(subs[0].verdict, subs[0].witness.as_ref().map(|w| w.sample_index)),
            tag(subs[1].verdict, subs[1].witness.as_ref().map(|w| w.sample_index)),
        );
    }
}
