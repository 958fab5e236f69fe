//! Acceptance suite: one test per advertised guarantee, each printing a
//! single pass/fail line with its runtime. Run with
//! `cargo test --test acceptance -- --nocapture` to see every line.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use treespec::algebra::FeasVec;
use treespec::cfrac::{cf_from_word, word_vector, zaremba_weak};
use treespec::graph::{census_connected, MultiGraph};
use treespec::modular::{tau_mod_witness, zaremba_mod};
use treespec::regular::{assemble_regular, min_feasible_n, pendant, PendantVariant};
use treespec::spectrum::{enum_full, enum_simple, spectrum_lower_bound};
use treespec::witness::{predicted_vector, OpLetter, OpWord, WitnessGraph};

/// Prints the one-line verdict and panics on failure so the line is
/// visible even under default output capture.
fn report(name: &str, start: Instant, budget_secs: u64, problems: Vec<String>) {
    let elapsed = start.elapsed().as_secs_f64();
    let timed_out = elapsed > budget_secs as f64;
    if problems.is_empty() && !timed_out {
        println!("[pass] {name} ({elapsed:.2}s)");
        return;
    }
    let mut detail = problems;
    if timed_out {
        detail.push(format!("exceeded the {budget_secs}s budget"));
    }
    println!("[FAIL] {name} ({elapsed:.2}s): {}", detail.join("; "));
    panic!("{name}: {} problem(s), first: {}", detail.len(), detail[0]);
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

#[test]
fn criterion_01_simple_family_counts() {
    let start = Instant::now();
    let mut problems = Vec::new();
    for n in 0..=18u32 {
        let words = enum_simple(n).expect("n <= 22 is in range");
        let expected = 1usize << n;
        if words.len() != expected {
            problems.push(format!("weight {n}: {} words, expected {expected}", words.len()));
        }
        let distinct: BTreeSet<&FeasVec> = words.iter().map(|(_, v)| v).collect();
        if distinct.len() != words.len() {
            problems.push(format!("weight {n}: vectors collide"));
        }
    }
    report("simple family: 2^n pairwise-distinct vectors up to weight 18", start, 60, problems);
}

#[test]
fn criterion_02_full_family_counts() {
    let start = Instant::now();
    let mut problems = Vec::new();
    // counts obey m_n = 2 m_(n-1) + m_(n-2) with m_0 = 1, m_1 = 2
    let mut m = vec![1usize, 2];
    for n in 2..=14 {
        m.push(2 * m[n - 1] + m[n - 2]);
    }
    if m[2] != 5 || m[4] != 29 {
        problems.push(format!("recurrence anchors off: m_2 = {}, m_4 = {}", m[2], m[4]));
    }
    for n in 0..=14u32 {
        let words = enum_full(n).expect("n <= 18 is in range");
        if words.len() != m[n as usize] {
            problems.push(format!("weight {n}: {} words, expected {}", words.len(), m[n as usize]));
        }
        let distinct: BTreeSet<&FeasVec> = words.iter().map(|(_, v)| v).collect();
        if distinct.len() != words.len() {
            problems.push(format!("weight {n}: vectors collide"));
        }
    }
    report("full family: m_n pairwise-distinct vectors up to weight 14", start, 60, problems);
}

#[test]
fn criterion_03_all_short_words_build_their_vector() {
    let start = Instant::now();
    let mut problems = Vec::new();
    let letters = [OpLetter::Subdivide, OpLetter::TriangleKeep, OpLetter::TriangleMove];
    let mut checked = 0usize;
    for len in 0..=9usize {
        let mut odometer = vec![0usize; len];
        loop {
            let word = OpWord(odometer.iter().map(|&i| letters[i]).collect());
            let predicted = predicted_vector(&word);
            let built = WitnessGraph::build(&word);
            let counted = built.vector(); // deletion/contraction determinants
            if counted != predicted {
                problems.push(format!("word {word}: counted {counted}, predicted {predicted}"));
            }
            if built.graph().tau() != counted.tau() {
                problems.push(format!("word {word}: tau differs from t + u"));
            }
            checked += 1;
            // increment base-3 from the right
            let mut pos = len;
            while pos > 0 {
                odometer[pos - 1] += 1;
                if odometer[pos - 1] < letters.len() {
                    break;
                }
                odometer[pos - 1] = 0;
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
            if problems.len() > 5 {
                break;
            }
        }
        if problems.len() > 5 {
            break;
        }
    }
    assert_eq!(checked, (usize::pow(3, 10) - 1) / 2, "3^0 + ... + 3^9 words");
    report("every word of weight <= 9 builds a graph matching its matrix vector", start, 300, problems);
}

#[test]
fn criterion_04_determinant_count_matches_enumeration() {
    let start = Instant::now();
    let mut problems = Vec::new();
    // every labeled simple graph on up to 5 vertices
    for n in 1..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = MultiGraph::new(n, edges).expect("valid endpoints");
            if !g.is_connected() {
                continue;
            }
            let fast = g.tau();
            let slow = g.tau_brute().expect("at most 10 edges");
            if fast != slow {
                problems.push(format!("n = {n}, mask {mask}: {fast} vs {slow}"));
            }
        }
    }
    // plus random multigraphs, disconnected ones included
    let mut rng = ChaCha8Rng::seed_from_u64(0x04);
    for trial in 0..200 {
        let n = rng.gen_range(1..=6);
        let m = rng.gen_range(0..=12);
        let edges: Vec<(usize, usize)> = (0..m)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect();
        let g = MultiGraph::new(n, edges).expect("valid endpoints");
        let fast = g.tau();
        let slow = g.tau_brute().expect("at most 12 edges");
        if fast != slow {
            problems.push(format!("trial {trial}: {fast} vs {slow}"));
        }
    }
    report("determinant count equals spanning-tree enumeration", start, 120, problems);
}

#[test]
fn criterion_05_deletion_contraction_identity() {
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x05);
    let mut done = 0;
    while done < 1000 {
        let n = rng.gen_range(2..=8);
        let m = rng.gen_range(1..=14);
        let edges: Vec<(usize, usize)> = (0..m)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect();
        let g = MultiGraph::new(n, edges).expect("valid endpoints");
        if g.edge_count() == 0 {
            continue; // all candidate edges were loops
        }
        let e = rng.gen_range(0..g.edge_count());
        let split = g.contract(e).expect("index in range").tau()
            + g.delete(e).expect("index in range").tau();
        if g.tau() != split {
            problems.push(format!("n = {n}, edge {e}: {} vs {split}", g.tau()));
        }
        done += 1;
    }
    report("tau splits across deletion and contraction on 1000 random edges", start, 120, problems);
}

#[test]
fn criterion_06_spectrum_lower_bound_size() {
    let start = Instant::now();
    let mut problems = Vec::new();
    for n in (2..=16u32).step_by(2) {
        let set = spectrum_lower_bound(n).expect("n >= 2");
        let floor = 1usize << (n / 2 - 1);
        if set.len() < floor {
            problems.push(format!("n = {n}: {} values, needs {floor}", set.len()));
        }
    }
    report("tree counts on n vertices: at least 2^(n/2 - 1) values for even n <= 16", start, 60, problems);
}

#[test]
fn criterion_07_census_ground_truth() {
    let start = Instant::now();
    let mut problems = Vec::new();
    let four = census_connected(4).expect("in range");
    let expected: BTreeSet<BigUint> = [1u64, 3, 4, 8, 16].into_iter().map(big).collect();
    if four != expected {
        problems.push(format!("4-vertex census: {four:?}"));
    }
    let six = census_connected(6).expect("in range");
    let seven = census_connected(7).expect("in range");
    // sizes pinned after the first verified run; both are deterministic
    if six.len() != 65 {
        problems.push(format!("6-vertex census has {} values, expected 65", six.len()));
    }
    if seven.len() != 386 {
        problems.push(format!("7-vertex census has {} values, expected 386", seven.len()));
    }
    if seven.len() <= six.len() {
        problems.push("7-vertex census is no richer than the 6-vertex one".into());
    }
    report("connected-graph census: exact 4-vertex values, growing through 7", start, 600, problems);
}

#[test]
fn criterion_08_regular_families_at_smallest_size() {
    let start = Instant::now();
    let mut problems = Vec::new();
    for k in 3..=5usize {
        let n = min_feasible_n(k).expect("k is supported");
        let family = match assemble_regular(k, n) {
            Ok(f) => f,
            Err(e) => {
                problems.push(format!("k = {k}, n = {n}: {e}"));
                continue;
            }
        };
        if family.members.len() < 2 {
            problems.push(format!("k = {k}, n = {n}: only {} members", family.members.len()));
        }
        let taus: BTreeSet<&BigUint> = family.members.iter().map(|m| &m.tau).collect();
        if taus.len() != family.members.len() {
            problems.push(format!("k = {k}: tree counts collide"));
        }
        for member in &family.members {
            let profile = member.graph.degree_profile();
            if profile.len() != 1 || profile.get(&k) != Some(&n) {
                problems.push(format!("k = {k}, word {}: profile {profile:?}", member.word));
            }
            if member.graph.tau() != member.tau {
                problems.push(format!("k = {k}, word {}: stored count is stale", member.word));
            }
        }
        if k == 3 {
            // cubic members factor as tau(base) * tau(block)^i with the
            // 5-vertex block count fixed by direct enumeration
            let block = pendant(3, PendantVariant::Standard).expect("cubic block");
            let block_tau = block.graph.tau_brute().expect("10 edges");
            if block_tau != big(24) {
                problems.push(format!("cubic block counts {block_tau} trees, expected 24"));
            }
            for member in &family.members {
                let word: OpWord = member.word.parse().expect("stored words parse");
                let base = WitnessGraph::build(&word).vector().tau();
                let predicted = base * block_tau.pow(family.base_degree_two as u32);
                if predicted != member.tau {
                    problems.push(format!(
                        "word {}: {} does not factor as base * 24^{}",
                        member.word, member.tau, family.base_degree_two
                    ));
                }
            }
        }
    }
    report("3-, 4-, 5-regular families with distinct tree counts at the smallest size", start, 300, problems);
}

#[test]
fn criterion_09_every_residue_has_a_small_witness() {
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut worst_ratio = 0.0f64;
    let mut worst = (0u64, 0u64, 0usize);
    for n in 2..=64u64 {
        for u in 0..n {
            let cert = match tau_mod_witness(u, n) {
                Ok(c) => c,
                Err(e) => {
                    problems.push(format!("N = {n}, u = {u}: {e}"));
                    continue;
                }
            };
            if !cert.verify() {
                problems.push(format!("N = {n}, u = {u}: replay failed"));
            }
            if cert.tau() % n != big(u) {
                problems.push(format!("N = {n}, u = {u}: wrong residue"));
            }
            let ratio = cert.vertices() as f64 / ((n as f64).log2() + 1.0);
            if ratio > worst_ratio {
                worst_ratio = ratio;
                worst = (n, u, cert.vertices());
            }
            if problems.len() > 5 {
                break;
            }
        }
        if problems.len() > 5 {
            break;
        }
    }
    println!(
        "    witness size fit: vertices <= {worst_ratio:.2} * (log2 N + 1), worst N = {}, u = {} at {} vertices",
        worst.0, worst.1, worst.2
    );
    if worst_ratio > 80.0 {
        problems.push(format!("size fit blew up: {worst_ratio:.2}"));
    }
    report("every residue mod N <= 64 is a tree count of a logarithmic-size graph", start, 900, problems);
}

#[test]
fn criterion_10_bounded_quotients_hit_many_denominators() {
    let start = Instant::now();
    let mut problems = Vec::new();
    let n = big(1) << 16;
    let certs = zaremba_weak(&n).expect("in range");
    if certs.len() < 7 {
        problems.push(format!("{} denominators, needs at least 7", certs.len()));
    }
    let denominators: BTreeSet<&BigUint> = certs.iter().map(|c| &c.u).collect();
    if denominators.len() != certs.len() {
        problems.push("denominators repeat".into());
    }
    for cert in &certs {
        if cert.u >= n {
            problems.push(format!("denominator {} not below 2^16", cert.u));
        }
        if !cert.t.gcd(&cert.u).is_one() {
            problems.push(format!("{}/{} is not in lowest terms", cert.t, cert.u));
        }
        let qs = cert.cf.quotients();
        let shaped = qs.len() % 2 == 0
            && qs.iter().step_by(2).all(|a| (1..=2).contains(a))
            && qs.iter().skip(1).step_by(2).all(|&a| a == 1);
        if !shaped {
            problems.push(format!("quotients {qs:?} leave the 1/2 alphabet"));
        }
        if cert.cf.eval() != (cert.t.clone(), cert.u.clone()) {
            problems.push(format!("fraction for denominator {} evaluates wrong", cert.u));
        }
    }
    report("bounded-quotient fractions reach 7+ denominators below 2^16", start, 60, problems);
}

#[test]
fn criterion_11_bounded_quotients_reach_every_residue() {
    let start = Instant::now();
    let mut problems = Vec::new();
    for n in 5..=64u64 {
        for u in 0..n {
            let (cf, cert) = match zaremba_mod(u, n) {
                Ok(pair) => pair,
                Err(e) => {
                    problems.push(format!("N = {n}, u = {u}: {e}"));
                    continue;
                }
            };
            if !cf.quotients().iter().all(|a| (1..=2).contains(a)) {
                problems.push(format!("N = {n}, u = {u}: quotients {:?}", cf.quotients()));
            }
            match cf.eval_mod(n) {
                Ok(r) if r == u => {}
                Ok(r) => problems.push(format!("N = {n}, u = {u}: evaluates to {r}")),
                Err(e) => problems.push(format!("N = {n}, u = {u}: {e}")),
            }
            if cert.vector.t != cf.eval().1 {
                problems.push(format!("N = {n}, u = {u}: certificate disagrees"));
            }
            if problems.len() > 5 {
                break;
            }
        }
        if problems.len() > 5 {
            break;
        }
    }
    report("bounded-quotient fractions hit every residue mod N in [5, 64]", start, 600, problems);
}

#[test]
fn criterion_12_word_vectors_transcribe_to_fractions() {
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x12);
    for trial in 0..500 {
        let pairs = rng.gen_range(1..=6);
        let exponents: Vec<u64> = (0..2 * pairs).map(|_| rng.gen_range(1..=5)).collect();
        let v = word_vector(&exponents);
        let cf = cf_from_word(&exponents).expect("even positive exponents");
        if cf.eval() != (v.u.clone(), v.t.clone()) {
            problems.push(format!("trial {trial}, exponents {exponents:?}"));
        }
    }
    report("alternating-word vectors equal their transcribed fractions", start, 60, problems);
}
