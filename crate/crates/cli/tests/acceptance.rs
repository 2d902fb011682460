//! Acceptance gate. One test per release criterion; each prints a single
//! PASS line on success. Tolerances are pinned here and nowhere else.
//!
//! Criteria:
//! 1. parity_matrix equals a naive reference within 1e-12 on 100 seeded
//!    ER graphs, full set under 60 s.
//! 2. Closed-form parity values: complete graphs zero exactly, P_3 end
//!    pair = 2 bits exactly, 5-node star hub-leaf zero exactly and
//!    leaf-leaf within 1e-9 of the hand-derived value.
//! 3. Symmetry exact; relabeling equivariance under 20 permutations per
//!    graph; automorphism invariance on C_8, S_6, K_{3,3}.
//! 4. Density thresholding hits M exactly on 100 matrices including
//!    heavy-tie cases; sweep edge sets are nested.
//! 5. 7-subject, 104-node paired cohort over mean degrees 8..40 step 4
//!    yields divergence and cluster tables; identical conditions diverge
//!    by exactly zero; swapping conditions negates every divergence
//!    exactly; full run single-threaded under 5 minutes.
//! 6. BFS distances equal a Floyd-Warshall oracle on 50 graphs, N <= 64,
//!    including unreachable sentinels.
//! 7. cohort reports are byte-identical across reruns and worker counts.
//! 8. 1000-node mean-degree-20 parity matrix under 120 s single
//!    threaded, under 40 s with 4 workers; 104 nodes under 1 s.

// Matrix comparisons address entries as (i, j) on purpose.
#![allow(clippy::needless_range_loop)]

use netparity::builder::{density_sweep, threshold_to_density, CorrelationMatrix, DensityTarget};
use netparity::compare::{
    cluster_sweep_comparison, compare_paired, PairedSample, RegionPartition,
};
use netparity::geodesics::{all_pairs_distances, UNREACHABLE};
use netparity::graph::Graph;
use netparity::oracle;
use netparity::parity::{parity_matrix, LogBase, ParityMatrix};
use netparity::synth::{self, Seed};
use std::collections::BTreeSet;
use std::path::Path;
use std::time::{Duration, Instant};

/// LCG stream, independent of the library's generators.
struct Lcg(u64);

impl Lcg {
    fn next_u64(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0
    }

    fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

fn shuffled_identity(n: usize, rng: &mut Lcg) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.below(i + 1));
    }
    perm
}

/// Relabels nodes: new node perm[v] takes the role of old node v.
fn permute_graph(graph: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<(usize, usize)> = graph.edges().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::from_edge_list(&edges, graph.node_count()).unwrap()
}

fn assert_parity_preserved(graph: &Graph, perm: &[usize], context: &str) {
    let base = parity_matrix(graph, LogBase::Bits).unwrap();
    let mapped = parity_matrix(&permute_graph(graph, perm), LogBase::Bits).unwrap();
    for i in 0..graph.node_count() {
        for j in 0..graph.node_count() {
            if i != j {
                assert_eq!(
                    base.value(i, j).to_bits(),
                    mapped.value(perm[i], perm[j]).to_bits(),
                    "{context}: pair ({i}, {j})"
                );
            }
        }
    }
}

fn complete_bipartite_3_3() -> Graph {
    let mut edges = Vec::new();
    for a in 0..3 {
        for b in 3..6 {
            edges.push((a, b));
        }
    }
    Graph::from_edge_list(&edges, 6).unwrap()
}

// --------------------------------------------------------------- criterion 1

#[test]
fn criterion_1_oracle_equivalence() {
    let start = Instant::now();
    let probabilities = [0.1, 0.3, 0.6];
    for seed in 0..100u64 {
        let n = 10 + (seed as usize * 7) % 41;
        let p = probabilities[seed as usize % 3];
        let graph = synth::erdos_renyi(n, p, Seed(seed)).unwrap();
        let pm = parity_matrix(&graph, LogBase::Bits).unwrap();
        let reference = oracle::naive_parity_matrix(&graph, LogBase::Bits);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let delta = (pm.value(i, j) - reference[i][j]).abs();
                    assert!(
                        delta <= 1e-12,
                        "seed {seed}, n {n}, p {p}, pair ({i}, {j}): \
                         {} vs {} (delta {delta:e})",
                        pm.value(i, j),
                        reference[i][j]
                    );
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(60),
        "oracle suite took {elapsed:?}, limit 60 s"
    );
    println!("criterion 1 (oracle equivalence, 100 ER graphs, 1e-12, {elapsed:?}): PASS");
}

// --------------------------------------------------------------- criterion 2

#[test]
fn criterion_2_closed_form_values() {
    for n in 3..=10 {
        let pm = parity_matrix(&synth::complete(n).unwrap(), LogBase::Bits).unwrap();
        for (i, j, value) in pm.pairs() {
            assert_eq!(value, 0.0, "K_{n} pair ({i}, {j})");
        }
    }

    let p3 = parity_matrix(&synth::path(3).unwrap(), LogBase::Bits).unwrap();
    assert_eq!(p3.value(0, 2), 2.0, "P_3 end pair must be exactly 2 bits");

    // 5-node star: node 0 is the hub.
    let s5 = parity_matrix(&synth::star(5).unwrap(), LogBase::Bits).unwrap();
    for leaf in 1..5 {
        assert_eq!(s5.value(0, leaf), 0.0, "hub-leaf pair (0, {leaf})");
    }
    // Leaf-leaf: (1/3) log2(16/3) + (2/3) log2(32/27).
    let expected = (1.0 / 3.0) * (16.0f64 / 3.0).log2() + (2.0 / 3.0) * (32.0f64 / 27.0).log2();
    assert!((expected - 0.96842).abs() < 1e-5);
    for i in 1..5 {
        for j in (i + 1)..5 {
            let got = s5.value(i, j);
            assert!(
                (got - expected).abs() <= 1e-9,
                "leaf pair ({i}, {j}): {got} vs {expected}"
            );
        }
    }
    println!("criterion 2 (closed forms: K_n zero, P_3 = 2 bits, S_5 star): PASS");
}

// --------------------------------------------------------------- criterion 3

#[test]
fn criterion_3_symmetry_and_equivariance() {
    let mut graphs: Vec<(String, Graph)> = vec![
        ("C_8".into(), synth::cycle(8).unwrap()),
        ("S_6".into(), synth::star(6).unwrap()),
        ("K_3,3".into(), complete_bipartite_3_3()),
        ("P_7".into(), synth::path(7).unwrap()),
    ];
    for seed in 0..5u64 {
        let graph = synth::erdos_renyi(16, 0.35, Seed(seed)).unwrap();
        graphs.push((format!("ER seed {seed}"), graph));
    }

    let mut rng = Lcg(0x5eed);
    for (name, graph) in &graphs {
        let pm = parity_matrix(graph, LogBase::Bits).unwrap();
        for i in 0..graph.node_count() {
            for j in (i + 1)..graph.node_count() {
                assert_eq!(
                    pm.value(i, j).to_bits(),
                    pm.value(j, i).to_bits(),
                    "{name}: symmetry at ({i}, {j})"
                );
            }
        }
        for round in 0..20 {
            let perm = shuffled_identity(graph.node_count(), &mut rng);
            assert_parity_preserved(graph, &perm, &format!("{name}, permutation {round}"));
        }
    }

    // Automorphisms map the parity matrix onto itself.
    let c8 = synth::cycle(8).unwrap();
    for shift in 1..8 {
        let rotation: Vec<usize> = (0..8).map(|v| (v + shift) % 8).collect();
        assert_parity_preserved(&c8, &rotation, &format!("C_8 rotation by {shift}"));
    }
    let reflection: Vec<usize> = (0..8).map(|v| (8 - v) % 8).collect();
    assert_parity_preserved(&c8, &reflection, "C_8 reflection");

    let s6 = synth::star(6).unwrap();
    let leaf_swap = vec![0, 2, 1, 3, 4, 5];
    assert_parity_preserved(&s6, &leaf_swap, "S_6 leaf swap");
    let leaf_rotation = vec![0, 2, 3, 4, 5, 1];
    assert_parity_preserved(&s6, &leaf_rotation, "S_6 leaf rotation");

    let k33 = complete_bipartite_3_3();
    assert_parity_preserved(&k33, &[1, 2, 0, 3, 4, 5], "K_3,3 part rotation");
    assert_parity_preserved(&k33, &[3, 4, 5, 0, 1, 2], "K_3,3 part swap");
    assert_parity_preserved(&k33, &[4, 3, 5, 2, 0, 1], "K_3,3 mixed automorphism");

    println!("criterion 3 (symmetry, 20 permutations per graph, automorphisms): PASS");
}

// --------------------------------------------------------------- criterion 4

fn random_correlation(n: usize, rng: &mut Lcg, quantize: Option<f64>) -> CorrelationMatrix {
    let mut data = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        data[i][i] = 1.0;
        for j in (i + 1)..n {
            let mut c = rng.unit() * 2.0 - 1.0;
            if let Some(step) = quantize {
                c = (c / step).round() * step;
            }
            data[i][j] = c;
            data[j][i] = c;
        }
    }
    CorrelationMatrix::new(data).unwrap()
}

#[test]
fn criterion_4_density_integrity() {
    let mut rng = Lcg(0xdead);
    for case in 0..100usize {
        let n = 8 + case % 17;
        let max_edges = n * (n - 1) / 2;
        // One third smooth, one third coarsely tied, one third fully tied.
        let cm = match case % 3 {
            0 => random_correlation(n, &mut rng, None),
            1 => random_correlation(n, &mut rng, Some(0.2)),
            _ => {
                let mut data = vec![vec![0.5f64; n]; n];
                for (i, row) in data.iter_mut().enumerate() {
                    row[i] = 1.0;
                }
                CorrelationMatrix::new(data).unwrap()
            }
        };
        for m in [1, max_edges / 2, max_edges] {
            let target = DensityTarget::from_edge_count(m, n).unwrap();
            let graph = threshold_to_density(&cm, target).unwrap();
            assert_eq!(graph.edge_count(), m, "case {case}, n {n}, M {m}");
        }

        let targets: Vec<DensityTarget> = [1, max_edges / 4, max_edges / 2, max_edges]
            .iter()
            .map(|&m| DensityTarget::from_edge_count(m.max(1), n).unwrap())
            .collect();
        let sweep = density_sweep(&cm, &targets).unwrap();
        let mut previous: Option<BTreeSet<(usize, usize)>> = None;
        for point in &sweep {
            let edges: BTreeSet<(usize, usize)> = point.graph.edges().collect();
            if let Some(smaller) = &previous {
                assert!(
                    smaller.is_subset(&edges),
                    "case {case}: sweep edge sets are not nested"
                );
            }
            previous = Some(edges);
        }
    }
    println!("criterion 4 (exact edge counts on 100 matrices, nested sweeps): PASS");
}

// --------------------------------------------------------------- criterion 5

fn cohort_sample(subject: usize) -> PairedSample {
    let sizes = [40usize, 32, 32];
    let seed_a = 1000 + subject as u64;
    let seed_b = 2000 + subject as u64;
    let base = synth::block_correlation(104, &sizes, 0.62, 0.14, 0.08, Seed(seed_a)).unwrap();
    // Perturbed counterpart: same block layout, shifted levels, fresh noise.
    let counterpart =
        synth::block_correlation(104, &sizes, 0.55, 0.18, 0.08, Seed(seed_b)).unwrap();
    PairedSample::new(format!("subject-{subject}"), base, counterpart).unwrap()
}

fn block_partition() -> RegionPartition {
    let names = vec![
        "frontal".to_string(),
        "posterior".to_string(),
        "limbic".to_string(),
    ];
    let mut assignment = Vec::with_capacity(104);
    assignment.extend(std::iter::repeat_n(Some(0), 40));
    assignment.extend(std::iter::repeat_n(Some(1), 32));
    assignment.extend(std::iter::repeat_n(Some(2), 32));
    RegionPartition::new(names, assignment).unwrap()
}

#[test]
fn criterion_5_desk_scale_pipeline() {
    let start = Instant::now();
    let targets: Vec<DensityTarget> = (0..9)
        .map(|i| DensityTarget::from_mean_degree(8.0 + 4.0 * i as f64, 104).unwrap())
        .collect();
    let partition = block_partition();
    let cluster_pairs = [
        ("frontal".to_string(), "posterior".to_string()),
        ("frontal".to_string(), "limbic".to_string()),
        ("posterior".to_string(), "limbic".to_string()),
    ];

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    pool.install(|| {
        for subject in 0..7 {
            let sample = cohort_sample(subject);

            // Divergence table: one row per density.
            let comparison = compare_paired(&sample, &targets, LogBase::Bits).unwrap();
            assert_eq!(comparison.records.len(), 9);
            for (record, target) in comparison.records.iter().zip(&targets) {
                assert_eq!(record.mean_degree, target.mean_degree());
                assert_eq!(record.edge_count, target.edge_count());
                assert_eq!(
                    record.divergence,
                    record.avg_parity_b - record.avg_parity_a,
                    "divergence must be the literal difference"
                );
            }

            // Cluster table: cluster pairs major, densities minor.
            let clusters =
                cluster_sweep_comparison(&sample, &partition, &cluster_pairs, &targets, LogBase::Bits)
                    .unwrap();
            assert_eq!(clusters.records.len(), 27);

            // Identical-condition control: divergence is exactly zero.
            let control = PairedSample::new(
                "control",
                sample.condition_a.clone(),
                sample.condition_a.clone(),
            )
            .unwrap();
            let control_cmp = compare_paired(&control, &targets, LogBase::Bits).unwrap();
            for record in &control_cmp.records {
                assert_eq!(record.divergence, 0.0, "identical conditions must give 0");
            }

            // Condition swap negates every divergence exactly.
            let swapped = PairedSample::new(
                sample.subject_id.clone(),
                sample.condition_b.clone(),
                sample.condition_a.clone(),
            )
            .unwrap();
            let swapped_cmp = compare_paired(&swapped, &targets, LogBase::Bits).unwrap();
            for (fwd, rev) in comparison.records.iter().zip(&swapped_cmp.records) {
                assert_eq!(rev.divergence, -fwd.divergence);
                assert_eq!(
                    rev.divergence.abs().to_bits(),
                    fwd.divergence.abs().to_bits(),
                    "negation must be exact, not approximate"
                );
            }
            let swapped_clusters = cluster_sweep_comparison(
                &swapped,
                &partition,
                &cluster_pairs,
                &targets,
                LogBase::Bits,
            )
            .unwrap();
            for (fwd, rev) in clusters.records.iter().zip(&swapped_clusters.records) {
                assert_eq!(rev.divergence, -fwd.divergence);
            }
        }
    });

    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(300),
        "cohort run took {elapsed:?}, limit 5 minutes"
    );
    println!(
        "criterion 5 (7 subjects x 104 nodes x 9 densities, controls exact, {elapsed:?}): PASS"
    );
}

// --------------------------------------------------------------- criterion 6

#[test]
fn criterion_6_distance_correctness() {
    let mut rng = Lcg(0xd157);
    for case in 0..50u64 {
        let n = 8 + (case as usize * 9) % 57;
        // Sparse probabilities leave many graphs disconnected on purpose.
        let p = 0.02 + 0.08 * rng.unit();
        let graph = synth::erdos_renyi(n, p, Seed(case)).unwrap();
        let fast = all_pairs_distances(&graph);
        let reference = oracle::floyd_warshall(&graph);
        for i in 0..n {
            for j in 0..n {
                let expected = match reference[i][j] {
                    Some(d) => u32::try_from(d).unwrap(),
                    None => UNREACHABLE,
                };
                assert_eq!(
                    fast.get(i, j),
                    expected,
                    "case {case}, n {n}, pair ({i}, {j})"
                );
            }
        }
    }
    println!("criterion 6 (BFS vs Floyd-Warshall, 50 graphs, exact sentinels): PASS");
}

// --------------------------------------------------------------- criterion 7

fn netparity(args: &[&str]) -> std::process::Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_netparity"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) {
    let out = netparity(args);
    assert!(
        out.status.success(),
        "netparity {args:?} failed:\n{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

fn path_str(path: &Path) -> String {
    path.display().to_string()
}

#[test]
fn criterion_7_byte_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    for (name, seed) in [("a1", 11u64), ("b1", 12), ("a2", 13), ("b2", 14)] {
        run_ok(&[
            "synth", "--model", "block", "--nodes", "40", "--blocks", "20,20",
            "--within", "0.6", "--between", "0.15", "--jitter", "0.07",
            "--seed", &seed.to_string(),
            "--output", &path_str(&dir.path().join(format!("{name}.csv"))),
        ]);
    }
    let manifest = dir.path().join("manifest.csv");
    std::fs::write(&manifest, "s1,a1.csv,b1.csv\ns2,a2.csv,b2.csv\n").unwrap();

    let mut reports = Vec::new();
    for (tag, workers) in [("first", "1"), ("second", "1"), ("third", "4")] {
        let output = dir.path().join(format!("{tag}.json"));
        run_ok(&[
            "cohort", "--manifest", &path_str(&manifest), "--mean-degrees", "8:16:4",
            "--seed", "42", "--workers", workers, "--output", &path_str(&output),
        ]);
        reports.push(std::fs::read(&output).unwrap());
    }
    assert_eq!(reports[0], reports[1], "reruns must be byte-identical");
    assert_eq!(reports[0], reports[2], "worker count must not leak into the report");
    assert!(!reports[0].is_empty());
    println!("criterion 7 (cohort JSON byte-identical across reruns and --workers): PASS");
}

// --------------------------------------------------------------- criterion 8

#[test]
fn criterion_8_performance() {
    let large = synth::erdos_renyi(1000, 20.0 / 999.0, Seed(8)).unwrap();
    assert!(large.is_connected(), "benchmark graph must be connected");
    assert!(
        (large.mean_degree() - 20.0).abs() < 2.0,
        "mean degree {} is far from 20",
        large.mean_degree()
    );

    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let start = Instant::now();
    let pm_single: ParityMatrix =
        single.install(|| parity_matrix(&large, LogBase::Bits).unwrap());
    let elapsed_single = start.elapsed();
    assert!(
        elapsed_single < Duration::from_secs(120),
        "single-threaded 1000-node run took {elapsed_single:?}, limit 120 s"
    );

    let quad = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap();
    let start = Instant::now();
    let pm_quad: ParityMatrix = quad.install(|| parity_matrix(&large, LogBase::Bits).unwrap());
    let elapsed_quad = start.elapsed();
    assert!(
        elapsed_quad < Duration::from_secs(40),
        "4-worker 1000-node run took {elapsed_quad:?}, limit 40 s"
    );
    assert_eq!(
        pm_single.value(0, 999).to_bits(),
        pm_quad.value(0, 999).to_bits(),
        "worker count must not change values"
    );

    let desk = synth::erdos_renyi(104, 20.0 / 103.0, Seed(9)).unwrap();
    let start = Instant::now();
    single.install(|| parity_matrix(&desk, LogBase::Bits).unwrap());
    let elapsed_desk = start.elapsed();
    assert!(
        elapsed_desk < Duration::from_secs(1),
        "104-node run took {elapsed_desk:?}, limit 1 s"
    );
    println!(
        "criterion 8 (1000 nodes: {elapsed_single:?} single / {elapsed_quad:?} x4; \
         104 nodes: {elapsed_desk:?}): PASS"
    );
}
