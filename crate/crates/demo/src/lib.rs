//! WebAssembly bindings for the browser playground in `index.html`.
//!
//! Three operations, each returning a JSON string the page renders
//! directly: generate a network and its parity matrix, inspect the shell
//! profiles behind one pair's parity value, and sweep a paired synthetic
//! sample across densities. Build with `wasm-pack build --target web`;
//! the functions are plain Rust on native targets, which is how the unit
//! tests drive them.

use netparity::builder::DensityTarget;
use netparity::compare::{compare_paired, PairedSample};
use netparity::geodesics::{all_pairs_distances, DistanceMatrix};
use netparity::graph::Graph;
use netparity::parity::{
    average_parity, node_profile, pair_profile, parity_matrix_from_distances, LogBase,
};
use netparity::synth::{self, Seed};
use serde::Serialize;
use wasm_bindgen::prelude::wasm_bindgen;

fn parse_log_base(name: &str) -> Result<LogBase, String> {
    LogBase::from_name(name).ok_or_else(|| format!("unknown log base {name:?}; use bits or nats"))
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct NetworkView {
    node_count: usize,
    edges: Vec<(usize, usize)>,
    connected: bool,
    diameter: u32,
    average_parity: f64,
    /// Full matrix, row-major; diagonal entries are null.
    parity: Vec<Vec<Option<f64>>>,
}

fn network_view(graph: &Graph, base: LogBase) -> Result<NetworkView, String> {
    let dm = all_pairs_distances(graph);
    let pm = parity_matrix_from_distances(&dm, base).map_err(|e| e.to_string())?;
    let n = graph.node_count();
    let parity = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { None } else { Some(pm.value(i, j)) })
                .collect()
        })
        .collect();
    Ok(NetworkView {
        node_count: n,
        edges: graph.edges().collect(),
        connected: dm.fully_connected(),
        diameter: dm.diameter(),
        average_parity: average_parity(&pm),
        parity,
    })
}

/// Generates a synthetic network and computes its parity matrix.
///
/// `model` is one of `er`, `cycle`, `path`, `star`, `complete`;
/// `probability` and `seed` only apply to `er`.
#[wasm_bindgen]
pub fn generate_network(
    model: &str,
    nodes: u32,
    probability: f64,
    seed: u32,
    log_base: &str,
) -> Result<String, String> {
    let base = parse_log_base(log_base)?;
    let n = nodes as usize;
    let graph = match model {
        "er" => synth::erdos_renyi(n, probability, Seed(seed as u64)),
        "cycle" => synth::cycle(n),
        "path" => synth::path(n),
        "star" => synth::star(n),
        "complete" => synth::complete(n),
        other => return Err(format!("unknown model {other:?}")),
    }
    .map_err(|e| e.to_string())?;
    to_json(&network_view(&graph, base)?)
}

#[derive(Serialize)]
struct RadiusRow {
    radius: usize,
    mass_a: f64,
    mass_b: f64,
    joint_mass: f64,
    /// This radius' term of the parity sum; zero where the joint mass is
    /// zero.
    contribution: f64,
}

#[derive(Serialize)]
struct PairView {
    node_a: usize,
    node_b: usize,
    parity: f64,
    rows: Vec<RadiusRow>,
}

fn pair_view(dm: &DistanceMatrix, a: usize, b: usize, base: LogBase) -> Result<PairView, String> {
    let profile_a = node_profile(dm, a).map_err(|e| e.to_string())?;
    let profile_b = node_profile(dm, b).map_err(|e| e.to_string())?;
    let joint = pair_profile(dm, a, b).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    let mut parity = 0.0;
    for r in 0..joint.masses().len() {
        let mass_a = profile_a.masses().get(r).copied().unwrap_or(0.0);
        let mass_b = profile_b.masses().get(r).copied().unwrap_or(0.0);
        let joint_mass = joint.masses()[r];
        let contribution = if joint_mass > 0.0 {
            joint_mass * base.log(joint_mass / (mass_a * mass_b))
        } else {
            0.0
        };
        parity += contribution;
        rows.push(RadiusRow {
            radius: r + 1,
            mass_a,
            mass_b,
            joint_mass,
            contribution,
        });
    }
    Ok(PairView {
        node_a: a,
        node_b: b,
        parity,
        rows,
    })
}

/// Shell profiles and per-radius parity contributions for one node pair.
///
/// `edges_json` is the `edges` array from [`generate_network`].
#[wasm_bindgen]
pub fn pair_detail(
    edges_json: &str,
    node_count: u32,
    node_a: u32,
    node_b: u32,
    log_base: &str,
) -> Result<String, String> {
    let base = parse_log_base(log_base)?;
    let edges: Vec<(usize, usize)> =
        serde_json::from_str(edges_json).map_err(|e| format!("bad edges: {e}"))?;
    let graph =
        Graph::from_edge_list(&edges, node_count as usize).map_err(|e| e.to_string())?;
    let dm = all_pairs_distances(&graph);
    let view = pair_view(&dm, node_a as usize, node_b as usize, base)?;
    to_json(&view)
}

#[derive(Serialize)]
struct SweepRow {
    mean_degree: f64,
    edge_count: usize,
    avg_parity_a: f64,
    avg_parity_b: f64,
    divergence: f64,
}

#[derive(Serialize)]
struct SweepView {
    node_count: usize,
    rows: Vec<SweepRow>,
}

/// Paired-sample density sweep on a synthetic two-condition subject.
///
/// Both conditions are block-structured correlation matrices over the
/// same two blocks; condition B has weaker within-block structure, the
/// kind of contrast the divergence is meant to pick up. `mean_degrees`
/// is a comma list such as `8,16,24`.
#[wasm_bindgen]
pub fn paired_sweep(
    nodes: u32,
    mean_degrees: &str,
    seed: u32,
    log_base: &str,
) -> Result<String, String> {
    let base = parse_log_base(log_base)?;
    let n = nodes as usize;
    let targets: Vec<DensityTarget> = mean_degrees
        .split(',')
        .map(|part| {
            let k: f64 = part
                .trim()
                .parse()
                .map_err(|_| format!("bad mean degree {:?}", part.trim()))?;
            DensityTarget::from_mean_degree(k, n).map_err(|e| e.to_string())
        })
        .collect::<Result<_, String>>()?;

    let half = n / 2;
    let sizes = [half, n - half];
    let condition_a = synth::block_correlation(n, &sizes, 0.65, 0.15, 0.08, Seed(seed as u64))
        .map_err(|e| e.to_string())?;
    let condition_b =
        synth::block_correlation(n, &sizes, 0.5, 0.2, 0.08, Seed(seed as u64 + 1))
            .map_err(|e| e.to_string())?;
    let sample =
        PairedSample::new("demo", condition_a, condition_b).map_err(|e| e.to_string())?;
    let comparison = compare_paired(&sample, &targets, base).map_err(|e| e.to_string())?;
    let rows = comparison
        .records
        .iter()
        .map(|r| SweepRow {
            mean_degree: r.mean_degree,
            edge_count: r.edge_count,
            avg_parity_a: r.avg_parity_a,
            avg_parity_b: r.avg_parity_b,
            divergence: r.divergence,
        })
        .collect();
    to_json(&SweepView {
        node_count: n,
        rows,
    })
}
