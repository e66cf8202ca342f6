//! Subcommand implementations.

use clap::{Args, Subcommand};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde_json::json;
use std::collections::BTreeMap;

use strata_core::angles::{
    canonical_path, construct_k_codim2, construct_k_pair, kahler_angle, kernel_angle,
    kernel_angle_direct, max_angle, min_angle, op_norm, restricted_norm_diff, standard_j,
    taming_margin, OrientedSubspace, SkewForm,
};
use strata_core::coherent::{Cutoff, ExtensionOperator, StableDecompositionData, XiFunction};
use strata_core::curve::{cross_ratio, ProjPoint};
use strata_core::donaldson::{
    bounds_report, enumerate_bounded_classes, gw_normalization, Rational,
};
use strata_core::intersect::{
    cc_to_f64, normal_jet, total_intersection, winding_number_with, HPoly, Hypersurface,
    MultiPoly, NormalJet, RationalMap, AnalyticMapModel, DEFAULT_NODES,
};
use strata_core::json::{CurveJson, PointJson, TreeJson};
use strata_core::tree::{
    enumerate_stable_trees, moduli_dim, solve_edge_system, stratum_dim, tangency_moduli_dim,
    TangencyConstraint, DEFAULT_ENUMERATION_CAP,
};
use strata_core::verify::{run_all, run_suite, RunConfig, SuiteReport, SUITE_NAMES};

use crate::input::{
    parse_complex_vec, parse_cpoly, parse_int_row, parse_matrix, parse_rational, print_json,
    read_payload, AnyError,
};
use crate::{EXIT_OK, EXIT_VIOLATION};

type CmdResult = Result<i32, AnyError>;

fn rational_json(q: &Rational) -> serde_json::Value {
    json!({
        "exact": q.to_string(),
        "approx": q.to_f64(),
    })
}

// ------------------------------------------------------------------ tree

#[derive(Subcommand, Debug)]
pub enum TreeAction {
    /// Check the stability predicate.
    Stable {
        /// Tree JSON (inline, file path, or `-` for stdin).
        #[arg(long)]
        input: String,
    },
    /// Canonical stabilization with the collapse map.
    Stabilize {
        #[arg(long)]
        input: String,
    },
    /// Maximal ghost subtrees of a weighted tree.
    Ghosts {
        #[arg(long)]
        input: String,
        /// Integer pairing row for the symplectic area.
        #[arg(long, value_parser = parse_int_row_arg)]
        omega_row: std::vec::Vec<i64>,
        /// Integer pairing row for the first Chern number.
        #[arg(long, value_parser = parse_int_row_arg)]
        c1_row: std::vec::Vec<i64>,
    },
    /// Reduced index set of a weighted tree.
    Reduced {
        #[arg(long)]
        input: String,
        #[arg(long, value_parser = parse_int_row_arg)]
        omega_row: std::vec::Vec<i64>,
        #[arg(long, value_parser = parse_int_row_arg)]
        c1_row: std::vec::Vec<i64>,
    },
    /// Stratum dimension of a stable tree.
    Dim {
        #[arg(long)]
        input: String,
    },
    /// Moduli dimension formulas.
    ModuliDim {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        c1a: i64,
        #[arg(long, default_value_t = 0)]
        edges: i64,
        #[arg(long, default_value_t = 0)]
        codim_constraint: i64,
        /// Tangency constraints `codim:order,codim:order,...`
        #[arg(long)]
        tangencies: Option<String>,
    },
    /// Solve the edge-diagonal system on a rooted tree (float mode).
    SolveEdges {
        /// JSON: `{"tree": {...}, "root": id, "v_root": [..],
        /// "v_edge": {"a,b": [..], ...}}`
        #[arg(long)]
        input: String,
    },
}

fn parse_int_row_arg(s: &str) -> Result<Vec<i64>, String> {
    parse_int_row(s).map_err(|e| e.to_string())
}

pub fn run_tree(action: TreeAction) -> CmdResult {
    match action {
        TreeAction::Stable { input } => {
            let tree = TreeJson::parse(&read_payload(&input)?)?.to_tree()?;
            let per_vertex: BTreeMap<String, usize> = tree
                .vertices()
                .map(|v| (v.to_string(), tree.special_count(v)))
                .collect();
            print_json(&json!({
                "stable": tree.is_stable(),
                "special_points": per_vertex,
            }))?;
        }
        TreeAction::Stabilize { input } => {
            let tree = TreeJson::parse(&read_payload(&input)?)?.to_tree()?;
            let (stable, morphism) = tree.stabilize()?;
            let vertex_map: BTreeMap<String, u32> = tree
                .vertices()
                .map(|v| (v.to_string(), morphism.apply(v).unwrap()))
                .collect();
            print_json(&json!({
                "stabilized": TreeJson::from_tree(&stable),
                "vertex_map": vertex_map,
                "collapsed": morphism.collapsed_vertices().collect::<Vec<_>>(),
                "identity": morphism.is_identity(),
            }))?;
        }
        TreeAction::Ghosts {
            input,
            omega_row,
            c1_row,
        } => {
            let w = TreeJson::parse(&read_payload(&input)?)?.to_weighted(omega_row, c1_row)?;
            print_json(&json!({
                "weighted_stable": w.is_weighted_stable(),
                "ghost_trees": w.ghost_forest(),
                "omega_total": w.total_omega(),
                "c1_total": w.total_c1(),
            }))?;
        }
        TreeAction::Reduced {
            input,
            omega_row,
            c1_row,
        } => {
            let w = TreeJson::parse(&read_payload(&input)?)?.to_weighted(omega_row, c1_row)?;
            print_json(&json!({ "reduced_index_set": w.reduced_index_set() }))?;
        }
        TreeAction::Dim { input } => {
            let tree = TreeJson::parse(&read_payload(&input)?)?.to_tree()?;
            let dim = tree.stratum_dim()?;
            print_json(&json!({
                "complex_dimension": dim,
                "edges": tree.edge_count(),
                "codimension": tree.edge_count(),
            }))?;
        }
        TreeAction::ModuliDim {
            n,
            k,
            c1a,
            edges,
            codim_constraint,
            tangencies,
        } => {
            let mut out = json!({
                "real_dimension": moduli_dim(n, k, c1a, edges, codim_constraint),
            });
            if let Some(list) = tangencies {
                let constraints: Vec<TangencyConstraint> = list
                    .split(',')
                    .map(|p| {
                        let (c, o) = p.split_once(':').ok_or("expected codim:order")?;
                        Ok::<_, AnyError>(TangencyConstraint::new(
                            c.trim().parse()?,
                            o.trim().parse()?,
                        ))
                    })
                    .collect::<Result<_, _>>()?;
                out["tangency_dimension"] =
                    json!(tangency_moduli_dim(n, c1a, k, &constraints));
            }
            print_json(&out)?;
        }
        TreeAction::SolveEdges { input } => {
            #[derive(serde::Deserialize)]
            struct EdgeInput {
                tree: TreeJson,
                root: u32,
                v_root: Vec<f64>,
                v_edge: BTreeMap<String, Vec<f64>>,
            }
            let parsed: EdgeInput = serde_json::from_str(&read_payload(&input)?)?;
            let tree = parsed.tree.to_tree()?;
            let mut v_edge = BTreeMap::new();
            for (key, vec) in parsed.v_edge {
                let (a, b) = key.split_once(',').ok_or("edge key must be 'a,b'")?;
                v_edge.insert((a.trim().parse()?, b.trim().parse()?), vec);
            }
            let sol = solve_edge_system(&tree, parsed.root, &v_edge, &parsed.v_root)?;
            let xi: BTreeMap<String, &Vec<f64>> =
                sol.xi.iter().map(|(v, x)| (v.to_string(), x)).collect();
            let eta: BTreeMap<String, &Vec<f64>> = sol
                .eta
                .iter()
                .map(|((a, b), e)| (format!("{a},{b}"), e))
                .collect();
            let max_residual = sol
                .residuals(&tree, &v_edge)
                .iter()
                .flat_map(|r| r.iter().map(|x| x.abs()))
                .fold(0.0f64, f64::max);
            print_json(&json!({ "xi": xi, "eta": eta, "max_residual": max_residual }))?;
        }
    }
    Ok(EXIT_OK)
}

// -------------------------------------------------------------------- dm

#[derive(Subcommand, Debug)]
pub enum DmAction {
    /// Count stable-tree isomorphism classes by edge number.
    Strata {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_edges: Option<usize>,
        /// Enumeration cap override.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
        /// Also list canonical representatives.
        #[arg(long)]
        list: bool,
    },
}

fn edge_count_key(e: usize) -> String {
    const NAMES: [&str; 6] = ["zero", "one", "two", "three", "four", "five"];
    match NAMES.get(e) {
        Some(n) => format!("{n}_edge"),
        None => format!("edges_{e}"),
    }
}

pub fn run_dm(action: DmAction) -> CmdResult {
    match action {
        DmAction::Strata {
            k,
            max_edges,
            cap,
            list,
        } => {
            let classes = enumerate_stable_trees(k, max_edges, cap)?;
            let mut by_edges: BTreeMap<usize, usize> = BTreeMap::new();
            for c in &classes {
                *by_edges.entry(c.representative.edge_count()).or_default() += 1;
            }
            let mut out = serde_json::Map::new();
            out.insert("k".into(), json!(k));
            for (e, count) in &by_edges {
                out.insert(edge_count_key(*e), json!(count));
            }
            out.insert("total".into(), json!(classes.len()));
            out.insert(
                "top_dimension".into(),
                json!(stratum_dim(k, 0)),
            );
            if list {
                let reps: Vec<serde_json::Value> = classes
                    .iter()
                    .map(|c| {
                        json!({
                            "tree": TreeJson::from_tree(&c.representative),
                            "canonical": c.canonical.fingerprint(),
                            "dimension": c.representative.stratum_dim().unwrap(),
                        })
                    })
                    .collect();
                out.insert("classes".into(), json!(reps));
            }
            print_json(&serde_json::Value::Object(out))?;
        }
    }
    Ok(EXIT_OK)
}

// ------------------------------------------------------------ cross-ratio

#[derive(Subcommand, Debug)]
pub enum CrossRatioAction {
    /// Cross ratio of four sphere points.
    Eval {
        /// Four points as `[[re,im]|"inf", ...]`.
        #[arg(long)]
        points: String,
    },
    /// Cross ratio `w_{i,j,m,n}` on a nodal curve.
    Nodal {
        #[arg(long)]
        curve: String,
        /// Four labels `i,j,m,n`.
        #[arg(long)]
        indices: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Stable decomposition induced by the point `z_0`.
    Decompose {
        #[arg(long)]
        curve: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Normalize a component: first three special points to 0, 1, inf.
    Normalize {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        vertex: u32,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

fn point_json_value(p: &ProjPoint<f64>) -> serde_json::Value {
    match p.value(1e-12) {
        Some(z) => json!([z.re, z.im]),
        None => json!("inf"),
    }
}

pub fn run_cross_ratio(action: CrossRatioAction) -> CmdResult {
    match action {
        CrossRatioAction::Eval { points } => {
            let raw: Vec<PointJson> = serde_json::from_str(&read_payload(&points)?)?;
            if raw.len() != 4 {
                return Err("need exactly four points".into());
            }
            let pts: Vec<ProjPoint<f64>> = raw
                .iter()
                .map(|p| p.to_point())
                .collect::<Result<_, _>>()?;
            let w = cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3], 1e-12)?;
            print_json(&json!({ "cross_ratio": point_json_value(&w) }))?;
        }
        CrossRatioAction::Nodal {
            curve,
            indices,
            tol,
        } => {
            let c = CurveJson::parse(&read_payload(&curve)?)?.to_curve(tol)?;
            let idx = parse_int_row(&indices)?;
            if idx.len() != 4 {
                return Err("need exactly four labels".into());
            }
            let w = c.cross_ratio_nodal(idx[0] as u32, idx[1] as u32, idx[2] as u32, idx[3] as u32)?;
            print_json(&json!({ "cross_ratio": point_json_value(&w) }))?;
        }
        CrossRatioAction::Decompose { curve, tol } => {
            let c = CurveJson::parse(&read_payload(&curve)?)?.to_curve(tol)?;
            let dec = c.stable_decomposition()?;
            print_json(&json!({
                "parts": dec.parts().collect::<Vec<_>>(),
                "size": dec.len(),
                "minima": dec.minima(),
            }))?;
        }
        CrossRatioAction::Normalize { curve, vertex, tol } => {
            let c = CurveJson::parse(&read_payload(&curve)?)?.to_curve(tol)?;
            let normalized = strata_core::curve::normalize_component(&c, vertex)?;
            print_json(&CurveJson::from_curve(&normalized))?;
        }
    }
    Ok(EXIT_OK)
}

// --------------------------------------------------------------- coherent

#[derive(Subcommand, Debug)]
pub enum CoherentAction {
    /// Evaluate one extension operator on a curve.
    Eval {
        /// Operator JSON:
        /// `{"decomposition": {"parts": [[0],[1,2],...], "k": 4},
        /// "cutoff": {"radius": 0.1, "order": 3}, "xi": {"components": [...]}}`
        #[arg(long)]
        operator: String,
        #[arg(long)]
        curve: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Run the coherency property suite and emit its violation report.
    Check {
        #[arg(long, default_value_t = default_seed())]
        seed: u64,
        #[arg(long)]
        quick: bool,
    },
}

#[derive(serde::Deserialize)]
struct OperatorJson {
    decomposition: StableDecompositionData,
    #[serde(default)]
    cutoff: Option<Cutoff>,
    xi: XiFunction,
}

pub fn run_coherent(action: CoherentAction) -> CmdResult {
    match action {
        CoherentAction::Eval {
            operator,
            curve,
            tol,
        } => {
            let op: OperatorJson = serde_json::from_str(&read_payload(&operator)?)?;
            let dec = op.decomposition.to_decomposition()?;
            let ext = ExtensionOperator::new(&dec, op.cutoff.unwrap_or_default(), op.xi)?;
            let c = CurveJson::parse(&read_payload(&curve)?)?.to_curve(tol)?;
            let value = ext.evaluate(&c)?;
            print_json(&json!({
                "value": value.value,
                "cutoff_factor": value.factor,
                "data_value": value.data_value,
            }))?;
        }
        CoherentAction::Check { seed, quick } => {
            let cfg = RunConfig {
                seed,
                tol: env_tol(),
                quick,
            };
            let report = run_suite("coherent", &cfg).expect("known suite");
            let ok = report.passed();
            print_json(&report)?;
            if !ok {
                return Ok(EXIT_VIOLATION);
            }
        }
    }
    Ok(EXIT_OK)
}

// ------------------------------------------------------------------ angle

#[derive(Subcommand, Debug)]
pub enum AngleAction {
    /// Kähler angle of an oriented subspace (basis columns row-major).
    Kahler {
        #[arg(long)]
        basis: String,
    },
    /// Maximal angle between two subspaces.
    Max {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Minimal angle between two subspaces.
    Min {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Taming margins alpha, beta, gamma of a skew form.
    Gamma {
        #[arg(long)]
        sigma: String,
        /// Cross-check against the sampling oracle with this seed.
        #[arg(long)]
        oracle_seed: Option<u64>,
    },
    /// Kähler angle of the kernel of a (linear, antilinear) pair.
    Kernel {
        /// Complex row vector `[[re,im],...]` for the linear part.
        #[arg(long)]
        a: String,
        /// Complex row vector for the antilinear part.
        #[arg(long)]
        b: String,
    },
    /// Construct a compatible structure preserving one or two subspaces.
    ConstructK {
        #[arg(long)]
        w: String,
        #[arg(long)]
        w_prime: Option<String>,
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.5)]
        theta3: f64,
    },
    /// Canonical path between compatible structures.
    Path {
        #[arg(long)]
        j0: String,
        #[arg(long)]
        j1: String,
        #[arg(long)]
        t: Option<f64>,
        /// Emit a contraction table over a grid of endpoint distances.
        #[arg(long)]
        table: bool,
    },
    /// Empirical angle threshold for the two-subspace construction: the
    /// largest sampled Kähler-angle bound under which every constructed
    /// structure stays within `theta2` of the standard one.
    FindTheta3 {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.2)]
        theta2: f64,
        #[arg(long, default_value_t = 40)]
        samples: usize,
        #[arg(long, default_value_t = default_seed())]
        seed: u64,
    },
}

fn matrix_rows(m: &nalgebra::DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

pub fn run_angle(action: AngleAction) -> CmdResult {
    match action {
        AngleAction::Kahler { basis } => {
            let m = parse_matrix(&basis)?;
            let w = OrientedSubspace::new(m)?;
            let theta = kahler_angle(&w)?;
            print_json(&json!({
                "kahler_angle": theta,
                "symplectic": theta < std::f64::consts::FRAC_PI_2,
            }))?;
        }
        AngleAction::Max { x, y } => {
            let xs = OrientedSubspace::new(parse_matrix(&x)?)?;
            let ys = OrientedSubspace::new(parse_matrix(&y)?)?;
            print_json(&json!({ "max_angle": max_angle(&xs, &ys) }))?;
        }
        AngleAction::Min { x, y } => {
            let xs = OrientedSubspace::new(parse_matrix(&x)?)?;
            let ys = OrientedSubspace::new(parse_matrix(&y)?)?;
            print_json(&json!({ "min_angle": min_angle(&xs, &ys) }))?;
        }
        AngleAction::Gamma { sigma, oracle_seed } => {
            let form = SkewForm::new(parse_matrix(&sigma)?)?;
            let margin = taming_margin(&form)?;
            let mut out = json!({
                "alpha": margin.alpha,
                "beta": margin.beta,
                "gamma": margin.gamma,
                "tames_standard_j": margin.gamma > 0.0,
            });
            if let Some(seed) = oracle_seed {
                out["oracle_alpha"] = json!(strata_core::angles::mc_alpha(&form, seed, 400));
                out["oracle_beta"] = json!(strata_core::angles::mc_beta(&form, seed ^ 1, 400));
            }
            print_json(&out)?;
        }
        AngleAction::Kernel { a, b } => {
            let av = parse_complex_vec(&a)?;
            let bv = parse_complex_vec(&b)?;
            let theta = kernel_angle(&av, &bv)?;
            let direct = kernel_angle_direct(&av, &bv)?;
            print_json(&json!({
                "kernel_angle": theta,
                "direct_check": direct,
                "agreement": (theta - direct).abs(),
            }))?;
        }
        AngleAction::ConstructK {
            w,
            w_prime,
            epsilon,
            theta3,
        } => {
            let ws = OrientedSubspace::new(parse_matrix(&w)?)?;
            let n = ws.ambient_dim() / 2;
            match w_prime {
                None => {
                    let k = construct_k_codim2(&ws)?;
                    let theta = kahler_angle(&ws)?;
                    let theta = theta.min(std::f64::consts::PI - theta);
                    print_json(&json!({
                        "k": matrix_rows(&k),
                        "kahler_angle": theta,
                        "norm_bound": 2.0 * (theta / 2.0).sin(),
                        "restricted_norm_diff": restricted_norm_diff(&k, &ws)?,
                        "global_norm_diff": op_norm(&(&k - standard_j(n))),
                    }))?;
                }
                Some(wp) => {
                    let wps = OrientedSubspace::new(parse_matrix(&wp)?)?;
                    let (k, diag) = construct_k_pair(&ws, &wps, epsilon, theta3)?;
                    print_json(&json!({
                        "k": matrix_rows(&k),
                        "norm_diff": diag.norm_diff,
                        "compatibility_residual": diag.compatibility_residual,
                        "taming_min_eigenvalue": diag.taming_min_eigenvalue,
                        "invariance_residual_w": diag.invariance_residual_w,
                        "invariance_residual_w_prime": diag.invariance_residual_w_prime,
                        "basis_least_singular_value": diag.basis_least_singular_value,
                        "intersection_positive": diag.intersection_positive,
                    }))?;
                }
            }
        }
        AngleAction::Path { j0, j1, t, table } => {
            let a = parse_matrix(&j0)?;
            let b = parse_matrix(&j1)?;
            let n = a.nrows() / 2;
            if let Some(t) = t {
                let jt = canonical_path(&a, &b, t, n)?;
                print_json(&json!({ "j_t": matrix_rows(&jt) }))?;
            }
            if table || t.is_none() {
                // sup-distance along the path per endpoint distance, with
                // the endpoint moved towards j0 through metric blending
                let mut rows = Vec::new();
                for &blend in &[1.0, 0.5, 0.25, 0.125, 0.0625] {
                    let jb = canonical_path(&a, &b, blend, n)?;
                    let delta = op_norm(&(&jb - &a));
                    let mut sup: f64 = 0.0;
                    for i in 0..=16 {
                        let s = i as f64 / 16.0;
                        let js = canonical_path(&a, &jb, s, n)?;
                        sup = sup.max(op_norm(&(&js - &a)));
                    }
                    rows.push(json!({ "endpoint_distance": delta, "sup_path_distance": sup }));
                }
                print_json(&json!({ "contraction_table": rows }))?;
            }
        }
        AngleAction::FindTheta3 {
            n,
            epsilon,
            theta2,
            samples,
            seed,
        } => {
            let report = find_theta3(n, epsilon, theta2, samples, seed)?;
            print_json(&report)?;
        }
    }
    Ok(EXIT_OK)
}

/// Descending sweep over candidate angle bounds: for each bound, sample
/// transverse pairs of codimension-2 symplectic subspaces with Kähler
/// angles below it, run the two-subspace construction, and require every
/// structure to stay within `theta2` of the standard one. The first bound
/// where all samples pass is reported.
fn find_theta3(
    n: usize,
    epsilon: f64,
    theta2: f64,
    samples: usize,
    seed: u64,
) -> Result<serde_json::Value, AnyError> {
    use nalgebra::DMatrix;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    if n < 2 {
        return Err("need complex dimension n >= 2".into());
    }
    let dim = 2 * n;
    let mut table = Vec::new();
    let mut found: Option<f64> = None;
    for step in 0..10 {
        let theta3 = 0.4 * 0.7f64.powi(step);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ step as u64);
        let mut worst_norm: f64 = 0.0;
        let mut tested = 0usize;
        let mut failures = 0usize;
        while tested < samples {
            // tilt a pair of orthogonal complex subspaces by a random
            // symplectic-ish rotation scaled to the candidate bound
            let a = DMatrix::from_fn(dim, dim, |_, _| rng.gen_range(-1.0..1.0));
            let rot = ((&a - a.transpose()) * (theta3 * 0.35)).exp();
            let mut b1 = DMatrix::zeros(dim, dim - 2);
            for i in 0..dim - 2 {
                b1[(i, i)] = 1.0;
            }
            let mut b2 = DMatrix::zeros(dim, dim - 2);
            for i in 0..dim - 4 {
                b2[(i, i)] = 1.0;
            }
            b2[(dim - 2, dim - 4)] = 1.0;
            b2[(dim - 1, dim - 3)] = 1.0;
            let w = OrientedSubspace::new(&rot * b1)?;
            let wp = OrientedSubspace::new(&rot * b2)?;
            // keep only samples matching the hypotheses
            let t1 = kahler_angle(&w)?;
            let t1 = t1.min(std::f64::consts::PI - t1);
            let t2m = kahler_angle(&wp)?;
            let t2m = t2m.min(std::f64::consts::PI - t2m);
            if t1 > theta3 || t2m > theta3 || min_angle(&w, &wp) < epsilon {
                continue;
            }
            tested += 1;
            match construct_k_pair(&w, &wp, epsilon, theta3 + 1e-9) {
                Ok((_, diag)) => {
                    worst_norm = worst_norm.max(diag.norm_diff);
                    if diag.norm_diff >= theta2 || diag.taming_min_eigenvalue <= 0.0 {
                        failures += 1;
                    }
                }
                Err(_) => failures += 1,
            }
        }
        let pass = failures == 0;
        table.push(json!({
            "theta3": theta3,
            "samples": tested,
            "failures": failures,
            "worst_norm_diff": worst_norm,
            "pass": pass,
        }));
        if pass && found.is_none() {
            found = Some(theta3);
            break;
        }
    }
    Ok(json!({
        "epsilon": epsilon,
        "theta2": theta2,
        "theta3": found,
        "sweep": table,
    }))
}

// --------------------------------------------------------------- donaldson

#[derive(Subcommand, Debug)]
pub enum DonaldsonAction {
    /// Degree thresholds, indices, and verdict flags.
    Bounds {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        theta0: String,
        #[arg(long)]
        alpha_norm: String,
        #[arg(long)]
        d: Option<String>,
        #[arg(long)]
        d0: Option<String>,
        #[arg(long)]
        d1: Option<String>,
        #[arg(long)]
        omega_a: i64,
        #[arg(long)]
        c1_a: i64,
        #[arg(long)]
        family_k: Option<i64>,
    },
    /// Enumerate homology classes with bounded area and box norm.
    Classes {
        #[arg(long, value_parser = parse_int_row_arg)]
        omega_row: std::vec::Vec<i64>,
        #[arg(long)]
        energy: i64,
        /// Keep only classes with nonnegative area.
        #[arg(long)]
        positive: bool,
    },
    /// Counting weight and covering degree for marked-point forgetting.
    Gw {
        #[arg(long)]
        ell0: u64,
        #[arg(long)]
        ell1: u64,
    },
}

pub fn run_donaldson(action: DonaldsonAction) -> CmdResult {
    match action {
        DonaldsonAction::Bounds {
            n,
            theta0,
            alpha_norm,
            d,
            d0,
            d1,
            omega_a,
            c1_a,
            family_k,
        } => {
            let theta = parse_rational(&theta0)?;
            let alpha = parse_rational(&alpha_norm)?;
            let degree = d.map(|s| parse_rational(&s)).transpose()?;
            let degrees = match (d0, d1) {
                (Some(a), Some(b)) => Some((parse_rational(&a)?, parse_rational(&b)?)),
                (None, None) => None,
                _ => return Err("provide both --d0 and --d1 or neither".into()),
            };
            let report = bounds_report(
                n,
                &theta,
                &alpha,
                degree.as_ref(),
                degrees.as_ref().map(|(a, b)| (a, b)),
                omega_a,
                c1_a,
                family_k,
            )?;
            let mut out = json!({
                "d_star": rational_json(&report.d_star),
                "d_threshold": rational_json(&report.d_threshold),
            });
            if degree.is_some() {
                out["degree_condition_sphere"] = json!(report.degree_condition_a);
                out["degree_condition_three_points"] = json!(report.degree_condition_b);
                let idx = report.sphere_index.as_ref().unwrap();
                out["sphere_in_y_index"] = rational_json(&idx.index);
                out["sphere_in_y_index_bound"] = rational_json(&idx.bound_variant);
                out["sphere_in_y_ruled_out"] = json!(idx.negative);
                let tang = report.tangency.as_ref().unwrap();
                out["max_tangency_intersection"] = json!(tang.max_order);
                out["max_tangency_bound"] = rational_json(&tang.max_order_bound_variant);
                out["forces_three_points"] = json!(tang.forces_three_points);
                out["ell"] = rational_json(report.ell.as_ref().unwrap());
                out["ell_at_least_3"] = json!(report.ell_at_least_3.unwrap());
                if let Some(cond) = report.family_condition {
                    out["family_condition"] = json!(cond);
                }
            }
            if let Some(two) = report.two_hypersurface {
                out["two_hypersurface_index"] = rational_json(&two.index);
                out["two_hypersurface_negative"] = json!(two.negative);
                out["two_hypersurface_hypothesis"] = json!(two.hypothesis_holds);
            }
            print_json(&out)?;
        }
        DonaldsonAction::Classes {
            omega_row,
            energy,
            positive,
        } => {
            let classes = enumerate_bounded_classes(&omega_row, energy, positive)?;
            print_json(&json!({
                "count": classes.len(),
                "classes": classes,
            }))?;
        }
        DonaldsonAction::Gw { ell0, ell1 } => {
            let (weight, covering) = gw_normalization(ell0, ell1)?;
            print_json(&json!({
                "weight": weight.to_string(),
                "weight_approx": weight.to_f64(),
                "covering_degree": covering.to_string(),
            }))?;
        }
    }
    Ok(EXIT_OK)
}

// --------------------------------------------------------------- intersect

#[derive(Subcommand, Debug)]
pub enum IntersectAction {
    /// Local data of one polynomial at a point: vanishing order and winding.
    Local {
        /// Ascending coefficients `[[re,im],...]`.
        #[arg(long)]
        h: String,
        /// Base point `[re,im]`.
        #[arg(long, default_value = "[0,0]")]
        z0: String,
        #[arg(long, default_value_t = 0.5)]
        radius: f64,
        #[arg(long, default_value_t = DEFAULT_NODES)]
        nodes: usize,
    },
    /// Total intersection of a rational curve with a hypersurface.
    Total {
        /// Map JSON: `{"coordinates": [[[re,im],...], ...]}` (homogeneous
        /// coefficients of equal degree per coordinate).
        #[arg(long)]
        map: String,
        /// Hypersurface JSON:
        /// `{"vars": 3, "terms": [{"exponents": [1,0,0], "coefficient": [re,im]}]}`,
        /// or use --hyperplane.
        #[arg(long)]
        hypersurface: Option<String>,
        /// Coordinate hyperplane index (alternative to --hypersurface).
        #[arg(long)]
        hyperplane: Option<usize>,
    },
    /// Normal jets of a polynomial disk map along a coordinate subspace.
    Jet {
        /// Map JSON: `{"components": [[[re,im],...], ...]}`.
        #[arg(long)]
        map: String,
        /// Complex dimension of the subspace.
        #[arg(long)]
        k: usize,
        #[arg(long)]
        level: usize,
    },
}

#[derive(serde::Deserialize)]
struct MapJson {
    components: Vec<Vec<[f64; 2]>>,
}

#[derive(serde::Deserialize)]
struct RationalMapJson {
    coordinates: Vec<Vec<[f64; 2]>>,
}

#[derive(serde::Deserialize)]
struct HypersurfaceJson {
    vars: usize,
    terms: Vec<HyperTermJson>,
}

#[derive(serde::Deserialize)]
struct HyperTermJson {
    exponents: Vec<u32>,
    coefficient: [f64; 2],
}

fn floats_to_cc(raw: &[[f64; 2]]) -> Result<Vec<strata_core::intersect::CC>, AnyError> {
    raw.iter()
        .map(|[re, im]| {
            Ok(strata_core::intersect::CC::new(
                num_rational::BigRational::from_float(*re).ok_or("non-finite value")?,
                num_rational::BigRational::from_float(*im).ok_or("non-finite value")?,
            ))
        })
        .collect()
}

pub fn run_intersect(action: IntersectAction) -> CmdResult {
    match action {
        IntersectAction::Local {
            h,
            z0,
            radius,
            nodes,
        } => {
            let poly = parse_cpoly(&h)?;
            let z: [f64; 2] = serde_json::from_str(&read_payload(&z0)?)?;
            let z0_exact = strata_core::intersect::CC::new(
                num_rational::BigRational::from_float(z[0]).ok_or("non-finite")?,
                num_rational::BigRational::from_float(z[1]).ok_or("non-finite")?,
            );
            let order = poly.vanishing_order(&z0_exact);
            let center = Complex64::new(z[0], z[1]);
            let f = {
                let poly = poly.clone();
                move |w: Complex64| poly.eval_f64(w)
            };
            let winding = winding_number_with(&f, center, radius, nodes);
            print_json(&json!({
                "vanishing_order": order,
                "winding_number": winding.as_ref().ok(),
                "winding_error": winding.as_ref().err().map(|e| e.to_string()),
                "agreement": match (&order, &winding) {
                    (Some(o), Ok(w)) => Some(*o == *w as usize),
                    _ => None,
                },
            }))?;
        }
        IntersectAction::Total {
            map,
            hypersurface,
            hyperplane,
        } => {
            let parsed: RationalMapJson = serde_json::from_str(&read_payload(&map)?)?;
            let coords: Vec<HPoly> = parsed
                .coordinates
                .iter()
                .map(|raw| Ok::<_, AnyError>(HPoly { coeffs: floats_to_cc(raw)? }))
                .collect::<Result<_, _>>()?;
            let rmap = RationalMap::new(coords)?;
            let hyper = match (hypersurface, hyperplane) {
                (Some(h), None) => {
                    let parsed: HypersurfaceJson = serde_json::from_str(&read_payload(&h)?)?;
                    let terms: Vec<(Vec<u32>, strata_core::intersect::CC)> = parsed
                        .terms
                        .iter()
                        .map(|t| {
                            Ok::<_, AnyError>((
                                t.exponents.clone(),
                                floats_to_cc(&[t.coefficient])?.remove(0),
                            ))
                        })
                        .collect::<Result<_, _>>()?;
                    Hypersurface::new(MultiPoly::new(parsed.vars, terms))?
                }
                (None, Some(idx)) => {
                    Hypersurface::coordinate_hyperplane(rmap.coordinates.len(), idx)
                }
                _ => return Err("provide exactly one of --hypersurface / --hyperplane".into()),
            };
            let result = total_intersection(&rmap, &hyper)?;
            let roots: Vec<serde_json::Value> = result
                .roots
                .iter()
                .map(|r| {
                    json!({
                        "location": r.location.map(|z| [z.re, z.im]),
                        "at_infinity": r.at_infinity,
                        "multiplicity": r.multiplicity,
                    })
                })
                .collect();
            print_json(&json!({
                "total": result.structural,
                "degree_product": result.arithmetic,
                "map_degree": result.map_degree,
                "hypersurface_degree": result.hypersurface_degree,
                "removed_common_degree": result.removed_common_degree,
                "roots": roots,
            }))?;
        }
        IntersectAction::Jet { map, k, level } => {
            let parsed: MapJson = serde_json::from_str(&read_payload(&map)?)?;
            let components = parsed
                .components
                .iter()
                .map(|raw| Ok::<_, AnyError>(strata_core::intersect::CPoly::new(floats_to_cc(raw)?)))
                .collect::<Result<Vec<_>, _>>()?;
            let model = AnalyticMapModel::new(components);
            let jet = normal_jet(&model, k, level)?;
            let out = match jet {
                NormalJet::Defined(value) => {
                    let v: Vec<[f64; 2]> = value
                        .iter()
                        .map(|c| {
                            let z = cc_to_f64(c);
                            [z.re, z.im]
                        })
                        .collect();
                    json!({ "defined": true, "normal_jet": v })
                }
                NormalJet::Undefined {
                    first_nonzero_level,
                } => json!({
                    "defined": false,
                    "first_nonzero_level": first_nonzero_level,
                }),
                NormalJet::ContainedInSubspace => json!({
                    "defined": false,
                    "contained_in_subspace": true,
                }),
            };
            print_json(&out)?;
        }
    }
    Ok(EXIT_OK)
}

// ------------------------------------------------------------------ verify

fn default_seed() -> u64 {
    std::env::var("DM_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

fn env_tol() -> f64 {
    std::env::var("DM_TOL")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1e-9)
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite name or `all`.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = default_seed())]
    pub seed: u64,
    /// Absolute tolerance override (or set DM_TOL).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Shrink sample counts for a fast smoke run.
    #[arg(long)]
    pub quick: bool,
}

pub fn run_verify(args: VerifyArgs, table: bool) -> CmdResult {
    let cfg = RunConfig {
        seed: args.seed,
        tol: args.tol.unwrap_or_else(env_tol),
        quick: args.quick,
    };
    let reports: Vec<SuiteReport> = if args.suite == "all" {
        run_all(&cfg)
    } else {
        match run_suite(&args.suite, &cfg) {
            Some(r) => vec![r],
            None => {
                return Err(format!(
                    "unknown suite {:?}; available: {} or all",
                    args.suite,
                    SUITE_NAMES.join(", ")
                )
                .into())
            }
        }
    };
    let violations: u64 = reports.iter().map(|r| r.violations).sum();
    if table {
        for r in &reports {
            println!("suite {} (seed {})", r.suite, r.seed);
            for c in &r.checks {
                println!(
                    "  [{}] {} ({} trials, {} violations)",
                    if c.violations == 0 { "pass" } else { "FAIL" },
                    c.name,
                    c.trials,
                    c.violations
                );
            }
        }
        println!("total violations: {violations}");
    } else if reports.len() == 1 {
        print_json(&reports[0])?;
    } else {
        print_json(&json!({
            "suites": reports,
            "violations": violations,
        }))?;
    }
    Ok(if violations == 0 { EXIT_OK } else { EXIT_VIOLATION })
}
