//! Static coverage report: which operation lives where and which tests
//! exercise it.

use serde_json::json;

use crate::input::{print_json, AnyError};
use crate::EXIT_OK;

struct Entry {
    operation: &'static str,
    module: &'static str,
    cli: &'static str,
    tests: &'static [&'static str],
}

const ENTRIES: &[Entry] = &[
    Entry {
        operation: "is_stable",
        module: "tree",
        cli: "strata tree stable",
        tests: &["tree::tests", "verify::trees", "acceptance::criterion_1"],
    },
    Entry {
        operation: "stabilize",
        module: "tree::stabilize",
        cli: "strata tree stabilize",
        tests: &["tree::stabilize::tests", "verify::trees", "proptests::stabilize_idempotent"],
    },
    Entry {
        operation: "ghost_forest",
        module: "tree",
        cli: "strata tree ghosts",
        tests: &["tree::tests::ghost_forest_of_chain", "verify::trees"],
    },
    Entry {
        operation: "reduced_index_set",
        module: "tree",
        cli: "strata tree reduced",
        tests: &["tree::tests::reduced_index_set_rules", "verify::trees"],
    },
    Entry {
        operation: "enumerate_stable_trees",
        module: "tree::enumerate",
        cli: "strata dm strata",
        tests: &["tree::enumerate::tests", "verify::dm", "acceptance::criterion_1"],
    },
    Entry {
        operation: "stratum_dim",
        module: "tree::dimension",
        cli: "strata tree dim",
        tests: &["tree::dimension::tests", "verify::dm", "acceptance::criterion_1"],
    },
    Entry {
        operation: "moduli_dim",
        module: "tree::dimension",
        cli: "strata tree moduli-dim",
        tests: &["tree::dimension::tests::moduli_dim_examples"],
    },
    Entry {
        operation: "tangency_moduli_dim",
        module: "tree::dimension",
        cli: "strata tree moduli-dim --tangencies",
        tests: &["tree::dimension::tests::tangency_dim_examples"],
    },
    Entry {
        operation: "solve_edge_system",
        module: "tree::edge_system",
        cli: "strata tree solve-edges",
        tests: &["tree::edge_system::tests", "verify::edge-solver", "acceptance::criterion_9"],
    },
    Entry {
        operation: "cross_ratio",
        module: "curve::cross_ratio",
        cli: "strata cross-ratio eval",
        tests: &["curve::cross_ratio::tests", "verify::cross-ratio", "acceptance::criterion_2"],
    },
    Entry {
        operation: "cross_ratio_nodal",
        module: "curve",
        cli: "strata cross-ratio nodal",
        tests: &["curve::tests", "verify::cross-ratio", "acceptance::criterion_2"],
    },
    Entry {
        operation: "stable_decomposition",
        module: "curve",
        cli: "strata cross-ratio decompose",
        tests: &["curve::tests::stable_decomposition_groups_far_labels"],
    },
    Entry {
        operation: "triple_type",
        module: "curve::decomposition",
        cli: "(library)",
        tests: &["curve::decomposition::tests", "verify::types", "acceptance::criterion_3"],
    },
    Entry {
        operation: "is_refinement",
        module: "curve::decomposition",
        cli: "(library)",
        tests: &["curve::decomposition::tests::refinement_basics", "verify::types"],
    },
    Entry {
        operation: "witness_refinement",
        module: "curve::decomposition",
        cli: "(library)",
        tests: &["verify::types", "acceptance::criterion_3"],
    },
    Entry {
        operation: "witness_nonrefinement",
        module: "curve::decomposition",
        cli: "(library)",
        tests: &["verify::types", "acceptance::criterion_3"],
    },
    Entry {
        operation: "normalize_component",
        module: "curve::normalize",
        cli: "(library)",
        tests: &["curve::normalize::tests", "verify::cross-ratio"],
    },
    Entry {
        operation: "extend (extension operators)",
        module: "coherent::extend",
        cli: "strata coherent eval",
        tests: &["coherent::tests", "verify::coherent", "acceptance::criterion_4"],
    },
    Entry {
        operation: "disjoint_support_check",
        module: "coherent (verify suite)",
        cli: "strata coherent check",
        tests: &["verify::coherent", "acceptance::criterion_4"],
    },
    Entry {
        operation: "collapse_induced",
        module: "coherent::extend",
        cli: "(library)",
        tests: &["coherent::tests::collapse_drops_subtree_strata_and_relabels"],
    },
    Entry {
        operation: "kahler_angle",
        module: "angles::kahler",
        cli: "strata angle kahler",
        tests: &["angles::kahler::tests", "verify::angles", "acceptance::criterion_5"],
    },
    Entry {
        operation: "max_angle / min_angle",
        module: "angles::subspace",
        cli: "strata angle max|min",
        tests: &["angles::subspace::tests", "verify::angles", "acceptance::criterion_5"],
    },
    Entry {
        operation: "kernel_angle",
        module: "angles::kahler",
        cli: "strata angle kernel",
        tests: &["angles::kahler::tests::kernel_angle_textbook_value", "verify::angles"],
    },
    Entry {
        operation: "taming_margin",
        module: "angles::margins",
        cli: "strata angle gamma",
        tests: &["angles::margins::tests", "verify::taming", "acceptance::criterion_6"],
    },
    Entry {
        operation: "tames",
        module: "angles::margins",
        cli: "strata angle gamma (sign)",
        tests: &["angles::margins::tests::taming_standard_pairs", "verify::taming"],
    },
    Entry {
        operation: "construct_K_codim2",
        module: "angles::construct",
        cli: "strata angle construct-k",
        tests: &["angles::construct::tests", "verify::angles", "acceptance::criterion_5"],
    },
    Entry {
        operation: "construct_K_pair",
        module: "angles::construct",
        cli: "strata angle construct-k --w-prime",
        tests: &["angles::construct::tests::pair_construction_small_tilt"],
    },
    Entry {
        operation: "min_angle_bound",
        module: "angles::subspace (verify suite)",
        cli: "(library)",
        tests: &["verify::angles", "acceptance::criterion_5"],
    },
    Entry {
        operation: "canonical_path",
        module: "angles::path",
        cli: "strata angle path",
        tests: &["angles::path::tests", "verify::angles"],
    },
    Entry {
        operation: "d_star / degree_threshold",
        module: "donaldson",
        cli: "strata donaldson bounds",
        tests: &["donaldson::tests", "verify::donaldson", "acceptance::criterion_7"],
    },
    Entry {
        operation: "index_sphere_in_Y (plus family variant)",
        module: "donaldson",
        cli: "strata donaldson bounds --d",
        tests: &["donaldson::tests::sphere_index_example", "verify::donaldson"],
    },
    Entry {
        operation: "max_tangency_order",
        module: "donaldson",
        cli: "strata donaldson bounds --d",
        tests: &["donaldson::tests::tangency_example", "verify::donaldson"],
    },
    Entry {
        operation: "index_two_hypersurfaces",
        module: "donaldson",
        cli: "strata donaldson bounds --d0 --d1",
        tests: &["donaldson::tests::two_hypersurface_example", "verify::donaldson"],
    },
    Entry {
        operation: "enumerate_bounded_classes",
        module: "donaldson",
        cli: "strata donaldson classes",
        tests: &["donaldson::tests::bounded_class_enumeration", "verify::donaldson"],
    },
    Entry {
        operation: "gw_normalization",
        module: "donaldson",
        cli: "strata donaldson gw",
        tests: &["donaldson::tests::gw_weights", "verify::donaldson"],
    },
    Entry {
        operation: "vanishing_order",
        module: "intersect::poly",
        cli: "strata intersect local",
        tests: &["intersect::poly::tests", "verify::intersect", "acceptance::criterion_8"],
    },
    Entry {
        operation: "local_intersection_winding",
        module: "intersect::winding",
        cli: "strata intersect local",
        tests: &["intersect::winding::tests", "verify::intersect", "acceptance::criterion_8"],
    },
    Entry {
        operation: "total_intersection",
        module: "intersect::total",
        cli: "strata intersect total",
        tests: &["intersect::total::tests", "verify::intersect", "acceptance::criterion_8"],
    },
    Entry {
        operation: "normal_jet",
        module: "intersect::jets",
        cli: "strata intersect jet",
        tests: &["intersect::jets::tests", "verify::intersect", "acceptance::criterion_8"],
    },
    Entry {
        operation: "nodal local indices (ghost trees)",
        module: "intersect::nodal",
        cli: "(library)",
        tests: &["intersect::nodal::tests", "verify::intersect"],
    },
    Entry {
        operation: "run_subcommand",
        module: "bin::strata",
        cli: "strata <subcommand>",
        tests: &["acceptance::criterion_1", "acceptance::criterion_10"],
    },
    Entry {
        operation: "concordance_report",
        module: "bin::strata::coverage",
        cli: "strata coverage",
        tests: &["acceptance::coverage_complete"],
    },
];

/// Functionality intentionally not modeled by this library.
const NOT_MODELED: &[&str] = &[
    "infinite-dimensional function spaces and Banach-manifold structure",
    "linearized Cauchy-Riemann operators and their surjectivity theory",
    "genericity arguments via Baire category in spaces of structures",
    "elliptic regularity and compactness theory for holomorphic maps",
    "pseudocycle cobordism constructions",
    "construction of approximately holomorphic hypersurface sections",
    "local similarity normal forms (only their numeric conclusions are exercised)",
];

pub fn run() -> Result<i32, AnyError> {
    let entries: Vec<serde_json::Value> = ENTRIES
        .iter()
        .map(|e| {
            json!({
                "operation": e.operation,
                "module": e.module,
                "cli": e.cli,
                "tests": e.tests,
            })
        })
        .collect();
    print_json(&json!({
        "operations": entries,
        "not_modeled": NOT_MODELED,
    }))?;
    Ok(EXIT_OK)
}
