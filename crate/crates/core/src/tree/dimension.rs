//! Dimension formulas for the moduli strata.

/// Complex dimension of the stratum of stable curves modelled over a tree
/// with `k` marked points and `edges` edges: `k - 3 - e(T)`. The top
/// stratum (`e = 0`) has dimension `k - 3` and each extra node drops the
/// dimension by one.
pub fn stratum_dim(k: usize, edges: usize) -> i64 {
    k as i64 - 3 - edges as i64
}

/// Real dimension of a stratum of stable maps into a `2n`-dimensional
/// target: `2(n - 3 + k + c1(A) - e(T))`, minus the real codimension of any
/// point constraints. Negative values mean the stratum is generically
/// empty.
pub fn moduli_dim(n: i64, k: i64, c1_a: i64, edges: i64, codim_r_constraint: i64) -> i64 {
    2 * (n - 3 + k + c1_a - edges) - codim_r_constraint
}

/// A tangency constraint: complex codimension of the submanifold and the
/// order of tangency. Order `-1` imposes no condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TangencyConstraint {
    pub codim_c: i64,
    pub order: i64,
}

impl TangencyConstraint {
    pub fn new(codim_c: i64, order: i64) -> Self {
        assert!(order >= -1, "tangency order must be >= -1");
        Self { codim_c, order }
    }
}

/// Real dimension of the moduli space of spheres tangent to submanifolds
/// `Z_i` of complex codimension `c_i` with order `l_i`:
/// `2n - 6 + 2 c1(A) + 2k - sum 2 (l_i + 1) c_i`.
pub fn tangency_moduli_dim(n: i64, c1_a: i64, k: i64, constraints: &[TangencyConstraint]) -> i64 {
    let drop: i64 = constraints
        .iter()
        .map(|c| 2 * (c.order + 1) * c.codim_c)
        .sum();
    2 * n - 6 + 2 * c1_a + 2 * k - drop
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stratum_dims() {
        assert_eq!(stratum_dim(5, 0), 2);
        assert_eq!(stratum_dim(5, 2), 0);
        assert_eq!(stratum_dim(3, 0), 0);
    }

    #[test]
    fn moduli_dim_examples() {
        assert_eq!(moduli_dim(3, 1, 5, 0, 0), 12);
        // each edge subtracts 2
        for e in 0..5 {
            assert_eq!(moduli_dim(3, 1, 5, e, 0), 12 - 2 * e);
        }
        // l hypersurface point constraints of complex codimension 1 recover
        // 2(n - 3 + k + c1(A)) with k counting only the free points
        let (n, k, c1a, ell) = (4, 2, 7, n_times_omega(4));
        let dim_constrained = moduli_dim(n, k + ell, c1a, 0, 2 * ell);
        assert_eq!(dim_constrained, 2 * (n - 3 + k + c1a));
    }

    fn n_times_omega(d: i64) -> i64 {
        d * 3 // an arbitrary positive intersection count for the test
    }

    #[test]
    fn tangency_dim_examples() {
        assert_eq!(tangency_moduli_dim(3, 4, 2, &[]), 8 + 4);
        let base = tangency_moduli_dim(3, 4, 2, &[]);
        let simple = tangency_moduli_dim(3, 4, 2, &[TangencyConstraint::new(1, 0)]);
        assert_eq!(base - simple, 2);
        let tangent = tangency_moduli_dim(3, 4, 2, &[TangencyConstraint::new(1, 1)]);
        assert_eq!(base - tangent, 4);
        // order -1 imposes nothing
        let vacuous = tangency_moduli_dim(3, 4, 2, &[TangencyConstraint::new(1, -1)]);
        assert_eq!(base, vacuous);
    }
}
