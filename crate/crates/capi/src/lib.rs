//! C ABI over the strata library.
//!
//! Conventions: every fallible function returns a [`StrataStatus`] and
//! writes results through out-pointers; handles are opaque and must be
//! released with their matching `_free`; strings returned by the library
//! are released with [`strata_string_free`]. A human-readable message for
//! the most recent error on the calling thread is available through
//! [`strata_last_error_message`]. Sphere points cross the boundary as
//! projective pairs `[a_re, a_im, b_re, b_im]` so the point at infinity
//! needs no special case; matrices are row-major `f64` arrays.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};

use strata_core::angles::{
    construct_k_codim2, kahler_angle, max_angle, min_angle, op_norm, restricted_norm_diff,
    standard_j, taming_margin, OrientedSubspace, SkewForm,
};
use strata_core::curve::{cross_ratio, NodalCurve, ProjPoint};
use strata_core::donaldson::{
    degree_threshold, d_star, gw_normalization, index_sphere_in_y, max_tangency_order, Rational,
};
use strata_core::intersect::{winding_number_with, CPoly, CC};
use strata_core::json::{CurveJson, TreeJson};
use strata_core::tree::{strata_counts, LabelledTree, DEFAULT_ENUMERATION_CAP};
use strata_core::verify::{run_suite, RunConfig};

use num_complex::Complex;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrataStatus {
    Ok = 0,
    InvalidArgument = 2,
    PropertyViolation = 3,
    ParseError = 4,
    MathError = 5,
    NullPointer = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl std::fmt::Display) {
    let formatted = CString::new(msg.to_string()).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(formatted));
}

fn fail(status: StrataStatus, msg: impl std::fmt::Display) -> StrataStatus {
    set_error(msg);
    status
}

/// Message for the most recent error on this thread; valid until the next
/// failing call. May be null if no error occurred yet.
#[no_mangle]
pub extern "C" fn strata_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map(|s| s.as_ptr())
            .unwrap_or(std::ptr::null())
    })
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn strata_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr() as *const c_char
}

/// Release a string allocated by this library.
///
/// # Safety
/// `s` must have been returned by a strata function and not freed before.
#[no_mangle]
pub unsafe extern "C" fn strata_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn cstr_arg<'a>(ptr: *const c_char) -> Result<&'a str, StrataStatus> {
    if ptr.is_null() {
        return Err(fail(StrataStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|e| fail(StrataStatus::ParseError, format!("invalid UTF-8: {e}")))
}

fn return_string(out: *mut *mut c_char, value: String) -> StrataStatus {
    if out.is_null() {
        return fail(StrataStatus::NullPointer, "null output pointer");
    }
    match CString::new(value) {
        Ok(cs) => {
            unsafe { *out = cs.into_raw() };
            StrataStatus::Ok
        }
        Err(e) => fail(StrataStatus::MathError, e),
    }
}

fn guarded(f: impl FnOnce() -> StrataStatus) -> StrataStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(StrataStatus::Panic, "internal panic"),
    }
}

// ----------------------------------------------------------------- trees

/// Opaque labelled tree handle.
pub struct StrataTree {
    inner: LabelledTree,
}

/// Parse a tree from its JSON wire format.
///
/// # Safety
/// `json` must be a valid NUL-terminated string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn strata_tree_parse(
    json: *const c_char,
    out: *mut *mut StrataTree,
) -> StrataStatus {
    guarded(|| {
        let text = match cstr_arg(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(StrataStatus::NullPointer, "null output pointer");
        }
        let parsed = TreeJson::parse(text).and_then(|t| t.to_tree());
        match parsed {
            Ok(tree) => {
                *out = Box::into_raw(Box::new(StrataTree { inner: tree }));
                StrataStatus::Ok
            }
            Err(e) => fail(StrataStatus::ParseError, e),
        }
    })
}

/// # Safety
/// `tree` must come from `strata_tree_parse`/`strata_tree_stabilize` and
/// not have been freed.
#[no_mangle]
pub unsafe extern "C" fn strata_tree_free(tree: *mut StrataTree) {
    if !tree.is_null() {
        drop(Box::from_raw(tree));
    }
}

/// # Safety
/// `tree` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn strata_tree_is_stable(
    tree: *const StrataTree,
    out: *mut bool,
) -> StrataStatus {
    guarded(|| {
        if tree.is_null() || out.is_null() {
            return fail(StrataStatus::NullPointer, "null argument");
        }
        *out = (*tree).inner.is_stable();
        StrataStatus::Ok
    })
}

/// Canonical stabilization; writes a new handle.
///
/// # Safety
/// `tree` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn strata_tree_stabilize(
    tree: *const StrataTree,
    out: *mut *mut StrataTree,
) -> StrataStatus {
    guarded(|| {
        if tree.is_null() || out.is_null() {
            return fail(StrataStatus::NullPointer, "null argument");
        }
        match (*tree).inner.stabilize() {
            Ok((stable, _)) => {
                *out = Box::into_raw(Box::new(StrataTree { inner: stable }));
                StrataStatus::Ok
            }
            Err(e) => fail(StrataStatus::InvalidArgument, e),
        }
    })
}

/// Complex dimension of the stratum of a stable tree.
///
/// # Safety
/// `tree` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn strata_tree_stratum_dim(
    tree: *const StrataTree,
    out: *mut i64,
) -> StrataStatus {
    guarded(|| {
        if tree.is_null() || out.is_null() {
            return fail(StrataStatus::NullPointer, "null argument");
        }
        match (*tree).inner.stratum_dim() {
            Ok(d) => {
                *out = d;
                StrataStatus::Ok
            }
            Err(e) => fail(StrataStatus::InvalidArgument, e),
        }
    })
}

/// Serialize a tree back to JSON; free the string with
/// `strata_string_free`.
///
/// # Safety
/// `tree` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn strata_tree_to_json(
    tree: *const StrataTree,
    out: *mut *mut c_char,
) -> StrataStatus {
    guarded(|| {
        if tree.is_null() {
            return fail(StrataStatus::NullPointer, "null tree");
        }
        let json = TreeJson::from_tree(&(*tree).inner);
        match serde_json::to_string(&json) {
            Ok(s) => return_string(out, s),
            Err(e) => fail(StrataStatus::MathError, e),
        }
    })
}

/// Stratum class counts by edge number for `k` labels. Writes up to `len`
/// counts and the total number of edge levels to `written`.
///
/// # Safety
/// `counts` must point to at least `len` writable entries; `written` must
/// be valid.
#[no_mangle]
pub unsafe extern "C" fn strata_dm_strata_counts(
    k: usize,
    counts: *mut usize,
    len: usize,
    written: *mut usize,
) -> StrataStatus {
    guarded(|| {
        if counts.is_null() || written.is_null() {
            return fail(StrataStatus::NullPointer, "null output pointer");
        }
        match strata_counts(k, DEFAULT_ENUMERATION_CAP) {
            Ok(all) => {
                if all.len() > len {
                    *written = all.len();
                    return fail(
                        StrataStatus::BufferTooSmall,
                        format!("need {} entries", all.len()),
                    );
                }
                for (i, c) in all.iter().enumerate() {
                    *counts.add(i) = *c;
                }
                *written = all.len();
                StrataStatus::Ok
            }
            Err(e) => fail(StrataStatus::InvalidArgument, e),
        }
    })
}

/// Real moduli dimension `2(n - 3 + k + c1 - edges) - codim`.
#[no_mangle]
pub extern "C" fn strata_moduli_dim(n: i64, k: i64, c1a: i64, edges: i64, codim: i64) -> i64 {
    strata_core::tree::moduli_dim(n, k, c1a, edges, codim)
}

// ---------------------------------------------------------------- curves

/// Opaque nodal curve handle (floating-point chart coordinates).
pub struct StrataCurve {
    inner: NodalCurve<f64>,
}

/// Parse a curve from its JSON wire format.
///
/// # Safety
/// `json` must be a valid NUL-terminated string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn strata_curve_parse(
    json: *const c_char,
    tol: f64,
    out: *mut *mut StrataCurve,
) -> StrataStatus {
    guarded(|| {
        let text = match cstr_arg(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(StrataStatus::NullPointer, "null output pointer");
        }
        match CurveJson::parse(text).and_then(|c| c.to_curve(tol)) {
            Ok(curve) => {
                *out = Box::into_raw(Box::new(StrataCurve { inner: curve }));
                StrataStatus::Ok
            }
            Err(e) => fail(StrataStatus::ParseError, e),
        }
    })
}

/// # Safety
/// `curve` must come from `strata_curve_parse` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn strata_curve_free(curve: *mut StrataCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

fn read_proj(p: &[f64]) -> ProjPoint<f64> {
    ProjPoint::new(
        Complex64::new(p[0], p[1]),
        Complex64::new(p[2], p[3]),
    )
}

fn write_proj(out: *mut f64, w: &ProjPoint<f64>) {
    let w = w.normalized();
    unsafe {
        *out.add(0) = w.a.re;
        *out.add(1) = w.a.im;
        *out.add(2) = w.b.re;
        *out.add(3) = w.b.im;
    }
}

/// Cross ratio of four sphere points given as projective pairs
/// `[a_re, a_im, b_re, b_im]` each; the result uses the same encoding.
///
/// # Safety
/// `points` must hold 16 doubles, `out` 4 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn strata_cross_ratio(
    points: *const f64,
    out: *mut f64,
) -> StrataStatus {
    guarded(|| {
        if points.is_null() || out.is_null() {
            return fail(StrataStatus::NullPointer, "null argument");
        }
        let buf = std::slice::from_raw_parts(points, 16);
        let pts: Vec<ProjPoint<f64>> = buf.chunks(4).map(read_proj).collect();
        match cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3], 1e-12) {
            Ok(w) => {
                write_proj(out, &w);
                StrataStatus::Ok
            }
            Err(e) => fail(StrataStatus::InvalidArgument, e),
        }
    })
}

/// Cross ratio `w_{i,j,m,n}` on a nodal curve, projective output.
///
/// # Safety
/// `curve` must be a live handle, `out` 4 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn strata_curve_cross_ratio(
    curve: *const StrataCurve,
    i: u32,
    j: u32,
    m: u32,
    n: u32,
    out: *mut f64,
) -> StrataStatus {
    guarded(|| {
        if curve.is_null() || out.is_null() {
            return fail(StrataStatus::NullPointer, "null argument");
        }
        match (*curve).inner.cross_ratio_nodal(i, j, m, n) {
            Ok(w) => {
                write_proj(out, &w);
                StrataStatus::Ok
            }
            Err(e) => fail(StrataStatus::InvalidArgument, e),
        }
    })
}

// ---------------------------------------------------------------- angles

unsafe fn matrix_from_raw(
    rows: usize,
    cols: usize,
    data: *const f64,
) -> Result<DMatrix<f64>, StrataStatus> {
    if data.is_null() {
        return Err(fail(StrataStatus::NullPointer, "null matrix data"));
    }
    if rows == 0 || cols == 0 {
        return Err(fail(StrataStatus::InvalidArgument, "empty matrix"));
    }
    let buf = std::slice::from_raw_parts(data, rows * cols);
    Ok(DMatrix::from_fn(rows, cols, |i, j| buf[i * cols + j]))
}

/// Kähler angle of the oriented subspace spanned by the columns of a
/// row-major `rows x cols` basis matrix.
///
/// # Safety
/// `basis` must hold `rows * cols` doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn strata_kahler_angle(
    rows: usize,
    cols: usize,
    basis: *const f64,
    out: *mut f64,
) -> StrataStatus {
    guarded(|| {
        let m = match matrix_from_raw(rows, cols, basis) {
            Ok(m) => m,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(StrataStatus::NullPointer, "null output");
        }
        let result = OrientedSubspace::new(m).and_then(|w| kahler_angle(&w));
        match result {
            Ok(theta) => {
                *out = theta;
                StrataStatus::Ok
            }
            Err(e) => fail(StrataStatus::InvalidArgument, e),
        }
    })
}

/// Maximal (`which = 0`) or minimal (`which = 1`) angle between the
/// subspaces spanned by two column bases over the same ambient space.
///
/// # Safety
/// Matrix buffers must match their stated dimensions; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn strata_subspace_angle(
    which: u32,
    rows: usize,
    x_cols: usize,
    x: *const f64,
    y_cols: usize,
    y: *const f64,
    out: *mut f64,
) -> StrataStatus {
    guarded(|| {
        let (mx, my) = match (
            matrix_from_raw(rows, x_cols, x),
            matrix_from_raw(rows, y_cols, y),
        ) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        if out.is_null() {
            return fail(StrataStatus::NullPointer, "null output");
        }
        let built = OrientedSubspace::new(mx).and_then(|xs| {
            OrientedSubspace::new(my).map(|ys| match which {
                0 => max_angle(&xs, &ys),
                _ => min_angle(&xs, &ys),
            })
        });
        match built {
            Ok(v) => {
                *out = v;
                StrataStatus::Ok
            }
            Err(e) => fail(StrataStatus::InvalidArgument, e),
        }
    })
}

/// Taming margins of a skew form given as a row-major `dim x dim` matrix.
///
/// # Safety
/// `sigma` must hold `dim * dim` doubles; outputs must be valid.
#[no_mangle]
pub unsafe extern "C" fn strata_taming_margin(
    dim: usize,
    sigma: *const f64,
    alpha: *mut f64,
    beta: *mut f64,
    gamma: *mut f64,
) -> StrataStatus {
    guarded(|| {
        let m = match matrix_from_raw(dim, dim, sigma) {
            Ok(m) => m,
            Err(s) => return s,
        };
        if alpha.is_null() || beta.is_null() || gamma.is_null() {
            return fail(StrataStatus::NullPointer, "null output");
        }
        match SkewForm::new(m).and_then(|f| taming_margin(&f)) {
            Ok(t) => {
                *alpha = t.alpha;
                *beta = t.beta;
                *gamma = t.gamma;
                StrataStatus::Ok
            }
            Err(e) => fail(StrataStatus::InvalidArgument, e),
        }
    })
}

/// Compatible structure preserving a codimension-2 symplectic subspace.
/// Writes the `2n x 2n` matrix row-major into `k_out` and the distance to
/// the standard structure over the invariant subspaces into `norm_out`.
///
/// # Safety
/// `basis` must hold `(2n) * (2n-2)` doubles, `k_out` `(2n)^2` writable
/// doubles; `norm_out` valid.
#[no_mangle]
pub unsafe extern "C" fn strata_construct_k_codim2(
    n: usize,
    basis: *const f64,
    k_out: *mut f64,
    norm_out: *mut f64,
) -> StrataStatus {
    guarded(|| {
        let dim = 2 * n;
        if dim < 2 {
            return fail(StrataStatus::InvalidArgument, "need n >= 1");
        }
        let m = match matrix_from_raw(dim, dim - 2, basis) {
            Ok(m) => m,
            Err(s) => return s,
        };
        if k_out.is_null() || norm_out.is_null() {
            return fail(StrataStatus::NullPointer, "null output");
        }
        let built = OrientedSubspace::new(m)
            .and_then(|w| construct_k_codim2(&w).map(|k| (w, k)));
        match built {
            Ok((w, k)) => {
                for i in 0..dim {
                    for j in 0..dim {
                        *k_out.add(i * dim + j) = k[(i, j)];
                    }
                }
                *norm_out = restricted_norm_diff(&k, &w)
                    .unwrap_or_else(|_| op_norm(&(&k - standard_j(n))));
                StrataStatus::Ok
            }
            Err(e) => fail(StrataStatus::MathError, e),
        }
    })
}

// -------------------------------------------------------------- donaldson

fn rational_from_pair(num: i64, den: i64) -> Result<Rational, StrataStatus> {
    if den == 0 {
        return Err(fail(StrataStatus::InvalidArgument, "zero denominator"));
    }
    Ok(Rational::new(BigInt::from(num), BigInt::from(den)))
}

fn rational_to_pair(q: &Rational, num: *mut i64, den: *mut i64) -> StrataStatus {
    match (q.numer().to_i64(), q.denom().to_i64()) {
        (Some(n), Some(d)) => {
            unsafe {
                *num = n;
                *den = d;
            }
            StrataStatus::Ok
        }
        _ => fail(StrataStatus::MathError, "rational exceeds 64-bit range"),
    }
}

/// Chern bound `D_* = (1 + theta)/(1 - theta) |alpha|` as an exact
/// rational.
///
/// # Safety
/// Output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn strata_d_star(
    theta_num: i64,
    theta_den: i64,
    alpha_num: i64,
    alpha_den: i64,
    out_num: *mut i64,
    out_den: *mut i64,
) -> StrataStatus {
    guarded(|| {
        if out_num.is_null() || out_den.is_null() {
            return fail(StrataStatus::NullPointer, "null output");
        }
        let theta = match rational_from_pair(theta_num, theta_den) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let alpha = match rational_from_pair(alpha_num, alpha_den) {
            Ok(a) => a,
            Err(s) => return s,
        };
        match d_star(&theta, &alpha) {
            Ok(v) => rational_to_pair(&v, out_num, out_den),
            Err(e) => fail(StrataStatus::InvalidArgument, e),
        }
    })
}

/// Degree threshold `D^* = 2(D_* + n)` as an exact rational.
///
/// # Safety
/// Output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn strata_degree_threshold(
    n: i64,
    theta_num: i64,
    theta_den: i64,
    alpha_num: i64,
    alpha_den: i64,
    out_num: *mut i64,
    out_den: *mut i64,
) -> StrataStatus {
    guarded(|| {
        if out_num.is_null() || out_den.is_null() {
            return fail(StrataStatus::NullPointer, "null output");
        }
        let theta = match rational_from_pair(theta_num, theta_den) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let alpha = match rational_from_pair(alpha_num, alpha_den) {
            Ok(a) => a,
            Err(s) => return s,
        };
        match degree_threshold(n, &theta, &alpha) {
            Ok(v) => rational_to_pair(&v, out_num, out_den),
            Err(e) => fail(StrataStatus::InvalidArgument, e),
        }
    })
}

/// Verdict for one degree: sphere-in-hypersurface index sign and the
/// three-intersection-point flag.
///
/// # Safety
/// Output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn strata_degree_verdict(
    n: i64,
    c1a: i64,
    degree: i64,
    omega_a: i64,
    theta_num: i64,
    theta_den: i64,
    alpha_num: i64,
    alpha_den: i64,
    index_negative: *mut bool,
    forces_three_points: *mut bool,
) -> StrataStatus {
    guarded(|| {
        if index_negative.is_null() || forces_three_points.is_null() {
            return fail(StrataStatus::NullPointer, "null output");
        }
        let theta = match rational_from_pair(theta_num, theta_den) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let alpha = match rational_from_pair(alpha_num, alpha_den) {
            Ok(a) => a,
            Err(s) => return s,
        };
        let ds = match d_star(&theta, &alpha) {
            Ok(v) => v,
            Err(e) => return fail(StrataStatus::InvalidArgument, e),
        };
        let d = Rational::from_integer(BigInt::from(degree));
        let idx = match index_sphere_in_y(n, c1a, &d, omega_a, &ds) {
            Ok(v) => v,
            Err(e) => return fail(StrataStatus::InvalidArgument, e),
        };
        let tang = match max_tangency_order(n, c1a, &d, omega_a, &ds) {
            Ok(v) => v,
            Err(e) => return fail(StrataStatus::InvalidArgument, e),
        };
        *index_negative = idx.negative;
        *forces_three_points = tang.forces_three_points;
        StrataStatus::Ok
    })
}

/// Counting weight `1/(l0! l1!)` (as numerator/denominator when they fit
/// in 64 bits) and the covering degree `l1!`.
///
/// # Safety
/// Output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn strata_gw_normalization(
    ell0: u64,
    ell1: u64,
    weight_num: *mut i64,
    weight_den: *mut i64,
    covering: *mut u64,
) -> StrataStatus {
    guarded(|| {
        if weight_num.is_null() || weight_den.is_null() || covering.is_null() {
            return fail(StrataStatus::NullPointer, "null output");
        }
        match gw_normalization(ell0, ell1) {
            Ok((w, deg)) => {
                let Some(degree) = deg.abs().to_u64() else {
                    return fail(StrataStatus::MathError, "covering degree overflows u64");
                };
                *covering = degree;
                rational_to_pair(&w, weight_num, weight_den)
            }
            Err(e) => fail(StrataStatus::InvalidArgument, e),
        }
    })
}

// -------------------------------------------------------------- intersect

/// Vanishing order of a polynomial at a point. Coefficients are ascending
/// `[re, im]` pairs converted exactly; returns `MathError` for the zero
/// polynomial.
///
/// # Safety
/// `coeffs` must hold `2 * len` doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn strata_vanishing_order(
    coeffs: *const f64,
    len: usize,
    z0_re: f64,
    z0_im: f64,
    out: *mut u64,
) -> StrataStatus {
    guarded(|| {
        if coeffs.is_null() || out.is_null() {
            return fail(StrataStatus::NullPointer, "null argument");
        }
        let buf = std::slice::from_raw_parts(coeffs, 2 * len);
        let mut cs = Vec::with_capacity(len);
        for i in 0..len {
            let re = num_rational::BigRational::from_float(buf[2 * i]);
            let im = num_rational::BigRational::from_float(buf[2 * i + 1]);
            let (Some(re), Some(im)) = (re, im) else {
                return fail(StrataStatus::InvalidArgument, "non-finite coefficient");
            };
            cs.push(CC::new(re, im));
        }
        let poly = CPoly::new(cs);
        let (Some(re), Some(im)) = (
            num_rational::BigRational::from_float(z0_re),
            num_rational::BigRational::from_float(z0_im),
        ) else {
            return fail(StrataStatus::InvalidArgument, "non-finite point");
        };
        match poly.vanishing_order(&Complex::new(re, im)) {
            Some(order) => {
                *out = order as u64;
                StrataStatus::Ok
            }
            None => fail(StrataStatus::MathError, "zero polynomial has no finite order"),
        }
    })
}

/// Winding number of a polynomial around a circle.
///
/// # Safety
/// `coeffs` must hold `2 * len` doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn strata_winding_number(
    coeffs: *const f64,
    len: usize,
    center_re: f64,
    center_im: f64,
    radius: f64,
    out: *mut i64,
) -> StrataStatus {
    guarded(|| {
        if coeffs.is_null() || out.is_null() {
            return fail(StrataStatus::NullPointer, "null argument");
        }
        let buf = std::slice::from_raw_parts(coeffs, 2 * len).to_vec();
        let f = move |z: Complex64| {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in (0..len).rev() {
                acc = acc * z + Complex64::new(buf[2 * i], buf[2 * i + 1]);
            }
            acc
        };
        match winding_number_with(&f, Complex64::new(center_re, center_im), radius, 1 << 12) {
            Ok(w) => {
                *out = w;
                StrataStatus::Ok
            }
            Err(e) => fail(StrataStatus::MathError, e),
        }
    })
}

// ----------------------------------------------------------------- verify

/// Run a named verification suite; the JSON report is written to
/// `report_out` (free with `strata_string_free`). Returns
/// `PropertyViolation` when the suite ran but found violations.
///
/// # Safety
/// `name` must be a valid NUL-terminated string; `report_out` valid.
#[no_mangle]
pub unsafe extern "C" fn strata_verify_suite(
    name: *const c_char,
    seed: u64,
    quick: bool,
    report_out: *mut *mut c_char,
) -> StrataStatus {
    guarded(|| {
        let suite = match cstr_arg(name) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let cfg = RunConfig {
            seed,
            tol: 1e-9,
            quick,
        };
        let Some(report) = run_suite(suite, &cfg) else {
            return fail(StrataStatus::InvalidArgument, format!("unknown suite {suite:?}"));
        };
        let passed = report.passed();
        let json = match serde_json::to_string_pretty(&report) {
            Ok(j) => j,
            Err(e) => return fail(StrataStatus::MathError, e),
        };
        let status = return_string(report_out, json);
        if status != StrataStatus::Ok {
            return status;
        }
        if passed {
            StrataStatus::Ok
        } else {
            fail(StrataStatus::PropertyViolation, "suite reported violations")
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    #[test]
    fn tree_round_trip_through_the_abi() {
        let json =
            CString::new(r#"{"k":3,"vertices":[0,1],"edges":[[0,1]],"labels":{"1":0,"2":0,"3":1}}"#)
                .unwrap();
        let mut tree: *mut StrataTree = std::ptr::null_mut();
        unsafe {
            assert_eq!(strata_tree_parse(json.as_ptr(), &mut tree), StrataStatus::Ok);
            let mut stable = true;
            assert_eq!(strata_tree_is_stable(tree, &mut stable), StrataStatus::Ok);
            assert!(!stable);
            let mut fixed: *mut StrataTree = std::ptr::null_mut();
            assert_eq!(strata_tree_stabilize(tree, &mut fixed), StrataStatus::Ok);
            let mut now_stable = false;
            assert_eq!(strata_tree_is_stable(fixed, &mut now_stable), StrataStatus::Ok);
            assert!(now_stable);
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(strata_tree_to_json(fixed, &mut out), StrataStatus::Ok);
            let s = CStr::from_ptr(out).to_str().unwrap().to_string();
            assert!(s.contains("\"k\":3"));
            strata_string_free(out);
            strata_tree_free(tree);
            strata_tree_free(fixed);
        }
    }

    #[test]
    fn parse_errors_are_reported() {
        let bad = CString::new("{not json").unwrap();
        let mut tree: *mut StrataTree = std::ptr::null_mut();
        unsafe {
            assert_eq!(
                strata_tree_parse(bad.as_ptr(), &mut tree),
                StrataStatus::ParseError
            );
            let msg = strata_last_error_message();
            assert!(!msg.is_null());
        }
    }

    #[test]
    fn strata_counts_through_buffer() {
        let mut counts = [0usize; 4];
        let mut written = 0usize;
        unsafe {
            assert_eq!(
                strata_dm_strata_counts(5, counts.as_mut_ptr(), 4, &mut written),
                StrataStatus::Ok
            );
        }
        assert_eq!(written, 3);
        assert_eq!(&counts[..3], &[1, 10, 15]);
        // too-small buffer reports the needed size
        let mut small = [0usize; 1];
        unsafe {
            assert_eq!(
                strata_dm_strata_counts(5, small.as_mut_ptr(), 1, &mut written),
                StrataStatus::BufferTooSmall
            );
        }
        assert_eq!(written, 3);
    }

    #[test]
    fn cross_ratio_with_infinity() {
        // w(0, 1, 2, R) = R/(2 - R) -> -1 as R -> inf
        let points = [
            0.0, 0.0, 1.0, 0.0, // 0
            1.0, 0.0, 1.0, 0.0, // 1
            2.0, 0.0, 1.0, 0.0, // 2
            1.0, 0.0, 0.0, 0.0, // inf
        ];
        let mut out = [0.0f64; 4];
        unsafe {
            assert_eq!(
                strata_cross_ratio(points.as_ptr(), out.as_mut_ptr()),
                StrataStatus::Ok
            );
        }
        let w = Complex64::new(out[0], out[1]) / Complex64::new(out[2], out[3]);
        assert!((w - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn donaldson_pair_examples() {
        let (mut num, mut den) = (0i64, 0i64);
        unsafe {
            assert_eq!(
                strata_d_star(1, 2, 3, 1, &mut num, &mut den),
                StrataStatus::Ok
            );
            assert_eq!((num, den), (9, 1));
            assert_eq!(
                strata_degree_threshold(3, 1, 2, 3, 1, &mut num, &mut den),
                StrataStatus::Ok
            );
            assert_eq!((num, den), (24, 1));
            let (mut neg, mut three) = (false, false);
            assert_eq!(
                strata_degree_verdict(3, 5, 24, 1, 1, 2, 3, 1, &mut neg, &mut three),
                StrataStatus::Ok
            );
            assert!(neg && three);
        }
    }

    #[test]
    fn vanishing_and_winding_agree() {
        // z^3
        let coeffs = [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0];
        let mut order = 0u64;
        let mut wind = 0i64;
        unsafe {
            assert_eq!(
                strata_vanishing_order(coeffs.as_ptr(), 4, 0.0, 0.0, &mut order),
                StrataStatus::Ok
            );
            assert_eq!(
                strata_winding_number(coeffs.as_ptr(), 4, 0.0, 0.0, 0.5, &mut wind),
                StrataStatus::Ok
            );
        }
        assert_eq!(order, 3);
        assert_eq!(wind, 3);
    }

    #[test]
    fn verify_suite_through_abi() {
        let name = CString::new("edge-solver").unwrap();
        let mut out: *mut c_char = std::ptr::null_mut();
        unsafe {
            let status = strata_verify_suite(name.as_ptr(), 11, true, &mut out);
            assert_eq!(status, StrataStatus::Ok);
            let report = CStr::from_ptr(out).to_str().unwrap();
            assert!(report.contains("\"violations\": 0"));
            strata_string_free(out);
        }
    }
}
