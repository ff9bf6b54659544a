//! C interface to the fpdiff quadrature rules, meshes and difference
//! operators.
//!
//! Objects are opaque handles created by `fp_*` constructors and released
//! with the matching `*_free` function. Every call returns an [`FpStatus`];
//! results come back through out-parameters, and array getters copy into a
//! caller buffer whose length must match exactly. After a failure,
//! [`fp_last_error_message`] describes it. No call unwinds into C.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fpdiff::{
    assemble_type1, assemble_type2, haldy_ligou_mesh, lee_mesh, morel_alpha, rk4_alpha, rule,
    shifted_uniform_mesh, uniform_mesh, AlphaCoefficients, Error, FokkerPlanck, Mesh, Mode,
    QuadratureRule, TridiagonalOperator,
};

/// Result of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ConstructionFailed = 3,
    LengthMismatch = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FpMode {
    FullRange = 0,
    HalfRange = 1,
}

/// Gauss-Legendre rule.
pub struct FpRule(QuadratureRule);

/// Nodes, points and optional weights.
pub struct FpMesh(Mesh);

/// Surrogate diffusivity values at the points.
pub struct FpAlpha(AlphaCoefficients);

/// Tridiagonal discrete operator.
pub struct FpOperator(TridiagonalOperator);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(FpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InvalidArgument(_) | Error::MissingWeights | Error::NonzeroLeftAlpha(_) => {
                FpStatus::InvalidArgument
            }
            Error::LengthMismatch { .. } => FpStatus::LengthMismatch,
            _ => FpStatus::ConstructionFailed,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(FpStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, records any failure message and converts panics.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> FpStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            FpStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(&format!("internal panic: {msg}"));
            FpStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output handle"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn copy_out(src: &[f64], buf: *mut f64, len: usize) -> Result<(), Failure> {
    if buf.is_null() {
        return Err(null("buffer"));
    }
    if len != src.len() {
        return Err(Failure(
            FpStatus::LengthMismatch,
            format!("buffer holds {len} values, {} needed", src.len()),
        ));
    }
    ptr::copy_nonoverlapping(src.as_ptr(), buf, len);
    Ok(())
}

unsafe fn write_len(out: *mut usize, len: usize) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("length output"));
    }
    *out = len;
    Ok(())
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Describes the last failure on this thread; empty after a success.
/// Copies at most `len - 1` bytes plus a terminating NUL into `buf` and
/// returns the full message length (excluding the NUL), so a caller can
/// size a buffer by first passing `len = 0`.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn fp_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let bytes = e.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn fp_status_name(status: FpStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        FpStatus::Ok => b"ok\0",
        FpStatus::NullPointer => b"null pointer\0",
        FpStatus::InvalidArgument => b"invalid argument\0",
        FpStatus::ConstructionFailed => b"construction failed\0",
        FpStatus::LengthMismatch => b"length mismatch\0",
        FpStatus::Panic => b"internal panic\0",
    };
    s.as_ptr().cast()
}

/// Gauss-Legendre rule with `n` nodes (full range) or `n` nodes per half
/// (half range, 2n in total).
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn fp_rule_new(n: usize, mode: FpMode, out: *mut *mut FpRule) -> FpStatus {
    guard(|| {
        let mode = match mode {
            FpMode::FullRange => Mode::FullRange,
            FpMode::HalfRange => Mode::HalfRange,
        };
        store(out, FpRule(rule(mode, n)?))
    })
}

/// # Safety
/// `r` must be a live rule handle; `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn fp_rule_len(r: *const FpRule, out: *mut usize) -> FpStatus {
    guard(|| write_len(out, deref(r, "rule")?.0.len()))
}

/// # Safety
/// `r` must be a live rule handle; `buf` valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn fp_rule_nodes(r: *const FpRule, buf: *mut f64, len: usize) -> FpStatus {
    guard(|| copy_out(deref(r, "rule")?.0.nodes(), buf, len))
}

/// # Safety
/// `r` must be a live rule handle; `buf` valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn fp_rule_weights(r: *const FpRule, buf: *mut f64, len: usize) -> FpStatus {
    guard(|| copy_out(deref(r, "rule")?.0.weights(), buf, len))
}

/// # Safety
/// `r` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fp_rule_free(r: *mut FpRule) {
    free(r)
}

/// Mesh with points at the midpoints between nodes.
///
/// # Safety
/// `r` must be a live rule handle; `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn fp_mesh_lee(r: *const FpRule, out: *mut *mut FpMesh) -> FpStatus {
    guard(|| store(out, FpMesh(lee_mesh(&deref(r, "rule")?.0)?)))
}

/// Mesh whose cells have the quadrature weights as widths.
///
/// # Safety
/// `r` must be a live rule handle; `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn fp_mesh_haldy_ligou(r: *const FpRule, out: *mut *mut FpMesh) -> FpStatus {
    guard(|| store(out, FpMesh(haldy_ligou_mesh(&deref(r, "rule")?.0)?)))
}

/// # Safety
/// `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn fp_mesh_uniform(n: usize, out: *mut *mut FpMesh) -> FpStatus {
    guard(|| store(out, FpMesh(uniform_mesh(n)?)))
}

/// # Safety
/// `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn fp_mesh_shifted_uniform(n: usize, out: *mut *mut FpMesh) -> FpStatus {
    guard(|| store(out, FpMesh(shifted_uniform_mesh(n)?)))
}

/// Number of nodes N; points have N + 1 entries.
///
/// # Safety
/// `m` must be a live mesh handle; `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn fp_mesh_len(m: *const FpMesh, out: *mut usize) -> FpStatus {
    guard(|| write_len(out, deref(m, "mesh")?.0.len()))
}

/// # Safety
/// `m` must be a live mesh handle; `buf` valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn fp_mesh_nodes(m: *const FpMesh, buf: *mut f64, len: usize) -> FpStatus {
    guard(|| copy_out(deref(m, "mesh")?.0.nodes(), buf, len))
}

/// # Safety
/// `m` must be a live mesh handle; `buf` valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn fp_mesh_points(m: *const FpMesh, buf: *mut f64, len: usize) -> FpStatus {
    guard(|| copy_out(deref(m, "mesh")?.0.points(), buf, len))
}

/// Fails with `InvalidArgument` for the shifted uniform mesh, which has no
/// weights.
///
/// # Safety
/// `m` must be a live mesh handle; `buf` valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn fp_mesh_weights(m: *const FpMesh, buf: *mut f64, len: usize) -> FpStatus {
    guard(|| {
        let w = deref(m, "mesh")?.0.weights().ok_or(Error::MissingWeights)?;
        copy_out(w, buf, len)
    })
}

/// # Safety
/// `m` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fp_mesh_free(m: *mut FpMesh) {
    free(m)
}

/// Surrogate values from the degree-1-exact recursion, for D = 1 - mu^2.
///
/// # Safety
/// `m` must be a live mesh handle; `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn fp_alpha_morel(m: *const FpMesh, out: *mut *mut FpAlpha) -> FpStatus {
    guard(|| {
        store(
            out,
            FpAlpha(morel_alpha(&deref(m, "mesh")?.0, &FokkerPlanck)),
        )
    })
}

/// Surrogate values from the Runge-Kutta recursion; needs a mesh whose
/// cell widths are its weights.
///
/// # Safety
/// `m` must be a live mesh handle; `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn fp_alpha_rk4(m: *const FpMesh, out: *mut *mut FpAlpha) -> FpStatus {
    guard(|| store(out, FpAlpha(rk4_alpha(&deref(m, "mesh")?.0)?)))
}

/// Copies the N + 1 values.
///
/// # Safety
/// `a` must be a live handle; `buf` valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn fp_alpha_values(a: *const FpAlpha, buf: *mut f64, len: usize) -> FpStatus {
    guard(|| copy_out(deref(a, "alpha")?.0.values(), buf, len))
}

/// # Safety
/// `a` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fp_alpha_free(a: *mut FpAlpha) {
    free(a)
}

/// Type I operator with D = 1 - mu^2 evaluated at the points.
///
/// # Safety
/// `m` must be a live mesh handle; `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn fp_operator_type1(
    m: *const FpMesh,
    out: *mut *mut FpOperator,
) -> FpStatus {
    guard(|| {
        let op = assemble_type1(&deref(m, "mesh")?.0, &FokkerPlanck)?;
        store(out, FpOperator(op))
    })
}

/// Type II operator with surrogate values `a`.
///
/// # Safety
/// `m` and `a` must be live handles; `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn fp_operator_type2(
    m: *const FpMesh,
    a: *const FpAlpha,
    out: *mut *mut FpOperator,
) -> FpStatus {
    guard(|| {
        let op = assemble_type2(&deref(m, "mesh")?.0, &deref(a, "alpha")?.0)?;
        store(out, FpOperator(op))
    })
}

/// # Safety
/// `op` must be a live handle; `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn fp_operator_len(op: *const FpOperator, out: *mut usize) -> FpStatus {
    guard(|| write_len(out, deref(op, "operator")?.0.len()))
}

/// Copies the diagonals: `sub` and `sup` hold N - 1 values, `diag` N, and
/// `len` is N.
///
/// # Safety
/// `op` must be a live handle; the buffers valid for the sizes above.
#[no_mangle]
pub unsafe extern "C" fn fp_operator_diagonals(
    op: *const FpOperator,
    sub: *mut f64,
    diag: *mut f64,
    sup: *mut f64,
    len: usize,
) -> FpStatus {
    guard(|| {
        let op = &deref(op, "operator")?.0;
        copy_out(op.diag(), diag, len)?;
        copy_out(op.sub(), sub, len - 1)?;
        copy_out(op.sup(), sup, len - 1)
    })
}

/// `y = op f`, both of length `len` = N.
///
/// # Safety
/// `op` must be a live handle; `f` and `y` valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn fp_operator_apply(
    op: *const FpOperator,
    f: *const f64,
    y: *mut f64,
    len: usize,
) -> FpStatus {
    guard(|| {
        let op = &deref(op, "operator")?.0;
        if f.is_null() {
            return Err(null("input"));
        }
        if len != op.len() {
            return Err(Failure(
                FpStatus::LengthMismatch,
                format!("input holds {len} values, {} needed", op.len()),
            ));
        }
        let input = std::slice::from_raw_parts(f, len);
        copy_out(&op.apply(input)?, y, len)
    })
}

/// # Safety
/// `op` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fp_operator_free(op: *mut FpOperator) {
    free(op)
}
