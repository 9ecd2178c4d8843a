//! C ABI over the pseudofield crate.
//!
//! Instances are opaque handles created by [`pf_instance_new`] and released
//! by [`pf_instance_free`]. Elements and tuples cross the boundary as flat
//! `double` buffers: an element is `dim` values, a tuple is `n * dim` values
//! row-major. Every fallible call returns a [`PfStatus`]; partial operations
//! report why they are undefined instead of producing values. Arithmetic is
//! double precision; exact-rational mode stays behind the Rust and CLI
//! surfaces.

use pseudofield::algebra::{Element, Pseudofield, Undefined};
use pseudofield::extract::{solve_transitive, ConstructedOracle};
use pseudofield::group::{gidentity, ginv, gmul, Tuple};
use pseudofield::instances::{make_instance, InstanceKind};
use pseudofield::verify::{run_all_checks_f64, SampleConfig};
use pseudofield::word::act;
use std::ffi::{c_char, CStr, CString};

/// Outcome of an FFI call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PfStatus {
    Ok = 0,
    /// The operation is undefined at the given arguments.
    OutOfDomain = 1,
    DivisionByZero = 2,
    SingularDenominator = 3,
    NotInvertible = 4,
    /// Null pointer, unknown instance name, or a buffer length mismatch.
    InvalidArgument = 5,
}

fn status_of(reason: Undefined) -> PfStatus {
    match reason {
        Undefined::OutOfDomain => PfStatus::OutOfDomain,
        Undefined::DivisionByZero => PfStatus::DivisionByZero,
        Undefined::SingularDenominator => PfStatus::SingularDenominator,
        Undefined::NotInvertible => PfStatus::NotInvertible,
    }
}

/// Opaque instance handle.
pub struct PfInstance {
    inner: Box<dyn Pseudofield<f64>>,
}

impl PfInstance {
    fn get(ptr: *const PfInstance) -> Option<&'static PfInstance> {
        // SAFETY: caller contract; validity is checked for null only.
        unsafe { ptr.as_ref() }
    }
}

unsafe fn slice_arg<'a>(ptr: *const f64, len: usize) -> Option<&'a [f64]> {
    if ptr.is_null() {
        None
    } else {
        Some(unsafe { std::slice::from_raw_parts(ptr, len) })
    }
}

unsafe fn out_arg<'a>(ptr: *mut f64, len: usize) -> Option<&'a mut [f64]> {
    if ptr.is_null() {
        None
    } else {
        Some(unsafe { std::slice::from_raw_parts_mut(ptr, len) })
    }
}

fn element_from(coords: &[f64]) -> Element<f64> {
    Element::new(coords.to_vec())
}

fn tuple_from(coords: &[f64], n: usize, dim: usize) -> Option<Tuple<f64>> {
    if coords.len() != n * dim {
        return None;
    }
    Some(Tuple::new(
        coords.chunks(dim).map(|c| Element::new(c.to_vec())).collect(),
    ))
}

fn write_element(out: &mut [f64], e: &Element<f64>) -> PfStatus {
    if out.len() != e.dim() {
        return PfStatus::InvalidArgument;
    }
    out.copy_from_slice(e.coords());
    PfStatus::Ok
}

fn write_tuple(out: &mut [f64], t: &Tuple<f64>) -> PfStatus {
    let dim = t.entries()[0].dim();
    if out.len() != t.len() * dim {
        return PfStatus::InvalidArgument;
    }
    for (chunk, e) in out.chunks_mut(dim).zip(t.entries()) {
        chunk.copy_from_slice(e.coords());
    }
    PfStatus::Ok
}

/// Create an instance. `kind` is one of `affine2`, `moebius3`,
/// `semidirect`, `mikhailichenko`, `adversarial2`; `n` is the degree for
/// the parameterized families and must be 0 otherwise. Returns null on an
/// unknown name or invalid degree.
///
/// # Safety
/// `kind` must point to a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn pf_instance_new(kind: *const c_char, n: usize) -> *mut PfInstance {
    if kind.is_null() {
        return std::ptr::null_mut();
    }
    let Ok(name) = unsafe { CStr::from_ptr(kind) }.to_str() else {
        return std::ptr::null_mut();
    };
    let Some(kind) = InstanceKind::parse(name) else {
        return std::ptr::null_mut();
    };
    let degree = if kind.parameterized() {
        if n < 2 {
            return std::ptr::null_mut();
        }
        Some(n)
    } else {
        if n != 0 {
            return std::ptr::null_mut();
        }
        None
    };
    match make_instance::<f64>(kind, degree) {
        Ok(inner) => Box::into_raw(Box::new(PfInstance { inner })),
        Err(_) => std::ptr::null_mut(),
    }
}

/// Release an instance created by [`pf_instance_new`]. Null is a no-op.
///
/// # Safety
/// `inst` must be null or a pointer returned by [`pf_instance_new`] that
/// has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn pf_instance_free(inst: *mut PfInstance) {
    if !inst.is_null() {
        drop(unsafe { Box::from_raw(inst) });
    }
}

/// Degree n of the instance; 0 for null.
///
/// # Safety
/// `inst` must be null or a live instance pointer.
#[no_mangle]
pub unsafe extern "C" fn pf_instance_degree(inst: *const PfInstance) -> usize {
    PfInstance::get(inst).map_or(0, |i| i.inner.degree())
}

/// Carrier dimension of the instance; 0 for null.
///
/// # Safety
/// `inst` must be null or a live instance pointer.
#[no_mangle]
pub unsafe extern "C" fn pf_instance_dim(inst: *const PfInstance) -> usize {
    PfInstance::get(inst).map_or(0, |i| i.inner.dim())
}

macro_rules! try_arg {
    ($opt:expr) => {
        match $opt {
            Some(v) => v,
            None => return PfStatus::InvalidArgument,
        }
    };
}

/// Carrier multiplication `a * b`. All buffers hold `dim` values.
///
/// # Safety
/// `inst` must be a live instance pointer; the data pointers must be valid
/// for the stated lengths, and `out` must not alias the inputs.
#[no_mangle]
pub unsafe extern "C" fn pf_mul(
    inst: *const PfInstance,
    a: *const f64,
    a_len: usize,
    b: *const f64,
    b_len: usize,
    out: *mut f64,
    out_len: usize,
) -> PfStatus {
    let inst = try_arg!(PfInstance::get(inst));
    let dim = inst.inner.dim();
    if a_len != dim || b_len != dim {
        return PfStatus::InvalidArgument;
    }
    let a = element_from(try_arg!(unsafe { slice_arg(a, a_len) }));
    let b = element_from(try_arg!(unsafe { slice_arg(b, b_len) }));
    let out = try_arg!(unsafe { out_arg(out, out_len) });
    match inst.inner.mul(&a, &b) {
        Ok(v) => write_element(out, &v),
        Err(reason) => status_of(reason),
    }
}

/// Carrier inverse.
///
/// # Safety
/// Same contract as [`pf_mul`].
#[no_mangle]
pub unsafe extern "C" fn pf_inv(
    inst: *const PfInstance,
    a: *const f64,
    a_len: usize,
    out: *mut f64,
    out_len: usize,
) -> PfStatus {
    let inst = try_arg!(PfInstance::get(inst));
    if a_len != inst.inner.dim() {
        return PfStatus::InvalidArgument;
    }
    let a = element_from(try_arg!(unsafe { slice_arg(a, a_len) }));
    let out = try_arg!(unsafe { out_arg(out, out_len) });
    match inst.inner.inv(&a) {
        Ok(v) => write_element(out, &v),
        Err(reason) => status_of(reason),
    }
}

/// The involution `phi_i`, `2 <= i <= n`.
///
/// # Safety
/// Same contract as [`pf_mul`].
#[no_mangle]
pub unsafe extern "C" fn pf_phi(
    inst: *const PfInstance,
    i: usize,
    a: *const f64,
    a_len: usize,
    out: *mut f64,
    out_len: usize,
) -> PfStatus {
    let inst = try_arg!(PfInstance::get(inst));
    if a_len != inst.inner.dim() || !(2..=inst.inner.degree()).contains(&i) {
        return PfStatus::InvalidArgument;
    }
    let a = element_from(try_arg!(unsafe { slice_arg(a, a_len) }));
    let out = try_arg!(unsafe { out_arg(out, out_len) });
    match inst.inner.phi(i, &a) {
        Ok(v) => write_element(out, &v),
        Err(reason) => status_of(reason),
    }
}

/// Distinguished unit `e_i`, `1 <= i <= n`, written to `out` (`dim` values).
///
/// # Safety
/// Same contract as [`pf_mul`].
#[no_mangle]
pub unsafe extern "C" fn pf_unit(
    inst: *const PfInstance,
    i: usize,
    out: *mut f64,
    out_len: usize,
) -> PfStatus {
    let inst = try_arg!(PfInstance::get(inst));
    if !(1..=inst.inner.degree()).contains(&i) {
        return PfStatus::InvalidArgument;
    }
    let out = try_arg!(unsafe { out_arg(out, out_len) });
    write_element(out, &inst.inner.unit(i))
}

/// The action `x . [tuple]`. `tuple` holds `n * dim` values row-major.
///
/// # Safety
/// Same contract as [`pf_mul`].
#[no_mangle]
pub unsafe extern "C" fn pf_act(
    inst: *const PfInstance,
    x: *const f64,
    x_len: usize,
    tuple: *const f64,
    tuple_len: usize,
    out: *mut f64,
    out_len: usize,
) -> PfStatus {
    let inst = try_arg!(PfInstance::get(inst));
    let (n, dim) = (inst.inner.degree(), inst.inner.dim());
    if x_len != dim {
        return PfStatus::InvalidArgument;
    }
    let x = element_from(try_arg!(unsafe { slice_arg(x, x_len) }));
    let ys = try_arg!(tuple_from(
        try_arg!(unsafe { slice_arg(tuple, tuple_len) }),
        n,
        dim
    ));
    let out = try_arg!(unsafe { out_arg(out, out_len) });
    match act(inst.inner.as_ref(), &x, ys.entries()) {
        Ok(v) => write_element(out, &v),
        Err(reason) => status_of(reason),
    }
}

/// Tuple-group product; all tuple buffers hold `n * dim` values row-major.
///
/// # Safety
/// Same contract as [`pf_mul`].
#[no_mangle]
pub unsafe extern "C" fn pf_gmul(
    inst: *const PfInstance,
    x: *const f64,
    x_len: usize,
    y: *const f64,
    y_len: usize,
    out: *mut f64,
    out_len: usize,
) -> PfStatus {
    let inst = try_arg!(PfInstance::get(inst));
    let (n, dim) = (inst.inner.degree(), inst.inner.dim());
    let x = try_arg!(tuple_from(try_arg!(unsafe { slice_arg(x, x_len) }), n, dim));
    let y = try_arg!(tuple_from(try_arg!(unsafe { slice_arg(y, y_len) }), n, dim));
    let out = try_arg!(unsafe { out_arg(out, out_len) });
    match gmul(inst.inner.as_ref(), &x, &y) {
        Ok(v) => write_tuple(out, &v),
        Err(reason) => status_of(reason),
    }
}

/// Tuple-group left inverse.
///
/// # Safety
/// Same contract as [`pf_mul`].
#[no_mangle]
pub unsafe extern "C" fn pf_ginv(
    inst: *const PfInstance,
    x: *const f64,
    x_len: usize,
    out: *mut f64,
    out_len: usize,
) -> PfStatus {
    let inst = try_arg!(PfInstance::get(inst));
    let (n, dim) = (inst.inner.degree(), inst.inner.dim());
    let x = try_arg!(tuple_from(try_arg!(unsafe { slice_arg(x, x_len) }), n, dim));
    let out = try_arg!(unsafe { out_arg(out, out_len) });
    match ginv(inst.inner.as_ref(), &x) {
        Ok(v) => write_tuple(out, &v),
        Err(reason) => status_of(reason),
    }
}

/// The neutral tuple `(e, e_2, ..., e_n)`.
///
/// # Safety
/// Same contract as [`pf_mul`].
#[no_mangle]
pub unsafe extern "C" fn pf_gidentity(
    inst: *const PfInstance,
    out: *mut f64,
    out_len: usize,
) -> PfStatus {
    let inst = try_arg!(PfInstance::get(inst));
    let out = try_arg!(unsafe { out_arg(out, out_len) });
    write_tuple(out, &gidentity(inst.inner.as_ref()))
}

/// Solve `from . Z = to` for the unique tuple `Z`.
///
/// # Safety
/// Same contract as [`pf_mul`].
#[no_mangle]
pub unsafe extern "C" fn pf_solve(
    inst: *const PfInstance,
    from: *const f64,
    from_len: usize,
    to: *const f64,
    to_len: usize,
    out: *mut f64,
    out_len: usize,
) -> PfStatus {
    let inst = try_arg!(PfInstance::get(inst));
    let (n, dim) = (inst.inner.degree(), inst.inner.dim());
    let from = try_arg!(tuple_from(
        try_arg!(unsafe { slice_arg(from, from_len) }),
        n,
        dim
    ));
    let to = try_arg!(tuple_from(try_arg!(unsafe { slice_arg(to, to_len) }), n, dim));
    let out = try_arg!(unsafe { out_arg(out, out_len) });
    let oracle = ConstructedOracle::new(inst.inner.as_ref());
    match solve_transitive(&oracle, &from, &to) {
        Ok(v) => write_tuple(out, &v),
        Err(reason) => status_of(reason),
    }
}

/// Run every verification suite and hand back the JSON report as a
/// NUL-terminated string (free with [`pf_string_free`]). `out_pass` gets 1
/// when all checks passed, 0 otherwise.
///
/// # Safety
/// `inst` must be a live instance pointer; `out_json` and `out_pass` must
/// be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pf_check_json(
    inst: *const PfInstance,
    samples: u64,
    seed: u64,
    tolerance: f64,
    out_json: *mut *mut c_char,
    out_pass: *mut i32,
) -> PfStatus {
    let inst = try_arg!(PfInstance::get(inst));
    if out_json.is_null() || out_pass.is_null() || samples == 0 {
        return PfStatus::InvalidArgument;
    }
    let cfg = SampleConfig::new(seed, samples).with_tolerance(tolerance);
    let report = run_all_checks_f64(inst.inner.as_ref(), &cfg);
    let Ok(text) = CString::new(report.to_json()) else {
        return PfStatus::InvalidArgument;
    };
    unsafe {
        *out_json = text.into_raw();
        *out_pass = report.pass as i32;
    }
    PfStatus::Ok
}

/// Free a string returned by [`pf_check_json`]. Null is a no-op.
///
/// # Safety
/// `s` must be null or a pointer produced by this library that has not
/// been freed yet.
#[no_mangle]
pub unsafe extern "C" fn pf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
