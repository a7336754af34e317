//! C interface to `conesum`.
//!
//! Cones and fans are opaque handles created by `*_new` and released by the
//! matching `*_free`. Every fallible call returns a [`ConesumStatus`]; on
//! failure [`conesum_last_error`] describes what went wrong on the calling
//! thread. Strings handed out by the library are released with
//! [`conesum_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use conesum::cone::{dual_cone, Cone, Fan};
use conesum::format::{ConeDocument, ConeSumRecord, LocalClassRecord};
use conesum::genfun::{closed_sum, interior_sum, CertifiedConeSum};
use conesum::hirzebruch::{chi_y, local_class};
use conesum::lattice::LatticeVector;
use conesum::oracle::{check_cone, Report};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConesumStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Computation = 3,
    VerifyFailed = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConesumFormat {
    Text = 0,
    Json = 1,
}

/// Opaque cone handle.
pub struct ConesumCone {
    cone: Cone,
}

/// Opaque fan handle.
pub struct ConesumFan {
    fan: Fan,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(msg).expect("interior NULs removed")));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(ConesumStatus, String);

impl From<conesum::Error> for Failure {
    fn from(e: conesum::Error) -> Self {
        Failure(ConesumStatus::Computation, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ConesumStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ConesumStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            ConesumStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(ConesumStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(ConesumStatus::InvalidInput, msg.into())
}

/// # Safety
/// `p` is null or points to `len` readable values.
unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

/// # Safety
/// `rays` is null or holds `n_rays * rank` values.
unsafe fn read_rays(rank: usize, rays: *const i64, n_rays: usize) -> Result<Vec<LatticeVector>, Failure> {
    let total = rank.checked_mul(n_rays).ok_or_else(|| invalid("ray array size overflows"))?;
    let flat = slice(rays, total, "rays")?;
    Ok(if rank == 0 { Vec::new() } else { flat.chunks(rank).map(LatticeVector::from_i64).collect() })
}

fn hand_out_string(s: String, out: *mut *mut c_char) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|_| invalid("output contains a NUL byte"))?;
    // SAFETY: `out` is non-null and the caller promises it is writable.
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// # Safety
/// `p` is null or a live handle from this library.
unsafe fn cone_ref<'a>(p: *const ConesumCone) -> Result<&'a Cone, Failure> {
    p.as_ref().map(|c| &c.cone).ok_or_else(|| null("cone"))
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn conesum_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Cone generated by `n_rays` row vectors of length `rank`, stored row-major.
///
/// # Safety
/// `rays` holds `rank * n_rays` values and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn conesum_cone_new(
    rank: usize,
    rays: *const i64,
    n_rays: usize,
    out: *mut *mut ConesumCone,
) -> ConesumStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let cone = Cone::new(rank, read_rays(rank, rays, n_rays)?)?;
        *out = Box::into_raw(Box::new(ConesumCone { cone }));
        Ok(())
    })
}

/// Cone from a JSON document `{"rank": n, "rays": [[...], ...]}`.
///
/// # Safety
/// `json` is a NUL-terminated string and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn conesum_cone_from_json(json: *const c_char, out: *mut *mut ConesumCone) -> ConesumStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(json).to_str().map_err(|_| invalid("json is not UTF-8"))?;
        let doc = conesum::cli::parse_document(text).map_err(invalid)?;
        let cone = doc.cone()?;
        *out = Box::into_raw(Box::new(ConesumCone { cone }));
        Ok(())
    })
}

/// # Safety
/// `cone` is null or a handle that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn conesum_cone_free(cone: *mut ConesumCone) {
    if !cone.is_null() {
        drop(Box::from_raw(cone));
    }
}

/// Rank of the ambient lattice, or 0 for a null handle.
///
/// # Safety
/// `cone` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn conesum_cone_rank(cone: *const ConesumCone) -> usize {
    cone.as_ref().map_or(0, |c| c.cone.rank())
}

/// # Safety
/// `cone` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn conesum_cone_dim(cone: *const ConesumCone) -> usize {
    cone.as_ref().map_or(0, |c| c.cone.dim())
}

/// # Safety
/// `cone` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn conesum_cone_ray_count(cone: *const ConesumCone) -> usize {
    cone.as_ref().map_or(0, |c| c.cone.rays().len())
}

/// Writes the primitive rays row-major into `buf` (`capacity` values).
/// Returns `BufferTooSmall` if it does not fit; `rank * ray_count` values
/// are needed.
///
/// # Safety
/// `cone` is a live handle and `buf` holds `capacity` writable values.
#[no_mangle]
pub unsafe extern "C" fn conesum_cone_rays(cone: *const ConesumCone, buf: *mut i64, capacity: usize) -> ConesumStatus {
    guard(|| {
        let c = cone_ref(cone)?;
        let flat: Vec<i64> = c
            .rays()
            .iter()
            .flat_map(|r| r.coords().iter().map(|x| x.to_i64()))
            .collect::<Option<_>>()
            .ok_or_else(|| invalid("ray entry does not fit in 64 bits"))?;
        if flat.len() > capacity {
            return Err(Failure(ConesumStatus::BufferTooSmall, format!("{} values needed", flat.len())));
        }
        if !flat.is_empty() {
            if buf.is_null() {
                return Err(null("buf"));
            }
            ptr::copy_nonoverlapping(flat.as_ptr(), buf, flat.len());
        }
        Ok(())
    })
}

/// # Safety
/// `cone` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn conesum_cone_dual(cone: *const ConesumCone, out: *mut *mut ConesumCone) -> ConesumStatus {
    guard(|| {
        let c = cone_ref(cone)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let d = dual_cone(c)?;
        *out = Box::into_raw(Box::new(ConesumCone { cone: d }));
        Ok(())
    })
}

fn render_sum(s: &CertifiedConeSum, format: ConesumFormat) -> String {
    match format {
        ConesumFormat::Text => s.to_string(),
        ConesumFormat::Json => serde_json::to_string(&ConeSumRecord::of(s)).expect("records serialize"),
    }
}

/// Closed lattice-point sum with its certificate, as text or JSON.
///
/// # Safety
/// `cone` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn conesum_closed_sum(
    cone: *const ConesumCone,
    format: ConesumFormat,
    out: *mut *mut c_char,
) -> ConesumStatus {
    guard(|| {
        let c = cone_ref(cone)?;
        hand_out_string(render_sum(&closed_sum(c), format), out)
    })
}

/// Interior lattice-point sum with its certificate, as text or JSON.
///
/// # Safety
/// `cone` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn conesum_interior_sum(
    cone: *const ConesumCone,
    format: ConesumFormat,
    out: *mut *mut c_char,
) -> ConesumStatus {
    guard(|| {
        let c = cone_ref(cone)?;
        hand_out_string(render_sum(&interior_sum(c), format), out)
    })
}

/// Local Hirzebruch class of a full-dimensional cone. Text mode gives the
/// collapsed form.
///
/// # Safety
/// `cone` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn conesum_local_class(
    cone: *const ConesumCone,
    format: ConesumFormat,
    out: *mut *mut c_char,
) -> ConesumStatus {
    guard(|| {
        let c = cone_ref(cone)?;
        let h = local_class(c)?;
        let s = match format {
            ConesumFormat::Text => h.collapsed()?.to_string(),
            ConesumFormat::Json => serde_json::to_string(&LocalClassRecord::of(&h)?).expect("records serialize"),
        };
        hand_out_string(s, out)
    })
}

/// Runs the oracle checks on one cone up to grading degree `bound`. Returns
/// `VerifyFailed` when a check fails; the report is written either way if
/// `report_out` is non-null.
///
/// # Safety
/// `cone` is a live handle; `report_out` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn conesum_verify(
    cone: *const ConesumCone,
    bound: u64,
    report_out: *mut *mut c_char,
) -> ConesumStatus {
    guard(|| {
        let c = cone_ref(cone)?;
        let mut report = Report::default();
        check_cone(c, &BigInt::from(bound), &mut report);
        if !report_out.is_null() {
            hand_out_string(report.to_string(), report_out)?;
        }
        if report.passed() {
            Ok(())
        } else {
            let first = report.failures().next().map(ToString::to_string).unwrap_or_default();
            Err(Failure(ConesumStatus::VerifyFailed, first))
        }
    })
}

/// Fan on `n_rays` rays (row-major, like [`conesum_cone_new`]) generated by
/// `n_cones` cones. Cone `i` lists the ray indices
/// `cone_indices[cone_offsets[i] .. cone_offsets[i + 1]]`, so `cone_offsets`
/// has `n_cones + 1` entries. Faces are added automatically.
///
/// # Safety
/// The arrays have the stated lengths and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn conesum_fan_new(
    rank: usize,
    rays: *const i64,
    n_rays: usize,
    cone_offsets: *const usize,
    cone_indices: *const usize,
    n_cones: usize,
    out: *mut *mut ConesumFan,
) -> ConesumStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let rays = read_rays(rank, rays, n_rays)?;
        let offsets = slice(cone_offsets, n_cones + 1, "cone_offsets")?;
        let total = offsets[n_cones];
        if offsets.windows(2).any(|w| w[0] > w[1]) || offsets[0] != 0 {
            return Err(invalid("cone_offsets must start at 0 and be nondecreasing"));
        }
        let indices = slice(cone_indices, total, "cone_indices")?;
        let cones = offsets.windows(2).map(|w| indices[w[0]..w[1]].to_vec()).collect();
        let fan = Fan::generated_by(rank, rays, cones)?;
        *out = Box::into_raw(Box::new(ConesumFan { fan }));
        Ok(())
    })
}

/// # Safety
/// `fan` is null or a handle that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn conesum_fan_free(fan: *mut ConesumFan) {
    if !fan.is_null() {
        drop(Box::from_raw(fan));
    }
}

/// Coefficients of the χ_y polynomial, lowest degree first. `*len` receives
/// the number of coefficients even when `capacity` is too small.
///
/// # Safety
/// `fan` is a live handle, `coefficients` holds `capacity` writable values
/// and `len` is writable.
#[no_mangle]
pub unsafe extern "C" fn conesum_chi_y(
    fan: *const ConesumFan,
    coefficients: *mut i64,
    capacity: usize,
    len: *mut usize,
) -> ConesumStatus {
    guard(|| {
        let f = fan.as_ref().map(|f| &f.fan).ok_or_else(|| null("fan"))?;
        if len.is_null() {
            return Err(null("len"));
        }
        let p = chi_y(f)?;
        let values: Vec<i64> = p
            .coefficients
            .iter()
            .map(ToPrimitive::to_i64)
            .collect::<Option<_>>()
            .ok_or_else(|| invalid("coefficient does not fit in 64 bits"))?;
        *len = values.len();
        if values.len() > capacity {
            return Err(Failure(ConesumStatus::BufferTooSmall, format!("{} coefficients needed", values.len())));
        }
        if !values.is_empty() {
            if coefficients.is_null() {
                return Err(null("coefficients"));
            }
            ptr::copy_nonoverlapping(values.as_ptr(), coefficients, values.len());
        }
        Ok(())
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` is null or a string from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn conesum_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// JSON document for a cone handle.
///
/// # Safety
/// `cone` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn conesum_cone_to_json(cone: *const ConesumCone, out: *mut *mut c_char) -> ConesumStatus {
    guard(|| {
        let c = cone_ref(cone)?;
        hand_out_string(serde_json::to_string(&ConeDocument::of_cone(c)).expect("records serialize"), out)
    })
}
