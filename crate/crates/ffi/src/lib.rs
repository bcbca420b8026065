//! C ABI over `ballm`.
//!
//! Every function returns a [`BallmStatus`]; results go through out
//! pointers. On failure the message is kept per thread and can be read with
//! [`ballm_last_error`]. Ball sets are opaque handles owned by the caller and
//! released with [`ballm_ballset_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ballm::exact::{self, AngularRadius, CylinderLength};
use ballm::hyperlens::{ndim_lens_volume, Dimension};
use ballm::numerics::{mc_volume, McConfig};
use ballm::skeleton::ballset_measures;
use ballm::{BallSet, Direction, Error, Measures, Sphere};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallmStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Invalid = 3,
    Unsupported = 4,
    Empty = 5,
    NoConvergence = 6,
    UnknownSolid = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BallmMeasures {
    pub volume: f64,
    pub surface_area: f64,
    pub mean_width: f64,
}

impl From<Measures> for BallmMeasures {
    fn from(m: Measures) -> Self {
        BallmMeasures {
            volume: m.volume,
            surface_area: m.surface_area,
            mean_width: m.mean_width,
        }
    }
}

/// Opaque intersection of closed balls.
pub struct BallmBallSet {
    inner: BallSet,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> BallmStatus {
    match e {
        Error::Domain { .. } => BallmStatus::Domain,
        Error::Invalid(_) => BallmStatus::Invalid,
        Error::Unsupported(_) => BallmStatus::Unsupported,
        Error::Empty => BallmStatus::Empty,
        Error::NoConvergence(_) => BallmStatus::NoConvergence,
        Error::UnknownSolid(_) => BallmStatus::UnknownSolid,
    }
}

enum Fail {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> BallmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            BallmStatus::Ok
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            BallmStatus::NullPointer
        }
        Ok(Err(Fail::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            BallmStatus::Panic
        }
    }
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn set<'a>(p: *const BallmBallSet) -> Result<&'a BallSet, Fail> {
    p.as_ref().map(|s| &s.inner).ok_or(Fail::Null("set"))
}

unsafe fn vec3(p: *const f64, what: &'static str) -> Result<[f64; 3], Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok([*p, *p.add(1), *p.add(2)])
}

fn boxed(set: BallSet) -> *mut BallmBallSet {
    Box::into_raw(Box::new(BallmBallSet { inner: set }))
}

/// Message of the last failed call on this thread, or an empty string. The
/// pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ballm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a ball set from `n` centers (`3n` doubles, xyz interleaved) and
/// `n` radii.
///
/// # Safety
/// `centers` must point to `3n` doubles, `radii` to `n` doubles and `out`
/// to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn ballm_ballset_new(
    centers: *const f64,
    radii: *const f64,
    n: usize,
    out_set: *mut *mut BallmBallSet,
) -> BallmStatus {
    guard(|| {
        let o = out(out_set, "out_set")?;
        *o = ptr::null_mut();
        if n > 0 && (centers.is_null() || radii.is_null()) {
            return Err(Fail::Null("centers or radii"));
        }
        let spheres = (0..n)
            .map(|i| Sphere::new(vec3(centers.add(3 * i), "centers")?, *radii.add(i)).map_err(Fail::from))
            .collect::<Result<Vec<_>, _>>()?;
        *o = boxed(BallSet::new(spheres)?);
        Ok(())
    })
}

/// Builds one of the named unit-radius sets: `dihedron`, `trihedron`,
/// `tetrahedron`, `hexahedron`, `dodecahedron`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out_set` writable.
#[no_mangle]
pub unsafe extern "C" fn ballm_ballset_canonical(
    name: *const c_char,
    out_set: *mut *mut BallmBallSet,
) -> BallmStatus {
    guard(|| {
        let o = out(out_set, "out_set")?;
        *o = ptr::null_mut();
        if name.is_null() {
            return Err(Fail::Null("name"));
        }
        let name = CStr::from_ptr(name)
            .to_str()
            .map_err(|_| Error::Invalid("name is not UTF-8".into()))?;
        *o = boxed(ballm::geometry::canonical_ballsets(name)?);
        Ok(())
    })
}

/// Releases a set. Null is accepted.
///
/// # Safety
/// `set` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ballm_ballset_free(set: *mut BallmBallSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// # Safety
/// `set` must be a live handle and `out_len` writable.
#[no_mangle]
pub unsafe extern "C" fn ballm_ballset_len(set: *const BallmBallSet, out_len: *mut usize) -> BallmStatus {
    guard(|| {
        *out(out_len, "out_len")? = self::set(set)?.len();
        Ok(())
    })
}

/// # Safety
/// `point` must point to three doubles.
#[no_mangle]
pub unsafe extern "C" fn ballm_ballset_contains(
    set: *const BallmBallSet,
    point: *const f64,
    out_inside: *mut bool,
) -> BallmStatus {
    guard(|| {
        let p = vec3(point, "point")?;
        *out(out_inside, "out_inside")? = self::set(set)?.contains(&p.into());
        Ok(())
    })
}

/// Exact measures of an equal-radius set. An empty intersection gives zeros
/// and sets `*out_empty`.
///
/// # Safety
/// All pointers must be valid; `out_empty` may be null.
#[no_mangle]
pub unsafe extern "C" fn ballm_ballset_measures(
    set: *const BallmBallSet,
    out_measures: *mut BallmMeasures,
    out_empty: *mut bool,
) -> BallmStatus {
    guard(|| {
        let o = out(out_measures, "out_measures")?;
        let r = ballset_measures(self::set(set)?)?;
        *o = r.measures.into();
        if let Some(e) = out_empty.as_mut() {
            *e = r.empty;
        }
        Ok(())
    })
}

/// Support function h(u) = max over the set of u·x; `u` need not be unit.
///
/// # Safety
/// `u` must point to three doubles.
#[no_mangle]
pub unsafe extern "C" fn ballm_ballset_support(
    set: *const BallmBallSet,
    u: *const f64,
    out_value: *mut f64,
) -> BallmStatus {
    guard(|| {
        let s = self::set(set)?;
        let d = Direction::new(vec3(u, "u")?.into())?;
        *out(out_value, "out_value")? = ballm::numerics::support::support_by_enumeration(s, &d)?;
        Ok(())
    })
}

/// Monte Carlo volume with its standard error. Deterministic in `seed`.
///
/// # Safety
/// `out_value` and `out_std_error` must be writable; the latter may be null.
#[no_mangle]
pub unsafe extern "C" fn ballm_ballset_mc_volume(
    set: *const BallmBallSet,
    samples: u64,
    seed: u64,
    out_value: *mut f64,
    out_std_error: *mut f64,
) -> BallmStatus {
    guard(|| {
        let o = out(out_value, "out_value")?;
        let s = self::set(set)?;
        let est = mc_volume(s, &McConfig::with_samples(samples, seed)?);
        *o = est.value;
        if let Some(se) = out_std_error.as_mut() {
            *se = est.std_error;
        }
        Ok(())
    })
}

fn write(o: *mut BallmMeasures, m: impl FnOnce() -> Result<Measures, Error>) -> BallmStatus {
    guard(|| {
        let o = unsafe { out(o, "out_measures")? };
        *o = m()?.into();
        Ok(())
    })
}

/// # Safety
/// `out_measures` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ballm_dihedron(out_measures: *mut BallmMeasures) -> BallmStatus {
    write(out_measures, || Ok(exact::dihedron_measures()))
}

/// # Safety
/// `out_measures` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ballm_trihedron(out_measures: *mut BallmMeasures) -> BallmStatus {
    write(out_measures, || Ok(exact::trihedron_measures()))
}

/// # Safety
/// `out_measures` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ballm_reuleaux_tetrahedron(out_measures: *mut BallmMeasures) -> BallmStatus {
    write(out_measures, || Ok(exact::reuleaux_tetrahedron_measures()))
}

/// # Safety
/// `out_measures` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ballm_meissner(out_measures: *mut BallmMeasures) -> BallmStatus {
    write(out_measures, || Ok(exact::meissner_measures()))
}

/// Lens of two unit balls with cap angular radius `phi` in [0, pi/2].
///
/// # Safety
/// `out_measures` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ballm_lens(phi: f64, out_measures: *mut BallmMeasures) -> BallmStatus {
    write(out_measures, || Ok(exact::lens_measures(AngularRadius::new(phi)?)))
}

/// # Safety
/// `out_measures` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ballm_capped_cylinder(ell: f64, out_measures: *mut BallmMeasures) -> BallmStatus {
    write(out_measures, || Ok(exact::capped_cylinder_measures(CylinderLength::new(ell)?)))
}

/// # Safety
/// `out_measures` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ballm_symmetric_segment(phi: f64, out_measures: *mut BallmMeasures) -> BallmStatus {
    write(out_measures, || Ok(exact::symmetric_segment_measures(AngularRadius::new(phi)?)))
}

/// # Safety
/// `out_measures` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ballm_cap_body(phi: f64, out_measures: *mut BallmMeasures) -> BallmStatus {
    write(out_measures, || exact::cap_body_measures(AngularRadius::new(phi)?))
}

/// Volume of the `n`-dimensional lens of two unit balls.
///
/// # Safety
/// `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ballm_ndim_lens_volume(n: u32, phi: f64, out_value: *mut f64) -> BallmStatus {
    guard(|| {
        let o = out(out_value, "out_value")?;
        *o = ndim_lens_volume(Dimension::new(n)?, AngularRadius::new(phi)?)?;
        Ok(())
    })
}
