//! Python bindings: the main types and operations behind a small, friendly
//! surface. Rationals cross the boundary as exact "n/d" strings and numeric
//! volumes as decimal strings, so nothing is lost to binary floats.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use shimura_volumes::arith::{rat_from_string, rat_to_string};
use shimura_volumes::census::fundamental_discriminants;
use shimura_volumes::hermitian::{lattice_classes, lattice_rep};
use shimura_volumes::quaternion::{algebra_from_space, construct_eichler_order, level};
use shimura_volumes::report::{census_record, component_reports, VolumeSymbolic};
use shimura_volumes::symbols::Place;
use shimura_volumes::volume::{unitary_degree, unitary_volume};
use shimura_volumes::zeta::zeta_constants_cached;
use shimura_volumes::{enumerate_spaces, make_field, reduced_forms, FormClass};

fn err(e: shimura_volumes::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn form_tuple(f: &FormClass) -> PyResult<(i64, i64, i64)> {
    f.coefficients_i64()
        .ok_or_else(|| PyValueError::new_err("form coefficients exceed i64"))
}

/// An imaginary quadratic field of odd fundamental discriminant.
#[pyclass]
struct Field {
    ctx: shimura_volumes::FieldContext,
}

#[pymethods]
impl Field {
    #[new]
    fn new(d: i64) -> PyResult<Self> {
        Ok(Field { ctx: make_field(d).map_err(err)? })
    }

    fn discriminant(&self) -> i64 {
        self.ctx.d()
    }

    fn unit_count(&self) -> u32 {
        self.ctx.unit_count()
    }

    fn disc_primes(&self) -> Vec<u64> {
        self.ctx.disc_primes().to_vec()
    }

    fn class_number(&self) -> usize {
        reduced_forms(&self.ctx).order()
    }

    /// The reduced forms of discriminant D, as (A, B, C) triples.
    fn class_group(&self) -> PyResult<Vec<(i64, i64, i64)>> {
        reduced_forms(&self.ctx).elements().iter().map(form_tuple).collect()
    }

    /// The subgroup of squares, as (A, B, C) triples.
    fn principal_genus(&self) -> PyResult<Vec<(i64, i64, i64)>> {
        let group = reduced_forms(&self.ctx);
        shimura_volumes::principal_genus(&self.ctx, &group)
            .map_err(err)?
            .iter()
            .map(form_tuple)
            .collect()
    }

    /// The hermitian spaces of signature (1,1) admitting a self-dual lattice.
    fn spaces(&self) -> PyResult<Vec<Space>> {
        Ok(enumerate_spaces(&self.ctx)
            .map_err(err)?
            .into_iter()
            .map(|space| Space { space })
            .collect())
    }

    /// All component reports as a JSON array string.
    fn report_json(&self, precision: u32) -> PyResult<String> {
        let reports = component_reports(self.ctx.d(), precision).map_err(err)?;
        serde_json::to_string(&reports).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    /// The census record as a JSON string.
    fn census_record_json(&self, precision: u32) -> PyResult<String> {
        let record = census_record(self.ctx.d(), precision).map_err(err)?;
        serde_json::to_string(&record).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!("Field(D={})", self.ctx.d())
    }
}

/// A signature-(1,1) hermitian space with a self-dual lattice.
#[pyclass]
struct Space {
    space: shimura_volumes::HermitianSpace,
}

#[pymethods]
impl Space {
    /// Canonical determinant class representative, as a fraction string.
    fn det_class(&self) -> String {
        rat_to_string(&self.space.det_class())
    }

    /// Signed primes (p, p°) over p | D.
    fn p_circ(&self) -> Vec<(u64, i64)> {
        self.space.p_circ_all()
    }

    fn is_globally_isotropic(&self) -> bool {
        self.space.is_globally_isotropic()
    }

    fn disc_b(&self) -> PyResult<u64> {
        Ok(algebra_from_space(&self.space).map_err(err)?.disc())
    }

    fn level(&self) -> PyResult<u64> {
        let alg = algebra_from_space(&self.space).map_err(err)?;
        level(self.space.ctx(), &alg).map_err(err)
    }

    /// The Steinitz classes of the self-dual lattices in this space.
    fn lattice_classes(&self) -> PyResult<Vec<(i64, i64, i64)>> {
        lattice_classes(&self.space)
            .map_err(err)?
            .iter()
            .map(form_tuple)
            .collect()
    }

    /// Hodge-bundle degree of the components, as an exact fraction string.
    fn degree(&self) -> PyResult<String> {
        Ok(rat_to_string(
            &unitary_degree(self.space.ctx(), &self.space).map_err(err)?,
        ))
    }

    /// Symbolic arithmetic volume, as a dict with keys "c_const", "c_zeta",
    /// and "c_log" (a prime -> coefficient dict), all exact strings.
    fn volume<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let v = unitary_volume(self.space.ctx(), &self.space).map_err(err)?;
        let out = PyDict::new_bound(py);
        out.set_item("c_const", rat_to_string(&v.c_const))?;
        out.set_item("c_zeta", rat_to_string(&v.c_zeta))?;
        let logs = PyDict::new_bound(py);
        for (p, c) in &v.c_log {
            logs.set_item(p, rat_to_string(c))?;
        }
        out.set_item("c_log", logs)?;
        Ok(out)
    }

    /// Decimal value of the volume at the requested precision.
    fn volume_numeric(&self, digits: u32) -> PyResult<String> {
        unitary_volume(self.space.ctx(), &self.space)
            .map_err(err)?
            .evaluate_decimal(digits)
            .map_err(err)
    }

    /// Builds the Eichler order for one lattice class and returns its level
    /// and reduced discriminant after full verification.
    fn eichler_order_level(&self, class: (i64, i64, i64)) -> PyResult<(u64, u64)> {
        let form = FormClass::new(class.0.into(), class.1.into(), class.2.into()).map_err(err)?;
        let lattice = lattice_rep(&self.space, &form).map_err(err)?;
        let order = construct_eichler_order(&self.space, &lattice).map_err(err)?;
        Ok((order.level(), self.space.ctx().abs_d()))
    }

    fn __repr__(&self) -> String {
        format!(
            "Space(D={}, det={})",
            self.space.ctx().d(),
            rat_to_string(&self.space.det_class())
        )
    }
}

/// Legendre symbol of a modulo an odd prime p.
#[pyfunction]
fn legendre(a: i64, p: u64) -> PyResult<i32> {
    shimura_volumes::legendre(&a.into(), p).map_err(err)
}

/// Hilbert symbol (a, b)_v; a and b are fraction strings like "-3/5" and
/// the place is a prime string or "inf".
#[pyfunction]
fn hilbert_symbol(a: &str, b: &str, place: &str) -> PyResult<i32> {
    let a = rat_from_string(a).map_err(err)?;
    let b = rat_from_string(b).map_err(err)?;
    let v = if place == "inf" {
        Place::Infinite
    } else {
        Place::Finite(
            place
                .parse()
                .map_err(|_| PyValueError::new_err(format!("bad place {place:?}")))?,
        )
    };
    shimura_volumes::hilbert_symbol(&a, &b, &v).map_err(err)
}

/// zeta'(-1) as a decimal string, certified by two independent methods.
#[pyfunction]
fn zeta_prime_minus_one(digits: u32) -> PyResult<String> {
    let z = zeta_constants_cached(digits).map_err(err)?;
    Ok(z.zeta_prime_m1.to_decimal_string(digits))
}

/// Evaluates a symbolic volume JSON document at the given precision.
#[pyfunction]
fn evaluate_volume(symbolic_json: &str, digits: u32) -> PyResult<String> {
    let sym: VolumeSymbolic = serde_json::from_str(symbolic_json)
        .map_err(|e| PyValueError::new_err(format!("bad symbolic volume: {e}")))?;
    sym.to_value().map_err(err)?.evaluate_decimal(digits).map_err(err)
}

/// Odd fundamental discriminants in [min, max], by |D| ascending.
#[pyfunction]
fn discriminants(min: i64, max: i64) -> PyResult<Vec<i64>> {
    fundamental_discriminants(min, max).map_err(err)
}

#[pymodule]
fn shimura_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Field>()?;
    m.add_class::<Space>()?;
    m.add_function(wrap_pyfunction!(legendre, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_symbol, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_prime_minus_one, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_volume, m)?)?;
    m.add_function(wrap_pyfunction!(discriminants, m)?)?;
    Ok(())
}
