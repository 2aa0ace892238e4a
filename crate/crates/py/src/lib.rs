//! Python bindings: the main operations of the fourpoints crate exposed as
//! module-level functions, with `None` standing for the point at infinity
//! and Python complex numbers for everything finite.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use fourpoints::forms::{self, CurveForm, FormKind};
use fourpoints::invariants;
use fourpoints::moebius::{self, FourPoints, MoebiusMap};
use fourpoints::numerics::{self, CardanoBranch, Polynomial, SpherePoint};
use fourpoints::shape::{self, SvgOptions};

fn py_err(e: fourpoints::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_sphere(z: Option<Complex64>) -> SpherePoint {
    match z {
        Some(z) => SpherePoint::Finite(z),
        None => SpherePoint::Infinity,
    }
}

fn from_sphere(p: SpherePoint) -> Option<Complex64> {
    p.value()
}

fn to_quad(points: Vec<Option<Complex64>>) -> PyResult<FourPoints> {
    if points.len() != 4 {
        return Err(PyValueError::new_err(format!(
            "expected 4 points, got {}",
            points.len()
        )));
    }
    FourPoints::new(
        to_sphere(points[0]),
        to_sphere(points[1]),
        to_sphere(points[2]),
        to_sphere(points[3]),
    )
    .map_err(py_err)
}

fn kind_from_name(name: &str) -> PyResult<FormKind> {
    match name {
        "weierstrass" => Ok(FormKind::Weierstrass),
        "legendre" => Ok(FormKind::Legendre),
        "jacobi" => Ok(FormKind::Jacobi),
        "edwards" => Ok(FormKind::Edwards),
        "symmetric" => Ok(FormKind::Symmetric),
        "hesse" => Ok(FormKind::Hesse),
        other => Err(PyValueError::new_err(format!("unknown form kind '{other}'"))),
    }
}

fn form_from_parts(kind: &str, params: Vec<Complex64>) -> PyResult<CurveForm> {
    CurveForm::from_kind(kind_from_name(kind)?, &params).map_err(py_err)
}

/// Möbius transformation `z -> (az + b)/(cz + d)`, stored normalized.
#[pyclass(name = "Moebius", skip_from_py_object)]
#[derive(Clone)]
struct PyMoebius {
    inner: MoebiusMap,
}

#[pymethods]
impl PyMoebius {
    #[new]
    fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> PyResult<Self> {
        Ok(PyMoebius {
            inner: MoebiusMap::new(a, b, c, d).map_err(py_err)?,
        })
    }

    /// The unique map sending (p, q, r) orderly to (0, 1, infinity).
    #[staticmethod]
    fn from_triple(
        p: Option<Complex64>,
        q: Option<Complex64>,
        r: Option<Complex64>,
    ) -> PyResult<Self> {
        Ok(PyMoebius {
            inner: moebius::map_from_triple(to_sphere(p), to_sphere(q), to_sphere(r))
                .map_err(py_err)?,
        })
    }

    fn apply(&self, z: Option<Complex64>) -> Option<Complex64> {
        from_sphere(self.inner.apply(to_sphere(z)))
    }

    fn inverse(&self) -> Self {
        PyMoebius {
            inner: self.inner.inverse(),
        }
    }

    fn compose(&self, other: &PyMoebius) -> PyResult<Self> {
        Ok(PyMoebius {
            inner: self.inner.compose(&other.inner).map_err(py_err)?,
        })
    }

    #[getter]
    fn coefficients(&self) -> (Complex64, Complex64, Complex64, Complex64) {
        self.inner.coefficients()
    }

    fn __repr__(&self) -> String {
        let (a, b, c, d) = self.inner.coefficients();
        format!("Moebius(({a})z + ({b})) / (({c})z + ({d}))")
    }
}

/// Cross ratio of four ordered points (None = infinity).
#[pyfunction]
fn cross_ratio(
    z1: Option<Complex64>,
    z2: Option<Complex64>,
    z3: Option<Complex64>,
    z4: Option<Complex64>,
) -> PyResult<Complex64> {
    moebius::cross_ratio(to_sphere(z1), to_sphere(z2), to_sphere(z3), to_sphere(z4))
        .map_err(py_err)
}

/// The deduplicated equivalence orbit of a cross ratio.
#[pyfunction]
fn cross_ratio_orbit(lam: Complex64) -> PyResult<Vec<Complex64>> {
    Ok(moebius::cross_ratio_orbit(lam)
        .map_err(py_err)?
        .values()
        .to_vec())
}

/// Reduces four points to {0, 1, lambda, inf}; returns (lambda, map).
#[pyfunction]
fn canonicalize(points: Vec<Option<Complex64>>) -> PyResult<(Complex64, PyMoebius)> {
    let (lambda, m) = moebius::canonicalize(&to_quad(points)?).map_err(py_err)?;
    Ok((lambda, PyMoebius { inner: m }))
}

/// The three Möbius involutions realizing the 2+2 permutations.
#[pyfunction]
fn klein_involutions(points: Vec<Option<Complex64>>) -> PyResult<Vec<PyMoebius>> {
    Ok(moebius::klein_involutions(&to_quad(points)?)
        .map_err(py_err)?
        .into_iter()
        .map(|m| PyMoebius { inner: m })
        .collect())
}

/// Affine map (a, b) with az+b carrying one quadruple-with-infinity onto
/// another, or None if the quadruples are inequivalent.
#[pyfunction]
fn affine_reduction(
    a: Vec<Option<Complex64>>,
    b: Vec<Option<Complex64>>,
) -> PyResult<Option<(Complex64, Complex64)>> {
    moebius::affine_reduction(&to_quad(a)?, &to_quad(b)?).map_err(py_err)
}

/// J-invariant of a cross ratio (None = infinity in and out).
#[pyfunction]
fn j_invariant(lam: Option<Complex64>) -> Option<Complex64> {
    from_sphere(invariants::j_invariant(to_sphere(lam)))
}

/// J-invariant of a 4-point set.
#[pyfunction]
fn j_of_points(points: Vec<Option<Complex64>>) -> PyResult<Option<Complex64>> {
    Ok(from_sphere(
        invariants::j_of_points(&to_quad(points)?).map_err(py_err)?,
    ))
}

/// J through its three-step factorization chain.
#[pyfunction]
fn j_chain(lam: Complex64) -> Option<Complex64> {
    from_sphere(invariants::j_chain(lam))
}

/// Equivalence of two cross ratios (J-equality).
#[pyfunction]
fn equivalent_lambdas(a: Complex64, b: Complex64) -> PyResult<bool> {
    invariants::are_equivalent(&a, &b).map_err(py_err)
}

/// Equivalence of two 4-point sets (J-equality).
#[pyfunction]
fn equivalent_points(
    a: Vec<Option<Complex64>>,
    b: Vec<Option<Complex64>>,
) -> PyResult<bool> {
    invariants::are_equivalent(&to_quad(a)?, &to_quad(b)?).map_err(py_err)
}

/// (critical point, critical value, multiplicity, measured slope)
type BranchRow = (Option<Complex64>, Option<Complex64>, u32, f64);

/// Confirms the branching table of J; returns one row per critical point.
#[pyfunction]
fn verify_branching() -> PyResult<Vec<BranchRow>> {
    let report = invariants::verify_branching(1e-8).map_err(py_err)?;
    Ok(report
        .entries
        .iter()
        .map(|e| {
            (
                from_sphere(e.critical_point),
                from_sphere(e.critical_value),
                e.multiplicity,
                e.measured_slope,
            )
        })
        .collect())
}

/// All roots of the polynomial with the given ascending coefficients.
#[pyfunction]
#[pyo3(signature = (coeffs, tol = 1e-9))]
fn solve_poly(coeffs: Vec<Complex64>, tol: f64) -> PyResult<Vec<Complex64>> {
    let p = Polynomial::new(coeffs).map_err(py_err)?;
    numerics::solve_poly(&p, tol).map_err(py_err)
}

/// Discriminant of a quadratic or cubic (ascending coefficients).
#[pyfunction]
fn discriminant(coeffs: Vec<Complex64>) -> PyResult<Complex64> {
    let p = Polynomial::new(coeffs).map_err(py_err)?;
    numerics::discriminant(&p).map_err(py_err)
}

/// Roots of `z^3 - 3k z^2 + 4` by the explicit branch formula.
#[pyfunction]
#[pyo3(signature = (k, sqrt_sign = 1, cbrt_index = 0))]
fn hesse_roots(k: Complex64, sqrt_sign: i8, cbrt_index: u8) -> PyResult<(Complex64, Complex64, Complex64)> {
    let branch = CardanoBranch::new(sqrt_sign, cbrt_index).map_err(py_err)?;
    numerics::hesse_roots(k, branch).map_err(py_err)
}

/// Branch points of a normal form, e.g. branch_points("legendre", [2+0j]).
#[pyfunction]
fn branch_points(kind: &str, params: Vec<Complex64>) -> PyResult<Vec<Option<Complex64>>> {
    let f = form_from_parts(kind, params)?;
    Ok(forms::branch_points(&f)
        .map_err(py_err)?
        .points()
        .iter()
        .map(|&p| from_sphere(p))
        .collect())
}

/// (g2, g3) of the curve branching over {z1, z2, z3, inf}.
#[pyfunction]
fn weierstrass_from_points(
    z1: Complex64,
    z2: Complex64,
    z3: Complex64,
) -> PyResult<(Complex64, Complex64)> {
    forms::weierstrass_from_points(z1, z2, z3).map_err(py_err)
}

/// Legendre parameter (cross ratio) of a quadruple.
#[pyfunction]
fn legendre_from_points(points: Vec<Option<Complex64>>) -> PyResult<Complex64> {
    forms::legendre_from_points(&to_quad(points)?).map_err(py_err)
}

/// A parameter a with chi(a, -1/a, -a, 1/a) = lambda.
#[pyfunction]
fn symmetric_parameter_from_lambda(lam: Complex64) -> PyResult<Complex64> {
    forms::symmetric_parameter_from_lambda(lam).map_err(py_err)
}

/// The closed form for J over the Hesse branch points.
#[pyfunction]
fn hesse_phi(k: Complex64) -> PyResult<Complex64> {
    forms::hesse_phi(k).map_err(py_err)
}

/// A Hesse parameter k with phi(k) = J(lambda).
#[pyfunction]
fn hesse_from_lambda(lam: Complex64) -> PyResult<Complex64> {
    forms::hesse_from_lambda(lam).map_err(py_err)
}

/// Converts a form to another kind; returns (kind, params).
#[pyfunction]
fn convert(kind: &str, params: Vec<Complex64>, to: &str) -> PyResult<(String, Vec<Complex64>)> {
    let f = form_from_parts(kind, params)?;
    let g = forms::convert(&f, kind_from_name(to)?).map_err(py_err)?;
    Ok((g.kind().name().to_string(), g.params()))
}

/// J-equality of two forms.
#[pyfunction]
fn is_isomorphic(
    kind_a: &str,
    params_a: Vec<Complex64>,
    kind_b: &str,
    params_b: Vec<Complex64>,
) -> PyResult<bool> {
    let a = form_from_parts(kind_a, params_a)?;
    let b = form_from_parts(kind_b, params_b)?;
    forms::is_isomorphic(&a, &b).map_err(py_err)
}

/// Angles of the curvilinear triangle on the first three points; returns
/// (angles, relabeled, near_concyclic).
#[pyfunction]
fn shape_of(points: Vec<Option<Complex64>>) -> PyResult<(Vec<f64>, bool, bool)> {
    let s = shape::shape_of(&to_quad(points)?).map_err(py_err)?;
    Ok((s.angles().to_vec(), s.relabeled(), s.near_concyclic()))
}

/// Angle triples of all four curvilinear triangles (entry l omits point l).
#[pyfunction]
fn all_triangle_shapes(points: Vec<Option<Complex64>>) -> PyResult<Vec<Vec<f64>>> {
    Ok(shape::all_triangle_shapes(&to_quad(points)?)
        .map_err(py_err)?
        .iter()
        .map(|s| s.angles().to_vec())
        .collect())
}

/// Apex of the triangle on [0, 1] with the given base angles.
#[pyfunction]
fn apex_from_angles(alpha: f64, beta: f64) -> PyResult<Complex64> {
    shape::apex_from_angles(alpha, beta).map_err(py_err)
}

/// A cross ratio recovered purely from the measured shape angles.
#[pyfunction]
fn cross_ratio_geometric(points: Vec<Option<Complex64>>) -> PyResult<Complex64> {
    shape::cross_ratio_geometric(&to_quad(points)?).map_err(py_err)
}

/// SVG rendering of the configuration.
#[pyfunction]
#[pyo3(signature = (points, width = 640))]
fn shape_svg(points: Vec<Option<Complex64>>, width: u32) -> PyResult<String> {
    let options = SvgOptions {
        width,
        ..SvgOptions::default()
    };
    shape::shape_svg(&to_quad(points)?, &options).map_err(py_err)
}

#[pymodule]
fn fourpoints_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("RHO", numerics::RHO)?;
    m.add("RHO2", numerics::RHO2)?;
    m.add_class::<PyMoebius>()?;
    m.add_function(wrap_pyfunction!(cross_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(cross_ratio_orbit, m)?)?;
    m.add_function(wrap_pyfunction!(canonicalize, m)?)?;
    m.add_function(wrap_pyfunction!(klein_involutions, m)?)?;
    m.add_function(wrap_pyfunction!(affine_reduction, m)?)?;
    m.add_function(wrap_pyfunction!(j_invariant, m)?)?;
    m.add_function(wrap_pyfunction!(j_of_points, m)?)?;
    m.add_function(wrap_pyfunction!(j_chain, m)?)?;
    m.add_function(wrap_pyfunction!(equivalent_lambdas, m)?)?;
    m.add_function(wrap_pyfunction!(equivalent_points, m)?)?;
    m.add_function(wrap_pyfunction!(verify_branching, m)?)?;
    m.add_function(wrap_pyfunction!(solve_poly, m)?)?;
    m.add_function(wrap_pyfunction!(discriminant, m)?)?;
    m.add_function(wrap_pyfunction!(hesse_roots, m)?)?;
    m.add_function(wrap_pyfunction!(branch_points, m)?)?;
    m.add_function(wrap_pyfunction!(weierstrass_from_points, m)?)?;
    m.add_function(wrap_pyfunction!(legendre_from_points, m)?)?;
    m.add_function(wrap_pyfunction!(symmetric_parameter_from_lambda, m)?)?;
    m.add_function(wrap_pyfunction!(hesse_phi, m)?)?;
    m.add_function(wrap_pyfunction!(hesse_from_lambda, m)?)?;
    m.add_function(wrap_pyfunction!(convert, m)?)?;
    m.add_function(wrap_pyfunction!(is_isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(shape_of, m)?)?;
    m.add_function(wrap_pyfunction!(all_triangle_shapes, m)?)?;
    m.add_function(wrap_pyfunction!(apex_from_angles, m)?)?;
    m.add_function(wrap_pyfunction!(cross_ratio_geometric, m)?)?;
    m.add_function(wrap_pyfunction!(shape_svg, m)?)?;
    Ok(())
}
