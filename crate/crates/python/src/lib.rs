//! Python bindings: parse a problem once, then query it.

use noeth::io::{execute, parse_problem, CommandError, OutputDocument, ProblemSpec, Request};
use noeth::noether::Method;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(
    pynoeth,
    ParseError,
    PyValueError,
    "The problem text could not be parsed."
);
create_exception!(
    pynoeth,
    NoethError,
    PyException,
    "A computation failed or its preconditions do not hold."
);

fn to_py(e: CommandError) -> PyErr {
    match e {
        CommandError::Parse(p) => ParseError::new_err(p.to_string()),
        other => NoethError::new_err(other.to_string()),
    }
}

fn method(name: &str) -> PyResult<Method> {
    name.parse().map_err(PyValueError::new_err)
}

/// A parsed problem file.
#[pyclass(frozen, module = "pynoeth")]
pub struct Problem {
    spec: ProblemSpec,
}

impl Problem {
    fn run(&self, request: Request) -> PyResult<OutputDocument> {
        execute(&self.spec, &request).map_err(to_py)
    }
}

#[pymethods]
impl Problem {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        let spec = parse_problem(text).map_err(|e| ParseError::new_err(e.to_string()))?;
        Ok(Problem { spec })
    }

    /// Names of all ring variables, differential ones first.
    #[getter]
    fn variables(&self) -> Vec<String> {
        self.spec.ring.desc.names().to_vec()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.spec.ring.rank()
    }

    fn groebner_basis(&self) -> PyResult<Vec<String>> {
        Ok(self.run(Request::Gb)?.groebner_basis.unwrap_or_default())
    }

    fn normal_form(&self, poly: &str) -> PyResult<String> {
        Ok(self.run(Request::Nf(poly.into()))?.normal_form.unwrap_or_default())
    }

    fn multiplicity(&self) -> PyResult<usize> {
        Ok(self.run(Request::Mult)?.multiplicity.unwrap_or_default())
    }

    fn staircase(&self) -> PyResult<Vec<String>> {
        Ok(self.run(Request::Staircase)?.staircase.unwrap_or_default())
    }

    fn corners(&self) -> PyResult<Vec<String>> {
        Ok(self.run(Request::Corners)?.corners.unwrap_or_default())
    }

    fn is_member(&self, poly: &str) -> PyResult<bool> {
        Ok(self.run(Request::Member(poly.into()))?.member.unwrap_or(false))
    }

    /// Rendered operators in canonical form. Problems with components give
    /// one list per component.
    #[pyo3(signature = (method = "forward"))]
    fn noether(&self, method: &str) -> PyResult<Vec<Vec<String>>> {
        let doc = self.run(Request::Noether {
            method: self::method(method)?,
            check_all: false,
        })?;
        Ok(operator_lists(&doc))
    }

    fn noether_posdim(&self) -> PyResult<Vec<Vec<String>>> {
        Ok(operator_lists(&self.run(Request::NoetherPosdim)?))
    }

    fn ep_solution(&self) -> PyResult<String> {
        let doc = self.run(Request::EpSolution)?;
        Ok(doc.solution.map(|s| s.text).unwrap_or_default())
    }

    /// Full JSON document of a command, as the command-line tool prints it.
    #[pyo3(signature = (command, argument = None, method = "forward"))]
    fn json(&self, command: &str, argument: Option<String>, method: &str) -> PyResult<String> {
        let needs =
            |a: Option<String>| a.ok_or_else(|| PyValueError::new_err(format!("`{command}` needs a polynomial")));
        let request = match command {
            "gb" => Request::Gb,
            "nf" => Request::Nf(needs(argument)?),
            "mult" => Request::Mult,
            "staircase" => Request::Staircase,
            "corners" => Request::Corners,
            "noether" => Request::Noether {
                method: self::method(method)?,
                check_all: false,
            },
            "noether-posdim" => Request::NoetherPosdim,
            "member" => Request::Member(needs(argument)?),
            "ep-solution" => Request::EpSolution,
            other => return Err(PyValueError::new_err(format!("unknown command `{other}`"))),
        };
        Ok(self.run(request)?.to_json())
    }

    fn __repr__(&self) -> String {
        format!(
            "Problem(variables={:?}, rank={})",
            self.spec.ring.desc.names(),
            self.spec.ring.rank()
        )
    }
}

fn operator_lists(doc: &OutputDocument) -> Vec<Vec<String>> {
    match &doc.components {
        Some(comps) => comps
            .iter()
            .map(|c| c.operator_text.clone().unwrap_or_default())
            .collect(),
        None => vec![doc.operator_text.clone().unwrap_or_default()],
    }
}

/// Runs the command-line tool in-process; returns `(code, stdout, stderr)`.
#[pyfunction]
fn run(args: Vec<String>) -> (i32, String, String) {
    let out = noeth::io::run(std::iter::once("noeth".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
pub mod pynoeth {
    #[pymodule_export]
    use super::{run, NoethError, ParseError, Problem};
}
