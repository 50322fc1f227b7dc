use pyo3::prelude::*;
use pyo3::py_run;

fn with_module(code: &str) {
    Python::initialize();
    Python::attach(|py| {
        let ts = pyo3::wrap_pymodule!(tilescale_py::tilescale_py)(py);
        let ts = ts.bind(py);
        py_run!(py, ts, code);
    });
}

#[test]
fn scaling_and_oracles() {
    with_module(
        r#"
from fractions import Fraction
t = ts.fibonacci_tiling(3)
assert t.kind == "rect" and len(t) == 3 and t.is_valid()
c = t.integerize()
assert (c.pipeline, c.q, c.bound) == ("square", 3, "64")
assert c.tiling.is_valid()
assert ts.dehn_sharpness_tiling().minimal_scale() == 4
assert t.normalized_minimal_scale() == 3
assert ts.dirichlet([Fraction(2, 5), "1/5"], 4) == 5
assert ts.min_squares(5, 6)[0] == 5
assert ts.min_squares(5, 6, 4) is None
"#,
    );
}

#[test]
fn json_and_errors() {
    with_module(
        r#"
t = ts.dyadic_triangle_tiling(2)
assert ts.Tiling.from_json(t.to_json()) == t
assert t.render_svg().count("<polygon") == len(t) == 7
try:
    ts.Tiling.from_json('{"kind": "rect"')
    raise AssertionError("parsed a truncated document")
except ValueError:
    pass
try:
    ts.dyadic_cube_tiling(3, 1).render_svg()
    raise AssertionError("rendered a box tiling")
except ts.TilescaleError:
    pass
"#,
    );
}
