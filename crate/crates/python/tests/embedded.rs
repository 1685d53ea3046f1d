use modclose_py::modclose_py as bindings;
use pyo3::prelude::*;

#[test]
fn bindings_from_embedded_python() {
    pyo3::append_to_inittab!(bindings);
    Python::initialize();
    Python::attach(|py| {
        py.run(
            c"
import modclose_py as mc
r = mc.Module('Zmod:4', 1)
res = mc.regular_closure(r, r.submodule([[2]]), mc.Subcategory('Zmod:4', finite=[r]))
assert res.closure.generators == [[2]] and res.closed and not res.dense
assert mc.hom_group(mc.Module('Z', 1, [[4]]), mc.Module('Z', 1, [[6]])).structure == [2]
assert mc.snf([[2, 4], [6, 8]]).d == [2, 4]
assert mc.free_summand_rank(mc.Module('Z', 2, [[2, 0]])) == 1
try:
    mc.is_bounded(r)
    raise AssertionError('boundedness needs ring Z')
except ValueError:
    pass
",
            None,
            None,
        )
        .unwrap();
    });
}
