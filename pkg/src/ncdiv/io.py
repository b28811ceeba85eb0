"""JSON instance specs: parsing with strict validation, and export of instances.

Layout (all scalars are strings, "p/q" or "[c0,...]@zetaN")::

    {"schema": "ncdiv.instance/1", "name": ...,
     "algebra": {"dim", "basis", "unit", "mul", "field"?}
              | {"group_table", "names"?, "field"?}
              | {"builtin": "laurent_grassmann", "window"},
     "system": {"n", "partial", "sigma", "sigma_tilde"?, "sigma_bar"?, "sigma_hat"?, "pi"?}
             | {"builtin": "supercircle"},
     "options": {"window"?, "lambda"?, "reference"?, "hopf"?, "inner_delta"?}}

Operator matrices are d x d with ``m[r][c]`` the coefficient of ``e_r`` in
``F(e_c)``.  Unknown fields anywhere are rejected.
"""

import json
from pathlib import Path

from .algebra import AlgMatrix, FiniteDimAlgebra, LaurentGrassmann, LinOp, OpMatrix
from .errors import InstanceError
from .fields import field_from_spec
from .gallery import Instance, build, gallery_names, hopf_from_options, supercircle
from .hopf import GroupTableError, group_function_algebra
from .integral import ClaimedIntegral
from .systems import MultiDerivation, PreProjectiveSystem

__all__ = [
    "SCHEMA",
    "REPORT_SCHEMA",
    "SpecError",
    "instance_from_spec",
    "instance_to_spec",
    "load_instance",
    "load_lambda",
    "resolve",
    "dumps",
]

SCHEMA = "ncdiv.instance/1"
REPORT_SCHEMA = "ncdiv.report/1"


class SpecError(InstanceError):
    """The spec file is malformed; maps to exit code 2."""


def _fields(obj, where, required=(), optional=()):
    if not isinstance(obj, dict):
        raise SpecError(f"{where}: expected an object")
    unknown = sorted(set(obj) - set(required) - set(optional))
    if unknown:
        raise SpecError(f"{where}: unknown field(s) {', '.join(unknown)}")
    missing = [k for k in required if k not in obj]
    if missing:
        raise SpecError(f"{where}: missing field(s) {', '.join(missing)}")


def _scalar(field, s, where):
    if not isinstance(s, str):
        raise SpecError(f"{where}: scalars must be strings, got {s!r}")
    try:
        return field.parse(s)
    except ValueError as exc:
        raise SpecError(f"{where}: {exc}") from None


def _list(obj, length, where):
    if not isinstance(obj, list) or (length is not None and len(obj) != length):
        size = "a list" if length is None else f"a list of length {length}"
        raise SpecError(f"{where}: expected {size}")
    return obj


def _int(obj, where, low=None):
    if not isinstance(obj, int) or isinstance(obj, bool) or (low is not None and obj < low):
        raise SpecError(f"{where}: expected an integer" + (f" >= {low}" if low is not None else ""))
    return obj


# --- algebra ----------------------------------------------------------------


def _algebra_from_spec(spec, window=None):
    if not isinstance(spec, dict):
        raise SpecError("algebra: expected an object")
    if "builtin" in spec:
        _fields(spec, "algebra", ("builtin",), ("window",))
        if spec["builtin"] != "laurent_grassmann":
            raise SpecError(f"algebra: unknown builtin {spec['builtin']!r}")
        w = window if window is not None else _int(spec.get("window", 4), "algebra.window", 2)
        return "laurent_grassmann", w
    if "group_table" in spec:
        _fields(spec, "algebra", ("group_table",), ("names", "field"))
        field = _field(spec.get("field"))
        try:
            hopf = group_function_algebra(spec["group_table"], spec.get("names"), field)
        except (GroupTableError, TypeError) as exc:
            raise SpecError(f"algebra.group_table: {exc}") from None
        return hopf.algebra, None
    _fields(spec, "algebra", ("dim", "basis", "unit", "mul"), ("field", "name"))
    field = _field(spec.get("field"))
    d = _int(spec["dim"], "algebra.dim", 1)
    labels = _list(spec["basis"], d, "algebra.basis")
    if not all(isinstance(x, str) for x in labels) or len(set(labels)) != d:
        raise SpecError("algebra.basis: labels must be distinct strings")
    unit = [_scalar(field, x, "algebra.unit") for x in _list(spec["unit"], d, "algebra.unit")]
    mul = []
    for i, row in enumerate(_list(spec["mul"], d, "algebra.mul")):
        mul.append([[_scalar(field, x, f"algebra.mul[{i}][{j}]") for x in _list(col, d, f"algebra.mul[{i}][{j}]")]
                    for j, col in enumerate(_list(row, d, f"algebra.mul[{i}]"))])
    # axioms are reported by the check suite, not enforced at parse time
    return FiniteDimAlgebra(labels, mul, unit, field, spec.get("name", "A"), check=False), None


def _field(spec):
    try:
        return field_from_spec(spec)
    except ValueError as exc:
        raise SpecError(f"field: {exc}") from None


def _algebra_to_spec(alg):
    if isinstance(alg, LaurentGrassmann):
        return {"builtin": "laurent_grassmann", "window": alg.window}
    f = alg.field.format
    return {
        "dim": alg.dim,
        "basis": list(alg.labels),
        "unit": [f(x) for x in alg.unit],
        "mul": [[[f(x) for x in col] for col in row] for row in alg.structure],
        "field": alg.field.spec(),
        "name": alg.name,
    }


# --- system -------------------------------------------------------------------


def _op(alg, m, where):
    d = alg.dim
    rows = [[_scalar(alg.field, x, f"{where}[{r}]") for x in _list(row, d, f"{where}[{r}]")]
            for r, row in enumerate(_list(m, d, where))]
    return LinOp.from_matrix(alg, rows)


def _opmatrix(alg, m, n, where):
    return OpMatrix(alg, [[_op(alg, x, f"{where}[{i}][{j}]") for j, x in enumerate(_list(row, n, f"{where}[{i}]"))]
                          for i, row in enumerate(_list(m, n, where))])


def _element(alg, v, where):
    return alg.from_vector([_scalar(alg.field, x, where) for x in _list(v, alg.dim, where)])


def _system_from_spec(alg, spec):
    _fields(spec, "system", ("n", "partial", "sigma"), ("sigma_tilde", "sigma_bar", "sigma_hat", "pi"))
    n = _int(spec["n"], "system.n", 0)
    partial = [_op(alg, m, f"system.partial[{i}]") for i, m in enumerate(_list(spec["partial"], n, "system.partial"))]
    sigma = _opmatrix(alg, spec["sigma"], n, "system.sigma")
    tilde = _opmatrix(alg, spec["sigma_tilde"], n, "system.sigma_tilde") if "sigma_tilde" in spec else None
    sbar = _opmatrix(alg, spec["sigma_bar"], n, "system.sigma_bar") if "sigma_bar" in spec else None
    shat = _opmatrix(alg, spec["sigma_hat"], n, "system.sigma_hat") if "sigma_hat" in spec else None
    if "pi" in spec:
        pi = AlgMatrix(alg, [[_element(alg, x, f"system.pi[{i}][{j}]") for j, x in enumerate(_list(row, n, f"system.pi[{i}]"))]
                             for i, row in enumerate(_list(spec["pi"], n, "system.pi"))])
    else:
        pi = AlgMatrix.identity(alg, n)
    return MultiDerivation(partial, sigma), PreProjectiveSystem(pi, sigma, tilde), sbar, shat


def _matrix_strings(op):
    f = op.algebra.field.format
    return [[f(x) for x in row] for row in op.matrix()]


def _opmatrix_strings(m):
    return [[_matrix_strings(op) for op in row] for row in m.entries]


def _system_to_spec(inst):
    s = inst.system
    out = {
        "n": s.n,
        "partial": [_matrix_strings(p) for p in inst.derivation.partial],
        "sigma": _opmatrix_strings(s.sigma),
    }
    if s.sigma_tilde is not s.sigma:
        out["sigma_tilde"] = _opmatrix_strings(s.sigma_tilde)
    if inst.sigma_bar is not None:
        out["sigma_bar"] = _opmatrix_strings(inst.sigma_bar)
    if inst.sigma_hat is not None:
        out["sigma_hat"] = _opmatrix_strings(inst.sigma_hat)
    if not s.pi.is_identity():
        f = inst.algebra.field.format
        out["pi"] = [[[f(c) for c in x.vector()] for x in row] for row in s.pi.entries]
    return out


# --- instance -------------------------------------------------------------------


def instance_from_spec(spec, window=None):
    _fields(spec, "spec", ("schema", "algebra", "system"), ("name", "options"))
    if spec["schema"] != SCHEMA:
        raise SpecError(f"unsupported schema {spec['schema']!r}; expected {SCHEMA!r}")
    options = spec.get("options", {})
    _fields(options, "options", (), ("window", "lambda", "reference", "hopf", "inner_delta"))
    if "window" in options and window is None:
        window = _int(options["window"], "options.window", 2)
    name = spec.get("name", "instance")
    alg, w = _algebra_from_spec(spec["algebra"], window)
    if alg == "laurent_grassmann":
        system = spec["system"]
        _fields(system, "system", ("builtin",))
        if system["builtin"] != "supercircle":
            raise SpecError(f"system: unknown builtin {system['builtin']!r}")
        inst = supercircle(w)
        if "lambda" in options:
            inst.claimed = _claimed(inst.algebra, options["lambda"])
        bad = sorted(set(options) - {"window", "lambda"})
        if bad:
            raise SpecError(f"options: {', '.join(bad)} not supported for graded instances")
        inst.name = name
        return inst
    try:
        derivation, system, sbar, shat = _system_from_spec(alg, spec["system"])
    except InstanceError as exc:
        raise SpecError(str(exc)) from None
    inst = Instance(name, alg, system, derivation, sbar, shat)
    if "lambda" in options:
        inst.claimed = _claimed(alg, options["lambda"])
    if "reference" in options:
        inst.reference = tuple(_scalar(alg.field, x, "options.reference")
                               for x in _list(options["reference"], alg.dim, "options.reference"))
    if "hopf" in options:
        h = options["hopf"]
        _fields(h, "options.hopf", ("group_table", "subset"), ("names",))
        try:
            inst.hopf = hopf_from_options(alg, h["group_table"], h.get("names"), h["subset"])
        except (GroupTableError, InstanceError, TypeError) as exc:
            raise SpecError(f"options.hopf: {exc}") from None
        if inst.hopf.n != system.n:
            raise SpecError("options.hopf: subset size differs from system.n")
    if "inner_delta" in options:
        inst.inner_delta = tuple(_element(alg, v, "options.inner_delta")
                                 for v in _list(options["inner_delta"], system.n, "options.inner_delta"))
    return inst


def _claimed(alg, mapping):
    if not isinstance(mapping, dict):
        raise SpecError("lambda: expected an object {basis label: scalar}")
    vals = {}
    for label, v in mapping.items():
        try:
            key = alg.key(label)
        except (KeyError, ArithmeticError) as exc:
            raise SpecError(f"lambda: {exc}") from None
        vals[key] = _scalar(alg.field, v, f"lambda[{label}]")
    return ClaimedIntegral.from_mapping(alg, vals)


def instance_to_spec(inst):
    """Export an instance to a spec dict that re-imports to an equivalent instance."""
    alg = inst.algebra
    out = {"schema": SCHEMA, "name": inst.name, "algebra": _algebra_to_spec(alg)}
    options = {}
    if isinstance(alg, LaurentGrassmann):
        out["system"] = {"builtin": "supercircle"}
        if inst.claimed is not None:
            options["lambda"] = {k: alg.field.format(v) for k, v in inst.claimed.mapping().items()}
        out["options"] = options
        return out
    if inst.derivation is None:
        raise InstanceError("only instances with a multi-derivation can be exported")
    out["system"] = _system_to_spec(inst)
    f = alg.field.format
    if inst.claimed is not None:
        options["lambda"] = {k: f(v) for k, v in inst.claimed.mapping().items()}
    if inst.reference is not None:
        options["reference"] = [f(x) for x in inst.reference]
    if inst.hopf is not None:
        hopf = inst.hopf.hopf
        options["hopf"] = {"group_table": [list(r) for r in hopf.group_table],
                           "names": list(hopf.group_names), "subset": list(inst.hopf.subset)}
    if inst.inner_delta is not None:
        options["inner_delta"] = [[f(c) for c in x.vector()] for x in inst.inner_delta]
    out["options"] = options
    return out


def dumps(obj):
    """Deterministic JSON text."""
    return json.dumps(obj, indent=2, ensure_ascii=False, default=str) + "\n"


def load_instance(path, window=None):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON ({exc})") from None
    return instance_from_spec(spec, window)


def load_lambda(path, algebra):
    try:
        mapping = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot read lambda file {path}: {exc}") from None
    return _claimed(algebra, mapping)


def resolve(target, window=None):
    """A gallery name or a path to a spec file."""
    name = target.split(":", 1)[0]
    if name in gallery_names() or name == "supercircle" or target in gallery_names():
        return build(target, window)
    if not Path(target).exists():
        raise SpecError(f"{target!r} is neither a gallery instance ({', '.join(gallery_names())}) nor a file")
    return load_instance(target, window)
