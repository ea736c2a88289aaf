"""Operations with reproducible JSON certificates.

Each operation takes JSON inputs and parameters and returns an
:class:`Outcome`. Certificates embed the inputs, so :func:`verify_certificate`
can recompute the operation and compare payload and verdict.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Mapping

from . import __version__
from ._order import thaw
from .errors import (BoundExceeded, DimensionMismatch, FactorizationFailed, IllComposed, NoUniversalObject,
                     NotAKanExtension, PreconditionFailed, RelationFailed, StructuralError)
from .fincat import CatFunctor, FinCategory, validate
from .prof import (Cell, ProbeBound, Profunctor, compose_prof, tabulate, validate_cell, validate_profunctor)

EXIT_OK, EXIT_STRUCTURAL, EXIT_AXIOM, EXIT_NONEXISTENCE, EXIT_IO = 0, 1, 2, 3, 4


class SchemaError(Exception):
    """Input does not have the shape an operation expects."""


@dataclass
class Outcome:
    payload: Any
    verdict: str
    exit_code: int
    probe_log: list = field(default_factory=list)
    witness: Any = None


def canonical_json(obj: Any) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, separators=(",", ":"))


def digest(obj: Any) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()


def jsonable(x: Any) -> Any:
    """Plain JSON values: tuples become lists, sets sorted lists, objects their ``to_json``."""
    if hasattr(x, "to_json"):
        return jsonable(x.to_json())
    if isinstance(x, Mapping):
        return {str(k) if not isinstance(k, str) else k: jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return thaw(x)
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    return repr(x)


def dumps_certificate(cert: Mapping) -> str:
    return json.dumps(jsonable(cert), sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Loaders
# ---------------------------------------------------------------------------


def _need(data: Any, *keys: str) -> None:
    if not isinstance(data, Mapping):
        raise SchemaError("expected a JSON object")
    missing = [k for k in keys if k not in data]
    if missing:
        raise SchemaError(f"missing keys: {', '.join(missing)}")


def load_category(data: Any) -> FinCategory:
    _need(data, "objects", "morphisms", "identities")
    return FinCategory.from_json(data)


def load_functor(data: Any) -> CatFunctor:
    """A functor file carries its categories under ``src`` and ``tgt``."""
    _need(data, "src", "tgt", "on_objects", "on_morphisms")
    return CatFunctor.from_json(data, load_category(data["src"]), load_category(data["tgt"]))


def load_profunctor(data: Any) -> Profunctor:
    _need(data, "src", "tgt", "elements")
    return Profunctor.from_json(data, load_category(data["src"]), load_category(data["tgt"]))


def load_cell(data: Any) -> Cell:
    """``source`` and ``target`` profunctors, functor tables ``f`` and ``g``, and ``components``."""
    _need(data, "source", "target", "f", "g", "components")
    J, K = load_profunctor(data["source"]), load_profunctor(data["target"])
    f = CatFunctor.from_json(data["f"], J.src, K.src)
    g = CatFunctor.from_json(data["g"], J.tgt, K.tgt)
    return Cell.from_json(data, J, K, f, g)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def _report_outcome(rep, fail_code: int = EXIT_STRUCTURAL) -> Outcome:
    v = rep.violations[0].to_json() if rep.violations else None
    return Outcome(rep.to_json(), "ok" if rep.ok else "fail", EXIT_OK if rep.ok else fail_code, witness=v)


def op_check(inputs: Mapping, params: Mapping) -> Outcome:
    kind = params.get("kind")
    data = inputs["entity"]
    if kind == "category":
        return _report_outcome(validate(load_category(data)))
    if kind == "functor":
        return _report_outcome(validate(load_functor(data)))
    if kind == "profunctor":
        return _report_outcome(validate_profunctor(load_profunctor(data)))
    if kind == "cell":
        return _report_outcome(validate_cell(load_cell(data)))
    if kind == "monoidal":
        from .monad import MonoidalCategoryData, check_algebra
        _need(data, "base")
        base = load_category(data["base"])
        rep = check_algebra(MonoidalCategoryData.from_json(data, base), exhaustive=bool(params.get("exhaustive")))
        return _report_outcome(rep, EXIT_AXIOM)
    raise SchemaError(f"unknown entity kind {kind!r}")


def op_compose(inputs: Mapping, params: Mapping) -> Outcome:
    J, H = load_profunctor(inputs["left"]), load_profunctor(inputs["right"])
    if J.tgt != H.src:
        raise IllComposed("the target of the first profunctor is not the source of the second")
    P, Q = compose_prof(J, H)
    rep = validate_profunctor(P)
    return Outcome({"composite": P.to_json(), "presentation": Q.to_json(), "validation": rep.to_json()},
                   "ok" if rep.ok else "fail", EXIT_OK if rep.ok else EXIT_AXIOM)


def op_kan(inputs: Mapping, params: Mapping) -> Outcome:
    from .kan import check_kan, kan_extend
    d = load_functor(inputs["diagram"])
    J = load_profunctor(inputs["along"])
    if "target" in inputs:
        M = load_category(inputs["target"])
        d = CatFunctor(d.src, M, d.on_objects, d.on_morphisms)
    direction = params.get("direction", "left")
    try:
        cert = kan_extend(d, J, direction)
    except NoUniversalObject as exc:
        return Outcome({"direction": direction}, "nonexistent", EXIT_NONEXISTENCE,
                       witness={"universal_property": "weighted colimit" if direction == "left" else "weighted limit",
                                "detail": str(exc)})
    bound = ProbeBound(params.get("probe_size", 2), params.get("probe_size", 2))
    rep = check_kan(cert, bound)
    payload = {"certificate": cert.to_json(), "check": rep}
    if rep["ok"]:
        return Outcome(payload, "ok", EXIT_OK, probe_log=cert.probe_log)
    return Outcome(payload, "fail", EXIT_AXIOM, probe_log=cert.probe_log,
                   witness={"universal_property": "Kan extension", "report": rep})


def op_tabulate(inputs: Mapping, params: Mapping) -> Outcome:
    J = load_profunctor(inputs["profunctor"])
    k = params.get("probe_size", 2)
    tab = tabulate(J, ProbeBound(k, k))
    payload = {"category": tab.category.to_json(), "report": tab.report}
    if tab.report.get("ok"):
        return Outcome(payload, "ok", EXIT_OK)
    failed = [key for key, v in tab.report.items() if isinstance(v, dict) and not v.get("ok", True)]
    return Outcome(payload, "fail", EXIT_AXIOM, witness={"universal_property": "tabulation", "failed": failed})


def op_lift(inputs: Mapping, params: Mapping) -> Outcome:
    from .kan import kan_extend
    from .monad import (joins, lift_kan, meets, thin_monoidal, thin_monoidal_functor, thin_monoidal_profunctor,
                        thin_probe_cells)
    d = load_functor(inputs["diagram"])
    J = load_profunctor(inputs["along"])
    N = int(params.get("arity", 3))
    mode = params.get("mode", "lax")

    def structure(C, op):
        if op not in ("join", "meet"):
            raise SchemaError(f"unknown tensor {op!r}; use join or meet")
        return thin_monoidal(C, joins(C) if op == "join" else meets(C), N, name=f"({C.name},{op})")

    Ad = structure(J.src, params.get("a_tensor", "join"))
    Bd = structure(J.tgt, params.get("b_tensor", "join"))
    Md = structure(d.tgt, params.get("m_tensor", "join"))
    want = {"lax": "lax", "colax": "colax", "pseudo": "pseudo"}[mode]
    dd = thin_monoidal_functor(d, Ad, Md, "pseudo") or thin_monoidal_functor(d, Ad, Md, want)
    if dd is None:
        raise StructuralError(f"d has no {want} monoidal structure")
    Jd = thin_monoidal_profunctor(J, Ad, Bd)
    try:
        cert = kan_extend(d, J, "left")
    except NoUniversalObject as exc:
        return Outcome({"mode": mode}, "nonexistent", EXIT_NONEXISTENCE, witness={"detail": str(exc)})
    probes = thin_probe_cells(cert, Jd, dd, Md, "colax" if mode == "colax" else "lax",
                              limit=params.get("probe_limit", 5))
    try:
        _, report = lift_kan(cert, Jd, dd, Md, mode, probes=probes)
    except PreconditionFailed as exc:
        return Outcome({"mode": mode, "arity": N}, "precondition_failed", EXIT_AXIOM,
                       witness={"condition": exc.condition, "detail": str(exc), "witness": exc.witness})
    except FactorizationFailed as exc:
        return Outcome({"mode": mode, "arity": N}, "factorization_failed", EXIT_AXIOM,
                       witness={"detail": str(exc)})
    report["bounded_arity"] = N
    ok = bool(report["ok"])
    return Outcome(report, "ok" if ok else "fail", EXIT_OK if ok else EXIT_AXIOM,
                   probe_log=report.get("probes", []),
                   witness=None if ok else {"universal_property": "lifted monoidal structure"})


def op_prop(inputs: Mapping, params: Mapping) -> Outcome:
    from . import props
    action = params.get("action")
    if action == "bc-factor":
        xi = props.HMorphism.parse(params["matrix"], params.get("cols"))
        f = props.bc_factorize(xi, _split(params["split"]))
        return Outcome(f.to_json(), "ok", EXIT_OK)
    if action == "bc-relate":
        split = _split(params["split"])
        blocks = [props.HMorphism.parse(b, params.get("block_cols", [None] * len(split))[i])
                  for i, b in enumerate(params["blocks"])]
        zeta = props.HMorphism.parse(params["zeta"], params.get("cols"))
        xi = props.HMorphism.parse(params["matrix"], zeta.cols) if params.get("matrix") else None
        try:
            rel = props.bc_relate((blocks, zeta), split, xi)
        except RelationFailed as exc:
            return Outcome({"split": list(split)}, "fail", EXIT_AXIOM,
                           witness={"relation": str(exc), "block": exc.block})
        return Outcome(rel.to_json(), "ok", EXIT_OK)
    if action == "hopf":
        G = props.parse_group(params["group"]) if isinstance(params["group"], str) else _table_group(params["group"])
        gv = G.validate()
        if not gv.ok:
            return _report_outcome(gv, EXIT_STRUCTURAL)
        rep = props.check_hopf_axioms(props.algebra_from_group(G, int(params.get("arity", 3))))
        return _report_outcome(rep, EXIT_AXIOM)
    if action == "adjunction":
        G = props.parse_group(params["group"]) if isinstance(params["group"], str) else _table_group(params["group"])
        c = props.adjunction_check(tuple(params.get("basis", [])), G)
        ok = c.bijective and c.composites_identity
        return Outcome(c.to_json(), "ok" if ok else "fail", EXIT_OK if ok else EXIT_AXIOM,
                       witness=None if ok else {"universal_property": "free Hopf adjunction"})
    if action == "coend":
        p = (props.HMorphism.parse(params["left"], len(params["left_labels"])), tuple(params["left_labels"]))
        q = (props.HMorphism.parse(params["right"], len(params["right_labels"])), tuple(params["right_labels"]))
        v = props.coend_equiv(p, q, depth=int(params.get("depth", 4)))
        payload = {"verdict": v.to_json(), "normal_forms": [props.coend_normal_form(p).format(),
                                                            props.coend_normal_form(q).format()]}
        return Outcome(payload, v.kind, EXIT_OK)
    raise SchemaError(f"unknown prop action {action!r}")


def _split(s) -> tuple:
    if isinstance(s, str):
        try:
            return tuple(int(v) for v in s.split(",") if v.strip())
        except ValueError as exc:
            raise StructuralError(f"bad split syntax {s!r}") from exc
    return tuple(int(v) for v in s)


def _table_group(data: Mapping):
    """``{"elements": [...], "zero": z, "add": [[a, b, c], ...]}``."""
    from .props import FiniteAbGroup
    _need(data, "elements", "add")
    els = list(data["elements"])
    add = {(a, b): c for a, b, c in data["add"]}
    zero = data.get("zero", els[0] if els else None)
    neg = {}
    for a in els:
        inv = [b for b in els if add.get((a, b)) == zero]
        if len(inv) != 1:
            raise StructuralError(f"element {a!r} has no unique inverse")
        neg[a] = inv[0]
    return FiniteAbGroup(els, add, zero, neg, name=data.get("name", "G"))


OPERATIONS: dict = {
    "check": op_check,
    "compose": op_compose,
    "kan": op_kan,
    "tabulate": op_tabulate,
    "lift": op_lift,
    "prop": op_prop,
}

# errors that make a run structural (exit 1) rather than I/O or schema (exit 4)
STRUCTURAL = (StructuralError, DimensionMismatch, IllComposed, BoundExceeded, NotAKanExtension)


def run_operation(operation: str, inputs: Mapping, params: Mapping) -> Outcome:
    if operation not in OPERATIONS:
        raise SchemaError(f"unknown operation {operation!r}")
    try:
        return OPERATIONS[operation](inputs, params)
    except STRUCTURAL as exc:
        return Outcome({"error": type(exc).__name__}, "structural_error", EXIT_STRUCTURAL,
                       witness={"detail": str(exc)})


def build_certificate(operation: str, inputs: Mapping, params: Mapping, outcome: Outcome) -> dict:
    return {
        "tool": "profcalc",
        "version": __version__,
        "operation": operation,
        "inputs": {k: {"digest": digest(v), "data": jsonable(v)} for k, v in sorted(inputs.items())},
        "parameters": jsonable(params),
        "payload": jsonable(outcome.payload),
        "probe_log": jsonable(outcome.probe_log),
        "verdict": outcome.verdict,
        "exit_code": outcome.exit_code,
        "witness": jsonable(outcome.witness),
    }


def certify(operation: str, inputs: Mapping, params: Mapping) -> tuple[dict, int]:
    outcome = run_operation(operation, inputs, params)
    return build_certificate(operation, inputs, params, outcome), outcome.exit_code


def _diff(a: Any, b: Any, path: str = "") -> list:
    if isinstance(a, dict) and isinstance(b, dict):
        out = []
        for k in sorted(set(a) | set(b)):
            if k not in a or k not in b:
                out.append(f"{path}/{k}: present on one side only")
            else:
                out.extend(_diff(a[k], b[k], f"{path}/{k}"))
        return out
    if isinstance(a, list) and isinstance(b, list) and len(a) == len(b):
        out = []
        for i, (x, y) in enumerate(zip(a, b)):
            out.extend(_diff(x, y, f"{path}[{i}]"))
        return out
    return [] if a == b else [f"{path}: {canonical_json(a)[:120]} != {canonical_json(b)[:120]}"]


def verify_certificate_data(cert: Any) -> tuple[int, list]:
    """Recompute ``cert`` and compare everything except the tool version."""
    _need(cert, "operation", "inputs", "parameters", "payload", "verdict")
    inputs = {}
    for k, v in cert["inputs"].items():
        _need(v, "data", "digest")
        if digest(v["data"]) != v["digest"]:
            return EXIT_AXIOM, [f"/inputs/{k}: digest does not match embedded data"]
        inputs[k] = v["data"]
    fresh = build_certificate(cert["operation"], inputs, cert["parameters"],
                              run_operation(cert["operation"], inputs, cert["parameters"]))
    keys = ("operation", "inputs", "parameters", "payload", "probe_log", "verdict", "exit_code", "witness")
    diff = _diff({k: cert.get(k) for k in keys}, {k: fresh.get(k) for k in keys})
    return (EXIT_OK if not diff else EXIT_AXIOM), diff
