"""Command-line front end.

Every subcommand reads an arrangement document, validates it against the
declared schema (unknown fields are rejected), and prints a result
envelope on stdout.  Output is deterministic for fixed input and flags;
wall time is only included when explicitly requested.

Exit codes: 0 success, 2 input validation failure, 1 internal error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction

import jsonschema

from hypertoric.arrangement import ArrangementError, StackyArrangement
from hypertoric.exactalg import ExactAlgError
from hypertoric.crring import CohomologyContext, CRClass, cr_presentation, ht_presentation, htt_presentation
from hypertoric.examples_data import SCHEMA_VERSION, example_document, example_names
from hypertoric.lawrence import lawrence_fan
from hypertoric.localize import (
    LocalizeError,
    WeightedModel,
    paper_table_p12,
    standard_table,
    steinberg_operator,
)
from hypertoric.multifan import box_elements, circuits
from hypertoric.quantum import (
    QuantumContext,
    differential_sign_report,
    minimal_curve_unit,
    qsr_circuit_relation_defect,
    qsr_presentation,
    quantum_divisor_product,
)
from hypertoric.svg import UnsupportedDimension, emit_svg

ARRANGEMENT_SCHEMA = {
    "type": "object",
    "properties": {
        "schema_version": {"type": "string", "const": SCHEMA_VERSION},
        "name": {"type": "string"},
        "rank": {"type": "integer", "minimum": 0},
        "torsion": {"type": "array", "items": {"type": "integer", "minimum": 2}},
        "beta": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "array", "items": {"type": "integer"}},
        },
        "theta": {"type": "array", "items": {"type": "integer"}},
        "psi": {"type": "array", "items": {"type": "integer"}},
    },
    "required": ["schema_version", "rank", "beta", "theta"],
    "additionalProperties": False,
}


class InputError(Exception):
    def __init__(self, message, path=""):
        super().__init__(message)
        self.path = path


def canonical_document(doc: dict) -> dict:
    out = {
        "schema_version": doc["schema_version"],
        "rank": doc["rank"],
        "torsion": list(doc.get("torsion", [])),
        "beta": [list(col) for col in doc["beta"]],
        "theta": list(doc["theta"]),
    }
    if "psi" in doc:
        out["psi"] = list(doc["psi"])
    if "name" in doc:
        out["name"] = doc["name"]
    return out


def load_document(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        raise InputError(f"input file not found: {path}", path="--input")
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e}", path="--input")
    validate_document(doc)
    return canonical_document(doc)


def validate_document(doc) -> None:
    validator = jsonschema.Draft202012Validator(ARRANGEMENT_SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: str(e.path))
    if errors:
        e = errors[0]
        path = "/".join(str(p) for p in e.path) or "(document)"
        raise InputError(e.message, path=path)


def build_arrangement(doc: dict) -> StackyArrangement:
    try:
        return StackyArrangement.from_data(doc)
    except (ArrangementError, ExactAlgError) as e:
        raise InputError(str(e), path="theta" if "generic" in str(e) else "(document)")


def document_hash(doc: dict) -> str:
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def envelope(command, doc, flags, payload, timing=None) -> dict:
    out = {
        "command": command,
        "input_hash": document_hash(doc),
        "flags": flags,
        "payload": payload,
    }
    if timing is not None:
        out["wall_time_ms"] = timing
    return out


def _frac(x) -> str:
    return str(Fraction(x))


# ---------------------------------------------------------------------------
# Payload builders


def payload_gale(arr: StackyArrangement) -> dict:
    bd = arr.beta_dual
    return {
        "dual_group": {
            "rank": bd.target.rank,
            "torsion": list(bd.target.torsion_invariants),
        },
        "matrix": [list(row) for row in bd.matrix.entries],
        "columns": [list(bd.column(j)) for j in range(arr.m)],
    }


def payload_circuits(arr: StackyArrangement) -> dict:
    out = []
    for c in circuits(arr):
        out.append(
            {
                "support": [i + 1 for i in c.support],
                "positive": [i + 1 for i in c.positive],
                "negative": [i + 1 for i in c.negative],
                "weights": list(c.weights),
                "beta_S": list(c.beta_S),
                "curve_class": list(c.h2_class),
                "lcm": c.lcm_w,
                "root_hyperplane": [i + 1 for i in c.root_hyperplane],
            }
        )
    return {"circuits": out}


def payload_box(arr: StackyArrangement) -> dict:
    out = []
    for b in box_elements(arr):
        out.append(
            {
                "v_free": list(b.v_free),
                "v_torsion": list(b.v_torsion),
                "cone": [i + 1 for i in b.sigma],
                "alphas": {str(i + 1): _frac(a) for i, a in b.alphas},
                "age": b.age,
            }
        )
    return {"box_elements": out}


def payload_core(arr: StackyArrangement) -> dict:
    out = []
    for chamber, fan in arr.core():
        out.append(
            {
                "flips": sorted(i + 1 for i in chamber.flips),
                "bounded": chamber.bounded,
                "vertices": [[_frac(x) for x in v] for v in chamber.vertices()],
                "normal_fan": {
                    "rays": [list(r) for r in fan.rays],
                    "max_cones": [list(c) for c in fan.max_cones],
                },
            }
        )
    return {"chambers": out, "psi_convention": list(arr.psi)}


def payload_fan(arr: StackyArrangement) -> dict:
    fan = lawrence_fan(arr)
    return {
        "lattice_rank": arr.d + arr.m,
        "rays": [
            {"label": fan.ray_label(r), "vector": list(fan.ray_vector(r))}
            for r in range(2 * arr.m)
        ],
        "max_cones": [
            {
                "rays": [fan.ray_label(r) for r in cone],
                "lattice_index": fan.cone_index(cone),
            }
            for cone in fan.max_cones
        ],
        "irrelevant_monomials": [list(mono) for mono in fan.irrelevant_monomials],
        "curve_basis": [list(v) for v in fan.h2_basis],
    }


def payload_cohomology(arr: StackyArrangement, sign: str) -> dict:
    ctx = CohomologyContext(arr)
    return {
        "torus_presentation": list(ht_presentation(ctx).texts()),
        "extended_presentation": list(htt_presentation(ctx).texts()),
        "chen_ruan_presentation": list(cr_presentation(ctx, box_square_sign=sign).texts()),
        "generators": list(cr_presentation(ctx, box_square_sign=sign).generators),
        "box_square_sign": sign,
    }


def _circuit_model(arr: StackyArrangement, index: int, convention: str):
    cs = circuits(arr)
    if not cs:
        raise InputError("arrangement has no circuits", path="--circuit")
    if not (1 <= index <= len(cs)):
        raise InputError(
            f"circuit index {index} out of range 1..{len(cs)}", path="--circuit"
        )
    weights = cs[index - 1].weights
    if convention == "paper":
        if tuple(weights) != (1, 2):
            raise InputError(
                "the paper convention table is defined only for weights (1, 2)",
                path="--convention",
            )
        model = WeightedModel((1, 2))
        return cs[index - 1], model, paper_table_p12()
    model = WeightedModel(weights)
    return cs[index - 1], model, standard_table(model)


def payload_localize(arr: StackyArrangement, index: int, convention: str) -> dict:
    circuit, model, table = _circuit_model(arr, index, convention)
    sectors_out = []
    for f, points in sorted(table.points.items()):
        sectors_out.append(
            {
                "sector": _frac(f),
                "points": [
                    {
                        "slot": p.slot + 1,
                        "multiplicity": _frac(p.multiplicity),
                        "tangent_weights": [str(t) for t in p.tangent_weights],
                        "euler": str(p.euler),
                        "restrictions": {k: str(v) for k, v in sorted(p.restrictions.items())},
                    }
                    for p in points
                ],
            }
        )
    return {
        "circuit": [i + 1 for i in circuit.support],
        "weights": list(model.weights),
        "convention": table.convention,
        "sectors": sectors_out,
    }


def payload_steinberg(arr: StackyArrangement, index: int, convention: str) -> dict:
    circuit, model, table = _circuit_model(arr, index, convention)
    fwd = steinberg_operator(model, table, "forward")
    inv = steinberg_operator(model, table, "inverse")
    out = {
        "circuit": [i + 1 for i in circuit.support],
        "weights": list(model.weights),
        "convention": table.convention,
        "sector_order": [_frac(f) for f in fwd.sector_order],
        "forward_matrix": [[str(e) for e in row] for row in fwd.matrix],
        "inverse_matrix": [[str(e) for e in row] for row in inv.matrix],
        "forward_injective": fwd.is_injective(),
        "inverse_of_forward_is_identity": fwd.is_identity_matrix(inv.compose(fwd)),
    }
    if fwd.generator_images:
        out["forward_images"] = {
            k: {s: str(c) for s, c in v.items()} for k, v in fwd.generator_images.items()
        }
        out["inverse_images"] = {
            k: {s: str(c) for s, c in v.items()} for k, v in inv.generator_images.items()
        }
    return out


def _series_payload(series) -> list:
    out = []
    for key, cls in series.terms:
        sectors = []
        for box, poly in cls.components:
            sectors.append({"sector": box.label(), "value": str(poly)})
        out.append({"q_exponents": list(key), "coefficient": sectors})
    return out


def payload_quantum(arr: StackyArrangement, i: int, j: int, order: int, convention: str) -> dict:
    qctx = QuantumContext(arr)
    ctx = qctx.context
    if not (1 <= i <= arr.m and 1 <= j <= arr.m):
        raise InputError("divisor indices must be in 1..m", path="--divisor")
    x = CRClass.untwisted(ctx, ctx.u(j - 1))
    payload = {
        "divisor": i,
        "with": j,
        "max_q_order": order,
        "circuit_novikov_variables": [
            {"circuit": [t + 1 for t in c.support], "lcm": c.lcm_w}
            for c in ctx.circuits
        ],
    }
    if convention == "all":
        payload["series"] = {
            conv: _series_payload(quantum_divisor_product(qctx, i - 1, x, order, conv))
            for conv in ("example-calibrated", "theorem-1.2-literal", "eq-5.2-literal")
        }
        payload["differential_sign_report"] = [
            {
                "circuit": [t + 1 for t in entry["circuit"]],
                "residue": entry["residue"],
                "first_divergence_from_calibrated": entry[
                    "first_divergence_from_calibrated"
                ],
            }
            for entry in differential_sign_report(qctx, order)
        ]
    else:
        series = quantum_divisor_product(qctx, i - 1, x, order, convention)
        payload["series"] = _series_payload(series)
        payload["sign_convention"] = convention
    return payload


def payload_qsr(arr: StackyArrangement, order: int) -> dict:
    qctx = QuantumContext(arr)
    fan, rels = qsr_presentation(qctx, order=order)
    checks = []
    for c in qctx.context.circuits:
        defect = qsr_circuit_relation_defect(qctx, fan, c, order)
        checks.append(
            {
                "circuit": [t + 1 for t in c.support],
                "eliminated_relation_vanishes": defect.is_zero(),
            }
        )
    if qctx.context.circuits:
        unit = [_frac(x) for x in minimal_curve_unit(fan)]
    else:
        unit = None  # no compact curves at all
    return {
        "relations": [str(r) for r in rels],
        "relation_count": len(rels),
        "minimal_curve_degree": unit,
        "circuit_relation_checks": checks,
        "max_q_order": order,
    }


# ---------------------------------------------------------------------------
# Text rendering


def render_text(command: str, payload: dict) -> str:
    lines = [f"# {command}"]

    def walk(obj, indent=0):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)):
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {v}")
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, (dict, list)):
                    lines.append(f"{pad}-")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}- {v}")

    walk(payload)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Driver


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hypertoric")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, needs_input=True):
        if needs_input:
            sp.add_argument("--input", required=True)
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--timing", action="store_true")

    common(sub.add_parser("gale"))
    common(sub.add_parser("circuits"))
    common(sub.add_parser("box"))
    core = sub.add_parser("core")
    common(core)
    core.add_argument("--svg")
    common(sub.add_parser("fan"))
    coh = sub.add_parser("cohomology")
    common(coh)
    coh.add_argument("--convention", choices=("paper", "literal"), default="paper")
    loc = sub.add_parser("localize")
    common(loc)
    loc.add_argument("--circuit", type=int, default=1)
    loc.add_argument("--convention", choices=("standard", "paper"), default="standard")
    st = sub.add_parser("steinberg")
    common(st)
    st.add_argument("--circuit", type=int, default=1)
    st.add_argument("--convention", choices=("standard", "paper"), default="standard")
    qd = sub.add_parser("quantum-divisor")
    common(qd)
    qd.add_argument("--divisor", type=int, required=True)
    qd.add_argument("--with", dest="with_", type=int, required=True)
    qd.add_argument("--max-q-order", type=int, default=6)
    qd.add_argument(
        "--sign-convention",
        choices=("example-calibrated", "theorem-1.2-literal", "eq-5.2-literal", "all"),
        default="example-calibrated",
    )
    qsr = sub.add_parser("qsr")
    common(qsr)
    qsr.add_argument("--max-q-order", type=int, default=6)
    ex = sub.add_parser("examples")
    common(ex, needs_input=False)
    ex.add_argument("--list", action="store_true")
    ex.add_argument("--show")
    ex.add_argument("--write-dir")
    return p


def run(argv) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.monotonic()
    try:
        if args.command == "examples":
            doc = {"schema_version": SCHEMA_VERSION, "rank": 0, "beta": [[]], "theta": []}
            if args.show:
                try:
                    payload = example_document(args.show)
                except KeyError as e:
                    raise InputError(str(e), path="--show")
            elif args.write_dir:
                import os

                os.makedirs(args.write_dir, exist_ok=True)
                written = []
                for name in example_names():
                    target = os.path.join(args.write_dir, f"{name}.json")
                    with open(target, "w", encoding="utf-8") as fh:
                        json.dump(example_document(name), fh, indent=2, sort_keys=True)
                        fh.write("\n")
                    written.append(target)
                payload = {"written": written}
            else:
                payload = {"examples": list(example_names())}
            flags = {"format": args.format}
            env = envelope("examples", payload if args.show else doc, flags, payload)
            _print(env, args)
            return 0

        doc = load_document(args.input)
        arr = build_arrangement(doc)
        flags = {"format": args.format}
        if args.command == "gale":
            payload = payload_gale(arr)
        elif args.command == "circuits":
            payload = payload_circuits(arr)
        elif args.command == "box":
            payload = payload_box(arr)
        elif args.command == "core":
            payload = payload_core(arr)
            if args.svg:
                try:
                    emit_svg(arr, args.svg)
                except UnsupportedDimension as e:
                    raise InputError(str(e), path="--svg")
                payload["svg"] = args.svg
                flags["svg"] = args.svg
        elif args.command == "fan":
            payload = payload_fan(arr)
        elif args.command == "cohomology":
            flags["convention"] = args.convention
            payload = payload_cohomology(arr, args.convention)
        elif args.command == "localize":
            flags["convention"] = args.convention
            flags["circuit"] = args.circuit
            payload = payload_localize(arr, args.circuit, args.convention)
        elif args.command == "steinberg":
            flags["convention"] = args.convention
            flags["circuit"] = args.circuit
            payload = payload_steinberg(arr, args.circuit, args.convention)
        elif args.command == "quantum-divisor":
            flags["sign_convention"] = args.sign_convention
            flags["max_q_order"] = args.max_q_order
            payload = payload_quantum(
                arr, args.divisor, args.with_, args.max_q_order, args.sign_convention
            )
        elif args.command == "qsr":
            flags["max_q_order"] = args.max_q_order
            payload = payload_qsr(arr, args.max_q_order)
        else:  # pragma: no cover
            raise InputError(f"unknown command {args.command}")
        timing = int((time.monotonic() - start) * 1000) if args.timing else None
        env = envelope(args.command, doc, flags, payload, timing)
        _print(env, args)
        return 0
    except InputError as e:
        sys.stdout.write(
            json.dumps(
                {"error": {"message": str(e), "path": e.path}}, sort_keys=True
            )
            + "\n"
        )
        return 2
    except (ArrangementError, LocalizeError, ExactAlgError) as e:
        sys.stdout.write(
            json.dumps(
                {"error": {"message": str(e), "path": "(input data)"}}, sort_keys=True
            )
            + "\n"
        )
        return 2
    except Exception as e:  # internal error
        sys.stderr.write(f"internal error: {e}\n")
        return 1


def _print(env: dict, args) -> None:
    if args.format == "text":
        sys.stdout.write(render_text(env["command"], env["payload"]))
    else:
        sys.stdout.write(json.dumps(env, indent=2, sort_keys=True) + "\n")


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
