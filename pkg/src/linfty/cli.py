"""Command-line front end: ``linfty verify|bracket|cohomology|classify|deform|tables``.

Input is a JSON document::

    {
      "space": "0|3",
      "field": "Q(i)",
      "parameters": [{"name": "lambda", "parity": "even"}],
      "terms": [{"word": "101", "target": 1, "coefficient": "1"},
                {"word": "011", "target": 2, "coefficient": "lambda"}],
      "basis_override": {"2": ["phi[011]_2"]},
      "complement_override": {"2": ["phi[011]_3", "phi[110]_2"]}
    }

``parameters``, ``basis_override`` and ``complement_override`` are optional.
Exit codes: 0 success, 1 usage or parse error, 2 semantic error,
3 deformation did not terminate.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import ParameterList, Parameter, Scalar, SuperPolynomial, format_polynomial
from .classify import SPACE as ODD3, classify, violated_equations
from .cochain import (
    Cochain,
    ElementaryMap,
    bracket,
    format_cochain,
    is_codifferential,
    map_basis,
)
from .cohomology import cohomology_data
from .deform import DEFAULT_MAX_ORDER, DEFAULT_TRUNCATION, miniversal, verify_miniversal
from .errors import LinftyError, ParseError
from .superspace import GradedSpace, exponent_string, parse_word

FIELD = "Q(i)"
COMMANDS = ("verify", "bracket", "cohomology", "classify", "deform", "tables")

EXIT_OK, EXIT_USAGE, EXIT_SEMANTIC, EXIT_NONTERMINATION = 0, 1, 2, 3
_USAGE_CODES = {"E_USAGE", "E_PARSE", "E_OPTION"}


# ---------------------------------------------------------------------------
# documents


@dataclass
class CodifferentialDocument:
    space: GradedSpace
    cochain: Cochain
    basis_override: dict[int, list[Cochain]] = field(default_factory=dict)
    complement_override: dict[int, list[ElementaryMap]] = field(default_factory=dict)

    @property
    def ring(self) -> ParameterList:
        return self.cochain.ring


def _json_error(msg: str) -> ParseError:
    return ParseError(msg, code="E_DOCUMENT", module="cli")


def _parse_ring(items) -> ParameterList:
    params = []
    for item in items or []:
        if isinstance(item, str):
            params.append(Parameter.from_name(item))
            continue
        parity = item.get("parity")
        if parity not in (None, "even", "odd"):
            raise _json_error(f"parameter parity must be 'even' or 'odd', got {parity!r}")
        params.append(Parameter.from_name(item["name"], None if parity is None else int(parity == "odd")))
    return ParameterList(tuple(params))


def _parse_weight_map(raw, convert) -> dict[int, list]:
    out = {}
    for key, items in (raw or {}).items():
        try:
            n = int(key)
        except ValueError:
            raise _json_error(f"override weight {key!r} is not an integer") from None
        out[n] = [convert(x) for x in items]
    return out


def _parse_elementary(space: GradedSpace, text: str) -> ElementaryMap:
    c = Cochain.parse(text, space)
    if len(c) != 1 or list(c.terms.values())[0] != 1:
        raise _json_error(f"{text!r} is not a single elementary map")
    return next(iter(c.terms))


def parse_document(data: dict) -> CodifferentialDocument:
    if not isinstance(data, dict):
        raise _json_error("document must be a JSON object")
    for key in ("space", "terms"):
        if key not in data:
            raise _json_error(f"document lacks {key!r}")
    if data.get("field", FIELD) != FIELD:
        raise _json_error(f"unsupported field {data['field']!r}; only {FIELD} is available")
    space = GradedSpace.parse(data["space"])
    ring = _parse_ring(data.get("parameters"))
    terms: dict[ElementaryMap, SuperPolynomial] = {}
    for k, term in enumerate(data["terms"]):
        try:
            word = parse_word(space, str(term["word"]))
            target = int(term["target"])
        except KeyError as exc:
            raise _json_error(f"term {k} lacks {exc.args[0]!r}") from None
        if not 1 <= target <= space.dim:
            raise _json_error(f"term {k}: target {target} out of range for {space}")
        coef = SuperPolynomial.parse(str(term.get("coefficient", "1")), ring)
        phi = ElementaryMap(word, target - 1)
        terms[phi] = terms[phi] + coef if phi in terms else coef
    cochain = Cochain(space, terms, ring)
    overrides = _parse_weight_map(data.get("basis_override"), lambda s: Cochain.parse(s, space))
    complements = _parse_weight_map(data.get("complement_override"),
                                    lambda s: _parse_elementary(space, s))
    return CodifferentialDocument(space, cochain, overrides, complements)


def _coefficient_text(p: SuperPolynomial) -> str:
    return format_polynomial(p)


def dump_document(doc: CodifferentialDocument) -> dict:
    out: dict = {"space": str(doc.space), "field": FIELD}
    if doc.ring.params:
        out["parameters"] = [
            {"name": p.name, "parity": "odd" if p.parity else "even"} for p in doc.ring.params
        ]
    out["terms"] = [
        {"word": exponent_string(phi.source), "target": phi.target + 1,
         "coefficient": _coefficient_text(c)}
        for phi, c in doc.cochain.sorted_items()
    ]
    if doc.basis_override:
        out["basis_override"] = {
            str(n): [format_cochain(c) for c in reps] for n, reps in sorted(doc.basis_override.items())
        }
    if doc.complement_override:
        out["complement_override"] = {
            str(n): [phi.name() for phi in maps] for n, maps in sorted(doc.complement_override.items())
        }
    return out


def load_document(path: str) -> CodifferentialDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", code="E_IO", module="cli") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", line=exc.lineno, column=exc.colno,
                         code="E_JSON", module="cli") from None
    return parse_document(data)


def specialize(doc: CodifferentialDocument, value: Scalar | None) -> CodifferentialDocument:
    """Substitute ``value`` for the single even parameter (``--lambda``)."""
    if value is None:
        return doc
    params = doc.ring.params
    if len(params) != 1 or params[0].parity:
        raise LinftyError("--lambda needs a document with exactly one even parameter",
                          code="E_OPTION", module="cli")
    name = params[0].name
    empty = ParameterList()
    cochain = doc.cochain.map_coefficients_poly(lambda p: p.substitute({name: value}, empty))
    cochain = Cochain(doc.space, cochain.terms, empty)
    return CodifferentialDocument(doc.space, cochain, doc.basis_override, doc.complement_override)


# ---------------------------------------------------------------------------
# commands


@dataclass
class Report:
    command: str
    inputs: dict
    results: dict



def cmd_verify(doc: CodifferentialDocument, args) -> dict:
    d = doc.cochain
    ok = is_codifferential(d)
    out: dict = {"codifferential": ok}
    if not ok:
        if doc.space == ODD3 and d.weights() <= {2} and d.is_parameter_free():
            out["violated"] = [
                {"equation": eq, "value": str(v)} for eq, v in violated_equations(d)
            ]
        else:
            half = bracket(d, d).map_coefficients_poly(lambda p: p.scale(Scalar(1) / 2))
            out["half_square"] = format_cochain(half)
    return out


def _cochain_option(texts, space, ring) -> list[Cochain]:
    return [Cochain.parse(t, space, ring) for t in texts or []]


def cmd_bracket(doc: CodifferentialDocument | None, args) -> dict:
    space = doc.space if doc else GradedSpace.parse(args.space)
    ring = doc.ring if doc else ParameterList()
    operands = _cochain_option(args.cochain, space, ring)
    if doc is not None:
        operands = [doc.cochain] + operands
    if len(operands) == 1:
        operands = operands * 2
    if len(operands) != 2:
        raise LinftyError("bracket needs two cochains (the input document counts as one)",
                          code="E_OPTION", module="cli")
    a, b = operands
    return {"left": format_cochain(a), "right": format_cochain(b),
            "bracket": format_cochain(bracket(a, b))}


def _report_for(doc, args):
    return cohomology_data(doc.cochain, doc.basis_override or None,
                           complement_override=doc.complement_override or None)


def cmd_cohomology(doc: CodifferentialDocument, args) -> dict:
    report = _report_for(doc, args)
    dims = report.dims()
    weights = []
    for n in sorted(report.weights):
        wd = report.weights[n]
        weights.append({
            "weight": n,
            "dim": wd.dim,
            "z": wd.z,
            "b": wd.b,
            "h": wd.h,
            "representatives": [format_cochain(r) for r in wd.representatives],
            "complement": [phi.name() for phi in wd.complement],
        })
    return {"h": list(dims["h"]), "z": list(dims["z"]), "b": list(dims["b"]), "weights": weights}


def cmd_classify(doc: CodifferentialDocument, args) -> dict:
    return classify(doc.cochain).to_dict()


def cmd_deform(doc: CodifferentialDocument, args) -> dict:
    result = miniversal(doc.cochain, doc.basis_override or None, max_order=args.max_order,
                        truncation=args.truncation,
                        complement_override=doc.complement_override or None)
    out = result.to_dict()
    out["verified"] = verify_miniversal(result) if result.terminated else False
    return out


def coboundary_rows(d: Cochain) -> list[tuple[str, str]]:
    """``(phi, D(phi))`` for every elementary map of weight 1 up to the top weight."""
    space, ring = d.space, d.ring
    top = space.max_weight or 2
    rows = []
    for n in range(1, top + 1):
        for phi in map_basis(space, n):
            image = bracket(Cochain.elementary(space, phi, ring), d)
            rows.append((phi.name(), format_cochain(image)))
    return rows


def cmd_tables(doc: CodifferentialDocument, args) -> dict:
    return {"rows": [{"map": m, "image": img} for m, img in coboundary_rows(doc.cochain)]}


HANDLERS = {
    "verify": cmd_verify,
    "bracket": cmd_bracket,
    "cohomology": cmd_cohomology,
    "classify": cmd_classify,
    "deform": cmd_deform,
    "tables": cmd_tables,
}


def run_command(command: str, doc: CodifferentialDocument | None, args) -> Report:
    if command not in HANDLERS:
        raise LinftyError(f"unknown command {command!r}", code="E_USAGE", module="cli")
    inputs = dump_document(doc) if doc is not None else {}
    return Report(command, inputs, HANDLERS[command](doc, args))


# ---------------------------------------------------------------------------
# rendering


def _text_lines(report: Report) -> list[str]:
    r = report.results
    cmd = report.command
    if cmd == "verify":
        lines = [f"codifferential: {'yes' if r['codifferential'] else 'no'}"]
        for v in r.get("violated", []):
            lines.append(f"violated: {v['equation']}  (value {v['value']})")
        if "half_square" in r:
            lines.append(f"[d,d]/2 = {r['half_square']}")
        return lines
    if cmd == "bracket":
        return [f"[{r['left']}, {r['right']}] = {r['bracket']}"]
    if cmd == "cohomology":
        lines = ["weight  dim  z  b  h"]
        for w in r["weights"]:
            lines.append(f"{w['weight']:>6}  {w['dim']:>3}  {w['z']}  {w['b']}  {w['h']}")
        lines.append("h = (" + ",".join(str(x) for x in r["h"]) + ")")
        for w in r["weights"]:
            for rep in w["representatives"]:
                lines.append(f"H^{w['weight']}: {rep}")
        return lines
    if cmd == "classify":
        lines = [f"class: {r['tag']}"]
        if r["tag"] == "d_family":
            lines.append(f"j: {r['j']}")
            lam = r["lambda"]
            lines.append("lambda: " + ("not split over Q(i)" if lam is None else f"{lam[0]} ~ {lam[1]}"))
        return lines
    if cmd == "deform":
        lines = [
            "terminated: " + ("yes" if r["terminated"] else "no"),
            f"termination order: {r['termination_order'] if r['terminated'] else '-'}",
            "parameters:",
        ]
        for p in r["parameters"]:
            lines.append(f"  {p['name']} ({p['parity']}, H^{p['weight']}): {p['representative']}")
        for c in r["corrections"]:
            lines.append(f"correction at order {c['order']}: {c['terms']}")
        lines.append(f"deformation: {r['deformation']}")
        rel = r["relations"]
        lines.append("relations: " + ("(0)" if not rel else "(" + ", ".join(rel) + ")"))
        if r["terminated"]:
            lines.append(f"verified: {'yes' if r['verified'] else 'no'}")
        return lines
    if cmd == "tables":
        return [f"D({row['map']}) = {row['image']}" for row in r["rows"]]
    return [json.dumps(r, sort_keys=True)]


def render_report(report: Report, fmt: str = "text") -> str:
    if fmt == "json":
        doc = {"command": report.command, "input": report.inputs, "result": report.results}
        return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    return "\n".join(_text_lines(report)) + "\n"


# ---------------------------------------------------------------------------
# entry point


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="linfty", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", help="codifferential document (JSON)")
    parser.add_argument("--lambda", dest="lam", metavar="Q",
                        help="value for the document's single even parameter")
    parser.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    parser.add_argument("--truncation", type=int, default=DEFAULT_TRUNCATION,
                        help="drop parameter monomials above this degree")
    parser.add_argument("--basis-override", metavar="FILE",
                        help="JSON object mapping weights to cohomology representatives")
    parser.add_argument("--cochain", action="append",
                        help="inline cochain such as 'phi[101]_1 + (-1)*phi[011]_2'")
    parser.add_argument("--space", default="0|3", help="space for inline cochains without --input")
    parser.add_argument("--format", choices=("json", "text"), default="text")
    return parser


def _load_overrides(path: str, space: GradedSpace) -> dict[int, list[Cochain]]:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", code="E_IO", module="cli") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", line=exc.lineno, column=exc.colno,
                         code="E_JSON", module="cli") from None
    if isinstance(raw, dict) and "basis_override" in raw:
        raw = raw["basis_override"]
    return _parse_weight_map(raw, lambda s: Cochain.parse(s, space))


def _prepare(args) -> CodifferentialDocument | None:
    if args.input is None:
        if args.command == "bracket":
            return None
        if not args.cochain:
            raise LinftyError(f"{args.command} needs --input or --cochain",
                              code="E_USAGE", module="cli")
        space = GradedSpace.parse(args.space)
        doc = CodifferentialDocument(space, Cochain.parse(args.cochain[0], space))
    else:
        doc = load_document(args.input)
    if args.basis_override:
        doc.basis_override = _load_overrides(args.basis_override, doc.space)
    lam = Scalar.parse(args.lam) if args.lam is not None else None
    return specialize(doc, lam)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = _prepare(args)
        report = run_command(args.command, doc, args)
    except LinftyError as exc:
        print(f"error [{exc.code}] {exc.qualified}", file=sys.stderr)
        usage = isinstance(exc, ParseError) or exc.code in _USAGE_CODES
        return EXIT_USAGE if usage else EXIT_SEMANTIC
    sys.stdout.write(render_report(report, args.format))
    if args.command == "deform" and not report.results["terminated"]:
        print(f"warning: no termination within max order {args.max_order} "
              f"and truncation {args.truncation}", file=sys.stderr)
        return EXIT_NONTERMINATION
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
