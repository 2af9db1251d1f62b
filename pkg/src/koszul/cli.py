"""Command-line front end.

Rings come in as JSON documents::

    {"field": "QQ",            # or {"Fp": 7}
     "variables": ["x", "y"],
     "relations": ["x^2", "x*y + y^2"]}

Relation expressions are signed sums of '*'-separated factors; a factor is an
integer, a rational ``a/b``, or ``variable['^' exponent]``.  Whitespace is
ignored.  Results are emitted as a single JSON document (stable key order,
deterministic content; timing only when requested) or as an aligned Betti
table (rows: internal degree minus homological degree; columns: homological
degree).

Exit codes: 0 = computed and decided, 1 = an identity that must hold failed
(internal inconsistency), 2 = usage or parse error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from .betti import is_koszul_up_to, is_strand_koszul_up_to
from .families import (build_cycle_ring, build_quadratic_ci, path_certify,
                       short_gorenstein_certify, three_relation_certify)
from .fields import field_from_spec
from .graded import ring_algebra_data
from .homology import homology
from .identities import (check_golod, check_hilbert_identity,
                         check_low_degree_betti, check_prop_2_5,
                         check_quasi_formal, check_theorem_A, check_theorem_B)
from .polyring import ParseError, QuotientRing, parse_polynomial

RESULT_VERSION = "1"


class UsageError(Exception):
    pass


def _field_spec_from_flag(text: str):
    if text == "QQ":
        return "QQ"
    if text.startswith("F") and text[1:].isdigit():
        return {"Fp": int(text[1:])}
    raise UsageError(f'--field must be "QQ" or "F<p>", got {text!r}')


def load_ring(path: str, field_override: str | None = None) -> tuple[QuotientRing, str]:
    """Parse a ring document; returns (ring, content digest)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read ring file: {exc}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"ring file is not valid JSON: {exc}")
    for key in ("field", "variables", "relations"):
        if key not in doc:
            raise UsageError(f"ring document is missing {key!r}")
    if field_override:
        doc["field"] = _field_spec_from_flag(field_override)
    try:
        field = field_from_spec(doc["field"])
    except ValueError as exc:
        raise UsageError(str(exc))
    names = list(doc["variables"])
    relations = []
    for text in doc["relations"]:
        try:
            relations.append(parse_polynomial(text, names, field))
        except ParseError as exc:
            raise UsageError(f"in relation {text!r}: {exc}")
    try:
        ring = QuotientRing(len(names), relations, field, names)
    except ValueError as exc:
        raise UsageError(str(exc))
    normalized = json.dumps(
        {"field": doc["field"], "variables": names,
         "relations": doc["relations"]}, sort_keys=True)
    digest = hashlib.sha256(normalized.encode()).hexdigest()[:16]
    return ring, digest


def result_document(command: str, ring_digest: str | None, bounds: dict,
                    tables: dict, verdicts: dict, timing) -> dict:
    return {
        "version": RESULT_VERSION,
        "command": command,
        "ring": ring_digest,
        "bounds": bounds,
        "tables": tables,
        "verdicts": verdicts,
        "timing": timing,
    }


def render_betti_table(entries: dict) -> str:
    """Aligned text table: columns = homological degree, rows = j - i."""
    cells = {}
    for key, v in entries.items():
        i, j = key
        cells[(j - i, i)] = cells.get((j - i, i), 0) + v
    if not cells:
        return "(empty table)"
    rows = range(min(r for r, _ in cells), max(r for r, _ in cells) + 1)
    cols = range(0, max(c for _, c in cells) + 1)
    width = max(3, *(len(str(v)) for v in cells.values()))
    lines = [" " * 4 + "".join(f"{c:>{width + 1}}" for c in cols)]
    lines.append(" " * 4 + "-" * ((width + 1) * len(list(cols))))
    for r in rows:
        cells_r = [cells.get((r, c)) for c in cols]
        body = "".join(f"{v if v is not None else '.':>{width + 1}}"
                       for v in cells_r)
        lines.append(f"{r:>3}:" + body)
    return "\n".join(lines)


def emit(document: dict, fmt: str, table_entries: dict | None = None) -> None:
    if fmt == "table" and table_entries is not None:
        print(render_betti_table(table_entries))
        print()
    print(json.dumps(document, sort_keys=True, indent=2))


def cmd_homology(args) -> int:
    ring, digest = load_ring(args.ring, args.field)
    i_max = args.max_hom if args.max_hom is not None else ring.n
    j_max = args.max_int if args.max_int is not None else ring.n + 2
    if i_max < 0 or j_max < 0:
        raise UsageError("bounds must be nonnegative")
    started = time.perf_counter()
    H = homology(ring, i_max, j_max)
    pairs = [(i, j) for j in range(j_max + 1)
             for i in range(min(j, H.i_max) + 1)]
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            list(pool.map(lambda ij: H.dim(*ij), pairs))
    dims = H.dims()
    tables = {"homology_dims": {f"{i},{j}": d for (i, j), d in sorted(dims.items())}}
    if args.multigraded:
        if not ring.is_monomial:
            raise UsageError("--multigraded needs a monomial defining ideal")
        from .homology import multigraded_homology
        import itertools as it
        mg = {}
        for j in range(j_max + 1):
            for support in it.combinations(range(ring.n), j):
                u = tuple(1 if k in support else 0 for k in range(ring.n))
                mdims, _ = multigraded_homology(ring, u)
                mdims = {i: d for i, d in mdims.items() if i <= i_max}
                if mdims and any(u):
                    mg["(" + ",".join(map(str, u)) + ")"] = mdims
        tables["multigraded_dims"] = {u: {str(i): d for i, d in sorted(v.items())}
                                      for u, v in sorted(mg.items())}
    elapsed = round(time.perf_counter() - started, 3) if args.timing else None
    doc = result_document("homology", digest,
                          {"max_hom": i_max, "max_int": j_max},
                          tables, {}, elapsed)
    emit(doc, args.format, dims)
    return 0


CHECKS = ("koszul", "strand-koszul", "quasi-formal", "golod",
          "theorem-a", "theorem-b", "low-degree", "prop-2-5")


def cmd_check(args) -> int:
    ring, digest = load_ring(args.ring, args.field)
    b = args.bound
    p_max = args.max_hom if args.max_hom is not None else b
    j_max = args.max_int if args.max_int is not None else b
    started = time.perf_counter()
    verdicts: dict = {}
    tables: dict = {}
    bounds: dict = {"bound": b, "max_hom": p_max, "max_int": j_max}
    failed_identity = False
    what = args.what
    if what == "koszul":
        A = ring_algebra_data(ring, j_max)
        v = is_koszul_up_to(A, p_max, j_max, engine=args.engine)
        verdicts["koszul"] = v.to_json()
    elif what == "strand-koszul":
        H = homology(ring, ring.n, j_max)
        v = is_strand_koszul_up_to(H, p_max, j_max, trigraded=not args.strand_route,
                                   engine=args.engine)
        verdicts["strand_koszul"] = v.to_json()
    elif what == "quasi-formal":
        v = check_quasi_formal(ring, p_max, j_max, engine=args.engine)
        verdicts["quasi_formal"] = v.to_json()
    elif what == "golod":
        v = check_golod(ring, p_max, j_max, engine=args.engine)
        verdicts["golod"] = v.to_json()
    elif what == "theorem-a":
        report = check_theorem_A(ring, b, engine=args.engine)
        hilbert = check_hilbert_identity(ring, max(b - 2, 0), engine=args.engine)
        verdicts["theorem_a"] = report.to_json()
        verdicts["hilbert_identity"] = hilbert.to_json()
        tables["P_R"] = {f"{i},{j}": v for (i, j), v in report.data["P_R"]}
        tables["P_K"] = {f"{i},{j}": v for (i, j), v in report.data["P_K"]}
        failed_identity = not (report.passed and hilbert.passed)
    elif what == "theorem-b":
        report = check_theorem_B(ring, p_max, j_max, engine=args.engine)
        verdicts["theorem_b"] = report.to_json()
        failed_identity = report.status in ("LOGIC-FAILURE", "FAIL")
    elif what == "low-degree":
        report = check_low_degree_betti(ring, j_max, engine_h=args.engine)
        verdicts["low_degree"] = report.to_json()
        failed_identity = not report.passed
    elif what == "prop-2-5":
        H = homology(ring, ring.n, j_max)
        report = check_prop_2_5(H, ring.n, p_max, j_max, engine=args.engine)
        verdicts["prop_2_5"] = report.to_json()
        failed_identity = not report.passed
    else:
        raise UsageError(f"unknown check {what!r}")
    elapsed = round(time.perf_counter() - started, 3) if args.timing else None
    doc = result_document(f"check:{what}", digest, bounds, tables,
                          verdicts, elapsed)
    emit(doc, args.format)
    return 1 if failed_identity else 0


def _parse_inline_quadrics(args):
    names = [s.strip() for s in args.variables.split(",")] if args.variables else None
    if not args.quadrics:
        raise UsageError("--family ci needs --quadrics")
    if names is None:
        raise UsageError("--family ci needs --variables")
    field = field_from_spec(_field_spec_from_flag(args.field or "QQ"))
    quadrics = []
    for text in args.quadrics.split(","):
        try:
            quadrics.append(parse_polynomial(text.strip(), names, field))
        except ParseError as exc:
            raise UsageError(f"in quadric {text!r}: {exc}")
    return names, quadrics, field


def cmd_family(args) -> int:
    started = time.perf_counter()
    family = args.family
    tables: dict = {}
    if family == "ci":
        names, quadrics, field = _parse_inline_quadrics(args)
        ring, cert = build_quadratic_ci(len(names), quadrics, field, names)
        digest = None
    elif family == "gorenstein":
        if not args.ring:
            raise UsageError("--family gorenstein needs a ring file")
        ring, digest = load_ring(args.ring)
        try:
            _, cert = short_gorenstein_certify(ring)
        except ValueError as exc:
            raise UsageError(str(exc))
    elif family == "three-rel":
        if not args.ring:
            raise UsageError("--family three-rel needs a ring file")
        ring, digest = load_ring(args.ring)
        try:
            _, cert = three_relation_certify(ring)
        except ValueError as exc:
            raise UsageError(str(exc))
    elif family == "path":
        if args.n is None or args.n < 3:
            raise UsageError("--family path needs -n >= 3")
        ring, cert = path_certify(args.n)
        digest = None
    elif family == "cycle":
        if args.n is None or args.n < 3:
            raise UsageError("--family cycle needs -n >= 3")
        ring = build_cycle_ring(args.n)
        H = homology(ring, ring.n, args.n)
        v = is_strand_koszul_up_to(H, min(3, args.max_hom or 3), args.n,
                                   trigraded=True)
        elapsed = round(time.perf_counter() - started, 3) if args.timing else None
        doc = result_document("family:cycle", None, {"n": args.n},
                              {"homology_dims": {f"{i},{j}": d for (i, j), d
                                                 in sorted(H.dims().items())}},
                              {"strand_koszul": v.to_json()}, elapsed)
        emit(doc, args.format)
        return 0
    else:
        raise UsageError(f"unknown family {family!r}")
    elapsed = round(time.perf_counter() - started, 3) if args.timing else None
    doc = result_document(f"family:{family}", digest,
                          {k: v for k, v in cert.verdict.bound.items()},
                          tables, {"family": cert.to_json()}, elapsed)
    emit(doc, args.format)
    return 0 if cert.verdict.status != "INCONSISTENT" else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="koszul",
        description="Koszul homology algebras and Koszulness tests, exactly.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "table"), default="json")
        p.add_argument("--field", default=None,
                       help='override the ring document field: "QQ" or "F<p>"')
        p.add_argument("--jobs", type=int, default=1,
                       help="worker threads for independent slices")
        p.add_argument("--timing", action="store_true",
                       help="include wall-clock timing in the output document")
        p.add_argument("--engine", choices=("auto", "bar", "resolution"),
                       default="auto")

    p_hom = sub.add_parser("homology", help="Koszul homology dimension table")
    p_hom.add_argument("ring", help="ring document (JSON)")
    p_hom.add_argument("--max-hom", type=int, default=None)
    p_hom.add_argument("--max-int", type=int, default=None)
    p_hom.add_argument("--multigraded", action="store_true")
    common(p_hom)
    p_hom.set_defaults(func=cmd_homology)

    p_check = sub.add_parser("check", help="run one of the named checks")
    p_check.add_argument("ring", help="ring document (JSON)")
    p_check.add_argument("--what", choices=CHECKS, required=True)
    p_check.add_argument("--bound", type=int, default=6)
    p_check.add_argument("--max-hom", type=int, default=None)
    p_check.add_argument("--max-int", type=int, default=None)
    p_check.add_argument("--strand-route", action="store_true",
                         help="test strand-Koszulness through the strand "
                              "totalization instead of trigraded Betti numbers")
    common(p_check)
    p_check.set_defaults(func=cmd_check)

    p_fam = sub.add_parser("family", help="family-specific certification")
    p_fam.add_argument("--family", choices=("ci", "gorenstein", "three-rel",
                                            "path", "cycle"), required=True)
    p_fam.add_argument("-n", type=int, default=None)
    p_fam.add_argument("--ring", default=None, help="ring document (JSON)")
    p_fam.add_argument("--quadrics", default=None,
                       help="comma-separated quadric expressions (ci family)")
    p_fam.add_argument("--variables", default=None,
                       help="comma-separated variable names (ci family)")
    p_fam.add_argument("--max-hom", type=int, default=None)
    common(p_fam)
    p_fam.set_defaults(func=cmd_family)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        # inconsistencies surfaced by the identity machinery
        print(f"inconsistency: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
