"""Command line front end: ``mf <subcommand> [options]``.

Exit codes: 0 when the question was decided, 2 when the search stopped at
its caps without an answer, 1 on usage, input or validation errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .bounds import (
    headline_bounds,
    lower_bound_witness,
    primorial_check,
)
from .errors import CapExceeded, MatrepError, SearchSpaceTooLarge
from .gf import field_of_order, is_prime, make_field
from .matroid import Matroid, from_mask, parse_catalog_spec, parse_matroid, serialize_matroid
from .poly import parse_polynomial
from .sysgen import (
    FORMULATIONS,
    PER_BASIS,
    SINGLE_DUMMY,
    PolySystem,
    params,
    system_from_matroid,
    system_metrics,
)
from .solver import (
    INCONCLUSIVE,
    brute_force_up_to,
    compute_c,
    compute_f,
    default_subsystems,
    elimination_solve,
    find_representation,
    nullstellensatz_certificate,
    solve_in_field,
    witness_prime_scan,
)

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2

# rows of the small-n table: n -> (c(n), f(n))
TABLE_ROWS = {4: (2, 3), 5: (2, 4), 6: (2, 5), 7: (3, 7)}


class UsageError(MatrepError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


@dataclass
class Output:
    text: str
    code: int = EXIT_OK


# --- inputs -----------------------------------------------------------------

def _load(args):
    """(matroid, system) from --catalog or --file; exactly one is set."""
    if bool(args.catalog) == bool(args.file):
        raise UsageError("give exactly one of --catalog or --file")
    if args.catalog:
        return parse_catalog_spec(args.catalog), None
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    if text.lstrip().startswith("{"):
        return None, load_system(json.loads(text))
    return parse_matroid(text), None


def _tuplify(x):
    return tuple(_tuplify(v) for v in x) if isinstance(x, list) else x


def load_system(data) -> PolySystem:
    """Inverse of PolySystem.to_json (basis products must be in expanded form)."""
    t = int(data["t"])
    polys = [parse_polynomial(s, t) for s in data["polys"]]
    S = PolySystem.from_polys(polys, t)
    if "roles" in data:
        S.roles = [_tuplify(r) for r in data["roles"]]
    if "provenance" in data:
        S.provenance = [_tuplify(p) for p in data["provenance"]]
    return S


def _matroid(args) -> Matroid:
    M, _ = _load(args)
    if M is None:
        raise UsageError("this subcommand needs a matroid, not a polynomial system")
    return M


def _system(args, formulation: str, normalize: bool) -> PolySystem:
    M, S = _load(args)
    if S is not None:
        return S
    form = args.formulation or formulation
    norm = normalize if args.normalize is None else args.normalize
    return system_from_matroid(M, form, norm)


def _field(args, required: bool = True):
    if args.q is not None:
        if args.p is not None or args.k is not None:
            raise UsageError("give either --q or --p/--k")
        return field_of_order(args.q)
    if args.p is not None:
        return make_field(args.p, args.k or 1)
    if args.k is not None:
        raise UsageError("--k needs --p")
    if required:
        raise UsageError("this subcommand needs a field: --p P [--k K] or --q Q")
    return None


# --- formatting ----------------------------------------------------------------

def _csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _kv(fmt: str, pairs: list) -> str:
    if fmt == "json":
        return _json(dict(pairs))
    if fmt == "csv":
        return _csv([["key", "value"]] + [[k, v] for k, v in pairs])
    w = max(len(k) for k, _ in pairs)
    return "\n".join(f"{k.ljust(w)} = {v}" for k, v in pairs)


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _element_text(x) -> str:
    if x.field.k == 1:
        return str(x.code)
    return "[" + ",".join(map(str, x.coeffs)) + "]"


def _point_text(S: PolySystem, pt) -> str:
    names = S.role_names()
    vals = ", ".join(f"{n}={_element_text(v)}" for n, v in zip(names, pt.values))
    return f"point over {pt.field.to_text()}: {vals}"


def _matroid_json(M: Matroid) -> dict:
    return {"n": M.n, "r": M.r, "bases": [list(from_mask(b)) for b in M.sorted_bases()]}


# --- subcommands ------------------------------------------------------------------

def cmd_validate(args) -> Output:
    M = _matroid(args)
    if args.format == "json":
        return Output(_json({"valid": True, "n": M.n, "r": M.r, "bases": len(M.bases)}))
    return Output(f"valid matroid: n={M.n} r={M.r} bases={len(M.bases)}")


def cmd_show(args) -> Output:
    M = _matroid(args)
    if args.format == "json":
        return Output(_json(_matroid_json(M)))
    return Output(serialize_matroid(M).rstrip("\n"))


def cmd_gen_system(args) -> Output:
    S = _system(args, SINGLE_DUMMY, False)
    return Output(S.dumps())


def cmd_params(args) -> Output:
    M, S = _load(args)
    if S is None:
        S = _system(args, SINGLE_DUMMY, False)
        P = params(S, M.n)
    else:
        P = system_metrics(S)
    d = P.as_dict()
    return Output(_kv(args.format, [(k, d[k]) for k in ("s", "t", "d", "D", "H", "h", "H_exact")]))


def cmd_solve(args) -> Output:
    """With --k or --q: the least point over that field.  With --p alone: the
    least point over GF(p^k) for k = 1..--k-cap."""
    S = _system(args, PER_BASIS, True)
    if args.p is None and args.q is None:
        raise UsageError("solve needs --p P [--k K] or --q Q")
    if args.k is not None or args.q is not None:
        F = _field(args)
        pt = solve_in_field(S, F)
        status, none_msg = "found" if pt else "none", f"no point over {F.to_text()}"
    else:
        p = args.p
        if not is_prime(p):
            raise UsageError(f"--p {p} is not prime")
        none_msg = f"no point over any extension of GF({p})"
        try:
            pt = elimination_solve(S, p, args.k_cap)
            status = "found" if pt else "none"
        except CapExceeded:
            pt, status = None, "unknown"
        except SearchSpaceTooLarge:
            pt = brute_force_up_to(S, p, args.k_cap)
            status = "found" if pt else "unknown"
    code = EXIT_UNKNOWN if status == "unknown" else EXIT_OK
    if args.format == "json":
        body = pt.to_json() if pt is not None else {"field": None, "values": None}
        return Output(_json({"status": status, **body}), code)
    if pt is not None:
        return Output(_point_text(S, pt), code)
    if status == "none":
        return Output(none_msg, code)
    return Output(f"unknown (caps: k <= {args.k_cap})", code)


def cmd_represent(args) -> Output:
    M = _matroid(args)
    F = _field(args)
    rep = find_representation(M, F, args.threads)
    if args.format == "json":
        if rep is None:
            return Output(_json({"status": "none", "field": F.to_text(), "rows": None}))
        return Output(_json({"status": "found", **rep.to_json()}))
    if rep is None:
        return Output(f"not representable over {F.to_text()}")
    return Output(f"representation over {F.to_text()}:\n{rep.to_text()}")


def cmd_compute_f(args) -> Output:
    M = _matroid(args)
    q = compute_f(M, args.q_max, args.threads)
    caps = f"q <= {args.q_max}"
    if args.format == "json":
        return Output(_json({"f": q, "caps": caps}), EXIT_OK if q else EXIT_UNKNOWN)
    if q is None:
        return Output(f"f = unknown (caps: {caps})", EXIT_UNKNOWN)
    return Output(f"f = {q}")


def cmd_compute_c(args) -> Output:
    M = _matroid(args)
    c = compute_c(M, args.p_max, args.k_cap, args.threads)
    caps = f"p <= {args.p_max}, k <= {args.k_cap}"
    if args.format == "json":
        return Output(_json({"c": c, "caps": caps}), EXIT_OK if c else EXIT_UNKNOWN)
    if c is None:
        return Output(f"c = unknown (caps: {caps})", EXIT_UNKNOWN)
    return Output(f"c = {c}")


def cmd_cert(args) -> Output:
    S = _system(args, PER_BASIS, True)
    if args.k is not None or args.q is not None:
        raise UsageError("certificates are over Q (default) or GF(p): use --p only")
    domain = args.p if args.p is not None else 0
    if domain and not is_prime(domain):
        raise UsageError(f"--p {domain} is not prime")
    try:
        rep = nullstellensatz_certificate(S, domain, args.degree_cap, default_subsystems(S))
        code = EXIT_OK
    except CapExceeded as exc:
        rep, code = exc.report, EXIT_UNKNOWN
    if args.format == "json":
        return Output(_json(rep.to_json()), code)
    if not rep.found:
        return Output(f"no certificate over {rep.domain} (caps: degree <= {args.degree_cap})", code)
    lines = [f"certificate over {rep.domain}, cofactor degree {rep.cofactor_degree}"]
    if rep.integer_witness is not None:
        lines.append(f"integer witness a = {rep.integer_witness}")
    for j in rep.support:
        lines.append(f"g{j + 1} = {rep.cofactors[j]}")
    return Output("\n".join(lines), code)


def _primes_upto(n: int):
    return [p for p in range(2, n + 1) if is_prime(p)]


def cmd_scan_primes(args) -> Output:
    S = _system(args, PER_BASIS, True)
    details = {}
    verdicts = witness_prime_scan(S, _primes_upto(args.p_max), args.k_cap, args.degree_cap, details)
    code = EXIT_UNKNOWN if INCONCLUSIVE in verdicts.values() else EXIT_OK
    if args.format == "json":
        return Output(_json({str(p): v for p, v in verdicts.items()}), code)
    if args.format == "csv":
        return Output(_csv([["p", "verdict"]] + [[p, v] for p, v in verdicts.items()]), code)
    return Output("\n".join(f"p = {p}: {v}" for p, v in verdicts.items()), code)


def cmd_bounds(args) -> Output:
    if args.n is None:
        raise UsageError("bounds needs --n")
    hb = headline_bounds(args.n)
    rows = hb.rows()
    if args.format == "json":
        return Output(_json({k: v.to_json() for k, _, v in rows}))
    if args.format == "csv":
        return Output(_csv([["bound", "relation", "value"]] + [[k, rel, v.to_text()] for k, rel, v in rows]))
    w = max(len(rel) for _, rel, _ in rows)
    return Output("\n".join(f"{rel.ljust(w)} {v.to_text()}" for _, rel, v in rows))


def cmd_lower_bound(args) -> Output:
    if args.n is None:
        raise UsageError("lower-bound needs --n")
    w = lower_bound_witness(args.n)
    pairs = [
        ("n", w.n), ("c(n) at least", w.bound.to_text()), ("window", f"[{w.window[0]}, {w.window[1]}]"),
        ("prime", w.prime), ("fits", w.fits),
    ]
    return Output(_kv(args.format, pairs))


def cmd_primorial_check(args) -> Output:
    rows = primorial_check(args.max)
    ok = all(r[3] for r in rows)
    if args.format == "json":
        body = [{"a": a, "primorial": str(pr), "threshold": _frac(th), "pass": ok_} for a, pr, th, ok_ in rows]
        return Output(_json(body), EXIT_OK if ok else EXIT_ERROR)
    table = [["a", "primorial", "threshold", "pass"]]
    table += [[a, pr, _frac(th), "true" if ok_ else "false"] for a, pr, th, ok_ in rows]
    return Output(_csv(table), EXIT_OK if ok else EXIT_ERROR)


def _evidence(ev) -> str:
    if ev is None:
        return "-"
    if hasattr(ev, "values"):
        return f"point over {ev.field.to_text()}"
    if ev.found:
        return f"certificate, degree {ev.cofactor_degree}"
    return "no evidence within caps"


def table1(threads: int = 1, q_max: int = 128, p_max: int = 31, k_cap: int = 4, degree_cap: int = 6) -> dict:
    """Witness computations for the small-n table, the dichotomy scans and the primorial check."""
    rows = []
    for n in (4, 5, 6, 7):
        spec = f"uniform:2:{n}"
        M = parse_catalog_spec(spec)
        rows.append({"n": n, "quantity": "f", "witness": spec,
                     "computed": compute_f(M, q_max, threads), "table": TABLE_ROWS[n][1]})
    rows.append({"n": 7, "quantity": "c", "witness": "nonfano",
                 "computed": compute_c(parse_catalog_spec("nonfano"), p_max, k_cap, threads),
                 "table": TABLE_ROWS[7][0]})
    rows.append({"n": 7, "quantity": "f", "witness": "fano",
                 "computed": compute_f(parse_catalog_spec("fano"), q_max, threads), "table": None})
    for r in rows:
        r["match"] = None if r["table"] is None else r["computed"] == r["table"]
    scans = []
    for name in ("fano", "nonfano"):
        S = system_from_matroid(parse_catalog_spec(name), PER_BASIS, True)
        details = {}
        verdicts = witness_prime_scan(S, [2, 3, 5, 7], k_cap, degree_cap, details)
        for p, v in verdicts.items():
            scans.append({"matroid": name, "p": p, "verdict": v, "evidence": _evidence(details.get(p))})
    prim = primorial_check(100)
    return {
        "witnesses": rows,
        "dichotomy": scans,
        "primorial": {"a_max": 100, "passed": sum(r[3] for r in prim), "total": len(prim)},
    }


def cmd_table1(args) -> Output:
    res = table1(args.threads, args.q_max, args.p_max, args.k_cap, args.degree_cap)
    ok = all(r["match"] is not False for r in res["witnesses"])
    ok = ok and res["primorial"]["passed"] == res["primorial"]["total"]
    code = EXIT_OK if ok else EXIT_ERROR
    if args.format == "json":
        return Output(_json(res), code)

    def show(v):
        return "-" if v is None else ("yes" if v is True else "no" if v is False else str(v))

    head = ["n", "quantity", "witness", "computed", "table", "match"]
    wrows = [[show(r[h]) for h in head] for r in res["witnesses"]]
    shead = ["matroid", "p", "verdict", "evidence"]
    srows = [[show(r[h]) for h in shead] for r in res["dichotomy"]]
    pr = res["primorial"]
    if args.format == "csv":
        return Output(_csv([head] + wrows) + "\n\n" + _csv([shead] + srows)
                      + f"\n\nprimorial_a_max,passed,total\n{pr['a_max']},{pr['passed']},{pr['total']}", code)
    out = [_columns(head, wrows), "", _columns(shead, srows), "",
           f"primorial > 2^(a-3) for a <= {pr['a_max']}: {pr['passed']}/{pr['total']} pass"]
    return Output("\n".join(out), code)


def _columns(head, rows) -> str:
    widths = [max(len(str(x)) for x in col) for col in zip(head, *rows)]
    lines = ["  ".join(str(x).ljust(w) for x, w in zip(r, widths)).rstrip() for r in [head] + rows]
    return "\n".join(lines)


COMMANDS = {
    "validate": (cmd_validate, "check the basis axioms"),
    "show": (cmd_show, "print the matroid"),
    "gen-system": (cmd_gen_system, "emit the polynomial system as JSON"),
    "params": (cmd_params, "system parameters s, t, d, D, H, h"),
    "solve": (cmd_solve, "find a common zero over a finite field"),
    "represent": (cmd_represent, "find a representation over a given field"),
    "compute-f": (cmd_compute_f, "least field order with a representation"),
    "compute-c": (cmd_compute_c, "least characteristic with a representation"),
    "cert": (cmd_cert, "search a Nullstellensatz certificate"),
    "scan-primes": (cmd_scan_primes, "per-prime consistency verdicts"),
    "bounds": (cmd_bounds, "headline upper bounds for n elements"),
    "lower-bound": (cmd_lower_bound, "lower bound on c(n) with its prime"),
    "primorial-check": (cmd_primorial_check, "primorial(a) > 2^(a-3) for a <= --max"),
    "table1": (cmd_table1, "witness table for n = 4..7"),
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    src = common.add_argument_group("input")
    src.add_argument("--catalog", help="uniform:r:n, fano, nonfano, with_loops:<spec>:k")
    src.add_argument("--file", help="matroid file, or a system JSON as written by gen-system")
    fld = common.add_argument_group("field")
    fld.add_argument("--p", type=int)
    fld.add_argument("--k", type=int)
    fld.add_argument("--q", type=int)
    caps = common.add_argument_group("caps")
    caps.add_argument("--q-max", type=int, default=128)
    caps.add_argument("--p-max", type=int, default=31)
    caps.add_argument("--k-cap", type=int, default=4)
    caps.add_argument("--degree-cap", type=int, default=6)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--formulation", choices=FORMULATIONS)
    common.add_argument("--normalize", action=argparse.BooleanOptionalAction, default=None)
    common.add_argument("--n", type=int)
    common.add_argument("--max", type=int, default=100)

    parser = _Parser(prog="mf", description="Matroid representability over finite fields.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_fn, help_) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_, description=help_)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.threads < 1:
            raise UsageError("--threads must be >= 1")
        out = COMMANDS[args.command][0](args)
    except UsageError as exc:
        print(f"mf: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (MatrepError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"mf: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(out.text)
    return out.code


if __name__ == "__main__":
    sys.exit(main())
