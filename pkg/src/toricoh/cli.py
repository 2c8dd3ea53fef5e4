"""Command-line driver.

Exit codes: 0 on success, 2 on domain errors, 64 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import __version__
from .chow import (ChowError, build_chow, chern_pair, hirzebruch_riemann_roch_chi,
                   riemann_roch_chi, splitting_candidates)
from .cohomology import (CohomologyError, cohomology, ext_dimension,
                         picard_presentation, search_h1)
from .fan import (Fan, FanError, build_del_pezzo_fan, build_projective_fan,
                  cones_of_dimension, symmetry_report, validate)
from .homology import (COEFFICIENTS, SignPattern, cycle_criterion, reduced_homology,
                       support_complex)
from .verify import adjudicate_prop43

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_USAGE = 64

COMMANDS = ("info", "validate", "symmetry", "cohomology", "ext", "search-h1",
            "pattern-homology", "cycle-check", "chow-mult", "chow-split", "prop43", "rr-chi")
# commands that rely on the engine's smooth + complete hypothesis
NEEDS_VALID = {"cohomology", "ext", "search-h1", "chow-mult", "chow-split", "rr-chi"}


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


# ---------------------------------------------------------------------------
# input parsing


def parse_int_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def load_fan(spec: str, allow_unverified: bool = False) -> tuple[Fan, list[str]]:
    """Build or read a fan and validate it.

    Non-smooth or non-complete fans are refused unless ``allow_unverified``;
    in that case the diagnostics come back as warnings.
    """
    m = re.fullmatch(r"(pn|delpezzo):(-?\d+)", spec)
    if m:
        kind, n = m.group(1), int(m.group(2))
        fan = build_projective_fan(n) if kind == "pn" else build_del_pezzo_fan(n)
    elif ":" in spec and not Path(spec).exists():
        raise FanError(f"unsupported builder {spec!r}; use pn:<n>, delpezzo:<n> or a JSON path")
    else:
        try:
            data = json.loads(Path(spec).read_text())
        except OSError as exc:
            raise FanError(f"cannot read fan file {spec}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise FanError(f"fan file {spec} is not valid JSON: {exc}") from None
        fan = Fan.from_json(data, name=spec)
    verdict = validate(fan)
    warnings = []
    if not verdict.ok:
        if not allow_unverified:
            raise FanError("fan failed validation: " + "; ".join(verdict.diagnostics))
        warnings.extend(verdict.diagnostics)
    return fan, warnings


def _divisor(fan: Fan, positional: str | None, named: Sequence[str] | None,
             what: str = "divisor") -> tuple[int, ...]:
    if positional is not None and named:
        raise UsageError(f"give the {what} positionally or with --named, not both")
    if positional is not None:
        d = parse_int_list(positional)
        if len(d) != fan.n_rays:
            raise DomainError(f"{what} has {len(d)} entries but the fan has {fan.n_rays} rays")
        return d
    if named:
        out = [0] * fan.n_rays
        for item in ",".join(named).split(","):
            mm = re.fullmatch(r"\s*E(\d+)\s*=\s*(-?\d+)\s*", item)
            if not mm:
                raise UsageError(f"bad --named entry {item!r}; expected Ei=k")
            i = int(mm.group(1))
            if not 1 <= i <= fan.n_rays:
                raise DomainError(f"E{i} does not exist; rays are numbered 1..{fan.n_rays}")
            out[i - 1] += int(mm.group(2))
        return tuple(out)
    raise UsageError(f"a {what} is required (--{what} or --named)")


def _fan_summary(spec: str, fan: Fan) -> dict:
    v = validate(fan)
    return {
        "spec": spec,
        "dimension": fan.dimension,
        "n_rays": fan.n_rays,
        "n_max_cones": len(fan.max_cones),
        "smooth": v.smooth,
        "complete": v.complete,
    }


def _pattern(fan: Fan, text: str) -> SignPattern:
    neg = parse_int_list(text)
    try:
        return SignPattern.from_negative(neg, fan.n_rays)
    except ValueError as exc:
        raise DomainError(str(exc)) from None


def _profile_json(profile) -> dict:
    return {
        "coeffs": profile.coeffs,
        "ranks": {str(q): profile.rank(q) for q in profile.degrees},
        "torsion": {str(q): list(profile.torsion_in(q)) for q in profile.degrees
                    if profile.torsion_in(q)},
    }


def _table_json(table) -> dict:
    return {
        "h": list(table.h),
        "euler": table.euler,
        "audit": [
            {"negative": list(c.negative), "homology_degree": c.homology_degree,
             "cohomology_degree": c.cohomology_degree, "rank": c.rank, "points": c.points}
            for c in table.breakdown
        ],
    }


def _chow_json(ring, x) -> dict:
    out = {}
    for k in sorted(x.parts):
        out[str(k)] = {"*".join(f"E{i}" for i in mono) or "1": c
                       for mono, c in zip(ring.basis(k), x.parts[k]) if c}
    return out


# ---------------------------------------------------------------------------
# commands


def cmd_info(args, fan):
    return {
        "rays": [list(r) for r in fan.rays],
        "max_cones": [sorted(c) for c in fan.max_cones],
        "cone_counts": [len(cones_of_dimension(fan, m)) for m in range(fan.dimension + 1)],
    }


def cmd_validate(args, fan):
    v = validate(fan)
    return {"smooth": v.smooth, "complete": v.complete, "diagnostics": list(v.diagnostics)}


def cmd_symmetry(args, fan):
    s = symmetry_report(fan)
    return {"pairs": s.pairs, "order": s.order, "hypothesis_met": s.hypothesis_met}


def cmd_cohomology(args, fan):
    d = _divisor(fan, args.divisor, args.named)
    out = {"divisor": list(d)}
    out.update(_table_json(cohomology(fan, d)))
    return out


def cmd_ext(args, fan):
    l1 = _divisor(fan, args.l1, None, "l1")
    l2 = _divisor(fan, args.l2, None, "l2")
    return {"l1": list(l1), "l2": list(l2),
            "difference": [a - b for a, b in zip(l1, l2)],
            "ext_dimension": ext_dimension(fan, l1, l2)}


def cmd_search_h1(args, fan):
    if args.box < 1:
        raise DomainError("--box must be at least 1")
    hits = search_h1(fan, args.box)
    return {"box": args.box,
            "pic_basis": [f"E{j}" for j in picard_presentation(fan).basis],
            "classes": [{"class": list(h.cls.coords), "representative": list(h.representative),
                         "h1": h.h1} for h in hits]}


def cmd_pattern_homology(args, fan):
    pat = _pattern(fan, args.pattern_neg)
    c = support_complex(fan, pat)
    return {"negative": sorted(pat.negative),
            "maximal_faces": [list(f) for f in c.maximal_faces],
            "homology": _profile_json(reduced_homology(c, args.coeffs))}


def cmd_cycle_check(args, fan):
    if args.dim < 1:
        raise DomainError("--dim must be at least 1")
    pat = _pattern(fan, args.pattern_neg)
    c = support_complex(fan, pat)
    chk = cycle_criterion(c, args.dim)
    mod2 = reduced_homology(c, "mod2").rank(args.dim)
    integral = reduced_homology(c, "integer")
    return {"negative": sorted(pat.negative), "dim": args.dim, "holds": chk.holds,
            "incidence": [{"face": list(f), "count": n} for f, n in sorted(chk.incidence.items())],
            "mod2_rank": mod2, "integer_rank": integral.rank(args.dim),
            "integer_torsion": list(integral.torsion_in(args.dim))}


def cmd_chow_mult(args, fan):
    ring = build_chow(fan)
    a = ring.divisor(_divisor(fan, args.a, None, "a"))
    b = ring.divisor(_divisor(fan, args.b, None, "b"))
    prod = a * b
    out = {"ranks": list(ring.ranks()), "product": _chow_json(ring, prod)}
    if fan.dimension == 2:
        out["degree"] = ring.degree(prod)
    return out


def cmd_chow_split(args, fan):
    if args.box < 0:
        raise DomainError("--box must be nonnegative")
    ring = build_chow(fan)
    d1 = _divisor(fan, args.d1, None, "d1")
    cls = ring.picard.class_of(d1)
    c1, c2 = chern_pair(ring, cls, -cls)
    cands = splitting_candidates(ring, cls, args.box)
    found = {tuple(x.coords) for x in cands}
    expected = {cls.coords, (-cls).coords}
    return {"d1": list(d1), "d1_class": list(cls.coords),
            "pic_basis": [f"E{j}" for j in ring.picard.basis], "box": args.box,
            "c1": _chow_json(ring, c1), "c2": _chow_json(ring, c2),
            "candidates": [list(x.coords) for x in cands],
            "only_plus_minus_d1": found == expected}


def cmd_prop43(args, fan):
    try:
        return adjudicate_prop43(args.n, args.i, args.coeff)
    except ValueError as exc:
        raise DomainError(str(exc)) from None


def cmd_rr_chi(args, fan):
    ring = build_chow(fan)
    d = _divisor(fan, args.divisor, args.named)
    return {"divisor": list(d), "riemann_roch_chi": riemann_roch_chi(ring, d),
            "hirzebruch_chi": hirzebruch_riemann_roch_chi(ring, d),
            "engine_euler": cohomology(fan, d).euler}


HANDLERS = {
    "info": cmd_info, "validate": cmd_validate, "symmetry": cmd_symmetry,
    "cohomology": cmd_cohomology, "ext": cmd_ext, "search-h1": cmd_search_h1,
    "pattern-homology": cmd_pattern_homology, "cycle-check": cmd_cycle_check,
    "chow-mult": cmd_chow_mult, "chow-split": cmd_chow_split, "prop43": cmd_prop43,
    "rr-chi": cmd_rr_chi,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="toricoh", description="Line bundle cohomology on toric varieties.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="table")
    common.add_argument("--allow-unverified", action="store_true",
                        help="accept fans failing validation (disables cohomology commands)")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fan=True, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        if fan:
            p.add_argument("--fan", required=True, help="pn:<n>, delpezzo:<n> or a JSON file")
        return p

    add("info", help="rays, maximal cones and cone counts")
    add("validate", help="smoothness and completeness verdict")
    add("symmetry", help="antipodal ray pairs and symmetry order")
    p = add("cohomology", help="h^p of a line bundle with per-pattern audit")
    p.add_argument("--divisor")
    p.add_argument("--named", action="append", help="Ei=k entries, repeatable")
    p = add("ext", help="dimension of Ext^1(L2, L1) = h^1(L1 - L2)")
    p.add_argument("--l1", required=True)
    p.add_argument("--l2", required=True)
    p = add("search-h1", help="classes with nonzero h^1 among vectors in a box")
    p.add_argument("--box", type=int, required=True)
    p = add("pattern-homology", help="support complex and reduced homology of a sign pattern")
    p.add_argument("--pattern-neg", default="", help="comma-separated negative ray labels")
    p.add_argument("--coeffs", choices=COEFFICIENTS, default="rational")
    p = add("cycle-check", help="pseudocycle incidence criterion on a support complex")
    p.add_argument("--pattern-neg", default="")
    p.add_argument("--dim", type=int, required=True)
    p = add("chow-mult", help="product of two divisors in the Chow ring")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p = add("chow-split", help="Chern-class splitting candidates for the (D, -D) extension")
    p.add_argument("--d1", required=True)
    p.add_argument("--box", type=int, default=2)
    p = add("prop43", fan=False, help="h^1 of the zero-column divisor on V^n, three routes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--coeff", type=int, default=1)
    p = add("rr-chi", help="Riemann-Roch Euler characteristic on V^2")
    p.add_argument("--divisor")
    p.add_argument("--named", action="append")
    return parser


_VALUE_OPTS = {"--divisor", "--l1", "--l2", "--a", "--b", "--d1", "--pattern-neg", "--named"}
_INTLIST = re.compile(r"-\d+(,-?\d+)*")


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    """Turn ``--divisor -2,0`` into ``--divisor=-2,0`` so argparse accepts it."""
    out = []
    it = iter(range(len(argv)))
    skip = False
    for k in it:
        if skip:
            skip = False
            continue
        tok = argv[k]
        if tok in _VALUE_OPTS and k + 1 < len(argv) and _INTLIST.fullmatch(argv[k + 1]):
            out.append(f"{tok}={argv[k + 1]}")
            skip = True
        else:
            out.append(tok)
    return out


def render_table(report: dict) -> str:
    lines = []

    def emit(prefix, value):
        if isinstance(value, dict) and value and all(not isinstance(v, (dict, list))
                                                     for v in value.values()):
            width = max(len(str(k)) for k in value)
            lines.append(f"{prefix}:")
            for k, v in value.items():
                lines.append(f"  {str(k).ljust(width)}  {json.dumps(v)}")
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            lines.append(f"{prefix}: ({len(value)} rows)")
            keys = list(value[0])
            cells = [[json.dumps(row.get(k)) for k in keys] for row in value]
            widths = [max(len(k), *(len(c[i]) for c in cells)) for i, k in enumerate(keys)]
            lines.append("  " + "  ".join(k.ljust(w) for k, w in zip(keys, widths)))
            for c in cells:
                lines.append("  " + "  ".join(x.ljust(w) for x, w in zip(c, widths)))
        elif isinstance(value, dict) and value:
            for k, v in value.items():
                emit(f"{prefix}.{k}", v)
        else:
            lines.append(f"{prefix}: {json.dumps(value)}")

    for key in ("command", "status", "fan"):
        if key in report:
            emit(key, report[key])
    for k, v in report.get("result", {}).items():
        emit(k, v)
    for key in ("args", "warnings", "error"):
        if report.get(key):
            emit(key, report[key])
    return "\n".join(lines)


def run(argv: Sequence[str]) -> tuple[int, dict | None, str]:
    """Execute one invocation; returns (exit code, report, rendered text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_negative_values(list(argv)))
        if not args.command:
            raise UsageError(parser.format_usage() + "toricoh: error: a command is required")
    except UsageError as exc:
        return EXIT_USAGE, None, str(exc)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0), None, ""

    echo = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "format")}
    report = {"command": args.command, "args": echo, "warnings": [], "status": "ok"}
    code = EXIT_OK
    try:
        fan = None
        if args.command == "prop43":
            spec = f"delpezzo:{args.n}"
            fan, _ = load_fan(spec)
        else:
            spec = args.fan
            lenient = args.allow_unverified or args.command == "validate"
            fan, warns = load_fan(spec, allow_unverified=lenient)
            if warns and args.command in NEEDS_VALID:
                raise DomainError(f"{args.command} needs a smooth complete fan: "
                                  + "; ".join(warns))
            report["warnings"].extend(warns)
        report["fan"] = _fan_summary(spec, fan)
        report["result"] = HANDLERS[args.command](args, fan)
        if args.command == "validate" and not (report["result"]["smooth"]
                                               and report["result"]["complete"]):
            code = EXIT_DOMAIN
            report["status"] = "invalid"
    except UsageError as exc:
        return EXIT_USAGE, None, str(exc)
    except (DomainError, FanError, CohomologyError, ChowError, ValueError) as exc:
        code = EXIT_DOMAIN
        report["status"] = "error"
        report["error"] = str(exc)
    report["exit_code"] = code
    if args.format == "json":
        text = json.dumps(report, indent=2, sort_keys=True)
    else:
        text = render_table(report)
    return code, report, text


def report_schema() -> dict:
    """The published JSON schema every report validates against."""
    return json.loads(resources.files("toricoh").joinpath("report_schema.json").read_text())


def main(argv: Sequence[str] | None = None) -> int:
    code, _, text = run(sys.argv[1:] if argv is None else argv)
    if text:
        stream = sys.stderr if code == EXIT_USAGE else sys.stdout
        print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
