"""Command-line front end for hprig.

Exit codes: 0 success, 1 domain error (bad or non-hyperbolic input),
2 usage error, 3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from hprig import kernels
from hprig.isolator import ModuliOrder, moduli_order
from hprig.polycore import (
    descartes_counts,
    parse_poly,
    parse_sp,
    poly_to_json,
    render,
    sign_pattern,
)
from hprig.realizer import (
    ExtensionError,
    WitnessFalsification,
    canonical_mo,
    even_hp,
    realize_mo,
    realize_sp,
    witness_pair,
)
from hprig.rigidity import (
    THEOREM1_TABLE,
    Report,
    TheoremViolation,
    classify,
    classify_theorem2,
    verify_canonical_necessary,
    verify_homotopy_batch,
    verify_theorem1,
    verify_theorem2,
    verify_witnesses,
)

TEXT = "TEXT"
JSON = "JSON"


def render_table(report: Report, style: str = TEXT) -> str:
    """Render a harness report; the JSON form is byte-stable."""
    if style == JSON:
        return report.dumps()
    lines = []
    title = f"{report.name}: " if report.name else ""
    lines.append(f"{title}{report.cases_passed}/{report.cases_run} cases passed"
                 f" ({report.elapsed_s:.2f} s)")
    if report.rows:
        by_class: dict[int, list[dict]] = {}
        for row in report.rows:
            by_class.setdefault(row["d_mod_4"], []).append(row)
        lines.append("")
        lines.append(f"{'d mod 4':>7}   {'MO':<5} {'SP':<3} {'last':<7}   {'MO':<5} {'SP':<3} last")
        for r in sorted(by_class):
            cells = []
            for name, _sig, _tail in THEOREM1_TABLE[r]:
                match = [row for row in by_class[r] if row["mo"] == name]
                if match:
                    m = match[0]
                    cells.append(f"{m['mo']:<5} {m['sp']:<3} {m['last_three']:<7}")
                else:
                    cells.append(f"{name:<5} {'?':<3} {'?':<7}")
            lines.append((f"{r:>7}   " + "   ".join(cells)).rstrip())
    if report.exceptions:
        lines.append("")
        lines.append(f"{len(report.exceptions)} recorded exception(s) at exact ties")
    if report.failures:
        lines.append("")
        lines.append("failures:")
        for f in report.failures:
            repro = " ".join(f"{k}={v}" for k, v in f.repro.items())
            lines.append(f"  {f.description}: expected {f.expected}, observed {f.observed}"
                         + (f" [{repro}]" if repro else ""))
    return "\n".join(lines)


def _read_input(value: str) -> str:
    if value == "-":
        return sys.stdin.read().strip()
    if value.startswith("@"):
        return Path(value[1:]).read_text().strip()
    return value


def _moduli_list(text: str) -> list[Fraction]:
    body = text.strip().strip("[]")
    return [Fraction(part.strip()) for part in body.split(",") if part.strip()]


def _looks_like_sp(text: str) -> bool:
    return bool(text.strip()) and all(ch in "+-−0 ," for ch in text)


# -- subcommand handlers: each returns (text, json-able object) ------------

def cmd_sp(args):
    Q = parse_poly(args.input)
    sp = sign_pattern(Q, allow_zero=True)
    return str(sp), {"poly": poly_to_json(Q), "sp": str(sp), "has_zero": sp.has_zero}


def cmd_mo(args):
    Q = parse_poly(args.input)
    mo = moduli_order(Q)
    return str(mo), {"poly": poly_to_json(Q), "mo": str(mo), "strict": mo.strict() is not None}


def cmd_descartes(args):
    if _looks_like_sp(args.input):
        sp = parse_sp(args.input)
    else:
        sp = sign_pattern(parse_poly(args.input), allow_zero=True)
    c, p = descartes_counts(sp)
    return f"c={c} p={p}", {"sp": str(sp), "c": c, "p": p}


def cmd_realize_mo(args):
    mo = ModuliOrder.parse(args.input)
    Q = realize_mo(mo)
    sp = sign_pattern(Q, allow_zero=True)
    return render(Q), {"mo": str(mo), "poly": poly_to_json(Q), "text": render(Q), "sp": str(sp)}


def cmd_realize_sp(args):
    sp = parse_sp(args.input)
    Q = realize_sp(sp)
    mo = moduli_order(Q) if Q.degree > 0 else None
    return render(Q), {"sp": str(sp), "poly": poly_to_json(Q), "text": render(Q),
                       "mo": str(mo) if mo else ""}


def cmd_canonical_mo(args):
    mo = canonical_mo(parse_sp(args.input))
    return str(mo), {"mo": str(mo)}


def cmd_witness(args):
    w = witness_pair(ModuliOrder.parse(args.input))
    a, b = sign_pattern(w.first), sign_pattern(w.second)
    text = f"{render(w.first)}  SP {a}\n{render(w.second)}  SP {b}"
    return text, {"mo": str(w.mo),
                  "first": {"poly": poly_to_json(w.first), "sp": str(a)},
                  "second": {"poly": poly_to_json(w.second), "sp": str(b)}}


def cmd_classify(args):
    v = classify(ModuliOrder.parse(args.input), validate=True)
    obj = {"mo": args.input, "status": v.status.value}
    text = v.status.value
    if v.predicted_sp is not None:
        obj["predicted_sp"] = str(v.predicted_sp)
        text += f" {v.predicted_sp}"
    if v.witness is not None:
        a, b = sign_pattern(v.witness.first), sign_pattern(v.witness.second)
        obj["witness"] = {"first": render(v.witness.first), "second": render(v.witness.second),
                          "sps": [str(a), str(b)]}
        text += f"\n  {render(v.witness.first)}  SP {a}\n  {render(v.witness.second)}  SP {b}"
    return text, obj


def cmd_classify_t2(args):
    Q = parse_poly(args.input)
    case = classify_theorem2(Q)
    sp = sign_pattern(Q, allow_zero=True)
    return f"{case.value} {sp}", {"case": case.value, "sp": str(sp), "mo": str(moduli_order(Q))}


def cmd_even_hp(args):
    Q = even_hp(_moduli_list(args.input))
    sp = sign_pattern(Q, allow_zero=True)
    return render(Q), {"poly": poly_to_json(Q), "text": render(Q), "sp": str(sp)}


def cmd_verify(args):
    seed = args.seed
    target = args.target
    if target == "theorem1":
        rep = verify_theorem1(args.max_degree or 12, args.samples or 200, seed)
    elif target == "theorem2":
        rep = verify_theorem2(args.max_degree or 9, args.samples or 100, seed)
    elif target == "witnesses":
        rep = verify_witnesses(3, args.max_degree or 8)
    elif target == "homotopy":
        rep = verify_homotopy_batch(args.samples or 100, args.grid, seed, args.max_degree or 9)
    else:
        rep = verify_canonical_necessary(args.max_degree or 12)
    if rep.failures or rep.cases_passed != rep.cases_run:
        args._failed = True
    return render_table(rep, TEXT), rep.to_json()


COMMANDS = {
    "sp": (cmd_sp, "sign pattern of a polynomial"),
    "mo": (cmd_mo, "moduli order of a hyperbolic polynomial"),
    "descartes": (cmd_descartes, "sign changes and preservations of a polynomial or SP"),
    "realize-mo": (cmd_realize_mo, "hyperbolic polynomial realizing a moduli order"),
    "realize-sp": (cmd_realize_sp, "hyperbolic polynomial realizing an SP by its canonical MO"),
    "canonical-mo": (cmd_canonical_mo, "canonical moduli order of an SP"),
    "witness": (cmd_witness, "non-rigidity witness pair for a moduli order"),
    "classify": (cmd_classify, "rigidity verdict for a moduli order"),
    "classify-t2": (cmd_classify_t2, "even-degree dichotomy for weakly alternating orders"),
    "even-hp": (cmd_even_hp, "prod (x^2 - a^2) over comma-separated moduli"),
}

VERIFY_TARGETS = ("theorem1", "theorem2", "witnesses", "homotopy", "canonical-necessary")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--out", metavar="FILE", help="write output to FILE")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hprig", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s 0.1.0 (kernels: {kernels.BACKEND})")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (func, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", help="inline value, @FILE, or - for stdin")
        _common(p)
        p.set_defaults(func=func)
    p = sub.add_parser("verify", help="run a verification harness")
    p.add_argument("target", choices=VERIFY_TARGETS)
    p.add_argument("--grid", type=int, default=16, help="homotopy grid size")
    _common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args._failed = False
    try:
        if hasattr(args, "input"):
            args.input = _read_input(args.input)
        text, obj = args.func(args)
    except (TheoremViolation, WitnessFalsification, ExtensionError) as exc:
        print(f"hprig: verification failure: {exc}", file=stderr)
        return 3
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"hprig: error: {exc}", file=stderr)
        return 1
    out = json.dumps(obj, sort_keys=True, ensure_ascii=False) if args.json else text
    if args.out:
        Path(args.out).write_text(out + "\n", encoding="utf-8")
    else:
        print(out, file=stdout)
    return 3 if args._failed else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
