"""Command-line front end.

Every command reads one JSON input document (see :mod:`loctrop.io`) and emits
text, JSON or SVG.  JSON output always carries a ``metadata`` block.  Exit
status: 0 on success, 1 on parse or domain errors, 2 when ``--strict`` is set
and some monomial test came back inconclusive.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from . import __version__
from . import polyhedra as ph
from .core import Series, Stratum, as_weight, enumerate_strata, initial_form, parse_rational
from .errors import DomainError, LocTropError
from .io import Problem, dumps, load_problem
from .localgb import (
    DEFAULT_BOUND,
    TIEBREAK,
    effective_tail_degree,
    initial_ideal,
    local_groebner_fan,
    local_order,
    standard_basis,
    tropical_finite_set,
    tropvar_general,
)
from .plot import render_fan
from .staircase import staircase_report
from .tropical import DEFINITION, MONOMIAL_TEST, SEMANTICS, local_trop_hypersurface, prevariety
from .verify import SUITES, run_suites

EXIT_OK, EXIT_DOMAIN, EXIT_STRICT = 0, 1, 2


class StrictUnknown(LocTropError):
    """Some monomial test was inconclusive and ``--strict`` was given."""


@dataclass
class Output:
    """What a command hands back to :func:`run` for emission."""

    result: dict
    text: list[str]
    semantics: str | None = None
    caveats: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    fan: ph.Fan | None = None
    unknown: bool = False


# helpers ------------------------------------------------------------------------------------

def _weight(text: str, n: int):
    try:
        w = as_weight(parse_rational(x) for x in text.split(","))
    except LocTropError as exc:
        raise DomainError(f"bad weight {text!r}: {exc}") from None
    if len(w) != n:
        raise DomainError(f"weight has {len(w)} entries, the input has {n} variables")
    if any(x < 0 for x in w):
        raise DomainError("weights must be non-negative (local)")
    return w


def _single(problem: Problem, what: str) -> Series:
    if len(problem.generators) != 1:
        raise DomainError(f"{what} takes a single series")
    return problem.generators[0]


def _truncation_caveats(problem: Problem) -> list[str]:
    if problem.exact:
        return []
    return ["truncated input: results hold provided every omitted term lies in the "
            "staircase of the given terms (COMPLETE-IF-TAIL-DOMINATED)"]


def _is_unit(problem: Problem) -> bool:
    return any(g.coeff((0,) * problem.n) != 0 for g in problem.generators)


def _fan_lines(fan: ph.Fan, label: Callable[[ph.RationalCone], str] = lambda c: "") -> list[str]:
    if not fan.cones:
        return ["(empty fan)"]
    out = []
    for c in fan.cones:
        rs = " ".join("(" + ",".join(map(str, r)) + ")" for r in ph.rays(c)) or "-"
        extra = label(c)
        out.append(f"dim {c.dim}  stratum {ph.cone_stratum(c).label:<4} rays {rs}  {c.describe()}"
                   + (f"  {extra}" if extra else ""))
    return out


def _semantics(args, default: str) -> str:
    return args.origin or default


# commands -----------------------------------------------------------------------------------

def cmd_staircase(problem: Problem, args) -> Output:
    if args.stratum is None:
        strata = enumerate_strata(problem.n)
    else:
        idx = [int(x) for x in args.stratum.split(",") if x.strip() not in ("", "0")]
        if any(i < 1 or i > problem.n for i in idx):
            raise DomainError(f"stratum indices must lie in 1..{problem.n}")
        strata = [Stratum.from_label(problem.n, idx)]
    V = problem.variables
    entries, text = [], []
    for k, f in enumerate(problem.generators):
        for lam in strata:
            rep = staircase_report(f, lam)
            entries.append({
                "generator": k,
                "stratum": lam.label,
                "zero_set": sorted(i + 1 for i in lam.zero_set),
                "projected_staircase": [list(b) for b in rep.classes.projected.generators],
                "classes": [[list(a) for a in cls] for cls in rep.classes.classes],
                "E": [list(a) for a in sorted(rep.classes.exponents)],
                "tilde": rep.tilde.term_list(),
                "hat": rep.hat.term_list(),
                "soundness": rep.classes.soundness,
                "notes": rep.notes,
            })
            prefix = f"f{k + 1} " if len(problem.generators) > 1 else ""
            text.append(f"{prefix}stratum {lam.label}: E = {sorted(rep.classes.exponents)}")
            text.append(f"  tilde = {rep.tilde.to_string(V)}")
            text.append(f"  hat   = {rep.hat.to_string(V)}")
            text.extend(f"  note: {x}" for x in rep.notes)
    return Output({"strata": entries}, text, caveats=_truncation_caveats(problem))


def cmd_initial(problem: Problem, args) -> Output:
    w = _weight(args.weight, problem.n)
    V = problem.variables
    caveats = _truncation_caveats(problem)
    if problem.exact:
        gens = list(problem.generators)
        forms = initial_ideal(gens, w, tail_degree=args.tail_degree)
        D = effective_tail_degree(gens, args.tail_degree)
        caveats.append(f"standard-basis tails reduced up to total degree {D}")
    else:
        f = _single(problem, "initial of a truncated input")
        form = initial_form(f, w)
        if form.unsound:
            caveats.append("zero weight on a truncated input: omitted terms may be initial")
        forms = [form.body]
    return Output(
        {"weight": [str(x) for x in w], "initial": [g.term_list() for g in forms]},
        [g.to_string(V) for g in forms], caveats=caveats,
    )


def _principal_variety(problem: Problem, args, kind: str) -> Output:
    f = _single(problem, kind)
    semantics = _semantics(args, DEFINITION)
    res = local_trop_hypersurface(f, semantics)
    warnings = ["unit input: the ideal is the whole ring"] if _is_unit(problem) else []
    lines = _fan_lines(res.fan, lambda c: _cert_text(res.certificates.get(c)))
    return Output(res.to_json(), lines, semantics, list(res.caveats), warnings, res.fan)


def _cert_text(cert) -> str:
    if cert is None:
        return ""
    data = cert.to_json()
    if data["type"] == "witness-pair":
        return f"witness {tuple(data['alpha'])} ~ {tuple(data['beta'])}"
    if data["type"] == "groebner-cone":
        return f"cone {data['id']}"
    return "origin convention"


def _groebner_variety(problem: Problem, args) -> Output:
    if not problem.exact:
        raise DomainError("the Gröbner path needs exact polynomial generators; "
                          "use prevariety for truncated series")
    semantics = _semantics(args, MONOMIAL_TEST)
    gens = list(problem.generators)
    lgf = local_groebner_fan(gens, tail_degree=args.tail_degree)
    tv = tropvar_general(gens, args.bound, lgf=lgf)
    fan = tv.fan
    caveats = list(tv.caveats)
    if semantics == DEFINITION and not fan.cones:
        # the definition convention puts the origin into every local tropical variety
        fan = ph.validate_fan([ph.origin(problem.n)], problem.n)
        caveats.append("origin added by the definition convention")
    warnings = ["unit ideal"] if _is_unit_ideal(gens) else []
    by_cone = {c: lgf.cones[c] for c in lgf.fan.cones}

    def extra(c):
        g = by_cone.get(c)
        v = tv.verdicts.get(c)
        return {
            "id": g.id if g else None,
            "initial": [s.term_list() for s in g.initial] if g else [],
            "verdict": v.verdict if v else None,
        }

    data = fan.to_json(extra)
    data["kind"] = "local-tropical-variety"
    data["strata"] = sorted({ph.cone_stratum(c).label for c in fan.cones})
    lines = _fan_lines(fan, lambda c: f"cone {by_cone[c].id}" if c in by_cone else "")
    unknown = any(v.verdict == "unknown" for v in tv.verdicts.values())
    return Output(data, lines, semantics, caveats, warnings, fan, unknown)


def _is_unit_ideal(gens) -> bool:
    sb = standard_basis(gens, local_order((0,) * gens[0].n), reduced=False)
    return any(not any(e) for e in sb.leading_exponents)


def cmd_trophyp(problem: Problem, args) -> Output:
    return _principal_variety(problem, args, "trophyp")


def cmd_tropvar(problem: Problem, args) -> Output:
    method = args.method
    if method == "auto":
        method = "principal" if len(problem.generators) == 1 else "groebner"
    if method == "principal":
        return _principal_variety(problem, args, "the principal path")
    return _groebner_variety(problem, args)


def cmd_prevariety(problem: Problem, args) -> Output:
    semantics = _semantics(args, DEFINITION)
    res = prevariety(list(problem.generators), semantics)
    lines = ["prevariety of the given generators (may strictly contain the variety)"]
    lines += _fan_lines(res.fan, lambda c: _cert_text(res.certificates.get(c)))
    return Output(res.to_json(), lines, semantics, list(res.caveats), [], res.fan)


def cmd_stdbasis(problem: Problem, args) -> Output:
    w = _weight(args.weight, problem.n)
    sb = standard_basis(list(problem.generators), local_order(w), tail_degree=args.tail_degree)
    V = problem.variables
    lines = [f"order: {sb.order.describe()}"]
    lines += [f"{g.to_string(V)}    [lead {list(l)}]" for g, l in zip(sb.elements, sb.leading_exponents)]
    data = sb.to_json()
    data["weight"] = [str(x) for x in w]
    caveats = [f"standard-basis tails reduced up to total degree {sb.tail_degree}"]
    return Output(data, lines, caveats=caveats)


def cmd_lgf(problem: Problem, args) -> Output:
    if not problem.exact:
        raise DomainError("the local Gröbner fan needs exact polynomial generators")
    gens = list(problem.generators)
    lgf = local_groebner_fan(gens, tail_degree=args.tail_degree)
    tv = tropvar_general(gens, args.bound, lgf=lgf)
    V = problem.variables

    def extra(c):
        g = lgf.cones[c]
        return {
            "id": g.id,
            "initial": [s.term_list() for s in g.initial],
            "verdict": tv.verdicts[c].verdict,
        }

    data = lgf.fan.to_json(extra)
    data["tail_degree"] = lgf.tail_degree

    def label(c):
        g = lgf.cones[c]
        ini = ", ".join(s.to_string(V) for s in g.initial)
        return f"{g.id} [{tv.verdicts[c].verdict}] initial: {ini}"

    warnings = ["unit ideal"] if _is_unit_ideal(gens) else []
    unknown = any(v.verdict == "unknown" for v in tv.verdicts.values())
    return Output(data, _fan_lines(lgf.fan, label), MONOMIAL_TEST, list(tv.caveats), warnings,
                  lgf.fan, unknown)


def cmd_tropbasis(problem: Problem, args) -> Output:
    if not problem.exact:
        raise DomainError("tropical finite sets need exact polynomial generators")
    gens = list(problem.generators)
    tv = tropvar_general(gens, args.bound, tail_degree=args.tail_degree)
    H = tropical_finite_set(gens, args.bound, variety=tv)
    V = problem.variables
    lines = [f"{h.element.to_string(V)}    [monomial {list(h.monomial)} on {', '.join(h.cone_ids)}; "
             f"{h.source}{'' if h.exact else ', truncated'}]" for h in H]
    caveats = list(tv.caveats)
    if any(not h.exact for h in H):
        caveats.append(f"some elements are truncated at total degree {tv.lgf.tail_degree}")
    unknown = any(v.verdict == "unknown" for v in tv.verdicts.values())
    return Output({"elements": [h.to_json() for h in H]}, lines or ["(empty)"], MONOMIAL_TEST,
                  caveats, [], None, unknown)


def cmd_verify(problem: Problem, args) -> Output:
    semantics = _semantics(args, DEFINITION)
    report = run_suites(problem, args.suite, args.seed, args.samples, semantics, args.jobs)
    lines = []
    for r in report["suites"]:
        tail = f" ({r['reason']})" if "reason" in r else ""
        lines.append(f"{r['suite']:<10} {r['status']:<8} {r['checks']} checks, "
                     f"{r['failure_count']} failures{tail}")
    lines.append("all passed" if report["passed"] else "FAILURES PRESENT")
    return Output(report, lines, semantics)


def cmd_plot(problem: Problem, args) -> Output:
    args.format = "svg"
    return cmd_tropvar(problem, args)


COMMANDS = {
    "staircase": (cmd_staircase, "per-stratum staircases and the tilde/hat polynomials"),
    "initial": (cmd_initial, "initial ideal for a local weight"),
    "trophyp": (cmd_trophyp, "local tropical hypersurface of one series"),
    "tropvar": (cmd_tropvar, "local tropical variety"),
    "prevariety": (cmd_prevariety, "intersection of the generators' hypersurfaces"),
    "stdbasis": (cmd_stdbasis, "reduced standard basis for a local weight order"),
    "lgf": (cmd_lgf, "local Gröbner fan"),
    "tropbasis": (cmd_tropbasis, "finite tropical set of the ideal"),
    "verify": (cmd_verify, "cross-check against independent oracles"),
    "plot": (cmd_plot, "SVG picture of the local tropical variety (two variables)"),
}


# parsing and emission -----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors share the domain-error status; 2 is reserved for --strict
        self.print_usage(sys.stderr)
        self.exit(EXIT_DOMAIN, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "svg"), default="text")
    common.add_argument("--origin", choices=SEMANTICS, default=None,
                        help="origin semantics (default: definition for principal paths)")
    common.add_argument("--bound", type=int, default=DEFAULT_BOUND,
                        help="degree bound for the monomial search")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--strict", action="store_true",
                        help="exit with status 2 when a monomial test is inconclusive")
    common.add_argument("--tail-degree", type=int, default=None,
                        help="total degree up to which standard-basis tails are reduced")
    common.add_argument("-o", "--output", default=None, help="write to this file instead of stdout")

    parser = _Parser(prog="loctrop", description="Local tropical varieties over Q.")
    parser.add_argument("--version", action="version", version=f"loctrop {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.add_argument("input", help="input JSON document")
        if name == "staircase":
            p.add_argument("--stratum", default=None,
                           help="1-based zero coordinates, e.g. 1 or 1,2 (0 for the interior)")
        if name in ("initial", "stdbasis"):
            p.add_argument("-w", "--weight", required=True, help="comma-separated weight, e.g. 1,2 or 1/2,1")
        if name in ("tropvar", "plot"):
            p.add_argument("--method", choices=("auto", "principal", "groebner"), default="auto")
        if name == "verify":
            p.add_argument("--suite", choices=SUITES + ("all",), default="all")
            p.add_argument("--samples", type=int, default=200)
    return parser


def _metadata(args, out: Output) -> dict:
    return {
        "tool": "loctrop",
        "version": __version__,
        "command": args.command,
        "input": Path(args.input).name,
        "seed": args.seed,
        "bound": args.bound,
        "origin_semantics": out.semantics,
        "order_tiebreak": TIEBREAK,
        "caveats": out.caveats,
        "warnings": out.warnings,
    }


def _render(args, out: Output) -> str:
    meta = _metadata(args, out)
    if args.format == "json":
        return dumps({"metadata": meta, "result": out.result})
    if args.format == "svg":
        if out.fan is None:
            raise DomainError(f"{args.command} has no SVG rendering")
        title = f"loctrop {__version__} {args.command} {meta['input']} (origin: {out.semantics})"
        return render_fan(out.fan, _problem_vars(args), title)
    lines = [f"# loctrop {__version__} {args.command} {meta['input']} seed={args.seed}"]
    if out.semantics:
        lines.append(f"# origin semantics: {out.semantics}")
    lines.append(f"# order tiebreak: {TIEBREAK}")
    lines += [f"# caveat: {c}" for c in out.caveats]
    lines += [f"# warning: {w}" for w in out.warnings]
    return "\n".join(lines + out.text) + "\n"


def _problem_vars(args):
    return args._problem.variables


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        problem = load_problem(args.input)
        args._problem = problem
        handler = COMMANDS[args.command][0]
        out = handler(problem, args)
        text = _render(args, out)
    except LocTropError as exc:
        print(f"loctrop: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    for w in out.warnings:
        print(f"loctrop: warning: {w}", file=sys.stderr)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.strict and out.unknown:
        print(f"loctrop: error: {StrictUnknown('inconclusive monomial tests with --strict')}", file=sys.stderr)
        return EXIT_STRICT
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
