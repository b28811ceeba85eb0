"""Command line front end: ``ncdiv <command> <instance> [flags]``.

``<instance>`` is a gallery name (z2-haar, z3-haar, inner-z2, preproj-toy,
supercircle:<W>) or a path to a JSON spec.  Exit codes: 0 clean,
1 violation of an axiom or a claimed result, 2 bad input, 3 a derived
identity failed although axioms and claims passed (a bug in this package).
"""

import argparse
import sys

from . import __version__
from .errors import InconsistencyError, InstanceError
from .gallery import gallery_names
from .integral import IntegralPresentation
from .io import REPORT_SCHEMA, SpecError, dumps, instance_to_spec, load_lambda, resolve
from .report import MAX_VIOLATIONS
from .suite import EXIT_INCONSISTENT, EXIT_OK, EXIT_PARSE, run_suite

COMMANDS = ("check", "calculus", "divergence", "integral", "ibp", "gallery", "export")

# reports shown in full by each command (others appear only when they fail)
_FOCUS = {
    "calculus": ("calculus", "right dual basis", "pi-twisted calculus coincides", "hom space", "inner calculus"),
    "divergence": ("sigma-twisted multi-derivation", "divergence law", "reconstruction",
                   "supercircle divergence formula"),
    "integral": ("integral presentation", "integral on window", "claimed integral", "exactness",
                 "proportional to reference", "right integral", "haar uniqueness"),
    "ibp": ("integration by parts", "inner integral identity"),
}


def _scalar_text(x):
    return str(x)


def _scalar_json(x, field):
    return field.format(x)


def _parser():
    p = argparse.ArgumentParser(prog="ncdiv", description="Exact checks for twisted multi-derivations, "
                                "divergences and their cokernel integrals.")
    p.add_argument("--version", action="version", version=f"ncdiv {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("instance", help="gallery name or spec file (" + ", ".join(gallery_names()) + ")")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--window", type=int, default=None, help="degree window for graded algebras")
        sp.add_argument("--lambda", dest="lam", default=None, metavar="FILE",
                        help="JSON file {basis label: scalar} with a claimed integral")
        sp.add_argument("--max-violations", type=int, default=MAX_VIOLATIONS, metavar="K")
        if name == "export":
            sp.add_argument("-o", "--output", default=None, help="write the spec here instead of stdout")
    return p


def _calculus_view(res):
    calc = res.calculus
    alg = calc.algebra
    view = {"rank": calc.n, "dimension": calc.dimension, "relations": [], "d": []}
    for k in alg.basis():
        a = alg.e(k)
        sa = calc.system.sigma(a)
        for i in range(calc.n):
            terms = [f"{sa[i, j]}*omega_{j}" for j in range(calc.n) if sa[i, j]]
            view["relations"].append(f"omega_{i}·{alg.label(k)} = " + (" + ".join(terms) or "0"))
        view["d"].append(f"d({alg.label(k)}) = " + _form(calc.d(a)))
    return view


def _form(row):
    terms = [f"({x})*omega_{j}" for j, x in enumerate(row) if x]
    return " + ".join(terms) or "0"


def _divergence_view(res):
    D = res.divergence
    out = []
    for f in res.homs:
        vals = ", ".join(str(v) for v in f.values)
        out.append(f"div[{vals}] = {D(f)}")
    return out


def _integral_view(res, as_json):
    Lam = res.integral
    alg = res.instance.algebra
    fmt = (lambda x: _scalar_json(x, alg.field)) if as_json else _scalar_text
    table = {}
    for k in alg.basis():
        vals = Lam(alg.e(k))
        table[alg.label(k)] = [fmt(x) for x in vals] if len(vals) != 1 else fmt(vals[0])
    view = {"table": table}
    if isinstance(Lam, IntegralPresentation):
        view["dim coker"] = Lam.rank
        view["image basis"] = [str(v) for v in Lam.image_basis()]
    else:
        view["claimed"] = Lam.name
        view["window"] = alg.window
    return view


def _emit_text(out, command, res, view, max_violations):
    focus = _FOCUS.get(command)
    print(f"instance: {res.instance.name}", file=out)
    if res.stopped:
        print(f"stopped after {res.stopped} stage: defining axioms failed", file=out)
    for rep in res.reports:
        if focus is None or rep.name in focus or not rep.ok:
            for line in rep.lines():
                print(line, file=out)
    if focus is not None:
        clean = sum(1 for r in res.reports if r.ok)
        print(f"({clean}/{len(res.reports)} reports clean)", file=out)
    if view:
        if "calculus" in view:
            c = view["calculus"]
            print(f"module rank = {c['rank']}, dimension = {c['dimension']}", file=out)
            for line in c["relations"] + c["d"]:
                print(f"  {line}", file=out)
        if "divergence" in view:
            for line in view["divergence"]:
                print(f"  {line}", file=out)
        if "integral" in view:
            v = view["integral"]
            if "dim coker" in v:
                print(f"dim coker = {v['dim coker']}", file=out)
                print("V = span{" + ", ".join(v["image basis"]) + "}", file=out)
            else:
                print(f"claimed integral ({v['claimed']}) verified on window {v['window']}", file=out)
            items = ", ".join(f"{k}: {x}" for k, x in v["table"].items())
            print("Lambda = {" + items + "}", file=out)


def run(argv=None, out=None):
    """Run one command; returns the exit code."""
    out = sys.stdout if out is None else out
    args = _parser().parse_args(argv)
    try:
        inst = resolve(args.instance, args.window)
        if args.lam is not None:
            inst.claimed = load_lambda(args.lam, inst.algebra)
        if args.command == "export":
            text = dumps(instance_to_spec(inst))
            if args.output:
                with open(args.output, "w") as fh:
                    fh.write(text)
            else:
                out.write(text)
            return EXIT_OK
        if args.command == "ibp":
            pfd = inst.pfd
            if pfd is None or not pfd.is_free:
                raise InstanceError("integration by parts needs a free derivation (pi = I with sigma_bar, sigma_hat)")
        if args.command in ("divergence", "integral") and inst.pfd is None:
            raise InstanceError(f"{args.command} needs a projectively free derivation (sigma_bar and sigma_hat)")
        stages = 3 if args.command == "calculus" else 4
        res = run_suite(inst, max_violations=args.max_violations, stages=stages)
    except InconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (SpecError, InstanceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    view = {}
    if res.stopped is None:
        if args.command == "calculus" and res.calculus is not None:
            view["calculus"] = _calculus_view(res)
        if args.command == "divergence" and res.divergence is not None:
            view["divergence"] = _divergence_view(res)
        if args.command in ("integral", "gallery") and res.integral is not None:
            view["integral"] = _integral_view(res, args.json)
    code = res.exit_code
    if args.json:
        payload = {
            "schema": REPORT_SCHEMA,
            "command": args.command,
            "instance": inst.name,
            "exit_code": code,
            "stopped": res.stopped,
            "reports": [r.as_dict() for r in res.reports],
        }
        payload.update(view)
        out.write(dumps(payload))
    else:
        _emit_text(out, args.command, res, view, args.max_violations)
        print(f"exit code {code}", file=out)
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
