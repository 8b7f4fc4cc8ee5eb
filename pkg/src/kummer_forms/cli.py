"""Command-line front end: every command prints one JSON document.

Exit codes: 0 on success, 1 on a domain error (the JSON then carries an
``error`` object), 2 on a usage error.  ``verify`` exits 0 only when every
family passes.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Mapping, Sequence
from fractions import Fraction
from typing import Any

import numpy as np

from . import kummer as km
from . import polarized as pz
from .geometry import enumerate_subgroups
from .harness import FAMILIES, SuiteConfig, run_suite
from .moduli import (
    RosenhainParams,
    SexticModel,
    isogenous_rosenhain_from_theta,
    l_from_theta,
    quadratic_roots,
    richelot_image,
    rosenhain_from_theta,
)
from .polynomials import Poly
from .scalars import DomainError, Scalar, format_scalar, is_exact, parse_scalar, sqrt_exact, to_exact
from .theta import PeriodMatrix, doubled_theta_constants, doubled_theta_values, theta_constants, theta_values

FORMS = ("shioda", "cassels-flynn", "goepel", "gh", "rosenhain-quartic", "octic", "barth")
ENUMERATIONS = ("goepel-groups", "rosenhain-groups", "tetrahedra", "even-eights")
DEFAULT_LAMBDA = ("2", "3", "5")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits on its own; raise instead
        raise UsageError(message)


# ------------------------------------------------------------------ argument handling


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lambda", dest="lam", nargs=3, metavar=("L1", "L2", "L3"), help='Rosenhain roots, "n/d" or integers')
    p.add_argument("--tau", nargs=6, type=float, metavar="X", help="re/im of tau11, tau12, tau22")
    p.add_argument("--z", nargs=4, type=float, metavar="X", help="re/im of z1, z2")
    p.add_argument("--node", nargs=4, metavar="X", help="seed node [w : x : y : z]")
    p.add_argument("--params", nargs="+", metavar="X", help="surface parameters given directly")
    p.add_argument("--domain", choices=("exact", "numeric"), help="scalar domain (default: exact unless --tau is given)")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out", help="write the JSON here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kummer-forms", description="Kummer surface normal forms and identity checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("theta-eval", help="the sixteen theta values at (z, tau) and at (z, 2 tau)")
    _add_common(p)
    p = sub.add_parser("moduli-from-tau", help="Rosenhain roots of the curve and of its isogenous curve")
    _add_common(p)
    p = sub.add_parser("richelot", help="Richelot image of the Rosenhain sextic")
    _add_common(p)
    p = sub.add_parser("form", help="build a surface model")
    p.add_argument("kind", choices=FORMS)
    _add_common(p)
    p = sub.add_parser("enumerate", help="finite-geometry enumerations")
    p.add_argument("what", choices=ENUMERATIONS)
    _add_common(p)
    p = sub.add_parser("verify", help="run the identity suite and print the manifest")
    _add_common(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=50, help="rational trials per exact family")
    p.add_argument("--taus", type=int, default=20, help="random period matrices per numeric family")
    p.add_argument("--families", nargs="+", choices=sorted(FAMILIES), metavar="FAMILY")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-timing", action="store_true", help="omit timing fields (byte-stable output)")
    return parser


def _domain(args: argparse.Namespace) -> str:
    if args.domain:
        return args.domain
    return "numeric" if args.tau else "exact"


def _scalars(values: Sequence[str], domain: str) -> tuple[Scalar, ...]:
    try:
        exact = tuple(to_exact(v) for v in values)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not a rational number: {exc}") from None
    return exact if domain == "exact" else tuple(complex(v) for v in exact)


def _tau(args: argparse.Namespace) -> PeriodMatrix:
    if args.tau is None:
        raise DomainError("this command needs --tau")
    return PeriodMatrix.from_reals(*args.tau)


def _numeric_only(args: argparse.Namespace, what: str) -> None:
    if _domain(args) == "exact":
        raise DomainError(f"{what} is transcendental in tau; exact mode is not supported")


def _lambda(args: argparse.Namespace, default: Sequence[str] | None = None) -> RosenhainParams:
    if args.lam is not None:
        return RosenhainParams(*_scalars(args.lam, _domain(args)))
    if args.tau is not None:
        _numeric_only(args, "lambda from tau")
        t = theta_constants(_tau(args))
        return rosenhain_from_theta([v * v for v in t[:10]])
    if default is not None:
        return RosenhainParams(*_scalars(default, _domain(args)))
    raise DomainError("this command needs --lambda or --tau")


def _z(args: argparse.Namespace) -> np.ndarray:
    if args.z is None:
        return np.zeros(2, dtype=complex)
    r1, i1, r2, i2 = args.z
    return np.array([complex(r1, i1), complex(r2, i2)])


def _fmt(values) -> list[Any]:
    return [format_scalar(v) for v in values]


# ------------------------------------------------------------------ commands


def cmd_theta_eval(args: argparse.Namespace) -> dict[str, Any]:
    _numeric_only(args, "theta evaluation")
    tau, z = _tau(args), _z(args)
    return {
        "tau": tau.as_reals(),
        "z": [[v.real, v.imag] for v in z],
        "theta": _fmt(theta_values(z, tau)),
        "doubled_theta": _fmt(doubled_theta_values(z, tau)),
    }


def cmd_moduli_from_tau(args: argparse.Namespace) -> dict[str, Any]:
    _numeric_only(args, "moduli from tau")
    tau = _tau(args)
    t, T = theta_constants(tau), doubled_theta_constants(tau)
    lam = rosenhain_from_theta([v * v for v in t[:10]])
    return {
        "tau": tau.as_reals(),
        "lambda": _fmt(lam),
        "isogenous_lambda": _fmt(isogenous_rosenhain_from_theta(t)),
        "l": format_scalar(l_from_theta(T)),
        "L": format_scalar(l_from_theta(t)),
    }


def _rational_roots(q) -> list[Scalar | None]:
    a2, a1, a0 = q
    if is_exact(a1 * a1 - 4 * a2 * a0) and a2 != 0 and sqrt_exact(Fraction(a1 * a1 - 4 * a2 * a0)) is None:
        raise DomainError("image roots are not rational; use --domain numeric")
    return quadratic_roots(q)


def cmd_richelot(args: argparse.Namespace) -> dict[str, Any]:
    lam = _lambda(args)
    image = richelot_image(SexticModel.rosenhain(lam))
    out = {"lambda": lam.to_json(), "pairing": [[1, 5], [2, 3], [4, 6]], **image.to_json()}
    roots = [r for q in (image.AB, image.AC, image.BC) for r in _rational_roots(q)]
    out["image_roots"] = [None if r is None else format_scalar(r) for r in roots]
    return out


def _node(args: argparse.Namespace) -> tuple[Scalar, ...]:
    return _scalars(args.node, _domain(args))


def _params(args: argparse.Namespace, count: int) -> tuple[Scalar, ...]:
    if len(args.params) != count:
        raise UsageError(f"--params takes {count} values here")
    return _scalars(args.params, _domain(args))


def _rosenhain_quartic_params(args: argparse.Namespace) -> km.RosenhainQuarticParams:
    if args.params:
        return km.RosenhainQuarticParams(*_params(args, 4))
    if args.node:
        return km.rosenhain_params_from_seed(_node(args))[0]
    _numeric_only(args, "the quartic from tau")
    return km.rosenhain_quartic_params_from_theta(doubled_theta_constants(_tau(args)))


def cmd_form(args: argparse.Namespace) -> dict[str, Any]:
    kind = args.kind
    if kind == "shioda":
        return km.shioda_sextic(_lambda(args)).to_json()
    if kind == "cassels-flynn":
        return km.cassels_flynn(_lambda(args)).quartic.to_json()
    if kind == "goepel":
        if args.node:
            p = km.goepel_params_from_seed(_node(args))
        elif args.lam:
            p = km.goepel_params_from_moduli(_lambda(args))
        else:
            _numeric_only(args, "the quartic from tau")
            p = km.goepel_params_from_theta(theta_constants(_tau(args)))
        return km.goepel_quartic(p).to_json()
    if kind == "gh":
        if args.node:
            p = km.gh_params_from_seed(_node(args))
        elif args.lam:
            p = km.gh_params_from_moduli(_lambda(args))
        else:
            _numeric_only(args, "the quartic from tau")
            p = km.gh_params_from_theta(doubled_theta_constants(_tau(args)))
        return km.gh_quartic(p).to_json()
    if kind == "rosenhain-quartic":
        return km.rosenhain_quartic(_rosenhain_quartic_params(args)).to_json()
    if kind == "octic":
        p = _rosenhain_quartic_params(args)
        return pz.birkenhake_lange_octic(p.a, p.b, p.c, p.d2).to_json()
    # barth
    if args.params:
        bp = pz.BarthParams(*_params(args, 6))
    else:
        _numeric_only(args, "Barth parameters from tau")
        bp = pz.BarthParams.from_theta(theta_constants(_tau(args)))
    return {
        "kind": "barth",
        "params": bp.to_json(),
        "quadrics": [q.to_json() for q in pz.barth_quadrics(bp)],
    }


def cmd_enumerate(args: argparse.Namespace) -> dict[str, Any]:
    what = args.what
    if what in ("goepel-groups", "rosenhain-groups"):
        groups = enumerate_subgroups(what.split("-")[0])
        return {"kind": what, "count": len(groups), "translates": sum(len(g.translates) for g in groups), "groups": [g.to_json() for g in groups]}
    lam = _lambda(args, DEFAULT_LAMBDA)
    if _domain(args) != "exact":
        raise DomainError("tetrahedra are found by exact incidence; use rational --lambda")
    tets = km.enumerate_tetrahedra(lam)
    if what == "tetrahedra":
        classes: dict[str, int] = {}
        for t in tets:
            classes[t.kind_class] = classes.get(t.kind_class, 0) + 1
        return {
            "kind": what,
            "lambda": lam.to_json(),
            "goepel": sum(t.kind == "goepel" for t in tets),
            "rosenhain": sum(t.kind == "rosenhain" for t in tets),
            "classes": dict(sorted(classes.items())),
            "tetrahedra": [t.to_json() for t in tets],
        }
    entries = km.even_eight_dictionary(lam, tets)
    return {
        "kind": what,
        "lambda": lam.to_json(),
        "count": len({e["even_eight"] for e in entries if e["even_eight"]}),
        "entries": [{**e, "tropes": [f"T{d}" for d in e["tropes"]]} for e in entries],
    }


def cmd_verify(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    config = SuiteConfig(
        seed=args.seed,
        rational_trials=args.trials,
        numeric_taus=args.taus,
        tolerance=args.tol,
        selected_families=frozenset(args.families) if args.families else None,
        workers=args.workers,
    )
    manifest = run_suite(config)
    return manifest.to_json(timing=not args.no_timing), 0 if manifest.all_pass else 1


# ------------------------------------------------------------------ JSON round trip


def load_form(data: Mapping[str, Any]) -> Any:
    """Parse a form document back into model objects (inverse of ``form``)."""
    kind = data.get("kind")
    if kind == "barth":
        return {
            "params": {k: parse_scalar(v) for k, v in data["params"].items()},
            "quadrics": [pz.QuadricForm.from_json(q) for q in data["quadrics"]],
        }
    if kind == "shioda-sextic":
        return {
            "lambda": [parse_scalar(v) for v in data["lambda"]],
            "lines": {k: [parse_scalar(c) for c in v] for k, v in data["lines"].items()},
            "equation": Poly.from_json(data),
        }
    if kind is None:
        raise DomainError("form document has no kind")
    return km.ProjectiveSurface.from_json(data)


def dump_form(obj: Any, kind: str) -> dict[str, Any]:
    if isinstance(obj, km.ProjectiveSurface):
        return obj.to_json()
    if kind == "barth":
        return {
            "kind": "barth",
            "params": {k: format_scalar(v) for k, v in obj["params"].items()},
            "quadrics": [q.to_json() for q in obj["quadrics"]],
        }
    return {
        "kind": "shioda-sextic",
        "lambda": _fmt(obj["lambda"]),
        "conic": "z2^2 - 4*z1*z3",
        "lines": {k: _fmt(v) for k, v in obj["lines"].items()},
        **obj["equation"].to_json(),
    }


# ------------------------------------------------------------------ entry point

_COMMANDS = {
    "theta-eval": cmd_theta_eval,
    "moduli-from-tau": cmd_moduli_from_tau,
    "richelot": cmd_richelot,
    "form": cmd_form,
    "enumerate": cmd_enumerate,
}


def _emit(doc: Mapping[str, Any], out: str | None) -> None:
    text = json.dumps(doc, indent=1, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"kummer-forms: error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.command == "verify":
            doc, code = cmd_verify(args)
        else:
            doc, code = _COMMANDS[args.command](args), 0
    except UsageError as exc:
        print(f"kummer-forms: error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, ZeroDivisionError) as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc) or "division by zero", "command": args.command}}, None)
        return 1
    _emit(doc, getattr(args, "out", None))
    return code


if __name__ == "__main__":
    sys.exit(main())
