"""Command line front end: CSV sweeps over k or eta.

Ranges are written ``lo:hi:n`` (inclusive, n points); a bare number is a
single point.  At most one of ``--k`` / ``--eta`` may be a range and that
one becomes the first CSV column.  Exit codes: 0 success, 2 invalid
input, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

import numpy as np

from .boundary import BoundaryCondition, bound_state_idealized, scatter_idealized
from .coefficients import EffectiveCoefficients
from .errors import BentWireError, NoBoundState
from .expmodel import ExpParams, bound_state_exponential, coeffs_exponential, scatter_exponential
from .numeric import (
    CurvatureProfile,
    bound_state_numeric,
    fit_coefficients,
    load_profile,
    scatter_numeric,
)
from .openbook import OpenBookParams, bound_state_openbook, coeffs_openbook, scatter_openbook

MODELS = ("idealized", "openbook", "exponential", "numeric")
K_DET_TOL = 1e-9
UNITARITY_TOL = {"idealized": 1e-12, "openbook": 1e-12, "exponential": 1e-10, "numeric": 1e-10}

EXIT_INVALID = 2
EXIT_NUMERIC = 3


class InvalidSpec(ValueError):
    pass


class NumericFailure(RuntimeError):
    pass


def fmt(value: float) -> str:
    return f"{value + 0.0:.15g}"  # no "-0"


def parse_range(text: str) -> np.ndarray:
    """``lo:hi:n`` -> n inclusive points; a plain number -> one point."""
    if ":" not in text:
        try:
            return np.array([float(text)])
        except ValueError:
            raise InvalidSpec(f"not a number: {text!r}") from None
    parts = text.split(":")
    if len(parts) != 3:
        raise InvalidSpec(f"range must be lo:hi:n, got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise InvalidSpec(f"range must be lo:hi:n, got {text!r}") from None
    if n == 1 and lo == hi:
        return np.array([lo])
    if not (lo < hi and n >= 2):
        raise InvalidSpec(f"range needs lo < hi and n >= 2, got {text!r}")
    return np.linspace(lo, hi, n)


def parse_k_matrix(text: str) -> np.ndarray:
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise InvalidSpec(f"--K must be four comma separated numbers, got {text!r}") from None
    if len(vals) != 4:
        raise InvalidSpec(f"--K must be four comma separated numbers, got {text!r}")
    mat = np.array(vals).reshape(2, 2)
    det = float(np.linalg.det(mat))
    if abs(det - 1.0) > K_DET_TOL:
        raise InvalidSpec(f"--K must have determinant 1 (within {K_DET_TOL}), got {det!r}")
    return mat


@dataclass
class Model:
    """One model at fixed parameters, with the three things the CLI needs."""

    name: str
    scatter: object
    coeffs: object
    bound: object

    @property
    def tol(self) -> float:
        return UNITARITY_TOL[self.name]


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise InvalidSpec(
            f"model {args.model_name!r} requires " + ", ".join(f"--{n}" for n in missing)
        )


def build_model(name: str, args, eta: float | None) -> Model:
    """Instantiate ``name`` at the given eta (None when eta is not swept)."""
    args.model_name = name
    if name == "idealized":
        if args.K is None:
            raise InvalidSpec("model 'idealized' requires --K a,b,c,d")
        bc = BoundaryCondition(args.gamma, parse_k_matrix(args.K), det_tol=K_DET_TOL)
        return _idealized_model(bc)
    if name == "openbook":
        _require(args, "R")
        p = _make(OpenBookParams, args.R, eta)
        return Model(
            name,
            lambda k: scatter_openbook(p, k),
            lambda: coeffs_openbook(p),
            lambda: bound_state_openbook(p),
        )
    if name == "exponential":
        _require(args, "Lambda")
        p = _make(ExpParams, args.Lambda, eta)
        return Model(
            name,
            lambda k: scatter_exponential(p, k),
            lambda: coeffs_exponential(p),
            lambda: bound_state_exponential(p),
        )
    if name == "numeric":
        prof = _numeric_profile(args, eta)

        def bound():
            roots = bound_state_numeric(prof)
            return roots[-1] if roots else math.nan

        return Model(
            name,
            lambda k: scatter_numeric(prof, k),
            lambda: fit_coefficients(prof),
            bound,
        )
    raise InvalidSpec(f"unknown model {name!r}; choose from {', '.join(MODELS)}")


def _idealized_model(bc: BoundaryCondition) -> Model:
    def bound():
        roots = bound_state_idealized(bc)
        return roots[-1] if roots else math.nan

    def coeffs():
        return EffectiveCoefficients(bc.a, bc.b, bc.c, bc.d)

    return Model("idealized", lambda k: scatter_idealized(bc, k), coeffs, bound)


def _make(cls, length, eta):
    if eta is None:
        raise InvalidSpec("--eta is required for this model")
    try:
        return cls(length, eta)
    except ValueError as exc:
        raise InvalidSpec(str(exc)) from None


def _numeric_profile(args, eta) -> CurvatureProfile:
    if args.profile is None:
        raise InvalidSpec("model 'numeric' requires --profile FILE")
    try:
        prof = load_profile(args.profile)
    except (OSError, ValueError) as exc:
        raise InvalidSpec(f"cannot read profile {args.profile!r}: {exc}") from None
    overrides = {"R": args.R, "Lambda": args.Lambda, "eta": eta}
    overrides = {k: v for k, v in overrides.items() if v is not None}
    if not overrides:
        return prof
    if prof.kind == "table":
        raise InvalidSpec("--R/--Lambda/--eta overrides need an openbook or exponential profile")
    params = dict(prof.params)
    params.update({k: v for k, v in overrides.items() if k in params})
    try:
        if prof.kind == "openbook":
            return CurvatureProfile.open_book(params["R"], params["eta"])
        return CurvatureProfile.exponential(params["Lambda"], params["eta"], params["cutoff"])
    except ValueError as exc:
        raise InvalidSpec(str(exc)) from None


def _axes(args, need_k: bool):
    """Return (axis name or None, values along the axis)."""
    ks = parse_range(args.k) if args.k is not None else None
    etas = parse_range(args.eta) if args.eta is not None else None
    if need_k and ks is None:
        raise InvalidSpec("--k is required")
    k_range = args.k is not None and ":" in args.k
    eta_range = args.eta is not None and ":" in args.eta
    if k_range and eta_range:
        raise InvalidSpec("only one of --k and --eta may be a range")
    if eta_range:
        return "eta", etas
    if k_range or need_k:
        return "k", ks
    return None, etas if etas is not None else np.array([math.nan])


def _eta_at(args, axis, value):
    if axis == "eta":
        return float(value)
    return float(parse_range(args.eta)[0]) if args.eta is not None else None


def _scatter_rows(args, model_names, quantity=None):
    axis, values = _axes(args, need_k=True)
    rows = []
    models, models_eta = None, object()
    for value in values:
        eta = _eta_at(args, axis, value)
        k = float(value) if axis == "k" else float(parse_range(args.k)[0])
        if k <= 0:
            raise InvalidSpec(f"k must be positive, got {k}")
        if eta != models_eta:
            models, models_eta = _models_for(args, model_names, eta), eta
        row = [value]
        for model in models:
            amp = _run(lambda: model.scatter(k))
            if abs(amp.unitarity_defect) > model.tol:
                raise NumericFailure(
                    f"{model.name}: |r|^2+|t|^2-1 = {amp.unitarity_defect:.3e} at k={k}"
                )
            if quantity is None:
                row += [amp.reflectance, amp.transmittance,
                        amp.r.real, amp.r.imag, amp.t.real, amp.t.imag]
            else:
                row.append(amp.transmittance if quantity == "transmission" else amp.reflectance)
        rows.append(row)
    return axis, rows


def _models_for(args, names, eta):
    models = []
    physical = None
    for name in names:
        if name == "idealized" and args.K is None:
            # effective junction of the first physical model
            if physical is None:
                raise InvalidSpec("idealized needs --K or a physical model listed before it")
            bc = _run(physical.coeffs).to_boundary_condition()
            models.append(_idealized_model(bc))
            continue
        model = build_model(name, args, eta)
        if physical is None and name != "idealized":
            physical = model
        models.append(model)
    return models


def _run(fn):
    try:
        return fn()
    except BentWireError as exc:
        raise NumericFailure(f"{type(exc).__name__}: {exc}") from exc


def cmd_scatter(args):
    axis, rows = _scatter_rows(args, [args.model])
    header = [axis, "|r|^2", "|t|^2", "re_r", "im_r", "re_t", "im_t"]
    return header, rows


def cmd_compare(args):
    names = []
    for item in args.model:
        names += [n for n in item.split(",") if n]
    if len(names) < 2:
        raise InvalidSpec("compare needs at least two models (repeat --model or use a,b)")
    axis, rows = _scatter_rows(args, names, quantity=args.quantity)
    sym = "|t|^2" if args.quantity == "transmission" else "|r|^2"
    return [axis] + [f"{sym}_{n}" for n in names], rows


def cmd_coeffs(args):
    axis, values = _axes(args, need_k=False)
    rows = []
    for value in values:
        model = build_model(args.model, args, _eta_at(args, axis, value))
        c = _run(model.coeffs)
        row = [c.a, c.b, c.c, c.d, c.residual]
        rows.append([value] + row if axis else row)
    header = ["a", "b", "c", "d", "residual"]
    return ([axis] + header if axis else header), rows


def cmd_bound_state(args):
    axis, values = _axes(args, need_k=False)
    if axis == "k":
        raise InvalidSpec("bound-state sweeps run over --eta only")
    rows = []
    for value in values:
        model = build_model(args.model, args, _eta_at(args, axis, value))
        try:
            kappa = model.bound()
        except NoBoundState:
            kappa = math.nan
        except BentWireError as exc:
            raise NumericFailure(f"{type(exc).__name__}: {exc}") from exc
        if model.name == "idealized":
            kappa_ideal = kappa
        else:
            bc = _run(model.coeffs).to_boundary_condition()
            roots = bound_state_idealized(bc)
            kappa_ideal = roots[-1] if roots else math.nan
        rows.append([value, kappa, kappa_ideal] if axis else [kappa, kappa_ideal])
    header = ["kappa", "kappa_idealized"]
    if axis:
        header = [axis] + header
    elif args.eta is not None:
        header = ["eta"] + header
        rows = [[_eta_at(args, None, None)] + r for r in rows]
    return header, rows


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bentwire",
        description="Scattering and bound states on a sharply bent quantum wire.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, multi_model=False):
        if multi_model:
            p.add_argument("--model", action="append", required=True,
                           help="model to compare (repeat, or comma separated)")
        else:
            p.add_argument("--model", required=True, choices=MODELS)
        p.add_argument("--gamma", type=float, default=0.0, help="junction phase (radians)")
        p.add_argument("--K", help="junction matrix a,b,c,d (row major, det 1)")
        p.add_argument("--R", type=float, help="open book arc radius")
        p.add_argument("--eta", help="half turning angle in radians, or lo:hi:n")
        p.add_argument("--Lambda", type=float, help="exponential smoothing length")
        p.add_argument("--k", help="wavenumber, or lo:hi:n")
        p.add_argument("--profile", help="curvature profile JSON file (numeric model)")
        p.add_argument("--out", default="-", help="output file, '-' for stdout")

    common(sub.add_parser("scatter", help="reflection/transmission sweep"))
    common(sub.add_parser("coeffs", help="effective junction coefficients"))
    common(sub.add_parser("bound-state", help="bound state decay rate kappa"))
    cmp_ = sub.add_parser("compare", help="one quantity for several models")
    common(cmp_, multi_model=True)
    cmp_.add_argument("--quantity", choices=("transmission", "reflection"), default="transmission")
    return parser


COMMANDS = {
    "scatter": cmd_scatter,
    "coeffs": cmd_coeffs,
    "bound-state": cmd_bound_state,
    "compare": cmd_compare,
}


def write_csv(stream, header, rows):
    stream.write(",".join(header) + "\n")
    for row in rows:
        stream.write(",".join(fmt(v) for v in row) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        header, rows = COMMANDS[args.command](args)
    except InvalidSpec as exc:
        print(f"bentwire: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericFailure as exc:
        print(f"bentwire: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if args.out == "-":
        write_csv(sys.stdout, header, rows)
        return 0
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(fh, header, rows)
    except OSError as exc:
        print(f"bentwire: error: cannot write {args.out!r}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return 0


if __name__ == "__main__":
    sys.exit(main())
