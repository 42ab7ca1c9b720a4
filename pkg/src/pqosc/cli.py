"""Command-line front end.

Exit status: 0 on success, 1 on invalid input, 2 when a check fails
(relation residual above tolerance, positivity violation, no representation).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Any, Dict, List, Optional, Sequence

from . import fock, positivity, representations, spectrum, structure
from .errors import (
    DeformationError,
    MissingParameterError,
    NoRepresentationError,
    OutOfRangeError,
    PositivityError,
)
from .params import (
    FIELDS,
    DeformationParams,
    DeformationPreset,
    PresetName,
    TOL_REGIME,
    classify_regime,
    from_preset,
    textbook_f,
)

EXIT_OK, EXIT_INVALID, EXIT_CHECK = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# serialization

def fmt_number(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def dumps(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """JSON with floats at 17 significant digits; infinities become strings."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        s = fmt_number(obj)
        return json.dumps(s) if s in ("inf", "-inf", "nan") else s
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "item"):  # numpy scalar
        return dumps(obj.item(), indent, _level)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (int, float)):
        return fmt_number(v)
    if hasattr(v, "item"):
        return _cell(v.item())
    return str(v)


class Report:
    """Metadata plus an optional table; rendered as json, csv or text."""

    def __init__(self, meta: Dict[str, Any], columns: Sequence[str] = (), rows: Sequence[Sequence] = ()):
        self.meta = meta
        self.columns = list(columns)
        self.rows = [list(r) for r in rows]

    def as_dict(self) -> dict:
        out = dict(self.meta)
        if self.columns:
            out["table"] = [dict(zip(self.columns, r)) for r in self.rows]
        return out

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return dumps(self.as_dict()) + "\n"
        buf = io.StringIO()
        if fmt == "csv":
            for k, v in self.meta.items():
                buf.write(f"# {k}={_flat(v)}\n")
            if self.columns:
                writer = csv.writer(buf, lineterminator="\n")
                writer.writerow(self.columns)
                writer.writerows([_cell(v) for v in r] for r in self.rows)
            return buf.getvalue()
        for k, v in self.meta.items():
            buf.write(f"{k}: {_flat(v)}\n")
        if self.columns:
            widths = [max(len(c), *(len(_cell(r[i])) for r in self.rows)) if self.rows else len(c)
                      for i, c in enumerate(self.columns)]
            buf.write("  ".join(c.rjust(w) for c, w in zip(self.columns, widths)) + "\n")
            for r in self.rows:
                buf.write("  ".join(_cell(v).rjust(w) for v, w in zip(r, widths)) + "\n")
        return buf.getvalue()


def _flat(v) -> str:
    if isinstance(v, dict):
        return ";".join(f"{k}:{_flat(x)}" for k, x in v.items())
    if isinstance(v, (list, tuple)):
        return "|".join(_flat(x) for x in v)
    return _cell(v)


# ---------------------------------------------------------------------------
# argument handling

def _window(text: str):
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid int value: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _add_param_flags(sp: argparse.ArgumentParser, default_format: str):
    g = sp.add_argument_group("deformation parameters")
    for name in FIELDS:
        g.add_argument(f"--{name}", type=float, default=None)
    g.add_argument("--params", metavar="FILE", help="JSON object with p, q, alpha, beta, nu, gamma")
    g.add_argument("--preset", choices=[p.value for p in PresetName])
    g.add_argument("--p0", type=float, help="preset base parameter p0")
    g.add_argument("--q0", type=float, help="preset base parameter q0")
    sp.add_argument("--tol-regime", type=float, default=TOL_REGIME)
    sp.add_argument("--format", choices=("json", "csv", "text"), default=default_format)
    sp.add_argument("--out", metavar="FILE")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pqosc", description="(p,q;alpha,beta,nu;gamma)-deformed oscillator toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("eval", help="table of the structure function f(n)")
    _add_param_flags(sp, "csv")
    sp.add_argument("--n-max", type=int, default=10)
    sp.add_argument("--log", action="store_true", help="add a ln|f| column (works past overflow)")

    sp = sub.add_parser("positivity", help="admissible gamma interval and scan of f")
    _add_param_flags(sp, "json")
    sp.add_argument("--n-max", type=_positive_int, default=40)

    sp = sub.add_parser("classify", help="classify an irreducible representation")
    _add_param_flags(sp, "json")
    sp.add_argument("--nu0", type=float, default=0.0)
    sp.add_argument("--c0", type=float, default=1.0)
    sp.add_argument("--lambda0", type=float, default=None)
    sp.add_argument("--window", type=_window, default=None, metavar="LO..HI",
                    help="index window; write --window=-3..3 when LO is negative")
    sp.add_argument("--tol", type=float, default=fock.DEFAULT_TOL)

    sp = sub.add_parser("spectrum", help="energy levels of the deformed oscillator")
    _add_param_flags(sp, "csv")
    sp.add_argument("--n-max", type=int, default=10)
    sp.add_argument("--hbar-omega", type=float, default=1.0)
    sp.add_argument("--parametrized", action="store_true", help="add the (k, mu) closed-form column")

    sp = sub.add_parser("verify", help="check the defining relations on a truncated Fock space")
    _add_param_flags(sp, "json")
    sp.add_argument("--dim", type=_positive_int, default=16)
    sp.add_argument("--tol", type=float, default=fock.DEFAULT_TOL)
    sp.add_argument("--bracket-n", type=int, default=None,
                    help="degree of the bracket identity to check (default: 1..min(5, dim-2); 0 skips)")

    sp = sub.add_parser("limits", help="recovery of known deformations and the harmonic limit")
    _add_param_flags(sp, "json")
    sp.add_argument("--n-max", type=int, default=30)
    sp.add_argument("--tol", type=float, default=1e-10)
    return parser


def resolve_params(args) -> DeformationParams:
    given = {k: getattr(args, k) for k in FIELDS if getattr(args, k) is not None}
    if args.params and args.preset:
        raise UsageError("--params and --preset are mutually exclusive")
    if args.params:
        if given:
            raise UsageError("--params cannot be combined with individual parameter flags")
        with open(args.params) as fh:
            return DeformationParams.from_json(fh.read())
    if args.preset:
        name = PresetName(args.preset)
        if name is PresetName.BURBAN:
            if args.q0 is None:
                raise UsageError("--preset burban needs --q0")
            bad = set(given) & {"p", "q"}
            if bad:
                raise UsageError(f"--preset burban fixes p = q = q0; drop {sorted(bad)}")
            return from_preset(DeformationPreset(name, (args.q0,), given))
        if given:
            raise UsageError(f"--preset {name.value} cannot be combined with {sorted(given)}")
        if name is PresetName.UNDEFORMED:
            return from_preset(DeformationPreset(name))
        if args.p0 is None or args.q0 is None:
            raise UsageError(f"--preset {name.value} needs --p0 and --q0")
        return from_preset(DeformationPreset(name, (args.p0, args.q0)))
    if args.p0 is not None or args.q0 is not None:
        raise UsageError("--p0/--q0 only apply together with --preset")
    return DeformationParams(**given)


def _echo(params: DeformationParams, tol_regime: float) -> dict:
    info = classify_regime(params, tol_regime)
    return {
        "params": params.to_dict(),
        "regime": info.regime.value,
        "regime_sign": info.sign.value,
        "discriminant": info.discriminant,
    }


# ---------------------------------------------------------------------------
# subcommands; each returns (Report, exit status)

def cmd_eval(args, params):
    rows = []
    for n in range(args.n_max + 1):
        try:
            v = structure.f_closed(params, n, tol_regime=args.tol_regime)
            value, branch = v.value, v.branch.value
        except OutOfRangeError as exc:
            value = exc.sign * math.inf if exc.sign else 0.0
            branch = classify_regime(params, args.tol_regime).regime.value
        row = [n, value, branch]
        if args.log:
            sign, log_abs = structure.signed_log_f(params, n, tol_regime=args.tol_regime)
            row += [sign, log_abs]
        rows.append(row)
    cols = ["n", "f", "branch"] + (["sign", "log_abs_f"] if args.log else [])
    return Report(_echo(params, args.tol_regime), cols, rows), EXIT_OK


def cmd_positivity(args, params):
    rep = positivity.check_positivity(params, args.n_max, args.tol_regime)
    meta = _echo(params, args.tol_regime)
    meta.update(
        {
            "two_gamma": 2.0 * params.gamma,
            "interval_lower": rep.interval.lower,
            "interval_upper": rep.interval.upper,
            "inside_interval": rep.inside_interval,
            "n_max": args.n_max,
            "empirical_min": rep.empirical_min,
            "n_argmin": rep.n_argmin,
            "verdict": rep.verdict,
            "zero_violation": rep.zero_violation,
        }
    )
    cols = ["interval_lower", "interval_upper", "regime_sign", "empirical_min", "n_argmin", "verdict"]
    row = [rep.interval.lower, rep.interval.upper, rep.regime_sign.value, rep.empirical_min, rep.n_argmin, rep.verdict]
    return Report(meta, cols, [row]), (EXIT_OK if rep.positive else EXIT_CHECK)


def cmd_classify(args, params):
    rp = representations.RepParams.make(params, args.nu0, args.c0, args.lambda0)
    desc = representations.classify_representation(params, rp, tol_regime=args.tol_regime)
    ops = representations.build_rep_matrices(desc, args.window)
    labels = [int(x) for x in ops.labels]
    lo, hi = labels[0], labels[-1]
    lam = representations.lambda_sequence(desc, lo, hi + 1 if hi + 1 in desc.lambda_domain else hi)
    rel = fock.verify_relations(ops, params, args.tol)
    cas = fock.casimir_check(ops, args.tol, w=desc.rep.w)
    meta = _echo(params, args.tol_regime)
    meta.update(desc.to_dict())
    meta["window"] = [lo, hi]
    meta["relations"] = rel.to_dict()
    meta["casimirs"] = cas.to_dict()
    rows = [[lo + i, float(v)] for i, v in enumerate(lam)]
    ok = rel.passed and cas.passed
    return Report(meta, ["n", "lambda"], rows), (EXIT_OK if ok else EXIT_CHECK)


def cmd_spectrum(args, params):
    cfg = spectrum.SpectrumConfig(params, args.hbar_omega)
    table = spectrum.energy_table(cfg, args.n_max, parametrized=args.parametrized)
    meta = _echo(params, args.tol_regime)
    meta["hbar_omega"] = args.hbar_omega
    meta["spectrum_params"] = table.spectrum_params.to_dict()
    cols = ["n", "e_n"] + (["e_n_parametrized"] if args.parametrized else []) + ["spacing"]
    rows = []
    for i, n in enumerate(table.n):
        row = [n, table.e_n[i]]
        if args.parametrized:
            row.append(table.e_n_parametrized[i])
        row.append(table.spacing[i])
        rows.append(row)
    return Report(meta, cols, rows), EXIT_OK


def cmd_verify(args, params):
    if args.dim < 2:
        raise UsageError("--dim must be >= 2")
    ops = fock.build_fock(params, args.dim, tol_regime=args.tol_regime)
    reports = [fock.verify_relations(ops, params, args.tol)]
    if args.bracket_n is None:
        degrees = range(1, min(5, args.dim - 2) + 1)
    elif args.bracket_n == 0:
        degrees = ()
    else:
        degrees = (args.bracket_n,)
    for n in degrees:
        reports.append(fock.verify_bracket_identity(ops, params, n, args.tol))
    reports.append(fock.casimir_check(ops, args.tol))
    rows = []
    for r in reports:
        for name, val in r.residuals.items():
            rows.append([name, val, r.abs_residuals.get(name), r.checked_block, r.tol, val <= r.tol])
    meta = _echo(params, args.tol_regime)
    meta["dim"] = args.dim
    ok = all(r.passed for r in reports)
    meta["pass"] = ok
    return Report(meta, ["check", "residual", "abs_residual", "checked_block", "tol", "pass"], rows), (
        EXIT_OK if ok else EXIT_CHECK
    )


def cmd_limits(args, params):
    """Known deformations recovered from presets and the harmonic-oscillator limit."""
    p0 = args.p0 if args.p0 is not None else 2.0
    q0 = args.q0 if args.q0 is not None else 3.0
    ns = range(args.n_max + 1)
    rows = []

    def dev(a, b):
        return max(abs(x - y) / max(1.0, abs(y)) for x, y in zip(a, b))

    for name in (PresetName.UNDEFORMED, PresetName.CHAKRABARTY_JAGANNATHAN, PresetName.QUESNE):
        preset = DeformationPreset(name, () if name is PresetName.UNDEFORMED else (p0, q0))
        pp = from_preset(preset)
        d = dev([structure.f_closed(pp, n).value for n in ns], [textbook_f(preset, n) for n in ns])
        rows.append([f"preset:{name.value}", d, args.tol, d <= args.tol])

    burban = from_preset(DeformationPreset(PresetName.BURBAN, (q0,), {"nu": 1.0, "alpha": 1.0, "gamma": 0.1}))
    d = dev([structure.f_closed(burban, n).value for n in ns], [structure.f_degenerate(burban, n) for n in ns])
    rows.append(["preset:burban", d, args.tol, d <= args.tol])

    sp = spectrum.SpectrumParams(tau=0.0, rho=0.0, k=0.0, mu=0.0)
    d = max(abs(spectrum.energy_parametrized(sp, 0.0, 0.0, 1.0, n) - (n + 0.5)) for n in ns)
    rows.append(["harmonic_limit", d, 1e-12, d <= 1e-12])
    cfg = spectrum.SpectrumConfig(from_preset(DeformationPreset(PresetName.UNDEFORMED)))
    d = max(abs(spectrum.energy(cfg, n) - (n + 0.5)) for n in ns)
    rows.append(["undeformed_spectrum", d, 1e-12, d <= 1e-12])

    meta = _echo(params, args.tol_regime)
    meta["p0"], meta["q0"] = p0, q0
    ok = all(r[-1] for r in rows)
    meta["pass"] = ok
    return Report(meta, ["check", "max_deviation", "tol", "pass"], rows), (EXIT_OK if ok else EXIT_CHECK)


COMMANDS = {
    "eval": cmd_eval,
    "positivity": cmd_positivity,
    "classify": cmd_classify,
    "spectrum": cmd_spectrum,
    "verify": cmd_verify,
    "limits": cmd_limits,
}


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        params = resolve_params(args)
        report, status = COMMANDS[args.command](args, params)
    except (UsageError, MissingParameterError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INVALID
    except (NoRepresentationError, PositivityError) as exc:
        print(f"check failed: {exc}", file=stderr)
        return EXIT_CHECK
    except (DeformationError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INVALID
    text = report.render(args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
