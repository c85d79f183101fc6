"""Command-line front end.

Exit codes: 0 when everything asked for passes, 1 when an identity fails,
2 on a configuration error.  JSON output carries ``"schema": "rho-fourier/1"``,
sorted keys and floats rounded to 12 significant digits, so runs with the
same arguments are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import factors_arch as fa
from . import factors_nonarch as fn
from .errors import RhoFourierError
from .gl1_oracle import CellFunction, compare_spectral_direct, gl1_fourier_direct
from .rho_transform import basic_function, cone_check, convergence_cone, fourier_function
from .spherical_gl import SphericalFunction, satake_basis
from .verify import SUITES, run_suite
from .wd_params import AlgebraicRep, UnramWDRep

SCHEMA = "rho-fourier/1"


class ConfigError(Exception):
    pass


def _num(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, complex):
        if x.imag == 0:
            return _num(x.real)
        return {"re": _num(x.real), "im": _num(x.imag)}
    if isinstance(x, float):
        if x != x or x in (float("inf"), float("-inf")):
            return str(x)
        return float(f"{x:.12g}")
    if isinstance(x, dict):
        return {str(k): _num(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_num(v) for v in x]
    if hasattr(x, "item"):  # numpy scalars
        return _num(x.item())
    return str(x)


def _write(text):
    """Write to stdout; a reader that closed the pipe early is not an error."""
    try:
        sys.stdout.write(text)
        sys.stdout.flush()
    except BrokenPipeError:
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())


def emit_json(obj, out=None):
    payload = {"schema": SCHEMA}
    payload.update(obj)
    text = json.dumps(_num(payload), sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        _write(text)


def _fmt(x) -> str:
    return f"{x:.12g}"


def _q(args):
    try:
        q = int(args.q)
    except ValueError:
        raise ConfigError(f"--q must be an integer prime power, got {args.q!r}") from None
    if q < 2 or not _prime_power(q):
        raise ConfigError(f"--q must be a prime power >= 2, got {q}")
    return q


def _prime_power(q):
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1


def _qs(text):
    out = []
    for part in str(text).split(","):
        part = part.strip()
        try:
            q = int(part)
        except ValueError:
            raise ConfigError(f"bad q value {part!r}") from None
        if q < 2 or not _prime_power(q):
            raise ConfigError(f"q must be a prime power >= 2, got {q}")
        out.append(q)
    return tuple(out)


def _threads():
    raw = os.environ.get("RHO_FOURIER_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"RHO_FOURIER_THREADS must be an integer, got {raw!r}") from None
    if n < 1:
        raise ConfigError("RHO_FOURIER_THREADS must be >= 1")
    return n


def _rho(args):
    text = getattr(args, "rho", None)
    path = getattr(args, "rho_file", None)
    if path:
        with open(path) as fh:
            return AlgebraicRep.from_json(fh.read())
    if text is None:
        return None
    if text.strip().startswith("{"):
        return AlgebraicRep.from_json(text)
    return AlgebraicRep.named(args.group, text)


# -------------------------------------------------------------------- commands


def cmd_gamma(args):
    phi = UnramWDRep.parse(args.blocks)
    q = _q(args)
    if args.backend == "numeric":
        val = fn.gamma_half_numeric(phi, q)
        emit_json({"blocks": args.blocks, "q": q, "gamma_half": val}, args.out)
        return 0
    g = fn.gamma_factor(phi)
    half = fn.value_at_half(g)
    emit_json(
        {
            "blocks": args.blocks,
            "q": q,
            "gamma": str(g),
            "L": str(fn.l_factor(phi)),
            "epsilon": str(fn.epsilon_factor(phi)),
            "conductor_exponent": fn.conductor_exponent(phi),
            "gamma_half": None if half is None else str(half),
            "gamma_half_at_q": None if half is None else str(half.specialize(q)),
        },
        args.out,
    )
    return 0


def cmd_lfactor(args):
    phi = UnramWDRep.parse(args.blocks)
    q = _q(args)
    L = fn.l_factor(phi)
    if args.json:
        emit_json({"blocks": args.blocks, "q": q, "L": str(L)}, args.out)
    else:
        _write(str(L) + "\n")
    return 0


def cmd_arch_bounds(args):
    if args.d not in (1, 2):
        raise ConfigError("--d must be 1 or 2")
    Q = [k / 2 for k in range(int(2 * args.qmax) + 1)]
    s = [complex(re, im / 2) for re in (-0.5, -0.25, 0.0, 0.25, 0.5) for im in range(-40, 41)]
    rep = fa.verify_moreno(args.d, Q, s)
    lines = ["Q\tre_s\tim_s\tlhs\trhs\tslack"]
    for Qv, sv, lhs, rhs, sl in rep.rows():
        lines.append("\t".join(_fmt(x) for x in (Qv, sv.real, sv.imag, lhs, rhs, sl)))
    _write("\n".join(lines) + "\n")
    return 0 if rep.passes() else 1


def _mu_arg(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ConfigError(f"--mu must be comma-separated integers, got {text!r}") from None


def cmd_satake(args):
    mu = _mu_arg(args.mu)
    P = satake_basis(args.group, mu)
    payload = {"group": args.group, "mu": list(mu), "satake": str(P)}
    if args.chi:
        q = _q(args)
        chi = [complex(x) for x in args.chi.split(",")]
        payload["q"] = q
        payload["value"] = P.evaluate(chi, q)
    emit_json(payload, args.out)
    return 0


def cmd_basic_fn(args):
    rho = _rho(args)
    q = _q(args)
    b = basic_function(rho, args.trunc)
    if args.out:
        emit_json({"rho": rho.to_json(), "trunc": args.trunc, "function": b.to_json()}, args.out)
    lines = ["mu\tcoeff\tvalue"]
    for mu, c in sorted(b.cells.items()):
        lines.append(f"{','.join(map(str, mu))}\t{c}\t{_fmt(c.evaluate(q))}")
    _write("\n".join(lines) + "\n")
    return 0


def _load_function(path):
    with open(path) as fh:
        data = json.load(fh)
    if "function" in data:
        data = data["function"]
    return SphericalFunction.from_json(data)


def cmd_fourier(args):
    f = _load_function(args.input)
    rho = AlgebraicRep.named(f.group, args.rho) if not args.rho.strip().startswith("{") else AlgebraicRep.from_json(args.rho)
    Ff = fourier_function(f, rho, args.trunc, psi=args.psi)
    emit_json({"rho": rho.to_json(), "trunc": args.trunc, "psi": args.psi, "function": Ff.to_json()}, args.out)
    return 0


def cmd_verify(args):
    qs = _qs(args.q)
    rho = _rho(args)
    suites = SUITES if args.suite == "all" else (args.suite,)
    threads = _threads()

    def work(suite):
        return run_suite(suite, qs, args.seed, args.trunc, args.precision, rho)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, suites))  # map keeps suite order
    else:
        parts = [work(s) for s in suites]
    results = [r for part in parts for r in part]
    ok = all(r.passed for r in results)
    emit_json(
        {
            "suite": args.suite,
            "q": list(qs),
            "seed": args.seed,
            "trunc": args.trunc,
            "passed": ok,
            "results": [r.to_json() for r in results],
        },
        args.out,
    )
    return 0 if ok else 1


def cmd_cone_check(args):
    rho = _rho(args)
    if rho is None:
        raise ConfigError("cone-check needs --rho or --rho-file")
    rep = cone_check(rho)
    payload = {"rho": rho.to_json(), **rep.to_json()}
    payload["convergence_cone"] = [str(h) for h in convergence_cone(rho)]
    emit_json(payload, args.out)
    return 0


def cmd_oracle_gl1(args):
    q = _q(args)
    if args.f:
        with open(args.f) as fh:
            data = json.load(fh)
        vals = data.get("values", data)
        f = CellFunction({int(k): Fraction(str(v)) for k, v in vals.items()})
    else:
        f = CellFunction({0: 1})
    dev = compare_spectral_direct(f, q, args.window)
    direct = gl1_fourier_direct(f, q, max([args.window] + [abs(k) for k in f.values]))
    emit_json(
        {
            "q": q,
            "window": args.window,
            "input": {str(k): str(v) for k, v in sorted(f.values.items())},
            "direct": {str(j): direct[j] for j in range(-args.window, args.window + 1)},
            "max_deviation": dev,
            "passed": dev <= args.precision,
        },
        args.out,
    )
    return 0 if dev <= args.precision else 1


# ---------------------------------------------------------------------- parser


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", default="3", help="residue field size (prime power)")
    common.add_argument("--trunc", type=int, default=8, help="truncation grade N")
    common.add_argument("--precision", type=float, default=1e-9, help="tolerance for numeric identities")
    common.add_argument("--backend", choices=("exact", "numeric"), default="exact")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write JSON here instead of standard output")
    common.add_argument("--group", default="GL2", help="GL1, GL2 or GL1^n")

    p = argparse.ArgumentParser(prog="rho-fourier", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gamma", parents=[common], help="gamma factor of an unramified parameter")
    s.add_argument("--blocks", required=True, help='blocks "x:a,x:a", e.g. "1:2,v:1"')
    s.set_defaults(func=cmd_gamma)

    s = sub.add_parser("lfactor", parents=[common], help="L-factor as a rational function of t")
    s.add_argument("--blocks", required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_lfactor)

    s = sub.add_parser("arch-bounds", parents=[common], help="TSV grid for the Gamma ratio bound")
    s.add_argument("--d", type=int, default=1)
    s.add_argument("--qmax", type=float, default=10)
    s.set_defaults(func=cmd_arch_bounds)

    s = sub.add_parser("satake", parents=[common], help="Satake transform of a Cartan cell")
    s.add_argument("--mu", required=True)
    s.add_argument("--chi", help="comma-separated complex Satake values to evaluate at")
    s.set_defaults(func=cmd_satake)

    s = sub.add_parser("basic-fn", parents=[common], help="basic function coefficients")
    s.add_argument("--rho", default="std")
    s.set_defaults(func=cmd_basic_fn)

    s = sub.add_parser("fourier", parents=[common], help="rho-Fourier transform of a spherical function")
    s.add_argument("--in", dest="input", required=True, help="JSON spherical function")
    s.add_argument("--rho", default="std")
    s.add_argument("--psi", choices=("psi", "psibar"), default="psi")
    s.set_defaults(func=cmd_fourier)

    s = sub.add_parser("verify", parents=[common], help="run identity suites")
    s.add_argument("--suite", choices=SUITES + ("all",), default="all")
    s.add_argument("--rho", help="representation for the cone suite (name or JSON)")
    s.add_argument("--rho-file")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("cone-check", parents=[common], help="strong convexity of rho's central weights")
    s.add_argument("--rho")
    s.add_argument("--rho-file")
    s.set_defaults(func=cmd_cone_check)

    s = sub.add_parser("oracle-gl1", parents=[common], help="GL1 spectral transform against the Tate transform")
    s.add_argument("--window", type=int, default=8)
    s.add_argument("--f", help='JSON {"values": {valuation: coefficient}}')
    s.set_defaults(func=cmd_oracle_gl1)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return int(exc.code or 0)
    try:
        if getattr(args, "trunc", 0) < 0:
            raise ConfigError("--trunc must be >= 0")
        return args.func(args)
    except (ConfigError, ValueError, RhoFourierError, OSError, json.JSONDecodeError, KeyError) as exc:
        sys.stderr.write(f"rho-fourier: configuration error: {exc}\n")
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
