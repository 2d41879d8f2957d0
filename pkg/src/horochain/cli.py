"""Command-line front end.

Exit codes: 0 success, 1 failed verification, 2 bad input.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .cf import ContinuedFraction, coefficient_source, convergents_or_none, expand_real, parse_cf
from .chain2d import Arrangement, build_chain, verify_chain
from .clifford import (
    ConvergenceMode,
    CycleND,
    VersorMatrix,
    ahlfors_validate,
    build_nd_chain,
    convergence_check,
    cycle_image_nd,
    cycles_residual,
    lemma6_connecting,
    connecting_direction,
    parse_vectors,
)
from .errors import HorochainError
from .multivector import Multivector, lift
from .numeric import parse_rational
from .render import RenderConfig, load_config, render_chain_svg, render_section_plane

DEFAULT_TERMS = 8


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _source_kind(tokens: Sequence[str]):
    if not tokens:
        raise InputError("--source needs a value")
    head = tokens[0].lower()
    if head in ("e", "pi"):
        if len(tokens) != 1:
            raise InputError(f"--source {head} takes no further arguments")
        return head, None
    if head in ("file", "real"):
        if len(tokens) != 2:
            raise InputError(f"--source {head} needs exactly one argument")
        return head, tokens[1]
    raise InputError(f"unknown source {tokens[0]!r}; use e, pi, 'file PATH' or 'real p/q'")


def load_cf(tokens: Sequence[str], terms: Optional[int]) -> ContinuedFraction:
    kind, arg = _source_kind(tokens)
    if kind == "e":
        return coefficient_source("e", DEFAULT_TERMS if terms is None else terms)
    if kind == "pi":
        return coefficient_source("pi", 12 if terms is None else terms)
    cf = parse_cf(_read(arg)) if kind == "file" else expand_real(parse_rational(arg))
    if terms is not None:
        if terms > len(cf.terms):
            raise InputError(f"--terms {terms} exceeds the {len(cf.terms)} available terms")
        cf = cf.truncated(terms)
    return cf


def load_vectors(tokens: Sequence[str], terms: Optional[int], dim: Optional[int]):
    """Coefficient vectors and an optional translation prefix for the Clifford pipeline.

    Scalar sources (e, pi, real) are placed on the e1 axis.  Since
    ``(x + b e1)^{-1}`` acts on that axis as ``u -> -1/(u + b)``, the j-th
    coefficient is multiplied by ``(-1)^j`` so that the e1 components of the
    partial quotients equal the ordinary convergents.
    """
    kind, arg = _source_kind(tokens)
    if kind == "file":
        vecs = parse_vectors(_read(arg))
        if not vecs:
            raise InputError(f"{arg} contains no coefficient vectors")
        n = len(vecs[0])
        if dim is not None and dim != n:
            raise InputError(f"--dim {dim} does not match the {n}-component vectors in {arg}")
        if terms is not None:
            if terms > len(vecs):
                raise InputError(f"--terms {terms} exceeds the {len(vecs)} available vectors")
            vecs = vecs[:terms]
        return n, [Multivector.vector(n, v) for v in vecs], None
    cf = load_cf(tokens, terms)
    n = dim or 1
    if any(t.a != 1 for t in cf.terms):
        raise InputError("the Clifford pipeline needs a simple continued fraction")
    vecs = [Multivector.vector(n, [(-1) ** j * t.b]) for j, t in enumerate(cf.terms, 1)]
    prefix = None
    if cf.integer_part:
        prefix = VersorMatrix.translation(Multivector.vector(n, [cf.integer_part]))
    return n, vecs, prefix


def _config(args) -> RenderConfig:
    return load_config(args.config) if args.config else RenderConfig()


def _write(path: Optional[str], data: bytes, out):
    if path is None or path == "-":
        out.write(data.decode("utf-8"))
        return
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _fmt_q(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_convergents(args, out) -> int:
    cf = load_cf(args.source, args.terms)
    for n, v in enumerate(convergents_or_none(cf, len(cf.terms)), 1):
        out.write(f"{n} {'inf' if v is None else _fmt_q(v)}\n")
    return 0


def _arrangement(args) -> Arrangement:
    return Arrangement.of(args.arrangement, exact=not args.float)


def cmd_chain(args, out) -> int:
    cf = load_cf(args.source, args.terms)
    if not cf.terms:
        raise InputError("the continued fraction has no terms to draw")
    arr = _arrangement(args)
    chain = build_chain(cf, arr, len(cf.terms), skip_divergent=True)
    if not chain:
        raise InputError("every convergent is infinite; nothing to draw")
    svg = render_chain_svg(chain, _config(args), title=f"{arr.name} chain, {len(chain)} links")
    _write(args.out, svg, out)
    return 0


def cmd_verify(args, out) -> int:
    cf = load_cf(args.source, args.terms)
    if not cf.terms:
        raise InputError("the continued fraction has no terms to verify")
    arr = _arrangement(args)
    chain = build_chain(cf, arr, len(cf.terms), skip_divergent=True)
    report = verify_chain(chain, arr, tol=args.tol)
    out.write(report.to_text())
    out.write(f"summary {len(report) - len(report.failures())}/{len(report)} pass\n")
    return 0 if report.ok else 1


def _nd_checks(chain, tol):
    """Per-link Ahlfors validation and closed-form versus sandwich comparisons."""
    lines, ok = [], True
    for lk in chain:
        M = lk.matrix
        D = M.n + 1
        e = Multivector.basis(D, D)
        arr = chain.arrangement
        val = ahlfors_validate(M)
        checks = [("ahlfors", 0.0, val.ok)]
        if lk.horo_prev is not None:
            img = cycle_image_nd(M, CycleND(0, e, arr.m0))
            r = cycles_residual(img, lk.horo_prev)
            checks.append(("lemma4-formula", r, r <= tol))
        img = cycle_image_nd(M, CycleND(arr.k0, e, 0))
        r = cycles_residual(img, lk.horo_curr)
        checks.append(("lemma5-formula", r, r <= tol))
        x = connecting_direction(M)
        img = cycle_image_nd(M, CycleND(0, lift(x, D) + e.scale(arr.n0), 0))
        r = cycles_residual(img, lemma6_connecting(M, x, arr.n0))
        checks.append(("lemma6-formula", r, r <= tol))
        for name, res, passed in checks:
            ok &= passed
            lines.append(f"link {lk.index} {name} {float(res):.3e} {'pass' if passed else 'fail'}")
    return lines, ok


def cmd_clifford(args, out) -> int:
    n, vecs, prefix = load_vectors(args.source, args.terms, args.dim)
    if not vecs:
        raise InputError("no coefficients to process")
    arr = _arrangement(args)
    chain = build_nd_chain(vecs, arr, n=n, prefix=prefix)
    for lk in chain:
        out.write(f"link {lk.index} partial-quotient {lk.touch_curr}\n")
    lines, ok = _nd_checks(chain, args.tol)
    out.write("".join(s + "\n" for s in lines))
    conns = [lk.connecting for lk in chain if lk.connecting.k != 0]
    modes = [ConvergenceMode.RADIUS_TO_ZERO]
    if arr.n0 != 0:
        modes.append(ConvergenceMode.HEIGHT_TO_ZERO)
    for mode in modes:
        out.write(convergence_check(conns, mode, window=args.window).to_text() + "\n")
    if args.out:
        svg = render_section_plane(chain, _config(args), link=args.link,
                                   title=f"section of the {arr.name} chain")
        _write(args.out, svg, out)
    return 0 if ok else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="horochain", description="Continued fractions as horocycle chains.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, arrangement=False, output=False):
        sp.add_argument("--source", nargs="+", required=True, metavar="SRC",
                        help="e | pi | file PATH | real p/q")
        sp.add_argument("--terms", type=int, default=None, help="number of terms to use")
        sp.add_argument("--tol", type=float, default=1e-12, help="tolerance for float checks")
        if arrangement:
            sp.add_argument("--arrangement", choices=("tangent", "orthogonal", "mixed"), default="tangent")
            sp.add_argument("--float", action="store_true",
                            help="carry sqrt(2) in floating point instead of exactly")
        if output:
            sp.add_argument("--out", default=None, help="SVG output file ('-' for stdout)")
            sp.add_argument("--config", default=None, help="render config file (key = value)")

    common(sub.add_parser("convergents", help="print the convergents P_n/Q_n"))
    common(sub.add_parser("chain", help="draw a planar chain as SVG"), arrangement=True, output=True)
    common(sub.add_parser("verify", help="verify a planar chain"), arrangement=True)
    sp = sub.add_parser("clifford", help="multidimensional continued fraction pipeline")
    common(sp, arrangement=True, output=True)
    sp.add_argument("--dim", type=int, default=None, help="n, the number of generators of the coefficients")
    sp.add_argument("--window", type=int, default=None, help="trailing window for the monotonicity test")
    sp.add_argument("--link", type=int, default=None, help="link whose touch points fix the section plane")
    return p


_COMMANDS = {
    "convergents": cmd_convergents,
    "chain": cmd_chain,
    "verify": cmd_verify,
    "clifford": cmd_clifford,
}


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.terms is not None and args.terms < 0:
        err.write("horochain: --terms must be nonnegative\n")
        return 2
    if getattr(args, "dim", None) is not None and not 1 <= args.dim <= 7:
        err.write("horochain: --dim must lie in 1..7\n")
        return 2
    try:
        return _COMMANDS[args.command](args, out)
    except (InputError, HorochainError) as exc:
        err.write(f"horochain: {exc}\n")
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
