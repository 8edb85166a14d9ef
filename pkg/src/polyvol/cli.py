"""Command-line front end.

    polyvol FILE [--method M] [--seed N] [--beta b1,b2,...] [--dilate S]
                 [--emit-decomposition PATH] [--verify]

The report is plain "key: value" lines in a fixed order.  Everything except
the wall_time_s line depends only on the input and the flags.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path

from .errors import PolyvolError
from .io import decomposition_to_json, load_polytope
from .oracles import ehrhart_fit
from .polytope import PolytopeH, PolytopeStd, PolytopeV, cone_over, h_from_v_2d, std_from_h, vertices_of_h
from .simpcone import simpcone
from .triangulation import fan_triangulate_polygon, pulling_triangulation
from .volume import VolumeResult, volume_brion, volume_from_decomposition, volume_lawrence, volume_triangulation

METHODS = ("simpcone", "lawrence", "triangulation", "fulldim-brion", "ehrhart-oracle")

EXIT_OK, EXIT_ERROR, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2, 3


class NotApplicable(PolyvolError):
    """The method does not apply to this kind of input."""


@dataclass(frozen=True)
class RunConfig:
    input: Path
    method: str = "simpcone"
    seed: int = 0
    beta: tuple[int, ...] | None = None
    dilation: int = 1
    emit_decomposition: Path | None = None
    verify: bool = False


def fmt_rat(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def fmt_approx(x: Fraction) -> str:
    with localcontext() as ctx:
        ctx.prec = 15
        return f"{Decimal(x.numerator) / Decimal(x.denominator)} (approximate)"


def fmt_beta(beta) -> str:
    return "-" if beta is None else ",".join(str(b) for b in beta)


# -- input preparation ---------------------------------------------------------


class Prepared:
    """Lazily derived representations of one input polytope."""

    def __init__(self, p):
        self.p = p
        self._std = None

    @property
    def kind(self) -> str:
        return {PolytopeStd: "std", PolytopeH: "hrep", PolytopeV: "vrep"}[type(self.p)]

    @property
    def dim(self) -> int:
        return self.p.d

    def hrep(self) -> PolytopeH:
        if isinstance(self.p, PolytopeH):
            return self.p
        if isinstance(self.p, PolytopeV):
            if self.p.d != 2:
                raise NotApplicable("needs an H-representation (V to H is only supported in 2D)")
            return h_from_v_2d(self.p)
        raise NotApplicable("needs an H- or V-representation, input is in standard form")

    def std(self) -> PolytopeStd:
        if self._std is None:
            if isinstance(self.p, PolytopeStd):
                self._std = self.p
            else:
                h = self.hrep()
                # an integer shift into the nonnegative orthant keeps volume and lattice
                lows = [min(v[k] for v, _ in vertices_of_h(h)) for k in range(h.d)]
                shift = [max(0, -math.floor(x)) for x in lows]
                if any(shift):
                    h = h.translate(shift)
                self._std = std_from_h(h)
        return self._std


# -- methods -------------------------------------------------------------------


def _fit_beta(beta, length):
    """An explicit beta is used by every method whose beta has this length."""
    return beta if beta is not None and len(beta) == length else None


def run_method(name: str, prep: Prepared, cfg: RunConfig, single: bool) -> tuple[VolumeResult, list[str]]:
    extra: list[str] = []
    beta = cfg.beta

    def pick(length):
        if single:
            return beta
        return _fit_beta(beta, length)

    if name == "simpcone":
        p = prep.std()
        dec = simpcone(cone_over(p).B)
        if cfg.emit_decomposition is not None:
            cfg.emit_decomposition.write_text(decomposition_to_json(dec) + "\n")
            extra.append(f"decomposition: {cfg.emit_decomposition}")
        return volume_from_decomposition(dec, pick(p.n), cfg.seed), extra
    if name == "lawrence":
        h = prep.hrep()
        return volume_lawrence(h, pick(h.d), cfg.seed), extra
    if name == "fulldim-brion":
        h = prep.hrep()
        return volume_brion(h, pick(h.d), cfg.seed), extra
    if name == "triangulation":
        if isinstance(prep.p, PolytopeV) and prep.p.d == 2:
            simplices = fan_triangulate_polygon(prep.p)
        else:
            simplices = pulling_triangulation(prep.hrep())
        return volume_triangulation(simplices), extra
    if name == "ehrhart-oracle":
        fit = ehrhart_fit(prep.std())
        extra.append(f"period: {fit.period_used}")
        return VolumeResult(fit.leading, "ehrhart-oracle", None, 0), extra
    raise ValueError(f"unknown method {name!r}")


def run(cfg: RunConfig, out=sys.stdout) -> int:
    t0 = time.perf_counter()
    lines: list[str] = []

    def emit():
        lines.append(f"wall_time_s: {time.perf_counter() - t0:.4f}")
        out.write("\n".join(lines) + "\n")

    try:
        p = load_polytope(cfg.input)
        if cfg.dilation != 1:
            p = p.dilate(cfg.dilation)
        prep = Prepared(p)
        lines += [
            f"input: {cfg.input}",
            f"kind: {prep.kind}",
            f"dimension: {prep.dim}",
            f"dilation: {cfg.dilation}",
            f"seed: {cfg.seed}",
            f"method: {cfg.method}",
        ]
        status = EXIT_OK
        if cfg.method == "all":
            values = {}
            for name in METHODS:
                try:
                    res, extra = run_method(name, prep, cfg, single=False)
                except PolyvolError as e:
                    lines.append(f"{name}: n/a ({e})")
                    continue
                values[name] = res.value
                if name == "ehrhart-oracle":
                    detail = extra[0].replace(": ", "=")
                else:
                    detail = f"beta={fmt_beta(res.beta)} cones={res.cone_count}"
                lines.append(f"{name}: {fmt_rat(res.value)} {detail}")
            distinct = set(values.values())
            if not values:
                raise PolyvolError("no method applies to this input")
            agree = len(distinct) == 1
            lines.append(f"verdict: {'AGREE' if agree else 'DISAGREE'}")
            value = values[next(iter(values))]
            lines.append(f"volume: {fmt_rat(value)}")
            lines.append(f"volume_approx: {fmt_approx(value)}")
            if not agree:
                status = EXIT_MISMATCH
        else:
            res, extra = run_method(cfg.method, prep, cfg, single=True)
            value = res.value
            lines.append(f"volume: {fmt_rat(value)}")
            lines.append(f"volume_approx: {fmt_approx(value)}")
            lines.append(f"beta: {fmt_beta(res.beta)}")
            lines.append(f"cones: {res.cone_count}")
            lines += extra
        if cfg.verify:
            oracle = ehrhart_fit(prep.std()).leading
            match = oracle == value
            lines.append(f"oracle: {fmt_rat(oracle)}")
            lines.append(f"oracle_match: {'yes' if match else 'no'}")
            if not match:
                status = EXIT_MISMATCH
    except PolyvolError as e:
        lines.append(f"error: {e}")
        emit()
        return EXIT_ERROR
    except OSError as e:
        lines.append(f"error: {e}")
        emit()
        return EXIT_ERROR
    emit()
    return status


def _parse_beta(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"beta must be comma-separated integers, got {text!r}") from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("dilation must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polyvol", description="Exact volumes of rational polytopes.")
    ap.add_argument("input", type=Path, help="polytope file (JSON, kind std/hrep/vrep)")
    ap.add_argument("--method", choices=METHODS + ("all",), default="simpcone")
    ap.add_argument("--seed", type=int, default=0, help="seed for the random beta (default 0)")
    ap.add_argument("--beta", type=_parse_beta, default=None, help="explicit integer beta, e.g. 1,-2,3")
    ap.add_argument("--dilate", type=_positive, default=1, metavar="S", help="use S*P instead of P")
    ap.add_argument("--emit-decomposition", type=Path, default=None, metavar="PATH",
                    help="write the Simpcone decomposition as JSON")
    ap.add_argument("--verify", action="store_true", help="cross-check against Ehrhart interpolation")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        input=args.input,
        method=args.method,
        seed=args.seed,
        beta=args.beta,
        dilation=args.dilate,
        emit_decomposition=args.emit_decomposition,
        verify=args.verify,
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
