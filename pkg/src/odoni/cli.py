"""Command line entry point: ``odoni <command> ...``.

Exit codes: 0 success, 1 checked and failed, 2 usage error or malformed
input. Every command prints JSON; ``sample --stream`` prints one JSON object
per line.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import tomli
import tomli_w

from . import __version__
from .arith import as_rational
from .bundle import (MalformedCertificate, build_bundle, orbit_json,
                     params_to_json, rat, timestamp, verify_bundle)
from .certificates import build_poly, critical_orbit
from .chebotarev import (compare_to_group, density_from_samples, frobenius_sample,
                         good_primes, sample_primes)
from .errors import DomainError
from .newton import newton_polygon
from .params import OdoniParams, check_hypotheses, choose_a, search_A
from .poly import PolyRat
from .treegroup import (EXHAUSTIVE_CAP, GroupHandle, gamma_order, standard_sigmas,
                        wreath_order)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """Parameters plus run knobs, as stored in a TOML file."""

    n: int | None = None
    a: int | None = None
    A: Fraction | None = None
    s_ram: list = field(default_factory=list)
    coeffs: list | None = None      # explicit polynomial, lowest degree first
    seed: int = 0
    workers: int = 1
    budget: int = 200_000

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        known = {"n", "a", "A", "s_ram", "coeffs", "seed", "workers", "budget"}
        extra = set(d) - known
        if extra:
            raise UsageError(f"unknown config keys: {sorted(extra)}")
        cfg = cls(**d)
        if cfg.A is not None:
            cfg.A = as_rational(str(cfg.A))
        if cfg.coeffs is not None:
            cfg.coeffs = [as_rational(str(c)) for c in cfg.coeffs]
        return cfg

    def to_dict(self) -> dict:
        out: dict = {}
        for key in ("n", "a"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        if self.A is not None:
            out["A"] = str(self.A)
        out["s_ram"] = list(self.s_ram)
        if self.coeffs is not None:
            out["coeffs"] = [str(c) for c in self.coeffs]
        out.update(seed=self.seed, workers=self.workers, budget=self.budget)
        return out

    def params(self) -> OdoniParams:
        if self.n is None or self.a is None or self.A is None:
            raise UsageError("config needs n, a and A")
        return OdoniParams(self.n, self.a, self.A, self.s_ram)

    def poly(self) -> PolyRat:
        if self.coeffs is not None:
            return PolyRat(self.coeffs)
        return build_poly(self.params())


def load_config(path: str) -> RunConfig:
    try:
        with open(path, "rb") as fh:
            return RunConfig.from_dict(tomli.load(fh))
    except (OSError, tomli.TOMLDecodeError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc


def dump_config(cfg: RunConfig) -> str:
    return tomli_w.dumps(cfg.to_dict())


def _seed(default: int) -> int:
    env = os.environ.get("ODONI_SEED")
    if env is None:
        return default
    try:
        return int(env)
    except ValueError as exc:
        raise UsageError(f"ODONI_SEED must be an integer, got {env!r}") from exc


def _emit(obj, out=None) -> None:
    text = json.dumps(obj, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# -- commands --------------------------------------------------------------

def cmd_search(args) -> int:
    s_ram = _int_list(args.s_ram)
    a = args.a if args.a is not None else choose_a(args.n)
    try:
        found = search_A(args.n, a, s_ram, args.height_bound, args.count)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    results = [{"params": params_to_json(OdoniParams(args.n, a, A, s_ram)),
                "report": rep.to_json()} for A, rep in found]
    _emit({"command": "search", "n": args.n, "a": a, "results": results,
           "timestamp": timestamp()})
    return 0 if results else 1


def cmd_certify(args) -> int:
    cfg = load_config(args.params)
    params = cfg.params()
    budget = args.budget if args.budget is not None else cfg.budget
    seed = _seed(args.seed if args.seed is not None else cfg.seed)
    report = check_hypotheses(params, budget=max(budget, 1))
    if not report.valid:
        failed = [h for h, ok in report.verdicts.items() if not ok]
        _emit({"command": "certify", "error": "hypotheses fail", "failed": failed,
               "report": report.to_json(), "timestamp": timestamp()})
        return 2
    doc = build_bundle(params, args.k_max, budget, seed, report)
    _emit(doc, args.out)
    print(doc["summary"]["text"], file=sys.stderr)
    return 0 if doc["summary"]["valid"] else 1


def cmd_verify(args) -> int:
    try:
        with open(args.certificate) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        _emit({"command": "verify", "valid": False, "malformed": str(exc)})
        return 2
    try:
        res = verify_bundle(doc)
    except MalformedCertificate as exc:
        _emit({"command": "verify", "valid": False, "malformed": str(exc)})
        return 2
    _emit({"command": "verify", "valid": res.valid, "problems": res.problems})
    return 0 if res.valid else 1


def cmd_group(args) -> int:
    try:
        gens = standard_sigmas(args.n, args.a, args.k, args.N, allow_large=args.allow_large)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    h = GroupHandle(gens)
    inside = h.stabilizer_order(args.N) == gamma_order(args.n, args.k, args.N)
    _emit({"command": "group", "n": args.n, "a": args.a, "k": args.k, "N": args.N,
           "contains_gamma": inside, "order": h.order(),
           "gamma_order": gamma_order(args.n, args.k, args.N),
           "wreath_order": wreath_order(args.n, args.k), "timestamp": timestamp()})
    return 0 if inside else 1


def _density_json(rep) -> dict:
    return {"p_max": rep.p_max, "primes": rep.primes, "counts": list(rep.counts),
            "estimates": list(rep.estimates),
            "predictions": [None if p is None else rat(p) for p in rep.predictions],
            "std_errors": list(rep.std_errors),
            "within_3se": rep.within(3.0)}


def cmd_sample(args) -> int:
    cfg = load_config(args.params)
    f = cfg.poly()
    n, k = f.degree, args.k
    workers = args.workers if args.workers is not None else cfg.workers
    if args.stream:
        samples = []
        for p in good_primes(f, k, args.p_max):
            s = frobenius_sample(f, k, p)
            samples.append(s)
            print(json.dumps({"p": p, "level_types": [list(t) for t in s.level_types],
                              "has_root_at": list(s.has_root_at)}))
    else:
        samples = sample_primes(f, k, args.p_max, workers)
    if not samples:
        raise UsageError("no good primes below p_max")
    rep = density_from_samples(samples, n, k, args.p_max)
    tv = compare_to_group(samples, n, k) if wreath_order(n, k) <= EXHAUSTIVE_CAP else None
    summary = {"command": "sample", "k": k, "density": _density_json(rep),
               "total_variation": tv, "timestamp": timestamp()}
    if args.stream:
        print(json.dumps(summary))
    else:
        _emit(summary)
    return 0


def cmd_orbit(args) -> int:
    params = load_config(args.params).params()
    orbit = critical_orbit(params, args.k)
    _emit({"command": "orbit", "params": params_to_json(params), "c0": rat(orbit.c0),
           "records": orbit_json(orbit), "failure": orbit.failure,
           "timestamp": timestamp()})
    return 0 if orbit.valid else 1


def cmd_polygon(args) -> int:
    try:
        coeffs = [Fraction(c.strip()) for c in args.coeffs.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad coefficient list: {exc}") from exc
    poly = newton_polygon(PolyRat(coeffs), args.p)
    _emit({"command": "polygon", "p": args.p, "coeffs": [rat(c) for c in coeffs],
           "segments": [[rat(s), length] for s, length in poly.segments],
           "root_valuations": [rat(v) for v in poly.root_valuations()],
           "zero_roots": poly.zero_roots})
    return 0


def _int_list(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad prime list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="odoni", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--json", action="store_true", help="JSON output (the only mode)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", help="find valid A for degree n")
    p.add_argument("n", type=int)
    p.add_argument("--a", type=int, default=None, help="override choose_a(n)")
    p.add_argument("--s-ram", default="", help="comma-separated ramified primes")
    p.add_argument("--count", type=int, default=3)
    p.add_argument("--height-bound", type=int, default=10 ** 6)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("certify", help="build a certificate bundle")
    p.add_argument("params")
    p.add_argument("--k-max", type=int, default=3)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="re-check a certificate bundle")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("group", help="does <standard sigmas> contain Gamma(N)?")
    for name in ("n", "a", "k", "N"):
        p.add_argument(name, type=int)
    p.add_argument("--allow-large", action="store_true")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("sample", help="Frobenius statistics over good primes")
    p.add_argument("params")
    p.add_argument("k", type=int)
    p.add_argument("p_max", type=int)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--stream", action="store_true", help="newline-delimited JSON")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("orbit", help="dump the critical orbit")
    p.add_argument("params")
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("polygon", help="Newton polygon of a polynomial at p")
    p.add_argument("--coeffs", required=True, help="c0,c1,... lowest degree first")
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_polygon)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"odoni {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
