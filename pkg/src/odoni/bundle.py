"""Certificate bundles: build every local certificate for a parameter set,
serialize to JSON, and re-verify a bundle from its recorded witnesses.

Rationals are written as ``[numerator, denominator]`` decimal strings and
large integers as decimal strings, so no value ever passes through floating
point.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from importlib import resources

import jsonschema

from . import __version__
from .arith import is_probable_prime, vp
from .certificates import (NonSquareWitness, check_nonsquare_witness,
                           certify_eisenstein, certify_tame_infinity,
                           critical_orbit, find_pk, verify_transposition)
from .errors import DomainError
from .params import (HypothesisReport, OdoniParams, check_hypotheses,
                     check_hypotheses_with_witnesses)


class MalformedCertificate(ValueError):
    """The document is not a well-formed certificate bundle."""


def rat(x) -> list[str]:
    x = Fraction(x)
    return [str(x.numerator), str(x.denominator)]


def parse_rat(pair) -> Fraction:
    num, den = pair
    return Fraction(int(num), int(den))


def params_to_json(p: OdoniParams) -> dict:
    return {"n": p.n, "a": p.a, "A": rat(p.A), "s_ram": sorted(p.s_ram)}


def params_from_json(d: dict) -> OdoniParams:
    return OdoniParams(int(d["n"]), int(d["a"]), parse_rat(d["A"]), d.get("s_ram", ()))


def timestamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


# -- serializers -----------------------------------------------------------

def eisenstein_json(c) -> dict:
    return {"p0": c.p0, "k_max": c.k_max, "verified": list(c.verified),
            "valid": c.valid, "reason": c.reason}


def tame_json(c) -> dict:
    return {
        "pinf": c.pinf, "k_max": c.k_max, "vacuous": c.vacuous,
        "eps_valuations": [rat(x) for x in c.eps_valuations],
        "offset_valuations": [rat(x) for x in c.offset_valuations],
        "formula_valuations": [rat(x) for x in c.formula_valuations],
        "orbit_sizes": list(c.orbit_sizes),
        "split_unramified": c.split_unramified,
        "levels": [{"level": lv.level,
                    "segments": [[rat(s), length] for s, length in lv.segments],
                    "eps_valuation": rat(lv.eps_valuation),
                    "branching": lv.branching} for lv in c.levels],
        "valid": c.valid, "reason": c.reason,
    }


def orbit_json(orbit) -> list[dict]:
    out = []
    for r in orbit.records:
        out.append({"k": r.k, "c_k": rat(r.c_k), "ck_plus": str(r.ck_plus),
                    "ck_minus": str(r.ck_minus),
                    "v2_of_ck_minus_1": r.v2_of_ck_minus_1,
                    "denominator_check": r.denominator_check,
                    "gcd_check": r.gcd_check, "square_check": r.square_check,
                    "growth_check": r.growth_check,
                    "evaluation_check": r.evaluation_check})
    return out


def transposition_json(c) -> dict:
    return {"k": c.k, "pk": c.pk, "valid": c.valid, "stage": c.stage,
            "double_root": c.double_root, "simple_roots": list(c.simple_roots),
            "simple_part_degree": c.simple_part_degree,
            "critical_valuation": c.critical_valuation, "precision": c.precision,
            "lifted_quadratic": [str(x) for x in c.lifted_quadratic],
            "lifted_quadratic_slope": (None if c.lifted_quadratic_slope is None
                                       else rat(c.lifted_quadratic_slope)),
            "detail": c.detail}


def nonsquare_json(w: NonSquareWitness) -> dict:
    return {"k": w.k, "nonsquare_witness": {"q": w.q}, "valid": True}


# -- build -----------------------------------------------------------------

def build_bundle(params: OdoniParams, k_max: int, budget: int = 200_000,
                 seed: int = 0, report: HypothesisReport | None = None) -> dict:
    """Run every certificate for ``params`` up to depth ``k_max``.

    The hypotheses must hold; a :class:`DomainError` names the first failure
    otherwise.
    """
    if k_max < 1:
        raise DomainError("k_max must be >= 1")
    report = report if report is not None else check_hypotheses(params, budget=max(budget, 1))
    if not report.valid:
        raise DomainError(f"hypothesis {report.first_failure} fails")
    rng = random.Random(seed)
    eis = certify_eisenstein(params, k_max, report.p0)
    tame = certify_tame_infinity(params, k_max, report.pinf)
    orbit = critical_orbit(params, k_max)
    trans = []
    existential = []
    for k in range(1, k_max + 1):
        w = find_pk(params, k, budget, orbit)
        if isinstance(w, NonSquareWitness):
            trans.append(nonsquare_json(w))
            existential.append(k)
        else:
            trans.append(transposition_json(verify_transposition(params, k, w, rng=rng)))
    valid = (eis.valid and tame.valid and orbit.valid and all(t["valid"] for t in trans))
    return {
        "params": params_to_json(params),
        "hypotheses": report.to_json(),
        "eisenstein": eisenstein_json(eis),
        "tame_infinity": tame_json(tame),
        "orbit": orbit_json(orbit),
        "orbit_failure": orbit.failure,
        "transpositions": trans,
        "seed": seed,
        "version": __version__,
        "summary": {"valid": valid,
                    "fully_witnessed": valid and not existential,
                    "existential_levels": existential,
                    "text": summary_text(valid, existential)},
        "timestamp": timestamp(),
    }


def summary_text(valid: bool, existential: list[int]) -> str:
    if not valid:
        return "invalid"
    if existential:
        return f"existential (non-square) at levels {existential}"
    return "fully witnessed"


# -- verify ----------------------------------------------------------------

_SCHEMA = None


def schema() -> dict:
    global _SCHEMA
    if _SCHEMA is None:
        text = resources.files("odoni").joinpath("schemas/certificate.schema.json").read_text()
        _SCHEMA = json.loads(text)
    return _SCHEMA


def validate_schema(doc) -> None:
    try:
        jsonschema.validate(doc, schema())
    except jsonschema.ValidationError as exc:
        raise MalformedCertificate(exc.message) from exc


@dataclass
class VerifyResult:
    problems: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.problems

    def need(self, ok: bool, what: str) -> None:
        if not ok:
            self.problems.append(what)


def verify_bundle(doc: dict) -> VerifyResult:
    """Re-check a bundle using only its recorded witnesses (no searching).

    Raises :class:`MalformedCertificate` when the document does not fit the
    schema or its parameters are not well formed.
    """
    validate_schema(doc)
    try:
        params = params_from_json(doc["params"])
    except (DomainError, ValueError, ZeroDivisionError) as exc:
        raise MalformedCertificate(f"bad params: {exc}") from exc
    res = VerifyResult()
    eis_doc, tame_doc = doc["eisenstein"], doc["tame_infinity"]
    k_max = eis_doc["k_max"]
    rng = random.Random(doc["seed"])

    hyp = check_hypotheses_with_witnesses(params, eis_doc["p0"], tame_doc["pinf"])
    res.need(hyp.valid, f"hypothesis {hyp.first_failure} fails for the recorded witnesses")
    if not hyp.valid:
        return res

    eis = certify_eisenstein(params, k_max, eis_doc["p0"])
    res.need(eis.valid, f"eisenstein: {eis.reason}")
    res.need(eisenstein_json(eis) == eis_doc, "eisenstein record differs from recomputation")

    tame = certify_tame_infinity(params, tame_doc["k_max"], tame_doc["pinf"])
    res.need(tame.valid, f"tame_infinity: {tame.reason}")
    res.need(tame_json(tame) == tame_doc, "tame_infinity record differs from recomputation")

    orbit = critical_orbit(params, k_max)
    res.need(orbit.valid, f"orbit: {orbit.failure}")
    recorded = doc["orbit"]
    res.need(len(recorded) == k_max, "orbit record count differs from k_max")
    for rec, fresh in zip(recorded, orbit_json(orbit)):
        res.need(rec == fresh, f"orbit record k={rec.get('k')} differs from recomputation")

    levels = sorted(t["k"] for t in doc["transpositions"])
    res.need(levels == list(range(1, k_max + 1)), "transposition levels do not cover 1..k_max")
    for t in doc["transpositions"]:
        k = t["k"]
        if not 1 <= k <= k_max:
            continue
        ck_plus = orbit[k].ck_plus
        if "nonsquare_witness" in t:
            w = NonSquareWitness(k, t["nonsquare_witness"]["q"])
            res.need(check_nonsquare_witness(ck_plus, w), f"k={k}: non-square witness fails")
            continue
        pk = t["pk"]
        if not is_probable_prime(pk):
            res.problems.append(f"k={k}: pk={pk} is not prime")
            continue
        v = vp(ck_plus, pk)
        if v % 2 == 0:
            res.problems.append(f"k={k}: pk={pk} divides c_k^+ to even order {v}")
            continue
        try:
            cert = verify_transposition(params, k, pk, rng=rng)
        except DomainError as exc:
            res.problems.append(f"k={k}: {exc}")
            continue
        res.need(cert.valid, f"k={k}: transposition fails at stage {cert.stage}")
        res.need(transposition_json(cert) == t,
                 f"k={k}: transposition record differs from recomputation")
    return res
