"""JSON report assembly: every exact value doubled as rational and decimal.

Reports are byte-stable for a fixed configuration: keys are sorted, no
timestamps, and all numeric rendering is integer arithmetic.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from .adversary import AdversaryReport
from .analysis import AffineW, OptimizationResult, PriceCertification
from .core import Transcript, TranscriptStats
from .inputs import ConstructionParams
from .layered import LayeredValue

SCHEMA_VERSION = 1


def frac_str(fr: Fraction) -> str:
    return f"{fr.numerator}/{fr.denominator}" if fr.denominator != 1 else str(fr.numerator)


def frac_decimal(fr: Fraction, places: int = 12) -> str:
    """Fixed-point decimal string, rounded half away from zero."""
    sign = "-" if fr < 0 else ""
    fr = abs(fr)
    scaled = fr * 10**places
    q, r = divmod(scaled.numerator, scaled.denominator)
    if 2 * r >= scaled.denominator:
        q += 1
    digits = str(q).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def render_fraction(fr: Fraction, places: int = 12) -> dict:
    return {"rational": frac_str(fr), "decimal": frac_decimal(fr, places)}


def render_affine(a: AffineW) -> dict:
    return {"const": frac_str(a.const), "w_coefficient": frac_str(a.slope)}


def _exponent_str(e: int) -> str:
    return str(e)


def render_layered(v: LayeredValue) -> dict:
    return {
        "base": render_fraction(v.base),
        "atoms": [
            [_exponent_str(e), frac_str(c)] for e, c in sorted(v.atoms.items())
        ],
    }


def render_params(params: ConstructionParams) -> dict:
    return {
        "t": params.t,
        "m": params.m,
        "n": params.n,
        "eps": frac_str(params.eps),
        "k": str(params.k),
    }


def simulation_report(
    params: ConstructionParams,
    transcript: Transcript,
    stats: TranscriptStats,
    adv: AdversaryReport,
    include_transcript: bool = True,
) -> dict:
    doc = {
        "schema": SCHEMA_VERSION,
        "kind": "simulation",
        "config": render_params(params),
        "algorithm": adv.algorithm,
        "stopping_points": [
            {
                "label": p.label,
                "alg_cost": p.alg_cost,
                "opt_upper_bound": render_fraction(p.opt_bound),
                "ratio": render_fraction(p.ratio),
            }
            for p in adv.stopping_points
        ],
        "max_ratio": render_fraction(adv.max_ratio),
        "n_large": adv.n_large,
        "n31_issued": adv.n31_issued,
        "n32_issued": adv.n32_issued,
        "gamma_exponent": _exponent_str(adv.gamma_exponent),
        "stats": {
            "nu": dict(sorted(stats.nu.items())),
            "delta": stats.delta,
            "n_large": stats.n_large,
            "costs": dict(sorted(stats.costs.items())),
        },
        "checks": dict(sorted(adv.checks.items())),
        "bound_chain": {
            key: render_fraction(value) for key, value in sorted(adv.chain.items())
        },
    }
    if include_transcript:
        doc["transcript"] = {
            "trunk": [[i, b, bin_id] for i, b, bin_id in transcript.trunk_rows],
            **{
                branch: [[i, b, bin_id] for i, b, bin_id in rows]
                for branch, rows in transcript.branch_rows.items()
            },
        }
    return doc


def certification_report(cert: PriceCertification) -> dict:
    return {
        "t": cert.t,
        "price_table": {k: render_affine(v) for k, v in sorted(cert.table.items())},
        "witnesses": dict(sorted(cert.witnesses.items())),
        "forbidden_combinations": cert.forbidden,
    }


def optimization_report(
    result: OptimizationResult, sweep: Optional[list] = None
) -> dict:
    doc = {
        "schema": SCHEMA_VERSION,
        "kind": "optimization",
        "w_star": {
            "closed_form": "(sqrt(1387369) - 1075) / 96",
            "decimal": frac_decimal(result.w_decimal, 14),
        },
        "r_star": {
            "closed_form": "(1363 - sqrt(1387369)) / 120",
            "decimal": frac_decimal(result.r_decimal, 14),
        },
        "residuals": {
            "w_minus_3_plus_1.25r": 0 if result.linear_residual_zero else "nonzero",
            "35/6_minus_r_times_denominator": 0
            if result.closing_residual_zero
            else "nonzero",
            "defining_quadratic": 0 if result.quadratic_residual_zero else "nonzero",
        },
        "flat_in_nl_at_w_star": result.flat_in_nl,
        "search": {
            "w": frac_decimal(result.search_w, 14),
            "value": frac_decimal(result.search_value, 14),
            "iterations": result.search_iterations,
            "matches_algebra": result.search_matches_algebra,
        },
    }
    if sweep is not None:
        doc["sweep"] = sweep
    return doc


def dump_json(doc: dict, path: Optional[str] = None) -> str:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
