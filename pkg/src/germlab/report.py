"""Canonical JSON report documents for the command line tools.

One envelope for every command (schema version, tool version, the input
echo, the normalized variable data, seeds, timing) plus a command-specific
body.  Serialization is deterministic for a fixed input and seed: keys are
sorted, rationals are rendered as exact ``"a/b"`` strings, floats pass
through ``repr`` via the JSON encoder, and non-finite floats become the
strings ``"inf"``/``"-inf"``/``"nan"`` (JSON has no spelling for them).
``timing_seconds`` stays null unless timing was explicitly requested —
wall-clock values are the one thing that would break byte-identical
reruns."""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Sequence

from germlab import __version__
from germlab.foliation import FoliationReport, TangencyEstimate
from germlab.germ import (
    AnalysisReport,
    NewtonAnalysis,
    ObstructionLocus,
    weight_splitting,
)
from germlab.germfile import LoadedGerm, RawGerm
from germlab.parse import poly_to_string

__all__ = [
    "SCHEMA_VERSION",
    "document",
    "render",
    "analysis_body",
    "sigma_body",
    "newton_body",
    "foliate_body",
    "milnor_body",
]

SCHEMA_VERSION = 1


def fraction_str(value: Fraction | None) -> str | None:
    if value is None:
        return None
    return str(value)


def _finite(value: float) -> float | str:
    if math.isfinite(value):
        return float(value)
    if math.isnan(value):
        return "nan"
    return "inf" if value > 0 else "-inf"


def document(
    command: str,
    input_echo: dict,
    seed: int,
    timing_seconds: float | None,
    body: dict,
) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "germlab", "version": __version__},
        "command": command,
        "input": input_echo,
        "seeds": {"root": seed},
        "timing_seconds": timing_seconds,
    }
    doc.update(body)
    return doc


def render(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n"


# ---------------------------------------------------------------------------
# shared fragments


def _system_fragment(loaded: LoadedGerm) -> dict:
    system = loaded.system
    names = list(system.variables)
    splitting = weight_splitting(list(system.weights))
    return {
        "variables": names,
        "original_variables": list(loaded.original_variables),
        "permutation": list(loaded.permutation),
        "weights": [str(w) for w in system.weights],
        "degrees": [str(d) for d in system.degrees],
        "breakpoints": list(splitting.breakpoints),
        "principal": [poly_to_string(f, names) for f in system.principal],
        "perturbation": [poly_to_string(q, names) for q in system.perturbation],
        "same_order": system.is_same_order(),
    }


def _estimate_fragment(estimate: TangencyEstimate) -> dict:
    return {
        "alpha": _finite(estimate.alpha),
        "r2": _finite(estimate.r2),
        "window": [_finite(estimate.window[0]), _finite(estimate.window[1])],
    }


# ---------------------------------------------------------------------------
# per-command bodies


def analysis_body(
    loaded: LoadedGerm,
    report: AnalysisReport,
    assumptions: Sequence[str] | frozenset[str] | None = None,
    extra_notes: Sequence[str] = (),
) -> dict:
    if assumptions is None:
        assumptions = loaded.assumptions
    certificates = None
    if report.certificates is not None:
        c = report.certificates
        certificates = {
            "fast_cycle_dim": c.fast_cycle_dim,
            "homotopy": c.homotopy,
            "mu": c.mu,
            "tangent_cone_coordinate_span": c.tangent_cone_coordinate_span,
            "exponent_bound": fraction_str(c.exponent_bound),
        }
    return {
        **_system_fragment(loaded),
        "assumptions": sorted(assumptions),
        "analysis": {
            "verdict": report.verdict,
            "l": report.l,
            "certificates": certificates,
            "hypothesis_ledger": [
                {
                    "key": entry.key,
                    "statement": entry.statement,
                    "status": entry.status,
                    "evidence": entry.evidence,
                }
                for entry in report.hypothesis_ledger
            ],
            "notes": list(report.notes) + list(extra_notes),
        },
    }


def sigma_body(loaded: LoadedGerm, locus: ObstructionLocus) -> dict:
    names = list(loaded.system.variables)
    return {
        **_system_fragment(loaded),
        "sigma": {
            "components": [
                {
                    "label": comp.label,
                    "dimension": comp.dimension,
                    "status": comp.status,
                    "generators": [poly_to_string(g, names) for g in comp.generators],
                    "basis": (
                        [poly_to_string(g, names) for g in comp.basis.generators]
                        if comp.basis is not None
                        else None
                    ),
                }
                for comp in locus.components
            ],
            "total_dim": locus.total_dim,
            "is_origin_only": locus.is_origin_only,
        },
    }


def newton_body(raw: RawGerm, analysis: NewtonAnalysis) -> dict:
    names = list(raw.variables)
    diagram = analysis.diagram
    nd = analysis.nondegeneracy
    face_index = {face: k for k, face in enumerate(diagram.faces)}
    return {
        "variables": names,
        "equation": poly_to_string(raw.equations[0], names),
        "newton": {
            "convenient": diagram.convenient,
            "support": [list(m) for m in diagram.support],
            "faces": [
                {
                    "dim": face.dim,
                    "vertices": [list(v) for v in face.vertices],
                    "inner_normal": list(face.inner_normal),
                    "level": face.level,
                    "weights": [str(w) for w in face.weights],
                    "is_top": face.is_top,
                }
                for face in diagram.faces
            ],
            "nondegeneracy": {
                "overall": nd.overall,
                "per_face": [
                    {
                        "face": face_index[face],
                        "status": status,
                        "method": method,
                    }
                    for face, status, method in zip(nd.faces, nd.statuses, nd.methods)
                ],
            },
            "criterion_applicable": analysis.criterion_applicable,
            "face_verdicts": [
                {
                    "face_index": v.face_index,
                    "sorted_weights": [str(w) for w in v.sorted_weights],
                    "sing_dim": v.sing_dim,
                    "dim_condition": v.dim_condition,
                    "lower_weights_coincide": v.lower_weights_coincide,
                    "certificate": v.certificate,
                    "status": v.status,
                    "evidence": v.evidence,
                }
                for v in analysis.face_verdicts
            ],
            "any_certificate": analysis.any_certificate,
            "notes": list(analysis.notes),
        },
    }


def foliate_body(
    loaded: LoadedGerm,
    report: FoliationReport,
    epsilon: Fraction,
    samples_requested: int,
    csv_path: str | None,
    extra_notes: Sequence[str] = (),
) -> dict:
    return {
        **_system_fragment(loaded),
        "foliate": {
            "epsilon": str(epsilon),
            "samples": {
                "requested": samples_requested,
                "obtained": len(report.arcs),
            },
            "passed": report.passed,
            "failures": list(report.failures),
            "converged_fraction": _finite(report.converged_fraction),
            "checks": {
                "dichotomy": [
                    {
                        "pair": list(d.pair),
                        "unperturbed": _estimate_fragment(d.unperturbed),
                        "perturbed": _estimate_fragment(d.perturbed),
                        "ok": d.ok,
                    }
                    for d in report.dichotomy
                ],
                "min_separation": _finite(report.min_separation),
                "separation_ok": report.separation_ok,
                "coordinate_planes_ok": report.coordinate_planes_ok,
            },
            "arcs": [
                {
                    "distance_to_sigma": _finite(arc.s.distance_to_sigma),
                    "gram_determinant": _finite(arc.gram_determinant),
                    "converged_count": int(sum(arc.converged)),
                    "grid_size": len(arc.t_grid),
                }
                for arc in report.arcs
            ],
            "csv_path": csv_path,
            "notes": list(extra_notes),
        },
    }


def milnor_body(raw: RawGerm, mu: int | None) -> dict:
    names = list(raw.variables)
    return {
        "variables": names,
        "equation": poly_to_string(raw.equations[0], names),
        "milnor": {
            "milnor_number": mu,
            "isolated": mu is not None,
            "notes": (
                []
                if mu is not None
                else ["the critical point is not isolated (or all partials vanish)"]
            ),
        },
    }
