"""AnalysisReport: one canonical JSON document per curve."""

import json

from .deformation import available_moves, component_count
from .invariants import CurveData, euler_identities
from .oracle import classify, h1N_vanishing_criterion
from .rao import HomDims, IncompatibleRaoModule, UnsupportedHypothesis, hom_dims, n_tuple, rao_form


def _table(fn, window):
    return {str(v): fn(v) for v in window}


def analysis_report(cd, overrides=None):
    """Compose invariants, Rao form, hom dims and the verdict; the input is echoed at top level."""
    window = cd.window()
    s, b, c, e, diam = cd.boundary_degrees()
    out = dict(cd.to_json())
    out["invariants"] = {"d": cd.d, "g": cd.g, "s": s, "b": b, "c": c, "e": e, "diam": diam}
    out["tables"] = {
        "window": [window.start, window.stop - 1],
        "gamma": _table(cd.gamma, window),
        "rho": _table(cd.rho, window),
        "sigma": _table(cd.sigma, window),
    }
    out["delta"] = {f"delta{j}": {str(v): cd.delta(j, v) for v in (-4, 0)} for j in range(3)}
    out["euler"] = euler_identities(cd)
    try:
        rf = rao_form(cd)
        out["rao_form"] = rf.to_json()
        out["tuples"] = {str(t): n_tuple(rf, t).to_json() for t in sorted(rf.components)}
    except (UnsupportedHypothesis, IncompatibleRaoModule) as exc:
        rf = None
        out["rao_form"] = {"unavailable": str(exc)}
        out["tuples"] = {}
    hd = overrides if overrides is not None else hom_dims(cd)
    out["hom_dims"] = hd.to_json()
    verdict = classify(cd, overrides)
    out["verdict"] = verdict.to_json()
    ns = verdict.dims
    out["normal_sheaf"] = {"h0_N": ns.get("h0_N"), "h1_N": ns.get("h1_N")}
    holds, reasons = h1N_vanishing_criterion(cd)
    out["h1N_criterion"] = {"holds": holds, "reasons": reasons}
    out["moves"] = available_moves(cd)
    out["component_count"] = None
    if rf is not None and diam == 1:
        n = n_tuple(rf, c)
        out["component_count"] = component_count(n.as_tuple(), s == e == c)
    return out


def dumps(report):
    return json.dumps(report, sort_keys=True, indent=2)


def report_from_json(data, overrides=None):
    """Re-ingest a curve.json (or a previous report) and rebuild the report."""
    return analysis_report(CurveData.from_json(data), overrides)


def load_overrides(data):
    return HomDims.from_json(data) if data is not None else None
