"""Obstructedness verdicts, Hilbert-scheme dimensions and normal-sheaf cohomology."""

from dataclasses import dataclass, field

from .rao import HomDims, dim_H_gamma_M, hom_dims, is_trivial_module, rao_form

OBSTRUCTED = "Obstructed"
UNOBSTRUCTED = "Unobstructed"
UNDETERMINED = "Undetermined"

THM_DIAM1 = "diameter-one Betti criterion (obstructed iff a critical product is nonzero)"
THM_VANISH = "Hom-vanishing criterion for unobstructedness"
THM_COMPONENT = "per-component obstruction criterion for a split Rao module"


class Refused(ValueError):
    pass


@dataclass
class Verdict:
    status: str
    trigger: list = field(default_factory=list)
    theorem: str = ""
    applicability: dict = field(default_factory=dict)
    dims: dict = field(default_factory=dict)
    iso_flags: dict = field(default_factory=dict)
    missing_hypotheses: list = field(default_factory=list)
    unobstructed_case: str = None

    def to_json(self):
        return {
            "status": self.status,
            "trigger": list(self.trigger),
            "theorem": self.theorem,
            "applicability": self.applicability,
            "dims": self.dims,
            "iso_flags": self.iso_flags,
            "missing_hypotheses": list(self.missing_hypotheses),
        }


@dataclass
class NormalSheafDims:
    h0_N: int
    h1_N: int

    def to_json(self):
        return {"h0_N": self.h0_N, "h1_N": self.h1_N}


def critical_products(cd):
    """The three products of Betti numbers around the Rao degree c (full second row)."""
    c = cd.c
    b = cd.betti
    return [
        ("beta_{1,c}*beta_{2,c+4}", c, c + 4, b(1, c), b(2, c + 4)),
        ("beta_{1,c+4}*beta_{2,c+4}", c + 4, c + 4, b(1, c + 4), b(2, c + 4)),
        ("beta_{1,c}*beta_{2,c}", c, c, b(1, c), b(2, c)),
    ]


def _vanishing_cases(hd):
    """Which of the three Hom-vanishing cases hold, given total hom dims."""
    cases = []
    if hd.hom_I_M_0 == 0 and hd.hom_I_M_m4 == 0:
        cases.append("i")
    if hd.hom_M_E_0 == 0 and hd.hom_M_E_m4 == 0:
        cases.append("ii")
    if hd.hom_I_M_0 == 0 and hd.hom_M_E_0 == 0 and hd.ext2_M_M_0 == 0:
        cases.append("iii")
    return cases


def _vanishing_failures(hd):
    out = []
    if not (hd.hom_I_M_0 == 0 and hd.hom_I_M_m4 == 0):
        out.append(f"case i needs hom(I,M)_0 = hom(I,M)_-4 = 0, have {hd.hom_I_M_0}, {hd.hom_I_M_m4}")
    if not (hd.hom_M_E_0 == 0 and hd.hom_M_E_m4 == 0):
        out.append(f"case ii needs hom(M,E)_0 = hom(M,E)_-4 = 0, have {hd.hom_M_E_0}, {hd.hom_M_E_m4}")
    if not (hd.hom_I_M_0 == 0 and hd.hom_M_E_0 == 0 and hd.ext2_M_M_0 == 0):
        out.append(f"case iii needs hom(I,M)_0 = hom(M,E)_0 = ext2(M,M)_0 = 0, "
                   f"have {hd.hom_I_M_0}, {hd.hom_M_E_0}, {hd.ext2_M_M_0}")
    return out


def _iso_flags(hd):
    return {
        "H_gamma=H_dg": hd.hom_I_M_0 == 0 if hd.hom_I_M_0 is not None else None,
        "H_gamma_rho=H_gamma": hd.hom_M_E_0 == 0 if hd.hom_M_E_0 is not None else None,
    }


def classify(cd, overrides=None):
    """Obstructedness verdict with the condition that decided it."""
    if cd.is_acm():
        hd = hom_dims(cd)
        v = Verdict(UNOBSTRUCTED, ["M = 0, so every Hom group into or out of M vanishes"], THM_VANISH,
                    {"path": "acm", "checked": ["M = 0"]}, unobstructed_case="i")
        v.iso_flags = _iso_flags(hd)
        v.dims = dims(cd, v, hd)
        return v

    if cd.diam == 1:
        fired = []
        for name, i1, i2, x, y in critical_products(cd):
            if x * y:
                fired.append(f"{name} = beta_{{1,{i1}}}*beta_{{2,{i2}}} = {x}*{y} != 0 (c = {cd.c})")
        hd = hom_dims(cd)
        v = Verdict(OBSTRUCTED if fired else UNOBSTRUCTED, fired, THM_DIAM1,
                    {"path": "diameter-1", "checked": ["diam M = 1", "second row read in full"]})
        if not fired:
            v.trigger = [f"all three critical products vanish (c = {cd.c})"]
            v.unobstructed_case = "diam1"
        v.iso_flags = _iso_flags(hd)
        v.dims = dims(cd, v, hd)
        return v

    if cd.diam == 2 and is_trivial_module(cd) and overrides is None:
        rf = rao_form(cd)
        hd = hom_dims(cd, rf)
        fired = []
        for t, comp in sorted(hd.per_component.items()):
            if comp["hom_I_M_0"] and comp["hom_M_E_0"]:
                fired.append(f"(a) t = {t}: hom(I,M_t)_0 = {comp['hom_I_M_0']} and hom(M_t,E)_0 = {comp['hom_M_E_0']} both nonzero")
            if comp["hom_I_M_m4"] and comp["hom_M_E_0"]:
                fired.append(f"(b) t = {t}: hom(I,M_t)_-4 = {comp['hom_I_M_m4']} and hom(M_t,E)_0 = {comp['hom_M_E_0']} both nonzero")
            if comp["hom_I_M_0"] and comp["hom_M_E_m4"]:
                fired.append(f"(c) t = {t}: hom(I,M_t)_0 = {comp['hom_I_M_0']} and hom(M_t,E)_-4 = {comp['hom_M_E_m4']} both nonzero")
        app = {"path": "buchsbaum-diameter-2", "checked": ["Buchsbaum", "diam M = 2", "ext2(M,M)_0 = 0"]}
        if fired:
            v = Verdict(OBSTRUCTED, fired, THM_COMPONENT, app)
        else:
            cases = _vanishing_cases(hd)
            if cases:
                v = Verdict(UNOBSTRUCTED, [f"vanishing case {cases[0]} holds"], THM_VANISH, app,
                            unobstructed_case=cases[0])
            else:
                v = Verdict(UNDETERMINED, [], "", app)
                v.missing_hypotheses = ["no per-component obstruction condition fires"] + _vanishing_failures(hd)
        v.iso_flags = _iso_flags(hd)
        v.dims = dims(cd, v, hd)
        return v

    # general path: only sufficient conditions, and only with supplied hom dims
    hd = overrides if overrides is not None else HomDims(hom_I_E_0=cd.delta(2, 0), source="undetermined")
    app = {"path": "general", "checked": [f"diam M = {cd.diam}", f"Buchsbaum flag = {cd.buchsbaum}"]}
    missing = hd.missing()
    if missing:
        v = Verdict(UNDETERMINED, [], "", app,
                    missing_hypotheses=[f"override needed: {m}" for m in missing])
    else:
        cases = _vanishing_cases(hd)
        if cases:
            v = Verdict(UNOBSTRUCTED, [f"vanishing case {cases[0]} holds"], THM_VANISH, app,
                        unobstructed_case=cases[0])
        else:
            v = Verdict(UNDETERMINED, [], "", app, missing_hypotheses=_vanishing_failures(hd))
    v.iso_flags = _iso_flags(hd)
    v.dims = dims(cd, v, hd)
    return v


def dim_hilbert_scheme(cd, verdict, hd=None):
    """dim of H(d,g) at the curve; only defined for unobstructed curves."""
    if verdict.status != UNOBSTRUCTED:
        raise Refused(f"H(d,g) dimension is only given at unobstructed curves (status {verdict.status})")
    base = 4 * cd.d + cd.delta(2, 0)
    case = verdict.unobstructed_case
    if case == "diam1":
        r = cd.rao(cd.c)
        return base + r * (cd.betti(1, cd.c + 4) + cd.betti(2, cd.c))
    hd = hd or hom_dims(cd)
    if case == "i":
        return base - cd.delta(1, 0)
    if case == "ii":
        return base - cd.delta(1, 0) + hd.hom_I_M_m4 + hd.hom_I_M_0 - hd.ext2_M_M_0
    if case == "iii":
        return base - cd.delta(1, 0) + hd.hom_I_M_m4
    raise Refused(f"unknown unobstructedness case {case!r}")


def h_gamma_singular(cd):
    """Singularity test for the constant-postulation scheme (diameter 1, M_{-4} = 0); None if not applicable."""
    if cd.diam != 1 or cd.rao(-4):
        return None
    c = cd.c
    return cd.betti(1, c + 4) * cd.betti(2, c + 4) != 0


def dims(cd, verdict, hd=None):
    hd = hd if hd is not None else hom_dims(cd)
    out = {"dim_H_dg": None, "dim_H_gamma": None, "dim_H_gamma_M": None, "h0_N": None, "h1_N": None}
    if verdict.status == UNOBSTRUCTED:
        out["dim_H_dg"] = dim_hilbert_scheme(cd, verdict, hd)
    elif verdict.status == OBSTRUCTED:
        out["dim_H_dg_refused"] = "curve is obstructed; no dimension formula applies"
    sing = h_gamma_singular(cd)
    if sing is False:
        c, r = cd.c, cd.rao(cd.c)
        out["dim_H_gamma"] = 4 * cd.d + cd.delta(2, 0) + r * (cd.betti(1, c + 4) + cd.betti(2, c) - cd.betti(1, c))
    out["dim_H_gamma_M"] = dim_H_gamma_M(cd, hd)
    ns = normal_sheaf(cd, hd)
    if ns is not None:
        out["h0_N"], out["h1_N"] = ns.h0_N, ns.h1_N
    return out


def normal_sheaf(cd, hd=None):
    """h^0 and h^1 of the normal sheaf, or None when the hom dims are unknown."""
    hd = hd if hd is not None else hom_dims(cd)
    if hd.hom_I_M_m4 is None or hd.hom_M_E_m4 is None or hd.ext2_M_M_0 is None:
        return None
    h1 = cd.delta(2, 0) + hd.hom_I_M_m4 + hd.hom_M_E_m4
    return NormalSheafDims(4 * cd.d + h1, h1)


def h1N_vanishing_criterion(cd):
    """Sufficient numerical test for H^1(N_C) = 0; returns (holds, reasons)."""
    s, b, c, e, diam = cd.boundary_degrees()
    failed = []
    if diam > 2:
        failed.append(f"diam M = {diam} > 2")
    if not e < s:
        failed.append(f"e = {e} is not < s = {s}")
    if diam != 0:
        if not e <= c + 1 - diam:
            failed.append(f"e = {e} > c + 1 - diam = {c + 1 - diam}")
        if not c <= s:
            failed.append(f"c = {c} > s = {s}")
    holds = not failed
    if holds:
        ns = normal_sheaf(cd)
        if ns is not None and ns.h1_N != 0:
            raise ValueError(f"vanishing criterion holds but h1_N = {ns.h1_N}; curve data is inconsistent")
    return holds, (failed or ["all hypotheses hold"])
