"""Rao-form splitting of the minimal resolution and Buchsbaum hom dimensions."""

from dataclasses import dataclass, field, asdict

from .algebra import FreeModule, GradedDims


class UnsupportedHypothesis(ValueError):
    pass


class IncompatibleRaoModule(ValueError):
    pass


@dataclass
class RaoForm:
    L4: FreeModule
    L3: FreeModule
    F2: FreeModule
    F1: FreeModule
    components: dict = field(default_factory=dict)  # t -> r_t

    def to_json(self):
        return {
            "L4": self.L4.to_json(),
            "L3": self.L3.to_json(),
            "F2": self.F2.to_json(),
            "F1": self.F1.to_json(),
            "components": {str(t): r for t, r in sorted(self.components.items())},
        }


@dataclass(frozen=True)
class FiveTuple:
    t: int
    r: int
    a1: int
    a2: int
    b1: int
    b2: int

    def as_tuple(self):
        return (self.r, self.a1, self.a2, self.b1, self.b2)

    def to_json(self):
        return asdict(self)


def _row_as_module(row):
    return FreeModule({-i: b for i, b in row.items()})


def is_trivial_module(cd):
    """Buchsbaum flag, or diameter 1 (which forces trivial module structure)."""
    return cd.buchsbaum or cd.diam == 1


def rao_form(cd):
    F1 = _row_as_module(cd.betti.rows[1])
    beta2 = _row_as_module(cd.betti.rows[2])
    if cd.is_acm():
        return RaoForm(FreeModule(), FreeModule(), beta2, F1, {})
    if not is_trivial_module(cd):
        raise UnsupportedHypothesis("Rao form requires explicit resolution of M (module is not Buchsbaum)")
    if cd.diam > 2:
        raise UnsupportedHypothesis(f"Rao form from dimensions alone needs diameter <= 2, got {cd.diam}")
    c = cd.c
    comps = {t: cd.rao(t) for t in (c - 1, c) if cd.rao(t)}
    r_c = cd.betti(3, c + 4)
    r_prev = cd.betti(3, c + 3)
    if r_c != cd.rao(c) or r_prev != cd.rao(c - 1) or cd.betti.rank(3) != r_c + r_prev:
        raise IncompatibleRaoModule("third Betti row does not match the Rao dimensions")
    L4 = FreeModule({-c - 3: r_prev, -c - 4: r_c})
    # Koszul multiplicity goes to L3 first
    L3 = FreeModule({-c - 2: 4 * r_prev, -c - 3: 4 * r_c})
    short = {a: L3[a] - beta2.mult(a) for a in L3 if beta2.mult(a) < L3[a]}
    if short:
        raise IncompatibleRaoModule(
            "Betti table incompatible with Buchsbaum Rao module: second row lacks "
            + ", ".join(f"R({a})^{n}" for a, n in sorted(short.items())))
    F2 = beta2 - L3
    return RaoForm(L4, L3, F2, F1, comps)


def n_tuple(rf, t):
    return FiveTuple(
        t=t,
        r=rf.components.get(t, 0),
        a1=rf.F1.mult(-t - 4),
        a2=rf.F1.mult(-t),
        b1=rf.F2.mult(-t - 4),
        b2=rf.F2.mult(-t),
    )


@dataclass
class HomDims:
    """Dimensions of graded Hom groups; None marks an unknown value."""
    hom_I_M_0: int = None
    hom_I_M_m4: int = None
    hom_M_E_0: int = None
    hom_M_E_m4: int = None
    hom_I_E_0: int = None
    hom_M_M_0: int = None
    ext2_M_M_0: int = None
    per_component: dict = field(default_factory=dict)
    source: str = "computed"

    REQUIRED = ("hom_I_M_0", "hom_I_M_m4", "hom_M_E_0", "hom_M_E_m4", "ext2_M_M_0")

    def missing(self, names=None):
        return [n for n in (names or self.REQUIRED) if getattr(self, n) is None]

    def to_json(self):
        out = {k: getattr(self, k) for k in (
            "hom_I_M_0", "hom_I_M_m4", "hom_M_E_0", "hom_M_E_m4", "hom_I_E_0", "hom_M_M_0", "ext2_M_M_0")}
        out["per_component"] = {str(t): v for t, v in sorted(self.per_component.items())}
        out["source"] = self.source
        return out

    @classmethod
    def from_json(cls, data):
        kw = {k: data.get(k) for k in (
            "hom_I_M_0", "hom_I_M_m4", "hom_M_E_0", "hom_M_E_m4", "hom_I_E_0", "hom_M_M_0", "ext2_M_M_0")}
        return cls(**kw, source="override")


def hom_dims(cd, rf=None):
    """Hom dimensions for Buchsbaum curves of diameter <= 2; None-filled otherwise."""
    if not cd.is_acm() and (not is_trivial_module(cd) or cd.diam > 2):
        return HomDims(hom_I_E_0=cd.delta(2, 0), source="undetermined")
    rf = rf or rao_form(cd)
    M = cd.rao
    b1 = cd.betti.rows[1]
    out = HomDims(
        hom_I_M_0=sum(b * M(i) for i, b in b1.items()),
        hom_I_M_m4=sum(b * M(i - 4) for i, b in b1.items()),
        hom_M_E_0=sum(m * M(-a - 4) for a, m in rf.F2.items()),
        hom_M_E_m4=sum(m * M(-a) for a, m in rf.F2.items()),
        hom_I_E_0=cd.delta(2, 0),
        hom_M_M_0=sum(r * r for r in M.values()),
        ext2_M_M_0=0,
    )
    for t in sorted(rf.components):
        n = n_tuple(rf, t)
        out.per_component[t] = {
            "hom_I_M_0": n.r * n.a2,
            "hom_I_M_m4": n.r * n.a1,
            "hom_M_E_0": n.r * n.b1,
            "hom_M_E_m4": n.r * n.b2,
        }
    return out


def dim_H_gamma_M(cd, hd):
    if hd.hom_M_M_0 is None:
        return None
    return 1 + cd.delta(2, -4) - hd.hom_M_M_0


def rao_dims_from_third_row(betti):
    """Trivial-module Rao dimensions implied by the third Betti row."""
    return GradedDims({i - 4: b for i, b in betti.rows[3].items()})
