"""Resolution surgery under generization, generization lattices, component counts,
linkage, quadratic local equations and the Omega-resolution family."""

from dataclasses import dataclass, field
from math import comb

from .algebra import FreeModule, dim_R, koszul_shape, module_cancel
from .invariants import CurveData, InconsistentCurveData
from .rao import UnsupportedHypothesis, is_trivial_module, n_tuple, rao_form
from .resolution import BettiTable, hilbert_numerics

CONST_GAMMA_M = "constant gamma and M"
CONST_GAMMA = "constant gamma"
CONST_SIGMA = "constant sigma"

HOM_IRREDUCIBILITY_NOTE = ("curves sharing the 5-tuple and the postulation away from c are assumed to lie "
                           "in one irreducible family of constant postulation and Rao module")


class MoveError(ValueError):
    pass


@dataclass
class GenerizationMove:
    kind: str
    params: dict
    before: CurveData
    after: CurveData
    marker: str
    identity: bool = False
    hom_count: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    ghost_intervals: list = field(default_factory=list)

    def to_json(self):
        return {
            "kind": self.kind,
            "params": self.params,
            "marker": self.marker,
            "identity": self.identity,
            "result": self.after.to_json(),
            "hom_count": self.hom_count,
            "ghost_intervals": self.ghost_intervals,
            "notes": self.notes,
        }


def _rows(cd):
    return {j: dict(r) for j, r in cd.betti.rows.items()}


def _bump(rows, j, i, n):
    rows[j][i] = rows[j].get(i, 0) + n
    if rows[j][i] < 0:
        raise MoveError(f"move would make beta_{{{j},{i}}} negative")


def _rebuild(cd, rows, rao):
    try:
        new = CurveData(BettiTable(rows), rao, cd.buchsbaum, cd.char)
    except InconsistentCurveData as exc:
        raise MoveError(f"move produced inconsistent data: {exc}") from None
    if (new.d, new.g) != (cd.d, cd.g):
        raise MoveError("internal error: move changed (d, g)")
    return new


def _require_split(cd):
    if cd.is_acm():
        raise UnsupportedHypothesis("curve is ACM; there is no Rao module to cut down")
    if not is_trivial_module(cd) or cd.diam > 2:
        raise UnsupportedHypothesis("surgery needs a Buchsbaum curve of diameter <= 2")
    return rao_form(cd)


def _other_L2_degrees(rf, t):
    """Generator degrees of the second Koszul term for components other than t."""
    return {s + 2 for s in rf.components if s != t}


def cancel_common(cd):
    """Remove the common free factors of F2 and F1 (postulation and Rao module stay fixed)."""
    rf = rao_form(cd)
    common, _, _ = module_cancel(rf.F2, rf.F1)
    rows = _rows(cd)
    for a, m in common.items():
        _bump(rows, 1, -a, -m)
        _bump(rows, 2, -a, -m)
    after = _rebuild(cd, rows, dict(cd.rao))
    mv = GenerizationMove("CancelCommon", {"F": common.to_json()}, cd, after, CONST_GAMMA_M,
                          identity=not common)
    if not common:
        mv.notes.append("F1 and F2 have no common free factor; identity move")
    return mv


def cancel_L4_F2(cd, t, m1):
    """Drop R(-t-4)^m1 from L4 and F2; keeps the postulation."""
    rf = _require_split(cd)
    n = n_tuple(rf, t)
    if not 0 <= m1 <= min(n.r, n.b1):
        raise MoveError(f"m1 = {m1} outside [0, min(r, b1)] = [0, {min(n.r, n.b1)}]")
    if t + 4 in _other_L2_degrees(rf, t):
        raise UnsupportedHypothesis("second Koszul term of another component has a generator in degree t+4")
    rows = _rows(cd)
    _bump(rows, 3, t + 4, -m1)
    _bump(rows, 2, t + 4, -m1)
    # the released 4*m1 copies of R(-t-3) stay in F2 and may cancel against F1
    rao = dict(cd.rao)
    rao[t] = rao.get(t, 0) - m1
    after = _rebuild(cd, rows, rao)
    mv = GenerizationMove("CancelL4F2", {"t": t, "m1": m1}, cd, after, CONST_GAMMA, identity=m1 == 0)
    mv.hom_count = {"hom_M_t_E_0": (n.r - m1) * (n.b1 - m1)}
    if m1:
        bound = min(4 * m1, cd.betti(1, t + 3))
        mv.ghost_intervals.append({"degree": t + 3, "cancel_between_F2_and_F1": [0, bound]})
        mv.notes.append(f"resolution minimal except possibly in degree {t + 3}; "
                        f"up to {bound} copies of R({-t - 3}) may cancel between F2 and F1")
    return mv


def cancel_L4_F1(cd, t, m2):
    """Drop R(-t-4)^m2 from L4 and R(-t)^m2 from F1; keeps the specialization."""
    rf = _require_split(cd)
    n = n_tuple(rf, t)
    if not 0 <= m2 <= min(n.r, n.a2):
        raise MoveError(f"m2 = {m2} outside [0, min(r, a2)] = [0, {min(n.r, n.a2)}]")
    if t in _other_L2_degrees(rf, t):
        raise UnsupportedHypothesis("second Koszul term of another component has a generator in degree t")
    rows = _rows(cd)
    _bump(rows, 3, t + 4, -m2)
    _bump(rows, 1, t, -m2)
    _bump(rows, 2, t + 3, -4 * m2)
    # Hilbert function drops by m2 in degree t only; the Koszul middle terms make up the rest
    _bump(rows, 1, t + 1, 4 * m2)
    _bump(rows, 2, t + 2, 6 * m2)
    rao = dict(cd.rao)
    rao[t] = rao.get(t, 0) - m2
    after = _rebuild(cd, rows, rao)
    mv = GenerizationMove("CancelL4F1", {"t": t, "m2": m2}, cd, after, CONST_SIGMA, identity=m2 == 0)
    mv.hom_count = {"hom_I_M_t_0": (n.r - m2) * (n.a2 - m2)}
    if m2:
        mv.notes.append("only R(-t-4)^(r-m2) in L4 and R(-t)^(a2-m2) in F1 are guaranteed; "
                        "the remaining free modules are indeterminate up to cancelling common factors")
        for deg in (t + 1, t + 2):
            bound = min(after.betti(1, deg), after.betti(2, deg))
            if bound:
                mv.ghost_intervals.append({"degree": deg, "cancel_between_F2_and_F1": [0, bound]})
    return mv


def available_moves(cd):
    """Enumerate the generization moves the curve admits (as parameter sets)."""
    out = []
    try:
        rf = rao_form(cd)
    except (UnsupportedHypothesis, ValueError):
        return out
    common, _, _ = module_cancel(rf.F2, rf.F1)
    if common:
        out.append({"kind": "CancelCommon", "F": common.to_json()})
    for t in sorted(rf.components):
        n = n_tuple(rf, t)
        if min(n.r, n.b1):
            out.append({"kind": "CancelL4F2", "t": t, "m1_max": min(n.r, n.b1)})
        if min(n.r, n.a2):
            out.append({"kind": "CancelL4F1", "t": t, "m2_max": min(n.r, n.a2)})
    return out


# lattice

def generization_lattice(triple):
    """Nodes (r-i-j, a2-i, b1-j) reachable by the two Koszul cancellations."""
    if len(triple) == 5:
        r, a1, a2, b1, b2 = triple
        if a1 or b2:
            raise UnsupportedHypothesis("lattice needs a1 = b2 = 0")
    else:
        r, a2, b1 = triple
    nodes = []
    for i in range(a2 + 1):
        for j in range(b1 + 1):
            if i + j <= r:
                tup = (r - i - j, a2 - i, b1 - j)
                nodes.append({
                    "move": (i, j),
                    "triple": tup,
                    "acm": tup[0] == 0,
                    "postulation_shift_at_c": -i,
                })
    index = {n["move"]: k for k, n in enumerate(nodes)}
    edges = []
    for n in nodes:
        i, j = n["move"]
        for nxt in ((i + 1, j), (i, j + 1)):
            if nxt in index:
                edges.append((n["move"], nxt))
    return {"nodes": nodes, "edges": edges, "proper_generizations": len(nodes) - 1,
            "assumption": HOM_IRREDUCIBILITY_NOTE}


def lattice_size(r, a2, b1):
    """Closed-form node count, independent of the enumeration."""
    return sum(min(b1, r - i) + 1 for i in range(min(a2, r) + 1))


def lattice_dot(lat):
    lines = ["digraph generizations {", "  rankdir=TB;"]
    for n in lat["nodes"]:
        i, j = n["move"]
        label = "({},{},{})".format(*n["triple"])
        style = ' style=filled fillcolor="lightblue" shape=box' if n["acm"] else ""
        lines.append(f'  n{i}_{j} [label="{label}"{style}];')
    for (i, j), (k, l) in lat["edges"]:
        lines.append(f"  n{i}_{j} -> n{k}_{l};")
    lines.append("}")
    return "\n".join(lines)


def lattice_json(lat):
    return {
        "nodes": [{"move": list(n["move"]), "triple": list(n["triple"]), "acm": n["acm"],
                   "postulation_shift_at_c": n["postulation_shift_at_c"]} for n in lat["nodes"]],
        "edges": [[list(a), list(b)] for a, b in lat["edges"]],
        "proper_generizations": lat["proper_generizations"],
        "assumption": lat["assumption"],
    }


# components

def component_count(triple, s_eq_e_eq_c):
    """Bounds on the number of irreducible components through a curve with the given triple."""
    if len(triple) == 5:
        r, a1, a2, b1, b2 = triple
    else:
        (r, a2, b1), a1, b2 = triple, 0, 0
    if a1 or b2 or not a2 * b1:
        return {"status": "Undetermined", "reason": "needs a1 = b2 = 0 and a2*b1 != 0"}
    if r < a2 + b1:
        lower = min(a2, r) + min(b1, r) - r + 1
        out = {"status": "bounded", "lower": lower, "upper": r + 1, "exact": None,
               "generic_curves_acm": True}
        if s_eq_e_eq_c:
            out["status"] = "exact"
            out["exact"] = lower
        return out
    if s_eq_e_eq_c:
        return {"status": "exact", "lower": 1, "upper": 1, "exact": 1, "obstructed": True}
    return {"status": "Undetermined", "reason": "r >= a2 + b1 needs s = e = c"}


def describe_count(res):
    if res["status"] == "exact":
        return f"exactly {res['exact']}"
    if res["status"] == "bounded":
        return f"between {res['lower']} and {res['upper']}"
    return f"undetermined ({res['reason']})"


# linkage

class LinkError(ValueError):
    pass


@dataclass
class LinkageSpec:
    f: int
    g: int
    valid: bool
    offending: list


def ci_postulation(f, g, v):
    """h^0 of the ideal sheaf of a complete intersection of type (f, g), twisted by v."""
    return dim_R(v - f) + dim_R(v - g) - dim_R(v - f - g)


def linkage_spec(cd, f, g):
    bad = [v for v in (f, g, f - 4, g - 4) if cd.rho(v)]
    low = [f"degree {x} < s = {cd.s}" for x in (f, g) if x < cd.s]
    # surfaces of degrees f, g through the curve need room in every degree
    room = [f"complete intersection needs h^0(I_C({v})) >= {ci_postulation(f, g, v)}, have {cd.gamma(v)}"
            for v in range(min(f, g), f + g + 1) if ci_postulation(f, g, v) > cd.gamma(v)]
    empty = [f"f*g = {f * g} <= d = {cd.d}: no residual curve"] if f * g <= cd.d else []
    return LinkageSpec(f, g, not (bad or low or room or empty), bad + low + room + empty)


def _ci_cancellation(beta1, f, g):
    """Which complete-intersection generators can be taken among the minimal generators."""
    avail = dict(beta1)
    used = []
    for x in (f, g):
        if avail.get(x, 0) > 0:
            avail[x] -= 1
            used.append(x)
    return used


def link_details(cd, f, g):
    """Linked curve numerics plus the cancellations that were assumed in building its table."""
    spec = linkage_spec(cd, f, g)
    if not spec.valid:
        raise LinkError(f"invalid linkage (f, g) = ({f}, {g}): offending {spec.offending}")
    rf = _require_split(cd) if not cd.is_acm() else rao_form(cd)
    w = f + g
    comps = {w - 4 - t: r for t, r in rf.components.items()}
    # dual of the E-type sequence, with Omega(-t') resolved by its Koszul tail
    P = {w - i: b for i, b in cd.betti.rows[1].items()}
    F1 = {}
    for a, m in rf.F2.items():
        F1[w + a] = F1.get(w + a, 0) + m
    for x in (f, g):
        F1[x] = F1.get(x, 0) + 1
    for x in _ci_cancellation(cd.betti.rows[1], f, g):
        # a CI form that is a minimal generator cancels a unit entry
        other = w - x
        P[other] -= 1
        F1[other] -= 1
    ghosts = []
    for t, r in comps.items():
        # constants from the dual generators into the 6r Omega generators; generic rank taken
        k = min(P.get(t + 2, 0), 6 * r)
        if k:
            P[t + 2] -= k
            ghosts.append({"degree": t + 2, "cancelled": k, "possible": [0, k]})
        F1[t + 2] = F1.get(t + 2, 0) + 6 * r - k
    rows = {1: F1, 2: P, 3: {}}
    for t, r in comps.items():
        _bump(rows, 2, t + 3, 4 * r)
        _bump(rows, 3, t + 4, r)
    try:
        linked = CurveData(BettiTable(rows), comps, cd.buchsbaum or bool(comps), cd.char)
    except InconsistentCurveData as exc:
        raise LinkError(f"linked table fails validation, so no curve with this Betti table admits an "
                        f"({f}, {g}) linkage: {exc}") from None
    expect_d = f * g - cd.d
    expect_g = cd.g + (w - 4) * (f * g - 2 * cd.d) // 2
    if (linked.d, linked.g) != (expect_d, expect_g):
        raise LinkError(f"linked numerics ({linked.d}, {linked.g}) disagree with ({expect_d}, {expect_g})")
    return {"curve": linked, "spec": spec, "ghosts": ghosts,
            "unobstructed_iff_original": True}


def link(cd, f, g):
    """Numerical data of the curve linked to cd by a complete intersection of type (f, g)."""
    return link_details(cd, f, g)["curve"]


def linked_tuple(n):
    r, a1, a2, b1, b2 = n
    return (r, b2, b1, a2, a1)


# local equations

@dataclass
class QuadricIdeal:
    m: int
    r: int
    a: int
    b: int
    generators: list
    truncation_note: str = "degree-2 truncation of the local equations; higher-order terms not verified"

    def variables(self):
        ys = [f"Y{i}" for i in range(1, self.m + 1)]
        zs = [f"Z{k}_{i}" for k in range(1, self.a + 1) for i in range(1, self.r + 1)]
        ws = [f"W{i}_{l}" for i in range(1, self.r + 1) for l in range(1, self.b + 1)]
        return ys, zs, ws

    def as_text(self):
        return "\n".join(" + ".join(f"Z{k}_{i}*W{i2}_{l}" for (k, i), (i2, l) in gen) for gen in self.generators)

    def to_json(self):
        ys, zs, ws = self.variables()
        return {"m": self.m, "counts": {"Y": len(ys), "Z": len(zs), "W": len(ws)},
                "generators": self.as_text().splitlines(), "note": self.truncation_note}


def quadric_generators(r, a, b):
    """Entries of the (a x r) by (r x b) matrix product, as lists of index pairs."""
    return [[((k, i), (i, l)) for i in range(1, r + 1)] for k in range(1, a + 1) for l in range(1, b + 1)]


def singularity_ideal(cd):
    rf = rao_form(cd)
    s, _, c, e, diam = cd.boundary_degrees()
    if diam != 1:
        raise UnsupportedHypothesis("local equations need diam M = 1")
    n = n_tuple(rf, c)
    if n.a1 or n.b2:
        raise UnsupportedHypothesis("local equations need a1 = b2 = 0")
    if not s == e == c:
        raise UnsupportedHypothesis(f"local equations need s = e = c, got s={s}, e={e}, c={c}")
    from .oracle import normal_sheaf
    ns = normal_sheaf(cd)
    m = ns.h0_N - n.r * n.a2 - n.r * n.b1
    return QuadricIdeal(m, n.r, n.a2, n.b1, quadric_generators(n.r, n.a2, n.b1))


# Omega-resolution family

def _as_degrees(mod):
    return {-a: m for a, m in mod.items()}


def ex1_family(r, a, b):
    """Closed forms and the mapping-cone Betti table for the family with triple (r, a, b)."""
    if min(r, a, b) < 1:
        raise ValueError("r, a, b must be positive")
    if a == 1:
        c = 1 + b + 2 * r
        d = comb(c + 4, 2) - 3 * r - 7
        g = (c + 1) * d - comb(c + 4, 3) + 5
        P = FreeModule({-2: 3 * r - 1, -4: b})
        Q = FreeModule({0: 1, -3: b - 1})
    else:
        c = a + b + 2 * r + 1
        d = comb(c + 4, 2) - 3 * a - 3 * r - 6
        g = (c + 1) * d - comb(c + 4, 3) + 3 * a + 3
        P = FreeModule({-1: a - 2, -2: 3 * r, -4: b})
        Q = FreeModule({0: a, -3: b - 1})
    omega_shape = {"P": P.to_json(), "Q": Q.to_json(), "omega_copies": r, "twist": c}
    betti = omega_mapping_cone(P, Q, r, c)
    return {"c": c, "d": d, "g": g, "omega_resolution": omega_shape, "betti": betti}


def omega_mapping_cone(P, Q, r, c):
    """Betti table of 0 -> P -> Q + Omega^r -> I_C(c) -> 0 after resolving Omega and twisting by -c.

    Omega is resolved by R(-4) -> R(-3)^4 -> R(-2)^6; the general map P -> Omega^r has
    full-rank constant part into the R(-2)^6r generators, which cancels.
    """
    K = koszul_shape(0, r)  # R^r, R(-1)^4r, R(-2)^6r, R(-3)^4r, R(-4)^r
    F1 = Q + K[2]
    F2 = P + K[3]
    F3 = K[4]
    common, _, _ = module_cancel(P, K[2])
    F1, F2 = F1 - common, F2 - common
    shift = lambda mod: {c - a: m for a, m in mod.items()}
    return BettiTable({1: shift(F1), 2: shift(F2), 3: shift(F3)})


def family_curve(r, a, b):
    fam = ex1_family(r, a, b)
    cd = CurveData(fam["betti"], {fam["c"]: r}, True)
    if (cd.d, cd.g) != (fam["d"], fam["g"]):
        raise InconsistentCurveData([f"mapping cone gives (d,g) = {(cd.d, cd.g)}, closed forms give "
                                     f"{(fam['d'], fam['g'])}"])
    return cd
