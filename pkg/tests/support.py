"""Shared fixtures-as-functions: golden tables, random validated curves, and a brute-force Betti oracle."""

import random
from itertools import combinations

from rao_forge.algebra import FreeModule, RingConfig, divides, monomials_of_degree, module_cancel
from rao_forge.invariants import CurveData, InconsistentCurveData
from rao_forge.resolution import BettiTable

D33G117 = {1: {7: 5, 8: 1, 9: 1}, 2: {8: 4, 9: 1, 10: 2}, 3: {9: 1}}
SKEW = {1: {2: 4}, 2: {3: 4}, 3: {4: 1}}
TWISTED_CUBIC = {1: {2: 3}, 2: {3: 2}}

SKEW_IDEAL = "x0*x2\nx0*x3\nx1*x2\nx1*x3\n"
TWISTED_CUBIC_IDEAL = "x0*x2 - x1^2\nx0*x3 - x1*x2\nx1*x3 - x2^2\n"


def d33g117():
    return CurveData(D33G117, {5: 1}, True)


def skew_lines():
    return CurveData(SKEW, {0: 1}, True)


def twisted_cubic():
    return CurveData(TWISTED_CUBIC)


# random curves from Omega-type resolutions 0 -> P -> Q + sum Omega(-t)^r -> I_C -> 0

def omega_cone(P, Q, comps):
    """Betti table of the mapping cone, with generic cancellation of P against generators."""
    F1 = FreeModule(Q)
    L3 = FreeModule()
    F3 = FreeModule()
    for t, r in comps.items():
        F1 = F1 + FreeModule({-t - 2: 6 * r})
        L3 = L3 + FreeModule({-t - 3: 4 * r})
        F3 = F3 + FreeModule({-t - 4: r})
    # only P has constant entries; the Koszul block maps by linear forms
    common, F1, P = module_cancel(F1, FreeModule(P))
    F2 = P + L3
    deg = lambda m: {-a: n for a, n in m.items()}
    return BettiTable({1: deg(F1), 2: deg(F2), 3: deg(F3)})


def random_curve(rng, max_tries=500):
    """A validated Buchsbaum curve of diameter <= 2 (or ACM), built from a random Omega-resolution."""
    for _ in range(max_tries):
        c = rng.randint(1, 6)
        comps = {c: rng.randint(1, 2)}
        if rng.random() < 0.35:
            comps[c - 1] = 1
        if rng.random() < 0.15:
            comps = {}
        q_rank = rng.randint(1, 4)
        Q = FreeModule()
        for _ in range(q_rank):
            Q = Q + FreeModule({-rng.randint(max(1, c - 2), c + 4): 1})
        p_rank = q_rank + 3 * sum(comps.values()) - 1
        if p_rank < 1:
            continue
        target = sum(a * m for a, m in Q.items()) + sum(r * (-4 - 3 * t) for t, r in comps.items())
        twists = [-rng.randint(c, c + 5) for _ in range(p_rank - 1)]
        last = target - sum(twists)
        if last > -1:
            continue
        P = FreeModule()
        for a in twists + [last]:
            P = P + FreeModule({a: 1})
        betti = omega_cone(P, Q, comps)
        try:
            cd = CurveData(betti, dict(comps), True)
        except (InconsistentCurveData, ValueError):
            continue
        return cd
    raise RuntimeError("no valid random curve found")


def random_curves(n, seed):
    rng = random.Random(seed)
    return [random_curve(rng) for _ in range(n)]


# brute-force Betti numbers of monomial ideals via Koszul homology of R/I

def _rank_mod_p(rows, p):
    """Rank of a sparse matrix (list of {col: val}) over GF(p) by Gaussian elimination."""
    pivots = {}
    rank = 0
    for row in rows:
        row = {k: v % p for k, v in row.items() if v % p}
        while row:
            col = min(row)
            if col not in pivots:
                inv = pow(row[col], p - 2, p)
                pivots[col] = {k: v * inv % p for k, v in row.items()}
                rank += 1
                break
            piv = pivots[col]
            f = row[col]
            for k, v in piv.items():
                nv = (row.get(k, 0) - f * v) % p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return rank


def koszul_betti(gens, max_degree, p=32003):
    """beta_{j,i} of the ideal generated by monomials `gens`, i <= max_degree.

    Uses beta_{j,i}(I) = dim H_j(K(x) tensor R/I)_i with the standard monomials as basis.
    """
    def standard(n):
        if n < 0:
            return []
        return [m for m in monomials_of_degree(n) if not any(divides(g, m) for g in gens)]

    out = {1: {}, 2: {}, 3: {}}
    for i in range(1, max_degree + 1):
        # chain groups C_j = wedge^j V (x) (R/I)_{i-j}, j = 0..4
        basis = {}
        for j in range(0, 5):
            basis[j] = [(S, m) for S in combinations(range(4), j) for m in standard(i - j)]
        index = {j: {b: k for k, b in enumerate(basis[j])} for j in basis}

        def diff_rank(j):
            if j == 0 or not basis[j] or not basis[j - 1]:
                return 0
            rows = []
            for S, m in basis[j]:
                row = {}
                for pos, x in enumerate(S):
                    mm = list(m)
                    mm[x] += 1
                    mm = tuple(mm)
                    if any(divides(g, mm) for g in gens):
                        continue
                    T = S[:pos] + S[pos + 1:]
                    k = index[j - 1][(T, mm)]
                    row[k] = row.get(k, 0) + (-1) ** pos
                rows.append(row)
            return _rank_mod_p(rows, p)

        ranks = {j: diff_rank(j) for j in range(1, 5)}
        ranks[5] = 0
        for j in (1, 2, 3, 4):
            h = len(basis[j]) - ranks[j] - ranks[j + 1]
            if h:
                out.setdefault(j, {})[i] = h
    return out


def _mono(s):
    e = [0, 0, 0, 0]
    for part in s.split("*"):
        if "^" in part:
            v, k = part.split("^")
        else:
            v, k = part, 1
        e[int(v[1])] += int(k)
    return tuple(e)


def _intersect(a, b):
    """Intersection of two monomial ideals: lcms of pairs, minimalized."""
    from rao_forge.algebra import mono_lcm
    gens = {mono_lcm(x, y) for x in a for y in b}
    return sorted(g for g in gens if not any(h != g and divides(h, g) for h in gens))


def _ideal(*parts):
    gens = [_mono(p) for p in parts]
    return sorted(g for g in set(gens) if not any(h != g and divides(h, g) for h in gens))


def monomial_catalogue():
    """Fifteen saturated codimension-2 monomial ideals (curves), generators of degree <= 4."""
    L = lambda a, b: _ideal(f"x{a}", f"x{b}")
    cat = {
        "line": L(0, 1),
        "double line x0,x1^2": _ideal("x0", "x1^2"),
        "quadruple line x0^2,x1^2": _ideal("x0^2", "x1^2"),
        "skew lines": _intersect(L(0, 1), L(2, 3)),
        "two meeting lines": _ideal("x0", "x1*x2"),
        "three concurrent lines": _ideal("x0*x1", "x0*x2", "x1*x2"),
        "square of a line": _ideal("x0^2", "x0*x1", "x1^2"),
        "triple line x0,x1^3": _ideal("x0", "x1^3"),
        "x0^2,x1^3": _ideal("x0^2", "x1^3"),
        "x0^2,x0*x1^2,x1^3": _ideal("x0^2", "x0*x1^2", "x1^3"),
        "three coplanar lines": _ideal("x0", "x1*x2*x3"),
        "chain of three lines": _intersect(_intersect(L(0, 1), L(1, 2)), L(2, 3)),
        "cycle of four lines": _intersect(_intersect(L(0, 1), L(1, 2)), _intersect(L(2, 3), L(3, 0))),
        "two skew double lines": _intersect(_ideal("x0^2", "x1"), _ideal("x2^2", "x3")),
        "skew line and triple line": _intersect(_ideal("x0^3", "x1"), L(2, 3)),
    }
    return cat


def mono_poly(m, cfg=None):
    from rao_forge.algebra import Polynomial
    return Polynomial({m: 1}, cfg or RingConfig())
