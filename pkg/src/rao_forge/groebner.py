"""Buchberger's algorithm (normal strategy, Gebauer-Moller criteria).

Polynomials and free-module vectors share one internal representation: a list
of ((monomial, component), coeff) sorted by decreasing term order.  Ring
elements use component 0.
"""

from .algebra import (
    ONE, Polynomial, RingConfig, AlgebraError, coprime, divides, mono_deg,
    mono_div, mono_lcm, mono_mul,
)

DEGREE_CAP = 40


class DegreeCapExceeded(AlgebraError):
    pass


class Level:
    """Term order on a free module: Schreyer-induced, or the ring order at level 0."""

    def __init__(self, cfg, tails=None, chains=None):
        self.cfg = cfg
        self.p = cfg.characteristic
        self.ordkey = cfg.key
        self.tails = tails if tails is not None else [ONE]
        self.chains = chains if chains is not None else [()]
        self._cache = {}

    def key(self, term):
        k = self._cache.get(term)
        if k is None:
            mon, comp = term
            k = self.ordkey(mono_mul(mon, self.tails[comp])) + self.chains[comp]
            self._cache[term] = k
        return k

    def degree(self, term):
        mon, comp = term
        return mono_deg(mon) + mono_deg(self.tails[comp])

    # vector arithmetic

    def from_dict(self, d):
        p = self.p
        items = [(t, c % p) for t, c in d.items() if c % p]
        items.sort(key=lambda tc: self.key(tc[0]), reverse=True)
        return items

    def sub_mul(self, f, c, q, g):
        """f - c * q * g, with q a ring monomial."""
        p = self.p
        key = self.key
        shifted = [((mono_mul(q, m), comp), (-c * cg) % p) for (m, comp), cg in g]
        out = []
        i = j = 0
        nf, ng = len(f), len(shifted)
        while i < nf and j < ng:
            tf, cf = f[i]
            tg, cg = shifted[j]
            if tf == tg:
                s = (cf + cg) % p
                if s:
                    out.append((tf, s))
                i += 1
                j += 1
            elif key(tf) > key(tg):
                out.append(f[i])
                i += 1
            else:
                out.append(shifted[j])
                j += 1
        out.extend(f[i:])
        out.extend(shifted[j:])
        return out

    def add(self, f, g):
        return self.sub_mul(f, self.p - 1, ONE, g)

    def scale(self, f, c):
        p = self.p
        c %= p
        if not c:
            return []
        return [(t, (v * c) % p) for t, v in f]

    def monic(self, f):
        return self.scale(f, self.cfg.inv(f[0][1]))

    def reduce(self, f, basis, record=False):
        """Full division of f by basis (each basis lead monic).

        Returns (remainder, quotients) with quotients[idx] a dict mon -> coeff.
        """
        p = self.p
        leads = [(g[0][0], idx) for idx, g in enumerate(basis) if g]
        quot = {}
        rem = []
        while f:
            (m, comp), c = f[0]
            hit = None
            for (lm, lcomp), idx in leads:
                if lcomp == comp and divides(lm, m):
                    hit = idx
                    break
            if hit is None:
                rem.append(f[0])
                f = f[1:]
                continue
            g = basis[hit]
            q = mono_div(m, g[0][0][0])
            f = self.sub_mul(f, c, q, g)
            if record:
                qd = quot.setdefault(hit, {})
                qd[q] = (qd.get(q, 0) + c) % p
        return rem, quot


def _to_internal(level, poly):
    return level.from_dict({(m, 0): c for m, c in poly.terms.items()})


def _to_poly(cfg, f):
    return Polynomial({m: c for (m, _), c in f}, cfg)


def _update(polys, G, B, h):
    """Gebauer-Moller update of the basis index set G and pair set B with new index h."""
    lm = lambda i: polys[i][0][0][0]
    lh = lm(h)
    C = [(h, g) for g in G]
    D = []
    while C:
        pair = C.pop(0)
        g1 = pair[1]
        l1 = mono_lcm(lh, lm(g1))
        if coprime(lh, lm(g1)):
            D.append(pair)
            continue
        dominated = any(divides(mono_lcm(lh, lm(g2)), l1) for _, g2 in C) or \
            any(divides(mono_lcm(lh, lm(g2)), l1) for _, g2 in D)
        if not dominated:
            D.append(pair)
    E = [(a, b) for a, b in D if not coprime(lh, lm(b))]
    kept = []
    for a, b in B:
        l = mono_lcm(lm(a), lm(b))
        if divides(lh, l) and mono_lcm(lm(a), lh) != l and mono_lcm(lm(b), lh) != l:
            continue
        kept.append((a, b))
    newG = [g for g in G if not divides(lh, lm(g))]
    newG.append(h)
    return newG, kept + E


def groebner_internal(level, gens):
    """Reduced Groebner basis of ring elements in internal form, sorted by lead term."""
    polys = []
    G, B = [], []
    for f in gens:
        if not f:
            continue
        f = level.monic(f)
        polys.append(f)
        G, B = _update(polys, G, B, len(polys) - 1)
    lm = lambda i: polys[i][0][0][0]
    while B:
        # normal strategy: smallest lcm first, ties broken deterministically
        def pair_key(ab):
            a, b = ab
            l = mono_lcm(lm(a), lm(b))
            return (mono_deg(l), level.ordkey(l), a, b)
        B.sort(key=pair_key)
        a, b = B.pop(0)
        l = mono_lcm(lm(a), lm(b))
        if mono_deg(l) > DEGREE_CAP:
            raise DegreeCapExceeded(f"S-pair of degree {mono_deg(l)} exceeds the degree cap {DEGREE_CAP}")
        fa, fb = polys[a], polys[b]
        s = level.sub_mul([], level.p - 1, mono_div(l, lm(a)), fa)
        s = level.sub_mul(s, 1, mono_div(l, lm(b)), fb)
        rem, _ = level.reduce(s, [polys[i] for i in G])
        if rem:
            polys.append(level.monic(rem))
            G, B = _update(polys, G, B, len(polys) - 1)
    # minimalize then interreduce
    basis = [polys[i] for i in G]
    basis.sort(key=lambda f: level.key(f[0][0]))
    minimal = []
    for f in basis:
        if not any(divides(g[0][0][0], f[0][0][0]) for g in minimal):
            minimal.append(f)
    reduced = []
    for i, f in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        head, tail = f[:1], f[1:]
        rem, _ = level.reduce(tail, others)
        reduced.append(head + rem)
    return reduced


def check_homogeneous(gens):
    for f in gens:
        if f.is_zero():
            raise AlgebraError("zero generator")
        if not f.is_homogeneous():
            raise AlgebraError(f"generator {f} is not homogeneous")


def groebner_basis(gens, cfg=None):
    """Unique reduced Groebner basis of a homogeneous ideal, sorted by increasing lead term."""
    cfg = cfg or (gens[0].cfg if gens else RingConfig())
    check_homogeneous(gens)
    level = Level(cfg)
    gb = groebner_internal(level, [_to_internal(level, f) for f in gens])
    return [_to_poly(cfg, f) for f in gb]


def s_polynomial(f, g):
    """S-polynomial of two Polynomials (used by tests and diagnostics)."""
    level = Level(f.cfg)
    a, b = level.monic(_to_internal(level, f)), level.monic(_to_internal(level, g))
    l = mono_lcm(a[0][0][0], b[0][0][0])
    s = level.sub_mul([], level.p - 1, mono_div(l, a[0][0][0]), a)
    s = level.sub_mul(s, 1, mono_div(l, b[0][0][0]), b)
    return _to_poly(f.cfg, s)


def normal_form(f, basis):
    level = Level(f.cfg)
    rem, _ = level.reduce(_to_internal(level, f), [level.monic(_to_internal(level, g)) for g in basis])
    return _to_poly(f.cfg, rem)
