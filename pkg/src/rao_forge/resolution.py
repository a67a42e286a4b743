"""Minimal graded free resolutions of curve ideals via Schreyer's algorithm."""

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import ONE, Polynomial, RingConfig, AlgebraError, divides, mono_deg, mono_div, mono_lcm, mono_mul
from .groebner import DEGREE_CAP, DegreeCapExceeded, Level, check_homogeneous, groebner_internal, _to_internal


class NotACurveIdeal(AlgebraError):
    pass


class BettiTable:
    """beta[j][i] for j = 1,2,3: number of degree-i generators in homological step j."""

    def __init__(self, data=None):
        self.rows = {1: {}, 2: {}, 3: {}}
        for j, row in dict(data or {}).items():
            j = int(j)
            if j not in (1, 2, 3):
                raise AlgebraError(f"homological index {j} outside 1..3")
            for i, b in dict(row).items():
                b = int(b)
                if b < 0:
                    raise AlgebraError(f"negative Betti number at ({j},{i})")
                if b:
                    self.rows[j][int(i)] = b

    def __call__(self, j, i):
        return self.rows.get(j, {}).get(i, 0)

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.rows == other.rows

    def row(self, j):
        return dict(sorted(self.rows[j].items()))

    def degrees(self):
        return sorted({i for r in self.rows.values() for i in r})

    def S(self, n):
        return sum((-1) ** (j + 1) * b * i ** n for j, r in self.rows.items() for i, b in r.items())

    def rank(self, j):
        return sum(self.rows[j].values())

    def max_degree(self):
        return max(self.degrees(), default=0)

    def regularity(self):
        return max((i - j + 1 for j, r in self.rows.items() for i in r), default=0)

    def copy(self):
        return BettiTable(self.rows)

    def to_json(self):
        return {str(j): {str(i): b for i, b in sorted(r.items())} for j, r in self.rows.items() if r}

    @classmethod
    def from_json(cls, data):
        return cls({int(j): {int(i): b for i, b in r.items()} for j, r in data.items()})

    def __repr__(self):
        return f"BettiTable({self.to_json()})"


def hilbert_numerics(betti):
    """(degree, arithmetic genus) read off the power sums of a curve's Betti table."""
    if betti.S(0) != 1 or betti.S(1) != 0:
        raise NotACurveIdeal(f"not a curve ideal (rank/degree defect): S0={betti.S(0)}, S1={betti.S(1)}")
    d = Fraction(-betti.S(2), 2)
    g = Fraction(-betti.S(3), 6) - 2 * d + 1
    if d.denominator != 1 or g.denominator != 1:
        raise NotACurveIdeal(f"Betti table gives non-integral degree/genus ({d}, {g})")
    return int(d), int(g)


@dataclass
class FreeResolution:
    """Differentials as column dicts: maps[k][col] = {row: Polynomial}.

    maps[0] is the generator row F1 -> R (row index 0); maps[k] : F_{k+1} -> F_k.
    degrees[k] lists the generator degrees of F_{k+1}.
    """
    degrees: list
    maps: list
    cfg: RingConfig = field(default_factory=RingConfig)

    def betti(self):
        data = {}
        for k, degs in enumerate(self.degrees, start=1):
            row = {}
            for dg in degs:
                row[dg] = row.get(dg, 0) + 1
            data[k] = row
        return BettiTable(data)

    def length(self):
        return sum(1 for d in self.degrees if d)

    def generators(self):
        return [self.maps[0][j].get(0, Polynomial({}, self.cfg)) for j in range(len(self.degrees[0]))]

    def matrix(self, k):
        """Dense list-of-rows form of the k-th differential (k >= 1: F_{k+1} -> F_k)."""
        rows = 1 if k == 0 else len(self.degrees[k - 1])
        cols = len(self.degrees[k])
        zero = Polynomial({}, self.cfg)
        return [[self.maps[k][c].get(r, zero) for c in range(cols)] for r in range(rows)]

    def is_complex(self):
        """Check that consecutive differentials compose to zero."""
        for k in range(len(self.maps) - 1):
            a, b = self.maps[k], self.maps[k + 1]
            for col in b.values():
                acc = {}
                for mid, entry in col.items():
                    for r, e in a[mid].items():
                        acc[r] = acc.get(r, Polynomial({}, self.cfg)) + e * entry
                if any(not v.is_zero() for v in acc.values()):
                    return False
        return True

    def to_json(self):
        out = []
        for k, m in enumerate(self.maps):
            cols = len(self.degrees[k])
            out.append({
                "source_degrees": list(self.degrees[k]),
                "target_degrees": [0] if k == 0 else list(self.degrees[k - 1]),
                "columns": [{str(r): str(e) for r, e in sorted(m[c].items())} for c in range(cols)],
            })
        return out


def _frame_pairs(leads):
    """Schreyer pairs: for each a, the minimal lcm quotients against later b with the same component."""
    pairs = []
    for a, (ua, ca) in enumerate(leads):
        cands = []
        for b in range(a + 1, len(leads)):
            ub, cb = leads[b]
            if cb != ca:
                continue
            l = mono_lcm(ua, ub)
            cands.append((mono_div(l, ua), b, l))
        chosen = []
        for q, b, l in sorted(cands, key=lambda t: (mono_deg(t[0]), t[1])):
            if not any(divides(q2, q) for q2, _, _ in chosen):
                chosen.append((q, b, l))
        pairs.extend((a, b, l) for _, b, l in sorted(chosen, key=lambda t: t[1]))
    return pairs


def _syzygies(level, basis):
    """Schreyer syzygies of basis (a Groebner basis at `level`).

    Returns (new_level, syzygy vectors as internal lists at new_level's source, i.e.
    vectors in the free module whose generators are the basis elements).
    """
    leads = [f[0][0] for f in basis]
    tails = [mono_mul(u, level.tails[c]) for u, c in leads]
    chains = [level.chains[c] + (-b,) for b, (u, c) in enumerate(leads)]
    src = Level(level.cfg, tails, chains)
    syz = []
    for a, b, l in _frame_pairs(leads):
        deg = mono_deg(mono_mul(l, level.tails[leads[a][1]]))
        if deg > DEGREE_CAP:
            raise DegreeCapExceeded(f"syzygy of degree {deg} exceeds the degree cap {DEGREE_CAP}")
        qa, qb = mono_div(l, leads[a][0]), mono_div(l, leads[b][0])
        s = level.sub_mul([], level.p - 1, qa, basis[a])
        s = level.sub_mul(s, 1, qb, basis[b])
        rem, quot = level.reduce(s, basis, record=True)
        if rem:
            raise AlgebraError("internal error: S-pair of a Groebner basis did not reduce to zero")
        vec = {(qa, a): 1, (qb, b): level.p - 1}
        for idx, qd in quot.items():
            for q, c in qd.items():
                t = (q, idx)
                vec[t] = (vec.get(t, 0) - c) % level.p
        v = src.from_dict(vec)
        if v[0][0] != (qa, a):
            raise AlgebraError("internal error: unexpected Schreyer lead term")
        syz.append(v)
    return src, syz


def _vec_to_column(cfg, v):
    col = {}
    for (m, comp), c in v:
        col.setdefault(comp, {})[m] = c
    return {comp: Polynomial(t, cfg) for comp, t in col.items()}


def schreyer_resolution(gens, cfg):
    """Possibly non-minimal resolution; returns (degrees, maps) in column-dict form."""
    level0 = Level(cfg)
    gb = groebner_internal(level0, [_to_internal(level0, f) for f in gens])
    degrees = [[mono_deg(f[0][0][0]) for f in gb]]
    maps = [{j: {0: Polynomial({m: c for (m, _), c in f}, cfg)} for j, f in enumerate(gb)}]
    level, basis = level0, gb
    while True:
        src, syz = _syzygies(level, basis)
        if not syz:
            break
        degrees.append([src.degree(v[0][0]) for v in syz])
        maps.append({j: _vec_to_column(cfg, v) for j, v in enumerate(syz)})
        level, basis = src, syz
    return degrees, maps


def _is_unit(poly):
    return len(poly.terms) == 1 and ONE in poly.terms


def minimalize(degrees, maps, cfg):
    """Cancel unit entries, lowest degree then lowest index first."""
    alive = [set(range(len(d))) for d in degrees]
    maps = [{c: dict(col) for c, col in m.items()} for m in maps]
    while True:
        best = None
        for k in range(1, len(maps)):
            for q in alive[k]:
                for p_, e in maps[k][q].items():
                    if _is_unit(e):
                        cand = (degrees[k][q], k, q, p_)
                        if best is None or cand < best:
                            best = cand
        if best is None:
            break
        _, k, q, prow = best
        col_q = maps[k][q]
        u_inv = cfg.inv(col_q[prow].terms[ONE])
        for j in alive[k]:
            if j == q:
                continue
            e = maps[k][j].get(prow)
            if e is None:
                continue
            factor = e * u_inv
            newcol = dict(maps[k][j])
            for r, val in col_q.items():
                newcol[r] = newcol.get(r, Polynomial({}, cfg)) - factor * val
            maps[k][j] = {r: v for r, v in newcol.items() if not v.is_zero()}
        for j in alive[k]:
            maps[k][j].pop(prow, None)
        alive[k].discard(q)
        del maps[k][q]
        alive[k - 1].discard(prow)
        del maps[k - 1][prow]
        if k + 1 < len(maps):
            for j in alive[k + 1]:
                maps[k + 1][j].pop(q, None)
    # renumber survivors
    new_degrees, new_maps = [], []
    index = [sorted(a) for a in alive]
    pos = [{old: new for new, old in enumerate(ix)} for ix in index]
    for k, ix in enumerate(index):
        new_degrees.append([degrees[k][i] for i in ix])
        m = {}
        for new, old in enumerate(ix):
            col = maps[k][old]
            m[new] = {0: col[0]} if k == 0 else {pos[k - 1][r]: v for r, v in col.items()}
        new_maps.append(m)
    while new_degrees and not new_degrees[-1]:
        new_degrees.pop()
        new_maps.pop()
    return new_degrees, new_maps


def minimal_free_resolution(gens, cfg=None):
    """Minimal free resolution and Betti table of a saturated curve ideal."""
    cfg = cfg or (gens[0].cfg if gens else RingConfig())
    if not gens:
        raise AlgebraError("empty generator list")
    check_homogeneous(gens)
    gens = [Polynomial(f.terms, cfg) for f in gens]
    degrees, maps = schreyer_resolution(gens, cfg)
    degrees, maps = minimalize(degrees, maps, cfg)
    res = FreeResolution(degrees, maps, cfg)
    if len(degrees) > 3:
        raise NotACurveIdeal("resolution has length > 3: not codimension 2 / not saturated")
    betti = res.betti()
    d, _ = hilbert_numerics(betti)
    if d < 1:
        raise NotACurveIdeal(f"not a curve ideal (rank/degree defect): degree {d}")
    return res, betti
