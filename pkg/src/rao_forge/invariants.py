"""Cohomology functions and numerical invariants of a curve from its Betti table and Rao dimensions."""

from .algebra import DEFAULT_CHAR, GradedDims, binom_poly, dim_R
from .resolution import BettiTable, NotACurveIdeal, hilbert_numerics


class InconsistentCurveData(ValueError):
    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


# lower end of the downward scan for e; sigma(v) > 0 for every v <= -2 on a curve
_E_FLOOR = -2


class CurveData:
    """Betti table + Rao dimensions, validated, with derived invariants computed eagerly."""

    def __init__(self, betti, rao=None, buchsbaum=False, char=DEFAULT_CHAR):
        self.betti = betti if isinstance(betti, BettiTable) else BettiTable(betti)
        self.rao = GradedDims(rao or {})
        self.buchsbaum = bool(buchsbaum)
        self.char = char
        problems = []
        try:
            self.d, self.g = hilbert_numerics(self.betti)
        except NotACurveIdeal as exc:
            raise InconsistentCurveData([str(exc)]) from None
        if self.d < 1:
            raise InconsistentCurveData([f"degree {self.d} < 1"])
        if not self.betti.rows[1]:
            problems.append("no generators")
        if not self.rao and self.betti.rows[3]:
            problems.append("Rao module is zero but the resolution has a third step")
        if self.rao and not self.betti.rows[3]:
            problems.append("Rao module is nonzero but the resolution has no third step")
        if problems:
            raise InconsistentCurveData(problems)
        self.s = min(v for v in self.betti.rows[1])
        if self.rao:
            self.b, self.c = min(self.rao), max(self.rao)
            self.diam = self.c - self.b + 1
        else:
            self.b = self.c = None
            self.diam = 0
        self.e = self._scan_e()
        problems.extend(self._check())
        if problems:
            raise InconsistentCurveData(problems)

    # cohomology functions

    def gamma(self, v):
        return sum((-1) ** (j + 1) * b * dim_R(v - i) for j, r in self.betti.rows.items() for i, b in r.items())

    def rho(self, v):
        return self.rao(v)

    def chi(self, v):
        """Euler characteristic of I_C(v)."""
        return binom_poly(v + 3, 3) - (self.d * v + 1 - self.g)

    def sigma(self, v):
        return self.chi(v) - self.gamma(v) + self.rho(v) + dim_R(-v - 4)

    def h(self, j, v):
        return (self.gamma, self.rho, self.sigma)[j](v)

    def e_scan_bound(self):
        top = max(self.betti.rows[1])
        c = self.c if self.c is not None else -10 ** 6
        # regularity of I also bounds the last nonzero h^2; keep the larger of the two
        return max(max(c + 2, top) + 1, self.betti.regularity())

    def _scan_e(self):
        v = self.e_scan_bound()
        while v > _E_FLOOR - 100:
            if self.sigma(v) != 0:
                return v
            v -= 1
        raise InconsistentCurveData(["h^1(O_C(v)) vanishes in every scanned degree"])

    def window(self):
        top = self.betti.max_degree()
        return range(-(top + 4), top + 5)

    def _check(self):
        out = []
        lo = min(self.window().start, (self.b if self.b is not None else 0) - 4)
        hi = max(self.window().stop, self.e_scan_bound() + 6)
        for v in range(lo, hi):
            if self.gamma(v) < 0:
                out.append(f"h^0(I_C({v})) = {self.gamma(v)} < 0")
            sg = self.sigma(v)
            if sg < 0:
                out.append(f"h^1(O_C({v})) = {sg} < 0 (Rao dimensions incompatible with the Betti table)")
        if self.gamma(self.s) <= 0 or any(self.gamma(v) for v in range(0, self.s)):
            out.append("initial degree of the ideal disagrees with the first Betti row")
        # a form of degree s generates a principal ideal inside I
        short = [v for v in range(self.s, hi) if self.gamma(v) < dim_R(v - self.s)]
        if short:
            out.append(f"h^0(I_C({short[0]})) = {self.gamma(short[0])} is smaller than the multiples "
                       f"of one degree-{self.s} generator ({dim_R(short[0] - self.s)})")
        if self.rao and self.diam <= 2 and (self.buchsbaum or self.diam == 1):
            # trivial module structure: third step is r_t copies of R(-t-4)
            expect = {t + 4: n for t, n in self.rao.items()}
            if self.betti.rows[3] != expect:
                out.append(f"Rao dimensions {self.rao.to_json()} disagree with the third Betti row "
                           f"{ {str(k): v for k, v in sorted(self.betti.rows[3].items())} }")
            # the Koszul relations R(-t-3)^(4 r_t) must fit in the second row
            for t, n in self.rao.items():
                if self.betti(2, t + 3) < 4 * n:
                    out.append(f"second Betti row has {self.betti(2, t + 3)} < {4 * n} relations "
                               f"in degree {t + 3} required by the Rao module")
        return out

    # invariants

    def boundary_degrees(self):
        return self.s, self.b, self.c, self.e, self.diam

    def delta(self, j, v):
        hj = (self.gamma, self.rho, self.sigma)[j]
        return sum((-1) ** (k + 1) * b * hj(i + v) for k, r in self.betti.rows.items() for i, b in r.items())

    def is_acm(self):
        return not self.rao

    def to_json(self):
        return {
            "char": self.char,
            "betti": self.betti.to_json(),
            "rao": self.rao.to_json(),
            "buchsbaum": self.buchsbaum,
        }

    @classmethod
    def from_json(cls, data):
        if "betti" not in data:
            raise InconsistentCurveData(["missing 'betti'"])
        return cls(
            BettiTable.from_json(data["betti"]),
            {int(k): v for k, v in (data.get("rao") or {}).items()},
            data.get("buchsbaum", False),
            data.get("char", DEFAULT_CHAR),
        )

    def __repr__(self):
        return f"CurveData(d={self.d}, g={self.g}, betti={self.betti.to_json()}, rao={self.rao.to_json()})"


def gamma(cd, v):
    return cd.gamma(v)


def rho(cd, v):
    return cd.rho(v)


def sigma(cd, v):
    return cd.sigma(v)


def boundary_degrees(cd):
    return cd.boundary_degrees()


def delta(cd, j, v):
    return cd.delta(j, v)


def euler_identities(cd):
    """Evaluate the three expressions that must agree, plus the twisted identity on a window."""
    sides = (
        1 - cd.delta(0, 0),
        4 * cd.d + cd.delta(2, 0) - cd.delta(1, 0),
        1 + cd.delta(2, -4) - cd.delta(1, -4),
    )
    top = cd.betti.max_degree()
    failures = []
    for v in range(-(top + 4), top + 5):
        lhs = binom_poly(v + 3, 3) - (2 * cd.d * v + 4 * cd.d)
        rhs = cd.delta(0, v) - cd.delta(0, -v - 4)
        if lhs != rhs:
            failures.append({"v": v, "lhs": lhs, "rhs": rhs})
    ok = sides[0] == sides[1] == sides[2] and not failures
    return {"sides": list(sides), "window": [-(top + 4), top + 4], "window_failures": failures, "ok": ok}
