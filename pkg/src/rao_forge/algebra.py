"""Arithmetic in k[x0,x1,x2,x3] over a prime field, plus graded bookkeeping."""

from dataclasses import dataclass
from math import comb

NVARS = 4
VARS = ("x0", "x1", "x2", "x3")
EXP_LIMIT = 0xFFFF
ONE = (0, 0, 0, 0)
DEFAULT_CHAR = 32003


class AlgebraError(ValueError):
    pass


class ExponentOverflow(AlgebraError):
    pass


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def degrevlex_key(e):
    # larger key = larger monomial; ties on degree broken by the last variable
    return (e[0] + e[1] + e[2] + e[3], -e[3], -e[2], -e[1], -e[0])


def lex_key(e):
    return e


ORDERS = {"degrevlex": degrevlex_key, "lex": lex_key}


@dataclass(frozen=True)
class RingConfig:
    characteristic: int = DEFAULT_CHAR
    order: str = "degrevlex"

    def __post_init__(self):
        if not is_prime(self.characteristic):
            raise AlgebraError(f"characteristic {self.characteristic} is not prime")
        if self.order not in ORDERS:
            raise AlgebraError(f"unknown monomial order {self.order!r}")

    @property
    def key(self):
        return ORDERS[self.order]

    def inv(self, a):
        a %= self.characteristic
        if a == 0:
            raise ZeroDivisionError("inverse of 0 mod p")
        return pow(a, self.characteristic - 2, self.characteristic)


# monomials are 4-tuples of exponents

def mono_mul(a, b):
    m = (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])
    if max(m) > EXP_LIMIT:
        raise ExponentOverflow(f"exponent overflow multiplying {a} by {b}")
    return m


def mono_div(a, b):
    """a / b, assuming b divides a."""
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3])


def divides(b, a):
    return b[0] <= a[0] and b[1] <= a[1] and b[2] <= a[2] and b[3] <= a[3]


def mono_lcm(a, b):
    return (max(a[0], b[0]), max(a[1], b[1]), max(a[2], b[2]), max(a[3], b[3]))


def coprime(a, b):
    return not (a[0] and b[0] or a[1] and b[1] or a[2] and b[2] or a[3] and b[3])


def mono_deg(a):
    return a[0] + a[1] + a[2] + a[3]


def monomials_of_degree(n):
    """All exponent vectors of total degree n, in descending degrevlex order."""
    out = []
    for a in range(n, -1, -1):
        for b in range(n - a, -1, -1):
            for c in range(n - a - b, -1, -1):
                out.append((a, b, c, n - a - b - c))
    out.sort(key=degrevlex_key, reverse=True)
    return out


def mono_str(m):
    parts = []
    for name, e in zip(VARS, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


class Polynomial:
    """Sparse polynomial: exponent tuple -> nonzero coefficient mod p."""

    __slots__ = ("terms", "cfg")

    def __init__(self, terms=None, cfg=None):
        self.cfg = cfg or RingConfig()
        p = self.cfg.characteristic
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != NVARS or min(m) < 0:
                raise AlgebraError(f"bad exponent vector {m}")
            if max(m) > EXP_LIMIT:
                raise ExponentOverflow(f"exponent {max(m)} exceeds 16 bits")
            c %= p
            if c:
                clean[m] = (clean.get(m, 0) + c) % p
                if not clean[m]:
                    del clean[m]
        self.terms = clean

    @classmethod
    def var(cls, i, cfg=None):
        m = [0, 0, 0, 0]
        m[i] = 1
        return cls({tuple(m): 1}, cfg)

    @classmethod
    def const(cls, c, cfg=None):
        return cls({ONE: c}, cfg)

    def _wrap(self, other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, int):
            return Polynomial.const(other, self.cfg)
        return NotImplemented

    def __add__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(out, self.cfg)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()}, self.cfg)

    def __sub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        p = self.cfg.characteristic
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = (out.get(m, 0) + c1 * c2) % p
        return Polynomial(out, self.cfg)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = Polynomial.const(1, self.cfg)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.const(other, self.cfg)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((mono_deg(m) for m in self.terms), default=-1)

    def is_homogeneous(self):
        return len({mono_deg(m) for m in self.terms}) <= 1

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: self.cfg.key(t[0]), reverse=True)

    def lead(self):
        return self.sorted_terms()[0]

    def monic(self):
        c = self.lead()[1]
        inv = self.cfg.inv(c)
        return Polynomial({m: v * inv for m, v in self.terms.items()}, self.cfg)

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        p = self.cfg.characteristic
        parts = []
        for m, c in self.sorted_terms():
            # print coefficients in the symmetric range for readability
            if c > p // 2:
                sign, c = "-", p - c
            else:
                sign = "+"
            body = mono_str(m)
            if c == 1 and body != "1":
                txt = body
            elif body == "1":
                txt = str(c)
            else:
                txt = f"{c}*{body}"
            parts.append((sign, txt))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, txt in parts[1:]:
            s += f" {sign} {txt}"
        return s


# dimension counts

def binom_poly(n, k):
    """Binomial coefficient as a polynomial in n (valid for negative n)."""
    num = 1
    for i in range(k):
        num *= n - i
    den = 1
    for i in range(1, k + 1):
        den *= i
    return num // den


def dim_R(v):
    """dim of the degree-v piece of k[x0..x3]."""
    return comb(v + 3, 3) if v >= 0 else 0


class FreeModule(dict):
    """Graded free module as twist -> multiplicity; R(a)^m is stored as {a: m}."""

    def __init__(self, data=None):
        super().__init__()
        for a, m in dict(data or {}).items():
            m = int(m)
            if m < 0:
                raise AlgebraError(f"negative multiplicity {m} at twist {a}")
            if m:
                self[int(a)] = m

    @property
    def rank(self):
        return sum(self.values())

    def mult(self, twist):
        return self.get(twist, 0)

    def __add__(self, other):
        out = dict(self)
        for a, m in other.items():
            out[a] = out.get(a, 0) + m
        return FreeModule(out)

    def __sub__(self, other):
        out = dict(self)
        for a, m in other.items():
            out[a] = out.get(a, 0) - m
        return FreeModule(out)

    def to_json(self):
        return {str(a): m for a, m in sorted(self.items())}

    def __repr__(self):
        if not self:
            return "0"
        return " + ".join(f"R({a})^{m}" if m > 1 else f"R({a})" for a, m in sorted(self.items(), reverse=True))


class GradedDims(dict):
    """Finitely supported degree -> nonnegative dimension."""

    def __init__(self, data=None):
        super().__init__()
        for v, n in dict(data or {}).items():
            n = int(n)
            if n < 0:
                raise AlgebraError(f"negative dimension {n} in degree {v}")
            if n:
                self[int(v)] = n

    def __call__(self, v):
        return self.get(v, 0)

    @property
    def support(self):
        return sorted(self)

    def to_json(self):
        return {str(v): n for v, n in sorted(self.items())}


def koszul_shape(t, r):
    """Shapes of r copies of the Koszul resolution of k(-t)."""
    if r <= 0:
        raise AlgebraError("koszul_shape needs r >= 1")
    return [FreeModule({-t - i: comb(4, i) * r}) for i in range(5)]


def module_cancel(a, b):
    """Split off the degreewise common part of two free modules."""
    common = FreeModule({k: min(a.get(k, 0), b.get(k, 0)) for k in set(a) & set(b)})
    return common, FreeModule(a) - common, FreeModule(b) - common
