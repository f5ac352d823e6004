"""Signatures, area invariants, Riemann-Hurwitz and the sphere-group catalog."""
from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .errors import DomainError


@dataclass(frozen=True)
class Period:
    # coeff * prod(syms); syms == () means a plain integer, parabolic means inf
    coeff: int = 1
    syms: tuple = ()
    parabolic: bool = False

    def __post_init__(self):
        if self.parabolic:
            return
        if self.coeff < 1:
            raise DomainError(f"period coefficient must be positive, got {self.coeff}")
        object.__setattr__(self, "syms", tuple(sorted(self.syms)))

    @staticmethod
    def inf():
        return Period(1, (), True)

    @property
    def is_finite(self):
        return not self.parabolic and not self.syms

    @property
    def is_parametric(self):
        return bool(self.syms)

    @property
    def value(self):
        if not self.is_finite:
            raise DomainError("symbolic signature: evaluate parameters first")
        return self.coeff

    def symbols(self):
        return set(self.syms)

    def times(self, other):
        if isinstance(other, int):
            return Period(self.coeff * other, self.syms)
        return Period(self.coeff * other.coeff, self.syms + other.syms)

    def divides(self, other):
        """Symbolic divisibility valid for every value of the parameters."""
        if self.parabolic or other.parabolic:
            return False
        if other.coeff % self.coeff:
            return False
        need = Counter(self.syms)
        have = Counter(other.syms)
        return all(have[s] >= c for s, c in need.items())

    def divide(self, other):
        if not other.divides(self):
            raise DomainError(f"{other} does not divide {self}")
        rest = Counter(self.syms)
        rest.subtract(Counter(other.syms))
        return Period(self.coeff // other.coeff, tuple(rest.elements()))

    def substitute(self, sym, factor):
        """Replace every occurrence of sym by factor (a Period monomial)."""
        if self.parabolic or sym not in self.syms:
            return self
        out = Period(self.coeff, tuple(s for s in self.syms if s != sym))
        for _ in range(self.syms.count(sym)):
            out = out.times(factor)
        return out

    def evaluate(self, env):
        if self.parabolic:
            return self
        v = self.coeff
        for s in self.syms:
            if s not in env:
                raise DomainError(f"no value for parameter {s}")
            v *= env[s]
        return Period(v)

    def sort_key(self):
        if self.parabolic:
            return (2, (), 0)
        if not self.syms:
            return (0, (), self.coeff)
        return (1, self.syms, self.coeff)

    def __str__(self):
        if self.parabolic:
            return "inf"
        if not self.syms:
            return str(self.coeff)
        body = "*".join(self.syms)
        return body if self.coeff == 1 else f"{self.coeff}*{body}"

    def __repr__(self):
        return f"Period({self})"


_SYM = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


def parse_period(text) -> Period:
    if isinstance(text, Period):
        return text
    if isinstance(text, int):
        return Period(text)
    t = str(text).strip().replace(" ", "")
    if t in ("inf", "oo", "∞"):
        return Period.inf()
    coeff = 1
    syms = []
    for part in t.split("*"):
        if part.isdigit():
            coeff *= int(part)
        elif _SYM.match(part):
            syms.append(part)
        else:
            raise DomainError(f"cannot parse period {text!r}")
    return Period(coeff, tuple(syms))


def as_period(x) -> Period:
    return x if isinstance(x, Period) else parse_period(x)


class Signature:
    """Orbit genus plus an ordered tuple of periods; periods equal to 1 are dropped.

    Equality ignores the order of the periods (same genus, same multiset).
    """

    __slots__ = ("genus", "periods")

    def __init__(self, periods=(), genus=0):
        ps = tuple(as_period(p) for p in periods)
        ps = tuple(p for p in ps if not (p.is_finite and p.coeff == 1))
        for p in ps:
            if p.is_finite and p.coeff < 2:
                raise DomainError(f"bad period {p}")
        if genus < 0:
            raise DomainError("orbit genus must be >= 0")
        object.__setattr__(self, "genus", int(genus))
        object.__setattr__(self, "periods", ps)

    def __setattr__(self, k, v):
        raise AttributeError("Signature is immutable")

    @classmethod
    def parse(cls, text):
        t = text.strip()
        if not (t.startswith("(") and t.endswith(")")):
            raise DomainError(f"signature must be parenthesised: {text!r}")
        body = t[1:-1].strip()
        genus = 0
        if ";" in body:
            g, body = body.split(";", 1)
            genus = int(g.strip())
        items = [s.strip() for s in body.split(",") if s.strip()]
        periods = []
        for it in items:
            if "^" in it:
                base, mult = it.split("^", 1)
                periods.extend([parse_period(base.strip("() "))] * int(mult))
            else:
                periods.append(parse_period(it))
        return cls(periods, genus)

    def __str__(self):
        inner = ",".join(str(p) for p in self.periods)
        if self.genus:
            return f"({self.genus}; {inner})" if inner else f"({self.genus};)"
        return f"({inner})"

    def compact(self):
        """Text form with runs collapsed, e.g. (2^3,11^6)."""
        runs = []
        for p in self.periods:
            if runs and runs[-1][0] == p:
                runs[-1][1] += 1
            else:
                runs.append([p, 1])
        inner = ",".join(str(p) if c == 1 else f"{p}^{c}" for p, c in runs)
        return f"({self.genus}; {inner})" if self.genus else f"({inner})"

    def __repr__(self):
        return f"Signature{self}"

    def canonical(self):
        return Signature(sorted(self.periods, key=Period.sort_key), self.genus)

    def _key(self):
        return (self.genus, tuple(sorted(self.periods, key=Period.sort_key)))

    def __eq__(self, other):
        return isinstance(other, Signature) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __len__(self):
        return len(self.periods)

    @property
    def is_concrete(self):
        return all(not p.is_parametric for p in self.periods)

    def symbols(self):
        out = set()
        for p in self.periods:
            out |= p.symbols()
        return out

    def values(self):
        return [p.value for p in self.periods]

    def evaluate(self, env):
        return Signature([p.evaluate(env) for p in self.periods], self.genus)

    def substitute(self, sym, factor):
        return Signature([p.substitute(sym, factor) for p in self.periods], self.genus)


def sig(text_or_periods, genus=0) -> Signature:
    if isinstance(text_or_periods, Signature):
        return text_or_periods
    if isinstance(text_or_periods, str):
        return Signature.parse(text_or_periods)
    return Signature(text_or_periods, genus)


# -- area invariants ---------------------------------------------------------

def mu(s) -> Fraction:
    s = sig(s)
    total = Fraction(2 * (s.genus - 1))
    for p in s.periods:
        if p.parabolic:
            total += 1
        elif p.is_parametric:
            raise DomainError("symbolic signature: evaluate parameters first")
        else:
            total += 1 - Fraction(1, p.coeff)
    return total


def is_hyperbolic(s) -> bool:
    return mu(s) > 0


def teichmuller_dim(s) -> int:
    s = sig(s)
    if s.is_concrete and not is_hyperbolic(s):
        raise DomainError(f"{s} is not hyperbolic")
    return 3 * (s.genus - 1) + len(s.periods)


def codimension(sub, sup) -> int:
    sub, sup = sig(sub), sig(sup)
    if sub.genus or sup.genus:
        raise DomainError("codimension is defined here for genus-0 pairs only")
    d = len(sub.periods) - len(sup.periods)
    if d < 0:
        raise DomainError("not a plausible inclusion")
    return d


def index_of_pair(sub, sup) -> Fraction:
    sub, sup = sig(sub), sig(sup)
    a, b = mu(sub), mu(sup)
    if a <= 0 or b <= 0:
        raise DomainError("index needs two hyperbolic signatures")
    return a / b


def riemann_hurwitz_genus(group_order, s) -> Fraction:
    """Genus of the surface with a group of this order acting with signature s."""
    return 1 + Fraction(group_order) * mu(s) / 2


# -- cyclic n-gonal curves ---------------------------------------------------

@dataclass(frozen=True)
class NGonalData:
    n: int
    exponents: tuple

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(p) for p in self.exponents))
        self.check()

    def check(self):
        n, ps = self.n, self.exponents
        if n < 2:
            raise DomainError("n must be at least 2")
        bad = [p for p in ps if not 0 < p < n]
        if bad:
            raise DomainError(f"exponents must satisfy 0 < p_i < n; offending {bad}")
        if sum(ps) % n:
            raise DomainError(f"n={n} does not divide the exponent sum {sum(ps)}")
        if math.gcd(n, *ps) != 1:
            raise DomainError(f"gcd(n, p_1..p_r) = {math.gcd(n, *ps)}, must be 1")


def ngonal_signature(data: NGonalData) -> Signature:
    return Signature([data.n // math.gcd(data.n, p) for p in data.exponents])


def ngonal_genus(data: NGonalData) -> int:
    n, ps = data.n, data.exponents
    num = 2 + (len(ps) - 2) * n - sum(math.gcd(n, p) for p in ps)
    if num % 2:
        raise AssertionError("n-gonal genus came out fractional")
    g = num // 2
    rh = riemann_hurwitz_genus(n, ngonal_signature(data))
    if rh != g:
        raise AssertionError(f"genus {g} disagrees with Riemann-Hurwitz {rh}")
    return g


# -- sphere groups -----------------------------------------------------------

_FIXED = {"A4": ((2, 3, 3), 12), "S4": ((2, 3, 4), 24), "A5": ((2, 3, 5), 60)}


@dataclass(frozen=True)
class SphericalGroup:
    family: str          # "C", "D", "A4", "S4", "A5"
    k: object = None     # int, Period (parametric) or None for A4/S4/A5

    def __post_init__(self):
        if self.family not in ("C", "D", "A4", "S4", "A5"):
            raise DomainError(f"unknown sphere group family {self.family}")
        if self.family in ("C", "D"):
            k = self.k
            if k is None or k == "k":
                k = Period(1, ("k",))
            elif isinstance(k, str):
                k = parse_period(k)
            if isinstance(k, Period) and k.is_finite:
                k = k.coeff
            if isinstance(k, int) and k < 2:
                raise DomainError("cyclic and dihedral families need k >= 2")
            object.__setattr__(self, "k", k)
        else:
            object.__setattr__(self, "k", None)

    @property
    def is_concrete(self):
        return not isinstance(self.k, Period)

    @property
    def order(self):
        if self.family in _FIXED:
            return _FIXED[self.family][1]
        mult = 1 if self.family == "C" else 2
        if isinstance(self.k, int):
            return mult * self.k
        return self.k.times(mult)

    def order_period(self) -> Period:
        o = self.order
        return o if isinstance(o, Period) else Period(o)

    def signature(self) -> Signature:
        if self.family in _FIXED:
            return Signature(_FIXED[self.family][0])
        if self.family == "C":
            return Signature([self.k, self.k])
        return Signature([2, 2, self.k])

    @property
    def label(self):
        if self.family in _FIXED:
            return self.family
        return f"{self.family}{self.k}" if self.is_concrete else f"{self.family}_{self.k}"

    def __str__(self):
        return self.label


def spherical_catalog():
    """The five sphere-group families with their signatures, in table order."""
    rows = [SphericalGroup("C"), SphericalGroup("D"),
            SphericalGroup("A4"), SphericalGroup("S4"), SphericalGroup("A5")]
    return [(g, g.signature()) for g in rows]


def sphere_group_of(periods):
    """Identify the finite sphere group with the given (concrete) signature, or None."""
    ps = sorted(as_period(p).value for p in periods if as_period(p) != Period(1))
    if len(ps) == 2 and ps[0] == ps[1] and ps[0] >= 2:
        return SphericalGroup("C", ps[0])
    if len(ps) != 3:
        return None
    if ps[0] == 2 and ps[1] == 2:
        return SphericalGroup("D", ps[2])
    for name, (t, _) in _FIXED.items():
        if tuple(ps) == t:
            return SphericalGroup(name)
    return None


def abelianization(K: SphericalGroup):
    """Abelian invariants of K, as a tuple of cyclic factor orders."""
    if K.family == "C":
        return (K.k,)
    if K.family == "D":
        if not K.is_concrete:
            raise DomainError("dihedral abelianization depends on the parity of k")
        return (2, 2) if K.k % 2 == 0 else (2,)
    return {"A4": (3,), "S4": (2,), "A5": ()}[K.family]


def lcm(*xs):
    return reduce(math.lcm, xs, 1)
