"""Exact Laurent-polynomial arithmetic in q, Q, Q0 and structured fractions.

Elements of Z[q^{+-1}, Q^{+-1}, Q0^{+-1}] are dicts mapping exponent
triples to integer coefficients.  Fractions keep their denominators as
multisets of structured atoms (quantum integers, angle brackets, Qq^i
shifts) and cancel them by exact division only; there is no general
multivariate gcd.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

# A monomial is an exponent triple (eq, eQ, eQ0).
Monomial = tuple[int, int, int]


class NotDivisible(Exception):
    """Raised by exact_div when the quotient does not exist."""


class ZeroDenominator(Exception):
    """Raised when a denominator atom evaluates or substitutes to zero."""


class RingElem:
    """Laurent polynomial over Z in q, Q, Q0 with canonical term storage."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[Monomial, int] = terms if terms is not None else {}

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "RingElem":
        return RingElem({})

    @staticmethod
    def const(c: int) -> "RingElem":
        return RingElem({(0, 0, 0): c} if c else {})

    @staticmethod
    def mono(c: int, eq: int = 0, eQ: int = 0, eQ0: int = 0) -> "RingElem":
        return RingElem({(eq, eQ, eQ0): c} if c else {})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "RingElem") -> "RingElem":
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return RingElem(out)

    def __neg__(self) -> "RingElem":
        return RingElem({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "RingElem") -> "RingElem":
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) - c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return RingElem(out)

    def __mul__(self, other: "RingElem") -> "RingElem":
        if not self.terms or not other.terms:
            return RingElem({})
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict[Monomial, int] = {}
        for (e1, f1, g1), c1 in a.items():
            for (e2, f2, g2), c2 in b.items():
                m = (e1 + e2, f1 + f2, g1 + g2)
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    del out[m]
        return RingElem(out)

    def scale(self, c: int) -> "RingElem":
        if c == 0:
            return RingElem({})
        return RingElem({m: c * v for m, v in self.terms.items()})

    def int_pow(self, n: int) -> "RingElem":
        if n < 0:
            raise ValueError("negative power of a RingElem")
        out = RingElem.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, RingElem) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- structure -----------------------------------------------------

    def canonical_items(self):
        """Terms sorted lexicographically on (eq, eQ, eQ0)."""
        return sorted(self.terms.items())

    def leading(self) -> tuple[Monomial, int]:
        """Lex-largest term; the polynomial must be nonzero."""
        m = max(self.terms)
        return m, self.terms[m]

    def bar(self) -> "RingElem":
        """Involution q -> 1/q, Q -> 1/Q, Q0 -> 1/Q0."""
        return RingElem({(-e, -f, -g): c for (e, f, g), c in self.terms.items()})

    def subst_Q(self, M: int) -> "RingElem":
        """Substitute Q -> q^M."""
        out: dict[Monomial, int] = {}
        for (e, f, g), c in self.terms.items():
            m = (e + M * f, 0, g)
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                del out[m]
        return RingElem(out)

    def subst_Q0(self, N: int) -> "RingElem":
        """Substitute Q0 -> q^{1-N} Q^{-1} (the integrable condition)."""
        out: dict[Monomial, int] = {}
        for (e, f, g), c in self.terms.items():
            m = (e + (1 - N) * g, f - g, 0)
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                del out[m]
        return RingElem(out)

    def evaluate(self, p: "SpecPoint") -> Fraction:
        total = Fraction(0)
        for (e, f, g), c in self.terms.items():
            total += c * p.q**e * p.Q**f * p.Q0**g
        return total

    def coeffs_nonneg(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def supported_on(self, q: str = "any", Q: str = "any", Q0: str = "any") -> bool:
        """True iff every exponent satisfies the given constraint per variable.

        Constraints: 'any', 'nonneg', 'nonpos', 'zero'.
        """

        def ok(e: int, mode: str) -> bool:
            if mode == "any":
                return True
            if mode == "nonneg":
                return e >= 0
            if mode == "nonpos":
                return e <= 0
            if mode == "zero":
                return e == 0
            raise ValueError(mode)

        return all(
            ok(e, q) and ok(f, Q) and ok(g, Q0) for (e, f, g) in self.terms
        )

    def max_q_degree(self) -> int:
        return max(e for (e, _, _) in self.terms)

    # -- serialization ---------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (e, f, g), c in self.canonical_items():
            factors = []
            if c != 1 or (e == 0 and f == 0 and g == 0):
                factors.append(str(c) if c != -1 else "-1")
            for name, expo in (("q", e), ("Q", f), ("Q0", g)):
                if expo:
                    factors.append(f"{name}^{expo}" if expo != 1 else name)
            parts.append("*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    def to_json_terms(self) -> list:
        return [[e, f, g, str(c)] for (e, f, g), c in self.canonical_items()]

    @staticmethod
    def from_json_terms(data) -> "RingElem":
        return RingElem({(e, f, g): int(c) for e, f, g, c in data})

    def __repr__(self):
        return f"RingElem({self.to_text()})"


ZERO = RingElem.zero()
ONE = RingElem.const(1)


def is_positivity_class(a: RingElem, variables: str) -> bool:
    """Membership in N[...] classes named by the paper.

    variables is one of 'q' (= N[q,1/q]), 'qQ+' (= N[q,1/q,Q]) or
    'qQ' (= N[q,1/q,Q,1/Q]); Q0 never appears in these claims.
    """
    if not a.coeffs_nonneg():
        return False
    if variables == "q":
        return a.supported_on(Q="zero", Q0="zero")
    if variables == "qQ+":
        return a.supported_on(Q="nonneg", Q0="zero")
    if variables == "qQ":
        return a.supported_on(Q0="zero")
    raise ValueError(variables)


# -- named elements ------------------------------------------------------


@lru_cache(maxsize=None)
def qint(n: int) -> RingElem:
    """Quantum integer [n]; [-n] = -[n]."""
    if n == 0:
        return RingElem({})
    if n < 0:
        return RingElem({(n + 1 + 2 * i, 0, 0): -1 for i in range(-n)})
    return RingElem({(n - 1 - 2 * i, 0, 0): 1 for i in range(n)})


@lru_cache(maxsize=None)
def qfact(n: int) -> RingElem:
    if n < 0:
        raise ValueError("negative factorial")
    if n == 0:
        return ONE
    return qfact(n - 1) * qint(n)


def qbinom(n: int, m: int) -> RingElem:
    if m < 0 or m > n:
        return ZERO
    num = qfact(n)
    den = qfact(n - m) * qfact(m)
    return exact_div(num, den)


def angle(k: int) -> RingElem:
    """<k> = q^k + q^{-k}; <0> = 2."""
    if k == 0:
        return RingElem.const(2)
    return RingElem({(k, 0, 0): 1, (-k, 0, 0): 1})


def qshift(i: int) -> RingElem:
    """Q q^i + Q^{-1} q^{-i}."""
    return RingElem({(i, 1, 0): 1, (-i, -1, 0): 1})


def dangle(k: int) -> RingElem:
    """<<k>> = Q q^{-k} + Q^{-1} q^k."""
    return qshift(-k)


def qdiff() -> RingElem:
    """q - q^{-1}."""
    return RingElem({(1, 0, 0): 1, (-1, 0, 0): -1})


# -- exact division --------------------------------------------------------


def exact_div(a: RingElem, b: RingElem) -> RingElem:
    """Quotient a / b when it exists; raises NotDivisible otherwise."""
    if not b.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a.terms:
        return ZERO
    lead_b, cb = b.leading()
    rem = RingElem(dict(a.terms))
    quot: dict[Monomial, int] = {}
    # A true quotient's support fits in the Minkowski difference of the
    # exponent boxes, so its term count is bounded by the box volume of a;
    # anything running longer cannot be an exact division.
    limit = 2
    for axis in range(3):
        exps = [m[axis] for m in a.terms]
        limit *= max(exps) - min(exps) + 1
    for _ in range(limit):
        if not rem.terms:
            return RingElem(quot)
        lead_r, cr = rem.leading()
        if cr % cb:
            raise NotDivisible(f"coefficient {cr} not divisible by {cb}")
        m = (lead_r[0] - lead_b[0], lead_r[1] - lead_b[1], lead_r[2] - lead_b[2])
        c = cr // cb
        quot[m] = quot.get(m, 0) + c
        rem = rem - b * RingElem.mono(c, *m)
    raise NotDivisible("no exact quotient found")


def try_div(a: RingElem, b: RingElem):
    try:
        return exact_div(a, b)
    except NotDivisible:
        return None


# -- specialization ---------------------------------------------------------


class SpecPoint:
    """Assignment of nonzero rationals to q, Q, Q0."""

    __slots__ = ("q", "Q", "Q0")

    def __init__(self, q, Q, Q0=1):
        self.q = Fraction(q)
        self.Q = Fraction(Q)
        self.Q0 = Fraction(Q0)
        if not (self.q and self.Q and self.Q0):
            raise ValueError("spec point values must be nonzero")

    def __repr__(self):
        return f"SpecPoint(q={self.q}, Q={self.Q}, Q0={self.Q0})"


# -- denominator atoms -------------------------------------------------------
# An atom is a hashable tag: ("qint", n), ("angle", k), ("qshift", i),
# ("qdiff",) or ("raw", RingElem).  Each expands to a nonzero RingElem.


def atom_expand(atom) -> RingElem:
    kind = atom[0]
    if kind == "qint":
        return qint(atom[1])
    if kind == "angle":
        return angle(atom[1])
    if kind == "qshift":
        return qshift(atom[1])
    if kind == "qdiff":
        return qdiff()
    if kind == "raw":
        return atom[1]
    raise ValueError(atom)


def atom_eval(atom, p: SpecPoint) -> Fraction:
    v = atom_expand(atom).evaluate(p)
    if v == 0:
        raise ZeroDenominator(f"atom {atom} vanishes at {p}")
    return v


def _atom_key(atom):
    kind = atom[0]
    if kind == "raw":
        return (kind, tuple(sorted(atom[1].terms.items())))
    return atom


def _atom_text(atom) -> str:
    kind = atom[0]
    if kind == "qint":
        return f"[{atom[1]}]"
    if kind == "angle":
        return f"<{atom[1]}>"
    if kind == "qshift":
        return f"(Q*q^{atom[1]}+Q^-1*q^-{atom[1]})"
    if kind == "qdiff":
        return "(q-q^-1)"
    return atom[1].to_text()


def _merge_dens(a: tuple, b: tuple):
    """Least common multiset of atoms; returns (union, a_missing, b_missing)."""
    from collections import Counter

    ca, cb = Counter(a), Counter(b)
    union = ca | cb
    amiss = list((union - ca).elements())
    bmiss = list((union - cb).elements())
    common = list(union.elements())
    return common, amiss, bmiss


class RatioElem:
    """num / product-of-atoms with opportunistic exact cancellation."""

    __slots__ = ("num", "den")

    def __init__(self, num: RingElem, den=(), reduce: bool = True):
        self.num = num
        self.den = tuple(sorted(den, key=_atom_key))
        if reduce and self.den:
            self._reduce()

    def _reduce(self):
        if not self.num.terms:
            self.den = ()
            return
        keep = []
        num = self.num
        for atom in self.den:
            q = try_div(num, atom_expand(atom))
            if q is None:
                keep.append(atom)
            else:
                num = q
        self.num = num
        self.den = tuple(keep)

    # -- conversions ----------------------------------------------------

    @staticmethod
    def from_ring(a: RingElem) -> "RatioElem":
        return RatioElem(a, (), reduce=False)

    @staticmethod
    def from_int(c: int) -> "RatioElem":
        return RatioElem(RingElem.const(c), (), reduce=False)

    def is_zero(self) -> bool:
        return not self.num.terms

    def __bool__(self):
        return bool(self.num.terms)

    def as_ring(self) -> RingElem:
        """The element as a Laurent polynomial; its denominator must clear."""
        if not self.den:
            return self.num
        num = self.num
        for atom in self.den:
            num = exact_div(num, atom_expand(atom))
        return num

    def is_polynomial(self) -> bool:
        try:
            self.as_ring()
            return True
        except NotDivisible:
            return False

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: "RatioElem") -> "RatioElem":
        if not self.den and not other.den:
            return RatioElem(self.num + other.num, (), reduce=False)
        if self.den == other.den:
            return RatioElem(self.num + other.num, self.den, reduce=False)
        common, a_missing, b_missing = _merge_dens(self.den, other.den)
        a = self.num
        for atom in a_missing:
            a = a * atom_expand(atom)
        b = other.num
        for atom in b_missing:
            b = b * atom_expand(atom)
        return RatioElem(a + b, common, reduce=False)

    def __neg__(self) -> "RatioElem":
        return RatioElem(-self.num, self.den, reduce=False)

    def __sub__(self, other: "RatioElem") -> "RatioElem":
        return self + (-other)

    def __mul__(self, other: "RatioElem") -> "RatioElem":
        if not self.num.terms or not other.num.terms:
            return RatioElem(ZERO, (), reduce=False)
        return RatioElem(self.num * other.num, self.den + other.den, reduce=False)

    def scale(self, c: int) -> "RatioElem":
        return RatioElem(self.num.scale(c), self.den, reduce=False)

    def mul_ring(self, a: RingElem) -> "RatioElem":
        if not a.terms or not self.num.terms:
            return RatioElem(ZERO, (), reduce=False)
        return RatioElem(self.num * a, self.den, reduce=False)

    def div_atom(self, atom) -> "RatioElem":
        return RatioElem(self.num, self.den + (atom,), reduce=False)

    def int_pow(self, n: int) -> "RatioElem":
        out = RatioElem.from_int(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatioElem):
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        a = self.num
        for atom in other.den:
            a = a * atom_expand(atom)
        b = other.num
        for atom in self.den:
            b = b * atom_expand(atom)
        return a == b

    def __hash__(self):
        # Hash on the reduced pair; equal reduced forms hash equally, and
        # cross-multiplied equality of distinct forms is rare in our use.
        return hash((self.num, self.den))

    # -- maps -----------------------------------------------------------

    def bar(self) -> "RatioElem":
        num = self.num.bar()
        den = []
        for atom in self.den:
            exp = atom_expand(atom)
            b = exp.bar()
            if b == exp:
                den.append(atom)
            elif b == -exp:
                num = -num
                den.append(atom)
            else:
                den.append(("raw", b))
        return RatioElem(num, den, reduce=False)

    def subst_Q(self, M: int) -> "RatioElem":
        num = self.num.subst_Q(M)
        den = []
        for atom in self.den:
            e = atom_expand(atom).subst_Q(M)
            if not e.terms:
                raise ZeroDenominator(f"atom {atom} vanishes under Q -> q^{M}")
            den.append(("raw", e))
        return RatioElem(num, den)

    def subst_Q0(self, N: int) -> "RatioElem":
        num = self.num.subst_Q0(N)
        den = []
        for atom in self.den:
            e = atom_expand(atom).subst_Q0(N)
            if not e.terms:
                raise ZeroDenominator(f"atom {atom} vanishes under the integrable condition")
            den.append(("raw", e))
        return RatioElem(num, den)

    def evaluate(self, p: SpecPoint) -> Fraction:
        v = self.num.evaluate(p)
        for atom in self.den:
            v /= atom_eval(atom, p)
        return v

    def to_text(self) -> str:
        if not self.den:
            return self.num.to_text()
        dens = ", ".join(_atom_text(a) for a in self.den)
        return f"({self.num.to_text()}) / ({dens})"

    def __repr__(self):
        return f"RatioElem({self.to_text()})"


R_ZERO = RatioElem.from_int(0)
R_ONE = RatioElem.from_int(1)


def qQ_bracket(n: int) -> RatioElem:
    """[Q; n] = (Q q^n - Q^{-1} q^{-n}) / (q - q^{-1})."""
    num = RingElem({(n, 1, 0): 1, (-n, -1, 0): -1})
    return RatioElem(num, (("qdiff",),), reduce=False)
