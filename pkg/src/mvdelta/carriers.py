"""Concrete MV-algebra carriers and ideal/radical computations.

A *carrier* bundles an element domain with the MV operations; the term
evaluator and every higher-level routine talk to carriers through the
small interface of :class:`Carrier` (zero, oplus, neg, equality, order,
optional constants and eventually-constant delta).

Provided here: the unit interval of exact rationals, finite Lukasiewicz
chains ``{0, 1/n, ..., 1}``, finite direct products, and Chang's
algebra, realised as the unit interval of the lexicographic group Z x Z
with unit (1, 0).  Elements (0, k) with k >= 1 are the infinitesimals.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction

from .rationals import Q01, ZERO, parse_q01

__all__ = [
    "CarrierError",
    "CarrierMismatch",
    "DeltaUnsupported",
    "ConstUnsupported",
    "Carrier",
    "UnitInterval",
    "FiniteChain",
    "ProductAlg",
    "ChangElem",
    "ChangAlgebra",
    "Q01_CARRIER",
    "CHANG",
    "carrier_from_spec",
    "is_ideal",
    "principal_ideal",
    "enumerate_ideals",
    "maximal_ideals",
    "Radical",
    "radical",
    "InfinitesimalCertificate",
    "is_infinitesimal",
    "halving_witness",
]


class CarrierError(Exception):
    pass


class CarrierMismatch(CarrierError):
    pass


class DeltaUnsupported(CarrierError):
    pass


class ConstUnsupported(CarrierError):
    pass


class Carrier(ABC):
    """Abstract MV-algebra carrier.

    Subclasses implement zero/oplus/neg and may override const, delta,
    leq, and the finite-enumeration hooks.  The derived connectives are
    defined once here from oplus and neg.
    """

    @property
    @abstractmethod
    def spec(self) -> str:
        """Canonical spec string, e.g. ``chain:2`` or ``prod(chain:2,chain:3)``."""

    @abstractmethod
    def zero(self):
        ...

    @abstractmethod
    def oplus(self, x, y):
        ...

    @abstractmethod
    def neg(self, x):
        ...

    def one(self):
        return self.neg(self.zero())

    def eq(self, x, y) -> bool:
        return x == y

    def leq(self, x, y) -> bool:
        # x <= y  iff  neg(x) oplus y = 1
        return self.eq(self.oplus(self.neg(x), y), self.one())

    def const(self, q: Q01):
        raise ConstUnsupported(f"carrier {self.spec} has no element for constant {q}")

    def delta(self, prefix, tail):
        raise DeltaUnsupported(f"carrier {self.spec} does not support delta")

    # Derived connectives.

    def odot(self, x, y):
        return self.neg(self.oplus(self.neg(x), self.neg(y)))

    def ominus(self, x, y):
        return self.odot(x, self.neg(y))

    def dist(self, x, y):
        return self.oplus(self.ominus(x, y), self.ominus(y, x))

    def join(self, x, y):
        return self.oplus(self.neg(self.oplus(self.neg(x), y)), y)

    def meet(self, x, y):
        return self.neg(self.join(self.neg(x), self.neg(y)))

    def nfold(self, n: int, x):
        if n < 1:
            raise ValueError(f"nfold requires n >= 1, got {n}")
        out = x
        for _ in range(n - 1):
            out = self.oplus(out, x)
        return out

    def halve(self, x):
        """The derived halving operation delta(x, 0, 0, ...)."""
        return self.delta([x], self.zero())

    def halve_n(self, n: int, x):
        out = x
        for _ in range(n):
            out = self.halve(out)
        return out

    def apply(self, op: str, *args):
        """Dispatch an operation by grammar name."""
        table = {
            "oplus": self.oplus,
            "neg": self.neg,
            "odot": self.odot,
            "ominus": self.ominus,
            "dist": self.dist,
            "join": self.join,
            "meet": self.meet,
            "nfold": self.nfold,
        }
        try:
            fn = table[op]
        except KeyError:
            raise ValueError(f"unknown operation {op!r}") from None
        return fn(*args)

    # Finite-enumeration hooks.

    def is_finite(self) -> bool:
        return False

    def elements(self) -> list:
        raise CarrierError(f"carrier {self.spec} is not enumerable")

    # Element text I/O for reports and the CLI.

    def format_element(self, x) -> str:
        return str(x)

    def parse_element(self, text: str):
        raise CarrierError(f"carrier {self.spec} has no element literal syntax")

    def __repr__(self):
        return f"<carrier {self.spec}>"


@dataclass(frozen=True)
class UnitInterval(Carrier):
    """The standard MV-algebra: exact rationals in [0, 1]."""

    @property
    def spec(self) -> str:
        return "q01"

    def zero(self) -> Q01:
        return ZERO

    def oplus(self, x: Q01, y: Q01) -> Q01:
        return Q01(min(x + y, 1))

    def neg(self, x: Q01) -> Q01:
        return Q01(1 - x)

    def leq(self, x: Q01, y: Q01) -> bool:
        return x <= y

    def const(self, q: Q01) -> Q01:
        return q

    def delta(self, prefix, tail) -> Q01:
        total = Fraction(0)
        weight = Fraction(1)
        for p in prefix:
            weight /= 2
            total += p * weight
        total += tail * weight
        return Q01(total)

    def format_element(self, x) -> str:
        return str(x)

    def parse_element(self, text: str) -> Q01:
        return parse_q01(text)


@dataclass(frozen=True)
class FiniteChain(Carrier):
    """The chain {0, 1/n, ..., 1}; elements are stored as integers 0..n.

    ``n = 0`` gives the trivial (one-element) algebra with 0 = 1.
    """

    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"chain denominator must be >= 0, got {self.n}")

    @property
    def spec(self) -> str:
        return f"chain:{self.n}"

    def _check(self, x):
        if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x <= self.n:
            raise CarrierMismatch(f"{x!r} is not an element of {self.spec}")
        return x

    def zero(self) -> int:
        return 0

    def oplus(self, x: int, y: int) -> int:
        self._check(x), self._check(y)
        return min(x + y, self.n)

    def neg(self, x: int) -> int:
        self._check(x)
        return self.n - x

    def leq(self, x: int, y: int) -> bool:
        self._check(x), self._check(y)
        return x <= y

    def const(self, q: Q01) -> int:
        if self.n == 0:
            return 0
        if self.n % q.denominator != 0:
            raise ConstUnsupported(f"constant {q} is not a multiple of 1/{self.n}")
        return q.numerator * (self.n // q.denominator)

    def is_finite(self) -> bool:
        return True

    def elements(self) -> list[int]:
        return list(range(self.n + 1))

    def format_element(self, x) -> str:
        self._check(x)
        if self.n == 0:
            return "0"
        return str(Fraction(x, self.n))

    def parse_element(self, text: str) -> int:
        q = parse_q01(text)
        return self._check(self.const(q)) if self.n else 0


@dataclass(frozen=True)
class ProductAlg(Carrier):
    """Finite direct product; elements are tuples, all operations componentwise."""

    factors: tuple[Carrier, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("product needs at least one factor")

    @property
    def spec(self) -> str:
        return "prod(" + ",".join(f.spec for f in self.factors) + ")"

    def _check(self, x):
        if not isinstance(x, tuple) or len(x) != len(self.factors):
            raise CarrierMismatch(f"{x!r} is not an element of {self.spec}")
        return x

    def zero(self) -> tuple:
        return tuple(f.zero() for f in self.factors)

    def oplus(self, x, y) -> tuple:
        self._check(x), self._check(y)
        return tuple(f.oplus(a, b) for f, a, b in zip(self.factors, x, y))

    def neg(self, x) -> tuple:
        self._check(x)
        return tuple(f.neg(a) for f, a in zip(self.factors, x))

    def eq(self, x, y) -> bool:
        self._check(x), self._check(y)
        return all(f.eq(a, b) for f, a, b in zip(self.factors, x, y))

    def leq(self, x, y) -> bool:
        self._check(x), self._check(y)
        return all(f.leq(a, b) for f, a, b in zip(self.factors, x, y))

    def const(self, q: Q01) -> tuple:
        return tuple(f.const(q) for f in self.factors)

    def delta(self, prefix, tail) -> tuple:
        for p in prefix:
            self._check(p)
        self._check(tail)
        return tuple(
            f.delta([p[i] for p in prefix], tail[i]) for i, f in enumerate(self.factors)
        )

    def is_finite(self) -> bool:
        return all(f.is_finite() for f in self.factors)

    def elements(self) -> list[tuple]:
        return [tuple(t) for t in itertools.product(*(f.elements() for f in self.factors))]

    def format_element(self, x) -> str:
        self._check(x)
        return "(" + ", ".join(f.format_element(a) for f, a in zip(self.factors, x)) + ")"

    def parse_element(self, text: str) -> tuple:
        text = text.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError(f"product element must be a tuple literal, got {text!r}")
        parts = _split_top_level(text[1:-1])
        if len(parts) != len(self.factors):
            raise ValueError(
                f"expected {len(self.factors)} components, got {len(parts)} in {text!r}"
            )
        return tuple(f.parse_element(p.strip()) for f, p in zip(self.factors, parts))


@dataclass(frozen=True, order=True)
class ChangElem:
    """Element (level, offset) of Chang's algebra, lexicographically ordered.

    Level 0 holds 0 and the infinitesimals (0, k) with k >= 1; level 1
    holds the co-infinitesimals (1, -k) up to the unit (1, 0).
    """

    level: int
    offset: int

    def __post_init__(self):
        if self.level == 0:
            if self.offset < 0:
                raise ValueError(f"level-0 element needs offset >= 0, got {self.offset}")
        elif self.level == 1:
            if self.offset > 0:
                raise ValueError(f"level-1 element needs offset <= 0, got {self.offset}")
        else:
            raise ValueError(f"level must be 0 or 1, got {self.level}")

    def __str__(self):
        return f"({self.level},{self.offset})"


@dataclass(frozen=True)
class ChangAlgebra(Carrier):
    """Chang's algebra: the unit interval of Z x_lex Z with unit (1, 0).

    Addition is componentwise and truncated at the unit in the
    lexicographic order; negation is unit-minus.
    """

    @property
    def spec(self) -> str:
        return "chang"

    def _check(self, x) -> ChangElem:
        if not isinstance(x, ChangElem):
            raise CarrierMismatch(f"{x!r} is not an element of {self.spec}")
        return x

    def zero(self) -> ChangElem:
        return ChangElem(0, 0)

    def one(self) -> ChangElem:
        return ChangElem(1, 0)

    def oplus(self, x: ChangElem, y: ChangElem) -> ChangElem:
        self._check(x), self._check(y)
        level = x.level + y.level
        offset = x.offset + y.offset
        if level > 1 or (level == 1 and offset > 0):
            return ChangElem(1, 0)
        return ChangElem(level, offset)

    def neg(self, x: ChangElem) -> ChangElem:
        self._check(x)
        return ChangElem(1 - x.level, -x.offset)

    def leq(self, x: ChangElem, y: ChangElem) -> bool:
        self._check(x), self._check(y)
        return (x.level, x.offset) <= (y.level, y.offset)

    def const(self, q: Q01) -> ChangElem:
        if q == 0:
            return ChangElem(0, 0)
        if q == 1:
            return ChangElem(1, 0)
        raise ConstUnsupported(f"Chang's algebra has no element for constant {q}")

    def format_element(self, x) -> str:
        return str(self._check(x))

    def parse_element(self, text: str) -> ChangElem:
        text = text.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError(f"Chang element must look like (level,offset), got {text!r}")
        parts = text[1:-1].split(",")
        if len(parts) != 2:
            raise ValueError(f"Chang element must look like (level,offset), got {text!r}")
        return ChangElem(int(parts[0]), int(parts[1]))


Q01_CARRIER = UnitInterval()
CHANG = ChangAlgebra()


def _split_top_level(text: str) -> list[str]:
    """Split on commas that are not nested inside parentheses."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {text!r}")
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    if depth != 0:
        raise ValueError(f"unbalanced parentheses in {text!r}")
    last = text[start:]
    if last.strip() or parts:
        parts.append(last)
    return parts


def carrier_from_spec(spec: str) -> Carrier:
    """Build a carrier from a spec string.

    Accepted: ``q01``, ``chain:n``, ``chang``, ``prod(spec, ...)``, ``pl``.
    """
    spec = spec.strip()
    if spec == "q01":
        return Q01_CARRIER
    if spec == "chang":
        return CHANG
    if spec == "pl":
        from .plfunc import PL_CARRIER

        return PL_CARRIER
    if spec.startswith("chain:"):
        try:
            n = int(spec[len("chain:"):])
        except ValueError:
            raise ValueError(f"bad chain spec {spec!r}") from None
        return FiniteChain(n)
    if spec.startswith("prod(") and spec.endswith(")"):
        inner = _split_top_level(spec[len("prod(") : -1])
        if not inner:
            raise ValueError("empty product spec")
        return ProductAlg(tuple(carrier_from_spec(p) for p in inner))
    raise ValueError(f"unknown carrier spec {spec!r}")


# --- Ideals, radical, infinitesimals ---------------------------------------


def is_ideal(carrier: Carrier, subset: frozenset) -> bool:
    """Exact check of the three defining closure properties."""
    elems = carrier.elements()
    if carrier.zero() not in subset:
        return False
    for x in subset:
        for y in elems:
            if carrier.leq(y, x) and y not in subset:
                return False
        for y in subset:
            if carrier.oplus(x, y) not in subset:
                return False
    return True


def _stable_multiple(carrier: Carrier, a):
    """The eventually constant value of the iterated sums a, 2a, 3a, ..."""
    s = a
    while True:
        t = carrier.oplus(s, a)
        if carrier.eq(t, s):
            return s
        s = t


def principal_ideal(carrier: Carrier, a) -> frozenset:
    """Smallest ideal containing a: the down-set of the stable multiple of a."""
    top = _stable_multiple(carrier, a)
    return frozenset(x for x in carrier.elements() if carrier.leq(x, top))


def enumerate_ideals(carrier: Carrier) -> list[frozenset]:
    """All ideals of a finite carrier, each verified against the definition.

    In a finite MV-algebra every ideal is the down-set of the stable
    multiple of one of its elements, so ranging over principal ideals is
    exhaustive.
    """
    if not carrier.is_finite():
        raise CarrierError(f"ideal enumeration needs a finite carrier, not {carrier.spec}")
    seen = {principal_ideal(carrier, a) for a in carrier.elements()}
    for ideal in seen:
        if not is_ideal(carrier, ideal):
            raise AssertionError(f"generated set is not an ideal on {carrier.spec}")
    return sorted(seen, key=lambda s: (len(s), sorted(map(repr, s))))


def maximal_ideals(carrier: Carrier) -> list[frozenset]:
    ideals = enumerate_ideals(carrier)
    size = len(carrier.elements())
    proper = [i for i in ideals if len(i) < size]
    return [
        i
        for i in proper
        if not any(i < j for j in proper if i is not j)
    ]


@dataclass(frozen=True)
class Radical:
    """Radical ideal description: an explicit set or a closed form."""

    carrier_spec: str
    kind: str  # "finite" or "closed-form"
    elements: frozenset | None
    description: str

    def contains(self, carrier: Carrier, x) -> bool:
        if self.elements is not None:
            return x in self.elements
        if self.carrier_spec == "chang":
            return isinstance(x, ChangElem) and x.level == 0
        if self.carrier_spec == "pl":
            return carrier.eq(x, carrier.zero())
        raise CarrierError(f"no membership test for radical of {self.carrier_spec}")


def radical(carrier: Carrier) -> Radical:
    """Radical ideal: intersection of maximal ideals.

    Finite carriers are computed exactly and cross-checked against the
    bounded-multiple characterisation ``n*x <= neg(x) for all n``, which
    stabilises within the carrier size.  Chang's algebra and the
    piecewise-linear carrier use closed forms.
    """
    if isinstance(carrier, ChangAlgebra):
        return Radical("chang", "closed-form", None, "{(0,k) : k >= 0}")
    if carrier.spec == "pl":
        return Radical("pl", "closed-form", None, "{0} (semisimple)")
    if not carrier.is_finite():
        raise CarrierError(f"no radical computation for carrier {carrier.spec}")
    maxes = maximal_ideals(carrier)
    elems = carrier.elements()
    if maxes:
        inter = frozenset(elems).intersection(*maxes)
    else:
        # Trivial algebra: the only ideal is the whole algebra {0} with 0 = 1.
        inter = frozenset(elems)
    bound = len(elems)
    by_multiples = frozenset(
        x
        for x in elems
        if all(carrier.leq(carrier.nfold(n, x), carrier.neg(x)) for n in range(1, bound + 1))
    )
    if inter != by_multiples:
        raise AssertionError(
            f"radical cross-check failed on {carrier.spec}: "
            f"ideal intersection {inter} vs bounded multiples {by_multiples}"
        )
    description = "{" + ", ".join(sorted(carrier.format_element(x) for x in inter)) + "}"
    return Radical(carrier.spec, "finite", inter, description)


@dataclass(frozen=True)
class InfinitesimalCertificate:
    verdict: bool
    reason: str
    failing_n: int | None = None


def is_infinitesimal(carrier: Carrier, x, bound: int | None = None) -> InfinitesimalCertificate:
    """Decide whether x is infinitesimal (nonzero with n*x <= neg(x) for all n).

    Exact for Chang's algebra (closed form, bound ignored) and for finite
    carriers (the multiples stabilise within the carrier size).
    """
    if isinstance(carrier, ChangAlgebra):
        carrier._check(x)
        if x == ChangElem(0, 0):
            return InfinitesimalCertificate(False, "zero is not infinitesimal")
        if x.level == 0:
            return InfinitesimalCertificate(
                True, "closed form: every multiple stays at level 0, below neg(x) at level 1"
            )
        return InfinitesimalCertificate(False, "x exceeds neg(x) already at n = 1", failing_n=1)
    if not carrier.is_finite():
        raise CarrierError(f"no exact infinitesimal test for carrier {carrier.spec}")
    if carrier.eq(x, carrier.zero()):
        return InfinitesimalCertificate(False, "zero is not infinitesimal")
    limit = bound if bound is not None else len(carrier.elements())
    negx = carrier.neg(x)
    s = x
    for n in range(1, limit + 1):
        if not carrier.leq(s, negx):
            return InfinitesimalCertificate(
                False, f"{n}-fold sum exceeds neg(x)", failing_n=n
            )
        s = carrier.oplus(s, x)
    return InfinitesimalCertificate(
        True, f"multiples stabilise below neg(x) within the carrier bound {limit}"
    )


def halving_witness(x: ChangElem) -> ChangElem | None:
    """Exact solve for y with y oplus y = x and y odot y = 0 in Chang's algebra.

    Level-0 candidates (0, k) always satisfy y odot y = 0 and double to
    (0, 2k); level-1 candidates never satisfy y odot y = 0.  Hence only
    even level-0 elements admit a witness.
    """
    CHANG._check(x)
    if x.level == 0 and x.offset % 2 == 0:
        y = ChangElem(0, x.offset // 2)
    else:
        return None
    if CHANG.oplus(y, y) != x or CHANG.odot(y, y) != CHANG.zero():
        raise AssertionError(f"halving witness check failed for {x}")
    return y
