"""Exact coefficient rings: the integers, the rationals, and prime fields.

Matrix entries are plain Python ints over ``int`` and ``fp:p`` (residues kept
in 0..p-1), and ``fractions.Fraction`` over ``rat``.  All arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Ring:
    """Ring tag: kind is one of 'int', 'rat', 'fp' (with a prime p)."""

    __slots__ = ("kind", "p")

    def __init__(self, kind: str, p: int | None = None):
        if kind not in ("int", "rat", "fp"):
            raise ValueError(f"unknown ring kind {kind!r}")
        if kind == "fp":
            if p is None or not _is_prime(p):
                raise ValueError(f"fp ring needs a prime modulus, got {p!r}")
        elif p is not None:
            raise ValueError("modulus only allowed for fp rings")
        self.kind = kind
        self.p = p

    @property
    def is_field(self) -> bool:
        return self.kind != "int"

    def tag(self) -> str:
        return f"fp:{self.p}" if self.kind == "fp" else self.kind

    def __repr__(self):
        return f"Ring({self.tag()!r})"

    def __eq__(self, other):
        return isinstance(other, Ring) and self.kind == other.kind and self.p == other.p

    def __hash__(self):
        return hash((self.kind, self.p))

    # -- element arithmetic -------------------------------------------------

    def canon(self, x):
        """Canonical form of an entry (reduce mod p, promote to Fraction)."""
        if self.kind == "int":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"non-integer entry {x} over int")
                return int(x)
            return int(x)
        if self.kind == "rat":
            return x if isinstance(x, Fraction) else Fraction(x)
        return int(x) % self.p

    def zero(self):
        return Fraction(0) if self.kind == "rat" else 0

    def one(self):
        return Fraction(1) if self.kind == "rat" else 1

    def add(self, a, b):
        c = a + b
        return c % self.p if self.kind == "fp" else c

    def sub(self, a, b):
        c = a - b
        return c % self.p if self.kind == "fp" else c

    def mul(self, a, b):
        c = a * b
        return c % self.p if self.kind == "fp" else c

    def neg(self, a):
        return (-a) % self.p if self.kind == "fp" else -a

    def inv(self, a):
        if self.kind == "rat":
            return 1 / a
        if self.kind == "fp":
            a %= self.p
            if a == 0:
                raise ZeroDivisionError
            return pow(a, self.p - 2, self.p)
        raise ValueError("no division over int")

    def parse_entry(self, text: str):
        """Parse a matrix entry: an integer, or p/q over rat."""
        text = text.strip()
        if "/" in text:
            if self.kind != "rat":
                raise ValueError(f"fractional entry {text!r} over {self.tag()}")
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return self.canon(int(text))

    def format_entry(self, x) -> str:
        if isinstance(x, Fraction) and x.denominator != 1:
            return f"{x.numerator}/{x.denominator}"
        return str(int(x))


ZZ = Ring("int")
QQ = Ring("rat")


def GF(p: int) -> Ring:
    return Ring("fp", p)


def ring_from_tag(tag: str) -> Ring:
    """Parse a ring tag: 'int', 'rat', or 'fp:p'."""
    tag = tag.strip().lower()
    if tag == "int":
        return ZZ
    if tag == "rat":
        return QQ
    if tag.startswith("fp:"):
        return GF(int(tag[3:]))
    if tag.startswith("fp "):
        return GF(int(tag[3:]))
    raise ValueError(f"unknown ring tag {tag!r} (expected int, rat, or fp:<prime>)")
