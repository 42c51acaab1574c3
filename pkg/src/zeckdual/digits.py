"""Digit vectors and block decomposition for cyclic digit rules.

A numeration system here is defined by a finite rule list ``(e_1, ..., e_N)``
of digit caps, repeated cyclically.  Digit vectors are finite-support maps
``index -> value`` with indices starting at 1.  Whether a vector belongs to
the system is decided by a single deterministic top-down scan that cuts the
digits into blocks following the cyclic cap pattern; everything else in the
package is built on top of that scan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class RuleError(ValueError):
    """Invalid rule list."""


class TooShortError(RuleError):
    pass


class LeadingZeroError(RuleError):
    pass


class NegativeEntryError(RuleError):
    pass


class NotMemberError(ValueError):
    """Raised by :func:`decompose` when the scan hits a digit above its cap.

    ``index`` is where the scan failed, ``block_top`` the top index of the
    block being read at that moment.  Both are needed by the rounding step
    of the dual count, so they ride along on the exception.
    """

    def __init__(self, message: str, index: int, block_top: int):
        super().__init__(message)
        self.index = index
        self.block_top = block_top


@dataclass(frozen=True)
class DigitRule:
    """A cyclic rule list (e_1, ..., e_N), N >= 2, e_1 >= 1, all entries >= 0."""

    entries: tuple[int, ...]

    def __post_init__(self):
        ent = tuple(int(e) for e in self.entries)
        if len(ent) < 2:
            raise TooShortError(f"rule needs at least two entries, got {ent}")
        if any(e < 0 for e in ent):
            raise NegativeEntryError(f"rule entries must be >= 0, got {ent}")
        if ent[0] < 1:
            raise LeadingZeroError(f"first rule entry must be >= 1, got {ent}")
        object.__setattr__(self, "entries", ent)

    @property
    def period(self) -> int:
        return len(self.entries)

    @property
    def max_digit(self) -> int:
        return max(self.entries)

    def cap(self, offset: int) -> int:
        """Cap value ``e_{offset+1}`` read cyclically (offset 0-based)."""
        return self.entries[offset % len(self.entries)]

    @classmethod
    def parse(cls, text: str) -> "DigitRule":
        """Parse a comma-separated rule list such as ``"2,3,0"``."""
        parts = [p.strip() for p in text.split(",")]
        try:
            ent = tuple(int(p) for p in parts)
        except ValueError:
            raise RuleError(f"rule list must be comma-separated integers, got {text!r}") from None
        return cls(ent)

    def __str__(self) -> str:
        return ",".join(str(e) for e in self.entries)


class DigitVector:
    """Finite-support digit vector, indices >= 1, values >= 0.

    Zero values are dropped on construction, so two vectors are equal iff
    they agree at every index.
    """

    __slots__ = ("_d",)

    def __init__(self, digits=None):
        d = {}
        if digits:
            items = digits.items() if isinstance(digits, dict) else digits
            for k, v in items:
                k = int(k)
                v = int(v)
                if k < 1:
                    raise ValueError(f"digit index must be >= 1, got {k}")
                if v < 0:
                    raise ValueError(f"digit value must be >= 0, got {v} at index {k}")
                if v:
                    d[k] = v
        self._d = d

    @classmethod
    def from_dense(cls, seq) -> "DigitVector":
        """Build from a dense list where ``seq[0]`` is the digit at index 1."""
        return cls({i + 1: v for i, v in enumerate(seq)})

    def digit(self, k: int) -> int:
        return self._d.get(k, 0)

    def items(self):
        """Sorted ``(index, value)`` pairs of the support."""
        return sorted(self._d.items())

    @property
    def order(self) -> int:
        """Largest index with a nonzero digit; 0 for the zero vector."""
        return max(self._d) if self._d else 0

    @property
    def min_index(self):
        """Smallest index with a nonzero digit; ``math.inf`` for the zero vector."""
        return min(self._d) if self._d else math.inf

    def to_dense(self) -> list[int]:
        n = self.order
        return [self._d.get(k, 0) for k in range(1, n + 1)]

    def __bool__(self) -> bool:
        return bool(self._d)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DigitVector):
            return NotImplemented
        return self._d == other._d

    def __hash__(self) -> int:
        return hash(frozenset(self._d.items()))

    def __repr__(self) -> str:
        return f"DigitVector({format_digits(self)!r})"


ZERO = DigitVector()


def parse_digits(text: str) -> DigitVector:
    """Parse the sparse ``i1:v1,i2:v2,...`` form; empty/blank text is the zero vector."""
    text = text.strip()
    if not text:
        return ZERO
    d = {}
    for part in text.split(","):
        try:
            i, v = part.split(":")
            i = int(i)
            v = int(v)
        except ValueError:
            raise ValueError(f"bad digit entry {part!r}, expected index:value") from None
        if i in d:
            raise ValueError(f"duplicate digit index {i}")
        d[i] = v
    return DigitVector(d)


def format_digits(vec: DigitVector) -> str:
    """Sparse ``i1:v1,i2:v2,...`` form, ascending indices; empty string for zero."""
    return ",".join(f"{k}:{v}" for k, v in vec.items())


def compare_ascending(a: DigitVector, b: DigitVector) -> int:
    """Total order on digit vectors: the largest index where they differ decides.

    Returns -1, 0 or 1.
    """
    keys = set(a._d) | set(b._d)
    for k in sorted(keys, reverse=True):
        da, db = a.digit(k), b.digit(k)
        if da != db:
            return -1 if da < db else 1
    return 0


def basis_predecessor(rule: DigitRule, n: int) -> DigitVector:
    """The vector immediately below the n-th basis vector in scan order.

    Its digit at index k (1 <= k < n) is the rule cap read downward from the
    top, i.e. ``e_{((n-1-k) mod N) + 1}``; index n itself and everything
    above are zero.
    """
    if n < 2:
        raise ValueError(f"basis predecessor needs n >= 2, got {n}")
    ent = rule.entries
    N = len(ent)
    return DigitVector({k: ent[(n - 1 - k) % N] for k in range(1, n)})


@dataclass(frozen=True)
class Block:
    """One block of a decomposition: digits on the support [lo, hi]."""

    lo: int
    hi: int
    digits: tuple[int, ...]


@dataclass(frozen=True)
class BlockDecomposition:
    """Top-down list of blocks whose supports partition [1, order]."""

    blocks: tuple[Block, ...]

    def reassemble(self) -> DigitVector:
        d = {}
        for b in self.blocks:
            for off, v in enumerate(b.digits):
                if v:
                    d[b.lo + off] = v
        return DigitVector(d)


def decompose(rule: DigitRule, vec: DigitVector) -> BlockDecomposition:
    """Cut ``vec`` into rule blocks, top down.

    Starting at the highest nonzero index, digits are matched against the
    cyclic caps e_1, e_2, ...; a digit below its cap closes the current
    block and the pattern restarts at the next lower index; a digit equal
    to its cap keeps the block open.  Reaching index 1 while still matching
    closes a final (maximal) block.  A digit above its cap means ``vec``
    is not a member: :class:`NotMemberError` reports the failing index and
    the top of the open block.
    """
    n = vec.order
    blocks = []
    t = n
    while t >= 1:
        off = 0
        j = t
        while True:
            cap = rule.cap(off)
            d = vec.digit(j)
            if d > cap:
                raise NotMemberError(
                    f"digit {d} exceeds cap {cap} at index {j} (block top {t})",
                    index=j,
                    block_top=t,
                )
            if d < cap:
                blocks.append(Block(j, t, tuple(vec.digit(k) for k in range(j, t + 1))))
                t = j - 1
                break
            if j == 1:
                # matched the caps all the way down: maximal block
                blocks.append(Block(1, t, tuple(vec.digit(k) for k in range(1, t + 1))))
                t = 0
                break
            off += 1
            j -= 1
    return BlockDecomposition(tuple(blocks))


def is_member(rule: DigitRule, vec: DigitVector) -> bool:
    try:
        decompose(rule, vec)
        return True
    except NotMemberError:
        return False
