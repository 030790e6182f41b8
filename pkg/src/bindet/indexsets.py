"""Index sets of rows and columns of the infinite binomial matrix.

Indices are 0-based. An :class:`IndexSet` is an immutable, strictly
increasing tuple of non-negative integers. Text form used by the CLI and
the JSON reports::

    0,3,5,7     explicit list
    2..6        inclusive interval
    2..6/4      interval with one element removed
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Union

from .errors import IndexSetError, ParseError, PreconditionError


def _check_increasing(values: Sequence[int]) -> None:
    for pos, v in enumerate(values):
        if isinstance(v, bool) or not isinstance(v, int):
            raise IndexSetError(f"entry {v!r} at position {pos} is not an integer", pos)
        if v < 0:
            raise IndexSetError(f"negative entry {v} at position {pos}", pos)
        if pos and v == values[pos - 1]:
            raise IndexSetError(f"duplicate entry {v} at position {pos}", pos)
        if pos and v < values[pos - 1]:
            raise IndexSetError(
                f"entry {v} at position {pos} is not greater than {values[pos - 1]}", pos
            )


@dataclass(frozen=True)
class IndexSet:
    """Strictly increasing finite set of non-negative integers.

    Construction validates instead of sorting, so ``IndexSet((2, 1))`` raises.
    The empty set is representable but rejected by :func:`make_indexset`.
    """

    elems: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "elems", tuple(self.elems))
        _check_increasing(self.elems)

    @classmethod
    def trusted(cls, elems: tuple[int, ...]) -> "IndexSet":
        """Skip validation; for tuples that are increasing by construction."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "elems", elems)
        return obj

    def __len__(self) -> int:
        return len(self.elems)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elems)

    def __getitem__(self, idx):
        return self.elems[idx]

    def __contains__(self, x: object) -> bool:
        return x in self.elems

    @property
    def first(self) -> int:
        return self.elems[0]

    @property
    def last(self) -> int:
        return self.elems[-1]

    def is_interval(self) -> bool:
        return bool(self.elems) and self.elems[-1] - self.elems[0] == len(self.elems) - 1

    def punctured_form(self) -> Optional["IntervalSpec"]:
        """Return ``[lo, hi] \\ {gap}`` if this set is an interval missing one
        interior element, else ``None``."""
        e = self.elems
        if len(e) < 2 or e[-1] - e[0] != len(e):
            return None
        for a, b in zip(e, e[1:]):
            if b - a == 2:
                return IntervalSpec(e[0], e[-1], a + 1)
        return None  # pragma: no cover - width check guarantees a gap

    def without(self, x: int) -> "IndexSet":
        if x not in self.elems:
            raise PreconditionError(f"{x} is not in {self}")
        return IndexSet(tuple(v for v in self.elems if v != x))

    def __str__(self) -> str:
        return format_indexset(self)


@dataclass(frozen=True)
class IntervalSpec:
    """``[lo, hi]`` inclusive, optionally with ``punctured_at`` removed.

    ``lo > hi`` denotes the empty set.
    """

    lo: int
    hi: int
    punctured_at: Optional[int] = None

    def __post_init__(self) -> None:
        if self.lo < 0 or self.hi < 0:
            raise IndexSetError("interval bounds must be non-negative")
        if self.punctured_at is not None and not self.lo <= self.punctured_at <= self.hi:
            raise IndexSetError(
                f"puncture {self.punctured_at} outside [{self.lo},{self.hi}]"
            )

    @property
    def width(self) -> int:
        return max(0, self.hi - self.lo + 1)

    def to_indexset(self) -> IndexSet:
        return IndexSet(
            tuple(v for v in range(self.lo, self.hi + 1) if v != self.punctured_at)
        )

    @classmethod
    def from_indexset(cls, s: IndexSet) -> "IntervalSpec":
        if s.is_interval():
            return cls(s.first, s.last)
        p = s.punctured_form()
        if p is None:
            raise IndexSetError(f"{s} is neither an interval nor a punctured interval")
        return p


SetLike = Union[IndexSet, IntervalSpec, Iterable[int], str]


def make_indexset(values: Iterable[int]) -> IndexSet:
    """Validate ``values`` as a non-empty strictly increasing index list."""
    vals = tuple(values)
    if not vals:
        raise IndexSetError("index set must be non-empty")
    return IndexSet(vals)


def interval(lo: int, hi: int) -> IndexSet:
    return IntervalSpec(lo, hi).to_indexset()


def as_indexset(s: SetLike) -> IndexSet:
    """Coerce any accepted set description to an :class:`IndexSet`."""
    if isinstance(s, IndexSet):
        return s
    if isinstance(s, IntervalSpec):
        return s.to_indexset()
    if isinstance(s, str):
        return parse_indexset(s)
    return make_indexset(s)


def leq(J: SetLike, I: SetLike) -> bool:
    """Componentwise order ``J <= I`` on equal-size sets."""
    J, I = as_indexset(J), as_indexset(I)
    if len(J) != len(I):
        raise PreconditionError(f"size mismatch: |J|={len(J)} but |I|={len(I)}")
    return all(j <= i for j, i in zip(J, I))


def shift_down(S: SetLike, p: int) -> IndexSet:
    S = as_indexset(S)
    if S and p > S.first:
        raise PreconditionError(f"cannot shift {S} down by {p}")
    return IndexSet.trusted(tuple(s - p for s in S))


def shift_up(S: SetLike, p: int) -> IndexSet:
    S = as_indexset(S)
    return IndexSet(tuple(s + p for s in S))


def reflect(S: SetLike, q: int) -> IndexSet:
    """``q - S``, re-sorted increasing."""
    S = as_indexset(S)
    if S and q < S.last:
        raise PreconditionError(f"cannot reflect {S} through {q} < max")
    return IndexSet(tuple(q - s for s in reversed(S.elems)))


@dataclass(frozen=True)
class DerivedPair:
    level: int
    rows: IndexSet
    cols: IndexSet


def derived_pair(I: SetLike, J: SetLike, k: int) -> DerivedPair:
    """Level-``k`` pair of the shrinking chain for an interval row set.

    For ``k >= 1`` the rows are ``[i+k-1, i+d-2] - j_k`` and the columns
    ``{j_{k+1}, ..., j_d} - j_k - 1``.
    """
    I, J = as_indexset(I), as_indexset(J)
    if not I.is_interval():
        raise PreconditionError(f"row set {I} must be an interval")
    d = len(I)
    if not leq(J, I):
        raise PreconditionError(f"J={J} is not <= I={I}")
    if not 0 <= k <= d - 1:
        raise PreconditionError(f"level {k} outside [0, {d - 1}]")
    if k == 0:
        return DerivedPair(0, I, J)
    i = I.first
    jk = J[k - 1]
    rows = interval(i + k - 1 - jk, i + d - 2 - jk)
    cols = IndexSet(tuple(j - jk - 1 for j in J.elems[k:]))
    return DerivedPair(k, rows, cols)


def derived_chain(I: SetLike, J: SetLike) -> list[DerivedPair]:
    I = as_indexset(I)
    return [derived_pair(I, J, k) for k in range(len(I))]


def format_indexset(S: IndexSet) -> str:
    """Canonical text: ``a..b`` for intervals of two or more, else a list."""
    if len(S) >= 2 and S.is_interval():
        return f"{S.first}..{S.last}"
    return ",".join(str(v) for v in S)


def _read_int(text: str, pos: int) -> tuple[int, int]:
    start = pos
    while pos < len(text) and text[pos].isdigit() and text[pos].isascii():
        pos += 1
    if pos == start:
        what = "end of input" if pos >= len(text) else repr(text[pos])
        raise ParseError(f"expected digit, found {what}", text, len(text[:start].encode()))
    return int(text[start:pos]), pos


def parse_indexset(text: str) -> IndexSet:
    """Parse ``list | interval | punctured``. Whitespace is not allowed."""

    def fail(msg: str, pos: int):
        raise ParseError(msg, text, len(text[:pos].encode()))

    first, pos = _read_int(text, 0)
    if text.startswith("..", pos):
        hi, pos = _read_int(text, pos + 2)
        punct = None
        if pos < len(text) and text[pos] == "/":
            punct, pos = _read_int(text, pos + 1)
            if not first <= punct <= hi:
                fail(f"puncture {punct} outside {first}..{hi}", pos)
        if pos != len(text):
            fail(f"unexpected {text[pos]!r}", pos)
        return IntervalSpec(first, hi, punct).to_indexset()
    values = [first]
    while pos < len(text):
        if text[pos] != ",":
            fail(f"unexpected {text[pos]!r}", pos)
        v, pos = _read_int(text, pos + 1)
        values.append(v)
    try:
        return make_indexset(values)
    except IndexSetError as exc:
        # Map the element position back to its byte offset.
        offsets, off = [], 0
        for part in text.split(","):
            offsets.append(off)
            off += len(part.encode()) + 1
        raise ParseError(str(exc), text, offsets[exc.position or 0]) from exc
