"""Finite lattices behind the ASL structures: I(d,n), Young lattices H_Q,
and minuscule lattices (tuple models and Weyl-orbit weight posets).

A :class:`FinitePoset` keeps an explicit element list in canonical order
(longer tuples first, then lexicographic) together with a boolean order
matrix ``order[i, j] = elements[i] <= elements[j]``.  Covers, joins and
meets are derived from that matrix, so every construction shares the same
generic principal-chain code.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .root_system import (
    RootSystem,
    RootSystemError,
    RootSystemType,
    minuscule_indices,
    root_system,
    weyl_orbit,
)

Element = Hashable
TupleElement = tuple[int, ...]


class LatticeError(ValueError):
    """Bad lattice parameters or an element outside the poset."""


class NotALatticeError(LatticeError):
    """A join or meet that a lattice would have does not exist."""

    def __init__(self, op: str, elements: Sequence[Element]):
        self.op = op
        self.elements = tuple(elements)
        super().__init__(f"{op} of {list(elements)} is undefined: poset is not a lattice")


def canonical_key(x: Element):
    if isinstance(x, tuple):
        return (-len(x), x)
    return (0, x)


class FinitePoset:
    """Immutable finite poset with an explicit order matrix."""

    def __init__(
        self,
        elements: Iterable[Element],
        leq: Callable[[Element, Element], bool] | None = None,
        *,
        order: np.ndarray | None = None,
        kind: str = "tuple",
        name: str = "",
    ):
        elems = list(elements)
        if order is None:
            elems.sort(key=canonical_key)
            if leq is None:
                raise LatticeError("either leq or order must be given")
            n = len(elems)
            order = np.zeros((n, n), dtype=bool)
            for i, x in enumerate(elems):
                for j, y in enumerate(elems):
                    order[i, j] = leq(x, y)
        elif order.shape != (len(elems), len(elems)):
            raise LatticeError("order matrix shape does not match element count")
        self._elements = tuple(elems)
        self._index = {x: i for i, x in enumerate(self._elements)}
        if len(self._index) != len(self._elements):
            raise LatticeError("duplicate elements")
        order = np.array(order, dtype=bool)
        order.setflags(write=False)
        self._order = order
        self.kind = kind
        self.name = name

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self):
        return iter(self._elements)

    def __contains__(self, x) -> bool:
        return x in self._index

    def __repr__(self) -> str:
        return f"FinitePoset({self.name or self.kind}, size={len(self)})"

    @property
    def elements(self) -> tuple[Element, ...]:
        return self._elements

    @property
    def order(self) -> np.ndarray:
        return self._order

    def index(self, x: Element) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise LatticeError(f"{x!r} is not an element of {self!r}") from None

    def leq(self, x: Element, y: Element) -> bool:
        return bool(self._order[self.index(x), self.index(y)])

    def lt(self, x: Element, y: Element) -> bool:
        return x != y and self.leq(x, y)

    @cached_property
    def _strict(self) -> np.ndarray:
        return self._order & ~np.eye(len(self), dtype=bool)

    @cached_property
    def cover_matrix(self) -> np.ndarray:
        """``cover[i, j]`` iff element ``j`` covers element ``i``."""
        s = self._strict.astype(np.int32)
        between = (s @ s) > 0
        out = self._strict & ~between
        out.setflags(write=False)
        return out

    def covers(self, x: Element) -> list[Element]:
        """Upper covers of ``x``, in canonical order."""
        row = self.cover_matrix[self.index(x)]
        return [self._elements[j] for j in np.flatnonzero(row)]

    def lower_covers(self, x: Element) -> list[Element]:
        col = self.cover_matrix[:, self.index(x)]
        return [self._elements[i] for i in np.flatnonzero(col)]

    def minimal_elements(self) -> list[Element]:
        below = self._strict.any(axis=0)
        return [x for x, b in zip(self._elements, below) if not b]

    def maximal_elements(self) -> list[Element]:
        above = self._strict.any(axis=1)
        return [x for x, a in zip(self._elements, above) if not a]

    def _least(self, candidates: np.ndarray, op: str, args) -> Element:
        idx = np.flatnonzero(candidates)
        sub = self._order[np.ix_(idx, idx)]
        least = [idx[k] for k in range(len(idx)) if sub[k].all()]
        if len(least) != 1:
            raise NotALatticeError(op, args)
        return self._elements[least[0]]

    def join(self, *xs: Element) -> Element:
        """Least upper bound of one or more elements."""
        if not xs:
            raise LatticeError("join of no elements")
        upper = np.ones(len(self), dtype=bool)
        for x in xs:
            upper &= self._order[self.index(x)]
        return self._least(upper, "join", xs)

    def meet(self, *xs: Element) -> Element:
        if not xs:
            raise LatticeError("meet of no elements")
        lower = np.ones(len(self), dtype=bool)
        for x in xs:
            lower &= self._order[:, self.index(x)]
        idx = np.flatnonzero(lower)
        sub = self._order[np.ix_(idx, idx)]
        greatest = [idx[k] for k in range(len(idx)) if sub[:, k].all()]
        if len(greatest) != 1:
            raise NotALatticeError("meet", xs)
        return self._elements[greatest[0]]

    def hasse_edges(self) -> list[tuple[Element, Element]]:
        """Cover pairs ``(lower, upper)`` in canonical order."""
        rows, cols = np.nonzero(self.cover_matrix)
        return [(self._elements[i], self._elements[j]) for i, j in zip(rows, cols)]

    def is_partial_order(self) -> bool:
        m = self._order
        if not m.diagonal().all():
            return False
        if (m & m.T & ~np.eye(len(self), dtype=bool)).any():
            return False
        mi = m.astype(np.int32)
        return bool(((mi @ mi > 0) <= m).all())

    def is_lattice(self) -> bool:
        try:
            for i in range(len(self)):
                for j in range(i + 1, len(self)):
                    x, y = self._elements[i], self._elements[j]
                    self.join(x, y)
                    self.meet(x, y)
        except NotALatticeError:
            return False
        return True


# -- type A tuple lattices ---------------------------------------------------


def _tuple_order(elems: Sequence[TupleElement], n: int) -> np.ndarray:
    """Order matrix for tuples under the Young-lattice rule (which restricts to I(d,n)).

    ``a >= b`` iff ``len(a) <= len(b)`` and ``a_i >= b_i`` for ``i <= len(a)``.
    """
    width = max((len(t) for t in elems), default=0)
    big = n + 2
    as_upper = np.full((len(elems), width), big, dtype=np.int64)
    as_lower = np.full((len(elems), width), big - 1, dtype=np.int64)
    for k, t in enumerate(elems):
        as_upper[k, : len(t)] = t
        as_lower[k, : len(t)] = t
    # order[i, j]: elems[i] <= elems[j], i.e. elems[j] is the upper operand
    return (as_upper[None, :, :] >= as_lower[:, None, :]).all(axis=2)


def _check_tuple(x: Sequence[int], n: int) -> TupleElement:
    x = tuple(x)
    if not x or any(b <= a for a, b in zip(x, x[1:])) or x[0] < 1 or x[-1] > n:
        raise LatticeError(f"{x} is not a strictly increasing tuple in [1, {n}]")
    return x


def build_idn(d: int, n: int) -> FinitePoset:
    """The lattice I(d,n) of strictly increasing d-tuples in [1, n], componentwise order."""
    if not (1 <= d <= n):
        raise LatticeError(f"I(d,n) needs 1 <= d <= n, got d={d}, n={n}")
    elems = sorted(combinations(range(1, n + 1), d), key=canonical_key)
    return FinitePoset(elems, order=_tuple_order(elems, n), kind="tuple", name=f"I({d},{n})")


@dataclass(frozen=True)
class YoungLatticeSpec:
    n: int
    ds: tuple[int, ...]

    def __post_init__(self) -> None:
        ds = tuple(self.ds)
        if not ds:
            raise LatticeError("ds must be nonempty")
        if list(ds) != sorted(set(ds)):
            raise LatticeError(f"ds must be strictly increasing, got {ds}")
        if ds[0] < 1 or ds[-1] > self.n - 1:
            raise LatticeError(f"ds must lie in [1, n-1] = [1, {self.n - 1}], got {ds}")
        object.__setattr__(self, "ds", ds)


def build_young(spec: YoungLatticeSpec) -> FinitePoset:
    """H_Q: the union of I(d_i, n) with shorter tuples above longer ones."""
    elems: list[TupleElement] = []
    for d in spec.ds:
        elems.extend(combinations(range(1, spec.n + 1), d))
    elems.sort(key=canonical_key)
    ds = ",".join(map(str, spec.ds))
    return FinitePoset(elems, order=_tuple_order(elems, spec.n), kind="tuple", name=f"H({spec.n};{ds})")


def tuple_join(a: TupleElement, b: TupleElement) -> TupleElement:
    """Join in H_n: truncate to the shorter length, componentwise max."""
    r = min(len(a), len(b))
    return tuple(max(x, y) for x, y in zip(a[:r], b[:r]))


def tuple_meet(a: TupleElement, b: TupleElement) -> TupleElement:
    """Meet in H_n: componentwise min on the shorter length, tail of the longer kept."""
    if len(a) > len(b):
        a, b = b, a
    head = tuple(min(x, y) for x, y in zip(a, b))
    return head + b[len(a):]


# -- module-level wrappers ---------------------------------------------------


def minimal_elements(p: FinitePoset) -> list[Element]:
    return p.minimal_elements()


def covers(p: FinitePoset, x: Element) -> list[Element]:
    return p.covers(x)


@dataclass(frozen=True)
class PrincipalChain:
    elements: tuple[Element, ...]

    @property
    def length(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def principal_chain(p: FinitePoset) -> PrincipalChain:
    """Join of the minimal elements, then repeatedly the join of all covers."""
    if not len(p):
        raise LatticeError("empty poset has no principal chain")
    xi = p.join(*p.minimal_elements())
    chain = [xi]
    while True:
        ups = p.covers(xi)
        if not ups:
            break
        nxt = p.join(*ups)
        if nxt == xi:  # pragma: no cover - impossible for a partial order
            raise NotALatticeError("join", ups)
        xi = nxt
        chain.append(xi)
    return PrincipalChain(tuple(chain))


def fast_successor_idn(x: Sequence[int], n: int) -> TupleElement:
    """Add 1 to every entry of ``x`` that precedes a gap (the last entry precedes ``n+1``)."""
    x = _check_tuple(x, n)
    d = len(x)
    if x == tuple(range(n - d + 1, n + 1)):
        raise LatticeError(f"{x} is the maximal element of I({d},{n}) and has no successor")
    nexts = x[1:] + (n + 1,)
    return tuple(a if b == a + 1 else a + 1 for a, b in zip(x, nexts))


def fast_successor_young(x: Sequence[int], spec: YoungLatticeSpec) -> TupleElement:
    """Principal-chain successor in H_Q without building the lattice.

    Once the last ``d_i - d_{i-1}`` entries sit at their maxima, the tail is
    dropped and the remaining entries are bumped wherever ``x`` has a gap.
    """
    x = _check_tuple(x, spec.n)
    d = len(x)
    if d not in spec.ds:
        raise LatticeError(f"tuple length {d} is not one of {spec.ds}")
    pos = spec.ds.index(d)
    d_prev = spec.ds[pos - 1] if pos else 0
    n = spec.n
    pinned = all(x[k] == n - d + k + 1 for k in range(d_prev, d))
    if not pinned:
        return fast_successor_idn(x, n)
    if d_prev == 0:
        raise LatticeError(f"{x} is the maximal element of H_Q and has no successor")
    return tuple(x[k] if x[k + 1] == x[k] + 1 else x[k] + 1 for k in range(d_prev))


# -- minuscule lattices ------------------------------------------------------


def _as_type(typ: str | RootSystemType, rank: int | None) -> RootSystemType:
    return typ if isinstance(typ, RootSystemType) else RootSystemType(typ, rank)


def type_b_tuples(m: int) -> list[TupleElement]:
    """B_m(varpi_m) as tuples in I(m, 2m+2): one entry from each pair {j, 2m+2-j}."""
    top = 2 * m + 2
    return sorted(
        (tuple(sorted(pick)) for pick in product(*[(j, top - j) for j in range(1, m + 1)])),
        key=canonical_key,
    )


def type_d_tuples(n: int) -> list[TupleElement]:
    """D_n(varpi_n) as tuples in I(n, 2n): one entry from each {j, 2n+1-j}, evenly many above n."""
    out = []
    for pick in product(*[(j, 2 * n + 1 - j) for j in range(1, n + 1)]):
        if sum(1 for v in pick if v > n) % 2 == 0:
            out.append(tuple(sorted(pick)))
    return sorted(out, key=canonical_key)


def build_minuscule_tuple(typ: str | RootSystemType, rank: int | None = None, d: int | None = None) -> FinitePoset:
    """Tuple model of the minuscule lattice for type A (any d), B (d = rank), D (d in {rank-1, rank}).

    Ranks are Lie ranks.  The type-B lattice of rank ``m`` is the sub-poset of
    I(m, 2m+2) cut out by the pair condition, so a rank-``m`` group uses the
    tuple model whose ambient parameter is ``m + 1``.  D(varpi_{n-1}) is
    returned as the isomorphic D(varpi_n) model.
    """
    t = _as_type(typ, rank)
    f, r = t.family, t.rank
    if d is None:
        raise LatticeError("weight index d is required")
    if f == "A" and 1 <= d <= r:
        elems = sorted(combinations(range(1, r + 2), d), key=canonical_key)
        n = r + 1
    elif f == "B" and d == r:
        elems = type_b_tuples(r)
        n = 2 * r + 2
    elif f == "D" and d in (r - 1, r):
        elems = type_d_tuples(r)
        n = 2 * r
    else:
        raise LatticeError(f"no tuple model for {t} with d={d}; use build_minuscule_weightposet")
    return FinitePoset(elems, order=_tuple_order(elems, n), kind="tuple", name=f"{t}(w{d})")


def build_minuscule_weightposet(rs: RootSystem, d: int) -> FinitePoset:
    """Weyl orbit of ``varpi_d`` ordered by ``lambda <= mu`` iff ``mu - lambda`` is a nonnegative root combination."""
    if d not in minuscule_indices(rs.type):
        raise RootSystemError(f"varpi_{d} is not minuscule for {rs.type}")
    elems = sorted(weyl_orbit(rs, d))
    coords = [rs.to_root_coords(w) for w in elems]
    n = len(elems)
    order = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            diff = [b - a for a, b in zip(coords[i], coords[j])]
            order[i, j] = all(c >= 0 and c.denominator == 1 for c in diff)
    return FinitePoset(elems, order=order, kind="weight", name=f"{rs.type}(w{d})")


def minuscule_lattice(typ: str | RootSystemType, rank: int | None, d: int, model: str = "auto") -> FinitePoset:
    """Tuple model where one exists (``model="auto"``), otherwise the weight poset."""
    t = _as_type(typ, rank)
    if model not in ("auto", "tuple", "weight"):
        raise LatticeError(f"unknown model {model!r}")
    if model != "weight":
        try:
            return build_minuscule_tuple(t, d=d)
        except LatticeError:
            if model == "tuple":
                raise
    return build_minuscule_weightposet(root_system(t), d)


# -- semimodularity ----------------------------------------------------------


def is_upper_semimodular(p: FinitePoset) -> bool:
    """Standard reading: if ``x != y`` both cover ``x meet y`` then ``x join y`` covers both."""
    cov = p.cover_matrix
    elems = p.elements
    for i, j in combinations(range(len(p)), 2):
        x, y = elems[i], elems[j]
        m = p.index(p.meet(x, y))
        if cov[m, i] and cov[m, j]:
            u = p.index(p.join(x, y))
            if not (cov[i, u] and cov[j, u]):
                return False
    return True


def is_lower_semimodular(p: FinitePoset) -> bool:
    """If ``x != y`` are both covered by ``x join y`` then both cover ``x meet y``."""
    cov = p.cover_matrix
    elems = p.elements
    for i, j in combinations(range(len(p)), 2):
        x, y = elems[i], elems[j]
        u = p.index(p.join(x, y))
        if cov[i, u] and cov[j, u]:
            m = p.index(p.meet(x, y))
            if not (cov[m, i] and cov[m, j]):
                return False
    return True


def literal_semimodularity_hypothesis_count(p: FinitePoset) -> int:
    """Pairs ``x != y`` where both ``x`` and ``y`` cover ``x join y`` (read word for word).

    Since ``x <= x join y`` this is always 0, so the word-for-word condition holds vacuously.
    """
    cov = p.cover_matrix
    elems = p.elements
    count = 0
    for i, j in combinations(range(len(p)), 2):
        u = p.index(p.join(elems[i], elems[j]))
        if cov[u, i] and cov[u, j]:
            count += 1
    return count


def is_distributive(p: FinitePoset) -> bool:
    elems = p.elements
    for x in elems:
        for y in elems:
            for z in elems:
                if p.meet(x, p.join(y, z)) != p.join(p.meet(x, y), p.meet(x, z)):
                    return False
    return True

