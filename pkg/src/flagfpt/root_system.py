"""Irreducible root systems in integer simple-root coordinates.

Conventions (used everywhere in the package):

* Simple roots are numbered 1..rank following Bourbaki::

      A_n  1 - 2 - ... - n
      B_n  1 - 2 - ... - (n-1) => n          (alpha_n short)
      C_n  1 - 2 - ... - (n-1) <= n          (alpha_n long)
      D_n  1 - 2 - ... - (n-2) - (n-1)
                           \\
                            n
      E_r  1 - 3 - 4 - 5 - ... - r
                   |
                   2
      F_4  1 - 2 => 3 - 4                    (alpha_1, alpha_2 long)
      G_2  1 <= 2                            (alpha_1 short)

* ``cartan[i][j] = <alpha_j, alpha_i^vee>``: the row names the coroot, the
  column names the root.  Every pairing goes through :func:`pairing`.

* A root is a tuple of integer coefficients on the simple roots.  A weight
  is a tuple of integer coefficients on the fundamental weights, i.e.
  ``weight[i] = <lambda, alpha_i^vee>``.

Public functions take 1-based simple-root indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

Root = tuple[int, ...]
Weight = tuple[int, ...]
CartanMatrix = tuple[tuple[int, ...], ...]

FAMILIES = ("A", "B", "C", "D", "E", "F", "G")

# classical positive-root counts, used for validation of the enumerator
_POSITIVE_ROOT_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


class RootSystemError(ValueError):
    """Invalid root-system type, rank, index, or parabolic."""


@dataclass(frozen=True, order=True)
class RootSystemType:
    family: str
    rank: int

    def __post_init__(self) -> None:
        family = self.family.upper() if isinstance(self.family, str) else self.family
        object.__setattr__(self, "family", family)
        if family not in FAMILIES:
            raise RootSystemError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        if not isinstance(self.rank, int) or isinstance(self.rank, bool):
            raise RootSystemError(f"rank must be an integer, got {self.rank!r}")
        r = self.rank
        ok = {
            "A": r >= 1,
            "B": r >= 2,
            "C": r >= 2,
            "D": r >= 3,
            "E": r in (6, 7, 8),
            "F": r == 4,
            "G": r == 2,
        }[family]
        if not ok:
            constraint = {
                "A": "rank >= 1",
                "B": "rank >= 2",
                "C": "rank >= 2",
                "D": "rank >= 3",
                "E": "rank in {6, 7, 8}",
                "F": "rank == 4",
                "G": "rank == 2",
            }[family]
            raise RootSystemError(f"type {family}{r} is invalid: {family} requires {constraint}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "RootSystemType":
        """Parse labels such as ``"E7"`` or ``"a3"``."""
        text = text.strip()
        if len(text) < 2 or not text[1:].isdigit():
            raise RootSystemError(f"cannot parse root system label {text!r}")
        return cls(text[0].upper(), int(text[1:]))


def _chain(n: int) -> list[list[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def cartan_matrix(typ: RootSystemType) -> CartanMatrix:
    """Standard Cartan matrix, Bourbaki numbering, ``A[i][j] = <alpha_j, alpha_i^vee>``."""
    f, n = typ.family, typ.rank
    if f == "A":
        a = _chain(n)
    elif f == "B":
        a = _chain(n)
        a[n - 1][n - 2] = -2
    elif f == "C":
        a = _chain(n)
        a[n - 2][n - 1] = -2
    elif f == "D":
        a = _chain(n)
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    elif f == "E":
        a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        edges = [(1, 3), (2, 4)] + [(k, k + 1) for k in range(3, n)]
        for i, j in edges:
            a[i - 1][j - 1] = a[j - 1][i - 1] = -1
    elif f == "F":
        a = _chain(4)
        a[2][1] = -2
    else:  # G
        a = [[2, -3], [-1, 2]]
    return tuple(tuple(row) for row in a)


def _pair(cartan: CartanMatrix, v: Sequence[int], i: int) -> int:
    row = cartan[i]
    return sum(c * a for c, a in zip(v, row))


def enumerate_positive_roots(cartan: CartanMatrix) -> list[Root]:
    """All positive roots, ascending height then lexicographic.

    Built height by height with root strings: for a root ``beta`` and simple
    ``alpha_i``, ``beta + alpha_i`` is a root iff ``p - <beta, alpha_i^vee> > 0``
    where ``p`` is the largest ``k`` with ``beta - k alpha_i`` a root.
    """
    _validate_cartan(cartan)
    n = len(cartan)
    simples = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    known: set[Root] = set(simples)
    layers = [sorted(simples)]
    while True:
        nxt: set[Root] = set()
        for beta in layers[-1]:
            for i in range(n):
                if beta == simples[i]:
                    continue
                p = 0
                lower = list(beta)
                while True:
                    lower[i] -= 1
                    if tuple(lower) in known:
                        p += 1
                    else:
                        break
                if p - _pair(cartan, beta, i) > 0:
                    up = list(beta)
                    up[i] += 1
                    nxt.add(tuple(up))
        if not nxt:
            break
        known |= nxt
        layers.append(sorted(nxt))
    return [r for layer in layers for r in layer]


def _validate_cartan(cartan: CartanMatrix) -> None:
    n = len(cartan)
    for i in range(n):
        if len(cartan[i]) != n:
            raise RootSystemError("Cartan matrix must be square")
        if cartan[i][i] != 2:
            raise RootSystemError(f"Cartan diagonal entry {i + 1} is {cartan[i][i]}, expected 2")
        for j in range(n):
            if i != j and (cartan[i][j] > 0 or (cartan[i][j] == 0) != (cartan[j][i] == 0)):
                raise RootSystemError(f"invalid off-diagonal Cartan entries at ({i + 1}, {j + 1})")


def solve_exact(matrix: Sequence[Sequence[int]], rhs: Sequence[int]) -> tuple[Fraction, ...]:
    """Solve ``matrix @ x = rhs`` over the rationals by Gauss-Jordan elimination."""
    n = len(matrix)
    m = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [v / p for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return tuple(row[n] for row in m)


@dataclass(frozen=True)
class ParabolicSpec:
    """Standard parabolic ``Q_I`` given by the simple roots removed from ``Delta``.

    ``removed`` holds the 1-based indices ``d_1 < ... < d_r`` of the complement of ``I``.
    """

    rank: int
    removed: tuple[int, ...]

    def __post_init__(self) -> None:
        removed = tuple(sorted(set(self.removed)))
        if not removed:
            raise RootSystemError("removed set must be nonempty (Q = G is not a parabolic of interest)")
        if removed[0] < 1 or removed[-1] > self.rank:
            raise RootSystemError(f"removed indices must lie in 1..{self.rank}, got {list(removed)}")
        object.__setattr__(self, "removed", removed)

    @property
    def is_maximal(self) -> bool:
        return len(self.removed) == 1

    @property
    def is_borel(self) -> bool:
        return len(self.removed) == self.rank

    @property
    def levi(self) -> frozenset[int]:
        """The set ``I`` of simple indices kept in the Levi factor."""
        return frozenset(range(1, self.rank + 1)) - frozenset(self.removed)


@dataclass(frozen=True)
class RootSystem:
    type: RootSystemType
    cartan: CartanMatrix = field(repr=False)
    positive_roots: tuple[Root, ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return self.type.rank

    @cached_property
    def root_set(self) -> frozenset[Root]:
        return frozenset(self.positive_roots)

    def simple_root(self, i: int) -> Root:
        self._check_index(i)
        return tuple(1 if j == i - 1 else 0 for j in range(self.rank))

    def simple_root_as_weight(self, i: int) -> Weight:
        """``alpha_i`` in the fundamental-weight basis: column ``i`` of the Cartan matrix."""
        self._check_index(i)
        return tuple(self.cartan[j][i - 1] for j in range(self.rank))

    def to_weight(self, v: Sequence[int]) -> Weight:
        """Convert simple-root coordinates to fundamental-weight coordinates."""
        return tuple(_pair(self.cartan, v, i) for i in range(self.rank))

    def to_root_coords(self, weight: Sequence[int]) -> tuple[Fraction, ...]:
        """Convert fundamental-weight coordinates to (rational) simple-root coordinates."""
        return solve_exact(self.cartan, weight)

    def parabolic(self, removed: Iterable[int]) -> ParabolicSpec:
        return ParabolicSpec(self.rank, tuple(removed))

    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise RootSystemError(f"simple index {i} out of range 1..{self.rank} for {self.type}")


@lru_cache(maxsize=None)
def _build(typ: RootSystemType) -> RootSystem:
    cartan = cartan_matrix(typ)
    roots = enumerate_positive_roots(cartan)
    expected = _POSITIVE_ROOT_COUNT[typ.family](typ.rank)
    if len(roots) != expected:
        raise AssertionError(f"{typ}: enumerated {len(roots)} positive roots, expected {expected}")
    return RootSystem(typ, cartan, tuple(roots))


def root_system(family: str | RootSystemType, rank: int | None = None) -> RootSystem:
    """Build (and cache) the root system of the given type, e.g. ``root_system("E", 7)``."""
    typ = family if isinstance(family, RootSystemType) else RootSystemType(family, rank)
    return _build(typ)


def pairing(rs: RootSystem, v: Sequence[int], i: int) -> int:
    """``<sum_j v_j alpha_j, alpha_i^vee>`` for a vector in simple-root coordinates."""
    rs._check_index(i)
    if len(v) != rs.rank:
        raise RootSystemError(f"vector of length {len(v)} does not match rank {rs.rank}")
    return _pair(rs.cartan, v, i - 1)


def levi_roots(rs: RootSystem, parab: ParabolicSpec) -> list[Root]:
    """Positive roots of ``Phi_I``: those supported on the kept indices only."""
    _check_parab(rs, parab)
    removed = [d - 1 for d in parab.removed]
    return [r for r in rs.positive_roots if all(r[d] == 0 for d in removed)]


def two_rho_I(rs: RootSystem, parab: ParabolicSpec) -> Weight:
    """Sum of the positive roots outside ``Phi_I``, in the fundamental-weight basis."""
    _check_parab(rs, parab)
    removed = [d - 1 for d in parab.removed]
    total = [0] * rs.rank
    for r in rs.positive_roots:
        if any(r[d] for d in removed):
            for j, c in enumerate(r):
                total[j] += c
    weight = rs.to_weight(total)
    for i in parab.levi:
        if weight[i - 1] != 0:
            raise AssertionError(f"2rho_I not W_I-invariant at index {i}: {weight}")
    return weight


def _check_parab(rs: RootSystem, parab: ParabolicSpec) -> None:
    if parab.rank != rs.rank:
        raise RootSystemError(f"parabolic of rank {parab.rank} used with {rs.type}")


def minuscule_indices(typ: RootSystemType) -> frozenset[int]:
    f, n = typ.family, typ.rank
    if f == "A":
        return frozenset(range(1, n + 1))
    if f == "B":
        return frozenset({n})
    if f == "C":
        return frozenset({1})
    if f == "D":
        return frozenset({1, n - 1, n})
    if f == "E":
        return {6: frozenset({1, 6}), 7: frozenset({7}), 8: frozenset()}[n]
    return frozenset()


def fundamental_weight(rs: RootSystem, d: int) -> Weight:
    rs._check_index(d)
    return tuple(1 if j == d - 1 else 0 for j in range(rs.rank))


def reflect(rs: RootSystem, weight: Sequence[int], i: int) -> Weight:
    """Simple reflection ``s_i(lambda) = lambda - <lambda, alpha_i^vee> alpha_i``."""
    k = weight[i - 1]
    col = rs.simple_root_as_weight(i)
    return tuple(w - k * a for w, a in zip(weight, col))


def weyl_orbit(rs: RootSystem, d: int) -> frozenset[Weight]:
    """Weyl orbit of the minuscule fundamental weight ``varpi_d``."""
    rs._check_index(d)
    if d not in minuscule_indices(rs.type):
        raise RootSystemError(f"varpi_{d} is not minuscule for {rs.type}")
    start = fundamental_weight(rs, d)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(1, rs.rank + 1):
                if w[i - 1] == 0:
                    continue
                s = reflect(rs, w, i)
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    return frozenset(seen)
