"""F-pure thresholds and a-invariants of coordinate rings of flag varieties.

Every query is answered by each applicable method and the answers are
compared.  The methods are

``chain``        length of the principal chain of the ASL lattice (Young
                 lattice for type A flags, minuscule lattice for minuscule
                 Grassmannians); fpt = -a = chain length.
``root-sum``     the unique nonzero coefficient of the sum of positive roots
                 outside the Levi, in the fundamental-weight basis (maximal
                 parabolics only).
``closed-form``  the telescoped type-A flag formula, or ``dim R_1 = 2n`` for
                 ``Sp_2n / P_1 = P^{2n-1}``, or ``fpt(R_{rho_I}) = 2``.
``hypersurface`` ``a(S) + deg f`` for the quadric ``SO_2n / P_1``.
``veronese``     division by the Veronese degree.

All values are exact; ``lct`` is always reported equal to ``fpt``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .lattices import (
    YoungLatticeSpec,
    build_young,
    minuscule_lattice,
    principal_chain,
)
from .root_system import (
    ParabolicSpec,
    RootSystemError,
    RootSystemType,
    minuscule_indices,
    root_system,
    two_rho_I,
)

METHOD_TAGS = ("chain", "root-sum", "closed-form", "veronese", "hypersurface")


class QueryError(ValueError):
    """The query violates a precondition (type, parabolic, weight shape)."""


class MethodUnavailable(Exception):
    """A method does not apply to the query; not a failure of the query itself."""


class MethodDisagreement(RuntimeError):
    """Two methods produced different values for the same query."""

    def __init__(self, query: "FlagQuery", witnesses: dict[str, Fraction]):
        self.query = query
        self.witnesses = dict(witnesses)
        shown = ", ".join(f"{k}={v}" for k, v in witnesses.items())
        super().__init__(f"methods disagree for {query.label()}: {shown}")


@dataclass(frozen=True)
class FlagQuery:
    """A flag variety ``G/Q`` plus the embedding.

    ``weight`` is ``None`` for the natural embedding (Pluecker for maximal
    parabolics, the multi-homogeneous ring ``R_Q`` otherwise),
    ``"fundamental"`` for ``multiple * varpi_d`` on a maximal parabolic, or
    ``"rho"`` for ``multiple * rho_I`` on a non-maximal parabolic.
    """

    type: RootSystemType
    parab: ParabolicSpec
    weight: str | None = None
    multiple: int = 1

    def __post_init__(self) -> None:
        if self.parab.rank != self.type.rank:
            raise QueryError(f"parabolic rank {self.parab.rank} does not match {self.type}")
        if self.weight not in (None, "fundamental", "rho"):
            raise QueryError(f"unknown weight kind {self.weight!r}")
        if not isinstance(self.multiple, int) or self.multiple < 1:
            raise QueryError(f"weight multiple must be a positive integer, got {self.multiple!r}")
        if self.weight is None and self.multiple != 1:
            raise QueryError("a multiple requires a weight kind")
        if self.weight == "fundamental" and not self.parab.is_maximal:
            raise QueryError("m*varpi_d needs a maximal parabolic (exactly one removed index)")
        if self.weight == "rho" and self.parab.is_maximal:
            raise QueryError("m*rho_I needs a non-maximal parabolic: the rho_I law assumes I != Delta minus one root")

    @classmethod
    def make(
        cls,
        family: str,
        rank: int,
        removed: Sequence[int],
        *,
        veronese: int | None = None,
        rho_multiple: int | None = None,
    ) -> "FlagQuery":
        try:
            typ = RootSystemType(family, rank)
            parab = ParabolicSpec(rank, tuple(removed))
        except RootSystemError as exc:
            raise QueryError(str(exc)) from exc
        if veronese is not None and rho_multiple is not None:
            raise QueryError("choose at most one of a Veronese degree and a rho multiple")
        if veronese is not None:
            return cls(typ, parab, "fundamental", veronese)
        if rho_multiple is not None:
            return cls(typ, parab, "rho", rho_multiple)
        return cls(typ, parab)

    @property
    def d(self) -> int:
        if not self.parab.is_maximal:
            raise MethodUnavailable("not a maximal parabolic")
        return self.parab.removed[0]

    def label(self) -> str:
        removed = ",".join(map(str, self.parab.removed))
        text = f"{self.type}/Q[{removed}]"
        if self.weight == "fundamental":
            text += f" @ {self.multiple}*w{self.parab.removed[0]}"
        elif self.weight == "rho":
            text += f" @ {self.multiple}*rho_I"
        return text


@dataclass(frozen=True)
class FptResult:
    query: FlagQuery
    fpt: Fraction
    a_invariant: int | None
    gorenstein: bool
    methods: tuple[str, ...]
    witnesses: dict[str, Fraction] = field(compare=False)
    f_pure: bool = True

    @property
    def lct(self) -> Fraction:
        # char-free answers, so the large-p limit is the value itself
        return self.fpt


# -- individual methods -------------------------------------------------------


def fpt_typeA_flag_formula(n: int, ds: Sequence[int]) -> int:
    """``sum_{i=2}^{r+1} (d_i - d_{i-2})`` with ``d_0 = 0`` and ``d_{r+1} = n``."""
    ds = list(ds)
    if not ds or ds != sorted(set(ds)) or ds[0] < 1 or ds[-1] > n - 1:
        raise QueryError(f"ds must be strictly increasing in [1, {n - 1}], got {ds}")
    ext = [0] + ds + [n]
    return sum(ext[i] - ext[i - 2] for i in range(2, len(ext)))


def fpt_chain_method(q: FlagQuery) -> int:
    """Principal-chain length of the ASL lattice of the natural embedding."""
    if q.weight is not None:
        raise MethodUnavailable("chain method covers only the natural embedding")
    typ = q.type
    if typ.family == "A":
        spec = YoungLatticeSpec(typ.rank + 1, q.parab.removed)
        return principal_chain(build_young(spec)).length
    if not q.parab.is_maximal or q.d not in minuscule_indices(typ):
        raise MethodUnavailable(f"no ASL lattice for {q.label()}")
    # the B lattice of Lie rank m lives in I(m, 2m+2); minuscule_lattice takes the Lie rank
    return principal_chain(minuscule_lattice(typ, None, q.d)).length


def fpt_root_method(q: FlagQuery) -> int:
    """``-a(R_d)`` read off ``2 rho_I = -a(R_d) varpi_d``."""
    if not q.parab.is_maximal:
        raise MethodUnavailable("root-sum method needs a maximal parabolic")
    rs = root_system(q.type)
    weight = two_rho_I(rs, q.parab)
    d = q.d
    others = [c for i, c in enumerate(weight, start=1) if i != d]
    if any(others) or weight[d - 1] <= 0:
        raise AssertionError(f"2rho_I = {weight} is not a positive multiple of varpi_{d}")
    return weight[d - 1]


def fpt_hypersurface_Dn_d1(n: int) -> int:
    """``SO_2n / P_1`` is a quadric in ``2n`` variables: ``-a = 2n - 2``."""
    RootSystemType("D", n)
    a = -2 * n + 2
    return -a


def fpt_dim_Cn_d1(n: int) -> int:
    """``Sp_2n / P_1 = P^{2n-1}`` has a polynomial coordinate ring in ``2n`` variables."""
    RootSystemType("C", n)
    return 2 * n


def _closed_form(q: FlagQuery) -> int:
    typ = q.type
    if typ.family == "A":
        return fpt_typeA_flag_formula(typ.rank + 1, q.parab.removed)
    if typ.family == "C" and q.parab.removed == (1,):
        return fpt_dim_Cn_d1(typ.rank)
    raise MethodUnavailable(f"no closed form for {q.label()}")


def _hypersurface(q: FlagQuery) -> int:
    if q.type.family == "D" and q.parab.removed == (1,):
        return fpt_hypersurface_Dn_d1(q.type.rank)
    raise MethodUnavailable("hypersurface method is only for D_n, d = 1")


_BASE_METHODS: tuple[tuple[str, Callable[[FlagQuery], int]], ...] = (
    ("chain", fpt_chain_method),
    ("root-sum", fpt_root_method),
    ("closed-form", _closed_form),
    ("hypersurface", _hypersurface),
)


def natural_embedding_values(q: FlagQuery, strict: bool = True) -> dict[str, Fraction]:
    """Run the base methods on the natural embedding underlying ``q``."""
    base = FlagQuery(q.type, q.parab)
    out: dict[str, Fraction] = {}
    for tag, method in _BASE_METHODS:
        try:
            out[tag] = Fraction(method(base))
        except MethodUnavailable:
            continue
        if not strict:
            break
    if not out:
        raise QueryError(
            f"no method in scope for {base.label()}: non-maximal parabolics are covered only in type A "
            "(or with a rho multiple)"
        )
    return out


def _agree(q: FlagQuery, witnesses: dict[str, Fraction]) -> Fraction:
    values = set(witnesses.values())
    if len(values) != 1:
        raise MethodDisagreement(q, witnesses)
    return values.pop()


def fpt_veronese(q: FlagQuery, strict: bool = True) -> FptResult:
    """``fpt(R_{m varpi_d}) = -a(R_d) / m``; Gorenstein iff ``m`` divides ``a(R_d)``."""
    if not q.parab.is_maximal:
        raise QueryError("Veronese law needs a maximal parabolic")
    m = q.multiple
    if m < 1:
        raise QueryError(f"Veronese degree must be >= 1, got {m}")
    witnesses = natural_embedding_values(q, strict)
    base = _agree(q, witnesses)
    fpt = base / m
    gorenstein = base.numerator % m == 0
    methods = tuple(witnesses)
    if m > 1:
        witnesses["veronese"] = fpt
        methods += ("veronese",)
    a = -int(fpt) if gorenstein else None
    return FptResult(q, fpt, a, gorenstein, methods, witnesses)


def fpt_rho_multiple(q: FlagQuery) -> FptResult:
    """``fpt(R_{m rho_I}) = 2 / m`` on a non-maximal parabolic; Gorenstein iff ``m`` is 1 or 2."""
    if q.parab.is_maximal:
        raise QueryError("m*rho_I law needs a non-maximal parabolic")
    m = q.multiple
    witnesses = {"closed-form": Fraction(2)}
    fpt = Fraction(2, m)
    methods: tuple[str, ...] = ("closed-form",)
    if m > 1:
        witnesses["veronese"] = fpt
        methods += ("veronese",)
    gorenstein = m in (1, 2)
    a = -int(fpt) if gorenstein else None
    return FptResult(q, fpt, a, gorenstein, methods, witnesses)


def evaluate(q: FlagQuery, strict: bool = True) -> FptResult:
    """Run every applicable method (``strict``) or the first one, and assemble the result."""
    if q.weight == "rho":
        return fpt_rho_multiple(q)
    if q.weight == "fundamental":
        return fpt_veronese(q, strict)
    witnesses = natural_embedding_values(q, strict)
    fpt = _agree(q, witnesses)
    # natural embeddings in scope are Gorenstein, so fpt = -a is integral
    return FptResult(q, fpt, -int(fpt), True, tuple(witnesses), witnesses)


# -- tables -------------------------------------------------------------------


@dataclass(frozen=True)
class TableCell:
    type: RootSystemType
    d: int
    result: FptResult

    @property
    def fpt(self) -> Fraction:
        return self.result.fpt


@dataclass(frozen=True)
class TableRow:
    label: str
    indices: str
    variety: str
    formula: str
    cells: tuple[TableCell, ...]


TABLE1_CAPTION = "The F-pure threshold of minuscule Grassmannians"
TABLE2_CAPTION = "The F-pure threshold of exceptional type Grassmannians"

# family label, group, formula in the Lie rank, first rank
_TABLE1_FAMILIES = (
    ("A", "SL_{r+1}", "r+1", 1),
    ("B", "SO_{2r+1}", "2r", 2),
    ("C", "Sp_{2r}", "2r", 2),
    ("D", "SO_{2r}", "2(r-1)", 3),
)


def _cell(typ: RootSystemType, d: int, strict: bool) -> TableCell:
    q = FlagQuery(typ, ParabolicSpec(typ.rank, (d,)))
    return TableCell(typ, d, evaluate(q, strict))


def table1(rank_bound: int = 8, strict: bool = True) -> list[TableRow]:
    """Minuscule Grassmannians; the infinite families are evaluated for ranks up to ``rank_bound``."""
    if rank_bound < 1:
        raise QueryError("rank bound must be at least 1")
    rows = []
    for fam, group, formula, first in _TABLE1_FAMILIES:
        cells = []
        for r in range(first, rank_bound + 1):
            typ = RootSystemType(fam, r)
            cells.extend(_cell(typ, d, strict) for d in sorted(minuscule_indices(typ)))
        indices = {"A": "1..r", "B": "r", "C": "1", "D": "1,r-1,r"}[fam]
        rows.append(TableRow(f"{fam}_r", indices, f"{group}/P_d", formula, tuple(cells)))
    for r, formula in ((6, "12"), (7, "18")):
        typ = RootSystemType("E", r)
        ds = sorted(minuscule_indices(typ))
        cells = tuple(_cell(typ, d, strict) for d in ds)
        rows.append(TableRow(f"E_{r}", ",".join(map(str, ds)), f"E_{r}/P_d", formula, cells))
    return rows


def table2(strict: bool = True) -> list[TableRow]:
    """All maximal parabolics of the exceptional types."""
    rows = []
    for fam, r in (("G", 2), ("F", 4), ("E", 6), ("E", 7), ("E", 8)):
        typ = RootSystemType(fam, r)
        cells = tuple(_cell(typ, d, strict) for d in range(1, r + 1))
        values = ",".join(str(c.fpt) for c in cells)
        rows.append(TableRow(f"{fam}_{r}", ",".join(map(str, range(1, r + 1))), f"{fam}_{r}/P_d", values, cells))
    return rows


def render_table(rows: Sequence[TableRow], caption: str, by_rank: bool = False) -> str:
    """Plain-text rendering; ``by_rank`` lists one evaluated line per rank for the families."""
    header = ("Type", "Weight index d", "Grassmannian", "fpt(R_d)")
    lines: list[tuple[str, ...]] = [header]
    for row in rows:
        lines.append((row.label, row.indices, row.variety, row.formula))
        if by_rank:
            ranks: dict[int, list[TableCell]] = {}
            for c in row.cells:
                ranks.setdefault(c.type.rank, []).append(c)
            for r, cells in ranks.items():
                values = ",".join(str(c.fpt) for c in cells)
                ds = ",".join(str(c.d) for c in cells)
                lines.append((f"  {cells[0].type}", ds, "", values))
    widths = [max(len(line[k]) for line in lines) for k in range(4)]
    out = [caption]
    sep = "+-" + "-+-".join("-" * w for w in widths) + "-+"
    out.append(sep)
    for k, line in enumerate(lines):
        out.append("| " + " | ".join(v.ljust(w) for v, w in zip(line, widths)) + " |")
        if k == 0:
            out.append(sep)
    out.append(sep)
    return "\n".join(out)
