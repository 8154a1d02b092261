"""Cross-validation checks run by ``flagfpt selftest``."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Callable, Iterator

from .fpt_engine import FlagQuery, evaluate, fpt_root_method, fpt_typeA_flag_formula, table1, table2
from .lattices import (
    YoungLatticeSpec,
    build_idn,
    build_minuscule_tuple,
    build_minuscule_weightposet,
    build_young,
    principal_chain,
)
from .root_system import RootSystemType, minuscule_indices, root_system

GRASSMANNIAN_CHAIN = [(1, 2, 3, 4), (1, 2, 3, 5), (1, 2, 4, 6), (1, 3, 5, 7), (2, 4, 6, 7), (3, 5, 6, 7), (4, 5, 6, 7)]
FLAG_235_CHAIN = [
    (1, 2, 3, 4, 5), (1, 2, 3, 4, 6), (1, 2, 3, 5, 7), (1, 2, 4, 6, 7),
    (1, 3, 5), (2, 4, 6), (3, 5, 7), (4, 6), (5, 7), (6, 7),
]  # fmt: skip


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


def load_golden(path: str | Path | None = None) -> dict:
    if path is None:
        text = resources.files("flagfpt").joinpath("data/golden.json").read_text()
    else:
        text = Path(path).read_text()
    return json.loads(text)


def all_types(max_rank: int) -> list[RootSystemType]:
    types = [RootSystemType("A", r) for r in range(1, max_rank + 1)]
    types += [RootSystemType(f, r) for f in "BC" for r in range(2, max_rank + 1)]
    types += [RootSystemType("D", r) for r in range(3, max_rank + 1)]
    types += [RootSystemType("E", r) for r in (6, 7, 8)]
    types += [RootSystemType("F", 4), RootSystemType("G", 2)]
    return types


def _check_root_counts(max_rank: int) -> Iterator[Check]:
    expected = {"A": lambda n: n * (n + 1) // 2, "B": lambda n: n * n, "C": lambda n: n * n,
                "D": lambda n: n * (n - 1), "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
                "F": lambda n: 24, "G": lambda n: 6}  # fmt: skip
    bad = []
    for t in all_types(max_rank):
        got = len(root_system(t).positive_roots)
        if got != expected[t.family](t.rank):
            bad.append(f"{t}: {got}")
    yield Check("positive-root counts", not bad, "; ".join(bad))


def _check_table2(golden: dict, use_errata: bool) -> Iterator[Check]:
    errata = golden.get("errata", {}).get("table2", {}) if use_errata else {}
    for label, values in golden["table2"].items():
        t = RootSystemType.parse(label)
        for d, printed in enumerate(values, start=1):
            expected = printed
            note = ""
            fix = errata.get(label, {}).get(str(d))
            if fix is not None:
                expected = fix["corrected"]
                note = f" (printed {fix['printed']}, erratum applied)"
            got = fpt_root_method(FlagQuery.make(t.family, t.rank, [d]))
            yield Check(f"table2 {label} d={d}", got == expected, f"root-sum {got}, expected {expected}{note}")


def _check_table1(golden: dict, max_rank: int) -> Iterator[Check]:
    spec = golden["table1"]
    for row in table1(max_rank):
        for cell in row.cells:
            t = cell.type
            key = f"E{t.rank}" if t.family == "E" else t.family
            slope, offset = spec[key]
            expected = slope * t.rank + offset
            res = cell.result
            ok = res.fpt == expected and len(res.methods) >= 2
            yield Check(f"table1 {t} d={cell.d}", ok, f"fpt {res.fpt} via {'+'.join(res.methods)}, expected {expected}")


def _check_type_a(max_n: int) -> Iterator[Check]:
    bad = []
    total = 0
    for n in range(2, max_n + 1):
        for r in range(1, n):
            for ds in combinations(range(1, n), r):
                total += 1
                chain = principal_chain(build_young(YoungLatticeSpec(n, ds))).length
                formula = fpt_typeA_flag_formula(n, ds)
                if chain != formula or formula != n + ds[-1] - ds[0]:
                    bad.append(f"n={n} ds={ds}: chain {chain} formula {formula}")
    yield Check(f"type A flags n<={max_n} ({total} parabolics)", not bad, "; ".join(bad[:5]))


def _check_examples() -> Iterator[Check]:
    got = list(principal_chain(build_idn(4, 7)).elements)
    yield Check("Gr(4,7) principal chain", got == GRASSMANNIAN_CHAIN, str(got))
    got = list(principal_chain(build_young(YoungLatticeSpec(7, (2, 3, 5)))).elements)
    yield Check("Fl(2,3,5) principal chain", got == FLAG_235_CHAIN, str(got))


def _check_minuscule(max_rank: int) -> Iterator[Check]:
    for t in all_types(min(max_rank, 6)):
        if t.family not in "ABD":
            continue
        rs = root_system(t)
        for d in sorted(minuscule_indices(t)):
            if t.family == "D" and d == 1:
                continue
            tup = build_minuscule_tuple(t, d=d)
            wt = build_minuscule_weightposet(rs, d)
            size = comb(t.rank + 1, d) if t.family == "A" else 2 ** (t.rank - 1 if t.family == "D" else t.rank)
            lt, lw = principal_chain(tup).length, principal_chain(wt).length
            ok = len(tup) == len(wt) == size and lt == lw
            yield Check(f"minuscule models {t} d={d}", ok, f"sizes {len(tup)}/{len(wt)} (expected {size}), chains {lt}/{lw}")
    for t, d, size, chain in ((RootSystemType("E", 6), 1, 27, 12), (RootSystemType("E", 6), 6, 27, 12),
                              (RootSystemType("E", 7), 7, 56, 18)):  # fmt: skip
        p = build_minuscule_weightposet(root_system(t), d)
        got = principal_chain(p).length
        yield Check(f"minuscule orbit {t} d={d}", len(p) == size and got == chain, f"size {len(p)}, chain {got}")


def _check_laws(max_m: int = 12) -> Iterator[Check]:
    bad = []
    for t in all_types(4):
        for d in range(1, t.rank + 1):
            base = evaluate(FlagQuery.make(t.family, t.rank, [d])).fpt
            for m in range(1, max_m + 1):
                res = evaluate(FlagQuery.make(t.family, t.rank, [d], veronese=m))
                if res.fpt != base / m or res.gorenstein != (base.numerator % m == 0) or res.lct != res.fpt:
                    bad.append(f"{t} d={d} m={m}")
    yield Check("Veronese law m*varpi_d", not bad, "; ".join(bad[:5]))
    bad = []
    for t in all_types(4):
        if t.rank < 2:
            continue
        for m in range(1, max_m + 1):
            res = evaluate(FlagQuery.make(t.family, t.rank, range(1, t.rank + 1), rho_multiple=m))
            if res.fpt != Fraction(2, m) or res.gorenstein != (m in (1, 2)) or res.lct != res.fpt:
                bad.append(f"{t} m={m}")
    yield Check("rho law m*rho_I", not bad, "; ".join(bad[:5]))


def run_checks(max_rank: int = 8, golden_path: str | Path | None = None, use_errata: bool = True) -> list[Check]:
    golden = load_golden(golden_path)
    groups: list[Callable[[], Iterator[Check]]] = [
        lambda: _check_root_counts(max_rank),
        lambda: _check_table2(golden, use_errata),
        lambda: _check_table1(golden, max_rank),
        lambda: _check_type_a(min(max_rank + 1, 8)),
        _check_examples,
        lambda: _check_minuscule(max_rank),
        _check_laws,
    ]
    out: list[Check] = []
    for group in groups:
        try:
            out.extend(group())
        except Exception as exc:  # a crashing group is a failed check, not a crashed selftest
            out.append(Check(getattr(group, "__name__", "check group"), False, f"{type(exc).__name__}: {exc}"))
    return out
