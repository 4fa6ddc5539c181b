"""Named codes shipped with the package and the table rows they reproduce."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Callable

import numpy as np

from . import codes as cd
from .rootlattices import RootLatticeSpec


@lru_cache(maxsize=None)
def load(name: str) -> cd.Code:
    """A shipped code by file stem, e.g. ``load("golay24")``."""
    text = resources.files("adelattice").joinpath("data", f"{name}.code").read_text()
    return cd.parse_code(text, name=name)


def available() -> list[str]:
    root = resources.files("adelattice").joinpath("data")
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".code"))


def direct_sum(*parts: cd.Code, name: str = "") -> cd.Code:
    """Block-diagonal generator matrix of codes over one ring."""
    spec = parts[0].spec
    m = sum(p.length for p in parts)
    rows, off = [], 0
    for p in parts:
        if p.spec != spec:
            raise ValueError("direct sum needs a common ring")
        for g in p.generators:
            row = np.zeros(m, dtype=np.int64)
            row[off : off + p.length] = g
            rows.append(row)
        off += p.length
    gens = np.array(rows, dtype=np.int64).reshape(-1, m)
    return cd.Code(spec, m, gens, name)


def crt_pair(name: str) -> cd.Code:
    """CRT(C, C^perp) for one of the binary codes c6_k, c3_k, c2, c1."""
    c = load(name)
    out = cd.crt_combine(c, cd.dual_code(c))
    out.name = f"CRT({name},{name}^perp)"
    return out


@dataclass(frozen=True)
class TableRow:
    table: str
    code_name: str
    spec: RootLatticeSpec
    expected: str
    build: Callable[[], cd.Code] | None = None
    source: str = ""

    @property
    def has_code(self) -> bool:
        return self.build is not None


def _A(n):
    return RootLatticeSpec("A", n)


def _D(n, r):
    return RootLatticeSpec("D", n, r)


_PS = "Pless-Sloane 1975 classification"

TABLE_ROWS: list[TableRow] = [
    # A_1 over Z/2
    *[
        TableRow("A1/Z2", f"{c}24", _A(1), lab, None, _PS)
        for c, lab in zip("ABCDEF", ["2D12", "D10+2E7", "3D8", "4D6", "D24", "6D4"])
    ],
    TableRow("A1/Z2", "G24", _A(1), "24A1", lambda: load("golay24"), "extended binary Golay code"),
    TableRow("A1/Z2", "3E8", _A(1), "3E8",
             lambda: direct_sum(*[load("hamming8")] * 3, name="3e8"), "three extended Hamming codes"),
    TableRow("A1/Z2", "E8+E16", _A(1), "E8+D16",
             lambda: direct_sum(load("hamming8"), load("d16plus"), name="e8+d16+"), "e8 plus d16+"),
    # A_2 over Z/3
    TableRow("A2/Z3", "G12", _A(2), "12A2", lambda: load("ternary_golay12"), "extended ternary Golay code"),
    TableRow("A2/Z3", "4C3(12)", _A(2), "4E6", None, "Mallows-Pless-Sloane ternary classification"),
    TableRow("A2/Z3", "3E4", _A(2), "3E8",
             lambda: direct_sum(*[load("tetracode")] * 3, name="3tetracode"), "three tetracodes"),
    # A_3 over Z/4
    TableRow("A3/Z4", "O8", _A(3), "8A3", lambda: load("octacode"), "octacode"),
    *[
        TableRow("A3/Z4", c, _A(3), lab, None, "Conway-Sloane Z4 classification")
        for c, lab in [("Q8", "4D6"), ("K8", "D24"), ("K8'", "2D12")]
    ],
    # A_4 over Z/5
    TableRow("A4/Z5", "C2^3", _A(4), "3E8",
             lambda: direct_sum(*[load("z5_c2")] * 3, name="3c2"), "three copies of span{(1,2)}"),
    TableRow("A4/Z5", "F6", _A(4), "6A4", None, "Leon-Pless-Sloane GF(5) classification"),
    TableRow("A6/Z7", "C4", _A(6), "4A6", None, "Pless GF(7) self-dual codes"),
    TableRow("A8/Z9", "C9,3,1", _A(8), "3E8", None, "Balmaceda-Betty-Nemenzo Z9 classification"),
    TableRow("A8/Z9", "C9,3,2", _A(8), "3A8", None, "Balmaceda-Betty-Nemenzo Z9 classification"),
    TableRow("A12/Z13", "C13,2", _A(12), "2A12", lambda: load("z13_c2"), "span{(1,5)} over Z13"),
    TableRow("A24/Z25", "<5>", _A(24), "A24", lambda: load("z25_five"), "printed"),
    # D_n over F2+uF2
    *[
        TableRow(f"D{n}/F2u", c, _D(n, "F2U"), lab, None, "Dougherty-Gaborit-Harada-Sole / Type IV F2+uF2 tables")
        for n, c, lab in [
            (4, "K6", "D24"), (4, "[6,2]_d4d2a", "D16+E8"), (4, "[6,3]_3d2a", "3E8"), (4, "[6,3]_3d2d", "3D8"),
            (6, "[4,1]_d4(K4)", "D24"), (6, "[4,2]_2d2(D4)", "2D12"), (12, "K2", "D24"),
        ]
    ],
    # D_n over F4
    TableRow("D4/F4", "E6", _D(4, "F4"), "6D4", lambda: load("hexacode"), "hexacode"),
    TableRow("D4/F4", "3C2", _D(4, "F4"), "3E8",
             lambda: direct_sum(*[load("f4_c2")] * 3, name="3c2"), "three copies of span{(1,1)}"),
    TableRow("D6/F4", "C4", _D(6, "F4"), "4D6", None, "Gaborit F4 Euclidean self-dual codes"),
    TableRow("D12/F4", "C2", _D(12, "F4"), "D24", lambda: load("f4_c2"), "span{(1,1)} over F4"),
    # D_n over F2xF2, generator matrices printed
    *[
        TableRow("D4/F2xF2", f"CRT(C6,{k},C6,{k}^perp)", _D(4, "F2xF2"), lab,
                 (lambda k=k: crt_pair(f"c6_{k}")), "printed")
        for k, lab in zip(range(1, 5), ["D24", "D16+E8", "3E8", "2D12"])
    ],
    *[
        TableRow("D8/F2xF2", f"CRT(C3,{k},C3,{k}^perp)", _D(8, "F2xF2"), lab,
                 (lambda k=k: crt_pair(f"c3_{k}")), "printed")
        for k, lab in zip(range(1, 4), ["3E8", "D16+E8", "D24"])
    ],
    TableRow("D12/F2xF2", "CRT(C2,C2^perp)", _D(12, "F2xF2"), "D24", lambda: crt_pair("c2"), "printed"),
    TableRow("D24/F2xF2", "CRT(C1,C1^perp)", _D(24, "F2xF2"), "D24", lambda: crt_pair("c1"), "printed"),
    # E_6 over Z/3
    TableRow("E6/Z3", "tetracode", RootLatticeSpec("E", 6), "4E6", lambda: load("tetracode"), "tetracode"),
]
