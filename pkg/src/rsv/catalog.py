"""Named semigroups and the constructions used to build them.

Element-list entries are completed with zero: every product that the
definition does not mention equals ``0``.  Entries that are only given by
defining relations are enumerated from their presentation.  Right-hand
versions are transposed tables of the left-hand ones.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from .algebra import (
    FiniteSemigroup,
    checked,
    dual,
    find_identity,
    is_group,
    relabel,
)
from .caps import DEFAULT_CAPS, Caps
from .rewriting import Presentation, ZERO, enumerate_presentation, parse_presentation

__all__ = [
    "CATALOG_NAMES",
    "CatalogKey",
    "INDICATOR_PRESENTATIONS",
    "ReesMatrixSpec",
    "brandt",
    "catalog_get",
    "coset_extension",
    "cyclic_group",
    "enumerate_presentation",
    "is_b2_sandwich",
    "indicator_presentation",
    "parse_key",
    "rees_matrix",
]


# -- generic builders ------------------------------------------------------


def from_products(
    label: str,
    elements: Sequence[str],
    products: Mapping[tuple[str, str], str],
    zero: str = "0",
    notes: Iterable[str] = (),
) -> FiniteSemigroup:
    """Table from the listed products; everything else is ``zero``."""
    idx = {e: i for i, e in enumerate(elements)}
    z = idx[zero]
    table = [[z] * len(elements) for _ in elements]
    for (a, b), c in products.items():
        table[idx[a]][idx[b]] = idx[c]
    return checked(FiniteSemigroup(label, elements, table, z, tuple(notes)))


def from_function(label: str, elements: Sequence[str], op: Callable[[str, str], str], zero: str | None = None) -> FiniteSemigroup:
    idx = {e: i for i, e in enumerate(elements)}
    table = [[idx[op(a, b)] for b in elements] for a in elements]
    return checked(FiniteSemigroup(label, elements, table, idx[zero] if zero is not None else None))


def _pairs(spec: str) -> dict[tuple[str, str], str]:
    """``"ab=c; xy=z"`` with one-letter factors -> {("a","b"): "c", ...}."""
    out = {}
    for item in spec.split(";"):
        lhs, rhs = (s.strip() for s in item.split("="))
        out[(lhs[0], lhs[1])] = rhs
    return out


# -- groups and Rees matrix semigroups -------------------------------------


def cyclic_group(k: int) -> FiniteSemigroup:
    """Z_k with elements e, g, g^2, ..."""
    if k < 1:
        raise ValueError("cyclic group order must be >= 1")
    labels = ["e"] + ["g" if i == 1 else f"g^{i}" for i in range(1, k)]
    table = [[(a + b) % k for b in range(k)] for a in range(k)]
    return checked(FiniteSemigroup(f"Z{k}", labels, table))


@dataclass(frozen=True)
class ReesMatrixSpec:
    group: FiniteSemigroup
    l_size: int
    r_size: int
    P: tuple[tuple[int | None, ...], ...]  # r_size rows, l_size columns; None = 0

    def __post_init__(self):
        P = tuple(tuple(v for v in row) for row in self.P)
        object.__setattr__(self, "P", P)
        if self.l_size < 1 or self.r_size < 1:
            raise ValueError("|L| and |R| must be positive")
        if not is_group(self.group):
            raise ValueError(f"{self.group.label} is not a group")
        if len(P) != self.r_size or any(len(row) != self.l_size for row in P):
            raise ValueError(f"sandwich matrix must be {self.r_size}x{self.l_size} (|R| x |L|)")
        for row in P:
            for v in row:
                if v is not None and not 0 <= v < len(self.group):
                    raise ValueError(f"sandwich entry {v} is not a group element")
        for r, row in enumerate(P):
            if all(v is None for v in row):
                raise ValueError(f"sandwich matrix row {r + 1} is all zero")
        for l in range(self.l_size):
            if all(P[r][l] is None for r in range(self.r_size)):
                raise ValueError(f"sandwich matrix column {l + 1} is all zero")

    @classmethod
    def from_pattern(cls, group: FiniteSemigroup, pattern: Sequence[Sequence]) -> ReesMatrixSpec:
        """Build from labels; ``"0"`` / ``None`` / ``0`` (int) mark zero entries,
        ``1`` (int) the group identity."""
        e = find_identity(group)
        P = []
        for row in pattern:
            out = []
            for v in row:
                if v is None or v == "0" or v == 0:
                    out.append(None)
                elif v == 1 and not isinstance(v, bool):
                    out.append(e)
                else:
                    out.append(group.index(str(v)))
            P.append(out)
        return cls(group, len(P[0]), len(P), tuple(tuple(r) for r in P))


def rees_matrix(spec: ReesMatrixSpec, label: str | None = None) -> FiniteSemigroup:
    """M0(G; L, R, P): triples (l, g, r) plus 0, with
    (l1, g1, r1)(l2, g2, r2) = (l1, g1 p[r1][l2] g2, r2) or 0."""
    G, P = spec.group, spec.P
    ng, nr = len(G), spec.r_size
    triples = [(l, g, r) for l in range(spec.l_size) for g in range(ng) for r in range(nr)]
    pos = {t: i for i, t in enumerate(triples)}
    z = len(triples)
    table = []
    for l1, g1, r1 in triples:
        row = []
        for l2, g2, r2 in triples:
            p = P[r1][l2]
            row.append(z if p is None else pos[(l1, G.product([g1, p, g2]), r2)])
        row.append(z)
        table.append(row)
    table.append([z] * (z + 1))
    labels = [f"({l + 1},{G.elements[g]},{r + 1})" for l, g, r in triples] + ["0"]
    return checked(FiniteSemigroup(label or f"M0({G.label};{spec.l_size},{spec.r_size})", labels, table, z))


def brandt(G: FiniteSemigroup, k: int, label: str | None = None) -> FiniteSemigroup:
    if k < 1:
        raise ValueError("Brandt size must be >= 1")
    e = find_identity(G)
    if e is None:
        raise ValueError(f"{G.label} is not a group")
    P = tuple(tuple(e if i == j else None for j in range(k)) for i in range(k))
    return rees_matrix(ReesMatrixSpec(G, k, k, P), label or f"B({G.label},{k})")


def is_b2_sandwich(spec: ReesMatrixSpec) -> bool:
    """True iff the zero pattern of P is block diagonal (after permuting
    rows and columns) with zero-free blocks."""
    parent = list(range(spec.r_size + spec.l_size))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for r, row in enumerate(spec.P):
        for l, v in enumerate(row):
            if v is not None:
                parent[find(r)] = find(spec.r_size + l)
    for r, row in enumerate(spec.P):
        for l, v in enumerate(row):
            if v is None and find(r) == find(spec.r_size + l):
                return False
    return True


def coset_extension(G: FiniteSemigroup, H: Iterable[int], side: str = "left") -> FiniteSemigroup:
    """(G:H)_l or (G:H)_r: G together with its cosets of H and a zero.

    Left: g1 (g2 H) = g1 g2 H, cosets times anything else is 0.
    Right: (H g1) g2 = H g1 g2, anything times a coset is 0.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    e = find_identity(G)
    if e is None or not is_group(G):
        raise ValueError(f"{G.label} is not a group")
    H = frozenset(H)
    if e not in H or any(G.table[a][b] not in H for a in H for b in H):
        raise ValueError("H is not a subgroup")
    if any(not any(G.table[a][b] == e and b in H for b in H) for a in H):
        raise ValueError("H is not a subgroup")
    ng = len(G)
    if side == "left":
        coset_of = [frozenset(G.table[g][h] for h in H) for g in range(ng)]
    else:
        coset_of = [frozenset(G.table[h][g] for h in H) for g in range(ng)]
    cosets = sorted(set(coset_of), key=min)
    cidx = {c: ng + i for i, c in enumerate(cosets)}
    z = ng + len(cosets)
    labels = list(G.elements)
    for c in cosets:
        rep = G.elements[min(c)]
        labels.append(f"{rep}H" if side == "left" else f"H{rep}")
    labels.append("0")
    table = [[z] * (z + 1) for _ in range(z + 1)]
    for a in range(ng):
        for b in range(ng):
            table[a][b] = G.table[a][b]
    for ci, c in enumerate(cosets):
        rep = min(c)
        for g in range(ng):
            if side == "left":
                table[g][ng + ci] = cidx[coset_of[G.table[g][rep]]]
            else:
                table[ng + ci][g] = cidx[coset_of[G.table[rep][g]]]
    name = "l" if side == "left" else "r"
    return checked(FiniteSemigroup(f"({G.label}:H)_{name}", labels, table, z))


# -- presentations of the indicator semigroups ----------------------------


def _k_relations(n: int) -> str:
    rels = [f"y^2 = y^{n + 2}", "x^2 = 0", "yxy = 0"]
    rels += [f"x y^{q} x = 0" for q in range(2, n + 1)]
    rels.append(f"xyx = x y^{n + 1} x")
    return "; ".join(rels)


_INTRO = {
    1: "gens: x, y\nrels: x = x^2; y^2 = 0; xy = yx",
    2: "gens: x, y\nrels: x^2 = 0; y^2 = 0; xyx = yxy",
    3: "gens: x, y\nrels: x^2 = x^3; xy = y; yx^2 = 0; y^2 = 0",
    4: "gens: x, y\nrels: x^2 = x^3; yx = y; x^2y = 0; y^2 = 0",
    5: "gens: x\nrels: x^3 = 0",
    6: "gens: x, y\nrels: x^2 = 0; y = y^2; yxy = 0",
    8: "gens: x, y\nrels: xy = xyx = xy^2; yx = yxy = yx^2; x^2 = x^2y = x^3; y^2 = y^2x = y^3",
    9: "gens: x, y\nrels: xy = yxy = x^2y; yx = xyx = y^2x; x^2 = yx^2 = x^3; y^2 = xy^2 = y^3",
    10: "gens: a, x, y\nrels: a^2 = x^2 = y^2 = xy = yx = 0; ax = axax; ay = ayay; xa = xaxa; ya = yaya; xay = xax; yax = yay",
    11: "gens: a, x, y\nrels: a^2 = x^2 = y^2 = xy = yx = 0; xa = xaxa; ya = yaya; ax = axax; ay = ayay; xay = yay; yax = xax",
    12: "gens: a, x, y\nrels: x = x^2; y = y^2; a = a^2; xy = x; yx = y; ax = xa = x; ay = ya = y",
    13: "gens: a, x, y\nrels: x = x^2; y = y^2; a = a^2; xy = y; yx = x; ax = xa = x; ay = ya = y",
}

# presentation number -> catalog name of the indicator semigroup it defines
INDICATOR_PRESENTATIONS = {
    1: "A", 2: "B", 3: "C_lambda", 4: "C_rho", 5: "N3", 6: "D", 7: "K",
    8: "F_lambda", 9: "F_rho", 10: "W_lambda", 11: "W_rho", 12: "L2_1", 13: "R2_1",
}


def indicator_presentation(number: int, n: int = 1) -> Presentation:
    """Presentations 1-13 of the indicator semigroups; 7 depends on ``n``."""
    if number == 7:
        if n < 1:
            raise ValueError("n must be >= 1")
        return parse_presentation("gens: x, y\nrels: " + _k_relations(n), f"P7(n={n})")
    try:
        return parse_presentation(_INTRO[number], f"P{number}")
    except KeyError:
        raise ValueError(f"no presentation number {number}") from None


# -- catalog ---------------------------------------------------------------


@dataclass(frozen=True)
class CatalogKey:
    name: str
    parameter: int | None = None

    def __post_init__(self):
        if self.name not in CATALOG_NAMES and not re.fullmatch(r"Z[1-9][0-9]*", self.name):
            raise KeyError(f"unknown catalog entry {self.name!r}")
        if (self.parameter is not None) != (self.name == "K"):
            raise ValueError("a parameter is required for K and only for K")
        if self.parameter is not None and self.parameter < 1:
            raise ValueError("K(n) needs n >= 1")

    def __str__(self) -> str:
        return f"K({self.parameter})" if self.name == "K" else self.name


def parse_key(text: str, n: int | None = None) -> CatalogKey:
    """Accepts ``A``, ``K(2)``, ``K2``, ``K`` with ``n``, ``Z3``."""
    text = text.strip()
    m = re.fullmatch(r"K\(?(\d+)\)?", text)
    if m:
        return CatalogKey("K", int(m.group(1)))
    if text == "K":
        return CatalogKey("K", n if n is not None else 1)
    return CatalogKey(text)


def _by_presentation(label: str, text: str) -> FiniteSemigroup:
    return enumerate_presentation(parse_presentation(text, label), label=label)


def _build_A():
    return from_products("A", ["e", "y", "z", "0"], _pairs("ee=e; ey=z; ye=z; ez=z; ze=z"))


def _build_B():
    return from_products("B", ["x", "y", "a", "b", "c", "0"], _pairs("xy=a; yx=b; ax=c; xb=c; ya=c; by=c"))


def _build_C_lambda():
    return from_products(
        "C_lambda",
        ["x", "e", "y", "z", "0"],
        _pairs("xx=e; xe=e; ex=e; ee=e; xy=y; ey=y; yx=z; xz=z; ez=z"),
    )


def _build_N3():
    return from_products("N3", ["a", "b", "0"], _pairs("aa=b"))


def _build_D():
    return _by_presentation("D", "gens: x, e\nrels: e^2 = e; x^2 = 0; exe = 0")


def _build_K(n: int):
    return _by_presentation(f"K({n})", "gens: x, y\nrels: " + _k_relations(n))


def _build_F_lambda():
    return _by_presentation(
        "F_lambda",
        "gens: x, y\nrels: xy = xyx; yx = yxy; xy = xy^2; yx = yx^2; x^3 = x^2y = x^2; y^3 = y^2x = y^2",
    )


def _build_W_lambda():
    return _by_presentation(
        "W_lambda",
        "gens: a, x, y\nrels: a^2 = 0; x^2 = 0; y^2 = 0; xy = 0; yx = 0; axay = ax; ayax = ay; "
        "xay = xax; yax = yay; xaxa = xa; yaya = ya",
    )


def _build_L2_1():
    return _explicit("L2_1", ["a", "b", "e"], "aa=a; ab=a; ae=a; ea=a; bb=b; ba=b; eb=b; be=b; ee=e")


def _build_R2_1():
    return _explicit("R2_1", ["a", "b", "e"], "aa=a; ba=a; ae=a; ea=a; bb=b; ab=b; eb=b; be=b; ee=e")


def _explicit(label: str, elements: list[str], spec: str) -> FiniteSemigroup:
    prods = _pairs(spec)
    missing = [(a, b) for a in elements for b in elements if (a, b) not in prods]
    if missing:
        raise ValueError(f"{label}: products {missing} not specified")
    return from_function(label, elements, lambda a, b: prods[(a, b)])


def _build_N2():
    return from_products("N2", ["a", "0"], {})


def _build_A0():
    return _by_presentation("A0", "gens: x, y\nrels: x^2 = x; y^2 = y; yx = 0")


def _build_B2():
    S = brandt(cyclic_group(1), 2)
    # a = (1,2), b = (2,1), ab = (1,1), ba = (2,2)
    names = {"(1,e,2)": "a", "(2,e,1)": "b", "(1,e,1)": "ab", "(2,e,2)": "ba", "0": "0"}
    return relabel(S, [names[e] for e in S.elements], "B2")


def _build_A2():
    G = cyclic_group(1)
    S = rees_matrix(ReesMatrixSpec.from_pattern(G, [[1, 1], [0, 1]]))
    # a = (2,1) idempotent, b = (1,2) with b^2 = 0
    names = {"(2,e,1)": "a", "(1,e,2)": "b", "(2,e,2)": "ab", "(1,e,1)": "ba", "0": "0"}
    return relabel(S, [names[e] for e in S.elements], "A2")


def _build_S0():
    return from_products("S0", ["a", "b", "c", "0"], _pairs("ab=c; ba=c"))


def _build_S1l():
    return from_products("S1l", ["e", "a", "0"], _pairs("ee=e; ae=a"))


def _build_S2l():
    return from_products(
        "S2l",
        ["a", "u", "v", "e", "f", "0"],
        _pairs("ue=a; vf=a; ae=a; af=a; ee=e; ef=e; ff=f; fe=f"),
        notes=["reconstructed: zero adjoined and unmentioned products set to 0"],
    )


def _build_S3l():
    def op(y, z):
        if z != "x":
            return z
        return {"e": "e", "f": "e", "x": "e", "g": "f"}[y]

    return from_function("S3l", ["x", "e", "f", "g"], op)


_TL = ["(1,a)", "(1,b)", "(2,a)", "(2,b)", "1", "2", "a", "b", "0"]


def _build_Tl():
    def parse(s):
        if s.startswith("("):
            m, x = s[1:-1].split(",")
            return ("pair", int(m), x)
        if s == "0":
            return ("zero",)
        if s.isdigit():
            return ("lam", int(s))
        return ("x", s)

    def op(p, q):
        a, b = parse(p), parse(q)
        if a[0] == "zero" or b[0] == "zero":
            return "0"
        if a[0] == "pair" and b[0] == "pair":
            return f"({min(a[1], b[1])},{b[2]})"
        if b[0] != "pair":
            return "0"  # alpha*beta = 0 and (m,x)*n = (m,x)*y = 0
        if a[0] == "x":
            return b[2]
        m, n, y = a[1], b[1], b[2]
        return str(m) if m <= n else y

    return from_function("Tl", _TL, op, zero="0")


def _build_Ml():
    return from_products(
        "Ml",
        ["c", "a", "b", "e", "f", "0"],
        _pairs("ae=c; af=c; be=c; ce=c; cf=c; ef=e; ee=e; fe=f; ff=f"),
    )


_BUILDERS: dict[str, Callable[[], FiniteSemigroup]] = {
    "A": _build_A,
    "B": _build_B,
    "C_lambda": _build_C_lambda,
    "C_rho": lambda: dual(_build_C_lambda(), "C_rho"),
    "N3": _build_N3,
    "D": _build_D,
    "F_lambda": _build_F_lambda,
    "F_rho": lambda: dual(_build_F_lambda(), "F_rho"),
    "W_lambda": _build_W_lambda,
    "W_rho": lambda: dual(_build_W_lambda(), "W_rho"),
    "L2_1": _build_L2_1,
    "R2_1": _build_R2_1,
    "N2": _build_N2,
    "A0": _build_A0,
    "A2": _build_A2,
    "B2": _build_B2,
    "S0": _build_S0,
    "S1l": _build_S1l,
    "S1r": lambda: dual(_build_S1l(), "S1r"),
    "S2l": _build_S2l,
    "S2r": lambda: dual(_build_S2l(), "S2r"),
    "S3l": _build_S3l,
    "S3r": lambda: dual(_build_S3l(), "S3r"),
    "Tl": _build_Tl,
    "Tr": lambda: dual(_build_Tl(), "Tr"),
    "Ml": _build_Ml,
    "Mr": lambda: dual(_build_Ml(), "Mr"),
    "L2": lambda: _explicit("L2", ["a", "b"], "aa=a; ab=a; ba=b; bb=b"),
    "R2": lambda: _explicit("R2", ["a", "b"], "aa=a; ab=b; ba=a; bb=b"),
}

# K is parameterised; Z<k> (cyclic groups) are accepted as well
CATALOG_NAMES = tuple(list(_BUILDERS)[:13]) + ("K",) + tuple(list(_BUILDERS)[13:])


@lru_cache(maxsize=None)
def _get(key: CatalogKey) -> FiniteSemigroup:
    if key.name == "K":
        return _build_K(key.parameter)
    if key.name.startswith("Z") and key.name[1:].isdigit():
        return cyclic_group(int(key.name[1:]))
    return checked(_BUILDERS[key.name]())


def catalog_get(key: CatalogKey | str, n: int | None = None) -> FiniteSemigroup:
    if isinstance(key, str):
        key = parse_key(key, n)
    return _get(key)
