"""Finite semigroups given by Cayley tables.

Everything works on element *indices*; labels are only for display and for
the JSON interchange format.  Searches iterate in index order so that any
reported witness is the lexicographically first one.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .caps import DEFAULT_CAPS, Budget, CapExceeded, Caps
from .words import check_word

__all__ = [
    "FiniteSemigroup",
    "GreenStructure",
    "Homomorphism",
    "Inconclusive",
    "IndexPeriod",
    "InvalidSemigroup",
    "SeparationVerdict",
    "TargetSeparation",
    "ValidationReport",
    "adjoin_identity",
    "adjoin_zero",
    "are_isomorphic",
    "canonical_principal_factor_separation",
    "checked",
    "direct_product",
    "divides",
    "divisor_witness",
    "dual",
    "element_index_period",
    "eval_word",
    "find_homomorphisms",
    "find_identity",
    "find_zero",
    "from_json_dict",
    "generating_set",
    "green",
    "idempotents",
    "index_period",
    "is_0_simple",
    "is_completely_0_simple",
    "is_completely_simple",
    "is_group",
    "is_primitive_idempotent",
    "is_regular_element",
    "is_simple",
    "is_zero_multiplication",
    "isomorphism",
    "load_table",
    "principal_factor",
    "relabel",
    "restrict",
    "separates_by_targets",
    "subsemigroup_closure",
    "to_json_dict",
    "validate",
]


class InvalidSemigroup(ValueError):
    """Raised when a table fails associativity or zero checks."""


@dataclass(frozen=True)
class FiniteSemigroup:
    label: str
    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    zero: int | None = None
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        elements = tuple(str(e) for e in self.elements)
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "notes", tuple(self.notes))
        n = len(elements)
        if n == 0:
            raise ValueError("a semigroup needs at least one element")
        if len(set(elements)) != n:
            raise ValueError(f"{self.label}: element labels must be distinct")
        if len(table) != n or any(len(row) != n for row in table):
            raise ValueError(f"{self.label}: table must be {n}x{n}")
        if any(not 0 <= v < n for row in table for v in row):
            raise ValueError(f"{self.label}: table entries must lie in [0, {n})")
        if self.zero is not None and not 0 <= self.zero < n:
            raise ValueError(f"{self.label}: zero index out of range")

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"<FiniteSemigroup {self.label} |S|={len(self)}>"

    @cached_property
    def arr(self) -> np.ndarray:
        a = np.array(self.table, dtype=np.int64)
        a.setflags(write=False)
        return a

    @cached_property
    def _index(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.elements)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"{self.label} has no element {label!r}") from None

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def product(self, items: Iterable[int]) -> int:
        it = iter(items)
        acc = next(it)
        for x in it:
            acc = self.table[acc][x]
        return acc

    def power(self, a: int, k: int) -> int:
        return self.product([a] * k)

    def names(self, idx: Iterable[int]) -> list[str]:
        return [self.elements[i] for i in idx]


# -- validation ------------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    associativity: tuple[tuple[int, int, int], ...]
    zero: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.associativity and not self.zero

    def __bool__(self) -> bool:
        return self.ok


def validate(S: FiniteSemigroup) -> ValidationReport:
    """List every associativity failure ``(a, b, c)`` and zero failure."""
    t = S.arr
    n = len(S)
    left = t[t, :]  # left[a, b, c] = (ab)c
    right = t[np.arange(n)[:, None, None], t[None, :, :]]  # a(bc)
    bad = np.argwhere(left != right)
    assoc = tuple(tuple(int(v) for v in row) for row in bad)
    zero_bad: tuple[int, ...] = ()
    if S.zero is not None:
        z = S.zero
        zero_bad = tuple(int(a) for a in range(n) if t[z, a] != z or t[a, z] != z)
    return ValidationReport(assoc, zero_bad)


def checked(S: FiniteSemigroup) -> FiniteSemigroup:
    report = validate(S)
    if not report.ok:
        parts = []
        if report.associativity:
            a, b, c = report.associativity[0]
            parts.append(
                f"{len(report.associativity)} associativity violations, first at "
                f"({S.elements[a]}, {S.elements[b]}, {S.elements[c]})"
            )
        if report.zero:
            parts.append(f"declared zero {S.elements[S.zero]} is not absorbing")
        raise InvalidSemigroup(f"{S.label}: " + "; ".join(parts))
    return S


# -- JSON interchange ------------------------------------------------------


def to_json_dict(S: FiniteSemigroup) -> dict:
    return {
        "label": S.label,
        "elements": list(S.elements),
        "table": [list(row) for row in S.table],
        "zero": S.zero,
    }


def from_json_dict(data: Mapping) -> FiniteSemigroup:
    try:
        S = FiniteSemigroup(
            label=str(data.get("label", "S")),
            elements=data["elements"],
            table=data["table"],
            zero=data.get("zero"),
        )
    except (KeyError, TypeError) as e:
        raise ValueError(f"malformed table JSON: {e}") from None
    return checked(S)


def load_table(path) -> FiniteSemigroup:
    with open(path, encoding="utf-8") as fh:
        return from_json_dict(json.load(fh))


# -- basic structure -------------------------------------------------------


def find_zero(S: FiniteSemigroup) -> int | None:
    """The declared zero, or else the (unique) absorbing element if any."""
    if S.zero is not None:
        return S.zero
    t = S.arr
    for z in range(len(S)):
        if (t[z, :] == z).all() and (t[:, z] == z).all():
            return z
    return None


def find_identity(S: FiniteSemigroup) -> int | None:
    t = S.arr
    idx = np.arange(len(S))
    for e in range(len(S)):
        if (t[e, :] == idx).all() and (t[:, e] == idx).all():
            return e
    return None


def is_group(S: FiniteSemigroup) -> bool:
    e = find_identity(S)
    if e is None:
        return False
    t = S.arr
    return all((t[a, :] == e).any() and (t[:, a] == e).any() for a in range(len(S)))


def eval_word(S: FiniteSemigroup, w: str, asg: Mapping[str, int]) -> int:
    """Value of ``w`` under the assignment, folded left to right."""
    check_word(w)
    try:
        return S.product(asg[c] for c in w)
    except KeyError as e:
        raise KeyError(f"variable {e.args[0]!r} is not assigned") from None


def subsemigroup_closure(S: FiniteSemigroup, gens: Iterable[int]) -> frozenset[int]:
    gens = sorted(set(gens))
    if not gens:
        raise ValueError("need at least one generator")
    seen = set(gens)
    queue = list(gens)
    i = 0
    while i < len(queue):
        a = queue[i]
        i += 1
        for g in gens:
            p = S.table[a][g]
            if p not in seen:
                seen.add(p)
                queue.append(p)
    return frozenset(seen)


def restrict(S: FiniteSemigroup, subset: Iterable[int], label: str | None = None) -> FiniteSemigroup:
    keep = sorted(set(subset))
    pos = {a: i for i, a in enumerate(keep)}
    try:
        table = [[pos[S.table[a][b]] for b in keep] for a in keep]
    except KeyError:
        raise ValueError("subset is not closed under multiplication") from None
    z = find_zero(S)
    return FiniteSemigroup(
        label or f"{S.label}|sub",
        [S.elements[a] for a in keep],
        table,
        pos.get(z) if z is not None else None,
    )


def relabel(S: FiniteSemigroup, labels: Sequence[str], label: str | None = None) -> FiniteSemigroup:
    return FiniteSemigroup(label or S.label, labels, S.table, S.zero, S.notes)


def dual(S: FiniteSemigroup, label: str | None = None) -> FiniteSemigroup:
    """The antiisomorphic semigroup: same elements, transposed table."""
    n = len(S)
    table = [[S.table[b][a] for b in range(n)] for a in range(n)]
    return FiniteSemigroup(label or f"{S.label}^op", S.elements, table, S.zero, S.notes)


def idempotents(S: FiniteSemigroup) -> list[int]:
    return [a for a in range(len(S)) if S.table[a][a] == a]


def is_primitive_idempotent(S: FiniteSemigroup, e: int) -> bool:
    if S.table[e][e] != e:
        raise ValueError(f"{S.elements[e]} is not an idempotent")
    z = find_zero(S)
    if e == z:
        return False
    for f in idempotents(S):
        if f in (e, z):
            continue
        if S.table[e][f] == f and S.table[f][e] == f:
            return False
    return True


def is_regular_element(S: FiniteSemigroup, s: int) -> bool:
    t = S.arr
    return bool((t[t[s, :], s] == s).any())


# -- Green's relations -----------------------------------------------------


def _right_ideals(S: FiniteSemigroup) -> list[frozenset[int]]:
    return [frozenset(S.table[a]) | {a} for a in range(len(S))]


def _left_ideals(S: FiniteSemigroup) -> list[frozenset[int]]:
    n = len(S)
    return [frozenset(S.table[x][a] for x in range(n)) | {a} for a in range(n)]


def _two_sided_ideals(S: FiniteSemigroup) -> list[frozenset[int]]:
    t = S.arr
    out = []
    for a in range(len(S)):
        sa = t[:, a]
        out.append(frozenset(t[a, :].tolist()) | frozenset(sa.tolist()) | frozenset(t[sa, :].ravel().tolist()) | {a})
    return out


def _partition(keys: Sequence) -> tuple[tuple[int, ...], ...]:
    groups: dict = {}
    for a, k in enumerate(keys):
        groups.setdefault(k, []).append(a)
    return tuple(sorted(tuple(g) for g in groups.values()))


@dataclass(frozen=True)
class GreenStructure:
    r_classes: tuple[tuple[int, ...], ...]
    l_classes: tuple[tuple[int, ...], ...]
    j_classes: tuple[tuple[int, ...], ...]
    h_classes: tuple[tuple[int, ...], ...]
    j_order: tuple[tuple[int, int], ...]  # (i, j): J-class i lies below J-class j
    ideals: tuple[frozenset[int], ...] = field(repr=False, compare=False)

    @property
    def d_classes(self):
        return self.j_classes

    def j_class_of(self, a: int) -> int:
        for i, cls in enumerate(self.j_classes):
            if a in cls:
                return i
        raise IndexError(a)


def green(S: FiniteSemigroup) -> GreenStructure:
    R = _right_ideals(S)
    L = _left_ideals(S)
    J = _two_sided_ideals(S)
    j_classes = _partition(J)
    order = []
    for i, ci in enumerate(j_classes):
        for j, cj in enumerate(j_classes):
            if J[ci[0]] <= J[cj[0]]:
                order.append((i, j))
    return GreenStructure(
        r_classes=_partition(R),
        l_classes=_partition(L),
        j_classes=j_classes,
        h_classes=_partition(list(zip(R, L))),
        j_order=tuple(order),
        ideals=tuple(J),
    )


# -- periodicity -----------------------------------------------------------


@dataclass(frozen=True)
class IndexPeriod:
    index: int
    period: int


def element_index_period(S: FiniteSemigroup, s: int) -> IndexPeriod:
    seen = {}
    p, k = s, 1
    while p not in seen:
        seen[p] = k
        p = S.table[p][s]
        k += 1
    m = seen[p]
    return IndexPeriod(m, k - m)


def index_period(S: FiniteSemigroup) -> IndexPeriod:
    m, n = 1, 1
    for s in range(len(S)):
        ip = element_index_period(S, s)
        m = max(m, ip.index)
        n = math.lcm(n, ip.period)
    return IndexPeriod(m, n)


# -- ideals, principal factors, simplicity ---------------------------------


def _principal_factor_data(S: FiniteSemigroup, x: int, G: GreenStructure | None = None):
    G = G or green(S)
    cls = G.j_classes[G.j_class_of(x)]
    ideal = G.ideals[x]
    below = ideal - set(cls)
    members = list(cls)
    pos = {a: i for i, a in enumerate(members)}
    z = len(members)
    zero_label = "0"
    s_zero = find_zero(S)
    if below and s_zero is not None and s_zero in below:
        zero_label = S.elements[s_zero]
    labels = S.names(members)
    while zero_label in labels:
        zero_label += "'"
    table = [[pos.get(S.table[a][b], z) for b in members] + [z] for a in members]
    table.append([z] * (z + 1))
    K = FiniteSemigroup(f"K({S.elements[x]})", labels + [zero_label], table, z)
    return K, members, bool(below)


def principal_factor(S: FiniteSemigroup, x: int) -> FiniteSemigroup:
    """Rees quotient of J(x) by the ideal of elements strictly J-below ``x``.

    When nothing lies strictly below (``x`` is in the minimal ideal) a zero is
    adjoined so that every principal factor carries a zero.
    """
    return _principal_factor_data(S, x)[0]


def is_zero_multiplication(S: FiniteSemigroup) -> bool:
    z = find_zero(S)
    return z is not None and bool((S.arr == z).all())


def is_0_simple(S: FiniteSemigroup) -> bool:
    """Has a zero, S*S != {0}, and no ideals besides {0} and S."""
    z = find_zero(S)
    if z is None or len(S) < 2 or is_zero_multiplication(S):
        return False
    full = frozenset(range(len(S)))
    ideals = _two_sided_ideals(S)
    return all(ideals[a] == full for a in range(len(S)) if a != z)


def is_simple(S: FiniteSemigroup) -> bool:
    full = frozenset(range(len(S)))
    return all(I == full for I in _two_sided_ideals(S))


def _has_primitive_idempotent(S: FiniteSemigroup) -> bool:
    return any(is_primitive_idempotent(S, e) for e in idempotents(S) if e != find_zero(S))


def is_completely_0_simple(S: FiniteSemigroup) -> bool:
    return is_0_simple(S) and _has_primitive_idempotent(S)


def is_completely_simple(S: FiniteSemigroup) -> bool:
    return is_simple(S) and _has_primitive_idempotent(S)


# -- constructions ---------------------------------------------------------


def _fresh(label: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    while label in taken:
        label += "'"
    return label


def direct_product(S: FiniteSemigroup, T: FiniteSemigroup, label: str | None = None) -> FiniteSemigroup:
    m = len(T)
    elements = [f"({s},{t})" for s in S.elements for t in T.elements]
    table = [
        [S.table[a // m][b // m] * m + T.table[a % m][b % m] for b in range(len(elements))]
        for a in range(len(elements))
    ]
    zs, zt = find_zero(S), find_zero(T)
    zero = zs * m + zt if zs is not None and zt is not None else None
    return FiniteSemigroup(label or f"{S.label}x{T.label}", elements, table, zero)


def adjoin_identity(S: FiniteSemigroup, label: str | None = None) -> FiniteSemigroup:
    """S^1: always adds a new identity, even if S is already a monoid."""
    n = len(S)
    table = [list(row) + [a] for a, row in enumerate(S.table)]
    table.append(list(range(n + 1)))
    one = _fresh("1", S.elements)
    return FiniteSemigroup(label or f"{S.label}^1", list(S.elements) + [one], table, S.zero)


def adjoin_zero(S: FiniteSemigroup, label: str | None = None) -> FiniteSemigroup:
    n = len(S)
    table = [list(row) + [n] for row in S.table]
    table.append([n] * (n + 1))
    zero = _fresh("0", S.elements)
    return FiniteSemigroup(label or f"{S.label}^0", list(S.elements) + [zero], table, n)


# -- generating sets -------------------------------------------------------


@lru_cache(maxsize=512)
def generating_set(S: FiniteSemigroup, max_exhaustive: int = 4) -> tuple[int, ...]:
    """A smallest generating set, found by exhaustive search up to size 4.

    Elements outside S*S must belong to every generating set, so only the
    remaining slots are searched.  Past the exhaustive bound, a greedy
    reduction of the full element set is returned.
    """
    n = len(S)
    full = frozenset(range(n))
    products = set(S.arr.ravel().tolist())
    required = tuple(a for a in range(n) if a not in products)
    if required and subsemigroup_closure(S, required) == full:
        return required
    optional = [a for a in range(n) if a in products]
    for size in range(max(len(required), 1), max_exhaustive + 1):
        extra = size - len(required)
        if extra < 0:
            continue
        for combo in itertools.combinations(optional, extra):
            gens = tuple(sorted(required + combo))
            if subsemigroup_closure(S, gens) == full:
                return gens
    gens = list(range(n))
    for a in range(n):
        trial = [g for g in gens if g != a]
        if trial and subsemigroup_closure(S, trial) == full:
            gens = trial
    return tuple(gens)


# -- homomorphisms ---------------------------------------------------------


@dataclass(frozen=True)
class Homomorphism:
    source: FiniteSemigroup = field(repr=False)
    target: FiniteSemigroup = field(repr=False)
    map: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.map[a]

    def is_multiplicative(self) -> bool:
        img = np.array(self.map)
        return bool((img[self.source.arr] == self.target.arr[img[:, None], img[None, :]]).all())

    def as_labels(self) -> dict[str, str]:
        return {self.source.elements[a]: self.target.elements[b] for a, b in enumerate(self.map)}


@dataclass(frozen=True)
class Inconclusive:
    """A search stopped at a cap; never usable as a truth value."""

    cap: str
    limit: int

    def __bool__(self):
        raise TypeError("an Inconclusive outcome has no truth value")

    def __str__(self) -> str:
        return f"inconclusive ({self.cap}={self.limit})"


def _extend(S, T, gens, imgs, budget) -> dict[int, int] | None:
    """Close {(g, t)} under right multiplication inside S x T.

    Returns the induced map on the generated subsemigroup of S, or ``None``
    when the closure is not the graph of a function.
    """
    img: dict[int, int] = {}
    for g, t in zip(gens, imgs):
        if img.setdefault(g, t) != t:
            return None
    queue = list(img)
    gen_pairs = [(g, img[g]) for g in dict.fromkeys(gens)]
    i = 0
    st, tt = S.table, T.table
    while i < len(queue):
        s = queue[i]
        i += 1
        ts = img[s]
        budget.charge(len(gen_pairs))
        for g, tg in gen_pairs:
            p = st[s][g]
            q = tt[ts][tg]
            old = img.get(p)
            if old is None:
                img[p] = q
                queue.append(p)
            elif old != q:
                return None
    return img


def find_homomorphisms(
    S: FiniteSemigroup,
    T: FiniteSemigroup,
    surjective: bool = False,
    injective: bool = False,
    limit: int | None = None,
    caps: Caps = DEFAULT_CAPS,
    candidates: Sequence[Sequence[int]] | None = None,
    budget: Budget | None = None,
) -> list[Homomorphism]:
    """All homomorphisms S -> T (up to ``limit``), in lexicographic order of
    the generator images.

    Raises :class:`CapExceeded` when more than ``caps.hom_checks`` products
    are examined.
    """
    gens = generating_set(S)
    budget = budget or Budget(caps.hom_checks)
    if candidates is None:
        candidates = [range(len(T))] * len(gens)
    n_t = len(T)
    found: list[Homomorphism] = []

    def rec(depth: int, imgs: list[int]):
        if limit is not None and len(found) >= limit:
            return
        for t in candidates[depth]:
            trial = imgs + [t]
            if injective and len(set(trial)) < len(trial):
                continue
            m = _extend(S, T, gens[: depth + 1], trial, budget)
            if m is None:
                continue
            if injective and len(set(m.values())) < len(m):
                continue
            if depth + 1 < len(gens):
                rec(depth + 1, trial)
            else:
                mp = tuple(m[a] for a in range(len(S)))
                if surjective and len(set(mp)) < n_t:
                    continue
                found.append(Homomorphism(S, T, mp))
            if limit is not None and len(found) >= limit:
                return

    rec(0, [])
    return found


def _element_profiles(S: FiniteSemigroup) -> list[tuple]:
    R, L, J = _right_ideals(S), _left_ideals(S), _two_sided_ideals(S)
    z = find_zero(S)
    out = []
    for a in range(len(S)):
        ip = element_index_period(S, a)
        out.append((S.table[a][a] == a, ip.index, ip.period, a == z, len(R[a]), len(L[a]), len(J[a])))
    return out


def isomorphism(S: FiniteSemigroup, T: FiniteSemigroup, caps: Caps = DEFAULT_CAPS) -> Homomorphism | None:
    if len(S) != len(T):
        return None
    ps, pt = _element_profiles(S), _element_profiles(T)
    if sorted(ps) != sorted(pt):
        return None
    gens = generating_set(S)
    cands = [[b for b in range(len(T)) if pt[b] == ps[g]] for g in gens]
    homs = find_homomorphisms(S, T, injective=True, limit=1, caps=caps, candidates=cands)
    return homs[0] if homs else None


def are_isomorphic(S: FiniteSemigroup, T: FiniteSemigroup, caps: Caps = DEFAULT_CAPS) -> bool:
    return isomorphism(S, T, caps) is not None


def divisor_witness(T: FiniteSemigroup, S: FiniteSemigroup, caps: Caps = DEFAULT_CAPS):
    """Find a subsemigroup of S mapping onto T.

    If T is an image of some subsemigroup, it is already an image of the
    subsemigroup generated by preimages of a generating set of T, so it
    suffices to try ordered tuples of distinct elements of S against a
    fixed generating set of T.  Returns ``(map on the subsemigroup)``,
    ``None`` or :class:`Inconclusive`.
    """
    if len(T) > len(S):
        return None
    tg = generating_set(T)
    if len(tg) > caps.subset_size:
        return Inconclusive("subset_size", caps.subset_size)
    budget = Budget(caps.hom_checks)
    try:
        for tup in itertools.permutations(range(len(S)), len(tg)):
            m = _extend(S, T, tup, tg, budget)
            if m is not None:
                return dict(sorted(m.items()))
    except CapExceeded as e:
        return Inconclusive(e.cap, e.limit)
    return None


def divides(T: FiniteSemigroup, S: FiniteSemigroup, caps: Caps = DEFAULT_CAPS):
    """True iff T is a homomorphic image of a subsemigroup of S."""
    w = divisor_witness(T, S, caps)
    if isinstance(w, Inconclusive):
        return w
    return w is not None


# -- separation ------------------------------------------------------------


@dataclass(frozen=True)
class SeparationVerdict:
    separated: bool
    non_hom_classes: tuple[tuple[str, ...], ...]
    unseparated_pair: tuple[str, str] | None

    def to_dict(self) -> dict:
        return {
            "separated": self.separated,
            "non_hom_classes": [list(c) for c in self.non_hom_classes],
            "unseparated_pair": list(self.unseparated_pair) if self.unseparated_pair else None,
        }


def canonical_principal_factor_separation(S: FiniteSemigroup) -> SeparationVerdict:
    """Check whether the canonical maps onto principal factors separate S.

    For each J-class J the map sends members of J to themselves and all
    other elements to the zero of the factor.
    """
    G = green(S)
    n = len(S)
    maps = []
    non_hom = []
    for cls in G.j_classes:
        K, members, _ = _principal_factor_data(S, cls[0], G)
        z = len(members)
        pos = {a: i for i, a in enumerate(members)}
        phi = np.array([pos.get(a, z) for a in range(n)])
        if (phi[S.arr] == K.arr[phi[:, None], phi[None, :]]).all():
            maps.append(phi)
        else:
            non_hom.append(tuple(S.names(cls)))
    unseparated = None
    for u, v in itertools.combinations(range(n), 2):
        if not any(phi[u] != phi[v] for phi in maps):
            unseparated = (S.elements[u], S.elements[v])
            break
    return SeparationVerdict(unseparated is None, tuple(non_hom), unseparated)


@dataclass(frozen=True)
class TargetSeparation:
    separated: bool | Inconclusive
    unseparated_pairs: tuple[tuple[str, str], ...]
    witness: dict | None = None  # for a single requested pair

    def to_dict(self) -> dict:
        sep = self.separated
        return {
            "separated": str(sep) if isinstance(sep, Inconclusive) else sep,
            "unseparated_pairs": [list(p) for p in self.unseparated_pairs],
            "witness": self.witness,
        }


def separates_by_targets(
    S: FiniteSemigroup,
    targets: Sequence[FiniteSemigroup],
    pair: tuple[int, int] | None = None,
    caps: Caps = DEFAULT_CAPS,
) -> TargetSeparation:
    """Decide whether homomorphisms into ``targets`` separate ``pair`` (or
    every pair of distinct elements)."""
    n = len(S)
    pairs = [pair] if pair is not None else list(itertools.combinations(range(n), 2))
    open_pairs = set(pairs)
    witness = None
    try:
        for T in targets:
            if not open_pairs:
                break
            for h in find_homomorphisms(S, T, caps=caps):
                for p in sorted(open_pairs):
                    if h.map[p[0]] != h.map[p[1]]:
                        open_pairs.discard(p)
                        if pair is not None and witness is None:
                            witness = {"target": T.label, "map": h.as_labels()}
                if not open_pairs:
                    break
    except CapExceeded as e:
        return TargetSeparation(Inconclusive(e.cap, e.limit), ())
    remaining = tuple((S.elements[u], S.elements[v]) for u, v in sorted(open_pairs))
    return TargetSeparation(not remaining, remaining, witness)
