"""Satisfaction of identities, power identities and relatively free objects."""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .algebra import FiniteSemigroup, Inconclusive, divisor_witness, eval_word, generating_set
from .caps import DEFAULT_CAPS, CapExceeded, Caps
from .words import Identity, is_balanced, multiplicity, substitute

__all__ = [
    "BALANCED",
    "Counterexample",
    "FreeObject",
    "IN",
    "INCONCLUSIVE",
    "IdentitySystem",
    "MembershipVerdict",
    "NOT_IN",
    "PowerIdentity",
    "SatisfactionVerdict",
    "derive_power_identity",
    "evaluation_vector",
    "free_object",
    "member_of_var",
    "satisfies",
    "satisfies_all",
]

# assignments are materialised in blocks of at most this many rows
_BLOCK = 1 << 21


@dataclass(frozen=True)
class IdentitySystem:
    identities: tuple[Identity, ...]
    label: str = "Sigma"

    def __post_init__(self):
        ids = tuple(self.identities)
        object.__setattr__(self, "identities", ids)
        if not ids:
            raise ValueError("an identity system needs at least one identity")
        seen = set()
        for i in ids:
            key = tuple(sorted((i.lhs, i.rhs)))
            if key in seen:
                raise ValueError(f"duplicate identity {i}")
            seen.add(key)

    @classmethod
    def from_list(cls, identities: Iterable[Identity], label: str = "Sigma") -> IdentitySystem:
        """Build a system, silently dropping repeated identities."""
        out, seen = [], set()
        for i in identities:
            key = tuple(sorted((i.lhs, i.rhs)))
            if key not in seen:
                seen.add(key)
                out.append(i)
        return cls(tuple(out), label)

    def __iter__(self):
        return iter(self.identities)

    def __len__(self):
        return len(self.identities)


# -- satisfaction ----------------------------------------------------------


@dataclass(frozen=True)
class Counterexample:
    identity_index: int
    identity: Identity
    assignment: tuple[tuple[str, str], ...]  # (variable, element label), alphabetical
    lhs_value: str
    rhs_value: str

    def to_dict(self) -> dict:
        return {
            "identity_index": self.identity_index,
            "identity": str(self.identity),
            "assignment": dict(self.assignment),
            "lhs_value": self.lhs_value,
            "rhs_value": self.rhs_value,
        }

    def replay(self, S: FiniteSemigroup) -> bool:
        """Re-evaluate from labels; True iff the recorded inequality reproduces."""
        asg = {v: S.index(lab) for v, lab in self.assignment}
        lhs = S.elements[eval_word(S, self.identity.lhs, asg)]
        rhs = S.elements[eval_word(S, self.identity.rhs, asg)]
        return lhs == self.lhs_value and rhs == self.rhs_value and lhs != rhs


@dataclass(frozen=True)
class SatisfactionVerdict:
    holds: bool
    counterexample: Counterexample | None = None

    def __post_init__(self):
        if self.holds != (self.counterexample is None):
            raise ValueError("a verdict fails exactly when it carries a counterexample")

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "counterexample": self.counterexample.to_dict() if self.counterexample else None,
        }


def _fold(arr: np.ndarray, w: str, vals: dict[str, np.ndarray]) -> np.ndarray:
    acc = vals[w[0]]
    for c in w[1:]:
        acc = arr[acc, vals[c]]
    return acc


def satisfies(S: FiniteSemigroup, identity: Identity, index: int = 0) -> SatisfactionVerdict:
    """Exhaustive check; the counterexample is the first failing assignment in
    lexicographic order (variables alphabetical, first one most significant)."""
    if identity.is_tautology:
        return SatisfactionVerdict(True)
    variables = identity.variables
    n, k = len(S), len(variables)
    arr = S.arr
    # split off leading variables until a block fits in memory
    lead = 0
    while lead < k and n ** (k - lead) > _BLOCK:
        lead += 1
    tail = np.indices((n,) * (k - lead), dtype=np.intp).reshape(k - lead, -1)
    for prefix in np.ndindex(*((n,) * lead)):
        vals = {v: np.intp(prefix[i]) for i, v in enumerate(variables[:lead])}
        vals.update({v: tail[i] for i, v in enumerate(variables[lead:])})
        lhs = np.broadcast_to(_fold(arr, identity.lhs, vals), tail.shape[1:])
        rhs = np.broadcast_to(_fold(arr, identity.rhs, vals), tail.shape[1:])
        bad = np.flatnonzero(lhs != rhs)
        if bad.size:
            j = int(bad[0])
            values = list(prefix) + [int(tail[i, j]) for i in range(k - lead)]
            asg = tuple((v, S.elements[values[i]]) for i, v in enumerate(variables))
            cx = Counterexample(index, identity, asg, S.elements[int(lhs[j])], S.elements[int(rhs[j])])
            return SatisfactionVerdict(False, cx)
    return SatisfactionVerdict(True)


def satisfies_all(S: FiniteSemigroup, system: IdentitySystem | Sequence[Identity]) -> SatisfactionVerdict:
    """Holds iff every non-tautological identity holds; otherwise the first
    failing identity's counterexample."""
    for i, ident in enumerate(system):
        if ident.is_tautology:
            continue
        v = satisfies(S, ident, i)
        if not v.holds:
            return v
    return SatisfactionVerdict(True)


# -- power identity --------------------------------------------------------


@dataclass(frozen=True)
class PowerIdentity:
    m: int
    n: int
    source_index: int = 0
    variable: str | None = None  # the variable sent to x^2, if any

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("x^m = x^(m+n) needs m, n >= 1")

    def as_identity(self) -> Identity:
        return Identity("x" * self.m, "x" * (self.m + self.n))


class _Balanced:
    __slots__ = ()

    def __repr__(self) -> str:
        return "BALANCED"


BALANCED = _Balanced()


def derive_power_identity(system: Iterable[Identity]) -> PowerIdentity | _Balanced:
    """x^m = x^(m+n) implied by the first unbalanced identity.

    All variables go to x.  If that gives equal lengths, the first variable
    with different multiplicities goes to x^2 instead.
    """
    for i, ident in enumerate(system):
        if is_balanced(ident):
            continue
        a, b = len(ident.lhs), len(ident.rhs)
        chosen = None
        if a == b:
            chosen = next(v for v in ident.variables if multiplicity(ident.lhs, v) != multiplicity(ident.rhs, v))
            mapping = {v: ("xx" if v == chosen else "x") for v in ident.variables}
            a = len(substitute(ident.lhs, mapping))
            b = len(substitute(ident.rhs, mapping))
        return PowerIdentity(min(a, b), abs(a - b), i, chosen)
    return BALANCED


# -- relatively free objects -----------------------------------------------


FREE_LETTERS = "xyzuvw" + "".join(c for c in string.ascii_lowercase if c not in "xyzuvw")


@dataclass(frozen=True, eq=False)
class FreeObject:
    """F_k(Var S) as the subsemigroup of S^(S^k) generated by projections."""

    arity: int
    base: FiniteSemigroup = field(repr=False)
    vectors: np.ndarray = field(repr=False)  # one row per element
    rep_words: tuple[str, ...]
    generators: tuple[int, ...]
    right: tuple[tuple[int, ...], ...] = field(repr=False)  # right[f][i] = f * generator i

    def __len__(self) -> int:
        return len(self.rep_words)

    @cached_property
    def _lookup(self) -> dict[bytes, int]:
        return {row.tobytes(): i for i, row in enumerate(self.vectors)}

    def element_of(self, word: str) -> int:
        """Index of the element represented by ``word`` over the free letters."""
        f = self.generators[FREE_LETTERS.index(word[0])]
        for c in word[1:]:
            f = self.right[f][FREE_LETTERS.index(c)]
        return f

    @cached_property
    def table(self) -> tuple[tuple[int, ...], ...]:
        arr = self.base.arr
        rows = []
        for a in range(len(self)):
            prod = arr[self.vectors[a][None, :], self.vectors]
            rows.append(tuple(self._lookup[p.tobytes()] for p in prod.astype(self.vectors.dtype)))
        return tuple(rows)

    def as_semigroup(self, label: str | None = None) -> FiniteSemigroup:
        return FiniteSemigroup(label or f"F{self.arity}({self.base.label})", self.rep_words, self.table)


def free_object(S: FiniteSemigroup, k: int, caps: Caps = DEFAULT_CAPS) -> FreeObject:
    """Breadth-first closure of the k projection vectors.

    Raises :class:`CapExceeded` (``free_coordinates`` or ``free_elements``).
    """
    if k < 1:
        raise ValueError("arity must be >= 1")
    if k > len(FREE_LETTERS):
        raise ValueError(f"arity {k} exceeds the {len(FREE_LETTERS)} available letters")
    n = len(S)
    coords = n**k
    if coords > caps.free_coordinates:
        raise CapExceeded("free_coordinates", caps.free_coordinates)
    dtype = np.uint8 if n <= 256 else np.uint32
    arr = S.arr.astype(dtype)
    proj = np.indices((n,) * k).reshape(k, -1).astype(dtype)
    vectors: list[np.ndarray] = []
    words: list[str] = []
    index: dict[bytes, int] = {}

    def intern(vec: np.ndarray, word: str) -> int:
        key = vec.tobytes()
        i = index.get(key)
        if i is None:
            i = len(vectors)
            index[key] = i
            vectors.append(vec)
            words.append(word)
            if len(vectors) > caps.free_elements:
                raise CapExceeded("free_elements", caps.free_elements)
        return i

    gens = tuple(intern(proj[i], FREE_LETTERS[i]) for i in range(k))
    right: list[tuple[int, ...]] = []
    i = 0
    while i < len(vectors):
        v = vectors[i]
        right.append(tuple(intern(arr[v, proj[g]], words[i] + FREE_LETTERS[g]) for g in range(k)))
        i += 1
    return FreeObject(k, S, np.array(vectors), tuple(words), gens, tuple(right))


def evaluation_vector(S: FiniteSemigroup, word: str, variables: str) -> np.ndarray:
    """Values of ``word`` under all assignments of ``variables`` (lexicographic)."""
    k = len(variables)
    grid = np.indices((len(S),) * k).reshape(k, -1)
    return _fold(S.arr, word, {v: grid[i] for i, v in enumerate(variables)})


# -- membership in Var(S) --------------------------------------------------

IN, NOT_IN, INCONCLUSIVE = "In", "NotIn", "Inconclusive"


@dataclass(frozen=True)
class MembershipVerdict:
    outcome: str
    method: str
    witness: dict | None = None

    def to_dict(self) -> dict:
        return {"outcome": self.outcome, "method": self.method, "witness": self.witness}


def member_of_var(X: FiniteSemigroup, S: FiniteSemigroup, caps: Caps = DEFAULT_CAPS) -> MembershipVerdict:
    """Decide X in Var(S).

    X lies in Var(S) iff it is a quotient of F_k(Var S) under the map sending
    the free generators to a generating set of X.  That map is well defined
    iff it commutes with right multiplication by each generator.
    """
    d = divisor_witness(X, S, caps)
    if d is not None and not isinstance(d, Inconclusive):
        return MembershipVerdict(IN, "divisor", {"map": {S.elements[a]: X.elements[b] for a, b in d.items()}})
    gens = generating_set(X)
    k = len(gens)
    try:
        F = free_object(S, k, caps)
    except (CapExceeded, ValueError) as e:
        cap = e.cap if isinstance(e, CapExceeded) else "free_arity"
        limit = e.limit if isinstance(e, CapExceeded) else len(FREE_LETTERS)
        return MembershipVerdict(INCONCLUSIVE, "free-object", {"cap": cap, "limit": limit})
    xt = X.table
    asg = {FREE_LETTERS[j]: X.elements[gens[j]] for j in range(k)}

    def refuted(lhs, rhs, lval, rval):
        return MembershipVerdict(
            NOT_IN,
            "free-object",
            {
                "lhs": lhs,
                "rhs": rhs,
                "assignment": asg,
                "lhs_value": X.elements[lval],
                "rhs_value": X.elements[rval],
                "free_object_size": len(F),
            },
        )

    phi = [None] * len(F)
    for i, g in enumerate(F.generators):
        if phi[g] is not None:
            # two free generators coincide, so x_i = x_j holds in S
            return refuted(FREE_LETTERS[i], F.rep_words[g], gens[i], phi[g])
        phi[g] = gens[i]
    # BFS order guarantees phi(f) is known before f's right neighbours
    for f in range(len(F)):
        for i, g in enumerate(gens):
            t = F.right[f][i]
            val = xt[phi[f]][g]
            if phi[t] is None:
                phi[t] = val
            elif phi[t] != val:
                return refuted(F.rep_words[f] + FREE_LETTERS[i], F.rep_words[t], val, phi[t])
    return MembershipVerdict(
        IN,
        "free-object",
        {"free_object_size": len(F), "generators": {FREE_LETTERS[j]: X.elements[g] for j, g in enumerate(gens)}},
    )
