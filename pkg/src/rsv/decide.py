"""Rees-Sushkevich, exactness and structural classification decisions."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .algebra import FiniteSemigroup, index_period
from .caps import DEFAULT_CAPS, Caps
from .catalog import CatalogKey, catalog_get
from .varieties import (
    BALANCED,
    IN,
    INCONCLUSIVE,
    NOT_IN,
    IdentitySystem,
    SatisfactionVerdict,
    derive_power_identity,
    member_of_var,
    satisfies_all,
)
from .words import parse_identity

__all__ = [
    "ClassificationReport",
    "CoherenceError",
    "ExactVerdict",
    "FIXED_FORBIDDEN",
    "KINDS",
    "RsVerdict",
    "SystemVerdict",
    "THM3_FORBIDDEN",
    "THM4_FORBIDDEN",
    "classify_semigroup",
    "classify_sigma",
    "exponent_candidates",
    "forbidden_list",
    "identity_systems",
    "is_exact_semigroup",
    "is_exact_sigma",
    "is_rs_semigroup",
    "is_rs_sigma",
]

_T4 = ("x y = x^{n1} y^{n1}", "(a x y b)^{n} = (a y x b)^{n}")
_B = ("x y = x y^{n1}",)
_C = ("x y = x^{n1} y",)

_TEMPLATES: dict[str, tuple[str, ...]] = {
    "Hall": ("x^2 = x^{n2}", "x y x = (x y)^{n1} x", "(x h z)^{n} x y z = x y z (x h z)^{n}"),
    "Thm3": ("x = x^{n1}", "(a x y b)^{n} = (a y x b)^{n}"),
    "Thm4": _T4,
    "Thm5a": _T4,
    "Thm5b": _B + ("a x a y = a y a x", "a b x y = a b y x"),
    "Thm5c": _C + ("x a y a = y a x a", "x y a b = y x a b"),
    "Thm6a": _T4,
    "Thm6b": _B + ("a x y = a y x",),
    "Thm6c": _C + ("x y a = y x a",),
    "Thm7a": ("x y = x^{n1} y^{n1}", "a x y^{n} b = a y^{n} x b"),
    "Thm7b": _B + ("a x y = a y x",),
    "Thm7c": _C + ("x y a = y x a",),
}
KINDS = tuple(_TEMPLATES)


def identity_systems(kind: str, n: int) -> IdentitySystem:
    if kind not in _TEMPLATES:
        raise ValueError(f"unknown identity system {kind!r}; expected one of {', '.join(KINDS)}")
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    ids = []
    for t in _TEMPLATES[kind]:
        text = t.replace("{n2}", str(n + 2)).replace("{n1}", str(n + 1)).replace("{n}", str(n))
        ids.append(parse_identity(text))
    return IdentitySystem.from_list(ids, f"{kind}(n={n})")


FIXED_FORBIDDEN = (
    "A", "B", "C_lambda", "C_rho", "N3", "D", "F_lambda", "F_rho", "W_lambda", "W_rho", "L2_1", "R2_1",
)
THM3_FORBIDDEN = ("N2", "S0", "S1l", "S1r", "S2l", "S2r", "S3l", "S3r", "L2_1", "R2_1")
THM4_FORBIDDEN = ("S0", "S1l", "S1r", "S3l", "S3r")


def forbidden_list(n: int) -> list[CatalogKey]:
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    return [CatalogKey(k) for k in FIXED_FORBIDDEN] + [CatalogKey("K", r) for r in range(1, n + 1)]


def _scan(
    check: Callable[[CatalogKey], SatisfactionVerdict], keys: Sequence[CatalogKey], parallel: bool
) -> list[SatisfactionVerdict]:
    """Evaluate ``check`` on every key; results stay in list order."""
    if parallel and len(keys) > 1:
        with ThreadPoolExecutor() as pool:
            return list(pool.map(check, keys))
    return [check(k) for k in keys]


# -- Rees-Sushkevich -------------------------------------------------------


@dataclass(frozen=True)
class RsVerdict:
    is_rs: bool
    period_bound: int | None
    reason: str  # Balanced | ForbiddenMember | AllForbiddenExcluded | IdentitiesHold | IdentityFailure
    evidence: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"is_rs": self.is_rs, "period_bound": self.period_bound, "reason": self.reason, "evidence": self.evidence}


def _power_dict(p) -> dict:
    return {"m": p.m, "n": p.n, "identity": str(p.as_identity()), "source_index": p.source_index, "variable": p.variable}


def is_rs_sigma(system: IdentitySystem, parallel: bool = False) -> RsVerdict:
    power = derive_power_identity(system)
    if power is BALANCED:
        return RsVerdict(False, None, "Balanced", {"note": "every commutative semigroup satisfies a balanced system"})
    keys = forbidden_list(power.n)
    results = _scan(lambda k: satisfies_all(catalog_get(k), system), keys, parallel)
    for key, res in zip(keys, results):
        if res.holds:
            return RsVerdict(False, power.n, "ForbiddenMember", {"member": str(key), "power_identity": _power_dict(power)})
    return RsVerdict(
        True, power.n, "AllForbiddenExcluded",
        {"tested": [str(k) for k in keys], "power_identity": _power_dict(power)},
    )


def exponent_candidates(S: FiniteSemigroup) -> list[int]:
    """Exponents n worth testing for the parametric systems on S.

    Every exponent in those systems is at least n, and s^a = s^b once
    a, b >= index(S) with a = b mod period(S).  So truth at any n >= index is
    decided by n mod period, and n in 1 .. index + period - 1 covers every
    case.  period(S) comes first; it is the canonical test point.
    """
    ip = index_period(S)
    rest = [k for k in range(1, ip.index + ip.period) if k != ip.period]
    return [ip.period] + rest


def _first_n(S: FiniteSemigroup, kind: str):
    """Smallest n for which S satisfies the system, or the counterexample at
    n = period(S)."""
    cands = exponent_candidates(S)
    first_fail = None
    for n in sorted(cands):
        v = satisfies_all(S, identity_systems(kind, n))
        if v.holds:
            return n, v
        if n == cands[0]:
            first_fail = v
    return None, first_fail


def is_rs_semigroup(S: FiniteSemigroup) -> RsVerdict:
    n, v = _first_n(S, "Hall")
    if n is not None:
        return RsVerdict(True, n, "IdentitiesHold", {"system": f"Hall(n={n})"})
    p = index_period(S).period
    return RsVerdict(False, p, "IdentityFailure", {"system": f"Hall(n={p})", "counterexample": v.counterexample.to_dict()})


# -- exactness ---------------------------------------------------------------


@dataclass(frozen=True)
class ExactVerdict:
    exact: bool | None  # None when a membership bit is inconclusive
    branch: str | None  # "B2 in V, A0 not in V" | "A2 in V" | "N2 not in V"
    memberships: dict  # name -> "In" | "NotIn" | "Inconclusive"
    rs: RsVerdict
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "exact": self.exact,
            "branch": self.branch,
            "memberships": self.memberships,
            "rs": self.rs.to_dict(),
            "details": self.details,
        }


_BRANCHES = ("B2 in V, A0 not in V", "A2 in V", "N2 not in V")


def _exact_from_bits(bits: dict) -> tuple[bool | None, str | None]:
    tests = [
        (bits["B2"], IN, bits["A0"], NOT_IN),
        (bits["A2"], IN, None, None),
        (bits["N2"], NOT_IN, None, None),
    ]
    unknown = False
    for name, (b1, want1, b2, want2) in zip(_BRANCHES, tests):
        parts = [(b1, want1)] + ([(b2, want2)] if b2 is not None else [])
        if any(b == INCONCLUSIVE for b, _ in parts):
            if all(b == w or b == INCONCLUSIVE for b, w in parts):
                unknown = True
            continue
        if all(b == w for b, w in parts):
            return True, name
    return (None, None) if unknown else (False, None)


def is_exact_sigma(system: IdentitySystem, parallel: bool = False) -> ExactVerdict:
    rs = is_rs_sigma(system, parallel)
    names = ("B2", "A0", "A2", "N2")
    results = _scan(lambda k: satisfies_all(catalog_get(k), system), [CatalogKey(k) for k in names], parallel)
    bits = {k: IN if r.holds else NOT_IN for k, r in zip(names, results)}
    if not rs.is_rs:
        return ExactVerdict(False, None, bits, rs)
    exact, branch = _exact_from_bits(bits)
    return ExactVerdict(exact, branch, bits, rs)


def is_exact_semigroup(S: FiniteSemigroup, caps: Caps = DEFAULT_CAPS, parallel: bool = False) -> ExactVerdict:
    rs = is_rs_semigroup(S)
    names = ("B2", "A0", "A2", "N2")
    results = _scan(lambda k: member_of_var(catalog_get(k), S, caps), [CatalogKey(k) for k in names], parallel)
    bits = {k: r.outcome for k, r in zip(names, results)}
    details = {k: r.to_dict() for k, r in zip(names, results)}
    if not rs.is_rs:
        return ExactVerdict(False, None, bits, rs, details)
    exact, branch = _exact_from_bits(bits)
    return ExactVerdict(exact, branch, bits, rs, details)


# -- classification ----------------------------------------------------------


@dataclass(frozen=True)
class SystemVerdict:
    """Which system held and at which n, or why none did."""

    positive: bool
    system: str | None = None
    n: int | None = None
    witness: dict | None = None

    def to_dict(self) -> dict:
        return {"positive": self.positive, "system": self.system, "n": self.n, "witness": self.witness}


class CoherenceError(AssertionError):
    """Two verdicts contradict each other; this indicates a bug."""


THM7_FOOTNOTE = (
    "thm7 assumes its conditions are equivalent, in the same shape as thm6."
)


@dataclass(frozen=True)
class ClassificationReport:
    input_mode: str  # "Sigma" | "Semigroup"
    rs: RsVerdict
    exact: ExactVerdict
    thm3: SystemVerdict
    thm4: SystemVerdict
    thm5: SystemVerdict | None = None
    thm6: SystemVerdict | None = None
    thm7: SystemVerdict | None = None
    footnotes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.thm3.positive and not self.thm4.positive:
            raise CoherenceError("thm3 holds but thm4 fails")
        if self.input_mode == "Sigma" and any(t is not None for t in (self.thm5, self.thm6, self.thm7)):
            raise CoherenceError("thm5-thm7 are only decided for a finite semigroup")

    def to_dict(self) -> dict:
        opt = lambda v: v.to_dict() if v is not None else "unsupported for identity input"  # noqa: E731
        return {
            "input_mode": self.input_mode,
            "rs": self.rs.to_dict(),
            "exact": self.exact.to_dict(),
            "thm3": self.thm3.to_dict(),
            "thm4": self.thm4.to_dict(),
            "thm5": opt(self.thm5),
            "thm6": opt(self.thm6),
            "thm7": opt(self.thm7),
            "footnotes": list(self.footnotes),
        }


def _exclusion(system: IdentitySystem, names: Sequence[str], parallel: bool) -> SystemVerdict:
    results = _scan(lambda k: satisfies_all(catalog_get(k), system), [CatalogKey(k) for k in names], parallel)
    for name, r in zip(names, results):
        if r.holds:
            return SystemVerdict(False, witness={"forbidden_member": name})
    return SystemVerdict(True, witness={"excluded": list(names)})


def classify_sigma(system: IdentitySystem, parallel: bool = False) -> ClassificationReport:
    return ClassificationReport(
        "Sigma",
        is_rs_sigma(system, parallel),
        is_exact_sigma(system, parallel),
        _exclusion(system, THM3_FORBIDDEN, parallel),
        _exclusion(system, THM4_FORBIDDEN, parallel),
    )


def _system_verdict(S: FiniteSemigroup, kinds: Sequence[str]) -> SystemVerdict:
    """First of ``kinds`` that S satisfies for some n, else all counterexamples."""
    failures = {}
    for kind in kinds:
        n, v = _first_n(S, kind)
        if n is not None:
            return SystemVerdict(True, kind, n)
        failures[kind] = v.counterexample.to_dict()
    return SystemVerdict(False, witness={"counterexamples": failures})


def classify_semigroup(S: FiniteSemigroup, caps: Caps = DEFAULT_CAPS, parallel: bool = False) -> ClassificationReport:
    kinds = [("thm3", ("Thm3",)), ("thm4", ("Thm4",)), ("thm5", ("Thm5a", "Thm5b", "Thm5c")),
             ("thm6", ("Thm6a", "Thm6b", "Thm6c")), ("thm7", ("Thm7a", "Thm7b", "Thm7c"))]
    if parallel:
        with ThreadPoolExecutor() as pool:
            futures = {name: pool.submit(_system_verdict, S, ks) for name, ks in kinds}
            verdicts = {name: f.result() for name, f in futures.items()}
    else:
        verdicts = {name: _system_verdict(S, ks) for name, ks in kinds}
    return ClassificationReport(
        "Semigroup",
        is_rs_semigroup(S),
        is_exact_semigroup(S, caps, parallel),
        verdicts["thm3"],
        verdicts["thm4"],
        verdicts["thm5"],
        verdicts["thm6"],
        verdicts["thm7"],
        (THM7_FOOTNOTE,),
    )
