"""Capacity verdicts: compose the rule checks into certified classifications.

The decision cascade certifies exact capacities 2, 3/2 and 4/3 with
verifier-checked codes; when only an obstruction is known it reports
rational bounds whose lower end is always achieved by a certified code
(replication as the fallback).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .construct import (
    LinearCode,
    _build_aligned,
    _build_thm4,
    construct_rate2,
    construct_rate3_2,
    construct_replication,
)
from .graphs import StorageGraph
from .rules import (
    check_c2,
    check_c3_2,
    check_thm2,
    check_thm3,
    check_thm4,
    check_thm5,
    check_thm6,
    check_thm7,
)
from .structure import DEFAULT_PATH_LIMIT, PathOverflowError

FOUR_THIRDS = Fraction(4, 3)


@dataclass(frozen=True)
class CapacityVerdict:
    """Outcome of classification.

    kind "exact": ``capacity`` is one of 2, 3/2, 4/3 and ``code`` is a
    verifier-certified code of that rate. kind "bounds": capacity lies in
    [lower, upper]; ``strict_upper`` records that the fired obstructions
    certify the capacity strictly below 4/3, with ``upper`` the tightest
    fired numeric bound. kind "unknown": only the always-true bracket
    [replication rate, 4/3] is known; ``reason`` says why.
    """

    kind: str
    capacity: Fraction | None
    lower: Fraction
    upper: Fraction
    strict_upper: bool
    rules: tuple[str, ...]
    witnesses: dict
    reason: str | None
    code: LinearCode | None
    attempts: int

    def to_dict(self, include_code: bool = True) -> dict:
        out = {
            "class": self.kind,
            "capacity": str(self.capacity) if self.capacity is not None else None,
            "lower": str(self.lower),
            "upper": str(self.upper),
            "strict_upper": self.strict_upper,
            "rules": list(self.rules),
            "witnesses": self.witnesses,
        }
        if self.reason is not None:
            out["reason"] = self.reason
        if include_code:
            out["code"] = self.code.to_dict() if self.code is not None else None
        return out


def _exact(
    capacity: Fraction,
    rule: str,
    witnesses: dict,
    code: LinearCode,
    attempts: int,
) -> CapacityVerdict:
    return CapacityVerdict(
        kind="exact",
        capacity=capacity,
        lower=capacity,
        upper=capacity,
        strict_upper=False,
        rules=(rule,),
        witnesses=witnesses,
        reason=None,
        code=code,
        attempts=attempts,
    )


def classify_capacity(
    g: StorageGraph,
    seed: int = 0,
    path_limit: int = DEFAULT_PATH_LIMIT,
    strict_thm4: bool = False,
) -> CapacityVerdict:
    """Classify the graph's capacity and certify what can be certified."""
    if check_c2(g):
        return _exact(
            Fraction(2),
            "thm1",
            {"thm1": {"condition": "every node 1-color"}},
            construct_rate2(g, seed),
            1,
        )
    if check_c3_2(g):
        return _exact(
            Fraction(3, 2),
            "thm1",
            {"thm1": {"condition": "only 1-/2-color nodes, none adjacent"}},
            construct_rate3_2(g, seed),
            1,
        )

    replication = construct_replication(g)
    replication_rate = replication.rate
    try:
        if g.k_sources == 2:
            if check_thm2(g):
                code, attempts = _build_aligned(g, seed)
                return _exact(
                    FOUR_THIRDS,
                    "thm2",
                    {"thm2": {"condition": "no internal edge after 1-color removal"}},
                    code,
                    attempts,
                )
            if check_thm4(g, path_limit=path_limit, strict=strict_thm4):
                code, attempts = _build_thm4(g, seed, path_limit)
                return _exact(
                    FOUR_THIRDS,
                    "thm4",
                    {"thm4": {"condition": "one internal edge, two specials per path"}},
                    code,
                    attempts,
                )
        else:
            if check_thm7(g):
                code, attempts = _build_aligned(g, seed)
                return _exact(
                    FOUR_THIRDS,
                    "thm7",
                    {"thm7": {"condition": "no blocking structure, no internal edge after 1-color removal"}},
                    code,
                    attempts,
                )

        fired: list[str] = []
        witnesses: dict = {}
        bounds: list[Fraction] = []
        if g.k_sources == 2:
            thm3 = check_thm3(g, path_limit=path_limit)
            if thm3 is not None:
                fired.append("thm3")
                witnesses["thm3"] = thm3.to_dict()
                bounds.append(FOUR_THIRDS)
        if check_thm5(g):
            fired.append("thm5")
            witnesses["thm5"] = {"isomorphic_to": "two-internal-edge obstruction"}
            bounds.append(FOUR_THIRDS)
        thm6 = check_thm6(g)
        if thm6:
            fired.append("thm6")
            witnesses["thm6"] = [w.to_dict() for w in thm6]
            bounds.extend(w.bound for w in thm6)
    except PathOverflowError as exc:
        return CapacityVerdict(
            kind="unknown",
            capacity=None,
            lower=replication_rate,
            upper=FOUR_THIRDS,
            strict_upper=False,
            rules=(),
            witnesses={},
            reason=f"path enumeration overflow: {exc}",
            code=replication,
            attempts=1,
        )

    if fired:
        return CapacityVerdict(
            kind="bounds",
            capacity=None,
            lower=replication_rate,
            upper=min(bounds),
            strict_upper=True,
            rules=tuple(fired),
            witnesses=witnesses,
            reason=None,
            code=replication,
            attempts=1,
        )
    return CapacityVerdict(
        kind="unknown",
        capacity=None,
        lower=replication_rate,
        upper=FOUR_THIRDS,
        strict_upper=False,
        rules=(),
        witnesses={},
        reason="no sufficiency or obstruction rule fired",
        code=replication,
        attempts=1,
    )
