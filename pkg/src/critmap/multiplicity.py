"""Critical-value Jacobians for polynomials with repeated roots.

For a multiplicity profile ``k_1 >= ... >= k_r`` the Jacobian ``M`` is ``r x r``
and every row belonging to a repeated root vanishes, so ``rank M <= s`` where
``s`` counts the simple roots.  This module checks ``rank M == s`` at seeded
rational points, enumerates the ``s x s`` minors on the simple-root rows, and
splits their determinants as ``c * prod (a_a - a_b)^t * g``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import prod
from typing import Dict, List, Optional, Sequence, Tuple

from .jacobian import (
    critical_jacobian,
    critical_jacobian_from_definition,
    evaluate_critical_jacobian,
)
from .matrix import SYMBOLIC_GUARD, GuardError, RingMatrix, determinant, rational_rank, select
from .poly import SparsePoly, divide_linear_difference, format_rational
from .sampling import derive_seed, sample_distinct_roots

DEFAULT_BOUND = 50


class ProfileError(ValueError):
    pass


@dataclass(frozen=True)
class MultiplicityProfile:
    multiplicities: Tuple[int, ...]

    def __post_init__(self):
        ks = tuple(self.multiplicities)
        object.__setattr__(self, "multiplicities", ks)
        if not ks:
            raise ProfileError("a profile needs at least one root")
        if any(not isinstance(k, int) or isinstance(k, bool) or k < 1 for k in ks):
            raise ProfileError(f"multiplicities must be positive integers: {ks}")
        if any(a < b for a, b in zip(ks, ks[1:])):
            raise ProfileError(f"multiplicities must be in decreasing order: {ks}")

    @classmethod
    def parse(cls, text: str) -> "MultiplicityProfile":
        try:
            ks = tuple(int(tok) for tok in text.split(","))
        except ValueError:
            raise ProfileError(f"malformed profile: {text!r}") from None
        return cls(ks)

    @property
    def n(self) -> int:
        return sum(self.multiplicities)

    @property
    def r(self) -> int:
        return len(self.multiplicities)

    @property
    def s(self) -> int:
        return sum(1 for k in self.multiplicities if k == 1)

    @property
    def all_simple(self) -> bool:
        return self.r == self.n

    def roots_of_multiplicity(self, k: int) -> List[int]:
        """1-based indices of roots with multiplicity exactly ``k``."""
        return [i + 1 for i, m in enumerate(self.multiplicities) if m == k]

    @property
    def simple_indices(self) -> List[int]:
        # decreasing order puts the simple roots last
        return list(range(self.r - self.s + 1, self.r + 1))

    def __str__(self):
        return ",".join(map(str, self.multiplicities))


def enumerate_profiles(n: int) -> List[MultiplicityProfile]:
    """All profiles of total multiplicity ``n`` (partitions in decreasing order)."""

    def parts(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for k in range(min(remaining, largest), 0, -1):
            for rest in parts(remaining - k, k):
                yield (k,) + rest

    return [MultiplicityProfile(p) for p in parts(n, n)]


@dataclass(frozen=True)
class SimpleRootJacobian:
    profile: MultiplicityProfile
    matrix: RingMatrix


def build_M(profile: MultiplicityProfile, crosscheck: bool = True) -> SimpleRootJacobian:
    """Closed-form symbolic ``M``; optionally checked against differentiation from scratch."""
    ks = profile.multiplicities
    m = critical_jacobian(ks, nvars=profile.r + 1)
    if crosscheck and m != critical_jacobian_from_definition(ks, nvars=profile.r + 1):
        raise AssertionError(f"closed-form M disagrees with the defining derivative for {profile}")
    return SimpleRootJacobian(profile, m)


def definition_crosscheck_M(profile: MultiplicityProfile) -> bool:
    ks = profile.multiplicities
    nv = profile.r + 1
    return critical_jacobian(ks, nvars=nv) == critical_jacobian_from_definition(ks, nvars=nv)


# -- rank ------------------------------------------------------------------------


@dataclass
class ConjectureReport:
    profile: MultiplicityProfile
    trials: int
    seed: int
    bound: int
    expected_rank: int
    ranks: List[int] = field(default_factory=list)
    witness: Optional[Dict] = None

    @property
    def verdict(self) -> str:
        if self.profile.s == 0:
            return "vacuous"
        if self.witness is not None:
            return "violated"
        return "holds"

    def to_json(self) -> Dict:
        out = {
            "profile": str(self.profile),
            "n": self.profile.n,
            "r": self.profile.r,
            "s": self.profile.s,
            "trials": self.trials,
            "seed": self.seed,
            "bound": self.bound,
            "expected_rank": self.expected_rank,
            "ranks": list(self.ranks),
            "verdict": self.verdict,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def conjecture_check(
    profile: MultiplicityProfile, trials: int, seed: int, bound: int = DEFAULT_BOUND
) -> ConjectureReport:
    """Exact rank of ``M`` at ``trials`` seeded distinct rational root vectors.

    The target rank is ``s``.  For the all-simple profile the target is
    ``n - 1`` instead (the distinct-root corank-one case).
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    bound = max(bound, profile.r)
    expected = profile.n - 1 if profile.all_simple else profile.s
    report = ConjectureReport(profile, trials, seed, bound, expected)
    for trial in range(trials):
        roots = sample_distinct_roots(profile.r, derive_seed(seed, trial), bound)
        m = evaluate_critical_jacobian(profile.multiplicities, roots)
        rank = rational_rank(m)
        report.ranks.append(rank)
        if rank > profile.s:
            raise AssertionError(f"rank {rank} exceeds the zero-row bound s={profile.s}")
        if rank != expected and report.witness is None:
            report.witness = {
                "profile": str(profile),
                "seed": seed,
                "trial": trial,
                "trial_seed": derive_seed(seed, trial),
                "roots": [format_rational(a) for a in roots],
                "matrix": m.to_json(),
                "rank": rank,
                "expected_rank": expected,
            }
    return report


# -- minors and their factorization ------------------------------------------------


@dataclass(frozen=True)
class Minor:
    columns: Tuple[int, ...]  # 1-based
    det: SparsePoly


def enumerate_minors(
    profile: MultiplicityProfile,
    columns: Optional[Sequence[Sequence[int]]] = None,
    override_guard: bool = False,
) -> List[Minor]:
    """Determinants of the ``s x s`` submatrices on the simple-root rows.

    By default all ``C(r, s)`` column sets are used, in lexicographic order.
    """
    s = profile.s
    if s < 1:
        raise ProfileError("profile has no simple roots; there are no minors")
    if s > SYMBOLIC_GUARD and not override_guard:
        raise GuardError(f"{s}x{s} symbolic minors exceed the guard ({SYMBOLIC_GUARD})")
    m = build_M(profile).matrix
    rows = [i - 1 for i in profile.simple_indices]
    if columns is None:
        columns = list(combinations(range(1, profile.r + 1), s))
    out = []
    for cols in columns:
        cols = tuple(cols)
        if len(cols) != s or len(set(cols)) != s or any(not 1 <= c <= profile.r for c in cols):
            raise ProfileError(f"column set {cols} is not {s} distinct indices in 1..{profile.r}")
        sub = select(m, rows, [c - 1 for c in sorted(cols)])
        out.append(Minor(tuple(sorted(cols)), determinant(sub, override_guard=override_guard)))
    return out


def principal_columns(profile: MultiplicityProfile) -> Tuple[int, ...]:
    return tuple(profile.simple_indices)


@dataclass
class FactorizationReport:
    constant: Fraction
    exponents: Dict[Tuple[int, int], int]
    residual: SparsePoly
    roundtrip_ok: bool
    residual_coprime: bool

    def rebuild(self) -> SparsePoly:
        nv = self.residual.nvars
        out = self.residual * self.constant
        for (a, b), t in self.exponents.items():
            out = out * SparsePoly.root_difference(nv, a, b) ** t
        return out

    def to_json(self) -> Dict:
        return {
            "c": format_rational(self.constant),
            "t": {f"{a}-{b}": t for (a, b), t in sorted(self.exponents.items())},
            "g": str(self.residual),
            "roundtrip_ok": self.roundtrip_ok,
            "g_coprime_to_differences": self.residual_coprime,
        }


def factor_minor(det: SparsePoly) -> FactorizationReport:
    """Split ``det`` as ``c * prod_{a<b} (a_a - a_b)^t * g``.

    Pairs are visited in lexicographic order and each linear difference is
    divided out as often as it goes.  ``g`` is scaled to leading coefficient
    ``+1`` (graded lex) and the scalar moves into ``c``.
    """
    if det.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    nv = det.nvars
    rest = det
    exponents: Dict[Tuple[int, int], int] = {}
    for a, b in combinations(range(1, nv), 2):
        t = 0
        while True:
            q, ok = divide_linear_difference(rest, a, b)
            if not ok:
                break
            rest, t = q, t + 1
        if t:
            exponents[(a, b)] = t
    _, lc = rest.leading_term()
    c = Fraction(lc)
    g = rest * (1 / c)
    report = FactorizationReport(c, exponents, g, False, False)
    report.roundtrip_ok = report.rebuild() == det
    report.residual_coprime = all(
        not divide_linear_difference(g, a, b)[1] for a, b in combinations(range(1, nv), 2)
    )
    return report


# -- the three worked cases ----------------------------------------------------------


def _proportional(p: SparsePoly, q: SparsePoly) -> bool:
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    ep, cp = p.leading_term()
    eq, cq = q.leading_term()
    return ep == eq and p * Fraction(cq) == q * Fraction(cp)


def rising_product(k: int, count: int) -> int:
    """``k (k+1) ... (k+count-1)``."""
    return prod(range(k, k + count))


@dataclass
class BulletReport:
    profile: MultiplicityProfile
    patterns: List[str] = field(default_factory=list)
    sections: Dict[str, Dict] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)
    findings: List[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.failures:
            return "fail"
        return "finding" if self.findings else "pass"

    def to_json(self) -> Dict:
        return {
            "profile": str(self.profile),
            "patterns": list(self.patterns),
            "sections": self.sections,
            "failures": list(self.failures),
            "findings": list(self.findings),
            "status": self.status,
        }


def bullet_patterns(profile: MultiplicityProfile) -> List[str]:
    ks = profile.multiplicities
    found = []
    if profile.s == 1:
        found.append("one_simple_root")
    if profile.r >= 2 and ks[0] > 1 and all(k == 1 for k in ks[1:]):
        found.append("one_repeated_root")
    if profile.r == 5 and ks[0] > 1 and ks[1] > 1 and ks[2:] == (1, 1, 1):
        found.append("two_repeated_roots")
    return found


def bullet_checks(profile: MultiplicityProfile, minors: Optional[List[Minor]] = None) -> BulletReport:
    """Compare computed minors with the three worked cases for repeated roots.

    ``one_simple_root``: each 1x1 minor against ``-k1 f_r(a_r) / (a_r - a1)``.
    ``one_repeated_root`` ``(k,1,...,1)``: exponents of the principal minor are
    asserted (``k-1`` on ``a1 - a_l``, 2 on ``a_m - a_l``); its constant is
    tabulated against ``k (k+1) ... (k+r-1)``.
    ``two_repeated_roots`` ``(k,l,1,1,1)``: residual factors are reported and
    compared with ``a1 + 2a2 - 3a3`` and ``a1 + 2a2 - 3a4``.
    Constant and residual mismatches are findings; exponent mismatches are failures.
    """
    patterns = bullet_patterns(profile)
    if not patterns:
        raise ProfileError(f"profile {profile} matches none of the worked cases")
    report = BulletReport(profile, patterns)
    if minors is None:
        minors = enumerate_minors(profile)
    by_cols = {mn.columns: mn.det for mn in minors}
    ks = profile.multiplicities
    r = profile.r
    nv = r + 1
    principal = principal_columns(profile)

    if "one_simple_root" in patterns:
        # f_r(a_r): f without its (x - a_r) factor, evaluated at a_r
        f_r_at = SparsePoly.constant(nv, 1)
        for m in range(1, r):
            f_r_at = f_r_at * SparsePoly.root_difference(nv, r, m) ** ks[m - 1]
        quotient, ok = divide_linear_difference(f_r_at, r, 1)
        if not ok:
            report.failures.append("f_r(a_r) is not divisible by (a_r - a_1)")
        candidate = quotient * (-ks[0])
        matching = [list(c) for c, d in sorted(by_cols.items()) if d == candidate]
        principal_match = by_cols.get(principal) == candidate
        report.sections["one_simple_root"] = {
            "candidate": str(candidate),
            "minors": {",".join(map(str, c)): str(d) for c, d in sorted(by_cols.items())},
            "matching_columns": matching,
            "principal_columns": list(principal),
            "principal_matches": principal_match,
        }
        if not principal_match:
            report.findings.append(
                "one_simple_root: candidate matches columns "
                f"{matching} rather than the principal column {list(principal)}"
            )

    if "one_repeated_root" in patterns:
        k = ks[0]
        det = by_cols.get(principal)
        if det is None:
            det = enumerate_minors(profile, [principal])[0].det
        if det.is_zero():
            report.failures.append("one_repeated_root: principal minor is zero")
        else:
            fr = factor_minor(det)
            want = {(1, l): k - 1 for l in range(2, r + 1)}
            want.update({(m, l): 2 for m in range(2, r + 1) for l in range(m + 1, r + 1)})
            want = {p: t for p, t in want.items() if t}
            exponents_ok = fr.exponents == want
            predicted_c = rising_product(k, r)
            alt_c = rising_product(k, r - 1)
            report.sections["one_repeated_root"] = {
                "k": k,
                "r": r,
                "factorization": fr.to_json(),
                "expected_exponents": {f"{a}-{b}": t for (a, b), t in sorted(want.items())},
                "exponents_match": exponents_ok,
                "observed_abs_c": format_rational(abs(fr.constant)),
                "predicted_c": predicted_c,
                "predicted_matches": abs(fr.constant) == predicted_c,
                "shifted_candidate_c": alt_c,
                "shifted_candidate_matches": abs(fr.constant) == alt_c,
            }
            if not exponents_ok:
                report.failures.append(
                    f"one_repeated_root: exponents {fr.to_json()['t']} differ from the predicted pattern"
                )
            if abs(fr.constant) != predicted_c:
                report.findings.append(
                    f"one_repeated_root: |c| = {format_rational(abs(fr.constant))}, "
                    f"k(k+1)...(k+r-1) = {predicted_c}"
                )

    if "two_repeated_roots" in patterns:
        a = {i: SparsePoly.var(nv, i) for i in range(1, nv)}
        form3 = a[1] + a[2] * 2 - a[3] * 3
        form4 = a[1] + a[2] * 2 - a[4] * 3
        factored = {
            cols: factor_minor(det) for cols, det in sorted(by_cols.items()) if not det.is_zero()
        }
        match3 = [list(c) for c, fr in factored.items() if _proportional(fr.residual, form3)]
        match4 = [list(c) for c, fr in factored.items() if _proportional(fr.residual, form4)]
        principal_ok = list(principal) in match3
        report.sections["two_repeated_roots"] = {
            "k": ks[0],
            "l": ks[1],
            "minors": {
                ",".join(map(str, c)): (factored[c].to_json() if c in factored else None)
                for c in sorted(by_cols)
            },
            "principal_columns": list(principal),
            "principal_g_matches_a1+2a2-3a3": principal_ok,
            "columns_with_g_matching_a1+2a2-3a3": match3,
            "columns_with_g_matching_a1+2a2-3a4": match4,
        }
        if not principal_ok:
            report.findings.append(
                "two_repeated_roots: principal g is not proportional to a1 + 2*a2 - 3*a3 "
                f"(matching column sets: {match3})"
            )
        if not match4:
            report.findings.append("two_repeated_roots: no minor has g proportional to a1 + 2*a2 - 3*a4")
    return report


def explore_two_repeated(max_k: int, columns: Tuple[int, ...] = (1, 2, 3)) -> List[Dict]:
    """Residual ``g`` of one minor for every profile ``(k, l, 1, 1, 1)`` with ``k <= max_k``.

    Also flags the profiles whose residual is proportional to ``a1 + 2a2 - 3a3``.
    """
    rows = []
    for k in range(2, max_k + 1):
        for l in range(2, k + 1):
            profile = MultiplicityProfile((k, l, 1, 1, 1))
            det = enumerate_minors(profile, [columns])[0].det
            fr = factor_minor(det)
            a = {i: SparsePoly.var(det.nvars, i) for i in range(1, det.nvars)}
            rows.append(
                {
                    "profile": str(profile),
                    "columns": list(columns),
                    "c": format_rational(fr.constant),
                    "g": str(fr.residual),
                    "matches_a1+2a2-3a3": _proportional(fr.residual, a[1] + a[2] * 2 - a[3] * 3),
                }
            )
    return rows
