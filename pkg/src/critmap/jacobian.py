"""Jacobian of the roots-to-critical-values map and checks of its corank-one structure.

For ``f(x) = prod (x - a_m)^{k_m}`` the map sends the roots to the values of
``f'`` at the roots.  Its Jacobian has entries ``d/da_j [f'(a_i)]``.  With all
roots simple this is the matrix ``T``:

    T[i][j] = -prod_{m != i, j} (a_i - a_m)          (i != j)
    T[i][i] = -sum_{j != i} T[i][j]

Every principal minor ``D_k`` equals ``(-1)^C(n-1,2) (n-1)! disc(f_k)``, where
``disc(f_k)`` is the product of squared differences of the roots other than
``a_k``.  The row sums vanish, so ``T`` has rank exactly ``n - 1`` at distinct
roots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Optional, Sequence

from .matrix import (
    SYMBOLIC_GUARD,
    GuardError,
    RingMatrix,
    determinant,
    rational_rank,
    submatrix,
)
from .poly import SparsePoly, discriminant_square_product, format_rational
from .sampling import derive_seed, sample_distinct_roots

DEFAULT_BOUND = 50

# Conventions stated in every structure report.
CONVENTION_NOTES = (
    "off-diagonal entries carry a minus sign: T_ij = -f_ij(a_i)",
    "degree checks index the first column as j=1, so row i>1, column 1 has a1-degree 0",
)


# -- shared builders ------------------------------------------------------------


def critical_jacobian(
    mults: Sequence[int],
    root_vars: Optional[Sequence[int]] = None,
    nvars: Optional[int] = None,
) -> RingMatrix:
    """Closed-form symbolic Jacobian for roots with multiplicities ``mults``.

    ``root_vars[i]`` is the variable index carrying root ``i``; by default
    roots 1..r live in variables 1..r of ``Q[x, a1..ar]``.
    """
    r = len(mults)
    if root_vars is None:
        root_vars = list(range(1, r + 1))
    if nvars is None:
        nvars = max(root_vars) + 1
    zero = SparsePoly.zero(nvars)
    if r == 0:
        return RingMatrix([], nvars=nvars)
    diff = [[SparsePoly.root_difference(nvars, root_vars[i], root_vars[m]) for m in range(r)]
            for i in range(r)]
    rows = []
    for i in range(r):
        if mults[i] >= 2:
            rows.append([zero] * r)
            continue
        # powers[m] = (a_i - a_m)^{k_m}, reused across columns
        powers = {m: diff[i][m] ** mults[m] for m in range(r) if m != i}
        row = [zero] * r
        for j in range(r):
            if j == i:
                continue
            entry = diff[i][j] ** (mults[j] - 1) * (-mults[j])
            for m in range(r):
                if m != i and m != j:
                    entry = entry * powers[m]
            row[j] = entry
        row[i] = -sum(row, zero)
        rows.append(row)
    return RingMatrix(rows, ncols=r, nvars=nvars)


def critical_jacobian_from_definition(
    mults: Sequence[int],
    root_vars: Optional[Sequence[int]] = None,
    nvars: Optional[int] = None,
) -> RingMatrix:
    """Same matrix, built by differentiating ``f'(a_i)`` from scratch."""
    r = len(mults)
    if root_vars is None:
        root_vars = list(range(1, r + 1))
    if nvars is None:
        nvars = max(root_vars) + 1
    f = SparsePoly.constant(nvars, 1)
    for v, k in zip(root_vars, mults):
        f = f * SparsePoly.root_difference(nvars, 0, v) ** k
    fprime = f.diff(0)
    rows = []
    for vi in root_vars:
        at_root = fprime.subs(0, SparsePoly.var(nvars, vi))
        rows.append([at_root.diff(vj) for vj in root_vars])
    return RingMatrix(rows, ncols=r, nvars=nvars)


def evaluate_critical_jacobian(mults: Sequence[int], roots: Sequence[Fraction]) -> RingMatrix:
    """Closed-form Jacobian evaluated at rational roots (no symbolic expansion)."""
    r = len(mults)
    if len(roots) != r:
        raise ValueError(f"{len(roots)} roots for {r} multiplicities")
    roots = [Fraction(a) for a in roots]
    rows = []
    for i in range(r):
        row = [Fraction(0)] * r
        if mults[i] == 1:
            d = [roots[i] - roots[m] for m in range(r)]
            for j in range(r):
                if j == i:
                    continue
                entry = -mults[j] * d[j] ** (mults[j] - 1)
                for m in range(r):
                    if m != i and m != j:
                        entry *= d[m] ** mults[m]
                row[j] = entry
            row[i] = -sum(row)
        rows.append(row)
    return RingMatrix(rows, ncols=r)


def check_distinct(roots: Sequence[Fraction]) -> None:
    if len(set(Fraction(a) for a in roots)) != len(roots):
        raise ValueError("roots must be pairwise distinct")


def _guard(n: int, limit: int, override: bool, what: str) -> None:
    if n > limit and not override:
        raise GuardError(f"{what} at n={n} exceeds the symbolic guard ({limit})")


# -- T and its minors -------------------------------------------------------------


@dataclass(frozen=True)
class JacobianT:
    n: int
    matrix: RingMatrix

    @property
    def nvars(self) -> int:
        return self.n + 1


def build_T(n: int) -> JacobianT:
    if n < 2:
        raise ValueError("T needs at least two roots")
    return JacobianT(n, critical_jacobian([1] * n, nvars=n + 1))


def evaluate_T(t: JacobianT, roots: Sequence) -> RingMatrix:
    """Entrywise substitution of distinct rational roots into symbolic ``T``."""
    if len(roots) != t.n:
        raise ValueError(f"expected {t.n} roots, got {len(roots)}")
    check_distinct(roots)
    point = {i + 1: Fraction(a) for i, a in enumerate(roots)}
    return t.matrix.map(lambda e: e.evaluate(point).constant_value())


def principal_minor_det(t: JacobianT, k: int, override_guard: bool = False) -> SparsePoly:
    """``D_k``: determinant of ``T`` without row and column ``k`` (1-based)."""
    if not 1 <= k <= t.n:
        raise IndexError(f"k={k} outside 1..{t.n}")
    minor = submatrix(t.matrix, [k - 1], [k - 1])
    return determinant(minor, override_guard=override_guard)


def proposition_factor(n: int) -> int:
    """The constant ``(-1)^C(n-1,2) (n-1)!``."""
    return (-1) ** comb(n - 1, 2) * factorial(n - 1)


def proposition_rhs(n: int, k: int) -> SparsePoly:
    others = [i for i in range(1, n + 1) if i != k]
    return discriminant_square_product(others, nvars=n + 1) * proposition_factor(n)


@dataclass
class PropositionReport:
    n: int
    mode: str
    outcomes: List[Dict] = field(default_factory=list)
    trials: int = 0
    seed: Optional[int] = None
    bound: Optional[int] = None

    @property
    def passed(self) -> bool:
        return bool(self.outcomes) and all(o["equal"] for o in self.outcomes)

    def to_json(self) -> Dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "trials": self.trials,
            "seed": self.seed,
            "bound": self.bound,
            "sign_and_factorial": proposition_factor(self.n),
            "checked": len(self.outcomes),
            "passed": self.passed,
            "outcomes": self.outcomes,
        }


def verify_proposition(
    n: int,
    mode: str = "symbolic",
    trials: int = 1,
    seed: int = 1,
    bound: int = DEFAULT_BOUND,
    override_guard: bool = False,
) -> PropositionReport:
    """Check ``D_k = (-1)^C(n-1,2) (n-1)! disc(f_k)`` for every k.

    ``symbolic`` compares polynomials; ``numeric`` compares exact rationals at
    ``trials`` seeded distinct root vectors.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if mode == "symbolic":
        _guard(n - 1, SYMBOLIC_GUARD, override_guard, "symbolic proposition")
        t = build_T(n)
        report = PropositionReport(n, mode)
        for k in range(1, n + 1):
            left = principal_minor_det(t, k, override_guard=override_guard)
            right = proposition_rhs(n, k)
            report.outcomes.append(
                {"k": k, "left": str(left), "right": str(right), "equal": (left - right).is_zero()}
            )
        return report
    if mode != "numeric":
        raise ValueError(f"unknown mode {mode!r}")
    if trials < 1:
        raise ValueError("numeric mode needs at least one trial")
    report = PropositionReport(n, mode, trials=trials, seed=seed, bound=max(bound, n))
    factor = proposition_factor(n)
    for trial in range(trials):
        roots = sample_distinct_roots(n, derive_seed(seed, trial), report.bound)
        tm = evaluate_critical_jacobian([1] * n, roots)
        for k in range(1, n + 1):
            left = determinant(submatrix(tm, [k - 1], [k - 1]))
            others = [roots[i] for i in range(n) if i != k - 1]
            disc = Fraction(1)
            for a in range(len(others)):
                for b in range(a + 1, len(others)):
                    disc *= (others[a] - others[b]) ** 2
            right = factor * disc
            report.outcomes.append(
                {
                    "trial": trial,
                    "k": k,
                    "left": format_rational(left),
                    "right": format_rational(right),
                    "equal": left == right,
                }
            )
    return report


# -- structure of the inductive proof ----------------------------------------------


@dataclass
class StructureReport:
    n: int
    checks: Dict[str, bool] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)
    notes: Sequence[str] = CONVENTION_NOTES

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def record(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks[name] = self.checks.get(name, True) and ok
        if not ok:
            self.failures.append(f"{name}: {detail}")

    def to_json(self) -> Dict:
        return {
            "n": self.n,
            "checks": dict(self.checks),
            "failures": list(self.failures),
            "notes": list(self.notes),
            "passed": self.passed,
        }


def structural_checks(n: int, override_guard: bool = False) -> StructureReport:
    """Exact symbolic checks of the facts the inductive proof relies on.

    row_sums        every row of T sums to zero
    alpha1_degrees  deg in a1 is min(1, n-2) for i>1, j>1; 0 for i>1, j=1; n-2 for i=1
    alpha1_leading  coefficient of a1^(n-2) is -1 in T_1j (j>1) and n-1 in T_11
    recursion       d/da1 of T restricted to rows/cols 2..n equals -T' for the roots a2..an
    leading_minor   top a1-coefficient of D_n is (n-1) (-1)^(n-2) det(T' minus its last row/col)
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    _guard(n, SYMBOLIC_GUARD, override_guard, "structural checks")
    t = build_T(n)
    m = t.matrix
    report = StructureReport(n)

    for i, s in enumerate(m.row_sums()):
        report.record("row_sums", s.is_zero(), f"row {i + 1} sums to {s}")

    for i in range(n):
        for j in range(n):
            if i == 0:
                want = n - 2
            elif j == 0:
                want = 0
            else:
                want = min(1, n - 2)
            got = m[i, j].degree(1)
            report.record("alpha1_degrees", got == want, f"deg_a1 T[{i + 1},{j + 1}] = {got}, expected {want}")

    for j in range(n):
        want = n - 1 if j == 0 else -1
        c = m[0, j].coefficient(1, n - 2)
        ok = c.is_constant() and c.constant_value() == want
        report.record("alpha1_leading", ok, f"coefficient in T[1,{j + 1}] is {c}, expected {want}")

    t_prime = critical_jacobian([1] * (n - 1), root_vars=list(range(2, n + 1)), nvars=n + 1)
    for i in range(1, n):
        for j in range(1, n):
            d = m[i, j].diff(1)
            want = -t_prime[i - 1, j - 1]
            report.record("recursion", d == want, f"d/da1 T[{i + 1},{j + 1}] = {d}, expected {want}")

    d_n = principal_minor_det(t, n, override_guard=override_guard)
    top = d_n.coefficient(1, 2 * (n - 2))
    inner = determinant(
        submatrix(t_prime, [n - 2], [n - 2]), override_guard=override_guard
    )
    want = inner * ((n - 1) * (-1) ** (n - 2))
    report.record("leading_minor", top == want, f"top coefficient {top}, expected {want}")
    deg_ok = d_n.degree(1) == 2 * (n - 2)
    report.record("leading_minor", deg_ok, f"deg_a1 D_n = {d_n.degree(1)}")
    return report


def definition_crosscheck(n: int, override_guard: bool = False) -> bool:
    """Closed-form ``T`` equals ``d/da_j f'(a_i)`` computed from scratch."""
    if n < 2:
        raise ValueError("n must be at least 2")
    _guard(n, SYMBOLIC_GUARD, override_guard, "definition crosscheck")
    return build_T(n).matrix == critical_jacobian_from_definition([1] * n, nvars=n + 1)


def corank_check(roots: Sequence) -> int:
    """Exact rank of ``T`` at distinct rational roots (expected ``n - 1``)."""
    if len(roots) < 2:
        raise ValueError("need at least two roots")
    check_distinct(roots)
    return rational_rank(evaluate_critical_jacobian([1] * len(roots), roots))
