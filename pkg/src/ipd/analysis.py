"""Verification and evaluation: privacy checks, shape validators, convex order.

check_ip decides inferential privacy from the width grid alone: a structure is
eps-private when, within every signal column, the widths of any two secrets
differ by a factor of at most e**eps. check_regions tests the geometric
fingerprints that optimal structures must carry (0/1 cell posteriors, binding
width ratios on interior columns, staircase-shaped regions). Both report and
never raise on a failing structure.

blackwell_dominates orders posterior summaries by informativeness via the
convex order. expected_utility and utility_gain evaluate structures for a
decision maker with a convex utility of the posterior.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Mapping

import numpy as np

from .errors import MeanMismatch, ValidationError
from .model import InfoStructure, PosteriorSummary, Prior, posterior_summary
from .numeric import Scalar, check_slack, exactify, is_exact, log_of, ratio_bound

if TYPE_CHECKING:  # pragma: no cover - type-only import to avoid a cycle
    from .binary import BinarySolution

BUILTIN_FAMILIES = ("abs", "quadratic", "negentropy")


@dataclass(frozen=True)
class UtilityFn:
    """Convex utility of the posterior probability q = P(Y=1 | T).

    Families:
        abs:        |2q - 1|
        quadratic:  (2q - 1)**2
        negentropy: q*ln(q) + (1-q)*ln(1-q) + 1, with 0*ln(0) = 0
        rewards:    max over actions a of q*r[1][a] + (1-q)*r[0][a], for a
                    reward matrix r[y][a]; piecewise linear and convex.

    Convexity is re-checked at construction by second differences on a
    1001-point grid, so a concave reward matrix is rejected early. Calls
    accept scalars (Fractions stay exact except for negentropy, which is
    inherently transcendental) and numpy arrays.
    """

    family: str
    rewards: tuple[tuple[Scalar, ...], ...] | None = None

    def __post_init__(self) -> None:
        if self.family in BUILTIN_FAMILIES:
            if self.rewards is not None:
                raise ValidationError(
                    f"family {self.family!r} does not take a reward matrix"
                )
        elif self.family == "rewards":
            if self.rewards is None:
                raise ValidationError("family 'rewards' needs a reward matrix")
            matrix = tuple(tuple(exactify(x) for x in row) for row in self.rewards)
            if len(matrix) != 2 or not matrix[0] or len(matrix[0]) != len(matrix[1]):
                raise ValidationError(
                    "reward matrix must be rectangular with rows for y=0 and y=1"
                )
            object.__setattr__(self, "rewards", matrix)
        else:
            raise ValidationError(f"unknown utility family {self.family!r}")
        self._check_convexity()

    def _check_convexity(self) -> None:
        grid = np.linspace(0.0, 1.0, 1001)
        values = self(grid)
        second = values[:-2] - 2.0 * values[1:-1] + values[2:]
        scale = max(1.0, float(np.max(np.abs(values))))
        if float(np.min(second)) < -1e-9 * scale:
            raise ValidationError(
                f"utility {self.label()!r} is not convex on [0, 1]"
            )

    def label(self) -> str:
        return self.family

    def __call__(self, q):
        if isinstance(q, np.ndarray):
            return self._call_array(q)
        if self.family == "abs":
            return abs(2 * q - 1)
        if self.family == "quadratic":
            x = 2 * q - 1
            return x * x
        if self.family == "negentropy":
            x = float(q)
            left = x * math.log(x) if x > 0.0 else 0.0
            right = (1.0 - x) * math.log(1.0 - x) if x < 1.0 else 0.0
            return left + right + 1.0
        return max(
            q * r1 + (1 - q) * r0 for r0, r1 in zip(self.rewards[0], self.rewards[1])
        )

    def _call_array(self, q: np.ndarray) -> np.ndarray:
        if self.family == "abs":
            return np.abs(2.0 * q - 1.0)
        if self.family == "quadratic":
            return (2.0 * q - 1.0) ** 2
        if self.family == "negentropy":
            x = np.clip(q, 0.0, 1.0)
            with np.errstate(divide="ignore", invalid="ignore"):
                left = np.where(x > 0.0, x * np.log(np.where(x > 0.0, x, 1.0)), 0.0)
                right = np.where(
                    x < 1.0, (1.0 - x) * np.log(np.where(x < 1.0, 1.0 - x, 1.0)), 0.0
                )
            return left + right + 1.0
        r0 = np.asarray([float(x) for x in self.rewards[0]])
        r1 = np.asarray([float(x) for x in self.rewards[1]])
        stacked = q[..., None] * r1 + (1.0 - q[..., None]) * r0
        return np.max(stacked, axis=-1)


def parse_utility(spec: str, rewards_loader=None) -> UtilityFn:
    """Parse a CLI utility spec: a family name or "rewards:<path to JSON>".

    The loader argument maps a path to a reward matrix; the CLI passes a JSON
    file reader, tests can pass a stub.
    """
    if spec in BUILTIN_FAMILIES:
        return UtilityFn(spec)
    if spec.startswith("rewards:"):
        path = spec[len("rewards:"):]
        if not path:
            raise ValidationError("rewards spec needs a path: rewards:<file>")
        if rewards_loader is None:
            raise ValidationError("no loader available for a rewards file")
        matrix = rewards_loader(path)
        return UtilityFn("rewards", rewards=tuple(tuple(row) for row in matrix))
    raise ValidationError(
        f"unknown utility spec {spec!r}; expected one of "
        f"{', '.join(BUILTIN_FAMILIES)} or rewards:<path>"
    )


@dataclass(frozen=True)
class IpReport:
    """Outcome of an inferential-privacy check.

    Attributes:
        satisfied: True when every column's width ratio is within e**eps.
        max_log_ratio: Largest ln(width ratio) over columns; +inf when a zero
            width faces a positive one.
        witness: (signal, secret_wide, secret_narrow) for the first violating
            column, None when satisfied.
        binding: Per positive-mass signal, whether its max/min width ratio
            equals e**eps (within the check slack; exactly in rational mode).
    """

    satisfied: bool
    max_log_ratio: float
    witness: tuple[str, str, str] | None
    binding: Mapping[str, bool]


def check_ip(
    st: InfoStructure, eps: float | None = None, *, exp_eps: Scalar | None = None
) -> IpReport:
    """Check inferential privacy of a structure at budget eps.

    Ratios are compared in log space with the check slack in float mode; when
    both the widths and the budget are exact rationals the comparison is
    exact. Columns with no mass at all are skipped; a zero width against a
    positive width in the same column is an infinite ratio and always fails.
    """
    bound = ratio_bound(eps, exp_eps)
    eps_f = log_of(bound)
    slack = check_slack()
    exact = is_exact(bound) and all(
        is_exact(x) for row in st.widths for x in row
    )
    secrets = st.prior.secrets
    max_log_ratio = 0.0
    witness: tuple[str, str, str] | None = None
    binding: dict[str, bool] = {}
    for t, label in enumerate(st.signals):
        column = [(st.widths[s][t], s) for s in range(st.prior.n)]
        positive = [(x, s) for x, s in column if x > 0]
        if not positive:
            continue
        zeros = [s for x, s in column if x == 0]
        hi, s_hi = max(positive)
        lo, s_lo = min(positive)
        if zeros:
            max_log_ratio = float("inf")
            binding[label] = False
            if witness is None:
                witness = (label, secrets[s_hi], secrets[zeros[0]])
            continue
        col_log = log_of(hi / lo)
        max_log_ratio = max(max_log_ratio, col_log)
        if exact:
            binding[label] = hi == bound * lo
            ok = hi <= bound * lo
        else:
            binding[label] = abs(col_log - eps_f) <= slack
            ok = col_log <= eps_f + slack
        if not ok and witness is None:
            witness = (label, secrets[s_hi], secrets[s_lo])
    return IpReport(
        satisfied=witness is None,
        max_log_ratio=max_log_ratio,
        witness=witness,
        binding=binding,
    )


@dataclass(frozen=True)
class RegionReport:
    """Geometric fingerprint of optimality for a structure.

    After sorting secrets by decreasing q_s (the canonical order) and signals
    by decreasing posterior q_t, an optimal structure shows: 0/1 cell
    posteriors; on every interior-posterior column, exactly two width values
    with ratio e**eps; the yellow region forming an upper-left staircase; and
    the wide-yellow / wide-white cells forming upper-left / lower-right
    staircases within the interior columns.

    Zero-width cells prove nothing either way; they are excluded from every
    region and listed in zero_width_cells as a warning.
    """

    cells_binary: bool
    columns_binding: bool
    a_upper_left: bool
    b_upper_left: bool
    c_lower_right: bool
    witnesses: Mapping[str, tuple | None]
    zero_width_cells: tuple[tuple[str, str], ...]

    @property
    def all_flags(self) -> bool:
        return (
            self.cells_binary
            and self.columns_binding
            and self.a_upper_left
            and self.b_upper_left
            and self.c_lower_right
        )


def _staircase_violation(members, wildcard, universe, lower_right=False):
    """First (member, offender) pair breaking staircase closure, if any.

    members must be closed under moving up-left (or down-right when
    lower_right is set) within the universe of (row, col) positions,
    ignoring wildcard positions.
    """
    member_set = set(members)
    for (i, j) in sorted(member_set):
        for (i2, j2) in universe:
            if (i2, j2) in member_set or (i2, j2) in wildcard:
                continue
            inside = (i2 >= i and j2 >= j) if lower_right else (i2 <= i and j2 <= j)
            if inside:
                return ((i, j), (i2, j2))
    return None


def check_regions(
    st: InfoStructure, eps: float | None = None, *, exp_eps: Scalar | None = None
) -> RegionReport:
    """Validate the optimality fingerprints of a structure at budget eps.

    All five flags are informational: the function reports and never raises.
    Zero-mass signals are ignored entirely; zero-width cells inside kept
    columns are treated as wildcards and reported as warnings.
    """
    bound = ratio_bound(eps, exp_eps)
    eps_f = log_of(bound)
    if eps_f <= 0:
        raise ValidationError("region checks need a positive budget")
    slack = check_slack()
    prior = st.prior
    n = prior.n

    kept = [t for t in range(st.num_signals) if st.signal_mass(t) > 0]
    post_of: dict[int, Scalar] = {}
    for t in kept:
        mass = st.signal_mass(t)
        yellow = sum(
            prior.p[s] * st.widths[s][t] * st.cells[s][t] for s in range(n)
        )
        post_of[t] = yellow / mass
    kept.sort(key=lambda t: (-float(post_of[t]), t))

    witnesses: dict[str, tuple | None] = {
        "cells_binary": None,
        "columns_binding": None,
        "a_upper_left": None,
        "b_upper_left": None,
        "c_lower_right": None,
    }
    zero_width: list[tuple[str, str]] = []
    yellow_cells: set[tuple[int, int]] = set()
    white_cells: set[tuple[int, int]] = set()
    wildcard: set[tuple[int, int]] = set()
    cells_binary = True

    for j, t in enumerate(kept):
        for i in range(n):
            if st.widths[i][t] == 0:
                wildcard.add((i, j))
                zero_width.append((prior.secrets[i], st.signals[t]))
                continue
            value = st.cells[i][t]
            if value >= 1 - slack:
                yellow_cells.add((i, j))
            elif value <= slack:
                white_cells.add((i, j))
            elif cells_binary:
                cells_binary = False
                witnesses["cells_binary"] = (
                    prior.secrets[i],
                    st.signals[t],
                    float(value),
                )

    interior = [
        j
        for j, t in enumerate(kept)
        if slack < float(post_of[t]) < 1 - slack
    ]

    columns_binding = True
    wide_cells: set[tuple[int, int]] = set()
    for j in interior:
        t = kept[j]
        widths = [(st.widths[i][t], i) for i in range(n) if st.widths[i][t] > 0]
        lo = min(x for x, _ in widths)
        hi = max(x for x, _ in widths)
        ratio_ok = abs(log_of(hi / lo) - eps_f) <= slack
        two_valued = all(
            min(abs(x - lo), abs(x - hi)) <= slack for x, _ in widths
        )
        for x, i in widths:
            if abs(x - hi) <= slack:
                wide_cells.add((i, j))
        if columns_binding and not (ratio_ok and two_valued):
            columns_binding = False
            witnesses["columns_binding"] = (st.signals[t], float(lo), float(hi))

    universe = [(i, j) for j in range(len(kept)) for i in range(n)]
    a_hit = _staircase_violation(yellow_cells, wildcard, universe)
    a_upper_left = a_hit is None
    if a_hit:
        (i, j), (i2, j2) = a_hit
        witnesses["a_upper_left"] = (
            (prior.secrets[i], st.signals[kept[j]]),
            (prior.secrets[i2], st.signals[kept[j2]]),
        )

    # B and C live inside the interior columns; positions are re-indexed by
    # the column's rank among interior columns so the staircase test sees a
    # contiguous grid.
    rank = {j: r for r, j in enumerate(interior)}
    interior_universe = [(i, rank[j]) for j in interior for i in range(n)]
    interior_wild = {(i, rank[j]) for (i, j) in wildcard if j in rank}
    b_members = {
        (i, rank[j]) for (i, j) in wide_cells if (i, j) in yellow_cells
    }
    c_members = {
        (i, rank[j]) for (i, j) in wide_cells if (i, j) in white_cells
    }
    b_hit = _staircase_violation(b_members, interior_wild, interior_universe)
    b_upper_left = b_hit is None
    if b_hit:
        (i, r), (i2, r2) = b_hit
        witnesses["b_upper_left"] = (
            (prior.secrets[i], st.signals[kept[interior[r]]]),
            (prior.secrets[i2], st.signals[kept[interior[r2]]]),
        )
    c_hit = _staircase_violation(
        c_members, interior_wild, interior_universe, lower_right=True
    )
    c_lower_right = c_hit is None
    if c_hit:
        (i, r), (i2, r2) = c_hit
        witnesses["c_lower_right"] = (
            (prior.secrets[i], st.signals[kept[interior[r]]]),
            (prior.secrets[i2], st.signals[kept[interior[r2]]]),
        )

    return RegionReport(
        cells_binary=cells_binary,
        columns_binding=columns_binding,
        a_upper_left=a_upper_left,
        b_upper_left=b_upper_left,
        c_lower_right=c_lower_right,
        witnesses=witnesses,
        zero_width_cells=tuple(zero_width),
    )


@dataclass(frozen=True)
class BlackwellResult:
    """Verdict of a convex-order comparison between two posterior summaries."""

    dominates: bool
    equivalent: bool


def _hockey_stick(summary: PosteriorSummary, x: Scalar) -> Scalar:
    return sum(p * max(q - x, 0) for p, q in zip(summary.p, summary.q))


def blackwell_dominates(a: PosteriorSummary, b: PosteriorSummary) -> BlackwellResult:
    """Test whether summary a is more informative than b in the convex order.

    a dominates b when E[u(Q_a)] >= E[u(Q_b)] for every convex u, which for
    finite supports reduces to comparing sum_t p_t*max(q_t - x, 0) at every
    support point x of either summary. Equivalence is dominance both ways.

    Raises:
        MeanMismatch: The summaries disagree on P(Y=1) beyond the check slack.
    """
    slack = check_slack()
    if abs(a.mean - b.mean) > slack:
        raise MeanMismatch(
            f"summaries have different means: {float(a.mean)!r} vs {float(b.mean)!r}"
        )
    xs = sorted(set(a.q) | set(b.q))
    forward = all(_hockey_stick(a, x) >= _hockey_stick(b, x) - slack for x in xs)
    backward = all(_hockey_stick(b, x) >= _hockey_stick(a, x) - slack for x in xs)
    return BlackwellResult(dominates=forward, equivalent=forward and backward)


def expected_utility(st: InfoStructure, u: UtilityFn) -> Scalar:
    """E[u(q_T)] over positive-mass signals; exact for rational structures
    except with the negentropy family."""
    summary = posterior_summary(st)
    return sum(p * u(q) for p, q in zip(summary.p, summary.q))


@dataclass(frozen=True)
class GainReport:
    """Utility of the eps-optimal structure relative to the private baseline.

    gain is u_eps / u_0; when the baseline utility is zero the ratio is
    reported as +inf (or 1 when the optimum is also zero) and zero_baseline
    is set instead of raising.
    """

    u_eps: Scalar
    u_0: Scalar
    gain: Scalar
    zero_baseline: bool
    solution_eps: "BinarySolution"
    solution_0: "BinarySolution"


def utility_gain(
    prior: Prior,
    eps: float | None = None,
    u: UtilityFn | None = None,
    *,
    exp_eps: Scalar | None = None,
) -> GainReport:
    """Compare the eps-optimal binary solution against perfect privacy.

    Both utilities come from the closed-form solvers; at eps=0 the two
    coincide and the gain is 1.
    """
    if u is None:
        raise TypeError("utility_gain needs a utility function")
    # Imported here: the binary solver depends on this module for its gap
    # construction, so a top-level import would be circular.
    from .binary import solve_binary, solve_perfect_privacy

    bound = ratio_bound(eps, exp_eps)
    solution_0 = solve_perfect_privacy(prior)
    if bound == 1:
        solution_eps = solution_0
    else:
        solution_eps = solve_binary(prior, exp_eps=bound)
    u_0 = expected_utility(solution_0.structure, u)
    u_eps = expected_utility(solution_eps.structure, u)
    if u_0 == 0:
        gain = float("inf") if u_eps > 0 else 1
        zero_baseline = True
    else:
        gain = u_eps / u_0
        zero_baseline = False
    return GainReport(
        u_eps=u_eps,
        u_0=u_0,
        gain=gain,
        zero_baseline=zero_baseline,
        solution_eps=solution_eps,
        solution_0=solution_0,
    )
