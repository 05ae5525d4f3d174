"""Priors, information structures, mechanisms, and equivalent transformations.

The objects here describe a joint distribution over a binary state Y, a finite
secret S, and a released signal T. A Prior fixes P(S) and P(Y=1|S). An
InfoStructure adds the signal: per secret, a row of column widths P(T=t|S=s)
and cell posteriors P(Y=1|S=s,T=t). A Mechanism is the equivalent release
kernel P(T=t|S=s,Y=y). Structures and mechanisms are two coordinates for the
same joint distribution and the conversions between them are exact.

Secrets are kept in canonical order, sorted by decreasing P(Y=1|S=s) with the
user's order as tie-break; the permutation back to the user's order is stored
on the Prior. All values are immutable after construction and validated on
construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadWeights,
    ConditionalOutOfRange,
    DegenerateConditional,
    MassNotNormalized,
    NonPositiveMass,
    NotEquivalentSignals,
    ValidationError,
    ZeroMassContext,
)
from .numeric import NORM_TOL, Scalar, check_slack, exactify


def _as_scalar_tuple(values: Iterable[Scalar]) -> tuple[Scalar, ...]:
    return tuple(exactify(v) for v in values)


def _clamp_noise(x: Scalar) -> Scalar:
    """Absorb float round-off that lands a hair outside [0, 1]."""
    if isinstance(x, float):
        if -NORM_TOL < x < 0.0:
            return 0.0
        if 1.0 < x < 1.0 + NORM_TOL:
            return 1.0
    return x


@dataclass(frozen=True)
class Prior:
    """Joint prior over (S, Y) in canonical secret order.

    Attributes:
        secrets: Secret labels, ordered by decreasing q.
        p: Marginal mass of each secret; positive, sums to 1.
        q: P(Y=1 | S=s) per secret, in [0, 1], non-increasing.
        perm: 1-based position of each canonical secret in the user's input
            order, so perm == (2, 1) means the user listed them swapped.
    """

    secrets: tuple[str, ...]
    p: tuple[Scalar, ...]
    q: tuple[Scalar, ...]
    perm: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "secrets", tuple(str(s) for s in self.secrets))
        object.__setattr__(self, "p", _as_scalar_tuple(self.p))
        object.__setattr__(self, "q", _as_scalar_tuple(self.q))
        object.__setattr__(self, "perm", tuple(int(k) for k in self.perm))
        n = len(self.secrets)
        if n < 2:
            raise ValidationError("a prior needs at least 2 secrets")
        if len(set(self.secrets)) != n:
            raise ValidationError("secret labels must be unique")
        if len(self.p) != n or len(self.q) != n or len(self.perm) != n:
            raise ValidationError("secrets, p, q, perm must have equal length")
        if sorted(self.perm) != list(range(1, n + 1)):
            raise ValidationError("perm must be a 1-based permutation")
        for label, mass in zip(self.secrets, self.p):
            if mass <= 0:
                raise NonPositiveMass(f"secret {label!r} has mass {mass}")
        total = sum(self.p)
        if abs(total - 1) > NORM_TOL:
            raise MassNotNormalized(f"secret masses sum to {float(total)!r}")
        for label, cond in zip(self.secrets, self.q):
            if cond < 0 or cond > 1:
                raise ConditionalOutOfRange(f"q for secret {label!r} is {cond}")
        for a, b in zip(self.q, self.q[1:]):
            if a < b:
                raise ValidationError("q must be non-increasing in canonical order")

    @property
    def n(self) -> int:
        return len(self.secrets)

    @property
    def is_binary(self) -> bool:
        return self.n == 2

    @property
    def p_y1(self) -> Scalar:
        """Marginal probability of the state, P(Y=1)."""
        return sum(ps * qs for ps, qs in zip(self.p, self.q))

    def secret_index(self, label: str) -> int:
        try:
            return self.secrets.index(label)
        except ValueError:
            raise KeyError(f"unknown secret {label!r}") from None

    def user_order(self) -> tuple[int, ...]:
        """Canonical indices arranged back into the user's input order."""
        by_position = sorted(range(self.n), key=lambda k: self.perm[k])
        return tuple(by_position)


def load_prior(
    pairs: Sequence[tuple[Scalar, Scalar]],
    labels: Sequence[str] | None = None,
) -> Prior:
    """Build a canonical Prior from (mass, P(Y=1|S)) pairs in user order.

    Args:
        pairs: One (p, q) pair per secret.
        labels: Optional secret labels; defaults to s0, s1, ...

    Returns:
        Prior with secrets sorted by decreasing q (stable in the user order)
        and the permutation back to the input order recorded.

    Raises:
        NonPositiveMass: Some mass is zero or negative.
        MassNotNormalized: The masses do not sum to 1 within 1e-12.
        ConditionalOutOfRange: Some conditional lies outside [0, 1].
    """
    rows = [_as_scalar_tuple(pair) for pair in pairs]
    if any(len(row) != 2 for row in rows):
        raise ValidationError("each prior entry must be a (p, q) pair")
    if labels is None:
        labels = [f"s{k}" for k in range(len(rows))]
    labels = [str(s) for s in labels]
    if len(labels) != len(rows):
        raise ValidationError("labels and pairs must have equal length")
    order = sorted(range(len(rows)), key=lambda k: (-rows[k][1], k))
    # perm[c] is the 1-based user position canonical secret c came from.
    perm = tuple(order[c] + 1 for c in range(len(rows)))
    return Prior(
        secrets=tuple(labels[k] for k in order),
        p=tuple(rows[k][0] for k in order),
        q=tuple(rows[k][1] for k in order),
        perm=perm,
    )


def load_prior_joint(
    table: Sequence[tuple[Scalar, Scalar]],
    labels: Sequence[str] | None = None,
) -> Prior:
    """Build a Prior from joint masses (P(S=s,Y=1), P(S=s,Y=0)) in user order.

    The joint masses must sum to 1; each secret's mass is the row total and
    its conditional is the Y=1 share of that total.
    """
    rows = [_as_scalar_tuple(row) for row in table]
    if any(len(row) != 2 for row in rows):
        raise ValidationError("each joint entry must be a (P(s,Y=1), P(s,Y=0)) pair")
    for y1, y0 in rows:
        if y1 < 0 or y0 < 0:
            raise NonPositiveMass("joint masses must be nonnegative")
    total = sum(y1 + y0 for y1, y0 in rows)
    if abs(total - 1) > NORM_TOL:
        raise MassNotNormalized(f"joint masses sum to {float(total)!r}")
    pairs = []
    for y1, y0 in rows:
        mass = y1 + y0
        if mass <= 0:
            raise NonPositiveMass("a secret has zero joint mass")
        pairs.append((mass, y1 / mass))
    return load_prior(pairs, labels)


@dataclass(frozen=True)
class InfoStructure:
    """An information structure: per-secret signal widths and cell posteriors.

    Attributes:
        prior: The underlying Prior (canonical secret order).
        signals: Signal labels, one per column.
        widths: widths[s][t] = P(T=t | S=s); each row sums to 1.
        cells: cells[s][t] = P(Y=1 | S=s, T=t) in [0, 1].

    The rows must be consistent with the prior: for every secret,
    sum_t widths[s][t] * cells[s][t] equals q_s within the check slack.
    """

    prior: Prior
    signals: tuple[str, ...]
    widths: tuple[tuple[Scalar, ...], ...]
    cells: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "signals", tuple(str(t) for t in self.signals))
        object.__setattr__(
            self,
            "widths",
            tuple(tuple(_clamp_noise(exactify(x)) for x in row) for row in self.widths),
        )
        object.__setattr__(
            self,
            "cells",
            tuple(tuple(_clamp_noise(exactify(x)) for x in row) for row in self.cells),
        )
        n, k = self.prior.n, len(self.signals)
        if k == 0:
            raise ValidationError("a structure needs at least one signal")
        if len(set(self.signals)) != k:
            raise ValidationError("signal labels must be unique")
        if len(self.widths) != n or len(self.cells) != n:
            raise ValidationError("widths and cells need one row per secret")
        if any(len(row) != k for row in self.widths) or any(
            len(row) != k for row in self.cells
        ):
            raise ValidationError("widths and cells need one column per signal")
        slack = check_slack()
        for s, row in enumerate(self.widths):
            for x in row:
                if x < 0:
                    raise ValidationError(
                        f"negative width {x} in row {self.prior.secrets[s]!r}"
                    )
            total = sum(row)
            if abs(total - 1) > NORM_TOL:
                raise MassNotNormalized(
                    f"widths for secret {self.prior.secrets[s]!r} sum to {float(total)!r}"
                )
        for s, row in enumerate(self.cells):
            for x in row:
                if x < 0 or x > 1:
                    raise ConditionalOutOfRange(
                        f"cell posterior {x} in row {self.prior.secrets[s]!r}"
                    )
        for s in range(n):
            yellow = sum(l * c for l, c in zip(self.widths[s], self.cells[s]))
            if abs(yellow - self.prior.q[s]) > slack:
                raise ValidationError(
                    f"row {self.prior.secrets[s]!r} is inconsistent with the prior: "
                    f"yellow mass {float(yellow)!r} vs q={float(self.prior.q[s])!r}"
                )

    @property
    def num_signals(self) -> int:
        return len(self.signals)

    def signal_index(self, label: str) -> int:
        try:
            return self.signals.index(label)
        except ValueError:
            raise KeyError(f"unknown signal {label!r}") from None

    def signal_mass(self, t: int) -> Scalar:
        """Marginal mass P(T=t) of column t."""
        return sum(self.prior.p[s] * self.widths[s][t] for s in range(self.prior.n))


@dataclass(frozen=True)
class PosteriorSummary:
    """Distribution of the observer's posterior after seeing the signal.

    Zero-mass signals are dropped, so every kept signal has p > 0.

    Attributes:
        signals: Labels of the kept signals.
        p: P(T=t) per kept signal, sums to 1.
        q: P(Y=1 | T=t) per kept signal.
        s_post: s_post[t][s] = P(S=s | T=t); each row sums to 1.
    """

    signals: tuple[str, ...]
    p: tuple[Scalar, ...]
    q: tuple[Scalar, ...]
    s_post: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "signals", tuple(str(t) for t in self.signals))
        object.__setattr__(self, "p", _as_scalar_tuple(self.p))
        object.__setattr__(self, "q", _as_scalar_tuple(self.q))
        object.__setattr__(
            self, "s_post", tuple(_as_scalar_tuple(row) for row in self.s_post)
        )
        k = len(self.signals)
        if not (len(self.p) == len(self.q) == len(self.s_post) == k):
            raise ValidationError("summary fields must have equal length")
        if k == 0:
            raise ValidationError("a summary needs at least one signal")
        for mass in self.p:
            if mass <= 0:
                raise NonPositiveMass("summary keeps only positive-mass signals")
        if abs(sum(self.p) - 1) > NORM_TOL:
            raise MassNotNormalized("signal masses must sum to 1")
        for post in self.q:
            if post < 0 or post > 1:
                raise ConditionalOutOfRange(f"posterior {post} outside [0, 1]")
        for row in self.s_post:
            if abs(sum(row) - 1) > NORM_TOL:
                raise MassNotNormalized("secret posteriors must sum to 1 per signal")

    @property
    def mean(self) -> Scalar:
        """The martingale mean sum_t p_t * q_t, equal to P(Y=1)."""
        return sum(pt * qt for pt, qt in zip(self.p, self.q))


def posterior_summary(st: InfoStructure) -> PosteriorSummary:
    """Summarize a structure into signal masses and posteriors.

    Zero-mass signals carry no information and are dropped.
    """
    prior = st.prior
    signals, masses, posts, s_rows = [], [], [], []
    for t, label in enumerate(st.signals):
        mass = st.signal_mass(t)
        if mass == 0:
            continue
        yellow = sum(
            prior.p[s] * st.widths[s][t] * st.cells[s][t] for s in range(prior.n)
        )
        signals.append(label)
        masses.append(mass)
        posts.append(yellow / mass)
        s_rows.append(
            tuple(prior.p[s] * st.widths[s][t] / mass for s in range(prior.n))
        )
    return PosteriorSummary(
        signals=tuple(signals), p=tuple(masses), q=tuple(posts), s_post=tuple(s_rows)
    )


@dataclass(frozen=True)
class Mechanism:
    """Release kernel P(T=t | S=s, Y=y) together with its prior.

    Attributes:
        prior: The underlying Prior.
        signals: Signal labels indexing the last kernel axis.
        kernel: kernel[s][y][t] with y in {0, 1}; rows for (s, y) contexts of
            positive prior mass sum to 1. Rows for zero-mass contexts are
            stored as full-disclosure rows so the kernel stays total.
    """

    prior: Prior
    signals: tuple[str, ...]
    kernel: tuple[tuple[tuple[Scalar, ...], tuple[Scalar, ...]], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "signals", tuple(str(t) for t in self.signals))
        object.__setattr__(
            self,
            "kernel",
            tuple(
                tuple(
                    tuple(_clamp_noise(exactify(x)) for x in row) for row in by_state
                )
                for by_state in self.kernel
            ),
        )
        n, k = self.prior.n, len(self.signals)
        if len(self.kernel) != n:
            raise ValidationError("kernel needs one block per secret")
        for s, by_state in enumerate(self.kernel):
            if len(by_state) != 2:
                raise ValidationError("kernel blocks need rows for y=0 and y=1")
            for y, row in enumerate(by_state):
                if len(row) != k:
                    raise ValidationError("kernel rows need one entry per signal")
                for x in row:
                    if x < 0 or x > 1:
                        raise ConditionalOutOfRange(
                            f"kernel entry {x} outside [0, 1]"
                        )
                mass = self.prior.p[s] * (
                    self.prior.q[s] if y == 1 else 1 - self.prior.q[s]
                )
                if mass > 0 and abs(sum(row) - 1) > NORM_TOL:
                    raise MassNotNormalized(
                        f"kernel row for ({self.prior.secrets[s]!r}, y={y}) "
                        f"sums to {float(sum(row))!r}"
                    )

    def signal_index(self, label: str) -> int:
        try:
            return self.signals.index(label)
        except ValueError:
            raise KeyError(f"unknown signal {label!r}") from None


def _extreme_signal_indices(st: InfoStructure) -> tuple[int, int]:
    """Indices of the highest- and lowest-posterior positive-mass signals."""
    summary = posterior_summary(st)
    top_label = summary.signals[max(range(len(summary.q)), key=lambda i: summary.q[i])]
    bot_label = summary.signals[min(range(len(summary.q)), key=lambda i: summary.q[i])]
    return st.signal_index(top_label), st.signal_index(bot_label)


def structure_to_mechanism(st: InfoStructure) -> Mechanism:
    """Convert a structure to its release kernel P(T | S, Y).

    For y=1 the row is widths*cells/q_s, for y=0 it is widths*(1-cells)/(1-q_s).
    Contexts of zero prior mass (q_s at 0 or 1) get a full-disclosure row: all
    mass on the signal whose posterior matches the impossible state, which
    keeps the kernel total without affecting the joint distribution.

    Raises:
        DegenerateConditional: q_s is 0 or 1 but the row still carries cell
            mass on the impossible state beyond the check slack.
    """
    prior = st.prior
    k = st.num_signals
    slack = check_slack()
    top, bot = _extreme_signal_indices(st)
    kernel = []
    for s in range(prior.n):
        qs = prior.q[s]
        yellow_row = tuple(st.widths[s][t] * st.cells[s][t] for t in range(k))
        white_row = tuple(st.widths[s][t] * (1 - st.cells[s][t]) for t in range(k))
        if qs > 0:
            row1 = tuple(x / qs for x in yellow_row)
        else:
            if sum(yellow_row) > slack:
                raise DegenerateConditional(
                    f"secret {prior.secrets[s]!r} has q=0 but yellow mass "
                    f"{float(sum(yellow_row))!r}"
                )
            row1 = tuple(1 if t == top else 0 for t in range(k))
        if qs < 1:
            row0 = tuple(x / (1 - qs) for x in white_row)
        else:
            if sum(white_row) > slack:
                raise DegenerateConditional(
                    f"secret {prior.secrets[s]!r} has q=1 but white mass "
                    f"{float(sum(white_row))!r}"
                )
            row0 = tuple(1 if t == bot else 0 for t in range(k))
        kernel.append((row0, row1))
    return Mechanism(prior=prior, signals=st.signals, kernel=tuple(kernel))


def mechanism_to_structure(m: Mechanism) -> InfoStructure:
    """Convert a release kernel back to the width/posterior grid.

    Widths are q_s*kernel[s][1] + (1-q_s)*kernel[s][0]; cell posteriors follow
    from Bayes' rule on each positive-width cell (zero-width cells get 0).
    """
    prior = m.prior
    k = len(m.signals)
    widths, cells = [], []
    for s in range(prior.n):
        qs = prior.q[s]
        row0, row1 = m.kernel[s]
        w_row, c_row = [], []
        for t in range(k):
            w = qs * row1[t] + (1 - qs) * row0[t]
            w_row.append(w)
            c_row.append(qs * row1[t] / w if w > 0 else 0)
        widths.append(tuple(w_row))
        cells.append(tuple(c_row))
    return InfoStructure(
        prior=prior, signals=m.signals, widths=tuple(widths), cells=tuple(cells)
    )


def split_signal(
    st: InfoStructure, t: str, weights: Sequence[Scalar]
) -> InfoStructure:
    """Split one signal into several, dividing its mass by the given weights.

    Every part keeps the original cell posteriors, so P(Y|T) and P(S|T) are
    unchanged and the result is equivalent to the input. A single weight of 1
    returns the structure unchanged.

    Raises:
        BadWeights: Weights are empty, non-positive, or do not sum to 1.
    """
    parts = _as_scalar_tuple(weights)
    if not parts:
        raise BadWeights("weights must be non-empty")
    if any(w <= 0 for w in parts):
        raise BadWeights("weights must be positive")
    if abs(sum(parts) - 1) > NORM_TOL:
        raise BadWeights(f"weights sum to {float(sum(parts))!r}")
    idx = st.signal_index(t)
    if len(parts) == 1:
        return st
    new_labels = tuple(f"{t}_{j + 1}" for j in range(len(parts)))
    taken = set(st.signals) - {t}
    if taken & set(new_labels):
        raise ValidationError("split labels collide with existing signals")
    signals = st.signals[:idx] + new_labels + st.signals[idx + 1 :]
    widths, cells = [], []
    for s in range(st.prior.n):
        w_row = st.widths[s]
        c_row = st.cells[s]
        widths.append(
            w_row[:idx] + tuple(w_row[idx] * part for part in parts) + w_row[idx + 1 :]
        )
        cells.append(c_row[:idx] + (c_row[idx],) * len(parts) + c_row[idx + 1 :])
    return InfoStructure(
        prior=st.prior, signals=signals, widths=tuple(widths), cells=tuple(cells)
    )


def _column_stats(
    st: InfoStructure, t: int
) -> tuple[Scalar, Scalar | None, tuple[Scalar, ...] | None]:
    """Mass, posterior, and secret posterior of column t (None when empty)."""
    mass = st.signal_mass(t)
    if mass == 0:
        return mass, None, None
    prior = st.prior
    yellow = sum(
        prior.p[s] * st.widths[s][t] * st.cells[s][t] for s in range(prior.n)
    )
    s_post = tuple(prior.p[s] * st.widths[s][t] / mass for s in range(prior.n))
    return mass, yellow / mass, s_post


def _merge_columns(st: InfoStructure, indices: Sequence[int]) -> tuple[tuple, tuple]:
    """Width rows and cell rows with the given columns summed into the first.

    Cell posteriors of the merged column are the width-weighted average per
    row, which preserves each row's yellow mass exactly.
    """
    keep = indices[0]
    drop = set(indices[1:])
    widths, cells = [], []
    for s in range(st.prior.n):
        w_row, c_row = list(st.widths[s]), list(st.cells[s])
        total = sum(st.widths[s][i] for i in indices)
        yellow = sum(st.widths[s][i] * st.cells[s][i] for i in indices)
        w_row[keep] = total
        c_row[keep] = yellow / total if total > 0 else 0
        widths.append(
            tuple(x for i, x in enumerate(w_row) if i not in drop)
        )
        cells.append(tuple(x for i, x in enumerate(c_row) if i not in drop))
    return tuple(widths), tuple(cells)


def merge_signals(st: InfoStructure, group: Iterable[str]) -> InfoStructure:
    """Merge signals that share identical posteriors into one.

    The merged signal keeps the first member's label and position and carries
    the summed mass; P(Y|T) and P(S|T) are unchanged. Zero-mass members are
    absorbed without an equivalence check. A singleton group is the identity.

    Raises:
        NotEquivalentSignals: Two positive-mass members differ in P(Y|T) or
            P(S|T) beyond the check slack.
    """
    labels = list(dict.fromkeys(group))
    if not labels:
        raise ValidationError("merge group must be non-empty")
    indices = sorted(st.signal_index(t) for t in labels)
    if len(indices) == 1:
        return st
    slack = check_slack()
    reference: tuple | None = None
    for i in indices:
        mass, post, s_post = _column_stats(st, i)
        if post is None:
            continue
        if reference is None:
            reference = (st.signals[i], post, s_post)
            continue
        ref_label, ref_post, ref_s_post = reference
        if abs(post - ref_post) > slack or any(
            abs(a - b) > slack for a, b in zip(s_post, ref_s_post)
        ):
            raise NotEquivalentSignals(
                f"signals {ref_label!r} and {st.signals[i]!r} have different posteriors"
            )
    widths, cells = _merge_columns(st, indices)
    drop = set(indices[1:])
    signals = tuple(t for i, t in enumerate(st.signals) if i not in drop)
    return InfoStructure(prior=st.prior, signals=signals, widths=widths, cells=cells)


def compress(st: InfoStructure) -> InfoStructure:
    """Drop zero-mass signals and merge every equivalence class of the rest.

    Signals are equivalent when their P(Y|T) and P(S|T) agree within the check
    slack. The first member of each class keeps its label and position. The
    result has no zero-mass columns and no two equivalent columns, so applying
    compress twice changes nothing.
    """
    stats = [(_column_stats(st, t)) for t in range(st.num_signals)]
    classes: list[list[int]] = []
    slack = check_slack()
    for t, (mass, post, s_post) in enumerate(stats):
        if post is None:
            continue
        for members in classes:
            _, ref_post, ref_s_post = stats[members[0]]
            if abs(post - ref_post) <= slack and all(
                abs(a - b) <= slack for a, b in zip(s_post, ref_s_post)
            ):
                members.append(t)
                break
        else:
            classes.append([t])
    if not classes:
        raise ValidationError("structure has no positive-mass signal")
    merged_widths = []
    merged_cells = []
    signals = tuple(st.signals[members[0]] for members in classes)
    for s in range(st.prior.n):
        w_row, c_row = [], []
        for members in classes:
            total = sum(st.widths[s][i] for i in members)
            yellow = sum(st.widths[s][i] * st.cells[s][i] for i in members)
            w_row.append(total)
            c_row.append(yellow / total if total > 0 else 0)
        merged_widths.append(tuple(w_row))
        merged_cells.append(tuple(c_row))
    return InfoStructure(
        prior=st.prior,
        signals=signals,
        widths=tuple(merged_widths),
        cells=tuple(merged_cells),
    )


def sample_signal(
    m: Mechanism, s: str, y: int, rng_seed: int, count: int
) -> list[str]:
    """Draw signals i.i.d. from the kernel row for (secret, state).

    Args:
        m: The release mechanism.
        s: Secret label.
        y: State, 0 or 1.
        rng_seed: Seed for numpy's default_rng; draws are deterministic per seed.
        count: Number of draws; 0 gives an empty list.

    Raises:
        ZeroMassContext: P(S=s, Y=y) is zero under the prior.
    """
    if y not in (0, 1):
        raise ValidationError(f"state must be 0 or 1, got {y!r}")
    if count < 0:
        raise ValidationError("count must be nonnegative")
    idx = m.prior.secret_index(s)
    mass = m.prior.p[idx] * (m.prior.q[idx] if y == 1 else 1 - m.prior.q[idx])
    if mass == 0:
        raise ZeroMassContext(f"P(S={s!r}, Y={y}) is zero under the prior")
    if count == 0:
        return []
    row = np.asarray([float(x) for x in m.kernel[idx][y]], dtype=float)
    row = row / row.sum()
    rng = np.random.default_rng(rng_seed)
    draws = rng.choice(len(row), size=count, p=row)
    return [m.signals[t] for t in draws]
