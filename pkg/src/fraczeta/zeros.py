"""Ingesting zeta-zero ordinates and digitizing them into base-4 pairs.

Zero files are plain text, one positive decimal per line, '#' comments
allowed.  Values are parsed as exact rationals (never through a binary
float), so reordering and comparisons are exact and the digitization
t = frac(gamma / 2pi), a = floor(4t) can be recomputed at any working
precision from the same source digits.  Because published ordinates are
truncated decimals, every digit carries a boundary flag marking how
close 4t came to an integer, where floor() is discontinuous.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from pathlib import Path

import mpmath as mp

from .errors import InputError, ParseError

DEFAULT_DIGITIZE_DPS = 50
MIN_DIGITIZE_DPS = 40
DEFAULT_BOUNDARY_TOL = 1e-6

CHI2_CRITICAL_05_DF3 = 7.8147

# pi to 100 significant digits; digitization at <= 100 digits reads 2*pi
# from this constant so the precision provenance is a fixed literal.
PI_100 = (
    "3.14159265358979323846264338327950288419716939937510"
    "5820974944592307816406286208998628034825342117068"
)


def pi_at(dps: int) -> mp.mpf:
    """pi at the current working precision, from the stored literal when it suffices."""
    if dps <= 100:
        return mp.mpf(PI_100)
    return +mp.pi


@dataclass(frozen=True)
class ZeroSource:
    path: str
    line_count: int


@dataclass(frozen=True)
class ZeroTable:
    """Ordinates as exact rationals plus the text they were read from."""

    gammas: tuple[Fraction, ...]
    gamma_strings: tuple[str, ...]
    source: ZeroSource
    ordering: str  # "standard" | "random(seed=...)" | "external-weights(...)"
    ordering_warning: str | None = None

    def __post_init__(self):
        if len(self.gammas) != len(self.gamma_strings):
            raise InputError("gamma values and text rows differ in length")
        if any(g <= 0 for g in self.gammas):
            raise InputError("all zero ordinates must be positive")

    def __len__(self) -> int:
        return len(self.gammas)


@dataclass(frozen=True)
class DigitEntry:
    n: int  # 1-based position in the table ordering
    gamma: str  # source text of the ordinate
    t: mp.mpf  # frac(gamma / 2pi) at the working precision
    a: int  # floor(4t), in 0..3
    boundary_flag: bool


@dataclass(frozen=True)
class DigitSequence:
    entries: tuple[DigitEntry, ...]
    precision_digits: int
    boundary_tol: float

    def digits(self) -> list[int]:
        return [e.a for e in self.entries]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


@dataclass(frozen=True)
class DigitStats:
    counts: tuple[int, int, int, int]
    chi_square: float
    df: int
    reject_at_05: bool


def parse_zero_file(path) -> ZeroTable:
    """Read a one-ordinate-per-line text file into a ZeroTable.

    Lines starting with '#' and blank lines are skipped.  A line that is
    not a decimal number raises a parse error naming the line.
    """
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"cannot read zero file {p}: {exc}") from exc
    gammas: list[Fraction] = []
    strings: list[str] = []
    line_count = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line_count = lineno
        token = raw.strip()
        if not token or token.startswith("#"):
            continue
        try:
            value = Fraction(Decimal(token))
        except (InvalidOperation, ValueError) as exc:
            raise ParseError(f"{p}: line {lineno}: not a decimal number: {raw!r}") from exc
        if value <= 0:
            raise InputError(f"{p}: line {lineno}: ordinate must be positive, got {token}")
        gammas.append(value)
        strings.append(token)
    if not gammas:
        raise InputError(f"{p}: no zero ordinates found")
    warning = None
    if any(b <= a for a, b in zip(gammas, gammas[1:])):
        warning = "ordinates are not strictly increasing; standard ordering not verified"
    return ZeroTable(
        gammas=tuple(gammas),
        gamma_strings=tuple(strings),
        source=ZeroSource(path=str(p), line_count=line_count),
        ordering="standard",
        ordering_warning=warning,
    )


def digitize(
    table: ZeroTable,
    precision_digits: int = DEFAULT_DIGITIZE_DPS,
    boundary_tol: float = DEFAULT_BOUNDARY_TOL,
) -> DigitSequence:
    """Base-4 digits a_n = floor(4 * frac(gamma_n / 2pi)) at a stated precision.

    An entry is boundary-flagged when |4t - nearest integer| < boundary_tol;
    those digits are the ones an input truncated at fewer decimals could flip.
    """
    if precision_digits < MIN_DIGITIZE_DPS:
        raise InputError(
            f"precision_digits must be >= {MIN_DIGITIZE_DPS}, got {precision_digits}"
        )
    if boundary_tol <= 0:
        raise InputError(f"boundary_tol must be positive, got {boundary_tol}")
    entries = []
    with mp.workdps(precision_digits):
        two_pi = 2 * pi_at(precision_digits)
        for i, (gamma, text) in enumerate(zip(table.gammas, table.gamma_strings), start=1):
            x = mp.mpf(gamma.numerator) / mp.mpf(gamma.denominator) / two_pi
            t = x - mp.floor(x)
            scaled = 4 * t
            a = int(mp.floor(scaled))
            boundary = bool(abs(scaled - mp.nint(scaled)) < boundary_tol)
            if a > 3:  # t rounded up to 1.0 at working precision
                a = 3
                boundary = True
            entries.append(
                DigitEntry(n=i, gamma=text, t=t, a=a, boundary_flag=boundary)
            )
    return DigitSequence(
        entries=tuple(entries),
        precision_digits=precision_digits,
        boundary_tol=boundary_tol,
    )


def reorder(table: ZeroTable, mode: str, seed: int | None = None) -> ZeroTable:
    """Return the table sorted ascending or deterministically shuffled."""
    if len(table) == 0:
        raise InputError("cannot reorder an empty table")
    indices = list(range(len(table)))
    if mode == "standard":
        indices.sort(key=lambda i: table.gammas[i])
        ordering = "standard"
        warning = None
    elif mode == "random":
        if seed is None:
            raise InputError("random reorder needs a seed")
        rng = random.Random(seed)
        rng.shuffle(indices)  # Fisher-Yates under the hood
        ordering = f"random(seed={seed})"
        warning = None
    else:
        raise InputError(f"unknown reorder mode {mode!r}; use standard or random")
    return replace(
        table,
        gammas=tuple(table.gammas[i] for i in indices),
        gamma_strings=tuple(table.gamma_strings[i] for i in indices),
        ordering=ordering,
        ordering_warning=warning,
    )


def reorder_external_weights(table: ZeroTable, weights_path) -> ZeroTable:
    """Sort by a sidecar file of '(index, weight)' rows, ascending by weight.

    Indices are 1-based into the table's current order and each must
    appear exactly once.  Ties sort by index.
    """
    p = Path(weights_path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"cannot read weight file {p}: {exc}") from exc
    weights: dict[int, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        token = raw.strip()
        if not token or token.startswith("#"):
            continue
        parts = token.split()
        if len(parts) != 2:
            raise ParseError(f"{p}: line {lineno}: expected 'index weight', got {raw!r}")
        try:
            idx = int(parts[0])
            w = Fraction(Decimal(parts[1]))
        except (ValueError, InvalidOperation) as exc:
            raise ParseError(f"{p}: line {lineno}: bad index/weight pair {raw!r}") from exc
        if idx in weights:
            raise InputError(f"{p}: line {lineno}: duplicate index {idx}")
        weights[idx] = w
    expected = set(range(1, len(table) + 1))
    if set(weights) != expected:
        missing = sorted(expected - set(weights))
        extra = sorted(set(weights) - expected)
        raise InputError(
            f"{p}: weight indices must cover 1..{len(table)} exactly "
            f"(missing {missing[:5]}, unexpected {extra[:5]})"
        )
    order = sorted(expected, key=lambda i: (weights[i], i))
    return replace(
        table,
        gammas=tuple(table.gammas[i - 1] for i in order),
        gamma_strings=tuple(table.gamma_strings[i - 1] for i in order),
        ordering=f"external-weights({p})",
        ordering_warning=None,
    )


def digit_stats(digits) -> DigitStats:
    """Chi-square uniformity statistic over the four digit classes."""
    if hasattr(digits, "digits"):
        seq = list(digits.digits())
    else:
        seq = [int(d) for d in digits]
    if len(seq) < 8:
        raise InputError(
            f"need at least 8 digits for the uniformity statistic, got {len(seq)}"
        )
    if any(d not in (0, 1, 2, 3) for d in seq):
        raise InputError("digits must lie in 0..3")
    counts = tuple(seq.count(d) for d in range(4))
    expected = len(seq) / 4
    chi2 = sum((obs - expected) ** 2 / expected for obs in counts)
    return DigitStats(
        counts=counts,
        chi_square=chi2,
        df=3,
        reject_at_05=chi2 > CHI2_CRITICAL_05_DF3,
    )
