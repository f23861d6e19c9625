"""Exact construction of digit-restricted fractals on [0, 1].

A grid spec fixes a base ``b`` and, per subdivision level, the set of
digit positions that survive.  Stage ``n`` of the construction is the
union of all closed intervals whose first ``n`` base-``b`` digits are
retained; endpoints are kept as exact `Fraction` values so nesting,
measure, and self-similarity checks carry no floating-point drift.

Everything here is immutable and pure; stage intervals are enumerated
lazily and only materialized under an explicit cap.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Iterable, Iterator, Sequence

from .errors import (
    AddressError,
    CapacityError,
    InputError,
    UnsupportedStructureError,
)

# Materializing more intervals than this requires an explicit opt-in.
DEFAULT_ENUMERATION_CAP = 2**20

Interval = tuple[Fraction, Fraction]

NAMED_SPECS = {
    "cantor13": (8, (0, 7)),
    "classic-cantor": (3, (0, 2)),
    "mod6": (6, (1, 5)),
    "mod8": (8, (1, 3, 5, 7)),
}


def _check_retained(base: int, digits: Sequence[int], level: str) -> tuple[int, ...]:
    out = tuple(sorted(set(int(d) for d in digits)))
    if not out:
        raise InputError(f"retained set at {level} is empty")
    if any(d < 0 or d >= base for d in out):
        raise InputError(
            f"retained digits {list(out)} at {level} not all in 0..{base - 1}"
        )
    if len(out) >= base:
        raise InputError(
            f"retained set at {level} keeps every digit; must be a strict subset"
        )
    return out


@dataclass(frozen=True)
class GridSpec:
    """Base-``b`` digit retention rules, constant or varying per level.

    Exactly one of ``constant`` (same retained set at every level) and
    ``per_level`` (finite stream of retained sets, level 1 first) is set.
    """

    base: int
    label: str
    constant: tuple[int, ...] | None = None
    per_level: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        if self.base < 2:
            raise InputError(f"base must be >= 2, got {self.base}")
        if (self.constant is None) == (self.per_level is None):
            raise InputError("exactly one of constant/per_level must be given")
        if self.constant is not None:
            object.__setattr__(
                self, "constant", _check_retained(self.base, self.constant, "all levels")
            )
        else:
            checked = tuple(
                _check_retained(self.base, digits, f"level {k}")
                for k, digits in enumerate(self.per_level, start=1)
            )
            object.__setattr__(self, "per_level", checked)

    @property
    def is_constant(self) -> bool:
        return self.constant is not None

    @property
    def max_depth(self) -> int | None:
        """Deepest buildable stage, or None when unbounded."""
        return None if self.per_level is None else len(self.per_level)

    def retained_at(self, level: int) -> tuple[int, ...]:
        """Retained digit set at 1-based subdivision ``level``."""
        if level < 1:
            raise InputError(f"level must be >= 1, got {level}")
        if self.constant is not None:
            return self.constant
        if level > len(self.per_level):
            raise InputError(
                f"spec '{self.label}' provides {len(self.per_level)} levels, "
                f"level {level} requested"
            )
        return self.per_level[level - 1]


@dataclass(frozen=True)
class Address:
    """Finite digit-choice path: ``digits[k]`` indexes level k+1's retained set."""

    digits: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.digits)


@dataclass(frozen=True)
class IfsMap:
    """Affine contraction x -> ratio*x + offset with an optional weight."""

    ratio: Fraction
    offset: Fraction
    weight: Fraction | None = None


@dataclass(frozen=True)
class GeneralIfsSpec:
    """A finite list of affine contractions, optionally weighted.

    Ratios may equal 1 only for degenerate identity-style maps; genuine
    contractions live in (0, 1).  Weights, when present on any map, must
    be present on all and sum to exactly 1.  The open set condition is
    the caller's declaration and is never verified here.
    """

    maps: tuple[IfsMap, ...]
    label: str = "ifs"

    def __post_init__(self):
        if not self.maps:
            raise InputError("IFS needs at least one map")
        for m in self.maps:
            if not (0 < m.ratio <= 1):
                raise InputError(f"ratio {m.ratio} not in (0, 1]")
        weights = [m.weight for m in self.maps]
        if any(w is not None for w in weights):
            if any(w is None for w in weights):
                raise InputError("either all maps carry weights or none do")
            if any(w <= 0 for w in weights):
                raise InputError("weights must be positive")
            if sum(weights) != 1:
                raise InputError(f"weights sum to {sum(weights)}, expected 1")

    @property
    def ratios(self) -> tuple[Fraction, ...]:
        return tuple(m.ratio for m in self.maps)

    @property
    def weights(self) -> tuple[Fraction, ...] | None:
        if self.maps[0].weight is None:
            return None
        return tuple(m.weight for m in self.maps)


@dataclass(frozen=True)
class StageSet:
    """Stage ``depth`` of a grid construction, counted and measured exactly.

    Interval count and total length come straight from the retention
    rule; the interval list itself is produced lazily by
    :meth:`intervals` and only turned into a list under a cap.
    """

    spec: GridSpec
    depth: int
    interval_count: int = field(init=False)
    total_length: Fraction = field(init=False)

    def __post_init__(self):
        count = prod(len(self.spec.retained_at(k)) for k in range(1, self.depth + 1))
        object.__setattr__(self, "interval_count", count)
        object.__setattr__(
            self, "total_length", Fraction(count, self.spec.base**self.depth)
        )

    def intervals(self) -> Iterator[Interval]:
        """Yield closed intervals in increasing order of left endpoint."""
        b = self.spec.base
        den = b**self.depth
        level_digits = [self.spec.retained_at(k) for k in range(1, self.depth + 1)]
        for choice in itertools.product(*level_digits):
            num = 0
            for d in choice:
                num = num * b + d
            yield (Fraction(num, den), Fraction(num + 1, den))

    def materialize(self, cap: int = DEFAULT_ENUMERATION_CAP) -> list[Interval]:
        if self.interval_count > cap:
            raise CapacityError(
                f"stage {self.depth} of '{self.spec.label}' has "
                f"{self.interval_count} intervals, above the enumeration cap {cap}"
            )
        return list(self.intervals())


def make_pess_spec() -> GridSpec:
    """Base-4 grid keeping digits 1 and 3 at every level."""
    return GridSpec(base=4, label="pess", constant=(1, 3))


def make_named_spec(name: str) -> GridSpec:
    """Look up one of the built-in constant-rule constructions."""
    if name == "pess":
        return make_pess_spec()
    if name not in NAMED_SPECS:
        valid = ["pess", *NAMED_SPECS]
        raise InputError(f"unknown set name {name!r}; valid names: {', '.join(valid)}")
    base, retained = NAMED_SPECS[name]
    return GridSpec(base=base, label=name, constant=retained)


def make_zf_spec(digits, label: str = "zf") -> GridSpec:
    """Base-4 spec whose level-n retained pair is {a_n, a_n+2 mod 4}.

    ``digits`` is either a digit sequence object exposing ``.digits()``
    or a plain iterable of integers in 0..3.  The spec is finite: it
    supports stages no deeper than the number of digits supplied.
    """
    if hasattr(digits, "digits"):
        seq = list(digits.digits())
    else:
        seq = list(digits)
    if not seq:
        raise InputError("empty digit sequence")
    levels = []
    for i, a in enumerate(seq, start=1):
        a = int(a)
        if a not in (0, 1, 2, 3):
            raise InputError(f"digit {a} at position {i} not in 0..3")
        levels.append(tuple(sorted((a, (a + 2) % 4))))
    return GridSpec(base=4, label=label, per_level=tuple(levels))


def build_stage(spec: GridSpec, depth: int) -> StageSet:
    """Exact stage-``depth`` approximation of the spec's fractal."""
    if depth < 0:
        raise InputError(f"depth must be >= 0, got {depth}")
    if spec.max_depth is not None and depth > spec.max_depth:
        raise InputError(
            f"spec '{spec.label}' has digits for {spec.max_depth} levels, "
            f"stage {depth} requested"
        )
    return StageSet(spec=spec, depth=depth)


def address_to_point(spec: GridSpec, address: Address) -> Fraction:
    """Left endpoint of the depth-n interval selected by ``address``."""
    total = Fraction(0)
    b = spec.base
    scale = Fraction(1)
    for level, idx in enumerate(address.digits, start=1):
        retained = spec.retained_at(level)
        if not (0 <= idx < len(retained)):
            raise AddressError(level, idx, len(retained))
        scale /= b
        total += retained[idx] * scale
    return total


def ifs_of_grid(spec: GridSpec, weights: Sequence[Fraction] | None = None) -> GeneralIfsSpec:
    """Contraction maps x -> x/b + d/b generating a constant-rule grid set."""
    if not spec.is_constant:
        raise UnsupportedStructureError(
            f"spec '{spec.label}' varies by level and has no single IFS"
        )
    b = spec.base
    if weights is not None and len(weights) != len(spec.constant):
        raise InputError("one weight per retained digit required")
    maps = tuple(
        IfsMap(
            ratio=Fraction(1, b),
            offset=Fraction(d, b),
            weight=None if weights is None else Fraction(weights[i]),
        )
        for i, d in enumerate(spec.constant)
    )
    return GeneralIfsSpec(maps=maps, label=spec.label)


@dataclass(frozen=True)
class IfsStepResult:
    """Images of one IFS application plus any interior overlaps found."""

    intervals: tuple[Interval, ...]
    overlaps: tuple[tuple[Interval, Interval], ...]

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)


def apply_ifs_step(ifs: GeneralIfsSpec, intervals: Iterable[Interval]) -> IfsStepResult:
    """Image of every interval under every map, exactly and without merging.

    Images whose interiors intersect are reported in ``overlaps``;
    shared endpoints do not count as overlap.
    """
    images: list[Interval] = []
    for left, right in intervals:
        left = Fraction(left)
        right = Fraction(right)
        if right < left:
            raise InputError(f"interval [{left}, {right}] is reversed")
        for m in ifs.maps:
            images.append((m.ratio * left + m.offset, m.ratio * right + m.offset))
    ordered = sorted(images)
    overlaps = tuple(
        (a, b)
        for a, b in itertools.pairwise(ordered)
        if b[0] < a[1]
    )
    return IfsStepResult(intervals=tuple(images), overlaps=overlaps)


@dataclass(frozen=True)
class SelfSimilarityReport:
    """Outcome of the exact stage-against-images equality check."""

    ok: bool
    spec_label: str
    levels_checked: int
    first_mismatch_level: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def self_similarity_check(
    spec: GridSpec, depth: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> SelfSimilarityReport:
    """Verify stage n+1 equals the union of map images of stage n for n < depth.

    Only constant-rule specs are self-similar under a fixed map family;
    level-varying specs are rejected.
    """
    if not spec.is_constant:
        raise UnsupportedStructureError(
            f"spec '{spec.label}' changes its retained set by level; "
            "a single map family cannot reproduce it"
        )
    if depth < 1:
        raise InputError(f"depth must be >= 1, got {depth}")
    ifs = ifs_of_grid(spec)
    current = build_stage(spec, 0).materialize(cap)
    for n in range(depth):
        expected = sorted(build_stage(spec, n + 1).materialize(cap))
        images = sorted(apply_ifs_step(ifs, current).intervals)
        if images != expected:
            return SelfSimilarityReport(
                ok=False,
                spec_label=spec.label,
                levels_checked=n,
                first_mismatch_level=n + 1,
            )
        current = expected
    return SelfSimilarityReport(ok=True, spec_label=spec.label, levels_checked=depth)


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def stage_rows(stage: StageSet) -> Iterator[tuple[int, int, int, int, int]]:
    """CSV-ready rows (index, left_num, left_den, right_num, right_den)."""
    for i, (left, right) in enumerate(stage.intervals()):
        yield (i, left.numerator, left.denominator, right.numerator, right.denominator)


def write_stage_csv(stage: StageSet, fp, comments: Sequence[str] = ()) -> None:
    """Stream a stage as CSV with exact integer endpoint columns."""
    for line in comments:
        fp.write(f"# {line}\n")
    fp.write("index,left_numerator,left_denominator,right_numerator,right_denominator\n")
    for row in stage_rows(stage):
        fp.write(",".join(str(v) for v in row) + "\n")


def stage_to_json(stage: StageSet, cap: int = DEFAULT_ENUMERATION_CAP) -> dict:
    """JSON-ready dict with exact 'p/q' endpoint strings."""
    intervals = stage.materialize(cap)
    return {
        "label": stage.spec.label,
        "base": stage.spec.base,
        "depth": stage.depth,
        "interval_count": stage.interval_count,
        "total_length": _frac_str(stage.total_length),
        "intervals": [[_frac_str(a), _frac_str(b)] for a, b in intervals],
    }


def stage_json_text(stage: StageSet, cap: int = DEFAULT_ENUMERATION_CAP) -> str:
    return json.dumps(stage_to_json(stage, cap), indent=2)
