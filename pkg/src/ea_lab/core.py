"""Search-space primitives: bitstrings, seeded randomness, standard bit
mutation, binomial flip-count formulas, and the unitation test-function
composer.

Unitation functions are described by an ordered list of blocks (linear,
gap, plateau) scanned from the all-zeros bitstring towards the all-ones
bitstring.  The fitness of a point depends on its zeros-count only, so a
function is fully described by a value table indexed by zeros-count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

import numpy as np
from scipy.special import gammaln


class DimensionError(ValueError):
    """A bitstring length does not match the function dimension."""


class SpecError(ValueError):
    """A unitation specification violates its structural invariants."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


# ---------------------------------------------------------------------------
# Randomness


@dataclass(frozen=True)
class RngStream:
    """Identifier of an independent random stream.

    ``(master_seed, stream_index)`` fully determines the generated
    sequence.  Distinct stream indices under the same master seed yield
    statistically independent streams (Philox counter-based generator
    keyed through a SeedSequence spawn key), so batches of runs are
    reproducible independently of execution order.
    """

    master_seed: int
    stream_index: int = 0

    def __post_init__(self) -> None:
        if self.stream_index < 0:
            raise DomainError("stream_index must be non-negative")

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(
            entropy=self.master_seed, spawn_key=(self.stream_index,)
        )
        return np.random.Generator(np.random.Philox(seq))


# ---------------------------------------------------------------------------
# Bitstrings


class Bitstring:
    """Fixed-length binary search point.

    Immutable after construction; ``ones() + zeros() == n``.
    """

    __slots__ = ("bits",)

    def __init__(self, bits: Sequence[int] | np.ndarray):
        arr = np.array(bits, dtype=np.uint8)
        if arr.ndim != 1 or arr.size == 0:
            raise DimensionError("bits must be a non-empty 1-d sequence")
        if np.any(arr > 1):
            raise ValueError("bits must be 0/1 valued")
        arr.setflags(write=False)
        object.__setattr__(self, "bits", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Bitstring is immutable")

    @property
    def n(self) -> int:
        return int(self.bits.size)

    def ones(self) -> int:
        return int(np.count_nonzero(self.bits))

    def zeros(self) -> int:
        return self.n - self.ones()

    @classmethod
    def all_ones(cls, n: int) -> "Bitstring":
        return cls(np.ones(n, dtype=np.uint8))

    @classmethod
    def all_zeros(cls, n: int) -> "Bitstring":
        return cls(np.zeros(n, dtype=np.uint8))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "Bitstring":
        return cls(rng.integers(0, 2, size=n, dtype=np.uint8))

    @classmethod
    def with_zeros(cls, n: int, z: int, rng: np.random.Generator) -> "Bitstring":
        """Uniform random bitstring with exactly ``z`` zero-bits."""
        if not 0 <= z <= n:
            raise DomainError("zeros-count out of range")
        bits = np.ones(n, dtype=np.uint8)
        bits[rng.choice(n, size=z, replace=False)] = 0
        return cls(bits)

    def __eq__(self, other) -> bool:
        return isinstance(other, Bitstring) and np.array_equal(self.bits, other.bits)

    def __hash__(self) -> int:
        return hash(self.bits.tobytes())

    def __repr__(self) -> str:
        return f"Bitstring({''.join(map(str, self.bits))})"


# ---------------------------------------------------------------------------
# Mutation


@dataclass(frozen=True)
class MutationParams:
    """Standard bit mutation parameters: per-bit flip rate is ``chi / n``."""

    n: int
    chi: float = 1.0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError("n must be positive")
        if not 0 < self.chi < self.n:
            raise DomainError("chi must satisfy 0 < chi < n")

    @property
    def rate(self) -> float:
        return self.chi / self.n


def standard_bit_mutation(
    x: Bitstring, p: MutationParams, rng: np.random.Generator
) -> Bitstring:
    """Flip each bit of ``x`` independently with probability ``p.rate``."""
    if p.n != x.n:
        raise DimensionError("mutation parameters sized for a different n")
    mask = rng.random(x.n) < p.rate
    return Bitstring(x.bits ^ mask.astype(np.uint8))


def flip_count_pmf(n: int, p: float, j: int) -> float:
    """Exact probability that a Binomial(n, p) flip count equals ``j``.

    Evaluated in log-space so that extreme tails stay accurate.
    """
    if not 0 <= p <= 1:
        raise DomainError("p must be a probability")
    if not 0 <= j <= n:
        raise DomainError("j must lie in 0..n")
    if p == 0.0:
        return 1.0 if j == 0 else 0.0
    if p == 1.0:
        return 1.0 if j == n else 0.0
    log_pmf = (
        gammaln(n + 1)
        - gammaln(j + 1)
        - gammaln(n - j + 1)
        + j * math.log(p)
        + (n - j) * math.log1p(-p)
    )
    return float(math.exp(log_pmf))


def flip_count_pmf_table(n: int, p: float) -> np.ndarray:
    """Full binomial pmf over flip counts 0..n."""
    return np.array([flip_count_pmf(n, p, j) for j in range(n + 1)])


# ---------------------------------------------------------------------------
# Unitation functions


class BlockKind(Enum):
    LINEAR = "linear"
    GAP = "gap"
    PLATEAU = "plateau"


@dataclass(frozen=True)
class BlockSpec:
    """One unitation block: length ``m`` plus slope/intercept for linear blocks."""

    kind: BlockKind
    m: int
    a: float = 1.0
    b: float = 0.0

    def __post_init__(self) -> None:
        if self.m < 1:
            raise SpecError("block length m must be >= 1")
        if self.kind is BlockKind.LINEAR and self.a <= 0:
            raise SpecError("linear block slope a must be positive")

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "m": self.m, "a": self.a, "b": self.b}

    @classmethod
    def from_dict(cls, d: dict) -> "BlockSpec":
        return cls(
            kind=BlockKind(d["kind"]),
            m=int(d["m"]),
            a=float(d.get("a", 1.0)),
            b=float(d.get("b", 0.0)),
        )


def linear(m: int, a: float = 1.0, b: float = 0.0) -> BlockSpec:
    return BlockSpec(BlockKind.LINEAR, m, a, b)


def gap(m: int) -> BlockSpec:
    return BlockSpec(BlockKind.GAP, m)


def plateau(m: int) -> BlockSpec:
    return BlockSpec(BlockKind.PLATEAU, m)


@dataclass(frozen=True)
class UnitationSpec:
    """A fitness function of unitation built from an ordered list of blocks.

    Blocks are listed in the order they are traversed from the all-zeros
    bitstring towards the all-ones optimum; their lengths must sum to
    ``n``.  The position ``k`` of a block is the total length of the
    blocks after it, so a block spans zeros-counts ``k + m`` (its start,
    shared with the previous block) down to ``k`` (its end).
    """

    n: int
    blocks: tuple[BlockSpec, ...]

    def __init__(self, n: int, blocks: Sequence[BlockSpec]):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "blocks", tuple(blocks))
        if self.n < 1:
            raise SpecError("n must be positive")
        # Building the table validates block lengths and the optimum invariant.
        object.__setattr__(self, "_table", build_value_table(self))

    @property
    def value_table(self) -> np.ndarray:
        """Fitness indexed by zeros-count; read-only."""
        return self._table

    @property
    def optimum_value(self) -> float:
        return float(self._table[0])

    def block_position(self, index: int) -> int:
        """Position k of the block at ``index`` (lengths of all later blocks)."""
        return sum(b.m for b in self.blocks[index + 1 :])

    def to_dict(self) -> dict:
        return {"n": self.n, "blocks": [b.to_dict() for b in self.blocks]}

    @classmethod
    def from_dict(cls, d: dict) -> "UnitationSpec":
        return cls(int(d["n"]), [BlockSpec.from_dict(b) for b in d["blocks"]])


def build_value_table(spec: UnitationSpec) -> np.ndarray:
    """Stitch the block values into a table indexed by zeros-count.

    A running level tracks the value of the most recent non-gap point,
    starting at 0 on the all-zeros bitstring.  Linear blocks raise the
    level by ``a`` per point (plus a constant offset ``b`` over the
    block), plateau interiors repeat the level and their end point gets
    level + 1, gap interiors are assigned the global minimum (strictly
    below every other value) and their end point gets level + 1.  A
    final affine shift places the table minimum at 0.
    """
    n = spec.n
    total = sum(b.m for b in spec.blocks)
    if total != n:
        raise SpecError(f"block lengths sum to {total}, expected n={n}")

    table = np.full(n + 1, np.nan)
    in_gap = np.zeros(n + 1, dtype=bool)
    level = 0.0

    if spec.blocks[0].kind is BlockKind.GAP:
        in_gap[n] = True
    else:
        table[n] = level

    k = n
    for block in spec.blocks:
        k -= block.m
        start = k + block.m  # owned by the previous block
        if block.kind is BlockKind.LINEAR:
            for i in range(1, block.m + 1):
                table[start - i] = level + block.a * i + block.b
            level = level + block.a * block.m + block.b
        elif block.kind is BlockKind.PLATEAU:
            for z in range(start - 1, k, -1):
                table[z] = level
            table[k] = level + 1.0
            level = level + 1.0
        else:  # gap
            for z in range(start - 1, k, -1):
                in_gap[z] = True
            table[k] = level + 1.0
            level = level + 1.0
    assert k == 0

    if in_gap.any():
        table[in_gap] = np.nanmin(table[~in_gap]) - 1.0
    table -= table.min()

    if not np.all(table[0] > table[1:]):
        raise SpecError("table[0] must be the unique maximum (optimum at all-ones)")
    table.setflags(write=False)
    return table


def evaluate(spec: UnitationSpec, x: Bitstring) -> float:
    """Fitness of ``x``; depends on ``x`` only through its zeros-count."""
    if x.n != spec.n:
        raise DimensionError(f"bitstring length {x.n} != spec.n {spec.n}")
    return float(spec.value_table[x.zeros()])


# Common named functions ----------------------------------------------------


def onemax(n: int) -> UnitationSpec:
    """Count-the-ones function: one linear block covering the whole space."""
    return UnitationSpec(n, [linear(n)])


def needle(n: int) -> UnitationSpec:
    """All-flat function with a single optimal point at all-ones.

    Realised as a single gap block spanning the whole space: every point
    except the optimum shares the minimum value.
    """
    return UnitationSpec(n, [gap(n)])


def gap_function(n: int, m: int, k: int) -> UnitationSpec:
    """Leading linear ramp, a gap of length ``m`` ending at position ``k``,
    and a trailing linear ramp to the optimum."""
    if m + k > n:
        raise SpecError("gap block requires m + k <= n")
    blocks: list[BlockSpec] = []
    if n - m - k > 0:
        blocks.append(linear(n - m - k))
    blocks.append(gap(m))
    if k > 0:
        blocks.append(linear(k))
    return UnitationSpec(n, blocks)


def plateau_function(n: int, m: int, k: int) -> UnitationSpec:
    """Leading linear ramp, a plateau of length ``m`` ending at position
    ``k``, and a trailing linear ramp to the optimum."""
    if m + k > n:
        raise SpecError("plateau block requires m + k <= n")
    blocks: list[BlockSpec] = []
    if n - m - k > 0:
        blocks.append(linear(n - m - k))
    blocks.append(plateau(m))
    if k > 0:
        blocks.append(linear(k))
    return UnitationSpec(n, blocks)


# ---------------------------------------------------------------------------
# Generic objectives


@dataclass(frozen=True)
class FitnessFunction:
    """A pseudo-Boolean objective given as a callable, for non-unitation
    functions such as weighted linear functions."""

    n: int
    fn: Callable[[np.ndarray], float] = field(repr=False)
    optimum_value: float
    name: str = "custom"

    def value(self, x: Bitstring) -> float:
        if x.n != self.n:
            raise DimensionError("bitstring length mismatch")
        return float(self.fn(x.bits))


class _LinearEval:
    # Top-level callable so linear objectives stay picklable for worker pools.
    def __init__(self, w: np.ndarray):
        self.w = w

    def __call__(self, bits: np.ndarray) -> float:
        return float(np.dot(self.w, bits))


def linear_function(weights: Sequence[float]) -> FitnessFunction:
    """Linear pseudo-Boolean function with positive weights."""
    w = np.array(weights, dtype=float)
    if w.ndim != 1 or w.size == 0 or np.any(w <= 0):
        raise SpecError("weights must be a non-empty positive vector")
    w.setflags(write=False)
    return FitnessFunction(
        n=int(w.size),
        fn=_LinearEval(w),
        optimum_value=float(w.sum()),
        name="linear",
    )
