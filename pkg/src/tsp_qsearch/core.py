"""Problem definitions for the two-stage tour search.

Cities are labelled 1..n.  A tour visits every city exactly once and is
encoded as a bitstring by writing each visited city as a fixed-width
big-endian binary code (k = ceil(log2 n) bits per city, city c encoded
as c - 1) and concatenating the codes in visit order.  Codes >= n never
correspond to a city and make a bitstring infeasible, as do repeated
codes.

This module also houses the cost-phase datasets used by the search: a
bundled dataset for n = 3 and 4 with extremes pinned at pi/2 and 3*pi/2,
and a seeded Gaussian generator for arbitrary n.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Sequence

import numpy as np

# Enumerating n! tours is deliberately capped; beyond this the subspace
# sizes stop being desk-scale.
MAX_ENUM_CITIES = 6

PHASE_MIN = math.pi / 2
PHASE_MAX = 3 * math.pi / 2


class CapacityError(ValueError):
    """A size parameter exceeds what this implementation supports."""


class DatasetError(ValueError):
    """A phase dataset is unavailable or malformed."""


def bits_per_city(n: int) -> int:
    """Number of bits used to encode one city label (ceil(log2 n))."""
    if n < 2:
        raise CapacityError(f"need at least 2 cities, got {n}")
    return max(1, (n - 1).bit_length())


@dataclass(frozen=True)
class TspInstance:
    """An n-city problem with an optional travel-cost matrix.

    ``cost_matrix[i][j]`` is the cost of travelling from city i+1 to
    city j+1.  The matrix need not be symmetric; the diagonal must be
    zero and all entries non-negative.
    """

    n: int
    cost_matrix: np.ndarray | None = None

    def __post_init__(self):
        if self.n < 2:
            raise CapacityError(f"need at least 2 cities, got {self.n}")
        if self.cost_matrix is not None:
            m = np.asarray(self.cost_matrix, dtype=float)
            if m.shape != (self.n, self.n):
                raise ValueError(f"cost matrix must be {self.n}x{self.n}, got {m.shape}")
            if np.any(np.diag(m) != 0.0):
                raise ValueError("cost matrix diagonal must be zero")
            if np.any(m < 0.0):
                raise ValueError("cost matrix entries must be non-negative")
            object.__setattr__(self, "cost_matrix", m)


@dataclass(frozen=True)
class Tour:
    """A visit order: a permutation of the city labels 1..n."""

    order: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(int(c) for c in self.order))
        n = len(self.order)
        if sorted(self.order) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.order}")

    @property
    def n(self) -> int:
        return len(self.order)


@dataclass(frozen=True)
class HoboLayout:
    """Register plan for the binary tour encoding of an n-city problem.

    Qubit indices run: main register (n*k city bits), then one validity
    ancilla per (slot, out-of-range code) pair, then one ancilla per
    slot pair for the uniqueness check, then a single marker qubit.
    Qubit 0 is the leftmost (most significant) bit of a bitstring.
    """

    n: int
    k: int
    main_qubits: int
    valid_ancillas: int
    unique_ancillas: int
    marker_qubits: int
    width: int

    @classmethod
    def for_cities(cls, n: int) -> HoboLayout:
        k = bits_per_city(n)
        main = n * k
        valid = (2**k - n) * n
        unique = n * (n - 1) // 2
        return cls(
            n=n,
            k=k,
            main_qubits=main,
            valid_ancillas=valid,
            unique_ancillas=unique,
            marker_qubits=1,
            width=main + valid + unique + 1,
        )

    def main_qubit(self, slot: int, bit: int) -> int:
        """Qubit holding bit `bit` (0 = most significant) of visit slot `slot`."""
        return slot * self.k + bit

    def slot_qubits(self, slot: int) -> tuple[int, ...]:
        return tuple(range(slot * self.k, (slot + 1) * self.k))

    def validity_ancilla(self, slot: int, code: int) -> int:
        """Ancilla flagging that `slot` holds the out-of-range code `code`."""
        if not self.n <= code < 2**self.k:
            raise ValueError(f"code {code} is not an out-of-range code for n={self.n}")
        per_slot = 2**self.k - self.n
        return self.main_qubits + slot * per_slot + (code - self.n)

    def pair_ancilla(self, slot_a: int, slot_b: int) -> int:
        """Ancilla recording that slots a < b hold different city codes."""
        if not 0 <= slot_a < slot_b < self.n:
            raise ValueError(f"need 0 <= a < b < n, got ({slot_a}, {slot_b})")
        before = slot_a * (self.n - 1) - slot_a * (slot_a - 1) // 2
        return self.main_qubits + self.valid_ancillas + before + (slot_b - slot_a - 1)

    @property
    def marker(self) -> int:
        return self.width - 1


@dataclass(frozen=True)
class PhaseAssignment:
    """A cost phase in radians for every feasible tour bitstring of n.

    Keys are exactly the n! feasible bitstrings; all values lie in the
    open interval (0, 2*pi) and the minimum and maximum are unique, so
    the best and worst tours are well defined.
    """

    n: int
    phases: dict[str, float]

    def __post_init__(self):
        feasible = enumerate_feasible(self.n)
        if set(self.phases) != set(feasible):
            raise DatasetError(
                f"phase keys must be exactly the {len(feasible)} feasible bitstrings of n={self.n}"
            )
        values = list(self.phases.values())
        if not all(0.0 < v < 2 * math.pi for v in values):
            raise DatasetError("phases must lie in the open interval (0, 2*pi)")
        if values.count(min(values)) != 1 or values.count(max(values)) != 1:
            raise DatasetError("phase minimum and maximum must each be unique")
        # Canonical key order (lexicographic = enumeration order).
        object.__setattr__(
            self, "phases", {key: float(self.phases[key]) for key in feasible}
        )

    @property
    def min_key(self) -> str:
        return min(self.phases, key=self.phases.get)

    @property
    def max_key(self) -> str:
        return max(self.phases, key=self.phases.get)


@dataclass(frozen=True)
class Schedule:
    """Iteration counts for the two search stages."""

    q1: int
    q2: int

    def __post_init__(self):
        if self.q1 < 0 or self.q2 < 0:
            raise ValueError(f"iteration counts must be non-negative: {self}")


def encode_tour(tour: Tour | Sequence[int], n: int) -> str:
    """Encode a visit order as a bitstring of length n*k."""
    order = tour.order if isinstance(tour, Tour) else Tour(tuple(tour)).order
    if len(order) != n:
        raise ValueError(f"tour visits {len(order)} cities, expected {n}")
    k = bits_per_city(n)
    return "".join(format(c - 1, f"0{k}b") for c in order)


def decode_bitstring(bits: str, n: int) -> Tour | None:
    """Decode a bitstring back to a tour, or None if it is infeasible.

    Infeasible means some k-bit code is >= n or two slots hold the same
    code.  A wrong-length input raises instead.
    """
    k = bits_per_city(n)
    if len(bits) != n * k:
        raise ValueError(f"expected {n * k} bits for n={n}, got {len(bits)}")
    codes = [int(bits[i * k : (i + 1) * k], 2) for i in range(n)]
    if any(c >= n for c in codes) or len(set(codes)) != n:
        return None
    return Tour(tuple(c + 1 for c in codes))


@lru_cache(maxsize=None)
def enumerate_feasible(n: int) -> tuple[str, ...]:
    """All n! feasible tour bitstrings in lexicographic order."""
    if not 2 <= n <= MAX_ENUM_CITIES:
        raise CapacityError(f"feasible enumeration supports 2 <= n <= {MAX_ENUM_CITIES}")
    return tuple(encode_tour(p, n) for p in permutations(range(1, n + 1)))


def eval_tour_cost(instance: TspInstance, tour: Tour | Sequence[int]) -> float:
    """Total cost of the closed tour, including the leg back to the start."""
    if instance.cost_matrix is None:
        raise ValueError("instance has no cost matrix")
    order = tour.order if isinstance(tour, Tour) else Tour(tuple(tour)).order
    m = instance.cost_matrix
    total = 0.0
    for s in range(len(order)):
        a = order[s] - 1
        b = order[(s + 1) % len(order)] - 1
        total += m[a, b]
    return float(total)


def constraint_penalties(assignment) -> tuple[float, float]:
    """One-hot constraint penalties (rows, columns) of a binary matrix.

    The first value penalises visit slots not holding exactly one city,
    the second penalises cities not visited exactly once; both are zero
    iff the matrix is a permutation matrix.
    """
    x = np.asarray(assignment, dtype=float)
    h1 = float(np.sum((1.0 - x.sum(axis=1)) ** 2))
    h2 = float(np.sum((1.0 - x.sum(axis=0)) ** 2))
    return h1, h2


def optimal_q1(n: int) -> int:
    """First-stage iteration count: floor((pi/4) * sqrt(2**(n*k) / n!))."""
    k = bits_per_city(n)
    return math.floor(math.pi / 4 * math.sqrt(2 ** (n * k) / math.factorial(n)))


def optimal_q2(n: int, m: int) -> int:
    """Second-stage iteration count: floor((pi/4) * sqrt(n! / m)).

    `m` is the number of simultaneously amplified tours; the cost-phase
    search amplifies both extremes, so m = 2 is the usual choice.
    """
    if n < 2:
        raise CapacityError(f"need at least 2 cities, got {n}")
    if m < 1:
        raise ValueError(f"need at least one amplified tour, got m={m}")
    return math.floor(math.pi / 4 * math.sqrt(math.factorial(n) / m))


# --------------------------------------------------------------------------
# Phase datasets
# --------------------------------------------------------------------------

# Bundled cost-phase datasets for 3- and 4-city problems.  The extreme
# tours (identity order and its reversal) are pinned to exactly pi/2 and
# 3*pi/2.  Every other value is pinned to a fixed 3-decimal prefix; the
# remaining digits come from a deterministic per-entry Gaussian stream
# (see _regenerated_builtin_values), so the full-precision dataset is
# reproducible rather than hand-invented.
_BUILTIN_PREFIXES = {
    3: {
        "000110": "1.570", "001001": "2.961", "010010": "3.685",
        "011000": "2.931", "100001": "3.501", "100100": "4.712",
    },
    4: {
        "00011011": "1.570", "00011110": "2.961", "00100111": "3.685",
        "00101101": "2.931", "00110110": "3.501", "00111001": "3.351",
        "01001011": "2.798", "01001110": "4.169", "01100011": "3.304",
        "01101100": "2.989", "01110010": "3.372", "01111000": "2.719",
        "10000111": "3.584", "10001101": "3.148", "10010011": "3.194",
        "10011100": "2.871", "10110001": "2.796", "10110100": "2.673",
        "11000110": "2.832", "11001001": "3.217", "11010010": "2.691",
        "11011000": "3.548", "11100001": "3.290", "11100100": "4.712",
    },
}

_BUILTIN_VALUES = {
    3: {
        "000110": PHASE_MIN,
        "001001": 2.9612768897401454,
        "010010": 3.685044053544289,
        "011000": 2.9312350463193004,
        "100001": 3.501201821013711,
        "100100": PHASE_MAX,
    },
    4: {
        "00011011": PHASE_MIN,
        "00011110": 2.9618670689252276,
        "00100111": 3.6853798357675607,
        "00101101": 2.931406571639427,
        "00110110": 3.5015160966461085,
        "00111001": 3.3514885961552756,
        "01001011": 2.7988614336641633,
        "01001110": 4.169966984324977,
        "01100011": 3.3046245337404674,
        "01101100": 2.9893716358693125,
        "01110010": 3.372767066346309,
        "01111000": 2.71994243381181,
        "10000111": 3.5844184274827025,
        "10001101": 3.14823575813525,
        "10010011": 3.194290659605724,
        "10011100": 2.8713388915398386,
        "10110001": 2.7966420395577494,
        "10110100": 2.673234878900164,
        "11000110": 2.8327729753380666,
        "11001001": 3.2171947859364343,
        "11010010": 2.6911841419595763,
        "11011000": 3.5482107394342233,
        "11100001": 3.290385061045502,
        "11100100": PHASE_MAX,
    },
}

_BUILTIN_STREAM_SEED = 42


def _regenerated_builtin_values(n: int) -> dict[str, float]:
    """Recompute the bundled dataset from its seeded per-entry streams.

    Entry i (in enumeration order) takes the first draw from
    N(pi, 0.5**2) restricted to (pi/2, 3*pi/2) whose 3-decimal
    truncation equals the pinned prefix; extremes stay exact.
    """
    prefixes = _BUILTIN_PREFIXES[n]
    keys = enumerate_feasible(n)
    values: dict[str, float] = {}
    for i, key in enumerate(keys):
        if i == 0:
            values[key] = PHASE_MIN
        elif i == len(keys) - 1:
            values[key] = PHASE_MAX
        else:
            target = round(float(prefixes[key]) * 1000)
            rng = np.random.default_rng(
                np.random.SeedSequence(_BUILTIN_STREAM_SEED, spawn_key=(n, i))
            )
            while True:
                v = float(rng.normal(math.pi, 0.5))
                if PHASE_MIN < v < PHASE_MAX and math.floor(v * 1000) == target:
                    values[key] = v
                    break
    return values


def builtin_phases(n: int) -> PhaseAssignment:
    """The bundled cost-phase dataset (available for n = 3 and 4)."""
    if n not in _BUILTIN_VALUES:
        raise DatasetError(f"no bundled phase dataset for n={n}; available: 3, 4")
    return PhaseAssignment(n, dict(_BUILTIN_VALUES[n]))


def gen_gaussian_phases(n: int, mu: float, sigma: float, seed: int) -> PhaseAssignment:
    """Generate a phase dataset with Gaussian-distributed interior costs.

    The identity tour is pinned to pi/2 and the reversed tour to
    3*pi/2; every other tour draws i.i.d. from N(mu, sigma**2), with
    draws outside the open interval (pi/2, 3*pi/2) rejected and
    resampled so the pinned extremes stay unique.  Deterministic for a
    given seed.
    """
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    keys = enumerate_feasible(n)
    min_key = encode_tour(range(1, n + 1), n)
    max_key = encode_tour(range(n, 0, -1), n)
    rng = np.random.default_rng(seed)
    phases: dict[str, float] = {}
    for key in keys:
        if key == min_key:
            phases[key] = PHASE_MIN
        elif key == max_key:
            phases[key] = PHASE_MAX
        else:
            while True:
                v = float(rng.normal(mu, sigma))
                if PHASE_MIN < v < PHASE_MAX:
                    phases[key] = v
                    break
    return PhaseAssignment(n, phases)


def phases_to_json(phases: PhaseAssignment) -> str:
    """Serialize a phase dataset as canonical JSON text."""
    payload = {"n": phases.n, "phases": phases.phases}
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def phases_from_json(text: str) -> PhaseAssignment:
    """Parse a phase dataset from JSON text produced by phases_to_json."""
    try:
        payload = json.loads(text)
        n = int(payload["n"])
        raw = payload["phases"]
        phase_map = {str(key): float(value) for key, value in raw.items()}
    except (json.JSONDecodeError, KeyError, TypeError, ValueError, AttributeError) as exc:
        raise DatasetError(f"malformed phase dataset: {exc}") from exc
    return PhaseAssignment(n, phase_map)


def save_phases(phases: PhaseAssignment, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(phases_to_json(phases))


def load_phases(path) -> PhaseAssignment:
    with open(path, "r", encoding="utf-8") as fh:
        return phases_from_json(fh.read())
