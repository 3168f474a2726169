"""Synthetic RSA modulus sets with planted shared primes, plus file round-trips.

Every modulus is a semiprime: the product of two distinct primes of half the
modulus bit size, each with its top bit set. Weak moduli come in pairs that
share exactly one prime; every other prime in a set is unique to its modulus.
Generation is fully deterministic for a given seed: candidate primes are drawn
from a seeded ``random.Random`` stream and tested in draw order.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from pathlib import Path

import gmpy2

MIN_PRIME_BITS = 16
MIN_MODULUS_BITS = 32

ADVERSARIAL_KINDS = ("double_shared", "duplicate_modulus")

# Composite acceptance odds are at most 4**-_PRIMALITY_ROUNDS = 2**-80.
_PRIMALITY_ROUNDS = 40


class DatasetParseError(ValueError):
    """A dataset or truth file failed to parse; carries path and line number."""

    def __init__(self, path: Path | str, lineno: int, message: str):
        super().__init__(f"{path}:{lineno}: {message}")
        self.path = str(path)
        self.lineno = lineno


@dataclass
class ModulusSet:
    """An ordered list of moduli together with its generation parameters."""

    moduli: list[int]
    bit_size: int
    seed: int

    def __len__(self) -> int:
        return len(self.moduli)

    def __iter__(self):
        return iter(self.moduli)


@dataclass
class PlantedGroundTruth:
    """Which modulus pairs were constructed to share a prime.

    ``weak_pairs`` holds ``(index_a, index_b, shared_prime)`` triples with
    ``index_a < index_b``, sorted. For standard generation no index appears
    twice and each shared prime divides exactly its own pair. Adversarial
    sets relax this deliberately: ``double_shared`` repeats one index across
    two pairs, and ``duplicate_modulus`` omits the duplicated pair entirely
    because no GCD can separate its primes.
    """

    weak_pairs: list[tuple[int, int, int]]
    total_shared_factors: int


def generate_primes(count: int, bits: int, seed: int) -> list[int]:
    """Draw ``count`` distinct probable primes of exactly ``bits`` bits.

    Candidates have the top bit forced (exact bit length) and are odd. The
    same (count, bits, seed) always yields the same list.
    """
    if count < 0:
        raise ValueError(f"count must be non-negative, got {count}")
    if bits < MIN_PRIME_BITS:
        raise ValueError(
            f"bits must be at least {MIN_PRIME_BITS}, got {bits}: "
            "smaller prime spaces collide too easily"
        )
    rng = random.Random(seed)
    return _draw_primes(rng, count, bits, set())


def _draw_primes(rng: random.Random, count: int, bits: int, seen: set[int]) -> list[int]:
    """Next ``count`` primes from the candidate stream, skipping ``seen``."""
    top = 1 << (bits - 1)
    out: list[int] = []
    while len(out) < count:
        candidate = rng.getrandbits(bits) | top | 1
        if candidate in seen:
            continue
        if gmpy2.is_prime(candidate, _PRIMALITY_ROUNDS):
            seen.add(candidate)
            out.append(candidate)
    return out


def generate_dataset(
    num_moduli: int, bit_size: int, num_weak: int, seed: int
) -> tuple[ModulusSet, PlantedGroundTruth]:
    """Generate a modulus set with ``num_weak`` moduli paired off to share primes.

    ``num_weak`` must be even and at most ``num_moduli``; ``bit_size`` must be
    even and at least 32. Weak pair positions are chosen by a seeded shuffle
    of all indices, so the shared primes are scattered across the set. Each
    modulus has ``bit_size`` or ``bit_size - 1`` bits.
    """
    if num_moduli < 1:
        raise ValueError(f"num_moduli must be positive, got {num_moduli}")
    if num_weak < 0 or num_weak % 2:
        raise ValueError(f"num_weak must be even and non-negative, got {num_weak}")
    if num_weak > num_moduli:
        raise ValueError(f"num_weak ({num_weak}) cannot exceed num_moduli ({num_moduli})")
    if bit_size % 2 or bit_size < MIN_MODULUS_BITS:
        raise ValueError(f"bit_size must be even and >= {MIN_MODULUS_BITS}, got {bit_size}")

    rng = random.Random(seed)
    half = bit_size // 2
    seen: set[int] = set()
    num_pairs = num_weak // 2
    num_strong = num_moduli - num_weak

    shared = _draw_primes(rng, num_pairs, half, seen)
    pair_uniques = _draw_primes(rng, num_weak, half, seen)
    strong_uniques = _draw_primes(rng, 2 * num_strong, half, seen)

    positions = list(range(num_moduli))
    rng.shuffle(positions)

    moduli = [0] * num_moduli
    weak_pairs = []
    for k in range(num_pairs):
        pos_a, pos_b = positions[2 * k], positions[2 * k + 1]
        moduli[pos_a] = shared[k] * pair_uniques[2 * k]
        moduli[pos_b] = shared[k] * pair_uniques[2 * k + 1]
        a, b = sorted((pos_a, pos_b))
        weak_pairs.append((a, b, shared[k]))
    for t, pos in enumerate(positions[num_weak:]):
        moduli[pos] = strong_uniques[2 * t] * strong_uniques[2 * t + 1]
    weak_pairs.sort()

    return (
        ModulusSet(moduli, bit_size, seed),
        PlantedGroundTruth(weak_pairs, len(weak_pairs)),
    )


def generate_adversarial_dataset(kind: str, seed: int) -> tuple[ModulusSet, PlantedGroundTruth]:
    """Small 64-bit sets exercising the hard resolution cases.

    ``double_shared``: one modulus p*q where p is shared with a second
    modulus and q with a third, so its final GCD against the divisor product
    is the full modulus. ``duplicate_modulus``: the same semiprime appears
    twice and its primes appear nowhere else, which no GCD-based method can
    factor; a normal weak pair and strong moduli ride along as distractors.
    """
    if kind not in ADVERSARIAL_KINDS:
        raise ValueError(f"kind must be one of {ADVERSARIAL_KINDS}, got {kind!r}")
    bit_size = 64
    rng = random.Random(seed)
    seen: set[int] = set()
    half = bit_size // 2

    if kind == "double_shared":
        p, q, u1, u2 = _draw_primes(rng, 4, half, seen)
        strong = _draw_primes(rng, 8, half, seen)
        raw = [p * q, p * u1, q * u2] + [
            strong[2 * t] * strong[2 * t + 1] for t in range(4)
        ]
        raw_pairs = [(0, 1, p), (0, 2, q)]
    else:
        dup_p, dup_q, r, v1, v2 = _draw_primes(rng, 5, half, seen)
        strong = _draw_primes(rng, 4, half, seen)
        dup = dup_p * dup_q
        raw = [dup, dup, r * v1, r * v2] + [
            strong[2 * t] * strong[2 * t + 1] for t in range(2)
        ]
        raw_pairs = [(2, 3, r)]

    positions = list(range(len(raw)))
    rng.shuffle(positions)
    moduli = [0] * len(raw)
    for raw_index, pos in enumerate(positions):
        moduli[pos] = raw[raw_index]
    weak_pairs = []
    for a, b, prime in raw_pairs:
        pa, pb = sorted((positions[a], positions[b]))
        weak_pairs.append((pa, pb, prime))
    weak_pairs.sort()

    return (
        ModulusSet(moduli, bit_size, seed),
        PlantedGroundTruth(weak_pairs, len(weak_pairs)),
    )


def truth_path_for(path: Path | str) -> Path:
    """Sidecar ground-truth path for a dataset file: same stem, .truth suffix."""
    return Path(path).with_suffix(".truth")


def save_dataset(
    modulus_set: ModulusSet, truth: PlantedGroundTruth | None, path: Path | str
) -> None:
    """Write a dataset file and, when truth is given, its .truth sidecar.

    Dataset format: ``#`` metadata headers (bits, seed, weak) followed by one
    lowercase hex modulus per line. Truth format: one
    ``index_a index_b shared_prime_hex`` line per planted pair, indices
    decimal and 0-based.
    """
    path = Path(path)
    lines = [f"# bits={modulus_set.bit_size}", f"# seed={modulus_set.seed}"]
    if truth is not None:
        lines.append(f"# weak={2 * len(truth.weak_pairs)}")
    lines.extend(format(n, "x") for n in modulus_set.moduli)
    path.write_text("\n".join(lines) + "\n")
    if truth is not None:
        body = "".join(f"{a} {b} {format(p, 'x')}\n" for a, b, p in truth.weak_pairs)
        truth_path_for(path).write_text(body)


_HEX_RE = re.compile(r"[0-9a-f]+\Z")
_HEADER_RE = re.compile(r"#\s*(\w+)\s*=\s*(\S+)\Z")


def load_dataset(path: Path | str) -> tuple[ModulusSet, PlantedGroundTruth | None]:
    """Read a dataset file, plus its .truth sidecar when one exists.

    Raises DatasetParseError (with path and line number) on malformed input.
    Missing metadata headers default to 0; truth is None when no sidecar
    file is present.
    """
    path = Path(path)
    meta = {}
    moduli: list[int] = []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            match = _HEADER_RE.match(line)
            if match:
                key, value = match.groups()
                if key in ("bits", "seed", "weak"):
                    try:
                        meta[key] = int(value)
                    except ValueError:
                        raise DatasetParseError(
                            path, lineno, f"header {key} is not an integer: {value!r}"
                        ) from None
            continue
        if not _HEX_RE.match(line):
            raise DatasetParseError(
                path, lineno, f"expected a lowercase hex modulus, got {line!r}"
            )
        moduli.append(int(line, 16))

    modulus_set = ModulusSet(moduli, meta.get("bits", 0), meta.get("seed", 0))
    sidecar = truth_path_for(path)
    truth = _load_truth(sidecar, len(moduli)) if sidecar.exists() else None
    return modulus_set, truth


def _load_truth(path: Path, num_moduli: int) -> PlantedGroundTruth:
    pairs: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise DatasetParseError(
                path, lineno, "expected 'index_a index_b shared_prime_hex'"
            )
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise DatasetParseError(
                path, lineno, f"indices must be decimal integers: {line!r}"
            ) from None
        if not _HEX_RE.match(parts[2]):
            raise DatasetParseError(
                path, lineno, f"expected a lowercase hex prime, got {parts[2]!r}"
            )
        if not (0 <= a < num_moduli and 0 <= b < num_moduli) or a == b:
            raise DatasetParseError(
                path, lineno, f"indices out of range for {num_moduli} moduli: {a} {b}"
            )
        pairs.append((a, b, int(parts[2], 16)))
    return PlantedGroundTruth(pairs, len(pairs))
