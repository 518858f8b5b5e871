"""
Seeded Monte-Carlo samplers for Gaussian, Wigner and Wishart ensembles and for Haar
orthogonal and unitary matrices, with empirical moments and spectra.

Every sample is drawn from its own Philox stream keyed by (seed, sample index), so a sample
does not depend on which thread draws it nor on the order samples are drawn in.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

import numpy as np

from opalg.config import DEFAULT_SEED, thread_count
from opalg.partitions import Color, ColoredWord

logger = logging.getLogger(__name__)

T = TypeVar("T")

KINDS = ("complex-gaussian", "wigner", "wishart", "haar-orthogonal", "haar-unitary")
GROUPS = {"O_N": "haar-orthogonal", "U_N": "haar-unitary"}

HERMITIAN_TOLERANCE = 1e-10


@dataclass(frozen=True)
class EnsembleSpec:
    """
    :param kind: one of :data:`KINDS`.
    :param n: matrix size N.
    :param m: second dimension M of the Wishart factor.
    :param t: variance of the Gaussian entries.
    :param seed: nonnegative 64-bit seed.
    :param samples: number of samples.
    """

    kind: str
    n: int
    m: int = 0
    t: float = 1.0
    seed: int = DEFAULT_SEED
    samples: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"Kind must be one of {', '.join(KINDS)}, got {self.kind!r}")
        if self.n < 1:
            raise ValueError("N must be positive")
        if self.kind == "wishart" and self.m < 1:
            raise ValueError("Wishart ensembles require M ≥ 1")
        if self.t <= 0:
            raise ValueError("t must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("Seed must be a nonnegative 64-bit integer")
        if self.samples < 1:
            raise ValueError("Sample count must be positive")

    @property
    def complex_entries(self) -> bool:
        return self.kind != "haar-orthogonal"

    def generator(self, index: int) -> np.random.Generator:
        return stream(self.seed, index)

    def metadata(self) -> Dict[str, object]:
        return {
            "kind": self.kind,
            "N": self.n,
            "M": self.m,
            "t": self.t,
            "seed": self.seed,
            "samples": self.samples,
            "generator": "Philox",
            "variates": "ziggurat",
            "normalization": _NORMALIZATIONS[self.kind],
        }


def stream(seed: int, index: int) -> np.random.Generator:
    """
    The Philox stream of sample ``index`` under ``seed``.
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))


_NORMALIZATIONS = {
    "complex-gaussian": "Z/sqrt(N)",
    "wigner": "Z/sqrt(N)",
    "wishart": "W/N",
    "haar-orthogonal": "U",
    "haar-unitary": "U",
}


def _complex_gaussian(rng: np.random.Generator, shape: Tuple[int, int], t: float) -> np.ndarray:
    """
    Entries with E|z|² = t.
    """
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) * math.sqrt(t / 2)


def _haar(rng: np.random.Generator, n: int, unitary: bool) -> np.ndarray:
    if unitary:
        z = _complex_gaussian(rng, (n, n), 1.0)
    else:
        z = rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    phases = d / np.abs(d)
    return q * phases


def sample(spec: EnsembleSpec, index: int) -> np.ndarray:
    """
    The index-th matrix of the ensemble, unnormalized.

    :raises ValueError: if the index is outside 0..samples−1.
    """
    if not 0 <= index < spec.samples:
        raise ValueError(f"Sample index must lie in 0..{spec.samples - 1}")
    rng = spec.generator(index)
    n = spec.n
    if spec.kind == "complex-gaussian":
        return _complex_gaussian(rng, (n, n), spec.t)
    if spec.kind == "wigner":
        x = _complex_gaussian(rng, (n, n), spec.t)
        return (x + x.conj().T) / math.sqrt(2)
    if spec.kind == "wishart":
        y = _complex_gaussian(rng, (n, spec.m), spec.t)
        return y @ y.conj().T
    return _haar(rng, n, spec.kind == "haar-unitary")


def normalized(spec: EnsembleSpec, matrix: np.ndarray) -> np.ndarray:
    if spec.kind in ("complex-gaussian", "wigner"):
        return matrix / math.sqrt(spec.n)
    if spec.kind == "wishart":
        return matrix / spec.n
    return matrix


def _word_trace(matrix: np.ndarray, word: ColoredWord) -> complex:
    product = np.eye(matrix.shape[0], dtype=complex)
    adjoint = matrix.conj().T
    for color in word:
        product = product @ (matrix if color is Color.WHITE else adjoint)
    return complex(np.trace(product)) / matrix.shape[0]


def _map_samples(spec: EnsembleSpec, statistic: Callable[[np.ndarray], Sequence[complex]]) -> List[List[complex]]:
    """
    Evaluates a statistic on every sample, returning the values in sample order.
    """
    return map_indexed(spec.samples, lambda index: list(statistic(sample(spec, index))))


def map_indexed(count: int, run: Callable[[int], T]) -> List[T]:
    """
    Evaluates run(0..count−1) on the worker threads, results in index order.
    """
    workers = min(thread_count(), count)
    if workers <= 1:
        return [run(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(run, range(count)))


def _mean(values: Sequence[complex]) -> complex:
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values)) / len(values)


def empirical_moments(spec: EnsembleSpec, k: int) -> List[float]:
    """
    Sample averages of tr(X^j), j = 1..k, for the normalized matrix X.
    """
    if k < 1:
        raise ValueError("k must be positive")

    def traces(matrix: np.ndarray) -> List[complex]:
        x = normalized(spec, matrix)
        power = np.eye(spec.n, dtype=complex)
        values = []
        for _ in range(k):
            power = power @ x
            values.append(complex(np.trace(power)) / spec.n)
        return values

    per_sample = _map_samples(spec, traces)
    return [_mean([row[j] for row in per_sample]).real for j in range(k)]


def empirical_word_moment(spec: EnsembleSpec, word: ColoredWord) -> complex:
    """
    Sample average of tr(X^{e_1} … X^{e_k}), X^• being the adjoint.
    """
    per_sample = _map_samples(spec, lambda m: [_word_trace(normalized(spec, m), word)])
    return _mean([row[0] for row in per_sample])


@dataclass(frozen=True, eq=False)
class EmpiricalMeasure:
    """
    Equal-weight measure on sorted sample points.
    """

    points: np.ndarray
    metadata: Dict[str, object] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.points)

    def moment(self, k: int) -> float:
        return math.fsum(self.points**k) / len(self.points)

    def mass_outside(self, lo: float, hi: float) -> float:
        outside = np.count_nonzero((self.points < lo) | (self.points > hi))
        return outside / len(self.points)

    def histogram(self, bins: int, lo: float, hi: float) -> Tuple[np.ndarray, np.ndarray]:
        """
        :return: bin edges and the fraction of points per bin.
        """
        counts, edges = np.histogram(self.points, bins=bins, range=(lo, hi))
        return edges, counts / len(self.points)


def spectrum(matrix: np.ndarray, metadata: Optional[Dict[str, object]] = None) -> EmpiricalMeasure:
    """
    Eigenvalues of a Hermitian matrix in ascending order.

    :raises ValueError: if the matrix is not square or not Hermitian within 1e−10.
    """
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError("Matrix must be square")
    if not np.allclose(matrix, matrix.conj().T, rtol=0, atol=HERMITIAN_TOLERANCE):
        raise ValueError("Matrix must be Hermitian")
    return EmpiricalMeasure(np.linalg.eigvalsh(matrix), dict(metadata or {}))


def pooled_spectrum(spec: EnsembleSpec) -> EmpiricalMeasure:
    """
    Eigenvalues of all normalized samples of a Hermitian ensemble, pooled and sorted.
    """
    if spec.kind not in ("wigner", "wishart"):
        raise ValueError("Spectra are defined for the wigner and wishart ensembles")
    per_sample = _map_samples(spec, lambda m: spectrum(normalized(spec, m)).points)
    points = np.sort(np.concatenate([np.asarray(row, dtype=float) for row in per_sample]))
    return EmpiricalMeasure(points, spec.metadata())


@dataclass(frozen=True)
class MonteCarloEstimate:
    mean: complex
    stderr: float
    samples: int

    @classmethod
    def of(cls, values: Sequence[complex]) -> "MonteCarloEstimate":
        """
        Sample mean with its standard error.
        """
        mean = _mean(values)
        spread = math.fsum(abs(v - mean) ** 2 for v in values) / max(len(values) - 1, 1)
        return cls(mean, math.sqrt(spread / len(values)), len(values))

    def within(self, exact: complex, errors: float = 3.0) -> bool:
        return abs(self.mean - exact) <= errors * self.stderr + 1e-12


def haar_word_integral_mc(
    group: str,
    n: int,
    rows: Sequence[int],
    cols: Sequence[int],
    colors: Optional[ColoredWord] = None,
    samples: int = 10_000,
    seed: int = DEFAULT_SEED,
) -> MonteCarloEstimate:
    """
    Monte-Carlo average of u_{i_1 j_1}^{e_1} … u_{i_k j_k}^{e_k} over Haar samples.

    :param group: ``"O_N"`` or ``"U_N"``.
    :return: mean and standard error.
    """
    if group not in GROUPS:
        raise ValueError(f"Group must be one of {', '.join(GROUPS)}")
    if len(rows) != len(cols):
        raise ValueError("Row and column words must have the same length")
    if any(not 1 <= x <= n for x in list(rows) + list(cols)):
        raise ValueError(f"Indices must lie in 1..{n}")
    colors = colors if colors is not None else ColoredWord.uniform(len(rows))
    spec = EnsembleSpec(GROUPS[group], n, seed=seed, samples=samples)

    def coordinate(u: np.ndarray) -> List[complex]:
        value = 1 + 0j
        for i, j, color in zip(rows, cols, colors):
            entry = u[i - 1, j - 1]
            value *= entry if color is Color.WHITE else np.conj(entry)
        return [complex(value)]

    return MonteCarloEstimate.of([row[0] for row in _map_samples(spec, coordinate)])


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    k: int
    empirical: float
    target: float

    @property
    def relative_gap(self) -> float:
        return abs(self.empirical - self.target) / abs(self.target)


def wigner_convergence(
    ns: Sequence[int], k: int = 4, samples: int = 20, seed: int = DEFAULT_SEED, t: float = 1.0
) -> List[ConvergenceRow]:
    """
    Even empirical Wigner moments against t^{j/2}·C_{j/2} for every N in ``ns``.
    """
    rows = []
    for n in ns:
        values = empirical_moments(EnsembleSpec("wigner", n, t=t, seed=seed, samples=samples), k)
        for j in range(2, k + 1, 2):
            target = t ** (j // 2) * math.comb(j, j // 2) / (j // 2 + 1)
            rows.append(ConvergenceRow(n, j, values[j - 1], target))
    for row in rows:
        logger.debug("wigner N=%d M_%d=%.6f target %.6f", row.n, row.k, row.empirical, row.target)
    return rows
