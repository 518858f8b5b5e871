"""
Complex Hadamard matrices: Fourier and Diţă constructions, the magic unitary and commuting
square attached to a matrix, the intertwiner spaces of its quantum permutation group, and
the moments of the characters of deformed Fourier matrices.
"""
import csv
import io
import json
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import comb

from opalg import linalg
from opalg.config import DEFAULT_GUARDS, DEFAULT_SEED, SizeGuards
from opalg.cyclotomic import CyclotomicNumber, root_sum
from opalg.exceptions import HadamardValidationError, MismatchError
from opalg.partitions import narayana
from opalg.randmat import MonteCarloEstimate, map_indexed, stream

logger = logging.getLogger(__name__)

UNIT_TOLERANCE = 1e-10
ORTHOGONALITY_TOLERANCE = 1e-8
PROJECTION_TOLERANCE = 1e-9
RANK_CUTOFF = 1e-8
EXACT_UNKNOWNS = 64


class HadamardMatrix:
    """
    An N×N matrix with unit-modulus entries and pairwise orthogonal rows.

    Exact matrices store entries as exponents e_ij of ζ = exp(2πi/order); float matrices
    store the complex entries only.

    :raises HadamardValidationError: if an entry is not of modulus one or two rows are not
        orthogonal.
    """

    def __init__(
        self,
        entries: np.ndarray,
        order: Optional[int] = None,
        exponents: Optional[Sequence[Sequence[int]]] = None,
        provenance: str = "",
    ):
        entries = np.asarray(entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or not entries.size:
            raise ValueError("Matrix must be square and nonempty")
        self.matrix = entries
        self.order = order
        self.exponents = None if exponents is None else tuple(tuple(int(e) % order for e in row) for row in exponents)
        self.provenance = provenance
        self.validate()

    @classmethod
    def from_exponents(cls, order: int, exponents: Sequence[Sequence[int]], provenance: str = "") -> "HadamardMatrix":
        if order < 1:
            raise ValueError("Order must be positive")
        e = np.array(exponents, dtype=float)
        return cls(np.exp(2j * math.pi * e / order), order, exponents, provenance)

    @classmethod
    def from_entries(cls, entries: np.ndarray, provenance: str = "") -> "HadamardMatrix":
        return cls(entries, provenance=provenance)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def is_exact(self) -> bool:
        return self.exponents is not None

    def entry(self, i: int, j: int) -> CyclotomicNumber:
        if not self.is_exact:
            raise ValueError("Exact entries require a matrix given by phase exponents")
        return CyclotomicNumber.root(self.order, self.exponents[i][j])

    def validate(self) -> None:
        if self.is_exact:
            if len(self.exponents) != self.n or any(len(row) != self.n for row in self.exponents):
                raise HadamardValidationError("Exponent table must be N×N")
            for i in range(self.n):
                for j in range(i + 1, self.n):
                    differences = [a - b for a, b in zip(self.exponents[i], self.exponents[j])]
                    if not root_sum(self.order, differences).is_zero():
                        raise HadamardValidationError(f"Rows {i + 1} and {j + 1} are not orthogonal")
            return
        if np.max(np.abs(np.abs(self.matrix) - 1)) > UNIT_TOLERANCE:
            raise HadamardValidationError("Entries must have modulus one")
        gram = self.matrix @ self.matrix.conj().T
        if np.max(np.abs(gram - self.n * np.eye(self.n))) > ORTHOGONALITY_TOLERANCE * self.n:
            raise HadamardValidationError("Rows must be pairwise orthogonal")

    def tensor(self, other: "HadamardMatrix") -> "HadamardMatrix":
        """
        H ⊗ K, rows and columns in row-major order; exact when both factors are.
        """
        provenance = f"{self.provenance}⊗{other.provenance}"
        if self.is_exact and other.is_exact:
            order = int(np.lcm(self.order, other.order))
            a, b = order // self.order, order // other.order
            exponents = [
                [a * x + b * y for x in row for y in other_row]
                for row in self.exponents
                for other_row in other.exponents
            ]
            return HadamardMatrix.from_exponents(order, exponents, provenance)
        return HadamardMatrix(np.kron(self.matrix, other.matrix), provenance=provenance)

    def to_json(self) -> str:
        if not self.is_exact:
            raise ValueError("JSON form requires a matrix given by phase exponents")
        return json.dumps({"order": self.order, "exponents": [list(row) for row in self.exponents]})

    @classmethod
    def from_json(cls, text: str) -> "HadamardMatrix":
        data = json.loads(text)
        return cls.from_exponents(data["order"], data["exponents"], data.get("provenance", "file"))

    def to_csv(self) -> str:
        """
        One line per entry: 1-based row and column, real and imaginary part.
        """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["row", "col", "re", "im"])
        for (i, j), value in np.ndenumerate(self.matrix):
            writer.writerow([i + 1, j + 1, format(value.real, ".17g"), format(value.imag, ".17g")])
        return buffer.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "HadamardMatrix":
        rows = list(csv.DictReader(io.StringIO(text)))
        n = int(math.isqrt(len(rows)))
        if n * n != len(rows) or not rows:
            raise ValueError("CSV must list the N² entries of a square matrix")
        entries = np.zeros((n, n), dtype=complex)
        for row in rows:
            entries[int(row["row"]) - 1, int(row["col"]) - 1] = complex(float(row["re"]), float(row["im"]))
        return cls(entries, provenance="file")

    def __repr__(self) -> str:
        kind = f"order={self.order}" if self.is_exact else "float"
        return f"HadamardMatrix(N={self.n}, {kind}, {self.provenance!r})"


def fourier(orders: Sequence[int]) -> HadamardMatrix:
    """
    F_{N_1} ⊗ … ⊗ F_{N_k}, exact, with (F_N)_{ij} = w^{ij} and w = exp(2πi/N).
    """
    if not orders or any(n < 1 for n in orders):
        raise ValueError("Orders must be positive")
    matrices = [
        HadamardMatrix.from_exponents(n, [[i * j for j in range(n)] for i in range(n)], f"F{n}") for n in orders
    ]
    return reduce(HadamardMatrix.tensor, matrices)


def dita_deform(fg: HadamardMatrix, fh: HadamardMatrix, q: Optional[np.ndarray] = None) -> HadamardMatrix:
    """
    The deformed tensor product with entries Q_ib·(F_G)_ij·(F_H)_ab at row (i, a) and
    column (j, b).

    :param q: |G|×|H| unit-modulus parameters, all ones by default.
    :raises HadamardValidationError: if Q has an entry off the unit circle.
    """
    if q is None:
        return fg.tensor(fh)
    q = np.asarray(q, dtype=complex)
    if fg.is_exact and fh.is_exact and q.shape == (fg.n, fh.n) and np.allclose(q, 1, rtol=0, atol=UNIT_TOLERANCE):
        return fg.tensor(fh)
    if q.shape != (fg.n, fh.n):
        raise MismatchError(f"Q must be {fg.n}×{fh.n}, got {q.shape}")
    if np.max(np.abs(np.abs(q) - 1)) > UNIT_TOLERANCE:
        raise HadamardValidationError("Entries of Q must have modulus one")
    entries = np.einsum("ib,ij,ab->iajb", q, fg.matrix, fh.matrix).reshape(fg.n * fh.n, fg.n * fh.n)
    return HadamardMatrix(entries, provenance=f"{fg.provenance}⊗_Q{fh.provenance}")


@dataclass(frozen=True, eq=False)
class MagicUnitary:
    """
    blocks[i, j] is the N×N projection P_ij.
    """

    blocks: np.ndarray

    @property
    def n(self) -> int:
        return self.blocks.shape[0]

    def defect(self) -> float:
        """
        Largest deviation from P² = P = P* and from unit row and column sums.
        """
        p = self.blocks
        squares = np.einsum("ijxy,ijyz->ijxz", p, p)
        identity = np.eye(self.n)
        return float(
            max(
                np.max(np.abs(squares - p)),
                np.max(np.abs(p - p.conj().transpose(0, 1, 3, 2))),
                np.max(np.abs(p.sum(axis=1) - identity)),
                np.max(np.abs(p.sum(axis=0) - identity)),
            )
        )


def _ratio_vectors(h: HadamardMatrix) -> np.ndarray:
    """
    v[i, j] = (H_i / H_j)/√N, the unit vectors spanning the magic unitary.
    """
    h = h.matrix
    return np.einsum("ix,jx->ijx", h, h.conj()) / math.sqrt(len(h))


def magic_unitary(h: HadamardMatrix) -> MagicUnitary:
    """
    P_ij = projection onto H_i/H_j.

    :raises HadamardValidationError: if the projections fail the magic unitary relations.
    """
    v = _ratio_vectors(h)
    result = MagicUnitary(np.einsum("ijx,ijy->ijxy", v, v.conj()))
    defect = result.defect()
    if defect > PROJECTION_TOLERANCE:
        raise HadamardValidationError(f"Projections are not a magic unitary, defect {defect:.3g}")
    return result


@dataclass(frozen=True)
class SquareReport:
    diagonal_first: float
    rotated_first: float

    @property
    def passed(self) -> bool:
        return max(self.diagonal_first, self.rotated_first) <= PROJECTION_TOLERANCE


def commuting_square_defects(u: np.ndarray) -> SquareReport:
    """
    For the diagonal algebra Δ and its conjugate UΔU*, the largest deviation of
    E_Δ∘E_{UΔU*} and of E_{UΔU*}∘E_Δ from M ↦ tr(M)·1 over the matrix units.
    """
    u = np.asarray(u, dtype=complex)
    n = len(u)

    def diagonal(m: np.ndarray) -> np.ndarray:
        return np.diag(np.diag(m))

    def rotated(m: np.ndarray) -> np.ndarray:
        return u @ diagonal(u.conj().T @ m @ u) @ u.conj().T

    first = second = 0.0
    for a in range(n):
        for b in range(n):
            unit = np.zeros((n, n), dtype=complex)
            unit[a, b] = 1
            expected = np.trace(unit) / n * np.eye(n)
            first = max(first, float(np.max(np.abs(diagonal(rotated(unit)) - expected))))
            second = max(second, float(np.max(np.abs(rotated(diagonal(unit)) - expected))))
    return SquareReport(first, second)


def commuting_square_check(h: HadamardMatrix) -> SquareReport:
    """
    Checks that Δ ⊂ M_N ⊃ UΔU*, U = H/√N, is a commuting square over ℂ.
    """
    return commuting_square_defects(h.matrix / math.sqrt(h.n))


def _profile(h: HadamardMatrix) -> np.ndarray:
    """
    Normalized profile g[i, a, j, b] = N^{−1}·Σ_x H_ix H̄_jx H̄_ax H_bx.
    """
    m = h.matrix
    return np.einsum("ix,jx,ax,bx->iajb", m, m.conj(), m.conj(), m) / h.n


def _exact_profile(h: HadamardMatrix) -> Optional[np.ndarray]:
    """
    The normalized profile as fractions when every entry is rational, otherwise None.
    """
    n = h.n
    result = np.empty((n, n, n, n), dtype=object)
    for i, a, j, b in product(range(n), repeat=4):
        exponents = [
            h.exponents[i][x] - h.exponents[j][x] - h.exponents[a][x] + h.exponents[b][x] for x in range(n)
        ]
        value = root_sum(h.order, exponents).rational_value()
        if value is None:
            return None
        result[i, a, j, b] = value / n
    return result


def _chain(g: np.ndarray, m: int) -> np.ndarray:
    """
    G^m as a tensor over (i_1..i_m, j_1..j_m): Π_{t=2}^m g[i_t, i_{t−1}, j_t, j_{t−1}].
    """
    operands: List = []
    for t in range(1, m):
        operands += [g, [t, t - 1, m + t, m + t - 1]]
    return np.einsum(*operands, list(range(2 * m)))


def _chain_exact(g: np.ndarray, m: int) -> np.ndarray:
    n = g.shape[0]
    result = np.empty((n,) * (2 * m), dtype=object)
    for index in product(range(n), repeat=2 * m):
        i, j = index[:m], index[m:]
        value = Fraction(1)
        for t in range(1, m):
            value *= g[i[t], i[t - 1], j[t], j[t - 1]]
            if not value:
                break
        result[index] = value
    return result


def _blocks(x: np.ndarray, y: np.ndarray, n: int, k: int, l: int):
    """
    Yields, per outer index (a, b, c, d), the block of T°G^{k+2} − G^{l+2}T° acting on
    vec(T) with T ∈ M_{N^l × N^k}.
    """
    mk, ml = k + 2, l + 2
    xs = x.reshape((n,) * (2 * mk))
    ys = y.reshape((n,) * (2 * ml))
    rows, cols = n**l, n**k
    for a, b, c, d in product(range(n), repeat=4):
        # xt[J, J0] = X[(a, J0, b), (c, J, d)], yt[I, I0] = Y[(a, I, b), (c, I0, d)]
        xt = _slice(xs, mk, a, b, c, d).reshape(cols, cols).T
        yt = _slice(ys, ml, a, b, c, d).reshape(rows, rows)
        yield np.kron(np.eye(rows, dtype=x.dtype), xt) - np.kron(yt, np.eye(cols, dtype=x.dtype))


def _slice(tensor: np.ndarray, m: int, a: int, b: int, c: int, d: int) -> np.ndarray:
    index = [slice(None)] * (2 * m)
    index[0], index[m - 1], index[m], index[2 * m - 1] = a, b, c, d
    return np.asarray(tensor[tuple(index)])


def intertwiner_dim(
    h: HadamardMatrix, k: int, l: int, guards: SizeGuards = DEFAULT_GUARDS, exact: Optional[bool] = None
) -> int:
    """
    Dimension of {T ∈ M_{N^l × N^k} : T°G^{k+2} = G^{l+2}T°}, T° = 1 ⊗ T ⊗ 1, for the
    normalized profile G of H.

    :param exact: solve over the rationals; by default done when H has exact phases, its
        profile is rational and the system is small.
    :raises SizeGuardError: if N^{max(k,l)+2} exceeds the ``linear_system`` guard.
    """
    if k < 0 or l < 0:
        raise ValueError("k and l must not be negative")
    n = h.n
    guards.check("linear_system", n ** (max(k, l) + 2))
    unknowns = n ** (k + l)
    g = None
    if exact is not False and h.is_exact and (exact or unknowns <= EXACT_UNKNOWNS):
        g = _exact_profile(h)
        if g is None and exact:
            raise ValueError("Exact elimination requires a rational profile")
    if g is not None:
        rows = set()
        for block in _blocks(_chain_exact(g, k + 2), _chain_exact(g, l + 2), n, k, l):
            for row in block:
                if any(row):
                    rows.add(tuple(row))
        rank = linalg.rank(list(rows)) if rows else 0
        logger.debug("exact intertwiner system: %d unknowns, %d distinct rows, rank %d", unknowns, len(rows), rank)
        return unknowns - rank
    g = _profile(h)
    r = np.zeros((0, unknowns), dtype=complex)
    for block in _blocks(_chain(g, k + 2), _chain(g, l + 2), n, k, l):
        r = np.linalg.qr(np.vstack([r, block]), mode="r")
    singular = np.linalg.svd(r, compute_uv=False) if r.size else np.zeros(0)
    if not singular.size or singular[0] == 0:
        return unknowns
    rank = int(np.count_nonzero(singular > RANK_CUTOFF * singular[0]))
    return unknowns - rank


def planar_dim(h: HadamardMatrix, k: int, guards: SizeGuards = DEFAULT_GUARDS) -> int:
    """
    dim P_k = dim Fix(u^{⊗k}).
    """
    return intertwiner_dim(h, 0, k, guards)


@dataclass(frozen=True, eq=False)
class CesaroResult:
    matrix: np.ndarray
    iterations: int
    rank: int
    defect: float


def _moment_matrix(h: HadamardMatrix, p: int) -> np.ndarray:
    """
    Φ[I, J] = tr(P_{i_1 j_1} ⋯ P_{i_p j_p}), the matrix of φ on the coefficients of u^{⊗p}.
    """
    v = _ratio_vectors(h)
    n = h.n
    overlap = np.einsum("ijx,abx->ijab", v.conj(), v)
    operands: List = []
    for t in range(p):
        following = (t + 1) % p
        operands += [overlap, [t, p + t, following, p + following]]
    phi = np.einsum(*operands, list(range(2 * p))) / n
    return phi.reshape(n**p, n**p)


def cesaro_haar(h: HadamardMatrix, p: int, iterations: int, guards: SizeGuards = DEFAULT_GUARDS) -> CesaroResult:
    """
    C = (1/k)·Σ_{r=1}^k Φ^r, the Cesàro average of the convolution powers of the model
    state on u^{⊗p}; it tends to the projection onto Fix(u^{⊗p}).

    :return: the average, its rank (singular values above 1/2) and ‖C² − C‖.
    :raises SizeGuardError: if N^{2p} exceeds the ``cesaro`` guard.
    """
    if p < 1:
        raise ValueError("p must be positive")
    if iterations < 1:
        raise ValueError("Iterations must be positive")
    guards.check("cesaro", h.n ** (2 * p))
    phi = _moment_matrix(h, p)
    power = np.eye(len(phi), dtype=complex)
    total = np.zeros_like(power)
    for _ in range(iterations):
        power = power @ phi
        total += power
    average = total / iterations
    rank = int(np.count_nonzero(np.linalg.svd(average, compute_uv=False) > 0.5))
    defect = float(np.linalg.norm(average @ average - average, 2))
    return CesaroResult(average, iterations, rank, defect)


def _kesten_count(m: int, n: int, p: int, first: Tuple[int, ...], d: np.ndarray) -> int:
    i = np.array(first)
    left = np.sort(i * n + d, axis=1)
    right = np.sort(i * n + np.roll(d, 1, axis=1), axis=1)
    return int(np.count_nonzero(np.all(left == right, axis=1)))


def kesten_moment(m: int, n: int, p: int, guards: SizeGuards = DEFAULT_GUARDS) -> Fraction:
    """
    (1/MN)·#{i ∈ [M]^p, d ∈ [N]^p : {(i_t, d_t)} = {(i_t, d_{t−1})} as multisets}, indices
    cyclic, the p-th moment of the character of a generic deformation F_M ⊗_Q F_N.

    :raises SizeGuardError: if (MN)^p exceeds the ``enumeration`` guard.
    """
    if m < 1 or n < 1:
        raise ValueError("M and N must be positive")
    if p < 1:
        raise ValueError("p must be positive")
    guards.check("enumeration", (m * n) ** p)
    d = np.array(list(product(range(n), repeat=p)), dtype=np.int64)
    outer = list(product(range(m), repeat=p))
    counts = map_indexed(len(outer), lambda index: _kesten_count(m, n, p, outer[index], d))
    return Fraction(sum(counts), m * n)


def gram_law_mc(m: int, n: int, p: int, samples: int, seed: int = DEFAULT_SEED) -> MonteCarloEstimate:
    """
    Monte-Carlo average of Tr(A^p)/MN, A being the Gram matrix of the rows of a uniform
    q ∈ 𝕋^{M×N}; its expectation is :func:`kesten_moment`.
    """
    if samples < 1:
        raise ValueError("Sample count must be positive")
    if m < 1 or n < 1 or p < 1:
        raise ValueError("M, N and p must be positive")

    def run(index: int) -> complex:
        q = np.exp(2j * math.pi * stream(seed, index).random((m, n)))
        gram = q @ q.conj().T
        return complex(np.trace(np.linalg.matrix_power(gram, p)).real / (m * n))

    return MonteCarloEstimate.of(map_indexed(samples, run))


def _multinomial_squares(n: int, k: int) -> int:
    """
    ∫|a_1 + … + a_N|^{2k} over 𝕋^N, the sum of squared multinomial coefficients.
    """
    total = 0
    for parts in _compositions(k, n):
        coefficient = math.factorial(k)
        for r in parts:
            coefficient //= math.factorial(r)
        total += coefficient * coefficient
    return total


def _compositions(k: int, n: int):
    if n == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in _compositions(k - first, n - 1):
            yield (first,) + rest


def blowup_m2(n: int, p: int) -> Fraction:
    """
    Exact p-th moment for F_2 ⊗_Q F_N with generic Q:
    (1/N)·Σ_k C(p, 2k)·N^{p−2k}·∫|Σa_i|^{2k}.
    """
    if n < 1 or p < 0:
        raise ValueError("N must be positive and p must not be negative")
    total = sum(
        int(comb(p, 2 * k, exact=True)) * n ** (p - 2 * k) * _multinomial_squares(n, k) for k in range(p // 2 + 1)
    )
    return Fraction(total, n)


@dataclass(frozen=True)
class BlowupLaw:
    """
    (1 − 1/N)·δ_0 + (1/N)·law(N + e·|Σ a_i|), e uniform on ±1 and a uniform on 𝕋^N.
    """

    n: int

    @property
    def zero_mass(self) -> Fraction:
        return 1 - Fraction(1, self.n)

    def moment(self, p: int) -> Fraction:
        return blowup_m2(self.n, p)

    def describe(self) -> str:
        return f"(1-1/{self.n})delta_0 + (1/{self.n}) law({self.n} + e|a_1+...+a_{self.n}|)"


def blowup_measure_m2(n: int) -> BlowupLaw:
    if n < 1:
        raise ValueError("N must be positive")
    return BlowupLaw(n)


def blowup_samples(n: int, p: int, samples: int, seed: int = DEFAULT_SEED) -> MonteCarloEstimate:
    """
    Monte-Carlo average of Φ^p/N for the blowup map Φ(e, a) = N + e·|Σ a_i|.
    """
    if samples < 1:
        raise ValueError("Sample count must be positive")

    def run(index: int) -> complex:
        rng = stream(seed, index)
        sign = 1 if rng.random() < 0.5 else -1
        a = np.exp(2j * math.pi * rng.random(n))
        return complex((n + sign * abs(a.sum())) ** p / n)

    return MonteCarloEstimate.of(map_indexed(samples, run))


def asymptotic_moments(alpha: Fraction, beta: Fraction, p: int) -> Fraction:
    """
    Σ_r #{π ∈ NC(p) : |π| = r}·α^{r−1}·β^{p−r}, the limit of kesten(αK, βK, p)/K^{p−1}.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha <= 0 or beta <= 0:
        raise ValueError("Alpha and beta must be positive")
    if p < 1:
        raise ValueError("p must be positive")
    return sum((narayana(p, r) * alpha ** (r - 1) * beta ** (p - r) for r in range(1, p + 1)), Fraction(0))


@dataclass(frozen=True)
class AsymptoticRow:
    k: int
    m: int
    n: int
    value: Fraction
    limit: Fraction

    @property
    def gap(self) -> Fraction:
        return abs(self.value - self.limit)


def convergence_check(
    alpha: Fraction, beta: Fraction, p: int, ks: Sequence[int], guards: SizeGuards = DEFAULT_GUARDS
) -> List[AsymptoticRow]:
    """
    Tabulates kesten(αK, βK, p)/K^{p−1} against its limit; K with αK or βK not an integer
    are skipped.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    limit = asymptotic_moments(alpha, beta, p)
    rows = []
    for k in ks:
        m, n = alpha * k, beta * k
        if m.denominator != 1 or n.denominator != 1:
            logger.warning("skipping K=%d: M=%s, N=%s are not integers", k, m, n)
            continue
        value = kesten_moment(int(m), int(n), p, guards) / Fraction(k) ** (p - 1)
        rows.append(AsymptoticRow(k, int(m), int(n), value, limit))
    return rows


@dataclass(frozen=True)
class HankelReport:
    moments: Tuple[Fraction, ...]
    smallest_eigenvalue: float

    @property
    def positive(self) -> bool:
        return self.smallest_eigenvalue >= -1e-9 * max(1.0, float(max(self.moments)))


def hankel_check(m: int, n: int, p: int, guards: SizeGuards = DEFAULT_GUARDS) -> HankelReport:
    """
    Smallest eigenvalue of the Hankel matrix (c_{i+j}) built from c_0 = 1 and the Kesten
    moments c_1..c_p.
    """
    moments = (Fraction(1),) + tuple(kesten_moment(m, n, j, guards) for j in range(1, p + 1))
    size = p // 2 + 1
    hankel = np.array([[float(moments[i + j]) for j in range(size)] for i in range(size)])
    return HankelReport(moments, float(np.linalg.eigvalsh(hankel)[0]))
