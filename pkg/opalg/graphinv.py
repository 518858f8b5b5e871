"""
Invariants of rooted bipartite graphs: Poincaré, theta and T series, spectral and circular
measures, inclusion matrices with their basic construction, and the ADE catalog together
with its closed-form T series and circular measures.
"""
import json
import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Hashable, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from opalg import linalg
from opalg.exceptions import ConsistencyError
from opalg.freeprob import DiscreteMeasure
from opalg.series import FormalSeries

logger = logging.getLogger(__name__)

EIGENVALUE_TOLERANCE = 1e-9

FAMILIES = ("A", "Atilde", "D", "Dtilde", "E6", "E7", "E8", "E6tilde", "E7tilde", "E8tilde")


class RootedBipartiteGraph:
    """
    A connected bipartite graph with edge multiplicities and a root in layer A.

    :param layer_a: vertex names of layer A.
    :param layer_b: vertex names of layer B.
    :param m: |A|×|B| nonnegative integer multiplicities.
    :param root: a vertex of layer A.
    :param name: catalog name, informational.
    :raises ValueError: on a malformed matrix, an invalid root or a disconnected graph.
    """

    def __init__(
        self,
        layer_a: Sequence[Hashable],
        layer_b: Sequence[Hashable],
        m: Sequence[Sequence[int]],
        root: Hashable,
        name: str = "",
    ):
        if len(m) != len(layer_a) or any(len(row) != len(layer_b) for row in m):
            raise ValueError("Matrix shape must be |A|×|B|")
        if any(x < 0 or int(x) != x for row in m for x in row):
            raise ValueError("Multiplicities must be nonnegative integers")
        if root not in layer_a:
            raise ValueError(f"Root {root!r} must be a vertex of layer A")
        self.layer_a = tuple(layer_a)
        self.layer_b = tuple(layer_b)
        self.m = tuple(tuple(int(x) for x in row) for row in m)
        self.root = root
        self.name = name
        if not nx.is_connected(self.to_networkx()):
            raise ValueError("Graph must be connected")

    @classmethod
    def from_edges(
        cls, edges: Sequence[Tuple[Hashable, Hashable, int]], root: Hashable, name: str = ""
    ) -> "RootedBipartiteGraph":
        """
        Builds the graph from (u, v, multiplicity) triples, 2-coloring it with the root in A.

        :raises ValueError: if the graph is not bipartite.
        """
        graph = nx.Graph()
        graph.add_node(root)
        weights: Dict[Tuple[Hashable, Hashable], int] = {}
        for u, v, multiplicity in edges:
            graph.add_edge(u, v)
            weights[(u, v)] = weights.get((u, v), 0) + multiplicity
        if not nx.is_bipartite(graph):
            raise ValueError("Graph must be bipartite")
        if not nx.is_connected(graph):
            raise ValueError("Graph must be connected")
        coloring = nx.bipartite.color(graph)
        side = coloring[root]
        layer_a = [v for v in graph.nodes if coloring[v] == side]
        layer_b = [v for v in graph.nodes if coloring[v] != side]
        index_a = {v: i for i, v in enumerate(layer_a)}
        index_b = {v: i for i, v in enumerate(layer_b)}
        m = [[0] * len(layer_b) for _ in layer_a]
        for (u, v), multiplicity in weights.items():
            if u in index_a:
                m[index_a[u]][index_b[v]] += multiplicity
            else:
                m[index_a[v]][index_b[u]] += multiplicity
        return cls(layer_a, layer_b, m, root, name)

    @classmethod
    def from_json(cls, text: str) -> "RootedBipartiteGraph":
        data = json.loads(text)
        layer_a, layer_b = data["layerA"], data["layerB"]
        index_a = {v: i for i, v in enumerate(layer_a)}
        index_b = {v: i for i, v in enumerate(layer_b)}
        m = [[0] * len(layer_b) for _ in layer_a]
        for a, b, multiplicity in data["edges"]:
            m[index_a[a]][index_b[b]] += multiplicity
        return cls(layer_a, layer_b, m, data["root"], data.get("name", ""))

    def to_json(self) -> str:
        edges = [
            [a, b, self.m[i][j]]
            for i, a in enumerate(self.layer_a)
            for j, b in enumerate(self.layer_b)
            if self.m[i][j]
        ]
        return json.dumps({"layerA": list(self.layer_a), "layerB": list(self.layer_b), "edges": edges, "root": self.root})

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(("a", v) for v in self.layer_a)
        graph.add_nodes_from(("b", v) for v in self.layer_b)
        for i, a in enumerate(self.layer_a):
            for j, b in enumerate(self.layer_b):
                if self.m[i][j]:
                    graph.add_edge(("a", a), ("b", b), weight=self.m[i][j])
        return graph

    @property
    def root_index(self) -> int:
        return self.layer_a.index(self.root)

    @property
    def vertex_count(self) -> int:
        return len(self.layer_a) + len(self.layer_b)

    def loop_matrix(self) -> List[List[int]]:
        """
        L = m·mᵗ, counting length-two paths between layer-A vertices.
        """
        return [[sum(x * y for x, y in zip(row, other)) for other in self.m] for row in self.m]

    def adjacency(self) -> np.ndarray:
        m = np.array(self.m, dtype=float).reshape(len(self.layer_a), len(self.layer_b))
        top = np.hstack([np.zeros((len(self.layer_a), len(self.layer_a))), m])
        bottom = np.hstack([m.T, np.zeros((len(self.layer_b), len(self.layer_b)))])
        return np.vstack([top, bottom])

    def __repr__(self) -> str:
        return f"RootedBipartiteGraph({self.name or self.to_json()})"


def poincare(g: RootedBipartiteGraph, K: int) -> FormalSeries:
    """
    f(z) = Σ_k (L^k)_{root,root} z^k, the generating series of 2k-loops at the root.
    """
    if K < 0:
        raise ValueError("K must not be negative")
    loop = g.loop_matrix()
    vector = [int(i == g.root_index) for i in range(len(g.layer_a))]
    coefficients = []
    for _ in range(K + 1):
        coefficients.append(vector[g.root_index])
        vector = [sum(x * y for x, y in zip(row, vector)) for row in loop]
    return FormalSeries(coefficients, K, "z")


def graph_norm(g: RootedBipartiteGraph) -> float:
    """
    ‖X‖, the largest singular value of the multiplicity matrix.
    """
    if not g.layer_b:
        return 0.0
    return float(np.linalg.svd(np.array(g.m, dtype=float), compute_uv=False)[0])


def admissible_index(x: float, tol: float = 1e-9) -> bool:
    """
    True iff x lies in {4cos²(π/n) : n ≥ 3} ∪ [4, ∞) up to ``tol``.
    """
    if x >= 4 - tol:
        return True
    n = 3
    while True:
        value = 4 * math.cos(math.pi / n) ** 2
        if abs(x - value) <= tol:
            return True
        if value > x + tol:
            return False
        n += 1


def spectral_measure(g: RootedBipartiteGraph) -> DiscreteMeasure:
    """
    Law of L = m·mᵗ in the root state, with eigenvalues merged within 1e−9.
    """
    loop = np.array(g.loop_matrix(), dtype=float)
    values, vectors = np.linalg.eigh(loop)
    weights = vectors[g.root_index, :] ** 2
    atoms: List[List[float]] = []
    for value, weight in zip(values, weights):
        value = max(float(value), 0.0)
        if atoms and abs(atoms[-1][0] - value) <= EIGENVALUE_TOLERANCE * max(1.0, value):
            atoms[-1][1] += float(weight)
        else:
            atoms.append([value, float(weight)])
    kept = tuple((x, w) for x, w in atoms if w > EIGENVALUE_TOLERANCE)
    return DiscreteMeasure(kept, math.fsum(w for _, w in kept))


def exact_spectral_measure(g: RootedBipartiteGraph) -> Optional[DiscreteMeasure]:
    """
    The spectral measure with exact rational weights when every eigenvalue of L is an
    integer, obtained from the loop counts by a Vandermonde solve; None otherwise.
    """
    values = np.linalg.eigvalsh(np.array(g.loop_matrix(), dtype=float))
    rounded = sorted({int(round(v)) for v in values})
    if any(abs(v - round(v)) > EIGENVALUE_TOLERANCE * max(1.0, abs(v)) for v in values):
        return None
    counts = poincare(g, len(rounded) - 1).coefficients
    vandermonde = [[Fraction(x) ** k for x in rounded] for k in range(len(rounded))]
    weights = linalg.solve(vandermonde, counts)
    atoms = tuple((x, w) for x, w in zip(rounded, weights) if w)
    return DiscreteMeasure(atoms, 1)


def _theta_by_substitution(f: FormalSeries, order: int) -> FormalSeries:
    q = FormalSeries.variable(order, "q")
    one_plus_q = 1 + q
    z = q / (one_plus_q * one_plus_q)
    return q + (1 - q) / one_plus_q * f.truncate(order).compose(z)


def _theta_by_coefficients(f: FormalSeries, order: int) -> FormalSeries:
    c = f.coefficients
    a = [Fraction(1)]
    for r in range(1, order + 1):
        a.append(
            sum(
                (
                    (-1) ** (r - k) * Fraction(2 * r, r + k) * math.comb(r + k, r - k) * c[k]
                    for k in range(0, r + 1)
                ),
                Fraction(0),
            )
        )
    return FormalSeries(a, order, "q") + FormalSeries.variable(order, "q")


def theta(source: Union[RootedBipartiteGraph, FormalSeries], order: int) -> FormalSeries:
    """
    Theta series Θ(q) = q + (1−q)/(1+q)·f(q/(1+q)²), computed both by substitution and by
    the closed coefficient sum a_r = Σ_k (−1)^{r−k}·2r/(r+k)·C(r+k, r−k)·c_k.

    :param source: a graph, or its Poincaré series known to at least ``order``.
    :raises ConsistencyError: if the two computations disagree.
    """
    f = poincare(source, order) if isinstance(source, RootedBipartiteGraph) else source
    if f.order < order:
        raise ValueError(f"Poincaré series known to order {f.order} < {order}")
    substituted = _theta_by_substitution(f, order)
    summed = _theta_by_coefficients(f, order)
    if substituted != summed:
        raise ConsistencyError("Theta series routes disagree")
    return substituted


def t_series(source: Union[RootedBipartiteGraph, FormalSeries], order: int) -> FormalSeries:
    """
    T(q) = (Θ(q) − q)/(1 − q).
    """
    th = theta(source, order)
    q = FormalSeries.variable(order, "q")
    return FormalSeries(((th - q) / (1 - q)).coefficients, order, "q")


def parse_xi(text: str) -> Tuple[List[Tuple[int, bool]], List[Tuple[int, bool]]]:
    """
    Parses "8:3,6+" into numerator and denominator factors (exponent, plus sign).
    """
    if text.count(":") != 1:
        raise ValueError(f"Cyclotomic form must contain one ':', got {text!r}")

    def factors(part: str) -> List[Tuple[int, bool]]:
        result = []
        for token in filter(None, (t.strip() for t in part.split(","))):
            match = re.fullmatch(r"(\d+)(\+?)", token)
            if not match or int(match.group(1)) < 1:
                raise ValueError(f"Malformed cyclotomic factor {token!r}")
            result.append((int(match.group(1)), bool(match.group(2))))
        return result

    numerator, denominator = text.split(":")
    return factors(numerator), factors(denominator)


def xi(
    numerator: Sequence[Tuple[int, bool]],
    denominator: Sequence[Tuple[int, bool]],
    order: int,
    divide_by: int = 0,
) -> FormalSeries:
    """
    Π(1 ± q^n)/Π(1 ± q^m), '+' factors being 1 + q^n, further divided by (1 − q^divide_by)
    when ``divide_by`` is 1 or 2.
    """
    q = FormalSeries.variable(order, "q")

    def factor(n: int, plus: bool) -> FormalSeries:
        power = q**n
        return 1 + power if plus else 1 - power

    result = FormalSeries.constant(1, order, "q")
    for n, plus in numerator:
        result = result * factor(n, plus)
    for n, plus in denominator:
        result = result / factor(n, plus)
    if divide_by:
        result = result / factor(divide_by, False)
    return result


def xi_text(text: str, order: int, divide_by: int = 0) -> FormalSeries:
    numerator, denominator = parse_xi(text)
    return xi(numerator, denominator, order, divide_by)


def t_formula(family: str, n: int = 0) -> Tuple[str, int]:
    """
    Closed form of the T series of a catalog graph as (cyclotomic text, divide_by).
    """
    _check_family(family, n)
    if family == "A":
        return f"{n}:{n + 1}", 0
    if family == "D":
        return f"{n - 2}+:{n - 1}+", 0
    if family == "Atilde":
        return f"{n}+:{n}", 1
    if family == "Dtilde":
        return f"{n - 1}+:{n - 2}", 2
    return {
        "E6": ("8:3,6+", 0),
        "E7": ("12:4,9+", 0),
        "E8": ("5+,9+:15+", 0),
        "E6tilde": ("6+:3,4", 0),
        "E7tilde": ("9+:4,6", 0),
        "E8tilde": ("15+:6,10", 0),
    }[family]


def _check_family(family: str, n: int) -> None:
    minimum = {"A": 2, "D": 3, "Atilde": 1, "Dtilde": 4}
    if family not in FAMILIES:
        raise ValueError(f"Unknown family {family!r}, expected one of {', '.join(FAMILIES)}")
    if family in minimum and n < minimum[family]:
        raise ValueError(f"{family} requires n ≥ {minimum[family]}, got {n}")


def _path(vertices: Sequence[str]) -> List[Tuple[str, str, int]]:
    return [(u, v, 1) for u, v in zip(vertices, vertices[1:])]


@lru_cache(maxsize=None)
def ade(family: str, n: int = 0) -> RootedBipartiteGraph:
    """
    Catalog graph of the given family, rooted at its distinguished vertex.

    :param family: one of :data:`FAMILIES`.
    :param n: index for the series families A (n ≥ 2), D (n ≥ 3), Atilde (2n vertices,
        n ≥ 1) and Dtilde (n ≥ 4); ignored for the exceptional graphs.
    """
    _check_family(family, n)
    if family == "A":
        vertices = [f"v{i}" for i in range(1, n + 1)]
        edges = _path(vertices)
        return RootedBipartiteGraph.from_edges(edges, "v1", f"A{n}")
    if family == "D":
        vertices = [f"v{i}" for i in range(1, n)]
        edges = _path(vertices) + [(f"v{n - 2}", "leaf", 1)]
        return RootedBipartiteGraph.from_edges(edges, "v1", f"D{n}")
    if family == "Atilde":
        if n == 1:
            return RootedBipartiteGraph.from_edges([("v1", "v2", 2)], "v1", "Atilde2")
        vertices = [f"v{i}" for i in range(1, 2 * n + 1)]
        edges = _path(vertices) + [(vertices[-1], vertices[0], 1)]
        return RootedBipartiteGraph.from_edges(edges, "v1", f"Atilde{2 * n}")
    if family == "Dtilde":
        chain = [f"c{i}" for i in range(1, n - 2)]
        edges = _path(chain) + [
            ("root", chain[0], 1),
            ("x", chain[0], 1),
            ("y", chain[-1], 1),
            ("z", chain[-1], 1),
        ]
        return RootedBipartiteGraph.from_edges(edges, "root", f"Dtilde{n}")
    if family in ("E6", "E7", "E8"):
        length = {"E6": 5, "E7": 6, "E8": 7}[family]
        branch = {"E6": 3, "E7": 4, "E8": 5}[family]
        vertices = [f"v{i}" for i in range(1, length + 1)]
        edges = _path(vertices) + [(f"v{branch}", "leaf", 1)]
        return RootedBipartiteGraph.from_edges(edges, "v1", family)
    if family == "E6tilde":
        edges = [("v1", "v2", 1), ("v2", "c", 1), ("c", "x1", 1), ("x1", "x2", 1), ("c", "y1", 1), ("y1", "y2", 1)]
        return RootedBipartiteGraph.from_edges(edges, "v1", family)
    if family == "E7tilde":
        vertices = [f"v{i}" for i in range(1, 8)]
        edges = _path(vertices) + [("v4", "leaf", 1)]
        return RootedBipartiteGraph.from_edges(edges, "v1", family)
    vertices = [f"v{i}" for i in range(1, 9)]
    edges = _path(vertices) + [("v6", "leaf", 1)]
    return RootedBipartiteGraph.from_edges(edges, "v1", family)


def catalog(max_n: int = 8) -> List[Tuple[str, int, RootedBipartiteGraph]]:
    """
    Every catalog graph, series families up to ``max_n``.
    """
    graphs = []
    for family, start, stop in (("A", 2, max_n), ("D", 3, max_n), ("Atilde", 1, max_n // 2), ("Dtilde", 4, max_n)):
        for n in range(start, stop + 1):
            graphs.append((family, n, ade(family, n)))
    for family in ("E6", "E7", "E8", "E6tilde", "E7tilde", "E8tilde"):
        graphs.append((family, 0, ade(family)))
    return graphs


@dataclass(frozen=True)
class CircularMeasure:
    """
    Atoms on the unit circle, or on the real line for eigenvalues above 4.
    """

    atoms: Tuple[Tuple[complex, float], ...]
    experimental: bool = False

    @property
    def mass(self) -> float:
        return math.fsum(w for _, w in self.atoms)

    def moment(self, j: int) -> complex:
        return sum((w * z**j for z, w in self.atoms), 0j)

    def density_at(self, z: complex) -> float:
        return math.fsum(w for u, w in self.atoms if abs(u - z) <= EIGENVALUE_TOLERANCE)


def circular_measure(g: RootedBipartiteGraph) -> CircularMeasure:
    """
    Pullback of the spectral measure by q ↦ (q + q^{−1})²: each atom x spreads a quarter
    of its weight on q, q^{−1}, −q, −q^{−1}.
    """
    atoms: List[List] = []
    experimental = False
    for x, weight in spectral_measure(g).atoms:
        if x <= 4 + EIGENVALUE_TOLERANCE:
            angle = math.acos(min(math.sqrt(x) / 2, 1.0))
            points = [complex(math.cos(a), math.sin(a)) for a in (angle, -angle, math.pi - angle, math.pi + angle)]
        else:
            experimental = True
            q = (math.sqrt(x) + math.sqrt(x - 4)) / 2
            points = [complex(q), complex(1 / q), complex(-q), complex(-1 / q)]
        for point in points:
            for atom in atoms:
                if abs(atom[0] - point) <= EIGENVALUE_TOLERANCE:
                    atom[1] += weight / 4
                    break
            else:
                atoms.append([point, weight / 4])
    if experimental:
        logger.info("circular measure of %s has real atoms, norm above 2", g.name or "graph")
    return CircularMeasure(tuple((z, w) for z, w in atoms), experimental)


def _chebyshev(k: int) -> List[int]:
    """
    Coefficients of the Chebyshev polynomial T_k, lowest degree first.
    """
    previous, current = [1], [0, 1]
    if k == 0:
        return previous
    for _ in range(k - 1):
        shifted = [0] + [2 * c for c in current]
        padded = previous + [0] * (len(shifted) - len(previous))
        previous, current = current, [a - b for a, b in zip(shifted, padded)]
    return current


def circular_moments(g: RootedBipartiteGraph, K: int) -> List[Fraction]:
    """
    Exact even moments ∫u^{2k} dε, k = 0..K, as ∫T_k(x/2 − 1) dμ(x).
    """
    c = poincare(g, K).coefficients
    moments = []
    for k in range(K + 1):
        # T_k(x/2 − 1) expanded in powers of x
        x_poly = [Fraction(0)] * (k + 1)
        base = [Fraction(-1), Fraction(1, 2)]
        power = [Fraction(1)]
        for degree, coefficient in enumerate(_chebyshev(k)):
            if degree:
                power = [
                    sum((power[i] * base[j - i] for i in range(len(power)) if 0 <= j - i < 2), Fraction(0))
                    for j in range(len(power) + 1)
                ]
            for i, p in enumerate(power):
                x_poly[i] += coefficient * p
        moments.append(sum((a * b for a, b in zip(x_poly, c)), Fraction(0)))
    return moments


def stieltjes_series(moments: Sequence[Fraction]) -> FormalSeries:
    """
    2∫(1 − qu²)^{−1} dε as the series 2Σ_k q^k ∫u^{2k} dε.
    """
    return FormalSeries([2 * m for m in moments], len(moments) - 1, "q")


@dataclass(frozen=True)
class CyclotomicTerm:
    """
    coefficient · (density against d_level), or against d'_level when primed. The density
    is Re(1 − q^{2·wave}), or 1 when wave is 0.
    """

    coefficient: Fraction
    level: int
    primed: bool = False
    wave: int = 0

    def moment(self, j: int) -> Fraction:
        """
        ∫u^j of the term.
        """
        value = _root_moment(self.level, self.primed, j)
        if self.wave:
            shift = 2 * self.wave
            value -= Fraction(1, 2) * (
                _root_moment(self.level, self.primed, j + shift) + _root_moment(self.level, self.primed, j - shift)
            )
        return self.coefficient * value


def _root_moment(level: int, primed: bool, j: int) -> Fraction:
    """
    ∫u^j dd_level, where d_n is uniform on the 2n-th roots of unity and d'_n = 2d_{2n} − d_n.
    """
    if primed:
        return 2 * _root_moment(2 * level, False, j) - _root_moment(level, False, j)
    return Fraction(int(j % (2 * level) == 0))


def circular_formula(family: str, n: int = 0) -> List[CyclotomicTerm]:
    """
    Closed form of the circular measure of a catalog graph as signed root-of-unity terms.
    """
    _check_family(family, n)
    half = Fraction(1, 2)
    if family == "A":
        return [CyclotomicTerm(Fraction(1), n + 1, wave=1)]
    if family == "D":
        return [CyclotomicTerm(Fraction(1), n - 1, True, wave=1)]
    if family == "Atilde":
        return [CyclotomicTerm(Fraction(1), n)]
    if family == "Dtilde":
        return [CyclotomicTerm(half, n - 2), CyclotomicTerm(half, 1, True)]
    if family == "E6":
        return [
            CyclotomicTerm(Fraction(1), 12, wave=1),
            CyclotomicTerm(half, 12),
            CyclotomicTerm(-half, 6),
            CyclotomicTerm(-half, 4),
            CyclotomicTerm(half, 3),
        ]
    if family == "E7":
        return [CyclotomicTerm(Fraction(1), 9, True, wave=2), CyclotomicTerm(half, 1, True), CyclotomicTerm(-half, 3, True)]
    if family == "E8":
        return [
            CyclotomicTerm(Fraction(1), 15, True, wave=1),
            CyclotomicTerm(Fraction(1), 15, True, wave=3),
            CyclotomicTerm(-half, 5, True),
            CyclotomicTerm(-half, 3, True),
        ]
    m = {"E6tilde": 3, "E7tilde": 4, "E8tilde": 5}[family]
    return [CyclotomicTerm(half, m), CyclotomicTerm(half, 3), CyclotomicTerm(half, 2), CyclotomicTerm(-half, 1)]


def formula_moments(terms: Sequence[CyclotomicTerm], K: int) -> List[Fraction]:
    """
    Even moments ∫u^{2k}, k = 0..K, of a signed combination of terms.
    """
    return [sum((t.moment(2 * k) for t in terms), Fraction(0)) for k in range(K + 1)]


@dataclass(frozen=True)
class InclusionData:
    """
    Inclusion A ⊂ B given by the weight vector a of A and the inclusion matrix m.
    """

    a: Tuple[int, ...]
    m: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if not self.a or any(x <= 0 for x in self.a):
            raise ValueError("Weights of A must be positive integers")
        if len(self.m) != len(self.a) or not self.m[0] or any(len(row) != len(self.m[0]) for row in self.m):
            raise ValueError("Inclusion matrix must have one row per weight and equal row lengths")

    @classmethod
    def of(cls, a: Sequence[int], m: Sequence[Sequence[int]]) -> "InclusionData":
        return cls(tuple(a), tuple(tuple(row) for row in m))

    @property
    def b(self) -> Tuple[int, ...]:
        return tuple(sum(self.a[i] * self.m[i][j] for i in range(len(self.a))) for j in range(len(self.m[0])))

    @property
    def r(self) -> Fraction:
        return Fraction(sum(x * x for x in self.b), sum(x * x for x in self.a))

    @property
    def mb(self) -> Tuple[int, ...]:
        b = self.b
        return tuple(sum(x * y for x, y in zip(row, b)) for row in self.m)

    def transpose(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(zip(*self.m))


@dataclass(frozen=True)
class MarkovReport:
    a: Tuple[int, ...]
    b: Tuple[int, ...]
    r: Fraction
    markov: bool
    integral: bool


def markov_check(data: InclusionData) -> MarkovReport:
    """
    Checks m·b = r·a; a Markov inclusion also has r integral.
    """
    r = data.r
    markov = all(x == r * y for x, y in zip(data.mb, data.a))
    report = MarkovReport(data.a, data.b, r, markov, r.denominator == 1)
    if not markov:
        logger.warning("inclusion with a=%s is not Markov, r=%s", data.a, r)
    return report


def basic_construction(data: InclusionData) -> InclusionData:
    """
    Reflected inclusion B ⊂ C: matrix mᵗ, weights b, new weights m·b.
    """
    return InclusionData(data.b, data.transpose())


def inclusion_graph(data: InclusionData, root: int = 0) -> RootedBipartiteGraph:
    """
    Bratteli diagram of the inclusion, rooted at the given vertex of A.
    """
    layer_a = [f"a{i + 1}" for i in range(len(data.a))]
    layer_b = [f"b{j + 1}" for j in range(len(data.m[0]))]
    return RootedBipartiteGraph(layer_a, layer_b, data.m, layer_a[root])


@dataclass(frozen=True)
class TowerLevel:
    data: InclusionData
    norm: float
    expected: float

    @property
    def consistent(self) -> bool:
        return abs(self.norm - self.expected) <= 1e-9 * max(1.0, self.expected)


def jones_tower(data: InclusionData, depth: int) -> List[TowerLevel]:
    """
    Iterates the basic construction, checking ‖m mᵗ m …‖ = r^{ℓ/2} for the product of the
    first ℓ inclusion matrices.
    """
    if depth < 1:
        raise ValueError("Depth must be positive")
    r = float(markov_check(data).r)
    levels = []
    product = np.eye(len(data.a))
    current = data
    for length in range(1, depth + 1):
        product = product @ np.array(current.m, dtype=float)
        norm = float(np.linalg.svd(product, compute_uv=False)[0])
        levels.append(TowerLevel(current, norm, r ** (length / 2)))
        current = basic_construction(current)
    return levels
