"""
Planar tangles acting on spin tensors and on the planar algebra of a bipartite graph.

A tangle is stored combinatorially: the number of marked points of its output disc and of
each input box, the strings pairing those points, a count of closed circles, and optionally
where the input boxes sit so that planarity can be checked. Points of a rectangle are
numbered clockwise from the top left: top j is point j, bottom j (left to right) is point
2k+1−j.
"""
import json
import logging
import math
from dataclasses import dataclass
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from opalg.exceptions import MismatchError, NonPlanarTangleError, SizeGuardError
from opalg.graphinv import InclusionData, RootedBipartiteGraph, markov_check
from opalg.partitions import TwoRowPartition
from opalg.tl import DiagramElement

logger = logging.getLogger(__name__)

Point = Tuple[int, int]
String = Tuple[Point, Point]

NAMED_TANGLES = ("identity", "multiplication", "inclusion", "expectation", "jones", "trace", "rotation", "shift")
GRAPH_TANGLES = ("identity", "multiplication", "inclusion", "expectation", "jones", "shift")

EINSUM_LABELS = 52
PERRON_TOLERANCE = 1e-12
EIGENVECTOR_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Tangle:
    """
    :param output: number of marked points on the output disc (box 0).
    :param inputs: number of marked points on each input box 1..r.
    :param strings: pairs of points (box, position), positions counted from 1.
    :param circles: number of closed loops.
    :param placements: (slot, box) pairs, box b sitting between output points slot and
        slot+1; boxes sharing a slot are read in the listed order. When None, planarity is
        not checked.
    :param name: catalog name, empty for glued tangles.
    :param k: catalog parameter.
    """

    output: int
    inputs: Tuple[int, ...]
    strings: Tuple[String, ...]
    circles: int = 0
    placements: Optional[Tuple[Tuple[int, int], ...]] = None
    name: str = ""
    k: int = 0

    def __post_init__(self):
        if self.circles < 0:
            raise ValueError("Circle count must not be negative")
        expected = {(0, p) for p in range(1, self.output + 1)}
        for box, count in enumerate(self.inputs, start=1):
            expected |= {(box, p) for p in range(1, count + 1)}
        seen = [point for string in self.strings for point in string]
        if len(seen) != len(set(seen)) or set(seen) != expected:
            raise ValueError("Strings must pair every marked point exactly once")
        if self.placements is not None:
            _check_planar(self)

    @property
    def arity(self) -> int:
        return len(self.inputs)

    def partner(self) -> Dict[Point, Point]:
        result = {}
        for a, b in self.strings:
            result[a] = b
            result[b] = a
        return result


def reading_word(t: Tangle) -> List[Point]:
    """
    Linearized boundary: for each slot s, the boxes placed at s with their points read
    backwards, then output point s+1.
    """
    slots: Dict[int, List[int]] = {}
    for slot, box in t.placements or ():
        slots.setdefault(slot, []).append(box)
    word: List[Point] = []
    for slot in range(t.output + 1):
        for box in slots.get(slot, ()):
            word.extend((box, p) for p in range(t.inputs[box - 1], 0, -1))
        if slot < t.output:
            word.append((0, slot + 1))
    return word


def _check_planar(t: Tangle) -> None:
    boxes = [box for _, box in t.placements]
    if sorted(boxes) != list(range(1, t.arity + 1)):
        raise ValueError("Placements must list every input box once")
    if any(not 0 <= slot <= t.output for slot, _ in t.placements):
        raise ValueError(f"Slots must lie in 0..{t.output}")
    partner = t.partner()
    stack: List[Point] = []
    for point in reading_word(t):
        if stack and stack[-1] == partner[point]:
            stack.pop()
        else:
            stack.append(point)
    if stack:
        raise NonPlanarTangleError(f"Strings of tangle {t.name or t.strings} cross")


def named_tangle(name: str, k: int) -> Tangle:
    """
    One of the generating tangles, acting on rectangles with k points per side.

    - identity, rotation, trace: one 2k-point input.
    - multiplication: two 2k-point inputs, the first stacked on top.
    - inclusion: 2k → 2k+2, a through string added on the right.
    - expectation: 2k+2 → 2k, the rightmost top and bottom points capped together.
    - jones: no input, 2k points, cap and cup on the two rightmost strands (k ≥ 2).
    - shift: 2k → 2k+4, two through strings added on the left.

    :raises ValueError: on an unknown name or an invalid k.
    """
    if name not in NAMED_TANGLES:
        raise ValueError(f"Unknown tangle {name!r}, expected one of {', '.join(NAMED_TANGLES)}")
    minimum = 2 if name == "jones" else 1
    if k < minimum:
        raise ValueError(f"Tangle {name} requires k ≥ {minimum}, got {k}")
    n = 2 * k
    strings: List[String] = []
    if name == "identity":
        strings = [((1, p), (0, p)) for p in range(1, n + 1)]
        return Tangle(n, (n,), tuple(strings), placements=((0, 1),), name=name, k=k)
    if name == "multiplication":
        for j in range(1, k + 1):
            strings.append(((1, j), (0, j)))
            strings.append(((1, n + 1 - j), (2, j)))
            strings.append(((2, n + 1 - j), (0, n + 1 - j)))
        return Tangle(n, (n, n), tuple(strings), placements=((0, 2), (0, 1)), name=name, k=k)
    if name == "inclusion":
        for j in range(1, k + 1):
            strings.append(((1, j), (0, j)))
            strings.append(((1, n + 1 - j), (0, n + 3 - j)))
        strings.append(((0, k + 1), (0, k + 2)))
        return Tangle(n + 2, (n,), tuple(strings), placements=((0, 1),), name=name, k=k)
    if name == "expectation":
        strings.append(((1, k + 1), (1, k + 2)))
        for j in range(1, k + 1):
            strings.append(((1, j), (0, j)))
            strings.append(((1, n + 3 - j), (0, n + 1 - j)))
        return Tangle(n, (n + 2,), tuple(strings), placements=((0, 1),), name=name, k=k)
    if name == "jones":
        strings = [((0, j), (0, n + 1 - j)) for j in range(1, k - 1)]
        strings += [((0, k - 1), (0, k)), ((0, k + 1), (0, k + 2))]
        return Tangle(n, (), tuple(strings), placements=(), name=name, k=k)
    if name == "trace":
        strings = [((1, j), (1, n + 1 - j)) for j in range(1, k + 1)]
        return Tangle(0, (n,), tuple(strings), placements=((0, 1),), name=name, k=k)
    if name == "rotation":
        strings = [((0, p), (1, (p + 1) % n + 1)) for p in range(1, n + 1)]
        return Tangle(n, (n,), tuple(strings), placements=((n - 2, 1),), name=name, k=k)
    strings = [((0, 1), (0, n + 4)), ((0, 2), (0, n + 3))]
    for j in range(1, k + 1):
        strings.append(((1, j), (0, j + 2)))
        strings.append(((1, n + 1 - j), (0, n + 3 - j)))
    return Tangle(n + 4, (n,), tuple(strings), placements=((2, 1),), name=name, k=k)


def glue(outer: Tangle, inner: Tangle, box: int) -> Tangle:
    """
    Inserts ``inner`` into input box ``box`` (1-based) of ``outer``.

    Strings meeting at the glued boundary are chained; chains that close up become circles.
    The inputs of the result are those of outer before ``box``, then those of inner, then
    the remaining ones of outer.

    :raises MismatchError: if inner's output does not fit the box.
    """
    if not 1 <= box <= outer.arity:
        raise ValueError(f"Box must lie in 1..{outer.arity}, got {box}")
    if inner.output != outer.inputs[box - 1]:
        raise MismatchError(f"Inner output has {inner.output} points, box {box} has {outer.inputs[box - 1]}")
    shift = inner.arity - 1

    def from_outer(point: Point) -> Hashable:
        b, p = point
        if b == box:
            return ("glued", p)
        return ("point", b + shift if b > box else b, p)

    def from_inner(point: Point) -> Hashable:
        b, p = point
        if b == 0:
            return ("glued", p)
        return ("point", box - 1 + b, p)

    graph = nx.MultiGraph()
    for a, b in outer.strings:
        graph.add_edge(from_outer(a), from_outer(b))
    for a, b in inner.strings:
        graph.add_edge(from_inner(a), from_inner(b))
    strings: List[String] = []
    circles = outer.circles + inner.circles
    for component in nx.connected_components(graph):
        ends = sorted(v for v in component if v[0] == "point")
        if not ends:
            circles += 1
            continue
        (_, b1, p1), (_, b2, p2) = ends
        strings.append(((b1, p1), (b2, p2)))
    inputs = outer.inputs[: box - 1] + inner.inputs + outer.inputs[box:]
    return Tangle(outer.output, inputs, tuple(sorted(strings)), circles)


class SpinTensor:
    """
    A tensor with one index in 1..N per marked point.

    :param n: alphabet size N.
    :param data: array of shape (N,)*points.
    """

    def __init__(self, n: int, data: np.ndarray):
        if n < 1:
            raise ValueError("N must be positive")
        data = np.asarray(data, dtype=complex)
        if any(d != n for d in data.shape):
            raise MismatchError(f"Tensor shape {data.shape} does not match N={n}")
        self.n = n
        self.data = data

    @property
    def points(self) -> int:
        return self.data.ndim

    @classmethod
    def zeros(cls, n: int, points: int) -> "SpinTensor":
        return cls(n, np.zeros((n,) * points, dtype=complex))

    @classmethod
    def basis(cls, n: int, labels: Sequence[int]) -> "SpinTensor":
        """
        The basis tensor with value 1 at the given point labels (1-based).
        """
        if any(not 1 <= x <= n for x in labels):
            raise ValueError(f"Labels must lie in 1..{n}")
        tensor = cls.zeros(n, len(labels))
        tensor.data[tuple(x - 1 for x in labels)] = 1
        return tensor

    @classmethod
    def doubled(cls, n: int, indices: Sequence[int]) -> "SpinTensor":
        """
        e_{i_1…i_k} with each index written on two consecutive points.
        """
        return cls.basis(n, [i for i in indices for _ in range(2)])

    @classmethod
    def from_diagram(cls, diagram: TwoRowPartition, n: int) -> "SpinTensor":
        """
        The diagram as a tensor: 1 on labelings constant along every string.
        """
        points = diagram.upper + diagram.lower
        data = np.ones((n,) * points, dtype=complex)
        for block in diagram.partition.blocks:
            for a, b in zip(block, block[1:]):
                shape = [1] * points
                shape[a - 1] = shape[b - 1] = n
                data = data * np.eye(n).reshape(shape)
        return cls(n, data)

    @classmethod
    def from_element(cls, x: DiagramElement, n: int) -> "SpinTensor":
        if x.is_fuss_catalan:
            raise ValueError("Only Temperley-Lieb elements have a spin model")
        total = cls.zeros(n, 2 * x.k)
        for diagram, coefficient in x.terms.items():
            total = total + cls.from_diagram(diagram, n) * complex(coefficient)
        return total

    @classmethod
    def from_matrix(cls, n: int, matrix: np.ndarray) -> "SpinTensor":
        """
        Inverse of :meth:`as_matrix`.
        """
        if n < 2:
            raise ValueError("Matrix form is ambiguous for N < 2")
        matrix = np.asarray(matrix, dtype=complex)
        k = 0
        while n**k < matrix.shape[0]:
            k += 1
        if matrix.shape != (n**k, n**k):
            raise MismatchError(f"Matrix of shape {matrix.shape} is not N^k × N^k")
        data = matrix.reshape((n,) * (2 * k))
        return cls(n, data.transpose(list(range(k)) + list(range(2 * k - 1, k - 1, -1))))

    def as_matrix(self) -> np.ndarray:
        """
        Rows indexed by the top labels, columns by the bottom labels read left to right.
        """
        if self.points % 2:
            raise ValueError("Matrix form requires an even number of points")
        k = self.points // 2
        axes = list(range(k)) + list(range(2 * k - 1, k - 1, -1))
        return self.data.transpose(axes).reshape(self.n**k, self.n**k)

    def _check(self, other: "SpinTensor") -> None:
        if self.n != other.n or self.points != other.points:
            raise MismatchError("Tensors differ in N or in the number of points")

    def __add__(self, other: "SpinTensor") -> "SpinTensor":
        self._check(other)
        return SpinTensor(self.n, self.data + other.data)

    def __sub__(self, other: "SpinTensor") -> "SpinTensor":
        self._check(other)
        return SpinTensor(self.n, self.data - other.data)

    def __mul__(self, scalar: complex) -> "SpinTensor":
        return SpinTensor(self.n, self.data * scalar)

    __rmul__ = __mul__

    def allclose(self, other: "SpinTensor", tol: float = 1e-9) -> bool:
        self._check(other)
        return bool(np.allclose(self.data, other.data, rtol=0, atol=tol))

    def to_json(self) -> str:
        entries = {
            ",".join(str(i + 1) for i in index): [float(value.real), float(value.imag)]
            for index, value in np.ndenumerate(self.data)
            if value != 0
        }
        return json.dumps({"N": self.n, "points": self.points, "entries": entries})

    @classmethod
    def from_json(cls, text: str) -> "SpinTensor":
        data = json.loads(text)
        tensor = cls.zeros(data["N"], data["points"])
        for key, value in data["entries"].items():
            index = tuple(int(i) - 1 for i in key.split(",")) if key else ()
            re, im = value if isinstance(value, list) else (value, 0)
            tensor.data[index] = complex(re, im)
        return tensor

    def __repr__(self) -> str:
        return f"SpinTensor(N={self.n}, points={self.points})"


def act_spin(t: Tangle, inputs: Sequence[SpinTensor], n: Optional[int] = None) -> SpinTensor:
    """
    Applies a tangle to spin tensors: labels are summed along internal strings, forced
    equal along strings with both ends on the output, and each circle contributes N.

    :param n: the alphabet size, needed only when the tangle has no input.
    :raises MismatchError: if the inputs do not fit the boxes or disagree on N.
    :raises SizeGuardError: if the contraction needs more labels than einsum provides.
    """
    if len(inputs) != t.arity:
        raise MismatchError(f"Tangle takes {t.arity} inputs, got {len(inputs)}")
    sizes = {x.n for x in inputs} | ({n} if n is not None else set())
    if len(sizes) != 1:
        raise MismatchError("Inputs must share one alphabet size N")
    size = sizes.pop()
    for box, (x, count) in enumerate(zip(inputs, t.inputs), start=1):
        if x.points != count:
            raise MismatchError(f"Box {box} has {count} points, input has {x.points}")
    labels: Dict[Point, int] = {}
    operands: List = []
    next_label = 0
    for a, b in t.strings:
        if a[0] == 0 and b[0] == 0:
            labels[a], labels[b] = next_label, next_label + 1
            operands += [np.eye(size), [next_label, next_label + 1]]
            next_label += 2
        else:
            labels[a] = labels[b] = next_label
            next_label += 1
    if next_label > EINSUM_LABELS:
        raise SizeGuardError("einsum_labels", next_label, EINSUM_LABELS)
    for box, x in enumerate(inputs, start=1):
        operands += [x.data, [labels[(box, p)] for p in range(1, x.points + 1)]]
    output = [labels[(0, p)] for p in range(1, t.output + 1)]
    data = np.asarray(np.einsum(*operands, output)) if operands else np.array(1, dtype=complex)
    return SpinTensor(size, data * size**t.circles)


def multiply(a: SpinTensor, b: SpinTensor) -> SpinTensor:
    """
    ab, a stacked on top of b; in matrix form the matrix product.
    """
    if a.points % 2:
        raise ValueError("Multiplication requires an even number of points")
    return act_spin(named_tangle("multiplication", a.points // 2), [a, b])


def conditional_expectation(x: SpinTensor) -> SpinTensor:
    """
    N^{−1}·U(x), the normalized expectation onto one strand fewer.
    """
    if x.points < 4 or x.points % 2:
        raise ValueError("Expectation requires an even number of points, at least 4")
    return act_spin(named_tangle("expectation", x.points // 2 - 1), [x]) * (1 / x.n)


def jones_projection(n: int, k: int, i: int) -> SpinTensor:
    """
    e_i = N^{−1}·I^{k−i−1}(E_{i+1}(1)) on 2k points.
    """
    if not 1 <= i <= k - 1:
        raise ValueError(f"Index must be in 1..{k - 1}, got {i}")
    x = act_spin(named_tangle("jones", i + 1), [], n) * (1 / n)
    for level in range(i + 1, k):
        x = act_spin(named_tangle("inclusion", level), [x])
    return x


Vertex = Tuple[str, int]
Edge = Tuple[Vertex, Vertex, int]
Path = Tuple[Edge, ...]
Loop = Tuple[Vertex, Path, Path]


def _reverse(edge: Edge) -> Edge:
    u, v, copy = edge
    return (v, u, copy)


class GraphPlanarAlgebra:
    """
    Loop spaces of a bipartite graph with spin factors μ(e) = √(η(end)/η(start)).

    P_k has one basis vector (x / y) per pair of k-step paths x, y with a common start in
    layer A and a common end.

    :param graph: the rooted bipartite graph.
    :param eta: positive weight per vertex, keyed ("a", i) and ("b", j).
    :param gamma: eigenvalue with A·η = γ·η for the adjacency matrix A.
    :raises ValueError: if η is not a γ-eigenvector within 1e−9.
    """

    def __init__(self, graph: RootedBipartiteGraph, eta: Mapping[Vertex, float], gamma: float):
        self.graph = graph
        self.eta = dict(eta)
        self.gamma = float(gamma)
        self._logger = logger.getChild(type(self).__name__)
        vector = np.array([self.eta[v] for v in self.vertices])
        if np.any(vector <= 0):
            raise ValueError("Weights must be positive")
        residual = np.linalg.norm(graph.adjacency() @ vector - self.gamma * vector)
        if residual > EIGENVECTOR_TOLERANCE * max(1.0, float(np.linalg.norm(vector))):
            raise ValueError(f"Weights are not a {self.gamma}-eigenvector, residual {residual:.3g}")
        self._paths: Dict[Tuple[Vertex, int], List[Path]] = {}

    @classmethod
    def perron(cls, graph: RootedBipartiteGraph) -> "GraphPlanarAlgebra":
        eta, gamma = perron_weights(graph)
        return cls(graph, eta, gamma)

    @classmethod
    def from_inclusion(cls, data: InclusionData) -> "GraphPlanarAlgebra":
        graph = RootedBipartiteGraph(
            [f"a{i + 1}" for i in range(len(data.a))], [f"b{j + 1}" for j in range(len(data.m[0]))], data.m, "a1"
        )
        eta, gamma = inclusion_weights(data)
        return cls(graph, eta, gamma)

    @property
    def vertices(self) -> List[Vertex]:
        return [("a", i) for i in range(len(self.graph.layer_a))] + [("b", j) for j in range(len(self.graph.layer_b))]

    def edges_from(self, v: Vertex) -> List[Edge]:
        side, i = v
        m = self.graph.m
        if side == "a":
            return [(v, ("b", j), c) for j in range(len(m[i])) for c in range(m[i][j])]
        return [(v, ("a", a), c) for a in range(len(m)) for c in range(m[a][i])]

    def mu(self, edge: Edge) -> float:
        start, end, _ = edge
        return math.sqrt(self.eta[end] / self.eta[start])

    def paths(self, start: Vertex, length: int) -> List[Path]:
        key = (start, length)
        if key not in self._paths:
            if length == 0:
                found: List[Path] = [()]
            else:
                found = [
                    path + (edge,)
                    for path in self.paths(start, length - 1)
                    for edge in self.edges_from(path[-1][1] if path else start)
                ]
            self._paths[key] = found
        return self._paths[key]

    def loops(self, k: int) -> List[Loop]:
        result = []
        for i in range(len(self.graph.layer_a)):
            start = ("a", i)
            by_end: Dict[Vertex, List[Path]] = {}
            for path in self.paths(start, k):
                by_end.setdefault(_end(start, path), []).append(path)
            for group in by_end.values():
                result.extend((start, x, y) for x in group for y in group)
        return result

    def dimension(self, k: int) -> int:
        return len(self.loops(k))

    def element(self, k: int, coefficients: Mapping[Loop, complex]) -> "GraphLoopElement":
        return GraphLoopElement(self, k, coefficients)

    def unit(self, k: int) -> "GraphLoopElement":
        return self.element(
            k, {(("a", i), x, x): 1 for i in range(len(self.graph.layer_a)) for x in self.paths(("a", i), k)}
        )


def _end(start: Vertex, path: Path) -> Vertex:
    return path[-1][1] if path else start


class GraphLoopElement:
    """
    A complex combination of loops (x / y) of P_k.

    :raises ValueError: if a loop is not made of two k-step paths of the graph with common
        endpoints.
    """

    def __init__(self, algebra: GraphPlanarAlgebra, k: int, coefficients: Mapping[Loop, complex]):
        if k < 0:
            raise ValueError("k must not be negative")
        self.algebra = algebra
        self.k = k
        self.coefficients: Dict[Loop, complex] = {}
        for loop, value in coefficients.items():
            self._check_loop(loop)
            if value != 0:
                self.coefficients[loop] = self.coefficients.get(loop, 0) + complex(value)

    def _check_loop(self, loop: Loop) -> None:
        start, x, y = loop
        if start[0] != "a" or len(x) != self.k or len(y) != self.k:
            raise ValueError(f"Loop {loop} is not based in layer A with two {self.k}-step paths")
        for path in (x, y):
            vertex = start
            for edge in path:
                if edge[0] != vertex or edge not in self.algebra.edges_from(vertex):
                    raise ValueError(f"Path {path} is not a path of the graph")
                vertex = edge[1]
        if _end(start, x) != _end(start, y):
            raise ValueError(f"Paths of loop {loop} end at different vertices")

    def _check(self, other: "GraphLoopElement") -> None:
        if self.algebra is not other.algebra or self.k != other.k:
            raise MismatchError("Elements live in different loop spaces")

    def _like(self, k: int, coefficients: Mapping[Loop, complex]) -> "GraphLoopElement":
        return GraphLoopElement(self.algebra, k, coefficients)

    def __add__(self, other: "GraphLoopElement") -> "GraphLoopElement":
        self._check(other)
        total = dict(self.coefficients)
        for loop, value in other.coefficients.items():
            total[loop] = total.get(loop, 0) + value
        return self._like(self.k, total)

    def __sub__(self, other: "GraphLoopElement") -> "GraphLoopElement":
        return self + other * -1

    def __mul__(self, scalar: complex) -> "GraphLoopElement":
        return self._like(self.k, {loop: value * scalar for loop, value in self.coefficients.items()})

    __rmul__ = __mul__

    def allclose(self, other: "GraphLoopElement", tol: float = 1e-9) -> bool:
        self._check(other)
        keys = set(self.coefficients) | set(other.coefficients)
        return all(abs(self.coefficients.get(x, 0) - other.coefficients.get(x, 0)) <= tol for x in keys)

    def __repr__(self) -> str:
        return f"GraphLoopElement(k={self.k}, terms={len(self.coefficients)})"


def perron_weights(graph: RootedBipartiteGraph, max_iterations: int = 100_000) -> Tuple[Dict[Vertex, float], float]:
    """
    Perron-Frobenius eigenvector and eigenvalue of the adjacency matrix, by power iteration
    on A + 1 until successive iterates differ by less than 1e−12.
    """
    adjacency = graph.adjacency()
    shifted = adjacency + np.eye(len(adjacency))
    vector = np.ones(len(adjacency)) / math.sqrt(len(adjacency))
    for iteration in range(max_iterations):
        following = shifted @ vector
        following /= np.linalg.norm(following)
        if np.linalg.norm(following - vector) < PERRON_TOLERANCE:
            vector = following
            break
        vector = following
    else:
        logger.warning("power iteration stopped after %d steps without converging", max_iterations)
    gamma = float(vector @ adjacency @ vector)
    size_a = len(graph.layer_a)
    eta = {("a", i): float(vector[i]) for i in range(size_a)}
    eta.update({("b", j): float(vector[size_a + j]) for j in range(len(graph.layer_b))})
    return eta, gamma


def inclusion_weights(data: InclusionData) -> Tuple[Dict[Vertex, float], float]:
    """
    η(a_i) = a_i/√dim A and η(b_j) = b_j/√dim B, with γ = √r.

    :raises ValueError: if the inclusion is not Markov.
    """
    report = markov_check(data)
    if not report.markov:
        raise ValueError("Inclusion weights require a Markov inclusion")
    dim_a = math.sqrt(sum(x * x for x in data.a))
    dim_b = math.sqrt(sum(x * x for x in data.b))
    eta = {("a", i): x / dim_a for i, x in enumerate(data.a)}
    eta.update({("b", j): x / dim_b for j, x in enumerate(data.b)})
    return eta, math.sqrt(report.r)


def act_graph(t: Tangle, inputs: Sequence[GraphLoopElement], algebra: Optional[GraphPlanarAlgebra] = None) -> GraphLoopElement:
    """
    Applies a catalog tangle to loop elements, each circle contributing γ.

    - multiplication: (x/y)(z/w) = δ_{yz}·(x/w).
    - inclusion: (x/y) ↦ Σ_g (xg/yg).
    - expectation: (xg/yh) ↦ δ_{gh}·μ(g)²·(x/y).
    - jones: E_k(1) = Σ_x Σ_{g,h} μ(g)μ(h)·(x h h̄ / x g ḡ).
    - shift: (x/y) ↦ Σ_{a,b} (abx/aby).

    :param algebra: required when the tangle has no input.
    :raises ValueError: for tangles outside the graph catalog.
    :raises MismatchError: if the inputs do not fit the tangle or live in different algebras.
    """
    if t.name not in GRAPH_TANGLES:
        raise ValueError(f"Graph actions are defined for {', '.join(GRAPH_TANGLES)}, got {t.name or 'a glued tangle'}")
    if len(inputs) != t.arity:
        raise MismatchError(f"Tangle takes {t.arity} inputs, got {len(inputs)}")
    algebras = {id(x.algebra): x.algebra for x in inputs}
    if algebra is not None:
        algebras[id(algebra)] = algebra
    if len(algebras) != 1:
        raise MismatchError("Inputs must share one graph algebra")
    alg = next(iter(algebras.values()))
    for box, (x, count) in enumerate(zip(inputs, t.inputs), start=1):
        if 2 * x.k != count:
            raise MismatchError(f"Box {box} has {count} points, input lives in P_{x.k}")
    result = _GRAPH_ACTIONS[t.name](alg, t.k, inputs)
    return result * alg.gamma**t.circles if t.circles else result


def _identity_action(alg: GraphPlanarAlgebra, k: int, inputs: Sequence[GraphLoopElement]) -> GraphLoopElement:
    return alg.element(k, inputs[0].coefficients)


def _multiplication_action(alg: GraphPlanarAlgebra, k: int, inputs: Sequence[GraphLoopElement]) -> GraphLoopElement:
    a, b = inputs
    by_top: Dict[Tuple[Vertex, Path], List[Tuple[Path, complex]]] = {}
    for (start, z, w), value in b.coefficients.items():
        by_top.setdefault((start, z), []).append((w, value))
    total: Dict[Loop, complex] = {}
    for (start, x, y), value in a.coefficients.items():
        for w, other in by_top.get((start, y), ()):
            key = (start, x, w)
            total[key] = total.get(key, 0) + value * other
    return alg.element(k, total)


def _inclusion_action(alg: GraphPlanarAlgebra, k: int, inputs: Sequence[GraphLoopElement]) -> GraphLoopElement:
    total: Dict[Loop, complex] = {}
    for (start, x, y), value in inputs[0].coefficients.items():
        for g in alg.edges_from(_end(start, x)):
            key = (start, x + (g,), y + (g,))
            total[key] = total.get(key, 0) + value
    return alg.element(k + 1, total)


def _expectation_action(alg: GraphPlanarAlgebra, k: int, inputs: Sequence[GraphLoopElement]) -> GraphLoopElement:
    total: Dict[Loop, complex] = {}
    for (start, x, y), value in inputs[0].coefficients.items():
        if x[-1] != y[-1]:
            continue
        key = (start, x[:-1], y[:-1])
        total[key] = total.get(key, 0) + value * alg.mu(x[-1]) ** 2
    return alg.element(k, total)


def _jones_action(alg: GraphPlanarAlgebra, k: int, inputs: Sequence[GraphLoopElement]) -> GraphLoopElement:
    total: Dict[Loop, complex] = {}
    for i in range(len(alg.graph.layer_a)):
        start = ("a", i)
        for x in alg.paths(start, k - 2):
            steps = alg.edges_from(_end(start, x))
            for g in steps:
                for h in steps:
                    key = (start, x + (h, _reverse(h)), x + (g, _reverse(g)))
                    total[key] = total.get(key, 0) + alg.mu(g) * alg.mu(h)
    return alg.element(k, total)


def _shift_action(alg: GraphPlanarAlgebra, k: int, inputs: Sequence[GraphLoopElement]) -> GraphLoopElement:
    total: Dict[Loop, complex] = {}
    for (start, x, y), value in inputs[0].coefficients.items():
        for a in alg.edges_from(start):
            for b in alg.edges_from(a[1]):
                head = (_reverse(b), _reverse(a))
                key = (b[1], head + x, head + y)
                total[key] = total.get(key, 0) + value
    return alg.element(k + 2, total)


_GRAPH_ACTIONS = {
    "identity": _identity_action,
    "multiplication": _multiplication_action,
    "inclusion": _inclusion_action,
    "expectation": _expectation_action,
    "jones": _jones_action,
    "shift": _shift_action,
}


def graph_multiply(a: GraphLoopElement, b: GraphLoopElement) -> GraphLoopElement:
    return act_graph(named_tangle("multiplication", a.k), [a, b])


def graph_jones_projection(alg: GraphPlanarAlgebra, k: int, i: int) -> GraphLoopElement:
    """
    e_i = γ^{−1}·I^{k−i−1}(E_{i+1}(1)) in P_k.
    """
    if not 1 <= i <= k - 1:
        raise ValueError(f"Index must be in 1..{k - 1}, got {i}")
    x = act_graph(named_tangle("jones", i + 1), [], alg) * (1 / alg.gamma)
    for level in range(i + 1, k):
        x = act_graph(named_tangle("inclusion", level), [x])
    return x


def graph_conditional_expectation(x: GraphLoopElement) -> GraphLoopElement:
    """
    γ^{−1}·U(x).
    """
    if x.k < 1:
        raise ValueError("Expectation requires k ≥ 1")
    return _expectation_action(x.algebra, x.k - 1, [x]) * (1 / x.algebra.gamma)


def star_to_spin(x: GraphLoopElement) -> SpinTensor:
    """
    For the star graph of ℂ ⊂ ℂ^N, the spin tensor labeling each boundary point by the
    leaf its edge visits.
    """
    graph = x.algebra.graph
    if len(graph.layer_a) != 1 or any(v != 1 for v in graph.m[0]):
        raise ValueError("Spin model requires the star graph of ℂ ⊂ ℂ^N")
    n = len(graph.layer_b)
    tensor = SpinTensor.zeros(n, 2 * x.k)
    for (_, top, bottom), value in x.coefficients.items():
        labels = [_leaf(e) for e in top] + [_leaf(e) for e in reversed(bottom)]
        tensor.data[tuple(labels)] += value
    return tensor


def _leaf(edge: Edge) -> int:
    u, v, _ = edge
    return (u if u[0] == "b" else v)[1]
