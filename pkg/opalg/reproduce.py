"""
Acceptance suites: each suite recomputes a block of identities and limit laws and reports
one pass/fail criterion per check, with the measured and expected values.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from opalg import freeprob, graphinv, hadamard, linalg, partitions, randmat, tl, weingarten
from opalg.config import DEFAULT_GUARDS, DEFAULT_SEED, SizeGuards
from opalg.exceptions import ConsistencyError
from opalg.partitions import PartitionClass
from opalg.series import FormalSeries
from opalg.store.entities import ReproduceRecord

logger = logging.getLogger(__name__)

MC_ERRORS = 3.0
MOMENT_TOLERANCE = 0.07
LIMIT_TOLERANCE = 0.02


@dataclass(frozen=True)
class Criterion:
    name: str
    passed: bool
    measured: str
    expected: str


@dataclass(frozen=True)
class SuiteOptions:
    seed: int = DEFAULT_SEED
    samples: int = 100
    guards: SizeGuards = DEFAULT_GUARDS


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    criteria: Tuple[Criterion, ...]
    options: SuiteOptions = field(default_factory=SuiteOptions)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.criteria)

    @property
    def failures(self) -> List[Criterion]:
        return [c for c in self.criteria if not c.passed]

    def to_records(self) -> List[ReproduceRecord]:
        return [
            ReproduceRecord(
                suite=self.suite,
                criterion=c.name,
                measured=c.measured,
                expected=c.expected,
                passed=c.passed,
                seed=str(self.options.seed),
            )
            for c in self.criteria
        ]


def _text(value) -> str:
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, (list, tuple)):
        return ",".join(_text(v) for v in value)
    return str(value)


def _equal(name: str, measured, expected) -> Criterion:
    return Criterion(name, measured == expected, _text(measured), _text(expected))


def _below(name: str, measured: float, bound: float) -> Criterion:
    return Criterion(name, measured <= bound, _text(float(measured)), f"<= {_text(float(bound))}")


def _within_errors(name: str, estimate: randmat.MonteCarloEstimate, exact) -> Criterion:
    return Criterion(
        name,
        estimate.within(complex(exact), MC_ERRORS),
        f"{_text(complex(estimate.mean).real)} ± {_text(estimate.stderr)}",
        _text(exact),
    )


def _relative_gap(row: freeprob.LimitRow) -> float:
    return row.gap / max(1.0, abs(complex(row.limit)))


def _decreasing(values: Sequence) -> bool:
    return all(b < a for a, b in zip(values, values[1:]))


def _shrinking(gaps: Sequence) -> bool:
    return all(g == 0 for g in gaps) or _decreasing(gaps)


def catalan_suite(options: SuiteOptions) -> List[Criterion]:
    criteria = []
    for k in range(11):
        expected = partitions.catalan(k)
        criteria.append(
            _equal(f"|NC2({2 * k})|", len(partitions.enumerate_class(PartitionClass.NC2, 2 * k, guards=options.guards)), expected)
        )
        criteria.append(_equal(f"|NC({k})|", len(partitions.enumerate_class(PartitionClass.NC, k, guards=options.guards)), expected))
    bells = [1]
    for k in range(10):
        bells.append(sum(math.comb(k, j) * bells[j] for j in range(k + 1)))
    for k, expected in enumerate(bells):
        criteria.append(_equal(f"|P({k})|", len(partitions.enumerate_class(PartitionClass.P, k, guards=options.guards)), expected))
    return criteria


def weingarten_suite(options: SuiteOptions) -> List[Criterion]:
    criteria = []
    for klass in (PartitionClass.P, PartitionClass.NC):
        for k in range(1, 5):
            product = linalg.matmul(partitions.refinement_matrix(klass, k), partitions.mobius_matrix(klass, k))
            criteria.append(_equal(f"zeta*mobius {klass.value}({k})", product, linalg.identity(len(product))))
    for k in range(1, 5):
        for n in range(1, 9):
            formula, direct = weingarten.gram_determinant(k, n)
            criteria.append(_equal(f"det G P({k}) N={n}", direct, formula))
    cache = weingarten.WeingartenCache()
    for group in weingarten.GROUPS:
        cat = weingarten.EasyCategory.for_group(group)
        for k in range(1, 5):
            word = cat.word_for(k, None)
            g = weingarten.gram(cat, k, 7, word, options.guards)
            w = weingarten.weingarten(cat, k, 7, word, options.guards, cache)
            product = linalg.matmul(g.entries, w.entries) if g.basis else []
            criteria.append(_equal(f"G*W {group} k={k} N=7", product, linalg.identity(len(g.basis))))
        for p in range(1, 5):
            value = weingarten.character_moments(cat, 10, p, guards=options.guards, cache=cache)
            criteria.append(_equal(f"character {group} p={p} N=10", value, Fraction(len(cat.basis(p)))))
        for p in range(1, 5):
            rows = weingarten.truncated_character_check(cat, p, Fraction(1, 2), [p, 2 * p, 4 * p], options.guards)
            gaps = [r.gap for r in rows]
            criteria.append(Criterion(f"truncated gap {group} p={p}", _shrinking(gaps), _text(gaps), "decreasing or zero"))
    return criteria


def tl_suite(options: SuiteOptions) -> List[Criterion]:
    rng = np.random.default_rng(options.seed)
    criteria = []
    for delta in (Fraction(2), Fraction(5, 2), Fraction(3)):
        for k in range(1, 7):
            for check in tl.check_relations(k, delta, rng):
                criteria.append(Criterion(f"TL({k}) delta={delta} {check.name}", check.passed, check.detail or "ok", "ok"))
    for k in range(5):
        criteria.append(_equal(f"dim FC({k})", tl.fc_dimension_brute_force(k), tl.dimension(k, fuss_catalan=True)))
    return criteria


def freeprob_suite(options: SuiteOptions) -> List[Criterion]:
    criteria = []
    for t in (Fraction(1, 2), Fraction(1), Fraction(2)):
        measured = freeprob.law_moments("free-poisson", 8, t).moments
        expected = tuple(
            sum((t ** p.block_count for p in partitions.enumerate_class(PartitionClass.NC, k)), Fraction(0))
            for k in range(1, 9)
        )
        criteria.append(_equal(f"free Poisson t={t}", measured, expected))
        r = freeprob.r_transform(freeprob.law_moments("free-poisson", 9, t))
        criteria.append(_equal(f"R-transform free Poisson t={t}", r.coefficients[:8], [t] * 8))
    symmetric = freeprob.DiscreteMeasure.symmetric_bernoulli()
    small = freeprob.DiscreteMeasure.bernoulli(Fraction(1, 1000))
    for theorem, base in (("clt", symmetric), ("free-clt", symmetric), ("plt", small), ("free-plt", small)):
        rows = freeprob.limit_theorem_check(base, theorem, 1000, 6)
        criteria.append(_below(f"{theorem} n=1000", max(_relative_gap(r) for r in rows), LIMIT_TOLERANCE))
    for k in range(1, 7):
        value, catalan = freeprob.semicircle_density_check(k)
        criteria.append(_below(f"semicircle density x^{2 * k}", abs(value - catalan), 1e-7))
    return criteria


def _stieltjes_identity(g: graphinv.RootedBipartiteGraph, order: int) -> Tuple[FormalSeries, FormalSeries]:
    left = graphinv.stieltjes_series(graphinv.circular_moments(g, order))
    q = FormalSeries.variable(order, "q")
    right = 1 + graphinv.t_series(g, order) * (1 - q)
    return left, right


def ade_series_suite(options: SuiteOptions) -> List[Criterion]:
    criteria = []
    series_range = {"A": range(2, 7), "D": range(4, 8), "Atilde": range(1, 4), "Dtilde": range(4, 8)}
    for family in graphinv.FAMILIES:
        for n in series_range.get(family, (0,)):
            text, divide_by = graphinv.t_formula(family, n)
            try:
                measured = graphinv.t_series(graphinv.ade(family, n), 24)
            except ConsistencyError as e:
                criteria.append(Criterion(f"T {family}{n or ''}", False, str(e), text))
                continue
            expected = graphinv.xi_text(text, 24, divide_by)
            criteria.append(Criterion(f"T {family}{n or ''}", measured == expected, _text(measured.coefficients[:8]), text))
    for family, n, g in graphinv.catalog(8):
        left, right = _stieltjes_identity(g, 20)
        criteria.append(Criterion(f"stieltjes {g.name}", left == right, _text(left.coefficients[:6]), _text(right.coefficients[:6])))
    for n in range(3, 7):
        g = graphinv.inclusion_graph(graphinv.InclusionData.of([1], [[n]]))
        coefficients = graphinv.theta(g, 20).coefficients
        smallest = min(coefficients)
        criteria.append(Criterion(f"theta C⊂M_{n} positive", smallest >= 0, _text(smallest), ">= 0"))
    for n in range(2, 10):
        norm = graphinv.graph_norm(graphinv.ade("A", n)) ** 2
        expected = 4 * math.cos(math.pi / (n + 1)) ** 2
        criteria.append(_below(f"|A{n}|^2", abs(norm - expected), 1e-9))
    return criteria


def ade_circular_suite(options: SuiteOptions) -> List[Criterion]:
    criteria = []
    for n in range(1, 4):
        measure = graphinv.circular_measure(graphinv.ade("Atilde", n))
        roots = 2 * n
        uniform = len(measure.atoms) == roots and all(
            abs(z**roots - 1) <= 1e-9 and abs(w - 1 / roots) <= 1e-9 for z, w in measure.atoms
        )
        criteria.append(Criterion(f"Atilde{roots} uniform on roots", uniform, str(len(measure.atoms)), str(roots)))
    for family, n, g in graphinv.catalog(8):
        if graphinv.graph_norm(g) > 2 + 1e-9:
            continue
        measured = graphinv.circular_moments(g, 12)
        expected = graphinv.formula_moments(graphinv.circular_formula(family, n), 12)
        criteria.append(_equal(f"circular {g.name}", measured, expected))
    return criteria


def randmat_suite(options: SuiteOptions) -> List[Criterion]:
    criteria = []
    for row in randmat.wigner_convergence([200], 6, options.samples, options.seed):
        criteria.append(_below(f"wigner N=200 M_{row.k}", row.relative_gap, MOMENT_TOLERANCE))
    spec = randmat.EnsembleSpec("wishart", 200, m=200, seed=options.seed, samples=options.samples)
    for k, value in enumerate(randmat.empirical_moments(spec, 3), start=1):
        target = partitions.catalan(k)
        criteria.append(_below(f"wishart N=M=200 M_{k}", abs(value - target) / target, MOMENT_TOLERANCE))
    cat = weingarten.EasyCategory.for_group("O_N")
    words = [((1, 1), (1, 1)), ((1, 1, 1, 1), (1, 1, 1, 1)), ((1, 1, 2, 2), (1, 1, 2, 2)), ((1, 2, 1, 2), (1, 1, 2, 2))]
    for rows, cols in words:
        exact = weingarten.integrate(cat, 5, rows, cols, guards=options.guards)
        estimate = randmat.haar_word_integral_mc("O_N", 5, rows, cols, samples=options.samples * 100, seed=options.seed)
        criteria.append(_within_errors(f"O_5 u{rows}{cols}", estimate, exact))
    return criteria


def hadamard_suite(options: SuiteOptions) -> List[Criterion]:
    criteria = []
    guards = options.guards
    matrices = {"F2": hadamard.fourier([2]), "F3": hadamard.fourier([3]), "F2xF2": hadamard.fourier([2, 2])}
    for name, h in matrices.items():
        defect = hadamard.magic_unitary(h).defect()
        criteria.append(_below(f"magic unitary {name}", defect, hadamard.PROJECTION_TOLERANCE))
        report = hadamard.commuting_square_check(h)
        criteria.append(
            _below(f"commuting square {name}", max(report.diagonal_first, report.rotated_first), hadamard.PROJECTION_TOLERANCE)
        )
    for n in (2, 3):
        for k in range(1, 4):
            criteria.append(_equal(f"dim P_{k} F{n}", hadamard.planar_dim(matrices[f"F{n}"], k, guards), n ** (k - 1)))
    for m in range(1, 5):
        for n in range(1, 5):
            criteria.append(_equal(f"kesten M={m} N={n} p=2", hadamard.kesten_moment(m, n, 2, guards), Fraction(m + n - 1)))
    for n in range(1, 5):
        for p in range(1, 5):
            criteria.append(_equal(f"kesten=blowup N={n} p={p}", hadamard.kesten_moment(2, n, p, guards), hadamard.blowup_m2(n, p)))
    for p in range(2, 4):
        rows = hadamard.convergence_check(Fraction(1), Fraction(1), p, [1, 2, 3], guards)
        gaps = [r.gap for r in rows]
        criteria.append(Criterion(f"asymptotic gap p={p}", _decreasing(gaps), _text(gaps), "decreasing"))
    for m, n, p in ((2, 3, 2), (3, 2, 3)):
        estimate = hadamard.gram_law_mc(m, n, p, options.samples * 20, options.seed)
        criteria.append(_within_errors(f"gram law M={m} N={n} p={p}", estimate, hadamard.kesten_moment(m, n, p, guards)))
    return criteria


SUITES: Dict[str, Callable[[SuiteOptions], List[Criterion]]] = {
    "catalan": catalan_suite,
    "ade-series": ade_series_suite,
    "ade-circular": ade_circular_suite,
    "weingarten": weingarten_suite,
    "randmat": randmat_suite,
    "hadamard": hadamard_suite,
    "tl": tl_suite,
    "freeprob": freeprob_suite,
}


def reproduce(suite: str, options: Optional[SuiteOptions] = None, repository=None) -> SuiteReport:
    """
    Runs one acceptance suite.

    :param suite: one of :data:`SUITES`.
    :param options: seed, Monte-Carlo sample count and size guards.
    :param repository: a :class:`~opalg.store.repository.ReproduceRecordRepository`; when
        given, every criterion is saved to it.
    :raises ValueError: on an unknown suite.
    """
    if suite not in SUITES:
        raise ValueError(f"Suite must be one of {', '.join(SUITES)}, got {suite!r}")
    options = options or SuiteOptions()
    report = SuiteReport(suite, tuple(SUITES[suite](options)), options)
    for criterion in report.criteria:
        logger.info(
            "%s %s: %s (measured %s, expected %s)",
            suite,
            criterion.name,
            "pass" if criterion.passed else "FAIL",
            criterion.measured,
            criterion.expected,
        )
    if repository is not None:
        repository.save_all(report.to_records())
    return report
