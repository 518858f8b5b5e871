"""
Command line entry point: every module as a subcommand, with exact output in pretty, JSON or
CSV form.
"""
import argparse
import csv
import io
import json
import logging
import sys
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Iterator, List, Optional, Sequence

import numpy as np
from springdata.domain import Pageable

from opalg import freeprob, graphinv, hadamard, partitions, randmat, reproduce, spinplanar, tl, weingarten
from opalg.config import DEFAULT_GUARDS, DEFAULT_SEED, FORMATS, RunConfig, database_url
from opalg.exceptions import OpalgError
from opalg.partitions import ColoredWord, PartitionClass
from opalg.store.entities import open_session
from opalg.store.repository import ReproduceRecordRepository, WeingartenRecordRepository

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


@dataclass
class Table:
    """
    Command output: a header row with value rows, and optionally a JSON document that
    replaces the rows in JSON output.
    """

    headers: List[str]
    rows: List[List[Any]] = field(default_factory=list)
    document: Any = None
    exit_code: int = EXIT_OK


def format_value(value: Any) -> str:
    """
    Rationals as "p/q", floats with 17 significant digits.
    """
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    if isinstance(value, (complex, np.complexfloating)):
        value = complex(value)
        if value.imag == 0:
            return format(value.real, ".17g")
        return f"{format(value.real, '.17g')}{'+' if value.imag >= 0 else '-'}{format(abs(value.imag), '.17g')}i"
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _json_value(v) for k, v in value.items()}
    return format_value(value)


def render(table: Table, fmt: str) -> str:
    if fmt == "json":
        if table.document is not None:
            return json.dumps(_json_value(table.document), sort_keys=True) + "\n"
        return json.dumps([dict(zip(table.headers, _json_value(row))) for row in table.rows]) + "\n"
    cells = [[format_value(v) for v in row] for row in table.rows]
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(table.headers)
        writer.writerows(cells)
        return buffer.getvalue()
    if len(table.headers) == 1:
        return "".join(row[0] + "\n" for row in cells)
    widths = [max([len(h)] + [len(row[i]) for row in cells]) for i, h in enumerate(table.headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(table.headers, widths)).rstrip()]
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def _integers(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational number, got {text!r}")


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}")
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must lie in 0..2^64-1, got {value}")
    return value


def _guard(text: str):
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    try:
        return name.strip(), int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"guard limit must be an integer, got {value!r}")


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


# partitions


def _members(config: RunConfig, args) -> List[partitions.Partition]:
    # --k counts pairs for the pairing classes, points otherwise
    klass = PartitionClass.parse(args.kind)
    word = ColoredWord.parse(args.word) if args.word else None
    points = 2 * args.k if klass.is_pairing else args.k
    return partitions.enumerate_class(klass, points, word, config.guards)


def cmd_partitions_count(config: RunConfig, args) -> Table:
    return Table(["count"], [[len(_members(config, args))]])


def cmd_partitions_list(config: RunConfig, args) -> Table:
    members = _members(config, args)
    return Table(["partition", "blocks"], [[str(p), p.block_count] for p in members], [p.to_json() for p in members])


def cmd_partitions_mobius(config: RunConfig, args) -> Table:
    lattice = PartitionClass.parse(args.lattice)
    p = partitions.Partition.parse(args.p)
    q = partitions.Partition.parse(args.q, p.size)
    return Table(["mobius"], [[partitions.mobius(p, q, lattice)]])


# tl


def cmd_tl_check(config: RunConfig, args) -> Table:
    rng = np.random.default_rng(config.seed)
    checks = tl.check_relations(args.k, args.delta, rng, args.words)
    return Table(
        ["relation", "passed", "detail"],
        [[c.name, c.passed, c.detail] for c in checks],
        exit_code=EXIT_OK if all(c.passed for c in checks) else EXIT_DOMAIN,
    )


def cmd_tl_dim(config: RunConfig, args) -> Table:
    rows = [[k, tl.dimension(k, args.fuss_catalan)] for k in range(args.k + 1)]
    return Table(["k", "dimension"], rows)


def cmd_tl_gram(config: RunConfig, args) -> Table:
    return Table(["determinant"], [[tl.gram_determinant(args.k, args.delta, args.black)]])


def cmd_tl_projection(config: RunConfig, args) -> Table:
    x = tl.jones_projection(args.i, args.k, args.delta)
    document = x.to_json()
    return Table(["diagram", "coefficient"], [[d, c] for d, c in document.items()], document)


# planar


def _tensor_table(x: spinplanar.SpinTensor) -> Table:
    rows = [
        [",".join(str(i + 1) for i in index), float(value.real), float(value.imag)]
        for index, value in np.ndenumerate(x.data)
        if value != 0
    ]
    return Table(["indices", "re", "im"], rows, json.loads(x.to_json()))


def cmd_planar_act(config: RunConfig, args) -> Table:
    tangle = spinplanar.named_tangle(args.tangle, args.k)
    inputs = [spinplanar.SpinTensor.from_json(_read(path)) for path in args.input or []]
    return _tensor_table(spinplanar.act_spin(tangle, inputs, args.N))


def cmd_planar_jones(config: RunConfig, args) -> Table:
    return _tensor_table(spinplanar.jones_projection(args.N, args.k, args.i))


def cmd_planar_graph(config: RunConfig, args) -> Table:
    algebra = spinplanar.GraphPlanarAlgebra.perron(_graph(args))
    rows = [[k, algebra.dimension(k)] for k in range(args.k + 1)]
    return Table(["k", "dimension"], rows)


# freeprob


def cmd_freeprob_moments(config: RunConfig, args) -> Table:
    m = freeprob.law_moments(args.law, args.K, args.t, args.s)
    return Table(["k", "moment"], [[k, m[k]] for k in range(1, m.order + 1)])


def cmd_freeprob_cumulants(config: RunConfig, args) -> Table:
    c = freeprob.cumulants(freeprob.law_moments(args.law, args.K, args.t, args.s), args.kind)
    return Table(["k", "cumulant"], [[k, c[k]] for k in range(1, c.order + 1)])


def cmd_freeprob_rtransform(config: RunConfig, args) -> Table:
    r = freeprob.r_transform(freeprob.law_moments(args.law, args.K, args.t, args.s))
    return Table(["power", "coefficient"], [[k, c] for k, c in enumerate(r.coefficients)])


def cmd_freeprob_limit(config: RunConfig, args) -> Table:
    if args.theorem in ("plt", "free-plt"):
        base = freeprob.DiscreteMeasure.bernoulli(Fraction(args.t) / args.n)
    else:
        base = freeprob.DiscreteMeasure.symmetric_bernoulli()
    rows = freeprob.limit_theorem_check(base, args.theorem, args.n, args.K)
    return Table(["index", "value", "limit", "gap"], [[r.index, r.value, r.limit, r.gap] for r in rows])


# wg


@contextmanager
def _weingarten_cache(config: RunConfig) -> Iterator[weingarten.WeingartenCache]:
    """
    The process-wide cache, or one backed by the results store when a database is configured.
    Matrices computed during the command are committed on success.
    """
    url = database_url(config.database)
    if url is None:
        yield weingarten.default_cache()
        return
    session = open_session(url)
    try:
        yield weingarten.WeingartenCache(WeingartenRecordRepository(session))
        session.commit()
    finally:
        session.close()


def cmd_wg_integrate(config: RunConfig, args) -> Table:
    cat = weingarten.EasyCategory.parse(args.cat)
    colors = ColoredWord.parse(args.colors) if args.colors else None
    with _weingarten_cache(config) as cache:
        value = weingarten.integrate(cat, args.N, args.rows, args.cols, colors, config.guards, cache)
    return Table(["integral"], [[value]])


def cmd_wg_matrix(config: RunConfig, args) -> Table:
    cat = weingarten.EasyCategory.parse(args.cat)
    word = ColoredWord.parse(args.word) if args.word else None
    with _weingarten_cache(config) as cache:
        w = weingarten.weingarten(cat, args.k, args.N, word, config.guards, cache)
    rows = [[str(p)] + list(row) for p, row in zip(w.basis, w.entries)]
    return Table(["partition"] + [str(p) for p in w.basis], rows, w.to_json())


def cmd_wg_character(config: RunConfig, args) -> Table:
    cat = weingarten.EasyCategory.parse(args.cat)
    with _weingarten_cache(config) as cache:
        value = weingarten.character_moments(cat, args.N, args.p, args.t, guards=config.guards, cache=cache)
    return Table(["moment", "limit"], [[value, weingarten.character_limit(cat, args.p, args.t)]])


# rm


def _ensemble(config: RunConfig, args) -> randmat.EnsembleSpec:
    return randmat.EnsembleSpec(args.kind, args.N, args.M, args.t, config.seed, args.samples)


def cmd_rm_moments(config: RunConfig, args) -> Table:
    values = randmat.empirical_moments(_ensemble(config, args), args.k)
    return Table(["k", "moment"], [[k, v] for k, v in enumerate(values, start=1)])


def cmd_rm_spectrum(config: RunConfig, args) -> Table:
    measure = randmat.pooled_spectrum(_ensemble(config, args))
    lo, hi = (args.lo, args.hi) if args.lo is not None else (float(measure.points[0]), float(measure.points[-1]))
    edges, fractions = measure.histogram(args.bins, lo, hi)
    rows = [[edges[i], edges[i + 1], fractions[i]] for i in range(len(fractions))]
    return Table(["lo", "hi", "fraction"], rows)


def cmd_rm_haar(config: RunConfig, args) -> Table:
    estimate = randmat.haar_word_integral_mc(args.group, args.N, args.rows, args.cols, samples=args.samples, seed=config.seed)
    return Table(["mean", "stderr", "samples"], [[estimate.mean, estimate.stderr, estimate.samples]])


# graph


def _graph(args) -> graphinv.RootedBipartiteGraph:
    if args.file:
        return graphinv.RootedBipartiteGraph.from_json(_read(args.file))
    if not args.ade:
        raise ValueError("Either --ade or --file must be given")
    if args.ade == "A":
        # --n is the Coxeter number: A_{n-1}, of index 4cos²(π/n)
        if args.n < 3:
            raise ValueError(f"A requires n ≥ 3, got {args.n}")
        return graphinv.ade("A", args.n - 1)
    return graphinv.ade(args.ade, args.n)


def _series_table(series) -> Table:
    return Table(["power", "coefficient"], [[k, c] for k, c in enumerate(series.coefficients)])


def cmd_graph_poincare(config: RunConfig, args) -> Table:
    return _series_table(graphinv.poincare(_graph(args), args.order))


def cmd_graph_theta(config: RunConfig, args) -> Table:
    return _series_table(graphinv.theta(_graph(args), args.order))


def cmd_graph_t_series(config: RunConfig, args) -> Table:
    return _series_table(graphinv.t_series(_graph(args), args.order))


def cmd_graph_spectral(config: RunConfig, args) -> Table:
    g = _graph(args)
    measure = graphinv.exact_spectral_measure(g) or graphinv.spectral_measure(g)
    return Table(["position", "weight"], [[x, w] for x, w in measure.atoms], {"norm": graphinv.graph_norm(g), "atoms": measure.to_json()})


def cmd_graph_circular(config: RunConfig, args) -> Table:
    measure = graphinv.circular_measure(_graph(args))
    rows = [[z.real, z.imag, w] for z, w in measure.atoms]
    return Table(["re", "im", "weight"], rows)


def cmd_graph_markov(config: RunConfig, args) -> Table:
    data = json.loads(_read(args.file))
    inclusion = graphinv.InclusionData.of(data["a"], data["m"])
    report = graphinv.markov_check(inclusion)
    rows = [[level, t.norm, t.expected, t.consistent] for level, t in enumerate(graphinv.jones_tower(inclusion, args.depth), 1)]
    table = Table(["level", "norm", "expected", "consistent"], rows)
    table.document = {
        "a": list(report.a),
        "b": list(report.b),
        "r": report.r,
        "markov": report.markov,
        "integral": report.integral,
        "tower": rows,
    }
    table.exit_code = EXIT_OK if report.markov else EXIT_DOMAIN
    return table


# hadamard


def _hadamard(args) -> hadamard.HadamardMatrix:
    if args.file:
        text = _read(args.file)
        return hadamard.HadamardMatrix.from_json(text) if args.file.endswith(".json") else hadamard.HadamardMatrix.from_csv(text)
    if not args.fourier:
        raise ValueError("Either --fourier or --file must be given")
    return hadamard.fourier(args.fourier)


def cmd_hadamard_pk(config: RunConfig, args) -> Table:
    h = _hadamard(args)
    rows = [[k, hadamard.planar_dim(h, k, config.guards)] for k in range(args.k + 1)]
    return Table(["k", "dimension"], rows)


def cmd_hadamard_square_check(config: RunConfig, args) -> Table:
    h = _hadamard(args)
    report = hadamard.commuting_square_check(h)
    magic = hadamard.magic_unitary(h).defect()
    rows = [["diagonal-first", report.diagonal_first], ["rotated-first", report.rotated_first], ["magic-unitary", magic]]
    return Table(["check", "defect"], rows, exit_code=EXIT_OK if report.passed else EXIT_DOMAIN)


def cmd_hadamard_kesten(config: RunConfig, args) -> Table:
    return Table(["p", "moment"], [[p, hadamard.kesten_moment(args.M, args.N, p, config.guards)] for p in range(1, args.p + 1)])


def cmd_hadamard_gram_mc(config: RunConfig, args) -> Table:
    estimate = hadamard.gram_law_mc(args.M, args.N, args.p, args.samples, config.seed)
    exact = hadamard.kesten_moment(args.M, args.N, args.p, config.guards)
    return Table(["mean", "stderr", "samples", "kesten"], [[estimate.mean.real, estimate.stderr, estimate.samples, exact]])


def cmd_hadamard_blowup(config: RunConfig, args) -> Table:
    law = hadamard.blowup_measure_m2(args.N)
    rows = [[p, law.moment(p)] for p in range(args.p + 1)]
    return Table(["p", "moment"], rows, {"law": law.describe(), "moments": rows})


def cmd_hadamard_asymptotic(config: RunConfig, args) -> Table:
    rows = hadamard.convergence_check(args.alpha, args.beta, args.p, args.K, config.guards)
    return Table(["K", "M", "N", "value", "limit", "gap"], [[r.k, r.m, r.n, r.value, r.limit, r.gap] for r in rows])


def cmd_hadamard_cesaro(config: RunConfig, args) -> Table:
    result = hadamard.cesaro_haar(_hadamard(args), args.p, args.iterations, config.guards)
    return Table(["iterations", "rank", "defect"], [[result.iterations, result.rank, result.defect]])


def cmd_hadamard_hankel(config: RunConfig, args) -> Table:
    report = hadamard.hankel_check(args.M, args.N, args.p, config.guards)
    return Table(
        ["moments", "smallest_eigenvalue", "positive"],
        [[",".join(format_value(m) for m in report.moments), report.smallest_eigenvalue, report.positive]],
    )


# reproduce and history


def cmd_reproduce(config: RunConfig, args) -> Table:
    options = reproduce.SuiteOptions(config.seed, args.samples, config.guards)
    url = database_url(config.database)
    session = open_session(url) if url is not None else None
    repository = ReproduceRecordRepository(session) if session is not None else None
    try:
        report = reproduce.reproduce(args.suite, options, repository)
        if session is not None:
            session.commit()
    finally:
        if session is not None:
            session.close()
    rows = [[c.name, c.passed, c.measured, c.expected] for c in report.criteria]
    return Table(["criterion", "passed", "measured", "expected"], rows, exit_code=EXIT_OK if report.passed else EXIT_DOMAIN)


def cmd_history(config: RunConfig, args) -> Table:
    url = database_url(config.database)
    if url is None:
        raise ValueError("History requires --db or OPALG_DB")
    session = open_session(url)
    try:
        page = ReproduceRecordRepository(session).find_suite_page(args.suite, Pageable.of_size(args.limit))
        rows = [[r.id, r.suite, r.criterion, r.passed, r.measured, r.expected, r.seed] for r in page.content]
    finally:
        session.close()
    return Table(["id", "suite", "criterion", "passed", "measured", "expected", "seed"], rows)


def _global_options(parser: argparse.ArgumentParser, nested: bool) -> None:
    default = (lambda value: argparse.SUPPRESS) if nested else (lambda value: value)
    parser.add_argument("--format", dest="fmt", choices=FORMATS, default=default("pretty"))
    parser.add_argument("--output", default=default(None), help="write to this file instead of stdout")
    parser.add_argument("--seed", type=_seed, default=default(DEFAULT_SEED))
    parser.add_argument("--guard", type=_guard, action="append", default=default([]), help="override a size guard, name=value")
    parser.add_argument("--db", default=default(None), help="SQLAlchemy database URL of the results store")
    parser.add_argument("-v", "--verbose", action="count", default=default(0))


def _graph_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--ade", choices=graphinv.FAMILIES)
    parser.add_argument("--n", type=int, default=0, help="series index; for A the graph is A_{n-1}")
    parser.add_argument("--file", help="graph JSON file")


def _hadamard_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--fourier", type=_integers, help="orders of the Fourier factors, e.g. 2,3")
    parser.add_argument("--file", help="matrix as JSON phase exponents or as CSV entries")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="opalg", description=__doc__.strip())
    _global_options(parser, nested=False)
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, nested=True)

    def group(name: str, help_text: str):
        sub = commands.add_parser(name, help=help_text).add_subparsers(dest="action", metavar="action")
        sub.required = True
        return sub

    def action(sub, name: str, handler: Callable, help_text: str = "") -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    sub = group("partitions", "partition classes and Möbius calculus")
    for name, handler in (("count", cmd_partitions_count), ("list", cmd_partitions_list)):
        p = action(sub, name, handler)
        p.add_argument("--kind", required=True, help="P, P2, Peven, NC, NC2, NCeven, MatchedP2, MatchedNC2")
        p.add_argument("--k", type=int, required=True, help="number of points, or of pairs for P2, NC2 and the matched classes")
        p.add_argument("--word", help="colors for the matched classes, 2k letters, e.g. o•o•")
    p = action(sub, "mobius", cmd_partitions_mobius)
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--lattice", default="P", choices=("P", "NC"))

    sub = group("tl", "Temperley-Lieb and Fuss-Catalan algebras")
    p = action(sub, "check", cmd_tl_check)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--delta", type=_rational, required=True)
    p.add_argument("--words", type=int, default=50)
    p = action(sub, "dim", cmd_tl_dim)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--fuss-catalan", action="store_true")
    p = action(sub, "gram", cmd_tl_gram)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--delta", type=_rational, required=True)
    p.add_argument("--black", type=_rational)
    p = action(sub, "projection", cmd_tl_projection)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--delta", type=_rational, required=True)

    sub = group("planar", "tangles acting on spin and graph planar algebras")
    p = action(sub, "act", cmd_planar_act)
    p.add_argument("--tangle", choices=spinplanar.NAMED_TANGLES, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--N", type=int)
    p.add_argument("--input", action="append", help="spin tensor JSON, once per input box")
    p = action(sub, "jones", cmd_planar_jones)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p = action(sub, "graph", cmd_planar_graph)
    _graph_source(p)
    p.add_argument("--k", type=int, default=3)

    sub = group("freeprob", "moments, cumulants and limit theorems")
    for name, handler in (
        ("moments", cmd_freeprob_moments),
        ("cumulants", cmd_freeprob_cumulants),
        ("r-transform", cmd_freeprob_rtransform),
    ):
        p = action(sub, name, handler)
        p.add_argument("--law", choices=freeprob.LAWS, required=True)
        p.add_argument("--t", type=_rational, default=Fraction(1))
        p.add_argument("--s", type=int, default=1)
        p.add_argument("--K", type=int, required=True)
        if name == "cumulants":
            p.add_argument("--kind", choices=freeprob.KINDS, default=freeprob.FREE)
    p = action(sub, "limit", cmd_freeprob_limit)
    p.add_argument("--theorem", choices=freeprob.THEOREMS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--t", type=_rational, default=Fraction(1))

    sub = group("wg", "Weingarten integration over easy quantum groups")
    p = action(sub, "integrate", cmd_wg_integrate)
    p.add_argument("--cat", required=True, help="class tag or group name")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--rows", type=_integers, required=True)
    p.add_argument("--cols", type=_integers, required=True)
    p.add_argument("--colors")
    p = action(sub, "matrix", cmd_wg_matrix)
    p.add_argument("--cat", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--word")
    p = action(sub, "character", cmd_wg_character)
    p.add_argument("--cat", required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--t", type=_rational, default=Fraction(1))

    sub = group("rm", "seeded random matrix ensembles")
    for name, handler in (("moments", cmd_rm_moments), ("spectrum", cmd_rm_spectrum)):
        p = action(sub, name, handler)
        p.add_argument("--kind", choices=randmat.KINDS, required=True)
        p.add_argument("--N", type=int, required=True)
        p.add_argument("--M", type=int, default=0)
        p.add_argument("--t", type=float, default=1.0)
        p.add_argument("--samples", type=int, default=100)
        if name == "moments":
            p.add_argument("--k", type=int, default=6)
        else:
            p.add_argument("--bins", type=int, default=50)
            p.add_argument("--lo", type=float)
            p.add_argument("--hi", type=float)
    p = action(sub, "haar", cmd_rm_haar)
    p.add_argument("--group", choices=tuple(randmat.GROUPS), required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--rows", type=_integers, required=True)
    p.add_argument("--cols", type=_integers, required=True)
    p.add_argument("--samples", type=int, default=10_000)

    sub = group("graph", "principal graph invariants")
    for name, handler in (
        ("poincare", cmd_graph_poincare),
        ("theta", cmd_graph_theta),
        ("t-series", cmd_graph_t_series),
    ):
        p = action(sub, name, handler)
        _graph_source(p)
        p.add_argument("--order", type=int, default=12)
    for name, handler in (("spectral", cmd_graph_spectral), ("circular", cmd_graph_circular)):
        _graph_source(action(sub, name, handler))
    p = action(sub, "markov", cmd_graph_markov)
    p.add_argument("--file", required=True, help='inclusion JSON {"a": [...], "m": [[...]]}')
    p.add_argument("--depth", type=int, default=3)

    sub = group("hadamard", "complex Hadamard matrices and their quantum groups")
    p = action(sub, "pk", cmd_hadamard_pk)
    _hadamard_source(p)
    p.add_argument("--k", type=int, required=True)
    _hadamard_source(action(sub, "square-check", cmd_hadamard_square_check))
    p = action(sub, "cesaro", cmd_hadamard_cesaro)
    _hadamard_source(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--iterations", type=int, default=50)
    for name, handler in (("kesten", cmd_hadamard_kesten), ("gram-mc", cmd_hadamard_gram_mc), ("hankel", cmd_hadamard_hankel)):
        p = action(sub, name, handler)
        p.add_argument("--M", type=int, required=True)
        p.add_argument("--N", type=int, required=True)
        p.add_argument("--p", type=int, required=True)
        if name == "gram-mc":
            p.add_argument("--samples", type=int, default=2000)
    p = action(sub, "blowup", cmd_hadamard_blowup)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p = action(sub, "asymptotic", cmd_hadamard_asymptotic)
    p.add_argument("--alpha", type=_rational, default=Fraction(1))
    p.add_argument("--beta", type=_rational, default=Fraction(1))
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--K", type=_integers, default=[1, 2, 3])

    p = commands.add_parser("reproduce", parents=[common], help="run an acceptance suite")
    p.add_argument("suite", choices=tuple(reproduce.SUITES))
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(handler=cmd_reproduce)

    p = commands.add_parser("history", parents=[common], help="list stored reproduce criteria")
    p.add_argument("--suite")
    p.add_argument("--limit", type=int, default=20)
    p.set_defaults(handler=cmd_history)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parses ``argv``, runs the subcommand and writes its output.

    :return: 0 on success, 1 on a domain error or a failed check, 2 on a usage error.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    _configure_logging(args.verbose)
    try:
        config = RunConfig(
            subcommand=f"{args.command} {getattr(args, 'action', '') or ''}".strip(),
            parameters={k: v for k, v in vars(args).items() if k != "handler"},
            seed=args.seed,
            fmt=args.fmt,
            output=args.output,
            guards=DEFAULT_GUARDS.with_overrides(dict(args.guard)),
            database=args.db,
        )
        table = args.handler(config, args)
        text = render(table, config.fmt)
        if config.output:
            Path(config.output).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    except (OpalgError, ValueError, OSError, KeyError) as e:
        logger.debug("%s failed", args.command, exc_info=True)
        print(f"opalg: error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    return table.exit_code


def main() -> None:
    sys.exit(dispatch())
