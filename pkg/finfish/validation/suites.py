"""Cross-validation suites.

Every suite is deterministic for its parameters and returns a SuiteReport
carrying the smallest failing key, if any.
"""

import functools
import logging
import math
import time
from collections import Counter
from fractions import Fraction
from typing import Callable, Dict, Optional, Tuple

from finfish.core.config import Settings, settings as default_settings
from finfish.core.errors import FinfishError
from finfish.data.tables import FISH_FIELDS, TREE_FIELDS, JointTable
from finfish.fish.grammar import (
    build,
    decompose,
    enumerate_terms,
    enumerated_distribution,
    joint_distribution,
    realized_stats,
)
from finfish.fish.oracle import census, enumerate_by_area
from finfish.fish.surface import canonical_code, fin
from finfish.formulas.closed_forms import (
    fish_count,
    fish_count_ij,
    fish_count_ij_factorial,
    marked_tail_count,
    marked_tail_count_lagrange_form,
    ternary_tree_count,
)
from finfish.series.catalog import (
    build_B,
    build_marked,
    build_P,
    build_Pu_param,
    build_RS,
    build_tree_series,
    build_U_V,
    p1_from_B,
)
from finfish.series.lagrange import (
    bivariate_lagrange,
    direct_extraction,
    fish_count_by_lagrange,
    marked_tail_count_by_lagrange,
    random_systems,
)
from finfish.series.mseries import MSeries, SeriesRing
from finfish.trees.ternary import (
    enumerate_trees,
    joint_distribution_trees,
    tree_stats,
)
from finfish.validation.report import AreaReport, AreaRow, SuiteReport, Tally

logger = logging.getLogger(__name__)

# Non-polyomino and non-planar fish known to exist at small areas.
NON_POLYOMINO_BY_AREA = {1: 0, 2: 0, 3: 0, 4: 2}
NON_PLANAR_BY_AREA = {1: 0, 2: 0, 3: 0, 4: 0, 5: 1}


def timed(fn: Callable[..., SuiteReport]) -> Callable[..., SuiteReport]:
    @functools.wraps(fn)
    def wrapper(*args, **kwargs) -> SuiteReport:
        started = time.perf_counter()
        report = fn(*args, **kwargs)
        report.seconds = round(time.perf_counter() - started, 3)
        status = "✅" if report.passed else "❌"
        logger.info(f"{status} Suite {report.suite}: {report.checked} checks in {report.seconds}s")
        return report

    return wrapper


def _finish(suite: str, params: dict, tally: Tally, **notes) -> SuiteReport:
    return SuiteReport(
        suite=suite,
        params=params,
        passed=tally.passed,
        checked=tally.checked,
        failure=tally.failure,
        notes=notes,
    )


def _compare_tables(tally: Tally, check: str, expected: JointTable, actual: JointTable) -> None:
    rows = max(len(expected), len(actual))
    diff = expected.first_difference(actual)
    if diff is None:
        tally.checked += rows
        return
    tally.checked += rows - 1
    key, want, got = diff
    tally.compare(check, key, want, got)


# -- closed formulas ------------------------------------------------------------

@timed
def check_formulas(max_n: int, config: Settings = default_settings) -> SuiteReport:
    """Grammar enumeration against the closed formulas for sizes up to max_n + 1."""
    tally = Tally()
    max_size = max_n + 1
    table = enumerated_distribution(max_size, config=config)

    by_size = table.marginal("size")
    for n in range(1, max_n + 1):
        tally.compare("count by size", (n + 1,), fish_count(n), by_size.get(n + 1, 0))

    by_sides = table.marginal("lsize", "rsize")
    tails: Counter = Counter()
    for (size, h, r, l, f), count in table.items():
        tails[(l, r)] += h * count
    for i in range(1, max_size):
        for j in range(1, max_size + 1 - i):
            tally.compare("count by (lsize, rsize)", (i, j), fish_count_ij(i, j), by_sides.get((i, j), 0))
            tally.compare("marked tails by (lsize, rsize)", (i, j), marked_tail_count(i, j), tails.get((i, j), 0))

    _compare_tables(tally, "grammar DP vs enumeration", table, joint_distribution(max_size))

    for n in range(1, 31):
        total = sum(fish_count_ij(i, n + 1 - i) for i in range(1, n + 1))
        tally.compare("sum over i+j=n+1", (n,), fish_count(n), total)
    for i in range(1, 31):
        for j in range(1, 31):
            value = fish_count_ij(i, j)
            tally.compare("factorial form", (i, j), value, fish_count_ij_factorial(i, j))
            tally.compare("symmetry", (i, j), value, fish_count_ij(j, i))
            tally.compare("marked symmetry", (i, j), marked_tail_count(i, j), marked_tail_count(j, i))
            tally.require("marked >= unmarked", (i, j), marked_tail_count(i, j) >= value)
            if i >= 2 and j >= 2:
                tally.compare("marked Lagrange form", (i, j), marked_tail_count(i, j), marked_tail_count_lagrange_form(i, j))
    return _finish("formulas", {"max_n": max_n}, tally)


# -- series vs enumeration ------------------------------------------------------------

def table_from_series(P: MSeries) -> JointTable:
    """Read fish counts off P(u): t^(s-1) y^(h-1) a^(r-1) b^(l-1) u^(f-1)."""
    table = JointTable(FISH_FIELDS)
    for k, (y, a, b, u), value in P.items():
        table.add((k + 1, y + 1, a + 1, b + 1, u + 1), value)
    return table


@timed
def check_series_vs_enum(
    order: int, max_size: Optional[int] = None, config: Settings = default_settings
) -> SuiteReport:
    """P(u) against the grammar DP to ``order`` and against enumerated terms up to ``max_size``."""
    max_size = min(order + 1, max_size if max_size is not None else config.suite_max_size)
    tally = Tally()
    P = build_P(SeriesRing(order))
    tally.compare("constant term", (0,), {}, P.coeffs[0])
    _compare_tables(tally, "P(u) vs grammar", joint_distribution(order + 1), table_from_series(P))
    enumerated = enumerated_distribution(max_size, config=config)
    _compare_tables(
        tally,
        "P(u) vs enumeration",
        enumerated,
        table_from_series(P).filter(size=max_size),
    )
    return _finish("series", {"order": order, "max_size": max_size}, tally)


# -- oracle ------------------------------------------------------------------

@timed
def check_oracle(max_area: int, config: Settings = default_settings) -> SuiteReport:
    """Growth-oracle fish against grammar-built fish, plus the shape census."""
    tally = Tally()
    oracle = enumerate_by_area(max_area, config=config)
    grammar: Dict[bytes, int] = {}
    for term in enumerate_terms(max_area + 1, config=config):
        if term.area > max_area:
            continue
        complex_ = build(term)
        tally.compare("symbolic area", (term.area, str(term)), term.area, complex_.cell_count)
        grammar[canonical_code(complex_)] = complex_.cell_count

    tally.compare("fish count", (max_area,), len(oracle), len(grammar))
    for code in sorted(set(oracle) - set(grammar)):
        tally.compare("grown but not built", (oracle[code].cell_count, code.decode()), True, False)
    for code in sorted(set(grammar) - set(oracle)):
        tally.compare("built but not grown", (grammar[code], code.decode()), True, False)

    rows = census(oracle)
    for row in rows:
        if row.area in NON_POLYOMINO_BY_AREA:
            tally.compare("non-polyomino census", (row.area,), NON_POLYOMINO_BY_AREA[row.area], row.non_polyomino)
        if row.area in NON_PLANAR_BY_AREA:
            tally.compare("non-planar census", (row.area,), NON_PLANAR_BY_AREA[row.area], row.non_planar)
    return _finish(
        "oracle",
        {"max_area": max_area},
        tally,
        census=[row.model_dump() for row in rows],
    )


@timed
def check_roundtrip(max_size: int, max_area: int, config: Settings = default_settings) -> SuiteReport:
    """decompose(build(t)) == t, symbolic statistics == realized ones, and build(decompose(c)) ~ c."""
    tally = Tally()
    for term in enumerate_terms(max_size, config=config):
        key = (term.size, str(term))
        complex_ = build(term)
        try:
            back = decompose(complex_)
        except FinfishError as exc:
            tally.compare("decompose(build(t))", key, str(term), f"error: {exc}")
            continue
        tally.compare("decompose(build(t))", key, str(term), str(back))
        tally.compare("realized statistics", key, term.stats, realized_stats(term))
        _, word = fin(complex_)
        tally.compare("realized fin word", key, term.fin_word, word)

    for code, complex_ in sorted(enumerate_by_area(max_area, config=config).items()):
        key = (complex_.cell_count, code.decode())
        try:
            rebuilt = canonical_code(build(decompose(complex_)))
        except FinfishError as exc:
            tally.compare("build(decompose(c))", key, code.decode(), f"error: {exc}")
            continue
        tally.compare("build(decompose(c))", key, code.decode(), rebuilt.decode())
    return _finish("roundtrip", {"max_size": max_size, "max_area": max_area}, tally)


# -- fish and trees ------------------------------------------------------------

@timed
def check_fincore(max_size: int, config: Settings = default_settings) -> SuiteReport:
    """Fish by (size, fin) against left ternary trees by (nodes + 1, core + 1)."""
    tally = Tally()
    fish = joint_distribution(max_size)
    trees = joint_distribution_trees(max_size - 1)
    fish_by_fin = JointTable(("size", "fin"), Counter(fish.marginal("size", "fin")))
    trees_by_core = JointTable(("size", "fin"))
    for (nodes, core), count in trees.marginal("nodes", "core").items():
        trees_by_core.add((nodes + 1, core + 1), count)
    _compare_tables(tally, "fin vs core", fish_by_fin, trees_by_core)
    by_nodes = trees.marginal("nodes")
    for n in range(1, max_size):
        tally.compare("left ternary trees by nodes", (n,), fish_count(n), by_nodes.get(n, 0))
    return _finish("fincore", {"max_size": max_size}, tally)


ORIENTATIONS = {
    # tree (nodes, right branches, non-root even, odd, core) from fish (size, tails, rsize, lsize, fin)
    "nonRootEven=lsize-1": lambda k: (k[0] - 1, k[1] - 1, k[3] - 1, k[2] - 1, k[4] - 1),
    "nonRootEven=rsize-1": lambda k: (k[0] - 1, k[1] - 1, k[2] - 1, k[3] - 1, k[4] - 1),
}


@timed
def check_conjecture(max_size: int, config: Settings = default_settings) -> SuiteReport:
    """Full five-statistic fish/tree correspondence under each parity orientation."""
    fish = joint_distribution(max_size)
    trees = joint_distribution_trees(max_size - 1)
    matching = []
    failures = {}
    checked = 0
    for name, mapping in ORIENTATIONS.items():
        tally = Tally()
        _compare_tables(tally, f"conjecture ({name})", trees, fish.remap(TREE_FIELDS, mapping))
        checked += tally.checked
        if tally.passed:
            matching.append(name)
        else:
            failures[name] = tally.failure
    tally = Tally()
    tally.checked = checked
    if not matching:
        # report the smaller counterexample
        tally.failure = min(failures.values(), key=lambda f: (f.key, f.check))
    logger.info(f"🌳 Matching orientations: {matching or 'none'}")
    return _finish("conjecture", {"max_size": max_size}, tally, orientations=matching)


# -- generating-series identities ------------------------------------------------

def _series_ledger(tally: Tally, ring: SeriesRing, label: str) -> None:
    t, y, a, b = ring.t, ring.y, ring.a, ring.b
    live = SeriesRing(ring.order, ring.fixed - {"y"})

    P = build_P(ring)
    B = build_B(ring)
    P1 = p1_from_B(ring, B)
    tally.series(f"{label}: P(1) from the functional equation", P.at_u_one(), P1)

    Bu, Pu = build_Pu_param(ring, check=False)
    tally.series(f"{label}: P(u) parametrization", Pu, P)

    uv = build_U_V(ring, check=False)
    U, V = uv.U, uv.V
    tally.series(f"{label}: U = U'", U, uv.U_prime)

    marked = build_marked(ring, check=False)
    less, greater, minus = marked.less, marked.greater, marked.minus
    PU = P.substitute_u(U)
    tally.series(f"{label}: P> = P(U)", greater, PU)
    tally.series(f"{label}: P< = P(U) - P(1)", less, PU - P1)

    # every boundary point once: nose, tails, branch points and flat points
    points = P1 + P1.euler_t()
    tally.series(f"{label}: marked point total", P1 + 2 * minus + greater + less, 2 * points)
    tally.series(f"{label}: P(1) + P< = P>", P1 + less, greater)
    tally.series(f"{label}: P- + P> = d/dt(tP(1))", minus + greater, points)
    tally.series(f"{label}: V = ytab(P- + P<)", V, y * t * a * b * (minus + less))

    # substitution chain
    one_a, one_b = 1 + a * PU, 1 + b * PU
    tally.series(f"{label}: functional equation at u = U", (U - 1) * PU, t * U * (U - 1) * one_a * one_b + y * t * U * a * b * PU * (PU - P1))
    tally.series(f"{label}: expanded kernel at u = U", U - 1, t * U * (U - 1) * (a + b + 2 * a * b * PU) + y * t * a * b * U * (2 * PU - P1))
    tally.series(f"{label}: P(U) = t(2U-1)(1+aP(U))(1+bP(U)) + ytabP(U)(P(U)-P(1))", PU, t * (2 * U - 1) * one_a * one_b + y * t * a * b * PU * (PU - P1))
    tally.series(f"{label}: P(U) = tU^2(1+aP(U))(1+bP(U))", PU, t * U * U * one_a * one_b)
    w = a * b * PU * PU
    tally.series(f"{label}: U = 1 + yw/(1-w), w = abP(U)^2", U, 1 + y * w / (1 - w))
    tally.series(f"{label}: P(U) = B", PU, B)
    tally.series(f"{label}: P(U) - P(1) = yabP(U)^3(1+aP(U))(1+bP(U))/(1-w)^2", PU - P1, y * a * b * PU ** 3 * one_a * one_b / (1 - w) ** 2)

    # marked-point relations read through the decomposition
    tally.series(f"{label}: V = ytab (DeltaP)(U)", V, y * t * a * b * P.delta().substitute_u(U))
    tally.series(f"{label}: ytab P< = V^2", y * t * a * b * less, V * V)
    tally.series(f"{label}: P> = tU^2(1+aP>)(1+bP>)", greater, t * U * U * (1 + a * greater) * (1 + b * greater))
    tally.series(f"{label}: Delta = u * quotient", P.delta(), ring.u * P.delta_quotient())


def _lagrange_ledger(tally: Tally, order: int) -> None:
    ring = SeriesRing(order, {"y"})
    t, a, b = ring.t, ring.a, ring.b
    B = build_B(ring)
    P1 = p1_from_B(ring, B)
    R, S = build_RS(ring)
    tally.series("R = ta(1+R)(1+S)^2", R, t * a * (1 + R) * (1 + S) ** 2)
    tally.series("S = tb(1+R)^2(1+S)", S, t * b * (1 + R) ** 2 * (1 + S))
    tally.series("B = t(1+R)(1+S)", B, t * (1 + R) * (1 + S))
    tally.series("P(1) = t(1+R)(1+S)(1-RS)", P1, t * (1 + R) * (1 + S) * (1 - R * S))

    for i in range(1, order + 1):
        for j in range(1, order + 2 - i):
            k = i + j - 1
            p_coefficient = P1.coefficient(k, a=i - 1, b=j - 1)
            b_coefficient = B.coefficient(k, a=i - 1, b=j - 1)
            tally.compare("Lagrange fish count", (i, j), p_coefficient, fish_count_by_lagrange(i, j))
            tally.compare("Lagrange marked tails", (i, j), b_coefficient, marked_tail_count_by_lagrange(i, j))
            tally.compare("closed form fish count", (i, j), fish_count_ij(i, j), p_coefficient)

    for system in random_systems():
        key = (system.seed,)
        tally.compare(
            "random Lagrange vs direct",
            key,
            direct_extraction(system.phi1, system.phi2, system.F, system.n1, system.n2),
            bivariate_lagrange(system.phi1, system.phi2, system.F, system.n1, system.n2),
        )


def _tree_ledger(tally: Tally, order: int) -> None:
    ring = SeriesRing(order, {"y", "a", "b"})
    trees = build_tree_series(order, jmax=1, check=False)
    T, X, B, Tu, Bu = trees.T, trees.X, trees.B, trees.Tu, trees.Bu
    tally.series("T = 1/(1-B)", T, 1 / (1 - B))
    tally.series("T - 1 = X/(1+X^2)", T - 1, X / (1 + X * X))
    tally.series("B = X/(1+X+X^2)", B, X / (1 + X + X * X))
    tally.series("B(u) = (T(u)-1)(1-B)", Bu, (Tu - 1) * (1 - B))
    tally.series("T(u) = 1 + B(u)T", Tu, 1 + Bu * T)
    tally.series("tree B = fish B", B, build_B(ring))
    fish_Bu, P = build_Pu_param(ring, check=False)
    tally.series("tree B(u) = fish B(u)", Bu, fish_Bu)
    tally.series("1+P(u) = T(u)(1+B) - T(u)^2 B", 1 + P, Tu * (1 + B) - Tu * Tu * B)
    tally.series("T_0(u) = 1 + P(u)", trees.Tu_j[0], 1 + P)


def _enumeration_ledger(tally: Tally, order: int, max_size: int) -> None:
    """Tails, branch points and lower flat points summed over enumerated fish."""
    ring = SeriesRing(order, {"y", "a", "b", "u"})
    marked = build_marked(ring, check=False)
    max_size = min(order + 1, max_size)
    totals = {"tails": Counter(), "branch points": Counter(), "lower flats": Counter()}
    for (size, h, r, l, f), count in joint_distribution(max_size).items():
        totals["tails"][size] += h * count
        totals["branch points"][size] += (h - 1) * count
        totals["lower flats"][size] += (size - h) * count
    for size in range(2, max_size + 1):
        k = size - 1
        tally.compare("P> vs tails", (size,), marked.greater.coefficient(k), totals["tails"][size])
        tally.compare("P< vs branch points", (size,), marked.less.coefficient(k), totals["branch points"][size])
        tally.compare("P- vs lower flats", (size,), marked.minus.coefficient(k), totals["lower flats"][size])


@timed
def check_identities(
    order: int,
    full_order: Optional[int] = None,
    max_size: Optional[int] = None,
    config: Settings = default_settings,
) -> SuiteReport:
    """Every series identity at y=a=b=1 to ``order`` and with all variables to ``full_order``."""
    full_order = min(order, full_order if full_order is not None else config.full_series_order)
    max_size = max_size if max_size is not None else config.suite_max_size
    tally = Tally()
    _series_ledger(tally, SeriesRing(order, {"y", "a", "b"}), "specialized")
    _series_ledger(tally, SeriesRing(full_order), "full")
    _lagrange_ledger(tally, full_order)
    _tree_ledger(tally, order)
    _enumeration_ledger(tally, order, max_size)
    tally.compare("Lagrange (2,2) fish", (2, 2), 4, fish_count_by_lagrange(2, 2))
    tally.compare("Lagrange (2,2) marked tails", (2, 2), 5, marked_tail_count_by_lagrange(2, 2))
    return _finish("identities", {"order": order, "full_order": full_order, "max_size": max_size}, tally)


# -- trees ----------------------------------------------------------------------

@timed
def check_trees(
    max_nodes: int,
    jmax: int,
    recurrence_order: int = 10,
    recurrence_jmax: int = 6,
    config: Settings = default_settings,
) -> SuiteReport:
    """Tree series against brute-force j-positive trees, plus the T_j(u) recurrence."""
    tally = Tally()
    recurrence = build_tree_series(recurrence_order, recurrence_jmax, check=False)
    ring = SeriesRing(recurrence_order, {"y", "a", "b"})
    tu = ring.t * ring.u
    for j in range(-1, recurrence_jmax + 1):
        rhs = 1 + tu * recurrence.Tu_j[j + 1] * recurrence.Tu_j[j] * recurrence.T_j[j - 1]
        tally.series(f"T_{j}(u) recurrence", recurrence.Tu_j[j], rhs)
    tally.series("T_-1(u) = 1", recurrence.Tu_j[-1], ring.one)

    series = build_tree_series(max_nodes, jmax, check=False)
    previous: Optional[Dict[int, int]] = None
    for j in range(jmax + 1):
        by_nodes: Counter = Counter()
        by_core: Counter = Counter()
        brute = JointTable(TREE_FIELDS)
        for tree in enumerate_trees(j, max_nodes, config=config):
            stats = tree_stats(tree)
            by_nodes[stats.nodes] += 1
            by_core[(stats.nodes, stats.core)] += 1
            brute.add(stats.key)
            if stats.right_branches == 0:
                tally.compare("core of a tree without right edges", (j, str(tree)), stats.nodes, stats.core)
        # the empty tree sits at t^0 u^0
        by_nodes[0] = 1
        by_core[(0, 0)] = 1
        for n in range(max_nodes + 1):
            tally.compare(f"T_{j} vs brute force", (j, n), by_nodes[n], series.T_j[j].coefficient(n))
            for core in range(n + 1):
                tally.compare(
                    f"T_{j}(u) vs brute force", (j, n, core), by_core[(n, core)], series.Tu_j[j].coefficient(n, u=core)
                )
        _compare_tables(tally, f"tree DP vs brute force (j={j})", brute, joint_distribution_trees(max_nodes, j))
        if previous is not None:
            for n in range(1, max_nodes + 1):
                tally.require("monotone in j", (j, n), by_nodes[n] >= previous.get(n, 0))
        previous = dict(by_nodes)
    unrestricted = joint_distribution_trees(max_nodes, max_nodes).marginal("nodes")
    for n in range(1, max_nodes + 1):
        tally.compare("large j is unrestricted", (n,), ternary_tree_count(n), unrestricted.get(n, 0))
    params = {
        "max_nodes": max_nodes,
        "jmax": jmax,
        "recurrence_order": recurrence_order,
        "recurrence_jmax": recurrence_jmax,
    }
    return _finish("trees", params, tally)


# -- area ----------------------------------------------------------------------

def _area_totals(max_size: int, config: Settings) -> Tuple[Counter, Counter, Counter]:
    """Fish count, symbolic area total and realized area total, by size."""
    fish: Counter = Counter()
    symbolic: Counter = Counter()
    realized: Counter = Counter()
    for term in enumerate_terms(max_size, config=config):
        fish[term.size] += 1
        symbolic[term.size] += term.area
        realized[term.size] += build(term).cell_count
    return fish, symbolic, realized


def _area_rows(fish: Counter, area: Counter) -> AreaReport:
    rows = []
    for size in sorted(fish):
        mean = Fraction(area[size], fish[size])
        slope = None
        if rows:
            prev_mean = Fraction(area[size - 1], fish[size - 1])
            slope = round(math.log(mean / prev_mean) / math.log(size / (size - 1)), 6)
        rows.append(
            AreaRow(
                size=size,
                fish=fish[size],
                total_area=area[size],
                mean_area=str(mean),
                ratio=str(mean / size),
                slope=slope,
            )
        )
    means = [Fraction(r.mean_area) for r in rows]
    ratios = [Fraction(r.ratio) for r in rows]
    return AreaReport(
        rows=rows,
        means_increasing=all(x < y for x, y in zip(means, means[1:])),
        ratios_increasing=all(x < y for x, y in zip(ratios, ratios[1:])),
    )


def area_report(max_size: int, realize: bool = False, config: Settings = default_settings) -> AreaReport:
    """Exact mean area per size; slopes are log-ratio estimates, reported only."""
    fish: Counter = Counter()
    area: Counter = Counter()
    for term in enumerate_terms(max_size, config=config):
        fish[term.size] += 1
        area[term.size] += build(term).cell_count if realize else term.area
    return _area_rows(fish, area)


@timed
def check_area(max_size: int, config: Settings = default_settings) -> SuiteReport:
    """Mean areas of realized fish grow with size; symbolic areas agree at every size."""
    tally = Tally()
    fish, symbolic, realized = _area_totals(max_size, config)
    for size in sorted(fish):
        tally.compare("symbolic vs realized total area", (size,), symbolic[size], realized[size])
    report = _area_rows(fish, realized)
    for row in report.rows:
        tally.checked += 1
        if row.size > 2:
            prev = report.rows[row.size - 3]
            tally.require("mean area strictly increasing", (row.size,), Fraction(row.mean_area) > Fraction(prev.mean_area))
            tally.require("mean area / size strictly increasing", (row.size,), Fraction(row.ratio) > Fraction(prev.ratio))
    return _finish("area", {"max_size": max_size}, tally, rows=[r.model_dump() for r in report.rows])
