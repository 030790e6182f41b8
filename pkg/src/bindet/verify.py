"""Seeded randomized and exhaustive checks of every identity against the oracle.

Each suite draws instances from an :class:`InstanceGen`. Draw ``t`` of a
generator depends only on ``(seed, shape, t)``, so a failing trial can be
replayed on its own and suites may run trials on several threads without
changing the report.
"""
from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .binomial import pi, q_quotient, rat_str, submatrix, superfactorial, vandermonde
from .errors import PreconditionError
from .formulas import (
    Method,
    counting_identity_lhs,
    det,
    det_punctured_prefix,
    size_reduction_expand,
)
from .indexsets import IndexSet, IntervalSpec, format_indexset, interval, leq, reflect
from .interchange import double_interchange, interchange, pi_product_identity_report
from .nullspace import annihilates, nullspace_cramer, nullspace_family, nullspace_lambda
from .oracle import det_bareiss, rank

SHAPES = (
    "general",
    "J_leq_I",
    "rows_interval",
    "cols_interval",
    "both_intervals",
    "punctured_rows",
    "punctured_cols",
    "nullspace_family",
)

# Shapes cycled through (by draw counter) when a suite checks closed forms.
STRUCTURED_SHAPES = (
    "J_leq_I",
    "rows_interval",
    "cols_interval",
    "both_intervals",
    "punctured_rows",
    "punctured_cols",
)


@dataclass(frozen=True)
class Instance:
    rows: IndexSet
    cols: IndexSet
    params: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"rows": format_indexset(self.rows), "cols": format_indexset(self.cols)}
        out.update(self.params)
        return out


@dataclass(frozen=True)
class InstanceGen:
    """Deterministic instance stream.

    ``max_d`` bounds the determinant size and ``max_index`` every row or
    column index. ``shape=None`` lets each suite use its natural shape.
    """

    seed: int = 0
    max_d: int = 6
    max_index: int = 20
    shape: Optional[str] = None

    def __post_init__(self) -> None:
        if self.shape is not None and self.shape not in SHAPES:
            raise PreconditionError(f"unknown shape {self.shape!r}")
        if self.max_d < 1 or self.max_index < 1:
            raise PreconditionError("max_d and max_index must be positive")

    def rng(self, shape: str, counter: int) -> random.Random:
        return random.Random(f"{self.seed}/{shape}/{counter}")

    def draw(self, counter: int, shape: Optional[str] = None) -> Instance:
        shape = shape or self.shape or "general"
        return _DRAWERS[shape](self, self.rng(shape, counter))


def _subset(rng: random.Random, size: int, hi: int) -> IndexSet:
    return IndexSet(tuple(sorted(rng.sample(range(hi + 1), size))))


def _below(rng: random.Random, I: IndexSet) -> IndexSet:
    """J <= I drawn componentwise: j_t uniform in [j_{t-1} + 1, i_t]."""
    out, lo = [], 0
    for i in I:
        j = rng.randint(lo, i)
        out.append(j)
        lo = j + 1
    return IndexSet(tuple(out))


def _draw_general(g: InstanceGen, rng: random.Random) -> Instance:
    d = rng.randint(1, min(g.max_d, g.max_index + 1))
    return Instance(_subset(rng, d, g.max_index), _subset(rng, d, g.max_index))


def _draw_j_leq_i(g: InstanceGen, rng: random.Random) -> Instance:
    d = rng.randint(1, min(g.max_d, g.max_index + 1))
    I = _subset(rng, d, g.max_index)
    return Instance(I, _below(rng, I))


def _draw_rows_interval(g: InstanceGen, rng: random.Random) -> Instance:
    d = rng.randint(1, min(g.max_d, g.max_index + 1))
    i = rng.randint(0, g.max_index - d + 1)
    I = interval(i, i + d - 1)
    return Instance(I, _below(rng, I), {"i": i, "d": d})


def _draw_cols_interval(g: InstanceGen, rng: random.Random) -> Instance:
    d = rng.randint(1, min(g.max_d, g.max_index + 1))
    I = _subset(rng, d, g.max_index)
    j = rng.randint(0, I.first)
    return Instance(I, interval(j, j + d - 1), {"j": j})


def _draw_both(g: InstanceGen, rng: random.Random) -> Instance:
    d = rng.randint(1, min(g.max_d, g.max_index + 1))
    i = rng.randint(0, g.max_index - d + 1)
    j = rng.randint(0, i)
    return Instance(interval(i, i + d - 1), interval(j, j + d - 1), {"i": i, "j": j, "d": d})


def _draw_punctured_rows(g: InstanceGen, rng: random.Random) -> Instance:
    # Rows [i, i+D-1] minus i+r-1 against columns [j, j+D-2]; size D-1 <= max_d.
    D = rng.randint(2, min(g.max_d + 1, g.max_index + 1))
    i = rng.randint(0, g.max_index - D + 1)
    j = rng.randint(0, i)
    r = rng.randint(1, D)
    rows = IntervalSpec(i, i + D - 1, i + r - 1).to_indexset()
    return Instance(rows, interval(j, j + D - 2), {"i": i, "d": D, "j": j, "r": r})


def _draw_punctured_cols(g: InstanceGen, rng: random.Random) -> Instance:
    # Rows [i, i+D-2] against columns [j, j+D-1] minus j+r-1, with j <= i-1.
    D = rng.randint(2, min(g.max_d + 1, g.max_index))
    i = rng.randint(1, g.max_index - D + 2)
    j = rng.randint(0, i - 1)
    r = rng.randint(1, D)
    cols = IntervalSpec(j, j + D - 1, j + r - 1).to_indexset()
    return Instance(interval(i, i + D - 2), cols, {"i": i, "d": D, "j": j, "r": r})


def _draw_nullspace(g: InstanceGen, rng: random.Random) -> Instance:
    d = rng.randint(3, max(3, g.max_d))
    i = rng.randint(0, g.max_index)
    j = rng.randint(1, i + 1)
    I, J = nullspace_family(i, d, j)
    return Instance(I, J, {"i": i, "d": d, "j": j})


_DRAWERS: dict[str, Callable[[InstanceGen, random.Random], Instance]] = {
    "general": _draw_general,
    "J_leq_I": _draw_j_leq_i,
    "rows_interval": _draw_rows_interval,
    "cols_interval": _draw_cols_interval,
    "both_intervals": _draw_both,
    "punctured_rows": _draw_punctured_rows,
    "punctured_cols": _draw_punctured_cols,
    "nullspace_family": _draw_nullspace,
}


@dataclass
class Failure:
    instance: dict
    expected: object
    got: object
    replay: str


@dataclass
class SuiteReport:
    suite: str
    trials: int
    failures: list[Failure] = field(default_factory=list)
    elapsed_ms: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        return out


def _replay(verb: str, inst: Instance, extra: str = "") -> str:
    cmd = f"bindet {verb} --rows {format_indexset(inst.rows)} --cols {format_indexset(inst.cols)}"
    return cmd + extra


# A check returns a list of (expected, got) mismatches plus optional notes.
Check = Callable[[Instance], list]


def closed_form_values(I: IndexSet, J: IndexSet) -> dict[str, int]:
    """Every closed form that applies to (I, J), keyed by method name."""
    out = {}
    for m in Method:
        if m in (Method.AUTO, Method.ORACLE):
            continue
        try:
            out[m.value] = det(I, J, method=m).value
        except PreconditionError:
            pass
    # The j = 0 special case of consecutive rows with a punctured column interval.
    spec = J.punctured_form()
    if spec is not None and spec.lo == 0 and I.is_interval() and I.first >= 1:
        D = len(I) + 1
        out["punctured_prefix"] = det_punctured_prefix(I.first, D, spec.punctured_at + 1)
    return out


def _oracle_equivalence(inst: Instance) -> tuple[list, list[str]]:
    truth = det_bareiss(submatrix(inst.rows, inst.cols))
    values = closed_form_values(inst.rows, inst.cols)
    bad = [(truth, {name: v}) for name, v in values.items() if v != truth]
    return bad, list(values)


def _check_oracle_equivalence(inst: Instance) -> list:
    return _oracle_equivalence(inst)[0]


def _check_positivity(inst: Instance) -> list:
    value = det_bareiss(submatrix(inst.rows, inst.cols))
    expected_positive = leq(inst.cols, inst.rows)
    if value < 0 or (value > 0) != expected_positive:
        return [("positive" if expected_positive else "zero", value)]
    return []


def _check_size_reduction(inst: Instance) -> list:
    I, J = inst.rows, inst.cols
    truth = det_bareiss(submatrix(I, J))
    if len(I) < 2:
        return []
    total = sum(
        det_bareiss(submatrix(t.reduced_rows, t.reduced_cols))
        for t in size_reduction_expand(I, J)
    )
    got = pi(I, J) * total
    return [] if got == truth else [(truth, rat_str(got))]


def _check_max_rank(inst: Instance) -> list:
    # rows [i, i+d-1]; cols is a d-subset of [0, i+d-1]
    I, J = inst.rows, inst.cols
    bad = []
    if not leq(J, I):
        bad.append(("J <= I", False))
    value = det_bareiss(submatrix(I, J))
    if value <= 0:
        bad.append(("det > 0", value))
    rk = rank(submatrix(I, J))
    if rk != len(I):
        bad.append((len(I), rk))
    return bad


def _check_nullspace(inst: Instance) -> list:
    i, d, j = inst.params["i"], inst.params["d"], inst.params["j"]
    bad = []
    cramer = nullspace_cramer(inst.rows, inst.cols)
    form, vec = nullspace_lambda(i, d, j, check=False)
    if not annihilates(cramer.coeffs, inst.rows, inst.cols):
        bad.append(("cramer annihilates", False))
    if not annihilates(vec.coeffs, inst.rows, inst.cols):
        bad.append(("lambda annihilates", False))
    if not _proportional(cramer.coeffs, vec.coeffs):
        bad.append(([rat_str(c) for c in cramer.coeffs], [rat_str(c) for c in vec.coeffs]))
    if tuple(form.lam * c for c in vec.coeffs) != cramer.coeffs:
        bad.append(("cramer = lambda * vector", rat_str(form.lam)))
    return bad


def _proportional(a, b) -> bool:
    pivot = next((t for t, x in enumerate(a) if x != 0), None)
    if pivot is None or b[pivot] == 0:
        return False
    ratio = Fraction(b[pivot]) / Fraction(a[pivot])
    return all(Fraction(y) == ratio * x for x, y in zip(a, b))


def _interchange_params(inst: Instance, rng: random.Random) -> tuple[int, int]:
    n = inst.rows.last + rng.randint(0, 6)
    return n, n + rng.randint(0, 6)


def _check_interchange(inst: Instance) -> list:
    I, J = inst.rows, inst.cols
    n, m = inst.params["n"], inst.params["m"]
    truth = det_bareiss(submatrix(I, J))
    bad = []
    res = interchange(I, J, n, verify=False)
    got = res.q_factor * det_bareiss(submatrix(res.new_rows, res.new_cols))
    if got != truth:
        bad.append((truth, rat_str(got)))
    factor, I2, J2 = double_interchange(I, J, n, m)
    got2 = factor * det_bareiss(submatrix(I2, J2))
    if got2 != truth:
        bad.append((truth, rat_str(got2)))
    for a, b in ((J, I), (reflect(I, n), reflect(J, n))):
        qq = q_quotient(a, b, n) * q_quotient(b, a, n)
        if qq != 1:
            bad.append((1, rat_str(qq)))
    return bad


def _check_pi_product(inst: Instance) -> list:
    rep = pi_product_identity_report(inst.params["i"], len(inst.rows), inst.cols, inst.params["n"])
    bad = []
    if rep.pi_product != rep.det:
        bad.append((rep.det, rat_str(rep.pi_product)))
    if not rep.matching:
        bad.append((rep.det, {k: rat_str(v) for k, v in rep.readings.items()}))
    return bad


def _check_counting(inst: Instance) -> list:
    I = inst.rows
    want = Fraction(vandermonde(I), superfactorial(len(I) - 1))
    got = counting_identity_lhs(I)
    return [] if got == want else [(rat_str(want), got)]


@dataclass(frozen=True)
class _Suite:
    check: Check
    shapes: tuple[str, ...]
    verb: str
    prepare: Optional[Callable[[Instance, random.Random], Instance]] = None


def _with_n_m(inst: Instance, rng: random.Random) -> Instance:
    n, m = _interchange_params(inst, rng)
    return Instance(inst.rows, inst.cols, {**inst.params, "n": n, "m": m})


def _with_n(inst: Instance, rng: random.Random) -> Instance:
    n = inst.rows.last + rng.randint(0, 6)
    return Instance(inst.rows, inst.cols, {**inst.params, "n": n})


def _max_rank_instance(inst: Instance, rng: random.Random) -> Instance:
    i, d = inst.params["i"], inst.params["d"]
    J = IndexSet(tuple(sorted(rng.sample(range(i + d), d))))
    return Instance(inst.rows, J, inst.params)


def _rows_only(inst: Instance, rng: random.Random) -> Instance:
    return Instance(inst.rows, inst.rows, {})


SUITES: dict[str, _Suite] = {
    "oracle-equivalence": _Suite(_check_oracle_equivalence, STRUCTURED_SHAPES, "det"),
    "positivity": _Suite(_check_positivity, ("general", "J_leq_I"), "det"),
    "size-reduction-sum": _Suite(_check_size_reduction, ("J_leq_I",), "expand"),
    "max-rank": _Suite(_check_max_rank, ("rows_interval",), "det", _max_rank_instance),
    "nullspace-annihilation": _Suite(_check_nullspace, ("nullspace_family",), "nullspace"),
    "interchange": _Suite(_check_interchange, ("J_leq_I",), "interchange", _with_n_m),
    "pi-product": _Suite(_check_pi_product, ("rows_interval",), "interchange", _with_n),
    "counting-identity": _Suite(_check_counting, ("general",), "det", _rows_only),
}

EXHAUSTIVE = ("positivity-exhaustive", "max-rank-exhaustive", "counting-identity-exhaustive")
SUITE_NAMES = tuple(SUITES) + ("counterexample-fixtures",) + EXHAUSTIVE


def _replay_for(suite: str, verb: str, inst: Instance) -> str:
    if verb == "interchange":
        extra = f" --n {inst.params['n']}"
        if "m" in inst.params:
            extra += f" --m {inst.params['m']}"
        if suite == "pi-product":
            extra += " --pi-product"
        return _replay(verb, inst, extra)
    if suite == "counting-identity":
        return f"bindet expand --rows {format_indexset(inst.rows)} --count"
    return _replay(verb, inst)


def run_suite(name: str, gen: InstanceGen, trials: int, workers: int = 1) -> SuiteReport:
    """Run the named property over ``trials`` generated instances.

    Exhaustive suites and ``counterexample-fixtures`` ignore ``trials`` and
    the generator's randomness but honour ``max_d`` and ``max_index``.
    """
    start = time.perf_counter()
    if name == "counterexample-fixtures":
        report = _counterexample_fixtures()
    elif name in EXHAUSTIVE:
        report = _EXHAUSTIVE_RUNNERS[name](gen)
    elif name in SUITES:
        report = _run_random(name, SUITES[name], gen, trials, workers)
    else:
        raise PreconditionError(f"unknown suite {name!r}; known: {', '.join(SUITE_NAMES)}")
    report.elapsed_ms = (time.perf_counter() - start) * 1000.0
    return report


def _run_random(name: str, suite: _Suite, gen: InstanceGen, trials: int, workers: int) -> SuiteReport:
    shapes = (gen.shape,) if gen.shape is not None else suite.shapes

    def one(t: int) -> tuple:
        shape = shapes[t % len(shapes)]
        inst = gen.draw(t, shape)
        if suite.prepare is not None:
            inst = suite.prepare(inst, gen.rng(f"{name}:prepare", t))
        if name != "oracle-equivalence":
            return inst, suite.check(inst)
        bad, used = _oracle_equivalence(inst)
        return inst, bad, used

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, range(trials)))
    else:
        results = [one(t) for t in range(trials)]
    report = SuiteReport(name, trials)
    if name == "oracle-equivalence":
        coverage: dict[str, int] = {}
        for _, _, used in results:
            for m in used:
                coverage[m] = coverage.get(m, 0) + 1
        report.notes["coverage"] = dict(sorted(coverage.items()))
        results = [r[:2] for r in results]
    for inst, bad in results:
        for expected, got in bad:
            report.failures.append(
                Failure(inst.to_json(), expected, got, _replay_for(name, suite.verb, inst))
            )
    if name == "pi-product":
        counts: dict[str, int] = {}
        for inst, _ in results:
            rep = pi_product_identity_report(
                inst.params["i"], len(inst.rows), inst.cols, inst.params["n"]
            )
            for reading in rep.matching:
                counts[reading] = counts.get(reading, 0) + 1
        report.notes["reading_matches"] = counts
        report.notes["always_matching"] = sorted(r for r, c in counts.items() if c == trials)
    return report


def _counterexample_fixtures() -> SuiteReport:
    report = SuiteReport("counterexample-fixtures", 0)
    cases = [
        ((2, 3), (0, 2), 2),
        ((1, 3), (0, 1), 2),
        ((3,), (0,), 1),
    ]
    for rows, cols, want in cases:
        report.trials += 1
        inst = Instance(IndexSet(rows), IndexSet(cols))
        for got in (det_bareiss(submatrix(rows, cols)), det(rows, cols).value):
            if got != want:
                report.failures.append(
                    Failure(inst.to_json(), want, got, _replay("det", inst))
                )
    # Removing the common part of I and J changes the value for non-intervals.
    report.trials += 1
    if det((2, 3), (0, 2)).value == det((3,), (0,)).value:
        report.failures.append(
            Failure({"rows": "2..3", "cols": "0,2"}, "differs from det(3; 0)", "equal", "")
        )
    return report


def _exhaustive_positivity(gen: InstanceGen) -> SuiteReport:
    """All (I, J) of equal size d <= max_d with indices < 8."""
    bound = min(gen.max_index, 7)
    report = SuiteReport("positivity-exhaustive", 0)
    for d in range(1, gen.max_d + 1):
        subsets = [IndexSet(c) for c in itertools.combinations(range(bound + 1), d)]
        for I in subsets:
            for J in subsets:
                report.trials += 1
                inst = Instance(I, J)
                for expected, got in _check_positivity(inst):
                    report.failures.append(Failure(inst.to_json(), expected, got, _replay("det", inst)))
    return report


def _exhaustive_max_rank(gen: InstanceGen) -> SuiteReport:
    """Every d x d minor of rows [i, i+d-1] x columns [0, i+d-1]."""
    report = SuiteReport("max-rank-exhaustive", 0)
    for d in range(1, gen.max_d + 1):
        for i in range(0, min(gen.max_index, 8) + 1):
            I = interval(i, i + d - 1)
            full = submatrix(I, interval(0, i + d - 1))
            if rank(full) != d:
                report.failures.append(
                    Failure({"rows": format_indexset(I), "cols": f"0..{i + d - 1}"}, d, rank(full), "")
                )
            for cols in itertools.combinations(range(i + d), d):
                report.trials += 1
                inst = Instance(I, IndexSet(cols))
                value = det_bareiss(submatrix(I, inst.cols))
                if value == 0:
                    report.failures.append(Failure(inst.to_json(), "nonzero", 0, _replay("det", inst)))
    return report


def _exhaustive_counting(gen: InstanceGen) -> SuiteReport:
    """Every I with |I| <= max_d and indices <= 12."""
    bound = min(gen.max_index, 12)
    report = SuiteReport("counting-identity-exhaustive", 0)
    for d in range(1, gen.max_d + 1):
        for c in itertools.combinations(range(bound + 1), d):
            report.trials += 1
            inst = Instance(IndexSet(c), IndexSet(c))
            for expected, got in _check_counting(inst):
                report.failures.append(
                    Failure({"rows": format_indexset(inst.rows)}, expected, got, _replay_for("counting-identity", "det", inst))
                )
    return report


_EXHAUSTIVE_RUNNERS = {
    "positivity-exhaustive": _exhaustive_positivity,
    "max-rank-exhaustive": _exhaustive_max_rank,
    "counting-identity-exhaustive": _exhaustive_counting,
}
