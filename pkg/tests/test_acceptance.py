"""Acceptance criteria, one test per criterion.

Run with ``pytest tests/test_acceptance.py``; the terminal summary prints one
PASS/FAIL line per criterion. The module can also be executed directly.
"""

import json
import math
import random
import shutil
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

from hopfdiag.boson import (
    ZPolynomial,
    coherent_expectation,
    cumulants_to_moments,
    free_boson_partition_function,
    geometric_trace,
    moments_to_cumulants,
    normal_order,
)
from hopfdiag.combinatorics import (
    IntegerPartition,
    bell_number,
    bell_polynomial,
    enumerate_set_partitions,
    stirling2,
)
from hopfdiag.diagrams import (
    connected_sums,
    enumerate_bell_diagrams,
    enumerate_diag_diagrams,
    pfi_by_diagrams,
    pfi_by_series,
)
from hopfdiag.exact_core import EGFSeries, series_exp, series_log
from hopfdiag.hopf import BELL, DIAG, check_hopf_axioms, check_hopf_morphism, phi_bell, phi_contract


def seeded_weights(seed=5, trials=50, max_order=6):
    rng = random.Random(seed)
    out = []
    for _ in range(trials):
        N = rng.randint(1, max_order)
        L = [Fraction(rng.randint(-7, 7), rng.randint(1, 6)) for _ in range(N)]
        V = [Fraction(rng.randint(-7, 7), rng.randint(1, 6)) for _ in range(N)]
        out.append((N, L, V))
    return out


def complete_bell_by_partitions(n, w):
    """Oracle: sum over set partitions of prod w[|block|]."""
    total = Fraction(0)
    for p in enumerate_set_partitions(n):
        term = Fraction(1)
        for b in p.blocks:
            term *= w[len(b) - 1]
        total += term
    return total


def test_criterion_01_bell_stirling():
    for n in range(9):
        assert sum(stirling2(n, k) for k in range(n + 1)) == bell_number(n) == len(enumerate_set_partitions(n))


def test_criterion_02_egf_identity():
    rng = random.Random(202)
    for _ in range(5):
        y = Fraction(rng.randint(-9, 9), rng.randint(1, 7))
        F = series_exp(EGFSeries.from_coeffs([0] + [y] * 10, 10))
        for n in range(11):
            expected = sum(c * y**k for k, c in enumerate(bell_polynomial(n)))
            assert F.coeffs[n] == expected


def test_criterion_03_normal_order_bell_bridge():
    for n in range(9):
        poly = coherent_expectation(normal_order("DA" * n))
        assert poly == ZPolynomial.from_y(bell_polynomial(n))


def test_criterion_04_moment_cumulant_roundtrip():
    rng = random.Random(404)

    def rand_poly():
        return ZPolynomial({(rng.randint(0, 2), rng.randint(0, 2)): Fraction(rng.randint(-5, 5), rng.randint(1, 4))
                            for _ in range(3)})

    for _ in range(25):
        W = [ZPolynomial.one()] + [rand_poly() for _ in range(6)]
        assert cumulants_to_moments(moments_to_cumulants(W)) == W
        V = [rand_poly() for _ in range(6)]
        assert moments_to_cumulants(cumulants_to_moments(V)) == V

    bells = [ZPolynomial.from_y(bell_polynomial(n)) for n in range(7)]
    assert moments_to_cumulants(bells) == [ZPolynomial({(1, 1): 1})] * 6


def test_criterion_05_dual_evaluation_and_census():
    for N, L, V in seeded_weights():
        by_diagrams = pfi_by_diagrams(N, L, V)
        assert by_diagrams == pfi_by_series(N, L, V)
        for n in range(N + 1):
            assert by_diagrams.coeffs[n] == complete_bell_by_partitions(n, L) * complete_bell_by_partitions(n, V)
    for n in range(7):
        assert enumerate_diag_diagrams(n).total() == bell_number(n) ** 2


def test_criterion_06_connected_graph_theorem():
    for N, L, V in seeded_weights():
        assert series_log(pfi_by_series(N, L, V)) == connected_sums(N, L, V)


def test_criterion_07_bell_shape_tables():
    tables = {n: enumerate_bell_diagrams(n) for n in (1, 2, 3)}
    assert [sum(m for _, m in tables[n]) for n in (1, 2, 3)] == [1, 2, 5]
    assert tables[3] == [(IntegerPartition((3,)), 1), (IntegerPartition((2, 1)), 3), (IntegerPartition((1, 1, 1)), 1)]


def test_criterion_08_hopf_axioms():
    for algebra, grade in ((BELL, 5), (DIAG, 4)):
        report = check_hopf_axioms(algebra, grade)
        assert report.passed, json.dumps(report.to_json())
        assert report["antipode"].checked > 0


def test_criterion_09_morphism_claim():
    good = check_hopf_morphism(phi_bell(4), 4)
    assert good.passed and good.info["surjective"] is True
    bad = check_hopf_morphism(phi_contract(4), 4)
    assert not bad["coalgebra"].passed
    assert bad["coalgebra"].counterexample is not None


def test_criterion_10_free_boson_z():
    for x in (0.1, 0.5, 1, 2, 5):
        assert abs(free_boson_partition_function(x) - geometric_trace(x)) < 1e-10
        assert math.isfinite(free_boson_partition_function(x))


CLI_RUNS = [
    ["bell", "--n", "7"],
    ["bell", "--n", "5", "--format", "text"],
    ["normal-order", "--word", "A a A a"],
    ["normal-order", "--word", "a A", "--format", "text"],
    ["pfi", "--N", "4", "--L", "1,0", "--V", "1,1,1"],
    ["pfi", "--N", "3", "--word", "A a", "--format", "text"],
    ["diagrams", "--n", "3", "--dot", "{tmp}/dot"],
    ["diagrams", "--n", "4", "--connected-only", "--format", "text"],
    ["hopf-check", "--algebra", "bell", "--grade", "4"],
    ["hopf-check", "--algebra", "diag", "--grade", "3"],
    ["morphism-check", "--map", "bell", "--grade", "3"],
    ["morphism-check", "--map", "contract", "--grade", "2"],
    ["morphism-check", "--map", "{tmp}/zero.json", "--grade", "2"],
    ["cumulants", "--word", "A a", "--N", "5"],
    ["cumulants", "--moments", "{tmp}/moments.json", "--check-roundtrip", "--format", "text"],
    ["partition-function", "--beta-eps", "1.0"],
]


def _run_all(tmp: Path) -> list[tuple[int, bytes]]:
    tmp.mkdir(parents=True, exist_ok=True)
    shutil.rmtree(tmp / "dot", ignore_errors=True)
    (tmp / "zero.json").write_text(json.dumps({"default": {"terms": []}}))
    (tmp / "moments.json").write_text(json.dumps({"moments": [1, 1, 1, 1, 1]}))
    outputs = []
    for argv in CLI_RUNS:
        args = [a.replace("{tmp}", str(tmp)) for a in argv]
        proc = subprocess.run([sys.executable, "-m", "hopfdiag", *args], capture_output=True, check=False)
        outputs.append((proc.returncode, proc.stdout))
    dot_dir = tmp / "dot"
    for path in sorted(dot_dir.iterdir()):
        outputs.append((0, path.name.encode() + b"\n" + path.read_bytes()))
    return outputs


def test_criterion_11_cli_determinism(tmp_path):
    # same arguments both times; the DOT directory is recreated
    first = _run_all(tmp_path)
    second = _run_all(tmp_path)
    assert first == second
    codes = [code for code, _ in first[: len(CLI_RUNS)]]
    assert codes.count(3) == 1 and set(codes) == {0, 3}


if __name__ == "__main__":
    import pytest

    sys.exit(pytest.main([__file__, "-q"]))
