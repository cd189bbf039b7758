"""One test per acceptance criterion; each prints a single PASS/FAIL line.

Run directly (python tests/test_acceptance.py) for just the ten lines.
"""

import time

import pytest

from greedytheta.dyckpath import maximal_dyck_path
from greedytheta.pairs import enumerate_pairs
from greedytheta.qalgebra import QLaurent
from greedytheta.scattering import enumerate_BL
from greedytheta.verify import (bases_suite, bijection_kron_pos_suite, bijection_mm_suite,
                                bijection_negative_suite, calibrate, density_suite,
                                expansion_suite, realization_suite, recursion_suite,
                                structure_suite)

from oracles import all_pairs

PRINTED_WEIGHT = QLaurent({-60 + 8 * i: c for i, c in
                           enumerate([1, 2, 3, 4, 5, 6, 7, 8, 8, 7, 6, 5, 4, 3, 2, 1])})


def _report(number, title, checks, started, budget, note=""):
    elapsed = time.perf_counter() - started
    failed = [c for c in checks if not c.passed and not c.informational]
    ok = not failed and elapsed < budget
    line = (f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}  "
            f"[{len(checks) - len(failed)}/{len(checks)} checks, {elapsed:.1f}s < {budget}s]")
    if note:
        line += f"  {note}"
    if failed:
        line += f"  first failure: {failed[0].identity} {failed[0].params}"
    return ok, line, failed


class _Simple:
    def __init__(self, identity, passed, params=None):
        self.identity, self.passed, self.params = identity, passed, params or {}
        self.informational = False


def criterion_1():
    t = time.perf_counter()
    line = next(g for g in enumerate_BL(2, 12, 11, 5, 5)
                if g.exponents == ((-12, -11), (-6, -7), (-2, -5), (-2, -1)))
    return _report(1, "example broken-line weight", [_Simple("printed weight",
                   line.weight == PRINTED_WEIGHT)], t, 1)


def criterion_2():
    t = time.perf_counter()
    cal = calibrate()
    checks = [_Simple("calibration", cal.ok)]
    checks += [c for c in expansion_suite(8, cal.chosen, (1, 2, 3), 6)
               if c.identity in ("pair expansion equals X_n", "exchange relation")]
    return _report(2, "quantum expansion equals X_n; exchange relation", checks, t, 30)


def criterion_3():
    t = time.perf_counter()
    checks = [c for c in expansion_suite(8)
              if c.identity.startswith(("classical value", "q = 1 specialization"))]
    P = maximal_dyck_path(3, 2)
    checks.append(_Simple("13 pairs on P(3,2)", len(enumerate_pairs(P, 2)) == 13
                          == len(list(all_pairs(P.word, 2)))))
    return _report(3, "classical specialization and pair count", checks, t, 5)


def criterion_4():
    t = time.perf_counter()
    checks = bijection_negative_suite(2, 7) + bijection_negative_suite(3, 5)
    return _report(4, "negative angular momentum bijection", checks, t, 60)


def criterion_5():
    t = time.perf_counter()
    return _report(5, "Kronecker positive angular momentum fibers", bijection_kron_pos_suite(8), t, 60)


def criterion_6():
    t = time.perf_counter()
    checks = bijection_mm_suite(6) + bases_suite(6)
    return _report(6, "(m,m) theta via pairs = via lines = z_m", checks, t, 60)


def criterion_7():
    t = time.perf_counter()
    everything = recursion_suite(6, 7)
    checks = [c for c in everything if not c.identity.startswith("corrected")]
    corrected = [c for c in everything if c.identity.startswith("corrected")]
    note = (f"corrected forms: {sum(c.passed for c in corrected)}/{len(corrected)} pass; "
            "r = 3 stops at n = 4")
    return _report(7, "printed recursions", checks, t, 60, note)


def criterion_8():
    t = time.perf_counter()
    checks = structure_suite(12)
    return _report(8, "structural properties on paths of size <= 12", checks, t, 120,
                   "flip lemma read with non-wrapping shadows")


def criterion_9():
    t = time.perf_counter()
    return _report(9, "positive-pair density bound, r = 3", density_suite(3, (5, 6)), t, 120)


def criterion_10():
    t = time.perf_counter()
    return _report(10, "geometric realization of every line", realization_suite(), t, 120)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 11)])
def test_criterion(criterion, capsys):
    ok, line, failed = criterion()
    with capsys.disabled():
        print("\n" + line)
    assert ok, [(c.identity, c.params) for c in failed[:5]]


if __name__ == "__main__":
    for criterion in CRITERIA:
        print(criterion()[1])
