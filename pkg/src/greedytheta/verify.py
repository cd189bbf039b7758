"""Convention calibration and the verification suites behind `greedytheta verify`."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .dyckpath import c_seq, cluster_path, maximal_dyck_path, monomial_path
from .kronbases import basis_report, calibrate_normalization, mm_pair_weight
from .maps import (in_cascade_domain, in_shadow_domain, phi_mm, phi_negative,
                   phi_positive_kron, theta_llz, ttheta)
from .pairs import (HV_SIGN, CompatiblePair, cascade, enumerate_pairs, expansion_shift,
                    Wrap, is_compatible, lambda_inverse, lambda_map, rupel_expansion, shadow_set,
                    weight_polynomials, word_weight)
from .qalgebra import ZERO, QLaurent
from .qtorus import (ConventionConfig, DivisionError, ExchangeSide, cluster_monomial,
                     cluster_variable, exchange_residual, monomial_prefactor_sign)
from .recursions import cp_recursion, kron_positive_recursion, mm_recursion, negative_recursion
from .scattering import (Side, enumerate_BL, kron_positive_closed_form, negative_closed_form,
                         realize_somewhere)


class Suite(str, Enum):
    EXPANSION = "Expansion"
    BIJECTION_NEG = "BijectionNeg"
    BIJECTION_KRON_POS = "BijectionKronPos"
    BIJECTION_MM = "BijectionMM"
    BASES = "Bases"
    RECURSIONS = "Recursions"
    STRUCTURE = "Structure"
    DENSITY = "Density"
    REALIZATION = "Realization"


@dataclass
class Check:
    identity: str
    params: dict
    passed: bool
    detail: dict | None = None
    informational: bool = False

    def to_json(self) -> dict:
        out = {"identity": self.identity, "params": self.params, "pass": self.passed}
        if self.informational:
            out["informational"] = True
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass
class SuiteReport:
    suite: str
    convention: str
    checks: list[Check] = field(default_factory=list)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed and not c.informational]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "schema": "greedytheta/verify-report/1",
            "suite": self.suite,
            "convention": self.convention,
            "passed": sum(1 for c in self.checks if c.passed),
            "failed": len(self.failures),
            "ok": self.ok,
            "checks": [c.to_json() for c in self.checks],
        }


# calibration

ALL_CONVENTIONS = tuple(ConventionConfig(s, side) for s in (1, -1)
                        for side in (ExchangeSide.NEW_ON_LEFT, ExchangeSide.NEW_ON_RIGHT))


@dataclass(frozen=True)
class ConventionRow:
    cfg: ConventionConfig
    bar_invariant: bool
    exchange_ok: bool
    rupel_hv_signs: tuple  # hv signs for which the pair expansion matches
    printed_prefactor: bool  # q^(+alpha beta) X_n^alpha X_{n+1}^beta is bar-invariant
    error: str = ""

    @property
    def passes(self) -> bool:
        return (self.bar_invariant and self.exchange_ok and bool(self.rupel_hv_signs)
                and self.printed_prefactor)

    def to_json(self) -> dict:
        return {
            "convention": self.cfg.label(),
            "bar_invariant": self.bar_invariant,
            "exchange_ok": self.exchange_ok,
            "rupel_hv_signs": list(self.rupel_hv_signs),
            "printed_prefactor": self.printed_prefactor,
            "passes": self.passes,
            "error": self.error,
        }


@dataclass(frozen=True)
class CalibrationReport:
    rows: tuple
    chosen: ConventionConfig | None
    hv_sign: int | None
    shift_rule: str = "gcd(ell, h) - ell - h"

    @property
    def ok(self) -> bool:
        return self.chosen is not None

    def to_json(self) -> dict:
        return {
            "schema": "greedytheta/calibration/1",
            "rows": [row.to_json() for row in self.rows],
            "chosen": self.chosen.label() if self.chosen else None,
            "commutation_sign": self.chosen.commutation_sign if self.chosen else None,
            "exchange_side": self.chosen.exchange_side.value if self.chosen else None,
            "hv_sign": self.hv_sign,
            "shift_rule": self.shift_rule,
        }

    def to_text(self) -> str:
        lines = ["convention            bar  exch  rupel-hv  q^(+ab)  pass"]
        for row in self.rows:
            hv = ",".join(f"{s:+d}" for s in row.rupel_hv_signs) or "-"
            lines.append(f"{row.cfg.label():<21} {_yn(row.bar_invariant):<4} "
                         f"{_yn(row.exchange_ok):<5} {hv:<9} {_yn(row.printed_prefactor):<8} "
                         f"{_yn(row.passes)}" + (f"  ({row.error})" if row.error else ""))
        if self.chosen:
            lines.append(f"chosen: {self.chosen.label()}, hv sign {self.hv_sign:+d}, "
                         f"shift {self.shift_rule}")
            lines.append("X_n is bar-invariant and equals the pair expansion for r <= 2, n <= 6; "
                         "the mirror convention passes those too but needs q^(-ab) on monomials.")
        else:
            lines.append("no unique convention")
        return "\n".join(lines)


def _yn(x: bool) -> str:
    return "yes" if x else "no"


def check_convention(cfg: ConventionConfig, max_n: int = 6, rs=(1, 2)) -> ConventionRow:
    try:
        bar = all(cluster_variable(n, r, cfg).is_bar_invariant()
                  for r in rs for n in range(3, max_n + 1))
        exch = all(exchange_residual(n, r, cfg).is_zero()
                   for r in rs for n in range(2, max_n))
    except DivisionError as exc:
        return ConventionRow(cfg, False, False, (), False, type(exc).__name__)
    signs = tuple(s for s in (1, -1)
                  if all(rupel_expansion(r, n, cfg=cfg, hv_sign=s) == cluster_variable(n, r, cfg)
                         for r in rs for n in range(4, max_n + 1)))
    try:
        printed = all(monomial_prefactor_sign(n, r, cfg) == 1 for r in rs for n in (1, 2, 3))
    except ArithmeticError:
        printed = False
    return ConventionRow(cfg, bar, exch, signs, printed)


def calibrate(conventions=ALL_CONVENTIONS) -> CalibrationReport:
    rows = tuple(check_convention(cfg) for cfg in conventions)
    passing = [row for row in rows if row.passes]
    if len(passing) != 1 or len(passing[0].rupel_hv_signs) != 1:
        return CalibrationReport(rows, None, None)
    row = passing[0]
    return CalibrationReport(rows, row.cfg, row.rupel_hv_signs[0])


# suites

def expansion_suite(max_n: int = 8, cfg: ConventionConfig | None = None,
                    rs=(1, 2, 3), r3_max_n: int = 6) -> list[Check]:
    cfg = cfg or ConventionConfig()
    checks = []
    for r in rs:
        top = min(max_n, r3_max_n) if r >= 3 else max_n
        for n in range(4, top + 1):
            params = {"r": r, "n": n}
            X = cluster_variable(n, r, cfg)
            R = rupel_expansion(r, n, cfg=cfg)
            checks.append(Check("pair expansion equals X_n", params, R == X,
                                None if R == X else {"pairs": R.to_json(), "oracle": X.to_json()}))
            res = exchange_residual(n - 1, r, cfg)
            checks.append(Check("exchange relation", params, res.is_zero(),
                                None if res.is_zero() else {"residual": res.to_json()}))
            classical = _classical_value(r, n)
            got = X.evaluate(1, 1, 1)
            checks.append(Check("classical value at x1 = x2 = 1", params, got == classical,
                                {"value": str(got), "expected": str(classical)}))
            path = cluster_path(r, n) if r >= 2 else None
            if path is not None and path.ell + path.h <= 14:
                llz = _llz_polynomial(path, r)
                ok = R.classical() == llz
                checks.append(Check("q = 1 specialization matches the classical pair sum",
                                    params, ok))
    for r in (2, 3):
        for n in (3, 4):
            for alpha, beta in ((2, 0), (1, 1), (0, 2), (2, 1)):
                if r == 3 and n == 4 and alpha + beta > 2:
                    continue
                params = {"r": r, "n": n, "alpha": alpha, "beta": beta}
                M = cluster_monomial(n, alpha, beta, r, cfg)
                R = rupel_expansion(r, n, alpha, beta, cfg=cfg)
                checks.append(Check("pair expansion equals the cluster monomial", params, R == M))
    return checks


def _classical_value(r: int, n: int) -> Fraction:
    x = [None, Fraction(1), Fraction(1)]
    for k in range(3, n + 1):
        x.append((x[k - 1] ** r + 1) / x[k - 2])
    return x[n]


def _llz_polynomial(path, r) -> dict:
    """Monomial counts straight from the pair list, no weights involved."""
    out: dict = defaultdict(int)
    for pair in enumerate_pairs(path, r):
        out[(-path.ell + r * pair.b, -path.h + r * pair.a)] += 1
    return dict(sorted(out.items()))


def _fiber_checks(name, params, pairs, phi, weight_of, lines_of_class, key_of) -> list[Check]:
    """Group pairs by their image line; compare images and fiber weights."""
    fibers: dict = defaultdict(lambda: ZERO)
    images: dict = defaultdict(set)
    errors = []
    for pair in pairs:
        try:
            line = phi(pair)
        except (ArithmeticError, ValueError) as exc:
            errors.append({"pair": pair.to_json(), "error": str(exc)})
            continue
        fibers[line] += weight_of(pair)
        images[key_of(pair)].add(line)
    checks = [Check(f"{name}: map defined on every pair", params, not errors,
                    {"errors": errors[:5]} if errors else None)]
    bad_sets = []
    for key, lines in sorted(images.items()):
        expected = set(lines_of_class(*key))
        if expected != lines:
            bad_sets.append({"class": list(key), "missing": sorted(map(str, expected - lines)),
                             "extra": sorted(map(str, lines - expected))})
    checks.append(Check(f"{name}: image of each class is the full line set", params,
                        not bad_sets, {"classes": len(images), "bad": bad_sets[:5]}))
    bad_w = [{"line": str(g), "fiber": str(s), "line_weight": str(g.weight)}
             for g, s in fibers.items() if s != g.weight]
    checks.append(Check(f"{name}: fiber weight equals line weight", params, not bad_w,
                        {"lines": len(fibers), "bad": bad_w[:5]}))
    return checks


def bijection_negative_suite(r: int, max_n: int, alpha: int = 1, beta: int = 0) -> list[Check]:
    checks = []
    for n in range(3, max_n + 1):
        if (alpha, beta) == (1, 0):
            path = cluster_path(r, n)
        else:
            path = monomial_path(r, n - 1, beta, alpha).path
        shift = expansion_shift(path)
        params = {"r": r, "n": n, "alpha": alpha, "beta": beta, "ell": path.ell, "h": path.h}
        pairs = [p for p in enumerate_pairs(path, r) if p.is_positive()]
        checks += _fiber_checks(
            "phi_negative", params, pairs, phi_negative,
            lambda p: QLaurent.monomial(2 * (shift + p.weight)),
            lambda a, b: enumerate_BL(r, path.ell, path.h, a, b, Side.NEGATIVE),
            lambda p: (p.a, p.b))
        if (alpha, beta) == (1, 0):
            lines = {g for p in pairs for g in [phi_negative(p)]}
            bad = [str(g) for g in lines if negative_closed_form(g) != g.weight]
            checks.append(Check("negative lines: product formula equals bend weights",
                                params, not bad, {"bad": bad[:5]} if bad else None))
    return checks


def bijection_kron_pos_suite(max_h: int = 8) -> list[Check]:
    checks = []
    for h in range(2, max_h + 1):
        path = maximal_dyck_path(h - 1, h)
        shift = expansion_shift(path)
        params = {"h": h}
        pairs = [p for p in enumerate_pairs(path, 2) if 2 * p.b <= h - 1]
        checks += _fiber_checks(
            "phi_positive", params, pairs, phi_positive_kron,
            lambda p: QLaurent.monomial(2 * (shift + p.weight)),
            # the line lives in swapped coordinates
            lambda a, b: enumerate_BL(2, h, h - 1, b, a, Side.POSITIVE),
            lambda p: (p.a, p.b))
        lines = {phi_positive_kron(p) for p in pairs}
        off = [str(g) for g in lines if kron_positive_closed_form(g) != g.weight]
        checks.append(Check("positive lines: printed product formula", params, not off,
                            {"disagreements": len(off), "examples": off[:3]},
                            informational=True))
    return checks


def bijection_mm_suite(max_m: int = 6) -> list[Check]:
    checks = []
    for m in range(1, max_m + 1):
        path = maximal_dyck_path(m, m)
        params = {"m": m}
        pairs = [p for p in enumerate_pairs(path, 2) if 2 * p.b <= m]
        checks += _fiber_checks(
            "phi_mm", params, pairs, phi_mm,
            lambda p: QLaurent.monomial(mm_pair_weight(p)),
            lambda *_: [g for a in range(m + 1) for b in range(m // 2 + 1)
                        for g in enumerate_BL(2, m, m, a, b, Side.MM_NEGATIVE)],
            lambda p: ())
        graded: dict = defaultdict(lambda: ZERO)
        for p in pairs:
            graded[(p.a, p.b)] += QLaurent.monomial(mm_pair_weight(p))
        bad = []
        for a in range(m + 1):
            for b in range(m // 2 + 1):
                lines = sum((g.weight for g in enumerate_BL(2, m, m, a, b, Side.MM_NEGATIVE)), ZERO)
                if graded.get((a, b), ZERO) != lines:
                    bad.append([a, b])
        checks.append(Check("pairs and lines agree class by class", params, not bad,
                            {"bad": bad} if bad else None))
    return checks


def bases_suite(max_m: int = 6, cfg: ConventionConfig | None = None) -> list[Check]:
    cfg = cfg or ConventionConfig()
    norm = calibrate_normalization(cfg)
    checks = []
    for m in range(1, max_m + 1):
        rep = basis_report(m, cfg, norm)
        params = {"m": m, "normalization": norm.to_json()}
        pl, pz, lz = rep.equal
        checks.append(Check("theta via pairs equals theta via lines", params, pl))
        checks.append(Check("theta via pairs equals z_m", params, pz,
                            None if pz else {"pairs": rep.via_pairs.to_json(),
                                             "z": rep.via_closed_form.to_json()}))
        checks.append(Check("theta via lines equals z_m", params, lz))
        checks.append(Check("theta is bar-invariant", params, rep.via_pairs.is_bar_invariant()))
    Z = {n: basis_report(n, cfg, norm).via_closed_form for n in range(1, min(max_m, 5) + 2)}
    from .kronbases import z_element
    for n in range(1, min(max_m, 5) + 1):
        prev = z_element(n - 1, cfg) if n > 1 else Z[1].one(cfg).scale(2)
        diff = Z[1] * Z[n] - Z[n + 1] - prev
        checks.append(Check("z_1 z_n = z_(n+1) + z_(n-1)", {"n": n}, diff.is_zero()))
    return checks


def recursion_suite(max_n: int = 6, max_h: int = 7, r3_max_n: int = 4,
                    corrected: bool = True) -> list[Check]:
    """The printed identities, then (as separate checks) their corrected forms."""
    checks = []
    for fixed in ((False, True) if corrected else (False,)):
        label = "corrected " if fixed else ""
        for r in (2, 3):
            top = max_n if r == 2 else min(max_n, r3_max_n)
            for n in range(2, top + 1):
                hi, mid = c_seq(r, n + 1), c_seq(r, n)
                checks += _identity_checks(
                    f"{label}BL_- recursion", {"r": r, "n": n}, fixed,
                    [(a, b) for a in range(hi + 1) for b in range(mid // r + 1)],
                    lambda a, b, f, r=r, n=n: negative_recursion(r, n, a, b, f))
        for h in range(1, max_h + 1):
            checks += _identity_checks(
                f"{label}BL_+ recursion", {"h": h}, fixed,
                [(a, b) for a in range((h + 1) // 2 + 1) for b in range(h + 2)],
                lambda a, b, f, h=h: kron_positive_recursion(h, a, b, f))
            checks += _identity_checks(
                f"{label}BL_-(h, h) recursion", {"h": h}, fixed,
                [(a, b) for a in range(h + 1) for b in range(h // 2 + 1)],
                lambda a, b, f, h=h: mm_recursion(h, a, b, f))
        for r, top in ((2, max_n), (3, min(max_n, 3))):
            for n in range(2, top + 1):
                hi, mid = c_seq(r, n + 1), c_seq(r, n)
                checks += _identity_checks(
                    f"{label}CP recursion", {"r": r, "n": n}, fixed,
                    [(a, b) for a in range(hi + 1) for b in range(mid + 1) if r * b <= hi],
                    lambda a, b, f, r=r, n=n: cp_recursion(r, n, a, b, f))
    return checks


def _identity_checks(name, params, fixed, classes, fn) -> list[Check]:
    bad = []
    for a, b in classes:
        lhs, rhs = fn(a, b, fixed)
        if lhs != rhs:
            bad.append({"a": a, "b": b, "lhs": str(lhs), "rhs": str(rhs)})
    return [Check(name, dict(params, classes=len(classes)), not bad,
                  {"failed_classes": len(bad), "examples": bad[:3]} if bad else None)]


def structure_paths(max_size: int = 12):
    """Distinct cluster-monomial paths with ell + h <= max_size, r = 2, 3."""
    seen = {}
    for r in (2, 3):
        for n in range(2, 9):
            for alpha in range(6):
                for beta in range(6):
                    if alpha + beta == 0:
                        continue
                    mp = monomial_path(r, n, alpha, beta)
                    P = mp.path
                    if P.h and P.ell + P.h <= max_size:
                        seen.setdefault((r, P.word), mp)
    return [(r, mp) for (r, _), mp in sorted(seen.items())]


def structure_suite(max_size: int = 12) -> list[Check]:
    tallies: dict = defaultdict(lambda: [0, []])

    def record(name, ok, obj):
        t = tallies[name]
        t[0] += 1
        if not ok and len(t[1]) < 5:
            t[1].append(obj)

    for r, mp in structure_paths(max_size):
        P = mp.path
        steep_ok = (r - 1) * P.h <= P.ell <= r * P.h
        everything = frozenset(range(1, P.ell + 1))
        for p in enumerate_pairs(P, r):
            if not p.is_positive():
                continue
            tag = str(p)
            cas = cascade(P, p.S2, r)
            lp = lambda_map(p)
            record("lambda preserves compatibility", is_compatible(P, lp.S1, lp.S2, r), tag)
            back = lambda_inverse(lp)
            record("lambda inverse preserves compatibility and undoes lambda",
                   back == p and is_compatible(P, back.S1, back.S2, r), tag)
            if steep_ok and p.S1 <= cas.edges:
                record("S1 inside cas_r(S2) on CP_cas", p.S1 <= cas.level(r), tag)
                tp = ttheta(p)
                record("ttheta preserves weight on CP_cas",
                       tp.weight + expansion_shift(tp.path) == p.weight + expansion_shift(P)
                       and is_compatible(tp.path, tp.S1, tp.S2, r), tag)
            if steep_ok and in_shadow_domain(p):
                record("theta = ttheta . lambda on CP_sh", theta_llz(p) == ttheta(lp), tag)
            if p.S1 <= cas.edges:
                for wrap in Wrap:
                    unshadowed = everything - shadow_set(P, p.S2, r, wrap)
                    flipped = CompatiblePair(P, p.S1 | unshadowed, p.S2, r)
                    record(f"flipping unshadowed edges keeps the weight ({wrap.value} shadow)",
                           flipped.weight == p.weight, tag)
        for p in enumerate_pairs(P, r):
            w = p.word
            for i, x in enumerate(w):
                if x != "h":
                    continue
                for k in range(i + 1, len(w)):
                    seg = w[i + 1:k]
                    if w[k] == "H" and seg.count("h") + seg.count("H") == r * seg.count("V"):
                        swapped = w[:i] + "H" + seg + "h" + w[k + 1:]
                        record("h/H swap raises the weight by 2r",
                               word_weight(swapped, r) - word_weight(w, r) == 2 * r,
                               f"{w} -> {swapped}")
    return [Check(name, {"max_size": max_size, "instances": count}, not bad,
                  {"examples": bad} if bad else None,
                  informational="Cyclic shadow" in name)
            for name, (count, bad) in sorted(tallies.items())]


def pair_counts(path, r) -> tuple[int, int]:
    """(all pairs, positive pairs) on path, from the weight tables at q = 1."""
    total = positive = 0
    for (a, b), poly in weight_polynomials(path, r, HV_SIGN).items():
        k = poly.evaluate(1)
        total += k
        if r * b <= path.ell:
            positive += k
    return total, positive


def density_suite(r: int = 3, ns=(5, 6)) -> list[Check]:
    checks = []
    for n in ns:
        path = cluster_path(r, n)
        total, positive = pair_counts(path, r)
        bound = 2 ** c_seq(r, n - 2)
        ok = (total - positive) * bound <= total
        checks.append(Check("1 - |CP+|/|CP| <= 2^(-c_(n-2))",
                            {"r": r, "n": n, "ell": path.ell, "h": path.h}, ok,
                            {"total": total, "positive": positive,
                             "ratio": str(Fraction(total - positive, total)),
                             "bound": f"1/{bound}"}))
    return checks


def realization_lines():
    """(family, line, wants negative angular momentum) for the bijection suites."""
    for r, top in ((2, 7), (3, 5)):
        for n in range(3, top + 1):
            P = cluster_path(r, n)
            for a in range(P.ell + 1):
                for b in range(P.h + 1):
                    if r * b <= P.ell:
                        for g in enumerate_BL(r, P.ell, P.h, a, b, Side.NEGATIVE):
                            yield "negative", g, True
    for h in range(2, 9):
        for s2 in range((h - 1) // 2 + 1):
            for s1 in range(h):
                for g in enumerate_BL(2, h, h - 1, s2, s1, Side.POSITIVE):
                    yield "positive", g, False
    for m in range(1, 7):
        for a in range(m + 1):
            for b in range(m // 2 + 1):
                for g in enumerate_BL(2, m, m, a, b, Side.MM_NEGATIVE):
                    yield "mm", g, True


def realization_suite() -> list[Check]:
    counts: dict = defaultdict(lambda: [0, [], 0])
    for family, line, negative in realization_lines():
        result = realize_somewhere(line, negative)
        c = counts[family]
        c[0] += 1
        if not result.ok:
            c[1].append({"line": str(line), "failure": result.kind.value})
        elif all(x > 0 for x in result.points[0]):
            c[2] += 1
    return [Check(f"{family} lines realize with constant angular momentum",
                  {"family": family, "lines": total, "first_quadrant_Q": q1}, not bad,
                  {"bad": bad[:5]} if bad else None)
            for family, (total, bad, q1) in sorted(counts.items())]


def run_suite(suite: Suite | str, cfg: ConventionConfig | None = None, r: int | None = None,
              max_n: int | None = None, max_m: int | None = None,
              alpha: int = 1, beta: int = 0) -> SuiteReport:
    suite = Suite(suite)
    cfg = cfg or ConventionConfig()
    if suite is Suite.EXPANSION:
        rs = (r,) if r else (1, 2, 3)
        checks = expansion_suite(max_n or 8, cfg, rs)
    elif suite is Suite.BIJECTION_NEG:
        rs = (r,) if r else (2, 3)
        checks = []
        for rr in rs:
            checks += bijection_negative_suite(rr, max_n or (7 if rr == 2 else 5), alpha, beta)
    elif suite is Suite.BIJECTION_KRON_POS:
        checks = bijection_kron_pos_suite(max_n or 8)
    elif suite is Suite.BIJECTION_MM:
        checks = bijection_mm_suite(max_m or 6)
    elif suite is Suite.BASES:
        checks = bases_suite(max_m or 6, cfg)
    elif suite is Suite.RECURSIONS:
        checks = recursion_suite(max_n or 6, max_m or 7)
    elif suite is Suite.STRUCTURE:
        checks = structure_suite(max_n or 12)
    elif suite is Suite.DENSITY:
        checks = density_suite(r or 3)
    else:
        checks = realization_suite()
    return SuiteReport(suite.value, cfg.label(), checks)
