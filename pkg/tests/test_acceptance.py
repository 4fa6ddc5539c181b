"""Acceptance criteria 1-8, each reported as one pass/fail line."""

import time
from fractions import Fraction

import pytest

from adelattice import codes as cd
from adelattice import exactlinear as xl
from adelattice import hilbert as hb
from adelattice.construction import build_gamma_c, coset_oracle, root_lattice_sum, verify_main_theorem
from adelattice.fixtures import TABLE_ROWS, available, crt_pair, load
from adelattice.rings import ZMod
from adelattice.rootlattices import RootLatticeSpec, all_specs, ambient_basis
from adelattice.theta import RootSystemLabel, brute_force_counts, root_system, short_vectors

# -- 1. duality of bases --


def test_criterion_1_dual_bases(acceptance_line):
    t0 = time.perf_counter()
    specs = [s for s in all_specs(12) if not (s.family == "E" and s.n == 8)]
    bad = []
    for spec in specs:
        ab = ambient_basis(spec)
        pairing = xl.RatMatrix.from_int(ab.gram_f) @ ab.Fstar.transpose()
        order = {"A": spec.n + 1, "D": 4, "E": 9 - spec.n}[spec.family]
        if pairing != xl.RatMatrix.identity(spec.n) or xl.det(ab.gram_e) != order:
            bad.append(str(spec))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 5
    acceptance_line(1, ok, f"{len(specs)} specs, delta pairing and det(gram_e) exact, {dt:.2f}s; bad={bad}")
    assert ok


# -- 2. coset oracles --

ORACLE_CASES = (
    [(RootLatticeSpec("A", n), m) for n in (1, 2, 3, 4) for m in (1, 2)]
    + [(RootLatticeSpec("D", n), 1) for n in (5, 7)]
    + [(RootLatticeSpec("D", n, r), 1) for n in (4, 6, 8, 10, 12) for r in ("F2U", "F4", "F2xF2")]
    + [(RootLatticeSpec("D", n, r), 2) for n in (4, 6) for r in ("F2U", "F4", "F2xF2")]
    + [(RootLatticeSpec("E", n), m) for n in (6, 7) for m in (1, 2)]
)


def test_criterion_2_coset_oracles(acceptance_line):
    t0 = time.perf_counter()
    reports = [coset_oracle(spec, m) for spec, m in ORACLE_CASES]
    dt = time.perf_counter() - t0
    failures = [str(r) for r in reports if not r.passed]
    pairs = sum(r.pairs_checked for r in reports)
    ok = not failures and dt < 120
    acceptance_line(2, ok, f"{len(reports)} cases, {pairs} coset pairs, 0 counterexamples expected, {dt:.2f}s")
    assert ok, "\n".join(failures)


# -- 3. theorem equivalence --


def _criterion_3_instances():
    out = [
        (RootLatticeSpec("A", 1), load("golay24")),
        (RootLatticeSpec("A", 1), load("repetition2")),
        (RootLatticeSpec("E", 6), load("tetracode")),
        (RootLatticeSpec("D", 5), cd.Code(ZMod(4), 1, [[2]], "<2>")),
    ]
    out += [(RootLatticeSpec("D", 4, "F2xF2"), crt_pair(f"c6_{k}")) for k in range(1, 5)]
    return out


def test_criterion_3_theorem_harness(acceptance_line):
    reports = [verify_main_theorem(spec, code) for spec, code in _criterion_3_instances()]
    golay, rep2, tetra, d5 = reports[:4]
    expectations = [
        golay.clauses[3].lattice_value and golay.clauses[3].code_value,
        not rep2.clauses[3].lattice_value and not rep2.clauses[3].code_value
        and not rep2.clauses[2].lattice_value,
        tetra.clauses[3].lattice_value and tetra.clauses[1].code_value,
        not d5.clauses[3].lattice_value and not d5.clauses[3].code_value,
    ] + [r.clauses[3].lattice_value for r in reports[4:]]
    ok = all(r.passed for r in reports) and all(expectations)
    acceptance_line(3, ok, f"{len(reports)} instances, {sum(len(r.clauses) for r in reports)} clauses agree")
    assert ok, "\n".join(str(r) for r in reports)


# -- 4. table reproduction --

CRITERION_4 = [r for r in TABLE_ROWS if r.has_code and (
    r.table.endswith("F2xF2") or r.code_name in ("G24", "G12", "tetracode", "<5>"))]
UNREACHABLE = "CRT(C3,3,C3,3^perp)"
_REASON = (
    "every Hermitian self-dual length-3 F2xF2 code on D8 gives 3E8, D16+E8 or 3D8 "
    "(exhaustive search), so the printed D24 cannot be produced"
)


def _row_id(row):
    return f"{row.table}:{row.code_name}"


def _label(row):
    return root_system(build_gamma_c(row.spec, row.build()))


@pytest.mark.parametrize(
    "row",
    [pytest.param(r, marks=pytest.mark.xfail(strict=True, reason=_REASON)) if r.code_name == UNREACHABLE else r
     for r in CRITERION_4],
    ids=_row_id,
)
def test_criterion_4_row(row):
    assert _label(row) == RootSystemLabel.parse(row.expected)


@pytest.mark.xfail(strict=True, reason=_REASON)
def test_criterion_4_table_reproduction(acceptance_line):
    t0 = time.perf_counter()
    results = [(row, _label(row)) for row in CRITERION_4]
    dt = time.perf_counter() - t0
    bad = [f"{_row_id(r)} computed {lab} printed {r.expected}"
           for r, lab in results if lab != RootSystemLabel.parse(r.expected)]
    ok = not bad and dt < 600
    acceptance_line(4, ok, f"{len(results) - len(bad)}/{len(results)} rows match, {dt:.2f}s; mismatches: {bad}")
    assert ok


def test_criterion_4_search_backs_the_mismatch():
    # the D8/F2xF2 mismatch is structural: no Hermitian self-dual code of length 3 gives D24
    import itertools

    import numpy as np

    spec = RootLatticeSpec("D", 8, "F2xF2")
    R = spec.ring
    vecs = [np.array(v) for v in itertools.product(range(4), repeat=3) if any(v)]
    seen, labels = set(), set()
    for k in (1, 2, 3):
        for gens in itertools.combinations(vecs, k):
            code = cd.Code(R, 3, np.array(gens))
            if code.size != 8:
                continue
            key = frozenset(code.keyset())
            if key in seen or not cd.is_self_dual(code, hermitian=True):
                continue
            seen.add(key)
            labels.add(str(root_system(build_gamma_c(spec, code))))
    assert labels == {"3E8", "D16+E8", "3D8"}


# -- 5. root counts --

_COUNTS = {"24A1": 48, "D24": 1104, "3E8": 720, "4E6": 288}


def test_criterion_5_root_counts(acceptance_line):
    bad = []
    for row in CRITERION_4:
        lat = build_gamma_c(row.spec, row.build())
        n2 = short_vectors(lat, 2).count(2)
        lab = root_system(lat)
        if n2 != lab.root_count:
            bad.append(f"{_row_id(row)}: {n2} roots vs {lab} ({lab.root_count})")
        if str(lab) in _COUNTS and _COUNTS[str(lab)] != n2:
            bad.append(f"{_row_id(row)}: {n2} roots vs tabulated {_COUNTS[str(lab)]}")
    ok = not bad and all(RootSystemLabel.parse(k).root_count == v for k, v in _COUNTS.items())
    acceptance_line(5, ok, f"{len(CRITERION_4)} lattices, norm-2 count equals label root number; bad={bad}")
    assert ok


# -- 6. mn in 8Z --


def _zmod_corpus():
    out = {name: load(name) for name in available()}
    for row in TABLE_ROWS:
        if row.has_code:
            c = row.build()
            if c.spec.is_zmod:
                out[f"{row.table}:{row.code_name}"] = c
    return {k: c for k, c in out.items() if c.spec.is_zmod and c.spec.k >= 2}


def test_criterion_6_length_rank_divisibility(acceptance_line):
    checked, violations = 0, []
    for name, c in sorted(_zmod_corpus().items()):
        n = c.spec.k - 1
        if cd.type_II(c) if n % 2 else cd.is_self_dual(c):
            checked += 1
            if (c.length * n) % 8:
                violations.append(name)
    ok = checked > 0 and not violations
    acceptance_line(6, ok, f"{checked} qualifying Z/(n+1) codes, violations={violations}")
    assert ok


# -- 7. Hilbert identities --


def _length2_sd_f2u():
    c = load("f2u_11")
    assert c.length == 2 and cd.is_self_dual(c)
    return c


def test_criterion_7_hilbert(acceptance_line):
    t0 = time.perf_counter()
    reports = [
        hb.verify_theta_identity("zeta8", load("f2u_u"), 8),
        hb.verify_theta_identity("zeta8", _length2_sd_f2u(), 6),
        hb.verify_theta_identity("zeta9", load("tetracode"), 4),
    ]
    sym8 = hb.theta_coset("zeta8", 1, 12) == hb.theta_coset("zeta8", 3, 12)
    sym9 = hb.theta_coset("zeta9", 1, 12) == hb.theta_coset("zeta9", 2, 12)
    levels = [hb.level_matches_expected(f) for f in hb.FIELDS]
    dt = time.perf_counter() - t0
    ok = all(r.passed for r in reports) and sym8 and sym9 and all(levels) and dt < 600
    acceptance_line(7, ok, f"3 theta identities {[r.passed for r in reports]}, coset symmetry "
                           f"{sym8}/{sym9}, level ideals {levels}, {dt:.1f}s")
    assert ok, "\n".join(str(r) for r in reports)


# -- 8. enumeration oracle --


def _rank6_grams():
    out = []
    for spec in all_specs(6):
        ab = ambient_basis(spec)
        out += [(f"{spec} f", ab.gram_f), (f"{spec} f*", ab.gram_fstar)]
    small = [("A", 1, "repetition2"), ("A", 1, "c2"), ("A", 1, "c1"), ("D", 4, "f2u_u")]
    small += [("A", 1, f"c3_{k}") for k in (1, 2, 3)] + [("A", 1, f"c6_{k}") for k in (1, 2, 3, 4)]
    for fam, n, name in small:
        c = load(name)
        lat = build_gamma_c(RootLatticeSpec(fam, n), c)
        if lat.rank <= 6:
            out.append((f"{fam}{n}/{name}", lat.gram))
    return out


def test_criterion_8_enumeration_oracle(acceptance_line):
    bad, cases = [], 0
    for name, G in _rank6_grams():
        for b in (2, 8):
            cases += 1
            if short_vectors(G, b).counts != brute_force_counts(G, b):
                bad.append(f"{name} bound {b}")
    e8 = short_vectors(root_lattice_sum(RootLatticeSpec("E", 8), 1), 4)
    e8_ok = (e8.count(2), e8.count(4)) == (240, 2160)
    ok = not bad and e8_ok
    acceptance_line(8, ok, f"{cases} Fincke-Pohst vs box comparisons, E8 shells {(e8.count(2), e8.count(4))}; bad={bad}")
    assert ok
