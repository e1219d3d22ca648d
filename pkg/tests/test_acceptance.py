"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines; the grids and tolerances here are exact (no floats anywhere).
"""

import json
import time

from multiperfect.arith import factor, is_prime, nu, sigma_of
from multiperfect.cli import main
from multiperfect.euler_part import (
    CandidateFamily,
    build_certificate,
    check_certificate,
)
from multiperfect.structure import valuation_identity_check
from multiperfect.valuation import ValuationQuery, broughan_zhou_equiv, nu2_sigma, nu2_sigma_minus_one

ODD_PRIMES_500 = [p for p in range(3, 500) if is_prime(p)]


def report(number, ok, detail):
    print(f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


def run_cli(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_criterion_1_nu2_sigma_closed_form():
    start = time.perf_counter()
    mismatches = 0
    instances = 0
    for p in ODD_PRIMES_500:
        for e in range(1, 101):
            got = nu2_sigma(ValuationQuery(p, e), check=False).value
            if got != nu(2, sigma_of(p**e)):
                mismatches += 1
            instances += 1
    elapsed = time.perf_counter() - start
    report(1, mismatches == 0 and elapsed < 30,
           f"nu2(sigma(p^e)) closed form, {instances} instances, "
           f"{mismatches} mismatches, {elapsed:.1f}s (< 30s)")


def test_criterion_2_nu2_sigma_minus_one_closed_form():
    mismatches = 0
    instances = 0
    for p in ODD_PRIMES_500:
        for e in range(1, 101):
            got = nu2_sigma_minus_one(ValuationQuery(p, e), check=False).value
            if got != nu(2, sigma_of(p**e) - 1):
                mismatches += 1
            instances += 1
    report(2, mismatches == 0,
           f"nu2(sigma(p^e)-1) closed form, {instances} instances, {mismatches} mismatches")


def test_criterion_3_broughan_zhou():
    failures = [
        (p, e)
        for p in ODD_PRIMES_500
        for e in range(1, 100, 2)
        if not broughan_zhou_equiv(p, e)[1]
    ]
    report(3, not failures, f"Broughan-Zhou equivalence, failures: {failures[:5]}")


def test_criterion_4_shape_examples(capsys):
    code2, out2, _ = run_cli(capsys, "shapes", "--k", "2")
    shapes2 = [json.loads(line) for line in out2.splitlines()]
    ok2 = code2 == 0 and shapes2 == [{
        "k": 2, "s": 1, "a": [0], "b": [0],
        "prime_classes": [{"residue": 1, "modulus": 4}],
        "exponent_classes": [{"residue": 1, "modulus": 4}],
    }]
    code4, out4, _ = run_cli(capsys, "shapes", "--k", "4")
    shapes4 = [json.loads(line) for line in out4.splitlines()]
    classes4 = {
        (s["s"],
         tuple((c["residue"], c["modulus"]) for c in s["prime_classes"]),
         tuple((c["residue"], c["modulus"]) for c in s["exponent_classes"]))
        for s in shapes4
    }
    ok4 = code4 == 0 and classes4 == {
        (1, ((3, 8),), ((1, 4),)),
        (1, ((1, 4),), ((3, 8),)),
        (2, ((1, 4), (1, 4)), ((1, 4), (1, 4))),
    }
    report(4, ok2 and ok4, "shapes --k 2 and --k 4 reproduce the worked classes")


def test_criterion_5_valuation_identity_to_1e5():
    bad = []
    for n in range(1, 100_001, 2):
        lhs, rhs, holds = valuation_identity_check(factor(n))
        if not holds:
            bad.append((n, lhs, rhs))
    report(5, not bad, f"valuation identity on all odd n <= 1e5, failures: {bad[:5]}")


def test_criterion_6_divisibility_predicate():
    from multiperfect.euler_part import sigma_coprime_to_q

    primes = [p for p in range(3, 60) if is_prime(p)]
    bad = []
    instances = 0
    for q in primes:
        for p in primes:
            if p == q:
                continue
            for beta in range(1, 11):
                want = sigma_of(p ** (2 * beta)) % q != 0
                if sigma_coprime_to_q(p, beta, q) != want:
                    bad.append((p, beta, q))
                instances += 1
    report(6, not bad, f"divisibility predicate vs direct gcd, {instances} instances")


def test_criterion_7_mod16_tables():
    from multiperfect.euler_part import mod16_solutions

    expected = {
        1: {(1, 1), (5, 13), (9, 9), (13, 5)},
        5: {(1, 9), (5, 5), (9, 1), (13, 13)},
        3: {(1, 5), (5, 9), (9, 13), (13, 1)},
        7: {(1, 13), (5, 1), (9, 5), (13, 9)},
    }
    brute = {
        c: {(p, a) for p in range(1, 16, 4) for a in range(1, 16, 4)
            if (p * (p + 1) - c * (a + 1)) % 16 == 0}
        for c in (1, 3, 5, 7)
    }
    ok = all(mod16_solutions(c) == frozenset(expected[c]) == frozenset(brute[c])
             for c in (1, 3, 5, 7))
    report(7, ok, "mod-16 solution tables match both the frozen tables and brute force")


def test_criterion_8_half_sigma_mod8():
    from multiperfect.euler_part import half_sigma_mod8

    bad = []
    instances = 0
    for pi in range(5, 1000, 4):
        if not is_prime(pi):
            continue
        for alpha in (1, 5, 9, 13, 17):
            if half_sigma_mod8(pi, alpha) != (sigma_of(pi**alpha) // 2) % 8:
                bad.append((pi, alpha))
            instances += 1
    report(8, not bad, f"half-sigma mod 8 closed form, {instances} instances")


def test_criterion_9_certificates(capsys):
    code_a, out_a, _ = run_cli(capsys, "certify", "--pi", "30029",
                               "--m-constraint", "all-3-mod-4")
    cert_a = json.loads(out_a)
    ok_a = code_a == 2 and cert_a["kind"] == "omega_parity" and cert_a["witnesses"]["omega"] == 5

    code_b, out_b, _ = run_cli(capsys, "certify", "--pi", "41", "--alpha", "13",
                               "--q", "5")
    cert_b = json.loads(out_b)
    ok_b = (code_b == 2
            and cert_b["kind"] == "fermat_divisibility_contradiction"
            and cert_b["witnesses"]["sigma_euler_factor_mod_q"] == 4)

    code_c, _, err_c = run_cli(capsys, "certify", "--pi", "209",
                               "--m-constraint", "all-3-mod-4")
    ok_c = code_c == 1 and "composite" in err_c

    report(9, ok_a and ok_b and ok_c,
           "30029 omega certificate (Omega=5, exit 2); 41^13 * 5^2b Fermat "
           "certificate (sigma = 4 mod 5); composite 209 rejected")


def test_criterion_10_searches(capsys):
    start = time.perf_counter()
    code1, out1, _ = run_cli(capsys, "search", "--k", "2", "--bound", "10000",
                             "--workers", "4")
    t1 = time.perf_counter() - start
    hits1 = json.loads(out1)["hits"]

    start = time.perf_counter()
    code2, out2, _ = run_cli(capsys, "search", "--k", "3", "--bound", "600000",
                             "--workers", "4")
    t2 = time.perf_counter() - start
    hits2 = json.loads(out2)["hits"]

    start = time.perf_counter()
    code3, out3, _ = run_cli(capsys, "search", "--k", "2", "--bound", "1000000",
                             "--odd", "--workers", "4")
    t3 = time.perf_counter() - start
    hits3 = json.loads(out3)["hits"]

    ok = (code1 == code2 == code3 == 0
          and hits1 == [6, 28, 496, 8128]
          and hits2 == [120, 672, 523776]
          and hits3 == []
          and max(t1, t2, t3) < 60)
    report(10, ok,
           f"searches: k=2 {hits1} ({t1:.1f}s), k=3 {hits2} ({t2:.1f}s), "
           f"odd k=2 {hits3} ({t3:.1f}s); all < 60s")


def test_criterion_11_certificate_corpus_checks():
    corpus = [
        CandidateFamily(pi=30029, m_constraint="all-3-mod-4"),
        CandidateFamily(pi=5, m_constraint="all-3-mod-4"),
        CandidateFamily(pi=13, m_constraint="all-3-mod-4"),
        CandidateFamily(pi=41, alpha=13, q=5),
        CandidateFamily(pi_mod=(1, 20), alpha_mod=(13, 20), q=5),
        CandidateFamily(pi=13, alpha=1, m_square=factor(9)),
        CandidateFamily(pi=3, alpha=1),
        CandidateFamily(pi=30029, alpha=5, m_constraint="all-3-mod-4"),
    ]
    certs = [build_certificate(c) for c in corpus]
    produced = [c for c in certs if c is not None]
    checked = sum(bool(check_certificate(json.loads(c.to_json()))) for c in produced)
    report(11, len(produced) >= 7 and checked == len(produced),
           f"{checked}/{len(produced)} certificates pass the independent checker")
