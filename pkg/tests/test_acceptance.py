"""Acceptance gate: the twelve verification criteria at full trial counts.

Each test runs one criterion through the shared check functions and prints
a single pass/fail line; `bouwmoller verify --all-small` runs the same
checks from the command line.
"""

from bouwmoller import cli

SMALL = list(cli.SMALL_SET)
DUAL_PAIR = [(4, 3), (3, 4)]


def report(k, result, budget=None):
    ok = result["status"] == "pass"
    extra = {key: val for key, val in result.items()
             if key not in ("name", "status") and not key.startswith("_")}
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'} {result['name']} {extra}"
    print(line)
    assert ok, line
    if budget is not None:
        runtime = result["_runtime_s"]
        assert runtime < budget, f"criterion {k}: {runtime:.3f}s over {budget}s"


def test_criterion_01_periodic_derivation_golden():
    report(1, cli.check_derivation_golden(), budget=1e-3)


def test_criterion_02_substitution_tables_golden():
    report(2, cli.check_substitution_goldens(), budget=1.0)


def test_criterion_03_sector_permutations_and_reflections():
    report(3, cli.check_permutation_goldens())


def test_criterion_04_diagram_structure():
    report(4, cli.check_diagram_structure())


def test_criterion_05_cylinder_moduli():
    report(5, cli.check_moduli(), budget=1.0)


def test_criterion_06_deep_derivability_of_traced_words():
    for m, n in SMALL:
        report(6, cli.check_infinite_derivability(m, n, trials=200),
               budget=60.0)


def test_criterion_07_sector_sequences_match_itineraries():
    for m, n in SMALL:
        report(7, cli.check_itinerary_agreement(m, n, trials=200))


def test_criterion_08_derivation_against_traced_dual_words():
    for m, n in SMALL:
        report(8, cli.check_geometric_oracle(m, n, trials=100))


def test_criterion_09_generation_inverts_derivation():
    for m, n in SMALL:
        report(9, cli.check_generation_inverse(m, n, trials=100))


def test_criterion_10_substitutions_conjugate_generation():
    report(10, cli.check_conjugacy(trials=1000))


def test_criterion_11_direction_recognition():
    for m, n in SMALL:
        report(11, cli.check_direction_recognition(m, n, trials=100),
               budget=10.0)


def test_criterion_12_periodic_fixed_points():
    report(12, cli.check_periodic_fixed_points())
