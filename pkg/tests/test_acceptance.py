"""One test per top-level acceptance check, each printing its verdict line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the PASS lines
with their detail strings; the whole file is the release gate.
"""

from padicwave import acceptance


def report(r):
    print(f"{'PASS' if r.passed else 'FAIL'} {r.name} - {r.detail}")
    assert r.passed, f"{r.name}: {r.detail}"


def test_integration_formulas():
    report(acceptance.check_integration_formulas())


def test_fourier_round_trip():
    report(acceptance.check_fourier_round_trip())


def test_eigenrelation():
    report(acceptance.check_eigenrelation())


def test_operator_duality():
    report(acceptance.check_operator_duality())


def test_kernel_identity():
    report(acceptance.check_kernel_identity())


def test_solver_duality():
    report(acceptance.check_solver_duality())


def test_time_pde():
    report(acceptance.check_time_pde())


def test_finite_dependence():
    report(acceptance.check_finite_dependence())


def test_l1_bound():
    report(acceptance.check_l1_bound())


def test_uniqueness():
    report(acceptance.check_uniqueness())


def test_refusal_path():
    report(acceptance.check_refusal())


def test_kernel_identity_catches_an_injected_fault():
    # the floor-bracket variant must be caught, or the check proves nothing
    r = acceptance.check_kernel_identity(bracket="floor")
    assert not r.passed
    assert "mismatch" in r.detail
