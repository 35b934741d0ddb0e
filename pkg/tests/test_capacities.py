import math

import numpy as np
import pytest

from src.capacities import (
    capacity_report,
    chi_capacity,
    chi_capacity_numeric,
    coherent_info_maximally_mixed,
    coherent_information,
    ea_capacity,
    ea_capacity_numeric,
    quantum_capacity_verdict,
)
from src.channel_core import identity_channel, landau_streater
from src.errors import ContractViolation
from src.models.reports import CapacityReport, OptimizerConfig

TWO_J = [1, 2, 3, 4, 5, 6]


def test_chi_capacity_spin_half():
    assert math.isclose(chi_capacity(1), 5 / 3 - math.log2(3))


def test_chi_capacity_closed_form():
    for two_j in TWO_J:
        j = two_j / 2
        expected = math.log2((2 * j + 1) / (j + 1)) + (j / (j + 1)) * math.log2(j)
        assert math.isclose(chi_capacity(two_j), expected, abs_tol=1e-12)


@pytest.mark.parametrize("two_j", [1, 2, 3])
def test_chi_capacity_numeric(two_j):
    numeric = chi_capacity_numeric(landau_streater(two_j), OptimizerConfig(restarts=16, seed=5))
    assert abs(numeric - chi_capacity(two_j)) <= 1e-6


def test_ea_capacity_spin_one():
    assert math.isclose(ea_capacity(2), math.log2(3))


@pytest.mark.parametrize("two_j", TWO_J)
def test_ea_capacity_matches_entropy_expression(two_j):
    assert abs(ea_capacity_numeric(landau_streater(two_j)) - ea_capacity(two_j)) <= 1e-10


@pytest.mark.parametrize("two_j", TWO_J)
def test_coherent_information_at_maximally_mixed(two_j):
    expected = math.log2(two_j + 1) - math.log2(3)
    assert abs(coherent_info_maximally_mixed(two_j) - expected) <= 1e-10


def test_coherent_information_of_identity_is_entropy():
    rho = np.diag([0.5, 0.25, 0.25])
    assert math.isclose(coherent_information(identity_channel(3), rho), 1.5)


def test_coherent_information_rejects_non_density():
    with pytest.raises(ContractViolation):
        coherent_information(landau_streater(2), np.eye(3))


def test_quantum_capacity_verdicts():
    assert quantum_capacity_verdict(1) == (True, None)
    assert quantum_capacity_verdict(2) == (True, None)
    zero, bound = quantum_capacity_verdict(3)
    assert not zero
    assert math.isclose(bound, 2 - math.log2(3))


@pytest.mark.parametrize("two_j", TWO_J)
def test_capacity_report(two_j):
    report = capacity_report(two_j)
    assert report.two_j == two_j
    assert report.ea_capacity >= report.chi_capacity
    assert report.classical_capacity_exact == (two_j == 1)
    data = report.to_dict()
    assert data['caveat'] == report.caveat
    if two_j == 1:
        assert "equals the classical capacity" in report.caveat
    else:
        assert "lower bound" in report.caveat


def test_capacity_report_ordering_enforced():
    with pytest.raises(ContractViolation):
        CapacityReport(two_j=3, chi_capacity=1.0, ea_capacity=0.5, q_lower_bound=0.0,
                       q_exact_zero=False, s_min=0.5, coherent_info_mm=0.0,
                       classical_capacity_exact=False)


@pytest.mark.parametrize("two_j", TWO_J)
def test_q_bound_is_the_coherent_information(two_j):
    report = capacity_report(two_j)
    if report.q_exact_zero:
        assert report.q_lower_bound is None
        assert report.to_dict()['q_lower_bound'] is None
    else:
        assert abs(report.q_lower_bound - report.coherent_info_mm) <= 1e-10
        assert report.q_lower_bound > 0


def test_spin_half_reports_no_q_bound():
    report = capacity_report(1)
    assert report.coherent_info_mm < 0
    assert report.q_lower_bound is None


def test_capacity_report_rejects_bound_for_vanishing_q():
    with pytest.raises(ContractViolation):
        CapacityReport(two_j=1, chi_capacity=0.1, ea_capacity=0.5, q_lower_bound=0.0,
                       q_exact_zero=True, s_min=0.5, coherent_info_mm=-0.58,
                       classical_capacity_exact=True)
