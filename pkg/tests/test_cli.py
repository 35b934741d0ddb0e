import json
import math

import pytest
from click.testing import CliRunner

from src.commands.common import CSV_HEADER, encode_json, format_float
from src.errors import ContractViolation
from src.main import cli
from src.models.settings import Settings


@pytest.fixture
def runner(clean_env):
    return CliRunner()


def _run(runner, *args, env=None):
    return runner.invoke(cli, list(args), env=env)


def _report(result):
    return json.loads(result.stdout)


# ------------------------------------------------------------------------------
# spectrum
# ------------------------------------------------------------------------------
def test_spectrum_spin_half(runner):
    result = _run(runner, "spectrum", "--two-j", "1")
    assert result.exit_code == 0, result.output
    report = _report(result)
    assert report['schema_version'] == "1"
    assert report['command'] == "spectrum"
    assert report['two_j'] == 1
    levels = report['payload']['closed_form']['levels']
    assert [(level['lambda_L_exact'], level['multiplicity']) for level in levels] == [("1", 1), ("-1/3", 3)]
    assert report['payload']['determinant_exact'] == "-1/27"
    assert report['payload']['max_deviation'] <= 1e-9
    assert 'breaches' not in report


def test_spectrum_spin_one(runner):
    report = _report(_run(runner, "spectrum", "--two-j", "2"))
    levels = report['payload']['closed_form']['levels']
    assert [(level['lambda_L'], level['multiplicity']) for level in levels] == [(1.0, 1), (0.5, 3), (-0.5, 5)]


def test_spectrum_spin_two_has_zero_level(runner):
    report = _report(_run(runner, "spectrum", "--j", "2"))
    levels = report['payload']['closed_form']['levels']
    assert {'L': 3, 'lambda_L': 0.0, 'lambda_L_exact': "0", 'multiplicity': 7} in levels
    assert report['two_j'] == 4


def test_spectrum_csv(runner):
    result = _run(runner, "spectrum", "--two-j", "2", "--format", "csv")
    assert result.exit_code == 0, result.output
    lines = result.stdout.splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert lines[1].startswith("lambda_0,")
    assert any(line.startswith("determinant,") for line in lines)


# ------------------------------------------------------------------------------
# other analyses
# ------------------------------------------------------------------------------
def test_capacities_spin_half(runner):
    result = _run(runner, "capacities", "--two-j", "1", "--restarts", "4")
    assert result.exit_code == 0, result.output
    payload = _report(result)['payload']
    assert payload['chi_capacity'] == pytest.approx(5 / 3 - math.log2(3))
    assert payload['q_exact_zero'] is True
    assert payload['classical_capacity_exact'] is True
    assert payload['q_lower_bound'] is None


def test_capacities_bounds(runner):
    payload = _report(_run(runner, "capacities", "--two-j", "3", "--restarts", "4"))['payload']
    assert payload['q_lower_bound'] == pytest.approx(2 - math.log2(3))
    assert "lower bound" in payload['caveat']
    payload = _report(_run(runner, "capacities", "--two-j", "2", "--restarts", "4"))['payload']
    assert payload['ea_capacity'] == pytest.approx(math.log2(3))


@pytest.mark.parametrize("two_j,degradable,antidegradable", [(1, False, True), (2, True, True), (3, False, False)])
def test_degradability(runner, two_j, degradable, antidegradable):
    result = _run(runner, "degradability", "--two-j", str(two_j))
    assert result.exit_code == 0, result.output
    payload = _report(result)['payload']
    assert payload['degradable'] is degradable
    assert payload['antidegradable'] is antidegradable


def test_entanglement_witness(runner):
    result = _run(runner, "entanglement", "--two-j", "3")
    assert result.exit_code == 0, result.output
    payload = _report(result)['payload']
    assert payload['witness']['entangled'] is True
    assert payload['entanglement_breaking'] is False


def test_extremes_infinity_norm(runner):
    result = _run(runner, "extremes", "--two-j", "3", "--p", "inf", "--restarts", "16")
    assert result.exit_code == 0, result.output
    payload = _report(result)['payload']
    assert payload['p'] == "inf"
    assert payload['nu_p']['value'] == pytest.approx(0.6, abs=1e-6)
    assert payload['nu_p']['p'] == "inf"
    assert isinstance(payload['nu_p_closed'], float)


def test_extremes_rejects_small_p(runner):
    result = _run(runner, "extremes", "--two-j", "3", "--p", "0.5")
    assert result.exit_code == 2


def test_multiplicativity_spin_half(runner):
    result = _run(runner, "multiplicativity", "--two-j", "1", "--restarts", "8")
    assert result.exit_code == 0, result.output
    payload = _report(result)['payload']
    assert abs(payload['gap']) <= 1e-4


def test_full_report(runner):
    result = _run(runner, "report", "--two-j", "1", "--restarts", "4")
    assert result.exit_code == 0, result.output
    payload = _report(result)['payload']
    assert list(payload) == ["spectrum", "capacities", "degradability", "entanglement",
                             "extremes_p2", "extremes_pinf", "multiplicativity"]


def test_full_report_csv_rows_are_prefixed(runner):
    result = _run(runner, "report", "--two-j", "1", "--restarts", "4", "--format", "csv")
    assert result.exit_code == 0, result.output
    rows = result.stdout.splitlines()[1:]
    assert rows
    assert all("." in row.split(",")[0] for row in rows)


# ------------------------------------------------------------------------------
# determinism, configuration and exit codes
# ------------------------------------------------------------------------------
def test_output_is_deterministic_for_a_seed(runner):
    args = ("extremes", "--two-j", "2", "--restarts", "4", "--seed", "13")
    first = _run(runner, *args)
    second = _run(runner, *args)
    assert first.exit_code == 0, first.output
    assert first.stdout == second.stdout
    assert _report(first)['seed'] == 13


def test_report_fan_out_matches_serial(runner):
    args = ("report", "--two-j", "1", "--restarts", "4")
    serial = _run(runner, *args)
    threaded = _run(runner, *args, env={"LS_WORKERS": "3"})
    assert threaded.exit_code == 0, threaded.output
    assert serial.stdout == threaded.stdout


@pytest.mark.parametrize("args", [
    ("spectrum",),
    ("spectrum", "--two-j", "0"),
    ("spectrum", "--two-j", "-2"),
    ("spectrum", "--j", "0.7"),
    ("spectrum", "--two-j", "2", "--j", "1"),
    ("spectrum", "--two-j", "13"),
    ("spectrum", "--two-j", "2", "--format", "xml"),
    ("spectrum", "--two-j", "2", "--tol", "-1"),
    ("extremes", "--two-j", "2", "--restarts", "0"),
])
def test_bad_flags_exit_with_usage_error(runner, args):
    assert _run(runner, *args).exit_code == 2


def test_max_two_j_from_environment(runner):
    result = _run(runner, "spectrum", "--two-j", "3", env={"LS_MAX_TWO_J": "2"})
    assert result.exit_code == 2


@pytest.mark.parametrize("command", ["spectrum", "extremes", "capacities"])
def test_negative_seed_flag_is_a_usage_error(runner, command):
    result = _run(runner, command, "--two-j", "1", "--seed", "-1")
    assert result.exit_code == 2


def test_negative_seed_from_environment_is_a_usage_error(runner):
    result = _run(runner, "spectrum", "--two-j", "1", env={"LS_SEED": "-5"})
    assert result.exit_code == 2
    error = json.loads(result.stderr.strip().splitlines()[-1])
    assert error['error'] == "ContractViolation"
    assert "seed" in error['message']


def test_settings_reject_negative_seed():
    with pytest.raises(ContractViolation):
        Settings(seed=-1).validate()
    with pytest.raises(ContractViolation):
        Settings().override(seed=-3)


def test_invalid_environment_is_a_usage_error(runner):
    result = _run(runner, "spectrum", "--two-j", "1", env={"LS_SEED": "seven"})
    assert result.exit_code == 2
    error = json.loads(result.stderr.strip().splitlines()[-1])
    assert error['error'] == "ContractViolation"


def test_tolerance_breach_exits_with_three(runner):
    result = _run(runner, "spectrum", "--two-j", "3", "--tol", "1e-30")
    assert result.exit_code == 3
    report = _report(result)
    assert report['breaches']
    assert report['payload']['breaches'] == report['breaches']
    error = json.loads(result.stderr.strip().splitlines()[-1])
    assert error['error'] == "ToleranceBreach"


# ------------------------------------------------------------------------------
# encoding
# ------------------------------------------------------------------------------
def test_floats_use_seventeen_digits():
    assert format_float(0.1) == "0.10000000000000001"
    assert format_float(math.inf) == '"inf"'
    assert format_float(float("nan")) == '"nan"'


def test_json_encoding_round_trips():
    value = {'a': [1, 2.5, None, True], 'b': {'c': -1 / 3}, 'd': "λ"}
    assert json.loads(encode_json(value)) == value
