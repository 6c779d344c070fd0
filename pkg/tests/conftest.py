import json
from importlib import resources

import pytest

from quatisom import QuatAlgebra, standard_extremal_order
from quatisom.serialization import ideal_from_json, quaternion_from_json


@pytest.fixture(scope="session")
def alg103():
    return QuatAlgebra(103)


@pytest.fixture(scope="session")
def alg503():
    return QuatAlgebra(503)


@pytest.fixture(scope="session")
def o0_103(alg103):
    return standard_extremal_order(alg103)


@pytest.fixture(scope="session")
def o0_503(alg503):
    return standard_extremal_order(alg503)


def load_fixture(name: str) -> dict:
    ref = resources.files("quatisom") / "fixtures" / name
    return json.loads(ref.read_text())


@pytest.fixture(scope="session")
def example_p103(alg103):
    data = load_fixture("worked_example_p103.json")
    return {
        "alg": alg103,
        "alpha": quaternion_from_json(alg103, data["alpha"]),
        "nu1": quaternion_from_json(alg103, data["nu1"]),
        "I11": ideal_from_json(data["I11"], alg103),
        "I21": ideal_from_json(data["I21"], alg103),
        "I12": ideal_from_json(data["I12"], alg103),
        "I22": ideal_from_json(data["I22"], alg103),
    }


@pytest.fixture(scope="session")
def example_p503(alg503):
    data = load_fixture("worked_example_p503.json")
    return {
        "alg": alg503,
        "I11": ideal_from_json(data["I11"], alg503),
        "I21": ideal_from_json(data["I21"], alg503),
        "I12": ideal_from_json(data["I12"], alg503),
        "I22": ideal_from_json(data["I22"], alg503),
    }
