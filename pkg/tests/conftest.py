import copy
import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from foliated_scenes import catalog
from foliated_scenes.core_model import build_scene, load_scene

SCENES = Path(__file__).resolve().parents[1] / "src" / "foliated_scenes" / "scenes"
VALID_SCENES = ("three_lunes", "exceptional", "corner_transitions", "random_1", "random_2", "random_3", "three_lunes_injected_conflict")
INVALID_SCENES = ("resonant_chain", "morse_smale_violation")

settings.register_profile("suite", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("suite")


def scene_doc(name: str) -> dict:
    return json.loads((SCENES / f"{name}.json").read_text())


def scene(name: str):
    return load_scene(SCENES / f"{name}.json")


def mutate(name: str, fn):
    doc = copy.deepcopy(scene_doc(name))
    fn(doc)
    return build_scene(doc)


@pytest.fixture(scope="session")
def three_lunes():
    return scene("three_lunes")


@pytest.fixture(scope="session")
def corners():
    return scene("corner_transitions")


@pytest.fixture(scope="session")
def exceptional():
    return scene("exceptional")


@pytest.fixture
def three_lunes_doc():
    return catalog.three_lunes()
