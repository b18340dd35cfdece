import copy
from importlib import resources
from pathlib import Path

import pytest
import yaml

from xca import load_default_kb, load_profile

REPO_ROOT = Path(__file__).resolve().parent.parent
PROFILE_DIR = REPO_ROOT / "profiles"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"


@pytest.fixture(scope="session")
def kb():
    return load_default_kb()


@pytest.fixture(scope="session")
def _default_kb_doc():
    data = resources.files("xca").joinpath("data/default_kb.yaml").read_bytes()
    return yaml.safe_load(data)


@pytest.fixture()
def kb_doc_factory(_default_kb_doc):
    """Fresh mutable copies of the shipped KB document, for constructing violations."""
    return lambda: copy.deepcopy(_default_kb_doc)


@pytest.fixture(scope="session")
def rns_profile():
    return load_profile(PROFILE_DIR / "rns.profile")


@pytest.fixture(scope="session")
def scs_profile():
    return load_profile(PROFILE_DIR / "scs.profile")


@pytest.fixture(scope="session")
def gadget_profile():
    return load_profile(PROFILE_DIR / "gadget.profile")
