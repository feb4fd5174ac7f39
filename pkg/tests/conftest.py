import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from alphageo.manifold import (  # noqa: E402
    BayesianModel,
    FamilySpec,
    ParamDomain,
    family_from_spec,
    trunc_beta_prior,
    uniform_prior,
    unit_prior,
)
from alphageo.quadrature import QuadratureGrid  # noqa: E402

ROOT = Path(__file__).resolve().parents[1]
CONFIGS = ROOT / "configs"

BERN_BOX = ((0.1, 0.9),)
CAT_BOX = ((0.1, 0.4), (0.1, 0.4))
TILT_BOX = ((-0.5, 0.5), (-0.5, 0.5))
TILT_SPEC = FamilySpec("tilted", base=(0.1, 0.2, 0.3, 0.4), features=((0, 1, 0, 2), (1, 0, -1, 0.5)))


def bernoulli(prior="uniform", box=BERN_BOX):
    dom = ParamDomain(box)
    fam = family_from_spec(FamilySpec("bernoulli"), dom)
    return BayesianModel(fam, make_prior(prior, dom))


def categorical(prior="uniform", box=CAT_BOX):
    dom = ParamDomain(box)
    fam = family_from_spec(FamilySpec("categorical", d=3), dom)
    return BayesianModel(fam, make_prior(prior, dom))


def tilted(prior="uniform"):
    dom = ParamDomain(TILT_BOX)
    return BayesianModel(family_from_spec(TILT_SPEC, dom), make_prior(prior, dom))


def make_prior(kind, dom):
    if kind == "uniform":
        return uniform_prior(dom)
    if kind == "unit":
        return unit_prior(dom)
    if kind == "beta":
        return trunc_beta_prior(dom, [2.0] * dom.k, [2.0] * dom.k)
    raise ValueError(kind)


@pytest.fixture
def bern_uniform():
    return bernoulli("uniform")


@pytest.fixture
def bern_beta():
    return bernoulli("beta")


@pytest.fixture
def simpson201():
    return QuadratureGrid.build("simpson", 201, BERN_BOX)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    verdicts = getattr(mod, "VERDICTS", None) if mod else None
    if verdicts:
        terminalreporter.section("acceptance criteria")
        for n in sorted(verdicts):
            terminalreporter.write_line(verdicts[n])
