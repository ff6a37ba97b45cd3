from __future__ import annotations

from dataclasses import dataclass

import pytest
from hypothesis import HealthCheck, settings

from tvforge.config import SystemConfig, load_config
from tvforge.beideal import generate_ideal
from tvforge.colours import RegisteredSystem
from tvforge.fixtures import spine_file, system_config
from tvforge.groebner import GroebnerBasis, buchberger
from tvforge.invariant import InvariantRecord, compute_invariant
from tvforge.poly import MonomialOrder, Polynomial
from tvforge.spine import Spine, build_spine, read_spine_file

settings.register_profile(
    "repro", derandomize=True, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repro")


@dataclass
class Tv21Context:
    config: SystemConfig
    rsys: RegisteredSystem
    order: MonomialOrder
    generators: list[Polynomial]
    basis: GroebnerBasis
    spines: dict[str, Spine]
    records: dict[str, InvariantRecord]


@pytest.fixture(scope="session")
def tv21() -> Tv21Context:
    config = load_config(system_config("tv21s"))
    rsys = config.registered()
    order = config.order(rsys)
    generators = generate_ideal(rsys)
    basis = buchberger(generators, order, source="tv21s-test")
    spines = {label: build_spine(code)
              for label, code in read_spine_file(spine_file())}
    records = {label: compute_invariant(sp, rsys, basis, label)
               for label, sp in spines.items()}
    return Tv21Context(config, rsys, order, generators, basis, spines,
                       records)
