from __future__ import annotations

import pytest

from crossig.equivalence import Workspace, build_catalog
from crossig.fixtures import ACCEPTANCE_FIXTURES, builtin, trace_groupoid
from crossig.functor_ci import build_gamma
from crossig.functor_ic import build_ig

FIXTURE_NAMES = [builtin(n, p).name for n, p in ACCEPTANCE_FIXTURES]
SMALL_NAMES = [name for name in FIXTURE_NAMES if name != "full_transformation(3)"]


class Built:
    """Lazy per-fixture constructions shared across the session."""

    def __init__(self):
        self.semigroups = {S.name: S for S in (builtin(n, p) for n, p in ACCEPTANCE_FIXTURES)}
        self._ig = {}
        self._gamma = {}
        self._ig2 = {}
        self.workspace = Workspace()
        self._catalog = None

    def ig(self, name):
        if name not in self._ig:
            self._ig[name] = trace_groupoid(self.semigroups[name])
        return self._ig[name]

    def gamma(self, name):
        if name not in self._gamma:
            self._gamma[name] = build_gamma(self.ig(name))
        return self._gamma[name]

    def ig2(self, name):
        if name not in self._ig2:
            self._ig2[name] = build_ig(self.gamma(name).x)
        return self._ig2[name]

    @property
    def catalog(self):
        if self._catalog is None:
            self._catalog = build_catalog(self.semigroups.values())
            for name, (_, G) in self._catalog.items():
                self._ig[name] = G
        return self._catalog


_BUILT = Built()


@pytest.fixture(scope="session")
def built():
    return _BUILT
