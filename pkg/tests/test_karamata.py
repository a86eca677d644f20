import math

import numpy as np
import pytest

from steinfrechet import (acceptance_catalog, catalog, da_check, estimate_index, karamata_limit,
                          potter_check, rv_report)

CAUCHY = catalog("cauchy")
PARETO = catalog("pareto", alpha=2.0)


def test_index_exact_power():
    assert estimate_index(PARETO.sf) == pytest.approx(-2.0, abs=1e-6)


def test_index_cauchy_pdf():
    assert estimate_index(CAUCHY.pdf, np.geomspace(1e2, 1e6, 20)) == pytest.approx(-2.0, abs=1e-3)


def test_index_rejects_nonpositive():
    with pytest.raises(ValueError):
        estimate_index(lambda x: np.zeros_like(x))


def test_karamata_pareto_constant():
    ratios, ts = karamata_limit(PARETO, np.geomspace(2, 1e6, 10))
    assert ratios == pytest.approx([2.0] * len(ts), rel=1e-12)


def test_karamata_cauchy():
    ratios, _ = karamata_limit(CAUCHY, [1e4])
    assert ratios[0] == pytest.approx(1.0, abs=1e-3)


def test_potter_pareto_clean():
    viol, consts = potter_check(PARETO.sf, -2.0, 0.1, np.geomspace(1e2, 1e6, 10),
                                np.geomspace(1e-2, 1e2, 21))
    assert viol == []
    assert consts["c"] > 0


def test_potter_cauchy_pdf():
    viol, _ = potter_check(CAUCHY.pdf, -2.0, 0.5, np.geomspace(1e3, 1e6, 10),
                           np.geomspace(1e-2, 1.0, 21))
    assert viol == []


def test_da_pareto_exact():
    for n, v in da_check(PARETO, [10, 100, 10**4]):
        assert v == pytest.approx(1.0, rel=1e-14)


def test_da_cauchy():
    (_, v), = da_check(CAUCHY, [10**4])
    assert v == pytest.approx(1.0, abs=1e-4)


def test_da_callable_scale():
    (_, v), = da_check(CAUCHY, [100], a_n=lambda n: math.tan(math.pi * (0.5 - 1.0 / n)))
    assert v == pytest.approx(1.0, rel=1e-12)


@pytest.mark.parametrize("name", ["pareto", "cauchy", "loglogistic", "burr12", "gpd"])
def test_rv_report_index(name):
    law = acceptance_catalog()[name]
    rep = rv_report(law)
    assert rep.estimated_index == pytest.approx(-law.tail_index, rel=0.02)
    assert rep.rh_index == pytest.approx(-law.tail_index - 1, rel=0.02)
    assert len(rep.ratio_table) == len(rep.t_grid)


def test_rv_report_truncates_grid():
    rep = rv_report(catalog("loglog_corrected", alpha=1.0))
    assert any("truncated" in w for w in rep.warnings)
