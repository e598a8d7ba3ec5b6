import numpy as np
import pytest

from blab.quadrature import QuadConfig
from blab.search import sup_search


def test_bloch_objective_of_log():
    s = sup_search(lambda z: z.imag / np.abs(z + 1j))
    assert s.sup == pytest.approx(1, abs=1e-3)
    assert s.on_hull and s.witness.y > 1e3


def test_zero_objective():
    sup, witness, on_hull = sup_search(lambda z: 0 * z.imag)
    assert sup == 0


def test_boundary_maximum():
    s = sup_search(lambda z: 1 / np.abs(z + 1j))
    assert s.sup == pytest.approx(1, abs=1e-6)
    assert s.on_hull and s.witness.y <= 2e-8


def test_interior_maximum_found_via_hint():
    p = 3 + 1e-3j
    g = lambda z: 1 / (1 + (np.abs(z - p) / p.imag) ** 2)
    s = sup_search(g, hints=[p])
    assert s.sup == pytest.approx(1, abs=1e-6)
    assert not s.on_hull


def test_monotone_in_density():
    g = lambda z: np.abs(np.sin(3 * z.real)) * z.imag * np.exp(-z.imag) / (1 + z.real ** 2)
    cfg = QuadConfig(truncation_radius=1e3)
    vals = [sup_search(g, cfg, density=d).sup for d in range(4)]
    assert all(b >= a for a, b in zip(vals, vals[1:]))
