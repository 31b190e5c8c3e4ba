import math

import numpy as np
import pytest

from diskinterp.grids import GridFunction, PolarGridSpec
from diskinterp.reps import (
    BlaschkeLagrangeRep,
    KernelRep,
    PolyRep,
    bergman_kernel_deriv,
    complex_derivative,
)


def test_bergman_kernel_values():
    # unit disk: K(z, w) = 1/(pi (1 - wbar z)^2)
    z, w = 0.3 + 0.1j, -0.2 + 0.4j
    expect = 1.0 / (math.pi * (1.0 - np.conj(w) * z) ** 2)
    assert complex(bergman_kernel_deriv(z, w, 0, 0)) == pytest.approx(expect, rel=1e-14)
    # K(0, 0) on a disk of radius s: 1/(pi s^2)
    assert complex(bergman_kernel_deriv(0.0, 0.0, 0, 0, s=0.5)) == pytest.approx(
        1.0 / (math.pi * 0.25), rel=1e-14
    )


def test_bergman_kernel_derivatives_match_finite_differences():
    w = 0.2 - 0.3j
    h = 1e-5
    for m in (1, 2):
        exact = complex(bergman_kernel_deriv(0.1, w, m, 0))
        stencil = [complex(bergman_kernel_deriv(0.1 + k * h, w, 0, 0)) for k in (-1, 0, 1)]
        if m == 1:
            fd = (stencil[2] - stencil[0]) / (2 * h)
        else:
            fd = (stencil[2] - 2 * stencil[1] + stencil[0]) / (h * h)
        assert exact == pytest.approx(fd, rel=1e-4)
    # hermitian symmetry of the mixed derivative: d_z d_wbar K(z,w)
    # conjugates under swapping the arguments
    a = complex(bergman_kernel_deriv(0.1, w, 1, 1))
    b = complex(bergman_kernel_deriv(w, 0.1, 1, 1))
    assert a == pytest.approx(np.conj(b), rel=1e-12)


def test_complex_derivative_of_polynomial():
    fun = lambda z: z ** 4 - 2.0 * z
    z = np.array(0.3 + 0.2j)
    assert complex(complex_derivative(fun, z, 1)) == pytest.approx(
        4.0 * (0.3 + 0.2j) ** 3 - 2.0, rel=1e-10
    )
    assert complex(complex_derivative(fun, z, 3)) == pytest.approx(
        24.0 * (0.3 + 0.2j), rel=1e-8
    )


def test_polyrep_eval_and_derivative():
    f = PolyRep((1.0, 0.0, 3.0))  # 1 + 3 z^2
    z = np.array(0.4 - 0.1j)
    assert complex(f(z)) == pytest.approx(1.0 + 3.0 * (0.4 - 0.1j) ** 2, rel=1e-14)
    assert complex(f.derivative(z, 1)) == pytest.approx(6.0 * (0.4 - 0.1j), rel=1e-14)
    assert complex(f.derivative(z, 2)) == pytest.approx(6.0, rel=1e-14)
    assert complex(f.derivative(z, 5)) == 0.0


def test_kernelrep_matches_kernel():
    f = KernelRep(((0.2 + 0j, 0, 1.0 + 0j),))
    z = np.array(0.5j)
    assert complex(f(z)) == pytest.approx(
        complex(bergman_kernel_deriv(0.5j, 0.2, 0, 0)), rel=1e-14
    )


def test_blaschke_rep_constant_term():
    f = BlaschkeLagrangeRep(((2.5 + 0j, ()),))
    assert complex(f(np.array(0.3 + 0.3j))) == pytest.approx(2.5, rel=1e-14)


def test_rep_serialization_roundtrippable():
    for rep in (
        PolyRep((1.0, 2.0j)),
        KernelRep(((0.1 + 0j, 1, 0.5j),)),
        BlaschkeLagrangeRep(((1.0 + 0j, ((0.2 + 0j, 0.4 + 0j),)),)),
    ):
        d = rep.to_dict()
        assert isinstance(d["kind"], str)
        import json

        json.dumps(d)  # must be JSON-ready


def test_grid_spec_validation():
    with pytest.raises(ValueError):
        PolarGridSpec(8, 64)
    with pytest.raises(ValueError):
        PolarGridSpec(64, 64, 1.1)


def test_grid_function_shape_check():
    spec = PolarGridSpec(32, 32)
    with pytest.raises(ValueError):
        GridFunction(spec, np.zeros((4, 4)))


def test_grid_integrate_constant():
    spec = PolarGridSpec(64, 64, 0.9)
    g = GridFunction.sample(lambda z: np.ones_like(z), spec)
    assert complex(g.integrate()) == pytest.approx(math.pi * 0.81, rel=1e-12)


def test_grid_as_callable_nearest_node():
    spec = PolarGridSpec(64, 64, 0.9)
    g = GridFunction.sample(lambda z: z, spec)
    fun = g.as_callable()
    z = 0.412 + 0.333j
    assert abs(complex(fun(np.array(z))) - z) < 0.05


def test_grid_to_table_format():
    spec = PolarGridSpec(16, 16, 0.5)
    g = GridFunction.sample(lambda z: np.ones_like(z), spec)
    table = g.to_table()
    lines = table.strip().split("\n")
    assert lines[0].startswith("#")
    assert len(lines) == 1 + 16 * 16
    assert len(lines[1].split()) == 4
