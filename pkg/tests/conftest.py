import numpy as np
import pytest

from steadyinv.lti import TransferFunction
from steadyinv.signal import ModeSum

ACCEPTANCE_LINES: list[str] = []


def random_poles(rng, order, re_range=(-5.0, -0.2), im_range=(0.1, 3.0)):
    """Real poles and conjugate pairs with real parts drawn from ``re_range``."""
    poles = []
    while len(poles) < order:
        re = rng.uniform(*re_range)
        if order - len(poles) >= 2 and rng.random() < 0.5:
            im = rng.uniform(*im_range)
            poles += [complex(re, im), complex(re, -im)]
        else:
            poles.append(complex(re, 0.0))
    return poles


def poly_from_roots(roots):
    """Ascending real coefficients of prod(s - r)."""
    return np.real(np.poly(roots))[::-1] if len(roots) else np.array([1.0])


def random_tf(rng, max_order=6, avoid=(), min_gap=1e-3, return_poles=False):
    """Random stable proper plant whose zeros stay ``min_gap`` away from ``avoid``."""
    order = int(rng.integers(1, max_order + 1))
    poles = random_poles(rng, order)
    den = poly_from_roots(poles)
    while True:
        nz = int(rng.integers(0, order + 1))
        zeros = random_poles(rng, nz, re_range=(-3.0, 3.0))
        if all(abs(z - lam) >= min_gap for z in zeros for lam in avoid):
            break
    num = poly_from_roots(zeros) * rng.uniform(0.5, 2.0) * rng.choice([-1.0, 1.0])
    tf = TransferFunction(num, den)
    return (tf, poles) if return_poles else tf


def random_modesum(rng, max_modes=3, max_degree=3, a_range=(0.0, 0.5), w_range=(0.0, 5.0)):
    pieces = []
    for _ in range(int(rng.integers(1, max_modes + 1))):
        a = rng.uniform(*a_range)
        w = 0.0 if rng.random() < 0.3 else rng.uniform(*w_range)
        k = int(rng.integers(0, max_degree + 1))
        coeffs = rng.normal(size=k + 1)
        if w > 0:
            coeffs = coeffs + 1j * rng.normal(size=k + 1)
        pieces.append((complex(a, w), coeffs))
    return ModeSum.from_modes(pieces)


def mode_rel_err(got: ModeSum, want: ModeSum) -> float:
    """Largest per-mode relative coefficient error between two mode sums."""
    worst = 0.0
    lams = {m.lam for m in got.modes} | {m.lam for m in want.modes}
    for lam in lams:
        a = got.mode(lam)
        b = want.mode(lam)
        pa = np.array(a.poly if a else [0j])
        pb = np.array(b.poly if b else [0j])
        n = max(len(pa), len(pb))
        pa = np.pad(pa, (0, n - len(pa)))
        pb = np.pad(pb, (0, n - len(pb)))
        scale = max(np.max(np.abs(pb)), 1e-300)
        worst = max(worst, float(np.max(np.abs(pa - pb)) / scale))
    return worst


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def first_order():
    return TransferFunction([1.0], [1.0, 1.0])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def _sympy_signal(ms: ModeSum, t):
    import sympy as sp

    expr = sp.Integer(0)
    for m in ms.modes:
        env = sum((sp.sympify(complex(c)) * t**k for k, c in enumerate(m.poly)), sp.Integer(0))
        lam = complex(m.lam)
        if m.oscillatory:
            expr += sp.im(sp.expand(env * sp.exp((lam.real + sp.I * lam.imag) * t)))
        else:
            expr += sp.re(env) * sp.exp(lam.real * t)
    return expr


def ode_residual(tf, u: ModeSum, y: ModeSum, ts=(0.0, 0.37, 1.3, 2.9, 4.1)) -> float:
    """
    Relative residual of ``den(d/dt) y - num(d/dt) u`` at sample times.

    A steady-state input/output pair satisfies the plant's differential
    equation identically, so this checks the forward and inverse maps without
    going through them.
    """
    import sympy as sp

    t = sp.Symbol("t", real=True)
    ue, ye = _sympy_signal(u, t), _sympy_signal(y, t)
    terms = []
    for i, c in enumerate(tf.den_real):
        terms.append(c * sp.diff(ye, t, i))
    for i, c in enumerate(tf.num_real):
        terms.append(-c * sp.diff(ue, t, i))
    f = sp.lambdify(t, terms, "mpmath")
    worst = 0.0
    for tv in ts:
        vals = [complex(v) for v in f(tv)]
        res = abs(sum(vals))
        scale = max(sum(abs(v) for v in vals), 1e-300)
        worst = max(worst, res / scale)
    return worst
