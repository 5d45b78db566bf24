"""Independent reference values for the unit tests.

Re-implements the kick-drift-kick leapfrog in numpy and locates roots by dense
sign-change scans refined with brentq. Run with python3; the printed numbers are
frozen into tests/unit/*.cpp.
"""
import math

import numpy as np
from scipy.optimize import brentq


def leapfrog(dTdy, dVdx, x, y, tau, dt):
    steps = max(1, round(tau / dt))
    h = tau / steps
    for _ in range(steps):
        y = y - 0.5 * h * dVdx(x)
        x = x + h * dTdy(y)
        y = y - 0.5 * h * dVdx(x)
    return x, y


def scan_roots(f, lo, hi, n):
    grid = np.linspace(lo, hi, n)
    vals = [f(g) for g in grid]
    roots = []
    for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if fa == 0.0:
            roots.append(a)
        elif fa * fb < 0.0:
            roots.append(brentq(f, a, b, xtol=1e-15, rtol=1e-15))
    return roots


def cusp_roots(mu1, mu2):
    def r(y0):
        x1, _ = leapfrog(lambda y: 2 * y, lambda x: mu1 + 2 * mu2 * x + 4 * x**3, 0.2, y0, 4.0, 0.1)
        return x1 - 0.2
    return scan_roots(r, -3.0, 3.0, 6001)


def bratu_roots(mu, dt=1e-3):
    def r(p0):
        u1, _ = leapfrog(lambda p: p, lambda u: mu * math.exp(u), 0.0, p0, 1.0, dt)
        return u1
    return scan_roots(r, 0.0, 20.0, 401)


def bratu_fold():
    th = brentq(lambda t: t * math.tanh(t / 4) - 4, 1, 10, xtol=1e-15)
    return th * th / (2 * math.cosh(th / 4) ** 2)


def periodic_pitchfork_roots(mu, dt=1e-3):
    """Roots of x(1) - 1 whose trajectory stays in x >= -1.5, |y| <= 30."""
    steps = round(1.0 / dt)

    def run(y0):
        x, y, inside = 1.0, y0, True
        for _ in range(steps):
            y = y - 0.5 * dt * (3 * x * x + mu)
            x = x + dt * (2 * y + 0.03 * y * y)
            y = y - 0.5 * dt * (3 * x * x + mu)
            if not (x >= -1.5 and abs(y) <= 30.0):
                inside = False
                break
        return x, inside

    roots = []
    grid = np.linspace(-30.0, 30.0, 6001)
    for a, b in zip(grid[:-1], grid[1:]):
        (xa, ia), (xb, ib) = run(a), run(b)
        if ia and ib and (xa - 1.0) * (xb - 1.0) < 0.0:
            roots.append(brentq(lambda y0: run(y0)[0] - 1.0, a, b, xtol=1e-15, rtol=1e-15))
    return roots


def timereversal_pitchfork(dt=5e-4):
    def r(mu, y0):
        x1, _ = leapfrog(lambda y: -2 * y * math.sin(y * y), lambda x: 2 * mu * x + 3 * x * x, 1.0, y0, 0.1, dt)
        return x1 - 1.0

    def symmetric_root(mu):
        # The reversal-symmetric orbit ends with y1 = -y0.
        def s(y0):
            _, y1 = leapfrog(lambda y: -2 * y * math.sin(y * y), lambda x: 2 * mu * x + 3 * x * x, 1.0, y0, 0.1, dt)
            return y1 + y0
        return brentq(s, 1.7, 1.85, xtol=1e-14)

    def slope(mu):
        y = symmetric_root(mu)
        h = 1e-5
        return (r(mu, y + h) - r(mu, y - h)) / (2 * h)

    mu = brentq(slope, 16.5, 17.5, xtol=1e-10)
    return mu, symmetric_root(mu)


def d4_roots(mu1, mu2, mu3):
    def grad(t):
        a, b = t
        return np.array([3 * a * a + b * b + 2 * mu3 * a + mu1, 2 * a * b - 2 * mu3 * b + mu2])

    def jac(t):
        a, b = t
        return np.array([[6 * a + 2 * mu3, 2 * b], [2 * b, 2 * a - 2 * mu3]])

    roots = []
    for a in np.linspace(-0.3, 0.3, 61):
        for b in np.linspace(-0.3, 0.3, 61):
            t = np.array([a, b])
            for _ in range(60):
                try:
                    t = t - np.linalg.solve(jac(t), grad(t))
                except np.linalg.LinAlgError:
                    break
            if np.linalg.norm(grad(t)) < 1e-13 and np.all(np.abs(t) <= 0.3):
                if all(np.linalg.norm(t - q) > 1e-8 for q in roots):
                    roots.append(t)
    return sorted(roots, key=lambda q: (q[0], q[1]))


if __name__ == "__main__":
    np.set_printoptions(precision=17)
    print("cusp roots mu=(-0.5, 0.95):", ["%.15g" % v for v in cusp_roots(-0.5, 0.95)])
    print("cusp roots mu=(0, 0):", ["%.15g" % v for v in cusp_roots(0.0, 0.0)])
    print("bratu roots mu=2:", ["%.15g" % v for v in bratu_roots(2.0)])
    print("bratu fold:", "%.15g" % bratu_fold())
    print("periodic pitchfork roots mu=-53.306:", ["%.15g" % v for v in periodic_pitchfork_roots(-53.306)])
    print("periodic pitchfork roots mu=-20:", ["%.15g" % v for v in periodic_pitchfork_roots(-20.0)])
    print("time-reversal pitchfork (mu, y0):", ["%.12g" % v for v in timereversal_pitchfork()])
    print("d4 roots mu=(0.01, 0.01, 0.1):", [["%.15g" % c for c in q] for q in d4_roots(0.01, 0.01, 0.1)])
    print("d4 roots mu=(-0.01, 0.01, 0.1):", [["%.15g" % c for c in q] for q in d4_roots(-0.01, 0.01, 0.1)])
    print("d4 roots mu=(-0.01, 0, 0):", [["%.15g" % c for c in q] for q in d4_roots(-0.01, 0.0, 0.0)])
