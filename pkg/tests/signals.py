"""Synthetic test signals."""

import numpy as np
from scipy.integrate import solve_ivp
from scipy.signal import lfilter


def sine(n=1000, period=67.0):
    t = np.arange(1, n + 1)
    return np.sin(2 * np.pi * t / period)


def lorenz_x(n=5000, dt=0.01, transient=5000, sigma=10.0, rho=28.0, beta=8.0 / 3.0):
    def rhs(_, v):
        x, y, z = v
        return [sigma * (y - x), x * (rho - z) - y, x * y - beta * z]

    t_eval = np.arange(transient + n) * dt
    sol = solve_ivp(rhs, (0, t_eval[-1]), [1.0, 1.0, 1.0], t_eval=t_eval, rtol=1e-9, atol=1e-9)
    return sol.y[0, transient:]


def two_regime(seed, n=5000, rho=0.95, ratio=5.0):
    """Persistent AR(1) first half, i.i.d. noise at ``ratio`` x its sd second half."""
    rng = np.random.default_rng(seed)
    half = n // 2
    burn = 500
    ar = lfilter([1.0], [1.0, -rho], rng.normal(size=half + burn))[burn:]
    noise = rng.normal(scale=ratio * ar.std(ddof=1), size=n - half)
    return np.concatenate([ar, noise])


def piecewise_lam():
    """0.95 for 500 points, linear fall to 0.75 over 300, rise to 0.93 over 300."""
    return np.concatenate(
        [
            np.full(500, 0.95),
            np.linspace(0.95, 0.75, 301)[1:],
            np.linspace(0.75, 0.93, 301)[1:],
        ]
    )


def random_walk(seed, n, start=100.0):
    rng = np.random.default_rng(seed)
    return start * np.exp(np.cumsum(rng.normal(scale=0.01, size=n)))


def write_price_csv(path, values, start="2000-01-03"):
    """Business-day dated CSV with a ``close`` column."""
    import datetime as dt

    d = dt.date.fromisoformat(start)
    lines = ["date,close"]
    for v in values:
        while d.weekday() >= 5:
            d += dt.timedelta(days=1)
        lines.append(f"{d.isoformat()},{float(v)!r}")
        d += dt.timedelta(days=1)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
