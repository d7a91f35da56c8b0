"""Generate the embedded Tracy-Widom (beta=1) CDF tabulation.

Solves the Hastings-McLeod solution of Painleve II,

    q''(s) = s*q(s) + 2*q(s)^3,    q(s) ~ Ai(s)  (s -> +inf),

together with the running integrals

    I(s) = int_s^inf q(x) dx,
    K(s) = int_s^inf q(x)^2 dx,
    J(s) = int_s^inf (x - s) q(x)^2 dx,

from which the GOE largest-eigenvalue CDF is

    F1(s) = exp(-(I(s) + J(s)) / 2).

Writes src/netcomm/_tw1_table.py (the frozen grid used by the package)
and prints high-precision audit values for the test suite.  Rerun with
`python tools/make_tw1_table.py` to regenerate; output is deterministic.
"""

import pathlib

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.interpolate import PchipInterpolator
from scipy.special import airy

S_START = 8.0
S_STOP = -10.0
GRID_LO, GRID_HI, GRID_STEP = -6.0, 5.0, 0.05
AUDIT_POINTS = [
    -5.0, -4.5, -4.0, -3.5, -3.0, -2.75, -2.5, -2.25, -2.0, -1.5,
    -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0,
]


def solve_painleve2():
    ai0, aip0, _, _ = airy(S_START)
    i0 = quad(lambda x: airy(x)[0], S_START, np.inf)[0]
    k0 = quad(lambda x: airy(x)[0] ** 2, S_START, np.inf)[0]
    j0 = quad(lambda x: (x - S_START) * airy(x)[0] ** 2, S_START, np.inf)[0]

    def rhs(s, y):
        q, qp, _, k, _ = y
        return [qp, s * q + 2.0 * q ** 3, -q, -q * q, -k]

    sol = solve_ivp(
        rhs, [S_START, S_STOP], [ai0, aip0, i0, k0, j0],
        method="DOP853", rtol=1e-12, atol=1e-14, dense_output=True,
    )
    if not sol.success:
        raise RuntimeError("Painleve II integration failed: " + sol.message)

    def cdf(s):
        _, _, i, _, j = sol.sol(np.asarray(s, dtype=float))
        return np.exp(-0.5 * (i + j))

    return cdf


def moments_from_table(grid, values):
    """Mean and sd by integrating the tabulated CDF (pchip interpolant),
    with analytic corrections for the mass outside the grid."""
    interp = PchipInterpolator(grid, values)
    lo, hi = grid[0], grid[-1]
    mean = (quad(lambda x: 1.0 - interp(x), 0.0, hi, limit=400)[0]
            - quad(lambda x: interp(x), lo, 0.0, limit=400)[0])
    ex2 = (2.0 * quad(lambda x: x * (1.0 - interp(x)), 0.0, hi, limit=400)[0]
           - 2.0 * quad(lambda x: x * interp(x), lo, 0.0, limit=400)[0])
    # tail corrections: left F ~ exp(-|s|^3/24 - |s|^{3/2}/(3 sqrt 2)),
    # right 1-F ~ exp(-(2/3) s^{3/2}) * s^{-3/4}; integrate the matched forms
    f_lo, f_hi = values[0], 1.0 - values[-1]

    def left_tail(s):
        a = abs(s)
        return f_lo * np.exp(-(a ** 3 - abs(lo) ** 3) / 24.0
                             - (a ** 1.5 - abs(lo) ** 1.5) / (3.0 * np.sqrt(2.0)))

    def right_tail(s):
        return f_hi * np.exp(-(2.0 / 3.0) * (s ** 1.5 - hi ** 1.5)) * (s / hi) ** -0.75

    mean += quad(lambda x: right_tail(x), hi, np.inf)[0]
    mean -= quad(lambda x: left_tail(x), -np.inf, lo)[0]
    ex2 += 2.0 * quad(lambda x: x * right_tail(x), hi, np.inf)[0]
    ex2 -= 2.0 * quad(lambda x: x * left_tail(x), -np.inf, lo)[0]
    return mean, np.sqrt(ex2 - mean * mean)


def main():
    cdf = solve_painleve2()
    grid = np.round(np.arange(GRID_LO, GRID_HI + GRID_STEP / 2, GRID_STEP), 10)
    values = cdf(grid)
    mean, sd = moments_from_table(grid, values)

    out = pathlib.Path(__file__).resolve().parent.parent / "src" / "netcomm" / "_tw1_table.py"
    lines = [
        '"""Frozen tabulation of the Tracy-Widom (beta=1) CDF on [-6, 5].',
        "",
        "Generated by tools/make_tw1_table.py (Painleve II / Hastings-McLeod",
        'representation).  Do not edit by hand; rerun the generator instead.',
        '"""',
        "",
        "import numpy as np",
        "",
        "GRID_LO = %r" % GRID_LO,
        "GRID_HI = %r" % GRID_HI,
        "GRID_STEP = %r" % GRID_STEP,
        "",
        "# moments of the tabulated law, integrated from the grid below",
        "TW1_MEAN = %.12f" % mean,
        "TW1_SD = %.12f" % sd,
        "",
        "TW1_GRID = np.arange(len(_CDF := np.array([",
    ]
    # emit CDF values, 4 per line
    body = []
    for i in range(0, len(values), 4):
        chunk = ", ".join("%.12e" % v for v in values[i:i + 4])
        body.append("    " + chunk + ",")
    lines = lines[:-1]  # drop the placeholder line, write arrays plainly
    lines.append("TW1_CDF_VALUES = np.array([")
    lines.extend(body)
    lines.append("])")
    lines.append("")
    lines.append("TW1_GRID = GRID_LO + GRID_STEP * np.arange(len(TW1_CDF_VALUES))")
    lines.append("")
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print("wrote %s (%d grid points)" % (out, len(values)))

    print("\nTW1_MEAN = %.12f" % mean)
    print("TW1_SD   = %.12f" % sd)
    print("\naudit points (s, F1(s)) for the test suite:")
    for s in AUDIT_POINTS:
        print("    (%.2f, %.10f)," % (s, cdf(s)))
    print("\nextra reference values:")
    for s in [-1.2065335746, 0.0, 0.9793, 2.0234, -3.1946, GRID_LO, GRID_HI]:
        print("    F1(%+.10f) = %.10f" % (s, cdf(s)))


if __name__ == "__main__":
    main()
