#!/usr/bin/env python3
# Copyright (c) 2026 the fracvar authors
# SPDX-License-Identifier: MIT
#
# Generates tests/reference_values.hpp: high-precision reference values for the
# normalization constants of the nonlocal operators and for the closed-form
# 1D examples used as independent oracles in the test suite.
#
# Everything is evaluated with mpmath at 50 significant digits and emitted
# rounded to double. Re-run only to extend the table; the frozen header is the
# source of truth for the tests.

import mpmath as mp

mp.mp.dps = 50


def mu(n, a):
    # Riesz fractional gradient normalization:
    #   mu_{n,a} = 2^a * pi^(-n/2) * Gamma((n+a+1)/2) / Gamma((1-a)/2)
    return 2**mp.mpf(a) * mp.pi ** (-mp.mpf(n) / 2) * mp.gamma((n + mp.mpf(a) + 1) / 2) / mp.gamma((1 - mp.mpf(a)) / 2)


def gam(n, a):
    # Riesz potential normalization:
    #   gamma_{n,a} = pi^(n/2) * 2^a * Gamma(a/2) / Gamma((n-a)/2)
    return mp.pi ** (mp.mpf(n) / 2) * 2**mp.mpf(a) * mp.gamma(mp.mpf(a) / 2) / mp.gamma((n - mp.mpf(a)) / 2)


def nu(n, a):
    # Fractional Laplacian normalization (negative for 0 < a < 2, a != 1 handled
    # by the Gamma pole structure; only 0 < a < 1 and 1 < a < 2 are used):
    #   nu_{n,a} = 2^a * pi^(-n/2) * Gamma((n+a)/2) / Gamma(-a/2)
    return 2**mp.mpf(a) * mp.pi ** (-mp.mpf(n) / 2) * mp.gamma((n + mp.mpf(a)) / 2) / mp.gamma(-mp.mpf(a) / 2)


def riesz_indicator_1d(x, a):
    # I_a applied to the indicator of [-1,1] in one dimension:
    #   I_a u(x) = (sgn(x+1)|x+1|^a - sgn(x-1)|x-1|^a) / (gamma_{1,a} * a)
    def term(t):
        return mp.sign(t) * mp.fabs(t) ** mp.mpf(a)

    return (term(x + 1) - term(x - 1)) / (gam(1, a) * mp.mpf(a))


def frac_laplacian_indicator_1d(x, s):
    # (-Delta)^s applied to the indicator of [-1,1] in one dimension, 0 < s < 1/2.
    # With C = -nu_{1,2s}/(2s) > 0:
    #   |x| < 1 : C * ((1-x)^(-2s) + (1+x)^(-2s))
    #   |x| > 1 : C * ((|x|+1)^(-2s) - (|x|-1)^(-2s))
    C = -nu(1, 2 * mp.mpf(s)) / (2 * mp.mpf(s))
    ax = mp.fabs(mp.mpf(x))
    if ax < 1:
        return C * ((1 - mp.mpf(x)) ** (-2 * mp.mpf(s)) + (1 + mp.mpf(x)) ** (-2 * mp.mpf(s)))
    return C * ((ax + 1) ** (-2 * mp.mpf(s)) - (ax - 1) ** (-2 * mp.mpf(s)))


def frac_laplacian_tent_1d(x, s):
    # (-Delta)^s applied to the tent max(0, 1-|y|), 0 < s < 1/2, by adaptive
    # quadrature of the increment integral split at the kinks and at the
    # (integrable) singularity y = x. Independent of any antiderivative
    # formula on purpose: it pins the piecewise closed form in the tests.
    order = 2 * mp.mpf(s)
    x = mp.mpf(x)

    def tent(y):
        a = mp.fabs(y)
        return mp.mpf(0) if a >= 1 else 1 - a

    vx = tent(x)
    f = lambda y: (tent(y) - vx) * mp.fabs(y - x) ** (-1 - order)
    pts = sorted({mp.mpf(-1), mp.mpf(0), mp.mpf(1), x})
    return nu(1, order) * mp.quad(f, [-mp.inf] + pts + [mp.inf])


def frac_laplacian_bump_origin(s, radius):
    # (-Delta)^s at the origin of the standard bump exp(1 - 1/(1 - (y/r)^2)),
    # value 1 at the center, supported on |y| < r. Evaluated by adaptive
    # quadrature of the even increment integral.
    order = 2 * mp.mpf(s)
    r = mp.mpf(radius)

    def bump(y):
        q = (y / r) ** 2
        if q >= 1:
            return mp.mpf(0)
        return mp.e ** (1 - 1 / (1 - q))

    f = lambda y: (bump(y) - 1) * y ** (-1 - order)
    inner = mp.quad(f, [0, r / 2, r])
    outer = mp.quad(f, [r, mp.inf])
    return nu(1, order) * 2 * (inner + outer)


def emit(lines, name, value):
    lines.append(f"inline constexpr double {name} = {mp.nstr(value, 17, strip_zeros=False)};")


def main():
    lines = [
        "// Copyright (c) 2026 the fracvar authors",
        "// SPDX-License-Identifier: MIT",
        "//",
        "// Generated by tools/gen_reference_values.py (mpmath, 50 digits, rounded",
        "// to double). Frozen: edit the generator, not this file.",
        "#pragma once",
        "",
        "namespace fracvar::reference {",
        "",
    ]

    emit(lines, "kGammaHalf", mp.gamma(mp.mpf(1) / 2))  # sqrt(pi)
    emit(lines, "kSqrtTwoPi", mp.sqrt(2 * mp.pi))
    lines.append("")

    for n in (1, 2):
        for a in (3, 5, 8):  # alpha = 0.3, 0.5, 0.8
            al = mp.mpf(a) / 10
            tag = f"{n}d_a{a:02d}"
            emit(lines, f"kMu_{tag}", mu(n, al))
            emit(lines, f"kGamma_{tag}", gam(n, al))
            emit(lines, f"kNu_{tag}", nu(n, al))
        lines.append("")

    # One-dimensional Riesz potential of the indicator of [-1,1].
    pts = [mp.mpf(p) / 10 for p in (0, 5, 15, 20, 30)]
    for a in (3, 5, 8):
        al = mp.mpf(a) / 10
        for p, x in zip((0, 5, 15, 20, 30), pts):
            emit(lines, f"kRieszInd_a{a:02d}_x{p:02d}", riesz_indicator_1d(x, al))
        lines.append("")

    # One-dimensional fractional Laplacian of the indicator of [-1,1], s = 1/4
    # (the lift exponent for alpha = 1/2).
    for p in (0, 5, 20):
        emit(lines, f"kLiftInd_s025_x{p:02d}", frac_laplacian_indicator_1d(mp.mpf(p) / 10, mp.mpf(1) / 4))
    lines.append("")

    # Same operator on the tent max(0, 1-|y|), s = 1/4: three pins reachable
    # on grids whose nodes include 0, 0.5, and 2.
    for p in (0, 5, 20):
        emit(lines, f"kLiftTent_s025_x{p:02d}", frac_laplacian_tent_1d(mp.mpf(p) / 10, mp.mpf(1) / 4))
    lines.append("")

    # Fractional Laplacian at the origin of the radius-0.8 standard bump.
    emit(lines, "kLapBump_s025_x00", frac_laplacian_bump_origin(mp.mpf("0.25"), mp.mpf("0.8")))
    emit(lines, "kLapBump_s040_x00", frac_laplacian_bump_origin(mp.mpf("0.4"), mp.mpf("0.8")))
    lines.append("")

    lines.append("}  // namespace fracvar::reference")
    lines.append("")
    print("\n".join(lines))


if __name__ == "__main__":
    main()
