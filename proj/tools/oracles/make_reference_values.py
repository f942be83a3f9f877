#!/usr/bin/env python3
"""Generate frozen reference values for the C++ test suite.

Every number in tests/oracle_data.hpp is produced here with mpmath at
50-digit working precision, then rounded to double.  The C++ library under
test never sees this code path; it only has to reproduce the printed
values within the tolerances asserted by the tests.

Run: python3 tools/oracles/make_reference_values.py > tests/oracle_data.hpp
"""

import mpmath as mp

mp.mp.dps = 50


def d(x):
    """Format an mpmath value as a C++ double literal."""
    return mp.nstr(mp.mpf(x), 17, strip_zeros=False)


def sphere_area(dim):
    # |S^d| = 2 pi^{(d+1)/2} / Gamma((d+1)/2)
    return 2 * mp.pi ** ((dim + 1) / mp.mpf(2)) / mp.gamma((dim + 1) / mp.mpf(2))


def const_einav_loss(m, s_half, n):
    # flat-space trace constant; s_half is the half-power of the Laplacian
    s = mp.mpf(s_half)
    core = (
        2 ** (-2 * s)
        * mp.pi ** (-s)
        * mp.gamma(n / mp.mpf(2) - s)
        * mp.gamma(s - m / mp.mpf(2))
        / (mp.gamma(s) * mp.gamma(n / mp.mpf(2) + s - m))
    )
    return core * (mp.gamma(n - m) / mp.gamma((n - m) / mp.mpf(2))) ** (
        (2 * s - m) / mp.mpf(n - m)
    )


def const_bez(n, s_half):
    # flat-space sphere-trace constant (codimension-one round trace)
    s = mp.mpf(s_half)
    core = (
        2 ** (1 - 2 * s)
        * mp.gamma(2 * s - 1)
        * mp.gamma(n / mp.mpf(2) - s)
        / (mp.gamma(s) ** 2 * mp.gamma(n / mp.mpf(2) - 1 + s))
    )
    return core * (mp.gamma(n / mp.mpf(2)) / (2 * mp.pi ** (n / mp.mpf(2)))) ** (
        (2 * s - 1) / mp.mpf(n - 1)
    )


def const_trace_cr_base(n, m, s):
    # CR-sphere trace constant (base variant, no extra powers of two)
    Q = mp.mpf(2 * n + 2)
    s = mp.mpf(s)
    return (
        mp.pi**m
        * mp.gamma(s / 2)
        / mp.gamma((s - 2 * m) / 2)
        * (2 * mp.pi ** (n - m + 1) / mp.factorial(n - m)) ** ((s - 2 * m) / (Q - 2 * m))
        * mp.gamma((Q + s - 4 * m) / 4) ** 2
        / mp.gamma((Q - s) / 4) ** 2
    )


def const_hls(n, lam):
    # sharp bilinear kernel-pairing constant on the CR sphere
    Q = mp.mpf(2 * n + 2)
    lam = mp.mpf(lam)
    return (
        (2 * mp.pi ** (n + 1) / mp.factorial(n)) ** (lam / Q)
        * mp.factorial(n)
        * mp.gamma((Q - lam) / 2)
        / mp.gamma((2 * Q - lam) / 4) ** 2
    )


def const_a_ns(n, s):
    # normalization of the fractional-integral kernel on the Heisenberg group
    Q = mp.mpf(2 * n + 2)
    s = mp.mpf(s)
    return (
        2 ** (n - 1 - s / 2)
        * mp.gamma((Q - s) / 4) ** 2
        / (mp.pi ** (n + 1) * mp.gamma(s / 2))
    )


def jacobi(k, a, b, x):
    return mp.jacobi(k, mp.mpf(a), mp.mpf(b), mp.mpf(x))


def gegenbauer(l, lam, x):
    return mp.gegenbauer(l, mp.mpf(lam), mp.mpf(x))


def main():
    rows = []

    def emit(name, value):
        rows.append((name, mp.mpf(value)))

    # --- log-gamma samples ---
    for x in ["0.5", "1.5", "5.0", "23.4", "120.25", "199.5"]:
        emit(f"log_gamma_{x.replace('.', '_')}", mp.loggamma(mp.mpf(x)))

    # --- digamma samples (psi(1/2) = -euler - 2 ln 2) ---
    for x in ["0.5", "1.0", "7.25", "123.0"]:
        emit(f"digamma_{x.replace('.', '_')}", mp.digamma(mp.mpf(x)))

    # --- orthogonal polynomial spot values ---
    emit("jacobi_4_1_2_at_0_3", jacobi(4, 1, 2, "0.3"))
    emit("jacobi_7_0_5_3_25_at_m0_62", jacobi(7, "0.5", "3.25", "-0.62"))
    emit("gegenbauer_3_1_5_at_m0_4", gegenbauer(3, "1.5", "-0.4"))
    emit("gegenbauer_6_2_25_at_0_77", gegenbauer(6, "2.25", "0.77"))

    # --- monomial moments of surface measure ---
    # int_{S^{2n+1}} |zeta^alpha|^2 = 2 pi^{n+1} alpha! / (n + |alpha|)!
    emit("s5_abs_z1_sq", mp.pi**3 / 3)
    emit("s3_abs_z1_4", 2 * mp.pi**2 * 2 / mp.factorial(3))
    emit("s5_abs_z1_sq_z2_4", 2 * mp.pi**3 * 2 / mp.factorial(5))

    # --- sphere areas ---
    for dim in (1, 2, 3, 4, 5, 7):
        emit(f"area_s{dim}", sphere_area(dim))

    # --- sharp constants, extended precision ---
    emit("einav_loss_1_1_3", const_einav_loss(1, 1, 3))
    emit("bez_3_1", const_bez(3, 1))
    emit("bez_4_1_5", const_bez(4, "1.5"))
    emit("bez_5_0_75", const_bez(5, "0.75"))
    emit("trace_cr_2_1_4", const_trace_cr_base(2, 1, 4))
    emit("hls_1_2", const_hls(1, 2))
    emit("hls_2_3", const_hls(2, 3))
    emit("a_1_2", const_a_ns(1, 2))  # closed form 1/(2 pi)
    emit("a_2_3", const_a_ns(2, 3))

    # --- singular zonal integrals on the CR sphere ---
    # I(n, lambda) = int_{S^{2n+1}} |1 - zeta.conj(eta)|^{-lambda/2} d eta
    # reduced to the unit disk:  c_n int_D |1-w|^{-lambda/2} (1-|w|^2)^{n-1} dA,
    # c_n = 2 pi^n/(n-1)!; evaluated here by adaptive quadrature in polar
    # coordinates about w = 1 (integrand smooth there after the r dr factor).
    def zonal_singular(n, lam):
        c_n = 2 * mp.pi**n / mp.factorial(n - 1)

        def inner(phi):
            # ray from w=1 in direction pi - phi hits |w|=1 at distance
            # 2 cos(phi); integrate r^{1-lambda/2} times the smooth density
            L = 2 * mp.cos(phi)

            def f(r):
                w = 1 - r * mp.exp(1j * phi)
                return r ** (1 - lam / mp.mpf(2)) * (1 - abs(w) ** 2) ** (n - 1)

            return mp.re(mp.quad(f, [0, L]))

        val = mp.quad(inner, [-mp.pi / 2, mp.pi / 2])
        return c_n * val

    emit("zonal_s3_lam2", zonal_singular(1, 2))
    emit("zonal_s5_lam3", zonal_singular(2, 3))

    # --- Jacobi squared norms: int_{-1}^1 (1-x)^a (1+x)^b P_k^2 ---
    def jacobi_sq_norm(k, a, b):
        a, b = mp.mpf(a), mp.mpf(b)
        return (
            2 ** (a + b + 1)
            / (2 * k + a + b + 1)
            * mp.gamma(k + a + 1)
            * mp.gamma(k + b + 1)
            / (mp.gamma(k + a + b + 1) * mp.factorial(k))
        )

    emit("jacobi_norm_6_0_5_1_25", jacobi_sq_norm(6, "0.5", "1.25"))

    # --- weighted-kernel extension of g = 1 on S^3 inside S^5 (n=2, m=1) ---
    # Zonal reduction: for |zeta'| = r the sub-sphere integral of
    # |1 - zeta.conj(eta)|^{-alpha} collapses to a disk integral,
    #   I(r) = 2 pi  int_D (1 - 2 r rho cos t + r^2 rho^2)^{-alpha/2} rho drho dt,
    # with alpha = (Q + s - 4m)/2, and the extension value is
    #   const * (1 - r^2)^{(s-2m)/2} * I(r),
    # const = Gamma^2((Q+s-4m)/4) / (2 pi^{n-m+1} Gamma((s-2m)/2)).
    def extension_cr_one(r, s):
        n, m = 2, 1
        r, s = mp.mpf(r), mp.mpf(s)
        Q = 2 * n + 2
        alpha = (Q + s - 4 * m) / 2
        inner = mp.quad(
            lambda rho: rho
            * mp.quad(
                lambda t: (1 - 2 * r * rho * mp.cos(t) + (r * rho) ** 2)
                ** (-alpha / 2),
                [0, mp.pi],
            )
            * 2,
            [0, 1],
        )
        I = 2 * mp.pi * inner
        const = mp.gamma((Q + s - 4 * m) / mp.mpf(4)) ** 2 / (
            2 * mp.pi ** (n - m + 1) * mp.gamma((s - 2 * m) / mp.mpf(2))
        )
        return const * (1 - r**2) ** ((s - 2 * m) / 2) * I

    emit("extension_cr_one_r06_s3", extension_cr_one("0.6", 3))
    emit("extension_cr_one_r085_s3", extension_cr_one("0.85", 3))
    emit("extension_cr_one_r06_s4", extension_cr_one("0.6", 4))
    emit("extension_cr_one_r085_s4", extension_cr_one("0.85", 4))

    print("// Auto-generated by tools/oracles/make_reference_values.py -- do not edit.")
    print("// All values computed with mpmath at 50-digit precision, rounded to double.")
    print("#pragma once")
    print()
    print("namespace tracelab::oracle {")
    for name, value in rows:
        print(f"inline constexpr double {name} = {d(value)};")
    print("}  // namespace tracelab::oracle")


if __name__ == "__main__":
    main()
