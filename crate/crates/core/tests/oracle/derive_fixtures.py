"""Arbitrary-precision reference values for the scalar checks in the test suite.

Run from this directory:

    python3 derive_fixtures.py > ../fixtures/oracle_values.txt

Every value is evaluated directly from its defining formula with mpmath at
40 significant digits, independently of the Rust implementation.
"""

from mpmath import mp, mpf, mpc, pi, sqrt, exp, log, zeta, quad, inf, polylog, nsum

mp.dps = 40

HBAR = mpf("1.054571817e-34")
HBAR_EV = mpf("6.582119569e-16")
C = mpf("299792458")
KB = mpf("1.380649e-23")

OMEGA_P = mpf("9.0") / HBAR_EV
GAMMA_300 = mpf("5.32e13")
SIGMA0 = OMEGA_P**2 / (4 * pi * GAMMA_300)


def emit(name, value):
    if isinstance(value, mpc):
        print(f"{name}.re = {mp.nstr(value.real, 20)}")
        print(f"{name}.im = {mp.nstr(value.imag, 20)}")
    else:
        print(f"{name} = {mp.nstr(value, 20)}")


def xi1(t):
    return 2 * pi * KB * t / HBAR


def main():
    print("# generated by tests/oracle/derive_fixtures.py (mpmath, 40 digits)")
    x1 = xi1(mpf(300))
    emit("xi1_300k", x1)

    emit("eps_imag_drude_gold_xi1", 1 + OMEGA_P**2 / (x1 * (x1 + GAMMA_300)))
    emit("eps_real_drude_gold_xi1", 1 - OMEGA_P**2 / (x1 * (x1 + 1j * GAMMA_300)))

    sigma, tau = mpf("3e17"), mpf("1.88e-14")
    emit("ac_conductivity_xi1", sigma / (1 - 1j * tau * x1))

    a = mpf("400e-9")
    kp = 1 / (2 * a)

    xi = x1 * mpf("1e-6")
    eps = 1 + OMEGA_P**2 / (xi * (xi + GAMMA_300))
    q = sqrt(kp**2 + xi**2 / C**2)
    k = sqrt(kp**2 + eps * xi**2 / C**2)
    emit("refl_imag_eps_drude_small_xi.tm", (eps * q - k) / (eps * q + k))
    emit("refl_imag_eps_drude_small_xi.te", (k - q) / (k + q))

    eps = 1 + OMEGA_P**2 / x1**2
    q = sqrt(kp**2 + x1**2 / C**2)
    k = sqrt(kp**2 + eps * x1**2 / C**2)
    emit("refl_imag_eps_plasma_xi1.tm", (eps * q - k) / (eps * q + k))
    emit("refl_imag_eps_plasma_xi1.te", (k - q) / (k + q))

    rho = C / (2 * a * OMEGA_P)
    zeta_l, y = mpf(1), mpf(2)
    z = rho * zeta_l / sqrt(1 + rho**2 * zeta_l**2)
    emit("refl_imag_imp_infrared.tm", (y - z * zeta_l) / (y + z * zeta_l))
    emit("refl_imag_imp_infrared.te", (zeta_l - y * z) / (zeta_l + y * z))

    w = mpf("1e13")
    zn = (1 - 1j) * sqrt(w / (8 * pi * SIGMA0))
    kz = w / (2 * C)
    emit("refl_real_imp_normal_skin.tm", (C * kz - zn * w) / (C * kz + zn * w))
    emit("refl_real_imp_normal_skin.te", (w - C * kz * zn) / (w + C * kz * zn))

    emit("integral_y_log_one_minus_exp", quad(lambda t: t * log(1 - exp(-t)), [0, 1, 10, inf]))
    emit("abel_plana_linear", -2 * quad(lambda t: t / (exp(2 * pi * t) - 1), [0, 1, inf]))
    emit(
        "abel_plana_exp_sum",
        mpf(1) / 2 + exp(-1) / (1 - exp(-1)),
    )

    a1 = mpf("1e-6")
    emit("free_energy_l0_ideal_1um_300k", -zeta(3) * KB * 300 / (8 * pi * a1**2))

    a2 = mpf("200e-9")
    emit("ideal_p0_200nm", -pi**2 * HBAR * C / (240 * a2**4))
    emit("ideal_energy_200nm", -pi**2 * HBAR * C / (720 * a2**3))

    # Ideal-metal thermal pressure correction: Matsubara sum minus zero-point integral.
    def ideal_dp(sep, t):
        kappa = 4 * pi * KB * sep * t / (HBAR * C)

        def big_f(zl):
            # 2 * integral_{zl}^inf y^2 / (e^y - 1) dy in closed form
            if zl == 0:
                return 4 * zeta(3)
            e = exp(-zl)
            return 2 * (zl**2 * (-log(1 - e)) + 2 * zl * polylog(2, e) + 2 * polylog(3, e))

        s = big_f(mpf(0)) / 2 + nsum(lambda l: big_f(kappa * l), [1, inf])
        p = -KB * t / (8 * pi * sep**3) * s
        p0 = -pi**2 * HBAR * C / (240 * sep**4)
        return p - p0

    emit("ideal_dp_200nm_300k", ideal_dp(a2, mpf(300)))
    emit("ideal_dp_1um_300k", ideal_dp(a1, mpf(300)))
    emit("ideal_dp_500nm_77k", ideal_dp(mpf("500e-9"), mpf(77)))

    def zero_mode_j(r):
        return quad(
            lambda t: t * log(1 - ((1 - r * t) / (1 + r * t)) ** 2 * exp(-t)),
            [0, 1, 10, inf],
        )

    emit("zero_mode_bracket_rho_1e-4", zeta(3) + zero_mode_j(mpf("1e-4")))
    emit("entropy_t0_bracket_rho_0.01", zeta(3) + zero_mode_j(mpf("0.01")))
    emit("entropy_t0_series_rho_0.01", 8 * zeta(3) * mpf("0.01") * (1 - 6 * mpf("0.01")))

    for x in ["0.01", "0.1", "1"]:
        xv = mpf(x)
        i0 = 2 * quad(lambda t: t * log(1 - exp(-t)), [xv, 1, 10, inf])
        i1 = 4 * quad(lambda t: (xv**2 + t**2) / (exp(t) - 1), [xv, 1, 10, inf])
        emit(f"i0_{x}", i0)
        emit(f"i1_{x}", i1)
    for x in ["0.5", "0.25", "0.125", "0.0625", "0.03125"]:
        xv = mpf(x)
        i2 = -8 * quad(lambda t: (xv**4 + t**4) * exp(t) / (t * (exp(t) - 1) ** 2), [xv, 1, 10, inf])
        emit(f"i2_{x}", i2)

    # Boundary function of the low-temperature expansion at imaginary argument,
    # integrated along y = x + s, s >= 0, with rho for gold at a = 1 um.
    rho1 = C / (2 * a1 * OMEGA_P)
    emit("rho_gold_1um", rho1)

    def f_boundary(x, y):
        zi = rho1 * x / sqrt(1 + rho1**2 * x**2)
        r_tm = (y - zi * x) / (y + zi * x)
        r_te = (x - y * zi) / (x + y * zi)
        return y * log(1 - r_tm**2 * exp(-y)) + y * log(1 - r_te**2 * exp(-y))

    for kt in ["0.05", "0.1"]:
        xv = mpc(0, mpf(kt))
        phi_plus = quad(lambda s: f_boundary(xv, xv + s), [0, mpf(kt), 1, 10, 60, 200])
        phi_minus = quad(lambda s: f_boundary(-xv, -xv + s), [0, mpf(kt), 1, 10, 60, 200])
        emit(f"phi_difference_{kt}", phi_plus - phi_minus)

    # Zero-point pressure of two plasma-model plates, P0 = -(hbar c/32 pi^2 a^4)
    # int dzeta int_zeta^inf y^2 sum_alpha r^2 e^-y/(1 - r^2 e^-y) dy.
    def plasma_p0(sep):
        zp2 = (2 * sep * OMEGA_P / C) ** 2

        def inner(z):
            def f(y):
                k = sqrt(y * y + zp2)
                eps = 1 + zp2 / z**2
                tm = (eps * y - k) / (eps * y + k)
                te = (k - y) / (k + y)
                e = exp(-y)
                return y * y * sum(r * r * e / (1 - r * r * e) for r in (tm, te))

            return quad(f, [z, z + 1, z + 10, z + 40, inf])

        s = quad(inner, [0, mpf("0.01"), mpf("0.1"), 1, 3, 10, 30, 60])
        return -HBAR * C / (32 * pi**2 * sep**4) * s

    emit("plasma_p0_200nm", plasma_p0(a2))

    emit("stefan_boltzmann", pi**2 * KB**4 / (60 * HBAR**3 * C**2))


if __name__ == "__main__":
    main()
