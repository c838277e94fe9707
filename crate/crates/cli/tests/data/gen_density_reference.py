"""Regenerates density_reference.csv with mpmath at 50 significant digits.

The wavefunctions are built from the textbook form of the Moshinsky function,
M(x, k, t) = 1/2 exp(i(kx - hbar k^2 t / 2m)) erfc((x - hbar k t / m) / sqrt(2 i hbar t / m)),
evaluated directly with mpmath's erfc.

Usage: python3 gen_density_reference.py > density_reference.csv
"""

import mpmath as mp

mp.mp.dps = 50

HBAR = mp.mpf("1.054571817e-34")
MASS = mp.mpf("1.4431606e-25")


def moshinsky(x, k, t):
    a = HBAR * t / MASS
    phase = mp.exp(1j * (k * x - a * k * k / 2))
    return phase * mp.erfc((x - a * k) / mp.sqrt(2j * a)) / 2


def sudden(x, k, t):
    return moshinsky(x, k, t) - moshinsky(x, -k, t)


def moving(x, k, v, t):
    rel = x - v * t
    if rel > 0:
        return mp.mpc(0)
    q = MASS * v / HBAR
    pre = mp.exp(1j * q * (x - v * t / 2))
    m1 = moshinsky(rel, k - q, t)
    m2 = moshinsky(rel, -k - q, t)
    m3 = moshinsky(-rel, k - q, t)
    m4 = moshinsky(-rel, -k - q, t)
    return pre * ((m1 - m3) - (m2 - m4))


def main():
    # (case, v_k cm/s, v cm/s or None for sudden removal, t ms, x_min um, x_max um, points)
    cases = [
        ("fig5_moving", "1.0", "0.8", "10", -150, 110, 27),
        ("fig5_sudden", "1.0", None, "10", -150, 110, 27),
        ("fig3_enhanced", "1.0", "1.2", "10", -150, 132, 48),
        ("fig2c", "1.0", "0.5", "5", -75, 55, 27),
    ]
    print("case,x_um,density")
    for name, vk, v, t, lo, hi, n in cases:
        vk_si = mp.mpf(vk) / 100
        t_si = mp.mpf(t) / 1000
        k = MASS * vk_si / HBAR
        step = mp.mpf(hi - lo) / (n - 1)
        for i in range(n):
            x_um = lo + step * i
            x = x_um / mp.mpf(10) ** 6
            if v is None:
                psi = sudden(x, k, t_si)
            else:
                psi = moving(x, k, mp.mpf(v) / 100, t_si)
            print(f"{name},{mp.nstr(x_um, 17)},{mp.nstr(abs(psi) ** 2, 17)}")


if __name__ == "__main__":
    main()
