"""Deterministic values of the 2-d pair energy and Hardy terms for centered radial bumps.

lhs = 1/2 ∫_Ω dx ∫_{x+z∈Ω} (u(x+z) − u(x))² |z|^{−2−α} dz in polar z = r(cos θ, sin θ),
with r = t^{1/(2−α)} so the r^{1−α} endpoint behaviour becomes smooth. Tensor
Gauss–Legendre rules; each value is printed for two rule sizes as a
convergence check. Constants come from mpmath Γ, independent of the C++ code.
"""
import mpmath as mp
import numpy as np

ORDER_1 = 1.0


def bump(t):
    s = 1.0 - t * t
    out = np.zeros_like(t)
    m = s > 0
    out[m] = np.exp(ORDER_1 * (1.0 - 1.0 / s[m]))
    return out


def gl(n, a, b):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (b - a) * x + 0.5 * (b + a), 0.5 * (b - a) * w


def kappa(n, al):
    al = mp.mpf(al)
    b = mp.beta((1 + al) / 2, (2 - al) / 2)
    return float(mp.pi ** ((n - 1) / mp.mpf(2)) * mp.gamma((1 + al) / 2) / mp.gamma((n + al) / 2)
                 * (b - 2**al) / (al * 2**al))


def rem_coeff(n, al, diam):
    al = mp.mpf(al)
    return float(mp.pi ** ((n - 1) / mp.mpf(2)) * mp.gamma(al / 2) * (4 - 2 ** (3 - al))
                 / (al * mp.gamma((n + al - 1) / 2)) / diam)


def pair_energy(xs, wx, rmax_fn, u, al, nth, nt):
    """xs: (N, 2) outer points with weights wx; rmax_fn(x, θ) → max r in Ω."""
    th, wth = gl(nth, 0.0, 2 * np.pi)
    m = 1.0 / (2.0 - al)
    total = 0.0
    for (x, w) in zip(xs, wx):
        ux = u(x[None, :])[0]
        rm = rmax_fn(x, th)  # (nth,)
        tmax = rm ** (2.0 - al)
        tt, wt = gl(nt, 0.0, 1.0)
        t = tt[None, :] * tmax[:, None]
        r = t**m
        y = np.stack([x[0] + r * np.cos(th)[:, None], x[1] + r * np.sin(th)[:, None]], axis=-1)
        d = u(y.reshape(-1, 2)).reshape(r.shape) - ux
        # d² r^{−1−α} dr = d² r^{−1−α} m t^{m−1} dt = m (d/r)² dt
        f = m * (d / r) ** 2
        inner = (f * wt[None, :] * tmax[:, None]).sum(axis=1)
        total += w * (inner * wth).sum()
    return 0.5 * total


def disk_case(radius_u, al, n):
    u = lambda p: bump(np.hypot(p[:, 0], p[:, 1]) / radius_u)
    rho, wr = gl(n, 0.0, 1.0)
    # rotational symmetry: x = (ρ, 0), weight 2πρ
    xs = np.stack([rho, np.zeros_like(rho)], axis=1)
    wx = 2 * np.pi * rho * wr

    def rmax(x, th):
        p = x[0]
        return -p * np.cos(th) + np.sqrt(1.0 - (p * np.sin(th)) ** 2)

    lhs = pair_energy(xs, wx, rmax, u, al, n, n)
    g = u(xs)
    dist = 1.0 - rho
    main = kappa(2, al) * np.sum(wx * g**2 * dist ** (-al))
    rem = rem_coeff(2, al, 2.0) * np.sum(wx * g**2 * dist ** (1 - al))
    return lhs, main, rem


def square_case(radius_u, al, n):
    u = lambda p: bump(np.hypot(p[:, 0], p[:, 1]) / radius_u)
    g1, w1 = gl(n, 0.0, 0.5)
    # symmetry of the centered bump and the square: one quadrant times 4
    X, Y = np.meshgrid(g1, g1, indexing="ij")
    xs = np.stack([X.ravel(), Y.ravel()], axis=1)
    wx = 4.0 * np.outer(w1, w1).ravel()

    def rmax(x, th):
        c, s = np.cos(th), np.sin(th)
        with np.errstate(divide="ignore"):
            rx = np.where(c > 0, (0.5 - x[0]) / c, np.where(c < 0, (-0.5 - x[0]) / c, np.inf))
            ry = np.where(s > 0, (0.5 - x[1]) / s, np.where(s < 0, (-0.5 - x[1]) / s, np.inf))
        return np.minimum(rx, ry)

    lhs = pair_energy(xs, wx, rmax, u, al, n, n)
    g = u(xs)
    dist = np.minimum(0.5 - np.abs(xs[:, 0]), 0.5 - np.abs(xs[:, 1]))
    main = kappa(2, al) * np.sum(wx * g**2 * dist ** (-al))
    rem = rem_coeff(2, al, np.sqrt(2.0)) * np.sum(wx * g**2 * dist ** (1 - al))
    return lhs, main, rem


if __name__ == "__main__":
    for al in (1.25, 1.75):
        for n in (96, 160):
            lhs, main, rem = disk_case(0.8, al, n)
            print("disk radial_bump(r=0.8) alpha=%s n=%d lhs=%.10f main=%.10f rem=%.10f" % (al, n, lhs, main, rem))
        for n in (48, 80):
            lhs, main, rem = square_case(0.45, al, n)
            print("square radial_bump(r=0.45) alpha=%s n=%d lhs=%.10f main=%.10f rem=%.10f" % (al, n, lhs, main, rem))
