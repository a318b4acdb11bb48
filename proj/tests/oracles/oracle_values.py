"""High-precision reference values frozen into the unit tests.

Run with `python3 oracle_values.py`; each block prints the literals used by
the corresponding test. Everything is computed from the closed-form
definitions with mpmath at 40 digits, independently of the C++ code.
"""

import mpmath as mp

mp.mp.dps = 40


def principal_sqrt(z):
    r = mp.sqrt(z)
    if mp.re(r) < 0 or (mp.re(r) == 0 and mp.im(r) < 0):
        r = -r
    return r


def roots(rho, lam, mu, gamma, eta, kappa, omega):
    """Characteristic wavenumbers l1, l2 (sorted by |l^2|) and l3."""
    kp2 = rho * omega**2 / (lam + 2 * mu)
    q = 1j * omega / kappa
    S = q + 1j * omega * gamma * eta / (lam + 2 * mu) + kp2
    P = q * kp2
    disc = mp.sqrt(S * S - 4 * P)
    t = sorted([(S + disc) / 2, (S - disc) / 2], key=abs)
    return principal_sqrt(t[0]), principal_sqrt(t[1]), omega * mp.sqrt(rho / mu)


def ramp(tau):
    if tau <= 0:
        return mp.mpf(0)
    if tau >= 1:
        return mp.mpf(1)
    h0, h1 = mp.exp(-1 / tau), mp.exp(-1 / (1 - tau))
    return h0 / (h0 + h1)


def ramp_integral(tau):
    return mp.quad(ramp, [0, tau])


def phi(x, rho, lam, mu, gamma, eta, kappa, omega):
    """4x4 fundamental solution at separation x (entrywise formulas)."""
    l1, l2, l3 = roots(rho, lam, mu, gamma, eta, kappa, omega)
    kp2 = rho * omega**2 / (lam + 2 * mu)
    q = 1j * omega / kappa
    M = lam + 2 * mu
    diff = l2**2 - l1**2
    alpha, beta, gam = [], [], []
    for sign, ls in ((-1, l1**2), (1, l2**2)):
        alpha.append(sign * (1 - q / ls) / (2 * mp.pi * M * diff))
        beta.append(sign * (ls - kp2) / (2 * mp.pi * diff))
        gam.append(sign / (2 * mp.pi * M * diff))
    alpha.append(-1 / (2 * mp.pi * rho * omega**2))
    beta.append(0)
    gam.append(0)
    lams = (l1, l2, l3)
    r = mp.sqrt(sum(c * c for c in x))

    def e(l):
        return mp.exp(1j * l * r) / r

    def de(l):
        return e(l) * (1j * l - 1 / r)

    def d2e(l):
        return e(l) * ((1j * l - 1 / r) ** 2 + 1 / r**2)

    def dd(l, i, j):
        return (1 if i == j else 0) * de(l) / r + x[i] * x[j] * (d2e(l) / r**2 - de(l) / r**3)

    def d(l, i):
        return x[i] * de(l) / r

    out = mp.matrix(4, 4)
    for i in range(3):
        for j in range(3):
            out[i, j] = sum(
                ((1 if (i == j and k == 2) else 0) / (2 * mp.pi * mu)) * e(lams[k]) - alpha[k] * dd(lams[k], i, j)
                for k in range(3))
        out[3, i] = 1j * omega * eta * sum(gam[k] * d(lams[k], i) for k in range(3))
        out[i, 3] = -gamma * sum(gam[k] * d(lams[k], i) for k in range(3))
    out[3, 3] = sum(beta[k] * e(lams[k]) for k in range(3))
    return out


def show(name, z):
    z = mp.mpc(z)
    print(f"  {name}: ({mp.nstr(mp.re(z), 17)}, {mp.nstr(mp.im(z), 17)})")


if __name__ == "__main__":
    print("roots, rho = lambda = mu = kappa = eta = gamma = 1, omega = 1")
    for n, v in zip(("l1", "l2", "l3"), roots(1, 1, 1, 1, 1, 1, 1)):
        show(n, v)
    print("roots, default medium (gamma = 0.1, eta = 0.05), omega = 1")
    for n, v in zip(("l1", "l2", "l3"), roots(1, 1, 1, 0.1, 0.05, 1, 1)):
        show(n, v)
    print("ramp integral")
    for tau in (0.25, 0.5, 0.8, 1.0):
        print(f"  I({tau}) = {mp.nstr(ramp_integral(tau), 17)}")
    print("Phi at x = (0.3, -0.5, 0.7), default medium, omega = 1")
    P = phi([mp.mpf('0.3'), mp.mpf('-0.5'), mp.mpf('0.7')], 1, 1, 1, mp.mpf('0.1'), mp.mpf('0.05'), 1, 1)
    for i, j in ((0, 0), (0, 1), (1, 2), (3, 0), (0, 3), (3, 3)):
        show(f"Phi[{i}][{j}]", P[i, j])
