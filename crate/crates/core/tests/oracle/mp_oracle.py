"""Arbitrary-precision reference values frozen into the Rust tests.

Run with: python3 mp_oracle.py
Independent of the Rust implementation: uses mpmath's own gamma, hyp1f1
and numerical differentiation.
"""
import mpmath as mp

mp.mp.dps = 40


def c(v):
    v = mp.mpc(v)
    return "({}, {})".format(mp.nstr(v.real, 20), mp.nstr(v.imag, 20))


def rho(s, x):
    return abs(x) ** s.real * mp.e ** (-mp.pi / 2 * s.imag * mp.sign(x))


def psi(s, x):
    return mp.e ** (-1j * mp.pi / 2 * s.real * mp.sign(x)) * abs(x) ** (-1j * s.imag)


def zf(s, x):
    return mp.gamma(1 + s) / mp.gamma(1 + 2 * s.real) * mp.hyp1f1(mp.conj(s), 1 + 2 * s.real, 1j * x)


def kernel(s, x, y):
    if x == y:
        z = zf(s, x)
        dz = mp.diff(lambda t: zf(s, t), x)
        return rho(s, x) ** 2 / (2 * mp.pi) * (abs(z) ** 2 + 2 * mp.im(z * mp.conj(dz)))
    return rho(s, x) * rho(s, y) * (zf(s, x) * mp.conj(zf(s, y)) - mp.e ** (1j * (x - y)) * mp.conj(zf(s, x)) * zf(s, y)) / (2j * mp.pi * (y - x))


def tcal(s, x):
    return mp.e ** (-1j * x) / mp.sqrt(2 * mp.pi) * rho(s, x) * mp.conj(psi(s, x)) * zf(s, x)


print("// gamma")
for z in [0.5, mp.mpc(2.3, 0.4), mp.mpc(-3.7, 1.2), mp.mpc(10.5, -20), mp.mpc(0.1, 45), mp.mpc(-19.5, 0.3), mp.mpc(48, 3)]:
    print(c(z), c(mp.gamma(z)))

print("// hyp1f1 (a, b, z)")
cases = [
    (mp.mpc(0.3, -0.7), 1.6, mp.mpc(0, 25)),
    (mp.mpc(0.3, -0.7), 1.6, mp.mpc(0, -33)),
    (0.5, 2.0, mp.mpc(0, 39.5)),
    (mp.mpc(-0.3, 0), 0.4, mp.mpc(0, 12)),
    (mp.mpc(1.3, -0.7), 2.6, mp.mpc(0, 45)),
    (mp.mpc(0.7, 0.2), mp.mpc(1.9, -0.3), mp.mpc(-15, 8)),
    (mp.mpc(-2.5, 1.0), 3.5, mp.mpc(18, -4)),
]
for a, b, z in cases:
    print(c(a), c(b), c(z), c(mp.hyp1f1(a, b, z)))

print("// hyp1f1 far field (a, b) = (0.3-0.7i, 1.6), z = iR")
for R in [50, 100, 200, 400]:
    print(R, c(mp.hyp1f1(mp.mpc(0.3, -0.7), 1.6, mp.mpc(0, R))))

print("// kernel (s, x, y)")
for s, x, y in [
    (mp.mpc(0.3, 0.7), 3, -5),
    (mp.mpc(0.3, 0.7), 1.5, 2.5),
    (mp.mpc(0.3, 0.7), 2, 2),
    (mp.mpc(0.3, 0.7), -7, -7),
    (mp.mpc(0.5, 0), 2, 2),
    (mp.mpc(-0.3, 0), 0.7, -1.9),
    (mp.mpc(-0.3, 0.4), -4, -4),
]:
    print(c(s), x, y, c(kernel(s, mp.mpf(x), mp.mpf(y))))

print("// tcal (s, x)")
for s, x in [(mp.mpc(0.3, 0.7), 3), (mp.mpc(0.3, 0.7), -11), (mp.mpc(0.5, 0), 60), (mp.mpc(-0.3, 0.2), 0.25)]:
    print(c(s), x, c(tcal(s, mp.mpf(x))))


# circular ensemble, from the weight definition and mpmath's hyp2f1
def circle_weight(s, t):
    pre = mp.gamma(1 + s) * mp.gamma(1 + mp.conj(s)) / mp.gamma(1 + 2 * s.real) / (2 * mp.pi)
    e = mp.expj(t)
    return pre * (1 - e) ** mp.conj(s) * (1 - 1 / e) ** s


def monic(s, n, z):
    sb = mp.conj(s)
    cc = 1 + 2 * s.real
    pre = mp.gamma(cc + n) * mp.gamma(sb + 1) / (mp.gamma(sb + n + 1) * mp.gamma(cc))
    return pre * mp.hyp2f1(-n, sb + 1, cc, 1 - z)


def norm_sq(s, n):
    sb = mp.conj(s)
    cc = 1 + 2 * s.real
    return (mp.gamma(cc + n) * mp.gamma(n + 1) * mp.gamma(s + 1) * mp.gamma(sb + 1)
            / (mp.gamma(sb + n + 1) * mp.gamma(s + n + 1) * mp.gamma(cc)))


mp.mp.dps = 80
print("// circle weight (s, theta)")
for s, t in [(mp.mpc(0.3, 0.7), 0.7), (mp.mpc(0.3, 0.7), -2.2), (mp.mpc(-0.3, 0.4), 0.05)]:
    print(c(s), t, c(circle_weight(s, mp.mpf(t))))

print("// monic Phi_n (s, n, theta) at z = e^{i theta}, and norm_sq")
for s, n, t in [(mp.mpc(0.3, 0.7), 7, 0.9), (mp.mpc(0.3, 0.7), 40, -2.5), (mp.mpc(0.5, 0), 25, 0.1)]:
    print(c(s), n, t, c(monic(s, n, mp.expj(mp.mpf(t)))), mp.nstr(norm_sq(s, n), 20))

print("// CD kernel K_n(e^{i tau}, e^{i theta}) by direct sum (s, n, tau, theta)")
for s, n, tau, th in [(mp.mpc(0.3, 0.7), 20, 0.4, -1.1), (mp.mpc(0.5, 0), 12, 0.3, 0.3)]:
    tau, th = mp.mpf(tau), mp.mpf(th)
    acc = 0
    for j in range(n):
        acc += monic(s, j, mp.expj(tau)) * mp.conj(monic(s, j, mp.expj(th))) / norm_sq(s, j)
    acc *= mp.sqrt(mp.re(circle_weight(s, tau)) * mp.re(circle_weight(s, th)))
    print(c(s), n, mp.nstr(tau, 5), mp.nstr(th, 5), c(acc))
