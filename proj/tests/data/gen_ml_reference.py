"""Generate high-precision Mittag-Leffler reference values with mpmath.

Independent of the C++ evaluator: small |z| uses the Taylor series at
extended precision, alpha = 1 uses 1F1(1; beta; z)/Gamma(beta), and the
rest (|z|^(1/alpha) >= 400) uses the asymptotic expansion, whose
truncation error there is below exp(-400).
"""
import mpmath as mp

mp.mp.dps = 40


def series(a, b, z):
    # enough working precision to absorb the cancellation
    with mp.workdps(60 + int(abs(z) ** (1 / a) / 2.3)):
        s = mp.mpf(0)
        j = 0
        while True:
            t = mp.mpf(z) ** j / mp.gamma(a * j + b)
            s += t
            if j > 10 and abs(t) < mp.mpf(10) ** (-50) * max(abs(s), mp.mpf(10) ** -300):
                return +s
            j += 1


def asymptotic(a, b, z):
    # Only used when |z|^(1/alpha) >= 400: the optimally truncated remainder
    # is below exp(-400).
    z = mp.mpf(z)
    s = mp.mpf(0)
    for m in range(1, 400):
        s -= z ** (-m) * mp.rgamma(b - a * m)
    return s


def ml(a, b, z):
    a = mp.mpf(a)
    b = mp.mpf(b)
    if z == 0:
        return 1 / mp.gamma(b)
    if a == 1:
        return mp.hyp1f1(1, b, z) / mp.gamma(b)
    if abs(z) ** (1 / a) < 400:
        return series(a, b, z)
    return asymptotic(a, b, z)


def main():
    alphas = ["0.1", "0.25", "0.5", "0.7", "0.9", "0.99", "1"]
    betas = ["0.1", "0.5", "1", "1.5", "2", "3"]
    zs = ["0", "-1e-3", "-0.1", "-0.7", "-2", "-4.9", "-5.1", "-8", "-15", "-40", "-100", "-1000", "-10000"]
    print("// Generated by gen_ml_reference.py (mpmath, 40 digits). Do not edit.")
    print("// {alpha, beta, z, E_{alpha,beta}(z)}")
    for a in alphas:
        for b in betas:
            for z in zs:
                v = ml(mp.mpf(a), mp.mpf(b), mp.mpf(z))
                if v != 0 and abs(v) < mp.mpf(10) ** -300:
                    continue  # below double range
                print("{%s, %s, %s, %s}," % (a, b, z, mp.nstr(v, 20)))


if __name__ == "__main__":
    main()
