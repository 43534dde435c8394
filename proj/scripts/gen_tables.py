#!/usr/bin/env python3
"""Generate frozen numeric tables for the C++ sources and validate the
formulas they encode against mpmath references.

Outputs (committed, regenerate only when changing this script):
  src/rs_cheb.inc   Chebyshev coefficients of the Riemann-Siegel remainder
                    functions C0, C1, C2 on p in [0,1]
  src/ln_dd.inc     double-double (hi,lo) splits of ln(n), n = 2..1024
  src/gl_nodes.inc  8- and 4-point Gauss-Legendre nodes/weights on [-1,1]

Validation output goes to stdout; run with --check-only to skip file writes.

The remainder functions use Psi(p) = cos(2*pi*(p^2 - p - 1/16))/cos(2*pi*p),
an entire function (the denominator zeros at p = 1/4, 3/4 are cancelled).
  C0(p) = Psi(p)
  C1(p) = -Psi'''(p) / (96*pi^2)
  C2(p) = Psi''(p)/(64*pi^2) + Psi^(6)(p)/(18432*pi^4)
Each is validated below by subtracting the main sum from a high-precision
Z(t) and matching the residual scale by scale: residual_j ~ (-1)^(N-1) *
(t/2pi)^(-1/4 - j/2) * Cj(p).
"""

import argparse
import math
import sys

import mpmath as mp

mp.mp.dps = 60

TWO_PI = 2 * mp.pi


def psi(p):
    p = mp.mpf(p) if not isinstance(p, mp.mpc) else p
    # Removable singularities at p = 1/4, 3/4 (limit 1/2 by L'Hopital);
    # evaluate a hair off the point, exact to ~40 digits at dps 60.
    if not isinstance(p, mp.mpc):
        for p0 in (mp.mpf(1) / 4, mp.mpf(3) / 4):
            if abs(p - p0) < mp.mpf("1e-12"):
                p = p0 + mp.mpf("1e-20") if p >= p0 else p0 - mp.mpf("1e-20")
                break
    num = mp.cos(TWO_PI * (p * p - p - mp.mpf(1) / 16))
    den = mp.cos(TWO_PI * p)
    return num / den


def psi_deriv(p, n):
    if n == 0:
        return psi(p)
    # Contour differentiation: Psi is entire, so this is stable for high n.
    # The quadrature walks a complex circle; keep only the (real) value.
    d = mp.diff(psi, mp.mpf(p), n, method="quad", radius=mp.mpf("0.08"))
    return d.real if isinstance(d, mp.mpc) else d


PI2 = mp.pi * mp.pi
PI4 = PI2 * PI2


def c0(p):
    return psi(p)


def c1(p):
    return -psi_deriv(p, 3) / (96 * PI2)


def c2(p):
    return psi_deriv(p, 2) / (64 * PI2) + psi_deriv(p, 6) / (18432 * PI4)


def main_sum(t):
    t = mp.mpf(t)
    tau = mp.sqrt(t / TWO_PI)
    n_terms = int(mp.floor(tau))
    th = mp.siegeltheta(t)
    s = mp.mpf(0)
    for n in range(1, n_terms + 1):
        s += mp.cos(th - t * mp.log(n)) / mp.sqrt(n)
    return 2 * s, n_terms, tau - n_terms


def validate_remainder():
    print("== remainder-term validation against mp.siegelz ==")
    ok = True
    c3_bound = mp.mpf(0)
    for t in [300.0, 500.0, 777.7, 1234.5, 3000.0, 5000.25, 20000.0]:
        z_ref = mp.siegelz(t)
        ms, big_n, p = main_sum(t)
        tau2 = mp.mpf(t) / TWO_PI  # = tau^2
        sgn = 1 if (big_n - 1) % 2 == 0 else -1
        rem = z_ref - ms
        term0 = sgn * tau2 ** mp.mpf("-0.25") * c0(p)
        r1 = rem - term0
        term1 = sgn * tau2 ** mp.mpf("-0.75") * c1(p)
        r2 = r1 - term1
        term2 = sgn * tau2 ** mp.mpf("-1.25") * c2(p)
        r3 = r2 - term2
        # each subtraction should shrink the residual by ~tau
        e0, e1, e2, e3 = (abs(x) for x in (rem, r1, r2, r3))
        line_ok = e1 < e0 and e2 < e1 and e3 < e2 and e3 < 1e-6
        ok = ok and line_ok
        c3_bound = max(c3_bound, e3 * tau2 ** mp.mpf("1.75"))
        print(
            f"  t={t:9.2f} N={big_n:3d} p={float(p):.4f} "
            f"|rem|={float(e0):.2e} ->C0 {float(e1):.2e} "
            f"->C1 {float(e2):.2e} ->C2 {float(e3):.2e} "
            f"{'ok' if line_ok else 'BAD'}"
        )
    print(f"  remainder chain: {'OK' if ok else 'FAILED'}")
    print(f"  implied |C3| bound from residuals: {float(c3_bound):.3e}")
    return ok


def validate_theta():
    print("== theta asymptotic (3 correction terms) vs mp.siegeltheta ==")
    ok = True
    for t in [10.0, 14.134725, 30.0, 100.0, 1000.0, 1e6]:
        tm = mp.mpf(t)
        approx = (
            tm / 2 * mp.log(tm / TWO_PI)
            - tm / 2
            - mp.pi / 8
            + 1 / (48 * tm)
            + 7 / (5760 * tm**3)
            + 31 / (80640 * tm**5)
        )
        err = abs(approx - mp.siegeltheta(t))
        line_ok = err < (1e-10 if t >= 10 else 1e-6)
        ok = ok and line_ok
        print(f"  t={t:12.4f}  |err|={float(err):.3e} {'ok' if line_ok else 'BAD'}")
    print(f"  theta: {'OK' if ok else 'FAILED'}")
    return ok


def em_zeta_half(t, terms=50):
    """Euler-Maclaurin for zeta(1/2+it) in plain double arithmetic,
    mirroring the planned C++ implementation."""
    s = complex(0.5, float(t))
    m = int(terms) + int(math.ceil(abs(float(t))))
    if m < 2:
        m = 2
    acc = 0j
    for n in range(1, m):
        acc += complex(n) ** (-s)
    acc += complex(m) ** (1 - s) / (s - 1)
    acc += 0.5 * complex(m) ** (-s)
    bern = [
        1.0 / 6,
        -1.0 / 30,
        1.0 / 42,
        -1.0 / 30,
        5.0 / 66,
        -691.0 / 2730,
        7.0 / 6,
        -3617.0 / 510,
        43867.0 / 798,
        -174611.0 / 330,
        854513.0 / 138,
        -236364091.0 / 2730,
    ]
    rising = s  # s(s+1)...(s+2k-2), updated per term
    mpow = complex(m) ** (-s - 1)
    inv_m2 = 1.0 / (m * m)
    fact = 1.0
    acc_corr = 0j
    for k in range(1, 13):
        fact *= (2 * k - 1) * (2 * k)
        acc_corr += bern[k - 1] / fact * rising * mpow
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        mpow *= inv_m2
    return acc + acc_corr


def validate_em():
    print("== Euler-Maclaurin oracle (double arithmetic) vs mp.zeta ==")
    ok = True
    worst = 0.0
    for t in [0.0, 0.5, 2.0, 14.134725, 100.0, 1234.5678, 5000.0, 9999.0]:
        ref = mp.zeta(mp.mpc(0.5, t))
        got = em_zeta_half(t)
        err = abs(complex(ref) - got)
        rel = err / abs(complex(ref))
        worst = max(worst, min(rel, err * 1e3))
        # relative target away from zeros, absolute floor near them
        line_ok = rel < 1e-9 or err < 1e-12
        ok = ok and line_ok
        print(f"  t={t:10.4f}  rel={rel:.3e} abs={err:.3e} {'ok' if line_ok else 'BAD'}")
    print(f"  EM oracle: {'OK' if ok else 'FAILED'} (worst rel {worst:.3e})")
    return ok


def cheb_fit(f, degree):
    """Chebyshev coefficients of f on [0,1] via cosine-node sampling."""
    n = degree + 1
    nodes = [mp.cos(mp.pi * (k + mp.mpf("0.5")) / n) for k in range(n)]
    vals = [f((x + 1) / 2) for x in nodes]
    coeffs = []
    for j in range(n):
        s = mp.mpf(0)
        for k in range(n):
            s += vals[k] * mp.cos(j * mp.pi * (k + mp.mpf("0.5")) / n)
        coeffs.append(2 * s / n)
    coeffs[0] /= 2
    return coeffs


def cheb_eval(coeffs, x01):
    x = 2 * mp.mpf(x01) - 1
    b1 = b2 = mp.mpf(0)
    for c in reversed(coeffs[1:]):
        b1, b2 = 2 * x * b1 - b2 + c, b1
    return x * b1 - b2 + coeffs[0]


def build_cheb_tables():
    print("== Chebyshev tables for C0, C1, C2 on [0,1] ==")
    tables = {}
    maxima = {}
    for name, fn in (("C0", c0), ("C1", c1), ("C2", c2)):
        coeffs = cheb_fit(fn, 79)
        # truncate once coefficients fall below 1e-19
        keep = len(coeffs)
        while keep > 8 and abs(coeffs[keep - 1]) < mp.mpf("1e-19"):
            keep -= 1
        coeffs = coeffs[:keep]
        err = mp.mpf(0)
        fmax = mp.mpf(0)
        for i in range(257):
            p = mp.mpf(i) / 256
            v = fn(p)
            err = max(err, abs(cheb_eval(coeffs, p) - v))
            fmax = max(fmax, abs(v))
        tables[name] = coeffs
        maxima[name] = fmax
        print(
            f"  {name}: {keep} coeffs, interp err {float(err):.2e}, "
            f"max|{name}| = {float(fmax):.6f}"
        )
    return tables, maxima


def dd_split(x):
    hi = float(x)
    lo = float(x - mp.mpf(hi))
    return hi, lo


def gl_nodes(n):
    import numpy as np

    seeds, _ = np.polynomial.legendre.leggauss(n)
    nodes = []
    for s in seeds:
        r = mp.findroot(lambda x: mp.legendre(n, x), mp.mpf(float(s)))
        nodes.append(r)
    weights = []
    for r in nodes:
        dp = mp.diff(lambda x: mp.legendre(n, x), r)
        weights.append(2 / ((1 - r * r) * dp * dp))
    return nodes, weights


def fmt(x):
    return mp.nstr(mp.mpf(x), 22, strip_zeros=False)


def write_tables(tables):
    with open("src/rs_cheb.inc", "w") as f:
        f.write("// Generated by scripts/gen_tables.py; do not edit by hand.\n")
        f.write("// Chebyshev coefficients on p in [0,1] (argument 2p-1) for the\n")
        f.write("// Riemann-Siegel remainder functions C0, C1, C2.\n")
        for name, coeffs in tables.items():
            f.write(f"inline constexpr double k_rs_{name.lower()}[] = {{\n")
            for c in coeffs:
                f.write(f"    {float(c):.17e},\n")
            f.write("};\n")

    with open("src/ln_dd.inc", "w") as f:
        f.write("// Generated by scripts/gen_tables.py; do not edit by hand.\n")
        f.write("// ln(n) as double-double (hi, lo) pairs, n = 2..1024 inclusive.\n")
        f.write("inline constexpr int k_ln_dd_max = 1024;\n")
        f.write("inline constexpr double k_ln_dd[1023][2] = {\n")
        for n in range(2, 1025):
            hi, lo = dd_split(mp.log(n))
            f.write(f"    {{{hi!r}, {lo!r}}},\n")
        f.write("};\n")

    with open("src/gl_nodes.inc", "w") as f:
        f.write("// Generated by scripts/gen_tables.py; do not edit by hand.\n")
        f.write("// Gauss-Legendre nodes/weights on [-1,1].\n")
        for n in (4, 8):
            nodes, weights = gl_nodes(n)
            f.write(f"inline constexpr double k_gl{n}_x[{n}] = {{\n")
            for r in nodes:
                f.write(f"    {float(r)!r},\n")
            f.write("};\n")
            f.write(f"inline constexpr double k_gl{n}_w[{n}] = {{\n")
            for w in weights:
                f.write(f"    {float(w)!r},\n")
            f.write("};\n")


def print_frozen_constants():
    print("== frozen constants for tests ==")
    z_half = mp.zeta(mp.mpf("0.5"))
    print(f"  zeta(1/2)            = {mp.nstr(z_half, 20)}")
    print(f"  zeta(1/2)^2          = {mp.nstr(z_half * z_half, 20)}")
    zero1 = mp.findroot(mp.siegelz, mp.mpf("14.13"))
    print(f"  first zero           = {mp.nstr(zero1, 20)}")
    g = mp.euler
    print(f"  euler gamma          = {mp.nstr(g, 20)}")
    print(f"  2pi(2g-1)            = {mp.nstr(TWO_PI * (2 * g - 1), 20)}")
    print(f"  2pi e^(1-2g)         = {mp.nstr(TWO_PI * mp.e ** (1 - 2 * g), 20)}")
    print(f"  Delta(10) = 27-10(ln10+2g-1) = {mp.nstr(27 - 10 * (mp.log(10) + 2 * g - 1), 20)}")
    print(f"  Delta(1)  = 2-2g     = {mp.nstr(2 - 2 * g, 20)}")
    c = mp.mpf(2) / 3 / mp.sqrt(TWO_PI) * mp.zeta(mp.mpf("1.5")) ** 4 / mp.zeta(3)
    print(f"  (2/3)(2pi)^-1/2 z(3/2)^4/z(3) = {mp.nstr(c, 20)}")
    a, b = mp.mpf("1.3"), mp.mpc("0.7", "0.4")
    gi = mp.sqrt(mp.pi / b) * mp.exp(a * a / (4 * b))
    print(f"  gauss(1.3, 0.7+0.4i) = {mp.nstr(gi, 20)}")
    ee = mp.e**mp.e
    lsound = ee ** mp.mpf("0.25") * mp.exp(mp.mpf(3) / 4 * (2 ** mp.mpf(4 / 3) - 1))
    print(f"  L(e^(e^e))           = {mp.nstr(lsound, 20)}")
    print(f"  sqrt(pi)             = {mp.nstr(mp.sqrt(mp.pi), 20)}")
    print(f"  sqrt(pi)*e           = {mp.nstr(mp.sqrt(mp.pi) * mp.e, 20)}")
    for t in ["0.5", "1", "14.134725", "100", "1234.5678", "5000"]:
        v = mp.zeta(mp.mpc("0.5", t))
        print(f"  zeta(1/2+{t}i) = {mp.nstr(v, 20)}")
    for t in ["1", "5", "10", "30", "100", "10000"]:
        print(f"  theta({t}) = {mp.nstr(mp.siegeltheta(mp.mpf(t)), 20)}")
    for p in ["0", "0.12", "0.25", "0.5", "0.77", "1"]:
        print(f"  C0({p}) = {mp.nstr(c0(mp.mpf(p)), 20)}")
        print(f"  C1({p}) = {mp.nstr(c1(mp.mpf(p)), 20)}")
        print(f"  C2({p}) = {mp.nstr(c2(mp.mpf(p)), 20)}")


def profile_correction_sizes(maxima):
    print("== remainder-term magnitudes (worst case over p) ==")
    for t in [100.0, 300.0, 1000.0, 2500.0, 5000.0, 1e4, 1e5, 1e6]:
        tau2 = mp.mpf(t) / TWO_PI
        t1 = float(tau2 ** mp.mpf("-0.75") * maxima["C1"])
        t2 = float(tau2 ** mp.mpf("-1.25") * maxima["C2"])
        print(f"  t={t:10.0f}  C1-term<= {t1:.2e}  C2-term<= {t2:.2e}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--check-only", action="store_true")
    args = ap.parse_args()
    ok = validate_theta()
    ok = validate_em() and ok
    ok = validate_remainder() and ok
    tables, maxima = build_cheb_tables()
    profile_correction_sizes(maxima)
    print_frozen_constants()
    if not args.check_only:
        write_tables(tables)
        print("wrote src/rs_cheb.inc, src/ln_dd.inc, src/gl_nodes.inc")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
