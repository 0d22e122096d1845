#!/usr/bin/env python3
"""Reference values at 50 digits for the unit tests.

Every quantity is computed from its defining equation with mpmath: root
finding on the two LeBrun equations, the metric as the real Hessian of the
potential symmetrized by I1, derivatives by mpmath.diff.  Run once and commit
the output; the tests compare against the frozen numbers.
"""

import sys

import mpmath as mp

mp.mp.dps = 50


def lebrun(p, m):
    x1, x2, x3, x4 = p
    a = mp.sqrt(x1 * x1 + x2 * x2)
    b = mp.sqrt(x3 * x3 + x4 * x4)

    # unknowns s = log u, t = log v
    def eqs(s, t):
        u, v = mp.e ** s, mp.e ** t
        return [m * (u * u - v * v) + s - mp.log(a), m * (v * v - u * u) + t - mp.log(b)]

    s, t = mp.findroot(eqs, (mp.log(a), mp.log(b)), tol=mp.mpf(2) ** (10 - 2 * mp.mp.prec))
    u, v = mp.e ** s, mp.e ** t
    z1 = mp.mpc(x1, x2)
    z2 = mp.mpc(x3, x4)
    w = -1j * z1 * z2
    y1 = (u * u - v * v) / 2
    y2, y3 = w.real, w.imag
    R = mp.sqrt(y1 * y1 + y2 * y2 + y3 * y3)
    return u, v, y1, y2, y3, R


def potential(p, m):
    u, v, *_ = lebrun(p, m)
    return (u * u + v * v + m * (u ** 4 + v ** 4)) / 4


def metric(p, m):
    # f = Hess(phi) + I1^T Hess(phi) I1, normalized so that |x|^2 / 4 gives e.
    H = mp.matrix(4, 4)
    for i in range(4):
        for j in range(4):
            order = [0, 0, 0, 0]
            order[i] += 1
            order[j] += 1
            H[i, j] = mp.diff(lambda *x: potential(x, m), p, tuple(order))
    I1 = mp.matrix([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    return H + I1.T * H * I1


def psi_c(y, m):
    y1, y2, y3 = y
    R = mp.sqrt(y1 * y1 + y2 * y2 + y3 * y3)
    r2 = 2 * (R * mp.cosh(4 * m * y1) + y1 * mp.sinh(4 * m * y1))
    return -2 * mp.mpc(y2, y3) * mp.sinh(4 * m * y1) / (r2 * R)


def step(t):
    if t <= 0:
        return mp.mpf(0)
    if t >= 1:
        return mp.mpf(1)
    s1, s2 = mp.e ** (-1 / t), mp.e ** (-1 / (1 - t))
    return s1 / (s1 + s2)


def beth_scale(p, a, kappa):
    r2 = sum(x * x for x in p)
    return 1 + a / (kappa + r2 * r2)


def beth_volume_defect(p, a, kappa):
    J = mp.matrix(4, 4)
    for j in range(4):
        for i in range(4):
            order = [0, 0, 0, 0]
            order[j] = 1
            J[i, j] = mp.diff(lambda *x: beth_scale(x, a, kappa) * x[i], p, tuple(order))
    return mp.det(J) - 1


def gram_spectrum(Z):
    E, _ = mp.eigsy(mp.matrix(Z))
    return sorted([E[i] for i in range(3)], reverse=True)


def num(x):
    return mp.nstr(x, 20, strip_zeros=False, min_fixed=-1, max_fixed=-1)


def emit_array(name, values):
    return "inline constexpr double %s[] = {%s};" % (name, ", ".join(num(v) for v in values))


def main():
    out = []
    w = out.append
    w("// Generated by tools/oracles/generate.py (mpmath, 50 digits). Do not edit.")
    w("#pragma once")
    w("")
    w("namespace oracle {")
    w("")

    w("// LeBrun coordinates: p (4), m, then u, v, y1, y2, y3, R, phi.")
    w("struct LeBrunCase {")
    w("  double p[4];")
    w("  double m;")
    w("  double u, v, y1, y2, y3, R, phi;")
    w("};")
    cases = [
        ((1, 0, 1, 0), 1),
        ((0.3, -0.2, 0.5, 0.1), 0.1),
        ((1.2, 0.7, -0.4, 0.9), 1),
        ((2.0, -1.0, 0.5, 1.5), 10),
        ((0.05, 0.02, -0.01, 0.03), 0.01),
        ((3.0, 4.0, 0.2, -0.1), 2),
        ((0.01, 0.0, 5.0, 2.0), 0.5),
    ]
    w("inline constexpr LeBrunCase kLeBrun[] = {")
    for p, m in cases:
        pp = [mp.mpf(x) for x in p]
        mm = mp.mpf(m)
        u, v, y1, y2, y3, R = lebrun(pp, mm)
        phi = (u * u + v * v + mm * (u ** 4 + v ** 4)) / 4
        w("    {{%s}, %s, %s}," % (", ".join(num(x) for x in pp), num(mm), ", ".join(num(x) for x in (u, v, y1, y2, y3, R, phi))))
    w("};")
    w("")

    w("// Taub-NUT metric f_m from the Hessian of phi_m, row-major.")
    w("struct MetricCase {")
    w("  double p[4];")
    w("  double m;")
    w("  double f[16];")
    w("};")
    w("inline constexpr MetricCase kMetric[] = {")
    for p, m in [((1.2, 0.7, -0.4, 0.9), 1), ((0.3, -0.2, 0.5, 0.1), 0.1), ((0.8, 0.1, 0.6, -0.5), 3)]:
        pp = [mp.mpf(x) for x in p]
        f = metric(pp, mp.mpf(m))
        w("    {{%s}, %s, {%s}}," % (", ".join(num(x) for x in pp), num(mp.mpf(m)), ", ".join(num(f[i, j]) for i in range(4) for j in range(4))))
    w("};")
    w("")

    w("// psi_c and its partials d^{a+b+c} / dy1^a dy2^b dy3^c: y (3), m, (a, b, c), re, im.")
    w("struct PsiCase {")
    w("  double y[3];")
    w("  double m;")
    w("  int a, b, c;")
    w("  double re, im;")
    w("};")
    w("inline constexpr PsiCase kPsi[] = {")
    for y, m in [((0.4, 1.1, -0.7), 1), ((-0.3, 2.0, 0.5), 0.5), ((1.5, -0.8, 2.2), 0.2)]:
        yy = [mp.mpf(x) for x in y]
        mm = mp.mpf(m)
        for abc in [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (2, 0, 0), (1, 1, 0), (0, 1, 1), (3, 0, 0), (1, 1, 1), (2, 0, 2), (4, 0, 0), (0, 2, 2)]:
            re = mp.diff(lambda a, b, c: psi_c((a, b, c), mm).real, yy, abc)
            im = mp.diff(lambda a, b, c: psi_c((a, b, c), mm).imag, yy, abc)
            w("    {{%s}, %s, %d, %d, %d, %s, %s}," % (", ".join(num(x) for x in yy), num(mm), *abc, num(re), num(im)))
    w("};")
    w("")

    w("// Gluing step s(t) and its primitive kappa(t) = int_0^t s.")
    ts = [mp.mpf(x) for x in ("0.1", "0.25", "0.5", "0.75", "0.9")]
    w(emit_array("kStepT", ts))
    w(emit_array("kStepValue", [step(t) for t in ts]))
    w(emit_array("kStepPrimitive", [mp.quad(step, [0, t]) for t in ts]))
    w("")

    w("// Beth map: Jacobian determinant - 1 of x -> (1 + a / (kappa + r^4)) x: p (4), a, kappa, defect.")
    w("struct BethCase {")
    w("  double p[4];")
    w("  double a, kappa, defect;")
    w("};")
    w("inline constexpr BethCase kBeth[] = {")
    for p, a, kappa in [((0.5, 0.2, -0.3, 0.4), 0.2, 1), ((2.0, 1.0, -1.0, 0.5), 0.5, 40), ((6.0, -3.0, 4.0, 2.0), 0.5, 40)]:
        pp = [mp.mpf(x) for x in p]
        d = beth_volume_defect(pp, mp.mpf(a), mp.mpf(kappa))
        w("    {{%s}, %s, %s, %s}," % (", ".join(num(x) for x in pp), num(mp.mpf(a)), num(mp.mpf(kappa)), num(d)))
    w("};")
    w("")

    w("// Gram matrices of integer triples in R^5 and their spectra (descending).")
    w("struct GramCase {")
    w("  double Z[9];")
    w("  double lambda[3];")
    w("};")
    w("inline constexpr GramCase kGram[] = {")
    triples = [
        [[1, 2, 0, -1, 3], [0, 1, 1, 2, -1], [2, 0, -1, 1, 1]],
        [[3, 0, 0, 0, 0], [0, 2, 0, 0, 0], [0, 0, 1, 0, 0]],
        [[1, 1, 0, 0, 0], [1, -1, 0, 0, 0], [0, 0, 2, 1, 1]],
    ]
    for t in triples:
        Z = [[sum(mp.mpf(a) * b for a, b in zip(t[i], t[j])) for j in range(3)] for i in range(3)]
        lam = gram_spectrum(Z)
        w("    {{%s}, {%s}}," % (", ".join(num(Z[i][j]) for i in range(3) for j in range(3)), ", ".join(num(x) for x in lam)))
    w("};")
    w("")
    w("}  // namespace oracle")
    sys.stdout.write("\n".join(out) + "\n")


if __name__ == "__main__":
    main()
