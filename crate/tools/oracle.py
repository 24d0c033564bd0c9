#!/usr/bin/env python3
"""Reference values computed independently of the Rust crate.

Every quantity here is obtained by a different route than the library:
dividers by bisection on the interval-touching conditions, sector optima by
golden-section search, fidelity by scipy's sqrtm, two-particle probabilities
by explicit tensor products. Prints a Rust module of frozen constants.

    python3 tools/oracle.py > crates/core/tests/common/frozen.rs
"""

import mpmath as mp
import numpy as np
from scipy.linalg import sqrtm

mp.mp.dps = 50


def interval(x, a, b):
    c = b * x / (a + b * x)
    d = b / (b + a * x)
    return c, d


def sector_min(eta, a, b, x):
    """min over q in [x, 1] of eta*a*q + (1-eta)*b*x/q."""
    f = lambda q: eta * a * q + (1 - eta) * b * x / q
    lo, hi = mp.mpf(x), mp.mpf(1)
    g = (mp.sqrt(5) - 1) / 2
    for _ in range(300):
        m1 = hi - g * (hi - lo)
        m2 = lo + g * (hi - lo)
        if f(m1) < f(m2):
            hi = m2
        else:
            lo = m1
    return min(f(lo), f(mp.mpf(x)), f(mp.mpf(1)))


def bisect(g, lo=mp.mpf(0), hi=mp.mpf(1)):
    """Root of an increasing function g on (lo, hi)."""
    glo = g(lo + mp.mpf(10) ** -40)
    for _ in range(400):
        mid = (lo + hi) / 2
        if (g(mid) > 0) == (glo > 0):
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def dividers(x1, x2, alpha):
    a1, a2 = mp.mpf(alpha), 1 - mp.mpf(alpha)

    def iv(beta):
        return interval(x1, a1, beta), interval(x2, a2, 1 - beta)

    # I1 moves up and I2 moves down as beta grows
    b1 = bisect(lambda b: iv(b)[0][1] - iv(b)[1][0])  # d1 = c2
    b2 = bisect(lambda b: iv(b)[0][0] - iv(b)[1][0])  # c1 = c2
    b3 = bisect(lambda b: iv(b)[0][1] - iv(b)[1][1])  # d1 = d2
    b4 = bisect(lambda b: iv(b)[0][0] - iv(b)[1][1])  # c1 = d2
    return [b1, b2, b3, b4]


def regime(eta, c, d):
    if eta < c:
        return "B"
    if eta > d:
        return "A"
    return "I"


def census(x1, x2):
    x1, x2 = mp.mpf(x1), mp.mpf(x2)
    alpha = mp.mpf(1) / 2
    edges = [mp.mpf(0)] + dividers(x1, x2, alpha) + [mp.mpf(1)]
    counts = dict(total=0, saturating=0, projective=0, mixed=0, povm=0)
    for r in range(5):
        beta = (edges[r] + edges[r + 1]) / 2
        (c1, d1), (c2, d2) = interval(x1, alpha, beta), interval(x2, 1 - alpha, 1 - beta)
        cuts = sorted({mp.mpf(0), c1, d1, c2, d2, mp.mpf(1)})
        for lo, hi in zip(cuts, cuts[1:]):
            eta = (lo + hi) / 2
            r1, r2 = regime(eta, c1, d1), regime(eta, c2, d2)
            counts["total"] += 1
            if r1 == "I" and r2 == "I":
                counts["saturating"] += 1
                counts["povm"] += 1
            elif r1 != "I" and r2 != "I":
                counts["projective"] += 1
            else:
                counts["mixed"] += 1
    return counts


def example_q(eta):
    # two sectors, cos^2 = 1/2, uniform weights
    return 2 * sector_min(mp.mpf(eta), mp.mpf(1) / 2, mp.mpf(1) / 2, mp.mpf(1) / 2)


def example_matrices():
    h = 1 / np.sqrt(2)
    e = np.eye(4)
    s1 = [e[0], e[1]]
    s2 = [h * (e[0] + e[2]), h * (e[1] + e[3])]
    p1 = sum(np.outer(v, v.conj()) for v in s1)
    p2 = sum(np.outer(v, v.conj()) for v in s2)
    return s1, s2, p1, p2


def fidelity(r1, r2):
    s = sqrtm(r1)
    return np.trace(sqrtm(s @ r2 @ s)).real


def example_fidelity():
    _, _, p1, p2 = example_matrices()
    return fidelity(p1 / 2, p2 / 2)


def key_sharing_valid():
    s1, s2, p1, p2 = example_matrices()
    eta = 0.5
    # optimal operators at eta = 1/2: (2 - sqrt2) times the complement projectors
    w = 2 - np.sqrt(2)
    pi1 = w * (np.eye(4) - p2)
    pi2 = w * (np.eye(4) - p1)
    psi0 = (np.kron(s1[0], s1[1]) + np.kron(s1[1], s1[0])) / np.sqrt(2)
    psi1 = (np.kron(s2[0], s2[1]) + np.kron(s2[1], s2[0])) / np.sqrt(2)
    v0 = psi0.conj() @ np.kron(pi1, pi1) @ psi0
    v1 = psi1.conj() @ np.kron(pi2, pi2) @ psi1
    single = psi0.conj() @ np.kron(pi1, np.eye(4)) @ psi0
    assert abs(v0 - v1) < 1e-14, (v0, v1)
    return v0.real, single.real, eta


def black_box_success(n=200, seed=1):
    rng = np.random.default_rng(seed)
    _, _, p1, p2 = example_matrices()
    w = 2 - np.sqrt(2)
    pi1 = w * (np.eye(4) - p2)
    pi2 = w * (np.eye(4) - p1)
    hd = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    cnot = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    perm = [0, 1, 3, 2]
    worst = 0.0
    for _ in range(n):
        z = rng.normal(size=4)
        a, b = complex(z[0], z[1]), complex(z[2], z[3])
        nrm = np.sqrt(abs(a) ** 2 + abs(b) ** 2)
        a, b = a / nrm, b / nrm
        u = np.array([[a, -b.conjugate()], [b, a.conjugate()]])
        zero = np.zeros(4)
        zero[0] = 1
        out1 = np.kron(np.eye(2), u) @ zero
        out2 = cnot @ np.kron(hd, u) @ zero
        out1, out2 = out1[perm], out2[perm]
        ps = [(out1.conj() @ pi1 @ out1).real, (out2.conj() @ pi2 @ out2).real]
        worst = max(worst, *(abs(p - (1 - 1 / np.sqrt(2))) for p in ps))
    return 1 - 1 / np.sqrt(2), worst


def jordan_cos():
    e = np.eye(4)
    s2 = [(e[0] + e[2]) / np.sqrt(2), (e[1] + 2 * e[3]) / np.sqrt(5)]
    m = np.array([[np.vdot(e[a], s2[b]) for b in range(2)] for a in range(2)])
    return np.linalg.svd(m, compute_uv=False)


def r(x):
    return repr(float(x))


def main():
    etas = [mp.mpf(1) / 3 + mp.mpf(j) / 60 for j in range(21)]
    q_grid = [(float(e), float(example_q(e))) for e in etas]
    for e, q in q_grid:
        assert abs(q - float(mp.sqrt(2 * e * (1 - e)))) < 1e-14

    rows = {a: dividers(mp.mpf(3) / 4, mp.mpf(1) / 4, mp.mpf(a)) for a in ("0.25", "0.5", "0.75", "0.9")}
    valid, single, _ = key_sharing_valid()
    bb, bb_worst = black_box_success()
    assert bb_worst < 1e-12, bb_worst
    c_a = census("0.75", "0.25")
    c_b = census("0.9", "0.1")

    print("// Generated by tools/oracle.py. Do not edit by hand.")
    print("#![allow(dead_code, clippy::approx_constant)]")
    print()
    print("/// (eta, Q) for the four-dimensional example across [1/3, 2/3].")
    print(f"pub const EXAMPLE_Q_GRID: [(f64, f64); {len(q_grid)}] = [")
    for e, q in q_grid:
        print(f"    ({r(e)}, {r(q)}),")
    print("];")
    print(f"pub const EXAMPLE_Q_QUARTER: f64 = {r(example_q(mp.mpf(1) / 4))};")
    print(f"pub const EXAMPLE_Q_HALF: f64 = {r(example_q(mp.mpf(1) / 2))};")
    print(f"pub const EXAMPLE_FIDELITY: f64 = {r(example_fidelity())};")
    print()
    print("/// Dividers for cos^2 = (3/4, 1/4) at the given alpha.")
    for a, vals in rows.items():
        name = "DIVIDERS_" + a.replace("0.", "A")
        print(f"pub const {name}: [f64; 4] = [{', '.join(r(v) for v in vals)}];")
    print()
    print(f"pub const KEY_SHARING_VALID: f64 = {r(valid)};")
    print(f"pub const KEY_SHARING_SINGLE: f64 = {r(single)};")
    print(f"pub const BLACK_BOX_SUCCESS: f64 = {r(bb)};")
    print()
    cos = jordan_cos()
    print(f"pub const JORDAN_COS: [f64; 2] = [{r(cos[0])}, {r(cos[1])}];")
    print()
    print("/// total, saturating, projective, povm, mixed")
    for name, c in (("CENSUS_3_4_1_4", c_a), ("CENSUS_9_10_1_10", c_b)):
        vals = [c["total"], c["saturating"], c["projective"], c["povm"], c["mixed"]]
        print(f"pub const {name}: [usize; 5] = [{', '.join(map(str, vals))}];")


if __name__ == "__main__":
    main()
