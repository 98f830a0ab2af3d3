#!/usr/bin/env python3
"""Independent high-precision reference values for the C++ tests.

Every quantity is recomputed from its defining formula with mpmath at 40
digits, without going through the library. Running the script rewrites
frozen.json; with --check it only verifies that the committed file matches.
"""
import argparse
import json
import pathlib
import sys

import numpy as np
from mpmath import mp, mpf, sqrt

mp.dps = 40
HERE = pathlib.Path(__file__).resolve().parent


def exponents(N, q, theta, lam):
    N, q, theta, lam = mpf(N), mpf(q), mpf(theta), mpf(lam)
    lam_h = (N - 2) ** 2 / 4
    Th = (theta + 2) / (q - 1)
    out = {
        "lambda_H": lam_h,
        "Theta": Th,
        "ell": Th**2 - (N - 2) * Th + lam,
        "lambda_star": Th * (N - 2 - Th),
        "q_crit": (N + 2 * theta + 2) / (N - 2),
        "disc": lam_h - lam,
        "theta_hat": (N - 2) * q - (N + 2 + theta),
        "Theta_hat": N - 2 - Th,
    }
    if lam_h - lam >= 0:
        r = sqrt(lam_h - lam)
        pm, pp = (N - 2) / 2 - r, (N - 2) / 2 + r
        out.update(p_minus=pm, p_plus=pp, theta_minus=pm * (q - 1) - 2, theta_plus=pp * (q - 1) - 2)
    return out


def label(N, q, theta, lam):
    e = exponents(N, q, theta, lam)
    if e["disc"] < 0:
        return ["U", None]
    tm, tp = e["theta_minus"], e["theta_plus"]
    eq = lambda a, b: abs(a - b) <= mpf("1e-9") * max(1, abs(b))
    if eq(theta, tm) and eq(theta, tp):
        return ["NCASE", "N_double_boundary"]
    if eq(theta, tm):
        return ["NCASE", "N_lower_boundary"]
    if eq(theta, tp):
        return ["NCASE", "N_upper_boundary"]
    if theta < tm:
        return ["M1", None]
    if theta > tp:
        return ["M2", None]
    return ["NCASE", "N_interior"]


def rough(N, q, theta, lam, alpha):
    e = exponents(N, q, theta, lam)
    K = N - 2 - 2 * e["Theta"]
    a = sqrt(mpf(alpha))
    return {"A": 1 - a / e["ell"] * (K - a), "B": -2 + a / e["ell"] * (K - mpf(alpha))}


def refined(N, q, theta, lam, alpha, eta):
    e = exponents(N, q, theta, lam)
    K = N - 2 - 2 * e["Theta"]
    a, eta, ell = sqrt(mpf(alpha)), mpf(eta), e["ell"]
    out = {}
    for name, s in (("plus", 1), ("minus", -1)):
        A = 1 + s * a * (K + s * a) / ell - s * eta * (K - s * eta + s * 2 * a) / ell
        B = 2 + s * a * (K + mpf(alpha)) / ell - s * 2 * eta * (K - s * eta + s * a) / ell
        C = 1 - s * eta * (K - s * eta) / ell
        w = a / (q - 1)
        out[name] = {"A": A, "B": B, "C": C, "Btilde": (1 + s * w) * B - s * 2 * w * A,
                     "Ctilde": (1 + s * 2 * w) * C - s * w * B}
    return out


def apriori(N, q, theta, lam, n=4001):
    # sup over the annulus 1/2 <= |x|/|x0| <= 3/2 of the bracket, with ζ and
    # |x|/|x0| treated as independent; brute force on a fine grid (double
    # precision is plenty for a brute-force maximum).
    s = np.linspace(0.5, 1.5, n)[:, None]
    z = np.linspace(0.0, 1.0, n)[None, :]
    rho2 = (1 - z) / 4
    v = s ** (-theta) * (16 / (q - 1) * (N * z + 8 * (q + 1) / (q - 1) * rho2) + lam / s**2 * z**2)
    return mpf(float(v.max())) ** (1 / (mpf(q) - 1))


def family_m2(mu, r, N, q, theta, lam):
    e = exponents(N, q, theta, lam)
    d = sqrt(e["disc"])
    mu, r = mpf(mu), mpf(r)
    return r ** (-e["p_plus"]) * (mu ** (-2 * d) + e["ell"] ** mpf(-0.5) * r ** (2 * d)) ** (-2 / (mpf(q) - 1))


def family_m1(mu, r, N, q, theta, lam):
    e = exponents(N, q, theta, lam)
    d = sqrt(e["disc"])
    mu, r = mpf(mu), mpf(r)
    return r ** (-e["p_minus"]) * (mu ** (2 * d) + e["ell"] ** mpf(-0.5) * r ** (-2 * d)) ** (-2 / (mpf(q) - 1))


def divergence(N, q, a, b, d):
    N, q, a, b, d = map(mpf, (N, q, a, b, d))
    sigma = (2 * a + b + 2) / (q - 1)
    rho = a - (N - 2) / 2
    return {"theta": a * (1 + q) + b, "lambda": d + a * (N - 2 - a), "sigma": sigma, "rho": rho,
            "ell": (sigma + rho) ** 2 - rho**2 + d}


def num(x):
    if isinstance(x, dict):
        return {k: num(v) for k, v in x.items()}
    if isinstance(x, list):
        return [num(v) for v in x]
    return x if x is None or isinstance(x, (str, int)) else float(x)


def build():
    tuples = [(3, 2, 0, 0), (4, 2, 4, 0), (3, 2, 0, 0.25), (3, 2, 0, 1), (5, 3, 1, -2), (10, 1.5, -3, 7), (4, 2, -6, 0)]
    label_tuples = [(3, 2, 0, 1), (3, 2, 0, 0), (3, 2, -2, 0), (3, 2, -1, 0), (3, 2, -1.5, 0),
                    (3, 2, -1.5, 0.25), (3, 2, -5, 0), (4, 2, 4, 0), (4, 2, -6, 0), (5, 3, 0, 2.25)]
    out = {
        "exponents": [{"params": list(t), "values": exponents(*t)} for t in tuples],
        "labels": [{"params": list(t), "label": label(*t)} for t in label_tuples],
        "rough": [{"params": [3, 2, 0, 1], "alpha": a, "values": rough(3, 2, 0, 1, a)} for a in (0.01, 0.1)],
        "refined": [{"params": list(t), "alpha": 0.01, "eta": 0.001, "values": refined(*t, 0.01, 0.001)}
                    for t in ((3, 2, 0, 1), (3, 2, 0, 0), (3, 2, -5, 0))],
        "apriori": [{"params": list(t), "C0": apriori(*t)} for t in ((3, 2, 0, 0), (3, 2, 0, 1), (4, 3, 1, -1), (5, 3, 0, -10))],
        "family_m2": [{"params": [4, 2, 4, 0], "mu": mu, "r": r, "u": family_m2(mu, r, 4, 2, 4, 0)}
                      for mu in (1, 1.3) for r in (1e-6, 0.01, 0.7, 5, 1e4)],
        "family_m1": [{"params": [4, 2, -6, 0], "mu": mu, "r": r, "u": family_m1(mu, r, 4, 2, -6, 0)}
                      for mu in (1, 0.8) for r in (1e-4, 0.2, 3, 1e6)],
        "divergence": [{"input": list(t), "values": divergence(*t)} for t in ((3, 2, 1, 0, 0), (4, 3, -0.5, 1, 0.3))],
        # ln-layer constants of the Case N catalogue
        "ncase_constants": {
            "lower_3_2_-2_0": ((3 - 2 - 2 * exponents(3, 2, -2, 0)["p_minus"]) / 1) ** 1,
            "double_3_2_-1.5_0.25": 2 * (2 + 1) / mpf(1) ** 2,
            "double_4_3_0_1": (2 * (3 + 1) / mpf(2) ** 2) ** (mpf(1) / 2),
        },
    }
    return num(out)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args()
    data = build()
    target = HERE / "frozen.json"
    text = json.dumps(data, indent=1, sort_keys=True) + "\n"
    if args.check:
        frozen = json.loads(target.read_text())
        def close(a, b, path="$"):
            if isinstance(a, dict):
                assert a.keys() == b.keys(), path
                for k in a:
                    close(a[k], b[k], f"{path}.{k}")
            elif isinstance(a, list):
                assert len(a) == len(b), path
                for i, (x, y) in enumerate(zip(a, b)):
                    close(x, y, f"{path}[{i}]")
            elif isinstance(a, float):
                assert abs(a - b) <= 1e-14 * max(1.0, abs(a)), f"{path}: {a} vs {b}"
            else:
                assert a == b, path
        close(data, frozen)
        print("frozen values reproduce")
        return 0
    target.write_text(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
