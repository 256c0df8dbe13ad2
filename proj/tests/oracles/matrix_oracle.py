#!/usr/bin/env python3
"""Independent construction of the operator matrices used as golden fixtures.

H~ f = V (f(x - i) - f) + V* (f(x + i) - f) + alpha f, done in exact sympy
algebra straight from the Hamiltonians' definitions (trig-q with q-shifts
z -> q z, z -> z / q), then re-expanded in powers of eta. Writes
tests/fixtures/matrix_<name>.json in the dump-matrix layout.

usage: matrix_oracle.py OUTDIR
"""
import json
import pathlib
import sys

import sympy as sp

x, z = sp.symbols("x z")
C, S = sp.symbols("C S", real=True)  # cos beta, sin beta
I = sp.I


def linear_like(factors, phase, centrifugal, alpha_coeff, sector, M, square):
    num = sp.Integer(1)
    numc = sp.Integer(1)
    for p in factors:
        num *= p + I * x
        numc *= sp.conjugate(p) - I * x
    V = sp.conjugate(phase) * num
    Vs = phase * numc
    if centrifugal:
        V = V / (2 * I * x * (2 * I * x + 1))
        Vs = Vs / (-2 * I * x * (-2 * I * x + 1))
    e = x**2 if square else x
    alpha = alpha_coeff * e

    def basis(k):
        if not square:
            return x**k
        return x * x ** (2 * k) if sector == "odd" else x ** (2 * k)

    dim = {"full": M + 1, "even": M // 2 + 1, "odd": (M + 1) // 2}[sector]
    cols = []
    for k in range(dim):
        f = basis(k)
        h = V * (f.subs(x, x - I) - f) + Vs * (f.subs(x, x + I) - f) + alpha * f
        h = sp.expand(sp.cancel(sp.together(h)))
        if sector == "odd":
            h = sp.expand(sp.cancel(h / x))
        poly = sp.Poly(h, x)
        col = []
        for j in range(dim):
            col.append(poly.coeff_monomial(x ** (2 * j if square else j)))
        top = poly.degree()
        lim = 2 * (dim - 1) if square else dim - 1
        assert top <= lim, "leak"
        cols.append(col)
    return [[cols[j][i] for j in range(dim)] for i in range(dim)]


def cosine(factors, q, M):
    P = sp.Integer(1)
    for p in factors:
        P *= 1 - p * z
    V = P / ((1 - z**2) * (1 - q * z**2))
    Vs = V.subs(z, 1 / z)
    prod = sp.Integer(1)
    for p in factors:
        prod *= p
    alpha = -2 * prod / q * (1 - q**M) * (z + 1 / z) / 2
    et = (z + 1 / z) / 2
    dim = M + 1
    # eta^j as Laurent polynomials, for the change of basis
    pow_eta = [sp.expand(et**j) for j in range(dim)]
    cs = sp.symbols(f"c0:{dim}")
    cols = []
    for k in range(dim):
        f = et**k
        h = V * (f.subs(z, q * z) - f) + Vs * (f.subs(z, z / q) - f) + alpha * f
        h = sp.expand(sp.cancel(sp.together(h)))
        ansatz = sp.expand(sum(c * pe for c, pe in zip(cs, pow_eta)))
        eqs = sp.Poly(sp.expand((h - ansatz) * z**dim), z).coeffs()
        sol = sp.solve(eqs, cs, dict=True)
        assert len(sol) == 1, "leak"
        cols.append([sol[0][c] for c in cs])
    return [[cols[j][i] for j in range(dim)] for i in range(dim)]


def num(v):
    v = complex(sp.N(v, 30))
    return [v.real + 0.0, v.imag + 0.0]


def doc(spec, mat):
    return {
        "spec": spec,
        "dim": len(mat),
        "entries": [[num(v) for v in row] for row in mat],
        "max_overflow": 0.0,
        "meta": {"version": "0.1.0"},
    }


R = sp.Rational


def cases():
    a1, a2 = 1 + I * R(1, 2), R(4, 5) - I * R(1, 5)
    M = 3
    mat = linear_like([a1, a2], C + I * S, False, -2 * M * S, "full", M, False)
    yield "mp_crossed", {
        "family": "mp-crossed",
        "params": {"a1": [1.0, 0.5], "a2": [0.8, -0.2], "beta": 0.4},
        "M": M, "sector": "full"}, [[v.subs({C: sp.cos(R(2, 5)), S: sp.sin(R(2, 5))}) for v in row] for row in mat]
    for M, sector in ((4, "even"), (5, "odd")):
        yield f"sextic_i_{sector}", {
            "family": "sextic-i", "params": {"a": 1.0, "b": 2.0, "c": 3.0}, "M": M, "sector": sector,
        }, linear_like([1, 2, 3], 1, False, 2 * M, sector, M, True)
    p = [1, 2, R(3, 2), R(7, 10)]
    M = 4
    yield "sextic_ii_even", {
        "family": "sextic-ii", "params": {"a": 1.0, "b": 2.0, "c": 1.5, "d": 0.7}, "M": M, "sector": "even",
    }, linear_like(p, 1, False, M * (M - 1 + 2 * sum(p)), "even", M, True)
    p = [1, 2, 3, R(6, 5), R(4, 5)]
    M = 3
    yield "centrifugal_i", {
        "family": "centrifugal-i", "params": {"b": 1.0, "c": 2.0, "d": 3.0, "e": 1.2, "f": 0.8}, "M": M,
        "sector": "full"}, linear_like(p, 1, True, M, "full", M, True)
    p = [1, 2, R(3, 2), R(7, 10), R(4, 5), R(11, 10)]
    yield "centrifugal_ii", {
        "family": "centrifugal-ii", "params": {"a": 1.0, "b": 2.0, "c": 1.5, "d": 0.7, "e": 0.8, "f": 1.1},
        "M": M, "sector": "full"}, linear_like(p, 1, True, M * (M - 1 + sum(p)), "full", M, True)
    p = [R(3, 10), R(-1, 5), R(1, 10), R(2, 5), R(1, 5)]
    yield "trig_q", {
        "family": "trig-q", "params": {"a": 0.3, "b": -0.2, "c": 0.1, "d": 0.4, "e": 0.2, "q": 0.6}, "M": M,
        "sector": "full"}, cosine(p, R(3, 5), M)


def main(argv):
    out = pathlib.Path(argv[1])
    out.mkdir(parents=True, exist_ok=True)
    for name, spec, mat in cases():
        (out / f"matrix_{name}.json").write_text(json.dumps(doc(spec, mat), indent=2) + "\n")
        print(name, len(mat))


if __name__ == "__main__":
    main(sys.argv)
