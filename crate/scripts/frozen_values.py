# Independent per-mode tensor-product simulation (numpy, scipy) that produced
# the frozen values in crates/core/tests/frozen_values.rs. Runs in minutes.
import numpy as np
from scipy.linalg import expm
from math import comb

N = 44  # photons per mode
d = N + 1
a = np.diag(np.sqrt(np.arange(1, d)), 1)
I = np.eye(d)
A = np.kron(a, I); B = np.kron(I, a)

def sq(lam):
    c = np.zeros(d)
    c[0] = (1 - lam**2) ** 0.25
    for n in range(0, d - 2, 2):
        c[n + 2] = c[n] * (-lam) * np.sqrt((n + 1) / (n + 2))
    return c

def bs(theta):
    return expm(theta * (A.conj().T @ B - A @ B.conj().T))

def kraus(T, weights):
    ks = []
    for k in range(d):
        K = np.zeros((d, d))
        for n in range(k, d):
            K[n - k, n] = np.sqrt(comb(n, k) * T ** (n - k) * (1 - T) ** k)
        ks.append((weights[k], K))
    return ks

def apply(rho, ks, mode):
    out = np.zeros_like(rho)
    for w, K in ks:
        if w == 0.0:
            continue
        KK = np.kron(K, I) if mode == 0 else np.kron(I, K)
        out += w * KK @ rho @ KK.T
    return out

def run(lam, T, TL, eta, nu, two):
    first = sq(lam)
    second = sq(-lam) if two else np.eye(d)[0]
    psi = np.kron(first, second)
    U = bs(np.pi / 4)
    psi = U @ psi
    rho = np.outer(psi, psi)
    if TL < 1:
        for m in (0, 1):
            rho = apply(rho, kraus(TL, np.ones(d)), m)
    on = [1 - np.exp(-nu) * (1 - eta) ** k for k in range(d)]
    for m in (0, 1):
        rho = apply(rho, kraus(T, on), m)
    p = np.trace(rho)
    rho = rho / p
    if not two:
        Ui = bs(-np.pi / 4)
        rho = Ui @ rho @ Ui.T
    return p, rho

def reduce_a(rho):
    return np.einsum('ijkj->ik', rho.reshape(d, d, d, d))

def reduce_b(rho):
    return np.einsum('ijil->jl', rho.reshape(d, d, d, d))

x = (a + a.T) / np.sqrt(2)
pq = (a - a.T) / (np.sqrt(2) * 1j)
XA = np.kron(x, I); XB = np.kron(I, x); PA = np.kron(pq, I); PB = np.kron(I, pq)

lam, T = 0.4, 0.9
for name, (TL, eta, nu) in [("ideal", (1.0, 1.0, 0.0)), ("practical", (0.75, 0.6, 1e-3))]:
    p1, r1 = run(lam, T, TL, eta, nu, False)
    ra = reduce_a(r1)
    vx = np.trace(ra @ x @ x).real
    vp = np.trace(ra @ pq @ pq).real
    n = np.trace(ra @ a.T @ a).real
    w00 = sum((-1) ** k * ra[k, k].real for k in range(d)) / np.pi
    vac_b = reduce_b(r1)[0, 0].real
    p2, r2 = run(lam, T, TL, eta, nu, True)
    U = XA - XB; V = PA + PB
    vu = np.trace(r2 @ U @ U).real
    vv = np.trace(r2 @ V @ V).real
    print(f"{name}: p_single={p1.real!r} p_two={p2.real!r}")
    print(f"  var_x={vx!r} var_p={vp!r} mean_n={n!r} w00={w00!r} vac_b={vac_b!r}")
    print(f"  bell_u={vu!r} bell_v={vv!r}")
