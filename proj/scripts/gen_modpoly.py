#!/usr/bin/env python3
"""Generate classical modular polynomial data files.

Computes Phi_N over Z for prime N via q-expansions mod many word-size
primes followed by CRT, and writes one file per level in the `[i,j] c`
text format (exponent pair with i >= j, signed decimal coefficient).

Method, per prime p:
  1. j(q) mod p from E4^3 / Delta.
  2. Power sums of the conjugate set { j((tau+k)/N) } via the root-of-unity
     filter: sum_k g(zeta^k t) keeps exactly the exponents divisible by N.
  3. Newton's identities -> elementary symmetric functions e_1..e_N.
  4. Multiply by (X - j(N tau)) and rewrite each q-series coefficient as an
     integer polynomial in j by iterated leading-pole subtraction.

Verification: symmetric matrix, monic in X, Kronecker congruence mod N,
recomputation mod fresh primes outside the CRT set, and the exact
factorizations of Phi_2/Phi_3 at Y=0 and Y=1728.
"""

import argparse
import math
import os
import sys
import time

import gmpy2
import numpy as np

LEVELS = [2, 3, 5, 7, 11, 13, 23, 37, 47]

# height bound (nats): 6 l ln l + 16 l + 14 sqrt(l) ln l
def height_bits(n):
    return (6 * n * math.log(n) + 16 * n + 14 * math.sqrt(n) * math.log(n)) / math.log(2)


def primes_below(bound, count, skip=()):
    out = []
    p = bound
    while len(out) < count:
        p = int(gmpy2.prev_prime(p))
        if p not in skip:
            out.append(p)
    return out


# ---------------------------------------------------------------- series

def sigma3_table(n):
    t = [0] * (n + 1)
    for d in range(1, n + 1):
        d3 = d * d * d
        for m in range(d, n + 1, d):
            t[m] += d3
    return t


def pentagonal_series(n):
    t = [0] * (n + 1)
    k = 0
    while True:
        for kk in (k, -k) if k else (0,):
            e = kk * (3 * kk - 1) // 2
            if e > n:
                continue
            t[e] += (-1) ** (kk % 2)
        if k * (3 * k - 1) // 2 > n and k * (3 * k + 1) // 2 > n:
            break
        k += 1
    return t


def conv(a, b, n, p):
    return np.convolve(a, b)[: n + 1] % p


def series_inv(a, n, p):
    # Newton iteration; a[0] must be a unit
    b = np.array([int(gmpy2.invert(int(a[0]), p))], dtype=np.int64)
    while len(b) < n + 1:
        m = min(2 * len(b), n + 1)
        t = np.convolve(a[:m], b)[:m] % p
        t = (-t) % p
        t[0] = (t[0] + 2) % p
        b = np.convolve(b, t)[:m] % p
    return b[: n + 1]


_SIGMA3 = None
_PENTA = None


def j_series(p, n):
    """Coefficients c_{-1}..c_{n-1} of j(q) mod p, as an array with offset -1."""
    e4 = (240 * np.array(_SIGMA3[: n + 1], dtype=object)) % p
    e4[0] = 1
    e4 = e4.astype(np.int64)
    e43 = conv(conv(e4, e4, n, p), e4, n, p)
    phi = np.array(_PENTA[: n + 1], dtype=np.int64) % p
    ph2 = conv(phi, phi, n, p)
    ph4 = conv(ph2, ph2, n, p)
    ph8 = conv(ph4, ph4, n, p)
    ph16 = conv(ph8, ph8, n, p)
    d24 = conv(ph16, ph8, n, p)  # Delta/q = phi^24
    j = conv(e43, series_inv(d24, n, p), n, p)
    assert j[0] == 1 and j[1] == 744 % p and j[2] == 196884 % p
    assert j[3] == 21493760 % p and j[4] == 864299970 % p
    return j  # index i holds coefficient of q^(i-1)


def phi_matrix_mod_p(N, p):
    """(N+2)x(N+2) coefficient matrix of Phi_N mod p, C[r][m] = coeff of X^r j^m."""
    QHI = N + 6          # q-window [-1, QHI] for power sums / symmetric functions
    THI = N * QHI + N + 2  # t-window [-N, THI]; slack absorbs truncation pull-down
    JLEN = THI + N + 2   # j(q) coefficients needed for the f-power ladder
    j = j_series(p, max(JLEN, N + 8))

    # f(t) = j with q = t^N, window [-1, THI]; ladder g_n = f^n, window [-N, THI]
    f = j[: THI + 2]
    width = N + THI + 1  # exponents -N .. THI

    def tshift(arr, lo):
        out = np.zeros(width, dtype=np.int64)
        s = lo + N
        ln = min(len(arr), width - s)
        out[s : s + ln] = arr[:ln]
        return out

    g = tshift(f, -1)
    psums = []  # q-series on window [-1, QHI]
    for n in range(1, N + 1):
        if n > 1:
            full = np.convolve(g, tshift(f, -1))  # both factors have lo = -N
            lo = -2 * N
            g = np.zeros(width, dtype=np.int64)
            for idx in range(width):
                src = idx - N - lo
                if 0 <= src < len(full):
                    g[idx] = full[src] % p
        pn = np.zeros(QHI + 2, dtype=np.int64)  # exponents -1..QHI
        for r in range(-1, QHI + 1):
            te = N * r
            if -N <= te <= THI:
                pn[r + 1] = (N * int(g[te + N])) % p
        psums.append(pn)

    # Newton's identities on q-window [-1, QHI]
    qlen = QHI + 2

    def qmul(a, b):
        full = np.convolve(a, b) % p  # lo = -2
        out = np.zeros(qlen, dtype=np.int64)
        ln = min(qlen, len(full) - 1)
        out[:ln] = full[1 : 1 + ln]
        return out

    e = [np.zeros(qlen, dtype=np.int64) for _ in range(N + 1)]
    e[0][1] = 1  # constant 1 at q^0
    for n in range(1, N + 1):
        acc = np.zeros(qlen, dtype=np.int64)
        sign = 1
        for i in range(1, n + 1):
            term = qmul(psums[i - 1], e[n - i])
            acc = (acc + sign * term) % p
            sign = -sign
        acc = (acc * int(gmpy2.invert(n, p))) % p
        e[n] = acc

    # EP[k] = coeff of X^k in prod (X - f_k): (-1)^(N-k) e_{N-k}
    EP = [((-1) ** (N - k) * e[N - k]) % p for k in range(N + 1)]

    # s_r = EP[r-1] - jN * EP[r] on window [-(N+1), 3]
    slo, shi = -(N + 1), 3
    slen = shi - slo + 1

    def to_swin(arr, lo):
        out = np.zeros(slen, dtype=np.int64)
        for i, v in enumerate(arr):
            expo = lo + i
            if slo <= expo <= shi:
                out[expo - slo] = v
        return out

    # j(N tau) raw series on exponents -N..shi+1 (the +1 pairs with the
    # q^-1 pole of e_N in the product below)
    jN = np.zeros(N + shi + 2, dtype=np.int64)
    k = -1
    while N * k <= shi + 1:
        jN[N * k + N] = j[k + 1]
        k += 1

    svec = []
    for r in range(N + 2):
        a = to_swin(EP[r - 1], -1) if r >= 1 else np.zeros(slen, dtype=np.int64)
        if r <= N:
            full = np.convolve(jN, EP[r]) % p  # lo = -N + (-1)
            b = np.zeros(slen, dtype=np.int64)
            for i in range(len(full)):
                expo = -N - 1 + i
                if slo <= expo <= shi:
                    b[expo - slo] = full[i]
        else:
            b = np.zeros(slen, dtype=np.int64)
        svec.append((a - b) % p)

    # powers of j: raw ladder with full support, then windowed for subtraction
    keep_hi = shi + N + 2
    raw = [np.array([1], dtype=np.int64)]  # raw[m] has lo = -m
    for m in range(1, N + 2):
        full = np.convolve(raw[m - 1], j[: keep_hi + m + 2]) % p  # lo = -m
        raw.append(full[: keep_hi + m + 1])
    jpow = [to_swin(raw[m], -m) for m in range(N + 2)]

    # pole subtraction -> polynomial in j
    C = np.zeros((N + 2, N + 2), dtype=np.int64)
    for r in range(N + 2):
        S = svec[r].copy()
        for m in range(N + 1, 0, -1):
            c = int(S[-m - slo])
            if c:
                C[r][m] = c
                S = (S - c * jpow[m]) % p
        C[r][0] = int(S[-slo])
        S = (S - C[r][0] * jpow[0]) % p
        assert not S.any(), f"nonzero remainder for N={N} p={p} r={r}"

    assert C[N + 1][0] == 1 and not C[N + 1][1:].any()
    assert (C == C.T).all(), f"asymmetric matrix N={N} p={p}"
    return C


# ---------------------------------------------------------------- CRT + checks

def crt_levels(N, nprimes, skip=()):
    primes = primes_below(1 << 24, nprimes, skip=skip)
    M = 1
    acc = np.zeros((N + 2, N + 2), dtype=object)
    for p in primes:
        C = phi_matrix_mod_p(N, p)
        if M == 1:
            acc = acc + C.astype(object)
        else:
            Minv = int(gmpy2.invert(M % p, p))
            for r in range(N + 2):
                for m in range(r + 1):
                    x = acc[r][m]
                    t = ((int(C[r][m]) - x) * Minv) % p
                    v = x + M * t
                    acc[r][m] = v
                    acc[m][r] = v
        M *= p
    # symmetric lift
    maxbits = 0
    for r in range(N + 2):
        for m in range(N + 2):
            if acc[r][m] > M // 2:
                acc[r][m] -= M
            maxbits = max(maxbits, abs(int(acc[r][m])).bit_length())
    return acc, M, maxbits, primes


def poly_eval_matrix(C, N, y):
    """Phi_N(X, y) over Z as list of X-coefficients, constant first."""
    out = []
    for r in range(N + 2):
        v = 0
        for m in range(N + 1, -1, -1):
            v = v * y + int(C[r][m])
        out.append(v)
    return out


def check_identities(C, N):
    if N == 2:
        lhs = poly_eval_matrix(C, 2, 1728)
        # (X-1728)(X-66^3)^2
        r1, r2 = 1728, 66 ** 3
        rhs = [-r1 * r2 * r2, r2 * r2 + 2 * r1 * r2, -(r1 + 2 * r2), 1]
        assert lhs == rhs, "Phi_2(X,1728) mismatch"
        lhs = poly_eval_matrix(C, 2, 0)
        s = 54000
        rhs = [-s ** 3, 3 * s * s, -3 * s, 1]
        assert lhs == rhs, "Phi_2(X,0) mismatch"
        assert int(C[0][0]) == -157464000000000
    if N == 3:
        lhs = poly_eval_matrix(C, 3, 1728)
        a, b = 153542016, 1790957481984
        # (X^2 - aX - b)^2
        rhs = [b * b, 2 * a * b, a * a - 2 * b, -2 * a, 1]
        assert lhs == rhs, "Phi_3(X,1728) mismatch"
        lhs = poly_eval_matrix(C, 3, 0)
        s = 12288000
        # X (X + s)^3; the triple root is the discriminant -27 value -12288000
        rhs = [0, s ** 3, 3 * s * s, 3 * s, 1]
        assert lhs == rhs, "Phi_3(X,0) mismatch"
    # Kronecker congruence: Phi_N == (X^N - Y)(X - Y^N) mod N
    expect = {(N + 1, 0): 1, (0, N + 1): 1, (N, N): -1, (1, 1): -1}
    for r in range(N + 2):
        for m in range(N + 2):
            want = expect.get((r, m), 0) % N
            assert int(C[r][m]) % N == want, f"Kronecker congruence fails at {(r, m)}"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="data/phi")
    ap.add_argument("--levels", type=int, nargs="*", default=LEVELS)
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)

    global _SIGMA3, _PENTA
    maxlen = max(n * (n + 6) + n + 9 for n in args.levels)
    _SIGMA3 = sigma3_table(maxlen)
    _PENTA = pentagonal_series(maxlen)

    for N in args.levels:
        t0 = time.time()
        need = int(height_bits(N) / 23.9) + 4
        C, M, maxbits, primes = crt_levels(N, need)
        assert maxbits + 16 < M.bit_length(), f"insufficient CRT margin for N={N}"
        check_identities(C, N)
        # independent recomputation mod fresh primes
        for q in primes_below((1 << 24) - (1 << 20), 3, skip=set(primes)):
            Cq = phi_matrix_mod_p(N, q)
            for r in range(N + 2):
                for m in range(N + 2):
                    assert int(C[r][m]) % q == int(Cq[r][m]), f"fresh-prime check fails N={N}"
        path = os.path.join(args.out, f"phi_j_{N:03d}.txt")
        with open(path, "w") as fh:
            for i in range(N + 2):
                for jj in range(i + 1):
                    c = int(C[i][jj])
                    if c:
                        fh.write(f"[{i},{jj}] {c}\n")
        print(f"N={N}: {len(primes)} primes, max {maxbits} bits, "
              f"{time.time()-t0:.1f}s -> {path}", flush=True)


if __name__ == "__main__":
    main()
