"""Brute-force elliptic curve counts over small finite fields.

Curves are enumerated in short Weierstrass form y^2 = x^3 + ax + b with
4a^3 + 27b^2 != 0, which for characteristic >= 5 hits every isomorphism
class exactly (q - 1)/|Aut| times.  Automorphism-weighted trace counts
therefore come out of plain pair counting, exactly, with denominator q - 1.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from .arith import factorize, is_prime, kronecker
from .bias import delta_star, delta_star_sq, leading_sum
from .eisenstein import Config, DEFAULT_CONFIG, cusp_residual_0
from .hurwitz import cusp_coefficient, hurwitz_H, moment_H

_Q_CAP = 20_000


@dataclass(frozen=True)
class TraceMassTable:
    """Automorphism-weighted curve counts by trace over one finite field."""

    q: int
    p: int
    r: int
    masses: tuple[tuple[int, Fraction], ...]

    @cached_property
    def _by_trace(self) -> dict[int, Fraction]:
        return dict(self.masses)

    def mass(self, t: int) -> Fraction:
        return self._by_trace.get(t, Fraction(0))

    def traces(self) -> tuple[int, ...]:
        return tuple(t for t, _ in self.masses)

    def total_mass(self) -> Fraction:
        return sum((w for _, w in self.masses), Fraction(0))

    def moment(self, k: int, m: int, M: int) -> Fraction:
        total = Fraction(0)
        for t, w in self.masses:
            if (t - m) % M == 0:
                total += t**k * w
        return total


def _smallest_nonresidue(p: int) -> int:
    for c in range(2, p):
        if kronecker(c, p) == -1:
            return c
    raise ValueError(f"no quadratic non-residue mod {p}")


def _prime_field_tally(p: int) -> dict[int, int]:
    chi = np.zeros(p, dtype=np.float64)
    for x in range(1, p):
        chi[x] = kronecker(x, p)
    # shifted[y, b] = chi((y + b) mod p); counts @ shifted gives, for every b
    # at once, sum_x chi(x^3 + ax + b).  Entries are exact small integers so
    # the float matmul rounds cleanly.
    shifted = chi[(np.arange(p)[:, None] + np.arange(p)[None, :]) % p]
    xs = np.arange(p, dtype=np.int64)
    cubes = (xs * xs % p) * xs % p
    disc_b = 27 * (xs * xs % p) % p
    bound = math.isqrt(4 * p)
    tally = np.zeros(2 * bound + 1, dtype=np.int64)
    for a in range(p):
        counts = np.bincount((cubes + a * xs) % p, minlength=p).astype(np.float64)
        traces = -np.rint(counts @ shifted).astype(np.int64)
        good = (4 * pow(a, 3, p) + disc_b) % p != 0
        np.add.at(tally, traces[good] + bound, 1)
    return {t - bound: int(c) for t, c in enumerate(tally) if c}


def _quadratic_field_tally(p: int) -> dict[int, int]:
    # F_{p^2} = F_p[w] with w^2 = c for the smallest non-residue c; element
    # u + v*w is stored at index u + p*v.
    q = p * p
    c = _smallest_nonresidue(p)
    idx = np.arange(q, dtype=np.int64)
    u, v = idx % p, idx // p

    def mul(u1, v1, u2, v2):
        return (u1 * u2 + c * v1 * v2) % p, (u1 * v2 + v1 * u2) % p

    su, sv = mul(u, v, u, v)
    cu, cv = mul(su, sv, u, v)
    cube = cu + p * cv
    # chi(z) = chi_p(Norm z) since z^((q-1)/2) = Norm(z)^((p-1)/2).
    chi_p = np.zeros(p, dtype=np.float64)
    for x in range(1, p):
        chi_p[x] = kronecker(x, p)
    chi2d = chi_p[(u * u - c * v * v) % p].reshape(p, p)
    chi_hat = np.fft.fft2(chi2d)
    disc_u, disc_v = (27 * su) % p, (27 * sv) % p

    bound = math.isqrt(4 * q)
    tally = np.zeros(2 * bound + 1, dtype=np.int64)
    for a in range(q):
        au, av = a % p, a // p
        axu, axv = mul(au, av, u, v)
        vals = (cu + axu) % p + p * ((cv + axv) % p)
        counts2d = np.bincount(vals, minlength=q).reshape(p, p).astype(np.float64)
        # trace(a, b) = -sum_y counts[y] chi(y + b): a 2d circular correlation,
        # done per a by FFT; results are exact integers up to rounding noise.
        corr = np.fft.ifft2(np.conj(np.fft.fft2(counts2d)) * chi_hat).real
        traces = -np.rint(corr).astype(np.int64).reshape(-1)
        dau, dav = mul(4 % p, 0, cu[a : a + 1], cv[a : a + 1])
        good = ((dau[0] + disc_u) % p + p * ((dav[0] + disc_v) % p)) != 0
        np.add.at(tally, traces[good] + bound, 1)
    return {t - bound: int(cnt) for t, cnt in enumerate(tally) if cnt}


@lru_cache(maxsize=None)
def trace_mass_table(q: int) -> TraceMassTable:
    """Enumerate all curves over F_q (q = p or p^2, p >= 5) grouped by trace."""
    if q > _Q_CAP:
        raise ValueError(f"field size {q} exceeds the enumeration cap {_Q_CAP}")
    pairs = tuple(factorize(q))
    if len(pairs) != 1 or pairs[0][1] > 2:
        raise ValueError("q must be p or p^2 for a prime p")
    p, r = pairs[0]
    if p < 5:
        raise ValueError("characteristic must be at least 5")
    tally = _prime_field_tally(p) if r == 1 else _quadratic_field_tally(p)
    masses = tuple(
        (t, Fraction(cnt, q - 1)) for t, cnt in sorted(tally.items())
    )
    return TraceMassTable(q=q, p=p, r=r, masses=masses)


def S_direct(k: int, m: int, M: int, q: int) -> Fraction:
    """Trace moment over F_q from the enumeration table.

    Pure tallying, so any modulus is fine here; only the moment-side bridge
    needs gcd(p, M) = 1.
    """
    if M < 1:
        raise ValueError("M must be >= 1")
    return trace_mass_table(q).moment(k, m, M)


def _check_bridge_args(p: int, M: int, r: int) -> None:
    if p < 5 or not is_prime(p):
        raise ValueError("p must be a prime >= 5")
    if math.gcd(p, M) != 1:
        raise ValueError("p must not divide M")
    if r < 1:
        raise ValueError("r must be >= 1")


def S_via_moments(k: int, m: int, M: int, p: int, r: int) -> Fraction:
    """Trace moment computed from class-number moments alone."""
    _check_bridge_args(p, M, r)
    total = moment_H(k, m, M, p**r)
    if r >= 2:
        pbar = pow(p, -1, M) if M > 1 else 0
        total -= p ** (k + 1) * moment_H(k, (m * pbar) % M, M, p ** (r - 2))
    return total / 2


def tilde_moment(k: int, m: int, M: int, p: int, r: int) -> Fraction:
    """Class-number moment with the traces divisible by p left out."""
    _check_bridge_args(p, M, r)
    n = p**r
    total = Fraction(0)
    for t in range(-math.isqrt(4 * n), math.isqrt(4 * n) + 1):
        if (t - m) % M == 0 and t % p != 0:
            total += t**k * hurwitz_H(4 * n - t * t)
    return total


def rho(k: int, m: int, M: int, n: int) -> int:
    """Signed count of square roots t of n with t = m (mod M)."""
    if n < 0:
        return 0
    if n == 0:
        return 1 if m % M == 0 and k == 0 else 0
    s = math.isqrt(n)
    if s * s != n:
        return 0
    out = 0
    if (s - m) % M == 0:
        out += 1
    if (-s - m) % M == 0:
        out += (-1) ** k
    return out


def error_E(k: int, m: int, M: int, p: int, r: int) -> Fraction:
    """Correction restoring the p | t traces dropped by tilde_moment.

    The indicator on the first two terms reads "trace zero occurs in the
    class", i.e. M | m; the exact identity tests pin this reading.
    """
    _check_bridge_args(p, M, r)
    out = Fraction(0)
    if m % M == 0 and k == 0:
        if r % 2:
            out += hurwitz_H(4 * p)
        else:
            out += Fraction(1 - kronecker(-1, p), 2)
    r1 = rho(k, m, M, p**r)
    if r1:
        out += Fraction(1 - kronecker(-3, p), 3) * p ** (r * k // 2) * r1
    r2 = rho(k, m, M, 4 * p**r)
    if r2:
        out += Fraction(2**k * (p - 1), 12) * p ** (r * k // 2) * r2
    return out


@dataclass(frozen=True)
class ExpansionTerms:
    """Twice the second trace moment, regrouped exactly by powers of p.

    leading multiplies p^(2r); cusp holds the two cusp-form contributions
    evaluated at n = p^r; lower lists the remaining (power, coefficient)
    pairs; remainder is the trailing constant.  total() rebuilds 2*S.
    """

    m: int
    M: int
    p: int
    r: int
    leading: float
    cusp: float
    lower: tuple[tuple[int, float], ...]
    remainder: float
    delta_star: int

    def total(self) -> float:
        out = self.leading * float(self.p) ** (2 * self.r)
        out += self.cusp + self.remainder
        for power, coeff in self.lower:
            out += coeff * float(self.p) ** power
        return out


def expansion_p(m: int, M: int, p: int, cfg: Config = DEFAULT_CONFIG) -> ExpansionTerms:
    """Size-graded pieces of 2*S_2(p), exact including the remainder."""
    _check_bridge_args(p, M, 1)
    lead = leading_sum(m, M, p, 1, cfg)
    ds = delta_star(p % M if M > 1 else 0, m, M)
    cusp = cusp_residual_0(m, M, p, cfg) * p + float(cusp_coefficient(2, m, M, p))
    return ExpansionTerms(
        m=m,
        M=M,
        p=p,
        r=1,
        leading=lead,
        cusp=cusp,
        lower=((1, lead - ds),),
        remainder=float(-ds),
        delta_star=ds,
    )


def expansion_p2(m: int, M: int, p: int, cfg: Config = DEFAULT_CONFIG) -> ExpansionTerms:
    """Size-graded pieces of 2*S_2(p^2), exact including the remainder."""
    _check_bridge_args(p, M, 2)
    x = p % M if M > 1 else 0
    lead = leading_sum(m, M, p, 2, cfg)
    ds2 = delta_star_sq(x, m, M)
    pbar = pow(p, -1, M) if M > 1 else 0
    h2 = float(moment_H(2, (m * pbar) % M, M, 1))
    # the (1, p^2) divisor pair contributes through t = p^2 + 1
    dsq = int((p * p + 1 - m) % M == 0) + int((p * p + 1 + m) % M == 0)
    n = p * p
    cusp = cusp_residual_0(m, M, n, cfg) * n + float(cusp_coefficient(2, m, M, n))
    return ExpansionTerms(
        m=m,
        M=M,
        p=p,
        r=2,
        leading=lead,
        cusp=cusp,
        lower=((3, lead - ds2 - h2), (2, lead - dsq)),
        remainder=float(-dsq),
        delta_star=ds2,
    )
