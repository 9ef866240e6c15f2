"""Dense polynomial helpers over Z and Z/p.

Coefficient lists run lowest degree first and are trimmed; [] is the zero
polynomial.  These back the cyclotomic quotient fields and the finite
field tower; they are deliberately minimal (small p, degree <= ~20).
"""

from __future__ import annotations

from functools import lru_cache


def trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def add_mod(a: list, b: list, p: int) -> list:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return trim(out)


def sub_mod(a: list, b: list, p: int) -> list:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return trim(out)


def mul_mod(a: list, b: list, p: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return trim(out)


def rem_mod(a: list, m: list, p: int) -> list:
    """Remainder of a by a monic m, coefficients mod p."""
    a = [x % p for x in a]
    dm = len(m) - 1
    for k in range(len(a) - 1, dm - 1, -1):
        c = a[k]
        if c:
            a[k] = 0
            for j in range(dm):
                a[k - dm + j] = (a[k - dm + j] - c * m[j]) % p
    del a[dm:]
    return trim(a)


def pow_mod(base: list, e: int, m: list, p: int) -> list:
    result = [1]
    b = rem_mod(base, m, p)
    while e:
        if e & 1:
            result = rem_mod(mul_mod(result, b, p), m, p)
        b = rem_mod(mul_mod(b, b, p), m, p)
        e >>= 1
    return result


def monic_gcd(a: list, b: list, p: int) -> list:
    a = trim([x % p for x in a])
    b = trim([x % p for x in b])
    while b:
        inv = pow(b[-1], -1, p)
        b = [(x * inv) % p for x in b]
        a, b = b, rem_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [(x * inv) % p for x in a]
    return a


def is_irreducible(f: list, p: int) -> bool:
    """Irreducibility over F_p via Frobenius fixed-point criteria."""
    n = len(f) - 1
    if n < 1 or f[-1] % p != 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if pow_mod(x, p ** n, f, p) != rem_mod(x, f, p):
        return False
    for r in sorted(factorize(n)):
        xr = pow_mod(x, p ** (n // r), f, p)
        if monic_gcd(sub_mod(xr, x, p), f, p) != [1]:
            return False
    return True


def first_irreducible(p: int, n: int) -> list:
    """Smallest monic irreducible of degree n over F_p.

    Candidates are ordered by the integer encoding sum(c_j * p^j) of the
    non-leading coefficient vector, constant coefficient varying fastest.
    """
    for k in range(p ** n):
        coeffs, t = [], k
        for _ in range(n):
            coeffs.append(t % p)
            t //= p
        f = coeffs + [1]
        if is_irreducible(f, p):
            return f
    raise ValueError(f"no irreducible polynomial of degree {n} over F_{p}")


def int_divexact(a: list, b: list) -> list:
    """Exact division of integer polynomials, b monic; asserts zero remainder."""
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = a[k + len(b) - 1]
        out[k] = c
        if c:
            for j in range(len(b)):
                a[k + j] -= c * b[j]
    if any(a):
        raise ValueError("division is not exact")
    return out


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple:
    """Coefficients of the n-th cyclotomic polynomial (integers, monic)."""
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n):
        if d < n:
            num = int_divexact(num, list(cyclotomic(d)))
    return tuple(num)


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple:
    """Sorted prime factors (without multiplicity)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def divisors(n: int) -> list:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(q: int):
    """Return (p, k) with q = p^k, or None if q is not a prime power."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if is_prime(p) and q % p == 0:
            k, m = 0, q
            while m % p == 0:
                m //= p
                k += 1
            return (p, k) if m == 1 else None
    return None
