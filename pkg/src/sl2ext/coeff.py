"""Exact coefficient fields for the workbench.

Three modes: the rationals, cyclotomic quotients Q[x]/Phi_n(x), and prime
fields F_l (with optional extension degree).  Scalars are immutable with
unique canonical representatives, so == is exact equality and every
nonzero scalar has an exact inverse.  Character values (roots of unity)
are produced by ``root_of_unity``; a mode supports order n exactly when
it contains a primitive n-th root.
"""

from __future__ import annotations

from fractions import Fraction

from . import polyutil


class Scalar:
    """A field element: a mode tag (the field) plus a canonical rep."""

    __slots__ = ("field", "rep")

    def __init__(self, field, rep):
        self.field = field
        self.rep = rep

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if self.field != other.field:
                raise ValueError(f"coefficient mode mismatch: {self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field, self.field._add(self.rep, o.rep))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field, self.field._sub(self.rep, o.rep))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field, self.field._sub(o.rep, self.rep))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field, self.field._mul(self.rep, o.rep))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero scalar")
        return Scalar(self.field, self.field._mul(self.rep, self.field._inv(o.rep)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return Scalar(self.field, self.field._sub(self.field.zero.rep, self.rep))

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self
        if e < 0:
            base = self.field.one / self
            e = -e
        out = self.field.one
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self):
        return self.field.one / self

    def __bool__(self):
        return self.rep != self.field.zero.rep

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.rep == other.rep
        if isinstance(other, (int, Fraction)):
            return self.rep == self.field.scalar(other).rep
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.rep))

    def __repr__(self):
        return self.field.rep_str(self.rep)

    def serialize(self) -> str:
        return self.field.rep_str(self.rep)


class CoeffField:
    """Base for the three coefficient modes."""

    def scalar(self, x) -> Scalar:
        return Scalar(self, self._from_rational(Fraction(x)))

    @property
    def zero(self) -> Scalar:
        return self.scalar(0)

    @property
    def one(self) -> Scalar:
        return self.scalar(1)

    def root_of_unity(self, n: int, e: int) -> Scalar:
        """zeta_n^e; raises ValueError when the mode lacks the order."""
        e %= n
        if e == 0:
            return self.one
        import math

        g = math.gcd(e, n)
        return self._primitive_root(n // g, e // g)

    def supports_order(self, n: int) -> bool:
        """Whether a primitive n-th root of unity exists in this mode."""
        try:
            self._primitive_root(n, 1)
            return True
        except ValueError:
            return False

    def characteristic(self) -> int:
        raise NotImplementedError

    # subclasses: _add/_sub/_mul/_inv/_from_rational/_primitive_root/rep_str


class RationalField(CoeffField):
    def _add(self, a, b):
        return a + b

    def _sub(self, a, b):
        return a - b

    def _mul(self, a, b):
        return a * b

    def _inv(self, a):
        return 1 / a

    def _from_rational(self, x: Fraction):
        return x

    def _primitive_root(self, order: int, e: int) -> Scalar:
        if order == 1:
            return self.one
        if order == 2:
            return self.scalar(-1)
        raise ValueError(f"rational mode has no root of unity of order {order}")

    def characteristic(self) -> int:
        return 0

    def rep_str(self, rep) -> str:
        return f"{rep.numerator}/{rep.denominator}"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rat")

    def __repr__(self):
        return "Q"


class CyclotomicField(CoeffField):
    """Q[x]/Phi_n(x), reduced mod the cyclotomic polynomial.

    Reduction modulo Phi_n (rather than x^n - 1) makes representatives
    unique, so equality of scalars is tuple equality.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("cyclotomic order must be >= 1")
        self.n = n
        phi = polyutil.cyclotomic(n)
        self.degree = len(phi) - 1
        self._phi = phi
        # x^k mod Phi_n for k in [degree, 2*degree-2], used to fold products
        rows = []
        cur = [Fraction(-c) for c in phi[:-1]]
        rows.append(tuple(cur))
        for _ in range(self.degree - 2):
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            if top:
                for j in range(self.degree):
                    cur[j] += top * rows[0][j]
            rows.append(tuple(cur))
        self._fold = rows
        # x^k mod Phi_n, extended on demand by shift-and-fold
        self._zeta_list = [self._one_rep()]

    def _one_rep(self):
        return (Fraction(1),) + (Fraction(0),) * (self.degree - 1)

    def _from_rational(self, x: Fraction):
        return (x,) + (Fraction(0),) * (self.degree - 1)

    def _add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def _mul(self, a, b):
        d = self.degree
        # rational factors act by plain scaling
        if not any(a[1:]):
            c = a[0]
            return tuple(c * y for y in b) if c else a
        if not any(b[1:]):
            c = b[0]
            return tuple(c * x for x in a) if c else b
        out = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        for k in range(2 * d - 2, d - 1, -1):
            c = out[k]
            if c:
                row = self._fold[k - d]
                for j in range(d):
                    out[j] += c * row[j]
        return tuple(out[:d])

    def _inv(self, a):
        # extended Euclid in Q[x] against Phi_n
        r0 = [Fraction(c) for c in self._phi]
        r1 = polyutil.trim(list(a))
        t0, t1 = [], [Fraction(1)]
        while r1:
            # divide r0 by r1
            q = [Fraction(0)] * max(len(r0) - len(r1) + 1, 0)
            rem = list(r0)
            for k in range(len(q) - 1, -1, -1):
                if len(rem) - 1 < k + len(r1) - 1:
                    continue
                c = rem[k + len(r1) - 1] / r1[-1]
                q[k] = c
                if c:
                    for j in range(len(r1)):
                        rem[k + j] -= c * r1[j]
            rem = polyutil.trim(rem)
            # t2 = t0 - q*t1
            qt = [Fraction(0)] * (len(q) + len(t1) - 1) if q and t1 else []
            for i, x in enumerate(q):
                if x:
                    for j, y in enumerate(t1):
                        qt[i + j] += x * y
            n = max(len(t0), len(qt))
            t2 = [(t0[i] if i < len(t0) else 0) - (qt[i] if i < len(qt) else 0) for i in range(n)]
            r0, r1 = r1, rem
            t0, t1 = t1, polyutil.trim(t2)
        if len(r0) != 1:
            raise ZeroDivisionError("scalar is not invertible")
        lead = r0[0]
        out = [c / lead for c in t0]
        out += [Fraction(0)] * (self.degree - len(out))
        return tuple(out[: self.degree])

    def _zeta(self, k: int):
        """x^k mod Phi_n, from an incrementally extended power table."""
        k %= self.n
        lst = self._zeta_list
        while len(lst) <= k:
            prev = lst[-1]
            top = prev[-1]
            cur = [Fraction(0)] + list(prev[:-1])
            if top:
                row = self._fold[0]
                for j in range(self.degree):
                    cur[j] += top * row[j]
            lst.append(tuple(cur))
        return lst[k]

    def _primitive_root(self, order: int, e: int) -> Scalar:
        if self.n % order != 0:
            raise ValueError(f"cyclotomic order {self.n} has no root of order {order}")
        return Scalar(self, self._zeta((self.n // order) * e))

    def characteristic(self) -> int:
        return 0

    def rep_str(self, rep) -> str:
        return "[" + ",".join(f"{c.numerator}/{c.denominator}" for c in rep) + "]"

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.n == self.n

    def __hash__(self):
        return hash(("cyc", self.n))

    def __repr__(self):
        return f"Q(zeta_{self.n})"


class PrimeField(CoeffField):
    """F_l, or F_{l^m} for extension degree m > 1.

    The extension is F_l[x] modulo the first irreducible polynomial of
    degree m; reps are ints (m = 1) or coefficient tuples.
    """

    def __init__(self, ell: int, m: int = 1):
        if not polyutil.is_prime(ell):
            raise ValueError(f"{ell} is not prime")
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        self.ell = ell
        self.m = m
        self.size = ell ** m
        self._modulus = None if m == 1 else polyutil.first_irreducible(ell, m)
        self._gen = None  # generator of the multiplicative group, found lazily
        self._root_cache = {}

    def _from_rational(self, x: Fraction):
        den = x.denominator % self.ell
        if den == 0:
            raise ZeroDivisionError(f"denominator divisible by {self.ell}")
        v = x.numerator * pow(den, -1, self.ell) % self.ell
        if self.m == 1:
            return v
        return (v,) + (0,) * (self.m - 1)

    def _add(self, a, b):
        if self.m == 1:
            return (a + b) % self.ell
        return tuple((x + y) % self.ell for x, y in zip(a, b))

    def _sub(self, a, b):
        if self.m == 1:
            return (a - b) % self.ell
        return tuple((x - y) % self.ell for x, y in zip(a, b))

    def _mul(self, a, b):
        if self.m == 1:
            return a * b % self.ell
        prod = polyutil.mul_mod(list(a), list(b), self.ell)
        prod = polyutil.rem_mod(prod, self._modulus, self.ell)
        return tuple(prod + [0] * (self.m - len(prod)))

    def _inv(self, a):
        if self.m == 1:
            if a == 0:
                raise ZeroDivisionError("scalar is not invertible")
            return pow(a, -1, self.ell)
        if not any(a):
            raise ZeroDivisionError("scalar is not invertible")
        # x^(size-2) in the multiplicative group
        out, base, e = self._from_rational(Fraction(1)), a, self.size - 2
        while e:
            if e & 1:
                out = self._mul(out, base)
            base = self._mul(base, base)
            e >>= 1
        return out

    def _elements(self):
        if self.m == 1:
            for v in range(self.ell):
                yield v
        else:
            for k in range(self.size):
                coeffs, t = [], k
                for _ in range(self.m):
                    coeffs.append(t % self.ell)
                    t //= self.ell
                yield tuple(coeffs)

    def _generator(self):
        if self._gen is None:
            n = self.size - 1
            primes = polyutil.factorize(n)
            one = self._from_rational(Fraction(1))
            for rep in self._elements():
                if rep == self._from_rational(Fraction(0)) or rep == one:
                    continue
                ok = True
                for r in primes:
                    out, base, e = one, rep, n // r
                    while e:
                        if e & 1:
                            out = self._mul(out, base)
                        base = self._mul(base, base)
                        e >>= 1
                    if out == one:
                        ok = False
                        break
                if ok:
                    self._gen = rep
                    break
            else:
                raise RuntimeError("no multiplicative generator found")
        return self._gen

    def _primitive_root(self, order: int, e: int) -> Scalar:
        if (self.size - 1) % order != 0:
            raise ValueError(
                f"F_{self.ell}^{self.m} has no root of unity of order {order}"
            )
        key = (order, e % order)
        rep = self._root_cache.get(key)
        if rep is None:
            g = self._generator()
            out, base, k = self._from_rational(Fraction(1)), g, (self.size - 1) // order * (e % order)
            while k:
                if k & 1:
                    out = self._mul(out, base)
                base = self._mul(base, base)
                k >>= 1
            rep = out
            self._root_cache[key] = rep
        return Scalar(self, rep)

    def characteristic(self) -> int:
        return self.ell

    def rep_str(self, rep) -> str:
        if self.m == 1:
            return str(rep)
        return "[" + ",".join(str(c) for c in rep) + "]"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and (other.ell, other.m) == (self.ell, self.m)

    def __hash__(self):
        return hash(("fp", self.ell, self.m))

    def __repr__(self):
        return f"F_{self.ell}" if self.m == 1 else f"F_{self.ell}^{self.m}"


def choose_prime_for_order(n: int, floor: int = 5) -> int:
    """Smallest prime l >= floor with l = 1 (mod n), so that order-n roots
    of unity live in the prime field itself."""
    ell = max(floor, 2)
    if n == 1:
        while not polyutil.is_prime(ell):
            ell += 1
        return ell
    ell = ((ell - 2) // n + 1) * n + 1
    while not polyutil.is_prime(ell):
        ell += n
    return ell


def field_from_spec(spec: str, order: int = 1) -> CoeffField:
    """Build a field from a CLI-style mode string.

    "rat"; "cyclo" (order taken from the caller); "cyclo:N"; "fp" (prime
    searched with l = 1 mod order); "fp:L" or "fp:L:M".
    """
    parts = spec.split(":")
    kind = parts[0]
    if kind == "rat":
        return RationalField()
    if kind == "cyclo":
        n = int(parts[1]) if len(parts) > 1 else order
        return CyclotomicField(max(n, 1))
    if kind == "fp":
        if len(parts) > 1:
            ell = int(parts[1])
            m = int(parts[2]) if len(parts) > 2 else 1
            return PrimeField(ell, m)
        return PrimeField(choose_prime_for_order(max(order, 1)))
    raise ValueError(f"unknown coefficient mode {spec!r}")
