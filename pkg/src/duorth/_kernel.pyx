# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernel lane: exact rational scalars, dense polynomial and
moment-vector primitives.

Same surface and conventions as duorth._kernel_py (the pure lane): Rat is
an exact arbitrary-precision rational; polynomials are trailing-zero-free
ascending tuples of Rat; moment vectors are plain tuples of Rat.
"""
import sys
from math import gcd as _gcd

__all__ = [
    "Rat", "pnorm", "padd", "psub", "pneg", "pscale", "pmul", "pderiv",
    "mact", "mleft", "mderive",
]

cdef object _HASH_MODULUS = sys.hash_info.modulus
cdef object _HASH_INF = sys.hash_info.inf


cdef class Rat:
    """Normalized exact rational: denominator > 0, gcd(|num|, den) = 1."""
    cdef object _n
    cdef object _d

    def __init__(self, num=0, den=None):
        cdef object n, d
        if den is None:
            if type(num) is Rat:
                self._n = (<Rat>num)._n
                self._d = (<Rat>num)._d
                return
            if isinstance(num, int):
                self._n = num
                self._d = 1
                return
            if isinstance(num, str):
                s = num.strip()
                if "/" in s:
                    a, _, b = s.partition("/")
                    n = int(a)
                    d = int(b)
                else:
                    n = int(s)
                    d = 1
            elif hasattr(num, "numerator") and hasattr(num, "denominator"):
                n = num.numerator
                d = num.denominator
            else:
                raise TypeError(f"cannot make a rational from {num!r}")
        else:
            a = _nd(num)
            b = _nd(den)
            if a is None or b is None:
                raise TypeError("numerator and denominator must be rational")
            n = a[0] * b[1]
            d = a[1] * b[0]
        if d == 0:
            raise ZeroDivisionError("rational with zero denominator")
        if d < 0:
            n = -n
            d = -d
        g = _gcd(n, d)
        if g > 1:
            n //= g
            d //= g
        self._n = n
        self._d = d

    @property
    def numerator(self):
        return self._n

    @property
    def denominator(self):
        return self._d

    def __str__(self):
        if self._d == 1:
            return str(self._n)
        return f"{self._n}/{self._d}"

    def __repr__(self):
        return f"Rat({self.__str__()})"

    def __bool__(self):
        return self._n != 0

    def __hash__(self):
        # same scheme as stdlib numeric hashing so Rat(k) hashes like int k
        try:
            dinv = pow(self._d, -1, _HASH_MODULUS)
        except ValueError:
            h = _HASH_INF
        else:
            h = hash(hash(abs(self._n)) * dinv % _HASH_MODULUS)
        result = h if self._n >= 0 else -h
        return -2 if result == -1 else result

    def __add__(x, y):
        a = _nd(x)
        b = _nd(y)
        if a is None or b is None:
            return NotImplemented
        return _norm(a[0] * b[1] + b[0] * a[1], a[1] * b[1])

    def __radd__(x, y):
        return x.__add__(y)

    def __sub__(x, y):
        a = _nd(x)
        b = _nd(y)
        if a is None or b is None:
            return NotImplemented
        return _norm(a[0] * b[1] - b[0] * a[1], a[1] * b[1])

    def __rsub__(x, y):
        a = _nd(y)
        b = _nd(x)
        if a is None or b is None:
            return NotImplemented
        return _norm(a[0] * b[1] - b[0] * a[1], a[1] * b[1])

    def __mul__(x, y):
        a = _nd(x)
        b = _nd(y)
        if a is None or b is None:
            return NotImplemented
        return _norm(a[0] * b[0], a[1] * b[1])

    def __rmul__(x, y):
        return x.__mul__(y)

    def __truediv__(x, y):
        a = _nd(x)
        b = _nd(y)
        if a is None or b is None:
            return NotImplemented
        if b[0] == 0:
            raise ZeroDivisionError("division by zero rational")
        return _norm(a[0] * b[1], a[1] * b[0])

    def __rtruediv__(x, y):
        a = _nd(y)
        b = _nd(x)
        if a is None or b is None:
            return NotImplemented
        if b[0] == 0:
            raise ZeroDivisionError("division by zero rational")
        return _norm(a[0] * b[1], a[1] * b[0])

    def __pow__(x, y, z):
        if z is not None or not isinstance(y, int):
            return NotImplemented
        a = _nd(x)
        if a is None:
            return NotImplemented
        if y >= 0:
            return _norm(a[0] ** y, a[1] ** y)
        if a[0] == 0:
            raise ZeroDivisionError("zero rational to a negative power")
        return _norm(a[1] ** (-y), a[0] ** (-y))

    def __neg__(self):
        return _mk(-self._n, self._d)

    def __pos__(self):
        return self

    def __abs__(self):
        return _mk(abs(self._n), self._d)

    def __richcmp__(x, y, int op):
        a = _nd(x)
        b = _nd(y)
        if a is None or b is None:
            if op == 2:
                return False
            if op == 3:
                return True
            return NotImplemented
        lhs = a[0] * b[1]
        rhs = b[0] * a[1]
        if op == 0:
            return lhs < rhs
        if op == 1:
            return lhs <= rhs
        if op == 2:
            return lhs == rhs
        if op == 3:
            return lhs != rhs
        if op == 4:
            return lhs > rhs
        return lhs >= rhs

    def __reduce__(self):
        return (Rat, (self._n, self._d))


cdef inline object _nd(obj):
    """(numerator, denominator) for Rat/int operands, else None."""
    if type(obj) is Rat:
        return (<Rat>obj)._n, (<Rat>obj)._d
    if isinstance(obj, int):
        return obj, 1
    if isinstance(obj, Rat):
        return (<Rat>obj)._n, (<Rat>obj)._d
    return None


cdef inline Rat _mk(object n, object d):
    cdef Rat r = Rat.__new__(Rat)
    r._n = n
    r._d = d
    return r


cdef inline Rat _norm(object n, object d):
    if d < 0:
        n = -n
        d = -d
    g = _gcd(n, d)
    if g > 1:
        n //= g
        d //= g
    return _mk(n, d)


cdef inline Rat _radd(Rat a, Rat b):
    return _norm(a._n * b._d + b._n * a._d, a._d * b._d)


cdef inline Rat _rsub(Rat a, Rat b):
    return _norm(a._n * b._d - b._n * a._d, a._d * b._d)


cdef inline Rat _rmul(Rat a, Rat b):
    return _norm(a._n * b._n, a._d * b._d)


cdef Rat _R0 = _mk(0, 1)


def pnorm(coeffs):
    """Strip trailing zeros and return a tuple of Rat."""
    cdef list out = [c if type(c) is Rat else Rat(c) for c in coeffs]
    cdef Py_ssize_t n = len(out)
    while n > 0 and (<Rat>out[n - 1])._n == 0:
        out.pop()
        n -= 1
    return tuple(out)


def padd(tuple a, tuple b):
    cdef Py_ssize_t i, la = len(a), lb = len(b)
    if la < lb:
        a, b = b, a
        la, lb = lb, la
    cdef list out = list(a)
    for i in range(lb):
        out[i] = _radd(<Rat>out[i], <Rat>b[i])
    cdef Py_ssize_t n = len(out)
    while n > 0 and (<Rat>out[n - 1])._n == 0:
        out.pop()
        n -= 1
    return tuple(out)


def psub(tuple a, tuple b):
    cdef Py_ssize_t i, la = len(a), lb = len(b)
    cdef list out = list(a) + [_R0] * (lb - la if lb > la else 0)
    for i in range(lb):
        out[i] = _rsub(<Rat>out[i], <Rat>b[i])
    cdef Py_ssize_t n = len(out)
    while n > 0 and (<Rat>out[n - 1])._n == 0:
        out.pop()
        n -= 1
    return tuple(out)


def pneg(tuple a):
    cdef Py_ssize_t i
    return tuple(_mk(-(<Rat>a[i])._n, (<Rat>a[i])._d) for i in range(len(a)))


def pscale(tuple a, s):
    cdef Rat rs = s if type(s) is Rat else Rat(s)
    if rs._n == 0:
        return ()
    cdef Py_ssize_t i
    return tuple(_rmul(<Rat>a[i], rs) for i in range(len(a)))


def pmul(tuple a, tuple b):
    cdef Py_ssize_t i, j, la = len(a), lb = len(b)
    if la == 0 or lb == 0:
        return ()
    cdef list out = [_R0] * (la + lb - 1)
    cdef Rat ca
    for i in range(la):
        ca = <Rat>a[i]
        if ca._n == 0:
            continue
        for j in range(lb):
            out[i + j] = _radd(<Rat>out[i + j], _rmul(ca, <Rat>b[j]))
    return tuple(out)


def pderiv(tuple a, int order=1):
    cdef Py_ssize_t i
    cdef int k
    for k in range(order):
        if len(a) <= 1:
            return ()
        a = tuple(_rmul(_mk(i, 1), <Rat>a[i]) for i in range(1, len(a)))
    return a


def mact(tuple p, tuple m):
    cdef Py_ssize_t i
    cdef Rat acc = _R0, c
    for i in range(len(p)):
        c = <Rat>p[i]
        if c._n != 0:
            acc = _radd(acc, _rmul(c, <Rat>m[i]))
    return acc


def mleft(tuple f, tuple m):
    cdef Py_ssize_t n, i, d = len(f) - 1, lm = len(m)
    cdef list out = []
    cdef Rat acc, c
    for n in range(lm - d):
        acc = _R0
        for i in range(d + 1):
            c = <Rat>f[i]
            if c._n != 0:
                acc = _radd(acc, _rmul(c, <Rat>m[n + i]))
        out.append(acc)
    return tuple(out)


def mderive(tuple m):
    cdef Py_ssize_t i
    cdef list out = [_R0]
    for i in range(len(m) - 1):
        out.append(_rmul(_mk(-(i + 1), 1), <Rat>m[i]))
    return tuple(out)
