"""Exact arithmetic in finite fields F_{p^m}.

A single ambient field context hosts every scalar in the library: character
values, matrix entries and specialisation parameters.  Elements are stored as
integer indices into dense operation tables (built once per context), so all
arithmetic is table lookups.  Indices encode coefficient vectors base p,
least-significant coefficient first.
"""

from __future__ import annotations

from .errors import CompositeCharacteristic, CtxMismatch, ReducibleModulus, ZeroInverse

_TABLE_LIMIT = 4096  # build dense q x q tables up to this field size


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n):
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
    return out


# -- dense polynomial helpers over F_p (coefficient lists, low degree first) --


def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_mod(a, f, p):
    # f monic
    a = list(a)
    df = len(f) - 1
    while len(a) - 1 >= df and a:
        c = a[-1]
        if c:
            shift = len(a) - 1 - df
            for i, fc in enumerate(f):
                a[shift + i] = (a[shift + i] - c * fc) % p
        a.pop()
    return _trim(a)


def _poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        # make b monic before reduction
        inv = pow(b[-1], p - 2, p)
        b = [(c * inv) % p for c in b]
        a, b = b, _poly_mod(a, b, p)
    return a


def _poly_powmod(base, e, f, p):
    result = [1]
    base = _poly_mod(base, f, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), f, p)
        base = _poly_mod(_poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def is_irreducible(f, p):
    """Monic f over F_p, degree m >= 1: Frobenius-iterate criterion."""
    m = len(f) - 1
    if m == 1:
        return True
    x = [0, 1]
    # x^(p^m) == x mod f
    fr = x
    for _ in range(m):
        fr = _poly_powmod(fr, p, f, p)
    lhs = _trim([(fr[i] if i < len(fr) else 0) - (x[i] if i < len(x) else 0) for i in range(max(len(fr), len(x)))])
    lhs = [c % p for c in lhs]
    if _trim(list(lhs)):
        return False
    for r in prime_factors(m):
        fr = x
        for _ in range(m // r):
            fr = _poly_powmod(fr, p, f, p)
        diff = [0] * max(len(fr), 2)
        for i, c in enumerate(fr):
            diff[i] = c
        diff[1] = (diff[1] - 1) % p
        diff = _trim(diff)
        g = _poly_gcd(list(f), diff, p)
        if len(g) - 1 > 0:
            return False
    return True


def _search_modulus(p, m):
    """Lexicographically smallest monic irreducible of degree m over F_p.

    Order is on the constant-first coefficient tuple (c0, ..., c_{m-1}).
    """
    if m == 1:
        return [0, 1]

    def tuples():
        idx = [0] * m
        while True:
            yield tuple(idx)
            i = m - 1
            while i >= 0 and idx[i] == p - 1:
                idx[i] = 0
                i -= 1
            if i < 0:
                return
            idx[i] += 1

    for tail in tuples():
        f = list(tail) + [1]
        if is_irreducible(f, p):
            return f
    raise ReducibleModulus(f"no irreducible polynomial of degree {m} over F_{p}")  # pragma: no cover


class FieldCtx:
    """Context for F_{p^m} with dense lookup tables for all operations."""

    def __init__(self, p, m=1, modulus=None):
        if not is_prime(p):
            raise CompositeCharacteristic(f"{p} is not prime")
        if m < 1:
            raise ReducibleModulus("extension degree must be >= 1")
        if modulus is None:
            modulus = _search_modulus(p, m)
        else:
            modulus = [c % p for c in modulus]
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise ReducibleModulus("modulus must be monic of degree m")
            if not is_irreducible(modulus, p):
                raise ReducibleModulus(f"{modulus} is reducible over F_{p}")
        self.p = p
        self.m = m
        self.modulus = tuple(modulus)
        self.q = p**m
        self.key = (p, m, self.modulus)
        if self.q > _TABLE_LIMIT:
            raise ReducibleModulus(f"field size {self.q} exceeds desk-scale table limit")
        self._build_tables()
        self._generator_idx = None

    # index <-> coefficient vector (c0 least significant)
    def coords_of(self, i):
        out = []
        for _ in range(self.m):
            out.append(i % self.p)
            i //= self.p
        return tuple(out)

    def index_of(self, coords):
        i = 0
        for c in reversed(coords):
            i = i * self.p + (c % self.p)
        return i

    def _build_tables(self):
        p, q, m = self.p, self.q, self.m
        f = list(self.modulus)
        coords = [self.coords_of(i) for i in range(q)]
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            ca = coords[a]
            for b in range(a, q):
                cb = coords[b]
                s = tuple((ca[k] + cb[k]) % p for k in range(m))
                add[a][b] = add[b][a] = self.index_of(s)
                prod = _poly_mod(_poly_mul(list(ca), list(cb), p), f, p)
                prod = prod + [0] * (m - len(prod))
                mul[a][b] = mul[b][a] = self.index_of(prod)
        self.add = add
        self.mul = mul
        self.neg = [self.index_of(tuple((-c) % p for c in coords[a])) for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        self.inv = inv

    # integer-index operation surface (hot paths)
    def add_i(self, a, b):
        return self.add[a][b]

    def sub_i(self, a, b):
        return self.add[a][self.neg[b]]

    def mul_i(self, a, b):
        return self.mul[a][b]

    def neg_i(self, a):
        return self.neg[a]

    def inv_i(self, a):
        if a == 0:
            raise ZeroInverse("inverse of zero")
        return self.inv[a]

    def pow_i(self, a, n):
        if n < 0:
            return self.pow_i(self.inv_i(a), -n)
        r = 1
        while n:
            if n & 1:
                r = self.mul[r][a]
            a = self.mul[a][a]
            n >>= 1
        return r

    def scalar_i(self, n):
        """Image of the integer n in the prime subfield."""
        return n % self.p

    # element-level surface
    def elt(self, i):
        return FieldElt(self, i)

    def zero(self):
        return FieldElt(self, 0)

    def one(self):
        return FieldElt(self, 1)

    def scalar(self, n):
        return FieldElt(self, n % self.p)

    def from_coords(self, coords):
        if len(coords) != self.m:
            raise CtxMismatch("coordinate vector has wrong length")
        return FieldElt(self, self.index_of(tuple(coords)))

    def elements(self):
        return [FieldElt(self, i) for i in range(self.q)]

    def mult_order_i(self, a):
        if a == 0:
            raise ZeroInverse("order of zero undefined")
        n = self.q - 1
        for r in prime_factors(n):
            while n % r == 0 and self.pow_i(a, n // r) == 1:
                n //= r
        return n

    def generator_idx(self):
        if self._generator_idx is None:
            n = self.q - 1
            primes = prime_factors(n)
            best = None
            for i in sorted(range(1, self.q), key=self.coords_of):
                if all(self.pow_i(i, n // r) != 1 for r in primes):
                    best = i
                    break
            self._generator_idx = best
        return self._generator_idx

    def subfield_indices(self, q0):
        """Indices of the subfield with q0 elements (q0 - 1 must divide q - 1)."""
        if (self.q - 1) % (q0 - 1) != 0:
            raise CtxMismatch(f"F_{q0} is not a subfield of F_{self.q}")
        return [i for i in range(self.q) if self.pow_i(i, q0) == i]

    def to_obj(self):
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"FieldCtx(p={self.p}, m={self.m})"


class FieldElt:
    """Immutable element of a FieldCtx, stored as a table index."""

    __slots__ = ("ctx", "i")

    def __init__(self, ctx, i):
        self.ctx = ctx
        self.i = i

    def _check(self, other):
        if not isinstance(other, FieldElt) or other.ctx.key != self.ctx.key:
            raise CtxMismatch("elements from different field contexts")

    def __add__(self, other):
        self._check(other)
        return FieldElt(self.ctx, self.ctx.add[self.i][other.i])

    def __sub__(self, other):
        self._check(other)
        return FieldElt(self.ctx, self.ctx.add[self.i][self.ctx.neg[other.i]])

    def __mul__(self, other):
        self._check(other)
        return FieldElt(self.ctx, self.ctx.mul[self.i][other.i])

    def __neg__(self):
        return FieldElt(self.ctx, self.ctx.neg[self.i])

    def __pow__(self, n):
        return FieldElt(self.ctx, self.ctx.pow_i(self.i, n))

    def inverse(self):
        return FieldElt(self.ctx, self.ctx.inv_i(self.i))

    def is_zero(self):
        return self.i == 0

    @property
    def coords(self):
        return self.ctx.coords_of(self.i)

    def to_obj(self):
        return list(self.coords)

    def __eq__(self, other):
        return isinstance(other, FieldElt) and other.ctx.key == self.ctx.key and other.i == self.i

    def __hash__(self):
        return hash((self.ctx.key, self.i))

    def __repr__(self):
        if self.ctx.m == 1:
            return f"F{self.ctx.q}({self.i})"
        return f"F{self.ctx.q}{list(self.coords)}"


def field_create(p, m=1, modulus=None):
    return FieldCtx(p, m, modulus)


def field_generator(ctx):
    """Deterministic generator of the multiplicative group (coordinate-lex smallest)."""
    return ctx.elt(ctx.generator_idx())


def field_arith(x, y, op):
    """Dispatch surface: op in {add, mul, inv, neg, pow}.

    For pow, y is an integer exponent; for inv/neg, y is ignored.
    """
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "inv":
        return x.inverse()
    if op == "pow":
        return x**y
    raise ValueError(f"unknown op {op!r}")
