"""Univariate polynomial toolkit: division, gcd, resultants, Sturm chains.

Two coefficient regimes are supported:

* field coefficients (Fraction, or :class:`~kleinfib.tower.FieldElement`) --
  polynomials are dense coefficient lists, low degree first;
* polynomial coefficients -- the subresultant pseudo-remainder sequence over
  :class:`~kleinfib.multipoly.MultiPoly`, used by the elimination chains.

Real-root counting (Sturm) works over any ordered coefficient field, i.e.
Fractions or tower elements whose ``sign()`` is defined (such as Q(sqrt3)).
"""

from __future__ import annotations

from fractions import Fraction

from .multipoly import MultiPoly
from .tower import _is0, _inv


# ---------------------------------------------------------------------------
# dense list representation over a field


def normalize(f):
    f = list(f)
    while f and _is0(f[-1]):
        f.pop()
    return f


def degree(f):
    return len(f) - 1


def from_multipoly(p: MultiPoly, name: str):
    """Coefficient list of a MultiPoly that is univariate in `name`."""
    n = p.degree(name)
    out = []
    for k in range(n + 1):
        c = p.coeff_of(name, k)
        if not c.is_constant():
            raise ValueError("polynomial is not univariate in %r" % name)
        out.append(c.constant())
    return normalize(out)


def to_multipoly(f, name: str) -> MultiPoly:
    return MultiPoly((name,), {(k,): c for k, c in enumerate(f)})


def eval_poly(f, x):
    acc = None
    for c in reversed(f):
        acc = c if acc is None else acc * x + c
    if acc is None:
        return Fraction(0) if isinstance(x, (int, Fraction)) else x * 0
    return acc


def poly_divmod(f, g):
    """Division with remainder over a field; returns (q, r)."""
    f, g = normalize(f), normalize(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lc = _inv(g[-1])
    q = [None] * max(0, len(f) - len(g) + 1)
    r = list(f)
    while len(r) >= len(g):
        c = r[-1] * inv_lc
        k = len(r) - len(g)
        q[k] = c
        for i, gc in enumerate(g):
            r[k + i] = r[k + i] - c * gc
        r = normalize(r[:-1])
        if not r:
            break
    zero = (f or g)[0] * 0
    return normalize([zero if c is None else c for c in q]), r


def poly_gcd(f, g):
    """Monic gcd over a field."""
    f, g = normalize(f), normalize(g)
    while g:
        f, g = g, poly_divmod(f, g)[1]
    if f:
        ilc = _inv(f[-1])
        f = [c * ilc for c in f]
    return f


def derivative(f):
    return normalize([c * k for k, c in enumerate(f)][1:])


def squarefree_part(f):
    """f / gcd(f, f'), monic."""
    f = normalize(f)
    g = poly_gcd(f, derivative(f))
    q, r = poly_divmod(f, g)
    assert not r
    ilc = _inv(q[-1])
    return [c * ilc for c in q]


def resultant(f, g):
    """Resultant over a field (Euclidean recursion)."""
    f, g = normalize(f), normalize(g)
    one = Fraction(1)
    for c in f + g:
        one = c * 0 + 1 if not isinstance(c, Fraction) else Fraction(1)
        break
    if not f or not g:
        return one * 0
    if degree(g) == 0:
        return g[0] ** degree(f) if degree(f) > 0 else one
    if degree(f) == 0:
        return f[0] ** degree(g)
    r = poly_divmod(f, g)[1]
    sign = -1 if (degree(f) % 2 and degree(g) % 2) else 1
    if not r:
        return one * 0
    tail = resultant(g, r)
    return tail * g[-1] ** (degree(f) - degree(r)) * sign


def discriminant(f):
    f = normalize(f)
    n = degree(f)
    res = resultant(f, derivative(f))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return res * _inv(f[-1]) * sign


# ---------------------------------------------------------------------------
# Sturm chains / real-root counting


def _sign(c) -> int:
    if isinstance(c, (int, Fraction)):
        return (c > 0) - (c < 0)
    return c.sign()


def sturm_chain(f):
    f = normalize(f)
    chain = [f, derivative(f)]
    while chain[-1]:
        r = poly_divmod(chain[-2], chain[-1])[1]
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _variations(signs):
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_at(f, x):
    if x == "-inf":
        return _sign(f[-1]) * (-1 if degree(f) % 2 else 1) if f else 0
    if x == "+inf":
        return _sign(f[-1]) if f else 0
    return _sign(eval_poly(f, x))


def count_real_roots(f, lo="-inf", hi="+inf"):
    """Number of distinct real roots of f in (lo, hi].

    Endpoints are rationals or the strings "-inf"/"+inf".  Coefficients must
    live in an ordered field (Fraction, or tower elements with sign()).
    """
    f = normalize(f)
    if degree(f) <= 0:
        return 0
    f = squarefree_part(f)
    chain = sturm_chain(f)
    va = _variations([_sign_at(p, lo) for p in chain])
    vb = _variations([_sign_at(p, hi) for p in chain])
    return va - vb


# ---------------------------------------------------------------------------
# subresultant PRS over polynomial coefficients (MultiPoly)


def prem(A: MultiPoly, B: MultiPoly, name: str) -> MultiPoly:
    """Pseudo-remainder: lc(B)^(deg A - deg B + 1) * A = Q*B + prem."""
    dB = B.degree(name)
    if dB < 0:
        raise ZeroDivisionError("pseudo-division by zero")
    lB = B.coeff_of(name, dB)
    R = A
    e = A.degree(name) - dB + 1
    i = A.vars.index(name)
    while not R.is_zero() and R.degree(name) >= dB:
        dR = R.degree(name)
        S = R.coeff_of(name, dR)
        shift = [0] * len(A.vars)
        shift[i] = dR - dB
        xs = MultiPoly(A.vars, {tuple(shift): Fraction(1)})
        R = lB * R - S * xs * B
        e -= 1
    for _ in range(e):
        R = lB * R
    return R


def subresultant_prs(A: MultiPoly, B: MultiPoly, name: str):
    """The subresultant pseudo-remainder sequence [A, B, R1, R2, ...]."""
    seq = [A, B]
    g = MultiPoly.const(A.vars, 1)
    h = MultiPoly.const(A.vars, 1)
    while True:
        dA, dB = seq[-2].degree(name), seq[-1].degree(name)
        if dB < 0:
            break
        delta = dA - dB
        R = prem(seq[-2], seq[-1], name)
        if R.is_zero():
            break
        denom = g * h ** delta
        R = R.exact_div(denom)
        seq.append(R)
        g = seq[-2].coeff_of(name, seq[-2].degree(name))
        if delta > 0:
            h = (g ** delta).exact_div(h ** (delta - 1)) if delta > 1 else g
        if seq[-1].degree(name) <= 0:
            break
    return seq


def resultant_poly(A: MultiPoly, B: MultiPoly, name: str) -> MultiPoly:
    """Resultant with respect to `name`, by the subresultant PRS.

    Returns a MultiPoly free of `name` (possibly zero).
    """
    dA, dB = A.degree(name), B.degree(name)
    if dA < 0 or dB < 0:
        return MultiPoly(A.vars)
    if dA < dB:
        r = resultant_poly(B, A, name)
        return -r if (dA % 2 and dB % 2) else r
    if dB == 0:
        return B ** dA if dA > 0 else MultiPoly.const(A.vars, 1)
    s = 1
    g = MultiPoly.const(A.vars, 1)
    h = MultiPoly.const(A.vars, 1)
    while True:
        dA, dB = A.degree(name), B.degree(name)
        delta = dA - dB
        if dA % 2 and dB % 2:
            s = -s
        R = prem(A, B, name)
        A = B
        if R.is_zero():
            return MultiPoly(A.vars)
        B = R.exact_div(g * h ** delta)
        g = A.coeff_of(name, A.degree(name))
        if delta > 0:
            h = (g ** delta).exact_div(h ** (delta - 1)) if delta > 1 else g
        if B.degree(name) <= 0:
            break
    dA = A.degree(name)
    lB = B  # degree 0 in name
    if dA > 1:
        h = (lB ** dA).exact_div(h ** (dA - 1))
    else:
        h = lB ** dA
    return h.scale(s)


def cyclotomic_poly(n: int):
    """Coefficient list (low first, over Fraction) of the n-th cyclotomic
    polynomial, by dividing X^n - 1 by all lower Phi_d with d | n."""
    f = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            f, r = poly_divmod(f, cyclotomic_poly(d))
            assert not r, "cyclotomic division must be exact"
    return f
