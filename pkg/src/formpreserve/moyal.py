"""Exact polynomial phase-space symbol algebra: Poisson, star, and sine
brackets through bi-differential operators, with a worked nonlinear
counterexample and the drift-to-potential reduction of the evolution
equation.

Complex bookkeeping
-------------------
Coefficients live in the ring of rationals tagged with a power of the formal
constant hbar.  A stored term ``(a, b, k) -> c`` represents

    c * i**(k mod 2) * hbar**k * x**a * p**b,

i.e. the imaginary unit is carried implicitly by the parity of the hbar
exponent.  This is faithful for everything built from star products of real
symbols: even hbar powers are real, odd ones purely imaginary, and the ring
product only needs the graded sign rule i*i = -1 when both factors carry odd
parity.  Real coefficients on odd hbar powers (e.g. a bare real ``hbar * x``)
are *not* representable; nothing in this module needs them.  The sine bracket
divides out one factor of i*hbar, flipping every term back to even parity;
any term that would remain imaginary raises, which is the checked
"imaginary residue is zero" property.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "DegreeGuardError",
    "ConventionError",
    "PolySymbol",
    "PairSymbol",
    "poisson_bracket",
    "star_product",
    "moyal_bracket",
    "kinetic_moyal_reduction",
    "NonlinearCTReport",
    "nonlinear_ct_example",
    "pair_poisson",
    "pair_poisson_nonlinear",
    "pair_sine_bracket_identified",
    "star_product_nonlinear_direct",
    "star_product_nonlinear_bch",
    "moyal_potential_law",
    "potential_coeffs_via_transform",
]

DEGREE_GUARD = 64


class DegreeGuardError(ValueError):
    """Total phase-space degree exceeded the guard; series termination at risk."""


class ConventionError(AssertionError):
    """A sign/convention identity the algebra relies on failed."""


def _f(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)  # exact binary expansion
    raise TypeError(f"unsupported coefficient type {type(value)!r}")


def _graded_sign(k1: int, k2: int) -> int:
    return -1 if (k1 % 2) and (k2 % 2) else 1


class PolySymbol:
    """Polynomial in (x, p) over hbar-graded rationals; immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for key, coeff in (terms or {}).items():
            if len(key) == 2:
                a, b, k = key[0], key[1], 0
            else:
                a, b, k = key
            if a < 0 or b < 0 or k < 0:
                raise ValueError("exponents must be non-negative")
            if a + b > DEGREE_GUARD:
                raise DegreeGuardError(f"term x^{a} p^{b} beyond degree guard {DEGREE_GUARD}")
            coeff = _f(coeff)
            if coeff != 0:
                clean[(a, b, k)] = clean.get((a, b, k), Fraction(0)) + coeff
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v != 0})

    def __setattr__(self, *_):
        raise AttributeError("PolySymbol is immutable")

    # constructors
    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def one(cls):
        return cls({(0, 0, 0): 1})

    @classmethod
    def x(cls, power: int = 1):
        return cls({(power, 0, 0): 1})

    @classmethod
    def p(cls, power: int = 1):
        return cls({(0, power, 0): 1})

    @classmethod
    def monomial(cls, a: int, b: int, coeff=1):
        return cls({(a, b, 0): coeff})

    # ring structure
    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, Fraction(0)) + c
        return PolySymbol(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return PolySymbol({k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, float, Fraction)):
            s = _f(other)
            return PolySymbol({k: c * s for k, c in self.terms.items()})
        out = {}
        for (a1, b1, k1), c1 in self.terms.items():
            for (a2, b2, k2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2, k1 + k2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2 * _graded_sign(k1, k2)
        return PolySymbol(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, PolySymbol) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "PolySymbol(0)"
        bits = []
        for (a, b, k), c in sorted(self.terms.items()):
            mono = "".join(
                [
                    f"x^{a}" if a else "",
                    f"p^{b}" if b else "",
                    (("i" if k % 2 else "") + f"h^{k}") if k else "",
                ]
            )
            bits.append(f"{c}{('*' + mono) if mono else ''}")
        return "PolySymbol(" + " + ".join(bits) + ")"

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((a + b for (a, b, _k) in self.terms), default=0)

    def dx(self):
        return PolySymbol(
            {(a - 1, b, k): c * a for (a, b, k), c in self.terms.items() if a > 0}
        )

    def dp(self):
        return PolySymbol(
            {(a, b - 1, k): c * b for (a, b, k), c in self.terms.items() if b > 0}
        )

    def hbar_coefficient(self, k: int) -> "PolySymbol":
        """The (x, p)-polynomial multiplying hbar^k (sign as stored)."""
        return PolySymbol({(a, b, 0): c for (a, b, kk), c in self.terms.items() if kk == k})

    def max_hbar_power(self) -> int:
        return max((k for (_a, _b, k) in self.terms), default=0)

    def assert_real(self) -> "PolySymbol":
        odd = {key: c for key, c in self.terms.items() if key[2] % 2}
        if odd:
            raise ConventionError(f"imaginary residue is not zero: {odd}")
        return self

    def to_json_map(self) -> dict:
        """Serializable {"a,b,k": "num/den"} map (CLI round-tripping)."""
        return {f"{a},{b},{k}": str(c) for (a, b, k), c in sorted(self.terms.items())}

    @classmethod
    def from_json_map(cls, data: dict) -> "PolySymbol":
        terms = {}
        for key, c in data.items():
            a, b, k = (int(s) for s in key.split(","))
            terms[(a, b, k)] = Fraction(c)
        return cls(terms)

    def subs(self, x_val: float, p_val: float, hbar_val: float = 1.0):
        """Numeric evaluation; odd-parity terms contribute to the imaginary part."""
        re = im = 0.0
        for (a, b, k), c in self.terms.items():
            val = float(c) * x_val**a * p_val**b * hbar_val**k
            if k % 2:
                im += val
            else:
                re += val
        return complex(re, im) if im else re


class PairSymbol:
    """Polynomial in the doubled variables (x1, p1, x2, p2), same coefficient ring.

    Bi-differential operators act on these before the final identification
    (x1, p1) = (x2, p2) = (x, p).
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for key, coeff in (terms or {}).items():
            coeff = _f(coeff)
            if coeff != 0:
                clean[key] = clean.get(key, Fraction(0)) + coeff
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v != 0})

    def __setattr__(self, *_):
        raise AttributeError("PairSymbol is immutable")

    @classmethod
    def from_product(cls, f: PolySymbol, g: PolySymbol) -> "PairSymbol":
        out = {}
        for (a1, b1, k1), c1 in f.terms.items():
            for (a2, b2, k2), c2 in g.terms.items():
                key = (a1, b1, a2, b2, k1 + k2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2 * _graded_sign(k1, k2)
        return cls(out)

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, Fraction(0)) + c
        return PairSymbol(out)

    def __sub__(self, other):
        return self + PairSymbol({k: -c for k, c in other.terms.items()})

    def __eq__(self, other):
        return isinstance(other, PairSymbol) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"PairSymbol({self.terms!r})"

    def is_zero(self) -> bool:
        return not self.terms

    def _d(self, slot: int):
        out = {}
        for key, c in self.terms.items():
            e = key[slot]
            if e > 0:
                new = list(key)
                new[slot] = e - 1
                new = tuple(new)
                out[new] = out.get(new, Fraction(0)) + c * e
        return PairSymbol(out)

    def dx1(self):
        return self._d(0)

    def dp1(self):
        return self._d(1)

    def dx2(self):
        return self._d(2)

    def dp2(self):
        return self._d(3)

    def mul_monomial(self, a1=0, b1=0, a2=0, b2=0, coeff=1):
        coeff = _f(coeff)
        return PairSymbol(
            {
                (k[0] + a1, k[1] + b1, k[2] + a2, k[3] + b2, k[4]): c * coeff
                for k, c in self.terms.items()
            }
        )

    def scale_graded(self, coeff, hbar_shift: int) -> "PairSymbol":
        """Multiply by coeff * i**(hbar_shift mod 2) * hbar**hbar_shift."""
        coeff = _f(coeff)
        out = {}
        for (a1, b1, a2, b2, k), c in self.terms.items():
            out[(a1, b1, a2, b2, k + hbar_shift)] = c * coeff * _graded_sign(k, hbar_shift)
        return PairSymbol(out)

    def identify(self) -> PolySymbol:
        out = {}
        for (a1, b1, a2, b2, k), c in self.terms.items():
            key = (a1 + a2, b1 + b2, k)
            out[key] = out.get(key, Fraction(0)) + c
        return PolySymbol(out)


def pair_poisson(f2: PairSymbol) -> PairSymbol:
    """The canonical bi-differential operator: dx1 dp2 - dp1 dx2."""
    return f2.dx1().dp2() - f2.dp1().dx2()


def pair_poisson_nonlinear(f2: PairSymbol) -> PairSymbol:
    """The same operator pushed through x = p' - x'^2, p = -x':
    it acquires the extra piece 2 (p1 - p2) dx1 dx2."""
    cross = f2.dx1().dx2()
    extra = cross.mul_monomial(b1=1, coeff=2) - cross.mul_monomial(b2=1, coeff=2)
    return extra + pair_poisson(f2)


def poisson_bracket(f: PolySymbol, g: PolySymbol) -> PolySymbol:
    """{f, g} = df/dx dg/dp - df/dp dg/dx, exact."""
    return f.dx() * g.dp() - f.dp() * g.dx()


def _star_terms(f: PolySymbol, g: PolySymbol, apply_op) -> PolySymbol:
    """sum_n (i hbar / 2)^n / n! op^n (f1 g2), identified; terminates on polynomials."""
    current = PairSymbol.from_product(f, g)
    total = current.identify()
    n = 0
    while not current.is_zero():
        n += 1
        if n > 2 * DEGREE_GUARD + 2:
            raise DegreeGuardError("star series failed to terminate")
        current = apply_op(current)
        if current.is_zero():
            break
        # (i hbar / 2)^n / n! = i^(n mod 2) (-1)^(n//2) hbar^n / (2^n n!)
        coeff = Fraction((-1) ** (n // 2), 2**n * math.factorial(n))
        total = total + current.scale_graded(coeff, n).identify()
    return total


def star_product(f: PolySymbol, g: PolySymbol) -> PolySymbol:
    """Associative star product; exact, the exponential series terminates."""
    return _star_terms(f, g, pair_poisson)


def star_product_nonlinear_direct(f: PolySymbol, g: PolySymbol) -> PolySymbol:
    """Star product of the transformed frame, via the sine-ready primed operator."""
    return _star_terms(f, g, pair_poisson_nonlinear)


def star_product_nonlinear_bch(f: PolySymbol, g: PolySymbol) -> PolySymbol:
    """Same object through the split exponential
    exp(i hbar P'/2) = exp(i hbar P/2) exp(i hbar (p1-p2) dx1 dx2)
                       exp(-(hbar^2/4)(dx1+dx2) dx1 dx2),
    applied right to left; an independent route for cross-checking."""

    def op_b(s: PairSymbol) -> PairSymbol:
        cross = s.dx1().dx2()
        return cross.mul_monomial(b1=1) - cross.mul_monomial(b2=1)

    def op_c(s: PairSymbol) -> PairSymbol:
        cross = s.dx1().dx2()
        return cross.dx1() + cross.dx2()

    current = PairSymbol.from_product(f, g)

    # exp(-(hbar^2/4) C): real, even hbar powers
    total = PairSymbol({})
    term = current
    n = 0
    while not term.is_zero():
        total = total + (term if n == 0 else term.scale_graded(
            Fraction((-1) ** n, 4**n * math.factorial(n)), 2 * n))
        term = op_c(term)
        n += 1
    current = total

    # exp(i hbar B)
    total = PairSymbol({})
    term = current
    n = 0
    while not term.is_zero():
        total = total + (term if n == 0 else term.scale_graded(
            Fraction((-1) ** (n // 2), math.factorial(n)), n))
        term = op_b(term)
        n += 1
    current = total

    # exp(i hbar P / 2), then identify
    result = current.identify()
    term = current
    n = 0
    while not term.is_zero():
        term = pair_poisson(term)
        n += 1
        if term.is_zero():
            break
        result = result + term.scale_graded(
            Fraction((-1) ** (n // 2), 2**n * math.factorial(n)), n
        ).identify()
    return result


def _sine_bracket(star_ab: PolySymbol, star_ba: PolySymbol) -> PolySymbol:
    diff = star_ab - star_ba
    even = {key: c for key, c in diff.terms.items() if key[2] % 2 == 0}
    if even:
        raise ConventionError(f"star commutator has a real residue: {even}")
    return PolySymbol({(a, b, k - 1): c for (a, b, k), c in diff.terms.items()}).assert_real()


def moyal_bracket(f: PolySymbol, g: PolySymbol) -> PolySymbol:
    """Sine bracket (f*g - g*f)/(i hbar); exact and real for real symbols."""
    return _sine_bracket(star_product(f, g), star_product(g, f))


def pair_sine_bracket_identified(f: PolySymbol, g: PolySymbol, apply_op) -> PolySymbol:
    """I[ op sinc(hbar op / 2) ] f1 g2 for an antisymmetric bi-differential op."""
    current = pair_poisson_apply_n(f, g, 1, apply_op)
    total = current.identify()
    k = 0
    pair = current
    while not pair.is_zero():
        k += 1
        pair = apply_op(apply_op(pair))
        if pair.is_zero():
            break
        coeff = Fraction((-1) ** k, 4**k * math.factorial(2 * k + 1))
        total = total + pair.scale_graded(coeff, 2 * k).identify()
    return total.assert_real()


def pair_poisson_apply_n(f: PolySymbol, g: PolySymbol, n: int, apply_op=pair_poisson) -> PairSymbol:
    out = PairSymbol.from_product(f, g)
    for _ in range(n):
        out = apply_op(out)
    return out


def kinetic_moyal_reduction(w: PolySymbol, mass=1) -> PolySymbol:
    """Sine bracket of the kinetic symbol p^2/2m with w.

    The quadratic symbol collapses the sine series, so the result must equal
    -(p/m) dw/dx identically; a mismatch raises ConventionError.
    """
    kinetic = PolySymbol({(0, 2, 0): Fraction(1, 2) / _f(mass)})
    got = moyal_bracket(kinetic, w)
    expected = PolySymbol({(0, 1, 0): Fraction(-1) / _f(mass)}) * w.dx()
    if got != expected:
        raise ConventionError(
            f"kinetic sine bracket {got!r} does not reduce to the streaming term {expected!r}"
        )
    return got


@dataclass(frozen=True)
class NonlinearCTReport:
    p12_equal: bool
    identified_p_equal: bool
    identified_m_equal: bool
    witness_p12: tuple
    witness_moyal: tuple


def _monomials_up_to(degree: int):
    out = []
    for total in range(degree + 1):
        for a in range(total + 1):
            out.append(PolySymbol.monomial(a, total - a))
    return out


def nonlinear_ct_example(max_degree: int = 4) -> NonlinearCTReport:
    """Exercise the canonical but nonlinear map x = p' - x'^2, p = -x'.

    On monomial pairs up to ``max_degree``: the primed and unprimed Poisson
    operators differ before identification, agree after it (the map is
    canonical), yet the identified sine brackets still differ, so the map
    does not preserve the quantum bracket.
    """
    basis = _monomials_up_to(max_degree)
    p12_equal = True
    identified_p_equal = True
    identified_m_equal = True
    witness_p12 = None
    witness_moyal = None
    for f in basis:
        for g in basis:
            pair = PairSymbol.from_product(f, g)
            plain = pair_poisson(pair)
            primed = pair_poisson_nonlinear(pair)
            if plain != primed:
                if witness_p12 is None:
                    witness_p12 = (f, g)
                p12_equal = False
            if plain.identify() != primed.identify():
                identified_p_equal = False
            m_plain = pair_sine_bracket_identified(f, g, pair_poisson)
            m_primed = pair_sine_bracket_identified(f, g, pair_poisson_nonlinear)
            if m_plain != m_primed:
                if witness_moyal is None:
                    witness_moyal = (f, g)
                identified_m_equal = False
    return NonlinearCTReport(
        p12_equal=p12_equal,
        identified_p_equal=identified_p_equal,
        identified_m_equal=identified_m_equal,
        witness_p12=witness_p12,
        witness_moyal=witness_moyal,
    )


def moyal_potential_law(params, v_coeffs, t: float, mass: float = 1.0):
    """Coefficients (ascending in x') of the transformed potential, derived
    from the phase-space evolution equation rather than the wave-function map.

    The drift term the coordinate change introduces is converted into a
    bracket with a quadratic potential: V'(x') = gamma^2 V(gamma (x'-beta))
    + (m gamma^3 gamma''/2) x'^2 - m gamma^3 (gamma beta)'' x' + c(t), with
    c(t) free (reported as 0).
    """
    v_coeffs = list(v_coeffs)
    g = params.gamma(t)
    dg = params.dgamma(t)
    ddg = params.ddgamma(t)
    b = params.beta(t)
    db = params.dbeta(t)
    ddb = params.ddbeta(t)
    gb_ddot = ddg * b + 2.0 * dg * db + g * ddb

    degree = max(len(v_coeffs) - 1, 2)
    out = [0.0] * (degree + 1)
    # gamma^2 V(gamma x' - gamma beta), expanded binomially
    for n, c in enumerate(v_coeffs):
        if c == 0.0:
            continue
        for j in range(n + 1):
            out[j] += (
                g**2
                * c
                * math.comb(n, j)
                * (g**j)
                * ((-g * b) ** (n - j))
            )
    out[2] += 0.5 * mass * g**3 * ddg
    out[1] += -mass * g**3 * gb_ddot
    return out


def potential_coeffs_via_transform(
    params, potential, t: float, degree: int = 2, hbar: float = 1.0, mass: float = 1.0
):
    """Coefficients (ascending in x') of V' obtained from the wave-function
    route, by sampling transform_potential and interpolating exactly."""
    import numpy as np

    from formpreserve.transform import transform_potential

    g = params.gamma(t)
    b = params.beta(t)
    nodes_prime = np.linspace(-1.0, 1.0, degree + 1)
    nodes = g * (nodes_prime - b)
    vals = np.array(
        [transform_potential(params, potential, x, t, hbar=hbar, mass=mass) for x in nodes]
    )
    return list(np.polynomial.polynomial.polyfit(nodes_prime, vals, degree))
