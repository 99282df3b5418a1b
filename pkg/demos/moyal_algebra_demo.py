#!/usr/bin/env python3
# Exact phase-space operator algebra on polynomials: star products, the sine
# bracket, its collapse to the Poisson bracket for quadratic symbols, and the
# canonical-but-nonlinear map that fails to preserve the quantum bracket.

from fractions import Fraction

from formpreserve.moyal import (
    PolySymbol,
    kinetic_moyal_reduction,
    moyal_bracket,
    nonlinear_ct_example,
    poisson_bracket,
    star_product,
)

x, p = PolySymbol.x(), PolySymbol.p()

print("x * p      =", star_product(x, p))
print("p * x      =", star_product(p, x))
print("sine bracket of (x, p):", moyal_bracket(x, p))

# Quadratic Hamiltonians generate purely classical flow...
h = PolySymbol({(2, 0, 0): Fraction(1, 2), (0, 2, 0): Fraction(1, 2)})
w = PolySymbol({(3, 1, 0): 2, (0, 4, 0): Fraction(-1, 3)})
print("quadratic collapse holds:", moyal_bracket(h, w) == poisson_bracket(h, w))

# ...but quartic ones pick up an hbar^2 correction.
diff = moyal_bracket(PolySymbol.x(4), PolySymbol.p(4)) - poisson_bracket(
    PolySymbol.x(4), PolySymbol.p(4)
)
print("quartic correction:", diff)

# The kinetic symbol streams any distribution:
print("kinetic bracket with x^2:", kinetic_moyal_reduction(PolySymbol.x(2)))

# A nonlinear canonical map preserves the Poisson bracket after identification
# but not the sine bracket: the quantum structure is strictly more rigid.
report = nonlinear_ct_example()
print(
    "nonlinear map: operators equal before identification?",
    report.p12_equal,
    "| Poisson preserved?",
    report.identified_p_equal,
    "| sine bracket preserved?",
    report.identified_m_equal,
)
f, g = report.witness_moyal
print("witness pair for the sine-bracket failure:", f, ",", g)
