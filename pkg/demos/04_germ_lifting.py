"""A formal surface through a curve on a hypersurface singularity.

The hypersurface x1^3 + ... + x4^3 + x5^6 = 0 has a point whose blowup is
the cone over the Fermat cubic threefold.  On that cone we take the line
(s, -s, t, -t, 0), check that dF_3 is onto along it, and grow a formal
surface germ degree by degree around a curve with a nonlinear tail.
"""

from toricnash.germ import (
    LineSpec,
    blowup_chart_strict_transform,
    curve_on_hypersurface,
    dfm_surjective,
    extend_curve_to_surface,
    jet_equations,
    linear_part,
    residual_report,
    restrict_t_zero,
)
from toricnash.series import format_series, parse_series

f = parse_series("x1^3+x2^3+x3^3+x4^3+x5^6")
cone = blowup_chart_strict_transform(f, 5)
print("strict transform in chart 5:", format_series(cone))

line = LineSpec.from_text("s,-s,t,-t,0")
print("dF_3 onto along the line:", dfm_surjective(cone, line))

tail = [parse_series(x, ("s",)) for x in ("0", "0", "s^2+s^3", "2*s^2", "s^4")]
phi = curve_on_hypersurface(cone, line.point, 8, tail=tail)
print("\ncurve:")
for comp in phi:
    print("  ", format_series(comp))

surface = extend_curve_to_surface(cone, phi, line, 8)
print("\nsurface germ, first two coordinates:")
for comp in surface[:2]:
    print("  ", format_series(comp))
print("residual:", residual_report(cone, surface))
print("restricts to the curve at t = 0:", [c.terms for c in restrict_t_zero(surface)] == [c.terms for c in phi])
print("tangent plane is the line:", linear_part(surface) == line)

print("\n2-jet equations of the cusp x^2 - y^3:")
for eq in jet_equations(parse_series("x^2 - y^3"), 2):
    print("  ", format_series(eq))
