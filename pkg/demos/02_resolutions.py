"""Toric resolutions: which exceptional rays can be left out.

A divisorial resolution must contain every minimal ray.  Any other lattice
point over the singular locus can be avoided; we build such resolutions and
check them with exact certificates.
"""

from toricnash.arcorder import minimal_elements
from toricnash.cones import make_cone
from toricnash.resolution import (
    NotAvoidableError,
    avoid_ray,
    exceptional_rays,
    is_divisorial,
    is_regular_fan,
    is_subdivision,
    preserves_regular_faces,
    resolve,
)


def certify(fan, cone):
    return {
        "subdivision": is_subdivision(fan, cone, pairwise=True),
        "regular": is_regular_fan(fan),
        "keeps regular faces": preserves_regular_faces(fan, cone),
        "divisorial": is_divisorial(fan, cone),
    }


sigma = make_cone([(1, 0, 0), (0, 1, 0), (1, 1, 3)])
fan, log = resolve(sigma)
print("resolution rays:", exceptional_rays(fan, sigma))
print("steps:", log.steps)
print("certificates:", certify(fan, sigma))
print("minimal rays present:", set(minimal_elements(sigma).minimal_elements) <= set(fan.rays))

# (2,2,3) sits above (1,1,1), so a resolution can avoid it.
fan, log = avoid_ray(sigma, (2, 2, 3))
print("\navoiding (2,2,3):", [k.rays for k in fan.maximal_cones])
print("kept 2-dimensional cone:", log.kept_cone)
print("certificates:", certify(fan, sigma))

# (1,1,1) is minimal: every divisorial resolution must contain it.
try:
    avoid_ray(sigma, (1, 1, 1))
except NotAvoidableError as exc:
    print("\nrefused:", exc)

# A non-simplicial example: the cone over a square.
square = make_cone([(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)])
fan, log = resolve(square)
print("\nsquare cone resolution steps:", log.steps)
print("certificates:", certify(fan, square))
