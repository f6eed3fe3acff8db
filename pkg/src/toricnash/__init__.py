"""Essential divisors, toric resolutions avoiding prescribed rays, arcs on
toric varieties and formal germ lifting on hypersurface singularities."""

__version__ = "0.1.0"
