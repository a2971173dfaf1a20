"""Alexander polynomials, Mahler measures and torsion growth in abelian branched covers of links."""
from .alexander import alexander_polynomial
from .covers import cover_homology
from .growth import estimate_rate, run_family
from .laurent import LaurentPoly, format_poly, parse_poly
from .lattices import Lattice, parse_lattice
from .linkio import builtin_link, parse_pd, wirtinger
from .mahler import mahler

__all__ = ["LaurentPoly", "Lattice", "alexander_polynomial", "builtin_link", "cover_homology",
           "estimate_rate", "format_poly", "mahler", "parse_lattice", "parse_pd", "parse_poly",
           "run_family", "wirtinger"]
