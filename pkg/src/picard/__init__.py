"""Covolumes of Picard modular groups and low-index subgroup search.

The package is split into

* :mod:`picard.quadfield` -- imaginary quadratic fields, characters, class numbers
* :mod:`picard.lfunc` -- exact values ``L_k(-2)`` plus a numeric oracle
* :mod:`picard.prasad` -- covolumes, Euler characteristics, bounds, census
* :mod:`picard.fpgroup` -- coset enumeration, low-index search, homology, cusps
* :mod:`picard.cli` -- the ``picard`` command line tool
"""

__version__ = "0.1.0"
