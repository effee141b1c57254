"""Classification engine for quotient surfaces of a product of two curves.

Subpackages:

- ``smallgroups``: finite groups as validated multiplication tables.
- ``genvec``: branch signatures, generating vectors, Riemann-Hurwitz and
  fixed-point arithmetic, the Accola partition identity.
- ``hurwitzmoves``: the braid action on genus-0 generating vectors and
  orbit enumeration up to automorphisms.
- ``isoclass``: assembly of free diagonal actions on a product of curves,
  surface invariants, the multiple-fiber solver and the classification driver.
- ``hyperell``: exact cyclotomic-rational arithmetic, hyperelliptic curves,
  lifted automorphisms and curve-level certificates.
- ``doublecover``: double-cover invariants, canonical resolution of branch
  curves, the ruled-case Diophantine solver and plane-model certificates.
- ``cli``: the ``isoprod`` command-line interface.
"""

__version__ = "0.1.0"
