"""Exact planar-diagram combinatorics over group planar algebras.

The package has three layers:

* shaded planar tangles with composition, validity checking, and the
  loop-count scalars attached by capping boundary intervals
  (:mod:`planarbox.tangles`, :mod:`planarbox.expressions`);
* the planar algebra of a finite group with its exact basis calculus,
  and the crossed-product machinery built on a group action
  (:mod:`planarbox.groups`, :mod:`planarbox.group_algebra`,
  :mod:`planarbox.crossed`);
* the cut-down intermediate planar algebra obtained from a biprojection
  surround, with its verification suites and a batch CLI
  (:mod:`planarbox.intermediate`, :mod:`planarbox.suites`,
  :mod:`planarbox.cli`).

All coefficients live in the exact radical field of
:mod:`planarbox.scalars`; every identity the suites check is checked to
exact equality.
"""

from planarbox.scalars import RadicalScalar, canonical_sqrt, pow_half

__all__ = ["RadicalScalar", "canonical_sqrt", "pow_half"]

__version__ = "0.1.0"
