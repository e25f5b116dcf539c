"""Exact kernel for constructive plane geometry without Markov's principle.

Subpackages:
  field         quadratic-extension tower arithmetic (exact, no floats)
  nafield       rational functions in an infinitesimal eps
  geometry      point predicates with witnesses
  constructions guarded ruler-and-compass constructions
  arithmetic    geometric addition/multiplication/inverse/sqrt on an axis
  kripke        two-node forcing model separating P from not-not-P
  audit         property-based exact axiom and theorem checks
  dsl           construction-script parser/interpreter
  svg           trace renderer
  cli           command-line front end
"""

__version__ = "0.1.0"
