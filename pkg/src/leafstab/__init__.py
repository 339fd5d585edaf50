"""leafstab: exact Poisson-geometric calculus with a numerical leaf finder.

Symbolic layer (exact rational arithmetic throughout):

* :mod:`leafstab.poly` -- sparse polynomials / rational functions on a chart;
* :mod:`leafstab.multivector` -- Schouten calculus, Poisson checks;
* :mod:`leafstab.bigraded` -- the bigraded algebra of form-valued vertical
  multivectors, connections, curvature, and geometric triples;
* :mod:`leafstab.sections` -- restriction/linearization along sections, leaf
  obstructions, first jets, flat kernels, cocycle deformations;
* :mod:`leafstab.cohomology` -- exact Lie-algebra and mapping-cone cohomology
  with the stability-criteria evaluator.

Numerical layer:

* :mod:`leafstab.leaffinder` -- discrete sections on a periodic grid, the
  obstruction functional, analytic gradients, and projected descent.

Command line: ``leafstab <subcommand> [--manifest PATH] [flags]``.
"""

__version__ = "0.1.0"
