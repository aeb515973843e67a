"""catcohom: cohomology of finite categories with general coefficient systems.

Quillen, Baues-Wirsching, and simplicial-coefficient cochain complexes over
exact rings, homotopy colimits and Grothendieck constructions built
degreewise, and verification harnesses that compare both sides of the
comparison theorems on concrete inputs.
"""

__version__ = "0.1.0"
