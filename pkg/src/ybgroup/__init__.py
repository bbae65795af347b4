"""Structure groups of finite involutive set-theoretic solutions of the Yang-Baxter equation."""
from .grouprep import GroupElement, Rep, ball, emit_presentation, evaluate
from .solution import (Solution, are_isomorphic, is_decomposable, permutation_solution, retract_step,
                       retract_tower, trivial_solution, validate)

__version__ = "0.1.0"
