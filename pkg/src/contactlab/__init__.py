"""Exact computations on contact Lie algebras."""
from .linalg import Matrix, Polynomial
from .lie import LieAlgebra, Subspace
from .forms import KForm, ContactStructure, contact_structure

__all__ = ["Matrix", "Polynomial", "LieAlgebra", "Subspace", "KForm", "ContactStructure", "contact_structure"]
