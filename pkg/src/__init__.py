"""braidkit: exact computations with R-matrices, braided algebras and finite-dimensional Hopf algebras."""
