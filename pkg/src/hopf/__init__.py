"""Finite-dimensional Hopf algebras and the constructions between them."""
