"""Presented algebras: noncommutative polynomials, quotients and braidings."""
