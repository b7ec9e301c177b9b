"""R-matrices and the algebras built from them."""
