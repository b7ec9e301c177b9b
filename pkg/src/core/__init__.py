"""Shared plumbing: configuration, errors, coefficient fields, linear algebra, reports."""
