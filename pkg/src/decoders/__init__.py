"""Decoders for JSON input files."""
