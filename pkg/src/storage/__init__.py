"""Storage utilities for reports and computed tables."""
