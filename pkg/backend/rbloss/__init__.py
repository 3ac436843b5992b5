"""Ratio-based loss functions: catalog, links, builders, verifier and risk engine."""
