"""Shared plumbing: configuration, errors, rationals, diagnostics."""
