"""Exact quantum invariants of Morse knotoid diagrams."""
