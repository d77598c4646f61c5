"""Lie triple systems, their enveloping algebras and nucleus computations."""
