"""Exact linear algebra, triple systems, enveloping algebras and the identity checks."""
