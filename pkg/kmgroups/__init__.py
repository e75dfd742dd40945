"""Exact computations with Kac-Moody algebras, their root systems and
minimal Kac-Moody groups."""
