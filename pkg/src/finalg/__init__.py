"""Finite algebras for monads: profinite (in)equations, pseudovarieties,
separation by finite quotients, and syntactic monoids of regular languages."""

__version__ = "0.1.0"
