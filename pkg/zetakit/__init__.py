"""zetakit: numerical interrogation of zeta-function identities."""

__version__ = "1.0.0"
