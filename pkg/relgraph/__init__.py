"""Graph relations, relational cores and homomorphism orders."""
__version__ = "0.1.0"
