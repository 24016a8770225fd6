"""otcert: exact discrete optimal transport with optimality certificates."""

__version__ = "0.1.0"
