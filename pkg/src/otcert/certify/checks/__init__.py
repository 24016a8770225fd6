"""Individual certification checks."""
