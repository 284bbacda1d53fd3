"""Extended proximity-force approximation for non-retarded van der Waals forces."""
__version__ = "0.1.0"
