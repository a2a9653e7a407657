"""Recipe document classification and ingredient extraction toolkit."""

__version__ = "0.1.0"
