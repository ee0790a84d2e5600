"""Group-valued flows and group connectivity in signed graphs."""

__version__ = "0.1.0"
