"""Feature structures with wrappings and extended attribute-value logic."""

__version__ = "0.1.0"
