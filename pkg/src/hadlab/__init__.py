"""Complete minors with small branch sets."""

__version__ = "0.1.0"
