"""Cross-platform migration of embedded robot control sketches."""

__version__ = "0.1.0"
