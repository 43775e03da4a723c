"""Case management with an embedded interpreter for action-based norm specifications."""

__version__ = "0.1.0"
