"""Online min-sum set cover: lazy move-to-front simulator, auditor and benchmark."""

__version__ = "0.1.0"
