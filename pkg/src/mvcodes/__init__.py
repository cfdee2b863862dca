"""Good moduli for matching vector codes: decision, certificates, lift/descent and a toy codec."""

__version__ = "0.1.0"
