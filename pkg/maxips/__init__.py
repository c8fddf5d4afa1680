"""maxips - maximal integral point sets over the integer grid."""

__version__ = "0.1.0"
