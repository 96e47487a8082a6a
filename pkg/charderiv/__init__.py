"""
charderiv - exact moments of derivatives of characteristic polynomials
"""

__version__ = "0.1.0"
