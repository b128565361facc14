"""Numerical companion for the smooth delta method applied to quartic forms.

Modules: ``poly`` (exact polynomials), ``weights`` (smooth bumps), ``delta``
(delta symbol), ``expsums`` (exponential sums), ``local`` (singular series and
integral), ``count`` (exact point counts), ``bounds`` (exponent calculus) and
``cli``.
"""

__version__ = "0.1.0"
