"""ghfilt: exact computations with graded affine Hecke algebras.

Standard and generalized standard modules, the normalized intertwining
operator over Q(t), Jantzen / radical / socle filtrations, bad directions
and first-extension dimensions.
"""
__version__ = "0.1.0"
