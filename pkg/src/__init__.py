"""
Periodic Burgers Laboratory
===========================

Spectral solver and verification toolkit for the time-periodic forced
viscous Burgers equation on T x I: fractional time operators, anisotropic
Sobolev norms, the weak Burgers operator, Newton continuation with a priori
estimate reports, a time-stepping oracle and the Cole-Hopf ground-state
certificate.
"""

__version__ = "0.1.0"
