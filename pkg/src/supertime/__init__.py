"""Exact symbolic geometry over supertime (t, theta, thetabar)."""

__version__ = "0.1.0"
