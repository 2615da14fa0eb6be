"""Exact multivariate Tutte polynomials and exponential-formula identities."""
