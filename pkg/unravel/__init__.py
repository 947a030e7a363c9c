"""Unravelling of classic and smart liquid democracy ballots."""

__version__ = '0.2.0'
