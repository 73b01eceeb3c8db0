"""Bound machinery and triviality analysis for anabelian quotients of word varieties.

The package parses group words, evaluates explicit size bounds in level-index
tower arithmetic, enumerates candidate finite simple groups, and verifies the
verifiable ingredients on concrete desk-scale groups.
"""

__version__ = "0.1.0"
