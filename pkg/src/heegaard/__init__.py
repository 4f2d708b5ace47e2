"""Genus-2 Heegaard splittings built by pushing doubly primitive curves into opposite sides."""

__version__ = "0.1.0"
