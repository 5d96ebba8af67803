"""Helpers shared by the command-line handlers."""
