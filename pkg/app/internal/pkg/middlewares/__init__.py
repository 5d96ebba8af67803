"""Command-line middlewares."""
