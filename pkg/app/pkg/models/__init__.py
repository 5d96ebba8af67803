"""Business models."""
