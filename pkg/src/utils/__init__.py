"""Configuration, logging and small helpers."""
