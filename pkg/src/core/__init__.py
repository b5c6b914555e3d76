"""Core package for configuration, logging and errors."""
