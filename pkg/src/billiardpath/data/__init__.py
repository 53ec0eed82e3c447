"""Bundled code collections loaded through importlib.resources."""
