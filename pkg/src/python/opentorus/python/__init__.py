"""
Command-line tools for OpenTorus.
"""
