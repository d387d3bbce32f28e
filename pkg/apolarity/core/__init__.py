"""
Core module - Configuration, settings and exceptions
"""
