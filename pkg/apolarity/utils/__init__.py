"""
Utils module - Utility functions and helpers
"""
