"""
CLI module - Command-line surface and sub-commands
"""
