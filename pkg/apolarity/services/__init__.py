"""
Services module - Exact algebra: linear algebra, local rings, inverse systems
"""
