"""
Test package for ls_scatter.
"""
