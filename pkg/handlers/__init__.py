"""
Handlers module initialization file
"""
