"""
Slupecki Lab - decision procedures for polymorphisms of reflexive digraphs
"""

__version__ = "1.0.0"
__app_name__ = "Slupecki Lab"
