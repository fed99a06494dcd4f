"""
Configuration Package

This package contains application configuration settings.
"""

from .config import Config

__all__ = ['Config']
