"""Utilities package for common functions"""
