"""Finite-n scans of the collision, smoothness and character bounds"""
