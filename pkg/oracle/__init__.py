"""Brute-force dense-matrix verification for tiny groups"""
