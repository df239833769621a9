"""Command-line commands and their registration"""
