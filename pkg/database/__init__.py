"""Database package for the persistent character cache"""
