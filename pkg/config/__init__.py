"""Configuration package for the Clebsch-Gordan sieve toolkit"""
