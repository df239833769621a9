"""Clebsch-Gordan sieve: forests, exact transcript probabilities, simulation"""
