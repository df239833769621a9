"""Partitions, characters and distributions of the symmetric group"""
