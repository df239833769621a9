"""Irreps, classes and distributions of the wreath product S_n wr Z_2"""
