"""Logical gadgets of the [[24,8,3]] clustered-cyclic code"""
