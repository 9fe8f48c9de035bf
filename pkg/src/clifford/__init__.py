"""Symplectic Clifford algebra and stabilizer tableaux"""
