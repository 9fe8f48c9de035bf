"""Product surgery on CSS codes"""
