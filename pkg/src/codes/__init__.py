"""Classical, CSS and clustered-cyclic codes"""
