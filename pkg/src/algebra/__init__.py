"""F2 and quotient-ring linear algebra"""
