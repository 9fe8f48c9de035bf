"""CC Surgery Toolkit - Main Package"""

__version__ = "1.0.0"
__author__ = "CC Surgery Toolkit Developers"
__description__ = "Clustered-cyclic quantum LDPC codes, product surgery and Clifford gadget verification"
