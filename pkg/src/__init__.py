# Raman Pair Correlator - Source Package
__version__ = "1.0.0"
