"""bistlab: hybrid BIST experimentation kit.

Scan-era DFT building blocks in plain Python: .bench netlists, bit
parallel stuck-at fault simulation, a PODEM test generator, reseeding
LFSR/MISR pattern generators with irregular polynomial schedules, a two
phase threshold-driven test scheduler, and the test-cycle cost model
used to compare the hybrid scheme against scan-everything testing.
"""

__version__ = "0.1.0"
