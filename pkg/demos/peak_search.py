"""Locate the thermalization strength where quantum memory is largest."""
import math

from qcomplexity import find_peak

for g in (0.25, 0.5, 0.75):
    peak = find_peak(g, math.pi / 2)
    print(f"g={g:4.2f}: lambda* = {peak.lam:.6f}, C_q = {peak.c_q:.6f} (refined={peak.refined})")
