"""Memory cost of tracking a qubit that thermalizes with its environment.

At maximal interaction (kappa = pi/2), the classical complexity rises
steadily with the thermalization strength lambda. The quantum complexity
instead peaks at an intermediate lambda.
"""
import math

import numpy as np

from qcomplexity import CloudParams, cloud_machine, quantum_complexity, statistical_complexity

for g in (0.25, 0.5, 0.75):
    print(f"g = {g}")
    for lam in np.linspace(0.0, 1.0, 11):
        m = cloud_machine(CloudParams(float(lam), math.pi / 2, g))
        c_mu, c_q = statistical_complexity(m), quantum_complexity(m)
        bar = "#" * int(round(60 * c_q))
        print(f"  lambda={lam:4.1f}  C_mu={c_mu:.4f}  C_q={c_q:.4f}  {bar}")
