"""Check the closed-form flip rates against a direct density-matrix simulation.

For every grid point the observer qubit is prepared, coupled to a thermal
environment qubit by a controlled X-rotation, partially swapped, traced
down and measured. The measured flip probability must match the rate
formula.
"""
from qcomplexity import oracle_check

report = oracle_check()
print("\n".join(report.lines()))

print("\nWith q0 deliberately shifted by 1e-6 the comparator must fail:")
print(oracle_check(perturb_q0=1e-6).lines()[-1])
