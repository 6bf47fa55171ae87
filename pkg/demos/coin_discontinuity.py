"""The symmetric perturbed coin: classical memory jumps, quantum memory does not.

A coin that flips with probability q each step needs one full bit of
classical memory for any q != 1/2, and none at q = 1/2, where the process
becomes a fair i.i.d. coin. The quantum memory falls smoothly to zero
as the two causal states become identical.
"""
from qcomplexity import CoinParams, perturbed_coin_machine, quantum_complexity, statistical_complexity

print(f"{'q':>6} {'C_mu':>8} {'C_q':>8}")
for q in (0.05, 0.2, 0.4, 0.45, 0.49, 0.499, 0.5, 0.501, 0.6, 0.9):
    m = perturbed_coin_machine(CoinParams(q, q))
    print(f"{q:6.3f} {statistical_complexity(m):8.5f} {quantum_complexity(m):8.5f}")

print("\nC_mu drops from 1 to 0 at q = 0.5, while C_q approaches 0 continuously.")
