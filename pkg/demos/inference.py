"""Recover a machine and its complexities from a sampled symbol stream."""
from qcomplexity import (
    CoinParams,
    empirical_complexities,
    estimate_conditionals,
    perturbed_coin_machine,
    quantum_complexity,
    reconstruct_machine,
    sample,
    statistical_complexity,
)

truth = perturbed_coin_machine(CoinParams(0.2, 0.6))
seq = sample(truth, 200_000, seed=7, start="stationary")

machine, state_of = reconstruct_machine(estimate_conditionals(seq, order=1))
print(f"reconstructed {machine.num_states} states from {len(seq.symbols)} symbols")
print(f"  P(flip | last=0) = {machine.transitions[state_of[(0,)], 1].sum():.4f} (true 0.2)")
print(f"  P(flip | last=1) = {machine.transitions[state_of[(1,)], 0].sum():.4f} (true 0.6)")

c_mu, c_q = empirical_complexities(seq)
print(f"  C_mu = {c_mu:.4f} (true {statistical_complexity(truth):.4f})")
print(f"  C_q  = {c_q:.4f} (true {quantum_complexity(truth):.4f})")
