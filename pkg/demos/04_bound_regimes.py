"""The constant regimes side by side.

For a handful of random instances, compare the general factorial-product
constant, the sharp binary constant (when its halves condition holds), and
the constant accumulated by the proof recursion, whose per-node ledger is
printed for one instance.

Run:  python3 demos/04_bound_regimes.py
"""

from joinforge import (
    InstanceRanges,
    check_inequality,
    k_binary,
    k_general,
    k_inductive,
    random_instance,
)

print(f"{'seed':>5} {'m':>2} {'n':>2} {'K general':>10} {'K binary':>10} "
      f"{'K recursion':>12} {'ratio(general)':>15}")
for seed in range(8):
    inst = random_instance(seed, InstanceRanges(arities=(2,), max_depth=3, max_particles=5))
    shape = inst.shape
    kg = k_general(shape, 2).value
    kb = k_binary(shape, inst.exponents)
    ki = k_inductive(shape, inst.exponents, 2)
    report = check_inequality(inst)
    kb_text = f"{kb.value:.6f}" if kb.condition_met else "  (cond!)"
    print(
        f"{seed:>5} {inst.tree.arity:>2} {inst.config.n:>2} {kg:>10.4f} "
        f"{kb_text:>10} {ki.value:>12.6f} {report.ratio:>15.3e}"
    )

print("\n=== recursion ledger for one binary-optimal instance ===")
inst = random_instance(3, InstanceRanges(arities=(2,), regime="binary_optimal"))
result = k_inductive(inst.shape, inst.exponents, 2)
print("shape:", inst.shape.serialize())
print("accumulated K:", result.value, " (2^-(n-1) =", 2.0 ** (-(inst.config.n - 1)), ")")
for entry in result.ledger.entries:
    print(
        f"  node path {str(entry.node_path):10s} level {entry.level_offset}"
        f"  1/alpha {tuple(round(a, 4) for a in entry.alpha_inv)}"
        f"  1/beta {entry.beta_inv:.4f}  case {entry.muirhead_case}"
        f"  factor {entry.factor:.6f}"
    )

print("\n=== an estimated node: two particles at a ternary root ===")
from joinforge import Configuration, ExponentAssignment, ROOT, TreeParams, Vertex, extract_shape

tree = TreeParams(3, 1)
shape = extract_shape(Configuration(tree, ROOT, (Vertex((1,)), Vertex((2,)))))
result = k_inductive(shape, ExponentAssignment((1.0,)), 3)
print("value:", result.value, " estimated:", result.estimated,
      " (general constant would be", k_general(shape, 3).value, ")")
