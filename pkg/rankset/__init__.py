"""Search for impossibility results about ranking sets of objects.

Each axiom on a ranking of sets is encoded as CNF over a fixed domain size,
sets of axioms are checked with a SAT solver, and the lattice of all axiom
sets is swept to find the minimal inconsistent ones.

System Dependencies:
    * python 3.8
    * an external DIMACS solver (optional)

"""
