# Exact algebra: finite groups, signed permutations, rational matrices
