"""Split Vertex Deletion: recognition, exact and approximation solvers, separators and experiments."""
