# Edge-evolution processes; importing the package registers every kind
from processes import random_processes, sequential_processes, degree_processes  # noqa: F401
