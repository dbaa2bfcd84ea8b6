from zetakit.commands import beta, evaluate, probe, swap, verify, zeros

COMMANDS = (evaluate, zeros, beta, verify, probe, swap)
