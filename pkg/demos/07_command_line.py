"""
Driving the library from the command line
=========================================

"""

from pivotlab.cli import run_command

# Same entry point as the `pivotlab` console script.
run_command(["gray", "--d", "4", "--bits", "0110", "--format", "table"])
run_command(["solve", "--lp", "builtin:small-box", "--rule", "steepest-edge", "--bigm"])
run_command(["oracle", "--lp", "builtin:small-box", "--bigm"])
run_command(["member", "--lp", "builtin:unique-path", "--basis", "2,3"])
run_command(["verify-reduction", "--circuit", "builtin:gray-successor:3", "--xc", "101"])
print("exit code for a bad flag:", run_command(["solve", "--lp", "builtin:nope"]))
