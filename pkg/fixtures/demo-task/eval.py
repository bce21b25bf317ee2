"""Score the workspace: solution.txt must hold one number in [0, 1]."""
import json
import pathlib
import sys

artifact = pathlib.Path("solution.txt")
if not artifact.exists():
    print("missing submission artifact: solution.txt")
    sys.exit(1)
try:
    score = float(artifact.read_text().strip())
except ValueError:
    print("solution.txt does not contain a number")
    sys.exit(1)
if not 0.0 <= score <= 1.0:
    print("score outside [0, 1]")
    sys.exit(1)
print(json.dumps({"score": score}))
